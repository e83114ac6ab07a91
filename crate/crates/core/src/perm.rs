//! Permutations on the points `0..degree`, stored as fixed-width image arrays.
//!
//! The degree is capped at [`MAX_DEGREE`]; entries past the degree are kept at
//! the identity so that equality and hashing can work on the whole array.

use std::fmt;

use crate::error::{Error, Result};

/// Hard upper bound on the number of moved points.
pub const MAX_DEGREE: usize = 64;

/// A permutation of `{0, .., degree-1}`; `images[i]` is the image of point `i`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    degree: u8,
    images: [u8; MAX_DEGREE],
}

impl Permutation {
    /// The identity on `degree` points.
    pub fn identity(degree: usize) -> Self {
        assert!((1..=MAX_DEGREE).contains(&degree), "degree out of range");
        let mut images = [0u8; MAX_DEGREE];
        for (i, slot) in images.iter_mut().enumerate() {
            *slot = i as u8;
        }
        Permutation {
            degree: degree as u8,
            images,
        }
    }

    /// Builds a permutation from the image list `images[i] = p(i)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let degree = images.len();
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::DegreeCap {
                needed: degree,
                cap: MAX_DEGREE,
            });
        }
        let mut seen = [false; MAX_DEGREE];
        let mut out = Permutation::identity(degree);
        for (i, &img) in images.iter().enumerate() {
            if img >= degree || seen[img] {
                return Err(Error::NotAPermutation {
                    point: i,
                    image: img,
                });
            }
            seen[img] = true;
            out.images[i] = img as u8;
        }
        Ok(out)
    }

    /// Builds a permutation of `degree` points from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::DegreeCap {
                needed: degree,
                cap: MAX_DEGREE,
            });
        }
        let mut out = Permutation::identity(degree);
        let mut moved = [false; MAX_DEGREE];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                if pt >= degree || next >= degree {
                    return Err(Error::NotAPermutation {
                        point: pt,
                        image: next,
                    });
                }
                if moved[pt] {
                    return Err(Error::NotAPermutation {
                        point: pt,
                        image: next,
                    });
                }
                moved[pt] = true;
                out.images[pt] = next as u8;
            }
        }
        // cycles sharing a point would have tripped `moved`; a stray repeated
        // image inside one cycle still needs a bijectivity check
        let mut seen = [false; MAX_DEGREE];
        for i in 0..degree {
            let img = out.images[i] as usize;
            if seen[img] {
                return Err(Error::NotAPermutation { point: i, image: img });
            }
            seen[img] = true;
        }
        Ok(out)
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    /// Image of a single point.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images[..self.degree()]
            .iter()
            .enumerate()
            .all(|(i, &img)| i == img as usize)
    }

    /// Composition acting as `(p ∘ q)(i) = p(q(i))`.
    pub fn compose(&self, rhs: &Permutation) -> Result<Permutation> {
        if self.degree != rhs.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: rhs.degree(),
            });
        }
        let mut out = *self;
        for i in 0..self.degree() {
            out.images[i] = self.images[rhs.images[i] as usize];
        }
        Ok(out)
    }

    /// Composition without the degree check; panics on mismatch.
    #[inline]
    pub fn mul(&self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("degree mismatch")
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = *self;
        for i in 0..self.degree() {
            out.images[self.images[i] as usize] = i as u8;
        }
        out
    }

    /// `g * self * g^-1`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.mul(self).mul(&g.inverse())
    }

    /// `self^-1 * rhs^-1 * self * rhs`, trivial iff the two commute.
    pub fn commutator(&self, rhs: &Permutation) -> Permutation {
        self.inverse().mul(&rhs.inverse()).mul(self).mul(rhs)
    }

    pub fn commutes_with(&self, rhs: &Permutation) -> bool {
        debug_assert_eq!(self.degree, rhs.degree);
        for i in 0..self.degree() {
            if self.images[rhs.images[i] as usize] != rhs.images[self.images[i] as usize] {
                return false;
            }
        }
        true
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        let mut power = *self;
        let mut n = 1u64;
        while !power.is_identity() {
            power = power.mul(self);
            n += 1;
        }
        n
    }

    /// Smallest point moved by the permutation, if any.
    pub fn smallest_moved_point(&self) -> Option<usize> {
        (0..self.degree()).find(|&i| self.images[i] as usize != i)
    }

    /// Re-embeds into a larger degree, fixing the new points.
    pub fn extend_degree(&self, degree: usize) -> Result<Permutation> {
        if degree < self.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: degree,
            });
        }
        if degree > MAX_DEGREE {
            return Err(Error::DegreeCap {
                needed: degree,
                cap: MAX_DEGREE,
            });
        }
        let mut out = *self;
        out.degree = degree as u8;
        Ok(out)
    }

    /// Shifts all points by `offset` inside a permutation of `degree` points.
    pub fn shift(&self, offset: usize, degree: usize) -> Result<Permutation> {
        if offset + self.degree() > degree || degree > MAX_DEGREE {
            return Err(Error::DegreeCap {
                needed: offset + self.degree(),
                cap: degree.min(MAX_DEGREE),
            });
        }
        let mut out = Permutation::identity(degree);
        for i in 0..self.degree() {
            out.images[offset + i] = self.images[i] + offset as u8;
        }
        Ok(out)
    }

    /// Disjoint cycle decomposition, fixed points omitted, cycles led by
    /// their smallest point and sorted by it.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = [false; MAX_DEGREE];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut pt = self.apply(start);
            while pt != start {
                seen[pt] = true;
                cycle.push(pt);
                pt = self.apply(pt);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, pt) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{pt}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &cycles).unwrap()
    }

    #[test]
    fn involution_squares_to_identity() {
        let swap = cyc(2, &[&[0, 1]]);
        assert!(swap.mul(&swap).is_identity());
    }

    #[test]
    fn identity_is_right_neutral() {
        let p = cyc(5, &[&[0, 3, 1]]);
        assert_eq!(p.mul(&Permutation::identity(5)), p);
        assert_eq!(Permutation::identity(5).mul(&p), p);
    }

    #[test]
    fn three_cycle_squared_is_its_inverse() {
        let r = cyc(3, &[&[0, 1, 2]]);
        assert_eq!(r.mul(&r), cyc(3, &[&[0, 2, 1]]));
        assert_eq!(r.mul(&r), r.inverse());
    }

    #[test]
    fn compose_applies_right_factor_first() {
        // (p ∘ q)(i) = p(q(i))
        let p = cyc(4, &[&[0, 1]]);
        let q = cyc(4, &[&[1, 2, 3]]);
        let pq = p.mul(&q);
        assert_eq!(pq.apply(1), p.apply(q.apply(1)));
        assert_eq!(pq.apply(1), 2);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert!(matches!(p.compose(&q), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(&[0, 0, 1]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![0, 3]]).is_err());
        assert!(Permutation::from_cycles(4, &[vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn cycle_roundtrip() {
        let p = cyc(7, &[&[0, 4], &[1, 5, 6]]);
        let again = Permutation::from_cycles(7, &p.cycles()).unwrap();
        assert_eq!(p, again);
        assert_eq!(p.to_string(), "(0 4)(1 5 6)");
    }

    #[test]
    fn order_of_a_product_of_disjoint_cycles() {
        let p = cyc(5, &[&[0, 1], &[2, 3, 4]]);
        assert_eq!(p.order(), 6);
    }
}
