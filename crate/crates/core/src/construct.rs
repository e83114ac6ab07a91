//! Constructors for the standard finite groups the engine works with, plus
//! product, semidirect-product, and quotient constructions.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hom::Homomorphism;
use crate::perm::{Permutation, MAX_DEGREE};

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Cyclic group of order `n` as the rotation on `n` points.
pub fn cyclic(n: u32) -> Result<PermGroup> {
    let n = n as usize;
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::DegreeCap {
            needed: n,
            cap: MAX_DEGREE,
        });
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    let rotation = Permutation::from_cycles(n, &[(0..n).collect()])?;
    PermGroup::from_generators(vec![rotation])
}

/// Dihedral group of order `2n`. For `n >= 3` it acts on the vertices of the
/// regular `n`-gon; `n = 1, 2` fall back to faithful models on 2 and 4 points.
pub fn dihedral(n: u32) -> Result<PermGroup> {
    match n {
        0 => Err(Error::DegreeCap {
            needed: 0,
            cap: MAX_DEGREE,
        }),
        1 => PermGroup::from_generators(vec![Permutation::from_cycles(2, &[vec![0, 1]])?]),
        2 => PermGroup::from_generators(vec![
            Permutation::from_cycles(4, &[vec![0, 1]])?,
            Permutation::from_cycles(4, &[vec![2, 3]])?,
        ]),
        n => {
            let n = n as usize;
            if n > MAX_DEGREE {
                return Err(Error::DegreeCap {
                    needed: n,
                    cap: MAX_DEGREE,
                });
            }
            let rotation = Permutation::from_cycles(n, &[(0..n).collect()])?;
            // x -> -x mod n
            let reflection_images: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
            let reflection = Permutation::from_images(&reflection_images)?;
            PermGroup::from_generators(vec![rotation, reflection])
        }
    }
}

/// Symmetric group on `n` points.
pub fn symmetric(n: u32) -> Result<PermGroup> {
    let n = n as usize;
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::DegreeCap {
            needed: n,
            cap: MAX_DEGREE,
        });
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    let transposition = Permutation::from_cycles(n, &[vec![0, 1]])?;
    if n == 2 {
        return PermGroup::from_generators(vec![transposition]);
    }
    let cycle = Permutation::from_cycles(n, &[(0..n).collect()])?;
    PermGroup::from_generators(vec![transposition, cycle])
}

/// Alternating group on `n` points.
pub fn alternating(n: u32) -> Result<PermGroup> {
    let n = n as usize;
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::DegreeCap {
            needed: n,
            cap: MAX_DEGREE,
        });
    }
    if n <= 2 {
        return Ok(PermGroup::trivial(n));
    }
    let three_cycle = Permutation::from_cycles(n, &[vec![0, 1, 2]])?;
    if n == 3 {
        return PermGroup::from_generators(vec![three_cycle]);
    }
    // an odd-length cycle is even; start it at 1 when n is even
    let long_cycle = if n % 2 == 1 {
        Permutation::from_cycles(n, &[(0..n).collect()])?
    } else {
        Permutation::from_cycles(n, &[(1..n).collect()])?
    };
    PermGroup::from_generators(vec![three_cycle, long_cycle])
}

/// Elementary abelian group of order `p^k` as `k` disjoint `p`-cycles.
pub fn elem_abelian(p: u32, k: u32) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(Error::UnknownCase(format!("E({p},{k}): p must be prime")));
    }
    if k == 0 {
        return Err(Error::UnknownCase(format!("E({p},{k}): k must be >= 1")));
    }
    let (p, k) = (p as usize, k as usize);
    let degree = p * k;
    if degree > MAX_DEGREE {
        return Err(Error::DegreeCap {
            needed: degree,
            cap: MAX_DEGREE,
        });
    }
    let mut gens = Vec::with_capacity(k);
    for block in 0..k {
        let cycle: Vec<usize> = (0..p).map(|i| block * p + i).collect();
        gens.push(Permutation::from_cycles(degree, &[cycle])?);
    }
    PermGroup::from_generators(gens)
}

/// Heisenberg group of unipotent upper-triangular 3x3 matrices over `F_p`,
/// in its regular action on `p^3` points. Elements are triples `(a, b, c)`
/// with `(a,b,c)*(a',b',c') = (a+a', b+b', c+c'+a*b')`.
pub fn heisenberg(p: u32) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(Error::UnknownCase(format!("Heis({p}): p must be prime")));
    }
    let p = p as usize;
    let degree = p * p * p;
    if degree > MAX_DEGREE {
        return Err(Error::DegreeCap {
            needed: degree,
            cap: MAX_DEGREE,
        });
    }
    let index = |a: usize, b: usize, c: usize| a * p * p + b * p + c;
    let mut x_images = vec![0usize; degree];
    let mut y_images = vec![0usize; degree];
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                // left multiplication by x = (1,0,0) and y = (0,1,0)
                x_images[index(a, b, c)] = index((a + 1) % p, b, (c + b) % p);
                y_images[index(a, b, c)] = index(a, (b + 1) % p, c);
            }
        }
    }
    PermGroup::from_generators(vec![
        Permutation::from_images(&x_images)?,
        Permutation::from_images(&y_images)?,
    ])
}

/// `PSL(2, q)` acting on the projective line over `F_q` (`q + 1` points,
/// with the point `q` playing infinity). Supports `q` in `{5, 7}`.
pub fn psl2(q: u32) -> Result<PermGroup> {
    if q != 5 && q != 7 {
        return Err(Error::UnknownCase(format!("PSL(2,{q}): q must be 5 or 7")));
    }
    let q = q as usize;
    let degree = q + 1;
    // x -> x + 1 fixing infinity
    let shift = Permutation::from_cycles(degree, &[(0..q).collect()])?;
    // x -> -1/x, swapping 0 and infinity
    let inf = q;
    let mut inv_images = vec![0usize; degree];
    for x in 0..q {
        if x == 0 {
            inv_images[0] = inf;
        } else {
            let x_inv = (1..q).find(|&y| (x * y) % q == 1).unwrap();
            inv_images[x] = (q - x_inv) % q;
        }
    }
    inv_images[inf] = 0;
    PermGroup::from_generators(vec![shift, Permutation::from_images(&inv_images)?])
}

fn linear_group(modulus: usize, dim: usize, matrices: &[Vec<usize>]) -> Result<PermGroup> {
    assert!(dim == 1 || dim == 2);
    // nonzero vectors in lex order
    let mut points = Vec::new();
    for x in 0..modulus {
        for y in 0..(if dim == 2 { modulus } else { 1 }) {
            if x == 0 && y == 0 {
                continue;
            }
            points.push((x, y));
        }
    }
    let lookup = |v: (usize, usize)| points.iter().position(|&p| p == v).unwrap();
    let mut gens = Vec::new();
    for m in matrices {
        let images: Vec<usize> = points
            .iter()
            .map(|&(x, y)| {
                let v = if dim == 2 {
                    (
                        (m[0] * x + m[1] * y) % modulus,
                        (m[2] * x + m[3] * y) % modulus,
                    )
                } else {
                    ((m[0] * x) % modulus, 0)
                };
                lookup(v)
            })
            .collect();
        gens.push(Permutation::from_images(&images)?);
    }
    PermGroup::from_generators(gens)
}

/// `GL(1, F_3)` on the 2 nonzero scalars.
pub fn gl1_f3() -> Result<PermGroup> {
    linear_group(3, 1, &[vec![2]])
}

/// `GL(2, F_3)` on the 8 nonzero vectors of `F_3^2`.
pub fn gl2_f3() -> Result<PermGroup> {
    linear_group(
        3,
        2,
        &[
            vec![1, 1, 0, 1], // transvection
            vec![0, 2, 1, 0], // [[0,-1],[1,0]]
            vec![1, 0, 0, 2], // determinant -1
        ],
    )
}

/// `SL(2, F_5)` on the 24 nonzero vectors of `F_5^2`.
pub fn sl2_f5() -> Result<PermGroup> {
    linear_group(5, 2, &[vec![1, 1, 0, 1], vec![0, 4, 1, 0]])
}

/// Direct product acting on the disjoint union of the two point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let degree = a.degree() + b.degree();
    if degree > MAX_DEGREE {
        return Err(Error::DegreeCap {
            needed: degree,
            cap: MAX_DEGREE,
        });
    }
    let mut gens = Vec::with_capacity(a.generators().len() + b.generators().len());
    for g in a.generators() {
        gens.push(g.extend_degree(degree)?);
    }
    for g in b.generators() {
        gens.push(g.shift(a.degree(), degree)?);
    }
    let product = PermGroup::from_generators(gens)?;
    let expected = a
        .order()
        .checked_mul(b.order())
        .ok_or(Error::CapExceeded {
            what: "product order",
            size: u64::MAX,
            cap: u64::MAX,
        })?;
    debug_assert_eq!(product.order(), expected);
    if product.order() != expected {
        return Err(Error::NotAHomomorphism);
    }
    Ok(product)
}

/// `(A x A) : C2` with the involution exchanging the two factors, acting on
/// two blocks of `A`'s points.
pub fn swap_extension(a: &PermGroup) -> Result<PermGroup> {
    let d = a.degree();
    let degree = 2 * d;
    if degree > MAX_DEGREE {
        return Err(Error::DegreeCap {
            needed: degree,
            cap: MAX_DEGREE,
        });
    }
    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push(g.extend_degree(degree)?);
    }
    for g in a.generators() {
        gens.push(g.shift(d, degree)?);
    }
    let swap_images: Vec<usize> = (0..degree).map(|i| (i + d) % degree).collect();
    gens.push(Permutation::from_images(&swap_images)?);
    let group = PermGroup::from_generators(gens)?;
    let expected = a
        .order()
        .checked_mul(a.order())
        .and_then(|sq| sq.checked_mul(2))
        .ok_or(Error::CapExceeded {
            what: "swap extension order",
            size: u64::MAX,
            cap: u64::MAX,
        })?;
    if group.order() != expected {
        return Err(Error::NotAnAutomorphism);
    }
    Ok(group)
}

/// Semidirect product `N : H`. `action[i]` lists the images of `N`'s
/// generators under the automorphism assigned to `H`'s generator `i`.
///
/// The product acts on the disjoint union of the regular carrier of `N`
/// (one point per element of `N`, on which both translations and the
/// automorphisms act) and the points of `H`; that union is always faithful,
/// so the construction fails only on the degree cap. Every automorphism is
/// validated by the paired-closure certificate, as is the assignment
/// `H -> <action>` itself.
pub fn semidirect_product(
    n: &PermGroup,
    h: &PermGroup,
    action: &[Vec<Permutation>],
) -> Result<PermGroup> {
    if action.len() != h.generators().len() {
        return Err(Error::NotAHomomorphism);
    }
    let carrier = n.order() as usize;
    let degree = carrier + h.degree();
    if n.order() > MAX_DEGREE as u64 || degree > MAX_DEGREE {
        return Err(Error::DegreeCap {
            needed: degree.max(n.order() as usize),
            cap: MAX_DEGREE,
        });
    }

    // validate each action entry as an automorphism of N
    let mut autos = Vec::with_capacity(action.len());
    for images in action {
        if images.len() != n.generators().len() {
            return Err(Error::NotAnAutomorphism);
        }
        for img in images {
            if !n.contains(img)? {
                return Err(Error::NotAnAutomorphism);
            }
        }
        let endo = Homomorphism::new(n.clone(), images.clone(), n.degree())
            .map_err(|_| Error::NotAnAutomorphism)?;
        if !endo.is_injective() {
            return Err(Error::NotAnAutomorphism);
        }
        autos.push(endo);
    }

    let elements = n.elements(MAX_DEGREE as u64)?;
    let index_of = |p: &Permutation| -> usize {
        elements
            .iter()
            .position(|e| e == p)
            .expect("image stays inside N")
    };

    // automorphisms as permutations of the carrier
    let mut carrier_autos = Vec::with_capacity(autos.len());
    for auto in &autos {
        let images: Vec<usize> = elements
            .iter()
            .map(|e| index_of(&auto.apply(e).expect("element of N")))
            .collect();
        carrier_autos.push(Permutation::from_images(&images)?);
    }

    // certify that generator -> automorphism extends to a homomorphism on H
    Homomorphism::new(h.clone(), carrier_autos.clone(), carrier)
        .map_err(|_| Error::NotAHomomorphism)?;

    // translations of N, fixing H's points
    let mut gens = Vec::new();
    for g in n.generators() {
        let images: Vec<usize> = (0..degree)
            .map(|i| {
                if i < carrier {
                    index_of(&g.mul(&elements[i]))
                } else {
                    i
                }
            })
            .collect();
        gens.push(Permutation::from_images(&images)?);
    }
    // H generators act on the carrier through their automorphism and
    // naturally on their own points
    for (i, hg) in h.generators().iter().enumerate() {
        let images: Vec<usize> = (0..degree)
            .map(|pt| {
                if pt < carrier {
                    carrier_autos[i].apply(pt)
                } else {
                    carrier + hg.apply(pt - carrier)
                }
            })
            .collect();
        gens.push(Permutation::from_images(&images)?);
    }

    let product = PermGroup::from_generators(gens)?;
    let expected = n
        .order()
        .checked_mul(h.order())
        .ok_or(Error::CapExceeded {
            what: "semidirect order",
            size: u64::MAX,
            cap: u64::MAX,
        })?;
    if product.order() != expected {
        return Err(Error::NotAHomomorphism);
    }
    Ok(product)
}

/// Permutation action of `G` on the right cosets of a normal subgroup `N`,
/// together with the projection homomorphism (kernel exactly `N`).
pub fn quotient(g: &PermGroup, n: &PermGroup) -> Result<(PermGroup, Homomorphism)> {
    if !n.is_subgroup_of(g) {
        return Err(Error::NotAMember {
            element: "a generator of N".into(),
        });
    }
    for gg in g.generators() {
        for ng in n.generators() {
            if !n.is_member(&ng.conjugate_by(gg)) {
                return Err(Error::NotNormal {
                    sub: n.order(),
                    parent: g.order(),
                });
            }
        }
    }
    let index = g.order() / n.order();
    if index > MAX_DEGREE as u64 {
        return Err(Error::DegreeCap {
            needed: index as usize,
            cap: MAX_DEGREE,
        });
    }
    let index = index as usize;

    // BFS over right cosets N*rep
    let mut reps: Vec<Permutation> = vec![g.identity()];
    let coset_of = |reps: &[Permutation], x: &Permutation| -> Option<usize> {
        reps.iter()
            .position(|r| n.is_member(&x.mul(&r.inverse())))
    };
    let mut at = 0;
    while at < reps.len() {
        let r = reps[at];
        for gg in g.generators() {
            let x = r.mul(gg);
            if coset_of(&reps, &x).is_none() {
                reps.push(x);
            }
        }
        at += 1;
    }
    if reps.len() != index {
        return Err(Error::NotNormal {
            sub: n.order(),
            parent: g.order(),
        });
    }

    // phi(g): i -> index of coset of rep_i * g^-1 (a left action on right cosets)
    let mut images = Vec::with_capacity(g.generators().len());
    for gg in g.generators() {
        let gg_inv = gg.inverse();
        let perm_images: Vec<usize> = reps
            .iter()
            .map(|r| coset_of(&reps, &r.mul(&gg_inv)).expect("cosets are closed"))
            .collect();
        images.push(Permutation::from_images(&perm_images)?);
    }
    let quotient_group = PermGroup::from_generators(images.clone())?;
    if quotient_group.order() != index as u64 {
        return Err(Error::NotNormal {
            sub: n.order(),
            parent: g.order(),
        });
    }
    let hom = Homomorphism::new(g.clone(), images, index)?;
    Ok((quotient_group, hom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atom_orders() {
        assert_eq!(cyclic(12).unwrap().order(), 12);
        assert_eq!(dihedral(1).unwrap().order(), 2);
        assert_eq!(dihedral(2).unwrap().order(), 4);
        assert_eq!(dihedral(6).unwrap().order(), 12);
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(alternating(6).unwrap().order(), 360);
        assert_eq!(elem_abelian(3, 3).unwrap().order(), 27);
        assert_eq!(elem_abelian(2, 4).unwrap().order(), 16);
        assert_eq!(heisenberg(3).unwrap().order(), 27);
        assert_eq!(heisenberg(3).unwrap().degree(), 27);
        assert_eq!(psl2(5).unwrap().order(), 60);
        assert_eq!(psl2(7).unwrap().order(), 168);
        assert_eq!(gl1_f3().unwrap().order(), 2);
        assert_eq!(gl2_f3().unwrap().order(), 48);
        assert_eq!(sl2_f5().unwrap().order(), 120);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(elem_abelian(4, 2).is_err());
        assert!(elem_abelian(3, 0).is_err());
        assert!(heisenberg(5).is_err()); // 125 points exceed the cap
        assert!(psl2(11).is_err());
        assert!(cyclic(0).is_err());
    }

    #[test]
    fn heisenberg_is_nonabelian_of_exponent_three() {
        let h = heisenberg(3).unwrap();
        assert!(!h.is_abelian());
        let gens = h.generators();
        let x = gens[0];
        assert!(x.mul(&x).mul(&x).is_identity());
    }

    #[test]
    fn direct_product_orders() {
        let a5 = alternating(5).unwrap();
        let product = direct_product(&a5, &a5).unwrap();
        assert_eq!(product.order(), 3600);
        let psl = psl2(7).unwrap();
        let c2 = cyclic(2).unwrap();
        assert_eq!(direct_product(&psl, &c2).unwrap().order(), 336);
        let trivial = PermGroup::trivial(1);
        assert_eq!(direct_product(&trivial, &a5).unwrap().order(), 60);
    }

    #[test]
    fn swap_extension_order_7200_on_ten_points() {
        let a5 = alternating(5).unwrap();
        let g = swap_extension(&a5).unwrap();
        assert_eq!(g.order(), 7200);
        assert_eq!(g.degree(), 10);
    }

    #[test]
    fn frobenius_twenty_from_semidirect() {
        // C5 : C4 with the action x -> x^2
        let n = cyclic(5).unwrap();
        let h = cyclic(4).unwrap();
        let r = n.generators()[0];
        let action = vec![vec![r.mul(&r)]];
        let f20 = semidirect_product(&n, &h, &action).unwrap();
        assert_eq!(f20.order(), 20);
        assert!(!f20.is_abelian());
    }

    #[test]
    fn semidirect_rejects_non_automorphisms() {
        // x -> x^0 is not injective on C5
        let n = cyclic(5).unwrap();
        let h = cyclic(2).unwrap();
        let action = vec![vec![n.identity()]];
        assert!(matches!(
            semidirect_product(&n, &h, &action),
            Err(Error::NotAnAutomorphism)
        ));
    }

    #[test]
    fn semidirect_rejects_non_homomorphic_assignments() {
        // x -> x^2 has order 4 in Aut(C5); assigning it to C2's generator
        // cannot extend to a homomorphism
        let n = cyclic(5).unwrap();
        let h = cyclic(2).unwrap();
        let r = n.generators()[0];
        let action = vec![vec![r.mul(&r)]];
        assert!(matches!(
            semidirect_product(&n, &h, &action),
            Err(Error::NotAHomomorphism)
        ));
    }

    #[test]
    fn quotient_s4_by_klein_four_is_s3() {
        let s4 = symmetric(4).unwrap();
        let v4 = PermGroup::from_generators(vec![
            Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap(),
            Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap(),
        ])
        .unwrap();
        let (q, hom) = quotient(&s4, &v4).unwrap();
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());
        assert_eq!(hom.image().order(), 6);
        assert_eq!(hom.kernel_order(), 4);
    }

    #[test]
    fn quotient_by_trivial_preserves_order() {
        let d6 = dihedral(6).unwrap();
        let (q, hom) = quotient(&d6, &PermGroup::trivial(6)).unwrap();
        assert_eq!(q.order(), 12);
        assert!(hom.is_injective());
    }

    #[test]
    fn quotient_of_swap_extension_by_socle() {
        let a5 = alternating(5).unwrap();
        let g = swap_extension(&a5).unwrap();
        let mut socle_gens = Vec::new();
        for gen in a5.generators() {
            socle_gens.push(gen.extend_degree(10).unwrap());
            socle_gens.push(gen.shift(5, 10).unwrap());
        }
        let socle = PermGroup::from_generators(socle_gens).unwrap();
        let (q, _) = quotient(&g, &socle).unwrap();
        assert_eq!(q.order(), 2);
    }

    #[test]
    fn quotient_rejects_non_normal_subgroups() {
        let s4 = symmetric(4).unwrap();
        let c2 = PermGroup::from_generators(vec![Permutation::from_cycles(
            4,
            &[vec![0, 1]],
        )
        .unwrap()])
        .unwrap();
        assert!(matches!(
            quotient(&s4, &c2),
            Err(Error::NotNormal { .. })
        ));
    }
}
