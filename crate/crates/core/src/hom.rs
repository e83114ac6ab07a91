//! Homomorphisms between permutation groups, certified by the graph-closure
//! certificate: the closure of the paired generators `(g_i, image_i)` inside
//! the direct product has order `|source|` exactly when the assignment
//! extends to a homomorphism.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{Permutation, MAX_DEGREE};

/// A certified homomorphism, stored as one target image per source generator.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    source: PermGroup,
    target_degree: usize,
    gen_images: Vec<Permutation>,
    /// The graph `{(x, phi(x))}` as a permutation group on the disjoint
    /// union of the two point sets.
    paired: PermGroup,
    image: PermGroup,
}

impl Homomorphism {
    /// Certifies that mapping `source`'s generators to `gen_images` (acting
    /// on `target_degree` points) extends to a homomorphism.
    pub fn new(
        source: PermGroup,
        gen_images: Vec<Permutation>,
        target_degree: usize,
    ) -> Result<Self> {
        if gen_images.len() != source.generators().len() {
            return Err(Error::NotAHomomorphism);
        }
        let total = source.degree() + target_degree;
        if total > MAX_DEGREE {
            return Err(Error::DegreeCap {
                needed: total,
                cap: MAX_DEGREE,
            });
        }
        let mut paired_gens = Vec::with_capacity(gen_images.len());
        for (g, img) in source.generators().iter().zip(&gen_images) {
            if img.degree() != target_degree {
                return Err(Error::DegreeMismatch {
                    left: target_degree,
                    right: img.degree(),
                });
            }
            let mut images: Vec<usize> = (0..total).collect();
            for (i, slot) in images.iter_mut().enumerate().take(source.degree()) {
                *slot = g.apply(i);
            }
            for i in 0..target_degree {
                images[source.degree() + i] = source.degree() + img.apply(i);
            }
            paired_gens.push(Permutation::from_images(&images)?);
        }
        let paired = PermGroup::from_generators(paired_gens)?;
        if paired.order() != source.order() {
            return Err(Error::NotAHomomorphism);
        }
        let image = PermGroup::from_generators(
            gen_images
                .iter()
                .map(|p| p.extend_degree(target_degree))
                .collect::<Result<Vec<_>>>()?,
        )?;
        Ok(Homomorphism {
            source,
            target_degree,
            gen_images,
            paired,
            image,
        })
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn image(&self) -> &PermGroup {
        &self.image
    }

    pub fn gen_images(&self) -> &[Permutation] {
        &self.gen_images
    }

    pub fn kernel_order(&self) -> u64 {
        self.source.order() / self.image.order()
    }

    pub fn is_injective(&self) -> bool {
        self.image.order() == self.source.order()
    }

    /// Evaluates the homomorphism on an arbitrary element of the source.
    ///
    /// Every non-identity element of the graph moves a source point, so all
    /// chain bases sit in the source block and sifting `(g, id)` leaves the
    /// residue `(id, phi(g)^-1)`.
    pub fn apply(&self, g: &Permutation) -> Result<Permutation> {
        if g.degree() != self.source.degree() {
            return Err(Error::DegreeMismatch {
                left: self.source.degree(),
                right: g.degree(),
            });
        }
        if !self.source.is_member(g) {
            return Err(Error::NotAMember {
                element: g.to_string(),
            });
        }
        let total = self.source.degree() + self.target_degree;
        let mut images: Vec<usize> = (0..total).collect();
        for (i, slot) in images.iter_mut().enumerate().take(g.degree()) {
            *slot = g.apply(i);
        }
        let embedded = Permutation::from_images(&images)?;
        let residue = self.paired.sift_residue(embedded);
        // residue = (id, phi(g)^-1)
        let mut out = vec![0usize; self.target_degree];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = residue.apply(self.source.degree() + i) - self.source.degree();
        }
        Ok(Permutation::from_images(&out)?.inverse())
    }
}

/// Decides whether any injective homomorphism `source -> target` exists, by
/// exhausting generator-image tuples (filtered by element orders) and
/// applying the closure certificate.
pub fn exists_faithful_hom(source: &PermGroup, target: &PermGroup) -> Result<bool> {
    if target.order() < source.order() || !target.order().is_multiple_of(source.order()) {
        return Ok(false);
    }
    let candidates = target.elements(crate::config::HOM_SEARCH_CAP)?;
    let gens = source.generators();

    let orders: Vec<u64> = gens.iter().map(|g| g.order()).collect();
    let filtered: Vec<Vec<&Permutation>> = orders
        .iter()
        .map(|&ord| {
            candidates
                .iter()
                .filter(|c| ord % c.order() == 0)
                .collect()
        })
        .collect();

    let space = filtered
        .iter()
        .fold(1u64, |acc, pool| acc.saturating_mul(pool.len() as u64));
    const SPACE_CAP: u64 = 1_000_000;
    if space > SPACE_CAP {
        return Err(Error::CapExceeded {
            what: "homomorphism search space",
            size: space,
            cap: SPACE_CAP,
        });
    }
    if filtered.iter().any(|pool| pool.is_empty()) {
        return Ok(false);
    }

    let mut choice = vec![0usize; gens.len()];
    'outer: loop {
        let images: Vec<Permutation> = choice
            .iter()
            .zip(&filtered)
            .map(|(&i, pool)| *pool[i])
            .collect();
        if let Ok(hom) = Homomorphism::new(source.clone(), images, target.degree()) {
            if hom.is_injective() {
                return Ok(true);
            }
        }
        for slot in (0..choice.len()).rev() {
            choice[slot] += 1;
            if choice[slot] < filtered[slot].len() {
                continue 'outer;
            }
            choice[slot] = 0;
            if slot == 0 {
                break 'outer;
            }
        }
    }
    Ok(false)
}

/// True when no injective homomorphism `source -> target` exists.
pub fn no_faithful_hom(source: &PermGroup, target: &PermGroup) -> Result<bool> {
    Ok(!exists_faithful_hom(source, target)?)
}
