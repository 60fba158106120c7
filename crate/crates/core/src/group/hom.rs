use std::fmt;

use super::{same_group, GroupError, GroupRef, Subgroup};

/// A structure-preserving map between two finite groups, stored as the image
/// of every domain element.
#[derive(Clone)]
pub struct Homomorphism {
    domain: GroupRef,
    codomain: GroupRef,
    map: Vec<usize>,
}

impl PartialEq for Homomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && same_group(&self.domain, &other.domain) && same_group(&self.codomain, &other.codomain)
    }
}

impl Eq for Homomorphism {}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hom{:?}", self.map)
    }
}

/// Kernel, image and the injective/surjective flags of a homomorphism.
#[derive(Debug, Clone)]
pub struct HomSummary {
    pub kernel: Subgroup,
    pub image: Subgroup,
    pub is_epi: bool,
    pub is_mono: bool,
}

impl Homomorphism {
    /// Checks totality, range and the homomorphism law on all pairs.
    pub fn new(domain: GroupRef, codomain: GroupRef, map: Vec<usize>) -> Result<Self, GroupError> {
        if map.len() != domain.order() {
            return Err(GroupError::NotAHomomorphism {
                reason: format!("map has {} entries for a domain of order {}", map.len(), domain.order()),
            });
        }
        for &v in &map {
            codomain.check_element(v)?;
        }
        if map[domain.identity()] != codomain.identity() {
            return Err(GroupError::NotAHomomorphism {
                reason: "identity is not mapped to the identity".into(),
            });
        }
        for a in domain.elements() {
            for b in domain.elements() {
                if map[domain.mul(a, b)] != codomain.mul(map[a], map[b]) {
                    return Err(GroupError::NotAHomomorphism {
                        reason: format!("law fails on the pair ({a}, {b})"),
                    });
                }
            }
        }
        Ok(Homomorphism { domain, codomain, map })
    }

    pub(crate) fn new_unchecked(domain: GroupRef, codomain: GroupRef, map: Vec<usize>) -> Self {
        debug_assert_eq!(map.len(), domain.order());
        Homomorphism { domain, codomain, map }
    }

    pub fn identity(g: &GroupRef) -> Self {
        Self::new_unchecked(g.clone(), g.clone(), g.elements().collect())
    }

    pub fn trivial(domain: &GroupRef, codomain: &GroupRef) -> Self {
        Self::new_unchecked(
            domain.clone(),
            codomain.clone(),
            vec![codomain.identity(); domain.order()],
        )
    }

    /// The inner automorphism `g ↦ a⁻¹ g a`.
    pub fn conjugation(g: &GroupRef, a: usize) -> Self {
        let map = g.elements().map(|x| g.conjugate(x, a)).collect();
        Self::new_unchecked(g.clone(), g.clone(), map)
    }

    pub fn domain(&self) -> &GroupRef {
        &self.domain
    }

    pub fn codomain(&self) -> &GroupRef {
        &self.codomain
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn kernel(&self) -> Subgroup {
        let e = self.codomain.identity();
        let elements = self.domain.elements().filter(|&x| self.map[x] == e).collect();
        Subgroup::from_sorted_unchecked(&self.domain, elements)
    }

    pub fn image(&self) -> Subgroup {
        let mut elements = self.map.clone();
        elements.sort_unstable();
        elements.dedup();
        Subgroup::from_sorted_unchecked(&self.codomain, elements)
    }

    pub fn is_epi(&self) -> bool {
        self.image().order() == self.codomain.order()
    }

    pub fn is_mono(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_iso(&self) -> bool {
        self.domain.order() == self.codomain.order() && self.is_mono()
    }

    pub fn summary(&self) -> HomSummary {
        HomSummary {
            kernel: self.kernel(),
            image: self.image(),
            is_epi: self.is_epi(),
            is_mono: self.is_mono(),
        }
    }

    /// `next ∘ self`: apply `self` first.
    pub fn then(&self, next: &Homomorphism) -> Result<Homomorphism, GroupError> {
        if !same_group(&self.codomain, &next.domain) {
            return Err(GroupError::DomainMismatch);
        }
        let map = self.map.iter().map(|&y| next.map[y]).collect();
        Ok(Self::new_unchecked(self.domain.clone(), next.codomain.clone(), map))
    }

    /// Restriction to `s`, whose domain is `s` viewed as a group via
    /// [`Subgroup::to_group`].
    pub fn restrict(&self, s: &Subgroup) -> Result<Homomorphism, GroupError> {
        if !same_group(&self.domain, s.parent()) {
            return Err(GroupError::DomainMismatch);
        }
        let (sg, _) = s.to_group();
        let map = s.elements().iter().map(|&x| self.map[x]).collect();
        Ok(Self::new_unchecked(sg, self.codomain.clone(), map))
    }

    pub fn image_of(&self, s: &Subgroup) -> Subgroup {
        let mut elements: Vec<usize> = s.elements().iter().map(|&x| self.map[x]).collect();
        elements.sort_unstable();
        elements.dedup();
        Subgroup::from_sorted_unchecked(&self.codomain, elements)
    }

    pub fn preimage_of(&self, s: &Subgroup) -> Subgroup {
        let elements = self.domain.elements().filter(|&x| s.contains(self.map[x])).collect();
        Subgroup::from_sorted_unchecked(&self.domain, elements)
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Option<Homomorphism> {
        if !self.is_iso() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(Self::new_unchecked(self.codomain.clone(), self.domain.clone(), inv))
    }

    /// Exhaustive law check, for homomorphisms built by other code paths.
    pub fn verify(&self) -> bool {
        let (d, c) = (&self.domain, &self.codomain);
        d.elements().all(|a| {
            d.elements()
                .all(|b| self.map[d.mul(a, b)] == c.mul(self.map[a], self.map[b]))
        })
    }
}

/// `h2 ∘ h1`.
pub fn compose(h1: &Homomorphism, h2: &Homomorphism) -> Result<Homomorphism, GroupError> {
    h1.then(h2)
}
