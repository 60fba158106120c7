//! Inertia and ramification as pure group theory.
//!
//! A datum is a finite group `Γ`, an epimorphism `ρ: Γ → Δ` standing for the
//! action on the residue field, and a residue characteristic `p` (0 or a
//! prime). The inertia group is `G₀ = ker ρ`; the ramification group `G₁` is
//! the unique `p`-Sylow subgroup of `G₀`, or trivial when `p = 0`.

use thiserror::Error;

use crate::arith::{is_power_of, is_prime};
use crate::budget::Budget;
use crate::group::{quotient, sylow_subgroups, GroupRef, Homomorphism, Subgroup};
use crate::search::{find_complement, find_section, SearchError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValuationError {
    #[error("the residue map is not onto")]
    NotEpi,
    #[error("residue characteristic {0} is neither 0 nor a prime")]
    InvalidCharacteristic(usize),
    #[error("the inertia group has {count} Sylow {p}-subgroups, not one")]
    NonUniqueSylow { p: usize, count: usize },
    #[error("e·f = {ef} does not divide n = {n}")]
    NotIntegral { n: usize, ef: usize },
    #[error("defect {d} is not allowed in residue characteristic {p}")]
    IllegalDefect { d: usize, p: usize },
    #[error("degree, ramification index and residue degree must be positive")]
    NonPositive,
}

#[derive(Debug, Clone)]
pub struct RamificationDatum {
    gamma: GroupRef,
    rho: Homomorphism,
    p: usize,
    inertia: Subgroup,
    ramification: Subgroup,
}

impl RamificationDatum {
    pub fn new(rho: Homomorphism, p: usize) -> Result<Self, ValuationError> {
        if p != 0 && !is_prime(p as u64) {
            return Err(ValuationError::InvalidCharacteristic(p));
        }
        if !rho.is_epi() {
            return Err(ValuationError::NotEpi);
        }
        let gamma = rho.domain().clone();
        let inertia = rho.kernel();
        let ramification = if p == 0 {
            Subgroup::trivial(&gamma)
        } else {
            let (g0, incl) = inertia.to_group();
            let mut sylows = sylow_subgroups(&g0, p);
            if sylows.len() != 1 {
                return Err(ValuationError::NonUniqueSylow { p, count: sylows.len() });
            }
            incl.image_of(&sylows.remove(0))
        };
        Ok(RamificationDatum {
            gamma,
            rho,
            p,
            inertia,
            ramification,
        })
    }

    pub fn gamma(&self) -> &GroupRef {
        &self.gamma
    }

    pub fn rho(&self) -> &Homomorphism {
        &self.rho
    }

    pub fn delta(&self) -> &GroupRef {
        self.rho.codomain()
    }

    pub fn p(&self) -> usize {
        self.p
    }
}

/// `G₀ = ker ρ`.
pub fn inertia(datum: &RamificationDatum) -> Subgroup {
    datum.inertia.clone()
}

/// `G₁`: trivial for `p = 0`, else the unique `p`-Sylow subgroup of `G₀`.
pub fn ramification(datum: &RamificationDatum) -> Subgroup {
    datum.ramification.clone()
}

#[derive(Debug, Clone)]
pub struct TowerReport {
    /// `(|G₁|, |G₀|, |Γ|)`.
    pub orders: (usize, usize, usize),
    /// Named checks with their outcome, in a fixed order.
    pub checks: Vec<(&'static str, bool)>,
    /// The map `Γ/G₀ → Δ` induced by `ρ`.
    pub residue_map: Homomorphism,
}

impl TowerReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|&(_, ok)| ok)
    }
}

/// Checks `G₁ ⊴ Γ`, `G₁ ⊆ G₀ ⊴ Γ`, `Γ/G₀ ≅ Δ` through the map induced by `ρ`,
/// `G₁` a `p`-group and `p ∤ [G₀ : G₁]`.
pub fn check_tower(datum: &RamificationDatum) -> TowerReport {
    let (g0, g1, p) = (&datum.inertia, &datum.ramification, datum.p);
    let (quot, proj) = quotient(&datum.gamma, g0).expect("kernels are normal");
    let mut induced = vec![usize::MAX; quot.order()];
    for x in datum.gamma.elements() {
        induced[proj.apply(x)] = datum.rho.apply(x);
    }
    let residue_map = Homomorphism::new_unchecked(quot, datum.delta().clone(), induced);
    let index = g0.order() / g1.order();
    let checks = vec![
        ("ramification group is normal", g1.is_normal()),
        ("ramification group lies in inertia", g1.is_subset_of(g0)),
        ("inertia group is normal", g0.is_normal()),
        (
            "residue map is an isomorphism",
            residue_map.verify() && residue_map.is_iso(),
        ),
        (
            "ramification group is a p-group",
            p == 0 && g1.is_trivial() || p != 0 && g1.is_p_group(p),
        ),
        ("p does not divide the tame index", p == 0 || index % p != 0),
    ];
    TowerReport {
        orders: (g1.order(), g0.order(), datum.gamma.order()),
        checks,
        residue_map,
    }
}

/// Degree `n`, ramification index `e`, residue degree `f` and residue
/// characteristic `p` of a finite extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NumericalExtensionData {
    pub n: usize,
    pub e: usize,
    pub f: usize,
    pub p: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefectClass {
    Defectless,
    Defect(usize),
}

/// `d = n/(e·f)`, which must be 1 when `p = 0` and a power of `p` otherwise.
pub fn defect(data: NumericalExtensionData) -> Result<DefectClass, ValuationError> {
    let NumericalExtensionData { n, e, f, p } = data;
    if n == 0 || e == 0 || f == 0 {
        return Err(ValuationError::NonPositive);
    }
    if p != 0 && !is_prime(p as u64) {
        return Err(ValuationError::InvalidCharacteristic(p));
    }
    let ef = e * f;
    if n % ef != 0 {
        return Err(ValuationError::NotIntegral { n, ef });
    }
    match n / ef {
        1 => Ok(DefectClass::Defectless),
        d if p != 0 && is_power_of(d, p) => Ok(DefectClass::Defect(d)),
        d => Err(ValuationError::IllegalDefect { d, p }),
    }
}

/// Splitting witnesses, each `None` when the exhaustive search found none.
#[derive(Debug, Clone)]
pub struct SplittingReport {
    /// `s: Δ → Γ` with `ρ∘s = id`.
    pub section: Option<Homomorphism>,
    /// A complement of `G₀` in `Γ`.
    pub inertia_complement: Option<Subgroup>,
    /// A complement of `G₁` in `Γ`.
    pub ramification_complement: Option<Subgroup>,
    /// A complement of `G₀/G₁` in `Γ/G₁`.
    pub tame_complement: Option<Subgroup>,
}

pub fn splitting_report(datum: &RamificationDatum, budget: &Budget) -> Result<SplittingReport, SearchError> {
    let gamma = &datum.gamma;
    let section = find_section(&datum.rho, budget)?;
    let inertia_complement = find_complement(gamma, &datum.inertia, budget)?;
    let ramification_complement = find_complement(gamma, &datum.ramification, budget)?;
    let (tame, proj) = quotient(gamma, &datum.ramification)?;
    let tame_inertia = proj.image_of(&datum.inertia);
    let tame_complement = find_complement(&tame, &tame_inertia, budget)?;
    Ok(SplittingReport {
        section,
        inertia_complement,
        ramification_complement,
        tame_complement,
    })
}
