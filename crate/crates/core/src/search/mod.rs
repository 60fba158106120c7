//! Homomorphism enumeration, the small-group catalog, and exhaustive section
//! and complement search.

use std::ops::ControlFlow;

use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::group::{quotient, GroupError, GroupRef, HomSearch, Homomorphism, Subgroup};

mod catalog;
pub(crate) mod tuples;

pub use catalog::{build_catalog, Catalog, MAX_GENERATED_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    BudgetExceeded(#[from] BudgetExceeded),
    #[error("map is not an epimorphism")]
    NotEpi,
    #[error("subgroup is not normal: conjugation by element {witness} moves it")]
    NotNormal { witness: usize },
    #[error("catalog bound {requested} is beyond the generated range (max {max}); supply a catalog file")]
    Unsupported { requested: usize, max: usize },
    #[error("invalid catalog: {0}")]
    InvalidCatalog(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Every homomorphism `g → h`, sorted lexicographically by map array.
pub fn enumerate_homomorphisms(g: &GroupRef, h: &GroupRef, budget: &Budget) -> Result<Vec<Homomorphism>, SearchError> {
    let mut maps = Vec::new();
    HomSearch::new(g, h).run(budget, |m| {
        maps.push(m);
        ControlFlow::Continue(())
    })?;
    maps.sort_unstable();
    Ok(maps
        .into_iter()
        .map(|m| Homomorphism::new_unchecked(g.clone(), h.clone(), m))
        .collect())
}

pub fn enumerate_epimorphisms(g: &GroupRef, h: &GroupRef, budget: &Budget) -> Result<Vec<Homomorphism>, SearchError> {
    if !g.order().is_multiple_of(h.order()) {
        return Ok(Vec::new());
    }
    let mut homs = enumerate_homomorphisms(g, h, budget)?;
    homs.retain(Homomorphism::is_epi);
    Ok(homs)
}

/// `Aut(g)`, sorted by map array; the identity comes first.
pub fn automorphisms(g: &GroupRef, budget: &Budget) -> Result<Vec<Homomorphism>, SearchError> {
    let mut maps = Vec::new();
    HomSearch::new(g, g).injective().run(budget, |m| {
        maps.push(m);
        ControlFlow::Continue(())
    })?;
    maps.sort_unstable();
    Ok(maps
        .into_iter()
        .map(|m| Homomorphism::new_unchecked(g.clone(), g.clone(), m))
        .collect())
}

/// A homomorphism `s` with `pi ∘ s = id`, searched over homomorphisms from the
/// codomain whose generator images lie in the matching fibres of `pi`.
/// `Ok(None)` means the search space was exhausted.
pub fn find_section(pi: &Homomorphism, budget: &Budget) -> Result<Option<Homomorphism>, SearchError> {
    if !pi.is_epi() {
        return Err(SearchError::NotEpi);
    }
    let (g, a) = (pi.domain(), pi.codomain());
    let search = HomSearch::new(a, g);
    let gens = search.gens().to_vec();
    let search = search.filter_candidates(|i, x| pi.apply(x) == gens[i]);
    let mut found = None;
    search.run(budget, |m| {
        found = Some(m);
        ControlFlow::Break(())
    })?;
    Ok(found.map(|m| {
        let s = Homomorphism::new_unchecked(a.clone(), g.clone(), m);
        debug_assert!(s.then(pi).unwrap() == Homomorphism::identity(a));
        s
    }))
}

/// A complement `C` of the normal subgroup `n` (`C ∩ n = 1`, `C·n = g`).
///
/// Complements are exactly the images of sections of `g → g/n`, so the
/// section search decides existence.
pub fn find_complement(g: &GroupRef, n: &Subgroup, budget: &Budget) -> Result<Option<Subgroup>, SearchError> {
    let (_, proj) = quotient(g, n).map_err(|e| match e {
        GroupError::NotNormal { witness } => SearchError::NotNormal { witness },
        other => SearchError::Group(other),
    })?;
    Ok(find_section(&proj, budget)?.map(|s| s.image()))
}

/// Checks both defining equations of a complement pointwise.
pub fn is_complement(g: &GroupRef, n: &Subgroup, c: &Subgroup) -> bool {
    let meet_trivial = c.elements().iter().filter(|&&x| n.contains(x)).count() == 1;
    let mut covered = vec![false; g.order()];
    for &x in c.elements() {
        for &y in n.elements() {
            covered[g.mul(x, y)] = true;
        }
    }
    meet_trivial && covered.iter().all(|&b| b)
}
