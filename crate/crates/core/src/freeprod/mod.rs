//! The free product of finitely many finite groups, through reduced words and
//! finite quotients.
//!
//! The free product itself is never built. Elements are reduced words; a
//! homomorphism out of the free product is a tuple of homomorphisms, one per
//! factor, and its finite images are [`MarkedQuotient`]s.

use std::fmt;

use thiserror::Error;

use crate::group::{same_group, GroupRef, Homomorphism};
use crate::search::SearchError;

mod pgroup;
mod quotient;

pub use pgroup::{max_p_quotient, sylow_retraction, Retraction, RetractionReport};
pub use quotient::{enumerate_quotients, joint_image, level_quotient, separate, MarkedQuotient, Separation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeProdError {
    #[error("a free product needs at least one factor")]
    NoFactors,
    #[error("factor {index} does not exist ({factors} factors)")]
    FactorIndex { index: usize, factors: usize },
    #[error("{element} is not an element of factor {factor}")]
    InvalidElement { factor: usize, element: usize },
    #[error("maps do not match the factors: {0}")]
    TupleMismatch(String),
    #[error("the two words are equal")]
    EqualWords,
    #[error("{0} is not a prime")]
    NotPrime(usize),
    #[error("mark {index} is not a {p}-group")]
    MarksNotPGroups { index: usize, p: usize },
    #[error("no element conjugates mark {index} into the Sylow subgroup")]
    NoConjugatorFound { index: usize },
    #[error(transparent)]
    Search(#[from] SearchError),
}

/// The factors `G₁, …, Gₙ` of a free product.
#[derive(Debug, Clone)]
pub struct FreeProductContext {
    factors: Vec<GroupRef>,
}

/// A word `g₁g₂…g_k` with every `gⱼ` a non-identity element of some factor
/// and no two neighbours from the same factor. Syllables are
/// `(factor, element)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ReducedWord {
    syllables: Vec<(usize, usize)>,
}

impl ReducedWord {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn syllables(&self) -> &[(usize, usize)] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.syllables.iter().map(|(i, g)| format!("{i}:{g}")).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FreeProductContext {
    pub fn new(factors: Vec<GroupRef>) -> Result<Self, FreeProdError> {
        if factors.is_empty() {
            return Err(FreeProdError::NoFactors);
        }
        Ok(FreeProductContext { factors })
    }

    pub fn factors(&self) -> &[GroupRef] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn check(&self, factor: usize, element: usize) -> Result<(), FreeProdError> {
        let g = self.factors.get(factor).ok_or(FreeProdError::FactorIndex {
            index: factor,
            factors: self.factors.len(),
        })?;
        if element >= g.order() {
            return Err(FreeProdError::InvalidElement { factor, element });
        }
        Ok(())
    }

    /// The reduced form of an arbitrary product of factor elements.
    pub fn word(&self, syllables: &[(usize, usize)]) -> Result<ReducedWord, FreeProdError> {
        for &(i, g) in syllables {
            self.check(i, g)?;
        }
        let mut out = Vec::with_capacity(syllables.len());
        for &s in syllables {
            self.push(&mut out, s);
        }
        Ok(ReducedWord { syllables: out })
    }

    /// Appends one syllable, merging with the last syllable of the same factor
    /// and dropping identities; cancellation cascades through later pushes.
    fn push(&self, stack: &mut Vec<(usize, usize)>, (i, g): (usize, usize)) {
        let gi = &self.factors[i];
        if g == gi.identity() {
            return;
        }
        match stack.last_mut() {
            Some((j, h)) if *j == i => {
                let m = gi.mul(*h, g);
                if m == gi.identity() {
                    stack.pop();
                } else {
                    *h = m;
                }
            }
            _ => stack.push((i, g)),
        }
    }

    pub fn multiply(&self, w1: &ReducedWord, w2: &ReducedWord) -> ReducedWord {
        let mut out = w1.syllables.clone();
        for &s in &w2.syllables {
            self.push(&mut out, s);
        }
        ReducedWord { syllables: out }
    }

    pub fn inverse(&self, w: &ReducedWord) -> ReducedWord {
        let syllables = w
            .syllables
            .iter()
            .rev()
            .map(|&(i, g)| (i, self.factors[i].inv(g)))
            .collect();
        ReducedWord { syllables }
    }

    /// Whether `w` satisfies the normal-form conditions in this context.
    pub fn is_reduced(&self, w: &ReducedWord) -> bool {
        w.syllables
            .iter()
            .all(|&(i, g)| self.check(i, g).is_ok() && g != self.factors[i].identity())
            && w.syllables.windows(2).all(|p| p[0].0 != p[1].0)
    }

    /// Checks that `etas[i]` is defined on factor `i` and all share one
    /// codomain, which is returned.
    pub fn check_tuple<'a>(&self, etas: &'a [Homomorphism]) -> Result<&'a GroupRef, FreeProdError> {
        if etas.len() != self.factors.len() {
            return Err(FreeProdError::TupleMismatch(format!(
                "{} maps for {} factors",
                etas.len(),
                self.factors.len()
            )));
        }
        let h = etas[0].codomain();
        for (i, (eta, g)) in etas.iter().zip(&self.factors).enumerate() {
            if !same_group(eta.domain(), g) {
                return Err(FreeProdError::TupleMismatch(format!(
                    "map {i} is not defined on factor {i}"
                )));
            }
            if !same_group(eta.codomain(), h) {
                return Err(FreeProdError::TupleMismatch(format!(
                    "map {i} has a different codomain"
                )));
            }
        }
        Ok(h)
    }

    /// The image of `w` under the homomorphism determined by `etas`.
    pub fn evaluate(&self, w: &ReducedWord, etas: &[Homomorphism]) -> Result<usize, FreeProdError> {
        let h = self.check_tuple(etas)?;
        let maps: Vec<&[usize]> = etas.iter().map(Homomorphism::map).collect();
        Ok(eval_maps(h, w, &maps))
    }

    /// Every reduced word with at most `max_len` syllables, shortest first.
    pub fn words_up_to(&self, max_len: usize) -> Vec<ReducedWord> {
        let mut out = vec![ReducedWord::empty()];
        let mut layer = vec![ReducedWord::empty()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for (i, g) in self.factors.iter().enumerate() {
                    if w.syllables.last().is_some_and(|&(j, _)| j == i) {
                        continue;
                    }
                    for x in g.elements().filter(|&x| x != g.identity()) {
                        let mut s = w.syllables.clone();
                        s.push((i, x));
                        next.push(ReducedWord { syllables: s });
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

pub(crate) fn eval_maps(h: &GroupRef, w: &ReducedWord, maps: &[&[usize]]) -> usize {
    w.syllables
        .iter()
        .fold(h.identity(), |acc, &(i, g)| h.mul(acc, maps[i][g]))
}
