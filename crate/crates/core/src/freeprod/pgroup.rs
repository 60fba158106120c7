use rayon::prelude::*;

use super::{FreeProdError, MarkedQuotient};
use crate::arith::is_prime;
use crate::group::{quotient, sylow_subgroups, GroupRef, Homomorphism, Subgroup};

/// The largest quotient of `q` that is a `p`-group, with its projection.
///
/// The kernel is the subgroup generated by the elements of order prime to `p`:
/// every such element dies in a `p`-group, and the quotient by them has only
/// elements of `p`-power order.
pub fn max_p_quotient(q: &GroupRef, p: usize) -> Result<(GroupRef, Homomorphism), FreeProdError> {
    if !is_prime(p as u64) {
        return Err(FreeProdError::NotPrime(p));
    }
    let orders = q.element_orders();
    let seed: Vec<usize> = q.elements().filter(|&x| !orders[x].is_multiple_of(p)).collect();
    let kernel = Subgroup::generated(q, &seed);
    Ok(quotient(q, &kernel).expect("generated by a union of conjugacy classes"))
}

/// Pointwise checks on a [`Retraction`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RetractionReport {
    /// `alpha(P) = R`.
    pub sylow_onto_quotient: bool,
    /// `markᵢ^{cᵢ} ⊆ P` for every `i`.
    pub marks_conjugated_into_sylow: bool,
    /// `alpha(cᵢ) = 1` for every `i`.
    pub conjugators_in_kernel: bool,
    /// `alpha(g^{cᵢ}) = alpha(g)` for every `g` in mark `i`.
    pub alpha_unchanged_on_marks: bool,
}

impl RetractionReport {
    pub fn all_passed(&self) -> bool {
        self.sylow_onto_quotient
            && self.marks_conjugated_into_sylow
            && self.conjugators_in_kernel
            && self.alpha_unchanged_on_marks
    }
}

/// A Sylow subgroup `P` of `Q` mapping onto the maximal `p`-quotient `R`, and
/// conjugators moving each mark into `P` without changing its image in `R`.
#[derive(Debug, Clone)]
pub struct Retraction {
    pub p: usize,
    pub sylow: Subgroup,
    pub quotient: GroupRef,
    pub alpha: Homomorphism,
    pub conjugators: Vec<usize>,
    pub report: RetractionReport,
}

/// For each mark, takes the first `a` with `markᵢ^a ⊆ P`, the first `b ∈ P`
/// with `alpha(b) = alpha(a)`, and returns `cᵢ = a·b⁻¹`. Then
/// `markᵢ^{cᵢ} = (markᵢ^a)^{b⁻¹} ⊆ P` and `alpha(cᵢ) = 1`.
pub fn sylow_retraction(mq: &MarkedQuotient, p: usize) -> Result<Retraction, FreeProdError> {
    if !is_prime(p as u64) {
        return Err(FreeProdError::NotPrime(p));
    }
    if let Some(index) = mq.marks().iter().position(|m| !m.is_p_group(p)) {
        return Err(FreeProdError::MarksNotPGroups { index, p });
    }
    let q = mq.group();
    let (r, alpha) = max_p_quotient(q, p)?;
    let sylow = sylow_subgroups(q, p).swap_remove(0);
    let conjugators: Vec<Result<usize, FreeProdError>> = mq
        .marks()
        .par_iter()
        .enumerate()
        .map(|(index, mark)| {
            let a = q
                .elements()
                .find(|&a| mark.conjugate(a).is_subset_of(&sylow))
                .ok_or(FreeProdError::NoConjugatorFound { index })?;
            let b = *sylow
                .elements()
                .iter()
                .find(|&&b| alpha.apply(b) == alpha.apply(a))
                .ok_or(FreeProdError::NoConjugatorFound { index })?;
            Ok(q.mul(a, q.inv(b)))
        })
        .collect();
    let conjugators = conjugators.into_iter().collect::<Result<Vec<_>, _>>()?;
    let e = r.identity();
    let report = RetractionReport {
        sylow_onto_quotient: alpha.image_of(&sylow).order() == r.order(),
        marks_conjugated_into_sylow: mq
            .marks()
            .iter()
            .zip(&conjugators)
            .all(|(m, &c)| m.conjugate(c).is_subset_of(&sylow)),
        conjugators_in_kernel: conjugators.iter().all(|&c| alpha.apply(c) == e),
        alpha_unchanged_on_marks: mq.marks().iter().zip(&conjugators).all(|(m, &c)| {
            m.elements()
                .iter()
                .all(|&g| alpha.apply(q.conjugate(g, c)) == alpha.apply(g))
        }),
    };
    Ok(Retraction {
        p,
        sylow,
        quotient: r,
        alpha,
        conjugators,
        report,
    })
}
