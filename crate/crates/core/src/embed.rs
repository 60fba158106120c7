//! Embedding problems for marked finite groups.
//!
//! A marked group is a finite group with an ordered list of subgroups that
//! generate it. An embedding problem asks for an epimorphism `γ: G → B` lifting
//! `φ: G → A` through `ψ: B → A` and carrying each mark `Gᵢ` onto `Bᵢ`.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::budget::Budget;
use crate::group::{generating_set, propagate, same_group, GroupRef, Homomorphism, Subgroup};
use crate::search::tuples::{index_tuples, is_orbit_minimum};
use crate::search::{automorphisms, enumerate_homomorphisms, Catalog, SearchError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("a marked group needs at least one mark")]
    NoMarks,
    #[error("mark {index} is not a subgroup of the marked group")]
    ForeignMark { index: usize },
    #[error("the marks generate a subgroup of order {generated}, not the whole group of order {order}")]
    MarksDoNotGenerate { generated: usize, order: usize },
    #[error("components do not fit together: {0}")]
    Mismatch(String),
    #[error("invalid embedding problem: {}", list(.0))]
    InvalidProblem(Vec<Violation>),
    #[error(transparent)]
    Search(#[from] SearchError),
}

fn list(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// A finite group with an ordered list of generating subgroups. Marks may
/// repeat.
#[derive(Debug, Clone)]
pub struct MarkedGroup {
    group: GroupRef,
    marks: Vec<Subgroup>,
}

impl MarkedGroup {
    pub fn new(group: GroupRef, marks: Vec<Subgroup>) -> Result<Self, EmbedError> {
        if marks.is_empty() {
            return Err(EmbedError::NoMarks);
        }
        if let Some(index) = marks.iter().position(|m| !same_group(m.parent(), &group)) {
            return Err(EmbedError::ForeignMark { index });
        }
        let generated = span(&group, &marks).order();
        if generated != group.order() {
            return Err(EmbedError::MarksDoNotGenerate {
                generated,
                order: group.order(),
            });
        }
        Ok(MarkedGroup { group, marks })
    }

    /// Marks given as element lists; each list is closed up to the subgroup it
    /// generates.
    pub fn from_generators(group: GroupRef, marks: &[Vec<usize>]) -> Result<Self, EmbedError> {
        for m in marks {
            for &x in m {
                group
                    .check_element(x)
                    .map_err(|e| EmbedError::Mismatch(e.to_string()))?;
            }
        }
        let marks = marks.iter().map(|m| Subgroup::generated(&group, m)).collect();
        Self::new(group, marks)
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn marks(&self) -> &[Subgroup] {
        &self.marks
    }

    pub fn len(&self) -> usize {
        self.marks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

fn span(g: &GroupRef, marks: &[Subgroup]) -> Subgroup {
    let seed: Vec<usize> = marks.iter().flat_map(|m| m.elements().iter().copied()).collect();
    Subgroup::generated(g, &seed)
}

/// `(φ: G → A, ψ: B → A, B₁, …, Bₙ)` over the marked group `G`.
#[derive(Debug, Clone)]
pub struct EmbeddingProblem {
    source: MarkedGroup,
    phi: Homomorphism,
    psi: Homomorphism,
    marks_b: Vec<Subgroup>,
}

impl EmbeddingProblem {
    /// Checks only that the pieces refer to the same groups; the defining
    /// conditions are left to [`validate_problem`].
    pub fn new(
        source: MarkedGroup,
        phi: Homomorphism,
        psi: Homomorphism,
        marks_b: Vec<Subgroup>,
    ) -> Result<Self, EmbedError> {
        if !same_group(phi.domain(), source.group()) {
            return Err(EmbedError::Mismatch("phi is not defined on the marked group".into()));
        }
        if !same_group(phi.codomain(), psi.codomain()) {
            return Err(EmbedError::Mismatch("phi and psi have different codomains".into()));
        }
        if let Some(i) = marks_b.iter().position(|m| !same_group(m.parent(), psi.domain())) {
            return Err(EmbedError::Mismatch(format!(
                "mark {i} of B is not a subgroup of the domain of psi"
            )));
        }
        Ok(EmbeddingProblem {
            source,
            phi,
            psi,
            marks_b,
        })
    }

    pub fn source(&self) -> &MarkedGroup {
        &self.source
    }

    pub fn phi(&self) -> &Homomorphism {
        &self.phi
    }

    pub fn psi(&self) -> &Homomorphism {
        &self.psi
    }

    pub fn marks_b(&self) -> &[Subgroup] {
        &self.marks_b
    }

    pub fn a(&self) -> &GroupRef {
        self.phi.codomain()
    }

    pub fn b(&self) -> &GroupRef {
        self.psi.domain()
    }
}

/// One failed defining condition, with a witness element where there is one.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("phi is not onto: element {missing} of A is missed")]
    PhiNotEpi { missing: usize },
    #[error("psi is not onto: element {missing} of A is missed")]
    PsiNotEpi { missing: usize },
    #[error("the marks of B do not generate B: element {missing} is missed")]
    MarksDoNotGenerate { missing: usize },
    #[error("{source_marks} marks on G but {target_marks} on B")]
    MarkCountMismatch { source_marks: usize, target_marks: usize },
    #[error(
        "psi on mark {index} is not isomorphic onto phi(G{index}): element {witness} of B{index} is in the kernel"
    )]
    MarkNotInjective { index: usize, witness: usize },
    #[error("psi on mark {index} is not isomorphic onto phi(G{index}): element {witness} of A lies in only one of the two images")]
    MarkImageMismatch { index: usize, witness: usize },
}

/// Every violated condition; empty means the problem is valid.
pub fn validate_problem(ep: &EmbeddingProblem) -> Vec<Violation> {
    let mut out = Vec::new();
    let (a, b) = (ep.a(), ep.b());
    if let Some(missing) = first_missed(ep.phi.image().elements(), a.order()) {
        out.push(Violation::PhiNotEpi { missing });
    }
    if let Some(missing) = first_missed(ep.psi.image().elements(), a.order()) {
        out.push(Violation::PsiNotEpi { missing });
    }
    if let Some(missing) = first_missed(span(b, &ep.marks_b).elements(), b.order()) {
        out.push(Violation::MarksDoNotGenerate { missing });
    }
    let n = ep.source.len();
    if n != ep.marks_b.len() {
        out.push(Violation::MarkCountMismatch {
            source_marks: n,
            target_marks: ep.marks_b.len(),
        });
    }
    for (index, (gi, bi)) in ep.source.marks().iter().zip(&ep.marks_b).enumerate() {
        let e = a.identity();
        if let Some(&witness) = bi
            .elements()
            .iter()
            .find(|&&x| x != b.identity() && ep.psi.apply(x) == e)
        {
            out.push(Violation::MarkNotInjective { index, witness });
        }
        let lhs = ep.psi.image_of(bi);
        let rhs = ep.phi.image_of(gi);
        let differs = a.elements().find(|&x| lhs.contains(x) != rhs.contains(x));
        if let Some(witness) = differs {
            out.push(Violation::MarkImageMismatch { index, witness });
        }
    }
    out
}

fn first_missed(sorted: &[usize], n: usize) -> Option<usize> {
    (0..n).find(|x| sorted.binary_search(x).is_err())
}

/// An epimorphism `γ: G → B` with `ψ∘γ = φ` and `γ(Gᵢ) = Bᵢ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub gamma: Homomorphism,
}

impl Solution {
    /// Checks the three defining conditions pointwise.
    pub fn verify(&self, ep: &EmbeddingProblem) -> bool {
        let g = &self.gamma;
        if !same_group(g.domain(), ep.source.group()) || !same_group(g.codomain(), ep.b()) {
            return false;
        }
        g.verify()
            && g.is_epi()
            && g.domain()
                .elements()
                .all(|x| ep.psi.apply(g.apply(x)) == ep.phi.apply(x))
            && ep
                .source
                .marks()
                .iter()
                .zip(&ep.marks_b)
                .all(|(gi, bi)| g.image_of(gi) == *bi)
    }
}

/// Why a valid problem has no solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// `|B|` does not divide `|G|`, so no epimorphism exists at all.
    OrderObstruction { g: usize, b: usize },
    /// The forced values `(ψ|Bᵢ)⁻¹∘φ|Gᵢ` do not fit into one homomorphism:
    /// `element` of `G` would need both images.
    Inconsistent {
        element: usize,
        first: usize,
        second: usize,
    },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::OrderObstruction { g, b } => write!(f, "|B| = {b} does not divide |G| = {g}"),
            Obstruction::Inconsistent { element, first, second } => {
                write!(f, "element {element} of G is forced to both {first} and {second}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved(Solution),
    Unsolvable(Obstruction),
}

impl SolveOutcome {
    pub fn solution(&self) -> Option<&Solution> {
        match self {
            SolveOutcome::Solved(s) => Some(s),
            SolveOutcome::Unsolvable(_) => None,
        }
    }
}

/// Solves a valid problem.
///
/// On each mark the solution is forced to be `(ψ|Bᵢ)⁻¹∘φ|Gᵢ`, so at most one
/// solution exists; the forced values are spread over `G` along its Cayley
/// graph and any clash proves there is none. A consistent extension is
/// automatically onto `B` and lifts `φ`, since both hold on generators.
pub fn solve(ep: &EmbeddingProblem) -> Result<SolveOutcome, EmbedError> {
    let violations = validate_problem(ep);
    if !violations.is_empty() {
        return Err(EmbedError::InvalidProblem(violations));
    }
    let (g, b) = (ep.source.group(), ep.b());
    if g.order() % b.order() != 0 {
        return Ok(SolveOutcome::Unsolvable(Obstruction::OrderObstruction {
            g: g.order(),
            b: b.order(),
        }));
    }
    let mut forced = Vec::new();
    for (gi, bi) in ep.source.marks().iter().zip(&ep.marks_b) {
        let (sub, incl) = gi.to_group();
        for local in generating_set(&sub) {
            let x = incl.apply(local);
            let target = ep.phi.apply(x);
            let y = *bi
                .elements()
                .iter()
                .find(|&&y| ep.psi.apply(y) == target)
                .expect("validated: psi maps the mark onto phi of the mark");
            forced.push((x, y));
        }
    }
    match propagate(g, b, &forced) {
        Err(c) => Ok(SolveOutcome::Unsolvable(Obstruction::Inconsistent {
            element: c.element,
            first: c.first,
            second: c.second,
        })),
        Ok(map) => {
            let gamma = Homomorphism::new_unchecked(g.clone(), b.clone(), map);
            let sol = Solution { gamma };
            debug_assert!(sol.verify(ep));
            Ok(SolveOutcome::Solved(sol))
        }
    }
}

/// A homomorphism `η: G → H` restricting to `etas[i]` on mark `i`, if one
/// exists. `etas[i]` is defined on the mark as a group in its own right, as
/// produced by [`Subgroup::to_group`].
pub fn extend_homomorphisms(m: &MarkedGroup, etas: &[Homomorphism]) -> Result<Option<Homomorphism>, EmbedError> {
    if etas.len() != m.len() {
        return Err(EmbedError::Mismatch(format!(
            "{} maps for {} marks",
            etas.len(),
            m.len()
        )));
    }
    let h = etas[0].codomain();
    for (i, (eta, mark)) in etas.iter().zip(m.marks()).enumerate() {
        if !same_group(eta.codomain(), h) {
            return Err(EmbedError::Mismatch(format!("map {i} has a different codomain")));
        }
        if eta.domain().order() != mark.order() || **eta.domain() != *mark.to_group().0 {
            return Err(EmbedError::Mismatch(format!("map {i} is not defined on mark {i}")));
        }
    }
    let plan = ExtensionPlan::new(m);
    let images: Vec<&[usize]> = etas.iter().map(|e| e.map()).collect();
    Ok(plan
        .extend(h, &images)
        .map(|map| Homomorphism::new_unchecked(m.group().clone(), h.clone(), map)))
}

/// Generators of each mark as (local index, element of `G`).
struct ExtensionPlan<'a> {
    g: &'a GroupRef,
    gens: Vec<Vec<(usize, usize)>>,
}

impl<'a> ExtensionPlan<'a> {
    fn new(m: &'a MarkedGroup) -> Self {
        let gens = m
            .marks()
            .iter()
            .map(|mark| {
                let (sub, incl) = mark.to_group();
                generating_set(&sub).into_iter().map(|l| (l, incl.apply(l))).collect()
            })
            .collect();
        ExtensionPlan { g: m.group(), gens }
    }

    fn extend(&self, h: &GroupRef, images: &[&[usize]]) -> Option<Vec<usize>> {
        let pairs: Vec<(usize, usize)> = self
            .gens
            .iter()
            .zip(images)
            .flat_map(|(gens, img)| gens.iter().map(move |&(l, x)| (x, img[l])))
            .collect();
        propagate(self.g, h, &pairs).ok()
    }
}

/// A tuple of maps on the marks that has no common extension.
#[derive(Debug, Clone)]
pub struct ExtensionFailure {
    /// Position of the target group in the catalog.
    pub group_index: usize,
    pub target: GroupRef,
    pub etas: Vec<Homomorphism>,
}

#[derive(Debug, Clone)]
pub struct ExtensionReport {
    pub bound: usize,
    /// Tuples examined, one per orbit under `Aut(H)`.
    pub tuples_checked: usize,
    /// In catalog order, then lexicographic order of the tuple.
    pub failures: Vec<ExtensionFailure>,
}

impl ExtensionReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every catalog group `H` and every tuple `ηᵢ: Gᵢ → H`, decides whether
/// the tuple extends to `G`.
///
/// Tuples are taken up to simultaneous post-composition with `Aut(H)`, which
/// does not change whether an extension exists; only the lexicographically
/// least tuple of each orbit is examined.
pub fn check_extension_property(
    m: &MarkedGroup,
    cat: &Catalog,
    budget: &Budget,
) -> Result<ExtensionReport, EmbedError> {
    let plan = ExtensionPlan::new(m);
    let marks: Vec<GroupRef> = m.marks().iter().map(|s| s.to_group().0).collect();
    let mut tuples_checked = 0;
    let mut failures = Vec::new();
    for (group_index, h) in cat.iter().enumerate() {
        let homs: Vec<Vec<Homomorphism>> = marks
            .iter()
            .map(|gi| enumerate_homomorphisms(gi, h, budget))
            .collect::<Result<_, _>>()?;
        let auts = automorphisms(h, budget)?;
        let tuples = index_tuples(&homs);
        let results: Vec<(bool, bool)> = tuples
            .par_iter()
            .map(|t| {
                let images: Vec<&[usize]> = t.iter().zip(&homs).map(|(&k, hs)| hs[k].map()).collect();
                if !is_orbit_minimum(&images, &auts) {
                    return (false, true);
                }
                (true, plan.extend(h, &images).is_some())
            })
            .collect();
        for (t, (examined, ok)) in tuples.iter().zip(results) {
            if examined {
                tuples_checked += 1;
            }
            if !ok {
                failures.push(ExtensionFailure {
                    group_index,
                    target: h.clone(),
                    etas: t.iter().zip(&homs).map(|(&k, hs)| hs[k].clone()).collect(),
                });
            }
        }
    }
    Ok(ExtensionReport {
        bound: cat.bound(),
        tuples_checked,
        failures,
    })
}
