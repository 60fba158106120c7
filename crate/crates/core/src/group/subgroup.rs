use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::{same_group, FiniteGroup, GroupError, GroupRef, Homomorphism};
use crate::arith::{is_power_of, p_part};

/// A subgroup, stored as the sorted list of its elements in the parent.
#[derive(Clone)]
pub struct Subgroup {
    parent: GroupRef,
    elements: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && same_group(&self.parent, &other.parent)
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

impl Subgroup {
    /// Checks closure and returns the subgroup with sorted elements.
    pub fn new(parent: &GroupRef, elements: &[usize]) -> Result<Self, GroupError> {
        for &e in elements {
            parent.check_element(e)?;
        }
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        if !set.contains(&parent.identity()) {
            return Err(GroupError::NotASubgroup("missing the identity".into()));
        }
        for &a in &set {
            if !set.contains(&parent.inv(a)) {
                return Err(GroupError::NotASubgroup(format!("not closed under inverse at {a}")));
            }
            for &b in &set {
                if !set.contains(&parent.mul(a, b)) {
                    return Err(GroupError::NotASubgroup(format!(
                        "not closed at product of {a} and {b}"
                    )));
                }
            }
        }
        let elements: Vec<usize> = set.into_iter().collect();
        debug_assert_eq!(parent.order() % elements.len(), 0);
        Ok(Subgroup {
            parent: parent.clone(),
            elements,
        })
    }

    pub(crate) fn from_sorted_unchecked(parent: &GroupRef, elements: Vec<usize>) -> Self {
        Subgroup {
            parent: parent.clone(),
            elements,
        }
    }

    /// Smallest subgroup containing `seed`.
    pub fn generated(parent: &GroupRef, seed: &[usize]) -> Self {
        Subgroup {
            parent: parent.clone(),
            elements: parent.closure(seed),
        }
    }

    pub fn trivial(parent: &GroupRef) -> Self {
        Self::generated(parent, &[])
    }

    pub fn whole(parent: &GroupRef) -> Self {
        Subgroup {
            parent: parent.clone(),
            elements: parent.elements().collect(),
        }
    }

    pub fn parent(&self) -> &GroupRef {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.parent.order()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    /// An element `a` with `S^a ≠ S`, if any.
    pub fn normality_witness(&self) -> Option<usize> {
        self.parent.elements().find(|&a| {
            self.elements
                .iter()
                .any(|&g| !self.contains(self.parent.conjugate(g, a)))
        })
    }

    pub fn is_normal(&self) -> bool {
        self.normality_witness().is_none()
    }

    /// `S^a = a⁻¹ S a`.
    pub fn conjugate(&self, a: usize) -> Subgroup {
        let mut elements: Vec<usize> = self.elements.iter().map(|&g| self.parent.conjugate(g, a)).collect();
        elements.sort_unstable();
        Subgroup {
            parent: self.parent.clone(),
            elements,
        }
    }

    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let seed: Vec<usize> = self.elements.iter().chain(&other.elements).copied().collect();
        Self::generated(&self.parent, &seed)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let elements = self.elements.iter().copied().filter(|&g| other.contains(g)).collect();
        Subgroup {
            parent: self.parent.clone(),
            elements,
        }
    }

    pub fn is_p_group(&self, p: usize) -> bool {
        is_power_of(self.order(), p)
    }

    /// The subgroup as a group in its own right, with element `i` standing
    /// for `elements()[i]`, together with the inclusion map.
    pub fn to_group(&self) -> (GroupRef, Homomorphism) {
        let n = self.elements.len();
        let pos = |g: usize| self.elements.binary_search(&g).expect("closed") as u32;
        let mut table = Vec::with_capacity(n * n);
        for &a in &self.elements {
            for &b in &self.elements {
                table.push(pos(self.parent.mul(a, b)));
            }
        }
        let group: GroupRef = Arc::new(FiniteGroup::from_flat_unchecked(n, table, None));
        let incl = Homomorphism::new_unchecked(group.clone(), self.parent.clone(), self.elements.clone());
        (group, incl)
    }
}

/// `G/N` with its canonical projection. Cosets are numbered by first
/// appearance scanning the elements of `G` in index order.
pub fn quotient(g: &GroupRef, n: &Subgroup) -> Result<(GroupRef, Homomorphism), GroupError> {
    if !same_group(g, n.parent()) {
        return Err(GroupError::DomainMismatch);
    }
    if let Some(witness) = n.normality_witness() {
        return Err(GroupError::NotNormal { witness });
    }
    const UNSET: usize = usize::MAX;
    let mut coset = vec![UNSET; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset[x] == UNSET {
            let c = reps.len();
            reps.push(x);
            for &k in n.elements() {
                coset[g.mul(x, k)] = c;
            }
        }
    }
    let q = reps.len();
    let mut table = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            table.push(coset[g.mul(a, b)] as u32);
        }
    }
    let qg: GroupRef = Arc::new(FiniteGroup::from_flat_unchecked(q, table, None));
    let proj = Homomorphism::new_unchecked(g.clone(), qg.clone(), coset);
    Ok((qg, proj))
}

/// All Sylow `p`-subgroups of `g`, sorted by element list. When `p` does not
/// divide `|g|` the trivial subgroup is the unique one.
pub fn sylow_subgroups(g: &GroupRef, p: usize) -> Vec<Subgroup> {
    assert!(p >= 2, "p must be a prime");
    let target = p_part(g.order(), p);
    let mut current = Subgroup::trivial(g);
    while current.order() < target {
        // some x normalising P with ⟨P, x⟩ a larger p-group exists while P is not Sylow
        let next = g
            .elements()
            .filter(|&x| !current.contains(x) && is_power_of(g.element_order(x), p))
            .filter(|&x| current.conjugate(x) == current)
            .map(|x| Subgroup::generated(g, &[current.elements(), &[x]].concat()))
            .find(|s| s.is_p_group(p))
            .expect("a p-subgroup below the Sylow order is properly contained in a larger one");
        current = next;
    }
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    for a in g.elements() {
        all.insert(current.conjugate(a).elements);
    }
    all.into_iter()
        .map(|elements| Subgroup::from_sorted_unchecked(g, elements))
        .collect()
}

/// Every subgroup of `g`, sorted by (order, element list).
///
/// Built by repeatedly joining cyclic subgroups onto known ones; every
/// subgroup is the join of its cyclic subgroups, so the closure is complete.
pub fn all_subgroups(g: &GroupRef) -> Vec<Subgroup> {
    let cyclic: BTreeSet<Vec<usize>> = g.elements().map(|x| g.closure(&[x])).collect();
    let cyclic: Vec<Vec<usize>> = cyclic.into_iter().collect();
    let mut found: BTreeSet<Vec<usize>> = cyclic.iter().cloned().collect();
    let mut frontier: Vec<Vec<usize>> = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            let sub = Subgroup::from_sorted_unchecked(g, s.clone());
            for c in &cyclic {
                if c.iter().all(|&x| sub.contains(x)) {
                    continue;
                }
                let joined = g.closure(&[s.as_slice(), c.as_slice()].concat());
                if found.insert(joined.clone()) {
                    next.push(joined);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Subgroup> = found
        .into_iter()
        .map(|e| Subgroup::from_sorted_unchecked(g, e))
        .collect();
    out.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
    out
}

pub fn normal_subgroups(g: &GroupRef) -> Vec<Subgroup> {
    all_subgroups(g).into_iter().filter(Subgroup::is_normal).collect()
}
