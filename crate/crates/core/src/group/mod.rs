//! Finite groups as dense Cayley tables, with subgroups, quotients, Sylow
//! subgroups and homomorphisms.
//!
//! Conjugation is a right action throughout: `g^a = a⁻¹·g·a`, so that
//! `(g^a)^b = g^(ab)`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

mod backtrack;
mod hom;
mod iso;
mod perm;
mod subgroup;

pub(crate) use backtrack::{generating_set, propagate, HomSearch};
pub use hom::{compose, HomSummary, Homomorphism};
pub use iso::{are_isomorphic, canonical_form, relabel, CanonicalForm};
pub use perm::{build_from_permutations, compose_perms, PermutationAction, DEFAULT_ORDER_CAP};
pub use subgroup::{all_subgroups, normal_subgroups, quotient, sylow_subgroups, Subgroup};

pub type GroupRef = Arc<FiniteGroup>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a group: {reason} (witness {witness:?})")]
    NotAGroup { reason: String, witness: Vec<usize> },
    #[error("generator {index} is not a bijection of {degree} points")]
    NotABijection { index: usize, degree: usize },
    #[error("permutation closure exceeded the order cap of {cap}")]
    OrderLimitExceeded { cap: usize },
    #[error("subgroup is not normal: conjugation by element {witness} moves it")]
    NotNormal { witness: usize },
    #[error("domain/codomain mismatch")]
    DomainMismatch,
    #[error("not a homomorphism: {reason}")]
    NotAHomomorphism { reason: String },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("element index {index} out of range for a group of order {order}")]
    InvalidElement { index: usize, order: usize },
}

/// A finite group given by its full multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    label: Option<String>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            Some(l) => write!(f, "FiniteGroup({l}, order {})", self.order),
            None => write!(f, "FiniteGroup(order {})", self.order),
        }
    }
}

impl FiniteGroup {
    /// Validates a square multiplication table and builds the group.
    ///
    /// Checks run in the order: shape, entry range, associativity, identity,
    /// inverses. A failure carries the offending elements as its witness.
    pub fn from_table(table: &[Vec<usize>], label: Option<&str>) -> Result<GroupRef, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(not_a_group("empty table", vec![]));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(not_a_group(
                    &format!("row {i} has length {} instead of {n}", row.len()),
                    vec![i],
                ));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(not_a_group(&format!("entry {v} is not an element index"), vec![i, j]));
                }
                flat.push(v as u32);
            }
        }
        Self::from_flat(n, flat, label)
    }

    /// Same as [`FiniteGroup::from_table`] on a row-major flat table.
    pub fn from_flat(n: usize, flat: Vec<u32>, label: Option<&str>) -> Result<GroupRef, GroupError> {
        if n == 0 || flat.len() != n * n {
            return Err(not_a_group("table is not square", vec![]));
        }
        if let Some(i) = flat.iter().position(|&v| v as usize >= n) {
            return Err(not_a_group("entry is not an element index", vec![i / n, i % n]));
        }
        let m = |a: usize, b: usize| flat[a * n + b] as usize;
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(not_a_group("associativity fails", vec![a, b, c]));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or_else(|| not_a_group("no two-sided identity", vec![]))?;
        let mut inv = vec![0u32; n];
        for (g, slot) in inv.iter_mut().enumerate() {
            let h = (0..n)
                .find(|&h| m(g, h) == identity && m(h, g) == identity)
                .ok_or_else(|| not_a_group("element has no inverse", vec![g]))?;
            *slot = h as u32;
        }
        Ok(Arc::new(FiniteGroup {
            order: n,
            table: flat,
            inv,
            identity,
            label: label.map(str::to_owned),
        }))
    }

    /// Builds a group from a table already known to satisfy the axioms.
    pub(crate) fn from_flat_unchecked(n: usize, table: Vec<u32>, label: Option<String>) -> FiniteGroup {
        debug_assert_eq!(table.len(), n * n);
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] as usize == x))
            .expect("table has an identity");
        let mut inv = vec![0u32; n];
        for g in 0..n {
            let h = (0..n)
                .find(|&h| table[g * n + h] as usize == identity)
                .expect("table has inverses");
            inv[g] = h as u32;
        }
        FiniteGroup {
            order: n,
            table,
            inv,
            identity,
            label,
        }
    }

    pub fn trivial() -> GroupRef {
        Arc::new(Self::from_flat_unchecked(1, vec![0], Some("C1".into())))
    }

    /// Cyclic group of order `n` with element `i` standing for `g^i`.
    pub fn cyclic(n: usize) -> GroupRef {
        assert!(n >= 1);
        let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        Arc::new(Self::from_flat_unchecked(n, table, Some(format!("C{n}"))))
    }

    /// Direct product; element `(a, b)` has index `a * |right| + b`.
    pub fn direct_product(left: &FiniteGroup, right: &FiniteGroup) -> GroupRef {
        let (n1, n2) = (left.order, right.order);
        let n = n1 * n2;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let a = left.mul(x / n2, y / n2);
                let b = right.mul(x % n2, y % n2);
                table.push((a * n2 + b) as u32);
            }
        }
        let label = match (&left.label, &right.label) {
            (Some(l), Some(r)) => Some(format!("{l}x{r}")),
            _ => None,
        };
        Arc::new(Self::from_flat_unchecked(n, table, label))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(&self, label: impl Into<String>) -> GroupRef {
        let mut g = self.clone();
        g.label = Some(label.into());
        Arc::new(g)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn contains(&self, a: usize) -> bool {
        a < self.order
    }

    pub fn check_element(&self, a: usize) -> Result<(), GroupError> {
        if a < self.order {
            Ok(())
        } else {
            Err(GroupError::InvalidElement {
                index: a,
                order: self.order,
            })
        }
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        self.elements().map(|a| self.element_order(a)).collect()
    }

    /// Sorted multiset of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v = self.element_orders();
        v.sort_unstable();
        v
    }

    /// `g^a = a⁻¹·g·a`.
    pub fn conjugate(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(self.inv(a), g), a)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn flat_table(&self) -> &[u32] {
        &self.table
    }

    /// Right multiplication closure of `seed` starting from the identity.
    pub(crate) fn closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        let mut out = vec![self.identity];
        seen[self.identity] = true;
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &s in seed {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub(crate) fn generates(&self, seed: &[usize]) -> bool {
        self.closure(seed).len() == self.order
    }
}

/// True when both references denote the same table.
pub(crate) fn same_group(a: &GroupRef, b: &GroupRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn not_a_group(reason: &str, witness: Vec<usize>) -> GroupError {
    GroupError::NotAGroup {
        reason: reason.to_owned(),
        witness,
    }
}
