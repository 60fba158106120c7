use std::cmp::Ordering;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::backtrack::{generating_set, HomSearch};
use super::{FiniteGroup, GroupRef, Homomorphism};
use crate::budget::Budget;

/// An isomorphism `g → h` if one exists.
///
/// Backtracks over images of a small generating set of `g`, matching element
/// orders, after rejecting on order and element-order profile.
pub fn are_isomorphic(g: &GroupRef, h: &GroupRef) -> Option<Homomorphism> {
    if g.order() != h.order() || g.order_profile() != h.order_profile() {
        return None;
    }
    let search = HomSearch::new(g, h).injective();
    let mut found = None;
    search
        .run(&Budget::unlimited(), |map| {
            found = Some(map);
            ControlFlow::Break(())
        })
        .expect("unlimited budget");
    found.map(|map| Homomorphism::new_unchecked(g.clone(), h.clone(), map))
}

/// Canonical relabeling of a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Row-major table in canonical labels.
    pub table: Vec<u32>,
    /// `relabeling[old] = new`.
    pub relabeling: Vec<usize>,
}

/// The lexicographically smallest table among all breadth-first labelings
/// driven by ordered generating tuples of minimal size.
///
/// The set of such labelings is carried onto itself by isomorphisms, so two
/// groups are isomorphic iff their canonical tables agree. The generating-set
/// size is exact up to order 24, which covers the generated catalog.
pub fn canonical_form(g: &FiniteGroup) -> CanonicalForm {
    let n = g.order();
    let d = generating_set(g).len();
    let pool: Vec<usize> = g.elements().filter(|&x| x != g.identity()).collect();
    let mut best: Option<CanonicalForm> = None;
    let mut tuple = vec![0usize; d];
    loop {
        let gens: Vec<usize> = tuple.iter().map(|&i| pool[i]).collect();
        if let Some(new_of_old) = bfs_labeling(g, &gens) {
            let mut old_of_new = vec![0; n];
            for (old, &new) in new_of_old.iter().enumerate() {
                old_of_new[new] = old;
            }
            let better = match &best {
                None => true,
                Some(b) => compare_relabeled(g, &new_of_old, &old_of_new, &b.table) == Ordering::Less,
            };
            if better {
                let table = relabeled_table(g, &new_of_old, &old_of_new);
                best = Some(CanonicalForm {
                    table,
                    relabeling: new_of_old,
                });
            }
        }
        // odometer over pool^d
        let mut k = d;
        loop {
            if k == 0 {
                return best.unwrap_or_else(|| CanonicalForm {
                    table: vec![0],
                    relabeling: vec![0],
                });
            }
            k -= 1;
            tuple[k] += 1;
            if tuple[k] < pool.len() {
                break;
            }
            tuple[k] = 0;
        }
    }
}

/// Copy of `g` with element `old` renamed to `new_of_old[old]`.
pub fn relabel(g: &FiniteGroup, new_of_old: &[usize]) -> GroupRef {
    let n = g.order();
    let mut old_of_new = vec![0; n];
    for (old, &new) in new_of_old.iter().enumerate() {
        old_of_new[new] = old;
    }
    let table = relabeled_table(g, new_of_old, &old_of_new);
    Arc::new(FiniteGroup::from_flat_unchecked(n, table, g.label().map(str::to_owned)))
}

fn bfs_labeling(g: &FiniteGroup, gens: &[usize]) -> Option<Vec<usize>> {
    let n = g.order();
    let mut label = vec![usize::MAX; n];
    let mut order = vec![g.identity()];
    label[g.identity()] = 0;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for &s in gens {
            let y = g.mul(x, s);
            if label[y] == usize::MAX {
                label[y] = order.len();
                order.push(y);
            }
        }
        i += 1;
    }
    (order.len() == n).then_some(label)
}

fn relabeled_table(g: &FiniteGroup, new_of_old: &[usize], old_of_new: &[usize]) -> Vec<u32> {
    let n = g.order();
    let mut t = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            t.push(new_of_old[g.mul(old_of_new[i], old_of_new[j])] as u32);
        }
    }
    t
}

fn compare_relabeled(g: &FiniteGroup, new_of_old: &[usize], old_of_new: &[usize], other: &[u32]) -> Ordering {
    let n = g.order();
    for i in 0..n {
        for j in 0..n {
            let v = new_of_old[g.mul(old_of_new[i], old_of_new[j])] as u32;
            match v.cmp(&other[i * n + j]) {
                Ordering::Equal => {}
                o => return o,
            }
        }
    }
    Ordering::Equal
}
