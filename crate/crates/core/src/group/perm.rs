use std::collections::HashMap;
use std::sync::Arc;

use super::{FiniteGroup, GroupError, GroupRef};

pub const DEFAULT_ORDER_CAP: usize = 20160;

/// The faithful action a permutation-built group comes with: `perms[g][i]` is
/// the image of point `i` under element `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationAction {
    pub degree: usize,
    pub perms: Vec<Vec<usize>>,
}

impl PermutationAction {
    /// Element index of a permutation, if it lies in the group.
    pub fn element_of(&self, perm: &[usize]) -> Option<usize> {
        self.perms.iter().position(|p| p == perm)
    }
}

/// Product of permutations read left to right: `i ↦ b[a[i]]`.
pub fn compose_perms(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&i| b[i]).collect()
}

/// Closes `generators` under composition and returns the group together with
/// its permutation action. Element 0 is the identity; the remaining elements
/// are numbered in breadth-first order of their first appearance as
/// `x·generator`.
pub fn build_from_permutations(
    degree: usize,
    generators: &[Vec<usize>],
    cap: usize,
) -> Result<(GroupRef, PermutationAction), GroupError> {
    for (index, g) in generators.iter().enumerate() {
        let mut seen = vec![false; degree];
        let ok = g.len() == degree && g.iter().all(|&i| i < degree && !std::mem::replace(&mut seen[i], true));
        if !ok {
            return Err(GroupError::NotABijection { index, degree });
        }
    }

    let identity: Vec<usize> = (0..degree).collect();
    let mut perms = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    // right[k][x] = index of x·generator_k
    let mut right: Vec<Vec<u32>> = vec![Vec::new(); generators.len()];
    // (parent, generator) with x = parent·generator, for the table fill below
    let mut parent: Vec<(usize, usize)> = vec![(0, usize::MAX)];

    let mut i = 0;
    while i < perms.len() {
        for (k, gen) in generators.iter().enumerate() {
            let y = compose_perms(&perms[i], gen);
            let j = match index.get(&y) {
                Some(&j) => j,
                None => {
                    let j = perms.len();
                    if j >= cap {
                        return Err(GroupError::OrderLimitExceeded { cap });
                    }
                    index.insert(y.clone(), j);
                    perms.push(y);
                    parent.push((i, k));
                    j
                }
            };
            right[k].push(j as u32);
        }
        i += 1;
    }

    let n = perms.len();
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        table[x * n] = x as u32;
    }
    // x·y = (x·parent(y))·gen, and parents precede children
    for y in 1..n {
        let (p, k) = parent[y];
        for x in 0..n {
            let xp = table[x * n + p] as usize;
            table[x * n + y] = right[k][xp];
        }
    }
    let group = FiniteGroup::from_flat_unchecked(n, table, None);
    Ok((Arc::new(group), PermutationAction { degree, perms }))
}
