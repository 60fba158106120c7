//! Shared machinery for building homomorphisms from generator images.
//!
//! A map defined on generators extends to a homomorphism on the subgroup they
//! generate iff the breadth-first extension along the Cayley graph never
//! assigns two different images to the same element; checking every edge
//! `x → x·g` is enough because every element is a positive word in the
//! generators.

use std::cmp::Reverse;
use std::ops::ControlFlow;

use super::FiniteGroup;
use crate::budget::{Budget, BudgetExceeded};

pub(crate) const UNSET: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Conflict {
    pub element: usize,
    pub first: usize,
    pub second: usize,
}

/// Extends `assignments` (domain element, image) along the Cayley graph of
/// the subgroup they generate. Unreached elements stay [`UNSET`].
pub(crate) fn propagate(
    domain: &FiniteGroup,
    codomain: &FiniteGroup,
    assignments: &[(usize, usize)],
) -> Result<Vec<usize>, Conflict> {
    let mut gens: Vec<(usize, usize)> = Vec::with_capacity(assignments.len());
    for &(x, y) in assignments {
        match gens.iter().find(|&&(g, _)| g == x) {
            Some(&(_, prev)) if prev != y => {
                return Err(Conflict {
                    element: x,
                    first: prev,
                    second: y,
                })
            }
            Some(_) => {}
            None => gens.push((x, y)),
        }
    }
    let mut map = vec![UNSET; domain.order()];
    map[domain.identity()] = codomain.identity();
    let mut queue = vec![domain.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        let fx = map[x];
        for &(g, img) in &gens {
            let y = domain.mul(x, g);
            let v = codomain.mul(fx, img);
            if map[y] == UNSET {
                map[y] = v;
                queue.push(y);
            } else if map[y] != v {
                return Err(Conflict {
                    element: y,
                    first: map[y],
                    second: v,
                });
            }
        }
        i += 1;
    }
    Ok(map)
}

/// A small generating set, deterministic for a given table. Exact minimum
/// size for cyclic groups, for two generators up to order 128 and three up to
/// order 24; a greedy irredundant set beyond that.
pub(crate) fn generating_set(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order();
    if n == 1 {
        return Vec::new();
    }
    let orders = g.element_orders();
    let mut cands: Vec<usize> = g.elements().filter(|&x| x != g.identity()).collect();
    cands.sort_by_key(|&x| (Reverse(orders[x]), x));
    if let Some(&x) = cands.iter().find(|&&x| orders[x] == n) {
        return vec![x];
    }
    let c = cands.len();
    if n <= 128 {
        for i in 0..c {
            for j in i + 1..c {
                if g.generates(&[cands[i], cands[j]]) {
                    return vec![cands[i], cands[j]];
                }
            }
        }
    }
    if n <= 24 {
        for i in 0..c {
            for j in i + 1..c {
                for k in j + 1..c {
                    if g.generates(&[cands[i], cands[j], cands[k]]) {
                        return vec![cands[i], cands[j], cands[k]];
                    }
                }
            }
        }
    }
    let mut gens = Vec::new();
    let mut span = vec![g.identity()];
    for &x in &cands {
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = g.closure(&gens);
            if span.len() == n {
                break;
            }
        }
    }
    let mut i = gens.len();
    while i > 0 {
        i -= 1;
        let mut rest = gens.clone();
        rest.remove(i);
        if g.generates(&rest) {
            gens = rest;
        }
    }
    gens
}

/// Backtracking over generator images with consistency pruning on every
/// prefix.
pub(crate) struct HomSearch<'a> {
    domain: &'a FiniteGroup,
    codomain: &'a FiniteGroup,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    injective: bool,
}

impl<'a> HomSearch<'a> {
    /// Images of each generator range over codomain elements whose order
    /// divides the generator's order.
    pub fn new(domain: &'a FiniteGroup, codomain: &'a FiniteGroup) -> Self {
        let gens = generating_set(domain);
        let cod_orders = codomain.element_orders();
        let candidates = gens
            .iter()
            .map(|&g| {
                let k = domain.element_order(g);
                codomain
                    .elements()
                    .filter(|&h| k.is_multiple_of(cod_orders[h]))
                    .collect()
            })
            .collect();
        HomSearch {
            domain,
            codomain,
            gens,
            candidates,
            injective: false,
        }
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    /// Narrows the candidate list of generator `i`.
    pub fn filter_candidates(mut self, mut keep: impl FnMut(usize, usize) -> bool) -> Self {
        for (i, cands) in self.candidates.iter_mut().enumerate() {
            cands.retain(|&h| keep(i, h));
        }
        self
    }

    /// Only injective maps; images must then have exactly the generator's order.
    pub fn injective(mut self) -> Self {
        let cod_orders = self.codomain.element_orders();
        for (i, cands) in self.candidates.iter_mut().enumerate() {
            let k = self.domain.element_order(self.gens[i]);
            cands.retain(|&h| cod_orders[h] == k);
        }
        self.injective = true;
        self
    }

    /// Calls `visit` with the full map of every homomorphism found, in
    /// lexicographic order of the generator images.
    pub fn run(
        &self,
        budget: &Budget,
        mut visit: impl FnMut(Vec<usize>) -> ControlFlow<()>,
    ) -> Result<(), BudgetExceeded> {
        let mut images = Vec::with_capacity(self.gens.len());
        self.descend(budget, &mut images, &mut visit).map(|_| ())
    }

    fn descend(
        &self,
        budget: &Budget,
        images: &mut Vec<usize>,
        visit: &mut impl FnMut(Vec<usize>) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>, BudgetExceeded> {
        let depth = images.len();
        if depth == self.gens.len() {
            let pairs: Vec<(usize, usize)> = self.gens.iter().copied().zip(images.iter().copied()).collect();
            let map = propagate(self.domain, self.codomain, &pairs).expect("checked on the last prefix");
            debug_assert!(map.iter().all(|&v| v != UNSET));
            return Ok(visit(map));
        }
        for &c in &self.candidates[depth] {
            budget.tick()?;
            images.push(c);
            let pairs: Vec<(usize, usize)> = self.gens.iter().copied().zip(images.iter().copied()).collect();
            let ok = match propagate(self.domain, self.codomain, &pairs) {
                Err(_) => false,
                Ok(map) if self.injective => map.iter().filter(|&&v| v == self.codomain.identity()).count() == 1,
                Ok(_) => true,
            };
            if ok {
                if let ControlFlow::Break(()) = self.descend(budget, images, visit)? {
                    return Ok(ControlFlow::Break(()));
                }
            }
            images.pop();
        }
        Ok(ControlFlow::Continue(()))
    }
}
