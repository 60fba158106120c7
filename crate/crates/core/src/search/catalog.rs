//! Catalog of all groups up to a given order.
//!
//! Generation fills Cayley tables cell by cell. Element labels are handed out
//! in order of first appearance along a fixed scan of the cells among already
//! labeled elements, and a fresh label is forced once the labeled elements
//! close up into a subgroup. Every group admits such a labeling, so the search
//! reaches every isomorphism class while visiting only a small number of
//! labeled tables per class. Associativity is propagated eagerly: once three
//! of the four products in `(pq)r = p(qr)` are known, the fourth is forced.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::SearchError;
use crate::arith::is_prime;
use crate::budget::Budget;
use crate::group::{are_isomorphic, canonical_form, relabel, FiniteGroup, GroupRef};

/// Order, order profile, canonical table.
type SortKey = (usize, Vec<usize>, Vec<u32>);

/// Largest order the built-in generator handles.
pub const MAX_GENERATED_ORDER: usize = 12;

/// One representative per isomorphism class, in canonical order: by order,
/// then element-order profile, then canonical table.
#[derive(Debug, Clone)]
pub struct Catalog {
    bound: usize,
    groups: Vec<GroupRef>,
}

impl Catalog {
    /// Builds a catalog from user-supplied groups. Entries must be pairwise
    /// non-isomorphic and of order at most `bound`; completeness is the
    /// supplier's responsibility.
    pub fn from_groups(bound: usize, groups: Vec<GroupRef>) -> Result<Self, SearchError> {
        if let Some(g) = groups.iter().find(|g| g.order() > bound) {
            return Err(SearchError::InvalidCatalog(format!(
                "group of order {} exceeds the bound {bound}",
                g.order()
            )));
        }
        for (i, g) in groups.iter().enumerate() {
            for h in &groups[..i] {
                if are_isomorphic(g, h).is_some() {
                    return Err(SearchError::InvalidCatalog(format!(
                        "entries {:?} and {:?} are isomorphic",
                        h.label(),
                        g.label()
                    )));
                }
            }
        }
        Ok(Self::canonicalized(bound, groups))
    }

    fn canonicalized(bound: usize, groups: Vec<GroupRef>) -> Self {
        let mut keyed: Vec<(SortKey, GroupRef)> = groups
            .into_iter()
            .map(|g| {
                let cf = canonical_form(&g);
                let relabeled = relabel(&g, &cf.relabeling);
                ((g.order(), g.order_profile(), cf.table), relabeled)
            })
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let mut per_order: BTreeMap<usize, usize> = BTreeMap::new();
        let groups = keyed
            .into_iter()
            .map(|(_, g)| {
                let k = per_order.entry(g.order()).or_default();
                *k += 1;
                match g.label() {
                    Some(_) => g,
                    None => g.with_label(describe(&g, *k)),
                }
            })
            .collect();
        Catalog { bound, groups }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn groups(&self) -> &[GroupRef] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroupRef> {
        self.groups.iter()
    }

    /// `counts[k - 1]` = number of entries of order `k`.
    pub fn counts_by_order(&self) -> Vec<usize> {
        let mut counts = vec![0; self.bound];
        for g in &self.groups {
            counts[g.order() - 1] += 1;
        }
        counts
    }

    /// The sub-catalog of entries of order at most `bound`.
    pub fn restricted(&self, bound: usize) -> Catalog {
        Catalog {
            bound: bound.min(self.bound),
            groups: self.groups.iter().filter(|g| g.order() <= bound).cloned().collect(),
        }
    }
}

/// All groups of order at most `bound`, up to isomorphism.
pub fn build_catalog(bound: usize) -> Result<Catalog, SearchError> {
    if bound == 0 || bound > MAX_GENERATED_ORDER {
        return Err(SearchError::Unsupported {
            requested: bound,
            max: MAX_GENERATED_ORDER,
        });
    }
    let groups: Vec<GroupRef> = (1..=bound)
        .into_par_iter()
        .map(groups_of_order)
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(Catalog::canonicalized(bound, groups))
}

fn groups_of_order(n: usize) -> Vec<GroupRef> {
    let mut tables = Vec::new();
    let mut filler = Filler::new(n);
    filler
        .search(&mut tables, &Budget::unlimited())
        .expect("unlimited budget");
    let mut reps: Vec<GroupRef> = Vec::new();
    for t in tables {
        let flat = t.into_iter().map(u32::from).collect();
        let g = FiniteGroup::from_flat(n, flat, None).expect("completed tables satisfy the axioms");
        if reps.iter().all(|r| are_isomorphic(r, &g).is_none()) {
            reps.push(g);
        }
    }
    reps
}

const UNKNOWN: u8 = u8::MAX;

struct Filler {
    n: usize,
    labeled: usize,
    table: Vec<u8>,
    /// `pos[row * n + value]` = column holding `value` in `row`
    pos: Vec<u8>,
    row_used: Vec<u32>,
    col_used: Vec<u32>,
    trail: Vec<usize>,
    queue: Vec<usize>,
}

impl Filler {
    fn new(n: usize) -> Self {
        assert!(n <= 32);
        let mut f = Filler {
            n,
            labeled: 1,
            table: vec![UNKNOWN; n * n],
            pos: vec![UNKNOWN; n * n],
            row_used: vec![0; n],
            col_used: vec![0; n],
            trail: Vec::new(),
            queue: Vec::new(),
        };
        let ok = f.set(0, 0, 0);
        debug_assert!(ok);
        f.queue.clear();
        f
    }

    #[inline]
    fn get(&self, x: usize, y: usize) -> Option<usize> {
        let v = self.table[x * self.n + y];
        (v != UNKNOWN).then_some(v as usize)
    }

    #[inline]
    fn col_of(&self, row: usize, value: usize) -> Option<usize> {
        let c = self.pos[row * self.n + value];
        (c != UNKNOWN).then_some(c as usize)
    }

    fn set(&mut self, x: usize, y: usize, v: usize) -> bool {
        let c = x * self.n + y;
        if self.table[c] != UNKNOWN {
            return self.table[c] as usize == v;
        }
        let bit = 1u32 << v;
        if self.row_used[x] & bit != 0 || self.col_used[y] & bit != 0 {
            return false;
        }
        self.table[c] = v as u8;
        self.pos[x * self.n + v] = y as u8;
        self.row_used[x] |= bit;
        self.col_used[y] |= bit;
        self.trail.push(c);
        self.queue.push(c);
        true
    }

    fn undo_to(&mut self, mark: usize) {
        self.queue.clear();
        while self.trail.len() > mark {
            let c = self.trail.pop().unwrap();
            let (x, y) = (c / self.n, c % self.n);
            let v = self.table[c] as usize;
            self.table[c] = UNKNOWN;
            self.pos[x * self.n + v] = UNKNOWN;
            self.row_used[x] &= !(1u32 << v);
            self.col_used[y] &= !(1u32 << v);
        }
    }

    fn equate(&mut self, a: (usize, usize), b: (usize, usize)) -> bool {
        match (self.get(a.0, a.1), self.get(b.0, b.1)) {
            (Some(u), Some(v)) => u == v,
            (Some(u), None) => self.set(b.0, b.1, u),
            (None, Some(v)) => self.set(a.0, a.1, v),
            (None, None) => true,
        }
    }

    fn propagate(&mut self) -> bool {
        while let Some(c) = self.queue.pop() {
            let (x, y) = (c / self.n, c % self.n);
            let z = self.table[c] as usize;
            let l = self.labeled;
            // x·y = z read as p·q: (z)·r = x·(y·r)
            for r in 0..l {
                if let Some(w) = self.get(y, r) {
                    if !self.equate((z, r), (x, w)) {
                        return false;
                    }
                }
            }
            // read as q·r: (p·x)·y = p·z
            for p in 0..l {
                if let Some(a) = self.get(p, x) {
                    if !self.equate((a, y), (p, z)) {
                        return false;
                    }
                }
            }
            // read as (p·q)·r with p·q = x: p·(q·y) = z
            for p in 0..l {
                if let Some(q) = self.col_of(p, x) {
                    if let Some(b) = self.get(q, y) {
                        if !self.set(p, b, z) {
                            return false;
                        }
                    }
                }
            }
            // read as p·(q·r) with q·r = y: (x·q)·r = z
            for q in 0..l {
                if let Some(r) = self.col_of(q, y) {
                    if let Some(a) = self.get(x, q) {
                        if !self.set(a, r, z) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn introduce_label(&mut self) -> bool {
        let k = self.labeled;
        self.labeled += 1;
        self.set(0, k, k) && self.set(k, 0, k) && self.propagate()
    }

    /// First unknown cell among labeled elements, scanning by
    /// `(max(x, y), x, y)` so that cells of a new label come last.
    fn first_unknown(&self) -> Option<(usize, usize)> {
        for m in 0..self.labeled {
            for x in 0..m {
                if self.get(x, m).is_none() {
                    return Some((x, m));
                }
            }
            for y in 0..=m {
                if self.get(m, y).is_none() {
                    return Some((m, y));
                }
            }
        }
        None
    }

    fn search(&mut self, out: &mut Vec<Vec<u8>>, budget: &Budget) -> Result<(), crate::BudgetExceeded> {
        budget.tick()?;
        let mark = self.trail.len();
        let labeled = self.labeled;
        match self.first_unknown() {
            None => {
                if labeled == self.n {
                    out.push(self.table.clone());
                } else if self.n.is_multiple_of(labeled) {
                    if self.introduce_label() {
                        self.search(out, budget)?;
                    }
                    self.undo_to(mark);
                    self.labeled = labeled;
                }
            }
            Some((x, y)) => {
                for v in 0..labeled {
                    if self.set(x, y, v) && self.propagate() {
                        self.search(out, budget)?;
                    }
                    self.undo_to(mark);
                }
                if labeled < self.n {
                    if self.introduce_label() && self.set(x, y, labeled) && self.propagate() {
                        self.search(out, budget)?;
                    }
                    self.undo_to(mark);
                    self.labeled = labeled;
                }
            }
        }
        Ok(())
    }
}

/// Readable name for a catalog entry: invariant factors for abelian groups,
/// the usual names for the non-abelian groups of order at most 12, and
/// `G<order>_<k>` otherwise.
fn describe(g: &FiniteGroup, k: usize) -> String {
    let n = g.order();
    if g.is_abelian() {
        let factors = abelian_invariants(g);
        if factors.is_empty() {
            return "C1".into();
        }
        return factors.iter().map(|f| format!("C{f}")).collect::<Vec<_>>().join("x");
    }
    let profile = g.order_profile();
    let count = |k: usize| profile.iter().filter(|&&o| o == k).count();
    let name = match n {
        6 => Some("S3"),
        8 if count(4) == 6 => Some("Q8"),
        8 => Some("D8"),
        10 => Some("D10"),
        12 if count(3) == 8 => Some("A4"),
        12 if count(4) == 6 => Some("Dic12"),
        12 => Some("D12"),
        _ => None,
    };
    name.map(str::to_owned).unwrap_or_else(|| format!("G{n}_{k}"))
}

/// Invariant factors `d₁ | d₂ | …` of an abelian group, from counts of
/// elements whose order divides each prime power.
fn abelian_invariants(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order();
    let orders = g.element_orders();
    let mut per_prime: Vec<Vec<usize>> = Vec::new();
    for p in (2..=n).filter(|&p| is_prime(p as u64) && n.is_multiple_of(p)) {
        // |{x : x^(p^k) = 1}| = p^(Σ min(k, e_i)) for the p-part ⊕ C(p^e_i),
        // so successive log differences count the factors of exponent ≥ k
        let mut ranks = Vec::new();
        let mut pk = p;
        let mut prev_log = 0;
        loop {
            let log = orders.iter().filter(|&&o| pk % o == 0).count().ilog(p);
            if log == prev_log {
                break;
            }
            ranks.push((log - prev_log) as usize);
            prev_log = log;
            pk *= p;
        }
        // ranks[k-1] = #factors with exponent ≥ k; convert to exponents
        let mut exps = Vec::new();
        for (k, &r) in ranks.iter().enumerate() {
            let next = ranks.get(k + 1).copied().unwrap_or(0);
            for _ in 0..(r - next) {
                exps.push(p.pow(k as u32 + 1));
            }
        }
        exps.sort_unstable();
        per_prime.push(exps);
    }
    // combine largest with largest
    let len = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1usize; len];
    for exps in per_prime {
        let offset = len - exps.len();
        for (i, e) in exps.into_iter().enumerate() {
            factors[offset + i] *= e;
        }
    }
    factors
}
