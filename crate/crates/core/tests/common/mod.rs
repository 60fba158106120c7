//! Brute-force oracles shared by the integration tests. They only read
//! Cayley tables and never call the search code they are compared against.

#![allow(dead_code)]

use galshadow::group::build_from_permutations;
use galshadow::search::{build_catalog, Catalog};
use galshadow::{FiniteGroup, GroupRef, Homomorphism, Subgroup};

pub fn catalog(bound: usize) -> Catalog {
    build_catalog(bound).expect("catalog bounds up to 12 are supported")
}

pub fn identity_of(t: &[Vec<usize>]) -> usize {
    (0..t.len())
        .find(|&e| (0..t.len()).all(|x| t[e][x] == x))
        .expect("a group table")
}

/// Every map `G -> H`, in lexicographic order, that respects the products.
pub fn all_function_homs(g: &GroupRef, h: &GroupRef) -> Vec<Vec<usize>> {
    let (tg, th) = (g.rows(), h.rows());
    let (n, m) = (tg.len(), th.len());
    let mut out = Vec::new();
    let mut f = vec![0usize; n];
    loop {
        if (0..n).all(|a| (0..n).all(|b| f[tg[a][b]] == th[f[a]][f[b]])) {
            out.push(f.clone());
        }
        // odometer, last position fastest
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            f[i] += 1;
            if f[i] < m {
                break;
            }
            f[i] = 0;
        }
    }
}

/// Depth-first search over all maps `G -> H`, rejecting a partial map as soon
/// as one product among assigned elements fails. Calls `keep` on each
/// complete homomorphism.
pub fn all_maps_dfs(g: &GroupRef, h: &GroupRef, mut keep: impl FnMut(&[usize])) {
    fn go(i: usize, f: &mut Vec<usize>, tg: &[Vec<usize>], th: &[Vec<usize>], keep: &mut dyn FnMut(&[usize])) {
        let n = tg.len();
        if i == n {
            keep(f);
            return;
        }
        for y in 0..th.len() {
            f[i] = y;
            let ok = (0..=i).all(|a| {
                (0..=i).all(|b| {
                    let c = tg[a][b];
                    c > i || f[c] == th[f[a]][f[b]]
                })
            });
            if ok {
                go(i + 1, f, tg, th, keep);
            }
        }
        f[i] = usize::MAX;
    }
    let (tg, th) = (g.rows(), h.rows());
    let mut f = vec![usize::MAX; tg.len()];
    go(0, &mut f, &tg, &th, &mut keep);
}

/// Every subset of `G` closed under the product (hence a subgroup), as sorted
/// element lists in order of their bitmask.
pub fn all_subgroups_by_subsets(g: &GroupRef) -> Vec<Vec<usize>> {
    let t = g.rows();
    let n = t.len();
    assert!(n <= 16);
    let e = identity_of(&t);
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask >> e & 1 == 0 {
            continue;
        }
        let inside = |x: usize| mask >> x & 1 == 1;
        let closed = (0..n)
            .filter(|&a| inside(a))
            .all(|a| (0..n).filter(|&b| inside(b)).all(|b| inside(t[a][b])));
        if closed {
            out.push((0..n).filter(|&x| inside(x)).collect());
        }
    }
    out
}

pub fn is_normal_subset(g: &GroupRef, s: &[usize]) -> bool {
    let t = g.rows();
    let inv = inverses(&t);
    (0..t.len()).all(|a| s.iter().all(|&x| s.contains(&t[t[inv[a]][x]][a])))
}

pub fn inverses(t: &[Vec<usize>]) -> Vec<usize> {
    let e = identity_of(t);
    (0..t.len())
        .map(|a| (0..t.len()).find(|&b| t[a][b] == e).unwrap())
        .collect()
}

pub fn is_prime_power_of(n: usize, p: usize) -> bool {
    let mut n = n;
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Smallest normal subgroup with a `p`-group quotient, by scanning all normal
/// subsets.
pub fn min_p_kernel(g: &GroupRef, p: usize) -> Vec<usize> {
    all_subgroups_by_subsets(g)
        .into_iter()
        .filter(|s| is_normal_subset(g, s) && is_prime_power_of(g.order() / s.len(), p))
        .min_by_key(Vec::len)
        .expect("G itself qualifies")
}

/// Every bijection `G -> H` respecting products, by running through all
/// permutations of `H`'s elements.
pub fn all_bijective_isos(g: &GroupRef, h: &GroupRef) -> Vec<Vec<usize>> {
    if g.order() != h.order() {
        return Vec::new();
    }
    let (tg, th) = (g.rows(), h.rows());
    let n = tg.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let check = |f: &[usize]| (0..n).all(|a| (0..n).all(|b| f[tg[a][b]] == th[f[a]][f[b]]));
    if check(&perm) {
        out.push(perm.clone());
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if check(&perm) {
                out.push(perm.clone());
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out.sort();
    out
}

/// The closure of a set of elements under the product.
pub fn closure(g: &GroupRef, seed: &[usize]) -> Vec<usize> {
    let t = g.rows();
    let e = identity_of(&t);
    let mut set = vec![e];
    set.extend(seed.iter().copied().filter(|&x| x != e));
    set.sort();
    set.dedup();
    loop {
        let mut grown = set.clone();
        for &a in &set {
            for &b in &set {
                grown.push(t[a][b]);
            }
        }
        grown.sort();
        grown.dedup();
        if grown.len() == set.len() {
            return set;
        }
        set = grown;
    }
}

pub fn image_set(map: &[usize], s: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = s.iter().map(|&x| map[x]).collect();
    v.sort();
    v.dedup();
    v
}

/// S₃ on {0, 1, 2} with the permutation action.
pub fn s3() -> (GroupRef, impl Fn(&[usize]) -> usize) {
    let (g, act) = build_from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]], 100).unwrap();
    (g, move |p: &[usize]| act.element_of(p).unwrap())
}

/// D₄ on the square's vertices with `s = (1 3)` and `r = (0 1 2 3)`.
pub fn d4() -> (GroupRef, usize, usize) {
    let s = vec![0, 3, 2, 1];
    let r = vec![1, 2, 3, 0];
    let (g, act) = build_from_permutations(4, &[s.clone(), r.clone()], 100).unwrap();
    let (s, r) = (act.element_of(&s).unwrap(), act.element_of(&r).unwrap());
    (g, s, r)
}

/// C₂×C₂ with `u = (1, 0)` and `v = (0, 1)`.
pub fn klein() -> (GroupRef, usize, usize) {
    let c2 = FiniteGroup::cyclic(2);
    (FiniteGroup::direct_product(&c2, &c2), 2, 1)
}

/// The homomorphism `D₄ -> C₂×C₂` with `s -> u` and `r -> uv`, found among all
/// maps.
pub fn d4_onto_klein() -> Homomorphism {
    let (d4, s, r) = d4();
    let (k, u, v) = klein();
    let uv = k.mul(u, v);
    let map = all_function_homs(&d4, &k)
        .into_iter()
        .find(|f| f[s] == u && f[r] == uv)
        .expect("s -> u, r -> uv defines a homomorphism");
    Homomorphism::new(d4, k, map).unwrap()
}

pub fn sub(g: &GroupRef, gens: &[usize]) -> Subgroup {
    Subgroup::generated(g, gens)
}

/// Greedy generating set: elements in the given order, kept when they grow
/// the closure.
pub fn greedy_generators(g: &GroupRef, order: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = closure(g, &[]);
    for x in order {
        if span.len() == g.order() {
            break;
        }
        if !span.contains(&x) {
            gens.push(x);
            span = closure(g, &gens);
        }
    }
    gens
}

/// Valid embedding problems over catalog groups: sources of order at most
/// `max_g` with cyclic marks on greedy generating sets (ascending and
/// descending) or the single mark `G`; `A = B/K` for each normal `K`; up to
/// two epimorphisms `phi`; target marks chosen first-fit and last-fit among
/// the subgroups `ψ` maps isomorphically onto `φ(Gᵢ)`.
pub fn generated_problems(max_g: usize, max_b: usize, limit: usize) -> Vec<galshadow::embed::EmbeddingProblem> {
    use galshadow::embed::{validate_problem, EmbeddingProblem, MarkedGroup};
    use galshadow::group::{all_subgroups, normal_subgroups, quotient};
    use galshadow::search::enumerate_epimorphisms;
    use galshadow::Budget;

    let budget = Budget::unlimited();
    let cat_b = catalog(max_b);
    let mut out = Vec::new();
    for g in catalog(max_g).iter().filter(|g| g.order() > 1) {
        let asc = greedy_generators(g, g.elements());
        let desc = greedy_generators(g, g.elements().rev());
        let mut families: Vec<Vec<Vec<usize>>> = vec![
            asc.iter().map(|&x| vec![x]).collect(),
            desc.iter().map(|&x| vec![x]).collect(),
            vec![g.elements().collect()],
        ];
        families.dedup();
        for marks in &families {
            let source = MarkedGroup::from_generators(g.clone(), marks).expect("marks generate");
            for b in cat_b.iter() {
                let subs = all_subgroups(b);
                for k in normal_subgroups(b) {
                    let (a, psi) = quotient(b, &k).unwrap();
                    let epis = enumerate_epimorphisms(g, &a, &budget).unwrap();
                    for phi in epis.iter().take(2) {
                        let cands: Vec<Vec<&Subgroup>> = source
                            .marks()
                            .iter()
                            .map(|gi| {
                                let target = phi.image_of(gi);
                                subs.iter()
                                    .filter(|s| s.order() == target.order() && psi.image_of(s) == target)
                                    .collect()
                            })
                            .collect();
                        if cands.iter().any(Vec::is_empty) {
                            continue;
                        }
                        let mut picks: Vec<Vec<Subgroup>> = vec![
                            cands.iter().map(|c| c[0].clone()).collect(),
                            cands.iter().map(|c| c[c.len() - 1].clone()).collect(),
                        ];
                        picks.dedup();
                        for marks_b in picks {
                            let ep = EmbeddingProblem::new(source.clone(), phi.clone(), psi.clone(), marks_b).unwrap();
                            if validate_problem(&ep).is_empty() {
                                out.push(ep);
                                if out.len() == limit {
                                    return out;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}
