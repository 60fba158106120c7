use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::{eval_maps, FreeProdError, FreeProductContext, ReducedWord};
use crate::budget::Budget;
use crate::embed::MarkedGroup;
use crate::group::{generating_set, FiniteGroup, GroupRef, Homomorphism, Subgroup};
use crate::search::tuples::{index_tuples, is_orbit_minimum};
use crate::search::{automorphisms, enumerate_homomorphisms, Catalog, SearchError};

/// A finite quotient `Q` of the free product: one map per factor whose images
/// generate `Q`.
#[derive(Debug, Clone)]
pub struct MarkedQuotient {
    group: GroupRef,
    etas: Vec<Homomorphism>,
    marks: Vec<Subgroup>,
}

impl MarkedQuotient {
    /// Fails unless the images of `etas` generate their common codomain.
    pub fn new(ctx: &FreeProductContext, etas: Vec<Homomorphism>) -> Result<Self, FreeProdError> {
        let group = ctx.check_tuple(&etas)?.clone();
        let marks: Vec<Subgroup> = etas.iter().map(Homomorphism::image).collect();
        let seed: Vec<usize> = marks.iter().flat_map(|m| m.elements().iter().copied()).collect();
        if Subgroup::generated(&group, &seed).order() != group.order() {
            return Err(FreeProdError::TupleMismatch(
                "the images do not generate the target".into(),
            ));
        }
        Ok(MarkedQuotient { group, etas, marks })
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn etas(&self) -> &[Homomorphism] {
        &self.etas
    }

    pub fn marks(&self) -> &[Subgroup] {
        &self.marks
    }

    /// `Q` marked by the factor images.
    pub fn marked_group(&self) -> MarkedGroup {
        MarkedGroup::new(self.group.clone(), self.marks.clone()).expect("marks generate Q")
    }
}

/// The subgroup of `H` generated by the images of `etas`, with the maps
/// corestricted to it. Element `k` of the result is the `k`-th smallest
/// element of that subgroup of `H`.
pub fn joint_image(ctx: &FreeProductContext, etas: &[Homomorphism]) -> Result<MarkedQuotient, FreeProdError> {
    let h = ctx.check_tuple(etas)?;
    let seed: Vec<usize> = etas.iter().flat_map(|e| e.map().iter().copied()).collect();
    let sub = Subgroup::generated(h, &seed);
    let (q, _) = sub.to_group();
    let pos = |y: usize| sub.elements().binary_search(&y).expect("image lies in the span");
    let etas = etas
        .iter()
        .map(|e| Homomorphism::new_unchecked(e.domain().clone(), q.clone(), e.map().iter().map(|&y| pos(y)).collect()))
        .collect();
    MarkedQuotient::new(ctx, etas)
}

/// `Hom(Gᵢ, H)` for each factor, each sorted by map.
fn factor_homs(ctx: &FreeProductContext, h: &GroupRef, budget: &Budget) -> Result<Vec<Vec<Homomorphism>>, SearchError> {
    ctx.factors()
        .iter()
        .map(|g| enumerate_homomorphisms(g, h, budget))
        .collect()
}

/// One marked quotient per class, up to isomorphisms of the quotient that
/// respect every factor map. Ordered by catalog position of the quotient, then
/// lexicographically by the tuple of maps.
///
/// Every quotient of order at most the bound appears provided the catalog
/// lists every group up to that order.
pub fn enumerate_quotients(
    ctx: &FreeProductContext,
    cat: &Catalog,
    budget: &Budget,
) -> Result<Vec<MarkedQuotient>, FreeProdError> {
    let mut out = Vec::new();
    for h in cat.iter() {
        let homs = factor_homs(ctx, h, budget)?;
        let auts = automorphisms(h, budget)?;
        let kept: Vec<Option<Vec<Homomorphism>>> = index_tuples(&homs)
            .par_iter()
            .map(|t| {
                let images: Vec<&[usize]> = t.iter().zip(&homs).map(|(&k, hs)| hs[k].map()).collect();
                let seed: Vec<usize> = images.iter().flat_map(|m| m.iter().copied()).collect();
                let onto = Subgroup::generated(h, &seed).order() == h.order();
                (onto && is_orbit_minimum(&images, &auts))
                    .then(|| t.iter().zip(&homs).map(|(&k, hs)| hs[k].clone()).collect())
            })
            .collect();
        for etas in kept.into_iter().flatten() {
            let marks = etas.iter().map(Homomorphism::image).collect();
            out.push(MarkedQuotient {
                group: h.clone(),
                etas,
                marks,
            });
        }
    }
    Ok(out)
}

/// Elements in discovery order and their positions.
type Closure = (Vec<Vec<u32>>, HashMap<Vec<u32>, usize>);

/// A finite image in which two words differ.
#[derive(Debug, Clone)]
pub struct Separation {
    /// Position of the target group in the catalog.
    pub group_index: usize,
    pub target: GroupRef,
    pub etas: Vec<Homomorphism>,
    pub values: (usize, usize),
}

/// The first tuple into a catalog group, in catalog order and then
/// lexicographic tuple order, under which `w1` and `w2` evaluate differently.
/// `Ok(None)` says only that no witness exists within the catalog.
pub fn separate(
    ctx: &FreeProductContext,
    w1: &ReducedWord,
    w2: &ReducedWord,
    cat: &Catalog,
    budget: &Budget,
) -> Result<Option<Separation>, FreeProdError> {
    if w1 == w2 {
        return Err(FreeProdError::EqualWords);
    }
    for (group_index, h) in cat.iter().enumerate() {
        let homs = factor_homs(ctx, h, budget)?;
        let tuples = index_tuples(&homs);
        let found = tuples.par_iter().find_map_first(|t| {
            let maps: Vec<&[usize]> = t.iter().zip(&homs).map(|(&k, hs)| hs[k].map()).collect();
            let (a, b) = (eval_maps(h, w1, &maps), eval_maps(h, w2, &maps));
            (a != b).then_some((t, (a, b)))
        });
        if let Some((t, values)) = found {
            return Ok(Some(Separation {
                group_index,
                target: h.clone(),
                etas: t.iter().zip(&homs).map(|(&k, hs)| hs[k].clone()).collect(),
                values,
            }));
        }
    }
    Ok(None)
}

/// One coordinate of the product: a target group and, per factor, the image of
/// every factor element.
struct Coordinate {
    target: GroupRef,
    maps: Vec<Vec<usize>>,
}

struct ProductImage<'a> {
    ctx: &'a FreeProductContext,
    coords: Vec<Coordinate>,
    gens: Vec<Vec<usize>>,
}

impl<'a> ProductImage<'a> {
    fn new(ctx: &'a FreeProductContext) -> Self {
        let gens = ctx.factors().iter().map(|g| generating_set(g)).collect();
        ProductImage {
            ctx,
            coords: Vec::new(),
            gens,
        }
    }

    fn point(&self, active: &[usize], factor: usize, x: usize) -> Vec<u32> {
        active.iter().map(|&c| self.coords[c].maps[factor][x] as u32).collect()
    }

    fn mul(&self, active: &[usize], a: &[u32], b: &[u32]) -> Vec<u32> {
        active
            .iter()
            .zip(a.iter().zip(b))
            .map(|(&c, (&x, &y))| self.coords[c].target.mul(x as usize, y as usize) as u32)
            .collect()
    }

    /// Elements of the image in the product of the `active` coordinates,
    /// identity first, in breadth-first order.
    fn closure(&self, active: &[usize], budget: &Budget) -> Result<Closure, SearchError> {
        let gens: Vec<Vec<u32>> = self
            .gens
            .iter()
            .enumerate()
            .flat_map(|(i, gs)| gs.iter().map(move |&x| (i, x)))
            .map(|(i, x)| self.point(active, i, x))
            .collect();
        let one: Vec<u32> = active
            .iter()
            .map(|&c| self.coords[c].target.identity() as u32)
            .collect();
        let mut index = HashMap::from([(one.clone(), 0)]);
        let mut elements = vec![one];
        let mut k = 0;
        while k < elements.len() {
            for g in &gens {
                let y = self.mul(active, &elements[k], g);
                if !index.contains_key(&y) {
                    budget.tick()?;
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
            k += 1;
        }
        Ok((elements, index))
    }

    fn order(&self, active: &[usize], budget: &Budget) -> Result<usize, SearchError> {
        Ok(self.closure(active, budget)?.0.len())
    }

    fn build(&self, active: &[usize], budget: &Budget) -> Result<MarkedQuotient, SearchError> {
        let (elements, index) = self.closure(active, budget)?;
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                table.push(index[&self.mul(active, a, b)] as u32);
            }
        }
        let q: GroupRef = Arc::new(FiniteGroup::from_flat_unchecked(n, table, None));
        let etas: Vec<Homomorphism> = self
            .ctx
            .factors()
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let map = g.elements().map(|x| index[&self.point(active, i, x)]).collect();
                Homomorphism::new_unchecked(g.clone(), q.clone(), map)
            })
            .collect();
        let marks = etas.iter().map(Homomorphism::image).collect();
        Ok(MarkedQuotient { group: q, etas, marks })
    }
}

/// A finite quotient through which every tuple of maps into a catalog group
/// factors.
///
/// It is the image of the free product in the product of one coordinate per
/// tuple class (tuples identified up to `Aut(H)`). A coordinate is kept only
/// if it enlarges the image; a final pass drops any coordinate whose removal
/// leaves the order unchanged, which is exactly when the kernel is unchanged.
pub fn level_quotient(
    ctx: &FreeProductContext,
    cat: &Catalog,
    budget: &Budget,
) -> Result<MarkedQuotient, FreeProdError> {
    let mut image = ProductImage::new(ctx);
    for h in cat.iter() {
        let homs = factor_homs(ctx, h, budget)?;
        let auts = automorphisms(h, budget)?;
        for t in index_tuples(&homs) {
            let images: Vec<&[usize]> = t.iter().zip(&homs).map(|(&k, hs)| hs[k].map()).collect();
            if is_orbit_minimum(&images, &auts) {
                image.coords.push(Coordinate {
                    target: h.clone(),
                    maps: images.iter().map(|m| m.to_vec()).collect(),
                });
            }
        }
    }
    let mut active: Vec<usize> = Vec::new();
    let mut order = 1;
    for c in 0..image.coords.len() {
        active.push(c);
        let grown = image.order(&active, budget)?;
        if grown > order {
            order = grown;
        } else {
            active.pop();
        }
    }
    let mut k = active.len();
    while k > 0 {
        k -= 1;
        let mut rest = active.clone();
        rest.remove(k);
        if image.order(&rest, budget)? == order {
            active = rest;
        }
    }
    Ok(image.build(&active, budget)?)
}
