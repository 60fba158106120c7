//! Tuples of homomorphisms into a fixed target, up to automorphisms of the
//! target.

use crate::group::Homomorphism;

/// All index tuples into `lists`, in lexicographic order.
pub(crate) fn index_tuples<T>(lists: &[Vec<T>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for l in lists {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..l.len()).map(move |k| {
                    let mut t = t.clone();
                    t.push(k);
                    t
                })
            })
            .collect();
    }
    out
}

/// The homomorphism lists are sorted by map, so comparing concatenated maps
/// agrees with comparing index tuples.
pub(crate) fn is_orbit_minimum(images: &[&[usize]], auts: &[Homomorphism]) -> bool {
    auts.iter().all(|alpha| {
        let moved = images.iter().flat_map(|img| img.iter().map(|&y| alpha.apply(y)));
        let here = images.iter().flat_map(|img| img.iter().copied());
        moved.cmp(here) != std::cmp::Ordering::Less
    })
}
