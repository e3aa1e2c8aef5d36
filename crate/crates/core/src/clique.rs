//! Exact clique and clique-factor search.
//!
//! Both searches are complete, so a `None` answer proves absence. They are
//! exponential in the worst case; the instances this crate feeds them are
//! small and dense, where the degree-ordered descent finds a witness almost
//! immediately.

use crate::error::{Error, Result};
use crate::graph::{DenseGraph, VertexSet};
use crate::matching::maximum_matching;

/// Candidates ordered by descending degree inside `cand`, then by index.
fn ordered(h: &DenseGraph, cand: &VertexSet) -> Vec<usize> {
    let mut vs: Vec<(usize, usize)> = cand
        .iter()
        .map(|v| (h.neighbors(v).intersection_len(cand), v))
        .collect();
    vs.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    vs.into_iter().map(|(_, v)| v).collect()
}

fn extend(h: &DenseGraph, mut cand: VertexSet, clique: &mut Vec<usize>, r: usize) -> bool {
    if clique.len() == r {
        return true;
    }
    if clique.len() + cand.len() < r {
        return false;
    }
    for v in ordered(h, &cand) {
        if clique.len() + cand.len() < r {
            return false;
        }
        cand.remove(v);
        clique.push(v);
        if extend(h, cand.intersection(h.neighbors(v)), clique, r) {
            return true;
        }
        clique.pop();
    }
    false
}

/// An `r`-clique of `h` whose vertices all lie in `within`, sorted.
pub fn find_clique_within(h: &DenseGraph, within: &VertexSet, r: usize) -> Option<Vec<usize>> {
    let mut clique = Vec::with_capacity(r);
    if extend(h, within.clone(), &mut clique, r) {
        clique.sort_unstable();
        Some(clique)
    } else {
        None
    }
}

/// An `r`-clique of `h`, if one exists.
pub fn find_clique(h: &DenseGraph, r: usize) -> Option<Vec<usize>> {
    find_clique_within(h, &VertexSet::full(h.order()), r)
}

/// An `r`-clique inside `N(x) ∩ N(y) \ S`. `r = 0` gives the empty set.
pub fn find_clique_in_mutual_neighborhood(
    g: &DenseGraph,
    x: usize,
    y: usize,
    s: &VertexSet,
    r: usize,
) -> Option<Vec<usize>> {
    let mut cand = g.common_neighbors(x, y);
    cand.difference_with(s);
    find_clique_within(g, &cand, r)
}

/// True when `|E(h)| > ((r−2)/(2r−2))·|V(h)|²`, i.e. an `r`-clique is forced.
pub fn turan_forces_clique(h: &DenseGraph, r: usize) -> bool {
    assert!(r >= 2);
    let n = h.order() as u128;
    (h.edge_count() as u128) * (2 * r as u128 - 2) > (r as u128 - 2) * n * n
}

/// True when `δ(h) ≥ ((r−1)/r)·|V(h)|`, i.e. a `K_r`-factor is forced.
pub fn hajnal_szemeredi_forces_factor(h: &DenseGraph, r: usize) -> bool {
    assert!(r >= 1);
    h.order().is_multiple_of(r) && h.min_degree() * r >= (r - 1) * h.order()
}

/// Partition of `V(h)` into `r`-cliques, or `None` if none exists.
pub fn find_clique_factor(h: &DenseGraph, r: usize) -> Result<Option<Vec<Vec<usize>>>> {
    let n = h.order();
    if r == 0 || !n.is_multiple_of(r) {
        return Err(Error::InvalidParameters(format!(
            "cannot split {n} vertices into cliques of order {r}"
        )));
    }
    match r {
        1 => Ok(Some((0..n).map(|v| vec![v]).collect())),
        2 => {
            let mate = maximum_matching(h);
            let mut pairs = Vec::with_capacity(n / 2);
            for (v, m) in mate.iter().enumerate() {
                match m {
                    None => return Ok(None),
                    Some(u) if v < *u => pairs.push(vec![v, *u]),
                    Some(_) => {}
                }
            }
            Ok(Some(pairs))
        }
        _ => {
            let mut parts = Vec::with_capacity(n / r);
            let found = factor_search(h, VertexSet::full(n), r, &mut parts);
            Ok(found.then_some(parts))
        }
    }
}

fn factor_search(h: &DenseGraph, uncovered: VertexSet, r: usize, parts: &mut Vec<Vec<usize>>) -> bool {
    let Some(v) = uncovered.first() else {
        return true;
    };
    // every uncovered vertex needs r-1 uncovered neighbours
    if uncovered
        .iter()
        .any(|w| h.neighbors(w).intersection_len(&uncovered) < r - 1)
    {
        return false;
    }
    let cand = h.neighbors(v).intersection(&uncovered);
    let mut chosen = vec![v];
    cliques_through(h, cand, r - 1, &mut chosen, &mut |part| {
        let mut rest = uncovered.clone();
        for &u in part {
            rest.remove(u);
        }
        let mut sorted = part.to_vec();
        sorted.sort_unstable();
        parts.push(sorted);
        if factor_search(h, rest, r, parts) {
            return true;
        }
        parts.pop();
        false
    })
}

/// Calls `visit` with each way of extending `chosen` by `need` mutually
/// adjacent vertices of `cand`, until `visit` returns true.
fn cliques_through(
    h: &DenseGraph,
    mut cand: VertexSet,
    need: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if need == 0 {
        return visit(chosen);
    }
    for u in ordered(h, &cand) {
        if cand.len() < need {
            return false;
        }
        cand.remove(u);
        chosen.push(u);
        if cliques_through(h, cand.intersection(h.neighbors(u)), need - 1, chosen, visit) {
            return true;
        }
        chosen.pop();
    }
    false
}
