//! Independent oracles and random instance generators for integration tests.
//!
//! Nothing here calls into the search, clique or colouring code of the
//! library; graphs are read only through `order` and `has_edge`.

#![allow(dead_code)]

use kdesign::design::PartialDesign;
use kdesign::graph::DenseGraph;
use rand::seq::SliceRandom;
use rand::Rng;

/// Plain adjacency matrix copy of `g`.
pub fn adjacency(g: &DenseGraph) -> Vec<Vec<bool>> {
    let n = g.order();
    (0..n).map(|u| (0..n).map(|v| u != v && g.has_edge(u, v)).collect()).collect()
}

/// All `r`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < r - cur.len() {
                break;
            }
            cur.push(v);
            go(v + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

pub fn is_clique(adj: &[Vec<bool>], set: &[usize]) -> bool {
    set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| adj[u][v]))
}

/// Every `r`-clique, by enumerating all `r`-subsets.
pub fn all_cliques(g: &DenseGraph, r: usize) -> Vec<Vec<usize>> {
    let adj = adjacency(g);
    subsets(g.order(), r).into_iter().filter(|s| is_clique(&adj, s)).collect()
}

pub fn has_clique(g: &DenseGraph, r: usize) -> bool {
    !all_cliques(g, r).is_empty()
}

/// Whether `V(g)` splits into vertex-disjoint `r`-cliques, by recursion on
/// the lowest uncovered vertex.
pub fn has_clique_factor(g: &DenseGraph, r: usize) -> bool {
    let n = g.order();
    if r == 0 || !n.is_multiple_of(r) {
        return false;
    }
    let cliques = all_cliques(g, r);
    fn go(covered: &mut Vec<bool>, cliques: &[Vec<usize>]) -> bool {
        let Some(v) = covered.iter().position(|&c| !c) else {
            return true;
        };
        for c in cliques.iter().filter(|c| c[0] == v) {
            if c.iter().all(|&x| !covered[x]) {
                c.iter().for_each(|&x| covered[x] = true);
                if go(covered, cliques) {
                    return true;
                }
                c.iter().for_each(|&x| covered[x] = false);
            }
        }
        false
    }
    go(&mut vec![false; n], &cliques)
}

/// `cliques` are `r`-cliques of `g` partitioning `V(g)`.
pub fn is_clique_factor(g: &DenseGraph, r: usize, cliques: &[Vec<usize>]) -> bool {
    let adj = adjacency(g);
    let mut seen = vec![false; g.order()];
    for c in cliques {
        if c.len() != r || !is_clique(&adj, c) {
            return false;
        }
        for &v in c {
            if v >= seen.len() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
    }
    seen.iter().all(|&s| s)
}

/// `cliques` are `k`-sets whose pairs cover every edge of `g` exactly once
/// and nothing else.
pub fn is_edge_partition(g: &DenseGraph, k: usize, cliques: &[Vec<usize>]) -> bool {
    let n = g.order();
    let mut used = vec![vec![false; n]; n];
    for c in cliques {
        if c.len() != k || c.iter().any(|&v| v >= n) {
            return false;
        }
        for (i, &u) in c.iter().enumerate() {
            for &v in &c[i + 1..] {
                if u == v || !g.has_edge(u, v) || used[u][v] {
                    return false;
                }
                used[u][v] = true;
                used[v][u] = true;
            }
        }
    }
    (0..n).all(|u| (u + 1..n).all(|v| g.has_edge(u, v) == used[u][v]))
}

/// Exact cover of the edges of `g` by `k`-cliques using Knuth's
/// Algorithm X with the minimum-remaining-options column rule.
pub fn exact_cover_decomposition(g: &DenseGraph, k: usize) -> Option<Vec<Vec<usize>>> {
    let n = g.order();
    let mut edge_id = vec![vec![usize::MAX; n]; n];
    let mut items = 0;
    for (u, row) in edge_id.iter_mut().enumerate() {
        for (v, id) in row.iter_mut().enumerate().skip(u + 1) {
            if g.has_edge(u, v) {
                *id = items;
                items += 1;
            }
        }
    }
    if items == 0 {
        return Some(Vec::new());
    }
    let options: Vec<Vec<usize>> = all_cliques(g, k);
    let option_items: Vec<Vec<usize>> = options
        .iter()
        .map(|c| {
            let mut ids = Vec::new();
            for (i, &u) in c.iter().enumerate() {
                for &v in &c[i + 1..] {
                    ids.push(edge_id[u][v]);
                }
            }
            ids
        })
        .collect();
    let mut by_item = vec![Vec::new(); items];
    for (o, ids) in option_items.iter().enumerate() {
        for &e in ids {
            by_item[e].push(o);
        }
    }

    struct State<'a> {
        option_items: &'a [Vec<usize>],
        by_item: &'a [Vec<usize>],
        covered: Vec<bool>,
        // Number of items of each option already covered; usable iff 0.
        blocked: Vec<usize>,
        chosen: Vec<usize>,
    }

    fn search(s: &mut State<'_>) -> bool {
        let mut best: Option<(usize, usize)> = None;
        for e in 0..s.covered.len() {
            if s.covered[e] {
                continue;
            }
            let live = s.by_item[e].iter().filter(|&&o| s.blocked[o] == 0).count();
            if best.is_none_or(|(_, c)| live < c) {
                best = Some((e, live));
            }
        }
        let Some((e, live)) = best else {
            return true;
        };
        if live == 0 {
            return false;
        }
        for idx in 0..s.by_item[e].len() {
            let o = s.by_item[e][idx];
            if s.blocked[o] != 0 {
                continue;
            }
            for &f in &s.option_items[o] {
                s.covered[f] = true;
                for &p in &s.by_item[f] {
                    s.blocked[p] += 1;
                }
            }
            s.chosen.push(o);
            if search(s) {
                return true;
            }
            s.chosen.pop();
            for &f in &s.option_items[o] {
                s.covered[f] = false;
                for &p in &s.by_item[f] {
                    s.blocked[p] -= 1;
                }
            }
        }
        false
    }

    let mut s = State {
        option_items: &option_items,
        by_item: &by_item,
        covered: vec![false; items],
        blocked: vec![0; options.len()],
        chosen: Vec::new(),
    };
    search(&mut s).then(|| s.chosen.iter().map(|&o| options[o].clone()).collect())
}

/// Proper colouring of `h` with exactly `a` classes of size `k−1` each.
pub fn is_proper_equitable(h: &DenseGraph, classes: &[Vec<usize>], a: usize, k: usize) -> bool {
    let n = h.order();
    if classes.len() != a || n != a * (k - 1) {
        return false;
    }
    let mut seen = vec![false; n];
    for c in classes {
        if c.len() != k - 1 {
            return false;
        }
        for (i, &u) in c.iter().enumerate() {
            if u >= n || seen[u] {
                return false;
            }
            seen[u] = true;
            if c[i + 1..].iter().any(|&v| h.has_edge(u, v)) {
                return false;
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// No pair of points covered twice, every block a `k`-set of points.
pub fn is_partial_design(n: usize, k: usize, blocks: &[Vec<usize>]) -> bool {
    let mut used = vec![vec![false; n]; n];
    for b in blocks {
        if b.len() != k || b.iter().any(|&p| p >= n) {
            return false;
        }
        for (i, &u) in b.iter().enumerate() {
            for &v in &b[i + 1..] {
                if u == v || used[u][v] {
                    return false;
                }
                used[u][v] = true;
                used[v][u] = true;
            }
        }
    }
    true
}

/// `full` is an `(n,k,1)`-design containing every block of `partial`.
pub fn is_completion_of(full: &PartialDesign, partial: &PartialDesign) -> bool {
    let (n, k) = (partial.n(), partial.k());
    if full.n() != n || full.k() != k || !is_partial_design(n, k, full.blocks()) {
        return false;
    }
    if full.blocks().len() * k * (k - 1) != n * (n - 1) {
        return false;
    }
    let sorted = |b: &Vec<usize>| {
        let mut b = b.clone();
        b.sort_unstable();
        b
    };
    let have: std::collections::HashSet<Vec<usize>> = full.blocks().iter().map(sorted).collect();
    partial.blocks().iter().all(|b| have.contains(&sorted(b)))
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> DenseGraph {
    let mut g = DenseGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

fn toggle(g: &mut DenseGraph, u: usize, v: usize) {
    if g.has_edge(u, v) {
        g.remove_edge(u, v);
    } else {
        g.add_edge(u, v);
    }
}

/// A random `K_3`-divisible graph on `n ≥ 4` vertices: start from a random
/// graph, pair up odd vertices and toggle those pairs, then toggle triangles
/// until the edge count is a multiple of 3.
pub fn random_k3_divisible(rng: &mut impl Rng, n: usize, p: f64) -> DenseGraph {
    assert!(n >= 4);
    let mut g = random_graph(rng, n, p);
    let mut odd: Vec<usize> = (0..n).filter(|&v| g.degree(v) % 2 == 1).collect();
    odd.shuffle(rng);
    for pair in odd.chunks(2) {
        toggle(&mut g, pair[0], pair[1]);
    }
    while !g.edge_count().is_multiple_of(3) {
        let mut t: Vec<usize> = (0..n).collect();
        t.shuffle(rng);
        let (x, y, z) = (t[0], t[1], t[2]);
        let present = [(x, y), (y, z), (x, z)].iter().filter(|&&(u, v)| g.has_edge(u, v)).count();
        // Toggling a triangle with 0 or 3 edges keeps the count mod 3 but
        // unsticks disjoint unions of cliques, where no other triple exists.
        if present == 1 || present == 2 || rng.gen_bool(0.1) {
            toggle(&mut g, x, y);
            toggle(&mut g, y, z);
            toggle(&mut g, x, z);
        }
    }
    g
}

/// A random partial `(n,k,1)`-design with at most `max_blocks` blocks,
/// built by drawing random `k`-sets and keeping those that cover no pair
/// twice.
pub fn random_partial_design(rng: &mut impl Rng, n: usize, k: usize, max_blocks: usize) -> PartialDesign {
    let target = rng.gen_range(0..=max_blocks);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let points: Vec<usize> = (0..n).collect();
    let mut attempts = 0;
    while blocks.len() < target && attempts < 10_000 {
        attempts += 1;
        let mut b: Vec<usize> = points.choose_multiple(rng, k).copied().collect();
        b.sort_unstable();
        blocks.push(b);
        if !is_partial_design(n, k, &blocks) {
            blocks.pop();
        }
    }
    PartialDesign::new(n, k, blocks)
}
