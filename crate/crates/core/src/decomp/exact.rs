//! Complete backtracking search for a `K_k`-decomposition.
//!
//! The search always branches on the lexicographically first uncovered edge
//! and tries the `k`-cliques through it in lexicographic order, so the
//! search tree, and therefore the first solution found, is fixed by the
//! input. The budget counts search-tree nodes.

use rayon::prelude::*;

use super::CliqueDecomposition;
use crate::design::is_kk_divisible;
use crate::error::{Error, Result};
use crate::graph::{DenseGraph, VertexSet};
use crate::matching::maximum_matching;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(CliqueDecomposition),
    /// The search completed without a solution: no decomposition exists.
    Infeasible,
    /// Stopped early; proves nothing.
    BudgetExceeded,
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&CliqueDecomposition> {
        match self {
            SearchOutcome::Found(d) => Some(d),
            _ => None,
        }
    }
}

/// Decomposer applied to whatever is left once low-degree vertices have
/// been dealt with.
pub trait Terminal: Sync {
    fn decompose(&self, g: &DenseGraph, k: usize) -> Result<SearchOutcome>;
}

/// [`exact_decompose`] as a terminal decomposer. `threads > 1` switches to
/// [`exact_decompose_parallel`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactTerminal {
    pub budget: u64,
    pub threads: usize,
}

impl ExactTerminal {
    pub fn new(budget: u64) -> Self {
        ExactTerminal { budget, threads: 1 }
    }
}

impl Terminal for ExactTerminal {
    fn decompose(&self, g: &DenseGraph, k: usize) -> Result<SearchOutcome> {
        if self.threads > 1 {
            exact_decompose_parallel(g, k, self.budget, self.threads)
        } else {
            exact_decompose(g, k, self.budget)
        }
    }
}

enum Step {
    Found,
    Dead,
    Budget,
}

struct Search {
    k: usize,
    budget: u64,
    nodes: u64,
    residual: DenseGraph,
    chosen: Vec<Vec<usize>>,
}

fn first_edge(g: &DenseGraph) -> Option<(usize, usize)> {
    (0..g.order()).find_map(|u| g.neighbors(u).first().map(|v| (u, v)))
}

/// Every remaining edge still has `k−2` common neighbours to complete it.
fn edges_extendable(g: &DenseGraph, k: usize) -> bool {
    (0..g.order()).all(|u| {
        let row = g.neighbors(u);
        row.iter()
            .filter(|&v| v > u)
            .all(|v| row.intersection_len(g.neighbors(v)) >= k - 2)
    })
}

/// For `k = 3`: every vertex `v` needs its edges paired off by edges of
/// `G[N(v)]`, so that graph must have a perfect matching. Cutting subtrees
/// that fail this never removes a solution, so the first solution found
/// is unchanged.
fn neighborhoods_matchable(g: &DenseGraph) -> bool {
    (0..g.order()).all(|v| {
        let nbrs = g.neighbors(v).to_vec();
        nbrs.is_empty() || maximum_matching(&g.induced(&nbrs)).iter().all(Option::is_some)
    })
}

/// Calls `visit` on each `need`-clique of `cand` in lexicographic order,
/// stopping early when it returns `Some`.
fn lex_cliques<T>(
    g: &DenseGraph,
    cand: &VertexSet,
    need: usize,
    picked: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> Option<T>,
) -> Option<T> {
    if need == 0 {
        return visit(picked);
    }
    let members = cand.to_vec();
    for (i, &w) in members.iter().enumerate() {
        if members.len() - i < need {
            break;
        }
        let mut next = cand.intersection(g.neighbors(w));
        for &x in &members[..=i] {
            next.remove(x);
        }
        picked.push(w);
        let r = lex_cliques(g, &next, need - 1, picked, visit);
        picked.pop();
        if r.is_some() {
            return r;
        }
    }
    None
}

/// The `k`-cliques through the first uncovered edge, in branching order.
fn branches(g: &DenseGraph, k: usize, (u, v): (usize, usize)) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    lex_cliques::<()>(g, &g.common_neighbors(u, v), k - 2, &mut Vec::new(), &mut |ws| {
        let mut c = vec![u, v];
        c.extend_from_slice(ws);
        c.sort_unstable();
        out.push(c);
        None
    });
    out
}

impl Search {
    fn new(g: &DenseGraph, k: usize, budget: u64) -> Self {
        Search { k, budget, nodes: 0, residual: g.clone(), chosen: Vec::new() }
    }

    fn run(&mut self) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::Budget;
        }
        let Some(edge) = first_edge(&self.residual) else {
            return Step::Found;
        };
        if !edges_extendable(&self.residual, self.k) {
            return Step::Dead;
        }
        if self.k == 3 && !neighborhoods_matchable(&self.residual) {
            return Step::Dead;
        }
        for clique in branches(&self.residual, self.k, edge) {
            self.residual.remove_clique(&clique);
            self.chosen.push(clique);
            match self.run() {
                Step::Dead => {}
                done => return done,
            }
            let clique = self.chosen.pop().expect("pushed above");
            self.residual.add_clique(&clique);
        }
        Step::Dead
    }

    fn outcome(mut self) -> SearchOutcome {
        match self.run() {
            Step::Found => SearchOutcome::Found(CliqueDecomposition::new(self.k, self.chosen)),
            Step::Dead => SearchOutcome::Infeasible,
            Step::Budget => SearchOutcome::BudgetExceeded,
        }
    }
}

fn precheck(g: &DenseGraph, k: usize) -> Result<Option<SearchOutcome>> {
    if k < 2 {
        return Err(Error::InvalidParameters(format!("block size k = {k} is below 2")));
    }
    if !is_kk_divisible(g, k) {
        return Ok(Some(SearchOutcome::Infeasible));
    }
    if !g.has_edges() {
        return Ok(Some(SearchOutcome::Found(CliqueDecomposition::new(k, Vec::new()))));
    }
    Ok(None)
}

/// Exact `K_k`-decomposition search with a node budget.
pub fn exact_decompose(g: &DenseGraph, k: usize, budget: u64) -> Result<SearchOutcome> {
    if let Some(done) = precheck(g, k)? {
        return Ok(done);
    }
    Ok(Search::new(g, k, budget).outcome())
}

/// Explores the top-level branches on a pool of `threads` workers, each
/// with its own `budget`. The reported solution is the one from the
/// earliest branch in tree order that succeeds, so the result does not
/// depend on the thread count.
pub fn exact_decompose_parallel(
    g: &DenseGraph,
    k: usize,
    budget: u64,
    threads: usize,
) -> Result<SearchOutcome> {
    if let Some(done) = precheck(g, k)? {
        return Ok(done);
    }
    if !edges_extendable(g, k) {
        return Ok(SearchOutcome::Infeasible);
    }
    let edge = first_edge(g).expect("graph has edges");
    let tops = branches(g, k, edge);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidParameters(format!("thread pool: {e}")))?;
    let results: Vec<SearchOutcome> = pool.install(|| {
        tops.par_iter()
            .map(|clique| {
                let mut search = Search::new(g, k, budget);
                search.residual.remove_clique(clique);
                search.chosen.push(clique.clone());
                search.outcome()
            })
            .collect()
    });
    let mut exhausted = false;
    for r in results {
        match r {
            SearchOutcome::Found(d) => return Ok(SearchOutcome::Found(d)),
            SearchOutcome::BudgetExceeded => exhausted = true,
            SearchOutcome::Infeasible => {}
        }
    }
    Ok(if exhausted { SearchOutcome::BudgetExceeded } else { SearchOutcome::Infeasible })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k7_gives_fano_plane() {
        let g = DenseGraph::complete(7);
        let d = exact_decompose(&g, 3, 1_000_000).unwrap();
        let d = d.found().expect("STS(7) exists");
        assert_eq!(d.len(), 7);
        assert!(d.is_decomposition_of(&g));
    }

    #[test]
    fn k6_fails_divisibility() {
        assert_eq!(exact_decompose(&DenseGraph::complete(6), 3, 10).unwrap(), SearchOutcome::Infeasible);
    }

    #[test]
    fn k13_into_k4s() {
        let g = DenseGraph::complete(13);
        let out = exact_decompose(&g, 4, 10_000_000).unwrap();
        assert!(out.found().unwrap().is_decomposition_of(&g));
    }

    #[test]
    fn fisher_small_cases() {
        for k in [3usize, 4, 5] {
            let n = k * (k - 1) / 2 + 1;
            let g = DenseGraph::complete(n);
            assert_eq!(exact_decompose(&g, k, 10_000_000).unwrap(), SearchOutcome::Infeasible, "k={k}");
        }
    }

    #[test]
    fn tiny_budget_is_reported() {
        let g = DenseGraph::complete(13);
        assert_eq!(exact_decompose(&g, 3, 2).unwrap(), SearchOutcome::BudgetExceeded);
    }

    #[test]
    fn parallel_matches_sequential() {
        for n in [7usize, 9, 13] {
            let g = DenseGraph::complete(n);
            let seq = exact_decompose(&g, 3, u64::MAX).unwrap();
            for t in [1, 4] {
                assert_eq!(exact_decompose_parallel(&g, 3, u64::MAX, t).unwrap(), seq);
            }
        }
    }

    #[test]
    fn empty_graph_is_trivially_decomposed() {
        let out = exact_decompose(&DenseGraph::empty(5), 3, 1).unwrap();
        assert_eq!(out.found().unwrap().len(), 0);
    }
}
