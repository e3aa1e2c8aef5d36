//! End-to-end completion and decomposition.
//!
//! Each procedure first tries the constructive route: pick a special vertex
//! `z`, equitably colour the complement on its neighbourhood to get the
//! cliques through `z`, then hand the rest to the terminal decomposer. The
//! guarantees behind that route only hold for very large `n`, so whenever it
//! fails the whole input goes to the terminal instead. The result records
//! which route produced it.

use serde::Serialize;

use crate::bounds::evans_block_bound;
use crate::constructions::{scan_for_certificate, ObstructionCertificate, Target};
use crate::decomp::{
    check_lemma4_hypotheses, derive_low_degree_set, inductive_decompose, CliqueDecomposition, Gamma,
    InductiveOutcome, SearchOutcome, Terminal,
};
use crate::design::{binom2, is_k_admissible, is_kk_divisible, PartialDesign};
use crate::equicolor::{equitable_color, lemma_colouring2_hypothesis, lemma_colouring3_hypothesis};
use crate::error::{Error, Result};
use crate::graph::DenseGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PipelinePath {
    Constructive,
    Fallback,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Solved { value: T, path: PipelinePath },
    /// The search completed without a solution. A certificate is attached
    /// when one of the known obstruction patterns is present.
    Impossible { certificate: Option<ObstructionCertificate> },
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineResult<T> {
    pub outcome: Outcome<T>,
    /// Why the constructive route was skipped or abandoned, if it was.
    pub diagnostics: Vec<String>,
}

impl<T> PipelineResult<T> {
    pub fn solved(&self) -> Option<&T> {
        match &self.outcome {
            Outcome::Solved { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn path(&self) -> Option<PipelinePath> {
        match &self.outcome {
            Outcome::Solved { path, .. } => Some(*path),
            _ => None,
        }
    }
}

/// Default `γ` for the low-degree set: `1/(3k+1)`, just below `1/(3k)`.
pub fn default_gamma(k: usize) -> Gamma {
    Gamma::new(1, 3 * k as u64 + 1)
}

/// Lowest-index vertex of minimum degree.
fn min_degree_vertex(g: &DenseGraph) -> usize {
    (0..g.order()).min_by_key(|&v| (g.degree(v), v)).expect("non-empty graph")
}

/// Cliques `X ∪ {z}` for an equitable colouring of `Ḡ[N(z)]` with `a`
/// colours, or the reason it could not be found.
fn cliques_through(g: &DenseGraph, z: usize, a: usize, k: usize) -> std::result::Result<Vec<Vec<usize>>, String> {
    let u = g.neighbors(z).to_vec();
    if a == 0 {
        return Ok(Vec::new());
    }
    let h = g.complement().induced(&u);
    let coloring = equitable_color(&h, a, k).map_err(|e| format!("colouring of N({z}) failed: {e}"))?;
    Ok(coloring
        .classes()
        .into_iter()
        .map(|class| {
            let mut c: Vec<usize> = class.into_iter().map(|i| u[i]).collect();
            c.push(z);
            c.sort_unstable();
            c
        })
        .collect())
}

enum Attempt {
    Done(CliqueDecomposition),
    Failed(String),
}

/// Removes `through_z` from `g`, decomposes what is left on `V − z` with the
/// terminal, and joins the two.
fn finish_without(
    g: &DenseGraph,
    k: usize,
    z: usize,
    through_z: Vec<Vec<usize>>,
    terminal: &dyn Terminal,
) -> Result<Attempt> {
    let mut rest = g.clone();
    for c in &through_z {
        rest.remove_clique(c);
    }
    if rest.degree(z) != 0 {
        return Err(Error::Internal(format!("vertex {z} keeps edges after its cliques were removed")));
    }
    let others: Vec<usize> = (0..g.order()).filter(|&v| v != z).collect();
    let residual = rest.induced(&others);
    Ok(match terminal.decompose(&residual, k)? {
        SearchOutcome::Found(d) => {
            let mut cliques = through_z;
            cliques.extend(d.cliques.into_iter().map(|c| c.into_iter().map(|i| others[i]).collect()));
            Attempt::Done(CliqueDecomposition::new(k, cliques))
        }
        SearchOutcome::Infeasible => Attempt::Failed("terminal found the residual infeasible".into()),
        SearchOutcome::BudgetExceeded => Attempt::Failed("terminal ran out of budget on the residual".into()),
    })
}

/// Whole-graph exact search after the constructive route gave up.
fn fallback<T>(
    g: &DenseGraph,
    k: usize,
    terminal: &dyn Terminal,
    diagnostics: Vec<String>,
    certificate: impl FnOnce() -> Option<ObstructionCertificate>,
    wrap: impl FnOnce(CliqueDecomposition) -> Result<T>,
) -> Result<PipelineResult<T>> {
    let outcome = match terminal.decompose(g, k)? {
        SearchOutcome::Found(d) => Outcome::Solved { value: wrap(d)?, path: PipelinePath::Fallback },
        SearchOutcome::Infeasible => Outcome::Impossible { certificate: certificate() },
        SearchOutcome::BudgetExceeded => Outcome::BudgetExceeded,
    };
    Ok(PipelineResult { outcome, diagnostics })
}

fn checked_decomposition(g: &DenseGraph, d: CliqueDecomposition) -> Result<CliqueDecomposition> {
    if d.is_decomposition_of(g) {
        Ok(d)
    } else {
        Err(Error::Internal("produced cliques do not partition the edges".into()))
    }
}

/// Completes a partial design of admissible order.
///
/// `z` is a point on the most blocks. The leave's complement restricted to
/// `N(z)` is the union of the other blocks' traces, which is equitably
/// coloured with `a = (n−1)/(k−1) − |A_z|` colours; each class plus `z` is
/// a new block. The rest of the leave goes to the terminal.
pub fn complete_design(d: &PartialDesign, terminal: &dyn Terminal) -> Result<PipelineResult<PartialDesign>> {
    let (n, k) = (d.n(), d.k());
    if k < 3 {
        return Err(Error::InvalidParameters(format!("block size k = {k} is below 3")));
    }
    d.validate().map_err(Error::InvalidDesign)?;
    if !is_k_admissible(n, k) {
        return Err(Error::NotAdmissible { n, k });
    }
    let g = d.leave()?;
    let wrap = |dec: CliqueDecomposition| -> Result<PartialDesign> {
        let dec = checked_decomposition(&g, dec)?;
        let mut blocks = d.blocks().to_vec();
        blocks.extend(dec.cliques);
        let done = PartialDesign::new(n, k, blocks).canonical();
        if done.completes(d) {
            Ok(done)
        } else {
            Err(Error::Internal("result is not a completion of the input".into()))
        }
    };

    let replication = d.replication();
    let z = (0..n).max_by_key(|&x| (replication[x], std::cmp::Reverse(x))).expect("n >= k");
    let a = (n - 1) / (k - 1) - replication[z];
    if g.degree(z) != a * (k - 1) {
        return Err(Error::Internal(format!("deg(z) = {} but a(k-1) = {}", g.degree(z), a * (k - 1))));
    }
    let within_bound = d.blocks().len() as i64 <= evans_block_bound(n, k)?;
    let others = d.blocks().len() - replication[z];
    if within_bound && others + k > a + 1 {
        return Err(Error::Internal(format!("|A'| = {others} exceeds a - k + 1 with a = {a}")));
    }

    let mut diagnostics = Vec::new();
    if !within_bound {
        diagnostics.push(format!("{} blocks exceed the guaranteed-completable count", d.blocks().len()));
    }
    match cliques_through(&g, z, a, k) {
        Ok(through_z) => match finish_without(&g, k, z, through_z, terminal)? {
            Attempt::Done(dec) => {
                return Ok(PipelineResult {
                    outcome: Outcome::Solved { value: wrap(dec)?, path: PipelinePath::Constructive },
                    diagnostics,
                })
            }
            Attempt::Failed(why) => diagnostics.push(why),
        },
        Err(why) => diagnostics.push(why),
    }
    fallback(&g, k, terminal, diagnostics, || scan_for_certificate(Target::Design(d), k), wrap)
}

fn check_graph_input(g: &DenseGraph, k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::InvalidParameters(format!("block size k = {k} is below 3")));
    }
    if !is_kk_divisible(g, k) {
        return Err(Error::NotDivisible { k });
    }
    Ok(())
}

/// Constructive route through a minimum-degree vertex, gated on `hypothesis`
/// for `Ḡ[N(z)]`, with whole-graph fallback.
fn via_min_degree_vertex(
    g: &DenseGraph,
    k: usize,
    terminal: &dyn Terminal,
    mut diagnostics: Vec<String>,
    hypothesis: impl Fn(&DenseGraph, usize) -> bool,
) -> Result<PipelineResult<CliqueDecomposition>> {
    let wrap = |dec| checked_decomposition(g, dec);
    let z = min_degree_vertex(g);
    let a = g.degree(z) / (k - 1);
    let through_z = if a == 0 {
        Ok(Vec::new())
    } else {
        let h = g.complement().induced(&g.neighbors(z).to_vec());
        if hypothesis(&h, a) {
            cliques_through(g, z, a, k)
        } else {
            Err(format!("colouring hypothesis fails for N({z}) with a = {a}"))
        }
    };
    match through_z {
        Ok(through_z) => match finish_without(g, k, z, through_z, terminal)? {
            Attempt::Done(dec) => {
                return Ok(PipelineResult {
                    outcome: Outcome::Solved { value: wrap(dec)?, path: PipelinePath::Constructive },
                    diagnostics,
                })
            }
            Attempt::Failed(why) => diagnostics.push(why),
        },
        Err(why) => diagnostics.push(why),
    }
    fallback(g, k, terminal, diagnostics, || scan_for_certificate(Target::Graph(g), k), wrap)
}

/// Decomposes a `K_k`-divisible graph of order `≡ 1 mod (k−1)`.
pub fn decompose_admissible_order(
    g: &DenseGraph,
    k: usize,
    terminal: &dyn Terminal,
) -> Result<PipelineResult<CliqueDecomposition>> {
    check_graph_input(g, k)?;
    let n = g.order();
    if n == 0 || !(n - 1).is_multiple_of(k - 1) {
        return Err(Error::Congruence { n, k });
    }
    via_min_degree_vertex(g, k, terminal, Vec::new(), |h, a| lemma_colouring2_hypothesis(h, a, k))
}

/// Decomposes a `K_k`-divisible graph of any order with the default `γ`.
pub fn decompose_any_order(
    g: &DenseGraph,
    k: usize,
    terminal: &dyn Terminal,
) -> Result<PipelineResult<CliqueDecomposition>> {
    decompose_any_order_with(g, k, terminal, default_gamma(k))
}

/// Dispatches on `(n−1) mod (k−1)`. `γ` sets the low-degree set used when
/// the residue is 0.
pub fn decompose_any_order_with(
    g: &DenseGraph,
    k: usize,
    terminal: &dyn Terminal,
    gamma: Gamma,
) -> Result<PipelineResult<CliqueDecomposition>> {
    check_graph_input(g, k)?;
    let n = g.order();
    let wrap = |dec| checked_decomposition(g, dec);
    if n == 0 {
        return fallback(g, k, terminal, Vec::new(), || None, wrap);
    }
    let missing = binom2(n) - g.edge_count();
    match (n - 1) % (k - 1) {
        0 => {
            let mut diagnostics = Vec::new();
            let report = check_lemma4_hypotheses(g, k, gamma)?;
            if !report.holds {
                diagnostics.push(format!(
                    "mutual-neighbourhood hypotheses fail at gamma = {gamma} ({} thin edges)",
                    report.thin_edges.len()
                ));
            }
            let s = derive_low_degree_set(g, gamma)?;
            match inductive_decompose(g, k, &s, terminal)? {
                InductiveOutcome::Decomposed { decomposition, .. } => Ok(PipelineResult {
                    outcome: Outcome::Solved { value: wrap(decomposition)?, path: PipelinePath::Constructive },
                    diagnostics,
                }),
                InductiveOutcome::Stalled(f) => {
                    diagnostics.push(format!("inductive removal stalled: {:?}", f.reason));
                    fallback(g, k, terminal, diagnostics, || scan_for_certificate(Target::Graph(g), k), wrap)
                }
            }
        }
        1 => {
            if k == 3 && missing + 2 == n {
                return Err(Error::Internal("a K_3-divisible graph cannot miss exactly n - 2 edges".into()));
            }
            let rho = if k == 3 && missing + 1 == n { 2 } else { 0 };
            let diagnostics = vec![format!("rho = {rho}")];
            via_min_degree_vertex(g, k, terminal, diagnostics, |h, a| lemma_colouring3_hypothesis(h, a, k))
        }
        j => {
            // every complement degree is ≡ j, so the complement has ≥ jn/2 edges
            let diagnostics = vec![format!(
                "order residue {j} forces at least {} missing edges; no constructive route",
                (j * n).div_ceil(2)
            )];
            fallback(g, k, terminal, diagnostics, || scan_for_certificate(Target::Graph(g), k), wrap)
        }
    }
}

/// Routes a graph to the right procedure: graphs that are not
/// `K_k`-divisible are impossible outright, orders `≡ 1 mod (k−1)` go
/// through [`decompose_admissible_order`] unless a `γ` is given, and the
/// rest through [`decompose_any_order_with`].
pub fn decompose(
    g: &DenseGraph,
    k: usize,
    terminal: &dyn Terminal,
    gamma: Option<Gamma>,
) -> Result<PipelineResult<CliqueDecomposition>> {
    if k < 3 {
        return Err(Error::InvalidParameters(format!("block size k = {k} is below 3")));
    }
    if !is_kk_divisible(g, k) {
        return Ok(PipelineResult {
            outcome: Outcome::Impossible { certificate: None },
            diagnostics: vec![format!("graph is not K_{k}-divisible")],
        });
    }
    let n = g.order();
    match gamma {
        Some(gamma) => decompose_any_order_with(g, k, terminal, gamma),
        None if n > 0 && (n - 1).is_multiple_of(k - 1) => decompose_admissible_order(g, k, terminal),
        None => decompose_any_order(g, k, terminal),
    }
}
