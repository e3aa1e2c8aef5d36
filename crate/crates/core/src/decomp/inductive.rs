//! Inductive clique removal around an indexed vertex sequence `S`.
//!
//! While some `z ∈ S` still has edges, one of two moves removes cliques:
//! if `G[S]` has an edge, the lexicographically first one `z_i z_j` is
//! completed by a `(k−2)`-clique from `N(z_i,z_j) \ S`; otherwise some
//! `z_i` with neighbours has `G[N(z_i)]` split into a `K_{k−1}`-factor and
//! every part joined to `z_i`. Each move lowers `σ(G) = Σ_{z∈S} deg(z)`.
//! Once `σ = 0` the vertices of `S` are dropped and the rest is handed to a
//! terminal decomposer.

use serde::Serialize;

use super::exact::{SearchOutcome, Terminal};
use super::hypotheses::{check_lemma3_hypotheses, sequence_set, Gamma};
use super::CliqueDecomposition;
use crate::clique::{find_clique_factor, find_clique_in_mutual_neighborhood};
use crate::design::is_kk_divisible;
use crate::error::{Error, Result};
use crate::graph::DenseGraph;

/// `σ(G) = Σ_{z∈S} deg_G(z)`.
pub fn sigma(g: &DenseGraph, s: &[usize]) -> usize {
    s.iter().map(|&z| g.degree(z)).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum RemovalCase {
    /// An edge `z_i z_j` of `G[S]` was completed to a clique.
    EdgeInS { zi: usize, zj: usize },
    /// All edges at `z` were covered by a clique factor of its neighbourhood.
    StarAt { z: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InductiveStep {
    pub case: RemovalCase,
    pub sigma_before: usize,
    pub sigma_after: usize,
    pub cliques: Vec<Vec<usize>>,
    pub divisible_after: bool,
    /// Conditions (i)–(iii) re-evaluated after the step, when requested.
    pub hypotheses_after: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StallReason {
    NoCliqueInMutualNeighborhood { zi: usize, zj: usize },
    NoCliqueFactor { z: usize },
    TerminalInfeasible,
    TerminalBudget,
}

#[derive(Clone, Debug)]
pub struct InductiveFailure {
    pub reason: StallReason,
    /// Graph at the point of failure.
    pub state: DenseGraph,
    pub trace: Vec<InductiveStep>,
}

#[derive(Clone, Debug)]
pub enum InductiveOutcome {
    Decomposed { decomposition: CliqueDecomposition, trace: Vec<InductiveStep> },
    Stalled(Box<InductiveFailure>),
}

#[derive(Clone, Copy, Debug, Default)]
pub struct InductiveOptions {
    /// Re-check conditions (i)–(iii) with this `γ` after every removal.
    pub recheck_gamma: Option<Gamma>,
}

pub fn inductive_decompose(
    g: &DenseGraph,
    k: usize,
    s: &[usize],
    terminal: &dyn Terminal,
) -> Result<InductiveOutcome> {
    inductive_decompose_with(g, k, s, terminal, InductiveOptions::default())
}

pub fn inductive_decompose_with(
    g: &DenseGraph,
    k: usize,
    s: &[usize],
    terminal: &dyn Terminal,
    options: InductiveOptions,
) -> Result<InductiveOutcome> {
    if k < 3 {
        return Err(Error::InvalidParameters(format!("block size k = {k} is below 3")));
    }
    if !is_kk_divisible(g, k) {
        return Err(Error::NotDivisible { k });
    }
    let in_s = sequence_set(g, s)?;
    let mut current = g.clone();
    let mut removed: Vec<Vec<usize>> = Vec::new();
    let mut trace = Vec::new();

    let stall = |reason, state: &DenseGraph, trace: Vec<InductiveStep>| {
        Ok(InductiveOutcome::Stalled(Box::new(InductiveFailure { reason, state: state.clone(), trace })))
    };

    loop {
        let sigma_before = sigma(&current, s);
        if sigma_before == 0 {
            break;
        }
        let (case, cliques) = if let Some((zi, zj)) = first_edge_in_sequence(&current, s) {
            let Some(x) = find_clique_in_mutual_neighborhood(&current, zi, zj, &in_s, k - 2) else {
                return stall(StallReason::NoCliqueInMutualNeighborhood { zi, zj }, &current, trace);
            };
            let mut clique = x;
            clique.extend([zi, zj]);
            clique.sort_unstable();
            (RemovalCase::EdgeInS { zi, zj }, vec![clique])
        } else {
            let z = *s.iter().find(|&&z| current.degree(z) > 0).expect("sigma > 0");
            let nbhd = current.neighbors(z).to_vec();
            let local = current.induced(&nbhd);
            let Some(parts) = find_clique_factor(&local, k - 1)? else {
                return stall(StallReason::NoCliqueFactor { z }, &current, trace);
            };
            let cliques = parts
                .into_iter()
                .map(|p| {
                    let mut c: Vec<usize> = p.into_iter().map(|i| nbhd[i]).collect();
                    c.push(z);
                    c.sort_unstable();
                    c
                })
                .collect();
            (RemovalCase::StarAt { z }, cliques)
        };
        for c in &cliques {
            current.remove_clique(c);
        }
        let sigma_after = sigma(&current, s);
        let divisible_after = is_kk_divisible(&current, k);
        debug_assert!(divisible_after, "clique removal broke divisibility");
        debug_assert!(sigma_after < sigma_before);
        let hypotheses_after = match options.recheck_gamma {
            Some(gamma) => Some(check_lemma3_hypotheses(&current, k, s, gamma)?.holds),
            None => None,
        };
        removed.extend(cliques.iter().cloned());
        trace.push(InductiveStep { case, sigma_before, sigma_after, cliques, divisible_after, hypotheses_after });
    }

    // S is now isolated; decompose what remains on V \ S
    let rest: Vec<usize> = (0..current.order()).filter(|&v| !in_s.contains(v)).collect();
    let residual = current.induced(&rest);
    match terminal.decompose(&residual, k)? {
        SearchOutcome::Found(d) => {
            removed.extend(d.cliques.into_iter().map(|c| c.into_iter().map(|i| rest[i]).collect()));
            Ok(InductiveOutcome::Decomposed { decomposition: CliqueDecomposition::new(k, removed), trace })
        }
        SearchOutcome::Infeasible => stall(StallReason::TerminalInfeasible, &current, trace),
        SearchOutcome::BudgetExceeded => stall(StallReason::TerminalBudget, &current, trace),
    }
}

/// Lexicographically first edge `z_i z_j` (`i < j` positions in `s`) of
/// `G[S]`.
fn first_edge_in_sequence(g: &DenseGraph, s: &[usize]) -> Option<(usize, usize)> {
    (0..s.len()).find_map(|i| (i + 1..s.len()).find(|&j| g.has_edge(s[i], s[j])).map(|j| (s[i], s[j])))
}
