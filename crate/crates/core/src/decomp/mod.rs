//! `K_k`-decompositions: the exact backtracking solver, the inductive
//! clique-removal procedure, and the hypothesis checkers that drive it.

mod exact;
mod hypotheses;
mod inductive;

pub use exact::{exact_decompose, exact_decompose_parallel, ExactTerminal, SearchOutcome, Terminal};
pub use hypotheses::{
    check_lemma3_hypotheses, check_lemma4_hypotheses, derive_low_degree_set, parse_gamma, Gamma,
    Lemma3Report, Lemma4Report,
};
pub use inductive::{
    inductive_decompose, inductive_decompose_with, sigma, InductiveFailure, InductiveOptions,
    InductiveOutcome, InductiveStep, RemovalCase, StallReason,
};

use crate::graph::DenseGraph;

/// A list of `k`-sets whose cliques are meant to partition a graph's edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueDecomposition {
    pub k: usize,
    pub cliques: Vec<Vec<usize>>,
}

impl CliqueDecomposition {
    pub fn new(k: usize, cliques: Vec<Vec<usize>>) -> Self {
        let cliques = cliques
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        CliqueDecomposition { k, cliques }
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// Cliques sorted lexicographically.
    pub fn canonical(mut self) -> Self {
        self.cliques.sort();
        self
    }

    /// Every clique is a `k`-clique of `g` and each edge of `g` is covered
    /// exactly once.
    pub fn is_decomposition_of(&self, g: &DenseGraph) -> bool {
        let mut left = g.clone();
        for c in &self.cliques {
            if c.len() != self.k || c.iter().any(|&v| v >= g.order()) || !left.is_clique(c) {
                return false;
            }
            left.remove_clique(c);
        }
        !left.has_edges()
    }
}
