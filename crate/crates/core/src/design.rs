//! Partial `(n,k,1)`-designs, their leaves, and the divisibility predicates
//! shared by every other module.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::DenseGraph;

/// `n` points `0..n` and a list of `k`-subsets (blocks). May hold invalid
/// data; [`PartialDesign::validate`] decides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialDesign {
    n: usize,
    k: usize,
    blocks: Vec<Vec<usize>>,
}

/// Why a block list fails to be a partial design.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Parameters { n: usize, k: usize },
    BlockSize { block: usize, len: usize },
    PointOutOfRange { block: usize, point: usize },
    RepeatedPoint { block: usize, point: usize },
    RepeatedPair { pair: (usize, usize), first: usize, second: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Parameters { n, k } => write!(f, "need n >= 1 and k >= 2, got n={n}, k={k}"),
            Violation::BlockSize { block, len } => {
                write!(f, "block {block} has {len} points")
            }
            Violation::PointOutOfRange { block, point } => {
                write!(f, "block {block} contains point {point} outside the point set")
            }
            Violation::RepeatedPoint { block, point } => {
                write!(f, "block {block} repeats point {point}")
            }
            Violation::RepeatedPair { pair: (x, y), first, second } => {
                write!(f, "pair {{{x},{y}}} occurs in blocks {first} and {second}")
            }
        }
    }
}

impl PartialDesign {
    /// Stores each block sorted ascending; block order is kept.
    pub fn new(n: usize, k: usize, blocks: Vec<Vec<usize>>) -> Self {
        let blocks = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        PartialDesign { n, k, blocks }
    }

    pub fn empty(n: usize, k: usize) -> Self {
        PartialDesign { n, k, blocks: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Vec<usize>> {
        self.blocks
    }

    /// Same design with the block list sorted lexicographically.
    pub fn canonical(mut self) -> Self {
        self.blocks.sort();
        self
    }

    /// Number of blocks through each point (`|A_x|`).
    pub fn replication(&self) -> Vec<usize> {
        let mut r = vec![0; self.n];
        for b in &self.blocks {
            for &x in b {
                if x < self.n {
                    r[x] += 1;
                }
            }
        }
        r
    }

    pub fn blocks_through(&self, x: usize) -> impl Iterator<Item = &Vec<usize>> {
        self.blocks.iter().filter(move |b| b.contains(&x))
    }

    /// Checks block sizes, point ranges and that no pair is covered twice.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let (n, k) = (self.n, self.k);
        if n == 0 || k < 2 {
            return Err(Violation::Parameters { n, k });
        }
        // owner[x*n+y] = 1 + index of the block covering {x,y}
        let mut owner = vec![0usize; n * n];
        for (i, b) in self.blocks.iter().enumerate() {
            if b.len() != k {
                return Err(Violation::BlockSize { block: i, len: b.len() });
            }
            if let Some(&p) = b.iter().find(|&&p| p >= n) {
                return Err(Violation::PointOutOfRange { block: i, point: p });
            }
            if let Some(w) = b.windows(2).find(|w| w[0] == w[1]) {
                return Err(Violation::RepeatedPoint { block: i, point: w[0] });
            }
            for (a, &x) in b.iter().enumerate() {
                for &y in &b[a + 1..] {
                    let slot = &mut owner[x * n + y];
                    if *slot != 0 {
                        return Err(Violation::RepeatedPair {
                            pair: (x, y),
                            first: *slot - 1,
                            second: i,
                        });
                    }
                    *slot = i + 1;
                }
            }
        }
        Ok(())
    }

    /// Graph of pairs covered by no block.
    pub fn leave(&self) -> Result<DenseGraph> {
        self.validate().map_err(Error::InvalidDesign)?;
        let mut g = DenseGraph::complete(self.n);
        for b in &self.blocks {
            g.remove_clique(b);
        }
        Ok(g)
    }

    /// True when every pair of points lies in exactly one block.
    pub fn is_complete_design(&self) -> bool {
        self.validate().is_ok()
            && self.blocks.len() * binom2(self.k) == binom2(self.n)
    }

    /// True when `self` is a full design containing every block of `partial`.
    pub fn completes(&self, partial: &PartialDesign) -> bool {
        if self.n != partial.n || self.k != partial.k || !self.is_complete_design() {
            return false;
        }
        let mut mine: Vec<&Vec<usize>> = self.blocks.iter().collect();
        mine.sort();
        partial
            .blocks
            .iter()
            .all(|b| mine.binary_search(&b).is_ok())
    }
}

pub(crate) fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `|E| ≡ 0 mod C(k,2)` and every degree `≡ 0 mod (k-1)`.
pub fn is_kk_divisible(g: &DenseGraph, k: usize) -> bool {
    assert!(k >= 2, "k must be at least 2");
    g.edge_count().is_multiple_of(binom2(k)) && g.degrees().iter().all(|d| d % (k - 1) == 0)
}

/// `n(n-1) ≡ 0 mod k(k-1)` and `n ≡ 1 mod (k-1)`.
pub fn is_k_admissible(n: usize, k: usize) -> bool {
    assert!(k >= 2, "k must be at least 2");
    n >= 1 && (n * (n - 1)).is_multiple_of(k * (k - 1)) && n % (k - 1) == 1 % (k - 1)
}
