//! Extremal constructions sitting exactly at each bound, and checkers for
//! the two counting obstructions that rule out their completion or
//! decomposition.
//!
//! Labels are canonical: the special vertex is `z = 0` and the remaining
//! structures fill ascending ranges of points.

use serde::{Deserialize, Serialize};

use crate::design::{binom2, is_k_admissible, is_kk_divisible, PartialDesign};
use crate::error::{Error, Result};
use crate::graph::DenseGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    /// `z` is short of blocks (or cliques) to cover its pairs with `A0`.
    StarObstruction,
    /// `deg(z) = k−1` forces `{z} ∪ N(z)` to be a block, but it is not a clique.
    ForcedBlock,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionCertificate {
    pub kind: CertificateKind,
    pub z: usize,
    #[serde(rename = "A0", default, skip_serializing_if = "Vec::is_empty")]
    pub a0: Vec<usize>,
}

impl ObstructionCertificate {
    pub fn star(z: usize, a0: Vec<usize>) -> Self {
        ObstructionCertificate { kind: CertificateKind::StarObstruction, z, a0 }
    }

    pub fn forced_block(z: usize) -> Self {
        ObstructionCertificate { kind: CertificateKind::ForcedBlock, z, a0: Vec::new() }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Target<'a> {
    Design(&'a PartialDesign),
    Graph(&'a DenseGraph),
}

#[derive(Clone, Debug)]
pub struct TightDesign {
    pub design: PartialDesign,
    pub certificate: ObstructionCertificate,
}

#[derive(Clone, Debug)]
pub struct TightGraph {
    pub graph: DenseGraph,
    pub certificate: ObstructionCertificate,
}

fn bad(msg: String) -> Error {
    Error::InvalidParameters(msg)
}

/// `count` consecutive points starting at `start`.
fn run(start: usize, count: usize) -> Vec<usize> {
    (start..start + count).collect()
}

/// `m` blocks through `0` on points `1..=m(k−1)`, each adding a fresh run
/// of `k−1` points.
fn blocks_through_zero(m: usize, k: usize) -> Vec<Vec<usize>> {
    (0..m)
        .map(|i| {
            let mut b = vec![0];
            b.extend(run(1 + i * (k - 1), k - 1));
            b
        })
        .collect()
}

/// A non-completable partial design with `(n−1)/(k−1) − k + 2` blocks:
/// `(n−1)/(k−1) − k + 1` blocks through `z = 0` and one block `A0`
/// disjoint from them.
pub fn construct_uncompletable_design(n: usize, k: usize) -> Result<TightDesign> {
    if k < 3 {
        return Err(bad(format!("block size k = {k} is below 3")));
    }
    if !is_k_admissible(n, k) {
        return Err(Error::NotAdmissible { n, k });
    }
    if n < (k - 1) * (k - 1) + 1 {
        return Err(bad(format!("n = {n} is below (k-1)^2 + 1 = {}", (k - 1) * (k - 1) + 1)));
    }
    let m = (n - 1) / (k - 1) + 1 - k;
    let mut blocks = blocks_through_zero(m, k);
    let a0 = run(1 + m * (k - 1), k);
    debug_assert!(a0.last().is_some_and(|&p| p < n));
    blocks.push(a0.clone());
    Ok(TightDesign { design: PartialDesign::new(n, k, blocks), certificate: ObstructionCertificate::star(0, a0) })
}

/// `K_n` minus the cliques on `sets`.
fn complement_of_cliques(n: usize, sets: &[Vec<usize>]) -> DenseGraph {
    let mut g = DenseGraph::complete(n);
    for s in sets {
        g.remove_clique(s);
    }
    g
}

fn check_divisible(g: &DenseGraph, k: usize) -> Result<()> {
    if is_kk_divisible(g, k) {
        Ok(())
    } else {
        Err(Error::Internal(format!("constructed graph is not K_{k}-divisible")))
    }
}

/// A `K_k`-divisible, non-decomposable graph of admissible order with
/// `((n−1)/(k−1) − ℓ)·C(k,2)` missing edges, for `k = 3` or `k ≡ 2 mod 4`.
///
/// For `k = 3` this is the leave of [`construct_uncompletable_design`].
/// Otherwise the complement is `t = (n−1)/(k−1) − k(k−1)/2` cliques of
/// order `k` through `z = 0` plus a disjoint clique `A0` of order
/// `k(k−1)/2 + 1`.
pub fn construct_thm2_tight_graph(n: usize, k: usize) -> Result<TightGraph> {
    if k != 3 && k % 4 != 2 {
        return Err(bad(format!("k = {k} is neither 3 nor 2 mod 4")));
    }
    if !is_k_admissible(n, k) {
        return Err(Error::NotAdmissible { n, k });
    }
    let half = k * (k - 1) / 2;
    if n < half * (k - 1) + 1 {
        return Err(bad(format!("n = {n} is below k(k-1)^2/2 + 1 = {}", half * (k - 1) + 1)));
    }
    let (graph, a0) = if k == 3 {
        let tight = construct_uncompletable_design(n, k)?;
        (tight.design.leave()?, tight.certificate.a0)
    } else {
        let r = (n - 1) / (k - 1);
        let t = r.checked_sub(half).ok_or_else(|| bad(format!("t = {r} - {half} is negative")))?;
        let mut sets = blocks_through_zero(t, k);
        let a0 = run(1 + t * (k - 1), half + 1);
        if a0.last().is_some_and(|&p| p >= n) {
            return Err(bad(format!("n = {n} is too small to hold A0")));
        }
        sets.push(a0.clone());
        (complement_of_cliques(n, &sets), a0)
    };
    let missing = binom2(n) - graph.edge_count();
    let expected = (4 * (n - 1) / (k - 1) - crate::bounds::four_ell(k) as usize) * binom2(k) / 4;
    if missing != expected {
        return Err(Error::Internal(format!("complement has {missing} edges, expected {expected}")));
    }
    check_divisible(&graph, k)?;
    Ok(TightGraph { graph, certificate: ObstructionCertificate::star(0, a0) })
}

/// A `K_k`-divisible, non-decomposable graph on `n = s(k−1)+2` vertices
/// whose complement is a star with `n−k` edges at `z = 0` plus a perfect
/// matching on the other `k−1` vertices. Needs `k | s²−s−1`.
pub fn construct_thm3_tight_graph(k: usize, s: usize) -> Result<TightGraph> {
    if k < 3 || s < 1 {
        return Err(bad(format!("need k >= 3 and s >= 1, got k = {k}, s = {s}")));
    }
    if !(s * s - s - 1).is_multiple_of(k) {
        return Err(bad(format!("k = {k} does not divide s^2 - s - 1 = {}", s * s - s - 1)));
    }
    let n = s * (k - 1) + 2;
    let mut g = DenseGraph::complete(n);
    for leaf in 1..=n - k {
        g.remove_edge(0, leaf);
    }
    for u in (n - k + 1..n).step_by(2) {
        g.remove_edge(u, u + 1);
    }
    let missing = binom2(n) - g.edge_count();
    if 2 * missing != 2 * n - (k + 1) {
        return Err(Error::Internal(format!("complement has {missing} edges, expected n - (k+1)/2")));
    }
    check_divisible(&g, k)?;
    Ok(TightGraph { graph: g, certificate: ObstructionCertificate::forced_block(0) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum K3Case {
    /// `n ≡ 0 mod 6`, `n ≥ 12`: complement is a star, a `K_4` and a `K_2`.
    A,
    /// `n ≡ 5 mod 6`, `n ≥ 11`: triangles through `z`, a `K_5`, three isolated vertices.
    B,
    /// `n ≡ 2, 4 mod 6`, `n ≥ 8`: a star plus five edges on `{u, v, x, y}`.
    C,
}

impl K3Case {
    pub fn for_order(n: usize) -> Option<K3Case> {
        match n % 6 {
            0 if n >= 12 => Some(K3Case::A),
            5 if n >= 11 => Some(K3Case::B),
            2 | 4 if n >= 8 => Some(K3Case::C),
            _ => None,
        }
    }
}

/// Non-`K_3`-decomposable, `K_3`-divisible graphs for the orders not
/// covered by [`construct_thm2_tight_graph`]. The case follows from `n`.
pub fn construct_k3_tight_graph(n: usize) -> Result<TightGraph> {
    let case = K3Case::for_order(n).ok_or_else(|| {
        bad(format!("n = {n} is not >= 12 with n = 0, >= 11 with n = 5, or >= 8 with n = 2,4 (mod 6)"))
    })?;
    let mut g = DenseGraph::complete(n);
    let (expected, certificate) = match case {
        K3Case::A => {
            for leaf in 1..=n - 7 {
                g.remove_edge(0, leaf);
            }
            let a0 = run(n - 6, 4);
            g.remove_clique(&a0);
            g.remove_edge(n - 2, n - 1);
            (n, ObstructionCertificate::star(0, a0))
        }
        K3Case::B => {
            for i in (1..=n - 9).step_by(2) {
                g.remove_clique(&[0, i, i + 1]);
            }
            let a0 = run(n - 8, 5);
            g.remove_clique(&a0);
            ((3 * n - 7) / 2, ObstructionCertificate::star(0, a0))
        }
        K3Case::C => {
            for leaf in 1..=n - 3 {
                g.remove_edge(0, leaf);
            }
            let (u, v, x, y) = (1, 2, n - 2, n - 1);
            for (p, q) in [(u, x), (u, y), (v, x), (v, y), (x, y)] {
                g.remove_edge(p, q);
            }
            (n + 2, ObstructionCertificate::forced_block(0))
        }
    };
    let missing = binom2(n) - g.edge_count();
    if missing != expected {
        return Err(Error::Internal(format!("complement has {missing} edges, expected {expected}")));
    }
    check_divisible(&g, 3)?;
    Ok(TightGraph { graph: g, certificate })
}

/// Checks the certificate's counting argument against `target`. `true`
/// proves that no completion (or decomposition) exists; `false` only means
/// this certificate does not apply.
///
/// Design form of a star obstruction: `A0` is a block avoiding `z`, and the
/// points of `A0` whose pair with `z` is still uncovered outnumber the
/// `(n−1)/(k−1) − |A_z|` blocks `z` still has to receive. No new block can
/// cover two of those pairs, since any two points of `A0` already share a
/// block.
///
/// Graph form: `A0 ⊆ N(z)` is independent and `(k−1)|A0| > deg(z)`.
pub fn verify_certificate(target: Target<'_>, k: usize, cert: &ObstructionCertificate) -> Result<bool> {
    if k < 2 {
        return Err(bad(format!("block size k = {k} is below 2")));
    }
    match (target, cert.kind) {
        (Target::Design(_), CertificateKind::ForcedBlock) => Err(Error::CertificateKind(
            "forced_block certificates apply to graphs, not designs".into(),
        )),
        (Target::Design(d), CertificateKind::StarObstruction) => Ok(design_star_holds(d, k, cert)),
        (Target::Graph(g), CertificateKind::StarObstruction) => Ok(graph_star_holds(g, k, cert)),
        (Target::Graph(g), CertificateKind::ForcedBlock) => Ok(forced_block_holds(g, k, cert.z)),
    }
}

fn design_star_holds(d: &PartialDesign, k: usize, cert: &ObstructionCertificate) -> bool {
    let (n, z) = (d.n(), cert.z);
    if d.k() != k || z >= n || d.validate().is_err() || !is_k_admissible(n, k) {
        return false;
    }
    let mut a0 = cert.a0.clone();
    a0.sort_unstable();
    if a0.contains(&z) || !d.blocks().contains(&a0) {
        return false;
    }
    let quota = (n - 1) / (k - 1) - d.blocks_through(z).count();
    let uncovered = a0
        .iter()
        .filter(|&&x| !d.blocks_through(z).any(|b| b.contains(&x)))
        .count();
    uncovered > quota
}

fn graph_star_holds(g: &DenseGraph, k: usize, cert: &ObstructionCertificate) -> bool {
    let z = cert.z;
    if z >= g.order() || cert.a0.is_empty() {
        return false;
    }
    let mut a0 = cert.a0.clone();
    a0.sort_unstable();
    a0.dedup();
    a0.len() == cert.a0.len()
        && a0.iter().all(|&x| x < g.order() && g.has_edge(z, x))
        && g.is_independent(&a0)
        && a0.len() * (k - 1) > g.degree(z)
}

fn forced_block_holds(g: &DenseGraph, k: usize, z: usize) -> bool {
    if z >= g.order() || g.degree(z) != k - 1 {
        return false;
    }
    let mut block = g.neighbors(z).to_vec();
    block.push(z);
    !g.is_clique(&block)
}

/// Looks for either obstruction pattern in `target`. Misses are expected;
/// certificates are sufficient, not necessary.
pub(crate) fn scan_for_certificate(target: Target<'_>, k: usize) -> Option<ObstructionCertificate> {
    match target {
        Target::Design(d) => (0..d.n()).find_map(|z| {
            d.blocks()
                .iter()
                .filter(|b| !b.contains(&z))
                .map(|b| ObstructionCertificate::star(z, b.clone()))
                .find(|c| design_star_holds(d, k, c))
        }),
        Target::Graph(g) => {
            let forced = (0..g.order())
                .find(|&z| forced_block_holds(g, k, z))
                .map(ObstructionCertificate::forced_block);
            forced.or_else(|| {
                (0..g.order()).find_map(|z| {
                    let nbhd = g.neighbors(z).to_vec();
                    nbhd.iter().find_map(|&start| {
                        // greedy independent set of G[N(z)] seeded at `start`
                        let mut a0 = vec![start];
                        for &x in &nbhd {
                            if a0.iter().all(|&y| y != x && !g.has_edge(x, y)) {
                                a0.push(x);
                            }
                        }
                        let cert = ObstructionCertificate::star(z, a0);
                        graph_star_holds(g, k, &cert).then_some(cert)
                    })
                })
            })
        }
    }
}
