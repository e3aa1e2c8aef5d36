//! Hypothesis checkers for the inductive removal procedure and for the
//! mutual-neighbourhood decomposition criterion. `γ` is an exact rational
//! and every threshold is compared by integer cross-multiplication.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DenseGraph, VertexSet};

pub type Gamma = Ratio<u64>;

/// Parses `"p/q"` (or a bare integer) and requires `0 < γ < 1`.
pub fn parse_gamma(s: &str) -> Result<Gamma> {
    let bad = || Error::InvalidParameters(format!("gamma must be a rational p/q in (0,1), got {s:?}"));
    let g: Gamma = s.trim().parse().map_err(|_| bad())?;
    check_gamma(g).map_err(|_| bad())?;
    Ok(g)
}

fn check_gamma(g: Gamma) -> Result<(i128, i128)> {
    let (p, q) = (*g.numer() as i128, *g.denom() as i128);
    if p <= 0 || p >= q {
        return Err(Error::InvalidParameters(format!("gamma = {g} is not in (0,1)")));
    }
    Ok((p, q))
}

/// Vertices whose complement degree is at least `γn/2`, by descending
/// complement degree then index.
pub fn derive_low_degree_set(g: &DenseGraph, gamma: Gamma) -> Result<Vec<usize>> {
    let (p, q) = check_gamma(gamma)?;
    let n = g.order();
    let codeg = |v: usize| (n - 1 - g.degree(v)) as i128;
    let mut s: Vec<usize> = (0..n).filter(|&v| 2 * q * codeg(v) >= p * n as i128).collect();
    s.sort_by_key(|&v| (std::cmp::Reverse(codeg(v)), v));
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma4Report {
    pub holds: bool,
    /// `|E(G)| ≥ (1 − γ²/(4k))·C(n,2)`.
    pub dense_enough: bool,
    /// Edges `xy` with `|N(x,y)| ≤ kγn`.
    pub thin_edges: Vec<(usize, usize)>,
}

/// Edge density `≥ 1 − γ²/(4k)` and every edge in more than `kγn` triangles.
pub fn check_lemma4_hypotheses(g: &DenseGraph, k: usize, gamma: Gamma) -> Result<Lemma4Report> {
    let (p, q) = check_gamma(gamma)?;
    let n = g.order() as i128;
    let k = k as i128;
    let pairs = n * (n - 1) / 2;
    let e = g.edge_count() as i128;
    let dense_enough = 4 * k * q * q * e >= (4 * k * q * q - p * p) * pairs;
    let thin_edges: Vec<_> = g
        .edges()
        .into_iter()
        .filter(|&(x, y)| {
            let common = g.neighbors(x).intersection_len(g.neighbors(y)) as i128;
            q * common <= k * p * n
        })
        .collect();
    Ok(Lemma4Report { holds: dense_enough && thin_edges.is_empty(), dense_enough, thin_edges })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma3Report {
    pub holds: bool,
    /// Vertices outside `S` violating (i).
    pub outside_violations: Vec<usize>,
    /// Vertices of `S` violating (ii).
    pub inside_violations: Vec<usize>,
    /// Edges `z_i z_j` (`i < j`, as vertex labels) violating (iii).
    pub edge_violations: Vec<(usize, usize)>,
}

/// `ℓ_G(z_i z_j) = |N(z_i) ∩ {z_1..z_{j−1}}| + |N(z_j) ∩ {z_1..z_{i−1}}|`
/// with 0-based positions `i < j` in `s`.
pub(crate) fn preceding_adjacent_edges(g: &DenseGraph, s: &[usize], i: usize, j: usize) -> usize {
    let before = |m: usize| VertexSet::from_iter(g.order(), s[..m].iter().copied());
    g.neighbors(s[i]).intersection_len(&before(j)) + g.neighbors(s[j]).intersection_len(&before(i))
}

pub(crate) fn sequence_set(g: &DenseGraph, s: &[usize]) -> Result<VertexSet> {
    let mut set = VertexSet::empty(g.order());
    for &z in s {
        if z >= g.order() || set.contains(z) {
            return Err(Error::InvalidParameters(format!(
                "S must list distinct vertices of the graph; bad entry {z}"
            )));
        }
        set.insert(z);
    }
    Ok(set)
}

/// Evaluates conditions (i)–(iii) of the inductive removal procedure for
/// the indexed set `s`.
pub fn check_lemma3_hypotheses(g: &DenseGraph, k: usize, s: &[usize], gamma: Gamma) -> Result<Lemma3Report> {
    let (p, q) = check_gamma(gamma)?;
    let in_s = sequence_set(g, s)?;
    let n = g.order() as i128;
    let km2 = k as i128 - 2;
    let split = |x: usize| {
        let inside = g.neighbors(x).intersection_len(&in_s) as i128;
        (g.degree(x) as i128 - inside, inside)
    };

    let outside_violations: Vec<usize> = (0..g.order())
        .filter(|&x| !in_s.contains(x))
        .filter(|&x| {
            let (out, inside) = split(x);
            q * out < (q - p) * n + q * km2 * inside
        })
        .collect();

    let inside_violations: Vec<usize> = s
        .iter()
        .copied()
        .filter(|&z| {
            if g.degree(z) == 0 {
                return false;
            }
            let (out, inside) = split(z);
            q * out <= (k as i128 - 1) * p * n + q * km2 * inside
        })
        .collect();

    let mut edge_violations = Vec::new();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if !g.has_edge(s[i], s[j]) {
                continue;
            }
            let mut common = g.common_neighbors(s[i], s[j]);
            common.difference_with(&in_s);
            let ell = preceding_adjacent_edges(g, s, i, j) as i128;
            if q * common.len() as i128 <= (k as i128 - 3) * p * n + q * km2 * ell {
                edge_violations.push((s[i], s[j]));
            }
        }
    }

    Ok(Lemma3Report {
        holds: outside_violations.is_empty() && inside_violations.is_empty() && edge_violations.is_empty(),
        outside_violations,
        inside_violations,
        edge_violations,
    })
}
