//! Greedy-with-recolouring equitable colouring.
//!
//! Vertices of a graph `H` on `a(k−1)` vertices are coloured along a
//! degeneracy ordering with `a` colours, each class capped at `k−1`. When
//! the next vertex `v_j` sees every non-full colour on a neighbour, one
//! already coloured vertex `u` from a full class is moved to a
//! neighbouring-but-not-full colour `c'` and `v_j` takes `u`'s old colour.
//! Three independent sufficient conditions guarantee the swap vertex always
//! exists; they are exposed as separate predicates and the engine itself
//! never consults them.

use std::fmt;

use serde::Serialize;

use crate::bounds::four_ell;
use crate::graph::{DenseGraph, VertexSet};

/// Degeneracy ordering: every `v_i` has minimum degree in `H[{v_1..v_i}]`.
///
/// Built back to front by repeatedly deleting a minimum-degree vertex.
/// Among tied vertices the highest index is deleted first, so lower
/// indices end up earlier and an edgeless graph keeps its natural order.
pub fn degeneracy_ordering(h: &DenseGraph) -> Vec<usize> {
    let n = h.order();
    let mut degree = h.degrees();
    let mut alive = vec![true; n];
    let mut order = vec![0; n];
    for slot in (0..n).rev() {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (degree[v], std::cmp::Reverse(v)))
            .expect("a vertex remains");
        order[slot] = v;
        alive[v] = false;
        for u in h.neighbors(v).iter() {
            if alive[u] {
                degree[u] -= 1;
            }
        }
    }
    order
}

/// Proper colouring with `a` colours where every class has `k−1` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquitableColoring {
    colors: usize,
    assignment: Vec<usize>,
}

impl EquitableColoring {
    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn color_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Colour classes, each sorted, indexed by colour.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.colors];
        for (v, &c) in self.assignment.iter().enumerate() {
            classes[c].push(v);
        }
        classes
    }

    /// Proper on `h` and every class has exactly `k−1` vertices.
    pub fn is_valid_for(&self, h: &DenseGraph, k: usize) -> bool {
        is_equitable_partition(h, &self.classes(), self.colors, k)
    }
}

/// Checks that `classes` partition `V(h)` into `a` independent sets of size
/// `k−1`.
pub fn is_equitable_partition(h: &DenseGraph, classes: &[Vec<usize>], a: usize, k: usize) -> bool {
    if classes.len() != a || h.order() != a * (k - 1) {
        return false;
    }
    let mut seen = VertexSet::empty(h.order());
    for class in classes {
        if class.len() != k - 1 || !h.is_independent(class) {
            return false;
        }
        for &v in class {
            if v >= h.order() || seen.contains(v) {
                return false;
            }
            seen.insert(v);
        }
    }
    seen.len() == h.order()
}

/// State of the engine when no recolouring vertex exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringFailure {
    /// 1-based position `j` in the degeneracy ordering.
    pub step: usize,
    pub vertex: usize,
    pub full_colors: Vec<usize>,
    pub neighboring_colors: Vec<usize>,
    /// The non-full neighbouring colour `c'` the engine tried to free up.
    pub chosen_color: usize,
    /// Colour of each vertex at the moment of failure.
    pub partial: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringError {
    DimensionMismatch { expected: usize, actual: usize },
    Stuck(Box<ColoringFailure>),
}

impl fmt::Display for ColoringError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColoringError::DimensionMismatch { expected, actual } => {
                write!(f, "graph has {actual} vertices, expected a(k-1) = {expected}")
            }
            ColoringError::Stuck(fail) => write!(
                f,
                "no recolouring vertex at step {} (vertex {}, colour {})",
                fail.step, fail.vertex, fail.chosen_color
            ),
        }
    }
}

impl std::error::Error for ColoringError {}

/// Runs the engine on `h` with `a` colours and class size `k−1`.
pub fn equitable_color(h: &DenseGraph, a: usize, k: usize) -> Result<EquitableColoring, ColoringError> {
    equitable_color_with(h, a, k, false)
}

/// As [`equitable_color`]; with `validate_steps` the partial colouring is
/// checked for legality after every step and a violation panics.
pub fn equitable_color_with(
    h: &DenseGraph,
    a: usize,
    k: usize,
    validate_steps: bool,
) -> Result<EquitableColoring, ColoringError> {
    assert!(k >= 2, "class size k-1 must be positive");
    let n = h.order();
    if n != a * (k - 1) {
        return Err(ColoringError::DimensionMismatch { expected: a * (k - 1), actual: n });
    }
    let cap = k - 1;
    let order = degeneracy_ordering(h);
    let mut color: Vec<Option<usize>> = vec![None; n];
    let mut classes = vec![VertexSet::empty(n); a];

    for (idx, &v) in order.iter().enumerate() {
        if idx < a {
            color[v] = Some(idx);
            classes[idx].insert(v);
        } else {
            let mut neighboring = vec![false; a];
            for u in h.neighbors(v).iter() {
                if let Some(c) = color[u] {
                    neighboring[c] = true;
                }
            }
            let full: Vec<bool> = classes.iter().map(|s| s.len() == cap).collect();
            if let Some(c) = (0..a).find(|&c| !full[c] && !neighboring[c]) {
                color[v] = Some(c);
                classes[c].insert(v);
            } else {
                let stuck = |chosen: usize, color: &[Option<usize>]| {
                    ColoringError::Stuck(Box::new(ColoringFailure {
                        step: idx + 1,
                        vertex: v,
                        full_colors: (0..a).filter(|&c| full[c]).collect(),
                        neighboring_colors: (0..a).filter(|&c| neighboring[c]).collect(),
                        chosen_color: chosen,
                        partial: color.to_vec(),
                    }))
                };
                // C_N \ C_F is non-empty whenever fewer than a(k-1) vertices
                // are coloured.
                let Some(target) = (0..a).find(|&c| neighboring[c] && !full[c]) else {
                    return Err(stuck(usize::MAX, &color));
                };
                let mut donors = VertexSet::empty(n);
                for c in (0..a).filter(|&c| full[c] && !neighboring[c]) {
                    donors.union_with(&classes[c]);
                }
                let target_class = &classes[target];
                let Some(u) = donors.iter().find(|&u| h.neighbors(u).is_disjoint(target_class)) else {
                    return Err(stuck(target, &color));
                };
                let freed = color[u].expect("donor is coloured");
                classes[freed].remove(u);
                classes[target].insert(u);
                color[u] = Some(target);
                classes[freed].insert(v);
                color[v] = Some(freed);
            }
        }
        if validate_steps {
            assert_legal(h, &color, &classes, cap);
        }
    }

    Ok(EquitableColoring {
        colors: a,
        assignment: color.into_iter().map(|c| c.expect("all vertices coloured")).collect(),
    })
}

fn assert_legal(h: &DenseGraph, color: &[Option<usize>], classes: &[VertexSet], cap: usize) {
    for (c, class) in classes.iter().enumerate() {
        assert!(class.len() <= cap, "class {c} exceeds k-1");
        for v in class.iter() {
            assert_eq!(color[v], Some(c));
            assert!(h.neighbors(v).is_disjoint(class), "class {c} not independent");
        }
    }
}

/// Graph on `n` vertices whose edge set is the union of the cliques on the
/// given sets.
pub fn union_of_cliques(n: usize, family: &[Vec<usize>]) -> DenseGraph {
    let mut h = DenseGraph::empty(n);
    for set in family {
        h.add_clique(set);
    }
    h
}

/// `a ≥ k−1`, `|family| ≤ a−k+1`, sets of size `≤ k` meeting pairwise in at
/// most one vertex.
pub fn lemma_colouring_hypothesis(family: &[Vec<usize>], a: usize, k: usize) -> bool {
    if a + 1 < k || family.len() + k > a + 1 {
        return false;
    }
    if family.iter().any(|s| s.len() > k) {
        return false;
    }
    family.iter().enumerate().all(|(i, s)| {
        family[i + 1..]
            .iter()
            .all(|t| s.iter().filter(|x| t.contains(x)).count() <= 1)
    })
}

/// `ceil(x / m)` for `m > 0`.
fn ceil_div(x: i64, m: i64) -> i64 {
    -((-x).div_euclid(m))
}

/// `a > ℓ` and `Σ ⌈deg(x)/(k−1)⌉ < k(a−ℓ)`, with `ℓ = (k²−k−2)/4` kept
/// exact by scaling by 4.
pub fn lemma_colouring2_hypothesis(h: &DenseGraph, a: usize, k: usize) -> bool {
    if k < 3 || h.order() != a * (k - 1) {
        return false;
    }
    let (a, k) = (a as i64, k as i64);
    let four_a_minus_ell = 4 * a - four_ell(k as usize);
    if four_a_minus_ell <= 0 {
        return false;
    }
    let sum: i64 = h.degrees().iter().map(|&d| ceil_div(d as i64, k - 1)).sum();
    4 * sum < k * four_a_minus_ell
}

/// `Σ ⌈(deg(x)−1)/(k−1)⌉ ≤ a−2`, or for `k = 3`: `Δ ≤ 2a−2` and the same
/// sum `≤ a`. Isolated vertices contribute `⌈−1/(k−1)⌉ = 0`.
pub fn lemma_colouring3_hypothesis(h: &DenseGraph, a: usize, k: usize) -> bool {
    if k < 3 || a < 1 || h.order() != a * (k - 1) {
        return false;
    }
    let sum: i64 = h
        .degrees()
        .iter()
        .map(|&d| ceil_div(d as i64 - 1, k as i64 - 1))
        .sum();
    let a = a as i64;
    sum <= a - 2 || (k == 3 && h.max_degree() as i64 <= 2 * a - 2 && sum <= a)
}
