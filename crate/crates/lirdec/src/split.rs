//! Split-graph recognition and the clique/stable-set frame.
//!
//! A split graph partitions its vertices into a clique `X` and a stable set
//! `Y`. The classification of irregular chromatic indices is stated in terms
//! of `n = |X|` (with `X` a maximal clique) and the sorted sequence
//! `d_i = |N(v_i) ∩ Y|` over the clique vertices.

use crate::graph::Graph;
use crate::{Error, Result};

/// A split partition: `x` is a maximal clique ordered by `d_i` descending
/// (ties by smaller vertex id), `y` the complementary stable set, and
/// `d[i]` the number of `Y`-neighbors of `x[i]`.
#[derive(Clone, Debug)]
pub struct SplitPartition {
    graph: Graph,
    x: Vec<usize>,
    y: Vec<usize>,
    d: Vec<usize>,
}

impl SplitPartition {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Clique vertices, ordered by `d_i` descending.
    pub fn x(&self) -> &[usize] {
        &self.x
    }

    pub fn y(&self) -> &[usize] {
        &self.y
    }

    /// The sorted d-sequence, aligned with [`SplitPartition::x`].
    pub fn d_sequence(&self) -> &[usize] {
        &self.d
    }

    /// Clique size `n`.
    pub fn clique_size(&self) -> usize {
        self.x.len()
    }

    /// 1-based access matching the usual `v_i` indexing of the clique.
    pub fn v(&self, i: usize) -> usize {
        self.x[i - 1]
    }

    fn validate(&self) -> bool {
        let g = &self.graph;
        let in_x = membership(g.vertex_count(), &self.x);
        // X is a clique, Y is stable.
        for (idx, &u) in self.x.iter().enumerate() {
            for &v in &self.x[idx + 1..] {
                if !g.has_edge(u, v) {
                    return false;
                }
            }
        }
        for (idx, &u) in self.y.iter().enumerate() {
            for &v in &self.y[idx + 1..] {
                if g.has_edge(u, v) {
                    return false;
                }
            }
        }
        // X is maximal: no y sees all of X.
        for &y in &self.y {
            if self.x.iter().all(|&x| g.has_edge(x, y)) {
                return false;
            }
        }
        // d matches and is sorted descending.
        for (i, &v) in self.x.iter().enumerate() {
            let dy = g.neighbors(v).iter().filter(|&&w| !in_x[w]).count();
            if dy != self.d[i] {
                return false;
            }
        }
        self.d.windows(2).all(|w| w[0] >= w[1])
    }
}

fn membership(n: usize, set: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in set {
        m[v] = true;
    }
    m
}

/// Finds a split partition of `g` with `X` a maximal clique, or reports that
/// `g` is not split.
///
/// Vertices are sorted by degree descending; the degree-sequence criterion
/// picks the clique candidate (largest `m` with `deg ≥ m−1` in sorted
/// order), the candidate is checked directly, and maximality is repaired by
/// absorbing any `Y` vertex adjacent to all of `X`. Ties are always broken
/// by smaller vertex id so downstream constructions are deterministic.
pub fn split_partition(g: &Graph) -> Result<SplitPartition> {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    // Largest m with deg(order[m-1]) >= m-1.
    let mut m = 0;
    for (i, &v) in order.iter().enumerate() {
        if g.degree(v) >= i {
            m = i + 1;
        } else {
            break;
        }
    }

    let mut x: Vec<usize> = order[..m].to_vec();
    let mut y: Vec<usize> = order[m..].to_vec();

    let clique_ok = |set: &[usize]| {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| g.has_edge(u, v)))
    };
    let stable_ok = |set: &[usize]| {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !g.has_edge(u, v)))
    };
    if !clique_ok(&x) || !stable_ok(&y) {
        return Err(Error::NotSplit);
    }

    // Maximality repair: each move strictly grows X, so this terminates.
    loop {
        let candidate = y
            .iter()
            .position(|&w| x.iter().all(|&v| g.has_edge(v, w)));
        match candidate {
            Some(pos) => x.push(y.remove(pos)),
            None => break,
        }
    }

    let in_x = membership(n, &x);
    let d_of = |v: usize| g.neighbors(v).iter().filter(|&&w| !in_x[w]).count();
    x.sort_by_key(|&v| (std::cmp::Reverse(d_of(v)), v));
    y.sort_unstable();
    let d: Vec<usize> = x.iter().map(|&v| d_of(v)).collect();

    let p = SplitPartition { graph: g.clone(), x, y, d };
    debug_assert!(p.validate(), "constructed partition violates its invariants");
    Ok(p)
}

/// The sorted d-sequence of a partition.
pub fn d_sequence(p: &SplitPartition) -> &[usize] {
    p.d_sequence()
}

/// A graph with its degree-0 vertices removed and the surviving vertices
/// renumbered densely. `kept[new_id]` is the original id.
#[derive(Clone, Debug)]
pub struct StrippedGraph {
    pub graph: Graph,
    pub kept: Vec<usize>,
    pub removed: Vec<usize>,
}

impl StrippedGraph {
    /// Original id of a stripped-graph vertex.
    pub fn original_id(&self, new_id: usize) -> usize {
        self.kept[new_id]
    }
}

/// Removes isolated vertices. Decompositions concern edges only, so the
/// irregular chromatic index is unchanged.
pub fn strip_isolated(g: &Graph) -> StrippedGraph {
    let (kept, removed): (Vec<usize>, Vec<usize>) =
        (0..g.vertex_count()).partition(|&v| g.degree(v) > 0);
    let mut new_id = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in kept.iter().enumerate() {
        new_id[v] = i;
    }
    let edges = g.edges().iter().map(|&(u, v)| (new_id[u], new_id[v]));
    let graph = Graph::new(kept.len(), edges).expect("renumbering preserves validity");
    StrippedGraph { graph, kept, removed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c5_is_not_split() {
        let c5 = Graph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(matches!(split_partition(&c5), Err(Error::NotSplit)));
    }

    #[test]
    fn k4_partition() {
        let p = split_partition(&Graph::complete(4)).unwrap();
        assert_eq!(p.clique_size(), 4);
        assert!(p.y().is_empty());
        assert_eq!(p.d_sequence(), &[0, 0, 0, 0]);
    }

    #[test]
    fn p4_partition() {
        let p4 = Graph::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let p = split_partition(&p4).unwrap();
        assert_eq!(p.clique_size(), 2);
        assert_eq!(p.x(), &[1, 2]);
        assert_eq!(p.d_sequence(), &[1, 1]);
    }

    #[test]
    fn star_absorbs_a_leaf() {
        // K_{1,4}: the singleton center is not a maximal clique, so one leaf
        // must end up inside X.
        let star = Graph::new(5, (1..5).map(|v| (0, v))).unwrap();
        let p = split_partition(&star).unwrap();
        assert_eq!(p.clique_size(), 2);
        assert_eq!(p.d_sequence(), &[3, 0]);
        assert_eq!(p.x()[0], 0);
    }

    #[test]
    fn bistar_d_sequence() {
        // Centers 0 and 1; 0 has three leaves, 1 has two.
        let mut edges = vec![(0, 1)];
        edges.extend([(0, 2), (0, 3), (0, 4)]);
        edges.extend([(1, 5), (1, 6)]);
        let g = Graph::new(7, edges).unwrap();
        let p = split_partition(&g).unwrap();
        assert_eq!(p.d_sequence(), &[3, 2]);
        assert_eq!(p.x(), &[0, 1]);
    }

    #[test]
    fn strip_isolated_cases() {
        let e5 = Graph::empty(5);
        let s = strip_isolated(&e5);
        assert_eq!(s.graph.vertex_count(), 0);
        assert_eq!(s.removed.len(), 5);

        let mut edges = Graph::complete(3).edges().to_vec();
        edges = edges.into_iter().collect();
        let g = Graph::new(5, edges).unwrap();
        let s = strip_isolated(&g);
        assert_eq!(s.graph, Graph::complete(3));
        assert_eq!(s.removed, vec![3, 4]);

        let p3 = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let s = strip_isolated(&p3);
        assert_eq!(s.graph, p3);
        assert!(s.removed.is_empty());
    }
}
