//! Simple undirected graphs, edge colorings, and conflict detection.
//!
//! Vertices are dense ids `0..n`. Edges are unordered pairs stored once in
//! normalized `(min, max)` form. Colors are 1-based small integers; 1, 2 and
//! 3 render as red, blue and green everywhere the colors are displayed.

use crate::{Error, Result};

pub const RED: u8 = 1;
pub const BLUE: u8 = 2;
pub const GREEN: u8 = 3;

/// Largest color index any coloring in this crate may use.
pub const MAX_COLORS: u8 = 4;

/// A finite simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Rejects self-loops, duplicate edges
    /// and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut norm: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidInput(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if norm.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("duplicate edge".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Graph { n, edges: norm, adj })
    }

    pub fn empty(n: usize) -> Graph {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, edges).expect("complete graph edges are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in normalized sorted order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Number of edges incident to `v`. Panics if `v` is out of range.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Position of edge `{u, v}` in the normalized edge list.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        if u == v {
            return None;
        }
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }
}

/// True iff no edge joins two vertices of equal degree. Edgeless and empty
/// graphs are vacuously locally irregular.
pub fn is_locally_irregular(g: &Graph) -> bool {
    g.edges().iter().all(|&(u, v)| g.degree(u) != g.degree(v))
}

/// Exactly the edges whose endpoints have equal degree in `g`.
pub fn conflicting_edges(g: &Graph) -> Vec<(usize, usize)> {
    g.edges()
        .iter()
        .copied()
        .filter(|&(u, v)| g.degree(u) == g.degree(v))
        .collect()
}

/// A total assignment of colors `1..=k` to the edges of a graph; the
/// candidate form of a locally irregular decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    graph: Graph,
    colors: Vec<u8>,
    k: u8,
}

impl EdgeColoring {
    /// `colors[i]` is the color of `graph.edges()[i]`; all must lie in
    /// `1..=k` and the assignment must cover every edge exactly once.
    pub fn new(graph: Graph, colors: Vec<u8>, k: u8) -> Result<EdgeColoring> {
        if k == 0 || k > MAX_COLORS {
            return Err(Error::InvalidInput(format!("color count {k} outside 1..={MAX_COLORS}")));
        }
        if colors.len() != graph.edge_count() {
            return Err(Error::InvalidInput(format!(
                "coloring covers {} edges, graph has {}",
                colors.len(),
                graph.edge_count()
            )));
        }
        if let Some(&c) = colors.iter().find(|&&c| c == 0 || c > k) {
            return Err(Error::InvalidInput(format!("color {c} outside 1..={k}")));
        }
        Ok(EdgeColoring { graph, colors, k })
    }

    /// Everything in one color.
    pub fn monochrome(graph: Graph) -> EdgeColoring {
        let m = graph.edge_count();
        EdgeColoring { graph, colors: vec![RED; m], k: 1 }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    /// Color of edge `{u, v}`. Panics if the edge is absent.
    pub fn color_of(&self, u: usize, v: usize) -> u8 {
        let idx = self
            .graph
            .edge_index(u, v)
            .unwrap_or_else(|| panic!("no edge ({u}, {v})"));
        self.colors[idx]
    }

    /// Recolors edge `{u, v}`.
    pub fn set_color(&mut self, u: usize, v: usize, c: u8) {
        assert!(c >= 1 && c <= self.k, "color {c} outside 1..={}", self.k);
        let idx = self
            .graph
            .edge_index(u, v)
            .unwrap_or_else(|| panic!("no edge ({u}, {v})"));
        self.colors[idx] = c;
    }

    /// Spanning subgraph on all vertices containing exactly the edges of
    /// color `c`.
    pub fn color_subgraph(&self, c: u8) -> Result<Graph> {
        if c == 0 || c > self.k {
            return Err(Error::InvalidInput(format!("color {c} outside 1..={}", self.k)));
        }
        let edges = self
            .graph
            .edges()
            .iter()
            .zip(&self.colors)
            .filter(|(_, &col)| col == c)
            .map(|(&e, _)| e);
        Graph::new(self.graph.vertex_count(), edges)
    }

    /// `deg[v][c]` = number of color-`c` edges at `v`, for `c` in `1..=k`.
    pub fn color_degrees(&self) -> Vec<[usize; MAX_COLORS as usize + 1]> {
        let mut deg = vec![[0usize; MAX_COLORS as usize + 1]; self.graph.vertex_count()];
        for (&(u, v), &c) in self.graph.edges().iter().zip(&self.colors) {
            deg[u][c as usize] += 1;
            deg[v][c as usize] += 1;
        }
        deg
    }

    /// Number of distinct colors actually present on edges.
    pub fn colors_used(&self) -> u8 {
        let mut seen = [false; MAX_COLORS as usize + 1];
        for &c in &self.colors {
            seen[c as usize] = true;
        }
        seen.iter().filter(|&&s| s).count() as u8
    }
}

/// Per-color lists of conflicting edges of a candidate decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictReport {
    per_color: Vec<Vec<(usize, usize)>>,
}

impl ConflictReport {
    /// True iff every color class is locally irregular.
    pub fn is_clean(&self) -> bool {
        self.per_color.iter().all(|c| c.is_empty())
    }

    /// Conflicting edges of the color-`c` subgraph (`c` is 1-based).
    pub fn conflicts(&self, c: u8) -> &[(usize, usize)] {
        &self.per_color[c as usize - 1]
    }

    pub fn total(&self) -> usize {
        self.per_color.iter().map(Vec::len).sum()
    }

    /// `(color, edge)` pairs over all colors.
    pub fn iter(&self) -> impl Iterator<Item = (u8, (usize, usize))> + '_ {
        self.per_color
            .iter()
            .enumerate()
            .flat_map(|(i, v)| v.iter().map(move |&e| (i as u8 + 1, e)))
    }
}

/// Checks every color class of `col` for local irregularity. The report is
/// empty for every color iff `col` is a locally irregular edge coloring;
/// colors with no edges are vacuously clean.
pub fn verify_decomposition(col: &EdgeColoring) -> ConflictReport {
    let deg = col.color_degrees();
    let mut per_color = vec![Vec::new(); col.k() as usize];
    for (&(u, v), &c) in col.graph().edges().iter().zip(col.colors()) {
        if deg[u][c as usize] == deg[v][c as usize] {
            per_color[c as usize - 1].push((u, v));
        }
    }
    ConflictReport { per_color }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn degree_queries() {
        let k3 = Graph::complete(3);
        assert!((0..3).all(|v| k3.degree(v) == 2));
        let e5 = Graph::empty(5);
        assert!((0..5).all(|v| e5.degree(v) == 0));
        let p4 = path(4);
        assert_eq!(p4.degree(1), 2);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(Graph::new(3, vec![(0, 0)]), Err(Error::InvalidInput(_))));
        assert!(matches!(Graph::new(3, vec![(0, 3)]), Err(Error::InvalidInput(_))));
        assert!(matches!(Graph::new(3, vec![(0, 1), (1, 0)]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn color_subgraph_k2() {
        let k2 = Graph::complete(2);
        let col = EdgeColoring::new(k2.clone(), vec![RED], 2).unwrap();
        assert_eq!(col.color_subgraph(RED).unwrap(), k2);
        let blue = col.color_subgraph(BLUE).unwrap();
        assert_eq!(blue.edge_count(), 0);
        assert_eq!(blue.vertex_count(), 2);
        assert!(col.color_subgraph(3).is_err());
    }

    #[test]
    fn local_irregularity_basics() {
        assert!(!is_locally_irregular(&Graph::complete(2)));
        assert!(is_locally_irregular(&path(3)));
        let star = Graph::new(6, (1..6).map(|v| (0, v))).unwrap();
        assert!(is_locally_irregular(&star));
        assert!(is_locally_irregular(&Graph::empty(4)));
        assert!(is_locally_irregular(&Graph::empty(0)));
    }

    #[test]
    fn conflicting_edges_basics() {
        assert_eq!(conflicting_edges(&Graph::complete(3)).len(), 3);
        assert_eq!(conflicting_edges(&path(4)), vec![(1, 2)]);
        assert!(conflicting_edges(&path(3)).is_empty());
    }

    #[test]
    fn verify_monochrome() {
        let k3 = Graph::complete(3);
        let col = EdgeColoring::monochrome(k3);
        let report = verify_decomposition(&col);
        assert_eq!(report.conflicts(RED).len(), 3);
        assert!(!report.is_clean());

        let star = Graph::new(4, (1..4).map(|v| (0, v))).unwrap();
        let col = EdgeColoring::monochrome(star);
        assert!(verify_decomposition(&col).is_clean());
    }

    #[test]
    fn coloring_must_be_total() {
        let k3 = Graph::complete(3);
        assert!(EdgeColoring::new(k3.clone(), vec![1, 2], 2).is_err());
        assert!(EdgeColoring::new(k3, vec![1, 2, 3], 2).is_err());
    }
}
