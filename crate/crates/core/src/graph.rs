//! Marked simple graphs and the amalgam calculus.
//!
//! A [`MarkedGraph`] is a simple undirected graph together with an injective
//! map from textual labels to vertices. Gadgets are glued together by
//! identifying equally-labeled vertices ([`MarkedGraph::amalgam`]) or by
//! collapsing labels onto each other ([`MarkedGraph::merge_marks`]).

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

/// Dense vertex identifier, unique within one graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("vertex {0} does not exist")]
    UnknownVertex(VertexId),
    #[error("vertex {0} already carries label `{1}`")]
    AlreadyMarked(VertexId, String),
    #[error("identifying vertices {0} and {1} would create a self-loop")]
    SelfLoop(VertexId, VertexId),
    #[error("graph exceeds the {0} vertex id space")]
    TooManyVertices(u64),
}

/// Vertex and edge counts of a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct GraphStats {
    pub vertex_count: u64,
    pub edge_count: u64,
}

impl fmt::Display for GraphStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertices {} edges {}", self.vertex_count, self.edge_count)
    }
}

#[inline]
fn edge_key(a: VertexId, b: VertexId) -> u64 {
    let (lo, hi) = if a.0 < b.0 { (a.0, b.0) } else { (b.0, a.0) };
    ((lo as u64) << 32) | hi as u64
}

#[derive(Clone, Debug, Default)]
pub struct MarkedGraph {
    adj: Vec<Vec<VertexId>>,
    /// Edges in creation order, stored with the orientation they were added with.
    edges: Vec<(VertexId, VertexId)>,
    edge_set: HashSet<u64>,
    marks: BTreeMap<String, VertexId>,
    labels: HashMap<VertexId, String>,
}

impl MarkedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// `labels.len()` isolated vertices, each marked with its label.
    pub fn make_graph<S: AsRef<str>>(labels: &[S]) -> Result<Self, GraphError> {
        let mut g = Self::new();
        for l in labels {
            g.add_marked_vertex(l.as_ref())?;
        }
        Ok(g)
    }

    /// `K_k` with every vertex marked by its label.
    pub fn clique<S: AsRef<str>>(labels: &[S]) -> Result<Self, GraphError> {
        let mut g = Self::make_graph(labels)?;
        let k = g.vertex_count();
        for a in 0..k {
            for b in a + 1..k {
                g.add_edge(VertexId(a as u32), VertexId(b as u32))?;
            }
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn stats(&self) -> GraphStats {
        GraphStats {
            vertex_count: self.adj.len() as u64,
            edge_count: self.edges.len() as u64,
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.adj.len() as u32).map(VertexId)
    }

    /// Edges in creation order.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.index()].len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.index() < self.adj.len()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edge_set.contains(&edge_key(a, b))
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.adj.len() as u32);
        self.adj.push(Vec::new());
        id
    }

    pub fn add_marked_vertex(&mut self, label: &str) -> Result<VertexId, GraphError> {
        if self.marks.contains_key(label) {
            return Err(GraphError::DuplicateLabel(label.to_string()));
        }
        let v = self.add_vertex();
        self.marks.insert(label.to_string(), v);
        self.labels.insert(v, label.to_string());
        Ok(v)
    }

    /// Adds the edge `a b`. Returns `false` when it already existed.
    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<bool, GraphError> {
        for v in [a, b] {
            if !self.contains(v) {
                return Err(GraphError::UnknownVertex(v));
            }
        }
        if a == b {
            return Err(GraphError::SelfLoop(a, b));
        }
        if !self.edge_set.insert(edge_key(a, b)) {
            return Ok(false);
        }
        self.adj[a.index()].push(b);
        self.adj[b.index()].push(a);
        self.edges.push((a, b));
        Ok(true)
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.marks.get(label).copied()
    }

    pub fn label_of(&self, v: VertexId) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn marks(&self) -> &BTreeMap<String, VertexId> {
        &self.marks
    }

    pub fn mark(&mut self, v: VertexId, label: &str) -> Result<(), GraphError> {
        if !self.contains(v) {
            return Err(GraphError::UnknownVertex(v));
        }
        if self.marks.contains_key(label) {
            return Err(GraphError::DuplicateLabel(label.to_string()));
        }
        if let Some(old) = self.labels.get(&v) {
            return Err(GraphError::AlreadyMarked(v, old.clone()));
        }
        self.marks.insert(label.to_string(), v);
        self.labels.insert(v, label.to_string());
        Ok(())
    }

    pub fn unmark(&mut self, label: &str) -> Option<VertexId> {
        let v = self.marks.remove(label)?;
        self.labels.remove(&v);
        Some(v)
    }

    pub fn unmark_vertex(&mut self, v: VertexId) -> Option<String> {
        let l = self.labels.remove(&v)?;
        self.marks.remove(&l);
        Some(l)
    }

    pub fn clear_marks(&mut self) {
        self.marks.clear();
        self.labels.clear();
    }

    /// Copies `h` into `self`, identifying `h`-vertex `i` with `identify[i]`
    /// when that entry is set. Marks of `h` are not copied. Returns the image
    /// of every `h` vertex.
    pub fn glue(
        &mut self,
        h: &MarkedGraph,
        identify: &[Option<VertexId>],
    ) -> Result<Vec<VertexId>, GraphError> {
        debug_assert_eq!(identify.len(), h.vertex_count());
        let fresh = identify.iter().filter(|x| x.is_none()).count() as u64;
        if self.adj.len() as u64 + fresh > u32::MAX as u64 {
            return Err(GraphError::TooManyVertices(u32::MAX as u64));
        }
        let mut image = Vec::with_capacity(h.vertex_count());
        for slot in identify {
            match slot {
                Some(v) => {
                    if !self.contains(*v) {
                        return Err(GraphError::UnknownVertex(*v));
                    }
                    image.push(*v)
                }
                None => image.push(self.add_vertex()),
            }
        }
        for &(a, b) in &h.edges {
            let (ia, ib) = (image[a.index()], image[b.index()]);
            if ia == ib {
                return Err(GraphError::SelfLoop(a, b));
            }
            self.add_edge(ia, ib)?;
        }
        Ok(image)
    }

    /// In-place amalgam: adds a disjoint copy of `h` and identifies vertices
    /// carrying the same label. Returns the image of every `h` vertex.
    pub fn absorb(&mut self, h: &MarkedGraph) -> Result<Vec<VertexId>, GraphError> {
        let mut identify = vec![None; h.vertex_count()];
        for (label, &v) in &h.marks {
            if let Some(&mine) = self.marks.get(label) {
                identify[v.index()] = Some(mine);
            }
        }
        let image = self.glue(h, &identify)?;
        for (label, &v) in &h.marks {
            if identify[v.index()].is_none() {
                let iv = image[v.index()];
                self.marks.insert(label.clone(), iv);
                self.labels.insert(iv, label.clone());
            }
        }
        Ok(image)
    }

    /// `self + h`: disjoint union followed by identification of equally
    /// labeled vertices. Parallel edges collapse; marks are the union.
    pub fn amalgam(&self, h: &MarkedGraph) -> Result<MarkedGraph, GraphError> {
        let mut g = self.clone();
        g.absorb(h)?;
        Ok(g)
    }

    /// Renames labels through `relabeling`; vertices that end up with the same
    /// label are identified. Vertex ids are renumbered densely in order of
    /// first occurrence.
    pub fn merge_marks(
        &self,
        relabeling: &BTreeMap<String, String>,
    ) -> Result<MarkedGraph, GraphError> {
        for old in relabeling.keys() {
            if !self.marks.contains_key(old) {
                return Err(GraphError::UnknownLabel(old.clone()));
            }
        }
        // new label -> representative vertex
        let mut by_label: BTreeMap<String, Vec<VertexId>> = BTreeMap::new();
        for (label, &v) in &self.marks {
            let target = relabeling.get(label).unwrap_or(label);
            by_label.entry(target.clone()).or_default().push(v);
        }
        let mut rep: Vec<u32> = (0..self.vertex_count() as u32).collect();
        for group in by_label.values() {
            let root = group.iter().min().unwrap();
            for v in group {
                rep[v.index()] = root.0;
            }
        }
        for &(a, b) in &self.edges {
            if rep[a.index()] == rep[b.index()] {
                return Err(GraphError::SelfLoop(a, b));
            }
        }
        let mut new_id = vec![u32::MAX; self.vertex_count()];
        let mut out = MarkedGraph::new();
        for v in 0..self.vertex_count() {
            let r = rep[v] as usize;
            if new_id[r] == u32::MAX {
                new_id[r] = out.add_vertex().0;
            }
        }
        for &(a, b) in &self.edges {
            let na = VertexId(new_id[rep[a.index()] as usize]);
            let nb = VertexId(new_id[rep[b.index()] as usize]);
            out.add_edge(na, nb)?;
        }
        for (label, group) in by_label {
            let v = VertexId(new_id[rep[group[0].index()] as usize]);
            out.marks.insert(label.clone(), v);
            out.labels.insert(v, label);
        }
        Ok(out)
    }

    /// True when the listed vertices are pairwise adjacent.
    pub fn is_clique(&self, vs: &[VertexId]) -> bool {
        vs.iter().enumerate().all(|(i, &a)| {
            vs[i + 1..]
                .iter()
                .all(|&b| a != b && self.has_edge(a, b))
        })
    }

    /// Structural simplicity check: no loops, no parallel edges, adjacency
    /// consistent with the edge list and every mark pointing at a vertex.
    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.edges.len());
        for &(a, b) in &self.edges {
            if a == b || !seen.insert(edge_key(a, b)) {
                return false;
            }
        }
        let degree_sum: usize = self.adj.iter().map(Vec::len).sum();
        degree_sum == 2 * self.edges.len()
            && self.marks.values().all(|v| self.contains(*v))
            && self.marks.len() == self.labels.len()
    }

    /// Label-level adjacency: for every edge whose endpoints are both
    /// marked, the sorted label pair. Used to compare graphs up to
    /// vertex renumbering.
    pub fn labeled_edges(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                let la = self.label_of(a)?.to_string();
                let lb = self.label_of(b)?.to_string();
                Some(if la <= lb { (la, lb) } else { (lb, la) })
            })
            .collect();
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relabel(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    #[test]
    fn make_graph_cases() {
        let g = MarkedGraph::make_graph::<&str>(&[]).unwrap();
        assert_eq!(g.stats(), GraphStats::default());

        let g = MarkedGraph::make_graph(&["x", "y"]).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);
        assert!(g.vertex("x").is_some() && g.vertex("y").is_some());

        assert_eq!(
            MarkedGraph::make_graph(&["a", "a"]).unwrap_err(),
            GraphError::DuplicateLabel("a".into())
        );
    }

    #[test]
    fn clique_cases() {
        let g = MarkedGraph::clique(&["~0", "~1", "~2"]).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 3));
        let e = MarkedGraph::clique(&["u", "v"]).unwrap();
        assert_eq!(e.edge_count(), 1);
        assert!(e.has_edge(e.vertex("u").unwrap(), e.vertex("v").unwrap()));
        let k1 = MarkedGraph::clique(&["a"]).unwrap();
        assert_eq!((k1.vertex_count(), k1.edge_count()), (1, 0));
        assert!(MarkedGraph::clique(&["a", "b", "a"]).is_err());
    }

    #[test]
    fn amalgam_path() {
        let ab = MarkedGraph::clique(&["a", "b"]).unwrap();
        let bc = MarkedGraph::clique(&["b", "c"]).unwrap();
        let p = ab.amalgam(&bc).unwrap();
        assert_eq!((p.vertex_count(), p.edge_count()), (3, 2));
        assert!(p.is_simple());
    }

    #[test]
    fn amalgam_dedups_shared_edge() {
        let g = MarkedGraph::clique(&["a", "b", "c"]).unwrap();
        let h = MarkedGraph::clique(&["a", "b", "d"]).unwrap();
        let s = g.amalgam(&h).unwrap();
        assert_eq!((s.vertex_count(), s.edge_count()), (4, 5));
        assert!(s.is_simple());
    }

    #[test]
    fn amalgam_disjoint_union() {
        let g = MarkedGraph::clique(&["a", "b"]).unwrap();
        let h = MarkedGraph::clique(&["c", "d"]).unwrap();
        let s = g.amalgam(&h).unwrap();
        assert_eq!((s.vertex_count(), s.edge_count()), (4, 2));
        assert_eq!(s.marks().len(), 4);
    }

    #[test]
    fn merge_marks_collapses_parallel_edges() {
        let p = MarkedGraph::clique(&["a", "b"])
            .unwrap()
            .amalgam(&MarkedGraph::clique(&["b", "c"]).unwrap())
            .unwrap();
        let m = p.merge_marks(&relabel(&[("a", "t"), ("c", "t")])).unwrap();
        assert_eq!((m.vertex_count(), m.edge_count()), (2, 1));
        assert!(m.vertex("t").is_some() && m.vertex("b").is_some());
        assert!(m.is_simple());
    }

    #[test]
    fn merge_marks_rename_and_errors() {
        let e = MarkedGraph::clique(&["x", "y"]).unwrap();
        let r = e.merge_marks(&relabel(&[("x", "x'")])).unwrap();
        assert_eq!(r.labeled_edges(), vec![("x'".into(), "y".into())]);
        assert!(r.vertex("x").is_none());

        let ab = MarkedGraph::clique(&["a", "b"]).unwrap();
        assert!(matches!(
            ab.merge_marks(&relabel(&[("a", "t"), ("b", "t")])),
            Err(GraphError::SelfLoop(_, _))
        ));
        assert_eq!(
            ab.merge_marks(&relabel(&[("zz", "t")])).unwrap_err(),
            GraphError::UnknownLabel("zz".into())
        );
    }

    #[test]
    fn glue_rejects_self_loops() {
        let mut g = MarkedGraph::make_graph(&["a"]).unwrap();
        let h = MarkedGraph::clique(&["p", "q"]).unwrap();
        let a = g.vertex("a");
        assert!(matches!(g.glue(&h, &[a, a]), Err(GraphError::SelfLoop(_, _))));
    }

    #[test]
    fn add_edge_rejects_loops_and_reports_duplicates() {
        let mut g = MarkedGraph::make_graph(&["a", "b"]).unwrap();
        let (a, b) = (VertexId(0), VertexId(1));
        assert!(g.add_edge(a, b).unwrap());
        assert!(!g.add_edge(b, a).unwrap());
        assert_eq!(g.add_edge(a, a).unwrap_err(), GraphError::SelfLoop(a, a));
        assert_eq!(g.edge_count(), 1);
    }
}
