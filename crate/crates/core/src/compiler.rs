//! From a partial function to an `n`-color simulator: totalize, extend to a
//! permutation of `S̃^r`, simulate that permutation over `ñ = n^r` colors,
//! then blow every vertex up into an `r`-tuple and every edge into `E_{r,n}`.

use std::fmt;

use thiserror::Error;

use crate::extend::{digits, embed_index, invertible_extension, ExtendError, ExtensionSpec, PartialFunction};
use crate::gadgets::{build_edge_gadget, build_permutation, ref_label, GadgetError, Permutation, SimGraph};
use crate::graph::{GraphError, GraphStats, MarkedGraph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompileError {
    #[error("need n >= max(m, 3) = {needed}, got n = {n}")]
    TooFewColors { n: usize, needed: usize },
    #[error("the star symbol grows the alphabet to {m_tilde}, which needs n >= {m_tilde}; got n = {n}")]
    StarOverflow { n: usize, m_tilde: usize },
    #[error("n^r = {n}^{r} overflows")]
    Overflow { n: usize, r: usize },
    #[error("compiled graph would have {projected} vertices, above the limit of {limit}")]
    TooLarge { projected: u64, limit: u64 },
    #[error("blow-up expects {expected} colors, the graph has {found}")]
    ColorMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Extend(#[from] ExtendError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
}

impl From<GraphError> for CompileError {
    fn from(e: GraphError) -> Self {
        CompileError::Gadget(e.into())
    }
}

/// Makes `phi` defined on all of `S^p`. Undefined rows go to the all-star
/// tuple, where the star is the smallest symbol never used as a first output
/// coordinate, or the new symbol `m` when every symbol is used.
pub fn totalize(phi: &PartialFunction) -> (PartialFunction, Option<usize>) {
    if phi.is_total() {
        return (phi.clone(), None);
    }
    let used = phi.first_coordinate_range();
    let star = used.iter().position(|&u| !u).unwrap_or(phi.m);
    let m_tilde = phi.m.max(star + 1);
    let mut out = PartialFunction::empty(m_tilde, phi.p, phi.q);
    for x in crate::extend::all_tuples(phi.m, phi.p) {
        let y = phi.get(&x).map(<[usize]>::to_vec).unwrap_or_else(|| vec![star; phi.q]);
        out.insert(x, y).expect("fresh row within the grown alphabet");
    }
    (out, Some(star))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompileOptions {
    /// Refuse to build graphs projected to exceed this many vertices.
    pub max_vertices: u64,
}

impl Default for CompileOptions {
    fn default() -> Self {
        Self { max_vertices: 40_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompileReport {
    /// Transpositions in the simulated permutation.
    pub theta: usize,
    pub r: usize,
    pub n_tilde: usize,
    pub stats: GraphStats,
    /// Size of the `ñ`-color permutation simulator before blow-up.
    pub tilde_stats: GraphStats,
    /// Size of one edge gadget `E_{r,n}`.
    pub edge_gadget_stats: GraphStats,
    pub star_used: Option<usize>,
}

impl fmt::Display for CompileReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "theta {}", self.theta)?;
        writeln!(f, "r {}", self.r)?;
        writeln!(f, "n_tilde {}", self.n_tilde)?;
        writeln!(f, "vertices {}", self.stats.vertex_count)?;
        writeln!(f, "edges {}", self.stats.edge_count)?;
        writeln!(f, "tilde_vertices {}", self.tilde_stats.vertex_count)?;
        writeln!(f, "tilde_edges {}", self.tilde_stats.edge_count)?;
        writeln!(f, "edge_gadget_vertices {}", self.edge_gadget_stats.vertex_count)?;
        writeln!(f, "edge_gadget_edges {}", self.edge_gadget_stats.edge_count)?;
        match self.star_used {
            Some(s) => writeln!(f, "star {s}"),
            None => writeln!(f, "star none"),
        }
    }
}

/// Everything up to, but not including, the blow-up.
#[derive(Clone, Debug)]
pub struct CompilePlan {
    pub phi: PartialFunction,
    pub total: PartialFunction,
    pub star: Option<usize>,
    pub n: usize,
    pub r: usize,
    pub n_tilde: usize,
    /// The extension, lifted to a permutation of `{0, …, ñ-1}`.
    pub pi_hat: Permutation,
    pub tilde: SimGraph,
    pub edge_gadget: SimGraph,
}

impl CompilePlan {
    pub fn theta(&self) -> usize {
        self.pi_hat.to_transpositions().len()
    }

    /// Exact size of the graph [`CompilePlan::blow_up`] will build.
    pub fn projected_stats(&self) -> GraphStats {
        let (n, r) = (self.n as u64, self.r as u64);
        let p = self.phi.p as u64;
        let m = self.phi.m as u64;
        let tv = self.tilde.graph.vertex_count() as u64;
        let te = self.tilde.graph.edge_count() as u64;
        let ev = self.edge_gadget.graph.vertex_count() as u64;
        let ee = self.edge_gadget.graph.edge_count() as u64;
        let clique = n * (n - 1) / 2;
        let anchors = r * self.n_tilde as u64 * (n - 1);
        let inputs = p * (n - m) + (r - p) * (n - 1);
        let star = u64::from(self.star.is_some());
        GraphStats {
            vertex_count: n + r * tv + te * (ev - 2 * r - n),
            edge_count: clique + te * (ee - clique) + anchors + inputs + star,
        }
    }

    /// Steps (d) to (h): blow-up, anchoring, interface and star edge.
    pub fn blow_up(&self) -> Result<SimGraph, CompileError> {
        let (n, r) = (self.n, self.r);
        let (mut g, coords) = blow_up_graph(&self.tilde, &self.edge_gadget, r, n)?;
        let refs: Vec<VertexId> = (0..n).map(|k| g.vertex(&ref_label(k)).expect("reference")).collect();
        for (j, &tv) in self.tilde.reference.iter().enumerate() {
            let d = digits(j, n, r)?;
            for t in 0..r {
                anchor(&mut g, coords[tv.index()][t], &refs, d[t])?;
            }
        }
        let x_tilde = coords[self.tilde.inputs[0].index()].clone();
        let y_tilde = coords[self.tilde.outputs[0].index()].clone();
        let (p, q, m) = (self.phi.p, self.phi.q, self.phi.m);
        for &x in &x_tilde[..p] {
            for &rv in &refs[m..] {
                g.add_edge(x, rv)?;
            }
        }
        for &x in &x_tilde[p..] {
            anchor(&mut g, x, &refs, 0)?;
        }
        if let Some(s) = self.star {
            g.add_edge(y_tilde[0], refs[s])?;
        }
        let mut out = SimGraph {
            graph: g,
            inputs: x_tilde[..p].to_vec(),
            outputs: y_tilde[..q].to_vec(),
            reference: refs,
            n,
            m,
            trace: format!("compiled(m={m},p={p},q={q};n={n})"),
        };
        out.normalize_marks()?;
        Ok(out)
    }
}

/// Joins `v` to every reference vertex except `~keep`.
fn anchor(g: &mut MarkedGraph, v: VertexId, refs: &[VertexId], keep: usize) -> Result<(), GadgetError> {
    for (c, &rv) in refs.iter().enumerate() {
        if c != keep {
            g.add_edge(v, rv)?;
        }
    }
    Ok(())
}

/// Steps (a) to (c).
pub fn plan(phi: &PartialFunction, n: usize) -> Result<CompilePlan, CompileError> {
    let needed = phi.m.max(3);
    if n < needed {
        return Err(CompileError::TooFewColors { n, needed });
    }
    let (total, star) = totalize(phi);
    if total.m > n {
        return Err(CompileError::StarOverflow { n, m_tilde: total.m });
    }
    let r = phi.p + phi.q;
    let spec = ExtensionSpec { m_tilde: total.m, r, s0: 0 };
    let pi = invertible_extension(&total, &spec)?;
    let n_tilde = n
        .checked_pow(r as u32)
        .filter(|&v| v <= crate::extend::MAX_EXTENSION_SIZE as usize)
        .ok_or(CompileError::Overflow { n, r })?;
    let mut images: Vec<usize> = (0..n_tilde).collect();
    for (j, img) in images.iter_mut().enumerate() {
        let d = digits(j, n, r)?;
        if d.iter().all(|&s| s < total.m) {
            *img = embed_index(&pi.apply(&d)?, n)?;
        }
    }
    let pi_hat = Permutation::new(images)?;
    let tilde = build_permutation(&pi_hat, n_tilde)?;
    let edge_gadget = build_edge_gadget(r, n, n)?;
    Ok(CompilePlan { phi: phi.clone(), total, star, n, r, n_tilde, pi_hat, tilde, edge_gadget })
}

/// Compiles `phi` into a simulator over `n` colors.
pub fn compile(phi: &PartialFunction, n: usize) -> Result<(SimGraph, CompileReport), CompileError> {
    compile_with(phi, n, &CompileOptions::default())
}

pub fn compile_with(
    phi: &PartialFunction,
    n: usize,
    opts: &CompileOptions,
) -> Result<(SimGraph, CompileReport), CompileError> {
    let plan = plan(phi, n)?;
    let projected = plan.projected_stats();
    if projected.vertex_count > opts.max_vertices {
        return Err(CompileError::TooLarge { projected: projected.vertex_count, limit: opts.max_vertices });
    }
    let g = plan.blow_up()?;
    let report = CompileReport {
        theta: plan.theta(),
        r: plan.r,
        n_tilde: plan.n_tilde,
        stats: g.graph.stats(),
        tilde_stats: plan.tilde.graph.stats(),
        edge_gadget_stats: plan.edge_gadget.graph.stats(),
        star_used: plan.star,
    };
    Ok((g, report))
}

/// Replaces every vertex of `tilde` by `r` coordinate vertices and every
/// edge by a copy of `edge_gadget`, all sharing one reference clique `~0 …`.
/// Returns the graph and the coordinates of each original vertex.
pub fn blow_up_graph(
    tilde: &SimGraph,
    edge_gadget: &SimGraph,
    r: usize,
    n: usize,
) -> Result<(MarkedGraph, Vec<Vec<VertexId>>), CompileError> {
    let expected = n.checked_pow(r as u32).ok_or(CompileError::Overflow { n, r })?;
    if tilde.n != expected {
        return Err(CompileError::ColorMismatch { expected, found: tilde.n });
    }
    if edge_gadget.n != n || edge_gadget.p() != 2 * r {
        return Err(GadgetError::Arity(format!("edge gadget does not match r = {r}, n = {n}")).into());
    }
    let refs: Vec<String> = (0..n).map(ref_label).collect();
    let mut g = MarkedGraph::clique(&refs)?;
    let refs: Vec<VertexId> = refs.iter().map(|l| g.vertex(l).expect("just created")).collect();
    let mut coords = Vec::with_capacity(tilde.graph.vertex_count());
    for _ in tilde.graph.vertices() {
        let c: Vec<VertexId> = (0..r).map(|_| g.add_vertex()).collect();
        coords.push(c);
    }
    let mut identify = vec![None; edge_gadget.graph.vertex_count()];
    for (k, &rv) in edge_gadget.reference.iter().enumerate() {
        identify[rv.index()] = Some(refs[k]);
    }
    for &(a, b) in tilde.graph.edges() {
        for t in 0..r {
            identify[edge_gadget.inputs[t].index()] = Some(coords[a.index()][t]);
            identify[edge_gadget.inputs[r + t].index()] = Some(coords[b.index()][t]);
        }
        g.glue(&edge_gadget.graph, &identify)?;
    }
    Ok((g, coords))
}

/// [`blow_up_graph`] without the coordinate map.
pub fn blow_up(tilde: &SimGraph, r: usize, n: usize) -> Result<MarkedGraph, CompileError> {
    let e = build_edge_gadget(r, n, n)?;
    Ok(blow_up_graph(tilde, &e, r, n)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totalize_rules() {
        let not = PartialFunction::from_fn(2, 1, 1, |x| Some(vec![1 - x[0]])).unwrap();
        assert_eq!(totalize(&not), (not.clone(), None));

        let half = PartialFunction::from_fn(2, 1, 1, |x| (x[0] == 0).then(|| vec![1])).unwrap();
        let (t, star) = totalize(&half);
        assert_eq!(star, Some(0));
        assert_eq!(t.m, 2);
        assert_eq!(t.get(&[1]), Some(&[0][..]));

        let sat = PartialFunction::from_fn(2, 2, 1, |x| (x[0] == 0).then(|| vec![x[1]])).unwrap();
        let (t, star) = totalize(&sat);
        assert_eq!(star, Some(2));
        assert_eq!(t.m, 3);
        assert_eq!(t.get(&[1, 1]), Some(&[2][..]));
    }

    #[test]
    fn too_few_colors() {
        let f = PartialFunction::from_fn(4, 1, 1, |x| Some(x.to_vec())).unwrap();
        assert!(matches!(compile(&f, 3), Err(CompileError::TooFewColors { .. })));
    }

    #[test]
    fn star_overflow() {
        let sat = PartialFunction::from_fn(3, 2, 1, |x| (x[0] == 0).then(|| vec![x[1]])).unwrap();
        assert!(matches!(plan(&sat, 3), Err(CompileError::StarOverflow { .. })));
    }

    #[test]
    fn blow_up_r1_edge() {
        let single = crate::gadgets::build_not(2, 3).unwrap();
        let g = blow_up(&single, 1, 3).unwrap();
        // every edge of the not gadget becomes one edge between copies
        assert_eq!(g.vertex_count(), 3 + single.graph.vertex_count());
        assert_eq!(g.edge_count(), 3 + single.graph.edge_count());
        assert!(matches!(blow_up(&single, 2, 3), Err(CompileError::ColorMismatch { .. })));
    }
}
