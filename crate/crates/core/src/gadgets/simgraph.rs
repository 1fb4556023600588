use thiserror::Error;

use crate::graph::{GraphError, MarkedGraph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("need m >= 2 and n >= max(m, 3), got m = {m}, n = {n}")]
    Parameters { m: usize, n: usize },
    #[error("{0}")]
    Arity(String),
    #[error("wiring error: {0}")]
    Wiring(String),
}

/// Reference label of color `i`.
pub fn ref_label(i: usize) -> String {
    format!("~{i}")
}

/// A marked graph with designated input, output and reference vertices:
/// the unit of function simulation.
#[derive(Clone, Debug)]
pub struct SimGraph {
    pub graph: MarkedGraph,
    pub inputs: Vec<VertexId>,
    pub outputs: Vec<VertexId>,
    pub reference: Vec<VertexId>,
    /// Number of colors.
    pub n: usize,
    /// Alphabet size.
    pub m: usize,
    /// Bracketed amalgam expression the gadget was assembled from.
    pub trace: String,
}

impl SimGraph {
    pub fn p(&self) -> usize {
        self.inputs.len()
    }

    pub fn q(&self) -> usize {
        self.outputs.len()
    }

    /// Checks the structural invariants: parameters, `R` inducing `K_n`,
    /// role vertices present, `X ∩ R = ∅`, simplicity.
    pub fn check(&self) -> Result<(), GadgetError> {
        check_params(self.m, self.n)?;
        if self.q() == 0 {
            return Err(GadgetError::Arity("a simulator needs at least one output".into()));
        }
        if self.reference.len() != self.n || !self.graph.is_clique(&self.reference) {
            return Err(GadgetError::Wiring("reference vertices do not induce K_n".into()));
        }
        for v in self.inputs.iter().chain(&self.outputs) {
            if !self.graph.contains(*v) {
                return Err(GraphError::UnknownVertex(*v).into());
            }
        }
        if self.inputs.iter().any(|x| self.reference.contains(x)) {
            return Err(GadgetError::Wiring("an input is a reference vertex".into()));
        }
        if !self.graph.is_simple() {
            return Err(GadgetError::Wiring("graph is not simple".into()));
        }
        Ok(())
    }

    /// Re-marks the interface: inputs `x0…`, outputs `y0…` (unless the output
    /// is also an input), references `~0…`. Everything else is unmarked.
    pub fn normalize_marks(&mut self) -> Result<(), GadgetError> {
        self.graph.clear_marks();
        for (k, &r) in self.reference.iter().enumerate() {
            self.graph.mark(r, &ref_label(k))?;
        }
        for (i, &x) in self.inputs.iter().enumerate() {
            if self.graph.label_of(x).is_none() {
                self.graph.mark(x, &format!("x{i}"))?;
            }
        }
        for (j, &y) in self.outputs.iter().enumerate() {
            if self.graph.label_of(y).is_none() {
                self.graph.mark(y, &format!("y{j}"))?;
            }
        }
        Ok(())
    }
}

pub(crate) fn check_params(m: usize, n: usize) -> Result<(), GadgetError> {
    if m < 2 || n < m.max(3) {
        return Err(GadgetError::Parameters { m, n });
    }
    Ok(())
}

/// Builds a gadget from named pieces, mirroring the bracket notation:
/// every `place` is one `G[…]` summand, every `edge` one `e[a, b]`.
pub(crate) struct Assembly {
    graph: MarkedGraph,
    n: usize,
    m: usize,
    name: String,
    terms: Vec<String>,
    fresh: usize,
}

impl Assembly {
    pub(crate) fn new(name: impl Into<String>, m: usize, n: usize) -> Self {
        let refs: Vec<String> = (0..n).map(ref_label).collect();
        Self {
            graph: MarkedGraph::clique(&refs).expect("distinct reference labels"),
            n,
            m,
            name: name.into(),
            terms: Vec::new(),
            fresh: 0,
        }
    }

    /// Makes sure a vertex with this label exists.
    pub(crate) fn touch(&mut self, label: &str) {
        self.ensure(label);
    }

    /// A label not used before in this assembly.
    pub(crate) fn fresh(&mut self, hint: &str) -> String {
        self.fresh += 1;
        format!("{hint}#{}", self.fresh)
    }

    fn ensure(&mut self, label: &str) -> VertexId {
        match self.graph.vertex(label) {
            Some(v) => v,
            None => self.graph.add_marked_vertex(label).expect("label checked absent"),
        }
    }

    /// `e[a, b]`
    pub(crate) fn edge(&mut self, a: &str, b: &str) -> Result<(), GadgetError> {
        let (va, vb) = (self.ensure(a), self.ensure(b));
        self.graph.add_edge(va, vb)?;
        self.terms.push(format!("e[{a},{b}]"));
        Ok(())
    }

    /// `Σ_{c ∈ colors} e[v, ~c]`
    pub(crate) fn exclude<I: IntoIterator<Item = usize>>(&mut self, v: &str, colors: I) -> Result<(), GadgetError> {
        let vv = self.ensure(v);
        let cs: Vec<usize> = colors.into_iter().collect();
        for &c in &cs {
            let r = self.graph.vertex(&ref_label(c)).expect("reference vertex");
            self.graph.add_edge(vv, r)?;
        }
        if !cs.is_empty() {
            let list = cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
            self.terms.push(format!("Σ_{{k∈{{{list}}}}} e[{v},~k]"));
        }
        Ok(())
    }

    /// Places a copy of `g`, identifying its inputs with `inputs`, its
    /// reference vertices with ours, and its outputs with `outputs`.
    /// A `None` output gets a fresh label, or the label of the input it
    /// coincides with. Returns the output labels actually used.
    pub(crate) fn place(
        &mut self,
        g: &SimGraph,
        inputs: &[&str],
        outputs: &[Option<&str>],
    ) -> Result<Vec<String>, GadgetError> {
        if inputs.len() != g.p() || outputs.len() != g.q() {
            return Err(GadgetError::Arity(format!(
                "{} expects {} inputs and {} outputs, got {} and {}",
                first_line(&g.trace),
                g.p(),
                g.q(),
                inputs.len(),
                outputs.len()
            )));
        }
        if g.n != self.n {
            return Err(GadgetError::Wiring(format!(
                "color count mismatch: {} vs {}",
                g.n, self.n
            )));
        }
        let mut target: Vec<Option<String>> = vec![None; g.graph.vertex_count()];
        for (k, &r) in g.reference.iter().enumerate() {
            target[r.index()] = Some(ref_label(k));
        }
        for (i, &x) in g.inputs.iter().enumerate() {
            assign(&mut target, x, inputs[i])?;
        }
        let mut used = Vec::with_capacity(outputs.len());
        for (j, &y) in g.outputs.iter().enumerate() {
            let label = match (outputs[j], &target[y.index()]) {
                (Some(l), _) => l.to_string(),
                (None, Some(existing)) => existing.clone(),
                (None, None) => self.fresh("o"),
            };
            assign(&mut target, y, &label)?;
            used.push(label);
        }
        let mut identify = vec![None; g.graph.vertex_count()];
        for (i, t) in target.iter().enumerate() {
            if let Some(l) = t {
                identify[i] = Some(self.ensure(l));
            }
        }
        self.graph.glue(&g.graph, &identify)?;
        let head = first_line(&g.trace);
        self.terms
            .push(format!("{head}[{};{}]", inputs.join(","), used.join(",")));
        Ok(used)
    }

    /// Finalizes: only the interface and `R` stay marked.
    pub(crate) fn finish(self, inputs: &[&str], outputs: &[&str]) -> Result<SimGraph, GadgetError> {
        let lookup = |l: &str| {
            self.graph
                .vertex(l)
                .ok_or_else(|| GadgetError::from(GraphError::UnknownLabel(l.to_string())))
        };
        let xs = inputs.iter().map(|l| lookup(l)).collect::<Result<Vec<_>, _>>()?;
        let ys = outputs.iter().map(|l| lookup(l)).collect::<Result<Vec<_>, _>>()?;
        let rs = (0..self.n)
            .map(|k| lookup(&ref_label(k)))
            .collect::<Result<Vec<_>, _>>()?;
        let trace = format!(
            "{}[{};{};R] := {}",
            self.name,
            inputs.join(","),
            outputs.join(","),
            if self.terms.is_empty() { "K_n[R]".to_string() } else { self.terms.join(" + ") }
        );
        let mut g = SimGraph {
            graph: self.graph,
            inputs: xs,
            outputs: ys,
            reference: rs,
            n: self.n,
            m: self.m,
            trace,
        };
        g.normalize_marks()?;
        Ok(g)
    }
}

fn assign(target: &mut [Option<String>], v: VertexId, label: &str) -> Result<(), GadgetError> {
    match &target[v.index()] {
        Some(l) if l != label => Err(GadgetError::Wiring(format!(
            "one gadget vertex would be identified with both `{l}` and `{label}`"
        ))),
        _ => {
            target[v.index()] = Some(label.to_string());
            Ok(())
        }
    }
}

fn first_line(trace: &str) -> &str {
    let head = trace.split(" := ").next().unwrap_or(trace);
    head.split('[').next().unwrap_or(head)
}

/// Swaps the roles of inputs and outputs. When `g` simulates a one-to-one
/// partial function, the result simulates its inverse.
pub fn swap_io(g: &SimGraph) -> Result<SimGraph, GadgetError> {
    if g.p() == 0 {
        return Err(GadgetError::Arity("cannot swap a gadget without inputs".into()));
    }
    if g.outputs.iter().any(|y| g.reference.contains(y)) {
        return Err(GadgetError::Wiring("an output is a reference vertex".into()));
    }
    let mut s = g.clone();
    std::mem::swap(&mut s.inputs, &mut s.outputs);
    s.trace = format!("swap({})", first_line(&g.trace));
    s.normalize_marks()?;
    Ok(s)
}
