//! Wiring gadgets together over one shared reference clique.

use super::simgraph::{Assembly, GadgetError, SimGraph};

/// Where a stage input (or an outer output) takes its value from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    /// Outer input `i`.
    Input(usize),
    /// Output `output` of an earlier stage.
    Stage { stage: usize, output: usize },
}

#[derive(Clone, Debug)]
pub struct Stage {
    pub graph: SimGraph,
    pub sources: Vec<Source>,
}

/// A feed-forward circuit of simulators.
#[derive(Clone, Debug)]
pub struct WiringSpec {
    pub inputs: usize,
    pub stages: Vec<Stage>,
    pub outputs: Vec<Source>,
}

impl WiringSpec {
    pub fn new(inputs: usize) -> Self {
        Self { inputs, stages: Vec::new(), outputs: Vec::new() }
    }

    /// Appends a stage and returns its index.
    pub fn stage(&mut self, graph: SimGraph, sources: Vec<Source>) -> usize {
        self.stages.push(Stage { graph, sources });
        self.stages.len() - 1
    }

    pub fn output(mut self, outputs: Vec<Source>) -> Self {
        self.outputs = outputs;
        self
    }
}

/// Amalgamates the stages, identifying each consumed output with the input
/// that consumes it.
pub fn compose(spec: &WiringSpec) -> Result<SimGraph, GadgetError> {
    let first = spec
        .stages
        .first()
        .ok_or_else(|| GadgetError::Wiring("composition needs at least one stage".into()))?;
    let (m, n) = (first.graph.m, first.graph.n);
    if spec.outputs.is_empty() {
        return Err(GadgetError::Arity("composition needs at least one output".into()));
    }
    let mut a = Assembly::new("compose", m, n);
    let inputs: Vec<String> = (0..spec.inputs).map(|i| format!("in{i}")).collect();
    let mut produced: Vec<Vec<String>> = Vec::with_capacity(spec.stages.len());
    let resolve = |s: Source, produced: &[Vec<String>], at: &str| -> Result<String, GadgetError> {
        match s {
            Source::Input(i) => inputs
                .get(i)
                .cloned()
                .ok_or_else(|| GadgetError::Wiring(format!("{at}: no outer input {i}"))),
            Source::Stage { stage, output } => match produced.get(stage) {
                None => Err(GadgetError::Wiring(format!(
                    "{at}: stage {stage} is not earlier, wiring must be acyclic"
                ))),
                Some(outs) => outs
                    .get(output)
                    .cloned()
                    .ok_or_else(|| GadgetError::Wiring(format!("{at}: stage {stage} has no output {output}"))),
            },
        }
    };
    for (k, st) in spec.stages.iter().enumerate() {
        if st.graph.m != m || st.graph.n != n {
            return Err(GadgetError::Wiring(format!(
                "stage {k} has (m, n) = ({}, {}), expected ({m}, {n})",
                st.graph.m, st.graph.n
            )));
        }
        let at = format!("stage {k}");
        let ins = st
            .sources
            .iter()
            .map(|&s| resolve(s, &produced, &at))
            .collect::<Result<Vec<_>, _>>()?;
        let ins: Vec<&str> = ins.iter().map(String::as_str).collect();
        let outs = a.place(&st.graph, &ins, &vec![None; st.graph.q()])?;
        produced.push(outs);
    }
    let outs = spec
        .outputs
        .iter()
        .map(|&s| resolve(s, &produced, "outputs"))
        .collect::<Result<Vec<_>, _>>()?;
    for i in &inputs {
        a.touch(i);
    }
    let ins: Vec<&str> = inputs.iter().map(String::as_str).collect();
    let outs: Vec<&str> = outs.iter().map(String::as_str).collect();
    a.finish(&ins, &outs)
}
