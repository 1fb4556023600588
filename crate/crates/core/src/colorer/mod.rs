//! List-coloring propagation, evaluation of simulators and verification
//! against the exhaustive oracle.

mod forcing;
mod lists;
mod oracle;

use std::fmt;

use thiserror::Error;

pub use forcing::{
    apply_direct_forcing, is_irreducible, normal_form, normal_form_in_order, normal_form_transcript, propagate,
    ForcingStep, NormalForm, Transcript,
};
pub use lists::{ColorSet, ListAssignment, MAX_COLORS};
pub use oracle::{count_extensions, enumerate_list_colorings, ExtensionCount};

use crate::extend::{all_tuples, PartialFunction};
use crate::gadgets::SimGraph;
use crate::graph::VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("expected {expected} input symbols, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("input symbol {symbol} is not below m = {m}")]
    Range { symbol: usize, m: usize },
    #[error("{0} colors exceed the supported maximum")]
    TooManyColors(usize),
}

/// What propagation made of a pinned simulator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringOutcome {
    /// Every list became a singleton; the coloring, indexed by vertex id.
    Unique(Vec<usize>),
    /// Some list became empty: the pins do not extend.
    Infeasible,
    /// Propagation stopped with lists of several colors left.
    Unresolved(ListAssignment),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub outcome: ColoringOutcome,
    /// Output colors when the outcome is `Unique`.
    pub output: Option<Vec<usize>>,
    pub rewrites: usize,
}

impl Evaluation {
    pub fn is_infeasible(&self) -> bool {
        self.outcome == ColoringOutcome::Infeasible
    }

    pub fn is_unresolved(&self) -> bool {
        matches!(self.outcome, ColoringOutcome::Unresolved(_))
    }
}

/// Initial lists: `~i` gets `{i}`, `x_j` gets `{input[j]}`, everything else
/// the full palette. A vertex pinned twice to different colors gets `∅`.
pub fn initial_lists(g: &SimGraph, input: &[usize]) -> Result<ListAssignment, EvalError> {
    if input.len() != g.p() {
        return Err(EvalError::Arity { expected: g.p(), got: input.len() });
    }
    if let Some(&s) = input.iter().find(|&&s| s >= g.m) {
        return Err(EvalError::Range { symbol: s, m: g.m });
    }
    if g.n > MAX_COLORS {
        return Err(EvalError::TooManyColors(g.n));
    }
    let mut lists = ListAssignment::full(g.n, g.graph.vertex_count());
    let mut pinned = vec![false; lists.len()];
    let pins = g.reference.iter().copied().zip(0..g.n).chain(g.inputs.iter().copied().zip(input.iter().copied()));
    for (v, c) in pins {
        let s = ColorSet::single(c);
        let cur = if pinned[v.index()] { lists.get(v) & s } else { s };
        lists.set(v, cur);
        pinned[v.index()] = true;
    }
    Ok(lists)
}

/// Pins `R` and `X` and propagates. Never searches: lists left with several
/// colors come back as [`ColoringOutcome::Unresolved`].
pub fn evaluate(g: &SimGraph, input: &[usize]) -> Result<Evaluation, EvalError> {
    let mut lists = initial_lists(g, input)?;
    let rewrites = propagate(&g.graph, &mut lists);
    let outcome = if lists.any_empty() {
        ColoringOutcome::Infeasible
    } else if let Some(col) = lists.as_coloring() {
        debug_assert!(g.graph.edges().iter().all(|&(a, b)| col[a.index()] != col[b.index()]));
        ColoringOutcome::Unique(col)
    } else {
        ColoringOutcome::Unresolved(lists)
    };
    let output = match &outcome {
        ColoringOutcome::Unique(col) => Some(g.outputs.iter().map(|y| col[y.index()]).collect()),
        _ => None,
    };
    Ok(Evaluation { outcome, output, rewrites })
}

/// Exact extension count of the `R`/`X` pins, stopping at `cap`.
pub fn count_input_extensions(g: &SimGraph, input: &[usize], cap: u64) -> Result<ExtensionCount, EvalError> {
    Ok(count_extensions(&g.graph, &initial_lists(g, input)?, cap))
}

/// One failed expectation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub input: Vec<usize>,
    pub expected: Option<Vec<usize>>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub name: String,
    pub checked: usize,
    pub structural: Vec<String>,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.structural.is_empty() && self.failures.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{verdict} {} ({} assignments checked)", self.name, self.checked)?;
        for s in &self.structural {
            writeln!(f, "  structure: {s}")?;
        }
        for fl in &self.failures {
            let exp = match &fl.expected {
                Some(y) => format!("{y:?}"),
                None => "undefined".into(),
            };
            writeln!(f, "  input {:?}: expected {exp}, {}", fl.input, fl.detail)?;
        }
        Ok(())
    }
}

fn structural_checks(g: &SimGraph, report: &mut VerifyReport) {
    if let Err(e) = g.check() {
        report.structural.push(e.to_string());
    }
    let mut lists = ListAssignment::full(g.n, g.graph.vertex_count());
    for (c, &r) in g.reference.iter().enumerate() {
        lists.set(r, ColorSet::single(c));
    }
    if count_extensions(&g.graph, &lists, 1).count == 0 {
        report.structural.push("no n-coloring with R pinned".into());
    }
}

/// Checks that `g` simulates `phi`: structure, colorability, and for every
/// input in `S^p` exactly one extension with the right outputs where `phi`
/// is defined and none where it is not. The propagation evaluator is run
/// alongside and must agree with the oracle.
pub fn verify_simulates(g: &SimGraph, phi: &PartialFunction) -> VerifyReport {
    let points: Vec<Vec<usize>> = all_tuples(phi.m, phi.p).collect();
    verify_points(g, phi, &points)
}

/// [`verify_simulates`] restricted to the given inputs.
pub fn verify_points(g: &SimGraph, phi: &PartialFunction, points: &[Vec<usize>]) -> VerifyReport {
    let mut report = VerifyReport { name: first_word(&g.trace), ..Default::default() };
    structural_checks(g, &mut report);
    if (g.p(), g.q(), g.m) != (phi.p, phi.q, phi.m) {
        report.structural.push(format!(
            "gadget has (p, q, m) = ({}, {}, {}), table has ({}, {}, {})",
            g.p(),
            g.q(),
            g.m,
            phi.p,
            phi.q,
            phi.m
        ));
        return report;
    }
    for x in points {
        report.checked += 1;
        let expected = phi.get(x).map(<[usize]>::to_vec);
        let fail = |detail: String| Failure { input: x.clone(), expected: expected.clone(), detail };
        let count = match count_input_extensions(g, x, 2) {
            Ok(c) => c,
            Err(e) => {
                report.failures.push(fail(e.to_string()));
                continue;
            }
        };
        let oracle_out: Option<Vec<usize>> = count
            .witness
            .as_ref()
            .map(|w| g.outputs.iter().map(|y| w[y.index()]).collect());
        match (&expected, count.count) {
            (Some(y), 1) if oracle_out.as_ref() == Some(y) => {}
            (Some(_), 1) => report.failures.push(fail(format!("unique extension outputs {:?}", oracle_out.unwrap()))),
            (Some(_), 0) => report.failures.push(fail("no extension".into())),
            (None, 0) => {}
            (_, c) => report.failures.push(fail(format!(
                "{}{c} extensions, e.g. output {:?}",
                if count.capped { "at least " } else { "" },
                oracle_out.unwrap()
            ))),
        }
        let ev = evaluate(g, x).expect("arity checked above");
        let agrees = match (&ev.outcome, count.count) {
            (ColoringOutcome::Infeasible, 0) => true,
            (ColoringOutcome::Unique(col), 1) => count.witness.as_ref() == Some(col),
            _ => false,
        };
        if !agrees {
            let what = match &ev.outcome {
                ColoringOutcome::Unique(_) => format!("evaluator gives unique output {:?}", ev.output.unwrap()),
                ColoringOutcome::Infeasible => "evaluator reports infeasible".into(),
                ColoringOutcome::Unresolved(_) => "evaluator is unresolved".into(),
            };
            report.failures.push(fail(format!("{what} but the oracle counts {}", count.count)));
        }
    }
    report
}

/// The two-terminal guarantees of `L_{k,n}`: `x = k` forces `y = k` with a
/// unique extension, `y = k` forces `x = k`, and every pair of colors other
/// than `k` on `(x, y)` extends uniquely.
pub fn verify_l_gadget(g: &SimGraph, k: usize) -> VerifyReport {
    let mut report = VerifyReport { name: first_word(&g.trace), ..Default::default() };
    structural_checks(g, &mut report);
    if g.p() != 1 || g.q() != 1 {
        report.structural.push("L gadget must have one input and one output".into());
        return report;
    }
    let (x, y) = (g.inputs[0], g.outputs[0]);
    let n = g.n;
    let pin = |a: Option<usize>, b: Option<usize>| {
        let mut l = ListAssignment::full(n, g.graph.vertex_count());
        for (c, &r) in g.reference.iter().enumerate() {
            l.set(r, ColorSet::single(c));
        }
        let set = |l: &mut ListAssignment, v: VertexId, c: Option<usize>| {
            if let Some(c) = c {
                l.set(v, ColorSet::single(c));
            }
        };
        set(&mut l, x, a);
        set(&mut l, y, b);
        l
    };
    let mut nf = pin(None, Some(k));
    propagate(&g.graph, &mut nf);
    if nf.get(x) != ColorSet::single(k) {
        report.failures.push(Failure {
            input: vec![],
            expected: Some(vec![k]),
            detail: format!("y = {k} propagates x to {}", nf.get(x)),
        });
    }
    let mut expect = |input: Vec<usize>, lists: ListAssignment, want: u64, out: Option<usize>| {
        report.checked += 1;
        let c = count_extensions(&g.graph, &lists, 2);
        let got_out = c.witness.as_ref().map(|w| w[y.index()]);
        if c.count != want || (want == 1 && out.is_some() && got_out != out) {
            report.failures.push(Failure {
                input,
                expected: out.map(|o| vec![o]),
                detail: format!("expected {want} extensions, found {}", c.count),
            });
        }
    };
    expect(vec![k], pin(Some(k), None), 1, Some(k));
    for a in (0..n).filter(|&a| a != k) {
        expect(vec![a, k], pin(Some(a), Some(k)), 0, None);
        expect(vec![k, a], pin(Some(k), Some(a)), 0, None);
        for b in (0..n).filter(|&b| b != k) {
            expect(vec![a, b], pin(Some(a), Some(b)), 1, None);
        }
    }
    report
}

fn first_word(trace: &str) -> String {
    trace.split([' ', '[']).next().unwrap_or("").to_string()
}
