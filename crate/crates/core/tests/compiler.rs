use std::sync::OnceLock;

use colorsim::colorer::{propagate, ColorSet, ListAssignment};
use colorsim::compiler::{blow_up_graph, compile, compile_with, plan, CompileError, CompileOptions, CompileReport};
use colorsim::extend::{digits, PartialFunction};
use colorsim::gadgets::{build_edge_gadget, SimGraph};
use colorsim::graph::{MarkedGraph, VertexId};

fn not_fn() -> PartialFunction {
    PartialFunction::from_fn(2, 1, 1, |x| Some(vec![1 - x[0]])).unwrap()
}

fn compiled_not() -> &'static (SimGraph, CompileReport) {
    static CELL: OnceLock<(SimGraph, CompileReport)> = OnceLock::new();
    CELL.get_or_init(|| compile(&not_fn(), 3).unwrap())
}

fn bare(graph: MarkedGraph, n: usize) -> SimGraph {
    SimGraph { graph, inputs: vec![], outputs: vec![], reference: vec![], n, m: 2, trace: String::new() }
}

#[test]
fn not_report() {
    let (g, report) = compiled_not();
    assert_eq!((report.r, report.n_tilde, report.theta, report.star_used), (2, 9, 1, None));
    assert_eq!(report.stats, g.graph.stats());
    assert_eq!((g.p(), g.q(), g.n, g.m), (1, 1, 3, 2));
    let text = report.to_string();
    assert!(text.starts_with("theta 1\nr 2\nn_tilde 9\n"), "{text}");
}

#[test]
fn vertex_count_recount() {
    // n + r·|V(g̃)| + |E(g̃)|·(|V(E)| − 2r − n): reference clique, the
    // coordinate vertices, and the private vertices of each edge gadget
    let (g, report) = compiled_not();
    let (n, r) = (3u64, report.r as u64);
    let want = n + r * report.tilde_stats.vertex_count
        + report.tilde_stats.edge_count * (report.edge_gadget_stats.vertex_count - 2 * r - n);
    assert_eq!(g.graph.vertex_count() as u64, want);
}

#[test]
fn reference_is_a_clique() {
    let (g, _) = compiled_not();
    assert_eq!(g.reference.len(), 3);
    assert!(g.graph.is_clique(&g.reference));
    assert!(g.graph.is_simple());
}

#[test]
fn reference_tuples_are_forced_by_r() {
    let plan = plan(&not_fn(), 3).unwrap();
    let (_, coords) = blow_up_graph(&plan.tilde, &plan.edge_gadget, plan.r, plan.n).unwrap();
    let g = plan.blow_up().unwrap();
    let mut lists = ListAssignment::full(3, g.graph.vertex_count());
    for (c, &r) in g.reference.iter().enumerate() {
        lists.set(r, ColorSet::single(c));
    }
    propagate(&g.graph, &mut lists);
    for (j, &tv) in plan.tilde.reference.iter().enumerate() {
        let d = digits(j, 3, 2).unwrap();
        for t in 0..2 {
            assert_eq!(lists.get(coords[tv.index()][t]), ColorSet::single(d[t]), "~{j} coordinate {t}");
        }
    }
}

#[test]
fn single_edge_blows_up_to_e1() {
    let mut edge = MarkedGraph::new();
    let (a, b) = (edge.add_vertex(), edge.add_vertex());
    edge.add_edge(a, b).unwrap();
    let e1 = build_edge_gadget(1, 3, 3).unwrap();
    let (g, coords) = blow_up_graph(&bare(edge, 3), &e1, 1, 3).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (5, 4));
    assert!(g.has_edge(coords[0][0], coords[1][0]));
}

#[test]
fn triangle_blows_up_to_three_gadgets() {
    let mut tri = MarkedGraph::new();
    let v: Vec<VertexId> = (0..3).map(|_| tri.add_vertex()).collect();
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        tri.add_edge(v[i], v[j]).unwrap();
    }
    let e2 = build_edge_gadget(2, 3, 3).unwrap();
    let (ev, ee) = (e2.graph.vertex_count(), e2.graph.edge_count());
    let (g, coords) = blow_up_graph(&bare(tri, 9), &e2, 2, 3).unwrap();
    assert_eq!(g.vertex_count(), 3 + 3 * 2 + 3 * (ev - 4 - 3));
    assert_eq!(g.edge_count(), 3 + 3 * (ee - 3));
    assert_eq!(g.marks().len(), 3);
    assert_eq!(coords.iter().flatten().count(), 6);
}

#[test]
fn partial_function_uses_a_star() {
    let half = PartialFunction::from_fn(2, 1, 1, |x| (x[0] == 0).then(|| vec![1])).unwrap();
    let p = plan(&half, 3).unwrap();
    assert_eq!(p.star, Some(0));
    assert_eq!(p.total.get(&[1]), Some(&[0][..]));
    let stats = p.projected_stats();
    let g = p.blow_up().unwrap();
    assert_eq!(g.graph.stats(), stats);
    let y = g.outputs[0];
    assert!(g.graph.has_edge(y, g.reference[0]));
}

#[test]
fn and_exceeds_the_default_limit() {
    let and = PartialFunction::from_fn(2, 2, 1, |x| Some(vec![x[0] & x[1]])).unwrap();
    let p = plan(&and, 3).unwrap();
    assert_eq!((p.r, p.n_tilde), (3, 27));
    let projected = p.projected_stats().vertex_count;
    assert!(projected > CompileOptions::default().max_vertices);
    match compile(&and, 3) {
        Err(CompileError::TooLarge { projected: got, .. }) => assert_eq!(got, projected),
        other => panic!("expected TooLarge, got {:?}", other.map(|(_, r)| r)),
    }
}

#[test]
fn small_limit_is_enforced() {
    let opts = CompileOptions { max_vertices: 1000 };
    assert!(matches!(compile_with(&not_fn(), 3, &opts), Err(CompileError::TooLarge { .. })));
}
