//! Text formats: edge lists, `.sg` simulators, `.fn` function tables, DOT.
//!
//! Edge list:
//! ```text
//! vertices 3 edges 2
//! 0 1
//! 1 2
//! mark a 0
//! ```
//! A `.sg` file is an edge list followed by `params n m p q` and one
//! `X i <label>`, `Y j <label>` or `R k <label>` line per role vertex.
//! A `.fn` file starts with `m <m> p <p> q <q>` and lists rows
//! `x_1 … x_p -> y_1 … y_q`; missing rows are undefined. `#` starts a comment.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::extend::PartialFunction;
use crate::gadgets::SimGraph;
use crate::graph::{MarkedGraph, VertexId};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Parse { line, message: message.into() })
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, FormatError> {
    match tok.map(str::parse) {
        Some(Ok(v)) => Ok(v),
        Some(Err(_)) => parse_err(line, format!("{what} is not a number")),
        None => parse_err(line, format!("missing {what}")),
    }
}

pub fn write_edge_list<W: Write>(g: &MarkedGraph, w: &mut W) -> io::Result<()> {
    writeln!(w, "vertices {} edges {}", g.vertex_count(), g.edge_count())?;
    for (a, b) in g.edges() {
        writeln!(w, "{a} {b}")?;
    }
    for (label, v) in g.marks() {
        writeln!(w, "mark {label} {v}")?;
    }
    Ok(())
}

pub fn write_dot<W: Write>(g: &MarkedGraph, w: &mut W) -> io::Result<()> {
    writeln!(w, "graph G {{")?;
    for (label, v) in g.marks() {
        writeln!(w, "  {v} [label=\"{}\"];", label.replace('\\', "\\\\").replace('"', "\\\""))?;
    }
    for (a, b) in g.edges() {
        writeln!(w, "  {a} -- {b};")?;
    }
    writeln!(w, "}}")
}

pub fn write_sim_graph<W: Write>(g: &SimGraph, w: &mut W) -> io::Result<()> {
    write_edge_list(&g.graph, w)?;
    writeln!(w, "params {} {} {} {}", g.n, g.m, g.p(), g.q())?;
    let label = |v: VertexId| g.graph.label_of(v).unwrap_or("?").to_string();
    for (i, &x) in g.inputs.iter().enumerate() {
        writeln!(w, "X {i} {}", label(x))?;
    }
    for (j, &y) in g.outputs.iter().enumerate() {
        writeln!(w, "Y {j} {}", label(y))?;
    }
    for (k, &r) in g.reference.iter().enumerate() {
        writeln!(w, "R {k} {}", label(r))?;
    }
    Ok(())
}

/// Everything a `.sg` or edge-list file can hold.
struct Parsed {
    graph: MarkedGraph,
    params: Option<(usize, usize, usize, usize, usize)>,
    roles: Vec<(char, usize, String, usize)>,
}

fn parse_graph<R: BufRead>(r: R) -> Result<Parsed, FormatError> {
    let mut lines = r.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (header_line, header) = loop {
        match lines.next() {
            None => return parse_err(1, "missing `vertices N edges M` header"),
            Some((i, l)) => {
                let l = l?;
                if !l.trim().is_empty() {
                    break (i, l);
                }
            }
        }
    };
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "vertices" || toks[2] != "edges" {
        return parse_err(header_line, "expected `vertices N edges M`");
    }
    let nv: usize = num(Some(toks[1]), header_line, "vertex count")?;
    let ne: usize = num(Some(toks[3]), header_line, "edge count")?;
    let mut g = MarkedGraph::new();
    for _ in 0..nv {
        g.add_vertex();
    }
    let mut edges = 0;
    let mut out = Parsed { graph: MarkedGraph::new(), params: None, roles: Vec::new() };
    for (i, l) in lines {
        let l = l?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        let vertex = |tok: Option<&str>| -> Result<VertexId, FormatError> {
            let v: u32 = num(tok, i, "vertex id")?;
            if v as usize >= nv {
                return parse_err(i, format!("vertex {v} out of range"));
            }
            Ok(VertexId(v))
        };
        match toks.first().copied() {
            None => {}
            Some("mark") => {
                if toks.len() != 3 {
                    return parse_err(i, "expected `mark <label> <id>`");
                }
                let v = vertex(Some(toks[2]))?;
                if let Err(e) = g.mark(v, toks[1]) {
                    return parse_err(i, e.to_string());
                }
            }
            Some("params") => {
                if toks.len() != 5 {
                    return parse_err(i, "expected `params n m p q`");
                }
                out.params = Some((
                    num(Some(toks[1]), i, "n")?,
                    num(Some(toks[2]), i, "m")?,
                    num(Some(toks[3]), i, "p")?,
                    num(Some(toks[4]), i, "q")?,
                    i,
                ));
            }
            Some(role @ ("X" | "Y" | "R")) => {
                if toks.len() != 3 {
                    return parse_err(i, format!("expected `{role} <index> <label>`"));
                }
                let idx = num(Some(toks[1]), i, "role index")?;
                out.roles.push((role.chars().next().unwrap(), idx, toks[2].to_string(), i));
            }
            Some(_) => {
                if toks.len() != 2 {
                    return parse_err(i, "expected `u v`");
                }
                let (a, b) = (vertex(Some(toks[0]))?, vertex(Some(toks[1]))?);
                match g.add_edge(a, b) {
                    Ok(true) => edges += 1,
                    Ok(false) => return parse_err(i, format!("duplicate edge {a} {b}")),
                    Err(e) => return parse_err(i, e.to_string()),
                }
            }
        }
    }
    if edges != ne {
        return parse_err(header_line, format!("header announces {ne} edges, found {edges}"));
    }
    out.graph = g;
    Ok(out)
}

pub fn read_edge_list<R: BufRead>(r: R) -> Result<MarkedGraph, FormatError> {
    Ok(parse_graph(r)?.graph)
}

pub fn read_sim_graph<R: BufRead>(r: R) -> Result<SimGraph, FormatError> {
    let parsed = parse_graph(r)?;
    let Some((n, m, p, q, pline)) = parsed.params else {
        return parse_err(0, "missing `params n m p q` line");
    };
    let g = parsed.graph;
    let mut slots: [Vec<Option<VertexId>>; 3] = [vec![None; p], vec![None; q], vec![None; n]];
    for (role, idx, label, line) in parsed.roles {
        let slot = match role {
            'X' => &mut slots[0],
            'Y' => &mut slots[1],
            _ => &mut slots[2],
        };
        let Some(v) = g.vertex(&label) else {
            return parse_err(line, format!("unknown label `{label}`"));
        };
        match slot.get_mut(idx) {
            Some(s @ None) => *s = Some(v),
            Some(Some(_)) => return parse_err(line, format!("{role} {idx} given twice")),
            None => return parse_err(line, format!("{role} index {idx} out of range")),
        }
    }
    let [xs, ys, rs] = slots;
    let collect = |v: Vec<Option<VertexId>>, role: &str| -> Result<Vec<VertexId>, FormatError> {
        v.into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or(()).or_else(|_| parse_err(pline, format!("{role} {i} missing"))))
            .collect()
    };
    let sg = SimGraph {
        inputs: collect(xs, "X")?,
        outputs: collect(ys, "Y")?,
        reference: collect(rs, "R")?,
        graph: g,
        n,
        m,
        trace: "loaded".into(),
    };
    if let Err(e) = sg.check() {
        return parse_err(pline, e.to_string());
    }
    Ok(sg)
}

pub fn parse_function_table(text: &str) -> Result<PartialFunction, FormatError> {
    let mut phi: Option<PartialFunction> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let Some(f) = phi.as_mut() else {
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.len() != 6 || toks[0] != "m" || toks[2] != "p" || toks[4] != "q" {
                return parse_err(line, "expected header `m <m> p <p> q <q>`");
            }
            let (m, p, q): (usize, usize, usize) =
                (num(Some(toks[1]), line, "m")?, num(Some(toks[3]), line, "p")?, num(Some(toks[5]), line, "q")?);
            if m < 1 || q < 1 {
                return parse_err(line, "need m >= 1 and q >= 1");
            }
            phi = Some(PartialFunction::empty(m, p, q));
            continue;
        };
        let Some((lhs, rhs)) = l.split_once("->") else {
            return parse_err(line, "expected `x_1 … x_p -> y_1 … y_q`");
        };
        let tuple = |s: &str| -> Result<Vec<usize>, FormatError> {
            s.split_whitespace().map(|t| num(Some(t), line, "symbol")).collect()
        };
        if let Err(e) = f.insert(tuple(lhs)?, tuple(rhs)?) {
            return parse_err(line, e.to_string());
        }
    }
    match phi {
        Some(f) => Ok(f),
        None => parse_err(1, "empty function table"),
    }
}

pub fn serialize_function_table(phi: &PartialFunction) -> String {
    let mut out = format!("m {} p {} q {}\n", phi.m, phi.p, phi.q);
    let join = |t: &[usize]| t.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ");
    for (x, y) in phi.rows() {
        out.push_str(&format!("{} -> {}\n", join(x), join(y)));
    }
    out
}
