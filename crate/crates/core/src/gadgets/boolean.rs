//! Extended Boolean gates: defined on `{0, 1}`, undefined on other symbols.

use super::permutation::{build_cs, build_l};
use super::simgraph::{check_params, Assembly, GadgetError, SimGraph};

/// `not_m`: a single edge, both ends restricted to `{0, 1}`.
pub fn build_not(m: usize, n: usize) -> Result<SimGraph, GadgetError> {
    check_params(m, n)?;
    let mut a = Assembly::new(format!("not({m})"), m, n);
    a.edge("x", "y")?;
    a.exclude("x", 2..n)?;
    a.exclude("y", 2..n)?;
    a.finish(&["x"], &["y"])
}

/// `and_m`.
///
/// The shift feeding `v` runs over `max(m, 3)` symbols. With a shift over
/// only two symbols, `y = 1` gives `v = 0` and clashes with `w = 0` when
/// `x = 0`, so `and(0, 1)` would have no coloring at `m = 2`.
pub fn build_and(m: usize, n: usize) -> Result<SimGraph, GadgetError> {
    check_params(m, n)?;
    let mut a = Assembly::new(format!("and({m})"), m, n);
    a.place(&build_l(0, n)?, &["x"], &[Some("w")])?;
    a.place(&build_cs(true, m.max(3), n)?, &["y"], &[Some("v")])?;
    a.place(&build_l(1, n)?, &["w"], &[Some("z")])?;
    a.edge("v", "w")?;
    a.exclude("x", 2..n)?;
    a.exclude("y", 2..n)?;
    a.exclude("w", 3..n)?;
    a.exclude("z", 2..n)?;
    a.finish(&["x", "y"], &["z"])
}

/// `or_m(x, y) = not(and(not x, not y))`.
pub fn build_or(m: usize, n: usize) -> Result<SimGraph, GadgetError> {
    let not = build_not(m, n)?;
    let and = build_and(m, n)?;
    let mut a = Assembly::new(format!("or({m})"), m, n);
    a.place(&not, &["x"], &[Some("a")])?;
    a.place(&not, &["y"], &[Some("b")])?;
    a.place(&and, &["a", "b"], &[Some("c")])?;
    a.place(&not, &["c"], &[Some("z")])?;
    a.finish(&["x", "y"], &["z"])
}

/// Reduces `inputs` with a balanced tree of `gate` copies and returns the
/// label of the root. A lone input is passed through untouched.
fn gate_tree(a: &mut Assembly, gate: &SimGraph, inputs: &[String]) -> Result<String, GadgetError> {
    if inputs.len() == 1 {
        return Ok(inputs[0].clone());
    }
    let mid = inputs.len().div_ceil(2);
    let left = gate_tree(a, gate, &inputs[..mid])?;
    let right = gate_tree(a, gate, &inputs[mid..])?;
    let out = a.place(gate, &[&left, &right], &[None])?;
    Ok(out[0].clone())
}

fn build_tree(name: &str, gate: SimGraph, r: usize, m: usize, n: usize) -> Result<SimGraph, GadgetError> {
    if r < 2 {
        return Err(GadgetError::Arity(format!("{name} needs r >= 2, got {r}")));
    }
    let mut a = Assembly::new(format!("{name}({r};{m})"), m, n);
    let xs: Vec<String> = (0..r).map(|i| format!("x{i}")).collect();
    let root = gate_tree(&mut a, &gate, &xs)?;
    let ins: Vec<&str> = xs.iter().map(String::as_str).collect();
    a.finish(&ins, &[&root])
}

/// `vand_r`: 1 iff every input is 1.
pub fn build_vand(r: usize, m: usize, n: usize) -> Result<SimGraph, GadgetError> {
    build_tree("vand", build_and(m, n)?, r, m, n)
}

/// `vor_r`: 0 iff every input is 0.
pub fn build_vor(r: usize, m: usize, n: usize) -> Result<SimGraph, GadgetError> {
    build_tree("vor", build_or(m, n)?, r, m, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn not_is_one_edge_plus_exclusions() {
        let g = build_not(2, 3).unwrap();
        // K_3, x-y, x-~2, y-~2
        assert_eq!(g.graph.stats().edge_count, 6);
        assert_eq!(g.graph.vertex_count(), 5);
    }

    #[test]
    fn tree_arity() {
        let g = build_vor(3, 2, 3).unwrap();
        assert_eq!((g.p(), g.q()), (3, 1));
        assert!(build_vand(1, 2, 3).is_err());
    }
}
