//! Modular `add`/`sub` and the edge-simulation gadget `E_{r,n}`.

use super::boolean::build_vor;
use super::coder::build_ch;
use super::permutation::{build_cs, build_l};
use super::select::build_mux;
use super::simgraph::{check_params, Assembly, GadgetError, SimGraph};

/// `ch[y; u] + Mux[v, u; t] + Σ cs±[v_i; v_{i+1}]` with `v_0 = x`, so that
/// `v_i = x ± i` and the multiplexor picks `v_y`.
fn build_shift_select(plus: bool, m: usize, n: usize) -> Result<SimGraph, GadgetError> {
    check_params(m, n)?;
    let name = if plus { "add" } else { "sub" };
    let mut a = Assembly::new(format!("{name}({m})"), m, n);
    let v: Vec<String> = (0..m).map(|i| if i == 0 { "x".into() } else { format!("v{i}") }).collect();
    let u: Vec<String> = (0..m).map(|i| format!("u{i}")).collect();
    let outs: Vec<Option<&str>> = u.iter().map(|s| Some(s.as_str())).collect();
    a.place(&build_ch(m, n)?, &["y"], &outs)?;
    let ins: Vec<&str> = v.iter().chain(&u).map(String::as_str).collect();
    a.place(&build_mux(m, n)?, &ins, &[Some("t")])?;
    let cs = build_cs(plus, m, n)?;
    for i in 0..m - 1 {
        a.place(&cs, &[&v[i]], &[Some(&v[i + 1])])?;
    }
    a.finish(&["x", "y"], &["t"])
}

/// `add_m(x, y) = x + y mod m`.
pub fn build_add(m: usize, n: usize) -> Result<SimGraph, GadgetError> {
    build_shift_select(true, m, n)
}

/// `sub_m(x, y) = x - y mod m`.
pub fn build_sub(m: usize, n: usize) -> Result<SimGraph, GadgetError> {
    build_shift_select(false, m, n)
}

/// `E_{r,n}[u, v; v; R]`: simulates `Edg_r(u, v) = v` for `u ≠ v`, undefined
/// when `u = v`. Inputs are `u_0 … u_{r-1}, v_0 … v_{r-1}`; outputs are the
/// `v` vertices themselves.
pub fn build_edge_gadget(r: usize, m: usize, n: usize) -> Result<SimGraph, GadgetError> {
    check_params(m, n)?;
    if r == 0 {
        return Err(GadgetError::Arity("edge gadget needs r >= 1".into()));
    }
    let mut a = Assembly::new(format!("E({r};{m})"), m, n);
    let u: Vec<String> = (0..r).map(|i| format!("u{i}")).collect();
    let v: Vec<String> = (0..r).map(|i| format!("v{i}")).collect();
    if r == 1 {
        a.edge(&u[0], &v[0])?;
    } else {
        let sub = build_sub(m, n)?;
        let l0 = build_l(0, n)?;
        let z: Vec<String> = (0..r).map(|i| format!("z{i}")).collect();
        for i in 0..r {
            let w = format!("w{i}");
            a.place(&sub, &[&u[i], &v[i]], &[Some(&w)])?;
            a.place(&l0, &[&w], &[Some(&z[i])])?;
        }
        let zs: Vec<&str> = z.iter().map(String::as_str).collect();
        a.place(&build_vor(r, m, n)?, &zs, &[Some("y")])?;
        a.exclude("y", [0])?;
    }
    let ins: Vec<&str> = u.iter().chain(&v).map(String::as_str).collect();
    let outs: Vec<&str> = v.iter().map(String::as_str).collect();
    a.finish(&ins, &outs)
}
