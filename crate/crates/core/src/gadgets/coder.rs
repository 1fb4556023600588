//! `ch`, `ps` and `xp`: moving between symbols and 0/1 vectors.

use super::permutation::build_l;
use super::simgraph::{check_params, swap_io, Assembly, GadgetError, SimGraph};

fn labels(prefix: &str, m: usize) -> Vec<String> {
    (0..m).map(|i| format!("{prefix}{i}")).collect()
}

/// `G'_ch + Σ_{i ≥ m} e[x, ~i]` with input `x` and outputs `u_0 … u_{m-1}`.
fn ch_core(m: usize, n: usize) -> Result<Assembly, GadgetError> {
    check_params(m, n)?;
    let mut a = Assembly::new(format!("ch({m})"), m, n);
    let w = labels("w", m);
    let u = labels("u", m);
    a.edge(&w[0], &u[0])?;
    for i in 0..m {
        a.place(&build_l(i, n)?, &["x"], &[Some(&w[i])])?;
    }
    let l0 = build_l(0, n)?;
    for i in 1..m {
        a.place(&l0, &[&w[i]], &[Some(&u[i])])?;
    }
    a.exclude(&w[0], 2..n)?;
    for (j, wj) in w.iter().enumerate().skip(1) {
        a.exclude(wj, (0..n).filter(|&i| i != 0 && i != j))?;
    }
    for uj in &u {
        a.exclude(uj, 2..n)?;
    }
    a.exclude("x", m..n)?;
    Ok(a)
}

/// `ch_m(i) = 1_m^i`, the indicator vector of `i`.
pub fn build_ch(m: usize, n: usize) -> Result<SimGraph, GadgetError> {
    let a = ch_core(m, n)?;
    let u = labels("u", m);
    let outs: Vec<&str> = u.iter().map(String::as_str).collect();
    a.finish(&["x"], &outs)
}

/// `ps_m`, the inverse of `ch_m`: the same graph with roles swapped.
pub fn build_ps(m: usize, n: usize) -> Result<SimGraph, GadgetError> {
    let mut g = swap_io(&build_ch(m, n)?)?;
    g.trace = format!("ps({m}) := swap(ch({m}))");
    Ok(g)
}

/// `xp_m(0) = 0_m`, `xp_m(1) = 1_m`, undefined elsewhere.
pub fn build_xp(m: usize, n: usize) -> Result<SimGraph, GadgetError> {
    check_params(m, n)?;
    let mut a = Assembly::new(format!("xp({m})"), m, n);
    let v = labels("v", m);
    let (l0, l1) = (build_l(0, n)?, build_l(1, n)?);
    for vi in &v {
        a.place(&l0, &["x"], &[Some(vi)])?;
        a.place(&l1, &["x"], &[Some(vi)])?;
    }
    for vj in &v {
        a.exclude(vj, 2..n)?;
    }
    let outs: Vec<&str> = v.iter().map(String::as_str).collect();
    a.finish(&["x"], &outs)
}
