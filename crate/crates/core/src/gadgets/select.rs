//! `dot`, `xt` and the multiplexor `Mux`.

use super::boolean::{build_and, build_not, build_or, build_vand, build_vor};
use super::coder::{build_ch, build_ps, build_xp};
use super::simgraph::{check_params, Assembly, GadgetError, SimGraph};

fn vector(prefix: &str, m: usize) -> Vec<String> {
    (0..m).map(|i| format!("{prefix}{i}")).collect()
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

fn some(v: &[String]) -> Vec<Option<&str>> {
    v.iter().map(|s| Some(s.as_str())).collect()
}

/// `dot_m(i, 0) = 0`, `dot_m(i, 1) = i`.
pub fn build_dot(m: usize, n: usize) -> Result<SimGraph, GadgetError> {
    check_params(m, n)?;
    let mut a = Assembly::new(format!("dot({m})"), m, n);
    let (v, u, w) = (vector("v", m), vector("u", m), vector("w", m));
    a.place(&build_ch(m, n)?, &["x"], &some(&v))?;
    a.place(&build_xp(m, n)?, &["y"], &some(&u))?;
    a.place(&build_ps(m, n)?, &refs(&w), &[Some("z")])?;
    a.place(&build_or(m, n)?, &[&v[0], "t"], &[Some(&w[0])])?;
    a.place(&build_not(m, n)?, &[&u[0]], &[Some("t")])?;
    let and = build_and(m, n)?;
    for k in 1..m {
        a.place(&and, &[&v[k], &u[k]], &[Some(&w[k])])?;
    }
    a.finish(&["x", "y"], &["z"])
}

/// `xt_m(u) = k` when every `u_i ∈ {0, k}`. The all-zero vector gives 0.
pub fn build_xt(m: usize, n: usize) -> Result<SimGraph, GadgetError> {
    check_params(m, n)?;
    let mut a = Assembly::new(format!("xt({m})"), m, n);
    let x = vector("x", m);
    let w = vector("w", m);
    // v[i][j] is coordinate j of ch(x_i)
    let v: Vec<Vec<String>> = (0..m).map(|i| vector(&format!("v{i}_"), m)).collect();
    let column = |j: usize| v.iter().map(|row| row[j].clone()).collect::<Vec<_>>();
    a.place(&build_vand(m, m, n)?, &refs(&column(0)), &[Some(&w[0])])?;
    a.place(&build_ps(m, n)?, &refs(&w), &[Some("t")])?;
    let ch = build_ch(m, n)?;
    for i in 0..m {
        a.place(&ch, &[&x[i]], &some(&v[i]))?;
    }
    let vor = build_vor(m, m, n)?;
    for j in 1..m {
        a.place(&vor, &refs(&column(j)), &[Some(&w[j])])?;
    }
    a.finish(&refs(&x), &["t"])
}

/// `Mux_m(v, 1_m^i) = v_i`, inputs ordered `v_0 … v_{m-1}, u_0 … u_{m-1}`.
pub fn build_mux(m: usize, n: usize) -> Result<SimGraph, GadgetError> {
    check_params(m, n)?;
    let mut a = Assembly::new(format!("mux({m})"), m, n);
    let (v, u, w) = (vector("v", m), vector("u", m), vector("w", m));
    let dot = build_dot(m, n)?;
    for i in 0..m {
        a.place(&dot, &[&v[i], &u[i]], &[Some(&w[i])])?;
    }
    a.place(&build_xt(m, n)?, &refs(&w), &[Some("t")])?;
    let ins: Vec<&str> = v.iter().chain(&u).map(String::as_str).collect();
    a.finish(&ins, &["t"])
}
