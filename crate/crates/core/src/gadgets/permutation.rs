//! `L_{k,n}`, transposition and permutation simulators.

use std::fmt;

use super::simgraph::{check_params, Assembly, GadgetError, SimGraph};

/// The two-terminal gadget `L_{k,n}[x, y; R]`: in every `n`-coloring `x`
/// has color `k` iff `y` does, and any two colors other than `k` on `x`, `y`
/// extend uniquely. It has `4n - 3` vertices and `n(7n - 11)/2` edges.
///
/// Built as `η_k + T_ζ` where the tree `T` on `{u_i : i ≠ k}` is the path
/// through the indices in ascending order.
pub fn build_l(k: usize, n: usize) -> Result<SimGraph, GadgetError> {
    if n < 3 {
        return Err(GadgetError::Parameters { m: n, n });
    }
    if k >= n {
        return Err(GadgetError::Arity(format!("L needs k < n, got k = {k}, n = {n}")));
    }
    let mut a = Assembly::new(format!("L({k},{n})"), n, n);
    let others: Vec<usize> = (0..n).filter(|&i| i != k).collect();
    let u = |i: usize| format!("u{i}");
    // η_k
    for &i in &others {
        a.edge("x", &u(i))?;
        a.edge(&u(i), "y")?;
        a.exclude(&u(i), (0..n).filter(|&z| z != k && z != i))?;
    }
    // ζ_k(i, j) on every tree edge
    for pair in others.windows(2) {
        let (i, j) = (pair[0], pair[1]);
        let v = a.fresh("v");
        let w = a.fresh("w");
        a.edge(&u(i), &v)?;
        a.edge(&v, &u(j))?;
        a.edge(&u(i), &w)?;
        a.edge(&w, &u(j))?;
        a.exclude(&v, (0..n).filter(|&z| z != k && z != i))?;
        a.exclude(&w, (0..n).filter(|&z| z != k && z != j))?;
    }
    a.finish(&["x"], &["y"])
}

/// Simulator of the transposition `τ(i, j)` on `{0, …, m-1}`.
pub fn build_transposition(i: usize, j: usize, m: usize, n: usize) -> Result<SimGraph, GadgetError> {
    check_params(m, n)?;
    if !(i < j && j < m) {
        return Err(GadgetError::Arity(format!(
            "transposition needs i < j < m, got i = {i}, j = {j}, m = {m}"
        )));
    }
    let mut a = Assembly::new(format!("tau({i},{j};{m})"), m, n);
    for k in (0..n).filter(|&k| k != i && k != j) {
        a.place(&build_l(k, n)?, &["x"], &[Some("y")])?;
    }
    a.exclude("u", (0..n).filter(|&z| z != i && z != j))?;
    a.exclude("v", (0..n).filter(|&z| z != i && z != j))?;
    a.exclude("x", m..n)?;
    a.exclude("y", m..n)?;
    a.place(&build_l(i, n)?, &["x"], &[Some("u")])?;
    a.place(&build_l(j, n)?, &["x"], &[Some("v")])?;
    a.edge("u", "y")?;
    a.edge("v", "y")?;
    a.finish(&["x"], &["y"])
}

/// A bijection on `{0, …, m-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, GadgetError> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            if x >= m || std::mem::replace(&mut seen[x], true) {
                return Err(GadgetError::Arity(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Self { images })
    }

    pub fn identity(m: usize) -> Self {
        Self { images: (0..m).collect() }
    }

    /// `i ↦ i + 1 (mod m)`
    pub fn shift_up(m: usize) -> Self {
        Self { images: (0..m).map(|i| (i + 1) % m).collect() }
    }

    /// `i ↦ i - 1 (mod m)`
    pub fn shift_down(m: usize) -> Self {
        Self { images: (0..m).map(|i| (i + m - 1) % m).collect() }
    }

    pub fn transposition(i: usize, j: usize, m: usize) -> Self {
        let mut images: Vec<usize> = (0..m).collect();
        images.swap(i, j);
        Self { images }
    }

    pub fn m(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.m()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Self { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Cycle decomposition into transpositions, applied left to right.
    ///
    /// Cycles are visited by ascending minimum element; the cycle
    /// `(c0 c1 … c_{k-1})` yields `(c0,c1), (c0,c2), …, (c0,c_{k-1})`.
    /// Each pair is returned with its smaller element first.
    pub fn to_transpositions(&self) -> Vec<(usize, usize)> {
        let mut seen = vec![false; self.m()];
        let mut out = Vec::new();
        for start in 0..self.m() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            for &c in &cycle[1..] {
                out.push((start.min(c), start.max(c)));
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Simulator of `π` over `n` colors: a chain of transposition gadgets. The
/// identity is the bare wire `x = y`.
pub fn build_permutation(pi: &Permutation, n: usize) -> Result<SimGraph, GadgetError> {
    let m = pi.m();
    check_params(m, n)?;
    let steps = pi.to_transpositions();
    let mut a = Assembly::new(format!("perm({pi})"), m, n);
    let mut cur = "x".to_string();
    if steps.is_empty() {
        a.exclude("x", m..n)?;
        return a.finish(&["x"], &["x"]);
    }
    for (s, &(i, j)) in steps.iter().enumerate() {
        let next = if s + 1 == steps.len() { "y".to_string() } else { format!("t{s}") };
        a.place(&build_transposition(i, j, m, n)?, &[&cur], &[Some(&next)])?;
        cur = next;
    }
    a.finish(&["x"], &["y"])
}

/// Cyclic shift `cs⁺` (`i ↦ i + 1 mod m`) or `cs⁻` (`i ↦ i - 1 mod m`).
pub fn build_cs(plus: bool, m: usize, n: usize) -> Result<SimGraph, GadgetError> {
    let pi = if plus { Permutation::shift_up(m) } else { Permutation::shift_down(m) };
    let mut g = build_permutation(&pi, n)?;
    g.trace = g
        .trace
        .replacen(&format!("perm({pi})"), &format!("cs{}({m})", if plus { "+" } else { "-" }), 1);
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn compose_left_to_right(m: usize, steps: &[(usize, usize)]) -> Vec<usize> {
        (0..m)
            .map(|x| {
                steps.iter().fold(x, |acc, &(i, j)| {
                    if acc == i {
                        j
                    } else if acc == j {
                        i
                    } else {
                        acc
                    }
                })
            })
            .collect()
    }

    #[test]
    fn l_sizes_small() {
        let g = build_l(0, 3).unwrap();
        assert_eq!((g.graph.vertex_count(), g.graph.edge_count()), (9, 15));
        let g = build_l(1, 4).unwrap();
        assert_eq!((g.graph.vertex_count(), g.graph.edge_count()), (13, 34));
        g.check().unwrap();
    }

    #[test]
    fn l_rejects_bad_k() {
        assert!(build_l(3, 3).is_err());
        assert!(build_l(0, 2).is_err());
    }

    #[test]
    fn transpositions_of_identity_and_swap() {
        assert!(Permutation::identity(4).to_transpositions().is_empty());
        assert_eq!(Permutation::transposition(0, 1, 2).to_transpositions(), vec![(0, 1)]);
    }

    #[test]
    fn three_cycle_decomposes_into_two() {
        let p = Permutation::new(vec![1, 2, 0]).unwrap();
        let t = p.to_transpositions();
        assert_eq!(t.len(), 2);
        assert_eq!(compose_left_to_right(3, &t), p.images());
    }

    #[test]
    fn transposition_arity_errors() {
        assert!(build_transposition(1, 1, 3, 3).is_err());
        assert!(build_transposition(0, 3, 3, 3).is_err());
        assert!(build_transposition(0, 1, 4, 3).is_err());
    }

    #[test]
    fn permutation_rejects_non_bijection() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
    }

    #[test]
    fn identity_is_a_wire() {
        let g = build_permutation(&Permutation::identity(3), 3).unwrap();
        assert_eq!(g.inputs, g.outputs);
        assert_eq!(g.graph.vertex_count(), 4);
    }

    #[test]
    fn permutation_larger_than_colors_fails() {
        assert!(build_permutation(&Permutation::identity(4), 3).is_err());
    }
}
