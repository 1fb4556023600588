//! Simulation gadgets and their composition.

mod arith;
mod boolean;
mod coder;
mod compose;
mod permutation;
mod select;
mod simgraph;

use std::fmt;
use std::str::FromStr;

pub use arith::{build_add, build_edge_gadget, build_sub};
pub use boolean::{build_and, build_not, build_or, build_vand, build_vor};
pub use coder::{build_ch, build_ps, build_xp};
pub use compose::{compose, Source, Stage, WiringSpec};
pub use permutation::{build_cs, build_l, build_permutation, build_transposition, Permutation};
pub use select::{build_dot, build_mux, build_xt};
pub use simgraph::{ref_label, swap_io, GadgetError, SimGraph};

use crate::extend::PartialFunction;

/// Every gadget the library can build by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GadgetKind {
    L { k: usize },
    Transposition { i: usize, j: usize },
    CsPlus,
    CsMinus,
    Ch,
    Ps,
    Xp,
    Not,
    And,
    Or,
    Vand { r: usize },
    Vor { r: usize },
    Dot,
    Xt,
    Mux,
    Add,
    Sub,
    Edge { r: usize },
}

impl GadgetKind {
    /// Builds the gadget over `n` colors on the alphabet of size `m`.
    /// `L` ignores `m`.
    pub fn build(self, m: usize, n: usize) -> Result<SimGraph, GadgetError> {
        use GadgetKind::*;
        match self {
            L { k } => build_l(k, n),
            Transposition { i, j } => build_transposition(i, j, m, n),
            CsPlus => build_cs(true, m, n),
            CsMinus => build_cs(false, m, n),
            Ch => build_ch(m, n),
            Ps => build_ps(m, n),
            Xp => build_xp(m, n),
            Not => build_not(m, n),
            And => build_and(m, n),
            Or => build_or(m, n),
            Vand { r } => build_vand(r, m, n),
            Vor { r } => build_vor(r, m, n),
            Dot => build_dot(m, n),
            Xt => build_xt(m, n),
            Mux => build_mux(m, n),
            Add => build_add(m, n),
            Sub => build_sub(m, n),
            Edge { r } => build_edge_gadget(r, m, n),
        }
    }

    /// The function the gadget simulates, tabulated on `S^p`. `None` for
    /// `L`, which constrains a pair of vertices rather than computing.
    pub fn reference_table(self, m: usize) -> Option<PartialFunction> {
        use GadgetKind::*;
        let bit = |x: usize| (x < 2).then_some(x);
        let one = |v: usize| Some(vec![v]);
        let indicator = |i: usize| (0..m).map(|j| usize::from(j == i)).collect::<Vec<_>>();
        let table = match self {
            L { .. } => return None,
            Transposition { i, j } => {
                let t = Permutation::transposition(i, j, m);
                PartialFunction::from_fn(m, 1, 1, |x| one(t.apply(x[0])))
            }
            CsPlus => PartialFunction::from_fn(m, 1, 1, |x| one((x[0] + 1) % m)),
            CsMinus => PartialFunction::from_fn(m, 1, 1, |x| one((x[0] + m - 1) % m)),
            Ch => PartialFunction::from_fn(m, 1, m, |x| Some(indicator(x[0]))),
            Ps => PartialFunction::from_fn(m, m, 1, |u| (0..m).find(|&i| u == indicator(i)).map(|i| vec![i])),
            Xp => PartialFunction::from_fn(m, 1, m, |x| bit(x[0]).map(|b| vec![b; m])),
            Not => PartialFunction::from_fn(m, 1, 1, |x| bit(x[0]).map(|b| vec![1 - b])),
            And => PartialFunction::from_fn(m, 2, 1, |x| Some(vec![bit(x[0])? & bit(x[1])?])),
            Or => PartialFunction::from_fn(m, 2, 1, |x| Some(vec![bit(x[0])? | bit(x[1])?])),
            Vand { r } => PartialFunction::from_fn(m, r, 1, |x| {
                let bits = x.iter().map(|&b| bit(b)).collect::<Option<Vec<_>>>()?;
                one(usize::from(bits.iter().all(|&b| b == 1)))
            }),
            Vor { r } => PartialFunction::from_fn(m, r, 1, |x| {
                let bits = x.iter().map(|&b| bit(b)).collect::<Option<Vec<_>>>()?;
                one(usize::from(bits.iter().any(|&b| b == 1)))
            }),
            Dot => PartialFunction::from_fn(m, 2, 1, |x| match x[1] {
                0 => one(0),
                1 => one(x[0]),
                _ => None,
            }),
            Xt => PartialFunction::from_fn(m, m, 1, |u| {
                let nonzero: Vec<usize> = u.iter().copied().filter(|&s| s != 0).collect();
                match nonzero.first() {
                    None => one(0),
                    Some(&k) if nonzero.iter().all(|&s| s == k) => one(k),
                    Some(_) => None,
                }
            }),
            Mux => PartialFunction::from_fn(m, 2 * m, 1, |x| {
                let (v, u) = x.split_at(m);
                (0..m).find(|&i| u == indicator(i)).map(|i| vec![v[i]])
            }),
            Add => PartialFunction::from_fn(m, 2, 1, |x| one((x[0] + x[1]) % m)),
            Sub => PartialFunction::from_fn(m, 2, 1, |x| one((x[0] + m - x[1]) % m)),
            Edge { r } => PartialFunction::from_fn(m, 2 * r, r, |x| {
                let (u, v) = x.split_at(r);
                (u != v).then(|| v.to_vec())
            }),
        };
        Some(table.expect("tables stay within the alphabet"))
    }
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GadgetKind::*;
        match self {
            L { k } => write!(f, "L:{k}"),
            Transposition { i, j } => write!(f, "tau:{i}:{j}"),
            CsPlus => write!(f, "cs+"),
            CsMinus => write!(f, "cs-"),
            Ch => write!(f, "ch"),
            Ps => write!(f, "ps"),
            Xp => write!(f, "xp"),
            Not => write!(f, "not"),
            And => write!(f, "and"),
            Or => write!(f, "or"),
            Vand { r } => write!(f, "vand:{r}"),
            Vor { r } => write!(f, "vor:{r}"),
            Dot => write!(f, "dot"),
            Xt => write!(f, "xt"),
            Mux => write!(f, "mux"),
            Add => write!(f, "add"),
            Sub => write!(f, "sub"),
            Edge { r } => write!(f, "edge:{r}"),
        }
    }
}

impl FromStr for GadgetKind {
    type Err = GadgetError;

    /// Accepts the names printed by `Display`, e.g. `L:0`, `tau:0:1`, `vor:3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use GadgetKind::*;
        let bad = || GadgetError::Arity(format!("unknown gadget `{s}`"));
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<usize, GadgetError> {
            parts.get(i).and_then(|p| p.parse().ok()).ok_or_else(bad)
        };
        let kind = match (parts[0], parts.len()) {
            ("L", 2) => L { k: num(1)? },
            ("tau", 3) => Transposition { i: num(1)?, j: num(2)? },
            ("cs+", 1) => CsPlus,
            ("cs-", 1) => CsMinus,
            ("ch", 1) => Ch,
            ("ps", 1) => Ps,
            ("xp", 1) => Xp,
            ("not", 1) => Not,
            ("and", 1) => And,
            ("or", 1) => Or,
            ("vand", 2) => Vand { r: num(1)? },
            ("vor", 2) => Vor { r: num(1)? },
            ("dot", 1) => Dot,
            ("xt", 1) => Xt,
            ("mux", 1) => Mux,
            ("add", 1) => Add,
            ("sub", 1) => Sub,
            ("edge", 2) => Edge { r: num(1)? },
            _ => return Err(bad()),
        };
        Ok(kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_names_round_trip() {
        for k in [
            GadgetKind::L { k: 2 },
            GadgetKind::Transposition { i: 0, j: 1 },
            GadgetKind::CsMinus,
            GadgetKind::Vor { r: 3 },
            GadgetKind::Edge { r: 2 },
            GadgetKind::Mux,
        ] {
            assert_eq!(k.to_string().parse::<GadgetKind>().unwrap(), k);
        }
        assert!("vor".parse::<GadgetKind>().is_err());
        assert!("nand".parse::<GadgetKind>().is_err());
    }

    #[test]
    fn reference_tables() {
        let xt = GadgetKind::Xt.reference_table(3).unwrap();
        assert_eq!(xt.get(&[0, 2, 2]), Some(&[2][..]));
        assert_eq!(xt.get(&[1, 2, 0]), None);
        assert_eq!(xt.get(&[0, 0, 0]), Some(&[0][..]));
        let sub = GadgetKind::Sub.reference_table(3).unwrap();
        assert_eq!(sub.get(&[0, 1]), Some(&[2][..]));
        let mux = GadgetKind::Mux.reference_table(2).unwrap();
        assert_eq!(mux.defined_count(), 8);
        assert!(GadgetKind::L { k: 0 }.reference_table(3).is_none());
    }
}
