//! Partial functions on `S^p` and their invertible extensions to
//! permutations of `S̃^r`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::gadgets::{GadgetError, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtendError {
    #[error("tuple {tuple:?} does not have length {expected}")]
    Length { tuple: Vec<usize>, expected: usize },
    #[error("symbol {symbol} out of range for alphabet size {m}")]
    Symbol { symbol: usize, m: usize },
    #[error("input {0:?} is already defined")]
    Duplicate(Vec<usize>),
    #[error("index {index} out of range for {base}^{width}")]
    Index { index: usize, base: usize, width: usize },
    #[error("{0}")]
    Spec(String),
    #[error("extension has {0} elements, too many to build")]
    TooLarge(u128),
}

/// `φ: S^p → S^q` on `S = {0, …, m-1}`; missing rows are undefined points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialFunction {
    pub m: usize,
    pub p: usize,
    pub q: usize,
    table: BTreeMap<Vec<usize>, Vec<usize>>,
}

impl PartialFunction {
    /// The nowhere-defined function.
    pub fn empty(m: usize, p: usize, q: usize) -> Self {
        Self { m, p, q, table: BTreeMap::new() }
    }

    /// Tabulates `f` on all of `S^p`, keeping the points where it returns `Some`.
    pub fn from_fn(
        m: usize,
        p: usize,
        q: usize,
        f: impl Fn(&[usize]) -> Option<Vec<usize>>,
    ) -> Result<Self, ExtendError> {
        let mut out = Self::empty(m, p, q);
        for x in all_tuples(m, p) {
            if let Some(y) = f(&x) {
                out.insert(x, y)?;
            }
        }
        Ok(out)
    }

    pub fn insert(&mut self, x: Vec<usize>, y: Vec<usize>) -> Result<(), ExtendError> {
        self.check_tuple(&x, self.p)?;
        self.check_tuple(&y, self.q)?;
        if self.table.contains_key(&x) {
            return Err(ExtendError::Duplicate(x));
        }
        self.table.insert(x, y);
        Ok(())
    }

    fn check_tuple(&self, t: &[usize], len: usize) -> Result<(), ExtendError> {
        if t.len() != len {
            return Err(ExtendError::Length { tuple: t.to_vec(), expected: len });
        }
        if let Some(&s) = t.iter().find(|&&s| s >= self.m) {
            return Err(ExtendError::Symbol { symbol: s, m: self.m });
        }
        Ok(())
    }

    pub fn get(&self, x: &[usize]) -> Option<&[usize]> {
        self.table.get(x).map(Vec::as_slice)
    }

    /// Defined points in lexicographic order of their inputs.
    pub fn rows(&self) -> impl Iterator<Item = (&[usize], &[usize])> {
        self.table.iter().map(|(x, y)| (x.as_slice(), y.as_slice()))
    }

    pub fn defined_count(&self) -> usize {
        self.table.len()
    }

    pub fn domain_size(&self) -> u128 {
        (self.m as u128).pow(self.p as u32)
    }

    pub fn is_total(&self) -> bool {
        self.table.len() as u128 == self.domain_size()
    }

    /// Symbols occurring as the first output coordinate.
    pub fn first_coordinate_range(&self) -> Vec<bool> {
        let mut seen = vec![false; self.m];
        for y in self.table.values() {
            if let Some(&s) = y.first() {
                seen[s] = true;
            }
        }
        seen
    }
}

/// Every tuple of `{0, …, m-1}^len` in lexicographic order.
pub fn all_tuples(m: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (m as u128).pow(len as u32);
    (0..total).map(move |mut k| {
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            *slot = (k % m as u128) as usize;
            k /= m as u128;
        }
        t
    })
}

/// Little-endian positional value `Σ_t tuple[t] · base^t`.
pub fn embed_index(tuple: &[usize], base: usize) -> Result<usize, ExtendError> {
    let mut idx = 0usize;
    for &d in tuple.iter().rev() {
        if d >= base {
            return Err(ExtendError::Symbol { symbol: d, m: base });
        }
        idx = idx
            .checked_mul(base)
            .and_then(|v| v.checked_add(d))
            .ok_or(ExtendError::TooLarge(u128::MAX))?;
    }
    Ok(idx)
}

/// Inverse of [`embed_index`] for tuples of length `width`.
pub fn digits(index: usize, base: usize, width: usize) -> Result<Vec<usize>, ExtendError> {
    let size = (base as u128).checked_pow(width as u32).unwrap_or(u128::MAX);
    if index as u128 >= size {
        return Err(ExtendError::Index { index, base, width });
    }
    let mut k = index;
    Ok((0..width)
        .map(|_| {
            let d = k % base;
            k /= base;
            d
        })
        .collect())
}

/// Parameters `(m̃, r, s0)` of an invertible extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtensionSpec {
    pub m_tilde: usize,
    pub r: usize,
    pub s0: usize,
}

impl ExtensionSpec {
    /// `m̃ = m`, `r = p + q`, `s0 = 0`.
    pub fn default_for(phi: &PartialFunction) -> Self {
        Self { m_tilde: phi.m, r: phi.p + phi.q, s0: 0 }
    }

    /// Checks `m ≤ m̃`, `p, q ≤ r`, `s0 < m̃` and `m^p ≤ m̃^(r-q)` exactly.
    pub fn check(&self, phi: &PartialFunction) -> Result<(), ExtendError> {
        let fail = |s: String| Err(ExtendError::Spec(s));
        if phi.m > self.m_tilde {
            return fail(format!("alphabet size {} exceeds m̃ = {}", phi.m, self.m_tilde));
        }
        if phi.p > self.r || phi.q > self.r {
            return fail(format!("r = {} is smaller than p = {} or q = {}", self.r, phi.p, phi.q));
        }
        if self.s0 >= self.m_tilde {
            return fail(format!("padding symbol {} is not below m̃ = {}", self.s0, self.m_tilde));
        }
        let lhs = (phi.m as u128).checked_pow(phi.p as u32);
        let rhs = (self.m_tilde as u128).checked_pow((self.r - phi.q) as u32);
        match (lhs, rhs) {
            (Some(l), Some(r)) if l <= r => Ok(()),
            (Some(_), None) => Ok(()),
            _ => fail(format!(
                "{}^{} > {}^{}: not enough room for the padding",
                phi.m,
                phi.p,
                self.m_tilde,
                self.r - phi.q
            )),
        }
    }
}

/// A permutation of `S̃^r`, indexed by [`embed_index`] over base `m̃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigPermutation {
    pub base: usize,
    pub r: usize,
    images: Vec<usize>,
}

impl BigPermutation {
    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn apply(&self, tuple: &[usize]) -> Result<Vec<usize>, ExtendError> {
        let i = embed_index(tuple, self.base)?;
        if tuple.len() != self.r {
            return Err(ExtendError::Length { tuple: tuple.to_vec(), expected: self.r });
        }
        digits(self.images[i], self.base, self.r)
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        self.images
            .iter()
            .all(|&y| y < seen.len() && !std::mem::replace(&mut seen[y], true))
    }

    pub fn to_permutation(&self) -> Result<Permutation, GadgetError> {
        Permutation::new(self.images.clone())
    }

    /// Index → index table, one `i -> j` pair per line.
    pub fn to_table(&self) -> String {
        self.images.iter().enumerate().map(|(i, j)| format!("{i} -> {j}\n")).collect()
    }
}

/// Largest extension [`invertible_extension`] agrees to materialize.
pub const MAX_EXTENSION_SIZE: u128 = 1 << 26;

/// Builds a permutation `π` of `S̃^r` with `π(x, s0, …, s0) = (φ(x), ỹ_x)`
/// for every defined `x`.
///
/// Defined points are grouped by value; the point of rank `t` in its group
/// (ranked by input index) receives the `t`-th pad of `S̃^(r-q)` in
/// lexicographic order. The remaining sources go to the remaining targets in
/// ascending index order.
pub fn invertible_extension(phi: &PartialFunction, spec: &ExtensionSpec) -> Result<BigPermutation, ExtendError> {
    spec.check(phi)?;
    let (base, r) = (spec.m_tilde, spec.r);
    let size = (base as u128)
        .checked_pow(r as u32)
        .filter(|&s| s <= MAX_EXTENSION_SIZE)
        .ok_or(ExtendError::TooLarge((base as u128).saturating_pow(r as u32)))? as usize;
    let pad_width = r - phi.q;
    let mut images = vec![usize::MAX; size];
    let mut target_used = vec![false; size];
    let mut rows: Vec<(usize, &[usize], &[usize])> = phi
        .rows()
        .map(|(x, y)| {
            let mut src = x.to_vec();
            src.resize(r, spec.s0);
            (embed_index(&src, base).expect("symbols below m̃"), x, y)
        })
        .collect();
    rows.sort_by_key(|&(i, _, _)| i);
    let mut rank: BTreeMap<&[usize], usize> = BTreeMap::new();
    for (src, _, y) in rows {
        let t = rank.entry(y).or_insert(0);
        let pad = nth_lex_tuple(*t, base, pad_width);
        *t += 1;
        let mut tgt = y.to_vec();
        tgt.extend(pad);
        let j = embed_index(&tgt, base)?;
        debug_assert!(!target_used[j]);
        images[src] = j;
        target_used[j] = true;
    }
    let mut free = target_used.iter().enumerate().filter(|(_, &u)| !u).map(|(j, _)| j);
    for img in images.iter_mut().filter(|i| **i == usize::MAX) {
        *img = free.next().expect("as many free targets as free sources");
    }
    Ok(BigPermutation { base, r, images })
}

/// The `t`-th tuple of `{0, …, base-1}^width` in lexicographic order.
fn nth_lex_tuple(t: usize, base: usize, width: usize) -> Vec<usize> {
    let mut k = t;
    let mut out = vec![0; width];
    for slot in out.iter_mut().rev() {
        *slot = k % base;
        k /= base;
    }
    debug_assert_eq!(k, 0, "pad rank exceeds the pad space");
    out
}
