use std::fmt;

use crate::graph::{MarkedGraph, VertexId};

/// Largest color count a [`ColorSet`] can hold.
pub const MAX_COLORS: usize = 128;

/// A subset of `{0, …, MAX_COLORS-1}` packed into a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet(u128);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    /// `{0, …, n-1}`
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_COLORS, "at most {MAX_COLORS} colors are supported");
        if n == MAX_COLORS {
            ColorSet(u128::MAX)
        } else {
            ColorSet((1u128 << n) - 1)
        }
    }

    pub fn single(c: usize) -> Self {
        assert!(c < MAX_COLORS);
        ColorSet(1u128 << c)
    }

    pub fn from_colors<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(Self::EMPTY, |s, c| s | Self::single(c))
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_singleton(self) -> bool {
        self.0 != 0 && self.0 & (self.0 - 1) == 0
    }

    pub fn contains(self, c: usize) -> bool {
        c < MAX_COLORS && self.0 >> c & 1 == 1
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn minus(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let c = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(c)
        })
    }
}

impl std::ops::BitOr for ColorSet {
    type Output = ColorSet;
    fn bitor(self, rhs: ColorSet) -> ColorSet {
        ColorSet(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for ColorSet {
    type Output = ColorSet;
    fn bitand(self, rhs: ColorSet) -> ColorSet {
        ColorSet(self.0 & rhs.0)
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// Per-vertex candidate color lists over `C = {0, …, n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    n: usize,
    lists: Vec<ColorSet>,
}

impl ListAssignment {
    /// Every vertex gets the full list `C`.
    pub fn full(n: usize, vertex_count: usize) -> Self {
        Self {
            n,
            lists: vec![ColorSet::full(n); vertex_count],
        }
    }

    /// Full lists, except that each pinned vertex gets the singleton of its color.
    pub fn pinned(n: usize, vertex_count: usize, pins: &[(VertexId, usize)]) -> Self {
        let mut l = Self::full(n, vertex_count);
        for &(v, c) in pins {
            l.lists[v.index()] = ColorSet::single(c);
        }
        l
    }

    /// Lists taken verbatim; colors at or above `n` are dropped.
    pub fn from_lists(n: usize, lists: Vec<ColorSet>) -> Self {
        let mask = ColorSet::full(n);
        Self {
            n,
            lists: lists.into_iter().map(|s| s & mask).collect(),
        }
    }

    pub fn colors(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn get(&self, v: VertexId) -> ColorSet {
        self.lists[v.index()]
    }

    pub fn set(&mut self, v: VertexId, s: ColorSet) {
        self.lists[v.index()] = s & ColorSet::full(self.n);
    }

    pub fn lists(&self) -> &[ColorSet] {
        &self.lists
    }

    pub(crate) fn lists_mut(&mut self) -> &mut [ColorSet] {
        &mut self.lists
    }

    /// `‖L‖ = Σ |L_v|`
    pub fn total_size(&self) -> usize {
        self.lists.iter().map(|s| s.len()).sum()
    }

    pub fn all_singletons(&self) -> bool {
        self.lists.iter().all(|s| s.is_singleton())
    }

    pub fn any_empty(&self) -> bool {
        self.lists.iter().any(|s| s.is_empty())
    }

    pub fn all_empty(&self) -> bool {
        self.lists.iter().all(|s| s.is_empty())
    }

    /// The coloring when every list is a singleton.
    pub fn as_coloring(&self) -> Option<Vec<usize>> {
        self.lists
            .iter()
            .map(|s| if s.is_singleton() { s.first() } else { None })
            .collect()
    }

    /// Checks that `coloring` is proper on `g` and picks colors from the lists.
    pub fn admits(&self, g: &MarkedGraph, coloring: &[usize]) -> bool {
        coloring.len() == self.lists.len()
            && coloring
                .iter()
                .zip(&self.lists)
                .all(|(&c, l)| l.contains(c))
            && g
                .edges()
                .iter()
                .all(|&(a, b)| coloring[a.index()] != coloring[b.index()])
    }
}
