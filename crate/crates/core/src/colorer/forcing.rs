//! The direct forcing rule and the normal forms it reaches.
//!
//! Applied along the directed edge `u → v`, the rule removes the color of a
//! singleton list `L_u` from `L_v`, and empties `L_v` when `L_u` is empty.
//! The induced reduction is terminating (each rewrite shrinks `‖L‖`) and
//! confluent, so every list-graph has one irreducible normal form no matter
//! in which order the rule is applied.

use std::fmt;

use super::lists::{ColorSet, ListAssignment};
use crate::graph::{MarkedGraph, VertexId};

/// Colors the rule would remove from `L_v` when fired along `u → v`.
#[inline]
pub(crate) fn forced_removal(lu: ColorSet, lv: ColorSet) -> ColorSet {
    if lu.is_empty() {
        lv
    } else if lu.is_singleton() {
        lv & lu
    } else {
        ColorSet::EMPTY
    }
}

/// Fires the rule along `u → v` in place; returns the removed colors.
#[inline]
pub(crate) fn force(lists: &mut [ColorSet], u: VertexId, v: VertexId) -> ColorSet {
    let removed = forced_removal(lists[u.index()], lists[v.index()]);
    if !removed.is_empty() {
        let lv = &mut lists[v.index()];
        *lv = lv.minus(removed);
    }
    removed
}

/// One rewrite that changed a list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ForcingStep {
    pub from: VertexId,
    pub to: VertexId,
    pub removed: ColorSet,
}

/// Ordered record of the rewrites performed while normalizing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Transcript {
    pub steps: Vec<ForcingStep>,
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "force {} {} removed {}", s.from, s.to, s.removed)?;
        }
        Ok(())
    }
}

/// Result of normalizing a list-graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub lists: ListAssignment,
    /// Number of list-changing rewrites applied.
    pub rewrites: usize,
    /// Full edge scans performed, including the final unchanged one.
    pub rounds: usize,
}

/// Applies the rule once along `u → v` and returns the resulting lists.
/// Lists are returned unchanged when the rule does not apply.
pub fn apply_direct_forcing(
    g: &MarkedGraph,
    lists: &ListAssignment,
    u: VertexId,
    v: VertexId,
) -> ListAssignment {
    debug_assert!(g.has_edge(u, v), "({u}, {v}) is not an edge");
    let mut out = lists.clone();
    force(out.lists_mut(), u, v);
    out
}

/// Canonical normal form: scans edges in creation order, each in both
/// directions, until a full round changes nothing.
pub fn normal_form(g: &MarkedGraph, lists: &ListAssignment) -> NormalForm {
    scan(g, lists, None)
}

/// Same as [`normal_form`] but also records every rewrite.
pub fn normal_form_transcript(g: &MarkedGraph, lists: &ListAssignment) -> (NormalForm, Transcript) {
    let mut t = Transcript::default();
    let nf = scan(g, lists, Some(&mut t));
    (nf, t)
}

fn scan(g: &MarkedGraph, lists: &ListAssignment, mut transcript: Option<&mut Transcript>) -> NormalForm {
    let mut out = lists.clone();
    let ls = out.lists_mut();
    let mut rewrites = 0;
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut changed = false;
        for &(a, b) in g.edges() {
            for (u, v) in [(a, b), (b, a)] {
                let removed = force(ls, u, v);
                if !removed.is_empty() {
                    changed = true;
                    rewrites += 1;
                    if let Some(t) = transcript.as_deref_mut() {
                        t.steps.push(ForcingStep { from: u, to: v, removed });
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    NormalForm { lists: out, rewrites, rounds }
}

/// Normal form reached by repeatedly scanning the given directed pairs in
/// order. Every pair must be an edge of `g` (either orientation); pairs
/// missing from `order` are never fired, so pass every edge in both
/// directions to obtain the true normal form.
pub fn normal_form_in_order(
    lists: &ListAssignment,
    order: &[(VertexId, VertexId)],
) -> NormalForm {
    let mut out = lists.clone();
    let ls = out.lists_mut();
    let mut rewrites = 0;
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut changed = false;
        for &(u, v) in order {
            if !force(ls, u, v).is_empty() {
                changed = true;
                rewrites += 1;
            }
        }
        if !changed {
            break;
        }
    }
    NormalForm { lists: out, rewrites, rounds }
}

/// True when no directed edge admits a list-changing rewrite.
pub fn is_irreducible(g: &MarkedGraph, lists: &ListAssignment) -> bool {
    let ls = lists.lists();
    g.edges().iter().all(|&(a, b)| {
        forced_removal(ls[a.index()], ls[b.index()]).is_empty()
            && forced_removal(ls[b.index()], ls[a.index()]).is_empty()
    })
}

/// Work-list propagation to the normal form, in place.
///
/// Only vertices whose list has at most one color can fire the rule, and a
/// list passes through "singleton" and "empty" at most once each, so every
/// vertex is expanded at most twice. Confluence makes the result identical
/// to [`normal_form`]. Returns the number of rewrites.
pub fn propagate(g: &MarkedGraph, lists: &mut ListAssignment) -> usize {
    let mut p = Propagator::new(lists.len());
    p.seed_all(lists.lists());
    p.run(g, lists.lists_mut(), None)
}

/// Reusable work-list state, with an optional undo trail for search.
pub(crate) struct Propagator {
    queue: Vec<VertexId>,
    queued: Vec<bool>,
}

impl Propagator {
    pub(crate) fn new(vertex_count: usize) -> Self {
        Self {
            queue: Vec::new(),
            queued: vec![false; vertex_count],
        }
    }

    pub(crate) fn seed_all(&mut self, lists: &[ColorSet]) {
        for (i, s) in lists.iter().enumerate() {
            if s.len() <= 1 {
                self.push(VertexId(i as u32));
            }
        }
    }

    #[inline]
    pub(crate) fn push(&mut self, v: VertexId) {
        if !self.queued[v.index()] {
            self.queued[v.index()] = true;
            self.queue.push(v);
        }
    }

    pub(crate) fn clear(&mut self) {
        for v in self.queue.drain(..) {
            self.queued[v.index()] = false;
        }
    }

    /// Runs to fixpoint. When `trail` is given, every overwritten list is
    /// recorded as `(vertex, previous list)`. Stops early (returning) once an
    /// empty list appears if `stop_on_empty` semantics are wanted by the
    /// caller through [`Propagator::run_until_empty`].
    pub(crate) fn run(
        &mut self,
        g: &MarkedGraph,
        lists: &mut [ColorSet],
        mut trail: Option<&mut Vec<(VertexId, ColorSet)>>,
    ) -> usize {
        let mut rewrites = 0;
        while let Some(u) = self.queue.pop() {
            self.queued[u.index()] = false;
            let lu = lists[u.index()];
            for &v in g.neighbors(u) {
                let lv = lists[v.index()];
                let removed = forced_removal(lu, lv);
                if removed.is_empty() {
                    continue;
                }
                if let Some(t) = trail.as_deref_mut() {
                    t.push((v, lv));
                }
                let nv = lv.minus(removed);
                lists[v.index()] = nv;
                rewrites += 1;
                if nv.len() <= 1 {
                    self.push(v);
                }
            }
        }
        rewrites
    }

    /// Like [`Propagator::run`] but abandons the fixpoint as soon as some list
    /// becomes empty. Returns `false` in that case. Leftover queue entries
    /// are cleared.
    pub(crate) fn run_until_empty(
        &mut self,
        g: &MarkedGraph,
        lists: &mut [ColorSet],
        trail: &mut Vec<(VertexId, ColorSet)>,
    ) -> bool {
        while let Some(u) = self.queue.pop() {
            self.queued[u.index()] = false;
            let lu = lists[u.index()];
            if lu.is_empty() {
                self.clear();
                return false;
            }
            for &v in g.neighbors(u) {
                let lv = lists[v.index()];
                let removed = forced_removal(lu, lv);
                if removed.is_empty() {
                    continue;
                }
                trail.push((v, lv));
                let nv = lv.minus(removed);
                lists[v.index()] = nv;
                if nv.is_empty() {
                    self.clear();
                    return false;
                }
                if nv.is_singleton() {
                    self.push(v);
                }
            }
        }
        true
    }
}
