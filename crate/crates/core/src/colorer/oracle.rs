//! Exhaustive extension counting, used to check uniqueness claims.

use super::forcing::Propagator;
use super::lists::{ColorSet, ListAssignment};
use crate::graph::{MarkedGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCount {
    /// Number of proper colorings found, at most the cap.
    pub count: u64,
    /// The search stopped because `count` reached the cap.
    pub capped: bool,
    /// First coloring found, if any.
    pub witness: Option<Vec<usize>>,
    /// Branching decisions taken.
    pub decisions: u64,
}

struct Frame {
    var: VertexId,
    remaining: ColorSet,
    mark: usize,
}

fn undo(lists: &mut [ColorSet], trail: &mut Vec<(VertexId, ColorSet)>, mark: usize) {
    while trail.len() > mark {
        let (v, old) = trail.pop().unwrap();
        lists[v.index()] = old;
    }
}

/// Fail-first choice: smallest list with more than one color, lowest id on ties.
fn pick(lists: &[ColorSet]) -> Option<VertexId> {
    let mut best: Option<(usize, usize)> = None;
    for (i, s) in lists.iter().enumerate() {
        let k = s.len();
        if k > 1 && best.is_none_or(|(bk, _)| k < bk) {
            best = Some((k, i));
            if k == 2 {
                break;
            }
        }
    }
    best.map(|(_, i)| VertexId(i as u32))
}

/// Counts proper colorings of `g` that pick every vertex color from its
/// list, stopping once `cap` colorings are found. Backtracks on a smallest
/// list and re-normalizes after every decision.
pub fn count_extensions(g: &MarkedGraph, initial: &ListAssignment, cap: u64) -> ExtensionCount {
    assert!(cap >= 1, "cap must be positive");
    let mut lists = initial.lists().to_vec();
    let mut trail = Vec::new();
    let mut prop = Propagator::new(lists.len());
    let mut result = ExtensionCount {
        count: 0,
        capped: false,
        witness: None,
        decisions: 0,
    };
    prop.seed_all(&lists);
    if !prop.run_until_empty(g, &mut lists, &mut trail) {
        return result;
    }
    let mut stack: Vec<Frame> = Vec::new();
    // `descend` is true when the current lists are consistent and need a new
    // branching variable; false when the top frame should try its next color.
    let mut descend = true;
    loop {
        if descend {
            match pick(&lists) {
                None => {
                    let coloring: Vec<usize> = lists.iter().map(|s| s.first().unwrap()).collect();
                    debug_assert!(initial.admits(g, &coloring));
                    result.count += 1;
                    if result.witness.is_none() {
                        result.witness = Some(coloring);
                    }
                    if result.count >= cap {
                        result.capped = true;
                        return result;
                    }
                }
                Some(var) => stack.push(Frame {
                    var,
                    remaining: lists[var.index()],
                    mark: trail.len(),
                }),
            }
        }
        let Some(top) = stack.last_mut() else {
            return result;
        };
        undo(&mut lists, &mut trail, top.mark);
        let Some(c) = top.remaining.first() else {
            stack.pop();
            descend = false;
            continue;
        };
        top.remaining = top.remaining.minus(ColorSet::single(c));
        let var = top.var;
        result.decisions += 1;
        trail.push((var, lists[var.index()]));
        lists[var.index()] = ColorSet::single(c);
        prop.push(var);
        descend = prop.run_until_empty(g, &mut lists, &mut trail);
    }
}

/// Brute-force enumeration of every list coloring, for tiny graphs only.
pub fn enumerate_list_colorings(g: &MarkedGraph, lists: &ListAssignment) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn rec(
        i: usize,
        g: &MarkedGraph,
        lists: &ListAssignment,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for c in lists.get(VertexId(i as u32)).iter() {
            let ok = g
                .neighbors(VertexId(i as u32))
                .iter()
                .all(|w| w.index() >= i || cur[w.index()] != c);
            if ok {
                cur[i] = c;
                rec(i + 1, g, lists, cur, out);
            }
        }
    }
    rec(0, g, lists, &mut cur, &mut out);
    out
}
