//! Even-connected walks.
//!
//! `j` and `k` are even-connected with respect to `e_1 ⋯ e_s` when a walk
//! `j = j_1 - j_2 - ... - j_{2l+2} = k` with `l >= 1` exists whose pairs
//! `{j_{2t}, j_{2t+1}}` are multiset edges, each used at most as often as it occurs.

use std::collections::HashSet;

use super::{Edge, EdgeMultiset, Graph};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Step {
    /// Next step walks along any graph edge.
    Free,
    /// Next step consumes a multiset edge.
    Bound,
}

struct Search<'a> {
    g: &'a Graph,
    target: usize,
    edges: Vec<Edge>,
    left: Vec<u32>,
    seen: HashSet<(usize, Step, Vec<u32>)>,
    walk: Vec<usize>,
}

impl Search<'_> {
    fn free(&mut self, v: usize) -> bool {
        if !self.seen.insert((v, Step::Free, self.left.clone())) {
            return false;
        }
        let consumed = self.walk.len() > 1;
        for &w in self.g.neighbors(v) {
            self.walk.push(w);
            if (consumed && w == self.target) || self.bound(w) {
                return true;
            }
            self.walk.pop();
        }
        false
    }

    fn bound(&mut self, v: usize) -> bool {
        if !self.seen.insert((v, Step::Bound, self.left.clone())) {
            return false;
        }
        for idx in 0..self.edges.len() {
            if self.left[idx] == 0 {
                continue;
            }
            let Some(w) = self.edges[idx].other(v) else { continue };
            self.left[idx] -= 1;
            self.walk.push(w);
            if self.free(w) {
                return true;
            }
            self.walk.pop();
            self.left[idx] += 1;
        }
        false
    }
}

/// Searches for a walk even-connecting `j` to `k` with respect to `es`;
/// returns the witness walk on success.
pub fn even_connected(g: &Graph, j: usize, k: usize, es: &EdgeMultiset) -> Option<Vec<usize>> {
    debug_assert!(es.is_hosted_by(g));
    if es.total() == 0 {
        return None;
    }
    let (edges, left): (Vec<Edge>, Vec<u32>) = es.iter().unzip();
    let mut search = Search {
        g,
        target: k,
        edges,
        left,
        seen: HashSet::new(),
        walk: vec![j],
    };
    search.free(j).then_some(search.walk)
}
