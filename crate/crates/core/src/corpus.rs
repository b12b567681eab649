//! Built-in graph families for verification: Prüfer-enumerated trees, cycles,
//! and connected graphs (every labeling for small n, isomorphism classes above).

use std::collections::HashSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{tree_distance_labeling, Graph, LabeledTree, Relabeling};

/// Largest vertex count the built-in corpus supports.
pub const MAX_N: usize = 7;

/// Connected graphs are enumerated with every labeling up to this size and up to
/// isomorphism beyond it.
pub const LABELED_GRAPHS_MAX_N: usize = 5;

/// The tree with Prüfer sequence `seq` on `seq.len() + 2` vertices.
pub fn prufer_decode(seq: &[usize]) -> Result<Graph> {
    let n = seq.len() + 2;
    if let Some(&v) = seq.iter().find(|&&v| v == 0 || v > n) {
        return Err(Error::invalid(format!("Prüfer entry {v} outside [1, {n}]")));
    }
    let mut degree = vec![1usize; n + 1];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (1..=n).find(|&w| degree[w] == 1).expect("a leaf remains");
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (1..=n).filter(|&w| degree[w] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, edges)
}

/// All `n^{n-2}` labeled trees on `n >= 2` vertices, in Prüfer order.
pub fn labeled_trees(n: usize) -> Vec<Graph> {
    assert!(n >= 2);
    (0..n - 2)
        .map(|_| 1..=n)
        .multi_cartesian_product()
        .map(|seq| prufer_decode(&seq).expect("entries in range"))
        .collect()
}

/// The distance labeling rooted at the largest leaf.
pub fn canonical_tree_labeling(g: &Graph) -> Result<(LabeledTree, Relabeling)> {
    let root = (1..=g.n())
        .rev()
        .find(|&v| g.degree(v) == 1)
        .ok_or_else(|| Error::precondition("graph has no leaf"))?;
    let tl = tree_distance_labeling(g, root)?;
    Ok((tl.tree, tl.relabeling))
}

/// The distinct distance-labeled trees reached from all labeled trees on `n`
/// vertices, in order of first appearance.
pub fn distance_labeled_trees(n: usize) -> Vec<LabeledTree> {
    let mut seen = HashSet::new();
    labeled_trees(n)
        .iter()
        .map(|g| canonical_tree_labeling(g).expect("every tree has a leaf").0)
        .filter(|t| seen.insert(t.graph().clone()))
        .collect()
}

fn edge_slots(n: usize) -> Vec<(usize, usize)> {
    (1..=n).tuple_combinations().collect()
}

fn graph_from_mask(n: usize, slots: &[(usize, usize)], mask: u32) -> Graph {
    Graph::new(n, slots.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e)).expect("slots are valid edges")
}

/// Every connected graph with at least one edge on exactly the vertex set `[n]`.
pub fn labeled_connected_graphs(n: usize) -> Vec<Graph> {
    assert!((2..=6).contains(&n), "labeled enumeration is limited to n <= 6");
    let slots = edge_slots(n);
    (1u32..1 << slots.len())
        .filter(|m| m.count_ones() as usize >= n - 1)
        .map(|m| graph_from_mask(n, &slots, m))
        .filter(Graph::is_connected)
        .collect()
}

/// One representative per isomorphism class of connected graphs on `n` vertices:
/// the graph whose edge mask is least among all relabelings.
pub fn connected_graph_classes(n: usize) -> Vec<Graph> {
    assert!((2..=MAX_N).contains(&n));
    let slots = edge_slots(n);
    let slot_index = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        slots.iter().position(|&e| e == (a, b)).unwrap()
    };
    let perm_tables: Vec<Vec<u32>> = (1..=n)
        .permutations(n)
        .map(|p| slots.iter().map(|&(a, b)| 1u32 << slot_index(p[a - 1], p[b - 1])).collect())
        .collect();
    let canonical = |mask: u32| {
        perm_tables
            .iter()
            .map(|t| t.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).fold(0, |acc, (_, &bit)| acc | bit))
            .min()
            .unwrap()
    };
    let mut classes = Vec::new();
    let mut seen = HashSet::new();
    for mask in 1u32..1 << slots.len() {
        if (mask.count_ones() as usize) < n - 1 {
            continue;
        }
        let g = graph_from_mask(n, &slots, mask);
        if !g.is_connected() {
            continue;
        }
        let c = canonical(mask);
        if seen.insert(c) {
            classes.push(graph_from_mask(n, &slots, c));
        }
    }
    classes
}

/// Connected graphs for `n <= max_n`: every labeling up to
/// [`LABELED_GRAPHS_MAX_N`] vertices, isomorphism classes above.
pub fn connected_corpus(max_n: usize) -> Vec<Graph> {
    (2..=max_n)
        .flat_map(|n| if n <= LABELED_GRAPHS_MAX_N { labeled_connected_graphs(n) } else { connected_graph_classes(n) })
        .collect()
}

/// `C_3, ..., C_{max_n}` in cyclic labeling.
pub fn cycles(max_n: usize) -> Vec<Graph> {
    (3..=max_n).map(|n| Graph::cycle(n).unwrap()).collect()
}

/// Every sequence of positive integers summing to `total`.
pub fn compositions(total: u32) -> Vec<Vec<u32>> {
    if total == 0 {
        return vec![vec![]];
    }
    (1..=total)
        .flat_map(|first| {
            compositions(total - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// `count` uniformly random relabelings of `g`, reproducible from `seed`.
pub fn sample_relabelings(g: &Graph, count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut labels: Vec<usize> = (1..=g.n()).collect();
            labels.shuffle(&mut rng);
            g.relabel(&Relabeling::new(labels).unwrap())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prufer_examples() {
        let g = prufer_decode(&[4, 4, 4]).unwrap();
        assert_eq!(g, Graph::new(5, [(1, 4), (2, 4), (3, 4), (4, 5)]).unwrap());
        assert_eq!(prufer_decode(&[]).unwrap(), Graph::path(2));
        assert_eq!(prufer_decode(&[2, 3]).unwrap(), Graph::path(4));
        assert!(prufer_decode(&[5]).is_err());
    }

    #[test]
    fn tree_counts() {
        for n in 2..=6 {
            let trees = labeled_trees(n);
            assert_eq!(trees.len(), n.pow(n as u32 - 2));
            assert!(trees.iter().all(Graph::is_tree));
            assert_eq!(trees.iter().collect::<HashSet<_>>().len(), trees.len());
        }
    }

    #[test]
    fn distance_labeled_trees_are_admissible() {
        for n in 2..=6 {
            assert!(distance_labeled_trees(n).iter().all(|t| t.graph().validate_lex_labeling().unwrap()));
        }
        // paths and stars have a single distance labeling on 4 vertices
        assert_eq!(distance_labeled_trees(4).len(), 2);
    }

    #[test]
    fn connected_graph_counts() {
        let labeled: Vec<usize> = (2..=5).map(|n| labeled_connected_graphs(n).len()).collect();
        assert_eq!(labeled, vec![1, 4, 38, 728]);
        let classes: Vec<usize> = (2..=6).map(|n| connected_graph_classes(n).len()).collect();
        assert_eq!(classes, vec![1, 2, 6, 21, 112]);
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(3), vec![vec![1, 1, 1], vec![1, 2], vec![2, 1], vec![3]]);
        assert_eq!(compositions(5).len(), 16);
    }

    #[test]
    fn sampling_is_reproducible() {
        let g = Graph::path(6);
        assert_eq!(sample_relabelings(&g, 3, 7), sample_relabelings(&g, 3, 7));
        assert!(sample_relabelings(&g, 5, 1).iter().all(|h| h.is_tree() && h.num_edges() == 5));
    }
}
