//! Occurrences of finite subtrees in core graphs.

use super::subtree::FiniteSubtree;
use crate::stallings::{CoreGraph, FoldedGraph};

/// Number of vertices `v` of `g` at which `t` occurs: the label-preserving map
/// `(t, id) -> (g, v)` exists and preserves the degree of every interior
/// vertex of `t`. The map is unique when it exists because `g` is folded.
pub fn occurrence_count(t: &FiniteSubtree, g: &CoreGraph) -> usize {
    let shape = t.shape();
    (0..g.num_vertices()).filter(|&v| occurs_at(&shape, g.folded(), v)).count()
}

/// Vertices of `g` at which `t` occurs, in increasing order.
pub fn occurrences(t: &FiniteSubtree, g: &CoreGraph) -> Vec<usize> {
    let shape = t.shape();
    (0..g.num_vertices()).filter(|&v| occurs_at(&shape, g.folded(), v)).collect()
}

pub(crate) fn occurs_at(shape: &[(usize, Option<crate::word::Letter>, usize)], g: &FoldedGraph, v: usize) -> bool {
    let mut image = Vec::with_capacity(shape.len());
    for &(parent, letter, degree) in shape {
        let at = match letter {
            None => v,
            Some(l) => match g.step(image[parent], l) {
                Some(t) => t,
                None => return false,
            },
        };
        if degree > 1 && g.degree(at) != degree {
            return false;
        }
        image.push(at);
    }
    true
}
