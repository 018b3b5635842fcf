//! Isomorphism-invariant encodings of connected folded graphs.
//!
//! From a start vertex, vertices are numbered in breadth-first discovery
//! order, scanning directions `a_1 < a_1^-1 < a_2 < ...`. The encoding lists,
//! for every vertex in that order and every direction, the number of the
//! target (offset by one) or zero when the direction is absent. In a folded
//! connected graph this sequence determines the graph, so the minimum over
//! all start vertices is a complete invariant of the labeled graph.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CoreGraph, Edge, FoldedGraph, LabeledGraph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// Breadth-first order from `start` and the encoding described above.
fn encode_from(g: &FoldedGraph, start: usize) -> (Vec<u32>, Vec<usize>) {
    let d = g.alphabet().directions();
    let n = g.num_vertices();
    let mut number = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(n);
    number[start] = 0;
    order.push(start);
    let mut code = Vec::with_capacity(n * d);
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for dir in 0..d {
            match g.step_edge(v, dir) {
                None => code.push(0),
                Some((t, _)) => {
                    if number[t] == u32::MAX {
                        number[t] = order.len() as u32;
                        order.push(t);
                    }
                    code.push(number[t] + 1);
                }
            }
        }
        i += 1;
    }
    (code, order)
}

fn best_start(g: &FoldedGraph) -> usize {
    let mut best: Option<(Vec<u32>, usize)> = None;
    for s in 0..g.num_vertices() {
        let (code, _) = encode_from(g, s);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            best = Some((code, s));
        }
    }
    best.map(|(_, s)| s).unwrap_or(0)
}

pub(crate) fn canonical_key_of(g: &FoldedGraph) -> CanonicalKey {
    let s = best_start(g);
    key_bytes(g, &encode_from(g, s).0)
}

fn key_bytes(g: &FoldedGraph, code: &[u32]) -> CanonicalKey {
    let mut bytes = Vec::with_capacity(8 + 4 * code.len());
    bytes.extend_from_slice(&(g.alphabet().rank() as u32).to_be_bytes());
    bytes.extend_from_slice(&(g.num_vertices() as u32).to_be_bytes());
    for c in code {
        bytes.extend_from_slice(&c.to_be_bytes());
    }
    CanonicalKey(bytes)
}

/// Renumbers vertices in breadth-first order from `start` and sorts edges.
pub(crate) fn relabel_from(g: &FoldedGraph, start: usize) -> LabeledGraph {
    let (_, order) = encode_from(g, start);
    assert_eq!(order.len(), g.num_vertices(), "relabel requires a connected graph");
    let mut new_id = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        new_id[v] = i;
    }
    let mut out = LabeledGraph::new(g.alphabet(), order.len());
    out.edges = g
        .graph()
        .edges()
        .iter()
        .map(|e| Edge { origin: new_id[e.origin], terminus: new_id[e.terminus], label: e.label })
        .collect();
    out.edges.sort_by_key(|e| (e.origin, e.label, e.terminus));
    out
}

impl CoreGraph {
    /// Complete invariant of the labeled graph up to isomorphism.
    pub fn canonical_key(&self) -> Result<CanonicalKey> {
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        Ok(canonical_key_of(self.folded()))
    }

    /// The isomorphic copy numbered from the minimizing start vertex, with
    /// its key. Isomorphic inputs give identical outputs.
    pub fn canonical_form(&self) -> Result<(CoreGraph, CanonicalKey)> {
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        let s = best_start(self.folded());
        let g = relabel_from(self.folded(), s);
        let key = key_bytes(self.folded(), &encode_from(self.folded(), s).0);
        Ok((CoreGraph { inner: FoldedGraph::new(g) }, key))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stallings::BasedCoreGraph;
    use crate::word::{Alphabet, Word};

    fn core(gens: &[&str]) -> CoreGraph {
        let a = Alphabet::new(2).unwrap();
        let words: Vec<Word> = gens.iter().map(|s| Word::parse(s, a).unwrap()).collect();
        BasedCoreGraph::from_generators(a, &words).unwrap().core()
    }

    #[test]
    fn permuted_vertex_ids_give_equal_keys() {
        let a = Alphabet::new(2).unwrap();
        // 3-cycle a a b with a b-loop; two different numberings.
        let build = |p: [usize; 3]| {
            let mut g = LabeledGraph::new(a, 3);
            g.add_edge(p[0], p[1], 0);
            g.add_edge(p[1], p[2], 0);
            g.add_edge(p[2], p[0], 1);
            g.add_edge(p[1], p[1], 1);
            CoreGraph::from_graph(g).unwrap()
        };
        let k1 = build([0, 1, 2]).canonical_key().unwrap();
        let k2 = build([2, 0, 1]).canonical_key().unwrap();
        assert_eq!(k1, k2);
        assert_eq!(build([2, 0, 1]).canonical_form().unwrap().0, build([1, 2, 0]).canonical_form().unwrap().0);
    }

    #[test]
    fn labels_distinguish() {
        assert_ne!(core(&["a"]).canonical_key().unwrap(), core(&["b"]).canonical_key().unwrap());
        assert_ne!(
            core(&["aa", "b"]).canonical_key().unwrap(),
            core(&["bb", "a"]).canonical_key().unwrap()
        );
    }

    #[test]
    fn conjugates_share_key() {
        assert_eq!(
            core(&["aab", "bab"]).canonical_key().unwrap(),
            core(&["baabB", "bbabB"]).canonical_key().unwrap()
        );
    }
}
