//! Finite-index tests and commensurators via covering maps of core graphs.
//!
//! Both operations first move the basepoint onto the core: if the based
//! graph of `K` has a tail reading `w`, then `K = w K' w^-1` where `K'` is
//! based on the core, and every question about `H <= K` is transported to
//! `w^-1 H w <= K'`. On a tail-free core, finite-index overgroups are exactly
//! the covering quotients.

use super::fold::UnionFind;
use super::{BasedCoreGraph, CoreGraph, FoldedGraph, LabeledGraph};
use crate::error::{Error, Result};
use crate::word::Word;

/// Label-preserving based morphism `(h, hb) -> (k, kb)`, if one exists.
fn based_morphism(h: &FoldedGraph, hb: usize, k: &FoldedGraph, kb: usize) -> Option<Vec<usize>> {
    let mut image = vec![usize::MAX; h.num_vertices()];
    image[hb] = kb;
    let mut stack = vec![hb];
    while let Some(v) = stack.pop() {
        for l in h.alphabet().letters() {
            if let Some(t) = h.step(v, l) {
                let kt = k.step(image[v], l)?;
                if image[t] == usize::MAX {
                    image[t] = kt;
                    stack.push(t);
                } else if image[t] != kt {
                    return None;
                }
            }
        }
    }
    Some(image)
}

/// Largest covering-quotient congruence of a connected core graph that
/// identifies `base` with other vertices. Each candidate pair `(base, v)` is
/// closed under "merged vertices have merged successors" with a union-find
/// worklist; the closure is accepted only if every merged pair has the same
/// set of directions (local bijectivity).
fn covering_congruence(g: &FoldedGraph, base: usize) -> UnionFind {
    let n = g.num_vertices();
    let d = g.alphabet().directions();
    let mut current = UnionFind::new(n);
    for v in 0..n {
        if current.find(v) == current.find(base) {
            continue;
        }
        let mut trial = current.clone();
        let mut work = vec![(base, v)];
        let mut ok = true;
        while let Some((x, y)) = work.pop() {
            if trial.find(x) == trial.find(y) {
                continue;
            }
            for code in 0..d {
                match (g.step_edge(x, code), g.step_edge(y, code)) {
                    (Some((tx, _)), Some((ty, _))) => work.push((tx, ty)),
                    (None, None) => {}
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                break;
            }
            trial.union(x, y);
        }
        if ok {
            current = trial;
        }
    }
    current
}

/// Quotient graph of a congruence, with the class of `base` as basepoint.
fn quotient(g: &FoldedGraph, uf: &mut UnionFind, base: usize) -> LabeledGraph {
    let n = g.num_vertices();
    let mut class = vec![usize::MAX; n];
    let mut count = 0;
    for v in 0..n {
        let r = uf.find(v);
        if class[r] == usize::MAX {
            class[r] = count;
            count += 1;
        }
    }
    let mut out = LabeledGraph::new(g.alphabet(), count);
    let mut seen = std::collections::HashSet::new();
    for e in g.graph().edges() {
        let (o, t) = (class[uf.find(e.origin)], class[uf.find(e.terminus)]);
        if seen.insert((o, e.label)) {
            out.add_edge(o, t, e.label);
        }
    }
    out.with_basepoint(class[uf.find(base)])
}

impl CoreGraph {
    /// `Delta_{Comm(H)}` for `H = pi_1(self)`, with `[Comm(H) : H]`.
    pub fn commensurator(&self) -> Result<(CoreGraph, usize)> {
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        let mut uf = covering_congruence(self.folded(), 0);
        let q = quotient(self.folded(), &mut uf, 0);
        let index = self.num_vertices() / q.num_vertices();
        debug_assert_eq!(index * q.num_vertices(), self.num_vertices());
        Ok((CoreGraph::from_graph(q)?, index))
    }
}

impl BasedCoreGraph {
    /// `[K : H]` where `self = H`, or `None` if the index is infinite.
    pub fn finite_index_in(&self, k: &BasedCoreGraph) -> Result<Option<usize>> {
        for g in self.generators() {
            if !k.contains(&g) {
                return Err(Error::NotSubgroup(g.to_string()));
            }
        }
        let (k_core, tail, k_map) = k.split_tail();
        let attach = k_map.iter().position(|&v| k.folded().read(0, &tail) == Some(v)).unwrap();
        let h_shift = self.conjugated_by(&tail)?;
        let (hf, kf) = (h_shift.folded(), k_core.folded());
        let image = based_morphism(hf, 0, kf, attach).expect("subgroup inclusion gives a morphism");
        let covering = (0..hf.num_vertices()).all(|v| hf.degree(v) == kf.degree(image[v]));
        if !covering {
            return Ok(None);
        }
        Ok(Some(hf.num_vertices() / kf.num_vertices()))
    }

    /// `w^-1 * H * w`.
    pub fn conjugated_by(&self, w: &Word) -> Result<BasedCoreGraph> {
        let gens: Vec<Word> = self.generators().iter().map(|g| w.conjugate(g)).collect();
        BasedCoreGraph::from_generators(self.alphabet(), &gens)
    }

    /// `(Comm(H), [Comm(H) : H])`.
    pub fn commensurator(&self) -> Result<(BasedCoreGraph, usize)> {
        let (core, tail, map) = self.split_tail();
        let attach = map.iter().position(|&v| self.folded().read(0, &tail) == Some(v)).unwrap();
        let mut uf = covering_congruence(core.folded(), attach);
        let q = quotient(core.folded(), &mut uf, attach);
        let index = core.num_vertices() / q.num_vertices();
        let q = q.core_based()?;
        let tail_inv = tail.invert();
        let comm = q.conjugated_by(&tail_inv)?;
        Ok((comm, index))
    }
}
