//! Stallings graphs of finitely generated subgroups of F_N.
//!
//! A [`LabeledGraph`] is an oriented multigraph whose edges carry a positive
//! generator; traversing an edge backwards reads the inverse letter. Folding
//! turns it into an immersion into the rose, and pruning degree-one vertices
//! leaves the core. Two wrappers carry the resulting invariants:
//!
//! * [`BasedCoreGraph`]: folded, connected, basepoint at vertex 0, only the
//!   basepoint may have degree below two. Its reduced loops at the basepoint
//!   read exactly the subgroup.
//! * [`CoreGraph`]: folded, every vertex of degree at least two. When
//!   connected it represents the conjugacy class of the subgroup.

mod canonical;
mod covering;
mod export;
mod fold;
mod random;

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

pub use canonical::CanonicalKey;
pub use export::{parse_subgroup_file, GraphJson};
pub use random::{random_finite_index_cover, random_subgroup, random_word, seeded, SeededRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub origin: usize,
    pub terminus: usize,
    /// 0-based generator index.
    pub label: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    alphabet: Alphabet,
    num_vertices: usize,
    edges: Vec<Edge>,
    basepoint: Option<usize>,
}

impl LabeledGraph {
    pub fn new(alphabet: Alphabet, num_vertices: usize) -> Self {
        LabeledGraph { alphabet, num_vertices, edges: Vec::new(), basepoint: None }
    }

    pub fn with_basepoint(mut self, basepoint: usize) -> Self {
        assert!(basepoint < self.num_vertices);
        self.basepoint = Some(basepoint);
        self
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    pub fn add_vertex(&mut self) -> usize {
        self.num_vertices += 1;
        self.num_vertices - 1
    }

    pub fn add_edge(&mut self, origin: usize, terminus: usize, label: usize) {
        assert!(origin < self.num_vertices && terminus < self.num_vertices);
        assert!(label < self.alphabet.rank());
        self.edges.push(Edge { origin, terminus, label });
    }

    /// Adds a traversal of `letter` from `from` to `to`.
    pub fn add_letter(&mut self, from: usize, letter: Letter, to: usize) {
        if letter.is_inverse() {
            self.add_edge(to, from, letter.generator());
        } else {
            self.add_edge(from, to, letter.generator());
        }
    }

    /// Adds a closed path reading `word` at `at` through fresh vertices.
    pub fn add_loop(&mut self, at: usize, word: &Word) {
        let letters = word.letters();
        let mut cur = at;
        for (i, &l) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() { at } else { self.add_vertex() };
            self.add_letter(cur, l, next);
            cur = next;
        }
    }

    /// Degree with loops counted twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_vertices];
        for e in &self.edges {
            deg[e.origin] += 1;
            deg[e.terminus] += 1;
        }
        deg
    }

    pub fn is_folded(&self) -> bool {
        let d = self.alphabet.directions();
        let mut seen = vec![false; self.num_vertices * d];
        for e in &self.edges {
            for slot in [e.origin * d + 2 * e.label, e.terminus * d + 2 * e.label + 1] {
                if seen[slot] {
                    return false;
                }
                seen[slot] = true;
            }
        }
        true
    }

    /// Identifies same-label edges at a common endpoint until the graph is
    /// an immersion. The basepoint follows its class.
    pub fn fold(&self) -> LabeledGraph {
        fold::fold(self)
    }

    /// Connected components as vertex-index lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = fold::UnionFind::new(self.num_vertices);
        for e in &self.edges {
            uf.union(e.origin, e.terminus);
        }
        let mut slot = vec![usize::MAX; self.num_vertices];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.num_vertices {
            let r = uf.find(v);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(v);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.num_vertices > 0 && self.components().len() == 1
    }

    /// Deletes degree-one and degree-zero vertices, sparing the basepoint.
    pub fn core_based(&self) -> Result<BasedCoreGraph> {
        let base = self.basepoint.ok_or(Error::Malformed("core_based needs a basepoint".into()))?;
        let folded = if self.is_folded() { self.clone() } else { self.fold() };
        let folded_base = folded.basepoint.unwrap_or(base);
        let (pruned, _) = fold::prune(&folded, Some(folded_base));
        if pruned.edges.is_empty() {
            return Err(Error::TrivialSubgroup);
        }
        if !pruned.is_connected() {
            return Err(Error::NotConnected);
        }
        Ok(BasedCoreGraph::from_folded(pruned))
    }

    /// Deletes degree-one and degree-zero vertices everywhere.
    pub fn core(&self) -> Result<CoreGraph> {
        let folded = if self.is_folded() { self.clone() } else { self.fold() };
        let (mut pruned, _) = fold::prune(&folded, None);
        if pruned.num_vertices == 0 {
            return Err(Error::EmptyCore);
        }
        pruned.basepoint = None;
        Ok(CoreGraph { inner: FoldedGraph::new(pruned) })
    }
}

/// A folded graph with a transition table `(vertex, direction) -> (target, edge)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldedGraph {
    graph: LabeledGraph,
    next: Vec<Option<(usize, usize)>>,
}

impl FoldedGraph {
    fn new(graph: LabeledGraph) -> Self {
        let d = graph.alphabet.directions();
        let mut next = vec![None; graph.num_vertices * d];
        for (id, e) in graph.edges.iter().enumerate() {
            let fwd = e.origin * d + 2 * e.label;
            let bwd = e.terminus * d + 2 * e.label + 1;
            assert!(next[fwd].is_none() && next[bwd].is_none(), "graph is not folded");
            next[fwd] = Some((e.terminus, id));
            next[bwd] = Some((e.origin, id));
        }
        FoldedGraph { graph, next }
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn alphabet(&self) -> Alphabet {
        self.graph.alphabet
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.graph.edges.len()
    }

    /// Target of the traversal of `letter` from `v`, if present.
    pub fn step(&self, v: usize, letter: Letter) -> Option<usize> {
        self.next[v * self.graph.alphabet.directions() + letter.code()].map(|(t, _)| t)
    }

    fn step_edge(&self, v: usize, code: usize) -> Option<(usize, usize)> {
        self.next[v * self.graph.alphabet.directions() + code]
    }

    pub fn degree(&self, v: usize) -> usize {
        let d = self.graph.alphabet.directions();
        self.next[v * d..(v + 1) * d].iter().filter(|x| x.is_some()).count()
    }

    /// Endpoint of the path reading `w` from `v`.
    pub fn read(&self, v: usize, w: &Word) -> Option<usize> {
        w.letters().iter().try_fold(v, |cur, &l| self.step(cur, l))
    }

    /// Breadth-first tree from `root`: for every reached vertex, the word
    /// read along the tree path, plus the set of tree edges. Directions are
    /// explored in letter order.
    pub fn spanning_tree(&self, root: usize) -> (Vec<Option<Word>>, Vec<bool>) {
        let alphabet = self.alphabet();
        let mut words: Vec<Option<Word>> = vec![None; self.num_vertices()];
        let mut tree_edge = vec![false; self.num_edges()];
        words[root] = Some(Word::identity(alphabet));
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for l in alphabet.letters() {
                if let Some((t, e)) = self.step_edge(v, l.code()) {
                    if words[t].is_none() {
                        let mut wt = words[v].clone().unwrap();
                        wt.push(l);
                        words[t] = Some(wt);
                        tree_edge[e] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        (words, tree_edge)
    }

    /// Free basis of `pi_1(graph, root)` from a breadth-first spanning tree.
    pub fn loop_generators(&self, root: usize) -> Vec<Word> {
        let (words, tree_edge) = self.spanning_tree(root);
        let mut gens = Vec::new();
        for (id, e) in self.graph.edges.iter().enumerate() {
            if tree_edge[id] {
                continue;
            }
            if let (Some(wo), Some(wt)) = (&words[e.origin], &words[e.terminus]) {
                let mut g = wo.clone();
                g.push(Letter::new(e.label + 1, false));
                gens.push(&g * &wt.invert());
            }
        }
        gens
    }

    fn euler_rank(&self) -> Result<usize> {
        if !self.graph.is_connected() {
            return Err(Error::NotConnected);
        }
        Ok(self.num_edges() + 1 - self.num_vertices())
    }
}

pub(crate) fn folded_unchecked(graph: LabeledGraph) -> FoldedGraph {
    FoldedGraph::new(graph)
}

/// `(Delta_H, *)`: the based Stallings graph of a nontrivial subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasedCoreGraph {
    inner: FoldedGraph,
}

impl BasedCoreGraph {
    /// Wedge of loops, folded, then cored with the basepoint kept.
    pub fn from_generators(alphabet: Alphabet, gens: &[Word]) -> Result<Self> {
        let mut g = LabeledGraph::new(alphabet, 1).with_basepoint(0);
        let mut any = false;
        for w in gens {
            if w.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch { left: alphabet.rank(), right: w.alphabet().rank() });
            }
            if !w.is_identity() {
                g.add_loop(0, w);
                any = true;
            }
        }
        if !any {
            return Err(Error::TrivialSubgroup);
        }
        g.core_based()
    }

    /// Relabels vertices in breadth-first order from the basepoint so equal
    /// subgroups give identical values.
    fn from_folded(graph: LabeledGraph) -> Self {
        let base = graph.basepoint.expect("based graph");
        let relabeled = canonical::relabel_from(&FoldedGraph::new(graph), base);
        BasedCoreGraph { inner: FoldedGraph::new(relabeled.with_basepoint(0)) }
    }

    pub fn folded(&self) -> &FoldedGraph {
        &self.inner
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.inner.graph
    }

    pub fn alphabet(&self) -> Alphabet {
        self.inner.alphabet()
    }

    pub fn basepoint(&self) -> usize {
        0
    }

    pub fn num_vertices(&self) -> usize {
        self.inner.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.inner.num_edges()
    }

    pub fn rank(&self) -> usize {
        self.inner.euler_rank().expect("based core graphs are connected")
    }

    pub fn reduced_rank(&self) -> usize {
        self.rank().saturating_sub(1)
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.alphabet() == self.alphabet() && self.inner.read(0, w) == Some(0)
    }

    /// `g * H * g^-1` contains `w`.
    pub fn conjugate_contains(&self, g: &Word, w: &Word) -> bool {
        self.contains(&g.conjugate(w))
    }

    /// A free basis of the subgroup.
    pub fn generators(&self) -> Vec<Word> {
        self.inner.loop_generators(0)
    }

    /// Unbased core, the tail word from the basepoint to the core, and the
    /// map from core vertices to vertices of `self`.
    pub fn split_tail(&self) -> (CoreGraph, Word, Vec<usize>) {
        let (pruned, old_of_new) = fold::prune(self.graph(), None);
        let (words, _) = self.inner.spanning_tree(0);
        let mut in_core = vec![false; self.num_vertices()];
        for &v in &old_of_new {
            in_core[v] = true;
        }
        // The tail is a simple path, so the nearest core vertex is its attaching point.
        let tail = old_of_new
            .iter()
            .map(|&v| words[v].clone().unwrap())
            .min_by_key(|w| w.len())
            .expect("nontrivial subgroup has nonempty core");
        (CoreGraph { inner: FoldedGraph::new(pruned) }, tail, old_of_new)
    }

    /// The unbased core graph `Delta_H`.
    pub fn core(&self) -> CoreGraph {
        self.split_tail().0
    }

    /// Same subgroup as a value: compares canonical based encodings.
    pub fn same_subgroup(&self, other: &BasedCoreGraph) -> bool {
        self == other
    }
}

/// `Delta_H`: folded, minimum degree two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreGraph {
    inner: FoldedGraph,
}

impl CoreGraph {
    /// Wraps a folded graph, checking the core invariants.
    pub fn from_graph(graph: LabeledGraph) -> Result<Self> {
        if !graph.is_folded() {
            return Err(Error::Malformed("graph is not folded".into()));
        }
        if graph.num_vertices == 0 || graph.degrees().iter().any(|&d| d < 2) {
            return Err(Error::Malformed("graph has a vertex of degree below two".into()));
        }
        let mut graph = graph;
        graph.basepoint = None;
        Ok(CoreGraph { inner: FoldedGraph::new(graph) })
    }

    pub fn folded(&self) -> &FoldedGraph {
        &self.inner
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.inner.graph
    }

    pub fn alphabet(&self) -> Alphabet {
        self.inner.alphabet()
    }

    pub fn num_vertices(&self) -> usize {
        self.inner.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.inner.num_edges()
    }

    pub fn is_connected(&self) -> bool {
        self.inner.graph.is_connected()
    }

    pub fn rank(&self) -> Result<usize> {
        self.inner.euler_rank()
    }

    pub fn reduced_rank(&self) -> Result<usize> {
        Ok(self.rank()?.saturating_sub(1))
    }

    /// Number of edges labeled with generator `label` (0-based).
    pub fn label_count(&self, label: usize) -> usize {
        self.graph().edges.iter().filter(|e| e.label == label).count()
    }

    /// The subgroup `pi_1(self, v)`.
    pub fn based_at(&self, v: usize) -> BasedCoreGraph {
        assert!(v < self.num_vertices());
        BasedCoreGraph::from_folded(self.graph().clone().with_basepoint(v))
    }

    /// The N-rose, core graph of F_N itself.
    pub fn rose(alphabet: Alphabet) -> Self {
        let mut g = LabeledGraph::new(alphabet, 1);
        for i in 0..alphabet.rank() {
            g.add_edge(0, 0, i);
        }
        CoreGraph { inner: FoldedGraph::new(g) }
    }
}
