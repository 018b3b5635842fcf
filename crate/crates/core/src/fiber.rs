//! Fiber products of core graphs over the rose and the two graph-theoretic
//! routes to the intersection number `N(H, K)`.
//!
//! Product vertex `(v1, v2)` has index `v1 * n2 + v2`. Edges are built label by
//! label: every `a`-edge of the first factor pairs with every `a`-edge of the
//! second. Components of the product correspond to double cosets `HgK`, and a
//! component's fundamental group is conjugate to `H ∩ gKg^-1`.

use serde::Serialize;

use crate::error::Result;
use crate::stallings::{BasedCoreGraph, CoreGraph, FoldedGraph, LabeledGraph};
use crate::word::Word;

#[derive(Debug, Clone)]
pub struct FiberProduct {
    folded: FoldedGraph,
    right_vertices: usize,
    /// `(e1, e2)` for every product edge.
    edge_pairs: Vec<(usize, usize)>,
    component_of: Vec<usize>,
    components: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentInfo {
    pub vertices: usize,
    pub edges: usize,
    pub euler_characteristic: i64,
    pub contractible: bool,
    /// Smallest product vertex of the component, as a pair of factor vertices.
    pub base: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub components: Vec<ComponentInfo>,
}

impl ComponentReport {
    pub fn contractible_count(&self) -> usize {
        self.components.iter().filter(|c| c.contractible).count()
    }

    /// `-sum chi` over non-contractible components.
    pub fn noncontractible_deficit(&self) -> i64 {
        self.components.iter().filter(|c| !c.contractible).map(|c| -c.euler_characteristic).sum()
    }
}

/// One double coset `HgK` with nontrivial `H ∩ gKg^-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubleCoset {
    pub component: usize,
    pub representative: Word,
    /// Free basis of `H ∩ gKg^-1`.
    pub generators: Vec<Word>,
}

pub fn fiber_product(h: &CoreGraph, k: &CoreGraph) -> FiberProduct {
    FiberProduct::new(h.folded(), k.folded())
}

impl FiberProduct {
    fn new(left: &FoldedGraph, right: &FoldedGraph) -> Self {
        assert_eq!(left.alphabet(), right.alphabet(), "factors over different roses");
        let alphabet = left.alphabet();
        let (n1, n2) = (left.num_vertices(), right.num_vertices());
        let mut graph = LabeledGraph::new(alphabet, n1 * n2);
        let mut edge_pairs = Vec::new();
        for label in 0..alphabet.rank() {
            let by_label = |g: &FoldedGraph| -> Vec<usize> {
                g.graph().edges().iter().enumerate().filter(|(_, e)| e.label == label).map(|(i, _)| i).collect()
            };
            let (l1, l2) = (by_label(left), by_label(right));
            for &e1 in &l1 {
                let a = left.graph().edges()[e1];
                for &e2 in &l2 {
                    let b = right.graph().edges()[e2];
                    graph.add_edge(a.origin * n2 + b.origin, a.terminus * n2 + b.terminus, label);
                    edge_pairs.push((e1, e2));
                }
            }
        }
        let components = graph.components();
        let mut component_of = vec![0; n1 * n2];
        for (i, c) in components.iter().enumerate() {
            for &v in c {
                component_of[v] = i;
            }
        }
        let folded = crate::stallings::folded_unchecked(graph);
        FiberProduct { folded, right_vertices: n2, edge_pairs, component_of, components }
    }

    pub fn graph(&self) -> &LabeledGraph {
        self.folded.graph()
    }

    pub fn folded(&self) -> &FoldedGraph {
        &self.folded
    }

    pub fn num_vertices(&self) -> usize {
        self.folded.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.folded.num_edges()
    }

    pub fn vertex(&self, v1: usize, v2: usize) -> usize {
        v1 * self.right_vertices + v2
    }

    /// Projections of a product vertex to the two factors.
    pub fn project_vertex(&self, v: usize) -> (usize, usize) {
        (v / self.right_vertices, v % self.right_vertices)
    }

    /// Projections of a product edge to the two factors.
    pub fn project_edge(&self, e: usize) -> (usize, usize) {
        self.edge_pairs[e]
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn component_vertices(&self, c: usize) -> &[usize] {
        &self.components[c]
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    pub fn classify_components(&self) -> ComponentReport {
        let mut edges = vec![0usize; self.components.len()];
        for e in self.graph().edges() {
            edges[self.component_of[e.origin]] += 1;
        }
        let components = self
            .components
            .iter()
            .zip(edges)
            .map(|(vs, e)| {
                let chi = vs.len() as i64 - e as i64;
                ComponentInfo {
                    vertices: vs.len(),
                    edges: e,
                    euler_characteristic: chi,
                    contractible: chi == 1,
                    base: self.project_vertex(vs[0]),
                }
            })
            .collect();
        ComponentReport { components }
    }

    /// Double-coset representative `g` and a basis of `H ∩ gKg^-1` for one
    /// component. `self` must be the product of `h.core()` and `k.core()`.
    ///
    /// With `(u, v)` the component's base vertex, `alpha` a shortest path from
    /// the basepoint of `Delta_H` to `u` and `beta` likewise in `Delta_K`,
    /// `g = alpha * beta^-1` and each loop `l` of the component at `(u, v)`
    /// yields `alpha * l * alpha^-1`.
    pub fn component_subgroup(&self, component: usize, h: &BasedCoreGraph, k: &BasedCoreGraph) -> (Word, Vec<Word>) {
        let (_, _, h_map) = h.split_tail();
        let (_, _, k_map) = k.split_tail();
        let root = self.components[component][0];
        let (u, v) = self.project_vertex(root);
        let (h_words, _) = h.folded().spanning_tree(0);
        let (k_words, _) = k.folded().spanning_tree(0);
        let alpha = h_words[h_map[u]].clone().expect("based graph is connected");
        let beta = k_words[k_map[v]].clone().expect("based graph is connected");
        let g = &alpha * &beta.invert();
        let gens = self.folded.loop_generators(root).iter().map(|l| &(&alpha * l) * &alpha.invert()).collect();
        (g, gens)
    }

    /// Every double coset whose intersection is nontrivial, one per
    /// non-contractible component.
    pub fn double_cosets(&self, h: &BasedCoreGraph, k: &BasedCoreGraph) -> Vec<DoubleCoset> {
        let report = self.classify_components();
        report
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.contractible)
            .map(|(i, _)| {
                let (representative, generators) = self.component_subgroup(i, h, k);
                DoubleCoset { component: i, representative, generators }
            })
            .collect()
    }
}

/// `#E - #V + c` of the fiber product of cores.
pub fn intersection_number_euler(h: &CoreGraph, k: &CoreGraph) -> usize {
    let fp = fiber_product(h, k);
    let c = fp.classify_components().contractible_count();
    let value = fp.num_edges() as i64 - fp.num_vertices() as i64 + c as i64;
    debug_assert!(value >= 0);
    value as usize
}

/// Sum over double cosets of the reduced rank of `H ∩ gKg^-1`, each
/// intersection rebuilt from its generators by folding.
pub fn intersection_number_cosets(h: &BasedCoreGraph, k: &BasedCoreGraph) -> Result<usize> {
    let fp = fiber_product(&h.core(), &k.core());
    let mut total = 0;
    for dc in fp.double_cosets(h, k) {
        let inter = BasedCoreGraph::from_generators(h.alphabet(), &dc.generators)?;
        total += inter.reduced_rank();
    }
    Ok(total)
}
