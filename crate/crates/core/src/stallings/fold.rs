use std::collections::HashMap;

use super::{Edge, LabeledGraph};

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Stallings folding. Each pass indexes surviving edges by
/// `(origin class, letter)` and `(terminus class, inverse letter)`; a clash
/// merges the far endpoints and drops the now-duplicate edge. Passes repeat
/// until one completes without a clash.
pub(crate) fn fold(g: &LabeledGraph) -> LabeledGraph {
    let mut uf = UnionFind::new(g.num_vertices);
    let mut alive = vec![true; g.edges.len()];
    let mut slots: HashMap<(usize, usize), usize> = HashMap::new();
    loop {
        let mut changed = false;
        slots.clear();
        for (id, e) in g.edges.iter().enumerate() {
            if !alive[id] {
                continue;
            }
            let o = uf.find(e.origin);
            let t = uf.find(e.terminus);
            let fwd = (o, 2 * e.label);
            let bwd = (t, 2 * e.label + 1);
            if let Some(&other) = slots.get(&fwd) {
                let t2 = g.edges[other].terminus;
                uf.union(t, t2);
                alive[id] = false;
                changed = true;
                continue;
            }
            if let Some(&other) = slots.get(&bwd) {
                let o2 = g.edges[other].origin;
                uf.union(o, o2);
                alive[id] = false;
                changed = true;
                continue;
            }
            slots.insert(fwd, id);
            slots.insert(bwd, id);
        }
        if !changed {
            break;
        }
    }

    let mut new_id = vec![usize::MAX; g.num_vertices];
    let mut count = 0;
    for v in 0..g.num_vertices {
        let r = uf.find(v);
        if new_id[r] == usize::MAX {
            new_id[r] = count;
            count += 1;
        }
    }
    let mut out = LabeledGraph::new(g.alphabet, count);
    for (id, e) in g.edges.iter().enumerate() {
        if alive[id] {
            out.edges.push(Edge {
                origin: new_id[uf.find(e.origin)],
                terminus: new_id[uf.find(e.terminus)],
                label: e.label,
            });
        }
    }
    out.basepoint = g.basepoint.map(|b| new_id[uf.find(b)]);
    out
}

/// Repeatedly deletes vertices of degree at most one (never `keep`).
/// Returns the pruned graph and, for each surviving vertex, its old index.
pub(crate) fn prune(g: &LabeledGraph, keep: Option<usize>) -> (LabeledGraph, Vec<usize>) {
    let n = g.num_vertices;
    let mut deg = g.degrees();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (id, e) in g.edges.iter().enumerate() {
        incident[e.origin].push(id);
        if e.terminus != e.origin {
            incident[e.terminus].push(id);
        }
    }
    let mut alive_edge = vec![true; g.edges.len()];
    let mut alive_vertex = vec![true; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1 && Some(v) != keep).collect();
    while let Some(v) = stack.pop() {
        if !alive_vertex[v] {
            continue;
        }
        alive_vertex[v] = false;
        if deg[v] == 1 {
            let id = *incident[v].iter().find(|&&id| alive_edge[id]).unwrap();
            alive_edge[id] = false;
            let e = &g.edges[id];
            let u = if e.origin == v { e.terminus } else { e.origin };
            deg[u] -= 1;
            deg[v] = 0;
            if deg[u] <= 1 && Some(u) != keep && alive_vertex[u] {
                stack.push(u);
            }
        }
    }
    let mut new_id = vec![usize::MAX; n];
    let mut old_of_new = Vec::new();
    for v in 0..n {
        if alive_vertex[v] {
            new_id[v] = old_of_new.len();
            old_of_new.push(v);
        }
    }
    let mut out = LabeledGraph::new(g.alphabet, old_of_new.len());
    for (id, e) in g.edges.iter().enumerate() {
        if alive_edge[id] {
            out.edges.push(Edge { origin: new_id[e.origin], terminus: new_id[e.terminus], label: e.label });
        }
    }
    out.basepoint = keep.map(|k| new_id[k]);
    (out, old_of_new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stallings::canonical::canonical_key_of;
    use crate::stallings::FoldedGraph;
    use crate::word::{Alphabet, Word};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    #[test]
    fn fold_order_does_not_matter() {
        let a = Alphabet::new(2).unwrap();
        let gens = ["abAB", "aab", "bbaB", "abba", "BAbab"];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut keys = Vec::new();
        for _ in 0..20 {
            let mut g = LabeledGraph::new(a, 1).with_basepoint(0);
            for s in gens {
                g.add_loop(0, &Word::parse(s, a).unwrap());
            }
            g.edges.shuffle(&mut rng);
            let f = fold(&g);
            assert!(f.is_folded());
            let (p, _) = prune(&f, Some(f.basepoint.unwrap()));
            keys.push(canonical_key_of(&FoldedGraph::new(p)));
        }
        assert!(keys.windows(2).all(|w| w[0] == w[1]));
    }
}
