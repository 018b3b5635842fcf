//! Rational subset currents: finite nonnegative combinations of counting
//! currents, evaluated on cylinders by counting occurrences of subtrees.

mod current;
mod occurrence;
mod subtree;

use std::collections::BTreeMap;
use std::fmt::Write as _;

pub use current::{
    c_hat, e_hat, format_rational, intersection_functional, parse_rational, pushforward, rational, v_hat, Rational,
    RationalCurrent, TermJson,
};
pub use occurrence::{occurrence_count, occurrences};
pub use subtree::{
    enumerate_round_graphs, neighborhood_tree, round_graph_count, FiniteSubtree, RoundGraph, DEFAULT_ROUND_GRAPH_CAP,
};

use crate::error::{Error, Result};
use crate::fiber::fiber_product;
use crate::stallings::CoreGraph;
use subtree::neighborhood_words;

/// `T1 ∩ T2`; may be `{id}`.
pub fn tree_intersection(t1: &FiniteSubtree, t2: &FiniteSubtree) -> FiniteSubtree {
    t1.intersection(t2)
}

/// Number of contractible components of `h x k` isomorphic to `t`, where
/// `t` lies in the ball of radius `r`. See [`RoundGraphRoute`].
pub fn c_hat_via_round_graphs(h: &CoreGraph, k: &CoreGraph, t: &FiniteSubtree, r: usize, cap: u128) -> Result<usize> {
    Ok(RoundGraphRoute::new(r, h.alphabet(), cap)?.counts(h, k, std::slice::from_ref(t))?[0])
}

/// Counts contractible components of a fiber product by shape, three ways,
/// and fails if they disagree: lifting each tree component to the Cayley
/// tree; intersecting grade `r+1` neighborhoods over all vertex pairs; and
/// the double sum over `R_{r+1}` of products of occurrence counts.
#[derive(Debug, Clone)]
pub struct RoundGraphRoute {
    radius: usize,
    round: Vec<RoundGraph>,
}

impl RoundGraphRoute {
    /// Enumerates `R_{r+1}` once, for trees of radius at most `r`.
    pub fn new(r: usize, alphabet: crate::word::Alphabet, cap: u128) -> Result<Self> {
        Ok(RoundGraphRoute { radius: r, round: enumerate_round_graphs(r + 1, alphabet, cap)? })
    }

    pub fn counts(&self, h: &CoreGraph, k: &CoreGraph, trees: &[FiniteSubtree]) -> Result<Vec<usize>> {
        if let Some(t) = trees.iter().find(|t| t.radius() > self.radius) {
            return Err(Error::Malformed(format!("tree {t} does not fit in radius {}", self.radius)));
        }
        let grade = self.radius + 1;

        let lifts: Vec<FiniteSubtree> = contractible_shapes(h, k).into_iter().flat_map(|(t, n)| vec![t; n]).collect();

        let nh: Vec<FiniteSubtree> = (0..h.num_vertices()).map(|v| neighborhood_words(h.folded(), v, grade)).collect();
        let nk: Vec<FiniteSubtree> = (0..k.num_vertices()).map(|v| neighborhood_words(k.folded(), v, grade)).collect();
        let meets: Vec<FiniteSubtree> = nh.iter().flat_map(|a| nk.iter().map(move |b| a.intersection(b))).collect();

        let support = |g: &CoreGraph| -> Vec<(&FiniteSubtree, usize)> {
            self.round
                .iter()
                .map(|rg| (rg.tree(), occurrence_count(rg.tree(), g)))
                .filter(|&(_, n)| n > 0)
                .collect()
        };
        let (sh, sk) = (support(h), support(k));
        let mut products = Vec::new();
        for (t1, n1) in &sh {
            for (t2, n2) in &sk {
                products.push((t1.intersection(t2), n1 * n2));
            }
        }

        let mut out = Vec::with_capacity(trees.len());
        for t in trees {
            let direct = lifts.iter().filter(|l| l.num_vertices() == t.num_vertices() && l.is_translate_of(t)).count();
            let pairs = meets.iter().filter(|m| *m == t).count();
            let double_sum: usize = products.iter().filter(|(m, _)| m == t).map(|(_, n)| n).sum();
            if direct != pairs || pairs != double_sum {
                return Err(Error::MismatchBug(format!(
                    "c_hat routes disagree for {t}: components {direct}, vertex pairs {pairs}, round-graph sum {double_sum}"
                )));
            }
            out.push(direct);
        }
        Ok(out)
    }
}

/// Tab-separated `tree, value` rows with a header, LF line endings.
pub fn cylinder_report(mu: &RationalCurrent, trees: &[FiniteSubtree]) -> String {
    let mut out = String::from("tree\tvalue\n");
    for t in trees {
        writeln!(out, "{t}\t{}", format_rational(&mu.eval_cylinder(t))).unwrap();
    }
    out
}

/// Contractible components of `h x k` grouped by the id-rooted lift of each
/// component at its smallest vertex.
pub fn contractible_shapes(h: &CoreGraph, k: &CoreGraph) -> BTreeMap<FiniteSubtree, usize> {
    let fp = fiber_product(h, k);
    let mut out = BTreeMap::new();
    for (i, info) in fp.classify_components().components.iter().enumerate() {
        if info.contractible {
            let (words, _) = fp.folded().spanning_tree(fp.component_vertices(i)[0]);
            let lift = FiniteSubtree::from_words(h.alphabet(), words.into_iter().flatten()).expect("lift is prefix-closed");
            *out.entry(lift).or_insert(0) += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stallings::{random_subgroup, seeded, BasedCoreGraph};
    use crate::word::{Alphabet, Word};

    fn f2() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    fn core(gens: &[&str]) -> CoreGraph {
        let words: Vec<Word> = gens.iter().map(|s| Word::parse(s, f2()).unwrap()).collect();
        BasedCoreGraph::from_generators(f2(), &words).unwrap().core()
    }

    #[test]
    fn round_graph_route_examples() {
        let id = FiniteSubtree::singleton(f2());
        assert_eq!(c_hat_via_round_graphs(&core(&["a"]), &core(&["b"]), &id, 0, DEFAULT_ROUND_GRAPH_CAP), Ok(1));
        assert_eq!(c_hat_via_round_graphs(&core(&["a"]), &core(&["a"]), &id, 0, DEFAULT_ROUND_GRAPH_CAP), Ok(0));
        let edge = FiniteSubtree::parse("{1,a}", f2()).unwrap();
        assert!(c_hat_via_round_graphs(&core(&["aa", "b"]), &core(&["ab"]), &edge, 1, DEFAULT_ROUND_GRAPH_CAP).is_ok());
        assert!(c_hat_via_round_graphs(&core(&["a"]), &core(&["b"]), &edge, 0, DEFAULT_ROUND_GRAPH_CAP).is_err());
    }

    #[test]
    fn round_graph_route_sums_to_c_hat() {
        let (h, k) = (core(&["aa", "b"]), core(&["a", "bb"]));
        let shapes = contractible_shapes(&h, &k);
        let mut total = 0;
        for (t, n) in &shapes {
            let r = t.radius();
            if r <= 1 {
                assert_eq!(c_hat_via_round_graphs(&h, &k, t, 1, DEFAULT_ROUND_GRAPH_CAP), Ok(*n));
            }
            total += n;
        }
        let value = c_hat(&RationalCurrent::counting_core(&h), &RationalCurrent::counting_core(&k));
        assert_eq!(value, rational(total as i64, 1));
    }

    // Whenever grade-(r+1) neighborhoods of a vertex pair meet in a tree of
    // radius at most r, that pair's component is a tree and lifts to it.
    #[test]
    fn small_neighborhood_intersections_are_whole_components() {
        let mut rng = seeded(8);
        for _ in 0..20 {
            let h = random_subgroup(&mut rng, f2(), 3, 4).unwrap().core();
            let k = random_subgroup(&mut rng, f2(), 3, 4).unwrap().core();
            let fp = fiber_product(&h, &k);
            let r = 1;
            for v1 in 0..h.num_vertices() {
                for v2 in 0..k.num_vertices() {
                    let t = neighborhood_words(h.folded(), v1, r + 1)
                        .intersection(&neighborhood_words(k.folded(), v2, r + 1));
                    if t.radius() > r {
                        continue;
                    }
                    let v = fp.vertex(v1, v2);
                    let comp = fp.component_of(v);
                    assert_eq!(fp.component_vertices(comp).len(), t.num_vertices());
                    let (words, _) = fp.folded().spanning_tree(v);
                    let lift = FiniteSubtree::from_words(f2(), words.into_iter().flatten()).unwrap();
                    assert_eq!(lift, t);
                }
            }
        }
    }

    #[test]
    fn report_format() {
        let mu = RationalCurrent::counting_core(&core(&["aab"])).scale(&rational(1, 3));
        let trees = [FiniteSubtree::parse("{1,a}", f2()).unwrap(), FiniteSubtree::parse("{1,b}", f2()).unwrap()];
        assert_eq!(cylinder_report(&mu, &trees), "tree\tvalue\n{1,a}\t2/3\n{1,b}\t1/3\n");
    }
}
