//! Finite subtrees of the Cayley tree rooted at the identity, and round
//! graphs.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::stallings::{CoreGraph, FoldedGraph};
use crate::word::{Alphabet, Letter, Word};

/// A prefix-closed set of reduced words containing the identity; each word is
/// a vertex of the Cayley tree and each word is joined to its longest proper
/// prefix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteSubtree {
    alphabet: Alphabet,
    vertices: BTreeSet<Word>,
}

impl FiniteSubtree {
    pub fn from_words(alphabet: Alphabet, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut vertices: BTreeSet<Word> = words.into_iter().collect();
        vertices.insert(Word::identity(alphabet));
        for w in &vertices {
            if w.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch { left: alphabet.rank(), right: w.alphabet().rank() });
            }
            if !w.is_identity() {
                let parent = Word::from_letters(alphabet, w.letters()[..w.len() - 1].iter().copied());
                if !vertices.contains(&parent) {
                    return Err(Error::Malformed(format!("subtree is not prefix-closed at {w}")));
                }
            }
        }
        Ok(FiniteSubtree { alphabet, vertices })
    }

    /// Parses `{1,a,ab}` or a bare comma-separated list; `1` is the identity.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        let body = text.trim().trim_start_matches('{').trim_end_matches('}');
        let mut words = Vec::new();
        for tok in body.split(',') {
            let tok = tok.trim();
            if tok.is_empty() || tok == "1" {
                continue;
            }
            words.push(Word::parse(tok, alphabet)?);
        }
        FiniteSubtree::from_words(alphabet, words)
    }

    /// `{id}`.
    pub fn singleton(alphabet: Alphabet) -> Self {
        FiniteSubtree { alphabet, vertices: BTreeSet::from([Word::identity(alphabet)]) }
    }

    /// The edge `e_a = {id, a}`.
    pub fn edge(alphabet: Alphabet, letter: Letter) -> Self {
        FiniteSubtree::from_words(alphabet, [Word::letter(alphabet, letter)]).unwrap()
    }

    /// The full ball of radius `r` about the identity.
    pub fn ball(alphabet: Alphabet, r: usize) -> Self {
        let mut vertices = BTreeSet::from([Word::identity(alphabet)]);
        let mut frontier = vec![Word::identity(alphabet)];
        for _ in 0..r {
            let mut next = Vec::new();
            for w in &frontier {
                for c in children(w) {
                    vertices.insert(c.clone());
                    next.push(c);
                }
            }
            frontier = next;
        }
        FiniteSubtree { alphabet, vertices }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Word> {
        self.vertices.iter()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.vertices.contains(w)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.vertices.len() - 1
    }

    /// At least two vertices.
    pub fn is_nondegenerate(&self) -> bool {
        self.vertices.len() >= 2
    }

    /// Largest distance from the identity.
    pub fn radius(&self) -> usize {
        self.vertices.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn degree(&self, w: &Word) -> usize {
        let parent = usize::from(!w.is_identity());
        parent + children(w).filter(|c| self.vertices.contains(c)).count()
    }

    pub fn intersection(&self, other: &FiniteSubtree) -> FiniteSubtree {
        FiniteSubtree {
            alphabet: self.alphabet,
            vertices: self.vertices.intersection(&other.vertices).cloned().collect(),
        }
    }

    /// `g^-1 * T`, re-rooted so that `g` becomes the identity. Only a subtree
    /// rooted at the identity when `g` is a vertex of `T`.
    pub fn translate_to(&self, g: &Word) -> Option<FiniteSubtree> {
        if !self.contains(g) {
            return None;
        }
        let gi = g.invert();
        let words: Vec<Word> = self.vertices.iter().map(|w| &gi * w).collect();
        FiniteSubtree::from_words(self.alphabet, words).ok()
    }

    /// `other` is a translate of `self` (same class under the F_N action).
    pub fn is_translate_of(&self, other: &FiniteSubtree) -> bool {
        self.num_vertices() == other.num_vertices()
            && self.vertices.iter().any(|g| self.translate_to(g).as_ref() == Some(other))
    }

    /// Tree vertices with their parent's position and the letter leading to
    /// them; the identity comes first and parents precede children.
    pub(crate) fn shape(&self) -> Vec<(usize, Option<Letter>, usize)> {
        let words: Vec<&Word> = self.vertices.iter().collect();
        let mut out = Vec::with_capacity(words.len());
        for w in &words {
            let degree = self.degree(w);
            match w.last() {
                None => out.push((0, None, degree)),
                Some(l) => {
                    let parent = Word::from_letters(self.alphabet, w.letters()[..w.len() - 1].iter().copied());
                    // BTreeSet order puts every prefix before its extensions.
                    let pi = words.binary_search(&&parent).unwrap();
                    out.push((pi, Some(l), degree));
                }
            }
        }
        out
    }
}

impl fmt::Display for FiniteSubtree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut by_len: Vec<&Word> = self.vertices.iter().collect();
        by_len.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        f.write_str("{")?;
        for (i, w) in by_len.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if w.is_identity() {
                f.write_str("1")?;
            } else {
                write!(f, "{w}")?;
            }
        }
        f.write_str("}")
    }
}

/// One-letter extensions of `w` that stay reduced.
fn children(w: &Word) -> impl Iterator<Item = Word> + '_ {
    let back = w.last().map(|l| l.inverse());
    w.alphabet().letters().filter(move |&l| Some(l) != back).map(move |l| {
        let mut c = w.clone();
        c.push(l);
        c
    })
}

/// A subtree whose leaves all lie at distance exactly `grade` from the
/// identity, which has degree at least two.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RoundGraph {
    tree: FiniteSubtree,
    grade: usize,
}

impl RoundGraph {
    pub fn new(tree: FiniteSubtree, grade: usize) -> Result<Self> {
        if grade == 0 {
            return Err(Error::Malformed("round graphs have grade >= 1".into()));
        }
        let id = Word::identity(tree.alphabet);
        if tree.degree(&id) < 2 {
            return Err(Error::Malformed("identity must have degree >= 2".into()));
        }
        for w in tree.vertices() {
            if w.len() > grade || (!w.is_identity() && tree.degree(w) == 1 && w.len() != grade) {
                return Err(Error::Malformed(format!("vertex {w} violates grade {grade}")));
            }
        }
        Ok(RoundGraph { tree, grade })
    }

    pub fn tree(&self) -> &FiniteSubtree {
        &self.tree
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn into_tree(self) -> FiniteSubtree {
        self.tree
    }
}

/// `T_r(v)`: all reduced label paths of length at most `r` from `v`.
pub fn neighborhood_tree(g: &CoreGraph, v: usize, r: usize) -> RoundGraph {
    let tree = neighborhood_words(g.folded(), v, r);
    RoundGraph::new(tree, r).expect("core vertices have degree >= 2")
}

pub(crate) fn neighborhood_words(g: &FoldedGraph, v: usize, r: usize) -> FiniteSubtree {
    let alphabet = g.alphabet();
    let mut vertices = BTreeSet::new();
    let mut frontier = vec![(Word::identity(alphabet), v)];
    vertices.insert(Word::identity(alphabet));
    for _ in 0..r {
        let mut next = Vec::new();
        for (w, at) in &frontier {
            let back = w.last().map(|l| l.inverse());
            for l in alphabet.letters() {
                if Some(l) == back {
                    continue;
                }
                if let Some(t) = g.step(*at, l) {
                    let mut c = w.clone();
                    c.push(l);
                    vertices.insert(c.clone());
                    next.push((c, t));
                }
            }
        }
        frontier = next;
    }
    FiniteSubtree { alphabet, vertices }
}

/// Default cap on the size of a round-graph enumeration.
pub const DEFAULT_ROUND_GRAPH_CAP: u128 = 100_000;

/// `|R_r|` for rank `N`, saturating at `u128::MAX`.
pub fn round_graph_count(r: usize, alphabet: Alphabet) -> u128 {
    assert!(r >= 1);
    let d = alphabet.directions() as u32;
    // below[k]: number of admissible subtrees hanging from a non-root vertex at depth k.
    let mut below: u128 = 1;
    for _ in (1..r).rev() {
        below = (below + 1).checked_pow(d - 1).map_or(u128::MAX, |x| x - 1);
    }
    (below + 1)
        .checked_pow(d)
        .and_then(|x| x.checked_sub(1 + d as u128 * below))
        .unwrap_or(u128::MAX)
}

/// Every element of `R_r` exactly once, in increasing order.
pub fn enumerate_round_graphs(r: usize, alphabet: Alphabet, cap: u128) -> Result<Vec<RoundGraph>> {
    if r == 0 {
        return Err(Error::Malformed("round graphs have grade >= 1".into()));
    }
    let count = round_graph_count(r, alphabet);
    if count > cap {
        return Err(Error::SizeLimit { what: "round graph enumeration", count, cap });
    }
    let root = Word::identity(alphabet);
    let mut out = Vec::with_capacity(count as usize);
    for choice in subsets(children(&root).collect(), 2) {
        let mut partial: Vec<Vec<Word>> = vec![vec![root.clone()]];
        for child in choice {
            let branches = hanging(&child, r);
            let mut next = Vec::with_capacity(partial.len() * branches.len());
            for p in &partial {
                for b in &branches {
                    let mut q = p.clone();
                    q.extend(b.iter().cloned());
                    next.push(q);
                }
            }
            partial = next;
        }
        for words in partial {
            let tree = FiniteSubtree { alphabet, vertices: words.into_iter().collect() };
            out.push(RoundGraph { tree, grade: r });
        }
    }
    out.sort();
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

/// All admissible vertex sets of the branch rooted at non-root vertex `w`.
fn hanging(w: &Word, r: usize) -> Vec<Vec<Word>> {
    if w.len() == r {
        return vec![vec![w.clone()]];
    }
    let mut out = Vec::new();
    for choice in subsets(children(w).collect(), 1) {
        let mut partial: Vec<Vec<Word>> = vec![vec![w.clone()]];
        for c in choice {
            let branches = hanging(&c, r);
            let mut next = Vec::new();
            for p in &partial {
                for b in &branches {
                    let mut q = p.clone();
                    q.extend(b.iter().cloned());
                    next.push(q);
                }
            }
            partial = next;
        }
        out.extend(partial);
    }
    out
}

fn subsets(items: Vec<Word>, min: usize) -> Vec<Vec<Word>> {
    let n = items.len();
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize >= min)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| items[i].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stallings::BasedCoreGraph;

    fn f2() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    fn tree(s: &str) -> FiniteSubtree {
        FiniteSubtree::parse(s, f2()).unwrap()
    }

    fn core(gens: &[&str]) -> CoreGraph {
        let words: Vec<Word> = gens.iter().map(|s| Word::parse(s, f2()).unwrap()).collect();
        BasedCoreGraph::from_generators(f2(), &words).unwrap().core()
    }

    #[test]
    fn prefix_closure_is_enforced() {
        assert!(FiniteSubtree::parse("{1,ab}", f2()).is_err());
        let t = tree("{1,a,ab,A}");
        assert_eq!(t.num_vertices(), 4);
        assert_eq!(t.to_string(), "{1,a,A,ab}");
        assert_eq!(FiniteSubtree::parse(&t.to_string(), f2()).unwrap(), t);
    }

    #[test]
    fn neighborhoods() {
        let a = core(&["a"]);
        assert_eq!(neighborhood_tree(&a, 0, 1).tree(), &tree("{1,a,A}"));
        let rose = CoreGraph::rose(f2());
        assert_eq!(neighborhood_tree(&rose, 0, 1).tree(), &tree("{1,a,A,b,B}"));
        assert_eq!(neighborhood_tree(&rose, 0, 2).tree(), &FiniteSubtree::ball(f2(), 2));
        // <a^2, b>: the basepoint has a b-loop and a-edges to the other vertex.
        let h = BasedCoreGraph::from_generators(f2(), &[Word::parse("aa", f2()).unwrap(), Word::parse("b", f2()).unwrap()])
            .unwrap()
            .core();
        let base = (0..2).find(|&v| h.folded().step(v, Letter::new(2, false)).is_some()).unwrap();
        let t = neighborhood_tree(&h, base, 2);
        assert_eq!(t.tree(), &tree("{1,a,A,b,B,aa,AA,ba,bA,bb,Ba,BA,BB}"));
    }

    #[test]
    fn counts_match_formula_and_brute_force() {
        assert_eq!(round_graph_count(1, f2()), 11);
        assert_eq!(round_graph_count(2, f2()), 4067);
        assert_eq!(round_graph_count(1, Alphabet::new(3).unwrap()), 57);
        assert_eq!(enumerate_round_graphs(1, f2(), DEFAULT_ROUND_GRAPH_CAP).unwrap().len(), 11);
        assert_eq!(enumerate_round_graphs(1, Alphabet::new(3).unwrap(), DEFAULT_ROUND_GRAPH_CAP).unwrap().len(), 57);
        let r2 = enumerate_round_graphs(2, f2(), DEFAULT_ROUND_GRAPH_CAP).unwrap();
        assert_eq!(r2.len(), 4067);
        assert!(r2.windows(2).all(|w| w[0] < w[1]));
        // Brute force over subsets of the radius-2 ball: 17 vertices, 2^16 subsets containing id.
        let ball: Vec<Word> = FiniteSubtree::ball(f2(), 2).vertices().filter(|w| !w.is_identity()).cloned().collect();
        let mut brute = 0;
        for mask in 0u32..1 << ball.len() {
            let words = (0..ball.len()).filter(|i| mask >> i & 1 == 1).map(|i| ball[i].clone());
            if let Ok(t) = FiniteSubtree::from_words(f2(), words) {
                if RoundGraph::new(t, 2).is_ok() {
                    brute += 1;
                }
            }
        }
        assert_eq!(brute, 4067);
        assert!(matches!(
            enumerate_round_graphs(3, f2(), DEFAULT_ROUND_GRAPH_CAP),
            Err(Error::SizeLimit { .. })
        ));
        assert!(matches!(
            enumerate_round_graphs(2, Alphabet::new(3).unwrap(), DEFAULT_ROUND_GRAPH_CAP),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn intersections() {
        let t = tree("{1,a,A,ab}");
        assert_eq!(t.intersection(&t), t);
        assert_eq!(tree("{1,a,A}").intersection(&tree("{1,b,B}")), FiniteSubtree::singleton(f2()));
        let t1 = tree("{1,a,aa,ab,A,AA}");
        let t2 = tree("{1,a,aa,aB,b,bb}");
        assert_eq!(t1.intersection(&t2), tree("{1,a,aa}"));
    }

    #[test]
    fn translates() {
        let t = tree("{1,a,ab}");
        let moved = t.translate_to(&Word::parse("ab", f2()).unwrap()).unwrap();
        assert_eq!(moved, tree("{1,B,BA}"));
        assert!(t.is_translate_of(&moved));
        assert!(!t.is_translate_of(&tree("{1,a,aa}")));
    }
}
