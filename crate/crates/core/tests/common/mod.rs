#![allow(dead_code)]

use rand::Rng;
use subset_currents::currents::{rational, FiniteSubtree, RationalCurrent};
use subset_currents::stallings::{random_subgroup, random_word, CoreGraph};
use subset_currents::{Alphabet, Letter, Word};

/// Counts start vertices admitting an occurrence of `t` by backtracking over
/// the raw edge list, without using the folded transition table.
pub fn brute_force_occurrences(t: &FiniteSubtree, g: &CoreGraph) -> usize {
    let edges = g.graph().edges();
    let mut degree = vec![0usize; g.num_vertices()];
    for e in edges {
        degree[e.origin] += 1;
        degree[e.terminus] += 1;
    }
    let words: Vec<&Word> = t.vertices().collect();
    // Each non-root vertex with its parent's position and the letter to it.
    let steps: Vec<(usize, Letter)> = words
        .iter()
        .skip(1)
        .map(|w| {
            let l = w.last().unwrap();
            let parent = Word::from_letters(w.alphabet(), w.letters()[..w.len() - 1].iter().copied());
            (words.iter().position(|x| **x == parent).unwrap(), l)
        })
        .collect();
    let degree_ok = |i: usize, v: usize| t.degree(words[i]) <= 1 || degree[v] == t.degree(words[i]);

    fn search(
        i: usize,
        image: &mut Vec<usize>,
        steps: &[(usize, Letter)],
        edges: &[subset_currents::stallings::Edge],
        ok: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        if i > steps.len() {
            return true;
        }
        let (parent, l) = steps[i - 1];
        let from = image[parent];
        for e in edges {
            if e.label != l.generator() {
                continue;
            }
            let (src, dst) = if l.is_inverse() { (e.terminus, e.origin) } else { (e.origin, e.terminus) };
            if src == from && ok(i, dst) {
                image.push(dst);
                if search(i + 1, image, steps, edges, ok) {
                    return true;
                }
                image.pop();
            }
        }
        false
    }

    (0..g.num_vertices())
        .filter(|&v| degree_ok(0, v) && search(1, &mut vec![v], &steps, edges, &degree_ok))
        .count()
}

/// A random nondegenerate subtree of the ball of radius `radius`.
pub fn random_tree<R: Rng>(rng: &mut R, alphabet: Alphabet, radius: usize) -> FiniteSubtree {
    loop {
        let mut words = vec![Word::identity(alphabet)];
        let mut frontier = vec![Word::identity(alphabet)];
        for _ in 0..radius {
            let mut next = Vec::new();
            for w in &frontier {
                for l in alphabet.letters() {
                    if w.last() == Some(l.inverse()) || !rng.gen_bool(0.45) {
                        continue;
                    }
                    let mut c = w.clone();
                    c.push(l);
                    words.push(c.clone());
                    next.push(c);
                }
            }
            frontier = next;
        }
        let t = FiniteSubtree::from_words(alphabet, words).unwrap();
        if t.is_nondegenerate() {
            return t;
        }
    }
}

/// Between 1 and `max_terms` counting currents with random positive
/// rational coefficients.
pub fn random_current<R: Rng>(rng: &mut R, alphabet: Alphabet, max_terms: usize) -> RationalCurrent {
    let mut mu = RationalCurrent::zero(alphabet);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let h = random_subgroup(rng, alphabet, 3, 5).unwrap();
        let c = rational(rng.gen_range(1..=9), rng.gen_range(1..=5));
        mu = mu.add(&RationalCurrent::counting(&h).scale(&c)).unwrap();
    }
    mu
}

/// `w^k` for a random cyclically reduced `w`.
pub fn random_power<R: Rng>(rng: &mut R, alphabet: Alphabet, k: usize) -> Word {
    let w = loop {
        let len = rng.gen_range(1..=4);
        let w = random_word(rng, alphabet, len);
        if w.is_cyclically_reduced() {
            break w;
        }
    };
    (0..k).fold(Word::identity(alphabet), |acc, _| &acc * &w)
}
