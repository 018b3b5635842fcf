//! Endomorphisms of F_N given by the images of the basis, and their action on
//! words, subgroups and rational currents.

use rand::Rng;

use crate::currents::RationalCurrent;
use crate::error::{Error, Result};
use crate::stallings::{BasedCoreGraph, CoreGraph};
use crate::word::{Alphabet, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endomorphism {
    alphabet: Alphabet,
    images: Vec<Word>,
}

impl Endomorphism {
    pub fn new(alphabet: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != alphabet.rank() {
            return Err(Error::WrongImageCount { expected: alphabet.rank(), got: images.len() });
        }
        if let Some(w) = images.iter().find(|w| w.alphabet() != alphabet) {
            return Err(Error::AlphabetMismatch { left: alphabet.rank(), right: w.alphabet().rank() });
        }
        Ok(Endomorphism { alphabet, images })
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        let images = alphabet.generators().map(|l| Word::letter(alphabet, l)).collect();
        Endomorphism { alphabet, images }
    }

    /// One image word per line, generator order.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        let mut images = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            let w = Word::parse(body, alphabet).map_err(|e| Error::AtLine { line: i + 1, source: Box::new(e) })?;
            images.push(w);
        }
        Endomorphism::new(alphabet, images)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image_of(&self, l: Letter) -> Word {
        let w = &self.images[l.generator()];
        if l.is_inverse() {
            w.invert()
        } else {
            w.clone()
        }
    }

    pub fn apply_word(&self, w: &Word) -> Word {
        w.letters().iter().fold(Word::identity(self.alphabet), |acc, &l| &acc * &self.image_of(l))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Endomorphism) -> Endomorphism {
        Endomorphism { alphabet: self.alphabet, images: other.images.iter().map(|w| self.apply_word(w)).collect() }
    }

    /// Surjective, hence bijective since F_N is Hopfian.
    pub fn is_automorphism(&self) -> bool {
        match BasedCoreGraph::from_generators(self.alphabet, &self.images) {
            Ok(h) => h == CoreGraph::rose(self.alphabet).based_at(0),
            Err(_) => false,
        }
    }

    /// `phi(H)`, rebuilt from the images of a basis of `H`.
    pub fn act_on_subgroup(&self, h: &BasedCoreGraph) -> Result<BasedCoreGraph> {
        let gens: Vec<Word> = h.generators().iter().map(|g| self.apply_word(g)).collect();
        BasedCoreGraph::from_generators(self.alphabet, &gens)
    }

    /// Termwise image, renormalized. Non-injective maps can send a term to the
    /// trivial subgroup, which contributes zero.
    pub fn act_on_current(&self, mu: &RationalCurrent) -> Result<RationalCurrent> {
        let mut raw = Vec::new();
        for (c, g) in mu.terms() {
            match self.act_on_subgroup(&g.based_at(0)) {
                Ok(h) => raw.push((c.clone(), h)),
                Err(Error::TrivialSubgroup) => {}
                Err(e) => return Err(e),
            }
        }
        RationalCurrent::normalize(self.alphabet, raw)
    }
}

/// An endomorphism known to be an automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism(Endomorphism);

impl Automorphism {
    pub fn new(phi: Endomorphism) -> Result<Self> {
        if phi.is_automorphism() {
            Ok(Automorphism(phi))
        } else {
            Err(Error::NotAutomorphism)
        }
    }

    pub fn endomorphism(&self) -> &Endomorphism {
        &self.0
    }

    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism(self.0.compose(&other.0))
    }

    /// Conjugation `w -> g^-1 w g`.
    pub fn inner(alphabet: Alphabet, g: &Word) -> Automorphism {
        Automorphism(Endomorphism {
            alphabet,
            images: alphabet.generators().map(|l| g.conjugate(&Word::letter(alphabet, l))).collect(),
        })
    }
}

impl std::ops::Deref for Automorphism {
    type Target = Endomorphism;

    fn deref(&self) -> &Endomorphism {
        &self.0
    }
}

/// Transpositions `a_i <-> a_j`, inversions `a_i -> a_i^-1`, and
/// multiplications `a_i -> a_j a_i` for `i != j`.
pub fn nielsen_generators(alphabet: Alphabet) -> Vec<Automorphism> {
    let n = alphabet.rank();
    let basis: Vec<Word> = alphabet.generators().map(|l| Word::letter(alphabet, l)).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut images = basis.clone();
            images.swap(i, j);
            out.push(images);
        }
    }
    for i in 0..n {
        let mut images = basis.clone();
        images[i] = basis[i].invert();
        out.push(images);
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut images = basis.clone();
                images[i] = &basis[j] * &basis[i];
                out.push(images);
            }
        }
    }
    out.into_iter().map(|images| Automorphism(Endomorphism { alphabet, images })).collect()
}

/// Product of `length` uniformly chosen Nielsen generators.
pub fn random_automorphism<R: Rng>(rng: &mut R, alphabet: Alphabet, length: usize) -> Automorphism {
    let gens = nielsen_generators(alphabet);
    let mut phi = Automorphism(Endomorphism::identity(alphabet));
    for _ in 0..length {
        phi = gens[rng.gen_range(0..gens.len())].compose(&phi);
    }
    phi
}
