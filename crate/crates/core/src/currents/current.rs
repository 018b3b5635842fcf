use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::occurrence::occurrence_count;
use super::subtree::{enumerate_round_graphs, neighborhood_words, FiniteSubtree};
use crate::error::{Error, Result};
use crate::fiber::fiber_product;
use crate::stallings::{BasedCoreGraph, CanonicalKey, CoreGraph, GraphJson};
use crate::word::Alphabet;

pub type Rational = BigRational;

/// Renders `p/q`, including `/1` for integers.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q` or a bare integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Malformed(format!("bad rational {text:?}"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p = p.trim().parse().map_err(|_| bad())?;
            let q: num_bigint::BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn int(n: usize) -> Rational {
    Rational::from_integer(n.into())
}

/// A finite nonnegative combination of counting currents, stored with every
/// graph self-commensurated and in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCurrent {
    alphabet: Alphabet,
    terms: BTreeMap<CanonicalKey, (CoreGraph, Rational)>,
}

impl RationalCurrent {
    pub fn zero(alphabet: Alphabet) -> Self {
        RationalCurrent { alphabet, terms: BTreeMap::new() }
    }

    /// `eta_H`.
    pub fn counting(h: &BasedCoreGraph) -> Self {
        Self::counting_core(&h.core())
    }

    /// `eta_H` for `H = pi_1(g)`; `g` must be connected.
    pub fn counting_core(g: &CoreGraph) -> Self {
        let mut mu = Self::zero(g.alphabet());
        mu.add_term(Rational::from_integer(1.into()), g).expect("core graphs of subgroups are connected");
        mu
    }

    /// Merges `(c, H)` terms after replacing each `H` by its commensurator.
    pub fn normalize(alphabet: Alphabet, raw: impl IntoIterator<Item = (Rational, BasedCoreGraph)>) -> Result<Self> {
        let mut mu = Self::zero(alphabet);
        for (c, h) in raw {
            if h.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch { left: alphabet.rank(), right: h.alphabet().rank() });
            }
            mu.add_term(c, &h.core())?;
        }
        Ok(mu)
    }

    fn add_term(&mut self, c: Rational, g: &CoreGraph) -> Result<()> {
        if c.is_negative() {
            return Err(Error::Malformed(format!("negative coefficient {}", format_rational(&c))));
        }
        if c.is_zero() {
            return Ok(());
        }
        let (comm, index) = g.commensurator()?;
        let (canon, key) = comm.canonical_form()?;
        let slot = self.terms.entry(key).or_insert_with(|| (canon, Rational::zero()));
        slot.1 += c * int(index);
        Ok(())
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(coefficient, self-commensurated core graph)` in key order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &CoreGraph)> {
        self.terms.values().map(|(g, c)| (c, g))
    }

    pub fn keys(&self) -> impl Iterator<Item = &CanonicalKey> {
        self.terms.keys()
    }

    pub fn coefficient(&self, key: &CanonicalKey) -> Option<&Rational> {
        self.terms.get(key).map(|(_, c)| c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        assert!(!c.is_negative(), "currents scale by nonnegative rationals");
        let mut out = Self::zero(self.alphabet);
        if c.is_zero() {
            return out;
        }
        for (k, (g, d)) in &self.terms {
            out.terms.insert(k.clone(), (g.clone(), d * c));
        }
        out
    }

    pub fn add(&self, other: &RationalCurrent) -> Result<Self> {
        self.check_alphabet(other)?;
        let mut out = self.clone();
        for (k, (g, d)) in &other.terms {
            let slot = out.terms.entry(k.clone()).or_insert_with(|| (g.clone(), Rational::zero()));
            slot.1 += d;
        }
        Ok(out)
    }

    fn check_alphabet(&self, other: &RationalCurrent) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch { left: self.alphabet.rank(), right: other.alphabet.rank() });
        }
        Ok(())
    }

    /// `mu(SCyl(t))`.
    pub fn eval_cylinder(&self, t: &FiniteSubtree) -> Rational {
        self.terms().map(|(c, g)| c * int(occurrence_count(t, g))).sum()
    }

    pub fn functional_e(&self) -> Rational {
        self.alphabet.generators().map(|l| self.eval_cylinder(&FiniteSubtree::edge(self.alphabet, l))).sum()
    }

    /// Sum of cylinder values over the grade-1 round graphs. Only round
    /// graphs realized as `T_1(v)` somewhere can have nonzero value, so the
    /// sum runs over those.
    pub fn functional_v(&self) -> Rational {
        let mut trees = BTreeSet::new();
        for (_, g) in self.terms() {
            for v in 0..g.num_vertices() {
                trees.insert(neighborhood_words(g.folded(), v, 1));
            }
        }
        trees.iter().map(|t| self.eval_cylinder(t)).sum()
    }

    /// `sum over T in R_r of mu(SCyl(T))` by full enumeration.
    pub fn round_graph_mass(&self, r: usize, cap: u128) -> Result<Rational> {
        let all = enumerate_round_graphs(r, self.alphabet, cap)?;
        Ok(all.iter().map(|t| self.eval_cylinder(t.tree())).sum())
    }

    pub fn functional_rk(&self) -> Rational {
        self.functional_e() - self.functional_v()
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms()
            .map(|(c, g)| TermJson { coefficient: format_rational(c), graph: g.to_json() })
            .collect()
    }

    /// Rebuilds a current from its JSON terms, renormalizing.
    pub fn from_json(alphabet: Alphabet, terms: &[TermJson]) -> Result<Self> {
        let mut mu = Self::zero(alphabet);
        for t in terms {
            let g = t.graph.to_graph()?;
            if g.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch { left: alphabet.rank(), right: g.alphabet().rank() });
            }
            mu.add_term(parse_rational(&t.coefficient)?, &CoreGraph::from_graph(g)?)?;
        }
        Ok(mu)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coefficient: String,
    pub graph: GraphJson,
}

/// `mu(SCyl(e_a)) * nu(SCyl(e_a))` summed over positive letters.
pub fn e_hat(mu: &RationalCurrent, nu: &RationalCurrent) -> Rational {
    mu.alphabet
        .generators()
        .map(|l| {
            let e = FiniteSubtree::edge(mu.alphabet, l);
            mu.eval_cylinder(&e) * nu.eval_cylinder(&e)
        })
        .sum()
}

pub fn v_hat(mu: &RationalCurrent, nu: &RationalCurrent) -> Rational {
    mu.functional_v() * nu.functional_v()
}

/// Bilinear extension of the number of contractible components of
/// `Delta_H x Delta_K`.
pub fn c_hat(mu: &RationalCurrent, nu: &RationalCurrent) -> Rational {
    let mut total = Rational::zero();
    for (c, g) in mu.terms() {
        for (d, h) in nu.terms() {
            let count = fiber_product(g, h).classify_components().contractible_count();
            total += c * d * int(count);
        }
    }
    total
}

/// `E_hat - V_hat + c_hat`.
pub fn intersection_functional(mu: &RationalCurrent, nu: &RationalCurrent) -> Result<Rational> {
    mu.check_alphabet(nu)?;
    Ok(e_hat(mu, nu) - v_hat(mu, nu) + c_hat(mu, nu))
}

/// Bilinear extension of `(eta_H, eta_K) -> sum over HgK of eta_{H ∩ gKg^-1}`.
pub fn pushforward(mu: &RationalCurrent, nu: &RationalCurrent) -> Result<RationalCurrent> {
    mu.check_alphabet(nu)?;
    let mut out = RationalCurrent::zero(mu.alphabet);
    for (c, g) in mu.terms() {
        let hb = g.based_at(0);
        let h_core = hb.core();
        for (d, k) in nu.terms() {
            let kb = k.based_at(0);
            let fp = fiber_product(&h_core, &kb.core());
            for dc in fp.double_cosets(&hb, &kb) {
                let inter = BasedCoreGraph::from_generators(mu.alphabet, &dc.generators)?;
                out.add_term(c * d, &inter.core())?;
            }
        }
    }
    Ok(out)
}
