use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{BasedCoreGraph, CoreGraph, LabeledGraph};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

/// JSON form of a labeled graph. Edge labels are positive letters rendered in
/// the word format (`"a"`, or `"x27"` above rank 26).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub rank: usize,
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize, String)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub basepoint: Option<usize>,
}

fn label_text(alphabet: Alphabet, label: usize) -> String {
    Word::letter(alphabet, Letter::new(label + 1, false)).to_string()
}

impl From<&LabeledGraph> for GraphJson {
    fn from(g: &LabeledGraph) -> Self {
        GraphJson {
            rank: g.alphabet().rank(),
            vertices: (0..g.num_vertices()).collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| (e.origin, e.terminus, label_text(g.alphabet(), e.label)))
                .collect(),
            basepoint: g.basepoint(),
        }
    }
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<LabeledGraph> {
        let alphabet = Alphabet::new(self.rank)?;
        let n = self.vertices.len();
        if self.vertices.iter().enumerate().any(|(i, &v)| i != v) {
            return Err(Error::Malformed("vertices must be 0..n in order".into()));
        }
        let mut g = LabeledGraph::new(alphabet, n);
        for (o, t, label) in &self.edges {
            let w = Word::parse(label, alphabet)?;
            match w.letters() {
                [l] if !l.is_inverse() && *o < n && *t < n => g.add_edge(*o, *t, l.generator()),
                _ => return Err(Error::Malformed(format!("bad edge ({o}, {t}, {label:?})"))),
            }
        }
        if let Some(b) = self.basepoint {
            if b >= n {
                return Err(Error::Malformed("basepoint out of range".into()));
            }
            g = g.with_basepoint(b);
        }
        Ok(g)
    }
}

impl LabeledGraph {
    pub fn to_json(&self) -> GraphJson {
        GraphJson::from(self)
    }

    /// Graphviz digraph; `colors[v]`, when given, fills vertex `v`.
    pub fn to_dot(&self, name: &str, colors: Option<&[usize]>) -> String {
        const PALETTE: [&str; 8] =
            ["lightblue", "palegreen", "lightpink", "khaki", "plum", "lightsalmon", "lightcyan", "wheat"];
        let mut s = String::new();
        writeln!(s, "digraph {name} {{").unwrap();
        for v in 0..self.num_vertices() {
            let mut attrs = vec![format!("label=\"{v}\"")];
            if self.basepoint() == Some(v) {
                attrs.push("shape=doublecircle".into());
            }
            if let Some(c) = colors {
                attrs.push(format!("style=filled, fillcolor={}", PALETTE[c[v] % PALETTE.len()]));
            }
            writeln!(s, "  {v} [{}];", attrs.join(", ")).unwrap();
        }
        for e in self.edges() {
            writeln!(s, "  {} -> {} [label=\"{}\"];", e.origin, e.terminus, label_text(self.alphabet(), e.label))
                .unwrap();
        }
        s.push_str("}\n");
        s
    }
}

impl BasedCoreGraph {
    pub fn to_json(&self) -> GraphJson {
        self.graph().to_json()
    }
}

impl CoreGraph {
    pub fn to_json(&self) -> GraphJson {
        self.graph().to_json()
    }
}

/// One generator per line; `#` starts a comment; blank lines are skipped.
pub fn parse_subgroup_file(text: &str, alphabet: Alphabet) -> Result<Vec<Word>> {
    let mut gens = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let w = Word::parse(body, alphabet).map_err(|e| Error::AtLine { line: i + 1, source: Box::new(e) })?;
        gens.push(w);
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroup_file() {
        let a = Alphabet::new(2).unwrap();
        let gens = parse_subgroup_file("# H\naa  # square\n\nb\n", a).unwrap();
        assert_eq!(gens, vec![Word::parse("aa", a).unwrap(), Word::parse("b", a).unwrap()]);
        let err = parse_subgroup_file("a\nq\n", a).unwrap_err();
        assert!(matches!(err, Error::AtLine { line: 2, .. }));
    }

    #[test]
    fn json_round_trip() {
        let a = Alphabet::new(2).unwrap();
        let h = BasedCoreGraph::from_generators(a, &[Word::parse("aa", a).unwrap(), Word::parse("b", a).unwrap()])
            .unwrap();
        let json = serde_json::to_string(&h.to_json()).unwrap();
        let back: GraphJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_graph().unwrap().core_based().unwrap(), h);
        assert!(h.graph().to_dot("H", None).contains("doublecircle"));
    }
}
