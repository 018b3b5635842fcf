//! The command layer behind the `scurr` binary. Every command is a pure
//! function of its configuration and input texts and returns the full report.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use crate::currents::{
    format_rational, intersection_functional, neighborhood_tree, pushforward, rational, round_graph_count,
    FiniteSubtree, Rational, RationalCurrent, DEFAULT_ROUND_GRAPH_CAP,
};
use crate::error::{Error, Result};
use crate::fiber::{fiber_product, intersection_number_cosets, intersection_number_euler};
use crate::stallings::{parse_subgroup_file, random_subgroup, seeded, BasedCoreGraph, CoreGraph, GraphJson};
use crate::word::{Alphabet, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Tsv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tsv" => Ok(Format::Tsv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Malformed(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub rank: usize,
    pub seed: u64,
    pub samples: usize,
    pub max_gen_len: usize,
    pub max_gens: usize,
    pub grade: usize,
    pub n_max: usize,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { rank: 2, seed: 42, samples: 100, max_gen_len: 6, max_gens: 3, grade: 1, n_max: 10, format: Format::Tsv }
    }
}

impl RunConfig {
    pub fn alphabet(&self) -> Result<Alphabet> {
        Alphabet::new(self.rank)
    }
}

/// Exit status of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    AssertionFailed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::AssertionFailed => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub report: String,
    pub status: Status,
    /// Human-readable reasons for an assertion failure.
    pub diagnostics: Vec<String>,
}

impl Outcome {
    fn new(report: String, diagnostics: Vec<String>) -> Self {
        let status = if diagnostics.is_empty() { Status::Ok } else { Status::AssertionFailed };
        Outcome { report, status, diagnostics }
    }
}

fn subgroup(text: &str, alphabet: Alphabet) -> Result<BasedCoreGraph> {
    BasedCoreGraph::from_generators(alphabet, &parse_subgroup_file(text, alphabet)?)
}

fn join_words(ws: &[Word]) -> String {
    ws.iter().map(Word::to_string).collect::<Vec<_>>().join(",")
}

fn fields_tsv(fields: &[(String, String)]) -> String {
    let mut out = String::from("field\tvalue\n");
    for (k, v) in fields {
        writeln!(out, "{k}\t{v}").unwrap();
    }
    out
}

fn to_json_text(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report values serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Serialize)]
pub struct CoreReport {
    pub rank: usize,
    pub reduced_rank: usize,
    pub vertices: usize,
    pub edges: usize,
    pub generators: Vec<String>,
    pub graph: GraphJson,
}

/// Based core graph of the subgroup generated by the lines of `text`, and its
/// Graphviz rendering.
pub fn cmd_core(text: &str, config: &RunConfig) -> Result<(Outcome, String)> {
    let h = subgroup(text, config.alphabet()?)?;
    let report = CoreReport {
        rank: h.rank(),
        reduced_rank: h.reduced_rank(),
        vertices: h.num_vertices(),
        edges: h.num_edges(),
        generators: h.generators().iter().map(Word::to_string).collect(),
        graph: h.to_json(),
    };
    let text = match config.format {
        Format::Json => to_json_text(&report),
        Format::Tsv => fields_tsv(&[
            ("rank".into(), report.rank.to_string()),
            ("reduced_rank".into(), report.reduced_rank.to_string()),
            ("vertices".into(), report.vertices.to_string()),
            ("edges".into(), report.edges.to_string()),
            ("generators".into(), report.generators.join(",")),
            ("graph".into(), serde_json::to_string(&report.graph).unwrap()),
        ]),
    };
    Ok((Outcome::new(text, vec![]), h.graph().to_dot("H", None)))
}

/// The three routes to `N(H, K)` for counting currents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Routes {
    pub euler: usize,
    pub cosets: usize,
    pub cylinder: String,
}

impl Routes {
    pub fn compute(h: &BasedCoreGraph, k: &BasedCoreGraph) -> Result<Self> {
        let euler = intersection_number_euler(&h.core(), &k.core());
        let cosets = intersection_number_cosets(h, k)?;
        let n = intersection_functional(&RationalCurrent::counting(h), &RationalCurrent::counting(k))?;
        Ok(Routes { euler, cosets, cylinder: format_rational(&n) })
    }

    pub fn agree(&self) -> bool {
        self.euler == self.cosets && self.cylinder == format!("{}/1", self.euler)
    }
}

pub fn cmd_product(h_text: &str, k_text: &str, config: &RunConfig) -> Result<Outcome> {
    let alphabet = config.alphabet()?;
    let (h, k) = (subgroup(h_text, alphabet)?, subgroup(k_text, alphabet)?);
    let routes = Routes::compute(&h, &k)?;
    let bound = h.reduced_rank() * k.reduced_rank();
    let fp = fiber_product(&h.core(), &k.core());
    let cosets = fp.double_cosets(&h, &k);
    let mut diagnostics = Vec::new();
    if !routes.agree() {
        diagnostics.push(format!("route disagreement: {routes:?}"));
    }
    if routes.euler > bound {
        diagnostics.push(format!("SHNC violated: N = {} > {bound}", routes.euler));
    }
    let margin = bound as i64 - routes.euler as i64;
    let text = match config.format {
        Format::Json => to_json_text(&json!({
            "routes": routes,
            "reduced_rank_h": h.reduced_rank(),
            "reduced_rank_k": k.reduced_rank(),
            "rank_product": bound,
            "shnc_margin": margin,
            "double_cosets": cosets.iter().map(|d| json!({
                "representative": d.representative.to_string(),
                "generators": d.generators.iter().map(Word::to_string).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        Format::Tsv => {
            let mut fields = vec![
                ("euler".to_string(), routes.euler.to_string()),
                ("cosets".into(), routes.cosets.to_string()),
                ("cylinder".into(), routes.cylinder.clone()),
                ("reduced_rank_h".into(), h.reduced_rank().to_string()),
                ("reduced_rank_k".into(), k.reduced_rank().to_string()),
                ("rank_product".into(), bound.to_string()),
                ("shnc_margin".into(), margin.to_string()),
            ];
            for d in &cosets {
                let rep = if d.representative.is_identity() { "1".to_string() } else { d.representative.to_string() };
                fields.push(("double_coset".into(), format!("{rep}:{}", join_words(&d.generators))));
            }
            fields_tsv(&fields)
        }
    };
    Ok(Outcome::new(text, diagnostics))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub h: String,
    pub k: String,
    pub n: usize,
    pub rank_product: usize,
    /// `n / rank_product`, absent when the product is zero.
    pub ratio: Option<String>,
}

/// Random pairs drawn from the seed; fails if any pair breaks route
/// agreement or the strengthened Hanna Neumann bound.
pub fn cmd_shnc_scan(config: &RunConfig) -> Result<Outcome> {
    if config.samples == 0 {
        return Err(Error::Malformed("--samples must be positive".into()));
    }
    let alphabet = config.alphabet()?;
    let mut rng = seeded(config.seed);
    let mut rows = Vec::new();
    let mut diagnostics = Vec::new();
    for i in 0..config.samples {
        let h = random_subgroup(&mut rng, alphabet, config.max_gens, config.max_gen_len)?;
        let k = random_subgroup(&mut rng, alphabet, config.max_gens, config.max_gen_len)?;
        let routes = Routes::compute(&h, &k)?;
        let bound = h.reduced_rank() * k.reduced_rank();
        if !routes.agree() {
            diagnostics.push(format!("sample {i}: route disagreement {routes:?}"));
        }
        if routes.euler > bound {
            diagnostics.push(format!("sample {i}: N = {} exceeds {bound}", routes.euler));
        }
        rows.push(ScanRow {
            h: join_words(&h.generators()),
            k: join_words(&k.generators()),
            n: routes.euler,
            rank_product: bound,
            ratio: (bound > 0).then(|| format_rational(&rational(routes.euler as i64, bound as i64))),
        });
    }
    let text = match config.format {
        Format::Json => to_json_text(&rows),
        Format::Tsv => {
            let mut out = String::from("H\tK\tN\trk_product\tratio\n");
            for r in &rows {
                writeln!(out, "{}\t{}\t{}\t{}\t{}", r.h, r.k, r.n, r.rank_product, r.ratio.as_deref().unwrap_or("-"))
                    .unwrap();
            }
            out
        }
    };
    Ok(Outcome::new(text, diagnostics))
}

/// Cylinder values of `(1/n) eta_<a^n b>` for `n = 1..=n_max` next to the
/// limit `eta_<a>`, with `N` against `eta_<a>` and the `a`-edge mass of the
/// pushforward, which jumps from 0 to 1 in the limit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvergeTable {
    pub trees: Vec<String>,
    pub rows: Vec<ConvergeRow>,
    pub limit: ConvergeRow,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvergeRow {
    pub n: Option<usize>,
    pub values: Vec<String>,
    pub intersection: String,
    pub pushforward_edge_a: String,
}

pub fn converge_table(n_max: usize, grade: usize, alphabet: Alphabet) -> Result<ConvergeTable> {
    if n_max == 0 || grade == 0 {
        return Err(Error::Malformed("--n-max and --grade must be positive".into()));
    }
    let count = round_graph_count(grade, alphabet);
    if count > DEFAULT_ROUND_GRAPH_CAP {
        return Err(Error::SizeLimit { what: "round graphs at the requested grade", count, cap: DEFAULT_ROUND_GRAPH_CAP });
    }
    let a = Letter::new(1, false);
    let b = Letter::new(2, false);
    let limit_graph = BasedCoreGraph::from_generators(alphabet, &[Word::letter(alphabet, a)])?.core();
    let graphs: Vec<CoreGraph> = (1..=n_max)
        .map(|n| {
            let mut w = Word::identity(alphabet);
            (0..n).for_each(|_| w.push(a));
            w.push(b);
            BasedCoreGraph::from_generators(alphabet, &[w]).map(|h| h.core())
        })
        .collect::<Result<_>>()?;

    // Edge trees, then every round graph of grade <= `grade` that occurs in
    // some graph of the family; all other round graphs have value 0 throughout.
    let mut trees: Vec<FiniteSubtree> = alphabet.letters().map(|l| FiniteSubtree::edge(alphabet, l)).collect();
    for r in 1..=grade {
        let mut seen = BTreeSet::new();
        for g in graphs.iter().chain([&limit_graph]) {
            for v in 0..g.num_vertices() {
                seen.insert(neighborhood_tree(g, v, r).into_tree());
            }
        }
        trees.extend(seen);
    }

    let eta_a = RationalCurrent::counting_core(&limit_graph);
    let edge_a = FiniteSubtree::edge(alphabet, a);
    let row = |n: Option<usize>, mu: &RationalCurrent| -> Result<ConvergeRow> {
        Ok(ConvergeRow {
            n,
            values: trees.iter().map(|t| format_rational(&mu.eval_cylinder(t))).collect(),
            intersection: format_rational(&intersection_functional(mu, &eta_a)?),
            pushforward_edge_a: format_rational(&pushforward(mu, &eta_a)?.eval_cylinder(&edge_a)),
        })
    };
    let mut rows = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        let n = i + 1;
        let mu = RationalCurrent::counting_core(g).scale(&rational(1, n as i64));
        rows.push(row(Some(n), &mu)?);
    }
    let limit = row(None, &eta_a)?;
    Ok(ConvergeTable { trees: trees.iter().map(FiniteSubtree::to_string).collect(), rows, limit })
}

impl ConvergeTable {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n");
        for t in &self.trees {
            write!(out, "\t{t}").unwrap();
        }
        out.push_str("\tN\tpushforward_edge_a\n");
        for r in self.rows.iter().chain([&self.limit]) {
            let n = r.n.map_or("limit".to_string(), |n| n.to_string());
            writeln!(out, "{n}\t{}\t{}\t{}", r.values.join("\t"), r.intersection, r.pushforward_edge_a).unwrap();
        }
        out
    }

    /// The facts the table exhibits: `N` vanishes on every row while the
    /// pushforward in the limit does not, and each cylinder column differs
    /// from its limit by exactly `c / n` for a constant `c` once `n` exceeds
    /// the tree's vertex count.
    pub fn check(&self) -> Vec<String> {
        let mut problems = Vec::new();
        let zero = "0/1";
        for r in &self.rows {
            if r.intersection != zero {
                problems.push(format!("N is {} at n = {:?}", r.intersection, r.n));
            }
            if r.pushforward_edge_a != zero {
                problems.push(format!("pushforward nonzero at n = {:?}", r.n));
            }
        }
        if self.limit.intersection != zero {
            problems.push("N(eta_a, eta_a) should vanish".into());
        }
        if self.limit.pushforward_edge_a == zero {
            problems.push("pushforward(eta_a, eta_a) should be nonzero".into());
        }
        for (j, tree) in self.trees.iter().enumerate() {
            let limit: Rational = crate::currents::parse_rational(&self.limit.values[j]).unwrap();
            let mut gaps = BTreeSet::new();
            for r in &self.rows {
                let n = r.n.unwrap();
                if n <= tree.matches(',').count() + 1 {
                    continue;
                }
                let v = crate::currents::parse_rational(&r.values[j]).unwrap();
                let gap = (&limit - v) * rational(n as i64, 1);
                gaps.insert(format_rational(&gap));
            }
            if gaps.len() > 1 {
                problems.push(format!("column {tree} does not approach its limit as c/n: gaps {gaps:?}"));
            }
        }
        problems
    }
}

pub fn cmd_converge(config: &RunConfig) -> Result<Outcome> {
    let table = converge_table(config.n_max, config.grade, config.alphabet()?)?;
    let problems = table.check();
    let text = match config.format {
        Format::Json => to_json_text(&table),
        Format::Tsv => table.to_tsv(),
    };
    Ok(Outcome::new(text, problems))
}

/// `I(eta_H, eta_K)` in normalized form, checking `rk(I) = N`.
pub fn cmd_intersect(h_text: &str, k_text: &str, config: &RunConfig) -> Result<Outcome> {
    let alphabet = config.alphabet()?;
    let (h, k) = (subgroup(h_text, alphabet)?, subgroup(k_text, alphabet)?);
    let (mu, nu) = (RationalCurrent::counting(&h), RationalCurrent::counting(&k));
    let image = pushforward(&mu, &nu)?;
    let rk = image.functional_rk();
    let n = intersection_functional(&mu, &nu)?;
    let euler = Rational::from_integer(intersection_number_euler(&h.core(), &k.core()).into());
    let mut diagnostics = Vec::new();
    if rk != n || n != euler {
        diagnostics.push(format!(
            "rk(I) = {}, N = {}, Euler route = {}",
            format_rational(&rk),
            format_rational(&n),
            format_rational(&euler)
        ));
    }
    let text = match config.format {
        Format::Json => to_json_text(&json!({
            "current": image.to_json(),
            "rk": format_rational(&rk),
            "N": format_rational(&n),
        })),
        Format::Tsv => {
            let mut fields = vec![
                ("terms".to_string(), image.len().to_string()),
                ("rk".into(), format_rational(&rk)),
                ("N".into(), format_rational(&n)),
            ];
            for (c, g) in image.terms() {
                let gens = g.based_at(0).generators();
                fields.push(("term".into(), format!("{}:{}", format_rational(c), join_words(&gens))));
            }
            fields_tsv(&fields)
        }
    };
    Ok(Outcome::new(text, diagnostics))
}
