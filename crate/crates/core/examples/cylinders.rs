//! Counting currents evaluated on subset cylinders: round graphs,
//! occurrence counts and the edge, vertex and reduced-rank functionals.
//!
//! cargo run --example cylinders

use subset_currents::currents::{
    cylinder_report, enumerate_round_graphs, neighborhood_tree, occurrence_count, rational, FiniteSubtree,
    RationalCurrent, DEFAULT_ROUND_GRAPH_CAP,
};
use subset_currents::stallings::BasedCoreGraph;
use subset_currents::{Alphabet, Result, Word};

fn main() -> Result<()> {
    let a = Alphabet::new(2)?;
    let h = BasedCoreGraph::from_generators(a, &[Word::parse("aab", a)?, Word::parse("bAbb", a)?])?;
    let core = h.core();

    for v in 0..core.num_vertices() {
        println!("T_1({v}) = {}", neighborhood_tree(&core, v, 1).tree());
    }

    let r1 = enumerate_round_graphs(1, a, DEFAULT_ROUND_GRAPH_CAP)?;
    let r2 = enumerate_round_graphs(2, a, DEFAULT_ROUND_GRAPH_CAP)?;
    println!("|R_1| = {}, |R_2| = {}", r1.len(), r2.len());
    let hits: usize = r2.iter().map(|t| occurrence_count(t.tree(), &core)).sum();
    println!("occurrences of grade-2 round graphs sum to {hits} = #V");

    let mu = RationalCurrent::counting(&h).scale(&rational(1, 2));
    println!("mu = (1/2) eta_H: E = {}, V = {}, rk = {}", mu.functional_e(), mu.functional_v(), mu.functional_rk());

    let trees: Vec<FiniteSubtree> = ["{1,a}", "{1,b}", "{1,a,A}", "{1,a,ab}", "{1,b,bb,ba}"]
        .iter()
        .map(|t| FiniteSubtree::parse(t, a))
        .collect::<Result<_>>()?;
    print!("{}", cylinder_report(&mu, &trees));
    println!("{}", serde_json::to_string_pretty(&mu.to_json()).unwrap());
    Ok(())
}
