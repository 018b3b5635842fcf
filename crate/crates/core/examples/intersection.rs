//! The intersection functional on rational currents and its current-valued
//! refinement, checked against each other and against the round-graph
//! count of tree components.
//!
//! cargo run --example intersection

use subset_currents::currents::{
    c_hat, contractible_shapes, e_hat, intersection_functional, pushforward, rational, v_hat, RationalCurrent,
    RoundGraphRoute, DEFAULT_ROUND_GRAPH_CAP,
};
use subset_currents::stallings::BasedCoreGraph;
use subset_currents::{Alphabet, Result, Word};

fn eta(a: Alphabet, gens: &[&str]) -> Result<RationalCurrent> {
    let words = gens.iter().map(|w| Word::parse(w, a)).collect::<Result<Vec<_>>>()?;
    Ok(RationalCurrent::counting(&BasedCoreGraph::from_generators(a, &words)?))
}

fn main() -> Result<()> {
    let a = Alphabet::new(2)?;
    let mu = eta(a, &["aa", "b"])?.scale(&rational(1, 2)).add(&eta(a, &["ab", "bbA"])?)?;
    let nu = eta(a, &["a", "bb"])?.scale(&rational(3, 1));

    let n = intersection_functional(&mu, &nu)?;
    println!("E^ = {}, V^ = {}, c^ = {}, N = {n}", e_hat(&mu, &nu), v_hat(&mu, &nu), c_hat(&mu, &nu));

    let image = pushforward(&mu, &nu)?;
    println!("pushforward has {} terms, rk = {}", image.len(), image.functional_rk());
    for (c, g) in image.terms() {
        println!("  {c} * eta of a core graph with {} vertices", g.num_vertices());
    }
    println!("rk bound: N = {n} <= {}", mu.functional_rk() * nu.functional_rk());

    // Tree components of one product, counted three ways per shape.
    let h = BasedCoreGraph::from_generators(a, &[Word::parse("aa", a)?, Word::parse("b", a)?])?.core();
    let k = BasedCoreGraph::from_generators(a, &[Word::parse("ab", a)?])?.core();
    let shapes = contractible_shapes(&h, &k);
    let route = RoundGraphRoute::new(1, a, DEFAULT_ROUND_GRAPH_CAP)?;
    for (t, n) in shapes.iter().filter(|(t, _)| t.radius() <= 1) {
        let agreed = route.counts(&h, &k, std::slice::from_ref(t))?[0];
        println!("shape {t}: {n} components, round-graph count {agreed}");
    }
    Ok(())
}
