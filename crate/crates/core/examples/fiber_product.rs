//! Intersections of subgroups through the fiber product of core graphs:
//! components, double cosets and the three routes to N(H, K).
//!
//! cargo run --example fiber_product

use subset_currents::currents::{intersection_functional, RationalCurrent};
use subset_currents::fiber::{fiber_product, intersection_number_cosets, intersection_number_euler};
use subset_currents::stallings::BasedCoreGraph;
use subset_currents::{Alphabet, Result, Word};

fn subgroup(a: Alphabet, gens: &[&str]) -> Result<BasedCoreGraph> {
    let words = gens.iter().map(|w| Word::parse(w, a)).collect::<Result<Vec<_>>>()?;
    BasedCoreGraph::from_generators(a, &words)
}

fn main() -> Result<()> {
    let a = Alphabet::new(2)?;
    let h = subgroup(a, &["aa", "b", "aba"])?;
    let k = subgroup(a, &["a", "bb", "bab"])?;

    let fp = fiber_product(&h.core(), &k.core());
    println!("product: {} vertices, {} edges, {} components", fp.num_vertices(), fp.num_edges(), fp.num_components());
    for (i, c) in fp.classify_components().components.iter().enumerate() {
        println!("  component {i}: V = {}, E = {}, chi = {}, tree = {}", c.vertices, c.edges, c.euler_characteristic, c.contractible);
    }

    for dc in fp.double_cosets(&h, &k) {
        let gens: Vec<String> = dc.generators.iter().map(Word::to_string).collect();
        let g = if dc.representative.is_identity() { "1".to_string() } else { dc.representative.to_string() };
        println!("H g K with g = {g}: H ∩ gKg^-1 = <{}>", gens.join(", "));
    }

    let euler = intersection_number_euler(&h.core(), &k.core());
    let cosets = intersection_number_cosets(&h, &k)?;
    let currents = intersection_functional(&RationalCurrent::counting(&h), &RationalCurrent::counting(&k))?;
    println!("N(H, K): Euler {euler}, double cosets {cosets}, cylinders {currents}");
    println!("bound rk(H) rk(K) = {}", h.reduced_rank() * k.reduced_rank());
    Ok(())
}
