//! Fold generators into a based core graph, read off ranks, compare
//! subgroups, and find commensurators.
//!
//! cargo run --example core_graph

use subset_currents::stallings::{random_finite_index_cover, seeded, BasedCoreGraph};
use subset_currents::{Alphabet, Result, Word};

fn subgroup(a: Alphabet, gens: &[&str]) -> Result<BasedCoreGraph> {
    let words = gens.iter().map(|w| Word::parse(w, a)).collect::<Result<Vec<_>>>()?;
    BasedCoreGraph::from_generators(a, &words)
}

fn main() -> Result<()> {
    let a = Alphabet::new(2)?;

    let h = subgroup(a, &["aa", "b", "aba"])?;
    println!("H = <aa, b, aba>: {} vertices, {} edges, rank {}, reduced rank {}",
        h.num_vertices(), h.num_edges(), h.rank(), h.reduced_rank());
    println!("free basis read off a spanning tree: {:?}", h.generators().iter().map(Word::to_string).collect::<Vec<_>>());
    println!("{}", h.graph().to_dot("H", None));

    for w in ["ab", "aab", "baab"] {
        let w = Word::parse(w, a)?;
        println!("{w} in H: {}", h.contains(&w));
    }

    // The same subgroup from a different generating set gives the same value.
    let same = subgroup(a, &["b", "aa", "abA"])?;
    println!("<b, aa, abA> == <aa, b, aba>: {}", same == h);

    // Conjugates share an unbased core and so a canonical key.
    let conj = h.conjugated_by(&Word::parse("ba", a)?)?;
    println!("canonical keys agree for a conjugate: {}",
        conj.core().canonical_key()? == h.core().canonical_key()?);

    let (comm, index) = subgroup(a, &["abab"])?.commensurator()?;
    println!("Comm(<abab>) = <{}>, index {index}", comm.generators()[0]);

    let cover = random_finite_index_cover(&h.core(), 3, &mut seeded(7))?;
    println!("random 3-fold cover of H has index {:?} in it",
        cover.finite_index_in(&h.core().based_at(0))?);
    Ok(())
}
