//! Nielsen automorphisms acting on subgroups and currents; reduced rank
//! and the intersection functional do not change.
//!
//! cargo run --example automorphisms

use subset_currents::automorphisms::{nielsen_generators, random_automorphism, Endomorphism};
use subset_currents::currents::{intersection_functional, RationalCurrent};
use subset_currents::stallings::{random_subgroup, seeded};
use subset_currents::{Alphabet, Result};

fn main() -> Result<()> {
    let a = Alphabet::new(2)?;
    for g in nielsen_generators(a) {
        let images: Vec<String> = g.images().iter().map(|w| w.to_string()).collect();
        println!("Nielsen: a -> {}, b -> {}", images[0], images[1]);
    }

    let not_onto = Endomorphism::parse("aa\nb\n", a)?;
    println!("a -> aa, b -> b is an automorphism: {}", not_onto.is_automorphism());

    let mut rng = seeded(2024);
    let phi = random_automorphism(&mut rng, a, 6);
    println!("random automorphism: {:?}", phi.images().iter().map(|w| w.to_string()).collect::<Vec<_>>());

    let h = random_subgroup(&mut rng, a, 3, 5)?;
    let k = random_subgroup(&mut rng, a, 3, 5)?;
    let (mu, nu) = (RationalCurrent::counting(&h), RationalCurrent::counting(&k));
    let (pmu, pnu) = (phi.act_on_current(&mu)?, phi.act_on_current(&nu)?);
    println!("rk: {} -> {}", mu.functional_rk(), pmu.functional_rk());
    println!("N: {} -> {}", intersection_functional(&mu, &nu)?, intersection_functional(&pmu, &pnu)?);
    Ok(())
}
