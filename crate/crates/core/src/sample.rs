//! Seeded random monomial ideals for property checks and grid runs.

use rand::Rng;

use crate::monomial::{Monomial, MonomialIdeal};

/// Shape of the random instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleShape {
    pub max_vars: usize,
    pub max_generators: usize,
    pub max_exponent: u32,
}

impl Default for SampleShape {
    fn default() -> Self {
        SampleShape { max_vars: 4, max_generators: 5, max_exponent: 3 }
    }
}

/// A random ideal in exactly `num_vars` variables; may be zero or the unit ideal.
pub fn random_ideal_in<R: Rng + ?Sized>(rng: &mut R, num_vars: usize, shape: SampleShape) -> MonomialIdeal {
    let count = rng.gen_range(0..=shape.max_generators);
    let gens = (0..count).map(|_| {
        Monomial::new((0..num_vars).map(|_| rng.gen_range(0..=shape.max_exponent)).collect())
    });
    MonomialIdeal::minimalize(gens, num_vars).expect("generated with the ambient length")
}

/// A random proper ideal in `1..=max_vars` variables.
pub fn random_proper_ideal<R: Rng + ?Sized>(rng: &mut R, shape: SampleShape) -> MonomialIdeal {
    loop {
        let n = rng.gen_range(1..=shape.max_vars);
        let ideal = random_ideal_in(rng, n, shape);
        if ideal.is_proper() {
            return ideal;
        }
    }
}
