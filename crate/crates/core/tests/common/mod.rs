//! Test-only instruments that never touch the library's moment or eigen code paths.

#![allow(dead_code)]

pub mod quadrature;

use bmfactor::Polynomial;
use rand::Rng;

pub fn random_poly(rng: &mut impl Rng, degree: usize) -> Polynomial {
    Polynomial::new((0..=degree).map(|_| rng.gen_range(-1.0..1.0)).collect())
}
