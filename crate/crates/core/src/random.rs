//! Seeded randomness. Every random choice in the crate flows from a `u64`
//! seed plus a stream label, so runs are reproducible.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::Gaussian;

/// Independent generator for `(seed, stream)`.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Real and imaginary parts uniform in [-1, 1].
pub fn complex_uniform(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
}

/// Like [`complex_uniform`] but with modulus at least `min_modulus`.
pub fn complex_away_from_zero(rng: &mut impl Rng, min_modulus: f64) -> Complex64 {
    loop {
        let z = complex_uniform(rng);
        if z.norm() >= min_modulus {
            return z;
        }
    }
}

/// Random unit complex number.
pub fn unit_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Nonzero Gaussian integer with parts in [-bound, bound].
pub fn small_gaussian(rng: &mut impl Rng, bound: i64) -> Gaussian {
    loop {
        let re = rng.gen_range(-bound..=bound);
        let im = rng.gen_range(-bound..=bound);
        if re != 0 || im != 0 {
            return Gaussian::from_ints(re, im);
        }
    }
}

pub(crate) mod streams {
    pub const DATA: u64 = 1;
    pub const WEIGHTS: u64 = 2;
    pub const COMBINATION: u64 = 3;
    pub const SLICE: u64 = 4;
    pub const START: u64 = 5;
    pub const GAMMA: u64 = 6;
    pub const RANDOMIZE: u64 = 7;
    pub const ORACLE: u64 = 8;
    pub const CHART: u64 = 9;
    pub const KERNEL: u64 = 10;
}
