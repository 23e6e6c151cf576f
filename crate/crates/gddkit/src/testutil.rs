//! Shared generators for unit tests.

use crate::matrix::{ComplexMatrix, PositiveScaling};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complex matrix with off-diagonal entries uniform in the unit disk and
/// diagonals scaled up by `diag_scale`, with some zero entries mixed in.
pub fn random_complex_matrix<R: Rng>(rng: &mut R, n: usize, diag_scale: f64) -> ComplexMatrix {
    let mut rows = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            if i != j && rng.gen::<f64>() < 0.25 {
                continue; // keep some structural zeros
            }
            let z = loop {
                let re = rng.gen_range(-1.0..1.0);
                let im = rng.gen_range(-1.0..1.0);
                if re * re + im * im <= 1.0 {
                    break Complex64::new(re, im);
                }
            };
            *slot = if i == j { z * diag_scale } else { z };
        }
    }
    ComplexMatrix::from_rows(&rows).unwrap()
}

/// Log-uniform positive scaling with exponents in [-decades, decades].
pub fn random_scaling<R: Rng>(rng: &mut R, n: usize, decades: f64) -> PositiveScaling {
    let v: Vec<f64> = (0..n)
        .map(|_| 10f64.powf(rng.gen_range(-decades..decades)))
        .collect();
    PositiveScaling::new(v).unwrap()
}
