//! Seeded randomness: Haar-distributed unitaries (circular unitary ensemble)
//! and uniform Bloch vectors.
//!
//! Every draw is a pure function of a [`SeedSpec`]. Experiments assign one
//! stream index per sample, so a parallel sweep reproduces the serial one
//! bit for bit regardless of thread count.

use rand::RngExt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{StandardNormal, UnitSphere};

use crate::qmat::{C64, ComplexMatrix};
use crate::{Error, Result};

/// Deterministic handle on an independent random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub stream_index: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        Self {
            master_seed,
            stream_index,
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_index);
        rng
    }
}

/// Haar-random unitary of dimension 2, 4 or 8.
///
/// Construction: fill a Ginibre matrix with independent standard complex
/// Gaussians, then orthonormalize its columns by modified Gram-Schmidt. MGS
/// normalization makes every diagonal entry of the implicit triangular factor
/// real positive, which is exactly the phase gauge under which the orthogonal
/// factor is Haar-distributed.
pub fn haar_unitary(dim: usize, seed: &SeedSpec) -> Result<ComplexMatrix> {
    if ![2, 4, 8].contains(&dim) {
        return Err(Error::UnsupportedDimension(dim));
    }
    let mut rng = seed.rng();
    // Column-major storage so Gram-Schmidt walks contiguous columns.
    let mut cols: Vec<Vec<C64>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
                })
                .collect()
        })
        .collect();

    for j in 0..dim {
        // Two orthogonalization passes keep the unitarity residual at the
        // rounding level even for unlucky draws.
        for _ in 0..2 {
            for i in 0..j {
                let proj: C64 = cols[i]
                    .iter()
                    .zip(&cols[j])
                    .map(|(q, v)| q.conj() * v)
                    .sum();
                let basis = cols[i].clone();
                for (v, q) in cols[j].iter_mut().zip(basis) {
                    *v -= q * proj;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            // A Ginibre matrix is singular with probability zero.
            return Err(Error::Numeric("degenerate Ginibre sample".into()));
        }
        for z in &mut cols[j] {
            *z /= norm;
        }
    }

    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

/// Uniform point on the unit sphere.
pub fn random_bloch(seed: &SeedSpec) -> [f64; 3] {
    let mut rng = seed.rng();
    rng.sample(UnitSphere)
}
