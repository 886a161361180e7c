//! Shared test support: independent oracles and seeded generators.
//!
//! The oracles deliberately avoid the implementation paths they check. The
//! eigenvalue oracle runs Faddeev-LeVerrier plus Durand-Kerner on the raw
//! non-Hermitian product; the singlet-fraction oracle maximizes the overlap
//! over explicitly sampled maximally entangled states with a hill climb.

#![allow(dead_code)]

use qchannel::qmat::{herm_eig, C64, ComplexMatrix, DensityMatrix, PureState};
use qchannel::sampling::{haar_unitary, SeedSpec};

use rand::RngExt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn phi_plus() -> PureState {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    PureState::new(2, vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]).unwrap()
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Random complex matrix with standard Gaussian entries.
pub fn random_matrix(n: usize, seed: u64, stream: u64) -> ComplexMatrix {
    let mut rng = rng_for(seed, stream);
    ComplexMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re, im)
    })
    .unwrap()
}

/// Random Hermitian matrix `(G + G')/2`.
pub fn random_hermitian(n: usize, seed: u64, stream: u64) -> ComplexMatrix {
    let g = random_matrix(n, seed, stream);
    g.add(&g.adjoint()).unwrap().scale(c(0.5, 0.0))
}

/// Random full-rank density matrix `G G' / tr`.
pub fn random_density(n: usize, seed: u64, stream: u64) -> DensityMatrix {
    let g = random_matrix(n, seed, stream);
    let gg = g.mul(&g.adjoint()).unwrap();
    let tr = gg.trace().re;
    DensityMatrix::new(gg.scale(c(1.0 / tr, 0.0)).hermitized()).unwrap()
}

/// Random normalized pure state over `qubits` qubits.
pub fn random_pure(qubits: usize, seed: u64, stream: u64) -> PureState {
    let mut rng = rng_for(seed, stream);
    let amps: Vec<C64> = (0..1usize << qubits)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            c(re, im)
        })
        .collect();
    PureState::from_unnormalized(qubits, amps).unwrap().0
}

/// Coefficients of the characteristic polynomial
/// `x^n + c[0] x^(n-1) + .. + c[n-1]` by the Faddeev-LeVerrier recursion.
pub fn char_poly(m: &ComplexMatrix) -> Vec<C64> {
    assert!(m.is_square());
    let n = m.rows();
    let id = ComplexMatrix::identity(n).unwrap();
    let mut coeffs = Vec::with_capacity(n);
    let mut mk = m.clone();
    for k in 1..=n {
        let ck = mk.trace() * c(-1.0 / k as f64, 0.0);
        coeffs.push(ck);
        if k < n {
            mk = m.mul(&mk.add(&id.scale(ck)).unwrap()).unwrap();
        }
    }
    coeffs
}

/// All roots of a monic polynomial by Durand-Kerner iteration.
pub fn poly_roots(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len();
    let eval = |x: C64| -> C64 {
        let mut acc = c(1.0, 0.0);
        for &co in coeffs {
            acc = acc * x + co;
        }
        acc
    };
    // Standard non-real, non-unit starting points.
    let base = c(0.4, 0.9);
    let mut roots: Vec<C64> = (0..n)
        .map(|k| base.powu(k as u32 + 1))
        .collect();
    for _ in 0..500 {
        let mut worst = 0.0f64;
        for i in 0..n {
            let mut denom = c(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            let delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            worst = worst.max(delta.norm());
        }
        if worst < 1e-14 {
            break;
        }
    }
    roots
}

/// General eigenvalues via characteristic polynomial plus root finding.
pub fn eigenvalues_oracle(m: &ComplexMatrix) -> Vec<C64> {
    poly_roots(&char_poly(m))
}

/// Brute-force Wootters lambdas: eigenvalues of the non-Hermitian product
/// `rho * rho_tilde`, real parts clamped and square-rooted. Accuracy is
/// limited to about 1e-7 near zero eigenvalues, which is what the tolerance
/// of any comparison against it must reflect.
pub fn wootters_lambdas_oracle(rho: &DensityMatrix) -> [f64; 4] {
    let yy = ComplexMatrix::pauli_y()
        .kron(&ComplexMatrix::pauli_y())
        .unwrap();
    let tilde = yy.mul(&rho.matrix().conj()).unwrap().mul(&yy).unwrap();
    let product = rho.matrix().mul(&tilde).unwrap();
    let mut lambdas: Vec<f64> = eigenvalues_oracle(&product)
        .into_iter()
        .map(|z| z.re.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    [lambdas[0], lambdas[1], lambdas[2], lambdas[3]]
}

pub fn concurrence_oracle(rho: &DensityMatrix) -> f64 {
    let l = wootters_lambdas_oracle(rho);
    (l[0] - l[1] - l[2] - l[3]).max(0.0)
}

/// Maximally entangled state `(I (x) V)|phi+>`.
pub fn max_entangled_from(v: &ComplexMatrix) -> PureState {
    phi_plus().apply_one_qubit(v, 1).unwrap()
}

/// Sampled-maximization oracle for the singlet fraction: coarse random
/// search over maximally entangled states followed by a step-shrinking hill
/// climb on the local unitary. Returns the best overlap found, always a
/// lower bound on the true maximum.
pub fn singlet_fraction_oracle(rho: &DensityMatrix, seed: u64) -> f64 {
    let overlap = |v: &ComplexMatrix| -> f64 {
        rho.overlap(&max_entangled_from(v)).unwrap()
    };
    let mut best_v = ComplexMatrix::identity(2).unwrap();
    let mut best = overlap(&best_v);
    for stream in 0..400 {
        let v = haar_unitary(2, &SeedSpec::new(seed, stream)).unwrap();
        let val = overlap(&v);
        if val > best {
            best = val;
            best_v = v;
        }
    }
    // Hill climb: multiply by exp(i step H) for random small Hermitian H.
    let mut rng = rng_for(seed, u64::MAX);
    let mut step = 0.4f64;
    let mut failures = 0u32;
    while step > 1e-8 {
        let h = {
            let a: f64 = rng.sample(StandardNormal);
            let b_re: f64 = rng.sample(StandardNormal);
            let b_im: f64 = rng.sample(StandardNormal);
            let d: f64 = rng.sample(StandardNormal);
            ComplexMatrix::new(
                2,
                2,
                vec![c(a, 0.0), c(b_re, b_im), c(b_re, -b_im), c(d, 0.0)],
            )
            .unwrap()
        };
        let (vals, vecs) = herm_eig(&h).unwrap();
        let rot = ComplexMatrix::from_fn(2, 2, |i, j| {
            let mut acc = c(0.0, 0.0);
            for (k, &val) in vals.iter().enumerate() {
                acc += vecs.at(i, k) * C64::from_polar(1.0, step * val) * vecs.at(j, k).conj();
            }
            acc
        })
        .unwrap();
        let candidate = best_v.mul(&rot).unwrap();
        let val = overlap(&candidate);
        if val > best {
            best = val;
            best_v = candidate;
            failures = 0;
        } else {
            failures += 1;
            if failures >= 12 {
                step *= 0.6;
                failures = 0;
            }
        }
    }
    best
}
