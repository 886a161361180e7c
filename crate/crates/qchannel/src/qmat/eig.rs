use nalgebra::DMatrix;

use super::density::DensityMatrix;
use super::matrix::{C64, ComplexMatrix};
use crate::{tol, Error, Result};

fn to_na(m: &ComplexMatrix) -> DMatrix<C64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m.at(i, j))
}

/// Hermitian eigendecomposition: eigenvalues in descending order together
/// with the matching orthonormal eigenvector columns, so that
/// `h = V diag(vals) V'`.
///
/// Input hermiticity is checked to 1e-10; the decomposition itself is
/// delegated to nalgebra's symmetric eigensolver, which is deterministic for
/// identical input bits.
pub fn herm_eig(h: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch("eigendecomposition needs a square matrix".into()));
    }
    let defect = h.hermiticity_defect();
    if defect > 1e-10 {
        return Err(Error::NotHermitian(defect));
    }
    let eig = nalgebra::SymmetricEigen::try_new(to_na(&h.hermitized()), f64::EPSILON, 10_000)
        .ok_or(Error::EigenNonConvergence)?;
    let n = h.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .expect("finite eigenvalues")
    });
    let vals: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = ComplexMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])])?;
    Ok((vals, vecs))
}

/// Eigenvalues of a density matrix this far below the working precision are
/// structural zeros (the states here have rank at most 2 by construction);
/// zeroing them keeps their square roots from polluting the matrix root.
const RANK_CUTOFF: f64 = 1e-14;

/// Square root of a Hermitian positive semidefinite matrix via its
/// eigendecomposition. Eigenvalues in `[-PSD_CLAMP, RANK_CUTOFF)` are clamped
/// to zero; anything more negative is a hard error rather than rounding.
pub fn sqrt_psd(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (vals, vecs) = herm_eig(h)?;
    let mut roots = Vec::with_capacity(vals.len());
    for &v in &vals {
        if v < -tol::PSD_CLAMP {
            return Err(Error::Numeric(format!(
                "matrix is not positive semidefinite: eigenvalue {v:.3e}"
            )));
        }
        roots.push(if v < RANK_CUTOFF { 0.0 } else { v.sqrt() });
    }
    let n = h.rows();
    let scaled = ComplexMatrix::from_fn(n, n, |i, j| vecs.at(i, j) * roots[j])?;
    scaled.mul(&vecs.adjoint())
}

/// The four Wootters lambdas of a two-qubit density matrix: square roots of
/// the eigenvalues of `rho * rho_tilde` in descending order, where
/// `rho_tilde = (sy (x) sy) conj(rho) (sy (x) sy)` is the spin-flipped state.
///
/// The non-Hermitian product is never diagonalized directly. Its spectrum
/// equals that of the Hermitian PSD matrix `W = sqrt(rho) rho_tilde sqrt(rho)`,
/// and `W = G G'` for `G = sqrt(rho) (sy (x) sy) conj(sqrt(rho))`, so the
/// lambdas are the singular values of `G`. Reading them off an SVD keeps full
/// absolute precision; taking square roots of near-zero eigenvalues of `W`
/// would lose half the significant digits exactly where the concurrence
/// arithmetic needs them.
pub fn wootters_lambdas(rho: &DensityMatrix) -> Result<[f64; 4]> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "Wootters lambdas need a two-qubit state, got dim {}",
            rho.dim()
        )));
    }
    let yy = ComplexMatrix::pauli_y().kron(&ComplexMatrix::pauli_y())?;
    let root = sqrt_psd(&rho.matrix().hermitized())?;
    // conj(sqrt(rho)) = sqrt(conj(rho))
    let g = root.mul(&yy)?.mul(&root.conj())?;
    let svd = to_na(&g)
        .try_svd(false, false, f64::EPSILON, 10_000)
        .ok_or(Error::EigenNonConvergence)?;
    let mut lambdas = [0.0f64; 4];
    for (slot, &s) in lambdas.iter_mut().zip(svd.singular_values.iter()) {
        *slot = s;
    }
    lambdas.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    Ok(lambdas)
}
