use super::eig::herm_eig;
use super::matrix::{C64, ComplexMatrix};
use super::state::PureState;
use crate::{tol, Error, Result};

/// Hermitian, positive semidefinite, trace-one matrix over 1-3 qubits.
///
/// All three invariants are validated at construction: hermiticity and trace
/// within [`tol::VALIDATION`], smallest eigenvalue no lower than
/// `-`[`tol::PSD_CLAMP`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() || ![2, 4, 8].contains(&matrix.rows()) {
            return Err(Error::NotDensity(format!(
                "dimension {}x{} not in {{2, 4, 8}}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let herm = matrix.hermiticity_defect();
        if herm > tol::VALIDATION {
            return Err(Error::NotDensity(format!("hermiticity defect {herm:.3e}")));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol::VALIDATION || tr.im.abs() > tol::VALIDATION {
            return Err(Error::NotDensity(format!("trace {tr} differs from 1")));
        }
        let (vals, _) = herm_eig(&matrix.hermitized())?;
        if let Some(&min) = vals.last() {
            if min < -tol::PSD_CLAMP {
                return Err(Error::NotDensity(format!("negative eigenvalue {min:.3e}")));
            }
        }
        Ok(Self {
            dim: matrix.rows(),
            matrix,
        })
    }

    pub fn from_pure(state: &PureState) -> Result<Self> {
        state.density()
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        let m = ComplexMatrix::identity(dim)?.scale(C64::new(1.0 / dim as f64, 0.0));
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        herm_eig(&self.matrix.hermitized()).map(|(vals, _)| vals)
    }

    /// `<psi|rho|psi>`, guaranteed real for Hermitian input.
    pub fn overlap(&self, state: &PureState) -> Result<f64> {
        if 1 << state.qubit_count() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "state spans dim {} but density matrix has dim {}",
                1 << state.qubit_count(),
                self.dim
            )));
        }
        let amps = state.amplitudes();
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += amps[i].conj() * self.matrix.at(i, j) * amps[j];
            }
        }
        Ok(acc.re)
    }
}

/// Partial trace over a multipartite density matrix, returning a validated
/// density matrix over the kept subsystems.
///
/// `dims` lists the per-subsystem dimensions (their product must equal the
/// input dimension) and the order of `keep` fixes the output tensor order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize], dims: &[usize]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::InvalidParameter(
            "partial_trace needs a nonempty keep set; use partial_trace_matrix for the scalar trace".into(),
        ));
    }
    let reduced = partial_trace_matrix(rho.matrix(), keep, dims)?;
    DensityMatrix::new(reduced)
}

/// Index-contraction core of the partial trace, usable on any square matrix.
/// An empty `keep` contracts every subsystem and returns the 1x1 scalar trace.
pub fn partial_trace_matrix(
    m: &ComplexMatrix,
    keep: &[usize],
    dims: &[usize],
) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("partial trace needs a square matrix".into()));
    }
    let total: usize = dims.iter().product();
    if total != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "subsystem dims {:?} multiply to {}, matrix has dim {}",
            dims,
            total,
            m.rows()
        )));
    }
    let mut seen = vec![false; dims.len()];
    for &k in keep {
        if k >= dims.len() || seen[k] {
            return Err(Error::InvalidParameter(format!("invalid keep set {keep:?}")));
        }
        seen[k] = true;
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|s| !seen[*s]).collect();

    // Strides of each subsystem in the row-major composite index.
    let mut strides = vec![1usize; dims.len()];
    for s in (0..dims.len().saturating_sub(1)).rev() {
        strides[s] = strides[s + 1] * dims[s + 1];
    }

    let kept_dim: usize = keep.iter().map(|&k| dims[k]).product();
    let traced_dim: usize = traced.iter().map(|&t| dims[t]).product();

    // Decomposes a flat kept/traced index into the composite-index offset.
    let offset = |subsystems: &[usize], mut flat: usize| -> usize {
        let mut off = 0usize;
        for &s in subsystems.iter().rev() {
            off += (flat % dims[s]) * strides[s];
            flat /= dims[s];
        }
        off
    };

    let mut data = vec![C64::new(0.0, 0.0); kept_dim * kept_dim];
    for a in 0..kept_dim {
        let row_base = offset(keep, a);
        for b in 0..kept_dim {
            let col_base = offset(keep, b);
            let mut acc = C64::new(0.0, 0.0);
            for t in 0..traced_dim {
                let toff = offset(&traced, t);
                acc += m.at(row_base + toff, col_base + toff);
            }
            data[a * kept_dim + b] = acc;
        }
    }
    ComplexMatrix::new(kept_dim.max(1), kept_dim.max(1), data)
}
