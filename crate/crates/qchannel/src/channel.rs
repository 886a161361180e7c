//! The interaction model: a two-qubit unitary couples one end of an
//! entangled pair to an environment qubit that starts in `|0>`.
//!
//! The three-qubit state is ordered `(A, B, E)` throughout. The default
//! configuration couples `(A, E)`; [`evolve_env_on_bob`] provides the
//! mirrored configuration coupling `(B, E)`. Tracing out `E` or `A` induces
//! two completely positive maps on the channel pair, whose Kraus operators
//! are read directly off the unitary's `|0>_E` column block.

use crate::qmat::{C64, ComplexMatrix, DensityMatrix, PureState};
use crate::{tol, Error, Result};

/// Two-qubit interaction unitary acting on an `(x, E)` pair, `x` first.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionUnitary {
    matrix: ComplexMatrix,
}

impl InteractionUnitary {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if matrix.rows() != 4 || matrix.cols() != 4 {
            return Err(Error::DimensionMismatch(
                "interaction unitary must be 4x4".into(),
            ));
        }
        let defect = matrix.unitarity_defect();
        if defect > tol::UNITARITY {
            return Err(Error::NotUnitary(defect));
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Which reduced map a Kraus set represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    /// Environment traced out: the channel acting on Alice's qubit.
    Lambda,
    /// Alice traced out: the map carrying Alice's slot into the environment.
    Gamma,
}

/// Kraus operators of one of the two reduced maps, with the completeness
/// relation validated at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    operators: Vec<ComplexMatrix>,
    which_map: MapKind,
}

impl KrausSet {
    pub fn new(operators: Vec<ComplexMatrix>, which_map: MapKind) -> Result<Self> {
        if operators.is_empty() {
            return Err(Error::InvalidParameter("empty Kraus set".into()));
        }
        let mut gram = ComplexMatrix::zeros(2, 2)?;
        for op in &operators {
            if op.rows() != 2 || op.cols() != 2 {
                return Err(Error::DimensionMismatch("Kraus operators must be 2x2".into()));
            }
            gram = gram.add(&op.adjoint().mul(op)?)?;
        }
        let defect = gram.max_abs_diff(&ComplexMatrix::identity(2)?);
        if defect > tol::UNITARITY {
            return Err(Error::CompletenessViolation(defect));
        }
        Ok(Self {
            operators,
            which_map,
        })
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn which_map(&self) -> MapKind {
        self.which_map
    }
}

/// Parameters of the two-rotation interaction family. `p` damps the `|10>`
/// component, `q` the `|00>` component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PQParams {
    p: f64,
    q: f64,
}

impl PQParams {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        for (name, v) in [("p", p), ("q", q)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidParameter(format!("{name} = {v} outside [0, 1]")));
            }
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

fn max_mixed_defect(channel: &PureState) -> Result<f64> {
    let half = ComplexMatrix::identity(2)?.scale(C64::new(0.5, 0.0));
    let mut worst = 0.0f64;
    for q in 0..2 {
        let red = channel.reduced_density(&[q])?;
        worst = worst.max(red.matrix().max_abs_diff(&half));
    }
    Ok(worst)
}

/// Couples the channel state to a fresh `|0>` environment through `u` acting
/// on `(A, E)` and returns the three-qubit pure state over `(A, B, E)`.
///
/// Strict entry point: the initial channel state must be maximally entangled
/// (both reductions `I/2` within [`tol::DERIVED`]). Partially entangled
/// initial states belong to [`evolve_partial`].
pub fn evolve(u: &InteractionUnitary, channel: &PureState) -> Result<PureState> {
    let defect = max_mixed_defect(channel)?;
    if defect > tol::DERIVED {
        return Err(Error::NotMaximallyEntangled(defect));
    }
    evolve_partial(u, channel)
}

/// Same evolution as [`evolve`] but accepts any normalized two-qubit initial
/// state. Used by the partial-entanglement experiment mode.
pub fn evolve_partial(u: &InteractionUnitary, channel: &PureState) -> Result<PureState> {
    if channel.qubit_count() != 2 {
        return Err(Error::DimensionMismatch("channel state must span 2 qubits".into()));
    }
    let total = channel.tensor(&PureState::basis(1, 0)?)?;
    total.apply_two_qubit(u.matrix(), 0, 2)
}

/// Mirrored configuration: the same interaction applied to `(B, E)` instead
/// of `(A, E)`, with `B` as the unitary's leading factor.
pub fn evolve_env_on_bob(u: &InteractionUnitary, channel: &PureState) -> Result<PureState> {
    let defect = max_mixed_defect(channel)?;
    if defect > tol::DERIVED {
        return Err(Error::NotMaximallyEntangled(defect));
    }
    let total = channel.tensor(&PureState::basis(1, 0)?)?;
    total.apply_two_qubit(u.matrix(), 1, 2)
}

/// Reads the Kraus operators of the requested reduced map off the unitary.
///
/// With `U` on `(A, E)` basis `|a e>` and the environment starting in `|0>`:
/// `[M_k]_ij = U[2i+k, 2j]` (trace out `E`) and `[N_k]_ij = U[2k+i, 2j]`
/// (trace out `A`), so the two sets share entries through an index swap.
pub fn kraus_from_unitary(u: &InteractionUnitary, which: MapKind) -> Result<KrausSet> {
    let m = u.matrix();
    let mut ops = Vec::with_capacity(2);
    for k in 0..2 {
        let op = ComplexMatrix::from_fn(2, 2, |i, j| match which {
            MapKind::Lambda => m.at(2 * i + k, 2 * j),
            MapKind::Gamma => m.at(2 * k + i, 2 * j),
        })?;
        ops.push(op);
    }
    KrausSet::new(ops, which)
}

/// Applies a Kraus set to the first qubit of a two-qubit state:
/// `sum_k (K_k (x) I) rho (K_k' (x) I)`.
pub fn apply_kraus(ks: &KrausSet, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch("apply_kraus expects a two-qubit state".into()));
    }
    let id = ComplexMatrix::identity(2)?;
    let mut acc = ComplexMatrix::zeros(4, 4)?;
    for op in ks.operators() {
        let lifted = op.kron(&id)?;
        let term = lifted.mul(rho.matrix())?.mul(&lifted.adjoint())?;
        acc = acc.add(&term)?;
    }
    DensityMatrix::new(acc.hermitized())
}

/// The interaction family
/// `|00> -> sqrt(1-q)|00> + sqrt(q)|11>`, `|10> -> sqrt(1-p)|10> + sqrt(p)|01>`,
/// completed to a unitary by giving each invariant plane the orthogonal
/// rotation row with a real minus sign. The environment starts in `|0>`, so
/// only the two specified columns affect any observable; tests confirm the
/// completion choice is invisible.
pub fn pq_unitary(params: &PQParams) -> Result<InteractionUnitary> {
    let (p, q) = (params.p(), params.q());
    let (sp, cp) = (p.sqrt(), (1.0 - p).sqrt());
    let (sq, cq) = (q.sqrt(), (1.0 - q).sqrt());
    // Basis order |00>, |01>, |10>, |11>; columns are images of basis kets.
    let m = ComplexMatrix::from_real_rows(&[
        &[cq, 0.0, 0.0, -sq],
        &[0.0, cp, sp, 0.0],
        &[0.0, -sp, cp, 0.0],
        &[sq, 0.0, 0.0, cq],
    ])?;
    InteractionUnitary::new(m)
}

/// Closed forms for the `(p, q)` family: `(C_AB, F_AB, C_EB)`.
///
/// The channel state is diagonal in the Bell basis with overlaps
/// `(2 - p - q)/4 +- sqrt((1-p)(1-q))/2` on `phi+-` and
/// `(p + q)/4 +- sqrt(pq)/2` on `psi+-`, so the singlet fraction is the
/// larger of the two plus-branches; the `phi+` branch dominates exactly when
/// `p + q <= 1`. Both branches factor as
/// `(1 +- (X - Y))(1 + X + Y)/4` with `X = sqrt((1-p)(1-q))`,
/// `Y = sqrt(pq)`, which is how the distributed-entanglement relation holds
/// across the whole square.
pub fn pq_closed_forms(params: &PQParams) -> (f64, f64, f64) {
    let (p, q) = (params.p(), params.q());
    let x = ((1.0 - p) * (1.0 - q)).sqrt();
    let y = (p * q).sqrt();
    let c_ab = (x - y).abs();
    let phi_branch = (2.0 - p - q + 2.0 * x) / 4.0;
    let psi_branch = (p + q + 2.0 * y) / 4.0;
    let f_ab = phi_branch.max(psi_branch);
    let c_eb = (((1.0 - p) * q).sqrt() - (p * (1.0 - q)).sqrt()).abs();
    (c_ab, f_ab, c_eb)
}
