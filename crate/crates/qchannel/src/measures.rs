//! Entanglement quantities for two-qubit states plus the pure three-qubit
//! monogamy bookkeeping: concurrence, singlet fraction, bipartition
//! concurrence and three-tangle.

use crate::qmat::{C64, ComplexMatrix, DensityMatrix, PureState, wootters_lambdas};
use crate::{tol, Error, Result};

/// Wootters concurrence of a two-qubit density matrix:
/// `max(0, l1 - l2 - l3 - l4)` over the descending lambda spectrum.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    let l = wootters_lambdas(rho)?;
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// Concurrence of a two-qubit pure state with amplitudes `(a, b, c, d)`:
/// `2|ad - bc|`. Fast path that must agree with [`concurrence`] on the
/// projector.
pub fn concurrence_pure(psi: &PureState) -> Result<f64> {
    if psi.qubit_count() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "pure-state concurrence needs 2 qubits, got {}",
            psi.qubit_count()
        )));
    }
    let a = psi.amp(0);
    let b = psi.amp(1);
    let c = psi.amp(2);
    let d = psi.amp(3);
    Ok(2.0 * (a * d - b * c).norm())
}

/// The magic basis as a 4x4 transform whose columns are the basis states:
/// `(|00>+|11>)/sqrt2`, `i(|00>-|11>)/sqrt2`, `i(|01>+|10>)/sqrt2`,
/// `(|01>-|10>)/sqrt2`. Real unit combinations of these columns enumerate
/// exactly the maximally entangled states up to a global phase.
fn magic_basis() -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::new(
        4,
        4,
        vec![
            C64::new(s, 0.0),
            C64::new(0.0, s),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, s),
            C64::new(s, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, s),
            C64::new(-s, 0.0),
            C64::new(s, 0.0),
            C64::new(0.0, -s),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        ],
    )
    .expect("static 4x4")
}

/// Singlet fraction (fully entangled fraction) of a two-qubit state: the
/// maximum overlap `<e|rho|e>` over all maximally entangled `|e>`, returned
/// together with a maximizer.
///
/// In the magic basis the overlap becomes a Rayleigh quotient of the real
/// part of the transformed matrix over real unit vectors, so the maximum is
/// its top eigenvalue and the maximizer maps back through the basis. Ties in
/// the top eigenvalue resolve deterministically through the fixed descending
/// eigen-ordering.
pub fn singlet_fraction(rho: &DensityMatrix) -> Result<(f64, PureState)> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "singlet fraction needs a two-qubit state, got dim {}",
            rho.dim()
        )));
    }
    let t = magic_basis();
    let m = t.adjoint().mul(rho.matrix())?.mul(&t)?;
    let real_part = ComplexMatrix::from_fn(4, 4, |i, j| C64::new(m.at(i, j).re, 0.0))?;
    let (vals, vecs) = crate::qmat::herm_eig(&real_part.hermitized())?;
    let fraction = vals[0];

    // Top eigenvector of a real symmetric matrix, possibly carrying a stray
    // complex phase from the solver: rotate its largest component onto the
    // real axis, then keep the real part.
    let mut column: Vec<C64> = (0..4).map(|i| vecs.at(i, 0)).collect();
    let dominant = column
        .iter()
        .cloned()
        .max_by(|a, b| a.norm().partial_cmp(&b.norm()).expect("finite"))
        .expect("nonempty");
    let phase = dominant / dominant.norm();
    for z in &mut column {
        *z *= phase.conj();
    }
    let real_vec: Vec<f64> = column.iter().map(|z| z.re).collect();
    let mut amps = vec![C64::new(0.0, 0.0); 4];
    for (j, &r) in real_vec.iter().enumerate() {
        for (i, slot) in amps.iter_mut().enumerate() {
            *slot += t.at(i, j) * r;
        }
    }
    let (e_opt, _) = PureState::from_unnormalized(2, amps)?;
    Ok((fraction, e_opt))
}

/// Concurrence between one qubit of a pure three-qubit state and the
/// remaining pair: `2 sqrt(det rho_solo)`.
pub fn bipartition_concurrence(psi: &PureState, solo: usize) -> Result<f64> {
    if psi.qubit_count() != 3 {
        return Err(Error::DimensionMismatch(format!(
            "bipartition concurrence needs 3 qubits, got {}",
            psi.qubit_count()
        )));
    }
    let rho = psi.reduced_density(&[solo])?;
    let m = rho.matrix();
    let det = (m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0)).re;
    Ok(2.0 * det.max(0.0).sqrt())
}

/// Residual three-qubit entanglement from the monogamy relation:
/// `tau = C_B(AE)^2 - C_AB^2 - C_EB^2`, clamped to zero within tolerance.
///
/// A negative value beyond tolerance is a theorem violation for pure
/// three-qubit states and therefore reported as an upstream numeric error.
pub fn three_tangle(c_b_ae: f64, c_ab: f64, c_eb: f64) -> Result<f64> {
    for (name, v) in [("C_B(AE)", c_b_ae), ("C_AB", c_ab), ("C_EB", c_eb)] {
        if !(0.0..=1.0 + tol::DERIVED).contains(&v) {
            return Err(Error::InvalidParameter(format!("{name} = {v} outside [0, 1]")));
        }
    }
    let tau = c_b_ae * c_b_ae - c_ab * c_ab - c_eb * c_eb;
    if tau < -tol::DERIVED {
        return Err(Error::TangleViolation(tau));
    }
    Ok(tau.max(0.0))
}

/// Singlet fraction in its symmetric form
/// `(1 + C_AB)/4 * (1 + sqrt(C_AB^2 + tau))`, which treats the two channel
/// ends on an equal footing because the three-tangle does.
pub fn symmetric_singlet_fraction(c_ab: f64, tau: f64) -> Result<f64> {
    let radicand = c_ab * c_ab + tau;
    if radicand < -tol::DERIVED {
        return Err(Error::InvalidParameter(format!(
            "negative radicand {radicand:.3e}"
        )));
    }
    if radicand > 1.0 + tol::DERIVED {
        return Err(Error::InvalidParameter(format!(
            "C_AB^2 + tau = {radicand} exceeds 1"
        )));
    }
    Ok((1.0 + c_ab) / 4.0 * (1.0 + radicand.max(0.0).sqrt()))
}

/// Every entanglement quantity of one three-qubit channel state `(A, B, E)`.
///
/// `c_ab`/`c_eb`/`c_ae` are the pairwise concurrences of the reduced states,
/// `c_b_ae` the concurrence across the `B | AE` bipartition, `tau_abe` the
/// three-tangle and `f_ab` the singlet fraction of the channel pair. The
/// monogamy identity `c_ab^2 + c_eb^2 + tau = c_b_ae^2` is validated on
/// construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementSummary {
    pub c_ab: f64,
    pub c_eb: f64,
    pub c_ae: f64,
    pub c_b_ae: f64,
    pub tau_abe: f64,
    pub f_ab: f64,
}

impl EntanglementSummary {
    pub fn from_state(psi: &PureState) -> Result<Self> {
        if psi.qubit_count() != 3 {
            return Err(Error::DimensionMismatch(format!(
                "entanglement summary needs a 3-qubit state, got {}",
                psi.qubit_count()
            )));
        }
        let rho_ab = psi.reduced_density(&[0, 1])?;
        let rho_eb = psi.reduced_density(&[2, 1])?;
        let rho_ae = psi.reduced_density(&[0, 2])?;
        let c_ab = concurrence(&rho_ab)?;
        let c_eb = concurrence(&rho_eb)?;
        let c_ae = concurrence(&rho_ae)?;
        let c_b_ae = bipartition_concurrence(psi, 1)?;
        let tau_abe = three_tangle(c_b_ae, c_ab, c_eb)?;
        let (f_ab, _) = singlet_fraction(&rho_ab)?;
        let residual = (c_ab * c_ab + c_eb * c_eb + tau_abe - c_b_ae * c_b_ae).abs();
        if residual > tol::DERIVED {
            return Err(Error::Numeric(format!(
                "monogamy residual {residual:.3e} beyond tolerance"
            )));
        }
        Ok(Self {
            c_ab,
            c_eb,
            c_ae,
            c_b_ae,
            tau_abe,
            f_ab,
        })
    }

    /// `|c_ab^2 + c_eb^2 + tau - c_b_ae^2|`.
    pub fn monogamy_residual(&self) -> f64 {
        (self.c_ab * self.c_ab + self.c_eb * self.c_eb + self.tau_abe
            - self.c_b_ae * self.c_b_ae)
            .abs()
    }
}
