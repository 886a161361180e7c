use super::density::DensityMatrix;
use super::matrix::{C64, ComplexMatrix};
use crate::{tol, Error, Result};

/// Normalized pure state over 1 to 4 qubits.
///
/// Qubit 0 is the leftmost tensor factor and the most significant bit of the
/// amplitude index (see the module-level ordering note). The Euclidean norm
/// is validated to 1 within [`tol::VALIDATION`] at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    qubits: usize,
    amps: Vec<C64>,
}

impl PureState {
    pub fn new(qubits: usize, amps: Vec<C64>) -> Result<Self> {
        if !(1..=4).contains(&qubits) {
            return Err(Error::InvalidParameter(format!(
                "qubit count {qubits} outside 1..=4"
            )));
        }
        if amps.len() != 1 << qubits {
            return Err(Error::DimensionMismatch(format!(
                "{} qubits need {} amplitudes, got {}",
                qubits,
                1 << qubits,
                amps.len()
            )));
        }
        if !amps.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > tol::VALIDATION {
            return Err(Error::NotNormalized((norm - 1.0).abs()));
        }
        Ok(Self { qubits, amps })
    }

    /// Normalizes raw amplitudes and returns the state together with their
    /// squared norm (the projection probability when the amplitudes come from
    /// a measurement). Squared norms below [`tol::PROB_FLOOR`] mean the state
    /// is undefined.
    pub fn from_unnormalized(qubits: usize, amps: Vec<C64>) -> Result<(Self, f64)> {
        let weight: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if weight < tol::PROB_FLOOR {
            return Err(Error::Numeric(
                "cannot normalize a (near-)zero amplitude vector".into(),
            ));
        }
        let scale = 1.0 / weight.sqrt();
        let normalized = amps.iter().map(|&z| z * scale).collect();
        Ok((Self::new(qubits, normalized)?, weight))
    }

    /// Computational basis state `|index>`.
    pub fn basis(qubits: usize, index: usize) -> Result<Self> {
        if index >= (1 << qubits) {
            return Err(Error::InvalidParameter(format!(
                "basis index {index} out of range for {qubits} qubits"
            )));
        }
        let mut amps = vec![C64::new(0.0, 0.0); 1 << qubits];
        amps[index] = C64::new(1.0, 0.0);
        Self::new(qubits, amps)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> C64 {
        self.amps[index]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> C64 {
        debug_assert_eq!(self.qubits, other.qubits);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Tensor product `self (x) other`; `other`'s qubits are appended after
    /// (i.e. less significant than) `self`'s.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let qubits = self.qubits + other.qubits;
        if qubits > 4 {
            return Err(Error::InvalidParameter(format!(
                "tensor product would span {qubits} qubits (max 4)"
            )));
        }
        let mut amps = Vec::with_capacity(1 << qubits);
        for &a in &self.amps {
            for &b in &other.amps {
                amps.push(a * b);
            }
        }
        Self::new(qubits, amps)
    }

    fn shift_of(&self, qubit: usize) -> Result<usize> {
        if qubit >= self.qubits {
            return Err(Error::InvalidParameter(format!(
                "qubit {qubit} out of range for {} qubits",
                self.qubits
            )));
        }
        Ok(self.qubits - 1 - qubit)
    }

    /// Applies a single-qubit operator to `qubit`.
    pub fn apply_one_qubit(&self, op: &ComplexMatrix, qubit: usize) -> Result<Self> {
        if op.rows() != 2 || op.cols() != 2 {
            return Err(Error::DimensionMismatch("one-qubit operator must be 2x2".into()));
        }
        let mask = 1usize << self.shift_of(qubit)?;
        let mut amps = vec![C64::new(0.0, 0.0); self.amps.len()];
        for base in 0..self.amps.len() {
            if base & mask != 0 {
                continue;
            }
            let v0 = self.amps[base];
            let v1 = self.amps[base | mask];
            amps[base] = op.at(0, 0) * v0 + op.at(0, 1) * v1;
            amps[base | mask] = op.at(1, 0) * v0 + op.at(1, 1) * v1;
        }
        Self::new(self.qubits, amps)
    }

    /// Applies a two-qubit operator. `first` indexes the operator's leading
    /// tensor factor, so the operator basis is `|first second>`.
    pub fn apply_two_qubit(&self, op: &ComplexMatrix, first: usize, second: usize) -> Result<Self> {
        if op.rows() != 4 || op.cols() != 4 {
            return Err(Error::DimensionMismatch("two-qubit operator must be 4x4".into()));
        }
        if first == second {
            return Err(Error::InvalidParameter("two-qubit operator needs distinct qubits".into()));
        }
        let ma = 1usize << self.shift_of(first)?;
        let mb = 1usize << self.shift_of(second)?;
        let mut amps = vec![C64::new(0.0, 0.0); self.amps.len()];
        for base in 0..self.amps.len() {
            if base & (ma | mb) != 0 {
                continue;
            }
            let idx = [base, base | mb, base | ma, base | ma | mb];
            let v = [
                self.amps[idx[0]],
                self.amps[idx[1]],
                self.amps[idx[2]],
                self.amps[idx[3]],
            ];
            for r in 0..4 {
                let mut acc = C64::new(0.0, 0.0);
                for (cidx, &amp) in v.iter().enumerate() {
                    acc += op.at(r, cidx) * amp;
                }
                amps[idx[r]] = acc;
            }
        }
        Self::new(self.qubits, amps)
    }

    /// Projects qubits `(first, second)` onto the two-qubit bra `<bra|` and
    /// returns the unnormalized amplitudes of the remaining qubits (original
    /// relative order) together with the squared norm, i.e. the outcome
    /// probability.
    pub fn project_two_qubits(
        &self,
        bra: &PureState,
        first: usize,
        second: usize,
    ) -> Result<(Vec<C64>, f64)> {
        if bra.qubit_count() != 2 {
            return Err(Error::DimensionMismatch("projector must be a 2-qubit state".into()));
        }
        if self.qubits < 3 {
            return Err(Error::InvalidParameter(
                "projection needs at least one remaining qubit".into(),
            ));
        }
        if first == second {
            return Err(Error::InvalidParameter("projection needs distinct qubits".into()));
        }
        let sa = self.shift_of(first)?;
        let sb = self.shift_of(second)?;
        let rest: Vec<usize> = (0..self.qubits).filter(|&q| q != first && q != second).collect();
        let rest_shifts: Vec<usize> = rest.iter().map(|&q| self.qubits - 1 - q).collect();
        let out_len = 1 << rest.len();
        let mut out = vec![C64::new(0.0, 0.0); out_len];
        for (idx, &amp) in self.amps.iter().enumerate() {
            let b = 2 * ((idx >> sa) & 1) + ((idx >> sb) & 1);
            let mut rest_idx = 0usize;
            for (pos, &shift) in rest_shifts.iter().enumerate() {
                rest_idx |= ((idx >> shift) & 1) << (rest.len() - 1 - pos);
            }
            out[rest_idx] += bra.amp(b).conj() * amp;
        }
        let weight = out.iter().map(|z| z.norm_sqr()).sum();
        Ok((out, weight))
    }

    /// Reorders qubits: new qubit `k` is old qubit `order[k]`.
    pub fn permute(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.qubits {
            return Err(Error::DimensionMismatch("permutation length mismatch".into()));
        }
        let mut seen = [false; 4];
        for &q in order {
            if q >= self.qubits || seen[q] {
                return Err(Error::InvalidParameter("invalid qubit permutation".into()));
            }
            seen[q] = true;
        }
        let mut amps = vec![C64::new(0.0, 0.0); self.amps.len()];
        for (new_idx, slot) in amps.iter_mut().enumerate() {
            let mut old_idx = 0usize;
            for (new_pos, &old_pos) in order.iter().enumerate() {
                let bit = (new_idx >> (self.qubits - 1 - new_pos)) & 1;
                old_idx |= bit << (self.qubits - 1 - old_pos);
            }
            *slot = self.amps[old_idx];
        }
        Self::new(self.qubits, amps)
    }

    /// `|psi><psi|` as a validated density matrix (up to 3 qubits).
    pub fn density(&self) -> Result<DensityMatrix> {
        let dim = 1 << self.qubits;
        let m = ComplexMatrix::from_fn(dim, dim, |i, j| self.amps[i] * self.amps[j].conj())?;
        DensityMatrix::new(m)
    }

    /// Reduced density matrix over `keep`, tracing out the complement. The
    /// order of `keep` fixes the output tensor order, so `keep = [2, 1]`
    /// returns the kept qubits as `(q2, q1)`.
    pub fn reduced_density(&self, keep: &[usize]) -> Result<DensityMatrix> {
        if keep.is_empty() || keep.len() >= self.qubits {
            return Err(Error::InvalidParameter(
                "reduced_density keeps a nonempty strict subset of qubits".into(),
            ));
        }
        let mut seen = [false; 4];
        for &q in keep {
            if q >= self.qubits || seen[q] {
                return Err(Error::InvalidParameter("invalid keep set".into()));
            }
            seen[q] = true;
        }
        let traced: Vec<usize> = (0..self.qubits).filter(|q| !seen[*q]).collect();
        let keep_shifts: Vec<usize> = keep.iter().map(|&q| self.qubits - 1 - q).collect();
        let traced_shifts: Vec<usize> = traced.iter().map(|&q| self.qubits - 1 - q).collect();
        let kd = 1usize << keep.len();
        let td = 1usize << traced.len();
        let compose = |kept_idx: usize, traced_idx: usize| -> usize {
            let mut idx = 0usize;
            for (pos, &shift) in keep_shifts.iter().enumerate() {
                idx |= ((kept_idx >> (keep.len() - 1 - pos)) & 1) << shift;
            }
            for (pos, &shift) in traced_shifts.iter().enumerate() {
                idx |= ((traced_idx >> (traced.len() - 1 - pos)) & 1) << shift;
            }
            idx
        };
        let mut data = vec![C64::new(0.0, 0.0); kd * kd];
        for a in 0..kd {
            for b in 0..kd {
                let mut acc = C64::new(0.0, 0.0);
                for t in 0..td {
                    acc += self.amps[compose(a, t)] * self.amps[compose(b, t)].conj();
                }
                data[a * kd + b] = acc;
            }
        }
        DensityMatrix::new(ComplexMatrix::new(kd, kd, data)?)
    }
}
