//! Compressed-sparse-row complex matrices tied to a [`HilbertSpace`].

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{expm, HilbertSpace, StateVector};
use crate::{Error, Result};

/// Square sparse complex matrix over a [`HilbertSpace`].
///
/// Entries are stored CSR with sorted, duplicate-free columns per row.
#[derive(Debug, Clone)]
pub struct SparseOperator {
    space: Arc<HilbertSpace>,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    data: Vec<Complex64>,
    hermitian: bool,
}

impl SparseOperator {
    /// All-zero operator.
    pub fn zero(space: &Arc<HilbertSpace>) -> Self {
        Self {
            space: Arc::clone(space),
            indptr: vec![0; space.dim() + 1],
            indices: Vec::new(),
            data: Vec::new(),
            hermitian: false,
        }
    }

    /// Identity operator.
    pub fn identity(space: &Arc<HilbertSpace>) -> Self {
        let dim = space.dim();
        Self {
            space: Arc::clone(space),
            indptr: (0..=dim).collect(),
            indices: (0..dim).collect(),
            data: vec![Complex64::ONE; dim],
            hermitian: true,
        }
    }

    /// Build from `(row, col, value)` triplets; duplicates are summed,
    /// exact zeros dropped.
    pub fn from_triplets(
        space: &Arc<HilbertSpace>,
        mut triplets: Vec<(usize, usize, Complex64)>,
    ) -> Self {
        let dim = space.dim();
        debug_assert!(triplets.iter().all(|&(r, c, _)| r < dim && c < dim));
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut indptr = vec![0usize; dim + 1];
        let mut indices = Vec::with_capacity(triplets.len());
        let mut data: Vec<Complex64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in triplets {
            if last == Some((r, c)) {
                *data.last_mut().unwrap() += v;
            } else {
                indices.push(c);
                data.push(v);
                indptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for r in 0..dim {
            indptr[r + 1] += indptr[r];
        }
        let mut op = Self {
            space: Arc::clone(space),
            indptr,
            indices,
            data,
            hermitian: false,
        };
        op.prune_zeros();
        op
    }

    fn prune_zeros(&mut self) {
        if self.data.iter().all(|v| v.norm_sqr() != 0.0) {
            return;
        }
        let dim = self.space.dim();
        let mut indptr = vec![0usize; dim + 1];
        let mut indices = Vec::with_capacity(self.indices.len());
        let mut data = Vec::with_capacity(self.data.len());
        for r in 0..dim {
            for k in self.indptr[r]..self.indptr[r + 1] {
                if self.data[k].norm_sqr() != 0.0 {
                    indices.push(self.indices[k]);
                    data.push(self.data[k]);
                    indptr[r + 1] += 1;
                }
            }
        }
        for r in 0..dim {
            indptr[r + 1] += indptr[r];
        }
        self.indptr = indptr;
        self.indices = indices;
        self.data = data;
    }

    pub fn space(&self) -> &Arc<HilbertSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn nnz(&self) -> usize {
        self.data.len()
    }

    /// Iterate stored `(row, col, value)` entries.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.dim()).flat_map(move |r| {
            (self.indptr[r]..self.indptr[r + 1]).map(move |k| (r, self.indices[k], self.data[k]))
        })
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// ∞-norm (max row sum of magnitudes); cheap growth bound for Krylov
    /// substepping.
    pub fn norm_inf(&self) -> f64 {
        (0..self.dim())
            .map(|r| {
                self.data[self.indptr[r]..self.indptr[r + 1]]
                    .iter()
                    .map(|v| v.norm())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= c;
        }
        out.hermitian = false;
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.space.check_same(&other.space)?;
        let dim = self.dim();
        let mut indptr = vec![0usize; dim + 1];
        let mut indices = Vec::with_capacity(self.nnz() + other.nnz());
        let mut data = Vec::with_capacity(self.nnz() + other.nnz());
        for r in 0..dim {
            let (mut i, end_i) = (self.indptr[r], self.indptr[r + 1]);
            let (mut j, end_j) = (other.indptr[r], other.indptr[r + 1]);
            while i < end_i || j < end_j {
                let ci = if i < end_i { self.indices[i] } else { usize::MAX };
                let cj = if j < end_j { other.indices[j] } else { usize::MAX };
                if ci < cj {
                    indices.push(ci);
                    data.push(self.data[i]);
                    i += 1;
                } else if cj < ci {
                    indices.push(cj);
                    data.push(other.data[j]);
                    j += 1;
                } else {
                    indices.push(ci);
                    data.push(self.data[i] + other.data[j]);
                    i += 1;
                    j += 1;
                }
                indptr[r + 1] += 1;
            }
        }
        for r in 0..dim {
            indptr[r + 1] += indptr[r];
        }
        let mut out = Self {
            space: Arc::clone(&self.space),
            indptr,
            indices,
            data,
            hermitian: false,
        };
        out.prune_zeros();
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-Complex64::ONE))
    }

    /// Sparse matrix product `self · other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.space.check_same(&other.space)?;
        let dim = self.dim();
        let mut indptr = vec![0usize; dim + 1];
        let mut indices = Vec::new();
        let mut data = Vec::new();
        // Dense accumulator reused across rows.
        let mut acc = vec![Complex64::ZERO; dim];
        let mut touched: Vec<usize> = Vec::new();
        for r in 0..dim {
            for k in self.indptr[r]..self.indptr[r + 1] {
                let mid = self.indices[k];
                let v = self.data[k];
                for l in other.indptr[mid]..other.indptr[mid + 1] {
                    let c = other.indices[l];
                    if acc[c] == Complex64::ZERO {
                        touched.push(c);
                    }
                    acc[c] += v * other.data[l];
                }
            }
            touched.sort_unstable();
            for &c in &touched {
                if acc[c].norm_sqr() != 0.0 {
                    indices.push(c);
                    data.push(acc[c]);
                    indptr[r + 1] += 1;
                }
                acc[c] = Complex64::ZERO;
            }
            touched.clear();
        }
        for r in 0..dim {
            indptr[r + 1] += indptr[r];
        }
        Ok(Self {
            space: Arc::clone(&self.space),
            indptr,
            indices,
            data,
            hermitian: false,
        })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let dim = self.dim();
        let mut indptr = vec![0usize; dim + 1];
        for &c in &self.indices {
            indptr[c + 1] += 1;
        }
        for r in 0..dim {
            indptr[r + 1] += indptr[r];
        }
        let mut cursor = indptr.clone();
        let mut indices = vec![0usize; self.nnz()];
        let mut data = vec![Complex64::ZERO; self.nnz()];
        for r in 0..dim {
            for k in self.indptr[r]..self.indptr[r + 1] {
                let c = self.indices[k];
                let slot = cursor[c];
                indices[slot] = r;
                data[slot] = self.data[k].conj();
                cursor[c] += 1;
            }
        }
        Self {
            space: Arc::clone(&self.space),
            indptr,
            indices,
            data,
            hermitian: self.hermitian,
        }
    }

    /// ‖self − self†‖_max.
    pub fn hermiticity_defect(&self) -> f64 {
        self.sub(&self.adjoint())
            .expect("same space")
            .max_abs()
    }

    /// Verify Hermiticity to 1e−12 and set the flag.
    pub fn mark_hermitian(mut self) -> Result<Self> {
        let defect = self.hermiticity_defect();
        if defect >= 1e-12 {
            return Err(Error::Numerical(format!(
                "operator marked Hermitian but ‖O − O†‖_max = {defect:.3e}"
            )));
        }
        self.hermitian = true;
        Ok(self)
    }

    pub fn is_marked_hermitian(&self) -> bool {
        self.hermitian
    }

    /// Matrix–vector product.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        self.space.check_same(state.space())?;
        let out = self.apply_slice(state.amplitudes());
        StateVector::from_amplitudes(&self.space, out)
    }

    pub(crate) fn apply_slice(&self, x: &[Complex64]) -> Vec<Complex64> {
        let dim = self.dim();
        let mut y = vec![Complex64::ZERO; dim];
        for r in 0..dim {
            let mut acc = Complex64::ZERO;
            for k in self.indptr[r]..self.indptr[r + 1] {
                acc += self.data[k] * x[self.indices[k]];
            }
            y[r] = acc;
        }
        y
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = self.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for (r, c, v) in self.iter() {
            m[(r, c)] = v;
        }
        m
    }

    pub fn from_dense(space: &Arc<HilbertSpace>, m: &DMatrix<Complex64>) -> Self {
        let mut trip = Vec::new();
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                if m[(r, c)].norm_sqr() != 0.0 {
                    trip.push((r, c, m[(r, c)]));
                }
            }
        }
        Self::from_triplets(space, trip)
    }

    /// Dense matrix exponential `exp(scale · self)` by Padé scaling-and-squaring.
    ///
    /// Refuses dimensions above `threshold` — use [`expm_apply`](Self::expm_apply)
    /// there instead.
    pub fn expm_with_threshold(&self, scale: Complex64, threshold: usize) -> Result<Self> {
        if !self.is_finite() || !(scale.re.is_finite() && scale.im.is_finite()) {
            return Err(Error::NonFinite("operator exponential"));
        }
        if self.dim() > threshold {
            return Err(Error::DenseDimExceeded {
                dim: self.dim(),
                threshold,
            });
        }
        let dense = self.to_dense() * scale;
        let e = expm::dense_expm(&dense);
        Ok(Self::from_dense(&self.space, &e))
    }

    /// [`expm_with_threshold`](Self::expm_with_threshold) at the default
    /// dense-dimension cap of 4096.
    pub fn expm(&self, scale: Complex64) -> Result<Self> {
        self.expm_with_threshold(scale, 4096)
    }

    /// Krylov action `exp(scale · self) |state⟩` without forming the
    /// exponential. Accurate to ~1e−12 relative; preserves norm to the same
    /// level for anti-Hermitian `scale · self`.
    pub fn expm_apply(&self, scale: Complex64, state: &StateVector) -> Result<StateVector> {
        self.space.check_same(state.space())?;
        if !self.is_finite() {
            return Err(Error::NonFinite("operator exponential"));
        }
        let out = expm::krylov_expm_apply(self, scale, state.amplitudes())?;
        StateVector::from_amplitudes(&self.space, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{pauli_op, PauliAxis};

    #[test]
    fn triplets_merge_duplicates_and_drop_zeros() {
        let s = HilbertSpace::qubits_only(1);
        let op = SparseOperator::from_triplets(
            &s,
            vec![
                (0, 1, Complex64::new(1.0, 0.0)),
                (0, 1, Complex64::new(2.0, 0.0)),
                (1, 0, Complex64::new(3.0, 0.0)),
                (1, 0, Complex64::new(-3.0, 0.0)),
            ],
        );
        assert_eq!(op.nnz(), 1);
        assert_eq!(op.to_dense()[(0, 1)], Complex64::new(3.0, 0.0));
    }

    #[test]
    fn matmul_matches_dense() {
        let s = HilbertSpace::new(1, vec![2]);
        let x = pauli_op(&s, 0, PauliAxis::X).unwrap();
        let a = crate::hilbert::boson_op(&s, 0, crate::hilbert::BosonOp::Annihilate).unwrap();
        let prod = x.matmul(&a).unwrap().to_dense();
        let dense = x.to_dense() * a.to_dense();
        assert!((prod - dense).iter().map(|v| v.norm()).fold(0.0, f64::max) < 1e-14);
    }

    #[test]
    fn space_mismatch_is_rejected() {
        let s1 = HilbertSpace::qubits_only(1);
        let s2 = HilbertSpace::qubits_only(2);
        let a = SparseOperator::identity(&s1);
        let b = SparseOperator::identity(&s2);
        assert!(a.add(&b).is_err());
        let v = StateVector::basis_state(&s2, 0);
        assert!(a.apply(&v).is_err());
    }

    #[test]
    fn mark_hermitian_verifies() {
        let s = HilbertSpace::qubits_only(1);
        let x = pauli_op(&s, 0, PauliAxis::X).unwrap();
        assert!(x.clone().mark_hermitian().is_ok());
        let m = pauli_op(&s, 0, PauliAxis::Minus).unwrap();
        assert!(m.mark_hermitian().is_err());
    }
}
