//! Composite Hilbert spaces and a minimal sparse complex-operator algebra.
//!
//! A [`HilbertSpace`] is `n_qubits` two-level systems tensored with a list of
//! hard-truncated Fock modes. The flat basis layout is fixed: qubits form the
//! most-significant factor (qubit 0 is the most significant bit), boson modes
//! follow in ascending mode order. Serialized states are therefore portable
//! across runs.
//!
//! Qubit basis convention: bit 0 is |↑⟩ (the +1 eigenstate of σz), bit 1 is
//! |↓⟩. Fock truncation is hard: a† annihilates the top level `n_max`.

mod expm;
mod sparse;

pub use expm::dense_expm;
pub use sparse::SparseOperator;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::{Error, Result};

/// Composite space of `n_qubits` qubits ⊗ truncated boson modes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSpace {
    n_qubits: usize,
    /// Per-mode truncation `n_max` (occupations run 0..=n_max).
    boson_levels: Vec<usize>,
    /// Per-mode stride inside the boson factor (last mode has stride 1).
    strides: Vec<usize>,
    boson_dim: usize,
    dim: usize,
}

impl HilbertSpace {
    /// Build a space from a qubit count and per-mode Fock truncations.
    pub fn new(n_qubits: usize, boson_levels: Vec<usize>) -> Arc<Self> {
        let mut strides = vec![1usize; boson_levels.len()];
        for i in (0..boson_levels.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * (boson_levels[i + 1] + 1);
        }
        let boson_dim: usize = boson_levels.iter().map(|n| n + 1).product();
        let dim = (1usize << n_qubits) * boson_dim;
        Arc::new(Self {
            n_qubits,
            boson_levels,
            strides,
            boson_dim,
            dim,
        })
    }

    /// Qubits only (no boson modes).
    pub fn qubits_only(n_qubits: usize) -> Arc<Self> {
        Self::new(n_qubits, Vec::new())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_modes(&self) -> usize {
        self.boson_levels.len()
    }

    /// Truncation level `n_max` of one mode.
    pub fn mode_levels(&self, mode: usize) -> usize {
        self.boson_levels[mode]
    }

    pub fn boson_levels(&self) -> &[usize] {
        &self.boson_levels
    }

    /// Total dimension `2^n_qubits · Π (n_max + 1)`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the boson factor alone.
    pub fn boson_dim(&self) -> usize {
        self.boson_dim
    }

    /// Flat index from qubit bits and per-mode occupations.
    pub fn encode(&self, bits: &[u8], occs: &[usize]) -> usize {
        debug_assert_eq!(bits.len(), self.n_qubits);
        debug_assert_eq!(occs.len(), self.boson_levels.len());
        let mut q = 0usize;
        for (j, &b) in bits.iter().enumerate() {
            q |= (b as usize & 1) << (self.n_qubits - 1 - j);
        }
        let b: usize = occs
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| n * s)
            .sum();
        q * self.boson_dim + b
    }

    /// Inverse of [`encode`](Self::encode).
    pub fn decode(&self, index: usize) -> (Vec<u8>, Vec<usize>) {
        let q = index / self.boson_dim;
        let mut b = index % self.boson_dim;
        let bits = (0..self.n_qubits)
            .map(|j| ((q >> (self.n_qubits - 1 - j)) & 1) as u8)
            .collect();
        let mut occs = Vec::with_capacity(self.boson_levels.len());
        for &s in &self.strides {
            occs.push(b / s);
            b %= s;
        }
        (bits, occs)
    }

    /// Bit of qubit `q` (0 = |↑⟩, 1 = |↓⟩) inside a flat index.
    pub fn qubit_bit(&self, index: usize, q: usize) -> u8 {
        ((index / self.boson_dim) >> (self.n_qubits - 1 - q) & 1) as u8
    }

    /// Flat index with the bit of qubit `q` flipped.
    pub fn flip_qubit(&self, index: usize, q: usize) -> usize {
        let stride = self.boson_dim << (self.n_qubits - 1 - q);
        if self.qubit_bit(index, q) == 0 {
            index + stride
        } else {
            index - stride
        }
    }

    /// Occupation of boson mode `mode` inside a flat index.
    pub fn mode_occ(&self, index: usize, mode: usize) -> usize {
        (index % self.boson_dim) / self.strides[mode] % (self.boson_levels[mode] + 1)
    }

    /// Flat index with the occupation of `mode` shifted by ±1 (caller keeps
    /// the shift in range).
    fn shift_mode(&self, index: usize, mode: usize, delta: isize) -> usize {
        (index as isize + delta * self.strides[mode] as isize) as usize
    }

    fn check_same(&self, other: &HilbertSpace) -> Result<()> {
        if self != other {
            return Err(Error::SpaceMismatch {
                left: self.to_string(),
                right: other.to_string(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for HilbertSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} qubits ⊗ modes{:?} (dim {})",
            self.n_qubits, self.boson_levels, self.dim
        )
    }
}

/// Complex state vector over a [`HilbertSpace`].
#[derive(Debug, Clone)]
pub struct StateVector {
    space: Arc<HilbertSpace>,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The basis state with flat index `index`.
    pub fn basis_state(space: &Arc<HilbertSpace>, index: usize) -> Self {
        let mut amps = vec![Complex64::ZERO; space.dim()];
        amps[index] = Complex64::ONE;
        Self {
            space: Arc::clone(space),
            amps,
        }
    }

    /// Wrap raw amplitudes (length must equal the space dimension).
    pub fn from_amplitudes(space: &Arc<HilbertSpace>, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != space.dim() {
            return Err(Error::SpaceMismatch {
                left: space.to_string(),
                right: format!("amplitude vector of length {}", amps.len()),
            });
        }
        Ok(Self {
            space: Arc::clone(space),
            amps,
        })
    }

    pub fn space(&self) -> &Arc<HilbertSpace> {
        &self.space
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ⟨self|other⟩ with the left argument conjugated.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&mut self, c: Complex64) {
        for a in &mut self.amps {
            *a *= c;
        }
    }

    /// max_i |self_i − other_i|.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.amps.iter().all(|a| a.re.is_finite() && a.im.is_finite())
    }
}

/// Which ladder operator to embed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BosonOp {
    Create,
    Annihilate,
    Number,
}

/// Single-qubit operator selector; `Plus`/`Minus` follow σ± = (σx ± iσy)/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Y,
    Z,
    Plus,
    Minus,
}

/// Truncated ladder operator embedded at one boson slot, identity elsewhere.
///
/// a|n⟩ = √n|n−1⟩ and a†|n⟩ = √(n+1)|n+1⟩ for n+1 ≤ n_max; a†|n_max⟩ = 0.
pub fn boson_op(space: &Arc<HilbertSpace>, mode: usize, kind: BosonOp) -> Result<SparseOperator> {
    if mode >= space.n_modes() {
        return Err(Error::ModeIndexOutOfRange {
            index: mode,
            n_modes: space.n_modes(),
        });
    }
    let n_max = space.mode_levels(mode);
    let mut trip = Vec::with_capacity(space.dim());
    for col in 0..space.dim() {
        let n = space.mode_occ(col, mode);
        match kind {
            BosonOp::Annihilate => {
                if n > 0 {
                    let row = space.shift_mode(col, mode, -1);
                    trip.push((row, col, Complex64::new((n as f64).sqrt(), 0.0)));
                }
            }
            BosonOp::Create => {
                if n < n_max {
                    let row = space.shift_mode(col, mode, 1);
                    trip.push((row, col, Complex64::new(((n + 1) as f64).sqrt(), 0.0)));
                }
            }
            BosonOp::Number => {
                if n > 0 {
                    trip.push((col, col, Complex64::new(n as f64, 0.0)));
                }
            }
        }
    }
    Ok(SparseOperator::from_triplets(space, trip))
}

/// Single-qubit Pauli (or σ±) operator embedded at one qubit slot.
pub fn pauli_op(space: &Arc<HilbertSpace>, qubit: usize, axis: PauliAxis) -> Result<SparseOperator> {
    if qubit >= space.n_qubits() {
        return Err(Error::QubitIndexOutOfRange {
            index: qubit,
            n_qubits: space.n_qubits(),
        });
    }
    let i = Complex64::I;
    let one = Complex64::ONE;
    let mut trip = Vec::with_capacity(space.dim());
    for col in 0..space.dim() {
        let bit = space.qubit_bit(col, qubit);
        match axis {
            PauliAxis::X => trip.push((space.flip_qubit(col, qubit), col, one)),
            // σy = [[0, −i], [i, 0]]: |↑⟩→i|↓⟩, |↓⟩→−i|↑⟩.
            PauliAxis::Y => {
                let amp = if bit == 0 { i } else { -i };
                trip.push((space.flip_qubit(col, qubit), col, amp));
            }
            PauliAxis::Z => {
                let amp = if bit == 0 { one } else { -one };
                trip.push((col, col, amp));
            }
            // σ⁺ = |↑⟩⟨↓|, σ⁻ = |↓⟩⟨↑|.
            PauliAxis::Plus => {
                if bit == 1 {
                    trip.push((space.flip_qubit(col, qubit), col, one));
                }
            }
            PauliAxis::Minus => {
                if bit == 0 {
                    trip.push((space.flip_qubit(col, qubit), col, one));
                }
            }
        }
    }
    Ok(SparseOperator::from_triplets(space, trip))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn dim_is_product_formula() {
        let s = HilbertSpace::new(3, vec![2, 1, 4]);
        assert_eq!(s.dim(), 8 * 3 * 2 * 5);
        assert_eq!(s.boson_dim(), 30);
    }

    #[test]
    fn annihilate_single_quantum() {
        let s = HilbertSpace::new(0, vec![2]);
        let a = boson_op(&s, 0, BosonOp::Annihilate).unwrap();
        let n1 = StateVector::basis_state(&s, s.encode(&[], &[1]));
        let out = a.apply(&n1).unwrap();
        let n0 = s.encode(&[], &[0]);
        assert!((out.amplitudes()[n0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((out.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn create_carries_sqrt_factor() {
        let s = HilbertSpace::new(0, vec![2]);
        let ad = boson_op(&s, 0, BosonOp::Create).unwrap();
        let n1 = StateVector::basis_state(&s, s.encode(&[], &[1]));
        let out = ad.apply(&n1).unwrap();
        let n2 = s.encode(&[], &[2]);
        assert!((out.amplitudes()[n2] - c(2f64.sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn hard_truncation_kills_top_level() {
        let s = HilbertSpace::new(0, vec![2]);
        let ad = boson_op(&s, 0, BosonOp::Create).unwrap();
        let top = StateVector::basis_state(&s, s.encode(&[], &[2]));
        let out = ad.apply(&top).unwrap();
        assert!(out.norm() < 1e-15);
    }

    #[test]
    fn ladder_commutator_is_identity_below_truncation() {
        // [a, a†] = 1 restricted to occupations n < n_max.
        let s = HilbertSpace::new(0, vec![3]);
        let a = boson_op(&s, 0, BosonOp::Annihilate).unwrap();
        let ad = boson_op(&s, 0, BosonOp::Create).unwrap();
        let comm = a.matmul(&ad).unwrap().sub(&ad.matmul(&a).unwrap()).unwrap();
        let dense = comm.to_dense();
        for n in 0..3 {
            for m in 0..4 {
                let expect = if n == m { 1.0 } else { 0.0 };
                assert!((dense[(n, m)] - c(expect, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn ladder_adjoint_matches_conjugate_elements() {
        let s = HilbertSpace::new(0, vec![4]);
        let a = boson_op(&s, 0, BosonOp::Annihilate).unwrap();
        let ad = boson_op(&s, 0, BosonOp::Create).unwrap();
        assert!(ad.sub(&a.adjoint()).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn pauli_conventions() {
        let s = HilbertSpace::qubits_only(1);
        let up = StateVector::basis_state(&s, 0);
        let down = StateVector::basis_state(&s, 1);

        let z = pauli_op(&s, 0, PauliAxis::Z).unwrap();
        assert!((z.apply(&up).unwrap().amplitudes()[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((z.apply(&down).unwrap().amplitudes()[1] - c(-1.0, 0.0)).norm() < 1e-15);

        let minus = pauli_op(&s, 0, PauliAxis::Minus).unwrap();
        let lowered = minus.apply(&up).unwrap();
        assert!((lowered.amplitudes()[1] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(minus.apply(&down).unwrap().norm() < 1e-15);

        // σ± = (σx ± iσy)/2 as matrices.
        let x = pauli_op(&s, 0, PauliAxis::X).unwrap();
        let y = pauli_op(&s, 0, PauliAxis::Y).unwrap();
        let plus = pauli_op(&s, 0, PauliAxis::Plus).unwrap();
        let built = x.add(&y.scale(Complex64::I)).unwrap().scale(c(0.5, 0.0));
        assert!(built.sub(&plus).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn pauli_x_z_anticommute() {
        let s = HilbertSpace::qubits_only(1);
        let x = pauli_op(&s, 0, PauliAxis::X).unwrap();
        let z = pauli_op(&s, 0, PauliAxis::Z).unwrap();
        let anti = x.matmul(&z).unwrap().add(&z.matmul(&x).unwrap()).unwrap();
        assert!(anti.max_abs() < 1e-15);
    }

    #[test]
    fn disjoint_slot_operators_commute() {
        let s = HilbertSpace::new(2, vec![2]);
        let x0 = pauli_op(&s, 0, PauliAxis::X).unwrap();
        let y1 = pauli_op(&s, 1, PauliAxis::Y).unwrap();
        let a = boson_op(&s, 0, BosonOp::Annihilate).unwrap();
        for (l, r) in [(&x0, &y1), (&x0, &a), (&y1, &a)] {
            let comm = l.matmul(r).unwrap().sub(&r.matmul(l).unwrap()).unwrap();
            assert!(comm.max_abs() < 1e-15);
        }
    }

    proptest! {
        #[test]
        fn encode_decode_roundtrip(nq in 0usize..4, levels in proptest::collection::vec(0usize..4, 0..3)) {
            let s = HilbertSpace::new(nq, levels);
            for idx in 0..s.dim() {
                let (bits, occs) = s.decode(idx);
                prop_assert_eq!(s.encode(&bits, &occs), idx);
            }
        }

        #[test]
        fn accessors_match_decode(nq in 1usize..4, levels in proptest::collection::vec(0usize..4, 1..3)) {
            let s = HilbertSpace::new(nq, levels);
            for idx in 0..s.dim() {
                let (bits, occs) = s.decode(idx);
                for q in 0..s.n_qubits() {
                    prop_assert_eq!(s.qubit_bit(idx, q), bits[q]);
                }
                for m in 0..s.n_modes() {
                    prop_assert_eq!(s.mode_occ(idx, m), occs[m]);
                }
            }
        }
    }
}
