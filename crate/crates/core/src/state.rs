// Copyright 2026 The qudisim Authors
// SPDX-License-Identifier: Apache-2.0

//! Mixed-radix registers and the dense state vector.
//!
//! Wires are ordered big-endian: wire 0 is the most significant digit of the
//! flat amplitude index, so a basis state `|d0 d1 ... dk⟩` lives at
//! `Σ d_i · Π_{j>i} dim_j`.

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest register the simulator will allocate, in amplitudes.
pub const MAX_AMPLITUDES: usize = 1 << 28;

/// Tolerance for unitarity and normalization checks.
pub const UNITARY_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WireRole {
    PositionQubit,
    PositionQutrit,
    Channel,
    /// Intensity trit `i`, weight `3^i`.
    IntensityTrit(u8),
    Ancilla,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wire {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub role: Option<WireRole>,
    /// A qubit whose third level has been opened up (dim is then 3, but the
    /// wire starts and ends every circuit inside `{|0⟩, |1⟩}`).
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub promoted: bool,
}

impl Wire {
    pub fn new(dim: usize) -> Self {
        Wire { dim, role: None, promoted: false }
    }

    pub fn with_role(dim: usize, role: WireRole) -> Self {
        Wire { dim, role: Some(role), promoted: false }
    }

    /// Dimension the wire presents at circuit boundaries.
    pub fn logical_dim(&self) -> usize {
        if self.promoted {
            2
        } else {
            self.dim
        }
    }
}

/// Ordered wire dimensions of a register.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WireSpec {
    wires: Vec<Wire>,
}

impl WireSpec {
    pub fn new(dims: &[usize]) -> Result<Self> {
        Self::from_wires(dims.iter().map(|&d| Wire::new(d)).collect())
    }

    pub fn from_wires(wires: Vec<Wire>) -> Result<Self> {
        let spec = WireSpec { wires };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let mut total: usize = 1;
        for w in &self.wires {
            if w.dim != 2 && w.dim != 3 {
                return Err(Error::UnsupportedDimension(w.dim));
            }
            if w.promoted && w.dim != 3 {
                return Err(Error::InvalidArguments("promoted wire must have dimension 3".into()));
            }
            total = total.checked_mul(w.dim).ok_or(Error::DimensionTooLarge(usize::MAX))?;
        }
        if total > MAX_AMPLITUDES {
            return Err(Error::DimensionTooLarge(total));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.wires.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wires.is_empty()
    }

    pub fn wires(&self) -> &[Wire] {
        &self.wires
    }

    pub fn wire(&self, w: usize) -> &Wire {
        &self.wires[w]
    }

    pub fn dim(&self, w: usize) -> usize {
        self.wires[w].dim
    }

    pub fn dims(&self) -> Vec<usize> {
        self.wires.iter().map(|w| w.dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.wires.iter().map(|w| w.dim).product()
    }

    /// Positional weight of each wire in the flat index.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.wires.len()];
        for i in (0..self.wires.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.wires[i + 1].dim;
        }
        strides
    }

    /// Appends a wire and returns its index.
    pub fn push(&mut self, wire: Wire) -> Result<usize> {
        self.wires.push(wire);
        if let Err(e) = self.validate() {
            self.wires.pop();
            return Err(e);
        }
        Ok(self.wires.len() - 1)
    }

    /// Opens the third level of a qubit wire. No-op on wires that are already
    /// dimension 3.
    pub fn promote(&mut self, w: usize) -> Result<()> {
        if self.wires[w].dim == 2 {
            self.wires[w].dim = 3;
            self.wires[w].promoted = true;
            if let Err(e) = self.validate() {
                self.wires[w].dim = 2;
                self.wires[w].promoted = false;
                return Err(e);
            }
        }
        Ok(())
    }

    /// Position of the first wire carrying `role`.
    pub fn find_role(&self, role: WireRole) -> Option<usize> {
        self.wires.iter().position(|w| w.role == Some(role))
    }
}

/// Digits of a basis state, one per wire.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MixedRadixIndex(pub Vec<usize>);

pub fn digits_to_index(digits: &MixedRadixIndex, spec: &WireSpec) -> Result<usize> {
    if digits.0.len() != spec.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} digits for {} wires",
            digits.0.len(),
            spec.len()
        )));
    }
    let mut index = 0;
    for (wire, (&digit, w)) in digits.0.iter().zip(spec.wires()).enumerate() {
        if digit >= w.dim {
            return Err(Error::DigitOutOfRange { wire, digit, dim: w.dim });
        }
        index = index * w.dim + digit;
    }
    Ok(index)
}

pub fn index_to_digits(index: usize, spec: &WireSpec) -> Result<MixedRadixIndex> {
    let size = spec.total_dim();
    if index >= size {
        return Err(Error::IndexOutOfRange { index, size });
    }
    let mut digits = vec![0; spec.len()];
    let mut rest = index;
    for (slot, w) in digits.iter_mut().zip(spec.wires()).rev() {
        *slot = rest % w.dim;
        rest /= w.dim;
    }
    Ok(MixedRadixIndex(digits))
}

/// Largest deviation of `m† m` from the identity.
pub fn unitarity_defect(m: &Array2<Complex64>) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += m[[k, i]].conj() * m[[k, j]];
            }
            let expect = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((acc - expect).norm());
        }
    }
    worst
}

#[derive(Clone, Debug, PartialEq)]
pub struct MixedRadixState {
    spec: WireSpec,
    amplitudes: Vec<Complex64>,
}

impl MixedRadixState {
    /// `|0…0⟩` over `spec`.
    pub fn new_zero_state(spec: &WireSpec) -> Result<Self> {
        Self::basis_state(spec, 0)
    }

    pub fn basis_state(spec: &WireSpec, index: usize) -> Result<Self> {
        spec.validate()?;
        let size = spec.total_dim();
        if index >= size {
            return Err(Error::IndexOutOfRange { index, size });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); size];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(MixedRadixState { spec: spec.clone(), amplitudes })
    }

    pub fn from_amplitudes(spec: &WireSpec, amplitudes: Vec<Complex64>) -> Result<Self> {
        spec.validate()?;
        if amplitudes.len() != spec.total_dim() {
            return Err(Error::ShapeMismatch(format!(
                "{} amplitudes for a register of size {}",
                amplitudes.len(),
                spec.total_dim()
            )));
        }
        Ok(MixedRadixState { spec: spec.clone(), amplitudes })
    }

    pub fn spec(&self) -> &WireSpec {
        &self.spec
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Applies `matrix` to `wires` (listed order = matrix index order,
    /// first wire most significant) and the identity elsewhere.
    pub fn apply_local_unitary(&mut self, wires: &[usize], matrix: &Array2<Complex64>) -> Result<()> {
        self.check_wires(wires)?;
        let sub_dim: usize = wires.iter().map(|&w| self.spec.dim(w)).product();
        if matrix.nrows() != sub_dim || matrix.ncols() != sub_dim {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix on wires of joint dimension {}",
                matrix.nrows(),
                matrix.ncols(),
                sub_dim
            )));
        }
        let defect = unitarity_defect(matrix);
        if defect > UNITARY_TOL {
            return Err(Error::NotUnitary(defect));
        }
        self.apply_matrix_unchecked(wires, matrix);
        Ok(())
    }

    /// Same as [`apply_local_unitary`](Self::apply_local_unitary) without
    /// shape or unitarity checks. Callers guarantee both.
    pub(crate) fn apply_matrix_unchecked(&mut self, wires: &[usize], matrix: &Array2<Complex64>) {
        let strides = self.spec.strides();
        let sub_dims: Vec<usize> = wires.iter().map(|&w| self.spec.dim(w)).collect();
        let sub_dim: usize = sub_dims.iter().product();

        let mut offsets = vec![0usize; sub_dim];
        for (s, off) in offsets.iter_mut().enumerate() {
            let mut rest = s;
            for k in (0..wires.len()).rev() {
                *off += (rest % sub_dims[k]) * strides[wires[k]];
                rest /= sub_dims[k];
            }
        }

        let zero = Complex64::new(0.0, 0.0);
        let mut buf = vec![zero; sub_dim];
        for base in 0..self.amplitudes.len() {
            if wires
                .iter()
                .any(|&w| (base / strides[w]) % self.spec.dim(w) != 0)
            {
                continue;
            }
            for (b, &off) in buf.iter_mut().zip(&offsets) {
                *b = self.amplitudes[base + off];
            }
            for (row, &off) in offsets.iter().enumerate() {
                let mut acc = zero;
                for (col, b) in buf.iter().enumerate() {
                    acc += matrix[[row, col]] * b;
                }
                self.amplitudes[base + off] = acc;
            }
        }
    }

    /// Applies a basis permutation `t -> perm[t]` on `target`, conditioned on
    /// every `(wire, digit)` in `controls`.
    pub(crate) fn apply_controlled_permutation(
        &mut self,
        controls: &[(usize, usize)],
        target: usize,
        perm: &[usize],
    ) {
        let strides = self.spec.strides();
        let dims = self.spec.dims();
        let t_stride = strides[target];
        let t_dim = dims[target];
        debug_assert_eq!(perm.len(), t_dim);
        if perm.iter().enumerate().all(|(i, &p)| i == p) {
            return;
        }
        let zero = Complex64::new(0.0, 0.0);
        let mut buf = [zero; 3];
        for base in 0..self.amplitudes.len() {
            if (base / t_stride) % t_dim != 0 {
                continue;
            }
            if !controls
                .iter()
                .all(|&(w, s)| (base / strides[w]) % dims[w] == s)
            {
                continue;
            }
            for (t, b) in buf.iter_mut().enumerate().take(t_dim) {
                *b = self.amplitudes[base + t * t_stride];
            }
            for (t, &b) in buf.iter().enumerate().take(t_dim) {
                self.amplitudes[base + perm[t] * t_stride] = b;
            }
        }
    }

    fn check_wires(&self, wires: &[usize]) -> Result<()> {
        for (i, &w) in wires.iter().enumerate() {
            if w >= self.spec.len() {
                return Err(Error::ShapeMismatch(format!("wire {w} out of range")));
            }
            if wires[..i].contains(&w) {
                return Err(Error::ShapeMismatch(format!("wire {w} listed twice")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn digit_index_examples() {
        let spec = WireSpec::new(&[3, 3, 2]).unwrap();
        assert_eq!(digits_to_index(&MixedRadixIndex(vec![0, 0, 0]), &spec).unwrap(), 0);
        assert_eq!(digits_to_index(&MixedRadixIndex(vec![2, 2, 1]), &spec).unwrap(), 17);
        assert_eq!(digits_to_index(&MixedRadixIndex(vec![1, 0, 1]), &spec).unwrap(), 7);
        assert_eq!(index_to_digits(0, &spec).unwrap().0, vec![0, 0, 0]);
        assert_eq!(index_to_digits(17, &spec).unwrap().0, vec![2, 2, 1]);
        assert_eq!(index_to_digits(7, &spec).unwrap().0, vec![1, 0, 1]);
    }

    #[test]
    fn digit_errors() {
        let spec = WireSpec::new(&[3, 3, 2]).unwrap();
        assert!(matches!(
            digits_to_index(&MixedRadixIndex(vec![0, 0, 2]), &spec),
            Err(Error::DigitOutOfRange { wire: 2, digit: 2, dim: 2 })
        ));
        assert!(matches!(index_to_digits(18, &spec), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn spec_rejects_bad_dims() {
        assert!(matches!(WireSpec::new(&[2, 4]), Err(Error::UnsupportedDimension(4))));
        assert!(matches!(WireSpec::new(&[3; 20]), Err(Error::DimensionTooLarge(_))));
        assert!(WireSpec::new(&[2; 28]).is_ok());
        assert!(matches!(WireSpec::new(&[2; 29]), Err(Error::DimensionTooLarge(_))));
    }

    #[test]
    fn zero_states() {
        let s = MixedRadixState::new_zero_state(&WireSpec::new(&[2]).unwrap()).unwrap();
        assert_eq!(s.amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0)]);
        let s = MixedRadixState::new_zero_state(&WireSpec::new(&[3]).unwrap()).unwrap();
        assert_eq!(s.amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let s = MixedRadixState::new_zero_state(&WireSpec::new(&[3, 2]).unwrap()).unwrap();
        assert_eq!(s.amplitudes().len(), 6);
        assert_eq!(s.amplitudes()[0], c(1.0, 0.0));
        assert!(s.amplitudes()[1..].iter().all(|a| a.norm() == 0.0));
    }

    #[test]
    fn local_unitary_examples() {
        let spec = WireSpec::new(&[3]).unwrap();
        let mut s = MixedRadixState::new_zero_state(&spec).unwrap();
        let plus1 = array![
            [c(0., 0.), c(0., 0.), c(1., 0.)],
            [c(1., 0.), c(0., 0.), c(0., 0.)],
            [c(0., 0.), c(1., 0.), c(0., 0.)]
        ];
        s.apply_local_unitary(&[0], &plus1).unwrap();
        assert_eq!(s.amplitudes()[1], c(1.0, 0.0));

        let spec = WireSpec::new(&[2]).unwrap();
        let mut s = MixedRadixState::new_zero_state(&spec).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let h = array![[c(r, 0.), c(r, 0.)], [c(r, 0.), c(-r, 0.)]];
        s.apply_local_unitary(&[0], &h).unwrap();
        assert!((s.amplitudes()[0] - r).norm() < 1e-15);
        assert!((s.amplitudes()[1] - r).norm() < 1e-15);

        let before = s.clone();
        s.apply_local_unitary(&[0], &Array2::eye(2)).unwrap();
        assert_eq!(s, before);
    }

    #[test]
    fn local_unitary_errors() {
        let spec = WireSpec::new(&[3, 2]).unwrap();
        let mut s = MixedRadixState::new_zero_state(&spec).unwrap();
        assert!(matches!(
            s.apply_local_unitary(&[0], &Array2::eye(2)),
            Err(Error::ShapeMismatch(_))
        ));
        let not_unitary = Array2::from_elem((2, 2), c(1.0, 0.0));
        assert!(matches!(s.apply_local_unitary(&[1], &not_unitary), Err(Error::NotUnitary(_))));
        assert!(matches!(
            s.apply_local_unitary(&[1, 1], &Array2::eye(4)),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn wire_order_inside_matrix_follows_listing() {
        // CNOT with control listed first, applied with wires reversed.
        let spec = WireSpec::new(&[2, 2]).unwrap();
        let one = c(1.0, 0.0);
        let zero = c(0.0, 0.0);
        let cnot = array![
            [one, zero, zero, zero],
            [zero, one, zero, zero],
            [zero, zero, zero, one],
            [zero, zero, one, zero]
        ];
        // |01⟩: wire 1 is the control when listed as [1, 0].
        let mut s = MixedRadixState::basis_state(&spec, 1).unwrap();
        s.apply_local_unitary(&[1, 0], &cnot).unwrap();
        assert_eq!(s.amplitudes()[3], one);
    }

    #[test]
    fn promote_opens_third_level() {
        let mut spec = WireSpec::new(&[2, 3]).unwrap();
        spec.promote(0).unwrap();
        assert_eq!(spec.dims(), vec![3, 3]);
        assert!(spec.wire(0).promoted);
        assert_eq!(spec.wire(0).logical_dim(), 2);
        spec.promote(1).unwrap();
        assert!(!spec.wire(1).promoted);
    }
}
