// Copyright 2026 The qudisim Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact gate matrices for qubits and qutrits.
//!
//! Every X-type gate is a basis permutation, so each variant is described by
//! its permutation (`XVariant::permutation`) and the dense matrix is built
//! from that. Column `j` of a permutation matrix has its 1 in row `perm[j]`.

use std::f64::consts::PI;
use std::fmt;

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The six ternary X gates. On qubits only `Plus0` (identity) and `Swap01`
/// (the Pauli X) are meaningful.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum XVariant {
    #[default]
    Plus0,
    Plus1,
    Plus2,
    Swap01,
    Swap12,
    Swap02,
}

impl XVariant {
    pub const ALL: [XVariant; 6] = [
        XVariant::Plus0,
        XVariant::Plus1,
        XVariant::Plus2,
        XVariant::Swap01,
        XVariant::Swap12,
        XVariant::Swap02,
    ];

    /// Variants that are valid on a wire of dimension `dim`.
    pub fn valid_for(dim: usize) -> &'static [XVariant] {
        match dim {
            2 => &[XVariant::Plus0, XVariant::Swap01],
            _ => &Self::ALL,
        }
    }

    /// Image of each basis state, `|t⟩ -> |perm[t]⟩`.
    pub fn permutation(self, dim: usize) -> Result<Vec<usize>> {
        if dim != 2 && dim != 3 {
            return Err(Error::UnsupportedDimension(dim));
        }
        if !Self::valid_for(dim).contains(&self) {
            return Err(Error::InvalidFlipVariant { variant: self.to_string(), dim });
        }
        Ok(match (self, dim) {
            (XVariant::Plus0, d) => (0..d).collect(),
            (XVariant::Swap01, 2) => vec![1, 0],
            (XVariant::Plus1, _) => vec![1, 2, 0],
            (XVariant::Plus2, _) => vec![2, 0, 1],
            (XVariant::Swap01, _) => vec![1, 0, 2],
            (XVariant::Swap12, _) => vec![0, 2, 1],
            (XVariant::Swap02, _) => vec![2, 1, 0],
        })
    }

    pub fn inverse(self) -> XVariant {
        match self {
            XVariant::Plus1 => XVariant::Plus2,
            XVariant::Plus2 => XVariant::Plus1,
            other => other,
        }
    }

    /// The cyclic shift taking trit `from` to trit `to`.
    pub fn shift(from: usize, to: usize) -> XVariant {
        match (to + 3 - from % 3) % 3 {
            0 => XVariant::Plus0,
            1 => XVariant::Plus1,
            _ => XVariant::Plus2,
        }
    }
}

impl fmt::Display for XVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            XVariant::Plus0 => "+0",
            XVariant::Plus1 => "+1",
            XVariant::Plus2 => "+2",
            XVariant::Swap01 => "01",
            XVariant::Swap12 => "12",
            XVariant::Swap02 => "02",
        };
        f.write_str(s)
    }
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

pub fn permutation_matrix(perm: &[usize]) -> Array2<Complex64> {
    let n = perm.len();
    let mut m = Array2::zeros((n, n));
    for (col, &row) in perm.iter().enumerate() {
        m[[row, col]] = one();
    }
    m
}

pub fn x_matrix(variant: XVariant, dim: usize) -> Result<Array2<Complex64>> {
    Ok(permutation_matrix(&variant.permutation(dim)?))
}

pub fn ternary_x_matrix(variant: XVariant) -> Array2<Complex64> {
    permutation_matrix(&variant.permutation(3).expect("every variant is valid on a qutrit"))
}

/// `H₂` or the qutrit Fourier matrix `H₃ = (1/√3)[[1,1,1],[1,ω,ω̄],[1,ω̄,ω]]`.
pub fn hadamard_matrix(dim: usize) -> Result<Array2<Complex64>> {
    match dim {
        2 => {
            let r = std::f64::consts::FRAC_1_SQRT_2;
            let mut m = Array2::from_elem((2, 2), Complex64::new(r, 0.0));
            m[[1, 1]] = Complex64::new(-r, 0.0);
            Ok(m)
        }
        3 => {
            let scale = 1.0 / 3f64.sqrt();
            let omega = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
            Ok(Array2::from_shape_fn((3, 3), |(r, c)| omega.powu((r * c) as u32) * scale))
        }
        d => Err(Error::UnsupportedDimension(d)),
    }
}

/// Hadamard acting on the logical levels of a wire whose physical dimension
/// may be larger (a promoted qubit keeps `|2⟩` fixed).
pub fn embedded_hadamard(logical_dim: usize, physical_dim: usize) -> Result<Array2<Complex64>> {
    let h = hadamard_matrix(logical_dim)?;
    if physical_dim == logical_dim {
        return Ok(h);
    }
    let mut m = Array2::eye(physical_dim);
    m.slice_mut(ndarray::s![..logical_dim, ..logical_dim]).assign(&h);
    Ok(m)
}

pub fn kron(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Array2<Complex64> {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    Array2::from_shape_fn((ar * br, ac * bc), |(r, c)| a[[r / br, c / bc]] * b[[r % br, c % bc]])
}

/// `Σ_{c≠s} |c⟩⟨c| ⊗ I + |s⟩⟨s| ⊗ X_flip`.
pub fn controlled_x_matrix(
    control_dim: usize,
    control_state: usize,
    target_dim: usize,
    flip: XVariant,
) -> Result<Array2<Complex64>> {
    if control_dim != 2 && control_dim != 3 {
        return Err(Error::UnsupportedDimension(control_dim));
    }
    multi_controlled_x_matrix(&[(control_dim, control_state)], target_dim, flip)
}

/// Multi-controlled flip over `controls` (each `(dim, activation)`) followed
/// by the target, assembled as a sum of projector tensor products.
pub fn multi_controlled_x_matrix(
    controls: &[(usize, usize)],
    target_dim: usize,
    flip: XVariant,
) -> Result<Array2<Complex64>> {
    for &(dim, state) in controls {
        if state >= dim {
            return Err(Error::InvalidControlState { state, dim });
        }
    }
    let x = x_matrix(flip, target_dim)?;
    let id_t: Array2<Complex64> = Array2::eye(target_dim);

    let mut matched: Array2<Complex64> = Array2::eye(1);
    for &(dim, state) in controls {
        let mut proj = Array2::zeros((dim, dim));
        proj[[state, state]] = one();
        matched = kron(&matched, &proj);
    }
    let control_dim = matched.nrows();
    let unmatched = Array2::<Complex64>::eye(control_dim) - &matched;
    Ok(kron(&matched, &x) + kron(&unmatched, &id_t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::unitarity_defect;

    fn real(m: &Array2<Complex64>) -> Vec<Vec<i32>> {
        m.rows()
            .into_iter()
            .map(|r| {
                r.iter()
                    .map(|z| {
                        assert_eq!(z.im, 0.0);
                        z.re as i32
                    })
                    .collect()
            })
            .collect()
    }

    fn is_identity(m: &Array2<Complex64>) -> bool {
        *m == Array2::<Complex64>::eye(m.nrows())
    }

    #[test]
    fn plus1_matches_listed_matrix() {
        assert_eq!(
            real(&ternary_x_matrix(XVariant::Plus1)),
            vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]
        );
        assert!(is_identity(&ternary_x_matrix(XVariant::Plus0)));
    }

    #[test]
    fn swap01_leaves_two_fixed() {
        let m = ternary_x_matrix(XVariant::Swap01);
        assert_eq!(m[[2, 2]], one());
        assert_eq!(m.column(2).iter().filter(|z| z.norm() > 0.0).count(), 1);
    }

    #[test]
    fn x_group_relations() {
        let p1 = ternary_x_matrix(XVariant::Plus1);
        let p2 = ternary_x_matrix(XVariant::Plus2);
        assert!(is_identity(&p1.dot(&p2)));
        assert!(is_identity(&p1.dot(&p1).dot(&p1)));
        for v in [XVariant::Swap01, XVariant::Swap12, XVariant::Swap02] {
            let s = ternary_x_matrix(v);
            assert!(is_identity(&s.dot(&s)));
        }
        for v in XVariant::ALL {
            let m = ternary_x_matrix(v);
            let inv = ternary_x_matrix(v.inverse());
            assert!(is_identity(&m.dot(&inv)));
        }
    }

    #[test]
    fn shift_maps_between_trits() {
        for from in 0..3 {
            for to in 0..3 {
                let p = XVariant::shift(from, to).permutation(3).unwrap();
                assert_eq!(p[from], to);
            }
        }
        assert_eq!(XVariant::shift(1, 0), XVariant::Plus2);
    }

    #[test]
    fn qubit_variants() {
        assert_eq!(real(&x_matrix(XVariant::Swap01, 2).unwrap()), vec![vec![0, 1], vec![1, 0]]);
        assert!(matches!(
            x_matrix(XVariant::Plus1, 2),
            Err(Error::InvalidFlipVariant { dim: 2, .. })
        ));
    }

    #[test]
    fn hadamards() {
        let h3 = hadamard_matrix(3).unwrap();
        let r = 1.0 / 3f64.sqrt();
        for row in 0..3 {
            assert!((h3[[row, 0]] - r).norm() < 1e-15);
        }
        let omega = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
        assert!((h3[[1, 1]] - omega * r).norm() < 1e-15);
        assert!((h3[[1, 2]] - omega.conj() * r).norm() < 1e-15);
        assert!((h3[[2, 1]] - omega.conj() * r).norm() < 1e-15);
        assert!(unitarity_defect(&h3) < 1e-12);

        let h2 = hadamard_matrix(2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((h2[[0, 1]] - s).norm() < 1e-15 && (h2[[1, 1]] + s).norm() < 1e-15);
        assert!(matches!(hadamard_matrix(4), Err(Error::UnsupportedDimension(4))));

        let e = embedded_hadamard(2, 3).unwrap();
        assert_eq!(e[[2, 2]], one());
        assert!(unitarity_defect(&e) < 1e-12);
    }

    #[test]
    fn qutrit_controlled_swap01_matches_nine_by_nine() {
        let m = controlled_x_matrix(3, 2, 3, XVariant::Swap01).unwrap();
        let mut expect = vec![vec![0; 9]; 9];
        for (i, row) in expect.iter_mut().enumerate() {
            row[i] = 1;
        }
        expect[6] = vec![0, 0, 0, 0, 0, 0, 0, 1, 0];
        expect[7] = vec![0, 0, 0, 0, 0, 0, 1, 0, 0];
        assert_eq!(real(&m), expect);
    }

    #[test]
    fn hybrid_controlled_matrices() {
        let mut expect = vec![vec![0; 6]; 6];
        for (i, row) in expect.iter_mut().enumerate().take(4) {
            row[i] = 1;
        }
        expect[4][5] = 1;
        expect[5][4] = 1;
        let qubit_ctl = controlled_x_matrix(2, 1, 3, XVariant::Swap12).unwrap();
        assert_eq!(real(&qubit_ctl), expect);
        let qutrit_ctl = controlled_x_matrix(3, 2, 2, XVariant::Swap01).unwrap();
        assert_eq!(real(&qutrit_ctl), expect);
    }

    #[test]
    fn controlled_errors_and_identity() {
        assert!(matches!(
            controlled_x_matrix(2, 2, 3, XVariant::Plus1),
            Err(Error::InvalidControlState { state: 2, dim: 2 })
        ));
        assert!(matches!(
            controlled_x_matrix(3, 0, 2, XVariant::Swap12),
            Err(Error::InvalidFlipVariant { .. })
        ));
        for cd in [2, 3] {
            for s in 0..cd {
                for td in [2, 3] {
                    assert!(is_identity(&controlled_x_matrix(cd, s, td, XVariant::Plus0).unwrap()));
                }
            }
        }
    }

    #[test]
    fn controlled_identity_off_activation() {
        for cd in [2usize, 3] {
            for s in 0..cd {
                for td in [2usize, 3] {
                    for &flip in XVariant::valid_for(td) {
                        let m = controlled_x_matrix(cd, s, td, flip).unwrap();
                        assert!(unitarity_defect(&m) < 1e-12);
                        for basis in 0..cd * td {
                            if basis / td != s {
                                assert_eq!(m[[basis, basis]], one());
                            }
                        }
                    }
                }
            }
        }
    }
}
