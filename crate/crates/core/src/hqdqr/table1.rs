// Copyright 2026 The qudisim Authors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form elementary gate counts for RGB image encodings.
//!
//! `n` is the number of column (qubit) position digits and `m` the number of
//! row (qutrit) position digits. The qubit-only representations depend on
//! `n` alone; NCQI is negative at `n = 0`, so counts are signed.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Counts {
    pub mcqi: i128,
    pub ncqi: i128,
    pub ocqr: i128,
    pub hqdqr: i128,
}

impl Table1Counts {
    pub fn rows(&self) -> [(&'static str, i128); 4] {
        [("MCQI", self.mcqi), ("NCQI", self.ncqi), ("OCQR", self.ocqr), ("HQDQR", self.hqdqr)]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("representation,elementary_gates\n");
        for (name, v) in self.rows() {
            out.push_str(&format!("{name},{v}\n"));
        }
        out
    }
}

/// Largest exponent accepted; keeps every term well inside `i128`.
const MAX_DIGITS: u32 = 24;

pub fn table1_gate_counts(n: u32, m: u32) -> Result<Table1Counts> {
    if n > MAX_DIGITS || m > MAX_DIGITS {
        return Err(Error::InvalidArguments(format!("n = {n}, m = {m}: at most {MAX_DIGITS} digits per axis")));
    }
    let (ni, mi) = (n as i128, m as i128);
    let p2 = |e: i128| 1i128 << e;
    let p3 = |e: u32| 3i128.pow(e);
    Ok(Table1Counts {
        mcqi: 24 * p2(4 * ni) - 9 * p2(2 * ni) + 2 * ni + 2,
        ncqi: 2 * ni + 24 * p2(2 * ni) * 48 * (ni - 1),
        ocqr: 2 * ni + 2 + 24 * p2(2 * ni) * 48 * ni,
        hqdqr: mi + ni + 1 + 18 * p2(ni) * p3(m) * (6 * (mi + ni) + 3),
    })
}

/// HQDQR bound written as Hadamards plus worst-case lowered Toffolis:
/// `18·2ⁿ3ᵐ` Toffolis with `m + n + 1` controls, each at most `6c - 3`.
pub fn hqdqr_bound(n: u32, m: u32) -> i128 {
    let controls = (m + n + 1) as i128;
    18 * (1i128 << n) * 3i128.pow(m) * (6 * controls - 3) + controls
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_values() {
        let t = table1_gate_counts(1, 1).unwrap();
        assert_eq!(t.hqdqr, 1623);
        assert_eq!(t.mcqi, 352);
        assert_eq!(t.ncqi, 2);
        assert_eq!(t.ocqr, 4 + 24 * 4 * 48);
        assert_eq!(table1_gate_counts(0, 0).unwrap().hqdqr, 55);
        assert_eq!(table1_gate_counts(0, 0).unwrap().ncqi, -1152);
        assert!(table1_gate_counts(25, 0).is_err());
    }

    #[test]
    fn bound_identity() {
        for n in 0..6 {
            for m in 0..6 {
                assert_eq!(hqdqr_bound(n, m), table1_gate_counts(n, m).unwrap().hqdqr);
            }
        }
    }

    #[test]
    fn csv() {
        let csv = table1_gate_counts(1, 1).unwrap().to_csv();
        assert!(csv.starts_with("representation,elementary_gates\nMCQI,352\n"));
        assert!(csv.ends_with("HQDQR,1623\n"));
    }
}
