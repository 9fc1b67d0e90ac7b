// Copyright 2026 The qudisim Authors
// SPDX-License-Identifier: Apache-2.0

//! Depolarizing noise in the Weyl (shift/clock) basis.
//!
//! With strength `λ` the channel keeps the state with probability `1 - λ`
//! and otherwise applies one of the `d² - 1` non-identity operators
//! `W_{a,b} = Xᵃ Zᵇ` uniformly at random. Two-wire gates use the Weyl group
//! of the joint dimension.

use std::f64::consts::PI;

use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Joint dimensions a channel may act on: one or two qubit/qutrit wires.
pub const SUPPORTED_DIMS: [usize; 5] = [2, 3, 4, 6, 9];

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    /// Strength after single-wire gates.
    pub lambda1: f64,
    /// Strength after two-wire gates.
    pub lambda2: f64,
}

impl NoiseModel {
    pub fn new(lambda1: f64, lambda2: f64) -> Result<Self> {
        check_strength(lambda1)?;
        check_strength(lambda2)?;
        Ok(NoiseModel { lambda1, lambda2 })
    }

    pub fn is_noiseless(&self) -> bool {
        self.lambda1 == 0.0 && self.lambda2 == 0.0
    }

    pub fn strength_for_arity(&self, arity: usize) -> f64 {
        if arity == 1 {
            self.lambda1
        } else {
            self.lambda2
        }
    }
}

fn check_strength(lambda: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidStrength(lambda));
    }
    Ok(())
}

/// `Xᵃ Zᵇ` in dimension `d`: `|j⟩ ↦ ω^{bj} |j + a⟩`.
pub fn weyl_operator(d: usize, a: usize, b: usize) -> Array2<Complex64> {
    let mut m = Array2::zeros((d, d));
    for j in 0..d {
        let phase = 2.0 * PI * ((b * j) % d) as f64 / d as f64;
        m[[(j + a) % d, j]] = Complex64::from_polar(1.0, phase);
    }
    m
}

/// Kraus operators `{√(1-λ) I} ∪ {√(λ/(d²-1)) W_{a,b}}`, identity first, then
/// `(a, b)` in row-major order. Operators with zero weight are returned as
/// zero matrices so the set always has `d²` members.
pub fn depolarizing_kraus(dim: usize, lambda: f64) -> Result<Vec<Array2<Complex64>>> {
    if !SUPPORTED_DIMS.contains(&dim) {
        return Err(Error::InvalidDimension(dim));
    }
    check_strength(lambda)?;
    let keep = Complex64::new((1.0 - lambda).sqrt(), 0.0);
    let spread = Complex64::new((lambda / (dim * dim - 1) as f64).sqrt(), 0.0);
    let mut ops = Vec::with_capacity(dim * dim);
    for a in 0..dim {
        for b in 0..dim {
            let w = weyl_operator(dim, a, b);
            ops.push(if a == 0 && b == 0 { w * keep } else { w * spread });
        }
    }
    Ok(ops)
}

/// One sampled channel outcome after op `op_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeylError {
    pub op_index: usize,
    pub shift: usize,
    pub clock: usize,
}

/// Samples a non-identity branch with probability `lambda`.
pub fn sample_weyl<R: Rng>(rng: &mut R, dim: usize, lambda: f64) -> Option<(usize, usize)> {
    if lambda <= 0.0 || rng.gen::<f64>() >= lambda {
        return None;
    }
    let r = rng.gen_range(1..dim * dim);
    Some((r / dim, r % dim))
}
