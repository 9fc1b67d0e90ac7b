// Copyright 2026 The qudisim Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("wire dimension {0} is not supported (only 2 and 3)")]
    UnsupportedDimension(usize),
    #[error("digit {digit} on wire {wire} is out of range for dimension {dim}")]
    DigitOutOfRange { wire: usize, digit: usize, dim: usize },
    #[error("flat index {index} is out of range for a register of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("register of {0} amplitudes exceeds the supported size")]
    DimensionTooLarge(usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),
    #[error("control state {state} is invalid for a wire of dimension {dim}")]
    InvalidControlState { state: usize, dim: usize },
    #[error("flip variant {variant} is invalid for a target of dimension {dim}")]
    InvalidFlipVariant { variant: String, dim: usize },
    #[error("invalid gate: {0}")]
    InvalidOp(String),
    #[error("strategy {strategy} is not applicable: {reason}")]
    StrategyInapplicable { strategy: String, reason: String },
    #[error("decomposition needs at least 2 controls, got {0}")]
    TooFewControls(usize),
    #[error("invalid arguments: {0}")]
    InvalidArguments(String),
    #[error("depolarizing channel dimension {0} is not supported")]
    InvalidDimension(usize),
    #[error("noise strength {0} is outside [0, 1]")]
    InvalidStrength(f64),
    #[error("value {0} is outside 0..=255")]
    ValueOutOfRange(u32),
    #[error(
        "image dimensions {height}x{width} are not supported: expected 3^m x 2^n (hybrid), \
         2^m x 2^n (all-qubit), 3^m x 3^n (all-qutrit) or 2^m x 3^n"
    )]
    InvalidDims { height: usize, width: usize },
    #[error("register layout mismatch: {0}")]
    LayoutMismatch(String),
    #[error("transform maps {input} to {output}, outside 0..=255")]
    TransformOutOfRange { input: u8, output: u32 },
    #[error("noise requires a lowered circuit; op {0} acts on more than two wires")]
    NoiseOnUnloweredCircuit(usize),
    #[error("ppm: {0}")]
    Ppm(String),
    #[error("histogram: {0}")]
    Histogram(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
