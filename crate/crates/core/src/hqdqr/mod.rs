// Copyright 2026 The qudisim Authors
// SPDX-License-Identifier: Apache-2.0

//! Hybrid qudit RGB image encoding.
//!
//! Each 8-bit channel value is stored in six intensity qutrits, the colour
//! channel in one qutrit (`0 → R`, `1 → G`, `2 → B`) and the pixel position
//! in one digit per power of the row and column radices. Encoding puts the
//! channel and position wires in uniform superposition and then writes each
//! nonzero intensity trit with a generalized Toffoli conditioned on that
//! pixel and channel.

mod decode;
mod image;
mod layout;
mod table1;

pub use decode::{decode, default_threshold, DecodeDiagnostics, DecodedImage};
pub use image::{Axis, Channel, ImageDims, RgbImage};
pub use layout::{RegisterLayout, CHANNEL_WIRE, INTENSITY_TRITS};
pub use table1::{hqdqr_bound, table1_gate_counts, Table1Counts};

use num_complex::Complex64;

use crate::circuit::{Circuit, GateOp};
use crate::decompose::{lower_circuit, DecompositionStrategy, LowerOptions};
use crate::error::{Error, Result};
use crate::gates::XVariant;
use crate::state::{index_to_digits, MixedRadixState, WireRole};

/// Base-3 digits of `value`, most significant first.
pub fn intensity_to_trits(value: u32) -> Result<[u8; INTENSITY_TRITS]> {
    if value > 255 {
        return Err(Error::ValueOutOfRange(value));
    }
    let mut trits = [0u8; INTENSITY_TRITS];
    let mut rest = value;
    for t in trits.iter_mut().rev() {
        *t = (rest % 3) as u8;
        rest /= 3;
    }
    Ok(trits)
}

/// Inverse of [`intensity_to_trits`]. Six trits can hold up to 728, so the
/// result is not clamped.
pub fn trits_to_intensity(trits: &[u8; INTENSITY_TRITS]) -> u32 {
    trits.iter().fold(0, |acc, &t| acc * 3 + t as u32)
}

/// Flip taking a zero trit to `digit`.
fn flip_for(digit: u8) -> XVariant {
    match digit {
        1 => XVariant::Plus1,
        _ => XVariant::Plus2,
    }
}

/// Uniform superposition over channel and position wires.
pub(crate) fn superposition_ops(layout: &RegisterLayout) -> Vec<GateOp> {
    let mut ops: Vec<GateOp> = layout.position_wires().map(GateOp::hadamard).collect();
    ops.push(GateOp::hadamard(layout.channel_wire()));
    ops
}

/// Unlowered encoding: superposition, then one generalized Toffoli per
/// nonzero intensity trit in row-major pixel order, channels R, G, B, trits
/// from least significant up.
pub fn encoding_circuit(image: &RgbImage) -> Result<Circuit> {
    let layout = RegisterLayout::new(image.dims())?;
    let mut ops = superposition_ops(&layout);
    for (y, x, _) in image.iter() {
        for c in Channel::ALL {
            let trits = intensity_to_trits(image.value(y, x, c) as u32)?;
            for i in 0..INTENSITY_TRITS {
                let digit = trits[INTENSITY_TRITS - 1 - i];
                if digit != 0 {
                    ops.push(GateOp::toffoli(layout.pixel_controls(y, x, c), layout.intensity_wire(i), flip_for(digit)));
                }
            }
        }
    }
    Circuit::from_parts(layout.wire_spec(), ops)
}

/// Encoding circuit, optionally lowered to one- and two-qudit gates with a
/// shared ancilla pool.
pub fn build_encoding_circuit(image: &RgbImage, lower: Option<DecompositionStrategy>) -> Result<Circuit> {
    let circuit = encoding_circuit(image)?;
    match lower {
        None => Ok(circuit),
        Some(strategy) => Ok(lower_circuit(&circuit, strategy, LowerOptions::default())?.0),
    }
}

/// Target state: amplitude `1/√(3MN)` on every `|intensity⟩|channel⟩|YX⟩`.
pub fn expected_state(image: &RgbImage) -> Result<MixedRadixState> {
    let layout = RegisterLayout::new(image.dims())?;
    let spec = layout.wire_spec();
    let mut amps = vec![Complex64::new(0.0, 0.0); spec.total_dim()];
    let a = Complex64::new(1.0 / ((3 * image.dims().pixel_count()) as f64).sqrt(), 0.0);
    let strides = spec.strides();
    for (y, x, _) in image.iter() {
        for c in Channel::ALL {
            let trits = intensity_to_trits(image.value(y, x, c) as u32)?;
            let mut digits: Vec<usize> = trits.iter().map(|&t| t as usize).collect();
            digits.push(c.digit());
            digits.extend(layout.position_digits(y, x));
            let index: usize = digits.iter().zip(&strides).map(|(d, s)| d * s).sum();
            amps[index] = a;
        }
    }
    MixedRadixState::from_amplitudes(&spec, amps)
}

/// Projects a state on a possibly lowered register (extra ancillas, promoted
/// qubits) onto the layout's logical register. Returns the logical
/// amplitudes and the probability mass left outside it.
pub fn layout_amplitudes(state: &MixedRadixState, layout: &RegisterLayout) -> Result<(Vec<Complex64>, f64)> {
    let spec = state.spec();
    let logical = layout.wire_spec();
    if spec.len() < logical.len() {
        return Err(Error::LayoutMismatch(format!(
            "state has {} wires, layout needs {}",
            spec.len(),
            logical.len()
        )));
    }
    let strides = logical.strides();
    let mut out = vec![Complex64::new(0.0, 0.0); logical.total_dim()];
    let mut leaked = 0.0;
    for (index, amp) in state.amplitudes().iter().enumerate() {
        if amp.norm_sqr() == 0.0 {
            continue;
        }
        let digits = index_to_digits(index, spec)?.0;
        let inside = digits[logical.len()..].iter().all(|&d| d == 0)
            && (0..logical.len()).all(|w| digits[w] < logical.dim(w));
        if inside {
            let li: usize = digits[..logical.len()].iter().zip(&strides).map(|(d, s)| d * s).sum();
            out[li] = *amp;
        } else {
            leaked += amp.norm_sqr();
        }
    }
    Ok((out, leaked))
}

/// Recovers the layout from a circuit's wire roles.
pub fn layout_of_circuit(circuit: &Circuit, dims: ImageDims) -> Result<RegisterLayout> {
    let layout = RegisterLayout::new(dims)?;
    let spec = circuit.spec();
    let expected = layout.wire_spec();
    if spec.len() < expected.len() {
        return Err(Error::LayoutMismatch(format!("circuit has {} wires, {}x{} image needs {}", spec.len(), dims.height, dims.width, expected.len())));
    }
    for (w, want) in expected.wires().iter().enumerate() {
        let got = spec.wire(w);
        if got.role != want.role || got.logical_dim() != want.dim {
            return Err(Error::LayoutMismatch(format!("wire {w} does not match the image register")));
        }
    }
    if spec.wires()[expected.len()..].iter().any(|w| w.role != Some(WireRole::Ancilla) && w.role.is_some()) {
        return Err(Error::LayoutMismatch("unexpected non-ancilla wire after the position register".into()));
    }
    Ok(layout)
}
