// Copyright 2026 The qudisim Authors
// SPDX-License-Identifier: Apache-2.0

//! Gate applications and circuits, plus their JSON form.
//!
//! ```json
//! {"wires":[{"dim":3,"role":"Channel"}],
//!  "ops":[{"kind":"Hadamard","controls":[],"target":0,"variant":"Plus0"}]}
//! ```

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{embedded_hadamard, multi_controlled_x_matrix, x_matrix, XVariant};
use crate::state::{MixedRadixState, WireSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    SingleQuditX,
    Hadamard,
    ControlledX,
    GeneralizedToffoli,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Control {
    pub wire: usize,
    pub state: usize,
}

impl Control {
    pub fn new(wire: usize, state: usize) -> Self {
        Control { wire, state }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GateOp {
    pub kind: GateKind,
    #[serde(default)]
    pub controls: Vec<Control>,
    pub target: usize,
    /// Flip applied to the target; ignored by `Hadamard`.
    #[serde(default)]
    pub variant: XVariant,
}

impl GateOp {
    pub fn x(target: usize, variant: XVariant) -> Self {
        GateOp { kind: GateKind::SingleQuditX, controls: vec![], target, variant }
    }

    pub fn hadamard(target: usize) -> Self {
        GateOp { kind: GateKind::Hadamard, controls: vec![], target, variant: XVariant::Plus0 }
    }

    pub fn cx(control: Control, target: usize, variant: XVariant) -> Self {
        GateOp { kind: GateKind::ControlledX, controls: vec![control], target, variant }
    }

    pub fn toffoli(controls: Vec<Control>, target: usize, variant: XVariant) -> Self {
        GateOp { kind: GateKind::GeneralizedToffoli, controls, target, variant }
    }

    /// Controls first, then the target; this is also the index order of
    /// [`gate_unitary`].
    pub fn wires(&self) -> Vec<usize> {
        let mut w: Vec<usize> = self.controls.iter().map(|c| c.wire).collect();
        w.push(self.target);
        w
    }

    pub fn arity(&self) -> usize {
        self.controls.len() + 1
    }

    pub fn is_permutation(&self) -> bool {
        self.kind != GateKind::Hadamard
    }

    /// The inverse operation.
    pub fn inverse(&self) -> Result<GateOp> {
        match self.kind {
            GateKind::Hadamard => Err(Error::InvalidOp("Hadamard inverse is not an X-type gate".into())),
            _ => Ok(GateOp { variant: self.variant.inverse(), ..self.clone() }),
        }
    }

    pub fn validate(&self, spec: &WireSpec) -> Result<()> {
        let n = spec.len();
        let wires = self.wires();
        for (i, &w) in wires.iter().enumerate() {
            if w >= n {
                return Err(Error::InvalidOp(format!("wire {w} is outside a {n}-wire register")));
            }
            if wires[..i].contains(&w) {
                return Err(Error::InvalidOp(format!("wire {w} used twice")));
            }
        }
        match self.kind {
            GateKind::SingleQuditX | GateKind::Hadamard if !self.controls.is_empty() => {
                return Err(Error::InvalidOp(format!("{:?} takes no controls", self.kind)));
            }
            GateKind::ControlledX if self.controls.len() != 1 => {
                return Err(Error::InvalidOp("ControlledX takes exactly one control".into()));
            }
            _ => {}
        }
        for c in &self.controls {
            let dim = spec.dim(c.wire);
            if c.state >= dim {
                return Err(Error::InvalidControlState { state: c.state, dim });
            }
        }
        if self.kind != GateKind::Hadamard {
            self.variant.permutation(spec.dim(self.target))?;
        }
        Ok(())
    }
}

/// Dense matrix of `op` over its own wires, controls first.
pub fn gate_unitary(op: &GateOp, spec: &WireSpec) -> Result<Array2<Complex64>> {
    op.validate(spec)?;
    let target_dim = spec.dim(op.target);
    match op.kind {
        GateKind::Hadamard => {
            let w = spec.wire(op.target);
            embedded_hadamard(w.logical_dim(), w.dim)
        }
        GateKind::SingleQuditX => x_matrix(op.variant, target_dim),
        GateKind::ControlledX | GateKind::GeneralizedToffoli => {
            let controls: Vec<(usize, usize)> =
                op.controls.iter().map(|c| (spec.dim(c.wire), c.state)).collect();
            multi_controlled_x_matrix(&controls, target_dim, op.variant)
        }
    }
}

/// Applies a validated op to a state vector.
pub fn apply_gate(state: &mut MixedRadixState, op: &GateOp) -> Result<()> {
    let spec = state.spec();
    op.validate(spec)?;
    if op.kind == GateKind::Hadamard {
        let w = spec.wire(op.target);
        let h = embedded_hadamard(w.logical_dim(), w.dim)?;
        state.apply_matrix_unchecked(&[op.target], &h);
    } else {
        let perm = op.variant.permutation(spec.dim(op.target))?;
        let controls: Vec<(usize, usize)> = op.controls.iter().map(|c| (c.wire, c.state)).collect();
        state.apply_controlled_permutation(&controls, op.target, &perm);
    }
    Ok(())
}

/// Pushes a single basis state (as digits) through a permutation op.
pub fn apply_gate_to_digits(digits: &mut [usize], op: &GateOp, spec: &WireSpec) -> Result<()> {
    if op.kind == GateKind::Hadamard {
        return Err(Error::InvalidOp("Hadamard does not map basis states to basis states".into()));
    }
    if op.controls.iter().all(|c| digits[c.wire] == c.state) {
        let perm = op.variant.permutation(spec.dim(op.target))?;
        digits[op.target] = perm[digits[op.target]];
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Circuit {
    wires: WireSpec,
    ops: Vec<GateOp>,
}

#[derive(Deserialize)]
struct RawCircuit {
    wires: WireSpec,
    #[serde(default)]
    ops: Vec<GateOp>,
}

impl<'de> Deserialize<'de> for Circuit {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawCircuit::deserialize(d)?;
        Circuit::from_parts(raw.wires, raw.ops).map_err(serde::de::Error::custom)
    }
}

impl Circuit {
    pub fn new(spec: WireSpec) -> Self {
        Circuit { wires: spec, ops: Vec::new() }
    }

    pub fn from_parts(spec: WireSpec, ops: Vec<GateOp>) -> Result<Self> {
        spec.validate()?;
        let mut c = Circuit::new(spec);
        for op in ops {
            c.push(op)?;
        }
        Ok(c)
    }

    pub fn spec(&self) -> &WireSpec {
        &self.wires
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn push(&mut self, op: GateOp) -> Result<()> {
        op.validate(&self.wires)?;
        self.ops.push(op);
        Ok(())
    }

    pub fn extend(&mut self, ops: impl IntoIterator<Item = GateOp>) -> Result<()> {
        for op in ops {
            self.push(op)?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Ops with two or more controls.
    pub fn multi_controlled_count(&self) -> usize {
        self.ops.iter().filter(|op| op.controls.len() >= 2).count()
    }

    pub fn count_kind(&self, kind: GateKind) -> usize {
        self.ops.iter().filter(|op| op.kind == kind).count()
    }

    /// True when every op touches at most two wires.
    pub fn is_lowered(&self) -> bool {
        self.ops.iter().all(|op| op.arity() <= 2)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}
