// Copyright 2026 The qudisim Authors
// SPDX-License-Identifier: Apache-2.0

//! Lowering of generalized hybrid Toffoli gates into one- and two-qudit
//! gates.
//!
//! Three strategies are provided:
//!
//! * [`DecompositionStrategy::AncillaChain`] accumulates the AND of the
//!   controls on a chain of `n - 1` qutrit ancillas. Each ancilla is
//!   incremented once per matching input, so it reads `|2⟩` exactly when
//!   both of its inputs matched. Cost `4n - 3`.
//! * [`DecompositionStrategy::EffectiveQutrit`] threads the AND through the
//!   control qubits' own third level, then through one qutrit ancilla per
//!   control qutrit. Cost `2n + 2n₂ - 1`.
//! * [`DecompositionStrategy::QubitAncilla`] (all-qubit controls only) folds
//!   the controls pairwise into qubit ancillas with binary Toffoli gates and
//!   finishes with one hybrid controlled-X. Cost `2n - 1`, Toffolis counted
//!   as single units.
//!
//! Controls whose activation is not the wire's highest level are first
//! mapped onto it by a single-qudit swap on each side, adding `2k` gates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Control, GateKind, GateOp};
use crate::error::{Error, Result};
use crate::gates::XVariant;
use crate::state::{Wire, WireRole, WireSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DecompositionStrategy {
    AncillaChain,
    EffectiveQutrit,
    QubitAncilla,
}

impl DecompositionStrategy {
    pub const ALL: [DecompositionStrategy; 3] = [
        DecompositionStrategy::AncillaChain,
        DecompositionStrategy::EffectiveQutrit,
        DecompositionStrategy::QubitAncilla,
    ];

    /// Whether the strategy can lower a gate with this control mix.
    pub fn applies_to(self, n_qubits: usize, n_qutrits: usize) -> bool {
        match self {
            DecompositionStrategy::AncillaChain => true,
            DecompositionStrategy::EffectiveQutrit => n_qubits >= 1,
            DecompositionStrategy::QubitAncilla => n_qutrits == 0,
        }
    }
}

impl fmt::Display for DecompositionStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DecompositionStrategy::AncillaChain => "ancilla-chain",
            DecompositionStrategy::EffectiveQutrit => "effective-qutrit",
            DecompositionStrategy::QubitAncilla => "qubit-ancilla",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LowerOptions {
    /// Break each binary Toffoli of the `QubitAncilla` strategy into five
    /// controlled-X gates through one shared qutrit ancilla.
    pub split_binary_toffoli: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AncillaWire {
    pub wire: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LoweredCircuit {
    /// Original wires (qubit controls possibly promoted) followed by ancillas.
    pub spec: WireSpec,
    pub ops: Vec<GateOp>,
    pub ancilla_wires: Vec<AncillaWire>,
    pub elementary_gate_count: usize,
    /// Binary Toffoli gates kept as units (only `QubitAncilla`).
    pub toffoli_count: usize,
}

impl LoweredCircuit {
    pub fn to_circuit(&self) -> Result<Circuit> {
        Circuit::from_parts(self.spec.clone(), self.ops.clone())
    }
}

fn check_counts(n1: usize, n2: usize) -> Result<usize> {
    let n = n1 + n2;
    if n < 2 {
        return Err(Error::InvalidArguments(format!("need at least 2 controls, got {n}")));
    }
    Ok(n)
}

/// Elementary gates emitted by [`lower_toffoli`] for `n1` control qubits,
/// `n2` control qutrits and `k` controls with a non-highest activation.
pub fn predicted_gate_count(
    n1: usize,
    n2: usize,
    k: usize,
    strategy: DecompositionStrategy,
) -> Result<usize> {
    let n = check_counts(n1, n2)?;
    if k > n {
        return Err(Error::InvalidArguments(format!("k = {k} exceeds n = {n}")));
    }
    if !strategy.applies_to(n1, n2) {
        return Err(Error::InvalidArguments(format!(
            "{strategy} does not apply to {n1} control qubits and {n2} control qutrits"
        )));
    }
    Ok(match strategy {
        DecompositionStrategy::AncillaChain => 4 * n - 3 + 2 * k,
        DecompositionStrategy::EffectiveQutrit => 2 * n + 2 * n2 - 1 + 2 * k,
        DecompositionStrategy::QubitAncilla => 2 * n1 - 1 + 2 * k,
    })
}

/// The alternative closed form `2n + 2n₂ - 2 + 2k` for the generalized
/// effective-qutrit case. It is even for every input, while every lowering
/// here is a mirrored compute/uncompute pair around one flip (odd), so it
/// sits one below the emitted count. Kept for reporting.
pub fn effective_qutrit_closed_form(n1: usize, n2: usize, k: usize) -> Result<usize> {
    let n = check_counts(n1, n2)?;
    Ok(2 * n + 2 * n2 - 2 + 2 * k)
}

/// `(qutrit ancillas, qubit ancillas)` needed by a strategy.
pub fn ancilla_requirement(
    n1: usize,
    n2: usize,
    strategy: DecompositionStrategy,
) -> Result<(usize, usize)> {
    let n = check_counts(n1, n2)?;
    if !strategy.applies_to(n1, n2) {
        return Err(Error::InvalidArguments(format!(
            "{strategy} does not apply to {n1} control qubits and {n2} control qutrits"
        )));
    }
    Ok(match strategy {
        DecompositionStrategy::AncillaChain => (n - 1, 0),
        DecompositionStrategy::EffectiveQutrit => (n2, 0),
        DecompositionStrategy::QubitAncilla => (0, n1 - 1),
    })
}

/// Swap that moves `activation` onto the highest level of a wire with
/// logical dimension `dim`, or `None` if it is already there.
fn canonicalizer(dim: usize, activation: usize) -> Option<XVariant> {
    match (dim, activation) {
        (2, 0) => Some(XVariant::Swap01),
        (3, 0) => Some(XVariant::Swap02),
        (3, 1) => Some(XVariant::Swap12),
        _ => None,
    }
}

fn uncompute(compute: &[GateOp]) -> Vec<GateOp> {
    compute
        .iter()
        .rev()
        .map(|op| GateOp { variant: op.variant.inverse(), ..op.clone() })
        .collect()
}

/// Lowers Toffoli gates against a growing register, reusing ancillas across
/// gates (every lowering returns its ancillas to `|0⟩`).
pub struct Lowerer {
    spec: WireSpec,
    qutrit_pool: Vec<usize>,
    qubit_pool: Vec<usize>,
    strategy: DecompositionStrategy,
    options: LowerOptions,
}

impl Lowerer {
    pub fn new(spec: WireSpec, strategy: DecompositionStrategy, options: LowerOptions) -> Self {
        Lowerer { spec, qutrit_pool: Vec::new(), qubit_pool: Vec::new(), strategy, options }
    }

    pub fn spec(&self) -> &WireSpec {
        &self.spec
    }

    pub fn into_spec(self) -> WireSpec {
        self.spec
    }

    fn ancillas(&mut self, dim: usize, count: usize) -> Result<Vec<usize>> {
        loop {
            let pool_len = if dim == 3 { self.qutrit_pool.len() } else { self.qubit_pool.len() };
            if pool_len >= count {
                break;
            }
            let w = self.spec.push(Wire::with_role(dim, WireRole::Ancilla))?;
            if dim == 3 {
                self.qutrit_pool.push(w);
            } else {
                self.qubit_pool.push(w);
            }
        }
        let pool = if dim == 3 { &self.qutrit_pool } else { &self.qubit_pool };
        Ok(pool[..count].to_vec())
    }

    /// Lowers one gate. The gate must have at least two controls.
    pub fn lower(&mut self, gate: &GateOp) -> Result<(Vec<GateOp>, Vec<AncillaWire>)> {
        if gate.kind == GateKind::Hadamard {
            return Err(Error::InvalidOp("cannot lower a Hadamard".into()));
        }
        gate.validate(&self.spec)?;
        let n = gate.controls.len();
        if n < 2 {
            return Err(Error::TooFewControls(n));
        }

        let logical = |c: &Control| self.spec.wire(c.wire).logical_dim();
        let n1 = gate.controls.iter().filter(|c| logical(c) == 2).count();
        let n2 = n - n1;
        if !self.strategy.applies_to(n1, n2) {
            let reason = match self.strategy {
                DecompositionStrategy::EffectiveQutrit => "needs at least one control qubit",
                _ => "needs every control to be a qubit",
            };
            return Err(Error::StrategyInapplicable {
                strategy: self.strategy.to_string(),
                reason: reason.into(),
            });
        }

        let mut sandwich = Vec::new();
        let mut canonical = Vec::with_capacity(n);
        for c in &gate.controls {
            let dim = logical(c);
            if let Some(v) = canonicalizer(dim, c.state) {
                sandwich.push(GateOp::x(c.wire, v));
            }
            canonical.push(Control::new(c.wire, dim - 1));
        }

        let (compute, flip, ancilla_wires) = match self.strategy {
            DecompositionStrategy::AncillaChain => self.ancilla_chain(&canonical, gate)?,
            DecompositionStrategy::EffectiveQutrit => self.effective_qutrit(&canonical, gate)?,
            DecompositionStrategy::QubitAncilla => self.qubit_ancilla(&canonical, gate)?,
        };

        let mut ops = sandwich.clone();
        ops.extend(compute.iter().cloned());
        ops.push(flip);
        ops.extend(uncompute(&compute));
        ops.extend(sandwich);

        if self.strategy == DecompositionStrategy::QubitAncilla && self.options.split_binary_toffoli {
            let scratch = self.ancillas(3, 1)?[0];
            ops = ops
                .into_iter()
                .flat_map(|op| {
                    if op.controls.len() == 2 {
                        split_binary_toffoli(&op, scratch)
                    } else {
                        vec![op]
                    }
                })
                .collect();
        }
        for op in &ops {
            op.validate(&self.spec)?;
        }
        Ok((ops, ancilla_wires))
    }

    fn ancilla_chain(
        &mut self,
        controls: &[Control],
        gate: &GateOp,
    ) -> Result<(Vec<GateOp>, GateOp, Vec<AncillaWire>)> {
        let anc = self.ancillas(3, controls.len() - 1)?;
        let mut compute = vec![
            GateOp::cx(controls[0], anc[0], XVariant::Plus1),
            GateOp::cx(controls[1], anc[0], XVariant::Plus1),
        ];
        for i in 1..anc.len() {
            compute.push(GateOp::cx(Control::new(anc[i - 1], 2), anc[i], XVariant::Plus1));
            compute.push(GateOp::cx(controls[i + 1], anc[i], XVariant::Plus1));
        }
        let last = *anc.last().expect("at least one ancilla");
        let flip = GateOp::cx(Control::new(last, 2), gate.target, gate.variant);
        let wires = anc.iter().map(|&wire| AncillaWire { wire, dim: 3 }).collect();
        Ok((compute, flip, wires))
    }

    fn effective_qutrit(
        &mut self,
        controls: &[Control],
        gate: &GateOp,
    ) -> Result<(Vec<GateOp>, GateOp, Vec<AncillaWire>)> {
        let (qubits, qutrits): (Vec<Control>, Vec<Control>) =
            controls.iter().partition(|c| self.spec.wire(c.wire).logical_dim() == 2);
        let anc = self.ancillas(3, qutrits.len())?;

        let mut compute = Vec::new();
        let mut acc = qubits[0];
        for q in &qubits[1..] {
            self.spec.promote(q.wire)?;
            compute.push(GateOp::cx(acc, q.wire, XVariant::Swap12));
            acc = Control::new(q.wire, 2);
        }
        for (t, &a) in qutrits.iter().zip(&anc) {
            compute.push(GateOp::cx(acc, a, XVariant::Plus1));
            compute.push(GateOp::cx(*t, a, XVariant::Plus1));
            acc = Control::new(a, 2);
        }
        let flip = GateOp::cx(acc, gate.target, gate.variant);
        let wires = anc.iter().map(|&wire| AncillaWire { wire, dim: 3 }).collect();
        Ok((compute, flip, wires))
    }

    fn qubit_ancilla(
        &mut self,
        controls: &[Control],
        gate: &GateOp,
    ) -> Result<(Vec<GateOp>, GateOp, Vec<AncillaWire>)> {
        let anc = self.ancillas(2, controls.len() - 1)?;
        let mut compute = Vec::new();
        let mut acc = controls[0];
        for (c, &a) in controls[1..].iter().zip(&anc) {
            compute.push(GateOp::toffoli(vec![acc, *c], a, XVariant::Swap01));
            acc = Control::new(a, 1);
        }
        let flip = GateOp::cx(acc, gate.target, gate.variant);
        let wires = anc.iter().map(|&wire| AncillaWire { wire, dim: 2 }).collect();
        Ok((compute, flip, wires))
    }
}

/// `a ∧ b → t` as five controlled-X gates through a qutrit scratch wire.
fn split_binary_toffoli(op: &GateOp, scratch: usize) -> Vec<GateOp> {
    let (a, b) = (op.controls[0], op.controls[1]);
    vec![
        GateOp::cx(a, scratch, XVariant::Plus1),
        GateOp::cx(b, scratch, XVariant::Plus1),
        GateOp::cx(Control::new(scratch, 2), op.target, op.variant),
        GateOp::cx(b, scratch, XVariant::Plus2),
        GateOp::cx(a, scratch, XVariant::Plus2),
    ]
}

/// Lowers a single generalized Toffoli acting on `spec`. Ancillas are
/// appended after the original wires.
pub fn lower_toffoli(
    spec: &WireSpec,
    gate: &GateOp,
    strategy: DecompositionStrategy,
) -> Result<LoweredCircuit> {
    lower_toffoli_with(spec, gate, strategy, LowerOptions::default())
}

pub fn lower_toffoli_with(
    spec: &WireSpec,
    gate: &GateOp,
    strategy: DecompositionStrategy,
    options: LowerOptions,
) -> Result<LoweredCircuit> {
    let mut lowerer = Lowerer::new(spec.clone(), strategy, options);
    let (ops, ancilla_wires) = lowerer.lower(gate)?;
    let toffoli_count = ops.iter().filter(|op| op.controls.len() >= 2).count();
    Ok(LoweredCircuit {
        spec: lowerer.into_spec(),
        elementary_gate_count: ops.len(),
        toffoli_count,
        ops,
        ancilla_wires,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LowerReport {
    pub lowered_gates: usize,
    pub elementary_gate_count: usize,
    pub toffoli_count: usize,
    pub qutrit_ancillas: usize,
    pub qubit_ancillas: usize,
}

/// Lowers every op with two or more controls. Single-control Toffolis become
/// `ControlledX` and control-free ones `SingleQuditX`.
pub fn lower_circuit(
    circuit: &Circuit,
    strategy: DecompositionStrategy,
    options: LowerOptions,
) -> Result<(Circuit, LowerReport)> {
    let mut lowerer = Lowerer::new(circuit.spec().clone(), strategy, options);
    let mut ops = Vec::with_capacity(circuit.len());
    let mut report = LowerReport::default();
    for op in circuit.ops() {
        match op.controls.len() {
            0 if op.kind == GateKind::GeneralizedToffoli => ops.push(GateOp::x(op.target, op.variant)),
            1 if op.kind == GateKind::GeneralizedToffoli => {
                ops.push(GateOp::cx(op.controls[0], op.target, op.variant))
            }
            0 | 1 => ops.push(op.clone()),
            _ => {
                let (lowered, _) = lowerer.lower(op)?;
                report.lowered_gates += 1;
                ops.extend(lowered);
            }
        }
    }
    report.qutrit_ancillas = lowerer.qutrit_pool.len();
    report.qubit_ancillas = lowerer.qubit_pool.len();
    report.elementary_gate_count = ops.len();
    report.toffoli_count = ops.iter().filter(|op| op.controls.len() >= 2).count();
    let lowered = Circuit::from_parts(lowerer.into_spec(), ops)?;
    Ok((lowered, report))
}
