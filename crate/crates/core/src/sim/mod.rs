// Copyright 2026 The qudisim Authors
// SPDX-License-Identifier: Apache-2.0

//! Circuit execution: exact evolution, unitary extraction and sampling.
//!
//! Noisy sampling uses Monte-Carlo trajectories. Every op after the last
//! Hadamard, and every Weyl error, maps basis states to basis states up to a
//! phase. A trajectory therefore only needs a dense state for the prefix up
//! to the last Hadamard (restricted to the wires that prefix touches); the
//! sampled basis state is then pushed through the rest of the circuit digit
//! by digit. Phases are dropped since they cannot change a terminal
//! computational-basis measurement.

pub mod histogram;
pub mod noise;

use std::collections::HashMap;

use ndarray::Array2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::circuit::{apply_gate, apply_gate_to_digits, Circuit, Control, GateKind, GateOp};
use crate::error::{Error, Result};
use crate::state::{digits_to_index, index_to_digits, MixedRadixIndex, MixedRadixState, Wire, WireSpec};

pub use histogram::ShotHistogram;
pub use noise::{depolarizing_kraus, weyl_operator, NoiseModel, WeylError};

/// Largest register for which [`circuit_unitary`] builds a dense matrix.
pub const MAX_UNITARY_DIM: usize = 4096;

/// Final state of `circuit` applied to `|0…0⟩`.
pub fn run_exact(circuit: &Circuit) -> Result<MixedRadixState> {
    let mut state = MixedRadixState::new_zero_state(circuit.spec())?;
    for op in circuit.ops() {
        apply_gate(&mut state, op)?;
    }
    Ok(state)
}

/// Runs `circuit` on an arbitrary input state over the same register.
pub fn run_from(circuit: &Circuit, mut state: MixedRadixState) -> Result<MixedRadixState> {
    if state.spec().dims() != circuit.spec().dims() {
        return Err(Error::ShapeMismatch("state and circuit registers differ".into()));
    }
    for op in circuit.ops() {
        apply_gate(&mut state, op)?;
    }
    Ok(state)
}

/// Ordered product of the circuit's embedded gate unitaries, built one
/// column (basis input) at a time.
pub fn circuit_unitary(circuit: &Circuit) -> Result<Array2<Complex64>> {
    let dim = circuit.spec().total_dim();
    if dim > MAX_UNITARY_DIM {
        return Err(Error::DimensionTooLarge(dim));
    }
    let mut u = Array2::zeros((dim, dim));
    for col in 0..dim {
        let state = run_from(circuit, MixedRadixState::basis_state(circuit.spec(), col)?)?;
        for (row, a) in state.amplitudes().iter().enumerate() {
            u[[row, col]] = *a;
        }
    }
    Ok(u)
}

fn shot_rng(seed: u64, shot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shot);
    rng
}

/// Cumulative distribution for inverse-CDF sampling.
struct Cdf(Vec<f64>);

impl Cdf {
    fn new(probs: &[f64]) -> Self {
        let mut acc = 0.0;
        Cdf(probs
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect())
    }

    fn sample(&self, u: f64) -> usize {
        let total = *self.0.last().unwrap_or(&0.0);
        let idx = self.0.partition_point(|&c| c <= u * total);
        if idx < self.0.len() {
            return idx;
        }
        // Rounding pushed u past the end: take the last outcome with mass.
        let mut i = self.0.len() - 1;
        while i > 0 && self.0[i] == self.0[i - 1] {
            i -= 1;
        }
        i
    }
}

/// Samples `shots` terminal measurements of every wire.
///
/// Shot `s` draws from its own ChaCha8 stream `s` under `seed`, so the
/// histogram does not depend on thread count or scheduling. With noise the
/// circuit must be lowered (every op on at most two wires).
pub fn sample_shots(
    circuit: &Circuit,
    shots: u64,
    noise: Option<&NoiseModel>,
    seed: u64,
) -> Result<ShotHistogram> {
    if shots == 0 {
        return Err(Error::InvalidArguments("shots must be at least 1".into()));
    }
    if noise.is_some() {
        if let Some(i) = circuit.ops().iter().position(|op| op.arity() > 2) {
            return Err(Error::NoiseOnUnloweredCircuit(i));
        }
    }
    let exact = Cdf::new(&run_exact(circuit)?.probabilities());
    let noise = noise.filter(|n| !n.is_noiseless());
    let plan = noise.map(|_| TrajectoryPlan::new(circuit)).transpose()?;

    let counts = (0..shots)
        .into_par_iter()
        .map(|shot| -> Result<usize> {
            let mut rng = shot_rng(seed, shot);
            let u: f64 = rng.gen();
            match (noise, &plan) {
                (Some(model), Some(plan)) => {
                    let errors = sample_errors(&mut rng, circuit, model);
                    if errors.is_empty() {
                        Ok(exact.sample(u))
                    } else {
                        plan.run(&errors, u)
                    }
                }
                _ => Ok(exact.sample(u)),
            }
        })
        .try_fold(HashMap::new, |mut acc: HashMap<usize, u64>, idx| {
            *acc.entry(idx?).or_insert(0) += 1;
            Ok::<_, Error>(acc)
        })
        .try_reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            Ok(a)
        })?;

    let mut hist = ShotHistogram::new();
    for (index, count) in counts {
        let digits = index_to_digits(index, circuit.spec())?;
        hist.add(digits.0.iter().map(|&d| d as u8).collect(), count);
    }
    Ok(hist)
}

/// Draws the error branch after every op, in circuit order.
pub fn sample_errors<R: Rng>(rng: &mut R, circuit: &Circuit, model: &NoiseModel) -> Vec<WeylError> {
    let spec = circuit.spec();
    let mut errors = Vec::new();
    for (op_index, op) in circuit.ops().iter().enumerate() {
        let dim: usize = op.wires().iter().map(|&w| spec.dim(w)).product();
        let lambda = model.strength_for_arity(op.arity());
        if let Some((shift, clock)) = noise::sample_weyl(rng, dim, lambda) {
            errors.push(WeylError { op_index, shift, clock });
        }
    }
    errors
}

/// Shifts the joint index of `wires` by `shift` (the `X` part of a Weyl
/// operator).
fn shift_digits(digits: &mut [usize], wires: &[usize], spec: &WireSpec, shift: usize) {
    let dims: Vec<usize> = wires.iter().map(|&w| spec.dim(w)).collect();
    let total: usize = dims.iter().product();
    let mut joint = wires.iter().zip(&dims).fold(0, |acc, (&w, &d)| acc * d + digits[w]);
    joint = (joint + shift) % total;
    for (&w, &d) in wires.iter().zip(&dims).rev() {
        digits[w] = joint % d;
        joint /= d;
    }
}

/// Precomputed split of a circuit into a dense prefix and a basis-mapping
/// suffix.
struct TrajectoryPlan<'a> {
    circuit: &'a Circuit,
    /// Ops `[0, prefix_len)` run on the dense sub-register.
    prefix_len: usize,
    /// Original wire index of each sub-register wire.
    sub_wires: Vec<usize>,
    sub_spec: WireSpec,
    sub_ops: Vec<GateOp>,
}

impl<'a> TrajectoryPlan<'a> {
    fn new(circuit: &'a Circuit) -> Result<Self> {
        let prefix_len = circuit
            .ops()
            .iter()
            .rposition(|op| op.kind == GateKind::Hadamard)
            .map_or(0, |i| i + 1);
        let prefix = &circuit.ops()[..prefix_len];
        let mut sub_wires: Vec<usize> = prefix.iter().flat_map(|op| op.wires()).collect();
        sub_wires.sort_unstable();
        sub_wires.dedup();
        let sub_spec = WireSpec::from_wires(
            sub_wires.iter().map(|&w| circuit.spec().wire(w).clone()).collect::<Vec<Wire>>(),
        )?;
        let remap = |w: usize| sub_wires.binary_search(&w).expect("prefix wire");
        let sub_ops = prefix
            .iter()
            .map(|op| GateOp {
                controls: op.controls.iter().map(|c| Control::new(remap(c.wire), c.state)).collect(),
                target: remap(op.target),
                ..op.clone()
            })
            .collect();
        Ok(TrajectoryPlan { circuit, prefix_len, sub_wires, sub_spec, sub_ops })
    }

    fn run(&self, errors: &[WeylError], u: f64) -> Result<usize> {
        let spec = self.circuit.spec();
        let mut errors = errors.iter().peekable();

        let mut sub = MixedRadixState::new_zero_state(&self.sub_spec)?;
        for (i, op) in self.sub_ops.iter().enumerate() {
            apply_gate(&mut sub, op)?;
            while let Some(e) = errors.next_if(|e| e.op_index == i) {
                let wires = op.wires();
                let dim: usize = wires.iter().map(|&w| self.sub_spec.dim(w)).product();
                sub.apply_matrix_unchecked(&wires, &weyl_operator(dim, e.shift, e.clock));
            }
        }
        let sub_index = Cdf::new(&sub.probabilities()).sample(u);
        let sub_digits = index_to_digits(sub_index, &self.sub_spec)?;

        let mut digits = vec![0usize; spec.len()];
        for (&w, &d) in self.sub_wires.iter().zip(&sub_digits.0) {
            digits[w] = d;
        }
        for (i, op) in self.circuit.ops().iter().enumerate().skip(self.prefix_len) {
            apply_gate_to_digits(&mut digits, op, spec)?;
            while let Some(e) = errors.next_if(|e| e.op_index == i) {
                shift_digits(&mut digits, &op.wires(), spec, e.shift);
            }
        }
        digits_to_index(&MixedRadixIndex(digits), spec)
    }
}
