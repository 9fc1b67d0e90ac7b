// Copyright 2026 The qudisim Authors
// SPDX-License-Identifier: Apache-2.0

//! Encoding compression by multi-valued logic minimization.
//!
//! For each (channel, trit, value) bitplane, the set of pixel positions is
//! written as a sum of product terms over the position digits and merged:
//! two terms that agree on every variable but one are replaced by a single
//! term whose literal set for that variable is the union. A literal set
//! covering the variable's whole domain drops the variable from the control
//! list. Merging is repeated to a fixpoint.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::circuit::{Circuit, Control, GateOp};
use crate::error::Result;
use crate::gates::XVariant;
use crate::hqdqr::{intensity_to_trits, superposition_ops, Channel, RegisterLayout, RgbImage, INTENSITY_TRITS};

/// Identifies one bitplane: positions where trit `trit` of `channel` equals
/// `value` (1 or 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PlaneKey {
    pub channel: Channel,
    pub trit: u8,
    pub value: u8,
}

/// Pixel `(y, x)`.
pub type Position = (usize, usize);

/// One literal set per position digit, as a bitmask of allowed digits.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ProductTerm {
    pub literals: Vec<u8>,
}

impl ProductTerm {
    fn full(radix: usize) -> u8 {
        (1u8 << radix) - 1
    }

    /// Variables that still constrain the position, with their digit sets.
    pub fn constrained(&self, radices: &[usize]) -> Vec<(usize, Vec<usize>)> {
        self.literals
            .iter()
            .zip(radices)
            .enumerate()
            .filter(|(_, (&mask, &r))| mask != Self::full(r))
            .map(|(v, (&mask, &r))| (v, (0..r).filter(|d| mask & (1 << d) != 0).collect()))
            .collect()
    }

    /// Every digit assignment the term covers.
    pub fn expand(&self, radices: &[usize]) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for (&mask, &r) in self.literals.iter().zip(radices) {
            let digits: Vec<usize> = (0..r).filter(|d| mask & (1 << d) != 0).collect();
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    digits.iter().map(move |&d| {
                        let mut p = prefix.clone();
                        p.push(d);
                        p
                    })
                })
                .collect();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cover {
    pub terms: Vec<ProductTerm>,
    /// Radix of each position digit, row digits first.
    pub radices: Vec<usize>,
}

impl Cover {
    pub fn positions(&self, layout: &RegisterLayout) -> BTreeSet<Position> {
        self.terms
            .iter()
            .flat_map(|t| t.expand(&self.radices))
            .map(|d| layout.position_of(&d))
            .collect()
    }

    /// Generalized Toffolis needed: one per combination of the constrained
    /// literals of each term.
    pub fn toffoli_count(&self) -> usize {
        self.terms
            .iter()
            .map(|t| t.constrained(&self.radices).iter().map(|(_, ds)| ds.len()).product::<usize>())
            .sum()
    }
}

/// Positions of every bitplane, including empty ones.
pub fn bitplanes(image: &RgbImage) -> BTreeMap<PlaneKey, BTreeSet<Position>> {
    let mut planes = BTreeMap::new();
    for channel in Channel::ALL {
        for trit in 0..INTENSITY_TRITS as u8 {
            for value in [1, 2] {
                planes.insert(PlaneKey { channel, trit, value }, BTreeSet::new());
            }
        }
    }
    for (y, x, _) in image.iter() {
        for channel in Channel::ALL {
            let trits = intensity_to_trits(image.value(y, x, channel) as u32).expect("u8 fits six trits");
            for (trit, &value) in trits.iter().rev().enumerate() {
                if value != 0 {
                    planes.get_mut(&PlaneKey { channel, trit: trit as u8, value }).unwrap().insert((y, x));
                }
            }
        }
    }
    planes
}

fn radices(layout: &RegisterLayout) -> Vec<usize> {
    let mut r = vec![layout.y.radix; layout.y.digits];
    r.extend(vec![layout.x.radix; layout.x.digits]);
    r
}

/// Merges singleton terms for `positions` to a fixpoint.
pub fn minimize_cover(positions: &BTreeSet<Position>, layout: &RegisterLayout) -> Cover {
    let radices = radices(layout);
    let mut terms: BTreeSet<ProductTerm> = positions
        .iter()
        .map(|&(y, x)| ProductTerm { literals: layout.position_digits(y, x).into_iter().map(|d| 1u8 << d).collect() })
        .collect();
    loop {
        let before = terms.len();
        for v in 0..radices.len() {
            let mut buckets: BTreeMap<Vec<u8>, u8> = BTreeMap::new();
            for t in &terms {
                let mut key = t.literals.clone();
                key[v] = 0;
                *buckets.entry(key).or_insert(0) |= t.literals[v];
            }
            terms = buckets
                .into_iter()
                .map(|(mut literals, mask)| {
                    literals[v] = mask;
                    ProductTerm { literals }
                })
                .collect();
        }
        if terms.len() == before {
            break;
        }
    }
    Cover { terms: terms.into_iter().collect(), radices }
}

fn flip_for(value: u8) -> XVariant {
    if value == 1 {
        XVariant::Plus1
    } else {
        XVariant::Plus2
    }
}

/// Toffolis writing one plane's cover.
fn cover_ops(cover: &Cover, key: PlaneKey, layout: &RegisterLayout) -> Vec<GateOp> {
    let target = layout.intensity_wire(key.trit as usize);
    let first_position_wire = layout.channel_wire() + 1;
    let mut ops = Vec::new();
    for term in &cover.terms {
        let mut combos: Vec<Vec<Control>> = vec![Vec::new()];
        for (v, digits) in term.constrained(&cover.radices) {
            combos = combos
                .into_iter()
                .flat_map(|prefix| {
                    digits.iter().map(move |&d| {
                        let mut c = prefix.clone();
                        c.push(Control::new(first_position_wire + v, d));
                        c
                    })
                })
                .collect();
        }
        for mut controls in combos {
            controls.push(Control::new(layout.channel_wire(), key.channel.digit()));
            ops.push(GateOp::toffoli(controls, target, flip_for(key.value)));
        }
    }
    ops
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlaneReport {
    pub key: PlaneKey,
    pub positions: usize,
    pub terms: usize,
    pub toffolis: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompressionReport {
    pub planes: Vec<PlaneReport>,
    pub uncompressed_toffolis: usize,
    pub emitted_toffolis: usize,
    pub ratio: f64,
}

impl CompressionReport {
    /// Nonempty planes, then a totals row and the ratio.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("channel,trit,value,positions,terms,toffolis\n");
        for p in self.planes.iter().filter(|p| p.positions > 0) {
            let _ = writeln!(out, "{},{},{},{},{},{}", p.key.channel, p.key.trit, p.key.value, p.positions, p.terms, p.toffolis);
        }
        let terms: usize = self.planes.iter().map(|p| p.terms).sum();
        let _ = writeln!(out, "total,,,{},{},{}", self.uncompressed_toffolis, terms, self.emitted_toffolis);
        let _ = writeln!(out, "ratio,,,,,{:.6}", self.ratio);
        out
    }
}

/// `1 - emitted / uncompressed`, zero when there is nothing to encode.
pub fn compression_ratio(emitted: usize, uncompressed: usize) -> f64 {
    if uncompressed == 0 {
        0.0
    } else {
        1.0 - emitted as f64 / uncompressed as f64
    }
}

/// Compressed encoding circuit with its per-plane report.
pub fn compress_encoding(image: &RgbImage) -> Result<(Circuit, CompressionReport)> {
    let layout = RegisterLayout::new(image.dims())?;
    let mut ops = superposition_ops(&layout);
    let mut planes = Vec::new();
    for (key, positions) in bitplanes(image) {
        let cover = minimize_cover(&positions, &layout);
        let plane_ops = cover_ops(&cover, key, &layout);
        planes.push(PlaneReport { key, positions: positions.len(), terms: cover.terms.len(), toffolis: plane_ops.len() });
        ops.extend(plane_ops);
    }
    let uncompressed: usize = planes.iter().map(|p| p.positions).sum();
    let emitted: usize = planes.iter().map(|p| p.toffolis).sum();
    let report = CompressionReport {
        planes,
        uncompressed_toffolis: uncompressed,
        emitted_toffolis: emitted,
        ratio: compression_ratio(emitted, uncompressed),
    };
    Ok((Circuit::from_parts(layout.wire_spec(), ops)?, report))
}

pub fn compressed_encoding_circuit(image: &RgbImage) -> Result<(Circuit, f64)> {
    let (circuit, report) = compress_encoding(image)?;
    Ok((circuit, report.ratio))
}
