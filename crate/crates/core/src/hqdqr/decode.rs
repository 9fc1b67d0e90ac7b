// Copyright 2026 The qudisim Authors
// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use serde::Serialize;

use super::image::{Channel, ImageDims, RgbImage};
use super::layout::{RegisterLayout, INTENSITY_TRITS};
use crate::error::{Error, Result};
use crate::sim::ShotHistogram;

/// `max(2, shots / (30·M·N))`: a true outcome expects `shots / (3MN)`.
pub fn default_threshold(shots: u64, dims: ImageDims) -> u64 {
    (shots / (30 * dims.pixel_count() as u64)).max(2)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecodeDiagnostics {
    pub threshold: u64,
    pub shots: u64,
    /// Shots below threshold, outside the register's valid range, or on the
    /// losing side of a conflict.
    pub spurious_shots: u64,
    pub spurious_mass: f64,
    /// Position/channel slots that saw more than one intensity.
    pub conflicts: usize,
    /// Row-major, `[R, G, B]` observed above threshold.
    pub coverage: Vec<[bool; 3]>,
    pub missing_pixels: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecodedImage {
    pub dims: ImageDims,
    /// Row-major; `None` unless all three channels were observed.
    pub pixels: Vec<Option<[u8; 3]>>,
    pub diagnostics: DecodeDiagnostics,
}

impl DecodedImage {
    pub fn is_complete(&self) -> bool {
        self.diagnostics.missing_pixels == 0
    }

    pub fn to_image(&self) -> Option<RgbImage> {
        let pixels = self.pixels.iter().copied().collect::<Option<Vec<_>>>()?;
        RgbImage::new(self.dims.height, self.dims.width, pixels).ok()
    }
}

struct Parsed {
    slot: (usize, usize, Channel),
    value: u8,
}

fn parse(outcome: &[u8], layout: &RegisterLayout) -> Option<Parsed> {
    let spec = layout.wire_spec();
    let (logical, ancillas) = outcome.split_at(layout.len());
    if ancillas.iter().any(|&d| d != 0) {
        return None;
    }
    if logical.iter().enumerate().any(|(w, &d)| d as usize >= spec.dim(w)) {
        return None;
    }
    let trits: [u8; INTENSITY_TRITS] = logical[..INTENSITY_TRITS].try_into().ok()?;
    let value = u8::try_from(super::trits_to_intensity(&trits)).ok()?;
    let channel = Channel::from_digit(logical[layout.channel_wire()] as usize)?;
    let pos: Vec<usize> = logical[layout.channel_wire() + 1..].iter().map(|&d| d as usize).collect();
    let (y, x) = layout.position_of(&pos);
    Some(Parsed { slot: (y, x, channel), value })
}

/// Reads an image back from measurement counts.
///
/// Every shot is measured on all wires, including any ancillas appended by
/// lowering; those must read zero for the outcome to count.
pub fn decode(histogram: &ShotHistogram, dims: ImageDims, threshold: u64) -> Result<DecodedImage> {
    let layout = RegisterLayout::new(dims)?;
    let mut spurious = 0u64;
    let mut slots: BTreeMap<(usize, usize, Channel), Vec<(u64, u8)>> = BTreeMap::new();
    for (outcome, &count) in histogram.counts() {
        if outcome.len() < layout.len() {
            return Err(Error::LayoutMismatch(format!(
                "outcome has {} digits, {}x{} image needs at least {}",
                outcome.len(),
                dims.height,
                dims.width,
                layout.len()
            )));
        }
        match parse(outcome, &layout) {
            Some(p) if count >= threshold => slots.entry(p.slot).or_default().push((count, p.value)),
            _ => spurious += count,
        }
    }

    let mut channels = vec![[None::<u8>; 3]; dims.pixel_count()];
    let mut conflicts = 0;
    for ((y, x, c), mut seen) in slots {
        // Highest count wins, ties to the smaller value.
        seen.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        if seen.len() > 1 {
            conflicts += 1;
            spurious += seen[1..].iter().map(|s| s.0).sum::<u64>();
        }
        channels[y * dims.width + x][c.digit()] = Some(seen[0].1);
    }

    let coverage: Vec<[bool; 3]> = channels.iter().map(|p| p.map(|v| v.is_some())).collect();
    let pixels: Vec<Option<[u8; 3]>> =
        channels.iter().map(|p| Some([p[0]?, p[1]?, p[2]?])).collect();
    let shots = histogram.shots();
    Ok(DecodedImage {
        dims,
        diagnostics: DecodeDiagnostics {
            threshold,
            shots,
            spurious_shots: spurious,
            spurious_mass: if shots == 0 { 0.0 } else { spurious as f64 / shots as f64 },
            conflicts,
            coverage,
            missing_pixels: pixels.iter().filter(|p| p.is_none()).count(),
        },
        pixels,
    })
}
