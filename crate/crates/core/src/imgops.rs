// Copyright 2026 The qudisim Authors
// SPDX-License-Identifier: Apache-2.0

//! Colour operations on encoded images.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, GateOp};
use crate::error::{Error, Result};
use crate::gates::XVariant;
use crate::hqdqr::{intensity_to_trits, layout_of_circuit, Channel, RgbImage, INTENSITY_TRITS};
use crate::state::WireRole;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChannelPair {
    RG,
    RB,
    GB,
}

impl ChannelPair {
    pub const ALL: [ChannelPair; 3] = [ChannelPair::RG, ChannelPair::RB, ChannelPair::GB];

    pub fn variant(self) -> XVariant {
        match self {
            ChannelPair::RG => XVariant::Swap01,
            ChannelPair::RB => XVariant::Swap02,
            ChannelPair::GB => XVariant::Swap12,
        }
    }

    pub fn channels(self) -> (Channel, Channel) {
        match self {
            ChannelPair::RG => (Channel::R, Channel::G),
            ChannelPair::RB => (Channel::R, Channel::B),
            ChannelPair::GB => (Channel::G, Channel::B),
        }
    }

    /// Classical effect on an image.
    pub fn apply_to_image(self, image: &RgbImage) -> RgbImage {
        let (a, b) = self.channels();
        let mut out = image.clone();
        for (y, x, mut p) in image.iter() {
            p.swap(a.digit(), b.digit());
            out.set_pixel(y, x, p);
        }
        out
    }
}

impl fmt::Display for ChannelPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.channels();
        write!(f, "{a}{b}")
    }
}

impl FromStr for ChannelPair {
    type Err = Error;

    /// Accepts either order, e.g. `RG` or `gr`.
    fn from_str(s: &str) -> Result<Self> {
        let mut cs: Vec<char> = s.to_ascii_uppercase().chars().collect();
        cs.sort_by_key(|c| "RGB".find(*c));
        match cs.iter().collect::<String>().as_str() {
            "RG" => Ok(ChannelPair::RG),
            "RB" => Ok(ChannelPair::RB),
            "GB" => Ok(ChannelPair::GB),
            _ => Err(Error::InvalidArguments(format!("unknown channel pair {s:?}, expected RG, RB or GB"))),
        }
    }
}

/// Appends the channel-wire swap that exchanges two colour channels.
pub fn channel_swap(circuit: &Circuit, pair: ChannelPair) -> Result<Circuit> {
    let wire = circuit
        .spec()
        .find_role(WireRole::Channel)
        .ok_or_else(|| Error::LayoutMismatch("circuit has no channel wire".into()))?;
    let mut out = circuit.clone();
    out.push(GateOp::x(wire, pair.variant()))?;
    Ok(out)
}

/// Appends gates rewriting `channel` of every pixel of `image` (the image
/// `circuit` currently encodes) through `transform`. Each changed trit gets
/// one generalized Toffoli on that pixel and channel applying the cyclic
/// shift from the old trit to the new one.
///
/// Returns the extended circuit and the image it now encodes.
pub fn one_channel_op(
    circuit: &Circuit,
    image: &RgbImage,
    channel: Channel,
    transform: impl Fn(u8) -> u32,
) -> Result<(Circuit, RgbImage)> {
    let layout = layout_of_circuit(circuit, image.dims())?;
    let mut out = circuit.clone();
    let mut result = image.clone();
    for (y, x, mut p) in image.iter() {
        let old = p[channel.digit()];
        let new = transform(old);
        let new_u8 = u8::try_from(new).map_err(|_| Error::TransformOutOfRange { input: old, output: new })?;
        let before = intensity_to_trits(old as u32)?;
        let after = intensity_to_trits(new)?;
        for i in 0..INTENSITY_TRITS {
            let (a, b) = (before[INTENSITY_TRITS - 1 - i], after[INTENSITY_TRITS - 1 - i]);
            if a != b {
                out.push(GateOp::toffoli(
                    layout.pixel_controls(y, x, channel),
                    layout.intensity_wire(i),
                    XVariant::shift(a as usize, b as usize),
                ))?;
            }
        }
        p[channel.digit()] = new_u8;
        result.set_pixel(y, x, p);
    }
    Ok((out, result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Control, GateKind};
    use crate::hqdqr::{build_encoding_circuit, expected_state};
    use crate::sim::run_exact;

    fn image() -> RgbImage {
        RgbImage::from_fn(3, 2, |y, x| [(y * 80 + x * 3) as u8, (250 - y * 7) as u8, (x * 100 + 1) as u8]).unwrap()
    }

    fn assert_encodes(c: &Circuit, img: &RgbImage) {
        let got = run_exact(c).unwrap();
        let want = expected_state(img).unwrap();
        let diff = got.amplitudes().iter().zip(want.amplitudes()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(diff < 1e-10, "diff {diff}");
    }

    #[test]
    fn swap_appends_one_gate_and_swaps_channels() {
        let img = image();
        let base = build_encoding_circuit(&img, None).unwrap();
        for pair in ChannelPair::ALL {
            let swapped = channel_swap(&base, pair).unwrap();
            assert_eq!(swapped.len(), base.len() + 1);
            assert_eq!(swapped.ops().last().unwrap(), &GateOp::x(6, pair.variant()));
            assert_encodes(&swapped, &pair.apply_to_image(&img));
            assert_encodes(&channel_swap(&swapped, pair).unwrap(), &img);
        }
        assert_eq!(ChannelPair::RB.variant(), XVariant::Swap02);
    }

    #[test]
    fn pair_parse() {
        assert_eq!("gr".parse::<ChannelPair>().unwrap(), ChannelPair::RG);
        assert_eq!("BG".parse::<ChannelPair>().unwrap(), ChannelPair::GB);
        assert!("RR".parse::<ChannelPair>().is_err());
        assert_eq!(ChannelPair::RB.to_string(), "RB");
    }

    #[test]
    fn identity_transform_adds_nothing() {
        let img = image();
        let base = build_encoding_circuit(&img, None).unwrap();
        let (c, out) = one_channel_op(&base, &img, Channel::G, u32::from).unwrap();
        assert_eq!(c.len(), base.len());
        assert_eq!(out, img);
    }

    #[test]
    fn clear_single_red_one() {
        let img = RgbImage::filled(1, 1, [1, 0, 0]).unwrap();
        let base = build_encoding_circuit(&img, None).unwrap();
        let (c, out) = one_channel_op(&base, &img, Channel::R, |_| 0).unwrap();
        assert_eq!(c.len(), base.len() + 1);
        let op = c.ops().last().unwrap();
        assert_eq!(op.kind, GateKind::GeneralizedToffoli);
        assert_eq!((op.target, op.variant), (5, XVariant::Plus2));
        assert_eq!(op.controls, vec![Control::new(6, 0)]);
        assert_eq!(out.pixel(0, 0), [0, 0, 0]);
        assert_encodes(&c, &out);
    }

    #[test]
    fn invert_red() {
        let img = image();
        let base = build_encoding_circuit(&img, None).unwrap();
        let (c, out) = one_channel_op(&base, &img, Channel::R, |v| 255 - v as u32).unwrap();
        assert!(c.len() - base.len() <= 6 * 6);
        for (y, x, p) in img.iter() {
            assert_eq!(out.pixel(y, x), [255 - p[0], p[1], p[2]]);
        }
        assert_encodes(&c, &out);
    }

    #[test]
    fn errors() {
        let img = image();
        let base = build_encoding_circuit(&img, None).unwrap();
        assert!(matches!(
            one_channel_op(&base, &img, Channel::B, |v| v as u32 + 200),
            Err(Error::TransformOutOfRange { .. })
        ));
        let other = RgbImage::filled(2, 2, [0, 0, 0]).unwrap();
        assert!(matches!(one_channel_op(&base, &other, Channel::R, u32::from), Err(Error::LayoutMismatch(_))));
        let bare = Circuit::new(crate::state::WireSpec::new(&[3, 3]).unwrap());
        assert!(matches!(channel_swap(&bare, ChannelPair::RG), Err(Error::LayoutMismatch(_))));
    }
}
