// Copyright 2026 The qudisim Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Colour channel, in the order used by the channel wire's digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Channel {
    R,
    G,
    B,
}

impl Channel {
    pub const ALL: [Channel; 3] = [Channel::R, Channel::G, Channel::B];

    /// Digit of the channel wire that selects this channel.
    pub fn digit(self) -> usize {
        self as usize
    }

    pub fn from_digit(d: usize) -> Option<Channel> {
        Channel::ALL.get(d).copied()
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Channel::R => "R",
            Channel::G => "G",
            Channel::B => "B",
        })
    }
}

impl FromStr for Channel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "R" => Ok(Channel::R),
            "G" => Ok(Channel::G),
            "B" => Ok(Channel::B),
            _ => Err(Error::InvalidArguments(format!("unknown channel {s:?}, expected R, G or B"))),
        }
    }
}

/// Radix decomposition of one image axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Axis {
    pub len: usize,
    /// 2 or 3. A length-1 axis has no digits and reports radix 2.
    pub radix: usize,
    pub digits: usize,
}

impl Axis {
    pub fn new(len: usize) -> Option<Axis> {
        if len == 0 {
            return None;
        }
        for radix in [2, 3] {
            let (mut rest, mut digits) = (len, 0);
            while rest % radix == 0 {
                rest /= radix;
                digits += 1;
            }
            if rest == 1 {
                return Some(Axis { len, radix, digits });
            }
        }
        None
    }

    /// Digits of `coord`, most significant first.
    pub fn digits_of(&self, mut coord: usize) -> Vec<usize> {
        let mut out = vec![0; self.digits];
        for d in out.iter_mut().rev() {
            *d = coord % self.radix;
            coord /= self.radix;
        }
        out
    }

    pub fn coord_of(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &d| acc * self.radix + d)
    }
}

/// Image height (`M`, rows, `Y`) and width (`N`, columns, `X`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageDims {
    pub height: usize,
    pub width: usize,
}

impl ImageDims {
    pub fn new(height: usize, width: usize) -> Result<Self> {
        let dims = ImageDims { height, width };
        dims.axes()?;
        Ok(dims)
    }

    /// Row and column axes. Each must be a power of 2 or of 3.
    pub fn axes(&self) -> Result<(Axis, Axis)> {
        match (Axis::new(self.height), Axis::new(self.width)) {
            (Some(y), Some(x)) => Ok((y, x)),
            _ => Err(Error::InvalidDims { height: self.height, width: self.width }),
        }
    }

    pub fn pixel_count(&self) -> usize {
        self.height * self.width
    }
}

impl FromStr for ImageDims {
    type Err = Error;

    /// Parses `HxW`, e.g. `3x2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArguments(format!("expected HEIGHTxWIDTH, got {s:?}"));
        let (h, w) = s.split_once(['x', 'X']).ok_or_else(bad)?;
        let h = h.trim().parse().map_err(|_| bad())?;
        let w = w.trim().parse().map_err(|_| bad())?;
        ImageDims::new(h, w)
    }
}

/// 8-bit RGB image, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RgbImage {
    dims: ImageDims,
    pixels: Vec<[u8; 3]>,
}

impl RgbImage {
    pub fn new(height: usize, width: usize, pixels: Vec<[u8; 3]>) -> Result<Self> {
        let dims = ImageDims::new(height, width)?;
        if pixels.len() != dims.pixel_count() {
            return Err(Error::ShapeMismatch(format!(
                "{height}x{width} image needs {} pixels, got {}",
                dims.pixel_count(),
                pixels.len()
            )));
        }
        Ok(RgbImage { dims, pixels })
    }

    pub fn filled(height: usize, width: usize, rgb: [u8; 3]) -> Result<Self> {
        RgbImage::new(height, width, vec![rgb; height * width])
    }

    pub fn from_fn(height: usize, width: usize, mut f: impl FnMut(usize, usize) -> [u8; 3]) -> Result<Self> {
        let pixels = (0..height).flat_map(|y| (0..width).map(move |x| (y, x))).map(|(y, x)| f(y, x)).collect();
        RgbImage::new(height, width, pixels)
    }

    pub fn dims(&self) -> ImageDims {
        self.dims
    }

    pub fn height(&self) -> usize {
        self.dims.height
    }

    pub fn width(&self) -> usize {
        self.dims.width
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }

    pub fn pixel(&self, y: usize, x: usize) -> [u8; 3] {
        self.pixels[y * self.dims.width + x]
    }

    pub fn set_pixel(&mut self, y: usize, x: usize, rgb: [u8; 3]) {
        self.pixels[y * self.dims.width + x] = rgb;
    }

    pub fn value(&self, y: usize, x: usize, c: Channel) -> u8 {
        self.pixel(y, x)[c.digit()]
    }

    /// `(y, x, rgb)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, [u8; 3])> + '_ {
        let w = self.dims.width;
        self.pixels.iter().enumerate().map(move |(i, &p)| (i / w, i % w, p))
    }
}
