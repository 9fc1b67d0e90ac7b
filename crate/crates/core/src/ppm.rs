// Copyright 2026 The qudisim Authors
// SPDX-License-Identifier: Apache-2.0

//! Netpbm colour images: `P3` (ASCII) and `P6` (binary), maxval 255.
//!
//! The header is `magic width height maxval`, whitespace separated, with `#`
//! comments running to end of line. In `P6` exactly one whitespace byte
//! follows maxval before the raster.

use crate::error::{Error, Result};
use crate::hqdqr::RgbImage;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PpmFormat {
    Ascii,
    Binary,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_space(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&b| b != b'\n') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Option<&[u8]> {
        self.skip_space();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#') {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.bytes[start..self.pos])
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        let tok = self.token().ok_or_else(|| Error::Ppm(format!("missing {what}")))?;
        std::str::from_utf8(tok)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Ppm(format!("bad {what} {:?}", String::from_utf8_lossy(tok))))
    }
}

pub fn parse_ppm(bytes: &[u8]) -> Result<RgbImage> {
    let mut cur = Cursor { bytes, pos: 0 };
    let format = match cur.token() {
        Some(b"P3") => PpmFormat::Ascii,
        Some(b"P6") => PpmFormat::Binary,
        _ => return Err(Error::Ppm("expected magic P3 or P6".into())),
    };
    let width = cur.number("width")?;
    let height = cur.number("height")?;
    let maxval = cur.number("maxval")?;
    if maxval != 255 {
        return Err(Error::Ppm(format!("maxval {maxval} unsupported, expected 255")));
    }
    let count = width
        .checked_mul(height)
        .filter(|&c| c > 0)
        .ok_or_else(|| Error::Ppm(format!("bad size {width}x{height}")))?;
    let mut samples = Vec::with_capacity(count * 3);
    match format {
        PpmFormat::Ascii => {
            for _ in 0..count * 3 {
                let v = cur.number("sample")?;
                samples.push(u8::try_from(v).map_err(|_| Error::Ppm(format!("sample {v} exceeds maxval")))?);
            }
        }
        PpmFormat::Binary => {
            if !bytes.get(cur.pos).is_some_and(u8::is_ascii_whitespace) {
                return Err(Error::Ppm("missing whitespace after maxval".into()));
            }
            let raster = &bytes[cur.pos + 1..];
            if raster.len() < count * 3 {
                return Err(Error::Ppm(format!("raster has {} bytes, expected {}", raster.len(), count * 3)));
            }
            samples.extend_from_slice(&raster[..count * 3]);
        }
    }
    let pixels = samples.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
    RgbImage::new(height, width, pixels)
}

pub fn write_ppm(image: &RgbImage, format: PpmFormat) -> Vec<u8> {
    let (w, h) = (image.width(), image.height());
    match format {
        PpmFormat::Binary => {
            let mut out = format!("P6\n{w} {h}\n255\n").into_bytes();
            out.extend(image.pixels().iter().flatten());
            out
        }
        PpmFormat::Ascii => {
            let mut out = format!("P3\n{w} {h}\n255\n");
            for row in image.pixels().chunks(w) {
                let line: Vec<String> = row.iter().flatten().map(u8::to_string).collect();
                out.push_str(&line.join(" "));
                out.push('\n');
            }
            out.into_bytes()
        }
    }
}
