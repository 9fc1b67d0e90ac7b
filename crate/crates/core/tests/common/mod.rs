// Copyright 2026 The qudisim Authors
// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qudisim::hqdqr::RgbImage;

/// 3x2 stand-in for the encoding demo image: distinct mid-tone colours, red
/// nonzero at the origin so the all-zero outcome is never a true outcome.
pub fn demo_image() -> RgbImage {
    RgbImage::new(
        3,
        2,
        vec![[200, 60, 30], [40, 180, 70], [50, 90, 210], [230, 210, 40], [120, 40, 160], [90, 200, 220]],
    )
    .unwrap()
}

/// 3x2 greyscale image replicated into all channels. The lowest trit is 1
/// on the whole first column and nowhere else.
pub fn column_image() -> RgbImage {
    let grey = [[1u8, 0], [4, 3], [7, 5]];
    RgbImage::from_fn(3, 2, |y, x| [grey[y][x]; 3]).unwrap()
}

pub fn random_image(rng: &mut impl Rng, height: usize, width: usize) -> RgbImage {
    RgbImage::from_fn(height, width, |_, _| [rng.gen(), rng.gen(), rng.gen()]).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Dims cases exercised by the encoding tests, `(height, width)`.
pub const DIMS_CASES: [(usize, usize); 5] = [(2, 2), (3, 2), (2, 3), (3, 3), (1, 1)];
