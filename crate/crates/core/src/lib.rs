// Copyright 2026 The qudisim Authors
// SPDX-License-Identifier: Apache-2.0

pub mod circuit;
pub mod cli;
pub mod compress;
pub mod decompose;
pub mod error;
pub mod gates;
pub mod hqdqr;
pub mod imgops;
pub mod ppm;
pub mod sim;
pub mod state;
