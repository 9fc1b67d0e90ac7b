// Copyright 2026 The qudisim Authors
// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Measurement counts keyed by outcome digits, most significant wire first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShotHistogram {
    counts: BTreeMap<Vec<u8>, u64>,
    shots: u64,
}

impl ShotHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, outcome: Vec<u8>, count: u64) {
        if count == 0 {
            return;
        }
        *self.counts.entry(outcome).or_insert(0) += count;
        self.shots += count;
    }

    pub fn counts(&self) -> &BTreeMap<Vec<u8>, u64> {
        &self.counts
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn count(&self, outcome: &[u8]) -> u64 {
        self.counts.get(outcome).copied().unwrap_or(0)
    }

    pub fn frequency(&self, outcome: &[u8]) -> f64 {
        if self.shots == 0 {
            0.0
        } else {
            self.count(outcome) as f64 / self.shots as f64
        }
    }

    /// Total variation distance between the empirical distributions.
    pub fn total_variation(&self, other: &ShotHistogram) -> f64 {
        let mut keys: Vec<&Vec<u8>> = self.counts.keys().chain(other.counts.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.iter().map(|k| (self.frequency(k) - other.frequency(k)).abs()).sum::<f64>() / 2.0
    }

    pub fn render_digits(digits: &[u8]) -> String {
        digits.iter().map(|&d| char::from(b'0' + d)).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("outcome_digits,count\n");
        for (k, v) in &self.counts {
            let _ = writeln!(out, "{},{}", Self::render_digits(k), v);
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        match lines.next() {
            Some(h) if h.trim() == "outcome_digits,count" => {}
            _ => return Err(Error::Histogram("missing header `outcome_digits,count`".into())),
        }
        let mut hist = ShotHistogram::new();
        let mut width = None;
        for (lineno, line) in lines.enumerate() {
            let (digits, count) = line
                .trim()
                .split_once(',')
                .ok_or_else(|| Error::Histogram(format!("row {}: expected two columns", lineno + 2)))?;
            let outcome = digits
                .bytes()
                .map(|b| match b {
                    b'0'..=b'9' => Ok(b - b'0'),
                    _ => Err(Error::Histogram(format!("row {}: bad digit in {digits:?}", lineno + 2))),
                })
                .collect::<Result<Vec<u8>>>()?;
            if *width.get_or_insert(outcome.len()) != outcome.len() {
                return Err(Error::Histogram(format!("row {}: inconsistent outcome width", lineno + 2)));
            }
            let count: u64 = count
                .trim()
                .parse()
                .map_err(|_| Error::Histogram(format!("row {}: bad count {count:?}", lineno + 2)))?;
            hist.add(outcome, count);
        }
        Ok(hist)
    }
}
