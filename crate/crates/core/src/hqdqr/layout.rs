// Copyright 2026 The qudisim Authors
// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use super::image::{Axis, Channel, ImageDims};
use crate::circuit::Control;
use crate::error::Result;
use crate::state::{Wire, WireRole, WireSpec};

/// Number of intensity trits per channel value.
pub const INTENSITY_TRITS: usize = 6;

/// Wire index of the channel qutrit.
pub const CHANNEL_WIRE: usize = INTENSITY_TRITS;

/// Flat register for one image: six intensity qutrits (most significant
/// first), the channel qutrit, the row digits, then the column digits.
/// Ancillas added by lowering come after all of these.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RegisterLayout {
    pub dims: ImageDims,
    pub y: Axis,
    pub x: Axis,
}

impl RegisterLayout {
    pub fn new(dims: ImageDims) -> Result<Self> {
        let (y, x) = dims.axes()?;
        Ok(RegisterLayout { dims, y, x })
    }

    /// Wire holding intensity trit `i` (weight `3^i`).
    pub fn intensity_wire(&self, i: usize) -> usize {
        INTENSITY_TRITS - 1 - i
    }

    pub fn channel_wire(&self) -> usize {
        CHANNEL_WIRE
    }

    pub fn position_wires(&self) -> std::ops::Range<usize> {
        CHANNEL_WIRE + 1..self.len()
    }

    pub fn position_count(&self) -> usize {
        self.y.digits + self.x.digits
    }

    /// Wires before any ancillas.
    pub fn len(&self) -> usize {
        CHANNEL_WIRE + 1 + self.position_count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Qubit and qutrit counts among the position digits.
    pub fn position_radix_counts(&self) -> (usize, usize) {
        let mut counts = (0, 0);
        for axis in [self.y, self.x] {
            match axis.radix {
                2 => counts.0 += axis.digits,
                _ => counts.1 += axis.digits,
            }
        }
        counts
    }

    pub fn wire_spec(&self) -> WireSpec {
        let mut wires: Vec<Wire> =
            (0..INTENSITY_TRITS).map(|w| Wire::with_role(3, WireRole::IntensityTrit((INTENSITY_TRITS - 1 - w) as u8))).collect();
        wires.push(Wire::with_role(3, WireRole::Channel));
        for axis in [self.y, self.x] {
            let role = if axis.radix == 2 { WireRole::PositionQubit } else { WireRole::PositionQutrit };
            wires.extend((0..axis.digits).map(|_| Wire::with_role(axis.radix, role)));
        }
        WireSpec::from_wires(wires).expect("layout wires are qubits and qutrits")
    }

    /// Position digits of pixel `(y, x)`, row digits first.
    pub fn position_digits(&self, y: usize, x: usize) -> Vec<usize> {
        let mut d = self.y.digits_of(y);
        d.extend(self.x.digits_of(x));
        d
    }

    /// Inverse of [`position_digits`](Self::position_digits).
    pub fn position_of(&self, digits: &[usize]) -> (usize, usize) {
        let (yd, xd) = digits.split_at(self.y.digits);
        (self.y.coord_of(yd), self.x.coord_of(xd))
    }

    /// Controls selecting pixel `(y, x)` on channel `c`.
    pub fn pixel_controls(&self, y: usize, x: usize, c: Channel) -> Vec<Control> {
        let mut controls: Vec<Control> = self
            .position_digits(y, x)
            .into_iter()
            .enumerate()
            .map(|(i, d)| Control::new(CHANNEL_WIRE + 1 + i, d))
            .collect();
        controls.push(Control::new(CHANNEL_WIRE, c.digit()));
        controls
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hybrid_layout() {
        let l = RegisterLayout::new(ImageDims::new(3, 2).unwrap()).unwrap();
        assert_eq!(l.len(), 9);
        assert_eq!(l.wire_spec().dims(), vec![3, 3, 3, 3, 3, 3, 3, 3, 2]);
        assert_eq!(l.intensity_wire(0), 5);
        assert_eq!(l.intensity_wire(5), 0);
        assert_eq!(l.position_radix_counts(), (1, 1));
        assert_eq!(l.wire_spec().find_role(WireRole::IntensityTrit(0)), Some(5));
        let c = l.pixel_controls(2, 1, Channel::B);
        assert_eq!(c, vec![Control::new(7, 2), Control::new(8, 1), Control::new(6, 2)]);
    }

    #[test]
    fn position_digits_round_trip() {
        let l = RegisterLayout::new(ImageDims::new(9, 4).unwrap()).unwrap();
        for y in 0..9 {
            for x in 0..4 {
                assert_eq!(l.position_of(&l.position_digits(y, x)), (y, x));
            }
        }
        let single = RegisterLayout::new(ImageDims::new(1, 1).unwrap()).unwrap();
        assert_eq!(single.len(), 7);
        assert!(single.position_digits(0, 0).is_empty());
    }
}
