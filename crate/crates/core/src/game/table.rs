use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::strategy::Move;

/// Measurement outcome `lmn`; bit 2 is Alice, bit 1 Bob, bit 0 Charlie.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Outcome(pub usize);

impl Outcome {
    pub fn all() -> impl Iterator<Item = Outcome> {
        (0..8).map(Outcome)
    }

    pub fn from_moves(moves: [Move; 3]) -> Self {
        Outcome(moves[0].bit() << 2 | moves[1].bit() << 1 | moves[2].bit())
    }

    pub fn label(self) -> String {
        format!("{:03b}", self.0)
    }

    pub fn parse(label: &str) -> Option<Self> {
        if label.len() == 3 && label.bytes().all(|b| b == b'0' || b == b'1') {
            usize::from_str_radix(label, 2).ok().map(Outcome)
        } else {
            None
        }
    }
}

/// Payoff triple `(Alice, Bob, Charlie)` for every outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct PayoffTable<T> {
    entries: [[T; 3]; 8],
}

impl<T: Real> Default for PayoffTable<T> {
    /// The three-player Prisoner's Dilemma.
    fn default() -> Self {
        let raw: [[f64; 3]; 8] = [
            [3.0, 3.0, 3.0], // CCC
            [2.0, 2.0, 5.0], // CCD
            [2.0, 5.0, 2.0], // CDC
            [0.0, 4.0, 4.0], // CDD
            [5.0, 2.0, 2.0], // DCC
            [4.0, 0.0, 4.0], // DCD
            [4.0, 4.0, 0.0], // DDC
            [1.0, 1.0, 1.0], // DDD
        ];
        Self {
            entries: raw.map(|row| row.map(T::lit)),
        }
    }
}

impl<T: Real> PayoffTable<T> {
    pub fn new(entries: [[T; 3]; 8]) -> Result<Self> {
        if entries.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Table("payoff entries must be finite".into()));
        }
        Ok(Self { entries })
    }

    pub fn get(&self, outcome: Outcome) -> [T; 3] {
        self.entries[outcome.0]
    }

    pub fn entries(&self) -> &[[T; 3]; 8] {
        &self.entries
    }

    /// Parses a JSON object mapping every label `"000"`..`"111"` to a 3-element array.
    pub fn from_json(text: &str) -> Result<Self> {
        let map: BTreeMap<String, Vec<f64>> =
            serde_json::from_str(text).map_err(|e| Error::Table(format!("invalid JSON: {e}")))?;
        let mut entries = [[T::zero(); 3]; 8];
        let mut seen = [false; 8];
        for (key, vals) in &map {
            let o = Outcome::parse(key)
                .ok_or_else(|| Error::Table(format!("unknown outcome label {key:?}")))?;
            if vals.len() != 3 {
                return Err(Error::Table(format!(
                    "outcome {key} needs 3 payoffs, got {}",
                    vals.len()
                )));
            }
            for (slot, &v) in entries[o.0].iter_mut().zip(vals) {
                *slot = T::from_f64(v)
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| Error::Table(format!("outcome {key}: bad value {v}")))?;
            }
            seen[o.0] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::Table(format!(
                "missing outcome {}",
                Outcome(missing).label()
            )));
        }
        Self::new(entries)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let map: BTreeMap<String, Vec<f64>> = Outcome::all()
            .map(|o| {
                (
                    o.label(),
                    self.get(o).iter().map(|v| v.to_f64_lossy()).collect(),
                )
            })
            .collect();
        serde_json::to_value(map).expect("serialisable")
    }
}

/// Payoffs for a pure classical profile, read straight from the table.
pub fn classical_payoff<T: Real>(profile: [Move; 3], table: &PayoffTable<T>) -> [T; 3] {
    table.get(Outcome::from_moves(profile))
}
