use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{linspace, Real};

/// `start:stop:count` evenly spaced grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn new(start: f64, stop: f64, count: usize) -> Self {
        Self { start, stop, count }
    }

    pub fn points<T: Real>(&self) -> Vec<T> {
        linspace(T::lit(self.start), T::lit(self.stop), self.count)
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts.as_slice() else {
            return Err(format!("grid {s:?} must look like start:stop:count"));
        };
        let start = a
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("grid start {a:?}: {e}"))?;
        let stop = b
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("grid stop {b:?}: {e}"))?;
        let count = n
            .trim()
            .parse::<usize>()
            .map_err(|e| format!("grid count {n:?}: {e}"))?;
        Ok(Self { start, stop, count })
    }
}

/// Nonempty, strictly increasing, inside `[lo, hi]`.
pub fn validate_grid<T: Real>(name: &str, grid: &[T], lo: T, hi: T) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid(format!("{name} grid is empty")));
    }
    if let Some(w) = grid
        .windows(2)
        .find(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater))
    {
        return Err(Error::InvalidGrid(format!(
            "{name} grid is not strictly increasing at {} -> {}",
            w[0], w[1]
        )));
    }
    if let Some(x) = grid.iter().find(|&&x| !(x >= lo && x <= hi)) {
        return Err(Error::InvalidGrid(format!(
            "{name} grid value {x} outside [{lo}, {hi}]"
        )));
    }
    Ok(())
}
