use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative and absolute comparison slack.
///
/// Lengths are compared against `abs * scale` and areas against
/// `abs * scale^2`, where `scale` is the size of the object at hand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Result<Self> {
        if abs > 0.0 && abs <= rel && rel < 1e-3 {
            Ok(Tolerance { rel, abs })
        } else {
            Err(Error::InvalidTolerance { rel, abs })
        }
    }

    /// `a` and `b` agree up to `rel` relative error with an `abs` floor.
    pub fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.abs.max(self.rel * a.abs().max(b.abs()))
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: 1e-9,
            abs: 1e-12,
        }
    }
}
