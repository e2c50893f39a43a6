use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed on `g + w <= 1` so that lattice points like `1/3 + 2/3` are admitted.
const SUM_SLACK: f64 = 1e-12;

/// Mixing weights of white noise (`d`), GHZ (`g`) and W (`w`), with `d = 1 - g - w`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPoint")]
pub struct SimplexPoint {
    g: f64,
    w: f64,
}

#[derive(Deserialize)]
struct RawPoint {
    g: f64,
    w: f64,
}

impl TryFrom<RawPoint> for SimplexPoint {
    type Error = Error;

    fn try_from(raw: RawPoint) -> Result<Self> {
        SimplexPoint::new(raw.g, raw.w)
    }
}

impl SimplexPoint {
    pub fn new(g: f64, w: f64) -> Result<Self> {
        if !(g.is_finite() && w.is_finite()) || g < 0.0 || w < 0.0 || g + w > 1.0 + SUM_SLACK {
            return Err(Error::InvalidPoint { g, w });
        }
        Ok(SimplexPoint { g, w })
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    pub fn d(&self) -> f64 {
        (1.0 - self.g - self.w).max(0.0)
    }

    /// `d/8`, the white-noise weight per basis state.
    pub fn dt(&self) -> f64 {
        self.d() / 8.0
    }

    pub fn gt(&self) -> f64 {
        self.g / 2.0
    }

    pub fn wt(&self) -> f64 {
        self.w / 3.0
    }

    pub fn white_noise() -> Self {
        SimplexPoint { g: 0.0, w: 0.0 }
    }

    pub fn ghz() -> Self {
        SimplexPoint { g: 1.0, w: 0.0 }
    }

    pub fn w_state() -> Self {
        SimplexPoint { g: 0.0, w: 1.0 }
    }

    /// Point at parameter `t` on the segment from `a` to `b`, clamped back onto the simplex.
    pub fn lerp(a: SimplexPoint, b: SimplexPoint, t: f64) -> Self {
        let g = (a.g + t * (b.g - a.g)).max(0.0);
        let w = (a.w + t * (b.w - a.w)).max(0.0);
        let excess = g + w - 1.0;
        if excess > 0.0 {
            let s = 1.0 / (g + w);
            SimplexPoint { g: g * s, w: w * s }
        } else {
            SimplexPoint { g, w }
        }
    }
}
