//! Cutoff functions `χ` and their discretizations.
//!
//! The smooth family is `χ_τ(x) = F(x/τ) F((1-x)/τ)` where `F` is the
//! normalized primitive of the bump `e^{-1/(t(1-t))}` on `[0,1]`, evaluated at
//! the affine argument `1.02x - 0.01`. `F` is 0 for `x <= 0.0098…` and exactly
//! 1 for `x >= 0.9902…`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of Chebyshev intervals in the tabulation of the normalized primitive.
const TABLE_INTERVALS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Cutoff {
    Smooth { tau: f64 },
    /// `χ ≡ 1`, not compactly supported.
    SharpOne,
    Zero,
}

impl Cutoff {
    /// `χ_τ`, for `0 < τ <= 1/2`.
    pub fn smooth(tau: f64) -> Result<Self> {
        if !(tau > 0.0 && tau <= 0.5) {
            return Err(Error::out_of_range("tau must lie in (0, 1/2]", tau));
        }
        Ok(Cutoff::Smooth { tau })
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Cutoff::Smooth { tau } => {
                if x <= 0.0 || x >= 1.0 {
                    0.0
                } else {
                    ramp(x / tau) * ramp((1.0 - x) / tau)
                }
            }
            Cutoff::SharpOne => 1.0,
            Cutoff::Zero => 0.0,
        }
    }

    /// `(χ(j/n))_{j=0}^{n-1}`.
    pub fn discretize(&self, n: usize) -> Vec<f64> {
        (0..n).map(|j| self.eval(j as f64 / n as f64)).collect()
    }

    pub fn is_smooth(&self) -> bool {
        matches!(self, Cutoff::Smooth { .. })
    }

    pub fn label(&self) -> String {
        match self {
            Cutoff::Smooth { tau } => format!("tau={tau}"),
            Cutoff::SharpOne => "sharp".to_string(),
            Cutoff::Zero => "zero".to_string(),
        }
    }
}

/// `F(x) = H(1.02x - 0.01)`.
pub fn ramp(x: f64) -> f64 {
    primitive(1.02 * x - 0.01)
}

fn bump(t: f64) -> f64 {
    if t <= 0.0 || t >= 1.0 {
        0.0
    } else {
        (-1.0 / (t * (1.0 - t))).exp()
    }
}

/// Normalized primitive `H(y) = c ∫_0^y e^{-1/(t(1-t))} dt`, `H(1) = 1`.
pub fn primitive(y: f64) -> f64 {
    if y <= 0.0 {
        return 0.0;
    }
    if y >= 1.0 {
        return 1.0;
    }
    table().eval(y)
}

struct Table {
    nodes: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(Table::build)
}

fn chebyshev_node(i: usize) -> f64 {
    (1.0 - (PI * i as f64 / TABLE_INTERVALS as f64).cos()) / 2.0
}

impl Table {
    fn build() -> Table {
        let nodes: Vec<f64> = (0..=TABLE_INTERVALS).map(chebyshev_node).collect();
        let tol = 1e-12 / TABLE_INTERVALS as f64;
        let mut cumulative = Vec::with_capacity(nodes.len());
        cumulative.push(0.0);
        let mut acc = 0.0;
        for w in nodes.windows(2) {
            acc += adaptive_simpson(bump, w[0], w[1], tol);
            cumulative.push(acc);
        }
        let values: Vec<f64> = cumulative.iter().map(|v| v / acc).collect();
        let slopes = pchip_slopes(&nodes, &values);
        Table {
            nodes,
            values,
            slopes,
        }
    }

    fn eval(&self, y: f64) -> f64 {
        // invert the node map, then correct for rounding at interval edges
        let guess = ((1.0 - 2.0 * y).acos() / PI * TABLE_INTERVALS as f64) as usize;
        let mut i = guess.min(TABLE_INTERVALS - 1);
        while i > 0 && y < self.nodes[i] {
            i -= 1;
        }
        while i + 1 < TABLE_INTERVALS && y >= self.nodes[i + 1] {
            i += 1;
        }
        let (x0, x1) = (self.nodes[i], self.nodes[i + 1]);
        let h = x1 - x0;
        let t = (y - x0) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        let v = h00 * self.values[i]
            + h10 * h * self.slopes[i]
            + h01 * self.values[i + 1]
            + h11 * h * self.slopes[i + 1];
        v.clamp(self.values[i], self.values[i + 1])
    }
}

fn adaptive_simpson(f: fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    recurse(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 40)
}

/// Fritsch–Carlson slopes for a monotone piecewise cubic Hermite interpolant.
fn pchip_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let secant: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
    let mut d = vec![0.0; n];
    for i in 1..n - 1 {
        let (s0, s1) = (secant[i - 1], secant[i]);
        if s0 * s1 > 0.0 {
            let w1 = 2.0 * h[i] + h[i - 1];
            let w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / s0 + w2 / s1);
        }
    }
    // the bump is flat at both ends, so the end slopes stay 0
    d
}
