//! Retention kernels `f(x, tau)`, their inverses at the recall threshold, and
//! the per-pair fitting of `tau` and of the delay.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    Lap,
    Sec,
    Cos,
    Qua,
    Lin,
}

impl KernelKind {
    pub const ALL: [KernelKind; 5] = [
        KernelKind::Lap,
        KernelKind::Sec,
        KernelKind::Cos,
        KernelKind::Qua,
        KernelKind::Lin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KernelKind::Lap => "lap",
            KernelKind::Sec => "sec",
            KernelKind::Cos => "cos",
            KernelKind::Qua => "qua",
            KernelKind::Lin => "lin",
        }
    }
}

impl FromStr for KernelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        KernelKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown kernel {s:?}")))
    }
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Kernel with the raised cosine `(cos(tau*pi*x) + 1) / 2`.
pub fn kernel_eval(k: KernelKind, x: f64, tau: f64) -> f64 {
    kernel_eval_with(k, x, tau, false)
}

/// `literal_cosine` switches the cosine kernel to `cos(tau*pi*x) / 2 + 1`,
/// which starts at 1.5 and drops to 0 at the support boundary.
pub fn kernel_eval_with(k: KernelKind, x: f64, tau: f64, literal_cosine: bool) -> f64 {
    debug_assert!(x >= 0.0 && tau > 0.0);
    match k {
        KernelKind::Lap => (-x * tau).exp(),
        KernelKind::Sec => {
            let a = tau * x * x;
            // 1 / cosh(a); written this way it underflows to 0 instead of NaN
            2.0 / ((-a).exp() + a.exp())
        }
        KernelKind::Cos => {
            if x * tau < 1.0 {
                let c = (tau * PI * x).cos();
                if literal_cosine {
                    0.5 * c + 1.0
                } else {
                    0.5 * (c + 1.0)
                }
            } else {
                0.0
            }
        }
        KernelKind::Qua => {
            if x * x * tau < 1.0 {
                1.0 - tau * x * x
            } else {
                0.0
            }
        }
        KernelKind::Lin => {
            if x * tau < 1.0 {
                1.0 - tau * x
            } else {
                0.0
            }
        }
    }
}

/// The `x >= 0` at which the kernel decays to `eta`.
pub fn solve_delay_x(k: KernelKind, eta: f64, tau: f64) -> f64 {
    solve_delay_x_with(k, eta, tau, false)
}

pub fn solve_delay_x_with(k: KernelKind, eta: f64, tau: f64, literal_cosine: bool) -> f64 {
    match k {
        KernelKind::Lap => -eta.ln() / tau,
        KernelKind::Lin => (1.0 - eta) / tau,
        KernelKind::Qua => ((1.0 - eta) / tau).sqrt(),
        KernelKind::Sec => ((1.0 / eta).acosh() / tau).sqrt(),
        KernelKind::Cos if literal_cosine => {
            // the literal form never falls below 0.5 on its support
            if eta < 0.5 {
                1.0 / tau
            } else {
                (2.0 * eta - 2.0).acos() / (tau * PI)
            }
        }
        KernelKind::Cos => (2.0 * eta - 1.0).acos() / (tau * PI),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TauBounds {
    pub min: f64,
    pub max: f64,
}

impl Default for TauBounds {
    fn default() -> Self {
        TauBounds { min: 1e-6, max: 1e6 }
    }
}

/// One observation for the `tau` fit: scaled elapsed difficulty `x` and the
/// probability `p` the learner now assigns to the correct class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecallSample {
    pub x: f64,
    pub p: f64,
}

/// `x = d * dt / gamma` for a sample whose loss was `d` when the learner
/// scored `gamma`, observed again `dt` epochs later.
pub fn scaled_difficulty(d: f64, dt: f64, gamma: f64) -> f64 {
    d * dt / gamma
}

const GRID_POINTS: usize = 241;
const GOLDEN_TOL: f64 = 1e-6;

/// Least-squares `tau` over samples with `p >= eta`, searched on `ln tau`
/// within the bounds: a coarse grid scan, then golden-section refinement
/// around the best grid point. The refined point is only taken if strictly
/// better, so a flat objective yields the lower bound. Returns `None` when
/// no sample passes the filter.
pub fn fit_tau(
    k: KernelKind,
    samples: &[RecallSample],
    eta: f64,
    bounds: TauBounds,
    literal_cosine: bool,
) -> Option<f64> {
    let kept: Vec<RecallSample> = samples.iter().copied().filter(|s| s.p >= eta).collect();
    if kept.is_empty() {
        return None;
    }
    let objective = |log_tau: f64| {
        let tau = log_tau.exp();
        kept.iter()
            .map(|s| (kernel_eval_with(k, s.x, tau, literal_cosine) - s.p).powi(2))
            .sum::<f64>()
    };
    let (lo, hi) = (bounds.min.ln(), bounds.max.ln());
    let step = (hi - lo) / (GRID_POINTS - 1) as f64;
    let grid = |i: usize| if i + 1 == GRID_POINTS { hi } else { lo + step * i as f64 };
    let mut best_i = 0;
    let mut best_v = objective(grid(0));
    for i in 1..GRID_POINTS {
        let v = objective(grid(i));
        if v < best_v {
            best_i = i;
            best_v = v;
        }
    }
    let a = grid(best_i.saturating_sub(1));
    let b = grid((best_i + 1).min(GRID_POINTS - 1));
    let (s, v) = golden_section(objective, a, b, GOLDEN_TOL);
    if v < best_v {
        return Some(s.exp().clamp(bounds.min, bounds.max));
    }
    // grid end points map back to the exact bounds
    Some(match best_i {
        0 => bounds.min,
        i if i + 1 == GRID_POINTS => bounds.max,
        i => grid(i).exp(),
    })
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    (mid, f(mid))
}

/// Loss floor used when converting a loss to a delay.
pub const LOSS_EPS: f64 = 1e-8;
/// Performance floor, so a useless learner still yields finite delays.
pub const GAMMA_FLOOR: f64 = 1e-6;

/// Mean per-sample optimal delay `x* * gamma / max(d, eps)`, each capped at
/// `remaining`, with the mean clipped to `[1, remaining]`.
pub fn compute_delay(x_star: f64, gamma: f64, losses: &[f64], remaining: f64) -> f64 {
    let remaining = remaining.max(1.0);
    if losses.is_empty() {
        return 1.0;
    }
    let gamma = gamma.max(GAMMA_FLOOR);
    let total: f64 = losses
        .iter()
        .map(|&d| (x_star * gamma / d.max(LOSS_EPS)).min(remaining))
        .sum();
    (total / losses.len() as f64).clamp(1.0, remaining)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_examples() {
        for k in KernelKind::ALL {
            assert_eq!(kernel_eval(k, 0.0, 0.7), 1.0, "{k}");
        }
        assert_eq!(kernel_eval(KernelKind::Lin, 0.25, 2.0), 0.5);
        let sec = 2.0 / ((-1f64).exp() + 1f64.exp());
        assert_eq!(kernel_eval(KernelKind::Sec, 1.0, 1.0), sec);
        assert!((sec - 0.6481).abs() < 1e-4);
        assert_eq!(kernel_eval(KernelKind::Sec, 1e3, 1e3), 0.0);
        assert_eq!(kernel_eval_with(KernelKind::Cos, 0.0, 1.0, true), 1.5);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(solve_delay_x(KernelKind::Lin, 0.5, 2.0), 0.25);
        assert!((solve_delay_x(KernelKind::Lap, 0.8, 1.0) - 0.22314).abs() < 1e-5);
        assert!((solve_delay_x(KernelKind::Cos, 0.5, 1.0) - 0.5).abs() < 1e-15);
        let x = solve_delay_x_with(KernelKind::Cos, 0.9, 1.0, true);
        assert!((kernel_eval_with(KernelKind::Cos, x, 1.0, true) - 0.9).abs() < 1e-12);
    }

    #[test]
    fn delay_examples() {
        let x = solve_delay_x(KernelKind::Lap, 0.8, 1.0);
        let d = compute_delay(x, 1.0, &[0.2], 50.0);
        assert!((d - x / 0.2).abs() < 1e-12);
        assert!((d - 1.1157).abs() < 1e-4);
        assert_eq!(compute_delay(x, 1.0, &[0.0, 1e-12], 17.0), 17.0);
        assert_eq!(compute_delay(x, 1.0, &[100.0], 17.0), 1.0);
        assert_eq!(compute_delay(x, 1.0, &[0.0], 0.0), 1.0);
    }

    #[test]
    fn flat_objective_returns_lower_bound() {
        let s = [RecallSample { x: 0.0, p: 1.0 }];
        let b = TauBounds::default();
        assert_eq!(fit_tau(KernelKind::Lap, &s, 0.8, b, false), Some(b.min));
        let low = [RecallSample { x: 0.3, p: 0.5 }];
        assert_eq!(fit_tau(KernelKind::Lap, &low, 0.8, b, false), None);
    }
}
