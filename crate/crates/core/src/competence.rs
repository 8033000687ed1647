//! Competence schedule: the fraction of each ranking the learner may use.
//!
//! `c(t) = min(1, (1 - (1 - c0)(1 - t))^(1/alpha))` for normalized time
//! `t` in `[0, 1]`. With `alpha = 1` it grows linearly from `c0` to 1; larger
//! `alpha` front-loads the growth.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompetenceParams {
    pub c0: f64,
    pub alpha: f64,
    pub epochs: usize,
}

impl CompetenceParams {
    pub fn new(c0: f64, alpha: f64, epochs: usize) -> Result<Self> {
        let p = CompetenceParams { c0, alpha, epochs };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.c0) {
            return Err(Error::Config(format!("c0 {} outside [0, 1]", self.c0)));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::Config(format!("alpha {} must be positive", self.alpha)));
        }
        if self.epochs == 0 {
            return Err(Error::Config("epochs must be at least 1".into()));
        }
        Ok(())
    }

    /// Normalized time of an epoch; the last epoch maps to exactly 1.
    pub fn epoch_time(&self, epoch: usize) -> f64 {
        let span = self.epochs.saturating_sub(1).max(1);
        (epoch as f64 / span as f64).min(1.0)
    }
}

pub fn competence(t: f64, p: &CompetenceParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("time {t} outside [0, 1]")));
    }
    if t == 1.0 {
        return Ok(1.0);
    }
    // algebraically 1 - (1 - c0)(1 - t), arranged so that c(0) == c0 exactly
    let linear = p.c0 + (1.0 - p.c0) * t;
    Ok(linear.powf(1.0 / p.alpha).min(1.0))
}

/// Number of top-ranked samples available at `epoch`:
/// `ceil(split_size * c(t))`, clamped to `[1, split_size]`.
pub fn active_count(epoch: usize, split_size: usize, p: &CompetenceParams) -> usize {
    let c = competence(p.epoch_time(epoch), p).expect("epoch_time lies in [0, 1]");
    count_for(c, split_size)
}

/// `ceil(split_size * c)` clamped to `[1, split_size]`. A relative slack of
/// 1e-9 absorbs rounding so that e.g. `100 * 0.1` stays 10.
pub fn count_for(c: f64, split_size: usize) -> usize {
    if split_size == 0 {
        return 0;
    }
    let raw = split_size as f64 * c;
    let n = (raw - 1e-9 * raw.max(1.0)).ceil().max(1.0) as usize;
    n.min(split_size)
}
