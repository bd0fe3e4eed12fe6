//! The shared tolerance policy.
//!
//! Every approximate comparison in the crate goes through [`Tolerance`].
//! Matrix comparisons use an absolute floor plus a relative part, majorization
//! verdicts use a log-scale tolerance and, for near-singular inputs, an
//! absolute tolerance on normalized eigenvalue products.

use serde::{Deserialize, Serialize};

/// How per-k majorization margins are judged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum MarginMode {
    /// Compare log-products only.
    #[default]
    Log,
    /// Also accept a k whose normalized products differ by at most `abs_margin`.
    Absolute,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Absolute floor for entrywise comparisons.
    pub abs: f64,
    /// Relative part for entrywise comparisons.
    pub rel: f64,
    /// Tolerance on log-scale margins.
    pub log_margin: f64,
    /// Tolerance on normalized product margins in [`MarginMode::Absolute`].
    pub abs_margin: f64,
    /// Eigenvalues at or below `zero_floor * lambda_1` count as zero.
    pub zero_floor: f64,
    /// Eigenvalues down to `-psd_clamp * max(1, lambda_1)` are clamped to zero.
    pub psd_clamp: f64,
    pub mode: MarginMode,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance {
        abs: 1e-12,
        rel: 1e-9,
        log_margin: 1e-9,
        abs_margin: 1e-8,
        zero_floor: 1e-12,
        psd_clamp: 1e-10,
        mode: MarginMode::Log,
    };

    /// The default policy with a different log-margin tolerance.
    pub fn with_log_margin(log_margin: f64) -> Self {
        Tolerance {
            log_margin,
            ..Self::DEFAULT
        }
    }

    pub fn with_mode(self, mode: MarginMode) -> Self {
        Tolerance { mode, ..self }
    }

    /// `|a - b| <= abs + rel * max(|a|, |b|)`.
    pub fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.abs + self.rel * a.abs().max(b.abs())
    }

    /// `a <= b` up to the same slack as [`Tolerance::close`].
    pub fn at_most(&self, a: f64, b: f64) -> bool {
        a <= b + self.abs + self.rel * a.abs().max(b.abs())
    }

    /// Slack for entrywise matrix comparison at a given magnitude.
    pub fn slack(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale
    }

    /// Whether a log-margin (or absolute fallback) is acceptable.
    pub fn margin_ok(&self, log_margin: f64, abs_margin: f64) -> bool {
        log_margin >= -self.log_margin
            || (self.mode == MarginMode::Absolute && abs_margin >= -self.abs_margin)
    }

    /// Whether a k = n margin certifies equality of determinants.
    pub fn equality_ok(&self, log_margin: f64, abs_margin: f64) -> bool {
        log_margin.abs() <= self.log_margin
            || (self.mode == MarginMode::Absolute && abs_margin.abs() <= self.abs_margin)
    }

    /// Single number summarizing a k-margin under the current mode.
    pub fn effective_margin(&self, log_margin: f64, abs_margin: f64) -> f64 {
        match self.mode {
            MarginMode::Log => log_margin,
            MarginMode::Absolute => log_margin.max(abs_margin),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn close_uses_both_parts() {
        let tol = Tolerance::DEFAULT;
        assert!(tol.close(1.0, 1.0 + 5e-10));
        assert!(!tol.close(1.0, 1.0 + 5e-9));
        assert!(tol.close(0.0, 5e-13));
        assert!(!tol.close(0.0, 5e-12));
    }

    #[test]
    fn absolute_mode_accepts_tiny_products() {
        let tol = Tolerance::DEFAULT;
        assert!(!tol.margin_ok(-1e-3, -1e-12));
        let abs = tol.with_mode(MarginMode::Absolute);
        assert!(abs.margin_ok(-1e-3, -1e-12));
        assert!(!abs.margin_ok(-1e-3, -1e-6));
        assert_eq!(abs.effective_margin(f64::NEG_INFINITY, -1e-12), -1e-12);
    }
}
