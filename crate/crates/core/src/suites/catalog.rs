//! Test functions for the trace inequalities.
//!
//! A function `f` on `(0, inf)` is e-convex when `s -> f(e^s)` is convex.
//! The catalog is fixed; [`certify`] samples the defining property on a grid.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceFn {
    /// `log(1 + t^a)`.
    Log1pPow(f64),
    /// `t^r`.
    Pow(f64),
    /// `e^t`.
    Exp,
    /// `log t`.
    Log,
    /// `log(t^a / (1 + t))` with `a >= 1`.
    LogRatio(f64),
    /// `-t^{-r}`.
    NegInvPow(f64),
}

impl TraceFn {
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            TraceFn::Log1pPow(a) => t.powf(a).ln_1p(),
            TraceFn::Pow(r) => {
                if t == 0.0 {
                    0.0
                } else {
                    t.powf(r)
                }
            }
            TraceFn::Exp => t.exp(),
            TraceFn::Log => t.ln(),
            TraceFn::LogRatio(a) => a * t.ln() - t.ln_1p(),
            TraceFn::NegInvPow(r) => -t.powf(-r),
        }
    }

    /// `sum_j f(lambda_j)`.
    pub fn trace(&self, spectrum: &[f64]) -> f64 {
        spectrum.iter().map(|&x| self.eval(x.max(0.0))).sum()
    }

    pub fn name(&self) -> String {
        match *self {
            TraceFn::Log1pPow(a) => format!("log(1+t^{a})"),
            TraceFn::Pow(r) => format!("t^{r}"),
            TraceFn::Exp => "exp(t)".into(),
            TraceFn::Log => "log(t)".into(),
            TraceFn::LogRatio(a) => format!("log(t^{a}/(1+t))"),
            TraceFn::NegInvPow(r) => format!("-t^-{r}"),
        }
    }
}

/// Nondecreasing e-convex functions.
pub fn e_convex_catalog() -> Vec<TraceFn> {
    vec![
        TraceFn::Log1pPow(0.5),
        TraceFn::Log1pPow(1.0),
        TraceFn::Log1pPow(2.0),
        TraceFn::Pow(0.5),
        TraceFn::Pow(1.0),
        TraceFn::Pow(2.0),
        TraceFn::Exp,
    ]
}

/// Nondecreasing e-concave functions.
pub fn e_concave_catalog() -> Vec<TraceFn> {
    vec![
        TraceFn::Log,
        TraceFn::LogRatio(1.0),
        TraceFn::LogRatio(2.0),
        TraceFn::NegInvPow(0.5),
        TraceFn::NegInvPow(1.0),
    ]
}

/// Whether `h(s) = f(e^s)` is nondecreasing and convex (or concave) on
/// 101 points of `[-4, 4]`, up to rounding.
pub fn certify(f: TraceFn, convex: bool) -> bool {
    let h: Vec<f64> = (0..101)
        .map(|i| f.eval((-4.0 + 8.0 * i as f64 / 100.0).exp()))
        .collect();
    let scale = h.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let slack = 1e-12 * scale;
    let monotone = h.windows(2).all(|w| w[1] >= w[0] - slack);
    let curvature = h.windows(3).all(|w| {
        let d2 = w[0] - 2.0 * w[1] + w[2];
        if convex {
            d2 >= -slack
        } else {
            d2 <= slack
        }
    });
    monotone && curvature
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogs_certify() {
        assert!(e_convex_catalog().into_iter().all(|f| certify(f, true)));
        assert!(e_concave_catalog().into_iter().all(|f| certify(f, false)));
    }

    #[test]
    fn certification_rejects() {
        // log t is e-linear, so it is both; log(t^0.5/(1+t)) is not monotone.
        assert!(certify(TraceFn::Log, true));
        assert!(!certify(TraceFn::LogRatio(0.5), false));
        assert!(!certify(TraceFn::Exp, false));
        assert!(!certify(TraceFn::NegInvPow(1.0), true));
    }

    #[test]
    fn values() {
        assert!((TraceFn::Log1pPow(1.0).eval(1.0) - 2f64.ln()).abs() < 1e-15);
        assert_eq!(TraceFn::Pow(2.0).trace(&[1.0, 2.0, 0.0]), 5.0);
    }
}
