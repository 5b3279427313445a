//! Adaptive Simpson quadrature with Richardson extrapolation.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("interval budget of {budget} exhausted before reaching tolerance {tol:e}")]
    BudgetExhausted { budget: usize, tol: f64 },
    #[error("integrand returned a non-finite value at x = {x}")]
    NonFinite { x: f64 },
    #[error("invalid quadrature parameters: {0}")]
    InvalidParameters(String),
}

/// Tuning for [`adaptive_simpson`].
#[derive(Debug, Clone, Copy)]
pub struct SimpsonOptions {
    /// Target absolute error of the whole integral.
    pub abs_tol: f64,
    /// Maximum number of accepted plus rejected panels.
    pub max_intervals: usize,
    /// Panels the interval is split into before adapting.
    pub initial_panels: usize,
    pub max_depth: u32,
}

impl Default for SimpsonOptions {
    fn default() -> Self {
        SimpsonOptions {
            abs_tol: 1e-10,
            max_intervals: 1_000_000,
            initial_panels: 16,
            max_depth: 60,
        }
    }
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
}

/// Integrates `f` over `[a, b]`.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, opts: SimpsonOptions) -> Result<f64, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(QuadratureError::InvalidParameters(format!("bad interval [{a}, {b}]")));
    }
    if !(opts.abs_tol > 0.0) || opts.initial_panels == 0 {
        return Err(QuadratureError::InvalidParameters(
            "tolerance must be positive and at least one panel requested".into(),
        ));
    }
    if a == b {
        return Ok(0.0);
    }
    let eval = |x: f64| {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(QuadratureError::NonFinite { x })
        }
    };

    let n = opts.initial_panels;
    let width = (b - a) / n as f64;
    let mut stack = Vec::with_capacity(64);
    let mut fx = eval(a)?;
    for i in 0..n {
        let lo = a + width * i as f64;
        let hi = if i + 1 == n { b } else { a + width * (i + 1) as f64 };
        let fm = eval(0.5 * (lo + hi))?;
        let fh = eval(hi)?;
        stack.push(Panel {
            a: lo,
            b: hi,
            fa: fx,
            fm,
            fb: fh,
            whole: simpson(lo, hi, fx, fm, fh),
            tol: opts.abs_tol / n as f64,
            depth: 0,
        });
        fx = fh;
    }

    let mut total = 0.0;
    let mut compensation = 0.0;
    let mut used = n;
    while let Some(p) = stack.pop() {
        let m = 0.5 * (p.a + p.b);
        let lm = 0.5 * (p.a + m);
        let rm = 0.5 * (m + p.b);
        let flm = eval(lm)?;
        let frm = eval(rm)?;
        let left = simpson(p.a, m, p.fa, flm, p.fm);
        let right = simpson(m, p.b, p.fm, frm, p.fb);
        let delta = left + right - p.whole;
        if delta.abs() <= 15.0 * p.tol || p.depth >= opts.max_depth || m <= p.a || m >= p.b {
            // Kahan summation keeps the accumulated panel sums from drifting.
            let y = left + right + delta / 15.0 - compensation;
            let t = total + y;
            compensation = (t - total) - y;
            total = t;
            continue;
        }
        used += 2;
        if used > opts.max_intervals {
            return Err(QuadratureError::BudgetExhausted {
                budget: opts.max_intervals,
                tol: opts.abs_tol,
            });
        }
        stack.push(Panel {
            a: m,
            b: p.b,
            fa: p.fm,
            fm: frm,
            fb: p.fb,
            whole: right,
            tol: 0.5 * p.tol,
            depth: p.depth + 1,
        });
        stack.push(Panel {
            a: p.a,
            b: m,
            fa: p.fa,
            fm: flm,
            fb: p.fm,
            whole: left,
            tol: 0.5 * p.tol,
            depth: p.depth + 1,
        });
    }
    Ok(total)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let v = adaptive_simpson(|x| 3.0 * x * x + 1.0, 0.0, 2.0, SimpsonOptions::default()).unwrap();
        assert!((v - 10.0).abs() < 1e-13);
    }

    #[test]
    fn smooth_integrals() {
        let opts = SimpsonOptions {
            abs_tol: 1e-12,
            ..Default::default()
        };
        let v = adaptive_simpson(f64::sin, 0.0, std::f64::consts::PI, opts).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
        let v = adaptive_simpson(|x| (-x * x).exp(), -6.0, 6.0, opts).unwrap();
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn sharp_bump_is_resolved() {
        // Narrow Gaussian away from the initial sample points.
        let s: f64 = 1e-3;
        let f = |x: f64| (-(x - 0.3137).powi(2) / (2.0 * s * s)).exp();
        let v = adaptive_simpson(
            f,
            0.0,
            1.0,
            SimpsonOptions {
                abs_tol: 1e-10,
                ..Default::default()
            },
        )
        .unwrap();
        let exact = s * (2.0 * std::f64::consts::PI).sqrt();
        assert!((v - exact).abs() < 1e-9, "{v} vs {exact}");
    }

    #[test]
    fn budget_and_domain_errors() {
        let opts = SimpsonOptions {
            abs_tol: 1e-14,
            max_intervals: 40,
            ..Default::default()
        };
        let err = adaptive_simpson(|x: f64| x.sqrt(), 0.0, 1.0, opts).unwrap_err();
        assert!(matches!(err, QuadratureError::BudgetExhausted { .. }));
        let err = adaptive_simpson(|x: f64| 1.0 / x, 0.0, 1.0, SimpsonOptions::default()).unwrap_err();
        assert_eq!(err, QuadratureError::NonFinite { x: 0.0 });
        assert_eq!(adaptive_simpson(|x| x, 1.0, 1.0, SimpsonOptions::default()), Ok(0.0));
    }
}
