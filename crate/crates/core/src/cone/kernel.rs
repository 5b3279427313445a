use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use super::ConeError;

/// Uniform bound required of `f`, `|f′|` and `|f″|`.
pub const KERNEL_BOUND: f64 = 16.0;

/// A smooth function `f` on `(0, ∞)` that vanishes to infinite order at 0 and
/// is identically 1 on `[1, ∞)`.
pub trait SmoothingKernel: fmt::Debug + Send + Sync {
    /// `[f, f′, f″, f‴]` at `t > 0`.
    fn jet(&self, t: f64) -> [f64; 4];

    fn name(&self) -> String;
}

impl<K: SmoothingKernel + ?Sized> SmoothingKernel for &K {
    fn jet(&self, t: f64) -> [f64; 4] {
        (**self).jet(t)
    }

    fn name(&self) -> String {
        (**self).name()
    }
}

/// `(f(t), f′(t), f″(t))` for `t > 0`.
pub fn kernel_eval<K: SmoothingKernel + ?Sized>(kernel: &K, t: f64) -> Result<(f64, f64, f64), ConeError> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(ConeError::NonPositiveArgument(t));
    }
    let [f, d1, d2, _] = kernel.jet(t);
    Ok((f, d1, d2))
}

/// The smooth step `f(t) = g(t) / (g(t) + g(1 − t))`, `g(s) = exp(−1/s)` for
/// `s > 0` and 0 otherwise.
///
/// Evaluated as the logistic function of `w(t) = 1/(1 − t) − 1/t`, which
/// avoids the 0/0 of the quotient form near both ends. Symmetric about
/// `t = 1/2`, where it takes the value 1/2.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TransitionKernel;

/// Beyond this |w| the logistic is 0 or 1 to machine precision and every
/// derivative underflows.
const SATURATION: f64 = 700.0;

impl SmoothingKernel for TransitionKernel {
    fn jet(&self, t: f64) -> [f64; 4] {
        if t >= 1.0 {
            return [1.0, 0.0, 0.0, 0.0];
        }
        if t <= 0.0 {
            return [0.0; 4];
        }
        let u = 1.0 - t;
        let w = 1.0 / u - 1.0 / t;
        if w < -SATURATION {
            return [0.0; 4];
        }
        if w > SATURATION {
            return [1.0, 0.0, 0.0, 0.0];
        }
        // s = logistic(w); s' = s(1 − s) computed without cancellation.
        let e = (-w.abs()).exp();
        let (s, s1) = if w >= 0.0 {
            (1.0 / (1.0 + e), e / ((1.0 + e) * (1.0 + e)))
        } else {
            (e / (1.0 + e), e / ((1.0 + e) * (1.0 + e)))
        };
        let s2 = s1 * (1.0 - 2.0 * s);
        let s3 = s1 * (1.0 - 6.0 * s * (1.0 - s));

        let (t2, u2) = (t * t, u * u);
        let w1 = 1.0 / u2 + 1.0 / t2;
        let w2 = 2.0 / (u2 * u) - 2.0 / (t2 * t);
        let w3 = 6.0 / (u2 * u2) + 6.0 / (t2 * t2);

        let d1 = s1 * w1;
        let d2 = s2 * w1 * w1 + s1 * w2;
        let d3 = s3 * w1 * w1 * w1 + 3.0 * s2 * w1 * w2 + s1 * w3;
        [s, d1, d2, d3]
    }

    fn name(&self) -> String {
        "transition exp(-1/t)".to_string()
    }
}

impl TransitionKernel {
    /// Grid step used for the shared certificate.
    pub const CERTIFICATION_STEP: f64 = 1e-5;

    /// Certificate for this kernel, computed once per process.
    ///
    /// Panics if certification fails: nothing downstream is valid without it.
    pub fn certificate() -> &'static KernelCertificate {
        static CERT: OnceLock<KernelCertificate> = OnceLock::new();
        CERT.get_or_init(|| {
            certify_kernel(&TransitionKernel, Self::CERTIFICATION_STEP)
                .expect("shipped kernel must certify below the derivative bound")
        })
    }
}

/// `t ↦ inner(factor · t)`; `factor > 1` squeezes the transition into
/// `(0, 1/factor]`.
#[derive(Debug, Clone, Copy)]
pub struct Rescaled<K> {
    pub inner: K,
    pub factor: f64,
}

impl<K: SmoothingKernel> SmoothingKernel for Rescaled<K> {
    fn jet(&self, t: f64) -> [f64; 4] {
        let c = self.factor;
        let [f, d1, d2, d3] = self.inner.jet(c * t);
        [f, c * d1, c * c * d2, c * c * c * d3]
    }

    fn name(&self) -> String {
        format!("{} at t*{}", self.inner.name(), self.factor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Derivative {
    #[serde(rename = "f")]
    Value,
    #[serde(rename = "f'")]
    First,
    #[serde(rename = "f''")]
    Second,
}

impl fmt::Display for Derivative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Derivative::Value => "f",
            Derivative::First => "f'",
            Derivative::Second => "f''",
        })
    }
}

/// Grid maximum of one derivative and where it was attained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridMax {
    pub value: f64,
    pub at: f64,
}

/// Outcome of [`certify_kernel`]: grid maxima, the padding that covers the
/// gaps between grid points, and the resulting certified bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelCertificate {
    pub kernel: String,
    pub grid_step: f64,
    pub samples: usize,
    pub max_f: GridMax,
    pub max_df: GridMax,
    pub max_d2f: GridMax,
    pub max_d3f: GridMax,
    /// Upper bound used for `|f‴|` on `(0, 1]`.
    pub d3f_bound: f64,
    /// Bounds for `f`, `|f′|`, `|f″|` on all of `(0, ∞)`.
    pub f_bound: f64,
    pub df_bound: f64,
    pub d2f_bound: f64,
    pub certified_bound: f64,
    pub limit: f64,
}

/// Certifies that `f`, `|f′|` and `|f″|` stay below [`KERNEL_BOUND`].
///
/// The kernel is sampled at `t = k·h` on `(0, 1]`. Every `t` in `(0, 1]` lies
/// within `h` of a sample, so a grid maximum `m` of a derivative `D` is
/// padded to `m + h · sup|D′|`. `sup|f‴|` itself is padded by `h` times twice
/// the largest difference quotient of `f‴` on the grid. On `[1, ∞)` the kernel
/// must be exactly `(1, 0, 0)`, and at the first sample it must already be
/// negligible (infinite-order vanishing at the tip).
pub fn certify_kernel<K: SmoothingKernel + ?Sized>(kernel: &K, grid_step: f64) -> Result<KernelCertificate, ConeError> {
    if !(grid_step > 0.0 && grid_step <= 1e-4) {
        return Err(ConeError::InvalidParameter(format!(
            "grid step must lie in (0, 1e-4], got {grid_step}"
        )));
    }
    let h = grid_step;
    for t in [1.0, 1.0 + h, 1.5, 2.0, 10.0, 1e6] {
        let jet = kernel.jet(t);
        let expected = [1.0, 0.0, 0.0];
        for (k, d) in [Derivative::Value, Derivative::First, Derivative::Second]
            .into_iter()
            .enumerate()
        {
            if jet[k] != expected[k] {
                return Err(ConeError::PlateauViolation {
                    derivative: d,
                    t,
                    value: jet[k],
                });
            }
        }
    }
    const TIP_TOLERANCE: f64 = 1e-12;
    let tip = kernel.jet(h);
    for (k, d) in [Derivative::Value, Derivative::First, Derivative::Second]
        .into_iter()
        .enumerate()
    {
        if !(tip[k].abs() <= TIP_TOLERANCE) {
            return Err(ConeError::VanishingViolation {
                derivative: d,
                t: h,
                value: tip[k],
            });
        }
    }

    let n = (1.0 / h).ceil() as usize;
    let mut maxima = [GridMax { value: 0.0, at: h }; 4];
    let mut max_d3_slope: f64 = 0.0;
    let mut prev_d3 = tip[3];
    for i in 1..=n {
        let t = (i as f64 * h).min(1.0);
        let jet = kernel.jet(t);
        if !(0.0..=1.0).contains(&jet[0]) {
            return Err(ConeError::RangeViolation { t, value: jet[0] });
        }
        for k in 0..4 {
            if !jet[k].is_finite() {
                return Err(ConeError::InvalidParameter(format!(
                    "kernel derivative {k} is not finite at t = {t}"
                )));
            }
            if jet[k].abs() > maxima[k].value {
                maxima[k] = GridMax {
                    value: jet[k].abs(),
                    at: t,
                };
            }
        }
        if i > 1 {
            max_d3_slope = max_d3_slope.max((jet[3] - prev_d3).abs() / h);
        }
        prev_d3 = jet[3];
    }

    let d3f_bound = maxima[3].value + h * 2.0 * max_d3_slope;
    let d2f_bound = maxima[2].value + h * d3f_bound;
    let df_bound = maxima[1].value + h * d2f_bound;
    let f_bound = (maxima[0].value + h * df_bound).max(1.0);
    let certified_bound = f_bound.max(df_bound).max(d2f_bound);

    let cert = KernelCertificate {
        kernel: kernel.name(),
        grid_step: h,
        samples: n,
        max_f: maxima[0],
        max_df: maxima[1],
        max_d2f: maxima[2],
        max_d3f: maxima[3],
        d3f_bound,
        f_bound,
        df_bound,
        d2f_bound,
        certified_bound,
        limit: KERNEL_BOUND,
    };
    if certified_bound > KERNEL_BOUND {
        let (derivative, witness) = [
            (Derivative::Second, d2f_bound, maxima[2]),
            (Derivative::First, df_bound, maxima[1]),
            (Derivative::Value, f_bound, maxima[0]),
        ]
        .into_iter()
        .find(|&(_, b, _)| b > KERNEL_BOUND)
        .map(|(d, _, m)| (d, m))
        .expect("some bound exceeds the limit");
        return Err(ConeError::BoundViolation {
            derivative,
            t: witness.at,
            value: witness.value,
            limit: KERNEL_BOUND,
        });
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Debug)]
    struct ConstantOne;

    impl SmoothingKernel for ConstantOne {
        fn jet(&self, _t: f64) -> [f64; 4] {
            [1.0, 0.0, 0.0, 0.0]
        }

        fn name(&self) -> String {
            "constant".into()
        }
    }

    /// Direct quotient form of the kernel, evaluated independently.
    fn quotient_form(t: f64) -> f64 {
        let g = |s: f64| if s > 0.0 { (-1.0 / s).exp() } else { 0.0 };
        if t >= 1.0 {
            1.0
        } else {
            g(t) / (g(t) + g(1.0 - t))
        }
    }

    #[test]
    fn plateau_and_midpoint() {
        assert_eq!(kernel_eval(&TransitionKernel, 2.0).unwrap(), (1.0, 0.0, 0.0));
        assert_eq!(kernel_eval(&TransitionKernel, 1.0).unwrap(), (1.0, 0.0, 0.0));
        let (f, d1, d2) = kernel_eval(&TransitionKernel, 0.5).unwrap();
        assert_eq!(f, 0.5);
        assert_eq!(quotient_form(0.5), 0.5);
        // f'(1/2) = s'(0) w'(1/2) = 1/4 · 8; f'' vanishes by symmetry.
        assert!((d1 - 2.0).abs() < 1e-15);
        assert!(d2.abs() < 1e-13);
    }

    #[test]
    fn vanishes_at_machine_scale_near_tip() {
        let (f, d1, d2) = kernel_eval(&TransitionKernel, 1e-6).unwrap();
        assert!(f < 1e-12 && d1.abs() < 1e-6 && d2.abs() < 1e-6);
        // exp(-1/0.01) ~ 3.7e-44 is still representable.
        let (f, _, _) = kernel_eval(&TransitionKernel, 0.01).unwrap();
        let expected = quotient_form(0.01);
        assert!(f > 0.0 && ((f - expected) / expected).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_positive_argument() {
        assert_eq!(
            kernel_eval(&TransitionKernel, 0.0),
            Err(ConeError::NonPositiveArgument(0.0))
        );
        assert!(kernel_eval(&TransitionKernel, -1.0).is_err());
        assert!(kernel_eval(&TransitionKernel, f64::NAN).is_err());
    }

    #[test]
    fn symmetric_about_one_half() {
        for i in 1..100 {
            let t = i as f64 / 200.0;
            let [a, da, d2a, _] = TransitionKernel.jet(t);
            let [b, db, d2b, _] = TransitionKernel.jet(1.0 - t);
            assert!((a + b - 1.0).abs() < 1e-15);
            assert!((da - db).abs() < 1e-12 * da.abs().max(1.0));
            assert!((d2a + d2b).abs() < 1e-10 * d2a.abs().max(1.0));
        }
    }

    #[test]
    fn analytic_derivatives_match_differences_of_quotient_form() {
        let h = 1e-5;
        for i in 1..40 {
            let t = i as f64 / 40.0;
            let [f, d1, d2, d3] = TransitionKernel.jet(t);
            assert!((f - quotient_form(t)).abs() < 1e-14);
            let fd1 = (quotient_form(t + h) - quotient_form(t - h)) / (2.0 * h);
            assert!((d1 - fd1).abs() < 1e-8, "f' at {t}");
            let [_, a, _, _] = TransitionKernel.jet(t + h);
            let [_, b, _, _] = TransitionKernel.jet(t - h);
            assert!((d2 - (a - b) / (2.0 * h)).abs() < 1e-7, "f'' at {t}");
            let [_, _, a, _] = TransitionKernel.jet(t + h);
            let [_, _, b, _] = TransitionKernel.jet(t - h);
            assert!(
                (d3 - (a - b) / (2.0 * h)).abs() < 1e-5 * d3.abs().max(1.0),
                "f''' at {t}"
            );
        }
    }

    #[test]
    fn shipped_kernel_certifies() {
        let cert = certify_kernel(&TransitionKernel, 1e-5).unwrap();
        assert!(cert.certified_bound <= KERNEL_BOUND);
        assert!((cert.max_df.value - 2.0).abs() < 1e-9);
        assert!(cert.max_d2f.value > 9.0 && cert.max_d2f.value < 10.0);
        assert_eq!(cert.samples, 100_000);
        assert_eq!(TransitionKernel::certificate(), &cert);
    }

    #[test]
    fn constant_kernel_fails_at_tip() {
        let err = certify_kernel(&ConstantOne, 1e-5).unwrap_err();
        assert_eq!(err.code(), "VanishingViolation");
    }

    #[test]
    fn squeezed_kernel_violates_bound() {
        let k = Rescaled {
            inner: TransitionKernel,
            factor: 10.0,
        };
        match certify_kernel(&k, 1e-5).unwrap_err() {
            ConeError::BoundViolation {
                derivative, value, t, ..
            } => {
                assert_eq!(derivative, Derivative::Second);
                assert!(value > 900.0 && t < 0.1);
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn coarse_grid_is_rejected() {
        assert_eq!(
            certify_kernel(&TransitionKernel, 1e-3).unwrap_err().code(),
            "InvalidParameter"
        );
    }
}
