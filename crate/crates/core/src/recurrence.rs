//! The polynomials `L_n(x) = 2F2(-n, 1; alpha+1, kappa+1; x)`: parameters,
//! the coefficients of their four-term recurrence, and two independent
//! evaluators (recurrence and truncated series) used to certify zeros.

use num_complex::{Complex, Complex64};

use crate::dd::DoubleDouble;
use crate::error::{Error, Result};
use crate::scalar::{cabs, cabs1, Precision, Real};

/// A problem instance: degree `n`, parameters `alpha`, `kappa` and the
/// normalization `eta = L_0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Parameters {
    n: usize,
    alpha: f64,
    kappa: f64,
    eta: f64,
}

impl Parameters {
    /// `alpha` and `kappa` must be finite and `>= -1`.
    pub fn new(n: usize, alpha: f64, kappa: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("kappa", kappa)] {
            if !v.is_finite() || v < -1.0 {
                return Err(Error::InvalidParameters(format!(
                    "{name} = {v} must be finite and >= -1"
                )));
            }
        }
        Ok(Self {
            n,
            alpha,
            kappa,
            eta: 1.0,
        })
    }

    pub fn with_eta(mut self, eta: f64) -> Result<Self> {
        if eta == 0.0 || !eta.is_finite() {
            return Err(Error::InvalidParameters(format!(
                "eta = {eta} must be finite and nonzero"
            )));
        }
        self.eta = eta;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub(crate) fn require_degree(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameters(
                "degree n must be at least 1".to_string(),
            ));
        }
        Ok(())
    }
}

/// Coefficients of
/// `x (e_i L_i + f_i L_{i-1}) = a_i L_{i+1} + b_i L_i + c_i L_{i-1} + d_i L_{i-2}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoefficientSet<T = f64> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub e: T,
    pub f: T,
}

impl<T: Real> CoefficientSet<T> {
    pub fn compute(i: usize, alpha: T, kappa: T) -> Self {
        let one = T::one();
        let two = T::from_f64(2.0);
        let three = T::from_f64(3.0);
        let it = T::from_usize(i);
        let pa = it + alpha + one;
        let pk = it + kappa + one;
        Self {
            a: -(pa * pk),
            b: it * (two * it + alpha + kappa + one) + pa * pk,
            c: -(it * (three * it + alpha + kappa)),
            d: if i == 0 { T::zero() } else { T::from_usize(i - 1) * it },
            e: it + one,
            f: -it,
        }
    }
}

/// Rising factorial `mu (mu+1) ... (mu+i-1)`; `1` for `i = 0`.
pub fn pochhammer(mu: f64, i: usize) -> f64 {
    (0..i).map(|k| mu + k as f64).product()
}

pub fn recurrence_coefficients(i: usize, alpha: f64, kappa: f64) -> CoefficientSet {
    CoefficientSet::compute(i, alpha, kappa)
}

/// Value of `L_n(x)` from the recurrence together with the running maximum
/// of `|L_i(x)|`, both expressed relative to a common factor `2^exponent`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RecurrenceValue {
    pub value: Complex64,
    pub scale: f64,
    pub exponent: i32,
}

impl RecurrenceValue {
    /// `|L_n(x)| / max_i |L_i(x)|`.
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            return 0.0;
        }
        self.value.norm() / self.scale
    }
}

const RESCALE_EXP: i32 = 600;

fn recurrence_in<T: Real>(params: &Parameters, x: Complex<T>) -> Result<(Complex<T>, T, i32)> {
    let alpha = T::from_f64(params.alpha);
    let kappa = T::from_f64(params.kappa);
    let zero = Complex::new(T::zero(), T::zero());
    let big = T::from_f64(2f64.powi(RESCALE_EXP));
    let shrink = T::from_f64(2f64.powi(-RESCALE_EXP));

    // (L_{i-2}, L_{i-1}, L_i)
    let mut lm2 = zero;
    let mut lm1 = zero;
    let mut li = Complex::new(T::from_f64(params.eta), T::zero());
    let mut scale = cabs(li);
    let mut exponent = 0i32;

    for i in 0..params.n {
        let co = CoefficientSet::compute(i, alpha, kappa);
        if co.a == T::zero() {
            return Err(Error::DegenerateRecurrence { index: i });
        }
        let lhs = x * (li.scale(co.e) + lm1.scale(co.f));
        let next = (lhs - li.scale(co.b) - lm1.scale(co.c) - lm2.scale(co.d)).unscale(co.a);
        lm2 = lm1;
        lm1 = li;
        li = next;
        if cabs1(li) > big {
            li = li.scale(shrink);
            lm1 = lm1.scale(shrink);
            lm2 = lm2.scale(shrink);
            scale *= shrink;
            exponent += RESCALE_EXP;
        }
        scale = scale.max(cabs(li));
    }
    Ok((li, scale, exponent))
}

/// Runs the four-term recurrence from `L_{-2} = L_{-1} = 0`, `L_0 = eta` up to
/// `L_n(x)`.
pub fn eval_recurrence(
    params: &Parameters,
    x: Complex64,
    precision: Precision,
) -> Result<RecurrenceValue> {
    let (value, scale, exponent) = match precision {
        Precision::Double => {
            let (v, s, e) = recurrence_in::<f64>(params, x)?;
            (v, s, e)
        }
        Precision::DoubleDouble => {
            let xd = Complex::new(DoubleDouble::from_f64(x.re), DoubleDouble::from_f64(x.im));
            let (v, s, e) = recurrence_in::<DoubleDouble>(params, xd)?;
            (Complex64::new(v.re.to_f64(), v.im.to_f64()), s.to_f64(), e)
        }
    };
    Ok(RecurrenceValue {
        value,
        scale,
        exponent,
    })
}

fn series_in<T: Real>(params: &Parameters, x: Complex<T>) -> Complex<T> {
    let n = params.n;
    let ap = T::from_f64(params.alpha) + T::one();
    let kp = T::from_f64(params.kappa) + T::one();
    let mut term = Complex::new(T::from_f64(params.eta), T::zero());
    let mut sum = term;
    // (1)_i cancels i!, and (-n)_i vanishes for i > n.
    for i in 0..n {
        let it = T::from_usize(i);
        let ratio = (it - T::from_usize(n)) / ((ap + it) * (kp + it));
        term = (term * x).scale(ratio);
        sum = sum + term;
    }
    sum
}

/// Truncated hypergeometric sum
/// `eta * sum_{i=0}^{n} (-n)_i (1)_i / ((alpha+1)_i (kappa+1)_i) x^i / i!`.
pub fn eval_series(params: &Parameters, x: Complex64, precision: Precision) -> Result<Complex64> {
    if params.alpha <= -1.0 || params.kappa <= -1.0 {
        return Err(Error::SeriesDomain {
            alpha: params.alpha,
            kappa: params.kappa,
        });
    }
    Ok(match precision {
        Precision::Double => series_in::<f64>(params, x),
        Precision::DoubleDouble => {
            let xd = Complex::new(DoubleDouble::from_f64(x.re), DoubleDouble::from_f64(x.im));
            let s = series_in::<DoubleDouble>(params, xd);
            Complex64::new(s.re.to_f64(), s.im.to_f64())
        }
    })
}

/// Certification residual `|L_n(lambda)| / max_i |L_i(lambda)|`, evaluated in
/// double-double.
pub fn scaled_residual(params: &Parameters, lambda: Complex64) -> Result<f64> {
    Ok(eval_recurrence(params, lambda, Precision::DoubleDouble)?.relative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, a: f64, k: f64) -> Parameters {
        Parameters::new(n, a, k).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(7.5, 0), 1.0);
        assert_eq!(pochhammer(2.0, 3), 24.0);
        assert_eq!(pochhammer(-3.0, 5), 0.0);
    }

    #[test]
    fn coefficients_by_substitution() {
        let c0 = recurrence_coefficients(0, 0.0, 0.0);
        assert_eq!(
            c0,
            CoefficientSet { a: -1.0, b: 1.0, c: 0.0, d: 0.0, e: 1.0, f: 0.0 }
        );
        let c1 = recurrence_coefficients(1, 0.0, 0.0);
        assert_eq!(
            c1,
            CoefficientSet { a: -4.0, b: 7.0, c: -3.0, d: 0.0, e: 2.0, f: -1.0 }
        );
        // i=2, alpha=1, kappa=2, expanded by hand:
        // a = -(4)(5), b = 2(4+1+2+1) + 20, c = -2(6+3), d = 1*2
        let c2 = recurrence_coefficients(2, 1.0, 2.0);
        assert_eq!(
            c2,
            CoefficientSet { a: -20.0, b: 36.0, c: -18.0, d: 2.0, e: 3.0, f: -2.0 }
        );
    }

    #[test]
    fn column_identity_integer_and_half_integer() {
        for &(alpha, kappa) in &[(0.0, 0.0), (1.0, 3.0), (0.5, 2.5), (-0.5, 4.0), (-1.0, 1.5)] {
            for j in 2..60 {
                let s = recurrence_coefficients(j - 2, alpha, kappa).a
                    + recurrence_coefficients(j - 1, alpha, kappa).b
                    + recurrence_coefficients(j, alpha, kappa).c
                    + recurrence_coefficients(j + 1, alpha, kappa).d;
                assert_eq!(s, 0.0, "alpha={alpha} kappa={kappa} j={j}");
            }
        }
    }

    #[test]
    fn e_and_f_signs() {
        for i in 0..20 {
            let co = recurrence_coefficients(i, 0.3, 0.7);
            assert_eq!(co.e, i as f64 + 1.0);
            assert_eq!(co.f, -(i as f64));
        }
    }

    #[test]
    fn recurrence_at_origin_is_eta() {
        for n in 1..6 {
            let r = eval_recurrence(&p(n, 0.7, 1.9), c(0.0, 0.0), Precision::Double).unwrap();
            assert!((r.value - c(1.0, 0.0)).norm() < 1e-15);
            assert!((r.scale - 1.0).abs() < 1e-15);
        }
        let r = eval_recurrence(&p(1, 0.7, 1.9).with_eta(-2.5).unwrap(), c(0.0, 0.0), Precision::Double)
            .unwrap();
        assert!((r.value.re + 2.5).abs() < 1e-15);
        assert!((r.scale - 2.5).abs() < 1e-15);
    }

    #[test]
    fn first_degree_zero() {
        // L_1(x) = 1 - x / ((alpha+1)(kappa+1))
        let r = eval_recurrence(&p(1, 1.0, 1.0), c(4.0, 0.0), Precision::Double).unwrap();
        assert_eq!(r.value, c(0.0, 0.0));
        assert!(scaled_residual(&p(1, 1.0, 1.0), c(4.0, 0.0)).unwrap() <= 1e-15);
    }

    #[test]
    fn laguerre_two_roots() {
        let params = p(2, 0.0, 0.0);
        for root in [2.0 + 2f64.sqrt(), 2.0 - 2f64.sqrt()] {
            let r = eval_recurrence(&params, c(root, 0.0), Precision::Double).unwrap();
            assert!(r.value.norm() <= 1e-14 * r.scale);
            assert!(scaled_residual(&params, c(root, 0.0)).unwrap() <= 1e-14);
        }
        // L_2(1) = -1/2
        let off = scaled_residual(&params, c(1.0, 0.0)).unwrap();
        assert!(off > 0.1, "{off}");
    }

    #[test]
    fn degenerate_first_coefficient() {
        let err = eval_recurrence(&p(3, -1.0, 2.0), c(1.0, 0.0), Precision::Double).unwrap_err();
        assert!(matches!(err, Error::DegenerateRecurrence { index: 0 }));
        let err = eval_series(&p(3, 2.0, -1.0), c(1.0, 0.0), Precision::Double).unwrap_err();
        assert!(matches!(err, Error::SeriesDomain { .. }));
    }

    #[test]
    fn series_small_cases() {
        let s = eval_series(&p(3, 0.4, 2.2), c(0.0, 0.0), Precision::Double).unwrap();
        assert_eq!(s, c(1.0, 0.0));
        // alpha = kappa = 0 gives the Laguerre polynomial 1 - 2x + x^2/2
        for x in [c(0.3, 0.0), c(-1.5, 2.0), c(7.0, -3.0)] {
            let s = eval_series(&p(2, 0.0, 0.0), x, Precision::DoubleDouble).unwrap();
            let expect = c(1.0, 0.0) - x * 2.0 + x * x * 0.5;
            assert!((s - expect).norm() <= 1e-14 * expect.norm().max(1.0));
        }
    }

    #[test]
    fn series_matches_recurrence() {
        for n in 1..=30 {
            let params = p(n, 0.5, 0.5);
            for x in [c(1.0, 0.0), c(0.0, 5.0), c(-2.0, 3.0)] {
                let s = eval_series(&params, x, Precision::DoubleDouble).unwrap();
                let r = eval_recurrence(&params, x, Precision::DoubleDouble).unwrap();
                assert_eq!(r.exponent, 0);
                assert!(
                    (s - r.value).norm() <= 1e-12 * s.norm(),
                    "n={n} x={x}: {s} vs {}",
                    r.value
                );
            }
        }
    }

    #[test]
    fn rescaling_keeps_ratio() {
        // Large |x| and n force the internal power-of-two rescaling.
        let params = p(400, 0.0, 0.0);
        let r = eval_recurrence(&params, c(-5000.0, 0.0), Precision::Double).unwrap();
        assert!(r.exponent > 0);
        assert!(r.value.norm().is_finite() && r.scale.is_finite());
        assert!(r.relative() <= 1.0);
    }
}
