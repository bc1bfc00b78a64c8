//! Power-log monomials `c * t^alpha * (ln t)^k` and operations on finite sums of them.
//!
//! A `&[Term]` slice is read as the sum of its terms. The family is closed under
//! multiplication, differentiation and antidifferentiation, which is what keeps
//! the Cesaro transform exact on piecewise functions.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Exponents closer than this are treated as equal.
pub const EXPONENT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term {
    #[serde(rename = "c")]
    pub coeff: f64,
    pub alpha: f64,
    pub logpow: u32,
}

impl Term {
    pub fn new(coeff: f64, alpha: f64, logpow: u32) -> Self {
        Term { coeff, alpha, logpow }
    }

    pub fn constant(c: f64) -> Self {
        Term::new(c, 0.0, 0)
    }

    pub fn power(c: f64, alpha: f64) -> Self {
        Term::new(c, alpha, 0)
    }

    pub fn is_constant(&self) -> bool {
        self.alpha == 0.0 && self.logpow == 0
    }

    /// Value at `t > 0`, given `ln t`.
    #[inline]
    fn eval_with_log(&self, t: f64, ln_t: f64) -> f64 {
        let mut v = self.coeff;
        if self.alpha != 0.0 {
            v *= t.powf(self.alpha);
        }
        if self.logpow > 0 {
            v *= ln_t.powi(self.logpow as i32);
        }
        v
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.eval_with_log(t, t.ln())
    }
}

pub fn same_exponent(a: f64, b: f64) -> bool {
    (a - b).abs() <= EXPONENT_EPS * (1.0 + a.abs().max(b.abs()))
}

pub fn is_nonneg_integer(x: f64) -> Option<u32> {
    let r = x.round();
    if r >= 0.0 && (x - r).abs() <= EXPONENT_EPS && r <= 64.0 {
        Some(r as u32)
    } else {
        None
    }
}

/// Value of the sum at `t > 0`.
pub fn eval(terms: &[Term], t: f64) -> f64 {
    if terms.is_empty() {
        return 0.0;
    }
    let ln_t = if terms.iter().any(|x| x.logpow > 0) { t.ln() } else { 0.0 };
    terms.iter().map(|x| x.eval_with_log(t, ln_t)).sum()
}

/// Merge terms with equal exponents, drop vanished coefficients, and sort by
/// `(alpha, logpow)`.
pub fn canonicalize(mut terms: Vec<Term>) -> Vec<Term> {
    terms.retain(|t| t.coeff != 0.0);
    terms.sort_by(|a, b| {
        a.alpha
            .partial_cmp(&b.alpha)
            .unwrap_or(Ordering::Equal)
            .then(a.logpow.cmp(&b.logpow))
    });
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    let mut mass: Vec<f64> = Vec::with_capacity(terms.len());
    for t in terms {
        if let Some(pos) = out
            .iter()
            .position(|o| o.logpow == t.logpow && same_exponent(o.alpha, t.alpha))
        {
            out[pos].coeff += t.coeff;
            mass[pos] += t.coeff.abs();
        } else {
            out.push(t);
            mass.push(t.coeff.abs());
        }
    }
    // cancellation below rounding noise of the merged coefficients
    out.iter()
        .zip(mass)
        .filter(|(t, m)| t.coeff != 0.0 && t.coeff.abs() > 1e-13 * m)
        .map(|(t, _)| *t)
        .collect()
}

pub fn scale(terms: &[Term], c: f64) -> Vec<Term> {
    if c == 0.0 {
        return Vec::new();
    }
    terms
        .iter()
        .map(|t| Term::new(t.coeff * c, t.alpha, t.logpow))
        .collect()
}

pub fn add(a: &[Term], b: &[Term]) -> Vec<Term> {
    canonicalize(a.iter().chain(b.iter()).copied().collect())
}

pub fn multiply(a: &[Term], b: &[Term]) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(Term::new(
                x.coeff * y.coeff,
                x.alpha + y.alpha,
                x.logpow + y.logpow,
            ));
        }
    }
    canonicalize(out)
}

pub fn powi(terms: &[Term], n: u32) -> Vec<Term> {
    let mut acc = vec![Term::constant(1.0)];
    for _ in 0..n {
        acc = multiply(&acc, terms);
    }
    acc
}

/// Multiply every term by `t^shift`.
pub fn shift_exponent(terms: &[Term], shift: f64) -> Vec<Term> {
    terms
        .iter()
        .map(|t| Term::new(t.coeff, t.alpha + shift, t.logpow))
        .collect()
}

fn binomial(n: u32, k: u32) -> f64 {
    let mut r = 1.0;
    for i in 0..k {
        r *= (n - i) as f64 / (i + 1) as f64;
    }
    r
}

/// `(a + b ln t)^m` expanded in powers of `ln t`.
fn log_affine_power(a: f64, b: f64, m: u32) -> Vec<Term> {
    (0..=m)
        .map(|j| Term::new(binomial(m, j) * a.powi((m - j) as i32) * b.powi(j as i32), 0.0, j))
        .collect()
}

/// Antiderivative, expressed again in the power-log basis.
///
/// For `alpha != -1` the integration-by-parts recurrence gives
/// `t^(a+1) * sum_j (-1)^j k!/(k-j)! (ln t)^(k-j) / (a+1)^(j+1)`;
/// for `alpha == -1` the antiderivative is `(ln t)^(k+1)/(k+1)`.
pub fn antiderivative(terms: &[Term]) -> Vec<Term> {
    let mut out = Vec::new();
    for t in terms {
        if same_exponent(t.alpha, -1.0) {
            out.push(Term::new(
                t.coeff / (t.logpow as f64 + 1.0),
                0.0,
                t.logpow + 1,
            ));
            continue;
        }
        let a1 = t.alpha + 1.0;
        let k = t.logpow;
        let mut falling = 1.0;
        for j in 0..=k {
            if j > 0 {
                falling *= (k - j + 1) as f64;
            }
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            out.push(Term::new(
                t.coeff * sign * falling / a1.powi(j as i32 + 1),
                a1,
                k - j,
            ));
        }
    }
    canonicalize(out)
}

pub fn derivative(terms: &[Term]) -> Vec<Term> {
    let mut out = Vec::new();
    for t in terms {
        if t.alpha != 0.0 {
            out.push(Term::new(t.coeff * t.alpha, t.alpha - 1.0, t.logpow));
        }
        if t.logpow > 0 {
            out.push(Term::new(t.coeff * t.logpow as f64, t.alpha - 1.0, t.logpow - 1));
        }
    }
    canonicalize(out)
}

/// Substitute `t -> t / s` and re-expand in the `t` basis.
pub fn dilate(terms: &[Term], s: f64) -> Vec<Term> {
    let ln_s = s.ln();
    let mut out = Vec::new();
    for t in terms {
        let c = t.coeff * s.powf(-t.alpha);
        for lt in log_affine_power(-ln_s, 1.0, t.logpow) {
            out.push(Term::new(c * lt.coeff, t.alpha, lt.logpow));
        }
    }
    canonicalize(out)
}

/// Dominant term as `t -> 0+`: smallest exponent, then highest log power.
pub fn dominant_at_zero(terms: &[Term]) -> Option<Term> {
    terms.iter().copied().min_by(|a, b| {
        if same_exponent(a.alpha, b.alpha) {
            b.logpow.cmp(&a.logpow)
        } else {
            a.alpha.partial_cmp(&b.alpha).unwrap_or(Ordering::Equal)
        }
    })
}

/// Dominant term as `t -> inf`: largest exponent, then highest log power.
pub fn dominant_at_infinity(terms: &[Term]) -> Option<Term> {
    terms.iter().copied().max_by(|a, b| {
        if same_exponent(a.alpha, b.alpha) {
            a.logpow.cmp(&b.logpow)
        } else {
            a.alpha.partial_cmp(&b.alpha).unwrap_or(Ordering::Equal)
        }
    })
}

/// Exact limit of the sum as `t -> 0+`. Expects canonical terms.
pub fn limit_at_zero(terms: &[Term]) -> f64 {
    let Some(d) = dominant_at_zero(terms) else {
        return 0.0;
    };
    let sign_ln = if d.logpow % 2 == 0 { 1.0 } else { -1.0 };
    if d.alpha > EXPONENT_EPS {
        0.0
    } else if d.alpha.abs() <= EXPONENT_EPS && d.logpow == 0 {
        d.coeff
    } else {
        d.coeff.signum() * sign_ln * f64::INFINITY
    }
}

/// Exact limit of the sum as `t -> inf`. Expects canonical terms.
pub fn limit_at_infinity(terms: &[Term]) -> f64 {
    let Some(d) = dominant_at_infinity(terms) else {
        return 0.0;
    };
    if d.alpha < -EXPONENT_EPS {
        0.0
    } else if d.alpha.abs() <= EXPONENT_EPS && d.logpow == 0 {
        d.coeff
    } else {
        d.coeff.signum() * f64::INFINITY
    }
}

/// Composition `outer(inner(t))` kept inside the family when possible:
/// a polynomial outer (nonnegative integer exponents, no logs) composes with
/// any inner sum; any outer composes with a positive pure monomial inner.
pub fn compose(outer: &[Term], inner: &[Term]) -> Option<Vec<Term>> {
    if outer.is_empty() {
        return Some(Vec::new());
    }
    let polynomial = outer
        .iter()
        .all(|t| t.logpow == 0 && is_nonneg_integer(t.alpha).is_some());
    if polynomial {
        let mut out = Vec::new();
        for t in outer {
            let n = is_nonneg_integer(t.alpha).unwrap();
            out.extend(scale(&powi(inner, n), t.coeff));
        }
        return Some(canonicalize(out));
    }
    if inner.len() == 1 && inner[0].logpow == 0 && inner[0].coeff > 0.0 {
        let (c, a) = (inner[0].coeff, inner[0].alpha);
        let ln_c = c.ln();
        let mut out = Vec::new();
        for t in outer {
            let base = t.coeff * c.powf(t.alpha);
            for lt in log_affine_power(ln_c, a, t.logpow) {
                out.push(Term::new(base * lt.coeff, a * t.alpha, lt.logpow));
            }
        }
        return Some(canonicalize(out));
    }
    if inner.is_empty() {
        // outer(0) for a non-polynomial outer
        let v = limit_at_zero(outer);
        return if v.is_finite() {
            Some(if v == 0.0 { Vec::new() } else { vec![Term::constant(v)] })
        } else {
            None
        };
    }
    None
}

/// Closed-form solution of `sum(t) = level` on `(lo, hi)` for the shapes that
/// admit one: a single pure power, or a constant plus a single pure power.
pub fn solve_closed_form(terms: &[Term], level: f64, lo: f64, hi: f64) -> Option<f64> {
    let root = match terms {
        [t] if t.logpow == 0 && t.alpha != 0.0 => (level / t.coeff).powf(1.0 / t.alpha),
        [a, b] if a.logpow == 0 && b.logpow == 0 && (a.is_constant() || b.is_constant()) => {
            let (c0, p) = if a.is_constant() { (a, b) } else { (b, a) };
            if p.alpha == 0.0 {
                return None;
            }
            ((level - c0.coeff) / p.coeff).powf(1.0 / p.alpha)
        }
        _ => return None,
    };
    if root.is_finite() && root >= lo && root <= hi {
        Some(root)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antiderivative_of_log() {
        // d/dt (t ln t - t) = ln t
        let f = antiderivative(&[Term::new(1.0, 0.0, 1)]);
        for &t in &[0.3f64, 1.0, 2.5] {
            let expect = t * t.ln() - t;
            assert!((eval(&f, t) - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn antiderivative_of_reciprocal_is_log() {
        let f = antiderivative(&[Term::new(2.0, -1.0, 1)]);
        assert_eq!(f, vec![Term::new(1.0, 0.0, 2)]);
    }

    #[test]
    fn derivative_inverts_antiderivative() {
        let terms = vec![Term::new(1.5, -0.5, 2), Term::new(-2.0, 1.3, 0), Term::new(0.7, -1.0, 1)];
        let back = derivative(&antiderivative(&terms));
        for &t in &[0.1, 0.9, 3.0, 40.0] {
            assert!((eval(&back, t) - eval(&terms, t)).abs() < 1e-12 * (1.0 + eval(&terms, t).abs()));
        }
    }

    #[test]
    fn limits() {
        assert_eq!(limit_at_zero(&[Term::new(1.0, 0.0, 1)]), f64::NEG_INFINITY);
        assert_eq!(limit_at_zero(&[Term::new(1.0, 0.0, 2)]), f64::INFINITY);
        assert_eq!(limit_at_zero(&[Term::new(3.0, 0.0, 0), Term::new(1.0, 0.5, 4)]), 3.0);
        assert_eq!(limit_at_infinity(&[Term::new(1.0, -1.0, 3)]), 0.0);
        assert_eq!(limit_at_infinity(&[Term::new(-1.0, 0.0, 1)]), f64::NEG_INFINITY);
        assert_eq!(limit_at_infinity(&[Term::new(2.0, 0.0, 0), Term::new(1.0, -1.0, 0)]), 2.0);
    }

    #[test]
    fn cancellation_drops_terms() {
        let s = add(&[Term::power(1.0, -1.0)], &[Term::power(-1.0, -1.0)]);
        assert!(s.is_empty());
    }

    #[test]
    fn dilation_expands_logs() {
        let terms = vec![Term::new(1.0, 0.5, 1)];
        let d = dilate(&terms, 3.0);
        for &t in &[0.5, 2.0, 9.0] {
            assert!((eval(&d, t) - eval(&terms, t / 3.0)).abs() < 1e-13);
        }
    }

    #[test]
    fn compose_polynomial_and_monomial() {
        let outer = vec![Term::power(1.0, 2.0)];
        let inner = vec![Term::constant(1.0), Term::power(-0.5, -1.0)];
        let c = compose(&outer, &inner).unwrap();
        assert!((eval(&c, 2.0) - 0.75f64.powi(2)).abs() < 1e-15);
        let outer = vec![Term::new(1.0, 1.5, 1)];
        let inner = vec![Term::power(2.0, -0.5)];
        let c = compose(&outer, &inner).unwrap();
        let u: f64 = 2.0 * 4.0f64.powf(-0.5);
        assert!((eval(&c, 4.0) - u.powf(1.5) * u.ln()).abs() < 1e-14);
        assert!(compose(&outer, &[Term::constant(1.0), Term::power(1.0, 1.0)]).is_none());
    }

    #[test]
    fn closed_form_roots() {
        let r = solve_closed_form(&[Term::power(1.0, -1.0)], 0.25, 1.0, f64::INFINITY).unwrap();
        assert!((r - 4.0).abs() < 1e-14);
        let r = solve_closed_form(&[Term::constant(1.0), Term::power(-0.5, -1.0)], 0.75, 0.5, 10.0)
            .unwrap();
        assert!((r - 2.0).abs() < 1e-14);
    }
}
