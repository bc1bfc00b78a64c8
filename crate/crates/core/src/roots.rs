//! Root bracketing and bracketed solves used to split pieces at sign changes
//! and to invert monotone segments.

use crate::error::Result;
use crate::term::{self, Term};

/// Relative tolerance in `t` for located roots and crossings.
pub const T_TOL: f64 = 1e-12;
pub const MAX_ITER: usize = 200;
const GRID: usize = 256;

/// Probe grid on `(lo, hi)`, log-spaced when the interval touches 0, is
/// unbounded, or spans more than a decade.
fn probe_grid(lo: f64, hi: f64) -> Vec<f64> {
    let (a, b) = match (lo > 0.0, hi.is_finite()) {
        (true, true) => (lo, hi),
        (false, true) => (hi * 2f64.powi(-60), hi),
        (true, false) => (lo, lo.max(1.0) * 2f64.powi(60)),
        (false, false) => (2f64.powi(-60), 2f64.powi(60)),
    };
    let geometric = lo <= 0.0 || !hi.is_finite() || b / a > 10.0;
    let mut pts: Vec<f64> = (0..=GRID)
        .map(|i| {
            let s = i as f64 / GRID as f64;
            if geometric {
                (a.ln() + s * (b.ln() - a.ln())).exp()
            } else {
                a + s * (b - a)
            }
        })
        .filter(|&t| t > lo && t < hi)
        .collect();
    pts.dedup();
    pts
}

/// Bisection for a sign change of `f` on `[a, b]`, `f(a)` and `f(b)` of opposite sign.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..MAX_ITER {
        let m = 0.5 * (a + b);
        if (b - a) <= T_TOL * m.abs().max(f64::MIN_POSITIVE) || m == a || m == b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Illinois-modified regula falsi on a bracket; falls back to bisection steps
/// when progress stalls.
pub fn solve_bracketed<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    let mut side = 0i8;
    for i in 0..MAX_ITER {
        let width = b - a;
        if width <= T_TOL * a.abs().max(b.abs()).max(f64::MIN_POSITIVE) {
            break;
        }
        let mut c = (a * fb - b * fa) / (fb - fa);
        if !(c > a && c < b) || i % 8 == 7 {
            c = 0.5 * (a + b);
        }
        let fc = f(c);
        if fc == 0.0 {
            return c;
        }
        if (fc > 0.0) == (fb > 0.0) {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
    }
    0.5 * (a + b)
}

/// Sign of the sum at a limit endpoint (0+ or inf).
fn limit_sign(terms: &[Term], at_zero: bool) -> f64 {
    let d = if at_zero {
        term::dominant_at_zero(terms)
    } else {
        term::dominant_at_infinity(terms)
    };
    match d {
        None => 0.0,
        Some(d) => {
            let s = d.coeff.signum();
            if at_zero && d.logpow % 2 == 1 {
                -s
            } else {
                s
            }
        }
    }
}

/// Points in `(lo, hi)` where the sum of terms changes sign.
pub fn sign_changes(terms: &[Term], lo: f64, hi: f64) -> Result<Vec<f64>> {
    let terms = term::canonicalize(terms.to_vec());
    if terms.is_empty() {
        return Ok(Vec::new());
    }
    // single monomial: only ln t can change sign
    if terms.len() == 1 {
        let t = terms[0];
        return Ok(if t.logpow % 2 == 1 && lo < 1.0 && hi > 1.0 {
            vec![1.0]
        } else {
            Vec::new()
        });
    }
    let f = |t: f64| term::eval(&terms, t);
    let mut pts = probe_grid(lo, hi);
    if pts.is_empty() {
        return Ok(Vec::new());
    }
    // extend the grid toward the limit ends until the limiting sign is reached
    if lo == 0.0 {
        let want = limit_sign(&terms, true);
        let mut t = pts[0];
        let mut k = 0;
        while want != 0.0 && f(t).signum() != want && k < 900 {
            t *= 0.5;
            pts.insert(0, t);
            k += 1;
        }
    }
    if !hi.is_finite() {
        let want = limit_sign(&terms, false);
        let mut t = *pts.last().unwrap();
        let mut k = 0;
        while want != 0.0 && f(t).signum() != want && k < 900 {
            t *= 2.0;
            pts.push(t);
            k += 1;
        }
    }
    let mut roots = Vec::new();
    let mut prev_t = pts[0];
    let mut prev_v = f(prev_t);
    for &t in &pts[1..] {
        let v = f(t);
        if v == 0.0 {
            continue;
        }
        if prev_v != 0.0 && (v > 0.0) != (prev_v > 0.0) {
            let r = term::solve_closed_form(&terms, 0.0, prev_t, t)
                .unwrap_or_else(|| bisect(&f, prev_t, t));
            // two sign changes closer than T_TOL are rounding noise in the
            // terms; the function is flat at that scale, so drop both
            if roots.last().is_some_and(|&last: &f64| (r - last).abs() <= T_TOL * r.abs().max(1.0)) {
                roots.pop();
            } else {
                roots.push(r);
            }
        }
        prev_t = t;
        prev_v = v;
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_interior_root() {
        // 1 - 2/t changes sign at t = 2
        let r = sign_changes(&[Term::constant(1.0), Term::power(-2.0, -1.0)], 0.5, 10.0).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn log_root_at_one() {
        let r = sign_changes(&[Term::new(1.0, 0.0, 1)], 0.0, 5.0).unwrap();
        assert_eq!(r, vec![1.0]);
    }

    #[test]
    fn root_beyond_grid_on_halfline() {
        // t^0.5 - 1e20 changes sign at 1e40
        let r = sign_changes(&[Term::power(1.0, 0.5), Term::constant(-1e20)], 1.0, f64::INFINITY)
            .unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0] / 1e40 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn illinois_converges() {
        let f = |t: f64| t * t * t - 2.0;
        let r = solve_bracketed(&f, 0.0, 3.0);
        assert!((r - 2f64.cbrt()).abs() < 1e-11);
    }
}
