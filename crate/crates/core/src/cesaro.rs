//! The Cesaro (Hardy) operator `Cf(x) = (1/x) ∫_0^x f`, exact on piecewise
//! power-log functions, with a quadrature path for evaluable inputs.

use crate::error::{Error, Result};
use crate::ppl::{Piece, Ppl};
use crate::quad::{self, Quad};
use crate::rearrange::RearrangedFunction;
use crate::term::{self, Term};

/// Exact `Cf`. Signed inputs are allowed; pass `f.abs()` for `C|f|`.
pub fn cesaro_transform(f: &Ppl) -> Result<Ppl> {
    let end = f.domain().end();
    let mut out = Vec::new();
    let mut acc = 0.0;
    let mut cursor = 0.0;
    for p in f.pieces() {
        if p.lo > cursor && acc != 0.0 {
            out.push(Piece::new(cursor, p.lo, vec![Term::power(acc, -1.0)]));
        }
        let anti = term::antiderivative(&p.terms);
        let at_lo = if p.lo == 0.0 {
            let v = term::limit_at_zero(&anti);
            if !v.is_finite() {
                return Err(Error::CesaroUndefined(format!(
                    "∫_0^x f diverges on the piece [0, {})",
                    p.hi
                )));
            }
            v
        } else {
            term::eval(&anti, p.lo)
        };
        let mut terms = term::shift_exponent(&anti, -1.0);
        terms.push(Term::power(acc - at_lo, -1.0));
        out.push(Piece::new(p.lo, p.hi, terms));
        if p.hi.is_finite() {
            acc += term::eval(&anti, p.hi) - at_lo;
        }
        cursor = p.hi;
    }
    if cursor < end && acc != 0.0 {
        out.push(Piece::new(cursor, end, vec![Term::power(acc, -1.0)]));
    }
    Ppl::new(f.domain(), out)
}

/// `(1/t) ∫_0^t g` by adaptive quadrature, with the error bound and a
/// convergence flag (an unconverged result is inconclusive).
pub fn cesaro_numeric<G: Fn(f64) -> f64>(g: G, t: f64) -> Quad {
    cesaro_numeric_split(g, &[], t)
}

/// [`cesaro_numeric`] with the integration range split at the known jumps of `g`;
/// a black-box rule can step over a narrow bump without ever sampling it.
pub fn cesaro_numeric_split<G: Fn(f64) -> f64>(g: G, breaks: &[f64], t: f64) -> Quad {
    let mut cuts: Vec<f64> = breaks.iter().copied().filter(|&b| b > 0.0 && b < t).collect();
    cuts.push(0.0);
    cuts.push(t);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let q = quad::integrate_split(&g, &cuts, 1e-12);
    Quad { value: q.value / t, error: q.error / t, converged: q.converged }
}

/// Values of the chain `Cf <= |Cf| <= C|f| <= C(f*)` and of `(Cf)*` at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct Fact1Point {
    pub t: f64,
    pub cf: f64,
    pub abs_cf: f64,
    pub c_abs_f: f64,
    pub c_fstar: f64,
    pub cf_star: f64,
    /// Smallest gap in the chain (negative means a violation).
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fact1Report {
    pub points: Vec<Fact1Point>,
    pub holds: bool,
}

const FACT1_TOL: f64 = 1e-9;

/// Check `Cf <= |Cf| <= C|f| <= C(f*)` and `(Cf)* <= C(f*)` on a grid.
pub fn fact1_check(f: &Ppl, grid: &[f64]) -> Result<Fact1Report> {
    let cf = cesaro_transform(f)?;
    let c_abs = cesaro_transform(&f.abs()?)?;
    let rf = RearrangedFunction::new(f)?;
    let rcf = RearrangedFunction::new(&cf)?;
    let mut points = Vec::with_capacity(grid.len());
    let mut holds = true;
    for &t in grid {
        let v = cf.evaluate(t)?;
        let a = c_abs.evaluate(t)?;
        let m = rf.maximal(t)?;
        let s = rcf.eval(t);
        let slack = [v.abs() - v, a - v.abs(), m - a, m - s]
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        holds &= slack >= -FACT1_TOL * (1.0 + m.abs());
        points.push(Fact1Point { t, cf: v, abs_cf: v.abs(), c_abs_f: a, c_fstar: m, cf_star: s, slack });
    }
    Ok(Fact1Report { points, holds })
}
