//! Nondecreasing functions `G` on `[0, inf)` with `G(0) = 0`, piecewise power-log
//! in the argument and `+inf` beyond a cap. Integrals of `G(f*)` drive every
//! norm: `u^p` for Lebesgue norms, `Phi(u / lambda)` for Orlicz modulars.

use crate::error::{Error, Result};
use crate::ppl::{interior_probe, Piece, Ppl};
use crate::term::{self, Term};

#[derive(Debug, Clone, PartialEq)]
pub struct Gauge {
    pieces: Vec<Piece>,
    cap: f64,
}

impl Gauge {
    /// `u^p`, `p > 0`.
    pub fn power(p: f64) -> Self {
        Gauge {
            pieces: vec![Piece::new(0.0, f64::INFINITY, vec![Term::power(1.0, p)])],
            cap: f64::INFINITY,
        }
    }

    pub fn identity() -> Self {
        Self::power(1.0)
    }

    /// A gauge from a function of `u` on the half-line, infinite for `u > cap`.
    pub fn from_ppl(phi: &Ppl, cap: f64) -> Result<Self> {
        if !(cap > 0.0) {
            return Err(Error::InvalidSpace(format!("gauge cap {cap} must be positive")));
        }
        let pieces = phi
            .pieces()
            .iter()
            .filter(|p| p.lo < cap)
            .map(|p| Piece::new(p.lo, p.hi.min(cap), p.terms.clone()))
            .collect();
        Ok(Gauge { pieces, cap })
    }

    pub fn cap(&self) -> f64 {
        self.cap
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// `u -> G(u / lambda)`.
    pub fn rescaled(&self, lambda: f64) -> Gauge {
        Gauge {
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece::new(p.lo * lambda, p.hi * lambda, term::dilate(&p.terms, lambda)))
                .collect(),
            cap: self.cap * lambda,
        }
    }

    pub fn eval(&self, u: f64) -> f64 {
        if u > self.cap {
            return f64::INFINITY;
        }
        if u <= 0.0 {
            return 0.0;
        }
        for p in &self.pieces {
            if u >= p.lo && u < p.hi {
                return p.eval(u);
            }
            if u == p.hi && u == self.cap {
                return p.value_at_hi();
            }
        }
        0.0
    }

    /// Terms valid on the whole band `(a, b)` of the argument (empty means zero).
    pub(crate) fn terms_on(&self, a: f64, b: f64) -> &[Term] {
        let mid = interior_probe(a, b);
        self.pieces
            .iter()
            .find(|p| mid >= p.lo && mid < p.hi)
            .map_or(&[][..], |p| &p.terms[..])
    }

    /// Piece endpoints strictly inside `(0, cap)`, plus the cap if finite.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut b: Vec<f64> = self
            .pieces
            .iter()
            .flat_map(|p| [p.lo, p.hi])
            .filter(|&u| u > 0.0 && u < self.cap)
            .collect();
        if self.cap.is_finite() {
            b.push(self.cap);
        }
        b.sort_by(|x, y| x.partial_cmp(y).unwrap());
        b.dedup();
        b
    }

    /// True when the gauge is `c * u^p` on all of `[0, inf)`.
    pub fn as_power(&self) -> Option<(f64, f64)> {
        match self.pieces.as_slice() {
            [p] if p.lo == 0.0 && p.hi.is_infinite() && self.cap.is_infinite() => match p.terms.as_slice() {
                [t] if t.logpow == 0 => Some((t.coeff, t.alpha)),
                _ => None,
            },
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::Domain;

    #[test]
    fn rescaled_power() {
        let g = Gauge::power(2.0).rescaled(2.0);
        assert!((g.eval(3.0) - 2.25).abs() < 1e-15);
    }

    #[test]
    fn capped_gauge() {
        let phi = Ppl::monomial(Domain::Halfline, 0.0, f64::INFINITY, 1.0, 2.0, 0).unwrap();
        let g = Gauge::from_ppl(&phi, 1.0).unwrap();
        assert_eq!(g.eval(1.0), 1.0);
        assert_eq!(g.eval(1.5), f64::INFINITY);
        assert_eq!(g.breakpoints(), vec![1.0]);
        let h = g.rescaled(0.5);
        assert_eq!(h.cap(), 0.5);
        assert!((h.eval(0.25) - 0.25).abs() < 1e-15);
    }
}
