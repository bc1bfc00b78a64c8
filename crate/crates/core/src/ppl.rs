//! Piecewise power-log functions: on each half-open piece `[a, b)` the value is a
//! finite sum of `c * t^alpha * (ln t)^k`, and zero off all pieces.

use crate::error::{Error, Result};
use crate::roots;
use crate::set::{Domain, MeasurableSet};
use crate::term::{self, Term};

/// Pieces carrying more terms than this are rejected.
pub const MAX_TERMS: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub lo: f64,
    pub hi: f64,
    pub terms: Vec<Term>,
}

impl Piece {
    pub fn new(lo: f64, hi: f64, terms: Vec<Term>) -> Self {
        Piece { lo, hi, terms }
    }

    pub fn constant(lo: f64, hi: f64, c: f64) -> Self {
        Piece::new(lo, hi, vec![Term::constant(c)])
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_step(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|t| t.is_constant())
    }

    /// Value of a step piece.
    pub fn step_value(&self) -> f64 {
        self.terms.first().map_or(0.0, |t| t.coeff)
    }

    /// Representative interior point, used to read off signs.
    pub fn probe(&self) -> f64 {
        interior_probe(self.lo, self.hi)
    }

    pub fn eval(&self, t: f64) -> f64 {
        term::eval(&self.terms, t)
    }

    /// Limit of the piece's formula at its left end.
    pub fn value_at_lo(&self) -> f64 {
        if self.lo == 0.0 {
            term::limit_at_zero(&self.terms)
        } else {
            self.eval(self.lo)
        }
    }

    /// Limit of the piece's formula at its right end.
    pub fn value_at_hi(&self) -> f64 {
        if self.hi.is_infinite() {
            term::limit_at_infinity(&self.terms)
        } else {
            self.eval(self.hi)
        }
    }
}

pub(crate) fn interior_probe(lo: f64, hi: f64) -> f64 {
    if hi.is_infinite() {
        (2.0 * lo).max(lo + 1.0)
    } else if lo == 0.0 {
        0.5 * hi
    } else if hi / lo > 16.0 {
        (lo * hi).sqrt()
    } else {
        0.5 * (lo + hi)
    }
}

/// Exact antiderivative difference `F(b) - F(a)` on one piece, using limits at 0 and inf.
pub(crate) fn piece_integral(terms: &[Term], a: f64, b: f64) -> Result<f64> {
    if a >= b || terms.is_empty() {
        return Ok(0.0);
    }
    let f = term::antiderivative(terms);
    let upper = if b.is_infinite() {
        term::limit_at_infinity(&f)
    } else {
        term::eval(&f, b)
    };
    let lower = if a == 0.0 {
        term::limit_at_zero(&f)
    } else {
        term::eval(&f, a)
    };
    if upper.is_infinite() && lower.is_infinite() && upper.signum() == lower.signum() {
        return Err(Error::NotIntegrable(format!("on [{a}, {b})")));
    }
    Ok(upper - lower)
}

pub(crate) fn sum_extended(values: impl IntoIterator<Item = f64>) -> Result<f64> {
    let (mut s, mut pos, mut neg) = (0.0, false, false);
    for v in values {
        if v == f64::INFINITY {
            pos = true;
        } else if v == f64::NEG_INFINITY {
            neg = true;
        } else {
            s += v;
        }
    }
    match (pos, neg) {
        (true, true) => Err(Error::NotIntegrable("+inf and -inf parts".into())),
        (true, false) => Ok(f64::INFINITY),
        (false, true) => Ok(f64::NEG_INFINITY),
        _ => Ok(s),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineOp {
    Add,
    Sub,
    /// Pointwise `max(|f|, |g|)`, splitting pieces where the two cross.
    MaxAbs,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ppl {
    domain: Domain,
    pieces: Vec<Piece>,
}

impl Ppl {
    pub fn new(domain: Domain, pieces: Vec<Piece>) -> Result<Self> {
        let mut pieces = pieces;
        pieces.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap_or(std::cmp::Ordering::Equal));
        let mut prev_hi = 0.0;
        for p in &pieces {
            if !(p.lo >= 0.0 && p.lo < p.hi) || p.lo.is_infinite() {
                return Err(Error::InvalidFunction(format!("bad piece [{}, {})", p.lo, p.hi)));
            }
            if p.hi > domain.end() {
                return Err(Error::Domain(format!(
                    "piece [{}, {}) exceeds the {:?} domain",
                    p.lo, p.hi, domain
                )));
            }
            if p.lo < prev_hi {
                return Err(Error::InvalidFunction(format!("overlapping piece at {}", p.lo)));
            }
            if p.terms.len() > MAX_TERMS {
                return Err(Error::InvalidFunction(format!(
                    "piece [{}, {}) has {} terms (max {MAX_TERMS})",
                    p.lo,
                    p.hi,
                    p.terms.len()
                )));
            }
            if p.terms.iter().any(|t| !t.coeff.is_finite() || !t.alpha.is_finite()) {
                return Err(Error::InvalidFunction("non-finite term".into()));
            }
            prev_hi = p.hi;
        }
        Ok(Self::normalized(domain, pieces))
    }

    fn normalized(domain: Domain, pieces: Vec<Piece>) -> Self {
        let mut out: Vec<Piece> = Vec::with_capacity(pieces.len());
        for mut p in pieces {
            p.terms = term::canonicalize(p.terms);
            if p.terms.is_empty() || p.lo >= p.hi {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.hi == p.lo && last.terms == p.terms => last.hi = p.hi,
                _ => out.push(p),
            }
        }
        Ppl { domain, pieces: out }
    }

    pub fn zero(domain: Domain) -> Self {
        Ppl { domain, pieces: Vec::new() }
    }

    /// `c * chi_[a, b)`.
    pub fn indicator(domain: Domain, a: f64, b: f64) -> Result<Self> {
        Self::step(domain, &[(a, b, 1.0)])
    }

    /// Step function from `(lo, hi, value)` triples.
    pub fn step(domain: Domain, steps: &[(f64, f64, f64)]) -> Result<Self> {
        Self::new(
            domain,
            steps.iter().map(|&(a, b, c)| Piece::constant(a, b, c)).collect(),
        )
    }

    /// A single piece `c * t^alpha * (ln t)^k` on `[a, b)`.
    pub fn monomial(domain: Domain, a: f64, b: f64, c: f64, alpha: f64, logpow: u32) -> Result<Self> {
        Self::new(domain, vec![Piece::new(a, b, vec![Term::new(c, alpha, logpow)])])
    }

    pub fn from_set(set: &MeasurableSet, c: f64) -> Self {
        Self::normalized(
            set.domain(),
            set.intervals().iter().map(|&(a, b)| Piece::constant(a, b, c)).collect(),
        )
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn is_step(&self) -> bool {
        self.pieces.iter().all(Piece::is_step)
    }

    /// Piece endpoints, sorted and deduplicated.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut b: Vec<f64> = self.pieces.iter().flat_map(|p| [p.lo, p.hi]).collect();
        b.dedup();
        b
    }

    pub fn support(&self) -> MeasurableSet {
        MeasurableSet::new(self.domain, self.pieces.iter().map(|p| (p.lo, p.hi)))
            .expect("pieces are valid intervals")
    }

    /// Right end of the last piece (0 for the zero function).
    pub fn support_end(&self) -> f64 {
        self.pieces.last().map_or(0.0, |p| p.hi)
    }

    fn covering(&self, t: f64) -> Option<&Piece> {
        let end = self.domain.end();
        self.pieces
            .iter()
            .find(|p| (t >= p.lo && t < p.hi) || (t == end && p.hi == end))
    }

    pub fn evaluate(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0 && t <= self.domain.end()) || t.is_infinite() {
            return Err(Error::Domain(format!("t = {t} outside {:?}", self.domain)));
        }
        let Some(p) = self.covering(t) else {
            return Ok(0.0);
        };
        if t == 0.0 {
            if p.terms.iter().any(|x| x.alpha < 0.0 || x.logpow > 0) {
                return Err(Error::Domain("piece is singular at t = 0".into()));
            }
            return Ok(term::limit_at_zero(&p.terms));
        }
        Ok(p.eval(t))
    }

    /// Exact `∫_a^b f`, with `+-inf` on divergence.
    pub fn integrate(&self, a: f64, b: f64) -> Result<f64> {
        if !(a >= 0.0 && a <= b && b <= self.domain.end()) {
            return Err(Error::Domain(format!("bad integration range [{a}, {b}]")));
        }
        let parts: Result<Vec<f64>> = self
            .pieces
            .iter()
            .filter(|p| p.lo < b && p.hi > a)
            .map(|p| piece_integral(&p.terms, p.lo.max(a), p.hi.min(b)))
            .collect();
        sum_extended(parts?)
    }

    pub fn integrate_over(&self, set: &MeasurableSet) -> Result<f64> {
        self.domain.check_same(set.domain())?;
        let parts: Result<Vec<f64>> = set
            .intervals()
            .iter()
            .map(|&(a, b)| self.integrate(a, b))
            .collect();
        sum_extended(parts?)
    }

    pub fn total_integral(&self) -> Result<f64> {
        self.integrate(0.0, self.domain.end())
    }

    pub fn scale(&self, c: f64) -> Ppl {
        Self::normalized(
            self.domain,
            self.pieces
                .iter()
                .map(|p| Piece::new(p.lo, p.hi, term::scale(&p.terms, c)))
                .collect(),
        )
    }

    fn merge_with<F>(&self, other: &Ppl, mut f: F) -> Result<Ppl>
    where
        F: FnMut(f64, f64, &[Term], &[Term]) -> Result<Vec<Piece>>,
    {
        self.domain.check_same(other.domain)?;
        let mut cuts: Vec<f64> = self.breakpoints();
        cuts.extend(other.breakpoints());
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup();
        let empty: Vec<Term> = Vec::new();
        let find = |ps: &[Piece], a: f64, b: f64| -> Option<usize> {
            ps.iter().position(|p| p.lo <= a && b <= p.hi)
        };
        let mut out = Vec::new();
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let ta = find(&self.pieces, a, b).map_or(&empty, |i| &self.pieces[i].terms);
            let tb = find(&other.pieces, a, b).map_or(&empty, |i| &other.pieces[i].terms);
            if ta.is_empty() && tb.is_empty() {
                continue;
            }
            out.extend(f(a, b, ta, tb)?);
        }
        Ppl::new(self.domain, out)
    }

    pub fn combine(&self, other: &Ppl, op: CombineOp) -> Result<Ppl> {
        match op {
            CombineOp::Add => {
                self.merge_with(other, |a, b, x, y| Ok(vec![Piece::new(a, b, term::add(x, y))]))
            }
            CombineOp::Sub => self.merge_with(other, |a, b, x, y| {
                Ok(vec![Piece::new(a, b, term::add(x, &term::scale(y, -1.0)))])
            }),
            CombineOp::MaxAbs => {
                let (f, g) = (self.abs()?, other.abs()?);
                f.merge_with(&g, |a, b, x, y| {
                    let diff = term::add(x, &term::scale(y, -1.0));
                    let mut cuts = vec![a];
                    cuts.extend(roots::sign_changes(&diff, a, b)?);
                    cuts.push(b);
                    Ok(cuts
                        .windows(2)
                        .map(|w| {
                            let t = interior_probe(w[0], w[1]);
                            let pick = if term::eval(&diff, t) >= 0.0 { x } else { y };
                            Piece::new(w[0], w[1], pick.to_vec())
                        })
                        .collect())
                })
            }
        }
    }

    pub fn add(&self, other: &Ppl) -> Result<Ppl> {
        self.combine(other, CombineOp::Add)
    }

    pub fn sub(&self, other: &Ppl) -> Result<Ppl> {
        self.combine(other, CombineOp::Sub)
    }

    /// Pointwise product; the family is closed under multiplication.
    pub fn mul(&self, other: &Ppl) -> Result<Ppl> {
        self.merge_with(other, |a, b, x, y| Ok(vec![Piece::new(a, b, term::multiply(x, y))]))
    }

    /// `f * chi_A`.
    pub fn restrict(&self, set: &MeasurableSet) -> Result<Ppl> {
        self.domain.check_same(set.domain())?;
        let mut out = Vec::new();
        for p in &self.pieces {
            for &(a, b) in set.intervals() {
                let lo = p.lo.max(a);
                let hi = p.hi.min(b);
                if lo < hi {
                    out.push(Piece::new(lo, hi, p.terms.clone()));
                }
            }
        }
        Ppl::new(self.domain, out)
    }

    pub fn restrict_interval(&self, a: f64, b: f64) -> Result<Ppl> {
        self.restrict(&MeasurableSet::interval(self.domain, a, b)?)
    }

    /// Split every piece at its sign changes and keep the pieces selected by `keep`
    /// (given the sign at an interior probe), negating where `negate` says so.
    fn split_by_sign(&self, keep: impl Fn(f64) -> bool, negate: impl Fn(f64) -> bool) -> Result<Ppl> {
        let mut out = Vec::new();
        for p in &self.pieces {
            let mut cuts = vec![p.lo];
            cuts.extend(roots::sign_changes(&p.terms, p.lo, p.hi)?);
            cuts.push(p.hi);
            for w in cuts.windows(2) {
                let s = term::eval(&p.terms, interior_probe(w[0], w[1])).signum();
                if !keep(s) {
                    continue;
                }
                let terms = if negate(s) { term::scale(&p.terms, -1.0) } else { p.terms.clone() };
                out.push(Piece::new(w[0], w[1], terms));
            }
        }
        Ppl::new(self.domain, out)
    }

    pub fn abs(&self) -> Result<Ppl> {
        if self.is_step() {
            return Ok(Self::normalized(
                self.domain,
                self.pieces
                    .iter()
                    .map(|p| Piece::constant(p.lo, p.hi, p.step_value().abs()))
                    .collect(),
            ));
        }
        self.split_by_sign(|_| true, |s| s < 0.0)
    }

    /// Pointwise `max(f, 0)`.
    pub fn positive_part(&self) -> Result<Ppl> {
        self.split_by_sign(|s| s > 0.0, |_| false)
    }

    /// `(|f| - level)_+`.
    pub fn excess_over(&self, level: f64) -> Result<Ppl> {
        let a = self.abs()?;
        let shifted = Self::normalized(
            self.domain,
            a.pieces
                .iter()
                .map(|p| Piece::new(p.lo, p.hi, term::add(&p.terms, &[Term::constant(-level)])))
                .collect(),
        );
        shifted.positive_part()
    }

    /// `D_s f(t) = f(t/s) chi_I(t/s)`; on `[0, 1]` the result is truncated to `[0, min(1, s))`.
    pub fn dilate(&self, s: f64) -> Result<Ppl> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::Domain(format!("dilation factor {s}")));
        }
        let end = self.domain.end();
        let pieces = self
            .pieces
            .iter()
            .filter_map(|p| {
                let lo = p.lo * s;
                let hi = (p.hi * s).min(end);
                (lo < hi).then(|| Piece::new(lo, hi, term::dilate(&p.terms, s)))
            })
            .collect();
        Ppl::new(self.domain, pieces)
    }

    pub fn with_domain(&self, domain: Domain) -> Result<Ppl> {
        Ppl::new(domain, self.pieces.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: Domain = Domain::Halfline;

    #[test]
    fn evaluate_examples() {
        let f = Ppl::indicator(Domain::Unit, 0.0, 1.0).unwrap();
        assert_eq!(f.evaluate(0.5).unwrap(), 1.0);
        let g = Ppl::monomial(H, 1.0, f64::INFINITY, 1.0, -1.0, 0).unwrap();
        assert_eq!(g.evaluate(4.0).unwrap(), 0.25);
        let l = Ppl::monomial(Domain::Unit, 0.0, 1.0, 1.0, 0.0, 1).unwrap();
        assert!((l.evaluate((-1f64).exp()).unwrap() + 1.0).abs() < 1e-15);
        assert!(l.evaluate(0.0).is_err());
        assert!(f.evaluate(1.5).is_err());
    }

    #[test]
    fn integrate_examples() {
        let f = Ppl::indicator(H, 0.0, 3.5).unwrap();
        assert_eq!(f.integrate(0.0, f64::INFINITY).unwrap(), 3.5);
        let g = Ppl::monomial(H, 1.0, f64::INFINITY, 1.0, -1.0, 0).unwrap();
        assert_eq!(g.integrate(1.0, f64::INFINITY).unwrap(), f64::INFINITY);
        // ln(1/t) = -ln t on (0, 1]
        let l = Ppl::monomial(Domain::Unit, 0.0, 1.0, -1.0, 0.0, 1).unwrap();
        assert!((l.integrate(0.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn indefinite_sign_is_error() {
        let g = Ppl::monomial(H, 0.0, f64::INFINITY, 1.0, -1.0, 1).unwrap();
        assert!(matches!(g.total_integral(), Err(Error::NotIntegrable(_))));
    }

    #[test]
    fn combine_examples() {
        let f = Ppl::indicator(Domain::Unit, 0.0, 1.0).unwrap();
        let r = f
            .restrict(&MeasurableSet::interval(Domain::Unit, 0.25, 0.5).unwrap())
            .unwrap();
        assert_eq!(r, Ppl::indicator(Domain::Unit, 0.25, 0.5).unwrap());
        let d = f.sub(&f.scale(2.0)).unwrap().abs().unwrap();
        assert_eq!(d, f);
        let a = Ppl::monomial(H, 1.0, f64::INFINITY, 1.0, -1.0, 0).unwrap();
        let b = Ppl::monomial(H, 1.0, 2.0, -1.0, -1.0, 0).unwrap();
        assert_eq!(
            a.add(&b).unwrap(),
            Ppl::monomial(H, 2.0, f64::INFINITY, 1.0, -1.0, 0).unwrap()
        );
    }

    #[test]
    fn abs_splits_at_sign_change() {
        // 1 - 2/t on [1, 4): negative on [1, 2), positive on [2, 4)
        let f = Ppl::new(
            H,
            vec![Piece::new(1.0, 4.0, vec![Term::constant(1.0), Term::power(-2.0, -1.0)])],
        )
        .unwrap();
        let a = f.abs().unwrap();
        assert_eq!(a.pieces().len(), 2);
        assert!((a.pieces()[0].hi - 2.0).abs() < 1e-12);
        assert!((a.evaluate(1.5).unwrap() - (2.0 / 1.5 - 1.0)).abs() < 1e-14);
        // ∫_1^4 |1 - 2/t| = (2 ln 2 - 1) + (2 - 2 ln 2)
        assert!((a.total_integral().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn max_abs_picks_larger() {
        let f = Ppl::step(H, &[(0.0, 2.0, 1.0)]).unwrap();
        let g = Ppl::step(H, &[(1.0, 3.0, -3.0)]).unwrap();
        let m = f.combine(&g, CombineOp::MaxAbs).unwrap();
        assert_eq!(m, Ppl::step(H, &[(0.0, 1.0, 1.0), (1.0, 3.0, 3.0)]).unwrap());
    }

    #[test]
    fn dilation_examples() {
        let f = Ppl::indicator(H, 0.0, 1.0).unwrap();
        assert_eq!(f.dilate(2.0).unwrap(), Ppl::indicator(H, 0.0, 2.0).unwrap());
        let u = Ppl::indicator(Domain::Unit, 0.0, 1.0).unwrap();
        assert_eq!(u.dilate(0.5).unwrap(), Ppl::indicator(Domain::Unit, 0.0, 0.5).unwrap());
        assert_eq!(u.dilate(3.0).unwrap(), u);
    }

    #[test]
    fn excess_over_level() {
        let f = Ppl::step(H, &[(0.0, 1.0, 5.0), (1.0, 2.0, 1.0)]).unwrap();
        assert_eq!(f.excess_over(2.0).unwrap(), Ppl::step(H, &[(0.0, 1.0, 3.0)]).unwrap());
    }

    #[test]
    fn rejects_overlap_and_domain_mismatch() {
        assert!(Ppl::step(H, &[(0.0, 2.0, 1.0), (1.0, 3.0, 1.0)]).is_err());
        assert!(Ppl::step(Domain::Unit, &[(0.0, 2.0, 1.0)]).is_err());
        let f = Ppl::indicator(H, 0.0, 1.0).unwrap();
        let g = Ppl::indicator(Domain::Unit, 0.0, 1.0).unwrap();
        assert!(matches!(f.add(&g), Err(Error::Domain(_))));
    }
}
