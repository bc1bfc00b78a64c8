//! Distribution functions, decreasing rearrangements `f*`, the maximal function
//! `f**` and equimeasurability.
//!
//! `|f|` is cut into monotone segments once; the distribution function is then
//! a sum of per-segment inversions, and integrals of `G(f*)` over `[0, t]` come
//! from the level-set identity
//! `∫_0^t G(f*) = ∫_{|f| > f*(t)} G(|f|) + (t - d_f(f*(t))) G(f*(t))`.

use crate::error::{Error, Result};
use crate::gauge::Gauge;
use crate::ppl::{interior_probe, piece_integral, sum_extended, Ppl};
use crate::quad;
use crate::roots;
use crate::set::Domain;
use crate::term::{self, Term};

/// Bisection tolerance in the level variable.
pub const LAMBDA_TOL: f64 = 1e-12;
const QUAD_TOL: f64 = 1e-11;

/// A piece of `|f|` on which the formula is monotone.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Segment {
    pub lo: f64,
    pub hi: f64,
    pub terms: Vec<Term>,
    pub v_lo: f64,
    pub v_hi: f64,
}

impl Segment {
    fn is_constant(&self) -> bool {
        self.terms.iter().all(Term::is_constant)
    }

    fn increasing(&self) -> bool {
        self.v_hi > self.v_lo
    }

    pub fn sup(&self) -> f64 {
        self.v_lo.max(self.v_hi)
    }

    pub fn inf(&self) -> f64 {
        self.v_lo.min(self.v_hi)
    }

    fn value(&self, t: f64) -> f64 {
        term::eval(&self.terms, t)
    }

    /// Point where the segment takes the value `level`, for `inf < level < sup`.
    fn crossing(&self, level: f64) -> f64 {
        if let Some(r) = term::solve_closed_form(&self.terms, level, self.lo, self.hi) {
            return r;
        }
        let inc = self.increasing();
        // g > 0 on the side toward the larger values
        let g = |t: f64| {
            let d = self.value(t) - level;
            if inc {
                d
            } else {
                -d
            }
        };
        let p = interior_probe(self.lo, self.hi);
        let gp = g(p);
        if gp == 0.0 {
            return p;
        }
        let (mut a, mut b) = if gp > 0.0 { (self.lo, p) } else { (p, self.hi) };
        if a == 0.0 {
            a = b;
            while g(a) > 0.0 && a > f64::MIN_POSITIVE {
                b = a;
                a *= 0.5;
            }
        }
        if b.is_infinite() {
            b = a.max(1.0);
            while g(b) <= 0.0 && b < f64::MAX / 2.0 {
                a = b;
                b *= 2.0;
            }
        }
        roots::bisect(&g, a, b)
    }

    /// Subinterval of the segment where the value lies strictly above `level`.
    pub fn above(&self, level: f64) -> Option<(f64, f64)> {
        if level >= self.sup() {
            return None;
        }
        if level < self.inf() || self.is_constant() {
            return Some((self.lo, self.hi));
        }
        let x = self.crossing(level);
        if self.increasing() {
            (x < self.hi).then_some((x, self.hi))
        } else {
            (self.lo < x).then_some((self.lo, x))
        }
    }

    /// Subinterval where the value lies strictly below `level`.
    pub fn below(&self, level: f64) -> Option<(f64, f64)> {
        if level <= self.inf() {
            return None;
        }
        if level > self.sup() || self.is_constant() {
            return Some((self.lo, self.hi));
        }
        let x = self.crossing(level);
        if self.increasing() {
            (self.lo < x).then_some((self.lo, x))
        } else {
            (x < self.hi).then_some((x, self.hi))
        }
    }

    /// `∫_a^b G(value(t)) dt` for a subinterval `[a, b)` of the segment.
    fn gauge_integral(&self, g: &Gauge, a: f64, b: f64) -> Result<f64> {
        if a >= b {
            return Ok(0.0);
        }
        if self.is_constant() {
            let v = g.eval(self.v_lo);
            return Ok(if v == 0.0 { 0.0 } else { v * (b - a) });
        }
        // cut [a, b) where the value crosses gauge breakpoints
        let va = if a == self.lo { self.v_lo } else { self.value(a) };
        let vb = if b == self.hi { self.v_hi } else { self.value(b) };
        let (umin, umax) = (va.min(vb), va.max(vb));
        let mut cuts = vec![a, b];
        for u in g.breakpoints() {
            if u > umin && u < umax {
                cuts.push(self.crossing(u));
            }
        }
        cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        cuts.dedup();
        let mut parts = Vec::new();
        for w in cuts.windows(2) {
            let (x, y) = (w[0], w[1]);
            if x >= y {
                continue;
            }
            let vm = self.value(interior_probe(x, y));
            if vm > g.cap() {
                return Ok(f64::INFINITY);
            }
            let lo_u = if x == self.lo { self.v_lo } else { self.value(x) };
            let hi_u = if y == self.hi { self.v_hi } else { self.value(y) };
            let outer = g.terms_on(lo_u.min(hi_u), lo_u.max(hi_u));
            if outer.is_empty() {
                continue;
            }
            let numeric = || quad::integrate(&|t: f64| term::eval(outer, self.value(t)), x, y, QUAD_TOL).value;
            let v = match term::compose(outer, &self.terms) {
                Some(c) => {
                    let v = piece_integral(&c, x, y)?;
                    // the integrand is monotone, so the exact value lies between
                    // the end values times the length; cancellation can break this
                    let (ga, gb) = (term::eval(outer, lo_u), term::eval(outer, hi_u));
                    let (lo_v, hi_v) = (ga.min(gb) * (y - x), ga.max(gb) * (y - x));
                    let slack = 1e-9 * hi_v.abs();
                    if v.is_finite() && y.is_finite() && (v < lo_v - slack || v > hi_v + slack) {
                        numeric()
                    } else {
                        v
                    }
                }
                None => numeric(),
            };
            parts.push(v);
        }
        sum_extended(parts)
    }
}

/// Split `|f|` into monotone segments.
pub(crate) fn monotone_segments(f: &Ppl) -> Result<Vec<Segment>> {
    let h = f.abs()?;
    let mut out = Vec::new();
    for p in h.pieces() {
        let mut cuts = vec![p.lo];
        if !p.is_step() {
            cuts.extend(roots::sign_changes(&term::derivative(&p.terms), p.lo, p.hi)?);
        }
        cuts.push(p.hi);
        for w in cuts.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            if lo >= hi {
                continue;
            }
            let v_lo = if lo == 0.0 { term::limit_at_zero(&p.terms) } else { p.eval(lo) };
            let v_hi = if hi.is_infinite() { term::limit_at_infinity(&p.terms) } else { p.eval(hi) };
            out.push(Segment {
                lo,
                hi,
                terms: p.terms.clone(),
                v_lo: v_lo.max(0.0),
                v_hi: v_hi.max(0.0),
            });
        }
    }
    Ok(out)
}

fn times(g: f64, measure: f64) -> f64 {
    if measure == 0.0 || g == 0.0 {
        0.0
    } else {
        g * measure
    }
}

/// The decreasing rearrangement of `|f|`, with segments and level breakpoints
/// computed once at construction.
#[derive(Debug, Clone)]
pub struct RearrangedFunction {
    source: Ppl,
    segments: Vec<Segment>,
    /// `(value, length)` sorted by decreasing value, for step sources.
    steps: Option<Vec<(f64, f64)>>,
    levels: Vec<f64>,
    sup: f64,
    tail: f64,
    support: f64,
}

impl RearrangedFunction {
    pub fn new(f: &Ppl) -> Result<Self> {
        let segments = monotone_segments(f)?;
        let tail = segments
            .iter()
            .filter(|s| s.hi.is_infinite())
            .map(|s| s.v_hi)
            .fold(0.0, f64::max);
        if tail.is_infinite() {
            return Err(Error::NotRearrangeable);
        }
        let sup = segments.iter().map(Segment::sup).fold(0.0, f64::max);
        let support = segments
            .iter()
            .filter(|s| s.sup() > 0.0)
            .map(|s| s.hi - s.lo)
            .sum();
        let steps = f.is_step().then(|| {
            let mut v: Vec<(f64, f64)> = segments
                .iter()
                .filter(|s| s.v_lo > 0.0)
                .map(|s| (s.v_lo, s.hi - s.lo))
                .collect();
            v.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
            let mut merged: Vec<(f64, f64)> = Vec::with_capacity(v.len());
            for (val, len) in v {
                match merged.last_mut() {
                    Some(last) if last.0 == val => last.1 += len,
                    _ => merged.push((val, len)),
                }
            }
            merged
        });
        let mut levels: Vec<f64> = segments
            .iter()
            .flat_map(|s| [s.v_lo, s.v_hi])
            .filter(|v| v.is_finite() && *v > 0.0)
            .collect();
        levels.sort_by(|a, b| a.partial_cmp(b).unwrap());
        levels.dedup();
        Ok(RearrangedFunction { source: f.clone(), segments, steps, levels, sup, tail, support })
    }

    pub fn source(&self) -> &Ppl {
        &self.source
    }

    pub fn domain(&self) -> Domain {
        self.source.domain()
    }

    pub fn is_step(&self) -> bool {
        self.steps.is_some()
    }

    /// `f*(0+) = ||f||_inf`.
    pub fn sup(&self) -> f64 {
        self.sup
    }

    /// `f*(inf) = inf{lambda : d_f(lambda) < inf}`.
    pub fn tail(&self) -> f64 {
        self.tail
    }

    /// Measure of the support, `d_f(0)`.
    pub fn support_measure(&self) -> f64 {
        self.support
    }

    /// Breakpoints of `d_f`: the finite positive values at segment ends.
    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// `d_f(lambda) = m{|f| > lambda}`.
    pub fn distribution(&self, lambda: f64) -> f64 {
        if let Some(steps) = &self.steps {
            return steps.iter().filter(|s| s.0 > lambda).map(|s| s.1).sum();
        }
        self.segments
            .iter()
            .filter_map(|s| s.above(lambda))
            .map(|(a, b)| b - a)
            .sum()
    }

    /// `m{|f| >= lambda}`.
    pub fn measure_at_least(&self, lambda: f64) -> f64 {
        if lambda <= 0.0 {
            return self.domain().measure();
        }
        let flat: f64 = self
            .segments
            .iter()
            .filter(|s| s.is_constant() && s.v_lo == lambda)
            .map(|s| s.hi - s.lo)
            .sum();
        self.distribution(lambda) + flat
    }

    /// `f*(t)`: sorted values for steps, bisection on `d_f` otherwise.
    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return self.sup;
        }
        if t >= self.support {
            return 0.0;
        }
        if let Some(steps) = &self.steps {
            let mut acc = 0.0;
            for &(v, len) in steps {
                acc += len;
                if acc > t {
                    return v;
                }
            }
            return 0.0;
        }
        if self.distribution(self.tail) <= t {
            return self.tail;
        }
        let mut lo = self.tail;
        let mut hi = if self.sup.is_finite() { self.sup } else { (2.0 * lo).max(1.0) };
        while self.distribution(hi) > t {
            lo = hi;
            hi *= 2.0;
        }
        for _ in 0..roots::MAX_ITER {
            if hi - lo <= LAMBDA_TOL * hi {
                break;
            }
            let mid = if lo == 0.0 {
                hi / 256.0
            } else if hi > 4.0 * lo {
                lo.sqrt() * hi.sqrt()
            } else {
                0.5 * (lo + hi)
            };
            if mid <= lo || mid >= hi {
                break;
            }
            if self.distribution(mid) > t {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi < f64::MIN_POSITIVE {
                break;
            }
        }
        hi
    }

    /// `∫_{|f| > lambda} G(|f|)`.
    pub fn integral_above(&self, g: &Gauge, lambda: f64) -> Result<f64> {
        let parts: Result<Vec<f64>> = self
            .segments
            .iter()
            .filter_map(|s| s.above(lambda).map(|(a, b)| s.gauge_integral(g, a, b)))
            .collect();
        sum_extended(parts?)
    }

    /// `∫_{|f| < lambda} G(|f|)`.
    pub fn integral_below(&self, g: &Gauge, lambda: f64) -> Result<f64> {
        let parts: Result<Vec<f64>> = self
            .segments
            .iter()
            .filter_map(|s| s.below(lambda).map(|(a, b)| s.gauge_integral(g, a, b)))
            .collect();
        sum_extended(parts?)
    }

    /// `∫_{lo < |f| < hi} G(|f|)`.
    fn integral_band(&self, g: &Gauge, lo: f64, hi: f64) -> Result<f64> {
        let mut parts = Vec::new();
        for s in &self.segments {
            let (Some(a), Some(b)) = (s.above(lo), s.below(hi)) else {
                continue;
            };
            let (x, y) = (a.0.max(b.0), a.1.min(b.1));
            if x < y {
                parts.push(s.gauge_integral(g, x, y)?);
            }
        }
        sum_extended(parts)
    }

    /// `∫_I G(|f|) = ∫_0^{m(I)} G(f*)`.
    pub fn total(&self, g: &Gauge) -> Result<f64> {
        if let Some(steps) = &self.steps {
            return Ok(steps.iter().map(|&(v, len)| times(g.eval(v), len)).sum());
        }
        let parts: Result<Vec<f64>> = self
            .segments
            .iter()
            .map(|s| s.gauge_integral(g, s.lo, s.hi))
            .collect();
        sum_extended(parts?)
    }

    fn steps_window(steps: &[(f64, f64)], g: &Gauge, a: f64, b: f64) -> f64 {
        let mut acc: f64 = 0.0;
        let mut sum = 0.0;
        for &(v, len) in steps {
            let (x, y) = (acc.max(a), (acc + len).min(b));
            if x < y {
                sum += times(g.eval(v), y - x);
            }
            acc += len;
            if acc >= b {
                break;
            }
        }
        sum
    }

    /// `Psi_G(t) = ∫_0^t G(f*)`.
    pub fn psi(&self, g: &Gauge, t: f64) -> Result<f64> {
        self.window(g, 0.0, t)
    }

    /// `∫_a^b G(f*(s)) ds` for `0 <= a <= b <= inf`.
    pub fn window(&self, g: &Gauge, a: f64, b: f64) -> Result<f64> {
        self.window_at(g, a, b, None, None)
    }

    /// `window` with `f*(a)` and `f*(b)` supplied when already known.
    fn window_at(&self, g: &Gauge, a: f64, b: f64, la: Option<f64>, lb: Option<f64>) -> Result<f64> {
        let b = b.min(self.domain().measure());
        if a >= b {
            return Ok(0.0);
        }
        if let Some(steps) = &self.steps {
            return Ok(Self::steps_window(steps, g, a, b));
        }
        if a >= self.support {
            return Ok(0.0);
        }
        if b >= self.domain().measure() || (b >= self.support && self.tail == 0.0) {
            if a == 0.0 {
                return self.total(g);
            }
            let la = la.unwrap_or_else(|| self.eval(a));
            let below = self.integral_below(g, la)?;
            return sum_extended([below, times(g.eval(la), self.measure_at_least(la) - a)]);
        }
        let lb = lb.unwrap_or_else(|| self.eval(b));
        let d_b = self.distribution(lb);
        let at_b = times(g.eval(lb), (b - d_b).max(0.0));
        if a == 0.0 {
            return sum_extended([self.integral_above(g, lb)?, at_b]);
        }
        let la = la.unwrap_or_else(|| self.eval(a));
        if la <= lb {
            return Ok(times(g.eval(la), b - a));
        }
        let band = self.integral_band(g, lb, la)?;
        let at_a = times(g.eval(la), (self.measure_at_least(la) - a).max(0.0));
        sum_extended([band, at_a, at_b])
    }

    /// `f**(t) = (1/t) ∫_0^t f*`.
    pub fn maximal(&self, t: f64) -> Result<f64> {
        if t <= 0.0 {
            return Ok(self.sup);
        }
        Ok(self.psi(&Gauge::identity(), t)? / t)
    }

    /// `f*` as an exact step function, when the source is a step function.
    pub fn as_step_ppl(&self) -> Option<Ppl> {
        let steps = self.steps.as_ref()?;
        let mut acc = 0.0;
        let mut triples = Vec::new();
        for &(v, len) in steps {
            triples.push((acc, acc + len, v));
            acc += len;
        }
        Ppl::step(self.domain(), &triples).ok()
    }

    /// A window `s -> f*(start + s)` on `[0, end - start)`.
    pub fn profile(&self, start: f64, end: f64) -> Profile<'_> {
        let end = end.min(self.domain().measure());
        let start = start.min(end);
        let at_start = self.eval(start);
        let at_end = if end < self.domain().measure() { self.eval(end) } else { 0.0 };
        Profile { rf: self, start, end, at_start, at_end }
    }

    pub fn full_profile(&self) -> Profile<'_> {
        self.profile(0.0, f64::INFINITY)
    }
}

pub fn distribution(f: &Ppl, lambda: f64) -> Result<f64> {
    Ok(RearrangedFunction::new(f)?.distribution(lambda))
}

pub fn decreasing_rearrangement(f: &Ppl) -> Result<RearrangedFunction> {
    RearrangedFunction::new(f)
}

/// `D_s f(t) = f(t/s) chi_I(t/s)`.
pub fn dilation(f: &Ppl, s: f64) -> Result<Ppl> {
    f.dilate(s)
}

/// A decreasing function `s -> f*(start + s)` on `[0, len)`; norms act on these.
#[derive(Debug, Clone, Copy)]
pub struct Profile<'a> {
    rf: &'a RearrangedFunction,
    start: f64,
    end: f64,
    at_start: f64,
    at_end: f64,
}

impl<'a> Profile<'a> {
    pub fn rearranged(&self) -> &'a RearrangedFunction {
        self.rf
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn len(&self) -> f64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        !(self.len() > 0.0) || self.sup() == 0.0
    }

    pub fn domain(&self) -> Domain {
        self.rf.domain()
    }

    pub fn eval(&self, s: f64) -> f64 {
        if s >= self.len() {
            0.0
        } else {
            self.rf.eval(self.start + s)
        }
    }

    pub fn sup(&self) -> f64 {
        if self.len() > 0.0 {
            self.at_start
        } else {
            0.0
        }
    }

    /// Value approached as `s -> inf` (zero on finite windows).
    pub fn tail(&self) -> f64 {
        if self.end.is_infinite() {
            self.rf.tail()
        } else {
            0.0
        }
    }

    /// Measure of `{s : g(s) > lambda}`.
    pub fn distribution(&self, lambda: f64) -> f64 {
        let d = self.rf.distribution(lambda);
        (d - self.start).clamp(0.0, self.len())
    }

    /// `∫_0^s G(g)`.
    pub fn psi(&self, gauge: &Gauge, s: f64) -> Result<f64> {
        let s = s.min(self.len());
        let at_end = (s == self.len()).then_some(self.at_end);
        self.rf.window_at(gauge, self.start, self.start + s, Some(self.at_start), at_end)
    }

    /// `∫_0^len G(g)`.
    pub fn integral(&self, gauge: &Gauge) -> Result<f64> {
        self.rf.window_at(gauge, self.start, self.end, Some(self.at_start), Some(self.at_end))
    }

    /// Level values where the distribution function can kink.
    pub fn levels(&self) -> Vec<f64> {
        let top = self.sup();
        self.rf.levels().iter().copied().filter(|&v| v <= top).collect()
    }
}

/// `d_f = d_g` at every level breakpoint of either function, at midpoints between
/// consecutive breakpoints, and on a 64-point geometric refinement grid.
/// Exact for step functions; relative tolerance `1e-10` otherwise.
pub fn equimeasurable(f: &Ppl, g: &Ppl) -> Result<bool> {
    f.domain().check_same(g.domain())?;
    let rf = RearrangedFunction::new(f)?;
    let rg = RearrangedFunction::new(g)?;
    let tol = if rf.is_step() && rg.is_step() { 1e-14 } else { 1e-10 };
    let mut grid: Vec<f64> = vec![0.0];
    grid.extend(rf.levels());
    grid.extend(rg.levels());
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup();
    let mids: Vec<f64> = grid.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    grid.extend(mids);
    let positive: Vec<f64> = grid.iter().copied().filter(|&v| v > 0.0).collect();
    let lo = positive.iter().copied().fold(f64::INFINITY, f64::min).min(1.0) / 4.0;
    let hi = positive.iter().copied().fold(0.0, f64::max).max(1.0) * 4.0;
    for i in 0..64 {
        grid.push(lo * (hi / lo).powf(i as f64 / 63.0));
    }
    Ok(grid.into_iter().all(|lambda| {
        let (a, b) = (rf.distribution(lambda), rg.distribution(lambda));
        a == b || (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }))
}
