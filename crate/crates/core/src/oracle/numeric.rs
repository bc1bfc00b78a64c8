//! Brute-force recomputation of norms from point evaluations only: monotone
//! pieces are found by sampling, level crossings by bisection, and every
//! integral by tanh-sinh quadrature.

use crate::ppl::Ppl;
use crate::quad::tanh_sinh;
use crate::roots::solve_bracketed;
use crate::space::{OrliczSpec, QuasiConcave};

const REL: f64 = 1e-12;
const FAR: f64 = 1e300;
const BISECT: usize = 200;
/// Relative differences below this are quadrature noise, not monotonicity changes.
const NOISE: f64 = 1e-12;

/// A nonnegative function known only through evaluation, with the points where
/// it may fail to be smooth.
pub struct Sampled<'a> {
    g: Box<dyn Fn(f64) -> f64 + 'a>,
    cuts: Vec<f64>,
    segments: Vec<Seg>,
    /// `g(inf)` on unbounded domains.
    pub tail: f64,
    pub sup: f64,
    /// Values keep growing toward the left end.
    pub unbounded: bool,
}

#[derive(Debug, Clone, Copy)]
struct Seg {
    lo: f64,
    hi: f64,
    /// Values just inside the ends.
    v_lo: f64,
    v_hi: f64,
}

fn sample_points(a: f64, b: f64) -> Vec<f64> {
    let mut pts = Vec::new();
    let top = if b.is_finite() { b } else { a.max(1.0) };
    for i in 0..=256 {
        pts.push(a + (top - a) * i as f64 / 256.0);
    }
    if a == 0.0 {
        for i in 1..=240 {
            pts.push(top * 2f64.powf(-(i as f64) / 4.0));
        }
    }
    if b.is_infinite() {
        for i in 1..=240 {
            pts.push(top * 2f64.powf(i as f64 / 4.0));
        }
    }
    pts.retain(|&t| t >= a && t < b);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

fn golden_extremum<F: Fn(f64) -> f64>(g: &F, mut a: f64, mut b: f64, max: bool) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let sign = if max { -1.0 } else { 1.0 };
    let h = |t: f64| sign * g(t);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    for _ in 0..200 {
        if (b - a) <= 1e-15 * b.abs().max(1e-300) {
            break;
        }
        if h(c) < h(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - r * (b - a);
        d = a + r * (b - a);
    }
    0.5 * (a + b)
}

impl<'a> Sampled<'a> {
    /// `cuts` must start at 0 and end at the domain end (possibly `inf`).
    pub fn new(g: impl Fn(f64) -> f64 + 'a, cuts: Vec<f64>) -> Self {
        let g: Box<dyn Fn(f64) -> f64 + 'a> = Box::new(g);
        let mut segments = Vec::new();
        let mut unbounded = false;
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let pts = sample_points(a, b);
            let vals: Vec<f64> = pts.iter().map(|&t| g(t)).collect();
            let mut ends = vec![a];
            let mut dir = 0i8;
            let scale = vals.iter().cloned().filter(|v| v.is_finite()).fold(0.0, f64::max);
            let noise = NOISE * scale;
            for i in 1..pts.len() {
                let d = vals[i] - vals[i - 1];
                let s = if d > noise { 1 } else if d < -noise { -1 } else { 0 };
                if s != 0 && dir != 0 && s != dir {
                    let lo = pts[i.saturating_sub(2)];
                    let hi = pts[(i).min(pts.len() - 1)];
                    ends.push(golden_extremum(&g, lo, hi, dir > 0));
                }
                if s != 0 {
                    dir = s;
                }
            }
            ends.push(b);
            let top = if b.is_finite() { b } else { a.max(1.0) };
            if a == 0.0 && g(top * 2f64.powi(-60)) > g(top * 2f64.powi(-50)) * (1.0 + 1e-6) {
                unbounded = true;
            }
            for e in ends.windows(2) {
                let (lo, hi) = (e[0], e[1]);
                if !(hi > lo) {
                    continue;
                }
                let v_lo = if lo == 0.0 { g(top * 2f64.powi(-60)) } else { g(lo) };
                let v_hi = if hi.is_infinite() { g(FAR) } else { g(hi - (hi - lo) * 1e-12) };
                segments.push(Seg { lo, hi, v_lo, v_hi });
            }
        }
        let mut tail = 0.0;
        if cuts.last().is_some_and(|e| e.is_infinite()) {
            tail = g(FAR);
        }
        let sup = segments.iter().flat_map(|s| [s.v_lo, s.v_hi]).fold(0.0, f64::max);
        if tail < 1e-12 * sup {
            tail = 0.0;
        }
        Sampled { g, cuts, segments, tail, sup, unbounded }
    }

    pub fn from_ppl_abs(f: &'a Ppl) -> Self {
        let mut cuts = vec![0.0];
        for p in f.pieces() {
            cuts.push(p.lo);
            cuts.push(p.hi);
        }
        cuts.push(f.domain().end());
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        Sampled::new(move |t| f.evaluate(t).map(f64::abs).unwrap_or(f64::NAN), cuts)
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.g)(t)
    }

    pub fn cuts(&self) -> &[f64] {
        &self.cuts
    }

    /// Measure of `{g > level}`.
    pub fn distribution(&self, level: f64) -> f64 {
        if level < self.tail {
            return f64::INFINITY;
        }
        let mut m = 0.0;
        for s in &self.segments {
            let (lo, hi) = (s.lo, s.hi);
            let up = s.v_hi > s.v_lo;
            let (small, big) = if up { (s.v_lo, s.v_hi) } else { (s.v_hi, s.v_lo) };
            if level >= big {
                continue;
            }
            if level < small {
                m += hi - lo;
                continue;
            }
            let x = self.crossing(lo, hi, level, up);
            m += if up { hi - x } else { x - lo };
        }
        m
    }

    pub fn crossing(&self, lo: f64, hi: f64, level: f64, up: bool) -> f64 {
        if hi.is_finite() && lo > 0.0 {
            let h = |t: f64| (self.g)(t) - level;
            return solve_bracketed(&h, lo, hi - (hi - lo) * 1e-12);
        }
        let above = |t: f64| (self.g)(t) > level;
        let (mut a, mut b) = (lo, if hi.is_finite() { hi } else { FAR });
        for _ in 0..BISECT {
            let m = if b.is_infinite() || (a > 0.0 && b / a > 4.0) { a.max(1e-300).sqrt() * b.sqrt() } else { 0.5 * (a + b) };
            if !(m > a && m < b) || b - a <= 1e-15 * b {
                break;
            }
            if above(m) == up {
                b = m;
            } else {
                a = m;
            }
        }
        0.5 * (a + b)
    }

    /// Levels where the distribution function may fail to be smooth.
    pub fn critical_levels(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.segments.iter().flat_map(|s| [s.v_lo, s.v_hi]).collect();
        v.push(0.0);
        v.push(self.tail);
        v.push(self.sup);
        v.retain(|x| x.is_finite() && *x >= 0.0 && *x <= self.sup);
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }

    fn level_integral<F: Fn(f64) -> f64>(&self, from: f64, h: F) -> f64 {
        let mut lv = self.critical_levels();
        lv.retain(|&x| x > from);
        let mut acc = 0.0;
        let mut prev = from;
        for x in lv {
            acc += tanh_sinh(&h, prev, x, REL).value;
            prev = x;
        }
        acc
    }

    /// `∫ (g - level)_+`, integrating over the part of each segment above the level.
    pub fn integral_above(&self, level: f64) -> f64 {
        if level < self.tail {
            return f64::INFINITY;
        }
        let h = |t: f64| ((self.g)(t) - level).max(0.0);
        let mut acc = 0.0;
        for s in &self.segments {
            let up = s.v_hi > s.v_lo;
            let (small, big) = if up { (s.v_lo, s.v_hi) } else { (s.v_hi, s.v_lo) };
            if level >= big {
                continue;
            }
            let (a, b) = if level < small {
                (s.lo, s.hi)
            } else {
                let x = self.crossing(s.lo, s.hi, level, up);
                if up { (x, s.hi) } else { (s.lo, x) }
            };
            acc += tanh_sinh(&h, a, b, REL).value;
        }
        acc
    }

    /// `g*(s)`: the least level whose distribution is at most `s`.
    pub fn rearranged(&self, s: f64) -> f64 {
        if self.distribution(self.tail) <= s {
            return self.tail;
        }
        let (mut a, mut b) = (self.tail, self.sup);
        for _ in 0..BISECT {
            let m = 0.5 * (a + b);
            if !(m > a && m < b) || b - a <= 1e-15 * b {
                break;
            }
            if self.distribution(m) <= s {
                b = m;
            } else {
                a = m;
            }
        }
        b
    }

    /// `s g**(s) = ∫_0^s g*`.
    pub fn k_functional(&self, s: f64) -> f64 {
        let l = self.rearranged(s);
        l * s + self.integral_above(l)
    }

    pub fn lp(&self, p: f64) -> f64 {
        if p.is_infinite() {
            return if self.unbounded { f64::INFINITY } else { self.sup };
        }
        let mut acc = 0.0;
        for w in self.cuts.windows(2) {
            acc += tanh_sinh(&|t: f64| (self.g)(t).powf(p), w[0], w[1], REL).value;
        }
        acc.powf(1.0 / p)
    }

    /// `∫ Phi(g / lambda)`, splitting the domain where `g / lambda` crosses a
    /// kink of `Phi`.
    pub fn orlicz_modular(&self, o: &OrliczSpec, lambda: f64) -> f64 {
        if o.b_phi.is_finite() && self.distribution(o.b_phi * lambda) > 0.0 {
            return f64::INFINITY;
        }
        let mut kinks: Vec<f64> = o.phi.breakpoints().into_iter().filter(|u| u.is_finite() && *u > 0.0).collect();
        kinks.push(o.a_phi);
        let mut cuts: Vec<f64> = Vec::new();
        for s in &self.segments {
            cuts.push(s.lo);
            cuts.push(s.hi);
            let up = s.v_hi > s.v_lo;
            let (small, big) = if up { (s.v_lo, s.v_hi) } else { (s.v_hi, s.v_lo) };
            for &k in &kinks {
                let level = k * lambda;
                if level > small && level < big {
                    cuts.push(self.crossing(s.lo, s.hi, level, up));
                }
            }
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let h = |t: f64| o.eval((self.g)(t) / lambda);
        cuts.windows(2).map(|w| tanh_sinh(&h, w[0], w[1], REL).value).sum()
    }

    pub fn luxemburg(&self, o: &OrliczSpec) -> f64 {
        if self.sup == 0.0 {
            return 0.0;
        }
        let ok = |l: f64| self.orlicz_modular(o, l) <= 1.0;
        let (mut lo, mut hi) = (1.0, 1.0);
        if ok(1.0) {
            while ok(lo) && lo > 1e-30 {
                hi = lo;
                lo *= 0.5;
            }
        } else {
            while !ok(hi) {
                lo = hi;
                hi *= 2.0;
                if hi > 1e30 {
                    return f64::INFINITY;
                }
            }
        }
        for _ in 0..80 {
            let m = lo.sqrt() * hi.sqrt();
            if ok(m) {
                hi = m;
            } else {
                lo = m;
            }
            if hi / lo - 1.0 < 1e-13 {
                break;
            }
        }
        hi
    }

    /// `∫_0^inf phi(d_g(v)) dv`.
    pub fn lorentz(&self, q: &QuasiConcave) -> f64 {
        if self.unbounded {
            return f64::NAN;
        }
        let tail = if self.tail > 0.0 { self.tail * q.phi_inf } else { 0.0 };
        tail + self.level_integral(self.tail, |v| q.eval(self.distribution(v)))
    }

    /// `sup_s phi(s) g**(s)` over a geometric grid refined by golden section.
    pub fn marcinkiewicz(&self, q: &QuasiConcave) -> f64 {
        if self.unbounded {
            return f64::NAN;
        }
        let end = *self.cuts.last().unwrap();
        let h = |s: f64| q.eval(s) * self.k_functional(s) / s;
        let grid: Vec<f64> = (-120..=120).map(|j| 2f64.powf(j as f64 / 2.0)).filter(|&s| s <= end).collect();
        let mut best = q.atom0 * self.sup;
        if self.tail > 0.0 {
            best = best.max(q.phi_inf * self.tail);
        }
        let mut arg = None;
        for (i, &s) in grid.iter().enumerate() {
            let v = h(s);
            if v > best {
                best = v;
                arg = Some(i);
            }
        }
        if end.is_finite() {
            best = best.max(h(end));
        }
        if let Some(i) = arg {
            let a = grid[i.saturating_sub(1)];
            let b = grid[(i + 1).min(grid.len() - 1)];
            let s = golden_extremum(&h, a, b, true);
            best = best.max(h(s));
        }
        best
    }
}

/// `C|f|` evaluated by quadrature: exact-free cumulative integrals at the
/// breakpoints, plus a partial integral on the current piece.
pub fn numeric_cesaro(f: &Ppl) -> (impl Fn(f64) -> f64 + '_, Vec<f64>) {
    let mut cuts = vec![0.0];
    for p in f.pieces() {
        cuts.push(p.lo);
        if p.hi.is_finite() {
            cuts.push(p.hi);
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let abs = move |t: f64| f.evaluate(t).map(f64::abs).unwrap_or(f64::NAN);
    let mut cum = vec![0.0];
    for w in cuts.windows(2) {
        let last = *cum.last().unwrap();
        cum.push(last + tanh_sinh(&abs, w[0], w[1], REL).value);
    }
    let knots = cuts.clone();
    let support = f.support_end();
    let g = move |t: f64| {
        if !(t > 0.0) {
            return f64::NAN;
        }
        let i = knots.partition_point(|&c| c <= t) - 1;
        if t >= support {
            return cum[i] / t;
        }
        (cum[i] + tanh_sinh(&abs, knots[i], t, REL).value) / t
    };
    let mut out_cuts = cuts;
    out_cuts.push(f.domain().end());
    out_cuts.dedup();
    (g, out_cuts)
}
