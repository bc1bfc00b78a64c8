//! Norms in the catalog spaces, Orlicz modulars, fundamental functions,
//! dilation-norm and Boyd-index estimates.
//!
//! Symmetric norms only see `f*`, so they are evaluated on a [`Profile`], a
//! window of the rearrangement. Cesaro norms go through the exact transform.

use crate::cesaro::cesaro_transform;
use crate::error::{Error, Result};
use crate::gauge::Gauge;
use crate::limits::{self, LimitEstimate};
use crate::ppl::Ppl;
use crate::quad;
use crate::rearrange::{Profile, RearrangedFunction};
use crate::space::{NormMethod, NormResult, OrliczSpec, QuasiConcave, Space, SpaceDescriptor};

const LUX_TOL: f64 = 1e-10;
const LUX_CAP: f64 = 1e30;
const GOLDEN_TOL: f64 = 1e-10;
const QUAD_TOL: f64 = 1e-11;
/// Relative error reported for results that come out of bisection or quadrature.
const NUMERIC_ERROR: f64 = 1e-9;

/// `||f||_X`. Divergent defining integrals give `+inf`.
pub fn norm(f: &Ppl, x: &SpaceDescriptor) -> Result<NormResult> {
    f.domain().check_same(x.domain)?;
    match &x.space {
        Space::Cesaro(inner) => {
            let g = cesaro_transform(&f.abs()?)?;
            symmetric_norm(&g, inner)
        }
        s => symmetric_norm(f, s),
    }
}

fn symmetric_norm(f: &Ppl, space: &Space) -> Result<NormResult> {
    let rf = match RearrangedFunction::new(f) {
        Ok(r) => r,
        Err(Error::NotRearrangeable) => return Ok(NormResult::exact(f64::INFINITY)),
        Err(e) => return Err(e),
    };
    let value = norm_profile(&rf.full_profile(), space)?;
    let exact = match space {
        Space::Lp(p) => rf.is_step() || p.is_infinite() || p.fract() == 0.0,
        Space::L1CapLinf => true,
        Space::L1PlusLinf | Space::Lorentz(_) => rf.is_step() || f.domain().measure() <= 1.0,
        _ => false,
    };
    Ok(if exact || value == 0.0 || value.is_infinite() {
        NormResult { value, method: NormMethod::Exact, error_bound: 0.0 }
    } else {
        NormResult::numeric(value, NUMERIC_ERROR * value)
    })
}

/// Norm of a decreasing profile in a symmetric space of the catalog.
pub fn norm_profile(p: &Profile, space: &Space) -> Result<f64> {
    if p.is_empty() {
        return Ok(0.0);
    }
    match space {
        Space::Lp(q) if q.is_infinite() => Ok(p.sup()),
        Space::Lp(q) => Ok(p.integral(&Gauge::power(*q))?.powf(1.0 / q)),
        Space::L1CapLinf => Ok(p.integral(&Gauge::identity())?.max(p.sup())),
        Space::L1PlusLinf => p.psi(&Gauge::identity(), p.len().min(1.0)),
        Space::Orlicz(o) => luxemburg(p, o),
        Space::Lorentz(q) => lorentz(p, q),
        Space::Marcinkiewicz(q) => marcinkiewicz(p, q),
        Space::Cesaro(_) => Err(Error::InvalidSpace("profiles carry symmetric norms only".into())),
    }
}

/// `I_Phi(f) = ∫ Phi(|f|)`.
pub fn orlicz_modular(f: &Ppl, spec: &OrliczSpec) -> Result<f64> {
    match RearrangedFunction::new(f) {
        Ok(rf) => rf.total(&spec.gauge()),
        Err(Error::NotRearrangeable) => Ok(f64::INFINITY),
        Err(e) => Err(e),
    }
}

/// `rho_Phi(f) = I_Phi(C|f|)`.
pub fn cesaro_orlicz_modular(f: &Ppl, spec: &OrliczSpec) -> Result<f64> {
    orlicz_modular(&cesaro_transform(&f.abs()?)?, spec)
}

/// Luxemburg norm `inf{lambda > 0 : I_Phi(g / lambda) <= 1}` by bisection.
fn luxemburg(p: &Profile, o: &OrliczSpec) -> Result<f64> {
    let g = o.gauge();
    let modular = |lambda: f64| p.integral(&g.rescaled(lambda));
    let (mut lo, mut hi);
    if modular(1.0)? <= 1.0 {
        hi = 1.0;
        lo = 0.5;
        while modular(lo)? <= 1.0 {
            hi = lo;
            lo *= 0.5;
            if lo < 1e-300 {
                return Ok(0.0);
            }
        }
    } else {
        lo = 1.0;
        hi = 2.0;
        while modular(hi)? > 1.0 {
            lo = hi;
            hi *= 2.0;
            if hi > LUX_CAP {
                return Ok(f64::INFINITY);
            }
        }
    }
    while hi - lo > LUX_TOL * hi {
        let mid = (lo * hi).sqrt();
        if modular(mid)? <= 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// `∫ g dphi` over the window, written as the layer cake `∫_0^sup phi(d_g(lambda)) dlambda`
/// (this includes the atom `phi(0+) ||g||_inf`).
fn lorentz(p: &Profile, q: &QuasiConcave) -> Result<f64> {
    let sup = p.sup();
    let tail = p.tail();
    let phi_of_dist = |lambda: f64| {
        let d = p.distribution(lambda);
        if d.is_infinite() {
            q.phi_inf
        } else {
            q.eval(d)
        }
    };
    let mut levels: Vec<f64> = p.levels().into_iter().filter(|&v| v > tail).collect();
    levels.push(tail);
    if sup.is_finite() {
        levels.push(sup);
    }
    levels.sort_by(|a, b| a.partial_cmp(b).unwrap());
    levels.dedup();
    let mut total = 0.0;
    if tail > 0.0 {
        total += tail * phi_of_dist(0.5 * tail);
    }
    let step = p.rearranged().is_step();
    for w in levels.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a >= b {
            continue;
        }
        total += if step {
            (b - a) * phi_of_dist(0.5 * (a + b))
        } else {
            quad::integrate(&phi_of_dist, a, b, QUAD_TOL).value
        };
    }
    if sup.is_infinite() {
        let top = *levels.last().unwrap();
        total += quad::integrate(&phi_of_dist, top, f64::INFINITY, QUAD_TOL).value;
    }
    Ok(total)
}

fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if b - a <= GOLDEN_TOL * b.abs().max(1e-300) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// `sup_s phi(s) g**(s)`: geometric candidate grid, breakpoints, golden-section
/// refinement around the best candidate, and limit probes at both ends.
fn marcinkiewicz(p: &Profile, q: &QuasiConcave) -> Result<f64> {
    let len = p.len();
    let id = Gauge::identity();
    let objective = |s: f64| -> f64 {
        match p.psi(&id, s) {
            Ok(v) => q.eval(s) * v / s,
            Err(_) => f64::NAN,
        }
    };
    // limit probes
    let mut best = if q.atom0 > 0.0 { q.atom0 * p.sup() } else { 0.0 };
    if best.is_infinite() {
        return Ok(best);
    }
    if len.is_infinite() && p.tail() > 0.0 {
        let at_inf = if q.phi_inf.is_infinite() { f64::INFINITY } else { q.phi_inf * p.tail() };
        if at_inf.is_infinite() {
            return Ok(at_inf);
        }
        best = best.max(at_inf);
    }
    // the grid below is finite, so an unbounded objective needs its limit
    let diverges = |e: LimitEstimate| e.decision == limits::LimitDecision::Diverges;
    let objective_r = |s: f64| Ok(objective(s));
    if p.sup().is_infinite() && diverges(limits::limit_at_zero(objective_r)) {
        return Ok(f64::INFINITY);
    }
    if len.is_infinite() && q.phi_inf.is_infinite() && diverges(limits::limit_at_infinity(objective_r)) {
        return Ok(f64::INFINITY);
    }
    let mut cands: Vec<f64> = (-80..=80).map(|j| 2f64.powf(j as f64 / 2.0)).filter(|&s| s <= len).collect();
    cands.extend(q.phi.breakpoints().into_iter().filter(|&s| s > 0.0 && s <= len && s.is_finite()));
    if let Some(steps) = p.rearranged().as_step_ppl() {
        let start = p.start();
        cands.extend(
            steps
                .breakpoints()
                .into_iter()
                .map(|b| b - start)
                .filter(|&s| s > 0.0 && s <= len && s.is_finite()),
        );
    }
    if len.is_finite() {
        cands.push(len);
    }
    cands.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cands.dedup();
    let vals: Vec<f64> = cands.iter().map(|&s| objective(s)).collect();
    if vals.iter().any(|v| v.is_nan()) {
        return Err(Error::Representation("maximal function evaluation failed".into()));
    }
    let (i, &vmax) = vals
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap();
    best = best.max(vmax);
    if vmax.is_finite() {
        for (a, b) in [(i.saturating_sub(1), i), (i, (i + 1).min(cands.len() - 1))] {
            if a < b {
                best = best.max(golden_max(&objective, cands[a], cands[b]).1);
            }
        }
    }
    Ok(best)
}

/// `phi_X(t) = ||chi_[0,t]||_X`.
pub fn fundamental_function(x: &SpaceDescriptor, t: f64) -> Result<f64> {
    let t = t.min(x.domain.end());
    if !(t > 0.0) {
        return Ok(0.0);
    }
    Ok(norm(&Ppl::indicator(x.domain, 0.0, t)?, x)?.value)
}

/// Numerical limits `phi_X(0+)` and (on the half-line) `phi_X(inf)`.
pub fn fundamental_limits(x: &SpaceDescriptor) -> (LimitEstimate, Option<LimitEstimate>) {
    let at_zero = limits::limit_at_zero(|t| fundamental_function(x, t));
    let at_inf = (x.domain.end().is_infinite())
        .then(|| limits::limit_at_infinity(|t| fundamental_function(x, t)));
    (at_zero, at_inf)
}

/// Probe functions for dilation-norm estimates: indicators, decreasing steps and
/// truncated powers.
fn probe_family(domain: crate::set::Domain) -> Vec<Ppl> {
    use crate::set::Domain;
    let mut out = Vec::new();
    let js: Vec<i32> = match domain {
        Domain::Unit => (0..=10).collect(),
        Domain::Halfline => (-6..=10).collect(),
    };
    for &j in &js {
        let a = 2f64.powi(-j);
        out.push(Ppl::indicator(domain, 0.0, a).expect("valid indicator"));
        let stairs: Vec<(f64, f64, f64)> = (0..6)
            .map(|i| (a * 2f64.powi(-i - 1), a * 2f64.powi(-i), (i + 1) as f64))
            .collect();
        out.push(Ppl::step(domain, &stairs).expect("valid steps"));
        out.push(Ppl::monomial(domain, 0.0, a, 1.0, -0.25, 0).expect("valid power"));
        out.push(Ppl::monomial(domain, 0.0, a, 1.0, -0.5, 0).expect("valid power"));
    }
    if domain == Domain::Halfline {
        for &e in &[-0.5, -1.0, -2.0] {
            out.push(Ppl::monomial(domain, 1.0, f64::INFINITY, 1.0, e, 0).expect("valid power"));
        }
    }
    out
}

/// Lower estimate of `||D_s||_{X -> X}` as the largest ratio `||D_s f|| / ||f||`
/// over the probe family.
pub fn dilation_norm_estimate(x: &SpaceDescriptor, s: f64) -> Result<f64> {
    if x.is_cesaro() {
        return Err(Error::Inapplicable("dilation estimates are for symmetric spaces".into()));
    }
    let mut best: f64 = 0.0;
    for f in probe_family(x.domain) {
        let n = norm(&f, x)?.value;
        if !(n.is_finite() && n > 0.0) {
            continue;
        }
        let d = norm(&f.dilate(s)?, x)?.value;
        best = best.max(d / n);
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexSource {
    ClosedForm,
    Declared,
    /// Probe-family estimate; a heuristic, not a proof.
    Estimate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoydIndices {
    pub lower: f64,
    pub upper: f64,
    pub source: IndexSource,
}

const BOYD_K: i32 = 10;

/// Boyd indices `p(X) <= q(X)`: closed forms where known, declared values for
/// Orlicz, Lorentz and Marcinkiewicz spaces, otherwise the probe-family estimate
/// `ln s / ln ||D_s||` at `s = 2^10` and `s = 2^-10`.
pub fn boyd_indices(x: &SpaceDescriptor) -> Result<BoydIndices> {
    let closed = |lower, upper| Ok(BoydIndices { lower, upper, source: IndexSource::ClosedForm });
    let declared = |(lower, upper)| Ok(BoydIndices { lower, upper, source: IndexSource::Declared });
    match &x.space {
        Space::Cesaro(_) => return Err(Error::Inapplicable("Boyd indices are defined for symmetric spaces".into())),
        Space::Lp(p) => return closed(*p, *p),
        Space::L1CapLinf | Space::L1PlusLinf => return closed(1.0, f64::INFINITY),
        Space::Orlicz(o) => {
            let g = o.gauge();
            if let Some((_, p)) = g.as_power() {
                return closed(p, p);
            }
            if let Some(ix) = o.indices {
                return declared(ix);
            }
        }
        Space::Lorentz(q) | Space::Marcinkiewicz(q) => {
            if let Some(ix) = q.boyd {
                return declared(ix);
            }
        }
    }
    let s = 2f64.powi(BOYD_K);
    let index = |n: f64, s: f64| {
        let l = n.ln();
        if l.abs() <= 1e-12 {
            f64::INFINITY
        } else {
            s.ln() / l
        }
    };
    let lower = index(dilation_norm_estimate(x, s)?, s);
    let upper = index(dilation_norm_estimate(x, 1.0 / s)?, 1.0 / s);
    Ok(BoydIndices { lower, upper, source: IndexSource::Estimate })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Boundedness {
    pub bounded: bool,
    /// The decision rests on an estimated index.
    pub estimate: bool,
}

/// `C` is bounded on `X` iff the lower Boyd index exceeds 1.
pub fn cesaro_bounded(x: &SpaceDescriptor) -> Result<Boundedness> {
    let b = boyd_indices(&x.symmetric())?;
    Ok(Boundedness { bounded: b.lower > 1.0, estimate: b.source == IndexSource::Estimate })
}

/// `CX != {0}`: always on `[0, 1]`; on the half-line iff `(1/t) chi_(1,inf)` lies in `X`.
pub fn cx_nontrivial(x: &SpaceDescriptor) -> Result<bool> {
    let x = x.symmetric();
    match x.domain {
        crate::set::Domain::Unit => Ok(true),
        crate::set::Domain::Halfline => {
            let f = Ppl::monomial(x.domain, 1.0, f64::INFINITY, 1.0, -1.0, 0)?;
            Ok(norm(&f, &x)?.value.is_finite())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ppl::Piece;
    use crate::set::Domain;
    use crate::space::{Delta2, QuasiConcave};
    use crate::term::Term;

    const H: Domain = Domain::Halfline;
    const U: Domain = Domain::Unit;

    fn sqrt_phi(d: Domain) -> QuasiConcave {
        QuasiConcave::new(Ppl::monomial(d, 0.0, d.end(), 1.0, 0.5, 0).unwrap(), None).unwrap()
    }

    #[test]
    fn lp_examples() {
        let f = Ppl::indicator(H, 0.0, 1.0).unwrap();
        assert_eq!(norm(&f, &SpaceDescriptor::lp(H, 2.0)).unwrap().value, 1.0);
        let c2 = SpaceDescriptor::lp(H, 2.0).cesaro().unwrap();
        let r = norm(&f, &c2).unwrap();
        assert!((r.value - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(r.method, NormMethod::Exact);
        let c1 = SpaceDescriptor::lp(H, 1.0).cesaro().unwrap();
        assert_eq!(norm(&f, &c1).unwrap().value, f64::INFINITY);
    }

    #[test]
    fn sum_and_intersection() {
        let f = Ppl::indicator(H, 0.0, 2.0).unwrap().scale(2.0);
        let x = SpaceDescriptor::new(H, Space::L1PlusLinf).unwrap();
        assert_eq!(norm(&f, &x).unwrap().value, 2.0);
        let y = SpaceDescriptor::new(H, Space::L1CapLinf).unwrap();
        assert_eq!(norm(&f, &y).unwrap().value, 4.0);
    }

    #[test]
    fn orlicz_examples() {
        let x = SpaceDescriptor::new(H, Space::Orlicz(OrliczSpec::power(2.0))).unwrap();
        let f = Ppl::indicator(H, 0.0, 4.0).unwrap();
        assert!((norm(&f, &x).unwrap().value - 2.0).abs() < 1e-9);
        let spec = OrliczSpec::power(2.0);
        assert_eq!(orlicz_modular(&Ppl::indicator(H, 0.0, 3.0).unwrap(), &spec).unwrap(), 3.0);
        let capped = OrliczSpec::new(spec.phi.clone(), 0.0, 1.0, Delta2::default(), None).unwrap();
        let g = Ppl::indicator(H, 0.0, 1.0).unwrap().scale(2.0);
        assert_eq!(orlicz_modular(&g, &capped).unwrap(), f64::INFINITY);
        let rho = cesaro_orlicz_modular(&Ppl::indicator(H, 0.0, 1.0).unwrap(), &spec).unwrap();
        assert!((rho - 2.0).abs() < 1e-14);
    }

    #[test]
    fn orlicz_with_flat_start() {
        // Phi(u) = (u - 1)_+^2 and f = 3 chi_[0,1]: (3/l - 1)^2 = 1 at l = 3/2
        let phi = Ppl::new(
            H,
            vec![Piece::new(1.0, f64::INFINITY, vec![Term::power(1.0, 2.0), Term::power(-2.0, 1.0), Term::constant(1.0)])],
        )
        .unwrap();
        let o = OrliczSpec::new(phi, 1.0, f64::INFINITY, Delta2::default(), None).unwrap();
        let x = SpaceDescriptor::new(H, Space::Orlicz(o)).unwrap();
        let f = Ppl::indicator(H, 0.0, 1.0).unwrap().scale(3.0);
        assert!((norm(&f, &x).unwrap().value - 1.5).abs() < 1e-9);
    }

    #[test]
    fn lorentz_and_marcinkiewicz() {
        let f = Ppl::indicator(H, 0.0, 1.0).unwrap();
        let lor = SpaceDescriptor::new(H, Space::Lorentz(sqrt_phi(H))).unwrap();
        let mar = SpaceDescriptor::new(H, Space::Marcinkiewicz(sqrt_phi(H))).unwrap();
        assert!((norm(&f, &lor).unwrap().value - 1.0).abs() < 1e-14);
        assert!((norm(&f, &mar).unwrap().value - 1.0).abs() < 1e-12);
        // fundamental function of a Lorentz space is phi
        for &t in &[0.25, 1.0, 4.0] {
            assert!((fundamental_function(&lor, t).unwrap() - t.sqrt()).abs() < 1e-13);
        }
        // 1/t on [1, inf): f* = 1/(1+s); Lorentz norm ∫ f* dphi = ∫ 1/(2 sqrt(s)(1+s)) = pi/2
        let g = Ppl::monomial(H, 1.0, f64::INFINITY, 1.0, -1.0, 0).unwrap();
        let v = norm(&g, &lor).unwrap().value;
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-8, "{v}");
        // Marcinkiewicz: sup sqrt(s) ln(1+s)/s, attained where 2s = (1+s) ln(1+s)
        let m = norm(&g, &mar).unwrap().value;
        let oracle = (1..200000)
            .map(|i| {
                let s = i as f64 * 1e-4;
                (1.0 + s).ln() / s.sqrt()
            })
            .fold(0.0, f64::max);
        assert!((m - oracle).abs() < 1e-7, "{m} vs {oracle}");
    }

    #[test]
    fn lorentz_atom() {
        // phi = sqrt(t) + 1/2 on the unit interval: norm of chi_[0,1/4] is 1/2 + 1/2
        let phi = Ppl::new(U, vec![Piece::new(0.0, 1.0, vec![Term::power(1.0, 0.5), Term::constant(0.5)])]).unwrap();
        let x = SpaceDescriptor::new(U, Space::Lorentz(QuasiConcave::new(phi, None).unwrap())).unwrap();
        let f = Ppl::indicator(U, 0.0, 0.25).unwrap();
        assert!((norm(&f, &x).unwrap().value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn fundamental_limits_examples() {
        let (z, _) = fundamental_limits(&SpaceDescriptor::lp(U, f64::INFINITY));
        assert_eq!(z.decision, crate::limits::LimitDecision::PositiveLimit);
        let (z, i) = fundamental_limits(&SpaceDescriptor::lp(H, 2.0));
        assert!(z.tends_to_zero());
        assert_eq!(i.unwrap().decision, crate::limits::LimitDecision::Diverges);
    }

    #[test]
    fn boyd_and_boundedness() {
        let b = boyd_indices(&SpaceDescriptor::lp(H, 2.0)).unwrap();
        assert_eq!((b.lower, b.upper, b.source), (2.0, 2.0, IndexSource::ClosedForm));
        assert!(!cesaro_bounded(&SpaceDescriptor::lp(H, 1.0)).unwrap().bounded);
        assert!(cesaro_bounded(&SpaceDescriptor::lp(H, 2.0)).unwrap().bounded);
        assert!(cesaro_bounded(&SpaceDescriptor::lp(H, f64::INFINITY)).unwrap().bounded);
        let phi = Ppl::monomial(H, 0.0, f64::INFINITY, 1.0, 2.0, 0).unwrap();
        let o = OrliczSpec::new(phi, 0.0, 1.0, Delta2::default(), Some((2.0, 3.0))).unwrap();
        let b = boyd_indices(&SpaceDescriptor::new(H, Space::Orlicz(o)).unwrap()).unwrap();
        assert_eq!((b.lower, b.source), (2.0, IndexSource::Declared));
        let lor = SpaceDescriptor::new(H, Space::Lorentz(sqrt_phi(H))).unwrap();
        let e = boyd_indices(&lor).unwrap();
        assert_eq!(e.source, IndexSource::Estimate);
        assert!((e.lower - 2.0).abs() < 1e-6 && (e.upper - 2.0).abs() < 1e-6, "{e:?}");
    }

    #[test]
    fn dilation_factor() {
        let f = Ppl::indicator(H, 0.0, 1.0).unwrap();
        let x = SpaceDescriptor::lp(H, 2.0);
        let r = norm(&f.dilate(4.0).unwrap(), &x).unwrap().value / norm(&f, &x).unwrap().value;
        assert!((r - 2.0).abs() < 1e-15);
    }

    #[test]
    fn nontriviality() {
        assert!(cx_nontrivial(&SpaceDescriptor::lp(U, 1.0)).unwrap());
        assert!(!cx_nontrivial(&SpaceDescriptor::lp(H, 1.0)).unwrap());
        assert!(cx_nontrivial(&SpaceDescriptor::lp(H, 2.0)).unwrap());
    }

    #[test]
    fn marcinkiewicz_detects_divergence() {
        let phi = QuasiConcave::new(Ppl::monomial(H, 0.0, f64::INFINITY, 1.0, 0.25, 0).unwrap(), None).unwrap();
        let x = SpaceDescriptor::new(H, Space::Marcinkiewicz(phi)).unwrap();
        // phi f** = 2 t^(-1/4) near 0
        let f = Ppl::monomial(H, 0.0, 1.0, 1.0, -0.5, 0).unwrap();
        assert_eq!(norm(&f, &x).unwrap().value, f64::INFINITY);
        // phi f** = 4/3 on (0, 1), decreasing after
        let g = Ppl::monomial(H, 0.0, 1.0, 1.0, -0.25, 0).unwrap();
        assert!((norm(&g, &x).unwrap().value - 4.0 / 3.0).abs() < 1e-9);
        // phi f** ~ (8/7) t^(1/8) at infinity
        let tail = Ppl::monomial(H, 1.0, f64::INFINITY, 1.0, -0.125, 0).unwrap();
        assert_eq!(norm(&tail, &x).unwrap().value, f64::INFINITY);
    }
}
