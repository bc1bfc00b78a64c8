//! Order continuity of points of Cesaro spaces `CX` and of the spaces themselves.
//!
//! Point verdicts come from three independent routes: the general
//! characterization (tail norms of `C|f|` when `X_a` is nontrivial, truncation
//! plus vanishing averages when it is trivial), the space-specific tables, and
//! the definition itself along shrinking set families. Numerical limits are
//! semi-decidable, so `Inconclusive` is a first-class outcome.

use std::fmt;

use crate::cesaro::cesaro_transform;
use crate::error::{Error, Result};
use crate::limits::{self, LimitDecision, LimitEstimate, LimitTarget};
use crate::norms::{self, cesaro_bounded, cx_nontrivial, fundamental_limits, IndexSource};
use crate::ppl::Ppl;
use crate::rearrange::RearrangedFunction;
use crate::set::{Domain, MeasurableSet};
use crate::space::{Space, SpaceDescriptor};
use crate::term;

/// Tail windows and truncation levels run over `n = 2^k`, `k = 1..=TAIL_STEPS`.
pub const TAIL_STEPS: i32 = 20;
/// Parameters closer to a case boundary than this make the table inconclusive.
pub const STRADDLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Oc,
    NotOc,
    TrivialSpace,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Oc => "OC",
            Verdict::NotOc => "not-OC",
            Verdict::TrivialSpace => "trivial-space",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// The rule that produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// Tail norms of `f*` on `[0, 1/n)` and `[n, inf)` vanish.
    TailNorms,
    /// `X_a` nontrivial and `(1/t) chi_(l0, inf)` in `X_a`: `(CX)_a = C(X_a)`.
    CesaroOfOcPart,
    /// `X_a = {0}`: `(CX)_a = (CX)_b ∩ Δ0` (with `Δ∞` on the half-line).
    BoundedPartWithVanishingAverage,
    /// The characterization could not choose a case.
    UndecidedCase,
    CesP,
    CesInfinity,
    CesOrliczFinite,
    CesOrliczCappedFlat,
    CesOrliczCappedGap,
    CesLorentzNoAtomUnbounded,
    CesLorentzNoAtomBounded,
    CesLorentzAtomUnbounded,
    CesLorentzAtomBounded,
    CesMarcinkiewiczNoAtomBoydAboveOne,
    CesMarcinkiewiczNoAtomBoydOne,
    CesMarcinkiewiczAtomUnbounded,
    CesMarcinkiewiczAtomBounded,
    CesSumL1Linf,
    CesIntersectionL1Linf,
    /// `X_a = {0}` forces `CX` to miss order continuity.
    TrivialOcPart,
    /// `C` bounded on `X`, so `CX` is OC exactly when `X` is.
    BoundedTransfer,
    LpSpace,
    LinfLike,
    SumL1Linf,
    OrliczDelta2,
    LorentzSpace,
    MarcinkiewiczSpace,
    CesaroSpaceTrivial,
    /// Norms along a shrinking set family.
    DirectFamily,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::TailNorms => "tail norms of f* at 0 and infinity",
            Rule::CesaroOfOcPart => "(CX)_a = C(X_a): tail norms of C|f| in X",
            Rule::BoundedPartWithVanishingAverage => "X_a = {0}: (CX)_b and vanishing Cesaro average",
            Rule::UndecidedCase => "characterization case undecided",
            Rule::CesP => "Ces_p, p < inf: every point is OC",
            Rule::CesInfinity => "Ces_inf: Cf -> 0 at the ends",
            Rule::CesOrliczFinite => "Ces_Phi, b_Phi = inf: rho(lambda f) < inf for all lambda",
            Rule::CesOrliczCappedFlat => "Ces_Phi, a_Phi = 0 < b_Phi < inf: finite modular after truncation and Cf(0+) = 0",
            Rule::CesOrliczCappedGap => "Ces_Phi, 0 < a_Phi, b_Phi < inf: Cf -> 0 at the ends",
            Rule::CesLorentzNoAtomUnbounded => "C Lambda_phi, phi(0+) = 0, phi(inf) = inf: all points OC",
            Rule::CesLorentzNoAtomBounded => "C Lambda_phi, phi(0+) = 0, phi(inf) < inf: (Cf)*(inf) = 0",
            Rule::CesLorentzAtomUnbounded => "C Lambda_phi, phi(0+) > 0, phi(inf) = inf: (CX)_b and Cf(0+) = 0",
            Rule::CesLorentzAtomBounded => "C Lambda_phi, phi(0+) > 0, phi(inf) < inf: Cf -> 0 at the ends",
            Rule::CesMarcinkiewiczNoAtomBoydAboveOne => "C M_phi, phi(0+) = 0, p(M_phi) > 1: phi (Cf)** -> 0 at the ends",
            Rule::CesMarcinkiewiczNoAtomBoydOne => "C M_phi, phi(0+) = 0, p(M_phi) = 1: (CX)_b",
            Rule::CesMarcinkiewiczAtomUnbounded => "C M_phi, phi(0+) > 0, phi(inf) = inf: (CX)_b and Cf(0+) = 0",
            Rule::CesMarcinkiewiczAtomBounded => "C M_phi, phi(0+) > 0, phi(inf) < inf: Cf -> 0 at the ends",
            Rule::CesSumL1Linf => "C(L1+Linf): (Cf)*(inf) = 0",
            Rule::CesIntersectionL1Linf => "C(L1 cap Linf): Cf -> 0 at the ends",
            Rule::TrivialOcPart => "X_a = {0}: CX is not OC",
            Rule::BoundedTransfer => "C bounded on X: CX is OC iff X is",
            Rule::LpSpace => "L^p is OC iff p < inf",
            Rule::LinfLike => "phi_X(0+) > 0: X_a = {0}",
            Rule::SumL1Linf => "L1+Linf: OC iff the measure is finite",
            Rule::OrliczDelta2 => "L^Phi is OC iff b_Phi = inf and Phi is doubling",
            Rule::LorentzSpace => "Lambda_phi is OC iff phi(0+) = 0 and phi(inf) = inf",
            Rule::MarcinkiewiczSpace => "M_phi with p(M_phi) > 1 is not OC",
            Rule::CesaroSpaceTrivial => "CX = {0}",
            Rule::DirectFamily => "norms along a shrinking set family",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Evidence {
    Limit { label: String, estimate: LimitEstimate },
    Curve { label: String, points: Vec<(f64, f64)> },
    Note(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OcVerdict {
    pub subject: String,
    pub verdict: Verdict,
    pub rule: Rule,
    pub evidence: Vec<Evidence>,
}

impl OcVerdict {
    fn new(subject: &str, verdict: Verdict, rule: Rule, evidence: Vec<Evidence>) -> Self {
        OcVerdict { subject: subject.to_string(), verdict, rule, evidence }
    }

    pub fn is_decisive(&self) -> bool {
        matches!(self.verdict, Verdict::Oc | Verdict::NotOc)
    }
}

/// Three-valued outcome of a numeric predicate.
fn combine(parts: &[Option<bool>]) -> Option<bool> {
    if parts.contains(&Some(false)) {
        Some(false)
    } else if parts.iter().all(|p| *p == Some(true)) {
        Some(true)
    } else {
        None
    }
}

fn limit_truth(e: &LimitEstimate) -> Option<bool> {
    match e.decision {
        LimitDecision::TendsToZero => Some(true),
        LimitDecision::PositiveLimit | LimitDecision::Diverges => Some(false),
        LimitDecision::Inconclusive => None,
    }
}

fn to_verdict(t: Option<bool>) -> Verdict {
    match t {
        Some(true) => Verdict::Oc,
        Some(false) => Verdict::NotOc,
        None => Verdict::Inconclusive,
    }
}

fn n_values() -> impl Iterator<Item = f64> {
    (1..=TAIL_STEPS).map(|k| 2f64.powi(k))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TailTest {
    pub passes: Option<bool>,
    pub left: LimitEstimate,
    pub right: LimitEstimate,
    /// `f*(inf)`; nonzero values rule out order continuity.
    pub f_star_at_infinity: f64,
}

/// Norms of `f* chi_[0,1/n)` and `f* chi_[n,inf)` in the symmetric space `X`
/// along `n = 2^k`, `k = 1..=20`; the point is OC iff both tend to zero.
pub fn tail_test_point(f: &Ppl, x: &SpaceDescriptor) -> Result<TailTest> {
    if x.is_cesaro() {
        return Err(Error::Inapplicable("tail test needs a symmetric space".into()));
    }
    f.domain().check_same(x.domain)?;
    let rf = match RearrangedFunction::new(f) {
        Ok(r) => r,
        Err(Error::NotRearrangeable) => return Err(Error::NotInSpace(x.name())),
        Err(e) => return Err(e),
    };
    let full = norms::norm_profile(&rf.full_profile(), &x.space)?;
    if full.is_infinite() {
        return Err(Error::NotInSpace(x.name()));
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    for n in n_values() {
        left.push((1.0 / n, norms::norm_profile(&rf.profile(0.0, 1.0 / n), &x.space)?));
        right.push((n, norms::norm_profile(&rf.profile(n, f64::INFINITY), &x.space)?));
    }
    let left = limits::from_samples(LimitTarget::ZeroPlus, left);
    let right = limits::from_samples(LimitTarget::Infinity, right);
    let mut passes = combine(&[limit_truth(&left), limit_truth(&right)]);
    if rf.tail() > 0.0 {
        passes = Some(false);
    }
    Ok(TailTest { passes, left, right, f_star_at_infinity: rf.tail() })
}

/// `X_a = {0}` iff `phi_X(0+) > 0`; `None` when the limit is inconclusive.
pub fn xa_trivial(x: &SpaceDescriptor) -> Result<(Option<bool>, LimitEstimate)> {
    if x.is_cesaro() {
        return Err(Error::Inapplicable("X_a triviality is tested on symmetric spaces".into()));
    }
    let (at_zero, _) = fundamental_limits(x);
    let t = match at_zero.decision {
        LimitDecision::PositiveLimit | LimitDecision::Diverges => Some(true),
        LimitDecision::TendsToZero => Some(false),
        LimitDecision::Inconclusive => None,
    };
    Ok((t, at_zero))
}

/// `C|f|` as an exact function.
fn cesaro_abs(f: &Ppl) -> Result<Ppl> {
    cesaro_transform(&f.abs()?)
}

/// Exact limits of a piecewise function at `0+` and at the right end of the
/// half-line (zero when the support stays away from the end).
fn exact_end_limits(g: &Ppl) -> (f64, f64) {
    let at_zero = match g.pieces().first() {
        Some(p) if p.lo == 0.0 => term::limit_at_zero(&p.terms).abs(),
        _ => 0.0,
    };
    let at_inf = match g.pieces().last() {
        Some(p) if p.hi.is_infinite() => term::limit_at_infinity(&p.terms).abs(),
        _ => 0.0,
    };
    (at_zero, at_inf)
}

/// `Cf(t) -> 0` as `t -> 0+` (and as `t -> inf` when `at_infinity`), decided by exact
/// limits of the transform, with sampled estimates attached as evidence.
fn vanishing_average(f: &Ppl, at_infinity: bool, evidence: &mut Vec<Evidence>) -> Result<Option<bool>> {
    let g = cesaro_abs(f)?;
    let (z, i) = exact_end_limits(&g);
    let est0 = limits::limit_at_zero(|t| g.evaluate(t));
    evidence.push(Evidence::Limit { label: "C|f| at 0+".into(), estimate: est0 });
    let mut truth = vec![Some(z == 0.0)];
    if at_infinity && f.domain() == Domain::Halfline {
        let est = limits::limit_at_infinity(|t| g.evaluate(t));
        evidence.push(Evidence::Limit { label: "C|f| at infinity".into(), estimate: est });
        truth.push(Some(i == 0.0));
    }
    Ok(combine(&truth))
}

/// `f - s_n` for the truncation `s_n = sign(f) min(|f|, n) chi_[0,n)`, in absolute value.
fn truncation_remainder(f: &Ppl, n: f64) -> Result<Ppl> {
    let a = f.abs()?;
    let end = f.domain().end();
    let inside = a.restrict_interval(0.0, n.min(end))?.excess_over(n)?;
    if n >= end {
        return Ok(inside);
    }
    inside.add(&a.restrict_interval(n, end)?)
}

/// Membership in `(CX)_b` by the truncation test: `||f chi_[n,inf)||_CX -> 0`
/// and `||(|f| - n)_+||_CX -> 0` along `n = 2^k`.
fn bounded_part_test(f: &Ppl, cx: &SpaceDescriptor, evidence: &mut Vec<Evidence>) -> Result<Option<bool>> {
    let end = f.domain().end();
    let a = f.abs()?;
    let mut cut_t = Vec::new();
    let mut cut_v = Vec::new();
    for n in n_values() {
        let tail = if n >= end { Ppl::zero(f.domain()) } else { a.restrict_interval(n, end)? };
        cut_t.push((n, norms::norm(&tail, cx)?.value));
        cut_v.push((n, norms::norm(&a.excess_over(n)?, cx)?.value));
    }
    let t = limits::from_samples(LimitTarget::Infinity, cut_t);
    let v = limits::from_samples(LimitTarget::Infinity, cut_v);
    let truth = combine(&[limit_truth(&t), limit_truth(&v)]);
    evidence.push(Evidence::Limit { label: "||f chi_[n,inf)||_CX".into(), estimate: t });
    evidence.push(Evidence::Limit { label: "||(|f|-n)_+||_CX".into(), estimate: v });
    Ok(truth)
}

fn check_member(f: &Ppl, cx: &SpaceDescriptor) -> Result<()> {
    let n = norms::norm(f, cx)?;
    if n.value.is_infinite() {
        Err(Error::NotInSpace(cx.name()))
    } else {
        Ok(())
    }
}

/// Order continuity of `f` in `CX` by the general characterization.
/// `x` may be the symmetric space `X` or the Cesaro space `CX`.
pub fn oc_point_in_cx(f: &Ppl, x: &SpaceDescriptor) -> Result<OcVerdict> {
    let xs = x.symmetric();
    let cx = xs.cesaro()?;
    let subject = format!("f in {}", cx.name());
    if !cx_nontrivial(&xs)? {
        return Ok(OcVerdict::new(&subject, Verdict::TrivialSpace, Rule::CesaroSpaceTrivial, vec![]));
    }
    check_member(f, &cx)?;
    let (trivial, est) = xa_trivial(&xs)?;
    let mut evidence = vec![Evidence::Limit { label: "phi_X at 0+".into(), estimate: est }];
    match trivial {
        Some(false) => {
            let lambda0 = match xs.domain {
                Domain::Unit => 0.5,
                Domain::Halfline => 1.0,
            };
            let probe = Ppl::monomial(xs.domain, lambda0, xs.domain.end(), 1.0, -1.0, 0)?;
            match tail_test_point(&probe, &xs) {
                Ok(gate) if gate.passes == Some(true) => {}
                Ok(gate) => {
                    evidence.push(Evidence::Limit { label: "(1/t) chi tail, left".into(), estimate: gate.left });
                    evidence.push(Evidence::Limit { label: "(1/t) chi tail, right".into(), estimate: gate.right });
                    return Ok(OcVerdict::new(&subject, Verdict::Inconclusive, Rule::UndecidedCase, evidence));
                }
                Err(Error::NotInSpace(_)) => {
                    evidence.push(Evidence::Note(format!("(1/t) chi_({lambda0},inf) is not in {}", xs.name())));
                    return Ok(OcVerdict::new(&subject, Verdict::Inconclusive, Rule::UndecidedCase, evidence));
                }
                Err(e) => return Err(e),
            }
            let t = tail_test_point(&cesaro_abs(f)?, &xs)?;
            evidence.push(Evidence::Limit { label: "C|f| tail on [0,1/n)".into(), estimate: t.left });
            evidence.push(Evidence::Limit { label: "C|f| tail on [n,inf)".into(), estimate: t.right });
            Ok(OcVerdict::new(&subject, to_verdict(t.passes), Rule::CesaroOfOcPart, evidence))
        }
        Some(true) => {
            let b = bounded_part_test(f, &cx, &mut evidence)?;
            let d = vanishing_average(f, true, &mut evidence)?;
            let v = to_verdict(combine(&[b, d]));
            Ok(OcVerdict::new(&subject, v, Rule::BoundedPartWithVanishingAverage, evidence))
        }
        None => Ok(OcVerdict::new(&subject, Verdict::Inconclusive, Rule::UndecidedCase, evidence)),
    }
}

fn straddles(v: f64) -> bool {
    v > 0.0 && v < STRADDLE_TOL
}

/// `lim phi(t) (C|f|)**(t) = 0` at `0+` (and at infinity on the half-line).
fn weighted_maximal_vanishes(
    f: &Ppl,
    phi: &crate::space::QuasiConcave,
    evidence: &mut Vec<Evidence>,
) -> Result<Option<bool>> {
    let rf = RearrangedFunction::new(&cesaro_abs(f)?)?;
    let g = |t: f64| Ok(phi.eval(t) * rf.maximal(t)?);
    let at_zero = limits::limit_at_zero(g);
    let mut truth = vec![limit_truth(&at_zero)];
    evidence.push(Evidence::Limit { label: "phi (C|f|)** at 0+".into(), estimate: at_zero });
    if f.domain() == Domain::Halfline {
        let at_inf = limits::limit_at_infinity(g);
        truth.push(limit_truth(&at_inf));
        evidence.push(Evidence::Limit { label: "phi (C|f|)** at infinity".into(), estimate: at_inf });
    }
    Ok(combine(&truth))
}

/// Modular test for the capped Orlicz case: for every `lambda = 2^k` some
/// truncation level `n = 2^j` leaves a finite Cesaro modular of `lambda |f - s_n|`.
fn capped_modular_test(f: &Ppl, o: &crate::space::OrliczSpec, evidence: &mut Vec<Evidence>) -> Result<Option<bool>> {
    let mut worst = Vec::new();
    for k in 0..=TAIL_STEPS {
        let lambda = 2f64.powi(k);
        let mut found = None;
        for n in std::iter::once(1.0).chain(n_values()) {
            let h = truncation_remainder(f, n)?.scale(lambda);
            if norms::cesaro_orlicz_modular(&h, o)?.is_finite() {
                found = Some(n);
                break;
            }
        }
        worst.push((lambda, found.unwrap_or(f64::INFINITY)));
        if found.is_none() {
            evidence.push(Evidence::Curve { label: "lambda, first finite truncation level".into(), points: worst });
            return Ok(Some(false));
        }
    }
    evidence.push(Evidence::Curve { label: "lambda, first finite truncation level".into(), points: worst });
    Ok(Some(true))
}

/// Order continuity of `f` in `CX` by the table for the space family of `X`.
pub fn oc_point_closed_form(f: &Ppl, x: &SpaceDescriptor) -> Result<OcVerdict> {
    let xs = x.symmetric();
    let cx = xs.cesaro()?;
    let subject = format!("f in {}", cx.name());
    if !cx_nontrivial(&xs)? {
        return Ok(OcVerdict::new(&subject, Verdict::TrivialSpace, Rule::CesaroSpaceTrivial, vec![]));
    }
    check_member(f, &cx)?;
    let halfline = xs.domain == Domain::Halfline;
    let mut ev = Vec::new();
    let (truth, rule) = match &xs.space {
        Space::Lp(p) if p.is_finite() => (Some(true), Rule::CesP),
        Space::Lp(_) => (vanishing_average(f, true, &mut ev)?, Rule::CesInfinity),
        Space::L1CapLinf => (vanishing_average(f, true, &mut ev)?, Rule::CesIntersectionL1Linf),
        Space::L1PlusLinf => {
            let tail = if halfline { RearrangedFunction::new(&cesaro_abs(f)?)?.tail() } else { 0.0 };
            ev.push(Evidence::Note(format!("(C|f|)*(inf) = {tail}")));
            (Some(tail == 0.0), Rule::CesSumL1Linf)
        }
        Space::Orlicz(o) => {
            if o.b_phi.is_infinite() {
                let mut samples = Vec::new();
                let mut all = true;
                for k in 0..=TAIL_STEPS {
                    let lambda = 2f64.powi(k);
                    let m = norms::cesaro_orlicz_modular(&f.scale(lambda), o)?;
                    samples.push((lambda, m));
                    all &= m.is_finite();
                }
                ev.push(Evidence::Curve { label: "lambda, Cesaro modular of lambda f".into(), points: samples });
                (Some(all), Rule::CesOrliczFinite)
            } else if straddles(o.a_phi) {
                ev.push(Evidence::Note(format!("a_Phi = {} is at the case boundary", o.a_phi)));
                (None, Rule::UndecidedCase)
            } else if o.a_phi == 0.0 {
                let m = capped_modular_test(f, o, &mut ev)?;
                let d = vanishing_average(f, false, &mut ev)?;
                (combine(&[m, d]), Rule::CesOrliczCappedFlat)
            } else {
                (vanishing_average(f, true, &mut ev)?, Rule::CesOrliczCappedGap)
            }
        }
        Space::Lorentz(q) | Space::Marcinkiewicz(q) if straddles(q.atom0) => {
            ev.push(Evidence::Note(format!("phi(0+) = {} is at the case boundary", q.atom0)));
            (None, Rule::UndecidedCase)
        }
        Space::Lorentz(q) => {
            let unbounded = halfline && q.phi_inf.is_infinite();
            match (q.atom0 == 0.0, unbounded) {
                (true, true) => (Some(true), Rule::CesLorentzNoAtomUnbounded),
                (true, false) => {
                    let tail = if halfline { RearrangedFunction::new(&cesaro_abs(f)?)?.tail() } else { 0.0 };
                    ev.push(Evidence::Note(format!("(C|f|)*(inf) = {tail}")));
                    (Some(tail == 0.0), Rule::CesLorentzNoAtomBounded)
                }
                (false, true) => {
                    let b = bounded_part_test(f, &cx, &mut ev)?;
                    let d = vanishing_average(f, false, &mut ev)?;
                    (combine(&[b, d]), Rule::CesLorentzAtomUnbounded)
                }
                (false, false) => (vanishing_average(f, true, &mut ev)?, Rule::CesLorentzAtomBounded),
            }
        }
        Space::Marcinkiewicz(q) => {
            let unbounded = halfline && q.phi_inf.is_infinite();
            if q.atom0 == 0.0 {
                match q.boyd {
                    Some((p, _)) if p > 1.0 => {
                        (weighted_maximal_vanishes(f, q, &mut ev)?, Rule::CesMarcinkiewiczNoAtomBoydAboveOne)
                    }
                    Some((1.0, _)) => {
                        (bounded_part_test(f, &cx, &mut ev)?, Rule::CesMarcinkiewiczNoAtomBoydOne)
                    }
                    _ => {
                        ev.push(Evidence::Note("lower Boyd index not declared".into()));
                        (None, Rule::UndecidedCase)
                    }
                }
            } else if unbounded {
                let b = bounded_part_test(f, &cx, &mut ev)?;
                let d = vanishing_average(f, false, &mut ev)?;
                (combine(&[b, d]), Rule::CesMarcinkiewiczAtomUnbounded)
            } else {
                (vanishing_average(f, true, &mut ev)?, Rule::CesMarcinkiewiczAtomBounded)
            }
        }
        Space::Cesaro(_) => unreachable!("symmetric() strips the Cesaro layer"),
    };
    Ok(OcVerdict::new(&subject, to_verdict(truth), rule, ev))
}

/// Order continuity of a symmetric space from its family parameters.
fn oc_symmetric_space(x: &SpaceDescriptor) -> OcVerdict {
    let subject = x.name();
    let halfline = x.domain == Domain::Halfline;
    let (truth, rule) = match &x.space {
        Space::Lp(p) => (Some(p.is_finite()), Rule::LpSpace),
        Space::L1CapLinf => (Some(false), Rule::LinfLike),
        Space::L1PlusLinf => (Some(!halfline), Rule::SumL1Linf),
        Space::Orlicz(o) => {
            let doubling = if halfline { o.delta2.all } else { o.delta2.infty };
            (Some(o.b_phi.is_infinite() && doubling), Rule::OrliczDelta2)
        }
        Space::Lorentz(q) | Space::Marcinkiewicz(q) if straddles(q.atom0) => (None, Rule::UndecidedCase),
        Space::Lorentz(q) => {
            let unbounded = !halfline || q.phi_inf.is_infinite();
            (Some(q.atom0 == 0.0 && unbounded), Rule::LorentzSpace)
        }
        Space::Marcinkiewicz(q) if q.atom0 > 0.0 => (Some(false), Rule::LinfLike),
        Space::Marcinkiewicz(q) => match q.boyd {
            Some((p, _)) if p > 1.0 => (Some(false), Rule::MarcinkiewiczSpace),
            _ => (None, Rule::UndecidedCase),
        },
        Space::Cesaro(_) => unreachable!("symmetric spaces only"),
    };
    let mut evidence = Vec::new();
    if truth.is_none() {
        evidence.push(Evidence::Note("no rule decides this parameter choice".into()));
    }
    OcVerdict::new(&subject, to_verdict(truth), rule, evidence)
}

/// The table verdict for `CX`, before the bounded-transfer cross-check.
fn oc_cesaro_table(xs: &SpaceDescriptor) -> Result<(Option<bool>, Rule, Vec<Evidence>)> {
    let halfline = xs.domain == Domain::Halfline;
    let mut ev = Vec::new();
    let (trivial, est) = xa_trivial(xs)?;
    ev.push(Evidence::Limit { label: "phi_X at 0+".into(), estimate: est });
    let out = match &xs.space {
        Space::Lp(p) => (Some(p.is_finite()), if p.is_finite() { Rule::CesP } else { Rule::CesInfinity }),
        Space::L1CapLinf => (Some(false), Rule::CesIntersectionL1Linf),
        Space::L1PlusLinf => (Some(!halfline), Rule::CesSumL1Linf),
        Space::Orlicz(o) if o.b_phi.is_finite() => (Some(false), Rule::TrivialOcPart),
        Space::Orlicz(o) => {
            let doubling = if halfline { o.delta2.all } else { o.delta2.infty };
            let index_above_one = match norms::boyd_indices(xs)? {
                b if b.source != IndexSource::Estimate => Some(b.lower > 1.0),
                _ => None,
            };
            match (doubling, index_above_one) {
                (true, _) => (Some(true), Rule::CesOrliczFinite),
                (false, Some(true)) => (Some(false), Rule::OrliczDelta2),
                _ => (None, Rule::UndecidedCase),
            }
        }
        Space::Lorentz(q) | Space::Marcinkiewicz(q) if straddles(q.atom0) => (None, Rule::UndecidedCase),
        Space::Lorentz(q) => {
            let unbounded = halfline && q.phi_inf.is_infinite();
            match (q.atom0 == 0.0, unbounded) {
                (true, true) => (Some(true), Rule::CesLorentzNoAtomUnbounded),
                (true, false) if !halfline => (Some(true), Rule::CesLorentzNoAtomBounded),
                (true, false) => (Some(false), Rule::CesLorentzNoAtomBounded),
                (false, _) => (Some(false), Rule::TrivialOcPart),
            }
        }
        Space::Marcinkiewicz(q) if q.atom0 > 0.0 => (Some(false), Rule::TrivialOcPart),
        Space::Marcinkiewicz(q) => match q.boyd {
            Some((p, _)) if p > 1.0 => (Some(false), Rule::CesMarcinkiewiczNoAtomBoydAboveOne),
            _ => {
                ev.push(Evidence::Note("whether CM_phi can be OC without p(M_phi) > 1 is open".into()));
                (None, Rule::UndecidedCase)
            }
        },
        Space::Cesaro(_) => unreachable!("symmetric spaces only"),
    };
    if trivial == Some(true) && out.0 == Some(true) {
        ev.push(Evidence::Note("table says OC but X_a = {0}".into()));
        return Ok((None, Rule::UndecidedCase, ev));
    }
    Ok((out.0, out.1, ev))
}

/// Order continuity of a symmetric space `X` or of a Cesaro space `CX`.
pub fn oc_space(x: &SpaceDescriptor) -> Result<OcVerdict> {
    if !x.is_cesaro() {
        return Ok(oc_symmetric_space(x));
    }
    let xs = x.symmetric();
    let subject = x.name();
    if !cx_nontrivial(&xs)? {
        return Ok(OcVerdict::new(&subject, Verdict::TrivialSpace, Rule::CesaroSpaceTrivial, vec![]));
    }
    let (truth, rule, mut ev) = oc_cesaro_table(&xs)?;
    let bounded = cesaro_bounded(&xs)?;
    let transfer = oc_symmetric_space(&xs);
    if !bounded.bounded || bounded.estimate || !transfer.is_decisive() {
        return Ok(OcVerdict::new(&subject, to_verdict(truth), rule, ev));
    }
    let moved = transfer.verdict == Verdict::Oc;
    ev.push(Evidence::Note(format!("C is bounded on {}, which is {}", xs.name(), transfer.verdict)));
    match truth {
        None => Ok(OcVerdict::new(&subject, to_verdict(Some(moved)), Rule::BoundedTransfer, ev)),
        Some(t) if t == moved => Ok(OcVerdict::new(&subject, to_verdict(truth), rule, ev)),
        Some(_) => {
            ev.push(Evidence::Note(format!("{rule} disagrees with the bounded transfer")));
            Ok(OcVerdict::new(&subject, Verdict::Inconclusive, Rule::UndecidedCase, ev))
        }
    }
}

/// Norms of `f chi_{A_n}` along a set family.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectCheck {
    /// `(n, ||f chi_{A_n}||)`.
    pub curve: Vec<(f64, f64)>,
    pub estimate: LimitEstimate,
    /// The norms provably fail to vanish along this family: `f` is not OC.
    pub falsified: bool,
    /// The norms vanish along this family. One family cannot prove OC.
    pub corroborated: bool,
}

/// `A_n = [0, 2^-n) ∪ [2^n, inf)` on the half-line, `A_n = [0, 2^-n)` on `[0, 1]`, `n = 1..=20`.
pub fn default_family(domain: Domain) -> Vec<MeasurableSet> {
    (1..=TAIL_STEPS)
        .map(|n| {
            let left = 2f64.powi(-n);
            let mut parts = vec![(0.0, left)];
            if domain == Domain::Halfline {
                parts.push((2f64.powi(n), f64::INFINITY));
            }
            MeasurableSet::new(domain, parts).expect("disjoint intervals")
        })
        .collect()
}

const FAMILY_WINDOW: f64 = 1024.0;

/// The family must decrease, and its last member must look null: its part in
/// `[0, 1024]` at most a tenth of the first member's, and any unbounded piece
/// must have moved right.
pub fn validate_family(family: &[MeasurableSet]) -> Result<()> {
    let bad = |m: &str| Err(Error::InvalidFamily(m.into()));
    let (Some(first), Some(last)) = (family.first(), family.last()) else {
        return bad("empty family");
    };
    for w in family.windows(2) {
        if w[0].domain() != w[1].domain() {
            return bad("sets live on different domains");
        }
        if !w[1].is_subset_of(&w[0]) {
            return bad("family is not decreasing");
        }
    }
    let domain = first.domain();
    let window = MeasurableSet::interval(domain, 0.0, FAMILY_WINDOW.min(domain.end()))?;
    let m_first = first.intersect(&window)?.measure();
    let m_last = last.intersect(&window)?.measure();
    if m_last > 0.1 * m_first {
        return bad("family does not shrink to a null set");
    }
    let unbounded_start = |s: &MeasurableSet| {
        s.intervals().last().filter(|iv| iv.1.is_infinite()).map(|iv| iv.0)
    };
    if let (Some(a), Some(b)) = (unbounded_start(first), unbounded_start(last)) {
        if b <= a {
            return bad("unbounded part of the family does not escape to infinity");
        }
    }
    Ok(())
}

/// The definition of order continuity along one family (the default when `None`),
/// with norms taken in `CX`.
pub fn direct_oc_check(f: &Ppl, x: &SpaceDescriptor, family: Option<&[MeasurableSet]>) -> Result<DirectCheck> {
    let cx = x.symmetric().cesaro()?;
    check_member(f, &cx)?;
    let owned;
    let family = match family {
        Some(fam) => fam,
        None => {
            owned = default_family(cx.domain);
            &owned
        }
    };
    validate_family(family)?;
    let mut curve = Vec::with_capacity(family.len());
    for (i, a) in family.iter().enumerate() {
        let v = norms::norm(&f.restrict(a)?, &cx)?.value;
        curve.push(((i + 1) as f64, v));
    }
    let target = LimitTarget::Infinity;
    let estimate = limits::from_samples(target, curve.clone());
    let falsified = matches!(estimate.decision, LimitDecision::PositiveLimit | LimitDecision::Diverges);
    let corroborated = estimate.tends_to_zero();
    Ok(DirectCheck { curve, estimate, falsified, corroborated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{Delta2, OrliczSpec, QuasiConcave};

    const H: Domain = Domain::Halfline;
    const U: Domain = Domain::Unit;

    fn ind(d: Domain, a: f64, b: f64) -> Ppl {
        Ppl::indicator(d, a, b).unwrap()
    }

    fn sqrt_phi(d: Domain, boyd: Option<(f64, f64)>) -> QuasiConcave {
        QuasiConcave::new(Ppl::monomial(d, 0.0, d.end(), 1.0, 0.5, 0).unwrap(), boyd).unwrap()
    }

    fn space(d: Domain, s: Space) -> SpaceDescriptor {
        SpaceDescriptor::new(d, s).unwrap()
    }

    #[test]
    fn tail_test_examples() {
        let t = tail_test_point(&ind(H, 0.0, 1.0), &SpaceDescriptor::lp(H, 1.0)).unwrap();
        assert_eq!(t.passes, Some(true));
        let one = ind(H, 0.0, f64::INFINITY);
        let t = tail_test_point(&one, &SpaceDescriptor::lp(H, f64::INFINITY)).unwrap();
        assert_eq!(t.passes, Some(false));
        assert_eq!(t.f_star_at_infinity, 1.0);
        let recip = Ppl::monomial(H, 1.0, f64::INFINITY, 1.0, -1.0, 0).unwrap();
        let t = tail_test_point(&recip, &SpaceDescriptor::lp(H, 2.0)).unwrap();
        assert_eq!(t.passes, Some(true));
        assert!(matches!(
            tail_test_point(&one, &SpaceDescriptor::lp(H, 2.0)),
            Err(Error::NotInSpace(_))
        ));
    }

    #[test]
    fn xa_triviality() {
        assert_eq!(xa_trivial(&SpaceDescriptor::lp(H, f64::INFINITY)).unwrap().0, Some(true));
        assert_eq!(xa_trivial(&SpaceDescriptor::lp(H, 2.0)).unwrap().0, Some(false));
        let phi = Ppl::step(U, &[(0.0, 1.0, 0.5)]).unwrap();
        let m = space(U, Space::Marcinkiewicz(QuasiConcave::new(phi, None).unwrap()));
        assert_eq!(xa_trivial(&m).unwrap().0, Some(true));
    }

    #[test]
    fn characterization_examples() {
        let linf = SpaceDescriptor::lp(U, f64::INFINITY);
        let v = oc_point_in_cx(&ind(U, 0.5, 1.0), &linf).unwrap();
        assert_eq!(v.verdict, Verdict::Oc);
        assert_eq!(v.rule, Rule::BoundedPartWithVanishingAverage);
        let v = oc_point_in_cx(&ind(U, 0.0, 1.0), &linf).unwrap();
        assert_eq!(v.verdict, Verdict::NotOc);
        let v = oc_point_in_cx(&ind(H, 0.0, 1.0), &SpaceDescriptor::lp(H, 2.0)).unwrap();
        assert_eq!(v.verdict, Verdict::Oc);
        assert_eq!(v.rule, Rule::CesaroOfOcPart);
        let v = oc_point_in_cx(&ind(H, 0.0, 1.0), &SpaceDescriptor::lp(H, 1.0)).unwrap();
        assert_eq!(v.verdict, Verdict::TrivialSpace);
    }

    #[test]
    fn closed_form_examples() {
        let sum = space(H, Space::L1PlusLinf);
        assert_eq!(oc_point_closed_form(&ind(H, 0.0, 1.0), &sum).unwrap().verdict, Verdict::Oc);
        let one = ind(H, 0.0, f64::INFINITY);
        assert_eq!(oc_point_closed_form(&one, &sum).unwrap().verdict, Verdict::NotOc);
        let linf = SpaceDescriptor::lp(U, f64::INFINITY);
        assert_eq!(oc_point_closed_form(&ind(U, 0.0, 1.0), &linf).unwrap().verdict, Verdict::NotOc);
        let m = space(H, Space::Marcinkiewicz(sqrt_phi(H, Some((2.0, 2.0)))));
        let v = oc_point_closed_form(&ind(H, 0.0, 1.0), &m).unwrap();
        assert_eq!(v.rule, Rule::CesMarcinkiewiczNoAtomBoydAboveOne);
        assert_eq!(v.verdict, Verdict::Oc);
    }

    #[test]
    fn orlicz_closed_forms() {
        let capped = OrliczSpec::new(
            Ppl::monomial(H, 0.0, 1.0, 1.0, 2.0, 0).unwrap(),
            0.0,
            1.0,
            Delta2::default(),
            None,
        )
        .unwrap();
        let x = space(U, Space::Orlicz(capped));
        let v = oc_point_closed_form(&ind(U, 0.5, 1.0).scale(0.5), &x).unwrap();
        assert_eq!((v.verdict, v.rule), (Verdict::Oc, Rule::CesOrliczCappedFlat));
        let v = oc_point_closed_form(&ind(U, 0.0, 1.0).scale(0.5), &x).unwrap();
        assert_eq!(v.verdict, Verdict::NotOc);
        let sq = space(H, Space::Orlicz(OrliczSpec::power(2.0)));
        let v = oc_point_closed_form(&ind(H, 0.0, 1.0), &sq).unwrap();
        assert_eq!((v.verdict, v.rule), (Verdict::Oc, Rule::CesOrliczFinite));
    }

    #[test]
    fn space_verdicts() {
        let c2 = SpaceDescriptor::lp(H, 2.0).cesaro().unwrap();
        assert_eq!(oc_space(&c2).unwrap().verdict, Verdict::Oc);
        let cinf = SpaceDescriptor::lp(H, f64::INFINITY).cesaro().unwrap();
        assert_eq!(oc_space(&cinf).unwrap().verdict, Verdict::NotOc);
        let cl = space(H, Space::Lorentz(sqrt_phi(H, None))).cesaro().unwrap();
        assert_eq!(oc_space(&cl).unwrap().verdict, Verdict::Oc);
        let cm = space(H, Space::Marcinkiewicz(sqrt_phi(H, Some((2.0, 2.0))))).cesaro().unwrap();
        assert_eq!(oc_space(&cm).unwrap().verdict, Verdict::NotOc);
        let cm = space(H, Space::Marcinkiewicz(sqrt_phi(H, None))).cesaro().unwrap();
        assert_eq!(oc_space(&cm).unwrap().verdict, Verdict::Inconclusive);
        let c1 = SpaceDescriptor::lp(H, 1.0).cesaro().unwrap();
        assert_eq!(oc_space(&c1).unwrap().verdict, Verdict::TrivialSpace);
    }

    #[test]
    fn direct_check_examples() {
        let linf = SpaceDescriptor::lp(U, f64::INFINITY);
        let d = direct_oc_check(&ind(U, 0.0, 1.0), &linf, None).unwrap();
        assert!(d.falsified);
        assert!(d.curve.iter().all(|p| p.1 == 1.0));
        let d = direct_oc_check(&ind(U, 0.5, 1.0), &linf, None).unwrap();
        assert!(d.corroborated && !d.falsified);
        let empty = vec![MeasurableSet::empty(U); 20];
        let d = direct_oc_check(&ind(U, 0.0, 1.0), &linf, Some(&empty)).unwrap();
        assert!(d.curve.iter().all(|p| p.1 == 0.0));
    }

    #[test]
    fn invalid_families() {
        let grow: Vec<MeasurableSet> =
            (1..5).map(|n| MeasurableSet::interval(H, 0.0, n as f64).unwrap()).collect();
        assert!(matches!(validate_family(&grow), Err(Error::InvalidFamily(_))));
        let fixed = vec![MeasurableSet::interval(H, 0.0, 1.0).unwrap(); 4];
        assert!(matches!(validate_family(&fixed), Err(Error::InvalidFamily(_))));
        assert!(validate_family(&default_family(H)).is_ok());
    }
}
