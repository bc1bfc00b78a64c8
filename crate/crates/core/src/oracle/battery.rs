//! The default battery of `(f, X)` pairs and a runner that cross-checks every
//! verdict route and oracle on it.

use rand::Rng;

use crate::catalog;
use crate::error::Result;
use crate::oc::{self, DirectCheck, OcVerdict, Verdict};
use crate::oracle::search::{adversarial_family_search, SearchResult};
use crate::oracle::{quadrature_norm_oracle, rearrangement_oracle, OracleReport, QUADRATURE_TOL};
use crate::ppl::{Piece, Ppl};
use crate::set::Domain;
use crate::space::SpaceDescriptor;
use crate::term::Term;

/// Grid size of the rearrangement oracle in battery runs.
pub const REARRANGEMENT_GRID: usize = 4096;

#[derive(Debug, Clone)]
pub struct BatteryCase {
    pub id: String,
    pub f: Ppl,
    /// The symmetric space `X`; verdicts are about `f` in `CX`.
    pub x: SpaceDescriptor,
    /// Verdict worked out by hand from the case tables.
    pub expected: Verdict,
}

/// A random step function with 1 to 6 steps inside `[0, 1]` (unit interval) or
/// `[0, 8]` (half-line), values in `(-3, 3)` or `(0, 3)`.
pub fn random_step<R: Rng>(rng: &mut R, domain: Domain, signed: bool) -> Ppl {
    let len = match domain {
        Domain::Unit => 1.0,
        Domain::Halfline => 8.0,
    };
    let k = rng.gen_range(1..=6);
    let mut cuts: Vec<f64> = (0..=k).map(|_| (rng.gen_range(0.0..len) * 64.0f64).round() / 64.0).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let steps: Vec<(f64, f64, f64)> = cuts
        .windows(2)
        .map(|w| {
            let v = if signed { rng.gen_range(-3.0..3.0) } else { rng.gen_range(0.0..3.0) };
            (w[0], w[1], v)
        })
        .collect();
    if steps.is_empty() {
        return Ppl::indicator(domain, 0.0, len * 0.5).expect("valid indicator");
    }
    Ppl::step(domain, &steps).expect("ordered steps")
}

fn ind(d: Domain, a: f64, b: f64) -> Ppl {
    Ppl::indicator(d, a, b).expect("valid indicator")
}

fn find(domain: Domain, name: &str) -> SpaceDescriptor {
    catalog::symmetric_catalog(domain)
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, x)| x)
        .unwrap_or_else(|| panic!("catalog has no {name}"))
}

/// Curated pairs spanning every space family on both domains.
pub fn default_battery() -> Vec<BatteryCase> {
    use Domain::{Halfline as H, Unit as U};
    use Verdict::{NotOc as N, Oc as O};
    let inv_sqrt = Ppl::monomial(U, 0.0, 1.0, 1.0, -0.5, 0).expect("valid monomial");
    let quarter = Ppl::monomial(U, 0.0, 1.0, 1.0, -0.25, 0).expect("valid monomial");
    let log = Ppl::new(U, vec![Piece::new(0.0, 1.0, vec![Term::new(-1.0, 0.0, 1)])]).expect("valid piece");
    let signed_u = Ppl::step(U, &[(0.0, 0.25, 2.0), (0.25, 0.5, -1.0), (0.75, 1.0, 3.0)]).expect("steps");
    let signed_h = Ppl::step(H, &[(0.5, 1.0, -2.0), (2.0, 5.0, 1.0)]).expect("steps");
    let recip = Ppl::monomial(H, 1.0, f64::INFINITY, 1.0, -1.0, 0).expect("valid monomial");
    let one = ind(H, 0.0, f64::INFINITY);
    let rows: Vec<(&str, Ppl, Domain, &str, Verdict)> = vec![
        ("half-indicator", ind(U, 0.5, 1.0), U, "Linf", O),
        ("unit-indicator", ind(U, 0.0, 1.0), U, "Linf", N),
        ("unit-indicator", ind(U, 0.0, 1.0), U, "L2", O),
        ("inverse-sqrt", inv_sqrt, U, "L1.5", O),
        ("log", log, U, "L2", O),
        ("signed-steps", signed_u, U, "L1", O),
        ("unit-indicator", ind(U, 0.0, 1.0), U, "L1+Linf", O),
        ("unit-indicator", ind(U, 0.0, 1.0), U, "L1capLinf", N),
        ("half-indicator", ind(U, 0.5, 1.0), U, "Orlicz(capped u^2)", O),
        ("unit-indicator", ind(U, 0.0, 1.0), U, "Orlicz(capped u^2)", N),
        ("half-indicator", ind(U, 0.5, 1.0), U, "Orlicz(gap u^2)", O),
        ("unit-indicator", ind(U, 0.0, 1.0), U, "Orlicz(gap u^2)", N),
        ("inverse-fourth-root", quarter, U, "Orlicz(u^2)", O),
        ("unit-indicator", ind(U, 0.0, 1.0), U, "Lorentz(sqrt)", O),
        ("half-indicator", ind(U, 0.5, 1.0), U, "Lorentz(1/2+sqrt)", O),
        ("unit-indicator", ind(U, 0.0, 1.0), U, "Lorentz(1/2+sqrt)", N),
        ("unit-indicator", ind(U, 0.0, 1.0), U, "Lorentz(1)", N),
        ("half-indicator", ind(U, 0.5, 1.0), U, "Marcinkiewicz(sqrt)", O),
        ("unit-indicator", ind(U, 0.0, 1.0), U, "Marcinkiewicz(sqrt)", O),
        ("half-indicator", ind(U, 0.5, 1.0), U, "Marcinkiewicz(1/2+sqrt)", O),
        ("unit-indicator", ind(U, 0.0, 1.0), U, "Marcinkiewicz(1)", N),
        ("unit-indicator", ind(H, 0.0, 1.0), H, "L2", O),
        ("interval", ind(H, 1.0, 3.0), H, "L4", O),
        ("reciprocal-tail", recip.clone(), H, "L2", O),
        ("signed-steps", signed_h, H, "L1.5", O),
        ("unit-indicator", ind(H, 0.0, 1.0), H, "Linf", N),
        ("interval", ind(H, 1.0, 2.0), H, "Linf", O),
        ("constant", one.clone(), H, "Linf", N),
        ("unit-indicator", ind(H, 0.0, 1.0), H, "L1+Linf", O),
        ("constant", one.clone(), H, "L1+Linf", N),
        ("reciprocal-tail", recip, H, "L1+Linf", O),
        ("unit-indicator", ind(H, 0.0, 1.0), H, "Orlicz(u^2)", O),
        ("interval", ind(H, 1.0, 2.0), H, "Orlicz(capped u^2)", O),
        ("unit-indicator", ind(H, 0.0, 1.0), H, "Orlicz(capped u^2)", N),
        ("unit-indicator", ind(H, 0.0, 1.0), H, "Lorentz(sqrt)", O),
        ("unit-indicator", ind(H, 0.0, 1.0), H, "Lorentz(bounded sqrt)", O),
        ("constant", one.clone(), H, "Lorentz(bounded sqrt)", N),
        ("interval", ind(H, 1.0, 2.0), H, "Lorentz(1/2+sqrt)", O),
        ("unit-indicator", ind(H, 0.0, 1.0), H, "Lorentz(1/2+sqrt)", N),
        ("unit-indicator", ind(H, 0.0, 1.0), H, "Marcinkiewicz(sqrt)", O),
        ("interval", ind(H, 1.0, 2.0), H, "Marcinkiewicz(1)", O),
        ("constant", one, H, "Marcinkiewicz(1)", N),
    ];
    rows.into_iter()
        .map(|(fname, f, d, xname, expected)| {
            let x = find(d, xname);
            BatteryCase { id: format!("{fname} in C({}){}", xname, domain_tag(d)), f, x, expected }
        })
        .collect()
}

fn domain_tag(d: Domain) -> &'static str {
    match d {
        Domain::Unit => "[0,1]",
        Domain::Halfline => "[0,inf)",
    }
}

#[derive(Debug, Clone)]
pub struct CaseOutcome {
    pub id: String,
    pub expected: Verdict,
    pub theorem: OcVerdict,
    pub closed_form: OcVerdict,
    pub direct: DirectCheck,
    pub search: Option<SearchResult>,
    pub oracles: Vec<OracleReport>,
    /// Disagreements between routes; empty when everything is consistent.
    pub contradictions: Vec<String>,
}

/// Run every route on one case. `search_budget = 0` skips the adversarial search.
pub fn run_case(case: &BatteryCase, search_budget: usize, seed: u64) -> Result<CaseOutcome> {
    let f = &case.f;
    let cx = case.x.cesaro()?;
    let theorem = oc::oc_point_in_cx(f, &case.x)?;
    let closed_form = oc::oc_point_closed_form(f, &case.x)?;
    let direct = oc::direct_oc_check(f, &case.x, None)?;
    let search = if search_budget > 0 {
        Some(adversarial_family_search(f, &case.x, search_budget, seed)?)
    } else {
        None
    };
    let mut contradictions = Vec::new();
    for v in [&theorem, &closed_form] {
        if v.is_decisive() && v.verdict != case.expected {
            contradictions.push(format!("{} gave {} (expected {})", v.rule, v.verdict, case.expected));
        }
        if v.verdict == Verdict::Oc && direct.falsified {
            contradictions.push(format!("{} says OC but the default family falsifies it", v.rule));
        }
        if v.verdict == Verdict::Oc && !direct.corroborated {
            contradictions.push(format!("{} says OC but the default family norms do not vanish", v.rule));
        }
        if v.verdict == Verdict::Oc && search.as_ref().is_some_and(|s| s.falsified) {
            contradictions.push(format!("{} says OC but the search found a falsifier", v.rule));
        }
    }
    if theorem.is_decisive() && closed_form.is_decisive() && theorem.verdict != closed_form.verdict {
        contradictions.push(format!("characterization {} vs table {}", theorem.verdict, closed_form.verdict));
    }
    let oracles = vec![
        quadrature_norm_oracle(f, &case.x, QUADRATURE_TOL)?,
        quadrature_norm_oracle(f, &cx, QUADRATURE_TOL)?,
        rearrangement_oracle(f, REARRANGEMENT_GRID, 4.0 / REARRANGEMENT_GRID as f64)?,
    ];
    Ok(CaseOutcome {
        id: case.id.clone(),
        expected: case.expected,
        theorem,
        closed_form,
        direct,
        search,
        oracles,
        contradictions,
    })
}
