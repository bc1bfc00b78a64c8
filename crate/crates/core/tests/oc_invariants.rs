use cesaro_oc::catalog::symmetric_catalog;
use cesaro_oc::cesaro::cesaro_transform;
use cesaro_oc::norms::cx_nontrivial;
use cesaro_oc::oc::{oc_point_closed_form, oc_point_in_cx, tail_test_point, xa_trivial, Rule, Verdict};
use cesaro_oc::oracle::battery::default_battery;
use cesaro_oc::{Domain, Ppl};

fn battery_functions(d: Domain) -> Vec<(String, Ppl)> {
    let mut out: Vec<(String, Ppl)> = Vec::new();
    for case in default_battery() {
        if case.f.domain() == d && !out.iter().any(|(_, f)| *f == case.f) {
            out.push((case.id, case.f));
        }
    }
    out
}

#[test]
fn xa_triviality_matches_tail_tests() {
    for d in [Domain::Unit, Domain::Halfline] {
        let fs = battery_functions(d);
        for (name, x) in symmetric_catalog(d) {
            let (trivial, _) = xa_trivial(&x).unwrap();
            // a function outside X is not an OC point of X
            let passing: Vec<&str> = fs
                .iter()
                .filter(|(_, f)| tail_test_point(f, &x).is_ok_and(|t| t.passes == Some(true)))
                .map(|(id, _)| id.as_str())
                .collect();
            assert_eq!(trivial, Some(passing.is_empty()), "{name} on {d:?}: passing {passing:?}");
        }
    }
}

/// On `[0, 1]` the catalog spaces equal to `L^inf` up to equivalent norms.
const LINF_LIKE: [&str; 8] = [
    "Linf",
    "L1capLinf",
    "Orlicz(capped u^2)",
    "Orlicz(gap u^2)",
    "Lorentz(1/2+sqrt)",
    "Lorentz(1)",
    "Marcinkiewicz(1/2+sqrt)",
    "Marcinkiewicz(1)",
];

#[test]
fn unit_interval_gate() {
    let f = Ppl::indicator(Domain::Unit, 0.5, 1.0).unwrap();
    for (name, x) in symmetric_catalog(Domain::Unit) {
        let v = oc_point_in_cx(&f, &x).unwrap();
        let want = if LINF_LIKE.contains(&name.as_str()) {
            Rule::BoundedPartWithVanishingAverage
        } else {
            Rule::CesaroOfOcPart
        };
        assert_eq!(v.rule, want, "{name}");
    }
}

#[test]
fn oc_average_gives_oc_point() {
    let mut hits = 0;
    for case in default_battery() {
        let c = cesaro_transform(&case.f.abs().unwrap()).unwrap();
        let Ok(t) = tail_test_point(&c, &case.x) else { continue };
        if t.passes == Some(true) {
            hits += 1;
            assert_eq!(oc_point_in_cx(&case.f, &case.x).unwrap().verdict, Verdict::Oc, "{}", case.id);
        }
    }
    assert!(hits >= 10, "only {hits} battery cases have C|f| in X_a");
}

#[test]
fn indicators_away_from_zero_are_oc() {
    let sets = [(Domain::Unit, 0.5, 1.0), (Domain::Unit, 0.25, 0.75), (Domain::Halfline, 1.0, 2.0), (Domain::Halfline, 1.0, 3.0)];
    for (d, a, b) in sets {
        let f = Ppl::indicator(d, a, b).unwrap();
        for (name, x) in symmetric_catalog(d) {
            if !cx_nontrivial(&x).unwrap() {
                continue;
            }
            let v = oc_point_in_cx(&f, &x).unwrap();
            assert_eq!(v.verdict, Verdict::Oc, "chi[{a},{b}) in C({name}) on {d:?}: {}", v.rule);
            let table = oc_point_closed_form(&f, &x).unwrap();
            assert!(table.verdict != Verdict::NotOc, "table: chi[{a},{b}) in C({name}) on {d:?}");
        }
    }
}
