//! A fixed catalog of spaces covering every family the library handles, used by
//! the oracle battery, the examples and the test suites.

use crate::ppl::{Piece, Ppl};
use crate::set::Domain;
use crate::space::{Delta2, OrliczSpec, QuasiConcave, Space, SpaceDescriptor};
use crate::term::Term;

/// `phi(t) = sqrt(t)`.
pub fn sqrt_phi(domain: Domain, boyd: Option<(f64, f64)>) -> QuasiConcave {
    let phi = Ppl::monomial(domain, 0.0, domain.end(), 1.0, 0.5, 0).expect("valid monomial");
    QuasiConcave::new(phi, boyd).expect("sqrt is quasi-concave")
}

/// `phi(t) = 1/2 + sqrt(t)`: an atom at zero, unbounded on the half-line.
pub fn sqrt_atom_phi(domain: Domain) -> QuasiConcave {
    let phi = Ppl::new(
        domain,
        vec![Piece::new(0.0, domain.end(), vec![Term::constant(0.5), Term::power(1.0, 0.5)])],
    )
    .expect("valid piece");
    QuasiConcave::new(phi, None).expect("quasi-concave")
}

/// `sqrt(t)` on `[0, 1)`, then `3/2 - 1/(2t)`: no atom, bounded by `3/2` on the half-line.
pub fn bounded_sqrt_phi(domain: Domain) -> QuasiConcave {
    let mut pieces = vec![Piece::new(0.0, 1.0, vec![Term::power(1.0, 0.5)])];
    if domain == Domain::Halfline {
        pieces.push(Piece::new(1.0, f64::INFINITY, vec![Term::constant(1.5), Term::power(-0.5, -1.0)]));
    }
    QuasiConcave::new(Ppl::new(domain, pieces).expect("valid pieces"), None).expect("quasi-concave")
}

/// `phi = 1`: an atom at zero and bounded.
pub fn constant_phi(domain: Domain) -> QuasiConcave {
    let phi = Ppl::indicator(domain, 0.0, domain.end()).expect("valid indicator");
    QuasiConcave::new(phi, None).expect("quasi-concave")
}

/// `Phi(u) = u^2`.
pub fn square_orlicz() -> OrliczSpec {
    OrliczSpec::power(2.0)
}

/// `Phi(u) = u^2` for `u <= 1` and `inf` beyond: `a_Phi = 0`, `b_Phi = 1`.
pub fn capped_square_orlicz() -> OrliczSpec {
    let phi = Ppl::monomial(Domain::Halfline, 0.0, 1.0, 1.0, 2.0, 0).expect("valid monomial");
    OrliczSpec::new(phi, 0.0, 1.0, Delta2::default(), None).expect("valid Orlicz function")
}

/// `Phi(u) = (u - 1/2)^2` on `[1/2, 2]`, zero below and `inf` above:
/// `a_Phi = 1/2`, `b_Phi = 2`.
pub fn gap_square_orlicz() -> OrliczSpec {
    let phi = Ppl::new(
        Domain::Halfline,
        vec![Piece::new(0.5, 2.0, vec![Term::power(1.0, 2.0), Term::power(-1.0, 1.0), Term::constant(0.25)])],
    )
    .expect("valid piece");
    OrliczSpec::new(phi, 0.5, 2.0, Delta2::default(), None).expect("valid Orlicz function")
}

/// Named symmetric spaces on a domain. On `[0, 1]` the bounded square-root
/// weight coincides with `sqrt(t)` and is omitted.
pub fn symmetric_catalog(domain: Domain) -> Vec<(String, SpaceDescriptor)> {
    let mut out: Vec<(String, Space)> = vec![
        ("L1".into(), Space::Lp(1.0)),
        ("L1.5".into(), Space::Lp(1.5)),
        ("L2".into(), Space::Lp(2.0)),
        ("L4".into(), Space::Lp(4.0)),
        ("Linf".into(), Space::Lp(f64::INFINITY)),
        ("L1capLinf".into(), Space::L1CapLinf),
        ("L1+Linf".into(), Space::L1PlusLinf),
        ("Orlicz(u^2)".into(), Space::Orlicz(square_orlicz())),
        ("Orlicz(capped u^2)".into(), Space::Orlicz(capped_square_orlicz())),
        ("Orlicz(gap u^2)".into(), Space::Orlicz(gap_square_orlicz())),
        ("Lorentz(sqrt)".into(), Space::Lorentz(sqrt_phi(domain, None))),
        ("Lorentz(1/2+sqrt)".into(), Space::Lorentz(sqrt_atom_phi(domain))),
        ("Lorentz(1)".into(), Space::Lorentz(constant_phi(domain))),
        ("Marcinkiewicz(sqrt)".into(), Space::Marcinkiewicz(sqrt_phi(domain, Some((2.0, 2.0))))),
        ("Marcinkiewicz(1/2+sqrt)".into(), Space::Marcinkiewicz(sqrt_atom_phi(domain))),
        ("Marcinkiewicz(1)".into(), Space::Marcinkiewicz(constant_phi(domain))),
    ];
    if domain == Domain::Halfline {
        out.push(("Lorentz(bounded sqrt)".into(), Space::Lorentz(bounded_sqrt_phi(domain))));
        out.push(("Marcinkiewicz(bounded sqrt)".into(), Space::Marcinkiewicz(bounded_sqrt_phi(domain))));
    }
    out.into_iter()
        .map(|(n, s)| (n, SpaceDescriptor::new(domain, s).expect("catalog spaces are valid")))
        .collect()
}

/// The symmetric catalog followed by the Cesaro space of each entry.
pub fn full_catalog(domain: Domain) -> Vec<(String, SpaceDescriptor)> {
    let sym = symmetric_catalog(domain);
    let ces: Vec<(String, SpaceDescriptor)> = sym
        .iter()
        .map(|(n, x)| (format!("C({n})"), x.cesaro().expect("one Cesaro layer")))
        .collect();
    sym.into_iter().chain(ces).collect()
}
