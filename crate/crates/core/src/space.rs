//! Descriptions of the symmetric spaces in the catalog and of Cesaro spaces over them.

use crate::error::{Error, Result};
use crate::gauge::Gauge;
use crate::ppl::Ppl;
use crate::set::Domain;
use crate::term;

/// Declared doubling conditions for an Orlicz function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Delta2 {
    /// Doubling for small arguments.
    pub zero: bool,
    /// Doubling for large arguments.
    pub infty: bool,
    /// Doubling on the whole half-line.
    pub all: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrliczSpec {
    /// `Phi(u)` as a function of `u` on the half-line; only the part below `b_phi` is used.
    pub phi: Ppl,
    pub a_phi: f64,
    pub b_phi: f64,
    pub delta2: Delta2,
    /// Declared Matuszewska indices, used as the Boyd indices of the space.
    pub indices: Option<(f64, f64)>,
}

fn geometric_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

const SHAPE_TOL: f64 = 1e-9;

impl OrliczSpec {
    pub fn new(phi: Ppl, a_phi: f64, b_phi: f64, delta2: Delta2, indices: Option<(f64, f64)>) -> Result<Self> {
        let s = OrliczSpec { phi, a_phi, b_phi, delta2, indices };
        s.validate()?;
        Ok(s)
    }

    /// `Phi(u) = u^p` on the whole half-line.
    pub fn power(p: f64) -> Self {
        OrliczSpec {
            phi: Ppl::monomial(Domain::Halfline, 0.0, f64::INFINITY, 1.0, p, 0).expect("valid monomial"),
            a_phi: 0.0,
            b_phi: f64::INFINITY,
            delta2: Delta2 { zero: true, infty: true, all: true },
            indices: Some((p, p)),
        }
    }

    pub fn gauge(&self) -> Gauge {
        Gauge::from_ppl(&self.phi, self.b_phi).expect("validated cap")
    }

    pub fn eval(&self, u: f64) -> f64 {
        self.gauge().eval(u)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSpace(format!("Orlicz function: {m}")));
        if self.phi.domain() != Domain::Halfline {
            return bad("Phi must be given on the half-line".into());
        }
        if !(self.a_phi >= 0.0) || !(self.b_phi > 0.0) || self.a_phi > self.b_phi {
            return bad(format!("need 0 <= a_phi <= b_phi, b_phi > 0 (got {}, {})", self.a_phi, self.b_phi));
        }
        let g = self.gauge();
        let top = if self.b_phi.is_finite() { self.b_phi } else { 1e6 };
        let mut grid = geometric_grid(1e-6 * top.min(1.0), top, 200);
        if self.b_phi.is_finite() {
            grid.retain(|&u| u <= self.b_phi);
        }
        let vals: Vec<f64> = grid.iter().map(|&u| g.eval(u)).collect();
        if vals.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return bad("Phi must be finite and nonnegative below b_phi".into());
        }
        if vals.iter().all(|&v| v == 0.0) {
            return bad("Phi vanishes identically".into());
        }
        for w in vals.windows(2) {
            if w[1] < w[0] - SHAPE_TOL * w[0].abs().max(1.0) {
                return bad("Phi is not nondecreasing".into());
            }
        }
        for (i, &u) in grid.iter().enumerate() {
            for &v in grid.iter().skip(i + 1).step_by(17) {
                let mid = g.eval(0.5 * (u + v));
                let chord = 0.5 * (g.eval(u) + g.eval(v));
                if mid > chord + SHAPE_TOL * chord.max(1.0) {
                    return bad(format!("midpoint convexity fails between {u} and {v}"));
                }
            }
        }
        let first_positive = grid.iter().zip(&vals).find(|(_, &v)| v > 0.0).map(|(&u, _)| u);
        if let Some(u) = first_positive {
            if self.a_phi > u * (1.0 + 1e-9) {
                return bad(format!("Phi({u}) > 0 but a_phi = {}", self.a_phi));
            }
        }
        if self.a_phi > 0.0 && g.eval(self.a_phi) > SHAPE_TOL {
            return bad(format!("Phi(a_phi) = {} is not zero", g.eval(self.a_phi)));
        }
        Ok(())
    }

    /// Samples `sup Phi(2u)/Phi(u)` on geometric grids near 0 and near infinity and
    /// reports contradictions with the declared doubling flags.
    pub fn delta2_warnings(&self) -> Vec<String> {
        let g = self.gauge();
        let ratio = |grid: Vec<f64>| {
            grid.into_iter()
                .filter(|&u| g.eval(u) > 0.0)
                .map(|u| g.eval(2.0 * u) / g.eval(u))
                .fold(0.0, f64::max)
        };
        let mut out = Vec::new();
        let small = ratio(geometric_grid(1e-8, 1e-4, 20).into_iter().map(|u| u.max(self.a_phi * 1.01)).collect());
        let large = if self.b_phi.is_finite() {
            f64::INFINITY
        } else {
            ratio(geometric_grid(1e4, 1e8, 20))
        };
        const GROWTH: f64 = 1e3;
        if self.delta2.zero && small > GROWTH {
            out.push(format!("declared doubling near 0 but Phi(2u)/Phi(u) reaches {small}"));
        }
        if self.delta2.infty && large > GROWTH {
            out.push(format!("declared doubling at infinity but Phi(2u)/Phi(u) reaches {large}"));
        }
        out
    }
}

/// A quasi-concave function `phi` on the domain, as used by Lorentz and
/// Marcinkiewicz spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiConcave {
    pub phi: Ppl,
    /// `phi(0+)`.
    pub atom0: f64,
    /// `phi(inf)` on the half-line, `phi(1)` on the unit interval.
    pub phi_inf: f64,
    /// Declared Boyd indices of the space.
    pub boyd: Option<(f64, f64)>,
    /// Quasi-concave but not concave (the Lorentz formula then uses phi as given).
    pub nonconcave: bool,
}

impl QuasiConcave {
    pub fn new(phi: Ppl, boyd: Option<(f64, f64)>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidSpace(format!("quasi-concave function: {m}")));
        let first = phi.pieces().first().map(|p| p.lo);
        if first != Some(0.0) || phi.support_end() < phi.domain().end() {
            return bad("phi must be defined on the whole domain".into());
        }
        let atom0 = term::limit_at_zero(&phi.pieces()[0].terms);
        let last = phi.pieces().last().unwrap();
        let phi_inf = last.value_at_hi();
        let end = phi.domain().end();
        let top = if end.is_finite() { end } else { 1e12 };
        let grid = geometric_grid(1e-12, top, 240);
        let vals: Vec<f64> = grid.iter().map(|&t| phi.evaluate(t.min(end)).unwrap_or(f64::NAN)).collect();
        if vals.iter().any(|v| !(v.is_finite() && *v > 0.0)) || !(atom0 >= 0.0) {
            return bad("phi must be positive and finite for t > 0".into());
        }
        for (w, t) in vals.windows(2).zip(grid.windows(2)) {
            if w[1] < w[0] * (1.0 - SHAPE_TOL) {
                return bad(format!("phi decreases near t = {}", t[1]));
            }
            if w[1] / t[1] > w[0] / t[0] * (1.0 + SHAPE_TOL) {
                return bad(format!("phi(t)/t increases near t = {}", t[1]));
            }
        }
        let nonconcave = grid.windows(3).any(|t| {
            let f = |x: f64| phi.evaluate(x.min(end)).unwrap_or(0.0);
            let (a, b) = (t[0], t[2]);
            let m = 0.5 * (a + b);
            f(m) < 0.5 * (f(a) + f(b)) * (1.0 - 1e-9)
        });
        Ok(QuasiConcave { phi, atom0, phi_inf, boyd, nonconcave })
    }

    /// `phi(t)` for `t` in `[0, inf]`; `phi(0) = 0` and values past the end of
    /// the unit interval are `phi(1)`.
    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            0.0
        } else if t >= self.phi.domain().end() {
            self.phi_inf
        } else {
            self.phi.evaluate(t).unwrap_or(self.phi_inf)
        }
    }

    pub fn domain(&self) -> Domain {
        self.phi.domain()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Space {
    /// `L^p`, `1 <= p <= inf`.
    Lp(f64),
    L1CapLinf,
    L1PlusLinf,
    Orlicz(OrliczSpec),
    Lorentz(QuasiConcave),
    Marcinkiewicz(QuasiConcave),
    /// `CX = {f : C|f| in X}` with `||f||_CX = ||C|f|||_X`.
    Cesaro(Box<Space>),
}

impl Space {
    pub fn is_cesaro(&self) -> bool {
        matches!(self, Space::Cesaro(_))
    }

    /// Short human-readable name.
    pub fn name(&self) -> String {
        match self {
            Space::Lp(p) if p.is_infinite() => "Linf".into(),
            Space::Lp(p) => format!("L{p}"),
            Space::L1CapLinf => "L1capLinf".into(),
            Space::L1PlusLinf => "L1+Linf".into(),
            Space::Orlicz(_) => "Orlicz".into(),
            Space::Lorentz(_) => "Lorentz".into(),
            Space::Marcinkiewicz(_) => "Marcinkiewicz".into(),
            Space::Cesaro(x) => format!("C({})", x.name()),
        }
    }
}

/// A space together with its underlying interval.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceDescriptor {
    pub domain: Domain,
    pub space: Space,
}

impl SpaceDescriptor {
    pub fn new(domain: Domain, space: Space) -> Result<Self> {
        let check_inner = |s: &Space| -> Result<()> {
            match s {
                Space::Lp(p) if !(*p >= 1.0) => Err(Error::InvalidSpace(format!("L^p needs p >= 1 (got {p})"))),
                Space::Lorentz(q) | Space::Marcinkiewicz(q) if q.domain() != domain => Err(Error::InvalidSpace(
                    "phi is defined on a different domain than the space".into(),
                )),
                Space::Cesaro(_) => Err(Error::InvalidSpace("Cesaro spaces nest at most once".into())),
                _ => Ok(()),
            }
        };
        match &space {
            Space::Cesaro(inner) => check_inner(inner)?,
            s => check_inner(s)?,
        }
        Ok(SpaceDescriptor { domain, space })
    }

    pub fn lp(domain: Domain, p: f64) -> Self {
        SpaceDescriptor::new(domain, Space::Lp(p)).expect("p >= 1")
    }

    /// `CX` for this (symmetric) space.
    pub fn cesaro(&self) -> Result<SpaceDescriptor> {
        SpaceDescriptor::new(self.domain, Space::Cesaro(Box::new(self.space.clone())))
    }

    pub fn is_cesaro(&self) -> bool {
        self.space.is_cesaro()
    }

    /// The symmetric space `X` of `CX` (or the space itself).
    pub fn symmetric(&self) -> SpaceDescriptor {
        match &self.space {
            Space::Cesaro(inner) => SpaceDescriptor { domain: self.domain, space: (**inner).clone() },
            _ => self.clone(),
        }
    }

    pub fn name(&self) -> String {
        let d = match self.domain {
            Domain::Unit => "[0,1]",
            Domain::Halfline => "[0,inf)",
        };
        format!("{}{d}", self.space.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMethod {
    Exact,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormResult {
    /// `+inf` means the function is not in the space.
    pub value: f64,
    pub method: NormMethod,
    pub error_bound: f64,
}

impl NormResult {
    pub fn exact(value: f64) -> Self {
        NormResult { value, method: NormMethod::Exact, error_bound: 0.0 }
    }

    pub fn numeric(value: f64, error_bound: f64) -> Self {
        NormResult { value, method: NormMethod::Quadrature, error_bound }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Term;

    const H: Domain = Domain::Halfline;

    #[test]
    fn orlicz_validation() {
        assert!(OrliczSpec::new(OrliczSpec::power(2.0).phi, 0.0, 1.0, Delta2::default(), None).is_ok());
        // concave Phi is rejected
        let sqrt = Ppl::monomial(H, 0.0, f64::INFINITY, 1.0, 0.5, 0).unwrap();
        assert!(OrliczSpec::new(sqrt, 0.0, f64::INFINITY, Delta2::default(), None).is_err());
        // a_phi inconsistent with Phi
        assert!(OrliczSpec::new(OrliczSpec::power(2.0).phi, 0.5, f64::INFINITY, Delta2::default(), None).is_err());
    }

    #[test]
    fn delta2_warning_for_exponential_growth() {
        // Phi(u) = u^2 near zero, u^40 for large u: doubling declared at infinity is contradicted
        let phi = Ppl::new(
            H,
            vec![
                crate::ppl::Piece::new(0.0, 1.0, vec![Term::power(1.0, 2.0)]),
                crate::ppl::Piece::new(1.0, f64::INFINITY, vec![Term::power(1.0, 40.0)]),
            ],
        )
        .unwrap();
        let s = OrliczSpec::new(phi, 0.0, f64::INFINITY, Delta2 { zero: true, infty: true, all: true }, None).unwrap();
        assert_eq!(s.delta2_warnings().len(), 1);
    }

    #[test]
    fn quasi_concave_validation() {
        let sqrt = Ppl::monomial(H, 0.0, f64::INFINITY, 1.0, 0.5, 0).unwrap();
        let q = QuasiConcave::new(sqrt, None).unwrap();
        assert_eq!(q.atom0, 0.0);
        assert_eq!(q.phi_inf, f64::INFINITY);
        assert!(!q.nonconcave);
        let square = Ppl::monomial(H, 0.0, f64::INFINITY, 1.0, 2.0, 0).unwrap();
        assert!(QuasiConcave::new(square, None).is_err());
    }

    #[test]
    fn cesaro_nesting() {
        let c = SpaceDescriptor::lp(H, 2.0).cesaro().unwrap();
        assert!(c.cesaro().is_err());
        assert_eq!(c.symmetric(), SpaceDescriptor::lp(H, 2.0));
        assert!(SpaceDescriptor::new(H, Space::Lp(0.5)).is_err());
    }
}
