//! Exact Cesaro transforms of a few piecewise power-log functions, checked
//! against direct quadrature of `(1/t) ∫_0^t f`.

use cesaro_oc::cesaro::{cesaro_numeric, cesaro_transform, fact1_check};
use cesaro_oc::{Domain, Piece, Ppl, Term};

fn show(f: &Ppl) -> String {
    f.pieces()
        .iter()
        .map(|p| {
            let terms: Vec<String> = p
                .terms
                .iter()
                .map(|t| match t.logpow {
                    0 => format!("{:+.6} t^{}", t.coeff, t.alpha),
                    k => format!("{:+.6} t^{} ln^{k} t", t.coeff, t.alpha),
                })
                .collect();
            format!("  [{}, {}): {}", p.lo, p.hi, terms.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn main() -> cesaro_oc::Result<()> {
    let funcs = vec![
        ("chi_[0,1] on the half-line", Ppl::indicator(Domain::Halfline, 0.0, 1.0)?),
        ("t^(-1/2) on [0,1]", Ppl::monomial(Domain::Unit, 0.0, 1.0, 1.0, -0.5, 0)?),
        ("-ln t on [0,1]", Ppl::new(Domain::Unit, vec![Piece::new(0.0, 1.0, vec![Term::new(-1.0, 0.0, 1)])])?),
        ("signed steps", Ppl::step(Domain::Halfline, &[(0.0, 1.0, 2.0), (1.0, 3.0, -1.0), (4.0, 5.0, 0.5)])?),
    ];
    for (name, f) in &funcs {
        let g = cesaro_transform(f)?;
        println!("C({name}):\n{}", show(&g));
        let mut worst: f64 = 0.0;
        for i in 1..=32 {
            let t = f.domain().end().min(8.0) * i as f64 / 32.0;
            let num = cesaro_numeric(|s| f.evaluate(s).unwrap_or(f64::NAN), t).value;
            worst = worst.max((g.evaluate(t)? - num).abs());
        }
        let grid: Vec<f64> = (1..=64).map(|i| f.domain().end().min(8.0) * i as f64 / 64.0).collect();
        let fact1 = fact1_check(f, &grid)?;
        println!("  max |exact - quadrature| on 32 points: {worst:.2e}; Cf <= |Cf| <= C|f| <= C(f*) holds: {}\n", fact1.holds);
    }
    Ok(())
}
