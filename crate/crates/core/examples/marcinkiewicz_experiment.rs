//! Experiment: is a nontrivial `C M_phi` ever order continuous when the lower
//! Boyd index of `M_phi` is at most 1? No verdict rule encodes the answer; this
//! only prints what the available routes say for a handful of `phi`.

use cesaro_oc::norms::{boyd_indices, cx_nontrivial};
use cesaro_oc::oc::{direct_oc_check, oc_point_in_cx, oc_space};
use cesaro_oc::space::{QuasiConcave, Space, SpaceDescriptor};
use cesaro_oc::{Domain, Piece, Ppl, Term};

fn phi_samples(d: Domain) -> cesaro_oc::Result<Vec<(&'static str, Ppl)>> {
    let end = d.end();
    let mut out = vec![];
    for (name, a) in [("t^(1/4)", 0.25), ("t^(1/2)", 0.5), ("t^(3/4)", 0.75), ("t", 1.0)] {
        out.push((name, Ppl::monomial(d, 0.0, end, 1.0, a, 0)?));
    }
    // t (1 - ln t) on (0, 1]: p(M_phi) = 1 with a logarithmic correction at 0
    let mut pieces = vec![Piece::new(0.0, 1.0, vec![Term::power(1.0, 1.0), Term::new(-1.0, 1.0, 1)])];
    if end > 1.0 {
        pieces.push(Piece::new(1.0, end, vec![Term::constant(1.0)]));
    }
    out.push(("t(1 - ln t), then 1", Ppl::new(d, pieces)?));
    if end > 1.0 {
        out.push(("min(t, 1)", Ppl::new(d, vec![Piece::new(0.0, 1.0, vec![Term::power(1.0, 1.0)]), Piece::new(1.0, end, vec![Term::constant(1.0)])])?));
        out.push(("t, then sqrt t", Ppl::new(d, vec![Piece::new(0.0, 1.0, vec![Term::power(1.0, 1.0)]), Piece::new(1.0, end, vec![Term::power(1.0, 0.5)])])?));
    }
    Ok(out)
}

fn main() -> cesaro_oc::Result<()> {
    for d in [Domain::Unit, Domain::Halfline] {
        println!("{d:?}");
        let probe = Ppl::indicator(d, 0.0, 1.0f64.min(d.end()) * 0.5)?;
        for (name, phi) in phi_samples(d)? {
            let q = match QuasiConcave::new(phi, None) {
                Ok(q) => q,
                Err(e) => {
                    println!("  {name:22} skipped: {e}");
                    continue;
                }
            };
            let x = SpaceDescriptor::new(d, Space::Marcinkiewicz(q))?;
            let b = boyd_indices(&x)?;
            let nontrivial = cx_nontrivial(&x)?;
            if !nontrivial {
                println!("  {name:22} p = {:6.3} ({:?})  CX = {{0}}", b.lower, b.source);
                continue;
            }
            let cx = x.cesaro()?;
            let space = oc_space(&cx)?;
            let point = oc_point_in_cx(&probe, &x)?;
            let direct = direct_oc_check(&probe, &x, None)?;
            println!(
                "  {name:22} p = {:6.3} ({:?})  oc(CX) {:13} [{}]  chi: {:13} direct falsified={}",
                b.lower,
                b.source,
                space.verdict.to_string(),
                space.rule,
                point.verdict.to_string(),
                direct.falsified
            );
        }
    }
    Ok(())
}
