//! Decreasing rearrangements, distribution functions and windows of `f*`.

use cesaro_oc::gauge::Gauge;
use cesaro_oc::oracle::rearrangement_oracle;
use cesaro_oc::rearrange::RearrangedFunction;
use cesaro_oc::{Domain, Ppl};

fn main() -> cesaro_oc::Result<()> {
    let steps = Ppl::step(Domain::Unit, &[(0.0, 0.25, 1.0), (0.25, 0.5, -3.0), (0.5, 0.9, 2.0)])?;
    let rf = RearrangedFunction::new(&steps)?;
    println!("f* of a signed step function:");
    if let Some(star) = rf.as_step_ppl() {
        for p in star.pieces() {
            println!("  [{}, {}) -> {}", p.lo, p.hi, p.step_value());
        }
    }
    for lambda in [0.5, 1.0, 2.0, 2.5] {
        println!("  d(|f| > {lambda}) = {}", rf.distribution(lambda));
    }

    // f = 1/t on [1, inf) has f*(s) = 1/(1+s)
    let recip = Ppl::monomial(Domain::Halfline, 1.0, f64::INFINITY, 1.0, -1.0, 0)?;
    let rr = RearrangedFunction::new(&recip)?;
    println!("\nf = 1/t on [1, inf):");
    for s in [0.0, 0.5, 1.0, 9.0, 99.0] {
        println!("  f*({s}) = {:.12}   1/(1+s) = {:.12}", rr.eval(s), 1.0 / (1.0 + s));
    }
    let sq = Gauge::power(2.0);
    println!("  ∫_0^3 (f*)^2 = {:.12} (exact 3/4)", rr.psi(&sq, 3.0)?);
    let w = rr.profile(1.0, 3.0);
    println!("  window f*(1 + s), s in [0, 2): integral {:.12} (exact ln 2)", w.integral(&Gauge::identity())?);

    println!("\nsort-based oracle on [delta, T]:");
    for (name, f) in [("steps", &steps), ("1/t", &recip)] {
        let r = rearrangement_oracle(f, 4096, 1e-3)?;
        println!("  {name}: exact {:.6} oracle {:.6} pass {} window {:?}", r.exact, r.oracle, r.pass, r.window);
    }
    Ok(())
}
