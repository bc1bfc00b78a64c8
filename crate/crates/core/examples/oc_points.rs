//! Order continuity of single functions in Cesaro spaces by every available
//! route: the characterization, the closed-form tables and the direct check
//! along `[0, 2^-n) ∪ [2^n, inf)`.

use cesaro_oc::catalog::symmetric_catalog;
use cesaro_oc::oc::{direct_oc_check, oc_point_closed_form, oc_point_in_cx};
use cesaro_oc::space::SpaceDescriptor;
use cesaro_oc::{Domain, Ppl};

fn space(d: Domain, name: &str) -> SpaceDescriptor {
    symmetric_catalog(d).into_iter().find(|(n, _)| n == name).expect("catalog entry").1
}

fn main() -> cesaro_oc::Result<()> {
    use Domain::{Halfline as H, Unit as U};
    let rows = [
        ("chi_[1/2,1)", Ppl::indicator(U, 0.5, 1.0)?, space(U, "Linf")),
        ("chi_[0,1]", Ppl::indicator(U, 0.0, 1.0)?, space(U, "Linf")),
        ("chi_[0,1]", Ppl::indicator(U, 0.0, 1.0)?, space(U, "Lorentz(1/2+sqrt)")),
        ("chi_[0,1]", Ppl::indicator(H, 0.0, 1.0)?, space(H, "L1+Linf")),
        ("1", Ppl::indicator(H, 0.0, f64::INFINITY)?, space(H, "L1+Linf")),
        ("chi_[0,1]", Ppl::indicator(H, 0.0, 1.0)?, space(H, "Marcinkiewicz(sqrt)")),
        ("chi_[1,2]", Ppl::indicator(H, 1.0, 2.0)?, space(H, "Orlicz(capped u^2)")),
    ];
    for (fname, f, x) in &rows {
        let cx = x.cesaro()?;
        let theorem = oc_point_in_cx(f, x)?;
        let table = oc_point_closed_form(f, x)?;
        let direct = direct_oc_check(f, x, None)?;
        println!("{fname} in {}", cx.name());
        println!("  characterization: {:14} {}", theorem.verdict.to_string(), theorem.rule);
        println!("  closed form:      {:14} {}", table.verdict.to_string(), table.rule);
        let tail: Vec<String> = direct.curve.iter().rev().take(3).rev().map(|p| format!("{:.3e}", p.1)).collect();
        println!(
            "  direct:           falsified {} corroborated {} last norms [{}]",
            direct.falsified,
            direct.corroborated,
            tail.join(", ")
        );
    }
    Ok(())
}
