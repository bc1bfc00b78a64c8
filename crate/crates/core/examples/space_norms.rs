//! Norms of one function in every catalog space, exact path next to the
//! quadrature oracle.

use cesaro_oc::catalog::full_catalog;
use cesaro_oc::norms::norm;
use cesaro_oc::oracle::{quadrature_norm_oracle, QUADRATURE_TOL};
use cesaro_oc::{Domain, Ppl};

fn main() -> cesaro_oc::Result<()> {
    let cases = [
        ("chi_[0,1] on [0,inf)", Ppl::indicator(Domain::Halfline, 0.0, 1.0)?),
        ("steps on [0,1]", Ppl::step(Domain::Unit, &[(0.0, 0.25, 2.0), (0.25, 0.5, -1.0), (0.75, 1.0, 3.0)])?),
    ];
    for (name, f) in &cases {
        println!("{name}");
        println!("  {:30} {:>22} {:>22}  status", "space", "exact", "oracle");
        for (label, x) in full_catalog(f.domain()) {
            let exact = norm(f, &x)?;
            let r = quadrature_norm_oracle(f, &x, QUADRATURE_TOL)?;
            let status = match (&r.flag, r.pass) {
                (Some(why), _) => why.clone(),
                (None, true) => "pass".into(),
                (None, false) => format!("FAIL (discrepancy {:.1e})", r.discrepancy),
            };
            println!("  {label:30} {:>22.15} {:>22.15}  {status}", exact.value, r.oracle);
        }
        println!();
    }
    Ok(())
}
