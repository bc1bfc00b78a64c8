//! Order continuity of every catalog space and of its Cesaro space.

use cesaro_oc::catalog::full_catalog;
use cesaro_oc::oc::oc_space;
use cesaro_oc::Domain;

fn main() -> cesaro_oc::Result<()> {
    for d in [Domain::Unit, Domain::Halfline] {
        for (name, x) in full_catalog(d) {
            let v = oc_space(&x)?;
            println!("{:8} {name:32} {:14} {}", format!("{d:?}"), v.verdict.to_string(), v.rule);
        }
    }
    Ok(())
}
