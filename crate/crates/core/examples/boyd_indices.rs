//! Boyd indices, boundedness of the Cesaro operator and nontriviality of `CX`.

use cesaro_oc::catalog::symmetric_catalog;
use cesaro_oc::norms::{boyd_indices, cesaro_bounded, cx_nontrivial, dilation_norm_estimate};
use cesaro_oc::Domain;

fn main() -> cesaro_oc::Result<()> {
    for d in [Domain::Unit, Domain::Halfline] {
        println!("{d:?}");
        println!("  {:28} {:>8} {:>8} {:>11} {:>9} {:>12} {:>12}", "space", "p(X)", "q(X)", "source", "C bounded", "CX != {0}", "||D_1024||");
        for (name, x) in symmetric_catalog(d) {
            let b = boyd_indices(&x)?;
            let c = cesaro_bounded(&x)?;
            let nontrivial = cx_nontrivial(&x)?;
            let dil = dilation_norm_estimate(&x, 1024.0)?;
            println!(
                "  {name:28} {:>8.4} {:>8.4} {:>11} {:>9} {:>12} {:>12.4}",
                b.lower,
                b.upper,
                format!("{:?}", b.source),
                c.bounded,
                nontrivial,
                dil
            );
        }
    }
    Ok(())
}
