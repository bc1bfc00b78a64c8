//! Runs the default battery through every verdict route and oracle.
//!
//! Usage: `cargo run --release --example oracle_battery [search_budget]`

use cesaro_oc::oracle::battery::{default_battery, run_case};

fn main() -> cesaro_oc::Result<()> {
    let budget: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let (mut contradictions, mut hard, mut soft) = (0, 0, 0);
    for case in default_battery() {
        let o = run_case(&case, budget, 7)?;
        println!(
            "{:48} expected {:12} characterization {:12} table {:12} direct falsified={}",
            o.id,
            o.expected.to_string(),
            o.theorem.verdict.to_string(),
            o.closed_form.verdict.to_string(),
            o.direct.falsified
        );
        for r in o.oracles.iter().filter(|r| !r.pass) {
            println!("    oracle {}: exact {} oracle {} flag {:?}", r.subject, r.exact, r.oracle, r.flag);
            if r.is_hard_failure() {
                hard += 1;
            } else {
                soft += 1;
            }
        }
        if let Some(s) = &o.search {
            let best = s.best.as_ref().map(|(fam, _)| fam.describe()).unwrap_or_default();
            println!("    search: {} families, falsified={} best {best}", s.evaluated, s.falsified);
        }
        for c in &o.contradictions {
            println!("    CONTRADICTION {c}");
        }
        contradictions += o.contradictions.len();
    }
    println!("\ncontradictions {contradictions}, hard oracle failures {hard}, flagged {soft}");
    Ok(())
}
