//! Builtin quantales, residuation, and a hand-written table that fails.

use qlab::order::catalog::{builtin_catalog, lukasiewicz};
use qlab::order::check_quantale;

fn main() -> qlab::Result<()> {
    for (name, q) in builtin_catalog() {
        println!("{name:<30} {} elements, commutative: {}", q.size(), q.is_commutative());
    }

    let l = lukasiewicz(4)?;
    println!("\nresiduals of {} (row v, column u, entry [v,u]):", l.name());
    for row in l.residual_table() {
        println!("  {row:?}");
    }

    // break the truncated sum at one cell
    let mut data = l.to_data();
    data.tensor[1][2] = 3;
    let report = check_quantale(&data)?;
    println!("\nmutated table: {} violations", report.violations.len());
    for v in report.violations.iter().take(3) {
        println!("  {} at {:?}: {}", v.law, v.witness, v.message);
    }
    Ok(())
}
