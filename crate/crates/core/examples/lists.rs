//! Truncated (L,V)-categories: the representable one of a quantale and a
//! comparison of the two list monads.

use std::sync::Arc;

use qlab::lv::{check_lv_category, compare_pl_pvl, injective_station, lv_to_acted, CompareConfig};
use qlab::monoids::ActedQuantale;
use qlab::order::catalog::chain_min;

fn main() -> qlab::Result<()> {
    let q = Arc::new(chain_min(3)?);
    let acted = ActedQuantale::on_itself(q.clone())?;
    let (c, cert) = injective_station(&acted, 3, 3)?;
    println!("{} list entries up to length {}", c.index().len(), c.max_len());
    println!("certificate clean: {}", cert.is_ok());
    println!("axioms to lists ≤ 3: {}", check_lv_category(&c, 3)?.is_ok());
    println!("a((0,2), 1) = {:?}", c.a(&[0, 2], 1));
    println!("recovered action: {:?}", lv_to_acted(&c)?.action());

    let report = compare_pl_pvl(&q, 2, 3, CompareConfig { samples: 50, seed: 1 })?;
    println!("P_V L vs P_L: {} ({})", report.is_ok(), report.notes.join("; "));
    Ok(())
}
