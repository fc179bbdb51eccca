//! Monoids in V-Mod, central embeddings, acted quantales and the chain
//! connecting them.

use std::sync::Arc;

use qlab::monoids::{equivalence_chain, free_monoid_algebra, monoid_to_central, FiniteMonoid, Station};
use qlab::order::catalog::two;

fn main() -> qlab::Result<()> {
    let v = Arc::new(two());
    let m = free_monoid_algebra(&v, &FiniteMonoid::cyclic(2)?)?;
    let q = m.to_quantale()?;
    println!("free monoid algebra of Z/2 over two: {} elements, commutative {}", q.size(), q.is_commutative());

    let f = monoid_to_central(&m)?;
    println!("central embedding two -> Q: {:?}", f.map());

    let chain = equivalence_chain(&Station::Monoid(m), 2, 2)?;
    for s in &chain.stations {
        println!("  station {}", s.kind());
    }
    println!("round trips exact: {}", chain.report.is_ok());
    Ok(())
}
