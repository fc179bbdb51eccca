//! V-matrices over the three-element Łukasiewicz chain.

use std::sync::Arc;

use qlab::order::catalog::lukasiewicz;
use qlab::vmat::{check_quantaloid, compose};
use qlab::VMatrix;

fn main() -> qlab::Result<()> {
    let q = Arc::new(lukasiewicz(3)?);
    let r = VMatrix::from_rows(q.clone(), &[vec![2, 1], vec![0, 2]])?;
    let s = VMatrix::from_rows(q.clone(), &[vec![1, 2, 0], vec![2, 0, 1]])?;
    let s2 = VMatrix::from_rows(q.clone(), &[vec![0, 0, 2], vec![1, 1, 1]])?;
    let t = VMatrix::identity(q.clone(), 3);

    println!("s∘r = {:?}", compose(&r, &s)?.to_rows());
    println!("r°  = {:?}", r.involute().to_rows());

    let report = check_quantaloid(&r, &s, &s2, &t)?;
    println!("quantaloid laws hold: {}", report.is_ok());
    Ok(())
}
