//! A three-point generalized metric space: presheaves, Yoneda and suprema.

use std::sync::Arc;

use qlab::order::catalog::lukasiewicz;
use qlab::vcat::{check_yoneda, find_sup, presheaf_category, VCategory};
use qlab::VMatrix;

fn main() -> qlab::Result<()> {
    let q = Arc::new(lukasiewicz(3)?);
    // distances 0, 1, 2 read as truth values 2, 1, 0
    let hom = VMatrix::from_rows(q.clone(), &[vec![2, 2, 2], vec![1, 2, 2], vec![0, 1, 2]])?;
    let x = VCategory::with_names(hom, vec!["a".into(), "b".into(), "c".into()])?;
    println!("separated: {}", x.is_separated());

    let pc = presheaf_category(&x)?;
    println!("{} presheaves; y(x) sits at {:?}", pc.len(), pc.yoneda());
    println!("yoneda laws hold: {}", check_yoneda(&x)?.is_ok());

    match find_sup(&x) {
        Ok(s) => println!("cocomplete; Sup table {:?}", s.table()),
        Err(e) => println!("{e}"),
    }

    let discrete = VCategory::discrete(q, 2);
    if let Err(e) = find_sup(&discrete) {
        println!("discrete on two points: {e}");
    }
    Ok(())
}
