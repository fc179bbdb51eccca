//! The P_V monad, its algebras, bimorphisms and the algebra tensor.

use std::sync::Arc;

use qlab::order::catalog::{chain_min, two};
use qlab::pvalg::{
    check_monad_laws, enumerate_algebras, is_bimorphism_componentwise, is_bimorphism_strength, module_to_algebra,
    strength_suite, tensor_alg, AssocMode,
};
use qlab::vmod::VModule;

fn main() -> qlab::Result<()> {
    let c3 = chain_min(3)?;
    println!("monad laws on 2 points: {}", check_monad_laws(&c3, 2, false)?.is_ok());
    println!("strength suite at 2x2: {}", strength_suite(&c3, 2, 2)?.is_ok());

    let b = Arc::new(two());
    let algs = enumerate_algebras(&b, 2, AssocMode::Auto)?;
    println!("{} algebras on two points over two", algs.len());

    let a = &algs[0];
    let mut agree = 0;
    for f in 0..16usize {
        let f: Vec<usize> = (0..4).map(|i| f >> i & 1).collect();
        agree += usize::from(is_bimorphism_componentwise(a, a, a, &f)? == is_bimorphism_strength(a, a, a, &f)?);
    }
    println!("predicates agree on {agree}/16 functions");

    let v = module_to_algebra(&VModule::on_itself(Arc::new(c3)))?;
    let t = tensor_alg(&v, &v)?;
    println!("V ⊗ V as an algebra: {} elements", t.algebra.size());
    Ok(())
}
