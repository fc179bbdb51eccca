//! Modules and cocomplete separated V-categories are the same thing.

use std::sync::Arc;

use qlab::order::catalog::chain_min;
use qlab::suplat::enumerate_lattices;
use qlab::vmod::{enumerate_modules, module_to_vcat, roundtrip_module, tensor_mod, VModule};

fn main() -> qlab::Result<()> {
    let q = Arc::new(chain_min(3)?);
    for l in enumerate_lattices(3)? {
        for m in enumerate_modules(&q, &l)? {
            let x = module_to_vcat(&m)?;
            println!(
                "action {:?} -> hom {:?}, round trip exact: {}",
                m.action(),
                x.hom().entries(),
                roundtrip_module(&m)?.is_identity()
            );
        }
    }

    let v = VModule::on_itself(q.clone());
    let t = tensor_mod(&v, &v)?;
    println!("V ⊗ V has {} elements", t.module.size());
    Ok(())
}
