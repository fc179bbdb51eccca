//! Acted quantales as representable (L,V)-categories and back.

use std::sync::Arc;

use crate::monoids::ActedQuantale;
use crate::order::Quantale;
use crate::report::LawReport;
use crate::vcat::VCategory;
use crate::vmat::VMatrix;
use crate::vmod::{module_to_vcat, vcat_to_module, VModule};
use crate::{Error, Result};

use super::{check_lv_category, representable_lv, MonoidalVCat, TruncatedLVCategory};

/// The V-category of the module `(Q, ρ)` with `∗_Q` as monoidal
/// structure, as a representable (L,V)-category. The certificate collects
/// the monoidal V-category laws and the truncated (L,V)-axioms.
pub fn injective_station(a: &ActedQuantale, max_len: usize, n_blocks: usize) -> Result<(TruncatedLVCategory, LawReport)> {
    let q = a.quantale();
    let module = VModule::from_fn(a.base().clone(), q.lattice().clone(), |v, x| a.act(v, x))?
        .named(q.element_names().to_vec())?;
    let vcat = module_to_vcat(&module)?;
    let star: Vec<usize> = q.elements().flat_map(|x| q.elements().map(move |y| (x, y))).map(|(x, y)| q.tensor(x, y)).collect();
    let mut cert = LawReport::new(format!("injective station of {} over {}", q.name(), a.base().name()));
    cert.absorb("monoidal:", MonoidalVCat::check(&vcat, &star, q.unit())?);
    if !cert.is_ok() {
        return Err(Error::Law(cert));
    }
    let m = MonoidalVCat::new(vcat, star, q.unit())?;
    let lv = representable_lv(&m, max_len)?;
    cert.absorb("lv:", check_lv_category(&lv, n_blocks)?);
    Ok((lv, cert))
}

/// Recovers `(Q, ρ)` from the tables of an (L,V)-category that is
/// representable over a separated cocomplete V-category: `a(x,y) =
/// â((x),y)`, `x∗y` the object with `a(x∗y,−) = â((x,y),−)`, `k_Q` the
/// object with `a(k_Q,−) = â((),−)`, and `ρ` the copowers.
pub fn lv_to_acted(c: &TruncatedLVCategory) -> Result<ActedQuantale> {
    if c.max_len() < 2 {
        return Err(Error::input("recovering ∗ needs lists of length 2"));
    }
    let n = c.size();
    let base = c.base().clone();
    let hom = VMatrix::from_fn(base.clone(), n, n, |x, y| c.a(&[x], y).expect("within truncation"));
    let vcat = VCategory::with_names(hom, c.names().to_vec())?;
    let represent = |xs: &[usize]| -> Result<usize> {
        let row: Vec<usize> = (0..n).map(|y| c.a(xs, y).expect("within truncation")).collect();
        let mut found = (0..n).filter(|&w| (0..n).all(|y| vcat.a(w, y) == row[y]));
        match (found.next(), found.next()) {
            (Some(w), None) => Ok(w),
            (None, _) => Err(Error::input(format!("list {xs:?} has no representing object"))),
            (Some(_), Some(_)) => Err(Error::input("underlying V-category is not separated")),
        }
    };
    let mut star = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            star.push(represent(&[x, y])?);
        }
    }
    let unit = represent(&[])?;
    let module = vcat_to_module(&vcat)?;
    let quantale = Quantale::from_fn(
        format!("quantale of ({})", c.names().join(",")),
        c.names().to_vec(),
        module.carrier(),
        |x, y| star[x * n + y],
        unit,
    )?;
    ActedQuantale::new(base, Arc::new(quantale), module.action().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoids::same_quantale_tables;
    use crate::order::catalog;

    #[test]
    fn base_on_itself_is_the_base_instance() {
        let l3 = Arc::new(catalog::lukasiewicz(3).unwrap());
        let a = ActedQuantale::on_itself(l3.clone()).unwrap();
        let (lv, cert) = injective_station(&a, 3, 3).unwrap();
        assert!(cert.is_ok(), "{cert}");
        for xs in lv.index().lists() {
            for w in l3.elements() {
                assert_eq!(lv.a(&xs, w).unwrap(), l3.residual(l3.tensor_all(xs.iter().copied()), w));
            }
        }
        let back = lv_to_acted(&lv).unwrap();
        assert!(same_quantale_tables(back.quantale(), &l3));
        assert_eq!(back.action(), a.action());
    }

    #[test]
    fn quantales_over_two() {
        let two = Arc::new(catalog::two());
        for q in [catalog::bool_square(), catalog::endo_quantale_chain3(), catalog::chain_min(4).unwrap()] {
            let q = Arc::new(q);
            let a = ActedQuantale::over_two(two.clone(), q.clone()).unwrap();
            let (lv, cert) = injective_station(&a, 2, 2).unwrap();
            assert!(cert.is_ok(), "{cert}");
            let back = lv_to_acted(&lv).unwrap();
            assert!(same_quantale_tables(back.quantale(), &q));
            assert_eq!(back.action(), a.action());
        }
    }

    #[test]
    fn non_representable_tables_are_rejected() {
        let two = Arc::new(catalog::two());
        let d = TruncatedLVCategory::discrete(two, 2, 2).unwrap();
        assert!(lv_to_acted(&d).is_err());
    }
}
