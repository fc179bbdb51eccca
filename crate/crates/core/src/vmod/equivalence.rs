//! Modules versus cocomplete separated V-categories.

use crate::enumerate::{guard_limit, power};
use crate::order::FiniteLattice;
use crate::vcat::{find_sup, SupStructure, VCategory};
use crate::vmat::VMatrix;
use crate::{Error, Result};

use super::VModule;

/// `a(x,y) = ⋁{v : ρ(v,x) ≤ y}`.
///
/// Asserts `ρ(v,x) ≤ y ⇔ v ≤ a(x,y)`, the V-category laws, separatedness,
/// and (when the presheaf carrier is within the guard) cocompleteness.
pub fn module_to_vcat(m: &VModule) -> Result<VCategory> {
    let q = m.base().clone();
    let l = m.carrier();
    let n = m.size();
    let hom = VMatrix::from_fn(q.clone(), n, n, |x, y| {
        q.join_all(q.elements().filter(|&v| l.leq(m.act(v, x), y)))
    });
    for v in q.elements() {
        for x in 0..n {
            for y in 0..n {
                if l.leq(m.act(v, x), y) != q.leq(v, hom.get(x, y)) {
                    return Err(Error::internal(format!("adjunction fails at ({v},{x},{y})")));
                }
            }
        }
    }
    let c = VCategory::new(hom).map_err(|e| Error::internal(format!("module hom is not a V-category: {e}")))?;
    let c = c.named(m.names().to_vec())?;
    if !c.is_separated() {
        return Err(Error::internal("module hom is not separated"));
    }
    if power(q.size(), n) <= guard_limit() {
        find_sup(&c).map_err(|e| Error::internal(format!("module hom is not cocomplete: {e}")))?;
    }
    Ok(c)
}

/// Copowers `u⊙x = Sup(z ↦ u⊗a(z,x))`, cross-checked against the adjoint
/// search `a(u⊙x, y) = [u, a(x,y)]` for all `y`.
pub fn vcat_to_module(x: &VCategory) -> Result<VModule> {
    let s = find_sup(x)?;
    module_from_sup(&s)
}

pub(crate) fn module_from_sup(s: &SupStructure) -> Result<VModule> {
    let x = s.category();
    let q = x.base().clone();
    let n = x.size();
    let carrier = FiniteLattice::from_fn(n, |a, b| x.leq(a, b))
        .map_err(|e| Error::internal(format!("underlying order of a cocomplete category: {e}")))?;
    let mut action = Vec::with_capacity(q.size() * n);
    for u in q.elements() {
        for a in 0..n {
            let weight: Vec<usize> = (0..n).map(|z| q.tensor(u, x.a(z, a))).collect();
            let via_sup = s.sup(&weight).ok_or_else(|| Error::internal("copower weight is not a presheaf"))?;
            let candidates: Vec<usize> = (0..n)
                .filter(|&c| (0..n).all(|y| x.a(c, y) == q.residual(u, x.a(a, y))))
                .collect();
            if candidates != [via_sup] {
                return Err(Error::internal(format!(
                    "copower {u}⊙{a}: adjoint search found {candidates:?}, Sup found {via_sup}"
                )));
            }
            action.push(via_sup);
        }
    }
    let m = VModule::new(q, carrier, action).map_err(|e| Error::internal(format!("copowers do not form a module: {e}")))?;
    m.named(x.names().to_vec())
}

/// Outcome of a round trip; `diff` names the first differing cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTrip {
    pub diff: Option<(usize, usize)>,
}

impl RoundTrip {
    pub fn is_identity(&self) -> bool {
        self.diff.is_none()
    }
}

/// module → V-category → module, compared on action tables (cell `(v,x)`).
pub fn roundtrip_module(m: &VModule) -> Result<RoundTrip> {
    let back = vcat_to_module(&module_to_vcat(m)?)?;
    if back.carrier() != m.carrier() {
        return Ok(RoundTrip { diff: Some((usize::MAX, usize::MAX)) });
    }
    let diff = m
        .base()
        .elements()
        .flat_map(|v| (0..m.size()).map(move |x| (v, x)))
        .find(|&(v, x)| back.act(v, x) != m.act(v, x));
    Ok(RoundTrip { diff })
}

/// V-category → module → V-category, compared on hom tables.
pub fn roundtrip_vcat(x: &VCategory) -> Result<RoundTrip> {
    let back = module_to_vcat(&vcat_to_module(x)?)?;
    let n = x.size();
    let diff = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| back.a(a, b) != x.a(a, b));
    Ok(RoundTrip { diff })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::enumerate::Tuples;
    use crate::order::catalog;
    use crate::vcat::{enumerate_vcategories, enumerate_vfunctors, is_cocontinuous};
    use crate::vmod::{check_module_map, enumerate_modules};

    #[test]
    fn base_on_itself_gives_internal_hom() {
        for (_, v) in catalog::base_catalog() {
            let v = Arc::new(v);
            let c = module_to_vcat(&VModule::on_itself(v.clone())).unwrap();
            assert_eq!(c.hom().entries(), VCategory::of_base(v.clone()).hom().entries());
            let m = vcat_to_module(&VCategory::of_base(v.clone())).unwrap();
            for u in v.elements() {
                for x in v.elements() {
                    assert_eq!(m.act(u, x), v.tensor(u, x));
                }
            }
        }
    }

    #[test]
    fn two_action_gives_order() {
        let two = Arc::new(catalog::two());
        let l = FiniteLattice::powerset(2);
        let c = module_to_vcat(&VModule::over_two(two, l.clone()).unwrap()).unwrap();
        for x in l.elements() {
            for y in l.elements() {
                assert_eq!(c.a(x, y) == 1, l.leq(x, y));
            }
        }
    }

    #[test]
    fn lukasiewicz_implication() {
        let l3 = Arc::new(catalog::lukasiewicz(3).unwrap());
        let c = module_to_vcat(&VModule::on_itself(l3.clone())).unwrap();
        // brute force: largest w with x⊗w ≤ y
        for x in 0..3 {
            for y in 0..3 {
                let w = (0..3usize).filter(|&w| (x + w).saturating_sub(2) <= y).max().unwrap();
                assert_eq!(c.a(x, y), w);
            }
        }
        assert_eq!(c.a(1, 0), 1);
    }

    #[test]
    fn roundtrips_on_small_modules_and_categories() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        for l in [FiniteLattice::chain(1), FiniteLattice::chain(2), FiniteLattice::chain(3)] {
            for m in enumerate_modules(&c3, &l).unwrap() {
                assert!(roundtrip_module(&m).unwrap().is_identity());
            }
        }
        for n in 1..=3 {
            for x in enumerate_vcategories(&c3, n).unwrap() {
                if x.is_separated() && find_sup(&x).is_ok() {
                    assert!(roundtrip_vcat(&x).unwrap().is_identity());
                }
            }
        }
    }

    #[test]
    fn equivariant_maps_are_cocontinuous_functors() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let ms: Vec<VModule> = enumerate_modules(&c3, &FiniteLattice::chain(3))
            .unwrap()
            .into_iter()
            .chain([VModule::on_itself(c3.clone())])
            .collect();
        for m in &ms {
            for n in &ms {
                let (cm, cn) = (module_to_vcat(m).unwrap(), module_to_vcat(n).unwrap());
                let (sm, sn) = (find_sup(&cm).unwrap(), find_sup(&cn).unwrap());
                let functors = enumerate_vfunctors(&cm, &cn).unwrap();
                for f in Tuples::new(m.size(), n.size()) {
                    let equivariant = check_module_map(m, n, &f).unwrap().is_ok();
                    let cocontinuous =
                        functors.contains(&f) && is_cocontinuous(&sm, &sn, &f).unwrap().is_ok();
                    assert_eq!(equivariant, cocontinuous, "{f:?}");
                }
            }
        }
    }
}
