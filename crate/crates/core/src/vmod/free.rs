//! The free module `V⊗₂X` on a suplattice and the adjunction `V⊗₂− ⊣ U`.

use std::sync::Arc;

use crate::order::Quantale;
use crate::report::LawReport;
use crate::suplat::{classify_bimorphism, tensor_sup, SupLattice, TensorSup};
use crate::{Error, Result};

use super::{check_module_map, VModule};

#[derive(Clone, Debug)]
pub struct FreeModule {
    pub tensor: TensorSup,
    pub module: VModule,
}

/// `V⊗₂X` with `ρ(v,−)` classified from `(w,x) ↦ π(v⊗w, x)`.
pub fn action_monad_apply(base: &Arc<Quantale>, x: &SupLattice) -> Result<FreeModule> {
    base.require_base()?;
    let q = base.as_ref();
    let t = tensor_sup(q.lattice(), x)?;
    let mut action = Vec::with_capacity(q.size() * t.size());
    for v in q.elements() {
        let f: Vec<usize> = q
            .elements()
            .flat_map(|w| x.elements().map(move |a| (w, a)))
            .map(|(w, a)| t.pi(q.tensor(v, w), a))
            .collect();
        action.extend(classify_bimorphism(&t, t.lattice(), &f)?);
    }
    let module = VModule::new(base.clone(), t.lattice().clone(), action)
        .map_err(|e| Error::internal(format!("free action violates module laws: {e}")))?;
    let free = FreeModule { tensor: t, module };
    let report = free.check_unit_triangle();
    if !report.is_ok() {
        return Err(Error::internal(format!("triangle identity fails: {report}")));
    }
    Ok(free)
}

impl FreeModule {
    /// `η(x) = π(k,x)`.
    pub fn unit(&self, a: usize) -> usize {
        self.tensor.pi(self.module.base().unit(), a)
    }

    /// `ε_{FX}∘F(η) = id`, checked on the generators `π(v,x)`, where it reads
    /// `ρ(v, π(k,x)) = π(v,x)`. Both sides preserve joins and the
    /// generators join-generate `V⊗₂X`.
    pub fn check_unit_triangle(&self) -> LawReport {
        let q = self.module.base();
        let mut report = LawReport::new("free module");
        for v in q.elements() {
            for a in self.tensor.right().elements() {
                if self.module.act(v, self.unit(a)) != self.tensor.pi(v, a) {
                    report.violate("triangle-free", vec![v, a], format!("ρ({v},η({a})) differs from π({v},{a})"));
                }
            }
        }
        report
    }

    /// The counit `ε_M: V⊗₂UM → M`, classified from the action of `M`.
    /// Requires this to be the free module on `M`'s carrier.
    pub fn counit(&self, m: &VModule) -> Result<Vec<usize>> {
        if self.tensor.right() != m.carrier() {
            return Err(Error::input("counit needs the free module on the module's own carrier"));
        }
        let q = m.base();
        let f: Vec<usize> = q.elements().flat_map(|v| m.carrier().elements().map(move |a| (v, a))).map(|(v, a)| m.act(v, a)).collect();
        let eps = classify_bimorphism(&self.tensor, m.carrier(), &f)?;
        let r = check_module_map(&self.module, m, &eps)?;
        if !r.is_ok() {
            return Err(Error::internal(format!("counit is not equivariant: {r}")));
        }
        Ok(eps)
    }

    /// `ε_M∘η_{UM} = id_M`.
    pub fn check_counit_triangle(&self, m: &VModule) -> Result<LawReport> {
        let eps = self.counit(m)?;
        let mut report = LawReport::new("free module");
        for a in m.carrier().elements() {
            if eps[self.unit(a)] != a {
                report.violate("triangle-module", vec![a], format!("ε(η({a})) = {} instead of {a}", eps[self.unit(a)]));
            }
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{catalog, FiniteLattice};

    #[test]
    fn free_on_two_is_base() {
        for (_, v) in catalog::base_catalog() {
            let v = Arc::new(v);
            let f = action_monad_apply(&v, &FiniteLattice::chain(2)).unwrap();
            let iso: Vec<usize> = v.elements().map(|w| f.tensor.pi(w, 1)).collect();
            assert!(v.lattice().is_isomorphism(f.module.carrier(), &iso));
            for a in v.elements() {
                for b in v.elements() {
                    assert_eq!(f.module.act(a, iso[b]), iso[v.tensor(a, b)]);
                }
            }
        }
    }

    #[test]
    fn counit_on_base_is_multiplication() {
        let l3 = Arc::new(catalog::lukasiewicz(3).unwrap());
        let m = VModule::on_itself(l3.clone());
        let f = action_monad_apply(&l3, m.carrier()).unwrap();
        let eps = f.counit(&m).unwrap();
        for v in l3.elements() {
            for w in l3.elements() {
                assert_eq!(eps[f.tensor.pi(v, w)], l3.tensor(v, w));
            }
        }
        assert!(f.check_counit_triangle(&m).unwrap().is_ok());
    }

    #[test]
    fn free_over_two_on_bool_square() {
        let two = Arc::new(catalog::two());
        let sq = FiniteLattice::powerset(2);
        let f = action_monad_apply(&two, &sq).unwrap();
        assert_eq!(f.module.size(), 4);
        let m = VModule::over_two(two, sq).unwrap();
        assert!(f.check_counit_triangle(&m).unwrap().is_ok());
    }
}
