//! Central embeddings `V → Q` and quantales with a monoidal V-action.

use std::sync::Arc;

use crate::order::{check_quantale_morphism, Quantale, QuantaleMorphism};
use crate::report::LawReport;
use crate::vmat::same_base;
use crate::vmod::check_vmodule;
use crate::{Error, Result};

/// A quantale morphism `f: V → Q` with `f(v)∗u = u∗f(v)` for all `u ∈ Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralEmbedding {
    f: QuantaleMorphism,
}

/// Morphism laws plus centrality, witnesses `[v,u]`.
pub fn check_central(v: &Quantale, q: &Quantale, map: &[usize]) -> Result<LawReport> {
    let mut report = check_quantale_morphism(v, q, map)?;
    report.subject = format!("central embedding {} → {}", v.name(), q.name());
    for a in v.elements() {
        for u in q.elements() {
            if q.tensor(map[a], u) != q.tensor(u, map[a]) {
                report.violate(
                    "centrality",
                    vec![a, u],
                    format!("f({a}) = {} does not commute with {}", q.element_name(map[a]), q.element_name(u)),
                );
            }
        }
    }
    Ok(report)
}

impl CentralEmbedding {
    pub fn new(f: QuantaleMorphism) -> Result<Self> {
        f.source.require_base()?;
        let report = check_central(&f.source, &f.target, &f.map)?;
        if !report.is_ok() {
            return Err(Error::Law(report));
        }
        Ok(CentralEmbedding { f })
    }

    pub fn from_map(v: Arc<Quantale>, q: Arc<Quantale>, map: Vec<usize>) -> Result<Self> {
        v.require_base()?;
        let report = check_central(&v, &q, &map)?;
        if !report.is_ok() {
            return Err(Error::Law(report));
        }
        Ok(CentralEmbedding { f: QuantaleMorphism { source: v, target: q, map } })
    }

    pub fn identity(v: Arc<Quantale>) -> Result<Self> {
        Self::new(QuantaleMorphism::identity(v))
    }

    pub fn source(&self) -> &Arc<Quantale> {
        &self.f.source
    }

    pub fn target(&self) -> &Arc<Quantale> {
        &self.f.target
    }

    pub fn map(&self) -> &[usize] {
        &self.f.map
    }

    pub fn apply(&self, v: usize) -> usize {
        self.f.map[v]
    }

    pub fn morphism(&self) -> &QuantaleMorphism {
        &self.f
    }
}

/// A quantale `Q` with a V-action that is a monoid homomorphism
/// `V⊗Q → Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActedQuantale {
    base: Arc<Quantale>,
    quantale: Arc<Quantale>,
    action: Vec<usize>,
}

/// Module laws on `Q`'s lattice, `ρ(v₁⊗v₂, q₁∗q₂) = ρ(v₁,q₁)∗ρ(v₂,q₂)`
/// (witness `[v₁,v₂,q₁,q₂]`) and `ρ(k,k_Q) = k_Q`.
pub fn check_acted(base: &Quantale, q: &Quantale, action: &[usize]) -> Result<LawReport> {
    let mut report = check_vmodule(base, q.lattice(), action)?;
    report.subject = format!("{}-action on {}", base.name(), q.name());
    let n = q.size();
    let rho = |v: usize, x: usize| action[v * n + x];
    for v1 in base.elements() {
        for v2 in base.elements() {
            for q1 in q.elements() {
                for q2 in q.elements() {
                    let lhs = rho(base.tensor(v1, v2), q.tensor(q1, q2));
                    if lhs != q.tensor(rho(v1, q1), rho(v2, q2)) {
                        report.violate(
                            "monoid-homomorphism",
                            vec![v1, v2, q1, q2],
                            format!("ρ({v1}⊗{v2},{q1}∗{q2}) differs from ρ({v1},{q1})∗ρ({v2},{q2})"),
                        );
                    }
                }
            }
        }
    }
    if rho(base.unit(), q.unit()) != q.unit() {
        report.violate("monoid-unit", vec![], "ρ(k,k_Q) is not k_Q");
    }
    Ok(report)
}

impl ActedQuantale {
    pub fn new(base: Arc<Quantale>, quantale: Arc<Quantale>, action: Vec<usize>) -> Result<Self> {
        base.require_base()?;
        let report = check_acted(&base, &quantale, &action)?;
        if !report.is_ok() {
            return Err(Error::Law(report));
        }
        Ok(ActedQuantale { base, quantale, action })
    }

    /// `V` acting on itself by `⊗`.
    pub fn on_itself(base: Arc<Quantale>) -> Result<Self> {
        let action = base.elements().flat_map(|v| base.elements().map(move |x| (v, x))).map(|(v, x)| base.tensor(v, x)).collect();
        Self::new(base.clone(), base, action)
    }

    /// The unique action of `two` on a quantale.
    pub fn over_two(base: Arc<Quantale>, quantale: Arc<Quantale>) -> Result<Self> {
        if base.size() != 2 {
            return Err(Error::input("the canonical action needs the two-element base"));
        }
        let action = base
            .elements()
            .flat_map(|v| quantale.elements().map(move |x| (v, x)))
            .map(|(v, x)| if v == base.unit() { x } else { quantale.bottom() })
            .collect();
        Self::new(base, quantale, action)
    }

    pub fn base(&self) -> &Arc<Quantale> {
        &self.base
    }

    pub fn quantale(&self) -> &Arc<Quantale> {
        &self.quantale
    }

    pub fn act(&self, v: usize, x: usize) -> usize {
        self.action[v * self.quantale.size() + x]
    }

    pub fn action(&self) -> &[usize] {
        &self.action
    }
}

/// `ρ(v,q) = f(v)∗q`; also checks `f(v)∗q = q∗f(v)`.
pub fn central_to_acted(f: &CentralEmbedding) -> Result<ActedQuantale> {
    let (v, q) = (f.source(), f.target());
    let mut action = Vec::with_capacity(v.size() * q.size());
    for a in v.elements() {
        for x in q.elements() {
            let left = q.tensor(f.apply(a), x);
            if left != q.tensor(x, f.apply(a)) {
                return Err(Error::internal(format!("f({a}) is not central at {x}")));
            }
            action.push(left);
        }
    }
    ActedQuantale::new(v.clone(), q.clone(), action)
        .map_err(|e| Error::internal(format!("central embedding gives no acted quantale: {e}")))
}

/// `f(v) = ρ(v,k_Q)`; checks `f(v)∗q = ρ(v,q) = q∗f(v)`.
pub fn acted_to_central(a: &ActedQuantale) -> Result<CentralEmbedding> {
    let q = a.quantale();
    same_base(a.base(), a.base())?;
    let map: Vec<usize> = a.base().elements().map(|v| a.act(v, q.unit())).collect();
    for v in a.base().elements() {
        for x in q.elements() {
            let rho = a.act(v, x);
            if q.tensor(map[v], x) != rho || q.tensor(x, map[v]) != rho {
                return Err(Error::internal(format!("f({v})∗{x} = ρ({v},{x}) = {x}∗f({v}) fails")));
            }
        }
    }
    CentralEmbedding::from_map(a.base().clone(), q.clone(), map)
        .map_err(|e| Error::internal(format!("acted quantale gives no central embedding: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{catalog, enumerate_quantale_morphisms};

    #[test]
    fn identity_and_two() {
        for (_, v) in catalog::base_catalog() {
            let v = Arc::new(v);
            let a = ActedQuantale::on_itself(v.clone()).unwrap();
            let f = acted_to_central(&a).unwrap();
            assert_eq!(f, CentralEmbedding::identity(v).unwrap());
            assert_eq!(central_to_acted(&f).unwrap(), a);
        }
        let two = Arc::new(catalog::two());
        for (_, q) in catalog::builtin_catalog() {
            let q = Arc::new(q);
            let a = ActedQuantale::over_two(two.clone(), q.clone()).unwrap();
            let f = acted_to_central(&a).unwrap();
            assert_eq!(f.map(), &[q.bottom(), q.unit()]);
            assert_eq!(central_to_acted(&f).unwrap(), a);
        }
    }

    #[test]
    fn non_central_embedding_is_rejected() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let endo = Arc::new(catalog::endo_quantale_chain3());
        let id = |s: &str| endo.element_by_name(s).unwrap();
        let map = vec![id("f000"), id("f002"), id("f012")];
        assert!(check_quantale_morphism(&c3, &endo, &map).unwrap().is_ok());
        let r = check_central(&c3, &endo, &map).unwrap();
        assert!(r.has_law("centrality"));
        assert!(CentralEmbedding::from_map(c3.clone(), endo.clone(), map).is_err());
        let rejected = enumerate_quantale_morphisms(&c3, &endo)
            .into_iter()
            .filter(|m| !check_central(&c3, &endo, m).unwrap().is_ok())
            .count();
        assert!(rejected >= 1);
    }

    #[test]
    fn action_slices_are_not_quantale_maps() {
        let l3 = Arc::new(catalog::lukasiewicz(3).unwrap());
        let a = ActedQuantale::on_itself(l3.clone()).unwrap();
        // ρ(½,⊤∗⊤) = ½ but ρ(½,⊤)∗ρ(½,⊤) = ½⊗½ = 0
        assert_eq!(a.act(1, l3.tensor(2, 2)), 1);
        assert_eq!(l3.tensor(a.act(1, 2), a.act(1, 2)), 0);
    }

    #[test]
    fn module_that_is_not_monoidal() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let failing: Vec<_> = crate::vmod::enumerate_modules(&c3, c3.lattice())
            .unwrap()
            .into_iter()
            .map(|m| check_acted(&c3, &c3, m.action()).unwrap())
            .filter(|r| !r.is_ok())
            .collect();
        assert!(!failing.is_empty());
        assert!(failing.iter().all(|r| r.has_law("monoid-homomorphism") || r.has_law("monoid-unit")));
    }
}
