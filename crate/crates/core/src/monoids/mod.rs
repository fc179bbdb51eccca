//! Monoids in V-Mod, central quantale embeddings `V → Q`, quantales with a
//! compatible V-action, and the chain of equivalences between them.

mod central;
mod chain;
mod free;

use std::sync::Arc;

pub use central::{
    acted_to_central, central_to_acted, check_acted, check_central, ActedQuantale, CentralEmbedding,
};
pub use chain::{equivalence_chain, AlgMonoid, ChainReport, Station, StationKind};
pub use free::{free_monoid_algebra, FiniteMonoid};

use crate::order::{FiniteLattice, Quantale, QuantaleMorphism};
use crate::report::LawReport;
use crate::suplat::check_bimorphism;
use crate::vmod::{tensor_mod, VModule};
use crate::{Error, Result};

/// A monoid in V-Mod given pointwise: a module, a multiplication table and a
/// unit element `e`. The unit arrow `V → X` is `v ↦ ρ(v,e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMonoid {
    module: VModule,
    mult: Vec<usize>,
    unit: usize,
}

/// Associativity `[x,y,z]`, two-sided unit `[x]`, join-preservation in each
/// variable, and the balancing laws
/// `m(ρ(v,x),y) = ρ(v,m(x,y)) = m(x,ρ(v,y))`.
pub fn check_mod_monoid(module: &VModule, mult: &[usize], unit: usize) -> Result<LawReport> {
    let n = module.size();
    if mult.len() != n * n || mult.iter().any(|&z| z >= n) || unit >= n {
        return Err(Error::input("multiplication must be a total table X×X → X with a unit in X"));
    }
    let m = |x: usize, y: usize| mult[x * n + y];
    let mut report = LawReport::new("monoid in V-Mod");
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m(m(x, y), z) != m(x, m(y, z)) {
                    report.violate("associativity", vec![x, y, z], format!("({x}·{y})·{z} differs from {x}·({y}·{z})"));
                }
            }
        }
        if m(unit, x) != x || m(x, unit) != x {
            report.violate("unit", vec![x], format!("{unit} is not a two-sided unit at {x}"));
        }
    }
    let l = module.carrier();
    report.absorb("bimorphism:", check_bimorphism(l, l, l, mult)?);
    for v in module.base().elements() {
        for x in 0..n {
            for y in 0..n {
                let mid = module.act(v, m(x, y));
                if m(module.act(v, x), y) != mid {
                    report.violate("balance-left", vec![v, x, y], format!("m(ρ({v},{x}),{y}) differs from ρ({v},m({x},{y}))"));
                }
                if m(x, module.act(v, y)) != mid {
                    report.violate("balance-right", vec![v, x, y], format!("m({x},ρ({v},{y})) differs from ρ({v},m({x},{y}))"));
                }
            }
        }
    }
    Ok(report)
}

impl ModMonoid {
    pub fn new(module: VModule, mult: Vec<usize>, unit: usize) -> Result<Self> {
        let report = check_mod_monoid(&module, &mult, unit)?;
        if !report.is_ok() {
            return Err(Error::Law(report));
        }
        Ok(ModMonoid { module, mult, unit })
    }

    /// `V` on itself with `⊗` and `k`.
    pub fn unit_monoid(base: Arc<Quantale>) -> Self {
        let module = VModule::on_itself(base.clone());
        let mult = base.elements().flat_map(|a| base.elements().map(move |b| (a, b))).map(|(a, b)| base.tensor(a, b)).collect();
        ModMonoid::new(module, mult, base.unit()).expect("V is a monoid in V-Mod")
    }

    pub fn module(&self) -> &VModule {
        &self.module
    }

    pub fn mult(&self, x: usize, y: usize) -> usize {
        self.mult[x * self.module.size() + y]
    }

    pub fn mult_table(&self) -> &[usize] {
        &self.mult
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    /// `e: V → X`, `v ↦ ρ(v,e)`.
    pub fn unit_arrow(&self) -> Vec<usize> {
        self.module.base().elements().map(|v| self.module.act(v, self.unit)).collect()
    }

    /// The carrier as a quantale `(X, m, e)`.
    pub fn to_quantale(&self) -> Result<Quantale> {
        let name = format!("monoid over {}", self.module.base().name());
        Quantale::from_fn(name, self.module.names().to_vec(), self.module.carrier(), |x, y| self.mult(x, y), self.unit)
    }

    /// Classifies `m` through `X⊗_V X` and checks that `e` is a module map
    /// `V → X`. Skipped with a note when `|X|² > 16`.
    pub fn check_tensor_form(&self) -> Result<LawReport> {
        let mut report = LawReport::new("monoid in V-Mod via ⊗_V");
        let n = self.module.size();
        if n * n > crate::suplat::FULL_ENUMERATION_CELLS {
            report.note(format!("tensor form skipped at |X| = {n}"));
            return Ok(report);
        }
        let t = tensor_mod(&self.module, &self.module)?;
        let m_bar = t.classify(&self.module, &self.mult)?;
        for x in 0..n {
            for y in 0..n {
                if m_bar[t.pi(x, y)] != self.mult(x, y) {
                    report.violate("factorization", vec![x, y], "m̄∘π differs from m");
                }
            }
        }
        let v = VModule::on_itself(self.module.base().clone());
        report.absorb("unit-arrow:", crate::vmod::check_module_map(&v, &self.module, &self.unit_arrow())?);
        Ok(report)
    }
}

/// `f: V → Q` from a monoid: `Q = (X, m, e)`, `f(v) = ρ(v,e)`.
pub fn monoid_to_central(m: &ModMonoid) -> Result<CentralEmbedding> {
    let q = Arc::new(m.to_quantale()?);
    let f = QuantaleMorphism::new(m.module().base().clone(), q, m.unit_arrow())
        .map_err(|e| Error::internal(format!("unit arrow is not a quantale morphism: {e}")))?;
    CentralEmbedding::new(f).map_err(|e| Error::internal(format!("unit arrow is not central: {e}")))
}

/// `ρ(v,q) = f(v)∗q`, `m = ∗`, `e = k_Q`.
pub fn central_to_monoid(f: &CentralEmbedding) -> Result<ModMonoid> {
    let (v, q) = (f.source(), f.target());
    let module = VModule::from_fn(v.clone(), q.lattice().clone(), |a, x| q.tensor(f.apply(a), x))?
        .named(q.element_names().to_vec())?;
    let mult = q.elements().flat_map(|a| q.elements().map(move |b| (a, b))).map(|(a, b)| q.tensor(a, b)).collect();
    ModMonoid::new(module, mult, q.unit()).map_err(|e| Error::internal(format!("central embedding gives no monoid: {e}")))
}

/// Leq, tensor and unit tables agree; names are ignored.
pub fn same_quantale_tables(a: &Quantale, b: &Quantale) -> bool {
    let (da, db) = (a.to_data(), b.to_data());
    da.leq == db.leq && da.tensor == db.tensor && da.unit == db.unit
}

pub(crate) fn same_lattice(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    a.leq_table() == b.leq_table()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::catalog;

    #[test]
    fn unit_monoids_roundtrip() {
        for (_, v) in catalog::base_catalog() {
            let v = Arc::new(v);
            let m = ModMonoid::unit_monoid(v.clone());
            let f = monoid_to_central(&m).unwrap();
            assert_eq!(f.map(), &v.elements().collect::<Vec<_>>()[..]);
            assert_eq!(central_to_monoid(&f).unwrap(), m);
        }
    }

    #[test]
    fn corrupted_associativity_is_reported() {
        let l3 = Arc::new(catalog::lukasiewicz(3).unwrap());
        let m = ModMonoid::unit_monoid(l3.clone());
        let mut mult = m.mult_table().to_vec();
        mult[2 * 3 + 1] = 2;
        let r = check_mod_monoid(m.module(), &mult, m.unit()).unwrap();
        assert!(r.has_law("associativity"));
        assert!(r.of_law("associativity").all(|v| v.witness.len() == 3));
    }

    #[test]
    fn two_monoids_are_quantales() {
        let two = Arc::new(catalog::two());
        let q = Arc::new(catalog::endo_quantale_chain3());
        let f = CentralEmbedding::new(QuantaleMorphism::new(two, q.clone(), vec![q.bottom(), q.unit()]).unwrap()).unwrap();
        let m = central_to_monoid(&f).unwrap();
        assert!(same_quantale_tables(&m.to_quantale().unwrap(), &q));
        let back = monoid_to_central(&m).unwrap();
        assert_eq!(back.map(), f.map());
        assert!(same_quantale_tables(back.target(), &q));
    }

    #[test]
    fn tensor_form_on_small_monoids() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        assert!(ModMonoid::unit_monoid(c3).check_tensor_form().unwrap().is_ok());
        let two = Arc::new(catalog::two());
        let q = Arc::new(catalog::bool_square());
        let f = CentralEmbedding::new(QuantaleMorphism::new(two, q.clone(), vec![q.bottom(), q.unit()]).unwrap()).unwrap();
        assert!(central_to_monoid(&f).unwrap().check_tensor_form().unwrap().is_ok());
    }
}
