//! V-modules: suplattices with a unital, associative, bi-join-preserving
//! action `ρ: V×X → X`, and their equivalence with cocomplete separated
//! V-categories.

mod equivalence;
mod free;
mod pv_iso;
mod tensor;

use std::sync::Arc;

pub use equivalence::{module_to_vcat, roundtrip_module, roundtrip_vcat, vcat_to_module, RoundTrip};
pub use free::{action_monad_apply, FreeModule};
pub use pv_iso::{check_pv_iso, PvIso};
pub use tensor::{left_unitor, tensor_mod, TensorModule};

use crate::enumerate::{check_guard, power};
use crate::order::{FiniteLattice, Quantale};
use crate::report::LawReport;
use crate::suplat::{enumerate_supmaps, SupLattice};
use crate::vmat::same_base;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VModule {
    base: Arc<Quantale>,
    carrier: SupLattice,
    action: Vec<usize>,
    names: Vec<String>,
}

/// Checks `ρ(k,x) = x`, `ρ(v,ρ(u,x)) = ρ(v⊗u,x)` and preservation of binary
/// joins and bottom in each variable.
pub fn check_vmodule(base: &Quantale, carrier: &SupLattice, action: &[usize]) -> Result<LawReport> {
    let n = carrier.size();
    if action.len() != base.size() * n || action.iter().any(|&x| x >= n) {
        return Err(Error::input("action table is not a total function V×X → X"));
    }
    let rho = |v: usize, x: usize| action[v * n + x];
    let mut report = LawReport::new("V-module");
    for x in carrier.elements() {
        if rho(base.unit(), x) != x {
            report.violate("unit", vec![x], format!("ρ(k,{x}) = {} instead of {x}", rho(base.unit(), x)));
        }
        if rho(base.bottom(), x) != carrier.bottom() {
            report.violate("bottom-left", vec![x], format!("ρ(⊥,{x}) is not ⊥"));
        }
    }
    for v in base.elements() {
        if rho(v, carrier.bottom()) != carrier.bottom() {
            report.violate("bottom-right", vec![v], format!("ρ({v},⊥) is not ⊥"));
        }
        for u in base.elements() {
            for x in carrier.elements() {
                if rho(v, rho(u, x)) != rho(base.tensor(v, u), x) {
                    report.violate("associativity", vec![v, u, x], format!("ρ({v},ρ({u},{x})) differs from ρ({v}⊗{u},{x})"));
                }
            }
        }
        for w in v + 1..base.size() {
            for x in carrier.elements() {
                if rho(base.join(v, w), x) != carrier.join(rho(v, x), rho(w, x)) {
                    report.violate("join-left", vec![v, w, x], format!("ρ({v}∨{w},{x}) is not the join"));
                }
            }
        }
        for x in carrier.elements() {
            for y in x + 1..n {
                if rho(v, carrier.join(x, y)) != carrier.join(rho(v, x), rho(v, y)) {
                    report.violate("join-right", vec![v, x, y], format!("ρ({v},{x}∨{y}) is not the join"));
                }
            }
        }
    }
    Ok(report)
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl VModule {
    pub fn new(base: Arc<Quantale>, carrier: SupLattice, action: Vec<usize>) -> Result<Self> {
        base.require_base()?;
        let report = check_vmodule(&base, &carrier, &action)?;
        if !report.is_ok() {
            return Err(Error::Law(report));
        }
        let names = numbered(carrier.size());
        Ok(VModule { base, carrier, action, names })
    }

    pub fn from_fn(base: Arc<Quantale>, carrier: SupLattice, rho: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let action = base.elements().flat_map(|v| carrier.elements().map(move |x| (v, x))).map(|(v, x)| rho(v, x)).collect();
        Self::new(base, carrier, action)
    }

    /// `V` acting on itself by `⊗`.
    pub fn on_itself(base: Arc<Quantale>) -> Self {
        let q = base.clone();
        let mut m = Self::from_fn(base, q.lattice().clone(), |v, x| q.tensor(v, x)).expect("V acts on itself");
        m.names = q.element_names().to_vec();
        m
    }

    /// The unique action of `two`: `ρ(1,x) = x`, `ρ(0,x) = ⊥`.
    pub fn over_two(base: Arc<Quantale>, carrier: SupLattice) -> Result<Self> {
        if base.size() != 2 {
            return Err(Error::input("the canonical action needs the two-element base"));
        }
        let (k, b) = (base.unit(), carrier.bottom());
        Self::from_fn(base, carrier, |v, x| if v == k { x } else { b })
    }

    pub fn named(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.size() {
            return Err(Error::Dimension("one name per element required".into()));
        }
        self.names = names;
        Ok(self)
    }

    pub fn base(&self) -> &Arc<Quantale> {
        &self.base
    }

    pub fn carrier(&self) -> &SupLattice {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn act(&self, v: usize, x: usize) -> usize {
        self.action[v * self.size() + x]
    }

    pub fn action(&self) -> &[usize] {
        &self.action
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// `ρ(v,−)` as a table.
    pub fn action_of(&self, v: usize) -> Vec<usize> {
        self.action[v * self.size()..(v + 1) * self.size()].to_vec()
    }
}

/// Checks that `f: M → N` preserves joins and `f(ρ(v,x)) = θ(v,f(x))`.
pub fn check_module_map(source: &VModule, target: &VModule, f: &[usize]) -> Result<LawReport> {
    same_base(source.base(), target.base())?;
    let mut report = crate::suplat::check_supmap(source.carrier(), target.carrier(), f)?;
    report.subject = "V-module map".into();
    for v in source.base().elements() {
        for x in source.carrier().elements() {
            if f[source.act(v, x)] != target.act(v, f[x]) {
                report.violate("equivariance", vec![v, x], format!("f(ρ({v},{x})) differs from θ({v},f({x}))"));
            }
        }
    }
    Ok(report)
}

/// All V-module structures on a lattice. Each `ρ(v,−)` is a sup-map, `ρ(k,−)`
/// is the identity and `ρ(⊥,−)` is constant `⊥`; the remaining rows are
/// enumerated and filtered by the module laws.
pub fn enumerate_modules(base: &Arc<Quantale>, carrier: &SupLattice) -> Result<Vec<VModule>> {
    base.require_base()?;
    let rows = enumerate_supmaps(carrier, carrier)?;
    let free: Vec<usize> = base.elements().filter(|&v| v != base.unit() && v != base.bottom()).collect();
    check_guard("module-enumeration", power(rows.len(), free.len()))?;
    let n = carrier.size();
    let mut out = Vec::new();
    for choice in crate::enumerate::Tuples::new(free.len(), rows.len()) {
        let mut action = vec![0; base.size() * n];
        for v in base.elements() {
            for x in 0..n {
                action[v * n + x] = if v == base.unit() {
                    x
                } else if v == base.bottom() {
                    carrier.bottom()
                } else {
                    rows[choice[free.iter().position(|&f| f == v).expect("free row")]][x]
                };
            }
        }
        if check_vmodule(base, carrier, &action)?.is_ok() {
            out.push(VModule { base: base.clone(), carrier: carrier.clone(), action, names: numbered(n) });
        }
    }
    Ok(out)
}

/// `V^n` with the pointwise order; element `i` is the tuple
/// `tuple_at(i, n, |V|)`.
pub fn power_lattice(base: &Quantale, n: usize) -> Result<FiniteLattice> {
    let size = power(base.size(), n);
    check_guard("power-lattice", size * size)?;
    let size = size as usize;
    let tuples: Vec<Vec<usize>> = crate::enumerate::Tuples::new(n, base.size()).collect();
    FiniteLattice::from_fn(size, |i, j| (0..n).all(|k| base.leq(tuples[i][k], tuples[j][k])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::catalog;

    #[test]
    fn standard_modules() {
        for (_, v) in catalog::base_catalog() {
            VModule::on_itself(Arc::new(v));
        }
        let two = Arc::new(catalog::two());
        for l in [FiniteLattice::chain(3), FiniteLattice::powerset(2)] {
            VModule::over_two(two.clone(), l).unwrap();
        }
    }

    #[test]
    fn corrupted_unit_is_witnessed() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let m = VModule::on_itself(c3.clone());
        let mut action = m.action().to_vec();
        action[2 * 3 + 1] = 0;
        let r = check_vmodule(&c3, m.carrier(), &action).unwrap();
        assert_eq!(r.of_law("unit").next().unwrap().witness, vec![1]);
    }

    #[test]
    fn modules_on_small_chains() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        // on the 2-chain ρ(1,−) is id or constant ⊥; on the 3-chain the
        // idempotent sup-maps below the identity
        assert_eq!(enumerate_modules(&c3, &FiniteLattice::chain(2)).unwrap().len(), 2);
        let three = enumerate_modules(&c3, &FiniteLattice::chain(3)).unwrap();
        for m in &three {
            let row = m.action_of(1);
            assert!(row.iter().enumerate().all(|(x, &y)| y <= x));
            assert!(row.iter().all(|&y| row[y] == y));
        }
        assert_eq!(three.len(), 4);
    }

    #[test]
    fn power_lattice_order() {
        let c3 = catalog::chain_min(3).unwrap();
        let l = power_lattice(&c3, 2).unwrap();
        assert_eq!(l.size(), 9);
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 8);
        // (1,0) ∨ (0,2) = (1,2)
        assert_eq!(l.join(3, 2), 5);
    }
}
