//! `A⊗_{P_V}B`, transported through modules and, as an oracle, computed
//! directly as a coequalizer of free algebras.

use std::sync::Arc;

use crate::enumerate::{tuple_at, tuple_index};
use crate::order::Quantale;
use crate::report::LawReport;
use crate::suplat::{congruence, SupCongruence};
use crate::vmat::same_base;
use crate::vmod::{power_lattice, tensor_mod, TensorModule, VModule};
use crate::{Error, Result};

use super::algebra::{algebra_to_module, check_algebra_map, module_to_algebra, PVAlgebra};
use super::bimorphism::check_bimorphism_componentwise;
use super::monad::{all_weights, dense_to_weighted, tensor_weights, weighted_to_dense};

#[derive(Clone, Debug)]
pub struct AlgTensor {
    pub left: PVAlgebra,
    pub right: PVAlgebra,
    pub modules: TensorModule,
    pub algebra: PVAlgebra,
}

/// Converts to modules, takes `⊗_V`, converts back.
pub fn tensor_alg(a: &PVAlgebra, b: &PVAlgebra) -> Result<AlgTensor> {
    same_base(a.base(), b.base())?;
    let modules = tensor_mod(&algebra_to_module(a)?, &algebra_to_module(b)?)?;
    let algebra = module_to_algebra(&modules.module)?;
    Ok(AlgTensor { left: a.clone(), right: b.clone(), modules, algebra })
}

impl AlgTensor {
    pub fn pi(&self, x: usize, y: usize) -> usize {
        self.modules.pi(x, y)
    }

    /// The unique algebra morphism `f̄` with `f̄∘π = f`.
    pub fn classify(&self, c: &PVAlgebra, f: &[usize]) -> Result<Vec<usize>> {
        let r = check_bimorphism_componentwise(&self.left, &self.right, c, f)?;
        if !r.is_ok() {
            return Err(Error::precondition(format!("not a bimorphism of algebras: {r}")));
        }
        let out = self.modules.classify(&algebra_to_module(c)?, f)?;
        let r = check_algebra_map(&self.algebra, c, &out)?;
        if !r.is_ok() {
            return Err(Error::internal(format!("classifier is not an algebra morphism: {r}")));
        }
        Ok(out)
    }
}

/// The coequalizer of `T(α×β)` and `m∘T(dst)` on `T(TA×TB) ⇉ T(A×B)`,
/// computed as the algebra congruence on `V^{A×B}` generated by
/// `ψ⊠φ ~ k-at-(α(ψ),β(φ))`. Pair `(x,y)` is point `x·|B|+y`.
#[derive(Clone, Debug)]
pub struct DirectTensor {
    pub congruence: SupCongruence,
    pub module: VModule,
    points: usize,
    width: usize,
    base: Arc<Quantale>,
}

impl DirectTensor {
    pub fn pi(&self, x: usize, y: usize) -> usize {
        let q = &self.base;
        let mut t = vec![q.bottom(); self.points];
        t[x * self.width + y] = q.unit();
        self.congruence.project(tuple_index(&t, q.size()))
    }
}

pub fn tensor_alg_direct(a: &PVAlgebra, b: &PVAlgebra) -> Result<DirectTensor> {
    same_base(a.base(), b.base())?;
    let q = a.base().clone();
    let (na, nb) = (a.size(), b.size());
    let points = na * nb;
    let over = power_lattice(&q, points)?;
    let tables: Vec<Vec<usize>> = all_weights(&q, points)?;
    let actions: Vec<Vec<usize>> = q
        .elements()
        .map(|v| tables.iter().map(|t| tuple_index(&t.iter().map(|&c| q.tensor(v, c)).collect::<Vec<_>>(), q.size())).collect())
        .collect();
    let flat = |w: &crate::pvalg::Weighted<(usize, usize)>| {
        let w = crate::pvalg::Weighted::from_pairs(&q, w.iter().map(|(&(x, y), v)| (x * nb + y, v)));
        tuple_index(&weighted_to_dense(&q, &w, points), q.size())
    };
    let mut seeds = Vec::new();
    for psi in all_weights(&q, na)? {
        for phi in all_weights(&q, nb)? {
            let d = tensor_weights(&q, &dense_to_weighted(&q, &psi), &dense_to_weighted(&q, &phi));
            let mut t = vec![q.bottom(); points];
            t[a.alpha(&psi) * nb + b.alpha(&phi)] = q.unit();
            seeds.push((flat(&d), tuple_index(&t, q.size())));
        }
    }
    let c = congruence(&over, &seeds, &actions)?;
    let classes = c.classes();
    let mut action = Vec::with_capacity(q.size() * classes);
    for act in &actions {
        for i in 0..classes {
            action.push(c.project(act[c.representative(i)]));
        }
    }
    let module = VModule::new(q.clone(), c.quotient().clone(), action)
        .map_err(|e| Error::internal(format!("direct tensor action violates module laws: {e}")))?;
    Ok(DirectTensor { congruence: c, module, points, width: nb, base: q })
}

/// Compares the direct coequalizer with the transported tensor through
/// `[χ] ↦ ⋁_{(x,y)} χ(x,y)·π(x,y)`, which must be a well-defined
/// equivariant order-isomorphism commuting with `π`.
pub fn check_tensor_agreement(a: &PVAlgebra, b: &PVAlgebra) -> Result<LawReport> {
    let t = tensor_alg(a, b)?;
    let d = tensor_alg_direct(a, b)?;
    let q = a.base();
    let nb = b.size();
    let points = a.size() * nb;
    let m = &t.modules.module;
    let mut report = LawReport::new("direct and transported algebra tensors");
    let over = d.congruence.over();
    let mut iso = vec![None; d.module.size()];
    for i in 0..over.size() {
        let chi = tuple_at(i, points, q.size());
        let image = m.carrier().join_all(chi.iter().enumerate().map(|(p, &v)| m.act(v, t.pi(p / nb, p % nb))));
        let class = d.congruence.project(i);
        match iso[class] {
            None => iso[class] = Some(image),
            Some(prev) if prev != image => {
                report.violate("well-defined", vec![i], "comparison map is not constant on a class");
            }
            Some(_) => {}
        }
    }
    let iso: Vec<usize> = iso.into_iter().map(|o| o.expect("every class is hit")).collect();
    if !d.module.carrier().is_isomorphism(m.carrier(), &iso) {
        report.violate("isomorphism", vec![], "comparison map is not an order-isomorphism");
    }
    for v in q.elements() {
        for c in 0..d.module.size() {
            if iso[d.module.act(v, c)] != m.act(v, iso[c]) {
                report.violate("equivariance", vec![v, c], "comparison map is not equivariant");
            }
        }
    }
    for x in 0..a.size() {
        for y in 0..nb {
            if iso[d.pi(x, y)] != t.pi(x, y) {
                report.violate("universal-map", vec![x, y], "comparison map does not commute with π");
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::Tuples;
    use crate::order::catalog;
    use crate::pvalg::{enumerate_algebras, AssocMode};

    #[test]
    fn free_on_one_is_a_unit() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let one = PVAlgebra::free_on_one(c3.clone()).unwrap();
        for a in [one.clone(), module_to_algebra(&crate::vmod::enumerate_modules(&c3, &crate::order::FiniteLattice::chain(3)).unwrap()[1]).unwrap()] {
            let t = tensor_alg(&a, &one).unwrap();
            assert_eq!(t.algebra.size(), a.size());
            let f: Vec<usize> = (0..a.size()).flat_map(|x| (0..3).map(move |v| (x, v))).map(|(x, v)| a.act(v, x)).collect();
            let r = t.classify(&a, &f).unwrap();
            let perm: Vec<usize> = r.clone();
            assert!(t.modules.module.carrier().is_isomorphism(algebra_to_module(&a).unwrap().carrier(), &perm));
        }
    }

    #[test]
    fn direct_agrees_with_transport() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let algs = enumerate_algebras(&c3, 2, AssocMode::Auto).unwrap();
        assert!(!algs.is_empty());
        for a in &algs {
            for b in &algs {
                let r = check_tensor_agreement(a, b).unwrap();
                assert!(r.is_ok(), "{r}");
            }
        }
    }

    #[test]
    fn classification_is_unique() {
        let two = Arc::new(catalog::two());
        let algs = enumerate_algebras(&two, 2, AssocMode::Exhaustive).unwrap();
        let (a, b, c) = (&algs[0], &algs[1], &algs[0]);
        let t = tensor_alg(a, b).unwrap();
        for f in Tuples::new(4, 2) {
            if let Ok(g) = t.classify(c, &f) {
                let matches = Tuples::new(t.algebra.size(), 2)
                    .filter(|h| check_algebra_map(&t.algebra, c, h).unwrap().is_ok())
                    .filter(|h| (0..2).all(|x| (0..2).all(|y| h[t.pi(x, y)] == f[x * 2 + y])))
                    .count();
                assert_eq!(matches, 1);
                assert!((0..2).all(|x| (0..2).all(|y| g[t.pi(x, y)] == f[x * 2 + y])));
            }
        }
    }
}
