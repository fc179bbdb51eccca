use crate::enumerate::{check_guard, guard_limit, power, tuple_index, Tuples};
use crate::report::LawReport;
use crate::vmat::VMatrix;
use crate::{Error, Result};

use super::{enumerate_vfunctors, is_fully_faithful, VCategory};

/// `a(y,x) ⊗ φ(x) ≤ φ(y)` for all `x,y`.
pub fn is_presheaf(x: &VCategory, phi: &[usize]) -> bool {
    let q = x.base();
    phi.len() == x.size()
        && (0..x.size()).all(|a| (0..x.size()).all(|b| q.leq(q.tensor(x.a(b, a), phi[a]), phi[b])))
}

/// `ψ∘a`: the least presheaf above an arbitrary table, `y ↦ ⋁_x a(y,x)⊗ψ(x)`.
pub fn presheafify(x: &VCategory, psi: &[usize]) -> Vec<usize> {
    let q = x.base();
    (0..x.size())
        .map(|y| q.join_all((0..x.size()).map(|z| q.tensor(x.a(y, z), psi[z]))))
        .collect()
}

/// `𝔻(X)` materialized: all presheaves in lexicographic order of their
/// value tables, the hom `⋀_x [φ(x),ψ(x)]`, and the Yoneda embedding.
#[derive(Clone, Debug)]
pub struct PresheafCategory {
    over: VCategory,
    presheaves: Vec<Vec<usize>>,
    index: Vec<Option<usize>>,
    category: VCategory,
    yoneda: Vec<usize>,
}

pub fn presheaf_category(x: &VCategory) -> Result<PresheafCategory> {
    let p = materialize(x)?;
    let report = check_yoneda_on(&p);
    if !report.is_ok() {
        return Err(Error::internal(format!("Yoneda lemma failed: {report}")));
    }
    Ok(p)
}

fn materialize(x: &VCategory) -> Result<PresheafCategory> {
    let q = x.base().clone();
    let n = x.size();
    let candidates = power(q.size(), n);
    check_guard("presheaf-carrier", candidates)?;
    let presheaves: Vec<Vec<usize>> = Tuples::new(n, q.size()).filter(|phi| is_presheaf(x, phi)).collect();
    let mut index = vec![None; candidates as usize];
    for (i, phi) in presheaves.iter().enumerate() {
        index[tuple_index(phi, q.size())] = Some(i);
    }
    let m = presheaves.len();
    check_guard("presheaf-hom", (m as u128) * (m as u128))?;
    let hom = VMatrix::from_fn(q.clone(), m, m, |i, j| {
        q.meet_all((0..n).map(|z| q.residual(presheaves[i][z], presheaves[j][z])))
    });
    let category = VCategory::trusted(hom);
    let yoneda = (0..n)
        .map(|y| {
            let col = x.hom().column(y);
            index[tuple_index(&col, q.size())].ok_or_else(|| Error::internal("Yoneda column is not a presheaf"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PresheafCategory { over: x.clone(), presheaves, index, category, yoneda })
}

impl PresheafCategory {
    pub fn over(&self) -> &VCategory {
        &self.over
    }

    pub fn len(&self) -> usize {
        self.presheaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.presheaves.is_empty()
    }

    pub fn presheaves(&self) -> &[Vec<usize>] {
        &self.presheaves
    }

    pub fn presheaf(&self, i: usize) -> &[usize] {
        &self.presheaves[i]
    }

    pub fn index_of(&self, phi: &[usize]) -> Option<usize> {
        if phi.len() != self.over.size() || phi.iter().any(|&v| v >= self.over.base().size()) {
            return None;
        }
        self.index[tuple_index(phi, self.over.base().size())]
    }

    pub fn category(&self) -> &VCategory {
        &self.category
    }

    /// `y_X(x) = a(−,x)` as indices into the carrier.
    pub fn yoneda(&self) -> &[usize] {
        &self.yoneda
    }

    pub fn hom(&self, i: usize, j: usize) -> usize {
        self.category.a(i, j)
    }

    /// `Sup` on `𝔻(X)` by the formula `−∘(y_X)_*`:
    /// `Ψ ↦ (x ↦ ⋁_φ φ(x)⊗Ψ(φ))`.
    pub fn sup_by_formula(&self, big_psi: &[usize]) -> Vec<usize> {
        let q = self.over.base();
        (0..self.over.size())
            .map(|x| q.join_all((0..self.len()).map(|i| q.tensor(self.presheaves[i][x], big_psi[i]))))
            .collect()
    }
}

fn check_yoneda_on(p: &PresheafCategory) -> LawReport {
    let x = &p.over;
    let mut report = LawReport::new("Yoneda");
    for a in 0..x.size() {
        for g in 0..p.len() {
            let lhs = p.hom(p.yoneda[a], g);
            let rhs = p.presheaves[g][a];
            if lhs != rhs {
                report.violate("yoneda-lemma", vec![a, g], format!("D(X)(y({a}), g) = {lhs} but g({a}) = {rhs}"));
            }
        }
    }
    if !is_fully_faithful(x, &p.category, &p.yoneda) {
        report.violate("yoneda-fully-faithful", vec![], "Yoneda embedding is not fully faithful");
    }
    let injective = {
        let mut seen = p.yoneda.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == p.yoneda.len()
    };
    if injective != x.is_separated() {
        report.violate("yoneda-injective-iff-separated", vec![], "Yoneda injectivity disagrees with separatedness");
    }
    report
}

/// Builds `𝔻(X)` and checks `𝔻(X)(y(x), g) = g(x)` for every `x` and `g`,
/// full faithfulness of `y`, and injectivity of `y` iff `X` is separated.
pub fn check_yoneda(x: &VCategory) -> Result<LawReport> {
    Ok(check_yoneda_on(&materialize(x)?))
}

/// `[X,Y]`: all V-functors `X → Y` with hom `⋀_x b(f x, g x)`.
#[derive(Clone, Debug)]
pub struct HomCategory {
    pub functors: Vec<Vec<usize>>,
    pub category: VCategory,
}

pub fn hom_category(x: &VCategory, y: &VCategory) -> Result<HomCategory> {
    let functors = enumerate_vfunctors(x, y)?;
    let q = x.base().clone();
    let m = functors.len();
    if (m as u128) * (m as u128) > guard_limit() {
        return Err(Error::Resource { guard: "hom-category", needed: (m * m) as u128, limit: guard_limit() });
    }
    let hom = VMatrix::from_fn(q.clone(), m, m, |i, j| {
        q.meet_all((0..x.size()).map(|z| y.a(functors[i][z], functors[j][z])))
    });
    Ok(HomCategory { functors, category: VCategory::trusted(hom) })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::order::catalog;
    use crate::vcat::tensor_cat;

    #[test]
    fn presheaves_on_unit_are_the_base() {
        for (_, v) in catalog::base_catalog() {
            let v = Arc::new(v);
            let p = presheaf_category(&VCategory::unit(v.clone())).unwrap();
            assert_eq!(p.len(), v.size());
            let base = VCategory::of_base(v.clone());
            assert_eq!(p.category().hom().entries(), base.hom().entries());
        }
    }

    #[test]
    fn down_sets_of_two_chain() {
        let two = Arc::new(catalog::two());
        let chain = VCategory::from_order(two, 2, |x, y| x <= y).unwrap();
        let p = presheaf_category(&chain).unwrap();
        // down-sets: {}, {0}, {0,1}
        assert_eq!(p.presheaves(), &[vec![0, 0], vec![1, 0], vec![1, 1]]);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(p.category().leq(i, j), i <= j);
            }
        }
    }

    #[test]
    fn yoneda_on_all_small_categories() {
        for v in [catalog::two(), catalog::chain_min(3).unwrap()] {
            let v = Arc::new(v);
            for n in 1..=2 {
                for c in crate::vcat::enumerate_vcategories(&v, n).unwrap() {
                    assert!(check_yoneda(&c).unwrap().is_ok());
                }
            }
        }
    }

    #[test]
    fn hom_category_examples() {
        let two = Arc::new(catalog::two());
        let chain = VCategory::from_order(two.clone(), 2, |x, y| x <= y).unwrap();
        assert_eq!(hom_category(&chain, &chain).unwrap().functors.len(), 3);
        let k = VCategory::unit(two.clone());
        let h = hom_category(&k, &chain).unwrap();
        assert_eq!(h.category.hom().entries(), chain.hom().entries());
    }

    #[test]
    fn copresheaves_are_functors_into_base() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let x = VCategory::from_order(c3.clone(), 2, |x, y| x <= y).unwrap();
        let v = VCategory::of_base(c3.clone());
        let h = hom_category(&x, &v).unwrap();
        let direct: Vec<Vec<usize>> = Tuples::new(2, 3)
            .filter(|f| (0..2).all(|a| (0..2).all(|b| c3.leq(x.a(a, b), c3.residual(f[a], f[b])))))
            .collect();
        assert_eq!(h.functors, direct);
    }

    #[test]
    fn currying_is_a_bijection() {
        let two = Arc::new(catalog::two());
        let x = VCategory::from_order(two.clone(), 2, |a, b| a <= b).unwrap();
        let y = VCategory::discrete(two.clone(), 2);
        let z = VCategory::from_order(two.clone(), 2, |a, b| a <= b).unwrap();
        let xy = tensor_cat(&x, &y).unwrap();
        let uncurried = enumerate_vfunctors(&xy, &z).unwrap();
        let yz = hom_category(&y, &z).unwrap();
        let curried = enumerate_vfunctors(&x, &yz.category).unwrap();
        assert_eq!(uncurried.len(), curried.len());
        for g in &curried {
            let flat: Vec<usize> = (0..4).map(|p| yz.functors[g[p / 2]][p % 2]).collect();
            assert!(uncurried.contains(&flat));
        }
    }
}
