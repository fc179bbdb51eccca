use std::collections::HashMap;

use crate::report::LawReport;
use crate::{Error, Result};

use super::{check_vfunctor, presheaf_category, presheafify, PresheafCategory, VCategory};

/// A separated cocomplete V-category with its `Sup: 𝔻(X) → X`.
#[derive(Clone, Debug)]
pub struct SupStructure {
    presheaves: PresheafCategory,
    sup: Vec<usize>,
}

impl SupStructure {
    pub fn category(&self) -> &VCategory {
        self.presheaves.over()
    }

    pub fn presheaves(&self) -> &PresheafCategory {
        &self.presheaves
    }

    /// `Sup` indexed by presheaf position in [`PresheafCategory`].
    pub fn table(&self) -> &[usize] {
        &self.sup
    }

    /// `Sup(ψ)` for a presheaf `ψ`.
    pub fn sup(&self, psi: &[usize]) -> Option<usize> {
        self.presheaves.index_of(psi).map(|i| self.sup[i])
    }
}

/// Finds `Sup(ψ)` for every presheaf as the unique `x` with
/// `a(x,y) = ⋀_z [ψ(z), a(z,y)]` for all `y`.
///
/// Separatedness makes hom rows distinct, so the search is a row lookup.
/// A presheaf with no such `x` is returned as the witness of
/// [`Error::NotCocomplete`].
pub fn find_sup(x: &VCategory) -> Result<SupStructure> {
    if let Some((a, b)) = x.separation_witness() {
        return Err(Error::precondition(format!(
            "objects {a} and {b} are isomorphic; only separated categories are supported"
        )));
    }
    let presheaves = presheaf_category(x)?;
    let q = x.base();
    let n = x.size();
    let rows: HashMap<&[usize], usize> = (0..n).map(|a| (x.hom().row(a), a)).collect();
    let mut sup = Vec::with_capacity(presheaves.len());
    for psi in presheaves.presheaves() {
        let target: Vec<usize> = (0..n)
            .map(|y| q.meet_all((0..n).map(|z| q.residual(psi[z], x.a(z, y)))))
            .collect();
        match rows.get(target.as_slice()) {
            Some(&s) => sup.push(s),
            None => return Err(Error::NotCocomplete { witness: psi.clone() }),
        }
    }
    for (a, &i) in presheaves.yoneda().iter().enumerate() {
        if sup[i] != a {
            return Err(Error::internal(format!("Sup(y({a})) = {} instead of {a}", sup[i])));
        }
    }
    Ok(SupStructure { presheaves, sup })
}

/// `Sup_X(ψ∘a)` for an arbitrary table `ψ ∈ V^X`.
pub fn sup_of_table(s: &SupStructure, psi: &[usize]) -> Result<usize> {
    let x = s.category();
    if psi.len() != x.size() {
        return Err(Error::Dimension(format!("table of length {} over {} objects", psi.len(), x.size())));
    }
    s.sup(&presheafify(x, psi))
        .ok_or_else(|| Error::internal("presheafified table missing from the carrier"))
}

/// Checks `f(Sup_X ψ) = Sup_Y(𝔻(f)ψ)` for every presheaf `ψ` on `X`,
/// where `𝔻(f)(ψ)(y) = ⋁_x b(y, f x)⊗ψ(x)`. Witness: the presheaf index.
pub fn is_cocontinuous(sx: &SupStructure, sy: &SupStructure, f: &[usize]) -> Result<LawReport> {
    let (x, y) = (sx.category(), sy.category());
    let functor = check_vfunctor(x, y, f)?;
    if !functor.is_ok() {
        return Err(Error::precondition(format!("not a V-functor: {functor}")));
    }
    let q = x.base();
    let mut report = LawReport::new("cocontinuity");
    for (i, psi) in sx.presheaves().presheaves().iter().enumerate() {
        let image: Vec<usize> = (0..y.size())
            .map(|b| q.join_all((0..x.size()).map(|a| q.tensor(y.a(b, f[a]), psi[a]))))
            .collect();
        let rhs = sy.sup(&image).ok_or_else(|| Error::internal("D(f)ψ is not a presheaf"))?;
        let lhs = f[sx.table()[i]];
        if lhs != rhs {
            report.violate(
                "preserves-sup",
                vec![i],
                format!("f(Sup {psi:?}) = {lhs} but Sup(D(f) {psi:?}) = {rhs}"),
            );
        }
    }
    Ok(report)
}

/// Extends `f: Y → X` along `i: Y → Z` into the cocomplete `X`:
/// `f'(z) = Sup_X(x ↦ ⋁_y a(x, f y)⊗c(i y, z))`.
pub fn extend_along(
    sx: &SupStructure,
    y: &VCategory,
    f: &[usize],
    z: &VCategory,
    i: &[usize],
) -> Result<Vec<usize>> {
    let x = sx.category();
    for r in [check_vfunctor(y, x, f)?, check_vfunctor(y, z, i)?] {
        if !r.is_ok() {
            return Err(Error::precondition(format!("not a V-functor: {r}")));
        }
    }
    let q = x.base();
    (0..z.size())
        .map(|c| {
            let psi: Vec<usize> = (0..x.size())
                .map(|a| q.join_all((0..y.size()).map(|b| q.tensor(x.a(a, f[b]), z.a(i[b], c)))))
                .collect();
            sx.sup(&psi).ok_or_else(|| Error::internal("extension weight is not a presheaf"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::order::catalog;
    use crate::vcat::{enumerate_vfunctors, is_fully_faithful};

    #[test]
    fn base_sup_is_weighted_join() {
        for (_, v) in catalog::base_catalog() {
            let v = Arc::new(v);
            let s = find_sup(&VCategory::of_base(v.clone())).unwrap();
            for psi in s.presheaves().presheaves() {
                let expected = v.join_all(v.elements().map(|w| v.tensor(psi[w], w)));
                assert_eq!(s.sup(psi), Some(expected));
            }
        }
    }

    #[test]
    fn presheaf_category_sup_is_the_formula() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let x = VCategory::from_order(c3, 2, |a, b| a <= b).unwrap();
        let p = crate::vcat::presheaf_category(&x).unwrap();
        let s = find_sup(p.category()).unwrap();
        for big_psi in s.presheaves().presheaves() {
            let formula = p.sup_by_formula(big_psi);
            assert_eq!(p.presheaf(s.sup(big_psi).unwrap()), formula.as_slice());
        }
    }

    #[test]
    fn antichain_is_not_cocomplete() {
        let two = Arc::new(catalog::two());
        match find_sup(&VCategory::discrete(two, 2)) {
            Err(Error::NotCocomplete { witness }) => assert_eq!(witness, vec![0, 0]),
            other => panic!("{other:?}"),
        }
        // with the empty presheaf skipped the top one fails too
        let two = Arc::new(catalog::two());
        let x = VCategory::discrete(two, 2);
        let p = crate::vcat::presheaf_category(&x).unwrap();
        let q = x.base();
        let top = vec![1, 1];
        let target: Vec<usize> =
            (0..2).map(|y| q.meet_all((0..2).map(|z| q.residual(top[z], x.a(z, y))))).collect();
        assert!((0..2).all(|a| x.hom().row(a) != target.as_slice()));
        assert!(p.index_of(&top).is_some());
    }

    #[test]
    fn non_separated_is_a_precondition_error() {
        let two = Arc::new(catalog::two());
        let x = VCategory::new(crate::vmat::VMatrix::from_rows(two, &[vec![1, 1], vec![1, 1]]).unwrap()).unwrap();
        assert!(matches!(find_sup(&x), Err(Error::Precondition(_))));
    }

    #[test]
    fn cocontinuity() {
        let two = Arc::new(catalog::two());
        let c3 = VCategory::from_order(two.clone(), 3, |a, b| a <= b).unwrap();
        let s3 = find_sup(&c3).unwrap();
        assert!(is_cocontinuous(&s3, &s3, &[0, 1, 2]).unwrap().is_ok());
        // Sup as a map 𝔻(X) → X
        let p = s3.presheaves();
        let sp = find_sup(p.category()).unwrap();
        assert!(is_cocontinuous(&sp, &s3, s3.table()).unwrap().is_ok());
        // 2-chain into 3-chain missing the bottom
        let c2 = VCategory::from_order(two, 2, |a, b| a <= b).unwrap();
        let s2 = find_sup(&c2).unwrap();
        let r = is_cocontinuous(&s2, &s3, &[1, 2]).unwrap();
        let w = r.of_law("preserves-sup").next().unwrap();
        assert_eq!(s2.presheaves().presheaf(w.witness[0]), &[0, 0]);
    }

    #[test]
    fn extension_restricts_back() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let x = VCategory::of_base(c3.clone());
        let sx = find_sup(&x).unwrap();
        let y = VCategory::from_order(c3.clone(), 2, |a, b| a <= b).unwrap();
        let z = VCategory::from_order(c3.clone(), 3, |a, b| a <= b).unwrap();
        for i in enumerate_vfunctors(&y, &z).unwrap() {
            if !is_fully_faithful(&y, &z, &i) {
                continue;
            }
            for f in enumerate_vfunctors(&y, &x).unwrap() {
                let ext = extend_along(&sx, &y, &f, &z, &i).unwrap();
                let restricted: Vec<usize> = i.iter().map(|&b| ext[b]).collect();
                assert_eq!(restricted, f);
            }
        }
    }
}
