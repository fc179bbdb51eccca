//! The componentwise and strength-based definitions of a bimorphism of
//! `P_V`-algebras.

use crate::report::LawReport;
use crate::vmat::same_base;
use crate::{Error, Result};

use super::algebra::PVAlgebra;
use super::monad::{all_weights, dense_to_weighted, pv_map, Weighted};
use super::strength::StrengthData;

fn require_shape(a: &PVAlgebra, b: &PVAlgebra, c: &PVAlgebra, f: &[usize]) -> Result<()> {
    same_base(a.base(), b.base())?;
    same_base(a.base(), c.base())?;
    if f.len() != a.size() * b.size() || f.iter().any(|&z| z >= c.size()) {
        return Err(Error::input("map is not a total function A×B → C"));
    }
    Ok(())
}

/// Each slice `f(x,−)` and `f(−,y)` is an algebra morphism:
/// `γ(P_V(f)(P_V(x×id)(φ))) = f(x,β(φ))` and
/// `γ(P_V(f)(P_V(id×y)(ψ))) = f(α(ψ),y)`.
pub fn check_bimorphism_componentwise(a: &PVAlgebra, b: &PVAlgebra, c: &PVAlgebra, f: &[usize]) -> Result<LawReport> {
    require_shape(a, b, c, f)?;
    let q = a.base().as_ref();
    let at = |x: usize, y: usize| f[x * b.size() + y];
    let mut report = LawReport::new("bimorphism (componentwise)");
    for x in 0..a.size() {
        for (j, phi) in all_weights(q, b.size())?.iter().enumerate() {
            let w: Weighted<(usize, usize)> = pv_map(q, &dense_to_weighted(q, phi), |&y| (x, y));
            if c.alpha_weighted(&pv_map(q, &w, |&(x, y)| at(x, y))) != at(x, b.alpha(phi)) {
                report.violate("left-slice", vec![x, j], format!("f({x},−) is not an algebra morphism"));
            }
        }
    }
    for y in 0..b.size() {
        for (i, psi) in all_weights(q, a.size())?.iter().enumerate() {
            let w: Weighted<(usize, usize)> = pv_map(q, &dense_to_weighted(q, psi), |&x| (x, y));
            if c.alpha_weighted(&pv_map(q, &w, |&(x, y)| at(x, y))) != at(a.alpha(psi), y) {
                report.violate("right-slice", vec![y, i], format!("f(−,{y}) is not an algebra morphism"));
            }
        }
    }
    Ok(report)
}

/// `f∘(id×β) = γ∘T(f)∘st` and `f∘(α×id) = γ∘T(f)∘st'`.
pub fn check_bimorphism_strength(a: &PVAlgebra, b: &PVAlgebra, c: &PVAlgebra, f: &[usize]) -> Result<LawReport> {
    require_shape(a, b, c, f)?;
    let q = a.base().as_ref();
    let s = StrengthData::new(q);
    let at = |x: usize, y: usize| f[x * b.size() + y];
    let mut report = LawReport::new("bimorphism (strength)");
    let pa = all_weights(q, a.size())?;
    let pb = all_weights(q, b.size())?;
    for x in 0..a.size() {
        for (j, phi) in pb.iter().enumerate() {
            let st = s.st(x, &dense_to_weighted(q, phi));
            if c.alpha_weighted(&pv_map(q, &st, |&(x, y)| at(x, y))) != at(x, b.alpha(phi)) {
                report.violate("strength-square", vec![x, j], "γ∘T(f)∘st differs from f∘(id×β)");
            }
        }
    }
    for (i, psi) in pa.iter().enumerate() {
        for y in 0..b.size() {
            let st = s.st_prime(&dense_to_weighted(q, psi), y);
            if c.alpha_weighted(&pv_map(q, &st, |&(x, y)| at(x, y))) != at(a.alpha(psi), y) {
                report.violate("costrength-square", vec![i, y], "γ∘T(f)∘st' differs from f∘(α×id)");
            }
        }
    }
    Ok(report)
}

pub fn is_bimorphism_componentwise(a: &PVAlgebra, b: &PVAlgebra, c: &PVAlgebra, f: &[usize]) -> Result<bool> {
    Ok(check_bimorphism_componentwise(a, b, c, f)?.is_ok())
}

pub fn is_bimorphism_strength(a: &PVAlgebra, b: &PVAlgebra, c: &PVAlgebra, f: &[usize]) -> Result<bool> {
    Ok(check_bimorphism_strength(a, b, c, f)?.is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::enumerate::Tuples;
    use crate::order::catalog;
    use crate::pvalg::{enumerate_algebras, AssocMode};

    #[test]
    fn multiplication_is_a_bimorphism() {
        for (_, v) in catalog::base_catalog() {
            let v = Arc::new(v);
            let a = PVAlgebra::free_on_one(v.clone()).unwrap();
            let f: Vec<usize> = (0..v.size()).flat_map(|x| (0..v.size()).map(move |y| (x, y))).map(|(x, y)| v.tensor(x, y)).collect();
            assert!(is_bimorphism_componentwise(&a, &a, &a, &f).unwrap());
            assert!(is_bimorphism_strength(&a, &a, &a, &f).unwrap());
            // a constant map to a non-bottom element is not
            let top = vec![v.top(); f.len()];
            assert!(!is_bimorphism_componentwise(&a, &a, &a, &top).unwrap());
            assert!(!is_bimorphism_strength(&a, &a, &a, &top).unwrap());
        }
    }

    #[test]
    fn definitions_agree_over_two() {
        let two = Arc::new(catalog::two());
        let algs = enumerate_algebras(&two, 2, AssocMode::Exhaustive).unwrap();
        let mut yes = 0;
        for a in &algs {
            for b in &algs {
                for c in &algs {
                    for f in Tuples::new(4, 2) {
                        let l = is_bimorphism_componentwise(a, b, c, &f).unwrap();
                        assert_eq!(l, is_bimorphism_strength(a, b, c, &f).unwrap());
                        yes += l as usize;
                    }
                }
            }
        }
        assert!(yes > 0);
    }
}
