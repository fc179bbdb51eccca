use crate::report::LawReport;
use crate::vmat::{compose, leq_matrix, VMatrix};
use crate::{Error, Result};

use super::{check_vfunctor, PresheafCategory, VCategory};

/// Checks `j: X⇸Y` against `j∘a ≤ j`, `b∘j ≤ j` and the identity law
/// `b∘j = j∘a = j` (composition in diagrammatic order: `a` acts first on the
/// `X` side, `b` last on the `Y` side).
pub fn check_distributor(x: &VCategory, y: &VCategory, j: &VMatrix) -> Result<LawReport> {
    x.same_base(y)?;
    if j.rows() != x.size() || j.cols() != y.size() {
        return Err(Error::Dimension(format!(
            "distributor is {}x{}, categories have {} and {} objects",
            j.rows(),
            j.cols(),
            x.size(),
            y.size()
        )));
    }
    let q = x.base();
    let left = compose(x.hom(), j)?;
    let right = compose(j, y.hom())?;
    let mut report = LawReport::new("distributor");
    for a in 0..x.size() {
        for b in 0..y.size() {
            if !q.leq(left.get(a, b), j.get(a, b)) {
                report.violate("left-action", vec![a, b], format!("(j∘a)({a},{b}) is not below j({a},{b})"));
            }
            if !q.leq(right.get(a, b), j.get(a, b)) {
                report.violate("right-action", vec![a, b], format!("(b∘j)({a},{b}) is not below j({a},{b})"));
            }
            if left.get(a, b) != j.get(a, b) || right.get(a, b) != j.get(a, b) {
                report.violate("identity", vec![a, b], format!("structure does not act as identity at ({a},{b})"));
            }
        }
    }
    Ok(report)
}

/// `f_*: X⇸Y` and `f^*: Y⇸X` of a V-functor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distributors {
    /// `f_*(x,y) = b(f x, y)`.
    pub lower: VMatrix,
    /// `f^*(y,x) = b(y, f x)`.
    pub upper: VMatrix,
}

/// Builds `f_*` and `f^*` and confirms both are distributors with
/// `f_* ⊣ f^*`, i.e. `a ≤ f^*∘f_*` and `f_*∘f^* ≤ b`.
pub fn functor_to_distributors(x: &VCategory, y: &VCategory, f: &[usize]) -> Result<Distributors> {
    let report = check_vfunctor(x, y, f)?;
    if !report.is_ok() {
        return Err(Error::Law(report));
    }
    let q = x.base().clone();
    let lower = VMatrix::from_fn(q.clone(), x.size(), y.size(), |a, b| y.a(f[a], b));
    let upper = VMatrix::from_fn(q, y.size(), x.size(), |b, a| y.a(b, f[a]));
    for (name, r) in [
        ("f_*", check_distributor(x, y, &lower)?),
        ("f^*", check_distributor(y, x, &upper)?),
    ] {
        if !r.is_ok() {
            return Err(Error::internal(format!("{name} is not a distributor: {r}")));
        }
    }
    if !leq_matrix(x.hom(), &compose(&lower, &upper)?)? || !leq_matrix(&compose(&upper, &lower)?, y.hom())? {
        return Err(Error::internal("f_* ⊣ f^* fails"));
    }
    Ok(Distributors { lower, upper })
}

/// The mate `Y → 𝔻(X)`, `y ↦ j(−,y)`, as indices into `presheaves`.
pub fn mate(presheaves: &PresheafCategory, y: &VCategory, j: &VMatrix) -> Result<Vec<usize>> {
    let x = presheaves.over();
    let report = check_distributor(x, y, j)?;
    if !report.is_ok() {
        return Err(Error::Law(report));
    }
    let map = (0..y.size())
        .map(|b| {
            presheaves
                .index_of(&j.column(b))
                .ok_or_else(|| Error::internal(format!("column {b} of a distributor is not a presheaf")))
        })
        .collect::<Result<Vec<_>>>()?;
    let r = check_vfunctor(y, presheaves.category(), &map)?;
    if !r.is_ok() {
        return Err(Error::internal(format!("mate is not a V-functor: {r}")));
    }
    Ok(map)
}

/// Inverse of [`mate`]: `j(x,y) = F(y)(x)`.
pub fn mate_inverse(presheaves: &PresheafCategory, y: &VCategory, map: &[usize]) -> Result<VMatrix> {
    let report = check_vfunctor(y, presheaves.category(), map)?;
    if !report.is_ok() {
        return Err(Error::Law(report));
    }
    let x = presheaves.over();
    Ok(VMatrix::from_fn(x.base().clone(), x.size(), y.size(), |a, b| presheaves.presheaf(map[b])[a]))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::enumerate::Tuples;
    use crate::order::catalog;
    use crate::vcat::{enumerate_vfunctors, presheaf_category};

    #[test]
    fn identity_functor_gives_structure() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let x = VCategory::new(VMatrix::from_rows(c3, &[vec![2, 1], vec![0, 2]]).unwrap()).unwrap();
        let d = functor_to_distributors(&x, &x, &[0, 1]).unwrap();
        assert_eq!(&d.lower, x.hom());
        assert_eq!(&d.upper, x.hom());
    }

    #[test]
    fn chain_functor_tables() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let x = VCategory::from_order(c3.clone(), 2, |a, b| a <= b).unwrap();
        let y = VCategory::new(
            VMatrix::from_rows(c3, &[vec![2, 2, 2], vec![1, 2, 2], vec![1, 1, 2]]).unwrap(),
        )
        .unwrap();
        let d = functor_to_distributors(&x, &y, &[0, 2]).unwrap();
        assert_eq!(d.lower.to_rows(), vec![vec![2, 2, 2], vec![1, 1, 2]]);
        assert_eq!(d.upper.to_rows(), vec![vec![2, 2], vec![1, 2], vec![1, 2]]);
    }

    #[test]
    fn yoneda_is_the_mate_of_the_structure() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let x = VCategory::new(VMatrix::from_rows(c3, &[vec![2, 1], vec![0, 2]]).unwrap()).unwrap();
        let p = presheaf_category(&x).unwrap();
        assert_eq!(mate(&p, &x, x.hom()).unwrap(), p.yoneda());
    }

    #[test]
    fn mate_of_lower_star_is_yoneda_after_f() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let x = VCategory::from_order(c3.clone(), 2, |a, b| a <= b).unwrap();
        let y = VCategory::from_order(c3.clone(), 3, |a, b| a <= b).unwrap();
        let p = presheaf_category(&y).unwrap();
        for f in enumerate_vfunctors(&x, &y).unwrap() {
            let d = functor_to_distributors(&x, &y, &f).unwrap();
            // f^*: Y⇸X has columns b(−, f x) = y(f x)
            let m = mate(&p, &x, &d.upper).unwrap();
            let expected: Vec<usize> = f.iter().map(|&b| p.yoneda()[b]).collect();
            assert_eq!(m, expected);
        }
    }

    #[test]
    fn mates_round_trip_on_all_distributors() {
        let two = Arc::new(catalog::two());
        let x = VCategory::from_order(two.clone(), 2, |a, b| a <= b).unwrap();
        let y = VCategory::discrete(two.clone(), 2);
        let p = presheaf_category(&x).unwrap();
        let mut count = 0;
        for cells in Tuples::new(4, 2) {
            let j = VMatrix::new(two.clone(), 2, 2, cells).unwrap();
            if !check_distributor(&x, &y, &j).unwrap().is_ok() {
                continue;
            }
            count += 1;
            let m = mate(&p, &y, &j).unwrap();
            assert_eq!(mate_inverse(&p, &y, &m).unwrap(), j);
        }
        // distributors X⇸Y correspond to functors Y → 𝔻(X)
        assert_eq!(count, enumerate_vfunctors(&y, p.category()).unwrap().len());
    }

    #[test]
    fn lower_star_adjoint_is_unique() {
        let two = Arc::new(catalog::two());
        let x = VCategory::from_order(two.clone(), 2, |a, b| a <= b).unwrap();
        for f in enumerate_vfunctors(&x, &x).unwrap() {
            let d = functor_to_distributors(&x, &x, &f).unwrap();
            let adjoints: Vec<VMatrix> = Tuples::new(4, 2)
                .map(|c| VMatrix::new(two.clone(), 2, 2, c).unwrap())
                .filter(|g| check_distributor(&x, &x, g).unwrap().is_ok())
                .filter(|g| {
                    leq_matrix(x.hom(), &compose(&d.lower, g).unwrap()).unwrap()
                        && leq_matrix(&compose(g, &d.lower).unwrap(), x.hom()).unwrap()
                })
                .collect();
            assert_eq!(adjoints, vec![d.upper.clone()]);
        }
    }
}
