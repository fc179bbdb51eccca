//! Truncated (L,V)-categories, representables and (L,V)-functors.

use std::sync::Arc;

use crate::order::Quantale;
use crate::report::LawReport;
use crate::vcat::VCategory;
use crate::vmat::same_base;
use crate::{Error, Result};

use super::{check_bullet, LVRelation, ListIndex};

/// A V-category with an associative unital `∗` that is a V-functor
/// `X⊠X → X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidalVCat {
    vcat: VCategory,
    star: Vec<usize>,
    unit_obj: usize,
}

impl MonoidalVCat {
    pub fn new(vcat: VCategory, star: Vec<usize>, unit_obj: usize) -> Result<Self> {
        let report = MonoidalVCat::check(&vcat, &star, unit_obj)?;
        if !report.is_ok() {
            return Err(Error::Law(report));
        }
        Ok(MonoidalVCat { vcat, star, unit_obj })
    }

    /// Associativity `[x,y,z]`, unit `[x]` and
    /// `a(x,x')⊗a(y,y') ≤ a(x∗y, x'∗y')` `[x,x',y,y']`.
    pub fn check(vcat: &VCategory, star: &[usize], unit_obj: usize) -> Result<LawReport> {
        let n = vcat.size();
        if star.len() != n * n || star.iter().any(|&z| z >= n) || unit_obj >= n {
            return Err(Error::input("∗ must be a total table X×X → X with a unit object in X"));
        }
        let q = vcat.base();
        let s = |x: usize, y: usize| star[x * n + y];
        let mut report = LawReport::new("monoidal V-category");
        for x in 0..n {
            if s(unit_obj, x) != x || s(x, unit_obj) != x {
                report.violate("unit", vec![x], format!("{unit_obj} is not a unit object at {x}"));
            }
            for y in 0..n {
                for z in 0..n {
                    if s(s(x, y), z) != s(x, s(y, z)) {
                        report.violate("associativity", vec![x, y, z], "∗ is not associative");
                    }
                }
                for x2 in 0..n {
                    for y2 in 0..n {
                        if !q.leq(q.tensor(vcat.a(x, x2), vcat.a(y, y2)), vcat.a(s(x, y), s(x2, y2))) {
                            report.violate("functoriality", vec![x, x2, y, y2], "∗ is not a V-functor X⊠X → X");
                        }
                    }
                }
            }
        }
        Ok(report)
    }

    /// `(V, [−,=], ⊗, k)`.
    pub fn of_base(base: Arc<Quantale>) -> Self {
        let vcat = VCategory::of_base(base.clone());
        let star = base.elements().flat_map(|a| base.elements().map(move |b| (a, b))).map(|(a, b)| base.tensor(a, b)).collect();
        MonoidalVCat::new(vcat, star, base.unit()).expect("V is a monoidal V-category")
    }

    pub fn vcat(&self) -> &VCategory {
        &self.vcat
    }

    pub fn star(&self, x: usize, y: usize) -> usize {
        self.star[x * self.vcat.size() + y]
    }

    pub fn star_table(&self) -> &[usize] {
        &self.star
    }

    pub fn unit_obj(&self) -> usize {
        self.unit_obj
    }

    /// `x₁∗…∗xₙ`, `u_X` on the empty list.
    pub fn fold(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.unit_obj, |acc, &x| self.star(acc, x))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Explicit,
    Representable(MonoidalVCat),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedLVCategory {
    hom: LVRelation,
    provenance: Provenance,
    names: Vec<String>,
}

impl TruncatedLVCategory {
    /// Explicit tables; laws are not checked here (see
    /// [`check_lv_category`]).
    pub fn explicit(hom: LVRelation) -> Result<Self> {
        if hom.src() != hom.dst() {
            return Err(Error::Dimension("an (L,V)-category needs a relation LX ⇸ X".into()));
        }
        let names = (0..hom.dst()).map(|i| i.to_string()).collect();
        Ok(TruncatedLVCategory { hom, provenance: Provenance::Explicit, names })
    }

    /// `(X, e°_X)`: `a(x̄,y) = k` iff `x̄ = (y)`.
    pub fn discrete(base: Arc<Quantale>, n: usize, max_len: usize) -> Result<Self> {
        let (k, b) = (base.unit(), base.bottom());
        let hom = LVRelation::from_fn(base, n, n, max_len, |xs, y| if xs == [y] { k } else { b })?;
        Self::explicit(hom)
    }

    pub fn named(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.size() {
            return Err(Error::Dimension("one name per object required".into()));
        }
        self.names = names;
        Ok(self)
    }

    pub fn base(&self) -> &Arc<Quantale> {
        self.hom.base()
    }

    pub fn size(&self) -> usize {
        self.hom.dst()
    }

    pub fn max_len(&self) -> usize {
        self.hom.max_len()
    }

    pub fn index(&self) -> &ListIndex {
        self.hom.index()
    }

    pub fn hom(&self) -> &LVRelation {
        &self.hom
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn a(&self, xs: &[usize], y: usize) -> Option<usize> {
        self.hom.get(xs, y)
    }

    /// Overwrites one entry; the result is explicit.
    pub fn with_entry(mut self, xs: &[usize], y: usize, v: usize) -> Result<Self> {
        let i = self.index().index(xs).ok_or_else(|| Error::input(format!("list {xs:?} is beyond the truncation")))?;
        self.hom.set(i, y, v);
        self.provenance = Provenance::Explicit;
        Ok(self)
    }
}

/// `â(x̄,y) = a(x₁∗…∗xₙ, y)`, `â((),y) = a(u_X,y)`.
pub fn representable_lv(m: &MonoidalVCat, max_len: usize) -> Result<TruncatedLVCategory> {
    let x = m.vcat();
    let hom = LVRelation::from_fn(x.base().clone(), x.size(), x.size(), max_len, |xs, y| x.a(m.fold(xs), y))?;
    Ok(TruncatedLVCategory { hom, provenance: Provenance::Representable(m.clone()), names: x.names().to_vec() })
}

/// `k ≤ a((x),x)` and `a•a ≤ a` up to lists of length `N` and `n_blocks`
/// blocks.
pub fn check_lv_category(c: &TruncatedLVCategory, n_blocks: usize) -> Result<LawReport> {
    if c.max_len() == 0 || n_blocks == 0 {
        return Err(Error::input("truncation bounds N and N_blocks must be at least 1"));
    }
    let q = c.base();
    let mut report = LawReport::new(format!("(L,V)-category, N = {}, N_blocks = {n_blocks}", c.max_len()));
    for x in 0..c.size() {
        let v = c.a(&[x], x).expect("singletons are within the truncation");
        if !q.leq(q.unit(), v) {
            report.violate("unit", vec![x], format!("a(({x}),{x}) is not above k"));
        }
    }
    check_bullet(c.hom(), c.hom(), c.hom(), n_blocks, "composition", &mut report);
    match c.provenance() {
        Provenance::Explicit => report.note(format!(
            "verified to truncation only: lists of length ≤ {}, splits into ≤ {n_blocks} blocks",
            c.max_len()
        )),
        Provenance::Representable(_) => report.note(format!(
            "representable: axioms hold by construction; spot-verified to lists ≤ {}, ≤ {n_blocks} blocks",
            c.max_len()
        )),
    }
    Ok(report)
}

/// `a(x̄,y) ≤ b(Lf(x̄), f(y))` for lists within both truncations.
pub fn check_lv_functor(f: &[usize], c: &TruncatedLVCategory, d: &TruncatedLVCategory) -> Result<LawReport> {
    same_base(c.base(), d.base())?;
    if f.len() != c.size() || f.iter().any(|&y| y >= d.size()) {
        return Err(Error::input("map is not a total function X → Y"));
    }
    let q = c.base();
    let n = c.max_len().min(d.max_len());
    let mut report = LawReport::new(format!("(L,V)-functor, lists ≤ {n}"));
    let mut faithful = true;
    for (i, xs) in c.index().lists().enumerate().filter(|(_, xs)| xs.len() <= n) {
        let fx: Vec<usize> = xs.iter().map(|&x| f[x]).collect();
        for y in 0..c.size() {
            let (lhs, rhs) = (c.hom().at(i, y), d.a(&fx, f[y]).expect("within truncation"));
            if !q.leq(lhs, rhs) {
                report.violate("functoriality", vec![i, y], format!("a({xs:?},{y}) is not below b(Lf,f({y}))"));
            }
            faithful &= lhs == rhs;
        }
    }
    if faithful {
        report.note("fully faithful");
    }
    Ok(report)
}

pub fn is_lv_fully_faithful(f: &[usize], c: &TruncatedLVCategory, d: &TruncatedLVCategory) -> Result<bool> {
    let r = check_lv_functor(f, c, d)?;
    Ok(r.is_ok() && r.notes.iter().any(|n| n == "fully faithful"))
}

/// `f_⊛(x̄,y) = b(Lf(x̄), y)`.
pub fn lower_distributor(f: &[usize], c: &TruncatedLVCategory, d: &TruncatedLVCategory) -> Result<LVRelation> {
    let n = c.max_len().min(d.max_len());
    LVRelation::from_fn(c.base().clone(), c.size(), d.size(), n, |xs, y| {
        let fx: Vec<usize> = xs.iter().map(|&x| f[x]).collect();
        d.a(&fx, y).expect("within truncation")
    })
}

/// `j•a ≤ j` and `b•j ≤ j` for `j: X ⇸ Y`.
pub fn check_lv_distributor(j: &LVRelation, c: &TruncatedLVCategory, d: &TruncatedLVCategory, n_blocks: usize) -> Result<LawReport> {
    same_base(c.base(), d.base())?;
    if j.src() != c.size() || j.dst() != d.size() {
        return Err(Error::Dimension("distributor shape does not match the categories".into()));
    }
    let mut report = LawReport::new(format!("(L,V)-distributor, lists ≤ {}, ≤ {n_blocks} blocks", j.max_len()));
    check_bullet(j, c.hom(), j, n_blocks, "right-action", &mut report);
    check_bullet(d.hom(), j, j, n_blocks, "left-action", &mut report);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::catalog;

    #[test]
    fn discrete_and_base_pass() {
        for (_, v) in catalog::base_catalog().into_iter().take(4) {
            let v = Arc::new(v);
            for n in 1..=3 {
                let d = TruncatedLVCategory::discrete(v.clone(), 2, n).unwrap();
                assert!(check_lv_category(&d, n).unwrap().is_ok());
            }
            let r = representable_lv(&MonoidalVCat::of_base(v.clone()), 2).unwrap();
            let report = check_lv_category(&r, 2).unwrap();
            assert!(report.is_ok(), "{report}");
            // [v̄, w] = [v₁⊗…⊗vₙ, w]
            for xs in r.index().lists() {
                for w in v.elements() {
                    assert_eq!(r.a(&xs, w).unwrap(), v.residual(v.tensor_all(xs.iter().copied()), w));
                }
            }
        }
    }

    #[test]
    fn corrupted_representable_fails() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let r = representable_lv(&MonoidalVCat::of_base(c3.clone()), 2).unwrap();
        let bad = r.with_entry(&[1, 1], 0, 2).unwrap();
        let report = check_lv_category(&bad, 2).unwrap();
        assert!(report.has_law("composition"));
        assert!(matches!(bad.provenance(), Provenance::Explicit));
    }

    #[test]
    fn noncommutative_representable() {
        let two = Arc::new(catalog::two());
        let endo = catalog::endo_quantale_chain3();
        let x = VCategory::from_order(two, endo.size(), |a, b| endo.leq(a, b)).unwrap();
        let star = endo.elements().flat_map(|a| endo.elements().map(move |b| (a, b))).map(|(a, b)| endo.tensor(a, b)).collect();
        let m = MonoidalVCat::new(x, star, endo.unit()).unwrap();
        let r = representable_lv(&m, 3).unwrap();
        assert!(check_lv_category(&r, 3).unwrap().is_ok());
        let (a, b) = (endo.element_by_name("f002").unwrap(), endo.element_by_name("f011").unwrap());
        assert_ne!(m.fold(&[a, b]), m.fold(&[b, a]));
    }

    #[test]
    fn functors_and_distributors() {
        let l3 = Arc::new(catalog::lukasiewicz(3).unwrap());
        let r = representable_lv(&MonoidalVCat::of_base(l3.clone()), 2).unwrap();
        let id: Vec<usize> = (0..3).collect();
        assert!(is_lv_fully_faithful(&id, &r, &r).unwrap());
        let report = check_lv_functor(&[0, 0, 0], &r, &r).unwrap();
        assert!(report.has_law("functoriality"));
        let j = lower_distributor(&id, &r, &r).unwrap();
        assert!(check_lv_distributor(&j, &r, &r, 2).unwrap().is_ok());
        // fold: representable → underlying V-category viewed discretely on lists
        let d = TruncatedLVCategory::discrete(l3.clone(), 3, 2).unwrap();
        assert!(check_lv_functor(&id, &d, &r).unwrap().is_ok());
    }
}
