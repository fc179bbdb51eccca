//! V-categories and V-functors.
//!
//! A V-category on `0..n` is a V-matrix `a: X⇸X` with `Id ≤ a` and
//! `a∘a ≤ a`. Its underlying order is `x ≤ y ⇔ k ≤ a(x,y)`.

mod cocomplete;
mod distributor;
mod presheaf;

use std::sync::Arc;

pub use cocomplete::{extend_along, find_sup, is_cocontinuous, sup_of_table, SupStructure};
pub use distributor::{
    check_distributor, functor_to_distributors, mate, mate_inverse, Distributors,
};
pub use presheaf::{
    check_yoneda, hom_category, is_presheaf, presheaf_category, presheafify, HomCategory,
    PresheafCategory,
};

use crate::enumerate::{check_guard, power, Tuples};
use crate::order::Quantale;
use crate::report::LawReport;
use crate::vmat::{compose, same_base, VMatrix};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VCategory {
    hom: VMatrix,
    names: Vec<String>,
}

/// Checks `k ≤ a(x,x)` and `a(x,y)⊗a(y,z) ≤ a(x,z)`.
pub fn check_vcategory(hom: &VMatrix) -> Result<LawReport> {
    if hom.rows() != hom.cols() {
        return Err(Error::Dimension(format!(
            "hom must be square, got {}x{}",
            hom.rows(),
            hom.cols()
        )));
    }
    let q = hom.base();
    let n = hom.rows();
    let mut report = LawReport::new("V-category");
    for x in 0..n {
        if !q.leq(q.unit(), hom.get(x, x)) {
            report.violate("reflexivity", vec![x], format!("k is not below a({x},{x})"));
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !q.leq(q.tensor(hom.get(x, y), hom.get(y, z)), hom.get(x, z)) {
                    report.violate(
                        "transitivity",
                        vec![x, y, z],
                        format!("a({x},{y}) ⊗ a({y},{z}) is not below a({x},{z})"),
                    );
                }
            }
        }
    }
    Ok(report)
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl VCategory {
    pub fn new(hom: VMatrix) -> Result<Self> {
        let n = hom.rows();
        Self::with_names(hom, numbered(n))
    }

    pub fn with_names(hom: VMatrix, names: Vec<String>) -> Result<Self> {
        hom.base().require_base()?;
        let report = check_vcategory(&hom)?;
        if !report.is_ok() {
            return Err(Error::Law(report));
        }
        if names.len() != hom.rows() {
            return Err(Error::Dimension("one name per object required".into()));
        }
        Ok(VCategory { hom, names })
    }

    /// For structures known to satisfy the axioms by construction.
    pub(crate) fn trusted(hom: VMatrix) -> Self {
        debug_assert!(check_vcategory(&hom).map(|r| r.is_ok()).unwrap_or(false));
        let n = hom.rows();
        VCategory { hom, names: numbered(n) }
    }

    /// The discrete structure: `k` on the diagonal, `⊥` elsewhere.
    pub fn discrete(base: Arc<Quantale>, n: usize) -> Self {
        Self::trusted(VMatrix::identity(base, n))
    }

    /// The unit category `K = (1, k)`.
    pub fn unit(base: Arc<Quantale>) -> Self {
        Self::discrete(base, 1)
    }

    /// `(V, [−,=])`.
    pub fn of_base(base: Arc<Quantale>) -> Self {
        let n = base.size();
        let q = base.clone();
        let mut c = Self::trusted(VMatrix::from_fn(base, n, n, |v, u| q.residual(v, u)));
        c.names = q.element_names().to_vec();
        c
    }

    /// Any partial order as a V-category: `k` where `x ≤ y`, `⊥` elsewhere.
    pub fn from_order(base: Arc<Quantale>, n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let (k, b) = (base.unit(), base.bottom());
        Self::new(VMatrix::from_fn(base, n, n, |x, y| if leq(x, y) { k } else { b }))
    }

    pub fn base(&self) -> &Arc<Quantale> {
        self.hom.base()
    }

    pub fn size(&self) -> usize {
        self.hom.rows()
    }

    pub fn hom(&self) -> &VMatrix {
        &self.hom
    }

    pub fn a(&self, x: usize, y: usize) -> usize {
        self.hom.get(x, y)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn named(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.size() {
            return Err(Error::Dimension("one name per object required".into()));
        }
        self.names = names;
        Ok(self)
    }

    /// Underlying order `x ≤ y ⇔ k ≤ a(x,y)`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        let q = self.base();
        q.leq(q.unit(), self.a(x, y))
    }

    /// Antisymmetry of the underlying order.
    ///
    /// A pair `x ≠ y` with `x ≤ y ≤ x` gives two points `K → X` that are
    /// isomorphic but distinct, so this decides separatedness.
    pub fn is_separated(&self) -> bool {
        self.separation_witness().is_none()
    }

    pub fn separation_witness(&self) -> Option<(usize, usize)> {
        let n = self.size();
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .find(|&(x, y)| self.leq(x, y) && self.leq(y, x))
    }

    pub fn opposite(&self) -> VCategory {
        VCategory { hom: self.hom.involute(), names: self.names.clone() }
    }

    pub fn same_base(&self, other: &VCategory) -> Result<()> {
        same_base(self.base(), other.base())
    }
}

/// `X⊠Y`: carrier `X×Y` (index `x·|Y| + y`), hom `a(x,x')⊗b(y,y')`.
pub fn tensor_cat(x: &VCategory, y: &VCategory) -> Result<VCategory> {
    x.same_base(y)?;
    let q = x.base().clone();
    let m = y.size();
    let hom = VMatrix::from_fn(q.clone(), x.size() * m, x.size() * m, |p, r| {
        q.tensor(x.a(p / m, r / m), y.a(p % m, r % m))
    });
    let names = x
        .names()
        .iter()
        .flat_map(|a| y.names().iter().map(move |b| format!("({a},{b})")))
        .collect();
    Ok(VCategory { hom, names })
}

/// Smallest V-category structure above `r`: iterate `a := Id ∨ r ∨ a∘a`.
pub fn free_vcategory(r: &VMatrix) -> Result<VCategory> {
    if r.rows() != r.cols() {
        return Err(Error::Dimension("free_vcategory needs a square matrix".into()));
    }
    r.base().require_base()?;
    let mut a = VMatrix::identity(r.base().clone(), r.rows()).join(r)?;
    loop {
        let next = a.join(&compose(&a, &a)?)?;
        if next == a {
            return Ok(VCategory::trusted(a));
        }
        a = next;
    }
}

/// The V-functor law `a(x,y) ≤ b(f x, f y)`, witnessed by `(x,y)`.
pub fn check_vfunctor(source: &VCategory, target: &VCategory, map: &[usize]) -> Result<LawReport> {
    source.same_base(target)?;
    if map.len() != source.size() || map.iter().any(|&y| y >= target.size()) {
        return Err(Error::input("functor map is not a total function between the carriers"));
    }
    let q = source.base();
    let mut report = LawReport::new("V-functor");
    for x in 0..source.size() {
        for y in 0..source.size() {
            if !q.leq(source.a(x, y), target.a(map[x], map[y])) {
                report.violate(
                    "functoriality",
                    vec![x, y],
                    format!("a({x},{y}) is not below b(f{x},f{y})"),
                );
            }
        }
    }
    Ok(report)
}

/// Equality `a(x,y) = b(f x, f y)` everywhere.
pub fn is_fully_faithful(source: &VCategory, target: &VCategory, map: &[usize]) -> bool {
    (0..source.size()).all(|x| (0..source.size()).all(|y| source.a(x, y) == target.a(map[x], map[y])))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VFunctor {
    pub source: VCategory,
    pub target: VCategory,
    pub map: Vec<usize>,
}

impl VFunctor {
    pub fn new(source: VCategory, target: VCategory, map: Vec<usize>) -> Result<Self> {
        let report = check_vfunctor(&source, &target, &map)?;
        if !report.is_ok() {
            return Err(Error::Law(report));
        }
        Ok(VFunctor { source, target, map })
    }

    pub fn is_fully_faithful(&self) -> bool {
        is_fully_faithful(&self.source, &self.target, &self.map)
    }
}

/// All V-functors `X → Y`, lexicographic by value table.
pub fn enumerate_vfunctors(source: &VCategory, target: &VCategory) -> Result<Vec<Vec<usize>>> {
    source.same_base(target)?;
    check_guard("functor-space", power(target.size(), source.size()))?;
    let q = source.base();
    Ok(Tuples::new(source.size(), target.size())
        .filter(|f| {
            (0..source.size())
                .all(|x| (0..source.size()).all(|y| q.leq(source.a(x, y), target.a(f[x], f[y]))))
        })
        .collect())
}

/// All V-category structures on `n` objects, lexicographic by hom table.
pub fn enumerate_vcategories(base: &Arc<Quantale>, n: usize) -> Result<Vec<VCategory>> {
    base.require_base()?;
    let q = base.as_ref();
    let above_k: Vec<usize> = q.elements().filter(|&v| q.leq(q.unit(), v)).collect();
    let off = n * n - n;
    check_guard(
        "vcategory-enumeration",
        power(above_k.len(), n).saturating_mul(power(q.size(), off)),
    )?;
    let mut out = Vec::new();
    for diag in Tuples::new(n, above_k.len()) {
        for rest in Tuples::new(off, q.size()) {
            let mut it = rest.iter();
            let mut entries = Vec::with_capacity(n * n);
            for x in 0..n {
                for y in 0..n {
                    entries.push(if x == y { above_k[diag[x]] } else { *it.next().expect("off-diagonal cell") });
                }
            }
            let m = VMatrix::new(base.clone(), n, n, entries)?;
            if check_vcategory(&m)?.is_ok() {
                out.push(VCategory::trusted(m));
            }
        }
    }
    out.sort_by(|a, b| a.hom().entries().cmp(b.hom().entries()));
    Ok(out)
}
