//! Eilenberg–Moore algebras of `P_V` and their equivalence with modules and
//! cocomplete separated V-categories.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::enumerate::{check_guard, power, tuple_at, tuple_index, Tuples};
use crate::order::{FiniteLattice, Quantale};
use crate::report::LawReport;
use crate::vcat::{sup_of_table, SupStructure, VCategory};
use crate::vmod::{module_to_vcat, vcat_to_module, VModule};
use crate::{Error, Result};

use super::monad::{all_weights, dense_to_weighted, pv_map, pv_mult, weight_index, weighted_to_dense, Weighted};

/// Largest `|P_V²X|` for which associativity is checked on every element by
/// default.
pub const EXHAUSTIVE_ASSOCIATIVITY: u128 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssocMode {
    /// Every `Φ ∈ V^(V^X)` when `|V^(V^X)| ≤` [`EXHAUSTIVE_ASSOCIATIVITY`],
    /// else the generating family.
    Auto,
    /// `v`-at-`φ` and `k`-at-`φ ∨ k`-at-`ψ`. The pair law makes `α` turn
    /// binary joins into one fixed operation, so both sides of the law are
    /// determined by these values and the check is exact.
    Generators,
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PVAlgebra {
    base: Arc<Quantale>,
    size: usize,
    alpha: Vec<usize>,
    names: Vec<String>,
}

fn alpha_of(q: &Quantale, alpha: &[usize], phi: &Weighted<usize>, n: usize) -> usize {
    alpha[weight_index(q, &weighted_to_dense(q, phi, n))]
}

/// Checks `α∘u = id` and `α∘P_V(α) = α∘n` on the family chosen by `mode`.
pub fn check_pv_algebra(q: &Quantale, n: usize, alpha: &[usize], mode: AssocMode) -> Result<LawReport> {
    let px = all_weights(q, n)?;
    if alpha.len() != px.len() || alpha.iter().any(|&x| x >= n) {
        return Err(Error::input("alpha table is not a total function V^X → X"));
    }
    let mut report = LawReport::new("P_V-algebra");
    for x in 0..n {
        let mut t = vec![q.bottom(); n];
        t[x] = q.unit();
        if alpha[weight_index(q, &t)] != x {
            report.violate("unit", vec![x], format!("α(k-at-{x}) is not {x}"));
        }
    }
    let pxw: Vec<Weighted<usize>> = px.iter().map(|t| dense_to_weighted(q, t)).collect();
    let assoc = |big: &Weighted<Weighted<usize>>| {
        let lhs = alpha_of(q, alpha, &pv_map(q, big, |p| alpha_of(q, alpha, p, n)), n);
        let rhs = alpha_of(q, alpha, &pv_mult(q, big), n);
        lhs == rhs
    };
    let ppx_size = power(q.size(), px.len());
    let exhaustive = match mode {
        AssocMode::Auto => ppx_size <= EXHAUSTIVE_ASSOCIATIVITY,
        AssocMode::Generators => false,
        AssocMode::Exhaustive => true,
    };
    if exhaustive {
        check_guard("algebra-associativity", ppx_size)?;
        for (j, t) in Tuples::new(px.len(), q.size()).enumerate() {
            let big = Weighted::from_pairs(q, t.iter().enumerate().map(|(i, &v)| (pxw[i].clone(), v)));
            if !assoc(&big) {
                report.violate("associativity", vec![j], "α∘P(α) differs from α∘n");
            }
        }
    } else {
        report.note("associativity checked on v-at-φ and k-at-φ ∨ k-at-ψ, which generate every Φ");
        for (i, phi) in pxw.iter().enumerate() {
            for v in q.elements() {
                if !assoc(&Weighted::from_pairs(q, [(phi.clone(), v)])) {
                    report.violate("associativity", vec![i, v], format!("α∘P(α) differs from α∘n at {v}-at-φ{i}"));
                }
            }
        }
        // On k-at-φ ∨ k-at-ψ the law reads α(φ∨ψ) = α(k-at-α(φ) ∨ k-at-α(ψ)).
        let mut pair = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let mut t = vec![q.bottom(); n];
                t[a] = q.unit();
                t[b] = q.join(t[b], q.unit());
                pair[a * n + b] = alpha[weight_index(q, &t)];
            }
        }
        let joins = ChunkedJoin::new(q, n);
        for i in 0..px.len() {
            for j in i + 1..px.len() {
                if alpha[joins.join(i, j)] != pair[alpha[i] * n + alpha[j]] {
                    report.violate("associativity", vec![i, j], format!("α∘P(α) differs from α∘n at φ{i} ∨ φ{j}"));
                }
            }
        }
    }
    Ok(report)
}

/// Pointwise join of dense weights by index, a few digits at a time.
struct ChunkedJoin {
    radix: usize,
    chunks: usize,
    table: Vec<usize>,
}

impl ChunkedJoin {
    fn new(q: &Quantale, n: usize) -> Self {
        let mut width = 1;
        while width < n && q.size().pow(width as u32 + 1) <= 256 {
            width += 1;
        }
        let radix = q.size().pow(width as u32);
        let mut table = vec![0; radix * radix];
        for a in 0..radix {
            let ta = tuple_at(a, width, q.size());
            for b in 0..radix {
                let tb = tuple_at(b, width, q.size());
                let j: Vec<usize> = ta.iter().zip(&tb).map(|(&x, &y)| q.join(x, y)).collect();
                table[a * radix + b] = tuple_index(&j, q.size());
            }
        }
        ChunkedJoin { radix, chunks: n.div_ceil(width).max(1), table }
    }

    fn join(&self, mut i: usize, mut j: usize) -> usize {
        let (mut out, mut scale) = (0, 1);
        for _ in 0..self.chunks {
            out += self.table[(i % self.radix) * self.radix + j % self.radix] * scale;
            i /= self.radix;
            j /= self.radix;
            scale *= self.radix;
        }
        out
    }
}

impl PVAlgebra {
    pub fn new(base: Arc<Quantale>, size: usize, alpha: Vec<usize>) -> Result<Self> {
        Self::with_mode(base, size, alpha, AssocMode::Auto)
    }

    pub fn with_mode(base: Arc<Quantale>, size: usize, alpha: Vec<usize>, mode: AssocMode) -> Result<Self> {
        let report = check_pv_algebra(&base, size, &alpha, mode)?;
        if !report.is_ok() {
            return Err(Error::Law(report));
        }
        let names = (0..size).map(|i| i.to_string()).collect();
        Ok(PVAlgebra { base, size, alpha, names })
    }

    /// `(V, φ ↦ ⋁_w φ(w)⊗w)`, the free algebra on one point.
    pub fn free_on_one(base: Arc<Quantale>) -> Result<Self> {
        module_to_algebra(&VModule::on_itself(base))
    }

    pub fn named(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.size {
            return Err(Error::Dimension("one name per element required".into()));
        }
        self.names = names;
        Ok(self)
    }

    pub fn base(&self) -> &Arc<Quantale> {
        &self.base
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Indexed by the dense position of `φ` in `V^X`.
    pub fn table(&self) -> &[usize] {
        &self.alpha
    }

    pub fn alpha(&self, phi: &[usize]) -> usize {
        self.alpha[weight_index(&self.base, phi)]
    }

    pub fn alpha_weighted(&self, phi: &Weighted<usize>) -> usize {
        alpha_of(&self.base, &self.alpha, phi, self.size)
    }

    /// `⋁S = α(k-on-S)`.
    pub fn join(&self, xs: &[usize]) -> usize {
        let mut t = vec![self.base.bottom(); self.size];
        for &x in xs {
            t[x] = self.base.unit();
        }
        self.alpha(&t)
    }

    /// `v·x = α(v-at-x)`.
    pub fn act(&self, v: usize, x: usize) -> usize {
        let mut t = vec![self.base.bottom(); self.size];
        t[x] = v;
        self.alpha(&t)
    }

    pub fn to_json(&self) -> AlgebraJson {
        let q = &self.base;
        let alpha = Tuples::new(self.size, q.size())
            .zip(&self.alpha)
            .map(|(t, &x)| AlphaEntry {
                presheaf: t
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| v != q.bottom())
                    .map(|(p, &v)| (self.names[p].clone(), q.element_names()[v].clone()))
                    .collect(),
                value: self.names[x].clone(),
            })
            .collect();
        AlgebraJson { base: q.name().to_string(), carrier: self.names.clone(), alpha }
    }

    pub fn from_json(base: Arc<Quantale>, json: &AlgebraJson) -> Result<Self> {
        if json.base != base.name() {
            return Err(Error::input(format!("algebra over {} given base {}", json.base, base.name())));
        }
        let n = json.carrier.len();
        let point = |s: &str| {
            json.carrier.iter().position(|c| c == s).ok_or_else(|| Error::input(format!("unknown carrier element {s}")))
        };
        let size = power(base.size(), n);
        check_guard("algebra-table", size)?;
        let mut alpha = vec![None; size as usize];
        for e in &json.alpha {
            let mut t = vec![base.bottom(); n];
            for (p, v) in &e.presheaf {
                t[point(p)?] = base.element_by_name(v).ok_or_else(|| Error::input(format!("unknown value {v}")))?;
            }
            alpha[weight_index(&base, &t)] = Some(point(&e.value)?);
        }
        let alpha = alpha.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| Error::input("alpha table is not total"))?;
        PVAlgebra::new(base, n, alpha)?.named(json.carrier.clone())
    }
}

/// Canonical JSON form: `alpha` lists `(presheaf, value)` pairs in index
/// order, each presheaf sparse over the carrier names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub base: String,
    pub carrier: Vec<String>,
    pub alpha: Vec<AlphaEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaEntry {
    pub presheaf: Vec<(String, String)>,
    pub value: String,
}

/// `α(ψ) = Sup(ψ∘a)`.
pub fn algebra_from_cocomplete(s: &SupStructure) -> Result<PVAlgebra> {
    let x = s.category();
    let q = x.base();
    let alpha = all_weights(q, x.size())?.iter().map(|psi| sup_of_table(s, psi)).collect::<Result<Vec<_>>>()?;
    PVAlgebra::new(q.clone(), x.size(), alpha)
        .map_err(|e| Error::internal(format!("Sup does not give an algebra: {e}")))?
        .named(x.names().to_vec())
}

/// `x ≤ y ⇔ α(k-on-{x,y}) = y`, `ρ(v,x) = α(v-at-x)`.
pub fn algebra_to_module(a: &PVAlgebra) -> Result<VModule> {
    let carrier = FiniteLattice::from_fn(a.size(), |x, y| a.join(&[x, y]) == y)
        .map_err(|e| Error::internal(format!("algebra order is not a lattice: {e}")))?;
    for x in 0..a.size() {
        for y in 0..a.size() {
            if a.join(&[x, y]) != carrier.join(x, y) {
                return Err(Error::internal(format!("α(k-on-{{{x},{y}}}) is not the join in the induced order")));
            }
        }
    }
    VModule::from_fn(a.base().clone(), carrier, |v, x| a.act(v, x))?.named(a.names().to_vec())
}

/// `α(φ) = ⋁_x ρ(φ(x),x)`.
pub fn module_to_algebra(m: &VModule) -> Result<PVAlgebra> {
    let q = m.base();
    let l = m.carrier();
    let alpha = all_weights(q, m.size())?
        .iter()
        .map(|phi| l.join_all(phi.iter().enumerate().map(|(x, &v)| m.act(v, x))))
        .collect();
    PVAlgebra::new(q.clone(), m.size(), alpha)
        .map_err(|e| Error::internal(format!("module does not give an algebra: {e}")))?
        .named(m.names().to_vec())
}

pub fn algebra_to_vcat(a: &PVAlgebra) -> Result<VCategory> {
    module_to_vcat(&algebra_to_module(a)?)
}

pub fn vcat_to_algebra(x: &VCategory) -> Result<PVAlgebra> {
    module_to_algebra(&vcat_to_module(x)?)
}

/// Every `α: V^X → X` passing the algebra laws, with associativity in
/// `mode`.
pub fn enumerate_algebras(q: &Arc<Quantale>, n: usize, mode: AssocMode) -> Result<Vec<PVAlgebra>> {
    let len = power(q.size(), n);
    check_guard("algebra-carrier", len)?;
    check_guard("algebra-enumeration", power(n, len as usize))?;
    let mut out = Vec::new();
    for alpha in Tuples::new(len as usize, n) {
        if check_pv_algebra(q, n, &alpha, mode)?.is_ok() {
            out.push(PVAlgebra { base: q.clone(), size: n, alpha, names: (0..n).map(|i| i.to_string()).collect() });
        }
    }
    Ok(out)
}

/// `f: A → B` with `f(α(φ)) = β(P_V(f)(φ))` for every `φ`.
pub fn check_algebra_map(a: &PVAlgebra, b: &PVAlgebra, f: &[usize]) -> Result<LawReport> {
    crate::vmat::same_base(a.base(), b.base())?;
    if f.len() != a.size() || f.iter().any(|&y| y >= b.size()) {
        return Err(Error::input("map is not a total function A → B"));
    }
    let q = a.base();
    let mut report = LawReport::new("P_V-algebra morphism");
    for (i, phi) in all_weights(q, a.size())?.iter().enumerate() {
        let image = super::monad::pv_apply(q, f, b.size(), phi);
        if f[a.alpha(phi)] != b.alpha(&image) {
            report.violate("homomorphism", vec![i], format!("f∘α differs from β∘P(f) at φ{i}"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::catalog;
    use crate::vcat::{enumerate_vcategories, find_sup};

    #[test]
    fn free_on_one_is_weighted_join() {
        for (_, v) in catalog::base_catalog() {
            let v = Arc::new(v);
            let a = PVAlgebra::free_on_one(v.clone()).unwrap();
            for phi in all_weights(&v, v.size()).unwrap() {
                let expect = v.join_all(phi.iter().enumerate().map(|(w, &c)| v.tensor(c, w)));
                assert_eq!(a.alpha(&phi), expect);
            }
        }
    }

    #[test]
    fn chain_over_two_is_union_of_downsets() {
        let two = Arc::new(catalog::two());
        let x = VCategory::from_order(two, 2, |a, b| a <= b).unwrap();
        let a = algebra_from_cocomplete(&find_sup(&x).unwrap()).unwrap();
        // the join of a subset of {0 ≤ 1} is its maximum, 0 when empty
        assert_eq!(a.table(), &[0, 1, 0, 1]);
    }

    #[test]
    fn cocomplete_roundtrips_on_catalog() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let mut seen = 0;
        for n in 1..=3 {
            for x in enumerate_vcategories(&c3, n).unwrap() {
                let Ok(s) = find_sup(&x) else { continue };
                seen += 1;
                let a = algebra_from_cocomplete(&s).unwrap();
                assert_eq!(algebra_to_vcat(&a).unwrap().hom(), x.hom());
                assert_eq!(vcat_to_algebra(&x).unwrap(), a);
            }
        }
        assert!(seen > 3);
    }

    #[test]
    fn enumerated_algebras_are_modules() {
        let two = Arc::new(catalog::two());
        let algs = enumerate_algebras(&two, 2, AssocMode::Exhaustive).unwrap();
        // the two orientations of the 2-chain
        assert_eq!(algs.len(), 2);
        for a in algs {
            let m = algebra_to_module(&a).unwrap();
            assert_eq!(module_to_algebra(&m).unwrap(), a);
        }
    }

    #[test]
    fn json_roundtrip() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let a = PVAlgebra::free_on_one(c3.clone()).unwrap();
        let j = a.to_json();
        let s = serde_json::to_string(&j).unwrap();
        let back: AlgebraJson = serde_json::from_str(&s).unwrap();
        assert_eq!(PVAlgebra::from_json(c3, &back).unwrap(), a);
    }
}
