//! Truncated presheaves on (L,V)-categories, the D_L hom and the (L,V)-Yoneda
//! lemma.

use std::sync::Arc;

use crate::report::LawReport;
use crate::{Error, Result};

use super::{check_bullet, LVRelation, TruncatedLVCategory};

/// `φ: LX ⇸ 1` tabulated on lists of length `≤ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LVPresheafTrunc {
    over: Arc<TruncatedLVCategory>,
    values: LVRelation,
}

impl LVPresheafTrunc {
    /// One value per list of `over.index()`; the presheaf law is checked
    /// separately by [`is_lv_presheaf`].
    pub fn new(over: Arc<TruncatedLVCategory>, values: Vec<usize>) -> Result<Self> {
        let values = LVRelation::new(over.base().clone(), over.index().clone(), 1, values)?;
        Ok(LVPresheafTrunc { over, values })
    }

    pub fn from_fn(over: Arc<TruncatedLVCategory>, f: impl Fn(&[usize]) -> usize) -> Result<Self> {
        let values = over.index().lists().map(|xs| f(&xs)).collect();
        Self::new(over, values)
    }

    pub fn over(&self) -> &Arc<TruncatedLVCategory> {
        &self.over
    }

    pub fn values(&self) -> &[usize] {
        self.values.table()
    }

    pub fn get(&self, xs: &[usize]) -> Option<usize> {
        self.values.get(xs, 0)
    }

    pub fn relation(&self) -> &LVRelation {
        &self.values
    }
}

/// `y(x) = a(−,x)`.
pub fn yoneda_presheaf(c: &Arc<TruncatedLVCategory>, x: usize) -> Result<LVPresheafTrunc> {
    if x >= c.size() {
        return Err(Error::input(format!("object {x} is not in the category")));
    }
    let values = (0..c.index().len()).map(|i| c.hom().at(i, x)).collect();
    LVPresheafTrunc::new(c.clone(), values)
}

/// `φ•a ≤ φ` up to the truncation.
pub fn is_lv_presheaf(phi: &LVPresheafTrunc, n_blocks: usize) -> LawReport {
    let c = phi.over();
    let mut report = LawReport::new(format!("(L,V)-presheaf, lists ≤ {}, ≤ {n_blocks} blocks", c.max_len()));
    check_bullet(phi.relation(), c.hom(), phi.relation(), n_blocks, "presheaf", &mut report);
    report
}

/// Value of the D_L hom together with what the truncation left out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DlHom {
    pub value: usize,
    /// Tuples with every `|x̄ᵢ| ≤ N` but total length `> N`.
    pub skipped: u128,
    /// The infimum ran over a proper subset of the index set, so `value`
    /// is an upper bound of the true hom.
    pub truncated: bool,
}

/// `⋀ [f₁(x̄₁)⊗…⊗fₙ(x̄ₙ), g(x̄₁;…;x̄ₙ)]` over `n`-tuples of lists with total
/// length `≤ N`.
pub fn dl_hom(fs: &[LVPresheafTrunc], g: &LVPresheafTrunc) -> Result<DlHom> {
    let c = g.over();
    if fs.iter().any(|f| f.over() != c) {
        return Err(Error::input("presheaves live over different (L,V)-categories"));
    }
    let q = c.base().clone();
    let n_max = c.max_len();
    let lists = c.index().len() as u128;
    let mut value = q.top();
    let mut included: u128 = 0;
    let mut flat = Vec::new();
    fn go(
        fs: &[LVPresheafTrunc],
        g: &LVPresheafTrunc,
        budget: usize,
        acc: usize,
        flat: &mut Vec<usize>,
        value: &mut usize,
        included: &mut u128,
    ) {
        let q = g.over().base();
        let Some((f, rest)) = fs.split_first() else {
            let gv = g.get(flat).expect("within truncation");
            *value = q.meet(*value, q.residual(acc, gv));
            *included += 1;
            return;
        };
        for i in 0..f.over().index().len() {
            let xs = f.over().index().list(i);
            if xs.len() > budget {
                break;
            }
            let mark = flat.len();
            flat.extend_from_slice(&xs);
            go(rest, g, budget - xs.len(), q.tensor(acc, f.values()[i]), flat, value, included);
            flat.truncate(mark);
        }
    }
    go(fs, g, n_max, q.unit(), &mut flat, &mut value, &mut included);
    let all = (0..fs.len()).try_fold(1u128, |acc, _| acc.checked_mul(lists)).unwrap_or(u128::MAX);
    Ok(DlHom { value, skipped: all.saturating_sub(included), truncated: !fs.is_empty() })
}

/// Family of presheaves: every `y(x)`, every `v⊗y(x)`, pairwise joins of
/// those, and the constants `⊥`, `⊤`; kept only if they pass the
/// truncated presheaf law.
pub fn presheaf_family(c: &Arc<TruncatedLVCategory>, n_blocks: usize) -> Result<Vec<LVPresheafTrunc>> {
    let q = c.base().clone();
    let mut tables: Vec<Vec<usize>> = Vec::new();
    for x in 0..c.size() {
        let y = yoneda_presheaf(c, x)?;
        for v in q.elements() {
            tables.push(y.values().iter().map(|&u| q.tensor(v, u)).collect());
        }
    }
    let base_len = tables.len();
    for i in 0..base_len {
        for j in i + 1..base_len {
            tables.push(tables[i].iter().zip(&tables[j]).map(|(&a, &b)| q.join(a, b)).collect());
        }
    }
    tables.push(vec![q.bottom(); c.index().len()]);
    tables.push(vec![q.top(); c.index().len()]);
    tables.sort();
    tables.dedup();
    let mut family = Vec::new();
    for t in tables {
        let phi = LVPresheafTrunc::new(c.clone(), t)?;
        if is_lv_presheaf(&phi, n_blocks).is_ok() {
            family.push(phi);
        }
    }
    Ok(family)
}

/// `D_L(X)[Ly(x̄), g] = g(x̄)` for every `x̄` of length `≤ N` and every `g`
/// in [`presheaf_family`]. Law `witness-bound` (`≤`, realized by the
/// singleton blocks of `x̄`) holds exactly; law `infimum-bound` (`≥`) is
/// checked over the truncated index set. Witness `[list index, family index]`.
pub fn lv_yoneda_check(c: &Arc<TruncatedLVCategory>, n_blocks: usize) -> Result<LawReport> {
    c.base().require_base()?;
    let q = c.base().clone();
    let family = presheaf_family(c, n_blocks)?;
    let ys: Vec<LVPresheafTrunc> = (0..c.size()).map(|x| yoneda_presheaf(c, x)).collect::<Result<_>>()?;
    let mut report = LawReport::new(format!("(L,V)-Yoneda, lists ≤ {}, {} presheaves", c.max_len(), family.len()));
    let mut skipped = 0u128;
    for (i, xs) in c.index().lists().enumerate() {
        let fs: Vec<LVPresheafTrunc> = xs.iter().map(|&x| ys[x].clone()).collect();
        for (j, g) in family.iter().enumerate() {
            let h = dl_hom(&fs, g)?;
            skipped += h.skipped;
            let gx = g.get(&xs).expect("within truncation");
            if !q.leq(h.value, gx) {
                report.violate("witness-bound", vec![i, j], format!("D_L hom at {xs:?} exceeds g(x̄)"));
            }
            if !q.leq(gx, h.value) {
                report.violate("infimum-bound", vec![i, j], format!("D_L hom at {xs:?} is below g(x̄)"));
            }
        }
    }
    report.note("witness-bound: exact");
    report.note(format!(
        "infimum-bound: verified to truncation only, lists ≤ {}, presheaf law ≤ {n_blocks} blocks, {skipped} index tuples beyond the truncation",
        c.max_len()
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lv::{representable_lv, MonoidalVCat};
    use crate::order::catalog;

    fn base_lv(n: usize) -> Arc<TruncatedLVCategory> {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        Arc::new(representable_lv(&MonoidalVCat::of_base(c3), n).unwrap())
    }

    #[test]
    fn empty_list_of_presheaves() {
        let c = base_lv(2);
        let g = yoneda_presheaf(&c, 1).unwrap();
        let h = dl_hom(&[], &g).unwrap();
        let q = c.base();
        assert_eq!(h.value, q.residual(q.unit(), g.get(&[]).unwrap()));
        assert!(!h.truncated);
        assert_eq!(h.skipped, 0);
    }

    #[test]
    fn yoneda_on_base_and_discrete() {
        let c = base_lv(2);
        let report = lv_yoneda_check(&c, 2).unwrap();
        assert!(report.is_ok(), "{report}");
        let two = Arc::new(catalog::two());
        let d = Arc::new(TruncatedLVCategory::discrete(two, 2, 3).unwrap());
        assert!(lv_yoneda_check(&d, 3).unwrap().is_ok());
    }

    #[test]
    fn yoneda_of_itself_is_above_unit() {
        let c = base_lv(3);
        let q = c.base();
        for x in 0..c.size() {
            let y = yoneda_presheaf(&c, x).unwrap();
            assert!(is_lv_presheaf(&y, 3).is_ok());
            let h = dl_hom(&[y.clone()], &y).unwrap();
            assert!(q.leq(q.unit(), h.value));
        }
    }

    #[test]
    fn two_presheaf_instance_over_two() {
        // discrete category on 2 points over two, N = 2
        let two = Arc::new(catalog::two());
        let d = Arc::new(TruncatedLVCategory::discrete(two, 2, 2).unwrap());
        // f = indicator of {(0)}, g = indicator of {(0,0), (0,1)}
        let f = LVPresheafTrunc::from_fn(d.clone(), |xs| usize::from(xs == [0])).unwrap();
        let f2 = LVPresheafTrunc::from_fn(d.clone(), |xs| usize::from(xs.len() == 1)).unwrap();
        let g = LVPresheafTrunc::from_fn(d.clone(), |xs| usize::from(xs.len() == 2 && xs[0] == 0)).unwrap();
        // every pair (x̄₁,x̄₂) with f(x̄₁)=f2(x̄₂)=1 is ((0),(y)), flattening to (0,y)
        let h = dl_hom(&[f.clone(), f2.clone()], &g).unwrap();
        assert_eq!(h.value, 1);
        // swapping the order puts (y,0), and (1,0) is outside g
        assert_eq!(dl_hom(&[f2, f], &g).unwrap().value, 0);
        // 7 lists of length ≤ 2 give 49 pairs; 17 have total length ≤ 2
        assert_eq!(h.skipped, 49 - 17);
    }
}
