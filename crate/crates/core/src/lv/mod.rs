//! (L,V)-categories over the list monad, checked up to a truncation of list
//! length `N` and block count `N_blocks`.

mod category;
mod compare;
mod presheaf;
mod station;

use std::sync::Arc;

pub use category::{
    check_lv_category, check_lv_distributor, check_lv_functor, is_lv_fully_faithful, lower_distributor, representable_lv,
    MonoidalVCat, Provenance, TruncatedLVCategory,
};
pub use compare::{compare_pl_pvl, CompareConfig};
pub use presheaf::{dl_hom, is_lv_presheaf, lv_yoneda_check, presheaf_family, yoneda_presheaf, DlHom, LVPresheafTrunc};
pub use station::{injective_station, lv_to_acted};

use crate::enumerate::{check_guard, power, tuple_at, tuple_index};
use crate::order::Quantale;
use crate::report::LawReport;
use crate::vmat::VMatrix;
use crate::{Error, Result};

/// Dense numbering of the lists over `points` of length at most `max_len`,
/// shorter lists first, then lexicographic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListIndex {
    points: usize,
    max_len: usize,
    offsets: Vec<usize>,
}

impl ListIndex {
    pub fn new(points: usize, max_len: usize) -> Result<Self> {
        let mut offsets = vec![0];
        let mut total: u128 = 0;
        for l in 0..=max_len {
            total += power(points, l);
            check_guard("list-index", total)?;
            offsets.push(total as usize);
        }
        Ok(ListIndex { points, max_len, offsets })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn len(&self) -> usize {
        self.offsets[self.max_len + 1]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, xs: &[usize]) -> Option<usize> {
        if xs.len() > self.max_len || xs.iter().any(|&x| x >= self.points) {
            return None;
        }
        Some(self.offsets[xs.len()] + tuple_index(xs, self.points.max(1)))
    }

    pub fn list(&self, i: usize) -> Vec<usize> {
        let l = self.offsets.partition_point(|&o| o <= i) - 1;
        tuple_at(i - self.offsets[l], l, self.points.max(1))
    }

    pub fn lists(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.len()).map(|i| self.list(i))
    }
}

pub fn list_unit(x: usize) -> Vec<usize> {
    vec![x]
}

/// `m_X`: concatenation.
pub fn list_mult<T: Clone>(xss: &[Vec<T>]) -> Vec<T> {
    xss.iter().flatten().cloned().collect()
}

/// Cut positions `0 = b₀ ≤ b₁ ≤ … ≤ b_n = len` of every split of a list of
/// length `len` into `n` consecutive, possibly empty, blocks.
pub fn for_each_split(len: usize, n: usize, mut f: impl FnMut(&[usize])) {
    fn go(cuts: &mut Vec<usize>, len: usize, n: usize, f: &mut dyn FnMut(&[usize])) {
        if cuts.len() == n {
            cuts.push(len);
            f(cuts);
            cuts.pop();
            return;
        }
        let last = *cuts.last().expect("starts at 0");
        for c in last..=len {
            cuts.push(c);
            go(cuts, len, n, f);
            cuts.pop();
        }
    }
    if n == 0 {
        if len == 0 {
            f(&[0]);
        }
        return;
    }
    let mut cuts = vec![0];
    go(&mut cuts, len, n, &mut f);
}

/// Unit laws `m∘e_L = m∘Le = id` on every list of length `≤ max_len`, and
/// associativity `m∘m_L = m∘Lm` on every three-level list whose levels all
/// have length `≤ min(max_len, 2)`.
pub fn check_list_monad(points: usize, max_len: usize) -> Result<LawReport> {
    let idx = ListIndex::new(points, max_len)?;
    let mut report = LawReport::new(format!("list monad on {points} points, lists ≤ {max_len}"));
    for (i, xs) in idx.lists().enumerate() {
        if list_mult(&[xs.clone()]) != xs {
            report.violate("left-unit", vec![i], "m(e_L(x̄)) differs from x̄");
        }
        let singletons: Vec<Vec<usize>> = xs.iter().map(|&x| list_unit(x)).collect();
        if list_mult(&singletons) != xs {
            report.violate("right-unit", vec![i], "m(Le(x̄)) differs from x̄");
        }
    }
    let small = max_len.min(2);
    let inner = ListIndex::new(points, small)?;
    let middle = ListIndex::new(inner.len(), small)?;
    let outer = ListIndex::new(middle.len(), small)?;
    for (i, xsss) in outer.lists().enumerate() {
        let level3: Vec<Vec<Vec<usize>>> =
            xsss.iter().map(|&m| middle.list(m).iter().map(|&l| inner.list(l)).collect()).collect();
        let flat_outer: Vec<Vec<usize>> = list_mult(&level3);
        let flat_inner: Vec<Vec<usize>> = level3.iter().map(|xss| list_mult(xss)).collect();
        if list_mult(&flat_outer) != list_mult(&flat_inner) {
            report.violate("associativity", vec![i], "m∘m_L differs from m∘Lm");
        }
    }
    report.note(format!("truncated: lists of length ≤ {max_len}, nested levels ≤ {small}"));
    Ok(report)
}

/// `Lr(x̄,ȳ) = r(x₁,y₁)⊗…⊗r(xₙ,yₙ)` for equal lengths, `⊥` otherwise.
pub fn lv_extension(r: &VMatrix, xs: &[usize], ys: &[usize]) -> usize {
    let q = r.base();
    if xs.len() != ys.len() {
        return q.bottom();
    }
    q.tensor_all(xs.iter().zip(ys).map(|(&x, &y)| r.get(x, y)))
}

/// A truncated (L,V)-relation `LX ⇸ Y`, tabulated on lists of length
/// `≤ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LVRelation {
    base: Arc<Quantale>,
    index: ListIndex,
    dst: usize,
    table: Vec<usize>,
}

impl LVRelation {
    pub fn new(base: Arc<Quantale>, index: ListIndex, dst: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != index.len() * dst || table.iter().any(|&v| v >= base.size()) {
            return Err(Error::Dimension(format!(
                "(L,V)-relation needs {} entries in V, got {}",
                index.len() * dst,
                table.len()
            )));
        }
        Ok(LVRelation { base, index, dst, table })
    }

    pub fn from_fn(base: Arc<Quantale>, src: usize, dst: usize, max_len: usize, f: impl Fn(&[usize], usize) -> usize) -> Result<Self> {
        let index = ListIndex::new(src, max_len)?;
        check_guard("lv-relation", index.len() as u128 * dst as u128)?;
        let mut table = Vec::with_capacity(index.len() * dst);
        for xs in index.lists() {
            for y in 0..dst {
                table.push(f(&xs, y));
            }
        }
        LVRelation::new(base, index, dst, table)
    }

    pub fn base(&self) -> &Arc<Quantale> {
        &self.base
    }

    pub fn index(&self) -> &ListIndex {
        &self.index
    }

    pub fn src(&self) -> usize {
        self.index.points()
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    pub fn max_len(&self) -> usize {
        self.index.max_len()
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// `None` beyond the truncation.
    pub fn get(&self, xs: &[usize], y: usize) -> Option<usize> {
        self.index.index(xs).map(|i| self.table[i * self.dst + y])
    }

    pub fn at(&self, i: usize, y: usize) -> usize {
        self.table[i * self.dst + y]
    }

    pub(crate) fn set(&mut self, i: usize, y: usize, v: usize) {
        self.table[i * self.dst + y] = v;
    }
}

/// Checks `s•r ≤ t`, i.e. for every `x̄` with `|x̄| ≤ N`, every split of
/// `x̄` into `n ≤ n_blocks` blocks `z̄ᵢ`, every `w̄ ∈ Yⁿ` and every `z`:
/// `r(z̄₁,w₁)⊗…⊗r(z̄ₙ,wₙ)⊗s(w̄,z) ≤ t(x̄,z)`. Witness:
/// `[index of x̄, cuts…, w̄…, z]`.
pub(crate) fn check_bullet(s: &LVRelation, r: &LVRelation, t: &LVRelation, n_blocks: usize, law: &str, report: &mut LawReport) {
    let q = s.base().clone();
    let max_n = n_blocks.min(s.max_len());
    for i in 0..t.index().len() {
        let xs = t.index().list(i);
        if xs.len() > r.max_len() {
            continue;
        }
        for n in 0..=max_n {
            for_each_split(xs.len(), n, |cuts| {
                let mut ws = Vec::with_capacity(n);
                bullet_blocks(&q, s, r, t, &xs, cuts, i, &mut ws, q.unit(), law, report);
            });
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn bullet_blocks(
    q: &Quantale,
    s: &LVRelation,
    r: &LVRelation,
    t: &LVRelation,
    xs: &[usize],
    cuts: &[usize],
    i: usize,
    ws: &mut Vec<usize>,
    acc: usize,
    law: &str,
    report: &mut LawReport,
) {
    if acc == q.bottom() {
        return;
    }
    let n = cuts.len() - 1;
    if ws.len() == n {
        let si = s.index().index(ws).expect("block count within truncation");
        for z in 0..t.dst() {
            let lhs = q.tensor(acc, s.at(si, z));
            if !q.leq(lhs, t.at(i, z)) {
                let mut witness = vec![i];
                witness.extend_from_slice(&cuts[1..n]);
                witness.extend_from_slice(ws);
                witness.push(z);
                report.violate(law, witness, format!("composite exceeds the target at list {xs:?}, blocks {cuts:?}, w̄ = {ws:?}, z = {z}"));
            }
        }
        return;
    }
    let k = ws.len();
    let bi = r.index().index(&xs[cuts[k]..cuts[k + 1]]).expect("block within truncation");
    for w in 0..r.dst() {
        let v = r.at(bi, w);
        ws.push(w);
        bullet_blocks(q, s, r, t, xs, cuts, i, ws, q.tensor(acc, v), law, report);
        ws.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::catalog;

    #[test]
    fn index_roundtrip() {
        let idx = ListIndex::new(2, 3).unwrap();
        assert_eq!(idx.len(), 15);
        for i in 0..idx.len() {
            assert_eq!(idx.index(&idx.list(i)), Some(i));
        }
        assert_eq!(idx.list(0), Vec::<usize>::new());
        assert_eq!(idx.index(&[1, 0, 1, 1]), None);
        let empty = ListIndex::new(0, 2).unwrap();
        assert_eq!(empty.len(), 1);
    }

    #[test]
    fn list_monad_examples() {
        assert_eq!(list_mult::<usize>(&[vec![]]), Vec::<usize>::new());
        assert_eq!(list_mult(&[vec![0], vec![1, 2]]), vec![0, 1, 2]);
        assert!(check_list_monad(2, 3).unwrap().is_ok());
    }

    #[test]
    fn splits() {
        let mut n = 0;
        for_each_split(3, 3, |c| {
            assert_eq!(c.len(), 4);
            n += 1
        });
        assert_eq!(n, 10);
        let mut n = 0;
        for_each_split(0, 0, |_| n += 1);
        for_each_split(2, 0, |_| n += 1);
        assert_eq!(n, 1);
    }

    #[test]
    fn extension() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let r = VMatrix::from_rows(c3.clone(), &[vec![2, 1], vec![0, 2]]).unwrap();
        assert_eq!(lv_extension(&r, &[], &[]), c3.unit());
        assert_eq!(lv_extension(&r, &[0], &[1, 0]), c3.bottom());
        assert_eq!(lv_extension(&r, &[0], &[1]), 1);
        assert_eq!(lv_extension(&r, &[0, 1], &[0, 1]), 2);
        // preserves the involution
        let ri = r.involute();
        assert_eq!(lv_extension(&r, &[0, 1], &[1, 1]), lv_extension(&ri, &[1, 1], &[0, 1]));
    }

    #[test]
    fn extension_respects_composition() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let idx = ListIndex::new(2, 3).unwrap();
        for rt in crate::enumerate::Tuples::new(4, 3).step_by(7) {
            for st in crate::enumerate::Tuples::new(4, 3).step_by(5) {
                let r = VMatrix::from_fn(c3.clone(), 2, 2, |x, y| rt[x * 2 + y]);
                let s = VMatrix::from_fn(c3.clone(), 2, 2, |x, y| st[x * 2 + y]);
                let sr = crate::vmat::compose(&r, &s).unwrap();
                for xs in idx.lists() {
                    for zs in idx.lists().filter(|zs| zs.len() == xs.len()) {
                        let direct = lv_extension(&sr, &xs, &zs);
                        let via = c3.join_all(idx.lists().filter(|ys| ys.len() == xs.len()).map(|ys| {
                            c3.tensor(lv_extension(&r, &xs, &ys), lv_extension(&s, &ys, &zs))
                        }));
                        assert_eq!(direct, via);
                    }
                }
            }
        }
    }
}
