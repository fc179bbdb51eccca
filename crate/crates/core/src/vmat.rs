//! V-valued matrices: the arrows of the quantaloid V-Mat.
//!
//! A matrix `r: X ⇸ Y` stores `r(x,y)` row-major with `x` indexing rows.
//! Composition is "matrix multiplication" with `⋁` as sum and `⊗` as product.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::order::Quantale;
use crate::report::LawReport;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VMatrix {
    base: Arc<Quantale>,
    rows: usize,
    cols: usize,
    entries: Vec<usize>,
}

pub(crate) fn same_base(a: &Arc<Quantale>, b: &Arc<Quantale>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::BaseMismatch(a.name().to_string(), b.name().to_string()))
    }
}

impl VMatrix {
    pub fn new(base: Arc<Quantale>, rows: usize, cols: usize, entries: Vec<usize>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&v| v >= base.size()) {
            return Err(Error::input(format!("entry {bad} is not an element of {}", base.name())));
        }
        Ok(VMatrix { base, rows, cols, entries })
    }

    pub fn from_fn(
        base: Arc<Quantale>,
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let entries = (0..rows)
            .flat_map(|x| (0..cols).map(move |y| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        VMatrix { base, rows, cols, entries }
    }

    pub fn from_rows(base: Arc<Quantale>, rows: &[Vec<usize>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Self::new(base, rows.len(), cols, rows.concat())
    }

    /// The all-`⊥` matrix.
    pub fn bottom(base: Arc<Quantale>, rows: usize, cols: usize) -> Self {
        let b = base.bottom();
        VMatrix { base, rows, cols, entries: vec![b; rows * cols] }
    }

    /// The identity `1_X`: `k` on the diagonal, `⊥` elsewhere.
    pub fn identity(base: Arc<Quantale>, size: usize) -> Self {
        let (k, b) = (base.unit(), base.bottom());
        Self::from_fn(base, size, size, |x, y| if x == y { k } else { b })
    }

    /// The graph of a function `f: X → Y`, as a V-relation.
    pub fn graph_of(base: Arc<Quantale>, f: &[usize], dst: usize) -> Result<Self> {
        if let Some(&bad) = f.iter().find(|&&y| y >= dst) {
            return Err(Error::input(format!("function value {bad} outside 0..{dst}")));
        }
        let (k, b) = (base.unit(), base.bottom());
        Ok(Self::from_fn(base, f.len(), dst, |x, y| if f[x] == y { k } else { b }))
    }

    pub fn base(&self) -> &Arc<Quantale> {
        &self.base
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, x: usize, y: usize) -> usize {
        self.entries[x * self.cols + y]
    }

    pub fn set(&mut self, x: usize, y: usize, v: usize) {
        self.entries[x * self.cols + y] = v;
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.entries[x * self.cols..(x + 1) * self.cols]
    }

    pub fn column(&self, y: usize) -> Vec<usize> {
        (0..self.rows).map(|x| self.get(x, y)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        (0..self.rows).map(|x| self.row(x).to_vec()).collect()
    }

    /// `s∘r` for `self = r: X⇸Y` and `s: Y⇸Z`: `(s∘r)(x,z) = ⋁_y r(x,y)⊗s(y,z)`.
    pub fn then(&self, s: &VMatrix) -> Result<VMatrix> {
        compose(self, s)
    }

    /// The involute `r°: Y⇸X`.
    pub fn involute(&self) -> VMatrix {
        Self::from_fn(self.base.clone(), self.cols, self.rows, |y, x| self.get(x, y))
    }

    /// Entrywise join with a same-shape matrix.
    pub fn join(&self, other: &VMatrix) -> Result<VMatrix> {
        self.same_shape(other)?;
        let q = &self.base;
        Ok(VMatrix {
            base: q.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| q.join(a, b))
                .collect(),
        })
    }

    /// Entrywise join of a family; `bottom` for the empty family.
    pub fn join_family(base: Arc<Quantale>, rows: usize, cols: usize, family: &[VMatrix]) -> Result<VMatrix> {
        family
            .iter()
            .try_fold(VMatrix::bottom(base, rows, cols), |acc, m| acc.join(m))
    }

    fn same_shape(&self, other: &VMatrix) -> Result<()> {
        same_base(&self.base, &other.base)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

/// Composition in V-Mat: `r: X⇸Y`, `s: Y⇸Z` give `s∘r: X⇸Z`.
///
/// An empty middle set yields the all-`⊥` matrix.
pub fn compose(r: &VMatrix, s: &VMatrix) -> Result<VMatrix> {
    same_base(&r.base, &s.base)?;
    if r.cols != s.rows {
        return Err(Error::Dimension(format!(
            "cannot compose {}x{} with {}x{}",
            r.rows, r.cols, s.rows, s.cols
        )));
    }
    let q = &r.base;
    Ok(VMatrix::from_fn(q.clone(), r.rows, s.cols, |x, z| {
        q.join_all((0..r.cols).map(|y| q.tensor(r.get(x, y), s.get(y, z))))
    }))
}

/// Pointwise order `r ≤ r'`.
///
/// Also evaluates the equivalent form `k ≤ ⋀ [r(x,y), r'(x,y)]` and errors
/// if the two disagree.
pub fn leq_matrix(r: &VMatrix, r2: &VMatrix) -> Result<bool> {
    r.same_shape(r2)?;
    let q = &r.base;
    let pointwise = r.entries.iter().zip(&r2.entries).all(|(&a, &b)| q.leq(a, b));
    let via_hom = q.leq(
        q.unit(),
        q.meet_all(r.entries.iter().zip(&r2.entries).map(|(&a, &b)| q.residual(a, b))),
    );
    if pointwise != via_hom {
        return Err(Error::internal("pointwise order and residuated order disagree"));
    }
    Ok(pointwise)
}

/// Quantaloid laws on one configuration `r: W⇸X`, `s, s2: X⇸Y`, `t: Y⇸Z`:
/// `associativity` `t∘(s∘r) = (t∘s)∘r`, `identity` `r∘1 = r = 1∘r`,
/// `distributivity-left` `(s∨s2)∘r = s∘r ∨ s2∘r`, `distributivity-right`
/// `t∘(s∨s2) = t∘s ∨ t∘s2`, `involution` `(s∘r)° = r°∘s°`, `r°° = r` and
/// `1° = 1`. Witnesses are empty: the configuration itself is the witness.
pub fn check_quantaloid(r: &VMatrix, s: &VMatrix, s2: &VMatrix, t: &VMatrix) -> Result<LawReport> {
    let mut report = LawReport::new("quantaloid");
    let (rs, st) = (r.then(s)?, s.then(t)?);
    if rs.then(t)? != r.then(&st)? {
        report.violate("associativity", vec![], "t∘(s∘r) differs from (t∘s)∘r");
    }
    let (idw, idx) = (VMatrix::identity(r.base.clone(), r.rows), VMatrix::identity(r.base.clone(), r.cols));
    if idw.then(r)? != *r || r.then(&idx)? != *r {
        report.violate("identity", vec![], "an identity does not act trivially");
    }
    let joined = s.join(s2)?;
    if r.then(&joined)? != rs.join(&r.then(s2)?)? {
        report.violate("distributivity-left", vec![], "(s∨s2)∘r differs from s∘r ∨ s2∘r");
    }
    if joined.then(t)? != st.join(&s2.then(t)?)? {
        report.violate("distributivity-right", vec![], "t∘(s∨s2) differs from t∘s ∨ t∘s2");
    }
    if rs.involute() != s.involute().then(&r.involute())? || r.involute().involute() != *r || idx.involute() != idx {
        report.violate("involution", vec![], "involution is not an anti-homomorphism");
    }
    Ok(report)
}

/// Canonical JSON form of a matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VMatrixJson {
    pub base: String,
    pub src: usize,
    pub dst: usize,
    pub entries: Vec<Vec<usize>>,
}

impl From<&VMatrix> for VMatrixJson {
    fn from(m: &VMatrix) -> Self {
        VMatrixJson {
            base: m.base.name().to_string(),
            src: m.rows,
            dst: m.cols,
            entries: m.to_rows(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::catalog;

    #[test]
    fn relational_composition_over_two() {
        let two = Arc::new(catalog::two());
        let r = VMatrix::from_rows(two.clone(), &[vec![1, 0], vec![0, 0]]).unwrap();
        let s = VMatrix::from_rows(two.clone(), &[vec![1, 0], vec![0, 0]]).unwrap();
        let c = compose(&r, &s).unwrap();
        assert_eq!(c.to_rows(), vec![vec![1, 0], vec![0, 0]]);
    }

    #[test]
    fn chain_single_path() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let r = VMatrix::from_rows(c3.clone(), &[vec![1]]).unwrap();
        let s = VMatrix::from_rows(c3.clone(), &[vec![2]]).unwrap();
        assert_eq!(compose(&r, &s).unwrap().get(0, 0), 1);
    }

    #[test]
    fn identity_cases() {
        let two = Arc::new(catalog::two());
        assert_eq!(VMatrix::identity(two.clone(), 1).to_rows(), vec![vec![1]]);
        assert_eq!(
            VMatrix::identity(two.clone(), 2).to_rows(),
            vec![vec![1, 0], vec![0, 1]]
        );
        let r = VMatrix::from_rows(two.clone(), &[vec![0, 1, 1], vec![1, 0, 0]]).unwrap();
        assert_eq!(compose(&VMatrix::identity(two.clone(), 2), &r).unwrap(), r);
        assert_eq!(compose(&r, &VMatrix::identity(two, 3)).unwrap(), r);
    }

    #[test]
    fn empty_middle_gives_bottom() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let r = VMatrix::new(c3.clone(), 2, 0, vec![]).unwrap();
        let s = VMatrix::new(c3.clone(), 0, 2, vec![]).unwrap();
        assert_eq!(compose(&r, &s).unwrap(), VMatrix::bottom(c3, 2, 2));
    }

    #[test]
    fn errors() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let two = Arc::new(catalog::two());
        let a = VMatrix::identity(c3.clone(), 2);
        let b = VMatrix::identity(two, 2);
        assert!(matches!(compose(&a, &b), Err(Error::BaseMismatch(..))));
        let c = VMatrix::identity(c3.clone(), 3);
        assert!(matches!(compose(&a, &c), Err(Error::Dimension(_))));
        assert!(matches!(leq_matrix(&a, &c), Err(Error::Dimension(_))));
        assert!(VMatrix::graph_of(c3, &[0, 3], 2).is_err());
    }

    #[test]
    fn order_examples() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let r = VMatrix::from_rows(c3.clone(), &[vec![2, 0]]).unwrap();
        let r2 = VMatrix::from_rows(c3.clone(), &[vec![1, 0]]).unwrap();
        assert!(leq_matrix(&r, &r).unwrap());
        assert!(leq_matrix(&VMatrix::bottom(c3, 1, 2), &r).unwrap());
        assert!(!leq_matrix(&r, &r2).unwrap());
    }

    #[test]
    fn graphs() {
        let two = Arc::new(catalog::two());
        assert_eq!(
            VMatrix::graph_of(two.clone(), &[0, 1], 2).unwrap(),
            VMatrix::identity(two.clone(), 2)
        );
        let constant = VMatrix::graph_of(two.clone(), &[0, 0], 2).unwrap();
        assert_eq!(constant.column(0), vec![1, 1]);
        assert_eq!(constant.column(1), vec![0, 0]);
        // graph_of(g∘f) = graph_of(g)∘graph_of(f) over all functions 2→2→2
        for f in crate::enumerate::Tuples::new(2, 2) {
            for g in crate::enumerate::Tuples::new(2, 2) {
                let gf: Vec<usize> = f.iter().map(|&x| g[x]).collect();
                let lhs = VMatrix::graph_of(two.clone(), &gf, 2).unwrap();
                let rhs = compose(
                    &VMatrix::graph_of(two.clone(), &f, 2).unwrap(),
                    &VMatrix::graph_of(two.clone(), &g, 2).unwrap(),
                )
                .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
