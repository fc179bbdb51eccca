//! `X⊗₂Y` as the lattice of bi-closed subsets of `X×Y`.
//!
//! A subset `C` is bi-closed when `A×B ⊆ C ⇔ (⋁A,⋁B) ∈ C` for all
//! `A ⊆ X`, `B ⊆ Y`. Subsets are bitmasks over cells `x·|Y| + y`.

use std::collections::{BTreeSet, HashMap};

use crate::enumerate::{check_guard, guard_limit};
use crate::order::FiniteLattice;
use crate::report::LawReport;
use crate::{Error, Result};

use super::SupLattice;

/// Grids up to this many cells are enumerated exhaustively.
pub const FULL_ENUMERATION_CELLS: usize = 16;

#[derive(Clone, Debug)]
pub struct TensorSup {
    left: SupLattice,
    right: SupLattice,
    carrier: Vec<u64>,
    lattice: FiniteLattice,
    pi: Vec<usize>,
}

struct Grid<'a> {
    x: &'a SupLattice,
    y: &'a SupLattice,
}

impl Grid<'_> {
    fn cell(&self, a: usize, b: usize) -> u64 {
        1 << (a * self.y.size() + b)
    }

    fn has(&self, c: u64, a: usize, b: usize) -> bool {
        c & self.cell(a, b) != 0
    }

    fn cells(&self) -> usize {
        self.x.size() * self.y.size()
    }

    fn bottom_cross(&self) -> u64 {
        let mut c = 0;
        for b in self.y.elements() {
            c |= self.cell(self.x.bottom(), b);
        }
        for a in self.x.elements() {
            c |= self.cell(a, self.y.bottom());
        }
        c
    }

    fn down_closure(&self, c: u64) -> u64 {
        let mut out = c;
        for a in self.x.elements() {
            for b in self.y.elements() {
                if self.has(c, a, b) {
                    for a2 in self.x.elements().filter(|&a2| self.x.leq(a2, a)) {
                        for b2 in self.y.elements().filter(|&b2| self.y.leq(b2, b)) {
                            out |= self.cell(a2, b2);
                        }
                    }
                }
            }
        }
        out
    }

    /// Adds `(a, b∨b')` and `(a∨a', b)` for members in a common row or column.
    fn join_step(&self, c: u64) -> u64 {
        let mut out = c;
        for a in self.x.elements() {
            for b in self.y.elements() {
                if !self.has(c, a, b) {
                    continue;
                }
                for b2 in self.y.elements().filter(|&b2| self.has(c, a, b2)) {
                    out |= self.cell(a, self.y.join(b, b2));
                }
                for a2 in self.x.elements().filter(|&a2| self.has(c, a2, b)) {
                    out |= self.cell(self.x.join(a, a2), b);
                }
            }
        }
        out
    }

    /// Least bi-closed subset containing `c`.
    fn closure(&self, c: u64) -> u64 {
        let mut cur = self.down_closure(c | self.bottom_cross());
        loop {
            let next = self.down_closure(self.join_step(cur));
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Down-closed, contains the bottom cross, closed under row and column
    /// joins. Equivalent to bi-closure: nonempty `A`, `B` reduce to binary
    /// joins; an empty side gives the bottom cross.
    fn is_biclosed(&self, c: u64) -> bool {
        c & self.bottom_cross() == self.bottom_cross() && self.down_closure(c) == c && self.join_step(c) == c
    }

    /// The definition read literally, over all `A ⊆ X`, `B ⊆ Y`.
    fn is_biclosed_literal(&self, c: u64) -> bool {
        let (n, m) = (self.x.size(), self.y.size());
        for amask in 0u64..(1 << n) {
            let a_set: Vec<usize> = (0..n).filter(|&i| amask >> i & 1 == 1).collect();
            let ja = self.x.join_all(a_set.iter().copied());
            for bmask in 0u64..(1 << m) {
                let b_set: Vec<usize> = (0..m).filter(|&j| bmask >> j & 1 == 1).collect();
                let jb = self.y.join_all(b_set.iter().copied());
                let inside = a_set.iter().all(|&a| b_set.iter().all(|&b| self.has(c, a, b)));
                if inside != self.has(c, ja, jb) {
                    return false;
                }
            }
        }
        true
    }
}

/// Builds `X⊗₂Y` and `π(x,y)`, the least bi-closed set containing `(x,y)`.
///
/// Up to [`FULL_ENUMERATION_CELLS`] cells every subset is tested. Beyond
/// that the carrier is generated as all joins of `π`-images; this is the
/// whole tensor because every bi-closed `C` is the join of `π(x,y)` over
/// its own cells.
pub fn tensor_sup(x: &SupLattice, y: &SupLattice) -> Result<TensorSup> {
    let grid = Grid { x, y };
    let cells = grid.cells();
    if cells > 64 {
        return Err(Error::Resource { guard: "tensor-cells", needed: cells as u128, limit: 64 });
    }
    let mut carrier: Vec<u64> = if cells <= FULL_ENUMERATION_CELLS {
        (0u64..(1 << cells)).filter(|&c| grid.is_biclosed(c)).collect()
    } else {
        let gens: Vec<u64> = x
            .elements()
            .flat_map(|a| y.elements().map(move |b| (a, b)))
            .map(|(a, b)| grid.closure(grid.cell(a, b)))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        let mut frontier = vec![grid.bottom_cross()];
        seen.insert(grid.bottom_cross());
        while let Some(c) = frontier.pop() {
            for &g in &gens {
                let d = grid.closure(c | g);
                if seen.insert(d) {
                    if seen.len() as u128 > guard_limit() {
                        return Err(Error::Resource {
                            guard: "tensor-carrier",
                            needed: seen.len() as u128,
                            limit: guard_limit(),
                        });
                    }
                    frontier.push(d);
                }
            }
        }
        seen.into_iter().collect()
    };
    carrier.sort_by_key(|&c| (c.count_ones(), c));
    check_guard("tensor-order", (carrier.len() as u128).pow(2))?;
    let lattice = FiniteLattice::from_fn(carrier.len(), |i, j| carrier[i] & !carrier[j] == 0)?;
    let index: HashMap<u64, usize> = carrier.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let pi = x
        .elements()
        .flat_map(|a| y.elements().map(move |b| (a, b)))
        .map(|(a, b)| {
            index
                .get(&grid.closure(grid.cell(a, b)))
                .copied()
                .ok_or_else(|| Error::internal("π(x,y) missing from the tensor carrier"))
        })
        .collect::<Result<Vec<_>>>()?;
    let t = TensorSup { left: x.clone(), right: y.clone(), carrier, lattice, pi };
    for (i, &c) in t.carrier.iter().enumerate() {
        if t.lattice.join_all(t.cells_of(c).map(|(a, b)| t.pi(a, b))) != i {
            return Err(Error::internal("π does not join-generate the tensor"));
        }
    }
    Ok(t)
}

impl TensorSup {
    pub fn left(&self) -> &SupLattice {
        &self.left
    }

    pub fn right(&self) -> &SupLattice {
        &self.right
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    /// The bi-closed subset for a carrier index, as a cell bitmask.
    pub fn subset(&self, i: usize) -> u64 {
        self.carrier[i]
    }

    pub fn pi(&self, a: usize, b: usize) -> usize {
        self.pi[a * self.right.size() + b]
    }

    pub fn pi_table(&self) -> &[usize] {
        &self.pi
    }

    pub fn cells_of(&self, c: u64) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.right.size();
        (0..self.left.size() * m).filter(move |&k| c >> k & 1 == 1).map(move |k| (k / m, k % m))
    }

    /// Cells of the carrier element `i`.
    pub fn members(&self, i: usize) -> Vec<(usize, usize)> {
        self.cells_of(self.carrier[i]).collect()
    }

    pub fn is_biclosed(&self, c: u64) -> bool {
        Grid { x: &self.left, y: &self.right }.is_biclosed(c)
    }

    pub fn is_biclosed_literal(&self, c: u64) -> bool {
        Grid { x: &self.left, y: &self.right }.is_biclosed_literal(c)
    }
}

/// Checks that every slice `f(x,−)` and `f(−,y)` of `f: X×Y → Z` is a
/// sup-map. Witnesses: `(0, x, ...)` for row slices, `(1, y, ...)` for
/// column slices, followed by the failing pair (empty pair for bottom).
pub fn check_bimorphism(x: &SupLattice, y: &SupLattice, z: &SupLattice, f: &[usize]) -> Result<LawReport> {
    if f.len() != x.size() * y.size() || f.iter().any(|&v| v >= z.size()) {
        return Err(Error::input("bimorphism table is not a total function X×Y → Z"));
    }
    let m = y.size();
    let mut report = LawReport::new("bimorphism");
    for a in x.elements() {
        if f[a * m + y.bottom()] != z.bottom() {
            report.violate("row-bottom", vec![0, a], format!("f({a},⊥) is not ⊥"));
        }
        for b in y.elements() {
            for b2 in b + 1..m {
                if f[a * m + y.join(b, b2)] != z.join(f[a * m + b], f[a * m + b2]) {
                    report.violate("row-join", vec![0, a, b, b2], format!("f({a},−) fails at {b} ∨ {b2}"));
                }
            }
        }
    }
    for b in y.elements() {
        if f[x.bottom() * m + b] != z.bottom() {
            report.violate("column-bottom", vec![1, b], format!("f(⊥,{b}) is not ⊥"));
        }
        for a in x.elements() {
            for a2 in a + 1..x.size() {
                if f[x.join(a, a2) * m + b] != z.join(f[a * m + b], f[a2 * m + b]) {
                    report.violate("column-join", vec![1, b, a, a2], format!("f(−,{b}) fails at {a} ∨ {a2}"));
                }
            }
        }
    }
    Ok(report)
}

/// The unique sup-map `f̄: X⊗₂Y → Z` with `f̄∘π = f`:
/// `f̄(C) = ⋁_{(x,y)∈C} f(x,y)`.
pub fn classify_bimorphism(t: &TensorSup, z: &SupLattice, f: &[usize]) -> Result<Vec<usize>> {
    let report = check_bimorphism(&t.left, &t.right, z, f)?;
    if !report.is_ok() {
        return Err(Error::precondition(format!("not a bimorphism: {report}")));
    }
    let m = t.right.size();
    let fbar: Vec<usize> = t
        .carrier
        .iter()
        .map(|&c| z.join_all(t.cells_of(c).map(|(a, b)| f[a * m + b])))
        .collect();
    if !super::is_supmap(&t.lattice, z, &fbar) {
        return Err(Error::internal("classifier is not a sup-map"));
    }
    for a in t.left.elements() {
        for b in t.right.elements() {
            if fbar[t.pi(a, b)] != f[a * m + b] {
                return Err(Error::internal(format!("classifier disagrees with f at ({a},{b})")));
            }
        }
    }
    Ok(fbar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::Tuples;
    use crate::suplat::{enumerate_supmaps, is_supmap};

    #[test]
    fn efficient_and_literal_biclosure_agree() {
        let c3 = FiniteLattice::chain(3);
        let sq = FiniteLattice::powerset(2);
        for (x, y) in [(&c3, &c3), (&sq, &c3), (&sq, &sq)] {
            let g = Grid { x, y };
            let cells = g.cells();
            let step = if cells > 12 { 7 } else { 1 };
            for c in (0u64..(1 << cells)).step_by(step) {
                assert_eq!(g.is_biclosed(c), g.is_biclosed_literal(c), "{c:b}");
            }
        }
    }

    #[test]
    fn unit_law() {
        let two = FiniteLattice::chain(2);
        for x in [FiniteLattice::chain(3), FiniteLattice::powerset(2), FiniteLattice::chain(1)] {
            let t = tensor_sup(&two, &x).unwrap();
            assert!(t.lattice().find_isomorphism(&x).is_some());
            // the iso is x ↦ π(1,x)
            let iso: Vec<usize> = x.elements().map(|b| t.pi(1, b)).collect();
            assert!(x.is_isomorphism(t.lattice(), &iso));
        }
    }

    #[test]
    fn chain3_squared_has_six_elements() {
        let c3 = FiniteLattice::chain(3);
        let t = tensor_sup(&c3, &c3).unwrap();
        // oracle: brute force over all 2^9 subsets with the literal definition
        let g = Grid { x: &c3, y: &c3 };
        let count = (0u64..512).filter(|&c| g.is_biclosed_literal(c)).count();
        assert_eq!(t.size(), count);
        assert_eq!(t.size(), 6);
    }

    #[test]
    fn generator_mode_matches_enumeration() {
        let c3 = FiniteLattice::chain(3);
        let c5 = FiniteLattice::chain(5);
        let sq = FiniteLattice::powerset(2);
        let full = tensor_sup(&c3, &c5).unwrap();
        let g = Grid { x: &c3, y: &c5 };
        let brute = (0u64..(1 << 15)).filter(|&c| g.is_biclosed(c)).count();
        assert_eq!(full.size(), brute);
        // 4×5 = 20 cells: generator mode
        let big = tensor_sup(&sq, &c5).unwrap();
        let g = Grid { x: &sq, y: &c5 };
        let brute = (0u64..(1 << 20)).filter(|&c| g.is_biclosed(c)).count();
        assert_eq!(big.size(), brute);
    }

    #[test]
    fn powersets_tensor_to_powerset_of_product() {
        let p = FiniteLattice::powerset(2);
        let t = tensor_sup(&p, &p).unwrap();
        let target = FiniteLattice::powerset(4);
        // (A,B) ↦ A×B with cell (i,j) at bit 2i+j
        let f: Vec<usize> = (0..16)
            .map(|k| {
                let (a, b) = (k / 4, k % 4);
                let mut out = 0;
                for i in 0..2 {
                    for j in 0..2 {
                        if a >> i & 1 == 1 && b >> j & 1 == 1 {
                            out |= 1 << (2 * i + j);
                        }
                    }
                }
                out
            })
            .collect();
        let fbar = classify_bimorphism(&t, &target, &f).unwrap();
        assert!(t.lattice().is_isomorphism(&target, &fbar));
    }

    #[test]
    fn classify_examples() {
        let sq = FiniteLattice::powerset(2);
        let t = tensor_sup(&sq, &sq).unwrap();
        let pi = t.pi_table().to_vec();
        let id = classify_bimorphism(&t, t.lattice(), &pi).unwrap();
        assert_eq!(id, (0..t.size()).collect::<Vec<_>>());
        let meet: Vec<usize> = (0..16).map(|k| sq.meet(k / 4, k % 4)).collect();
        let m = classify_bimorphism(&t, &sq, &meet).unwrap();
        assert!(is_supmap(t.lattice(), &sq, &m));
        let not_bim: Vec<usize> = (0..16).map(|k| sq.join(k / 4, k % 4)).collect();
        assert!(matches!(classify_bimorphism(&t, &sq, &not_bim), Err(Error::Precondition(_))));
    }

    #[test]
    fn two_multiplication_classifier() {
        let two = crate::order::catalog::two();
        let l = two.lattice();
        let t = tensor_sup(l, l).unwrap();
        let f: Vec<usize> = (0..4).map(|k| two.tensor(k / 2, k % 2)).collect();
        let fbar = classify_bimorphism(&t, l, &f).unwrap();
        assert_eq!(t.size(), 2);
        assert_eq!(fbar, vec![0, 1]);
    }

    #[test]
    fn bimorphisms_correspond_to_supmaps() {
        let c3 = FiniteLattice::chain(3);
        let sq = FiniteLattice::powerset(2);
        let t = tensor_sup(&c3, &sq).unwrap();
        let bims: Vec<Vec<usize>> = Tuples::new(12, 3)
            .filter(|f| check_bimorphism(&c3, &sq, &c3, f).unwrap().is_ok())
            .collect();
        let maps = enumerate_supmaps(t.lattice(), &c3).unwrap();
        assert_eq!(bims.len(), maps.len());
        for g in &maps {
            let f: Vec<usize> = t.pi_table().iter().map(|&p| g[p]).collect();
            assert_eq!(&classify_bimorphism(&t, &c3, &f).unwrap(), g);
        }
    }
}
