//! Suplattices and sup-preserving maps at desk scale.
//!
//! Every finite lattice is complete, so a [`FiniteLattice`] doubles as a
//! suplattice. Maps are plain value tables.

mod congruence;
mod tensor;

pub use congruence::{coequalize, congruence, SupCongruence};
pub use tensor::{check_bimorphism, classify_bimorphism, tensor_sup, TensorSup, FULL_ENUMERATION_CELLS};

use crate::enumerate::{check_guard, power, Tuples};
use crate::order::FiniteLattice;
use crate::report::LawReport;
use crate::{Error, Result};

pub type SupLattice = FiniteLattice;

/// Checks `f(⊥) = ⊥` and `f(a∨b) = f(a)∨f(b)`.
pub fn check_supmap(source: &SupLattice, target: &SupLattice, map: &[usize]) -> Result<LawReport> {
    if map.len() != source.size() || map.iter().any(|&v| v >= target.size()) {
        return Err(Error::input("sup-map table is not a total function between the carriers"));
    }
    let mut report = LawReport::new("sup-map");
    if map[source.bottom()] != target.bottom() {
        report.violate("bottom", vec![], "bottom is not preserved");
    }
    for a in source.elements() {
        for b in a + 1..source.size() {
            if map[source.join(a, b)] != target.join(map[a], map[b]) {
                report.violate("join", vec![a, b], format!("f({a} ∨ {b}) differs from f({a}) ∨ f({b})"));
            }
        }
    }
    Ok(report)
}

pub fn is_supmap(source: &SupLattice, target: &SupLattice, map: &[usize]) -> bool {
    check_supmap(source, target, map).map(|r| r.is_ok()).unwrap_or(false)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupMap {
    pub source: SupLattice,
    pub target: SupLattice,
    pub map: Vec<usize>,
}

impl SupMap {
    pub fn new(source: SupLattice, target: SupLattice, map: Vec<usize>) -> Result<Self> {
        let report = check_supmap(&source, &target, &map)?;
        if !report.is_ok() {
            return Err(Error::Law(report));
        }
        Ok(SupMap { source, target, map })
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }
}

/// `P₂(X)` for `|X| = k`: subsets as bitmasks, ordered by inclusion.
pub fn free_suplattice(k: usize) -> Result<SupLattice> {
    if k > 20 {
        return Err(Error::Resource { guard: "free-suplattice", needed: k as u128, limit: 20 });
    }
    Ok(FiniteLattice::powerset(k))
}

/// Unit of the powerset monad: `x ↦ {x}`.
pub fn powerset_unit(x: usize) -> usize {
    1 << x
}

/// Multiplication of the powerset monad on a family of subsets: union.
pub fn powerset_mult(family: impl IntoIterator<Item = usize>) -> usize {
    family.into_iter().fold(0, |acc, a| acc | a)
}

/// All sup-maps `X → Z`. A sup-map is fixed by its values on
/// join-irreducibles, so candidates range over `Z^J(X)`.
pub fn enumerate_supmaps(source: &SupLattice, target: &SupLattice) -> Result<Vec<Vec<usize>>> {
    let irr = source.join_irreducibles();
    check_guard("supmap-enumeration", power(target.size(), irr.len()))?;
    let mut out = Vec::new();
    for values in Tuples::new(irr.len(), target.size()) {
        let map: Vec<usize> = source
            .elements()
            .map(|a| {
                target.join_all(irr.iter().zip(&values).filter(|(&j, _)| source.leq(j, a)).map(|(_, &v)| v))
            })
            .collect();
        if irr.iter().zip(&values).all(|(&j, &v)| map[j] == v) && is_supmap(source, target, &map) {
            out.push(map);
        }
    }
    out.sort();
    Ok(out)
}

/// All lattices with `n` elements up to isomorphism.
///
/// Candidates are order relations compatible with the index order (every
/// finite poset has such a labelling); duplicates are removed by an
/// isomorphism search. Results are sorted by their `leq` tables.
pub fn enumerate_lattices(n: usize) -> Result<Vec<FiniteLattice>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    if n > 6 {
        return Err(Error::Resource { guard: "lattice-enumeration", needed: n as u128, limit: 6 });
    }
    // bottom = 0 and top = n-1 are forced; free pairs are i<j among the middle
    let middle: Vec<(usize, usize)> =
        (1..n.saturating_sub(1)).flat_map(|i| (i + 1..n - 1).map(move |j| (i, j))).collect();
    let mut found: Vec<FiniteLattice> = Vec::new();
    for bits in 0u64..(1 << middle.len()) {
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
            leq[0][i] = true;
            leq[i][n - 1] = true;
        }
        for (k, &(i, j)) in middle.iter().enumerate() {
            if bits >> k & 1 == 1 {
                leq[i][j] = true;
            }
        }
        let transitive = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(leq[a][b] && leq[b][c]) || leq[a][c])));
        if !transitive {
            continue;
        }
        let Ok(l) = FiniteLattice::from_leq(leq) else { continue };
        if !found.iter().any(|f| f.find_isomorphism(&l).is_some()) {
            found.push(l);
        }
    }
    found.sort_by(|a, b| a.leq_table().cmp(&b.leq_table()));
    Ok(found)
}
