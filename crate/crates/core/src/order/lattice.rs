use crate::report::LawReport;
use crate::{Error, Result};

/// Largest carrier for which the all-subsets completeness check is allowed.
pub const EXHAUSTIVE_SUBSET_LIMIT: usize = 12;

/// A finite complete lattice given by its full order table.
///
/// Joins, meets, bottom and top are precomputed at construction. Element ids
/// are `0..size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteLattice {
    size: usize,
    leq: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

fn square(leq: &[Vec<bool>]) -> Result<usize> {
    let n = leq.len();
    if n == 0 {
        return Err(Error::input("order table must have at least one element"));
    }
    if let Some((i, row)) = leq.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::input(format!(
            "order table is not square: row {i} has {} entries, expected {n}",
            row.len()
        )));
    }
    Ok(n)
}

fn least_upper_bound(leq: &[Vec<bool>], members: &[usize]) -> Option<usize> {
    let n = leq.len();
    let uppers: Vec<usize> = (0..n)
        .filter(|&u| members.iter().all(|&m| leq[m][u]))
        .collect();
    uppers
        .iter()
        .copied()
        .find(|&u| uppers.iter().all(|&w| leq[u][w]))
}

/// Checks that a boolean table is the order of a complete lattice.
///
/// Completeness is checked through binary joins and a bottom element: in a
/// finite poset these give every join by induction on subset size, with the
/// empty join being the bottom.
pub fn check_complete_lattice(leq: &[Vec<bool>]) -> Result<LawReport> {
    let n = square(leq)?;
    let mut report = LawReport::new("complete lattice");
    for a in 0..n {
        if !leq[a][a] {
            report.violate("reflexivity", vec![a], format!("{a} is not below itself"));
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if leq[a][b] && leq[b][a] {
                report.violate("antisymmetry", vec![a, b], format!("antisymmetry ({a},{b})"));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !leq[a][b] || a == b {
                continue;
            }
            for c in 0..n {
                if leq[b][c] && !leq[a][c] {
                    report.violate(
                        "transitivity",
                        vec![a, b, c],
                        format!("{a}<={b} and {b}<={c} but not {a}<={c}"),
                    );
                }
            }
        }
    }
    if !report.is_ok() {
        return Ok(report);
    }
    if least_upper_bound(leq, &[]).is_none() {
        report.violate("join", vec![], "subset {} has no join (no bottom)");
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if least_upper_bound(leq, &[a, b]).is_none() {
                report.violate("join", vec![a, b], format!("subset {{{a},{b}}} has no join"));
            }
        }
    }
    Ok(report)
}

/// Completeness by brute force over every subset; only for `n <= 12`.
pub fn check_complete_lattice_exhaustive(leq: &[Vec<bool>]) -> Result<LawReport> {
    let n = square(leq)?;
    if n > EXHAUSTIVE_SUBSET_LIMIT {
        return Err(Error::Resource {
            guard: "exhaustive-subsets",
            needed: n as u128,
            limit: EXHAUSTIVE_SUBSET_LIMIT as u128,
        });
    }
    let mut report = check_complete_lattice(leq)?;
    report.subject = "complete lattice (all subsets)".into();
    if !report.violations.iter().all(|v| v.law == "join") {
        return Ok(report);
    }
    report.violations.clear();
    for mask in 0u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if least_upper_bound(leq, &members).is_none() {
            report.violate("join", members.clone(), format!("subset {members:?} has no join"));
        }
    }
    Ok(report)
}

impl FiniteLattice {
    /// Builds a lattice from its order table, rejecting anything that is not
    /// a complete lattice.
    pub fn from_leq(leq: Vec<Vec<bool>>) -> Result<Self> {
        let report = check_complete_lattice(&leq)?;
        if !report.is_ok() {
            return Err(Error::Law(report));
        }
        let n = leq.len();
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = least_upper_bound(&leq, &[a, b]).expect("checked");
            }
        }
        let bottom = least_upper_bound(&leq, &[]).expect("checked");
        let top = (0..n).find(|&t| (0..n).all(|x| leq[x][t])).expect("finite lattice has a top");
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let lowers: Vec<usize> = (0..n).filter(|&l| leq[l][a] && leq[l][b]).collect();
                meet[a * n + b] = *lowers
                    .iter()
                    .find(|&&l| lowers.iter().all(|&m| leq[m][l]))
                    .expect("meets exist in a complete lattice");
            }
        }
        Ok(FiniteLattice {
            size: n,
            leq: leq.into_iter().flatten().collect(),
            join,
            meet,
            bottom,
            top,
        })
    }

    /// Builds from a predicate on element pairs.
    pub fn from_fn(size: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        Self::from_leq((0..size).map(|a| (0..size).map(|b| leq(a, b)).collect()).collect())
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_fn(n, |a, b| a <= b).expect("chains are lattices")
    }

    /// The powerset of an `k`-element set; element `m` is the bitmask `m`.
    pub fn powerset(k: usize) -> Self {
        Self::from_fn(1 << k, |a, b| a & !b == 0).expect("powersets are lattices")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Least upper bound of a set; `⊥` for the empty set.
    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Greatest lower bound of a set; `⊤` for the empty set.
    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn leq_table(&self) -> Vec<Vec<bool>> {
        (0..self.size)
            .map(|a| (0..self.size).map(|b| self.leq(a, b)).collect())
            .collect()
    }

    pub fn is_chain(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.leq(a, b) || self.leq(b, a)))
    }

    /// Elements sorted along a linear extension of the order.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = self.elements().collect();
        order.sort_by_key(|&a| self.elements().filter(|&b| self.leq(b, a)).count());
        order
    }

    /// Covering pairs `a < b` with nothing strictly in between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if a != b
                    && self.leq(a, b)
                    && !self
                        .elements()
                        .any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b))
                {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Join-irreducible elements (non-bottom, not a join of strictly smaller ones).
    pub fn join_irreducibles(&self) -> Vec<usize> {
        self.elements()
            .filter(|&a| {
                a != self.bottom
                    && self.join_all(self.elements().filter(|&b| b != a && self.leq(b, a))) != a
            })
            .collect()
    }

    /// Cartesian product with componentwise order; pair `(a,b)` has id `a * other.size + b`.
    pub fn product(&self, other: &FiniteLattice) -> FiniteLattice {
        let m = other.size;
        FiniteLattice::from_fn(self.size * m, |p, q| {
            self.leq(p / m, q / m) && other.leq(p % m, q % m)
        })
        .expect("products of lattices are lattices")
    }

    /// Whether `perm` (old id -> new id) is an order isomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &FiniteLattice, perm: &[usize]) -> bool {
        if self.size != other.size || perm.len() != self.size {
            return false;
        }
        let mut seen = vec![false; self.size];
        for &p in perm {
            if p >= self.size || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        self.elements()
            .all(|a| self.elements().all(|b| self.leq(a, b) == other.leq(perm[a], perm[b])))
    }

    /// Finds some order isomorphism onto `other`, if one exists.
    pub fn find_isomorphism(&self, other: &FiniteLattice) -> Option<Vec<usize>> {
        if self.size != other.size {
            return None;
        }
        let n = self.size;
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            i: usize,
            src: &FiniteLattice,
            dst: &FiniteLattice,
            perm: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            let n = src.size;
            if i == n {
                return true;
            }
            for cand in 0..n {
                if used[cand] {
                    continue;
                }
                let ok = (0..i).all(|j| {
                    src.leq(i, j) == dst.leq(cand, perm[j]) && src.leq(j, i) == dst.leq(perm[j], cand)
                });
                if ok {
                    perm[i] = cand;
                    used[cand] = true;
                    if go(i + 1, src, dst, perm, used) {
                        return true;
                    }
                    used[cand] = false;
                }
            }
            false
        }
        if go(0, self, other, &mut perm, &mut used) {
            Some(perm)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
        let mut t = vec![vec![false; n]; n];
        for i in 0..n {
            t[i][i] = true;
        }
        for &(a, b) in pairs {
            t[a][b] = true;
        }
        t
    }

    #[test]
    fn two_chain_is_valid() {
        assert!(check_complete_lattice(&table(2, &[(0, 1)])).unwrap().is_ok());
    }

    #[test]
    fn antichain_has_no_join() {
        let r = check_complete_lattice(&table(2, &[])).unwrap();
        assert!(r.violations.iter().any(|v| v.law == "join" && v.witness == vec![0, 1]));
    }

    #[test]
    fn three_cycle_reports_order_failures() {
        // raw cycle: not transitive
        let raw = check_complete_lattice(&table(3, &[(0, 1), (1, 2), (2, 0)])).unwrap();
        assert!(raw.violations.iter().any(|v| v.law == "transitivity" && v.witness == vec![0, 1, 2]));
        // its transitive closure relates everything: antisymmetry fails on (a,c)
        let closed = check_complete_lattice(&vec![vec![true; 3]; 3]).unwrap();
        assert!(closed.violations.iter().any(|v| v.law == "antisymmetry" && v.witness == vec![0, 2]));
    }

    #[test]
    fn non_square_is_input_error() {
        assert!(matches!(
            check_complete_lattice(&[vec![true, true], vec![true]]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn joins_on_small_lattices() {
        let c = FiniteLattice::chain(3);
        assert_eq!(c.join_all([0, 2]), 2);
        assert_eq!(c.join_all([]), c.bottom());
        let sq = FiniteLattice::powerset(2);
        // (1,0) = mask 1, (0,1) = mask 2
        assert_eq!(sq.join_all([1, 2]), 3);
        assert_eq!(sq.meet(1, 2), 0);
    }

    #[test]
    fn exhaustive_check_agrees_on_m3() {
        // M3: bottom 0, atoms 1,2,3, top 4
        let m3 = table(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 4), (2, 4), (3, 4)]);
        assert!(check_complete_lattice(&m3).unwrap().is_ok());
        assert!(check_complete_lattice_exhaustive(&m3).unwrap().is_ok());
        let broken = table(4, &[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (1, 2), (2, 1)]);
        assert!(!check_complete_lattice_exhaustive(&broken).unwrap().is_ok());
    }

    #[test]
    fn exhaustive_guard() {
        let big = FiniteLattice::chain(13).leq_table();
        assert!(matches!(
            check_complete_lattice_exhaustive(&big),
            Err(Error::Resource { .. })
        ));
    }
}
