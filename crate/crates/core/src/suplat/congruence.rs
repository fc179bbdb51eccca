//! Least sup-congruences and their quotients (coequalizers in Sup).

use crate::order::FiniteLattice;
use crate::{Error, Result};

use super::{check_supmap, SupLattice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupCongruence {
    over: SupLattice,
    /// Class index of each element.
    projection: Vec<usize>,
    /// Maximum of each class, ascending.
    reps: Vec<usize>,
    quotient: FiniteLattice,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, a: usize) -> usize {
        let mut r = a;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = a;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// The least equivalence containing `pairs` that is closed under the join
/// rule (`b θ b' ⇒ b∨c θ b'∨c`) and under each endomap in `actions`
/// (`b θ b' ⇒ e(b) θ e(b')`).
pub fn congruence(over: &SupLattice, pairs: &[(usize, usize)], actions: &[Vec<usize>]) -> Result<SupCongruence> {
    let n = over.size();
    if pairs.iter().any(|&(a, b)| a >= n || b >= n) || actions.iter().any(|e| e.len() != n) {
        return Err(Error::input("congruence seed out of range"));
    }
    let mut uf = UnionFind((0..n).collect());
    for &(a, b) in pairs {
        uf.union(a, b);
    }
    loop {
        let mut changed = false;
        for b in 0..n {
            let r = uf.find(b);
            if r == b {
                continue;
            }
            for c in 0..n {
                changed |= uf.union(over.join(b, c), over.join(r, c));
            }
            for e in actions {
                changed |= uf.union(e[b], e[r]);
            }
        }
        if !changed {
            break;
        }
    }
    let roots: Vec<usize> = (0..n).map(|b| uf.find(b)).collect();
    let mut reps: Vec<usize> = Vec::new();
    for r in 0..n {
        if roots[r] == r {
            let top = over.join_all((0..n).filter(|&b| roots[b] == r));
            if roots[top] != r {
                return Err(Error::internal("congruence class is not join-closed"));
            }
            reps.push(top);
        }
    }
    reps.sort_unstable();
    let projection: Vec<usize> = (0..n)
        .map(|b| reps.iter().position(|&t| roots[t] == roots[b]).expect("every class has a representative"))
        .collect();
    let quotient = FiniteLattice::from_fn(reps.len(), |i, j| over.leq(reps[i], reps[j]))?;
    let c = SupCongruence { over: over.clone(), projection, reps, quotient };
    if !check_supmap(&c.over, &c.quotient, &c.projection)?.is_ok() {
        return Err(Error::internal("projection onto the quotient is not a sup-map"));
    }
    Ok(c)
}

/// Coequalizer of `f, g: A → B`: the least congruence on `B` with
/// `f(a) θ g(a)` for all `a`.
pub fn coequalize(target: &SupLattice, f: &[usize], g: &[usize]) -> Result<SupCongruence> {
    if f.len() != g.len() {
        return Err(Error::Dimension("parallel maps must share a source".into()));
    }
    let pairs: Vec<(usize, usize)> = f.iter().copied().zip(g.iter().copied()).collect();
    congruence(target, &pairs, &[])
}

impl SupCongruence {
    pub fn over(&self) -> &SupLattice {
        &self.over
    }

    pub fn quotient(&self) -> &FiniteLattice {
        &self.quotient
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    pub fn project(&self, b: usize) -> usize {
        self.projection[b]
    }

    /// Largest element of class `i`.
    pub fn representative(&self, i: usize) -> usize {
        self.reps[i]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    pub fn classes(&self) -> usize {
        self.reps.len()
    }

    /// Factors a map `h: B → Z` constant on classes through the quotient.
    pub fn factor(&self, h: &[usize]) -> Option<Vec<usize>> {
        let out: Vec<usize> = self.reps.iter().map(|&r| h[r]).collect();
        (0..self.over.size()).all(|b| h[b] == out[self.projection[b]]).then_some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suplat::enumerate_supmaps;

    #[test]
    fn equal_maps_give_identity() {
        let sq = FiniteLattice::powerset(2);
        let c = coequalize(&sq, &[0, 1, 2, 3], &[0, 1, 2, 3]).unwrap();
        assert_eq!(c.classes(), 4);
        assert_eq!(c.quotient(), &sq);
    }

    #[test]
    fn collapsing_top_of_chain() {
        let c3 = FiniteLattice::chain(3);
        let c = coequalize(&c3, &[1], &[2]).unwrap();
        assert_eq!(c.quotient(), &FiniteLattice::chain(2));
        assert_eq!(c.projection(), &[0, 1, 1]);
        assert_eq!(c.representatives(), &[0, 2]);
    }

    #[test]
    fn join_rule_propagates() {
        // identifying the two atoms of 2×2 forces the top into their class
        let sq = FiniteLattice::powerset(2);
        let c = congruence(&sq, &[(1, 2)], &[]).unwrap();
        assert_eq!(c.projection(), &[0, 1, 1, 1]);
        // identifying ⊥ with an atom leaves the other atom's class {2,3}
        let c = congruence(&sq, &[(0, 1)], &[]).unwrap();
        assert_eq!(c.projection(), &[0, 0, 1, 1]);
    }

    #[test]
    fn universal_property_against_brute_force() {
        let sq = FiniteLattice::powerset(2);
        let c3 = FiniteLattice::chain(3);
        for (f, g) in [(vec![0, 1], vec![0, 2]), (vec![0, 3], vec![0, 1]), (vec![0, 1], vec![0, 1])] {
            let c = coequalize(&sq, &f, &g).unwrap();
            assert!(c.projection().iter().all(|&p| p < c.classes()));
            for z in [&c3, &sq] {
                let coequalizing: Vec<Vec<usize>> = enumerate_supmaps(&sq, z)
                    .unwrap()
                    .into_iter()
                    .filter(|h| f.iter().zip(&g).all(|(&a, &b)| h[a] == h[b]))
                    .collect();
                let through_quotient = enumerate_supmaps(c.quotient(), z).unwrap();
                assert_eq!(coequalizing.len(), through_quotient.len());
                for h in &coequalizing {
                    let hbar = c.factor(h).unwrap();
                    assert!(through_quotient.contains(&hbar));
                }
            }
        }
    }

    #[test]
    fn action_closure() {
        let c3 = FiniteLattice::chain(3);
        // identify 0 and 1 under an endomap sending 1 to 2 and 2 to 2
        let c = congruence(&c3, &[(0, 1)], &[vec![0, 2, 2]]).unwrap();
        assert_eq!(c.classes(), 1);
    }
}
