//! The V-powerset monad `P_V X = V^X`.
//!
//! [`Weighted`] is the sparse form (entries equal to `⊥` are omitted, so
//! equality is extensional); dense tables index `V^X` lexicographically
//! with `x = 0` most significant.

use std::collections::BTreeMap;

use crate::enumerate::{check_guard, power, tuple_at, tuple_index, Tuples};
use crate::order::Quantale;
use crate::report::LawReport;
use crate::Result;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weighted<T: Ord>(BTreeMap<T, usize>);

impl<T: Ord + Clone> Weighted<T> {
    pub fn empty() -> Self {
        Weighted(BTreeMap::new())
    }

    /// Joins values landing on the same point; drops `⊥`.
    pub fn from_pairs(q: &Quantale, pairs: impl IntoIterator<Item = (T, usize)>) -> Self {
        let mut w = Self::empty();
        for (t, v) in pairs {
            w.join_at(q, t, v);
        }
        w
    }

    pub fn join_at(&mut self, q: &Quantale, t: T, v: usize) {
        if v == q.bottom() {
            return;
        }
        let e = self.0.entry(t).or_insert(v);
        *e = q.join(*e, v);
    }

    pub fn get(&self, q: &Quantale, t: &T) -> usize {
        self.0.get(t).copied().unwrap_or(q.bottom())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, usize)> {
        self.0.iter().map(|(t, &v)| (t, v))
    }

    pub fn support(&self) -> impl Iterator<Item = &T> {
        self.0.keys()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `u_X(x) = k`-at-`x`.
pub fn pv_unit<T: Ord + Clone>(q: &Quantale, x: T) -> Weighted<T> {
    Weighted::from_pairs(q, [(x, q.unit())])
}

/// `P_V(f)(φ)(y) = ⋁_{f(x)=y} φ(x)`.
pub fn pv_map<T: Ord + Clone, U: Ord + Clone>(q: &Quantale, phi: &Weighted<T>, f: impl Fn(&T) -> U) -> Weighted<U> {
    Weighted::from_pairs(q, phi.iter().map(|(t, v)| (f(t), v)))
}

/// `n_X(Φ)(x) = ⋁_φ Φ(φ)⊗φ(x)`.
pub fn pv_mult<T: Ord + Clone>(q: &Quantale, big_phi: &Weighted<Weighted<T>>) -> Weighted<T> {
    Weighted::from_pairs(
        q,
        big_phi.iter().flat_map(|(phi, w)| phi.iter().map(move |(t, v)| (t.clone(), q.tensor(w, v)))),
    )
}

/// `ψ⊠φ: (a,b) ↦ ψ(a)⊗φ(b)`.
pub fn tensor_weights<A: Ord + Clone, B: Ord + Clone>(q: &Quantale, psi: &Weighted<A>, phi: &Weighted<B>) -> Weighted<(A, B)> {
    Weighted::from_pairs(
        q,
        psi.iter().flat_map(|(a, v)| phi.iter().map(move |(b, w)| ((a.clone(), b.clone()), q.tensor(v, w)))),
    )
}

pub fn dense_to_weighted(q: &Quantale, table: &[usize]) -> Weighted<usize> {
    Weighted::from_pairs(q, table.iter().copied().enumerate())
}

pub fn weighted_to_dense(q: &Quantale, phi: &Weighted<usize>, n: usize) -> Vec<usize> {
    (0..n).map(|x| phi.get(q, &x)).collect()
}

/// `P_V(f)` on dense tables, `f: X → Y` with `|Y| = dst`.
pub fn pv_apply(q: &Quantale, f: &[usize], dst: usize, phi: &[usize]) -> Vec<usize> {
    let mut out = vec![q.bottom(); dst];
    for (x, &y) in f.iter().enumerate() {
        out[y] = q.join(out[y], phi[x]);
    }
    out
}

/// All of `V^X` as dense tables, in index order.
pub fn all_weights(q: &Quantale, n: usize) -> Result<Vec<Vec<usize>>> {
    check_guard("powerset-carrier", power(q.size(), n))?;
    Ok(Tuples::new(n, q.size()).collect())
}

/// Checks the unit laws on every `φ ∈ V^X`, associativity on the
/// generators `v`-at-`Φ` of `P_V³X` for every `Φ ∈ P_V²X` (exact, as both
/// sides preserve joins in their argument), naturality of `u` and `n` along
/// every endofunction of `X`, and, with `exhaustive`, associativity on every
/// element of `P_V³X`.
pub fn check_monad_laws(q: &Quantale, n: usize, exhaustive: bool) -> Result<LawReport> {
    let mut report = LawReport::new(format!("P_V monad on {n} points over {}", q.name()));
    let px = all_weights(q, n)?;
    let pxw: Vec<Weighted<usize>> = px.iter().map(|t| dense_to_weighted(q, t)).collect();
    for (i, phi) in pxw.iter().enumerate() {
        if &pv_mult(q, &pv_unit(q, phi.clone())) != phi {
            report.violate("left-unit", vec![i], "n∘u_P differs from id");
        }
        if &pv_mult(q, &pv_map(q, phi, |&x| pv_unit(q, x))) != phi {
            report.violate("right-unit", vec![i], "n∘P(u) differs from id");
        }
    }
    let ppx_size = power(q.size(), px.len());
    check_guard("powerset-squared", ppx_size)?;
    for (j, t) in Tuples::new(px.len(), q.size()).enumerate() {
        let big_phi: Weighted<Weighted<usize>> = Weighted::from_pairs(q, t.iter().enumerate().map(|(i, &v)| (pxw[i].clone(), v)));
        for v in q.elements() {
            let xi = Weighted::from_pairs(q, [(big_phi.clone(), v)]);
            if pv_mult(q, &pv_mult(q, &xi)) != pv_mult(q, &pv_map(q, &xi, |p| pv_mult(q, p))) {
                report.violate("associativity", vec![j, v], "n∘n_P differs from n∘P(n) on a generator");
            }
        }
    }
    let endos: Vec<Vec<usize>> = Tuples::new(n, n).collect();
    for (e, f) in endos.iter().enumerate() {
        for x in 0..n {
            if pv_map(q, &pv_unit(q, x), |&a| f[a]) != pv_unit(q, f[x]) {
                report.violate("unit-naturality", vec![e, x], "P(f)∘u differs from u∘f");
            }
        }
        for (i, phi) in pxw.iter().enumerate() {
            for (i2, psi) in pxw.iter().enumerate() {
                let big_phi = Weighted::from_pairs(q, [(phi.clone(), q.unit()), (psi.clone(), q.top())]);
                let lhs = pv_map(q, &pv_mult(q, &big_phi), |&a| f[a]);
                let rhs = pv_mult(q, &pv_map(q, &big_phi, |p| pv_map(q, p, |&a| f[a])));
                if lhs != rhs {
                    report.violate("mult-naturality", vec![e, i, i2], "P(f)∘n differs from n∘PP(f)");
                }
            }
        }
    }
    if exhaustive {
        let ppx: Vec<Weighted<Weighted<usize>>> = Tuples::new(px.len(), q.size())
            .map(|t| Weighted::from_pairs(q, t.iter().enumerate().map(|(i, &v)| (pxw[i].clone(), v))))
            .collect();
        check_guard("powerset-cubed", power(q.size(), ppx.len()))?;
        for (j, t) in Tuples::new(ppx.len(), q.size()).enumerate() {
            let xi = Weighted::from_pairs(q, t.iter().enumerate().map(|(i, &v)| (ppx[i].clone(), v)));
            if pv_mult(q, &pv_mult(q, &xi)) != pv_mult(q, &pv_map(q, &xi, |p| pv_mult(q, p))) {
                report.violate("associativity-exhaustive", vec![j], "n∘n_P differs from n∘P(n)");
            }
        }
    } else {
        report.note("associativity checked on the join-generators v-at-Φ of P_V³X");
    }
    Ok(report)
}

/// Dense index of a table in `V^X`.
pub fn weight_index(q: &Quantale, phi: &[usize]) -> usize {
    tuple_index(phi, q.size())
}

pub fn weight_at(q: &Quantale, index: usize, n: usize) -> Vec<usize> {
    tuple_at(index, n, q.size())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::catalog;

    #[test]
    fn apply_examples() {
        let c3 = catalog::chain_min(3).unwrap();
        assert_eq!(pv_apply(&c3, &[0, 1], 2, &[2, 1]), vec![2, 1]);
        assert_eq!(pv_apply(&c3, &[0, 0], 2, &[1, 2]), vec![2, 0]);
        let two = catalog::two();
        // direct image of {0,2} under 0↦1, 1↦0, 2↦1
        assert_eq!(pv_apply(&two, &[1, 0, 1], 2, &[1, 0, 1]), vec![0, 1]);
        // functoriality on all maps 2→2→2
        for f in Tuples::new(2, 2) {
            for g in Tuples::new(2, 2) {
                let gf: Vec<usize> = f.iter().map(|&x| g[x]).collect();
                for phi in all_weights(&c3, 2).unwrap() {
                    let lhs = pv_apply(&c3, &gf, 2, &phi);
                    let rhs = pv_apply(&c3, &g, 2, &pv_apply(&c3, &f, 2, &phi));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn mult_over_two_is_union() {
        let two = catalog::two();
        let a = dense_to_weighted(&two, &[1, 0, 1]);
        let b = dense_to_weighted(&two, &[0, 1, 0]);
        let c = dense_to_weighted(&two, &[0, 0, 0]);
        let big = Weighted::from_pairs(&two, [(a, 1), (b, 1), (c, 1)]);
        assert_eq!(weighted_to_dense(&two, &pv_mult(&two, &big), 3), vec![1, 1, 1]);
    }

    #[test]
    fn mult_on_one_point_by_hand() {
        let c3 = catalog::chain_min(3).unwrap();
        // Φ = {(x↦2) ↦ 1, (x↦1) ↦ 2}: n(Φ)(x) = min(1,2) ∨ min(2,1) = 1
        let big = Weighted::from_pairs(&c3, [(dense_to_weighted(&c3, &[2]), 1), (dense_to_weighted(&c3, &[1]), 2)]);
        assert_eq!(weighted_to_dense(&c3, &pv_mult(&c3, &big), 1), vec![1]);
    }

    #[test]
    fn laws_small() {
        let c3 = catalog::chain_min(3).unwrap();
        for n in 0..=1 {
            assert!(check_monad_laws(&c3, n, false).unwrap().is_ok());
        }
        let two = catalog::two();
        assert!(check_monad_laws(&two, 1, true).unwrap().is_ok());
        assert!(check_monad_laws(&two, 2, false).unwrap().is_ok());
    }
}
