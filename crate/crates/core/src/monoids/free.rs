//! `P_V(M)` for a finite monoid `M`, with convolution product.

use std::sync::Arc;

use crate::enumerate::{tuple_at, tuple_index};
use crate::order::Quantale;
use crate::pvalg::{dense_to_weighted, pv_map, tensor_weights, weighted_to_dense};
use crate::vmod::{power_lattice, VModule};
use crate::{Error, Result};

use super::ModMonoid;

/// Largest monoid accepted by [`free_monoid_algebra`].
pub const MAX_FREE_MONOID: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    mult: Vec<usize>,
    unit: usize,
    names: Vec<String>,
}

impl FiniteMonoid {
    pub fn new(names: Vec<String>, mult: Vec<usize>, unit: usize) -> Result<Self> {
        let n = names.len();
        if mult.len() != n * n || mult.iter().any(|&z| z >= n) || unit >= n {
            return Err(Error::input("monoid table must be a total function M×M → M with a unit in M"));
        }
        let m = |a: usize, b: usize| mult[a * n + b];
        for a in 0..n {
            if m(unit, a) != a || m(a, unit) != a {
                return Err(Error::input(format!("{} is not a unit at {}", names[unit], names[a])));
            }
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::input(format!("not associative at ({}, {}, {})", names[a], names[b], names[c])));
                    }
                }
            }
        }
        Ok(FiniteMonoid { mult, unit, names })
    }

    /// `ℤ/n` under addition.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("ℤ/0 is not finite"));
        }
        let mult = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
        Self::new((0..n).map(|i| i.to_string()).collect(), mult, 0)
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn mult(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.size() + b]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Carrier `V^M` ordered pointwise, acted on pointwise, with
/// `ψ∗φ = P_V(·)(ψ⊠φ)` and unit `k`-at-`e`.
pub fn free_monoid_algebra(base: &Arc<Quantale>, m: &FiniteMonoid) -> Result<ModMonoid> {
    base.require_base()?;
    let q = base.as_ref();
    let k = m.size();
    if k > MAX_FREE_MONOID {
        return Err(Error::input(format!("free monoid algebras are built for |M| ≤ {MAX_FREE_MONOID}, got {k}")));
    }
    let carrier = power_lattice(q, k)?;
    let n = carrier.size();
    let table = |i: usize| tuple_at(i, k, q.size());
    let action: Vec<usize> = q
        .elements()
        .flat_map(|v| (0..n).map(move |i| (v, i)))
        .map(|(v, i)| tuple_index(&table(i).iter().map(|&c| q.tensor(v, c)).collect::<Vec<_>>(), q.size()))
        .collect();
    let module = VModule::new(base.clone(), carrier, action)?.named((0..n).map(|i| weight_name(q, m, &table(i))).collect())?;
    let mut mult = Vec::with_capacity(n * n);
    for i in 0..n {
        let psi = dense_to_weighted(q, &table(i));
        for j in 0..n {
            let phi = dense_to_weighted(q, &table(j));
            let product = pv_map(q, &tensor_weights(q, &psi, &phi), |&(a, b)| m.mult(a, b));
            mult.push(tuple_index(&weighted_to_dense(q, &product, k), q.size()));
        }
    }
    let mut e = vec![q.bottom(); k];
    e[m.unit()] = q.unit();
    ModMonoid::new(module, mult, tuple_index(&e, q.size()))
}

fn weight_name(q: &Quantale, m: &FiniteMonoid, t: &[usize]) -> String {
    let parts: Vec<String> = t
        .iter()
        .enumerate()
        .filter(|&(_, &v)| v != q.bottom())
        .map(|(a, &v)| format!("{}:{}", m.names()[a], q.element_name(v)))
        .collect();
    format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoids::monoid_to_central;
    use crate::order::catalog;

    fn convolution_oracle(q: &Quantale, m: &FiniteMonoid, psi: &[usize], phi: &[usize]) -> Vec<usize> {
        (0..m.size())
            .map(|c| {
                let mut acc = q.bottom();
                for a in 0..m.size() {
                    for b in 0..m.size() {
                        if m.mult(a, b) == c {
                            acc = q.join(acc, q.tensor(psi[a], phi[b]));
                        }
                    }
                }
                acc
            })
            .collect()
    }

    #[test]
    fn matches_brute_force_convolution() {
        for (_, v) in catalog::base_catalog().into_iter().take(4) {
            let v = Arc::new(v);
            for m in [FiniteMonoid::cyclic(1).unwrap(), FiniteMonoid::cyclic(2).unwrap(), FiniteMonoid::cyclic(3).unwrap()] {
                let a = free_monoid_algebra(&v, &m).unwrap();
                let k = m.size();
                for i in 0..a.module().size() {
                    for j in 0..a.module().size() {
                        let expect = convolution_oracle(&v, &m, &tuple_at(i, k, v.size()), &tuple_at(j, k, v.size()));
                        assert_eq!(tuple_at(a.mult(i, j), k, v.size()), expect);
                    }
                }
                monoid_to_central(&a).unwrap();
            }
        }
    }

    #[test]
    fn trivial_monoid_gives_v() {
        let l3 = Arc::new(catalog::lukasiewicz(3).unwrap());
        let a = free_monoid_algebra(&l3, &FiniteMonoid::cyclic(1).unwrap()).unwrap();
        let q = a.to_quantale().unwrap();
        assert!(crate::monoids::same_quantale_tables(&q, &l3));
    }

    #[test]
    fn z2_over_two_is_subset_product() {
        let two = Arc::new(catalog::two());
        let a = free_monoid_algebra(&two, &FiniteMonoid::cyclic(2).unwrap()).unwrap();
        // subsets of ℤ/2 as tables: ∅=0, {1}=1, {0}=2, {0,1}=3
        assert_eq!(a.mult_table(), &[0, 0, 0, 0, 0, 2, 1, 3, 0, 1, 2, 3, 0, 3, 3, 3]);
        assert_eq!(a.unit(), 2);
    }

    #[test]
    fn too_large_is_an_input_error() {
        let two = Arc::new(catalog::two());
        assert!(matches!(free_monoid_algebra(&two, &FiniteMonoid::cyclic(5).unwrap()), Err(Error::Input(_))));
    }
}
