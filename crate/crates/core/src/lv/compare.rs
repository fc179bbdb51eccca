//! Truncated comparison of the monads `P_V L` and `P_L` on a finite set.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::order::Quantale;
use crate::pvalg::{pv_map, pv_mult, pv_unit, tensor_weights, Weighted};
use crate::report::LawReport;
use crate::{Error, Result};

use super::{for_each_split, list_mult, ListIndex};

/// A finitely supported functional on lists.
type Functional = Weighted<Vec<usize>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompareConfig {
    /// Random second-level functionals on top of the exhaustive point masses.
    pub samples: usize,
    pub seed: u64,
}

impl Default for CompareConfig {
    fn default() -> Self {
        CompareConfig { samples: 200, seed: 0 }
    }
}

/// `φ₁⊠…⊠φₙ` as a functional on `LLX`.
fn tensor_list(q: &Quantale, phis: &[Functional]) -> Weighted<Vec<Vec<usize>>> {
    phis.iter().fold(pv_unit(q, Vec::new()), |acc, phi| {
        pv_map(q, &tensor_weights(q, &acc, phi), |(blocks, xs)| {
            let mut blocks = blocks.clone();
            blocks.push(xs.clone());
            blocks
        })
    })
}

/// `ε'(φ̄) = P_V(m_X)(φ₁⊠…⊠φₙ)`.
fn epsilon(q: &Quantale, phis: &[Functional]) -> Functional {
    pv_map(q, &tensor_list(q, phis), |blocks| list_mult(blocks))
}

/// Multiplication of `P_V L`: `μ(Φ) = ⋁_φ̄ Φ(φ̄) · ε'(φ̄)`.
fn mult_pvl(q: &Quantale, big_phi: &Weighted<Vec<Functional>>) -> Functional {
    pv_mult(q, &pv_map(q, big_phi, |phis| epsilon(q, phis)))
}

/// Multiplication of `P_L` at `x̄`: `⋁ (φ₁(x̄₁)⊗…⊗φₙ(x̄ₙ)) ⊗ Φ(φ̄)` over
/// `φ̄` and splits `x̄ = x̄₁;…;x̄ₙ`.
fn mult_pl_at(q: &Quantale, big_phi: &Weighted<Vec<Functional>>, xs: &[usize]) -> usize {
    let mut out = q.bottom();
    for (phis, w) in big_phi.iter() {
        for_each_split(xs.len(), phis.len(), |cuts| {
            let ev = q.tensor_all(phis.iter().enumerate().map(|(i, phi)| phi.get(q, &xs[cuts[i]..cuts[i + 1]].to_vec())));
            out = q.join(out, q.tensor(ev, w));
        });
    }
    out
}

fn random_functional(q: &Quantale, idx: &ListIndex, rng: &mut ChaCha8Rng) -> Functional {
    let k = rng.gen_range(1..=3);
    Weighted::from_pairs(
        q,
        (0..k).map(|_| (idx.list(rng.gen_range(0..idx.len())), rng.gen_range(0..q.size()))),
    )
}

/// Units and multiplications of `P_V L` and `P_L` agree pointwise on lists
/// `≤ N`, for `|X| ≤ 2`, `N ≤ 3`, `|V| ≤ 3`. Test functionals: every point
/// mass `k·(φ̄)` with `φ̄` a list of at most two point-mass functionals,
/// plus `config.samples` seeded random ones. Laws `unit` `[x, list]`,
/// `lower-triangle` and `upper-square` `[functional, list]`,
/// `multiplication` `[functional, list]`.
pub fn compare_pl_pvl(q: &Arc<Quantale>, points: usize, max_len: usize, config: CompareConfig) -> Result<LawReport> {
    q.require_base()?;
    if points > 2 || max_len > 3 || q.size() > 3 {
        return Err(Error::precondition("comparison domain is |X| ≤ 2, N ≤ 3, |V| ≤ 3"));
    }
    let idx = ListIndex::new(points, max_len)?;
    let mut report = LawReport::new(format!("P_V L ≅ P_L on {points} points over {}, lists ≤ {max_len}", q.name()));

    for x in 0..points {
        let pvl = pv_unit(q, vec![x]);
        for (i, xs) in idx.lists().enumerate() {
            let yoneda = if xs == [x] { q.unit() } else { q.bottom() };
            if pvl.get(q, &xs) != yoneda {
                report.violate("unit", vec![x, i], format!("units differ at ({x}), {xs:?}"));
            }
        }
    }

    let points_masses: Vec<Functional> = idx
        .lists()
        .flat_map(|xs| q.elements().filter(|&v| v != q.bottom()).map(move |v| (xs.clone(), v)))
        .map(|(xs, v)| Weighted::from_pairs(q, [(xs, v)]))
        .collect();
    let mut tests: Vec<Weighted<Vec<Functional>>> = Vec::new();
    let pairs = ListIndex::new(points_masses.len(), 2)?;
    for ps in pairs.lists() {
        let phis: Vec<Functional> = ps.iter().map(|&p| points_masses[p].clone()).collect();
        tests.push(Weighted::from_pairs(q, [(phis, q.unit())]));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.samples {
        let support = rng.gen_range(1..=3);
        let entries: Vec<(Vec<Functional>, usize)> = (0..support)
            .map(|_| {
                let n = rng.gen_range(0..=max_len);
                let phis = (0..n).map(|_| random_functional(q, &idx, &mut rng)).collect();
                (phis, rng.gen_range(0..q.size()))
            })
            .collect();
        tests.push(Weighted::from_pairs(q, entries));
    }

    for (t, big_phi) in tests.iter().enumerate() {
        for (phis, _) in big_phi.iter() {
            let psi = tensor_list(q, phis);
            let pushed = epsilon(q, phis);
            for (i, xs) in idx.lists().enumerate() {
                let mut pulled = q.bottom();
                for_each_split(xs.len(), phis.len(), |cuts| {
                    let blocks: Vec<Vec<usize>> = cuts.windows(2).map(|c| xs[c[0]..c[1]].to_vec()).collect();
                    let direct = q.tensor_all(phis.iter().zip(&blocks).map(|(phi, b)| phi.get(q, b)));
                    if psi.get(q, &blocks) != direct {
                        report.violate("lower-triangle", vec![t, i], format!("(⊠φ̄)(x̄₁,…,x̄ₙ) differs from ⊗φᵢ(x̄ᵢ) at {xs:?}"));
                    }
                    pulled = q.join(pulled, psi.get(q, &blocks));
                });
                if pushed.get(q, &xs) != pulled {
                    report.violate("upper-square", vec![t, i], format!("P_V(m)(⊠φ̄) differs from the split formula at {xs:?}"));
                }
            }
        }
        let mu = mult_pvl(q, big_phi);
        for (i, xs) in idx.lists().enumerate() {
            if mu.get(q, &xs) != mult_pl_at(q, big_phi, &xs) {
                report.violate("multiplication", vec![t, i], format!("multiplications differ at {xs:?}"));
            }
        }
    }
    report.note(format!(
        "truncated: lists ≤ {max_len}, {} test functionals ({} point masses, {} seeded with {})",
        tests.len(),
        tests.len() - config.samples,
        config.samples,
        config.seed
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::catalog;

    #[test]
    fn agree_on_small_domains() {
        let two = Arc::new(catalog::two());
        let report = compare_pl_pvl(&two, 1, 2, CompareConfig { samples: 50, seed: 3 }).unwrap();
        assert!(report.is_ok(), "{report}");
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let report = compare_pl_pvl(&c3, 2, 2, CompareConfig { samples: 50, seed: 4 }).unwrap();
        assert!(report.is_ok(), "{report}");
    }

    #[test]
    fn unit_functional_flattens() {
        let c3 = catalog::chain_min(3).unwrap();
        let phi = Weighted::from_pairs(&c3, [(vec![0, 1], 1), (vec![1], 2)]);
        let big = pv_unit(&c3, vec![phi.clone()]);
        assert_eq!(mult_pvl(&c3, &big), phi);
        for xs in [vec![0, 1], vec![1], vec![]] {
            assert_eq!(mult_pl_at(&c3, &big, &xs), phi.get(&c3, &xs));
        }
    }

    #[test]
    fn domain_is_bounded() {
        let l4 = Arc::new(catalog::lukasiewicz(4).unwrap());
        assert!(compare_pl_pvl(&l4, 1, 1, CompareConfig::default()).is_err());
    }
}
