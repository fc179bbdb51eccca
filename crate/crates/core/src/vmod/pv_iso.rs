//! `P_V ≅ V⊗₂P₂` on a finite set.

use std::sync::Arc;

use crate::enumerate::{tuple_at, tuple_index};
use crate::order::Quantale;
use crate::pvalg::{pv_mult, pv_unit, Weighted};
use crate::report::LawReport;
use crate::suplat::{classify_bimorphism, free_suplattice};
use crate::Result;

use super::{action_monad_apply, power_lattice, FreeModule};

#[derive(Clone, Debug)]
pub struct PvIso {
    pub points: usize,
    pub free: FreeModule,
    /// Carrier index of `V⊗₂P₂(X)` ↦ dense index of `V^X`.
    pub iso: Vec<usize>,
    pub report: LawReport,
}

/// Classifies `(v,A) ↦ (x ↦ v if x ∈ A else ⊥)` into `V^X` and checks that
/// it is an order-isomorphism commuting with units and multiplications.
///
/// Multiplications are compared on the generators `π(v,{t})` of
/// `V⊗₂P₂(V⊗₂P₂ X)`: the composite monad sends one to `ρ(v,t)` and `P_V`
/// sends its image `v`-at-`iso(t)` to `v⊗iso(t)`, so the square reduces to
/// `iso(ρ(v,t)) = n(v-at-iso(t))`.
pub fn check_pv_iso(base: &Arc<Quantale>, points: usize) -> Result<PvIso> {
    let q = base.as_ref();
    let p2 = free_suplattice(points)?;
    let free = action_monad_apply(base, &p2)?;
    let dense = power_lattice(q, points)?;
    let indicator = |v: usize, set: usize| -> usize {
        let t: Vec<usize> = (0..points).map(|x| if set >> x & 1 == 1 { v } else { q.bottom() }).collect();
        tuple_index(&t, q.size())
    };
    let f: Vec<usize> = q.elements().flat_map(|v| p2.elements().map(move |s| (v, s))).map(|(v, s)| indicator(v, s)).collect();
    let iso = classify_bimorphism(&free.tensor, &dense, &f)?;
    let mut report = LawReport::new("P_V ≅ V⊗₂P₂");
    report.note(format!("|X| = {points}, base {}", q.name()));
    if !free.module.carrier().is_isomorphism(&dense, &iso) {
        report.violate("carrier-iso", vec![], "classified map is not an order-isomorphism");
    }
    let weights = |i: usize| -> Weighted<usize> {
        Weighted::from_pairs(q, tuple_at(i, points, q.size()).into_iter().enumerate())
    };
    for x in 0..points {
        let lhs = weights(iso[free.unit(1 << x)]);
        if lhs != pv_unit(q, x) {
            report.violate("unit", vec![x], format!("iso(π(k,{{{x}}})) is not k-at-{x}"));
        }
    }
    for v in q.elements() {
        for t in 0..free.module.size() {
            let lhs = weights(iso[free.module.act(v, t)]);
            let rhs = pv_mult(q, &Weighted::from_pairs(q, [(weights(iso[t]), v)]));
            if lhs != rhs {
                report.violate("multiplication", vec![v, t], format!("square fails on generator π({v},{{{t}}})"));
            }
        }
    }
    Ok(PvIso { points, free, iso, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::catalog;

    #[test]
    fn small_cases() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        for k in 0..=2 {
            let r = check_pv_iso(&c3, k).unwrap();
            assert!(r.report.is_ok(), "{}", r.report);
            assert_eq!(r.iso.len(), 3usize.pow(k as u32));
        }
        let two = Arc::new(catalog::two());
        for k in 0..=3 {
            assert!(check_pv_iso(&two, k).unwrap().report.is_ok());
        }
    }
}
