//! Strength, costrength and double strengths of `P_V`.

use crate::enumerate::{check_guard, power};
use crate::order::Quantale;
use crate::report::LawReport;
use crate::Result;

use super::monad::{all_weights, dense_to_weighted, pv_map, pv_mult, pv_unit, tensor_weights, Weighted};

/// Closed-form evaluators: `st(x,φ) = u(x)⊠φ`, `st'(ψ,y) = ψ⊠u(y)`,
/// `dst(ψ,φ) = ψ⊠φ`.
#[derive(Clone, Copy, Debug)]
pub struct StrengthData<'q> {
    pub base: &'q Quantale,
}

impl<'q> StrengthData<'q> {
    pub fn new(base: &'q Quantale) -> Self {
        StrengthData { base }
    }

    pub fn st<A: Ord + Clone, B: Ord + Clone>(&self, x: A, phi: &Weighted<B>) -> Weighted<(A, B)> {
        tensor_weights(self.base, &pv_unit(self.base, x), phi)
    }

    pub fn st_prime<A: Ord + Clone, B: Ord + Clone>(&self, psi: &Weighted<A>, y: B) -> Weighted<(A, B)> {
        tensor_weights(self.base, psi, &pv_unit(self.base, y))
    }

    pub fn dst<A: Ord + Clone, B: Ord + Clone>(&self, psi: &Weighted<A>, phi: &Weighted<B>) -> Weighted<(A, B)> {
        tensor_weights(self.base, psi, phi)
    }

    /// `m∘T(st')∘st_{TX,Y}`.
    pub fn dst_left<A: Ord + Clone, B: Ord + Clone>(&self, psi: &Weighted<A>, phi: &Weighted<B>) -> Weighted<(A, B)> {
        let outer = self.st(psi.clone(), phi);
        pv_mult(self.base, &pv_map(self.base, &outer, |(p, y)| self.st_prime(p, y.clone())))
    }

    /// `m∘T(st)∘st'_{X,TY}`.
    pub fn dst_right<A: Ord + Clone, B: Ord + Clone>(&self, psi: &Weighted<A>, phi: &Weighted<B>) -> Weighted<(A, B)> {
        let outer = self.st_prime(psi, phi.clone());
        pv_mult(self.base, &pv_map(self.base, &outer, |(x, p)| self.st(x.clone(), p)))
    }
}

/// The strength `X×P_V Y → P_V(X×Y)` as the map `(x,φ) ↦ P_V(y ↦ (x,y))(φ)`,
/// against which the closed form is compared.
fn st_by_map(q: &Quantale, x: usize, phi: &Weighted<usize>) -> Weighted<(usize, usize)> {
    pv_map(q, phi, |&y| (x, y))
}

/// Checks pointwise over all inputs with `|X| = nx`, `|Y| = |Z| = ny`:
/// the closed form of `st`, the unit triangle `1×TY ≅ TY`, the associativity
/// pentagon with the cartesian associator, `st∘(id×e) = e`, the
/// multiplication square, the costrength `st' = Tγ∘st∘γ`, the commutativity
/// square `dst_left = dst_right` and both against `ψ⊠φ`.
pub fn strength_suite(q: &Quantale, nx: usize, ny: usize) -> Result<LawReport> {
    let s = StrengthData::new(q);
    let mut report = LawReport::new(format!("P_V strength on {nx}×{ny} over {}", q.name()));
    let px: Vec<Weighted<usize>> = all_weights(q, nx)?.iter().map(|t| dense_to_weighted(q, t)).collect();
    let py: Vec<Weighted<usize>> = all_weights(q, ny)?.iter().map(|t| dense_to_weighted(q, t)).collect();

    for x in 0..nx {
        for (j, phi) in py.iter().enumerate() {
            if s.st(x, phi) != st_by_map(q, x, phi) {
                report.violate("strength-formula", vec![x, j], "u(x)⊠φ differs from the map-induced strength");
            }
        }
    }
    for (j, phi) in py.iter().enumerate() {
        if &pv_map(q, &s.st((), phi), |((), y)| *y) != phi {
            report.violate("unit-iso", vec![j], "P(λ)∘st_{1,Y} differs from λ");
        }
    }
    for x in 0..nx {
        for y in 0..ny {
            for (k, phi) in py.iter().enumerate() {
                let lhs = pv_map(q, &s.st((x, y), phi), |((a, b), c)| (*a, (*b, *c)));
                let rhs = s.st(x, &s.st(y, phi));
                if lhs != rhs {
                    report.violate("associativity", vec![x, y, k], "pentagon with the cartesian associator fails");
                }
            }
            if s.st(x, &pv_unit(q, y)) != pv_unit(q, (x, y)) {
                report.violate("unit-triangle", vec![x, y], "st(x,e(y)) differs from e(x,y)");
            }
        }
    }
    let ppy_size = power(q.size(), py.len());
    check_guard("strength-multiplication", ppy_size * nx as u128)?;
    for (j, t) in crate::enumerate::Tuples::new(py.len(), q.size()).enumerate() {
        let big = Weighted::from_pairs(q, t.iter().enumerate().map(|(i, &v)| (py[i].clone(), v)));
        for x in 0..nx {
            let lhs = pv_mult(q, &pv_map(q, &s.st(x, &big), |(a, p)| s.st(*a, p)));
            let rhs = s.st(x, &pv_mult(q, &big));
            if lhs != rhs {
                report.violate("multiplication", vec![x, j], "m∘T(st)∘st differs from st∘(id×m)");
            }
        }
    }
    for (i, psi) in px.iter().enumerate() {
        for y in 0..ny {
            let derived = pv_map(q, &s.st(y, psi), |(b, a)| (*a, *b));
            if derived != s.st_prime(psi, y) {
                report.violate("costrength", vec![i, y], "Tγ∘st∘γ differs from ψ⊠u(y)");
            }
        }
        for (j, phi) in py.iter().enumerate() {
            let (l, r, d) = (s.dst_left(psi, phi), s.dst_right(psi, phi), s.dst(psi, phi));
            if l != r {
                report.violate("commutativity", vec![i, j], "the two double strengths differ");
            }
            if l != d || r != d {
                report.violate("double-strength", vec![i, j], "double strength differs from ψ⊠φ");
            }
        }
    }
    Ok(report)
}
