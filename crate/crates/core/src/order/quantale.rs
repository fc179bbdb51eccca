use std::fmt;

use serde::{Deserialize, Serialize};

use super::lattice::{check_complete_lattice, FiniteLattice};
use crate::report::LawReport;
use crate::{Error, Result};

/// Raw quantale tables as they arrive from a file, before any law checking.
///
/// This is also the canonical JSON form. Element order is definitional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantaleData {
    pub elements: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub tensor: Vec<Vec<usize>>,
    pub unit: usize,
}

fn validate_shape(data: &QuantaleData) -> Result<usize> {
    let n = data.leq.len();
    if data.elements.len() != n {
        return Err(Error::input(format!(
            "{} element names for an order table of size {n}",
            data.elements.len()
        )));
    }
    if data.tensor.len() != n || data.tensor.iter().any(|r| r.len() != n) {
        return Err(Error::input("tensor table must be size x size"));
    }
    if let Some(bad) = data.tensor.iter().flatten().find(|&&v| v >= n) {
        return Err(Error::input(format!("tensor entry {bad} is not an element id")));
    }
    if data.unit >= n {
        return Err(Error::input(format!("unit {} is not an element id", data.unit)));
    }
    Ok(n)
}

/// Checks every quantale law of a candidate, reporting each failure with a
/// witness.
///
/// Laws: associativity `(a,b,c)`, commutativity `(a,b)`, unit `(a)`, binary
/// join preservation on the left `(a,b,c)` meaning `(a∨b)⊗c ≠ a⊗c ∨ b⊗c`, on
/// the right `(a,b,c)` meaning `a⊗(b∨c) ≠ a⊗b ∨ a⊗c`, and bottom absorption
/// on either side `(a)`. Lattice failures are reported alone, first.
pub fn check_quantale(data: &QuantaleData) -> Result<LawReport> {
    let n = validate_shape(data)?;
    let lattice_report = check_complete_lattice(&data.leq)?;
    if !lattice_report.is_ok() {
        let mut report = LawReport::new("quantale");
        report.absorb("lattice:", lattice_report);
        return Ok(report);
    }
    let lat = FiniteLattice::from_leq(data.leq.clone())?;
    let t = |a: usize, b: usize| data.tensor[a][b];
    let k = data.unit;
    let mut report = LawReport::new("quantale");
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if t(t(a, b), c) != t(a, t(b, c)) {
                    report.violate(
                        "associativity",
                        vec![a, b, c],
                        format!("({a}⊗{b})⊗{c} ≠ {a}⊗({b}⊗{c})"),
                    );
                }
            }
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if t(a, b) != t(b, a) {
                report.violate("commutativity", vec![a, b], format!("{a}⊗{b} ≠ {b}⊗{a}"));
            }
        }
    }
    for a in 0..n {
        if t(k, a) != a || t(a, k) != a {
            report.violate("unit", vec![a], format!("unit does not fix {a}"));
        }
    }
    for a in 0..n {
        for b in 0..n {
            let j = lat.join(a, b);
            for c in 0..n {
                if t(j, c) != lat.join(t(a, c), t(b, c)) {
                    report.violate("join-left", vec![a, b, c], format!("({a}∨{b})⊗{c}"));
                }
                if t(c, j) != lat.join(t(c, a), t(c, b)) {
                    report.violate("join-right", vec![c, a, b], format!("{c}⊗({a}∨{b})"));
                }
            }
        }
    }
    let bot = lat.bottom();
    for a in 0..n {
        if t(bot, a) != bot {
            report.violate("bottom-left", vec![a], format!("⊥⊗{a} ≠ ⊥"));
        }
        if t(a, bot) != bot {
            report.violate("bottom-right", vec![a], format!("{a}⊗⊥ ≠ ⊥"));
        }
    }
    if k == bot {
        report.note("trivial quantale: unit equals bottom");
    }
    Ok(report)
}

/// A finite quantale with cached residuation.
///
/// The multiplication need not be commutative; such quantales can serve as
/// targets of quantale morphisms but are rejected by [`Quantale::require_base`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quantale {
    name: String,
    names: Vec<String>,
    lattice: FiniteLattice,
    tensor: Vec<usize>,
    unit: usize,
    residual: Vec<usize>,
    commutative: bool,
}

impl fmt::Debug for Quantale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quantale({}, {} elements)", self.name, self.size())
    }
}

impl Quantale {
    /// Validates and builds a quantale. Commutativity failures are recorded,
    /// not rejected.
    pub fn new(name: impl Into<String>, data: QuantaleData) -> Result<Self> {
        let mut report = check_quantale(&data)?;
        let commutative = !report.has_law("commutativity");
        report.violations.retain(|v| v.law != "commutativity");
        if !report.is_ok() {
            return Err(Error::Law(report));
        }
        let n = data.elements.len();
        let lattice = FiniteLattice::from_leq(data.leq)?;
        let tensor: Vec<usize> = data.tensor.into_iter().flatten().collect();
        let mut residual = vec![0; n * n];
        for v in 0..n {
            for u in 0..n {
                residual[v * n + u] =
                    lattice.join_all((0..n).filter(|&w| lattice.leq(tensor[v * n + w], u)));
            }
        }
        Ok(Quantale {
            name: name.into(),
            names: data.elements,
            lattice,
            tensor,
            unit: data.unit,
            residual,
            commutative,
        })
    }

    /// Builds from a lattice and a multiplication function.
    pub fn from_fn(
        name: impl Into<String>,
        names: Vec<String>,
        lattice: &FiniteLattice,
        tensor: impl Fn(usize, usize) -> usize,
        unit: usize,
    ) -> Result<Self> {
        let n = lattice.size();
        let data = QuantaleData {
            elements: names,
            leq: lattice.leq_table(),
            tensor: (0..n).map(|a| (0..n).map(|b| tensor(a, b)).collect()).collect(),
            unit,
        };
        Self::new(name, data)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, e: usize) -> &str {
        &self.names[e]
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn size(&self) -> usize {
        self.lattice.size()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        self.lattice.elements()
    }

    pub fn tensor(&self, a: usize, b: usize) -> usize {
        self.tensor[a * self.size() + b]
    }

    /// `[v,u]`: the largest `w` with `v⊗w ≤ u`.
    pub fn residual(&self, v: usize, u: usize) -> usize {
        self.residual[v * self.size() + u]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn bottom(&self) -> usize {
        self.lattice.bottom()
    }

    pub fn top(&self) -> usize {
        self.lattice.top()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.lattice.leq(a, b)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.lattice.join(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.lattice.meet(a, b)
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        self.lattice.join_all(items)
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        self.lattice.meet_all(items)
    }

    /// `⊗` over a sequence; the empty product is the unit.
    pub fn tensor_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.unit, |acc, x| self.tensor(acc, x))
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_trivial(&self) -> bool {
        self.unit == self.bottom()
    }

    /// Errors unless the quantale may be used as an enrichment base.
    pub fn require_base(&self) -> Result<()> {
        if self.commutative {
            Ok(())
        } else {
            Err(Error::precondition(format!(
                "quantale {} is not commutative and cannot be used as a base (target-only)",
                self.name
            )))
        }
    }

    pub fn to_data(&self) -> QuantaleData {
        let n = self.size();
        QuantaleData {
            elements: self.names.clone(),
            leq: self.lattice.leq_table(),
            tensor: (0..n).map(|a| (0..n).map(|b| self.tensor(a, b)).collect()).collect(),
            unit: self.unit,
        }
    }

    pub fn residual_table(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        (0..n).map(|v| (0..n).map(|u| self.residual(v, u)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::catalog;

    #[test]
    fn two_implication() {
        let two = catalog::two();
        assert_eq!(two.residual(0, 0), 1);
        assert_eq!(two.residual(1, 0), 0);
        assert_eq!(two.residual(0, 1), 1);
    }

    #[test]
    fn residual_of_unit_is_identity() {
        for (_, q) in catalog::builtin_catalog() {
            for u in q.elements() {
                assert_eq!(q.residual(q.unit(), u), u, "{}", q.name());
            }
        }
    }

    #[test]
    fn lukasiewicz_half_implies_zero() {
        let l = catalog::lukasiewicz(3).unwrap();
        // brute force: largest w with h⊗w ≤ 0
        let h = 1;
        let expected = l
            .elements()
            .filter(|&w| l.leq(l.tensor(h, w), 0))
            .max()
            .unwrap();
        assert_eq!(expected, 1);
        assert_eq!(l.residual(h, 0), expected);
    }

    #[test]
    fn max_chain_mutant_is_caught() {
        // ⊗ = max with unit 0 is a quantale on the chain read upside down only;
        // on the plain chain it fails join preservation at ⊥. Corrupt (1,2) too.
        let mut data = QuantaleData {
            elements: vec!["0".into(), "1".into(), "2".into()],
            leq: FiniteLattice::chain(3).leq_table(),
            tensor: (0..3).map(|a| (0..3).map(|b| a.max(b)).collect()).collect(),
            unit: 0,
        };
        data.tensor[1][2] = 0;
        let r = check_quantale(&data).unwrap();
        assert!(!r.is_ok());
        assert!(r
            .violations
            .iter()
            .any(|v| (v.law == "associativity" || v.law.starts_with("join")) && v.witness.contains(&1)));
    }

    #[test]
    fn noncommutative_base_rejected() {
        let e = catalog::endo_quantale_chain3();
        assert!(!e.is_commutative());
        assert!(e.require_base().is_err());
    }
}
