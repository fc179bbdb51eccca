use std::sync::Arc;

use super::quantale::Quantale;
use crate::report::LawReport;
use crate::{Error, Result};

/// Checks that `map` is a morphism of quantales `source → target`:
/// binary joins `(a,b)`, bottom `()`, multiplication `(a,b)` and unit `()`.
pub fn check_quantale_morphism(
    source: &Quantale,
    target: &Quantale,
    map: &[usize],
) -> Result<LawReport> {
    if map.len() != source.size() {
        return Err(Error::input(format!(
            "map has {} entries, source has {} elements",
            map.len(),
            source.size()
        )));
    }
    if let Some(&bad) = map.iter().find(|&&y| y >= target.size()) {
        return Err(Error::input(format!("image {bad} outside the target")));
    }
    let mut report = LawReport::new(format!("quantale morphism {} → {}", source.name(), target.name()));
    let f = |a: usize| map[a];
    if f(source.bottom()) != target.bottom() {
        report.violate("bottom", vec![], "⊥ not preserved");
    }
    if f(source.unit()) != target.unit() {
        report.violate(
            "unit",
            vec![source.unit()],
            format!("unit maps to {} instead of {}", f(source.unit()), target.unit()),
        );
    }
    for a in source.elements() {
        for b in source.elements() {
            if a < b && f(source.join(a, b)) != target.join(f(a), f(b)) {
                report.violate("join", vec![a, b], format!("f({a}∨{b}) ≠ f({a})∨f({b})"));
            }
            if f(source.tensor(a, b)) != target.tensor(f(a), f(b)) {
                report.violate("tensor", vec![a, b], format!("f({a}⊗{b}) ≠ f({a})⊗f({b})"));
            }
        }
    }
    Ok(report)
}

/// A validated quantale morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantaleMorphism {
    pub source: Arc<Quantale>,
    pub target: Arc<Quantale>,
    pub map: Vec<usize>,
}

impl QuantaleMorphism {
    pub fn new(source: Arc<Quantale>, target: Arc<Quantale>, map: Vec<usize>) -> Result<Self> {
        check_quantale_morphism(&source, &target, &map)?.into_result()?;
        Ok(QuantaleMorphism { source, target, map })
    }

    pub fn identity(q: Arc<Quantale>) -> Self {
        let map = q.elements().collect();
        QuantaleMorphism { source: q.clone(), target: q, map }
    }

    pub fn apply(&self, v: usize) -> usize {
        self.map[v]
    }
}

/// Every quantale morphism between two finite quantales, by backtracking.
pub fn enumerate_quantale_morphisms(source: &Quantale, target: &Quantale) -> Vec<Vec<usize>> {
    let n = source.size();
    let order = source.lattice().linear_extension();
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    fn consistent(source: &Quantale, target: &Quantale, map: &[usize]) -> bool {
        for a in source.elements() {
            if map[a] == usize::MAX {
                continue;
            }
            for b in source.elements() {
                if map[b] == usize::MAX {
                    continue;
                }
                let j = source.join(a, b);
                if map[j] != usize::MAX && map[j] != target.join(map[a], map[b]) {
                    return false;
                }
                let t = source.tensor(a, b);
                if map[t] != usize::MAX && map[t] != target.tensor(map[a], map[b]) {
                    return false;
                }
            }
        }
        true
    }
    fn go(
        i: usize,
        order: &[usize],
        source: &Quantale,
        target: &Quantale,
        map: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == order.len() {
            out.push(map.clone());
            return;
        }
        let a = order[i];
        let forced = if a == source.bottom() {
            Some(target.bottom())
        } else if a == source.unit() {
            Some(target.unit())
        } else {
            None
        };
        for y in target.elements() {
            if forced.is_some_and(|f| f != y) {
                continue;
            }
            map[a] = y;
            if consistent(source, target, map) {
                go(i + 1, order, source, target, map, out);
            }
            map[a] = usize::MAX;
        }
    }
    go(0, &order, source, target, &mut map, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::catalog;

    #[test]
    fn identity_passes() {
        let q = catalog::lukasiewicz(4).unwrap();
        let id: Vec<usize> = q.elements().collect();
        assert!(check_quantale_morphism(&q, &q, &id).unwrap().is_ok());
    }

    #[test]
    fn two_into_chain() {
        let two = catalog::two();
        let c3 = catalog::chain_min(3).unwrap();
        assert!(check_quantale_morphism(&two, &c3, &[0, 2]).unwrap().is_ok());
        let bad = check_quantale_morphism(&two, &c3, &[0, 1]).unwrap();
        assert!(bad.has_law("unit"));
    }

    #[test]
    fn size_mismatch_is_input_error() {
        let two = catalog::two();
        assert!(matches!(
            check_quantale_morphism(&two, &two, &[0]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn enumeration_matches_filter() {
        let c3 = catalog::chain_min(3).unwrap();
        let endo = catalog::endo_quantale_chain3();
        let found = enumerate_quantale_morphisms(&c3, &endo);
        let mut brute = Vec::new();
        for a in 0..6 {
            for b in 0..6 {
                for c in 0..6 {
                    let m = vec![a, b, c];
                    if check_quantale_morphism(&c3, &endo, &m).unwrap().is_ok() {
                        brute.push(m);
                    }
                }
            }
        }
        assert_eq!(found, brute);
    }
}
