//! Builtin finite quantales.
//!
//! `chain_min` and `lukasiewicz` stand in for the infinite examples (frames
//! and the extended positive reals); `endo_quantale` supplies a
//! noncommutative quantale for use as a target only.

use super::lattice::FiniteLattice;
use super::quantale::Quantale;
use crate::enumerate::Tuples;
use crate::{Error, Result};

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// The two-element boolean algebra with `∧` as multiplication and `⇒` as
/// internal hom.
pub fn two() -> Quantale {
    Quantale::from_fn("two", numbered(2), &FiniteLattice::chain(2), |a, b| a.min(b), 1)
        .expect("two is a quantale")
}

/// Largest parameter accepted by the chain builtins.
pub const MAX_CHAIN: usize = 64;

/// The chain `0 < ... < n-1` as a frame: `⊗ = min`, unit `n-1`.
pub fn chain_min(n: usize) -> Result<Quantale> {
    if !(2..=MAX_CHAIN).contains(&n) {
        return Err(Error::input(format!("chain_min needs 2 <= n <= {MAX_CHAIN}, got {n}")));
    }
    Quantale::from_fn(
        format!("chain_min({n})"),
        numbered(n),
        &FiniteLattice::chain(n),
        |a, b| a.min(b),
        n - 1,
    )
}

/// The `n`-element Łukasiewicz chain: element `i` stands for `i/(n-1)` and
/// `a⊗b = max(0, a+b-1)`.
pub fn lukasiewicz(n: usize) -> Result<Quantale> {
    if !(2..=MAX_CHAIN).contains(&n) {
        return Err(Error::input(format!("lukasiewicz needs 2 <= n <= {MAX_CHAIN}, got {n}")));
    }
    let top = n - 1;
    Quantale::from_fn(
        format!("lukasiewicz({n})"),
        numbered(n),
        &FiniteLattice::chain(n),
        |a, b| (a + b).saturating_sub(top),
        top,
    )
}

/// The four-element boolean algebra `2×2` as a frame.
///
/// Element ids are bitmasks: `00`, `10`, `01`, `11` in that order.
pub fn bool_square() -> Quantale {
    let names = ["00", "10", "01", "11"].iter().map(|s| s.to_string()).collect();
    Quantale::from_fn("bool_square", names, &FiniteLattice::powerset(2), |a, b| a & b, 3)
        .expect("bool_square is a quantale")
}

/// Join-preserving endomaps of a lattice under composition,
/// `(f∗g)(x) = f(g(x))`, ordered pointwise.
///
/// Elements are listed lexicographically by their value tables and named by
/// those tables (`f012` is the identity on a 3-chain).
pub fn endo_quantale(base: &FiniteLattice) -> Result<Quantale> {
    let n = base.size();
    if n > 6 {
        return Err(Error::Resource {
            guard: "endo-quantale",
            needed: n as u128,
            limit: 6,
        });
    }
    let maps: Vec<Vec<usize>> = Tuples::new(n, n)
        .filter(|f| {
            f[base.bottom()] == base.bottom()
                && base.elements().all(|a| {
                    base.elements().all(|b| f[base.join(a, b)] == base.join(f[a], f[b]))
                })
        })
        .collect();
    let m = maps.len();
    let idx = |f: &Vec<usize>| maps.iter().position(|g| g == f).expect("closed under composition");
    let lattice = FiniteLattice::from_fn(m, |a, b| base.elements().all(|x| base.leq(maps[a][x], maps[b][x])))?;
    let names: Vec<String> = maps
        .iter()
        .map(|f| format!("f{}", f.iter().map(|v| v.to_string()).collect::<String>()))
        .collect();
    let identity: Vec<usize> = base.elements().collect();
    let unit = idx(&identity);
    let compose: Vec<Vec<usize>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| idx(&base.elements().map(|x| maps[a][maps[b][x]]).collect()))
                .collect()
        })
        .collect();
    Quantale::from_fn(format!("endo_quantale({n}-element lattice)"), names, &lattice, |a, b| compose[a][b], unit)
}

/// `endo_quantale` of the 3-chain: six elements, noncommutative.
pub fn endo_quantale_chain3() -> Quantale {
    endo_quantale(&FiniteLattice::chain(3))
        .expect("endo quantale of a chain")
        .with_name("endo_quantale(chain_min(3))")
}

/// The default catalog, in a fixed order.
pub fn builtin_catalog() -> Vec<(String, Quantale)> {
    let mut out = vec![("two".to_string(), two())];
    for n in 3..=5 {
        out.push((format!("chain_min({n})"), chain_min(n).expect("n >= 2")));
    }
    for n in 3..=5 {
        out.push((format!("lukasiewicz({n})"), lukasiewicz(n).expect("n >= 2")));
    }
    out.push(("bool_square".into(), bool_square()));
    out.push(("endo_quantale(chain_min(3))".into(), endo_quantale_chain3()));
    out
}

/// Commutative entries of the catalog, i.e. those usable as a base.
pub fn base_catalog() -> Vec<(String, Quantale)> {
    builtin_catalog()
        .into_iter()
        .filter(|(_, q)| q.is_commutative())
        .collect()
}

/// Resolves a builtin by name, e.g. `two`, `chain_min(4)`, `lukasiewicz(3)`.
pub fn builtin(name: &str) -> Result<Quantale> {
    let name = name.trim();
    let arg = |prefix: &str| -> Option<Result<usize>> {
        let rest = name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
        Some(
            rest.trim()
                .parse::<usize>()
                .map_err(|_| Error::input(format!("bad size in builtin `{name}`"))),
        )
    };
    match name {
        "two" => Ok(two()),
        "bool_square" => Ok(bool_square()),
        "endo_quantale(chain_min(3))" | "endo_chain3" => Ok(endo_quantale_chain3()),
        _ => {
            if let Some(n) = arg("chain_min") {
                chain_min(n?)
            } else if let Some(n) = arg("lukasiewicz") {
                lukasiewicz(n?)
            } else {
                Err(Error::input(format!("unknown builtin quantale `{name}`")))
            }
        }
    }
    .map(|q| q.with_name(name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::quantale::check_quantale;

    #[test]
    fn catalog_passes_laws() {
        for (name, q) in builtin_catalog() {
            let r = check_quantale(&q.to_data()).unwrap();
            let non_comm: Vec<_> = r.violations.iter().filter(|v| v.law != "commutativity").collect();
            assert!(non_comm.is_empty(), "{name}: {r}");
            assert_eq!(r.has_law("commutativity"), name.starts_with("endo"), "{name}");
        }
    }

    #[test]
    fn endo_has_six_maps() {
        let e = endo_quantale_chain3();
        assert_eq!(e.size(), 6);
        assert_eq!(
            e.element_names(),
            &["f000", "f001", "f002", "f011", "f012", "f022"]
        );
        assert_eq!(e.element_name(e.unit()), "f012");
        assert_eq!(e.element_name(e.bottom()), "f000");
    }

    #[test]
    fn small_sizes_rejected() {
        assert!(chain_min(1).is_err());
        assert!(lukasiewicz(0).is_err());
        assert!(builtin("chain_min(1)").is_err());
        assert!(builtin("nope").is_err());
        assert_eq!(builtin("lukasiewicz(4)").unwrap().size(), 4);
    }
}
