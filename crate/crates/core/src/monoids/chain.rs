//! The chain acted quantale ↔ central embedding ↔ monoid in V-Mod ↔ monoid
//! in Alg(P_V) ↔ representable (L,V)-category.

use std::fmt;
use std::str::FromStr;

use crate::lv::{injective_station, lv_to_acted, TruncatedLVCategory};
use crate::pvalg::{algebra_to_module, check_bimorphism_componentwise, module_to_algebra, PVAlgebra};
use crate::report::LawReport;
use crate::{Error, Result};

use super::{
    acted_to_central, central_to_acted, central_to_monoid, monoid_to_central, same_lattice, same_quantale_tables,
    ActedQuantale, CentralEmbedding, ModMonoid,
};

/// A monoid in Alg(P_V): an algebra with a multiplication that is a
/// bimorphism, associative and unital.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgMonoid {
    algebra: PVAlgebra,
    mult: Vec<usize>,
    unit: usize,
}

impl AlgMonoid {
    pub fn check(algebra: &PVAlgebra, mult: &[usize], unit: usize) -> Result<LawReport> {
        let n = algebra.size();
        if mult.len() != n * n || unit >= n {
            return Err(Error::input("multiplication must be a table A×A → A with a unit in A"));
        }
        let mut report = LawReport::new("monoid in Alg(P_V)");
        report.absorb("bimorphism:", check_bimorphism_componentwise(algebra, algebra, algebra, mult)?);
        let m = |x: usize, y: usize| mult[x * n + y];
        for x in 0..n {
            if m(unit, x) != x || m(x, unit) != x {
                report.violate("unit", vec![x], format!("{unit} is not a unit at {x}"));
            }
            for y in 0..n {
                for z in 0..n {
                    if m(m(x, y), z) != m(x, m(y, z)) {
                        report.violate("associativity", vec![x, y, z], "multiplication is not associative");
                    }
                }
            }
        }
        Ok(report)
    }

    pub fn new(algebra: PVAlgebra, mult: Vec<usize>, unit: usize) -> Result<Self> {
        let report = Self::check(&algebra, &mult, unit)?;
        if !report.is_ok() {
            return Err(Error::Law(report));
        }
        Ok(AlgMonoid { algebra, mult, unit })
    }

    /// Same multiplication on the algebra of the module.
    pub fn from_mod_monoid(m: &ModMonoid) -> Result<Self> {
        AlgMonoid::new(module_to_algebra(m.module())?, m.mult_table().to_vec(), m.unit())
    }

    pub fn to_mod_monoid(&self) -> Result<ModMonoid> {
        ModMonoid::new(algebra_to_module(&self.algebra)?, self.mult.clone(), self.unit)
    }

    pub fn algebra(&self) -> &PVAlgebra {
        &self.algebra
    }

    pub fn mult_table(&self) -> &[usize] {
        &self.mult
    }

    pub fn unit(&self) -> usize {
        self.unit
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StationKind {
    Acted,
    Central,
    Monoid,
    AlgMonoid,
    Representable,
}

impl StationKind {
    pub const ALL: [StationKind; 5] =
        [StationKind::Acted, StationKind::Central, StationKind::Monoid, StationKind::AlgMonoid, StationKind::Representable];

    pub fn name(self) -> &'static str {
        match self {
            StationKind::Acted => "acted",
            StationKind::Central => "central",
            StationKind::Monoid => "monoid",
            StationKind::AlgMonoid => "alg-monoid",
            StationKind::Representable => "representable",
        }
    }
}

impl fmt::Display for StationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StationKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::input(format!("unknown station `{s}` (acted, central, monoid, alg-monoid, representable)")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Station {
    Acted(ActedQuantale),
    Central(CentralEmbedding),
    Monoid(ModMonoid),
    AlgMonoid(AlgMonoid),
    Representable(TruncatedLVCategory),
}

impl Station {
    pub fn kind(&self) -> StationKind {
        match self {
            Station::Acted(_) => StationKind::Acted,
            Station::Central(_) => StationKind::Central,
            Station::Monoid(_) => StationKind::Monoid,
            Station::AlgMonoid(_) => StationKind::AlgMonoid,
            Station::Representable(_) => StationKind::Representable,
        }
    }
}

/// Every station of one object, and the laws and round trips checked on
/// the way.
#[derive(Clone, Debug)]
pub struct ChainReport {
    pub stations: Vec<Station>,
    pub report: LawReport,
}

impl ChainReport {
    pub fn station(&self, kind: StationKind) -> &Station {
        &self.stations[kind as usize]
    }
}

fn to_acted(s: &Station) -> Result<ActedQuantale> {
    match s {
        Station::Acted(a) => Ok(a.clone()),
        Station::Central(f) => central_to_acted(f),
        Station::Monoid(m) => central_to_acted(&monoid_to_central(m)?),
        Station::AlgMonoid(am) => central_to_acted(&monoid_to_central(&am.to_mod_monoid()?)?),
        Station::Representable(c) => lv_to_acted(c),
    }
}

fn from_acted(a: &ActedQuantale, kind: StationKind, max_len: usize, n_blocks: usize, cert: &mut LawReport) -> Result<Station> {
    Ok(match kind {
        StationKind::Acted => Station::Acted(a.clone()),
        StationKind::Central => Station::Central(acted_to_central(a)?),
        StationKind::Monoid => {
            let m = central_to_monoid(&acted_to_central(a)?)?;
            cert.absorb("monoid:", m.check_tensor_form()?);
            Station::Monoid(m)
        }
        StationKind::AlgMonoid => Station::AlgMonoid(AlgMonoid::from_mod_monoid(&central_to_monoid(&acted_to_central(a)?)?)?),
        StationKind::Representable => {
            let (lv, c) = injective_station(a, max_len, n_blocks)?;
            cert.absorb("representable:", c);
            Station::Representable(lv)
        }
    })
}

/// Equality of tables, names ignored.
fn same_station(a: &Station, b: &Station) -> bool {
    match (a, b) {
        (Station::Acted(x), Station::Acted(y)) => {
            same_quantale_tables(x.base(), y.base())
                && same_quantale_tables(x.quantale(), y.quantale())
                && x.action() == y.action()
        }
        (Station::Central(x), Station::Central(y)) => {
            same_quantale_tables(x.source(), y.source()) && same_quantale_tables(x.target(), y.target()) && x.map() == y.map()
        }
        (Station::Monoid(x), Station::Monoid(y)) => {
            same_lattice(x.module().carrier(), y.module().carrier())
                && x.module().action() == y.module().action()
                && x.mult_table() == y.mult_table()
                && x.unit() == y.unit()
        }
        (Station::AlgMonoid(x), Station::AlgMonoid(y)) => {
            x.algebra().table() == y.algebra().table() && x.mult_table() == y.mult_table() && x.unit() == y.unit()
        }
        (Station::Representable(x), Station::Representable(y)) => x.hom().table() == y.hom().table(),
        _ => false,
    }
}

/// Computes every station from `start`, then sends each station back to an
/// acted quantale and out again to `start`'s kind; law `roundtrip` with
/// witness `[station index]` if any table differs. Station laws are absorbed
/// with the station name as prefix.
pub fn equivalence_chain(start: &Station, max_len: usize, n_blocks: usize) -> Result<ChainReport> {
    let hub = to_acted(start)?;
    let mut report = LawReport::new(format!(
        "equivalence chain from {} ({} over {}), lists ≤ {max_len}, ≤ {n_blocks} blocks",
        start.kind(),
        hub.quantale().name(),
        hub.base().name()
    ));
    let mut stations = Vec::with_capacity(StationKind::ALL.len());
    for kind in StationKind::ALL {
        stations.push(from_acted(&hub, kind, max_len, n_blocks, &mut report)?);
    }
    if !same_station(start, &stations[start.kind() as usize]) {
        report.violate("roundtrip", vec![start.kind() as usize], format!("{} is not recovered from the chain", start.kind()));
    }
    let mut scratch = LawReport::new("");
    for s in &stations {
        let back = to_acted(s)?;
        if !same_station(&Station::Acted(back.clone()), &Station::Acted(hub.clone())) {
            report.violate("roundtrip", vec![s.kind() as usize], format!("{} → acted differs from the hub", s.kind()));
            continue;
        }
        if s.kind() != start.kind() {
            let again = from_acted(&back, start.kind(), max_len, n_blocks, &mut scratch)?;
            if !same_station(&again, start) {
                report.violate("roundtrip", vec![s.kind() as usize], format!("{} → {} differs from the input", s.kind(), start.kind()));
            }
        }
    }
    Ok(ChainReport { stations, report })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::monoids::{free_monoid_algebra, FiniteMonoid};
    use crate::order::catalog;

    #[test]
    fn base_on_itself() {
        for (_, v) in catalog::base_catalog().into_iter().take(3) {
            let v = Arc::new(v);
            let a = ActedQuantale::on_itself(v.clone()).unwrap();
            let chain = equivalence_chain(&Station::Acted(a), 2, 2).unwrap();
            assert!(chain.report.is_ok(), "{}", chain.report);
            match chain.station(StationKind::Central) {
                Station::Central(f) => assert_eq!(f.map(), (0..v.size()).collect::<Vec<_>>()),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn two_into_endo_from_every_station() {
        let two = Arc::new(catalog::two());
        let endo = Arc::new(catalog::endo_quantale_chain3());
        let a = ActedQuantale::over_two(two, endo).unwrap();
        let chain = equivalence_chain(&Station::Acted(a), 3, 3).unwrap();
        assert!(chain.report.is_ok(), "{}", chain.report);
        for s in &chain.stations {
            let again = equivalence_chain(s, 3, 3).unwrap();
            assert!(again.report.is_ok(), "{}", again.report);
        }
    }

    #[test]
    fn free_monoid_algebra_chain() {
        let c3 = Arc::new(catalog::chain_min(3).unwrap());
        let m = free_monoid_algebra(&c3, &FiniteMonoid::cyclic(2).unwrap()).unwrap();
        let chain = equivalence_chain(&Station::Monoid(m), 2, 2).unwrap();
        assert!(chain.report.is_ok(), "{}", chain.report);
    }

    #[test]
    fn kinds_parse() {
        for k in StationKind::ALL {
            assert_eq!(k.name().parse::<StationKind>().unwrap(), k);
        }
        assert!("quantale".parse::<StationKind>().is_err());
    }
}
