//! The `.qlab` text format: a hand-written lexer and recursive-descent
//! parser with spanned diagnostics, and canonical text and JSON emitters.
//!
//! ```text
//! quantale L3 {
//!   elements: [0, h, 1]
//!   order: 0 < h < 1
//!   tensor: builtin lukasiewicz(3)
//!   unit: 1
//! }
//! vcategory X over L3 { objects: [x, y] hom: { (x,y): h } }
//! ```
//!
//! Definitions hold raw tables; objects are built on demand, so a file may
//! contain structures that fail their laws and still be checked.

mod diagnostic;
mod emit;
mod lexer;
mod parser;

use std::sync::Arc;

pub use diagnostic::{Diagnostic, Severity, Span};
pub use emit::{emit, emit_json};
pub use parser::{parse, parse_with, ParseMode};

use crate::lv::{check_lv_category, injective_station, LVRelation, ListIndex, TruncatedLVCategory};
use crate::monoids::{
    central_to_acted, check_acted, check_central, check_mod_monoid, monoid_to_central, ActedQuantale, CentralEmbedding,
    ModMonoid,
};
use crate::order::{catalog, check_complete_lattice, check_quantale, FiniteLattice, Quantale, QuantaleData};
use crate::report::LawReport;
use crate::vcat::{check_vcategory, check_vfunctor, VCategory};
use crate::vmat::VMatrix;
use crate::vmod::{check_vmodule, VModule};
use crate::{Error, Result};

/// A parsed document: definitions in source order and the notes recording
/// applied defaults.
#[derive(Clone, Debug, Default)]
pub struct SpecDocument {
    pub definitions: Vec<Definition>,
    pub notes: Vec<Diagnostic>,
}

#[derive(Clone, Debug)]
pub struct Definition {
    pub name: String,
    pub span: Span,
    pub item: Item,
}

/// Raw tables with elements as indices. References to other definitions or
/// to builtin quantales are kept by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Quantale(QuantaleData),
    VCategory { base: String, objects: Vec<String>, hom: Vec<usize> },
    VFunctor { source: String, target: String, map: Vec<usize> },
    /// `action` is `|V|×|X|`, row `v`.
    Module { base: String, carrier: Vec<String>, leq: Vec<Vec<bool>>, action: Vec<usize> },
    Monoid { module: String, mult: Vec<usize>, unit: usize },
    Embedding { source: String, target: String, map: Vec<usize> },
    Acted { base: String, quantale: String, action: Vec<usize> },
    /// `hom` is indexed `list index × object` as in [`ListIndex`].
    LVCategory { base: String, objects: Vec<String>, max_len: usize, hom: Vec<usize> },
    /// Built from a `monoid` or `acted` definition.
    Representable { of: String, max_len: usize },
}

impl Item {
    pub fn kind(&self) -> &'static str {
        match self {
            Item::Quantale(_) => "quantale",
            Item::VCategory { .. } => "vcategory",
            Item::VFunctor { .. } => "vfunctor",
            Item::Module { .. } => "module",
            Item::Monoid { .. } => "monoid",
            Item::Embedding { .. } => "embedding",
            Item::Acted { .. } => "acted",
            Item::LVCategory { .. } | Item::Representable { .. } => "lvcategory",
        }
    }
}

impl SpecDocument {
    pub fn get(&self, name: &str) -> Option<&Definition> {
        self.definitions.iter().find(|d| d.name == name)
    }

    /// Same names and tables in the same order; spans and notes ignored.
    pub fn same_content(&self, other: &SpecDocument) -> bool {
        self.definitions.len() == other.definitions.len()
            && self.definitions.iter().zip(&other.definitions).all(|(a, b)| a.name == b.name && a.item == b.item)
    }

    fn item(&self, name: &str, kind: &str) -> Result<&Item> {
        let def = self.get(name).ok_or_else(|| Error::input(format!("no definition named `{name}`")))?;
        if def.item.kind() != kind {
            return Err(Error::input(format!("`{name}` is a {}, not a {kind}", def.item.kind())));
        }
        Ok(&def.item)
    }

    /// A `quantale` definition, or else a builtin such as `chain_min(3)`.
    pub fn quantale(&self, name: &str) -> Result<Arc<Quantale>> {
        match self.get(name).map(|d| &d.item) {
            Some(Item::Quantale(data)) => Ok(Arc::new(Quantale::new(name, data.clone())?)),
            Some(other) => Err(Error::input(format!("`{name}` is a {}, not a quantale", other.kind()))),
            None => catalog::builtin(name).map(Arc::new),
        }
    }

    pub fn vcategory(&self, name: &str) -> Result<VCategory> {
        let Item::VCategory { base, objects, hom } = self.item(name, "vcategory")? else { unreachable!() };
        let n = objects.len();
        let hom = VMatrix::new(self.quantale(base)?, n, n, hom.clone())?;
        VCategory::with_names(hom, objects.clone())
    }

    pub fn vfunctor(&self, name: &str) -> Result<(VCategory, VCategory, Vec<usize>)> {
        let Item::VFunctor { source, target, map } = self.item(name, "vfunctor")? else { unreachable!() };
        Ok((self.vcategory(source)?, self.vcategory(target)?, map.clone()))
    }

    pub fn module(&self, name: &str) -> Result<VModule> {
        let Item::Module { base, carrier, leq, action } = self.item(name, "module")? else { unreachable!() };
        let lattice = FiniteLattice::from_leq(leq.clone())?;
        VModule::new(self.quantale(base)?, lattice, action.clone())?.named(carrier.clone())
    }

    pub fn monoid(&self, name: &str) -> Result<ModMonoid> {
        let Item::Monoid { module, mult, unit } = self.item(name, "monoid")? else { unreachable!() };
        ModMonoid::new(self.module(module)?, mult.clone(), *unit)
    }

    pub fn embedding(&self, name: &str) -> Result<CentralEmbedding> {
        let Item::Embedding { source, target, map } = self.item(name, "embedding")? else { unreachable!() };
        CentralEmbedding::from_map(self.quantale(source)?, self.quantale(target)?, map.clone())
    }

    pub fn acted(&self, name: &str) -> Result<ActedQuantale> {
        let Item::Acted { base, quantale, action } = self.item(name, "acted")? else { unreachable!() };
        ActedQuantale::new(self.quantale(base)?, self.quantale(quantale)?, action.clone())
    }

    /// The acted quantale behind a `monoid` or `acted` definition.
    pub fn acted_of(&self, name: &str) -> Result<ActedQuantale> {
        match self.get(name).map(|d| &d.item) {
            Some(Item::Acted { .. }) => self.acted(name),
            Some(Item::Monoid { .. }) => central_to_acted(&monoid_to_central(&self.monoid(name)?)?),
            _ => Err(Error::input(format!("`{name}` is neither a monoid nor an acted quantale"))),
        }
    }

    pub fn lvcategory(&self, name: &str) -> Result<TruncatedLVCategory> {
        match self.item(name, "lvcategory")? {
            Item::LVCategory { base, objects, max_len, hom } => {
                let index = ListIndex::new(objects.len(), *max_len)?;
                let rel = LVRelation::new(self.quantale(base)?, index, objects.len(), hom.clone())?;
                TruncatedLVCategory::explicit(rel)?.named(objects.clone())
            }
            Item::Representable { of, max_len } => {
                let (lv, _) = injective_station(&self.acted_of(of)?, *max_len, 1)?;
                Ok(lv)
            }
            _ => unreachable!(),
        }
    }

    /// The law suite of one definition, run on its raw tables. LV categories
    /// are checked with `n_blocks` blocks.
    pub fn check(&self, name: &str, n_blocks: usize) -> Result<LawReport> {
        let def = self.get(name).ok_or_else(|| Error::input(format!("no definition named `{name}`")))?;
        let mut report = match &def.item {
            Item::Quantale(data) => {
                let mut r = check_quantale(data)?;
                if let Some(v) = r.violations.iter().find(|v| v.law == "commutativity") {
                    let note = format!("not commutative at {:?}: usable as a target, not as a base", v.witness);
                    r.violations.retain(|v| v.law != "commutativity");
                    r.note(note);
                }
                r
            }
            Item::VCategory { base, objects, hom } => {
                let n = objects.len();
                check_vcategory(&VMatrix::new(self.quantale(base)?, n, n, hom.clone())?)?
            }
            Item::VFunctor { .. } => {
                let (s, t, map) = self.vfunctor(name)?;
                check_vfunctor(&s, &t, &map)?
            }
            Item::Module { base, leq, action, .. } => {
                let lattice = check_complete_lattice(leq)?;
                if !lattice.is_ok() {
                    lattice
                } else {
                    check_vmodule(&*self.quantale(base)?, &FiniteLattice::from_leq(leq.clone())?, action)?
                }
            }
            Item::Monoid { module, mult, unit } => check_mod_monoid(&self.module(module)?, mult, *unit)?,
            Item::Embedding { source, target, map } => check_central(&*self.quantale(source)?, &*self.quantale(target)?, map)?,
            Item::Acted { base, quantale, action } => check_acted(&*self.quantale(base)?, &*self.quantale(quantale)?, action)?,
            Item::LVCategory { .. } => check_lv_category(&self.lvcategory(name)?, n_blocks)?,
            Item::Representable { of, max_len } => {
                let (_, cert) = injective_station(&self.acted_of(of)?, *max_len, n_blocks)?;
                cert
            }
        };
        report.subject = format!("{} {name}: {}", def.item.kind(), report.subject);
        Ok(report)
    }
}
