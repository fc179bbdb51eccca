//! The acceptance battery behind `qlab suite`.
//!
//! Each criterion draws from its own ChaCha stream derived from the run
//! seed, so a report is a function of the seed alone. Oracles here are
//! written against raw tables and do not call the checkers they test.

use std::collections::BTreeSet;
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dsl::{emit, parse, Diagnostic};
use crate::enumerate::Tuples;
use crate::lv::{compare_pl_pvl, CompareConfig};
use crate::monoids::{
    central_to_acted, check_central, equivalence_chain, free_monoid_algebra, monoid_to_central, same_quantale_tables,
    ActedQuantale, FiniteMonoid, Station,
};
use crate::order::catalog::{base_catalog, bool_square, builtin_catalog, chain_min, endo_quantale_chain3, lukasiewicz, two};
use crate::order::{check_quantale, enumerate_quantale_morphisms, FiniteLattice, Quantale, QuantaleData};
use crate::pvalg::{
    check_monad_laws, enumerate_algebras, is_bimorphism_componentwise, is_bimorphism_strength, module_to_algebra,
    strength_suite, AssocMode, PVAlgebra,
};
use crate::report::LawReport;
use crate::suplat::{enumerate_lattices, enumerate_supmaps, tensor_sup};
use crate::vcat::{check_yoneda, enumerate_vcategories, find_sup, presheaf_category, VCategory};
use crate::vmat::{check_quantaloid, VMatrix};
use crate::vmod::{check_pv_iso, enumerate_modules, module_to_vcat, roundtrip_module, roundtrip_vcat, VModule};
use crate::{Error, Result};

use super::{Check, RunReport};

/// The `.qlab` files shipped with the crate: `(file name, source)`.
pub const CORPUS: &[(&str, &str)] = &[
    ("catalog.qlab", include_str!("../../corpus/catalog.qlab")),
    ("categories.qlab", include_str!("../../corpus/categories.qlab")),
    ("modules.qlab", include_str!("../../corpus/modules.qlab")),
    ("lists.qlab", include_str!("../../corpus/lists.qlab")),
    ("failing.qlab", include_str!("../../corpus/failing.qlab")),
];

/// Inputs that must be rejected with diagnostics.
pub const MALFORMED: &[(&str, &str)] = &[
    ("unclosed.qlab", include_str!("../../corpus/malformed/unclosed.qlab")),
    ("missing_unit.qlab", include_str!("../../corpus/malformed/missing_unit.qlab")),
    ("unknown_object.qlab", include_str!("../../corpus/malformed/unknown_object.qlab")),
];

pub const FUZZ_MUTATIONS: usize = 100_000;

/// Which criteria to run: all of them, or those owned by one module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    All,
    Order,
    Vmat,
    Vcat,
    Suplat,
    PvAlg,
    Vmod,
    Monoids,
    Lv,
    Dsl,
}

impl Scope {
    pub fn name(self) -> &'static str {
        match self {
            Scope::All => "all",
            Scope::Order => "order",
            Scope::Vmat => "vmat",
            Scope::Vcat => "vcat",
            Scope::Suplat => "suplat",
            Scope::PvAlg => "pvalg",
            Scope::Vmod => "vmod",
            Scope::Monoids => "monoids",
            Scope::Lv => "lv",
            Scope::Dsl => "dsl",
        }
    }

    pub fn criteria(self) -> &'static [usize] {
        match self {
            Scope::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13],
            Scope::Order => &[1, 2],
            Scope::Vmat => &[3],
            Scope::Vcat => &[4, 5],
            Scope::Suplat => &[6],
            Scope::PvAlg => &[7, 9],
            Scope::Vmod => &[5, 8],
            Scope::Monoids => &[10, 12],
            Scope::Lv => &[11, 12],
            Scope::Dsl => &[13],
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" | "cli" => Scope::All,
            "order" | "core-order" => Scope::Order,
            "vmat" => Scope::Vmat,
            "vcat" => Scope::Vcat,
            "suplat" => Scope::Suplat,
            "pvalg" | "pv-alg" => Scope::PvAlg,
            "vmod" => Scope::Vmod,
            "monoids" => Scope::Monoids,
            "lv" => Scope::Lv,
            "dsl" => Scope::Dsl,
            _ => {
                return Err(Error::input(format!(
                    "unknown suite scope `{s}` (all, order, vmat, vcat, suplat, pvalg, vmod, monoids, lv, dsl, cli)"
                )))
            }
        })
    }
}

type Criterion = fn(&mut ChaCha8Rng) -> Result<LawReport>;

/// `(number, title, body, truncation)`.
const CRITERIA: &[(usize, &str, Criterion, Option<&str>)] = &[
    (1, "quantale laws", c01_quantale_laws, None),
    (2, "residuation", c02_residuation, None),
    (3, "quantaloid laws", c03_quantaloid, None),
    (4, "yoneda", c04_yoneda, None),
    (5, "module round trips", c05_round_trips, None),
    (6, "sup tensor", c06_sup_tensor, None),
    (7, "monad and strength", c07_monad, None),
    (8, "pv iso", c08_pv_iso, None),
    (9, "bimorphism predicates", c09_bimorphisms, None),
    (10, "monoid equivalences", c10_monoids, None),
    (11, "list monads", c11_list_monads, Some("|X| ≤ 2, lists ≤ 3, 200 sampled functionals per configuration")),
    (12, "station chain", c12_stations, Some("lists ≤ 3, ≤ 3 blocks")),
    (13, "parser", c13_parser, None),
];

/// Runs the criteria of `scope` with streams derived from `seed`.
pub fn run_suite(scope: Scope, seed: u64) -> RunReport {
    let mut report = RunReport::new(format!("suite {scope}"));
    report.seed = Some(seed);
    for &(n, title, body, truncation) in CRITERIA.iter().filter(|c| scope.criteria().contains(&c.0)) {
        report.push(run_criterion(n, title, body, truncation, seed));
    }
    report.finish()
}

/// One criterion as a check with id `cNN title`.
pub fn run_criterion(n: usize, title: &str, body: Criterion, truncation: Option<&str>, seed: u64) -> Check {
    let id = format!("c{n:02} {title}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    match body(&mut rng) {
        Ok(r) => Check::from_report(id, &r, truncation.map(str::to_string)),
        Err(Error::Resource { guard, needed, limit }) => {
            Check::skipped(id, format!("guard `{guard}`: need {needed}, limit {limit}"))
        }
        Err(e) => Check::fail_msg(id, "error", e.to_string()),
    }
}

/// Runs criterion `n` alone.
pub fn criterion(n: usize, seed: u64) -> Option<Check> {
    CRITERIA.iter().find(|c| c.0 == n).map(|&(n, title, body, t)| run_criterion(n, title, body, t, seed))
}

/// Order and multiplication tables read directly, with joins found by
/// searching for least upper bounds.
struct Tables {
    n: usize,
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<usize>>,
    bottom: usize,
    t: Vec<Vec<usize>>,
    k: usize,
}

impl Tables {
    fn new(data: &QuantaleData) -> Self {
        let leq = data.leq.clone();
        let n = leq.len();
        let join = (0..n).map(|a| (0..n).map(|b| least_upper_bound(&leq, a, b)).collect()).collect();
        let bottom = (0..n).find(|&b| (0..n).all(|x| leq[b][x])).expect("lattice has a bottom");
        Tables { n, leq, join, bottom, t: data.tensor.clone(), k: data.unit }
    }

    fn of(q: &Quantale) -> Self {
        Self::new(&q.to_data())
    }

    fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.bottom, |acc, x| self.join[acc][x])
    }

    /// Whether `law` genuinely fails at `w`, in the witness layout of
    /// `check_quantale`.
    fn fails_at(&self, law: &str, w: &[usize]) -> bool {
        let (t, j) = (&self.t, &self.join);
        match (law, w) {
            ("associativity", &[a, b, c]) => t[t[a][b]][c] != t[a][t[b][c]],
            ("commutativity", &[a, b]) => t[a][b] != t[b][a],
            ("unit", &[a]) => t[self.k][a] != a || t[a][self.k] != a,
            ("join-left", &[a, b, c]) => t[j[a][b]][c] != j[t[a][c]][t[b][c]],
            ("join-right", &[c, a, b]) => t[c][j[a][b]] != j[t[c][a]][t[c][b]],
            ("bottom-left", &[a]) => t[self.bottom][a] != self.bottom,
            ("bottom-right", &[a]) => t[a][self.bottom] != self.bottom,
            _ => false,
        }
    }

    fn breaks(&self, law: &str) -> bool {
        let arity = match law {
            "commutativity" => 2,
            "unit" | "bottom-left" | "bottom-right" => 1,
            _ => 3,
        };
        Tuples::new(arity, self.n).any(|w| self.fails_at(law, &w))
    }
}

fn least_upper_bound(leq: &[Vec<bool>], a: usize, b: usize) -> usize {
    let n = leq.len();
    let ub: Vec<usize> = (0..n).filter(|&c| leq[a][c] && leq[b][c]).collect();
    *ub.iter().find(|&&c| ub.iter().all(|&d| leq[c][d])).expect("lattice has joins")
}

/// `f(⊥) = ⊥` and `f(a∨b) = f(a)∨f(b)`, from the order tables alone.
fn preserves_joins(x: &[Vec<bool>], z: &[Vec<bool>], f: &[usize]) -> bool {
    let bot = |l: &[Vec<bool>]| (0..l.len()).find(|&b| (0..l.len()).all(|c| l[b][c])).expect("bottom");
    if f[bot(x)] != bot(z) {
        return false;
    }
    (0..x.len()).all(|a| (0..x.len()).all(|b| f[least_upper_bound(x, a, b)] == least_upper_bound(z, f[a], f[b])))
}

const QUANTALE_LAWS: [&str; 7] =
    ["associativity", "commutativity", "unit", "join-left", "join-right", "bottom-left", "bottom-right"];

const MUTANTS_PER_LAW: usize = 20;

fn c01_quantale_laws(rng: &mut ChaCha8Rng) -> Result<LawReport> {
    let mut out = LawReport::new("quantale laws");
    let catalog = builtin_catalog();
    for (name, q) in &catalog {
        for v in check_quantale(&q.to_data())?.violations {
            // a noncommutative builtin is only used as a target
            if v.law == "commutativity" && !q.is_commutative() {
                continue;
            }
            out.violate(&v.law, v.witness, format!("builtin {name}: {}", v.message));
        }
    }
    for law in QUANTALE_LAWS {
        let mut seen = BTreeSet::new();
        let mut attempts = 0;
        while seen.len() < MUTANTS_PER_LAW {
            attempts += 1;
            if attempts > 200_000 {
                out.violate(law, vec![], format!("only {} mutants breaking {law} were generated", seen.len()));
                break;
            }
            let which = rng.gen_range(0..catalog.len());
            let q = &catalog[which].1;
            if law == "commutativity" && !q.is_commutative() {
                continue;
            }
            let mut data = q.to_data();
            let n = data.elements.len();
            let (k, bot) = (data.unit, q.bottom());
            let a = rng.gen_range(0..n);
            let cell = match law {
                "unit" if rng.gen_bool(0.5) => (k, a),
                "unit" => (a, k),
                "bottom-left" => (bot, a),
                "bottom-right" => (a, bot),
                _ => (a, rng.gen_range(0..n)),
            };
            let value = rng.gen_range(0..n);
            if data.tensor[cell.0][cell.1] == value {
                continue;
            }
            data.tensor[cell.0][cell.1] = value;
            let oracle = Tables::new(&data);
            if !oracle.breaks(law) || !seen.insert((which, cell, value)) {
                continue;
            }
            let report = check_quantale(&data)?;
            let what = format!("mutant of {} at {cell:?} := {value}", catalog[which].0);
            if !report.has_law(law) {
                out.violate(law, vec![which, cell.0, cell.1, value], format!("{what} breaks {law} undetected"));
            }
            for v in &report.violations {
                if !oracle.fails_at(&v.law, &v.witness) {
                    out.violate(&v.law, v.witness.clone(), format!("{what}: witness does not fail"));
                }
            }
        }
    }
    out.note(format!(
        "{} builtins; {MUTANTS_PER_LAW} single-cell mutants for each of {} laws",
        catalog.len(),
        QUANTALE_LAWS.len()
    ));
    Ok(out)
}

fn c02_residuation(_: &mut ChaCha8Rng) -> Result<LawReport> {
    let mut out = LawReport::new("residuation");
    let mut triples = 0;
    for (name, q) in builtin_catalog() {
        let o = Tables::of(&q);
        for v in q.elements() {
            for u in q.elements() {
                let r = q.residual(v, u);
                let expected = o.join_all((0..o.n).filter(|&w| o.leq[o.t[v][w]][u]));
                if r != expected {
                    out.violate("residual", vec![v, u], format!("{name}: [{v},{u}] = {r}, expected {expected}"));
                }
                for w in q.elements() {
                    triples += 1;
                    if o.leq[o.t[v][w]][u] != o.leq[w][r] {
                        out.violate("adjunction", vec![v, w, u], format!("{name}: v⊗w ≤ u and w ≤ [v,u] disagree"));
                    }
                }
            }
        }
    }
    out.note(format!("{triples} triples"));
    Ok(out)
}

fn all_matrices(q: &Arc<Quantale>, rows: usize, cols: usize) -> Result<Vec<VMatrix>> {
    Tuples::new(rows * cols, q.size()).map(|e| VMatrix::new(q.clone(), rows, cols, e)).collect()
}

fn random_matrix(q: &Arc<Quantale>, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Result<VMatrix> {
    VMatrix::new(q.clone(), rows, cols, (0..rows * cols).map(|_| rng.gen_range(0..q.size())).collect())
}

/// Composition over a min-chain: `(s∘r)(x,z) = max_y min(r(x,y), s(y,z))`.
fn min_max_compose(r: &VMatrix, s: &VMatrix) -> Vec<usize> {
    let mut out = Vec::with_capacity(r.rows() * s.cols());
    for x in 0..r.rows() {
        for z in 0..s.cols() {
            out.push((0..r.cols()).map(|y| r.get(x, y).min(s.get(y, z))).max().unwrap_or(0));
        }
    }
    out
}

fn c03_quantaloid(rng: &mut ChaCha8Rng) -> Result<LawReport> {
    let q = Arc::new(chain_min(3)?);
    let mut out = LawReport::new("quantaloid laws over chain_min(3)");
    if !q.elements().all(|a| q.elements().all(|b| q.leq(a, b) == (a <= b) && q.tensor(a, b) == a.min(b))) {
        out.violate("oracle", vec![], "chain_min(3) is not min on index order");
        return Ok(out);
    }
    let record = |out: &mut LawReport, r: LawReport, dims: [usize; 4]| {
        for v in r.violations {
            out.violate(&v.law, dims.to_vec(), v.message);
        }
    };
    let mats: Vec<Vec<Vec<VMatrix>>> =
        (0..=2).map(|r| (0..=2).map(|c| if r > 0 && c > 0 { all_matrices(&q, r, c) } else { Ok(vec![]) }).collect()).collect::<Result<_>>()?;
    let mut exhaustive = 0u64;
    for dims in Tuples::new(4, 2) {
        let [w, x, y, z] = [dims[0] + 1, dims[1] + 1, dims[2] + 1, dims[3] + 1];
        let bottom = VMatrix::bottom(q.clone(), x, y);
        let id = VMatrix::identity(q.clone(), y);
        for r in &mats[w][x] {
            for s in &mats[x][y] {
                if r.then(s)?.entries() != min_max_compose(r, s) {
                    out.violate("compose", vec![w, x, y], "composition differs from max-min");
                }
                for t in &mats[y][z] {
                    exhaustive += 1;
                    record(&mut out, check_quantaloid(r, s, &bottom, t)?, [w, x, y, z]);
                }
                if z == y {
                    for s2 in &mats[x][y] {
                        exhaustive += 1;
                        record(&mut out, check_quantaloid(r, s, s2, &id)?, [w, x, y, z]);
                    }
                }
            }
        }
    }
    const SAMPLES: usize = 1000;
    for _ in 0..SAMPLES {
        let d: Vec<usize> = (0..4).map(|_| rng.gen_range(1..=4)).collect();
        let r = random_matrix(&q, d[0], d[1], rng)?;
        let s = random_matrix(&q, d[1], d[2], rng)?;
        let s2 = random_matrix(&q, d[1], d[2], rng)?;
        let t = random_matrix(&q, d[2], d[3], rng)?;
        if r.then(&s)?.entries() != min_max_compose(&r, &s) {
            out.violate("compose", d.clone(), "composition differs from max-min");
        }
        record(&mut out, check_quantaloid(&r, &s, &s2, &t)?, [d[0], d[1], d[2], d[3]]);
    }
    out.note(format!("{exhaustive} configurations of sizes ≤ 2, {SAMPLES} sampled of sizes ≤ 4"));
    Ok(out)
}

fn is_vcategory(o: &Tables, n: usize, a: &[usize]) -> bool {
    (0..n).all(|x| o.leq[o.k][a[x * n + x]])
        && (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| o.leq[o.t[a[x * n + y]][a[y * n + z]]][a[x * n + z]])))
}

/// `a(y,x)⊗φ(x) ≤ φ(y)`.
fn is_presheaf(o: &Tables, x: &VCategory, phi: &[usize]) -> bool {
    let n = x.size();
    (0..n).all(|a| (0..n).all(|b| o.leq[o.t[x.a(b, a)][phi[a]]][phi[b]]))
}

/// Every V-category on at most three objects over `two` and `chain_min(3)`.
fn small_vcategories() -> Result<Vec<(Arc<Quantale>, Vec<VCategory>)>> {
    let mut out = Vec::new();
    for q in [two(), chain_min(3)?] {
        let q = Arc::new(q);
        let mut cats = Vec::new();
        for n in 1..=3 {
            cats.extend(enumerate_vcategories(&q, n)?);
        }
        out.push((q, cats));
    }
    Ok(out)
}

fn c04_yoneda(_: &mut ChaCha8Rng) -> Result<LawReport> {
    let mut out = LawReport::new("yoneda");
    let mut notes = Vec::new();
    for (q, cats) in small_vcategories()? {
        let o = Tables::of(&q);
        for n in 1..=3 {
            let brute = Tuples::new(n * n, q.size()).filter(|a| is_vcategory(&o, n, a)).count();
            let listed = cats.iter().filter(|x| x.size() == n).count();
            if brute != listed {
                out.violate("vcategory-count", vec![n], format!("{}: {listed} enumerated, {brute} by brute force", q.name()));
            }
        }
        let mut presheaves = 0;
        for (i, x) in cats.iter().enumerate() {
            let n = x.size();
            out.absorb("", check_yoneda(x)?);
            let pc = presheaf_category(x)?;
            let brute = Tuples::new(n, q.size()).filter(|phi| is_presheaf(&o, x, phi)).count();
            if brute != pc.len() {
                out.violate("presheaf-count", vec![i], format!("{} presheaves listed, {brute} by brute force", pc.len()));
            }
            presheaves += pc.len();
            for (gi, g) in pc.presheaves().iter().enumerate() {
                for xo in 0..n {
                    let direct = (0..n).map(|z| q.residual(x.a(z, xo), g[z])).fold(q.top(), |acc, v| q.meet(acc, v));
                    if direct != g[xo] || pc.hom(pc.yoneda()[xo], gi) != g[xo] {
                        out.violate("yoneda", vec![i, xo, gi], format!("hom(y({xo}), g) ≠ g({xo})"));
                    }
                }
            }
        }
        notes.push(format!("{}: {} categories, {presheaves} presheaves", q.name(), cats.len()));
    }
    out.notes.extend(notes);
    Ok(out)
}

fn c05_round_trips(_: &mut ChaCha8Rng) -> Result<LawReport> {
    let mut out = LawReport::new("module round trips");
    let mut cocomplete = 0;
    for (q, cats) in small_vcategories()? {
        for (i, x) in cats.iter().enumerate() {
            if !x.is_separated() {
                continue;
            }
            match find_sup(x) {
                Ok(_) => {}
                Err(Error::NotCocomplete { .. }) => continue,
                Err(e) => return Err(e),
            }
            cocomplete += 1;
            if let Some(d) = roundtrip_vcat(x)?.diff {
                out.violate("vcat-roundtrip", vec![i, d.0, d.1], format!("over {}", q.name()));
            }
        }
    }
    let q = Arc::new(chain_min(3)?);
    let mut modules = 0;
    for size in 1..=3 {
        for l in enumerate_lattices(size)? {
            for m in enumerate_modules(&q, &l)? {
                modules += 1;
                if let Some(d) = roundtrip_module(&m)?.diff {
                    out.violate("module-roundtrip", vec![modules, d.0, d.1], "action tables differ");
                }
                check_induced_hom(&m, &mut out)?;
            }
        }
    }
    out.note(format!("{cocomplete} cocomplete separated categories, {modules} modules over chain_min(3)"));
    Ok(out)
}

/// `a(x,y) = ⋁{v : ρ(v,x) ≤ y}`.
fn check_induced_hom(m: &VModule, out: &mut LawReport) -> Result<()> {
    let x = module_to_vcat(m)?;
    let q = m.base();
    let leq = m.carrier().leq_table();
    let o = Tables::of(q);
    for a in 0..m.size() {
        for b in 0..m.size() {
            let expected = o.join_all(q.elements().filter(|&v| leq[m.act(v, a)][b]));
            if x.a(a, b) != expected {
                out.violate("induced-hom", vec![a, b], format!("a({a},{b}) = {}, expected {expected}", x.a(a, b)));
            }
        }
    }
    Ok(())
}

/// Bimorphisms `X×Y → Z`: rows and columns preserve joins. Rows are drawn
/// from the join-preserving maps `Y → Z`; the `⊥` row is forced.
fn count_bimorphisms(x: &FiniteLattice, y: &FiniteLattice, z: &FiniteLattice) -> u64 {
    let (lx, ly, lz) = (x.leq_table(), y.leq_table(), z.leq_table());
    let rows: Vec<Vec<usize>> = Tuples::new(y.size(), z.size()).filter(|f| preserves_joins(&ly, &lz, f)).collect();
    let zero = rows.iter().position(|f| f.iter().all(|&v| v == z.bottom())).expect("zero map");
    let free: Vec<usize> = x.elements().filter(|&a| a != x.bottom()).collect();
    let mut count = 0;
    let mut choice = vec![zero; x.size()];
    for pick in Tuples::new(free.len(), rows.len()) {
        for (i, &a) in free.iter().enumerate() {
            choice[a] = pick[i];
        }
        let columns_ok = y.elements().all(|b| {
            let col: Vec<usize> = x.elements().map(|a| rows[choice[a]][b]).collect();
            preserves_joins(&lx, &lz, &col)
        });
        count += u64::from(columns_ok);
    }
    count
}

fn c06_sup_tensor(_: &mut ChaCha8Rng) -> Result<LawReport> {
    let mut out = LawReport::new("sup tensor");
    let mut lattices = Vec::new();
    for n in 1..=4 {
        lattices.extend(enumerate_lattices(n)?);
    }
    let mut triples = 0;
    for (i, x) in lattices.iter().enumerate() {
        for (j, y) in lattices.iter().enumerate() {
            let t = tensor_sup(x, y)?;
            for (k, z) in lattices.iter().enumerate() {
                triples += 1;
                let maps = enumerate_supmaps(t.lattice(), z)?.len() as u64;
                let bims = count_bimorphisms(x, y, z);
                if maps != bims {
                    out.violate("bijection", vec![i, j, k], format!("{maps} sup-maps from the tensor, {bims} bimorphisms"));
                }
            }
        }
        let two = FiniteLattice::chain(2);
        if tensor_sup(&two, x)?.lattice().find_isomorphism(x).is_none() {
            out.violate("unit", vec![i], "2⊗X is not isomorphic to X");
        }
    }
    let p = FiniteLattice::powerset(2);
    if tensor_sup(&p, &p)?.lattice().find_isomorphism(&FiniteLattice::powerset(4)).is_none() {
        out.violate("powerset", vec![], "P(2)⊗P(2) is not isomorphic to P(4)");
    }
    out.note(format!("{} lattices up to isomorphism, {triples} triples", lattices.len()));
    Ok(out)
}

fn c07_monad(_: &mut ChaCha8Rng) -> Result<LawReport> {
    let mut out = LawReport::new("monad and strength");
    for (q, max) in [(chain_min(3)?, 2), (two(), 3)] {
        for n in 1..=max {
            let r = match check_monad_laws(&q, n, true) {
                Err(Error::Resource { .. }) => check_monad_laws(&q, n, false)?,
                r => r?,
            };
            for v in r.violations {
                out.violate(&v.law, v.witness, format!("{} on {n} points: {}", q.name(), v.message));
            }
            if !r.notes.is_empty() {
                out.note(format!("{} on {n} points: associativity on generators", q.name()));
            }
        }
    }
    out.absorb("strength:", strength_suite(&chain_min(3)?, 2, 2)?);
    Ok(out)
}

fn c08_pv_iso(_: &mut ChaCha8Rng) -> Result<LawReport> {
    let mut out = LawReport::new("pv iso");
    for (q, max) in [(chain_min(3)?, 2), (two(), 3)] {
        let q = Arc::new(q);
        for n in 1..=max {
            out.absorb(&format!("{} on {n} points: ", q.name()), check_pv_iso(&q, n)?.report);
        }
    }
    Ok(out)
}

fn c09_bimorphisms(rng: &mut ChaCha8Rng) -> Result<LawReport> {
    let mut out = LawReport::new("bimorphism predicates");
    let (mut cases, mut positive) = (0u64, 0u64);
    let mut compare = |a: &PVAlgebra, b: &PVAlgebra, c: &PVAlgebra, f: &[usize], out: &mut LawReport| -> Result<()> {
        cases += 1;
        let (p, s) = (is_bimorphism_componentwise(a, b, c, f)?, is_bimorphism_strength(a, b, c, f)?);
        positive += u64::from(p);
        if p != s {
            out.violate("agreement", f.to_vec(), format!("componentwise {p}, via strength {s}"));
        }
        Ok(())
    };
    let exhaustive = |algs: &[PVAlgebra], compare: &mut dyn FnMut(&PVAlgebra, &PVAlgebra, &PVAlgebra, &[usize], &mut LawReport) -> Result<()>, out: &mut LawReport| -> Result<()> {
        for a in algs {
            for b in algs {
                for c in algs {
                    for f in Tuples::new(a.size() * b.size(), c.size()) {
                        compare(a, b, c, &f, out)?;
                    }
                }
            }
        }
        Ok(())
    };
    let two_algs = enumerate_algebras(&Arc::new(two()), 2, AssocMode::Auto)?;
    exhaustive(&two_algs, &mut compare, &mut out)?;
    let q = Arc::new(chain_min(3)?);
    let mut algs = Vec::new();
    for size in 1..=3 {
        for l in enumerate_lattices(size)? {
            for m in enumerate_modules(&q, &l)? {
                algs.push(module_to_algebra(&m)?);
            }
        }
    }
    let small: Vec<PVAlgebra> = algs.iter().filter(|a| a.size() == 2).cloned().collect();
    exhaustive(&small, &mut compare, &mut out)?;
    const SAMPLES: usize = 500;
    for s in 0..SAMPLES {
        let pick = |rng: &mut ChaCha8Rng| algs[rng.gen_range(0..algs.len())].clone();
        let (a, b, c) = (pick(rng), pick(rng), pick(rng));
        let f: Vec<usize> = if s % 2 == 0 {
            (0..a.size() * b.size()).map(|_| rng.gen_range(0..c.size())).collect()
        } else {
            // products of join-preserving slices hit the positive side often
            let g: Vec<usize> = (0..a.size()).map(|_| rng.gen_range(0..c.size())).collect();
            (0..a.size() * b.size()).map(|i| if i % b.size() == 0 { c.join(&[]) } else { g[i / b.size()] }).collect()
        };
        compare(&a, &b, &c, &f, &mut out)?;
    }
    out.note(format!(
        "{} algebras over two on 2 points, {} over chain_min(3) on ≤ 3 points; {cases} cases, {positive} bimorphisms",
        two_algs.len(),
        algs.len()
    ));
    Ok(out)
}

fn free_z2(base: &Arc<Quantale>) -> Result<Station> {
    Ok(Station::Monoid(free_monoid_algebra(base, &FiniteMonoid::cyclic(2)?)?))
}

fn c10_monoids(_: &mut ChaCha8Rng) -> Result<LawReport> {
    let mut out = LawReport::new("monoid equivalences");
    let two = Arc::new(two());
    let chain3 = Arc::new(chain_min(3)?);
    let endo = Arc::new(endo_quantale_chain3());
    let mut starts = Vec::new();
    for (_, q) in base_catalog() {
        starts.push(Station::Acted(ActedQuantale::on_itself(Arc::new(q))?));
    }
    starts.push(Station::Acted(ActedQuantale::over_two(two.clone(), endo.clone())?));
    starts.push(free_z2(&two)?);
    starts.push(free_z2(&chain3)?);
    for (i, s) in starts.iter().enumerate() {
        let chain = equivalence_chain(s, 2, 2)?;
        for v in chain.report.violations {
            out.violate(&v.law, vec![i], format!("{}: {}", chain.report.subject, v.message));
        }
    }
    let mut rejected = 0;
    for f in enumerate_quantale_morphisms(&chain3, &endo) {
        let central = check_central(&chain3, &endo, &f)?.is_ok();
        let commutes = chain3.elements().all(|v| endo.elements().all(|x| endo.tensor(f[v], x) == endo.tensor(x, f[v])));
        if central != commutes {
            out.violate("centrality", f.clone(), format!("checker says {central}, commutation says {commutes}"));
        }
        rejected += usize::from(!central);
    }
    if rejected == 0 {
        out.violate("centrality", vec![], "no non-central embedding into the endo quantale was rejected");
    }
    out.note(format!("{} starting objects; {rejected} non-central morphisms chain_min(3) → endo rejected", starts.len()));
    Ok(out)
}

fn c11_list_monads(rng: &mut ChaCha8Rng) -> Result<LawReport> {
    let mut out = LawReport::new("list monads");
    for q in [two(), chain_min(3)?] {
        let q = Arc::new(q);
        for points in 1..=2 {
            let config = CompareConfig { samples: 200, seed: rng.gen() };
            out.absorb(&format!("{} on {points} points: ", q.name()), compare_pl_pvl(&q, points, 3, config)?);
        }
    }
    Ok(out)
}

/// The acted quantales of the catalog.
fn catalog_acted() -> Result<Vec<ActedQuantale>> {
    let two = Arc::new(two());
    let mut out = Vec::new();
    for (_, q) in base_catalog() {
        out.push(ActedQuantale::on_itself(Arc::new(q))?);
    }
    for q in [endo_quantale_chain3(), bool_square(), chain_min(4)?, lukasiewicz(3)?] {
        out.push(ActedQuantale::over_two(two.clone(), Arc::new(q))?);
    }
    for base in [two.clone(), Arc::new(chain_min(3)?)] {
        let Station::Monoid(m) = free_z2(&base)? else { unreachable!("free_z2 builds a monoid") };
        out.push(central_to_acted(&monoid_to_central(&m)?)?);
    }
    Ok(out)
}

fn c12_stations(_: &mut ChaCha8Rng) -> Result<LawReport> {
    const N: usize = 3;
    let mut out = LawReport::new("station chain");
    let acted = catalog_acted()?;
    let mut over_two: Vec<Arc<Quantale>> = Vec::new();
    for (i, a) in acted.iter().enumerate() {
        let first = equivalence_chain(&Station::Acted(a.clone()), N, N)?;
        let mut reports = vec![first.report];
        for s in first.stations.iter().skip(1) {
            reports.push(equivalence_chain(s, N, N)?.report);
        }
        for r in reports {
            for v in r.violations {
                out.violate(&v.law, vec![i], format!("{}: {}", r.subject, v.message));
            }
        }
        if a.base().size() == 2 && !over_two.iter().any(|q| same_quantale_tables(q, a.quantale())) {
            over_two.push(a.quantale().clone());
        }
    }
    if over_two.len() < 3 {
        out.violate("over-two", vec![over_two.len()], "fewer than 3 distinct quantales over two");
    }
    out.note(format!("{} acted quantales, {} distinct quantales over two", acted.len(), over_two.len()));
    Ok(out)
}

/// A diagnostic is in bounds when its span lies inside the source and its
/// position is 1-based and on an existing line.
fn in_bounds(src: &str, d: &Diagnostic) -> bool {
    let lines = src.split('\n').count();
    d.span.start <= d.span.end
        && d.span.end <= src.len()
        && d.line >= 1
        && d.line <= lines
        && d.column >= 1
        && !d.message.is_empty()
}

const FUZZ_CHARS: &[char] = &[
    '{', '}', '[', ']', '(', ')', ':', ',', '<', '=', '-', '>', '#', '\n', ' ', '"', '0', '1', '9', 'a', 'q', 'x', '_',
    'λ', '⊗', '\t', '∨',
];

fn mutate(src: &str, rng: &mut ChaCha8Rng) -> String {
    let mut chars: Vec<char> = src.chars().collect();
    for _ in 0..rng.gen_range(1..=3) {
        let len = chars.len();
        let at = rng.gen_range(0..=len);
        match rng.gen_range(0..5) {
            0 if at < len => {
                let end = (at + rng.gen_range(1..=8)).min(len);
                chars.drain(at..end);
            }
            1 => chars.insert(at, FUZZ_CHARS[rng.gen_range(0..FUZZ_CHARS.len())]),
            2 if at < len => {
                let end = (at + rng.gen_range(1..=16)).min(len);
                let piece: Vec<char> = chars[at..end].to_vec();
                let to = rng.gen_range(0..=len);
                chars.splice(to..to, piece);
            }
            3 if len >= 2 => {
                let b = rng.gen_range(0..len);
                chars.swap(at.min(len - 1), b);
            }
            4 => chars.truncate(at),
            _ => chars.insert(at, FUZZ_CHARS[rng.gen_range(0..FUZZ_CHARS.len())]),
        }
    }
    chars.into_iter().collect()
}

fn c13_parser(rng: &mut ChaCha8Rng) -> Result<LawReport> {
    let mut out = LawReport::new("parser");
    for (i, (name, src)) in CORPUS.iter().enumerate() {
        let doc = parse(src).map_err(Error::Parse)?;
        let text = emit(&doc);
        match parse(&text) {
            Ok(back) if back.same_content(&doc) => {
                if emit(&back) != text {
                    out.violate("emit-idempotent", vec![i], format!("{name}: emit is not a fixed point"));
                }
            }
            Ok(_) => out.violate("roundtrip", vec![i], format!("{name}: parse∘emit changed the content")),
            Err(d) => out.violate("roundtrip", vec![i], format!("{name}: emitted text does not parse: {}", d[0])),
        }
    }
    for (i, (name, src)) in MALFORMED.iter().enumerate() {
        match parse(src) {
            Ok(_) => out.violate("malformed", vec![i], format!("{name} was accepted")),
            Err(d) if d.is_empty() || !d.iter().all(|d| in_bounds(src, d)) => {
                out.violate("diagnostics", vec![i], format!("{name}: missing or out-of-bounds diagnostics"))
            }
            Err(_) => {}
        }
    }
    let seeds: Vec<&str> = CORPUS.iter().chain(MALFORMED).map(|c| c.1).collect();
    let (mut accepted, mut rejected) = (0, 0);
    for case in 0..FUZZ_MUTATIONS {
        let src = mutate(seeds[rng.gen_range(0..seeds.len())], rng);
        let outcome = catch_unwind(AssertUnwindSafe(|| match parse(&src) {
            Ok(doc) => {
                let text = emit(&doc);
                match parse(&text) {
                    Ok(back) if back.same_content(&doc) => Ok(true),
                    _ => Err("accepted input does not survive emit and reparse"),
                }
            }
            Err(d) if d.is_empty() => Err("rejected without diagnostics"),
            Err(d) if d.iter().all(|d| in_bounds(&src, d)) => Ok(false),
            Err(_) => Err("diagnostic out of bounds"),
        }));
        match outcome {
            Ok(Ok(true)) => accepted += 1,
            Ok(Ok(false)) => rejected += 1,
            Ok(Err(m)) => out.violate("fuzz", vec![case], m),
            Err(_) => out.violate("fuzz", vec![case], "parser panicked"),
        }
    }
    out.note(format!(
        "{} corpus files, {} malformed; {FUZZ_MUTATIONS} mutations: {accepted} accepted, {rejected} rejected",
        CORPUS.len(),
        MALFORMED.len()
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scopes_parse() {
        assert_eq!("pv-alg".parse::<Scope>().unwrap(), Scope::PvAlg);
        assert_eq!("cli".parse::<Scope>().unwrap(), Scope::All);
        assert!("nope".parse::<Scope>().is_err());
    }

    #[test]
    fn oracle_finds_mutations() {
        let mut d = two().to_data();
        let o = Tables::new(&d);
        assert!(QUANTALE_LAWS.iter().all(|l| !o.breaks(l)));
        d.tensor[0][0] = 1;
        let o = Tables::new(&d);
        assert!(o.breaks("bottom-left") && o.fails_at("join-left", &[0, 1, 0]));
    }

    #[test]
    fn bimorphism_count_of_two() {
        let t = FiniteLattice::chain(2);
        assert_eq!(count_bimorphisms(&t, &t, &t), 2);
        assert_eq!(count_bimorphisms(&FiniteLattice::chain(1), &t, &t), 1);
    }

    #[test]
    fn fast_criteria_pass() {
        for n in [2, 8] {
            let c = criterion(n, 0).unwrap();
            assert!(!c.is_fail(), "{c:?}");
        }
    }
}
