use std::sync::Arc;

use clap::ValueEnum;
use serde_json::{json, Value};

use crate::dsl::{parse, Item, SpecDocument};
use crate::enumerate::{check_guard, power, Tuples};
use crate::lv::{check_lv_category, compare_pl_pvl, injective_station, lv_to_acted, lv_yoneda_check, CompareConfig};
use crate::monoids::{
    acted_to_central, central_to_acted, central_to_monoid, equivalence_chain, monoid_to_central, same_quantale_tables,
    AlgMonoid, Station, StationKind,
};
use crate::order::{FiniteLattice, Quantale};
use crate::pvalg::{
    check_bimorphism_componentwise, check_bimorphism_strength, check_monad_laws, check_tensor_agreement, module_to_algebra,
    strength_suite, tensor_alg, PVAlgebra,
};
use crate::report::LawReport;
use crate::suplat::{check_bimorphism, classify_bimorphism, enumerate_supmaps, tensor_sup};
use crate::vcat::{check_yoneda, find_sup, presheaf_category, VCategory};
use crate::vmat::VMatrixJson;
use crate::vmod::{
    check_module_map, check_pv_iso, left_unitor, module_to_vcat, roundtrip_module, roundtrip_vcat, tensor_mod, vcat_to_module,
    VModule,
};
use crate::{Error, Result};

use super::{run_suite, Check, Cli, Command, DeriveWhat, LvCmd, MonadCmd, Opts, Route, RunReport, Scope, TensorKind};

/// The command line as echoed in reports: subcommand and operands, without
/// the program name or file-system noise beyond what was typed.
pub(super) fn echo(cmd: &Command) -> String {
    match cmd {
        Command::Check { args } => format!("check {}", args.join(" ")),
        Command::Derive { what, args } => format!("derive {} {}", value(what), args.join(" ")),
        Command::Equiv { route, file, name, roundtrip, from } => {
            let mut s = format!("equiv {} {file} {name}", value(route));
            if *roundtrip {
                s += " --roundtrip";
            }
            if let Some(f) = from {
                s += &format!(" --from {f}");
            }
            s
        }
        Command::Tensor { kind, file, left, right } => format!("tensor {} {file} {left} {right}", value(kind)),
        Command::Monad { which } => match which {
            MonadCmd::Laws { quantale, points, .. } => format!("monad laws {quantale} {points}"),
            MonadCmd::IsoPv { quantale, points, .. } => format!("monad iso-pv {quantale} {points}"),
            MonadCmd::Strength { quantale, nx, ny, .. } => format!("monad strength {quantale} {nx} {ny}"),
        },
        Command::Lv { which } => match which {
            LvCmd::Check { file, name } => format!("lv check {file} {name}"),
            LvCmd::Yoneda { file, name } => format!("lv yoneda {file} {name}"),
            LvCmd::CompareMonads { quantale, points, samples, .. } => {
                format!("lv compare-monads {quantale} {points} --samples {samples}")
            }
            LvCmd::Station { file, name } => format!("lv station {file} {name}"),
        },
        Command::Suite { scope } => format!("suite {scope}"),
    }
}

fn value<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

pub(super) fn dispatch(cli: &Cli) -> Result<RunReport> {
    let o = &cli.opts;
    let mut report = RunReport::new(echo(&cli.command));
    match &cli.command {
        Command::Check { args } => check(o, args, &mut report)?,
        Command::Derive { what, args } => derive(*what, args, &mut report)?,
        Command::Equiv { route, file, name, roundtrip, from } => {
            equiv(o, *route, &load(file)?, name, *roundtrip, from.as_deref(), &mut report)?
        }
        Command::Tensor { kind, file, left, right } => tensor(o, *kind, &load(file)?, left, right, &mut report)?,
        Command::Monad { which } => monad(o, which, &mut report)?,
        Command::Lv { which } => lv(o, which, &mut report)?,
        Command::Suite { scope } => {
            let scope: Scope = scope.parse()?;
            report = run_suite(scope, o.seed);
            report.command = echo(&cli.command);
        }
    }
    if matches!(&cli.command, Command::Lv { which: LvCmd::CompareMonads { .. } }) {
        report.seed = Some(o.seed);
    }
    Ok(report)
}

pub(super) fn load(path: &str) -> Result<SpecDocument> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {path}: {e}")))?;
    parse(&text).map_err(Error::Parse)
}

fn load_or_empty(file: &Option<String>) -> Result<SpecDocument> {
    file.as_deref().map(load).unwrap_or_else(|| Ok(SpecDocument::default()))
}

/// Per-definition outcome: law-type errors become failing checks, input
/// errors abort the command.
fn outcome(id: &str, r: Result<LawReport>, truncation: Option<String>) -> Result<Check> {
    match r {
        Ok(r) => Ok(Check::from_report(id, &r, truncation)),
        Err(Error::Law(r)) => Ok(Check::from_report(id, &r, None)),
        Err(Error::Resource { guard, needed, limit }) => Ok(Check::skipped(id, format!("guard `{guard}`: need {needed}, limit {limit}"))),
        Err(Error::NotCocomplete { witness }) => Ok(Check::fail(
            id,
            crate::Violation { law: "sup".into(), witness, message: "presheaf has no supremum".into() },
        )),
        Err(e) => Err(e),
    }
}

fn truncation(max_len: usize, blocks: usize) -> String {
    format!("lists of length ≤ {max_len}, splits into ≤ {blocks} blocks")
}

fn check(o: &Opts, args: &[String], report: &mut RunReport) -> Result<()> {
    match args[0].as_str() {
        "vcat" => {
            let file = args.get(1).ok_or_else(|| Error::input("check vcat FILE [NAME]"))?;
            let doc = load(file)?;
            for def in doc.definitions.iter().filter(|d| matches!(d.item, Item::VCategory { .. })) {
                if args.get(2).is_some_and(|n| *n != def.name) {
                    continue;
                }
                let id = format!("vcategory {}", def.name);
                let mut c = outcome(&id, doc.check(&def.name, 1), None)?;
                if let (false, Ok(x)) = (c.is_fail(), doc.vcategory(&def.name)) {
                    c = c.note(if x.is_separated() { "separated" } else { "not separated" });
                    c = c.note(match find_sup(&x) {
                        Ok(_) => "cocomplete".to_string(),
                        Err(Error::NotCocomplete { witness }) => format!("not cocomplete: presheaf {witness:?} has no supremum"),
                        Err(e) => return Err(e),
                    });
                }
                report.push(c);
            }
        }
        "bimorphism" => {
            let (file, name) = match args {
                [_, f, n] => (f, n),
                _ => return Err(Error::input("check bimorphism FILE MONOID")),
            };
            let m = load(file)?.monoid(name)?;
            let a = module_to_algebra(m.module())?;
            let cw = check_bimorphism_componentwise(&a, &a, &a, m.mult_table())?;
            let st = check_bimorphism_strength(&a, &a, &a, m.mult_table())?;
            report.push(Check::from_report(format!("{name} componentwise"), &cw, None));
            report.push(Check::from_report(format!("{name} strength"), &st, None));
            report.push(if cw.is_ok() == st.is_ok() {
                Check::pass(format!("{name} agreement"))
            } else {
                Check::fail_msg(format!("{name} agreement"), "agreement", "the two bimorphism predicates disagree")
            });
        }
        file => {
            let doc = load(file)?;
            let only = args.get(1);
            if let Some(n) = only {
                doc.get(n).ok_or_else(|| Error::input(format!("no definition named `{n}`")))?;
            }
            for def in doc.definitions.iter().filter(|d| only.is_none_or(|n| *n == d.name)) {
                let id = format!("{} {}", def.item.kind(), def.name);
                let trunc = match &def.item {
                    Item::LVCategory { max_len, .. } | Item::Representable { max_len, .. } => {
                        Some((*max_len, o.blocks(*max_len)))
                    }
                    _ => None,
                };
                let blocks = trunc.map(|t| t.1).unwrap_or(1);
                report.push(outcome(&id, doc.check(&def.name, blocks), trunc.map(|(n, b)| truncation(n, b)))?);
            }
        }
    }
    Ok(())
}

/// A V-category by name: a `vcategory`, the category of a `module`, or the
/// one-object category of a quantale.
fn vcategory_of(doc: &SpecDocument, name: &str) -> Result<VCategory> {
    match doc.get(name).map(|d| d.item.kind()) {
        Some("vcategory") => doc.vcategory(name),
        Some("module") => module_to_vcat(&doc.module(name)?),
        _ => Ok(VCategory::unit(doc.quantale(name)?)),
    }
}

fn names(q: &Quantale, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| q.element_name(v).to_string()).collect()
}

fn derive(what: DeriveWhat, args: &[String], report: &mut RunReport) -> Result<()> {
    let (doc, name) = match args {
        [n] => (SpecDocument::default(), n),
        [f, n] => (load(f)?, n),
        _ => unreachable!("clap bounds the operands"),
    };
    match what {
        DeriveWhat::Residuation => {
            let q = doc.quantale(name)?;
            let mut r = LawReport::new("residuation");
            for v in q.elements() {
                for w in q.elements() {
                    for u in q.elements() {
                        if q.leq(q.tensor(v, w), u) != q.leq(w, q.residual(v, u)) {
                            r.violate("adjunction", vec![v, w, u], "v⊗w ≤ u differs from w ≤ [v,u]");
                        }
                    }
                }
            }
            report.push(Check::from_report(format!("residuation {name}"), &r, None));
            report.artifact = Some(json!({ "quantale": name, "elements": q.element_names(), "residual": q.residual_table() }));
        }
        DeriveWhat::Presheaf => {
            let x = vcategory_of(&doc, name)?;
            let p = presheaf_category(&x)?;
            report.push(Check::from_report(format!("yoneda {name}"), &check_yoneda(&x)?, None));
            let q = x.base();
            let hom: Vec<Vec<usize>> = (0..p.len()).map(|i| (0..p.len()).map(|j| p.hom(i, j)).collect()).collect();
            report.artifact = Some(json!({
                "objects": x.names(),
                "presheaves": p.presheaves().iter().map(|t| names(q, t)).collect::<Vec<_>>(),
                "hom": hom,
                "yoneda": p.yoneda(),
            }));
        }
        DeriveWhat::Sup => {
            let x = vcategory_of(&doc, name)?;
            let s = find_sup(&x)?;
            report.push(Check::pass(format!("sup {name}")));
            let q = x.base();
            report.artifact = Some(json!({
                "presheaves": s.presheaves().presheaves().iter().map(|t| names(q, t)).collect::<Vec<_>>(),
                "sup": s.table().iter().map(|&o| x.names()[o].clone()).collect::<Vec<_>>(),
            }));
        }
        DeriveWhat::Order => {
            let x = vcategory_of(&doc, name)?;
            let leq: Vec<Vec<bool>> = (0..x.size()).map(|a| (0..x.size()).map(|b| x.leq(a, b)).collect()).collect();
            let mut c = Check::pass(format!("order {name}"));
            if let Some((a, b)) = x.separation_witness() {
                c = c.note(format!("not separated: {} and {} are isomorphic", x.names()[a], x.names()[b]));
            }
            report.push(c);
            report.artifact = Some(json!({ "objects": x.names(), "leq": leq }));
        }
        DeriveWhat::Copower => {
            let x = vcategory_of(&doc, name)?;
            let q = x.base();
            let n = x.size();
            let mut missing = 0;
            let table: Vec<Vec<Value>> = q
                .elements()
                .map(|u| {
                    (0..n)
                        .map(|o| {
                            let found = (0..n).find(|&c| (0..n).all(|y| x.a(c, y) == q.residual(u, x.a(o, y))));
                            match found {
                                Some(c) => json!(x.names()[c]),
                                None => {
                                    missing += 1;
                                    Value::Null
                                }
                            }
                        })
                        .collect()
                })
                .collect();
            let mut c = Check::pass(format!("copower {name}"));
            if missing > 0 {
                c = c.note(format!("{missing} copowers do not exist"));
            }
            report.push(c);
            report.artifact = Some(json!({ "objects": x.names(), "elements": q.element_names(), "copower": table }));
        }
    }
    Ok(())
}

fn station_of(doc: &SpecDocument, name: &str, from: Option<&str>) -> Result<Station> {
    let kind = doc.get(name).map(|d| d.item.kind()).ok_or_else(|| Error::input(format!("no definition named `{name}`")))?;
    let wanted = match from {
        Some(f) => f.parse::<StationKind>()?,
        None => match kind {
            "acted" => StationKind::Acted,
            "embedding" => StationKind::Central,
            "monoid" => StationKind::Monoid,
            "lvcategory" => StationKind::Representable,
            other => return Err(Error::input(format!("a {other} is not a station of the chain"))),
        },
    };
    let mismatch = || Error::input(format!("`{name}` is a {kind}, which cannot start the chain at {wanted}"));
    Ok(match (wanted, kind) {
        (StationKind::Acted, "acted") => Station::Acted(doc.acted(name)?),
        (StationKind::Central, "embedding") => Station::Central(doc.embedding(name)?),
        (StationKind::Monoid, "monoid") => Station::Monoid(doc.monoid(name)?),
        (StationKind::AlgMonoid, "monoid") => Station::AlgMonoid(AlgMonoid::from_mod_monoid(&doc.monoid(name)?)?),
        (StationKind::Representable, "lvcategory") => Station::Representable(doc.lvcategory(name)?),
        _ => return Err(mismatch()),
    })
}

fn module_json(m: &VModule) -> Value {
    json!({
        "base": m.base().name(),
        "carrier": m.names(),
        "action": m.base().elements().map(|v| m.action_of(v).iter().map(|&x| m.names()[x].clone()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn vcat_json(x: &VCategory) -> Value {
    json!({ "objects": x.names(), "hom": VMatrixJson::from(x.hom()) })
}

fn quantale_json(q: &Quantale) -> Value {
    let mut v = serde_json::to_value(q.to_data()).expect("serializes");
    v["name"] = json!(q.name());
    v
}

fn equiv(o: &Opts, route: Route, doc: &SpecDocument, name: &str, roundtrip: bool, from: Option<&str>, report: &mut RunReport) -> Result<()> {
    let rt = |id: String, diff: Option<(usize, usize)>| match diff {
        None => Check::pass(id),
        Some((a, b)) => Check::fail_msg(id, "roundtrip", format!("first differing cell ({a},{b})")),
    };
    let kind = doc.get(name).map(|d| d.item.kind());
    match route {
        Route::ModVcat => {
            let m = doc.module(name)?;
            let x = module_to_vcat(&m)?;
            report.push(Check::pass(format!("{name} module → vcategory")));
            if roundtrip {
                report.push(rt(format!("{name} roundtrip"), roundtrip_module(&m)?.diff));
            }
            report.artifact = Some(vcat_json(&x));
        }
        Route::VcatMod => {
            let x = doc.vcategory(name)?;
            let m = vcat_to_module(&x)?;
            report.push(Check::pass(format!("{name} vcategory → module")));
            if roundtrip {
                report.push(rt(format!("{name} roundtrip"), roundtrip_vcat(&x)?.diff));
            }
            report.artifact = Some(module_json(&m));
        }
        Route::Roundtrip => match kind {
            Some("module") => report.push(rt(format!("{name} roundtrip"), roundtrip_module(&doc.module(name)?)?.diff)),
            Some("vcategory") => report.push(rt(format!("{name} roundtrip"), roundtrip_vcat(&doc.vcategory(name)?)?.diff)),
            _ => return Err(Error::input(format!("`{name}` is neither a module nor a vcategory"))),
        },
        Route::MonoidQuant => {
            let m = doc.monoid(name)?;
            let f = monoid_to_central(&m)?;
            report.push(Check::pass(format!("{name} monoid → central embedding")));
            if roundtrip {
                let back = central_to_monoid(&f)?;
                let same = back.mult_table() == m.mult_table() && back.unit() == m.unit() && back.module().action() == m.module().action();
                report.push(if same { Check::pass(format!("{name} roundtrip")) } else { Check::fail_msg(format!("{name} roundtrip"), "roundtrip", "monoid tables differ") });
            }
            report.artifact = Some(json!({ "quantale": quantale_json(f.target()), "map": f.map() }));
        }
        Route::QuantActed => {
            let f = doc.embedding(name)?;
            let a = central_to_acted(&f)?;
            report.push(Check::pass(format!("{name} central embedding → acted quantale")));
            if roundtrip {
                let back = acted_to_central(&a)?;
                let same = back.map() == f.map() && same_quantale_tables(back.target(), f.target());
                report.push(if same { Check::pass(format!("{name} roundtrip")) } else { Check::fail_msg(format!("{name} roundtrip"), "roundtrip", "embedding tables differ") });
            }
            report.artifact = Some(json!({ "base": a.base().name(), "quantale": quantale_json(a.quantale()), "action": a.action() }));
        }
        Route::Chain => {
            let start = station_of(doc, name, from)?;
            let blocks = o.blocks(o.max_len);
            let chain = equivalence_chain(&start, o.max_len, blocks)?;
            let mut stations = Vec::new();
            for s in &chain.stations {
                let k = s.kind();
                let bad: Vec<_> = chain.report.violations.iter().filter(|v| v.law == "roundtrip" && v.witness == [k as usize]).collect();
                let id = format!("station {} {}", k as usize + 1, k);
                report.push(match bad.first() {
                    Some(v) => Check::fail(id, (*v).clone()),
                    None if k == StationKind::Representable => Check::truncated(id, truncation(o.max_len, blocks)),
                    None => Check::pass(id),
                });
                stations.push(json!(k.name()));
            }
            let certs: Vec<_> = chain.report.violations.iter().filter(|v| v.law != "roundtrip").cloned().collect();
            let mut cert = LawReport::new("certificates");
            cert.violations = certs;
            cert.notes = chain.report.notes.clone();
            report.push(Check::from_report("station certificates", &cert, Some(truncation(o.max_len, blocks))));
            let hub = central_to_acted(&acted_to_central(&match chain.station(StationKind::Acted) {
                Station::Acted(a) => a.clone(),
                _ => unreachable!("stations are in kind order"),
            })?)?;
            report.artifact = Some(json!({
                "stations": stations,
                "base": hub.base().name(),
                "quantale": quantale_json(hub.quantale()),
                "action": hub.action(),
            }));
        }
    }
    Ok(())
}

fn lattice_of(doc: &SpecDocument, name: &str) -> Result<FiniteLattice> {
    match doc.get(name).map(|d| d.item.kind()) {
        Some("module") => Ok(doc.module(name)?.carrier().clone()),
        _ => Ok(doc.quantale(name)?.lattice().clone()),
    }
}

/// A module by name; a quantale name means the quantale acting on itself.
fn module_of(doc: &SpecDocument, name: &str) -> Result<VModule> {
    match doc.get(name).map(|d| d.item.kind()) {
        Some("module") => doc.module(name),
        _ => Ok(VModule::on_itself(doc.quantale(name)?)),
    }
}

/// `|Sup(T,Z)| = |Bim(X,Y;Z)|` and `g∘π = f` for each bimorphism, with `Z`
/// the two- and three-element chains.
fn sup_universal(x: &FiniteLattice, y: &FiniteLattice) -> Result<LawReport> {
    let t = tensor_sup(x, y)?;
    let mut r = LawReport::new("universal property of X⊗₂Y");
    for zn in [2, 3] {
        let z = FiniteLattice::chain(zn);
        check_guard("bimorphism-candidates", power(zn, x.size() * y.size()))?;
        let mut bims = 0usize;
        for f in Tuples::new(x.size() * y.size(), zn) {
            if !check_bimorphism(x, y, &z, &f)?.is_ok() {
                continue;
            }
            bims += 1;
            let g = classify_bimorphism(&t, &z, &f)?;
            let ok = (0..x.size()).all(|a| (0..y.size()).all(|b| g[t.pi(a, b)] == f[a * y.size() + b]));
            if !ok {
                r.violate("factorization", vec![zn], "g∘π differs from f");
            }
        }
        let maps = enumerate_supmaps(t.lattice(), &z)?.len();
        r.note(format!("Z = chain of {zn}: {bims} bimorphisms, {maps} sup-maps"));
        if bims != maps {
            r.violate("bijection", vec![zn, bims, maps], "bimorphisms and sup-maps out of X⊗₂Y differ in number");
        }
    }
    Ok(r)
}

/// Counts balanced equivariant bimorphisms `M×N → P` against module maps
/// `M⊗N → P` for `P = V`.
fn mod_universal(m: &VModule, n: &VModule) -> Result<LawReport> {
    let tm = tensor_mod(m, n)?;
    let p = VModule::on_itself(m.base().clone());
    let mut r = LawReport::new("universal property of M⊗_V N");
    check_guard("bimorphism-candidates", power(p.size(), m.size() * n.size()))?;
    let mut bims = 0usize;
    for f in Tuples::new(m.size() * n.size(), p.size()) {
        if let Ok(g) = tm.classify(&p, &f) {
            bims += 1;
            if !(0..m.size()).all(|a| (0..n.size()).all(|b| g[tm.pi(a, b)] == f[a * n.size() + b])) {
                r.violate("factorization", vec![], "g∘π differs from f");
            }
        }
    }
    let maps = enumerate_supmaps(tm.module.carrier(), p.carrier())?
        .into_iter()
        .filter(|g| check_module_map(&tm.module, &p, g).map(|r| r.is_ok()).unwrap_or(false))
        .count();
    r.note(format!("P = V: {bims} balanced bimorphisms, {maps} module maps"));
    if bims != maps {
        r.violate("bijection", vec![bims, maps], "balanced bimorphisms and module maps out of M⊗N differ in number");
    }
    Ok(r)
}

fn tensor(o: &Opts, kind: TensorKind, doc: &SpecDocument, a: &str, b: &str, report: &mut RunReport) -> Result<()> {
    let id = format!("{a} ⊗ {b}");
    match kind {
        TensorKind::Sup => {
            let (x, y) = (lattice_of(doc, a)?, lattice_of(doc, b)?);
            let t = tensor_sup(&x, &y)?;
            report.push(Check::pass(&id).note(format!("{} elements", t.size())));
            for (side, other) in [(&x, &y), (&y, &x)] {
                if side.size() == 2 {
                    report.push(match t.lattice().find_isomorphism(other) {
                        Some(_) => Check::pass(format!("{id} unit law")),
                        None => Check::fail_msg(format!("{id} unit law"), "unit", "2⊗X is not isomorphic to X"),
                    });
                    break;
                }
            }
            if o.verify_universal {
                report.push(outcome(&format!("{id} universal"), sup_universal(&x, &y), None)?);
            }
            report.artifact = Some(json!({ "size": t.size(), "covers": t.lattice().covers(), "pi": t.pi_table() }));
        }
        TensorKind::Mod => {
            let (m, n) = (module_of(doc, a)?, module_of(doc, b)?);
            let tm = tensor_mod(&m, &n)?;
            report.push(Check::pass(&id).note(format!("{} elements", tm.module.size())));
            if m == VModule::on_itself(m.base().clone()) {
                report.push(match left_unitor(&n) {
                    Ok(_) => Check::pass(format!("{id} left unitor")),
                    Err(Error::Internal(msg)) => Check::fail_msg(format!("{id} left unitor"), "unitor", msg),
                    Err(e) => return Err(e),
                });
            }
            if o.verify_universal {
                report.push(outcome(&format!("{id} universal"), mod_universal(&m, &n), None)?);
            }
            report.artifact = Some(json!({ "module": module_json(&tm.module), "covers": tm.module.carrier().covers() }));
        }
        TensorKind::Alg => {
            let (x, y): (PVAlgebra, PVAlgebra) = (module_to_algebra(&module_of(doc, a)?)?, module_to_algebra(&module_of(doc, b)?)?);
            let t = tensor_alg(&x, &y)?;
            report.push(Check::pass(&id).note(format!("{} elements", t.algebra.size())));
            if o.verify_universal {
                report.push(outcome(&format!("{id} direct coequalizer"), check_tensor_agreement(&x, &y), None)?);
            }
            report.artifact = Some(json!({ "algebra": t.algebra.to_json() }));
        }
    }
    Ok(())
}

fn monad(o: &Opts, which: &MonadCmd, report: &mut RunReport) -> Result<()> {
    match which {
        MonadCmd::Laws { quantale, points, file } => {
            let q = load_or_empty(file)?.quantale(quantale)?;
            q.require_base()?;
            let id = format!("P_V monad {quantale} on {points}");
            report.push(outcome(&id, check_monad_laws(&q, *points, o.exhaustive), None)?);
        }
        MonadCmd::IsoPv { quantale, points, file } => {
            let q = load_or_empty(file)?.quantale(quantale)?;
            q.require_base()?;
            let id = format!("P_V ≅ V⊗P₂ {quantale} on {points}");
            report.push(outcome(&id, check_pv_iso(&q, *points).map(|i| i.report), None)?);
        }
        MonadCmd::Strength { quantale, nx, ny, file } => {
            let q = load_or_empty(file)?.quantale(quantale)?;
            q.require_base()?;
            let id = format!("strength {quantale} on {nx}×{ny}");
            report.push(outcome(&id, strength_suite(&q, *nx, *ny), None)?);
        }
    }
    Ok(())
}

fn lv(o: &Opts, which: &LvCmd, report: &mut RunReport) -> Result<()> {
    match which {
        LvCmd::Check { file, name } => {
            let c = load(file)?.lvcategory(name)?;
            let b = o.blocks(c.max_len());
            report.push(outcome(&format!("lvcategory {name}"), check_lv_category(&c, b), Some(truncation(c.max_len(), b)))?);
        }
        LvCmd::Yoneda { file, name } => {
            let c = Arc::new(load(file)?.lvcategory(name)?);
            let b = o.blocks(c.max_len());
            report.push(outcome(&format!("yoneda {name}"), lv_yoneda_check(&c, b), Some(truncation(c.max_len(), b)))?);
        }
        LvCmd::CompareMonads { quantale, points, samples, file } => {
            let q = load_or_empty(file)?.quantale(quantale)?;
            let config = CompareConfig { samples: *samples, seed: o.seed };
            let id = format!("P_V L vs P_L {quantale} on {points}");
            report.push(outcome(&id, compare_pl_pvl(&q, *points, o.max_len, config), Some(format!("lists of length ≤ {}", o.max_len)))?);
        }
        LvCmd::Station { file, name } => {
            let a = load(file)?.acted_of(name)?;
            let b = o.blocks(o.max_len);
            let (c, cert) = injective_station(&a, o.max_len, b)?;
            report.push(Check::from_report(format!("station {name}"), &cert, Some(truncation(o.max_len, b))));
            let back = lv_to_acted(&c)?;
            let same = same_quantale_tables(back.quantale(), a.quantale()) && back.action() == a.action();
            report.push(if same {
                Check::pass(format!("station {name} roundtrip"))
            } else {
                Check::fail_msg(format!("station {name} roundtrip"), "roundtrip", "acted quantale not recovered from the tables")
            });
            report.artifact = Some(json!({
                "objects": c.names(),
                "max_len": c.max_len(),
                "entries": c.index().len() * c.size(),
            }));
        }
    }
    Ok(())
}
