use std::fmt::Write;

use serde_json::{json, Value};

use super::{Item, SpecDocument};
use crate::lv::ListIndex;

fn list(names: impl IntoIterator<Item = impl AsRef<str>>) -> String {
    let items: Vec<String> = names.into_iter().map(|s| s.as_ref().to_string()).collect();
    format!("[{}]", items.join(", "))
}

fn name_of(names: &[String], i: usize) -> String {
    names.get(i).cloned().unwrap_or_else(|| i.to_string())
}

fn rows(table: &[usize], cols: usize, values: &[String]) -> String {
    let rows: Vec<String> = table.chunks(cols.max(1)).map(|r| list(r.iter().map(|&v| name_of(values, v)))).collect();
    format!("[{}]", rows.join(", "))
}

fn is_partial_order(leq: &[Vec<bool>]) -> bool {
    let n = leq.len();
    (0..n).all(|i| leq[i][i] && (0..n).all(|j| i == j || !(leq[i][j] && leq[j][i])))
}

/// `a < b < c` for a total order, else the covering pairs (all strict pairs
/// when the relation is not a partial order).
fn order(names: &[String], leq: &[Vec<bool>]) -> String {
    let n = leq.len();
    if !is_partial_order(leq) {
        let pairs: Vec<String> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && leq[i][j])
            .map(|(i, j)| format!("{} < {}", names[i], names[j]))
            .collect();
        return format!("[{}]", pairs.join(", "));
    }
    let below = |i: usize| (0..n).filter(|&j| leq[j][i]).count();
    let total = (0..n).all(|i| (0..n).all(|j| leq[i][j] || leq[j][i]));
    if total && n > 1 {
        let mut ids: Vec<usize> = (0..n).collect();
        ids.sort_by_key(|&i| below(i));
        return ids.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join(" < ");
    }
    let covers: Vec<String> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && leq[i][j] && !(0..n).any(|k| k != i && k != j && leq[i][k] && leq[k][j]))
        .map(|(i, j)| format!("{} < {}", names[i], names[j]))
        .collect();
    format!("[{}]", covers.join(", "))
}

/// Canonical text: definitions in order, every table row in element order,
/// default cells omitted.
pub fn emit(doc: &SpecDocument) -> String {
    let mut out = String::from("format: 1\n");
    for def in &doc.definitions {
        out.push('\n');
        let name = &def.name;
        let values = |base: &str| doc.quantale(base).map(|q| q.element_names().to_vec()).unwrap_or_default();
        let _ = match &def.item {
            Item::Quantale(data) => writeln!(
                out,
                "quantale {name} {{\n  elements: {}\n  order: {}\n  tensor: {}\n  unit: {}\n}}",
                list(&data.elements),
                order(&data.elements, &data.leq),
                rows(&data.tensor.concat(), data.elements.len(), &data.elements),
                name_of(&data.elements, data.unit)
            ),
            Item::VCategory { base, objects, hom } => {
                let vs = values(base);
                let q = doc.quantale(base).ok();
                let n = objects.len();
                let cells: Vec<String> = hom
                    .iter()
                    .enumerate()
                    .filter(|&(i, &v)| {
                        let default = q.as_ref().map(|q| if i / n == i % n { q.unit() } else { q.bottom() });
                        Some(v) != default
                    })
                    .map(|(i, &v)| format!("({},{}): {}", objects[i / n], objects[i % n], name_of(&vs, v)))
                    .collect();
                let hom = if cells.is_empty() { String::new() } else { format!("\n  hom: {{ {} }}", cells.join(", ")) };
                writeln!(out, "vcategory {name} over {base} {{\n  objects: {}{hom}\n}}", list(objects))
            }
            Item::VFunctor { source, target, map } => {
                let names = |c: &str| match doc.get(c).map(|d| &d.item) {
                    Some(Item::VCategory { objects, .. }) => objects.clone(),
                    _ => Vec::new(),
                };
                let (s, t) = (names(source), names(target));
                let entries: Vec<String> =
                    map.iter().enumerate().map(|(i, &j)| format!("{}: {}", name_of(&s, i), name_of(&t, j))).collect();
                writeln!(out, "vfunctor {name}: {source} -> {target} {{\n  map: {{ {} }}\n}}", entries.join(", "))
            }
            Item::Module { base, carrier, leq, action } => writeln!(
                out,
                "module {name} over {base} {{\n  carrier: {}\n  order: {}\n  action: {}\n}}",
                list(carrier),
                order(carrier, leq),
                rows(action, carrier.len(), carrier)
            ),
            Item::Monoid { module, mult, unit } => {
                let carrier = match doc.get(module).map(|d| &d.item) {
                    Some(Item::Module { carrier, .. }) => carrier.clone(),
                    _ => Vec::new(),
                };
                writeln!(
                    out,
                    "monoid {name} on {module} {{\n  mult: {}\n  unit: {}\n}}",
                    rows(mult, carrier.len(), &carrier),
                    name_of(&carrier, *unit)
                )
            }
            Item::Embedding { source, target, map } => {
                let (s, t) = (values(source), values(target));
                let entries: Vec<String> =
                    map.iter().enumerate().map(|(i, &j)| format!("{}: {}", name_of(&s, i), name_of(&t, j))).collect();
                writeln!(out, "embedding {name}: {source} -> {target} {{\n  map: {{ {} }}\n}}", entries.join(", "))
            }
            Item::Acted { base, quantale, action } => {
                let t = values(quantale);
                writeln!(out, "acted {name}: {base} on {quantale} {{\n  action: {}\n}}", rows(action, t.len(), &t))
            }
            Item::LVCategory { base, objects, max_len, hom } => {
                let vs = values(base);
                let q = doc.quantale(base).ok();
                let n = objects.len();
                let mut cells = Vec::new();
                if let Ok(index) = ListIndex::new(n, *max_len) {
                    for (c, &v) in hom.iter().enumerate() {
                        let (xs, y) = (index.list(c / n), c % n);
                        let default = q.as_ref().map(|q| if xs == [y] { q.unit() } else { q.bottom() });
                        if Some(v) != default {
                            let xs: Vec<&str> = xs.iter().map(|&x| objects[x].as_str()).collect();
                            cells.push(format!("({}, {}): {}", list(xs), objects[y], name_of(&vs, v)));
                        }
                    }
                }
                let hom = if cells.is_empty() { String::new() } else { format!("\n  hom: {{ {} }}", cells.join(", ")) };
                writeln!(out, "lvcategory {name} over {base} {{\n  objects: {}\n  max_len: {max_len}{hom}\n}}", list(objects))
            }
            Item::Representable { of, max_len } => writeln!(out, "lvcategory {name} = representable of {of} max_len {max_len}"),
        };
    }
    out
}

/// Canonical JSON with every table written out by element name.
pub fn emit_json(doc: &SpecDocument) -> Value {
    let values = |base: &str| doc.quantale(base).map(|q| q.element_names().to_vec()).unwrap_or_default();
    let named_rows = |table: &[usize], cols: usize, names: &[String]| -> Vec<Vec<String>> {
        table.chunks(cols.max(1)).map(|r| r.iter().map(|&v| name_of(names, v)).collect()).collect()
    };
    let defs: Vec<Value> = doc
        .definitions
        .iter()
        .map(|def| {
            let mut v = match &def.item {
                Item::Quantale(data) => json!({
                    "elements": data.elements,
                    "leq": data.leq,
                    "tensor": data.tensor,
                    "unit": data.unit,
                }),
                Item::VCategory { base, objects, hom } => {
                    json!({ "base": base, "objects": objects, "hom": named_rows(hom, objects.len(), &values(base)) })
                }
                Item::VFunctor { source, target, map } => json!({ "source": source, "target": target, "map": map }),
                Item::Module { base, carrier, leq, action } => json!({
                    "base": base, "carrier": carrier, "leq": leq,
                    "action": named_rows(action, carrier.len(), carrier),
                }),
                Item::Monoid { module, mult, unit } => json!({ "module": module, "mult": mult, "unit": unit }),
                Item::Embedding { source, target, map } => json!({ "source": source, "target": target, "map": map }),
                Item::Acted { base, quantale, action } => {
                    let t = values(quantale);
                    json!({ "base": base, "quantale": quantale, "action": named_rows(action, t.len(), &t) })
                }
                Item::LVCategory { base, objects, max_len, hom } => json!({
                    "base": base, "objects": objects, "max_len": max_len,
                    "hom": named_rows(hom, objects.len(), &values(base)),
                }),
                Item::Representable { of, max_len } => json!({ "representable_of": of, "max_len": max_len }),
            };
            v["kind"] = json!(def.item.kind());
            v["name"] = json!(def.name);
            v
        })
        .collect();
    json!({ "format": 1, "definitions": defs })
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    const DOC: &str = "
        quantale L3 { elements: [0, h, 1] order: 0 < h < 1 tensor: builtin lukasiewicz(3) unit: 1 }
        quantale D { elements: [b, x, y, t] order: [b < x, b < y, x < t, y < t] tensor: builtin bool_square unit: t }
        vcategory X over L3 { objects: [p, q] hom: { (p,q): h } }
        vfunctor F: X -> X { map: { p: p, q: q } }
        module M over two { carrier: [b, x, y, t] order: [b < x < t, b < y < t] action: canonical }
        monoid Mo on M { mult: [[b,b,b,b],[b,x,b,x],[b,b,y,y],[b,x,y,t]] unit: t }
        embedding E: two -> D { map: { 0: b, 1: t } }
        acted A: L3 on L3 { action: self }
        lvcategory C over two { objects: [u] max_len: 2 hom: { ([u,u], u): 1 } }
        lvcategory R = representable of A max_len 2
    ";

    #[test]
    fn parse_emit_parse() {
        let doc = parse(DOC).unwrap();
        let text = emit(&doc);
        let again = parse(&text).unwrap_or_else(|d| panic!("{text}\n{d:?}"));
        assert!(doc.same_content(&again));
        assert_eq!(emit(&again), text);
        assert!(text.contains("order: 0 < h < 1"));
        assert_eq!(emit_json(&doc), emit_json(&again));
    }

    #[test]
    fn json_shape() {
        let doc = parse(DOC).unwrap();
        let j = emit_json(&doc);
        assert_eq!(j["definitions"][0]["kind"], "quantale");
        assert_eq!(j["definitions"][0]["tensor"][1][1], 0);
        assert_eq!(j["definitions"][2]["hom"][0], json!(["1", "h"]));
    }
}
