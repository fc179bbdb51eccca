use std::collections::HashSet;

use super::lexer::{lex, Tok, Token};
use super::{Definition, Diagnostic, Item, SpecDocument, Span};
use crate::lv::ListIndex;
use crate::order::{Quantale, QuantaleData};

const KEYWORDS: [&str; 8] = ["quantale", "vcategory", "vfunctor", "module", "monoid", "embedding", "acted", "lvcategory"];

/// Largest number of elements or objects in one definition.
const MAX_ELEMENTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseMode {
    FirstError,
    AllErrors,
}

/// Parses a document, reporting every error found.
pub fn parse(src: &str) -> Result<SpecDocument, Vec<Diagnostic>> {
    parse_with(src, ParseMode::AllErrors)
}

pub fn parse_with(src: &str, mode: ParseMode) -> Result<SpecDocument, Vec<Diagnostic>> {
    let (toks, mut diags) = lex(src);
    if mode == ParseMode::FirstError && !diags.is_empty() {
        diags.truncate(1);
        return Err(diags);
    }
    let mut p = Parser { src, toks, pos: 0, diags: Vec::new(), doc: SpecDocument::default() };
    p.document(mode);
    diags.append(&mut p.diags);
    if diags.is_empty() {
        Ok(p.doc)
    } else {
        diags.sort_by_key(|d| d.span.start);
        if mode == ParseMode::FirstError {
            diags.truncate(1);
        }
        Err(diags)
    }
}

type PResult<T> = Result<T, ()>;
type Named = (String, Span);

/// Field values before names are resolved.
enum Syn {
    Names(Vec<Named>),
    Order(Vec<Vec<Named>>),
    Builtin(Named),
    Rows(Vec<Vec<Named>>),
    Word(Named),
    Number(usize, Span),
    Map(Vec<(Named, Named)>),
    Cells(Vec<(Vec<Named>, Named, Named, bool)>),
}

struct Field {
    key: String,
    key_span: Span,
    value: Syn,
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
    diags: Vec<Diagnostic>,
    doc: SpecDocument,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn span(&self) -> Span {
        self.toks.get(self.pos).map_or(Span::new(self.src.len(), self.src.len()), |t| t.span)
    }

    fn prev_span(&self) -> Span {
        self.pos.checked_sub(1).and_then(|i| self.toks.get(i)).map_or(Span::default(), |t| t.span)
    }

    fn err<T>(&mut self, span: Span, msg: impl Into<String>) -> PResult<T> {
        self.diags.push(Diagnostic::error(self.src, span, msg));
        Err(())
    }

    fn note(&mut self, span: Span, msg: impl Into<String>) {
        self.doc.notes.push(Diagnostic::note(self.src, span, msg));
    }

    fn found(&self) -> String {
        self.peek().map_or("end of input".into(), |t| t.describe())
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, ctx: &str) -> PResult<Span> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(self.prev_span())
        } else {
            let msg = format!("expected {} {ctx}, found {}", tok.describe(), self.found());
            self.err(self.span(), msg)
        }
    }

    fn ident(&mut self, ctx: &str) -> PResult<Named> {
        if let Some(Tok::Ident(s)) = self.peek() {
            let s = s.clone();
            self.pos += 1;
            Ok((s, self.prev_span()))
        } else {
            let msg = format!("expected {ctx}, found {}", self.found());
            self.err(self.span(), msg)
        }
    }

    fn keyword(&mut self, kw: &str, ctx: &str) -> PResult<Span> {
        let (word, span) = self.ident(&format!("`{kw}` {ctx}"))?;
        if word != kw {
            return self.err(span, format!("expected `{kw}` {ctx}, found `{word}`"));
        }
        Ok(span)
    }

    /// `name` or `name(arg, ...)`, rendered back to text.
    fn reference(&mut self, ctx: &str) -> PResult<Named> {
        let (mut name, span) = self.ident(ctx)?;
        if self.eat(&Tok::LParen) {
            let mut args = Vec::new();
            loop {
                args.push(self.reference("an argument")?.0);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::RParen, "after arguments")?;
            name = format!("{name}({})", args.join(","));
        }
        Ok((name, span.to(self.prev_span())))
    }

    fn number(&mut self, ctx: &str) -> PResult<(usize, Span)> {
        let (word, span) = self.ident(ctx)?;
        match word.parse::<usize>() {
            Ok(n) => Ok((n, span)),
            Err(_) => self.err(span, format!("expected {ctx}, found `{word}`")),
        }
    }

    fn name_list(&mut self, ctx: &str) -> PResult<Vec<Named>> {
        self.expect(Tok::LBracket, ctx)?;
        let mut out = Vec::new();
        while self.peek() != Some(&Tok::RBracket) {
            out.push(self.ident("a name")?);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RBracket, &format!("to close {ctx}"))?;
        Ok(out)
    }

    fn chain(&mut self) -> PResult<Vec<Named>> {
        let mut out = vec![self.ident("an element")?];
        while self.eat(&Tok::Lt) {
            out.push(self.ident("an element after `<`")?);
        }
        Ok(out)
    }

    fn order(&mut self) -> PResult<Syn> {
        if self.eat(&Tok::LBracket) {
            let mut chains = Vec::new();
            while self.peek() != Some(&Tok::RBracket) {
                chains.push(self.chain()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::RBracket, "to close the order")?;
            Ok(Syn::Order(chains))
        } else {
            Ok(Syn::Order(vec![self.chain()?]))
        }
    }

    fn rows(&mut self) -> PResult<Vec<Vec<Named>>> {
        self.expect(Tok::LBracket, "to open a table")?;
        let mut rows = Vec::new();
        while self.peek() == Some(&Tok::LBracket) {
            rows.push(self.name_list("a table row")?);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RBracket, "to close the table")?;
        Ok(rows)
    }

    fn map(&mut self) -> PResult<Vec<(Named, Named)>> {
        self.expect(Tok::LBrace, "to open a map")?;
        let mut out = Vec::new();
        while self.peek() != Some(&Tok::RBrace) {
            let from = self.ident("a source element")?;
            self.expect(Tok::Colon, "after a map key")?;
            out.push((from, self.ident("a target element")?));
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RBrace, "to close the map")?;
        Ok(out)
    }

    /// `{ (x,y): v, ([x,y], z): v, ... }`; the flag marks list keys.
    fn cells(&mut self) -> PResult<Syn> {
        self.expect(Tok::LBrace, "to open the hom cells")?;
        let mut out = Vec::new();
        while self.peek() != Some(&Tok::RBrace) {
            self.expect(Tok::LParen, "to open a cell")?;
            let (xs, is_list) = if self.peek() == Some(&Tok::LBracket) {
                (self.name_list("a list")?, true)
            } else {
                (vec![self.ident("an object")?], false)
            };
            self.expect(Tok::Comma, "between cell coordinates")?;
            let y = self.ident("an object")?;
            self.expect(Tok::RParen, "to close a cell")?;
            self.expect(Tok::Colon, "after a cell")?;
            let v = self.ident("a value")?;
            out.push((xs, y, v, is_list));
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RBrace, "to close the hom cells")?;
        Ok(Syn::Cells(out))
    }

    fn field(&mut self) -> PResult<Field> {
        let (key, key_span) = self.ident("a field name")?;
        self.expect(Tok::Colon, &format!("after `{key}`"))?;
        let value = match key.as_str() {
            "elements" | "objects" | "carrier" => Syn::Names(self.name_list(&format!("the {key} list"))?),
            "order" => self.order()?,
            "tensor" | "mult" | "action" => match self.peek() {
                Some(Tok::LBracket) => Syn::Rows(self.rows()?),
                Some(Tok::Ident(w)) if w == "builtin" && key == "tensor" => {
                    self.pos += 1;
                    Syn::Builtin(self.reference("a builtin quantale")?)
                }
                _ => Syn::Word(self.ident("a table or a keyword")?),
            },
            "unit" => Syn::Word(self.ident("the unit element")?),
            "hom" => self.cells()?,
            "map" => Syn::Map(self.map()?),
            "max_len" => {
                let (n, span) = self.number("a list length")?;
                Syn::Number(n, span)
            }
            _ => return self.err(key_span, format!("unknown field `{key}`")),
        };
        Ok(Field { key, key_span, value })
    }

    /// `{ field* }`; returns the fields and the closing brace span.
    fn block(&mut self, kind: &str, name: &str, allowed: &[&str]) -> PResult<(Vec<Field>, Span)> {
        self.expect(Tok::LBrace, &format!("to open {kind} {name}"))?;
        let mut fields: Vec<Field> = Vec::new();
        while self.peek() != Some(&Tok::RBrace) {
            if self.peek().is_none() {
                return self.err(self.span(), format!("{kind} {name}: missing `}}`"));
            }
            let f = self.field()?;
            if !allowed.contains(&f.key.as_str()) {
                return self.err(f.key_span, format!("{kind} {name}: field `{}` is not allowed here", f.key));
            }
            if fields.iter().any(|g| g.key == f.key) {
                return self.err(f.key_span, format!("{kind} {name}: duplicate field `{}`", f.key));
            }
            fields.push(f);
            self.eat(&Tok::Comma);
        }
        let close = self.expect(Tok::RBrace, "")?;
        Ok((fields, close))
    }

    fn document(&mut self, mode: ParseMode) {
        if matches!(self.peek(), Some(Tok::Ident(w)) if w == "format") && self.peek_at(1) == Some(&Tok::Colon) {
            self.pos += 2;
            if let Ok((n, span)) = self.number("a format version") {
                if n != 1 {
                    let _ = self.err::<()>(span, format!("unsupported format {n}"));
                }
            }
        }
        while self.pos < self.toks.len() {
            let start = self.pos;
            if self.definition().is_err() {
                if mode == ParseMode::FirstError {
                    return;
                }
                self.recover(start);
            }
        }
    }

    /// Skips to the end of the definition that began at `start`.
    fn recover(&mut self, start: usize) {
        let mut depth = 0usize;
        let mut i = start;
        let mut opened = false;
        while i < self.toks.len() {
            match &self.toks[i].tok {
                Tok::LBrace => {
                    depth += 1;
                    opened = true;
                }
                Tok::RBrace => {
                    depth = depth.saturating_sub(1);
                    if depth == 0 && opened {
                        i += 1;
                        break;
                    }
                }
                Tok::Ident(w) if depth == 0 && i > start && KEYWORDS.contains(&w.as_str()) => break,
                _ => {}
            }
            i += 1;
        }
        self.pos = self.pos.max(i).max(start + 1);
    }

    fn definition(&mut self) -> PResult<()> {
        let (kind, kind_span) = self.ident("a definition keyword")?;
        if !KEYWORDS.contains(&kind.as_str()) {
            return self.err(kind_span, format!("unknown definition kind `{kind}`"));
        }
        let (name, name_span) = self.ident(&format!("a name for the {kind}"))?;
        if self.doc.get(&name).is_some() {
            return self.err(name_span, format!("`{name}` is already defined"));
        }
        let item = match kind.as_str() {
            "quantale" => self.quantale(&name)?,
            "vcategory" => self.vcategory(&name)?,
            "vfunctor" => self.vfunctor(&name)?,
            "module" => self.module(&name)?,
            "monoid" => self.monoid(&name)?,
            "embedding" => self.embedding(&name)?,
            "acted" => self.acted(&name)?,
            _ => self.lvcategory(&name)?,
        };
        let span = kind_span.to(self.prev_span());
        self.doc.definitions.push(Definition { name, span, item });
        Ok(())
    }

    fn base(&mut self, r: &Named) -> PResult<std::sync::Arc<Quantale>> {
        match self.doc.quantale(&r.0) {
            Ok(q) => Ok(q),
            Err(e) => self.err(r.1, format!("cannot use `{}` as a quantale: {e}", r.0)),
        }
    }

    fn names(&mut self, list: Vec<Named>, what: &str) -> PResult<Vec<String>> {
        if list.len() > MAX_ELEMENTS {
            return self.err(list[MAX_ELEMENTS].1, format!("more than {MAX_ELEMENTS} {what}"));
        }
        let mut seen = HashSet::new();
        for (n, s) in &list {
            if !seen.insert(n.clone()) {
                return self.err(*s, format!("duplicate {what} name `{n}`"));
            }
        }
        Ok(list.into_iter().map(|(n, _)| n).collect())
    }

    fn lookup(&mut self, names: &[String], n: &Named, what: &str) -> PResult<usize> {
        match names.iter().position(|m| *m == n.0) {
            Some(i) => Ok(i),
            None => self.err(n.1, format!("unknown {what} `{}`", n.0)),
        }
    }

    fn leq_from(&mut self, names: &[String], chains: &[Vec<Named>], total: bool) -> PResult<Vec<Vec<bool>>> {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for chain in chains {
            let mut ids = Vec::with_capacity(chain.len());
            for e in chain {
                ids.push(self.lookup(names, e, "element")?);
            }
            if total && ids.len() != n {
                return self.err(chain[0].1, format!("chain lists {} of {n} elements", ids.len()));
            }
            for w in ids.windows(2) {
                leq[w[0]][w[1]] = true;
            }
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Ok(leq)
    }

    fn order_field(&mut self, fields: &mut Vec<Field>, names: &[String]) -> PResult<Option<Vec<Vec<bool>>>> {
        match take(fields, "order") {
            Some(Field { value: Syn::Order(chains), .. }) => {
                let total = chains.len() == 1 && names.len() > 1 && chains[0].len() > 1 && chains[0].len() == names.len();
                Ok(Some(self.leq_from(names, &chains, total)?))
            }
            Some(f) => self.err(f.key_span, "malformed order"),
            None => Ok(None),
        }
    }

    fn table(&mut self, f: Field, rows: usize, cols: usize, row_names: &str, values: &[String]) -> PResult<Vec<usize>> {
        let Syn::Rows(table) = f.value else {
            return self.err(f.key_span, format!("`{}` expects a table", f.key));
        };
        if table.len() != rows {
            return self.err(f.key_span, format!("`{}` needs {rows} rows (one per {row_names}), found {}", f.key, table.len()));
        }
        let mut out = Vec::with_capacity(rows * cols);
        for row in &table {
            if row.len() != cols {
                let span = row.first().map_or(f.key_span, |c| c.1);
                return self.err(span, format!("`{}` rows need {cols} entries, found {}", f.key, row.len()));
            }
            for cell in row {
                out.push(self.lookup(values, cell, "element")?);
            }
        }
        Ok(out)
    }

    fn required(&mut self, fields: &mut Vec<Field>, key: &str, kind: &str, name: &str, close: Span) -> PResult<Field> {
        match take(fields, key) {
            Some(f) => Ok(f),
            None => self.err(close, format!("{kind} {name}: {key} required")),
        }
    }

    fn names_field(&mut self, fields: &mut Vec<Field>, key: &str, kind: &str, name: &str, close: Span) -> PResult<Vec<String>> {
        let f = self.required(fields, key, kind, name, close)?;
        let Syn::Names(list) = f.value else { return self.err(f.key_span, format!("`{key}` expects a list")) };
        self.names(list, key)
    }

    fn quantale(&mut self, name: &str) -> PResult<Item> {
        if self.eat(&Tok::Eq) {
            let r = self.reference("a quantale")?;
            let q = self.base(&r)?;
            return Ok(Item::Quantale(q.to_data()));
        }
        let (mut fields, close) = self.block("quantale", name, &["elements", "order", "tensor", "unit"])?;
        let elements = self.names_field(&mut fields, "elements", "quantale", name, close)?;
        let n = elements.len();
        if n == 0 {
            return self.err(close, format!("quantale {name}: at least one element required"));
        }
        let Some(leq) = self.order_field(&mut fields, &elements)? else {
            return self.err(close, format!("quantale {name}: order required"));
        };
        let tensor_field = self.required(&mut fields, "tensor", "quantale", name, close)?;
        let tensor = match tensor_field.value {
            Syn::Builtin(r) => {
                let q = self.base(&r)?;
                if q.size() != n {
                    return self.err(r.1, format!("builtin `{}` has {} elements, {name} has {n}", r.0, q.size()));
                }
                q.to_data().tensor
            }
            _ => {
                let flat = self.table(tensor_field, n, n, "element", &elements)?;
                flat.chunks(n).map(|r| r.to_vec()).collect()
            }
        };
        let unit_field = self.required(&mut fields, "unit", "quantale", name, close)?;
        let Syn::Word(u) = unit_field.value else { return self.err(unit_field.key_span, "unit expects an element") };
        let unit = self.lookup(&elements, &u, "element")?;
        Ok(Item::Quantale(QuantaleData { elements, leq, tensor, unit }))
    }

    fn vcategory(&mut self, name: &str) -> PResult<Item> {
        self.keyword("over", &format!("after vcategory {name}"))?;
        let r = self.reference("a base quantale")?;
        let q = self.base(&r)?;
        let (mut fields, close) = self.block("vcategory", name, &["objects", "hom"])?;
        let objects = self.names_field(&mut fields, "objects", "vcategory", name, close)?;
        let n = objects.len();
        let mut hom: Vec<Option<usize>> = vec![None; n * n];
        if let Some(f) = take(&mut fields, "hom") {
            let Syn::Cells(cells) = f.value else { return self.err(f.key_span, "hom expects cells") };
            for (xs, y, v, is_list) in cells {
                if is_list {
                    return self.err(xs.first().map_or(v.1, |x| x.1), "list cells belong to lvcategory definitions");
                }
                let x = self.lookup(&objects, &xs[0], "object")?;
                let y = self.lookup(&objects, &y, "object")?;
                let v = self.lookup(q.element_names(), &v, "value")?;
                if hom[x * n + y].replace(v).is_some() {
                    return self.err(xs[0].1, format!("cell ({},{}) given twice", objects[x], objects[y]));
                }
            }
        }
        let defaulted = hom.iter().filter(|c| c.is_none()).count();
        if defaulted > 0 {
            self.note(close, format!("vcategory {name}: {defaulted} unspecified hom cells default to ⊥ off the diagonal and k on it"));
        }
        let hom = hom
            .iter()
            .enumerate()
            .map(|(i, c)| c.unwrap_or(if i / n.max(1) == i % n.max(1) { q.unit() } else { q.bottom() }))
            .collect();
        Ok(Item::VCategory { base: r.0, objects, hom })
    }

    fn total_map(&mut self, entries: Vec<(Named, Named)>, src: &[String], dst: &[String], close: Span, what: &str) -> PResult<Vec<usize>> {
        let mut map: Vec<Option<usize>> = vec![None; src.len()];
        for (a, b) in entries {
            let i = self.lookup(src, &a, "source element")?;
            let j = self.lookup(dst, &b, "target element")?;
            if map[i].replace(j).is_some() {
                return self.err(a.1, format!("`{}` mapped twice", a.0));
            }
        }
        if let Some(i) = map.iter().position(|m| m.is_none()) {
            return self.err(close, format!("{what}: `{}` has no image", src[i]));
        }
        Ok(map.into_iter().flatten().collect())
    }

    fn defined(&mut self, r: &Named, kind: &str) -> PResult<()> {
        match self.doc.get(&r.0) {
            Some(d) if d.item.kind() == kind => Ok(()),
            Some(d) => {
                let k = d.item.kind();
                self.err(r.1, format!("`{}` is a {k}, expected a {kind}", r.0))
            }
            None => self.err(r.1, format!("unknown {kind} `{}`", r.0)),
        }
    }

    fn vfunctor(&mut self, name: &str) -> PResult<Item> {
        self.expect(Tok::Colon, &format!("after vfunctor {name}"))?;
        let s = self.ident("a source vcategory")?;
        self.expect(Tok::Arrow, "between source and target")?;
        let t = self.ident("a target vcategory")?;
        self.defined(&s, "vcategory")?;
        self.defined(&t, "vcategory")?;
        let (mut fields, close) = self.block("vfunctor", name, &["map"])?;
        let f = self.required(&mut fields, "map", "vfunctor", name, close)?;
        let Syn::Map(entries) = f.value else { return self.err(f.key_span, "map expects a map") };
        let objects = |d: Option<&Definition>| match d.map(|d| &d.item) {
            Some(Item::VCategory { objects, .. }) => objects.clone(),
            _ => Vec::new(),
        };
        let (src, dst) = (objects(self.doc.get(&s.0)), objects(self.doc.get(&t.0)));
        let map = self.total_map(entries, &src, &dst, close, &format!("vfunctor {name}"))?;
        Ok(Item::VFunctor { source: s.0, target: t.0, map })
    }

    fn module(&mut self, name: &str) -> PResult<Item> {
        self.keyword("over", &format!("after module {name}"))?;
        let r = self.reference("a base quantale")?;
        let q = self.base(&r)?;
        let (mut fields, close) = self.block("module", name, &["carrier", "order", "action"])?;
        let carrier = self.names_field(&mut fields, "carrier", "module", name, close)?;
        let Some(leq) = self.order_field(&mut fields, &carrier)? else {
            return self.err(close, format!("module {name}: order required"));
        };
        let f = self.required(&mut fields, "action", "module", name, close)?;
        let action = self.action(f, &q, &carrier, &leq, None)?;
        Ok(Item::Module { base: r.0, carrier, leq, action })
    }

    /// Rows `v ↦ (ρ(v,x))_x`, or `canonical` over a two-element base, or
    /// `self` when the carrier is the base itself.
    fn action(&mut self, f: Field, q: &Quantale, carrier: &[String], leq: &[Vec<bool>], target: Option<&Quantale>) -> PResult<Vec<usize>> {
        let n = carrier.len();
        match &f.value {
            Syn::Word((w, span)) if w == "canonical" => {
                if q.size() != 2 {
                    return self.err(*span, "`canonical` needs a two-element base");
                }
                let bottom = (0..n).find(|&b| (0..n).all(|x| leq[b][x]));
                let Some(bottom) = bottom else { return self.err(*span, "carrier has no least element") };
                Ok(q.elements().flat_map(|v| (0..n).map(move |x| if v == q.unit() { x } else { bottom })).collect())
            }
            Syn::Word((w, span)) if w == "self" => match target {
                Some(t) if t.size() == q.size() => {
                    Ok(q.elements().flat_map(|v| q.elements().map(move |x| (v, x))).map(|(v, x)| q.tensor(v, x)).collect())
                }
                _ => self.err(*span, "`self` needs the base acting on itself"),
            },
            Syn::Word((w, span)) => self.err(*span, format!("unknown action `{w}`")),
            _ => self.table(f, q.size(), n, "base element", carrier),
        }
    }

    fn monoid(&mut self, name: &str) -> PResult<Item> {
        self.keyword("on", &format!("after monoid {name}"))?;
        let m = self.ident("a module")?;
        self.defined(&m, "module")?;
        let carrier = match self.doc.get(&m.0).map(|d| &d.item) {
            Some(Item::Module { carrier, .. }) => carrier.clone(),
            _ => Vec::new(),
        };
        let (mut fields, close) = self.block("monoid", name, &["mult", "unit"])?;
        let f = self.required(&mut fields, "mult", "monoid", name, close)?;
        let n = carrier.len();
        let mult = self.table(f, n, n, "element", &carrier)?;
        let u = self.required(&mut fields, "unit", "monoid", name, close)?;
        let Syn::Word(u) = u.value else { return self.err(u.key_span, "unit expects an element") };
        let unit = self.lookup(&carrier, &u, "element")?;
        Ok(Item::Monoid { module: m.0, mult, unit })
    }

    fn embedding(&mut self, name: &str) -> PResult<Item> {
        self.expect(Tok::Colon, &format!("after embedding {name}"))?;
        let s = self.reference("a source quantale")?;
        self.expect(Tok::Arrow, "between source and target")?;
        let t = self.reference("a target quantale")?;
        let (v, q) = (self.base(&s)?, self.base(&t)?);
        let (mut fields, close) = self.block("embedding", name, &["map"])?;
        let f = self.required(&mut fields, "map", "embedding", name, close)?;
        let Syn::Map(entries) = f.value else { return self.err(f.key_span, "map expects a map") };
        let map = self.total_map(entries, v.element_names(), q.element_names(), close, &format!("embedding {name}"))?;
        Ok(Item::Embedding { source: s.0, target: t.0, map })
    }

    fn acted(&mut self, name: &str) -> PResult<Item> {
        self.expect(Tok::Colon, &format!("after acted {name}"))?;
        let b = self.reference("a base quantale")?;
        self.keyword("on", "between base and quantale")?;
        let t = self.reference("a quantale")?;
        let (v, q) = (self.base(&b)?, self.base(&t)?);
        let (mut fields, close) = self.block("acted", name, &["action"])?;
        let f = self.required(&mut fields, "action", "acted", name, close)?;
        let leq = q.lattice().leq_table();
        let action = self.action(f, &v, q.element_names(), &leq, Some(&q))?;
        Ok(Item::Acted { base: b.0, quantale: t.0, action })
    }

    fn lvcategory(&mut self, name: &str) -> PResult<Item> {
        if self.eat(&Tok::Eq) {
            self.keyword("representable", "after `=`")?;
            self.keyword("of", "after `representable`")?;
            let of = self.ident("a monoid or acted quantale")?;
            match self.doc.get(&of.0).map(|d| d.item.kind()) {
                Some("monoid" | "acted") => {}
                _ => return self.err(of.1, format!("`{}` is not a monoid or acted definition", of.0)),
            }
            self.keyword("max_len", "after the representing object")?;
            let (max_len, span) = self.number("a list length")?;
            if max_len == 0 {
                return self.err(span, "max_len must be at least 1");
            }
            if let Err(e) = self.doc.acted_of(&of.0) {
                return self.err(of.1, format!("`{}` does not give an acted quantale: {e}", of.0));
            }
            let size = self.doc.acted_of(&of.0).map(|a| a.quantale().size()).unwrap_or(0);
            if let Err(e) = ListIndex::new(size, max_len) {
                return self.err(span, e.to_string());
            }
            return Ok(Item::Representable { of: of.0, max_len });
        }
        self.keyword("over", &format!("after lvcategory {name}"))?;
        let r = self.reference("a base quantale")?;
        let q = self.base(&r)?;
        let (mut fields, close) = self.block("lvcategory", name, &["objects", "max_len", "hom"])?;
        let objects = self.names_field(&mut fields, "objects", "lvcategory", name, close)?;
        let f = self.required(&mut fields, "max_len", "lvcategory", name, close)?;
        let Syn::Number(max_len, span) = f.value else { return self.err(f.key_span, "max_len expects a number") };
        if max_len == 0 {
            return self.err(span, "max_len must be at least 1");
        }
        let index = match ListIndex::new(objects.len(), max_len) {
            Ok(i) => i,
            Err(e) => return self.err(span, e.to_string()),
        };
        let n = objects.len();
        let mut hom: Vec<Option<usize>> = vec![None; index.len() * n];
        if let Some(f) = take(&mut fields, "hom") {
            let Syn::Cells(cells) = f.value else { return self.err(f.key_span, "hom expects cells") };
            for (xs, y, v, _) in cells {
                let mut ids = Vec::with_capacity(xs.len());
                for x in &xs {
                    ids.push(self.lookup(&objects, x, "object")?);
                }
                let y_id = self.lookup(&objects, &y, "object")?;
                let Some(i) = index.index(&ids) else {
                    return self.err(y.1, format!("list of length {} exceeds max_len {max_len}", ids.len()));
                };
                let v = self.lookup(q.element_names(), &v, "value")?;
                if hom[i * n + y_id].replace(v).is_some() {
                    return self.err(y.1, "cell given twice");
                }
            }
        }
        let defaulted = hom.iter().filter(|c| c.is_none()).count();
        if defaulted > 0 {
            self.note(close, format!("lvcategory {name}: {defaulted} unspecified cells default to ⊥, except k at ((x),x)"));
        }
        let hom = hom
            .iter()
            .enumerate()
            .map(|(c, v)| {
                v.unwrap_or_else(|| {
                    let (i, y) = (c / n, c % n);
                    if index.list(i) == [y] {
                        q.unit()
                    } else {
                        q.bottom()
                    }
                })
            })
            .collect();
        Ok(Item::LVCategory { base: r.0, objects, max_len, hom })
    }
}

fn take(fields: &mut Vec<Field>, key: &str) -> Option<Field> {
    let i = fields.iter().position(|f| f.key == key)?;
    Some(fields.remove(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO: &str = "quantale B { elements: [0, 1] order: 0 < 1 tensor: [[0,0],[0,1]] unit: 1 }";

    #[test]
    fn minimal_quantale() {
        let doc = parse(TWO).unwrap();
        assert_eq!(doc.definitions.len(), 1);
        let q = doc.quantale("B").unwrap();
        assert_eq!(q.size(), 2);
    }

    #[test]
    fn missing_unit_points_at_closing_brace() {
        let src = "quantale Q {\n  elements: [0, 1]\n  order: 0 < 1\n  tensor: builtin two\n}";
        let diags = parse(src).unwrap_err();
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].message, "quantale Q: unit required");
        assert_eq!((diags[0].line, diags[0].column), (5, 1));
    }

    #[test]
    fn unknown_object_in_hom_cell() {
        let src = "vcategory X over two { objects: [a, b] hom: { (a,b): 1, (a,c): 0 } }";
        let diags = parse(src).unwrap_err();
        assert_eq!(diags.len(), 1);
        assert_eq!(&src[diags[0].span.start..diags[0].span.end], "c");
        assert!(diags[0].message.contains("unknown object `c`"));
    }

    #[test]
    fn defaults_are_noted() {
        let doc = parse("vcategory X over chain_min(3) { objects: [a, b] hom: { (a,b): 1 } }").unwrap();
        assert_eq!(doc.notes.len(), 1);
        let x = doc.vcategory("X").unwrap();
        assert_eq!((x.a(0, 0), x.a(0, 1), x.a(1, 0)), (2, 1, 0));
    }

    #[test]
    fn all_errors_mode_recovers() {
        let src = format!("quantale A {{ elements: [0] }}\n{TWO}\nmodule M over Nope {{ }}\nacted T: B on B {{ action: self }}");
        let diags = parse(&src).unwrap_err();
        assert_eq!(diags.len(), 2);
        assert_eq!(parse_with(&src, ParseMode::FirstError).unwrap_err().len(), 1);
    }

    #[test]
    fn references_and_kinds() {
        let src = format!("{TWO}\nmonoid M on B {{ mult: [[0,0],[0,1]] unit: 1 }}");
        let diags = parse(&src).unwrap_err();
        assert!(diags[0].message.contains("is a quantale, expected a module"));
        let dup = format!("{TWO}\n{TWO}");
        assert!(parse(&dup).unwrap_err()[0].message.contains("already defined"));
    }

    #[test]
    fn law_failures_still_parse() {
        let src = "quantale Q { elements: [0, 1] order: 0 < 1 tensor: [[0,0],[1,1]] unit: 1 }";
        let doc = parse(src).unwrap();
        assert!(!doc.check("Q", 1).unwrap().is_ok());
        assert!(doc.quantale("Q").is_err());
    }
}
