//! Parse a definition file, check it, and print its canonical form.

use qlab::dsl::{emit, parse};

const SOURCE: &str = "
quantale L3 = lukasiewicz(3)

vcategory X over L3 {
  objects: [p, q]
  hom: { (p,q): 1 }
}

module M over two {
  carrier: [b, x, y, t]
  order: [b < x < t, b < y < t]
  action: canonical
}
";

fn main() {
    let doc = match parse(SOURCE) {
        Ok(doc) => doc,
        Err(diags) => {
            for d in diags {
                eprintln!("{}:{}: {}", d.line, d.column, d.message);
            }
            std::process::exit(2);
        }
    };
    for def in &doc.definitions {
        let verdict = match doc.check(&def.name, 1) {
            Ok(r) if r.is_ok() => "ok".to_string(),
            Ok(r) => format!("{} violations", r.violations.len()),
            Err(e) => e.to_string(),
        };
        println!("{} {}: {verdict}", def.item.kind(), def.name);
    }
    println!("\n{}", emit(&doc));

    if let Err(diags) = parse("quantale Q { elements: [0, 1] order: 0 < 1 }") {
        println!("rejected: {}:{}: {}", diags[0].line, diags[0].column, diags[0].message);
    }
}
