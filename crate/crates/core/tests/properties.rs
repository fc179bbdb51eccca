use std::sync::Arc;

use proptest::prelude::*;

use qlab::dsl::{emit, parse};
use qlab::order::catalog::{builtin_catalog, chain_min, lukasiewicz};
use qlab::pvalg::{dense_to_weighted, pv_map, pv_mult, pv_unit};
use qlab::suplat::{enumerate_lattices, tensor_sup};
use qlab::vcat::{check_vcategory, free_vcategory};
use qlab::vmat::{compose, leq_matrix};
use qlab::{Quantale, VMatrix};

fn luk4() -> Arc<Quantale> {
    Arc::new(lukasiewicz(4).unwrap())
}

fn matrix(q: &Arc<Quantale>, rows: usize, cols: usize, cells: &[usize]) -> VMatrix {
    VMatrix::new(q.clone(), rows, cols, cells.iter().take(rows * cols).map(|c| c % q.size()).collect()).unwrap()
}

proptest! {
    #[test]
    fn residual_is_right_adjoint(which in 0usize..9, v in 0usize..6, w in 0usize..6, u in 0usize..6) {
        let (_, q) = &builtin_catalog()[which];
        let n = q.size();
        let (v, w, u) = (v % n, w % n, u % n);
        prop_assert_eq!(q.leq(q.tensor(v, w), u), q.leq(w, q.residual(v, u)));
    }

    #[test]
    fn matrix_composition_is_associative_and_distributive(
        dims in proptest::collection::vec(1usize..=4, 4),
        cells in proptest::collection::vec(0usize..4, 64),
    ) {
        let q = luk4();
        let r = matrix(&q, dims[0], dims[1], &cells);
        let s = matrix(&q, dims[1], dims[2], &cells[16..]);
        let s2 = matrix(&q, dims[1], dims[2], &cells[32..]);
        let t = matrix(&q, dims[2], dims[3], &cells[48..]);
        prop_assert_eq!(compose(&compose(&r, &s).unwrap(), &t).unwrap(), compose(&r, &compose(&s, &t).unwrap()).unwrap());
        prop_assert_eq!(
            compose(&r, &s.join(&s2).unwrap()).unwrap(),
            compose(&r, &s).unwrap().join(&compose(&r, &s2).unwrap()).unwrap()
        );
        prop_assert_eq!(compose(&r, &s).unwrap().involute(), compose(&s.involute(), &r.involute()).unwrap());
    }

    #[test]
    fn free_vcategory_contains_its_generator(n in 1usize..=4, cells in proptest::collection::vec(0usize..4, 16)) {
        let q = luk4();
        let r = matrix(&q, n, n, &cells);
        let x = free_vcategory(&r).unwrap();
        prop_assert!(check_vcategory(x.hom()).unwrap().is_ok());
        prop_assert!(leq_matrix(&r, x.hom()).unwrap());
    }

    #[test]
    fn pv_unit_laws(n in 1usize..=3, cells in proptest::collection::vec(0usize..4, 3)) {
        let q = chain_min(4).unwrap();
        let phi = dense_to_weighted(&q, &cells[..n]);
        prop_assert_eq!(&pv_mult(&q, &pv_unit(&q, phi.clone())), &phi);
        prop_assert_eq!(&pv_mult(&q, &pv_map(&q, &phi, |&x| pv_unit(&q, x))), &phi);
    }

    #[test]
    fn sup_tensor_is_symmetric_in_size(i in 0usize..5, j in 0usize..5) {
        let lattices: Vec<_> = (1..=4).flat_map(|n| enumerate_lattices(n).unwrap()).collect();
        let (x, y) = (&lattices[i], &lattices[j]);
        let xy = tensor_sup(x, y).unwrap();
        let yx = tensor_sup(y, x).unwrap();
        prop_assert!(xy.lattice().find_isomorphism(yx.lattice()).is_some());
    }

    #[test]
    fn emitted_documents_reparse(n in 1usize..=3, cells in proptest::collection::vec(0usize..3, 9)) {
        let names = ["p", "q", "r"];
        let hom: Vec<String> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{}): {}", names[a], names[b], cells[a * 3 + b]))
            .collect();
        let src = format!(
            "vcategory X over lukasiewicz(3) {{\n  objects: [{}]\n  hom: {{ {} }}\n}}\n",
            names[..n].join(", "),
            hom.join(", ")
        );
        let doc = parse(&src).unwrap();
        let text = emit(&doc);
        let back = parse(&text).unwrap();
        prop_assert!(back.same_content(&doc));
        prop_assert_eq!(emit(&back), text);
    }
}
