//! Tensor products of suplattices and the bimorphisms they classify.

use qlab::order::FiniteLattice;
use qlab::suplat::{check_bimorphism, classify_bimorphism, enumerate_supmaps, tensor_sup};

fn main() -> qlab::Result<()> {
    let x = FiniteLattice::powerset(2);
    let y = FiniteLattice::chain(3);
    let t = tensor_sup(&x, &y)?;
    println!("|P(2) ⊗ 3| = {}", t.size());

    let z = FiniteLattice::chain(2);
    let maps = enumerate_supmaps(t.lattice(), &z)?;
    println!("{} sup-maps from the tensor into 2", maps.len());

    // f(A, i) = 1 iff A contains the first point and i is the top
    let f: Vec<usize> = x.elements().flat_map(|a| y.elements().map(move |b| usize::from(a & 1 == 1 && b == 2))).collect();
    println!("f is a bimorphism: {}", check_bimorphism(&x, &y, &z, &f)?.is_ok());
    println!("classifying map: {:?}", classify_bimorphism(&t, &z, &f)?);
    Ok(())
}
