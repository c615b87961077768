//! Seeded generators for chain graphs and their intersections.

use rand::Rng;

use crate::decompose::order_from_chain_triple;
use crate::matrix::BinaryMatrix;

/// A random chain graph: row `u` is adjacent to column `v` iff
/// `x[u] < y[v]` for random integers `x`, `y`.
pub fn random_chain<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> BinaryMatrix {
    let range = (rows + cols).max(2) as u32;
    let x: Vec<u32> = (0..rows).map(|_| rng.gen_range(0..range)).collect();
    let y: Vec<u32> = (0..cols).map(|_| rng.gen_range(0..=range)).collect();
    BinaryMatrix::from_fn(rows, cols, |i, j| x[i] < y[j])
}

/// Three independent random chain graphs on the same vertex set.
pub fn random_chain_triple<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> [BinaryMatrix; 3] {
    [(); 3].map(|_| random_chain(rng, rows, cols))
}

/// The intersection of a random chain triple, reordered to avoid Γ and Δ.
pub fn random_chain3_instance<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> BinaryMatrix {
    let [c1, c2, c3] = random_chain_triple(rng, rows, cols);
    let (rp, cp) = order_from_chain_triple(&c1, &c2, &c3).expect("random factors are chain graphs");
    let product = c1.hadamard(&c2).and_then(|p| p.hadamard(&c3)).expect("same shape");
    product.permute(&rp, &cp).expect("orders match the shape")
}
