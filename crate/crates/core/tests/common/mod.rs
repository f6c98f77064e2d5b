#![allow(dead_code)]

use antiflex::exactla::{q, tuples, CoeffTensor, Matrix, Rational};
use antiflex::glie::Cochain;
use antiflex::structmaps::{is_rota_baxter, LinearOperator};
use antiflex::Bimodule;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn small(rng: &mut StdRng, bound: i64) -> Rational {
    q(rng.gen_range(-bound..=bound))
}

pub fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize, bound: i64) -> Matrix {
    let data = (0..rows * cols).map(|_| small(rng, bound)).collect();
    Matrix::from_vec(rows, cols, data).unwrap()
}

pub fn random_operator(rng: &mut StdRng, rows: usize, cols: usize, bound: i64) -> LinearOperator {
    LinearOperator::new(random_matrix(rng, rows, cols, bound))
}

pub fn random_tensor(
    rng: &mut StdRng,
    arity: usize,
    in_dim: usize,
    out_dim: usize,
    bound: i64,
) -> CoeffTensor {
    let n = in_dim.pow(arity as u32) * out_dim;
    CoeffTensor::from_vec(arity, in_dim, out_dim, (0..n).map(|_| small(rng, bound)).collect())
        .unwrap()
}

/// A random `C^n(M, A)` cochain.
pub fn random_cochain(rng: &mut StdRng, m: &Bimodule, degree: usize, bound: i64) -> Cochain {
    Cochain::new(random_tensor(rng, degree, m.mdim(), m.base().dim(), bound))
}

/// Every `rows × cols` matrix with entries in `grid`, lexicographically.
pub fn all_operators(rows: usize, cols: usize, grid: &[i64]) -> Vec<LinearOperator> {
    tuples(rows * cols, grid.len())
        .map(|t| {
            let data = t.iter().map(|&i| q(grid[i])).collect();
            LinearOperator::new(Matrix::from_vec(rows, cols, data).unwrap())
        })
        .collect()
}

pub fn rota_baxter_sweep(m: &Bimodule, grid: &[i64]) -> Vec<LinearOperator> {
    all_operators(m.base().dim(), m.mdim(), grid)
        .into_iter()
        .filter(|t| is_rota_baxter(m, t).unwrap().holds)
        .collect()
}

/// Integer structure constants `c[i][j][k]` for `eᵢ·eⱼ`, read without the
/// library's tensor indexing.
pub fn int_table(a: &antiflex::Algebra) -> Vec<Vec<Vec<i64>>> {
    let d = a.dim();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    a.basis_product(i, j)
                        .iter()
                        .map(|c| {
                            assert!(c.is_integer());
                            i64::try_from(c.numer()).unwrap()
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Naive integer associator `(eᵢeⱼ)e_k − eᵢ(eⱼe_k)`.
pub fn int_associator(c: &[Vec<Vec<i64>>], i: usize, j: usize, k: usize) -> Vec<i64> {
    let d = c.len();
    let mut out = vec![0i64; d];
    for (s, cs) in c.iter().enumerate() {
        for (t, o) in out.iter_mut().enumerate() {
            *o += c[i][j][s] * cs[k][t] - c[j][k][s] * c[i][s][t];
        }
    }
    out
}

pub fn int_anti_flexible(c: &[Vec<Vec<i64>>]) -> bool {
    let d = c.len();
    (0..d).all(|i| {
        (0..d).all(|j| (0..d).all(|k| int_associator(c, i, j, k) == int_associator(c, k, j, i)))
    })
}

pub fn int_associative(c: &[Vec<Vec<i64>>]) -> bool {
    let d = c.len();
    (0..d).all(|i| {
        (0..d).all(|j| (0..d).all(|k| int_associator(c, i, j, k).iter().all(|&x| x == 0)))
    })
}

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}
