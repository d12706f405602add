#![allow(dead_code, clippy::needless_range_loop)]

use cralg::algebra::Algebra;
use cralg::poly::Poly;
use cralg::scalar::Rational;
use cralg::surface::{make_surface, ModelSurface};
use num_bigint::BigInt;
use num_traits::Zero;

pub fn sphere() -> ModelSurface {
    make_surface(1, 1, &["z1*zb1"], &[1], &[2]).unwrap()
}

pub fn quartic() -> ModelSurface {
    make_surface(1, 1, &["z1^2*zb1^2"], &[1], &[4]).unwrap()
}

/// Product read directly off the structure constants.
pub fn product(a: &Algebra, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let l = a.dim();
    let mut out = vec![Rational::zero(); l];
    for i in 0..l {
        for j in 0..l {
            for (k, slot) in out.iter_mut().enumerate() {
                *slot += &x[i] * &y[j] * a.constant(i, j, k);
            }
        }
    }
    out
}

/// `sum c_ijk x_i y_j` on coordinate polynomials.
pub fn coordinate_product(a: &Algebra, x: &[Poly], y: &[Poly]) -> Vec<Poly> {
    let t = x[0].table().clone();
    let l = a.dim();
    let mut out = vec![Poly::zero(&t); l];
    for i in 0..l {
        for j in 0..l {
            let xy = &x[i] * &y[j];
            for (k, slot) in out.iter_mut().enumerate() {
                let c = a.constant(i, j, k);
                if !c.is_zero() {
                    *slot = &*slot + &xy.scale_rat(c);
                }
            }
        }
    }
    out
}

/// Rank by fraction-free Gaussian elimination over the integers.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>, ncols: usize) -> usize {
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            for c in col + 1..ncols {
                m[r][c] = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}
