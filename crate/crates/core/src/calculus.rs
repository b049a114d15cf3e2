//! Wronskian of the nodal polynomial family and Jacobian of the elementary
//! symmetric map.

use crate::matrix::ExactMatrix;
use crate::rational::Rational;
use crate::structmat::vieta_det_closed;
use crate::sympoly::{elem_sym_all, poly_from_root_slice, DensePolynomial, NodeSet};

/// `polys[j] = prod_{i != j} (x - a_i)`, each monic of degree `n - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodalBasis {
    polys: Vec<DensePolynomial>,
}

impl NodalBasis {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn polys(&self) -> &[DensePolynomial] {
        &self.polys
    }
}

pub fn nodal_basis(ns: &NodeSet) -> NodalBasis {
    let polys = (0..ns.len())
        .map(|j| poly_from_root_slice(&ns.without(j)))
        .collect();
    NodalBasis { polys }
}

pub fn poly_derivative(p: &DensePolynomial, order: usize) -> DensePolynomial {
    p.derivative(order)
}

/// Entry `(r, j)` is the `r`-th derivative of `polys[j]` at `x0`.
pub fn wronskian_matrix(basis: &NodalBasis, x0: &Rational) -> ExactMatrix {
    let n = basis.len();
    let mut rows = vec![Vec::with_capacity(n); n];
    for p in &basis.polys {
        let mut d = p.clone();
        for row in rows.iter_mut() {
            row.push(d.eval(x0));
            d = d.derivative(1);
        }
    }
    ExactMatrix::from_rows(rows).expect("basis is non-empty")
}

/// `prod_{k=0}^{n-1} k!` as an exact integer.
pub fn superfactorial(n: usize) -> Rational {
    let mut acc = Rational::one();
    let mut fact = Rational::one();
    for k in 1..n {
        fact *= &Rational::from_integer(k as i64);
        acc *= &fact;
    }
    acc
}

pub fn wronskian_closed(ns: &NodeSet) -> Rational {
    superfactorial(ns.len()) * vieta_det_closed(ns)
}

/// Values `e_1(x), ..., e_n(x)` of the elementary symmetric map.
pub fn elem_sym_map(point: &NodeSet) -> Vec<Rational> {
    elem_sym_all(point).split_off(1)
}

/// Entry `(r, c)` is `d e_{r+1} / d x_{c+1}`, which is `e_r` of the
/// coordinates other than `x_{c+1}`. This is the Vieta matrix of the point,
/// but built column by column rather than from prefix/suffix products.
pub fn jacobian_matrix(point: &NodeSet) -> ExactMatrix {
    let n = point.len();
    let columns: Vec<Vec<Rational>> = (0..n)
        .map(|c| match NodeSet::new(point.without(c)) {
            Ok(rest) => elem_sym_all(&rest),
            Err(_) => vec![Rational::one()],
        })
        .collect();
    ExactMatrix::from_fn(n, |r, c| columns[c][r].clone())
}

pub fn jacobian_det_closed(point: &NodeSet) -> Rational {
    vieta_det_closed(point)
}
