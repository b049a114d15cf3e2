//! Node sets, dense univariate polynomials, and elementary symmetric kernels.
//!
//! Indexing is 0-based throughout: column `j` of a [`LeaveOneOutTable`]
//! corresponds to omitting node `j` (the `(j+1)`-th node in 1-based
//! notation).

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{parse_rational, ParseRationalError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NodeSetError {
    #[error("a node set needs at least one node")]
    Empty,
    #[error(transparent)]
    Parse(#[from] ParseRationalError),
}

/// An ordered, non-empty list of rational nodes. Repeats are allowed.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct NodeSet {
    nodes: Vec<Rational>,
}

impl NodeSet {
    pub fn new(nodes: Vec<Rational>) -> Result<Self, NodeSetError> {
        if nodes.is_empty() {
            return Err(NodeSetError::Empty);
        }
        Ok(NodeSet { nodes })
    }

    /// Convenience constructor for integer nodes. Panics on an empty slice.
    pub fn from_ints(values: &[i64]) -> Self {
        NodeSet::new(values.iter().map(|&v| Rational::from_integer(v)).collect()).expect("empty node set")
    }

    /// Parses a comma-separated list such as `1,2,-3/4`. Blank space around
    /// items is ignored; error positions refer to `text`.
    pub fn parse_list(text: &str) -> Result<Self, NodeSetError> {
        let mut nodes = Vec::new();
        let mut start = 0;
        for item in text.split(',') {
            let leading = item.len() - item.trim_start().len();
            let trimmed = item.trim();
            let value = parse_rational(trimmed).map_err(|e| e.offset(start + leading))?;
            nodes.push(value);
            start += item.len() + 1;
        }
        NodeSet::new(nodes)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.nodes
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.nodes.iter()
    }

    pub fn get(&self, index: usize) -> &Rational {
        &self.nodes[index]
    }

    /// The nodes with position `index` removed, possibly empty.
    pub fn without(&self, index: usize) -> Vec<Rational> {
        let mut rest = self.nodes.clone();
        rest.remove(index);
        rest
    }

    /// The node set with `x` appended last.
    pub fn with_appended(&self, x: Rational) -> NodeSet {
        let mut nodes = self.nodes.clone();
        nodes.push(x);
        NodeSet { nodes }
    }

    pub fn swapped(&self, i: usize, k: usize) -> NodeSet {
        let mut nodes = self.nodes.clone();
        nodes.swap(i, k);
        NodeSet { nodes }
    }

    pub fn has_repeats(&self) -> bool {
        let mut sorted = self.nodes.clone();
        sorted.sort();
        sorted.windows(2).any(|w| w[0] == w[1])
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.nodes.iter().map(ToString::to_string).collect()
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.nodes
    }
}

impl TryFrom<Vec<Rational>> for NodeSet {
    type Error = NodeSetError;

    fn try_from(nodes: Vec<Rational>) -> Result<Self, Self::Error> {
        NodeSet::new(nodes)
    }
}

impl From<NodeSet> for Vec<Rational> {
    fn from(ns: NodeSet) -> Self {
        ns.nodes
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.nodes).finish()
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_strings().join(","))
    }
}

/// Univariate polynomial with rational coefficients in ascending degree.
/// The zero polynomial has no coefficients; otherwise the last one is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DensePolynomial {
    coeffs: Vec<Rational>,
}

impl DensePolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        DensePolynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        DensePolynomial::new(coeffs.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    pub fn zero() -> Self {
        DensePolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        DensePolynomial { coeffs: vec![Rational::one()] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Rational::is_one)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Multiplies by `(x - root)`.
    pub fn mul_linear(&self, root: &Rational) -> DensePolynomial {
        if self.is_zero() {
            return DensePolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k + 1] += c;
            out[k] -= &(c * root);
        }
        DensePolynomial::new(out)
    }

    pub fn scale(&self, factor: &Rational) -> DensePolynomial {
        DensePolynomial::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Formal derivative iterated `order` times.
    pub fn derivative(&self, order: usize) -> DensePolynomial {
        if order >= self.coeffs.len() {
            return DensePolynomial::zero();
        }
        let coeffs = (order..self.coeffs.len())
            .map(|k| {
                // k (k-1) ... (k-order+1)
                let falling: Rational = ((k - order + 1)..=k).map(|m| Rational::from_integer(m as i64)).product();
                &self.coeffs[k] * &falling
            })
            .collect();
        DensePolynomial::new(coeffs)
    }
}

impl fmt::Debug for DensePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensePolynomial{:?}", self.coeffs)
    }
}

/// `entries[k][j] = e_k` of the nodes with node `j` removed, `k, j < n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeaveOneOutTable {
    entries: Vec<Vec<Rational>>,
}

impl LeaveOneOutTable {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, k: usize, j: usize) -> &Rational {
        &self.entries[k][j]
    }

    pub fn row(&self, k: usize) -> &[Rational] {
        &self.entries[k]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        self.entries.iter().map(|row| row[j].clone()).collect()
    }

    pub fn into_rows(self) -> Vec<Vec<Rational>> {
        self.entries
    }
}

/// Coefficients of `prod (1 + a t)` over `nodes`, i.e. `[e_0, ..., e_m]`.
fn sym_coeffs(nodes: &[Rational]) -> Vec<Rational> {
    let mut e = Vec::with_capacity(nodes.len() + 1);
    e.push(Rational::one());
    for a in nodes {
        e.push(Rational::zero());
        for k in (1..e.len()).rev() {
            let term = a * &e[k - 1];
            e[k] += &term;
        }
    }
    e
}

/// `[e_0, e_1, ..., e_n]` of the node set.
pub fn elem_sym_all(ns: &NodeSet) -> Vec<Rational> {
    sym_coeffs(ns.as_slice())
}

pub fn leave_one_out_table(ns: &NodeSet) -> LeaveOneOutTable {
    let nodes = ns.as_slice();
    let n = nodes.len();

    // prefix[j] covers nodes[..j], suffix[j] covers nodes[j..].
    let mut prefix = Vec::with_capacity(n);
    prefix.push(vec![Rational::one()]);
    for j in 1..n {
        prefix.push(extend(&prefix[j - 1], &nodes[j - 1]));
    }
    let mut suffix = vec![vec![Rational::one()]; n + 1];
    for j in (1..n).rev() {
        suffix[j] = extend(&suffix[j + 1], &nodes[j]);
    }

    let columns: Vec<Vec<Rational>> = (0..n)
        .into_par_iter()
        .map(|j| convolve_truncated(&prefix[j], &suffix[j + 1], n))
        .collect();

    let entries = (0..n)
        .map(|k| columns.iter().map(|col| col[k].clone()).collect())
        .collect();
    LeaveOneOutTable { entries }
}

fn extend(coeffs: &[Rational], a: &Rational) -> Vec<Rational> {
    let mut out = coeffs.to_vec();
    out.push(Rational::zero());
    for k in (1..out.len()).rev() {
        let term = a * &coeffs[k - 1];
        out[k] += &term;
    }
    out
}

fn convolve_truncated(p: &[Rational], q: &[Rational], len: usize) -> Vec<Rational> {
    (0..len)
        .map(|k| {
            (0..=k)
                .filter(|&i| i < p.len() && k - i < q.len())
                .map(|i| &p[i] * &q[k - i])
                .sum()
        })
        .collect()
}

/// The monic polynomial `prod (x - a)` over `roots`; `1` for no roots.
pub fn poly_from_root_slice(roots: &[Rational]) -> DensePolynomial {
    roots
        .iter()
        .fold(DensePolynomial::one(), |p, a| p.mul_linear(a))
}

pub fn poly_from_roots(ns: &NodeSet) -> DensePolynomial {
    poly_from_root_slice(ns.as_slice())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{arb_distinct_nodes, arb_nodes, ints};
    use proptest::prelude::*;

    /// Sum over all k-subsets, by bitmask enumeration.
    fn brute_elem_sym(nodes: &[Rational], k: usize) -> Rational {
        (0u32..(1 << nodes.len()))
            .filter(|mask| mask.count_ones() as usize == k)
            .map(|mask| {
                nodes
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, a)| a.clone())
                    .product::<Rational>()
            })
            .sum()
    }

    #[test]
    fn elem_sym_examples() {
        assert_eq!(elem_sym_all(&NodeSet::from_ints(&[1, 2, 3])), ints(&[1, 6, 11, 6]));
        assert_eq!(elem_sym_all(&NodeSet::from_ints(&[5])), ints(&[1, 5]));
        assert_eq!(elem_sym_all(&NodeSet::from_ints(&[0, 0])), ints(&[1, 0, 0]));
    }

    #[test]
    fn table_examples() {
        let t = leave_one_out_table(&NodeSet::from_ints(&[1, 2, 3]));
        assert_eq!(t.column(0), ints(&[1, 5, 6]));
        assert_eq!(t.column(1), ints(&[1, 4, 3]));
        assert_eq!(t.column(2), ints(&[1, 3, 2]));

        let single = leave_one_out_table(&NodeSet::from_ints(&[42]));
        assert_eq!(single.into_rows(), vec![ints(&[1])]);

        let t = leave_one_out_table(&NodeSet::from_ints(&[0, 0, 5]));
        assert_eq!(t.row(2), &ints(&[0, 0, 0])[..]);
    }

    #[test]
    fn poly_from_roots_examples() {
        assert_eq!(poly_from_roots(&NodeSet::from_ints(&[1, 2])), DensePolynomial::from_ints(&[2, -3, 1]));
        assert_eq!(poly_from_roots(&NodeSet::from_ints(&[0])), DensePolynomial::from_ints(&[0, 1]));
        assert_eq!(
            poly_from_roots(&NodeSet::from_ints(&[1, 2, 3])),
            DensePolynomial::from_ints(&[-6, 11, -6, 1])
        );
    }

    #[test]
    fn derivative_examples() {
        let p = DensePolynomial::from_ints(&[6, -5, 1]);
        assert_eq!(p.derivative(1), DensePolynomial::from_ints(&[-5, 2]));
        let sq = DensePolynomial::from_ints(&[0, 0, 1]);
        assert_eq!(sq.derivative(2), DensePolynomial::from_ints(&[2]));
        assert!(sq.derivative(3).is_zero());
        assert_eq!(sq.derivative(0), sq);
    }

    #[test]
    fn polynomial_trims_and_evaluates() {
        let p = DensePolynomial::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.eval(&Rational::from_integer(3)), Rational::from_integer(7));
        assert_eq!(DensePolynomial::from_ints(&[0]).degree(), None);
        assert!(DensePolynomial::zero().eval(&Rational::one()).is_zero());
    }

    #[test]
    fn empty_node_set_rejected() {
        assert_eq!(NodeSet::new(vec![]), Err(NodeSetError::Empty));
    }

    #[test]
    fn parse_list_positions() {
        let ns = NodeSet::parse_list("1, 2,-3/4").unwrap();
        assert_eq!(ns.to_string(), "1,2,-3/4");
        match NodeSet::parse_list("1,2,3/0") {
            Err(NodeSetError::Parse(e)) => assert_eq!(e.position(), 6),
            other => panic!("unexpected {other:?}"),
        }
        match NodeSet::parse_list("1, x") {
            Err(NodeSetError::Parse(e)) => assert_eq!(e.position(), 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(NodeSet::parse_list("1,,2").is_err());
    }

    proptest! {
        #[test]
        fn coefficient_sign_duality(ns in arb_nodes(1..=10)) {
            let e = elem_sym_all(&ns);
            let p = poly_from_roots(&ns);
            let n = ns.len();
            prop_assert_eq!(p.degree(), Some(n));
            for (k, ek) in e.iter().enumerate() {
                let signed = if k % 2 == 0 { ek.clone() } else { -ek };
                prop_assert_eq!(p.coeff(n - k), signed);
            }
        }

        #[test]
        fn columns_recombine_to_full_product(ns in arb_distinct_nodes(1..=8)) {
            let table = leave_one_out_table(&ns);
            let full = poly_from_roots(&ns);
            let n = ns.len();
            for j in 0..n {
                // column j as a monic polynomial of degree n-1: x^{n-1-k} carries (-1)^k e_k
                let col = table.column(j);
                let coeffs = (0..n).map(|d| {
                    let k = n - 1 - d;
                    if k % 2 == 0 { col[k].clone() } else { -&col[k] }
                }).collect();
                let monic = DensePolynomial::new(coeffs);
                prop_assert_eq!(monic.mul_linear(ns.get(j)), full.clone());
            }
        }

        #[test]
        fn permutation_equivariance(ns in arb_nodes(2..=8), seed in any::<u64>()) {
            let n = ns.len();
            let i = (seed % n as u64) as usize;
            let k = ((seed / 7) % n as u64) as usize;
            let swapped = ns.swapped(i, k);
            prop_assert_eq!(elem_sym_all(&swapped), elem_sym_all(&ns));
            let t = leave_one_out_table(&ns);
            let ts = leave_one_out_table(&swapped);
            for j in 0..n {
                let src = if j == i { k } else if j == k { i } else { j };
                prop_assert_eq!(ts.column(j), t.column(src));
            }
        }

        #[test]
        fn table_matches_subset_enumeration(ns in arb_nodes(1..=8)) {
            let t = leave_one_out_table(&ns);
            for j in 0..ns.len() {
                let rest = ns.without(j);
                for k in 0..ns.len() {
                    prop_assert_eq!(t.get(k, j), &brute_elem_sym(&rest, k));
                }
            }
        }
    }
}
