//! Vieta and Vandermonde matrices with their product-form determinants.
//!
//! The two products keep their own orientation: the Vieta determinant is
//! `prod_{i<k} (a_i - a_k)` while the Vandermonde one is
//! `prod_{i<k} (a_k - a_i)`. They differ by `(-1)^{n(n-1)/2}`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::matrix::ExactMatrix;
use crate::rational::Rational;
use crate::sympoly::{leave_one_out_table, poly_from_roots, DensePolynomial, NodeSet};

/// Column `j` stacks `e_0, ..., e_{n-1}` of the nodes without node `j`.
pub fn build_vieta(ns: &NodeSet) -> ExactMatrix {
    let table = leave_one_out_table(ns);
    ExactMatrix::from_rows(table.into_rows()).expect("table is square and non-empty")
}

/// `prod_{i<k} (a_i - a_k)`, or `prod_{i<k} (a_k - a_i)` when `ascending`,
/// accumulated over the integers: each factor is `(p_i q_k - p_k q_i) / (q_i q_k)`,
/// so the numerator is a plain product and the denominator is
/// `prod q_i^{n-1}`. One reduction at the end.
fn pair_product(ns: &NodeSet, ascending: bool) -> Rational {
    let nodes = ns.as_slice();
    let n = nodes.len();
    let mut numer = BigInt::one();
    for (i, a) in nodes.iter().enumerate() {
        for b in &nodes[i + 1..] {
            let cross = if ascending {
                b.numer() * a.denom() - a.numer() * b.denom()
            } else {
                a.numer() * b.denom() - b.numer() * a.denom()
            };
            if cross.is_zero() {
                return Rational::zero();
            }
            numer *= cross;
        }
    }
    let denom = nodes.iter().fold(BigInt::one(), |acc, a| acc * a.denom()).pow(n as u32 - 1);
    Rational::new(numer, denom).expect("denominators are positive")
}

pub fn vieta_det_closed(ns: &NodeSet) -> Rational {
    pair_product(ns, false)
}

/// Entry `(r, j)` is `a_j^r`.
pub fn build_vandermonde(ns: &NodeSet) -> ExactMatrix {
    let n = ns.len();
    let mut rows = vec![vec![Rational::one(); n]];
    for r in 1..n {
        let next = rows[r - 1].iter().zip(ns.iter()).map(|(p, a)| p * a).collect();
        rows.push(next);
    }
    ExactMatrix::from_rows(rows).expect("square and non-empty")
}

pub fn vandermonde_det_closed(ns: &NodeSet) -> Rational {
    pair_product(ns, true)
}

/// `(a_1 - c, ..., a_n - c)`.
pub fn shift_nodes(ns: &NodeSet, c: &Rational) -> NodeSet {
    NodeSet::new(ns.iter().map(|a| a - c).collect()).expect("shift preserves length")
}

/// `(-1)^{n(n-1)/2}` as a rational.
pub fn bridge_sign(n: usize) -> Rational {
    if (n * n.saturating_sub(1) / 2).is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// The Vieta determinant of `(a_1, ..., a_n, x)` as a polynomial in `x`:
/// `(-1)^n * vieta_det_closed(ns) * prod (x - a_i)`. Zero when nodes repeat.
pub fn vieta_extension_poly(ns: &NodeSet) -> DensePolynomial {
    let mut lead = vieta_det_closed(ns);
    if ns.len() % 2 == 1 {
        lead = -lead;
    }
    poly_from_roots(ns).scale(&lead)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactdet::{det_bareiss, det_laplace};
    use crate::testing::{arb_distinct_nodes, arb_nodes, arb_rational, ints};
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn vieta_examples() {
        let (a1, a2) = (rat(1, 2), rat(-1, 3));
        let m = build_vieta(&NodeSet::new(vec![a1.clone(), a2.clone()]).unwrap());
        assert_eq!(m.to_rows(), vec![vec![Rational::one(), Rational::one()], vec![a2, a1]]);

        let m = build_vieta(&NodeSet::from_ints(&[1, 2, 3]));
        assert_eq!(m, ExactMatrix::from_int_rows(&[&[1, 1, 1], &[5, 4, 3], &[6, 3, 2]]));
        assert_eq!(build_vieta(&NodeSet::from_ints(&[7])), ExactMatrix::identity(1));
    }

    #[test]
    fn vieta_closed_examples() {
        let ns = NodeSet::new(vec![rat(1, 2), rat(-1, 3)]).unwrap();
        assert_eq!(vieta_det_closed(&ns), rat(5, 6));
        assert_eq!(vieta_det_closed(&NodeSet::from_ints(&[1, 2, 3])), Rational::from_integer(-2));
        assert!(vieta_det_closed(&NodeSet::from_ints(&[4, 4, 9])).is_zero());
        assert_eq!(vieta_det_closed(&NodeSet::from_ints(&[3])), Rational::one());
    }

    #[test]
    fn vandermonde_examples() {
        assert_eq!(
            build_vandermonde(&NodeSet::from_ints(&[1, 2, 3])),
            ExactMatrix::from_int_rows(&[&[1, 1, 1], &[1, 2, 3], &[1, 4, 9]])
        );
        assert_eq!(build_vandermonde(&NodeSet::new(vec![rat(5, 7)]).unwrap()), ExactMatrix::identity(1));
        assert_eq!(build_vandermonde(&NodeSet::from_ints(&[0, 1])), ExactMatrix::from_int_rows(&[&[1, 1], &[0, 1]]));
        assert_eq!(vandermonde_det_closed(&NodeSet::from_ints(&[1, 2, 3])), Rational::from_integer(2));
        assert!(vandermonde_det_closed(&NodeSet::from_ints(&[5, 5])).is_zero());
        assert_eq!(vandermonde_det_closed(&NodeSet::from_ints(&[0, 1])), Rational::one());
    }

    #[test]
    fn shift_examples() {
        let ns = NodeSet::from_ints(&[1, 2, 3]);
        assert_eq!(shift_nodes(&ns, &Rational::from_integer(10)), NodeSet::from_ints(&[-9, -8, -7]));
        assert_eq!(shift_nodes(&ns, &Rational::zero()), ns);
        assert_eq!(shift_nodes(&NodeSet::from_ints(&[5]), &Rational::from_integer(5)), NodeSet::from_ints(&[0]));
    }

    #[test]
    fn extension_examples() {
        let ns = NodeSet::from_ints(&[1, 2, 3]);
        let f = vieta_extension_poly(&ns);
        assert_eq!(f.coeffs(), &ints(&[-12, 22, -12, 2])[..]);
        assert_eq!(f.eval(&Rational::zero()), Rational::from_integer(-12));
        let product: Rational = ns.iter().product();
        assert_eq!(f.eval(&Rational::zero()), product * vieta_det_closed(&ns));
        assert!(vieta_extension_poly(&NodeSet::from_ints(&[4, 4])).is_zero());
    }

    #[test]
    fn two_zeros_give_zero_last_row() {
        let m = build_vieta(&NodeSet::from_ints(&[0, 3, 0, 8]));
        assert!(m.row(3).iter().all(Rational::is_zero));
        assert!(det_bareiss(&m).unwrap().is_zero());
    }

    proptest! {
        #[test]
        fn closed_form_matches_oracles(ns in arb_nodes(1..=8)) {
            let m = build_vieta(&ns);
            let closed = vieta_det_closed(&ns);
            prop_assert_eq!(det_bareiss(&m).unwrap(), closed.clone());
            prop_assert_eq!(det_laplace(&m).unwrap(), closed);
        }

        #[test]
        fn shift_invariance(ns in arb_nodes(1..=7), c in arb_rational()) {
            let shifted = shift_nodes(&ns, &c);
            prop_assert_eq!(vieta_det_closed(&shifted), vieta_det_closed(&ns));
            prop_assert_eq!(det_bareiss(&build_vieta(&shifted)).unwrap(), det_bareiss(&build_vieta(&ns)).unwrap());
        }

        #[test]
        fn swap_negates(ns in arb_nodes(2..=7), pick in any::<(usize, usize)>()) {
            let n = ns.len();
            let (i, k) = (pick.0 % n, pick.1 % n);
            prop_assume!(i != k);
            let swapped = ns.swapped(i, k);
            prop_assert_eq!(vieta_det_closed(&swapped), -vieta_det_closed(&ns));
            let mut cols_swapped = build_vieta(&ns);
            cols_swapped.swap_cols(i, k);
            prop_assert_eq!(&cols_swapped, &build_vieta(&swapped));
            prop_assert_eq!(det_bareiss(&cols_swapped).unwrap(), -det_bareiss(&build_vieta(&ns)).unwrap());
        }

        #[test]
        fn sign_bridge(ns in arb_nodes(1..=10)) {
            prop_assert_eq!(vieta_det_closed(&ns), bridge_sign(ns.len()) * vandermonde_det_closed(&ns));
        }

        #[test]
        fn vandermonde_matches_oracle(ns in arb_nodes(1..=7)) {
            prop_assert_eq!(det_bareiss(&build_vandermonde(&ns)).unwrap(), vandermonde_det_closed(&ns));
        }

        #[test]
        fn extension_matches_appended_determinant(ns in arb_distinct_nodes(1..=6), x in arb_rational()) {
            let f = vieta_extension_poly(&ns);
            prop_assert_eq!(f.degree(), Some(ns.len()));
            let oracle = det_bareiss(&build_vieta(&ns.with_appended(x.clone()))).unwrap();
            prop_assert_eq!(f.eval(&x), oracle);
        }
    }
}
