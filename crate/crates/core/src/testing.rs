//! proptest strategies shared by the unit tests.

use std::ops::RangeInclusive;

use proptest::prelude::*;

use crate::matrix::ExactMatrix;
use crate::rational::Rational;
use crate::sympoly::NodeSet;

pub fn ints(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| Rational::from_integer(v)).collect()
}

pub fn arb_rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=50).prop_map(|(n, d)| Rational::from_ratio(n, d))
}

pub fn arb_nodes(len: RangeInclusive<usize>) -> impl Strategy<Value = NodeSet> {
    proptest::collection::vec(arb_rational(), len).prop_map(|v| NodeSet::new(v).unwrap())
}

pub fn arb_distinct_nodes(len: RangeInclusive<usize>) -> impl Strategy<Value = NodeSet> {
    proptest::collection::btree_set(arb_rational(), len)
        .prop_map(|set| set.into_iter().collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| NodeSet::new(v).unwrap())
}

pub fn arb_matrix(dim: RangeInclusive<usize>) -> impl Strategy<Value = ExactMatrix> {
    dim.prop_flat_map(|n| proptest::collection::vec(arb_rational(), n * n).prop_map(move |v| {
        let mut it = v.into_iter();
        ExactMatrix::from_fn(n, |_, _| it.next().unwrap())
    }))
}
