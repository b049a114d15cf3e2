//! The built-in identities.

use crate::calculus::{
    elem_sym_map, jacobian_det_closed, jacobian_matrix, nodal_basis, wronskian_closed, wronskian_matrix,
};
use crate::exactdet::{det_bareiss, det_laplace_with_limit};
use crate::matrix::ExactMatrix;
use crate::rational::Rational;
use crate::structmat::{
    bridge_sign, build_vandermonde, build_vieta, shift_nodes, vandermonde_det_closed, vieta_det_closed,
    vieta_extension_poly,
};
use crate::sympoly::{elem_sym_all, leave_one_out_table, poly_from_roots, DensePolynomial, NodeSet};

use super::{Identity, Outcome, SampleError, TrialContext};

/// Probe points per trial for the identities that evaluate at a free variable.
const PROBES: usize = 3;

pub fn builtin_identities() -> Vec<Box<dyn Identity>> {
    vec![
        Box::new(SmallCases),
        Box::new(Theorem),
        Box::new(Degenerate),
        Box::new(ShiftInvariance),
        Box::new(Antisymmetry),
        Box::new(SignBridge),
        Box::new(VandermondeClosed),
        Box::new(ExtensionPoly),
        Box::new(WronskianConstant),
        Box::new(JacobianReduction),
        Box::new(OracleAgreement),
        Box::new(LeaveOneOut),
    ]
}

fn oracle_dets(m: &ExactMatrix, laplace_limit: usize) -> (Rational, Option<Rational>) {
    let bareiss = det_bareiss(m).expect("square");
    let laplace = (m.rows() <= laplace_limit).then(|| det_laplace_with_limit(m, laplace_limit).expect("guarded"));
    (bareiss, laplace)
}

fn agrees(expected: &Rational, (bareiss, laplace): &(Rational, Option<Rational>)) -> bool {
    bareiss == expected && laplace.as_ref().is_none_or(|l| l == expected)
}

/// The n = 2, 3, 4 determinants written out factor by factor.
struct SmallCases;

fn literal_small_case(a: &[Rational]) -> Rational {
    let d = |i: usize, k: usize| &a[i - 1] - &a[k - 1];
    match a.len() {
        2 => d(1, 2),
        3 => d(1, 2) * d(1, 3) * d(2, 3),
        4 => d(1, 2) * d(1, 3) * d(1, 4) * d(2, 3) * d(2, 4) * d(3, 4),
        n => unreachable!("no literal formula for n = {n}"),
    }
}

impl Identity for SmallCases {
    fn name(&self) -> &'static str {
        "small_cases"
    }

    fn description(&self) -> &'static str {
        "n = 2, 3, 4 literal factor products against cofactor expansion"
    }

    fn sizes(&self) -> (usize, usize) {
        (2, 4)
    }

    fn run_trial(&self, ctx: &mut TrialContext) -> Result<Outcome, SampleError> {
        let n = 2 + (ctx.trial % 3) as usize;
        let ns = ctx.sampler.nodes(n);
        let literal = literal_small_case(ns.as_slice());
        let laplace = det_laplace_with_limit(&build_vieta(&ns), n).expect("n <= 4");
        Ok(Outcome::check(literal == laplace && literal == vieta_det_closed(&ns), &ns))
    }
}

/// Closed-form Vieta determinant against both oracles.
struct Theorem;

impl Identity for Theorem {
    fn name(&self) -> &'static str {
        "theorem1"
    }

    fn description(&self) -> &'static str {
        "vieta determinant equals prod_{i<k} (a_i - a_k)"
    }

    fn run_trial(&self, ctx: &mut TrialContext) -> Result<Outcome, SampleError> {
        let n = ctx.size();
        let ns = ctx.sampler.nodes(n);
        let oracle = oracle_dets(&build_vieta(&ns), ctx.laplace_limit);
        Ok(Outcome::check(agrees(&vieta_det_closed(&ns), &oracle), &ns))
    }
}

/// Node sets with a forced repeat: even trials repeat zero, odd trials a
/// random value.
struct Degenerate;

impl Identity for Degenerate {
    fn name(&self) -> &'static str {
        "degenerate"
    }

    fn description(&self) -> &'static str {
        "repeated nodes give determinant 0; two zeros give a zero last row"
    }

    fn sizes(&self) -> (usize, usize) {
        (2, super::MAX_NODES)
    }

    fn run_trial(&self, ctx: &mut TrialContext) -> Result<Outcome, SampleError> {
        let n = ctx.size();
        let mut nodes = ctx.sampler.nodes(n).into_vec();
        let p = ctx.sampler.index(n);
        let q = (p + 1 + ctx.sampler.index(n - 1)) % n;
        let value = if ctx.trial.is_multiple_of(2) {
            Rational::zero()
        } else {
            ctx.sampler.rational()
        };
        nodes[p] = value.clone();
        nodes[q] = value;
        let ns = NodeSet::new(nodes).expect("n >= 2");

        let m = build_vieta(&ns);
        let zeros = ns.iter().filter(|a| a.is_zero()).count();
        let last_row_ok = zeros < 2 || m.row(n - 1).iter().all(Rational::is_zero);
        let oracle = oracle_dets(&m, ctx.laplace_limit);
        let closed = vieta_det_closed(&ns);
        Ok(Outcome::check(closed.is_zero() && agrees(&closed, &oracle) && last_row_ok, &ns))
    }
}

/// Determinants unchanged when every node is shifted by the same constant.
struct ShiftInvariance;

impl Identity for ShiftInvariance {
    fn name(&self) -> &'static str {
        "corollary1"
    }

    fn description(&self) -> &'static str {
        "vieta determinant invariant under a_i -> a_i - c"
    }

    fn run_trial(&self, ctx: &mut TrialContext) -> Result<Outcome, SampleError> {
        let n = ctx.size();
        let ns = ctx.sampler.nodes(n);
        let c = ctx.sampler.rational();
        let shifted = shift_nodes(&ns, &c);
        let closed_ok = vieta_det_closed(&shifted) == vieta_det_closed(&ns);
        let oracle_ok = det_bareiss(&build_vieta(&shifted)) == det_bareiss(&build_vieta(&ns));
        Ok(Outcome::check(closed_ok && oracle_ok, &ns))
    }
}

struct Antisymmetry;

impl Identity for Antisymmetry {
    fn name(&self) -> &'static str {
        "antisymmetry"
    }

    fn description(&self) -> &'static str {
        "swapping two nodes swaps two columns and negates the determinant"
    }

    fn sizes(&self) -> (usize, usize) {
        (2, super::MAX_NODES)
    }

    fn run_trial(&self, ctx: &mut TrialContext) -> Result<Outcome, SampleError> {
        let n = ctx.size();
        let ns = ctx.sampler.nodes(n);
        let i = ctx.sampler.index(n);
        let k = (i + 1 + ctx.sampler.index(n - 1)) % n;
        let swapped = ns.swapped(i, k);

        let mut expected = build_vieta(&ns);
        expected.swap_cols(i, k);
        let built = build_vieta(&swapped);
        let closed_ok = vieta_det_closed(&swapped) == -vieta_det_closed(&ns);
        let oracle_ok = det_bareiss(&built).expect("square") == -det_bareiss(&build_vieta(&ns)).expect("square");
        Ok(Outcome::check(closed_ok && oracle_ok && built == expected, &ns))
    }
}

struct SignBridge;

impl Identity for SignBridge {
    fn name(&self) -> &'static str {
        "sign_bridge"
    }

    fn description(&self) -> &'static str {
        "vieta product = (-1)^{n(n-1)/2} * vandermonde product"
    }

    fn run_trial(&self, ctx: &mut TrialContext) -> Result<Outcome, SampleError> {
        let n = ctx.size();
        let ns = ctx.sampler.nodes(n);
        let bridged = bridge_sign(n) * vandermonde_det_closed(&ns);
        Ok(Outcome::check(vieta_det_closed(&ns) == bridged, &ns))
    }
}

struct VandermondeClosed;

impl Identity for VandermondeClosed {
    fn name(&self) -> &'static str {
        "vandermonde"
    }

    fn description(&self) -> &'static str {
        "vandermonde determinant equals prod_{i<k} (a_k - a_i)"
    }

    fn run_trial(&self, ctx: &mut TrialContext) -> Result<Outcome, SampleError> {
        let n = ctx.size();
        let ns = ctx.sampler.nodes(n);
        let oracle = oracle_dets(&build_vandermonde(&ns), ctx.laplace_limit);
        Ok(Outcome::check(agrees(&vandermonde_det_closed(&ns), &oracle), &ns))
    }
}

/// The (n+1)-node determinant, as a polynomial in the appended node.
struct ExtensionPoly;

impl Identity for ExtensionPoly {
    fn name(&self) -> &'static str {
        "extension"
    }

    fn description(&self) -> &'static str {
        "det vieta(a_1..a_n, x) equals (-1)^n prod(a_i - a_k) prod(x - a_i) at random x"
    }

    fn sizes(&self) -> (usize, usize) {
        (1, 6)
    }

    fn run_trial(&self, ctx: &mut TrialContext) -> Result<Outcome, SampleError> {
        let n = ctx.size();
        let ns = ctx.sampler.distinct_nodes(n)?;
        let f = vieta_extension_poly(&ns);
        let mut holds = f.degree() == Some(n);
        for _ in 0..PROBES {
            let x = ctx.sampler.rational();
            let oracle = det_bareiss(&build_vieta(&ns.with_appended(x.clone()))).expect("square");
            holds &= oracle == f.eval(&x);
        }
        Ok(Outcome::check(holds, &ns))
    }
}

struct WronskianConstant;

impl Identity for WronskianConstant {
    fn name(&self) -> &'static str {
        "wronskian"
    }

    fn description(&self) -> &'static str {
        "nodal-basis wronskian is x-independent and equals prod k! * prod(a_i - a_k)"
    }

    fn sizes(&self) -> (usize, usize) {
        (1, 6)
    }

    fn run_trial(&self, ctx: &mut TrialContext) -> Result<Outcome, SampleError> {
        let n = ctx.size();
        let ns = ctx.sampler.distinct_nodes(n)?;
        let basis = nodal_basis(&ns);
        let expected = wronskian_closed(&ns);
        let mut holds = true;
        for _ in 0..PROBES {
            let x0 = ctx.sampler.rational();
            let oracle = oracle_dets(&wronskian_matrix(&basis, &x0), ctx.laplace_limit);
            holds &= agrees(&expected, &oracle);
        }
        Ok(Outcome::check(holds, &ns))
    }
}

/// Jacobian of the elementary symmetric map: equals the Vieta matrix, its
/// determinant is the closed form, and symmetric difference quotients with
/// `h = 1/7` reproduce every partial exactly.
struct JacobianReduction;

impl Identity for JacobianReduction {
    fn name(&self) -> &'static str {
        "jacobian"
    }

    fn description(&self) -> &'static str {
        "jacobian of (e_1..e_n) is the vieta matrix; exact symmetric differences"
    }

    fn sizes(&self) -> (usize, usize) {
        (1, 8)
    }

    fn run_trial(&self, ctx: &mut TrialContext) -> Result<Outcome, SampleError> {
        let n = ctx.size();
        let point = ctx.sampler.nodes(n);
        let j = jacobian_matrix(&point);
        let structural = j == build_vieta(&point);
        let det_ok = det_bareiss(&j).expect("square") == jacobian_det_closed(&point);
        Ok(Outcome::check(structural && det_ok && differences_match(&point, &j), &point))
    }
}

fn differences_match(point: &NodeSet, jacobian: &ExactMatrix) -> bool {
    let h = Rational::from_ratio(1, 7);
    let two_h = &h + &h;
    let n = point.len();
    (0..n).all(|c| {
        let at = |delta: &Rational| {
            let mut v = point.clone().into_vec();
            v[c] = &v[c] + delta;
            elem_sym_map(&NodeSet::new(v).expect("non-empty"))
        };
        let up = at(&h);
        let down = at(&-&h);
        (0..n).all(|r| {
            let quotient = (&up[r] - &down[r]).checked_div(&two_h).expect("h != 0");
            &quotient == jacobian.get(r, c)
        })
    })
}

/// Cofactor expansion against elimination on unstructured random matrices.
struct OracleAgreement;

impl Identity for OracleAgreement {
    fn name(&self) -> &'static str {
        "oracle_agreement"
    }

    fn description(&self) -> &'static str {
        "laplace and bareiss agree on random rational matrices"
    }

    fn sizes(&self) -> (usize, usize) {
        (1, 6)
    }

    fn run_trial(&self, ctx: &mut TrialContext) -> Result<Outcome, SampleError> {
        let n = ctx.size();
        let m = ExactMatrix::from_fn(n, |_, _| ctx.sampler.rational());
        let holds = det_bareiss(&m) == det_laplace_with_limit(&m, n);
        Ok(if holds {
            Outcome::Pass
        } else {
            Outcome::Fail(m.entries().iter().map(ToString::to_string).collect())
        })
    }
}

/// Leave-one-out table against subset enumeration, sign duality with the
/// root-form polynomial, column recombination, and permutation equivariance.
struct LeaveOneOut;

fn subset_elem_sym(nodes: &[Rational], k: usize) -> Rational {
    (0u32..(1 << nodes.len()))
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| {
            nodes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, a)| a)
                .product::<Rational>()
        })
        .sum()
}

fn alternate(k: usize, value: &Rational) -> Rational {
    if k.is_multiple_of(2) {
        value.clone()
    } else {
        -value
    }
}

impl Identity for LeaveOneOut {
    fn name(&self) -> &'static str {
        "leave_one_out"
    }

    fn description(&self) -> &'static str {
        "leave-one-out symmetric table matches enumeration and root-form expansion"
    }

    fn sizes(&self) -> (usize, usize) {
        (1, 8)
    }

    fn run_trial(&self, ctx: &mut TrialContext) -> Result<Outcome, SampleError> {
        let n = ctx.size();
        let ns = ctx.sampler.nodes(n);
        let table = leave_one_out_table(&ns);
        let full = poly_from_roots(&ns);
        let e = elem_sym_all(&ns);

        let enumeration = (0..n).all(|j| {
            let rest = ns.without(j);
            (0..n).all(|k| table.get(k, j) == &subset_elem_sym(&rest, k))
        });
        let duality = (0..=n).all(|k| full.coeff(n - k) == alternate(k, &e[k]));
        let recombination = (0..n).all(|j| {
            let monic = DensePolynomial::new((0..n).map(|d| alternate(n - 1 - d, table.get(n - 1 - d, j))).collect());
            monic.mul_linear(ns.get(j)) == full
        });

        let i = ctx.sampler.index(n);
        let k = ctx.sampler.index(n);
        let swapped = ns.swapped(i, k);
        let permuted = leave_one_out_table(&swapped);
        let equivariant = elem_sym_all(&swapped) == e
            && (0..n).all(|j| {
                let src = if j == i { k } else if j == k { i } else { j };
                permuted.column(j) == table.column(src)
            });

        Ok(Outcome::check(enumeration && duality && recombination && equivariant, &ns))
    }
}
