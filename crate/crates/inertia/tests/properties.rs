//! Property tests for the structural identities of the algebraic core:
//! differential and contraction squares, derivation rules, pullback
//! invertibility, text round-trips, rank-nullity, and bar differentials.

use proptest::prelude::*;

use inertia::forms::{graded_basis, CoordinateSpace, PolyForm, PolyVectorField};
use inertia::hochschild::{bar_differential_twisted, chain_basis, TensorChain};
use inertia::matrix::SparseMatrix;
use inertia::scalar::Scalar;
use inertia::text::{form_string, parse_form, parse_scalar, scalar_string};

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| Scalar::ratio(p, q))
}

fn cyclo_scalar() -> impl Strategy<Value = Scalar> {
    (2u64..=6, -3i64..=3, -3i64..=3).prop_map(|(n, a, b)| {
        Scalar::from_int(a).add(&Scalar::from_int(b).mul(&Scalar::root_of_unity(n, 1).unwrap()))
    })
}

/// A random form on the given space with degrees bounded by (kmax, nmax).
fn random_form(space: CoordinateSpace, kmax: usize, nmax: usize) -> impl Strategy<Value = PolyForm> {
    let d = space.num_vars();
    (0..=kmax.min(d), 0usize..=nmax).prop_flat_map(move |(k, n)| {
        let basis = graded_basis(space, k, n.max(k));
        let len = basis.len();
        proptest::collection::vec(-3i64..=3, len).prop_map(move |coeffs| {
            let mut f = PolyForm::zero(space);
            for (b, c) in basis.iter().zip(coeffs) {
                if c != 0 {
                    f = f.add(&b.scale(&Scalar::from_int(c))).unwrap();
                }
            }
            f
        })
    })
}

fn spaces() -> impl Strategy<Value = CoordinateSpace> {
    prop_oneof![
        (1usize..=3).prop_map(CoordinateSpace::Real),
        (1usize..=2).prop_map(CoordinateSpace::ComplexPairs),
    ]
}

fn linear_field(space: CoordinateSpace) -> impl Strategy<Value = PolyVectorField> {
    let d = space.num_vars();
    proptest::collection::vec(proptest::collection::vec(-2i64..=2, d), d).prop_map(
        move |rows| {
            let m: Vec<Vec<Scalar>> = rows
                .iter()
                .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect())
                .collect();
            PolyVectorField::linear(space, &m).unwrap()
        },
    )
}

/// An invertible matrix built as a product of elementary shears and sign
/// flips, so the pullback round-trip is well defined.
fn invertible_pair(d: usize) -> impl Strategy<Value = (Vec<Vec<Scalar>>, Vec<Vec<Scalar>>)> {
    proptest::collection::vec((0..d, 0..d, -2i64..=2, proptest::bool::ANY), 0..4).prop_map(
        move |ops| {
            let mut m = identity(d);
            let mut inv = identity(d);
            for (i, j, c, flip) in ops {
                if flip {
                    // sign flip at row i: self-inverse.
                    let f = elementary_flip(d, i);
                    m = mat_mul(&m, &f);
                    inv = mat_mul(&f, &inv);
                } else if i != j && c != 0 {
                    m = mat_mul(&m, &shear(d, i, j, c));
                    inv = mat_mul(&shear(d, i, j, -c), &inv);
                }
            }
            (m, inv)
        },
    )
}

fn identity(d: usize) -> Vec<Vec<Scalar>> {
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                .collect()
        })
        .collect()
}

fn elementary_flip(d: usize, i: usize) -> Vec<Vec<Scalar>> {
    let mut m = identity(d);
    m[i][i] = Scalar::from_int(-1);
    m
}

fn shear(d: usize, i: usize, j: usize, c: i64) -> Vec<Vec<Scalar>> {
    let mut m = identity(d);
    m[i][j] = Scalar::from_int(c);
    m
}

fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let d = a.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let mut s = Scalar::zero();
                    for l in 0..d {
                        s = s.add(&a[i][l].mul(&b[l][j]));
                    }
                    s
                })
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_field_axioms(a in cyclo_scalar(), b in cyclo_scalar(), c in small_scalar()) {
        let ab = a.add(&b);
        prop_assert_eq!(ab.clone(), b.add(&a));
        let dist = a.add(&b).mul(&c);
        let expand = a.mul(&c).add(&b.mul(&c));
        prop_assert_eq!(dist, expand);
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
        // conjugation is an involution and a ring map.
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
    }

    #[test]
    fn scalar_text_round_trip(a in cyclo_scalar()) {
        let s = scalar_string(&a);
        prop_assert_eq!(parse_scalar(&s).unwrap(), a);
    }

    #[test]
    fn differential_squares_to_zero(
        (space, omega) in spaces().prop_flat_map(|s| (Just(s), random_form(s, 2, 3)))
    ) {
        let _ = space;
        prop_assert!(omega.d_rel().d_rel().is_zero());
    }

    #[test]
    fn contraction_squares_to_zero(
        (space, omega, y) in spaces().prop_flat_map(|s| {
            (Just(s), random_form(s, 2, 3), linear_field(s))
        })
    ) {
        let _ = space;
        prop_assert!(omega.contract(&y).unwrap().contract(&y).unwrap().is_zero());
    }

    #[test]
    fn leibniz_rules(
        (space, omega, eta, y) in spaces().prop_flat_map(|s| {
            (Just(s), random_form(s, 1, 2), random_form(s, 1, 2), linear_field(s))
        })
    ) {
        let _ = space;
        // Restrict to homogeneous form degree so the sign is well defined.
        for k in 0..=1usize {
            for n in k..=2usize {
                let w = omega.graded_component(k, n);
                if w.is_zero() { continue; }
                let sign = if k % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
                // d(w ∧ eta) = dw ∧ eta + (−1)^k w ∧ d(eta)
                let lhs = w.wedge(&eta).unwrap().d_rel();
                let rhs = w.d_rel().wedge(&eta).unwrap()
                    .add(&w.wedge(&eta.d_rel()).unwrap().scale(&sign)).unwrap();
                prop_assert_eq!(lhs, rhs);
                // i_Y(w ∧ eta) = i_Y w ∧ eta + (−1)^k w ∧ i_Y eta
                let lhs = w.wedge(&eta).unwrap().contract(&y).unwrap();
                let rhs = w.contract(&y).unwrap().wedge(&eta).unwrap()
                    .add(&w.wedge(&eta.contract(&y).unwrap()).unwrap().scale(&sign)).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn pullback_round_trip(
        (space, omega, pair) in spaces().prop_flat_map(|s| {
            let block = match s {
                CoordinateSpace::Real(d) => d,
                CoordinateSpace::ComplexPairs(m) => m,
            };
            (Just(s), random_form(s, 2, 2), invertible_pair(block))
        })
    ) {
        let _ = space;
        let (m, inv) = pair;
        let back = omega.pullback(&inv).unwrap().pullback(&m).unwrap();
        prop_assert_eq!(back, omega);
    }

    #[test]
    fn form_text_round_trip(
        (space, omega) in spaces().prop_flat_map(|s| (Just(s), random_form(s, 2, 2)))
    ) {
        let text = form_string(&omega);
        prop_assert_eq!(parse_form(&text, space).unwrap(), omega);
    }

    #[test]
    fn rank_nullity(
        entries in proptest::collection::vec((0usize..5, 0usize..4, -3i64..=3), 0..10)
    ) {
        let mut m = SparseMatrix::new(5, 4);
        for (r, c, v) in entries {
            m.set(r, c, Scalar::from_int(v));
        }
        let rank = m.rank();
        let nullity = m.kernel_basis().len();
        prop_assert_eq!(rank + nullity, 4);
    }

    #[test]
    fn twisted_bar_squares_to_zero(
        signs in proptest::collection::vec(proptest::bool::ANY, 2),
        coeffs in proptest::collection::vec(-2i64..=2, 12),
        k in 1usize..=2,
        n in 0usize..=2,
    ) {
        let space = CoordinateSpace::Real(2);
        let mut h = identity(2);
        for (i, flip) in signs.iter().enumerate() {
            if *flip {
                h[i][i] = Scalar::from_int(-1);
            }
        }
        let basis = chain_basis(space, k, n);
        let mut chain = TensorChain::zero(space, k);
        for (t, c) in basis.iter().zip(coeffs.iter().cycle()) {
            if *c != 0 {
                chain.add_term(t.clone(), Scalar::from_int(*c));
            }
        }
        let bb = bar_differential_twisted(&bar_differential_twisted(&chain, &h).unwrap(), &h).unwrap();
        prop_assert!(bb.is_zero());
    }
}
