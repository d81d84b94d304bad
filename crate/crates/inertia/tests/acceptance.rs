//! Acceptance suite: one test per acceptance criterion, each printing a
//! single pass/fail line (run with `cargo test --test acceptance --
//! --nocapture` to see them). All comparisons are exact; each criterion
//! carries a wall-clock budget.

use std::time::{Duration, Instant};

use inertia::forms::{expand_block_matrix, graded_basis, CoordinateSpace};
use inertia::groups::{
    close_generators, fixed_subspace, pullback_matrix, CircleAction, Matrix,
};
use inertia::hochschild::{brute_crossed_hh0, brute_twisted_hh_table, SizeGuard};
use inertia::koszul::{
    build_twisted_koszul, euler_koszul_check, fixed_projection,
    fixed_space_form_dim, koszul_homotopy, twisted_field,
};
use inertia::matrix::SparseMatrix;
use inertia::relforms::{
    horizontal_matches_stalk, theta_injectivity_check, vanishing_ideal_check,
};
use inertia::scalar::Scalar;
use inertia::scenario::{execute, Overrides};

fn s(v: i64) -> Scalar {
    Scalar::from_int(v)
}

/// The reference set of twist elements: identity, reflections through the
/// origin in one and two variables, an order-3 rotation of the complex
/// line, and a mixed reflection/identity block.
fn twist_set() -> Vec<(CoordinateSpace, Matrix)> {
    vec![
        (CoordinateSpace::Real(2), vec![vec![s(1), s(0)], vec![s(0), s(1)]]),
        (CoordinateSpace::Real(1), vec![vec![s(-1)]]),
        (CoordinateSpace::Real(2), vec![vec![s(-1), s(0)], vec![s(0), s(-1)]]),
        (
            CoordinateSpace::ComplexPairs(1),
            vec![vec![Scalar::root_of_unity(3, 1).unwrap()]],
        ),
        (
            CoordinateSpace::Real(3),
            vec![
                vec![s(-1), s(0), s(0)],
                vec![s(0), s(-1), s(0)],
                vec![s(0), s(0), s(1)],
            ],
        ),
    ]
}

fn finish(name: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    println!("{}: PASS ({:.2?})", name, elapsed);
    assert!(
        elapsed < budget,
        "{} exceeded its {:?} budget: {:.2?}",
        name,
        budget,
        elapsed
    );
}

#[test]
fn criterion_1_twisted_hkr() {
    let start = Instant::now();
    let guard = SizeGuard::default();
    for (space, h) in twist_set() {
        let f = fixed_subspace(space, &h).unwrap().len();
        let koszul = build_twisted_koszul(space, &h, 4)
            .unwrap()
            .homology(2, 4);
        let bar = brute_twisted_hh_table(space, &h, 2, 4, guard).unwrap();
        for k in 0..=2usize {
            for n in 0..=4usize {
                let expected = fixed_space_form_dim(f, k, n);
                assert_eq!(
                    koszul.table[&(k, n)],
                    expected,
                    "koszul vs fixed-space count at k={} n={}",
                    k,
                    n
                );
                assert_eq!(
                    bar.table[&(k, n)],
                    expected,
                    "bar oracle vs fixed-space count at k={} n={}",
                    k,
                    n
                );
            }
        }
    }
    finish("criterion 1 (twisted HKR)", start, Duration::from_secs(60));
}

#[test]
fn criterion_2_homotopy_identity() {
    let start = Instant::now();
    for (space, h) in twist_set() {
        let field = twisted_field(space, &h).unwrap();
        let d = space.num_vars();
        for k in 0..=d {
            for n in k..=5usize {
                for omega in graded_basis(space, k, n) {
                    let s_omega = koszul_homotopy(space, &h, &omega).unwrap();
                    let lhs = s_omega
                        .contract(&field)
                        .unwrap()
                        .add(
                            &koszul_homotopy(
                                space,
                                &h,
                                &omega.contract(&field).unwrap(),
                            )
                            .unwrap(),
                        )
                        .unwrap();
                    let rhs = omega
                        .sub(&fixed_projection(space, &h, &omega).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs, "homotopy identity on a basis form");
                }
            }
        }
    }
    finish("criterion 2 (homotopy identity)", start, Duration::from_secs(10));
}

/// Restrict the full-coordinate action of h to the span of `basis`,
/// returning the matrix B with H·p_j = Σ_i B[i][j]·p_i.
fn restrict_to_span(
    space: CoordinateSpace,
    h: &Matrix,
    basis: &[Vec<Scalar>],
) -> Vec<Vec<Scalar>> {
    let full = expand_block_matrix(space, h).unwrap();
    let d = space.num_vars();
    let f = basis.len();
    let mut b = vec![vec![Scalar::zero(); f]; f];
    for j in 0..f {
        // rhs = H p_j in full coordinates.
        let rhs: Vec<Scalar> = (0..d)
            .map(|r| {
                let mut acc = Scalar::zero();
                for c in 0..d {
                    acc = acc.add(&full[r][c].mul(&basis[j][c]));
                }
                acc
            })
            .collect();
        let mut cols: Vec<Vec<Scalar>> = basis.to_vec();
        cols.push(rhs);
        let a = SparseMatrix::from_columns(d, &cols);
        let kernel = a.kernel_basis();
        let v = kernel
            .iter()
            .find(|v| !v[f].is_zero())
            .expect("image vector lies in the span");
        let scale = v[f].inv().unwrap().mul(&s(-1));
        for i in 0..f {
            b[i][j] = v[i].mul(&scale);
        }
    }
    b
}

/// Independent count of Γ-invariant k-forms of internal degree n on the
/// disjoint union of fixed subspaces, via the averaged trace of the
/// pullback action (a character computation, not a rank computation).
fn invariant_dim_by_trace(
    group: &inertia::groups::FiniteGroup,
    k: usize,
    n: usize,
) -> usize {
    let order = group.order();
    let mut total = Scalar::zero();
    for gamma in &group.elements {
        let basis = fixed_subspace(group.space, gamma).unwrap();
        let f = basis.len();
        for h in &group.elements {
            if f == 0 {
                if k == 0 && n == 0 {
                    total = total.add(&Scalar::one());
                }
                continue;
            }
            let b = restrict_to_span(group.space, h, &basis);
            let p = pullback_matrix(CoordinateSpace::Real(f), &b, k, n).unwrap();
            let dim = graded_basis(CoordinateSpace::Real(f), k, n).len();
            for i in 0..dim {
                total = total.add(&p.get(i, i));
            }
        }
    }
    let avg = total.mul(&Scalar::ratio(1, order as i64));
    for cand in 0..=4096usize {
        if avg == s(cand as i64) {
            return cand;
        }
    }
    panic!("averaged trace is not a small nonnegative integer");
}

#[test]
fn criterion_3_crossed_product() {
    let start = Instant::now();
    let r2 = CoordinateSpace::Real(2);
    let c1 = CoordinateSpace::ComplexPairs(1);
    let groups = vec![
        close_generators(r2, &[vec![vec![s(-1), s(0)], vec![s(0), s(-1)]]], 8).unwrap(),
        close_generators(c1, &[vec![vec![Scalar::root_of_unity(3, 1).unwrap()]]], 8)
            .unwrap(),
        close_generators(c1, &[vec![vec![Scalar::root_of_unity(4, 1).unwrap()]]], 8)
            .unwrap(),
    ];
    for group in &groups {
        let crossed =
            inertia::hochschild::crossed_product_hh_finite(group, 2, 4).unwrap();
        for k in 0..=2usize {
            for n in 0..=4usize {
                assert_eq!(
                    crossed.total.table[&(k, n)],
                    invariant_dim_by_trace(group, k, n),
                    "crossed product vs trace enumeration at k={} n={}",
                    k,
                    n
                );
            }
        }
        for n in 0..=4usize {
            assert_eq!(
                crossed.total.table[&(0, n)],
                brute_crossed_hh0(group, n).unwrap(),
                "crossed product vs brute convolution HH0 at n={}",
                n
            );
        }
    }
    finish("criterion 3 (crossed product)", start, Duration::from_secs(120));
}

#[test]
fn criterion_4_circle_stalks() {
    let start = Instant::now();
    for weights in [vec![1], vec![1, 1], vec![1, 2], vec![2, 3]] {
        let action = CircleAction::new(weights).unwrap();
        let report = horizontal_matches_stalk(&action, 2, 4).unwrap();
        assert!(
            report.passed(),
            "stalk homology differs from horizontal forms: {:?}",
            report
                .rows
                .iter()
                .filter(|r| r.lhs != r.rhs)
                .collect::<Vec<_>>()
        );
    }
    finish("criterion 4 (circle stalks)", start, Duration::from_secs(60));
}

#[test]
fn criterion_5_vanishing_ideals() {
    let start = Instant::now();
    for weights in [vec![1], vec![1, 2]] {
        let action = CircleAction::new(weights).unwrap();
        for j in 0..action.w {
            let report = vanishing_ideal_check(&action, j, 4).unwrap();
            assert!(
                report.passed(),
                "ideal generators do not span the restriction kernel at j={}: {:?}",
                j,
                report
                    .rows
                    .iter()
                    .filter(|r| r.lhs != r.rhs)
                    .collect::<Vec<_>>()
            );
        }
    }
    finish("criterion 5 (vanishing ideals)", start, Duration::from_secs(30));
}

#[test]
fn criterion_6_theta_injectivity() {
    let start = Instant::now();
    let action = CircleAction::new(vec![1]).unwrap();
    for j in 0..action.w {
        for k in 0..=2usize {
            let report = theta_injectivity_check(&action, j, k, 4).unwrap();
            assert!(
                report.passed(),
                "quotient and restriction dimensions differ at j={} k={}: {:?}",
                j,
                k,
                report
                    .rows
                    .iter()
                    .filter(|r| r.lhs != r.rhs)
                    .collect::<Vec<_>>()
            );
        }
    }
    finish("criterion 6 (theta injectivity)", start, Duration::from_secs(30));
}

#[test]
fn criterion_7_euler_exactness() {
    let start = Instant::now();
    for v in 1..=3usize {
        let report = euler_koszul_check(CoordinateSpace::Real(v), &[], v, 4).unwrap();
        for (&(k, n), &dim) in &report.table {
            let expected = if (k, n) == (0, 0) { 1 } else { 0 };
            assert_eq!(
                dim, expected,
                "euler contraction complex on {} variables at k={} n={}",
                v, k, n
            );
        }
    }
    finish("criterion 7 (euler exactness)", start, Duration::from_secs(10));
}

#[test]
fn criterion_8_structural_invariants() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let finite = dir.path().join("finite.json");
    std::fs::write(
        &finite,
        r#"{
            "action": {"finite_group": {"space": {"real": 2},
                        "generators": [[["-1","0"],["0","-1"]]]}},
            "bounds": {"kmax": 2, "nmax": 3},
            "tasks": ["verify-all"],
            "seed": 20260823
        }"#,
    )
    .unwrap();
    let circle = dir.path().join("circle.json");
    std::fs::write(
        &circle,
        r#"{
            "action": {"circle": {"weights": [1, 2]}},
            "bounds": {"kmax": 2, "nmax": 3},
            "tasks": ["verify-all"],
            "seed": 20260823
        }"#,
    )
    .unwrap();
    for path in [&finite, &circle] {
        let ov = Overrides {
            out: Some(dir.path().join("out")),
            ..Overrides::default()
        };
        assert_eq!(execute(path, &ov), 0, "verify-all failed for {:?}", path);
    }
    finish(
        "criterion 8 (structural invariants)",
        start,
        Duration::from_secs(30),
    );
}
