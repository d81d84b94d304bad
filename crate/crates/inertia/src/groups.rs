//! Finite matrix groups and weighted circle actions: closure of generator
//! sets, fixed subspaces, conjugacy data for the loop-space strata, singular
//! points of a weighted circle action, and the Reynolds (averaging)
//! projector onto invariant forms.

use crate::error::{Error, Result};
use crate::forms::{expand_block_matrix, graded_basis, basis_index, CoordinateSpace};
use crate::matrix::SparseMatrix;
use crate::scalar::Scalar;

/// Dense square matrix over exact scalars. For `ComplexPairs(m)` group
/// elements this is the m×m block acting on z; the z̄ block is its entrywise
/// conjugate.
pub type Matrix = Vec<Vec<Scalar>>;

pub fn mat_identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![Scalar::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] = out[i][j].add(&a[i][k].mul(&b[k][j]));
                }
            }
        }
    }
    out
}

/// Conjugate transpose (formal adjoint; conjugation is ζ ↦ ζ⁻¹).
pub fn mat_adjoint(a: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| a[j][i].conj()).collect())
        .collect()
}

pub fn mat_eq(a: &Matrix, b: &Matrix) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(ra, rb)| ra.iter().zip(rb).all(|(x, y)| x == y))
}

fn is_identity(a: &Matrix) -> bool {
    mat_eq(a, &mat_identity(a.len()))
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub space: CoordinateSpace,
    pub elements: Vec<Matrix>,
    pub mul_table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul_table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.mul_table[a][b] == self.identity)
            .expect("group closure guarantees inverses")
    }

    pub fn trivial(space: CoordinateSpace) -> Self {
        let block = match space {
            CoordinateSpace::Real(d) => d,
            CoordinateSpace::ComplexPairs(m) => m,
        };
        FiniteGroup {
            space,
            elements: vec![mat_identity(block)],
            mul_table: vec![vec![0]],
            identity: 0,
        }
    }
}

/// Breadth-first closure of a generator set under multiplication. Every
/// generator must satisfy g·g* = I (formal unitarity), which also forces
/// invertibility and makes the closure a finite group whenever it stays
/// within `bound` elements.
pub fn close_generators(
    space: CoordinateSpace,
    gens: &[Matrix],
    bound: usize,
) -> Result<FiniteGroup> {
    let block = match space {
        CoordinateSpace::Real(d) => d,
        CoordinateSpace::ComplexPairs(m) => m,
    };
    for g in gens {
        if g.len() != block || g.iter().any(|r| r.len() != block) {
            return Err(Error::DimensionMismatch {
                expected: block,
                got: g.len(),
            });
        }
        if !is_identity(&mat_mul(g, &mat_adjoint(g))) {
            return Err(Error::NonInvertibleGenerator);
        }
    }
    let mut elements: Vec<Matrix> = vec![mat_identity(block)];
    let mut frontier: Vec<usize> = vec![0];
    while let Some(i) = frontier.pop() {
        for g in gens {
            let prod = mat_mul(&elements[i], g);
            if !elements.iter().any(|e| mat_eq(e, &prod)) {
                if elements.len() >= bound {
                    return Err(Error::NotClosedWithinBound(bound));
                }
                elements.push(prod);
                frontier.push(elements.len() - 1);
            }
        }
    }
    let n = elements.len();
    let mut mul_table = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            let prod = mat_mul(&elements[a], &elements[b]);
            let idx = elements
                .iter()
                .position(|e| mat_eq(e, &prod))
                .ok_or(Error::NotClosedWithinBound(bound))?;
            mul_table[a][b] = idx;
        }
    }
    Ok(FiniteGroup {
        space,
        elements,
        mul_table,
        identity: 0,
    })
}

/// Exact basis of ker(g − I) in the full variable coordinates of the space
/// (2m coordinates for `ComplexPairs(m)`).
pub fn fixed_subspace(space: CoordinateSpace, g: &Matrix) -> Result<Vec<Vec<Scalar>>> {
    let full = expand_block_matrix(space, g)?;
    let d = full.len();
    let mut m = SparseMatrix::new(d, d);
    for (i, row) in full.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let mut e = v.clone();
            if i == j {
                e = e.sub(&Scalar::one());
            }
            m.set(i, j, e);
        }
    }
    Ok(m.kernel_basis())
}

/// One loop-space stratum per group element.
#[derive(Clone, Debug)]
pub struct FiniteStratum {
    pub element: usize,
    pub fixed_basis: Vec<Vec<Scalar>>,
    /// Smallest element index in the conjugacy class (class label).
    pub conjugacy_class: usize,
    pub centralizer: Vec<usize>,
}

/// Strata of the loop space of a finite group: fixed subspaces, conjugacy
/// classes under γ ↦ hγh⁻¹, and centralizers.
pub fn loop_space_finite(group: &FiniteGroup) -> Result<Vec<FiniteStratum>> {
    let n = group.order();
    let mut class_label = vec![usize::MAX; n];
    for g in 0..n {
        if class_label[g] != usize::MAX {
            continue;
        }
        let mut orbit = vec![g];
        let mut seen = vec![false; n];
        seen[g] = true;
        let mut i = 0;
        while i < orbit.len() {
            let cur = orbit[i];
            i += 1;
            for h in 0..n {
                let conj = group.mul(group.mul(h, cur), group.inverse(h));
                if !seen[conj] {
                    seen[conj] = true;
                    orbit.push(conj);
                }
            }
        }
        let label = *orbit.iter().min().unwrap();
        for &e in &orbit {
            class_label[e] = label;
        }
    }
    (0..n)
        .map(|g| {
            let centralizer = (0..n)
                .filter(|&h| {
                    group.mul(group.mul(h, g), group.inverse(h)) == g
                })
                .collect();
            Ok(FiniteStratum {
                element: g,
                fixed_basis: fixed_subspace(group.space, &group.elements[g])?,
                conjugacy_class: class_label[g],
                centralizer,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleAction {
    /// Nonzero weights (w_1, …, w_m) on `ComplexPairs(m)`.
    pub weights: Vec<i64>,
    /// lcm of the |w_k|; singular points sit at j/w for 0 ≤ j < w.
    pub w: u64,
}

impl CircleAction {
    pub fn new(weights: Vec<i64>) -> Result<Self> {
        if weights.is_empty() || weights.iter().any(|&w| w == 0) {
            return Err(Error::Scenario(
                "circle weights must be nonzero and nonempty".into(),
            ));
        }
        let w = weights
            .iter()
            .map(|&x| x.unsigned_abs())
            .fold(1u64, num::integer::lcm);
        Ok(CircleAction { weights, w })
    }

    pub fn space(&self) -> CoordinateSpace {
        CoordinateSpace::ComplexPairs(self.weights.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleStratum {
    /// The singular point is j/w on the circle.
    pub j: u64,
    /// Zero-based pair indices k with w | j·w_k (coordinates fixed at j/w).
    pub fixed_pairs: Vec<usize>,
}

/// All points j/w for 0 ≤ j < w, each with the index set of coordinates it
/// fixes. Points with an empty index set are retained (fixed space {0}).
pub fn circle_singular_points(action: &CircleAction) -> Vec<CircleStratum> {
    let w = action.w;
    (0..w)
        .map(|j| {
            let fixed_pairs = action
                .weights
                .iter()
                .enumerate()
                .filter(|(_, &wk)| (j as i64 * wk).rem_euclid(w as i64) == 0)
                .map(|(k, _)| k)
                .collect();
            CircleStratum { j, fixed_pairs }
        })
        .collect()
}

/// Matrix of pullback by a group element on the (k, n) graded form basis.
pub fn pullback_matrix(
    space: CoordinateSpace,
    g: &Matrix,
    k: usize,
    n: usize,
) -> Result<SparseMatrix> {
    let basis = graded_basis(space, k, n);
    let index = basis_index(&basis);
    let dim = basis.len();
    let mut m = SparseMatrix::new(dim, dim);
    for (col, b) in basis.iter().enumerate() {
        let image = b.pullback(g)?;
        let coords = image.to_coordinates(&index)?;
        for (row, v) in coords.into_iter().enumerate() {
            if !v.is_zero() {
                m.set(row, col, v);
            }
        }
    }
    Ok(m)
}

/// The averaging operator (1/|G|) Σ_g pullback(g) on the (k, n) basis:
/// idempotent with image the invariant forms.
pub fn reynolds_projector(group: &FiniteGroup, k: usize, n: usize) -> Result<SparseMatrix> {
    let dim = graded_basis(group.space, k, n).len();
    let mut acc = SparseMatrix::new(dim, dim);
    for g in &group.elements {
        acc = acc.add_matrix(&pullback_matrix(group.space, g, k, n)?);
    }
    Ok(acc.scale(&Scalar::ratio(1, group.order() as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minus_i2() -> Matrix {
        vec![
            vec![Scalar::from_int(-1), Scalar::zero()],
            vec![Scalar::zero(), Scalar::from_int(-1)],
        ]
    }

    #[test]
    fn closure_orders() {
        let r2 = CoordinateSpace::Real(2);
        let z2 = close_generators(r2, &[minus_i2()], 16).unwrap();
        assert_eq!(z2.order(), 2);

        let c1 = CoordinateSpace::ComplexPairs(1);
        let z3gen = vec![vec![Scalar::root_of_unity(3, 1).unwrap()]];
        let z3 = close_generators(c1, &[z3gen], 16).unwrap();
        assert_eq!(z3.order(), 3);

        let rot4 = vec![
            vec![Scalar::zero(), Scalar::from_int(-1)],
            vec![Scalar::one(), Scalar::zero()],
        ];
        let z4 = close_generators(r2, &[rot4], 16).unwrap();
        assert_eq!(z4.order(), 4);

        assert!(matches!(
            close_generators(r2, &[minus_i2()], 1),
            Err(Error::NotClosedWithinBound(1))
        ));
        let non_unitary = vec![
            vec![Scalar::from_int(2), Scalar::zero()],
            vec![Scalar::zero(), Scalar::one()],
        ];
        assert!(matches!(
            close_generators(r2, &[non_unitary], 16),
            Err(Error::NonInvertibleGenerator)
        ));
    }

    #[test]
    fn fixed_subspaces() {
        let r2 = CoordinateSpace::Real(2);
        assert!(fixed_subspace(r2, &minus_i2()).unwrap().is_empty());
        assert_eq!(fixed_subspace(r2, &mat_identity(2)).unwrap().len(), 2);

        // block diag(rotation 2π/3, I₂) on R⁴ fixes exactly span{e3, e4};
        // sin(2π/3) = √3/2 lives in Q(ζ12) as (ζ12 − ζ12³·… ) = ζ12 + ζ12⁻¹ over 2.
        let z12 = Scalar::root_of_unity(12, 1).unwrap();
        let sqrt3 = z12.add(&z12.pow(11));
        let half = Scalar::ratio(1, 2);
        let c = half.neg(); // cos(2π/3) = −1/2
        let s = sqrt3.mul(&half); // sin(2π/3) = √3/2
        let r4 = CoordinateSpace::Real(4);
        let mut g = mat_identity(4);
        g[0][0] = c.clone();
        g[0][1] = s.neg();
        g[1][0] = s.clone();
        g[1][1] = c.clone();
        let basis = fixed_subspace(r4, &g).unwrap();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(v[0].is_zero() && v[1].is_zero());
        }
    }

    #[test]
    fn loop_space_strata() {
        let r2 = CoordinateSpace::Real(2);
        let z2 = close_generators(r2, &[minus_i2()], 16).unwrap();
        let strata = loop_space_finite(&z2).unwrap();
        assert_eq!(strata.len(), 2);
        assert_eq!(strata[z2.identity].fixed_basis.len(), 2);
        let other = strata.iter().find(|s| s.element != z2.identity).unwrap();
        assert!(other.fixed_basis.is_empty());
        // Abelian group: singleton classes, full centralizers.
        for s in &strata {
            assert_eq!(s.conjugacy_class, s.element.min(s.element));
            assert_eq!(s.centralizer.len(), 2);
        }

        let c1 = CoordinateSpace::ComplexPairs(1);
        let z3gen = vec![vec![Scalar::root_of_unity(3, 1).unwrap()]];
        let z3 = close_generators(c1, &[z3gen], 16).unwrap();
        let dims: Vec<usize> = loop_space_finite(&z3)
            .unwrap()
            .iter()
            .map(|s| s.fixed_basis.len())
            .collect();
        let mut sorted = dims.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 0, 2]); // {C, {0}, {0}} in real coordinates
        assert_eq!(dims[z3.identity], 2);
    }

    #[test]
    fn circle_divisibility_table() {
        let a = CircleAction::new(vec![2, 3]).unwrap();
        assert_eq!(a.w, 6);
        let strata = circle_singular_points(&a);
        let table: Vec<Vec<usize>> = strata.iter().map(|s| s.fixed_pairs.clone()).collect();
        assert_eq!(
            table,
            vec![
                vec![0, 1], // j=0
                vec![],     // j=1
                vec![1],    // j=2: 2·3 = 6
                vec![0],    // j=3: 3·2 = 6
                vec![1],    // j=4: 4·3 = 12
                vec![],     // j=5
            ]
        );
        // K_j = K_{w−j}.
        for j in 1..6 {
            assert_eq!(table[j], table[6 - j]);
        }
        assert!(CircleAction::new(vec![0, 1]).is_err());
    }

    #[test]
    fn reynolds_examples() {
        let r2 = CoordinateSpace::Real(2);
        let trivial = FiniteGroup::trivial(r2);
        assert_eq!(
            reynolds_projector(&trivial, 1, 2).unwrap(),
            SparseMatrix::identity(4)
        );

        let z2 = close_generators(r2, &[minus_i2()], 16).unwrap();
        let p01 = reynolds_projector(&z2, 0, 1).unwrap();
        assert!(p01.is_zero());
        let p12 = reynolds_projector(&z2, 1, 2).unwrap();
        assert_eq!(p12, SparseMatrix::identity(4));
        // Idempotence and invariance.
        assert_eq!(p12.mat_mul(&p12), p12);
        for g in &z2.elements {
            let pg = pullback_matrix(r2, g, 1, 2).unwrap();
            assert_eq!(pg.mat_mul(&p12), p12);
        }
    }
}
