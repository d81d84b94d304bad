//! Twisted Koszul contraction complexes, solved one graded piece at a time:
//! building the contraction differentials for a linear vector field, exact
//! homology dimensions, the explicit eigen-monomial homotopy operator, the
//! Euler-field exactness check, and circle-action stalk homology at singular
//! points.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forms::{
    basis_index, expand_block_matrix, graded_basis, CoordinateSpace, PolyForm,
    PolyVectorField,
};
use crate::groups::{CircleAction, Matrix};
use crate::matrix::SparseMatrix;
use crate::scalar::Scalar;

/// Contraction complex … → Ω^k_n → Ω^{k−1}_n → … for a fixed linear vector
/// field, with one matrix per graded piece (k, n).
#[derive(Clone, Debug)]
pub struct GradedComplex {
    pub space: CoordinateSpace,
    pub label: String,
    pub field: PolyVectorField,
    pub nmax: usize,
    /// (k, n) ↦ matrix of i_Y from the (k, n) basis to the (k−1, n) basis.
    pub differentials: BTreeMap<(usize, usize), SparseMatrix>,
}

/// Homology (or kernel) dimensions indexed by (form degree k, internal
/// degree n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub stratum: String,
    pub table: BTreeMap<(usize, usize), usize>,
}

/// Matrix of contraction by a linear field on the (k, n) graded piece,
/// mapping into the (k−1, n) piece.
pub fn contraction_matrix(
    space: CoordinateSpace,
    field: &PolyVectorField,
    k: usize,
    n: usize,
) -> Result<SparseMatrix> {
    let src = graded_basis(space, k, n);
    let tgt = graded_basis(space, k - 1, n);
    let index = basis_index(&tgt);
    let mut m = SparseMatrix::new(tgt.len(), src.len());
    for (col, b) in src.iter().enumerate() {
        let image = b.contract(field)?;
        let coords = image.to_coordinates(&index)?;
        for (row, v) in coords.into_iter().enumerate() {
            if !v.is_zero() {
                m.set(row, col, v);
            }
        }
    }
    Ok(m)
}

/// Build the full contraction complex for a linear field up to internal
/// degree `nmax`, verifying that consecutive differentials compose to zero.
pub fn build_contraction_complex(
    space: CoordinateSpace,
    field: PolyVectorField,
    label: String,
    nmax: usize,
) -> Result<GradedComplex> {
    let d = space.num_vars();
    let keys: Vec<(usize, usize)> = (0..=nmax)
        .flat_map(|n| (1..=d.min(n)).map(move |k| (k, n)))
        .collect();
    let computed: Result<Vec<((usize, usize), SparseMatrix)>> = keys
        .par_iter()
        .map(|&(k, n)| Ok(((k, n), contraction_matrix(space, &field, k, n)?)))
        .collect();
    let differentials: BTreeMap<(usize, usize), SparseMatrix> =
        computed?.into_iter().collect();
    for (&(k, n), m) in &differentials {
        if let Some(next) = differentials.get(&(k + 1, n)) {
            assert!(
                m.mat_mul(next).is_zero(),
                "contraction differentials must compose to zero at (k={}, n={})",
                k,
                n
            );
        }
    }
    Ok(GradedComplex {
        space,
        label,
        field,
        nmax,
        differentials,
    })
}

/// The twisted Koszul complex of an orthogonal/unitary h: contraction by
/// Y_h(v) = v − hv. The matrix is the block form used by `pullback`.
pub fn build_twisted_koszul(
    space: CoordinateSpace,
    h: &Matrix,
    nmax: usize,
) -> Result<GradedComplex> {
    let full = expand_block_matrix(space, h)?;
    let d = full.len();
    let mut y = vec![vec![Scalar::zero(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let mut v = full[i][j].neg();
            if i == j {
                v = v.add(&Scalar::one());
            }
            y[i][j] = v;
        }
    }
    let field = PolyVectorField::linear(space, &y)?;
    build_contraction_complex(space, field, "twisted-koszul".into(), nmax)
}

impl GradedComplex {
    fn piece_dim(&self, k: usize, n: usize) -> usize {
        graded_basis(self.space, k, n).len()
    }

    /// dim ker(i_Y on Ω^k_n) − rank(i_Y on Ω^{k+1}_n), exactly.
    pub fn homology_dim(&self, k: usize, n: usize) -> usize {
        let dim = self.piece_dim(k, n);
        let kernel = match self.differentials.get(&(k, n)) {
            Some(m) => dim - m.rank(),
            None => dim,
        };
        let image = self
            .differentials
            .get(&(k + 1, n))
            .map(|m| m.rank())
            .unwrap_or(0);
        kernel - image
    }

    pub fn homology(&self, kmax: usize, nmax: usize) -> HomologyReport {
        let keys: Vec<(usize, usize)> = (0..=kmax)
            .flat_map(|k| (0..=nmax).map(move |n| (k, n)))
            .collect();
        let table = keys
            .par_iter()
            .map(|&(k, n)| ((k, n), self.homology_dim(k, n)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        HomologyReport {
            stratum: self.label.clone(),
            table,
        }
    }

    /// Cycle representatives spanning the homology of the (k, n) piece:
    /// kernel basis vectors that extend a basis of the boundary space.
    pub fn representatives(&self, k: usize, n: usize) -> Vec<PolyForm> {
        let basis = graded_basis(self.space, k, n);
        let dim = basis.len();
        if dim == 0 {
            return Vec::new();
        }
        let kernel = match self.differentials.get(&(k, n)) {
            Some(m) => m.kernel_basis(),
            None => (0..dim)
                .map(|i| {
                    let mut v = vec![Scalar::zero(); dim];
                    v[i] = Scalar::one();
                    v
                })
                .collect(),
        };
        let mut columns: Vec<Vec<Scalar>> = Vec::new();
        if let Some(m) = self.differentials.get(&(k + 1, n)) {
            let src = self.piece_dim(k + 1, n);
            for col in 0..src {
                let mut v = vec![Scalar::zero(); dim];
                for row in 0..dim {
                    v[row] = m.get(row, col);
                }
                if v.iter().any(|x| !x.is_zero()) {
                    columns.push(v);
                }
            }
        }
        let mut rank = SparseMatrix::from_columns(dim, &columns).rank();
        let mut reps = Vec::new();
        for v in kernel {
            columns.push(v.clone());
            let new_rank = SparseMatrix::from_columns(dim, &columns).rank();
            if new_rank > rank {
                rank = new_rank;
                let mut form = PolyForm::zero(self.space);
                for (i, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        form = form.add(&basis[i].scale(c)).expect("same space");
                    }
                }
                reps.push(form);
            } else {
                columns.pop();
            }
        }
        reps
    }
}

/// Diagonal entries of the expanded matrix, or an error if it is not
/// diagonal in the given coordinates.
fn diagonal_eigenvalues(space: CoordinateSpace, h: &Matrix) -> Result<Vec<Scalar>> {
    let full = expand_block_matrix(space, h)?;
    let d = full.len();
    for i in 0..d {
        for j in 0..d {
            if i != j && !full[i][j].is_zero() {
                return Err(Error::Parse(
                    "homotopy operator requires h diagonal in the given coordinates"
                        .into(),
                ));
            }
        }
    }
    Ok((0..d).map(|i| full[i][i].clone()).collect())
}

/// The homotopy operator S for the twisted Koszul differential of a diagonal
/// h. On an eigen-monomial ω it is (1/c)·d_W(ω), where d_W differentiates
/// only the non-fixed coordinates and c = Σ_j (exponent_j + dx-indicator_j)
/// (1 − μ_j) over non-fixed coordinates. Satisfies
/// i_Y S(ω) + S(i_Y ω) = ω − π(ω) with π the projection onto forms purely in
/// fixed coordinates.
pub fn koszul_homotopy(
    space: CoordinateSpace,
    h: &Matrix,
    omega: &PolyForm,
) -> Result<PolyForm> {
    let mu = diagonal_eigenvalues(space, h)?;
    let nonfixed: Vec<usize> = (0..mu.len()).filter(|&j| !mu[j].is_one()).collect();
    let mut out = PolyForm::zero(space);
    for ((e, idx), coeff) in &omega.terms {
        let mut weight = Scalar::zero();
        let mut purely_fixed = true;
        for &j in &nonfixed {
            let indicator = if idx.contains(&j) { 1 } else { 0 };
            let count = e[j] as i64 + indicator;
            if count != 0 {
                purely_fixed = false;
                let one_minus = Scalar::one().sub(&mu[j]);
                weight = weight.add(&one_minus.mul(&Scalar::from_int(count)));
            }
        }
        if purely_fixed {
            continue;
        }
        if weight.is_zero() {
            return Err(Error::ResonantWeight);
        }
        let inv = weight.inv()?;
        // d_W over the non-fixed coordinates of this single term.
        let term = PolyForm::monomial(space, e.clone(), idx.clone(), coeff.mul(&inv));
        for &j in &nonfixed {
            let dxj = PolyForm::d_var(space, j);
            let dterm = partial_derivative(&term, j);
            out = out.add(&dxj.wedge(&dterm)?)?;
        }
    }
    Ok(out)
}

/// ∂/∂x_j applied to the polynomial coefficients of a form.
fn partial_derivative(f: &PolyForm, j: usize) -> PolyForm {
    let mut out = PolyForm::zero(f.space);
    for ((e, idx), c) in &f.terms {
        if e[j] == 0 {
            continue;
        }
        let mut exps = e.clone();
        exps[j] -= 1;
        out.add_term(exps, idx.clone(), c.mul(&Scalar::from_int(e[j] as i64)));
    }
    out
}

/// Projection onto terms purely in the fixed coordinates of h (kills every
/// monomial touching a non-fixed coordinate or carrying a non-fixed dx).
pub fn fixed_projection(
    space: CoordinateSpace,
    h: &Matrix,
    omega: &PolyForm,
) -> Result<PolyForm> {
    let mu = diagonal_eigenvalues(space, h)?;
    let mut out = PolyForm::zero(space);
    for ((e, idx), c) in &omega.terms {
        let touches_nonfixed = (0..mu.len()).any(|j| {
            !mu[j].is_one() && (e[j] > 0 || idx.contains(&j))
        });
        if !touches_nonfixed {
            out.add_term(e.clone(), idx.clone(), c.clone());
        }
    }
    Ok(out)
}

/// The twisted Koszul field Y_h as a vector field (for use in identities).
pub fn twisted_field(space: CoordinateSpace, h: &Matrix) -> Result<PolyVectorField> {
    let full = expand_block_matrix(space, h)?;
    let d = full.len();
    let mut y = vec![vec![Scalar::zero(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let mut v = full[i][j].neg();
            if i == j {
                v = v.add(&Scalar::one());
            }
            y[i][j] = v;
        }
    }
    PolyVectorField::linear(space, &y)
}

/// Homology of the contraction complex of the Euler field on the variables
/// outside `fixed_set`: exact above degree 0, and at degree 0 computes
/// functions on the zero locus of the non-fixed variables.
pub fn euler_koszul_check(
    space: CoordinateSpace,
    fixed_set: &[usize],
    kmax: usize,
    nmax: usize,
) -> Result<HomologyReport> {
    let d = space.num_vars();
    let mut m = vec![vec![Scalar::zero(); d]; d];
    for j in 0..d {
        if !fixed_set.contains(&j) {
            m[j][j] = Scalar::one();
        }
    }
    let field = PolyVectorField::linear(space, &m)?;
    let complex = build_contraction_complex(space, field, "euler".into(), nmax)?;
    Ok(complex.homology(kmax, nmax))
}

/// The contraction field E_j = Σ_{k∈K_j} w_k (z_k ∂_{z_k} − z̄_k ∂_{z̄_k})
/// on the fixed coordinate set of the singular point j/w, expressed on
/// `ComplexPairs(|K_j|)` (constant 2πi unit dropped; kernels are invariant
/// under nonzero rescaling).
pub fn circle_stalk_field(
    action: &CircleAction,
    j: u64,
) -> Result<(CoordinateSpace, PolyVectorField)> {
    if j >= action.w {
        return Err(Error::NotASingularPoint(j));
    }
    let fixed: Vec<usize> = action
        .weights
        .iter()
        .enumerate()
        .filter(|(_, &wk)| (j as i64 * wk).rem_euclid(action.w as i64) == 0)
        .map(|(k, _)| k)
        .collect();
    let m = fixed.len();
    let space = CoordinateSpace::ComplexPairs(m);
    let d = 2 * m;
    let mut mat = vec![vec![Scalar::zero(); d]; d];
    for (pos, &k) in fixed.iter().enumerate() {
        mat[pos][pos] = Scalar::from_int(action.weights[k]);
        mat[pos + m][pos + m] = Scalar::from_int(-action.weights[k]);
    }
    Ok((space, PolyVectorField::linear(space, &mat)?))
}

/// Stalk homology at the singular point j/w: dimension of ker i_{E_j} on
/// each (k, n) graded piece of forms in the coordinates fixed at j/w. The
/// non-fixed directions contribute only through degree 0 and are already
/// divided out.
pub fn circle_stalk_homology(
    action: &CircleAction,
    j: u64,
    kmax: usize,
    nmax: usize,
) -> Result<HomologyReport> {
    let (space, field) = circle_stalk_field(action, j)?;
    let keys: Vec<(usize, usize)> = (0..=kmax)
        .flat_map(|k| (0..=nmax).map(move |n| (k, n)))
        .collect();
    let table: Result<Vec<((usize, usize), usize)>> = keys
        .par_iter()
        .map(|&(k, n)| {
            let dim = graded_basis(space, k, n).len();
            let kernel = if k == 0 {
                dim
            } else {
                dim - contraction_matrix(space, &field, k, n)?.rank()
            };
            Ok(((k, n), kernel))
        })
        .collect();
    Ok(HomologyReport {
        stratum: format!("j={}/{}", j, action.w),
        table: table?.into_iter().collect(),
    })
}

/// Expected twisted homology dimension: forms on the fixed subspace,
/// C(f, k)·C(n−k+f−1, f−1) for f fixed coordinates.
pub fn fixed_space_form_dim(f: usize, k: usize, n: usize) -> usize {
    if k > f || n < k {
        return 0;
    }
    graded_basis(CoordinateSpace::Real(f), k, n).len()
}
