//! Relative, horizontal, and basic forms on the strata of a weighted circle
//! action: per-stratum graded bases, vanishing-ideal verification in the
//! local polynomial model, injectivity of the comparison map from the
//! quotient-sheaf model to stratum-bundle sections, and summary tables.
//!
//! For finite groups the horizontality condition is vacuous (the isotropy
//! Lie algebras vanish), so basic families coincide with the conjugation
//! invariants computed by `hochschild::crossed_product_hh_finite`;
//! `finite_group_basic_table` delegates there.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forms::{
    graded_basis, CoordinateSpace, Exponents, FormIndices, PolyForm, PolyVectorField,
};
use crate::groups::{CircleAction, FiniteGroup};
use crate::hochschild::crossed_product_hh_finite;
use crate::koszul::{circle_stalk_homology, contraction_matrix, HomologyReport};
use crate::matrix::SparseMatrix;
use crate::scalar::Scalar;

/// A stratum of the circle-action loop space: a singular point j/w or a
/// generic point (trivial isotropy, fixed space {0}).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stratum {
    Singular(u64),
    Generic,
}

impl Stratum {
    pub fn label(&self, action: &CircleAction) -> String {
        match self {
            Stratum::Singular(j) => format!("j={}/{}", j, action.w),
            Stratum::Generic => "generic".to_string(),
        }
    }
}

/// Stalk data of a stratum: the coordinate space of the fixed pairs, the
/// isotropy fundamental field E = Σ w_k (z_k∂_{z_k} − z̄_k∂_{z̄_k}), and the
/// weights of the retained pairs.
pub fn stratum_stalk(
    action: &CircleAction,
    stratum: Stratum,
) -> Result<(CoordinateSpace, PolyVectorField, Vec<i64>)> {
    let weights: Vec<i64> = match stratum {
        Stratum::Generic => Vec::new(),
        Stratum::Singular(j) => {
            if j >= action.w {
                return Err(Error::NotASingularPoint(j));
            }
            action
                .weights
                .iter()
                .copied()
                .filter(|&wk| (j as i64 * wk).rem_euclid(action.w as i64) == 0)
                .collect()
        }
    };
    let m = weights.len();
    let space = CoordinateSpace::ComplexPairs(m);
    let d = 2 * m;
    let mut mat = vec![vec![Scalar::zero(); d]; d];
    for (p, &wk) in weights.iter().enumerate() {
        mat[p][p] = Scalar::from_int(wk);
        mat[p + m][p + m] = Scalar::from_int(-wk);
    }
    Ok((space, PolyVectorField::linear(space, &mat)?, weights))
}

/// Circle weight of a monomial form: Σ w_k(α_k − β_k + γ_k − δ_k) over
/// z-exponents α, z̄-exponents β, dz factors γ, dz̄ factors δ.
fn monomial_weight(weights: &[i64], exps: &Exponents, idx: &FormIndices) -> i64 {
    let m = weights.len();
    let mut w = 0i64;
    for (p, &wk) in weights.iter().enumerate() {
        w += wk * (exps[p] as i64 - exps[p + m] as i64);
    }
    for &i in idx {
        if i < m {
            w += weights[i];
        } else {
            w -= weights[i - m];
        }
    }
    w
}

fn kernel_forms(
    space: CoordinateSpace,
    basis: &[PolyForm],
    matrix: &SparseMatrix,
) -> Vec<PolyForm> {
    matrix
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let mut form = PolyForm::zero(space);
            for (i, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    form = form.add(&basis[i].scale(c)).expect("same space");
                }
            }
            form
        })
        .collect()
}

/// Exact kernel basis of i_E on the (k, n) piece of forms in the stratum's
/// fixed coordinates.
pub fn horizontal_basis(
    action: &CircleAction,
    stratum: Stratum,
    k: usize,
    n: usize,
) -> Result<Vec<PolyForm>> {
    let (space, field, _) = stratum_stalk(action, stratum)?;
    let basis = graded_basis(space, k, n);
    if k == 0 {
        return Ok(basis);
    }
    let m = contraction_matrix(space, &field, k, n)?;
    Ok(kernel_forms(space, &basis, &m))
}

/// Horizontal forms of total circle weight zero: the kernel of i_E on the
/// weight-zero monomial span (i_E preserves the weight).
pub fn basic_basis(
    action: &CircleAction,
    stratum: Stratum,
    k: usize,
    n: usize,
) -> Result<Vec<PolyForm>> {
    let (space, field, weights) = stratum_stalk(action, stratum)?;
    let basis: Vec<PolyForm> = graded_basis(space, k, n)
        .into_iter()
        .filter(|f| {
            let (e, idx) = f.terms.keys().next().expect("monomial basis");
            monomial_weight(&weights, e, idx) == 0
        })
        .collect();
    if k == 0 {
        return Ok(basis);
    }
    let tgt = graded_basis(space, k - 1, n);
    let index = crate::forms::basis_index(&tgt);
    let mut m = SparseMatrix::new(tgt.len(), basis.len());
    for (col, b) in basis.iter().enumerate() {
        let image = b.contract(&field)?;
        for (row, v) in image.to_coordinates(&index)?.into_iter().enumerate() {
            if !v.is_zero() {
                m.set(row, col, v);
            }
        }
    }
    Ok(kernel_forms(space, &basis, &m))
}

/// One compared pair of dimensions in a verification report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRow {
    pub label: String,
    pub degree: usize,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub rows: Vec<CheckRow>,
}

impl CheckReport {
    pub fn verify(&self) -> Result<()> {
        for row in &self.rows {
            if row.lhs != row.rhs {
                return Err(Error::DimensionMismatch {
                    expected: row.lhs,
                    got: row.rhs,
                });
            }
        }
        Ok(())
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.lhs == r.rhs)
    }
}

/// Local polynomial model of the loop space near a point: variables
/// (s, z_1..z_m, z̄_1..z̄_m) with s = t − t₀. Variable 0 is s.
fn model_space(m: usize) -> CoordinateSpace {
    CoordinateSpace::Real(1 + 2 * m)
}

fn model_monomial(space: CoordinateSpace, exps: Exponents) -> PolyForm {
    PolyForm::monomial(space, exps, vec![], Scalar::one())
}

/// Monomial generator with given variable indices (each to the first power).
fn generator(space: CoordinateSpace, vars: &[usize]) -> PolyForm {
    let mut e = vec![0u32; space.num_vars()];
    for &v in vars {
        e[v] += 1;
    }
    model_monomial(space, e)
}

/// The three local stratum types of the circle loop space, with their
/// vanishing-ideal generators and restriction branches.
#[derive(Clone, Debug)]
struct LocalModel {
    label: String,
    space: CoordinateSpace,
    generators: Vec<PolyForm>,
    /// Each branch keeps the variables in the set (others restricted to 0).
    branches: Vec<Vec<usize>>,
    /// Zero-based pair indices fixed at this stratum.
    fixed_pairs: Vec<usize>,
}

fn local_models(action: &CircleAction, j: u64) -> Result<Vec<LocalModel>> {
    if j >= action.w {
        return Err(Error::NotASingularPoint(j));
    }
    let m = action.weights.len();
    let space = model_space(m);
    let fixed: Vec<usize> = (0..m)
        .filter(|&k| (j as i64 * action.weights[k]).rem_euclid(action.w as i64) == 0)
        .collect();
    let nonfixed: Vec<usize> = (0..m).filter(|k| !fixed.contains(k)).collect();
    let zvar = |k: usize| k + 1;
    let zbvar = |k: usize| k + 1 + m;
    let mut models = Vec::new();

    // Near (t₀, 0): the union of the axis {Z = 0} and {t₀} × V^{t₀}.
    let mut gens = Vec::new();
    for &k in &fixed {
        gens.push(generator(space, &[0, zvar(k)]));
        gens.push(generator(space, &[0, zbvar(k)]));
    }
    for &k in &nonfixed {
        gens.push(generator(space, &[zvar(k)]));
        gens.push(generator(space, &[zbvar(k)]));
    }
    let fixed_vars: Vec<usize> = fixed
        .iter()
        .flat_map(|&k| [zvar(k), zbvar(k)])
        .collect();
    models.push(LocalModel {
        label: "origin".into(),
        space,
        generators: gens,
        branches: vec![fixed_vars.clone(), vec![0]],
        fixed_pairs: fixed.clone(),
    });

    // Near (t₀, Z) with Z ≠ 0 in the fixed part: locally {t₀} × V^{t₀}.
    if !fixed.is_empty() {
        let mut gens = vec![generator(space, &[0])];
        for &k in &nonfixed {
            gens.push(generator(space, &[zvar(k)]));
            gens.push(generator(space, &[zbvar(k)]));
        }
        models.push(LocalModel {
            label: "off-origin".into(),
            space,
            generators: gens,
            branches: vec![fixed_vars],
            fixed_pairs: fixed,
        });
    }

    // Near a generic (t₀, 0): locally the axis {Z = 0}.
    let mut gens = Vec::new();
    for k in 0..m {
        gens.push(generator(space, &[zvar(k)]));
        gens.push(generator(space, &[zbvar(k)]));
    }
    models.push(LocalModel {
        label: "generic".into(),
        space,
        generators: gens,
        branches: vec![vec![0]],
        fixed_pairs: Vec::new(),
    });
    Ok(models)
}

fn monomial_degree(f: &PolyForm) -> usize {
    let (e, idx) = f.terms.keys().next().expect("monomial");
    e.iter().sum::<u32>() as usize + idx.len()
}

/// Keep only terms supported on the given variables (both exponents and
/// form indices); all other terms restrict to zero.
fn restrict_to_vars(f: &PolyForm, keep: &[usize]) -> PolyForm {
    let mut out = PolyForm::zero(f.space);
    for ((e, idx), c) in &f.terms {
        let ok_exps = e
            .iter()
            .enumerate()
            .all(|(v, &x)| x == 0 || keep.contains(&v));
        let ok_idx = idx.iter().all(|v| keep.contains(v));
        if ok_exps && ok_idx {
            out.add_term(e.clone(), idx.clone(), c.clone());
        }
    }
    out
}

/// Span dimension of {g·β} over all generators g and basis forms β of the
/// complementary degree, inside the (k, n) piece with form indices drawn
/// from `allowed_idx`.
fn piece_basis(space: CoordinateSpace, allowed_idx: &[usize], k: usize, n: usize) -> Vec<PolyForm> {
    graded_basis(space, k, n)
        .into_iter()
        .filter(|f| {
            let (_, idx) = f.terms.keys().next().unwrap();
            idx.iter().all(|v| allowed_idx.contains(v))
        })
        .collect()
}

fn span_rank(
    space: CoordinateSpace,
    piece: &[PolyForm],
    vectors: &[PolyForm],
) -> Result<usize> {
    let index = crate::forms::basis_index(piece);
    let mut cols = Vec::new();
    for v in vectors {
        if v.is_zero() {
            continue;
        }
        cols.push(v.to_coordinates(&index)?);
    }
    let _ = space;
    Ok(SparseMatrix::from_columns(index.len(), &cols).rank())
}

/// Per-degree comparison of the vanishing-ideal generator span with the
/// kernel of the restriction maps, for each local stratum type at the
/// singular point j/w.
pub fn vanishing_ideal_check(
    action: &CircleAction,
    j: u64,
    nmax: usize,
) -> Result<CheckReport> {
    let models = local_models(action, j)?;
    let mut rows = Vec::new();
    for model in &models {
        let space = model.space;
        let d = space.num_vars();
        for n in 0..=nmax {
            let piece: Vec<PolyForm> = graded_basis(space, 0, n);
            // (a) Degree-n span of the generators.
            let mut products = Vec::new();
            for g in &model.generators {
                let dg = monomial_degree(g);
                if dg > n {
                    continue;
                }
                for cof in graded_basis(space, 0, n - dg) {
                    products.push(g.wedge(&cof)?);
                }
            }
            let ideal_dim = span_rank(space, &piece, &products)?;
            // (b) Kernel of the combined restriction to all branches.
            let index = crate::forms::basis_index(&piece);
            let mut rest = SparseMatrix::new(
                model.branches.len() * piece.len(),
                piece.len(),
            );
            for (col, b) in piece.iter().enumerate() {
                for (bi, branch) in model.branches.iter().enumerate() {
                    let r = restrict_to_vars(b, branch);
                    for (row, v) in
                        r.to_coordinates(&index)?.into_iter().enumerate()
                    {
                        if !v.is_zero() {
                            rest.set(bi * piece.len() + row, col, v);
                        }
                    }
                }
            }
            let kernel_dim = piece.len() - rest.rank();
            let _ = d;
            rows.push(CheckRow {
                label: model.label.clone(),
                degree: n,
                lhs: ideal_dim,
                rhs: kernel_dim,
            });
        }
    }
    Ok(CheckReport { rows })
}

/// Fiber exterior derivative of the local model: differentiates the z and z̄
/// variables but not s.
fn d_fiber(f: &PolyForm) -> PolyForm {
    let mut out = PolyForm::zero(f.space);
    for v in 1..f.space.num_vars() {
        let dv = PolyForm::d_var(f.space, v);
        out = out
            .add(&dv.wedge(&partial(f, v)).expect("same space"))
            .expect("same space");
    }
    out
}

fn partial(f: &PolyForm, v: usize) -> PolyForm {
    let mut out = PolyForm::zero(f.space);
    for ((e, idx), c) in &f.terms {
        if e[v] == 0 {
            continue;
        }
        let mut exps = e.clone();
        exps[v] -= 1;
        out.add_term(exps, idx.clone(), c.mul(&Scalar::from_int(e[v] as i64)));
    }
    out
}

/// Injectivity of the comparison map from the quotient model
/// Ω^k_n / (𝒥·Ω^k + d𝒥 ∧ Ω^{k−1})_n to sections of the stratum bundle:
/// per-degree equality of the quotient dimension with the rank of the
/// restriction map. Checked at the origin model of the singular point j/w.
pub fn theta_injectivity_check(
    action: &CircleAction,
    j: u64,
    k: usize,
    nmax: usize,
) -> Result<CheckReport> {
    let models = local_models(action, j)?;
    let model = &models[0]; // the origin model carries both branches
    let space = model.space;
    let m = action.weights.len();
    // Relative forms carry dz, dz̄ but no ds.
    let fiber_idx: Vec<usize> = (1..=2 * m).collect();
    let fixed_vars: Vec<usize> = model
        .fixed_pairs
        .iter()
        .flat_map(|&p| [p + 1, p + 1 + m])
        .collect();
    let mut rows = Vec::new();
    for n in 0..=nmax {
        let piece = piece_basis(space, &fiber_idx, k, n);
        // (a) Quotient dimension.
        let mut span = Vec::new();
        for g in &model.generators {
            let dg = monomial_degree(g);
            if dg <= n {
                for beta in piece_basis(space, &fiber_idx, k, n - dg) {
                    span.push(g.wedge(&beta)?);
                }
            }
            if k >= 1 && dg <= n {
                for beta in piece_basis(space, &fiber_idx, k - 1, n - dg) {
                    span.push(d_fiber(g).wedge(&beta)?);
                }
            }
        }
        let quotient = piece.len() - span_rank(space, &piece, &span)?;
        // (b) Rank of the restriction to the stratum bundle: fixed-direction
        // components over {s = 0, z_nf = 0}; 0-forms additionally restrict
        // to the axis branch {z = z̄ = 0}.
        let index = crate::forms::basis_index(&piece);
        let branches: Vec<Vec<usize>> = if k == 0 {
            vec![fixed_vars.clone(), vec![0]]
        } else {
            vec![fixed_vars.clone()]
        };
        let mut rest = SparseMatrix::new(branches.len() * piece.len(), piece.len());
        for (col, b) in piece.iter().enumerate() {
            for (bi, branch) in branches.iter().enumerate() {
                let r = restrict_to_vars(b, branch);
                for (row, v) in r.to_coordinates(&index)?.into_iter().enumerate() {
                    if !v.is_zero() {
                        rest.set(bi * piece.len() + row, col, v);
                    }
                }
            }
        }
        rows.push(CheckRow {
            label: format!("k={}", k),
            degree: n,
            lhs: quotient,
            rhs: rest.rank(),
        });
    }
    Ok(CheckReport { rows })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicRow {
    pub stratum: String,
    pub k: usize,
    pub n: usize,
    pub dim_relative: usize,
    pub dim_horizontal: usize,
    pub dim_basic: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BasicFormsTable {
    pub rows: Vec<BasicRow>,
}

/// Relative / horizontal / basic dimensions across all singular strata plus
/// one generic stratum. The horizontal column reproduces the circle stalk
/// homology dimensions.
pub fn basic_forms_table(
    action: &CircleAction,
    kmax: usize,
    nmax: usize,
) -> Result<BasicFormsTable> {
    let mut strata: Vec<Stratum> =
        (0..action.w).map(Stratum::Singular).collect();
    strata.push(Stratum::Generic);
    let rows: Result<Vec<Vec<BasicRow>>> = strata
        .par_iter()
        .map(|&stratum| {
            let (space, _, _) = stratum_stalk(action, stratum)?;
            let mut out = Vec::new();
            for k in 0..=kmax {
                for n in 0..=nmax {
                    let dim_relative = graded_basis(space, k, n).len();
                    let dim_horizontal =
                        horizontal_basis(action, stratum, k, n)?.len();
                    let dim_basic = basic_basis(action, stratum, k, n)?.len();
                    out.push(BasicRow {
                        stratum: stratum.label(action),
                        k,
                        n,
                        dim_relative,
                        dim_horizontal,
                        dim_basic,
                    });
                }
            }
            Ok(out)
        })
        .collect();
    Ok(BasicFormsTable {
        rows: rows?.into_iter().flatten().collect(),
    })
}

/// Finite-group counterpart of the basic-forms table: horizontality is
/// vacuous, so basic = conjugation-invariant, computed by the crossed
/// product pipeline.
pub fn finite_group_basic_table(
    group: &FiniteGroup,
    kmax: usize,
    nmax: usize,
) -> Result<HomologyReport> {
    Ok(crossed_product_hh_finite(group, kmax, nmax)?.total)
}

/// Cross-check that the horizontal dimensions match the stalk homology at
/// every singular stratum.
pub fn horizontal_matches_stalk(
    action: &CircleAction,
    kmax: usize,
    nmax: usize,
) -> Result<CheckReport> {
    let mut rows = Vec::new();
    for j in 0..action.w {
        let stalk = circle_stalk_homology(action, j, kmax, nmax)?;
        for k in 0..=kmax {
            for n in 0..=nmax {
                let hor = horizontal_basis(action, Stratum::Singular(j), k, n)?.len();
                rows.push(CheckRow {
                    label: format!("j={}/{} k={}", j, action.w, k),
                    degree: n,
                    lhs: hor,
                    rhs: stalk.table[&(k, n)],
                });
            }
        }
    }
    Ok(CheckReport { rows })
}
