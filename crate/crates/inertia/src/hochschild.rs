//! Brute-force twisted Hochschild (bar) complexes on fixed internal degree,
//! the equivariant Hochschild complex of a finite group, the chain-level map
//! from the crossed-product complex to the equivariant one, the crossed
//! product homology via strata invariants, and the HKR chain map.
//!
//! Group elements act on polynomials on the left: (g·a)(x) = a(g⁻¹x). The
//! twisted face for a matrix h substitutes a ↦ a∘h, i.e. a(hx).

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forms::{
    basis_index, graded_basis, monomials_of_degree, CoordinateSpace, Exponents,
    PolyForm,
};
use crate::groups::{fixed_subspace, loop_space_finite, FiniteGroup, Matrix};
use crate::koszul::HomologyReport;
use crate::matrix::SparseMatrix;
use crate::scalar::Scalar;

/// Homogeneous Hochschild k-chain: a linear combination of (k+1)-tuples of
/// monomials, all of the same total degree.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorChain {
    pub space: CoordinateSpace,
    pub k: usize,
    pub terms: BTreeMap<Vec<Exponents>, Scalar>,
}

impl TensorChain {
    pub fn zero(space: CoordinateSpace, k: usize) -> Self {
        TensorChain {
            space,
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_tuple(space: CoordinateSpace, tuple: Vec<Exponents>, coeff: Scalar) -> Self {
        let mut c = TensorChain::zero(space, tuple.len() - 1);
        c.add_term(tuple, coeff);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, tuple: Vec<Exponents>, coeff: Scalar) {
        debug_assert_eq!(tuple.len(), self.k + 1);
        if coeff.is_zero() {
            return;
        }
        let cur = self.terms.remove(&tuple).unwrap_or_else(Scalar::zero);
        let next = cur.add(&coeff);
        if !next.is_zero() {
            self.terms.insert(tuple, next);
        }
    }

    pub fn add(&self, other: &TensorChain) -> TensorChain {
        assert_eq!((self.space, self.k), (other.space, other.k));
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> TensorChain {
        let mut out = TensorChain::zero(self.space, self.k);
        for (t, c) in &self.terms {
            out.add_term(t.clone(), c.mul(s));
        }
        out
    }

    /// Total degree of the stored tuples; None for the zero chain, error
    /// value ignored if inhomogeneous (callers keep chains homogeneous).
    pub fn internal_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(|t| {
            t.iter()
                .map(|m| m.iter().sum::<u32>() as usize)
                .sum::<usize>()
        })
    }
}

/// Expand a monomial under the substitution x ↦ Mx (block-matrix
/// convention of `PolyForm::pullback`).
fn substitute_monomial(
    space: CoordinateSpace,
    exps: &Exponents,
    m: &Matrix,
) -> Result<Vec<(Exponents, Scalar)>> {
    let form = PolyForm::monomial(space, exps.clone(), vec![], Scalar::one());
    let image = form.pullback(m)?;
    Ok(image
        .terms
        .into_iter()
        .map(|((e, _), c)| (e, c))
        .collect())
}

fn add_exps(a: &Exponents, b: &Exponents) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// The twisted bar differential: adjacent faces with alternating signs and
/// the wrap-around face (a_k∘h)·a_0 ⊗ a_1 ⊗ … ⊗ a_{k−1} with sign (−1)^k.
pub fn bar_differential_twisted(c: &TensorChain, h: &Matrix) -> Result<TensorChain> {
    if c.k == 0 {
        return Ok(TensorChain::zero(c.space, 0));
    }
    let k = c.k;
    let mut out = TensorChain::zero(c.space, k - 1);
    for (tuple, coeff) in &c.terms {
        for i in 0..k {
            let mut t = Vec::with_capacity(k);
            t.extend_from_slice(&tuple[..i]);
            t.push(add_exps(&tuple[i], &tuple[i + 1]));
            t.extend_from_slice(&tuple[i + 2..]);
            let mut s = coeff.clone();
            if i % 2 == 1 {
                s = s.neg();
            }
            out.add_term(t, s);
        }
        let twisted = substitute_monomial(c.space, &tuple[k], h)?;
        for (m, s) in twisted {
            let mut t = Vec::with_capacity(k);
            t.push(add_exps(&m, &tuple[0]));
            t.extend_from_slice(&tuple[1..k]);
            let mut v = coeff.mul(&s);
            if k % 2 == 1 {
                v = v.neg();
            }
            out.add_term(t, v);
        }
    }
    Ok(out)
}

/// Size guard for the brute-force bar complex (configurable; the CLI maps an
/// environment override onto this).
#[derive(Clone, Copy, Debug)]
pub struct SizeGuard {
    pub kmax: usize,
    pub nmax: usize,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard { kmax: 3, nmax: 5 }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Dimension of the homogeneous chain space C_k in internal degree n.
pub fn chain_space_dim(space: CoordinateSpace, k: usize, n: usize) -> usize {
    let slots = ((k + 1) * space.num_vars()) as u128;
    if slots == 0 {
        return if n == 0 { 1 } else { 0 };
    }
    binomial(n as u128 + slots - 1, slots - 1) as usize
}

/// All (k+1)-tuples of monomials of total degree n, in deterministic order.
pub fn chain_basis(space: CoordinateSpace, k: usize, n: usize) -> Vec<Vec<Exponents>> {
    let d = space.num_vars();
    fn rec(
        slots: usize,
        rem: u32,
        d: usize,
        cur: &mut Vec<Exponents>,
        out: &mut Vec<Vec<Exponents>>,
    ) {
        if slots == 0 {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for deg in 0..=rem {
            for m in monomials_of_degree(d, deg) {
                cur.push(m);
                rec(slots - 1, rem - deg, d, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(k + 1, n as u32, d, &mut Vec::new(), &mut out);
    out
}

/// Matrix of the twisted bar differential C_k(n) → C_{k−1}(n).
fn bar_matrix(
    space: CoordinateSpace,
    h: &Matrix,
    k: usize,
    n: usize,
) -> Result<SparseMatrix> {
    let src = chain_basis(space, k, n);
    let tgt = chain_basis(space, k - 1, n);
    let index: BTreeMap<&Vec<Exponents>, usize> =
        tgt.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut m = SparseMatrix::new(tgt.len(), src.len());
    for (col, tuple) in src.iter().enumerate() {
        let chain = TensorChain::from_tuple(space, tuple.clone(), Scalar::one());
        let image = bar_differential_twisted(&chain, h)?;
        for (t, c) in &image.terms {
            let row = *index.get(t).expect("bar differential preserves degree");
            m.add_to(row, col, c);
        }
    }
    Ok(m)
}

/// Brute-force twisted Hochschild homology dimension at (k, n):
/// dim ker b_k − rank b_{k+1} on the homogeneous pieces.
pub fn brute_twisted_hh(
    space: CoordinateSpace,
    h: &Matrix,
    k: usize,
    n: usize,
    guard: SizeGuard,
) -> Result<usize> {
    if k > guard.kmax || n > guard.nmax {
        return Err(Error::SizeGuardExceeded {
            k,
            n,
            dim: chain_space_dim(space, k, n),
        });
    }
    let dim = chain_space_dim(space, k, n);
    let kernel = if k == 0 {
        dim
    } else {
        dim - bar_matrix(space, h, k, n)?.rank()
    };
    let image = bar_matrix(space, h, k + 1, n)?.rank();
    Ok(kernel - image)
}

/// Full brute homology table for k ≤ kmax, n ≤ nmax, computed in parallel.
pub fn brute_twisted_hh_table(
    space: CoordinateSpace,
    h: &Matrix,
    kmax: usize,
    nmax: usize,
    guard: SizeGuard,
) -> Result<HomologyReport> {
    let keys: Vec<(usize, usize)> = (0..=kmax)
        .flat_map(|k| (0..=nmax).map(move |n| (k, n)))
        .collect();
    let rows: Result<Vec<((usize, usize), usize)>> = keys
        .par_iter()
        .map(|&(k, n)| Ok(((k, n), brute_twisted_hh(space, h, k, n, guard)?)))
        .collect();
    Ok(HomologyReport {
        stratum: "bar-oracle".into(),
        table: rows?.into_iter().collect(),
    })
}

/// The chain-level HKR form f_0 df_1 ∧ … ∧ df_k on the full space.
pub fn hkr_form(c: &TensorChain) -> Result<PolyForm> {
    let mut out = PolyForm::zero(c.space);
    for (tuple, coeff) in &c.terms {
        let mut acc = PolyForm::monomial(c.space, tuple[0].clone(), vec![], coeff.clone());
        for m in &tuple[1..] {
            let f = PolyForm::monomial(c.space, m.clone(), vec![], Scalar::one());
            acc = acc.wedge(&f.d_rel())?;
        }
        out = out.add(&acc)?;
    }
    Ok(out)
}

/// HKR map followed by restriction to the fixed subspace of γ, expressed in
/// the kernel-basis coordinates of that subspace.
pub fn hkr_map(
    c: &TensorChain,
    gamma: &Matrix,
) -> Result<(PolyForm, CoordinateSpace)> {
    let basis = fixed_subspace(c.space, gamma)?;
    let f = basis.len();
    let target = CoordinateSpace::Real(f);
    let d = c.space.num_vars();
    // Parametrization x_i = Σ_j basis[j][i] u_j.
    let rows: Vec<Vec<Scalar>> = (0..d)
        .map(|i| (0..f).map(|j| basis[j][i].clone()).collect())
        .collect();
    let form = hkr_form(c)?.pullback_linear(&rows, target)?;
    Ok((form, target))
}

/// A chain of the equivariant Hochschild complex: a finitely supported
/// function from group elements to homogeneous tensor chains.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantChain {
    pub space: CoordinateSpace,
    pub k: usize,
    pub parts: BTreeMap<usize, TensorChain>,
}

impl EquivariantChain {
    pub fn zero(space: CoordinateSpace, k: usize) -> Self {
        EquivariantChain {
            space,
            k,
            parts: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, g: usize, chain: TensorChain) {
        assert_eq!(chain.k, self.k);
        if chain.is_zero() {
            self.parts.remove(&g);
        } else {
            self.parts.insert(g, chain);
        }
    }

    pub fn get(&self, g: usize) -> TensorChain {
        self.parts
            .get(&g)
            .cloned()
            .unwrap_or_else(|| TensorChain::zero(self.space, self.k))
    }

    pub fn add_at(&mut self, g: usize, chain: &TensorChain) {
        let sum = self.get(g).add(chain);
        self.set(g, sum);
    }

    pub fn scale(&self, s: &Scalar) -> EquivariantChain {
        let mut out = EquivariantChain::zero(self.space, self.k);
        for (&g, c) in &self.parts {
            out.set(g, c.scale(s));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Apply group elements factor-wise to a tensor chain: factor i is acted on
/// by elems[i], with (g·a)(x) = a(g⁻¹x).
pub fn act_tuple(
    group: &FiniteGroup,
    elems: &[usize],
    chain: &TensorChain,
) -> Result<TensorChain> {
    assert_eq!(elems.len(), chain.k + 1);
    let mats: Vec<&Matrix> = elems
        .iter()
        .map(|&g| &group.elements[group.inverse(g)])
        .collect();
    let mut out = TensorChain::zero(chain.space, chain.k);
    for (tuple, coeff) in &chain.terms {
        let mut partial: Vec<(Vec<Exponents>, Scalar)> =
            vec![(Vec::new(), coeff.clone())];
        for (i, m) in tuple.iter().enumerate() {
            let subs = substitute_monomial(chain.space, m, mats[i])?;
            let mut next = Vec::new();
            for (prefix, s) in &partial {
                for (e, c) in &subs {
                    let mut t = prefix.clone();
                    t.push(e.clone());
                    next.push((t, s.mul(c)));
                }
            }
            partial = next;
        }
        for (t, s) in partial {
            out.add_term(t, s);
        }
    }
    Ok(out)
}

/// Diagonal action of a group element on a chain.
pub fn diag_action(
    group: &FiniteGroup,
    g: usize,
    chain: &TensorChain,
) -> Result<TensorChain> {
    act_tuple(group, &vec![g; chain.k + 1], chain)
}

/// Conjugation invariance of an equivariant chain: F(hgh⁻¹) = h·F(g) for
/// all g, h (the diagonal action on tensor factors).
pub fn is_invariant(f: &EquivariantChain, group: &FiniteGroup) -> Result<bool> {
    for g in 0..group.order() {
        for h in 0..group.order() {
            let conj = group.mul(group.mul(h, g), group.inverse(h));
            let lhs = f.get(conj);
            let rhs = diag_action(group, h, &f.get(g))?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The twisted equivariant differential: (b_tw F)(g) applies the bar
/// differential to F(g) with the wrap-around face twisted by g⁻¹ acting on
/// the last factor, i.e. a_k ↦ a_k∘g.
pub fn twisted_equivariant_differential(
    f: &EquivariantChain,
    group: &FiniteGroup,
) -> Result<EquivariantChain> {
    let mut out = EquivariantChain::zero(f.space, f.k.saturating_sub(1));
    for (&g, chain) in &f.parts {
        let image = bar_differential_twisted(chain, &group.elements[g])?;
        out.add_at(g, &image);
    }
    Ok(out)
}

/// A Hochschild chain of the finite crossed product: a finitely supported
/// function G^{k+1} → A^{⊗(k+1)} with monomial data.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossedChain {
    pub space: CoordinateSpace,
    pub k: usize,
    pub parts: BTreeMap<Vec<usize>, TensorChain>,
}

impl CrossedChain {
    pub fn zero(space: CoordinateSpace, k: usize) -> Self {
        CrossedChain {
            space,
            k,
            parts: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, key: Vec<usize>, chain: TensorChain) {
        assert_eq!(key.len(), self.k + 1);
        if !chain.is_zero() {
            self.parts.insert(key, chain);
        }
    }
}

fn tuples(order: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for t in &out {
            for g in 0..order {
                let mut t2 = t.clone();
                t2.push(g);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// Map a crossed-product chain to an invariant equivariant chain: the
/// explicit translate sum
/// F̃(g) = (1/|G|^k) Σ (g⁻¹h₁⋯h_k ⊗ 1 ⊗ h₁ ⊗ … ⊗ h₁⋯h_{k−1})·F(h_k⁻¹⋯h₁⁻¹g, h₁, …, h_k)
/// composed with the averaging projection onto conjugation invariants (the
/// identification of the zeroth group homology with invariants).
pub fn qism_tilde(f: &CrossedChain, group: &FiniteGroup) -> Result<EquivariantChain> {
    let k = f.k;
    let order = group.order();
    let mut raw = EquivariantChain::zero(f.space, k);
    for g in 0..order {
        for hs in tuples(order, k) {
            // Prefix products p_i = h_1 ⋯ h_i with p_0 = e.
            let mut prefix = vec![group.identity];
            for &h in &hs {
                prefix.push(group.mul(*prefix.last().unwrap(), h));
            }
            let arg0 = group.mul(group.inverse(prefix[k]), g);
            let mut key = vec![arg0];
            key.extend_from_slice(&hs);
            let Some(chain) = f.parts.get(&key) else { continue };
            let mut acting = vec![group.mul(group.inverse(g), prefix[k])];
            acting.push(group.identity);
            if k >= 1 {
                for p in &prefix[1..k] {
                    acting.push(*p);
                }
            }
            // At k = 0 the tuple is just (g⁻¹); at k ≥ 1 it has k+1 entries.
            acting.truncate(k + 1);
            let image = act_tuple(group, &acting, chain)?;
            raw.add_at(g, &image);
        }
    }
    let norm = Scalar::ratio(1, (order as i64).pow(k as u32));
    let raw = raw.scale(&norm);
    // Averaging projection: F ↦ (1/|G|) Σ_γ γ·F(γ⁻¹ g γ).
    let mut out = EquivariantChain::zero(f.space, k);
    for g in 0..order {
        let mut acc = TensorChain::zero(f.space, k);
        for gamma in 0..order {
            let arg = group.mul(
                group.mul(group.inverse(gamma), g),
                gamma,
            );
            acc = acc.add(&diag_action(group, gamma, &raw.get(arg))?);
        }
        out.set(g, acc.scale(&Scalar::ratio(1, order as i64)));
    }
    Ok(out)
}

/// Exact solve of P·b = r for full-column-rank P given by its columns.
fn solve_in_span(columns: &[Vec<Scalar>], rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    let d = rhs.len();
    let mut all: Vec<Vec<Scalar>> = columns.to_vec();
    all.push(rhs.to_vec());
    let m = SparseMatrix::from_columns(d, &all);
    for v in m.kernel_basis() {
        let last = &v[columns.len()];
        if !last.is_zero() {
            let inv = last.inv().ok()?;
            return Some(
                v[..columns.len()]
                    .iter()
                    .map(|x| x.mul(&inv).neg())
                    .collect(),
            );
        }
    }
    None
}

/// Per-conjugacy-class and total invariant dimensions of ⊕_γ Ω^k_n(V^γ)
/// under the conjugation action γ'(γ, x) = (γ'γγ'⁻¹, γ'x).
#[derive(Clone, Debug)]
pub struct CrossedProductReport {
    pub per_class: BTreeMap<usize, BTreeMap<(usize, usize), usize>>,
    pub total: HomologyReport,
}

pub fn crossed_product_hh_finite(
    group: &FiniteGroup,
    kmax: usize,
    nmax: usize,
) -> Result<CrossedProductReport> {
    let strata = loop_space_finite(group)?;
    let order = group.order();
    let space = group.space;
    let d = space.num_vars();
    // Transport coefficients B(h, γ): stalk coordinates of h⁻¹ restricted to
    // V^{hγh⁻¹}, solving P_γ B = h⁻¹ P_{γ'} column by column.
    let mut transport: BTreeMap<(usize, usize), Vec<Vec<Scalar>>> = BTreeMap::new();
    for h in 0..order {
        let h_inv_full = crate::forms::expand_block_matrix(
            space,
            &group.elements[group.inverse(h)],
        )?;
        for gamma in 0..order {
            let gamma_p = group.mul(group.mul(h, gamma), group.inverse(h));
            let src = &strata[gamma].fixed_basis;
            let tgt = &strata[gamma_p].fixed_basis;
            let f = src.len();
            debug_assert_eq!(f, tgt.len());
            // Columns of h⁻¹ P_{γ'} in ambient coordinates.
            let mut b_rows = vec![vec![Scalar::zero(); tgt.len()]; f];
            for (cj, w) in tgt.iter().enumerate() {
                let mut rhs = vec![Scalar::zero(); d];
                for (i, row) in h_inv_full.iter().enumerate() {
                    for (jj, v) in row.iter().enumerate() {
                        if !v.is_zero() && !w[jj].is_zero() {
                            rhs[i] = rhs[i].add(&v.mul(&w[jj]));
                        }
                    }
                }
                if f == 0 {
                    continue;
                }
                let sol = solve_in_span(src, &rhs).ok_or(Error::NotASubspace)?;
                for (i, s) in sol.into_iter().enumerate() {
                    b_rows[i][cj] = s;
                }
            }
            transport.insert((h, gamma), b_rows);
        }
    }

    let keys: Vec<(usize, usize)> = (0..=kmax)
        .flat_map(|k| (0..=nmax).map(move |n| (k, n)))
        .collect();
    let per_piece: Result<Vec<((usize, usize), BTreeMap<usize, usize>)>> = keys
        .par_iter()
        .map(|&(k, n)| {
            // Basis layout of the direct sum: strata in element order.
            let local: Vec<Vec<PolyForm>> = strata
                .iter()
                .map(|s| graded_basis(CoordinateSpace::Real(s.fixed_basis.len()), k, n))
                .collect();
            let offsets: Vec<usize> = local
                .iter()
                .scan(0usize, |acc, b| {
                    let o = *acc;
                    *acc += b.len();
                    Some(o)
                })
                .collect();
            let total_dim: usize = local.iter().map(|b| b.len()).sum();
            let mut reynolds = SparseMatrix::new(total_dim, total_dim);
            for h in 0..order {
                for gamma in 0..order {
                    let gamma_p = group.mul(group.mul(h, gamma), group.inverse(h));
                    let rows = &transport[&(h, gamma)];
                    let f_p = strata[gamma_p].fixed_basis.len();
                    let tgt_space = CoordinateSpace::Real(f_p);
                    let index = basis_index(&local[gamma_p]);
                    for (col, form) in local[gamma].iter().enumerate() {
                        let image = form.pullback_linear(rows, tgt_space)?;
                        let coords = image.to_coordinates(&index)?;
                        for (row, v) in coords.into_iter().enumerate() {
                            if !v.is_zero() {
                                reynolds.add_to(
                                    offsets[gamma_p] + row,
                                    offsets[gamma] + col,
                                    &v,
                                );
                            }
                        }
                    }
                }
            }
            let reynolds = reynolds.scale(&Scalar::ratio(1, order as i64));
            // Rank per conjugacy class: the action permutes strata within a
            // class, so the projector is block diagonal over classes.
            let mut per_class: BTreeMap<usize, usize> = BTreeMap::new();
            let classes: std::collections::BTreeSet<usize> =
                strata.iter().map(|s| s.conjugacy_class).collect();
            for class in classes {
                let members: Vec<usize> = strata
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s.conjugacy_class == class)
                    .map(|(i, _)| i)
                    .collect();
                let mut cols: Vec<usize> = Vec::new();
                for &g in &members {
                    for c in 0..local[g].len() {
                        cols.push(offsets[g] + c);
                    }
                }
                let mut sub = SparseMatrix::new(total_dim, cols.len());
                for (sc, &c) in cols.iter().enumerate() {
                    for r in 0..total_dim {
                        let v = reynolds.get(r, c);
                        if !v.is_zero() {
                            sub.set(r, sc, v);
                        }
                    }
                }
                per_class.insert(class, sub.rank());
            }
            Ok(((k, n), per_class))
        })
        .collect();
    let mut per_class: BTreeMap<usize, BTreeMap<(usize, usize), usize>> = BTreeMap::new();
    let mut total: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for ((k, n), classes) in per_piece? {
        let mut sum = 0;
        for (class, dim) in classes {
            per_class.entry(class).or_default().insert((k, n), dim);
            sum += dim;
        }
        total.insert((k, n), sum);
    }
    Ok(CrossedProductReport {
        per_class,
        total: HomologyReport {
            stratum: "crossed-product".into(),
            table: total,
        },
    })
}

/// Brute-force HH₀ of the finite crossed product in internal degree n:
/// dim A_G(n) − dim span of graded commutators, with the convolution
/// (f₁∗f₂)(g) = (1/|G|) Σ_h (f₁(h)∘(h⁻¹g))·f₂(h⁻¹g).
pub fn brute_crossed_hh0(group: &FiniteGroup, n: usize) -> Result<usize> {
    let space = group.space;
    let order = group.order();
    // Basis of A_G in degree m: (group element, monomial of degree m).
    let basis_at = |m: usize| -> Vec<(usize, Exponents)> {
        (0..order)
            .flat_map(|g| {
                monomials_of_degree(space.num_vars(), m as u32)
                    .into_iter()
                    .map(move |e| (g, e))
            })
            .collect()
    };
    let target = basis_at(n);
    let index: BTreeMap<&(usize, Exponents), usize> =
        target.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut commutators: Vec<Vec<Scalar>> = Vec::new();
    // Convolution of basis elements: (g1, m1)∗(g2, m2) is supported at g1g2
    // with polynomial (m1∘g2)·m2, up to the shared 1/|G| normalization.
    let product = |g1: usize,
                   m1: &Exponents,
                   g2: usize,
                   m2: &Exponents|
     -> Result<Vec<(usize, Exponents, Scalar)>> {
        let g = group.mul(g1, g2);
        let subs = substitute_monomial(space, m1, &group.elements[g2])?;
        Ok(subs
            .into_iter()
            .map(|(e, c)| (g, add_exps(&e, m2), c))
            .collect())
    };
    for n1 in 0..=n {
        let n2 = n - n1;
        for (g1, m1) in basis_at(n1) {
            for (g2, m2) in basis_at(n2) {
                let mut v = vec![Scalar::zero(); target.len()];
                for (g, e, c) in product(g1, &m1, g2, &m2)? {
                    let pos = index[&(g, e)];
                    v[pos] = v[pos].add(&c);
                }
                for (g, e, c) in product(g2, &m2, g1, &m1)? {
                    let pos = index[&(g, e)];
                    v[pos] = v[pos].sub(&c);
                }
                if v.iter().any(|x| !x.is_zero()) {
                    commutators.push(v);
                }
            }
        }
    }
    let span = SparseMatrix::from_columns(target.len(), &commutators).rank();
    Ok(target.len() - span)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{close_generators, mat_identity};
    use crate::koszul::fixed_space_form_dim;

    fn minus_i(d: usize) -> Matrix {
        let mut m = mat_identity(d);
        for i in 0..d {
            m[i][i] = Scalar::from_int(-1);
        }
        m
    }

    const R1: CoordinateSpace = CoordinateSpace::Real(1);

    fn x_tensor_x() -> TensorChain {
        TensorChain::from_tuple(R1, vec![vec![1], vec![1]], Scalar::one())
    }

    #[test]
    fn bar_faces() {
        // b(x⊗x) with h = −I: x² − (−x)·x = 2x².
        let b = bar_differential_twisted(&x_tensor_x(), &minus_i(1)).unwrap();
        let expect = TensorChain::from_tuple(R1, vec![vec![2]], Scalar::from_int(2));
        assert_eq!(b, expect);
        // b(1⊗x) = x − x∘h.
        let c = TensorChain::from_tuple(R1, vec![vec![0], vec![1]], Scalar::one());
        let b = bar_differential_twisted(&c, &minus_i(1)).unwrap();
        let expect = TensorChain::from_tuple(R1, vec![vec![1]], Scalar::from_int(2));
        assert_eq!(b, expect);
        // Untwisted: b(x⊗x) = 0.
        let b = bar_differential_twisted(&x_tensor_x(), &mat_identity(1)).unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn bar_squares_to_zero() {
        let r2 = CoordinateSpace::Real(2);
        let h = minus_i(2);
        for tuple in chain_basis(r2, 2, 3) {
            let c = TensorChain::from_tuple(r2, tuple, Scalar::one());
            let bb = bar_differential_twisted(
                &bar_differential_twisted(&c, &h).unwrap(),
                &h,
            )
            .unwrap();
            assert!(bb.is_zero());
        }
    }

    #[test]
    fn brute_dimensions_match_fixed_space() {
        assert_eq!(
            brute_twisted_hh(R1, &minus_i(1), 0, 0, SizeGuard::default()).unwrap(),
            1
        );
        assert_eq!(
            brute_twisted_hh(R1, &minus_i(1), 0, 1, SizeGuard::default()).unwrap(),
            0
        );
        let r2 = CoordinateSpace::Real(2);
        assert_eq!(
            brute_twisted_hh(r2, &minus_i(2), 1, 2, SizeGuard::default()).unwrap(),
            0
        );
        // Untwisted HKR check on R¹ at (1, 2): x dx only → 1.
        assert_eq!(
            brute_twisted_hh(R1, &mat_identity(1), 1, 2, SizeGuard::default()).unwrap(),
            fixed_space_form_dim(1, 1, 2)
        );
        assert!(matches!(
            brute_twisted_hh(R1, &minus_i(1), 0, 9, SizeGuard::default()),
            Err(Error::SizeGuardExceeded { .. })
        ));
    }

    #[test]
    fn hkr_examples() {
        let (form, space) = hkr_map(&x_tensor_x(), &mat_identity(1)).unwrap();
        assert_eq!(space, R1);
        assert_eq!(
            form,
            PolyForm::monomial(R1, vec![1], vec![0], Scalar::one())
        );

        let r2 = CoordinateSpace::Real(2);
        let c = TensorChain::from_tuple(
            r2,
            vec![vec![0, 0], vec![1, 0], vec![0, 1]],
            Scalar::one(),
        );
        let (form, _) = hkr_map(&c, &mat_identity(2)).unwrap();
        assert_eq!(
            form,
            PolyForm::monomial(r2, vec![0, 0], vec![0, 1], Scalar::one())
        );

        // x1⊗x1 restricted to the fixed axis of diag(1, −1).
        let mut gamma = mat_identity(2);
        gamma[1][1] = Scalar::from_int(-1);
        let c = TensorChain::from_tuple(r2, vec![vec![1, 0], vec![1, 0]], Scalar::one());
        let (form, space) = hkr_map(&c, &gamma).unwrap();
        assert_eq!(space, R1);
        assert_eq!(
            form,
            PolyForm::monomial(R1, vec![1], vec![0], Scalar::one())
        );
    }

    #[test]
    fn hkr_annihilates_boundaries() {
        let r2 = CoordinateSpace::Real(2);
        let mut gamma = mat_identity(2);
        gamma[1][1] = Scalar::from_int(-1);
        for tuple in chain_basis(r2, 2, 3) {
            let c = TensorChain::from_tuple(r2, tuple, Scalar::one());
            let b = bar_differential_twisted(&c, &gamma).unwrap();
            let (form, _) = hkr_map(&b, &gamma).unwrap();
            assert!(form.is_zero(), "HKR of a boundary must vanish");
        }
    }

    #[test]
    fn equivariant_differential() {
        let z2 = close_generators(R1, &[minus_i(1)], 8).unwrap();
        let g_minus = (0..2).find(|&g| g != z2.identity).unwrap();
        let mut f = EquivariantChain::zero(R1, 1);
        f.set(g_minus, x_tensor_x());
        let b = twisted_equivariant_differential(&f, &z2).unwrap();
        let expect = TensorChain::from_tuple(R1, vec![vec![2]], Scalar::from_int(2));
        assert_eq!(b.get(g_minus), expect);
        assert!(b.get(z2.identity).is_zero());
        // (b_tw)² = 0.
        let mut f2 = EquivariantChain::zero(R1, 2);
        f2.set(
            g_minus,
            TensorChain::from_tuple(R1, vec![vec![1], vec![1], vec![1]], Scalar::one()),
        );
        let bb = twisted_equivariant_differential(
            &twisted_equivariant_differential(&f2, &z2).unwrap(),
            &z2,
        )
        .unwrap();
        assert!(bb.is_zero());
    }

    #[test]
    fn qism_examples() {
        let z2 = close_generators(R1, &[minus_i(1)], 8).unwrap();
        let g_minus = (0..2).find(|&g| g != z2.identity).unwrap();

        // k = 0, F(g) = δ_{g=I}·1: the translate formula gives F̃ = F, and
        // constants are conjugation-invariant already.
        let mut f = CrossedChain::zero(R1, 0);
        f.set(
            vec![z2.identity],
            TensorChain::from_tuple(R1, vec![vec![0]], Scalar::one()),
        );
        let tilde = qism_tilde(&f, &z2).unwrap();
        assert_eq!(
            tilde.get(z2.identity),
            TensorChain::from_tuple(R1, vec![vec![0]], Scalar::one())
        );
        assert!(tilde.get(g_minus).is_zero());
        assert!(is_invariant(&tilde, &z2).unwrap());

        // k = 1, concentrated on (I, I) with a non-invariant value.
        let mut f = CrossedChain::zero(R1, 1);
        f.set(vec![z2.identity, z2.identity], x_tensor_x());
        let tilde = qism_tilde(&f, &z2).unwrap();
        assert!(is_invariant(&tilde, &z2).unwrap());
        assert!(!tilde.is_zero());

        // Trivial group: identity reindexing.
        let trivial = crate::groups::FiniteGroup::trivial(R1);
        let mut f = CrossedChain::zero(R1, 1);
        f.set(vec![0, 0], x_tensor_x());
        let tilde = qism_tilde(&f, &trivial).unwrap();
        assert_eq!(tilde.get(0), x_tensor_x());
    }

    #[test]
    fn crossed_product_examples() {
        let r2 = CoordinateSpace::Real(2);
        let trivial = crate::groups::FiniteGroup::trivial(r2);
        let rep = crossed_product_hh_finite(&trivial, 2, 3).unwrap();
        for (&(k, n), &dim) in &rep.total.table {
            assert_eq!(dim, graded_basis(r2, k, n).len());
        }

        let z2 = close_generators(r2, &[minus_i(2)], 8).unwrap();
        let rep = crossed_product_hh_finite(&z2, 2, 4).unwrap();
        assert_eq!(rep.total.table[&(0, 0)], 2);
        assert_eq!(rep.total.table[&(1, 2)], 4);

        let c1 = CoordinateSpace::ComplexPairs(1);
        let z3gen = vec![vec![Scalar::root_of_unity(3, 1).unwrap()]];
        let z3 = close_generators(c1, &[z3gen], 8).unwrap();
        let rep = crossed_product_hh_finite(&z3, 1, 2).unwrap();
        assert_eq!(rep.total.table[&(0, 0)], 3);
    }

    #[test]
    fn hh0_brute_matches_strata() {
        let r2 = CoordinateSpace::Real(2);
        let z2 = close_generators(r2, &[minus_i(2)], 8).unwrap();
        let rep = crossed_product_hh_finite(&z2, 0, 3).unwrap();
        for n in 0..=3 {
            assert_eq!(
                brute_crossed_hh0(&z2, n).unwrap(),
                rep.total.table[&(0, n)],
                "HH₀ mismatch at degree {}",
                n
            );
        }
    }
}
