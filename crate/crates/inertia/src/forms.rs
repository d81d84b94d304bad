//! Polynomial-coefficient differential forms on R^d, or on C^m with the
//! conjugate variables z̄ treated as independent polynomial coordinates.
//! Supplies wedge products, the fiberwise exterior derivative, contraction by
//! polynomial vector fields, and pullback along linear maps. Internal degree
//! counts deg(x_i) = deg(dx_i) = 1 so all downstream comparisons happen one
//! graded piece at a time.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The ambient coordinate space. `ComplexPairs(m)` has 2m polynomial
/// variables: indices `0..m` are z_1..z_m and `m..2m` are z̄_1..z̄_m.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CoordinateSpace {
    Real(usize),
    ComplexPairs(usize),
}

impl CoordinateSpace {
    pub fn num_vars(&self) -> usize {
        match self {
            CoordinateSpace::Real(d) => *d,
            CoordinateSpace::ComplexPairs(m) => 2 * m,
        }
    }

    /// Index of the conjugate variable, when the space pairs them.
    pub fn conjugate_var(&self, i: usize) -> Option<usize> {
        match self {
            CoordinateSpace::Real(_) => None,
            CoordinateSpace::ComplexPairs(m) => {
                Some(if i < *m { i + *m } else { i - *m })
            }
        }
    }

    pub fn var_name(&self, i: usize) -> String {
        match self {
            CoordinateSpace::Real(_) => format!("x{}", i + 1),
            CoordinateSpace::ComplexPairs(m) => {
                if i < *m {
                    format!("z{}", i + 1)
                } else {
                    format!("z̄{}", i - *m + 1)
                }
            }
        }
    }
}

/// Exponent vector; length equals the variable count of the space.
pub type Exponents = Vec<u32>;
/// Strictly increasing tuple of form indices (the dx factors).
pub type FormIndices = Vec<usize>;
/// A polynomial as a sparse map from exponent vectors to coefficients.
pub type Poly = BTreeMap<Exponents, Scalar>;

#[derive(Clone, Debug, PartialEq)]
pub struct PolyForm {
    pub space: CoordinateSpace,
    pub terms: BTreeMap<(Exponents, FormIndices), Scalar>,
}

/// Merge two strictly increasing index tuples, returning the Koszul sign and
/// the sorted union, or None when they share an index.
fn merge_indices(a: &[usize], b: &[usize]) -> Option<(i32, FormIndices)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut sign = 1i32;
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining a-entries.
            if (a.len() - i) % 2 == 1 {
                sign = -sign;
            }
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((sign, out))
}

impl PolyForm {
    pub fn zero(space: CoordinateSpace) -> Self {
        PolyForm {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: CoordinateSpace, s: Scalar) -> Self {
        let mut f = PolyForm::zero(space);
        f.add_term(vec![0; space.num_vars()], vec![], s);
        f
    }

    /// The coordinate function x_i as a 0-form.
    pub fn var(space: CoordinateSpace, i: usize) -> Self {
        let mut e = vec![0u32; space.num_vars()];
        e[i] = 1;
        let mut f = PolyForm::zero(space);
        f.add_term(e, vec![], Scalar::one());
        f
    }

    /// The basis 1-form dx_i.
    pub fn d_var(space: CoordinateSpace, i: usize) -> Self {
        let mut f = PolyForm::zero(space);
        f.add_term(vec![0; space.num_vars()], vec![i], Scalar::one());
        f
    }

    pub fn monomial(
        space: CoordinateSpace,
        exps: Exponents,
        idx: FormIndices,
        coeff: Scalar,
    ) -> Self {
        let mut f = PolyForm::zero(space);
        f.add_term(exps, idx, coeff);
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Exponents, idx: FormIndices, coeff: Scalar) {
        debug_assert_eq!(exps.len(), self.space.num_vars());
        debug_assert!(idx.windows(2).all(|w| w[0] < w[1]));
        if coeff.is_zero() {
            return;
        }
        let key = (exps, idx);
        let cur = self.terms.remove(&key).unwrap_or_else(Scalar::zero);
        let next = cur.add(&coeff);
        if !next.is_zero() {
            self.terms.insert(key, next);
        }
    }

    pub fn add(&self, other: &PolyForm) -> Result<PolyForm> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let mut out = self.clone();
        for ((e, i), c) in &other.terms {
            out.add_term(e.clone(), i.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PolyForm) -> Result<PolyForm> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> PolyForm {
        let mut out = PolyForm::zero(self.space);
        for ((e, i), c) in &self.terms {
            out.add_term(e.clone(), i.clone(), c.mul(s));
        }
        out
    }

    pub fn neg(&self) -> PolyForm {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn wedge(&self, other: &PolyForm) -> Result<PolyForm> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let mut out = PolyForm::zero(self.space);
        for ((ea, ia), ca) in &self.terms {
            for ((eb, ib), cb) in &other.terms {
                let Some((sign, idx)) = merge_indices(ia, ib) else {
                    continue;
                };
                let exps: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let mut c = ca.mul(cb);
                if sign < 0 {
                    c = c.neg();
                }
                out.add_term(exps, idx, c);
            }
        }
        Ok(out)
    }

    /// Exterior derivative in the space variables only.
    pub fn d_rel(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.space);
        for ((e, idx), c) in &self.terms {
            for (v, &exp) in e.iter().enumerate() {
                if exp == 0 || idx.contains(&v) {
                    continue;
                }
                let Some((sign, merged)) = merge_indices(&[v], idx) else {
                    continue;
                };
                let mut exps = e.clone();
                exps[v] -= 1;
                let mut coeff = c.mul(&Scalar::from_int(exp as i64));
                if sign < 0 {
                    coeff = coeff.neg();
                }
                out.add_term(exps, merged, coeff);
            }
        }
        out
    }

    /// Interior product with a polynomial vector field.
    pub fn contract(&self, field: &PolyVectorField) -> Result<PolyForm> {
        if self.space != field.space {
            return Err(Error::SpaceMismatch);
        }
        let mut out = PolyForm::zero(self.space);
        for ((e, idx), c) in &self.terms {
            for (t, &v) in idx.iter().enumerate() {
                let comp = &field.components[v];
                if comp.is_empty() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(t);
                let mut coeff = c.clone();
                if t % 2 == 1 {
                    coeff = coeff.neg();
                }
                for (me, mc) in comp {
                    let exps: Exponents = e.iter().zip(me).map(|(a, b)| a + b).collect();
                    out.add_term(exps, rest.clone(), coeff.mul(mc));
                }
            }
        }
        Ok(out)
    }

    /// Pullback along the linear map x ↦ Mx on the same space:
    /// coefficients get x_i ↦ Σ_j M[i][j] x_j and dx_i ↦ Σ_j M[i][j] dx_j.
    /// For `ComplexPairs(m)` the matrix is the m×m block acting on z; the
    /// conjugate block acting on z̄ is its entrywise conjugate.
    pub fn pullback(&self, g: &[Vec<Scalar>]) -> Result<PolyForm> {
        let full = expand_block_matrix(self.space, g)?;
        self.pullback_linear(&full, self.space)
    }

    /// Pullback along an arbitrary linear map from `target` into this form's
    /// space: source variable i maps to Σ_j M[i][j] · (target variable j).
    /// `m` has one row per source variable, one column per target variable.
    pub fn pullback_linear(
        &self,
        m: &[Vec<Scalar>],
        target: CoordinateSpace,
    ) -> Result<PolyForm> {
        let src = self.space.num_vars();
        let tgt = target.num_vars();
        if m.len() != src {
            return Err(Error::DimensionMismatch {
                expected: src,
                got: m.len(),
            });
        }
        for row in m {
            if row.len() != tgt {
                return Err(Error::DimensionMismatch {
                    expected: tgt,
                    got: row.len(),
                });
            }
        }
        let var_images: Vec<PolyForm> = (0..src)
            .map(|i| {
                let mut f = PolyForm::zero(target);
                for (j, c) in m[i].iter().enumerate() {
                    let mut e = vec![0u32; tgt];
                    e[j] = 1;
                    f.add_term(e, vec![], c.clone());
                }
                f
            })
            .collect();
        let dvar_images: Vec<PolyForm> = (0..src)
            .map(|i| {
                let mut f = PolyForm::zero(target);
                for (j, c) in m[i].iter().enumerate() {
                    f.add_term(vec![0u32; tgt], vec![j], c.clone());
                }
                f
            })
            .collect();
        let mut out = PolyForm::zero(target);
        for ((e, idx), c) in &self.terms {
            let mut acc = PolyForm::constant(target, c.clone());
            for (v, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    acc = acc.wedge(&var_images[v])?;
                }
            }
            for &v in idx {
                acc = acc.wedge(&dvar_images[v])?;
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// Formal complex conjugation: swaps z ↔ z̄ (variables and dz factors)
    /// and conjugates the scalar coefficients. Identity map in form data on
    /// real spaces apart from scalar conjugation.
    pub fn conj(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.space);
        for ((e, idx), c) in &self.terms {
            let mut exps = vec![0u32; e.len()];
            for (i, &x) in e.iter().enumerate() {
                let j = self.space.conjugate_var(i).unwrap_or(i);
                exps[j] = x;
            }
            let mut indices: FormIndices = idx
                .iter()
                .map(|&i| self.space.conjugate_var(i).unwrap_or(i))
                .collect();
            indices.sort_unstable();
            let inversions = count_inversions(
                &idx.iter()
                    .map(|&i| self.space.conjugate_var(i).unwrap_or(i))
                    .collect::<Vec<_>>(),
            );
            let mut coeff = c.conj();
            if inversions % 2 == 1 {
                coeff = coeff.neg();
            }
            out.add_term(exps, indices, coeff);
        }
        out
    }

    /// Set of (form degree, internal degree) pairs carrying nonzero terms.
    pub fn degree_support(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .terms
            .keys()
            .map(|(e, idx)| {
                let md: u32 = e.iter().sum();
                (idx.len(), md as usize + idx.len())
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Restriction to the terms of form degree k and internal degree n.
    pub fn graded_component(&self, k: usize, n: usize) -> PolyForm {
        let mut out = PolyForm::zero(self.space);
        for ((e, idx), c) in &self.terms {
            let md: u32 = e.iter().sum();
            if idx.len() == k && md as usize + k == n {
                out.add_term(e.clone(), idx.clone(), c.clone());
            }
        }
        out
    }

    /// Coefficient vector of this form in the given monomial basis. Fails if
    /// a term lies outside the basis.
    pub fn to_coordinates(
        &self,
        index: &BTreeMap<(Exponents, FormIndices), usize>,
    ) -> Result<Vec<Scalar>> {
        let mut out = vec![Scalar::zero(); index.len()];
        for (key, c) in &self.terms {
            let Some(&pos) = index.get(key) else {
                return Err(Error::DimensionMismatch {
                    expected: index.len(),
                    got: index.len() + 1,
                });
            };
            out[pos] = c.clone();
        }
        Ok(out)
    }
}

fn count_inversions(v: &[usize]) -> usize {
    let mut n = 0;
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            if v[i] > v[j] {
                n += 1;
            }
        }
    }
    n
}

/// Expand a block matrix to the full variable set: identity on a Real space
/// check, and [g, ḡ] block-diagonal on ComplexPairs.
pub fn expand_block_matrix(
    space: CoordinateSpace,
    g: &[Vec<Scalar>],
) -> Result<Vec<Vec<Scalar>>> {
    let block = match space {
        CoordinateSpace::Real(d) => d,
        CoordinateSpace::ComplexPairs(m) => m,
    };
    if g.len() != block || g.iter().any(|r| r.len() != block) {
        return Err(Error::DimensionMismatch {
            expected: block,
            got: g.len(),
        });
    }
    match space {
        CoordinateSpace::Real(_) => Ok(g.to_vec()),
        CoordinateSpace::ComplexPairs(m) => {
            let n = 2 * m;
            let mut full = vec![vec![Scalar::zero(); n]; n];
            for i in 0..m {
                for j in 0..m {
                    full[i][j] = g[i][j].clone();
                    full[i + m][j + m] = g[i][j].conj();
                }
            }
            Ok(full)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolyVectorField {
    pub space: CoordinateSpace,
    /// One polynomial per variable; the field is Σ_i components[i] ∂_i.
    pub components: Vec<Poly>,
}

impl PolyVectorField {
    pub fn zero(space: CoordinateSpace) -> Self {
        PolyVectorField {
            space,
            components: vec![Poly::new(); space.num_vars()],
        }
    }

    /// The linear field with components (Mx)_i, i.e. Σ_{i,j} M[i][j] x_j ∂_i.
    /// The matrix covers all variables of the space.
    pub fn linear(space: CoordinateSpace, m: &[Vec<Scalar>]) -> Result<Self> {
        let d = space.num_vars();
        if m.len() != d || m.iter().any(|r| r.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: m.len(),
            });
        }
        let mut out = PolyVectorField::zero(space);
        for i in 0..d {
            for j in 0..d {
                if m[i][j].is_zero() {
                    continue;
                }
                let mut e = vec![0u32; d];
                e[j] = 1;
                out.components[i].insert(e, m[i][j].clone());
            }
        }
        Ok(out)
    }

    /// Apply the field as a derivation to a 0-form (ignores dx factors: use
    /// only on functions).
    pub fn apply_to_function(&self, f: &PolyForm) -> Result<PolyForm> {
        if self.space != f.space {
            return Err(Error::SpaceMismatch);
        }
        let mut out = PolyForm::zero(self.space);
        for ((e, idx), c) in &f.terms {
            debug_assert!(idx.is_empty());
            for (v, comp) in self.components.iter().enumerate() {
                if e[v] == 0 || comp.is_empty() {
                    continue;
                }
                let mut base = e.clone();
                base[v] -= 1;
                let scaled = c.mul(&Scalar::from_int(e[v] as i64));
                for (me, mc) in comp {
                    let exps: Exponents =
                        base.iter().zip(me).map(|(a, b)| a + b).collect();
                    out.add_term(exps, idx.clone(), scaled.mul(mc));
                }
            }
        }
        Ok(out)
    }
}

/// All monomial exponent vectors of total degree `n` in `d` variables, with
/// the earliest variable's exponent decreasing first (x1² before x1x2).
pub fn monomials_of_degree(d: usize, n: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; d];
    fn rec(pos: usize, rem: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if pos + 1 == cur.len() {
            cur[pos] = rem;
            out.push(cur.clone());
            return;
        }
        for e in (0..=rem).rev() {
            cur[pos] = e;
            rec(pos + 1, rem - e, cur, out);
        }
        cur[pos] = 0;
    }
    if d == 0 {
        if n == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(0, n, &mut cur, &mut out);
    out
}

fn increasing_tuples(d: usize, k: usize) -> Vec<FormIndices> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, d: usize, k: usize, cur: &mut FormIndices, out: &mut Vec<FormIndices>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(i + 1, d, k, cur, out);
            cur.pop();
        }
    }
    rec(0, d, k, &mut cur, &mut out);
    out
}

/// Ordered monomial basis of the (form degree k, internal degree n) piece.
/// Count is C(d, k)·C(n−k+d−1, d−1) for d variables; empty when k > d or
/// n < k.
pub fn graded_basis(space: CoordinateSpace, k: usize, n: usize) -> Vec<PolyForm> {
    let d = space.num_vars();
    if k > d || n < k {
        return Vec::new();
    }
    let mons = monomials_of_degree(d, (n - k) as u32);
    let mut out = Vec::new();
    for idx in increasing_tuples(d, k) {
        for e in &mons {
            out.push(PolyForm::monomial(space, e.clone(), idx.clone(), Scalar::one()));
        }
    }
    out
}

/// Position lookup for a monomial basis produced by `graded_basis`.
pub fn basis_index(
    basis: &[PolyForm],
) -> BTreeMap<(Exponents, FormIndices), usize> {
    let mut out = BTreeMap::new();
    for (i, f) in basis.iter().enumerate() {
        debug_assert_eq!(f.terms.len(), 1);
        let key = f.terms.keys().next().unwrap().clone();
        out.insert(key, i);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const R2: CoordinateSpace = CoordinateSpace::Real(2);

    fn dx(i: usize) -> PolyForm {
        PolyForm::d_var(R2, i)
    }

    fn x(i: usize) -> PolyForm {
        PolyForm::var(R2, i)
    }

    #[test]
    fn wedge_signs() {
        let a = dx(0).wedge(&dx(1)).unwrap();
        let b = dx(1).wedge(&dx(0)).unwrap();
        assert_eq!(a, b.neg());
        assert!(dx(0).wedge(&dx(0)).unwrap().is_zero());
        // (x1 dx2) ∧ (x2 dx1) = −x1x2 dx1∧dx2
        let lhs = x(0)
            .wedge(&dx(1))
            .unwrap()
            .wedge(&x(1).wedge(&dx(0)).unwrap())
            .unwrap();
        let rhs = PolyForm::monomial(R2, vec![1, 1], vec![0, 1], Scalar::from_int(-1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_rel_basics() {
        assert_eq!(x(0).d_rel(), dx(0));
        assert_eq!(x(0).wedge(&dx(1)).unwrap().d_rel(), dx(0).wedge(&dx(1)).unwrap());
        // d(x1x2 dx1) = −x1 dx1∧dx2
        let f = x(0).wedge(&x(1)).unwrap().wedge(&dx(0)).unwrap();
        let expect = PolyForm::monomial(R2, vec![1, 0], vec![0, 1], Scalar::from_int(-1));
        assert_eq!(f.d_rel(), expect);
    }

    #[test]
    fn contraction_examples() {
        // Y = 2x1∂1 + 2x2∂2, the twisted field for h = −I on R².
        let two = Scalar::from_int(2);
        let m = vec![
            vec![two.clone(), Scalar::zero()],
            vec![Scalar::zero(), two.clone()],
        ];
        let y = PolyVectorField::linear(R2, &m).unwrap();
        assert_eq!(
            dx(0).contract(&y).unwrap(),
            PolyForm::monomial(R2, vec![1, 0], vec![], two.clone())
        );
        let vol = dx(0).wedge(&dx(1)).unwrap();
        let mut expect = PolyForm::monomial(R2, vec![1, 0], vec![1], two.clone());
        expect.add_term(vec![0, 1], vec![0], two.neg());
        assert_eq!(vol.contract(&y).unwrap(), expect);
    }

    #[test]
    fn euler_contraction_kills_horizontal_witness() {
        // i_E(z̄ dz + z dz̄) = 0 for E = z∂_z − z̄∂_z̄ on one complex pair.
        let c1 = CoordinateSpace::ComplexPairs(1);
        let m = vec![
            vec![Scalar::one(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::from_int(-1)],
        ];
        let e = PolyVectorField::linear(c1, &m).unwrap();
        let mut form = PolyForm::monomial(c1, vec![0, 1], vec![0], Scalar::one());
        form.add_term(vec![1, 0], vec![1], Scalar::one());
        assert!(form.contract(&e).unwrap().is_zero());
    }

    #[test]
    fn pullback_examples() {
        let minus_i = vec![
            vec![Scalar::from_int(-1), Scalar::zero()],
            vec![Scalar::zero(), Scalar::from_int(-1)],
        ];
        assert_eq!(dx(0).pullback(&minus_i).unwrap(), dx(0).neg());
        let id = vec![
            vec![Scalar::one(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::one()],
        ];
        let f = x(0).wedge(&dx(1)).unwrap();
        assert_eq!(f.pullback(&id).unwrap(), f);
        // ζ3-scaling on one pair fixes z dz̄ (weight zero).
        let c1 = CoordinateSpace::ComplexPairs(1);
        let z3 = Scalar::root_of_unity(3, 1).unwrap();
        let g = vec![vec![z3]];
        let form = PolyForm::monomial(c1, vec![1, 0], vec![1], Scalar::one());
        assert_eq!(form.pullback(&g).unwrap(), form);
    }

    #[test]
    fn graded_basis_counts() {
        let b = graded_basis(R2, 1, 1);
        assert_eq!(b.len(), 2);
        assert_eq!(b[0], dx(0));
        assert_eq!(b[1], dx(1));
        let b2 = graded_basis(R2, 1, 2);
        assert_eq!(b2.len(), 4);
        assert_eq!(b2[0], x(0).wedge(&dx(0)).unwrap());
        assert_eq!(b2[1], x(1).wedge(&dx(0)).unwrap());
        assert_eq!(b2[2], x(0).wedge(&dx(1)).unwrap());
        assert_eq!(b2[3], x(1).wedge(&dx(1)).unwrap());
        assert!(graded_basis(R2, 3, 5).is_empty());
        // C(d,k)·C(n−k+d−1, d−1) for d=3, k=2, n=4: 3·C(4,2)=18.
        assert_eq!(graded_basis(CoordinateSpace::Real(3), 2, 4).len(), 18);
    }

    #[test]
    fn conjugation_swaps_pairs() {
        let c1 = CoordinateSpace::ComplexPairs(1);
        let z3 = Scalar::root_of_unity(3, 1).unwrap();
        let form = PolyForm::monomial(c1, vec![2, 0], vec![0], z3.clone());
        let expect = PolyForm::monomial(c1, vec![0, 2], vec![1], z3.conj());
        assert_eq!(form.conj(), expect);
        assert_eq!(form.conj().conj(), form);
    }
}
