//! Left Leibniz algebras given by structure constants, and their classical
//! invariants.
//!
//! A [`StructureTable`] is any bilinear product on `F^n`. Wrapping it in a
//! [`LeibnizAlgebra`] verifies the left Leibniz identity
//! `[[a,b],c] = [a,[b,c]] - [b,[a,c]]` on all basis triples, which by
//! trilinearity is enough to hold everywhere. Only checked algebras expose
//! the analysis operations.

use std::ops::Deref;

use crate::error::{check_dim, Error, Result};
use crate::fields::{Field, Scalar};
use crate::linalg::{Matrix, Subspace};

/// Bilinear product with `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureTable {
    field: Field,
    names: Vec<String>,
    c: Vec<Scalar>,
}

impl StructureTable {
    /// The zero product on `names.len()` basis vectors.
    pub fn zero(field: Field, names: Vec<String>) -> Self {
        let n = names.len();
        StructureTable {
            field,
            names,
            c: vec![field.zero(); n * n * n],
        }
    }

    /// Default basis labels `e1 .. en`.
    pub fn default_names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("e{i}")).collect()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let n = self.dim();
        &self.c[(i * n + j) * n + k]
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Scalar] {
        let n = self.dim();
        &self.c[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn set_bracket(&mut self, i: usize, j: usize, value: Vec<Scalar>) -> Result<()> {
        let n = self.dim();
        check_dim(n, value.len())?;
        if i >= n || j >= n {
            return Err(Error::Invalid(format!(
                "basis index ({i}, {j}) out of range"
            )));
        }
        if value.iter().any(|a| !self.field.contains(a)) {
            return Err(Error::MixedFields);
        }
        self.c[(i * n + j) * n..(i * n + j + 1) * n].clone_from_slice(&value);
        Ok(())
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    /// Bilinear extension: `sum_{i,j} x_i y_j [e_i, e_j]`.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.dim();
        check_dim(n, x.len())?;
        check_dim(n, y.len())?;
        let f = self.field;
        let mut out = vec![f.zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                let coeff = f.mul(xi, yj);
                for (acc, c) in out.iter_mut().zip(self.basis_bracket(i, j)) {
                    if !c.is_zero() {
                        *acc = f.add(acc, &f.mul(&coeff, c));
                    }
                }
            }
        }
        Ok(out)
    }

    fn bracket_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.bracket(x, y)
            .expect("vectors have the algebra dimension")
    }

    /// First basis triple (in lexicographic order) violating the left
    /// Leibniz identity, if any.
    pub fn check_left_leibniz(&self) -> std::result::Result<(), (usize, usize, usize)> {
        let n = self.dim();
        let f = self.field;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b, c) = (self.unit(i), self.unit(j), self.unit(k));
                    let lhs = self.bracket_unchecked(self.basis_bracket(i, j), &c);
                    let r1 = self.bracket_unchecked(&a, self.basis_bracket(j, k));
                    let r2 = self.bracket_unchecked(&b, self.basis_bracket(i, k));
                    let rhs: Vec<Scalar> = r1.iter().zip(&r2).map(|(x, y)| f.sub(x, y)).collect();
                    if lhs != rhs {
                        return Err((i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of `x -> [a, x]`.
    pub fn left_multiplication(&self, a: &[Scalar]) -> Result<Matrix> {
        let n = self.dim();
        check_dim(n, a.len())?;
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|j| self.bracket_unchecked(a, &self.unit(j)))
            .collect();
        Ok(Matrix::from_rows(self.field, n, cols)?.transpose())
    }

    /// Matrix of `x -> [x, a]`.
    pub fn right_multiplication(&self, a: &[Scalar]) -> Result<Matrix> {
        let n = self.dim();
        check_dim(n, a.len())?;
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|j| self.bracket_unchecked(&self.unit(j), a))
            .collect();
        Ok(Matrix::from_rows(self.field, n, cols)?.transpose())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `[x, y] = 0` for every `y`.
    Left,
    /// `[y, x] = 0` for every `y`.
    Right,
    TwoSided,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::Left, Side::Right, Side::TwoSided];

    pub fn name(&self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::TwoSided => "two_sided",
        }
    }
}

/// A structure table known to satisfy the left Leibniz identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeibnizAlgebra {
    table: StructureTable,
}

impl Deref for LeibnizAlgebra {
    type Target = StructureTable;

    fn deref(&self) -> &StructureTable {
        &self.table
    }
}

impl LeibnizAlgebra {
    pub fn new(table: StructureTable) -> Result<Self> {
        table
            .check_left_leibniz()
            .map_err(|(i, j, k)| Error::IdentityViolation(i, j, k))?;
        Ok(LeibnizAlgebra { table })
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    pub fn into_table(self) -> StructureTable {
        self.table
    }

    pub fn whole(&self) -> Subspace {
        Subspace::full(self.field(), self.dim())
    }

    /// `[x, x] = 0` for all `x`: every `[e_i, e_i]` vanishes and every pair
    /// `[e_i, e_j] + [e_j, e_i]` cancels.
    pub fn is_lie(&self) -> bool {
        let n = self.dim();
        let f = self.field();
        (0..n).all(|i| {
            self.basis_bracket(i, i).iter().all(Scalar::is_zero)
                && (i + 1..n).all(|j| {
                    self.basis_bracket(i, j)
                        .iter()
                        .zip(self.basis_bracket(j, i))
                        .all(|(a, b)| f.add(a, b).is_zero())
                })
        })
    }

    /// Span of all squares `[x, x]`, generated by `[e_i, e_i]` and
    /// `[e_i, e_j] + [e_j, e_i]` for `i < j`.
    pub fn leibniz_kernel(&self) -> Subspace {
        let n = self.dim();
        let f = self.field();
        let mut gens: Vec<Vec<Scalar>> =
            (0..n).map(|i| self.basis_bracket(i, i).to_vec()).collect();
        for i in 0..n {
            for j in i + 1..n {
                gens.push(
                    self.basis_bracket(i, j)
                        .iter()
                        .zip(self.basis_bracket(j, i))
                        .map(|(a, b)| f.add(a, b))
                        .collect(),
                );
            }
        }
        Subspace::span(f, n, gens).expect("generators have the algebra dimension")
    }

    fn stacked_kernel(&self, blocks: Vec<Matrix>) -> Subspace {
        let n = self.dim();
        let rows = blocks.iter().flat_map(|m| m.to_rows()).collect();
        Matrix::from_rows(self.field(), n, rows)
            .expect("multiplication matrices are n x n")
            .nullspace()
    }

    pub fn center(&self, side: Side) -> Subspace {
        let n = self.dim();
        let mut blocks = Vec::new();
        for j in 0..n {
            let e = self.unit(j);
            if matches!(side, Side::Left | Side::TwoSided) {
                blocks.push(self.right_multiplication(&e).expect("unit vector"));
            }
            if matches!(side, Side::Right | Side::TwoSided) {
                blocks.push(self.left_multiplication(&e).expect("unit vector"));
            }
        }
        self.stacked_kernel(blocks)
    }

    /// Left: `{x : [x, a] = 0}`. Right: `{x : [a, x] = 0}`.
    pub fn annihilator(&self, a: &[Scalar], side: Side) -> Result<Subspace> {
        check_dim(self.dim(), a.len())?;
        let mut blocks = Vec::new();
        if matches!(side, Side::Left | Side::TwoSided) {
            blocks.push(self.right_multiplication(a)?);
        }
        if matches!(side, Side::Right | Side::TwoSided) {
            blocks.push(self.left_multiplication(a)?);
        }
        Ok(self.stacked_kernel(blocks))
    }

    fn check_subspace(&self, s: &Subspace) -> Result<()> {
        if s.field() != self.field() {
            return Err(Error::MixedFields);
        }
        check_dim(self.dim(), s.ambient_dim())
    }

    /// `[S, T]`: span of brackets of basis vectors.
    pub fn product(&self, s: &Subspace, t: &Subspace) -> Result<Subspace> {
        self.check_subspace(s)?;
        self.check_subspace(t)?;
        let mut gens = Vec::with_capacity(s.dim() * t.dim());
        for x in s.basis() {
            for y in t.basis() {
                gens.push(self.bracket(x, y)?);
            }
        }
        Subspace::span(self.field(), self.dim(), gens)
    }

    /// `gamma_1 = L`, `gamma_{k+1} = [L, gamma_k]`, up to and including the
    /// first term that repeats.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let whole = self.whole();
        let mut series = vec![whole.clone()];
        loop {
            assert!(
                series.len() <= self.dim() + 2,
                "lower central series failed to stabilize"
            );
            let last = series.last().expect("nonempty");
            let next = self.product(&whole, last).expect("subspaces of L");
            if &next == last {
                return series;
            }
            series.push(next);
        }
    }

    /// Smallest `c` with `gamma_{c+1} = 0`, or `None` when the series
    /// stabilizes at a nonzero lower hypocenter.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let series = self.lower_central_series();
        let last = series.last().expect("nonempty");
        last.is_zero().then(|| series.len() - 1)
    }

    /// `zeta_0 = 0`, `zeta_{k+1} = {x : [x, L] + [L, x] in zeta_k}`, up to the
    /// upper hypercenter.
    pub fn upper_central_series(&self) -> Vec<Subspace> {
        let n = self.dim();
        let f = self.field();
        let mut series = vec![Subspace::zero(f, n)];
        loop {
            assert!(
                series.len() <= n + 2,
                "upper central series failed to stabilize"
            );
            let last = series.last().expect("nonempty");
            // Linear functionals vanishing exactly on zeta_k.
            let functionals = last.basis_matrix().nullspace_vectors();
            let mut rows = Vec::new();
            for j in 0..n {
                let e = self.unit(j);
                for m in [
                    self.right_multiplication(&e).expect("unit vector"),
                    self.left_multiplication(&e).expect("unit vector"),
                ] {
                    let mt = m.transpose();
                    for q in &functionals {
                        rows.push(mt.mul_vec(q).expect("functional has length n"));
                    }
                }
            }
            let next = Matrix::from_rows(f, n, rows)
                .expect("rows have length n")
                .nullspace();
            if &next == last {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
        let whole = self.whole();
        Ok(self.product(&whole, s)?.is_subspace_of(s)?
            && self.product(s, &whole)?.is_subspace_of(s)?)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool> {
        self.product(s, s)?.is_subspace_of(s)
    }

    pub fn is_abelian_subspace(&self, s: &Subspace) -> Result<bool> {
        Ok(self.product(s, s)?.is_zero())
    }

    /// `[L, L] = zeta(L)` and it is one-dimensional.
    pub fn is_extraspecial(&self) -> bool {
        let whole = self.whole();
        let derived = self.product(&whole, &whole).expect("subspaces of L");
        derived.dim() == 1 && derived == self.center(Side::TwoSided)
    }
}
