//! Dense exact linear algebra: row reduction, nullspaces, linear solves and
//! subspaces kept in canonical reduced row echelon form.

use std::fmt;

use crate::error::{check_dim, Error, Result};
use crate::fields::{Field, Scalar};

/// A dense row-major matrix over a [`Field`]. Zero-sized shapes are legal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Same shape as the input; rows past `rank` are zero.
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows, checking that every row has `cols` entries
    /// belonging to `field`.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            check_dim(cols, row.len())?;
            if row.iter().any(|a| !field.contains(a)) {
                return Err(Error::MixedFields);
            }
            data.extend(row);
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    /// Convenience constructor from integer entries; all rows must have
    /// equal length.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, cols, rows).expect("ragged integer matrix")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert!(self.field.contains(&v));
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        check_dim(self.rows, other.rows)?;
        check_dim(self.cols, other.cols)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let f = self.field;
        Ok(Matrix {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f.add(a, b))
                .collect(),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let f = self.field;
        Ok(Matrix {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f.sub(a, b))
                .collect(),
            ..self.clone()
        })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let f = self.field;
        Matrix {
            data: self.data.iter().map(|a| f.mul(s, a)).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        check_dim(self.cols, other.rows)?;
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let prod = f.mul(a, other.get(k, c));
                    let cur = f.add(out.get(r, c), &prod);
                    out.set(r, c, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        check_dim(self.cols, v.len())?;
        let f = self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    /// Reduced row echelon form by Gauss-Jordan elimination. The pivot in
    /// each column is the first row at or below the current one with a
    /// nonzero entry.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut rows = self.to_rows();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let inv = f.inv(&rows[rank][col]).expect("pivot is nonzero");
            for x in rows[rank].iter_mut() {
                *x = f.mul(x, &inv);
            }
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == rank || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x = f.sub(x, &f.mul(&factor, p));
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        Rref {
            matrix: Matrix {
                field: f,
                rows: self.rows,
                cols: self.cols,
                data: rows.into_iter().flatten().collect(),
            },
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Kernel vectors listed one per free column, in increasing column
    /// order, each with that free variable set to 1 and the others to 0.
    pub fn nullspace_vectors(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let Rref {
            matrix,
            rank,
            pivots,
        } = self.rref();
        let free = (0..self.cols).filter(|c| !pivots.contains(c));
        free.map(|fc| {
            let mut v = vec![f.zero(); self.cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate().take(rank) {
                v[pc] = f.neg(matrix.get(r, fc));
            }
            v
        })
        .collect()
    }

    /// `{ v : M v = 0 }` as a canonical subspace of `F^cols`.
    pub fn nullspace(&self) -> Subspace {
        Subspace::span(self.field, self.cols, self.nullspace_vectors())
            .expect("kernel vectors have the ambient length")
    }

    /// A solution of `M x = b` with free variables set to zero, or `None`
    /// when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        check_dim(self.rows, b.len())?;
        if b.iter().any(|x| !self.field.contains(x)) {
            return Err(Error::MixedFields);
        }
        let f = self.field;
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for (r, br) in b.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, br.clone());
        }
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for r in 0..self.rows {
            write!(f, "(")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[r * self.cols + c])?;
            }
            writeln!(f, ")")?;
        }
        Ok(())
    }
}

/// A subspace of `F^n`, stored as the nonzero rows of its reduced row
/// echelon basis. Two equal subspaces always have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Self::from_basis_matrix(&Matrix::identity(field, ambient))
    }

    pub fn span<I>(field: Field, ambient: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let m = Matrix::from_rows(field, ambient, vectors.into_iter().collect())?;
        Ok(Self::from_basis_matrix(&m))
    }

    /// Row space of `m`.
    pub fn from_basis_matrix(m: &Matrix) -> Self {
        let Rref { matrix, rank, .. } = m.rref();
        Subspace {
            field: m.field(),
            ambient: m.cols(),
            basis: (0..rank).map(|r| matrix.row(r).to_vec()).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.ambient, self.basis.clone())
            .expect("basis rows have ambient length")
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        check_dim(self.ambient, other.ambient)
    }

    /// Membership by rank comparison.
    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        check_dim(self.ambient, v.len())?;
        let extended = Subspace::span(
            self.field,
            self.ambient,
            self.basis
                .iter()
                .cloned()
                .chain(std::iter::once(v.to_vec())),
        )?;
        Ok(extended.dim() == self.dim())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        for v in &self.basis {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Subspace::span(
            self.field,
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    /// Solves `S^T a = T^T b` and maps each solution back through `S^T`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let f = self.field;
        let (s, t) = (self.dim(), other.dim());
        let mut m = Matrix::zeros(f, self.ambient, s + t);
        for (j, v) in self.basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        for (j, v) in other.basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m.set(i, s + j, f.neg(x));
            }
        }
        let vectors = m.nullspace_vectors().into_iter().map(|coeffs| {
            let mut v = vec![f.zero(); self.ambient];
            for (a, row) in coeffs.iter().take(s).zip(&self.basis) {
                for (acc, x) in v.iter_mut().zip(row) {
                    *acc = f.add(acc, &f.mul(a, x));
                }
            }
            v
        });
        Subspace::span(f, self.ambient, vectors)
    }

    /// Coordinates of `v` with respect to the stored basis, if `v` lies in
    /// the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        check_dim(self.ambient, v.len())?;
        self.basis_matrix().transpose().solve(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vecq(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Field::Rationals.from_i64(x)).collect()
    }

    fn vecp(p: u64, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Field::Prime(p).from_i64(x)).collect()
    }

    #[test]
    fn rref_identity() {
        let id = Matrix::identity(Field::Rationals, 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_rank_one_rational() {
        let m = Matrix::from_i64(Field::Rationals, &[&[2, 4], &[1, 2]]);
        let r = m.rref();
        assert_eq!(
            r.matrix,
            Matrix::from_i64(Field::Rationals, &[&[1, 2], &[0, 0]])
        );
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rref_rank_one_gf2() {
        let m = Matrix::from_i64(Field::Prime(2), &[&[1, 1], &[1, 1]]);
        let r = m.rref();
        assert_eq!((r.rank, r.pivots), (1, vec![0]));
    }

    #[test]
    fn empty_matrices() {
        let m = Matrix::zeros(Field::Rationals, 0, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.nullspace().dim(), 3);
        let m = Matrix::zeros(Field::Rationals, 2, 0);
        assert_eq!(m.nullspace().dim(), 0);
        assert_eq!(m.solve(&vecq(&[0, 0])).unwrap(), Some(vec![]));
        assert_eq!(m.solve(&vecq(&[0, 1])).unwrap(), None);
    }

    #[test]
    fn nullspace_examples() {
        let id = Matrix::identity(Field::Rationals, 4);
        assert!(id.nullspace().is_zero());
        assert_eq!(Matrix::zeros(Field::Rationals, 2, 3).nullspace().dim(), 3);
    }

    #[test]
    fn nullspace_gf2_matches_enumeration() {
        let f = Field::Prime(2);
        let m = Matrix::from_i64(f, &[&[1, 1, 0]]);
        let ns = m.nullspace();
        let mut members = 0;
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let v = vecp(2, &[a, b, c]);
                    let in_kernel = m.mul_vec(&v).unwrap().iter().all(Scalar::is_zero);
                    assert_eq!(ns.contains(&v).unwrap(), in_kernel);
                    members += in_kernel as usize;
                }
            }
        }
        assert_eq!(members, 4);
        assert_eq!(ns.dim(), 2);
        assert!(ns.contains(&vecp(2, &[1, 1, 0])).unwrap());
        assert!(ns.contains(&vecp(2, &[0, 0, 1])).unwrap());
    }

    #[test]
    fn nullspace_vector_order() {
        let m = Matrix::from_i64(Field::Rationals, &[&[1, 2, 0, 3]]);
        assert_eq!(
            m.nullspace_vectors(),
            vec![
                vecq(&[-2, 1, 0, 0]),
                vecq(&[0, 0, 1, 0]),
                vecq(&[-3, 0, 0, 1])
            ]
        );
    }

    #[test]
    fn solve_examples() {
        let f = Field::Rationals;
        let b = vecq(&[3, -1, 7]);
        assert_eq!(Matrix::identity(f, 3).solve(&b).unwrap(), Some(b));
        let m = Matrix::from_i64(f, &[&[1, 0], &[0, 0]]);
        assert_eq!(m.solve(&vecq(&[0, 1])).unwrap(), None);
        let g = Field::Prime(2);
        let m = Matrix::from_i64(g, &[&[1, 1]]);
        let x = m.solve(&vecp(2, &[1])).unwrap().unwrap();
        assert_eq!(x, vecp(2, &[1, 0]));
        assert_eq!(m.mul_vec(&x).unwrap(), vecp(2, &[1]));
        assert!(matches!(
            m.solve(&vecp(2, &[1, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn subspace_examples() {
        let f = Field::Rationals;
        let s = Subspace::span(f, 3, vec![vecq(&[1, 0, 0])]).unwrap();
        let t = Subspace::span(f, 3, vec![vecq(&[0, 1, 0])]).unwrap();
        assert_eq!(s.sum(&t).unwrap().dim(), 2);
        let plane = Subspace::full(f, 2);
        let diag = Subspace::span(f, 2, vec![vecq(&[1, 1])]).unwrap();
        assert_eq!(plane.intersect(&diag).unwrap(), diag);
        let line = Subspace::span(f, 2, vec![vecq(&[1, 2])]).unwrap();
        assert!(line.contains(&vecq(&[2, 4])).unwrap());
        assert!(!line.contains(&vecq(&[2, 3])).unwrap());
        assert!(matches!(s.sum(&line), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn coordinates_in_basis() {
        let f = Field::Rationals;
        let s = Subspace::span(f, 3, vec![vecq(&[1, 0, 2]), vecq(&[0, 1, 1])]).unwrap();
        assert_eq!(
            s.coordinates(&vecq(&[2, 3, 7])).unwrap(),
            Some(vecq(&[2, 3]))
        );
        assert_eq!(s.coordinates(&vecq(&[0, 0, 1])).unwrap(), None);
    }

    #[test]
    fn small_field_membership_agrees_with_enumeration() {
        for p in [2u64, 3] {
            let f = Field::Prime(p);
            let s = Subspace::span(f, 3, vec![vecp(p, &[1, 2, 0]), vecp(p, &[0, 1, 1])]).unwrap();
            let mut count = 0;
            for a in 0..p as i64 {
                for b in 0..p as i64 {
                    for c in 0..p as i64 {
                        let v = vecp(p, &[a, b, c]);
                        // Brute-force membership: v is some combination x*g1 + y*g2.
                        let brute = (0..p as i64)
                            .any(|x| (0..p as i64).any(|y| v == vecp(p, &[x, 2 * x + y, y])));
                        assert_eq!(s.contains(&v).unwrap(), brute);
                        count += brute as u64;
                    }
                }
            }
            assert_eq!(count, p * p);
        }
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |xs| {
                let f = Field::Rationals;
                let rows = xs
                    .chunks(c.max(1))
                    .take(r)
                    .map(|ch| ch.iter().map(|&x| f.from_i64(x)).collect())
                    .collect();
                if c == 0 {
                    Matrix::zeros(f, r, 0)
                } else {
                    Matrix::from_rows(f, c, rows).unwrap()
                }
            })
        })
    }

    fn gf3_vectors(n: usize, k: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
        proptest::collection::vec(proptest::collection::vec(0i64..3, n), 0..=k)
            .prop_map(|vs| vs.iter().map(|v| vecp(3, v)).collect())
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let ns = m.nullspace();
            prop_assert_eq!(m.rank() + ns.dim(), m.cols());
            for v in ns.basis() {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn modular_law(a in gf3_vectors(4, 3), b in gf3_vectors(4, 3)) {
            let f = Field::Prime(3);
            let s = Subspace::span(f, 4, a).unwrap();
            let t = Subspace::span(f, 4, b).unwrap();
            let sum = s.sum(&t).unwrap();
            let int = s.intersect(&t).unwrap();
            prop_assert_eq!(s.dim() + t.dim(), sum.dim() + int.dim());
            prop_assert!(int.is_subspace_of(&s).unwrap());
            prop_assert!(int.is_subspace_of(&t).unwrap());
        }

        #[test]
        fn span_is_canonical(vs in gf3_vectors(3, 4), scale in 1i64..3, rot in 0usize..4) {
            let f = Field::Prime(3);
            let s = Subspace::span(f, 3, vs.clone()).unwrap();
            let mut permuted: Vec<Vec<Scalar>> = vs
                .iter()
                .map(|v| v.iter().map(|x| f.mul(x, &f.from_i64(scale))).collect())
                .collect();
            if !permuted.is_empty() {
                let k = rot % permuted.len();
                permuted.rotate_left(k);
            }
            prop_assert_eq!(Subspace::span(f, 3, permuted).unwrap(), s);
        }

        #[test]
        fn solve_is_sound(m in small_matrix(), seed in proptest::collection::vec(-3i64..4, 4)) {
            let f = Field::Rationals;
            let x: Vec<Scalar> = (0..m.cols()).map(|i| f.from_i64(seed[i % seed.len()])).collect();
            let b = m.mul_vec(&x).unwrap();
            let sol = m.solve(&b).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&sol).unwrap(), b);
        }
    }
}
