//! Derivation algebras `Der(L)`.
//!
//! A linear map `f` is stored as its matrix with column `j` holding the
//! coordinates of `f(e_j)`, so the matrix of `f . g` is `M_f M_g`.
//! `Der(L)` is the kernel of the linear system obtained by writing
//! `f([e_i, e_j]) = [f(e_i), e_j] + [e_i, f(e_j)]` coordinate-wise in the
//! `n^2` unknown matrix entries.

use crate::algebra::{LeibnizAlgebra, StructureTable};
use crate::error::{check_dim, Error, Result};
use crate::fields::{Field, Scalar};
use crate::linalg::{Matrix, Subspace};

/// Row `(i, j, k)` sits at `(i n + j) n + k`; the unknown `D[r][c]` at
/// `r n + c`.
pub fn derivation_system(algebra: &StructureTable) -> Matrix {
    let n = algebra.dim();
    let f = algebra.field();
    let mut m = Matrix::zeros(f, n * n * n, n * n);
    let bump = |m: &mut Matrix, row: usize, var: usize, delta: &Scalar| {
        if !delta.is_zero() {
            let cur = f.add(m.get(row, var), delta);
            m.set(row, var, cur);
        }
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let row = (i * n + j) * n + k;
                for r in 0..n {
                    // [f(e_i), e_j]_k picks up D[r][i] c[r][j][k].
                    bump(&mut m, row, r * n + i, algebra.constant(r, j, k));
                    // [e_i, f(e_j)]_k picks up D[r][j] c[i][r][k].
                    bump(&mut m, row, r * n + j, algebra.constant(i, r, k));
                    // f([e_i, e_j])_k = sum_r c[i][j][r] D[k][r].
                    bump(&mut m, row, k * n + r, &f.neg(algebra.constant(i, j, r)));
                }
            }
        }
    }
    m
}

fn check_square(algebra: &StructureTable, d: &Matrix) -> Result<()> {
    if d.field() != algebra.field() {
        return Err(Error::MixedFields);
    }
    check_dim(algebra.dim(), d.rows())?;
    check_dim(algebra.dim(), d.cols())
}

/// First basis pair `(i, j)` where `d` fails the derivation rule.
pub fn derivation_violation(
    algebra: &StructureTable,
    d: &Matrix,
) -> Result<Option<(usize, usize)>> {
    check_square(algebra, d)?;
    let n = algebra.dim();
    let f = algebra.field();
    let images: Vec<Vec<Scalar>> = (0..n).map(|j| d.column(j)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = d.mul_vec(algebra.basis_bracket(i, j))?;
            let a = algebra.bracket(&images[i], &algebra.unit(j))?;
            let b = algebra.bracket(&algebra.unit(i), &images[j])?;
            let rhs: Vec<Scalar> = a.iter().zip(&b).map(|(x, y)| f.add(x, y)).collect();
            if lhs != rhs {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

pub fn is_derivation(algebra: &StructureTable, d: &Matrix) -> Result<bool> {
    Ok(derivation_violation(algebra, d)?.is_none())
}

/// Commutator `M1 M2 - M2 M1`.
pub fn der_bracket(d1: &Matrix, d2: &Matrix) -> Result<Matrix> {
    d1.mul(d2)?.sub(&d2.mul(d1)?)
}

pub(crate) fn reshape(field: Field, n: usize, flat: &[Scalar]) -> Matrix {
    Matrix::from_rows(
        field,
        n,
        flat.chunks(n.max(1))
            .take(n)
            .map(<[Scalar]>::to_vec)
            .collect(),
    )
    .expect("flat vector has n^2 entries")
}

/// Span of a family of `n x n` matrices as a subspace of `F^(n^2)`.
pub fn matrix_span(field: Field, n: usize, matrices: &[Matrix]) -> Result<Subspace> {
    for m in matrices {
        check_dim(n, m.rows())?;
        check_dim(n, m.cols())?;
    }
    Subspace::span(field, n * n, matrices.iter().map(|m| m.entries().to_vec()))
}

/// `d(S) <= S`.
pub fn preserves(d: &Matrix, s: &Subspace) -> Result<bool> {
    for v in s.basis() {
        if !s.contains(&d.mul_vec(v)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedSubspaceReport {
    pub name: String,
    pub dim: usize,
    pub is_ideal: bool,
    pub is_subalgebra: bool,
    pub is_abelian: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectSumCheck {
    pub pairwise_trivial: bool,
    pub dims_total: usize,
    pub algebra_dim: usize,
    /// The named subspaces are independent and together span the algebra.
    pub is_direct_sum: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerReport {
    pub dim: usize,
    pub is_abelian: bool,
    /// In coordinates of the derivation basis.
    pub center: Subspace,
    pub derived: Subspace,
    pub named: Vec<NamedSubspaceReport>,
    pub direct_sum: Option<DirectSumCheck>,
}

/// `Der(L)` with its Lie structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationAlgebra {
    pub algebra: LeibnizAlgebra,
    pub basis: Vec<Matrix>,
    /// `[d_a, d_b] = sum_c lie[a][b][c] d_c`, as a checked algebra.
    pub lie: LeibnizAlgebra,
    pub report: DerReport,
}

pub fn derivation_algebra(algebra: &LeibnizAlgebra) -> Result<DerivationAlgebra> {
    let n = algebra.dim();
    let f = algebra.field();
    let kernel = derivation_system(algebra).nullspace();
    let basis: Vec<Matrix> = kernel.basis().iter().map(|v| reshape(f, n, v)).collect();
    let m = basis.len();
    let flat = Matrix::from_rows(
        f,
        n * n,
        basis.iter().map(|d| d.entries().to_vec()).collect(),
    )?
    .transpose();

    let names = (1..=m).map(|i| format!("d{i}")).collect();
    let mut lie = StructureTable::zero(f, names);
    for a in 0..m {
        for b in 0..m {
            let commutator = der_bracket(&basis[a], &basis[b])?;
            let coords = flat.solve(commutator.entries())?.ok_or(Error::NotInSpan)?;
            lie.set_bracket(a, b, coords)?;
        }
    }
    let lie = LeibnizAlgebra::new(lie).map_err(|e| {
        Error::Invalid(format!(
            "induced bracket on Der(L) violates the Jacobi identity: {e}"
        ))
    })?;
    if !lie.is_lie() {
        return Err(Error::Invalid(
            "induced bracket on Der(L) is not anticommutative".into(),
        ));
    }
    let mut da = DerivationAlgebra {
        algebra: algebra.clone(),
        basis,
        report: empty_report(&lie),
        lie,
    };
    da.report = da.analyze(&[])?;
    Ok(da)
}

fn empty_report(lie: &LeibnizAlgebra) -> DerReport {
    DerReport {
        dim: lie.dim(),
        is_abelian: true,
        center: Subspace::zero(lie.field(), lie.dim()),
        derived: Subspace::zero(lie.field(), lie.dim()),
        named: Vec::new(),
        direct_sum: None,
    }
}

impl DerivationAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    /// All `n x n` matrices of the derivation space.
    pub fn span(&self) -> Subspace {
        matrix_span(self.field(), self.algebra.dim(), &self.basis).expect("basis is n x n")
    }

    /// Coefficients of `d` in the derivation basis.
    pub fn coords_in_basis(&self, d: &Matrix) -> Result<Vec<Scalar>> {
        check_square(&self.algebra, d)?;
        let f = self.field();
        let n2 = self.algebra.dim() * self.algebra.dim();
        let flat = Matrix::from_rows(
            f,
            n2,
            self.basis.iter().map(|b| b.entries().to_vec()).collect(),
        )?
        .transpose();
        flat.solve(d.entries())?.ok_or(Error::NotInSpan)
    }

    /// The matrix `sum_i coeffs[i] d_i`.
    pub fn combination(&self, coeffs: &[Scalar]) -> Result<Matrix> {
        check_dim(self.dim(), coeffs.len())?;
        let n = self.algebra.dim();
        let f = self.field();
        self.basis
            .iter()
            .zip(coeffs)
            .try_fold(Matrix::zeros(f, n, n), |acc, (b, c)| acc.add(&b.scale(c)))
    }

    /// Coordinates, in the derivation basis, of the span of `matrices`.
    pub fn subspace_of(&self, matrices: &[Matrix]) -> Result<Subspace> {
        let coords = matrices
            .iter()
            .map(|m| self.coords_in_basis(m))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(self.field(), self.dim(), coords)
    }

    /// Structural report on `Der(L)`, treating it as a Lie algebra through
    /// its induced structure constants. `named` subspaces are given in
    /// coordinates of the derivation basis.
    pub fn analyze(&self, named: &[(String, Subspace)]) -> Result<DerReport> {
        let lie = &self.lie;
        let whole = lie.whole();
        let derived = lie.product(&whole, &whole)?;
        let mut reports = Vec::with_capacity(named.len());
        for (name, s) in named {
            reports.push(NamedSubspaceReport {
                name: name.clone(),
                dim: s.dim(),
                is_ideal: lie.is_ideal(s)?,
                is_subalgebra: lie.is_subalgebra(s)?,
                is_abelian: lie.is_abelian_subspace(s)?,
            });
        }
        let direct_sum = if named.is_empty() {
            None
        } else {
            let mut pairwise_trivial = true;
            for (a, (_, s)) in named.iter().enumerate() {
                for (_, t) in &named[a + 1..] {
                    pairwise_trivial &= s.intersect(t)?.is_zero();
                }
            }
            let dims_total = named.iter().map(|(_, s)| s.dim()).sum();
            let mut sum = Subspace::zero(self.field(), self.dim());
            for (_, s) in named {
                sum = sum.sum(s)?;
            }
            Some(DirectSumCheck {
                pairwise_trivial,
                dims_total,
                algebra_dim: self.dim(),
                is_direct_sum: pairwise_trivial
                    && dims_total == self.dim()
                    && sum.dim() == self.dim(),
            })
        };
        Ok(DerReport {
            dim: self.dim(),
            is_abelian: derived.is_zero(),
            center: lie.center(crate::algebra::Side::TwoSided),
            derived,
            named: reports,
            direct_sum,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Side;
    use crate::catalog::{self, CatalogKind};
    use proptest::prelude::*;

    fn m(f: Field, rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(f, rows)
    }

    fn lei4(f: Field, lambda: i64) -> LeibnizAlgebra {
        catalog::lei4(f, f.from_i64(lambda)).unwrap().algebra
    }

    fn lei5(f: Field, lambda: i64) -> LeibnizAlgebra {
        catalog::lei5(f, f.from_i64(lambda)).unwrap().algebra
    }

    #[test]
    fn system_of_abelian_algebra_is_zero() {
        let f = Field::Rationals;
        let s = derivation_system(&catalog::abelian(f, 3).algebra);
        assert_eq!((s.rows(), s.cols()), (27, 9));
        assert!(s.is_zero());
        let s = derivation_system(&catalog::abelian(f, 1).algebra);
        assert_eq!(s, Matrix::zeros(f, 1, 1));
    }

    #[test]
    fn system_rows_match_direct_evaluation() {
        // Row (i, j, k) applied to vec(D) is coordinate k of
        // [D e_i, e_j] + [e_i, D e_j] - D [e_i, e_j].
        let f = Field::Rationals;
        let l = lei5(f, 2);
        let d = m(f, &[&[1, -2, 0], &[3, 0, 1], &[0, 5, -1]]);
        let lhs = derivation_system(&l).mul_vec(d.entries()).unwrap();
        let n = 3;
        for i in 0..n {
            for j in 0..n {
                let a = l.bracket(&d.column(i), &l.unit(j)).unwrap();
                let b = l.bracket(&l.unit(i), &d.column(j)).unwrap();
                let c = d.mul_vec(l.basis_bracket(i, j)).unwrap();
                for k in 0..n {
                    let expect = f.sub(&f.add(&a[k], &b[k]), &c[k]);
                    assert_eq!(lhs[(i * n + j) * n + k], expect);
                }
            }
        }
    }

    #[test]
    fn degenerate_dimensions() {
        let f = Field::Prime(3);
        let zero_alg = catalog::abelian(f, 0).algebra;
        let da = derivation_algebra(&zero_alg).unwrap();
        assert_eq!(da.dim(), 0);
        let one = derivation_algebra(&catalog::abelian(f, 1).algebra).unwrap();
        assert_eq!(one.dim(), 1);
        assert!(one.report.is_abelian);
    }

    #[test]
    fn named_maps_are_derivations() {
        let f2 = Field::Prime(2);
        let l = lei4(f2, 1);
        let z = m(f2, &[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]]);
        let u = m(f2, &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(derivation_violation(&l, &z).unwrap(), None);
        assert_eq!(derivation_violation(&l, &u).unwrap(), None);
        let q = Field::Rationals;
        let lq = lei4(q, 2);
        let uq = m(q, &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(derivation_violation(&lq, &uq).unwrap(), Some((0, 0)));
        assert!(is_derivation(&lq, &m(q, &[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]])).unwrap());
        assert!(derivation_violation(&lq, &Matrix::identity(q, 2)).is_err());
    }

    #[test]
    fn commutators_of_named_maps() {
        let f2 = Field::Prime(2);
        let z = m(f2, &[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]]);
        let u = m(f2, &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        let v = m(f2, &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
        assert!(der_bracket(&z, &z).unwrap().is_zero());
        assert_eq!(der_bracket(&u, &z).unwrap(), z.scale(&f2.from_i64(-1)));
        assert!(der_bracket(&v, &z).unwrap().is_zero());
        let q = Field::Rationals;
        let zq = m(q, &[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]]);
        let uq = m(q, &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(der_bracket(&uq, &zq).unwrap(), zq.scale(&q.from_i64(-1)));
    }

    #[test]
    fn coordinates_of_basis_and_commutators() {
        let f2 = Field::Prime(2);
        let da = derivation_algebra(&lei4(f2, 1)).unwrap();
        for (i, d) in da.basis.iter().enumerate() {
            let mut e = vec![f2.zero(); da.dim()];
            e[i] = f2.one();
            assert_eq!(da.coords_in_basis(d).unwrap(), e);
        }
        assert!(da
            .coords_in_basis(&Matrix::zeros(f2, 3, 3))
            .unwrap()
            .iter()
            .all(Scalar::is_zero));
        let named = catalog::expected_der_basis(CatalogKind::Lei4, f2).unwrap();
        let (z, w, u, v) = (
            &named[0].matrix,
            &named[1].matrix,
            &named[2].matrix,
            &named[3].matrix,
        );
        let coords = |d: &Matrix| da.coords_in_basis(d).unwrap();
        let minus = |d: &Matrix| d.scale(&f2.from_i64(-1));
        assert_eq!(coords(&der_bracket(u, z).unwrap()), coords(&minus(z)));
        assert_eq!(coords(&der_bracket(v, w).unwrap()), coords(&minus(w)));
        // u fixes a1 only, so u.w = w.u = 0.
        assert!(der_bracket(u, w).unwrap().is_zero());
        let l5 = derivation_algebra(&lei5(f2, 1)).unwrap();
        let named = catalog::expected_der_basis(CatalogKind::Lei5, f2).unwrap();
        let (w, u) = (&named[1].matrix, &named[2].matrix);
        assert_eq!(
            l5.coords_in_basis(&der_bracket(u, w).unwrap()).unwrap(),
            l5.coords_in_basis(&minus(w)).unwrap()
        );
        assert_eq!(
            da.coords_in_basis(&Matrix::identity(f2, 3)),
            Err(Error::NotInSpan)
        );
    }

    // The computed dimensions below were cross-checked by exhaustive
    // enumeration over GF(2), GF(3), GF(5) and symbolic elimination over Q.
    #[test]
    fn derivation_dimensions_of_catalog_algebras() {
        let q = Field::Rationals;
        assert_eq!(
            derivation_algebra(&lei4(Field::Prime(2), 1)).unwrap().dim(),
            5
        );
        assert_eq!(
            derivation_algebra(&lei5(Field::Prime(2), 1)).unwrap().dim(),
            4
        );
        for lam in [1, 2, -1] {
            assert_eq!(derivation_algebra(&lei4(q, lam)).unwrap().dim(), 4);
            assert_eq!(derivation_algebra(&lei5(q, lam)).unwrap().dim(), 4);
        }
        assert_eq!(
            derivation_algebra(&lei4(Field::Prime(3), 1)).unwrap().dim(),
            4
        );
        assert_eq!(
            derivation_algebra(&lei5(Field::Prime(5), 1)).unwrap().dim(),
            4
        );
        assert_eq!(
            derivation_algebra(&catalog::abelian(Field::Prime(2), 3).algebra)
                .unwrap()
                .dim(),
            9
        );
    }

    #[test]
    fn unlisted_derivations_of_lei4() {
        // f(a1) = a2, f(a2) = -lambda a1 and, off characteristic 2, the
        // grading a1, a2 -> a1/2, a2/2, a3 -> a3.
        let q = Field::Rationals;
        let l = lei4(q, 2);
        assert!(is_derivation(&l, &m(q, &[&[0, -2, 0], &[1, 0, 0], &[0, 0, 0]])).unwrap());
        let half = q.parse_scalar("1/2").unwrap();
        let mut grading = Matrix::identity(q, 3);
        grading.set(0, 0, half.clone());
        grading.set(1, 1, half);
        assert!(is_derivation(&l, &grading).unwrap());
        let da = derivation_algebra(&l).unwrap();
        assert!(da.coords_in_basis(&grading).is_ok());
        assert!(!da.report.is_abelian);
    }

    fn catalog_instances() -> Vec<LeibnizAlgebra> {
        let mut out = Vec::new();
        for f in [
            Field::Rationals,
            Field::Prime(2),
            Field::Prime(3),
            Field::Prime(5),
        ] {
            out.push(lei4(f, 1));
            out.push(lei5(f, 1));
            out.push(catalog::cyclic_nilpotent_dim2(f).algebra);
            out.push(catalog::heisenberg(f).algebra);
            out.push(catalog::abelian(f, 2).algebra);
        }
        out
    }

    #[test]
    fn basis_elements_are_derivations_and_close() {
        for l in catalog_instances() {
            let da = derivation_algebra(&l).unwrap();
            assert_eq!(da.span().dim(), da.dim());
            for d in &da.basis {
                assert!(is_derivation(&l, d).unwrap());
            }
            for a in &da.basis {
                for b in &da.basis {
                    assert!(da.coords_in_basis(&der_bracket(a, b).unwrap()).is_ok());
                }
            }
            assert!(da.lie.is_lie());
        }
    }

    #[test]
    fn derivations_preserve_centers_and_upper_series() {
        for l in catalog_instances() {
            let da = derivation_algebra(&l).unwrap();
            let mut invariant: Vec<Subspace> = Side::ALL.iter().map(|&s| l.center(s)).collect();
            invariant.extend(l.upper_central_series());
            for d in &da.basis {
                for s in &invariant {
                    assert!(preserves(d, s).unwrap());
                }
            }
        }
    }

    #[test]
    fn analyze_reports_named_subspaces() {
        let f2 = Field::Prime(2);
        let da = derivation_algebra(&lei4(f2, 1)).unwrap();
        let named = catalog::expected_der_basis(CatalogKind::Lei4, f2).unwrap();
        let wz = da
            .subspace_of(&[named[1].matrix.clone(), named[0].matrix.clone()])
            .unwrap();
        let uv = da
            .subspace_of(&[named[2].matrix.clone(), named[3].matrix.clone()])
            .unwrap();
        let report = da
            .analyze(&[("W+Z".to_string(), wz), ("U+V".to_string(), uv)])
            .unwrap();
        assert!(report.named[0].is_ideal && report.named[0].is_abelian);
        assert!(report.named[1].is_subalgebra && report.named[1].is_abelian);
        let ds = report.direct_sum.unwrap();
        assert!(ds.pairwise_trivial);
        assert_eq!((ds.dims_total, ds.algebra_dim), (4, 5));
        assert!(!ds.is_direct_sum);
        assert!(da
            .analyze(&[("bad".into(), Subspace::zero(f2, 2))])
            .is_err());
    }

    proptest! {
        #[test]
        fn derivations_form_a_subspace(seed in proptest::collection::vec(-4i64..5, 8)) {
            for l in [lei4(Field::Rationals, 2), lei5(Field::Prime(3), 1), catalog::heisenberg(Field::Rationals).algebra] {
                let da = derivation_algebra(&l).unwrap();
                let f = l.field();
                let coeffs: Vec<Scalar> = (0..da.dim()).map(|i| f.from_i64(seed[i % seed.len()])).collect();
                let d = da.combination(&coeffs).unwrap();
                prop_assert!(is_derivation(&l, &d).unwrap());
                prop_assert_eq!(da.coords_in_basis(&d).unwrap(), coeffs);
            }
        }
    }
}
