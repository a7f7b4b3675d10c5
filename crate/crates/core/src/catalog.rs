//! The three-dimensional nilpotent Leibniz algebras `Lei4(3, F)` and
//! `Lei5(3, F)`, a few reference algebras, and the named derivations
//! `z, w, u, v` used to describe their derivation algebras.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{LeibnizAlgebra, StructureTable};
use crate::error::{Error, Result};
use crate::fields::{Field, Scalar};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogKind {
    Lei4,
    Lei5,
    CyclicNilpotentDim2,
    Abelian,
    Heisenberg,
}

impl CatalogKind {
    pub const ALL: [CatalogKind; 5] = [
        CatalogKind::Lei4,
        CatalogKind::Lei5,
        CatalogKind::CyclicNilpotentDim2,
        CatalogKind::Abelian,
        CatalogKind::Heisenberg,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CatalogKind::Lei4 => "lei4",
            CatalogKind::Lei5 => "lei5",
            CatalogKind::CyclicNilpotentDim2 => "cyclic2",
            CatalogKind::Abelian => "abelian",
            CatalogKind::Heisenberg => "heisenberg",
        }
    }
}

impl fmt::Display for CatalogKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CatalogKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CatalogKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown catalog algebra {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub algebra: LeibnizAlgebra,
    pub kind: CatalogKind,
    pub lambda: Option<Scalar>,
    /// Lei4 only: `X^2 + lambda` has no root in the field.
    pub parameter_admissible: Option<bool>,
}

fn names(labels: &[&str]) -> Vec<String> {
    labels.iter().map(|s| s.to_string()).collect()
}

fn a3_multiple(f: Field, s: Scalar) -> Vec<Scalar> {
    vec![f.zero(), f.zero(), s]
}

fn check_lambda(field: Field, lambda: &Scalar) -> Result<()> {
    if !field.contains(lambda) {
        return Err(Error::MixedFields);
    }
    if lambda.is_zero() {
        return Err(Error::LambdaZero);
    }
    Ok(())
}

fn lei_table(field: Field, lambda: &Scalar, with_a1a2: bool) -> Result<StructureTable> {
    check_lambda(field, lambda)?;
    let mut t = StructureTable::zero(field, names(&["a1", "a2", "a3"]));
    t.set_bracket(0, 0, a3_multiple(field, field.one()))?;
    t.set_bracket(1, 1, a3_multiple(field, lambda.clone()))?;
    if with_a1a2 {
        t.set_bracket(0, 1, a3_multiple(field, field.one()))?;
    }
    Ok(t)
}

/// `[a1, a1] = a3`, `[a2, a2] = lambda a3`, all other brackets zero.
///
/// Inadmissible `lambda` still yields a valid Leibniz algebra; the entry
/// records admissibility separately.
pub fn lei4(field: Field, lambda: Scalar) -> Result<CatalogEntry> {
    let table = lei_table(field, &lambda, false)?;
    let admissible = lei4_param_admissible(field, &lambda)?;
    Ok(CatalogEntry {
        algebra: LeibnizAlgebra::new(table)?,
        kind: CatalogKind::Lei4,
        lambda: Some(lambda),
        parameter_admissible: Some(admissible),
    })
}

/// `[a1, a1] = [a1, a2] = a3`, `[a2, a2] = lambda a3`, all other brackets zero.
pub fn lei5(field: Field, lambda: Scalar) -> Result<CatalogEntry> {
    let table = lei_table(field, &lambda, true)?;
    Ok(CatalogEntry {
        algebra: LeibnizAlgebra::new(table)?,
        kind: CatalogKind::Lei5,
        lambda: Some(lambda),
        parameter_admissible: None,
    })
}

/// The nilpotent cyclic algebra `[b, b] = c`.
pub fn cyclic_nilpotent_dim2(field: Field) -> CatalogEntry {
    let mut t = StructureTable::zero(field, names(&["b", "c"]));
    t.set_bracket(0, 0, vec![field.zero(), field.one()])
        .expect("valid bracket");
    CatalogEntry {
        algebra: LeibnizAlgebra::new(t).expect("cyclic algebra is Leibniz"),
        kind: CatalogKind::CyclicNilpotentDim2,
        lambda: None,
        parameter_admissible: None,
    }
}

pub fn abelian(field: Field, n: usize) -> CatalogEntry {
    let t = StructureTable::zero(field, StructureTable::default_names(n));
    CatalogEntry {
        algebra: LeibnizAlgebra::new(t).expect("zero product is Leibniz"),
        kind: CatalogKind::Abelian,
        lambda: None,
        parameter_admissible: None,
    }
}

/// `[e1, e2] = e3 = -[e2, e1]`.
pub fn heisenberg(field: Field) -> CatalogEntry {
    let mut t = StructureTable::zero(field, StructureTable::default_names(3));
    t.set_bracket(0, 1, vec![field.zero(), field.zero(), field.one()])
        .expect("valid bracket");
    t.set_bracket(1, 0, vec![field.zero(), field.zero(), field.from_i64(-1)])
        .expect("valid bracket");
    CatalogEntry {
        algebra: LeibnizAlgebra::new(t).expect("Heisenberg algebra is Lie"),
        kind: CatalogKind::Heisenberg,
        lambda: None,
        parameter_admissible: None,
    }
}

/// `X^2 + lambda` has no root in `field`, i.e. `-lambda` is not a square.
pub fn lei4_param_admissible(field: Field, lambda: &Scalar) -> Result<bool> {
    check_lambda(field, lambda)?;
    Ok(field.sqrt(&field.neg(lambda)).is_none())
}

/// Builds any catalog algebra. `lambda` is required for Lei4/Lei5 and `dim`
/// for the abelian algebra; both are ignored elsewhere.
pub fn build(
    kind: CatalogKind,
    field: Field,
    lambda: Option<Scalar>,
    dim: Option<usize>,
) -> Result<CatalogEntry> {
    let need_lambda = || {
        lambda
            .clone()
            .ok_or_else(|| Error::Invalid(format!("{kind} requires lambda")))
    };
    match kind {
        CatalogKind::Lei4 => lei4(field, need_lambda()?),
        CatalogKind::Lei5 => lei5(field, need_lambda()?),
        CatalogKind::CyclicNilpotentDim2 => Ok(cyclic_nilpotent_dim2(field)),
        CatalogKind::Abelian => {
            let n = dim.ok_or_else(|| Error::Invalid("abelian requires a dimension".into()))?;
            Ok(abelian(field, n))
        }
        CatalogKind::Heisenberg => Ok(heisenberg(field)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedDerivation {
    pub name: &'static str,
    pub matrix: Matrix,
}

fn unit_map(field: Field, source: usize, target: usize) -> Matrix {
    // Column `source` holds the image of a_{source+1}.
    let mut m = Matrix::zeros(field, 3, 3);
    m.set(target, source, field.one());
    m
}

/// Named derivations describing `Der(Lei4)` and `Der(Lei5)`:
/// `z: a1 -> a3`, `w: a2 -> a3`, and in characteristic 2 also
/// `u: a1 -> a1` plus `v: a2 -> a2` (Lei4), or `u: a1 -> a1, a2 -> a2` (Lei5).
pub fn expected_der_basis(kind: CatalogKind, field: Field) -> Result<Vec<NamedDerivation>> {
    let z = NamedDerivation {
        name: "z",
        matrix: unit_map(field, 0, 2),
    };
    let w = NamedDerivation {
        name: "w",
        matrix: unit_map(field, 1, 2),
    };
    let char2 = field.characteristic() == 2;
    match kind {
        CatalogKind::Lei4 if char2 => Ok(vec![
            z,
            w,
            NamedDerivation {
                name: "u",
                matrix: unit_map(field, 0, 0),
            },
            NamedDerivation {
                name: "v",
                matrix: unit_map(field, 1, 1),
            },
        ]),
        CatalogKind::Lei5 if char2 => {
            let mut u = unit_map(field, 0, 0);
            u.set(1, 1, field.one());
            Ok(vec![
                z,
                w,
                NamedDerivation {
                    name: "u",
                    matrix: u,
                },
            ])
        }
        CatalogKind::Lei4 | CatalogKind::Lei5 => Ok(vec![z, w]),
        other => Err(Error::Invalid(format!("no named derivations for {other}"))),
    }
}

/// Recognizes the Lei4/Lei5 tables (basis `a1, a2, a3`) and returns the
/// kind together with `lambda = [a2, a2]_3`.
pub fn identify(algebra: &LeibnizAlgebra) -> Option<(CatalogKind, Scalar)> {
    if algebra.dim() != 3 {
        return None;
    }
    let f = algebra.field();
    let lambda = algebra.constant(1, 1, 2).clone();
    if lambda.is_zero() {
        return None;
    }
    [CatalogKind::Lei4, CatalogKind::Lei5]
        .into_iter()
        .find_map(|kind| {
            let t = lei_table(f, &lambda, kind == CatalogKind::Lei5).ok()?;
            (t == *algebra.table()).then(|| (kind, lambda.clone()))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lei4_admissibility() {
        let f3 = Field::Prime(3);
        assert_eq!(lei4(f3, f3.one()).unwrap().parameter_admissible, Some(true));
        let f5 = Field::Prime(5);
        assert_eq!(
            lei4(f5, f5.one()).unwrap().parameter_admissible,
            Some(false)
        );
        for f in [Field::Rationals, f3, Field::Prime(2)] {
            assert_eq!(lei4(f, f.zero()), Err(Error::LambdaZero));
            assert_eq!(lei5(f, f.zero()), Err(Error::LambdaZero));
            assert_eq!(lei4_param_admissible(f, &f.zero()), Err(Error::LambdaZero));
        }
    }

    #[test]
    fn admissibility_matches_root_search() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let f = Field::Prime(p);
            for lam in f.elements().skip(1) {
                let has_root = f.elements().any(|x| f.add(&f.mul(&x, &x), &lam).is_zero());
                assert_eq!(
                    lei4_param_admissible(f, &lam).unwrap(),
                    !has_root,
                    "p={p} lambda={lam}"
                );
            }
        }
        let q = Field::Rationals;
        assert!(lei4_param_admissible(q, &q.one()).unwrap());
        assert!(!lei4_param_admissible(q, &q.from_i64(-4)).unwrap());
        assert!(!lei4_param_admissible(Field::Prime(2), &Field::Prime(2).one()).unwrap());
    }

    #[test]
    fn lei5_brackets() {
        let f = Field::Prime(2);
        let l = lei5(f, f.one()).unwrap().algebra;
        assert_eq!(l.bracket(&l.unit(0), &l.unit(1)).unwrap(), l.unit(2));
        assert!(l
            .bracket(&l.unit(1), &l.unit(0))
            .unwrap()
            .iter()
            .all(Scalar::is_zero));
        let q = Field::Rationals;
        assert!(lei5(q, q.from_i64(2)).is_ok());
    }

    #[test]
    fn reference_algebras() {
        let q = Field::Rationals;
        let c = cyclic_nilpotent_dim2(q).algebra;
        let span_c = crate::linalg::Subspace::span(q, 2, vec![vec![q.zero(), q.one()]]).unwrap();
        assert_eq!(c.leibniz_kernel(), span_c);
        assert_eq!(c.center(crate::algebra::Side::TwoSided), span_c);
        assert_eq!(c.nilpotency_class(), Some(2));
        assert!(heisenberg(q).algebra.is_lie());
        assert_eq!(abelian(q, 4).algebra.dim(), 4);
    }

    #[test]
    fn expected_bases() {
        let f2 = Field::Prime(2);
        let b = expected_der_basis(CatalogKind::Lei4, f2).unwrap();
        assert_eq!(
            b.iter().map(|d| d.name).collect::<Vec<_>>(),
            ["z", "w", "u", "v"]
        );
        assert_eq!(
            b[0].matrix,
            Matrix::from_i64(f2, &[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]])
        );
        let b = expected_der_basis(CatalogKind::Lei5, f2).unwrap();
        assert_eq!(b.len(), 3);
        assert_eq!(
            b[2].matrix,
            Matrix::from_i64(f2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]])
        );
        let b = expected_der_basis(CatalogKind::Lei4, Field::Rationals).unwrap();
        assert_eq!(b.iter().map(|d| d.name).collect::<Vec<_>>(), ["z", "w"]);
        assert!(expected_der_basis(CatalogKind::Abelian, f2).is_err());
    }

    #[test]
    fn kind_names_round_trip() {
        for k in CatalogKind::ALL {
            assert_eq!(k.name().parse::<CatalogKind>().unwrap(), k);
        }
        assert!("lei6".parse::<CatalogKind>().is_err());
    }

    #[test]
    fn identify_catalog_tables() {
        let q = Field::Rationals;
        let l4 = lei4(q, q.from_i64(2)).unwrap().algebra;
        assert_eq!(identify(&l4), Some((CatalogKind::Lei4, q.from_i64(2))));
        let l5 = lei5(q, q.from_i64(-1)).unwrap().algebra;
        assert_eq!(identify(&l5), Some((CatalogKind::Lei5, q.from_i64(-1))));
        assert_eq!(identify(&heisenberg(q).algebra), None);
    }
}
