//! Brute-force ground truth over small prime fields.
//!
//! Everything here enumerates elements directly and evaluates brackets with
//! plain residue arithmetic, without going through the nullspace solver.
//! The results are then compared against the solver's answers.

use crate::algebra::{LeibnizAlgebra, Side};
use crate::derivations::{derivation_algebra, matrix_span, reshape};
use crate::error::{Error, Result};
use crate::fields::{Field, Scalar};
use crate::linalg::{Matrix, Subspace};

/// Candidate budget for derivation enumeration; GF(3) at n = 3 needs 3^9.
pub const DEFAULT_LIMIT: u64 = 2_000_000;

/// Vector budget for kernel, center and annihilator enumeration.
pub const VECTOR_LIMIT: u64 = 4096;

/// Structure constants reduced to residues mod `p`.
struct ResidueTable {
    p: u64,
    n: usize,
    c: Vec<u64>,
}

impl ResidueTable {
    fn new(algebra: &LeibnizAlgebra) -> Result<Self> {
        let Field::Prime(p) = algebra.field() else {
            return Err(Error::NotFiniteField);
        };
        let n = algebra.dim();
        let mut c = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    match algebra.constant(i, j, k) {
                        Scalar::Residue { value, .. } => c.push(*value),
                        Scalar::Rational(_) => return Err(Error::NotFiniteField),
                    }
                }
            }
        }
        Ok(ResidueTable { p, n, c })
    }

    fn bracket(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let n = self.n;
        let mut out = vec![0u64; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let xy = xi * yj % self.p;
                for (k, acc) in out.iter_mut().enumerate() {
                    *acc = (*acc + xy * self.c[(i * n + j) * n + k]) % self.p;
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.n];
        v[i] = 1;
        v
    }

    /// Images `f(e_j)` as columns of the row-major `entries`.
    fn apply(&self, entries: &[u64], x: &[u64]) -> Vec<u64> {
        let n = self.n;
        (0..n)
            .map(|r| (0..n).map(|c| entries[r * n + c] * x[c]).sum::<u64>() % self.p)
            .collect()
    }

    fn is_derivation(&self, entries: &[u64]) -> bool {
        let n = self.n;
        let images: Vec<Vec<u64>> = (0..n).map(|j| self.apply(entries, &self.unit(j))).collect();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = self.apply(entries, &self.bracket(&self.unit(i), &self.unit(j)));
                let a = self.bracket(&images[i], &self.unit(j));
                let b = self.bracket(&self.unit(i), &images[j]);
                lhs.iter()
                    .zip(a.iter().zip(&b))
                    .all(|(l, (x, y))| *l == (x + y) % self.p)
            })
        })
    }

    fn to_scalars(&self, v: &[u64]) -> Vec<Scalar> {
        v.iter()
            .map(|&value| Scalar::Residue {
                value,
                modulus: self.p,
            })
            .collect()
    }
}

/// Odometer over `F_p^len` with the first coordinate most significant, so
/// tuples come out in lexicographic order.
fn for_each_tuple(p: u64, len: usize, mut visit: impl FnMut(&[u64])) {
    let mut t = vec![0u64; len];
    loop {
        visit(&t);
        let mut pos = len;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            t[pos] += 1;
            if t[pos] < p {
                break;
            }
            t[pos] = 0;
        }
    }
}

fn guard(p: u64, exponent: usize, limit: u64) -> Result<()> {
    let size = u32::try_from(exponent).ok().and_then(|e| p.checked_pow(e));
    match size {
        Some(s) if s <= limit => Ok(()),
        Some(s) => Err(Error::SearchSpaceTooLarge {
            size: s.to_string(),
            limit,
        }),
        None => Err(Error::SearchSpaceTooLarge {
            size: format!("{p}^{exponent}"),
            limit,
        }),
    }
}

/// Every `n x n` matrix over GF(p) that is a derivation, in lexicographic
/// order of row-major entries.
pub fn enumerate_derivations(algebra: &LeibnizAlgebra, limit: u64) -> Result<Vec<Matrix>> {
    let t = ResidueTable::new(algebra)?;
    guard(t.p, t.n * t.n, limit)?;
    let mut found = Vec::new();
    for_each_tuple(t.p, t.n * t.n, |entries| {
        if t.is_derivation(entries) {
            found.push(reshape(algebra.field(), t.n, &t.to_scalars(entries)));
        }
    });
    Ok(found)
}

fn vectors_where(
    algebra: &LeibnizAlgebra,
    pred: impl Fn(&ResidueTable, &[u64]) -> bool,
) -> Result<Vec<Vec<Scalar>>> {
    let t = ResidueTable::new(algebra)?;
    guard(t.p, t.n, VECTOR_LIMIT)?;
    let mut out = Vec::new();
    for_each_tuple(t.p, t.n, |x| {
        if pred(&t, x) {
            out.push(t.to_scalars(x));
        }
    });
    Ok(out)
}

/// A set of vectors found by enumeration, with its span and whether the set
/// is itself that whole span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteSubspace {
    pub span: Subspace,
    pub count: u64,
    pub is_subspace: bool,
}

fn summarize(field: Field, n: usize, vectors: Vec<Vec<Scalar>>) -> Result<BruteSubspace> {
    let count = vectors.len() as u64;
    let span = Subspace::span(field, n, vectors)?;
    let expected = field.characteristic().checked_pow(span.dim() as u32);
    Ok(BruteSubspace {
        is_subspace: expected == Some(count),
        span,
        count,
    })
}

/// Span of `[x, x]` over every `x` in `GF(p)^n`.
pub fn leib_kernel_bruteforce(algebra: &LeibnizAlgebra) -> Result<Subspace> {
    let t = ResidueTable::new(algebra)?;
    guard(t.p, t.n, VECTOR_LIMIT)?;
    let mut squares = Vec::new();
    for_each_tuple(t.p, t.n, |x| squares.push(t.to_scalars(&t.bracket(x, x))));
    Subspace::span(algebra.field(), t.n, squares)
}

/// Center by testing every `x` against every `y`.
pub fn center_bruteforce(algebra: &LeibnizAlgebra, side: Side) -> Result<BruteSubspace> {
    let t = ResidueTable::new(algebra)?;
    guard(t.p, t.n, VECTOR_LIMIT)?;
    let mut ys = Vec::new();
    for_each_tuple(t.p, t.n, |y| ys.push(y.to_vec()));
    let kills = |x: &[u64], y: &[u64]| {
        let zero = |v: Vec<u64>| v.iter().all(|&c| c == 0);
        let left = !matches!(side, Side::Left | Side::TwoSided) || zero(t.bracket(x, y));
        let right = !matches!(side, Side::Right | Side::TwoSided) || zero(t.bracket(y, x));
        left && right
    };
    let members = vectors_where(algebra, |_, x| ys.iter().all(|y| kills(x, y)))?;
    summarize(algebra.field(), t.n, members)
}

/// `{x : [x, e_i] = 0}` by enumeration.
pub fn left_annihilator_bruteforce(algebra: &LeibnizAlgebra, i: usize) -> Result<BruteSubspace> {
    let n = algebra.dim();
    let members = vectors_where(algebra, |t, x| {
        t.bracket(x, &t.unit(i)).iter().all(|&c| c == 0)
    })?;
    summarize(algebra.field(), n, members)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideComparison {
    pub side: Side,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub algebra: String,
    pub field: Field,
    pub derivation_count: u64,
    /// `log_p(derivation_count)`, or `None` if the count is not a power of `p`.
    pub derivation_dim: Option<usize>,
    pub solver_dim: usize,
    pub spans_equal: bool,
    pub closed_under_addition: bool,
    /// Derivation dimensions and spans agree.
    pub matches: bool,
    pub leib_kernel: bool,
    pub centers: Vec<SideComparison>,
    /// One entry per basis vector `e_i`: left annihilators agree.
    pub annihilators: Vec<bool>,
}

impl OracleReport {
    pub fn all_match(&self) -> bool {
        self.matches
            && self.closed_under_addition
            && self.leib_kernel
            && self.centers.iter().all(|c| c.equal)
            && self.annihilators.iter().all(|&a| a)
    }
}

fn log_p(p: u64, count: u64) -> Option<usize> {
    let mut k = 0;
    let mut acc = 1u64;
    while acc < count {
        acc = acc.checked_mul(p)?;
        k += 1;
    }
    (acc == count).then_some(k)
}

/// Runs the solver and the brute-force oracle side by side.
pub fn compare(algebra: &LeibnizAlgebra, id: &str, limit: u64) -> Result<OracleReport> {
    let f = algebra.field();
    let Field::Prime(p) = f else {
        return Err(Error::NotFiniteField);
    };
    let n = algebra.dim();
    let brute = enumerate_derivations(algebra, limit)?;
    let solver = derivation_algebra(algebra)?;
    let count = brute.len() as u64;
    let derivation_dim = log_p(p, count);
    let brute_span = matrix_span(f, n, &brute)?;
    let spans_equal = brute_span == solver.span();

    // The enumerated set lies inside its span, so it is closed under linear
    // combinations exactly when it has p^dim(span) elements.
    let closed_under_addition = derivation_dim == Some(brute_span.dim());

    let centers = Side::ALL
        .iter()
        .map(|&side| {
            let b = center_bruteforce(algebra, side)?;
            Ok(SideComparison {
                side,
                equal: b.is_subspace && b.span == algebra.center(side),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let annihilators = (0..n)
        .map(|i| {
            let b = left_annihilator_bruteforce(algebra, i)?;
            Ok(b.is_subspace && b.span == algebra.annihilator(&algebra.unit(i), Side::Left)?)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(OracleReport {
        algebra: id.to_string(),
        field: f,
        derivation_count: count,
        derivation_dim,
        solver_dim: solver.dim(),
        spans_equal,
        closed_under_addition,
        matches: derivation_dim == Some(solver.dim()) && spans_equal,
        leib_kernel: leib_kernel_bruteforce(algebra)? == algebra.leibniz_kernel(),
        centers,
        annihilators,
    })
}
