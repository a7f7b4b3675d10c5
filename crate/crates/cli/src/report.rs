//! Machine-readable reports. Every scalar is an exact decimal string
//! (`"3"`, `"-1/2"`) and matrices are lists of rows.

use leibniz::{Matrix, Scalar, Subspace};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    /// Input path, or the catalog name for `catalog`.
    pub input: String,
    pub field: String,
    pub dim: usize,
    pub results: Results,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Results {
    Validate(ValidateResults),
    Analyze(AnalyzeResults),
    Der(DerResults),
    Oracle(OracleResults),
    Catalog(CatalogResults),
}

pub type Vector = Vec<String>;
pub type Rows = Vec<Vec<String>>;

pub fn vector(v: &[Scalar]) -> Vector {
    v.iter().map(Scalar::to_string).collect()
}

pub fn rows(m: &Matrix) -> Rows {
    (0..m.rows()).map(|r| vector(m.row(r))).collect()
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SubspaceJson {
    pub dim: usize,
    /// Reduced row echelon basis.
    pub basis: Vec<Vector>,
}

impl From<&Subspace> for SubspaceJson {
    fn from(s: &Subspace) -> Self {
        SubspaceJson {
            dim: s.dim(),
            basis: s.basis().iter().map(|v| vector(v)).collect(),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ValidateResults {
    pub valid: bool,
    /// Basis names of the first failing triple `(x, y, z)`.
    pub violation: Option<[String; 3]>,
    pub is_lie: Option<bool>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct Centers {
    pub left: SubspaceJson,
    pub right: SubspaceJson,
    pub two_sided: SubspaceJson,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct AnalyzeResults {
    pub is_lie: bool,
    pub leibniz_kernel: SubspaceJson,
    pub derived: SubspaceJson,
    pub centers: Centers,
    pub lower_central_series: Vec<SubspaceJson>,
    pub upper_central_series: Vec<SubspaceJson>,
    pub nilpotency_class: Option<usize>,
    pub is_extraspecial: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct NamedDerivationJson {
    pub name: String,
    pub matrix: Rows,
    pub is_derivation: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct RelationJson {
    pub left: String,
    pub right: String,
    /// Coefficients of the commutator over the named derivations, in the
    /// order they are listed, or `None` if it leaves their span.
    pub coefficients: Option<Vector>,
    pub text: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct NamedSubspaceJson {
    pub name: String,
    pub members: Vec<String>,
    pub dim: usize,
    pub is_ideal: bool,
    pub is_subalgebra: bool,
    pub is_abelian: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct DirectSumJson {
    pub pairwise_trivial: bool,
    pub dims_total: usize,
    pub der_dim: usize,
    pub is_direct_sum: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct NamedSection {
    pub kind: String,
    pub lambda: String,
    pub derivations: Vec<NamedDerivationJson>,
    pub relations: Vec<RelationJson>,
    pub decomposition: Vec<NamedSubspaceJson>,
    pub direct_sum: Option<DirectSumJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct DerResults {
    pub dim_der: usize,
    /// Column `j` of each matrix is the image of the `j`-th basis vector.
    pub basis: Vec<Rows>,
    /// `lie_structure_constants[a][b][c]`: coefficient of `d_c` in `[d_a, d_b]`.
    pub lie_structure_constants: Vec<Vec<Vector>>,
    pub is_abelian: bool,
    /// In coordinates of `basis`.
    pub center: SubspaceJson,
    pub derived: SubspaceJson,
    pub named: Option<NamedSection>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CenterMatch {
    pub side: String,
    pub equal: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct OracleResults {
    pub derivation_count: u64,
    pub derivation_dim: Option<usize>,
    pub solver_dim: usize,
    pub spans_equal: bool,
    pub closed_under_addition: bool,
    pub derivations_match: bool,
    pub leibniz_kernel_match: bool,
    pub centers: Vec<CenterMatch>,
    pub left_annihilators_match: Vec<bool>,
    pub all_match: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CatalogResults {
    pub kind: String,
    pub lambda: Option<String>,
    pub parameter_admissible: Option<bool>,
    pub output: Option<String>,
    pub text: String,
}
