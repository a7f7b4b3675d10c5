use std::fmt::Write as _;

use leibniz::catalog::{self, CatalogKind, NamedDerivation};
use leibniz::derivations::{der_bracket, derivation_algebra, DerivationAlgebra};
use leibniz::{oracle, Field, LeibnizAlgebra, Matrix, Scalar, Side, StructureTable, Subspace};

use crate::format::{format_combination, write_algebra};
use crate::report::*;

/// A finished command: its report, the human rendering, and whether it
/// counts as a validation failure (exit code 1).
pub struct Output {
    pub report: Report,
    pub human: String,
    pub failed: bool,
}

fn report(command: &str, input: &str, table: &StructureTable, results: Results) -> Report {
    Report {
        command: command.into(),
        input: input.into(),
        field: table.field().to_string(),
        dim: table.dim(),
        results,
    }
}

fn span_text(names: &[String], s: &Subspace) -> String {
    let vs: Vec<String> = s
        .basis()
        .iter()
        .map(|v| format_combination(names, v))
        .collect();
    format!("dim {}, span{{{}}}", s.dim(), vs.join(", "))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn indented(m: &Matrix, pad: &str) -> String {
    m.to_string()
        .lines()
        .map(|l| format!("{pad}{l}\n"))
        .collect()
}

pub fn validate(input: &str, table: &StructureTable) -> Output {
    let violation = table.check_left_leibniz().err().map(|(i, j, k)| {
        let n = table.names();
        [n[i].clone(), n[j].clone(), n[k].clone()]
    });
    let valid = violation.is_none();
    let is_lie = valid.then(|| LeibnizAlgebra::new(table.clone()).unwrap().is_lie());
    let human = match (&violation, is_lie) {
        (Some([x, y, z]), _) => {
            format!("invalid: [[{x},{y}],{z}] != [{x},[{y},{z}]] - [{y},[{x},{z}]]\n")
        }
        (None, lie) => format!(
            "valid left Leibniz algebra over {}, dim {}{}\n",
            table.field(),
            table.dim(),
            if lie == Some(true) { " (Lie)" } else { "" }
        ),
    };
    let results = Results::Validate(ValidateResults {
        valid,
        violation,
        is_lie,
    });
    Output {
        report: report("validate", input, table, results),
        human,
        failed: !valid,
    }
}

pub fn analyze(input: &str, alg: &LeibnizAlgebra) -> Output {
    let names = alg.names();
    let whole = alg.whole();
    let kernel = alg.leibniz_kernel();
    let derived = alg.product(&whole, &whole).expect("same ambient space");
    let [left, right, two_sided] = Side::ALL.map(|s| alg.center(s));
    let lower = alg.lower_central_series();
    let upper = alg.upper_central_series();
    let class = alg.nilpotency_class();

    let mut h = String::new();
    writeln!(h, "algebra over {}, dim {}", alg.field(), alg.dim()).unwrap();
    writeln!(h, "Lie algebra: {}", yes_no(alg.is_lie())).unwrap();
    writeln!(h, "Leibniz kernel: {}", span_text(names, &kernel)).unwrap();
    writeln!(h, "[L,L]: {}", span_text(names, &derived)).unwrap();
    for (side, c) in Side::ALL.iter().zip([&left, &right, &two_sided]) {
        writeln!(h, "{} center: {}", side.name(), span_text(names, c)).unwrap();
    }
    let dims = |s: &[Subspace], sep: &str| {
        s.iter()
            .map(|x| x.dim().to_string())
            .collect::<Vec<_>>()
            .join(sep)
    };
    writeln!(h, "lower central series dims: {}", dims(&lower, " > ")).unwrap();
    writeln!(h, "upper central series dims: {}", dims(&upper, " < ")).unwrap();
    match class {
        Some(c) => writeln!(h, "nilpotency class: {c}").unwrap(),
        None => writeln!(h, "nilpotency class: not nilpotent").unwrap(),
    }
    writeln!(h, "extraspecial: {}", yes_no(alg.is_extraspecial())).unwrap();

    let results = Results::Analyze(AnalyzeResults {
        is_lie: alg.is_lie(),
        leibniz_kernel: (&kernel).into(),
        derived: (&derived).into(),
        centers: Centers {
            left: (&left).into(),
            right: (&right).into(),
            two_sided: (&two_sided).into(),
        },
        lower_central_series: lower.iter().map(Into::into).collect(),
        upper_central_series: upper.iter().map(Into::into).collect(),
        nilpotency_class: class,
        is_extraspecial: alg.is_extraspecial(),
    });
    Output {
        report: report("analyze", input, alg, results),
        human: h,
        failed: false,
    }
}

/// Expresses `m` over the named matrices, if it lies in their span.
fn named_coordinates(field: Field, named: &[&NamedDerivation], m: &Matrix) -> Option<Vec<Scalar>> {
    let cols: Vec<&[Scalar]> = named.iter().map(|d| d.matrix.entries()).collect();
    let len = m.entries().len();
    let system = Matrix::from_rows(
        field,
        cols.len(),
        (0..len)
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect(),
    )
    .ok()?;
    system.solve(m.entries()).ok().flatten()
}

fn named_section(
    da: &DerivationAlgebra,
    kind: CatalogKind,
    lambda: &Scalar,
    h: &mut String,
) -> NamedSection {
    let f = da.field();
    let all = catalog::expected_der_basis(kind, f).expect("Lei4/Lei5 have named derivations");
    let members: Vec<&NamedDerivation> = all
        .iter()
        .filter(|d| da.coords_in_basis(&d.matrix).is_ok())
        .collect();
    let member_names: Vec<String> = members.iter().map(|d| d.name.to_string()).collect();

    writeln!(h, "\nnamed derivations ({kind}, lambda = {lambda}):").unwrap();
    let derivations = all
        .iter()
        .map(|d| {
            let is_derivation = members.iter().any(|m| m.name == d.name);
            writeln!(
                h,
                "  {} ({}a derivation):",
                d.name,
                if is_derivation { "" } else { "not " }
            )
            .unwrap();
            h.push_str(&indented(&d.matrix, "    "));
            NamedDerivationJson {
                name: d.name.into(),
                matrix: rows(&d.matrix),
                is_derivation,
            }
        })
        .collect();

    writeln!(h, "relations:").unwrap();
    let mut relations = Vec::new();
    for (a, x) in members.iter().enumerate() {
        for y in &members[..a] {
            let b = der_bracket(&x.matrix, &y.matrix).expect("square matrices");
            let coefficients = named_coordinates(f, &members, &b);
            let rhs = match &coefficients {
                Some(c) => format_combination(&member_names, c),
                None => "outside the named span".into(),
            };
            let text = format!("[{}, {}] = {rhs}", x.name, y.name);
            writeln!(h, "  {text}").unwrap();
            relations.push(RelationJson {
                left: x.name.into(),
                right: y.name.into(),
                coefficients: coefficients.as_deref().map(vector),
                text,
            });
        }
    }

    // W+Z is always named; in characteristic 2 the remaining named
    // derivations form the complementary piece.
    let mut groups: Vec<(String, Vec<&NamedDerivation>)> = Vec::new();
    let (wz, rest): (Vec<_>, Vec<_>) = members.iter().partition(|d| matches!(d.name, "w" | "z"));
    if !wz.is_empty() {
        groups.push(("W+Z".into(), wz));
    }
    if !rest.is_empty() {
        let label = rest
            .iter()
            .map(|d| d.name.to_uppercase())
            .collect::<Vec<_>>()
            .join("+");
        groups.push((label, rest));
    }
    let subspaces: Vec<(String, Subspace)> = groups
        .iter()
        .map(|(name, ds)| {
            let ms: Vec<Matrix> = ds.iter().map(|d| d.matrix.clone()).collect();
            (
                name.clone(),
                da.subspace_of(&ms).expect("members are derivations"),
            )
        })
        .collect();
    let analysis = da.analyze(&subspaces).expect("subspaces of Der");

    writeln!(h, "decomposition:").unwrap();
    let decomposition = analysis
        .named
        .iter()
        .zip(&groups)
        .map(|(r, (_, ds))| {
            writeln!(
                h,
                "  {}: dim {}, ideal {}, subalgebra {}, abelian {}",
                r.name,
                r.dim,
                yes_no(r.is_ideal),
                yes_no(r.is_subalgebra),
                yes_no(r.is_abelian)
            )
            .unwrap();
            NamedSubspaceJson {
                name: r.name.clone(),
                members: ds.iter().map(|d| d.name.to_string()).collect(),
                dim: r.dim,
                is_ideal: r.is_ideal,
                is_subalgebra: r.is_subalgebra,
                is_abelian: r.is_abelian,
            }
        })
        .collect();
    let direct_sum = analysis.direct_sum.map(|d| {
        writeln!(
            h,
            "  direct sum equals Der: {} (pairwise trivial: {}, dims {} of {})",
            yes_no(d.is_direct_sum),
            yes_no(d.pairwise_trivial),
            d.dims_total,
            d.algebra_dim
        )
        .unwrap();
        DirectSumJson {
            pairwise_trivial: d.pairwise_trivial,
            dims_total: d.dims_total,
            der_dim: d.algebra_dim,
            is_direct_sum: d.is_direct_sum,
        }
    });

    NamedSection {
        kind: kind.to_string(),
        lambda: lambda.to_string(),
        derivations,
        relations,
        decomposition,
        direct_sum,
    }
}

pub fn der(input: &str, alg: &LeibnizAlgebra) -> leibniz::Result<Output> {
    let da = derivation_algebra(alg)?;
    let m = da.dim();
    let d_names = da.lie.names().to_vec();
    let mut h = String::new();
    writeln!(h, "Der(L) over {}: dimension {m}", alg.field()).unwrap();
    writeln!(
        h,
        "basis (column j is the image of {}):",
        alg.names().join(", ")
    )
    .unwrap();
    for (name, d) in d_names.iter().zip(&da.basis) {
        writeln!(h, "  {name} =").unwrap();
        h.push_str(&indented(d, "    "));
    }
    writeln!(h, "brackets:").unwrap();
    let mut any = false;
    for a in 0..m {
        for b in a + 1..m {
            let v = da.lie.basis_bracket(a, b);
            if v.iter().any(|c| !c.is_zero()) {
                any = true;
                writeln!(
                    h,
                    "  [{}, {}] = {}",
                    d_names[a],
                    d_names[b],
                    format_combination(&d_names, v)
                )
                .unwrap();
            }
        }
    }
    if !any {
        writeln!(h, "  all zero").unwrap();
    }
    let r = &da.report;
    writeln!(h, "abelian: {}", yes_no(r.is_abelian)).unwrap();
    writeln!(h, "center: {}", span_text(&d_names, &r.center)).unwrap();
    writeln!(h, "derived: {}", span_text(&d_names, &r.derived)).unwrap();

    let named =
        catalog::identify(alg).map(|(kind, lambda)| named_section(&da, kind, &lambda, &mut h));

    let results = Results::Der(DerResults {
        dim_der: m,
        basis: da.basis.iter().map(rows).collect(),
        lie_structure_constants: (0..m)
            .map(|a| (0..m).map(|b| vector(da.lie.basis_bracket(a, b))).collect())
            .collect(),
        is_abelian: r.is_abelian,
        center: (&r.center).into(),
        derived: (&r.derived).into(),
        named,
    });
    Ok(Output {
        report: report("der", input, alg, results),
        human: h,
        failed: false,
    })
}

pub fn oracle(input: &str, alg: &LeibnizAlgebra, limit: u64) -> leibniz::Result<Output> {
    let r = oracle::compare(alg, input, limit)?;
    let all_match = r.all_match();
    let mut h = String::new();
    writeln!(h, "oracle over {}, dim {}", alg.field(), alg.dim()).unwrap();
    writeln!(h, "enumerated derivations: {}", r.derivation_count).unwrap();
    match r.derivation_dim {
        Some(d) => writeln!(h, "enumerated dimension: {d}").unwrap(),
        None => writeln!(
            h,
            "enumerated count is not a power of {}",
            alg.field().characteristic()
        )
        .unwrap(),
    }
    writeln!(h, "solver dimension: {}", r.solver_dim).unwrap();
    writeln!(h, "spans equal: {}", yes_no(r.spans_equal)).unwrap();
    writeln!(
        h,
        "closed under addition: {}",
        yes_no(r.closed_under_addition)
    )
    .unwrap();
    writeln!(h, "Leibniz kernel matches: {}", yes_no(r.leib_kernel)).unwrap();
    for c in &r.centers {
        writeln!(h, "{} center matches: {}", c.side.name(), yes_no(c.equal)).unwrap();
    }
    for (name, ok) in alg.names().iter().zip(&r.annihilators) {
        writeln!(h, "left annihilator of {name} matches: {}", yes_no(*ok)).unwrap();
    }
    writeln!(h, "all match: {}", yes_no(all_match)).unwrap();

    let results = Results::Oracle(OracleResults {
        derivation_count: r.derivation_count,
        derivation_dim: r.derivation_dim,
        solver_dim: r.solver_dim,
        spans_equal: r.spans_equal,
        closed_under_addition: r.closed_under_addition,
        derivations_match: r.matches,
        leibniz_kernel_match: r.leib_kernel,
        centers: r
            .centers
            .iter()
            .map(|c| CenterMatch {
                side: c.side.name().into(),
                equal: c.equal,
            })
            .collect(),
        left_annihilators_match: r.annihilators.clone(),
        all_match,
    });
    Ok(Output {
        report: report("oracle", input, alg, results),
        human: h,
        failed: !all_match,
    })
}

pub fn catalog_entry(name: &str, entry: &catalog::CatalogEntry, output: Option<&str>) -> Output {
    let text = write_algebra(entry.algebra.table());
    let mut h = String::new();
    if let Some(path) = output {
        writeln!(h, "wrote {} to {path}", entry.kind).unwrap();
    } else {
        h.push_str(&text);
    }
    let results = Results::Catalog(CatalogResults {
        kind: entry.kind.to_string(),
        lambda: entry.lambda.as_ref().map(Scalar::to_string),
        parameter_admissible: entry.parameter_admissible,
        output: output.map(str::to_string),
        text,
    });
    Output {
        report: report("catalog", name, &entry.algebra, results),
        human: h,
        failed: false,
    }
}
