//! Machine-readable reports: invariant summaries, closed-form-vs-counted
//! crosschecks, presentation certificates, and category dumps.
//!
//! JSON output uses schema `catalg/1`: object keys are sorted, matrices are
//! row-major with the object order alongside, and every big integer is a
//! decimal string. Identical inputs render byte-identically.

use crate::category::{
    build_category, build_skeleton_seo, check_structure, CategoryKind, FiniteCategory,
};
use crate::enumeration::{
    bar_path, cartan_entry_ec, cartan_entry_ef, cartan_po_closed, dim_rad_po, paths_below_det,
    paths_below_dp, LatticePath,
};
use crate::invariants::{
    blocks, cartan_matrix, composition_depth, irreducible_morphisms, quiver_from_depths,
    radical_dimension_from, Quiver,
};
use crate::maps::{Family, Morphism, SubsetOfN};
use crate::matrix::ExactMatrix;
use crate::presentation::{
    relations_with_diagnostics, verify_presentation, PresentationFamily, PresentationQuiver,
};
use crate::Result;
use num_bigint::BigInt;
use serde_json::{json, Value};

pub const SCHEMA: &str = "catalg/1";

/// Default size cap for category-building commands.
pub fn default_invariants_cap(family: Family) -> usize {
    match family {
        Family::Po => 6,
        Family::Pf | Family::Pc => 5,
    }
}

/// Default size cap for presentation verification.
pub fn default_presentation_cap(family: Family) -> usize {
    match family {
        Family::Po => 5,
        Family::Pc => 4,
        Family::Pf => 4,
    }
}

/// Default cap on the number of paths enumerated per hom-pair.
pub const DEFAULT_MAX_PATHS: usize = 500_000;

fn presentation_family(family: Family) -> PresentationFamily {
    match family {
        Family::Po => PresentationFamily::Seo,
        Family::Pc => PresentationFamily::Ec,
        Family::Pf => PresentationFamily::Ef,
    }
}

fn subset_value(s: &SubsetOfN) -> Value {
    Value::Array(s.elements().iter().map(|&e| json!(e)).collect())
}

fn morphism_value(m: &Morphism) -> Value {
    json!({
        "dom": subset_value(m.dom()),
        "cod": subset_value(m.cod()),
        "values": m.values(),
    })
}

fn matrix_value(m: &ExactMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| Value::String(m.get(i, j).to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

/// One named pass/fail entry of a crosscheck run.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn value(&self) -> Value {
        json!({ "name": self.name, "pass": self.pass, "detail": self.detail })
    }
}

/// A finished command result in all three output formats.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub ok: bool,
    pub json: Value,
    pub csv: String,
    pub text: String,
}

impl CommandOutput {
    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("serializable value");
        s.push('\n');
        s
    }
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn cartan_csv(labels: &[String], matrix: &ExactMatrix) -> String {
    let mut out = String::new();
    out.push_str("object");
    for label in labels {
        out.push(',');
        out.push_str(&csv_quote(label));
    }
    out.push('\n');
    for i in 0..matrix.rows() {
        out.push_str(&csv_quote(&labels[i]));
        for j in 0..matrix.cols() {
            out.push(',');
            out.push_str(&matrix.get(i, j).to_string());
        }
        out.push('\n');
    }
    out
}

fn checks_csv(checks: &[Check]) -> String {
    let mut out = String::from("name,pass,detail\n");
    for c in checks {
        out.push_str(&format!(
            "{},{},{}\n",
            csv_quote(&c.name),
            c.pass,
            csv_quote(&c.detail)
        ));
    }
    out
}

fn checks_text(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        out.push_str(&format!(
            "{} {}: {}\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    out
}

struct FamilyData {
    /// Category whose Morita invariants are reported; the skeleton for the
    /// order-preserving family, the full subset category otherwise.
    cat: FiniteCategory,
    /// Category realizing the monoid algebra itself (radical dimensions are
    /// dimensions of the monoid algebra, which is not a Morita invariant).
    algebra_cat: FiniteCategory,
}

fn family_data(family: Family, n: usize, max_n: usize) -> Result<FamilyData> {
    match family {
        Family::Po => {
            let algebra_cat = build_category(CategoryKind::Eo, n, max_n)?;
            Ok(FamilyData {
                cat: build_skeleton_seo(n),
                algebra_cat,
            })
        }
        Family::Pf => {
            let cat = build_category(CategoryKind::Ef, n, max_n)?;
            Ok(FamilyData {
                algebra_cat: cat.clone(),
                cat,
            })
        }
        Family::Pc => {
            let cat = build_category(CategoryKind::Ec, n, max_n)?;
            Ok(FamilyData {
                algebra_cat: cat.clone(),
                cat,
            })
        }
    }
}

fn object_labels(cat: &FiniteCategory) -> Vec<String> {
    cat.objects().iter().map(|o| o.to_string()).collect()
}

fn quiver_value(cat: &FiniteCategory, quiver: &Quiver) -> Value {
    json!({
        "vertex_count": quiver.object_count,
        "arrow_count": quiver.arrows.len(),
        "arrows": quiver
            .arrows
            .iter()
            .map(|a| {
                json!({
                    "source": subset_value(&cat.objects()[a.source]),
                    "target": subset_value(&cat.objects()[a.target]),
                    "morphism": morphism_value(&a.morphism),
                })
            })
            .collect::<Vec<_>>(),
    })
}

/// Invariant summary for one family at one size: Loewy length, blocks,
/// quiver, Cartan matrix, radical dimensions, and structural checks.
pub fn invariants_output(family: Family, n: usize, max_n: usize) -> Result<CommandOutput> {
    let data = family_data(family, n, max_n)?;
    let cat = &data.cat;
    let depths = composition_depth(cat);
    let algebra_depths = composition_depth(&data.algebra_cat);
    let loewy = depths.max_depth() + 1;
    let quiver = quiver_from_depths(cat, &depths);
    let cartan = cartan_matrix(cat);
    let block_partition = blocks(cat);
    let radical_dims: Vec<BigInt> = (0..=algebra_depths.max_depth() + 1)
        .map(|k| radical_dimension_from(&algebra_depths, k))
        .collect();
    let structure = check_structure(cat);
    let checks = vec![
        Check {
            name: "locally_trivial".into(),
            pass: structure.locally_trivial,
            detail: "only endomorphisms are identities".into(),
        },
        Check {
            name: "skeletal".into(),
            pass: structure.skeletal,
            detail: "no two distinct objects isomorphic".into(),
        },
        Check {
            name: "object_order".into(),
            pass: structure.object_order.is_partial_order(),
            detail: "hom-nonemptiness is a partial order on objects".into(),
        },
        Check {
            name: "cartan_unitriangular".into(),
            pass: cartan.is_upper_unitriangular(),
            detail: "under the cardinality-then-lex object order".into(),
        },
    ];
    let labels = object_labels(cat);
    let json = json!({
        "schema": SCHEMA,
        "command": "invariants",
        "family": family.name(),
        "n": n,
        "category": cat.kind().name(),
        "object_count": cat.object_count(),
        "morphism_count": cat.morphism_count(),
        "algebra_dimension": data.algebra_cat.morphism_count(),
        "loewy_length": loewy,
        "block_count": block_partition.len(),
        "blocks": block_partition
            .iter()
            .map(|block| {
                Value::Array(block.iter().map(|&i| subset_value(&cat.objects()[i])).collect())
            })
            .collect::<Vec<_>>(),
        "quiver": quiver_value(cat, &quiver),
        "cartan": {
            "objects": cat.objects().iter().map(subset_value).collect::<Vec<_>>(),
            "rows": matrix_value(&cartan),
        },
        "radical_dimensions": radical_dims.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "checks": checks.iter().map(Check::value).collect::<Vec<_>>(),
    });
    let mut text = String::new();
    text.push_str(&format!(
        "{} at n = {} (category {})\n",
        family.name(),
        n,
        cat.kind().name()
    ));
    text.push_str(&format!(
        "objects: {}   morphisms: {}   algebra dimension: {}\n",
        cat.object_count(),
        cat.morphism_count(),
        data.algebra_cat.morphism_count()
    ));
    text.push_str(&format!("loewy length: {loewy}\n"));
    text.push_str(&format!("blocks: {}\n", block_partition.len()));
    text.push_str(&format!(
        "quiver: {} vertices, {} arrows\n",
        quiver.object_count,
        quiver.arrows.len()
    ));
    let dims: Vec<String> = radical_dims.iter().map(BigInt::to_string).collect();
    text.push_str(&format!(
        "radical dimensions by power: {}\n",
        dims.join(" ")
    ));
    text.push_str("cartan matrix (rows = targets):\n");
    text.push_str(&cartan.to_string());
    text.push_str(&checks_text(&checks));
    let ok = checks.iter().all(|c| c.pass);
    Ok(CommandOutput {
        ok,
        json,
        csv: cartan_csv(&labels, &cartan),
        text,
    })
}

fn check_eq<T: PartialEq + std::fmt::Display>(name: &str, got: T, want: T) -> Check {
    Check {
        name: name.into(),
        pass: got == want,
        detail: format!("computed {got}, closed form {want}"),
    }
}

/// Runs every closed form of the family against its counted counterpart.
pub fn crosscheck_output(family: Family, n: usize, max_n: usize) -> Result<CommandOutput> {
    let data = family_data(family, n, max_n)?;
    let cat = &data.cat;
    let mut checks: Vec<Check> = Vec::new();

    let depths = composition_depth(cat);
    let loewy = depths.max_depth() + 1;
    let expected_loewy = match family {
        Family::Po => n.max(1),
        Family::Pc | Family::Pf => n * n.saturating_sub(1) / 2 + 1,
    };
    checks.push(check_eq("loewy_closed_form", loewy, expected_loewy));

    let expected_blocks = if n == 0 { 1 } else { 2 };
    checks.push(check_eq("block_count", blocks(cat).len(), expected_blocks));

    let counted = cartan_matrix(cat);
    match family {
        Family::Po => {
            checks.push(Check {
                name: "cartan_pascal".into(),
                pass: counted == cartan_po_closed(n),
                detail: "hom-counted Cartan matrix equals the extended Pascal matrix".into(),
            });
            let algebra_depths = composition_depth(&data.algebra_cat);
            let mut pass = true;
            for k in 1..=algebra_depths.max_depth() + 1 {
                if radical_dimension_from(&algebra_depths, k) != dim_rad_po(n, k) {
                    pass = false;
                }
            }
            checks.push(Check {
                name: "radical_dimensions".into(),
                pass,
                detail: "depth counts match the double binomial sum for every power".into(),
            });
            let quiver = irreducible_morphisms(cat);
            let mut arrows_ok = quiver.arrows.len() == (0..n).sum::<usize>();
            for k in 0..n {
                arrows_ok &= quiver.arrows_between(k + 1, k) == k;
            }
            checks.push(Check {
                name: "quiver_arrows".into(),
                pass: arrows_ok,
                detail: "k arrows from [k+1] to [k] and no others".into(),
            });
            let closed_dim: BigInt = (0..=n)
                .flat_map(|m| (0..=n).map(move |l| (m, l)))
                .map(|(m, l)| {
                    crate::matrix::binomial(n as i64, m as i64)
                        * crate::matrix::binomial(n as i64, l as i64)
                        * crate::enumeration::count_onto_op(m, l)
                })
                .sum();
            checks.push(check_eq(
                "algebra_dimension",
                BigInt::from(data.algebra_cat.morphism_count()),
                closed_dim,
            ));
        }
        Family::Pc => {
            let mut pass = true;
            for a in cat.objects() {
                for b in cat.objects() {
                    let direct = BigInt::from(cat.hom_between(a, b).len());
                    if cartan_entry_ec(a, b) != direct {
                        pass = false;
                    }
                }
            }
            checks.push(Check {
                name: "cartan_pipeline".into(),
                pass,
                detail:
                    "reduction + renaming + inclusion-exclusion determinant equals every hom count"
                        .into(),
            });
            let mut det_ok = true;
            for b in SubsetOfN::all_subsets(n) {
                let bar = bar_path(n, &b).bar;
                if paths_below_det(&bar) != paths_below_dp(&bar) {
                    det_ok = false;
                }
            }
            let staircase = LatticePath::staircase(n);
            det_ok &= paths_below_det(&staircase) == paths_below_dp(&staircase);
            checks.push(Check {
                name: "det_vs_dp".into(),
                pass: det_ok,
                detail: "determinant path counts match the dynamic program on every boundary"
                    .into(),
            });
            checks.push(quiver_criterion_check(cat, family));
            let closed_dim: BigInt = cat
                .objects()
                .iter()
                .flat_map(|a| cat.objects().iter().map(move |b| (a, b)))
                .map(|(a, b)| cartan_entry_ec(a, b))
                .sum();
            checks.push(check_eq(
                "algebra_dimension",
                BigInt::from(cat.morphism_count()),
                closed_dim,
            ));
        }
        Family::Pf => {
            let mut pass = true;
            for a in cat.objects() {
                for b in cat.objects() {
                    let direct = BigInt::from(cat.hom_between(a, b).len());
                    if cartan_entry_ef(a, b) != direct {
                        pass = false;
                    }
                }
            }
            checks.push(Check {
                name: "cartan_inclusion_exclusion".into(),
                pass,
                detail: "product-formula inclusion-exclusion equals every hom count".into(),
            });
            checks.push(quiver_criterion_check(cat, family));
            let factorial: BigInt = (1..=n as u64 + 1).map(BigInt::from).product();
            checks.push(check_eq(
                "algebra_dimension_factorial",
                BigInt::from(cat.morphism_count()),
                factorial,
            ));
        }
    }
    checks.push(Check {
        name: "cartan_unitriangular".into(),
        pass: counted.is_upper_unitriangular(),
        detail: "under the cardinality-then-lex object order".into(),
    });

    let ok = checks.iter().all(|c| c.pass);
    let json = json!({
        "schema": SCHEMA,
        "command": "crosscheck",
        "family": family.name(),
        "n": n,
        "all_pass": ok,
        "checks": checks.iter().map(Check::value).collect::<Vec<_>>(),
    });
    let mut text = format!("crosscheck {} at n = {}\n", family.name(), n);
    text.push_str(&checks_text(&checks));
    Ok(CommandOutput {
        ok,
        json,
        csv: checks_csv(&checks),
        text,
    })
}

fn quiver_criterion_check(cat: &FiniteCategory, family: Family) -> Check {
    let quiver = irreducible_morphisms(cat);
    let mut pass = true;
    for m in cat.morphisms() {
        let moved: Vec<usize> = m
            .dom()
            .elements()
            .iter()
            .copied()
            .filter(|&x| m.apply(x) != x)
            .collect();
        let criterion = match family {
            Family::Pc => moved.len() == 1 && m.apply(moved[0]) + 1 == moved[0],
            Family::Pf => {
                moved.len() == 1
                    && crate::presentation::lt_adjacent(m.dom(), m.apply(moved[0]), moved[0])
            }
            Family::Po => unreachable!("handled by the simplicial arrow count"),
        };
        let is_arrow = quiver.arrows.iter().any(|a| &a.morphism == m);
        if criterion != is_arrow {
            pass = false;
        }
    }
    Check {
        name: "quiver_arrows".into(),
        pass,
        detail: "irreducibles are exactly the single-element moves of the family".into(),
    }
}

/// Presentation certificate: generators, relations, and per-hom-pair class
/// counts against hom sizes.
pub fn verify_presentation_output(
    family: Family,
    n: usize,
    max_n: usize,
    max_paths: usize,
) -> Result<CommandOutput> {
    if n > max_n {
        return Err(crate::Error::ResourceLimit {
            what: "presentation ambient size n",
            requested: n,
            limit: max_n,
        });
    }
    let pres_family = presentation_family(family);
    let cat = match pres_family {
        PresentationFamily::Seo => build_skeleton_seo(n),
        other => build_category(other.category_kind(), n, max_n)?,
    };
    let quiver = PresentationQuiver::new(pres_family, n);
    let (relations, diagnostics) = relations_with_diagnostics(pres_family, n);
    let report = verify_presentation(&cat, &quiver, &relations, max_paths)?;

    let json = json!({
        "schema": SCHEMA,
        "command": "verify-presentation",
        "family": family.name(),
        "n": n,
        "category": pres_family.name(),
        "passed": report.passed,
        "generator_count": report.generator_count,
        "relation_count": report.relation_count,
        "generators": quiver
            .generators()
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>(),
        "relations": relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "rejected_instantiations": diagnostics,
        "pairs": report
            .pairs
            .iter()
            .map(|p| {
                json!({
                    "source": subset_value(&p.source),
                    "target": subset_value(&p.target),
                    "path_count": p.path_count,
                    "class_count": p.class_count,
                    "hom_size": p.hom_size,
                    "evaluation_injective": p.evaluation_injective,
                })
            })
            .collect::<Vec<_>>(),
        "witnesses": report.failures.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
    });

    let mut text = String::new();
    text.push_str(&format!(
        "presentation certificate: {} at n = {}\n",
        pres_family.name(),
        n
    ));
    text.push_str(&format!(
        "generators: {}   relations: {}   rejected instantiations: {}\n",
        report.generator_count,
        report.relation_count,
        diagnostics.len()
    ));
    for pair in &report.pairs {
        text.push_str(&format!(
            "  ({}, {}): paths {}, classes {}, hom {}{}\n",
            pair.source,
            pair.target,
            pair.path_count,
            pair.class_count,
            pair.hom_size,
            if pair.passed() { "" } else { "  MISMATCH" }
        ));
    }
    for witness in &report.failures {
        text.push_str(&format!("witness: {witness}\n"));
    }
    text.push_str(if report.passed {
        "verdict: PASS\n"
    } else {
        "verdict: FAIL\n"
    });

    let mut csv = String::from("source,target,path_count,class_count,hom_size,injective\n");
    for p in &report.pairs {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            csv_quote(&p.source.to_string()),
            csv_quote(&p.target.to_string()),
            p.path_count,
            p.class_count,
            p.hom_size,
            p.evaluation_injective
        ));
    }

    Ok(CommandOutput {
        ok: report.passed,
        json,
        csv,
        text,
    })
}

/// Total number of monoid elements, i.e. of category morphisms.
pub fn count_output(family: Family, n: usize, max_n: usize) -> Result<CommandOutput> {
    let monoid = crate::maps::enumerate_monoid(family, n, max_n)?;
    let count = monoid.len();
    let json = json!({
        "schema": SCHEMA,
        "command": "count",
        "family": family.name(),
        "n": n,
        "count": count.to_string(),
    });
    Ok(CommandOutput {
        ok: true,
        json,
        csv: format!("family,n,count\n{},{},{}\n", family.name(), n, count),
        text: format!("|{}_{}| = {}\n", family.name().to_uppercase(), n, count),
    })
}

/// Full dump of a category: objects and hom-sets as value tables, for
/// golden tests and external tooling.
pub fn category_json(cat: &FiniteCategory) -> Value {
    let mut homs = Vec::new();
    for a in 0..cat.object_count() {
        for b in 0..cat.object_count() {
            let hom = cat.hom(a, b);
            if hom.is_empty() {
                continue;
            }
            homs.push(json!({
                "source": a,
                "target": b,
                "maps": hom.iter().map(|m| Value::from(m.values().to_vec())).collect::<Vec<_>>(),
            }));
        }
    }
    json!({
        "schema": SCHEMA,
        "kind": cat.kind().name(),
        "n": cat.n(),
        "objects": cat.objects().iter().map(subset_value).collect::<Vec<_>>(),
        "homs": homs,
    })
}
