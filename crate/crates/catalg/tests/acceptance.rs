//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `--nocapture` to see them). Every expected value is exact.

use catalg::category::{build_category, build_skeleton_seo, CategoryKind};
use catalg::delta::delta_iso;
use catalg::enumeration::{
    cartan_entry_ec, cartan_entry_ef, cartan_po_closed, dim_rad_po, paths_below_det,
    paths_below_dp, LatticePath,
};
use catalg::invariants::{blocks, cartan_matrix, composition_depth, defect, loewy_length};
use catalg::maps::{enumerate_monoid, Family, SubsetOfN};
use catalg::presentation::{
    relations, verify_presentation, FailureWitness, PresentationFamily, PresentationQuiver,
    Relation, RelationTag,
};
use catalg::{compose, FiniteCategory, Morphism};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

const MAX_PATHS: usize = 500_000;

fn criterion(
    number: u32,
    description: &str,
    budget: Duration,
    run: impl FnOnce() -> Result<(), String>,
) {
    let start = Instant::now();
    let outcome = run();
    let elapsed = start.elapsed();
    match &outcome {
        Ok(()) => println!("PASS criterion {number}: {description} ({elapsed:.2?})"),
        Err(detail) => println!("FAIL criterion {number}: {description}: {detail}"),
    }
    if let Err(detail) = outcome {
        panic!("criterion {number} failed: {detail}");
    }
    assert!(
        elapsed <= budget,
        "criterion {number} exceeded its time budget: {elapsed:.2?} > {budget:.2?}"
    );
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

#[test]
fn criterion_01_loewy_lengths() {
    criterion(
        1,
        "Loewy length is n for EO and n(n-1)/2 + 1 for EC and EF, 1 <= n <= 5",
        Duration::from_secs(30),
        || {
            for n in 1..=5 {
                let eo = build_category(CategoryKind::Eo, n, 6).map_err(|e| e.to_string())?;
                expect(&format!("EO_{n}"), loewy_length(&eo), n)?;
                let triangular = n * (n - 1) / 2 + 1;
                let ec = build_category(CategoryKind::Ec, n, 5).map_err(|e| e.to_string())?;
                expect(&format!("EC_{n}"), loewy_length(&ec), triangular)?;
                let ef = build_category(CategoryKind::Ef, n, 5).map_err(|e| e.to_string())?;
                expect(&format!("EF_{n}"), loewy_length(&ef), triangular)?;
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_02_cartan_po_pascal() {
    criterion(
        2,
        "hom-counted Cartan matrix of SEO_n equals the extended Pascal matrix, n <= 6",
        Duration::from_secs(5),
        || {
            for n in 0..=6 {
                let counted = cartan_matrix(&build_skeleton_seo(n));
                expect(&format!("SEO_{n}"), counted, cartan_po_closed(n))?;
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_03_cartan_pc_pipeline() {
    criterion(
        3,
        "determinant pipeline reproduces every EC Cartan entry, n <= 5",
        Duration::from_secs(120),
        || {
            for n in 0..=5 {
                let ec = build_category(CategoryKind::Ec, n, 5).map_err(|e| e.to_string())?;
                for a in ec.objects() {
                    for b in ec.objects() {
                        let direct = BigInt::from(ec.hom_between(a, b).len());
                        expect(
                            &format!("|EC_{n}({a}, {b})|"),
                            cartan_entry_ec(a, b),
                            direct,
                        )?;
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_04_cartan_pf_inclusion_exclusion() {
    criterion(
        4,
        "inclusion-exclusion reproduces every EF Cartan entry, n <= 5",
        Duration::from_secs(60),
        || {
            for n in 0..=5 {
                let ef = build_category(CategoryKind::Ef, n, 5).map_err(|e| e.to_string())?;
                for a in ef.objects() {
                    for b in ef.objects() {
                        let direct = BigInt::from(ef.hom_between(a, b).len());
                        expect(
                            &format!("|EF_{n}({a}, {b})|"),
                            cartan_entry_ef(a, b),
                            direct,
                        )?;
                    }
                }
            }
            Ok(())
        },
    );
}

fn build_for(family: PresentationFamily, n: usize) -> FiniteCategory {
    match family {
        PresentationFamily::Seo => build_skeleton_seo(n),
        other => build_category(other.category_kind(), n, 5).expect("within cap"),
    }
}

#[test]
fn criterion_05_presentations_verify() {
    criterion(
        5,
        "presentations verify: SEO n <= 5, EC n <= 4, EF n <= 4",
        Duration::from_secs(300),
        || {
            let cases = [
                (PresentationFamily::Seo, 5usize),
                (PresentationFamily::Ec, 4),
                (PresentationFamily::Ef, 4),
            ];
            for (family, top) in cases {
                for n in 0..=top {
                    let cat = build_for(family, n);
                    let quiver = PresentationQuiver::new(family, n);
                    let report =
                        verify_presentation(&cat, &quiver, &relations(family, n), MAX_PATHS)
                            .map_err(|e| e.to_string())?;
                    if !report.passed {
                        return Err(format!(
                            "{}_{n} failed: {}",
                            family.name(),
                            report
                                .failures
                                .first()
                                .map(|f| f.to_string())
                                .unwrap_or_else(|| "class/hom mismatch".into())
                        ));
                    }
                    for pair in &report.pairs {
                        if !pair.passed() {
                            return Err(format!(
                                "{}_{n} pair ({}, {}): {} classes vs {} homs",
                                family.name(),
                                pair.source,
                                pair.target,
                                pair.class_count,
                                pair.hom_size
                            ));
                        }
                    }
                }
            }
            Ok(())
        },
    );
}

fn drop_tag_fails_at(family: PresentationFamily, dropped: RelationTag, n: usize) -> Option<String> {
    let cat = build_for(family, n);
    let quiver = PresentationQuiver::new(family, n);
    let kept: Vec<Relation> = relations(family, n)
        .into_iter()
        .filter(|r| r.tag != dropped)
        .collect();
    let report = verify_presentation(&cat, &quiver, &kept, MAX_PATHS).expect("within caps");
    if report.passed {
        return None;
    }
    report.failures.first().map(|f| match f {
        FailureWitness::InequivalentPaths { left, right, .. } => format!("{left} vs {right}"),
        other => other.to_string(),
    })
}

#[test]
fn criterion_06_mutation_sensitivity() {
    criterion(
        6,
        "deleting PC2 (n=3) or any of PF2..PF6 (n <= 4) breaks verification with a witness",
        Duration::from_secs(300),
        || {
            match drop_tag_fails_at(PresentationFamily::Ec, RelationTag::Pc2, 3) {
                Some(witness) => println!("  dropping PC2 fails at n=3, witness: {witness}"),
                None => return Err("dropping PC2 still verifies at n=3".into()),
            }
            for tag in [
                RelationTag::Pf2,
                RelationTag::Pf3,
                RelationTag::Pf4,
                RelationTag::Pf5,
                RelationTag::Pf6,
            ] {
                let found = (2..=4).find_map(|n| {
                    drop_tag_fails_at(PresentationFamily::Ef, tag, n).map(|w| (n, w))
                });
                match found {
                    Some((n, witness)) => {
                        println!("  dropping {tag} fails at n={n}, witness: {witness}")
                    }
                    None => return Err(format!("dropping {tag} still verifies for all n <= 4")),
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_07_radical_dimensions() {
    criterion(
        7,
        "dim Rad^k closed form equals defect counts equals depth counts, n <= 5",
        Duration::from_secs(60),
        || {
            for n in 0..=5 {
                let eo = build_category(CategoryKind::Eo, n, 6).map_err(|e| e.to_string())?;
                let table = composition_depth(&eo);
                for k in 1..=table.max_depth() + 1 {
                    let by_defect = BigInt::from(eo.morphisms().filter(|m| defect(m) >= k).count());
                    let by_depth =
                        BigInt::from(eo.morphisms().filter(|m| table.depth(m) >= k).count());
                    expect(
                        &format!("EO_{n} defect count k={k}"),
                        dim_rad_po(n, k),
                        by_defect,
                    )?;
                    expect(
                        &format!("EO_{n} depth count k={k}"),
                        dim_rad_po(n, k),
                        by_depth,
                    )?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_08_determinant_path_counts() {
    criterion(
        8,
        "determinant equals the path DP on 120 random boundaries and the worked example",
        Duration::from_secs(5),
        || {
            let example = LatticePath::new(vec![1, 1, 2, 3, 4, 4, 4, 5]).unwrap();
            expect(
                "example boundary",
                paths_below_det(&example),
                paths_below_dp(&example),
            )?;
            let mut rng = ChaCha8Rng::seed_from_u64(0x0ca7a106);
            for case in 0..120 {
                let len = rng.gen_range(1..=8);
                let mut steps: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=len + 1)).collect();
                steps.sort_unstable();
                let x = LatticePath::new(steps).unwrap();
                let det = paths_below_det(&x);
                let dp = paths_below_dp(&x);
                if det != dp {
                    return Err(format!(
                        "case {case} boundary {:?}: det {det} vs dp {dp}",
                        x.steps()
                    ));
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_09_blocks() {
    criterion(
        9,
        "two blocks with the empty set isolated for 1 <= n <= 5, one block at n = 0",
        Duration::from_secs(60),
        || {
            for kind in [CategoryKind::Eo, CategoryKind::Ef, CategoryKind::Ec] {
                let cat = build_category(kind, 0, 6).map_err(|e| e.to_string())?;
                expect(&format!("{kind}_0 blocks"), blocks(&cat).len(), 1)?;
                for n in 1..=5 {
                    let cat = build_category(kind, n, 6).map_err(|e| e.to_string())?;
                    let partition = blocks(&cat);
                    expect(&format!("{kind}_{n} blocks"), partition.len(), 2)?;
                    let empty_index = cat
                        .object_index(&SubsetOfN::empty(n))
                        .expect("empty object");
                    if !partition.iter().any(|block| block == &vec![empty_index]) {
                        return Err(format!("{kind}_{n}: the empty set is not isolated"));
                    }
                }
            }
            Ok(())
        },
    );
}

/// Independent count of the monoid: partial maps on [n] with the family
/// predicates, enumerated as (domain mask, value table) with no category
/// machinery involved.
fn partial_map_count(family: Family, n: usize) -> usize {
    let mut count = 0usize;
    for mask in 0..1u64 << n {
        let domain: Vec<usize> = (1..=n).filter(|e| mask >> (e - 1) & 1 == 1).collect();
        let m = domain.len();
        let mut values = vec![1usize; m];
        loop {
            let preserving =
                !family.requires_preserving() || values.windows(2).all(|w| w[0] <= w[1]);
            let decreasing =
                !family.requires_decreasing() || domain.iter().zip(&values).all(|(&x, &v)| v <= x);
            if preserving && decreasing {
                count += 1;
            }
            // Odometer over value tables; empty domains contribute once.
            let mut pos = m;
            loop {
                if pos == 0 {
                    break;
                }
                if values[pos - 1] < n {
                    values[pos - 1] += 1;
                    break;
                }
                values[pos - 1] = 1;
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
        }
    }
    count
}

#[test]
fn criterion_10_monoid_dimension_equality() {
    criterion(
        10,
        "monoid sizes equal category morphism counts (n <= 5); |PF_n| = (n+1)! (n <= 6)",
        Duration::from_secs(120),
        || {
            for n in 0..=5 {
                for (family, kind) in [
                    (Family::Po, CategoryKind::Eo),
                    (Family::Pf, CategoryKind::Ef),
                    (Family::Pc, CategoryKind::Ec),
                ] {
                    let cat = build_category(kind, n, 6).map_err(|e| e.to_string())?;
                    let independent = partial_map_count(family, n);
                    expect(
                        &format!("{family} at n={n} vs {kind} morphisms"),
                        independent,
                        cat.morphism_count(),
                    )?;
                    expect(
                        &format!("{family} at n={n} vs enumerate_monoid"),
                        independent,
                        enumerate_monoid(family, n, 6)
                            .map_err(|e| e.to_string())?
                            .len(),
                    )?;
                }
            }
            for n in 0..=6 {
                let factorial: usize = (1..=n + 1).product();
                expect(
                    &format!("|PF_{n}|"),
                    enumerate_monoid(Family::Pf, n, 6)
                        .map_err(|e| e.to_string())?
                        .len(),
                    factorial,
                )?;
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_11_delta_isomorphism() {
    criterion(
        11,
        "skeleton <-> strict-maps functors round-trip and preserve composites, n <= 4",
        Duration::from_secs(60),
        || {
            for n in 0..=4 {
                let pair = delta_iso(n);
                for (f, g) in pair.forward_iter() {
                    if pair.backward(g) != Some(f) {
                        return Err(format!("n={n}: backward(forward({f})) differs"));
                    }
                }
                for (g, f) in pair.backward_iter() {
                    if pair.forward(f) != Some(g) {
                        return Err(format!("n={n}: forward(backward({g})) differs"));
                    }
                }
                let seo = build_skeleton_seo(n + 1);
                for f1 in seo.morphisms().filter(|f| !f.dom().is_empty()) {
                    for f2 in seo.morphisms().filter(|f| f.dom() == f1.cod()) {
                        let composite = compose(f2, f1).map_err(|e| e.to_string())?;
                        let lhs = pair.forward(&composite).unwrap();
                        let rhs = pair
                            .forward(f1)
                            .unwrap()
                            .compose(pair.forward(f2).unwrap())
                            .map_err(|e| e.to_string())?;
                        if lhs != &rhs {
                            return Err(format!("n={n}: image of {f2} . {f1} differs"));
                        }
                    }
                }
                // The backward direction on all composable strict-map pairs.
                for (g1, f1) in pair.backward_iter() {
                    for (g2, f2) in pair.backward_iter() {
                        if g2.cod_size() != g1.dom_size() {
                            continue;
                        }
                        let composite = g1.compose(g2).map_err(|e| e.to_string())?;
                        let lhs = pair.backward(&composite).unwrap();
                        let rhs = compose(f2, f1).map_err(|e| e.to_string())?;
                        if lhs != &rhs {
                            return Err(format!("n={n}: preimage of {g1} . {g2} differs"));
                        }
                    }
                }
            }
            Ok(())
        },
    );
}

/// Spot values quoted in the worked examples; `_zz` keeps it last so the
/// criterion lines print in order under a single-threaded run.
#[test]
fn criterion_zz_spot_values() {
    let ec4 = build_category(CategoryKind::Ec, 4, 5).unwrap();
    assert_eq!(loewy_length(&ec4), 7);
    let ef4 = build_category(CategoryKind::Ef, 4, 5).unwrap();
    assert_eq!(loewy_length(&ef4), 7);
    let eo4 = build_category(CategoryKind::Eo, 4, 6).unwrap();
    assert_eq!(loewy_length(&eo4), 4);
    // The constant map to {1} realizes the maximal depth in EC_3.
    let ec3 = build_category(CategoryKind::Ec, 3, 5).unwrap();
    let table = composition_depth(&ec3);
    let constant = Morphism::new(
        SubsetOfN::new(3, vec![1, 2, 3]).unwrap(),
        SubsetOfN::new(3, vec![1]).unwrap(),
        vec![1, 1, 1],
    )
    .unwrap();
    assert_eq!(table.depth(&constant), 3);
}
