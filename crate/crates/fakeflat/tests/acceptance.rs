//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Every equality here is exact; there are no tolerances anywhere.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

#![allow(clippy::needless_range_loop)]

use fakeflat::cli::{self, Command, Mode, OutputFormat, RunConfig};
use fakeflat::crossed::CrossedModule;
use fakeflat::error::{Axiom, Error};
use fakeflat::fixtures;
use fakeflat::group::{FiniteGroup, GroupAction, GroupHom};
use fakeflat::invariant::{
    boundary_tuples, closed_form, count_colourings, count_colourings_partitioned, invariant,
    CountMode, Limits, SurfaceKind,
};
use fakeflat::scalar::{rat, ExactScalar};
use fakeflat::surface::SurfaceComplex;
use fakeflat::tqft::{check_cylinder_identity, class_eigenvector_check, TqftMatrix};
use fakeflat::two_conjugacy::{
    c_function, count_classes_by_squares, generalized_commuting_fraction, two_conjugacy_classes,
    verify_witnesses,
};
use fakeflat::verify::{random_move_sequence, SplitMix64};

type CheckResult = Result<String, String>;

fn criterion(n: usize, desc: &str, f: impl FnOnce() -> CheckResult) {
    match f() {
        Ok(detail) => println!("criterion {n} [PASS] {desc} — {detail}"),
        Err(e) => {
            println!("criterion {n} [FAIL] {desc} — {e}");
            panic!("criterion {n} failed: {e}");
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn lim() -> Limits {
    Limits::default()
}

fn surface_kinds() -> Vec<(SurfaceKind, SurfaceComplex)> {
    vec![
        (SurfaceKind::Sphere, SurfaceComplex::sphere()),
        (SurfaceKind::DiskIn, SurfaceComplex::disk_in()),
        (SurfaceKind::DiskOut, SurfaceComplex::disk_out()),
        (SurfaceKind::Cylinder, SurfaceComplex::cylinder()),
        (SurfaceKind::Torus, SurfaceComplex::torus()),
    ]
}

#[test]
fn criterion_1_axiom_gate() {
    criterion(1, "axiom gate on the fixture catalogue", || {
        let all = fixtures::all();
        ensure!(all.len() == 5, "expected 5 fixtures, found {}", all.len());
        for cm in &all {
            cm.verify()
                .map_err(|e| format!("{} failed re-verification: {e}", cm.name()))?;
        }
        // trivial action on a nonabelian H must be rejected by the second axiom
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let err = CrossedModule::build(
            "broken",
            z2.clone(),
            s3.clone(),
            GroupHom::trivial(&s3, &z2),
            GroupAction::trivial(&z2, &s3),
        )
        .err()
        .ok_or("the broken module was accepted")?;
        ensure!(
            matches!(
                err,
                Error::AxiomViolation {
                    axiom: Axiom::Peiffer,
                    ..
                }
            ),
            "wrong rejection: {err}"
        );
        Ok("X1..X5 verified; trivial action on S3 rejected by the Peiffer identity".into())
    });
}

#[test]
fn criterion_2_closed_forms_vs_enumeration() {
    criterion(2, "closed forms equal enumeration on all fixtures", || {
        let lim = lim();
        let mut cases = 0usize;
        for cm in fixtures::all() {
            for (kind, s) in surface_kinds() {
                for (g_in, g_out) in boundary_tuples(&s, &cm) {
                    let boundary: Vec<usize> = g_in.iter().chain(g_out.iter()).copied().collect();
                    let cf = closed_form(kind, &cm, &boundary).map_err(|e| e.to_string())?;
                    let inv = invariant(&s, &cm, &g_in, &g_out, &lim).map_err(|e| e.to_string())?;
                    ensure!(
                        cf == inv,
                        "{} on {kind:?} at {boundary:?}: closed {cf} vs enumerated {inv}",
                        cm.name()
                    );
                    cases += 1;
                }
            }
        }
        // pinned values
        let pinned: Vec<(&str, CrossedModule, SurfaceKind, ExactScalar)> = vec![
            (
                "sphere X4",
                fixtures::x4(),
                SurfaceKind::Sphere,
                ExactScalar::from_int(4, 2),
            ),
            (
                "sphere X5",
                fixtures::x5(),
                SurfaceKind::Sphere,
                ExactScalar::new(rat(9, 2), 2),
            ),
            (
                "torus X3",
                fixtures::x3(),
                SurfaceKind::Torus,
                ExactScalar::from_int(1, 2),
            ),
            (
                "torus X4",
                fixtures::x4(),
                SurfaceKind::Torus,
                ExactScalar::from_int(1, 2),
            ),
            (
                "torus X5",
                fixtures::x5(),
                SurfaceKind::Torus,
                ExactScalar::from_int(2, 2),
            ),
        ];
        for (what, cm, kind, expect) in pinned {
            let got = closed_form(kind, &cm, &[]).map_err(|e| e.to_string())?;
            ensure!(got == expect, "{what}: expected {expect}, got {got}");
        }
        Ok(format!(
            "{cases} (fixture, surface, boundary) cases; sphere(X4)=4, sphere(X5)=9/2, torus(X3)=torus(X4)=1, torus(X5)=2"
        ))
    });
}

#[test]
fn criterion_3_flat_reduction_recovers_class_count() {
    criterion(3, "trivial-H reduction over S3", || {
        let lim = lim();
        let x2 = fixtures::x2();
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let classes = s3.conjugacy_classes().len();
        ensure!(
            classes == 3,
            "S3 must have 3 conjugacy classes, got {classes}"
        );

        let torus =
            invariant(&SurfaceComplex::torus(), &x2, &[], &[], &lim).map_err(|e| e.to_string())?;
        ensure!(
            torus == ExactScalar::from_int(3, 6),
            "torus invariant over X2 is {torus}, expected 3"
        );
        let cf = s3.commuting_fraction();
        ensure!(
            cf * rat(6, 1) == rat(3, 1),
            "commuting fraction times order is {} · 6 ≠ 3",
            cf
        );
        // the torus count itself is the number of commuting pairs, checked
        // against an independent brute-force pair count
        let pairs = {
            let mut n = 0u128;
            for a in 0..6 {
                for b in 0..6 {
                    if s3.mul(a, b) == s3.mul(b, a) {
                        n += 1;
                    }
                }
            }
            n
        };
        let count = count_colourings(
            &SurfaceComplex::torus(),
            &x2,
            &[],
            &[],
            CountMode::Oracle,
            &lim,
        )
        .map_err(|e| e.to_string())?;
        ensure!(
            count == pairs,
            "torus count {count} vs commuting pairs {pairs}"
        );
        Ok("torus(X2) = 3 = #classes(S3); commuting fraction 1/2 · 6 = 3".into())
    });
}

#[test]
fn criterion_4_move_invariance() {
    criterion(
        4,
        "matrices unchanged under moves, flips and basepoints",
        || {
            let lim = lim();
            let mut rng = SplitMix64::new(0xacce_97ed);
            let mut sequences = 0usize;
            for cm in fixtures::all() {
                let ng = cm.g().order();
                for s in fixtures::all_surfaces() {
                    let reference =
                        TqftMatrix::from_surface(&s, &cm, &lim).map_err(|e| e.to_string())?;
                    for _ in 0..20 {
                        let depth = 1 + rng.below(6);
                        let moved = random_move_sequence(&s, ng, &mut rng, depth, &lim)
                            .map_err(|e| e.to_string())?;
                        let z = TqftMatrix::from_surface(&moved, &cm, &lim)
                            .map_err(|e| e.to_string())?;
                        ensure!(
                            z == reference,
                            "matrix changed under a move sequence on {} over {}",
                            s.name(),
                            cm.name()
                        );
                        sequences += 1;
                    }
                }
            }
            let mut flips = 0usize;
            let mut shifts = 0usize;
            for cm in fixtures::all() {
                for s in fixtures::all_surfaces() {
                    for (g_in, g_out) in boundary_tuples(&s, &cm) {
                        for e in s.edges().iter().filter(|e| !e.kind.is_boundary()) {
                            let ok = fakeflat::invariant::orientation_flip_check(
                                &s, &cm, e.id, &g_in, &g_out, &lim,
                            )
                            .map_err(|e| e.to_string())?;
                            ensure!(ok, "flip changed {} over {}", s.name(), cm.name());
                            flips += 1;
                        }
                        for f in s.faces() {
                            for pos in 0..f.word.len() {
                                let ok = fakeflat::invariant::basepoint_shift_check(
                                    &s, &cm, f.id, pos, &g_in, &g_out, &lim,
                                )
                                .map_err(|e| e.to_string())?;
                                ensure!(ok, "basepoint changed {} over {}", s.name(), cm.name());
                                shifts += 1;
                            }
                        }
                    }
                }
            }
            Ok(format!(
            "{sequences} randomized sequences (depth ≤ 6), {flips} orientation flips, {shifts} basepoint shifts"
        ))
        },
    );
}

#[test]
fn criterion_5_gluing_equals_composition() {
    criterion(5, "gluing formula and TQFT property", || {
        let lim = lim();
        let cyl = SurfaceComplex::cylinder();
        let din = SurfaceComplex::disk_in();
        let dout = SurfaceComplex::disk_out();
        let mut cases = 0usize;
        for cm in fixtures::all() {
            ensure!(
                cm.g().order() <= 6,
                "fixture {} exceeds the |G| ≤ 6 bound",
                cm.name()
            );
            let pairs: [(&SurfaceComplex, &SurfaceComplex); 3] =
                [(&cyl, &cyl), (&cyl, &din), (&dout, &cyl)];
            for (first, second) in pairs {
                let glued = SurfaceComplex::glue(first, second).map_err(|e| e.to_string())?;
                let z_glued =
                    TqftMatrix::from_surface(&glued, &cm, &lim).map_err(|e| e.to_string())?;
                let z1 = TqftMatrix::from_surface(first, &cm, &lim).map_err(|e| e.to_string())?;
                let z2 = TqftMatrix::from_surface(second, &cm, &lim).map_err(|e| e.to_string())?;
                let composed = z2.compose(&z1).map_err(|e| e.to_string())?;
                ensure!(
                    z_glued == composed,
                    "gluing {} then {} over {}: matrices differ",
                    first.name(),
                    second.name(),
                    cm.name()
                );
                cases += 1;
            }
        }
        Ok(format!(
            "{cases} glued pairs (cylinder∘cylinder, disk∘cylinder, cylinder∘disk) match entrywise"
        ))
    });
}

#[test]
fn criterion_6_cylinder_idempotency_and_eigenvectors() {
    criterion(6, "cylinder idempotency, rank, class indicators", || {
        let lim = lim();
        for cm in fixtures::all() {
            let z = TqftMatrix::from_surface(&SurfaceComplex::cylinder(), &cm, &lim)
                .map_err(|e| e.to_string())?;
            ensure!(
                z.is_idempotent().map_err(|e| e.to_string())?,
                "Z_C not idempotent over {}",
                cm.name()
            );
            let report = class_eigenvector_check(&cm, &lim).map_err(|e| e.to_string())?;
            ensure!(
                report.indicators_fixed,
                "class indicators not fixed over {}",
                cm.name()
            );
            ensure!(
                report.rank == report.classes,
                "rank {} ≠ {} classes over {}",
                report.rank,
                report.classes,
                cm.name()
            );
        }
        Ok("Z_C² = Z_C, rank = #classes, indicators exactly fixed, all fixtures".into())
    });
}

#[test]
fn criterion_7_pair_counting_identity_suite() {
    criterion(7, "pair-counting identity suite", || {
        for cm in fixtures::all() {
            let name = cm.name();
            check_cylinder_identity(&cm).map_err(|e| format!("{name}: {e}"))?;

            let n = cm.g().order();
            let gh = (cm.g().order() * cm.h().order()) as u64;
            let table: Vec<Vec<u64>> = (0..n)
                .map(|a| (0..n).map(|b| c_function(&cm, a, b)).collect())
                .collect();
            // symmetry
            for a in 0..n {
                for b in 0..n {
                    ensure!(
                        table[a][b] == table[b][a],
                        "{name}: C({a},{b}) ≠ C({b},{a})"
                    );
                }
            }
            // row sums
            for (a, row) in table.iter().enumerate() {
                let sum: u64 = row.iter().sum();
                ensure!(sum == gh, "{name}: row {a} sums to {sum} ≠ |H||G| = {gh}");
            }
            // class constancy and sizes
            let partition = two_conjugacy_classes(&cm);
            for class in &partition.classes {
                let rep = class[0];
                for &a in class {
                    for &b in class {
                        ensure!(
                            table[a][b] == table[rep][rep],
                            "{name}: C not constant on class {class:?}"
                        );
                    }
                    ensure!(
                        gh / table[a][a] == class.len() as u64,
                        "{name}: class size {} ≠ |G||H|/C = {}",
                        class.len(),
                        gh / table[a][a]
                    );
                }
            }
            // class count by squares
            let by_squares = count_classes_by_squares(&cm);
            ensure!(
                by_squares == rat(partition.count() as i128, 1),
                "{name}: square-sum count {by_squares} ≠ {}",
                partition.count()
            );
            // gcf identity
            let gcf = generalized_commuting_fraction(&cm);
            ensure!(
                gcf * rat(n as i128, 1) == rat(partition.count() as i128, 1),
                "{name}: gcf·|G| ≠ #classes"
            );
            // explicit witness bijections
            verify_witnesses(&cm).map_err(|e| format!("{name}: {e}"))?;
        }
        Ok("composition identity, symmetry, constancy, row sums, class sizes, square-sum count, gcf·|G| = #classes".into())
    });
}

#[test]
fn criterion_8_oracle_equivalence() {
    criterion(8, "fast counting equals the brute-force oracle", || {
        let lim = lim();
        let mut cases = 0usize;
        let mut surfaces = fixtures::all_surfaces();
        // include glued composites as extra shapes
        surfaces.push(
            SurfaceComplex::glue(&SurfaceComplex::cylinder(), &SurfaceComplex::cylinder())
                .map_err(|e| e.to_string())?,
        );
        surfaces.push(
            SurfaceComplex::glue(&SurfaceComplex::disk_out(), &SurfaceComplex::disk_in())
                .map_err(|e| e.to_string())?,
        );
        for cm in fixtures::all() {
            for s in &surfaces {
                for (g_in, g_out) in boundary_tuples(s, &cm) {
                    let fast = count_colourings(s, &cm, &g_in, &g_out, CountMode::Fast, &lim)
                        .map_err(|e| e.to_string())?;
                    let oracle = count_colourings(s, &cm, &g_in, &g_out, CountMode::Oracle, &lim)
                        .map_err(|e| e.to_string())?;
                    ensure!(
                        fast == oracle,
                        "{} on {}: fast {fast} vs oracle {oracle}",
                        cm.name(),
                        s.name()
                    );
                    cases += 1;
                }
            }
        }
        Ok(format!(
            "{cases} counts agree, catalogue plus glued composites"
        ))
    });
}

#[test]
fn criterion_9_determinism() {
    criterion(
        9,
        "byte-identical reports, partition-independent counts",
        || {
            let config = RunConfig {
                command: Command::Report,
                output: OutputFormat::Json,
                mode: Mode::Fast,
                move_sequences: 5,
                ..Default::default()
            };
            let render = || -> Result<Vec<u8>, String> {
                let mut buf = Vec::new();
                cli::run(&config, &mut buf).map_err(|e| e.to_string())?;
                Ok(buf)
            };
            let first = render()?;
            let second = render()?;
            ensure!(first == second, "two report runs differ");
            ensure!(!first.is_empty(), "report was empty");

            let lim = lim();
            let mut probes = 0usize;
            for cm in fixtures::all() {
                for s in fixtures::all_surfaces() {
                    let (g_in, g_out) = boundary_tuples(&s, &cm).swap_remove(0);
                    let serial = count_colourings(&s, &cm, &g_in, &g_out, CountMode::Fast, &lim)
                        .map_err(|e| e.to_string())?;
                    for parts in [1usize, 2, 3, 8, 32] {
                        let split =
                            count_colourings_partitioned(&s, &cm, &g_in, &g_out, parts, &lim)
                                .map_err(|e| e.to_string())?;
                        ensure!(
                            split == serial,
                            "{} on {}: {parts} partitions gave {split} ≠ {serial}",
                            cm.name(),
                            s.name()
                        );
                    }
                    probes += 1;
                }
            }
            Ok(format!(
            "report bytes stable ({} bytes); {probes} surfaces counted identically across 1..32 partitions",
            first.len()
        ))
        },
    );
}
