//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible under `--nocapture`). Every tolerance is exact integer
//! equality; the stated wall-clock budgets are asserted as well.

use fatgraph::cocycle::cocycle_values;
use fatgraph::enumerate::{enumerate, EnumTask};
use fatgraph::examples::{
    example_spine, punctured_balanced_nonzero, punctured_zero_a, punctured_zero_b,
};
use fatgraph::graph::{Dart, Fatgraph, GraphKind};
use fatgraph::marking::{initial_marking, intersection_sign, pair, pair_with_cycle};
use fatgraph::verify;
use fatgraph::xi::{
    check_balanced_criterion, check_punctured_independence, fundamental_cycles, xi, xi_punctured,
};
use std::time::{Duration, Instant};

const SEED: u64 = verify::DEFAULT_SEED;

fn criterion(
    number: u32,
    name: &str,
    budget: Option<Duration>,
    body: impl FnOnce() -> Result<(), String>,
) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|()| match budget {
        Some(limit) if elapsed > limit => Err(format!("budget exceeded: {elapsed:?} > {limit:?}")),
        _ => Ok(()),
    });
    match outcome {
        Ok(()) => println!("criterion {number:02} ({name}): PASS [{elapsed:?}]"),
        Err(e) => {
            println!("criterion {number:02} ({name}): FAIL — {e}");
            panic!("criterion {number:02} ({name}) failed: {e}");
        }
    }
}

fn suite_to_result(outcome: verify::SuiteOutcome) -> Result<(), String> {
    if outcome.ok() {
        Ok(())
    } else {
        Err(format!(
            "{} of {} checks failed; first: {}",
            outcome.failures.len(),
            outcome.checks,
            outcome.failures[0].detail
        ))
    }
}

fn bordered(genus: usize) -> Vec<Fatgraph> {
    enumerate(EnumTask {
        genus,
        kind: GraphKind::Bordered,
        limit: None,
    })
    .unwrap()
}

fn punctured(genus: usize) -> Vec<Fatgraph> {
    enumerate(EnumTask {
        genus,
        kind: GraphKind::Punctured,
        limit: None,
    })
    .unwrap()
}

#[test]
fn c01_enumeration_counts() {
    criterion(
        1,
        "enumeration counts",
        Some(Duration::from_secs(60)),
        || {
            let g1 = bordered(1).len();
            if g1 != 1 {
                return Err(format!("genus-1 census has {g1} classes, expected 1"));
            }
            let g2 = bordered(2).len();
            if g2 != 105 {
                return Err(format!("genus-2 census has {g2} classes, expected 105"));
            }
            // Regression constants for the punctured census, certified by
            // the flip-closure test in the library suite.
            let p1 = punctured(1).len();
            let p2 = punctured(2).len();
            if (p1, p2) != (1, 9) {
                return Err(format!("punctured census ({p1}, {p2}) drifted from (1, 9)"));
            }
            Ok(())
        },
    );
}

#[test]
fn c02_type_counts() {
    criterion(
        2,
        "vertex type counts",
        Some(Duration::from_secs(30)),
        || suite_to_result(verify::run_types(SEED, 1000).map_err(|e| e.to_string())?),
    );
}

#[test]
fn c03_cocycle_relations() {
    criterion(
        3,
        "cocycle relations",
        Some(Duration::from_secs(120)),
        || {
            let outcome = verify::run_relations(SEED, 500).map_err(|e| e.to_string())?;
            suite_to_result(outcome)
        },
    );
}

#[test]
fn c04_delta_xi_identity() {
    criterion(
        4,
        "coboundary identity",
        Some(Duration::from_secs(120)),
        || suite_to_result(verify::run_delta_xi(SEED, 10_000).map_err(|e| e.to_string())?),
    );
}

#[test]
fn c05_worked_example() {
    criterion(5, "worked chain example", None, || {
        suite_to_result(verify::run_example(SEED).map_err(|e| e.to_string())?)
    });
}

#[test]
fn c06_marking_algebra() {
    criterion(6, "marking algebra", None, || {
        suite_to_result(verify::run_marking(SEED, 200).map_err(|e| e.to_string())?)
    });
}

#[test]
fn c07_nontriviality() {
    criterion(7, "mod-2 non-triviality", None, || {
        suite_to_result(verify::run_nontriviality(SEED).map_err(|e| e.to_string())?)
    });
}

#[test]
fn c08_primitivity() {
    criterion(8, "primitivity", None, || {
        suite_to_result(verify::run_primitivity(SEED).map_err(|e| e.to_string())?)
    });
}

#[test]
fn c09_chord_diagram_pairings() {
    criterion(9, "chord-diagram pairings", None, || {
        let mut diagrams = 0usize;
        for genus in 1..=2 {
            for graph in bordered(genus) {
                let bo = graph.boundary_order().map_err(|e| e.to_string())?;
                if !graph.is_chord_diagram(&bo) {
                    continue;
                }
                diagrams += 1;
                let report = graph.validate().map_err(|e| e.to_string())?;
                if report.genus != genus {
                    return Err("census genus drifted".into());
                }
                let m = initial_marking(&graph, &bo).map_err(|e| e.to_string())?;
                let tree = graph.greedy_tree(&bo);
                // The straight tree of a chord diagram holds the first
                // 4g-1 boundary darts.
                for (i, &f) in tree.non_tree.iter().enumerate() {
                    let cyc = &fundamental_cycles(&graph, &bo)[i];
                    for (k, &fk) in tree.non_tree.iter().enumerate() {
                        // (cycle_i . chord_k) = -delta, stated with the
                        // cycle class on the left.
                        let z = fatgraph::xi::cycle_class(&graph, &m, cyc)
                            .map_err(|e| e.to_string())?;
                        let v = pair(&m, &z, m.mu(fk)).map_err(|e| e.to_string())?;
                        let expect = if i == k { -1 } else { 0 };
                        if v != expect {
                            return Err(format!(
                                "cycle {i} pairs {v} with chord {k}, expected {expect}"
                            ));
                        }
                    }
                    let _ = f;
                }
                let x = xi(&graph, &bo, &m).map_err(|e| e.to_string())?;
                let f0 = tree.non_tree[0];
                let v = pair(&m, &x.xi, m.mu(f0)).map_err(|e| e.to_string())?;
                if v != -1 {
                    return Err(format!("(xi . first chord) = {v}, expected -1"));
                }
            }
        }
        if diagrams == 0 {
            return Err("no chord diagrams in the census".into());
        }
        Ok(())
    });
}

#[test]
fn c10_gluing_and_tail_slide() {
    criterion(10, "gluing and tail slide", None, || {
        suite_to_result(verify::run_gluing(SEED, 50).map_err(|e| e.to_string())?)?;
        suite_to_result(verify::run_tailslide(SEED, 100).map_err(|e| e.to_string())?)
    });
}

#[test]
fn c11_punctured_invariant() {
    criterion(11, "punctured invariant", None, || {
        for genus in 1..=2 {
            for graph in punctured(genus) {
                if !check_punctured_independence(&graph).map_err(|e| e.to_string())? {
                    return Err("anchor independence broken".into());
                }
            }
        }
        for (name, graph, want_zero) in [
            ("first zero-invariant spine", punctured_zero_a(), true),
            ("second zero-invariant spine", punctured_zero_b(), true),
            (
                "nonzero balanced spine",
                punctured_balanced_nonzero(),
                false,
            ),
        ] {
            let x = xi_punctured(&graph).map_err(|e| e.to_string())?;
            if x.is_zero() != want_zero {
                return Err(format!("{name}: zero-ness {} unexpected", x.is_zero()));
            }
            if !x.mod2_is_zero() {
                return Err(format!("{name}: mod-2 reduction should vanish"));
            }
        }
        Ok(())
    });
}

#[test]
fn c12_balanced_criterion() {
    criterion(12, "balanced criterion", None, || {
        for genus in 1..=2 {
            for graph in punctured(genus) {
                if !check_balanced_criterion(&graph).map_err(|e| e.to_string())? {
                    return Err(format!("criterion broken at genus {genus}"));
                }
            }
        }
        Ok(())
    });
}

#[test]
fn c13_spin_suite() {
    criterion(13, "spin forms", Some(Duration::from_secs(120)), || {
        suite_to_result(verify::run_spin(SEED).map_err(|e| e.to_string())?)
    });
}

#[test]
fn c14_deterministic_reports() {
    criterion(14, "deterministic reports", None, || {
        let exe = env!("CARGO_BIN_EXE_fatgraph");
        let run = |threads: &str| -> Result<Vec<u8>, String> {
            let out = std::process::Command::new(exe)
                .args(["verify", "all", "--genus", "2", "--exhaustive", "--json"])
                .env("FATGRAPH_THREADS", threads)
                .output()
                .map_err(|e| e.to_string())?;
            if !out.status.success() {
                return Err(format!(
                    "verify exited with {:?}: {}",
                    out.status.code(),
                    String::from_utf8_lossy(&out.stderr)
                ));
            }
            Ok(out.stdout)
        };
        let single = run("1")?;
        let again = run("1")?;
        let parallel = run("4")?;
        if single != again {
            return Err("repeated single-thread runs differ".into());
        }
        if single != parallel {
            return Err("thread count changes the report".into());
        }
        Ok(())
    });
}

// Supplementary checks pinned by the specification's worked values.

#[test]
fn flip_frame_pairings_match_the_worked_case() {
    // Whenever a flip frame sits in the boundary order as a < c < b < d,
    // the pairings are (a.b) = (c.a) = 0, (b.c) = 1, the contracted
    // cocycle is mu(a), and the invariant moves by mu(a) - mu(c).
    let mut hits = 0usize;
    for graph in bordered(2) {
        let bo = graph.boundary_order().unwrap();
        let m = initial_marking(&graph, &bo).unwrap();
        for e in 0..graph.num_edges() {
            let Ok(mv) = graph.flip(e) else { continue };
            let fr = &mv.frame;
            let p = |d: Dart| bo.position[d.0];
            // Accept the frame in either of its two symmetric readings.
            let (a, b, c, _d) = if p(fr.a) < p(fr.c) && p(fr.c) < p(fr.b) && p(fr.b) < p(fr.d) {
                (fr.a, fr.b, fr.c, fr.d)
            } else if p(fr.c) < p(fr.a) && p(fr.a) < p(fr.d) && p(fr.d) < p(fr.b) {
                (fr.c, fr.d, fr.a, fr.b)
            } else {
                continue;
            };
            hits += 1;
            assert_eq!(pair(&m, m.mu(a), m.mu(b)).unwrap(), 0);
            assert_eq!(pair(&m, m.mu(c), m.mu(a)).unwrap(), 0);
            assert_eq!(pair(&m, m.mu(b), m.mu(c)).unwrap(), 1);
            let val = cocycle_values(&m, &mv).unwrap();
            assert_eq!(val.jprime, *m.mu(a));
            let rhs = val.jprime.scale(2).unwrap().sub(&val.m).unwrap();
            assert_eq!(rhs, m.mu(a).sub(m.mu(c)).unwrap());
        }
    }
    assert!(hits > 0, "the worked frame pattern occurs in the census");
}

#[test]
fn glue_preserves_vertex_types() {
    let host = example_spine(2);
    let guest = example_spine(1);
    let (glued, _, _) = host.glue(Dart(6), &guest).unwrap();
    let bo_h = host.boundary_order().unwrap();
    let bo_g = glued.boundary_order().unwrap();
    let types = |g: &Fatgraph, bo| -> Vec<(usize, fatgraph::VertexType)> {
        g.classify_vertices(bo)
            .unwrap()
            .into_iter()
            .map(|f| (f.vertex, f.vtype))
            .collect()
    };
    // Host vertices keep their indices in the glued graph.
    let host_types = types(&host, &bo_h);
    let glued_types = types(&glued, &bo_g);
    for (v, t) in &host_types {
        let found = glued_types.iter().find(|(w, _)| w == v).unwrap();
        assert_eq!(found.1, *t, "host vertex {v} changed type");
    }
    // Guest internal vertices appear after the host block, in order.
    let bo_guest = guest.boundary_order().unwrap();
    let guest_types = types(&guest, &bo_guest);
    let offset = host.num_vertices();
    let mut guest_internal = 0usize;
    for (idx, cyc) in guest.vertex_cycles().iter().enumerate() {
        if cyc.len() == 1 {
            continue;
        }
        let mapped = offset + guest_internal;
        guest_internal += 1;
        let want = guest_types.iter().find(|(w, _)| *w == idx).unwrap().1;
        let found = glued_types.iter().find(|(w, _)| *w == mapped).unwrap().1;
        assert_eq!(found, want, "guest vertex {idx} changed type");
    }
}

#[test]
fn corner_counts_match_the_census() {
    for genus in 1..=2 {
        for graph in bordered(genus) {
            let bo = graph.boundary_order().unwrap();
            assert_eq!(graph.corners(&bo).len(), 3 * (4 * genus - 1));
        }
        for graph in punctured(genus) {
            let bo = graph.boundary_order().unwrap();
            assert_eq!(graph.corners(&bo).len(), graph.num_darts());
        }
    }
}

#[test]
fn path_independence_between_fixed_endpoints() {
    for graph in bordered(2).into_iter().take(12) {
        let bo = graph.boundary_order().unwrap();
        let m = initial_marking(&graph, &bo).unwrap();
        assert!(verify::run_path_independence(&graph, &m).unwrap());
    }
}

#[test]
fn odd_cycles_pair_to_one_across_the_census() {
    for genus in 1..=2 {
        for graph in bordered(genus) {
            let bo = graph.boundary_order().unwrap();
            let m = initial_marking(&graph, &bo).unwrap();
            let cyc = graph.find_odd_edge_cycle(&bo);
            assert_eq!(cyc.len() % 2, 1);
            let x = xi(&graph, &bo, &m).unwrap();
            let v = pair_with_cycle(&graph, &m, &x.xi, &cyc).unwrap();
            assert_eq!(v.rem_euclid(2), 1);
        }
    }
}

#[test]
fn thm_one_flip_from_chord_diagram_hypothesis() {
    // Spines whose first 4g-1 boundary darts are preferred but whose
    // 4g-th is not become chord diagrams after one flip along the extra
    // tree edge.
    let mut hits = 0usize;
    for graph in bordered(2) {
        let bo = graph.boundary_order().unwrap();
        let g = graph.genus();
        let first_ok = bo.order[..4 * g - 1].iter().all(|d| bo.preferred(*d));
        let fourth_not = !bo.preferred(bo.order[4 * g - 1]);
        if !(first_ok && fourth_not) {
            continue;
        }
        assert!(!graph.is_chord_diagram(&bo));
        // The greedy tree holds the first 4g-2 boundary edges plus one
        // more; flipping that extra edge yields a chord diagram.
        let tree = graph.greedy_tree(&bo);
        let leading: Vec<usize> = bo.order[..4 * g - 2].iter().map(|d| d.edge()).collect();
        let extra: Vec<usize> = (0..graph.num_edges())
            .filter(|&e| tree.in_tree[e] && !leading.contains(&e))
            .collect();
        assert_eq!(extra.len(), 1, "exactly one extra tree edge");
        let mv = graph.flip(extra[0]).unwrap();
        let bo2 = mv.result.boundary_order().unwrap();
        assert!(mv.result.is_chord_diagram(&bo2));
        hits += 1;
    }
    assert!(hits > 0, "the hypothesis occurs in the genus-2 census");
}

#[test]
fn tail_attachment_bijects_the_two_censuses() {
    // Attaching a tail at every dart of every punctured class yields
    // exactly the bordered census, and detaching recovers the punctured
    // class: the two enumerations certify each other.
    for genus in 1..=2 {
        let bordered_forms: std::collections::BTreeSet<String> = bordered(genus)
            .iter()
            .map(|g| g.canonical_form().unwrap())
            .collect();
        let mut lifted = std::collections::BTreeSet::new();
        for p in punctured(genus) {
            let p_form = p.canonical_form().unwrap();
            for d in p.darts() {
                let lift = p.attach_tail(d).unwrap();
                lift.validate().unwrap();
                lifted.insert(lift.canonical_form().unwrap());
                let (back, _) = lift.detach_tail().unwrap();
                assert_eq!(back.canonical_form().unwrap(), p_form);
            }
        }
        assert_eq!(lifted, bordered_forms, "genus {genus}");
    }
}

#[test]
fn intersection_signs_agree_with_straight_chord_oracle() {
    // Independent oracle: embed the boundary positions as points in
    // convex position (on an integer parabola), draw each dart's dual
    // chord as the straight segment from its position to its reversal's,
    // and decide crossing with exact cross-product predicates. Crossing
    // orientation gives the sign up to one global factor, fixed once
    // from the first crossing pair and then required everywhere.
    let mut kappa: Option<i64> = None;
    for genus in 1..=2 {
        for graph in bordered(genus) {
            let bo = graph.boundary_order().unwrap();
            for d1 in graph.darts() {
                for d2 in graph.darts() {
                    if d1.edge() == d2.edge() {
                        continue;
                    }
                    let lib = intersection_sign(&bo, d1, d2).unwrap();
                    let geo = segment_cross_sign(&bo, d1, d2);
                    match (lib, geo) {
                        (0, 0) => {}
                        (l, g) if l != 0 && g != 0 => {
                            let k = l / g;
                            match kappa {
                                None => kappa = Some(k),
                                Some(k0) => assert_eq!(
                                    k, k0,
                                    "global sign factor drifted at darts {d1}, {d2}"
                                ),
                            }
                        }
                        _ => panic!("crossing predicate disagreement at darts {d1}, {d2}"),
                    }
                }
            }
        }
    }
    assert!(kappa.is_some(), "some pair of chords crosses");
}

/// Exact segment-intersection sign for the dual chords of two darts,
/// with boundary position k embedded at the convex point (k, k^2).
fn segment_cross_sign(bo: &fatgraph::BoundaryOrder, d1: Dart, d2: Dart) -> i64 {
    let pt = |d: Dart| -> (i128, i128) {
        let k = bo.position[d.0] as i128;
        (k, k * k)
    };
    let (a, b) = (pt(d1), pt(d1.rev()));
    let (c, d) = (pt(d2), pt(d2.rev()));
    let orient = |p: (i128, i128), q: (i128, i128), r: (i128, i128)| -> i128 {
        let v = (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0);
        v.signum()
    };
    let abc = orient(a, b, c);
    let abd = orient(a, b, d);
    let cda = orient(c, d, a);
    let cdb = orient(c, d, b);
    if abc * abd < 0 && cda * cdb < 0 {
        // Proper crossing; orientation of (dir1, dir2) at the crossing.
        let dir1 = (b.0 - a.0, b.1 - a.1);
        let dir2 = (d.0 - c.0, d.1 - c.1);
        (dir1.0 * dir2.1 - dir1.1 * dir2.0).signum() as i64
    } else {
        0
    }
}
