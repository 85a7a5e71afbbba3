use matchstick_core::census::FaceCensus;
use matchstick_core::criteria::{
    angle_lp_criterion, build_angle_lp, build_angle_system, evaluate_graph, evaluate_outer_face,
    find_triangle_chains, local_angle_criterion, triangle_chain_criterion, BoundMode,
    CriterionKind, EvaluateOptions, Outcome, Witness,
};
use matchstick_core::fixtures::{fixture, FIXTURES};
use matchstick_core::lattice::{generate_lattice_corpus, LatticeSpec};
use matchstick_core::opt::LpStatus;
use matchstick_core::planar::{FaceSet, PlanarEmbedding};

fn largest_face(faces: &FaceSet) -> usize {
    (0..faces.face_count())
        .max_by_key(|&f| (faces.face_size(f), std::cmp::Reverse(f)))
        .unwrap()
}

fn sample_graphs() -> Vec<PlanarEmbedding> {
    let mut graphs: Vec<PlanarEmbedding> = FIXTURES.iter().map(|f| f.graph()).collect();
    let spec = LatticeSpec {
        seed: 11,
        count: 12,
        cells: 2..=10,
        kind: None,
    };
    graphs.extend(generate_lattice_corpus(&spec).into_iter().map(|l| l.graph));
    graphs
}

#[test]
fn fig2_area_witness() {
    let g = fixture("fig2").unwrap().graph();
    let faces = FaceSet::trace(&g);
    let octagon = (0..faces.face_count()).find(|&f| faces.face_size(f) == 8).unwrap();
    let report = evaluate_outer_face(&g, octagon, &EvaluateOptions::default()).unwrap();
    let area = &report.verdicts[0];
    assert_eq!(area.criterion, CriterionKind::Area);
    assert_eq!(area.outcome, Outcome::Reject);
    let Witness::Area {
        lower_bound_units,
        capacity_units,
        blp_optimum,
        ref configuration_centers,
        ..
    } = area.witness
    else {
        panic!("unexpected witness {:?}", area.witness);
    };
    assert_eq!(lower_bound_units, 12);
    assert!((capacity_units - 11.16).abs() < 1e-9);
    assert_eq!(blp_optimum, 2);
    assert_eq!(configuration_centers.len(), 2);
    assert!(evaluate_graph(&g, &EvaluateOptions::default()).unwrap().excluded);
}

#[test]
fn fig3_is_one_strip() {
    let g = fixture("fig3").unwrap().graph();
    let faces = FaceSet::trace(&g);
    let outer = faces.outer_face_choice(largest_face(&faces));
    let chains = find_triangle_chains(&faces, &outer);
    let longest = chains.iter().max_by_key(|c| c.triangle_count()).unwrap();
    assert_eq!(longest.triangle_count(), 5);
    assert_eq!(longest.bottom_path_length(), 3);
    assert!(!longest.cyclic);
    // k = 7 is below 2s + 2, but the strip is the whole inner region.
    let census = FaceCensus::new(&faces, &outer, g.regularity());
    let verdict = triangle_chain_criterion(&chains, &census);
    assert_eq!(verdict.outcome, Outcome::Pass);
}

#[test]
fn octahedron_has_a_cyclic_strip() {
    let g = fixture("octahedron").unwrap().graph();
    let faces = FaceSet::trace(&g);
    let outer = faces.outer_face_choice(0);
    let chains = find_triangle_chains(&faces, &outer);
    assert!(chains.iter().any(|c| c.cyclic && c.triangle_count() == 6));
    let census = FaceCensus::new(&faces, &outer, g.regularity());
    assert!(census.is_triangulation());
    assert_eq!(triangle_chain_criterion(&chains, &census).outcome, Outcome::Pass);
}

#[test]
fn outer_angle_counts() {
    let k4 = PlanarEmbedding::new(vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]]).unwrap();
    let faces = FaceSet::trace(&k4);
    assert_eq!(faces.face_count(), 4);
    let system = build_angle_system(&faces, &faces.outer_face_choice(0)).unwrap();
    for f in 0..4 {
        assert_eq!(system.outer_angles(f).len(), 6);
    }

    let g = fixture("fig4-left").unwrap().graph();
    let faces = FaceSet::trace(&g);
    let system = build_angle_system(&faces, &faces.outer_face_choice(0)).unwrap();
    let quads: Vec<usize> = (1..faces.face_count()).filter(|&f| faces.face_size(f) == 4).collect();
    let central = quads
        .iter()
        .copied()
        .max_by_key(|&f| system.outer_angles(f).len())
        .unwrap();
    assert_eq!(system.outer_angles(central).len(), 12);
}

#[test]
fn unit_square_allows_right_angles() {
    let square = PlanarEmbedding::new(vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]]).unwrap();
    let faces = FaceSet::trace(&square);
    let system = build_angle_system(&faces, &faces.outer_face_choice(0)).unwrap();
    assert_eq!(local_angle_criterion(&system).outcome, Outcome::Pass);
    let lp = build_angle_lp(&system, BoundMode::Lemma).solve().unwrap();
    assert_eq!(lp.status, LpStatus::Optimal);
    assert_eq!(lp.optimal_value.unwrap().to_string(), "1/2");
}

#[test]
fn fig5_lp_value() {
    let g = fixture("fig5").unwrap().graph();
    let faces = FaceSet::trace(&g);
    let system = build_angle_system(&faces, &faces.outer_face_choice(largest_face(&faces))).unwrap();
    assert_eq!(local_angle_criterion(&system).outcome, Outcome::Pass);
    for mode in [BoundMode::Lemma, BoundMode::Paper] {
        let v = angle_lp_criterion(&system, mode);
        assert_eq!(v.outcome, Outcome::Reject);
        let Witness::AngleLp { optimal_y, .. } = v.witness else {
            panic!("unexpected witness");
        };
        assert_eq!(optimal_y.as_deref(), Some("-1/6"));
    }
}

#[test]
fn local_rejection_implies_lp_rejection() {
    for g in sample_graphs() {
        let faces = FaceSet::trace(&g);
        for f in 0..faces.face_count() {
            let Ok(system) = build_angle_system(&faces, &faces.outer_face_choice(f)) else {
                continue;
            };
            if local_angle_criterion(&system).outcome != Outcome::Reject {
                continue;
            }
            for mode in [BoundMode::Lemma, BoundMode::Paper] {
                let lp = angle_lp_criterion(&system, mode);
                assert_eq!(lp.outcome, Outcome::Reject, "{:?} face {f}", g.name());
            }
        }
    }
}

#[test]
fn reject_witnesses_recheck() {
    for g in sample_graphs() {
        let faces = FaceSet::trace(&g);
        let report = evaluate_graph(&g, &EvaluateOptions::default()).unwrap();
        for cand in &report.per_outer_face {
            for v in cand.verdicts.iter().filter(|v| v.is_reject()) {
                match &v.witness {
                    Witness::Area {
                        lower_bound_units,
                        capacity_units,
                        ..
                    } => assert!(*lower_bound_units as f64 > *capacity_units),
                    Witness::TriangleChain { k, s, .. } => assert!(*k < 2 * s + 2),
                    Witness::FaceAngles { .. } => {}
                    Witness::AngleLp { certificate, .. } => {
                        let system = build_angle_system(&faces, &faces.outer_face_choice(cand.face)).unwrap();
                        let lp = build_angle_lp(&system, BoundMode::Lemma);
                        assert!(!certificate.is_empty());
                        for m in certificate {
                            assert!(lp.constraints().iter().any(|c| c.label == m.row));
                        }
                    }
                    other => panic!("reject with witness {other:?}"),
                }
            }
        }
    }
}

fn signature(g: &PlanarEmbedding) -> (bool, Vec<(usize, Option<CriterionKind>)>) {
    let report = evaluate_graph(g, &EvaluateOptions::default()).unwrap();
    let mut rows: Vec<_> = report
        .per_outer_face
        .iter()
        .map(|c| (c.k, c.first_rejection()))
        .collect();
    rows.sort();
    (report.excluded, rows)
}

#[test]
fn verdicts_ignore_vertex_labels() {
    for f in FIXTURES {
        let g = f.graph();
        let n = g.vertex_count();
        let perm: Vec<usize> = (0..n).map(|v| (v * 5 + 3) % n).collect();
        let mut seen = perm.clone();
        seen.sort_unstable();
        if seen != (0..n).collect::<Vec<_>>() {
            continue;
        }
        assert_eq!(signature(&g), signature(&g.relabeled(&perm)), "{}", f.name);
    }
}

#[test]
fn fixture_verdicts() {
    for f in FIXTURES {
        let report = evaluate_graph(&f.graph(), &EvaluateOptions::default()).unwrap();
        assert_eq!(report.excluded, f.excluded, "{}", f.name);
    }
}
