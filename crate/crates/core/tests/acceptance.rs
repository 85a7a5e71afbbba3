//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use matchstick_core::census::FaceCensus;
use matchstick_core::criteria::{
    angle_lp_criterion, build_angle_lp, build_angle_system, evaluate_graph, evaluate_outer_face,
    local_angle_criterion, BoundMode, CriterionKind, EvaluateOptions, Outcome, Witness,
};
use matchstick_core::fixtures::{antiprism, fixture, FIXTURES};
use matchstick_core::geometry::{find_configuration_centers, max_area_units};
use matchstick_core::lattice::{generate_lattice_corpus, LatticeKind, LatticeSpec};
use matchstick_core::opt::lp::{int, rat, Rational};
use matchstick_core::opt::{
    Certificate, ConflictBlp, ConflictGraph, LpStatus, RationalLp, Relation,
};
use matchstick_core::pipeline::{run_filter, FilterOptions, RunStats};
use matchstick_core::planar::{parse_planar_code, serialize_planar_code, FaceSet, PlanarEmbedding};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn largest_face(faces: &FaceSet) -> usize {
    (0..faces.face_count())
        .max_by_key(|&f| (faces.face_size(f), std::cmp::Reverse(f)))
        .unwrap()
}

/// Size of a maximum independent set by dynamic programming over subsets.
fn brute_force_mis(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> usize {
    let mut nbr = vec![0u32; n];
    for u in 0..n {
        for v in 0..n {
            if u != v && adjacent(u, v) {
                nbr[u] |= 1 << v;
            }
        }
    }
    let mut independent = vec![false; 1 << n];
    independent[0] = true;
    let mut best = 0;
    for mask in 1usize..(1 << n) {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        independent[mask] = independent[rest] && nbr[v] & mask as u32 == 0;
        if independent[mask] {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

fn area_table() -> Check {
    let printed = [
        1.00, 2.31, 3.98, 6.00, 8.40, 11.16, 14.28, 17.77, 21.63, 25.86, 30.46, 35.42,
    ];
    let mut worst: f64 = 0.0;
    for (k, p) in (3..=14).zip(printed) {
        let a = max_area_units(k).map_err(|e| e.to_string())?;
        let diff = (a.rounded - p).abs();
        ensure!(diff <= 0.005, "k={k}: {} vs {p}", a.rounded);
        let cot = 1.0 / (std::f64::consts::PI / k as f64).tan();
        let back = a.value * 3f64.sqrt() / k as f64;
        ensure!(((back - cot) / cot).abs() < 1e-12, "k={k}: inconsistent with cot(pi/k)");
        worst = worst.max(diff);
    }
    Ok(format!("k=3..14 match, largest deviation {worst:.3}"))
}

fn fig4_local_angles() -> Check {
    let mut notes = Vec::new();
    for name in ["fig4-left", "fig4-right"] {
        let g = fixture(name).map_err(|e| e.to_string())?.graph();
        let faces = FaceSet::trace(&g);
        let outer = largest_face(&faces);
        let system = build_angle_system(&faces, &faces.outer_face_choice(outer)).map_err(|e| e.to_string())?;
        let local = local_angle_criterion(&system);
        ensure!(local.outcome == Outcome::Reject, "{name}: local angle criterion passes");
        let report = evaluate_graph(&g, &EvaluateOptions::default()).map_err(|e| e.to_string())?;
        ensure!(report.excluded, "{name}: not excluded");
        notes.push(format!("{name} k={}", faces.face_size(outer)));
    }
    Ok(format!("{} rejected locally and excluded", notes.join(", ")))
}

fn fig5_angle_lp() -> Check {
    let g = fixture("fig5").map_err(|e| e.to_string())?.graph();
    let faces = FaceSet::trace(&g);
    let system = build_angle_system(&faces, &faces.outer_face_choice(largest_face(&faces)))
        .map_err(|e| e.to_string())?;
    ensure!(
        local_angle_criterion(&system).outcome == Outcome::Pass,
        "local angle criterion rejects"
    );
    let mut values = Vec::new();
    for mode in [BoundMode::Paper, BoundMode::Lemma] {
        let verdict = angle_lp_criterion(&system, mode);
        ensure!(verdict.outcome == Outcome::Reject, "{mode} mode passes");
        let lp = build_angle_lp(&system, mode);
        let outcome = lp.solve().map_err(|e| e.to_string())?;
        outcome.verify(&lp).map_err(|e| e.to_string())?;
        let y = match (&outcome.status, &outcome.certificate) {
            (LpStatus::Infeasible, Certificate::Farkas(_)) => "infeasible".to_string(),
            (LpStatus::Optimal, Certificate::Dual(_)) => {
                let y = outcome.optimal_value.clone().unwrap();
                ensure!(!y.is_positive(), "{mode} mode optimum {y} is positive");
                format!("y*={y}")
            }
            other => return Err(format!("unexpected outcome {other:?}")),
        };
        values.push(format!("{mode} {y}"));
    }
    // Pinned: the lemma bound rejects this fixture as well.
    ensure!(values[1] == "lemma y*=-1/6", "lemma mode changed: {}", values[1]);
    Ok(format!("local passes; {}; certificates verified", values.join(", ")))
}

fn fig2_area() -> Check {
    let g = fixture("fig2").map_err(|e| e.to_string())?.graph();
    let faces = FaceSet::trace(&g);
    let octagon = (0..faces.face_count())
        .find(|&f| faces.face_size(f) == 8)
        .ok_or("no 8-gon face")?;
    let report = evaluate_outer_face(&g, octagon, &EvaluateOptions::default()).map_err(|e| e.to_string())?;
    let area = report
        .verdicts
        .iter()
        .find(|v| v.criterion == CriterionKind::Area)
        .ok_or("no area verdict")?;
    ensure!(area.outcome == Outcome::Reject, "area criterion passes");
    let Witness::Area {
        lower_bound_units,
        capacity_units,
        blp_optimum,
        ..
    } = area.witness
    else {
        return Err(format!("unexpected witness {:?}", area.witness));
    };
    ensure!(lower_bound_units == 12, "lower bound {lower_bound_units}");
    ensure!((capacity_units - 11.16).abs() < 1e-9, "capacity {capacity_units}");
    let profiles = faces.vertex_face_profiles();
    let centers = find_configuration_centers(&faces, &profiles, &faces.outer_face_choice(octagon));
    let blp = ConflictBlp::new(&centers, &profiles);
    let brute = brute_force_mis(blp.eligible_vertices.len(), |u, v| blp.conflicts.adjacent(u, v));
    ensure!(blp_optimum == 2 && brute == 2, "BLP optimum {blp_optimum}, brute force {brute}");
    let excluded = evaluate_graph(&g, &EvaluateOptions::default()).map_err(|e| e.to_string())?.excluded;
    ensure!(excluded, "fig2 not excluded");
    Ok(format!(
        "lower bound {lower_bound_units} > {capacity_units:.2}, BLP optimum 2 over {} centers (brute force agrees), excluded",
        blp.eligible_vertices.len()
    ))
}

fn octahedron_area() -> Check {
    let g = fixture("octahedron").map_err(|e| e.to_string())?.graph();
    let report = evaluate_graph(&g, &EvaluateOptions::default()).map_err(|e| e.to_string())?;
    ensure!(report.excluded, "not excluded");
    for cand in &report.per_outer_face {
        let area = &cand.verdicts[0];
        ensure!(area.criterion == CriterionKind::Area && area.outcome == Outcome::Reject, "face {} survives area", cand.face);
        let Witness::Area { lower_bound_units, capacity_units, .. } = area.witness else {
            return Err("unexpected witness".into());
        };
        ensure!(lower_bound_units == 7 && (capacity_units - 1.0).abs() < 1e-9, "face {}: {lower_bound_units} vs {capacity_units}", cand.face);
    }
    Ok(format!("7 > 1.00 for all {} candidates", report.per_outer_face.len()))
}

fn soundness() -> Check {
    let spec = LatticeSpec {
        seed: 2024,
        count: 100,
        cells: 3..=36,
        kind: None,
    };
    let corpus = generate_lattice_corpus(&spec);
    let kinds: BTreeSet<LatticeKind> = corpus.iter().map(|l| l.kind).collect();
    ensure!(kinds.len() == 2, "corpus uses only {kinds:?}");
    let (lo, hi) = corpus
        .iter()
        .map(|l| l.graph.vertex_count())
        .fold((usize::MAX, 0), |(a, b), n| (a.min(n), b.max(n)));
    ensure!(lo >= 5 && hi <= 80, "vertex counts {lo}..{hi}");
    for mode in [BoundMode::Lemma, BoundMode::Paper] {
        let all = EvaluateOptions {
            bound_mode: mode,
            ..EvaluateOptions::default()
        };
        let scan = EvaluateOptions {
            stop_at_survivor: true,
            ..all.clone()
        };
        for l in &corpus {
            let g = &l.graph;
            let faces = FaceSet::trace(g);
            let outer = largest_face(&faces);
            let cand = evaluate_outer_face(g, outer, &all).map_err(|e| e.to_string())?;
            if let Some(v) = cand.verdicts.iter().find(|v| v.is_reject()) {
                return Err(format!("{:?} ({mode}): {} rejects the true outer face", g.name(), v.criterion));
            }
            let report = evaluate_graph(g, &scan).map_err(|e| e.to_string())?;
            ensure!(!report.excluded, "{:?} ({mode}) excluded", g.name());
        }
    }
    Ok(format!("100 graphs, {lo}..{hi} vertices, square and triangular, both bound modes"))
}

fn random_rational(rng: &mut ChaCha8Rng, span: i64) -> Rational {
    rat(rng.gen_range(-span..=span), rng.gen_range(1..=3))
}

/// Solves a square system exactly; `None` if singular.
fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let sub = &f * &a[col][c];
                    a[r][c] -= sub;
                }
                let sub = &f * &b[col];
                b[r] -= sub;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Optimum of a bounded LP by enumerating basic solutions; `None` if infeasible.
fn vertex_optimum(lp: &RationalLp) -> Option<Rational> {
    let n = lp.variable_count();
    let mut rows: Vec<(Vec<Rational>, Rational)> = lp
        .constraints()
        .iter()
        .map(|c| {
            let mut a = vec![Rational::zero(); n];
            for (j, v) in &c.terms {
                a[*j] += v;
            }
            (a, c.rhs.clone())
        })
        .collect();
    for j in (0..n).filter(|&j| lp.is_nonnegative(j)) {
        let mut a = vec![Rational::zero(); n];
        a[j] = int(1);
        rows.push((a, Rational::zero()));
    }
    let mut best: Option<Rational> = None;
    let m = rows.len();
    let mut pick: Vec<usize> = (0..n).collect();
    if m < n {
        return None;
    }
    loop {
        let a = pick.iter().map(|&i| rows[i].0.clone()).collect();
        let b = pick.iter().map(|&i| rows[i].1.clone()).collect();
        if let Some(x) = solve_square(a, b) {
            if lp.is_feasible(&x) {
                let v = lp.objective_at(&x);
                if best.as_ref().is_none_or(|b| v > *b) {
                    best = Some(v);
                }
            }
        }
        // Next n-subset of 0..m in lexicographic order.
        let Some(i) = (0..n).rev().find(|&i| pick[i] < m - n + i) else {
            return best;
        };
        pick[i] += 1;
        for k in i + 1..n {
            pick[k] = pick[k - 1] + 1;
        }
    }
}

fn random_lp(rng: &mut ChaCha8Rng, boxed: bool) -> RationalLp {
    let mut lp = RationalLp::new();
    let n = rng.gen_range(1..=3);
    for j in 0..n {
        if rng.gen_bool(0.5) {
            lp.add_nonnegative_variable(format!("x{j}"));
        } else {
            lp.add_variable(format!("x{j}"));
        }
    }
    let objective = (0..n).map(|j| (j, random_rational(rng, 3))).collect();
    lp.set_objective(objective);
    for i in 0..rng.gen_range(1..=4) {
        let mut terms = Vec::new();
        for j in 0..n {
            if rng.gen_bool(0.8) {
                terms.push((j, random_rational(rng, 3)));
            }
        }
        let relation = [Relation::Le, Relation::Eq, Relation::Ge][rng.gen_range(0..3)];
        lp.add_constraint(format!("r{i}"), terms, relation, random_rational(rng, 4));
    }
    if boxed {
        for j in 0..n {
            lp.add_lower_bound(j, int(-5));
            lp.add_upper_bound(j, int(5));
        }
    }
    lp
}

fn solver_exactness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut counts = [0usize; 3];
    for i in 0..1000 {
        let boxed = i % 2 == 0;
        let lp = random_lp(&mut rng, boxed);
        let outcome = lp.solve().map_err(|e| format!("LP {i}: {e}"))?;
        outcome.verify(&lp).map_err(|e| format!("LP {i}: {e}"))?;
        counts[outcome.status as usize] += 1;
        if boxed {
            let oracle = vertex_optimum(&lp);
            ensure!(
                oracle == outcome.optimal_value,
                "LP {i}: simplex {:?}, vertex enumeration {:?}\n{}",
                outcome.optimal_value,
                oracle,
                lp.to_text()
            );
        }
    }
    let mut largest = 0;
    for i in 0..500 {
        let n = rng.gen_range(1..=18);
        let density = rng.gen_range(0.05..0.6);
        let mut g = ConflictGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(density) {
                    g.add_edge(u, v);
                }
            }
        }
        let bnb = g.max_independent_set();
        let brute = brute_force_mis(n, |u, v| g.adjacent(u, v));
        ensure!(bnb.optimum == brute, "MIS {i}: branch and bound {} vs brute force {brute}", bnb.optimum);
        ensure!(
            bnb.chosen.len() == bnb.optimum && g.is_independent(&bnb.chosen),
            "MIS {i}: chosen set invalid"
        );
        largest = largest.max(n);
    }
    Ok(format!(
        "1000 LPs ({} optimal, {} infeasible, {} unbounded) certified, 500 bounded ones match vertex enumeration; 500 MIS up to {largest} vertices match brute force",
        counts[0], counts[1], counts[2]
    ))
}

fn structural_identities() -> Check {
    let mut graphs: Vec<PlanarEmbedding> = FIXTURES.iter().map(|f| f.graph()).collect();
    let spec = LatticeSpec {
        seed: 5,
        count: 200,
        cells: 1..=40,
        kind: None,
    };
    graphs.extend(generate_lattice_corpus(&spec).into_iter().map(|l| l.graph));
    graphs.extend((3..=20).map(antiprism));
    let mut regular = 0;
    for g in &graphs {
        let faces = FaceSet::trace(g);
        let sum: usize = faces.face_sizes().sum();
        ensure!(sum == 2 * g.edge_count(), "{:?}: face sizes sum to {sum}", g.name());
        let euler = g.vertex_count() as i64 - g.edge_count() as i64 + faces.face_count() as i64;
        ensure!(euler == 2, "{:?}: V - E + F = {euler}", g.name());
        if g.regularity().is_some() {
            regular += 1;
            for f in 0..faces.face_count() {
                let census = FaceCensus::new(&faces, &faces.outer_face_choice(f), g.regularity());
                for check in census.regular_identities().map_err(|e| e.to_string())? {
                    ensure!(check.holds, "{:?}: {} ({} vs {})", g.name(), check.name, check.lhs, check.rhs);
                }
            }
        }
    }
    Ok(format!("{} graphs, {regular} regular", graphs.len()))
}

/// Relabelled octahedra and antiprisms: 3-connected 4-regular planar graphs
/// that the area criterion refutes immediately.
fn four_regular_stream(count: usize) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut base = vec![fixture("octahedron").unwrap().graph()];
    base.extend((4..=8).map(antiprism));
    let graphs: Vec<PlanarEmbedding> = (0..count)
        .map(|i| {
            let g = &base[i % base.len()];
            let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
            for j in (1..perm.len()).rev() {
                perm.swap(j, rng.gen_range(0..=j));
            }
            g.relabeled(&perm)
        })
        .collect();
    serialize_planar_code(&graphs).unwrap()
}

fn stream_protocol() -> Check {
    let count = 20_000;
    let bytes = four_regular_stream(count);
    let mut options = FilterOptions::default();
    options.evaluate.short_circuit = true;
    let run = |options: &FilterOptions| -> Result<(Vec<u8>, RunStats), String> {
        let mut out = Vec::new();
        let outcome = run_filter(&bytes[..], &mut out, options).map_err(|e| e.to_string())?;
        Ok((out, outcome.stats))
    };
    let (first, stats) = run(&options)?;
    ensure!(stats.graphs_read == count && stats.excluded_count == count, "{stats:?}");
    let mut best = stats.graphs_per_second;
    for jobs in [1, 3] {
        let (out, again) = run(&FilterOptions { jobs, ..options.clone() })?;
        ensure!(out == first, "output differs with {jobs} workers");
        ensure!(
            again.first_rejection_per_candidate == stats.first_rejection_per_candidate
                && again.first_rejection_per_graph == stats.first_rejection_per_graph,
            "histogram changed between runs"
        );
        best = best.max(again.graphs_per_second);
    }
    ensure!(best >= 1e4, "throughput {best:.0} graphs/s");
    Ok(format!(
        "{count} graphs excluded, byte-identical across runs and worker counts, histogram {:?}, {best:.0} graphs/s",
        stats.first_rejection_per_graph
    ))
}

fn planar_code_round_trip() -> Check {
    let spec = LatticeSpec {
        seed: 17,
        count: 1000,
        cells: 1..=30,
        kind: None,
    };
    let mut graphs: Vec<PlanarEmbedding> = generate_lattice_corpus(&spec).into_iter().map(|l| l.graph).collect();
    graphs.extend(FIXTURES.iter().map(|f| f.graph()));
    graphs.extend([antiprism(4), antiprism(150)]);
    let bytes = serialize_planar_code(&graphs).map_err(|e| e.to_string())?;
    let parsed = parse_planar_code(&bytes).map_err(|e| e.to_string())?;
    ensure!(parsed.len() == graphs.len(), "{} records back", parsed.len());
    for (a, b) in graphs.iter().zip(&parsed) {
        ensure!(a.rotations() == b.rotations(), "rotation system changed");
    }
    let again = serialize_planar_code(&parsed).map_err(|e| e.to_string())?;
    ensure!(again == bytes, "bytes differ after round trip");
    Ok(format!("{} records, {} bytes, identical", graphs.len(), bytes.len()))
}

fn main() -> ExitCode {
    let checks: [(&str, fn() -> Check, Duration); 10] = [
        ("area-table", area_table, Duration::from_secs(1)),
        ("fig4-local-angle", fig4_local_angles, Duration::from_secs(1)),
        ("fig5-angle-lp", fig5_angle_lp, Duration::from_secs(1)),
        ("fig2-area-blp", fig2_area, Duration::from_secs(1)),
        ("octahedron-area", octahedron_area, Duration::from_secs(1)),
        ("lattice-soundness", soundness, Duration::from_secs(30)),
        ("solver-exactness", solver_exactness, Duration::from_secs(60)),
        ("structural-identities", structural_identities, Duration::from_secs(10)),
        ("stream-protocol", stream_protocol, Duration::from_secs(60)),
        ("planar-code-round-trip", planar_code_round_trip, Duration::from_secs(5)),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in checks.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > *budget => Err(format!("{detail}; took {elapsed:.2?}, budget {budget:?}")),
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", checks.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
