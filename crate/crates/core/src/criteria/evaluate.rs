use std::collections::BTreeSet;

use serde::Serialize;

use crate::census::FaceCensus;
use crate::error::CensusError;
use crate::geometry::find_configuration_centers;
use crate::opt::ConflictBlp;
use crate::planar::{FaceSet, PlanarEmbedding, VertexFaceProfile};

use super::{
    angle_lp_criterion, area_criterion, build_angle_system, find_triangle_chains,
    local_angle_criterion, triangle_chain_criterion, BoundMode, CriterionKind, CriterionVerdict,
    Outcome, Witness,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluateOptions {
    pub criteria: BTreeSet<CriterionKind>,
    pub bound_mode: BoundMode,
    /// Stop a candidate at its first rejection.
    pub short_circuit: bool,
    /// Stop the graph at the first candidate that no criterion rejects. The
    /// report then lists only the candidates evaluated so far.
    pub stop_at_survivor: bool,
}

impl Default for EvaluateOptions {
    fn default() -> Self {
        Self {
            criteria: CriterionKind::ALL.into_iter().collect(),
            bound_mode: BoundMode::default(),
            short_circuit: false,
            stop_at_survivor: false,
        }
    }
}

/// What an exclusion covers. A 3-connected planar graph has one embedding up
/// to reflection, so refuting every face of it refutes the abstract graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    AllEmbeddings,
    GivenEmbedding,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OuterFaceReport {
    pub face: usize,
    pub k: usize,
    pub verdicts: Vec<CriterionVerdict>,
}

impl OuterFaceReport {
    pub fn is_refuted(&self) -> bool {
        self.verdicts.iter().any(CriterionVerdict::is_reject)
    }

    pub fn first_rejection(&self) -> Option<CriterionKind> {
        self.verdicts.iter().find(|v| v.is_reject()).map(|v| v.criterion)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphReport {
    pub graph_index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph_name: Option<String>,
    pub n: usize,
    pub edge_count: usize,
    /// Largest `c <= 3` such that the graph is `c`-connected.
    pub connectivity: usize,
    pub scope: Scope,
    pub excluded: bool,
    pub per_outer_face: Vec<OuterFaceReport>,
    pub rejecting_criteria: BTreeSet<CriterionKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_us: Option<u64>,
}

impl GraphReport {
    /// Criterion that rejects most often as the first rejection of a
    /// candidate; ties go to the earlier criterion.
    pub fn first_rejecting_criterion(&self) -> Option<CriterionKind> {
        let mut counts = [0usize; 4];
        for c in &self.per_outer_face {
            if let Some(k) = c.first_rejection() {
                counts[k as usize] += 1;
            }
        }
        let best = (0..4).max_by_key(|&i| (counts[i], std::cmp::Reverse(i)))?;
        (counts[best] > 0).then_some(CriterionKind::ALL[best])
    }
}

fn skipped(criterion: CriterionKind, reason: &str) -> CriterionVerdict {
    CriterionVerdict {
        criterion,
        outcome: Outcome::Inapplicable,
        witness: Witness::Skipped {
            reason: reason.to_string(),
        },
    }
}

struct Context {
    faces: FaceSet,
    profiles: Vec<VertexFaceProfile>,
    regularity: Option<usize>,
}

impl Context {
    fn new(g: &PlanarEmbedding) -> Self {
        let faces = FaceSet::trace(g);
        let profiles = faces.vertex_face_profiles();
        Self {
            faces,
            profiles,
            regularity: g.regularity(),
        }
    }

    fn candidate(&self, f: usize, options: &EvaluateOptions) -> Result<OuterFaceReport, CensusError> {
        let on = |k: CriterionKind| options.criteria.contains(&k);
        let faces = &self.faces;
        let outer = faces.outer_face_choice(f);
        let census = FaceCensus::new(faces, &outer, self.regularity);
        census.validate()?;
        let mut verdicts = Vec::new();
        let done = |v: &Vec<CriterionVerdict>| {
            options.short_circuit && v.last().is_some_and(CriterionVerdict::is_reject)
        };
        if on(CriterionKind::Area) {
            let centers = find_configuration_centers(faces, &self.profiles, &outer);
            let blp = ConflictBlp::new(&centers, &self.profiles).solve();
            verdicts.push(area_criterion(&census, &blp));
        }
        if on(CriterionKind::TriangleChain) && !done(&verdicts) {
            let chains = find_triangle_chains(faces, &outer);
            verdicts.push(triangle_chain_criterion(&chains, &census));
        }
        let wants_angles = on(CriterionKind::LocalAngle) || on(CriterionKind::AngleLp);
        if wants_angles && !done(&verdicts) {
            match build_angle_system(faces, &outer) {
                Ok(system) => {
                    if on(CriterionKind::LocalAngle) {
                        verdicts.push(local_angle_criterion(&system));
                    }
                    if on(CriterionKind::AngleLp) && !done(&verdicts) {
                        verdicts.push(angle_lp_criterion(&system, options.bound_mode));
                    }
                }
                Err(e) => {
                    for k in [CriterionKind::LocalAngle, CriterionKind::AngleLp] {
                        if on(k) {
                            verdicts.push(skipped(k, &e.to_string()));
                        }
                    }
                }
            }
        }
        Ok(OuterFaceReport {
            face: f,
            k: outer.k,
            verdicts,
        })
    }
}

/// Runs the enabled criteria with face `face` as the outer face.
pub fn evaluate_outer_face(
    g: &PlanarEmbedding,
    face: usize,
    options: &EvaluateOptions,
) -> Result<OuterFaceReport, CensusError> {
    let ctx = Context::new(g);
    assert!(face < ctx.faces.face_count(), "face {face} out of range");
    ctx.candidate(face, options)
}

/// Runs the enabled criteria with every face as the candidate outer face.
/// The graph is excluded iff every candidate receives a rejection.
///
/// Census identities are checked for each candidate; a violation means the
/// input is corrupt and is reported as an error rather than as a verdict.
pub fn evaluate_graph(
    g: &PlanarEmbedding,
    options: &EvaluateOptions,
) -> Result<GraphReport, CensusError> {
    let ctx = Context::new(g);
    let faces = &ctx.faces;
    let connectivity = g.connectivity_level();
    let mut per_outer_face = Vec::with_capacity(faces.face_count());
    for f in 0..faces.face_count() {
        let report = ctx.candidate(f, options)?;
        let survivor = !report.is_refuted();
        per_outer_face.push(report);
        if survivor && options.stop_at_survivor {
            break;
        }
    }
    let excluded = per_outer_face.len() == faces.face_count()
        && per_outer_face.iter().all(OuterFaceReport::is_refuted);
    let rejecting_criteria = per_outer_face
        .iter()
        .flat_map(|c| c.verdicts.iter().filter(|v| v.is_reject()).map(|v| v.criterion))
        .collect();
    Ok(GraphReport {
        graph_index: 0,
        graph_name: g.name().map(str::to_string),
        n: g.vertex_count(),
        edge_count: g.edge_count(),
        connectivity,
        scope: if connectivity >= 3 {
            Scope::AllEmbeddings
        } else {
            Scope::GivenEmbedding
        },
        excluded,
        per_outer_face,
        rejecting_criteria,
        timing_us: None,
    })
}
