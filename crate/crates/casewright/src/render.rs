//! Rendering: filtered dot graphs and the plain-text case report.
//!
//! Graph output is deterministic -- nodes and edges are emitted in sorted
//! order -- so renders diff cleanly under version control. An edge appears
//! only when both of its endpoints are part of the selected view.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::analysis::{
    self, evaluate, monitor_obligations, validate, ChallengeState, Diagnostic, Status, StatusMap,
};
use crate::model::{
    ArgumentModel, Availability, ChallengeTarget, ClaimPointKind, Element, ElementKind, ModuleKind,
    ResolutionStrategy,
};
use crate::workflow::stage_gate;

// =====================================================================
// Views
// =====================================================================

/// A filtered perspective on the argument graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum View {
    /// Risk-module elements and their relations only.
    CoreRisk,
    /// The risk argument together with every challenge against it.
    Dialectic,
    /// Confidence modules, assurance claim points and their anchors.
    Confidence,
    /// Operational modules, operational claim points and their anchors.
    Operational,
    /// Everything, clustered per module.
    Full,
}

impl View {
    pub const ALL: [View; 5] = [
        View::CoreRisk,
        View::Dialectic,
        View::Confidence,
        View::Operational,
        View::Full,
    ];

    pub fn name(self) -> &'static str {
        match self {
            View::CoreRisk => "core",
            View::Dialectic => "dialectic",
            View::Confidence => "confidence",
            View::Operational => "operational",
            View::Full => "full",
        }
    }
}

impl std::str::FromStr for View {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "core" => Ok(View::CoreRisk),
            "dialectic" => Ok(View::Dialectic),
            "confidence" => Ok(View::Confidence),
            "operational" => Ok(View::Operational),
            "full" => Ok(View::Full),
            other => Err(format!(
                "unknown view `{other}` (expected core, dialectic, confidence, operational or full)"
            )),
        }
    }
}

fn dot_escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            other => out.push(other),
        }
    }
    out
}

fn element_shape(kind: ElementKind) -> &'static str {
    match kind {
        ElementKind::Goal => "shape=box",
        ElementKind::Strategy => "shape=parallelogram",
        ElementKind::Solution => "shape=circle",
        ElementKind::Context | ElementKind::Assumption | ElementKind::Justification => {
            "shape=box, style=rounded"
        }
    }
}

fn element_node(e: &Element, statuses: &StatusMap) -> String {
    let mut head = e.id.to_string();
    if statuses.elements.get(&e.id) == Some(&Status::Defeated) {
        head.push_str(" [X]");
    }
    format!(
        "\"{}\" [{}, label=\"{}\\n{}\"];",
        e.id,
        element_shape(e.kind),
        dot_escape(&head),
        dot_escape(&e.text)
    )
}

fn challenge_node(model: &ArgumentModel, id: &crate::model::ChallengeId, statuses: &StatusMap) -> String {
    let c = &model.challenges[id];
    let state = statuses.challenges.get(id).copied();
    let mut head = id.to_string();
    if state == Some(ChallengeState::Defeated) {
        head.push_str(" [X]");
    }
    let kind = match c.kind {
        crate::model::ChallengeKind::Rebut => "rebuts",
        crate::model::ChallengeKind::Undercut => "undercuts",
    };
    let mut lines = vec![
        head,
        match state {
            Some(s) => format!("{kind} {} ({s})", c.target),
            None => format!("{kind} {}", c.target),
        },
        c.text.clone(),
    ];
    if let Some(resolutions) = model.resolutions.get(id) {
        for r in resolutions {
            let line = match &r.strategy {
                ResolutionStrategy::Rebuttal { rebutting } => format!("-> rebuttal {rebutting}"),
                ResolutionStrategy::Change { implemented, .. } => {
                    if *implemented {
                        "-> change implemented".to_string()
                    } else {
                        "-> change proposed".to_string()
                    }
                }
                ResolutionStrategy::ConfidenceArgument { reference } => {
                    format!("-> confidence {reference}")
                }
                ResolutionStrategy::OperationalArgument { reference } => {
                    format!("-> operational {reference}")
                }
                ResolutionStrategy::Monitoring { monitor } => format!("-> monitoring {monitor}"),
            };
            lines.push(line);
        }
    }
    if model.deferrals.contains_key(id) {
        lines.push("deferred".to_string());
    }
    let label = lines
        .iter()
        .map(|l| dot_escape(l))
        .collect::<Vec<_>>()
        .join("\\n");
    format!("\"{id}\" [shape=box, style=dashed, label=\"{label}\"];")
}

fn claim_point_node(cp: &crate::model::ClaimPoint) -> String {
    format!(
        "\"{}\" [shape=diamond, label=\"{}\\n{} -> {}\\n{}\"];",
        cp.id,
        cp.id,
        cp.kind.keyword(),
        cp.target_module,
        dot_escape(&cp.claim_text)
    )
}

/// Render one view of the model as Graphviz dot text. Status annotations are
/// included when evaluation succeeds and left off when it cannot run.
pub fn render_graph(model: &ArgumentModel, view: View) -> String {
    let statuses = evaluate(model).unwrap_or_default();

    let module_kinds: &[ModuleKind] = match view {
        View::CoreRisk | View::Dialectic => &[ModuleKind::Risk],
        View::Confidence => &[ModuleKind::Confidence],
        View::Operational => &[ModuleKind::Operational],
        View::Full => &[ModuleKind::Risk, ModuleKind::Confidence, ModuleKind::Operational],
    };
    let include_challenges = matches!(view, View::Dialectic | View::Full);
    let cp_kinds: &[ClaimPointKind] = match view {
        View::Confidence => &[ClaimPointKind::Acp],
        View::Operational => &[ClaimPointKind::Ocp],
        View::Full => &[ClaimPointKind::Acp, ClaimPointKind::Ocp],
        _ => &[],
    };

    // The node set and, for the flat views, each node's rendered line.
    let mut nodes: BTreeSet<String> = BTreeSet::new();
    let mut node_lines: BTreeMap<String, String> = BTreeMap::new();

    for module in model.modules.values() {
        if !module_kinds.contains(&module.kind) {
            continue;
        }
        for e in module.elements.values() {
            nodes.insert(e.id.to_string());
            node_lines.insert(e.id.to_string(), element_node(e, &statuses));
        }
    }
    if !cp_kinds.is_empty() {
        for cp in model.claim_points.values() {
            if !cp_kinds.contains(&cp.kind) {
                continue;
            }
            nodes.insert(cp.id.to_string());
            node_lines.insert(cp.id.to_string(), claim_point_node(cp));
            // Pull in the anchor so the attachment is visible even when it
            // lives in a module outside this view.
            let anchor = cp.attached_to.anchor();
            if let Some(e) = model.element(anchor) {
                if nodes.insert(anchor.to_string()) {
                    node_lines.insert(anchor.to_string(), element_node(e, &statuses));
                }
            }
        }
    }
    if include_challenges {
        for id in model.challenges.keys() {
            nodes.insert(id.to_string());
            node_lines.insert(id.to_string(), challenge_node(model, id, &statuses));
        }
    }

    // Edges, kept sorted; emitted only when both endpoints are present.
    let mut edges: BTreeSet<String> = BTreeSet::new();
    let edge = |edges: &mut BTreeSet<String>, from: &str, to: &str, attrs: &str| {
        if nodes.contains(from) && nodes.contains(to) {
            if attrs.is_empty() {
                edges.insert(format!("\"{from}\" -> \"{to}\";"));
            } else {
                edges.insert(format!("\"{from}\" -> \"{to}\" [{attrs}];"));
            }
        }
    };
    for module in model.modules.values() {
        if !module_kinds.contains(&module.kind) {
            continue;
        }
        for r in &module.relations {
            match r.kind {
                crate::model::RelationKind::SupportedBy => {
                    edge(&mut edges, r.from.as_str(), r.to.as_str(), "");
                }
                crate::model::RelationKind::InContextOf => {
                    edge(&mut edges, r.from.as_str(), r.to.as_str(), "arrowhead=empty");
                }
            }
        }
    }
    if include_challenges {
        for (id, c) in &model.challenges {
            let (to, label) = match &c.target {
                ChallengeTarget::Element(e) => (e.to_string(), "rebuts"),
                ChallengeTarget::Relation(from, _) => (from.to_string(), "undercuts"),
                ChallengeTarget::Challenge(t) => (t.to_string(), "rebuts"),
            };
            edge(
                &mut edges,
                id.as_str(),
                &to,
                &format!("style=dashed, label=\"{label}\""),
            );
        }
    }
    if !cp_kinds.is_empty() {
        for cp in model.claim_points.values() {
            if !cp_kinds.contains(&cp.kind) {
                continue;
            }
            edge(
                &mut edges,
                cp.attached_to.anchor().as_str(),
                cp.id.as_str(),
                "style=dotted",
            );
            if let Some(root) = model
                .modules
                .get(&cp.target_module)
                .and_then(|m| m.root())
            {
                edge(&mut edges, cp.id.as_str(), root.as_str(), "style=dotted");
            }
        }
    }

    let mut out = format!("digraph \"{}\" {{\n  rankdir=TB;\n", dot_escape(&model.name));
    if view == View::Full {
        for (module_id, module) in &model.modules {
            let _ = writeln!(out, "  subgraph \"cluster_{module_id}\" {{");
            let _ = writeln!(
                out,
                "    label=\"{module_id} ({})\";",
                module.kind.keyword()
            );
            for e in module.elements.values() {
                let _ = writeln!(out, "    {}", element_node(e, &statuses));
            }
            out.push_str("  }\n");
        }
        for id in model.challenges.keys() {
            let _ = writeln!(out, "  {}", challenge_node(model, id, &statuses));
        }
        for cp in model.claim_points.values() {
            let _ = writeln!(out, "  {}", claim_point_node(cp));
        }
    } else {
        for line in node_lines.values() {
            let _ = writeln!(out, "  {line}");
        }
    }
    for e in &edges {
        let _ = writeln!(out, "  {e}");
    }
    out.push_str("}\n");
    out
}

// =====================================================================
// Report
// =====================================================================

/// The plain-text case report. Requires a well-formed model: validation
/// errors are returned instead of a report.
pub fn render_report(model: &ArgumentModel) -> Result<String, Vec<Diagnostic>> {
    let validation = validate(model);
    if !validation.is_empty() {
        return Err(validation);
    }
    let statuses = evaluate(model)?;

    let mut out = String::new();
    let _ = writeln!(out, "case: {}", model.name);
    let _ = writeln!(
        out,
        "stage: {}  iteration: {}",
        model.workflow.current_stage, model.workflow.iteration
    );

    let _ = writeln!(out, "\n== module status ==");
    for (id, module) in &model.modules {
        let status = statuses
            .modules
            .get(id)
            .copied()
            .unwrap_or(Status::Undeveloped);
        let _ = writeln!(out, "{id} {}: {status}", module.kind.keyword());
    }

    let _ = writeln!(out, "\n== challenges ==");
    let mut open = 0usize;
    let mut mitigated = 0usize;
    let mut defeated = 0usize;
    for id in model.challenges.keys() {
        if !model.is_primary_challenge(id) {
            continue;
        }
        match statuses.challenges.get(id) {
            Some(ChallengeState::Open) | None => open += 1,
            Some(ChallengeState::Mitigated) => mitigated += 1,
            Some(ChallengeState::Defeated) => defeated += 1,
        }
    }
    let _ = writeln!(out, "open: {open}  mitigated: {mitigated}  defeated: {defeated}");
    for (id, c) in &model.challenges {
        let kind = match c.kind {
            crate::model::ChallengeKind::Rebut => "rebuts",
            crate::model::ChallengeKind::Undercut => "undercuts",
        };
        let state = statuses
            .challenges
            .get(id)
            .copied()
            .unwrap_or(ChallengeState::Open);
        let _ = writeln!(out, "{id} {kind} {}: {state}", c.target);
    }

    let _ = writeln!(out, "\n== resolutions ==");
    let mut any_resolution = false;
    for (ch, resolutions) in &model.resolutions {
        for r in resolutions {
            any_resolution = true;
            let body = match &r.strategy {
                ResolutionStrategy::Rebuttal { rebutting } => format!("rebuttal {rebutting}"),
                ResolutionStrategy::Change {
                    record,
                    implemented,
                } => format!(
                    "change \"{record}\" {}",
                    if *implemented { "implemented" } else { "proposed" }
                ),
                ResolutionStrategy::ConfidenceArgument { reference } => {
                    format!("confidence {reference}")
                }
                ResolutionStrategy::OperationalArgument { reference } => {
                    format!("operational {reference}")
                }
                ResolutionStrategy::Monitoring { monitor } => format!("monitoring {monitor}"),
            };
            if r.note.is_empty() {
                let _ = writeln!(out, "{ch} by {body}");
            } else {
                let _ = writeln!(out, "{ch} by {body} -- {}", r.note);
            }
        }
    }
    for (ch, note) in &model.deferrals {
        any_resolution = true;
        let _ = writeln!(out, "{ch} deferred: {note}");
    }
    if !any_resolution {
        let _ = writeln!(out, "(none)");
    }

    let _ = writeln!(out, "\n== monitor obligations ==");
    let obligations = monitor_obligations(model);
    if obligations.is_empty() {
        let _ = writeln!(out, "(none)");
    }
    for (id, m) in &obligations {
        let _ = writeln!(
            out,
            "{id} watches {} ({}): {}",
            m.watches.id_str(),
            m.status.keyword(),
            m.description
        );
    }

    let _ = writeln!(out, "\n== pending operational evidence ==");
    let mut pending_lines = Vec::new();
    for module in model.modules.values() {
        for e in module.elements.values() {
            if let Some(ev) = &e.evidence {
                if ev.availability == Availability::OperationalPending {
                    pending_lines.push(format!("{} \"{}\"", e.id, ev.label));
                }
            }
        }
    }
    pending_lines.sort();
    if pending_lines.is_empty() {
        let _ = writeln!(out, "(none)");
    }
    for line in pending_lines {
        let _ = writeln!(out, "{line}");
    }

    let _ = writeln!(out, "\n== stage gates ==");
    for stage in 1..=6u8 {
        let diags = stage_gate(model, stage);
        if diags.is_empty() {
            let _ = writeln!(out, "stage {stage}: ready");
        } else {
            let _ = writeln!(out, "stage {stage}: blocked");
            for d in diags {
                let _ = writeln!(out, "  {}: {}", d.code, d.message);
            }
        }
    }
    Ok(out)
}

/// Every challenge's state alongside the report, for tools that want both.
pub fn challenge_state_lines(model: &ArgumentModel) -> Result<Vec<String>, Vec<Diagnostic>> {
    let states = analysis::challenge_states(model)?;
    Ok(states
        .iter()
        .map(|(id, s)| format!("{id}: {s}"))
        .collect())
}

// =====================================================================
// Tests
// =====================================================================
