//! The staged development method: gates, reviews, update triggers, and the
//! event log that records how a case moved through the stages.
//!
//! The method has six stages:
//!
//! 1. structure the argument
//! 2. challenge it
//! 3. answer or acknowledge every challenge
//! 4. make the answers concrete (monitors declared, promised changes landed)
//! 5. reach a clean, fully mitigated argument
//! 6. close an independent review
//!
//! [`stage_gate`] reports what blocks entry to a stage; the operations in this
//! module are pure like the model's: they return a new model or an error, and
//! every successful operation appends one event to the workflow log.

use std::collections::{BTreeMap, BTreeSet};

use crate::analysis::{
    self, ChallengeState, Diagnostic, Severity, Status,
};
use crate::model::{
    ArgumentModel, Challenge, ChallengeId, ElementId, ElementKind, ModelError, ModuleKind,
    Provenance, RelationKind, ResolutionStrategy, ReviewId,
};

// =====================================================================
// Workflow state and events
// =====================================================================

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkflowEvent {
    pub seq: u64,
    pub timestamp: String,
    pub actor: String,
    pub action: String,
    pub subjects: Vec<String>,
}

impl WorkflowEvent {
    /// One tab-separated log line: `timestamp<TAB>actor<TAB>action<TAB>a,b,c`.
    pub fn log_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}",
            self.timestamp,
            self.actor,
            self.action,
            self.subjects.join(",")
        )
    }

    /// Parse a log line back into an event (seq is assigned on replay).
    pub fn parse_line(line: &str) -> Result<WorkflowEvent, WorkflowError> {
        let mut parts = line.splitn(4, '\t');
        let timestamp = parts.next().unwrap_or_default();
        let actor = parts.next();
        let action = parts.next();
        let (Some(actor), Some(action)) = (actor, action) else {
            return Err(WorkflowError::ReplayMismatch(format!(
                "malformed log line `{line}`"
            )));
        };
        let subjects: Vec<String> = parts
            .next()
            .unwrap_or_default()
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|s| s.to_string())
            .collect();
        Ok(WorkflowEvent {
            seq: 0,
            timestamp: timestamp.to_string(),
            actor: actor.to_string(),
            action: action.to_string(),
            subjects,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkflowState {
    pub current_stage: u8,
    pub iteration: u32,
    pub events: Vec<WorkflowEvent>,
}

impl WorkflowState {
    pub fn initial() -> Self {
        WorkflowState {
            current_stage: 1,
            iteration: 0,
            events: Vec::new(),
        }
    }
}

/// An independent review session. Findings are challenges added through the
/// session; the session can close only once every finding is answered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReviewSession {
    pub id: ReviewId,
    pub reviewer: String,
    pub opened: String,
    pub closed: Option<String>,
    pub findings: Vec<ChallengeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WorkflowError {
    #[error("stage {0} is outside the six-stage method")]
    InvalidStage(u8),
    #[error("the stage {stage} gate is blocked")]
    GateBlocked {
        stage: u8,
        diagnostics: Vec<Diagnostic>,
    },
    #[error("review `{0}` does not exist")]
    UnknownReview(String),
    #[error("review `{0}` is already closed")]
    ReviewClosed(String),
    #[error("a review cannot open while the stage 5 gate is blocked")]
    ReviewPreconditionFailed(Vec<Diagnostic>),
    #[error("review findings must carry independent-review provenance")]
    ProvenanceMismatch,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("status evaluation failed")]
    Evaluation(Vec<Diagnostic>),
    #[error("log replay mismatch: {0}")]
    ReplayMismatch(String),
}

fn push_event(
    model: &mut ArgumentModel,
    timestamp: &str,
    actor: &str,
    action: &str,
    subjects: Vec<String>,
) {
    let seq = model.workflow.events.len() as u64 + 1;
    model.workflow.events.push(WorkflowEvent {
        seq,
        timestamp: timestamp.to_string(),
        actor: actor.to_string(),
        action: action.to_string(),
        subjects,
    });
}

// =====================================================================
// Stage gates
// =====================================================================

/// What currently blocks entry to `stage`. Empty means the gate is open.
/// Diagnostics use stable name codes so tools can match on them.
pub fn stage_gate(model: &ArgumentModel, stage: u8) -> Vec<Diagnostic> {
    let mut diags = match stage {
        1 => Vec::new(),
        2 => gate_decomposition(model),
        3 => gate_acknowledged(model),
        4 => gate_referents_declared(model),
        5 => gate_clean_argument(model),
        6 => gate_review_closed(model),
        _ => vec![Diagnostic::error(
            "InvalidStage",
            format!("stage {stage} is outside the six-stage method"),
            vec![stage.to_string()],
        )],
    };
    diags.sort_by(|a, b| (&a.code, &a.subjects).cmp(&(&b.code, &b.subjects)));
    diags
}

/// Stage 2: at least one risk module must decompose its claim.
fn gate_decomposition(model: &ArgumentModel) -> Vec<Diagnostic> {
    let decomposed = model.modules.values().any(|m| {
        m.kind == ModuleKind::Risk
            && m.relations
                .iter()
                .any(|r| r.kind == RelationKind::SupportedBy)
    });
    if decomposed {
        Vec::new()
    } else {
        vec![Diagnostic::error(
            "NoDecomposition",
            "no risk module decomposes its claim yet",
            Vec::new(),
        )]
    }
}

/// Stage 3: every challenge against the argument must be acknowledged --
/// answered by a resolution, explicitly deferred, or already defeated.
fn gate_acknowledged(model: &ArgumentModel) -> Vec<Diagnostic> {
    let states = match analysis::challenge_states(model) {
        Ok(s) => s,
        Err(diags) => return blocked_by_validation(diags),
    };
    let mut out = Vec::new();
    for id in model.challenges.keys() {
        if !model.is_primary_challenge(id) {
            continue;
        }
        let resolved = model
            .resolutions
            .get(id)
            .map(|r| !r.is_empty())
            .unwrap_or(false);
        let deferred = model.deferrals.contains_key(id);
        let defeated = states.get(id) == Some(&ChallengeState::Defeated);
        if !(resolved || deferred || defeated) {
            out.push(Diagnostic::error(
                "UnacknowledgedChallenge",
                format!("challenge `{id}` has no resolution and no deferral"),
                vec![id.to_string()],
            ));
        }
    }
    out
}

/// Stage 4: everything the resolutions promise must exist -- monitors
/// declared, elements promised by change records present.
fn gate_referents_declared(model: &ArgumentModel) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for (ch, resolutions) in &model.resolutions {
        for r in resolutions {
            match &r.strategy {
                ResolutionStrategy::Monitoring { monitor } => {
                    if !model.monitors.contains_key(monitor) {
                        out.push(Diagnostic::error(
                            "UndeclaredMonitor",
                            format!("resolution of `{ch}` names monitor `{monitor}`, which is not declared"),
                            vec![ch.to_string(), monitor.to_string()],
                        ));
                    }
                }
                ResolutionStrategy::Change { record, .. } => {
                    for token in ArgumentModel::change_adds_tokens(record) {
                        let exists = ElementId::new(token.clone())
                            .map(|e| model.element(&e).is_some())
                            .unwrap_or(false);
                        if !exists {
                            out.push(Diagnostic::error(
                                "UnresolvedChangeTarget",
                                format!("change for `{ch}` promises element `{token}`, which does not exist"),
                                vec![ch.to_string(), token],
                            ));
                        }
                    }
                }
                _ => {}
            }
        }
    }
    out
}

/// Stage 5: the argument must be well formed and carry no open challenge.
fn gate_clean_argument(model: &ArgumentModel) -> Vec<Diagnostic> {
    let validation = analysis::validate(model);
    let errors: Vec<&Diagnostic> = validation
        .iter()
        .filter(|d| d.severity == Severity::Error)
        .collect();
    if !errors.is_empty() {
        return vec![Diagnostic::error(
            "ValidationBlocked",
            format!("{} well-formedness error(s) must be fixed first", errors.len()),
            errors.iter().map(|d| d.code.clone()).collect(),
        )];
    }
    let states = match analysis::challenge_states(model) {
        Ok(s) => s,
        Err(diags) => return blocked_by_validation(diags),
    };
    analysis::open_primary_challenges(model, &states)
        .into_iter()
        .map(|id| {
            Diagnostic::error(
                "OpenChallenge",
                format!("challenge `{id}` is still open"),
                vec![id.to_string()],
            )
        })
        .collect()
}

/// Stage 6: at least one independent review must have closed.
fn gate_review_closed(model: &ArgumentModel) -> Vec<Diagnostic> {
    let closed = model.reviews.values().any(|r| r.closed.is_some());
    if closed {
        Vec::new()
    } else {
        vec![Diagnostic::error(
            "NoClosedReview",
            "no independent review has been closed",
            Vec::new(),
        )]
    }
}

fn blocked_by_validation(diags: Vec<Diagnostic>) -> Vec<Diagnostic> {
    vec![Diagnostic::error(
        "ValidationBlocked",
        "status evaluation failed; fix the reported cycles first",
        diags.iter().map(|d| d.code.clone()).collect(),
    )]
}

// =====================================================================
// Stage transitions
// =====================================================================

/// Move the case to `stage`, provided the gate is open. Entering stage 1
/// begins a new iteration of the method.
pub fn enter_stage(
    model: &ArgumentModel,
    stage: u8,
    actor: &str,
    timestamp: &str,
) -> Result<ArgumentModel, WorkflowError> {
    if !(1..=6).contains(&stage) {
        return Err(WorkflowError::InvalidStage(stage));
    }
    let diagnostics = stage_gate(model, stage);
    if !diagnostics.is_empty() {
        return Err(WorkflowError::GateBlocked { stage, diagnostics });
    }
    let mut next = model.clone();
    next.workflow.current_stage = stage;
    if stage == 1 {
        next.workflow.iteration += 1;
    }
    push_event(&mut next, timestamp, actor, "enter_stage", vec![stage.to_string()]);
    Ok(next)
}

// =====================================================================
// Reviews
// =====================================================================

/// Open an independent review session. The argument is expected to be clean
/// (stage 5 gate open) first; `override_gate` records a deliberate exception.
pub fn open_review(
    model: &ArgumentModel,
    reviewer: &str,
    override_gate: bool,
    timestamp: &str,
) -> Result<(ArgumentModel, ReviewId), WorkflowError> {
    if !override_gate {
        let gate = stage_gate(model, 5);
        if !gate.is_empty() {
            return Err(WorkflowError::ReviewPreconditionFailed(gate));
        }
    }
    let id = ReviewId::new(format!("R{}", model.reviews.len() + 1))
        .expect("generated review id is valid");
    let mut next = model.clone();
    next.reviews.insert(
        id.clone(),
        ReviewSession {
            id: id.clone(),
            reviewer: reviewer.to_string(),
            opened: timestamp.to_string(),
            closed: None,
            findings: Vec::new(),
        },
    );
    push_event(
        &mut next,
        timestamp,
        reviewer,
        "open_review",
        vec![id.to_string(), reviewer.to_string()],
    );
    Ok((next, id))
}

/// Record a reviewer finding: a challenge carrying independent-review
/// provenance, tracked by the session until it is answered.
pub fn add_finding(
    model: &ArgumentModel,
    review: &ReviewId,
    challenge: Challenge,
    timestamp: &str,
) -> Result<ArgumentModel, WorkflowError> {
    let session = model
        .reviews
        .get(review)
        .ok_or_else(|| WorkflowError::UnknownReview(review.to_string()))?;
    if session.closed.is_some() {
        return Err(WorkflowError::ReviewClosed(review.to_string()));
    }
    if challenge.provenance != Provenance::IndependentReview {
        return Err(WorkflowError::ProvenanceMismatch);
    }
    let reviewer = session.reviewer.clone();
    let challenge_id = challenge.id.clone();
    let mut next = model.add_challenge(challenge)?;
    next.reviews
        .get_mut(review)
        .expect("session presence checked")
        .findings
        .push(challenge_id.clone());
    push_event(
        &mut next,
        timestamp,
        &reviewer,
        "add_finding",
        vec![review.to_string(), challenge_id.to_string()],
    );
    Ok(next)
}

/// Close a review session. Succeeds only when every finding is defeated or
/// mitigated; otherwise the model is returned unchanged together with one
/// diagnostic per finding still open.
pub fn close_review(
    model: &ArgumentModel,
    review: &ReviewId,
    timestamp: &str,
) -> Result<(ArgumentModel, Vec<Diagnostic>), WorkflowError> {
    let session = model
        .reviews
        .get(review)
        .ok_or_else(|| WorkflowError::UnknownReview(review.to_string()))?;
    if session.closed.is_some() {
        return Err(WorkflowError::ReviewClosed(review.to_string()));
    }
    let states = analysis::challenge_states(model).map_err(WorkflowError::Evaluation)?;
    let mut open = Vec::new();
    for finding in &session.findings {
        let answered = matches!(
            states.get(finding),
            Some(ChallengeState::Defeated) | Some(ChallengeState::Mitigated)
        );
        if !answered {
            open.push(Diagnostic::error(
                "OpenFinding",
                format!("finding `{finding}` of review `{review}` is still open"),
                vec![review.to_string(), finding.to_string()],
            ));
        }
    }
    if !open.is_empty() {
        return Ok((model.clone(), open));
    }
    let reviewer = session.reviewer.clone();
    let mut next = model.clone();
    next.reviews
        .get_mut(review)
        .expect("session presence checked")
        .closed = Some(timestamp.to_string());
    push_event(
        &mut next,
        timestamp,
        &reviewer,
        "close_review",
        vec![review.to_string()],
    );
    Ok((next, Vec::new()))
}

// =====================================================================
// Through-life triggers
// =====================================================================

/// Something happened after deployment that the case must absorb.
#[derive(Debug, Clone)]
pub enum Trigger {
    /// Field evidence contradicting part of the argument; carries the
    /// ready-made counter-evidence challenge to add.
    CounterEvidence {
        description: String,
        challenge: Challenge,
    },
    /// A deliberate change to the system touching the named ids.
    SystemChange {
        description: String,
        affected: Vec<String>,
    },
    /// A planned through-life activity (audit, data review); informational.
    ThroughLifeActivity { description: String },
}

/// What a trigger did to the case: the updated model, the challenge it
/// recorded (if any), the ids whose standing may move, and the observed
/// status movements.
#[derive(Debug, Clone)]
pub struct ImpactReport {
    pub model: ArgumentModel,
    pub challenge: Option<ChallengeId>,
    pub affected: BTreeSet<String>,
    pub status_delta: Vec<(ElementId, Status, Status)>,
    pub state_delta: Vec<(ChallengeId, ChallengeState, ChallengeState)>,
    /// True when any element status regressed: the method sends the case
    /// back to stage 1 for a new iteration.
    pub return_to_stage1: bool,
}

pub fn trigger_update(
    model: &ArgumentModel,
    trigger: Trigger,
    actor: &str,
    timestamp: &str,
) -> Result<ImpactReport, WorkflowError> {
    let before = analysis::evaluate(model).map_err(WorkflowError::Evaluation)?;
    let (mut next, challenge, seeds, action) = match trigger {
        Trigger::CounterEvidence { challenge, .. } => {
            let id = challenge.id.clone();
            let next = model.add_challenge(challenge)?;
            (next, Some(id.clone()), vec![id.to_string()], "trigger_counter_evidence")
        }
        Trigger::SystemChange { affected, .. } => {
            (model.clone(), None, affected, "trigger_system_change")
        }
        Trigger::ThroughLifeActivity { .. } => {
            (model.clone(), None, Vec::new(), "trigger_through_life")
        }
    };
    let affected = analysis::impact(&next, &seeds)?;
    push_event(&mut next, timestamp, actor, action, seeds);
    let after = analysis::evaluate(&next).map_err(WorkflowError::Evaluation)?;
    let mut status_delta = Vec::new();
    for (id, b) in &before.elements {
        if let Some(a) = after.elements.get(id) {
            if a != b {
                status_delta.push((id.clone(), *b, *a));
            }
        }
    }
    let mut state_delta = Vec::new();
    for (id, b) in &before.challenges {
        if let Some(a) = after.challenges.get(id) {
            if a != b {
                state_delta.push((id.clone(), *b, *a));
            }
        }
    }
    let return_to_stage1 = status_delta.iter().any(|(_, b, a)| a < b);
    Ok(ImpactReport {
        model: next,
        challenge,
        affected,
        status_delta,
        state_delta,
        return_to_stage1,
    })
}

// =====================================================================
// Event replay
// =====================================================================

/// Rebuild workflow state and review sessions from logged events. The
/// argument content itself is not in the log; `model` supplies it.
pub fn replay<I>(model: &ArgumentModel, lines: I) -> Result<ArgumentModel, WorkflowError>
where
    I: IntoIterator,
    I::Item: AsRef<str>,
{
    let mut next = model.clone();
    for line in lines {
        let line = line.as_ref();
        if line.trim().is_empty() {
            continue;
        }
        let event = WorkflowEvent::parse_line(line)?;
        apply_event(&mut next, &event)?;
    }
    Ok(next)
}

fn apply_event(model: &mut ArgumentModel, event: &WorkflowEvent) -> Result<(), WorkflowError> {
    match event.action.as_str() {
        "enter_stage" => {
            let stage: u8 = event
                .subjects
                .first()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| {
                    WorkflowError::ReplayMismatch(format!(
                        "enter_stage event without a stage: `{}`",
                        event.log_line()
                    ))
                })?;
            model.workflow.current_stage = stage;
            if stage == 1 {
                model.workflow.iteration += 1;
            }
        }
        "open_review" => {
            let (Some(id), Some(reviewer)) = (event.subjects.first(), event.subjects.get(1))
            else {
                return Err(WorkflowError::ReplayMismatch(
                    "open_review event without id and reviewer".into(),
                ));
            };
            let id = ReviewId::new(id.clone()).map_err(WorkflowError::Model)?;
            model.reviews.insert(
                id.clone(),
                ReviewSession {
                    id,
                    reviewer: reviewer.clone(),
                    opened: event.timestamp.clone(),
                    closed: None,
                    findings: Vec::new(),
                },
            );
        }
        "add_finding" => {
            let (Some(review), Some(challenge)) = (event.subjects.first(), event.subjects.get(1))
            else {
                return Err(WorkflowError::ReplayMismatch(
                    "add_finding event without review and challenge".into(),
                ));
            };
            let review = ReviewId::new(review.clone()).map_err(WorkflowError::Model)?;
            let challenge = ChallengeId::new(challenge.clone()).map_err(WorkflowError::Model)?;
            if !model.challenges.contains_key(&challenge) {
                return Err(WorkflowError::ReplayMismatch(format!(
                    "logged finding `{challenge}` is not in the argument file"
                )));
            }
            let session = model.reviews.get_mut(&review).ok_or_else(|| {
                WorkflowError::ReplayMismatch(format!("logged finding for unknown review `{review}`"))
            })?;
            session.findings.push(challenge);
        }
        "close_review" => {
            let Some(review) = event.subjects.first() else {
                return Err(WorkflowError::ReplayMismatch(
                    "close_review event without id".into(),
                ));
            };
            let review = ReviewId::new(review.clone()).map_err(WorkflowError::Model)?;
            let session = model.reviews.get_mut(&review).ok_or_else(|| {
                WorkflowError::ReplayMismatch(format!("close logged for unknown review `{review}`"))
            })?;
            session.closed = Some(event.timestamp.clone());
        }
        "trigger_counter_evidence" | "trigger_system_change" | "trigger_through_life" => {}
        other => {
            return Err(WorkflowError::ReplayMismatch(format!(
                "unknown logged action `{other}`"
            )));
        }
    }
    let seq = model.workflow.events.len() as u64 + 1;
    model.workflow.events.push(WorkflowEvent {
        seq,
        ..event.clone()
    });
    Ok(())
}

// =====================================================================
// Goal development ladder
// =====================================================================

/// How far a goal has come along the six-step development ladder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GoalStep {
    ClaimStated,
    ContextDefined,
    StrategyChosen,
    StrategyContextDefined,
    Elaborated,
    SolutionAttached,
}

impl std::fmt::Display for GoalStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GoalStep::ClaimStated => "claim stated",
            GoalStep::ContextDefined => "context defined",
            GoalStep::StrategyChosen => "strategy chosen",
            GoalStep::StrategyContextDefined => "strategy context defined",
            GoalStep::Elaborated => "elaborated",
            GoalStep::SolutionAttached => "solution attached",
        })
    }
}

/// The furthest development step each goal has reached, derived from the
/// structure around it.
pub fn goal_steps(model: &ArgumentModel) -> BTreeMap<ElementId, GoalStep> {
    let mut out = BTreeMap::new();
    for module in model.modules.values() {
        for element in module.elements.values() {
            if element.kind != ElementKind::Goal {
                continue;
            }
            let g = &element.id;
            let mut step = GoalStep::ClaimStated;
            if module.context_children(g).next().is_some() {
                step = GoalStep::ContextDefined;
            }
            let strategies: Vec<ElementId> = module
                .supported_by_children(g)
                .filter(|c| {
                    module
                        .elements
                        .get(*c)
                        .map(|e| e.kind == ElementKind::Strategy)
                        .unwrap_or(false)
                })
                .cloned()
                .collect();
            if !strategies.is_empty() {
                step = GoalStep::StrategyChosen;
            }
            if strategies
                .iter()
                .any(|s| module.context_children(s).next().is_some())
            {
                step = GoalStep::StrategyContextDefined;
            }
            if strategies
                .iter()
                .any(|s| module.supported_by_children(s).next().is_some())
            {
                step = GoalStep::Elaborated;
            }
            if reaches_solution(module, g) {
                step = GoalStep::SolutionAttached;
            }
            out.insert(g.clone(), step);
        }
    }
    out
}

fn reaches_solution(module: &crate::model::ArgumentModule, from: &ElementId) -> bool {
    let mut stack: Vec<ElementId> = module.supported_by_children(from).cloned().collect();
    let mut seen = BTreeSet::new();
    while let Some(cur) = stack.pop() {
        if !seen.insert(cur.clone()) {
            continue;
        }
        if let Some(e) = module.elements.get(&cur) {
            if e.kind == ElementKind::Solution {
                return true;
            }
        }
        stack.extend(module.supported_by_children(&cur).cloned());
    }
    false
}

/// Advisory notes about skipped ladder steps. Warnings, never gate blockers.
pub fn step_warnings(model: &ArgumentModel) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for module in model.modules.values() {
        for element in module.elements.values() {
            if element.kind != ElementKind::Goal {
                continue;
            }
            let g = &element.id;
            let strategies: Vec<ElementId> = module
                .supported_by_children(g)
                .filter(|c| {
                    module
                        .elements
                        .get(*c)
                        .map(|e| e.kind == ElementKind::Strategy)
                        .unwrap_or(false)
                })
                .cloned()
                .collect();
            let solutions_direct = module.supported_by_children(g).any(|c| {
                module
                    .elements
                    .get(c)
                    .map(|e| e.kind == ElementKind::Solution)
                    .unwrap_or(false)
            });
            if !strategies.is_empty() && solutions_direct {
                out.push(Diagnostic::warning(
                    "MixedDecomposition",
                    format!("goal `{g}` mixes strategies with directly attached solutions"),
                    vec![g.to_string()],
                ));
            }
            let fully_decomposed = strategies
                .iter()
                .any(|s| module.supported_by_children(s).next().is_some());
            if fully_decomposed {
                let goal_has_ctx = module.context_children(g).next().is_some();
                let strat_has_ctx = strategies
                    .iter()
                    .any(|s| module.context_children(s).next().is_some());
                if !goal_has_ctx && !strat_has_ctx {
                    out.push(Diagnostic::warning(
                        "ContextMissing",
                        format!("goal `{g}` is decomposed but no context is stated around it"),
                        vec![g.to_string()],
                    ));
                }
            }
        }
    }
    out.sort_by(|a, b| (&a.code, &a.subjects).cmp(&(&b.code, &b.subjects)));
    out
}

// =====================================================================
// Tests
// =====================================================================
