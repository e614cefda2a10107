//! Core data model for safety-case arguments.
//!
//! An [`ArgumentModel`] is a set of goal-structured argument modules plus the
//! dialectic layer recorded against them: challenges, resolutions, claim points,
//! deferrals, and monitors. All construction operations are pure: they take the
//! model by reference and return a new value or a [`ModelError`].
//!
//! Identifier rule: ASCII, `[A-Za-z][A-Za-z0-9_]*`. Ids are unique within their
//! category, and additionally no id may be shared between elements, challenges,
//! and claim points (those three are referenced by bare tokens in the DSL, so a
//! collision would make references ambiguous).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::workflow::{ReviewSession, WorkflowState};

// =====================================================================
// Identifiers
// =====================================================================

fn is_valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

macro_rules! id_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(String);

        impl $name {
            pub fn new(token: impl Into<String>) -> Result<Self, ModelError> {
                let token = token.into();
                if is_valid_ident(&token) {
                    Ok(Self(token))
                } else {
                    Err(ModelError::InvalidId(token))
                }
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl std::str::FromStr for $name {
            type Err = ModelError;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                Self::new(s)
            }
        }

        impl AsRef<str> for $name {
            fn as_ref(&self) -> &str {
                &self.0
            }
        }
    };
}

id_type!(
    /// Identifier of an argument element (goal, strategy, solution, context, ...).
    ElementId
);
id_type!(
    /// Identifier of an argument module.
    ModuleId
);
id_type!(
    /// Identifier of a challenge.
    ChallengeId
);
id_type!(
    /// Identifier of a claim point (conventionally `ACPn` / `OCPn`).
    ClaimPointId
);
id_type!(
    /// Identifier of a monitor obligation.
    MonitorId
);
id_type!(
    /// Identifier of a review session.
    ReviewId
);

// =====================================================================
// Errors
// =====================================================================

/// Error produced by a checked construction operation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("model name must not be empty")]
    EmptyName,
    #[error("text of `{0}` must not be empty")]
    EmptyText(String),
    #[error("invalid identifier `{0}`")]
    InvalidId(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown module `{0}`")]
    UnknownModule(String),
    #[error("unknown id `{0}`")]
    UnknownId(String),
    #[error("relation endpoints `{from}` and `{to}` live in different modules")]
    CrossModuleRelation { from: String, to: String },
    #[error("{0}")]
    KindViolation(String),
    #[error("relation `{from}` -> `{to}` would create a support cycle")]
    WouldCreateCycle { from: String, to: String },
    #[error("challenge target `{0}` does not resolve")]
    DanglingTarget(String),
    #[error("counter-evidence challenge `{0}` requires an evidence reference")]
    MissingEvidenceRef(String),
    #[error("challenge `{0}` must not target itself")]
    ChallengeCycle(String),
    #[error("unknown challenge `{0}`")]
    UnknownChallenge(String),
    #[error("resolution referent `{0}` does not resolve")]
    DanglingResolutionRef(String),
    #[error("`{0}` is not a rebutting challenge of the challenge it resolves")]
    RebuttalKindMismatch(String),
    #[error("deferral note for `{0}` must not be empty")]
    EmptyDeferralNote(String),
}

// =====================================================================
// Elements and relations
// =====================================================================

/// GSN element kinds. The declaration order is the canonical sort order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementKind {
    Goal,
    Strategy,
    Solution,
    Context,
    Assumption,
    Justification,
}

impl ElementKind {
    pub fn keyword(self) -> &'static str {
        match self {
            ElementKind::Goal => "goal",
            ElementKind::Strategy => "strategy",
            ElementKind::Solution => "solution",
            ElementKind::Context => "context",
            ElementKind::Assumption => "assumption",
            ElementKind::Justification => "justification",
        }
    }

    /// Context, assumption and justification share placement rules.
    pub fn is_contextual(self) -> bool {
        matches!(
            self,
            ElementKind::Context | ElementKind::Assumption | ElementKind::Justification
        )
    }
}

/// Availability of the evidence behind a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Availability {
    Available,
    /// Evidence that can only be produced once the system is in operation.
    OperationalPending,
    Missing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvidenceRef {
    pub label: String,
    pub availability: Availability,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub id: ElementId,
    pub kind: ElementKind,
    pub text: String,
    /// Solutions only.
    pub evidence: Option<EvidenceRef>,
    /// Goals and strategies only: explicitly marked as not yet developed.
    pub undeveloped: bool,
}

impl Element {
    pub fn new(id: ElementId, kind: ElementKind, text: impl Into<String>) -> Self {
        Element {
            id,
            kind,
            text: text.into(),
            evidence: None,
            undeveloped: false,
        }
    }

    pub fn goal(id: ElementId, text: impl Into<String>) -> Self {
        Self::new(id, ElementKind::Goal, text)
    }

    pub fn strategy(id: ElementId, text: impl Into<String>) -> Self {
        Self::new(id, ElementKind::Strategy, text)
    }

    pub fn solution(id: ElementId, text: impl Into<String>) -> Self {
        Self::new(id, ElementKind::Solution, text)
    }

    pub fn context(id: ElementId, text: impl Into<String>) -> Self {
        Self::new(id, ElementKind::Context, text)
    }

    pub fn assumption(id: ElementId, text: impl Into<String>) -> Self {
        Self::new(id, ElementKind::Assumption, text)
    }

    pub fn justification(id: ElementId, text: impl Into<String>) -> Self {
        Self::new(id, ElementKind::Justification, text)
    }

    pub fn undeveloped(mut self) -> Self {
        self.undeveloped = true;
        self
    }

    pub fn with_evidence(mut self, label: impl Into<String>, availability: Availability) -> Self {
        self.evidence = Some(EvidenceRef {
            label: label.into(),
            availability,
        });
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    SupportedBy,
    InContextOf,
}

impl RelationKind {
    pub fn keyword(self) -> &'static str {
        match self {
            RelationKind::SupportedBy => "supported_by",
            RelationKind::InContextOf => "in_context_of",
        }
    }
}

/// A directed relation between two elements of the same module.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    pub from: ElementId,
    pub to: ElementId,
    pub kind: RelationKind,
}

impl Relation {
    pub fn supported_by(from: ElementId, to: ElementId) -> Self {
        Relation {
            from,
            to,
            kind: RelationKind::SupportedBy,
        }
    }

    pub fn in_context_of(from: ElementId, to: ElementId) -> Self {
        Relation {
            from,
            to,
            kind: RelationKind::InContextOf,
        }
    }
}

// Ordered by (from, kind, to): the canonical serialization order.
impl Ord for Relation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.from, self.kind, &self.to).cmp(&(&other.from, other.kind, &other.to))
    }
}

impl PartialOrd for Relation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

// =====================================================================
// Modules
// =====================================================================

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ModuleKind {
    Risk,
    Confidence,
    Operational,
}

impl ModuleKind {
    pub fn keyword(self) -> &'static str {
        match self {
            ModuleKind::Risk => "risk",
            ModuleKind::Confidence => "confidence",
            ModuleKind::Operational => "operational",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgumentModule {
    pub id: ModuleId,
    pub kind: ModuleKind,
    pub elements: BTreeMap<ElementId, Element>,
    pub relations: BTreeSet<Relation>,
}

impl ArgumentModule {
    pub fn new(id: ModuleId, kind: ModuleKind) -> Self {
        ArgumentModule {
            id,
            kind,
            elements: BTreeMap::new(),
            relations: BTreeSet::new(),
        }
    }

    /// The root claim: the goal with no incoming SupportedBy relation.
    /// Id-least such goal if the module is malformed enough to have several;
    /// `None` if the module has no goals at all.
    pub fn root(&self) -> Option<&ElementId> {
        self.elements
            .values()
            .filter(|e| e.kind == ElementKind::Goal)
            .map(|e| &e.id)
            .filter(|id| {
                !self
                    .relations
                    .iter()
                    .any(|r| r.kind == RelationKind::SupportedBy && &r.to == *id)
            })
            .min()
    }

    /// All goals without incoming support; a well-formed module has exactly one.
    pub fn unsupported_goals(&self) -> Vec<&ElementId> {
        self.elements
            .values()
            .filter(|e| e.kind == ElementKind::Goal)
            .map(|e| &e.id)
            .filter(|id| {
                !self
                    .relations
                    .iter()
                    .any(|r| r.kind == RelationKind::SupportedBy && &r.to == *id)
            })
            .collect()
    }

    pub fn supported_by_children<'a>(&'a self, of: &'a ElementId) -> impl Iterator<Item = &'a ElementId> {
        self.relations
            .iter()
            .filter(move |r| r.kind == RelationKind::SupportedBy && &r.from == of)
            .map(|r| &r.to)
    }

    pub fn context_children<'a>(&'a self, of: &'a ElementId) -> impl Iterator<Item = &'a ElementId> {
        self.relations
            .iter()
            .filter(move |r| r.kind == RelationKind::InContextOf && &r.from == of)
            .map(|r| &r.to)
    }

    fn reaches_via_support(&self, from: &ElementId, to: &ElementId) -> bool {
        let mut stack = vec![from.clone()];
        let mut seen = BTreeSet::new();
        while let Some(cur) = stack.pop() {
            if &cur == to {
                return true;
            }
            if !seen.insert(cur.clone()) {
                continue;
            }
            for next in self.supported_by_children(&cur) {
                stack.push(next.clone());
            }
        }
        false
    }
}

// =====================================================================
// Challenges, resolutions, claim points, monitors
// =====================================================================

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ChallengeKind {
    /// Attacks an element (or another challenge) head on.
    Rebut,
    /// Attacks the inference of a SupportedBy relation.
    Undercut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ChallengeForm {
    CounterArgument,
    CounterEvidence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    Developer,
    IndependentReview,
    Operational,
}

impl Provenance {
    pub fn keyword(self) -> &'static str {
        match self {
            Provenance::Developer => "developer",
            Provenance::IndependentReview => "review",
            Provenance::Operational => "operational",
        }
    }
}

/// What a challenge is aimed at.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ChallengeTarget {
    Element(ElementId),
    /// A SupportedBy relation, named by its endpoints.
    Relation(ElementId, ElementId),
    Challenge(ChallengeId),
}

impl fmt::Display for ChallengeTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChallengeTarget::Element(id) => write!(f, "{id}"),
            ChallengeTarget::Relation(from, to) => write!(f, "{from} -> {to}"),
            ChallengeTarget::Challenge(id) => write!(f, "{id}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Challenge {
    pub id: ChallengeId,
    pub kind: ChallengeKind,
    pub form: ChallengeForm,
    pub target: ChallengeTarget,
    pub text: String,
    pub provenance: Provenance,
    /// Required when `form` is CounterEvidence.
    pub evidence_ref: Option<String>,
}

impl Challenge {
    pub fn rebut(id: ChallengeId, target: ChallengeTarget, text: impl Into<String>) -> Self {
        Challenge {
            id,
            kind: ChallengeKind::Rebut,
            form: ChallengeForm::CounterArgument,
            target,
            text: text.into(),
            provenance: Provenance::Developer,
            evidence_ref: None,
        }
    }

    pub fn undercut(id: ChallengeId, from: ElementId, to: ElementId, text: impl Into<String>) -> Self {
        Challenge {
            id,
            kind: ChallengeKind::Undercut,
            form: ChallengeForm::CounterArgument,
            target: ChallengeTarget::Relation(from, to),
            text: text.into(),
            provenance: Provenance::Developer,
            evidence_ref: None,
        }
    }

    pub fn as_counter_evidence(mut self, evidence: impl Into<String>) -> Self {
        self.form = ChallengeForm::CounterEvidence;
        self.evidence_ref = Some(evidence.into());
        self
    }

    pub fn from_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }
}

/// One of the five ways to answer a challenge. A challenge may carry several;
/// they are conjunctive: all must be healthy for the challenge to be mitigated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResolutionStrategy {
    /// Counter the challenge with a rebutting challenge of its own.
    Rebuttal { rebutting: ChallengeId },
    /// Change the system or the argument; `adds:<id>` tokens in the record
    /// name elements the change promises to introduce.
    Change { record: String, implemented: bool },
    /// Argue confidence at an assurance claim point.
    ConfidenceArgument { reference: String },
    /// Argue operationally at an operational claim point.
    OperationalArgument { reference: String },
    /// Watch for the challenged condition during operation.
    Monitoring { monitor: MonitorId },
}

impl ResolutionStrategy {
    /// Canonical sort rank within one challenge's resolution list.
    pub fn rank(&self) -> u8 {
        match self {
            ResolutionStrategy::Rebuttal { .. } => 0,
            ResolutionStrategy::Change { .. } => 1,
            ResolutionStrategy::ConfidenceArgument { .. } => 2,
            ResolutionStrategy::OperationalArgument { .. } => 3,
            ResolutionStrategy::Monitoring { .. } => 4,
        }
    }

    fn sort_key(&self) -> (u8, String) {
        let referent = match self {
            ResolutionStrategy::Rebuttal { rebutting } => rebutting.as_str().to_string(),
            ResolutionStrategy::Change { record, .. } => record.clone(),
            ResolutionStrategy::ConfidenceArgument { reference } => reference.clone(),
            ResolutionStrategy::OperationalArgument { reference } => reference.clone(),
            ResolutionStrategy::Monitoring { monitor } => monitor.as_str().to_string(),
        };
        (self.rank(), referent)
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            ResolutionStrategy::Rebuttal { .. } => "rebuttal",
            ResolutionStrategy::Change { .. } => "change",
            ResolutionStrategy::ConfidenceArgument { .. } => "confidence",
            ResolutionStrategy::OperationalArgument { .. } => "operational",
            ResolutionStrategy::Monitoring { .. } => "monitoring",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub strategy: ResolutionStrategy,
    pub note: String,
}

impl Resolution {
    pub fn new(strategy: ResolutionStrategy) -> Self {
        Resolution {
            strategy,
            note: String::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClaimPointKind {
    /// Assurance claim point: hangs a confidence argument off the main argument.
    Acp,
    /// Operational claim point: hangs an operational argument off the main argument.
    Ocp,
}

impl ClaimPointKind {
    pub fn keyword(self) -> &'static str {
        match self {
            ClaimPointKind::Acp => "acp",
            ClaimPointKind::Ocp => "ocp",
        }
    }
}

/// Where a claim point is attached.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Attachment {
    Element(ElementId),
    Relation(ElementId, ElementId),
}

impl Attachment {
    /// The element the attachment hangs on (a relation attachment hangs on its source).
    pub fn anchor(&self) -> &ElementId {
        match self {
            Attachment::Element(id) => id,
            Attachment::Relation(from, _) => from,
        }
    }
}

impl fmt::Display for Attachment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Attachment::Element(id) => write!(f, "{id}"),
            Attachment::Relation(from, to) => write!(f, "{from} -> {to}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimPoint {
    pub id: ClaimPointId,
    pub kind: ClaimPointKind,
    pub attached_to: Attachment,
    pub target_module: ModuleId,
    pub claim_text: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MonitorStatus {
    Proposed,
    Defined,
    Active,
}

impl MonitorStatus {
    pub fn keyword(self) -> &'static str {
        match self {
            MonitorStatus::Proposed => "proposed",
            MonitorStatus::Defined => "defined",
            MonitorStatus::Active => "active",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum MonitorWatch {
    Element(ElementId),
    Challenge(ChallengeId),
}

impl MonitorWatch {
    pub fn id_str(&self) -> &str {
        match self {
            MonitorWatch::Element(id) => id.as_str(),
            MonitorWatch::Challenge(id) => id.as_str(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonitorObligation {
    pub id: MonitorId,
    pub description: String,
    pub watches: MonitorWatch,
    pub status: MonitorStatus,
}

// =====================================================================
// The model
// =====================================================================

#[derive(Debug, Clone)]
pub struct ArgumentModel {
    pub name: String,
    pub modules: BTreeMap<ModuleId, ArgumentModule>,
    pub claim_points: BTreeMap<ClaimPointId, ClaimPoint>,
    pub challenges: BTreeMap<ChallengeId, Challenge>,
    /// Resolutions recorded per challenge, kept in canonical order.
    pub resolutions: BTreeMap<ChallengeId, Vec<Resolution>>,
    /// Challenges whose handling was explicitly postponed, with the mandatory note.
    pub deferrals: BTreeMap<ChallengeId, String>,
    pub monitors: BTreeMap<MonitorId, MonitorObligation>,
    pub reviews: BTreeMap<ReviewId, ReviewSession>,
    pub workflow: WorkflowState,
}

impl ArgumentModel {
    /// A fresh, empty model at stage 1, iteration 0.
    pub fn new(name: impl Into<String>) -> Result<Self, ModelError> {
        let name = name.into();
        if name.is_empty() {
            return Err(ModelError::EmptyName);
        }
        Ok(ArgumentModel {
            name,
            modules: BTreeMap::new(),
            claim_points: BTreeMap::new(),
            challenges: BTreeMap::new(),
            resolutions: BTreeMap::new(),
            deferrals: BTreeMap::new(),
            monitors: BTreeMap::new(),
            reviews: BTreeMap::new(),
            workflow: WorkflowState::initial(),
        })
    }

    /// Equality on argument content. Workflow state and review sessions are
    /// runtime records kept outside the serialized form, so they do not count.
    pub fn structurally_equal(&self, other: &Self) -> bool {
        self.name == other.name
            && self.modules == other.modules
            && self.claim_points == other.claim_points
            && self.challenges == other.challenges
            && self.resolutions == other.resolutions
            && self.deferrals == other.deferrals
            && self.monitors == other.monitors
    }

    // ----- lookups ------------------------------------------------------

    pub fn module_of_element(&self, id: &ElementId) -> Option<&ModuleId> {
        self.modules
            .values()
            .find(|m| m.elements.contains_key(id))
            .map(|m| &m.id)
    }

    pub fn element(&self, id: &ElementId) -> Option<&Element> {
        self.modules.values().find_map(|m| m.elements.get(id))
    }

    /// The relation `from -> to`, independent of kind, if it exists in the
    /// module holding `from`.
    pub fn relation(&self, from: &ElementId, to: &ElementId) -> Option<&Relation> {
        let module = self.module_of_element(from)?;
        self.modules[module]
            .relations
            .iter()
            .find(|r| &r.from == from && &r.to == to)
    }

    /// The module a challenge belongs to for grouping purposes: the module of
    /// the element or relation at the end of its target chain.
    pub fn challenge_home(&self, id: &ChallengeId) -> Option<ModuleId> {
        let mut seen = BTreeSet::new();
        let mut current = id.clone();
        loop {
            if !seen.insert(current.clone()) {
                return None;
            }
            let challenge = self.challenges.get(&current)?;
            match &challenge.target {
                ChallengeTarget::Element(e) => return self.module_of_element(e).cloned(),
                ChallengeTarget::Relation(f, _) => return self.module_of_element(f).cloned(),
                ChallengeTarget::Challenge(next) => current = next.clone(),
            }
        }
    }

    /// True when the challenge is aimed at the argument itself (an element or a
    /// relation) rather than at another challenge. Rebuttals of challenges are
    /// acknowledgment devices and are excluded from "open question" accounting.
    pub fn is_primary_challenge(&self, id: &ChallengeId) -> bool {
        match self.challenges.get(id) {
            Some(c) => !matches!(c.target, ChallengeTarget::Challenge(_)),
            None => false,
        }
    }

    /// Ids that live in the shared bare-token namespace: elements, challenges,
    /// claim points.
    fn shared_namespace_taken(&self, token: &str) -> bool {
        self.modules
            .values()
            .any(|m| m.elements.keys().any(|e| e.as_str() == token))
            || self.challenges.keys().any(|c| c.as_str() == token)
            || self.claim_points.keys().any(|c| c.as_str() == token)
    }

    // ----- construction -------------------------------------------------

    pub fn add_module(&self, id: ModuleId, kind: ModuleKind) -> Result<Self, ModelError> {
        if self.modules.contains_key(&id) {
            return Err(ModelError::DuplicateId(id.as_str().to_string()));
        }
        let mut next = self.clone();
        next.modules.insert(id.clone(), ArgumentModule::new(id, kind));
        Ok(next)
    }

    pub fn add_element(&self, module: &ModuleId, element: Element) -> Result<Self, ModelError> {
        if !self.modules.contains_key(module) {
            return Err(ModelError::UnknownModule(module.as_str().to_string()));
        }
        if self.shared_namespace_taken(element.id.as_str()) {
            return Err(ModelError::DuplicateId(element.id.as_str().to_string()));
        }
        if element.text.is_empty() {
            return Err(ModelError::EmptyText(element.id.as_str().to_string()));
        }
        if element.evidence.is_some() && element.kind != ElementKind::Solution {
            return Err(ModelError::KindViolation(format!(
                "`{}` is a {}; only solutions carry evidence",
                element.id,
                element.kind.keyword()
            )));
        }
        if element.undeveloped
            && !matches!(element.kind, ElementKind::Goal | ElementKind::Strategy)
        {
            return Err(ModelError::KindViolation(format!(
                "`{}` is a {}; only goals and strategies can be marked undeveloped",
                element.id,
                element.kind.keyword()
            )));
        }
        let mut next = self.clone();
        next.modules
            .get_mut(module)
            .expect("module presence checked")
            .elements
            .insert(element.id.clone(), element);
        Ok(next)
    }

    pub fn link(&self, relation: Relation) -> Result<Self, ModelError> {
        let from_module = self
            .module_of_element(&relation.from)
            .ok_or_else(|| ModelError::UnknownId(relation.from.as_str().to_string()))?
            .clone();
        let to_module = self
            .module_of_element(&relation.to)
            .ok_or_else(|| ModelError::UnknownId(relation.to.as_str().to_string()))?;
        if &from_module != to_module {
            return Err(ModelError::CrossModuleRelation {
                from: relation.from.as_str().to_string(),
                to: relation.to.as_str().to_string(),
            });
        }
        let module = &self.modules[&from_module];
        let from_kind = module.elements[&relation.from].kind;
        let to_kind = module.elements[&relation.to].kind;
        if !matches!(from_kind, ElementKind::Goal | ElementKind::Strategy) {
            return Err(ModelError::KindViolation(format!(
                "`{}` is a {}; relations start at goals or strategies",
                relation.from,
                from_kind.keyword()
            )));
        }
        match relation.kind {
            RelationKind::SupportedBy => {
                if !matches!(
                    to_kind,
                    ElementKind::Goal | ElementKind::Strategy | ElementKind::Solution
                ) {
                    return Err(ModelError::KindViolation(format!(
                        "`{}` is a {}; supported_by points at goals, strategies or solutions",
                        relation.to,
                        to_kind.keyword()
                    )));
                }
                if relation.from == relation.to
                    || module.reaches_via_support(&relation.to, &relation.from)
                {
                    return Err(ModelError::WouldCreateCycle {
                        from: relation.from.as_str().to_string(),
                        to: relation.to.as_str().to_string(),
                    });
                }
            }
            RelationKind::InContextOf => {
                if !to_kind.is_contextual() {
                    return Err(ModelError::KindViolation(format!(
                        "`{}` is a {}; in_context_of points at contexts, assumptions or justifications",
                        relation.to,
                        to_kind.keyword()
                    )));
                }
            }
        }
        let mut next = self.clone();
        next.modules
            .get_mut(&from_module)
            .expect("module presence checked")
            .relations
            .insert(relation);
        Ok(next)
    }

    pub fn add_challenge(&self, challenge: Challenge) -> Result<Self, ModelError> {
        if self.shared_namespace_taken(challenge.id.as_str()) {
            return Err(ModelError::DuplicateId(challenge.id.as_str().to_string()));
        }
        if challenge.text.is_empty() {
            return Err(ModelError::EmptyText(challenge.id.as_str().to_string()));
        }
        if challenge.form == ChallengeForm::CounterEvidence && challenge.evidence_ref.is_none() {
            return Err(ModelError::MissingEvidenceRef(
                challenge.id.as_str().to_string(),
            ));
        }
        match (&challenge.kind, &challenge.target) {
            (ChallengeKind::Rebut, ChallengeTarget::Element(e)) => {
                if self.element(e).is_none() {
                    return Err(ModelError::DanglingTarget(e.as_str().to_string()));
                }
            }
            (ChallengeKind::Rebut, ChallengeTarget::Challenge(c)) => {
                if c == &challenge.id {
                    return Err(ModelError::ChallengeCycle(challenge.id.as_str().to_string()));
                }
                if !self.challenges.contains_key(c) {
                    return Err(ModelError::DanglingTarget(c.as_str().to_string()));
                }
            }
            (ChallengeKind::Rebut, ChallengeTarget::Relation(f, t)) => {
                return Err(ModelError::KindViolation(format!(
                    "`{}` rebuts `{f} -> {t}`; rebuttals target elements or challenges, undercuts target relations",
                    challenge.id
                )));
            }
            (ChallengeKind::Undercut, ChallengeTarget::Relation(f, t)) => {
                let relation = self
                    .relation(f, t)
                    .ok_or_else(|| ModelError::DanglingTarget(format!("{f} -> {t}")))?;
                if relation.kind != RelationKind::SupportedBy {
                    return Err(ModelError::KindViolation(format!(
                        "`{}` undercuts `{f} -> {t}`, an in_context_of relation; undercuts target supported_by relations",
                        challenge.id
                    )));
                }
            }
            (ChallengeKind::Undercut, other) => {
                return Err(ModelError::KindViolation(format!(
                    "`{}` undercuts `{other}`; undercuts target supported_by relations",
                    challenge.id
                )));
            }
        }
        let mut next = self.clone();
        next.challenges.insert(challenge.id.clone(), challenge);
        Ok(next)
    }

    pub fn record_resolution(
        &self,
        challenge: &ChallengeId,
        resolution: Resolution,
    ) -> Result<Self, ModelError> {
        if !self.challenges.contains_key(challenge) {
            return Err(ModelError::UnknownChallenge(challenge.as_str().to_string()));
        }
        match &resolution.strategy {
            ResolutionStrategy::Rebuttal { rebutting } => {
                let r = self
                    .challenges
                    .get(rebutting)
                    .ok_or_else(|| ModelError::DanglingResolutionRef(rebutting.as_str().to_string()))?;
                let targets_this = r.target == ChallengeTarget::Challenge(challenge.clone());
                if r.kind != ChallengeKind::Rebut || !targets_this {
                    return Err(ModelError::RebuttalKindMismatch(
                        rebutting.as_str().to_string(),
                    ));
                }
            }
            ResolutionStrategy::ConfidenceArgument { reference }
            | ResolutionStrategy::OperationalArgument { reference } => {
                let is_claim_point = self
                    .claim_points
                    .keys()
                    .any(|cp| cp.as_str() == reference.as_str());
                let is_element = ElementId::new(reference.clone())
                    .map(|id| self.element(&id).is_some())
                    .unwrap_or(false);
                // An element reference is deliberately allowed through: it is a
                // well-formedness problem (W010), not a dangling reference.
                if !is_claim_point && !is_element {
                    return Err(ModelError::DanglingResolutionRef(reference.clone()));
                }
            }
            // A monitoring reference may name a monitor that has not been
            // declared yet: that is a proposed obligation, surfaced by
            // monitor_obligations and blocked at the stage-4 gate.
            ResolutionStrategy::Monitoring { .. } => {}
            ResolutionStrategy::Change { .. } => {}
        }
        let mut next = self.clone();
        let list = next.resolutions.entry(challenge.clone()).or_default();
        let key = resolution.strategy.sort_key();
        let pos = list
            .binary_search_by(|probe| probe.strategy.sort_key().cmp(&key))
            .unwrap_or_else(|p| p);
        list.insert(pos, resolution);
        Ok(next)
    }

    /// Explicitly postpone a challenge. Satisfies the stage-3 gate, never the
    /// stage-5 gate.
    pub fn defer_challenge(
        &self,
        challenge: &ChallengeId,
        note: impl Into<String>,
    ) -> Result<Self, ModelError> {
        if !self.challenges.contains_key(challenge) {
            return Err(ModelError::UnknownChallenge(challenge.as_str().to_string()));
        }
        let note = note.into();
        if note.is_empty() {
            return Err(ModelError::EmptyDeferralNote(challenge.as_str().to_string()));
        }
        let mut next = self.clone();
        next.deferrals.insert(challenge.clone(), note);
        Ok(next)
    }

    pub fn add_claim_point(&self, claim_point: ClaimPoint) -> Result<Self, ModelError> {
        if self.shared_namespace_taken(claim_point.id.as_str()) {
            return Err(ModelError::DuplicateId(claim_point.id.as_str().to_string()));
        }
        if claim_point.claim_text.is_empty() {
            return Err(ModelError::EmptyText(claim_point.id.as_str().to_string()));
        }
        match &claim_point.attached_to {
            Attachment::Element(e) => {
                if self.element(e).is_none() {
                    return Err(ModelError::DanglingTarget(e.as_str().to_string()));
                }
            }
            Attachment::Relation(f, t) => {
                if self.relation(f, t).is_none() {
                    return Err(ModelError::DanglingTarget(format!("{f} -> {t}")));
                }
            }
        }
        if !self.modules.contains_key(&claim_point.target_module) {
            return Err(ModelError::UnknownModule(
                claim_point.target_module.as_str().to_string(),
            ));
        }
        let mut next = self.clone();
        next.claim_points.insert(claim_point.id.clone(), claim_point);
        Ok(next)
    }

    pub fn add_monitor(&self, monitor: MonitorObligation) -> Result<Self, ModelError> {
        if self.monitors.contains_key(&monitor.id) {
            return Err(ModelError::DuplicateId(monitor.id.as_str().to_string()));
        }
        if monitor.description.is_empty() {
            return Err(ModelError::EmptyText(monitor.id.as_str().to_string()));
        }
        match &monitor.watches {
            MonitorWatch::Element(e) => {
                if self.element(e).is_none() {
                    return Err(ModelError::DanglingTarget(e.as_str().to_string()));
                }
            }
            MonitorWatch::Challenge(c) => {
                if !self.challenges.contains_key(c) {
                    return Err(ModelError::DanglingTarget(c.as_str().to_string()));
                }
            }
        }
        let mut next = self.clone();
        next.monitors.insert(monitor.id.clone(), monitor);
        Ok(next)
    }

    /// Challenges rebutting the given challenge.
    pub fn rebutters_of<'a>(&'a self, id: &'a ChallengeId) -> impl Iterator<Item = &'a Challenge> {
        self.challenges.values().filter(move |c| {
            c.kind == ChallengeKind::Rebut && c.target == ChallengeTarget::Challenge(id.clone())
        })
    }

    /// `adds:<id>` tokens inside a change record.
    pub fn change_adds_tokens(record: &str) -> Vec<String> {
        let mut tokens = Vec::new();
        let mut rest = record;
        while let Some(pos) = rest.find("adds:") {
            let after = &rest[pos + 5..];
            let end = after
                .char_indices()
                .find(|(i, c)| {
                    if *i == 0 {
                        !c.is_ascii_alphabetic()
                    } else {
                        !(c.is_ascii_alphanumeric() || *c == '_')
                    }
                })
                .map(|(i, _)| i)
                .unwrap_or(after.len());
            tokens.push(after[..end].to_string());
            rest = &after[end.max(1).min(after.len())..];
            if after.is_empty() {
                break;
            }
        }
        tokens
    }
}

// =====================================================================
// Tests
// =====================================================================

#[cfg(test)]
mod tests {
    use super::*;

    fn eid(s: &str) -> ElementId {
        ElementId::new(s).unwrap()
    }

    fn mid(s: &str) -> ModuleId {
        ModuleId::new(s).unwrap()
    }

    fn chid(s: &str) -> ChallengeId {
        ChallengeId::new(s).unwrap()
    }

    fn base_model() -> ArgumentModel {
        ArgumentModel::new("pump-case")
            .unwrap()
            .add_module(mid("M1"), ModuleKind::Risk)
            .unwrap()
    }

    #[test]
    fn test_new_model_is_empty_at_stage_one() {
        let m = ArgumentModel::new("pump-case").unwrap();
        assert!(m.modules.is_empty());
        assert_eq!(m.workflow.current_stage, 1);
        assert_eq!(m.workflow.iteration, 0);
    }

    #[test]
    fn test_new_model_rejects_empty_name() {
        assert!(matches!(ArgumentModel::new(""), Err(ModelError::EmptyName)));
    }

    #[test]
    fn test_first_goal_becomes_root() {
        let m = base_model()
            .add_element(&mid("M1"), Element::goal(eid("G1"), "top claim"))
            .unwrap();
        assert_eq!(m.modules[&mid("M1")].root(), Some(&eid("G1")));
    }

    #[test]
    fn test_duplicate_element_id_rejected() {
        let m = base_model()
            .add_element(&mid("M1"), Element::goal(eid("G1"), "top claim"))
            .unwrap();
        let err = m
            .add_element(&mid("M1"), Element::goal(eid("G1"), "again"))
            .unwrap_err();
        assert_eq!(err, ModelError::DuplicateId("G1".into()));
    }

    #[test]
    fn test_duplicate_across_modules_rejected() {
        let m = base_model()
            .add_module(mid("M2"), ModuleKind::Confidence)
            .unwrap()
            .add_element(&mid("M1"), Element::goal(eid("G1"), "claim"))
            .unwrap();
        let err = m
            .add_element(&mid("M2"), Element::goal(eid("G1"), "other"))
            .unwrap_err();
        assert_eq!(err, ModelError::DuplicateId("G1".into()));
    }

    #[test]
    fn test_unknown_module_rejected() {
        let err = base_model()
            .add_element(&mid("M9"), Element::goal(eid("G1"), "claim"))
            .unwrap_err();
        assert_eq!(err, ModelError::UnknownModule("M9".into()));
    }

    #[test]
    fn test_evidence_only_on_solutions() {
        let bad = Element::goal(eid("G1"), "claim").with_evidence("log", Availability::Available);
        let err = base_model().add_element(&mid("M1"), bad).unwrap_err();
        assert!(matches!(err, ModelError::KindViolation(_)));
    }

    #[test]
    fn test_undeveloped_only_on_goals_and_strategies() {
        let bad = Element::solution(eid("Sn1"), "evidence").undeveloped();
        let err = base_model().add_element(&mid("M1"), bad).unwrap_err();
        assert!(matches!(err, ModelError::KindViolation(_)));
    }

    #[test]
    fn test_solution_keeps_pending_evidence() {
        let m = base_model()
            .add_element(
                &mid("M1"),
                Element::solution(eid("Sn1"), "audit evidence")
                    .with_evidence("audit reports", Availability::OperationalPending),
            )
            .unwrap();
        let e = m.element(&eid("Sn1")).unwrap();
        assert_eq!(
            e.evidence.as_ref().unwrap().availability,
            Availability::OperationalPending
        );
    }

    fn linked_model() -> ArgumentModel {
        base_model()
            .add_element(&mid("M1"), Element::goal(eid("G1"), "top claim"))
            .unwrap()
            .add_element(&mid("M1"), Element::strategy(eid("S1"), "argue over hazards"))
            .unwrap()
            .add_element(&mid("M1"), Element::context(eid("C1"), "design document"))
            .unwrap()
            .link(Relation::supported_by(eid("G1"), eid("S1")))
            .unwrap()
            .link(Relation::in_context_of(eid("G1"), eid("C1")))
            .unwrap()
    }

    #[test]
    fn test_link_rejects_support_cycle() {
        let m = linked_model();
        let err = m
            .link(Relation::supported_by(eid("S1"), eid("G1")))
            .unwrap_err();
        assert_eq!(
            err,
            ModelError::WouldCreateCycle {
                from: "S1".into(),
                to: "G1".into()
            }
        );
    }

    #[test]
    fn test_link_rejects_self_support() {
        let m = linked_model();
        let err = m
            .link(Relation::supported_by(eid("G1"), eid("G1")))
            .unwrap_err();
        assert!(matches!(err, ModelError::WouldCreateCycle { .. }));
    }

    #[test]
    fn test_link_rejects_cross_module_relation() {
        let m = linked_model()
            .add_module(mid("M2"), ModuleKind::Confidence)
            .unwrap()
            .add_element(&mid("M2"), Element::goal(eid("G2"), "confidence claim"))
            .unwrap();
        let err = m
            .link(Relation::supported_by(eid("G1"), eid("G2")))
            .unwrap_err();
        assert!(matches!(err, ModelError::CrossModuleRelation { .. }));
    }

    #[test]
    fn test_link_rejects_kind_violations() {
        let m = linked_model()
            .add_element(&mid("M1"), Element::solution(eid("Sn1"), "log"))
            .unwrap();
        // a solution cannot support anything
        let err = m
            .link(Relation::supported_by(eid("Sn1"), eid("G1")))
            .unwrap_err();
        assert!(matches!(err, ModelError::KindViolation(_)));
        // in_context_of cannot point at a goal
        let err = m
            .link(Relation::in_context_of(eid("S1"), eid("G1")))
            .unwrap_err();
        assert!(matches!(err, ModelError::KindViolation(_)));
    }

    #[test]
    fn test_root_follows_support_structure() {
        let m = linked_model()
            .add_element(&mid("M1"), Element::goal(eid("G2"), "sub claim").undeveloped())
            .unwrap()
            .link(Relation::supported_by(eid("S1"), eid("G2")))
            .unwrap();
        assert_eq!(m.modules[&mid("M1")].root(), Some(&eid("G1")));
    }

    #[test]
    fn test_challenge_records_against_element() {
        let m = linked_model()
            .add_challenge(Challenge::rebut(
                chid("Ch01"),
                ChallengeTarget::Element(eid("C1")),
                "design document may be stale",
            ))
            .unwrap();
        assert!(m.challenges.contains_key(&chid("Ch01")));
        assert!(m.is_primary_challenge(&chid("Ch01")));
        assert_eq!(m.challenge_home(&chid("Ch01")), Some(mid("M1")));
    }

    #[test]
    fn test_counter_evidence_requires_reference() {
        let mut c = Challenge::rebut(
            chid("CE1"),
            ChallengeTarget::Element(eid("C1")),
            "field reports contradict the log",
        );
        c.form = ChallengeForm::CounterEvidence;
        let err = linked_model().add_challenge(c).unwrap_err();
        assert_eq!(err, ModelError::MissingEvidenceRef("CE1".into()));
    }

    #[test]
    fn test_challenge_rejects_dangling_target() {
        let err = linked_model()
            .add_challenge(Challenge::rebut(
                chid("Ch01"),
                ChallengeTarget::Element(eid("ZZ")),
                "nothing there",
            ))
            .unwrap_err();
        assert_eq!(err, ModelError::DanglingTarget("ZZ".into()));
    }

    #[test]
    fn test_challenge_rejects_self_reference() {
        let err = linked_model()
            .add_challenge(Challenge::rebut(
                chid("ChX"),
                ChallengeTarget::Challenge(chid("ChX")),
                "self-defeating",
            ))
            .unwrap_err();
        assert_eq!(err, ModelError::ChallengeCycle("ChX".into()));
    }

    #[test]
    fn test_undercut_targets_support_relations_only() {
        let m = linked_model();
        let err = m
            .add_challenge(Challenge::undercut(
                chid("ChU"),
                eid("G1"),
                eid("C1"),
                "context link is beside the point",
            ))
            .unwrap_err();
        assert!(matches!(err, ModelError::KindViolation(_)));
        let err = m
            .add_challenge(Challenge {
                id: chid("ChU"),
                kind: ChallengeKind::Undercut,
                form: ChallengeForm::CounterArgument,
                target: ChallengeTarget::Element(eid("G1")),
                text: "wrong shape".into(),
                provenance: Provenance::Developer,
                evidence_ref: None,
            })
            .unwrap_err();
        assert!(matches!(err, ModelError::KindViolation(_)));
        assert!(m
            .add_challenge(Challenge::undercut(
                chid("ChU"),
                eid("G1"),
                eid("S1"),
                "strategy does not cover all hazards",
            ))
            .is_ok());
    }

    #[test]
    fn test_rebut_cannot_target_relation() {
        let err = linked_model()
            .add_challenge(Challenge::rebut(
                chid("ChR"),
                ChallengeTarget::Relation(eid("G1"), eid("S1")),
                "wrong shape",
            ))
            .unwrap_err();
        assert!(matches!(err, ModelError::KindViolation(_)));
    }

    fn challenged_model() -> ArgumentModel {
        linked_model()
            .add_challenge(Challenge::rebut(
                chid("Ch02"),
                ChallengeTarget::Element(eid("C1")),
                "user modifications invalidate the document",
            ))
            .unwrap()
            .add_challenge(Challenge::rebut(
                chid("R1"),
                ChallengeTarget::Challenge(chid("Ch02")),
                "testing shows the pumps are tamper-proof",
            ))
            .unwrap()
    }

    #[test]
    fn test_rebuttal_resolution_requires_matching_rebutter() {
        let m = challenged_model();
        let ok = m.record_resolution(
            &chid("Ch02"),
            Resolution::new(ResolutionStrategy::Rebuttal {
                rebutting: chid("R1"),
            }),
        );
        assert!(ok.is_ok());
        // R1 targets Ch02, not itself, so it cannot resolve another challenge
        let other = m
            .add_challenge(Challenge::rebut(
                chid("Ch03"),
                ChallengeTarget::Element(eid("C1")),
                "another angle",
            ))
            .unwrap();
        let err = other
            .record_resolution(
                &chid("Ch03"),
                Resolution::new(ResolutionStrategy::Rebuttal {
                    rebutting: chid("R1"),
                }),
            )
            .unwrap_err();
        assert_eq!(err, ModelError::RebuttalKindMismatch("R1".into()));
    }

    #[test]
    fn test_multiple_resolutions_accumulate_in_canonical_order() {
        let m = challenged_model()
            .add_module(mid("MC1"), ModuleKind::Confidence)
            .unwrap()
            .add_element(&mid("MC1"), Element::goal(eid("GC1"), "confidence claim").undeveloped())
            .unwrap()
            .add_module(mid("MO1"), ModuleKind::Operational)
            .unwrap()
            .add_element(&mid("MO1"), Element::goal(eid("GO1"), "operational claim").undeveloped())
            .unwrap()
            .add_claim_point(ClaimPoint {
                id: ClaimPointId::new("ACP1").unwrap(),
                kind: ClaimPointKind::Acp,
                attached_to: Attachment::Element(eid("C1")),
                target_module: mid("MC1"),
                claim_text: "document is faithful".into(),
            })
            .unwrap()
            .add_claim_point(ClaimPoint {
                id: ClaimPointId::new("OCP1").unwrap(),
                kind: ClaimPointKind::Ocp,
                attached_to: Attachment::Element(eid("C1")),
                target_module: mid("MO1"),
                claim_text: "usage stays correct".into(),
            })
            .unwrap();
        let m = m
            .record_resolution(
                &chid("Ch02"),
                Resolution::new(ResolutionStrategy::OperationalArgument {
                    reference: "OCP1".into(),
                }),
            )
            .unwrap()
            .record_resolution(
                &chid("Ch02"),
                Resolution::new(ResolutionStrategy::ConfidenceArgument {
                    reference: "ACP1".into(),
                }),
            )
            .unwrap();
        let kinds: Vec<&str> = m.resolutions[&chid("Ch02")]
            .iter()
            .map(|r| r.strategy.keyword())
            .collect();
        assert_eq!(kinds, vec!["confidence", "operational"]);
    }

    #[test]
    fn test_monitoring_resolution_allows_undeclared_monitor() {
        let m = challenged_model();
        let ok = m.record_resolution(
            &chid("Ch02"),
            Resolution::new(ResolutionStrategy::Monitoring {
                monitor: MonitorId::new("Mon1").unwrap(),
            }),
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn test_confidence_resolution_rejects_dangling_reference() {
        let err = challenged_model()
            .record_resolution(
                &chid("Ch02"),
                Resolution::new(ResolutionStrategy::ConfidenceArgument {
                    reference: "ACP9".into(),
                }),
            )
            .unwrap_err();
        assert_eq!(err, ModelError::DanglingResolutionRef("ACP9".into()));
    }

    #[test]
    fn test_deferral_requires_note() {
        let m = challenged_model();
        assert!(matches!(
            m.defer_challenge(&chid("Ch02"), ""),
            Err(ModelError::EmptyDeferralNote(_))
        ));
        let m = m.defer_challenge(&chid("Ch02"), "revisit after trials").unwrap();
        assert_eq!(m.deferrals[&chid("Ch02")], "revisit after trials");
    }

    #[test]
    fn test_operations_do_not_mutate_input() {
        let m = linked_model();
        let snapshot = m.clone();
        let _ = m.add_element(&mid("M1"), Element::goal(eid("G9"), "extra").undeveloped());
        let _ = m.add_challenge(Challenge::rebut(
            chid("ChX"),
            ChallengeTarget::Element(eid("C1")),
            "challenge",
        ));
        assert!(m.structurally_equal(&snapshot));
    }

    #[test]
    fn test_change_adds_tokens_extraction() {
        assert_eq!(
            ArgumentModel::change_adds_tokens("hazard log updated; adds:G7"),
            vec!["G7".to_string()]
        );
        assert_eq!(
            ArgumentModel::change_adds_tokens("adds:G7 and adds:G8, nothing else"),
            vec!["G7".to_string(), "G8".to_string()]
        );
        assert_eq!(
            ArgumentModel::change_adds_tokens("updated the log"),
            Vec::<String>::new()
        );
        // malformed token survives as an unresolvable (empty) name
        assert_eq!(ArgumentModel::change_adds_tokens("adds: G7"), vec![String::new()]);
    }

    #[test]
    fn test_identifier_validation() {
        assert!(ElementId::new("G1").is_ok());
        assert!(ElementId::new("snake_case_2").is_ok());
        assert!(ElementId::new("").is_err());
        assert!(ElementId::new("1G").is_err());
        assert!(ElementId::new("G-1").is_err());
        assert!(ElementId::new("Gé").is_err());
    }
}
