//! Well-formedness validation and status evaluation.
//!
//! [`validate`] checks an [`ArgumentModel`] against the well-formedness rules
//! and reports violations as [`Diagnostic`]s with stable codes (W001..W013).
//! [`evaluate`] computes the defeat-aware status of every element, module and
//! challenge. Evaluation is deterministic: the mixed dependency graph between
//! modules and challenges is processed in topological order with ties broken
//! by id, and a cyclic graph is rejected (W009) rather than approximated.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::model::{
    ArgumentModel, ArgumentModule, Availability, ChallengeId, ChallengeForm, ChallengeKind,
    ChallengeTarget, ClaimPointId, ClaimPointKind, ElementId, ElementKind, ModelError, ModuleId,
    ModuleKind, MonitorId, MonitorObligation, MonitorStatus, MonitorWatch, RelationKind,
    ResolutionStrategy,
};

// =====================================================================
// Diagnostics
// =====================================================================

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Warning => f.write_str("warning"),
            Severity::Error => f.write_str("error"),
        }
    }
}

/// A single finding, tied to a stable code and the ids it concerns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: String,
    pub message: String,
    pub subjects: Vec<String>,
}

impl Diagnostic {
    pub fn error(code: &str, message: impl Into<String>, subjects: Vec<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code: code.to_string(),
            message: message.into(),
            subjects,
        }
    }

    pub fn warning(code: &str, message: impl Into<String>, subjects: Vec<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            code: code.to_string(),
            message: message.into(),
            subjects,
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]: {}", self.severity, self.code, self.message)?;
        if !self.subjects.is_empty() {
            write!(f, " [{}]", self.subjects.join(", "))?;
        }
        Ok(())
    }
}

fn sort_diagnostics(diags: &mut Vec<Diagnostic>) {
    diags.sort_by(|a, b| (&a.code, &a.subjects).cmp(&(&b.code, &b.subjects)));
    diags.dedup();
}

// =====================================================================
// Status domain
// =====================================================================

/// Element and module status. The declaration order is the lattice order:
/// taking `min` over children yields the weakest contributor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Defeated,
    Questioned,
    Undeveloped,
    Pending,
    Supported,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Defeated => "defeated",
            Status::Questioned => "questioned",
            Status::Undeveloped => "undeveloped",
            Status::Pending => "pending",
            Status::Supported => "supported",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ChallengeState {
    Open,
    Mitigated,
    Defeated,
}

impl fmt::Display for ChallengeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChallengeState::Open => "open",
            ChallengeState::Mitigated => "mitigated",
            ChallengeState::Defeated => "defeated",
        })
    }
}

/// The complete result of one evaluation pass.
#[derive(Debug, Clone, Default)]
pub struct StatusMap {
    pub elements: BTreeMap<ElementId, Status>,
    pub modules: BTreeMap<ModuleId, Status>,
    pub challenges: BTreeMap<ChallengeId, ChallengeState>,
}

// =====================================================================
// Validation
// =====================================================================

pub fn validate(model: &ArgumentModel) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    check_dangling(model, &mut diags);
    check_duplicates(model, &mut diags);
    check_support_cycles(model, &mut diags);
    check_relation_endpoints(model, &mut diags);
    check_relation_kinds(model, &mut diags);
    check_challenge_cycles(model, &mut diags);
    check_counter_evidence(model, &mut diags);
    check_claim_point_kinds(model, &mut diags);
    check_reference_cycles(model, &mut diags);
    check_inline_confidence(model, &mut diags);
    check_pending_evidence_placement(model, &mut diags);
    check_unflagged_leaf_goals(model, &mut diags);
    check_module_structure(model, &mut diags);
    sort_diagnostics(&mut diags);
    diags
}

/// W001: every reference in the model must resolve.
fn check_dangling(model: &ArgumentModel, diags: &mut Vec<Diagnostic>) {
    let w001 = |msg: String, subjects: Vec<String>| Diagnostic::error("W001", msg, subjects);
    for (id, ch) in &model.challenges {
        match &ch.target {
            ChallengeTarget::Element(e) => {
                if model.element(e).is_none() {
                    diags.push(w001(
                        format!("challenge `{id}` targets unknown element `{e}`"),
                        vec![id.to_string(), e.to_string()],
                    ));
                }
            }
            ChallengeTarget::Relation(f, t) => {
                if model.relation(f, t).is_none() {
                    diags.push(w001(
                        format!("challenge `{id}` targets unknown relation `{f} -> {t}`"),
                        vec![id.to_string(), f.to_string(), t.to_string()],
                    ));
                }
            }
            ChallengeTarget::Challenge(c) => {
                if !model.challenges.contains_key(c) {
                    diags.push(w001(
                        format!("challenge `{id}` targets unknown challenge `{c}`"),
                        vec![id.to_string(), c.to_string()],
                    ));
                }
            }
        }
    }
    for (ch, resolutions) in &model.resolutions {
        if !model.challenges.contains_key(ch) {
            diags.push(w001(
                format!("resolution recorded against unknown challenge `{ch}`"),
                vec![ch.to_string()],
            ));
        }
        for r in resolutions {
            match &r.strategy {
                ResolutionStrategy::Rebuttal { rebutting } => {
                    if !model.challenges.contains_key(rebutting) {
                        diags.push(w001(
                            format!("rebuttal of `{ch}` references unknown challenge `{rebutting}`"),
                            vec![ch.to_string(), rebutting.to_string()],
                        ));
                    }
                }
                ResolutionStrategy::ConfidenceArgument { reference }
                | ResolutionStrategy::OperationalArgument { reference } => {
                    let is_cp = ClaimPointId::new(reference.clone())
                        .map(|cp| model.claim_points.contains_key(&cp))
                        .unwrap_or(false);
                    let is_element = ElementId::new(reference.clone())
                        .map(|e| model.element(&e).is_some())
                        .unwrap_or(false);
                    if !is_cp && !is_element {
                        diags.push(w001(
                            format!("resolution of `{ch}` references unknown claim point `{reference}`"),
                            vec![ch.to_string(), reference.clone()],
                        ));
                    }
                }
                // An undeclared monitor is a proposed obligation, not an error.
                ResolutionStrategy::Monitoring { .. } => {}
                ResolutionStrategy::Change { .. } => {}
            }
        }
    }
    for ch in model.deferrals.keys() {
        if !model.challenges.contains_key(ch) {
            diags.push(w001(
                format!("deferral recorded against unknown challenge `{ch}`"),
                vec![ch.to_string()],
            ));
        }
    }
    for (id, cp) in &model.claim_points {
        match &cp.attached_to {
            crate::model::Attachment::Element(e) => {
                if model.element(e).is_none() {
                    diags.push(w001(
                        format!("claim point `{id}` is attached to unknown element `{e}`"),
                        vec![id.to_string(), e.to_string()],
                    ));
                }
            }
            crate::model::Attachment::Relation(f, t) => {
                if model.relation(f, t).is_none() {
                    diags.push(w001(
                        format!("claim point `{id}` is attached to unknown relation `{f} -> {t}`"),
                        vec![id.to_string(), f.to_string(), t.to_string()],
                    ));
                }
            }
        }
        if !model.modules.contains_key(&cp.target_module) {
            diags.push(w001(
                format!("claim point `{id}` targets unknown module `{}`", cp.target_module),
                vec![id.to_string(), cp.target_module.to_string()],
            ));
        }
    }
    for (id, monitor) in &model.monitors {
        let resolves = match &monitor.watches {
            MonitorWatch::Element(e) => model.element(e).is_some(),
            MonitorWatch::Challenge(c) => model.challenges.contains_key(c),
        };
        if !resolves {
            diags.push(w001(
                format!("monitor `{id}` watches unknown id `{}`", monitor.watches.id_str()),
                vec![id.to_string(), monitor.watches.id_str().to_string()],
            ));
        }
    }
}

/// W002: elements, challenges and claim points share one referable namespace;
/// no id may appear twice.
fn check_duplicates(model: &ArgumentModel, diags: &mut Vec<Diagnostic>) {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for module in model.modules.values() {
        for e in module.elements.keys() {
            *counts.entry(e.as_str()).or_default() += 1;
        }
    }
    for c in model.challenges.keys() {
        *counts.entry(c.as_str()).or_default() += 1;
    }
    for cp in model.claim_points.keys() {
        *counts.entry(cp.as_str()).or_default() += 1;
    }
    for (token, n) in counts {
        if n > 1 {
            diags.push(Diagnostic::error(
                "W002",
                format!("id `{token}` is declared {n} times"),
                vec![token.to_string()],
            ));
        }
    }
}

fn support_cycle_nodes(module: &ArgumentModule) -> BTreeSet<ElementId> {
    let mut cyclic = BTreeSet::new();
    for e in module.elements.keys() {
        let on_cycle = module
            .supported_by_children(e)
            .any(|child| reaches(module, child, e));
        if on_cycle {
            cyclic.insert(e.clone());
        }
    }
    cyclic
}

fn reaches(module: &ArgumentModule, from: &ElementId, to: &ElementId) -> bool {
    let mut stack = vec![from.clone()];
    let mut seen = BTreeSet::new();
    while let Some(cur) = stack.pop() {
        if &cur == to {
            return true;
        }
        if !seen.insert(cur.clone()) {
            continue;
        }
        for next in module.supported_by_children(&cur) {
            stack.push(next.clone());
        }
    }
    false
}

/// W003: the SupportedBy graph of each module must be acyclic.
fn check_support_cycles(model: &ArgumentModel, diags: &mut Vec<Diagnostic>) {
    for module in model.modules.values() {
        let cyclic = support_cycle_nodes(module);
        if !cyclic.is_empty() {
            diags.push(Diagnostic::error(
                "W003",
                format!("support relations in module `{}` form a cycle", module.id),
                cyclic.iter().map(|e| e.to_string()).collect(),
            ));
        }
    }
}

/// W004: relations connect elements of one module.
fn check_relation_endpoints(model: &ArgumentModel, diags: &mut Vec<Diagnostic>) {
    for module in model.modules.values() {
        for r in &module.relations {
            for end in [&r.from, &r.to] {
                if module.elements.contains_key(end) {
                    continue;
                }
                if model.element(end).is_some() {
                    diags.push(Diagnostic::error(
                        "W004",
                        format!(
                            "relation `{} -> {}` crosses out of module `{}`",
                            r.from, r.to, module.id
                        ),
                        vec![r.from.to_string(), r.to.to_string()],
                    ));
                } else {
                    diags.push(Diagnostic::error(
                        "W001",
                        format!("relation endpoint `{end}` does not exist"),
                        vec![r.from.to_string(), r.to.to_string()],
                    ));
                }
            }
        }
    }
}

/// W005: relation and challenge shapes respect element kinds.
fn check_relation_kinds(model: &ArgumentModel, diags: &mut Vec<Diagnostic>) {
    for module in model.modules.values() {
        for r in &module.relations {
            let (Some(from), Some(to)) = (module.elements.get(&r.from), module.elements.get(&r.to))
            else {
                continue; // endpoint problems are W001/W004
            };
            let ok = matches!(from.kind, ElementKind::Goal | ElementKind::Strategy)
                && match r.kind {
                    RelationKind::SupportedBy => matches!(
                        to.kind,
                        ElementKind::Goal | ElementKind::Strategy | ElementKind::Solution
                    ),
                    RelationKind::InContextOf => to.kind.is_contextual(),
                };
            if !ok {
                diags.push(Diagnostic::error(
                    "W005",
                    format!(
                        "{} relation `{} -> {}` connects incompatible element kinds ({} -> {})",
                        r.kind.keyword(),
                        r.from,
                        r.to,
                        from.kind.keyword(),
                        to.kind.keyword()
                    ),
                    vec![r.from.to_string(), r.to.to_string()],
                ));
            }
        }
    }
    for (id, ch) in &model.challenges {
        match (&ch.kind, &ch.target) {
            (ChallengeKind::Rebut, ChallengeTarget::Relation(f, t)) => {
                diags.push(Diagnostic::error(
                    "W005",
                    format!("rebutting challenge `{id}` targets a relation; rebuttals target elements or challenges"),
                    vec![id.to_string(), f.to_string(), t.to_string()],
                ));
            }
            (ChallengeKind::Undercut, ChallengeTarget::Relation(f, t)) => {
                if let Some(r) = model.relation(f, t) {
                    if r.kind != RelationKind::SupportedBy {
                        diags.push(Diagnostic::error(
                            "W005",
                            format!("undercutting challenge `{id}` targets an in_context_of relation; undercuts target supported_by relations"),
                            vec![id.to_string(), f.to_string(), t.to_string()],
                        ));
                    }
                }
            }
            (ChallengeKind::Undercut, other) => {
                diags.push(Diagnostic::error(
                    "W005",
                    format!("undercutting challenge `{id}` targets `{other}`; undercuts target supported_by relations"),
                    vec![id.to_string()],
                ));
            }
            (ChallengeKind::Rebut, _) => {}
        }
    }
    for (ch, resolutions) in &model.resolutions {
        for r in resolutions {
            if let ResolutionStrategy::Rebuttal { rebutting } = &r.strategy {
                if let Some(rc) = model.challenges.get(rebutting) {
                    let proper = rc.kind == ChallengeKind::Rebut
                        && rc.target == ChallengeTarget::Challenge(ch.clone());
                    if !proper {
                        diags.push(Diagnostic::error(
                            "W005",
                            format!("`{rebutting}` does not rebut `{ch}` and cannot resolve it"),
                            vec![ch.to_string(), rebutting.to_string()],
                        ));
                    }
                }
            }
        }
    }
}

/// W006: challenge-on-challenge targeting must be acyclic.
fn check_challenge_cycles(model: &ArgumentModel, diags: &mut Vec<Diagnostic>) {
    let mut edges: BTreeMap<&ChallengeId, &ChallengeId> = BTreeMap::new();
    for (id, ch) in &model.challenges {
        if let ChallengeTarget::Challenge(t) = &ch.target {
            edges.insert(id, t);
        }
    }
    let mut cyclic: BTreeSet<String> = BTreeSet::new();
    for start in edges.keys() {
        let mut cur = *start;
        let mut seen = BTreeSet::new();
        while let Some(next) = edges.get(cur) {
            if next == start {
                cyclic.insert(start.to_string());
                break;
            }
            if !seen.insert(*next) {
                break;
            }
            cur = next;
        }
    }
    if !cyclic.is_empty() {
        diags.push(Diagnostic::error(
            "W006",
            "challenges target each other in a cycle",
            cyclic.into_iter().collect(),
        ));
    }
}

/// W007: counter-evidence must cite its evidence.
fn check_counter_evidence(model: &ArgumentModel, diags: &mut Vec<Diagnostic>) {
    for (id, ch) in &model.challenges {
        if ch.form == ChallengeForm::CounterEvidence && ch.evidence_ref.is_none() {
            diags.push(Diagnostic::error(
                "W007",
                format!("counter-evidence challenge `{id}` cites no evidence"),
                vec![id.to_string()],
            ));
        }
    }
}

/// W008: claim point kind must match the kind of the module it targets.
fn check_claim_point_kinds(model: &ArgumentModel, diags: &mut Vec<Diagnostic>) {
    for (id, cp) in &model.claim_points {
        let Some(target) = model.modules.get(&cp.target_module) else {
            continue; // missing module is W001
        };
        let expected = match cp.kind {
            ClaimPointKind::Acp => ModuleKind::Confidence,
            ClaimPointKind::Ocp => ModuleKind::Operational,
        };
        if target.kind != expected {
            diags.push(Diagnostic::error(
                "W008",
                format!(
                    "claim point `{id}` ({}) targets module `{}` of kind {}",
                    cp.kind.keyword(),
                    cp.target_module,
                    target.kind.keyword()
                ),
                vec![id.to_string()],
            ));
        }
    }
}

/// W009: module references and evaluation dependencies must be acyclic.
fn check_reference_cycles(model: &ArgumentModel, diags: &mut Vec<Diagnostic>) {
    // Pure module-reference cycles through claim points.
    let mut edges: BTreeMap<ModuleId, BTreeSet<ModuleId>> = BTreeMap::new();
    for cp in model.claim_points.values() {
        if let Some(anchor_module) = model.module_of_element(cp.attached_to.anchor()) {
            edges
                .entry(anchor_module.clone())
                .or_default()
                .insert(cp.target_module.clone());
        }
    }
    let cyclic = nodes_on_cycles(&edges);
    if !cyclic.is_empty() {
        diags.push(Diagnostic::error(
            "W009",
            "claim points make modules reference each other in a cycle",
            cyclic.iter().map(|m| m.to_string()).collect(),
        ));
    }
    // Cycles through challenge states and module statuses.
    if let Err(cycle) = evaluation_order(model) {
        diags.push(w009_evaluation_cycle(&cycle));
    }
}

fn w009_evaluation_cycle(cycle: &BTreeSet<Node>) -> Diagnostic {
    Diagnostic::error(
        "W009",
        "challenge resolutions and module statuses depend on each other in a cycle",
        cycle.iter().map(Node::name).collect(),
    )
}

/// Nodes of `edges` that can reach themselves.
fn nodes_on_cycles<T: Ord + Clone>(edges: &BTreeMap<T, BTreeSet<T>>) -> BTreeSet<T> {
    let mut result = BTreeSet::new();
    for start in edges.keys() {
        let mut stack: Vec<&T> = edges[start].iter().collect();
        let mut seen: BTreeSet<&T> = BTreeSet::new();
        while let Some(n) = stack.pop() {
            if n == start {
                result.insert(start.clone());
                break;
            }
            if seen.insert(n) {
                if let Some(next) = edges.get(n) {
                    stack.extend(next.iter());
                }
            }
        }
    }
    result
}

/// W010: risk arguments must not smuggle confidence content inline.
fn check_inline_confidence(model: &ArgumentModel, diags: &mut Vec<Diagnostic>) {
    for module in model.modules.values() {
        if module.kind != ModuleKind::Risk {
            continue;
        }
        for e in module.elements.values() {
            if e.text.contains("[confidence]") {
                diags.push(Diagnostic::error(
                    "W010",
                    format!("risk element `{}` embeds confidence content in its text", e.id),
                    vec![e.id.to_string()],
                ));
            }
        }
    }
    for (ch, resolutions) in &model.resolutions {
        for r in resolutions {
            let reference = match &r.strategy {
                ResolutionStrategy::ConfidenceArgument { reference }
                | ResolutionStrategy::OperationalArgument { reference } => reference,
                _ => continue,
            };
            let is_cp = ClaimPointId::new(reference.clone())
                .map(|cp| model.claim_points.contains_key(&cp))
                .unwrap_or(false);
            if is_cp {
                continue;
            }
            let is_element = ElementId::new(reference.clone())
                .map(|e| model.element(&e).is_some())
                .unwrap_or(false);
            if is_element {
                diags.push(Diagnostic::error(
                    "W010",
                    format!(
                        "resolution of `{ch}` points at element `{reference}` instead of a claim point; \
                         confidence and operational arguments live in their own modules"
                    ),
                    vec![ch.to_string(), reference.clone()],
                ));
            }
        }
    }
}

/// Modules in which operationally pending evidence is legitimate: operational
/// modules, plus modules referenced by claim points attached inside the set
/// (computed to a fixpoint).
fn operational_legal_set(model: &ArgumentModel) -> BTreeSet<ModuleId> {
    let mut legal: BTreeSet<ModuleId> = model
        .modules
        .values()
        .filter(|m| m.kind == ModuleKind::Operational)
        .map(|m| m.id.clone())
        .collect();
    loop {
        let mut changed = false;
        for cp in model.claim_points.values() {
            let Some(anchor_module) = model.module_of_element(cp.attached_to.anchor()) else {
                continue;
            };
            if legal.contains(anchor_module) && legal.insert(cp.target_module.clone()) {
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    legal
}

/// W011: evidence that only operation can produce belongs on the operational
/// side of the case.
fn check_pending_evidence_placement(model: &ArgumentModel, diags: &mut Vec<Diagnostic>) {
    let legal = operational_legal_set(model);
    for module in model.modules.values() {
        if legal.contains(&module.id) {
            continue;
        }
        for e in module.elements.values() {
            if let Some(ev) = &e.evidence {
                if ev.availability == Availability::OperationalPending {
                    diags.push(Diagnostic::error(
                        "W011",
                        format!(
                            "solution `{}` waits for operational evidence but sits in {} module `{}`",
                            e.id,
                            module.kind.keyword(),
                            module.id
                        ),
                        vec![e.id.to_string()],
                    ));
                }
            }
        }
    }
}

/// W012: a goal with no support must say so explicitly.
fn check_unflagged_leaf_goals(model: &ArgumentModel, diags: &mut Vec<Diagnostic>) {
    for module in model.modules.values() {
        for e in module.elements.values() {
            if e.kind != ElementKind::Goal || e.undeveloped {
                continue;
            }
            let has_support = module.supported_by_children(&e.id).next().is_some();
            if !has_support {
                diags.push(Diagnostic::error(
                    "W012",
                    format!("goal `{}` has no support and is not marked undeveloped", e.id),
                    vec![e.id.to_string()],
                ));
            }
        }
    }
}

/// W013: each module needs a single root goal from which everything hangs.
fn check_module_structure(model: &ArgumentModel, diags: &mut Vec<Diagnostic>) {
    for module in model.modules.values() {
        let roots = module.unsupported_goals();
        let has_goals = module
            .elements
            .values()
            .any(|e| e.kind == ElementKind::Goal);
        if !has_goals {
            diags.push(Diagnostic::error(
                "W013",
                format!("module `{}` declares no goal", module.id),
                vec![module.id.to_string()],
            ));
            continue;
        }
        if roots.len() > 1 {
            let mut subjects = vec![module.id.to_string()];
            subjects.extend(roots.iter().map(|g| g.to_string()));
            diags.push(Diagnostic::error(
                "W013",
                format!("module `{}` has {} goals without incoming support", module.id, roots.len()),
                subjects,
            ));
        }
        // Reachability from the candidate roots over both relation kinds.
        let mut reachable: BTreeSet<ElementId> = BTreeSet::new();
        let mut stack: Vec<ElementId> = roots.iter().map(|g| (*g).clone()).collect();
        while let Some(cur) = stack.pop() {
            if !reachable.insert(cur.clone()) {
                continue;
            }
            for r in &module.relations {
                if r.from == cur {
                    stack.push(r.to.clone());
                }
            }
        }
        for e in module.elements.keys() {
            if !reachable.contains(e) {
                diags.push(Diagnostic::error(
                    "W013",
                    format!("element `{e}` is not reachable from the root of module `{}`", module.id),
                    vec![module.id.to_string(), e.to_string()],
                ));
            }
        }
    }
}

// =====================================================================
// Evaluation
// =====================================================================

/// A node of the mixed dependency graph walked during evaluation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Node {
    Challenge(ChallengeId),
    Module(ModuleId),
}

impl Node {
    fn name(&self) -> String {
        match self {
            Node::Challenge(c) => c.to_string(),
            Node::Module(m) => m.to_string(),
        }
    }
}

/// Topological order over modules and challenges. A challenge depends on the
/// challenges rebutting it and on the modules its claim-point resolutions
/// target; a module depends on the challenges aimed at its elements and
/// relations. `Err` carries the nodes involved in a cycle.
fn evaluation_order(model: &ArgumentModel) -> Result<Vec<Node>, BTreeSet<Node>> {
    let mut deps: BTreeMap<Node, BTreeSet<Node>> = BTreeMap::new();
    for m in model.modules.keys() {
        deps.insert(Node::Module(m.clone()), BTreeSet::new());
    }
    for c in model.challenges.keys() {
        deps.insert(Node::Challenge(c.clone()), BTreeSet::new());
    }
    for (id, ch) in &model.challenges {
        let node = Node::Challenge(id.clone());
        for rebutter in model.rebutters_of(id) {
            deps.get_mut(&node)
                .expect("node registered")
                .insert(Node::Challenge(rebutter.id.clone()));
        }
        if let Some(resolutions) = model.resolutions.get(id) {
            for r in resolutions {
                match &r.strategy {
                    ResolutionStrategy::Rebuttal { rebutting } => {
                        if model.challenges.contains_key(rebutting) {
                            deps.get_mut(&node)
                                .expect("node registered")
                                .insert(Node::Challenge(rebutting.clone()));
                        }
                    }
                    ResolutionStrategy::ConfidenceArgument { reference }
                    | ResolutionStrategy::OperationalArgument { reference } => {
                        let cp = ClaimPointId::new(reference.clone())
                            .ok()
                            .and_then(|cp| model.claim_points.get(&cp));
                        if let Some(cp) = cp {
                            if model.modules.contains_key(&cp.target_module) {
                                deps.get_mut(&node)
                                    .expect("node registered")
                                    .insert(Node::Module(cp.target_module.clone()));
                            }
                        }
                    }
                    _ => {}
                }
            }
        }
        let target_module = match &ch.target {
            ChallengeTarget::Element(e) => model.module_of_element(e),
            ChallengeTarget::Relation(f, _) => model.module_of_element(f),
            ChallengeTarget::Challenge(_) => None,
        };
        if let Some(m) = target_module {
            deps.get_mut(&Node::Module(m.clone()))
                .expect("node registered")
                .insert(node.clone());
        }
    }

    let mut indegree: BTreeMap<&Node, usize> = BTreeMap::new();
    let mut dependents: BTreeMap<&Node, Vec<&Node>> = BTreeMap::new();
    for (node, node_deps) in &deps {
        indegree.entry(node).or_insert(0);
        for d in node_deps {
            *indegree.entry(node).or_insert(0) += 1;
            dependents.entry(d).or_default().push(node);
        }
    }
    let mut ready: BTreeSet<&Node> = indegree
        .iter()
        .filter(|(_, n)| **n == 0)
        .map(|(node, _)| *node)
        .collect();
    let mut order: Vec<Node> = Vec::with_capacity(deps.len());
    while let Some(node) = ready.pop_first() {
        order.push(node.clone());
        if let Some(down) = dependents.get(node) {
            for d in down {
                let n = indegree.get_mut(d).expect("registered");
                *n -= 1;
                if *n == 0 {
                    ready.insert(d);
                }
            }
        }
    }
    if order.len() == deps.len() {
        Ok(order)
    } else {
        let unprocessed: BTreeSet<Node> = deps
            .keys()
            .filter(|n| !order.contains(n))
            .cloned()
            .collect();
        // Narrow to the nodes actually on a cycle where possible.
        let mut sub: BTreeMap<Node, BTreeSet<Node>> = BTreeMap::new();
        for n in &unprocessed {
            let filtered: BTreeSet<Node> = deps[n]
                .iter()
                .filter(|d| unprocessed.contains(d))
                .cloned()
                .collect();
            sub.insert(n.clone(), filtered);
        }
        let cyclic = nodes_on_cycles(&sub);
        Err(if cyclic.is_empty() { unprocessed } else { cyclic })
    }
}

/// Evaluate every element, module and challenge of the model.
///
/// Fails only when the dependency graph is cyclic; the error is the same
/// W009 diagnostic that [`validate`] reports for that situation.
pub fn evaluate(model: &ArgumentModel) -> Result<StatusMap, Vec<Diagnostic>> {
    let order = evaluation_order(model).map_err(|cycle| vec![w009_evaluation_cycle(&cycle)])?;
    let mut map = StatusMap::default();
    for node in order {
        match node {
            Node::Challenge(id) => {
                let state = challenge_state(model, &id, &map);
                map.challenges.insert(id, state);
            }
            Node::Module(id) => {
                let module = &model.modules[&id];
                let mut memo: BTreeMap<ElementId, Status> = BTreeMap::new();
                let mut visiting: BTreeSet<ElementId> = BTreeSet::new();
                for e in module.elements.keys() {
                    element_status(model, module, &map, &mut memo, &mut visiting, e);
                }
                let module_status = module
                    .root()
                    .and_then(|root| memo.get(root).copied())
                    .unwrap_or(Status::Undeveloped);
                map.elements.extend(memo);
                map.modules.insert(id, module_status);
            }
        }
    }
    Ok(map)
}

fn element_status(
    model: &ArgumentModel,
    module: &ArgumentModule,
    map: &StatusMap,
    memo: &mut BTreeMap<ElementId, Status>,
    visiting: &mut BTreeSet<ElementId>,
    id: &ElementId,
) -> Status {
    if let Some(s) = memo.get(id) {
        return *s;
    }
    if !visiting.insert(id.clone()) {
        // Support cycle (W003); break it conservatively.
        return Status::Undeveloped;
    }
    let element = &module.elements[id];
    let base = match element.kind {
        ElementKind::Solution => match &element.evidence {
            Some(ev) => match ev.availability {
                Availability::Available => Status::Supported,
                Availability::OperationalPending => Status::Pending,
                Availability::Missing => Status::Undeveloped,
            },
            None => Status::Undeveloped,
        },
        ElementKind::Goal | ElementKind::Strategy => {
            if element.undeveloped {
                Status::Undeveloped
            } else {
                let child_ids: Vec<ElementId> =
                    module.supported_by_children(id).cloned().collect();
                child_ids
                    .iter()
                    .map(|c| element_status(model, module, map, memo, visiting, c))
                    .min()
                    .unwrap_or(Status::Undeveloped)
            }
        }
        _ => Status::Supported,
    };
    let mut status = base;
    // An open rebutting challenge defeats the element outright.
    let openly_rebutted = model.challenges.iter().any(|(cid, c)| {
        c.kind == ChallengeKind::Rebut
            && c.target == ChallengeTarget::Element(id.clone())
            && map.challenges.get(cid) == Some(&ChallengeState::Open)
    });
    if openly_rebutted {
        status = Status::Defeated;
    }
    // A defeated contextual premise throws the claim into question.
    let ctx_children: Vec<ElementId> = module.context_children(id).cloned().collect();
    for ctx in ctx_children {
        if element_status(model, module, map, memo, visiting, &ctx) == Status::Defeated {
            status = status.min(Status::Questioned);
        }
    }
    // An open undercut on an outgoing support caps the claim as well.
    let openly_undercut = module
        .relations
        .iter()
        .filter(|r| r.kind == RelationKind::SupportedBy && &r.from == id)
        .any(|r| {
            model.challenges.iter().any(|(cid, c)| {
                c.kind == ChallengeKind::Undercut
                    && c.target == ChallengeTarget::Relation(r.from.clone(), r.to.clone())
                    && map.challenges.get(cid) == Some(&ChallengeState::Open)
            })
        });
    if openly_undercut {
        status = status.min(Status::Questioned);
    }
    visiting.remove(id);
    memo.insert(id.clone(), status);
    status
}

fn challenge_state(model: &ArgumentModel, id: &ChallengeId, map: &StatusMap) -> ChallengeState {
    let openly_rebutted = model
        .rebutters_of(id)
        .any(|r| map.challenges.get(&r.id) == Some(&ChallengeState::Open));
    if openly_rebutted {
        return ChallengeState::Defeated;
    }
    match model.resolutions.get(id) {
        None => ChallengeState::Open,
        Some(resolutions) if resolutions.is_empty() => ChallengeState::Open,
        Some(resolutions) => {
            let all_healthy = resolutions
                .iter()
                .all(|r| resolution_healthy(model, map, &r.strategy));
            if all_healthy {
                ChallengeState::Mitigated
            } else {
                ChallengeState::Open
            }
        }
    }
}

fn resolution_healthy(model: &ArgumentModel, map: &StatusMap, strategy: &ResolutionStrategy) -> bool {
    match strategy {
        ResolutionStrategy::Rebuttal { rebutting } => {
            matches!(map.challenges.get(rebutting), Some(s) if *s != ChallengeState::Defeated)
        }
        ResolutionStrategy::Change { record, implemented } => {
            *implemented
                && ArgumentModel::change_adds_tokens(record).iter().all(|t| {
                    ElementId::new(t.clone())
                        .map(|e| model.element(&e).is_some())
                        .unwrap_or(false)
                })
        }
        ResolutionStrategy::ConfidenceArgument { reference } => {
            claim_point_healthy(model, map, reference, ClaimPointKind::Acp)
        }
        ResolutionStrategy::OperationalArgument { reference } => {
            claim_point_healthy(model, map, reference, ClaimPointKind::Ocp)
        }
        ResolutionStrategy::Monitoring { monitor } => model
            .monitors
            .get(monitor)
            .map(|m| matches!(m.status, MonitorStatus::Defined | MonitorStatus::Active))
            .unwrap_or(false),
    }
}

fn claim_point_healthy(
    model: &ArgumentModel,
    map: &StatusMap,
    reference: &str,
    expected: ClaimPointKind,
) -> bool {
    let Some(cp) = ClaimPointId::new(reference)
        .ok()
        .and_then(|id| model.claim_points.get(&id))
    else {
        return false;
    };
    cp.kind == expected
        && map
            .modules
            .get(&cp.target_module)
            .map(|s| *s >= Status::Undeveloped)
            .unwrap_or(false)
}

/// Challenge states only; convenience over [`evaluate`].
pub fn challenge_states(
    model: &ArgumentModel,
) -> Result<BTreeMap<ChallengeId, ChallengeState>, Vec<Diagnostic>> {
    evaluate(model).map(|m| m.challenges)
}

/// Element statuses only; convenience over [`evaluate`].
pub fn element_statuses(
    model: &ArgumentModel,
) -> Result<BTreeMap<ElementId, Status>, Vec<Diagnostic>> {
    evaluate(model).map(|m| m.elements)
}

/// Challenges aimed at the argument itself (not at other challenges) that are
/// currently open, in id order.
pub fn open_primary_challenges(
    model: &ArgumentModel,
    states: &BTreeMap<ChallengeId, ChallengeState>,
) -> Vec<ChallengeId> {
    model
        .challenges
        .keys()
        .filter(|id| model.is_primary_challenge(id))
        .filter(|id| states.get(*id) == Some(&ChallengeState::Open))
        .cloned()
        .collect()
}

// =====================================================================
// Impact
// =====================================================================

/// The forward closure of a change: everything whose standing could move if
/// the seed ids were revisited. Seeds may be elements, challenges, claim
/// points, modules or monitors.
pub fn impact(model: &ArgumentModel, seeds: &[String]) -> Result<BTreeSet<String>, ModelError> {
    let mut set: BTreeSet<String> = BTreeSet::new();
    for seed in seeds {
        let as_element = ElementId::new(seed.clone())
            .map(|e| model.element(&e).is_some())
            .unwrap_or(false);
        let as_challenge = ChallengeId::new(seed.clone())
            .map(|c| model.challenges.contains_key(&c))
            .unwrap_or(false);
        let as_cp = ClaimPointId::new(seed.clone())
            .map(|c| model.claim_points.contains_key(&c))
            .unwrap_or(false);
        let as_monitor = MonitorId::new(seed.clone())
            .map(|m| model.monitors.contains_key(&m))
            .unwrap_or(false);
        let as_module = ModuleId::new(seed.clone())
            .ok()
            .filter(|m| model.modules.contains_key(m));
        if as_element || as_challenge || as_cp || as_monitor {
            set.insert(seed.clone());
        } else if let Some(module) = as_module {
            set.insert(seed.clone());
            if let Some(root) = model.modules[&module].root() {
                set.insert(root.to_string());
            }
        } else {
            return Err(ModelError::UnknownId(seed.clone()));
        }
    }
    loop {
        let before = set.len();
        for module in model.modules.values() {
            for r in &module.relations {
                // Upward: a shaken child or premise shakes the claim above it.
                if set.contains(r.to.as_str()) {
                    set.insert(r.from.to_string());
                }
            }
        }
        for (id, ch) in &model.challenges {
            if set.contains(id.as_str()) {
                match &ch.target {
                    ChallengeTarget::Element(e) => {
                        set.insert(e.to_string());
                    }
                    ChallengeTarget::Relation(f, _) => {
                        set.insert(f.to_string());
                    }
                    ChallengeTarget::Challenge(c) => {
                        set.insert(c.to_string());
                    }
                }
            }
        }
        for (id, cp) in &model.claim_points {
            let anchor = cp.attached_to.anchor();
            let target_root_in = model
                .modules
                .get(&cp.target_module)
                .and_then(|m| m.root())
                .map(|r| set.contains(r.as_str()))
                .unwrap_or(false);
            if target_root_in {
                set.insert(anchor.to_string());
                set.insert(id.to_string());
            }
            if set.contains(anchor.as_str()) {
                set.insert(id.to_string());
            }
        }
        if set.len() == before {
            break;
        }
    }
    Ok(set)
}

// =====================================================================
// Monitor obligations
// =====================================================================

/// All monitoring work the model implies: declared monitors, monitors promised
/// by resolutions but not yet declared, and collection duties for evidence
/// that only operation can produce.
pub fn monitor_obligations(model: &ArgumentModel) -> BTreeMap<MonitorId, MonitorObligation> {
    let mut out = model.monitors.clone();
    for (ch, resolutions) in &model.resolutions {
        for r in resolutions {
            if let ResolutionStrategy::Monitoring { monitor } = &r.strategy {
                if !out.contains_key(monitor) {
                    out.insert(
                        monitor.clone(),
                        MonitorObligation {
                            id: monitor.clone(),
                            description: format!("define monitoring for challenge {ch}"),
                            watches: MonitorWatch::Challenge(ch.clone()),
                            status: MonitorStatus::Proposed,
                        },
                    );
                }
            }
        }
    }
    for module in model.modules.values() {
        for e in module.elements.values() {
            let Some(ev) = &e.evidence else { continue };
            if ev.availability != Availability::OperationalPending {
                continue;
            }
            let id = MonitorId::new(format!("evidence_{}", e.id)).expect("derived id is valid");
            out.entry(id.clone()).or_insert(MonitorObligation {
                id,
                description: format!("collect operational evidence \"{}\"", ev.label),
                watches: MonitorWatch::Element(e.id.clone()),
                status: MonitorStatus::Proposed,
            });
        }
    }
    out
}

// =====================================================================
// Tests
// =====================================================================
