//! Shared test support.
//!
//! Two independent pieces live here, deliberately written against the raw
//! model data and not against the analysis code they check:
//!
//! * a seeded random case generator that emits source text for models that
//!   are well-formed by construction, and
//! * a status oracle that recomputes challenge labelings by brute force:
//!   every assignment of {open, mitigated, defeated} to every challenge is
//!   enumerated and checked for consistency against the labeling rules.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::Command;

use casewright::analysis::{ChallengeState, Status};
use casewright::model::{
    Availability, ArgumentModel, ArgumentModule, ChallengeId, ChallengeKind, ChallengeTarget,
    ClaimPointId, ClaimPointKind, ElementId, ElementKind, ModuleId, MonitorStatus, RelationKind,
    ResolutionStrategy,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

// =====================================================================
// Paths and process helpers
// =====================================================================

pub fn cases_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../cases")
}

pub fn case_text(name: &str) -> String {
    let path = cases_dir().join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
}

pub fn casewright_bin() -> &'static str {
    env!("CARGO_BIN_EXE_casewright")
}

/// Run the binary with `args` in `dir`; returns (exit code, stdout, stderr).
pub fn run_in(dir: &Path, args: &[&str]) -> (i32, String, String) {
    let out = Command::new(casewright_bin())
        .args(args)
        .current_dir(dir)
        .output()
        .expect("spawn casewright");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

pub fn run(args: &[&str]) -> (i32, String, String) {
    run_in(Path::new("."), args)
}

// =====================================================================
// Random case generation
// =====================================================================

pub struct GenConfig {
    /// Upper bound on the challenge count (the draw is biased low).
    pub max_challenges: usize,
    /// Allow challenges that target other challenges.
    pub allow_meta: bool,
    /// Allow confidence/operational resolutions through claim points.
    pub allow_claim_points: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_challenges: 6,
            allow_meta: true,
            allow_claim_points: true,
        }
    }
}

struct ElementRec {
    id: String,
    keyword: &'static str,
    text: String,
    undeveloped: bool,
    evidence: Option<(String, &'static str)>,
}

struct ModuleRec {
    id: String,
    kind: &'static str,
    elements: Vec<ElementRec>,
    relations: Vec<(String, &'static str, String)>,
}

const CLAIM_PHRASES: [&str; 8] = [
    "risk is reduced to an acceptable level",
    "the hazard is adequately controlled",
    "the function behaves safely in service",
    "failure modes are detected before harm",
    "the design meets its safety target",
    "deployed units match the assessed design",
    "operators follow the safe working procedure",
    "degraded modes keep the system safe",
];

const CONTEXT_PHRASES: [&str; 6] = [
    "definitions from the hazard analysis",
    "the published operating envelope",
    "system boundary as assessed",
    "maintenance regime in force",
    "assumed usage profile",
    "regulatory acceptance criteria",
];

const EVIDENCE_PHRASES: [&str; 6] = [
    "bench test report",
    "static analysis results",
    "field trial records",
    "inspection certificate",
    "simulation campaign data",
    "production audit trail",
];

const CHALLENGE_PHRASES: [&str; 6] = [
    "the cited document is out of date",
    "the analysis missed a credible scenario",
    "the inference needs an unstated assumption",
    "field conditions differ from those assessed",
    "the sample is too small to conclude anything",
    "the reviewer could not reproduce the result",
];

fn pick<'a>(rng: &mut StdRng, pool: &[&'a str]) -> &'a str {
    pool.choose(rng).expect("non-empty pool")
}

/// Emit source text for a random, well-formed case. The same seed always
/// yields the same text.
pub fn generate_case(seed: u64, cfg: &GenConfig) -> String {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut counter = 0usize;
    let mut fresh = |rng: &mut StdRng, pool: &[&str]| {
        counter += 1;
        format!("{} ({counter})", pick(rng, pool))
    };

    let mut modules: Vec<ModuleRec> = vec![ModuleRec {
        id: "M0".into(),
        kind: "risk",
        elements: Vec::new(),
        relations: Vec::new(),
    }];
    for i in 0..rng.gen_range(0..=2u32) {
        modules.push(ModuleRec {
            id: format!("MC{}", i + 1),
            kind: "confidence",
            elements: Vec::new(),
            relations: Vec::new(),
        });
    }
    for i in 0..rng.gen_range(0..=2u32) {
        modules.push(ModuleRec {
            id: format!("MO{}", i + 1),
            kind: "operational",
            elements: Vec::new(),
            relations: Vec::new(),
        });
    }

    let mut budget = 30usize;
    for module in &mut modules {
        let p = module.id.clone();
        let operational = module.kind == "operational";
        budget -= 1;
        module.elements.push(ElementRec {
            id: format!("{p}G0"),
            keyword: "goal",
            text: fresh(&mut rng, &CLAIM_PHRASES),
            undeveloped: false,
            evidence: None,
        });
        // Inner structure: goals and strategies hung under earlier ones.
        let mut parents = vec![format!("{p}G0")];
        for j in 1..=rng.gen_range(0..=3u32) {
            if budget == 0 {
                break;
            }
            budget -= 1;
            let goal = rng.gen_bool(0.5);
            let id = if goal {
                format!("{p}G{j}")
            } else {
                format!("{p}S{j}")
            };
            let parent = parents.choose(&mut rng).expect("root exists").clone();
            module.relations.push((parent, "supported_by", id.clone()));
            module.elements.push(ElementRec {
                id: id.clone(),
                keyword: if goal { "goal" } else { "strategy" },
                text: fresh(&mut rng, &CLAIM_PHRASES),
                undeveloped: false,
                evidence: None,
            });
            parents.push(id);
        }
        for j in 0..rng.gen_range(0..=2u32) {
            if budget == 0 {
                break;
            }
            budget -= 1;
            let id = format!("{p}Sn{j}");
            let parent = parents.choose(&mut rng).expect("root exists").clone();
            module.relations.push((parent, "supported_by", id.clone()));
            let evidence = match rng.gen_range(0..if operational { 4 } else { 3 }) {
                0 => Some((fresh(&mut rng, &EVIDENCE_PHRASES), "available")),
                1 => Some((fresh(&mut rng, &EVIDENCE_PHRASES), "missing")),
                2 => None,
                _ => Some((fresh(&mut rng, &EVIDENCE_PHRASES), "pending")),
            };
            module.elements.push(ElementRec {
                id,
                keyword: "solution",
                text: fresh(&mut rng, &EVIDENCE_PHRASES),
                undeveloped: false,
                evidence,
            });
        }
        for j in 0..rng.gen_range(0..=2u32) {
            if budget == 0 {
                break;
            }
            budget -= 1;
            let id = format!("{p}C{j}");
            let keyword = *["context", "assumption", "justification"]
                .choose(&mut rng)
                .expect("pool");
            let parent = parents.choose(&mut rng).expect("root exists").clone();
            module.relations.push((parent, "in_context_of", id.clone()));
            module.elements.push(ElementRec {
                id,
                keyword,
                text: fresh(&mut rng, &CONTEXT_PHRASES),
                undeveloped: false,
                evidence: None,
            });
        }
        // Every goal without support must say so; flag a few others too.
        let supported: BTreeSet<&String> = module
            .relations
            .iter()
            .filter(|(_, k, _)| *k == "supported_by")
            .map(|(from, _, _)| from)
            .collect();
        for e in &mut module.elements {
            if e.keyword == "goal" && !supported.contains(&e.id) {
                e.undeveloped = true;
            } else if e.keyword == "goal" && rng.gen_bool(0.1) {
                e.undeveloped = true;
            }
        }
    }

    // Pools for challenge targeting.
    let elem_pool: Vec<(String, String)> = modules
        .iter()
        .flat_map(|m| m.elements.iter().map(|e| (m.id.clone(), e.id.clone())))
        .collect();
    let rel_pool: Vec<(String, String, String)> = modules
        .iter()
        .flat_map(|m| {
            m.relations
                .iter()
                .filter(|(_, k, _)| *k == "supported_by")
                .map(|(f, _, t)| (m.id.clone(), f.clone(), t.clone()))
        })
        .collect();
    let confidence_modules: Vec<String> = modules
        .iter()
        .filter(|m| m.kind == "confidence")
        .map(|m| m.id.clone())
        .collect();
    let operational_modules: Vec<String> = modules
        .iter()
        .filter(|m| m.kind == "operational")
        .map(|m| m.id.clone())
        .collect();

    // Challenges. `extra` collects challenge/resolution/claim-point/monitor
    // lines; they go into the first module block (placement is free-form).
    let mut extra: Vec<String> = Vec::new();
    let n = cfg.max_challenges;
    let n_ch = rng.gen_range(0..=n).min(rng.gen_range(0..=n));
    // (id, anchor of a primary target in the risk module, if any)
    let mut challenges: Vec<(String, Option<String>)> = Vec::new();
    let mut rebutters: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for i in 0..n_ch {
        let id = format!("CH{i}");
        let roll = rng.gen_range(0..100);
        let text = fresh(&mut rng, &CHALLENGE_PHRASES);
        let provenance = match rng.gen_range(0..4) {
            0 => " from review",
            1 => " from operational",
            _ => "",
        };
        let (line, m0_anchor) = if roll < 15 && !rel_pool.is_empty() {
            let (m, f, t) = rel_pool.choose(&mut rng).expect("pool").clone();
            let anchor = (m == "M0").then(|| format!("{f} -> {t}"));
            (
                format!("challenge {id} undercuts {f} -> {t} \"{text}\"{provenance}"),
                anchor,
            )
        } else if roll < 40 && cfg.allow_meta && !challenges.is_empty() {
            let (target, _) = challenges.choose(&mut rng).expect("non-empty").clone();
            rebutters.entry(target.clone()).or_default().push(id.clone());
            (
                format!("challenge {id} rebuts {target} \"{text}\"{provenance}"),
                None,
            )
        } else {
            let (m, e) = elem_pool.choose(&mut rng).expect("pool").clone();
            let form = if rng.gen_bool(0.25) {
                format!(" as evidence \"{}\"", fresh(&mut rng, &EVIDENCE_PHRASES))
            } else {
                String::new()
            };
            let anchor = (m == "M0").then(|| e.clone());
            (
                format!("challenge {id} rebuts {e}{form} \"{text}\"{provenance}"),
                anchor,
            )
        };
        extra.push(line);
        challenges.push((id, m0_anchor));
    }

    // Resolutions, deferrals, claim points and monitors.
    let mut cp_seq = 0usize;
    let mut mon_seq = 0usize;
    for (id, m0_anchor) in &challenges {
        if !rng.gen_bool(0.5) {
            if rng.gen_bool(0.25) {
                extra.push(format!(
                    "defer {id} \"parked until the next field campaign ({id})\""
                ));
            }
            continue;
        }
        // Candidate strategies; each may be used at most once per challenge.
        let mut lines: Vec<String> = Vec::new();
        let mut change_used = false;
        let mut monitor_used = false;
        let mut rebuttal_used = false;
        let mut cp_used = false;
        for _ in 0..rng.gen_range(1..=2u32) {
            let choice = rng.gen_range(0..4);
            if choice == 0 && !change_used {
                change_used = true;
                let implemented = if rng.gen_bool(0.7) { " implemented" } else { "" };
                let record = if rng.gen_bool(0.4) && !elem_pool.is_empty() {
                    let (_, e) = elem_pool.choose(&mut rng).expect("pool");
                    format!("rework the argument adds:{e}")
                } else {
                    format!("process revision recorded for {id}")
                };
                lines.push(format!("resolve {id} by change \"{record}\"{implemented}"));
            } else if choice == 1 && !monitor_used {
                monitor_used = true;
                if rng.gen_bool(0.5) {
                    let mon = format!("MN{mon_seq}");
                    mon_seq += 1;
                    let status = *["proposed", "defined", "active"]
                        .choose(&mut rng)
                        .expect("pool");
                    let watch = if rng.gen_bool(0.5) {
                        id.clone()
                    } else {
                        elem_pool.choose(&mut rng).expect("pool").1.clone()
                    };
                    extra.push(format!(
                        "monitor {mon} watches {watch} \"track recurrence of {id}\" {status}"
                    ));
                    lines.push(format!("resolve {id} by monitoring {mon}"));
                } else {
                    // Monitoring may cite an obligation not yet declared; the
                    // resolution then counts as unhealthy, not ill-formed.
                    lines.push(format!("resolve {id} by monitoring MNU{mon_seq}"));
                    mon_seq += 1;
                }
            } else if choice == 2 && !rebuttal_used {
                if let Some(rs) = rebutters.get(id) {
                    rebuttal_used = true;
                    let r = rs.choose(&mut rng).expect("non-empty").clone();
                    lines.push(format!("resolve {id} by rebuttal {r}"));
                }
            } else if choice == 3
                && !cp_used
                && cfg.allow_claim_points
                && m0_anchor.is_some()
                && !(confidence_modules.is_empty() && operational_modules.is_empty())
            {
                cp_used = true;
                let anchor = m0_anchor.clone().expect("checked");
                let confidence = if confidence_modules.is_empty() {
                    false
                } else if operational_modules.is_empty() {
                    true
                } else {
                    rng.gen_bool(0.5)
                };
                let cp = format!("CP{cp_seq}");
                cp_seq += 1;
                let (kw, resolve_kw, target) = if confidence {
                    let m = confidence_modules.choose(&mut rng).expect("non-empty");
                    ("acp", "confidence", m.clone())
                } else {
                    let m = operational_modules.choose(&mut rng).expect("non-empty");
                    ("ocp", "operational", m.clone())
                };
                extra.push(format!(
                    "{kw} {cp} at {anchor} claims \"{}\" module {target}",
                    fresh(&mut rng, &CLAIM_PHRASES)
                ));
                lines.push(format!("resolve {id} by {resolve_kw} {cp}"));
            }
        }
        if lines.is_empty() {
            // Every roll landed on an unavailable strategy; record something.
            lines.push(format!(
                "resolve {id} by change \"process revision recorded for {id}\" implemented"
            ));
        }
        for mut line in lines {
            if rng.gen_bool(0.3) {
                line.push_str(&format!(" note \"tracked in the issue register ({id})\""));
            }
            extra.push(line);
        }
    }

    // Render.
    let mut out = format!("model \"gen-case-{seed}\"\n");
    for (idx, module) in modules.iter().enumerate() {
        out.push_str(&format!("\nmodule {} {} {{\n", module.id, module.kind));
        for e in &module.elements {
            let mut attrs: Vec<String> = Vec::new();
            if e.undeveloped {
                attrs.push("undeveloped".into());
            }
            if let Some((label, availability)) = &e.evidence {
                let suffix = if *availability == "available" {
                    String::new()
                } else {
                    format!(" {availability}")
                };
                attrs.push(format!("evidence \"{label}\"{suffix}"));
            }
            let attrs = if attrs.is_empty() {
                String::new()
            } else {
                format!(" [{}]", attrs.join(", "))
            };
            out.push_str(&format!("  {} {} \"{}\"{attrs}\n", e.keyword, e.id, e.text));
        }
        for (from, kw, to) in &module.relations {
            out.push_str(&format!("  {from} {kw} {to}\n"));
        }
        if idx == 0 {
            for line in &extra {
                out.push_str(&format!("  {line}\n"));
            }
        }
        out.push_str("}\n");
    }
    out
}

/// Parse a generated case, asserting it is clean; panics carry the seed.
pub fn generated_model(seed: u64, cfg: &GenConfig) -> ArgumentModel {
    let text = generate_case(seed, cfg);
    let model = casewright::dsl::parse(&text).unwrap_or_else(|diags| {
        panic!("seed {seed}: generated case does not parse: {diags:?}\n{text}")
    });
    let diags = casewright::analysis::validate(&model);
    assert!(
        diags.is_empty(),
        "seed {seed}: generated case is not well-formed: {diags:?}\n{text}"
    );
    model
}

// =====================================================================
// Independent status computation
// =====================================================================

/// Element statuses of one module, given the set of open challenges,
/// computed directly from the rules.
fn module_statuses(
    module: &ArgumentModule,
    rebutted: &BTreeSet<&ElementId>,
    undercut: &BTreeSet<(&ElementId, &ElementId)>,
    memo: &mut BTreeMap<ElementId, Status>,
) {
    fn visit(
        module: &ArgumentModule,
        rebutted: &BTreeSet<&ElementId>,
        undercut: &BTreeSet<(&ElementId, &ElementId)>,
        memo: &mut BTreeMap<ElementId, Status>,
        visiting: &mut BTreeSet<ElementId>,
        id: &ElementId,
    ) -> Status {
        if let Some(s) = memo.get(id) {
            return *s;
        }
        if !visiting.insert(id.clone()) {
            return Status::Undeveloped;
        }
        let e = &module.elements[id];
        let mut status = match e.kind {
            ElementKind::Solution => match &e.evidence {
                Some(ev) => match ev.availability {
                    Availability::Available => Status::Supported,
                    Availability::OperationalPending => Status::Pending,
                    Availability::Missing => Status::Undeveloped,
                },
                None => Status::Undeveloped,
            },
            ElementKind::Goal | ElementKind::Strategy => {
                if e.undeveloped {
                    Status::Undeveloped
                } else {
                    let mut worst: Option<Status> = None;
                    for r in &module.relations {
                        if r.kind == RelationKind::SupportedBy && &r.from == id {
                            let child =
                                visit(module, rebutted, undercut, memo, visiting, &r.to);
                            worst = Some(worst.map_or(child, |w: Status| w.min(child)));
                        }
                    }
                    worst.unwrap_or(Status::Undeveloped)
                }
            }
            _ => Status::Supported,
        };
        if rebutted.contains(id) {
            status = Status::Defeated;
        }
        for r in &module.relations {
            if r.kind == RelationKind::InContextOf && &r.from == id {
                let ctx = visit(module, rebutted, undercut, memo, visiting, &r.to);
                if ctx == Status::Defeated {
                    status = status.min(Status::Questioned);
                }
            }
        }
        let cut = module.relations.iter().any(|r| {
            r.kind == RelationKind::SupportedBy
                && &r.from == id
                && undercut.contains(&(&r.from, &r.to))
        });
        if cut {
            status = status.min(Status::Questioned);
        }
        visiting.remove(id);
        memo.insert(id.clone(), status);
        status
    }

    let mut visiting = BTreeSet::new();
    for id in module.elements.keys() {
        visit(module, rebutted, undercut, memo, &mut visiting, id);
    }
}

/// All element and module statuses, given the set of open challenges.
pub fn oracle_statuses(
    model: &ArgumentModel,
    open: &BTreeSet<ChallengeId>,
) -> (BTreeMap<ElementId, Status>, BTreeMap<ModuleId, Status>) {
    let mut rebutted: BTreeSet<&ElementId> = BTreeSet::new();
    let mut undercut: BTreeSet<(&ElementId, &ElementId)> = BTreeSet::new();
    for (id, c) in &model.challenges {
        if !open.contains(id) {
            continue;
        }
        match (&c.kind, &c.target) {
            (ChallengeKind::Rebut, ChallengeTarget::Element(e)) => {
                rebutted.insert(e);
            }
            (ChallengeKind::Undercut, ChallengeTarget::Relation(f, t)) => {
                undercut.insert((f, t));
            }
            _ => {}
        }
    }
    let mut elements = BTreeMap::new();
    let mut modules = BTreeMap::new();
    for (mid, module) in &model.modules {
        let mut memo = BTreeMap::new();
        module_statuses(module, &rebutted, &undercut, &mut memo);
        let root = module
            .elements
            .values()
            .filter(|e| e.kind == ElementKind::Goal)
            .map(|e| &e.id)
            .filter(|g| {
                !module
                    .relations
                    .iter()
                    .any(|r| r.kind == RelationKind::SupportedBy && &r.to == *g)
            })
            .min();
        let status = root
            .and_then(|r| memo.get(r).copied())
            .unwrap_or(Status::Undeveloped);
        elements.extend(memo);
        modules.insert(mid.clone(), status);
    }
    (elements, modules)
}

/// The static part of a resolution health check: either a constant, or a
/// lookup deferred until a labeling or module status table is at hand.
enum ResCheck {
    Always(bool),
    NotDefeated(ChallengeId),
    ModuleViable(ModuleId),
}

fn compile_resolution(model: &ArgumentModel, strategy: &ResolutionStrategy) -> ResCheck {
    match strategy {
        ResolutionStrategy::Rebuttal { rebutting } => {
            if model.challenges.contains_key(rebutting) {
                ResCheck::NotDefeated(rebutting.clone())
            } else {
                ResCheck::Always(false)
            }
        }
        ResolutionStrategy::Change {
            record,
            implemented,
        } => {
            let adds_exist = ArgumentModel::change_adds_tokens(record).iter().all(|t| {
                ElementId::new(t.clone())
                    .map(|e| model.element(&e).is_some())
                    .unwrap_or(false)
            });
            ResCheck::Always(*implemented && adds_exist)
        }
        ResolutionStrategy::ConfidenceArgument { reference } => {
            compile_claim_point(model, reference, ClaimPointKind::Acp)
        }
        ResolutionStrategy::OperationalArgument { reference } => {
            compile_claim_point(model, reference, ClaimPointKind::Ocp)
        }
        ResolutionStrategy::Monitoring { monitor } => ResCheck::Always(
            model
                .monitors
                .get(monitor)
                .map(|m| matches!(m.status, MonitorStatus::Defined | MonitorStatus::Active))
                .unwrap_or(false),
        ),
    }
}

fn compile_claim_point(model: &ArgumentModel, reference: &str, expected: ClaimPointKind) -> ResCheck {
    let cp = ClaimPointId::new(reference)
        .ok()
        .and_then(|id| model.claim_points.get(&id));
    match cp {
        Some(cp) if cp.kind == expected && model.modules.contains_key(&cp.target_module) => {
            ResCheck::ModuleViable(cp.target_module.clone())
        }
        _ => ResCheck::Always(false),
    }
}

/// Every consistent labeling of the model's challenges, found by exhausting
/// all 3^n assignments. A well-formed model has exactly one.
pub fn oracle_consistent_labelings(
    model: &ArgumentModel,
) -> Vec<BTreeMap<ChallengeId, ChallengeState>> {
    let ids: Vec<ChallengeId> = model.challenges.keys().cloned().collect();
    let n = ids.len();
    assert!(n <= 12, "enumeration is bounded at 12 challenges, got {n}");
    let index: BTreeMap<&ChallengeId, usize> =
        ids.iter().enumerate().map(|(i, id)| (id, i)).collect();

    // Per challenge: indices of the challenges rebutting it, and the
    // compiled health checks of its resolutions (None: nothing recorded).
    let mut rebutter_idx: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (id, c) in &model.challenges {
        if let (ChallengeKind::Rebut, ChallengeTarget::Challenge(t)) = (&c.kind, &c.target) {
            if let Some(&ti) = index.get(t) {
                rebutter_idx[ti].push(index[id]);
            }
        }
    }
    let checks: Vec<Option<Vec<ResCheck>>> = ids
        .iter()
        .map(|id| {
            model.resolutions.get(id).and_then(|rs| {
                if rs.is_empty() {
                    None
                } else {
                    Some(rs.iter().map(|r| compile_resolution(model, &r.strategy)).collect())
                }
            })
        })
        .collect();

    let states = [
        ChallengeState::Open,
        ChallengeState::Mitigated,
        ChallengeState::Defeated,
    ];
    let mut status_cache: HashMap<u32, BTreeMap<ModuleId, Status>> = HashMap::new();
    let mut consistent = Vec::new();
    let total = 3usize.pow(n as u32);
    let mut assignment = vec![ChallengeState::Open; n];
    for code in 0..total {
        let mut c = code;
        let mut open_mask = 0u32;
        for (i, slot) in assignment.iter_mut().enumerate() {
            *slot = states[c % 3];
            if *slot == ChallengeState::Open {
                open_mask |= 1 << i;
            }
            c /= 3;
        }
        let modules = status_cache.entry(open_mask).or_insert_with(|| {
            let open: BTreeSet<ChallengeId> = ids
                .iter()
                .enumerate()
                .filter(|(i, _)| open_mask & (1 << i) != 0)
                .map(|(_, id)| id.clone())
                .collect();
            oracle_statuses(model, &open).1
        });
        let ok = (0..n).all(|i| {
            let dictated = if rebutter_idx[i]
                .iter()
                .any(|&j| assignment[j] == ChallengeState::Open)
            {
                ChallengeState::Defeated
            } else {
                match &checks[i] {
                    None => ChallengeState::Open,
                    Some(list) => {
                        let healthy = list.iter().all(|check| match check {
                            ResCheck::Always(b) => *b,
                            ResCheck::NotDefeated(id) => {
                                assignment[index[id]] != ChallengeState::Defeated
                            }
                            ResCheck::ModuleViable(m) => modules
                                .get(m)
                                .map(|s| *s >= Status::Undeveloped)
                                .unwrap_or(false),
                        });
                        if healthy {
                            ChallengeState::Mitigated
                        } else {
                            ChallengeState::Open
                        }
                    }
                }
            };
            dictated == assignment[i]
        });
        if ok {
            consistent.push(
                ids.iter()
                    .cloned()
                    .zip(assignment.iter().copied())
                    .collect::<BTreeMap<_, _>>(),
            );
        }
    }
    consistent
}

/// The open challenges of a labeling, as a set.
pub fn open_set(labeling: &BTreeMap<ChallengeId, ChallengeState>) -> BTreeSet<ChallengeId> {
    labeling
        .iter()
        .filter(|(_, s)| **s == ChallengeState::Open)
        .map(|(id, _)| id.clone())
        .collect()
}
