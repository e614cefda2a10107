//! Canonical serialization of an argument model back to DSL text.
//!
//! The emitter is deterministic: elements sort by kind then id, relations by
//! (from, kind, to), and every model-level item is printed inside the module
//! it belongs to. Defaults (`as argument`, `from developer`, `available`) are
//! omitted, so serialize(parse(serialize(m))) == serialize(m).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::model::{
    ArgumentModel, Attachment, Availability, Challenge, ChallengeForm, ChallengeTarget, ModuleId,
    MonitorWatch, Provenance, Resolution, ResolutionStrategy,
};

pub(crate) fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
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

fn target_text(target: &ChallengeTarget) -> String {
    match target {
        ChallengeTarget::Element(id) => id.to_string(),
        ChallengeTarget::Relation(from, to) => format!("{from} -> {to}"),
        ChallengeTarget::Challenge(id) => id.to_string(),
    }
}

fn challenge_line(c: &Challenge) -> String {
    let mut line = format!(
        "  challenge {} {} {}",
        c.id,
        match c.kind {
            crate::model::ChallengeKind::Rebut => "rebuts",
            crate::model::ChallengeKind::Undercut => "undercuts",
        },
        target_text(&c.target)
    );
    if c.form == ChallengeForm::CounterEvidence {
        let reference = c.evidence_ref.as_deref().unwrap_or("");
        let _ = write!(line, " as evidence \"{}\"", escape(reference));
    }
    let _ = write!(line, " \"{}\"", escape(&c.text));
    if c.provenance != Provenance::Developer {
        let _ = write!(line, " from {}", c.provenance.keyword());
    }
    line
}

fn resolution_line(challenge: &str, r: &Resolution) -> String {
    let mut line = format!("  resolve {challenge} by ");
    match &r.strategy {
        ResolutionStrategy::Rebuttal { rebutting } => {
            let _ = write!(line, "rebuttal {rebutting}");
        }
        ResolutionStrategy::Change {
            record,
            implemented,
        } => {
            let _ = write!(line, "change \"{}\"", escape(record));
            if *implemented {
                line.push_str(" implemented");
            }
        }
        ResolutionStrategy::ConfidenceArgument { reference } => {
            let _ = write!(line, "confidence {reference}");
        }
        ResolutionStrategy::OperationalArgument { reference } => {
            let _ = write!(line, "operational {reference}");
        }
        ResolutionStrategy::Monitoring { monitor } => {
            let _ = write!(line, "monitoring {monitor}");
        }
    }
    if !r.note.is_empty() {
        let _ = write!(line, " note \"{}\"", escape(&r.note));
    }
    line
}

/// The module a model-level item is printed in; items whose anchor cannot be
/// located fall back to the first module.
fn home_or_first(model: &ArgumentModel, home: Option<ModuleId>) -> Option<ModuleId> {
    home.or_else(|| model.modules.keys().next().cloned())
}

pub(crate) fn serialize_model(model: &ArgumentModel) -> String {
    let mut out = format!("model \"{}\"\n", escape(&model.name));

    // Bucket the model-level items per home module, preserving canonical order
    // within each bucket (the iteration sources below are already sorted).
    let mut challenges: BTreeMap<ModuleId, Vec<String>> = BTreeMap::new();
    let mut resolutions: BTreeMap<ModuleId, Vec<String>> = BTreeMap::new();
    let mut deferrals: BTreeMap<ModuleId, Vec<String>> = BTreeMap::new();
    let mut claim_points: BTreeMap<ModuleId, Vec<String>> = BTreeMap::new();
    let mut monitors: BTreeMap<ModuleId, Vec<String>> = BTreeMap::new();

    for (id, c) in &model.challenges {
        if let Some(home) = home_or_first(model, model.challenge_home(id)) {
            challenges.entry(home).or_default().push(challenge_line(c));
        }
    }
    for (id, list) in &model.resolutions {
        if let Some(home) = home_or_first(model, model.challenge_home(id)) {
            let bucket = resolutions.entry(home).or_default();
            for r in list {
                bucket.push(resolution_line(id.as_str(), r));
            }
        }
    }
    for (id, note) in &model.deferrals {
        if let Some(home) = home_or_first(model, model.challenge_home(id)) {
            deferrals
                .entry(home)
                .or_default()
                .push(format!("  defer {id} \"{}\"", escape(note)));
        }
    }
    for cp in model.claim_points.values() {
        let home = model.module_of_element(cp.attached_to.anchor()).cloned();
        if let Some(home) = home_or_first(model, home) {
            let at = match &cp.attached_to {
                Attachment::Element(id) => id.to_string(),
                Attachment::Relation(from, to) => format!("{from} -> {to}"),
            };
            claim_points.entry(home).or_default().push(format!(
                "  {} {} at {at} claims \"{}\" module {}",
                cp.kind.keyword(),
                cp.id,
                escape(&cp.claim_text),
                cp.target_module
            ));
        }
    }
    for m in model.monitors.values() {
        let home = match &m.watches {
            MonitorWatch::Element(id) => model.module_of_element(id).cloned(),
            MonitorWatch::Challenge(id) => model.challenge_home(id),
        };
        if let Some(home) = home_or_first(model, home) {
            monitors.entry(home).or_default().push(format!(
                "  monitor {} watches {} \"{}\" {}",
                m.id,
                m.watches.id_str(),
                escape(&m.description),
                m.status.keyword()
            ));
        }
    }

    for (module_id, module) in &model.modules {
        out.push('\n');
        let _ = writeln!(out, "module {module_id} {} {{", module.kind.keyword());

        let mut elements: Vec<_> = module.elements.values().collect();
        elements.sort_by_key(|e| (e.kind, e.id.clone()));
        for e in elements {
            let mut line = format!("  {} {} \"{}\"", e.kind.keyword(), e.id, escape(&e.text));
            let mut attrs: Vec<String> = Vec::new();
            if e.undeveloped {
                attrs.push("undeveloped".to_string());
            }
            if let Some(ev) = &e.evidence {
                let mut attr = format!("evidence \"{}\"", escape(&ev.label));
                match ev.availability {
                    Availability::Available => {}
                    Availability::OperationalPending => attr.push_str(" pending"),
                    Availability::Missing => attr.push_str(" missing"),
                }
                attrs.push(attr);
            }
            if !attrs.is_empty() {
                let _ = write!(line, " [{}]", attrs.join(", "));
            }
            out.push_str(&line);
            out.push('\n');
        }
        for r in &module.relations {
            let _ = writeln!(out, "  {} {} {}", r.from, r.kind.keyword(), r.to);
        }
        for section in [
            challenges.get(module_id),
            resolutions.get(module_id),
            deferrals.get(module_id),
            claim_points.get(module_id),
            monitors.get(module_id),
        ]
        .into_iter()
        .flatten()
        {
            for line in section {
                out.push_str(line);
                out.push('\n');
            }
        }
        out.push_str("}\n");
    }
    out
}
