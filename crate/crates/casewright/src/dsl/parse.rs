//! Parser and semantic builder for the argument DSL.
//!
//! Parsing happens in two phases. The syntactic phase turns tokens into a
//! source tree and stops at the first syntax error. The semantic phase builds
//! an [`ArgumentModel`] through the model's own checked operations, collecting
//! every violation it meets; challenges are inserted in passes so they may
//! reference challenges declared later in the file.

use std::collections::BTreeSet;

use super::lex::{lex, Tok, Token};
use super::{ParseDiagnostic, Span};
use crate::model::{
    ArgumentModel, Attachment, Availability, Challenge, ChallengeForm, ChallengeId, ChallengeKind,
    ChallengeTarget, ClaimPoint, ClaimPointId, ClaimPointKind, Element, ElementId, ElementKind,
    ModelError, ModuleId, ModuleKind, MonitorId, MonitorObligation, MonitorStatus, MonitorWatch,
    Provenance, Relation, RelationKind, Resolution, ResolutionStrategy,
};

// =====================================================================
// Source tree
// =====================================================================

#[derive(Debug)]
pub(crate) struct SrcModel {
    pub name: String,
    pub name_span: Span,
    pub modules: Vec<SrcModule>,
}

#[derive(Debug)]
pub(crate) struct SrcModule {
    pub id: String,
    pub kind: ModuleKind,
    pub span: Span,
    pub items: Vec<SrcItem>,
}

#[derive(Debug, Clone)]
pub(crate) enum SrcTarget {
    Id(String),
    Pair(String, String),
}

#[derive(Debug, Clone)]
pub(crate) enum SrcStrategy {
    Rebuttal(String),
    Change(String, bool),
    Confidence(String),
    Operational(String),
    Monitoring(String),
}

#[derive(Debug, Clone)]
pub(crate) enum SrcItem {
    Element {
        kind: ElementKind,
        id: String,
        text: String,
        undeveloped: bool,
        evidence: Option<(String, Availability)>,
        span: Span,
    },
    Relation {
        from: String,
        kind: RelationKind,
        to: String,
        span: Span,
    },
    Challenge(SrcChallenge),
    Resolve {
        challenge: String,
        strategy: SrcStrategy,
        note: String,
        span: Span,
    },
    Defer {
        challenge: String,
        note: String,
        span: Span,
    },
    ClaimPoint {
        kind: ClaimPointKind,
        id: String,
        at: SrcTarget,
        claim: String,
        module: String,
        span: Span,
    },
    Monitor {
        id: String,
        watches: String,
        description: String,
        status: MonitorStatus,
        span: Span,
    },
}

#[derive(Debug, Clone)]
pub(crate) struct SrcChallenge {
    pub id: String,
    pub kind: ChallengeKind,
    pub target: SrcTarget,
    pub evidence: Option<String>,
    pub counter_evidence: bool,
    pub text: String,
    pub provenance: Provenance,
    pub span: Span,
}

// =====================================================================
// Syntactic phase
// =====================================================================

struct Parser<'a> {
    file: &'a str,
    tokens: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn eof_span(&self) -> Span {
        self.tokens
            .last()
            .map(|t| {
                let mut s = t.span.clone();
                s.col += s.len;
                s.len = 1;
                s
            })
            .unwrap_or(Span {
                file: self.file.to_string(),
                line: 1,
                col: 1,
                len: 1,
            })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, code: &str, span: Span, message: String) -> ParseDiagnostic {
        ParseDiagnostic {
            code: code.to_string(),
            message,
            span,
        }
    }

    fn expected(&self, what: &str) -> ParseDiagnostic {
        match self.peek() {
            Some(t) => self.error(
                "P003",
                t.span.clone(),
                format!("expected {what}, found {}", t.tok.describe()),
            ),
            None => self.error("P003", self.eof_span(), format!("expected {what}, found end of file")),
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, Span), ParseDiagnostic> {
        match self.peek() {
            Some(Token {
                tok: Tok::Ident(_), ..
            }) => {
                let t = self.bump().expect("peeked");
                let Tok::Ident(s) = t.tok else { unreachable!() };
                Ok((s, t.span))
            }
            _ => Err(self.expected(what)),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<Span, ParseDiagnostic> {
        match self.peek() {
            Some(Token {
                tok: Tok::Ident(s), ..
            }) if s == kw => Ok(self.bump().expect("peeked").span),
            _ => Err(self.expected(&format!("`{kw}`"))),
        }
    }

    fn expect_string(&mut self, what: &str) -> Result<(String, Span), ParseDiagnostic> {
        match self.peek() {
            Some(Token { tok: Tok::Str(_), .. }) => {
                let t = self.bump().expect("peeked");
                let Tok::Str(s) = t.tok else { unreachable!() };
                Ok((s, t.span))
            }
            _ => Err(self.expected(what)),
        }
    }

    fn expect_tok(&mut self, tok: &Tok, what: &str) -> Result<Span, ParseDiagnostic> {
        match self.peek() {
            Some(t) if &t.tok == tok => Ok(self.bump().expect("peeked").span),
            _ => Err(self.expected(what)),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Ident(s), .. }) if s == kw)
    }

    fn parse_model(&mut self) -> Result<SrcModel, ParseDiagnostic> {
        let (name, name_span) = if self.at_keyword("model") {
            self.bump();
            self.expect_string("model name")?
        } else if self.at_keyword("module") {
            // headerless file: keep a synthetic name
            ("untitled".to_string(), self.eof_span())
        } else {
            let span = self
                .peek()
                .map(|t| t.span.clone())
                .unwrap_or_else(|| self.eof_span());
            let found = self
                .peek()
                .map(|t| t.tok.describe())
                .unwrap_or_else(|| "end of file".to_string());
            return Err(self.error(
                "P001",
                span,
                format!("expected `model` or `module` header, found {found}"),
            ));
        };
        let mut modules = Vec::new();
        while let Some(t) = self.peek() {
            if self.at_keyword("module") {
                self.bump();
                modules.push(self.parse_module()?);
            } else {
                return Err(self.error(
                    "P001",
                    t.span.clone(),
                    format!("expected `module`, found {}", t.tok.describe()),
                ));
            }
        }
        Ok(SrcModel {
            name,
            name_span,
            modules,
        })
    }

    fn parse_module(&mut self) -> Result<SrcModule, ParseDiagnostic> {
        let (id, span) = self.expect_ident("module id")?;
        let (kind_word, kind_span) = self.expect_ident("module kind")?;
        let kind = match kind_word.as_str() {
            "risk" => ModuleKind::Risk,
            "confidence" => ModuleKind::Confidence,
            "operational" => ModuleKind::Operational,
            other => {
                return Err(self.error(
                    "P004",
                    kind_span,
                    format!("unknown module kind `{other}` (expected risk, confidence or operational)"),
                ));
            }
        };
        self.expect_tok(&Tok::LBrace, "`{`")?;
        let mut items = Vec::new();
        loop {
            match self.peek() {
                Some(Token { tok: Tok::RBrace, .. }) => {
                    self.bump();
                    break;
                }
                Some(_) => items.push(self.parse_item()?),
                None => return Err(self.expected("`}`")),
            }
        }
        Ok(SrcModule {
            id,
            kind,
            span,
            items,
        })
    }

    fn parse_item(&mut self) -> Result<SrcItem, ParseDiagnostic> {
        let (word, span) = self.expect_ident("an item")?;
        match word.as_str() {
            "goal" => self.parse_element(ElementKind::Goal, span),
            "strategy" => self.parse_element(ElementKind::Strategy, span),
            "solution" => self.parse_element(ElementKind::Solution, span),
            "context" => self.parse_element(ElementKind::Context, span),
            "assumption" => self.parse_element(ElementKind::Assumption, span),
            "justification" => self.parse_element(ElementKind::Justification, span),
            "challenge" => Ok(SrcItem::Challenge(self.parse_challenge(span)?)),
            "resolve" => self.parse_resolve(span),
            "defer" => self.parse_defer(span),
            "acp" => self.parse_claim_point(ClaimPointKind::Acp, span),
            "ocp" => self.parse_claim_point(ClaimPointKind::Ocp, span),
            "monitor" => self.parse_monitor(span),
            _ => self.parse_relation(word, span),
        }
    }

    fn parse_element(&mut self, kind: ElementKind, span: Span) -> Result<SrcItem, ParseDiagnostic> {
        let (id, _) = self.expect_ident("element id")?;
        let (text, _) = self.expect_string("element text")?;
        let mut undeveloped = false;
        let mut evidence = None;
        if matches!(self.peek(), Some(Token { tok: Tok::LBracket, .. })) {
            self.bump();
            if !matches!(self.peek(), Some(Token { tok: Tok::RBracket, .. })) {
                loop {
                    let (attr, attr_span) = self.expect_ident("an attribute")?;
                    match attr.as_str() {
                        "undeveloped" => undeveloped = true,
                        "evidence" => {
                            let (label, _) = self.expect_string("evidence label")?;
                            let availability = match self.peek() {
                                Some(Token { tok: Tok::Ident(word), span }) => {
                                    let availability = match word.as_str() {
                                        "available" => Availability::Available,
                                        "pending" => Availability::OperationalPending,
                                        "missing" => Availability::Missing,
                                        other => {
                                            return Err(self.error(
                                                "P004",
                                                span.clone(),
                                                format!("unknown evidence availability `{other}`"),
                                            ));
                                        }
                                    };
                                    self.bump();
                                    availability
                                }
                                _ => Availability::Available,
                            };
                            evidence = Some((label, availability));
                        }
                        other => {
                            return Err(self.error(
                                "P004",
                                attr_span,
                                format!("unknown attribute `{other}`"),
                            ));
                        }
                    }
                    match self.peek() {
                        Some(Token { tok: Tok::Comma, .. }) => {
                            self.bump();
                        }
                        Some(Token { tok: Tok::RBracket, .. }) => break,
                        _ => return Err(self.expected("`,` or `]`")),
                    }
                }
            }
            self.expect_tok(&Tok::RBracket, "`]`")?;
        }
        Ok(SrcItem::Element {
            kind,
            id,
            text,
            undeveloped,
            evidence,
            span,
        })
    }

    fn parse_target(&mut self) -> Result<SrcTarget, ParseDiagnostic> {
        let (first, _) = self.expect_ident("a target id")?;
        if matches!(self.peek(), Some(Token { tok: Tok::Arrow, .. })) {
            self.bump();
            let (second, _) = self.expect_ident("the relation's target id")?;
            Ok(SrcTarget::Pair(first, second))
        } else {
            Ok(SrcTarget::Id(first))
        }
    }

    fn parse_challenge(&mut self, span: Span) -> Result<SrcChallenge, ParseDiagnostic> {
        let (id, _) = self.expect_ident("challenge id")?;
        let (kind_word, kind_span) = self.expect_ident("`rebuts` or `undercuts`")?;
        let kind = match kind_word.as_str() {
            "rebuts" => ChallengeKind::Rebut,
            "undercuts" => ChallengeKind::Undercut,
            other => {
                return Err(self.error(
                    "P004",
                    kind_span,
                    format!("unknown challenge kind `{other}` (expected rebuts or undercuts)"),
                ));
            }
        };
        let target = self.parse_target()?;
        let mut counter_evidence = false;
        let mut evidence = None;
        if self.at_keyword("as") {
            self.bump();
            let (form, form_span) = self.expect_ident("`argument` or `evidence`")?;
            match form.as_str() {
                "argument" => {}
                "evidence" => {
                    counter_evidence = true;
                    let (reference, _) = self.expect_string("evidence reference")?;
                    evidence = Some(reference);
                }
                other => {
                    return Err(self.error(
                        "P004",
                        form_span,
                        format!("unknown challenge form `{other}` (expected argument or evidence)"),
                    ));
                }
            }
        }
        let (text, _) = self.expect_string("challenge text")?;
        let mut provenance = Provenance::Developer;
        if self.at_keyword("from") {
            self.bump();
            let (word, word_span) = self.expect_ident("a provenance")?;
            provenance = match word.as_str() {
                "developer" => Provenance::Developer,
                "review" => Provenance::IndependentReview,
                "operational" => Provenance::Operational,
                other => {
                    return Err(self.error(
                        "P004",
                        word_span,
                        format!("unknown provenance `{other}` (expected developer, review or operational)"),
                    ));
                }
            };
        }
        Ok(SrcChallenge {
            id,
            kind,
            target,
            evidence,
            counter_evidence,
            text,
            provenance,
            span,
        })
    }

    fn parse_resolve(&mut self, span: Span) -> Result<SrcItem, ParseDiagnostic> {
        let (challenge, _) = self.expect_ident("challenge id")?;
        self.expect_keyword("by")?;
        let (word, word_span) = self.expect_ident("a resolution strategy")?;
        let strategy = match word.as_str() {
            "rebuttal" => SrcStrategy::Rebuttal(self.expect_ident("rebutting challenge id")?.0),
            "change" => {
                let (record, _) = self.expect_string("change record")?;
                let implemented = if self.at_keyword("implemented") {
                    self.bump();
                    true
                } else {
                    false
                };
                SrcStrategy::Change(record, implemented)
            }
            "confidence" => SrcStrategy::Confidence(self.expect_ident("claim point id")?.0),
            "operational" => SrcStrategy::Operational(self.expect_ident("claim point id")?.0),
            "monitoring" => SrcStrategy::Monitoring(self.expect_ident("monitor id")?.0),
            other => {
                return Err(self.error(
                    "P004",
                    word_span,
                    format!(
                        "unknown resolution strategy `{other}` (expected rebuttal, change, confidence, operational or monitoring)"
                    ),
                ));
            }
        };
        let note = if self.at_keyword("note") {
            self.bump();
            self.expect_string("resolution note")?.0
        } else {
            String::new()
        };
        Ok(SrcItem::Resolve {
            challenge,
            strategy,
            note,
            span,
        })
    }

    fn parse_defer(&mut self, span: Span) -> Result<SrcItem, ParseDiagnostic> {
        let (challenge, _) = self.expect_ident("challenge id")?;
        let (note, _) = self.expect_string("deferral note")?;
        Ok(SrcItem::Defer {
            challenge,
            note,
            span,
        })
    }

    fn parse_claim_point(
        &mut self,
        kind: ClaimPointKind,
        span: Span,
    ) -> Result<SrcItem, ParseDiagnostic> {
        let (id, _) = self.expect_ident("claim point id")?;
        self.expect_keyword("at")?;
        let at = self.parse_target()?;
        self.expect_keyword("claims")?;
        let (claim, _) = self.expect_string("claim text")?;
        self.expect_keyword("module")?;
        let (module, _) = self.expect_ident("target module id")?;
        Ok(SrcItem::ClaimPoint {
            kind,
            id,
            at,
            claim,
            module,
            span,
        })
    }

    fn parse_monitor(&mut self, span: Span) -> Result<SrcItem, ParseDiagnostic> {
        let (id, _) = self.expect_ident("monitor id")?;
        self.expect_keyword("watches")?;
        let (watches, _) = self.expect_ident("watched id")?;
        let (description, _) = self.expect_string("monitor description")?;
        let (word, word_span) = self.expect_ident("a monitor status")?;
        let status = match word.as_str() {
            "proposed" => MonitorStatus::Proposed,
            "defined" => MonitorStatus::Defined,
            "active" => MonitorStatus::Active,
            other => {
                return Err(self.error(
                    "P004",
                    word_span,
                    format!("unknown monitor status `{other}` (expected proposed, defined or active)"),
                ));
            }
        };
        Ok(SrcItem::Monitor {
            id,
            watches,
            description,
            status,
            span,
        })
    }

    fn parse_relation(&mut self, from: String, span: Span) -> Result<SrcItem, ParseDiagnostic> {
        let kind = if self.at_keyword("supported_by") {
            self.bump();
            RelationKind::SupportedBy
        } else if self.at_keyword("in_context_of") {
            self.bump();
            RelationKind::InContextOf
        } else {
            return Err(self.expected(&format!("`supported_by` or `in_context_of` after `{from}`")));
        };
        let (to, _) = self.expect_ident("the relation's target id")?;
        Ok(SrcItem::Relation {
            from,
            kind,
            to,
            span,
        })
    }
}

pub(crate) fn parse_source(file: &str, text: &str) -> Result<SrcModel, Vec<ParseDiagnostic>> {
    let tokens = lex(file, text).map_err(|e| vec![e])?;
    let mut parser = Parser {
        file,
        tokens,
        pos: 0,
    };
    parser.parse_model().map_err(|e| vec![e])
}

/// Parse exactly one `challenge ...` declaration (used for review findings).
pub(crate) fn parse_challenge_source(
    file: &str,
    text: &str,
) -> Result<SrcChallenge, Vec<ParseDiagnostic>> {
    let tokens = lex(file, text).map_err(|e| vec![e])?;
    let mut parser = Parser {
        file,
        tokens,
        pos: 0,
    };
    let span = parser.expect_keyword("challenge").map_err(|e| vec![e])?;
    let challenge = parser.parse_challenge(span).map_err(|e| vec![e])?;
    if let Some(t) = parser.peek() {
        return Err(vec![parser.error(
            "P003",
            t.span.clone(),
            format!("expected end of declaration, found {}", t.tok.describe()),
        )]);
    }
    Ok(challenge)
}

// =====================================================================
// Semantic phase
// =====================================================================

fn code_for(err: &ModelError) -> &'static str {
    match err {
        ModelError::DuplicateId(_) => "P005",
        ModelError::UnknownModule(_)
        | ModelError::UnknownId(_)
        | ModelError::DanglingTarget(_)
        | ModelError::DanglingResolutionRef(_)
        | ModelError::UnknownChallenge(_) => "P006",
        ModelError::WouldCreateCycle { .. } | ModelError::ChallengeCycle(_) => "P008",
        _ => "P007",
    }
}

fn diag_for(err: &ModelError, span: &Span) -> ParseDiagnostic {
    ParseDiagnostic {
        code: code_for(err).to_string(),
        message: err.to_string(),
        span: span.clone(),
    }
}

/// Resolve a challenge's source target against what the model holds and what
/// the file declares.
fn challenge_target(
    model: &ArgumentModel,
    declared_challenges: &BTreeSet<String>,
    src: &SrcChallenge,
) -> Result<ChallengeTarget, ParseDiagnostic> {
    match &src.target {
        SrcTarget::Pair(f, t) => Ok(ChallengeTarget::Relation(
            ElementId::new(f.clone()).expect("lexed ident"),
            ElementId::new(t.clone()).expect("lexed ident"),
        )),
        SrcTarget::Id(x) => {
            let id = ElementId::new(x.clone()).expect("lexed ident");
            if model.element(&id).is_some() {
                Ok(ChallengeTarget::Element(id))
            } else if declared_challenges.contains(x) || model.challenges.contains_key(&ChallengeId::new(x.clone()).expect("lexed ident")) {
                Ok(ChallengeTarget::Challenge(
                    ChallengeId::new(x.clone()).expect("lexed ident"),
                ))
            } else {
                Err(ParseDiagnostic {
                    code: "P006".to_string(),
                    message: format!("challenge `{}` targets unknown id `{x}`", src.id),
                    span: src.span.clone(),
                })
            }
        }
    }
}

fn build_challenge_value(
    model: &ArgumentModel,
    declared_challenges: &BTreeSet<String>,
    src: &SrcChallenge,
) -> Result<Challenge, ParseDiagnostic> {
    let target = challenge_target(model, declared_challenges, src)?;
    Ok(Challenge {
        id: ChallengeId::new(src.id.clone()).expect("lexed ident"),
        kind: src.kind,
        form: if src.counter_evidence {
            ChallengeForm::CounterEvidence
        } else {
            ChallengeForm::CounterArgument
        },
        target,
        text: src.text.clone(),
        provenance: src.provenance,
        evidence_ref: src.evidence.clone(),
    })
}

/// Build a finding challenge against an existing model (no insertion).
pub(crate) fn build_challenge_item(
    model: &ArgumentModel,
    src: &SrcChallenge,
) -> Result<Challenge, Vec<ParseDiagnostic>> {
    build_challenge_value(model, &BTreeSet::new(), src).map_err(|e| vec![e])
}

pub(crate) fn build_model(src: &SrcModel) -> Result<ArgumentModel, Vec<ParseDiagnostic>> {
    let mut diags: Vec<ParseDiagnostic> = Vec::new();
    let mut model = match ArgumentModel::new(src.name.clone()) {
        Ok(m) => m,
        Err(e) => return Err(vec![diag_for(&e, &src.name_span)]),
    };

    // Modules first: every later item may reference any module.
    let mut dead_modules: BTreeSet<String> = BTreeSet::new();
    for m in &src.modules {
        let id = ModuleId::new(m.id.clone()).expect("lexed ident");
        match model.add_module(id, m.kind) {
            Ok(next) => model = next,
            Err(e) => {
                diags.push(diag_for(&e, &m.span));
                dead_modules.insert(m.id.clone());
            }
        }
    }

    // Elements, then relations, module by module.
    for m in &src.modules {
        if dead_modules.contains(&m.id) {
            continue;
        }
        let module_id = ModuleId::new(m.id.clone()).expect("lexed ident");
        for item in &m.items {
            if let SrcItem::Element {
                kind,
                id,
                text,
                undeveloped,
                evidence,
                span,
            } = item
            {
                let mut element =
                    Element::new(ElementId::new(id.clone()).expect("lexed ident"), *kind, text.clone());
                element.undeveloped = *undeveloped;
                if let Some((label, availability)) = evidence {
                    element.evidence = Some(crate::model::EvidenceRef {
                        label: label.clone(),
                        availability: *availability,
                    });
                }
                match model.add_element(&module_id, element) {
                    Ok(next) => model = next,
                    Err(e) => diags.push(diag_for(&e, span)),
                }
            }
        }
    }
    for m in &src.modules {
        if dead_modules.contains(&m.id) {
            continue;
        }
        for item in &m.items {
            if let SrcItem::Relation {
                from,
                kind,
                to,
                span,
            } = item
            {
                let relation = Relation {
                    from: ElementId::new(from.clone()).expect("lexed ident"),
                    to: ElementId::new(to.clone()).expect("lexed ident"),
                    kind: *kind,
                };
                match model.link(relation) {
                    Ok(next) => model = next,
                    Err(e) => diags.push(diag_for(&e, span)),
                }
            }
        }
    }

    // Challenges in passes: forward references to later challenges are fine.
    let mut pending: Vec<&SrcChallenge> = Vec::new();
    let mut declared_challenges: BTreeSet<String> = BTreeSet::new();
    for m in &src.modules {
        for item in &m.items {
            if let SrcItem::Challenge(c) = item {
                pending.push(c);
                declared_challenges.insert(c.id.clone());
            }
        }
    }
    let mut failed_challenges: BTreeSet<String> = BTreeSet::new();
    loop {
        let mut stuck: Vec<&SrcChallenge> = Vec::new();
        let mut progressed = false;
        for c in pending {
            let challenge = match build_challenge_value(&model, &declared_challenges, c) {
                Ok(ch) => ch,
                Err(d) => {
                    diags.push(d);
                    failed_challenges.insert(c.id.clone());
                    progressed = true; // the item is consumed, not stuck
                    continue;
                }
            };
            let target_pending = match &challenge.target {
                ChallengeTarget::Challenge(t) => !model.challenges.contains_key(t),
                _ => false,
            };
            if target_pending {
                stuck.push(c);
                continue;
            }
            match model.add_challenge(challenge) {
                Ok(next) => {
                    model = next;
                }
                Err(e) => {
                    diags.push(diag_for(&e, &c.span));
                    failed_challenges.insert(c.id.clone());
                }
            }
            progressed = true;
        }
        if stuck.is_empty() {
            break;
        }
        if !progressed {
            // Every leftover targets another challenge that never made it in:
            // either a cascade from a failed one, or a genuine reference cycle.
            for c in &stuck {
                let target = match &c.target {
                    SrcTarget::Id(x) => x.clone(),
                    SrcTarget::Pair(f, t) => format!("{f} -> {t}"),
                };
                if failed_challenges.contains(&target) {
                    diags.push(ParseDiagnostic {
                        code: "P006".to_string(),
                        message: format!(
                            "challenge `{}` targets `{target}`, which could not be built",
                            c.id
                        ),
                        span: c.span.clone(),
                    });
                } else {
                    diags.push(ParseDiagnostic {
                        code: "P008".to_string(),
                        message: format!(
                            "challenge `{}` and its target `{target}` form a reference cycle",
                            c.id
                        ),
                        span: c.span.clone(),
                    });
                }
            }
            break;
        }
        pending = stuck;
    }

    // Claim points.
    for m in &src.modules {
        for item in &m.items {
            if let SrcItem::ClaimPoint {
                kind,
                id,
                at,
                claim,
                module,
                span,
            } = item
            {
                let attached_to = match at {
                    SrcTarget::Id(x) => {
                        Attachment::Element(ElementId::new(x.clone()).expect("lexed ident"))
                    }
                    SrcTarget::Pair(f, t) => Attachment::Relation(
                        ElementId::new(f.clone()).expect("lexed ident"),
                        ElementId::new(t.clone()).expect("lexed ident"),
                    ),
                };
                let cp = ClaimPoint {
                    id: ClaimPointId::new(id.clone()).expect("lexed ident"),
                    kind: *kind,
                    attached_to,
                    target_module: ModuleId::new(module.clone()).expect("lexed ident"),
                    claim_text: claim.clone(),
                };
                match model.add_claim_point(cp) {
                    Ok(next) => model = next,
                    Err(e) => diags.push(diag_for(&e, span)),
                }
            }
        }
    }

    // Monitors (after challenges so a watch can resolve either way).
    for m in &src.modules {
        for item in &m.items {
            if let SrcItem::Monitor {
                id,
                watches,
                description,
                status,
                span,
            } = item
            {
                let watch_element = ElementId::new(watches.clone()).expect("lexed ident");
                let watch = if model.element(&watch_element).is_some() {
                    MonitorWatch::Element(watch_element)
                } else {
                    let as_challenge = ChallengeId::new(watches.clone()).expect("lexed ident");
                    if model.challenges.contains_key(&as_challenge) {
                        MonitorWatch::Challenge(as_challenge)
                    } else {
                        diags.push(ParseDiagnostic {
                            code: "P006".to_string(),
                            message: format!("monitor `{id}` watches unknown id `{watches}`"),
                            span: span.clone(),
                        });
                        continue;
                    }
                };
                let monitor = MonitorObligation {
                    id: MonitorId::new(id.clone()).expect("lexed ident"),
                    description: description.clone(),
                    watches: watch,
                    status: *status,
                };
                match model.add_monitor(monitor) {
                    Ok(next) => model = next,
                    Err(e) => diags.push(diag_for(&e, span)),
                }
            }
        }
    }

    // Resolutions and deferrals last: they reference everything else.
    for m in &src.modules {
        for item in &m.items {
            match item {
                SrcItem::Resolve {
                    challenge,
                    strategy,
                    note,
                    span,
                } => {
                    let id = ChallengeId::new(challenge.clone()).expect("lexed ident");
                    let strategy = match strategy {
                        SrcStrategy::Rebuttal(r) => ResolutionStrategy::Rebuttal {
                            rebutting: ChallengeId::new(r.clone()).expect("lexed ident"),
                        },
                        SrcStrategy::Change(record, implemented) => ResolutionStrategy::Change {
                            record: record.clone(),
                            implemented: *implemented,
                        },
                        SrcStrategy::Confidence(r) => ResolutionStrategy::ConfidenceArgument {
                            reference: r.clone(),
                        },
                        SrcStrategy::Operational(r) => ResolutionStrategy::OperationalArgument {
                            reference: r.clone(),
                        },
                        SrcStrategy::Monitoring(r) => ResolutionStrategy::Monitoring {
                            monitor: MonitorId::new(r.clone()).expect("lexed ident"),
                        },
                    };
                    let mut resolution = Resolution::new(strategy);
                    resolution.note = note.clone();
                    match model.record_resolution(&id, resolution) {
                        Ok(next) => model = next,
                        Err(e) => diags.push(diag_for(&e, span)),
                    }
                }
                SrcItem::Defer {
                    challenge,
                    note,
                    span,
                } => {
                    let id = ChallengeId::new(challenge.clone()).expect("lexed ident");
                    match model.defer_challenge(&id, note.clone()) {
                        Ok(next) => model = next,
                        Err(e) => diags.push(diag_for(&e, span)),
                    }
                }
                _ => {}
            }
        }
    }

    if diags.is_empty() {
        Ok(model)
    } else {
        diags.sort_by_key(|d| (d.span.line, d.span.col, d.code.clone()));
        Err(diags)
    }
}
