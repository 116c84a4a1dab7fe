//! The line-oriented `.lpn` text format.
//!
//! ```text
//! places p q
//! initial p=1
//! trans t label a pre p:1 post p:1 q:1
//! trans u label ~ pre q:1
//! alphabet a b
//! ```
//!
//! `#` starts a comment and `~` marks an unobservable transition. Places not
//! listed in `initial` start empty. The alphabet is the set of labels used,
//! widened by any `alphabet` line. Comments of the form
//! `# role <place|trans|symbol> <id> <role>` carry gadget provenance.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::gadgets::{ElementKind, GadgetOutput, Provenance};
use crate::net::{LabeledPetriNet, NetBuilder, NetError};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown place '{0}'")]
    UnknownPlace(String),
    #[error("duplicate identifier '{0}'")]
    DuplicateId(String),
    #[error("negative number '{0}'")]
    NegativeNumber(String),
    #[error("invalid number '{0}'")]
    InvalidNumber(String),
    #[error("transition '{0}' has no label")]
    MissingLabel(String),
    #[error("place '{0}' listed twice")]
    DuplicateEntry(String),
    #[error("invalid identifier '{0}'")]
    InvalidId(String),
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("unknown directive '{0}'")]
    UnknownDirective(String),
    #[error(transparent)]
    Net(NetError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {}, column {}: {kind}", span.line, span.column)]
pub struct ParseError {
    pub span: Span,
    pub kind: ParseErrorKind,
}

/// A parsed net with the source position of every declaration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetDocument {
    pub net: LabeledPetriNet,
    pub provenance: Vec<Provenance>,
    pub place_spans: Vec<Span>,
    pub transition_spans: Vec<Span>,
}

impl NetDocument {
    pub fn into_gadget(self) -> GadgetOutput {
        GadgetOutput {
            net: self.net,
            provenance: self.provenance,
            secret: None,
        }
    }
}

struct Token<'a> {
    text: &'a str,
    span: Span,
}

fn tokens(line: &str, lineno: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    span: Span {
                        line: lineno,
                        column: line[..s].chars().count() + 1,
                    },
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn err<T>(span: Span, kind: ParseErrorKind) -> Result<T, ParseError> {
    Err(ParseError { span, kind })
}

fn ident<'a>(tok: &Token<'a>) -> Result<&'a str, ParseError> {
    let t = tok.text;
    if t.is_empty() || t == "~" || t.contains([':', '=', '#']) {
        return err(tok.span, ParseErrorKind::InvalidId(t.to_string()));
    }
    Ok(t)
}

fn number(text: &str, span: Span) -> Result<u64, ParseError> {
    if text.starts_with('-') {
        return err(span, ParseErrorKind::NegativeNumber(text.to_string()));
    }
    text.parse()
        .or_else(|_| err(span, ParseErrorKind::InvalidNumber(text.to_string())))
}

/// Splits `id<sep>n`, reporting the number's own column on errors.
fn entry<'a>(tok: &Token<'a>, sep: char, what: &'static str) -> Result<(&'a str, u64), ParseError> {
    let Some((id, n)) = tok.text.split_once(sep) else {
        return err(tok.span, ParseErrorKind::Expected(what));
    };
    let id_tok = Token { text: id, span: tok.span };
    let id = ident(&id_tok)?;
    let span = Span {
        line: tok.span.line,
        column: tok.span.column + id.chars().count() + 1,
    };
    Ok((id, number(n, span)?))
}

struct PendingTrans<'a> {
    id: &'a str,
    label: Option<&'a str>,
    pre: Vec<(&'a str, u64, Span)>,
    post: Vec<(&'a str, u64, Span)>,
    span: Span,
}

/// Parses a `.lpn` document.
pub fn parse_lpn(text: &str) -> Result<NetDocument, ParseError> {
    let mut places: Vec<(&str, Span)> = Vec::new();
    let mut initial: Vec<(&str, u64, Span)> = Vec::new();
    let mut trans: Vec<PendingTrans> = Vec::new();
    let mut symbols: Vec<&str> = Vec::new();
    let mut provenance = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let (body, comment) = match raw.find('#') {
            Some(k) => (&raw[..k], Some(&raw[k + 1..])),
            None => (raw, None),
        };
        if let Some(c) = comment {
            if let Some(p) = provenance_comment(c) {
                provenance.push(p);
            }
        }
        let toks = tokens(body, lineno);
        let Some(head) = toks.first() else { continue };
        let rest = &toks[1..];
        match head.text {
            "places" => {
                if rest.is_empty() {
                    return err(head.span, ParseErrorKind::Expected("at least one place"));
                }
                for t in rest {
                    places.push((ident(t)?, t.span));
                }
            }
            "initial" => {
                for t in rest {
                    let (id, n) = entry(t, '=', "<place>=<count>")?;
                    initial.push((id, n, t.span));
                }
            }
            "alphabet" => {
                for t in rest {
                    symbols.push(ident(t)?);
                }
            }
            "trans" => trans.push(parse_trans(head, rest)?),
            other => return err(head.span, ParseErrorKind::UnknownDirective(other.to_string())),
        }
    }

    let mut ids: HashMap<&str, Span> = HashMap::new();
    for (id, span) in places.iter().copied().chain(trans.iter().map(|t| (t.id, t.span))) {
        if ids.insert(id, span).is_some() {
            return err(span, ParseErrorKind::DuplicateId(id.to_string()));
        }
    }
    let place_set: BTreeSet<&str> = places.iter().map(|&(p, _)| p).collect();
    let known = |id: &str, span: Span| -> Result<(), ParseError> {
        if place_set.contains(id) {
            Ok(())
        } else {
            err(span, ParseErrorKind::UnknownPlace(id.to_string()))
        }
    };
    let unique = |list: &[(&str, u64, Span)]| -> Result<(), ParseError> {
        let mut seen = BTreeSet::new();
        for &(id, _, span) in list {
            known(id, span)?;
            if !seen.insert(id) {
                return err(span, ParseErrorKind::DuplicateEntry(id.to_string()));
            }
        }
        Ok(())
    };
    unique(&initial)?;
    for t in &trans {
        unique(&t.pre)?;
        unique(&t.post)?;
    }

    let mut b = NetBuilder::new();
    for &(p, _) in &places {
        let n = initial.iter().find(|e| e.0 == p).map_or(0, |e| e.1);
        b.add_place(p, n);
    }
    for t in &trans {
        let arcs = |v: &[(&str, u64, Span)]| v.iter().map(|&(p, n, _)| (p.to_string(), n)).collect();
        b.add_transition(t.id, t.label.map(str::to_string), arcs(&t.pre), arcs(&t.post));
    }
    for s in symbols {
        b.add_symbol(s);
    }
    let net = b.build().map_err(|e| ParseError {
        span: Span { line: 1, column: 1 },
        kind: ParseErrorKind::Net(e),
    })?;
    Ok(NetDocument {
        net,
        provenance,
        place_spans: places.iter().map(|&(_, s)| s).collect(),
        transition_spans: trans.iter().map(|t| t.span).collect(),
    })
}

fn parse_trans<'a>(head: &Token<'a>, rest: &[Token<'a>]) -> Result<PendingTrans<'a>, ParseError> {
    let Some(id_tok) = rest.first() else {
        return err(head.span, ParseErrorKind::Expected("transition identifier"));
    };
    let id = ident(id_tok)?;
    let missing = || err(id_tok.span, ParseErrorKind::MissingLabel(id.to_string()));
    match rest.get(1) {
        Some(t) if t.text == "label" => {}
        _ => return missing(),
    }
    let label = match rest.get(2) {
        None => return missing(),
        Some(t) if t.text == "~" => None,
        Some(t) if t.text == "pre" || t.text == "post" => return missing(),
        Some(t) => Some(ident(t)?),
    };
    let mut out = PendingTrans {
        id,
        label,
        pre: Vec::new(),
        post: Vec::new(),
        span: id_tok.span,
    };
    // 0 = before pre, 1 = in pre, 2 = in post
    let mut section = 0;
    for t in &rest[3..] {
        match t.text {
            "pre" if section == 0 => section = 1,
            "post" if section < 2 => section = 2,
            _ if section == 0 => return err(t.span, ParseErrorKind::Expected("'pre' or 'post'")),
            _ => {
                let (p, n) = entry(t, ':', "<place>:<weight>")?;
                let list = if section == 1 { &mut out.pre } else { &mut out.post };
                list.push((p, n, t.span));
            }
        }
    }
    Ok(out)
}

fn provenance_comment(c: &str) -> Option<Provenance> {
    let mut it = c.split_whitespace();
    if it.next()? != "role" {
        return None;
    }
    let kind = ElementKind::from_keyword(it.next()?)?;
    let id = it.next()?.to_string();
    let role: Vec<&str> = it.collect();
    if role.is_empty() {
        return None;
    }
    Some(Provenance {
        kind,
        id,
        role: role.join(" "),
    })
}

/// Canonical text of a net: places, initial marking, transitions, in
/// declared order.
pub fn render_lpn(net: &LabeledPetriNet) -> String {
    let mut out = String::new();
    if !net.places().is_empty() {
        out.push_str("places ");
        out.push_str(&net.places().join(" "));
        out.push('\n');
    }
    let init: Vec<String> = net
        .places()
        .iter()
        .zip(net.initial_marking().counts())
        .filter(|(_, &n)| n > 0)
        .map(|(p, n)| format!("{p}={n}"))
        .collect();
    if !init.is_empty() {
        out.push_str("initial ");
        out.push_str(&init.join(" "));
        out.push('\n');
    }
    let arcs = |row: &[u64]| -> Vec<String> {
        row.iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(p, n)| format!("{}:{n}", net.places()[p]))
            .collect()
    };
    for (i, t) in net.transitions().iter().enumerate() {
        let label = net.label_name(crate::net::TransitionId(i)).unwrap_or("~");
        out.push_str(&format!("trans {} label {label}", t.id));
        for (kw, row) in [("pre", &t.pre), ("post", &t.post)] {
            let a = arcs(row);
            if !a.is_empty() {
                out.push_str(&format!(" {kw} {}", a.join(" ")));
            }
        }
        out.push('\n');
    }
    let used: BTreeSet<&str> = (0..net.num_transitions())
        .filter_map(|i| net.label_name(crate::net::TransitionId(i)))
        .collect();
    let extra: Vec<&str> = net.alphabet().iter().map(String::as_str).filter(|s| !used.contains(s)).collect();
    if !extra.is_empty() {
        out.push_str(&format!("alphabet {}\n", extra.join(" ")));
    }
    out
}

/// A gadget net with its provenance as `# role` comments.
pub fn render_gadget(g: &GadgetOutput) -> String {
    let mut out = String::new();
    for p in &g.provenance {
        out.push_str(&format!("# role {} {} {}\n", p.kind.keyword(), p.id, p.role));
    }
    out.push_str(&render_lpn(&g.net));
    out
}
