//! The GRPD text format and its sidecar formats.
//!
//! ```text
//! # pair groupoid on two objects
//! groupoid pair2
//! elements (1,1) (1,2)
//! elements (2,1) (2,2)
//! prod (1,1) (1,1) (1,1)
//! prod (1,1) (1,2) (1,2)
//! ...
//! end
//! ```
//!
//! `#` starts a comment. Tokens are maximal runs of non-whitespace
//! characters other than `#`. LF and CRLF are accepted; LF is emitted.
//! Subset files hold one token per line; mapping files hold `x -> y` lines.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::groupoid::{validate, Groupoid, RawTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax { expected: String, got: String },
    DuplicateElement(String),
    DuplicateProduct(String, String),
    UndeclaredToken(String),
}

/// A diagnostic positioned at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Syntax { expected, got } => write!(f, "expected {expected}, got {got}"),
            ParseErrorKind::DuplicateElement(t) => write!(f, "duplicate element `{t}`"),
            ParseErrorKind::DuplicateProduct(x, y) => {
                write!(f, "duplicate product for `{x}` `{y}`")
            }
            ParseErrorKind::UndeclaredToken(t) => write!(f, "undeclared token `{t}`"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    span: Span,
}

/// Splits one line (comment already included) into positioned tokens.
fn tokenize(line: &str, line_no: usize) -> Vec<Token<'_>> {
    let code = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    let mut column = 0;
    for (byte, ch) in code.char_indices() {
        column += 1;
        if ch.is_whitespace() {
            if let Some((b, c)) = start.take() {
                out.push(Token {
                    text: &code[b..byte],
                    span: Span {
                        line: line_no,
                        column: c,
                    },
                });
            }
        } else if start.is_none() {
            start = Some((byte, column));
        }
    }
    if let Some((b, c)) = start {
        out.push(Token {
            text: &code[b..],
            span: Span {
                line: line_no,
                column: c,
            },
        });
    }
    out
}

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .enumerate()
        .map(|(i, l)| (i + 1, l))
}

fn syntax(span: Span, expected: &str, got: impl Into<String>) -> ParseError {
    ParseError {
        line: span.line,
        column: span.column,
        kind: ParseErrorKind::Syntax {
            expected: expected.to_string(),
            got: got.into(),
        },
    }
}

fn at(span: Span, kind: ParseErrorKind) -> ParseError {
    ParseError {
        line: span.line,
        column: span.column,
        kind,
    }
}

/// A parsed GRPD document, before axiom validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrpdDocument {
    pub name: String,
    pub elements: Vec<String>,
    /// `(x, y, z)` meaning `xy = z`, in file order.
    pub products: Vec<(String, String, String)>,
    pub element_spans: Vec<Span>,
    pub product_spans: Vec<Span>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Header,
    Elements,
    Products,
    Done,
}

pub fn parse(text: &str) -> Result<GrpdDocument, ParseError> {
    let mut section = Section::Header;
    let mut name = String::new();
    let mut elements = Vec::new();
    let mut element_spans = Vec::new();
    let mut declared: HashSet<String> = HashSet::new();
    let mut products = Vec::new();
    let mut product_spans = Vec::new();
    let mut seen_pairs: HashSet<(String, String)> = HashSet::new();
    let mut last = Span { line: 1, column: 1 };

    for (line_no, line) in lines(text) {
        let toks = tokenize(line, line_no);
        last = Span {
            line: line_no,
            column: line.chars().count() + 1,
        };
        let Some((head, rest)) = toks.split_first() else {
            continue;
        };
        match (section, head.text) {
            (Section::Done, _) => return Err(syntax(head.span, "end of input", head.text)),
            (Section::Header, "groupoid") => match rest {
                [n] => {
                    name = n.text.to_string();
                    section = Section::Elements;
                }
                [] => return Err(syntax(last, "groupoid name", "end of line")),
                [_, extra, ..] => return Err(syntax(extra.span, "end of line", extra.text)),
            },
            (Section::Header, _) => return Err(syntax(head.span, "`groupoid`", head.text)),
            (Section::Elements, "elements") => {
                if rest.is_empty() {
                    return Err(syntax(last, "element token", "end of line"));
                }
                for t in rest {
                    if !declared.insert(t.text.to_string()) {
                        return Err(at(t.span, ParseErrorKind::DuplicateElement(t.text.into())));
                    }
                    elements.push(t.text.to_string());
                    element_spans.push(t.span);
                }
            }
            (Section::Elements | Section::Products, "prod" | "end") if elements.is_empty() => {
                return Err(syntax(head.span, "`elements`", head.text));
            }
            (Section::Elements | Section::Products, "prod") => {
                section = Section::Products;
                let [x, y, z] = rest else {
                    let span = rest.get(3).map_or(last, |t| t.span);
                    let got = rest.get(3).map_or("end of line", |t| t.text);
                    return Err(syntax(span, "`prod x y z`", got));
                };
                for t in [x, y, z] {
                    if !declared.contains(t.text) {
                        return Err(at(t.span, ParseErrorKind::UndeclaredToken(t.text.into())));
                    }
                }
                if !seen_pairs.insert((x.text.to_string(), y.text.to_string())) {
                    return Err(at(
                        head.span,
                        ParseErrorKind::DuplicateProduct(x.text.into(), y.text.into()),
                    ));
                }
                products.push((x.text.to_string(), y.text.to_string(), z.text.to_string()));
                product_spans.push(head.span);
            }
            (Section::Elements | Section::Products, "end") => {
                if let Some(extra) = rest.first() {
                    return Err(syntax(extra.span, "end of line", extra.text));
                }
                section = Section::Done;
            }
            (Section::Elements, _) => {
                let expected = if elements.is_empty() {
                    "`elements`"
                } else {
                    "`elements`, `prod` or `end`"
                };
                return Err(syntax(head.span, expected, head.text));
            }
            (Section::Products, _) => {
                return Err(syntax(head.span, "`prod` or `end`", head.text));
            }
        }
    }
    match section {
        Section::Done => Ok(GrpdDocument {
            name,
            elements,
            products,
            element_spans,
            product_spans,
        }),
        Section::Header => Err(syntax(last, "`groupoid`", "end of input")),
        Section::Elements if elements.is_empty() => Err(syntax(last, "`elements`", "end of input")),
        _ => Err(syntax(last, "`end`", "end of input")),
    }
}

impl GrpdDocument {
    pub fn to_raw(&self) -> Result<RawTable> {
        let index: HashMap<&str, usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, t)| (t.as_str(), i))
            .collect();
        RawTable::from_parts(
            self.elements.clone(),
            self.products
                .iter()
                .map(|(x, y, z)| ((index[x.as_str()], index[y.as_str()]), index[z.as_str()])),
        )
    }

    /// Runs the axiom validator on the document's table.
    pub fn validate(&self) -> Result<Groupoid> {
        validate(self.name.clone(), &self.to_raw()?)
    }
}

/// Parse and validate in one step.
pub fn read_groupoid(text: &str) -> Result<Groupoid> {
    parse(text).map_err(Error::from)?.validate()
}

const ELEMENTS_PER_LINE: usize = 8;

/// Canonical form: declaration order kept, products sorted by
/// `(x index, y index)`.
pub fn serialize(g: &Groupoid) -> String {
    let mut out = format!("groupoid {}\n", g.name());
    for chunk in g.tokens().chunks(ELEMENTS_PER_LINE) {
        out.push_str("elements ");
        out.push_str(&chunk.join(" "));
        out.push('\n');
    }
    for x in g.elements() {
        for y in g.elements() {
            if let Some(z) = g.compose(x, y) {
                out.push_str(&format!(
                    "prod {} {} {}\n",
                    g.token(x),
                    g.token(y),
                    g.token(z)
                ));
            }
        }
    }
    out.push_str("end\n");
    out
}

/// One token per line.
pub fn parse_subset(text: &str) -> Result<Vec<String>, ParseError> {
    let mut out = Vec::new();
    for (line_no, line) in lines(text) {
        match tokenize(line, line_no).as_slice() {
            [] => {}
            [t] => out.push(t.text.to_string()),
            [_, extra, ..] => return Err(syntax(extra.span, "end of line", extra.text)),
        }
    }
    Ok(out)
}

pub fn serialize_subset<S: AsRef<str>>(tokens: &[S]) -> String {
    tokens.iter().map(|t| format!("{}\n", t.as_ref())).collect()
}

/// `x -> y` lines.
pub fn parse_mapping(text: &str) -> Result<Vec<(String, String)>, ParseError> {
    let mut out = Vec::new();
    for (line_no, line) in lines(text) {
        let toks = tokenize(line, line_no);
        match toks.as_slice() {
            [] => {}
            [x, arrow, y] if arrow.text == "->" => out.push((x.text.into(), y.text.into())),
            [_, arrow, _] => return Err(syntax(arrow.span, "`->`", arrow.text)),
            [_, _, _, extra, ..] => return Err(syntax(extra.span, "end of line", extra.text)),
            _ => {
                let end = Span {
                    line: line_no,
                    column: line.chars().count() + 1,
                };
                return Err(syntax(end, "`x -> y`", "end of line"));
            }
        }
    }
    Ok(out)
}

pub fn serialize_mapping(pairs: &[(String, String)]) -> String {
    pairs.iter().map(|(x, y)| format!("{x} -> {y}\n")).collect()
}
