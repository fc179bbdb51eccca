use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Note,
}

/// Byte range into the source text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn to(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    /// 1-based.
    pub line: usize,
    /// 1-based, counted in characters.
    pub column: usize,
    pub span: Span,
}

impl Diagnostic {
    pub fn at(source: &str, span: Span, severity: Severity, message: impl Into<String>) -> Self {
        let span = Span::new(span.start.min(source.len()), span.end.min(source.len()));
        let (line, column) = line_col(source, span.start);
        Diagnostic { severity, message: message.into(), line, column, span }
    }

    pub fn error(source: &str, span: Span, message: impl Into<String>) -> Self {
        Self::at(source, span, Severity::Error, message)
    }

    pub fn note(source: &str, span: Span, message: impl Into<String>) -> Self {
        Self::at(source, span, Severity::Note, message)
    }
}

fn line_col(source: &str, offset: usize) -> (usize, usize) {
    let mut offset = offset.min(source.len());
    while !source.is_char_boundary(offset) {
        offset -= 1;
    }
    let before = &source[..offset];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    (line, before[line_start..].chars().count() + 1)
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Note => "note",
        };
        write!(f, "{}:{}: {sev}: {}", self.line, self.column, self.message)
    }
}
