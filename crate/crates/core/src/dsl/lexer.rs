use super::{Diagnostic, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Colon,
    Comma,
    Lt,
    Eq,
    Arrow,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Arrow => "`->`".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn is_ident(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '.' || c == '\''
}

/// Tokens, plus one diagnostic per unexpected character.
pub(crate) fn lex(src: &str) -> (Vec<Token>, Vec<Diagnostic>) {
    let mut toks = Vec::new();
    let mut diags = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        let single = |tok| Some((tok, i + c.len_utf8()));
        let found = match c {
            _ if c.is_whitespace() => None,
            '#' => {
                while chars.next_if(|&(_, c)| c != '\n').is_some() {}
                None
            }
            '{' => single(Tok::LBrace),
            '}' => single(Tok::RBrace),
            '[' => single(Tok::LBracket),
            ']' => single(Tok::RBracket),
            '(' => single(Tok::LParen),
            ')' => single(Tok::RParen),
            ':' => single(Tok::Colon),
            ',' => single(Tok::Comma),
            '<' => single(Tok::Lt),
            '=' => single(Tok::Eq),
            '-' if chars.peek().is_some_and(|&(_, c)| c == '>') => {
                chars.next();
                Some((Tok::Arrow, i + 2))
            }
            _ if is_ident(c) => {
                let mut end = i + c.len_utf8();
                while let Some((j, d)) = chars.next_if(|&(_, d)| is_ident(d)) {
                    end = j + d.len_utf8();
                }
                Some((Tok::Ident(src[i..end].to_string()), end))
            }
            _ => {
                diags.push(Diagnostic::error(src, Span::new(i, i + c.len_utf8()), format!("unexpected character `{c}`")));
                None
            }
        };
        if let Some((tok, end)) = found {
            toks.push(Token { tok, span: Span::new(i, end) });
        }
    }
    (toks, diags)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_comments() {
        let (toks, diags) = lex("quantale Q { # comment\n unit: f012 } ->");
        assert!(diags.is_empty());
        let kinds: Vec<Tok> = toks.into_iter().map(|t| t.tok).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Ident("quantale".into()),
                Tok::Ident("Q".into()),
                Tok::LBrace,
                Tok::Ident("unit".into()),
                Tok::Colon,
                Tok::Ident("f012".into()),
                Tok::RBrace,
                Tok::Arrow
            ]
        );
    }

    #[test]
    fn bad_characters_are_reported() {
        let (toks, diags) = lex("a ⊗ b - c");
        assert_eq!(toks.len(), 3);
        assert_eq!(diags.len(), 2);
        assert_eq!((diags[0].line, diags[0].column), (1, 3));
    }
}
