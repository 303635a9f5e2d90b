//! Lexing, parsing and printing of spectrum description documents.
//!
//! A document is a sequence of `kind name { key args: value }` blocks, one
//! entry per line. Values are comma-separated items of atoms; parentheses
//! group atoms into nested lists and may span lines.

use std::fmt;

use thiserror::Error;

/// A 1-based source position. Positions do not take part in equality, so
/// a printed and re-parsed document compares equal to the original.
#[derive(Debug, Clone, Copy, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Span {}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sym {
    Arrow,
    Le,
    Eq,
}

impl Sym {
    fn text(self) -> &'static str {
        match self {
            Sym::Arrow => "=>",
            Sym::Le => "<=",
            Sym::Eq => "=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Word(String, Span),
    Sym(Sym, Span),
    List(Vec<Atom>, Span),
}

impl Atom {
    pub fn span(&self) -> Span {
        match self {
            Atom::Word(_, s) | Atom::Sym(_, s) | Atom::List(_, s) => *s,
        }
    }

    pub fn word(&self) -> Option<&str> {
        match self {
            Atom::Word(w, _) => Some(w),
            _ => None,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Word(w, _) => f.write_str(w),
            Atom::Sym(s, _) => f.write_str(s.text()),
            Atom::List(xs, _) => {
                f.write_str("(")?;
                write_atoms(f, xs)?;
                f.write_str(")")
            }
        }
    }
}

fn write_atoms(f: &mut fmt::Formatter<'_>, xs: &[Atom]) -> fmt::Result {
    for (k, a) in xs.iter().enumerate() {
        if k > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

/// A comma-separated piece of a value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    pub atoms: Vec<Atom>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub args: Vec<Atom>,
    pub value: Vec<Item>,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockKind {
    Setoid,
    Directed,
    Family,
    Subbase,
    Spectrum,
    Cofinal,
    Cocone,
    Cone,
    Pool,
    Suite,
}

impl BlockKind {
    pub const ALL: [BlockKind; 10] = [
        BlockKind::Setoid,
        BlockKind::Directed,
        BlockKind::Family,
        BlockKind::Subbase,
        BlockKind::Spectrum,
        BlockKind::Cofinal,
        BlockKind::Cocone,
        BlockKind::Cone,
        BlockKind::Pool,
        BlockKind::Suite,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            BlockKind::Setoid => "setoid",
            BlockKind::Directed => "directed",
            BlockKind::Family => "family",
            BlockKind::Subbase => "subbase",
            BlockKind::Spectrum => "spectrum",
            BlockKind::Cofinal => "cofinal",
            BlockKind::Cocone => "cocone",
            BlockKind::Cone => "cone",
            BlockKind::Pool => "pool",
            BlockKind::Suite => "suite",
        }
    }

    fn from_keyword(w: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.keyword() == w)
    }
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockKind,
    pub name: String,
    pub entries: Vec<Entry>,
    pub span: Span,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub blocks: Vec<Block>,
}

impl Document {
    pub fn count(&self, kind: BlockKind) -> usize {
        self.blocks.iter().filter(|b| b.kind == kind).count()
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            writeln!(f, "{} {} {{", b.kind, b.name)?;
            for e in &b.entries {
                write!(f, "    {}", e.key)?;
                if !e.args.is_empty() {
                    f.write_str(" ")?;
                    write_atoms(f, &e.args)?;
                }
                f.write_str(":")?;
                for (n, item) in e.value.iter().enumerate() {
                    f.write_str(if n == 0 { " " } else { ", " })?;
                    write_atoms(f, &item.atoms)?;
                }
                writeln!(f)?;
            }
            writeln!(f, "}}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{at}: syntax error: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        at: Span,
        expected: Vec<String>,
        found: String,
    },
    #[error("{at}: unresolved {kind} reference `{name}`")]
    UnresolvedReference { at: Span, kind: String, name: String },
    #[error("{at}: type mismatch: expected {expected}, found {found}")]
    TypeMismatch { at: Span, expected: String, found: String },
    #[error("{at}: {message}")]
    Invalid { at: Span, message: String },
}

impl ParseError {
    pub fn at(&self) -> Span {
        match self {
            ParseError::Syntax { at, .. }
            | ParseError::UnresolvedReference { at, .. }
            | ParseError::TypeMismatch { at, .. }
            | ParseError::Invalid { at, .. } => *at,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Sym(Sym),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Colon,
    Comma,
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Sym(s) => write!(f, "`{}`", s.text()),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Newline => f.write_str("end of line"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '-' | '/' | '.' | '*')
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let at = Span { line, col };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        };
        match c {
            '\n' => {
                bump(&mut chars);
                if depth == 0 {
                    out.push((Tok::Newline, at));
                }
            }
            ' ' | '\t' | '\r' => bump(&mut chars),
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars);
                }
            }
            '{' | '}' | ':' | ',' => {
                bump(&mut chars);
                out.push((
                    match c {
                        '{' => Tok::LBrace,
                        '}' => Tok::RBrace,
                        ':' => Tok::Colon,
                        _ => Tok::Comma,
                    },
                    at,
                ));
            }
            '(' => {
                bump(&mut chars);
                depth += 1;
                out.push((Tok::LParen, at));
            }
            ')' => {
                bump(&mut chars);
                depth = depth.saturating_sub(1);
                out.push((Tok::RParen, at));
            }
            '=' | '<' => {
                bump(&mut chars);
                let next = chars.peek().copied();
                let sym = match (c, next) {
                    ('=', Some('>')) => {
                        bump(&mut chars);
                        Sym::Arrow
                    }
                    ('<', Some('=')) => {
                        bump(&mut chars);
                        Sym::Le
                    }
                    ('=', _) => Sym::Eq,
                    _ => {
                        return Err(ParseError::Syntax {
                            at,
                            expected: vec!["`<=`".into()],
                            found: "`<`".into(),
                        })
                    }
                };
                out.push((Tok::Sym(sym), at));
            }
            c if is_word_char(c) => {
                let mut w = String::new();
                while let Some(&c) = chars.peek().filter(|&&c| is_word_char(c)) {
                    w.push(c);
                    bump(&mut chars);
                }
                out.push((Tok::Word(w), at));
            }
            other => {
                return Err(ParseError::Syntax {
                    at,
                    expected: vec!["a token".into()],
                    found: format!("`{other}`"),
                })
            }
        }
    }
    out.push((Tok::Eof, Span { line, col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn next(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            at: self.span(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        })
    }

    fn skip_newlines(&mut self) {
        while *self.peek() == Tok::Newline {
            self.next();
        }
    }

    fn word(&mut self, what: &str) -> Result<(String, Span), ParseError> {
        match self.peek().clone() {
            Tok::Word(w) => {
                let at = self.span();
                self.next();
                Ok((w, at))
            }
            _ => self.fail(&[what]),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            self.fail(&[&tok.to_string()])
        }
    }

    fn document(&mut self) -> Result<Document, ParseError> {
        let mut blocks = Vec::new();
        self.skip_newlines();
        while *self.peek() != Tok::Eof {
            blocks.push(self.block()?);
            self.skip_newlines();
        }
        Ok(Document { blocks })
    }

    fn block(&mut self) -> Result<Block, ParseError> {
        let kinds: Vec<String> = BlockKind::ALL.iter().map(|k| format!("`{k}`")).collect();
        let kinds: Vec<&str> = kinds.iter().map(String::as_str).collect();
        let span = self.span();
        let kind = match self.peek() {
            Tok::Word(w) => match BlockKind::from_keyword(w) {
                Some(k) => k,
                None => return self.fail(&kinds),
            },
            _ => return self.fail(&kinds),
        };
        self.next();
        let (name, _) = self.word("block name")?;
        self.expect(Tok::LBrace)?;
        let mut entries = Vec::new();
        loop {
            self.skip_newlines();
            match self.peek() {
                Tok::RBrace => {
                    self.next();
                    break;
                }
                Tok::Word(_) => entries.push(self.entry()?),
                _ => return self.fail(&["entry key", "`}`"]),
            }
        }
        match self.peek() {
            Tok::Newline | Tok::Eof => {}
            _ => return self.fail(&["end of line"]),
        }
        Ok(Block {
            kind,
            name,
            entries,
            span,
        })
    }

    fn entry(&mut self) -> Result<Entry, ParseError> {
        let (key, span) = self.word("entry key")?;
        let mut args = Vec::new();
        while *self.peek() != Tok::Colon {
            match self.atom()? {
                Some(a) => args.push(a),
                None => return self.fail(&["`:`", "argument"]),
            }
        }
        self.next();
        let mut value = Vec::new();
        if !matches!(self.peek(), Tok::Newline | Tok::RBrace | Tok::Eof) {
            loop {
                let at = self.span();
                let mut atoms = Vec::new();
                while let Some(a) = self.atom()? {
                    atoms.push(a);
                }
                if atoms.is_empty() {
                    return self.fail(&["value"]);
                }
                value.push(Item { atoms, span: at });
                match self.peek() {
                    Tok::Comma => {
                        self.next();
                    }
                    Tok::Newline | Tok::RBrace | Tok::Eof => break,
                    _ => return self.fail(&["`,`", "end of line"]),
                }
            }
        }
        Ok(Entry { key, args, value, span })
    }

    fn atom(&mut self) -> Result<Option<Atom>, ParseError> {
        let at = self.span();
        match self.peek().clone() {
            Tok::Word(w) => {
                self.next();
                Ok(Some(Atom::Word(w, at)))
            }
            Tok::Sym(s) => {
                self.next();
                Ok(Some(Atom::Sym(s, at)))
            }
            Tok::LParen => {
                self.next();
                let mut xs = Vec::new();
                loop {
                    if *self.peek() == Tok::RParen {
                        self.next();
                        return Ok(Some(Atom::List(xs, at)));
                    }
                    match self.atom()? {
                        Some(a) => xs.push(a),
                        None => return self.fail(&["atom", "`)`"]),
                    }
                }
            }
            _ => Ok(None),
        }
    }
}

/// Parses a document. Only syntax is checked here; references are
/// resolved by [`crate::model::resolve`].
pub fn parse(text: &str) -> Result<Document, ParseError> {
    let toks = lex(text)?;
    Parser { toks, pos: 0 }.document()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_empty_document() {
        assert_eq!(parse("").unwrap(), Document::default());
        assert_eq!(parse("\n# nothing\n\n").unwrap(), Document::default());
    }

    #[test]
    fn entries_and_lists() {
        let doc = parse(
            "family F {\n  map 0<=1: a=>u, b=>v\n  witness 0 <= 1: (bic (add (const 1) (neg id))\n     (gen f0))\n}\n",
        )
        .unwrap();
        let b = &doc.blocks[0];
        assert_eq!(b.kind, BlockKind::Family);
        assert_eq!(b.entries[0].args.len(), 3);
        assert_eq!(b.entries[0].value.len(), 2);
        assert_eq!(b.entries[1].value[0].atoms.len(), 1);
        assert_eq!(b.entries[1].span.line, 3);
    }

    #[test]
    fn located_errors() {
        match parse("setoid X {\n  elements p, q\n}\n") {
            Err(ParseError::Syntax { at, expected, .. }) => {
                assert_eq!((at.line, at.col), (2, 13));
                assert!(expected.contains(&"`:`".to_string()));
            }
            other => panic!("{other:?}"),
        }
        match parse("widget W {}") {
            Err(ParseError::Syntax { at, expected, .. }) => {
                assert_eq!((at.line, at.col), (1, 1));
                assert_eq!(expected.len(), BlockKind::ALL.len());
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("setoid X { a: (b\n"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn print_then_parse_round_trips() {
        let text = "directed D {\n elements: 0,1 ,2\n order: 0<=1,1<=2\n closure: auto }\nsubbase S { carrier: X\n gen f: p=>1/2, q=>-3 }\n";
        let doc = parse(text).unwrap();
        let printed = doc.to_string();
        assert_eq!(parse(&printed).unwrap(), doc);
        assert_eq!(parse(&printed).unwrap().to_string(), printed);
    }
}
