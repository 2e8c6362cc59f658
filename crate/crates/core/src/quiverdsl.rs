//! Textual description of a quiver with relations (`.quiver` files).
//!
//! ```text
//! # comments run to end of line
//! vertices: 1 2 3 4
//! arrow a: 2 -> 3
//! arrow b: 3 -> 2
//! relation b.a
//! relation c1.d1 - c2.d2
//! relation 2*a.b + -1/2*c.d
//! ```
//!
//! A path `a.b` traverses `a` and then `b`. Coefficients default to 1.

use std::collections::{HashMap, HashSet};
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactlin::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecl {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// Linear combination of paths; each path is a sequence of arrow indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationExpr {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    pub relations: Vec<RelationExpr>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow label `{0}`")]
    DuplicateArrow(String),
    #[error("path `{0}` is not composable")]
    NotComposable(String),
    #[error("relation path `{0}` has length < 2")]
    RelationTooShort(String),
    #[error("relation paths do not share a common source and target")]
    MixedEndpoints,
    #[error("path `{0}` appears twice in one relation")]
    DuplicatePath(String),
    #[error("zero coefficient")]
    ZeroCoefficient,
    #[error("`vertices:` must be declared exactly once, before arrows and relations")]
    MissingVertices,
    #[error("invalid algebra element: {0}")]
    InvalidElement(String),
}

/// Parse failure with a 1-based source position.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Word(String),
    Colon,
    Arrow,
    Dot,
    Star,
    Plus,
    Minus,
    Slash,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Semi,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Semi => f.write_str("`;`"),
        }
    }
}

/// Token with its 1-based column.
pub(crate) type Spanned = (Tok, usize);

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits one line (comment already removed) into tokens.
pub(crate) fn lex_line(line: &str, lineno: usize) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if is_word_char(c) {
            let start = i;
            while i < chars.len() && is_word_char(chars[i]) {
                i += 1;
            }
            out.push((Tok::Word(chars[start..i].iter().collect()), col));
            continue;
        }
        let tok = match c {
            ':' => Tok::Colon,
            '.' => Tok::Dot,
            '*' => Tok::Star,
            '+' => Tok::Plus,
            '/' => Tok::Slash,
            ',' => Tok::Comma,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ';' => Tok::Semi,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Arrow
            }
            '-' => Tok::Minus,
            other => {
                return Err(ParseError {
                    line: lineno,
                    column: col,
                    kind: ParseErrorKind::Syntax(format!("unexpected character `{other}`")),
                })
            }
        };
        out.push((tok, col));
        i += 1;
    }
    Ok(out)
}

pub(crate) fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// Cursor over the tokens of one line.
pub(crate) struct Cursor<'a> {
    toks: &'a [Spanned],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(toks: &'a [Spanned], line: usize, line_len: usize) -> Self {
        Cursor { toks, pos: 0, line, end_col: line_len + 1 }
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    pub(crate) fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(t, _)| t)
    }

    pub(crate) fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, column: self.col(), kind }
    }

    pub(crate) fn err_at(&self, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, column, kind }
    }

    pub(crate) fn syntax(&self, what: &str) -> ParseError {
        let found = match self.peek() {
            Some(t) => format!("expected {what}, found {t}"),
            None => format!("expected {what}, found end of line"),
        };
        self.err(ParseErrorKind::Syntax(found))
    }

    pub(crate) fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(what))
        }
    }

    pub(crate) fn word(&mut self, what: &str) -> Result<(String, usize), ParseError> {
        let col = self.col();
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok((w, col))
            }
            _ => Err(self.syntax(what)),
        }
    }

    pub(crate) fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.syntax("end of line"))
        }
    }
}

fn is_integer_word(w: &str) -> bool {
    !w.is_empty() && w.chars().all(|c| c.is_ascii_digit())
}

fn is_arrow_label(w: &str) -> bool {
    w.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
}

/// One parsed term of a linear combination, before validation against a context.
#[derive(Clone, Debug)]
pub(crate) struct RawTerm {
    pub coeff: Scalar,
    pub path: Vec<usize>,
    pub column: usize,
}

impl AlgebraPresentation {
    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// `a.b.c` spelled with labels.
    pub fn path_string(&self, path: &[usize]) -> String {
        path.iter().map(|&a| self.arrows[a].label.as_str()).collect::<Vec<_>>().join(".")
    }

    /// Source and target of a nonempty composable path.
    pub fn path_endpoints(&self, path: &[usize]) -> Option<(usize, usize)> {
        let first = self.arrows[*path.first()?].source;
        let mut cur = first;
        for &a in path {
            if self.arrows[a].source != cur {
                return None;
            }
            cur = self.arrows[a].target;
        }
        Some((first, cur))
    }

    /// Parses a signed linear combination of paths (`2*a.b - c.d`, `1`, `-1/3*a`).
    /// A bare coefficient denotes the trivial path, returned as an empty arrow list.
    pub(crate) fn parse_combination(&self, cur: &mut Cursor<'_>) -> Result<Vec<RawTerm>, ParseError> {
        let mut terms = Vec::new();
        let mut sign = Scalar::one();
        match cur.peek() {
            Some(Tok::Minus) => {
                cur.next();
                sign = -sign;
            }
            Some(Tok::Plus) => {
                cur.next();
            }
            _ => {}
        }
        loop {
            let column = cur.col();
            let (coeff, path) = self.parse_term(cur)?;
            let coeff = coeff * &sign;
            if coeff.is_zero() {
                return Err(cur.err_at(column, ParseErrorKind::ZeroCoefficient));
            }
            terms.push(RawTerm { coeff, path, column });
            match cur.peek() {
                Some(Tok::Plus) => {
                    cur.next();
                    sign = Scalar::one();
                }
                Some(Tok::Minus) => {
                    cur.next();
                    sign = -Scalar::one();
                }
                _ => break,
            }
            // `+ -2*p` is accepted as well as `- 2*p`
            if cur.peek() == Some(&Tok::Minus) {
                cur.next();
                sign = -sign;
            }
        }
        Ok(terms)
    }

    fn parse_term(&self, cur: &mut Cursor<'_>) -> Result<(Scalar, Vec<usize>), ParseError> {
        let mut coeff = Scalar::one();
        if let Some(Tok::Word(w)) = cur.peek() {
            if is_integer_word(w) {
                let num: BigInt = w.parse().expect("digits");
                cur.next();
                coeff = Scalar::from_integer(num);
                if cur.peek() == Some(&Tok::Slash) {
                    cur.next();
                    let col = cur.col();
                    let (d, _) = cur.word("denominator")?;
                    if !is_integer_word(&d) {
                        return Err(cur.err_at(col, ParseErrorKind::Syntax("denominator must be an integer".into())));
                    }
                    let den: BigInt = d.parse().expect("digits");
                    if den.is_zero() {
                        return Err(cur.err_at(col, ParseErrorKind::Syntax("zero denominator".into())));
                    }
                    coeff = Scalar::new(coeff.to_integer(), den);
                }
                if cur.peek() != Some(&Tok::Star) {
                    return Ok((coeff, Vec::new()));
                }
                cur.next();
            }
        }
        let mut path = Vec::new();
        loop {
            let (label, col) = cur.word("arrow label")?;
            if !is_arrow_label(&label) {
                return Err(cur.err_at(col, ParseErrorKind::Syntax(format!("`{label}` is not an arrow label"))));
            }
            let a = self
                .arrow_index(&label)
                .ok_or_else(|| cur.err_at(col, ParseErrorKind::UnknownArrow(label.clone())))?;
            path.push(a);
            if cur.peek() == Some(&Tok::Dot) {
                cur.next();
            } else {
                break;
            }
        }
        Ok((coeff, path))
    }
}

/// Parses a `.quiver` document.
pub fn parse_algebra(text: &str) -> Result<AlgebraPresentation, ParseError> {
    let mut pres = AlgebraPresentation { vertices: Vec::new(), arrows: Vec::new(), relations: Vec::new() };
    let mut have_vertices = false;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw);
        let toks = lex_line(line, lineno)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(&toks, lineno, line.chars().count());
        let (kw, kw_col) = cur.word("`vertices:`, `arrow` or `relation`")?;
        match kw.as_str() {
            "vertices" => {
                if have_vertices {
                    return Err(cur.err_at(kw_col, ParseErrorKind::MissingVertices));
                }
                cur.expect(Tok::Colon, "`:`")?;
                let mut seen = HashSet::new();
                while !cur.at_end() {
                    let (v, col) = cur.word("vertex label")?;
                    if !seen.insert(v.clone()) {
                        return Err(cur.err_at(col, ParseErrorKind::DuplicateVertex(v)));
                    }
                    pres.vertices.push(v);
                }
                have_vertices = true;
            }
            "arrow" => {
                if !have_vertices {
                    return Err(cur.err_at(kw_col, ParseErrorKind::MissingVertices));
                }
                let (label, lcol) = cur.word("arrow label")?;
                if !is_arrow_label(&label) {
                    return Err(cur.err_at(
                        lcol,
                        ParseErrorKind::Syntax("arrow labels must start with a letter or `_`".into()),
                    ));
                }
                if pres.arrow_index(&label).is_some() {
                    return Err(cur.err_at(lcol, ParseErrorKind::DuplicateArrow(label)));
                }
                cur.expect(Tok::Colon, "`:`")?;
                let (s, scol) = cur.word("source vertex")?;
                cur.expect(Tok::Arrow, "`->`")?;
                let (t, tcol) = cur.word("target vertex")?;
                cur.finish()?;
                let source =
                    pres.vertex_index(&s).ok_or_else(|| cur.err_at(scol, ParseErrorKind::UnknownVertex(s)))?;
                let target =
                    pres.vertex_index(&t).ok_or_else(|| cur.err_at(tcol, ParseErrorKind::UnknownVertex(t)))?;
                pres.arrows.push(ArrowDecl { label, source, target });
            }
            "relation" => {
                if !have_vertices {
                    return Err(cur.err_at(kw_col, ParseErrorKind::MissingVertices));
                }
                let terms = pres.parse_combination(&mut cur)?;
                cur.finish()?;
                let rel = validate_relation(&pres, terms, &cur)?;
                pres.relations.push(rel);
            }
            other => {
                return Err(cur.err_at(
                    kw_col,
                    ParseErrorKind::Syntax(format!("unknown keyword `{other}`")),
                ))
            }
        }
    }
    if !have_vertices {
        return Err(ParseError { line: 1, column: 1, kind: ParseErrorKind::MissingVertices });
    }
    Ok(pres)
}

fn validate_relation(
    pres: &AlgebraPresentation,
    terms: Vec<RawTerm>,
    cur: &Cursor<'_>,
) -> Result<RelationExpr, ParseError> {
    let mut endpoints = None;
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let name = pres.path_string(&t.path);
        if t.path.len() < 2 {
            return Err(cur.err_at(t.column, ParseErrorKind::RelationTooShort(name)));
        }
        let ends = pres
            .path_endpoints(&t.path)
            .ok_or_else(|| cur.err_at(t.column, ParseErrorKind::NotComposable(name.clone())))?;
        match endpoints {
            None => endpoints = Some(ends),
            Some(e) if e != ends => return Err(cur.err_at(t.column, ParseErrorKind::MixedEndpoints)),
            _ => {}
        }
        if seen.insert(t.path.clone(), ()).is_some() {
            return Err(cur.err_at(t.column, ParseErrorKind::DuplicatePath(name)));
        }
        out.push((t.coeff, t.path));
    }
    Ok(RelationExpr { terms: out })
}

fn render_coeff(c: &Scalar) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical text form; `parse_algebra(render_presentation(p)) == p`.
pub fn render_presentation(p: &AlgebraPresentation) -> String {
    let mut out = String::new();
    out.push_str("vertices:");
    for v in &p.vertices {
        out.push(' ');
        out.push_str(v);
    }
    out.push('\n');
    for a in &p.arrows {
        let _ = writeln!(out, "arrow {}: {} -> {}", a.label, p.vertices[a.source], p.vertices[a.target]);
    }
    for r in &p.relations {
        out.push_str("relation ");
        for (i, (c, path)) in r.terms.iter().enumerate() {
            let name = p.path_string(path);
            let mag = c.abs();
            let body = if mag.is_one() { name } else { format!("{}*{}", render_coeff(&mag), name) };
            match (i, c.is_negative()) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{frac, int};
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn parses_ex3() {
        let p = parse_algebra(fixtures::EX3_QUIVER).unwrap();
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(p.arrows.len(), 5);
        assert_eq!(p.relations.len(), 4);
        let a = p.arrow_index("a").unwrap();
        assert_eq!(p.vertices[p.arrows[a].source], "2");
        assert_eq!(p.vertices[p.arrows[a].target], "3");
    }

    #[test]
    fn rejects_undeclared_vertex() {
        let err = parse_algebra("vertices: 1 2\narrow a: 1 -> 9\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownVertex("9".into()));
        assert_eq!((err.line, err.column), (2, 15));
    }

    #[test]
    fn rejects_non_composable() {
        let text = "vertices: 1 2 3 4\narrow a: 2 -> 3\narrow e: 4 -> 2\nrelation a.e\n";
        let err = parse_algebra(text).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::NotComposable(_)));
        assert_eq!(err.line, 4);
    }

    #[test]
    fn rejects_bad_inputs() {
        let cases = [
            ("vertices: 1 1\n", "duplicate vertex"),
            ("vertices: 1\narrow a: 1 -> 1\narrow a: 1 -> 1\n", "duplicate arrow"),
            ("vertices: 1\narrow a: 1 -> 1\nrelation a\n", "length < 2"),
            ("vertices: 1 2\narrow a: 1 -> 2\nrelation a.b\n", "unknown arrow"),
            ("arrow a: 1 -> 2\n", "vertices"),
            ("vertices: 1 2\narrow a 1 -> 2\n", "expected `:`"),
            ("vertices: 1\narrow a: 1 -> 1\nrelation a.a - a.a\n", "twice"),
            ("vertices: 1\narrow a: 1 -> 1\nrelation 0*a.a\n", "zero"),
            ("vertices: 1 2\narrow a: 1 -> 1\narrow b: 1 -> 2\nrelation a.a + a.b\n", "common source"),
            ("vertices: 1\nquiver\n", "unknown keyword"),
            ("vertices: 1 $\n", "unexpected character"),
            ("", "vertices"),
        ];
        for (text, needle) in cases {
            let err = parse_algebra(text).expect_err(text);
            assert!(err.to_string().contains(needle), "{text:?}: {err}");
        }
    }

    #[test]
    fn coefficients() {
        let text = "vertices: 1 2\narrow a: 1 -> 1\narrow b: 1 -> 2\nrelation -a.b + 3/2*a.a.b - 2*a.a.a.b\n";
        let p = parse_algebra(text).unwrap();
        let coeffs: Vec<Scalar> = p.relations[0].terms.iter().map(|t| t.0.clone()).collect();
        assert_eq!(coeffs, vec![int(-1), frac(3, 2), int(-2)]);
        assert_eq!(
            render_presentation(&p).lines().last().unwrap(),
            "relation -a.b + 3/2*a.a.b - 2*a.a.a.b"
        );
    }

    #[test]
    fn roundtrip_fixtures() {
        for text in [fixtures::K_QUIVER, fixtures::A2_QUIVER, &fixtures::ex1_quiver(2), fixtures::EX2_QUIVER, fixtures::EX3_QUIVER] {
            let p = parse_algebra(text).unwrap();
            assert_eq!(parse_algebra(&render_presentation(&p)).unwrap(), p);
        }
    }

    #[test]
    fn render_is_exact() {
        let p = parse_algebra(fixtures::EX3_QUIVER).unwrap();
        assert_eq!(
            render_presentation(&p),
            "vertices: 1 2 3 4\narrow a: 2 -> 3\narrow b: 3 -> 2\narrow c: 2 -> 1\narrow d: 2 -> 4\narrow e: 4 -> 2\nrelation b.a\nrelation b.d\nrelation a.b.c\nrelation d.e\n"
        );
    }

    fn presentation_strategy() -> impl Strategy<Value = AlgebraPresentation> {
        (1usize..4, proptest::collection::vec((0usize..4, 0usize..4), 0..5)).prop_flat_map(|(nv, raw_arrows)| {
            let arrows: Vec<ArrowDecl> = raw_arrows
                .iter()
                .enumerate()
                .map(|(i, &(s, t))| ArrowDecl { label: format!("x{i}"), source: s % nv, target: t % nv })
                .collect();
            let vertices: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
            // all composable length-2 paths
            let mut pairs = Vec::new();
            for (i, a) in arrows.iter().enumerate() {
                for (j, b) in arrows.iter().enumerate() {
                    if a.target == b.source {
                        pairs.push(vec![i, j]);
                    }
                }
            }
            let n = pairs.len();
            (Just(vertices), Just(arrows), Just(pairs), proptest::collection::vec((0..n.max(1), -3i64..=3), 0..3))
                .prop_map(|(vertices, arrows, pairs, picks)| {
                    let relations = if pairs.is_empty() {
                        Vec::new()
                    } else {
                        picks
                            .into_iter()
                            .filter(|(_, c)| *c != 0)
                            .map(|(k, c)| RelationExpr { terms: vec![(int(c), pairs[k].clone())] })
                            .collect()
                    };
                    AlgebraPresentation { vertices, arrows, relations }
                })
        })
    }

    proptest! {
        #[test]
        fn parse_render_roundtrip(p in presentation_strategy()) {
            prop_assert_eq!(parse_algebra(&render_presentation(&p)).unwrap(), p);
        }
    }
}
