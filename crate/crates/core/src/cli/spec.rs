//! Complex descriptions (`.complex` files) and module expressions.
//!
//! ```text
//! stalk0 P5 + P7 + P8          # modules in degree 0
//! stalk1 P1 + P2 + P4          # modules in degree -1
//! present S2                   # minimal projective presentation
//! map P6 -> P5 : a6
//! map P1 + P3 -> P2 : [c, a]   # rows: target summands, columns: source summands
//! ```
//!
//! Module expressions are sums of `P<v>`, `S<v>`, `A` and quotients
//! `P<v>/(x, y, ...)` of a projective by the submodule generated by the listed
//! elements of `e_v A`. A matrix entry in row `j`, column `i` is an element of
//! `e_{v_j} A e_{u_i}`; `0` denotes the zero entry.

use num_traits::Zero;

use crate::exactlin::Scalar;
use crate::pathalg::PathAlgebra;
use crate::quiverdsl::{lex_line, strip_comment, Cursor, ParseError, ParseErrorKind, RawTerm, Tok};
use crate::repmod::{self, Representation};
use crate::twoterm::TwoTermComplex;

/// One summand line of a complex description.
#[derive(Clone, Debug)]
pub struct SummandSpec {
    pub line: usize,
    pub text: String,
    pub complex: TwoTermComplex,
}

/// Parses a complex description into its summands.
pub fn parse_complex(text: &str, a: &PathAlgebra) -> Result<Vec<SummandSpec>, ParseError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw);
        let toks = lex_line(line, lineno)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(&toks, lineno, line.chars().count());
        let (kw, kw_col) = cur.word("`stalk0`, `stalk1`, `present` or `map`")?;
        let complex = match kw.as_str() {
            "stalk0" => TwoTermComplex::stalk0(&module_expr(&mut cur, a)?),
            "stalk1" => TwoTermComplex::stalk1(&module_expr(&mut cur, a)?),
            "present" => TwoTermComplex::projective_presentation(&module_expr(&mut cur, a)?),
            "map" => map_line(&mut cur, a)?,
            other => {
                return Err(cur.err_at(kw_col, ParseErrorKind::Syntax(format!("unknown keyword `{other}`"))));
            }
        };
        cur.finish()?;
        out.push(SummandSpec { line: lineno, text: line.trim().to_string(), complex });
    }
    if out.is_empty() {
        return Err(ParseError { line: 1, column: 1, kind: ParseErrorKind::Syntax("empty complex description".into()) });
    }
    Ok(out)
}

/// Parses a single module expression such as `P2/(a, d) + S1`.
pub fn parse_module(text: &str, a: &PathAlgebra) -> Result<Representation, ParseError> {
    let line = strip_comment(text.lines().next().unwrap_or(""));
    let toks = lex_line(line, 1)?;
    let mut cur = Cursor::new(&toks, 1, line.chars().count());
    let m = module_expr(&mut cur, a)?;
    cur.finish()?;
    Ok(m)
}

fn vertex_of(cur: &Cursor<'_>, a: &PathAlgebra, label: &str, col: usize) -> Result<usize, ParseError> {
    a.presentation
        .vertex_index(label)
        .ok_or_else(|| cur.err_at(col + 1, ParseErrorKind::UnknownVertex(label.to_string())))
}

fn module_expr(cur: &mut Cursor<'_>, a: &PathAlgebra) -> Result<Representation, ParseError> {
    let mut parts = vec![module_term(cur, a)?];
    while cur.peek() == Some(&Tok::Plus) {
        cur.next();
        parts.push(module_term(cur, a)?);
    }
    Ok(if parts.len() == 1 { parts.pop().expect("one part") } else { repmod::direct_sum(&parts).module })
}

fn module_term(cur: &mut Cursor<'_>, a: &PathAlgebra) -> Result<Representation, ParseError> {
    let alg = &a.algebra;
    let (w, col) = cur.word("module (`P<v>`, `S<v>` or `A`)")?;
    if w == "A" {
        return Ok(Representation::regular(alg));
    }
    let (kind, label) = w.split_at(1);
    let v = match kind {
        "P" | "S" if !label.is_empty() => vertex_of(cur, a, label, col)?,
        _ => {
            return Err(cur.err_at(col, ParseErrorKind::Syntax(format!("`{w}` is not a module"))));
        }
    };
    if kind == "S" {
        return Ok(Representation::simple(alg, v));
    }
    let pv = Representation::projective(alg, v);
    if cur.peek() != Some(&Tok::Slash) {
        return Ok(pv);
    }
    cur.next();
    cur.expect(Tok::LParen, "`(`")?;
    let mut gens: Vec<(usize, Vec<Scalar>)> = Vec::new();
    loop {
        let col = cur.col();
        let terms = a.presentation.parse_combination(cur)?;
        gens.push(element_from(cur, a, v, None, &terms, col)?);
        match cur.next() {
            Some(Tok::Comma) => continue,
            Some(Tok::RParen) => break,
            _ => return Err(cur.syntax("`,` or `)`")),
        }
    }
    let vertices: Vec<usize> = gens.iter().map(|g| g.0).collect();
    let images: Vec<Vec<Scalar>> = gens.into_iter().map(|g| g.1).collect();
    let src = repmod::projective_sum(alg, &vertices);
    let f = repmod::map_from_projectives(&src, &vertices, &pv, &images);
    Ok(repmod::cokernel(&f, &pv).module)
}

/// Element of `e_v A e_t` as coordinates in the vertex-`t` component of `P_v`.
fn element_from(
    cur: &Cursor<'_>,
    a: &PathAlgebra,
    v: usize,
    target: Option<usize>,
    terms: &[RawTerm],
    col: usize,
) -> Result<(usize, Vec<Scalar>), ParseError> {
    let pres = &a.presentation;
    let mut t = target;
    for term in terms {
        let (s, e) = if term.path.is_empty() {
            (v, v)
        } else {
            pres.path_endpoints(&term.path).ok_or_else(|| {
                cur.err_at(term.column, ParseErrorKind::NotComposable(pres.path_string(&term.path)))
            })?
        };
        if s != v {
            return Err(cur.err_at(
                term.column,
                ParseErrorKind::InvalidElement(format!("path does not start at vertex {}", pres.vertices[v])),
            ));
        }
        match t {
            None => t = Some(e),
            Some(t0) if t0 != e => {
                return Err(cur.err_at(
                    term.column,
                    ParseErrorKind::InvalidElement(format!("path does not end at vertex {}", pres.vertices[t0])),
                ));
            }
            _ => {}
        }
    }
    let t = t.ok_or_else(|| cur.err_at(col, ParseErrorKind::InvalidElement("empty element".into())))?;
    let raw: Vec<(Scalar, Vec<usize>)> = terms.iter().map(|r| (r.coeff.clone(), r.path.clone())).collect();
    let el = a.element(v, &raw);
    Ok((t, a.algebra.paths_between(v, t).iter().map(|&i| el[i].clone()).collect()))
}

fn projective_list(cur: &mut Cursor<'_>, a: &PathAlgebra) -> Result<Vec<usize>, ParseError> {
    let mut out = Vec::new();
    loop {
        let (w, col) = cur.word("projective `P<v>`")?;
        match w.strip_prefix('P') {
            Some(label) if !label.is_empty() => out.push(vertex_of(cur, a, label, col)?),
            _ => return Err(cur.err_at(col, ParseErrorKind::Syntax(format!("`{w}` is not a projective")))),
        }
        if cur.peek() == Some(&Tok::Plus) {
            cur.next();
        } else {
            return Ok(out);
        }
    }
}

fn map_line(cur: &mut Cursor<'_>, a: &PathAlgebra) -> Result<TwoTermComplex, ParseError> {
    let alg = &a.algebra;
    let us = projective_list(cur, a)?;
    cur.expect(Tok::Arrow, "`->`")?;
    let vs = projective_list(cur, a)?;
    cur.expect(Tok::Colon, "`:`")?;
    let bracketed = cur.peek() == Some(&Tok::LBracket);
    if bracketed {
        cur.next();
    }
    // entries[j][i]: element of e_{v_j} A e_{u_i}
    let mut entries: Vec<Vec<Vec<Scalar>>> = Vec::new();
    let mut row: Vec<Vec<Scalar>> = Vec::new();
    loop {
        let (j, i) = (entries.len(), row.len());
        let col = cur.col();
        if j >= vs.len() || i >= us.len() {
            return Err(cur.err_at(col, ParseErrorKind::Syntax("matrix has too many entries".into())));
        }
        let (vj, ui) = (vs[j], us[i]);
        let zero_entry = matches!(cur.peek(), Some(Tok::Word(w)) if w == "0")
            && !matches!(cur.peek_at(1), Some(Tok::Star | Tok::Slash));
        if zero_entry {
            cur.next();
            row.push(vec![Scalar::zero(); alg.paths_between(vj, ui).len()]);
        } else {
            let terms = a.presentation.parse_combination(cur)?;
            let (_, coords) = element_from(cur, a, vj, Some(ui), &terms, col)?;
            row.push(coords);
        }
        if !bracketed {
            break;
        }
        match cur.next() {
            Some(Tok::Comma) => {}
            Some(Tok::Semi) => entries.push(std::mem::take(&mut row)),
            Some(Tok::RBracket) => break,
            _ => return Err(cur.syntax("`,`, `;` or `]`")),
        }
    }
    entries.push(row);
    if entries.len() != vs.len() || entries.iter().any(|r| r.len() != us.len()) {
        return Err(cur.err(ParseErrorKind::Syntax(format!(
            "matrix must have {} row(s) of {} entr{}",
            vs.len(),
            us.len(),
            if us.len() == 1 { "y" } else { "ies" }
        ))));
    }
    let source = repmod::projective_sum(alg, &us);
    let target = repmod::projective_sum(alg, &vs);
    let images: Vec<Vec<Scalar>> =
        (0..us.len()).map(|i| entries.iter().flat_map(|r| r[i].iter().cloned()).collect()).collect();
    let f = repmod::map_from_projectives(&source, &us, &target, &images);
    Ok(TwoTermComplex { minus1: source, zero: target, diff: f, terms_projective: true })
}

/// Direct sum of all summands.
pub fn total_complex(summands: &[SummandSpec]) -> TwoTermComplex {
    let parts: Vec<TwoTermComplex> = summands.iter().map(|s| s.complex.clone()).collect();
    TwoTermComplex::direct_sum(&parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{EX3_COMPLEX, EX3_QUIVER};
    use crate::pathalg::{build_algebra, DEFAULT_LENGTH_CAP};
    use crate::quiverdsl::parse_algebra;
    use crate::repmod::iso_test;

    fn ex3() -> PathAlgebra {
        build_algebra(&parse_algebra(EX3_QUIVER).unwrap(), DEFAULT_LENGTH_CAP).unwrap()
    }

    #[test]
    fn ex3_complex_has_two_summand_lines() {
        let a = ex3();
        let s = parse_complex(EX3_COMPLEX, &a).unwrap();
        assert_eq!(s.len(), 2);
        let p = total_complex(&s);
        assert!(p.terms_projective);
        assert_eq!(p.minus1.total_dim(), 1 + 3 + 6 + 10);
        assert_eq!(p.zero.total_dim(), 5);
    }

    #[test]
    fn module_expressions() {
        let a = ex3();
        assert_eq!(parse_module("A", &a).unwrap().total_dim(), 15);
        assert_eq!(parse_module("P2/(a, d)", &a).unwrap().total_dim(), 2);
        assert_eq!(parse_module("P2/(a.b)", &a).unwrap().total_dim(), 4);
        assert_eq!(parse_module("S1 + S2 + P1", &a).unwrap().total_dim(), 3);
        assert_eq!(parse_module("P2/(2*a)", &a).unwrap().total_dim(), 3);
    }

    #[test]
    fn matrix_maps_and_zero_entries() {
        let a = ex3();
        let s = parse_complex("map P1 + P3 -> P2 : [c, a]", &a).unwrap();
        let p = &s[0].complex;
        assert!(p.diff.is_natural(&p.minus1, &p.zero));
        assert_eq!(p.diff.rank(), 3);
        let z = parse_complex("map P1 + P3 -> P2 + P2 : [c, 0; 0, a]", &a).unwrap();
        let q = &z[0].complex;
        assert!(iso_test(&q.homology(0), &parse_module("P2/(c) + P2/(a)", &a).unwrap()));
    }

    #[test]
    fn errors_carry_positions() {
        let a = ex3();
        let e = parse_complex("stalk0 P9", &a).map(|_| ()).unwrap_err();
        assert_eq!((e.line, e.column), (1, 9));
        assert!(matches!(e.kind, ParseErrorKind::UnknownVertex(_)));
        let e = parse_complex("stalk0 P1\nmap P2 -> P1 : c", &a).map(|_| ()).unwrap_err();
        assert_eq!(e.line, 2);
        assert!(matches!(e.kind, ParseErrorKind::InvalidElement(_)));
        let e = parse_complex("map P1 + P3 -> P2 : [c]", &a).map(|_| ()).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        assert!(parse_complex("frobnicate P1", &a).is_err());
        assert!(parse_complex("", &a).is_err());
        assert!(parse_module("P2/(c)", &a).is_ok());
        assert!(parse_module("P2/(b)", &a).is_err());
        assert!(parse_module("P2/(a - c)", &a).is_err());
    }
}
