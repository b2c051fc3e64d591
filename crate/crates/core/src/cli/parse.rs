//! Line-oriented problem files.
//!
//! ```text
//! field rational | prime <p>
//! window 0 <hi>
//! cdga <Name> { generator <g> deg <d>; d <g> = <poly>; relation <poly> }
//! cdga <Name> explicit { basis <b> deg <d>; product <b> <b> = <lin>; d <b> = <lin>; unit <b> }
//! morphism <f> : <A> -> <B> { <gen> -> <poly> }
//! problem { ambient <Name> dim <n>; embedded <Name> via <f> }
//! ```
//!
//! Statements end at `;`, a newline or a closing brace; `#` starts a comment.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{explicit_cdga, materialize_free_cdga, Cdga, CdgaMorphism, ExplicitPresentation, FreePresentation, Poly, Term};
use crate::error::{Error, Result};
use crate::graded::DegreeWindow;
use crate::linalg::{Field, Scalar};
use crate::pipeline::{Branch, EmbeddingProblem};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Sym(&'static str),
    Newline,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = body.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token { tok: Tok::Num(chars[start..i].iter().collect()), line });
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || "_'.".contains(chars[i])) {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line });
            } else if c == '-' && chars.get(i + 1) == Some(&'>') {
                out.push(Token { tok: Tok::Sym("->"), line });
                i += 2;
            } else {
                let sym = match c {
                    '{' => "{",
                    '}' => "}",
                    ';' => ";",
                    ':' => ":",
                    '=' => "=",
                    '+' => "+",
                    '-' => "-",
                    '*' => "*",
                    '^' => "^",
                    '/' => "/",
                    _ => return Err(err(line, format!("unexpected character `{c}`"))),
                };
                out.push(Token { tok: Tok::Sym(sym), line });
                i += 1;
            }
        }
        out.push(Token { tok: Tok::Newline, line });
    }
    Ok(out)
}

/// Tokens of one statement.
#[derive(Clone, Debug)]
struct Stmt {
    line: usize,
    toks: Vec<Tok>,
    /// Statements inside a trailing `{ ... }` block.
    block: Option<Vec<Stmt>>,
}

struct Splitter {
    toks: Vec<Token>,
    pos: usize,
}

impl Splitter {
    fn statements(&mut self, nested: bool) -> Result<Vec<Stmt>> {
        let mut out = Vec::new();
        let mut cur: Vec<Tok> = Vec::new();
        let mut line = 0;
        loop {
            let Some(t) = self.toks.get(self.pos).cloned() else {
                if nested {
                    let last = self.toks.last().map_or(1, |t| t.line);
                    return Err(err(last, "unclosed `{`"));
                }
                if !cur.is_empty() {
                    out.push(Stmt { line, toks: cur, block: None });
                }
                return Ok(out);
            };
            self.pos += 1;
            match t.tok {
                Tok::Newline | Tok::Sym(";") => {
                    if !cur.is_empty() {
                        out.push(Stmt { line, toks: std::mem::take(&mut cur), block: None });
                    }
                }
                Tok::Sym("{") => {
                    if cur.is_empty() {
                        return Err(err(t.line, "block without a header"));
                    }
                    let block = self.statements(true)?;
                    out.push(Stmt { line, toks: std::mem::take(&mut cur), block: Some(block) });
                }
                Tok::Sym("}") => {
                    if !nested {
                        return Err(err(t.line, "unmatched `}`"));
                    }
                    if !cur.is_empty() {
                        out.push(Stmt { line, toks: cur, block: None });
                    }
                    return Ok(out);
                }
                tok => {
                    if cur.is_empty() {
                        line = t.line;
                    }
                    cur.push(tok);
                }
            }
        }
    }
}

/// Polynomial over integer-or-fraction literals, kept symbolic until the
/// field is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawPoly(pub Vec<(String, Vec<(String, u32)>)>);

impl RawPoly {
    fn to_poly(&self, field: Field, line: usize) -> Result<Poly> {
        self.0
            .iter()
            .map(|(c, f)| {
                Ok(Term {
                    coeff: field.parse(c).map_err(|e| err(line, e.to_string()))?,
                    factors: f.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Poly)
    }

    fn to_lincomb(&self, field: Field, line: usize) -> Result<Vec<(Scalar, String)>> {
        let mut out = Vec::new();
        for (c, f) in &self.0 {
            let c = field.parse(c).map_err(|e| err(line, e.to_string()))?;
            match f.as_slice() {
                [] if c.is_zero() => {}
                [(b, 1)] => out.push((c, b.clone())),
                _ => return Err(err(line, "expected a linear combination of basis elements")),
            }
        }
        Ok(out)
    }
}

fn parse_poly(toks: &[Tok], line: usize) -> Result<RawPoly> {
    if toks.is_empty() {
        return Err(err(line, "missing expression"));
    }
    let mut terms = Vec::new();
    let mut i = 0;
    let mut negative = false;
    if let Some(Tok::Sym(s @ ("+" | "-"))) = toks.first() {
        negative = *s == "-";
        i = 1;
    }
    loop {
        // one term: factor (* factor)*
        let mut num = num_rational::BigRational::from_integer(1.into());
        let mut factors: Vec<(String, u32)> = Vec::new();
        loop {
            match toks.get(i) {
                Some(Tok::Num(a)) => {
                    i += 1;
                    let mut val: num_rational::BigRational =
                        num_rational::BigRational::from_integer(a.parse().map_err(|_| err(line, "bad number"))?);
                    if toks.get(i) == Some(&Tok::Sym("/")) {
                        let Some(Tok::Num(b)) = toks.get(i + 1) else {
                            return Err(err(line, "expected a denominator after `/`"));
                        };
                        let b: num_bigint::BigInt = b.parse().map_err(|_| err(line, "bad number"))?;
                        if b == 0.into() {
                            return Err(err(line, "zero denominator"));
                        }
                        val /= num_rational::BigRational::from_integer(b);
                        i += 2;
                    }
                    num *= val;
                }
                Some(Tok::Ident(name)) => {
                    i += 1;
                    let mut e = 1;
                    if toks.get(i) == Some(&Tok::Sym("^")) {
                        let Some(Tok::Num(k)) = toks.get(i + 1) else {
                            return Err(err(line, "expected an exponent after `^`"));
                        };
                        e = k.parse().map_err(|_| err(line, "bad exponent"))?;
                        i += 2;
                    }
                    factors.push((name.clone(), e));
                }
                other => return Err(err(line, format!("expected a number or a name, found {}", describe(other)))),
            }
            if toks.get(i) == Some(&Tok::Sym("*")) {
                i += 1;
            } else {
                break;
            }
        }
        if negative {
            num = -num;
        }
        let coeff = if num.is_integer() {
            num.to_integer().to_string()
        } else {
            format!("{}/{}", num.numer(), num.denom())
        };
        terms.push((coeff, factors));
        match toks.get(i) {
            None => break,
            Some(Tok::Sym(s @ ("+" | "-"))) => {
                negative = *s == "-";
                i += 1;
            }
            other => return Err(err(line, format!("expected `+` or `-`, found {}", describe(other)))),
        }
    }
    Ok(RawPoly(terms))
}

fn describe(t: Option<&Tok>) -> String {
    match t {
        None => "end of statement".into(),
        Some(Tok::Ident(s)) => format!("`{s}`"),
        Some(Tok::Num(s)) => format!("`{s}`"),
        Some(Tok::Sym(s)) => format!("`{s}`"),
        Some(Tok::Newline) => "end of line".into(),
    }
}

fn ident(toks: &[Tok], i: usize, line: usize, what: &str) -> Result<String> {
    match toks.get(i) {
        Some(Tok::Ident(s)) => Ok(s.clone()),
        other => Err(err(line, format!("expected {what}, found {}", describe(other)))),
    }
}

fn keyword(toks: &[Tok], i: usize, line: usize, kw: &str) -> Result<()> {
    match toks.get(i) {
        Some(Tok::Ident(s)) if s == kw => Ok(()),
        other => Err(err(line, format!("expected `{kw}`, found {}", describe(other)))),
    }
}

fn sym(toks: &[Tok], i: usize, line: usize, s: &str) -> Result<()> {
    match toks.get(i) {
        Some(Tok::Sym(x)) if *x == s => Ok(()),
        other => Err(err(line, format!("expected `{s}`, found {}", describe(other)))),
    }
}

fn integer(toks: &[Tok], i: usize, line: usize, what: &str) -> Result<i64> {
    let neg = toks.get(i) == Some(&Tok::Sym("-"));
    let j = if neg { i + 1 } else { i };
    match toks.get(j) {
        Some(Tok::Num(s)) => {
            let v: i64 = s.parse().map_err(|_| err(line, format!("{what} out of range")))?;
            Ok(if neg { -v } else { v })
        }
        other => Err(err(line, format!("expected {what}, found {}", describe(other)))),
    }
}

fn end(toks: &[Tok], i: usize, line: usize) -> Result<()> {
    if i < toks.len() {
        Err(err(line, format!("unexpected {}", describe(toks.get(i)))))
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug)]
enum RawCdga {
    Free {
        generators: Vec<(String, i64)>,
        differentials: Vec<(String, RawPoly, usize)>,
        relations: Vec<(RawPoly, usize)>,
    },
    Explicit {
        basis: Vec<(String, i64)>,
        products: Vec<(String, String, RawPoly, usize)>,
        differentials: Vec<(String, RawPoly, usize)>,
        unit: Option<String>,
    },
}

#[derive(Clone, Debug)]
struct RawMorphism {
    name: String,
    source: String,
    target: String,
    images: Vec<(String, RawPoly, usize)>,
    line: usize,
}

#[derive(Clone, Debug)]
struct RawProblem {
    ambient: String,
    n: i64,
    embedded: Vec<(String, String)>,
    line: usize,
}

/// Declarations of a problem file before any algebra is materialized.
#[derive(Clone, Debug, Default)]
pub struct Declarations {
    field: Option<(Field, usize)>,
    window: Option<(i64, usize)>,
    cdgas: Vec<(String, RawCdga, usize)>,
    morphisms: Vec<RawMorphism>,
    problem: Option<RawProblem>,
}

fn parse_declarations(text: &str) -> Result<Declarations> {
    let toks = tokenize(text)?;
    let stmts = Splitter { toks, pos: 0 }.statements(false)?;
    let mut decl = Declarations::default();
    for st in stmts {
        let (t, line) = (&st.toks, st.line);
        let head = ident(t, 0, line, "a declaration")?;
        let no_block = |st: &Stmt| -> Result<()> {
            if st.block.is_some() {
                Err(err(st.line, format!("`{head}` takes no block")))
            } else {
                Ok(())
            }
        };
        match head.as_str() {
            "field" => {
                no_block(&st)?;
                if decl.field.is_some() {
                    return Err(err(line, "field declared twice"));
                }
                let kind = ident(t, 1, line, "`rational` or `prime`")?;
                let f = match kind.as_str() {
                    "rational" => {
                        end(t, 2, line)?;
                        Field::Rational
                    }
                    "prime" => {
                        let p = integer(t, 2, line, "a prime")?;
                        end(t, 3, line)?;
                        if p < 2 {
                            return Err(err(line, format!("{p} is not a prime")));
                        }
                        Field::prime(p as u64).map_err(|e| err(line, e.to_string()))?
                    }
                    _ => return Err(err(line, "expected `rational` or `prime`")),
                };
                decl.field = Some((f, line));
            }
            "window" => {
                no_block(&st)?;
                let lo = integer(t, 1, line, "window start")?;
                let hi = integer(t, 2, line, "window end")?;
                end(t, 3, line)?;
                if lo != 0 {
                    return Err(err(line, "window must start at degree 0"));
                }
                if hi < 0 {
                    return Err(err(line, "window end must be nonnegative"));
                }
                decl.window = Some((hi, line));
            }
            "cdga" => {
                let name = ident(t, 1, line, "an algebra name")?;
                let explicit = match t.get(2) {
                    None => false,
                    Some(Tok::Ident(s)) if s == "explicit" => {
                        end(t, 3, line)?;
                        true
                    }
                    other => return Err(err(line, format!("unexpected {}", describe(other)))),
                };
                if decl.cdgas.iter().any(|(n, _, _)| *n == name) {
                    return Err(err(line, format!("algebra `{name}` declared twice")));
                }
                let body = st.block.clone().ok_or_else(|| err(line, "expected `{` after the algebra name"))?;
                let raw = if explicit { parse_explicit(&body)? } else { parse_free(&body)? };
                decl.cdgas.push((name, raw, line));
            }
            "morphism" => {
                let name = ident(t, 1, line, "a morphism name")?;
                sym(t, 2, line, ":")?;
                let source = ident(t, 3, line, "a source algebra")?;
                sym(t, 4, line, "->")?;
                let target = ident(t, 5, line, "a target algebra")?;
                end(t, 6, line)?;
                let body = st.block.clone().ok_or_else(|| err(line, "expected `{` after the morphism header"))?;
                let mut images = Vec::new();
                for s in &body {
                    if s.block.is_some() {
                        return Err(err(s.line, "nested block"));
                    }
                    let g = ident(&s.toks, 0, s.line, "a generator")?;
                    sym(&s.toks, 1, s.line, "->")?;
                    images.push((g, parse_poly(&s.toks[2..], s.line)?, s.line));
                }
                if decl.morphisms.iter().any(|m| m.name == name) {
                    return Err(err(line, format!("morphism `{name}` declared twice")));
                }
                decl.morphisms.push(RawMorphism { name, source, target, images, line });
            }
            "problem" => {
                if decl.problem.is_some() {
                    return Err(err(line, "only one problem block is allowed"));
                }
                end(t, 1, line)?;
                let body = st.block.clone().ok_or_else(|| err(line, "expected `{` after `problem`"))?;
                let mut ambient = None;
                let mut embedded = Vec::new();
                for s in &body {
                    let kw = ident(&s.toks, 0, s.line, "`ambient` or `embedded`")?;
                    match kw.as_str() {
                        "ambient" => {
                            let a = ident(&s.toks, 1, s.line, "an algebra")?;
                            keyword(&s.toks, 2, s.line, "dim")?;
                            let n = integer(&s.toks, 3, s.line, "a dimension")?;
                            end(&s.toks, 4, s.line)?;
                            if ambient.is_some() {
                                return Err(err(s.line, "ambient declared twice"));
                            }
                            ambient = Some((a, n));
                        }
                        "embedded" => {
                            let a = ident(&s.toks, 1, s.line, "an algebra")?;
                            keyword(&s.toks, 2, s.line, "via")?;
                            let f = ident(&s.toks, 3, s.line, "a morphism")?;
                            end(&s.toks, 4, s.line)?;
                            embedded.push((a, f));
                        }
                        _ => return Err(err(s.line, format!("unknown problem entry `{kw}`"))),
                    }
                }
                let (ambient, n) = ambient.ok_or_else(|| err(line, "problem has no `ambient` line"))?;
                if embedded.is_empty() {
                    return Err(err(line, "problem has no `embedded` line"));
                }
                decl.problem = Some(RawProblem { ambient, n, embedded, line });
            }
            _ => return Err(err(line, format!("unknown declaration `{head}`"))),
        }
    }
    Ok(decl)
}

fn parse_free(body: &[Stmt]) -> Result<RawCdga> {
    let mut generators = Vec::new();
    let mut differentials = Vec::new();
    let mut relations = Vec::new();
    for s in body {
        let (t, line) = (&s.toks, s.line);
        match ident(t, 0, line, "`generator`, `d` or `relation`")?.as_str() {
            "generator" => {
                let g = ident(t, 1, line, "a generator name")?;
                keyword(t, 2, line, "deg")?;
                let d = integer(t, 3, line, "a degree")?;
                end(t, 4, line)?;
                generators.push((g, d));
            }
            "d" => {
                let g = ident(t, 1, line, "a generator name")?;
                sym(t, 2, line, "=")?;
                differentials.push((g, parse_poly(&t[3..], line)?, line));
            }
            "relation" => relations.push((parse_poly(&t[1..], line)?, line)),
            other => return Err(err(line, format!("unknown entry `{other}` in a free presentation"))),
        }
    }
    Ok(RawCdga::Free { generators, differentials, relations })
}

fn parse_explicit(body: &[Stmt]) -> Result<RawCdga> {
    let mut basis = Vec::new();
    let mut products = Vec::new();
    let mut differentials = Vec::new();
    let mut unit = None;
    for s in body {
        let (t, line) = (&s.toks, s.line);
        match ident(t, 0, line, "`basis`, `product`, `d` or `unit`")?.as_str() {
            "basis" => {
                let b = ident(t, 1, line, "a basis name")?;
                keyword(t, 2, line, "deg")?;
                let d = integer(t, 3, line, "a degree")?;
                end(t, 4, line)?;
                basis.push((b, d));
            }
            "product" => {
                let a = ident(t, 1, line, "a basis name")?;
                let b = ident(t, 2, line, "a basis name")?;
                sym(t, 3, line, "=")?;
                products.push((a, b, parse_poly(&t[4..], line)?, line));
            }
            "d" => {
                let b = ident(t, 1, line, "a basis name")?;
                sym(t, 2, line, "=")?;
                differentials.push((b, parse_poly(&t[3..], line)?, line));
            }
            "unit" => {
                let b = ident(t, 1, line, "a basis name")?;
                end(t, 2, line)?;
                unit = Some(b);
            }
            other => return Err(err(line, format!("unknown entry `{other}` in an explicit presentation"))),
        }
    }
    Ok(RawCdga::Explicit { basis, products, differentials, unit })
}

/// A parsed and validated problem file.
#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub field: Field,
    pub window: DegreeWindow,
    pub algebras: Vec<Arc<Cdga>>,
    pub morphisms: Vec<(String, CdgaMorphism)>,
    pub problem: Option<EmbeddingProblem>,
}

impl ProblemFile {
    pub fn algebra(&self, name: &str) -> Option<&Arc<Cdga>> {
        self.algebras.iter().find(|a| a.name == name)
    }

    pub fn problem(&self) -> Result<&EmbeddingProblem> {
        self.problem
            .as_ref()
            .ok_or_else(|| Error::invalid("the file has no problem block"))
    }
}

fn at(line: usize, e: Error) -> Error {
    match e {
        Error::Invalid(m) => Error::Parse { line, message: m },
        other => other,
    }
}

/// Parses and validates; `field` overrides the file's field declaration.
pub fn parse_problem(text: &str, field: Option<Field>) -> Result<ProblemFile> {
    let decl = parse_declarations(text)?;
    let field = field.or(decl.field.map(|f| f.0)).unwrap_or(Field::Rational);
    let hi = match (decl.window, &decl.problem) {
        (Some((hi, line)), Some(p)) => {
            if hi < p.n + 1 {
                return Err(err(line, format!("window 0 {hi} stops below n+1 = {}", p.n + 1)));
            }
            hi
        }
        (Some((hi, _)), None) => hi,
        (None, Some(p)) => p.n + 2,
        (None, None) => {
            return Err(err(1, "no window: add `window 0 <hi>` or a problem block"));
        }
    };
    let window = DegreeWindow::new(0, hi)?;
    let mut algebras: Vec<Arc<Cdga>> = Vec::new();
    for (name, raw, line) in &decl.cdgas {
        let a = match raw {
            RawCdga::Free { generators, differentials, relations } => {
                let pres = FreePresentation {
                    generators: generators.clone(),
                    differentials: differentials
                        .iter()
                        .map(|(g, p, l)| Ok((g.clone(), p.to_poly(field, *l)?)))
                        .collect::<Result<_>>()?,
                    relations: relations.iter().map(|(p, l)| p.to_poly(field, *l)).collect::<Result<_>>()?,
                };
                match materialize_free_cdga(name, field, &pres, window) {
                    Ok(a) => a,
                    Err(e) => return Err(locate_free_error(name, field, window, &pres, differentials, relations, *line, e)),
                }
            }
            RawCdga::Explicit { basis, products, differentials, unit } => {
                let pres = ExplicitPresentation {
                    basis: basis.clone(),
                    products: products
                        .iter()
                        .map(|(a, b, p, l)| Ok((a.clone(), b.clone(), p.to_lincomb(field, *l)?)))
                        .collect::<Result<_>>()?,
                    differentials: differentials
                        .iter()
                        .map(|(b, p, l)| Ok((b.clone(), p.to_lincomb(field, *l)?)))
                        .collect::<Result<_>>()?,
                    unit: unit.clone(),
                };
                explicit_cdga(name, field, &pres, window).map_err(|e| at(*line, e))?
            }
        };
        algebras.push(Arc::new(a));
    }
    let find = |name: &str, line: usize| -> Result<Arc<Cdga>> {
        algebras
            .iter()
            .find(|a| a.name == name)
            .cloned()
            .ok_or_else(|| err(line, format!("undeclared algebra `{name}`")))
    };
    let mut morphisms = Vec::new();
    for m in &decl.morphisms {
        let source = find(&m.source, m.line)?;
        let target = find(&m.target, m.line)?;
        let mut images = BTreeMap::new();
        for (g, p, l) in &m.images {
            if images.insert(g.clone(), p.to_poly(field, *l)?).is_some() {
                return Err(err(*l, format!("image of `{g}` given twice")));
            }
        }
        let f = CdgaMorphism::from_atom_images(source, target, &images)
            .map_err(|e| at(m.line, prefix(&m.name, e)))?;
        morphisms.push((m.name.clone(), f));
    }
    let problem = match &decl.problem {
        None => None,
        Some(p) => {
            let ambient = find(&p.ambient, p.line)?;
            let mut branches = Vec::new();
            for (i, (a, f)) in p.embedded.iter().enumerate() {
                let algebra = find(a, p.line)?;
                let (_, phi) = morphisms
                    .iter()
                    .find(|(n, _)| n == f)
                    .ok_or_else(|| err(p.line, format!("undeclared morphism `{f}`")))?;
                if phi.source.name != ambient.name || phi.target.name != algebra.name {
                    return Err(err(
                        p.line,
                        format!("morphism `{f}` does not go from {} to {a}", ambient.name),
                    ));
                }
                let repeated = p.embedded.iter().filter(|(b, _)| b == a).count() > 1;
                let name = if repeated { format!("{a}#{}", i + 1) } else { a.clone() };
                branches.push(Branch { name, algebra, phi: phi.clone() });
            }
            Some(EmbeddingProblem::new(ambient, p.n, branches).map_err(|e| at(p.line, e))?)
        }
    };
    Ok(ProblemFile { field, window, algebras, morphisms, problem })
}

/// Pins a failed presentation to the first differential or relation that
/// fails on its own; otherwise to the declaration.
#[allow(clippy::too_many_arguments)]
fn locate_free_error(
    name: &str,
    field: Field,
    window: DegreeWindow,
    pres: &FreePresentation,
    differentials: &[(String, RawPoly, usize)],
    relations: &[(RawPoly, usize)],
    line: usize,
    e: Error,
) -> Error {
    let alone = |differentials: Vec<(String, Poly)>, relations: Vec<Poly>| FreePresentation {
        generators: pres.generators.clone(),
        differentials,
        relations,
    };
    for (d, (_, _, l)) in pres.differentials.iter().zip(differentials) {
        if let Err(e) = materialize_free_cdga(name, field, &alone(vec![d.clone()], vec![]), window) {
            return at(*l, e);
        }
    }
    for (r, (_, l)) in pres.relations.iter().zip(relations) {
        if let Err(e) = materialize_free_cdga(name, field, &alone(vec![], vec![r.clone()]), window) {
            return at(*l, e);
        }
    }
    at(line, e)
}

fn prefix(name: &str, e: Error) -> Error {
    match e {
        Error::Invalid(m) => Error::Invalid(format!("morphism {name}: {m}")),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S2_IN_S6: &str = "
        # the standard unknot
        cdga W { generator e deg 6 }
        cdga P { generator x deg 2 ; relation x^2 }
        morphism f : W -> P { e -> 0 }
        problem { ambient W dim 6; embedded P via f }
    ";

    #[test]
    fn parses_a_problem() {
        let pf = parse_problem(S2_IN_S6, None).unwrap();
        assert_eq!(pf.window, DegreeWindow::new(0, 8).unwrap());
        let p = pf.problem().unwrap();
        assert_eq!(p.n, 6);
        assert_eq!(p.branches.len(), 1);
        assert_eq!(pf.algebra("P").unwrap().dim(4), 0);
    }

    #[test]
    fn polynomials() {
        let toks: Vec<Tok> = tokenize("-2*x^2 + 1/3*x*y - z").unwrap().into_iter().map(|t| t.tok).collect();
        let p = parse_poly(&toks[..toks.len() - 1], 1).unwrap();
        assert_eq!(
            p.0,
            vec![
                ("-2".to_string(), vec![("x".to_string(), 2)]),
                ("1/3".to_string(), vec![("x".to_string(), 1), ("y".to_string(), 1)]),
                ("-1".to_string(), vec![("z".to_string(), 1)]),
            ]
        );
    }

    #[test]
    fn positioned_errors() {
        let e = parse_problem("window 0 4\ncdga A { generator x deg 2\n d x = x }\n", None).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        assert!(e.to_string().contains("differential must raise degree by 1"));
        let e = parse_problem("window 0 4\ncdga A explicit { basis 1 deg 0 }", None).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_problem(
            "window 0 4\ncdga A explicit {\n basis one deg 0\n basis a deg 1\n basis b deg 1\n basis c deg 2\n unit one\n product a b = c\n product b a = c\n}",
            None,
        )
        .unwrap_err();
        assert!(e.to_string().contains("(a, b)") || e.to_string().contains("(b, a)"), "{e}");
        let e = parse_problem("window 0 4\nmorphism f : A -> B { }", None).unwrap_err();
        assert!(e.to_string().contains("undeclared algebra `A`"));
        assert!(matches!(parse_problem("cdga A { generator x deg 2 }", None), Err(Error::Parse { .. })));
    }

    #[test]
    fn window_must_reach_past_the_ambient_dimension() {
        let text = format!("window 0 6\n{S2_IN_S6}");
        let e = parse_problem(&text, None).unwrap_err();
        assert!(e.to_string().contains("below n+1"));
    }
}
