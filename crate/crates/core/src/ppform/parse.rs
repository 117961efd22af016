//! Text syntax for pp formulas and pairs.
//!
//! ```text
//! [x1:1, x2:2] exists y:1 . a*x1 - y = 0 & b*x2 = 0
//! e | x
//! x:1 = x / e | x
//! ```
//!
//! The bracket lists the free variables; without it the free variables are
//! the unbound ones in order of appearance. `name:sort` declares a sort
//! anywhere; other sorts are inferred from the coefficients. `c | x` stands
//! for `exists z . c*z = x` with a fresh `z`. A pair `PHI / PSI` splits at
//! the slash that is not part of a fraction; `PSI` reuses the free variables
//! of `PHI` unless it has its own bracket.

use std::collections::HashMap;

use super::{Equation, PpFormula, PpPair, Variable};
use crate::error::{Error, Result};
use crate::exactfield::Scalar;
use crate::quiver::{parse_element, AlgebraElement, StructureAlgebra};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Group(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let ident_char = |c: char| c.is_alphanumeric() || c == '_' || c == '\'';
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() {
                // A dot continues a path word such as `b.a`.
                let path_dot = chars[i] == '.'
                    && i + 1 < chars.len()
                    && (chars[i + 1].is_alphabetic() || chars[i + 1] == '_');
                if !(ident_char(chars[i]) || path_dot) {
                    break;
                }
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            out.push(Tok::Num(chars[start..i].iter().collect()));
        } else if c == '(' {
            let mut depth = 0;
            let start = i + 1;
            loop {
                if i >= chars.len() {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                match chars[i] {
                    '(' => depth += 1,
                    ')' => {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    _ => {}
                }
                i += 1;
            }
            out.push(Tok::Group(chars[start..i].iter().collect()));
            i += 1;
        } else if "[],:.=&|+-*".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// A term before sort resolution; `None` means the identity of the
/// variable's sort.
struct RawTerm {
    coeff: Scalar,
    elem: Option<AlgebraElement>,
    var: String,
}

struct Parser<'a> {
    alg: &'a StructureAlgebra,
    toks: Vec<Tok>,
    pos: usize,
    sorts: HashMap<String, usize>,
    order: Vec<String>,
    fresh: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }
    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }
    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected `{c}`, found {}",
                self.describe()
            )))
        }
    }
    fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(Tok::Ident(s)) | Some(Tok::Num(s)) => format!("`{s}`"),
            Some(Tok::Group(s)) => format!("`({s})`"),
            Some(Tok::Sym(c)) => format!("`{c}`"),
        }
    }

    fn note_var(&mut self, name: &str) {
        if !self.order.iter().any(|n| n == name) {
            self.order.push(name.to_string());
        }
    }

    fn declare(&mut self, name: &str, sort: usize) -> Result<()> {
        if let Some(&old) = self.sorts.get(name) {
            if old != sort {
                return Err(Error::SortMismatch(format!(
                    "variable `{name}` declared with two sorts"
                )));
            }
        }
        self.sorts.insert(name.to_string(), sort);
        Ok(())
    }

    /// `name` or `name:sort`.
    fn variable(&mut self) -> Result<String> {
        let name = match self.next() {
            Some(Tok::Ident(s)) if !s.contains('.') => s,
            _ => {
                self.pos -= 1;
                return Err(Error::Parse(format!(
                    "expected a variable, found {}",
                    self.describe()
                )));
            }
        };
        if self.eat(':') {
            let sort_name = match self.next() {
                Some(Tok::Ident(s)) | Some(Tok::Num(s)) => s,
                _ => return Err(Error::Parse("expected a sort name after `:`".into())),
            };
            let s = self.alg.sort_index(&sort_name)?;
            self.declare(&name, s)?;
        }
        Ok(name)
    }

    fn decl_list(&mut self, end: char) -> Result<Vec<String>> {
        let mut names = Vec::new();
        if self.eat(end) {
            return Ok(names);
        }
        loop {
            names.push(self.variable()?);
            if self.eat(end) {
                return Ok(names);
            }
            self.expect(',')?;
        }
    }

    /// Product of coefficient factors followed by a variable, or `0`.
    fn term(&mut self, sign: Scalar, out: &mut Vec<RawTerm>) -> Result<()> {
        let field = self.alg.field();
        let mut coeff = sign;
        let mut elem: Option<AlgebraElement> = None;
        loop {
            let tok = self
                .next()
                .ok_or_else(|| Error::Parse("unexpected end of formula".into()))?;
            let is_last = !self.eat('*');
            match tok {
                Tok::Num(n) => {
                    let v = field.parse_scalar(&n)?;
                    if is_last {
                        if v.is_zero() {
                            return Ok(());
                        }
                        return Err(Error::Parse(format!("term `{n}` has no variable")));
                    }
                    coeff = &coeff * &v;
                }
                Tok::Group(g) => {
                    if is_last {
                        return Err(Error::Parse(format!("term `({g})` has no variable")));
                    }
                    let e = parse_element(self.alg, &g)?;
                    elem = Some(match elem {
                        None => e,
                        Some(prev) => self.alg.multiply(&prev, &e),
                    });
                }
                Tok::Ident(s) => {
                    if is_last {
                        if s.contains('.') {
                            return Err(Error::Parse(format!("`{s}` is not a variable name")));
                        }
                        self.pos -= 1;
                        let var = self.variable()?;
                        self.note_var(&var);
                        out.push(RawTerm { coeff, elem, var });
                        return Ok(());
                    }
                    let e = parse_element(self.alg, &s)?;
                    elem = Some(match elem {
                        None => e,
                        Some(prev) => self.alg.multiply(&prev, &e),
                    });
                }
                Tok::Sym(c) => return Err(Error::Parse(format!("unexpected `{c}` in a term"))),
            }
        }
    }

    fn side(&mut self, negate: bool, out: &mut Vec<RawTerm>) -> Result<()> {
        let field = self.alg.field();
        loop {
            let mut sign = if negate { -field.one() } else { field.one() };
            loop {
                if self.eat('-') {
                    sign = -&sign;
                } else if !self.eat('+') {
                    break;
                }
            }
            self.term(sign, out)?;
            if !matches!(self.peek(), Some(Tok::Sym('+' | '-'))) {
                return Ok(());
            }
        }
    }

    /// `lhs = rhs` or `c | x`.
    fn atom(&mut self, bound: &mut Vec<String>) -> Result<Vec<RawTerm>> {
        let field = self.alg.field();
        // Divisibility: scan ahead for `|` before the next `&`.
        let mut j = self.pos;
        let mut is_div = false;
        while let Some(t) = self.toks.get(j) {
            match t {
                Tok::Sym('|') => {
                    is_div = true;
                    break;
                }
                Tok::Sym('&') | Tok::Sym('=') => break,
                _ => j += 1,
            }
        }
        if is_div {
            let mut coeff = field.one();
            let mut elem: Option<AlgebraElement> = None;
            while !self.eat('|') {
                match self.next() {
                    Some(Tok::Num(n)) => coeff = &coeff * &field.parse_scalar(&n)?,
                    Some(Tok::Ident(s)) => {
                        let e = parse_element(self.alg, &s)?;
                        elem = Some(match elem {
                            None => e,
                            Some(p) => self.alg.multiply(&p, &e),
                        });
                    }
                    Some(Tok::Group(g)) => {
                        let e = parse_element(self.alg, &g)?;
                        elem = Some(match elem {
                            None => e,
                            Some(p) => self.alg.multiply(&p, &e),
                        });
                    }
                    Some(Tok::Sym('*')) => {}
                    _ => return Err(Error::Parse("malformed divisibility condition".into())),
                }
            }
            let x = self.variable()?;
            self.note_var(&x);
            self.fresh += 1;
            let mut z = format!("z{}", self.fresh);
            while self.sorts.contains_key(&z) || self.order.contains(&z) || bound.contains(&z) {
                self.fresh += 1;
                z = format!("z{}", self.fresh);
            }
            bound.push(z.clone());
            self.order.push(z.clone());
            return Ok(vec![
                RawTerm {
                    coeff,
                    elem,
                    var: z,
                },
                RawTerm {
                    coeff: -field.one(),
                    elem: None,
                    var: x,
                },
            ]);
        }
        let mut terms = Vec::new();
        self.side(false, &mut terms)?;
        self.expect('=')?;
        self.side(true, &mut terms)?;
        Ok(terms)
    }
}

struct Parsed {
    header: Option<Vec<String>>,
    bound: Vec<String>,
    atoms: Vec<Vec<RawTerm>>,
    sorts: HashMap<String, usize>,
    order: Vec<String>,
}

fn parse_raw(alg: &StructureAlgebra, text: &str, known: &HashMap<String, usize>) -> Result<Parsed> {
    let mut p = Parser {
        alg,
        toks: tokenize(text)?,
        pos: 0,
        sorts: known.clone(),
        order: Vec::new(),
        fresh: 0,
    };
    let header = if p.eat('[') {
        Some(p.decl_list(']')?)
    } else {
        None
    };
    let mut bound = Vec::new();
    if p.peek() == Some(&Tok::Ident("exists".into())) {
        p.pos += 1;
        loop {
            bound.push(p.variable()?);
            if p.eat('.') {
                break;
            }
            p.expect(',')?;
        }
    }
    let mut atoms = Vec::new();
    loop {
        atoms.push(p.atom(&mut bound)?);
        if !p.eat('&') {
            break;
        }
    }
    if p.pos < p.toks.len() {
        return Err(Error::Parse(format!(
            "unexpected {} after the formula",
            p.describe()
        )));
    }
    Ok(Parsed {
        header,
        bound,
        atoms,
        sorts: p.sorts,
        order: p.order,
    })
}

fn resolve(
    alg: &StructureAlgebra,
    parsed: Parsed,
    inherited: Option<&[Variable]>,
) -> Result<PpFormula> {
    let Parsed {
        header,
        bound,
        atoms,
        mut sorts,
        order,
    } = parsed;
    let free_names: Vec<String> = match (&header, inherited) {
        (Some(h), _) => h.clone(),
        (None, Some(vars)) => vars.iter().map(|v| v.name.clone()).collect(),
        (None, None) => order
            .iter()
            .filter(|n| !bound.contains(n))
            .cloned()
            .collect(),
    };
    for n in &order {
        if !free_names.contains(n) && !bound.contains(n) {
            return Err(Error::Parse(format!(
                "variable `{n}` is neither free nor bound"
            )));
        }
    }
    for n in &bound {
        if free_names.contains(n) {
            return Err(Error::Parse(format!(
                "variable `{n}` is both free and bound"
            )));
        }
    }
    // Propagate sorts through coefficients until nothing changes.
    let mut targets: Vec<Option<usize>> = vec![None; atoms.len()];
    let clash = |what: &str| Error::SortMismatch(format!("conflicting sorts for {what}"));
    loop {
        let mut changed = false;
        for (k, atom) in atoms.iter().enumerate() {
            for t in atom {
                let (vs, ts) = match &t.elem {
                    Some(e) => match e.sorts(alg)? {
                        Some((s, u)) => (Some(s), Some(u)),
                        None => continue,
                    },
                    None => (
                        sorts.get(&t.var).copied().or(targets[k]),
                        sorts.get(&t.var).copied().or(targets[k]),
                    ),
                };
                if let Some(s) = vs {
                    match sorts.get(&t.var) {
                        Some(&old) if old != s => return Err(clash(&format!("`{}`", t.var))),
                        Some(_) => {}
                        None => {
                            sorts.insert(t.var.clone(), s);
                            changed = true;
                        }
                    }
                }
                if let Some(u) = ts {
                    match targets[k] {
                        Some(old) if old != u => return Err(clash("an equation")),
                        Some(_) => {}
                        None => {
                            targets[k] = Some(u);
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let sort_of = |n: &String, sorts: &HashMap<String, usize>| -> Result<usize> {
        match sorts.get(n) {
            Some(&s) => Ok(s),
            None if alg.num_sorts() == 1 => Ok(0),
            None => Err(Error::Parse(format!(
                "cannot infer the sort of `{n}`; declare it as `{n}:sort`"
            ))),
        }
    };
    let free: Vec<Variable> = free_names
        .iter()
        .map(|n| Ok(Variable::new(n.clone(), sort_of(n, &sorts)?)))
        .collect::<Result<_>>()?;
    if let Some(inh) = inherited {
        if header.is_some() && free.iter().map(|v| v.sort).ne(inh.iter().map(|v| v.sort)) {
            return Err(Error::SortMismatch(
                "the two halves of the pair have different free sorts".into(),
            ));
        }
    }
    let bound_vars: Vec<Variable> = bound
        .iter()
        .map(|n| Ok(Variable::new(n.clone(), sort_of(n, &sorts)?)))
        .collect::<Result<_>>()?;
    let all: Vec<&Variable> = free.iter().chain(&bound_vars).collect();
    let mut equations = Vec::new();
    for (k, atom) in atoms.iter().enumerate() {
        let mut coeffs = vec![AlgebraElement::zero(); all.len()];
        let mut target = targets[k];
        for t in atom {
            let j = all
                .iter()
                .position(|v| v.name == t.var)
                .expect("resolved variable");
            let e = match &t.elem {
                Some(e) => e.scale(&t.coeff),
                None => {
                    let s = all[j].sort;
                    target.get_or_insert(s);
                    AlgebraElement::basis(alg.idempotent(s), alg.field()).scale(&t.coeff)
                }
            };
            coeffs[j] = coeffs[j].add(&e, alg);
        }
        if coeffs.iter().all(AlgebraElement::is_zero) {
            continue;
        }
        let target = match target {
            Some(t) => t,
            None => {
                // Only zero-sorted coefficients survive: use any variable's sort.
                let j = coeffs.iter().position(|c| !c.is_zero()).unwrap();
                coeffs[j].sorts(alg)?.map(|(_, t)| t).unwrap_or(all[j].sort)
            }
        };
        equations.push(Equation { target, coeffs });
    }
    PpFormula::new(alg, free, bound_vars, equations)
}

/// Parse one formula.
pub fn parse_formula(alg: &StructureAlgebra, text: &str) -> Result<PpFormula> {
    resolve(alg, parse_raw(alg, text, &HashMap::new())?, None)
}

/// Position of the slash separating a pair, skipping fractions like `1/2`.
fn pair_split(text: &str) -> Result<usize> {
    let b = text.as_bytes();
    let mut found = None;
    for (i, &c) in b.iter().enumerate() {
        if c != b'/' {
            continue;
        }
        let digit_before = i > 0 && b[i - 1].is_ascii_digit();
        let digit_after = i + 1 < b.len() && b[i + 1].is_ascii_digit();
        let number_before = digit_before && {
            let mut k = i;
            while k > 0 && b[k - 1].is_ascii_digit() {
                k -= 1;
            }
            k == 0 || !(b[k - 1].is_ascii_alphabetic() || b[k - 1] == b'_')
        };
        if number_before && digit_after {
            continue;
        }
        if found.is_some() {
            return Err(Error::Parse("a pair has exactly one `/`".into()));
        }
        found = Some(i);
    }
    found.ok_or_else(|| Error::Parse("a pair is written `PHI / PSI`".into()))
}

/// Parse `PHI / PSI`. Containment is not checked here; see [`PpPair::new`].
pub fn parse_pair_text(alg: &StructureAlgebra, text: &str) -> Result<PpPair> {
    let i = pair_split(text)?;
    let phi = parse_formula(alg, &text[..i])?;
    let known: HashMap<String, usize> = phi
        .free()
        .iter()
        .map(|v| (v.name.clone(), v.sort))
        .collect();
    let raw = parse_raw(alg, &text[i + 1..], &known)?;
    let psi = resolve(alg, raw, Some(phi.free()))?;
    if psi.free_sorts() != phi.free_sorts() {
        return Err(Error::SortMismatch(
            "the two halves of the pair have different free sorts".into(),
        ));
    }
    Ok(PpPair { phi, psi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldSpec;
    use crate::quiver::{a3, dual_numbers};

    #[test]
    fn header_and_inference() {
        let alg = a3(FieldSpec::Rationals);
        let f = parse_formula(&alg, "[x1:1, x2:2] exists y:1 . a*x1 - a*y = 0 & b*x2 = 0").unwrap();
        assert_eq!(f.free_sorts(), vec![0, 1]);
        assert_eq!(f.bound().len(), 1);
        assert_eq!(f.equations().len(), 2);
        let g = parse_formula(&alg, "a*x = y").unwrap();
        assert_eq!(g.free_sorts(), vec![0, 1]);
    }

    #[test]
    fn round_trip_display() {
        let alg = a3(FieldSpec::Rationals);
        let f = parse_formula(
            &alg,
            "[x1:1, x2:2] exists y:1 . a*x1 - 2*a*y = x2 & b*x2 = 0",
        )
        .unwrap();
        let again = parse_formula(&alg, &f.display(&alg)).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn divisibility_and_pairs() {
        let alg = dual_numbers(FieldSpec::prime(3).unwrap());
        let f = parse_formula(&alg, "e | x").unwrap();
        assert_eq!(f.bound().len(), 1);
        let p = parse_pair_text(&alg, "e*x = 0 / e | x").unwrap();
        assert_eq!(p.psi.free()[0].name, "x");
        assert!(parse_pair_text(&alg, "1/2*x = 0 / x = 0").is_ok());
    }

    #[test]
    fn errors() {
        let alg = a3(FieldSpec::Rationals);
        assert!(matches!(parse_formula(&alg, "x = "), Err(Error::Parse(_))));
        assert!(matches!(parse_formula(&alg, "x = y"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_formula(&alg, "a*x:2 = 0"),
            Err(Error::SortMismatch(_))
        ));
        assert!(parse_formula(&alg, "zz*x = 0").is_err());
    }
}
