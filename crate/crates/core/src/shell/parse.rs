//! Text grammar for fields, polynomials, points and matrices.
//!
//! A field declaration is `Q` or `Q(item, item, ...)` where each item is one
//! of `zetaN`, `w` (a primitive cube root of unity), `sqrtN`, `sqrt(N)` or
//! `name: minpoly`. Roots of unity all land in one cyclotomic bottom level.
//! The polynomial grammar has integer literals, `X`, `Y`, `Z`, declared
//! generators, `+ - * / ^`, parentheses and implicit multiplication.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::field::{adjoin, cyclotomic_field, sqrt_in_tower, FieldElement, FieldTower, Rational, UniPoly};
use crate::geom::{ProjPoint, ProjTransform};
use crate::poly::{HomPoly, MPoly};
use crate::{Error, Result};

const MAX_EXPONENT: u32 = 256;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            let s: String = chars[i..j].iter().map(|x| x.1).collect();
            out.push((pos, Tok::Num(s.parse().expect("digits"))));
            i = j;
        } else if c.is_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].1.is_alphanumeric() || chars[j].1 == '_') {
                j += 1;
            }
            let s: String = chars[i..j].iter().map(|x| x.1).collect();
            out.push((pos, Tok::Ident(s)));
            i = j;
        } else if "+-*/^():".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else if c == '\u{2212}' {
            out.push((pos, Tok::Sym('-')));
            i += 1;
        } else {
            return Err(Error::Syntax { pos, msg: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

/// A parsed field declaration: the tower plus every name usable in
/// expressions.
#[derive(Clone, Debug)]
pub struct FieldDecl {
    tower: FieldTower,
    aliases: BTreeMap<String, FieldElement>,
}

impl FieldDecl {
    pub fn rationals() -> Self {
        FieldDecl { tower: FieldTower::rationals(), aliases: BTreeMap::new() }
    }

    /// Names of the tower's levels resolve to their generators.
    pub fn from_tower(tower: &FieldTower) -> Self {
        FieldDecl { tower: tower.clone(), aliases: BTreeMap::new() }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lead = text.len() - text.trim_start().len();
        let text = text.trim();
        let body = if text == "Q" {
            ""
        } else if let Some(rest) = text.strip_prefix("Q(").and_then(|r| r.strip_suffix(')')) {
            rest
        } else {
            return Err(Error::Syntax { pos: 0, msg: "a field declaration is Q or Q(...)".into() });
        };
        let offset = lead + 2;
        let mut items: Vec<(usize, &str)> = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, c) in body.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    items.push((start, &body[start..i]));
                    start = i + 1;
                }
                _ => {}
            }
        }
        if !body.trim().is_empty() {
            items.push((start, &body[start..]));
        }

        let mut order = 1u32;
        let mut rest = Vec::new();
        for (pos, raw) in items {
            let item = raw.trim();
            let pos = offset + pos + (raw.len() - raw.trim_start().len());
            if item == "w" {
                order = lcm(order, 3);
            } else if let Some(n) = item.strip_prefix("zeta").and_then(|n| n.parse::<u32>().ok()) {
                if n == 0 {
                    return Err(Error::Syntax { pos, msg: "zeta0 is not a root of unity".into() });
                }
                order = lcm(order, n);
            } else if item.is_empty() {
                return Err(Error::Syntax { pos, msg: "empty item in field declaration".into() });
            } else {
                rest.push((pos, item));
            }
        }
        if order % 4 == 2 {
            order /= 2;
        }
        let mut decl = FieldDecl { tower: cyclotomic_field(order), aliases: BTreeMap::new() };
        for (pos, item) in rest {
            decl.adjoin_item(pos, item)?;
        }
        Ok(decl)
    }

    fn adjoin_item(&mut self, pos: usize, item: &str) -> Result<()> {
        if let Some((name, poly)) = item.split_once(':') {
            let name = name.trim();
            if !is_identifier(name) || ["X", "Y", "Z", "Q"].contains(&name) {
                return Err(Error::Syntax { pos, msg: format!("{name:?} cannot name a generator") });
            }
            if self.lookup(name).is_some() {
                return Err(Error::Invalid(format!("generator name {name:?} is already in use")));
            }
            let ppos = pos + item.find(':').unwrap_or(0) + 1;
            let mp = parse_expr(poly, &self.tower, &[name], self, ppos)?;
            let coeffs: Vec<FieldElement> = mp.coeffs_in(0).iter().map(|c| c.as_constant().expect("univariate")).collect();
            let f = UniPoly::new(&self.tower, coeffs).monic()?;
            self.tower = adjoin(&self.tower, name, &f)?;
            self.relift();
            return Ok(());
        }
        let radicand = if let Some(r) = item.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
            let e = parse_expr(r, &self.tower, &[], self, pos + 5)?;
            e.as_constant().unwrap_or_else(|| FieldElement::zero(&self.tower))
        } else if let Some(n) = item.strip_prefix("sqrt").and_then(|n| n.parse::<i64>().ok()) {
            FieldElement::from_int(&self.tower, n)
        } else {
            return Err(Error::Syntax { pos, msg: format!("cannot read field item {item:?}") });
        };
        let name = match radicand.as_rational() {
            Some(r) if r.is_integer() && r.is_positive() => format!("sqrt{}", r.numer()),
            Some(r) if r.is_integer() && r.is_negative() => format!("sqrtm{}", r.numer().abs()),
            _ => return Err(Error::Invalid(format!("sqrt({radicand}): use an explicit minimal polynomial"))),
        };
        if radicand.is_zero() {
            return Err(Error::Invalid("sqrt(0) adjoins nothing".into()));
        }
        if self.lookup(&name).is_some() {
            return Ok(());
        }
        if let Some(root) = sqrt_in_tower(&radicand)? {
            self.aliases.insert(name, root);
            return Ok(());
        }
        let one = FieldElement::one(&self.tower);
        let f = UniPoly::new(&self.tower, vec![-&radicand, FieldElement::zero(&self.tower), one]);
        self.tower = adjoin(&self.tower, &name, &f)?;
        self.relift();
        Ok(())
    }

    fn relift(&mut self) {
        let t = self.tower.clone();
        for v in self.aliases.values_mut() {
            *v = v.lift_to(&t);
        }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    /// The canonical declaration of the tower.
    pub fn declaration(&self) -> String {
        self.tower.declaration()
    }

    /// Resolves a generator name: tower levels, aliases, `zetaK` for any K
    /// whose roots of unity the tower holds, and `w`.
    pub fn lookup(&self, name: &str) -> Option<FieldElement> {
        if let Some(h) = self.tower.levels().iter().position(|l| l.name() == name) {
            return Some(FieldElement::generator(&self.tower, h));
        }
        if let Some(e) = self.aliases.get(name) {
            return Some(e.clone());
        }
        if name == "w" {
            return self.root_of_unity(3);
        }
        name.strip_prefix("zeta").and_then(|k| k.parse::<u32>().ok()).and_then(|k| self.root_of_unity(k))
    }

    fn root_of_unity(&self, k: u32) -> Option<FieldElement> {
        let t = &self.tower;
        let n = t.cyclotomic_order();
        let power = |m: u32| -> FieldElement {
            if n <= 2 {
                FieldElement::one(t)
            } else {
                FieldElement::generator(t, 0).pow(u64::from(n / m))
            }
        };
        match k {
            0 => None,
            1 => Some(FieldElement::one(t)),
            2 => Some(FieldElement::from_int(t, -1)),
            _ if n % k == 0 => Some(power(k)),
            // zeta_{2m} = -zeta_m^((m+1)/2) for odd m.
            _ if k % 4 == 2 && n % (k / 2) == 0 => {
                let m = k / 2;
                Some(-power(m).pow(u64::from((m + 1) / 2)))
            }
            _ => None,
        }
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_') && cs.all(|c| c.is_alphanumeric() || c == '_')
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    tower: &'a FieldTower,
    vars: &'a [&'a str],
    decl: &'a FieldDecl,
    base: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.base + self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('(')))
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let pos = self.pos();
                self.at += 1;
                let d = self.unary()?;
                let Some(c) = d.as_constant() else {
                    return Err(Error::Syntax { pos, msg: "division by a non-constant".into() });
                };
                let inv = c.try_invert().map_err(|_| Error::Syntax { pos, msg: "division by zero".into() })?;
                acc = acc.scale(&inv);
            } else if self.starts_factor() {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.peek().cloned() {
            Some(Tok::Num(n)) => match n.to_u32() {
                Some(e) if e <= MAX_EXPONENT => {
                    self.at += 1;
                    Ok(base.pow(e))
                }
                _ => self.err(format!("exponent {n} is too large")),
            },
            _ => self.err("expected a nonnegative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<MPoly> {
        let n = self.vars.len();
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.at += 1;
                Ok(MPoly::constant(&FieldElement::from_rational(self.tower, Rational::from_integer(v)), n))
            }
            Some(Tok::Ident(name)) => {
                if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    self.at += 1;
                    return Ok(MPoly::var(self.tower, n, i));
                }
                match self.decl.lookup(&name) {
                    Some(e) => {
                        self.at += 1;
                        Ok(MPoly::constant(&e.lift_to(self.tower), n))
                    }
                    // `XY` reads as `X*Y`.
                    None if name.chars().all(|c| self.vars.iter().any(|v| v.len() == 1 && v.starts_with(c))) => {
                        self.at += 1;
                        let mut acc = MPoly::constant(&FieldElement::one(self.tower), n);
                        for c in name.chars() {
                            let i = self.vars.iter().position(|v| v.starts_with(c)).expect("checked");
                            acc = acc.mul(&MPoly::var(self.tower, n, i));
                        }
                        Ok(acc)
                    }
                    None => Err(Error::UnknownGenerator(name)),
                }
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected {}", describe(&t))),
            None => self.err("unexpected end of input"),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number {n}"),
        Tok::Ident(s) => format!("name {s}"),
        Tok::Sym(c) => format!("{c:?}"),
    }
}

/// Parses `text` as a polynomial in `vars` over `tower`; generator names
/// come from `decl`. Error positions are offset by `base`.
fn parse_expr(text: &str, tower: &FieldTower, vars: &[&str], decl: &FieldDecl, base: usize) -> Result<MPoly> {
    let toks = tokenize(text).map_err(|e| shift(e, base))?;
    let mut p = Parser { toks, at: 0, end: text.len(), tower, vars, decl, base };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return p.err(format!("unexpected {}", describe(&p.toks[p.at].1)));
    }
    Ok(e)
}

fn shift(e: Error, base: usize) -> Error {
    match e {
        Error::Syntax { pos, msg } => Error::Syntax { pos: pos + base, msg },
        e => e,
    }
}

/// A curve together with the text it was read from.
#[derive(Clone, Debug)]
pub struct CurveSpec {
    /// Canonical declaration of the tower the curve lives in.
    pub field: String,
    pub source: String,
    pub curve: HomPoly,
}

pub fn parse_curve(text: &str, field: &str) -> Result<CurveSpec> {
    let decl = FieldDecl::parse(field)?;
    let curve = parse_form(text, &decl)?;
    Ok(CurveSpec { field: decl.declaration(), source: text.to_string(), curve })
}

/// A homogeneous form in X, Y, Z.
pub fn parse_form(text: &str, decl: &FieldDecl) -> Result<HomPoly> {
    let p = parse_expr(text, decl.tower(), &["X", "Y", "Z"], decl, 0)?;
    if p.is_zero() {
        return Err(Error::ZeroVector);
    }
    HomPoly::new(p)
}

pub fn parse_element(text: &str, decl: &FieldDecl) -> Result<FieldElement> {
    parse_constant(text, decl, 0)
}

fn parse_constant(text: &str, decl: &FieldDecl, base: usize) -> Result<FieldElement> {
    let e = parse_expr(text, decl.tower(), &[], decl, base)?;
    Ok(e.as_constant().unwrap_or_else(|| FieldElement::zero(decl.tower())))
}

/// A point written `(a:b:c)`; stored canonically.
pub fn parse_point(text: &str, decl: &FieldDecl) -> Result<ProjPoint> {
    let lead = text.len() - text.trim_start().len();
    let t = text.trim();
    let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) else {
        return Err(Error::Syntax { pos: lead, msg: "a point is written (a:b:c)".into() });
    };
    let parts = split_top(inner, &[':']);
    if parts.len() != 3 {
        return Err(Error::Syntax { pos: lead, msg: format!("a point has 3 coordinates, found {}", parts.len()) });
    }
    let mut c = Vec::with_capacity(3);
    for (off, s) in parts {
        c.push(parse_constant(s, decl, lead + 1 + off)?);
    }
    let [x, y, z]: [FieldElement; 3] = c.try_into().expect("three coordinates");
    ProjPoint::new(x, y, z)
}

/// Points separated by `;`.
pub fn parse_points(text: &str, decl: &FieldDecl) -> Result<Vec<ProjPoint>> {
    text.split(';').filter(|s| !s.trim().is_empty()).map(|s| parse_point(s, decl)).collect()
}

/// Nine entries in row-major order, separated by commas; brackets are
/// ignored.
pub fn parse_matrix(text: &str, decl: &FieldDecl) -> Result<ProjTransform> {
    let cleaned: String = text.chars().map(|c| if c == '[' || c == ']' { ' ' } else { c }).collect();
    let parts = split_top(&cleaned, &[',', ';']);
    if parts.len() != 9 {
        return Err(Error::Syntax { pos: 0, msg: format!("a matrix has 9 entries, found {}", parts.len()) });
    }
    let mut entries = Vec::with_capacity(9);
    for (off, s) in parts {
        entries.push(parse_constant(s, decl, off)?);
    }
    let mut it = entries.into_iter();
    let mut row = || -> [FieldElement; 3] { [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()] };
    let m = [row(), row(), row()];
    ProjTransform::new(m)
}

/// Splits on separators outside parentheses, keeping byte offsets.
fn split_top<'s>(s: &'s str, seps: &[char]) -> Vec<(usize, &'s str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if depth == 0 && seps.contains(&c) => {
                out.push((start, &s[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

/// A declaration covering the generators mentioned in `texts`: roots of
/// unity (`zetaN`, `w`) and square roots of integers (`sqrtN`, `sqrtmN`).
pub fn infer_field<'a>(texts: impl IntoIterator<Item = &'a str>) -> String {
    let mut order = 1u32;
    let mut sqrts: Vec<BigInt> = Vec::new();
    for text in texts {
        let Ok(toks) = tokenize(text) else { continue };
        for (_, t) in toks {
            let Tok::Ident(name) = t else { continue };
            if name == "w" {
                order = lcm(order, 3);
            } else if let Some(n) = name.strip_prefix("zeta").and_then(|n| n.parse::<u32>().ok()) {
                if n > 0 {
                    order = lcm(order, n);
                }
            } else if let Some(r) = name.strip_prefix("sqrtm").and_then(|n| n.parse::<BigInt>().ok()) {
                if !r.is_zero() && !sqrts.contains(&-&r) {
                    sqrts.push(-r);
                }
            } else if let Some(r) = name.strip_prefix("sqrt").and_then(|n| n.parse::<BigInt>().ok()) {
                if !r.is_zero() && !sqrts.contains(&r) {
                    sqrts.push(r);
                }
            }
        }
    }
    let mut items = Vec::new();
    if order > 1 {
        items.push(format!("zeta{order}"));
    }
    items.extend(sqrts.iter().map(|r| format!("sqrt({r})")));
    if items.is_empty() {
        "Q".into()
    } else {
        format!("Q({})", items.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn declarations_round_trip() {
        for text in ["Q", "Q(zeta4)", "Q(zeta12, sqrt2)", "Q(zeta3, s: s^3 - zeta3 - 1)", "Q(sqrt3, r: r^2 - sqrt3)"] {
            let d = FieldDecl::parse(text).unwrap();
            let again = FieldDecl::parse(&d.declaration()).unwrap();
            assert_eq!(d.tower(), again.tower(), "{text}");
        }
        let d = FieldDecl::parse("Q(w, zeta4)").unwrap();
        assert_eq!(d.declaration(), "Q(zeta12)");
        assert!(d.lookup("zeta6").unwrap().pow(6).is_one());
        assert!(!d.lookup("zeta6").unwrap().pow(3).is_one());
        assert_eq!(d.lookup("zeta4").unwrap().pow(2), FieldElement::from_int(d.tower(), -1));
        // The square root of -3 already lives in Q(zeta3).
        let d = FieldDecl::parse("Q(w, sqrt(-3))").unwrap();
        assert_eq!(d.tower().degree(), 2);
        let s = d.lookup("sqrtm3").unwrap();
        assert_eq!(&s * &s, FieldElement::from_int(d.tower(), -3));
    }

    #[test]
    fn curves() {
        let c = parse_curve("X^2 + Y^2 - Z^2", "Q").unwrap();
        assert_eq!(c.curve.degree(), 2);
        let c = parse_curve("X*((zeta4-1)*X + zeta4*Y)^3 + X^4 + Z^4", "Q(zeta4)").unwrap();
        assert_eq!(c.curve.degree(), 4);
        assert!(matches!(parse_curve("X^2 + Y", "Q"), Err(Error::NotHomogeneous)));
        assert!(matches!(parse_curve("X^2 + zeta5*Y^2", "Q(zeta4)"), Err(Error::UnknownGenerator(_))));
        assert!(matches!(parse_curve("X^2 + * Y^2", "Q"), Err(Error::Syntax { pos: 6, .. })));
        assert!(matches!(parse_curve("X^2 + Y^2 $", "Q"), Err(Error::Syntax { pos: 10, .. })));
        let c = parse_curve("3/4 X^2 − 2XY + (1/2)(Y Z)", "Q").unwrap();
        assert_eq!(c.curve.to_string(), parse_form(&c.curve.to_string(), &FieldDecl::rationals()).unwrap().to_string());
    }

    #[test]
    fn printing_round_trips() {
        let d = FieldDecl::parse("Q(zeta12, sqrt2)").unwrap();
        let c = parse_form("(zeta12^5 - 2/3*sqrt2)*X^3 + (sqrt2 + zeta4)*X*Y*Z - Y^3 + w*Z^3", &d).unwrap();
        assert_eq!(parse_form(&c.to_string(), &d).unwrap(), c);
        let p = parse_point("(zeta4 - 1 : 2*sqrt2 : 3)", &d).unwrap();
        assert_eq!(parse_point(&p.to_string(), &d).unwrap(), p);
        let m = parse_matrix("[[1,0,0],[zeta4 - 1, zeta4, 0],[0,0,1]]", &d).unwrap();
        assert_eq!(parse_matrix(&m.to_string(), &d).unwrap(), m);
    }

    #[test]
    fn inference() {
        assert_eq!(infer_field(["X*((zeta4-1)*X + zeta4*Y)^3", "w*X^2"]), "Q(zeta12)");
        assert_eq!(infer_field(["sqrt3*X + Y"]), "Q(sqrt(3))");
        assert_eq!(infer_field(["X+Y"]), "Q");
    }
}
