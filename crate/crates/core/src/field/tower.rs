//! Towers of simple algebraic extensions of the rationals.
//!
//! An element of a tower with levels `g_1, ..., g_n` is stored as a flat
//! vector of rationals in mixed radix: the coordinate at index
//! `i_1 + d_1 * (i_2 + d_2 * (...))` multiplies `g_1^i_1 * g_2^i_2 * ...`.
//! Consequently an element of a prefix tower is embedded into a taller tower
//! by padding with zeros.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{FieldError, Rational, ZeroDivisorInfo};

/// How a level's generator was introduced. Only used for naming and for
/// fast paths; arithmetic always goes through the stored minimal polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LevelKind {
    /// A primitive root of unity of the given order over the rationals.
    Cyclotomic(u32),
    /// A square root of an element of the previous level.
    Sqrt,
    Generic,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Level {
    pub(crate) name: String,
    pub(crate) kind: LevelKind,
    /// Monic, low to high; every coefficient is a coordinate vector of the
    /// tower below this level.
    pub(crate) minpoly: Vec<Vec<Rational>>,
}

impl Level {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &LevelKind {
        &self.kind
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }
}

pub(crate) struct TowerInner {
    pub(crate) levels: Vec<Level>,
    /// `strides[h]` is the absolute degree of the tower formed by the first
    /// `h` levels.
    pub(crate) strides: Vec<usize>,
}

/// A finite tower `Q ⊂ Q(g_1) ⊂ Q(g_1, g_2) ⊂ ...`. Cheap to clone.
#[derive(Clone)]
pub struct FieldTower(pub(crate) Arc<TowerInner>);

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.levels == other.0.levels
    }
}

impl Eq for FieldTower {}

impl Hash for FieldTower {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.levels.hash(state);
    }
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldTower({})", self.declaration())
    }
}

impl fmt::Display for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.declaration())
    }
}

impl FieldTower {
    pub fn rationals() -> Self {
        Self::from_levels(Vec::new())
    }

    pub(crate) fn from_levels(levels: Vec<Level>) -> Self {
        let mut strides = vec![1usize];
        for level in &levels {
            let last = *strides.last().unwrap();
            strides.push(last * level.degree());
        }
        FieldTower(Arc::new(TowerInner { levels, strides }))
    }

    /// Absolute degree over the rationals.
    pub fn degree(&self) -> usize {
        *self.0.strides.last().unwrap()
    }

    pub fn depth(&self) -> usize {
        self.0.levels.len()
    }

    pub fn levels(&self) -> &[Level] {
        &self.0.levels
    }

    pub fn ptr_eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// The tower made of the first `height` levels.
    pub fn prefix(&self, height: usize) -> FieldTower {
        if height == self.depth() {
            return self.clone();
        }
        Self::from_levels(self.0.levels[..height].to_vec())
    }

    /// True when `self` is obtained from `other` by adjoining zero or more
    /// levels on top.
    pub fn extends(&self, other: &FieldTower) -> bool {
        other.depth() <= self.depth() && self.0.levels[..other.depth()] == other.0.levels[..]
    }

    /// Order `N` of the bottom cyclotomic level, if any (1 when absent).
    pub fn cyclotomic_order(&self) -> u32 {
        match self.0.levels.first().map(|l| &l.kind) {
            Some(LevelKind::Cyclotomic(n)) => *n,
            _ => 1,
        }
    }

    pub(crate) fn level_index(&self, name: &str) -> Option<usize> {
        self.0.levels.iter().position(|l| l.name == name)
    }

    pub(crate) fn push_level(&self, level: Level) -> FieldTower {
        let mut levels = self.0.levels.clone();
        levels.push(level);
        Self::from_levels(levels)
    }

    /// Textual field declaration accepted by the shell grammar.
    pub fn declaration(&self) -> String {
        if self.0.levels.is_empty() {
            return "Q".to_string();
        }
        let mut items = Vec::new();
        for (h, level) in self.0.levels.iter().enumerate() {
            let below = self.prefix(h);
            match &level.kind {
                LevelKind::Cyclotomic(n) => items.push(format!("zeta{n}")),
                _ => {
                    let radicand = sqrt_integer_radicand(level);
                    match radicand {
                        Some(r) if level.name == format!("sqrt{r}") => items.push(level.name.clone()),
                        _ => items.push(format!(
                            "{}: {}",
                            level.name,
                            below.format_univariate(&level.minpoly, &level.name)
                        )),
                    }
                }
            }
        }
        format!("Q({})", items.join(", "))
    }

    /// Prints a univariate polynomial with coefficients in this tower.
    pub(crate) fn format_univariate(&self, coeffs: &[Vec<Rational>], var: &str) -> String {
        let mut out = String::new();
        for (i, c) in coeffs.iter().enumerate().rev() {
            if c.iter().all(Zero::is_zero) {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            super::element::push_term(&mut out, &self.format_coords(c), &mono);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub(crate) fn format_coords(&self, coords: &[Rational]) -> String {
        let inner = &self.0;
        let mut terms: Vec<(Rational, String)> = Vec::new();
        for idx in (0..coords.len()).rev() {
            let c = &coords[idx];
            if c.is_zero() {
                continue;
            }
            let mut mono = Vec::new();
            for (h, level) in inner.levels.iter().enumerate() {
                let e = (idx / inner.strides[h]) % level.degree();
                match e {
                    0 => {}
                    1 => mono.push(level.name.clone()),
                    _ => mono.push(format!("{}^{}", level.name, e)),
                }
            }
            terms.push((c.clone(), mono.join("*")));
        }
        let mut out = String::new();
        for (c, mono) in terms {
            let neg = c < Rational::zero();
            let abs = if neg { -c } else { c };
            let body = if mono.is_empty() {
                format_rational(&abs)
            } else if abs.is_one() {
                mono
            } else {
                format!("{}*{}", format_rational(&abs), mono)
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    // ---- coordinate arithmetic, parametrized by height ----

    pub(crate) fn len_at(&self, h: usize) -> usize {
        self.0.strides[h]
    }

    pub(crate) fn zero_at(&self, h: usize) -> Vec<Rational> {
        vec![Rational::zero(); self.0.strides[h]]
    }

    pub(crate) fn one_at(&self, h: usize) -> Vec<Rational> {
        let mut v = self.zero_at(h);
        v[0] = Rational::one();
        v
    }

    pub(crate) fn mul_at(&self, h: usize, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if h == 0 {
            return vec![&a[0] * &b[0]];
        }
        let level = &self.0.levels[h - 1];
        let d = level.degree();
        let s = self.0.strides[h - 1];
        if is_zero(a) || is_zero(b) {
            return self.zero_at(h);
        }
        // Elements of the subfield act blockwise.
        if is_zero(&a[s..]) {
            return self.scale_blocks(h, &a[..s], b);
        }
        if is_zero(&b[s..]) {
            return self.scale_blocks(h, &b[..s], a);
        }
        let mut prod: Vec<Vec<Rational>> = vec![self.zero_at(h - 1); 2 * d - 1];
        for i in 0..d {
            let ai = &a[i * s..(i + 1) * s];
            if is_zero(ai) {
                continue;
            }
            for j in 0..d {
                let bj = &b[j * s..(j + 1) * s];
                if is_zero(bj) {
                    continue;
                }
                let p = self.mul_at(h - 1, ai, bj);
                add_assign(&mut prod[i + j], &p);
            }
        }
        for i in (d..2 * d - 1).rev() {
            let c = std::mem::replace(&mut prod[i], self.zero_at(h - 1));
            if is_zero(&c) {
                continue;
            }
            for j in 0..d {
                if is_zero(&level.minpoly[j]) {
                    continue;
                }
                let p = self.mul_at(h - 1, &c, &level.minpoly[j]);
                sub_assign(&mut prod[i - d + j], &p);
            }
        }
        prod.truncate(d);
        prod.concat()
    }

    fn scale_blocks(&self, h: usize, c: &[Rational], x: &[Rational]) -> Vec<Rational> {
        let s = self.0.strides[h - 1];
        let mut out = Vec::with_capacity(x.len());
        for block in x.chunks(s) {
            if is_zero(block) {
                out.extend(block.iter().cloned());
            } else {
                out.extend(self.mul_at(h - 1, c, block));
            }
        }
        out
    }

    /// Inverse at height `h`, via the extended Euclidean algorithm against
    /// the minimal polynomial of level `h`, recursing down the tower.
    pub(crate) fn inv_at(&self, h: usize, a: &[Rational]) -> Result<Vec<Rational>, FieldError> {
        if is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        if h == 0 {
            return Ok(vec![a[0].recip()]);
        }
        let s = self.0.strides[h - 1];
        if is_zero(&a[s..]) {
            let low = self.inv_at(h - 1, &a[..s])?;
            let mut out = low;
            out.resize(self.0.strides[h], Rational::zero());
            return Ok(out);
        }
        let level = &self.0.levels[h - 1];
        let sub = h - 1;
        let mut r0: Vec<Vec<Rational>> = level.minpoly.clone();
        let mut r1: Vec<Vec<Rational>> = a.chunks(s).map(|c| c.to_vec()).collect();
        trim(&mut r1);
        let mut s0: Vec<Vec<Rational>> = Vec::new();
        let mut s1: Vec<Vec<Rational>> = vec![self.one_at(sub)];
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(sub, &r0, &r1)?;
            let qs1 = self.poly_mul(sub, &q, &s1);
            let next_s = self.poly_sub(sub, &s0, &qs1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, next_s);
        }
        if r0.len() > 1 {
            let lc_inv = self.inv_at(sub, r0.last().unwrap())?;
            let factor: Vec<Vec<Rational>> = r0.iter().map(|c| self.mul_at(sub, c, &lc_inv)).collect();
            return Err(FieldError::ZeroDivisor(Box::new(ZeroDivisorInfo {
                base: self.prefix(sub),
                level: level.clone(),
                factor,
            })));
        }
        let c_inv = self.inv_at(sub, &r0[0])?;
        let mut out = Vec::with_capacity(self.0.strides[h]);
        let d = level.degree();
        for i in 0..d {
            match s0.get(i) {
                Some(c) => out.extend(self.mul_at(sub, c, &c_inv)),
                None => out.extend(self.zero_at(sub)),
            }
        }
        Ok(out)
    }

    // ---- dense polynomials over height h (coefficient vectors), used by
    // the inversion routine and by squarefree checks ----

    pub(crate) fn poly_mul(&self, h: usize, a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero_at(h); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if is_zero(y) {
                    continue;
                }
                let p = self.mul_at(h, x, y);
                add_assign(&mut out[i + j], &p);
            }
        }
        trim(&mut out);
        out
    }

    pub(crate) fn poly_sub(&self, h: usize, a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = a.get(i).cloned().unwrap_or_else(|| self.zero_at(h));
            if let Some(y) = b.get(i) {
                sub_assign(&mut c, y);
            }
            out.push(c);
        }
        trim(&mut out);
        out
    }

    pub(crate) fn poly_divrem(
        &self,
        h: usize,
        a: &[Vec<Rational>],
        b: &[Vec<Rational>],
    ) -> Result<(Vec<Vec<Rational>>, Vec<Vec<Rational>>), FieldError> {
        if b.is_empty() {
            return Err(FieldError::DivisionByZero);
        }
        let mut rem: Vec<Vec<Rational>> = a.to_vec();
        trim(&mut rem);
        if rem.len() < b.len() {
            return Ok((Vec::new(), rem));
        }
        let lc_inv = self.inv_at(h, b.last().unwrap())?;
        let db = b.len() - 1;
        let mut quot = vec![self.zero_at(h); rem.len() - db];
        while rem.len() >= b.len() {
            let k = rem.len() - 1 - db;
            let c = self.mul_at(h, rem.last().unwrap(), &lc_inv);
            for (j, bj) in b.iter().enumerate() {
                if is_zero(bj) {
                    continue;
                }
                let p = self.mul_at(h, &c, bj);
                sub_assign(&mut rem[k + j], &p);
            }
            quot[k] = c;
            // The leading term cancels exactly.
            rem.pop();
            trim(&mut rem);
        }
        trim(&mut quot);
        Ok((quot, rem))
    }
}

fn sqrt_integer_radicand(level: &Level) -> Option<num_bigint::BigInt> {
    if level.kind != LevelKind::Sqrt || level.minpoly.len() != 3 {
        return None;
    }
    if !is_zero(&level.minpoly[1]) || !is_zero(&level.minpoly[0][1..]) {
        return None;
    }
    let r = -level.minpoly[0][0].clone();
    if r.is_integer() && r > Rational::zero() {
        Some(r.to_integer())
    } else {
        None
    }
}

/// `sqrt{n}` when the radicand is a positive integer.
pub(crate) fn sqrt_radicand_name(radicand: &super::FieldElement) -> Option<String> {
    let r = radicand.as_rational()?;
    (r.is_integer() && *r > Rational::zero()).then(|| format!("sqrt{}", r.numer()))
}

pub(crate) fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub(crate) fn add_assign(a: &mut [Rational], b: &[Rational]) {
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += y;
        }
    }
}

pub(crate) fn sub_assign(a: &mut [Rational], b: &[Rational]) {
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x -= y;
        }
    }
}

pub(crate) fn trim(p: &mut Vec<Vec<Rational>>) {
    while p.last().is_some_and(|c| is_zero(c)) {
        p.pop();
    }
}
