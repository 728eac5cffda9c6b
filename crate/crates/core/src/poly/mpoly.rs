use std::collections::BTreeMap;
use std::fmt;

use crate::field::push_term;
use crate::field::{FieldElement, FieldError, FieldTower, UniPoly};

/// Sparse polynomial in a fixed number of variables over a tower.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    tower: FieldTower,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, FieldElement>,
}

impl MPoly {
    pub fn zero(tower: &FieldTower, nvars: usize) -> Self {
        MPoly { tower: tower.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: &FieldElement, nvars: usize) -> Self {
        Self::monomial(c, vec![0; nvars])
    }

    pub fn from_int(tower: &FieldTower, nvars: usize, n: i64) -> Self {
        Self::constant(&FieldElement::from_int(tower, n), nvars)
    }

    pub fn var(tower: &FieldTower, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(&FieldElement::one(tower), e)
    }

    pub fn monomial(c: &FieldElement, exps: Vec<u32>) -> Self {
        let mut p = MPoly { tower: c.tower().clone(), nvars: exps.len(), terms: BTreeMap::new() };
        if !c.is_zero() {
            p.terms.insert(exps, c.clone());
        }
        p
    }

    pub fn from_terms(tower: &FieldTower, nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, FieldElement)>) -> Self {
        let mut p = Self::zero(tower, nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "MPoly::from_terms: exponent length");
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> FieldElement {
        self.terms.get(e).cloned().unwrap_or_else(|| FieldElement::zero(&self.tower))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value when no variable occurs.
    pub fn as_constant(&self) -> Option<FieldElement> {
        match self.terms.len() {
            0 => Some(FieldElement::zero(&self.tower)),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(&self.tower, |c| -c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.tower, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(&self.tower, self.nvars);
        }
        self.map_coeffs(&self.tower, |a| a * c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(&FieldElement::one(&self.tower), self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `None` for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.uses_var(i)).collect()
    }

    /// Coefficients with respect to variable `i`, lowest power first.
    pub fn coeffs_in(&self, i: usize) -> Vec<MPoly> {
        let Some(d) = self.degree_in(i) else {
            return Vec::new();
        };
        let mut out = vec![Self::zero(&self.tower, self.nvars); d as usize + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = std::mem::replace(&mut e2[i], 0);
            out[k as usize].terms.insert(e2, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(i: usize, coeffs: &[MPoly], tower: &FieldTower, nvars: usize) -> Self {
        let mut out = Self::zero(tower, nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, v) in &c.terms {
                let mut e2 = e.clone();
                e2[i] += k as u32;
                out.add_term(e2, v);
            }
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.tower, self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, &c.scale(&crate::field::Rational::from_integer(e[i].into())));
        }
        out
    }

    /// Substitutes a value for variable `i`; the value's tower must extend
    /// this polynomial's tower, and the result lives in the value's tower.
    pub fn substitute(&self, i: usize, value: &FieldElement) -> Self {
        let tower = value.tower().clone();
        let mut powers: Vec<FieldElement> = vec![FieldElement::one(&tower)];
        let mut out = Self::zero(&tower, self.nvars);
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut e2 = e.clone();
            e2[i] = 0;
            out.add_term(e2, &(&c.lift_to(&tower) * &powers[k]));
        }
        out
    }

    /// Substitutes a polynomial (same tower and variable count) for variable `i`.
    pub fn substitute_poly(&self, i: usize, value: &MPoly) -> Self {
        let coeffs = self.coeffs_in(i);
        let mut acc = Self::zero(&self.tower, self.nvars);
        for c in coeffs.iter().rev() {
            acc = acc.mul(value).add(c);
        }
        acc
    }

    /// Replaces every variable `j` by `subs[j]`, which may live in any
    /// number of variables (all with the same count).
    pub fn compose(&self, subs: &[MPoly]) -> MPoly {
        assert_eq!(subs.len(), self.nvars, "MPoly::compose: one substitute per variable");
        let target_vars = subs.first().map_or(0, |s| s.nvars);
        let tower = subs.first().map_or(self.tower.clone(), |s| s.tower.clone());
        let mut cache: Vec<Vec<MPoly>> = subs.iter().map(|s| vec![MPoly::constant(&FieldElement::one(&tower), target_vars), s.clone()]).collect();
        let mut out = MPoly::zero(&tower, target_vars);
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(&c.lift_to(&tower), target_vars);
            for (j, &k) in e.iter().enumerate() {
                while cache[j].len() <= k as usize {
                    let next = cache[j].last().unwrap().mul(&subs[j]);
                    cache[j].push(next);
                }
                if k > 0 {
                    term = term.mul(&cache[j][k as usize]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        let tower = point.first().map_or(self.tower.clone(), |p| p.tower().clone());
        let mut acc = FieldElement::zero(&tower);
        for (e, c) in &self.terms {
            let mut t = c.lift_to(&tower);
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &point[j].pow(k as u64);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// The polynomial as univariate in variable `i`, when no other variable occurs.
    pub fn to_univariate(&self, i: usize) -> Option<UniPoly> {
        if (0..self.nvars).any(|j| j != i && self.uses_var(j)) {
            return None;
        }
        let coeffs = self.coeffs_in(i).into_iter().map(|c| c.as_constant().unwrap()).collect();
        Some(UniPoly::new(&self.tower, coeffs))
    }

    pub fn from_univariate(f: &UniPoly, i: usize, nvars: usize) -> Self {
        let mut out = Self::zero(f.tower(), nvars);
        for (k, c) in f.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[i] = k as u32;
            out.add_term(e, c);
        }
        out
    }

    pub fn map_coeffs(&self, tower: &FieldTower, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        let mut out = Self::zero(tower, self.nvars);
        for (e, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }

    pub fn lift_to(&self, tower: &FieldTower) -> Self {
        self.map_coeffs(tower, |c| c.lift_to(tower))
    }

    /// Componentwise minimum of the exponent vectors.
    pub fn monomial_content(&self) -> Vec<u32> {
        let mut out: Option<Vec<u32>> = None;
        for e in self.terms.keys() {
            out = Some(match out {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        out.unwrap_or_else(|| vec![0; self.nvars])
    }

    pub fn div_monomial(&self, m: &[u32]) -> Self {
        let mut out = Self::zero(&self.tower, self.nvars);
        for (e, c) in &self.terms {
            let e2 = e.iter().zip(m).map(|(a, b)| a.checked_sub(*b).expect("div_monomial: not divisible")).collect();
            out.terms.insert(e2, c.clone());
        }
        out
    }

    /// Leading coefficient in the descending lexicographic order.
    pub fn leading(&self) -> Option<(&Vec<u32>, &FieldElement)> {
        self.terms.iter().next_back()
    }

    /// Scales by the inverse of the leading coefficient.
    pub fn monic(&self) -> Result<Self, FieldError> {
        match self.leading() {
            None => Ok(self.clone()),
            Some((_, c)) => Ok(self.scale(&c.try_invert()?)),
        }
    }

    /// Zero test of every coefficient that is safe under reducible moduli.
    pub fn is_zero_checked(&self) -> Result<bool, FieldError> {
        for c in self.terms.values() {
            if !c.is_zero_checked()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn format_with(&self, names: &[&str]) -> String {
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let mut mono = Vec::new();
            for (j, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => mono.push(names[j].to_string()),
                    _ => mono.push(format!("{}^{}", names[j], k)),
                }
            }
            push_term(&mut out, &c.to_string(), &mono.join("*"));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    fn default_names(&self) -> Vec<String> {
        (0..self.nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.default_names();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.format_with(&refs))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

/// Resultant of `f` and `g` with respect to variable `v`: the determinant of
/// their Sylvester matrix, expanded by memoized minors.
pub fn resultant(f: &MPoly, g: &MPoly, v: usize) -> MPoly {
    let tower = f.tower().clone();
    let nvars = f.nvars();
    let (Some(m), Some(n)) = (f.degree_in(v), g.degree_in(v)) else {
        return MPoly::zero(&tower, nvars);
    };
    let fc = f.coeffs_in(v);
    let gc = g.coeffs_in(v);
    if m == 0 {
        return fc[0].pow(n);
    }
    if n == 0 {
        return gc[0].pow(m);
    }
    let (m, n) = (m as usize, n as usize);
    let size = m + n;
    // Row r < n holds f shifted by r; row n + r holds g shifted by r.
    // Entry (row, col) is the coefficient of v^(size - 1 - col).
    let mut rows: Vec<Vec<Option<MPoly>>> = Vec::with_capacity(size);
    for r in 0..n {
        let mut row = vec![None; size];
        for k in 0..=m {
            let c = &fc[m - k];
            if !c.is_zero() {
                row[r + k] = Some(c.clone());
            }
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![None; size];
        for k in 0..=n {
            let c = &gc[n - k];
            if !c.is_zero() {
                row[r + k] = Some(c.clone());
            }
        }
        rows.push(row);
    }
    determinant(&rows, &tower, nvars)
}

/// Determinant of a square matrix of polynomials (`None` entries are zero).
pub fn determinant(rows: &[Vec<Option<MPoly>>], tower: &FieldTower, nvars: usize) -> MPoly {
    let size = rows.len();
    assert!(size <= 63, "determinant: matrix too large");
    let mut memo: std::collections::HashMap<u64, MPoly> = std::collections::HashMap::new();
    let full: u64 = if size == 64 { u64::MAX } else { (1u64 << size) - 1 };
    minor(rows, 0, full, &mut memo, tower, nvars)
}

/// Determinant of rows `row..` restricted to the columns in `cols`.
fn minor(
    rows: &[Vec<Option<MPoly>>],
    row: usize,
    cols: u64,
    memo: &mut std::collections::HashMap<u64, MPoly>,
    tower: &FieldTower,
    nvars: usize,
) -> MPoly {
    if row == rows.len() {
        return MPoly::constant(&FieldElement::one(tower), nvars);
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = MPoly::zero(tower, nvars);
    let mut sign_positive = true;
    for col in 0..rows.len() {
        if cols & (1 << col) == 0 {
            continue;
        }
        if let Some(entry) = &rows[row][col] {
            let sub = minor(rows, row + 1, cols & !(1 << col), memo, tower, nvars);
            if !sub.is_zero() {
                let term = entry.mul(&sub);
                acc = if sign_positive { acc.add(&term) } else { acc.sub(&term) };
            }
        }
        sign_positive = !sign_positive;
    }
    memo.insert(cols, acc.clone());
    acc
}
