use std::fmt;

use num_bigint::BigInt;

use super::element::push_term;
use super::{FieldElement, FieldError, FieldTower, Rational};

/// Dense univariate polynomial over a tower, coefficients low to high with
/// no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    tower: FieldTower,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(tower: &FieldTower, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.tower() == tower));
        UniPoly { tower: tower.clone(), coeffs }
    }

    pub fn from_ints(tower: &FieldTower, coeffs: &[i64]) -> Self {
        Self::new(tower, coeffs.iter().map(|&c| FieldElement::from_int(tower, c)).collect())
    }

    pub fn from_rationals(tower: &FieldTower, coeffs: &[Rational]) -> Self {
        Self::new(tower, coeffs.iter().map(|c| FieldElement::from_rational(tower, c.clone())).collect())
    }

    pub fn zero(tower: &FieldTower) -> Self {
        UniPoly { tower: tower.clone(), coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        let tower = c.tower().clone();
        Self::new(&tower, vec![c])
    }

    /// `x - root`
    pub fn linear_from_root(root: &FieldElement) -> Self {
        let tower = root.tower().clone();
        Self::new(&tower, vec![-root, FieldElement::one(&tower)])
    }

    /// `x^k - c`
    pub fn binomial(k: usize, c: &FieldElement) -> Self {
        let tower = c.tower().clone();
        let mut coeffs = vec![FieldElement::zero(&tower); k + 1];
        coeffs[0] = -c;
        coeffs[k] = FieldElement::one(&tower);
        Self::new(&tower, coeffs)
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| FieldElement::zero(&self.tower))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(FieldElement::is_one)
    }

    pub fn has_rational_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_rational().is_some())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Self::new(&self.tower, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect();
        Self::new(&self.tower, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.tower);
        }
        let mut out = vec![FieldElement::zero(&self.tower); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(&self.tower, out)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(&self.tower, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.tower, self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(FieldElement::one(&self.tower));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&Rational::from_integer(BigInt::from(i))))
            .collect();
        Self::new(&self.tower, coeffs)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(&self.tower);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self), FieldError> {
        let Some(db) = divisor.degree() else {
            return Err(FieldError::DivisionByZero);
        };
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Self::zero(&self.tower), self.clone()));
        }
        let lc_inv = divisor.leading().unwrap().try_invert()?;
        let mut quot = vec![FieldElement::zero(&self.tower); rem.len() - db];
        while rem.len() > db {
            let k = rem.len() - 1 - db;
            let c = rem.last().unwrap() * &lc_inv;
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&c * b);
                }
            }
            quot[k] = c;
            rem.pop();
        }
        Ok((Self::new(&self.tower, quot), Self::new(&self.tower, rem)))
    }

    /// Exact division; fails with `Unresolved` when a remainder is left.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, FieldError> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(FieldError::Unresolved(format!("{} is not divisible by {}", self, divisor)));
        }
        Ok(q)
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, FieldError> {
        Ok(self.divrem(divisor)?.1)
    }

    pub fn monic(&self) -> Result<Self, FieldError> {
        match self.leading() {
            None => Ok(self.clone()),
            Some(lc) if lc.is_one() => Ok(self.clone()),
            Some(lc) => Ok(self.scale(&lc.try_invert()?)),
        }
    }

    /// Monic gcd by the Euclidean algorithm; zero only when both are zero.
    pub fn gcd(&self, other: &Self) -> Result<Self, FieldError> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `f / gcd(f, f')`, monic.
    pub fn squarefree_part(&self) -> Result<Self, FieldError> {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative())?;
        self.div_exact(&g)?.monic()
    }

    pub fn is_squarefree(&self) -> Result<bool, FieldError> {
        Ok(self.gcd(&self.derivative())?.degree() == Some(0))
    }

    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero(&self.tower);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// `x^e mod m`.
    pub fn x_pow_mod(e: u64, m: &Self) -> Result<Self, FieldError> {
        let tower = m.tower.clone();
        let x = Self::new(&tower, vec![FieldElement::zero(&tower), FieldElement::one(&tower)]);
        let mut base = x.rem(m)?;
        let mut acc = Self::constant(FieldElement::one(&tower)).rem(m)?;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m)?;
            }
        }
        Ok(acc)
    }

    pub fn map_coeffs(&self, tower: &FieldTower, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        Self::new(tower, self.coeffs.iter().map(f).collect())
    }

    pub fn lift_to(&self, tower: &FieldTower) -> Self {
        self.map_coeffs(tower, |c| c.lift_to(tower))
    }

    pub(crate) fn raw_coords(&self) -> Vec<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.coords().to_vec()).collect()
    }

    pub fn format_in(&self, var: &str) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            push_term(&mut out, &c.to_string(), &mono);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("x"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({})", self)
    }
}
