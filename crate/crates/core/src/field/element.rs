use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::tower::{add_assign, is_zero, sub_assign, FieldTower};
use super::{FieldError, Rational};

/// An exact element of a [`FieldTower`].
///
/// Arithmetic operators panic when the operands live in different towers;
/// the `try_*` methods report [`FieldError::TowerMismatch`] instead.
#[derive(Clone)]
pub struct FieldElement {
    tower: FieldTower,
    coords: Vec<Rational>,
}

impl FieldElement {
    pub fn zero(tower: &FieldTower) -> Self {
        FieldElement { tower: tower.clone(), coords: tower.zero_at(tower.depth()) }
    }

    pub fn one(tower: &FieldTower) -> Self {
        FieldElement { tower: tower.clone(), coords: tower.one_at(tower.depth()) }
    }

    pub fn from_rational(tower: &FieldTower, r: Rational) -> Self {
        let mut e = Self::zero(tower);
        e.coords[0] = r;
        e
    }

    pub fn from_int(tower: &FieldTower, n: i64) -> Self {
        Self::from_rational(tower, Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(tower: &FieldTower, n: i64, d: i64) -> Self {
        Self::from_rational(tower, Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// The generator of level `index` (0-based), as an element of the full tower.
    pub fn generator(tower: &FieldTower, index: usize) -> Self {
        let mut e = Self::zero(tower);
        e.coords[tower.len_at(index)] = Rational::one();
        e
    }

    pub(crate) fn from_coords(tower: &FieldTower, coords: Vec<Rational>) -> Self {
        debug_assert_eq!(coords.len(), tower.degree());
        FieldElement { tower: tower.clone(), coords }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.coords)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && is_zero(&self.coords[1..])
    }

    /// Zero test that is safe when a level's modulus might be reducible: a
    /// structurally nonzero element is confirmed to be a unit, and a
    /// [`FieldError::ZeroDivisor`] is raised otherwise.
    pub fn is_zero_checked(&self) -> Result<bool, FieldError> {
        if self.is_zero() {
            return Ok(true);
        }
        if self.as_rational().is_some() {
            return Ok(false);
        }
        self.try_invert().map(|_| false)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if is_zero(&self.coords[1..]) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.tower == other.tower {
            Ok(())
        } else {
            Err(FieldError::TowerMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let mut coords = self.coords.clone();
        add_assign(&mut coords, &other.coords);
        Ok(FieldElement { tower: self.tower.clone(), coords })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let mut coords = self.coords.clone();
        sub_assign(&mut coords, &other.coords);
        Ok(FieldElement { tower: self.tower.clone(), coords })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let coords = self.tower.mul_at(self.tower.depth(), &self.coords, &other.coords);
        Ok(FieldElement { tower: self.tower.clone(), coords })
    }

    /// Multiplicative inverse. Fails with [`FieldError::ZeroDivisor`] when the
    /// extended gcd meets a nontrivial factor of some level's modulus.
    pub fn try_invert(&self) -> Result<Self, FieldError> {
        let coords = self.tower.inv_at(self.tower.depth(), &self.coords)?;
        Ok(FieldElement { tower: self.tower.clone(), coords })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self * &other.try_invert()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        FieldElement { tower: self.tower.clone(), coords: self.coords.iter().map(|c| c * r).collect() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.tower);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Re-reads the element in a taller tower that extends this one.
    pub fn lift_to(&self, tower: &FieldTower) -> Self {
        assert!(tower.extends(&self.tower), "lift_to: target does not extend the source tower");
        let mut coords = self.coords.clone();
        coords.resize(tower.degree(), Rational::zero());
        FieldElement { tower: tower.clone(), coords }
    }

    /// Canonical total order on elements of one tower: lexicographic on the
    /// coordinate vectors.
    pub fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.tower == other.tower
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tower.format_coords(&self.coords))
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.try_add(rhs).expect("tower mismatch in addition")
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.try_sub(rhs).expect("tower mismatch in subtraction")
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.try_mul(rhs).expect("tower mismatch in multiplication")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { tower: self.tower.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Appends `coeff*mono` to a sum being printed, parenthesizing compound
/// coefficients.
pub(crate) fn push_term(out: &mut String, coeff: &str, mono: &str) {
    let compound = coeff[1..].contains(" + ") || coeff[1..].contains(" - ");
    let (neg, body) = if !compound && coeff.starts_with('-') { (true, &coeff[1..]) } else { (false, coeff) };
    let term = if mono.is_empty() {
        if compound {
            format!("({body})")
        } else {
            body.to_string()
        }
    } else if body == "1" {
        mono.to_string()
    } else if compound {
        format!("({body})*{mono}")
    } else {
        format!("{body}*{mono}")
    };
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    out.push_str(&term);
}
