use std::fmt;

use crate::field::{FieldElement, FieldTower};
use crate::geom::{ProjPoint, ProjTransform};
use crate::poly::MPoly;
use crate::{Error, Result};

pub const VAR_NAMES: [&str; 3] = ["X", "Y", "Z"];

/// A nonzero homogeneous form in X, Y, Z.
#[derive(Clone, PartialEq, Eq)]
pub struct HomPoly {
    poly: MPoly,
    degree: u32,
}

impl HomPoly {
    pub fn new(poly: MPoly) -> Result<Self> {
        assert_eq!(poly.nvars(), 3, "HomPoly: forms are in three variables");
        let degree = poly.total_degree().ok_or(Error::ZeroVector)?;
        if poly.terms().any(|(e, _)| e.iter().sum::<u32>() != degree) {
            return Err(Error::NotHomogeneous);
        }
        Ok(HomPoly { poly, degree })
    }

    /// Builds a form from `(coefficient, [i, j, k])` pairs meaning `c X^i Y^j Z^k`.
    pub fn from_int_terms(tower: &FieldTower, terms: &[(i64, [u32; 3])]) -> Result<Self> {
        Self::new(MPoly::from_terms(
            tower,
            3,
            terms.iter().map(|(c, e)| (e.to_vec(), FieldElement::from_int(tower, *c))),
        ))
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn tower(&self) -> &FieldTower {
        self.poly.tower()
    }

    pub fn coeff(&self, i: u32, j: u32, k: u32) -> FieldElement {
        self.poly.coeff(&[i, j, k])
    }

    pub fn lift_to(&self, tower: &FieldTower) -> Self {
        HomPoly { poly: self.poly.lift_to(tower), degree: self.degree }
    }

    /// Applies a coefficient map that is a field embedding.
    pub fn map_coeffs(&self, tower: &FieldTower, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        HomPoly { poly: self.poly.map_coeffs(tower, f), degree: self.degree }
    }

    /// The representative whose last term in descending lexicographic
    /// order (X before Y before Z) has coefficient 1.
    pub fn canonical(&self) -> Result<Self> {
        let (_, c) = self.poly.leading().expect("forms are nonzero");
        Ok(HomPoly { poly: self.poly.scale(&c.try_invert()?), degree: self.degree })
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        Self::new(self.poly.scale(c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        HomPoly { poly: self.poly.mul(&other.poly), degree: self.degree + other.degree }
    }

    /// The three partial derivatives, which may be zero.
    pub fn partials(&self) -> [MPoly; 3] {
        [0, 1, 2].map(|i| self.poly.derivative(i))
    }

    pub fn eval(&self, p: &ProjPoint) -> FieldElement {
        self.poly.eval(p.coords())
    }

    pub fn contains(&self, p: &ProjPoint) -> Result<bool> {
        Ok(self.eval(p).is_zero_checked()?)
    }

    /// `F(T v)`: the curve `T^-1(C)`. Pulling back along `A` and then `B`
    /// equals pulling back along `A B`.
    pub fn pullback(&self, t: &ProjTransform) -> HomPoly {
        let tower = t.tower().clone();
        let m = t.matrix();
        let rows: Vec<MPoly> = (0..3)
            .map(|i| {
                let mut r = MPoly::zero(&tower, 3);
                for j in 0..3 {
                    r = r.add(&MPoly::var(&tower, 3, j).scale(&m[i][j]));
                }
                r
            })
            .collect();
        let poly = self.poly.lift_to(&tower).compose(&rows);
        HomPoly { poly, degree: self.degree }
    }

    /// The scalar `c` with `self = c * other`, if there is one.
    pub fn proportional(&self, other: &HomPoly) -> Result<Option<FieldElement>> {
        if self.degree != other.degree {
            return Ok(None);
        }
        let (e, c) = other.poly.leading().expect("forms are nonzero");
        let ratio = self.poly.coeff(e).try_div(c)?;
        let diff = self.poly.sub(&other.poly.scale(&ratio));
        Ok(if diff.is_zero_checked()? { Some(ratio) } else { None })
    }

    pub fn same_curve(&self, other: &HomPoly) -> Result<bool> {
        Ok(self.proportional(other)?.is_some())
    }

    /// True when `t` maps the curve to itself.
    pub fn is_invariant_under(&self, t: &ProjTransform) -> Result<bool> {
        self.pullback(t).same_curve(&self.lift_to(t.tower()))
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.format_with(&VAR_NAMES))
    }
}

impl fmt::Debug for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomPoly({self})")
    }
}
