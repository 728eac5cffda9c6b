//! Exact arithmetic in towers of simple algebraic extensions of Q.
//!
//! A [`FieldTower`] is grown one level at a time by [`adjoin`]; elements are
//! dense coordinate vectors over Q. Irreducibility of an adjoined modulus is
//! not checked: if a reducible modulus slips in, inversion reports the factor
//! it stumbled on through [`FieldError::ZeroDivisor`] and the
//! [`Extender`] uses it to split the level on the next attempt.

mod element;
mod extend;
mod roots;
mod tower;
mod upoly;

use num_rational::BigRational;
use thiserror::Error;

pub use element::FieldElement;
pub use extend::{with_splitting, Extender, Lifter, TowerMorphism};
pub use roots::{rational_roots, roots_in_tower, roots_of_unity, sqrt_in_tower, unity_order};
pub use tower::{FieldTower, Level, LevelKind};
pub use upoly::UniPoly;

pub(crate) use element::push_term;
pub(crate) use roots::partial_roots;

pub type Rational = BigRational;

/// Raised when inversion hits a nonconstant common factor of an element and
/// the modulus of `level`, which sits on top of `base`.
#[derive(Debug, Clone)]
pub struct ZeroDivisorInfo {
    pub base: FieldTower,
    pub level: Level,
    /// Monic factor of the level's modulus, coefficients over `base`.
    pub factor: Vec<Vec<Rational>>,
}

impl ZeroDivisorInfo {
    pub fn factor_poly(&self) -> UniPoly {
        UniPoly::new(
            &self.base,
            self.factor.iter().map(|c| FieldElement::from_coords(&self.base, c.clone())).collect(),
        )
    }
}

#[derive(Debug, Clone, Error)]
pub enum FieldError {
    #[error("operands belong to different field towers")]
    TowerMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero divisor: modulus of {} over {} has the factor {}", .0.level.name, .0.base, .0.factor_poly().format_in(&.0.level.name))]
    ZeroDivisor(Box<ZeroDivisorInfo>),
    #[error("minimal polynomial is not monic")]
    NotMonic,
    #[error("minimal polynomial {0} is not squarefree")]
    NotSquarefree(String),
    #[error("minimal polynomial must have degree at least 2")]
    DegreeTooLow,
    #[error("generator name {0:?} is already used in the tower")]
    DuplicateName(String),
    #[error("unresolved: {0}")]
    Unresolved(String),
    #[error("polynomial of degree {0} is beyond the radical strategy")]
    DegreeTooHigh(usize),
}

/// Adjoins a root of `minpoly` (monic, squarefree, coefficients in `tower`)
/// as a new top level named `name`.
pub fn adjoin(tower: &FieldTower, name: &str, minpoly: &UniPoly) -> Result<FieldTower, FieldError> {
    let kind = if minpoly.degree() == Some(2) && minpoly.coeff(1).is_zero() {
        LevelKind::Sqrt
    } else {
        LevelKind::Generic
    };
    adjoin_with_kind(tower, name, kind, minpoly)
}

pub(crate) fn adjoin_with_kind(
    tower: &FieldTower,
    name: &str,
    kind: LevelKind,
    minpoly: &UniPoly,
) -> Result<FieldTower, FieldError> {
    if minpoly.tower() != tower {
        return Err(FieldError::TowerMismatch);
    }
    if minpoly.degree().unwrap_or(0) < 2 {
        return Err(FieldError::DegreeTooLow);
    }
    if !minpoly.is_monic() {
        return Err(FieldError::NotMonic);
    }
    if tower.level_index(name).is_some() {
        return Err(FieldError::DuplicateName(name.to_string()));
    }
    if !minpoly.is_squarefree()? {
        return Err(FieldError::NotSquarefree(minpoly.format_in(name)));
    }
    Ok(tower.push_level(Level { name: name.to_string(), kind, minpoly: minpoly.raw_coords() }))
}

/// `Q(zeta_n)`, with the level named `zeta{n}`.
pub fn cyclotomic_field(n: u32) -> FieldTower {
    let q = FieldTower::rationals();
    if n <= 2 {
        return q;
    }
    let phi = cyclotomic_minpoly(n);
    adjoin_with_kind(&q, &format!("zeta{n}"), LevelKind::Cyclotomic(n), &phi)
        .expect("cyclotomic polynomials are monic and squarefree")
}

/// The n-th cyclotomic polynomial over Q, by exact division of `x^n - 1` by
/// the cyclotomic polynomials of the proper divisors of n.
pub fn cyclotomic_minpoly(n: u32) -> UniPoly {
    assert!(n >= 1, "cyclotomic_minpoly: n must be positive");
    let q = FieldTower::rationals();
    let mut f = UniPoly::binomial(n as usize, &FieldElement::one(&q));
    for d in 1..n {
        if n % d == 0 {
            f = f.div_exact(&cyclotomic_minpoly(d)).expect("x^n - 1 is divisible by Phi_d");
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldTower {
        FieldTower::rationals()
    }

    fn euler_phi(n: u32) -> u32 {
        let mut result = n;
        let mut m = n;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                while m % p == 0 {
                    m /= p;
                }
                result -= result / p;
            }
            p += 1;
        }
        if m > 1 {
            result -= result / m;
        }
        result
    }

    #[test]
    fn adjoin_i_squares_to_minus_one() {
        let t = adjoin(&q(), "i", &UniPoly::from_ints(&q(), &[1, 0, 1])).unwrap();
        assert_eq!(t.degree(), 2);
        let i = FieldElement::generator(&t, 0);
        assert_eq!(&i * &i, FieldElement::from_int(&t, -1));
    }

    #[test]
    fn adjoin_cube_root_of_unity() {
        let t = adjoin(&q(), "w", &UniPoly::from_ints(&q(), &[1, 1, 1])).unwrap();
        let w = FieldElement::generator(&t, 0);
        assert!(w.pow(3).is_one());
        assert!(!w.is_one());
        let one = FieldElement::one(&t);
        assert!((&(&one + &w) + &w.pow(2)).is_zero());
    }

    #[test]
    fn adjoin_sqrt3() {
        let t = adjoin(&q(), "s", &UniPoly::from_ints(&q(), &[-3, 0, 1])).unwrap();
        let s = FieldElement::generator(&t, 0);
        assert_eq!(&s * &s, FieldElement::from_int(&t, 3));
        assert_eq!(t.levels()[0].kind(), &LevelKind::Sqrt);
    }

    #[test]
    fn adjoin_rejects_bad_moduli() {
        assert!(matches!(
            adjoin(&q(), "a", &UniPoly::from_ints(&q(), &[1, -2, 1])),
            Err(FieldError::NotSquarefree(_))
        ));
        assert!(matches!(adjoin(&q(), "a", &UniPoly::from_ints(&q(), &[1, 0, 2])), Err(FieldError::NotMonic)));
        assert!(matches!(adjoin(&q(), "a", &UniPoly::from_ints(&q(), &[1, 1])), Err(FieldError::DegreeTooLow)));
    }

    #[test]
    fn zeta4_cubed_times_zeta4() {
        let t = cyclotomic_field(4);
        let z = FieldElement::generator(&t, 0);
        assert!((&z.pow(3) * &z).is_one());
    }

    #[test]
    fn inverses() {
        let half = FieldElement::from_int(&q(), 2).try_invert().unwrap();
        assert_eq!(half, FieldElement::from_frac(&q(), 1, 2));

        let t = cyclotomic_field(4);
        let i = FieldElement::generator(&t, 0);
        let a = &FieldElement::one(&t) + &i;
        let expected = (&FieldElement::one(&t) - &i).scale(&Rational::new(1.into(), 2.into()));
        assert_eq!(a.try_invert().unwrap(), expected);
        assert!(matches!(FieldElement::zero(&t).try_invert(), Err(FieldError::DivisionByZero)));
    }

    #[test]
    fn reducible_modulus_reports_zero_divisor() {
        // Q[x]/(x^2 - 1) is not a field; x - 1 is a zero divisor.
        let t = adjoin(&q(), "x", &UniPoly::from_ints(&q(), &[-1, 0, 1])).unwrap();
        let x = FieldElement::generator(&t, 0);
        let a = &x - &FieldElement::one(&t);
        match a.try_invert() {
            Err(FieldError::ZeroDivisor(info)) => {
                assert_eq!(info.factor_poly(), UniPoly::from_ints(&q(), &[-1, 1]));
                assert_eq!(info.level.name(), "x");
            }
            other => panic!("expected a zero divisor, got {other:?}"),
        }
        assert!(a.is_zero_checked().is_err());
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_minpoly(4), UniPoly::from_ints(&q(), &[1, 0, 1]));
        assert_eq!(cyclotomic_minpoly(3), UniPoly::from_ints(&q(), &[1, 1, 1]));
        assert_eq!(cyclotomic_minpoly(6), UniPoly::from_ints(&q(), &[1, -1, 1]));
        assert_eq!(cyclotomic_minpoly(12), UniPoly::from_ints(&q(), &[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_minpoly_matches_product_oracle() {
        // x^n - 1 is the product of Phi_d over all divisors d of n.
        for n in 1..=30u32 {
            let mut prod = UniPoly::from_ints(&q(), &[1]);
            for d in 1..=n {
                if n % d == 0 {
                    prod = prod.mul(&cyclotomic_minpoly(d));
                }
            }
            assert_eq!(prod, UniPoly::binomial(n as usize, &FieldElement::one(&q())), "n = {n}");
            assert_eq!(cyclotomic_minpoly(n).degree(), Some(euler_phi(n) as usize));
        }
    }

    #[test]
    fn primitive_roots_have_exact_order() {
        for n in 3..=24u32 {
            let t = cyclotomic_field(n);
            let z = FieldElement::generator(&t, 0);
            assert!(z.pow(n as u64).is_one(), "n = {n}");
            for k in 1..n {
                assert!(!z.pow(k as u64).is_one(), "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn declaration_prints_levels() {
        let t = cyclotomic_field(4);
        let t = adjoin(&t, "sqrt3", &UniPoly::from_ints(&t, &[-3, 0, 1])).unwrap();
        assert_eq!(t.declaration(), "Q(zeta4, sqrt3)");
        let c = adjoin(&q(), "c", &UniPoly::from_ints(&q(), &[-2, 0, 0, 1])).unwrap();
        assert_eq!(c.declaration(), "Q(c: c^3 - 2)");
    }
}
