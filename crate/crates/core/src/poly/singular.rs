//! Smoothness test for plane curves.
//!
//! A curve is singular exactly where its three partial derivatives vanish
//! together. The affine part of that locus is projected to the X axis by
//! resultants; its fibers are then examined over `K[x]/(G)` for the
//! squarefree eliminant `G`, splitting `G` whenever a gcd computation runs
//! into a zero divisor.

use crate::field::{adjoin, FieldElement, FieldError, FieldTower, UniPoly};
use crate::poly::{resultant, HomPoly, MPoly};
use crate::Result;

const FIBER_LEVEL: &str = "_xfiber";

/// True when the curve has no singular point over the algebraic closure.
pub fn is_nonsingular(c: &HomPoly) -> Result<bool> {
    Ok(singular_witness(c)?.is_none())
}

/// Where a singular point was found, in words; `None` for smooth curves.
pub fn singular_witness(c: &HomPoly) -> Result<Option<String>> {
    let d = c.degree();
    if d <= 1 {
        return Ok(None);
    }
    let parts = c.partials();
    if parts.iter().any(|p| p.is_zero()) {
        return Ok(Some("the curve is a union of lines through a point".into()));
    }
    if let Some(w) = singular_at_infinity(&parts)? {
        return Ok(Some(w));
    }
    // Dehomogenize at Z = 1 and order the partials so the first has a
    // constant leading coefficient in y.
    let tower = c.tower().clone();
    let affine: Vec<MPoly> = parts.iter().map(|p| to_affine(p, &tower)).collect();
    let top = d - 1;
    let Some(lead) = (0..3).find(|&i| !affine[i].coeff(&[0, top]).is_zero()) else {
        return Ok(Some("singular at (0:1:0)".into()));
    };
    let g1 = affine[lead].clone();
    let others: Vec<&MPoly> = (0..3).filter(|&i| i != lead).map(|i| &affine[i]).collect();

    // Every common zero has an x-coordinate among the roots of each
    // Res_y(g1, g2 + k g3). If all of them vanish for d + 1 values of k,
    // some factor of g1 divides both g2 and g3.
    let mut eliminant: Option<UniPoly> = None;
    let mut found = 0;
    for k in 0..=(d as i64) {
        let comb = others[0].add(&others[1].scale(&FieldElement::from_int(&tower, k)));
        let r = resultant(&g1, &comb, 1);
        if r.is_zero_checked()? {
            continue;
        }
        let r = r.to_univariate(0).expect("resultant in y leaves x only");
        eliminant = Some(match eliminant {
            None => r,
            Some(e) => e.gcd(&r)?,
        });
        found += 1;
        if found == 2 {
            break;
        }
    }
    let Some(g) = eliminant else {
        return Ok(Some("the partial derivatives share a component".into()));
    };
    let g = g.squarefree_part()?;
    let fibers: Vec<MPoly> = std::iter::once(g1).chain(others.into_iter().cloned()).collect();
    Ok(affine_fiber_witness(&g, &fibers)?.map(|x| format!("singular above x = root of {x}")))
}

fn to_affine(p: &MPoly, tower: &FieldTower) -> MPoly {
    let mut out = MPoly::zero(tower, 2);
    for (e, c) in p.terms() {
        out = out.add(&MPoly::monomial(c, vec![e[0], e[1]]));
    }
    out
}

/// Common zeros on the line Z = 0.
fn singular_at_infinity(parts: &[MPoly; 3]) -> Result<Option<String>> {
    let restricted: Vec<MPoly> = parts.iter().map(|p| p.substitute(2, &FieldElement::zero(p.tower()))).collect();
    if restricted.iter().all(|p| p.is_zero()) {
        return Ok(Some("every point of Z = 0 is singular".into()));
    }
    let tower = parts[0].tower();
    let e1 = [FieldElement::one(tower), FieldElement::zero(tower), FieldElement::zero(tower)];
    if restricted.iter().all(|p| p.eval(&e1).is_zero()) {
        return Ok(Some("singular at (1:0:0)".into()));
    }
    let mut g = UniPoly::zero(tower);
    for p in &restricted {
        let u = p.substitute(1, &FieldElement::one(tower)).to_univariate(0).expect("binary form in X");
        g = g.gcd(&u)?;
    }
    if g.degree().unwrap_or(0) > 0 {
        return Ok(Some(format!("singular at (x:1:0) with x a root of {g}")));
    }
    Ok(None)
}

/// Looks for a root `a` of the squarefree `g` at which the polynomials in
/// `fibers` (in x, y) have a common root in y.
fn affine_fiber_witness(g: &UniPoly, fibers: &[MPoly]) -> Result<Option<UniPoly>> {
    let g = g.monic()?;
    match g.degree() {
        None | Some(0) => return Ok(None),
        Some(1) => {
            let a = -&g.coeff(0);
            return Ok(fiber_gcd(fibers, &a)?.then_some(g));
        }
        _ => {}
    }
    let ext = adjoin(g.tower(), FIBER_LEVEL, &g)?;
    let a = FieldElement::generator(&ext, ext.depth() - 1);
    match fiber_gcd(fibers, &a) {
        Ok(true) => Ok(Some(g)),
        Ok(false) => Ok(None),
        Err(FieldError::ZeroDivisor(info)) if info.level.name() == FIBER_LEVEL => {
            let factor = info.factor_poly();
            let cofactor = g.div_exact(&factor)?;
            if let Some(w) = affine_fiber_witness(&factor, fibers)? {
                return Ok(Some(w));
            }
            affine_fiber_witness(&cofactor, fibers)
        }
        Err(e) => Err(e.into()),
    }
}

/// True when the fibers over `x = a` share a root in y.
fn fiber_gcd(fibers: &[MPoly], a: &FieldElement) -> Result<bool, FieldError> {
    let mut g = UniPoly::zero(a.tower());
    for f in fibers {
        let u = f.substitute(0, a).to_univariate(1).expect("only y is left");
        g = g.gcd(&u)?;
    }
    Ok(g.degree().unwrap_or(0) > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::cyclotomic_field;
    use crate::geom::ProjTransform;

    fn q() -> FieldTower {
        FieldTower::rationals()
    }

    fn form(terms: &[(i64, [u32; 3])]) -> HomPoly {
        HomPoly::from_int_terms(&q(), terms).unwrap()
    }

    #[test]
    fn fermat_curves_are_smooth() {
        for d in 1..=6 {
            let f = form(&[(1, [d, 0, 0]), (1, [0, d, 0]), (1, [0, 0, d])]);
            assert!(is_nonsingular(&f).unwrap(), "degree {d}");
        }
    }

    #[test]
    fn quartic_with_flex_line_is_smooth() {
        // F = XY^3 + X^4 + Z^4: F_Z = 4Z^3 forces Z = 0, then F_Y = 3XY^2
        // and F_X = Y^3 + 4X^3 only vanish together at X = Y = 0.
        assert!(is_nonsingular(&form(&[(1, [1, 3, 0]), (1, [4, 0, 0]), (1, [0, 0, 4])])).unwrap());
    }

    #[test]
    fn obvious_singularities() {
        assert!(!is_nonsingular(&form(&[(1, [2, 1, 0])])).unwrap());
        assert!(!is_nonsingular(&form(&[(1, [1, 1, 0])])).unwrap());
        // Node at the origin: Y^2 Z - X^3 - X^2 Z.
        assert!(!is_nonsingular(&form(&[(1, [0, 2, 1]), (-1, [3, 0, 0]), (-1, [2, 0, 1])])).unwrap());
        // Cusp at (0:0:1).
        assert!(!is_nonsingular(&form(&[(1, [2, 0, 1]), (-1, [0, 3, 0])])).unwrap());
    }

    #[test]
    fn singular_points_at_infinity() {
        // Y^2 Z = X^3 has a cusp at (0:0:1); swapping Y and Z moves it to (0:1:0).
        assert!(!is_nonsingular(&form(&[(1, [0, 1, 2]), (-1, [3, 0, 0])])).unwrap());
        // Swapping X and Z moves the node to (1:0:0).
        assert!(!is_nonsingular(&form(&[(1, [1, 2, 0]), (-1, [0, 0, 3]), (-1, [1, 0, 2])])).unwrap());
    }

    #[test]
    fn conjugate_singular_points_are_found() {
        // (X^2 + Y^2 + Z^2)(X^2 + 2Y^2 + 3Z^2) is singular where the conics
        // meet: Y^2 = -2 Z^2 and X^2 = Z^2, none of which is rational.
        let a = form(&[(1, [2, 0, 0]), (1, [0, 2, 0]), (1, [0, 0, 2])]);
        let b = form(&[(1, [2, 0, 0]), (2, [0, 2, 0]), (3, [0, 0, 2])]);
        assert!(is_nonsingular(&a).unwrap());
        assert!(!is_nonsingular(&a.mul(&b)).unwrap());
    }

    #[test]
    fn smoothness_is_invariant_under_coordinate_changes() {
        let t = ProjTransform::from_ints(&q(), [[2, 1, -1], [0, 1, 3], [1, -2, 1]]).unwrap();
        let smooth = form(&[(1, [4, 0, 0]), (1, [0, 4, 0]), (1, [0, 0, 4])]);
        assert!(is_nonsingular(&smooth.pullback(&t)).unwrap());
        let nodal = form(&[(1, [0, 2, 1]), (-1, [3, 0, 0]), (-1, [2, 0, 1])]);
        assert!(!is_nonsingular(&nodal.pullback(&t)).unwrap());
    }

    #[test]
    fn works_over_extensions() {
        let t = cyclotomic_field(4);
        let i = FieldElement::generator(&t, 0);
        let f = HomPoly::new(MPoly::from_terms(
            &t,
            3,
            [(vec![4, 0, 0], FieldElement::one(&t)), (vec![0, 4, 0], i), (vec![0, 0, 4], FieldElement::one(&t))],
        ))
        .unwrap();
        assert!(is_nonsingular(&f).unwrap());
    }
}
