//! Transforms preserving every line through a point and carrying one curve
//! onto another.
//!
//! After moving the center to (0:1:0), a member of the family acts as
//! `Y -> pX + qY + rZ` with `X`, `Z` fixed. Writing the target as
//! `sum_j g_j(X, Z) Y^j` and the source as `sum_k s_k(X, Z) Y^k`, the
//! pulled-back target has `Y^k` coefficient
//! `q^k sum_{j >= k} C(j, k) g_j l^(j-k)` with `l = pX + rZ`. The top layer
//! fixes the scalar up to `q^J`, the next one is linear in `(p, r, q)`, and
//! every lower layer is then a polynomial identity in a single parameter.

use std::collections::BTreeMap;

use crate::field::{Extender, FieldElement, UniPoly};
use crate::geom::{fiber_family, ProjPoint, ProjTransform};
use crate::poly::{HomPoly, MPoly};
use crate::sg::system::solve_system;
use crate::{with_splits, Error, Result};

/// A transform `t` with `target(t v) = scalar * source(v)`, i.e. mapping the
/// source curve onto the target curve.
#[derive(Clone, Debug)]
pub struct FiberTransform {
    pub transform: ProjTransform,
    pub scalar: FieldElement,
}

pub(crate) fn lift_point(ext: &Extender, p: &ProjPoint) -> ProjPoint {
    p.map(|c| ext.lift(c))
}

pub(crate) fn lift_form(ext: &Extender, f: &HomPoly) -> HomPoly {
    f.map_coeffs(ext.tower(), |c| ext.lift(c))
}

pub(crate) fn lift_transform(ext: &Extender, t: &ProjTransform) -> ProjTransform {
    t.map(|c| ext.lift(c))
}

/// All transforms fixing each line through `p` that map `source` onto
/// `target`, in the tower of the returned elements (the extender's final
/// tower). Fails with `PositiveDimensional` if there are infinitely many.
pub fn solve_fiber_transforms(
    ext: &mut Extender,
    p: &ProjPoint,
    source: &HomPoly,
    target: &HomPoly,
) -> Result<Vec<FiberTransform>> {
    if source.degree() != target.degree() {
        return Err(Error::MixedDegrees(source.degree(), target.degree()));
    }
    let found = with_splits(ext, |ext| solve_once(ext, p, source, target))?;
    let mut out = Vec::with_capacity(found.len());
    for f in found {
        out.push(FiberTransform { transform: lift_transform(ext, &f.transform), scalar: ext.lift(&f.scalar) });
    }
    out.sort_by(|a, b| cmp_transforms(&a.transform, &b.transform));
    Ok(out)
}

pub(crate) fn cmp_transforms(a: &ProjTransform, b: &ProjTransform) -> std::cmp::Ordering {
    a.matrix()
        .iter()
        .flatten()
        .zip(b.matrix().iter().flatten())
        .map(|(x, y)| x.canonical_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// Splits a form into its coefficients with respect to Y, as forms in X, Z.
fn y_layers(f: &HomPoly) -> Vec<MPoly> {
    f.poly().coeffs_in(1)
}

fn ratio(a: &MPoly, b: &MPoly) -> Result<Option<FieldElement>> {
    let Some((e, c)) = b.leading() else {
        return Ok(if a.is_zero_checked()? { Some(FieldElement::one(a.tower())) } else { None });
    };
    let r = a.coeff(e).try_div(c)?;
    Ok(if a.sub(&b.scale(&r)).is_zero_checked()? { Some(r) } else { None })
}

fn binom(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * i64::from(n - i) / i64::from(i + 1))
}

/// Solutions of an affine system in three unknowns: a particular solution
/// and, when the solution set is a line, its direction.
type AffineLine = (Vec<FieldElement>, Option<Vec<FieldElement>>);

fn solve_affine3(rows: Vec<[FieldElement; 3]>, rhs: Vec<FieldElement>) -> Result<Option<AffineLine>> {
    let tower = rhs[0].tower().clone();
    let mut m: Vec<Vec<FieldElement>> =
        rows.into_iter().zip(rhs).map(|(r, b)| r.into_iter().chain(std::iter::once(b)).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..3 {
        let mut found = None;
        for (i, r) in m.iter().enumerate().skip(row) {
            if !r[col].is_zero_checked()? {
                found = Some(i);
                break;
            }
        }
        let Some(i) = found else { continue };
        m.swap(row, i);
        let inv = m[row][col].try_invert()?;
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..4 {
                    let v = &m[i][j] - &(&f * &m[row][j]);
                    m[i][j] = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    for r in &m[row..] {
        if !r[3].is_zero_checked()? {
            return Ok(None);
        }
    }
    let mut particular = vec![FieldElement::zero(&tower); 3];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = m[i][3].clone();
    }
    let free: Vec<usize> = (0..3).filter(|c| !pivots.contains(c)).collect();
    match free.as_slice() {
        [] => Ok(Some((particular, None))),
        [f] => {
            let mut dir = vec![FieldElement::zero(&tower); 3];
            dir[*f] = FieldElement::one(&tower);
            for (i, &c) in pivots.iter().enumerate() {
                dir[c] = -&m[i][*f];
            }
            Ok(Some((particular, Some(dir))))
        }
        _ => Err(Error::PositiveDimensional),
    }
}

fn solve_once(ext: &mut Extender, p: &ProjPoint, source: &HomPoly, target: &HomPoly) -> Result<Vec<FiberTransform>> {
    let p = lift_point(ext, p);
    let source = lift_form(ext, source);
    let target = lift_form(ext, target);
    let tower = ext.tower().clone();
    let fam = fiber_family(&p)?;
    let back = fam.standardizer().inverse();
    let g = y_layers(&target.pullback(&back));
    let s = y_layers(&source.pullback(&back));
    if g.len() != s.len() {
        return Ok(Vec::new());
    }
    let top = (g.len() - 1) as u32;
    if top == 0 {
        // Both are cones over the center: every member works or none does.
        return if ratio(&g[0], &s[0])?.is_some() { Err(Error::PositiveDimensional) } else { Ok(Vec::new()) };
    }
    let Some(rho) = ratio(&g[top as usize], &s[top as usize])? else {
        return Ok(Vec::new());
    };

    // top * g_top * (pX + rZ) - q * rho * s_{top-1} + g_{top-1} = 0
    let d = target.degree();
    let width = d - top + 1;
    let gt = &g[top as usize];
    let a = s[top as usize - 1].scale(&rho);
    let b = &g[top as usize - 1];
    let kt = FieldElement::from_int(&tower, i64::from(top));
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..=width {
        let k = width - i;
        let gx = if i >= 1 { gt.coeff(&[i - 1, 0, k]) } else { FieldElement::zero(&tower) };
        let gz = if k >= 1 { gt.coeff(&[i, 0, k - 1]) } else { FieldElement::zero(&tower) };
        rows.push([&kt * &gx, &kt * &gz, -&a.coeff(&[i, 0, k])]);
        rhs.push(-&b.coeff(&[i, 0, k]));
    }
    let Some((base, dir)) = solve_affine3(rows, rhs)? else {
        return Ok(Vec::new());
    };

    // Remaining layers, as polynomials in (X, t, Z) with t the line parameter.
    let n = 3;
    let param = |i: usize| {
        let c = MPoly::constant(&base[i], n);
        match &dir {
            Some(v) => c.add(&MPoly::var(&tower, n, 1).scale(&v[i])),
            None => c,
        }
    };
    let (pp, rr, qq) = (param(0), param(1), param(2));
    let ell = MPoly::var(&tower, n, 0).mul(&pp).add(&MPoly::var(&tower, n, 2).mul(&rr));
    let mut conditions: BTreeMap<(usize, u32, u32), Vec<FieldElement>> = BTreeMap::new();
    for k in 0..top.saturating_sub(1) {
        let mut e = s[k as usize].scale(&-&rho).mul(&qq.pow(top - k));
        for j in k..=top {
            let term = g[j as usize].mul(&ell.pow(j - k)).scale(&FieldElement::from_int(&tower, binom(j, k)));
            e = e.add(&term);
        }
        for (exp, c) in e.terms() {
            let slot = conditions.entry((k as usize, exp[0], exp[2])).or_default();
            let t = exp[1] as usize;
            if slot.len() <= t {
                slot.resize(t + 1, FieldElement::zero(&tower));
            }
            slot[t] = c.clone();
        }
    }

    let mut params: Vec<FieldElement> = Vec::new();
    match &dir {
        None => {
            for c in conditions.values() {
                if !c[0].is_zero_checked()? {
                    return Ok(Vec::new());
                }
            }
            params.push(FieldElement::zero(&tower));
        }
        Some(_) => {
            let mut gcd = UniPoly::zero(&tower);
            for c in conditions.values() {
                gcd = gcd.gcd(&UniPoly::new(&tower, c.clone()))?;
            }
            if gcd.is_zero() {
                return Err(Error::PositiveDimensional);
            }
            if gcd.degree() == Some(0) {
                return Ok(Vec::new());
            }
            params = ext.split(&gcd)?;
        }
    }

    let mut out = Vec::new();
    for t in params {
        let t = ext.lift(&t);
        let at = |i: usize| {
            let b = ext.lift(&base[i]);
            match &dir {
                Some(v) => &b + &(&ext.lift(&v[i]) * &t),
                None => b,
            }
        };
        let (pv, rv, qv) = (at(0), at(1), at(2));
        if qv.is_zero_checked()? {
            continue;
        }
        let fam = fiber_family(&lift_point(ext, &p))?;
        let transform = fam.instantiate(&pv, &qv, &rv)?;
        let src = lift_form(ext, &source);
        let Some(scalar) = lift_form(ext, &target).pullback(&transform).proportional(&src)? else {
            return Err(Error::Invalid(format!("fiber solver produced a non-solution {transform}")));
        };
        out.push(FiberTransform { transform, scalar });
    }
    Ok(out)
}

/// Pairs `(s1, s2)` with `s_i` preserving the lines through `p_i`, each
/// fixing the other center, and `s1^-1(C) = s2^-1(C)`.
pub fn solve_two_center_transforms(
    ext: &mut Extender,
    p1: &ProjPoint,
    p2: &ProjPoint,
    c: &HomPoly,
) -> Result<Vec<(ProjTransform, ProjTransform)>> {
    // Variables: X, Y, Z, then p1, q1, r1, p2, q2, r2, lambda.
    const N: usize = 10;
    let tower = ext.tower().clone();
    let p1 = lift_point(ext, p1);
    let p2 = lift_point(ext, p2);
    let c = lift_form(ext, c);
    let f1 = fiber_family(&p1)?;
    let f2 = fiber_family(&p2)?;
    let s1 = f1.symbolic(N, [3, 4, 5]);
    let s2 = f2.symbolic(N, [6, 7, 8]);
    let lambda = MPoly::var(&tower, N, 9);

    let mut eqs: Vec<MPoly> = Vec::new();
    for (s, other) in [(&s1, &p2), (&s2, &p1)] {
        let v = other.coords().clone().map(|e| MPoly::constant(&e, N));
        let image: Vec<MPoly> =
            (0..3).map(|i| (0..3).fold(MPoly::zero(&tower, N), |acc, j| acc.add(&s[i][j].mul(&v[j])))).collect();
        for (i, j) in [(1, 2), (2, 0), (0, 1)] {
            eqs.push(image[i].mul(&v[j]).sub(&image[j].mul(&v[i])));
        }
    }
    let widen = |p: &MPoly| {
        MPoly::from_terms(&tower, N, p.terms().map(|(e, k)| {
            let mut e = e.clone();
            e.resize(N, 0);
            (e, k.clone())
        }))
    };
    let wide = widen(c.poly());
    let rows = |s: &[[MPoly; 3]; 3]| -> Vec<MPoly> {
        (0..3)
            .map(|i| (0..3).fold(MPoly::zero(&tower, N), |acc, j| acc.add(&s[i][j].mul(&MPoly::var(&tower, N, j)))))
            .collect()
    };
    let mut subs1 = rows(&s1);
    let mut subs2 = rows(&s2);
    for k in 3..N {
        subs1.push(MPoly::var(&tower, N, k));
        subs2.push(MPoly::var(&tower, N, k));
    }
    let diff = wide.compose(&subs1).sub(&wide.compose(&subs2).mul(&lambda));
    let mut by_monomial: BTreeMap<Vec<u32>, Vec<(Vec<u32>, FieldElement)>> = BTreeMap::new();
    for (e, k) in diff.terms() {
        by_monomial.entry(e[..3].to_vec()).or_default().push((e[3..].to_vec(), k.clone()));
    }
    for terms in by_monomial.into_values() {
        eqs.push(MPoly::from_terms(&tower, N - 3, terms));
    }
    let narrow = |p: &MPoly| {
        MPoly::from_terms(&tower, N - 3, p.terms().map(|(e, k)| (e[3..].to_vec(), k.clone())))
    };
    let eqs: Vec<MPoly> = eqs.iter().map(|e| if e.nvars() == N { narrow(e) } else { e.clone() }).collect();
    let nonzero: Vec<MPoly> = [1, 4, 6].iter().map(|&i| MPoly::var(&tower, N - 3, i)).collect();

    let sols = solve_system(ext, &eqs, &nonzero)?;
    let mut out = Vec::new();
    for s in sols {
        let f1 = fiber_family(&lift_point(ext, &p1))?;
        let f2 = fiber_family(&lift_point(ext, &p2))?;
        let t1 = f1.instantiate(&s[0], &s[1], &s[2])?;
        let t2 = f2.instantiate(&s[3], &s[4], &s[5])?;
        out.push((t1, t2));
    }
    out.sort_by(|a, b| cmp_transforms(&a.0, &b.0).then_with(|| cmp_transforms(&a.1, &b.1)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{cyclotomic_field, FieldTower};

    fn q() -> FieldTower {
        FieldTower::rationals()
    }

    fn form(t: &FieldTower, terms: &[(i64, [u32; 3])]) -> HomPoly {
        HomPoly::from_int_terms(t, terms).unwrap()
    }

    fn flex_quartic(t: &FieldTower) -> HomPoly {
        form(t, &[(1, [1, 3, 0]), (1, [4, 0, 0]), (1, [0, 0, 4])])
    }

    fn fermat(t: &FieldTower, d: u32) -> HomPoly {
        form(t, &[(1, [d, 0, 0]), (1, [0, d, 0]), (1, [0, 0, d])])
    }

    fn check(ext: &Extender, sols: &[FiberTransform], p: &ProjPoint, source: &HomPoly, target: &HomPoly) {
        for s in sols {
            let t = &s.transform;
            assert!(crate::geom::preserves_lines_through(t, &lift_point(ext, p)).unwrap());
            let lhs = lift_form(ext, target).pullback(t);
            assert_eq!(lhs.poly(), &lift_form(ext, source).poly().scale(&s.scalar));
        }
    }

    #[test]
    fn fermat_cubic_center_at_origin() {
        let c = fermat(&q(), 3);
        let p = ProjPoint::from_ints(&q(), 0, 0, 1).unwrap();
        let mut ext = Extender::new(&q());
        let sols = solve_fiber_transforms(&mut ext, &p, &c, &c).unwrap();
        assert_eq!(sols.len(), 3);
        check(&ext, &sols, &p, &c, &c);
        for s in &sols {
            let m = s.transform.normalized().unwrap();
            let w = m.entry(2, 2).clone();
            assert!(w.pow(3).is_one());
            assert!(m.same_as(&ProjTransform::diag(FieldElement::one(w.tower()), FieldElement::one(w.tower()), w.clone()).unwrap()).unwrap());
        }
    }

    #[test]
    fn flex_quartic_has_three_automorphisms_over_the_inner_point() {
        let c = flex_quartic(&q());
        let p = ProjPoint::from_ints(&q(), 0, 1, 0).unwrap();
        let mut ext = Extender::new(&q());
        let sols = solve_fiber_transforms(&mut ext, &p, &c, &c).unwrap();
        assert_eq!(sols.len(), 3);
        check(&ext, &sols, &p, &c, &c);
    }

    #[test]
    fn quartic_pair_over_gaussian_rationals() {
        // Target X Y^3 + X^4 + Z^4, source its pullback along (X, (i-1)X + iY, Z).
        let t = cyclotomic_field(4);
        let i = FieldElement::generator(&t, 0);
        let one = FieldElement::one(&t);
        let zero = FieldElement::zero(&t);
        let phi = ProjTransform::new([
            [one.clone(), zero.clone(), zero.clone()],
            [&i - &one, i.clone(), zero.clone()],
            [zero.clone(), zero, one],
        ])
        .unwrap();
        let target = flex_quartic(&t);
        let source = target.pullback(&phi);
        let p = ProjPoint::from_ints(&t, 0, 1, 0).unwrap();
        let mut ext = Extender::new(&t);
        let sols = solve_fiber_transforms(&mut ext, &p, &source, &target).unwrap();
        assert_eq!(sols.len(), 3);
        check(&ext, &sols, &p, &source, &target);
        let phi = phi.map(|e| ext.lift(e));
        assert!(sols.iter().any(|s| s.transform.same_as(&phi).unwrap()));
    }

    #[test]
    fn diagonal_twist_of_fermat_needs_sixteenth_roots() {
        let t = cyclotomic_field(4);
        let i = FieldElement::generator(&t, 0);
        let one = FieldElement::one(&t);
        let twisted = HomPoly::new(MPoly::from_terms(
            &t,
            3,
            [(vec![4, 0, 0], one.clone()), (vec![0, 4, 0], i), (vec![0, 0, 4], one.clone())],
        ))
        .unwrap();
        let f = fermat(&t, 4);
        let p = ProjPoint::from_ints(&t, 0, 1, 0).unwrap();
        let mut ext = Extender::new(&t);
        let sols = solve_fiber_transforms(&mut ext, &p, &twisted, &f).unwrap();
        assert_eq!(sols.len(), 4);
        check(&ext, &sols, &p, &twisted, &f);
        assert_eq!(ext.tower().cyclotomic_order(), 16);
    }

    #[test]
    fn point_off_both_with_no_transform() {
        let c1 = fermat(&q(), 3);
        let c2 = form(&q(), &[(1, [3, 0, 0]), (2, [0, 3, 0]), (1, [0, 0, 3]), (1, [1, 1, 1])]);
        let p = ProjPoint::from_ints(&q(), 1, 1, 1).unwrap();
        let mut ext = Extender::new(&q());
        assert!(solve_fiber_transforms(&mut ext, &p, &c2, &c1).unwrap().is_empty());
    }

    #[test]
    fn conic_outer_point_has_two_transforms() {
        let c1 = form(&q(), &[(1, [2, 0, 0]), (1, [0, 2, 0]), (-1, [0, 0, 2])]);
        let c2 = form(&q(), &[(1, [2, 0, 0]), (1, [0, 2, 0]), (-4, [0, 1, 1]), (3, [0, 0, 2])]);
        let p = ProjPoint::from_ints(&q(), 0, 1, 0).unwrap();
        let mut ext = Extender::new(&q());
        let sols = solve_fiber_transforms(&mut ext, &p, &c2, &c1).unwrap();
        assert_eq!(sols.len(), 2);
        check(&ext, &sols, &p, &c2, &c1);
    }

    #[test]
    fn two_center_pairs_for_the_flex_quartic() {
        let c = flex_quartic(&q());
        let p1 = ProjPoint::from_ints(&q(), 0, 1, 0).unwrap();
        let p2 = ProjPoint::from_ints(&q(), -1, 1, 0).unwrap();
        let mut ext = Extender::new(&q());
        let pairs = solve_two_center_transforms(&mut ext, &p1, &p2, &c).unwrap();
        assert_eq!(pairs.len(), 4);
        for (s1, s2) in &pairs {
            let tw = s1.tower();
            let a = s1.entry(1, 1);
            assert!(a.pow(4).is_one());
            assert!(s1.entry(1, 0) == &(a - &FieldElement::one(tw)));
            let cc = s2.entry(0, 0);
            assert_eq!(cc, &a.pow(3));
            let c = lift_form(&ext, &c);
            assert!(c.pullback(s1).same_curve(&c.pullback(s2)).unwrap());
        }
    }
}
