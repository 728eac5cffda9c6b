//! Conics: duality, intersections, tangent lines, and the outer SG points of
//! a pair of nonsingular conics.
//!
//! Outer SG points of a conic pair correspond to lines joining two distinct
//! points of the intersection of the dual conics, so there are 0, 1, 3 or 6
//! of them.

use std::fmt;

use crate::field::{partial_roots, Extender, FieldElement, FieldTower, Rational, UniPoly};
use crate::geom::{adjugate, cross, dot, dual, line_through, ProjLine, ProjPoint, ProjTransform};
use crate::poly::{resultant, HomPoly, MPoly};
use crate::{with_splits, Error, Result};

pub type Matrix = [[FieldElement; 3]; 3];

/// A plane conic together with its symmetric matrix (`form = v^T A v`).
#[derive(Clone, PartialEq, Eq)]
pub struct Conic {
    form: HomPoly,
    matrix: Matrix,
}

fn det3(m: &Matrix) -> FieldElement {
    let c0 = &(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1]);
    let c1 = &(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]);
    let c2 = &(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]);
    &(&(&m[0][0] * &c0) - &(&m[0][1] * &c1)) + &(&m[0][2] * &c2)
}

fn mat_vec(m: &Matrix, v: &[FieldElement; 3]) -> [FieldElement; 3] {
    [0, 1, 2].map(|i| dot(&m[i], v))
}

fn is_zero_vec(v: &[FieldElement; 3]) -> Result<bool> {
    for c in v {
        if !c.is_zero_checked()? {
            return Ok(false);
        }
    }
    Ok(true)
}

impl Conic {
    pub fn new(form: HomPoly) -> Result<Self> {
        if form.degree() != 2 {
            return Err(Error::WrongDegree { expected: 2, got: form.degree() });
        }
        let half = Rational::new(1.into(), 2.into());
        let matrix = [0, 1, 2].map(|i| {
            [0, 1, 2].map(|j| {
                let mut e = [0u32; 3];
                e[i] += 1;
                e[j] += 1;
                let c = form.poly().coeff(&e);
                if i == j {
                    c
                } else {
                    c.scale(&half)
                }
            })
        });
        Ok(Conic { form, matrix })
    }

    pub fn from_matrix(m: Matrix) -> Result<Self> {
        let tower = m[0][0].tower().clone();
        for i in 0..3 {
            for j in 0..i {
                if m[i][j] != m[j][i] {
                    return Err(Error::Invalid("conic matrix must be symmetric".into()));
                }
            }
        }
        let mut terms = Vec::new();
        for i in 0..3 {
            for j in i..3 {
                let mut e = vec![0u32; 3];
                e[i] += 1;
                e[j] += 1;
                let c = if i == j { m[i][i].clone() } else { &m[i][j] + &m[i][j] };
                terms.push((e, c));
            }
        }
        let form = HomPoly::new(MPoly::from_terms(&tower, 3, terms))?;
        Ok(Conic { form, matrix: m })
    }

    pub fn form(&self) -> &HomPoly {
        &self.form
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn tower(&self) -> &FieldTower {
        self.form.tower()
    }

    pub fn det(&self) -> FieldElement {
        det3(&self.matrix)
    }

    pub fn is_nonsingular(&self) -> Result<bool> {
        Ok(!self.det().is_zero_checked()?)
    }

    fn require_nonsingular(&self) -> Result<()> {
        if self.is_nonsingular()? {
            Ok(())
        } else {
            Err(Error::SingularConic)
        }
    }

    /// The representative whose leading coefficient is 1.
    pub fn canonical(&self) -> Result<Conic> {
        Conic::new(self.form.canonical()?)
    }

    /// `u^T A v`.
    pub fn bilinear(&self, u: &[FieldElement; 3], v: &[FieldElement; 3]) -> FieldElement {
        dot(u, &mat_vec(&self.matrix, v))
    }

    pub fn contains(&self, p: &ProjPoint) -> Result<bool> {
        Ok(self.bilinear(p.coords(), p.coords()).is_zero_checked()?)
    }

    /// The polar line `A p`; for a point of the conic it is the tangent there.
    pub fn polar(&self, p: &ProjPoint) -> Result<ProjLine> {
        let [a, b, c] = mat_vec(&self.matrix, p.coords());
        match ProjLine::new(a, b, c) {
            Err(Error::ZeroVector) => Err(Error::SingularConic),
            other => other,
        }
    }

    pub fn lift_to(&self, tower: &FieldTower) -> Conic {
        self.map(tower, |c| c.lift_to(tower))
    }

    pub fn map(&self, tower: &FieldTower, f: impl Fn(&FieldElement) -> FieldElement) -> Conic {
        Conic { form: self.form.map_coeffs(tower, &f), matrix: self.matrix.clone().map(|r| r.map(|e| f(&e))) }
    }

    /// The conic `T^-1(C)`, whose form is `F(T v)`.
    pub fn pullback(&self, t: &ProjTransform) -> Conic {
        Conic::new(self.form.pullback(t)).expect("pullback keeps the degree")
    }

    /// The image `T(C)`.
    pub fn image(&self, t: &ProjTransform) -> Conic {
        self.pullback(&t.inverse())
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form)
    }
}

impl fmt::Debug for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Conic({})", self.form)
    }
}

/// The dual conic, from the adjugate matrix, in canonical form. Its points
/// are the tangent lines of `c`.
pub fn dual_conic(c: &Conic) -> Result<Conic> {
    c.require_nonsingular()?;
    Conic::from_matrix(adjugate(&c.matrix))?.canonical()
}

fn lift_point(ext: &Extender, p: &ProjPoint) -> ProjPoint {
    p.map(|c| ext.lift(c))
}

fn lift_line(ext: &Extender, l: &ProjLine) -> ProjLine {
    l.map(|c| ext.lift(c))
}

fn lift_conic(ext: &Extender, c: &Conic) -> Conic {
    c.map(ext.tower(), |e| ext.lift(e))
}

/// Projective roots `(s:t)` of `a s^2 + b s t + c t^2` with multiplicities,
/// in the extender's tower after whatever adjunction they need.
fn binary_quadratic_roots(
    ext: &mut Extender,
    a: &FieldElement,
    b: &FieldElement,
    c: &FieldElement,
) -> Result<Vec<([FieldElement; 2], u32)>> {
    let tower = ext.tower().clone();
    let (a, b, c) = (ext.lift(a), ext.lift(b), ext.lift(c));
    let one = FieldElement::one(&tower);
    let zero = FieldElement::zero(&tower);
    if a.is_zero_checked()? {
        if b.is_zero_checked()? {
            if c.is_zero_checked()? {
                return Err(Error::Invalid("binary quadratic vanishes identically".into()));
            }
            return Ok(vec![([one, zero], 2)]);
        }
        return Ok(vec![([one, zero], 1), ([-&c, b], 1)]);
    }
    let f = UniPoly::new(&tower, vec![c, b, a]).monic()?;
    let roots = ext.split(&f)?;
    let one = FieldElement::one(ext.tower());
    let mult = if roots.len() == 1 { 2 } else { 1 };
    Ok(roots.into_iter().map(|r| ([r, one.clone()], mult)).collect())
}

/// Two points spanning the line `l`.
fn points_on_line(l: &ProjLine) -> Result<[[FieldElement; 3]; 2]> {
    let tower = l.tower();
    let basis: Vec<[FieldElement; 3]> = (0..3)
        .map(|i| {
            let mut e = [0, 1, 2].map(|_| FieldElement::zero(tower));
            e[i] = FieldElement::one(tower);
            cross(l.coeffs(), &e)
        })
        .collect();
    for i in 0..3 {
        for j in i + 1..3 {
            if !is_zero_vec(&cross(&basis[i], &basis[j]))? {
                return Ok([basis[i].clone(), basis[j].clone()]);
            }
        }
    }
    unreachable!("a line contains two independent points")
}

fn combine(s: &FieldElement, u: &[FieldElement; 3], t: &FieldElement, v: &[FieldElement; 3]) -> Result<ProjPoint> {
    let w = [0, 1, 2].map(|i| &(s * &u[i]) + &(t * &v[i]));
    let [x, y, z] = w;
    ProjPoint::new(x, y, z)
}

/// Points of `l ∩ c` with their multiplicities.
fn line_conic_points(ext: &mut Extender, l: &ProjLine, c: &Conic) -> Result<Vec<(ProjPoint, u32)>> {
    let l = lift_line(ext, l);
    let c = lift_conic(ext, c);
    let [u, v] = points_on_line(&l)?;
    let a = c.bilinear(&u, &u);
    let b = c.bilinear(&u, &v);
    let b = &b + &b;
    let cc = c.bilinear(&v, &v);
    if a.is_zero_checked()? && b.is_zero_checked()? && cc.is_zero_checked()? {
        return Err(Error::SingularConic);
    }
    let roots = binary_quadratic_roots(ext, &a, &b, &cc)?;
    let u = u.map(|e| ext.lift(&e));
    let v = v.map(|e| ext.lift(&e));
    roots.into_iter().map(|([s, t], m)| Ok((combine(&s, &u, &t, &v)?, m))).collect()
}

fn sort_points<T>(items: &mut [(ProjPoint, T)]) {
    items.sort_by(|a, b| a.0.canonical_cmp(&b.0));
}

fn sort_lines(lines: &mut [ProjLine]) {
    lines.sort_by(|a, b| a.canonical_cmp(b));
}

/// The tangent lines to `c` through `p`, inside the extender's tower.
pub fn tangent_lines_from_in(ext: &mut Extender, p: &ProjPoint, c: &Conic) -> Result<Vec<ProjLine>> {
    let p = lift_point(ext, p);
    let c = lift_conic(ext, c);
    c.require_nonsingular()?;
    let polar = c.polar(&p)?;
    if c.contains(&p)? {
        return Ok(vec![polar]);
    }
    let touch = line_conic_points(ext, &polar, &c)?;
    let c = lift_conic(ext, &c);
    let mut lines = touch.iter().map(|(q, _)| c.polar(q)).collect::<Result<Vec<_>>>()?;
    sort_lines(&mut lines);
    Ok(lines)
}

/// The tangent lines to `c` through `p`: two when `p` is off the conic, one
/// when it lies on it. They may need a quadratic extension.
pub fn tangent_lines_from(p: &ProjPoint, c: &Conic) -> Result<Vec<ProjLine>> {
    let mut ext = Extender::new(p.tower());
    with_splits(&mut ext, |ext| tangent_lines_from_in(ext, p, c))
}

/// The intersection `c1 ∩ c2` inside the extender's tower, each point with
/// its intersection multiplicity.
pub fn intersect_conics_in(ext: &mut Extender, c1: &Conic, c2: &Conic) -> Result<Vec<(ProjPoint, u32)>> {
    let c1 = lift_conic(ext, c1);
    let c2 = lift_conic(ext, c2);
    c1.require_nonsingular()?;
    c2.require_nonsingular()?;
    if c1.form().same_curve(c2.form())? {
        return Err(Error::CoincidentConics);
    }

    // A degenerate member of the pencil c1 + t c2 is a pair of lines (or a
    // double line) through all the intersection points.
    let lines = degenerate_member_lines(ext, &c1, &c2)?;
    let mut points: Vec<ProjPoint> = Vec::new();
    for l in &lines {
        for (p, _) in line_conic_points(ext, l, &c1)? {
            points = points.iter().map(|q| lift_point(ext, q)).collect();
            let p = lift_point(ext, &p);
            let mut seen = false;
            for q in &points {
                if q.same_as(&p)? {
                    seen = true;
                    break;
                }
            }
            if !seen {
                points.push(p);
            }
        }
    }
    let points: Vec<ProjPoint> = points.iter().map(|q| lift_point(ext, q)).collect();
    for p in &points {
        let c2 = lift_conic(ext, &c2);
        if !c2.contains(p)? {
            return Err(Error::Invalid(format!("internal: {p} is not on {c2}")));
        }
    }
    let mut out = multiplicities(ext, &c1, &c2, &points)?;
    sort_points(&mut out);
    Ok(out)
}

/// Intersection points of two distinct nonsingular conics with
/// multiplicities summing to 4.
pub fn intersect_conics(c1: &Conic, c2: &Conic) -> Result<Vec<(ProjPoint, u32)>> {
    if c1.tower() != c2.tower() {
        return Err(crate::FieldError::TowerMismatch.into());
    }
    let mut ext = Extender::new(c1.tower());
    with_splits(&mut ext, |ext| intersect_conics_in(ext, c1, c2))
}

fn degenerate_member_lines(ext: &mut Extender, c1: &Conic, c2: &Conic) -> Result<Vec<ProjLine>> {
    let tower = ext.tower().clone();
    let entry = |i: usize, j: usize| UniPoly::new(&tower, vec![c1.matrix[i][j].clone(), c2.matrix[i][j].clone()]);
    let m: Vec<Vec<UniPoly>> = (0..3).map(|i| (0..3).map(|j| entry(i, j)).collect()).collect();
    let minor = |r0: usize, r1: usize, k0: usize, k1: usize| m[r0][k0].mul(&m[r1][k1]).sub(&m[r0][k1].mul(&m[r1][k0]));
    let cubic = m[0][0]
        .mul(&minor(1, 2, 1, 2))
        .sub(&m[0][1].mul(&minor(1, 2, 0, 2)))
        .add(&m[0][2].mul(&minor(1, 2, 0, 1)));
    let cubic = cubic.monic()?;
    let (roots, _) = partial_roots(&cubic)?;
    let t0 = match roots.into_iter().next() {
        Some(r) => r,
        None => {
            let sf = cubic.squarefree_part()?;
            if sf.degree().unwrap_or(0) <= 2 {
                ext.split(&sf)?.remove(0)
            } else {
                ext.adjoin_root(&sf)?
            }
        }
    };
    let t0 = ext.lift(&t0);
    let a1 = lift_conic(ext, c1);
    let a2 = lift_conic(ext, c2);
    let d: Matrix = [0, 1, 2].map(|i| [0, 1, 2].map(|j| &a1.matrix[i][j] + &(&t0 * &a2.matrix[i][j])));
    let adj = adjugate(&d);
    let mut kernel = None;
    for row in &adj {
        if !is_zero_vec(row)? {
            kernel = Some(row.clone());
            break;
        }
    }
    let Some(s) = kernel else {
        // Rank one: a double line, spanned by any nonzero row.
        for row in &d {
            if !is_zero_vec(row)? {
                let [a, b, c] = row.clone();
                return Ok(vec![ProjLine::new(a, b, c)?]);
            }
        }
        return Err(Error::CoincidentConics);
    };
    // Rank two: the lines meet at the kernel point s. Cut them with a
    // coordinate line missing s.
    let mut k = 0;
    while s[k].is_zero_checked()? {
        k += 1;
    }
    let (i, j) = match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let b = &d[i][j] + &d[i][j];
    let roots = binary_quadratic_roots(ext, &d[i][i], &b, &d[j][j])?;
    let s = lift_point(ext, &ProjPoint::new(s[0].clone(), s[1].clone(), s[2].clone())?);
    let tower = ext.tower().clone();
    let mut lines = Vec::new();
    for ([x, y], _) in roots {
        let mut v = [0, 1, 2].map(|_| FieldElement::zero(&tower));
        v[i] = x;
        v[j] = y;
        let [a, b, c] = v;
        lines.push(line_through(&s, &ProjPoint::new(a, b, c)?)?);
    }
    Ok(lines)
}

const SHEARS: [(i64, i64); 10] = [(0, 0), (1, 2), (2, -1), (-3, 1), (5, 7), (1, -4), (-2, 3), (7, -5), (3, 11), (-9, 2)];

/// Intersection multiplicities from the resultant of the two forms after a
/// shear that moves the projection center off both conics and separates
/// the projections of the given points.
fn multiplicities(ext: &Extender, c1: &Conic, c2: &Conic, points: &[ProjPoint]) -> Result<Vec<(ProjPoint, u32)>> {
    let tower = ext.tower().clone();
    let c1 = lift_conic(ext, c1);
    let c2 = lift_conic(ext, c2);
    for (a, b) in SHEARS {
        let shear = ProjTransform::from_ints(&tower, [[1, a, 0], [0, 1, 0], [0, b, 1]])?;
        let center = ProjPoint::from_ints(&tower, a, 1, b)?;
        if c1.contains(&center)? || c2.contains(&center)? {
            continue;
        }
        let back = shear.inverse();
        let proj: Vec<[FieldElement; 2]> = points
            .iter()
            .map(|p| back.apply(p).map(|q| [q.coords()[0].clone(), q.coords()[2].clone()]))
            .collect::<Result<_>>()?;
        let mut separated = true;
        'pairs: for i in 0..proj.len() {
            for j in i + 1..proj.len() {
                let d = &(&proj[i][0] * &proj[j][1]) - &(&proj[j][0] * &proj[i][1]);
                if d.is_zero_checked()? {
                    separated = false;
                    break 'pairs;
                }
            }
        }
        if !separated {
            continue;
        }
        let r = resultant(c1.form().pullback(&shear).poly(), c2.form().pullback(&shear).poly(), 1);
        let r = r.substitute(2, &FieldElement::one(&tower)).to_univariate(0).expect("binary form");
        let deg = r.degree().unwrap_or(0) as u32;
        let mut out = Vec::new();
        for (p, [x, z]) in points.iter().zip(&proj) {
            let m = if z.is_zero_checked()? {
                4 - deg
            } else {
                root_order(&r, &x.try_div(z)?)?
            };
            out.push((p.clone(), m));
        }
        if out.iter().map(|(_, m)| m).sum::<u32>() == 4 && out.iter().all(|(_, m)| *m > 0) {
            return Ok(out);
        }
        return Err(Error::Invalid("internal: intersection multiplicities do not add up to 4".into()));
    }
    Err(Error::Invalid("internal: no separating shear found".into()))
}

fn root_order(f: &UniPoly, x0: &FieldElement) -> Result<u32> {
    let lin = UniPoly::linear_from_root(x0);
    let mut f = f.clone();
    let mut k = 0;
    loop {
        let (q, r) = f.divrem(&lin)?;
        if !r.is_zero() {
            return Ok(k);
        }
        f = q;
        k += 1;
    }
}

/// An outer SG point of a conic pair, certified by the two common tangent
/// lines through it.
#[derive(Clone, Debug)]
pub struct OuterConicPoint {
    pub point: ProjPoint,
    pub tangents: [ProjLine; 2],
}

/// The complete set of outer SG points of two nonsingular conics.
#[derive(Clone, Debug)]
pub struct ConicOuterResult {
    /// Tower holding every coordinate below.
    pub tower: FieldTower,
    pub dual_first: Conic,
    pub dual_second: Conic,
    /// Points of the intersection of the dual conics, i.e. common tangents.
    pub dual_points: Vec<(ProjPoint, u32)>,
    pub points: Vec<OuterConicPoint>,
}

pub fn sg_outer_conics_in(ext: &mut Extender, c1: &Conic, c2: &Conic) -> Result<ConicOuterResult> {
    let c1 = lift_conic(ext, c1);
    let c2 = lift_conic(ext, c2);
    if c1.form().same_curve(c2.form())? {
        return Err(Error::CoincidentConics);
    }
    let d1 = dual_conic(&c1)?;
    let d2 = dual_conic(&c2)?;
    let dual_points = intersect_conics_in(ext, &d1, &d2)?;
    let mut found = Vec::new();
    for i in 0..dual_points.len() {
        for j in i + 1..dual_points.len() {
            let pi = lift_point(ext, &dual_points[i].0);
            let pj = lift_point(ext, &dual_points[j].0);
            let point = dual(&line_through(&pi, &pj)?);
            let mut tangents = [dual(&pi), dual(&pj)];
            sort_lines(&mut tangents);
            found.push(OuterConicPoint { point, tangents });
        }
    }
    // Certification: the tangents from each point to either conic are
    // exactly the two common tangents that produced it.
    for item in &found {
        for c in [&c1, &c2] {
            let lines = tangent_lines_from_in(ext, &item.point, c)?;
            let expected: Vec<ProjLine> = item.tangents.iter().map(|l| lift_line(ext, l)).collect();
            let lines: Vec<ProjLine> = lines.iter().map(|l| lift_line(ext, l)).collect();
            if lines.len() != 2 || !same_line_sets(&lines, &expected)? {
                return Err(Error::Invalid(format!("internal: tangent certification failed at {}", item.point)));
            }
        }
    }
    let mut points: Vec<OuterConicPoint> = found
        .into_iter()
        .map(|p| {
            let mut tangents = p.tangents.map(|l| lift_line(ext, &l));
            sort_lines(&mut tangents);
            OuterConicPoint { point: lift_point(ext, &p.point), tangents }
        })
        .collect();
    points.sort_by(|a, b| a.point.canonical_cmp(&b.point));
    let mut dual_points: Vec<(ProjPoint, u32)> = dual_points.iter().map(|(p, m)| (lift_point(ext, p), *m)).collect();
    sort_points(&mut dual_points);
    Ok(ConicOuterResult {
        tower: ext.tower().clone(),
        dual_first: lift_conic(ext, &d1),
        dual_second: lift_conic(ext, &d2),
        dual_points,
        points,
    })
}

fn same_line_sets(a: &[ProjLine], b: &[ProjLine]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    for l in a {
        let mut hit = false;
        for m in b {
            if l.same_as(m)? {
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All outer SG points of the pair; there are k(k-1)/2 of them for k
/// distinct common tangent lines.
pub fn sg_outer_conics(c1: &Conic, c2: &Conic) -> Result<ConicOuterResult> {
    if c1.tower() != c2.tower() {
        return Err(crate::FieldError::TowerMismatch.into());
    }
    let mut ext = Extender::new(c1.tower());
    with_splits(&mut ext, |ext| sg_outer_conics_in(ext, c1, c2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::cyclotomic_field;

    fn q() -> FieldTower {
        FieldTower::rationals()
    }

    fn conic(terms: &[(i64, [u32; 3])]) -> Conic {
        Conic::new(HomPoly::from_int_terms(&q(), terms).unwrap()).unwrap()
    }

    fn circle() -> Conic {
        conic(&[(1, [2, 0, 0]), (1, [0, 2, 0]), (-1, [0, 0, 2])])
    }

    fn pt(x: i64, y: i64, z: i64) -> ProjPoint {
        ProjPoint::from_ints(&q(), x, y, z).unwrap()
    }

    fn ln(a: i64, b: i64, c: i64) -> ProjLine {
        ProjLine::from_ints(&q(), a, b, c).unwrap()
    }

    #[test]
    fn matrix_and_form_agree() {
        let c = conic(&[(1, [2, 0, 0]), (1, [0, 2, 0]), (-4, [0, 1, 1]), (3, [0, 0, 2])]);
        assert_eq!(c.matrix()[1][2], FieldElement::from_int(&q(), -2));
        let back = Conic::from_matrix(c.matrix().clone()).unwrap();
        assert_eq!(back.form(), c.form());
    }

    #[test]
    fn duals_of_the_paper_conics() {
        assert_eq!(dual_conic(&circle()).unwrap().to_string(), "X^2 + Y^2 - Z^2");
        let c2 = conic(&[(1, [2, 0, 0]), (1, [0, 2, 0]), (-4, [0, 1, 1]), (3, [0, 0, 2])]);
        assert_eq!(dual_conic(&c2).unwrap().to_string(), "X^2 - 3*Y^2 - 4*Y*Z - Z^2");
        let c3 = conic(&[(1, [2, 0, 0]), (-4, [0, 1, 1])]);
        assert_eq!(dual_conic(&c3).unwrap().to_string(), "X^2 - Y*Z");
        assert!(matches!(dual_conic(&conic(&[(1, [1, 1, 0])])), Err(Error::SingularConic)));
    }

    #[test]
    fn intersection_with_a_tangency() {
        let a = circle();
        let b = conic(&[(1, [2, 0, 0]), (-3, [0, 2, 0]), (-4, [0, 1, 1]), (-1, [0, 0, 2])]);
        let got = intersect_conics(&a, &b).unwrap();
        let expected = vec![(pt(-1, 0, 1), 1), (pt(0, -1, 1), 2), (pt(1, 0, 1), 1)];
        assert_eq!(got, expected);
        assert_eq!(intersect_conics(&b, &a).unwrap(), expected);
    }

    #[test]
    fn fourfold_contact() {
        let a = conic(&[(1, [2, 0, 0]), (-1, [0, 1, 1])]);
        let b = conic(&[(1, [2, 0, 0]), (-1, [0, 1, 1]), (-1, [0, 0, 2])]);
        assert_eq!(intersect_conics(&a, &b).unwrap(), vec![(pt(0, 1, 0), 4)]);
    }

    #[test]
    fn intersection_needing_cube_roots_of_unity() {
        let a = conic(&[(1, [2, 0, 0]), (-1, [0, 1, 1])]);
        let b = conic(&[(1, [0, 2, 0]), (-1, [1, 0, 1])]);
        let got = intersect_conics(&a, &b).unwrap();
        assert_eq!(got.len(), 4);
        let t = got[0].0.tower().clone();
        let w3 = cyclotomic_field(3);
        // Oracle: every point satisfies both forms, and x^3 = 1 on the affine chart.
        for (p, m) in &got {
            assert_eq!(*m, 1);
            assert!(a.lift_to(&t).contains(p).unwrap() && b.lift_to(&t).contains(p).unwrap());
        }
        assert!(got.contains(&(ProjPoint::from_ints(&t, 0, 0, 1).unwrap(), 1)));
        assert!(got.contains(&(ProjPoint::from_ints(&t, 1, 1, 1).unwrap(), 1)));
        assert_eq!(t.degree(), w3.degree());
    }

    #[test]
    fn tangents_from_points() {
        assert_eq!(tangent_lines_from(&pt(0, 1, 0), &circle()).unwrap(), vec![ln(-1, 0, 1), ln(1, 0, 1)]);
        assert!(tangent_lines_from(&pt(1, 1, 1), &circle()).unwrap().contains(&ln(0, -1, 1)));
        assert_eq!(tangent_lines_from(&pt(1, 0, 1), &circle()).unwrap(), vec![ln(-1, 0, 1)]);
    }

    #[test]
    fn outer_points_of_the_first_example() {
        let c2 = conic(&[(1, [2, 0, 0]), (1, [0, 2, 0]), (-4, [0, 1, 1]), (3, [0, 0, 2])]);
        let r = sg_outer_conics(&circle(), &c2).unwrap();
        let pts: Vec<ProjPoint> = r.points.iter().map(|p| p.point.clone()).collect();
        assert_eq!(pts, vec![pt(-1, 1, 1), pt(0, 1, 0), pt(1, 1, 1)]);
    }

    #[test]
    fn no_outer_points_with_fourfold_contact() {
        let a = conic(&[(1, [2, 0, 0]), (-4, [0, 1, 1])]);
        let b = conic(&[(1, [2, 0, 0]), (4, [0, 2, 0]), (-4, [0, 1, 1])]);
        let r = sg_outer_conics(&a, &b).unwrap();
        assert_eq!(r.dual_points.len(), 1);
        assert!(r.points.is_empty());
    }

    #[test]
    fn single_outer_point() {
        // Y^2 + 2(X + Z)(X + Y) = 2X^2 + 2XY + 2XZ + Y^2 + 2YZ
        let b = conic(&[(2, [2, 0, 0]), (2, [1, 1, 0]), (2, [1, 0, 1]), (1, [0, 2, 0]), (2, [0, 1, 1])]);
        let r = sg_outer_conics(&circle(), &b).unwrap();
        let pts: Vec<ProjPoint> = r.points.iter().map(|p| p.point.clone()).collect();
        assert_eq!(pts, vec![pt(0, 1, 0)]);
    }
}
