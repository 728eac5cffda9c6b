//! Projective points, lines and transformations of the plane.

use std::cmp::Ordering;
use std::fmt;

use crate::field::{FieldElement, FieldTower};
use crate::poly::MPoly;
use crate::{Error, Result};

type Triple = [FieldElement; 3];

/// Scales so that the last nonzero coordinate is 1.
fn canonicalize(v: &Triple) -> Result<Triple> {
    for i in (0..3).rev() {
        if !v[i].is_zero_checked()? {
            let inv = v[i].try_invert()?;
            return Ok([&v[0] * &inv, &v[1] * &inv, &v[2] * &inv]);
        }
    }
    Err(Error::ZeroVector)
}

fn check_tower(v: &Triple) -> Result<()> {
    if v[0].tower() != v[1].tower() || v[1].tower() != v[2].tower() {
        return Err(crate::FieldError::TowerMismatch.into());
    }
    Ok(())
}

pub(crate) fn cross(a: &Triple, b: &Triple) -> Triple {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

pub(crate) fn dot(a: &Triple, b: &Triple) -> FieldElement {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

fn cmp_triples(a: &Triple, b: &Triple) -> Ordering {
    for i in 0..3 {
        match a[i].canonical_cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn fmt_triple(v: &Triple, sep: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    write!(f, "({})", parts.join(sep))
}

/// A point of the projective plane, kept with its last nonzero coordinate 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: Triple,
}

impl ProjPoint {
    pub fn new(x: FieldElement, y: FieldElement, z: FieldElement) -> Result<Self> {
        let v = [x, y, z];
        check_tower(&v)?;
        Ok(ProjPoint { coords: canonicalize(&v)? })
    }

    pub fn from_ints(tower: &FieldTower, x: i64, y: i64, z: i64) -> Result<Self> {
        Self::new(FieldElement::from_int(tower, x), FieldElement::from_int(tower, y), FieldElement::from_int(tower, z))
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    pub fn tower(&self) -> &FieldTower {
        self.coords[0].tower()
    }

    pub fn lift_to(&self, tower: &FieldTower) -> Self {
        ProjPoint { coords: self.coords.clone().map(|c| c.lift_to(tower)) }
    }

    /// Applies a coefficientwise map that is a field embedding.
    pub fn map(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        ProjPoint { coords: [f(&self.coords[0]), f(&self.coords[1]), f(&self.coords[2])] }
    }

    /// Canonical total order: lexicographic on the coordinate vectors.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        cmp_triples(&self.coords, &other.coords)
    }

    pub fn is_on(&self, line: &ProjLine) -> Result<bool> {
        Ok(dot(&self.coords, &line.coeffs).is_zero_checked()?)
    }

    /// Equality that is safe under reducible moduli.
    pub fn same_as(&self, other: &Self) -> Result<bool> {
        for c in cross(&self.coords, &other.coords) {
            if !c.is_zero_checked()? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_triple(&self.coords, ":", f)
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The line aX + bY + cZ = 0, normalized like points.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjLine {
    coeffs: Triple,
}

impl ProjLine {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement) -> Result<Self> {
        let v = [a, b, c];
        check_tower(&v)?;
        Ok(ProjLine { coeffs: canonicalize(&v)? })
    }

    pub fn from_ints(tower: &FieldTower, a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(FieldElement::from_int(tower, a), FieldElement::from_int(tower, b), FieldElement::from_int(tower, c))
    }

    pub fn coeffs(&self) -> &[FieldElement; 3] {
        &self.coeffs
    }

    pub fn tower(&self) -> &FieldTower {
        self.coeffs[0].tower()
    }

    pub fn lift_to(&self, tower: &FieldTower) -> Self {
        ProjLine { coeffs: self.coeffs.clone().map(|c| c.lift_to(tower)) }
    }

    pub fn map(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        ProjLine { coeffs: [f(&self.coeffs[0]), f(&self.coeffs[1]), f(&self.coeffs[2])] }
    }

    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        cmp_triples(&self.coeffs, &other.coeffs)
    }

    /// The linear form as a polynomial in X, Y, Z.
    pub fn form(&self) -> MPoly {
        let tower = self.tower();
        let mut out = MPoly::zero(tower, 3);
        for i in 0..3 {
            out = out.add(&MPoly::var(tower, 3, i).scale(&self.coeffs[i]));
        }
        out
    }

    pub fn same_as(&self, other: &Self) -> Result<bool> {
        for c in cross(&self.coeffs, &other.coeffs) {
            if !c.is_zero_checked()? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", self.form().format_with(&["X", "Y", "Z"]))
    }
}

impl fmt::Debug for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The line through two distinct points.
pub fn line_through(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine> {
    let [a, b, c] = cross(&p.coords, &q.coords);
    match ProjLine::new(a, b, c) {
        Err(Error::ZeroVector) => Err(Error::CoincidentPoints),
        other => other,
    }
}

/// The common point of two distinct lines.
pub fn meet(l: &ProjLine, m: &ProjLine) -> Result<ProjPoint> {
    let [a, b, c] = cross(&l.coeffs, &m.coeffs);
    match ProjPoint::new(a, b, c) {
        Err(Error::ZeroVector) => Err(Error::CoincidentPoints),
        other => other,
    }
}

/// Point-line duality: the same coordinates read in the other role.
pub trait Dual {
    type Output;
    fn dual(&self) -> Self::Output;
}

impl Dual for ProjPoint {
    type Output = ProjLine;
    fn dual(&self) -> ProjLine {
        ProjLine { coeffs: self.coords.clone() }
    }
}

impl Dual for ProjLine {
    type Output = ProjPoint;
    fn dual(&self) -> ProjPoint {
        ProjPoint { coords: self.coeffs.clone() }
    }
}

pub fn dual<D: Dual>(x: &D) -> D::Output {
    x.dual()
}

/// An invertible 3x3 matrix acting on column vectors. Proportional matrices
/// compare equal.
#[derive(Clone)]
pub struct ProjTransform {
    m: [[FieldElement; 3]; 3],
}

impl ProjTransform {
    pub fn new(m: [[FieldElement; 3]; 3]) -> Result<Self> {
        let tower = m[0][0].tower().clone();
        if m.iter().flatten().any(|e| e.tower() != &tower) {
            return Err(crate::FieldError::TowerMismatch.into());
        }
        let t = ProjTransform { m };
        if t.det().is_zero_checked()? {
            return Err(Error::Singular);
        }
        Ok(t)
    }

    pub fn from_ints(tower: &FieldTower, m: [[i64; 3]; 3]) -> Result<Self> {
        Self::new(m.map(|row| row.map(|e| FieldElement::from_int(tower, e))))
    }

    pub fn identity(tower: &FieldTower) -> Self {
        Self::diag(FieldElement::one(tower), FieldElement::one(tower), FieldElement::one(tower)).unwrap()
    }

    pub fn diag(a: FieldElement, b: FieldElement, c: FieldElement) -> Result<Self> {
        let z = FieldElement::zero(a.tower());
        Self::new([[a, z.clone(), z.clone()], [z.clone(), b, z.clone()], [z.clone(), z, c]])
    }

    /// The permutation matrix sending coordinate `j` to position `perm[j]`.
    pub fn permutation(tower: &FieldTower, perm: [usize; 3]) -> Self {
        let mut m = [[0i64; 3]; 3];
        for (j, &i) in perm.iter().enumerate() {
            m[i][j] = 1;
        }
        Self::from_ints(tower, m).unwrap()
    }

    pub fn matrix(&self) -> &[[FieldElement; 3]; 3] {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> &FieldElement {
        &self.m[i][j]
    }

    pub fn tower(&self) -> &FieldTower {
        self.m[0][0].tower()
    }

    pub fn det(&self) -> FieldElement {
        let m = &self.m;
        let c0 = &(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1]);
        let c1 = &(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]);
        let c2 = &(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]);
        &(&(&m[0][0] * &c0) - &(&m[0][1] * &c1)) + &(&m[0][2] * &c2)
    }

    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint> {
        let v = &p.coords;
        let img = [0, 1, 2].map(|i| dot(&self.m[i], v));
        ProjPoint::new(img[0].clone(), img[1].clone(), img[2].clone())
    }

    /// The adjugate, which is the inverse up to the scalar `det`.
    pub fn inverse(&self) -> ProjTransform {
        ProjTransform { m: adjugate(&self.m) }
    }

    /// The matrix product `self * other` (apply `other` first).
    pub fn compose(&self, other: &ProjTransform) -> ProjTransform {
        let m = [0, 1, 2].map(|i| {
            [0, 1, 2].map(|j| {
                let mut acc = FieldElement::zero(self.tower());
                for k in 0..3 {
                    acc = &acc + &(&self.m[i][k] * &other.m[k][j]);
                }
                acc
            })
        });
        ProjTransform { m }
    }

    pub fn lift_to(&self, tower: &FieldTower) -> Self {
        ProjTransform { m: self.m.clone().map(|row| row.map(|e| e.lift_to(tower))) }
    }

    pub fn map(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        ProjTransform { m: self.m.clone().map(|row| row.map(|e| f(&e))) }
    }

    /// Scaled so that the first nonzero entry in row-major order is 1.
    pub fn normalized(&self) -> Result<ProjTransform> {
        let first = self.m.iter().flatten().find(|e| !e.is_zero()).expect("invertible matrix has a nonzero entry");
        let inv = first.try_invert()?;
        Ok(ProjTransform { m: self.m.clone().map(|row| row.map(|e| &e * &inv)) })
    }

    /// Proportionality test that is safe under reducible moduli.
    pub fn same_as(&self, other: &ProjTransform) -> Result<bool> {
        let a: Vec<&FieldElement> = self.m.iter().flatten().collect();
        let b: Vec<&FieldElement> = other.m.iter().flatten().collect();
        for i in 0..9 {
            for j in i + 1..9 {
                let d = &(a[i] * b[j]) - &(a[j] * b[i]);
                if !d.is_zero_checked()? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_identity(&self) -> Result<bool> {
        self.same_as(&ProjTransform::identity(self.tower()))
    }
}

impl PartialEq for ProjTransform {
    fn eq(&self, other: &Self) -> bool {
        self.tower() == other.tower() && self.same_as(other).unwrap_or(false)
    }
}

impl fmt::Display for ProjTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|row| format!("[{}]", row.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for ProjTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn adjugate(m: &[[FieldElement; 3]; 3]) -> [[FieldElement; 3]; 3] {
    let c = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        &(&m[r0][c0] * &m[r1][c1]) - &(&m[r0][c1] * &m[r1][c0])
    };
    // Cyclic index choice makes the cofactor signs come out right.
    [0, 1, 2].map(|i| [0, 1, 2].map(|j| c(j, i)))
}

/// A transform sending `p` to (0:1:0): the identity at (0:1:0), a
/// coordinate swap at the other coordinate points, and otherwise an
/// elementary shear, preceded by the X/Y swap when the Y coordinate is zero.
pub fn standardize_center(p: &ProjPoint) -> Result<ProjTransform> {
    let tower = p.tower().clone();
    let [x, y, z] = p.coords.clone();
    if y.is_zero_checked()? {
        if x.is_zero_checked()? {
            return Ok(ProjTransform::permutation(&tower, [0, 2, 1]));
        }
        let swap = ProjTransform::permutation(&tower, [1, 0, 2]);
        let q = swap.apply(p)?;
        return Ok(standardize_center(&q)?.compose(&swap));
    }
    let yi = y.try_invert()?;
    let zero = FieldElement::zero(&tower);
    let one = FieldElement::one(&tower);
    ProjTransform::new([
        [one.clone(), -&(&x * &yi), zero.clone()],
        [zero.clone(), one.clone(), zero.clone()],
        [zero, -&(&z * &yi), one],
    ])
}

/// All transforms preserving every line through a center: with `T` from
/// [`standardize_center`], the matrices `T^-1 [[1,0,0],[p,q,r],[0,0,1]] T`
/// with q nonzero.
#[derive(Clone, Debug)]
pub struct FiberFamily {
    center: ProjPoint,
    conj: ProjTransform,
    conj_inv: ProjTransform,
}

impl FiberFamily {
    pub fn center(&self) -> &ProjPoint {
        &self.center
    }

    pub fn standardizer(&self) -> &ProjTransform {
        &self.conj
    }

    pub fn instantiate(&self, p: &FieldElement, q: &FieldElement, r: &FieldElement) -> Result<ProjTransform> {
        let tower = p.tower().clone();
        let zero = FieldElement::zero(&tower);
        let one = FieldElement::one(&tower);
        let mid = ProjTransform::new([
            [one.clone(), zero.clone(), zero.clone()],
            [p.clone(), q.clone(), r.clone()],
            [zero.clone(), zero, one],
        ])?;
        Ok(self.conj_inv.lift_to(&tower).compose(&mid).compose(&self.conj.lift_to(&tower)))
    }

    /// The family as a matrix of polynomials in `nvars` variables, with the
    /// parameters p, q, r at the given variable indices.
    pub fn symbolic(&self, nvars: usize, vars: [usize; 3]) -> [[MPoly; 3]; 3] {
        let tower = self.center.tower();
        let c = |e: &FieldElement| MPoly::constant(e, nvars);
        let zero = MPoly::zero(tower, nvars);
        let one = MPoly::from_int(tower, nvars, 1);
        let mid = [
            [one.clone(), zero.clone(), zero.clone()],
            [MPoly::var(tower, nvars, vars[0]), MPoly::var(tower, nvars, vars[1]), MPoly::var(tower, nvars, vars[2])],
            [zero.clone(), zero.clone(), one],
        ];
        let a = self.conj_inv.matrix().clone().map(|row| row.map(|e| c(&e)));
        let b = self.conj.matrix().clone().map(|row| row.map(|e| c(&e)));
        let mul = |x: &[[MPoly; 3]; 3], y: &[[MPoly; 3]; 3]| {
            [0, 1, 2].map(|i| {
                [0, 1, 2].map(|j| {
                    let mut acc = zero.clone();
                    for k in 0..3 {
                        acc = acc.add(&x[i][k].mul(&y[k][j]));
                    }
                    acc
                })
            })
        };
        mul(&mul(&a, &mid), &b)
    }
}

pub fn fiber_family(p: &ProjPoint) -> Result<FiberFamily> {
    let conj = standardize_center(p)?;
    let conj_inv = conj.inverse();
    Ok(FiberFamily { center: p.clone(), conj, conj_inv })
}

/// True when `t` fixes `p` and maps every line through `p` to itself.
pub fn preserves_lines_through(t: &ProjTransform, p: &ProjPoint) -> Result<bool> {
    if !t.apply(p)?.same_as(p)? {
        return Ok(false);
    }
    // Lines through p are spanned by p and the points of any line missing p;
    // it is enough that t(v) lies on the line through p and v for three
    // points v in general position with respect to p.
    let tower = p.tower();
    for v in [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]] {
        let v = ProjPoint::from_ints(tower, v[0], v[1], v[2])?;
        if v.same_as(p)? {
            continue;
        }
        let l = line_through(p, &v)?;
        if !t.apply(&v)?.is_on(&l)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{cyclotomic_field, FieldTower};

    fn q() -> FieldTower {
        FieldTower::rationals()
    }

    fn pt(x: i64, y: i64, z: i64) -> ProjPoint {
        ProjPoint::from_ints(&q(), x, y, z).unwrap()
    }

    fn ln(a: i64, b: i64, c: i64) -> ProjLine {
        ProjLine::from_ints(&q(), a, b, c).unwrap()
    }

    #[test]
    fn canonical_points() {
        assert_eq!(pt(0, 2, 0), pt(0, 1, 0));
        assert_eq!(pt(-2, 2, 0).to_string(), "(-1:1:0)");
        assert_eq!(pt(0, 3, -3).to_string(), "(0:-1:1)");
        assert!(matches!(ProjPoint::from_ints(&q(), 0, 0, 0), Err(Error::ZeroVector)));
    }

    #[test]
    fn lines_through_points() {
        assert_eq!(line_through(&pt(1, 0, 1), &pt(-1, 0, 1)).unwrap(), ln(0, 1, 0));
        assert_eq!(line_through(&pt(-1, 0, 1), &pt(0, -1, 1)).unwrap(), ln(1, 1, 1));
        assert_eq!(line_through(&pt(1, 0, 0), &pt(0, 1, 0)).unwrap(), ln(0, 0, 1));
        assert!(matches!(line_through(&pt(1, 2, 3), &pt(2, 4, 6)), Err(Error::CoincidentPoints)));
    }

    #[test]
    fn duality() {
        assert_eq!(dual(&ln(0, 1, 0)), pt(0, 1, 0));
        assert_eq!(dual(&ln(-1, 1, 1)), pt(-1, 1, 1));
        assert_eq!(dual(&dual(&pt(2, 3, 5))), pt(2, 3, 5));
    }

    #[test]
    fn transforms_act_on_points() {
        let t = cyclotomic_field(4);
        let i = FieldElement::generator(&t, 0);
        let one = FieldElement::one(&t);
        let d = ProjTransform::diag(one.clone(), i, one).unwrap();
        let p = ProjPoint::from_ints(&t, 0, 1, 0).unwrap();
        assert_eq!(d.apply(&p).unwrap(), p);

        let s = ProjTransform::from_ints(&q(), [[1, 0, 0], [-2, -1, 0], [0, 0, 1]]).unwrap();
        assert_eq!(s.apply(&pt(-1, 1, 0)).unwrap(), pt(-1, 1, 0));

        let a = ProjTransform::from_ints(&q(), [[2, 1, 0], [0, 1, 3], [1, 0, 1]]).unwrap();
        let p = pt(4, -1, 7);
        assert_eq!(a.inverse().apply(&a.apply(&p).unwrap()).unwrap(), p);
        assert!(a.compose(&a.inverse()).is_identity().unwrap());
        assert!(matches!(ProjTransform::from_ints(&q(), [[1, 2, 3], [2, 4, 6], [0, 0, 1]]), Err(Error::Singular)));
    }

    #[test]
    fn omega_rotation_of_inner_points() {
        // sigma_1 = diag(1, w^2, 1) sends (-1:1:0) to (-w:1:0).
        let t = cyclotomic_field(3);
        let w = FieldElement::generator(&t, 0);
        let one = FieldElement::one(&t);
        let s = ProjTransform::diag(one.clone(), w.pow(2), one.clone()).unwrap();
        let p = ProjPoint::from_ints(&t, -1, 1, 0).unwrap();
        let expected = ProjPoint::new(-&w, one, FieldElement::zero(&t)).unwrap();
        assert_eq!(s.apply(&p).unwrap(), expected);
    }

    #[test]
    fn standardized_centers() {
        assert!(standardize_center(&pt(0, 1, 0)).unwrap().is_identity().unwrap());
        let swap = ProjTransform::from_ints(&q(), [[0, 1, 0], [1, 0, 0], [0, 0, 1]]).unwrap();
        assert_eq!(standardize_center(&pt(1, 0, 0)).unwrap(), swap);
        for p in [pt(-1, 1, 0), pt(0, 0, 1), pt(1, 0, 1), pt(3, -2, 5), pt(1, 1, 1)] {
            let t = standardize_center(&p).unwrap();
            assert_eq!(t.apply(&p).unwrap(), pt(0, 1, 0), "center {p}");
        }
    }

    #[test]
    fn fiber_family_shapes() {
        let fam = fiber_family(&pt(1, 0, 0)).unwrap();
        let f = |n: i64| FieldElement::from_int(&q(), n);
        let m = fam.instantiate(&f(2), &f(5), &f(3)).unwrap();
        assert_eq!(m, ProjTransform::from_ints(&q(), [[5, 2, 3], [0, 1, 0], [0, 0, 1]]).unwrap());

        let fam = fiber_family(&pt(0, 0, 1)).unwrap();
        let m = fam.instantiate(&f(0), &f(7), &f(0)).unwrap();
        assert_eq!(m, ProjTransform::from_ints(&q(), [[1, 0, 0], [0, 1, 0], [0, 0, 7]]).unwrap());

        let fam = fiber_family(&pt(0, 1, 0)).unwrap();
        let m = fam.instantiate(&f(-2), &f(-1), &f(0)).unwrap();
        assert_eq!(m, ProjTransform::from_ints(&q(), [[1, 0, 0], [-2, -1, 0], [0, 0, 1]]).unwrap());
    }

    #[test]
    fn fiber_members_preserve_lines_through_center() {
        let f = |n: i64| FieldElement::from_int(&q(), n);
        for p in [pt(0, 1, 0), pt(1, 0, 0), pt(0, 0, 1), pt(-1, 1, 0), pt(2, -3, 1)] {
            let fam = fiber_family(&p).unwrap();
            let m = fam.instantiate(&f(3), &f(-2), &f(5)).unwrap();
            assert!(preserves_lines_through(&m, &p).unwrap(), "center {p}");
        }
        let m = ProjTransform::from_ints(&q(), [[1, 1, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        assert!(!preserves_lines_through(&m, &pt(0, 1, 0)).unwrap());
    }

    #[test]
    fn symbolic_family_matches_instances() {
        let fam = fiber_family(&pt(2, -3, 1)).unwrap();
        let sym = fam.symbolic(3, [0, 1, 2]);
        let vals = [FieldElement::from_int(&q(), 3), FieldElement::from_int(&q(), -2), FieldElement::from_int(&q(), 5)];
        let inst = fam.instantiate(&vals[0], &vals[1], &vals[2]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(sym[i][j].eval(&vals), inst.matrix()[i][j]);
            }
        }
    }
}
