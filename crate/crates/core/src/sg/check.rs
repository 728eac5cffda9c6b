//! Pairs of curves and the SG test at a single point.

use crate::field::{Extender, FieldElement};
use crate::geom::{preserves_lines_through, ProjPoint, ProjTransform};
use crate::poly::{singular_witness, HomPoly};
use crate::sg::fiber::{lift_form, lift_point, lift_transform, solve_fiber_transforms};
use crate::sg::galois::{galois_point_check, GaloisVerdict};
use crate::{Error, Result};

/// Two distinct nonsingular curves over a common tower.
#[derive(Clone, Debug)]
pub struct CurvePair {
    c1: HomPoly,
    c2: HomPoly,
}

impl CurvePair {
    pub fn new(c1: HomPoly, c2: HomPoly) -> Result<Self> {
        let (c1, c2) = if c1.tower().extends(c2.tower()) {
            let t = c1.tower().clone();
            (c1, c2.lift_to(&t))
        } else if c2.tower().extends(c1.tower()) {
            let t = c2.tower().clone();
            (c1.lift_to(&t), c2)
        } else {
            return Err(Error::Invalid("the two curves are defined over unrelated towers".into()));
        };
        for c in [&c1, &c2] {
            if let Some(w) = singular_witness(c)? {
                return Err(Error::SingularCurve(format!("{c}: {w}")));
            }
        }
        if c1.same_curve(&c2)? {
            return Err(Error::Invalid("the two components coincide".into()));
        }
        Ok(CurvePair { c1, c2 })
    }

    pub fn first(&self) -> &HomPoly {
        &self.c1
    }

    pub fn second(&self) -> &HomPoly {
        &self.c2
    }

    pub fn degrees(&self) -> (u32, u32) {
        (self.c1.degree(), self.c2.degree())
    }

    /// The common degree; mixed-degree pairs are rejected.
    pub fn degree(&self) -> Result<u32> {
        match self.degrees() {
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::MixedDegrees(a, b)),
        }
    }

    /// The pair `(s(C1), s(C2))`.
    pub fn image(&self, s: &ProjTransform) -> Result<CurvePair> {
        let back = s.inverse();
        CurvePair::new(self.c1.pullback(&back), self.c2.pullback(&back))
    }
}

/// A transform fixing the lines through `point` with
/// `component(to)(t v) = scalar * component(from)(v)`; components are
/// numbered from 1.
#[derive(Clone, Debug)]
pub struct SgWitness {
    pub point: ProjPoint,
    pub transform: ProjTransform,
    pub scalar: FieldElement,
    pub from: usize,
    pub to: usize,
}

impl SgWitness {
    pub(crate) fn lifted(&self, ext: &Extender) -> SgWitness {
        SgWitness {
            point: lift_point(ext, &self.point),
            transform: lift_transform(ext, &self.transform),
            scalar: ext.lift(&self.scalar),
            ..*self
        }
    }
}

/// Re-checks a witness by substitution.
pub fn verify_witness(ext: &Extender, pair: &CurvePair, w: &SgWitness) -> Result<bool> {
    let comps = [pair.first(), pair.second()];
    let (Some(from), Some(to)) = (comps.get(w.from.wrapping_sub(1)), comps.get(w.to.wrapping_sub(1))) else {
        return Ok(false);
    };
    let w = w.lifted(ext);
    if !preserves_lines_through(&w.transform, &w.point)? {
        return Ok(false);
    }
    let lhs = lift_form(ext, to).pullback(&w.transform);
    let rhs = lift_form(ext, from).poly().scale(&w.scalar);
    Ok(lhs.poly().sub(&rhs).is_zero_checked()?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    /// On every component.
    Inner,
    /// On no component.
    Outer,
    Neither,
}

#[derive(Clone, Debug)]
pub struct SgVerdict {
    pub point: ProjPoint,
    pub kind: PointKind,
    pub is_sg: bool,
    /// Inner points of conics: the projections have degree 1.
    pub trivially_sg: bool,
    pub galois: [GaloisVerdict; 2],
    /// Transforms carrying the second component onto the first.
    pub witnesses: Vec<SgWitness>,
}

pub(crate) fn classify(ext: &Extender, p: &ProjPoint, comps: &[&HomPoly]) -> Result<PointKind> {
    let p = lift_point(ext, p);
    let mut on = 0;
    for c in comps {
        if lift_form(ext, c).contains(&p)? {
            on += 1;
        }
    }
    Ok(match on {
        0 => PointKind::Outer,
        k if k == comps.len() => PointKind::Inner,
        _ => PointKind::Neither,
    })
}

/// Where `p` sits relative to the two components.
pub fn point_kind(ext: &Extender, p: &ProjPoint, pair: &CurvePair) -> Result<PointKind> {
    classify(ext, p, &[pair.first(), pair.second()])
}

/// Decides whether `p` is an SG point of the pair: a Galois point of both
/// components admitting a transform that fixes the lines through `p` and
/// carries the second component onto the first.
pub fn sg_point_check(ext: &mut Extender, p: &ProjPoint, pair: &CurvePair) -> Result<SgVerdict> {
    let d = pair.degree()?;
    let kind = classify(ext, p, &[pair.first(), pair.second()])?;
    let g1 = galois_point_check(ext, p, pair.first())?;
    let g2 = galois_point_check(ext, p, pair.second())?;
    let sols = solve_fiber_transforms(ext, p, pair.second(), pair.first())?;
    let point = lift_point(ext, p);
    let witnesses: Vec<SgWitness> = sols
        .into_iter()
        .map(|s| SgWitness { point: point.clone(), transform: s.transform, scalar: s.scalar, from: 2, to: 1 })
        .collect();
    let is_sg = kind != PointKind::Neither && g1.is_galois && g2.is_galois && !witnesses.is_empty();
    let trivially_sg = d == 2 && kind == PointKind::Inner;
    Ok(SgVerdict { point, kind, is_sg, trivially_sg, galois: [g1.lifted(ext), g2.lifted(ext)], witnesses })
}

/// The SG test for any number of components: every component has `p` as a
/// Galois point and each is carried onto the first by a transform fixing
/// the lines through `p`.
pub fn sg_point_check_components(ext: &mut Extender, p: &ProjPoint, comps: &[HomPoly]) -> Result<bool> {
    let Some(first) = comps.first() else {
        return Err(Error::Invalid("no components".into()));
    };
    if let Some(c) = comps.iter().find(|c| c.degree() != first.degree()) {
        return Err(Error::MixedDegrees(first.degree(), c.degree()));
    }
    let refs: Vec<&HomPoly> = comps.iter().collect();
    if classify(ext, p, &refs)? == PointKind::Neither {
        return Ok(false);
    }
    for c in comps {
        if !galois_point_check(ext, p, c)?.is_galois {
            return Ok(false);
        }
    }
    for c in &comps[1..] {
        if solve_fiber_transforms(ext, p, c, first)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{cyclotomic_field, FieldTower};

    fn flex(t: &FieldTower) -> HomPoly {
        HomPoly::from_int_terms(t, &[(1, [1, 3, 0]), (1, [4, 0, 0]), (1, [0, 0, 4])]).unwrap()
    }

    #[test]
    fn rejects_bad_pairs() {
        let q = FieldTower::rationals();
        let nodal = HomPoly::from_int_terms(&q, &[(1, [0, 2, 1]), (-1, [3, 0, 0]), (-1, [2, 0, 1])]).unwrap();
        assert!(matches!(CurvePair::new(flex(&q), nodal), Err(Error::SingularCurve(_))));
        let scaled = flex(&q).scale(&FieldElement::from_int(&q, 3)).unwrap();
        assert!(matches!(CurvePair::new(flex(&q), scaled), Err(Error::Invalid(_))));
        let cubic = HomPoly::from_int_terms(&q, &[(1, [3, 0, 0]), (1, [0, 3, 0]), (1, [0, 0, 3])]).unwrap();
        let pair = CurvePair::new(flex(&q), cubic).unwrap();
        let mut ext = Extender::new(&q);
        let p = ProjPoint::from_ints(&q, 0, 1, 0).unwrap();
        assert!(matches!(sg_point_check(&mut ext, &p, &pair), Err(Error::MixedDegrees(4, 3))));
    }

    #[test]
    fn quartic_pair_inner_points() {
        let t = cyclotomic_field(4);
        let i = FieldElement::generator(&t, 0);
        let twist = crate::sg::quartic_twist(&i).unwrap();
        let pair = CurvePair::new(flex(&t), flex(&t).pullback(&twist)).unwrap();
        let mut ext = Extender::new(&t);
        let p = ProjPoint::from_ints(&t, 0, 1, 0).unwrap();
        let v = sg_point_check(&mut ext, &p, &pair).unwrap();
        assert!(v.is_sg);
        assert_eq!(v.kind, PointKind::Inner);
        let expected = lift_transform(&ext, &twist);
        assert!(v.witnesses.iter().any(|w| w.transform.same_as(&expected).unwrap()));
        for w in &v.witnesses {
            assert!(verify_witness(&ext, &pair, w).unwrap());
        }
        let p2 = ProjPoint::from_ints(&t, -1, 1, 0).unwrap();
        let v2 = sg_point_check(&mut ext, &p2, &pair).unwrap();
        assert!(v2.is_sg);
        // Witness of the form [[c,0,0],[1-c,1,0],[0,0,1]] with c = i^3.
        let i3 = ext.lift(&i).pow(3);
        assert!(v2.witnesses.iter().any(|w| {
            let m = &w.transform;
            let s = m.entry(2, 2).try_invert().unwrap();
            (m.entry(1, 1) * &s).is_one() && &(m.entry(0, 0) * &s) == &i3
        }));
    }
}
