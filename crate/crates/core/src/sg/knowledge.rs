//! Curves whose Galois points are known in closed form.

use crate::field::{Extender, FieldElement};
use crate::geom::{ProjPoint, ProjTransform};
use crate::poly::{HomPoly, MPoly};
use crate::sg::fiber::lift_form;
use crate::{Error, Result};

/// Galois points of one kind on a known curve.
#[derive(Clone, Debug)]
pub enum GaloisSet {
    Finite(Vec<ProjPoint>),
    /// Every point of the curve (smooth cubics: inner projections have degree 2).
    WholeCurve,
}

#[derive(Clone, Debug)]
pub struct NormalForm {
    pub name: String,
    pub curve: HomPoly,
    pub inner: GaloisSet,
    pub outer: Vec<ProjPoint>,
}

#[derive(Clone, Debug)]
pub struct KnowledgeBase {
    pub degree: u32,
    pub forms: Vec<NormalForm>,
    pub notes: Vec<String>,
}

impl KnowledgeBase {
    /// The entry whose curve equals `c` up to a scalar.
    pub fn lookup(&self, ext: &Extender, c: &HomPoly) -> Result<Option<&NormalForm>> {
        if c.degree() != self.degree {
            return Ok(None);
        }
        let c = lift_form(ext, c);
        for f in &self.forms {
            if lift_form(ext, &f.curve).same_curve(&c)? {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }
}

fn form(ext: &Extender, terms: &[(FieldElement, [u32; 3])]) -> HomPoly {
    HomPoly::new(MPoly::from_terms(ext.tower(), 3, terms.iter().map(|(c, e)| (e.to_vec(), ext.lift(c)))))
        .expect("normal forms are homogeneous")
}

fn coordinate_points(ext: &Extender) -> Result<Vec<ProjPoint>> {
    let t = ext.tower();
    Ok(vec![ProjPoint::from_ints(t, 0, 0, 1)?, ProjPoint::from_ints(t, 0, 1, 0)?, ProjPoint::from_ints(t, 1, 0, 0)?])
}

/// The shear `(X, Y, Z) -> (X, (a - 1) X + a Y, Z)`.
pub fn quartic_twist(a: &FieldElement) -> Result<ProjTransform> {
    let t = a.tower();
    let one = FieldElement::one(t);
    let zero = FieldElement::zero(t);
    ProjTransform::new([
        [one.clone(), zero.clone(), zero.clone()],
        [a - &one, a.clone(), zero.clone()],
        [zero.clone(), zero, one],
    ])
}

/// Normal forms of degree `d` with their Galois points. Enlarges the
/// extender's tower to hold the points (cube and fourth roots of unity for
/// quartics).
pub fn knowledge_base(ext: &mut Extender, d: u32) -> Result<KnowledgeBase> {
    if d < 3 {
        return Err(Error::WrongDegree { expected: 3, got: d });
    }
    if d == 4 {
        ext.ensure_roots_of_unity(12)?;
    }
    let t = ext.tower().clone();
    let one = FieldElement::one(&t);
    let mut forms = Vec::new();
    let mut notes = Vec::new();

    let fermat = form(ext, &[(one.clone(), [d, 0, 0]), (one.clone(), [0, d, 0]), (one.clone(), [0, 0, d])]);
    forms.push(NormalForm {
        name: format!("X^{d} + Y^{d} + Z^{d}"),
        curve: fermat,
        inner: if d == 3 { GaloisSet::WholeCurve } else { GaloisSet::Finite(Vec::new()) },
        outer: coordinate_points(ext)?,
    });
    if d == 3 {
        notes.push("every point of a smooth cubic is an inner Galois point".into());
        return Ok(KnowledgeBase { degree: d, forms, notes });
    }

    let flex = form(ext, &[(one.clone(), [1, d - 1, 0]), (one.clone(), [d, 0, 0]), (one.clone(), [0, 0, d])]);
    let origin = ProjPoint::from_ints(&t, 0, 0, 1)?;
    let top = ProjPoint::from_ints(&t, 0, 1, 0)?;
    if d == 4 {
        let w = FieldElement::generator(&t, 0).pow(4);
        let inner = vec![
            top.clone(),
            ProjPoint::from_ints(&t, -1, 1, 0)?,
            ProjPoint::new(-&w, one.clone(), FieldElement::zero(&t))?,
            ProjPoint::new(-&(&w * &w), one.clone(), FieldElement::zero(&t))?,
        ];
        forms.push(NormalForm {
            name: "X*Y^3 + X^4 + Z^4".into(),
            curve: flex.clone(),
            inner: GaloisSet::Finite(inner.clone()),
            outer: vec![origin.clone()],
        });
        // The twists are images of the flex quartic, so their Galois points
        // are the preimages of its Galois points.
        let i = FieldElement::generator(&t, 0).pow(3);
        for j in 1..=3u64 {
            let s = quartic_twist(&i.pow(j))?;
            let back = s.inverse();
            let pts = inner.iter().map(|p| back.apply(p)).collect::<Result<Vec<_>>>()?;
            forms.push(NormalForm {
                name: format!("quartic twist {j}: X*((i^{j} - 1)*X + i^{j}*Y)^3 + X^4 + Z^4"),
                curve: flex.pullback(&s),
                inner: GaloisSet::Finite(pts),
                outer: vec![back.apply(&origin)?],
            });
        }
        notes.push(
            "a quartic pair with at least two inner SG points is, after a coordinate change, the flex quartic \
             X*Y^3 + X^4 + Z^4 together with one of its three twists; its inner SG points are then exactly \
             (0:1:0) and (-1:1:0)"
                .into(),
        );
        notes.push("a smooth quartic has no inner Galois points once it has three outer ones".into());
    } else {
        forms.push(NormalForm {
            name: format!("X*Y^{} + X^{d} + Z^{d}", d - 1),
            curve: flex,
            inner: GaloisSet::Finite(vec![top]),
            outer: vec![origin],
        });
    }
    Ok(KnowledgeBase { degree: d, forms, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldTower;

    #[test]
    fn quartic_entries() {
        let mut ext = Extender::new(&FieldTower::rationals());
        let kb = knowledge_base(&mut ext, 4).unwrap();
        assert_eq!(kb.forms.len(), 5);
        for f in &kb.forms {
            if let GaloisSet::Finite(pts) = &f.inner {
                for p in pts {
                    assert!(f.curve.contains(p).unwrap(), "{} should contain {p}", f.name);
                }
            }
            for p in &f.outer {
                assert!(!f.curve.contains(p).unwrap());
            }
        }
        let second = HomPoly::from_int_terms(
            &FieldTower::rationals(),
            &[(-7, [4, 0, 0]), (-12, [3, 1, 0]), (-6, [2, 2, 0]), (-1, [1, 3, 0]), (1, [0, 0, 4])],
        )
        .unwrap();
        let hit = kb.lookup(&ext, &second).unwrap().unwrap();
        assert!(hit.name.starts_with("quartic twist 2"));
    }

    #[test]
    fn higher_degree_entries() {
        let mut ext = Extender::new(&FieldTower::rationals());
        let kb = knowledge_base(&mut ext, 6).unwrap();
        assert_eq!(kb.forms.len(), 2);
        assert_eq!(kb.forms[1].curve.to_string(), "X^6 + X*Y^5 + Z^6");
        assert_eq!(ext.tower().degree(), 1);
    }
}
