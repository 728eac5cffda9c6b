//! Galois points of a single curve, and the group descriptors of SG points.

use crate::field::Extender;
use crate::geom::{ProjPoint, ProjTransform};
use crate::poly::HomPoly;
use crate::sg::fiber::{lift_form, lift_point, lift_transform, solve_fiber_transforms};
use crate::Result;

/// Outcome of [`galois_point_check`]. Transforms are in the extender's
/// tower at the time the check returned.
#[derive(Clone, Debug)]
pub struct GaloisVerdict {
    pub point: ProjPoint,
    pub on_curve: bool,
    /// Degree of the projection from the point: d off the curve, d - 1 on it.
    pub projection_degree: u32,
    pub is_galois: bool,
    /// Every transform preserving the lines through the point and the curve.
    pub group: Vec<ProjTransform>,
    /// The group is closed under composition.
    pub closed: bool,
    pub cyclic: bool,
}

impl GaloisVerdict {
    pub(crate) fn lifted(&self, ext: &Extender) -> GaloisVerdict {
        GaloisVerdict {
            point: lift_point(ext, &self.point),
            group: self.group.iter().map(|t| lift_transform(ext, t)).collect(),
            ..self.clone()
        }
    }
}

fn position(group: &[ProjTransform], t: &ProjTransform) -> Result<Option<usize>> {
    for (i, g) in group.iter().enumerate() {
        if g.same_as(t)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Order of `t` if it is at most `bound`.
pub fn transform_order(t: &ProjTransform, bound: usize) -> Result<Option<usize>> {
    let mut acc = t.clone();
    for k in 1..=bound {
        if acc.is_identity()? {
            return Ok(Some(k));
        }
        acc = acc.compose(t);
    }
    Ok(None)
}

/// Checks closure under composition and looks for an element whose order
/// is the group order.
pub fn group_structure(group: &[ProjTransform]) -> Result<(bool, bool)> {
    for a in group {
        for b in group {
            if position(group, &a.compose(b))?.is_none() {
                return Ok((false, false));
            }
        }
    }
    let mut cyclic = false;
    for g in group {
        if transform_order(g, group.len())? == Some(group.len()) {
            cyclic = true;
            break;
        }
    }
    Ok((true, cyclic))
}

/// Decides whether `p` is a Galois point of the nonsingular curve `c`: the
/// projection from `p` is Galois exactly when its degree equals the number
/// of transforms fixing the lines through `p` and preserving `c`.
/// Projections of degree at most two are always Galois.
pub fn galois_point_check(ext: &mut Extender, p: &ProjPoint, c: &HomPoly) -> Result<GaloisVerdict> {
    let on_curve = lift_form(ext, c).contains(&lift_point(ext, p))?;
    let projection_degree = c.degree() - u32::from(on_curve);
    let sols = solve_fiber_transforms(ext, p, c, c)?;
    let group: Vec<ProjTransform> = sols.into_iter().map(|s| s.transform.normalized()).collect::<Result<_>>()?;
    let (closed, cyclic) = group_structure(&group)?;
    let is_galois = projection_degree <= 2 || (closed && group.len() == projection_degree as usize);
    Ok(GaloisVerdict { point: lift_point(ext, p), on_curve, projection_degree, is_galois, group, closed, cyclic })
}

/// Both descriptions of the Galois group at an SG point of an
/// `components`-component curve whose components have Galois group `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDescriptor {
    pub component_order: usize,
    pub components: usize,
    pub forms: Vec<String>,
    pub recipe: String,
}

pub fn group_descriptor(component_order: usize, components: usize, component_cyclic: bool) -> GroupDescriptor {
    let h = if component_cyclic { format!("Z/{component_order}") } else { format!("H (order {component_order})") };
    let (forms, recipe) = if components <= 1 {
        (vec![h.clone()], format!("the component group {h} itself"))
    } else {
        let mut forms = vec![format!("{h} x Z/{components}")];
        if component_cyclic {
            forms.push(format!("Z/{}", component_order * components));
        }
        let recipe = format!(
            "generate by the cyclic shift of the {components} components together with a generator of {h} \
             acting on one of them; the shift composed with that twist has order {}",
            component_order * components
        );
        (forms, recipe)
    };
    GroupDescriptor { component_order, components, forms, recipe }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldTower;

    fn q() -> FieldTower {
        FieldTower::rationals()
    }

    fn fermat(d: u32) -> HomPoly {
        HomPoly::from_int_terms(&q(), &[(1, [d, 0, 0]), (1, [0, d, 0]), (1, [0, 0, d])]).unwrap()
    }

    #[test]
    fn fermat_quartic_outer_points() {
        let c = fermat(4);
        let mut ext = Extender::new(&q());
        let v = galois_point_check(&mut ext, &ProjPoint::from_ints(&q(), 0, 0, 1).unwrap(), &c).unwrap();
        assert!(v.is_galois && v.cyclic && v.closed && !v.on_curve);
        assert_eq!(v.group.len(), 4);
        let v = galois_point_check(&mut ext, &ProjPoint::from_ints(&q(), 1, 1, 1).unwrap(), &c).unwrap();
        assert!(!v.is_galois);
        assert_eq!(v.group.len(), 1);
    }

    #[test]
    fn flex_quartic_inner_point() {
        let c = HomPoly::from_int_terms(&q(), &[(1, [1, 3, 0]), (1, [4, 0, 0]), (1, [0, 0, 4])]).unwrap();
        let mut ext = Extender::new(&q());
        let v = galois_point_check(&mut ext, &ProjPoint::from_ints(&q(), 0, 1, 0).unwrap(), &c).unwrap();
        assert!(v.on_curve && v.is_galois && v.cyclic);
        assert_eq!(v.projection_degree, 3);
    }

    #[test]
    fn degree_two_projections_are_galois() {
        let mut ext = Extender::new(&q());
        let v = galois_point_check(&mut ext, &ProjPoint::from_ints(&q(), 1, -1, 0).unwrap(), &fermat(3)).unwrap();
        assert!(v.on_curve && v.is_galois);
        assert_eq!(v.group.len(), 2);
    }

    #[test]
    fn descriptors() {
        assert_eq!(group_descriptor(2, 2, true).forms, ["Z/2 x Z/2", "Z/4"]);
        assert_eq!(group_descriptor(3, 2, true).forms, ["Z/3 x Z/2", "Z/6"]);
        assert_eq!(group_descriptor(5, 1, true).forms, ["Z/5"]);
    }
}
