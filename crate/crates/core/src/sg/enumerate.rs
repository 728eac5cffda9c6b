//! Enumeration of the SG points of a pair of curves.

use crate::conic::{intersect_conics_in, sg_outer_conics_in, Conic};
use crate::field::{Extender, FieldTower};
use crate::geom::{ProjPoint, ProjTransform};
use crate::sg::check::{sg_point_check, CurvePair, PointKind, SgVerdict, SgWitness};
use crate::sg::fiber::{lift_form, lift_point, lift_transform};
use crate::sg::galois::{group_descriptor, GroupDescriptor};
use crate::sg::knowledge::{knowledge_base, GaloisSet, NormalForm};
use crate::{Error, Result};

#[derive(Clone, Debug, Default)]
pub struct EnumerateOptions {
    /// Extra points to test; the only source when no normal form matches.
    pub candidates: Option<Vec<ProjPoint>>,
    /// A transform `N` such that `N(C1)` or `N(C2)` is a known normal form.
    pub normalizer: Option<ProjTransform>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completeness {
    /// Conic pairs are handled completely by duality.
    Conic,
    /// Candidates were the known Galois points of the named normal forms.
    KnowledgeBase(Vec<String>),
    /// Candidates came from the caller; other SG points may exist.
    Heuristic,
}

#[derive(Clone, Debug)]
pub struct SgPointReport {
    pub point: ProjPoint,
    pub kind: PointKind,
    pub witnesses: Vec<SgWitness>,
    /// Galois group orders of the two components at the point.
    pub component_orders: [usize; 2],
    pub descriptor: GroupDescriptor,
}

#[derive(Clone, Debug)]
pub struct ComponentVerdict {
    pub point: ProjPoint,
    pub component: usize,
    pub projection_degree: u32,
    pub is_galois: bool,
    pub group_order: usize,
    pub cyclic: bool,
}

#[derive(Clone, Debug)]
pub struct TheoremFlag {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct Rejected {
    pub point: ProjPoint,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct SgReport {
    pub tower: FieldTower,
    pub degree: u32,
    pub inner: Vec<SgPointReport>,
    pub outer: Vec<SgPointReport>,
    /// Inner points of conic pairs, SG for the degenerate reason that the
    /// projections have degree 1; not counted.
    pub trivially_sg: Vec<ProjPoint>,
    pub candidates: Vec<ProjPoint>,
    pub rejected: Vec<Rejected>,
    pub galois_verdicts: Vec<ComponentVerdict>,
    pub completeness: Completeness,
    pub inner_complete: bool,
    pub outer_complete: bool,
    pub flags: Vec<TheoremFlag>,
    pub notes: Vec<String>,
    pub unresolved: Vec<String>,
}

impl SgReport {
    /// Count flags that fail; any entry here is an internal error.
    pub fn violations(&self) -> Vec<&TheoremFlag> {
        self.flags.iter().filter(|f| !f.holds).collect()
    }

    pub fn inner_points(&self) -> Vec<&ProjPoint> {
        self.inner.iter().map(|e| &e.point).collect()
    }

    pub fn outer_points(&self) -> Vec<&ProjPoint> {
        self.outer.iter().map(|e| &e.point).collect()
    }
}

fn contains_point(list: &[ProjPoint], p: &ProjPoint, ext: &Extender) -> Result<bool> {
    let p = lift_point(ext, p);
    for q in list {
        if lift_point(ext, q).same_as(&p)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn push_unique(list: &mut Vec<ProjPoint>, p: ProjPoint, ext: &Extender) -> Result<()> {
    if !contains_point(list, &p, ext)? {
        list.push(p);
    }
    Ok(())
}

/// Points of `first` that also occur in each of `others`.
fn intersect_sets(ext: &Extender, first: &[ProjPoint], others: &[&[ProjPoint]]) -> Result<Vec<ProjPoint>> {
    let mut out = Vec::new();
    'outer: for p in first {
        for o in others {
            if !contains_point(o, p, ext)? {
                continue 'outer;
            }
        }
        out.push(p.clone());
    }
    Ok(out)
}

fn rejection_reason(v: &SgVerdict) -> String {
    if v.kind == PointKind::Neither {
        return "lies on exactly one component".into();
    }
    for (k, g) in v.galois.iter().enumerate() {
        if !g.is_galois {
            return format!(
                "not a Galois point of component {}: {} transforms for a projection of degree {}",
                k + 1,
                g.group.len(),
                g.projection_degree
            );
        }
    }
    "no transform fixing the lines through the point carries the second component onto the first".into()
}

fn record(ext: &Extender, v: SgVerdict, report: &mut SgReport) {
    for (k, g) in v.galois.iter().enumerate() {
        report.galois_verdicts.push(ComponentVerdict {
            point: v.point.clone(),
            component: k + 1,
            projection_degree: g.projection_degree,
            is_galois: g.is_galois,
            group_order: g.group.len(),
            cyclic: g.cyclic,
        });
    }
    if !v.is_sg {
        report.rejected.push(Rejected { point: v.point.clone(), reason: rejection_reason(&v) });
        return;
    }
    let orders = [v.galois[0].group.len(), v.galois[1].group.len()];
    let cyclic = v.galois.iter().all(|g| g.cyclic);
    let entry = SgPointReport {
        point: lift_point(ext, &v.point),
        kind: v.kind,
        witnesses: v.witnesses,
        component_orders: orders,
        descriptor: group_descriptor(orders[0], 2, cyclic),
    };
    match v.kind {
        PointKind::Inner => report.inner.push(entry),
        _ => report.outer.push(entry),
    }
}

fn empty_report(ext: &Extender, degree: u32, completeness: Completeness) -> SgReport {
    SgReport {
        tower: ext.tower().clone(),
        degree,
        inner: Vec::new(),
        outer: Vec::new(),
        trivially_sg: Vec::new(),
        candidates: Vec::new(),
        rejected: Vec::new(),
        galois_verdicts: Vec::new(),
        completeness,
        inner_complete: false,
        outer_complete: false,
        flags: Vec::new(),
        notes: Vec::new(),
        unresolved: Vec::new(),
    }
}

/// All SG points of the pair that can be certified: complete for conics
/// and for pairs with a component in normal form (possibly after the
/// normalizer), candidate-based otherwise.
pub fn sg_enumerate(ext: &mut Extender, pair: &CurvePair, opts: &EnumerateOptions) -> Result<SgReport> {
    let d = pair.degree()?;
    let mut report = if d == 2 { enumerate_conics(ext, pair)? } else { enumerate_by_candidates(ext, pair, opts, d)? };
    finish(ext, &mut report);
    Ok(report)
}

fn enumerate_conics(ext: &mut Extender, pair: &CurvePair) -> Result<SgReport> {
    let c1 = Conic::new(pair.first().clone())?;
    let c2 = Conic::new(pair.second().clone())?;
    let outer = sg_outer_conics_in(ext, &c1, &c2)?;
    let meets = intersect_conics_in(ext, &c1, &c2)?;
    let mut report = empty_report(ext, 2, Completeness::Conic);
    report.inner_complete = true;
    report.outer_complete = true;
    report.trivially_sg = meets.into_iter().map(|(p, _)| p).collect();
    for o in outer.points {
        report.candidates.push(o.point.clone());
        let v = sg_point_check(ext, &o.point, pair)?;
        record(ext, v, &mut report);
    }
    Ok(report)
}

fn enumerate_by_candidates(
    ext: &mut Extender,
    pair: &CurvePair,
    opts: &EnumerateOptions,
    d: u32,
) -> Result<SgReport> {
    let kb = knowledge_base(ext, d)?;
    // With normalizer N, the normalized curve N(C) has form C o N^-1.
    let from_normal = opts.normalizer.as_ref().map(|n| lift_transform(ext, n).inverse());
    let normalized = |c: &crate::poly::HomPoly| {
        let c = lift_form(ext, c);
        match &from_normal {
            Some(inv) => c.pullback(inv),
            None => c,
        }
    };
    let n1 = normalized(pair.first());
    let n2 = normalized(pair.second());
    let matches: Vec<&NormalForm> = [kb.lookup(ext, &n1)?, kb.lookup(ext, &n2)?].into_iter().flatten().collect();

    let mut report;
    let mut candidates: Vec<ProjPoint> = Vec::new();
    if matches.is_empty() {
        if opts.candidates.is_none() {
            return Err(Error::NoCandidateSource);
        }
        report = empty_report(ext, d, Completeness::Heuristic);
    } else {
        report = empty_report(ext, d, Completeness::KnowledgeBase(matches.iter().map(|m| m.name.clone()).collect()));
        report.notes = kb.notes.clone();
        let finite: Vec<&[ProjPoint]> = matches
            .iter()
            .filter_map(|m| match &m.inner {
                GaloisSet::Finite(v) => Some(v.as_slice()),
                GaloisSet::WholeCurve => None,
            })
            .collect();
        let mut normal_candidates = Vec::new();
        if let Some((first, rest)) = finite.split_first() {
            normal_candidates.extend(intersect_sets(ext, first, rest)?);
            report.inner_complete = true;
        } else {
            report.notes.push("inner SG points of cubic pairs are not enumerated".into());
        }
        let outers: Vec<&[ProjPoint]> = matches.iter().map(|m| m.outer.as_slice()).collect();
        normal_candidates.extend(intersect_sets(ext, outers[0], &outers[1..])?);
        report.outer_complete = true;
        for q in normal_candidates {
            let p = match &from_normal {
                Some(inv) => inv.apply(&lift_point(ext, &q))?,
                None => q,
            };
            push_unique(&mut candidates, p, ext)?;
        }
    }
    if let Some(extra) = &opts.candidates {
        for p in extra {
            push_unique(&mut candidates, p.clone(), ext)?;
        }
    }
    report.candidates = candidates.clone();
    for p in &candidates {
        match sg_point_check(ext, p, pair) {
            Ok(v) => record(ext, v, &mut report),
            Err(e) if e.is_unresolved() => report.unresolved.push(format!("{p}: {e}")),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

fn finish(ext: &Extender, r: &mut SgReport) {
    r.tower = ext.tower().clone();
    let lift_entries = |v: &mut Vec<SgPointReport>| {
        for e in v.iter_mut() {
            e.point = lift_point(ext, &e.point);
            e.witnesses = e.witnesses.iter().map(|w| w.lifted(ext)).collect();
        }
        v.sort_by(|a, b| a.point.canonical_cmp(&b.point));
    };
    lift_entries(&mut r.inner);
    lift_entries(&mut r.outer);
    for list in [&mut r.trivially_sg, &mut r.candidates] {
        for p in list.iter_mut() {
            *p = lift_point(ext, p);
        }
        list.sort_by(|a, b| a.canonical_cmp(b));
    }
    for x in &mut r.rejected {
        x.point = lift_point(ext, &x.point);
    }
    for x in &mut r.galois_verdicts {
        x.point = lift_point(ext, &x.point);
    }

    let (ni, no) = (r.inner.len(), r.outer.len());
    let d = r.degree;
    let mut flag = |name: &str, holds: bool| r.flags.push(TheoremFlag { name: name.into(), holds });
    flag("inner points lie on both components", r.inner.iter().all(|e| e.kind == PointKind::Inner));
    flag("outer points lie on neither component", r.outer.iter().all(|e| e.kind == PointKind::Outer));
    if d == 2 {
        flag("conic pairs have 0, 1, 3 or 6 outer SG points", [0, 1, 3, 6].contains(&no));
    } else {
        flag("at most one outer SG point", no <= 1);
    }
    if d == 4 {
        flag("at most two inner SG points", ni <= 2);
    }
    if d >= 5 {
        flag("at most one inner SG point", ni <= 1);
    }
    if d >= 4 {
        flag("inner and outer SG points never both occur", ni == 0 || no == 0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{cyclotomic_field, FieldElement};
    use crate::poly::HomPoly;

    #[test]
    fn fermat_cubic_and_its_sign_twist() {
        let q = FieldTower::rationals();
        let f = HomPoly::from_int_terms(&q, &[(1, [3, 0, 0]), (1, [0, 3, 0]), (1, [0, 0, 3])]).unwrap();
        let g = HomPoly::from_int_terms(&q, &[(1, [3, 0, 0]), (-1, [0, 3, 0]), (1, [0, 0, 3])]).unwrap();
        let pair = CurvePair::new(f, g).unwrap();
        let mut ext = Extender::new(&q);
        let r = sg_enumerate(&mut ext, &pair, &EnumerateOptions::default()).unwrap();
        assert_eq!(r.outer.len(), 1);
        assert!(r.outer[0].point.same_as(&ProjPoint::from_ints(&r.tower, 0, 1, 0).unwrap()).unwrap());
        assert!(r.outer_complete && !r.inner_complete);
        assert!(r.violations().is_empty());
        assert_eq!(r.outer[0].descriptor.forms, ["Z/3 x Z/2", "Z/6"]);
    }

    #[test]
    fn no_source_is_an_error() {
        let q = FieldTower::rationals();
        let a = HomPoly::from_int_terms(&q, &[(1, [3, 0, 0]), (2, [0, 3, 0]), (1, [0, 0, 3])]).unwrap();
        let b = HomPoly::from_int_terms(&q, &[(1, [3, 0, 0]), (3, [0, 3, 0]), (1, [0, 0, 3])]).unwrap();
        let pair = CurvePair::new(a, b).unwrap();
        let mut ext = Extender::new(&q);
        assert!(matches!(sg_enumerate(&mut ext, &pair, &EnumerateOptions::default()), Err(Error::NoCandidateSource)));
        let opts = EnumerateOptions {
            candidates: Some(vec![ProjPoint::from_ints(&q, 0, 1, 0).unwrap(), ProjPoint::from_ints(&q, 1, 1, 1).unwrap()]),
            normalizer: None,
        };
        let r = sg_enumerate(&mut ext, &pair, &opts).unwrap();
        assert_eq!(r.completeness, Completeness::Heuristic);
        assert_eq!(r.outer.len(), 1);
        assert_eq!(r.rejected.len(), 1);
    }

    #[test]
    fn normalizer_moves_candidates_back() {
        // Swap X and Y in the quartic pair with two inner SG points.
        let t = cyclotomic_field(4);
        let i = FieldElement::generator(&t, 0);
        let flex = HomPoly::from_int_terms(&t, &[(1, [1, 3, 0]), (1, [4, 0, 0]), (1, [0, 0, 4])]).unwrap();
        let twist = crate::sg::quartic_twist(&i).unwrap();
        let swap = ProjTransform::permutation(&t, [1, 0, 2]);
        let pair = CurvePair::new(flex.pullback(&swap), flex.pullback(&twist).pullback(&swap)).unwrap();
        let mut ext = Extender::new(&t);
        let opts = EnumerateOptions { candidates: None, normalizer: Some(swap.clone()) };
        let r = sg_enumerate(&mut ext, &pair, &opts).unwrap();
        let mut got: Vec<String> = r.inner.iter().map(|e| e.point.to_string()).collect();
        got.sort();
        assert_eq!(got, ["(-1:1:0)", "(1:0:0)"]);
        assert!(r.outer.is_empty() && r.inner_complete);
    }
}
