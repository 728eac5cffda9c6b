//! Machine-readable reports.
//!
//! Every command emits one [`ReportDocument`]. Field elements appear twice:
//! as text in the shell grammar and as their rational coordinate vector
//! over the tower named in `field`, so a document can be read back without
//! reparsing. Point lists are sorted by the canonical order on those
//! vectors.

use serde::{Deserialize, Serialize};

use crate::conic::ConicOuterResult;
use crate::field::{FieldElement, FieldError, FieldTower, Rational};
use crate::geom::{ProjLine, ProjPoint, ProjTransform};
use crate::sg::{Completeness, GaloisVerdict, SgReport, SgVerdict, SgWitness};
use crate::{Error, Result};

pub const REPORT_FORMAT: &str = "sgpoints-report";
pub const REPORT_VERSION: u32 = 1;

/// One field element: its text and its coordinates over the tower basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDoc {
    pub text: String,
    pub coords: Vec<String>,
}

impl ElementDoc {
    pub fn new(e: &FieldElement) -> Self {
        ElementDoc { text: e.to_string(), coords: e.coords().iter().map(|r| r.to_string()).collect() }
    }

    /// Rebuilds the element over `tower`, which must be the document's field.
    pub fn to_element(&self, tower: &FieldTower) -> Result<FieldElement> {
        if self.coords.len() != tower.degree() {
            return Err(Error::Invalid(format!("{} coordinates for a tower of degree {}", self.coords.len(), tower.degree())));
        }
        let coords = self
            .coords
            .iter()
            .map(|s| s.parse::<Rational>().map_err(|_| Error::Invalid(format!("bad rational {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(FieldElement::from_coords(tower, coords))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDoc {
    pub text: String,
    pub coords: [Vec<String>; 3],
}

impl PointDoc {
    pub fn new(p: &ProjPoint) -> Self {
        PointDoc { text: p.to_string(), coords: p.coords().clone().map(|c| ElementDoc::new(&c).coords) }
    }

    pub fn to_point(&self, tower: &FieldTower) -> Result<ProjPoint> {
        let [x, y, z] = self.coords.clone().map(|coords| ElementDoc { text: String::new(), coords }.to_element(tower));
        ProjPoint::new(x?, y?, z?)
    }
}

fn points(list: &[ProjPoint]) -> Vec<PointDoc> {
    let mut v: Vec<&ProjPoint> = list.iter().collect();
    v.sort_by(|a, b| a.canonical_cmp(b));
    v.into_iter().map(PointDoc::new).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineDoc {
    /// Equation, e.g. `X + Z = 0`.
    pub text: String,
    pub coords: [Vec<String>; 3],
}

impl LineDoc {
    pub fn new(l: &ProjLine) -> Self {
        LineDoc { text: l.to_string(), coords: l.coeffs().clone().map(|c| ElementDoc::new(&c).coords) }
    }
}

/// A 3x3 matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub text: String,
    pub entries: Vec<ElementDoc>,
}

impl MatrixDoc {
    pub fn new(t: &ProjTransform) -> Self {
        MatrixDoc { text: t.to_string(), entries: t.matrix().iter().flatten().map(ElementDoc::new).collect() }
    }

    pub fn to_transform(&self, tower: &FieldTower) -> Result<ProjTransform> {
        if self.entries.len() != 9 {
            return Err(Error::Invalid("a matrix has 9 entries".into()));
        }
        let e = self.entries.iter().map(|x| x.to_element(tower)).collect::<Result<Vec<_>>>()?;
        let row = |i: usize| [e[3 * i].clone(), e[3 * i + 1].clone(), e[3 * i + 2].clone()];
        ProjTransform::new([row(0), row(1), row(2)])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplePointDoc {
    pub point: PointDoc,
    pub multiplicity: u32,
}

fn multiple_points(list: &[(ProjPoint, u32)]) -> Vec<MultiplePointDoc> {
    let mut v: Vec<&(ProjPoint, u32)> = list.iter().collect();
    v.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    v.into_iter().map(|(p, m)| MultiplePointDoc { point: PointDoc::new(p), multiplicity: *m }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OuterConicDoc {
    pub point: PointDoc,
    pub tangents: [LineDoc; 2],
}

/// `component(to)(t v) = scalar * component(from)(v)`, components numbered
/// from 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub transform: MatrixDoc,
    pub scalar: ElementDoc,
    pub from: usize,
    pub to: usize,
}

impl WitnessDoc {
    pub fn new(w: &SgWitness) -> Self {
        WitnessDoc { transform: MatrixDoc::new(&w.transform), scalar: ElementDoc::new(&w.scalar), from: w.from, to: w.to }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisDoc {
    pub point: PointDoc,
    pub on_curve: bool,
    pub projection_degree: u32,
    pub is_galois: bool,
    pub group_order: usize,
    pub closed: bool,
    pub cyclic: bool,
    pub group: Vec<MatrixDoc>,
}

impl GaloisDoc {
    pub fn new(v: &GaloisVerdict) -> Self {
        GaloisDoc {
            point: PointDoc::new(&v.point),
            on_curve: v.on_curve,
            projection_degree: v.projection_degree,
            is_galois: v.is_galois,
            group_order: v.group.len(),
            closed: v.closed,
            cyclic: v.cyclic,
            group: v.group.iter().map(MatrixDoc::new).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptorDoc {
    pub component_order: usize,
    pub components: usize,
    pub forms: Vec<String>,
    pub recipe: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SgPointDoc {
    pub point: PointDoc,
    pub kind: String,
    pub component_orders: [usize; 2],
    pub descriptor: DescriptorDoc,
    pub witnesses: Vec<WitnessDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedDoc {
    pub point: PointDoc,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagDoc {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletenessDoc {
    /// `conic`, `knowledge-base` or `heuristic`.
    pub label: String,
    /// Normal forms that supplied the candidates.
    pub forms: Vec<String>,
    pub inner_complete: bool,
    pub outer_complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteRowDoc {
    pub id: u32,
    pub name: String,
    /// `pass`, `fail` or `unresolved`.
    pub status: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReportBody {
    Dual {
        conic: String,
        dual: String,
    },
    Intersect {
        points: Vec<MultiplePointDoc>,
        total_multiplicity: u32,
    },
    SgOuterConics {
        duals: [String; 2],
        dual_points: Vec<MultiplePointDoc>,
        points: Vec<OuterConicDoc>,
    },
    GaloisCheck {
        curve: String,
        verdict: GaloisDoc,
    },
    SgCheck {
        point: PointDoc,
        point_kind: String,
        /// Absent when only a supplied witness was verified.
        is_sg: Option<bool>,
        trivially_sg: bool,
        galois: Vec<GaloisDoc>,
        witnesses: Vec<WitnessDoc>,
        witness_valid: Option<bool>,
    },
    SgEnumerate {
        degree: u32,
        inner: Vec<SgPointDoc>,
        outer: Vec<SgPointDoc>,
        trivially_sg: Vec<PointDoc>,
        candidates: Vec<PointDoc>,
        rejected: Vec<RejectedDoc>,
        completeness: CompletenessDoc,
        flags: Vec<FlagDoc>,
        notes: Vec<String>,
        unresolved: Vec<String>,
    },
    PaperSuite {
        rows: Vec<SuiteRowDoc>,
        all_pass: bool,
    },
    Error {
        error_kind: String,
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub format: String,
    pub version: u32,
    pub command: String,
    /// Declaration of the tower all coordinates refer to.
    pub field: String,
    pub exit_code: i32,
    pub result: ReportBody,
}

impl ReportDocument {
    pub fn new(command: &str, field: &str, exit_code: i32, result: ReportBody) -> Self {
        ReportDocument {
            format: REPORT_FORMAT.into(),
            version: REPORT_VERSION,
            command: command.into(),
            field: field.into(),
            exit_code,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Invalid(format!("not a report document: {e}")))
    }
}

pub fn outer_conics_body(r: &ConicOuterResult) -> ReportBody {
    let mut pts: Vec<&crate::conic::OuterConicPoint> = r.points.iter().collect();
    pts.sort_by(|a, b| a.point.canonical_cmp(&b.point));
    ReportBody::SgOuterConics {
        duals: [r.dual_first.form().to_string(), r.dual_second.form().to_string()],
        dual_points: multiple_points(&r.dual_points),
        points: pts
            .into_iter()
            .map(|o| OuterConicDoc { point: PointDoc::new(&o.point), tangents: o.tangents.clone().map(|l| LineDoc::new(&l)) })
            .collect(),
    }
}

pub fn intersect_body(pts: &[(ProjPoint, u32)]) -> ReportBody {
    ReportBody::Intersect { points: multiple_points(pts), total_multiplicity: pts.iter().map(|p| p.1).sum() }
}

fn kind_name(k: crate::sg::PointKind) -> String {
    serde_json::to_value(k).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

pub fn sg_check_body(v: &SgVerdict) -> ReportBody {
    ReportBody::SgCheck {
        point: PointDoc::new(&v.point),
        point_kind: kind_name(v.kind),
        is_sg: Some(v.is_sg),
        trivially_sg: v.trivially_sg,
        galois: v.galois.iter().map(GaloisDoc::new).collect(),
        witnesses: v.witnesses.iter().map(WitnessDoc::new).collect(),
        witness_valid: None,
    }
}

pub fn enumerate_body(r: &SgReport) -> ReportBody {
    let entries = |v: &[crate::sg::SgPointReport]| -> Vec<SgPointDoc> {
        let mut v: Vec<&crate::sg::SgPointReport> = v.iter().collect();
        v.sort_by(|a, b| a.point.canonical_cmp(&b.point));
        v.into_iter()
            .map(|e| SgPointDoc {
                point: PointDoc::new(&e.point),
                kind: kind_name(e.kind),
                component_orders: e.component_orders,
                descriptor: DescriptorDoc {
                    component_order: e.descriptor.component_order,
                    components: e.descriptor.components,
                    forms: e.descriptor.forms.clone(),
                    recipe: e.descriptor.recipe.clone(),
                },
                witnesses: e.witnesses.iter().map(WitnessDoc::new).collect(),
            })
            .collect()
    };
    let (label, forms) = match &r.completeness {
        Completeness::Conic => ("conic", Vec::new()),
        Completeness::KnowledgeBase(f) => ("knowledge-base", f.clone()),
        Completeness::Heuristic => ("heuristic", Vec::new()),
    };
    let mut rejected: Vec<&crate::sg::Rejected> = r.rejected.iter().collect();
    rejected.sort_by(|a, b| a.point.canonical_cmp(&b.point));
    ReportBody::SgEnumerate {
        degree: r.degree,
        inner: entries(&r.inner),
        outer: entries(&r.outer),
        trivially_sg: points(&r.trivially_sg),
        candidates: points(&r.candidates),
        rejected: rejected.into_iter().map(|x| RejectedDoc { point: PointDoc::new(&x.point), reason: x.reason.clone() }).collect(),
        completeness: CompletenessDoc {
            label: label.into(),
            forms,
            inner_complete: r.inner_complete,
            outer_complete: r.outer_complete,
        },
        flags: r.flags.iter().map(|f| FlagDoc { name: f.name.clone(), holds: f.holds }).collect(),
        notes: r.notes.clone(),
        unresolved: r.unresolved.clone(),
    }
}

/// Exit status for a successful run whose answer is "no".
pub const EXIT_NEGATIVE: i32 = 1;
/// Bad input or a module error.
pub const EXIT_ERROR: i32 = 2;
/// The answer could not be decided inside the reachable tower.
pub const EXIT_UNRESOLVED: i32 = 3;

/// Stable machine name of an error.
pub fn error_kind(e: &Error) -> &'static str {
    if e.is_unresolved() {
        return "unresolved";
    }
    match e {
        Error::Field(FieldError::TowerMismatch) => "tower-mismatch",
        Error::Field(FieldError::DivisionByZero) => "division-by-zero",
        Error::Field(FieldError::ZeroDivisor(_)) => "zero-divisor",
        Error::Field(FieldError::NotMonic)
        | Error::Field(FieldError::NotSquarefree(_))
        | Error::Field(FieldError::DegreeTooLow)
        | Error::Field(FieldError::DuplicateName(_)) => "bad-field",
        Error::Field(_) => "field",
        Error::NotHomogeneous => "not-homogeneous",
        Error::ZeroVector => "zero-vector",
        Error::CoincidentPoints => "coincident-points",
        Error::Singular => "singular-matrix",
        Error::SingularConic => "singular-conic",
        Error::CoincidentConics => "coincident-conics",
        Error::SingularCurve(_) => "singular-curve",
        Error::MixedDegrees(..) => "mixed-degrees",
        Error::NoCandidateSource => "no-candidate-source",
        Error::PositiveDimensional => "positive-dimensional",
        Error::WrongDegree { .. } => "wrong-degree",
        Error::Syntax { .. } => "syntax",
        Error::UnknownGenerator(_) => "unknown-generator",
        Error::Invalid(_) => "invalid",
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    if e.is_unresolved() {
        EXIT_UNRESOLVED
    } else {
        EXIT_ERROR
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shell::{parse_point, FieldDecl};

    #[test]
    fn documents_round_trip() {
        let d = FieldDecl::parse("Q(zeta12)").unwrap();
        let p = parse_point("(zeta4 - 1/2 : w : 1)", &d).unwrap();
        let doc = PointDoc::new(&p);
        assert_eq!(doc.to_point(d.tower()).unwrap(), p);
        let body = ReportBody::Intersect {
            points: vec![MultiplePointDoc { point: doc, multiplicity: 2 }],
            total_multiplicity: 2,
        };
        let r = ReportDocument::new("intersect", &d.declaration(), 0, body);
        let back = ReportDocument::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), r.to_json());
        let t = ProjTransform::from_ints(d.tower(), [[1, 0, 0], [2, 3, 0], [0, 0, 1]]).unwrap();
        assert_eq!(MatrixDoc::new(&t).to_transform(d.tower()).unwrap(), t);
    }
}
