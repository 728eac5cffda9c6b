//! The regression suite behind `sgpoints paper-suite`: every worked example
//! and theorem-level check, with fixed seeds for the randomized parts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conic::{dual_conic, sg_outer_conics_in, Conic};
use crate::field::{Extender, FieldElement, FieldTower, Rational};
use crate::geom::{ProjLine, ProjPoint, ProjTransform};
use crate::poly::HomPoly;
use crate::sg::{
    galois_point_check, sg_enumerate, sg_point_check, sg_point_check_components, solve_fiber_transforms,
    solve_two_center_transforms, CurvePair, EnumerateOptions, SgReport,
};
use crate::shell::{parse_form, parse_point, FieldDecl};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteStatus {
    Pass,
    Fail,
    Unresolved,
}

impl SuiteStatus {
    pub fn label(self) -> &'static str {
        match self {
            SuiteStatus::Pass => "PASS",
            SuiteStatus::Fail => "FAIL",
            SuiteStatus::Unresolved => "UNRESOLVED",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteRow {
    pub id: u32,
    pub name: &'static str,
    pub status: SuiteStatus,
    pub detail: String,
}

pub const SUITE_SIZE: u32 = 11;

const NAMES: [&str; SUITE_SIZE as usize] = [
    "two circles: duals, common tangents, three outer SG points",
    "tangent conics: one common tangent, no outer SG point",
    "circle and a second conic: one outer SG point",
    "conic family: six outer SG points for every pair and for n = 2, 3, 4",
    "Fermat curves d = 3, 4, 5: outer Galois points are the coordinate points",
    "diagonal Fermat families d = 3, 4, n = 2, 3: outer SG set {(0:1:0)}",
    "two-center transforms on XY^3 + X^4 + Z^4",
    "quartic pairs: inner SG set {(0:1:0), (-1:1:0)}; Fermat control fails",
    "quintic pair: inner SG set {(0:1:0)}; never both inner and outer",
    "randomized properties: field, duality, pullback, equivariance, Bezout",
    "fiber solver against a brute-force oracle",
];

/// Runs every check, concurrently, in id order.
pub fn paper_suite() -> Vec<SuiteRow> {
    std::thread::scope(|s| {
        let handles: Vec<_> = (1..=SUITE_SIZE).map(|id| s.spawn(move || run_check(id))).collect();
        handles.into_iter().map(|h| h.join().expect("suite check panicked")).collect()
    })
}

pub fn run_check(id: u32) -> SuiteRow {
    let out = match id {
        1 => two_circles(),
        2 => tangent_conics(),
        3 => circle_and_conic(),
        4 => conic_family(),
        5 => fermat_probes(),
        6 => diagonal_families(),
        7 => two_centers(),
        8 => quartic_pairs(),
        9 => quintic_pair(),
        10 => properties(),
        11 => solver_oracle(),
        _ => Err(Error::Invalid(format!("no suite check {id}"))),
    };
    let name = NAMES.get(id as usize - 1).copied().unwrap_or("unknown");
    let (status, detail) = match out {
        Ok((true, d)) => (SuiteStatus::Pass, d),
        Ok((false, d)) => (SuiteStatus::Fail, d),
        Err(e) if e.is_unresolved() => (SuiteStatus::Unresolved, e.to_string()),
        Err(e) => (SuiteStatus::Fail, format!("error: {e}")),
    };
    SuiteRow { id, name, status, detail }
}

type Check = Result<(bool, String)>;

fn form(text: &str, decl: &FieldDecl) -> HomPoly {
    parse_form(text, decl).expect("suite fixtures parse")
}

fn point(text: &str, decl: &FieldDecl) -> ProjPoint {
    parse_point(text, decl).expect("suite fixtures parse")
}

fn points(texts: &[&str], decl: &FieldDecl) -> Vec<ProjPoint> {
    texts.iter().map(|t| point(t, decl)).collect()
}

fn conic(text: &str, decl: &FieldDecl) -> Result<Conic> {
    Conic::new(form(text, decl))
}

fn line(text: &str) -> ProjLine {
    let f = form(text, &FieldDecl::rationals());
    let c = [[1, 0, 0], [0, 1, 0], [0, 0, 1]].map(|[i, j, k]| f.coeff(i, j, k));
    let [a, b, cc] = c;
    ProjLine::new(a, b, cc).expect("nonzero line")
}

fn lift(ext: &Extender, p: &ProjPoint) -> ProjPoint {
    p.map(|c| ext.lift(c))
}

/// Equality of point sets, each point counted once.
fn same_points(ext: &Extender, got: &[ProjPoint], want: &[ProjPoint]) -> Result<bool> {
    if got.len() != want.len() {
        return Ok(false);
    }
    for w in want {
        let w = lift(ext, w);
        let mut hit = false;
        for g in got {
            if lift(ext, g).same_as(&w)? {
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

fn same_lines(ext: &Extender, got: &[ProjLine], want: &[ProjLine]) -> Result<bool> {
    if got.len() != want.len() {
        return Ok(false);
    }
    for w in want {
        let w = w.map(|c| ext.lift(c));
        let mut hit = false;
        for g in got {
            if g.map(|c| ext.lift(c)).same_as(&w)? {
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

fn show(list: &[ProjPoint]) -> String {
    let mut v: Vec<&ProjPoint> = list.iter().collect();
    v.sort_by(|a, b| a.canonical_cmp(b));
    format!("{{{}}}", v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "))
}

struct Tally {
    ok: bool,
    parts: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { ok: true, parts: Vec::new() }
    }

    fn check(&mut self, what: impl Into<String>, holds: bool) {
        if !holds {
            self.ok = false;
            self.parts.push(format!("failed: {}", what.into()));
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.parts.push(s.into());
    }

    fn done(self) -> Check {
        Ok((self.ok, self.parts.join("; ")))
    }
}

fn conic_outer(
    c1: &str,
    c2: &str,
    duals: Option<[&str; 2]>,
    dual_points: Option<&[&str]>,
    outer: &[&str],
    t: &mut Tally,
) -> Result<crate::conic::ConicOuterResult> {
    let q = FieldDecl::rationals();
    let mut ext = Extender::new(q.tower());
    let r = sg_outer_conics_in(&mut ext, &conic(c1, &q)?, &conic(c2, &q)?)?;
    if let Some([d1, d2]) = duals {
        t.check(format!("dual of {c1} is {d1}"), r.dual_first.form().same_curve(&form(d1, &q).lift_to(&r.tower))?);
        t.check(format!("dual of {c2} is {d2}"), r.dual_second.form().same_curve(&form(d2, &q).lift_to(&r.tower))?);
    }
    if let Some(want) = dual_points {
        let got: Vec<ProjPoint> = r.dual_points.iter().map(|x| x.0.clone()).collect();
        t.check(format!("dual intersection {}", show(&got)), same_points(&ext, &got, &points(want, &q))?);
    }
    let got: Vec<ProjPoint> = r.points.iter().map(|x| x.point.clone()).collect();
    t.check(format!("outer SG set {}", show(&got)), same_points(&ext, &got, &points(outer, &q))?);
    t.note(format!("outer SG set {}", show(&got)));
    Ok(r)
}

fn two_circles() -> Check {
    let mut t = Tally::new();
    let r = conic_outer(
        "X^2+Y^2-Z^2",
        "X^2+Y^2-4*Y*Z+3*Z^2",
        Some(["X^2+Y^2-Z^2", "X^2-3*Y^2-4*Y*Z-Z^2"]),
        Some(&["(1:0:1)", "(-1:0:1)", "(0:-1:1)"]),
        &["(0:1:0)", "(1:1:1)", "(-1:1:1)"],
        &mut t,
    )?;
    let q = FieldDecl::rationals();
    let ext = Extender::new(&r.tower);
    for (p, pair) in [("(0:1:0)", ["X+Z", "X-Z"]), ("(1:1:1)", ["X-Z", "Y-Z"]), ("(-1:1:1)", ["Y-Z", "X+Z"])] {
        let p = point(p, &q).lift_to(&r.tower);
        let Some(entry) = r.points.iter().find(|o| o.point == p) else {
            t.check(format!("{p} certified"), false);
            continue;
        };
        let want = pair.map(line);
        t.check(format!("tangents through {p}"), same_lines(&ext, &entry.tangents, &want)?);
    }
    t.done()
}

fn tangent_conics() -> Check {
    let mut t = Tally::new();
    conic_outer("X^2-4*Y*Z", "X^2+4*Y^2-4*Y*Z", Some(["X^2-Y*Z", "X^2-Y*Z-Z^2"]), Some(&["(0:1:0)"]), &[], &mut t)?;
    t.done()
}

fn circle_and_conic() -> Check {
    let mut t = Tally::new();
    conic_outer("X^2+Y^2-Z^2", "Y^2+2*(X+Z)*(X+Y)", None, None, &["(0:1:0)"], &mut t)?;
    t.done()
}

fn family_conic(i: i64) -> String {
    format!("X^2 + (1/{i})*Y^2 - (1/{})*Z^2", i + 1)
}

fn conic_family() -> Check {
    let mut t = Tally::new();
    let q = FieldDecl::rationals();
    let six = ["(0:1:1)", "(1:0:1)", "(1:1:0)", "(0:-1:1)", "(-1:0:1)", "(-1:1:0)"];
    for i in 1..=4 {
        for j in i + 1..=4 {
            let mut sub = Tally::new();
            conic_outer(&family_conic(i), &family_conic(j), None, None, &six, &mut sub)?;
            t.check(format!("pair ({i}, {j})"), sub.ok);
        }
    }
    for n in 2..=4 {
        let comps: Vec<HomPoly> = (1..=n).map(|i| form(&family_conic(i), &q)).collect();
        let mut ext = Extender::new(q.tower());
        for p in points(&six, &q) {
            t.check(format!("{p} is SG for all {n} components"), sg_point_check_components(&mut ext, &p, &comps)?);
        }
        // A point off the six is rejected by the n-fold check as well.
        let off = point("(1:2:3)", &q);
        t.check(format!("(1:2:3) is not SG for {n} components"), !sg_point_check_components(&mut ext, &off, &comps)?);
    }
    t.note("every pair has the six outer SG points, and so do n = 2, 3, 4 components");
    t.done()
}

fn fermat_probes() -> Check {
    let mut t = Tally::new();
    let q = FieldDecl::rationals();
    let coordinate = ["(0:0:1)", "(0:1:0)", "(1:0:0)"];
    let others = ["(1:1:1)", "(1:-1:0)", "(0:1:1)"];
    for d in 3..=5u32 {
        let c = form(&format!("X^{d}+Y^{d}+Z^{d}"), &q);
        let mut ext = Extender::new(q.tower());
        for p in coordinate {
            let v = galois_point_check(&mut ext, &point(p, &q), &c)?;
            t.check(
                format!("d={d}: {p} outer Galois with cyclic group of order {d}"),
                v.is_galois && !v.on_curve && v.cyclic && v.group.len() == d as usize,
            );
        }
        for p in others {
            let v = galois_point_check(&mut ext, &point(p, &q), &c)?;
            t.check(format!("d={d}: {p} is not an outer Galois point"), !(v.is_galois && !v.on_curve));
            if v.on_curve {
                t.note(format!("d={d}: {p} lies on the curve (inner, projection degree {})", v.projection_degree));
            }
        }
    }
    t.done()
}

/// `X^d + zeta_n^i Y^d + Z^d` for i = 1..n, over Q(zeta_n).
fn diagonal_family(d: u32, n: u32) -> (FieldDecl, Vec<HomPoly>) {
    let decl = FieldDecl::parse(if n <= 2 { "Q".into() } else { format!("Q(zeta{n})") }.as_str()).expect("field");
    let comps = (1..=n).map(|i| form(&format!("X^{d} + zeta{n}^{i}*Y^{d} + Z^{d}"), &decl)).collect();
    (decl, comps)
}

fn enumerate(decl: &FieldDecl, c1: &HomPoly, c2: &HomPoly) -> Result<(Extender, SgReport)> {
    let mut ext = Extender::new(decl.tower());
    let pair = CurvePair::new(c1.clone(), c2.clone())?;
    let r = sg_enumerate(&mut ext, &pair, &EnumerateOptions::default())?;
    Ok((ext, r))
}

fn never_both(r: &SgReport) -> bool {
    r.flags.iter().filter(|f| f.name.contains("never both")).all(|f| f.holds)
}

fn diagonal_families() -> Check {
    let mut t = Tally::new();
    for d in [3u32, 4] {
        for n in [2u32, 3] {
            let (decl, comps) = diagonal_family(d, n);
            let last = comps.last().expect("components");
            for (i, c) in comps[..comps.len() - 1].iter().enumerate() {
                let (ext, r) = enumerate(&decl, c, last)?;
                let outer: Vec<ProjPoint> = r.outer_points().into_iter().cloned().collect();
                t.check(
                    format!("d={d} n={n} pair ({}, {n}): outer {} known-complete", i + 1, show(&outer)),
                    r.outer_complete && same_points(&ext, &outer, &[point("(0:1:0)", &decl)])?,
                );
                t.check(format!("d={d} n={n}: flags"), r.violations().is_empty());
            }
            let mut ext = Extender::new(decl.tower());
            t.check(
                format!("d={d} n={n}: (0:1:0) is SG for all components"),
                sg_point_check_components(&mut ext, &point("(0:1:0)", &decl), &comps)?,
            );
        }
    }
    t.note("outer SG set {(0:1:0)} for d = 3, 4 and n = 2, 3");
    t.done()
}

fn two_centers() -> Check {
    let mut t = Tally::new();
    let q = FieldDecl::rationals();
    let c = form("X*Y^3+X^4+Z^4", &q);
    let (p1, p2) = (point("(0:1:0)", &q), point("(-1:1:0)", &q));
    let mut ext = Extender::new(q.tower());
    let pairs = solve_two_center_transforms(&mut ext, &p1, &p2, &c)?;
    t.check(format!("{} transform pairs, expected 4", pairs.len()), pairs.len() == 4);
    let mut seen: Vec<FieldElement> = Vec::new();
    for (s1, s2) in &pairs {
        let s1 = s1.normalized()?;
        let a = s1.entry(1, 1).clone();
        let one = FieldElement::one(ext.tower());
        let zero = FieldElement::zero(ext.tower());
        let shape1 = a.pow(4).is_one()
            && s1.entry(1, 0) == &(&a - &one)
            && s1.entry(0, 1).is_zero()
            && s1.entry(0, 2).is_zero()
            && s1.entry(1, 2).is_zero()
            && s1.entry(2, 0).is_zero()
            && s1.entry(2, 1).is_zero()
            && s1.entry(2, 2).is_one();
        t.check(format!("first transform {s1} has the shear shape with a^4 = 1"), shape1);
        let k = s2.entry(1, 1).try_invert()?;
        let s2 = s2.map(|e| e * &k);
        let c3 = a.pow(3);
        let shape2 = s2.entry(0, 0) == &c3
            && s2.entry(1, 0) == &(&one - &c3)
            && s2.entry(0, 1) == &zero
            && s2.entry(0, 2) == &zero
            && s2.entry(1, 2) == &zero
            && s2.entry(2, 0) == &zero
            && s2.entry(2, 1) == &zero
            && s2.entry(2, 2).is_one();
        t.check(format!("second transform {s2} has c = a^3"), shape2);
        t.check("distinct values of a", !seen.contains(&a));
        seen.push(a);
    }
    for (a1, _) in &pairs {
        for (_, b2) in &pairs {
            t.check("first and second transforms commute", a1.compose(b2).same_as(&b2.compose(a1))?);
        }
    }
    let mut ext = Extender::new(q.tower());
    let single = solve_fiber_transforms(&mut ext, &p1, &c, &c)?;
    t.note(format!(
        "four pairs with a^4 = 1 and c = a^3; the one-center automorphism group at (0:1:0) alone has {} elements",
        single.len()
    ));
    t.done()
}

fn quartic_pairs() -> Check {
    let mut t = Tally::new();
    let decl = FieldDecl::parse("Q(zeta4)")?;
    let c1 = form("X*Y^3+X^4+Z^4", &decl);
    let twists = [
        "X*((zeta4-1)*X+zeta4*Y)^3+X^4+Z^4",
        "X*(-2*X-Y)^3+X^4+Z^4",
        "X*((-zeta4-1)*X-zeta4*Y)^3+X^4+Z^4",
    ];
    let want = points(&["(0:1:0)", "(-1:1:0)"], &decl);
    for (j, c2) in twists.iter().enumerate() {
        let (ext, r) = enumerate(&decl, &c1, &form(c2, &decl))?;
        let inner: Vec<ProjPoint> = r.inner_points().into_iter().cloned().collect();
        t.check(
            format!("j={}: inner {} complete", j + 1, show(&inner)),
            r.inner_complete && same_points(&ext, &inner, &want)?,
        );
        t.check(format!("j={}: flags", j + 1), r.violations().is_empty());
    }
    let decl = FieldDecl::parse("Q(zeta12)")?;
    let pair = CurvePair::new(form("X*Y^3+X^4+Z^4", &decl), form("X^4+Y^4+Z^4", &decl))?;
    let mut ext = Extender::new(decl.tower());
    for p in ["(0:1:0)", "(-1:1:0)", "(-w:1:0)", "(-w^2:1:0)"] {
        let v = sg_point_check(&mut ext, &point(p, &decl), &pair)?;
        t.check(format!("control: {p} is not SG"), !v.is_sg);
    }
    t.note("inner SG set {(0:1:0), (-1:1:0)} for j = 1, 2, 3; the Fermat control has none of the four candidates");
    t.done()
}

fn quintic_pair() -> Check {
    let mut t = Tally::new();
    let q = FieldDecl::rationals();
    let c1 = form("-X*Y^4+X^5+Z^5", &q);
    let c2 = form("X*Y^4+X^5+Z^5", &q);
    let (ext, r) = enumerate(&q, &c1, &c2)?;
    let inner: Vec<ProjPoint> = r.inner_points().into_iter().cloned().collect();
    t.check(format!("inner {}", show(&inner)), same_points(&ext, &inner, &[point("(0:1:0)", &q)])?);
    let mut ext = Extender::new(q.tower());
    let v = sg_point_check(&mut ext, &point("(0:0:1)", &q), &CurvePair::new(c1, c2)?)?;
    t.check("(0:0:1) is not SG", !v.is_sg);
    t.check("never-both flag on the quintic pair", never_both(&r));
    // The flag on every other fixture of degree at least 4.
    let mut reports = 1;
    for n in [2u32, 3] {
        let (decl, comps) = diagonal_family(4, n);
        let (_, r) = enumerate(&decl, &comps[0], comps.last().expect("components"))?;
        t.check(format!("never-both flag on the diagonal quartic family n={n}"), never_both(&r));
        reports += 1;
    }
    let decl = FieldDecl::parse("Q(zeta4)")?;
    let c1 = form("X*Y^3+X^4+Z^4", &decl);
    for c2 in ["X*((zeta4-1)*X+zeta4*Y)^3+X^4+Z^4", "X*(-2*X-Y)^3+X^4+Z^4", "X*((-zeta4-1)*X-zeta4*Y)^3+X^4+Z^4", "X^4+Y^4+Z^4"]
    {
        let (_, r) = enumerate(&decl, &c1, &form(c2, &decl))?;
        t.check(format!("never-both flag on ({c2})"), never_both(&r));
        reports += 1;
    }
    t.note(format!("inner SG set {}; never-both flag held on {reports} reports", show(&inner)));
    t.done()
}

// ---- randomized properties ----

const SEED: u64 = 0x5eed_2024;

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=3).into())
}

fn random_element(rng: &mut ChaCha8Rng, tower: &FieldTower) -> FieldElement {
    let coords = (0..tower.degree()).map(|_| small_rational(rng)).collect();
    FieldElement::from_coords(tower, coords)
}

fn random_transform(rng: &mut ChaCha8Rng, tower: &FieldTower, range: i64) -> ProjTransform {
    loop {
        let m = [0; 3].map(|_| [0; 3].map(|_| rng.gen_range(-range..=range)));
        if let Ok(t) = ProjTransform::from_ints(tower, m) {
            return t;
        }
    }
}

fn random_conic(rng: &mut ChaCha8Rng, tower: &FieldTower) -> Conic {
    loop {
        let v: Vec<i64> = (0..6).map(|_| rng.gen_range(-3i64..=3)).collect();
        let e = |x: i64| FieldElement::from_int(tower, x);
        let m = [[e(v[0]), e(v[1]), e(v[2])], [e(v[1]), e(v[3]), e(v[4])], [e(v[2]), e(v[4]), e(v[5])]];
        if let Ok(c) = Conic::from_matrix(m) {
            if !c.det().is_zero() {
                return c;
            }
        }
    }
}

fn random_form(rng: &mut ChaCha8Rng, tower: &FieldTower, d: u32, range: i64) -> HomPoly {
    loop {
        let mut terms = Vec::new();
        for i in 0..=d {
            for j in 0..=d - i {
                terms.push((rng.gen_range(-range..=range), [i, j, d - i - j]));
            }
        }
        if let Ok(f) = HomPoly::from_int_terms(tower, &terms) {
            return f;
        }
    }
}

fn properties() -> Check {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    let decl = FieldDecl::parse("Q(zeta12, sqrt2)")?;
    let tower = decl.tower();
    let mut field_cases = 0;
    for _ in 0..200 {
        let (a, b, c) = (random_element(&mut rng, tower), random_element(&mut rng, tower), random_element(&mut rng, tower));
        let mut ok = &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &b == &b * &a
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && &(&a + &b) - &b == a;
        if !a.is_zero() {
            ok &= (&a * &a.try_invert()?).is_one();
        }
        t.check("field axioms", ok);
        field_cases += 1;
    }

    let q = FieldTower::rationals();
    let mut dual_cases = 0;
    for _ in 0..50 {
        let c = random_conic(&mut rng, &q);
        t.check("dual of the dual", dual_conic(&dual_conic(&c)?)?.form().same_curve(c.form())?);
        dual_cases += 1;
    }

    let mut pullback_cases = 0;
    for _ in 0..50 {
        let f = random_form(&mut rng, &q, 3, 3);
        let (a, b) = (random_transform(&mut rng, &q, 2), random_transform(&mut rng, &q, 2));
        t.check("pullback contravariance", f.pullback(&a.compose(&b)) == f.pullback(&a).pullback(&b));
        pullback_cases += 1;
    }

    let qd = FieldDecl::rationals();
    let base = sg_outer_conics_in(
        &mut Extender::new(&q),
        &conic("X^2+Y^2-Z^2", &qd)?,
        &conic("X^2+Y^2-4*Y*Z+3*Z^2", &qd)?,
    )?;
    let base_pts: Vec<ProjPoint> = base.points.iter().map(|o| o.point.clone()).collect();
    let (c1, c2) = (conic("X^2+Y^2-Z^2", &qd)?, conic("X^2+Y^2-4*Y*Z+3*Z^2", &qd)?);
    let mut eq1 = 0;
    for _ in 0..20 {
        let s = random_transform(&mut rng, &q, 3);
        let mut ext = Extender::new(&q);
        let r = sg_outer_conics_in(&mut ext, &c1.image(&s), &c2.image(&s))?;
        let got: Vec<ProjPoint> = r.points.iter().map(|o| o.point.clone()).collect();
        let want = base_pts.iter().map(|p| s.apply(p)).collect::<Result<Vec<_>>>()?;
        t.check("equivariance on the two circles", same_points(&ext, &got, &want)?);
        eq1 += 1;
    }
    let d4 = FieldDecl::parse("Q(zeta4)")?;
    let k1 = form("X*Y^3+X^4+Z^4", &d4);
    let k2 = form("X*(-2*X-Y)^3+X^4+Z^4", &d4);
    let inner = points(&["(0:1:0)", "(-1:1:0)"], &d4);
    let mut eq8 = 0;
    for _ in 0..20 {
        let s = random_transform(&mut rng, d4.tower(), 2);
        let back = s.inverse();
        let pair = CurvePair::new(k1.pullback(&back), k2.pullback(&back))?;
        let mut ext = Extender::new(d4.tower());
        let r = sg_enumerate(&mut ext, &pair, &EnumerateOptions { candidates: None, normalizer: Some(back) })?;
        let got: Vec<ProjPoint> = r.inner_points().into_iter().cloned().collect();
        let want = inner.iter().map(|p| s.apply(p)).collect::<Result<Vec<_>>>()?;
        t.check("equivariance on the quartic pair", r.outer.is_empty() && same_points(&ext, &got, &want)?);
        eq8 += 1;
    }

    // Pairs whose pencil holds a rational line pair resolve in degree 4;
    // fully random pairs usually need a degree-12 tower and are run under a
    // small budget, where they count as unresolved.
    let (mut resolved, mut unresolved, mut attempts) = (0, 0, 0);
    while resolved < 30 && attempts < 200 {
        attempts += 1;
        let (a, b) = if attempts % 8 == 0 {
            (random_conic(&mut rng, &q), random_conic(&mut rng, &q))
        } else {
            let a = random_conic(&mut rng, &q);
            let l1 = random_form(&mut rng, &q, 1, 3);
            let l2 = random_form(&mut rng, &q, 1, 3);
            let mu = FieldElement::from_int(&q, [-2, -1, 1, 2][rng.gen_range(0..4)]);
            let Ok(b) = Conic::new(HomPoly::new(a.form().poly().add(&l1.mul(&l2).poly().scale(&mu)))?) else {
                continue;
            };
            (a, b)
        };
        if b.det().is_zero() || a.form().same_curve(b.form())? {
            continue;
        }
        let budget = if attempts % 8 == 0 { 3 } else { 96 };
        let mut ext = Extender::with_budget(&q, budget);
        match crate::with_splits(&mut ext, |ext| crate::conic::intersect_conics_in(ext, &a, &b)) {
            Ok(pts) => {
                resolved += 1;
                t.check("Bezout: multiplicities sum to 4", pts.iter().map(|p| p.1).sum::<u32>() == 4);
            }
            Err(e) if e.is_unresolved() => unresolved += 1,
            Err(e) => return Err(e),
        }
    }
    t.check("30 resolved conic pairs", resolved >= 30);
    t.note(format!(
        "field {field_cases}, duality {dual_cases}, pullback {pullback_cases}, equivariance {eq1} + {eq8}, \
         Bezout {resolved} resolved / {unresolved} unresolved"
    ));
    t.done()
}

// ---- solver against a brute-force oracle ----

fn grid() -> Vec<Rational> {
    [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1)].iter().map(|&(n, d)| Rational::new(n.into(), d.into())).collect()
}

fn fiber_at_top(tower: &FieldTower, p: &Rational, q: &Rational, r: &Rational) -> Result<ProjTransform> {
    let e = |x: &Rational| FieldElement::from_rational(tower, x.clone());
    let (one, zero) = (FieldElement::one(tower), FieldElement::zero(tower));
    ProjTransform::new([[one.clone(), zero.clone(), zero.clone()], [e(p), e(q), e(r)], [zero.clone(), zero, one]])
}

/// Dense coefficient comparison: is `f` a nonzero multiple of `g`?
fn proportional_by_coefficients(f: &HomPoly, g: &HomPoly) -> bool {
    let d = g.degree();
    if f.degree() != d {
        return false;
    }
    let mut ratio: Option<FieldElement> = None;
    for i in 0..=d {
        for j in 0..=d - i {
            let (a, b) = (f.coeff(i, j, d - i - j), g.coeff(i, j, d - i - j));
            match (&ratio, a.is_zero(), b.is_zero()) {
                (_, true, true) => {}
                (_, _, true) | (_, true, _) => return false,
                (None, _, _) => ratio = Some(a.try_div(&b).expect("nonzero")),
                (Some(k), _, _) => {
                    if &(&b * k) != &a {
                        return false;
                    }
                }
            }
        }
    }
    ratio.is_some()
}

fn solver_oracle() -> Check {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x11);
    let q = FieldTower::rationals();
    let center = ProjPoint::from_ints(&q, 0, 1, 0)?;
    let g = grid();
    let (mut agreed, mut skipped, mut attempts) = (0, 0, 0);
    while agreed < 25 && attempts < 120 {
        attempts += 1;
        let d = rng.gen_range(2u32..=3);
        let target = random_form(&mut rng, &q, d, 2);
        if target.coeff(0, d, 0).is_zero() {
            continue;
        }
        let source = if attempts % 3 == 0 {
            random_form(&mut rng, &q, d, 2)
        } else {
            let pick = |rng: &mut ChaCha8Rng| g[rng.gen_range(0..g.len())].clone();
            let (p, r) = (pick(&mut rng), pick(&mut rng));
            let mut qq = pick(&mut rng);
            while qq == Rational::from_integer(0.into()) {
                qq = pick(&mut rng);
            }
            target.pullback(&fiber_at_top(&q, &p, &qq, &r)?)
        };
        let mut oracle = Vec::new();
        for p in &g {
            for qq in g.iter().filter(|x| **x != Rational::from_integer(0.into())) {
                for r in &g {
                    let s = fiber_at_top(&q, p, qq, r)?;
                    if proportional_by_coefficients(&target.pullback(&s), &source) {
                        oracle.push(s);
                    }
                }
            }
        }
        let mut ext = Extender::new(&q);
        let sols = match solve_fiber_transforms(&mut ext, &center, &source, &target) {
            Ok(s) => s,
            Err(Error::PositiveDimensional) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut ok = true;
        let on_grid = |s: &ProjTransform| {
            let n = s.normalized().expect("invertible");
            [(1, 0), (1, 1), (1, 2)].iter().all(|&(i, j)| n.entry(i, j).as_rational().is_some_and(|x| g.contains(x)))
        };
        let solver_on_grid: Vec<&ProjTransform> = sols.iter().map(|s| &s.transform).filter(|s| on_grid(s)).collect();
        ok &= solver_on_grid.len() == oracle.len();
        for o in &oracle {
            let o = o.lift_to(ext.tower());
            let mut hit = false;
            for s in &solver_on_grid {
                hit |= s.same_as(&o)?;
            }
            ok &= hit;
        }
        for s in &sols {
            let tgt = target.lift_to(ext.tower());
            ok &= proportional_by_coefficients(&tgt.pullback(&s.transform), &source.lift_to(ext.tower()));
        }
        t.check(format!("instance {attempts}: target {target}"), ok);
        if ok {
            agreed += 1;
        }
    }
    t.check("25 agreeing instances", agreed >= 25);
    t.note(format!("{agreed} instances agree with the oracle, {skipped} skipped as positive-dimensional"));
    t.done()
}
