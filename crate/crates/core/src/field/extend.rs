//! Growing a tower on demand.
//!
//! An [`Extender`] owns a working tower that only ever grows. Adjoining a
//! square root or a generic root pushes a level on top. Needing a root of
//! unity that is not present rebuilds the tower over a larger cyclotomic
//! bottom level, and a zero divisor splits the offending level; both are
//! recorded as [`TowerMorphism`]s so that values computed earlier can be
//! carried into the current tower with [`Extender::lift`].

use num_integer::Integer;

use super::roots::partial_roots;
use super::tower::sqrt_radicand_name;
use super::{
    adjoin_with_kind, cyclotomic_field, roots_in_tower, FieldElement, FieldError, FieldTower, LevelKind, UniPoly,
    ZeroDivisorInfo,
};

/// A field embedding between towers, given by the images of the source's
/// level generators.
#[derive(Clone, Debug)]
pub struct TowerMorphism {
    source: FieldTower,
    target: FieldTower,
    images: Vec<FieldElement>,
}

impl TowerMorphism {
    pub fn source(&self) -> &FieldTower {
        &self.source
    }

    pub fn target(&self) -> &FieldTower {
        &self.target
    }

    pub fn apply(&self, e: &FieldElement) -> FieldElement {
        assert!(self.source.extends(e.tower()), "TowerMorphism::apply: element outside the source tower");
        self.apply_at(self.source.depth(), e.lift_to(&self.source).coords())
    }

    fn apply_at(&self, h: usize, coords: &[num_rational::BigRational]) -> FieldElement {
        if h == 0 {
            return FieldElement::from_rational(&self.target, coords[0].clone());
        }
        let s = self.source.prefix(h - 1).degree();
        let g = &self.images[h - 1];
        let mut acc = FieldElement::zero(&self.target);
        for chunk in coords[..s * self.source.levels()[h - 1].degree()].chunks(s).rev() {
            acc = &(&acc * g) + &self.apply_at(h - 1, chunk);
        }
        acc
    }

    pub fn apply_poly(&self, f: &UniPoly) -> UniPoly {
        f.map_coeffs(&self.target, |c| self.apply(c))
    }
}

/// Something that carries field elements into a newer tower.
pub trait Lifter {
    fn lift(&self, e: &FieldElement) -> FieldElement;
}

/// Working tower with a budget on its absolute degree.
#[derive(Clone, Debug)]
pub struct Extender {
    tower: FieldTower,
    history: Vec<TowerMorphism>,
    max_degree: usize,
    fresh: usize,
}

pub const DEFAULT_DEGREE_BUDGET: usize = 96;

impl Extender {
    pub fn new(tower: &FieldTower) -> Self {
        Self::with_budget(tower, DEFAULT_DEGREE_BUDGET)
    }

    pub fn with_budget(tower: &FieldTower, max_degree: usize) -> Self {
        Extender { tower: tower.clone(), history: Vec::new(), max_degree, fresh: 0 }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Carries an element of the current tower, of any earlier working
    /// tower, or of a prefix of one of these into the current tower.
    pub fn lift(&self, e: &FieldElement) -> FieldElement {
        let mut e = e.clone();
        let mut start = 0;
        loop {
            if self.tower.extends(e.tower()) {
                return e.lift_to(&self.tower);
            }
            let idx = (start..self.history.len())
                .find(|&i| self.history[i].source.extends(e.tower()))
                .expect("Extender::lift: element from an unrelated tower");
            e = self.history[idx].apply(&e);
            start = idx + 1;
        }
    }

    pub fn lift_poly(&self, f: &UniPoly) -> UniPoly {
        f.map_coeffs(&self.tower, |c| self.lift(c))
    }

    fn fresh_name(&mut self, prefix: &str) -> String {
        loop {
            self.fresh += 1;
            let name = format!("{prefix}{}", self.fresh);
            if self.tower.level_index(&name).is_none() {
                return name;
            }
        }
    }

    fn check_budget(&self, degree: usize, what: &str) -> Result<(), FieldError> {
        if degree > self.max_degree {
            return Err(FieldError::Unresolved(format!(
                "{what} would raise the tower degree to {degree}, above the budget of {}",
                self.max_degree
            )));
        }
        Ok(())
    }

    fn record(&mut self, m: TowerMorphism) {
        self.tower = m.target.clone();
        self.history.push(m);
    }

    /// Makes sure a primitive `m`-th root of unity is available, enlarging
    /// the bottom cyclotomic level when needed.
    pub fn ensure_roots_of_unity(&mut self, m: u32) -> Result<(), FieldError> {
        let n = self.tower.cyclotomic_order();
        let target = normalize_order(n.lcm(&m));
        if target == normalize_order(n) {
            return Ok(());
        }
        let base = cyclotomic_field(target);
        let upper: usize = self.tower.levels().iter().skip(if n > 1 { 1 } else { 0 }).map(|l| l.degree()).product();
        self.check_budget(base.degree() * upper, &format!("adjoining zeta{target}"))?;
        let (images, from) = if n > 1 {
            let z = FieldElement::generator(&base, 0).pow((target / n) as u64);
            (vec![z], 1)
        } else {
            (Vec::new(), 0)
        };
        let m = rebuild(&self.tower, base, images, from)?;
        self.record(m);
        Ok(())
    }

    /// Adjoins a root of the monic squarefree `minpoly` (over the current
    /// tower) and returns it.
    pub fn adjoin_root(&mut self, minpoly: &UniPoly) -> Result<FieldElement, FieldError> {
        let minpoly = self.lift_poly(minpoly);
        let d = minpoly.degree().unwrap_or(0);
        self.check_budget(self.tower.degree() * d, &format!("adjoining a root of {minpoly}"))?;
        let (name, kind) = if d == 2 && minpoly.coeff(1).is_zero() {
            let radicand = -&minpoly.coeff(0);
            let name = match sqrt_radicand_name(&radicand) {
                Some(n) if self.tower.level_index(&n).is_none() => n,
                _ => self.fresh_name("s"),
            };
            (name, LevelKind::Sqrt)
        } else {
            (self.fresh_name("r"), LevelKind::Generic)
        };
        let tower = adjoin_with_kind(&self.tower, &name, kind, &minpoly)?;
        self.tower = tower;
        Ok(FieldElement::generator(&self.tower, self.tower.depth() - 1))
    }

    /// All distinct roots of `f`, adjoining whatever is needed.
    pub fn split(&mut self, f: &UniPoly) -> Result<Vec<FieldElement>, FieldError> {
        if f.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        loop {
            let f = self.lift_poly(f);
            let (mut roots, residual) = partial_roots(&f)?;
            let d = residual.degree().unwrap_or(0);
            if d == 0 {
                roots.sort_by(|a, b| a.canonical_cmp(b));
                return Ok(roots);
            }
            if let Some(m) = unity_divisor_order(&residual)? {
                self.ensure_roots_of_unity(m)?;
                continue;
            }
            if let Some(k) = binomial_degree(&residual) {
                if k > 2 {
                    let before = self.tower.degree();
                    self.ensure_roots_of_unity(k)?;
                    if self.tower.degree() != before {
                        continue;
                    }
                }
                self.adjoin_root(&residual)?;
                continue;
            }
            match d {
                2 => {
                    let b = residual.coeff(1);
                    let c = residual.coeff(0);
                    let disc = &(&b * &b) - &c.scale(&num_rational::BigRational::from_integer(4.into()));
                    let sq = UniPoly::binomial(2, &disc);
                    self.adjoin_root(&sq)?;
                }
                3 | 4 => {
                    self.adjoin_root(&residual)?;
                }
                _ => return Err(FieldError::DegreeTooHigh(d)),
            }
        }
    }

    /// Replaces the level named in a zero-divisor report by the reported
    /// factor, collapsing it when the factor is linear.
    pub fn absorb(&mut self, info: &ZeroDivisorInfo) -> Result<(), FieldError> {
        let h = info.base.depth();
        let stale = h >= self.tower.depth()
            || self.tower.prefix(h) != info.base
            || self.tower.levels()[h] != info.level;
        if stale {
            return Err(FieldError::ZeroDivisor(Box::new(info.clone())));
        }
        let factor = info.factor_poly();
        let base = info.base.clone();
        let (target, root) = if factor.degree() == Some(1) {
            let root = -&factor.coeff(0);
            (base, root)
        } else {
            let t = adjoin_with_kind(&base, &info.level.name, info.level.kind.clone(), &factor)?;
            let g = FieldElement::generator(&t, h);
            (t, g)
        };
        let mut images: Vec<FieldElement> = (0..h).map(|j| FieldElement::generator(&target, j)).collect();
        images.push(root.lift_to(&target));
        let m = rebuild(&self.tower, target, images, h + 1)?;
        self.record(m);
        Ok(())
    }
}

impl Lifter for Extender {
    fn lift(&self, e: &FieldElement) -> FieldElement {
        Extender::lift(self, e)
    }
}

/// Runs `op` until it finishes without hitting a zero divisor, splitting
/// the working tower after each one. `op` must start from inputs lifted
/// into the extender's current tower.
pub fn with_splitting<T>(
    ext: &mut Extender,
    mut op: impl FnMut(&mut Extender) -> Result<T, FieldError>,
) -> Result<T, FieldError> {
    const MAX_SPLITS: usize = 16;
    for _ in 0..MAX_SPLITS {
        match op(ext) {
            Err(FieldError::ZeroDivisor(info)) => ext.absorb(&info)?,
            other => return other,
        }
    }
    Err(FieldError::Unresolved("too many zero-divisor splits".into()))
}

fn normalize_order(n: u32) -> u32 {
    match n {
        0..=2 => 1,
        n if n % 4 == 2 => n / 2,
        n => n,
    }
}

/// Smallest M ≤ 120 with f dividing x^M - 1.
fn unity_divisor_order(f: &UniPoly) -> Result<Option<u32>, FieldError> {
    let tower = f.tower();
    let one = UniPoly::constant(FieldElement::one(tower));
    let x = UniPoly::new(tower, vec![FieldElement::zero(tower), FieldElement::one(tower)]);
    let mut cur = one.rem(f)?;
    for m in 1..=120u32 {
        cur = cur.mul(&x).rem(f)?;
        if cur == one {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn binomial_degree(f: &UniPoly) -> Option<u32> {
    let k = f.degree()?;
    (k >= 2 && (1..k).all(|i| f.coeff(i).is_zero())).then_some(k as u32)
}

/// Re-adjoins the levels `from..` of `old` over `target`, given the images
/// of the levels below `from`. Levels whose modulus acquires a root are
/// collapsed onto it.
fn rebuild(
    old: &FieldTower,
    mut target: FieldTower,
    mut images: Vec<FieldElement>,
    from: usize,
) -> Result<TowerMorphism, FieldError> {
    for j in from..old.depth() {
        let level = &old.levels()[j];
        let images_here: Vec<FieldElement> = images.iter().map(|e| e.lift_to(&target)).collect();
        let partial = TowerMorphism { source: old.prefix(j), target: target.clone(), images: images_here };
        let below = old.prefix(j);
        let minpoly = UniPoly::new(
            &below,
            level.minpoly.iter().map(|c| FieldElement::from_coords(&below, c.clone())).collect(),
        );
        let mapped = partial.apply_poly(&minpoly);
        let root = match roots_in_tower(&mapped) {
            Ok(roots) => roots.into_iter().next(),
            Err(FieldError::ZeroDivisor(info)) => return Err(FieldError::ZeroDivisor(info)),
            Err(_) => None,
        };
        match root {
            Some(r) => images.push(r),
            None => {
                target = adjoin_with_kind(&target, &level.name, level.kind.clone(), &mapped)?;
                images.push(FieldElement::generator(&target, target.depth() - 1));
            }
        }
    }
    let images = images.iter().map(|e| e.lift_to(&target)).collect();
    Ok(TowerMorphism { source: old.clone(), target, images })
}
