//! Zero-dimensional polynomial systems over a growing tower.
//!
//! The solver looks for, in order: monomial equations (branch on which
//! variable vanishes), variables occurring linearly with a constant
//! coefficient (substitute), univariate equations (split their gcd), and
//! otherwise eliminates a variable by resultants and back-substitutes.

use crate::field::{Extender, FieldElement, UniPoly};
use crate::poly::{resultant, MPoly};
use crate::{with_splits, Error, FieldError, Result};

type Partial = Vec<Option<FieldElement>>;

const MAX_DEPTH: usize = 64;

pub(crate) fn lift_mpoly(ext: &Extender, p: &MPoly) -> MPoly {
    p.map_coeffs(ext.tower(), |c| ext.lift(c))
}

/// All common zeros of `eqs` at which every polynomial in `nonzero` is
/// nonzero. Fails with `PositiveDimensional` when some variable stays free.
pub fn solve_system(ext: &mut Extender, eqs: &[MPoly], nonzero: &[MPoly]) -> Result<Vec<Vec<FieldElement>>> {
    let Some(n) = eqs.iter().chain(nonzero).map(MPoly::nvars).next() else {
        return Ok(vec![Vec::new()]);
    };
    let partials = with_splits(ext, |ext| solve_rec(ext, n, eqs, nonzero, 0))?;
    let mut out: Vec<Vec<FieldElement>> = Vec::new();
    for s in partials {
        let Some(vals) = s.into_iter().map(|v| v.map(|v| ext.lift(&v))).collect::<Option<Vec<_>>>() else {
            return Err(Error::PositiveDimensional);
        };
        let mut ok = true;
        for e in eqs {
            if !lift_mpoly(ext, e).eval(&vals).is_zero_checked()? {
                ok = false;
                break;
            }
        }
        for n in nonzero {
            if lift_mpoly(ext, n).eval(&vals).is_zero_checked()? {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let mut dup = false;
        for o in &out {
            let mut same = true;
            for (a, b) in o.iter().zip(&vals) {
                if !(a - b).is_zero_checked()? {
                    same = false;
                    break;
                }
            }
            if same {
                dup = true;
                break;
            }
        }
        if !dup {
            out.push(vals);
        }
    }
    let tower = ext.tower().clone();
    let mut out: Vec<Vec<FieldElement>> =
        out.into_iter().map(|v| v.into_iter().map(|e| ext.lift(&e).lift_to(&tower)).collect()).collect();
    out.sort_by(|a, b| {
        a.iter().zip(b).map(|(x, y)| x.canonical_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(out)
}

fn specialize(ext: &Extender, p: &MPoly, s: &Partial) -> MPoly {
    let mut p = lift_mpoly(ext, p);
    for (i, v) in s.iter().enumerate() {
        if let Some(v) = v {
            if p.uses_var(i) {
                p = p.substitute(i, &ext.lift(v));
            }
        }
    }
    p
}

fn solve_rec(ext: &mut Extender, n: usize, eqs: &[MPoly], nonzero: &[MPoly], depth: usize) -> Result<Vec<Partial>> {
    if depth > MAX_DEPTH {
        return Err(FieldError::Unresolved("elimination did not terminate".into()).into());
    }
    let nz: Vec<MPoly> = nonzero.iter().map(|p| lift_mpoly(ext, p)).collect();
    let mut known_nonzero = vec![false; n];
    for p in &nz {
        if p.as_constant().is_some() && p.is_zero_checked()? {
            return Ok(Vec::new());
        }
        if p.num_terms() == 1 {
            for v in p.vars_used() {
                known_nonzero[v] = true;
            }
        }
    }
    let mut sys: Vec<MPoly> = Vec::new();
    for e in eqs {
        let e = lift_mpoly(ext, e);
        if e.is_zero_checked()? {
            continue;
        }
        let mut content = e.monomial_content();
        for (v, k) in content.iter_mut().enumerate() {
            if !known_nonzero[v] {
                *k = 0;
            }
        }
        let e = e.div_monomial(&content);
        if e.as_constant().is_some() {
            return Ok(Vec::new());
        }
        let e = e.monic()?;
        if !sys.contains(&e) {
            sys.push(e);
        }
    }
    if sys.is_empty() {
        return Ok(vec![vec![None; n]]);
    }

    // A monomial equation: one of its variables vanishes.
    if let Some(e) = sys.iter().find(|e| e.num_terms() == 1) {
        let mut out = Vec::new();
        for v in e.vars_used() {
            let zero = FieldElement::zero(ext.tower());
            out.extend(branch_on_value(ext, n, &sys, &nz, v, &zero, depth)?);
        }
        return Ok(out);
    }

    // A variable occurring linearly with a constant coefficient.
    for (idx, e) in sys.iter().enumerate() {
        for v in e.vars_used() {
            if e.degree_in(v) != Some(1) {
                continue;
            }
            let cs = e.coeffs_in(v);
            let Some(c) = cs[1].as_constant() else { continue };
            let expr = cs[0].scale(&-c.try_invert()?);
            let sub: Vec<MPoly> =
                sys.iter().enumerate().filter(|(j, _)| *j != idx).map(|(_, f)| f.substitute_poly(v, &expr)).collect();
            let sub_nz: Vec<MPoly> = nz.iter().map(|f| f.substitute_poly(v, &expr)).collect();
            let sols = solve_rec(ext, n, &sub, &sub_nz, depth + 1)?;
            let mut out = Vec::new();
            for mut s in sols {
                let val = specialize(ext, &expr, &s);
                let Some(val) = val.as_constant() else {
                    return Err(Error::PositiveDimensional);
                };
                s[v] = Some(val);
                out.push(s);
            }
            return Ok(out);
        }
    }

    // Univariate equations.
    for v in 0..n {
        let uni: Vec<UniPoly> =
            sys.iter().filter(|e| e.vars_used() == [v]).map(|e| e.to_univariate(v).unwrap()).collect();
        if uni.is_empty() {
            continue;
        }
        let mut g = UniPoly::zero(ext.tower());
        for u in &uni {
            g = g.gcd(u)?;
        }
        if g.degree().unwrap_or(0) == 0 {
            return Ok(Vec::new());
        }
        let roots = ext.split(&g)?;
        let mut out = Vec::new();
        for r in roots {
            let r = ext.lift(&r);
            out.extend(branch_on_value(ext, n, &sys, &nz, v, &r, depth)?);
        }
        return Ok(out);
    }

    // Elimination. Prefer a pivot equation whose leading coefficient in the
    // eliminated variable is constant, so the projection is exact.
    let mut best: Option<(usize, usize, (u32, u32, usize))> = None;
    for (idx, e) in sys.iter().enumerate() {
        for v in e.vars_used() {
            let lc_const = e.coeffs_in(v).last().unwrap().as_constant().is_some();
            let key = (u32::from(!lc_const), e.degree_in(v).unwrap(), e.num_terms());
            if best.as_ref().is_none_or(|b| key < b.2) {
                best = Some((idx, v, key));
            }
        }
    }
    let (pivot, v, _) = best.expect("nonconstant equations use some variable");
    let e1 = &sys[pivot];
    let mut reduced: Vec<MPoly> = sys.iter().filter(|e| !e.uses_var(v)).cloned().collect();
    for (j, ek) in sys.iter().enumerate() {
        if j == pivot || !ek.uses_var(v) {
            continue;
        }
        let r = resultant(e1, ek, v);
        if !r.is_zero_checked()? {
            reduced.push(r);
        }
    }
    let reduced_nz: Vec<MPoly> = nz.iter().filter(|p| !p.uses_var(v)).cloned().collect();
    let sols = solve_rec(ext, n, &reduced, &reduced_nz, depth + 1)?;
    let mut out = Vec::new();
    for s in sols {
        let mut g = UniPoly::zero(ext.tower());
        for e in sys.iter().filter(|e| e.uses_var(v)) {
            let sp = specialize(ext, e, &s);
            let Some(u) = sp.to_univariate(v) else {
                return Err(Error::PositiveDimensional);
            };
            g = g.lift_to(u.tower()).gcd(&u)?;
        }
        if g.is_zero() {
            return Err(Error::PositiveDimensional);
        }
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        for r in ext.split(&g)? {
            let mut s2 = s.clone();
            s2[v] = Some(r);
            out.push(s2);
        }
    }
    Ok(out)
}

fn branch_on_value(
    ext: &mut Extender,
    n: usize,
    sys: &[MPoly],
    nz: &[MPoly],
    v: usize,
    value: &FieldElement,
    depth: usize,
) -> Result<Vec<Partial>> {
    let value = ext.lift(value);
    let sub: Vec<MPoly> = sys.iter().map(|f| lift_mpoly(ext, f).substitute(v, &value)).collect();
    let sub_nz: Vec<MPoly> = nz.iter().map(|f| lift_mpoly(ext, f).substitute(v, &value)).collect();
    let mut out = solve_rec(ext, n, &sub, &sub_nz, depth + 1)?;
    for s in &mut out {
        s[v] = Some(value.clone());
    }
    Ok(out)
}
