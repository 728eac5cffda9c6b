//! Root finding without leaving the tower.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::tower::LevelKind;
use super::{FieldElement, FieldError, FieldTower, Rational, UniPoly};

/// Square root of `a` inside its own tower, if one is found.
///
/// Exact for rationals, for quadratic levels (by denesting through the
/// norm), for rationals inside cyclotomic levels (Gauss sums) and for
/// levels of odd degree. Elsewhere `None` may be returned for a square.
pub fn sqrt_in_tower(a: &FieldElement) -> Result<Option<FieldElement>, FieldError> {
    let tower = a.tower().clone();
    let r = sqrt_at(&tower, tower.depth(), a.coords())?;
    Ok(r.map(|c| FieldElement::from_coords(&tower, c)))
}

fn elem(tower: &FieldTower, h: usize, coords: &[Rational]) -> FieldElement {
    FieldElement::from_coords(&tower.prefix(h), coords.to_vec())
}

fn sqrt_at(tower: &FieldTower, h: usize, a: &[Rational]) -> Result<Option<Vec<Rational>>, FieldError> {
    if a.iter().all(Zero::is_zero) {
        return Ok(Some(a.to_vec()));
    }
    if h == 0 {
        return Ok(rational_sqrt(&a[0]).map(|r| vec![r]));
    }
    let level = &tower.levels()[h - 1];
    let sub = tower.prefix(h - 1);
    let s = sub.degree();
    let full = tower.prefix(h);
    let in_subfield = a[s..].iter().all(Zero::is_zero);
    let embed = |c: Vec<Rational>| {
        let mut v = c;
        v.resize(full.degree(), Rational::zero());
        v
    };

    if in_subfield {
        if let Some(r) = sqrt_at(tower, h - 1, &a[..s])? {
            return Ok(Some(embed(r)));
        }
    }

    if level.degree() == 2 {
        // Shift the generator g of x^2 + p x + q to t = g + p/2, so t^2 = m.
        let p = elem(tower, h - 1, &level.minpoly[1]);
        let q = elem(tower, h - 1, &level.minpoly[0]);
        let half = Rational::new(1.into(), 2.into());
        let half_p = p.scale(&half);
        let m = &(&half_p * &half_p) - &q;
        let g = FieldElement::generator(&full, h - 1);
        let t = &g + &half_p.lift_to(&full);
        // a = a0 + a1 g = (a0 - a1 p/2) + a1 t
        let a0 = elem(tower, h - 1, &a[..s]);
        let a1 = elem(tower, h - 1, &a[s..]);
        let b0 = &a0 - &(&a1 * &half_p);
        let b1 = a1;
        let found = if b1.is_zero() {
            // a = b0 with no square root below: try t * sqrt(b0 / m).
            match sqrt_at(tower, h - 1, b0.try_div(&m)?.coords())? {
                Some(w) => Some(&FieldElement::from_coords(&sub, w).lift_to(&full) * &t),
                None => None,
            }
        } else {
            denest(tower, h, &b0, &b1, &m)?.map(|(u, v)| &u.lift_to(&full) + &(&v.lift_to(&full) * &t))
        };
        return Ok(found.map(|r| r.coords().to_vec()));
    }

    if in_subfield {
        if let LevelKind::Cyclotomic(n) = level.kind() {
            if h == 1 {
                return Ok(gauss_sqrt(&full, *n, &a[0]).map(|e| e.coords().to_vec()));
            }
        }
    }
    Ok(None)
}

/// Solves (u + v t)^2 = b0 + b1 t with t^2 = m, over the level below `h`.
fn denest(
    tower: &FieldTower,
    h: usize,
    b0: &FieldElement,
    b1: &FieldElement,
    m: &FieldElement,
) -> Result<Option<(FieldElement, FieldElement)>, FieldError> {
    let sub = tower.prefix(h - 1);
    let norm = &(b0 * b0) - &(&(b1 * b1) * m);
    let Some(n) = sqrt_at(tower, h - 1, norm.coords())? else {
        return Ok(None);
    };
    let n = FieldElement::from_coords(&sub, n);
    let half = Rational::new(1.into(), 2.into());
    for cand in [(b0 + &n).scale(&half), (b0 - &n).scale(&half)] {
        if cand.is_zero_checked()? {
            continue;
        }
        if let Some(u) = sqrt_at(tower, h - 1, cand.coords())? {
            let u = FieldElement::from_coords(&sub, u);
            let v = b1.try_div(&u.scale(&Rational::from_integer(2.into())))?;
            return Ok(Some((u, v)));
        }
    }
    Ok(None)
}

pub(crate) fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = integer_sqrt(r.numer())?;
    let d = integer_sqrt(r.denom())?;
    Some(Rational::new(n, d))
}

fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

fn integer_nth_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return integer_nth_root(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
}

fn rational_nth_root(r: &Rational, k: u32) -> Option<Rational> {
    let n = integer_nth_root(r.numer(), k)?;
    let d = integer_nth_root(r.denom(), k)?;
    Some(Rational::new(n, d))
}

/// Square root of the rational `r` in Q(zeta_n), built from Gauss sums.
fn gauss_sqrt(tower: &FieldTower, n: u32, r: &Rational) -> Option<FieldElement> {
    if r.is_zero() {
        return Some(FieldElement::zero(tower));
    }
    // r = c^2 * m with m a squarefree integer.
    let num = r.numer() * r.denom();
    let (square, free) = split_square(&num.abs());
    let c = Rational::new(square, r.denom().clone());
    let target = if r.is_negative() { -free.clone() } else { free.clone() };
    let mut m = free;
    let mut pstar_product = BigInt::one();
    let mut root = FieldElement::one(tower);
    let zeta = FieldElement::generator(tower, 0);
    let zeta_pow = |k: u32| zeta.pow(k as u64);
    if m.is_even() {
        m /= 2;
    }
    let mut p = 3u32;
    while m > BigInt::one() {
        while !m.is_multiple_of(&BigInt::from(p)) {
            p += 2;
        }
        m /= p;
        if n % p != 0 {
            return None;
        }
        // sqrt(p*) with p* = (-1)^((p-1)/2) p.
        let zp = zeta_pow(n / p);
        let mut sum = FieldElement::zero(tower);
        for k in 1..p {
            let term = zp.pow(k as u64);
            sum = if legendre(k, p) == 1 { &sum + &term } else { &sum - &term };
        }
        root = &root * &sum;
        pstar_product *= if p % 4 == 1 { BigInt::from(p) } else { -BigInt::from(p) };
        p += 2;
    }
    // What is left of the signed radicand is one of 1, -1, 2, -2.
    let rest: i64 = i64::try_from(&(target / pstar_product)).ok()?;
    let extra = match rest {
        1 => FieldElement::one(tower),
        -1 if n % 4 == 0 => zeta_pow(n / 4),
        2 if n % 8 == 0 => &zeta_pow(n / 8) - &zeta_pow(3 * n / 8),
        -2 if n % 8 == 0 => &zeta_pow(n / 8) + &zeta_pow(3 * n / 8),
        _ => return None,
    };
    let out = (&root * &extra).scale(&c);
    debug_assert_eq!(&out * &out, FieldElement::from_rational(tower, r.clone()));
    Some(out)
}

/// `n = s^2 * f` with f squarefree, by trial division.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            square *= &p;
        }
        if e % 2 == 1 {
            free *= &p;
        }
        p += 1;
    }
    (square, free * rest)
}

fn legendre(a: u32, p: u32) -> i32 {
    let mut result = 1u64;
    let mut base = (a % p) as u64;
    let mut e = (p - 1) / 2;
    let m = p as u64;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}

/// Order of the group of roots of unity generated by -1 and the bottom
/// cyclotomic generator.
pub fn unity_order(tower: &FieldTower) -> u32 {
    let n = tower.cyclotomic_order();
    if n % 2 == 0 {
        n
    } else {
        2 * n
    }
}

/// All `m`-th roots of unity of the form `±zeta_N^i`, starting with 1.
pub fn roots_of_unity(tower: &FieldTower, m: u32) -> Vec<FieldElement> {
    let w = unity_order(tower);
    let g = unity_generator(tower);
    let k = m.gcd(&w);
    let step = g.pow((w / k) as u64);
    let mut out = Vec::with_capacity(k as usize);
    let mut cur = FieldElement::one(tower);
    for _ in 0..k {
        out.push(cur.clone());
        cur = &cur * &step;
    }
    out
}

fn unity_generator(tower: &FieldTower) -> FieldElement {
    let n = tower.cyclotomic_order();
    if n == 1 {
        return FieldElement::from_int(tower, -1);
    }
    let z = FieldElement::generator(tower, 0);
    if n % 2 == 0 {
        z
    } else {
        -z
    }
}

/// Rational roots of a polynomial with rational coefficients.
pub fn rational_roots(f: &UniPoly) -> Vec<Rational> {
    assert!(f.has_rational_coeffs(), "rational_roots: coefficients must be rational");
    let mut coeffs: Vec<Rational> = f.coeffs().iter().map(|c| c.as_rational().unwrap().clone()).collect();
    let mut out = Vec::new();
    if coeffs.is_empty() {
        return out;
    }
    if coeffs[0].is_zero() {
        out.push(Rational::zero());
        while coeffs.first().is_some_and(Zero::is_zero) {
            coeffs.remove(0);
        }
    }
    if coeffs.len() < 2 {
        return out;
    }
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let lead = ints.last().unwrap().abs();
    let constant = ints[0].abs();
    let eval = |x: &Rational| {
        let mut acc = Rational::zero();
        for c in ints.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    };
    let nums = divisors(&constant);
    let dens = divisors(&lead);
    let mut seen = std::collections::BTreeSet::new();
    for p in &nums {
        for q in &dens {
            for sign in [1, -1] {
                let x = Rational::new(p * BigInt::from(sign), q.clone());
                if seen.insert(x.clone()) && eval(&x).is_zero() {
                    out.push(x);
                }
            }
        }
    }
    out.sort();
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += 1;
    }
    if rest > BigInt::one() {
        factors.push((rest, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out
}

/// Roots found inside the tower together with the monic cofactor that
/// resisted every candidate source. `f` must be nonzero.
pub(crate) fn partial_roots(f: &UniPoly) -> Result<(Vec<FieldElement>, UniPoly), FieldError> {
    let tower = f.tower().clone();
    let mut residual = f.squarefree_part()?;
    let mut found: Vec<FieldElement> = Vec::new();

    let take = |residual: &mut UniPoly, found: &mut Vec<FieldElement>, c: FieldElement| -> Result<(), FieldError> {
        if residual.degree().unwrap_or(0) == 0 {
            return Ok(());
        }
        if residual.eval(&c).is_zero_checked()? {
            *residual = residual.div_exact(&UniPoly::linear_from_root(&c))?;
            found.push(c);
        }
        Ok(())
    };

    if residual.has_rational_coeffs() {
        for r in rational_roots(&residual.clone()) {
            take(&mut residual, &mut found, FieldElement::from_rational(&tower, r))?;
        }
    }

    // Roots of unity: only those dividing gcd(f, x^W - 1).
    if residual.degree().unwrap_or(0) > 0 {
        let w = unity_order(&tower);
        let xw = UniPoly::x_pow_mod(w as u64, &residual)?.sub(&UniPoly::constant(FieldElement::one(&tower)));
        let g = residual.gcd(&xw)?;
        if g.degree().unwrap_or(0) > 0 {
            for z in roots_of_unity(&tower, w) {
                take(&mut residual, &mut found, z)?;
            }
        }
    }

    if residual.degree().unwrap_or(0) > 0 {
        if let Some((k, c)) = binomial_parts(&residual) {
            if let Some(rho) = kth_root(&c, k)? {
                for z in roots_of_unity(&tower, k as u32) {
                    take(&mut residual, &mut found, &rho * &z)?;
                }
            }
        }
    }

    // Level generators are roots of their own moduli.
    for j in 0..tower.depth() {
        if residual.degree().unwrap_or(0) == 0 {
            break;
        }
        take(&mut residual, &mut found, FieldElement::generator(&tower, j))?;
    }

    match residual.degree().unwrap_or(0) {
        1 => {
            let c = -&residual.coeff(0);
            found.push(c);
            residual = UniPoly::constant(FieldElement::one(&tower));
        }
        2 => {
            if let Some(rs) = quadratic_roots(&residual)? {
                found.extend(rs);
                residual = UniPoly::constant(FieldElement::one(&tower));
            }
        }
        4 if residual.coeff(1).is_zero() && residual.coeff(3).is_zero() => {
            // x^4 + a x^2 + b: solve for y = x^2, then take square roots.
            let y = UniPoly::new(&tower, vec![residual.coeff(0), residual.coeff(2), FieldElement::one(&tower)]);
            if let Some(ys) = quadratic_roots(&y)? {
                for yv in ys {
                    if let Some(s) = sqrt_in_tower(&yv)? {
                        take(&mut residual, &mut found, s.clone())?;
                        take(&mut residual, &mut found, -s)?;
                    }
                }
            }
        }
        _ => {}
    }
    Ok((found, residual))
}

/// All roots of a monic quadratic, if its discriminant has a square root.
fn quadratic_roots(f: &UniPoly) -> Result<Option<Vec<FieldElement>>, FieldError> {
    let b = f.coeff(1);
    let c = f.coeff(0);
    let disc = &(&b * &b) - &c.scale(&Rational::from_integer(4.into()));
    let Some(s) = sqrt_in_tower(&disc)? else {
        return Ok(None);
    };
    let half = Rational::new(1.into(), 2.into());
    let r1 = (&s - &b).scale(&half);
    let r2 = (&(-&s) - &b).scale(&half);
    debug_assert!(f.eval(&r1).is_zero() && f.eval(&r2).is_zero());
    Ok(Some(vec![r1, r2]))
}

/// `(k, c)` when `f = x^k - c` with k ≥ 2.
fn binomial_parts(f: &UniPoly) -> Option<(usize, FieldElement)> {
    let k = f.degree()?;
    if k < 2 || !f.is_monic() {
        return None;
    }
    if (1..k).any(|i| !f.coeff(i).is_zero()) {
        return None;
    }
    Some((k, -&f.coeff(0)))
}

/// Some k-th root of `c` in its tower, if one is found.
fn kth_root(c: &FieldElement, k: usize) -> Result<Option<FieldElement>, FieldError> {
    let tower = c.tower();
    if let Some(r) = c.as_rational() {
        if let Some(root) = rational_nth_root(r, k as u32) {
            return Ok(Some(FieldElement::from_rational(tower, root)));
        }
    }
    if k % 2 == 0 {
        if let Some(s) = sqrt_in_tower(c)? {
            for base in [s.clone(), -s] {
                if let Some(r) = kth_root(&base, k / 2)? {
                    return Ok(Some(r));
                }
            }
        }
    }
    for j in 0..tower.depth() {
        let g = FieldElement::generator(tower, j);
        if g.pow(k as u64) == *c {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// All roots of `f` inside its tower.
///
/// Fails with `Unresolved` when some roots lie outside the tower (the
/// message names the resisting factor) and with `DegreeTooHigh` when that
/// factor has degree above 4.
pub fn roots_in_tower(f: &UniPoly) -> Result<Vec<FieldElement>, FieldError> {
    if f.is_zero() {
        return Err(FieldError::DivisionByZero);
    }
    let (mut roots, residual) = partial_roots(f)?;
    match residual.degree().unwrap_or(0) {
        0 => {
            roots.sort_by(|a, b| a.canonical_cmp(b));
            Ok(roots)
        }
        d if d > 4 => Err(FieldError::DegreeTooHigh(d)),
        _ => Err(FieldError::Unresolved(format!(
            "{} has no root in {}",
            residual,
            f.tower()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{adjoin, cyclotomic_field};

    fn q() -> FieldTower {
        FieldTower::rationals()
    }

    fn check_roots(f: &UniPoly, roots: &[FieldElement]) {
        assert!(roots.len() <= f.degree().unwrap());
        for r in roots {
            assert!(f.eval(r).is_zero(), "{r} is not a root of {f}");
        }
        for (i, a) in roots.iter().enumerate() {
            for b in &roots[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn sqrt3_over_q_is_unresolved() {
        let f = UniPoly::from_ints(&q(), &[-3, 0, 1]);
        assert!(matches!(roots_in_tower(&f), Err(FieldError::Unresolved(_))));
    }

    #[test]
    fn cube_roots_of_unity_over_q_omega() {
        let t = adjoin(&q(), "w", &UniPoly::from_ints(&q(), &[1, 1, 1])).unwrap();
        let f = UniPoly::from_ints(&t, &[-1, 0, 0, 1]);
        let roots = roots_in_tower(&f).unwrap();
        assert_eq!(roots.len(), 3);
        check_roots(&f, &roots);
        let w = FieldElement::generator(&t, 0);
        assert!(roots.contains(&w) && roots.contains(&w.pow(2)) && roots.contains(&FieldElement::one(&t)));
    }

    #[test]
    fn fourth_roots_of_unity_over_q_i() {
        let t = cyclotomic_field(4);
        let f = UniPoly::from_ints(&t, &[-1, 0, 0, 0, 1]);
        let roots = roots_in_tower(&f).unwrap();
        assert_eq!(roots.len(), 4);
        check_roots(&f, &roots);
    }

    #[test]
    fn rational_roots_with_denominators() {
        // (2x - 1)(3x + 2)(x - 4)
        let f = UniPoly::from_ints(&q(), &[-1, 2])
            .mul(&UniPoly::from_ints(&q(), &[2, 3]))
            .mul(&UniPoly::from_ints(&q(), &[-4, 1]));
        let roots = rational_roots(&f);
        assert_eq!(
            roots,
            vec![Rational::new((-2).into(), 3.into()), Rational::new(1.into(), 2.into()), Rational::from_integer(4.into())]
        );
    }

    #[test]
    fn quadratic_over_sqrt_level() {
        let t = adjoin(&q(), "sqrt3", &UniPoly::from_ints(&q(), &[-3, 0, 1])).unwrap();
        // x^2 - 2x - 2 has roots 1 ± sqrt3
        let f = UniPoly::from_ints(&t, &[-2, -2, 1]);
        let roots = roots_in_tower(&f).unwrap();
        check_roots(&f, &roots);
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn denesting_square_roots() {
        // 4 + 2 sqrt3 = (1 + sqrt3)^2
        let t = adjoin(&q(), "sqrt3", &UniPoly::from_ints(&q(), &[-3, 0, 1])).unwrap();
        let s = FieldElement::generator(&t, 0);
        let a = &FieldElement::from_int(&t, 4) + &s.scale(&Rational::from_integer(2.into()));
        let r = sqrt_in_tower(&a).unwrap().unwrap();
        assert_eq!(&r * &r, a);
        assert!(sqrt_in_tower(&s).unwrap().is_none());
        // sqrt(3) * sqrt(12) style: 12 = (2 sqrt3)^2
        let r = sqrt_in_tower(&FieldElement::from_int(&t, 12)).unwrap().unwrap();
        assert_eq!(&r * &r, FieldElement::from_int(&t, 12));
    }

    #[test]
    fn gauss_sums_in_cyclotomic_fields() {
        for (n, radicands) in [(8u32, vec![2i64, -2, -1, 8, -18]), (5, vec![5, 20]), (12, vec![3, -3, -1, -12]), (7, vec![-7])] {
            let t = cyclotomic_field(n);
            for r in radicands {
                let a = FieldElement::from_int(&t, r);
                let s = sqrt_in_tower(&a).unwrap().unwrap_or_else(|| panic!("sqrt({r}) in Q(zeta{n})"));
                assert_eq!(&s * &s, a);
            }
        }
        let t = cyclotomic_field(5);
        assert!(sqrt_in_tower(&FieldElement::from_int(&t, -1)).unwrap().is_none());
        assert!(sqrt_in_tower(&FieldElement::from_int(&t, 2)).unwrap().is_none());
    }

    #[test]
    fn binomial_roots() {
        let t = cyclotomic_field(12);
        let z = FieldElement::generator(&t, 0);
        // x^4 - zeta12^4 has the roots zeta12 * i^k
        let f = UniPoly::binomial(4, &z.pow(4));
        let roots = roots_in_tower(&f).unwrap();
        assert_eq!(roots.len(), 4);
        check_roots(&f, &roots);
        let f = UniPoly::binomial(3, &FieldElement::from_int(&t, 8));
        let roots = roots_in_tower(&f).unwrap();
        assert_eq!(roots.len(), 3);
        check_roots(&f, &roots);
    }

    #[test]
    fn biquadratic() {
        // x^4 - 10 x^2 + 1 splits over Q(sqrt2, sqrt3)
        let t = adjoin(&q(), "sqrt2", &UniPoly::from_ints(&q(), &[-2, 0, 1])).unwrap();
        let t = adjoin(&t, "sqrt3", &UniPoly::from_ints(&t, &[-3, 0, 1])).unwrap();
        let f = UniPoly::from_ints(&t, &[1, 0, -10, 0, 1]);
        let roots = roots_in_tower(&f).unwrap();
        assert_eq!(roots.len(), 4);
        check_roots(&f, &roots);
    }

    #[test]
    fn high_degree_residual() {
        let f = UniPoly::from_ints(&q(), &[2, 0, 0, 0, 0, 1]);
        assert!(matches!(roots_in_tower(&f), Err(FieldError::DegreeTooHigh(5))));
    }
}
