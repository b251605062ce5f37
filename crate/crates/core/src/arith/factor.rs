//! Factorization of univariate polynomials over `F_p` (Cantor–Zassenhaus)
//! and over `Q` (Zassenhaus: factor mod p, Hensel lift, recombine).
//!
//! Output is deterministic: monic irreducible factors sorted by degree and
//! then coefficients.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::Poly;
use super::scalar::{is_prime, BaseField, PrimeFieldElement, Scalar};
use crate::error::{Error, Result};

type P = Poly<Scalar>;

pub fn canonical_cmp(a: &P, b: &P) -> Ordering {
    a.deg()
        .cmp(&b.deg())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

pub fn is_squarefree(f: &P) -> bool {
    f.gcd(&f.derivative()).deg() == 0
}

/// Monic irreducible factors with multiplicities.
pub fn factor(f: &P) -> Result<Vec<(P, usize)>> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut out = match f.ctx() {
        BaseField::Prime(_) => factor_fp(&f.monic()),
        BaseField::Rationals => factor_q(&f.monic()),
    };
    out.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
    Ok(out)
}

pub fn is_irreducible(f: &P) -> Result<bool> {
    if f.deg() < 1 {
        return Ok(false);
    }
    if let BaseField::Prime(p) = f.ctx() {
        return Ok(rabin_irreducible(&f.monic(), *p));
    }
    let fs = factor(f)?;
    Ok(fs.len() == 1 && fs[0].1 == 1)
}

// ---------------------------------------------------------------------------
// F_p

fn rabin_irreducible(f: &P, p: u64) -> bool {
    let n = f.deg() as u64;
    let ctx = *f.ctx();
    let x = P::x(&ctx);
    // x^(p^k) mod f
    let frob_pow = |k: u64| -> P {
        let mut h = x.clone();
        for _ in 0..k {
            h = h.pow_mod(p as u128, f);
        }
        h
    };
    if frob_pow(n).sub(&x).rem(f).expect("nonzero").is_zero() {
        let mut m = n;
        let mut q = 2;
        while m > 1 {
            if m % q == 0 {
                while m % q == 0 {
                    m /= q;
                }
                let g = frob_pow(n / q).sub(&x).gcd(f);
                if g.deg() != 0 {
                    return false;
                }
            }
            q += 1;
        }
        true
    } else {
        false
    }
}

fn pth_root_poly(f: &P, p: u64) -> P {
    let ctx = *f.ctx();
    let v = f.coeffs().iter().step_by(p as usize).cloned().collect();
    P::new(&ctx, v)
}

fn squarefree_fp(f: &P, p: u64) -> Vec<(P, usize)> {
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if fac.deg() > 0 {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
        i += 1;
    }
    if c.deg() > 0 {
        let root = pth_root_poly(&c, p);
        for (g, m) in squarefree_fp(&root, p) {
            out.push((g, m * p as usize));
        }
    }
    out
}

fn distinct_degree(f: &P, p: u64) -> Vec<(P, usize)> {
    let ctx = *f.ctx();
    let x = P::x(&ctx);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 1;
    while rest.deg() >= 2 * d as i64 {
        h = h.pow_mod(p as u128, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.deg() > 0 {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest).expect("nonzero");
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let d = rest.deg() as usize;
        out.push((rest, d));
    }
    out
}

fn equal_degree(f: &P, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<P> {
    if f.deg() as usize == d {
        return vec![f.clone()];
    }
    let ctx = *f.ctx();
    let n = f.deg() as usize;
    loop {
        let a = P::new(&ctx, (0..n).map(|_| ctx.int(rng.gen_range(0..p) as i64)).collect());
        if a.deg() < 1 {
            continue;
        }
        let b = if p == 2 {
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = t.mul_mod(&t, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = ((p as u128).pow(d as u32) - 1) / 2;
            a.pow_mod(e, f).sub(&P::one(&ctx))
        };
        let g = b.gcd(f);
        if g.deg() > 0 && g.deg() < f.deg() {
            let h = f.div_exact(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&h, d, p, rng));
            return out;
        }
    }
}

fn factor_fp(f: &P) -> Vec<(P, usize)> {
    let p = f.ctx().characteristic();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let mut out = Vec::new();
    for (sq, m) in squarefree_fp(f, p) {
        for (g, d) in distinct_degree(&sq, p) {
            for h in equal_degree(&g, d, p, &mut rng) {
                out.push((h.monic(), m));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Q

fn squarefree_q(f: &P) -> Vec<(P, usize)> {
    let mut out = Vec::new();
    let a = f.monic();
    let b = a.derivative();
    let c = a.gcd(&b);
    let mut w = a.div_exact(&c).expect("gcd divides");
    let mut y = b.div_exact(&c).expect("gcd divides");
    let mut z = y.sub(&w.derivative());
    let mut i = 1;
    while w.deg() > 0 {
        let g = w.gcd(&z);
        w = w.div_exact(&g).expect("gcd divides");
        y = z.div_exact(&g).expect("gcd divides");
        z = y.sub(&w.derivative());
        if g.deg() > 0 {
            out.push((g, i));
        }
        i += 1;
    }
    out
}

fn factor_q(f: &P) -> Vec<(P, usize)> {
    let mut out = Vec::new();
    for (g, m) in squarefree_q(f) {
        for h in zassenhaus(&g) {
            out.push((h, m));
        }
    }
    out
}

/// Primitive integer polynomial with positive leading coefficient, proportional to `f`.
fn to_primitive_int(f: &P) -> Vec<BigInt> {
    let qs: Vec<BigRational> = f.coeffs().iter().map(|c| c.as_rational().expect("Q").clone()).collect();
    let lcm = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = qs.iter().map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    ints.iter().map(|c| c / &content * &sign).collect()
}

fn int_to_q(v: &[BigInt]) -> P {
    P::new(&BaseField::Rationals, v.iter().map(|c| Scalar::Rational(BigRational::from_integer(c.clone()))).collect())
}

fn int_to_fp(v: &[BigInt], p: u64) -> P {
    P::new(&BaseField::Prime(p), v.iter().map(|c| Scalar::Prime(PrimeFieldElement::from_bigint(c, p))).collect())
}

fn fp_to_int(f: &P) -> Vec<BigInt> {
    f.coeffs()
        .iter()
        .map(|c| match c {
            Scalar::Prime(a) => BigInt::from(a.value()),
            Scalar::Rational(_) => unreachable!("F_p polynomial"),
        })
        .collect()
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    v
}

fn int_mod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = a.iter().map(|c| c.mod_floor(m)).collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    a.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

/// Lifts `f = g*h (mod p)` with `g` monic to a factorization mod `p^k`.
fn hensel_pair(f: &[BigInt], g: &[BigInt], h: &[BigInt], p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let gp = int_to_fp(g, p);
    let hp = int_to_fp(h, p);
    let (one, s, t) = gp.ext_gcd(&hp);
    debug_assert_eq!(one.deg(), 0);
    let mut g = g.to_vec();
    let mut h = h.to_vec();
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    for _ in 1..k {
        let next = &m * &pb;
        let gh = int_mul(&g, &h);
        let n = f.len().max(gh.len());
        let e: Vec<BigInt> = (0..n)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default();
                debug_assert!((&a % &m).is_zero());
                a / &m
            })
            .collect();
        let ep = int_to_fp(&e, p);
        let (q, r) = t.mul(&ep).div_rem(&gp).expect("nonzero");
        let dh = s.mul(&ep).add(&q.mul(&hp));
        let dg = fp_to_int(&r);
        let dh = fp_to_int(&dh);
        let add = |a: &mut Vec<BigInt>, d: &[BigInt]| {
            if a.len() < d.len() {
                a.resize(d.len(), BigInt::zero());
            }
            for (i, c) in d.iter().enumerate() {
                a[i] += c * &m;
            }
        };
        add(&mut g, &dg);
        add(&mut h, &dh);
        g = int_mod(&g, &next);
        h = int_mod(&h, &next);
        m = next;
    }
    (g, h)
}

fn hensel_all(f: &[BigInt], factors: &[P], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let pk = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        // f = lc * g; return g monic mod p^k
        let lc = f.last().expect("nonzero").clone();
        let inv = lc.modinv(&pk).expect("lc invertible mod p");
        return vec![int_mod(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), &pk)];
    }
    let g = fp_to_int(&factors[0]);
    let rest = factors[1..].iter().fold(P::one(&BaseField::Prime(p)), |acc, h| acc.mul(h));
    let lc = int_to_fp(&[f.last().expect("nonzero").clone()], p);
    let h = fp_to_int(&rest.mul(&lc));
    let (g, h) = hensel_pair(f, &g, &h, p, k);
    let mut out = vec![g];
    out.extend(hensel_all(&h, &factors[1..], p, k));
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible monic factors of a squarefree polynomial over `Q`.
fn zassenhaus(f: &P) -> Vec<P> {
    if f.deg() <= 1 {
        return vec![f.monic()];
    }
    let mut fz = to_primitive_int(f);
    let n = fz.len() - 1;
    let lc = fz[n].clone();
    let mut p = 3u64;
    let modp = loop {
        if is_prime(p) && !(&lc % BigInt::from(p)).is_zero() {
            let fp = int_to_fp(&fz, p);
            if is_squarefree(&fp) {
                break fp;
            }
        }
        p += 1;
    };
    let local: Vec<P> = factor_fp(&modp.monic()).into_iter().map(|(g, _)| g).collect();
    if local.len() == 1 {
        return vec![f.monic()];
    }
    // Mignotte-style bound on coefficients of lc * (any factor).
    let norm2: BigInt = fz.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + BigInt::one();
    let bound = BigInt::from(2).pow(n as u32) * norm * lc.abs() * 2;
    let mut k = 1u32;
    while BigInt::from(p).pow(k) <= bound {
        k += 1;
    }
    let pk = BigInt::from(p).pow(k);
    let mut lifted = hensel_all(&fz, &local, p, k);
    let mut found = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        for subset in subsets(lifted.len(), s) {
            let cur_lc = fz.last().expect("nonzero").clone();
            let mut cand = vec![cur_lc.clone()];
            for &i in &subset {
                cand = int_mod(&int_mul(&cand, &lifted[i]), &pk);
            }
            let cand = symmetric(&cand, &pk);
            let cand_q = int_to_q(&cand);
            let cand_prim = to_primitive_int(&cand_q);
            let fq = int_to_q(&fz);
            let cq = int_to_q(&cand_prim);
            let (quo, rem) = fq.div_rem(&cq).expect("nonzero");
            let integral = quo.coeffs().iter().all(|c| c.as_rational().is_some_and(|r| r.is_integer()));
            if rem.is_zero() && integral {
                found.push(cq.monic());
                fz = quo.coeffs().iter().map(|c| c.as_rational().expect("Q").to_integer()).collect();
                lifted = lifted.into_iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, g)| g).collect();
                continue 'outer;
            }
        }
        s += 1;
    }
    if fz.len() > 1 {
        found.push(int_to_q(&fz).monic());
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(fs: &[(P, usize)], ctx: &BaseField) -> P {
        fs.iter().fold(P::one(ctx), |acc, (g, m)| acc.mul(&g.pow(*m as u64)))
    }

    #[test]
    fn factor_over_fp_recombines() {
        let f5 = BaseField::Prime(5);
        // x^3 - x = x(x-1)(x+1)
        let f = P::from_ints(&f5, &[0, -1, 0, 1]);
        let fs = factor(&f).unwrap();
        assert_eq!(fs.len(), 3);
        assert_eq!(expand(&fs, &f5), f);
        // (x^2+2)^2 (x+1)^5 over F_5, exercising the p-th power branch
        let g = P::from_ints(&f5, &[2, 0, 1]).pow(2).mul(&P::from_ints(&f5, &[1, 1]).pow(5));
        let gs = factor(&g).unwrap();
        assert_eq!(expand(&gs, &f5), g);
        assert!(gs.iter().any(|(h, m)| h.deg() == 1 && *m == 5));
        assert!(gs.iter().any(|(h, m)| h.deg() == 2 && *m == 2));
    }

    #[test]
    fn factor_over_q() {
        let q = BaseField::Rationals;
        // (x^2 - 2)(x^2 + 1)(x - 3)^2 * 7
        let f = P::from_ints(&q, &[-2, 0, 1])
            .mul(&P::from_ints(&q, &[1, 0, 1]))
            .mul(&P::from_ints(&q, &[-3, 1]).pow(2))
            .scale(&q.int(7));
        let fs = factor(&f).unwrap();
        assert_eq!(fs.len(), 3);
        assert_eq!(expand(&fs, &q).scale(&q.int(7)), f);
        // x^4 + 1 is irreducible over Q but reducible mod every prime
        assert!(is_irreducible(&P::from_ints(&q, &[1, 0, 0, 0, 1])).unwrap());
        // product of two quadratics without rational roots
        let h = P::from_ints(&q, &[2, 0, 1]).mul(&P::from_ints(&q, &[-3, 1, 1]));
        assert!(!is_irreducible(&h).unwrap());
        assert_eq!(factor(&h).unwrap().len(), 2);
    }

    #[test]
    fn irreducibility_over_small_fields() {
        let f2 = BaseField::Prime(2);
        assert!(is_irreducible(&P::from_ints(&f2, &[1, 1, 1])).unwrap());
        assert!(!is_irreducible(&P::from_ints(&f2, &[1, 0, 1])).unwrap());
        assert!(is_irreducible(&P::from_ints(&BaseField::Prime(3), &[1, 0, 1])).unwrap());
    }
}
