//! Factorisation of characteristic polynomials.
//!
//! Over F_p the factorisation is complete: ascending trial division by
//! monic polynomials is deterministic and, at the degrees this crate
//! handles, faster than it sounds: a composite trial divisor never
//! divides because its own factors were divided out at a lower degree.
//!
//! Over ℚ only a squarefree decomposition refined by rational roots is
//! produced. The factors are still pairwise coprime with the correct
//! multiplicities: which is all the generalized-eigenspace splitting
//! needs: but factors of degree ≥ 2 are not guaranteed irreducible.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::matrix::ExactMatrix;
use crate::scalar::{BaseField, FieldScalar, Polynomial};
use crate::snf::charpoly;
use crate::Result;

/// Factors the characteristic polynomial of a square matrix over F_p or
/// ℚ into pairwise coprime monic factors with multiplicities, expanding
/// back to the characteristic polynomial exactly. Over F_p every factor
/// is irreducible; over ℚ see the module notes.
pub fn factor_squarefree_charpoly(m: &ExactMatrix) -> Result<Vec<(Polynomial, usize)>> {
    let cp = charpoly(m)?;
    let factors = factor_poly(&cp)?;
    // sanity: the factorisation expands to the characteristic polynomial
    let mut acc = Polynomial::one(cp.base().clone());
    for (f, e) in &factors {
        acc = acc.mul(&f.pow(*e));
    }
    if acc != cp {
        return Err(Error::Internal("factorisation does not expand back".into()));
    }
    Ok(factors)
}

/// Factors a monic polynomial into pairwise coprime monic factors.
pub fn factor_poly(p: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    if p.is_zero() {
        return Err(Error::Parse("cannot factor the zero polynomial".into()));
    }
    let p = p.monic();
    match p.base() {
        BaseField::Prime(_) => Ok(factor_fp(&p)),
        BaseField::Rationals => Ok(factor_q(&p)),
    }
}

/// Complete factorisation over F_p by ascending trial division.
fn factor_fp(p: &Polynomial) -> Vec<(Polynomial, usize)> {
    let base = p.base().clone();
    let q = match base {
        BaseField::Prime(q) => q,
        _ => unreachable!(),
    };
    let mut rest = p.clone();
    let mut out: Vec<(Polynomial, usize)> = Vec::new();
    let mut d = 1usize;
    while rest.degree().is_some_and(|rd| rd >= 2 * d || rd == d) {
        // monic polynomials of degree d, coefficients counted in base q
        let count = (q as u128).pow(d as u32);
        for idx in 0..count {
            let mut coeffs = Vec::with_capacity(d + 1);
            let mut n = idx;
            for _ in 0..d {
                coeffs.push(base.from_integer((n % q as u128) as i64));
                n /= q as u128;
            }
            coeffs.push(base.one());
            let cand = Polynomial::new(base.clone(), coeffs);
            if !cand.divides(&rest) {
                continue;
            }
            let mut mult = 0usize;
            while cand.divides(&rest) {
                rest = rest.divmod(&cand).0;
                mult += 1;
            }
            out.push((cand, mult));
            if rest.degree().is_none_or(|rd| rd < 2 * d && rd != d) {
                break;
            }
        }
        d += 1;
    }
    if rest.degree().is_some_and(|rd| rd > 0) {
        out.push((rest, 1)); // leftover of degree > 2*(d-1): irreducible
    }
    out
}

/// Squarefree decomposition over ℚ, refined by rational roots.
fn factor_q(p: &Polynomial) -> Vec<(Polynomial, usize)> {
    let mut out = Vec::new();
    for (sqf, mult) in squarefree_decomposition(p) {
        for (factor, inner) in split_rational_roots(&sqf) {
            out.push((factor, inner * mult));
        }
    }
    out
}

/// Yun-style squarefree decomposition (characteristic zero): returns
/// pairwise coprime squarefree polynomials with multiplicities.
fn squarefree_decomposition(p: &Polynomial) -> Vec<(Polynomial, usize)> {
    let mut out = Vec::new();
    let g = p.gcd(&p.derivative());
    if g.is_one() {
        if p.degree() != Some(0) {
            out.push((p.clone(), 1));
        }
        return out;
    }
    let mut w = p.divmod(&g).0; // product of distinct prime factors
    let mut rest = g;
    let mut mult = 1usize;
    while !w.is_one() {
        let next = w.gcd(&rest);
        let part = w.divmod(&next).0; // factors of exactly this multiplicity
        if part.degree().is_some_and(|d| d > 0) {
            out.push((part, mult));
        }
        if !next.is_one() {
            rest = rest.divmod(&next).0;
        }
        w = next;
        mult += 1;
    }
    out
}

/// Splits all rational roots off a squarefree polynomial over ℚ. The
/// leftover (if nonconstant) has no rational roots and stays whole.
fn split_rational_roots(p: &Polynomial) -> Vec<(Polynomial, usize)> {
    let base = BaseField::Rationals;
    let mut rest = p.monic();
    let mut out = Vec::new();
    for root in rational_root_candidates(&rest) {
        if rest.degree().is_none_or(|d| d == 0) {
            break;
        }
        let at = FieldScalar::Rat(root.clone());
        if rest.eval(&at).is_zero() {
            // divide by (t - root)
            let linear = Polynomial::new(
                base.clone(),
                vec![FieldScalar::Rat(-root.clone()), base.one()],
            );
            let (q, r) = rest.divmod(&linear);
            debug_assert!(r.is_zero());
            out.push((linear, 1));
            rest = q;
        }
    }
    if rest.degree().is_some_and(|d| d > 0) {
        out.push((rest, 1));
    }
    out
}

/// Candidate rational roots ±(divisor of a0)/(divisor of lead) after
/// clearing denominators; degenerates gracefully when the constant term
/// is too large to factor by trial division.
fn rational_root_candidates(p: &Polynomial) -> Vec<BigRational> {
    let mut candidates = vec![BigRational::zero()];
    let (Some(_), Some(lead)) = (p.degree(), p.leading()) else {
        return candidates;
    };
    // clear denominators to an integer polynomial
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        if let FieldScalar::Rat(r) = c {
            lcm = lcm_bigint(&lcm, r.denom());
        }
    }
    let int_coeff = |c: &FieldScalar| -> BigInt {
        match c {
            FieldScalar::Rat(r) => r.numer() * (&lcm / r.denom()),
            _ => unreachable!(),
        }
    };
    // use the lowest nonzero coefficient so a zero root (one factor of t,
    // since the input is squarefree) does not hide the other candidates
    let low = (0..=p.degree().unwrap())
        .find(|&k| !p.coeff(k).is_zero())
        .unwrap();
    let a0 = int_coeff(&p.coeff(low));
    let an = match lead {
        FieldScalar::Rat(_) => int_coeff(lead),
        _ => unreachable!(),
    };
    let num_divs = small_divisors(&a0.abs());
    let den_divs = small_divisors(&an.abs());
    for n in &num_divs {
        for d in &den_divs {
            let r = BigRational::new(n.clone(), d.clone());
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort();
    candidates.dedup();
    candidates
}

fn lcm_bigint(a: &BigInt, b: &BigInt) -> BigInt {
    let g = gcd_bigint(a.clone(), b.clone());
    a / &g * b
}

fn gcd_bigint(mut a: BigInt, mut b: BigInt) -> BigInt {
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a.abs()
}

/// Divisors by trial division, capped: beyond the cap only 1 and |n| are
/// offered, so huge constant terms lose root detection, never soundness.
fn small_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    if let Some(v) = to_u64(n) {
        let mut d = 2u64;
        while d.saturating_mul(d) <= v && d < 1_000_000 {
            if v % d == 0 {
                out.push(BigInt::from(d));
                out.push(BigInt::from(v / d));
            }
            d += 1;
        }
        if v > 1 {
            out.push(BigInt::from(v));
        }
    } else {
        out.push(n.abs());
    }
    out.sort();
    out.dedup();
    out
}

fn to_u64(n: &BigInt) -> Option<u64> {
    use num_traits::ToPrimitive;
    n.abs().to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_poly, ScalarRing};

    fn fp(p: u64) -> BaseField {
        BaseField::prime(p).unwrap()
    }

    fn expand(base: &BaseField, factors: &[(Polynomial, usize)]) -> Polynomial {
        let mut acc = Polynomial::one(base.clone());
        for (f, e) in factors {
            acc = acc.mul(&f.pow(*e));
        }
        acc
    }

    #[test]
    fn charpoly_factor_diag01_f2() {
        let ring = ScalarRing::prime_field(2).unwrap();
        let m = ExactMatrix::from_int_rows(&ring, &[vec![0, 0], vec![0, 1]]);
        let factors = factor_squarefree_charpoly(&m).unwrap();
        let strs: Vec<(String, usize)> =
            factors.iter().map(|(f, e)| (f.to_string(), *e)).collect();
        assert_eq!(strs, vec![("t".to_string(), 1), ("1+t".to_string(), 1)]);
    }

    #[test]
    fn charpoly_factor_nilpotent_jordan() {
        let ring = ScalarRing::rationals();
        let m = ExactMatrix::from_int_rows(&ring, &[vec![0, 1], vec![0, 0]]);
        let factors = factor_squarefree_charpoly(&m).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].0.to_string(), "t");
        assert_eq!(factors[0].1, 2);
    }

    #[test]
    fn charpoly_factor_companion_irreducible_f3() {
        // t^2+1 has no root mod 3 (oracle: evaluate at 0, 1, 2)
        let base = fp(3);
        let pol = parse_poly("1+t^2", &base).unwrap();
        for c in 0..3 {
            assert!(!pol.eval(&base.from_integer(c)).is_zero());
        }
        let ring = ScalarRing::prime_field(3).unwrap();
        let m = ExactMatrix::from_int_rows(&ring, &[vec![0, -1], vec![1, 0]]);
        let factors = factor_squarefree_charpoly(&m).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].0.to_string(), "1+t^2");
        assert_eq!(factors[0].1, 1);
    }

    #[test]
    fn fp_factorisation_is_complete_and_exact() {
        // (t)(t+1)^2(t^2+t+2) over F_3: the quadratic is irreducible
        // (no roots mod 3: 2, 1, 2 at t = 0, 1, 2)
        let base = fp(3);
        let t = parse_poly("t", &base).unwrap();
        let t1 = parse_poly("1+t", &base).unwrap();
        let quad = parse_poly("2+t+t^2", &base).unwrap();
        let product = t.mul(&t1).mul(&t1).mul(&quad);
        let factors = factor_poly(&product).unwrap();
        assert_eq!(expand(&base, &factors), product);
        assert_eq!(factors.len(), 3);
        let mults: Vec<usize> = factors.iter().map(|(_, e)| *e).collect();
        assert!(mults.contains(&2));
        // all factors pairwise coprime
        for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                assert!(factors[i].0.gcd(&factors[j].0).is_one());
            }
        }
    }

    #[test]
    fn q_factorisation_finds_rational_roots() {
        let base = BaseField::Rationals;
        // (t-2)^2 (t^2+1): squarefree split + root extraction
        let p = parse_poly("4-4*t+t^2", &base)
            .unwrap()
            .mul(&parse_poly("1+t^2", &base).unwrap());
        let factors = factor_poly(&p).unwrap();
        assert_eq!(expand(&base, &factors), p.monic());
        assert!(factors.iter().any(|(f, e)| f.to_string() == "-2+t" && *e == 2));
        assert!(factors.iter().any(|(f, e)| f.to_string() == "1+t^2" && *e == 1));
        for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                assert!(factors[i].0.gcd(&factors[j].0).is_one());
            }
        }
    }

    #[test]
    fn f2_perfect_power_multiplicities() {
        // (t^2 + t + 1)^2 over F_2: derivative vanishes, trial division
        // must still find the multiplicity
        let base = fp(2);
        let f = parse_poly("1+t+t^2", &base).unwrap();
        let p = f.pow(2);
        let factors = factor_poly(&p).unwrap();
        assert_eq!(factors, vec![(f, 2)]);
    }
}
