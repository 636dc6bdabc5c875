//! Exact scalars over ℚ, F_p, the polynomial ring `k[t]` and the rational
//! function field k(t), in canonical form.
//!
//! Canonical form is what makes equality trustworthy downstream: reduced
//! fractions with positive denominator for ℚ, residues in `[0, p)` for
//! F_p, coefficient lists without trailing zeros for `k[t]`, and coprime
//! numerator/denominator with monic denominator for k(t). Two scalars are
//! equal iff their representations are identical, so `==` is the
//! mathematical equality.
//!
//! String forms (used by every JSON format): ℚ as `a` or `a/b` with
//! `b > 0` and `gcd(a, b) = 1`; F_p as the decimal residue; polynomials
//! as `c0+c1*t+c2*t^2` listing nonzero terms by ascending degree; rational
//! functions as the bare polynomial when the denominator is 1 and as
//! `(num)/(den)` otherwise.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::Result;

/// A computable base field: ℚ or F_p with p prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseField {
    Rationals,
    Prime(u64),
}

impl BaseField {
    /// Checks primality by trial division up to √p.
    pub fn prime(p: u64) -> Result<BaseField> {
        if p < 2 {
            return Err(Error::NotPrime(p));
        }
        let mut d = 2u64;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(Error::NotPrime(p));
            }
            d += 1;
        }
        Ok(BaseField::Prime(p))
    }

    pub fn zero(&self) -> FieldScalar {
        match self {
            BaseField::Rationals => FieldScalar::Rat(BigRational::zero()),
            BaseField::Prime(p) => FieldScalar::Mod { value: 0, p: *p },
        }
    }

    pub fn one(&self) -> FieldScalar {
        match self {
            BaseField::Rationals => FieldScalar::Rat(BigRational::one()),
            BaseField::Prime(p) => FieldScalar::Mod { value: 1, p: *p },
        }
    }

    pub fn from_integer(&self, n: i64) -> FieldScalar {
        match self {
            BaseField::Rationals => FieldScalar::Rat(BigRational::from(BigInt::from(n))),
            BaseField::Prime(p) => {
                let p = *p;
                let r = n.rem_euclid(p as i64) as u64;
                FieldScalar::Mod { value: r, p }
            }
        }
    }

    /// True when `s` is a canonical element of this field.
    pub fn contains(&self, s: &FieldScalar) -> bool {
        match (self, s) {
            (BaseField::Rationals, FieldScalar::Rat(_)) => true,
            (BaseField::Prime(p), FieldScalar::Mod { p: q, value }) => p == q && value < p,
            _ => false,
        }
    }

    /// Distinct field elements for deterministic sampling pools. For F_p
    /// the pool is exhausted after p elements; over ℚ it never is.
    pub fn element(&self, index: u64) -> Option<FieldScalar> {
        match self {
            BaseField::Rationals => Some(FieldScalar::Rat(BigRational::from(BigInt::from(
                // 0, 1, -1, 2, -2, ...
                if index.is_multiple_of(2) {
                    (index / 2) as i64
                } else {
                    -((index / 2 + 1) as i64)
                },
            )))),
            BaseField::Prime(p) => {
                if index < *p {
                    Some(FieldScalar::Mod { value: index, p: *p })
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::Prime(p) => write!(f, "F{}", p),
        }
    }
}

/// Specification of a field scalars can live in. `RationalFunctions`
/// never nests: its base is ℚ or F_p by construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
    RationalFunctions(BaseField),
}

impl FieldSpec {
    pub fn rationals() -> FieldSpec {
        FieldSpec::Rationals
    }

    pub fn prime_field(p: u64) -> Result<FieldSpec> {
        BaseField::prime(p)?;
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn rational_functions(base: BaseField) -> FieldSpec {
        FieldSpec::RationalFunctions(base)
    }

    /// The base field: the field itself for ℚ/F_p, the coefficient field
    /// for k(t).
    pub fn base(&self) -> BaseField {
        match self {
            FieldSpec::Rationals => BaseField::Rationals,
            FieldSpec::PrimeField(p) => BaseField::Prime(*p),
            FieldSpec::RationalFunctions(b) => b.clone(),
        }
    }

    pub fn is_function_field(&self) -> bool {
        matches!(self, FieldSpec::RationalFunctions(_))
    }

    pub fn zero(&self) -> FieldScalar {
        ScalarRing::Field(self.clone()).zero()
    }

    pub fn one(&self) -> FieldScalar {
        ScalarRing::Field(self.clone()).one()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{}", p),
            FieldSpec::RationalFunctions(b) => write!(f, "{}(t)", b),
        }
    }
}

/// The ring a matrix lives over: one of the supported fields, or the
/// polynomial ring `k[t]` (which is not a field: elimination rejects it,
/// Smith normal form requires it).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ScalarRing {
    Field(FieldSpec),
    Polynomials(BaseField),
}

impl ScalarRing {
    pub fn rationals() -> ScalarRing {
        ScalarRing::Field(FieldSpec::Rationals)
    }

    pub fn prime_field(p: u64) -> Result<ScalarRing> {
        Ok(ScalarRing::Field(FieldSpec::prime_field(p)?))
    }

    pub fn polynomials(base: BaseField) -> ScalarRing {
        ScalarRing::Polynomials(base)
    }

    pub fn rational_functions(base: BaseField) -> ScalarRing {
        ScalarRing::Field(FieldSpec::RationalFunctions(base))
    }

    pub fn is_field(&self) -> bool {
        matches!(self, ScalarRing::Field(_))
    }

    pub fn base(&self) -> BaseField {
        match self {
            ScalarRing::Field(f) => f.base(),
            ScalarRing::Polynomials(b) => b.clone(),
        }
    }

    /// `k[t]` embeds into k(t); fields are their own fraction field.
    pub fn fraction_field(&self) -> FieldSpec {
        match self {
            ScalarRing::Field(f) => f.clone(),
            ScalarRing::Polynomials(b) => FieldSpec::RationalFunctions(b.clone()),
        }
    }

    pub fn zero(&self) -> FieldScalar {
        match self {
            ScalarRing::Field(FieldSpec::Rationals) => FieldScalar::Rat(BigRational::zero()),
            ScalarRing::Field(FieldSpec::PrimeField(p)) => FieldScalar::Mod { value: 0, p: *p },
            ScalarRing::Field(FieldSpec::RationalFunctions(b)) => {
                FieldScalar::RatFun(RationalFunction::from_poly(Polynomial::zero(b.clone())))
            }
            ScalarRing::Polynomials(b) => FieldScalar::Poly(Polynomial::zero(b.clone())),
        }
    }

    pub fn one(&self) -> FieldScalar {
        match self {
            ScalarRing::Field(FieldSpec::Rationals) => FieldScalar::Rat(BigRational::one()),
            ScalarRing::Field(FieldSpec::PrimeField(p)) => FieldScalar::Mod { value: 1, p: *p },
            ScalarRing::Field(FieldSpec::RationalFunctions(b)) => {
                FieldScalar::RatFun(RationalFunction::from_poly(Polynomial::one(b.clone())))
            }
            ScalarRing::Polynomials(b) => FieldScalar::Poly(Polynomial::one(b.clone())),
        }
    }

    pub fn from_integer(&self, n: i64) -> FieldScalar {
        let c = self.base().from_integer(n);
        match self {
            ScalarRing::Field(FieldSpec::Rationals) | ScalarRing::Field(FieldSpec::PrimeField(_)) => c,
            ScalarRing::Field(FieldSpec::RationalFunctions(b)) => {
                FieldScalar::RatFun(RationalFunction::from_poly(Polynomial::constant(b.clone(), c)))
            }
            ScalarRing::Polynomials(b) => FieldScalar::Poly(Polynomial::constant(b.clone(), c)),
        }
    }

    /// True when `s` is a canonical element of this ring.
    pub fn contains(&self, s: &FieldScalar) -> bool {
        match (self, s) {
            (ScalarRing::Field(FieldSpec::Rationals), FieldScalar::Rat(_)) => true,
            (ScalarRing::Field(FieldSpec::PrimeField(p)), FieldScalar::Mod { p: q, value }) => {
                p == q && value < p
            }
            (ScalarRing::Field(FieldSpec::RationalFunctions(b)), FieldScalar::RatFun(r)) => {
                r.num.base == *b
            }
            (ScalarRing::Polynomials(b), FieldScalar::Poly(q)) => q.base == *b,
            _ => false,
        }
    }

    /// Re-expresses a scalar canonically in this ring, when it embeds:
    /// base scalars embed into `k[t]` and k(t), and polynomials embed into
    /// k(t). Rejects anything else.
    pub fn coerce(&self, s: &FieldScalar) -> Result<FieldScalar> {
        if self.contains(s) {
            return Ok(s.clone());
        }
        let err = || Error::WrongRing {
            ring: format!("{}", self),
            value: format!("{}", s),
        };
        match self {
            ScalarRing::Field(FieldSpec::Rationals) | ScalarRing::Field(FieldSpec::PrimeField(_)) => {
                Err(err())
            }
            ScalarRing::Polynomials(b) => {
                if b.contains(s) {
                    Ok(FieldScalar::Poly(Polynomial::constant(b.clone(), s.clone())))
                } else {
                    Err(err())
                }
            }
            ScalarRing::Field(FieldSpec::RationalFunctions(b)) => match s {
                FieldScalar::Poly(q) if q.base == *b => {
                    Ok(FieldScalar::RatFun(RationalFunction::from_poly(q.clone())))
                }
                c if b.contains(c) => Ok(FieldScalar::RatFun(RationalFunction::from_poly(
                    Polynomial::constant(b.clone(), c.clone()),
                ))),
                _ => Err(err()),
            },
        }
    }

    /// Parses the canonical string form of an element of this ring.
    pub fn parse(&self, text: &str) -> Result<FieldScalar> {
        let text = text.trim();
        match self {
            ScalarRing::Field(FieldSpec::Rationals) => parse_rational(text),
            ScalarRing::Field(FieldSpec::PrimeField(p)) => parse_mod(text, *p),
            ScalarRing::Polynomials(b) => Ok(FieldScalar::Poly(parse_poly(text, b)?)),
            ScalarRing::Field(FieldSpec::RationalFunctions(b)) => {
                Ok(FieldScalar::RatFun(parse_ratfun(text, b)?))
            }
        }
    }

    /// Deterministic element pool for sampling; index 0 is always zero.
    /// For function fields the pool walks constants and low-degree
    /// polynomials and never runs dry.
    pub fn element(&self, index: u64) -> Option<FieldScalar> {
        match self {
            ScalarRing::Field(FieldSpec::Rationals) => BaseField::Rationals.element(index),
            ScalarRing::Field(FieldSpec::PrimeField(p)) => BaseField::Prime(*p).element(index),
            ScalarRing::Polynomials(b) | ScalarRing::Field(FieldSpec::RationalFunctions(b)) => {
                // Polynomials with coefficients from the base pool, ordered
                // by (degree bound, coefficient tuple).
                let poly = poly_element(b, index);
                match self {
                    ScalarRing::Polynomials(_) => Some(FieldScalar::Poly(poly)),
                    _ => Some(FieldScalar::RatFun(RationalFunction::from_poly(poly))),
                }
            }
        }
    }
}

impl fmt::Display for ScalarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarRing::Field(s) => write!(f, "{}", s),
            ScalarRing::Polynomials(b) => write!(f, "{}[t]", b),
        }
    }
}

/// Enumerates distinct polynomials over the base field, zero first.
fn poly_element(base: &BaseField, index: u64) -> Polynomial {
    match base {
        BaseField::Prime(p) => {
            // Index written in base p gives the coefficient list.
            let mut coeffs = Vec::new();
            let mut n = index;
            while n > 0 {
                coeffs.push(base.from_integer((n % p) as i64));
                n /= p;
            }
            Polynomial::new(base.clone(), coeffs)
        }
        BaseField::Rationals => {
            // Interleave integers with low-degree t-multiples.
            let deg = (index % 3) as usize;
            let k = index / 3;
            let mut coeffs = vec![base.zero(); deg];
            coeffs.push(base.element(k + if deg == 0 { 0 } else { 1 }).unwrap());
            Polynomial::new(base.clone(), coeffs)
        }
    }
}

/// A dense polynomial in t over ℚ or F_p. `coeffs[i]` is the coefficient
/// of t^i; no trailing zeros, so the zero polynomial has an empty list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    base: BaseField,
    coeffs: Vec<FieldScalar>,
}

impl Polynomial {
    /// Builds a polynomial, normalising away trailing zeros. Coefficients
    /// must be canonical base-field scalars.
    pub fn new(base: BaseField, mut coeffs: Vec<FieldScalar>) -> Polynomial {
        for c in &coeffs {
            assert!(base.contains(c), "polynomial coefficient outside base field");
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { base, coeffs }
    }

    pub fn zero(base: BaseField) -> Polynomial {
        Polynomial { base, coeffs: vec![] }
    }

    pub fn one(base: BaseField) -> Polynomial {
        let one = base.one();
        Polynomial::new(base, vec![one])
    }

    pub fn constant(base: BaseField, c: FieldScalar) -> Polynomial {
        Polynomial::new(base, vec![c])
    }

    /// The monomial t.
    pub fn t(base: BaseField) -> Polynomial {
        let coeffs = vec![base.zero(), base.one()];
        Polynomial::new(base, coeffs)
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    pub fn coeffs(&self) -> &[FieldScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldScalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldScalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.base, other.base);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        Polynomial::new(self.base.clone(), coeffs)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial::new(self.base.clone(), self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.base, other.base);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.base.clone());
        }
        let mut coeffs = vec![self.base.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Polynomial::new(self.base.clone(), coeffs)
    }

    pub fn scale(&self, c: &FieldScalar) -> Polynomial {
        Polynomial::new(self.base.clone(), self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, mut e: usize) -> Polynomial {
        let mut acc = Polynomial::one(self.base.clone());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division: returns (quotient, remainder) with
    /// deg r < deg divisor. Panics on a zero divisor.
    pub fn divmod(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert_eq!(self.base, divisor.base);
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.degree().unwrap();
        let lead_inv = divisor.leading().unwrap().inv().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![self.base.zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading().unwrap().mul(&lead_inv);
            let shift = rd - dd;
            quot[shift] = factor.clone();
            // rem -= factor * t^shift * divisor
            let mut coeffs = rem.coeffs.clone();
            for (j, b) in divisor.coeffs.iter().enumerate() {
                coeffs[shift + j] = coeffs[shift + j].sub(&factor.mul(b));
            }
            rem = Polynomial::new(self.base.clone(), coeffs);
        }
        (Polynomial::new(self.base.clone(), quot), rem)
    }

    pub fn rem(&self, divisor: &Polynomial) -> Polynomial {
        self.divmod(divisor).1
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic normalisation (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero(self.base.clone());
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&self.base.from_integer(i as i64)))
            .collect();
        Polynomial::new(self.base.clone(), coeffs)
    }

    /// Evaluates at a base-field point.
    pub fn eval(&self, at: &FieldScalar) -> FieldScalar {
        assert!(self.base.contains(at));
        let mut acc = self.base.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(c);
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = format!("{}", c);
            let term = match i {
                0 => cs,
                _ => {
                    let var = if i == 1 { "t".to_string() } else { format!("t^{}", i) };
                    if c.is_one() {
                        var
                    } else if cs == "-1" {
                        format!("-{}", var)
                    } else {
                        format!("{}*{}", cs, var)
                    }
                }
            };
            if out.is_empty() {
                out = term;
            } else if term.starts_with('-') {
                out.push_str(&term);
            } else {
                out.push('+');
                out.push_str(&term);
            }
        }
        write!(f, "{}", out)
    }
}

/// A reduced fraction of polynomials: denominator monic and nonzero,
/// gcd(num, den) = 1, and the zero element is 0/1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Polynomial, den: Polynomial) -> RationalFunction {
        if num.is_zero() {
            return RationalFunction {
                num: Polynomial::zero(den.base().clone()),
                den: Polynomial::one(den.base().clone()),
            };
        }
        let g = num.gcd(&den);
        let num = num.divmod(&g).0;
        let den = den.divmod(&g).0;
        // make the denominator monic
        let l = den.leading().unwrap().inv().unwrap();
        RationalFunction {
            num: num.scale(&l),
            den: den.scale(&l),
        }
    }

    pub fn from_poly(p: Polynomial) -> RationalFunction {
        let one = Polynomial::one(p.base().clone());
        RationalFunction { num: p, den: one }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        Self::reduce(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        Self::reduce(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Result<RationalFunction> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalFunction::new(self.den.clone(), self.num.clone())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// One exact scalar. The variant tags which of the four supported rings
/// the value lives in; all arithmetic preserves canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    /// Reduced fraction over ℚ (positive denominator).
    Rat(BigRational),
    /// Residue in `[0, p)`.
    Mod { value: u64, p: u64 },
    /// Element of `k[t]`.
    Poly(Polynomial),
    /// Element of k(t).
    RatFun(RationalFunction),
}

impl FieldScalar {
    pub fn from_int_rat(n: i64, d: i64) -> FieldScalar {
        FieldScalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rat(r) => r.is_zero(),
            FieldScalar::Mod { value, .. } => *value == 0,
            FieldScalar::Poly(p) => p.is_zero(),
            FieldScalar::RatFun(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldScalar::Rat(r) => r.is_one(),
            FieldScalar::Mod { value, .. } => *value == 1,
            FieldScalar::Poly(p) => p.is_one(),
            FieldScalar::RatFun(r) => r.num().is_one() && r.den().is_one(),
        }
    }

    fn binop_mismatch(&self, other: &FieldScalar) -> ! {
        panic!(
            "scalar arithmetic across different rings: {:?} vs {:?}",
            self, other
        );
    }

    pub fn add(&self, other: &FieldScalar) -> FieldScalar {
        match (self, other) {
            (FieldScalar::Rat(a), FieldScalar::Rat(b)) => FieldScalar::Rat(a + b),
            (FieldScalar::Mod { value: a, p }, FieldScalar::Mod { value: b, p: q }) if p == q => {
                FieldScalar::Mod { value: (a + b) % p, p: *p }
            }
            (FieldScalar::Poly(a), FieldScalar::Poly(b)) => FieldScalar::Poly(a.add(b)),
            (FieldScalar::RatFun(a), FieldScalar::RatFun(b)) => FieldScalar::RatFun(a.add(b)),
            _ => self.binop_mismatch(other),
        }
    }

    pub fn neg(&self) -> FieldScalar {
        match self {
            FieldScalar::Rat(a) => FieldScalar::Rat(-a),
            FieldScalar::Mod { value, p } => FieldScalar::Mod {
                value: if *value == 0 { 0 } else { p - value },
                p: *p,
            },
            FieldScalar::Poly(a) => FieldScalar::Poly(a.neg()),
            FieldScalar::RatFun(a) => FieldScalar::RatFun(a.neg()),
        }
    }

    pub fn sub(&self, other: &FieldScalar) -> FieldScalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldScalar) -> FieldScalar {
        match (self, other) {
            (FieldScalar::Rat(a), FieldScalar::Rat(b)) => FieldScalar::Rat(a * b),
            (FieldScalar::Mod { value: a, p }, FieldScalar::Mod { value: b, p: q }) if p == q => {
                FieldScalar::Mod {
                    value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    p: *p,
                }
            }
            (FieldScalar::Poly(a), FieldScalar::Poly(b)) => FieldScalar::Poly(a.mul(b)),
            (FieldScalar::RatFun(a), FieldScalar::RatFun(b)) => FieldScalar::RatFun(a.mul(b)),
            _ => self.binop_mismatch(other),
        }
    }

    /// Multiplicative inverse. Fails on zero, and on non-unit
    /// polynomials (`k[t]` is not a field).
    pub fn inv(&self) -> Result<FieldScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            FieldScalar::Rat(a) => Ok(FieldScalar::Rat(a.recip())),
            FieldScalar::Mod { value, p } => Ok(FieldScalar::Mod {
                value: mod_inv(*value, *p),
                p: *p,
            }),
            FieldScalar::Poly(a) => {
                if a.is_constant() {
                    Ok(FieldScalar::Poly(Polynomial::constant(
                        a.base().clone(),
                        a.coeff(0).inv()?,
                    )))
                } else {
                    Err(Error::NotAField(format!("{} has no inverse in k[t]", a)))
                }
            }
            FieldScalar::RatFun(a) => Ok(FieldScalar::RatFun(a.inv()?)),
        }
    }

    pub fn div(&self, other: &FieldScalar) -> Result<FieldScalar> {
        Ok(self.mul(&other.inv()?))
    }

    /// The polynomial payload, if this scalar is one.
    pub fn as_poly(&self) -> Option<&Polynomial> {
        match self {
            FieldScalar::Poly(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_ratfun(&self) -> Option<&RationalFunction> {
        match self {
            FieldScalar::RatFun(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldScalar::Mod { value, .. } => write!(f, "{}", value),
            FieldScalar::Poly(p) => write!(f, "{}", p),
            FieldScalar::RatFun(r) => {
                if r.is_polynomial() {
                    write!(f, "{}", r.num())
                } else {
                    write!(f, "({})/({})", r.num(), r.den())
                }
            }
        }
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p), p prime, a nonzero
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "inverse of non-unit mod p");
    t.rem_euclid(p as i128) as u64
}

// ---------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------

fn parse_rational(text: &str) -> Result<FieldScalar> {
    let bad = || Error::Parse(format!("invalid rational: {:?}", text));
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldScalar::Rat(BigRational::new(n, d)))
    } else {
        let n: BigInt = text.parse().map_err(|_| bad())?;
        Ok(FieldScalar::Rat(BigRational::from(n)))
    }
}

fn parse_mod(text: &str, p: u64) -> Result<FieldScalar> {
    let n: i64 = text
        .parse()
        .map_err(|_| Error::Parse(format!("invalid residue mod {}: {:?}", p, text)))?;
    Ok(BaseField::Prime(p).from_integer(n))
}

/// Parses `c0+c1*t+c2*t^2`-style polynomial strings. Terms may omit a
/// unit coefficient (`t`, `-t^2`) or the variable (`3`, `1/2`).
pub fn parse_poly(text: &str, base: &BaseField) -> Result<Polynomial> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |why: &str| Error::Parse(format!("invalid polynomial {:?}: {}", text, why));
    if text.is_empty() {
        return Err(bad("empty"));
    }
    // split into signed terms at top level (no parentheses inside a polynomial)
    let mut terms: Vec<String> = Vec::new();
    let mut current = String::new();
    for (i, ch) in text.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            // a sign directly after '*' or '^' or '/' belongs to the number
            let prev = text.chars().nth(i - 1).unwrap();
            if prev != '*' && prev != '^' && prev != '/' {
                terms.push(current.clone());
                current.clear();
            }
        }
        current.push(ch);
    }
    terms.push(current);

    let mut coeffs: Vec<FieldScalar> = Vec::new();
    let bump = |deg: usize, c: FieldScalar, coeffs: &mut Vec<FieldScalar>| {
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, base.zero());
        }
        coeffs[deg] = coeffs[deg].add(&c);
    };
    for term in terms {
        if term.is_empty() || term == "+" {
            return Err(bad("empty term"));
        }
        let (coef_str, deg) = if let Some(pos) = term.find('t') {
            let before = &term[..pos];
            let after = &term[pos + 1..];
            let deg: usize = if after.is_empty() {
                1
            } else if let Some(e) = after.strip_prefix('^') {
                e.parse().map_err(|_| bad("bad exponent"))?
            } else {
                return Err(bad("garbage after t"));
            };
            let coef = match before {
                "" | "+" => "1".to_string(),
                "-" => "-1".to_string(),
                s => s.strip_suffix('*').unwrap_or(s).to_string(),
            };
            (coef, deg)
        } else {
            (term.clone(), 0usize)
        };
        let c = parse_base_coeff(&coef_str, base)?;
        bump(deg, c, &mut coeffs);
    }
    Ok(Polynomial::new(base.clone(), coeffs))
}

fn parse_base_coeff(text: &str, base: &BaseField) -> Result<FieldScalar> {
    match base {
        BaseField::Rationals => parse_rational(text),
        BaseField::Prime(p) => parse_mod(text, *p),
    }
}

/// Parses a rational function: `(num)/(den)` or a bare polynomial.
pub fn parse_ratfun(text: &str, base: &BaseField) -> Result<RationalFunction> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix('(') {
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced parens: {:?}", text)))?;
        let num = parse_poly(&rest[..close], base)?;
        let tail = rest[close + 1..].trim();
        let tail = tail
            .strip_prefix('/')
            .ok_or_else(|| Error::Parse(format!("expected /(den) in {:?}", text)))?
            .trim();
        let den_body = tail
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected (den) in {:?}", text)))?;
        let den = parse_poly(den_body, base)?;
        RationalFunction::new(num, den)
    } else {
        Ok(RationalFunction::from_poly(parse_poly(text, base)?))
    }
}
