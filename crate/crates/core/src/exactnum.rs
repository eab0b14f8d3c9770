//! Exact rational scalars and the q-combinatorial functions built on them.
//!
//! All q-functions are written once, generically over [`Scalar`], so that the
//! same formulas can be evaluated at a rational point or inside a truncated
//! power series ring (used for the `q -> 1` scaling limit).

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
pub use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`. The sign may only appear on the numerator.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let parse_int = |t: &str, signed: bool| -> Result<BigInt> {
        let digits = if signed { t.strip_prefix(['-', '+']).unwrap_or(t) } else { t };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    let n = parse_int(num, true)?;
    let d = match den {
        Some(d) => parse_int(d, false)?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

/// Canonical text form: `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(x: &BigRational) -> String {
    x.to_string()
}

/// Minimal field-like interface needed by the q-number formulas.
pub trait Scalar:
    Clone + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// `None` when the division is undefined (zero divisor, or a pole in a
    /// series ring).
    fn checked_div(&self, rhs: &Self) -> Option<Self>;
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        int(n)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
}

pub fn pow_in<F: Scalar>(x: &F, e: i64) -> Option<F> {
    let mut acc = F::from_i64(1);
    for _ in 0..e.unsigned_abs() {
        acc = acc * x.clone();
    }
    if e < 0 {
        F::from_i64(1).checked_div(&acc)
    } else {
        Some(acc)
    }
}

/// `{L}_q = 1 + q^2 + ... + q^{2(L-1)}`.
pub fn brace_int_in<F: Scalar>(l: u32, q: &F) -> F {
    let q2 = q.clone() * q.clone();
    let mut term = F::from_i64(1);
    let mut acc = F::from_i64(0);
    for _ in 0..l {
        acc = acc + term.clone();
        term = term * q2.clone();
    }
    acc
}

/// `[L]_q = q^{1-L} {L}_q`, which is the balanced q-number and needs no
/// division by `q - q^{-1}`, so it is total at `q^2 = 1`.
pub fn q_int_in<F: Scalar>(l: u32, q: &F) -> Option<F> {
    if l == 0 {
        return Some(F::from_i64(0));
    }
    Some(pow_in(q, 1 - l as i64)? * brace_int_in(l, q))
}

pub fn q_factorial_in<F: Scalar>(l: u32, q: &F) -> Option<F> {
    let mut acc = F::from_i64(1);
    for r in 1..=l {
        acc = acc * q_int_in(r, q)?;
    }
    Some(acc)
}

pub fn q_binomial_in<F: Scalar>(l: u32, p: u32, q: &F) -> Option<F> {
    if p > l {
        return None;
    }
    let den = q_factorial_in(l - p, q)? * q_factorial_in(p, q)?;
    q_factorial_in(l, q)?.checked_div(&den)
}

/// `(a; q)_p = prod_{r=0}^{p-1} (1 - a q^r)`.
pub fn q_pochhammer_in<F: Scalar>(a: &F, q: &F, p: u32) -> F {
    let one = F::from_i64(1);
    let mut acc = one.clone();
    let mut aq = a.clone();
    for _ in 0..p {
        acc = acc * (one.clone() - aq.clone());
        aq = aq * q.clone();
    }
    acc
}

fn require_nonzero_q(q: &BigRational) -> Result<()> {
    if Zero::is_zero(q) {
        Err(Error::Parameter("q must be nonzero".into()))
    } else {
        Ok(())
    }
}

/// Integer power with a possibly negative exponent. Panics only on `0^{-n}`,
/// which callers exclude through their own `q != 0` checks.
pub fn pow(x: &BigRational, e: i64) -> BigRational {
    pow_in(x, e).expect("negative power of zero")
}

pub fn q_int(l: u32, q: &BigRational) -> Result<BigRational> {
    require_nonzero_q(q)?;
    Ok(q_int_in(l, q).expect("q is nonzero"))
}

pub fn q_factorial(l: u32, q: &BigRational) -> Result<BigRational> {
    require_nonzero_q(q)?;
    Ok(q_factorial_in(l, q).expect("q is nonzero"))
}

pub fn q_binomial(l: u32, p: u32, q: &BigRational) -> Result<BigRational> {
    require_nonzero_q(q)?;
    if p > l {
        return Err(Error::Domain(format!("q-binomial with p = {p} > L = {l}")));
    }
    for r in 1..=l {
        if Zero::is_zero(&brace_int(r, q)) {
            return Err(Error::Parameter(format!("[{r}]_q vanishes at q = {q}")));
        }
    }
    Ok(q_binomial_in(l, p, q).expect("denominators checked"))
}

pub fn q_pochhammer(a: &BigRational, q: &BigRational, p: u32) -> BigRational {
    q_pochhammer_in(a, q, p)
}

pub fn brace_int(l: u32, q: &BigRational) -> BigRational {
    brace_int_in(l, q)
}

/// Plain binomial coefficient as a rational.
pub fn binomial(n: u32, k: u32) -> BigRational {
    if k > n {
        return BigRational::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    BigRational::from_integer(acc)
}

pub fn factorial(n: u32) -> BigRational {
    (1..=n).fold(BigRational::one(), |acc, i| acc * int(i as i64))
}

pub fn is_classical(q: &BigRational) -> bool {
    (q * q).is_one()
}

/// Truncated power series in one variable `h` with rational coefficients.
///
/// Coefficients at index `>= prec` are unknown; exact polynomials carry
/// `prec == usize::MAX`. Division by a series of valuation `v` shifts both
/// operands by `h^v`, which costs `v` orders of precision.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
    prec: usize,
}

impl PowerSeries {
    pub fn constant(c: BigRational) -> Self {
        Self { coeffs: vec![c], prec: usize::MAX }.trimmed()
    }

    /// `exp(c h)` known modulo `h^prec`.
    pub fn exp(c: &BigRational, prec: usize) -> Self {
        let mut coeffs = Vec::with_capacity(prec);
        let mut term = BigRational::one();
        for n in 0..prec {
            coeffs.push(term.clone());
            term = term * c / int(n as i64 + 1);
        }
        Self { coeffs, prec }.trimmed()
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn coeff(&self, n: usize) -> Option<BigRational> {
        if n >= self.prec {
            None
        } else {
            Some(self.coeffs.get(n).cloned().unwrap_or_else(BigRational::zero))
        }
    }

    /// Index of the first nonzero known coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !Zero::is_zero(c))
    }

    fn trimmed(mut self) -> Self {
        self.coeffs.truncate(self.prec);
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    fn shifted_down(&self, v: usize) -> Self {
        Self { coeffs: self.coeffs.iter().skip(v).cloned().collect(), prec: self.prec.saturating_sub(v) }
    }
}

impl Add for PowerSeries {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let prec = self.prec.min(rhs.prec);
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                let b = rhs.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                a + b
            })
            .collect();
        Self { coeffs, prec }.trimmed()
    }
}

impl Neg for PowerSeries {
    type Output = Self;
    fn neg(self) -> Self {
        Self { coeffs: self.coeffs.into_iter().map(|c| -c).collect(), prec: self.prec }
    }
}

impl Sub for PowerSeries {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for PowerSeries {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let prec = self.prec.min(rhs.prec);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self { coeffs: vec![], prec };
        }
        let len = (self.coeffs.len() + rhs.coeffs.len() - 1).min(prec);
        let mut coeffs = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j < len {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self { coeffs, prec }.trimmed()
    }
}

impl Scalar for PowerSeries {
    fn from_i64(n: i64) -> Self {
        Self::constant(int(n))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        let v = rhs.valuation()?;
        if self.coeffs.iter().take(v).any(|c| !Zero::is_zero(c)) || self.prec < v {
            return None;
        }
        let num = self.shifted_down(v);
        let den = rhs.shifted_down(v);
        let prec = num.prec.min(den.prec);
        let lead = den.coeffs[0].clone();
        let len = if prec == usize::MAX {
            // exact divisor that is a unit: only monomials divide exactly
            if den.coeffs.len() == 1 {
                num.coeffs.len()
            } else {
                return None;
            }
        } else {
            prec
        };
        let mut out: Vec<BigRational> = Vec::with_capacity(len);
        for n in 0..len {
            let mut acc = num.coeffs.get(n).cloned().unwrap_or_else(BigRational::zero);
            for j in 1..=n {
                if let Some(d) = den.coeffs.get(j) {
                    acc -= d * &out[n - j];
                }
            }
            out.push(acc / &lead);
        }
        Some(Self { coeffs: out, prec }.trimmed())
    }
}

/// A specialisation of the deformation parameter `q` and optional spectral
/// parameters, validated against the poles of every formula used up to
/// `k_bound` strands per block.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamPoint {
    pub q: BigRational,
    pub u: Option<BigRational>,
    pub v: Option<BigRational>,
    pub k_bound: u32,
}

impl ParamPoint {
    pub fn new(q: BigRational, u: Option<BigRational>, v: Option<BigRational>, k_bound: u32) -> Result<Self> {
        if k_bound == 0 {
            return Err(Error::Parameter("k_bound must be positive".into()));
        }
        Self::check_q(&q, k_bound)?;
        let point = Self { q, u, v, k_bound };
        if let Some(u) = &point.u {
            point.check_spectral(u, "u")?;
        }
        if let Some(v) = &point.v {
            point.check_spectral(v, "v")?;
        }
        if let (Some(u), Some(v)) = (&point.u, &point.v) {
            point.check_spectral(&(u * v), "uv")?;
        }
        Ok(point)
    }

    /// `q != 0` and `{l}_q != 0` for `2 <= l <= k_bound`.
    pub fn check_q(q: &BigRational, k_bound: u32) -> Result<()> {
        require_nonzero_q(q)?;
        for l in 2..=k_bound {
            if Zero::is_zero(&brace_int(l, q)) {
                return Err(Error::Parameter(format!("1 + q^2 + ... + q^(2({l}-1)) vanishes at q = {q}")));
            }
        }
        Ok(())
    }

    /// A spectral value must avoid `q^{2m}` for `1 - k_bound <= m <= k_bound - 1`.
    pub fn check_spectral(&self, x: &BigRational, name: &str) -> Result<()> {
        let k = self.k_bound as i64;
        for m in (1 - k)..=(k - 1) {
            if *x == pow(&self.q, 2 * m) {
                return Err(Error::Pole(format!("{name} = {x} equals q^(2*{m}) at q = {}", self.q)));
            }
        }
        Ok(())
    }

    pub fn u(&self) -> Result<&BigRational> {
        self.u.as_ref().ok_or_else(|| Error::Parameter("spectral parameter u missing".into()))
    }

    pub fn v(&self) -> Result<&BigRational> {
        self.v.as_ref().ok_or_else(|| Error::Parameter("spectral parameter v missing".into()))
    }
}

/// Sign helper used by coefficient formulas: `(-1)^n`.
pub fn sign_pow(n: i64) -> BigRational {
    if n.rem_euclid(2) == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `(q^L - q^{-L}) / (q - q^{-1})` evaluated literally.
    fn q_int_oracle(l: i64, q: &BigRational) -> BigRational {
        (pow(q, l) - pow(q, -l)) / (q - q.recip())
    }

    #[test]
    fn q_int_values() {
        let q = int(2);
        assert_eq!(q_int(0, &q).unwrap(), int(0));
        assert_eq!(q_int(1, &rat(7, 3)).unwrap(), int(1));
        assert_eq!(q_int_oracle(3, &q), rat(21, 4));
        assert_eq!(q_int(3, &q).unwrap(), rat(21, 4));
        for l in 0..9 {
            for q in [int(2), rat(3, 2), rat(5, 3), rat(-4, 7)] {
                assert_eq!(q_int(l, &q).unwrap(), q_int_oracle(l as i64, &q));
            }
        }
    }

    #[test]
    fn q_int_classical_limit() {
        for l in 0..8u32 {
            assert_eq!(q_int(l, &int(1)).unwrap(), int(l as i64));
            let expected = int(l as i64) * pow(&int(-1), l as i64 - 1);
            assert_eq!(q_int(l, &int(-1)).unwrap(), if l == 0 { int(0) } else { expected });
        }
        assert!(matches!(q_int(2, &int(0)), Err(Error::Parameter(_))));
    }

    #[test]
    fn factorial_binomial_pochhammer() {
        assert_eq!(q_factorial(0, &int(5)).unwrap(), int(1));
        assert_eq!(q_factorial(2, &int(2)).unwrap(), rat(5, 2));
        assert_eq!(q_factorial(3, &int(1)).unwrap(), int(6));
        assert_eq!(q_binomial(5, 0, &rat(3, 2)).unwrap(), int(1));
        assert_eq!(q_binomial(2, 1, &int(2)).unwrap(), rat(5, 2));
        assert_eq!(q_binomial(4, 2, &int(1)).unwrap(), int(6));
        assert!(matches!(q_binomial(2, 3, &int(2)), Err(Error::Domain(_))));
        assert_eq!(q_pochhammer(&int(5), &int(9), 0), int(1));
        assert_eq!(q_pochhammer(&int(3), &int(7), 1), int(-2));
        assert_eq!(q_pochhammer(&rat(1, 2), &rat(1, 3), 2), rat(5, 12));
    }

    #[test]
    fn brace_values() {
        assert_eq!(brace_int(0, &int(2)), int(0));
        assert_eq!(brace_int(1, &int(2)), int(1));
        assert_eq!(brace_int(3, &int(2)), int(21));
        assert_eq!(brace_int(4, &int(-1)), int(4));
    }

    #[test]
    fn q_pascal_and_symmetry() {
        for q in [int(2), rat(3, 2), rat(5, 3)] {
            for l in 1..=8u32 {
                for p in 0..=l {
                    let b = q_binomial(l, p, &q).unwrap();
                    assert_eq!(b, q_binomial(l, l - p, &q).unwrap());
                    if p >= 1 && p < l {
                        let rhs = pow(&q, p as i64) * q_binomial(l - 1, p, &q).unwrap()
                            + pow(&q, p as i64 - l as i64) * q_binomial(l - 1, p - 1, &q).unwrap();
                        assert_eq!(b, rhs, "L={l} p={p} q={q}");
                    }
                }
            }
        }
    }

    #[test]
    fn brace_is_shifted_q_int() {
        for q in [int(2), rat(3, 2), rat(5, 3), int(-1)] {
            for l in 1..=10u32 {
                assert_eq!(brace_int(l, &q), pow(&q, l as i64 - 1) * q_int(l, &q).unwrap());
            }
        }
    }

    #[test]
    fn pochhammer_nonvanishing_under_param_point() {
        for q in [int(2), rat(3, 2), rat(5, 3)] {
            let qm2 = pow(&q, -2);
            for p in 0..6u32 {
                ParamPoint::new(q.clone(), None, None, p + 1).unwrap();
                assert!(!Zero::is_zero(&q_pochhammer(&qm2, &qm2, p)));
            }
        }
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/7").unwrap(), rat(3, 7));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("5").unwrap(), int(5));
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(format_rational(&rat(-3, 2)), "-3/2");
        assert_eq!(format_rational(&int(4)), "4");
    }

    #[test]
    fn param_point_poles() {
        let q = int(2);
        assert!(ParamPoint::new(int(0), None, None, 2).is_err());
        assert!(matches!(ParamPoint::new(q.clone(), Some(int(1)), None, 1), Err(Error::Pole(_))));
        assert!(matches!(ParamPoint::new(q.clone(), Some(int(4)), None, 2), Err(Error::Pole(_))));
        assert!(matches!(ParamPoint::new(q.clone(), Some(rat(1, 4)), None, 2), Err(Error::Pole(_))));
        assert!(ParamPoint::new(q.clone(), Some(int(4)), None, 1).is_ok());
        // uv = 1 is rejected too
        assert!(ParamPoint::new(q, Some(int(3)), Some(rat(1, 3)), 1).is_err());
    }

    #[test]
    fn series_division_and_exp() {
        let h = PowerSeries::exp(&int(1), 6) - PowerSeries::from_i64(1);
        assert_eq!(h.valuation(), Some(1));
        let r = h.checked_div(&h).unwrap();
        assert_eq!(r.coeff(0), Some(int(1)));
        assert_eq!(r.coeff(1), Some(int(0)));
        // (e^{2h} - 1) / (e^h - 1) = e^h + 1
        let h2 = PowerSeries::exp(&int(2), 6) - PowerSeries::from_i64(1);
        let r = h2.checked_div(&h).unwrap();
        assert_eq!(r.coeff(0), Some(int(2)));
        assert_eq!(r.coeff(1), Some(int(1)));
        assert_eq!(r.coeff(2), Some(rat(1, 2)));
        // a pole: 1 / h
        assert!(PowerSeries::from_i64(1).checked_div(&h).is_none());
    }
}
