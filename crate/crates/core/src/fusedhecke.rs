//! The fused Hecke algebra `H_{k,n}(q)`, realised inside `H_{nk}(q)` as the
//! projected algebra `P^{(k)} H_{nk}(q) P^{(k)}`.
//!
//! Partial braidings, Baxterised R-elements in expansion and factorised
//! form, the classical (`q = 1`) limit, and exact checks of the braided
//! Yang-Baxter equations.

use std::collections::hash_map::Entry;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{
    binomial, factorial, int, pow, pow_in, q_binomial_in, q_pochhammer_in, sign_pow, BigRational, ParamPoint,
    PowerSeries,
};
use crate::heckecore::{AlgebraElement, ElementDiff, ElementJson, HARD_MAX_STRANDS};

/// Outcome of an exact identity check.
#[derive(Clone, Debug, PartialEq)]
pub struct Verification {
    pub holds: bool,
    pub diff: Option<ElementDiff>,
}

impl Verification {
    pub fn compare(lhs: &AlgebraElement, rhs: &AlgebraElement) -> Self {
        let diff = lhs.first_difference(rhs);
        Self { holds: diff.is_none(), diff }
    }

    fn and(self, other: Self) -> Self {
        if self.holds {
            other
        } else {
            self
        }
    }
}

/// Block sizes and deformation parameter of a fused algebra.
///
/// The unmixed algebra has `n` blocks of `k` strands. The mixed algebra has
/// two blocks of sizes `k <= ell` and carries the pair of projectors
/// `P^{(k,ell)}`, `P^{(ell,k)}`.
pub struct FusedContext {
    k: usize,
    ell: usize,
    n: usize,
    mixed: bool,
    q: BigRational,
    cache: Mutex<FxHashMap<(usize, usize), Arc<AlgebraElement>>>,
}

const PROJECTOR_KEY: (usize, usize) = (0, usize::MAX);
const MIXED_OUT_KEY: (usize, usize) = (1, usize::MAX);

impl FusedContext {
    pub fn new(k: usize, n: usize, q: &BigRational) -> Result<Self> {
        if k == 0 || n == 0 {
            return Err(Error::Domain("k and n must be positive".into()));
        }
        ParamPoint::check_q(q, k as u32)?;
        check_total(n * k)?;
        Ok(Self { k, ell: k, n, mixed: false, q: q.clone(), cache: Mutex::default() })
    }

    pub fn mixed(k: usize, ell: usize, q: &BigRational) -> Result<Self> {
        if k == 0 || ell < k {
            return Err(Error::Domain(format!("mixed blocks need 1 <= k <= ell, got ({k},{ell})")));
        }
        ParamPoint::check_q(q, ell as u32)?;
        check_total(k + ell)?;
        Ok(Self { k, ell, n: 2, mixed: true, q: q.clone(), cache: Mutex::default() })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn strands(&self) -> usize {
        if self.mixed {
            self.k + self.ell
        } else {
            self.n * self.k
        }
    }

    fn cached(
        &self,
        key: (usize, usize),
        build: impl FnOnce() -> Result<AlgebraElement>,
    ) -> Result<Arc<AlgebraElement>> {
        if let Some(x) = self.cache.lock().expect("cache poisoned").get(&key) {
            return Ok(x.clone());
        }
        let built = Arc::new(build()?);
        let mut cache = self.cache.lock().expect("cache poisoned");
        Ok(match cache.entry(key) {
            Entry::Occupied(e) => e.get().clone(),
            Entry::Vacant(e) => e.insert(built).clone(),
        })
    }

    /// `P^{(k)}`, or `P^{(k,ell)}` in the mixed case.
    pub fn projector(&self) -> Result<Arc<AlgebraElement>> {
        self.cached(PROJECTOR_KEY, || {
            let blocks = if self.mixed { vec![self.k, self.ell] } else { vec![self.k; self.n] };
            apply_blocks(&AlgebraElement::unit(self.strands(), &self.q)?, &blocks)
        })
    }

    /// `P^{(ell,k)}`; equals [`Self::projector`] when unmixed.
    pub fn projector_out(&self) -> Result<Arc<AlgebraElement>> {
        if !self.mixed {
            return self.projector();
        }
        self.cached(MIXED_OUT_KEY, || {
            apply_blocks(&AlgebraElement::unit(self.strands(), &self.q)?, &[self.ell, self.k])
        })
    }

    /// The braiding word of `Σ_i^{(k;p)}`, or of `Σ^{(k,ell;p)}` when mixed.
    pub fn braiding_word(&self, i: usize, p: usize) -> Result<Vec<usize>> {
        self.check_site(i)?;
        if p > self.k {
            return Err(Error::Domain(format!("p = {p} exceeds k = {}", self.k)));
        }
        let offset = (i - 1) * self.k;
        Ok(braid_word(self.k, self.ell, p).into_iter().map(|a| a + offset).collect())
    }

    fn check_site(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.n {
            return Err(Error::Domain(format!("site {i} not in 1..{}", self.n)));
        }
        Ok(())
    }

    /// Multiplies on the right by the symmetrisers of blocks `i` and `i + 1`
    /// of the outgoing arrangement.
    fn close_sites(&self, x: &AlgebraElement, i: usize) -> Result<AlgebraElement> {
        if self.mixed {
            let x = x.right_mul_symmetriser(1, self.ell)?;
            return x.right_mul_symmetriser(self.ell + 1, self.ell + self.k);
        }
        let a = (i - 1) * self.k;
        let x = x.right_mul_symmetriser(a + 1, a + self.k)?;
        x.right_mul_symmetriser(a + self.k + 1, a + 2 * self.k)
    }

    /// `Σ_i^{(k;p)}`; `Σ_i^{(k;0)} = P^{(k)}`.
    pub fn partial_braiding(&self, i: usize, p: usize) -> Result<Arc<AlgebraElement>> {
        let word = self.braiding_word(i, p)?;
        if p == 0 && !self.mixed {
            return self.projector();
        }
        self.cached((i, p), || {
            let x = self.projector()?.right_mul_word(&word)?;
            self.close_sites(&x, i)
        })
    }

    /// `(Σ_p c_p x W_{i,p}) S S` with `W_{i,p}` the braiding word, which
    /// equals `x · Σ_p c_p Σ_i^{(k;p)}` whenever `x = x P`.
    pub fn right_mul_expansion(&self, x: &AlgebraElement, i: usize, coeffs: &[BigRational]) -> Result<AlgebraElement> {
        if coeffs.len() != self.k + 1 {
            return Err(Error::Domain(format!("expected {} coefficients, got {}", self.k + 1, coeffs.len())));
        }
        let mut acc = AlgebraElement::zero(x.strands(), x.q())?;
        for (p, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc.add_scaled(&x.right_mul_word(&self.braiding_word(i, p)?)?, c)?;
        }
        self.close_sites(&acc, i)
    }

    /// `Ř_i^{(k)}(u) = Σ_p a_p^{(k,ell)}(u) Σ_i^{(k,ell;p)}`.
    pub fn baxter_r_expansion(&self, i: usize, u: &BigRational) -> Result<AlgebraElement> {
        let a = baxter_coefficients(self.k, self.ell, u, &self.q)?;
        self.right_mul_expansion(&*self.projector()?, i, &a.values)
    }

    /// Linear combination `Σ_p c_p Σ_i^{(k;p)}` for given coefficients.
    pub fn combination(&self, i: usize, coeffs: &[BigRational]) -> Result<AlgebraElement> {
        self.right_mul_expansion(&*self.projector()?, i, coeffs)
    }

    pub fn to_json(&self, x: &AlgebraElement) -> FusedJson {
        FusedJson { k: self.k, n: self.n, kind: "fused".into(), element: x.to_json() }
    }
}

fn check_total(m: usize) -> Result<()> {
    if m > HARD_MAX_STRANDS {
        return Err(Error::Resource(format!("{m} strands exceeds the hard bound {HARD_MAX_STRANDS}")));
    }
    Ok(())
}

fn apply_blocks(x: &AlgebraElement, blocks: &[usize]) -> Result<AlgebraElement> {
    let mut out = x.clone();
    let mut start = 1;
    for &b in blocks {
        out = out.right_mul_symmetriser(start, start + b - 1)?;
        start += b;
    }
    Ok(out)
}

/// `(σ_k ... σ_{ell+p-1})(σ_{k-1} ... σ_{ell+p-2}) ... (σ_{k-p+1} ... σ_ell)`.
pub fn braid_word(k: usize, ell: usize, p: usize) -> Vec<usize> {
    (0..p).flat_map(|t| (k - t)..=(ell + p - 1 - t)).collect()
}

/// Fused element with its block header.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusedJson {
    pub k: usize,
    pub n: usize,
    pub kind: String,
    #[serde(flatten)]
    pub element: ElementJson,
}

pub fn projector_p(ctx: &FusedContext) -> Result<AlgebraElement> {
    Ok((*ctx.projector()?).clone())
}

/// `(P^{(k,ell)}, P^{(ell,k)})` in `H_{k+ell}(q)`.
pub fn projector_mixed(k: usize, ell: usize, q: &BigRational) -> Result<(AlgebraElement, AlgebraElement)> {
    ParamPoint::check_q(q, k.max(ell) as u32)?;
    check_total(k + ell)?;
    let unit = AlgebraElement::unit(k + ell, q)?;
    Ok((apply_blocks(&unit, &[k, ell])?, apply_blocks(&unit, &[ell, k])?))
}

pub fn partial_braiding(ctx: &FusedContext, i: usize, p: usize) -> Result<AlgebraElement> {
    Ok((*ctx.partial_braiding(i, p)?).clone())
}

#[derive(Clone, Debug, PartialEq)]
pub struct BaxterCoefficients {
    pub k: usize,
    pub ell: usize,
    pub u: BigRational,
    pub values: Vec<BigRational>,
}

/// `a_p^{(k,ell)}(u) = (-q)^{k-p} (q^{-2};q^{-2})_{k-p} / (u q^{-2p};q^{-2})_{k-p}
/// · [k choose p]_q [ell choose k-p]_q` for `p = 0..=k`, over any scalar ring.
pub fn baxter_coefficients_in<F: crate::exactnum::Scalar>(k: usize, ell: usize, u: &F, q: &F) -> Result<Vec<F>> {
    if k > ell {
        return Err(Error::Domain(format!("coefficients need k <= ell, got ({k},{ell})")));
    }
    let qinv2 = pow_in(q, -2).ok_or_else(|| Error::Parameter("q must be invertible".into()))?;
    let one = F::from_i64(1);
    (0..=k)
        .map(|p| {
            let d = (k - p) as u32;
            let mut den = one.clone();
            let mut arg = u.clone() * pow_in(&qinv2, p as i64).expect("nonnegative power");
            for r in 0..d {
                let factor = one.clone() - arg.clone();
                if factor.is_zero() {
                    return Err(Error::Pole(format!("a_{p}: factor 1 - u q^(-2*{}) vanishes", p as u32 + r)));
                }
                den = den * factor;
                arg = arg * qinv2.clone();
            }
            let num = pow_in(&(-q.clone()), d as i64).expect("nonnegative power") * q_pochhammer_in(&qinv2, &qinv2, d);
            let ratio = num
                .checked_div(&den)
                .ok_or_else(|| Error::Pole(format!("a_{p}: denominator (u q^(-2*{p}); q^-2)_{d} is singular")))?;
            let b1 = q_binomial_in(k as u32, p as u32, q);
            let b2 = q_binomial_in(ell as u32, d, q);
            match (b1, b2) {
                (Some(b1), Some(b2)) => Ok(ratio * b1 * b2),
                _ => Err(Error::Parameter(format!("q-binomials of order {ell} are singular at this q"))),
            }
        })
        .collect()
}

pub fn baxter_coefficients(k: usize, ell: usize, u: &BigRational, q: &BigRational) -> Result<BaxterCoefficients> {
    ParamPoint::check_q(q, ell as u32)?;
    let values = baxter_coefficients_in(k, ell, u, q)?;
    Ok(BaxterCoefficients { k, ell, u: u.clone(), values })
}

/// `Ř_i^{(k)}(u)` as the expansion over partial braidings.
pub fn baxter_r_expansion(ctx: &FusedContext, i: usize, u: &BigRational) -> Result<AlgebraElement> {
    ctx.baxter_r_expansion(i, u)
}

/// Generator indices and spectral arguments of the product
/// `F = F_k F_{k-1} ... F_1`, `F_a = Ř_a(u q^{2(1-a)}) Ř_{a+1}(u q^{2(2-a)}) ... Ř_{a+ell-1}(u q^{2(ell-a)})`,
/// listed left to right. With `reversed` the arguments within each `F_a`
/// run the other way: `Ř_{a+t}(u q^{2(ell-k-1-t+a)})`.
fn factorized_arguments(
    k: usize,
    ell: usize,
    u: &BigRational,
    q: &BigRational,
    reversed: bool,
) -> Vec<(usize, i64, BigRational)> {
    let mut out = Vec::with_capacity(k * ell);
    for a in (1..=k).rev() {
        for t in 0..ell {
            let e = if reversed { ell as i64 - k as i64 - 1 - t as i64 + a as i64 } else { 1 + t as i64 - a as i64 };
            out.push((a + t, e, u * pow(q, 2 * e)));
        }
    }
    out
}

fn right_mul_factors(x: &AlgebraElement, factors: &[(usize, i64, BigRational)]) -> Result<AlgebraElement> {
    let mut x = x.clone();
    for (i, e, arg) in factors {
        x = x.right_mul_r_check(*i, arg).map_err(|err| match err {
            Error::Pole(_) => Error::Pole(format!("factor Ř_{i}(u q^(2*{e})) has a pole: argument equals 1")),
            other => other,
        })?;
    }
    Ok(x)
}

fn check_mixed_sizes(k: usize, ell: usize, q: &BigRational) -> Result<()> {
    if k == 0 || ell < k {
        return Err(Error::Domain(format!("need 1 <= k <= ell, got ({k},{ell})")));
    }
    ParamPoint::check_q(q, ell as u32)?;
    check_total(k + ell)
}

/// `Ř^{(k,ell)}(u) = P^{(k,ell)} F P^{(ell,k)}`.
pub fn baxter_r_factorized(k: usize, ell: usize, u: &BigRational, q: &BigRational) -> Result<AlgebraElement> {
    check_mixed_sizes(k, ell, q)?;
    let (pin, _) = projector_mixed(k, ell, q)?;
    let x = right_mul_factors(&pin, &factorized_arguments(k, ell, u, q, false))?;
    apply_blocks(&x, &[ell, k])
}

/// `F P^{(ell,k)}`.
pub fn baxter_r_factorized_right(k: usize, ell: usize, u: &BigRational, q: &BigRational) -> Result<AlgebraElement> {
    check_mixed_sizes(k, ell, q)?;
    let x = right_mul_factors(&AlgebraElement::unit(k + ell, q)?, &factorized_arguments(k, ell, u, q, false))?;
    apply_blocks(&x, &[ell, k])
}

/// `P^{(k,ell)} F'`, with `F'` the product of reversed-argument factors.
pub fn baxter_r_factorized_left(k: usize, ell: usize, u: &BigRational, q: &BigRational) -> Result<AlgebraElement> {
    check_mixed_sizes(k, ell, q)?;
    let (pin, _) = projector_mixed(k, ell, q)?;
    right_mul_factors(&pin, &factorized_arguments(k, ell, u, q, true))
}

/// `Ř^{(k,ell)}(u)` through the expansion `Σ_p a_p Σ^{(k,ell;p)}`.
pub fn baxter_r_mixed_expansion(k: usize, ell: usize, u: &BigRational, q: &BigRational) -> Result<AlgebraElement> {
    FusedContext::mixed(k, ell, q)?.baxter_r_expansion(1, u)
}

/// Braided Yang-Baxter equation `Ř_i(u)Ř_{i+1}(uv)Ř_i(v) = Ř_{i+1}(v)Ř_i(uv)Ř_{i+1}(u)`
/// at every site `i = 1..n-2`.
pub fn verify_braided_ybe(ctx: &FusedContext, u: &BigRational, v: &BigRational) -> Result<Verification> {
    let point = ParamPoint::new(ctx.q.clone(), Some(u.clone()), Some(v.clone()), ctx.k as u32)?;
    let uv = point.u()? * point.v()?;
    let a = |x: &BigRational| baxter_coefficients(ctx.k, ctx.k, x, &ctx.q).map(|c| c.values);
    verify_ybe_with(ctx, &a(u)?, &a(&uv)?, &a(v)?)
}

fn verify_ybe_with(
    ctx: &FusedContext,
    cu: &[BigRational],
    cuv: &[BigRational],
    cv: &[BigRational],
) -> Result<Verification> {
    if ctx.mixed || ctx.n < 3 {
        return Err(Error::Domain("the braided equation needs an unmixed algebra with n >= 3".into()));
    }
    let p = ctx.projector()?;
    let mut out = Verification { holds: true, diff: None };
    for i in 1..=ctx.n - 2 {
        let mut lhs = ctx.right_mul_expansion(&p, i, cu)?;
        lhs = ctx.right_mul_expansion(&lhs, i + 1, cuv)?;
        lhs = ctx.right_mul_expansion(&lhs, i, cv)?;
        let mut rhs = ctx.right_mul_expansion(&p, i + 1, cv)?;
        rhs = ctx.right_mul_expansion(&rhs, i, cuv)?;
        rhs = ctx.right_mul_expansion(&rhs, i + 1, cu)?;
        out = out.and(Verification::compare(&lhs, &rhs));
        if !out.holds {
            break;
        }
    }
    Ok(out)
}

/// `Ř^{(k,l)}(u) Ř^{(k,m)}_{[l+1,n]}(uv) Ř^{(l,m)}(v) = Ř^{(l,m)}_{[k+1,n]}(v) Ř^{(k,m)}(uv) Ř^{(k,l)}_{[m+1,n]}(u)`
/// in `H_{k+l+m}(q)`, where the subscript gives the strands the factor acts on.
pub fn verify_mixed_ybe(
    k: usize,
    l: usize,
    m: usize,
    u: &BigRational,
    v: &BigRational,
    q: &BigRational,
) -> Result<Verification> {
    if !(k <= l && l <= m) || k == 0 {
        return Err(Error::Domain(format!("need 1 <= k <= l <= m, got ({k},{l},{m})")));
    }
    let total = k + l + m;
    check_total(total)?;
    ParamPoint::new(q.clone(), Some(u.clone()), Some(v.clone()), m as u32)?;
    let uv = u * v;
    let r = |a: usize, b: usize, x: &BigRational, offset: usize| -> Result<AlgebraElement> {
        baxter_r_mixed_expansion(a, b, x, q)?.embed_shift(offset, total)
    };
    let lhs = r(k, l, u, 0)?.multiply(&r(k, m, &uv, l)?)?.multiply(&r(l, m, v, 0)?)?;
    let rhs = r(l, m, v, k)?.multiply(&r(k, m, &uv, 0)?)?.multiply(&r(k, l, u, m)?)?;
    Ok(Verification::compare(&lhs, &rhs))
}

/// Projector compatibility of `Ř^{(k,ell)}(u)`: `P^{(k,ell)} Ř = Ř P^{(ell,k)}`,
/// together with the one-sided forms `P^{(k,ell)} F P^{(ell,k)} = F P^{(ell,k)} = P^{(k,ell)} F'`.
pub fn verify_comm_pr(k: usize, ell: usize, u: &BigRational, q: &BigRational) -> Result<Verification> {
    let (pin, pout) = projector_mixed(k, ell, q)?;
    let two_sided = baxter_r_factorized(k, ell, u, q)?;
    let right = baxter_r_factorized_right(k, ell, u, q)?;
    let left = baxter_r_factorized_left(k, ell, u, q)?;
    Ok(Verification::compare(&pin.multiply(&two_sided)?, &two_sided.multiply(&pout)?)
        .and(Verification::compare(&two_sided, &right))
        .and(Verification::compare(&two_sided, &left)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinimalPolynomialReport {
    /// The full product vanishes.
    pub annihilates: bool,
    /// Every product with one factor left out is nonzero.
    pub minimal: bool,
}

impl MinimalPolynomialReport {
    pub fn holds(&self) -> bool {
        self.annihilates && self.minimal
    }
}

/// Roots `(-1)^{k+l} q^{-k+l(l+1)}`, `l = 0..=k`, of the minimal polynomial
/// of the full braiding `Σ^{(k;k)}`.
pub fn minimal_polynomial_roots(k: usize, q: &BigRational) -> Vec<BigRational> {
    (0..=k).map(|l| sign_pow((k + l) as i64) * pow(q, l as i64 * (l as i64 + 1) - k as i64)).collect()
}

/// Checks `∏_{l=0}^{k} (Σ_1^{(k;k)} - c_l) = 0` and that dropping any single
/// factor leaves a nonzero product.
pub fn minimal_polynomial_check(ctx: &FusedContext) -> Result<MinimalPolynomialReport> {
    if ctx.mixed || ctx.n < 2 {
        return Err(Error::Domain("the minimal polynomial needs an unmixed algebra with n >= 2".into()));
    }
    let k = ctx.k;
    let roots = minimal_polynomial_roots(k, &ctx.q);
    let product = |skip: Option<usize>| -> Result<AlgebraElement> {
        let mut x = (*ctx.projector()?).clone();
        for (l, c) in roots.iter().enumerate() {
            if Some(l) == skip {
                continue;
            }
            let mut coeffs = vec![BigRational::zero(); k + 1];
            coeffs[0] = -c.clone();
            coeffs[k] = BigRational::one();
            x = ctx.right_mul_expansion(&x, 1, &coeffs)?;
        }
        Ok(x)
    };
    let annihilates = product(None)?.is_zero();
    let mut minimal = true;
    for l in 0..=k {
        if product(Some(l))?.is_zero() {
            minimal = false;
            break;
        }
    }
    Ok(MinimalPolynomialReport { annihilates, minimal })
}

/// `C(k,p) C(ell,k-p) (k-p)! / ((μ-p)(μ-p-1)...(μ-k+1))`; with `ell = k`
/// this is the classical Baxterised coefficient.
pub fn classical_coefficients(k: usize, ell: usize, mu: &BigRational) -> Result<Vec<BigRational>> {
    if k > ell {
        return Err(Error::Domain(format!("coefficients need k <= ell, got ({k},{ell})")));
    }
    (0..=k)
        .map(|p| {
            let mut den = BigRational::one();
            for r in 0..k - p {
                let factor = mu - int((p + r) as i64);
                if factor.is_zero() {
                    return Err(Error::Pole(format!("classical coefficient {p}: factor μ - {} vanishes", p + r)));
                }
                den *= factor;
            }
            Ok(binomial(k as u32, p as u32) * binomial(ell as u32, (k - p) as u32) * factorial((k - p) as u32) / den)
        })
        .collect()
}

/// `Ř_i^{(k)}(μ)` in `H_{k,n}(1)`.
pub fn classical_baxter_r(k: usize, n: usize, i: usize, mu: &BigRational) -> Result<AlgebraElement> {
    let ctx = FusedContext::new(k, n, &int(1))?;
    ctx.combination(i, &classical_coefficients(k, k, mu)?)
}

/// Additive equation `Ř_1(μ)Ř_2(μ+ν)Ř_1(ν) = Ř_2(ν)Ř_1(μ+ν)Ř_2(μ)` in `H_{k,3}(1)`.
pub fn verify_additive_ybe(k: usize, mu: &BigRational, nu: &BigRational) -> Result<Verification> {
    let ctx = FusedContext::new(k, 3, &int(1))?;
    let c = |x: &BigRational| classical_coefficients(k, k, x);
    verify_ybe_with(&ctx, &c(mu)?, &c(&(mu + nu))?, &c(nu)?)
}

/// Constant term of `a_p^{(k,ell)}` at `q = e^{h/2}`, `u = e^{μh}`, computed
/// from the q-deformed formula over truncated power series in `h`.
pub fn scaling_limit_coefficients(k: usize, ell: usize, mu: &BigRational) -> Result<Vec<BigRational>> {
    let prec = k + ell + 4;
    let q = PowerSeries::exp(&BigRational::new(1.into(), 2.into()), prec);
    let u = PowerSeries::exp(mu, prec);
    let series = baxter_coefficients_in(k, ell, &u, &q).map_err(|e| match e {
        Error::Pole(msg) => Error::Pole(format!("{msg} (μ = {mu})")),
        other => other,
    })?;
    series.iter().map(|s| s.coeff(0).ok_or_else(|| Error::Consistency("series precision exhausted".into()))).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProductExampleReport {
    /// Reading the crossing as `σ_2`.
    pub positive: Verification,
    /// Reading the crossing as `σ_2^{-1} = σ_2 - (q - q^{-1})`.
    pub negative: Verification,
}

impl ProductExampleReport {
    pub fn matching(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.positive.holds {
            out.push("positive");
        }
        if self.negative.holds {
            out.push("negative");
        }
        out
    }
}

/// The product `X^2` in `H_{2,2}(q)` with `X = P σ_2^{±1} P`, compared with
/// `(P + (q - q^{-1} + 2q^3) Σ^{(2;1)} + q^2 Σ^{(2;2)}) / (1 + q^2)^2`.
pub fn fused_product_example_check(q: &BigRational) -> Result<ProductExampleReport> {
    let ctx = FusedContext::new(2, 2, q)?;
    let p = ctx.projector()?;
    let s1 = ctx.partial_braiding(1, 1)?;
    let s2 = ctx.partial_braiding(1, 2)?;
    let lambda = q - q.recip();
    let one = BigRational::one();
    let mut expected = (*p).clone();
    expected.add_scaled(&s1, &(&lambda + int(2) * pow(q, 3)))?;
    expected.add_scaled(&s2, &(q * q))?;
    let norm = (&one + q * q) * (&one + q * q);
    let expected = expected.scale(&norm.recip());
    let pos = (*s1).clone();
    let mut neg = pos.clone();
    neg.add_scaled(&p, &-lambda)?;
    Ok(ProductExampleReport {
        positive: Verification::compare(&pos.multiply(&pos)?, &expected),
        negative: Verification::compare(&neg.multiply(&neg)?, &expected),
    })
}
