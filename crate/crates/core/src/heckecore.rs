//! The Hecke algebra `H_m(q)` at a rational `q`, in the standard basis `σ_w`.
//!
//! Elements are sparse maps from permutations to nonzero rationals. Products
//! are computed by straightening one generator at a time:
//!
//! * `σ_i σ_w = σ_{s_i w}` if `ℓ(s_i w) > ℓ(w)`, else `σ_{s_i w} + (q - q^{-1}) σ_w`,
//! * `σ_w σ_i = σ_{w s_i}` if `ℓ(w s_i) > ℓ(w)`, else `σ_{w s_i} + (q - q^{-1}) σ_w`.

use std::fmt;

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, pow, q_factorial, q_int, BigRational};
use crate::symgroup::{all_permutations, Permutation};

/// Strand counts above this are always rejected.
pub const HARD_MAX_STRANDS: usize = 10;

pub type TermMap = FxHashMap<Permutation, BigRational>;

#[derive(Clone)]
pub struct AlgebraElement {
    strands: usize,
    q: BigRational,
    terms: TermMap,
}

/// First basis element on which two elements disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementDiff {
    pub perm: Permutation,
    pub left: BigRational,
    pub right: BigRational,
}

impl fmt::Display for ElementDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coefficient of σ_{} differs: {} vs {}", self.perm, self.left, self.right)
    }
}

fn check_strands(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::Domain("an algebra needs at least one strand".into()));
    }
    if m > HARD_MAX_STRANDS {
        return Err(Error::Resource(format!("{m} strands exceeds the hard bound {HARD_MAX_STRANDS}")));
    }
    Ok(())
}

fn check_q(q: &BigRational) -> Result<()> {
    if q.is_zero() {
        Err(Error::Parameter("q must be nonzero".into()))
    } else {
        Ok(())
    }
}

impl AlgebraElement {
    pub fn zero(m: usize, q: &BigRational) -> Result<Self> {
        check_strands(m)?;
        check_q(q)?;
        Ok(Self { strands: m, q: q.clone(), terms: TermMap::default() })
    }

    pub fn unit(m: usize, q: &BigRational) -> Result<Self> {
        Self::basis(Permutation::identity_checked(m)?, q)
    }

    pub fn basis(w: Permutation, q: &BigRational) -> Result<Self> {
        let mut x = Self::zero(w.size(), q)?;
        x.terms.insert(w, BigRational::one());
        Ok(x)
    }

    pub fn generator(i: usize, m: usize, q: &BigRational) -> Result<Self> {
        check_strands(m)?;
        Self::basis(Permutation::simple(i, m)?, q)
    }

    /// Builds an element from explicit terms; zero coefficients are dropped
    /// and repeated permutations are summed.
    pub fn from_terms(
        m: usize,
        q: &BigRational,
        terms: impl IntoIterator<Item = (Permutation, BigRational)>,
    ) -> Result<Self> {
        let mut x = Self::zero(m, q)?;
        for (w, c) in terms {
            if w.size() != m {
                return Err(Error::Domain(format!("permutation {w} does not act on {m} strands")));
            }
            *x.terms.entry(w).or_insert_with(BigRational::zero) += c;
        }
        x.prune();
        Ok(x)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Permutation) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &BigRational)> {
        self.terms.iter()
    }

    /// Terms in lexicographic order of the permutations.
    pub fn sorted_terms(&self) -> Vec<(Permutation, BigRational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(w, c)| (*w, c.clone())).collect();
        v.sort_by_key(|a| a.0);
        v
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    fn lambda(&self) -> BigRational {
        &self.q - self.q.recip()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.strands != other.strands || self.q != other.q {
            return Err(Error::Domain(format!(
                "incompatible elements: H_{}(q={}) vs H_{}(q={})",
                self.strands, self.q, other.strands, other.q
            )));
        }
        Ok(())
    }

    fn check_generator(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.strands {
            return Err(Error::Domain(format!("generator σ_{i} not in H_{}", self.strands)));
        }
        Ok(())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self { strands: self.strands, q: self.q.clone(), terms: TermMap::default() };
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(w, x)| (*w, x * c)).collect();
        out
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &BigRational) -> Result<()> {
        self.check_compatible(other)?;
        if c.is_zero() {
            return Ok(());
        }
        for (w, x) in &other.terms {
            *self.terms.entry(*w).or_insert_with(BigRational::zero) += x * c;
        }
        self.prune();
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &BigRational::one())?;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &-BigRational::one())?;
        Ok(out)
    }

    /// `self - c * 1`.
    pub fn sub_scalar(&self, c: &BigRational) -> Self {
        let mut out = self.clone();
        let id = Permutation::identity(self.strands);
        *out.terms.entry(id).or_insert_with(BigRational::zero) -= c;
        out.prune();
        out
    }

    /// `σ_i · self`.
    pub fn left_mul_generator(&self, i: usize) -> Result<Self> {
        self.check_generator(i)?;
        let lambda = self.lambda();
        let mut out = TermMap::with_capacity_and_hasher(self.terms.len() * 2, Default::default());
        for (w, c) in &self.terms {
            let sw = w.swap_values(i);
            let ascent = w.left_ascent(i);
            *out.entry(sw).or_insert_with(BigRational::zero) += c;
            if !ascent && !lambda.is_zero() {
                *out.entry(*w).or_insert_with(BigRational::zero) += c * &lambda;
            }
        }
        let mut x = Self { strands: self.strands, q: self.q.clone(), terms: out };
        x.prune();
        Ok(x)
    }

    /// `self · σ_i`.
    pub fn right_mul_generator(&self, i: usize) -> Result<Self> {
        self.check_generator(i)?;
        let lambda = self.lambda();
        let mut out = TermMap::with_capacity_and_hasher(self.terms.len() * 2, Default::default());
        for (w, c) in &self.terms {
            let ws = w.swap_positions(i);
            let ascent = w.right_ascent(i);
            *out.entry(ws).or_insert_with(BigRational::zero) += c;
            if !ascent && !lambda.is_zero() {
                *out.entry(*w).or_insert_with(BigRational::zero) += c * &lambda;
            }
        }
        let mut x = Self { strands: self.strands, q: self.q.clone(), terms: out };
        x.prune();
        Ok(x)
    }

    /// `self · σ_{i_1} σ_{i_2} ... σ_{i_r}` for `word = [i_1, ..., i_r]`.
    pub fn right_mul_word(&self, word: &[usize]) -> Result<Self> {
        if self.lambda().is_zero() {
            // classical case: σ_w σ_{w'} = σ_{w w'} with no correction terms
            for &i in word {
                self.check_generator(i)?;
            }
            let mut terms = TermMap::with_capacity_and_hasher(self.terms.len(), Default::default());
            for (w, c) in &self.terms {
                let moved = word.iter().fold(*w, |acc, &i| acc.swap_positions(i));
                *terms.entry(moved).or_insert_with(BigRational::zero) += c;
            }
            let mut x = Self { strands: self.strands, q: self.q.clone(), terms };
            x.prune();
            return Ok(x);
        }
        let mut x = self.clone();
        for &i in word {
            x = x.right_mul_generator(i)?;
        }
        Ok(x)
    }

    /// `σ_{i_1} ... σ_{i_r} · self`.
    pub fn left_mul_word(&self, word: &[usize]) -> Result<Self> {
        let mut x = self.clone();
        for &i in word.iter().rev() {
            x = x.left_mul_generator(i)?;
        }
        Ok(x)
    }

    /// `self · Ř_i(u)` with `Ř_i(u) = σ_i - (q - q^{-1}) / (1 - u)`.
    pub fn right_mul_r_check(&self, i: usize, u: &BigRational) -> Result<Self> {
        let c = r_check_constant(&self.q, u)?;
        let mut x = self.right_mul_generator(i)?;
        x.add_scaled(self, &-c)?;
        Ok(x)
    }

    /// `self · S_{[i,j]}`, using the right-handed form of the recursion
    /// `S_{[i,j]} = [j-i+1]_q^{-1} Σ_{a=i}^{j} q^{i-a} S_{[i,j-1]} σ_{j-1} σ_{j-2} ... σ_a`.
    pub fn right_mul_symmetriser(&self, i: usize, j: usize) -> Result<Self> {
        check_interval(i, j, self.strands)?;
        if i == j {
            return Ok(self.clone());
        }
        let y = self.right_mul_symmetriser(i, j - 1)?;
        let mut acc = y.scale(&pow(&self.q, i as i64 - j as i64));
        let mut t = y;
        for a in (i..j).rev() {
            t = t.right_mul_generator(a)?;
            acc.add_scaled(&t, &pow(&self.q, i as i64 - a as i64))?;
        }
        Ok(acc.scale(&q_int(j as u32 - i as u32 + 1, &self.q)?.recip()))
    }

    /// `S_{[i,j]} · self`, mirror image of [`Self::right_mul_symmetriser`].
    pub fn left_mul_symmetriser(&self, i: usize, j: usize) -> Result<Self> {
        check_interval(i, j, self.strands)?;
        if i == j {
            return Ok(self.clone());
        }
        let y = self.left_mul_symmetriser(i, j - 1)?;
        let mut acc = y.scale(&pow(&self.q, i as i64 - j as i64));
        let mut t = y;
        for a in (i..j).rev() {
            t = t.left_mul_generator(a)?;
            acc.add_scaled(&t, &pow(&self.q, i as i64 - a as i64))?;
        }
        Ok(acc.scale(&q_int(j as u32 - i as u32 + 1, &self.q)?.recip()))
    }

    /// Bilinear product. The sparser factor is decomposed into canonical
    /// reduced words, which are folded over the other factor.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.strands, &self.q)?;
        if self.terms.len() <= other.terms.len() {
            for (w, c) in self.sorted_terms() {
                let part = other.left_mul_word(&w.reduced_word())?;
                out.add_scaled(&part, &c)?;
            }
        } else {
            for (w, c) in other.sorted_terms() {
                let part = self.right_mul_word(&w.reduced_word())?;
                out.add_scaled(&part, &c)?;
            }
        }
        Ok(out)
    }

    /// Image under `σ_i -> σ_{i + offset}` in `H_{new_m}(q)`.
    pub fn embed_shift(&self, offset: usize, new_m: usize) -> Result<Self> {
        check_strands(new_m)?;
        if self.strands + offset > new_m {
            return Err(Error::Domain(format!("cannot embed H_{} with offset {offset} into H_{new_m}", self.strands)));
        }
        let terms =
            self.terms.iter().map(|(w, c)| Ok((w.shift(offset, new_m)?, c.clone()))).collect::<Result<TermMap>>()?;
        Ok(Self { strands: new_m, q: self.q.clone(), terms })
    }

    pub fn first_difference(&self, other: &Self) -> Option<ElementDiff> {
        let mut keys: Vec<Permutation> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|w| {
            let (l, r) = (self.coeff(&w), other.coeff(&w));
            (l != r).then_some(ElementDiff { perm: w, left: l, right: r })
        })
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            strands: self.strands,
            q: format_rational(&self.q),
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(w, c)| TermJson { perm: w.images(), coeff: format_rational(&c) })
                .collect(),
        }
    }

    pub fn from_json(json: &ElementJson) -> Result<Self> {
        let q = parse_rational(&json.q)?;
        let terms = json
            .terms
            .iter()
            .map(|t| Ok((Permutation::from_images(&t.perm)?, parse_rational(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(json.strands, &q, terms)
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.strands == other.strands && self.q == other.q && self.terms == other.terms
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H_{}(q={})[", self.strands, self.q)?;
        for (n, (w, c)) in self.sorted_terms().iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})σ{w}")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub perm: Vec<usize>,
    pub coeff: String,
}

/// Wire form of an [`AlgebraElement`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub strands: usize,
    pub q: String,
    pub terms: Vec<TermJson>,
}

impl Permutation {
    fn identity_checked(m: usize) -> Result<Self> {
        check_strands(m)?;
        Ok(Permutation::identity(m))
    }
}

fn check_interval(i: usize, j: usize, m: usize) -> Result<()> {
    if i == 0 || i > j || j > m {
        return Err(Error::Domain(format!("interval [{i},{j}] not inside 1..={m}")));
    }
    Ok(())
}

/// The scalar `(q - q^{-1}) / (1 - u)` of `Ř(u)`.
pub fn r_check_constant(q: &BigRational, u: &BigRational) -> Result<BigRational> {
    check_q(q)?;
    if u.is_one() {
        return Err(Error::Pole("Ř(u) has a pole at u = 1".into()));
    }
    Ok((q - q.recip()) / (BigRational::one() - u))
}

pub fn unit(m: usize, q: &BigRational) -> Result<AlgebraElement> {
    AlgebraElement::unit(m, q)
}

pub fn generator(i: usize, m: usize, q: &BigRational) -> Result<AlgebraElement> {
    AlgebraElement::generator(i, m, q)
}

pub fn left_mul_generator(i: usize, x: &AlgebraElement) -> Result<AlgebraElement> {
    x.left_mul_generator(i)
}

pub fn multiply(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    a.multiply(b)
}

pub fn embed_shift(x: &AlgebraElement, offset: usize, new_m: usize) -> Result<AlgebraElement> {
    x.embed_shift(offset, new_m)
}

/// `Ř_i(u) = σ_i - (q - q^{-1}) / (1 - u)`.
pub fn r_check_generator(i: usize, u: &BigRational, m: usize, q: &BigRational) -> Result<AlgebraElement> {
    let c = r_check_constant(q, u)?;
    Ok(AlgebraElement::generator(i, m, q)?.sub_scalar(&c))
}

/// `S_{[i,j]} = q^{-M(M-1)/2} / [M]_q! · Σ_w q^{ℓ(w)} σ_w` over permutations of
/// the letters `i..=j`, `M = j - i + 1`. `S_{[i,i]} = 1`.
pub fn symmetriser_sum(i: usize, j: usize, m: usize, q: &BigRational) -> Result<AlgebraElement> {
    check_strands(m)?;
    check_q(q)?;
    check_interval(i, j, m)?;
    let size = j - i + 1;
    let fact = q_factorial(size as u32, q)?;
    if fact.is_zero() {
        return Err(Error::Parameter(format!("[{size}]_q! vanishes at q = {q}")));
    }
    let norm = pow(q, -((size * (size - 1) / 2) as i64)) / fact;
    let terms = all_permutations(size)?
        .into_iter()
        .map(|w| Ok((w.shift(i - 1, m)?, &norm * pow(q, w.length() as i64))))
        .collect::<Result<Vec<_>>>()?;
    AlgebraElement::from_terms(m, q, terms)
}

/// `S_{[i,j]} = [M]_q!^{-1} ∏_{a=i}^{j-1} Ř_a(q^{2(a-i+1)}) Ř_{a-1}(q^{2(a-i)}) ... Ř_i(q^2)`,
/// factors ordered left to right as `a` increases.
pub fn symmetriser_product(i: usize, j: usize, m: usize, q: &BigRational) -> Result<AlgebraElement> {
    check_strands(m)?;
    check_q(q)?;
    check_interval(i, j, m)?;
    let size = j - i + 1;
    for r in 1..size {
        if pow(q, 2 * r as i64).is_one() {
            return Err(Error::Pole(format!("symmetriser product formula: Ř(q^{}) has a pole at q = {q}", 2 * r)));
        }
    }
    let fact = q_factorial(size as u32, q)?;
    if fact.is_zero() {
        return Err(Error::Parameter(format!("[{size}]_q! vanishes at q = {q}")));
    }
    let mut x = AlgebraElement::unit(m, q)?;
    for a in i..j {
        for b in (i..=a).rev() {
            x = x.right_mul_r_check(b, &pow(q, 2 * (b - i + 1) as i64))?;
        }
    }
    Ok(x.scale(&fact.recip()))
}

/// Checks `S_{[i,j+1]} = [j-i+2]_q^{-1} Σ_{a=i}^{j+1} q^{i-a} σ_a σ_{a+1} ... σ_j S_{[i,j]}`,
/// where the word is empty for `a = j + 1`.
pub fn symmetriser_recursion_check(i: usize, j: usize, m: usize, q: &BigRational) -> Result<bool> {
    check_interval(i, j + 1, m)?;
    let base = symmetriser_sum(i, j, m, q)?;
    let mut acc = AlgebraElement::zero(m, q)?;
    for a in i..=j + 1 {
        let word: Vec<usize> = (a..=j).collect();
        acc.add_scaled(&base.left_mul_word(&word)?, &pow(q, i as i64 - a as i64))?;
    }
    let rhs = acc.scale(&q_int((j - i + 2) as u32, q)?.recip());
    Ok(rhs == symmetriser_sum(i, j + 1, m, q)?)
}
