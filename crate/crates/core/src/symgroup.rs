//! Permutations in one-line notation, packed into a single word.
//!
//! Letter `i` (1-based) of the one-line notation occupies the nibble at
//! `4 * (len - i)`, so numeric order of the packed word is lexicographic
//! order of the images for permutations of the same size.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest `m` a [`Permutation`] can hold.
pub const MAX_LETTERS: usize = 16;

/// Default bound for [`all_permutations`].
pub const ENUMERATION_BOUND: usize = 10;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Permutation {
    len: u8,
    packed: u64,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        assert!((1..=MAX_LETTERS).contains(&m), "permutation size {m} out of range");
        let mut packed = 0u64;
        for i in 0..m {
            packed = (packed << 4) | i as u64;
        }
        Self { len: m as u8, packed }
    }

    /// Builds a permutation from 1-based images, checking bijectivity.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let m = images.len();
        if m == 0 || m > MAX_LETTERS {
            return Err(Error::Domain(format!("permutation size {m} out of range 1..={MAX_LETTERS}")));
        }
        let mut seen = [false; MAX_LETTERS];
        let mut packed = 0u64;
        for &x in images {
            if x == 0 || x > m || seen[x - 1] {
                return Err(Error::Domain(format!("{images:?} is not a permutation of 1..={m}")));
            }
            seen[x - 1] = true;
            packed = (packed << 4) | (x - 1) as u64;
        }
        Ok(Self { len: m as u8, packed })
    }

    /// The simple transposition `s_i` swapping `i` and `i + 1`.
    pub fn simple(i: usize, m: usize) -> Result<Self> {
        if i == 0 || i >= m {
            return Err(Error::Domain(format!("simple transposition s_{i} not in S_{m}")));
        }
        Ok(Self::identity(m).swap_positions(i))
    }

    pub fn size(&self) -> usize {
        self.len as usize
    }

    #[inline]
    fn shift_of(&self, i: usize) -> u32 {
        4 * (self.len as u32 - i as u32)
    }

    /// Image of the 1-based letter `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        ((self.packed >> self.shift_of(i)) & 0xf) as usize + 1
    }

    pub fn images(&self) -> Vec<usize> {
        (1..=self.size()).map(|i| self.apply(i)).collect()
    }

    /// 1-based position holding the value `x`.
    pub fn position_of(&self, x: usize) -> usize {
        (1..=self.size()).find(|&i| self.apply(i) == x).expect("value out of range")
    }

    /// `self ∘ s_i`: swaps the entries at positions `i` and `i + 1`.
    #[inline]
    pub fn swap_positions(&self, i: usize) -> Self {
        let (sa, sb) = (self.shift_of(i), self.shift_of(i + 1));
        let a = (self.packed >> sa) & 0xf;
        let b = (self.packed >> sb) & 0xf;
        let cleared = self.packed & !((0xf << sa) | (0xf << sb));
        Self { len: self.len, packed: cleared | (b << sa) | (a << sb) }
    }

    /// `s_i ∘ self`: swaps the values `i` and `i + 1`.
    pub fn swap_values(&self, i: usize) -> Self {
        let (pa, pb) = (self.position_of(i), self.position_of(i + 1));
        let (lo, hi) = if pa < pb { (pa, pb) } else { (pb, pa) };
        let (sa, sb) = (self.shift_of(lo), self.shift_of(hi));
        let a = (self.packed >> sa) & 0xf;
        let b = (self.packed >> sb) & 0xf;
        let cleared = self.packed & !((0xf << sa) | (0xf << sb));
        Self { len: self.len, packed: cleared | (b << sa) | (a << sb) }
    }

    /// True when `ℓ(self ∘ s_i) > ℓ(self)`.
    #[inline]
    pub fn right_ascent(&self, i: usize) -> bool {
        self.apply(i) < self.apply(i + 1)
    }

    /// True when `ℓ(s_i ∘ self) > ℓ(self)`.
    pub fn left_ascent(&self, i: usize) -> bool {
        self.position_of(i) < self.position_of(i + 1)
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len != other.len {
            return Err(Error::Domain(format!("cannot compose permutations of sizes {} and {}", self.len, other.len)));
        }
        let images: Vec<usize> = (1..=self.size()).map(|i| self.apply(other.apply(i))).collect();
        Self::from_images(&images)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.size()];
        for i in 1..=self.size() {
            images[self.apply(i) - 1] = i;
        }
        Self::from_images(&images).expect("inverse of a bijection")
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let img = self.images();
        let mut count = 0;
        for i in 0..img.len() {
            for j in i + 1..img.len() {
                if img[i] > img[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Canonical reduced word `(i_1, ..., i_l)` with `self = s_{i_1} ∘ ... ∘ s_{i_l}`.
    ///
    /// Descending staircase: for each value from the largest down, bubble it
    /// rightwards into place, recording each adjacent swap; the recorded
    /// swaps sort `self`, so the word is their reverse.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut img = self.images();
        let mut swaps = Vec::new();
        for v in (1..=img.len()).rev() {
            let mut pos = img.iter().position(|&x| x == v).unwrap() + 1;
            while pos < v {
                img.swap(pos - 1, pos);
                swaps.push(pos);
                pos += 1;
            }
        }
        swaps.reverse();
        swaps
    }

    /// Image under the embedding `s_i -> s_{i + offset}` into `S_{new_m}`.
    pub fn shift(&self, offset: usize, new_m: usize) -> Result<Self> {
        if self.size() + offset > new_m || new_m > MAX_LETTERS {
            return Err(Error::Domain(format!("cannot shift S_{} by {offset} into S_{new_m}", self.size())));
        }
        let images: Vec<usize> = (1..=new_m)
            .map(|i| if i > offset && i <= offset + self.size() { self.apply(i - offset) + offset } else { i })
            .collect();
        Self::from_images(&images)
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then(self.packed.cmp(&other.packed))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 1..=self.size() {
            if i > 1 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.apply(i))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("permutation must be bracketed: {s:?}")))?;
        let images = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad letter {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(&images)
    }
}

/// All `m!` permutations in lexicographic order of their one-line notation.
pub fn all_permutations(m: usize) -> Result<Vec<Permutation>> {
    all_permutations_bounded(m, ENUMERATION_BOUND)
}

pub fn all_permutations_bounded(m: usize, bound: usize) -> Result<Vec<Permutation>> {
    if m == 0 {
        return Err(Error::Domain("S_0 is not supported".into()));
    }
    if m > bound.min(MAX_LETTERS) {
        return Err(Error::Resource(format!("enumerating S_{m} exceeds the bound {bound}")));
    }
    let mut current: Vec<usize> = (1..=m).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation::from_images(&current)?);
        // next lexicographic permutation
        let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..m).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[usize]) -> Permutation {
        Permutation::from_images(images).unwrap()
    }

    fn word_to_perm(word: &[usize], m: usize) -> Permutation {
        word.iter().fold(Permutation::identity(m), |acc, &i| acc.compose(&Permutation::simple(i, m).unwrap()).unwrap())
    }

    #[test]
    fn identity_and_composition() {
        assert_eq!(Permutation::identity(1).images(), vec![1]);
        assert_eq!(Permutation::identity(3).images(), vec![1, 2, 3]);
        assert_eq!(Permutation::identity(5).length(), 0);
        assert_eq!(p(&[2, 1, 3]).compose(&p(&[2, 1, 3])).unwrap(), p(&[1, 2, 3]));
        assert_eq!(p(&[2, 1, 3]).compose(&p(&[1, 3, 2])).unwrap(), p(&[2, 3, 1]));
        for w in all_permutations(4).unwrap() {
            assert_eq!(w.compose(&Permutation::identity(4)).unwrap(), w);
        }
        assert!(p(&[1, 2]).compose(&p(&[1, 2, 3])).is_err());
    }

    #[test]
    fn lengths() {
        assert_eq!(p(&[3, 2, 1]).length(), 3);
        assert_eq!(Permutation::simple(2, 4).unwrap().length(), 1);
        let total: usize = all_permutations(3).unwrap().iter().map(|w| w.length()).sum();
        assert_eq!(total, 9);
    }

    #[test]
    fn reduced_words() {
        assert!(Permutation::identity(4).reduced_word().is_empty());
        assert_eq!(p(&[2, 1, 3]).reduced_word(), vec![1]);
        let w0 = p(&[3, 2, 1]);
        assert_eq!(w0.reduced_word(), vec![1, 2, 1]);
        // no shorter word reaches w0
        for len in 0..3usize {
            let words: Vec<Vec<usize>> = (0..len).fold(vec![vec![]], |acc, _| {
                acc.into_iter().flat_map(|w| (1..=2).map(move |i| [w.clone(), vec![i]].concat())).collect()
            });
            assert!(words.iter().all(|w| word_to_perm(w, 3) != w0));
        }
    }

    #[test]
    fn reduced_word_round_trip_exhaustive() {
        for m in 1..=5 {
            for w in all_permutations(m).unwrap() {
                let word = w.reduced_word();
                assert_eq!(word.len(), w.length());
                assert_eq!(word_to_perm(&word, m), w);
            }
        }
    }

    #[test]
    fn length_changes_by_one() {
        for m in 2..=5 {
            for w in all_permutations(m).unwrap() {
                for i in 1..m {
                    let s = Permutation::simple(i, m).unwrap();
                    let l = s.compose(&w).unwrap().length();
                    assert!(l + 1 == w.length() || l == w.length() + 1);
                    assert_eq!(s.compose(&w).unwrap(), w.swap_values(i));
                    assert_eq!(w.compose(&s).unwrap(), w.swap_positions(i));
                    assert_eq!(w.left_ascent(i), l > w.length());
                }
            }
        }
    }

    #[test]
    fn enumeration() {
        assert_eq!(all_permutations(1).unwrap(), vec![Permutation::identity(1)]);
        let s3 = all_permutations(3).unwrap();
        assert_eq!(s3.len(), 6);
        assert!(s3.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(all_permutations(11), Err(Error::Resource(_))));
    }

    #[test]
    fn text_form() {
        let w = p(&[2, 1, 3]);
        assert_eq!(w.to_string(), "[2,1,3]");
        assert_eq!("[2,1,3]".parse::<Permutation>().unwrap(), w);
        assert!("[1,1]".parse::<Permutation>().is_err());
        assert!("2,1".parse::<Permutation>().is_err());
    }

    #[test]
    fn shift_embeds() {
        let s1 = Permutation::simple(1, 2).unwrap();
        assert_eq!(s1.shift(1, 3).unwrap(), Permutation::simple(2, 3).unwrap());
        assert_eq!(s1.shift(0, 3).unwrap(), Permutation::simple(1, 3).unwrap());
        assert!(s1.shift(2, 3).is_err());
    }
}
