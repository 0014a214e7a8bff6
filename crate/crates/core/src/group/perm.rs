use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, ..., N-1}`; `images[s] = sigma(s)`.
///
/// Composition is `(sigma * tau)(s) = sigma(tau(s))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymPerm {
    images: Vec<usize>,
}

impl SymPerm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidArgument(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, s: usize) -> usize {
        self.images[s]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "permutations of different degree");
        Self {
            images: other.images.iter().map(|&s| self.images[s]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (s, &x) in self.images.iter().enumerate() {
            inv[x] = s;
        }
        Self { images: inv }
    }

    /// `(sigma . h)(s) = h(sigma^{-1}(s))`: the entry at position `s` moves to `sigma(s)`.
    pub fn act<T: Clone>(&self, h: &[T]) -> Vec<T> {
        assert_eq!(h.len(), self.degree(), "tuple length differs from permutation degree");
        let mut out = h.to_vec();
        for (s, x) in h.iter().enumerate() {
            out[self.images[s]] = x.clone();
        }
        out
    }

    /// Position in the lexicographic listing of `Sym_N`.
    pub fn lex_rank(&self) -> usize {
        let n = self.images.len();
        let mut rank = 0;
        for i in 0..n {
            let smaller = self.images[i + 1..].iter().filter(|&&x| x < self.images[i]).count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }

    pub fn from_lex_rank(n: usize, mut rank: usize) -> Self {
        let mut pool: Vec<usize> = (0..n).collect();
        let mut digits = vec![0; n];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = rank % base;
            rank /= base;
        }
        let images = digits.into_iter().map(|d| pool.remove(d)).collect();
        Self { images }
    }

    /// All of `Sym_N` in lexicographic order.
    pub fn all(n: usize) -> Vec<SymPerm> {
        (0..factorial(n)).map(|r| Self::from_lex_rank(n, r)).collect()
    }

    pub fn sign(&self) -> i32 {
        let mut seen = vec![false; self.images.len()];
        let mut sign = 1;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut s = start;
            while !seen[s] {
                seen[s] = true;
                s = self.images[s];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }
}

impl fmt::Display for SymPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}
