use std::fmt::Debug;
use std::hash::Hash;

use super::abelian::AbelianGroup;
use super::perm::{factorial, SymPerm};
use crate::error::{Error, Result};

/// The operations the triple-product checks need.
pub trait FiniteGroup {
    type Elem: Clone + Eq + Hash + Debug;

    fn identity(&self) -> Self::Elem;
    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;
    fn contains(&self, a: &Self::Elem) -> bool;

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }
}

impl FiniteGroup for AbelianGroup {
    type Elem = Vec<usize>;

    fn identity(&self) -> Vec<usize> {
        self.zero()
    }
    fn op(&self, a: &Vec<usize>, b: &Vec<usize>) -> Vec<usize> {
        self.add(a, b)
    }
    fn inverse(&self, a: &Vec<usize>) -> Vec<usize> {
        self.neg(a)
    }
    fn contains(&self, a: &Vec<usize>) -> bool {
        AbelianGroup::contains(self, a)
    }
}

/// `(h, sigma)` in `H^N x| Sym_N`; `h[s]` is the index of an element of `H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    pub h: Vec<usize>,
    pub sigma: SymPerm,
}

/// `H wr Sym_N` with multiplication `(h1, s1)(h2, s2) = (h1 + s1.h2, s1 s2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathGroup {
    base: AbelianGroup,
    degree: usize,
    add: Vec<usize>,
    neg: Vec<usize>,
}

impl WreathGroup {
    pub fn new(base: AbelianGroup, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidArgument("wreath product needs N >= 1".into()));
        }
        let m = base.order();
        let mut add = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                add[a * m + b] = base.index_of(&base.add(&base.element(a), &base.element(b)));
            }
        }
        let neg = (0..m).map(|a| base.index_of(&base.neg(&base.element(a)))).collect();
        Ok(Self { base, degree, add, neg })
    }

    pub fn base(&self) -> &AbelianGroup {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `|H|^N`
    pub fn base_power_order(&self) -> usize {
        self.base.order().pow(self.degree as u32)
    }

    pub fn order(&self) -> usize {
        self.base_power_order() * factorial(self.degree)
    }

    pub fn add_h(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        let m = self.base.order();
        a.iter().zip(b).map(|(&x, &y)| self.add[x * m + y]).collect()
    }

    pub fn neg_h(&self, a: &[usize]) -> Vec<usize> {
        a.iter().map(|&x| self.neg[x]).collect()
    }

    /// Mixed-radix index of `h` in `H^N`, coordinate 0 most significant.
    pub fn h_index(&self, h: &[usize]) -> usize {
        let m = self.base.order();
        h.iter().fold(0, |acc, &x| acc * m + x)
    }

    pub fn h_from_index(&self, mut index: usize) -> Vec<usize> {
        let m = self.base.order();
        let mut h = vec![0; self.degree];
        for slot in h.iter_mut().rev() {
            *slot = index % m;
            index /= m;
        }
        h
    }

    /// `h_index(h) * N! + lex_rank(sigma)`
    pub fn index_of(&self, g: &WreathElement) -> usize {
        self.h_index(&g.h) * factorial(self.degree) + g.sigma.lex_rank()
    }

    pub fn element(&self, index: usize) -> WreathElement {
        let f = factorial(self.degree);
        WreathElement {
            h: self.h_from_index(index / f),
            sigma: SymPerm::from_lex_rank(self.degree, index % f),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = WreathElement> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    /// `(0, sigma)`
    pub fn perm(&self, sigma: SymPerm) -> WreathElement {
        WreathElement { h: vec![0; self.degree], sigma }
    }

    /// `(h, id)`
    pub fn translation(&self, h: Vec<usize>) -> WreathElement {
        WreathElement { h, sigma: SymPerm::identity(self.degree) }
    }

    fn check(&self, g: &WreathElement) -> Result<()> {
        if FiniteGroup::contains(self, g) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!(
                "{g:?} is not an element of {} wr Sym_{}",
                self.base, self.degree
            )))
        }
    }
}

impl FiniteGroup for WreathGroup {
    type Elem = WreathElement;

    fn identity(&self) -> WreathElement {
        self.translation(vec![0; self.degree])
    }

    fn op(&self, a: &WreathElement, b: &WreathElement) -> WreathElement {
        WreathElement {
            h: self.add_h(&a.h, &a.sigma.act(&b.h)),
            sigma: a.sigma.compose(&b.sigma),
        }
    }

    fn inverse(&self, a: &WreathElement) -> WreathElement {
        let inv = a.sigma.inverse();
        WreathElement {
            h: self.neg_h(&inv.act(&a.h)),
            sigma: inv,
        }
    }

    fn contains(&self, a: &WreathElement) -> bool {
        a.h.len() == self.degree && a.sigma.degree() == self.degree && a.h.iter().all(|&x| x < self.base.order())
    }
}

pub fn wreath_mul(group: &WreathGroup, a: &WreathElement, b: &WreathElement) -> Result<WreathElement> {
    group.check(a)?;
    group.check(b)?;
    Ok(group.op(a, b))
}

pub fn wreath_inv(group: &WreathGroup, a: &WreathElement) -> Result<WreathElement> {
    group.check(a)?;
    Ok(group.inverse(a))
}
