use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};

/// `Z/n_1 x ... x Z/n_d`, elements are residue tuples.
///
/// Elements are numbered in mixed radix with coordinate 0 most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    orders: Vec<usize>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidArgument(format!("cyclic factor orders must be positive: {orders:?}")));
        }
        Ok(Self { orders })
    }

    pub fn cyclic(n: usize) -> Self {
        Self::new(vec![n]).expect("positive order")
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn zero(&self) -> Vec<usize> {
        vec![0; self.orders.len()]
    }

    pub fn contains(&self, h: &[usize]) -> bool {
        h.len() == self.orders.len() && h.iter().zip(&self.orders).all(|(x, n)| x < n)
    }

    pub fn check(&self, h: &[usize]) -> Result<()> {
        if self.contains(h) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!("{h:?} is not an element of {self}")))
        }
    }

    pub fn add(&self, g: &[usize], h: &[usize]) -> Vec<usize> {
        g.iter().zip(h).zip(&self.orders).map(|((a, b), n)| (a + b) % n).collect()
    }

    pub fn neg(&self, h: &[usize]) -> Vec<usize> {
        h.iter().zip(&self.orders).map(|(a, n)| (n - a) % n).collect()
    }

    pub fn sub(&self, g: &[usize], h: &[usize]) -> Vec<usize> {
        g.iter().zip(h).zip(&self.orders).map(|((a, b), n)| (a + n - b) % n).collect()
    }

    pub fn index_of(&self, h: &[usize]) -> usize {
        h.iter().zip(&self.orders).fold(0, |acc, (x, n)| acc * n + x)
    }

    pub fn element(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.orders.len()];
        for (slot, n) in out.iter_mut().zip(&self.orders).rev() {
            *slot = index % n;
            index /= n;
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    /// `H^N` as a single Abelian group whose factors are `N` copies of this one.
    pub fn power(&self, n: usize) -> AbelianGroup {
        AbelianGroup {
            orders: self.orders.iter().copied().cycle().take(self.orders.len() * n).collect(),
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return f.write_str("trivial group");
        }
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z/{n}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// `e^{2 pi i num / den}`, exact at multiples of a quarter turn.
pub fn root_of_unity(num: usize, den: usize) -> Complex64 {
    let g = num.gcd(&den);
    let (num, den) = (num / g % (den / g), den / g);
    match (num, den) {
        (0, _) => Complex64::new(1.0, 0.0),
        (1, 2) => Complex64::new(-1.0, 0.0),
        (1, 4) => Complex64::new(0.0, 1.0),
        (3, 4) => Complex64::new(0.0, -1.0),
        _ => {
            let angle = TAU * num as f64 / den as f64;
            Complex64::new(angle.cos(), angle.sin())
        }
    }
}

/// `chi_c(h) = exp(2 pi i sum_j c_j h_j / n_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    pub coeffs: Vec<usize>,
}

impl Character {
    pub fn new(coeffs: Vec<usize>) -> Self {
        Self { coeffs }
    }

    pub fn trivial(group: &AbelianGroup) -> Self {
        Self::new(group.zero())
    }

    pub fn eval(&self, group: &AbelianGroup, h: &[usize]) -> Result<Complex64> {
        if !group.contains(&self.coeffs) {
            return Err(Error::GroupMismatch(format!(
                "character {:?} does not belong to the dual of {group}",
                self.coeffs
            )));
        }
        group.check(h)?;
        // reduce sum_j c_j h_j / n_j exactly over the common denominator
        let lcm = group.orders().iter().fold(1usize, |acc, n| acc.lcm(n));
        let num = self
            .coeffs
            .iter()
            .zip(h)
            .zip(group.orders())
            .fold(0usize, |acc, ((c, x), n)| (acc + (c * x % n) * (lcm / n)) % lcm);
        Ok(root_of_unity(num, lcm))
    }
}

pub fn char_eval(chi: &Character, group: &AbelianGroup, h: &[usize]) -> Result<Complex64> {
    chi.eval(group, h)
}
