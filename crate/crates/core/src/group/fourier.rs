//! Fourier transform on `H wr Sym_N`, slice by slice over `Sym_N`:
//!
//! ```text
//! a^(chi, sigma) = sum_{h in H^N} chi(h) a[(sigma.h, sigma)]
//! ```
//!
//! where `(sigma.h, sigma)` is the product `sigma h` in the wreath product.
//! A character of `H^N` is named by an `H^N` tuple (its coefficient tuple),
//! and output position `(chi, sigma)` uses the same numbering as the element
//! `(chi, sigma)`.

use num_complex::Complex64;

use super::abelian::root_of_unity;
use super::perm::{factorial, SymPerm};
use super::wreath::WreathGroup;
use crate::error::{Error, Result};

pub fn fourier_index(group: &WreathGroup, chi: &[usize], sigma: &SymPerm) -> usize {
    group.h_index(chi) * factorial(group.degree()) + sigma.lex_rank()
}

fn check_len(group: &WreathGroup, len: usize) -> Result<()> {
    if len != group.order() {
        return Err(Error::InvalidArgument(format!(
            "vector of length {len} does not match |H|^N N! = {}",
            group.order()
        )));
    }
    Ok(())
}

/// In-place DFT over every cyclic axis of `H^N`; `inverse` conjugates the roots.
fn dft_axes(group: &WreathGroup, data: &mut [Complex64], inverse: bool) {
    let orders: Vec<usize> = group.base().power(group.degree()).orders().to_vec();
    let mut stride = data.len();
    let mut line = Vec::new();
    for &n in &orders {
        stride /= n;
        if n == 1 {
            continue;
        }
        let roots: Vec<Complex64> = (0..n)
            .map(|e| {
                let z = root_of_unity(e, n);
                if inverse {
                    z.conj()
                } else {
                    z
                }
            })
            .collect();
        let block = stride * n;
        for outer in (0..data.len()).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                line.clear();
                line.extend((0..n).map(|x| data[base + x * stride]));
                for c in 0..n {
                    data[base + c * stride] = (0..n).map(|x| roots[c * x % n] * line[x]).sum();
                }
            }
        }
    }
}

pub fn fourier_wreath(group: &WreathGroup, a: &[Complex64]) -> Result<Vec<Complex64>> {
    check_len(group, a.len())?;
    let f = factorial(group.degree());
    let hn = group.base_power_order();
    let mut out = vec![Complex64::new(0.0, 0.0); a.len()];
    let mut slice = vec![Complex64::new(0.0, 0.0); hn];
    for (r, sigma) in SymPerm::all(group.degree()).iter().enumerate() {
        for (hi, v) in slice.iter_mut().enumerate() {
            let moved = sigma.act(&group.h_from_index(hi));
            *v = a[group.h_index(&moved) * f + r];
        }
        dft_axes(group, &mut slice, false);
        for (ci, v) in slice.iter().enumerate() {
            out[ci * f + r] = *v;
        }
    }
    Ok(out)
}

/// `c[(sigma.h, sigma)] = |H|^{-N} sum_chi chi(-h) c^(chi, sigma)`
pub fn inverse_fourier_wreath(group: &WreathGroup, c_hat: &[Complex64]) -> Result<Vec<Complex64>> {
    check_len(group, c_hat.len())?;
    let f = factorial(group.degree());
    let hn = group.base_power_order();
    let scale = 1.0 / hn as f64;
    let mut out = vec![Complex64::new(0.0, 0.0); c_hat.len()];
    let mut slice = vec![Complex64::new(0.0, 0.0); hn];
    for (r, sigma) in SymPerm::all(group.degree()).iter().enumerate() {
        for (ci, v) in slice.iter_mut().enumerate() {
            *v = c_hat[ci * f + r];
        }
        dft_axes(group, &mut slice, true);
        for (hi, v) in slice.iter().enumerate() {
            let moved = sigma.act(&group.h_from_index(hi));
            out[group.h_index(&moved) * f + r] = v * scale;
        }
    }
    Ok(out)
}
