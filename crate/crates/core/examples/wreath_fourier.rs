//! Fourier transform over Z/3 wr Sym_2: forward, inverse, and the group law
//! checked on a pair of elements.

use fastmm::group::{fourier_wreath, inverse_fourier_wreath, wreath_inv, wreath_mul, AbelianGroup, WreathGroup};
use num_complex::Complex64;

fn main() -> fastmm::Result<()> {
    let g = WreathGroup::new(AbelianGroup::cyclic(3), 2)?;
    println!("|G| = {}", g.order());

    let x = g.element(5);
    let y = g.element(13);
    let xy = wreath_mul(&g, &x, &y)?;
    assert_eq!(wreath_mul(&g, &xy, &wreath_inv(&g, &y)?)?, x);
    println!("{:?} * {:?} = {:?}", x, y, xy);

    let a: Vec<Complex64> = (0..g.order()).map(|i| Complex64::new(i as f64, (i % 3) as f64)).collect();
    let a_hat = fourier_wreath(&g, &a)?;
    let back = inverse_fourier_wreath(&g, &a_hat)?;
    let err = a.iter().zip(&back).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max);
    println!("round trip error {err:e}");
    Ok(())
}
