//! Runs Strassen in simulated 24-bit arithmetic and compares the measured
//! max-entry error with the stationary bound.

use fastmm::bilinear::{strassen, Engine, RecursionSchedule};
use fastmm::stability::{lift, measure_error, mu_classical, random_dyadic, BoundSpec, StationaryBound};
use fastmm::{multiply_classical, NormKind, RoundingContext};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> fastmm::Result<()> {
    let ctx = RoundingContext::new(24)?;
    let alg = strassen();
    let stationary = StationaryBound::theta0(&alg);
    println!("{}", stationary.describe());
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    for n in [4, 8, 16, 32] {
        let a = lift(&random_dyadic(n, n, 12, &mut rng), ctx);
        let b = lift(&random_dyadic(n, n, 12, &mut rng), ctx);
        let engine = Engine::new(RecursionSchedule::stationary(alg.clone(), 1)?).sequential();
        let spec = BoundSpec {
            algorithm: "strassen".into(),
            mu: stationary.mu(n)?,
            theta: Some(stationary.theta),
            slack: 0.1,
        };
        println!("{}", measure_error(|x, y| engine.multiply(x, y), &a, &b, NormKind::MaxEntry, &spec)?);

        let spec = BoundSpec { algorithm: "classical".into(), mu: mu_classical(n), theta: None, slack: 0.1 };
        println!("{}", measure_error(multiply_classical, &a, &b, NormKind::MaxEntry, &spec)?);
    }
    Ok(())
}
