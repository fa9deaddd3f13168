//! Ensemble densities for rank-1 on the hardest algebra.

use nijrank::acs::{mu_bar, standard_acs, DeformationParams};
use nijrank::matrix::Matrix;
use nijrank::salamon::parse_salamon;
use nijrank::survey::derive_seed;
use nijrank::GaussianRational;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[test]
#[ignore]
fn discrete_phi_ensembles() {
    let g = parse_salamon("(0,0,12,13,14,34-25)").unwrap();
    for (name, lo, hi) in [("int-complex [-1,1]", -1i64, 1i64), ("int-complex [-2,2]", -2, 2)] {
        let span = (hi - lo + 1) as u64;
        let n = 40_000usize;
        let mut hits = 0;
        let mut firsts = Vec::new();
        for i in 0..n {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(1234, i as u64));
            let mut draw = |rng: &mut ChaCha8Rng| (rng.next_u64() % span) as i64 + lo;
            let phi = Matrix::from_fn(3, 3, |_, _| {
                GaussianRational::complex(draw(&mut rng), 1, draw(&mut rng), 1)
            });
            let Ok(cf) = standard_acs(3).deform(&DeformationParams::new(phi.clone()).unwrap())
            else {
                continue;
            };
            if mu_bar(&g, &cf).unwrap().rank() == 1 {
                hits += 1;
                if firsts.len() < 3 {
                    firsts.push((i, phi));
                }
            }
        }
        eprintln!("{name}: {hits}/{n}");
        for (i, phi) in &firsts {
            eprintln!("  i={i} phi={phi:?}");
        }
    }
}
