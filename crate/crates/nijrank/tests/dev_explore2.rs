//! Second scratchpad: hit-rate measurements for hard rank-1 targets.

use nijrank::acs::{mu_bar, random_acs, CoFrame, DeformationParams, SampleMode};
use nijrank::matrix::Matrix;
use nijrank::salamon::parse_salamon;
use nijrank::survey::derive_seed;
use nijrank::GaussianRational;

fn pairing_base(m: usize, pairs: &[(usize, usize)], signs: u32) -> Option<CoFrame> {
    let mut rows = Matrix::zero(m, 2 * m);
    for (j, &(a, b)) in pairs.iter().enumerate() {
        let s = if signs >> j & 1 == 0 { 1 } else { -1 };
        rows[(j, a - 1)] = GaussianRational::one();
        rows[(j, b - 1)] = GaussianRational::complex(0, 1, s, 1);
    }
    CoFrame::new(rows).ok()
}

fn matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(rest: Vec<usize>) -> Vec<Vec<(usize, usize)>> {
        if rest.is_empty() {
            return vec![vec![]];
        }
        let a = rest[0];
        let mut out = Vec::new();
        for i in 1..rest.len() {
            let b = rest[i];
            let mut next: Vec<usize> = rest[1..].to_vec();
            next.retain(|&x| x != b);
            for mut tail in go(next) {
                let mut v = vec![(a, b)];
                v.append(&mut tail);
                out.push(v);
            }
        }
        out
    }
    go((1..=n).collect())
}

#[test]
#[ignore]
fn hard_rank1_hit_rates() {
    for tuple in ["(0,0,12,13,14,23+15)", "(0,0,12,13,14,34-25)"] {
        let g = parse_salamon(tuple).unwrap();
        // (a) random conjugate mode, small magnitude
        for mag in [1u32, 2] {
            let mut hits = 0;
            let n = 20_000usize;
            for i in 0..n {
                if let Ok(cf) = random_acs(3, derive_seed(99, i as u64), SampleMode::Conjugate, mag)
                {
                    if mu_bar(&g, &cf).unwrap().rank() == 1 {
                        hits += 1;
                        if hits <= 2 {
                            eprintln!("   conj mag{mag} hit at i={i}");
                        }
                    }
                }
            }
            eprintln!("{tuple}: conjugate mag={mag}: {hits}/{n} rank-1");
        }
        // (b) two-entry deformations of pairing bases, tiny pools
        let vals = [
            GaussianRational::from_int(1),
            GaussianRational::from_int(-1),
            GaussianRational::from_int(2),
            GaussianRational::ratio(1, 2),
            GaussianRational::i(),
        ];
        let mut hits = 0;
        let mut total = 0;
        let mut first = None;
        for (mi, pairs) in matchings(6).iter().enumerate() {
            for signs in 0..4u32 {
                let Some(base) = pairing_base(3, pairs, signs) else { continue };
                for p1 in 0..9 {
                    for p2 in (p1 + 1)..9 {
                        for v1 in &vals {
                            for v2 in &vals {
                                let mut phi = Matrix::zero(3, 3);
                                phi[(p1 / 3, p1 % 3)] = v1.clone();
                                phi[(p2 / 3, p2 % 3)] = v2.clone();
                                total += 1;
                                if let Ok(cf) =
                                    base.deform(&DeformationParams::new(phi).unwrap())
                                {
                                    if mu_bar(&g, &cf).unwrap().rank() == 1 {
                                        hits += 1;
                                        if first.is_none() {
                                            first = Some((mi, signs, p1, p2, v1.clone(), v2.clone()));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        eprintln!("{tuple}: pair-deformed pairing bases: {hits}/{total}, first={first:?}");
    }
}
