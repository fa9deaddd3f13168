//! Development scratchpad for search-strategy tuning.

use nijrank::acs::{mu_bar, standard_acs, CoFrame, DeformationParams};
use nijrank::matrix::Matrix;
use nijrank::salamon::parse_salamon;
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
fn explore_pairing_bases() {
    for tuple in [
        "(0,0,12,13,14,34-25)",
        "(0,0,12,13,14+23,24+15)",
        "(0,0,12,13,14,23+15)",
        "(0,0,0,12,14,24)",
        "(0,0,12,13,14,15)",
    ] {
        let g = parse_salamon(tuple).unwrap();
        let mut rank_hist = std::collections::BTreeMap::new();
        let mut first_rank1 = None;
        let mut first_rank2 = None;
        for (mi, pairs) in matchings(6).iter().enumerate() {
            for signs in 0..4u32 {
                if let Some(cf) = pairing_base(3, pairs, signs) {
                    let r = mu_bar(&g, &cf).unwrap().rank();
                    *rank_hist.entry(r).or_insert(0) += 1;
                    if r == 1 && first_rank1.is_none() {
                        first_rank1 = Some((mi, signs, pairs.clone()));
                    }
                    if r == 2 && first_rank2.is_none() {
                        first_rank2 = Some((mi, signs, pairs.clone()));
                    }
                }
            }
        }
        eprintln!("{tuple}: pairing-base rank histogram {rank_hist:?}");
        eprintln!("   rank1 base: {first_rank1:?}");
        eprintln!("   rank2 base: {first_rank2:?}");
        // single-entry deformations of each pairing base
        let vals = [
            GaussianRational::from_int(1),
            GaussianRational::from_int(2),
            GaussianRational::ratio(1, 2),
            GaussianRational::i(),
        ];
        let mut hist2 = std::collections::BTreeMap::new();
        for pairs in matchings(6) {
            for signs in 0..4u32 {
                let Some(base) = pairing_base(3, &pairs, signs) else { continue };
                for pos in 0..9 {
                    for v in &vals {
                        let mut phi = Matrix::zero(3, 3);
                        phi[(pos / 3, pos % 3)] = v.clone();
                        if let Ok(cf) = base.deform(&DeformationParams::new(phi).unwrap()) {
                            let r = mu_bar(&g, &cf).unwrap().rank();
                            *hist2.entry(r).or_insert(0) += 1;
                        }
                    }
                }
            }
        }
        eprintln!("   single-deformed pairing bases: {hist2:?}");
        let _ = standard_acs(3);
    }
}
