//! Seeded generators of small random divisors and decorations.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toric_acyclic::decoration::{from_line_bundle_sum, Stratum};
use toric_acyclic::linalg::{q_vec, Subspace};
use toric_acyclic::{Fan, TDivisor, WeilDecoration};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn divisor(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> TDivisor {
    TDivisor::new((0..n).map(|_| rng.gen_range(lo..=hi)).collect())
}

/// A sum of one to three line bundles with coefficients in `[-3, 3]`.
pub fn line_bundle_sum(rng: &mut ChaCha8Rng, fan: &Fan) -> WeilDecoration {
    let k = rng.gen_range(1..=3);
    let divs: Vec<TDivisor> = (0..k).map(|_| divisor(rng, fan.num_rays(), -3, 3)).collect();
    from_line_bundle_sum(fan, &divs).expect("line bundle sums are decorations")
}

const DIRECTIONS: [[i64; 2]; 6] = [[1, 0], [0, 1], [1, 1], [1, -1], [1, 2], [2, 1]];

/// Rank two, up to three distinct lines `L_i -> D + P_i` over a generic
/// `eta -> D`, with the `P_i` effective and of pairwise disjoint support.
pub fn line_arrangement(rng: &mut ChaCha8Rng, fan: &Fan) -> WeilDecoration {
    let n = fan.num_rays();
    let k = rng.gen_range(1..=3.min(n));
    let base = divisor(rng, n, -3, 1);
    let mut rays: Vec<usize> = (0..n).collect();
    rays.shuffle(rng);
    // each line gets at least one ray of its own, the rest are spread or left out
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (i, &r) in rays.iter().enumerate() {
        owner[r] = if i < k {
            Some(i)
        } else if rng.gen_bool(0.5) {
            Some(rng.gen_range(0..k))
        } else {
            None
        };
    }
    let mut dirs = DIRECTIONS.to_vec();
    dirs.shuffle(rng);
    let mut strata: Vec<Stratum> = (0..k)
        .map(|i| {
            let coeffs =
                (0..n).map(|r| base.coeffs()[r] + if owner[r] == Some(i) { rng.gen_range(1..=2) } else { 0 }).collect();
            Stratum::new(Subspace::span(2, vec![q_vec(&dirs[i])]), TDivisor::new(coeffs))
        })
        .collect();
    strata.push(Stratum::new(Subspace::full(2), base));
    WeilDecoration::new(2, strata).expect("disjoint effective offsets give a decoration")
}

pub fn decoration(rng: &mut ChaCha8Rng, fan: &Fan) -> WeilDecoration {
    if rng.gen_bool(0.5) {
        line_bundle_sum(rng, fan)
    } else {
        line_arrangement(rng, fan)
    }
}

pub fn surfaces() -> Vec<(&'static str, Fan)> {
    toric_acyclic::fixtures::all_fans().into_iter().filter(|(_, f)| f.dim() == 2).collect()
}

/// Lattice points of the section polyhedron counted by brute force in a box.
pub fn brute_h0(fan: &Fan, d: &TDivisor, radius: i64) -> usize {
    let dim = fan.dim();
    let mut count = 0;
    let mut m = vec![-radius; dim];
    loop {
        let inside =
            fan.rays().iter().zip(d.coeffs()).all(|(r, &a)| r.0.iter().zip(&m).map(|(x, y)| x * y).sum::<i64>() >= -a);
        if inside {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == dim {
                return count;
            }
            if m[i] < radius {
                m[i] += 1;
                break;
            }
            m[i] = -radius;
            i += 1;
        }
    }
}
