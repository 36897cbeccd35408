//! Named fans, divisors and decorations used by tests, the acceptance suite and the CLI.

use crate::decoration::{from_line_bundle_sum, Stratum, WeilDecoration};
use crate::fan::{Fan, FanSpec};
use crate::linalg::{q_vec, Subspace};
use crate::polytope::TDivisor;

fn spec(dim: usize, rays: &[&[i64]], cones: &[&[usize]]) -> FanSpec {
    FanSpec {
        schema: Some(1),
        dim,
        rays: rays.iter().map(|r| r.to_vec()).collect(),
        max_cones: cones.iter().map(|c| c.to_vec()).collect(),
        projective: true,
    }
}

fn build(s: FanSpec) -> Fan {
    Fan::from_spec(&s).expect("fixture fans are valid")
}

pub fn p1_spec() -> FanSpec {
    spec(1, &[&[1], &[-1]], &[&[0], &[1]])
}

pub fn p2_spec() -> FanSpec {
    spec(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[2, 0]])
}

/// Hirzebruch surface `F_1`; rays in the order `(-1,1), (0,1), (1,0), (0,-1)`.
pub fn f1_spec() -> FanSpec {
    spec(2, &[&[-1, 1], &[0, 1], &[1, 0], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]])
}

/// `P^2` blown up in two torus-fixed points.
pub fn dp7_spec() -> FanSpec {
    spec(2, &[&[1, 0], &[0, 1], &[-1, 0], &[-1, -1], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 0]])
}

pub fn p1xp1_spec() -> FanSpec {
    spec(2, &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]])
}

/// `F_2` blown up at the fixed point of the cone `(1,0), (0,-1)`.
pub fn f2_blowup_spec() -> FanSpec {
    spec(2, &[&[-1, 2], &[0, 1], &[1, 0], &[1, -1], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 0]])
}

pub fn p3_spec() -> FanSpec {
    spec(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]], &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
}

pub fn p2xp1_spec() -> FanSpec {
    spec(
        3,
        &[&[1, 0, 0], &[0, 1, 0], &[-1, -1, 0], &[0, 0, 1], &[0, 0, -1]],
        &[&[0, 1, 3], &[1, 2, 3], &[2, 0, 3], &[0, 1, 4], &[1, 2, 4], &[2, 0, 4]],
    )
}

pub fn p1() -> Fan {
    build(p1_spec())
}

pub fn p2() -> Fan {
    build(p2_spec())
}

pub fn f1() -> Fan {
    build(f1_spec())
}

pub fn dp7() -> Fan {
    build(dp7_spec())
}

pub fn p1xp1() -> Fan {
    build(p1xp1_spec())
}

pub fn f2_blowup() -> Fan {
    build(f2_blowup_spec())
}

pub fn p3() -> Fan {
    build(p3_spec())
}

pub fn p2xp1() -> Fan {
    build(p2xp1_spec())
}

/// Every fixture fan by name.
pub fn all_fans() -> Vec<(&'static str, Fan)> {
    fan_names().iter().map(|&n| (n, fan_by_name(n).unwrap())).collect()
}

pub fn fan_names() -> &'static [&'static str] {
    &["p1", "p2", "f1", "dp7", "p1xp1", "f2-blowup", "p3", "p2xp1"]
}

pub fn fan_spec_by_name(name: &str) -> Option<FanSpec> {
    Some(match name {
        "p1" => p1_spec(),
        "p2" => p2_spec(),
        "f1" => f1_spec(),
        "dp7" | "dp7-fig1" => dp7_spec(),
        "p1xp1" => p1xp1_spec(),
        "f2-blowup" => f2_blowup_spec(),
        "p3" => p3_spec(),
        "p2xp1" => p2xp1_spec(),
        _ => return None,
    })
}

pub fn fan_by_name(name: &str) -> Option<Fan> {
    fan_spec_by_name(name).map(build)
}

/// The two nef divisors on dP7 whose polytopes intersect in a polytope with a
/// strictly smaller coefficient at the ray `(-1,-1)` than their meet.
pub fn dp7_pair() -> (TDivisor, TDivisor) {
    (TDivisor::new(vec![2, 0, 4, 5, 2]), TDivisor::new(vec![0, 2, 2, 5, 4]))
}

/// Tangent bundle of `P^2`: `E = N (x) Q`, the line through each ray carries
/// that ray's prime divisor and the generic stratum carries `0`.
pub fn p2_tangent() -> WeilDecoration {
    let fan = p2();
    let mut strata: Vec<Stratum> =
        (0..3).map(|i| Stratum::new(Subspace::span(2, vec![q_vec(fan.ray(i))]), TDivisor::prime(3, i))).collect();
    strata.push(Stratum::new(Subspace::full(2), TDivisor::zero(3)));
    WeilDecoration::new(2, strata).expect("tangent decoration is valid")
}

/// The rank two decoration on `F_1` built from the divisors `(0,0,2,2)` and `(3,3,1,1)`.
pub fn f1_rank2() -> WeilDecoration {
    from_line_bundle_sum(&f1(), &[TDivisor::new(vec![0, 0, 2, 2]), TDivisor::new(vec![3, 3, 1, 1])])
        .expect("valid line bundle sum")
}

/// `O + O(D_1 - D_2)` on `P^1`: acyclic strata but a non-nef generic divisor.
pub fn p1_split() -> WeilDecoration {
    from_line_bundle_sum(&p1(), &[TDivisor::new(vec![0, 0]), TDivisor::new(vec![1, -1])])
        .expect("valid line bundle sum")
}

/// A full flag `line < plane < E` of rank three on `P^2`.
pub fn p2_flag() -> WeilDecoration {
    let strata = vec![
        Stratum::new(Subspace::coordinate(3, &[0]), TDivisor::new(vec![2, 1, 1])),
        Stratum::new(Subspace::coordinate(3, &[0, 1]), TDivisor::new(vec![1, 1, 0])),
        Stratum::new(Subspace::full(3), TDivisor::new(vec![0, 1, 0])),
    ];
    WeilDecoration::new(3, strata).expect("flag decoration is valid")
}

pub fn decoration_names() -> &'static [&'static str] {
    &["p2-tangent", "f1-rank2", "p1-split", "p2-flag"]
}

/// Named decoration together with the name of its fan.
pub fn decoration_by_name(name: &str) -> Option<(&'static str, WeilDecoration)> {
    Some(match name {
        "p2-tangent" => ("p2", p2_tangent()),
        "f1-rank2" => ("f1", f1_rank2()),
        "p1-split" => ("p1", p1_split()),
        "p2-flag" => ("p2", p2_flag()),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoration::klyachko_filtrations;

    #[test]
    fn every_fixture_loads() {
        assert_eq!(all_fans().len(), fan_names().len());
        for name in decoration_names() {
            let (fan, dec) = decoration_by_name(name).unwrap();
            dec.check_fan(&fan_by_name(fan).unwrap()).unwrap();
        }
    }

    #[test]
    fn tangent_filtrations() {
        let dec = p2_tangent();
        let fan = p2();
        for (i, f) in klyachko_filtrations(&dec).iter().enumerate() {
            assert!(f.at(0).is_full());
            assert_eq!(f.at(1), Subspace::span(2, vec![q_vec(fan.ray(i))]));
            assert!(f.at(2).is_zero());
        }
    }
}
