//! Vanishing criteria for decorated sheaves: the primitive-collection
//! inequality over all or only extremal collections, decoration-level
//! predicates, the bound `k0`, and the wall-curve interpretation.

use serde::{Deserialize, Serialize};

use crate::cohomology::{line_bundle_totals, ToricSheaf};
use crate::decoration::WeilDecoration;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::to_i64;
use crate::mori::{self, PrimitiveCollection};
use crate::polytope::{is_nef, section_polyhedron, support_value, TDivisor};

/// `mu_rho` and `lambda_rho` for every ray.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub mu: Vec<i64>,
    pub lambda: Vec<i64>,
}

impl Bounds {
    pub fn of_decoration(dec: &WeilDecoration) -> Self {
        let s = dec.summary();
        Bounds { mu: s.mu, lambda: s.lambda }
    }

    pub fn of_sheaf(sheaf: &ToricSheaf) -> Self {
        Bounds { mu: sheaf.mu(), lambda: sheaf.lambda() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    All,
    Extremal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollectionVerdict {
    pub rays: Vec<usize>,
    /// `(rho, f_rho)` over the focus.
    pub focus: Vec<(usize, i64)>,
    pub relation: Vec<i64>,
    pub lhs: i64,
    pub rhs: i64,
    pub satisfied: bool,
    pub extremal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub scope: Scope,
    pub twist: Vec<i64>,
    pub collections: Vec<CollectionVerdict>,
    pub satisfied: bool,
}

fn verdict(c: &PrimitiveCollection, bounds: &Bounds, a: &[i64]) -> CollectionVerdict {
    let lhs = c.rays.iter().map(|&r| a[r] + bounds.mu[r]).sum();
    let rhs = c.focus().map(|(r, f)| f * (a[r] + bounds.lambda[r])).sum();
    CollectionVerdict {
        rays: c.rays.clone(),
        focus: c.focus().collect(),
        relation: c.relation.clone(),
        lhs,
        rhs,
        satisfied: lhs >= rhs,
        extremal: c.extremal,
    }
}

fn check(fan: &Fan, bounds: &Bounds, twist: &TDivisor, scope: Scope) -> Result<CriterionReport> {
    twist.check_fan(fan)?;
    for v in [&bounds.mu, &bounds.lambda] {
        if v.len() != fan.num_rays() {
            return Err(Error::FanMismatch { expected: fan.num_rays(), found: v.len() });
        }
    }
    let collections: Vec<CollectionVerdict> = mori::primitive_collections(fan)?
        .iter()
        .filter(|c| scope == Scope::All || c.extremal)
        .map(|c| verdict(c, bounds, twist.coeffs()))
        .collect();
    let satisfied = collections.iter().all(|c| c.satisfied);
    Ok(CriterionReport { scope, twist: twist.coeffs().to_vec(), collections, satisfied })
}

/// The inequality `sum_P (a + mu) >= sum f (a + lambda)` over every primitive
/// collection; success certifies acyclicity of the twist by `D`.
pub fn check_perlman_smith(fan: &Fan, bounds: &Bounds, twist: &TDivisor) -> Result<CriterionReport> {
    check(fan, bounds, twist, Scope::All)
}

/// The same inequality over extremal collections only.
pub fn check_extremal(fan: &Fan, bounds: &Bounds, twist: &TDivisor) -> Result<CriterionReport> {
    check(fan, bounds, twist, Scope::Extremal)
}

/// Outcome of a per-stratum predicate, with the first failing stratum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataVerdict {
    pub holds: bool,
    pub witness: Option<usize>,
    pub witness_divisor: Option<Vec<i64>>,
}

impl StrataVerdict {
    fn from_first_failure(dec: &WeilDecoration, failure: Option<usize>) -> Self {
        StrataVerdict {
            holds: failure.is_none(),
            witness: failure,
            witness_divisor: failure.map(|i| dec.stratum(i).divisor.coeffs().to_vec()),
        }
    }
}

fn first_failure<F>(dec: &WeilDecoration, mut ok: F) -> Result<Option<usize>>
where
    F: FnMut(&TDivisor) -> Result<bool>,
{
    for (i, s) in dec.strata().iter().enumerate() {
        if !ok(&s.divisor)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Every stratum divisor is nef.
pub fn is_nefly_decorated(fan: &Fan, dec: &WeilDecoration) -> Result<StrataVerdict> {
    dec.check_fan(fan)?;
    let f = first_failure(dec, |d| is_nef(fan, d))?;
    Ok(StrataVerdict::from_first_failure(dec, f))
}

/// Every stratum line bundle is acyclic.
pub fn is_acyclicly_decorated(fan: &Fan, dec: &WeilDecoration) -> Result<StrataVerdict> {
    dec.check_fan(fan)?;
    let f = first_failure(dec, |d| Ok(line_bundle_totals(fan, d)?.iter().skip(1).all(|&x| x == 0)))?;
    Ok(StrataVerdict::from_first_failure(dec, f))
}

/// Every stratum line bundle has no cohomology at all.
pub fn is_immaculately_decorated(fan: &Fan, dec: &WeilDecoration) -> Result<StrataVerdict> {
    dec.check_fan(fan)?;
    let f = first_failure(dec, |d| Ok(line_bundle_totals(fan, d)?.iter().all(|&x| x == 0)))?;
    Ok(StrataVerdict::from_first_failure(dec, f))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    /// `H^k(E) = 0` is certified for every `k >= k0`.
    pub k0: usize,
    /// Total cohomology `(h^0, ..., h^d)` of each stratum line bundle.
    pub strata_totals: Vec<Vec<usize>>,
}

/// The least `k0` such that all stratum line bundles vanish in degrees `>= k0`.
pub fn vanishing_bound(fan: &Fan, dec: &WeilDecoration) -> Result<BoundReport> {
    dec.check_fan(fan)?;
    let strata_totals = dec.strata().iter().map(|s| line_bundle_totals(fan, &s.divisor)).collect::<Result<Vec<_>>>()?;
    let k0 = strata_totals.iter().filter_map(|h| h.iter().rposition(|&x| x > 0)).map(|k| k + 1).max().unwrap_or(0);
    Ok(BoundReport { k0, strata_totals })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeoEntry {
    pub rays: Vec<usize>,
    pub wall: Vec<usize>,
    /// `<D(eta), R(P)>`; this is the normative left hand side.
    pub lhs_pairing: i64,
    /// Lattice length of the wall edge of the polytope of `D(eta)`.
    pub edge_len: i64,
    pub edge_lattice_points: i64,
    /// `min <P(D(eta)), e_P> - min <P(D-hat), e_P>`, with `e_P` the sum of the rays of `P`.
    pub rhs: i64,
    /// The same difference read off vertex lists, when `D-hat` is nef.
    pub rhs_from_polytopes: Option<i64>,
    /// `(rho, lambda_rho - mu_rho)` for `rho` in `P`: the distance between the `rho`-facets.
    pub facet_distances: Vec<(usize, i64)>,
    pub facet_distance_sum: i64,
    /// Whether the facet distances add up to `rhs`.
    pub decomposition_applies: bool,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeoReport {
    pub d_eta: Vec<i64>,
    pub d_hat: Vec<i64>,
    pub d_hat_nef: bool,
    pub entries: Vec<GeoEntry>,
    pub satisfied: bool,
}

/// Reads the extremal inequalities as statements about wall edges of the
/// polytope of `D(eta)`. Requires a nefly decorated input.
pub fn geometric_report(fan: &Fan, dec: &WeilDecoration) -> Result<GeoReport> {
    let nef = is_nefly_decorated(fan, dec)?;
    if let Some(i) = nef.witness {
        return Err(Error::NotNeflyDecorated { stratum: i });
    }
    let s = dec.summary();
    let d_hat_nef = is_nef(fan, &s.d_hat)?;
    let eta_poly = section_polyhedron(fan, &s.d_eta)?.expect("nef divisors have nonempty polytopes");
    let hat_poly = if d_hat_nef { section_polyhedron(fan, &s.d_hat)? } else { None };
    let mut entries = Vec::new();
    for c in mori::primitive_collections(fan)?.iter().filter(|c| c.extremal) {
        let w = mori::matching_wall(fan, &c.relation).ok_or(Error::UnmatchedExtremalRay { rays: c.rays.clone() })?;
        let lhs_pairing = s.d_eta.pair(&c.relation)?;
        let edge_len = mori::edge_length(fan, &s.d_eta, w)?;
        let e_p = fan.ray_map(&c.incidence(fan.num_rays()));
        let rhs = support_value(fan, &s.d_eta, &e_p) - support_value(fan, &s.d_hat, &e_p);
        let rhs_from_polytopes = hat_poly
            .as_ref()
            .map(|hat| to_i64(&(eta_poly.min_pairing(&e_p) - hat.min_pairing(&e_p))).expect("lattice polytopes"));
        if let Some(v) = rhs_from_polytopes {
            assert_eq!(v, rhs, "support function disagrees with polytope minima");
        }
        let facet_distances: Vec<(usize, i64)> = c.rays.iter().map(|&r| (r, s.lambda[r] - s.mu[r])).collect();
        let facet_distance_sum = facet_distances.iter().map(|(_, x)| x).sum();
        entries.push(GeoEntry {
            rays: c.rays.clone(),
            wall: fan.walls()[w].rays.clone(),
            lhs_pairing,
            edge_len,
            edge_lattice_points: edge_len + 1,
            rhs,
            rhs_from_polytopes,
            facet_distances,
            facet_distance_sum,
            decomposition_applies: facet_distance_sum == rhs,
            satisfied: lhs_pairing >= rhs,
        });
    }
    let satisfied = entries.iter().all(|e| e.satisfied);
    Ok(GeoReport { d_eta: s.d_eta.coeffs().to_vec(), d_hat: s.d_hat.coeffs().to_vec(), d_hat_nef, entries, satisfied })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::is_acyclic;
    use crate::decoration::{from_line_bundle_sum, twist};
    use crate::fixtures;

    #[test]
    fn tangent_bundle_single_collection() {
        let p2 = fixtures::p2();
        let r = check_perlman_smith(&p2, &Bounds::of_decoration(&fixtures::p2_tangent()), &TDivisor::zero(3)).unwrap();
        assert_eq!(r.collections.len(), 1);
        assert_eq!((r.collections[0].lhs, r.collections[0].rhs), (0, 0));
        assert!(r.satisfied);
    }

    #[test]
    fn f1_example_violates_the_focus_inequality() {
        let f1 = fixtures::f1();
        let b = Bounds::of_decoration(&fixtures::f1_rank2());
        let r = check_perlman_smith(&f1, &b, &TDivisor::zero(4)).unwrap();
        let p2 = r.collections.iter().find(|c| c.rays == vec![0, 2]).unwrap();
        assert_eq!((p2.lhs, p2.rhs, p2.satisfied), (1, 3, false));
        assert!(!r.satisfied);
        let e = check_extremal(&f1, &b, &TDivisor::zero(4)).unwrap();
        assert_eq!(e.collections.len(), 2);
        assert!(!e.satisfied);
        // equal twists: lhs grows by 2c, rhs by c
        let r = |c: i64| check_perlman_smith(&f1, &b, &TDivisor::new(vec![c; 4])).unwrap();
        assert!(!r(1).collections[0].satisfied);
        assert!(r(2).collections[0].satisfied);
    }

    #[test]
    fn decoration_predicates() {
        let f1 = fixtures::f1();
        assert!(is_nefly_decorated(&f1, &fixtures::f1_rank2()).unwrap().holds);
        let p1 = fixtures::p1();
        let rem = fixtures::p1_split();
        let v = is_nefly_decorated(&p1, &rem).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness_divisor, Some(vec![0, -1]));
        assert!(is_acyclicly_decorated(&p1, &rem).unwrap().holds);
        assert_eq!(vanishing_bound(&p1, &rem).unwrap().k0, 1);
        let p2 = fixtures::p2();
        let tw = twist(&fixtures::p2_tangent(), &TDivisor::new(vec![-4, 0, 0])).unwrap();
        assert!(!is_acyclicly_decorated(&p2, &tw).unwrap().holds);
        assert!(is_immaculately_decorated(&p2, &tw).unwrap().witness.is_some());
        assert_eq!(vanishing_bound(&p2, &tw).unwrap().k0, 3);
        assert!(is_acyclic(&p2, &ToricSheaf::from_decoration(&tw)).unwrap());
        assert_eq!(vanishing_bound(&f1, &fixtures::f1_rank2()).unwrap().k0, 1);
    }

    #[test]
    fn f1_geometric_report() {
        let f1 = fixtures::f1();
        let g = geometric_report(&f1, &fixtures::f1_rank2()).unwrap();
        let e = g.entries.iter().find(|e| e.rays == vec![0, 2]).unwrap();
        assert_eq!(e.rhs, 3);
        assert_eq!(e.lhs_pairing, 1);
        assert_eq!((e.edge_len, e.edge_lattice_points), (1, 2));
        assert_eq!(e.facet_distance_sum, 4);
        assert!(!e.decomposition_applies);
        assert!(!e.satisfied && !g.satisfied);
        assert_eq!(e.wall, vec![1]);
    }

    #[test]
    fn projective_plane_rhs_vanishes() {
        let p2 = fixtures::p2();
        let dec = from_line_bundle_sum(&p2, &[TDivisor::new(vec![1, 0, 0]), TDivisor::new(vec![0, 2, 1])]).unwrap();
        let g = geometric_report(&p2, &dec).unwrap();
        assert_eq!(g.entries.len(), 1);
        assert_eq!(g.entries[0].rhs, 0);
        assert!(g.satisfied);
    }

    #[test]
    fn geometric_report_refuses_non_nef() {
        let err = geometric_report(&fixtures::p1(), &fixtures::p1_split()).unwrap_err();
        assert_eq!(err.kind(), "NotNeflyDecorated");
    }

    #[test]
    fn twist_covariance_on_fixture() {
        let f1 = fixtures::f1();
        let dec = fixtures::f1_rank2();
        let d = TDivisor::new(vec![2, -1, 0, 3]);
        let a = check_perlman_smith(&f1, &Bounds::of_decoration(&dec), &d).unwrap();
        let b =
            check_perlman_smith(&f1, &Bounds::of_decoration(&twist(&dec, &d).unwrap()), &TDivisor::zero(4)).unwrap();
        let va: Vec<(i64, i64)> = a.collections.iter().map(|c| (c.lhs, c.rhs)).collect();
        let vb: Vec<(i64, i64)> = b.collections.iter().map(|c| (c.lhs, c.rhs)).collect();
        assert_eq!(va, vb);
    }
}
