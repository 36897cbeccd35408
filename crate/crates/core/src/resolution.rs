//! The resolution of a decorated sheaf by sums of `S-bar_0 (x) O(D(S_l))` over
//! strict strata chains, checked degree by degree on every chart.

use serde::{Deserialize, Serialize};

use crate::cohomology::{chart_sections, line_bundle_totals, scan_region, ToricSheaf};
use crate::decoration::WeilDecoration;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::{q, rank, Subspace, Q};
use crate::polytope::{BoxIter, TDivisor};

/// Strata indices `S_0 < S_1 < ... < S_l`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StrataChain(pub Vec<usize>);

impl StrataChain {
    /// Number of steps `l`.
    pub fn length(&self) -> usize {
        self.0.len() - 1
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        *self.0.last().unwrap()
    }

    fn drop(&self, i: usize) -> StrataChain {
        let mut v = self.0.clone();
        v.remove(i);
        StrataChain(v)
    }
}

fn extend(dec: &WeilDecoration, chain: &mut Vec<usize>, steps: usize, end: Option<usize>, out: &mut Vec<StrataChain>) {
    let top = *chain.last().unwrap();
    if steps == 0 {
        if end.is_none_or(|e| e == top) {
            out.push(StrataChain(chain.clone()));
        }
        return;
    }
    for next in 0..dec.len() {
        if dec.lt(top, next) && end.is_none_or(|e| dec.leq(next, e)) {
            chain.push(next);
            extend(dec, chain, steps - 1, end, out);
            chain.pop();
        }
    }
}

/// Strict chains of length `l` from `s` to `t`.
pub fn chains(dec: &WeilDecoration, l: usize, s: usize, t: usize) -> Vec<StrataChain> {
    let mut out = Vec::new();
    if dec.leq(s, t) {
        extend(dec, &mut vec![s], l, Some(t), &mut out);
    }
    out
}

/// All strict chains of length `l`, sorted.
pub fn all_chains(dec: &WeilDecoration, l: usize) -> Vec<StrataChain> {
    let mut out = Vec::new();
    for s in 0..dec.len() {
        extend(dec, &mut vec![s], l, None, &mut out);
    }
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub chain: StrataChain,
    pub closure_dim: usize,
    pub divisor: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionComplex {
    pub rank: usize,
    /// `terms[l]` is the list of summands in homological position `l`.
    pub terms: Vec<Vec<Summand>>,
    /// `ranks[l]` is the rank of position `l`.
    pub ranks: Vec<usize>,
}

impl ResolutionComplex {
    /// `sum (-1)^l rank_l`, which equals the rank of `E` for an exact complex.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().enumerate().map(|(l, &r)| if l % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
    }
}

pub fn build_resolution(fan: &Fan, dec: &WeilDecoration) -> Result<ResolutionComplex> {
    dec.check_fan(fan)?;
    let mut terms = Vec::new();
    for l in 0.. {
        let cs = all_chains(dec, l);
        if cs.is_empty() {
            break;
        }
        terms.push(
            cs.into_iter()
                .map(|c| Summand {
                    closure_dim: dec.stratum(c.first()).closure.dim(),
                    divisor: dec.stratum(c.last()).divisor.coeffs().to_vec(),
                    chain: c,
                })
                .collect::<Vec<_>>(),
        );
    }
    let ranks = terms.iter().map(|t| t.iter().map(|s| s.closure_dim).sum()).collect();
    Ok(ResolutionComplex { rank: dec.ambient_dim(), terms, ranks })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessReport {
    pub exact: bool,
    pub degrees_checked: usize,
    pub charts_checked: usize,
    pub max_position: usize,
}

/// The graded piece of the complex on one chart in one degree.
struct GradedPiece<'a> {
    dec: &'a WeilDecoration,
    cx: &'a ResolutionComplex,
    active: Vec<Vec<bool>>,
}

impl GradedPiece<'_> {
    fn block_index(&self, l: usize, chain: &StrataChain) -> usize {
        self.cx.terms[l].binary_search_by(|s| s.chain.cmp(chain)).expect("dropped chain is a chain")
    }

    /// Basis of position `l` in block coordinates.
    fn basis(&self, l: usize) -> Vec<Vec<Q>> {
        let r = self.cx.rank;
        let width = self.cx.terms[l].len() * r;
        let mut out = Vec::new();
        for (b, s) in self.cx.terms[l].iter().enumerate() {
            if !self.active[l][b] {
                continue;
            }
            for v in self.dec.stratum(s.chain.first()).closure.basis() {
                let mut row = vec![q(0); width];
                row[b * r..(b + 1) * r].clone_from_slice(v);
                out.push(row);
            }
        }
        out
    }

    /// Applies the differential from position `l` to `l - 1`, or the
    /// augmentation into `E` for `l = 0`. Errors name the offending block.
    fn apply(&self, l: usize, x: &[Q]) -> std::result::Result<Vec<Q>, String> {
        let r = self.cx.rank;
        if l == 0 {
            let mut out = vec![q(0); r];
            for b in 0..self.cx.terms[0].len() {
                for k in 0..r {
                    out[k] += &x[b * r + k];
                }
            }
            return Ok(out);
        }
        let mut out = vec![q(0); self.cx.terms[l - 1].len() * r];
        for (b, s) in self.cx.terms[l].iter().enumerate() {
            let block = &x[b * r..(b + 1) * r];
            if block.iter().all(|v| *v == q(0)) {
                continue;
            }
            for i in 0..=l {
                let target = s.chain.drop(i);
                let tb = self.block_index(l - 1, &target);
                if !self.active[l - 1][tb] {
                    return Err(format!("summand {:?} maps to the inactive summand {:?}", s.chain.0, target.0));
                }
                if !self.dec.stratum(target.first()).closure.contains_vector(block) {
                    return Err(format!("image of {:?} leaves the closure of stratum {}", s.chain.0, target.first()));
                }
                let sign = if i % 2 == 0 { q(1) } else { q(-1) };
                for k in 0..r {
                    out[tb * r + k] += &sign * &block[k];
                }
            }
        }
        Ok(out)
    }
}

/// Checks well-definedness, `d^2 = 0`, exactness and the augmentation at every
/// maximal cone and every degree of the scan region plus a one-shell margin.
pub fn verify_exactness(fan: &Fan, dec: &WeilDecoration, sheaf: &ToricSheaf) -> Result<ExactnessReport> {
    let cx = build_resolution(fan, dec)?;
    sheaf.check_fan(fan)?;
    if sheaf.rank() != cx.rank {
        return Err(Error::InvalidInput(format!(
            "sheaf rank {} differs from decoration rank {}",
            sheaf.rank(),
            cx.rank
        )));
    }
    let region = scan_region(fan, sheaf)?;
    let d = fan.dim();
    let mut lo = vec![i64::MAX; d];
    let mut hi = vec![i64::MIN; d];
    for m in &region {
        for k in 0..d {
            lo[k] = lo[k].min(m[k] - 1);
            hi[k] = hi[k].max(m[k] + 1);
        }
    }
    let mut degrees = 0;
    for m in BoxIter::new(&lo, &hi) {
        degrees += 1;
        let p = fan.pairings(&m);
        for (ci, cone) in fan.max_cones().enumerate() {
            let fail = |position: usize, reason: String| Error::ExactnessFailure {
                cone: ci,
                degree: m.clone(),
                position,
                reason,
            };
            let active: Vec<Vec<bool>> = cx
                .terms
                .iter()
                .map(|t| t.iter().map(|s| cone.rays().iter().all(|&r| p[r] >= -s.divisor[r])).collect())
                .collect();
            let piece = GradedPiece { dec, cx: &cx, active };
            let bases: Vec<Vec<Vec<Q>>> = (0..cx.terms.len()).map(|l| piece.basis(l)).collect();
            // images[l] = image of the basis of position l under d_l (l = 0: augmentation)
            let mut images: Vec<Vec<Vec<Q>>> = Vec::with_capacity(bases.len());
            for (l, basis) in bases.iter().enumerate() {
                let img = basis.iter().map(|v| piece.apply(l, v)).collect::<std::result::Result<Vec<_>, _>>();
                images.push(img.map_err(|e| fail(l, e))?);
            }
            for (l, image) in images.iter().enumerate().skip(1) {
                for v in image {
                    let dd = piece.apply(l - 1, v).map_err(|e| fail(l - 1, e))?;
                    if dd.iter().any(|x| *x != q(0)) {
                        return Err(fail(l, "d^2 != 0".into()));
                    }
                }
            }
            let ranks: Vec<usize> = images.iter().map(|i| rank(i)).collect();
            for l in 0..bases.len() {
                let kernel = bases[l].len() - ranks[l];
                let incoming = ranks.get(l + 1).copied().unwrap_or(0);
                if kernel != incoming {
                    return Err(fail(l, format!("kernel has dimension {kernel}, image of the next map {incoming}")));
                }
            }
            let image = Subspace::span(cx.rank, images[0].clone());
            let sections = chart_sections(fan, sheaf, cone, &m);
            if image != sections {
                return Err(fail(
                    0,
                    format!("augmentation image has dimension {}, chart sections {}", image.dim(), sections.dim()),
                ));
            }
            let euler: i64 = bases
                .iter()
                .enumerate()
                .map(|(l, b)| if l % 2 == 0 { b.len() as i64 } else { -(b.len() as i64) })
                .sum();
            if euler != sections.dim() as i64 {
                return Err(fail(0, "graded Euler characteristic mismatch".into()));
            }
        }
    }
    Ok(ExactnessReport {
        exact: true,
        degrees_checked: degrees,
        charts_checked: fan.num_max_cones(),
        max_position: cx.terms.len() - 1,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct E1Report {
    /// `entries[l][q] = dim E_1^{-l, q}`.
    pub entries: Vec<Vec<usize>>,
    /// `forced[k]`: every `E_1` entry contributing to `H^k` vanishes.
    pub forced: Vec<bool>,
}

/// Reads vanishing of `H^k(E)` off the first page of the hypercohomology
/// spectral sequence of the resolution.
pub fn e1_vanishing_bound(fan: &Fan, dec: &WeilDecoration) -> Result<E1Report> {
    let cx = build_resolution(fan, dec)?;
    let d = fan.dim();
    let mut entries = Vec::with_capacity(cx.terms.len());
    for term in &cx.terms {
        let mut row = vec![0usize; d + 1];
        for s in term {
            let h = line_bundle_totals(fan, &TDivisor::new(s.divisor.clone()))?;
            for (x, y) in row.iter_mut().zip(&h) {
                *x += s.closure_dim * y;
            }
        }
        entries.push(row);
    }
    let forced =
        (0..=d).map(|k| entries.iter().enumerate().all(|(l, row)| row.get(k + l).is_none_or(|&x| x == 0))).collect();
    Ok(E1Report { entries, forced })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::graded_cohomology;
    use crate::decoration::{twist, Stratum};
    use crate::fixtures;
    use crate::vanishing::vanishing_bound;

    #[test]
    fn chain_boundary_cases() {
        let dec = fixtures::f1_rank2();
        let eta = dec.generic();
        assert_eq!(chains(&dec, 0, 0, 0), vec![StrataChain(vec![0])]);
        assert!(chains(&dec, 0, 0, eta).is_empty());
        assert_eq!(all_chains(&dec, 1), vec![StrataChain(vec![0, eta]), StrataChain(vec![1, eta])]);
        assert!(all_chains(&dec, 2).is_empty());
        let flag = fixtures::p2_flag();
        assert_eq!(chains(&flag, 2, 0, 2), vec![StrataChain(vec![0, 1, 2])]);
        assert!(chains(&flag, 1, 2, 0).is_empty());
    }

    #[test]
    fn f1_resolution_ranks() {
        let f1 = fixtures::f1();
        let dec = fixtures::f1_rank2();
        let cx = build_resolution(&f1, &dec).unwrap();
        assert_eq!(cx.ranks, vec![4, 2]);
        assert_eq!(cx.euler_characteristic(), 2);
        let report = verify_exactness(&f1, &dec, &ToricSheaf::from_decoration(&dec)).unwrap();
        assert!(report.exact);
        let p1 = fixtures::p1();
        assert_eq!(build_resolution(&p1, &fixtures::p1_split()).unwrap().ranks, vec![4, 2]);
    }

    #[test]
    fn flag_and_tangent_resolutions_are_exact() {
        for (fan, dec) in [("p2", fixtures::p2_flag()), ("p2", fixtures::p2_tangent()), ("p1", fixtures::p1_split())] {
            let fan = fixtures::fan_by_name(fan).unwrap();
            let cx = build_resolution(&fan, &dec).unwrap();
            assert_eq!(cx.euler_characteristic(), dec.ambient_dim() as i64);
            verify_exactness(&fan, &dec, &ToricSheaf::from_decoration(&dec)).unwrap();
        }
    }

    #[test]
    fn rank_one_resolution_is_the_identity() {
        let p2 = fixtures::p2();
        let dec = WeilDecoration::new(1, vec![Stratum::coordinate(1, &[0], vec![1, -2, 0])]).unwrap();
        let cx = build_resolution(&p2, &dec).unwrap();
        assert_eq!(cx.ranks, vec![1]);
        verify_exactness(&p2, &dec, &ToricSheaf::from_decoration(&dec)).unwrap();
        let e1 = e1_vanishing_bound(&p2, &dec).unwrap();
        let h = line_bundle_totals(&p2, &TDivisor::new(vec![1, -2, 0])).unwrap();
        assert_eq!(e1.entries, vec![h.clone()]);
        assert_eq!(e1.forced, h.iter().map(|&x| x == 0).collect::<Vec<_>>());
    }

    #[test]
    fn corrupted_generic_divisor_is_detected() {
        let f1 = fixtures::f1();
        let good = fixtures::f1_rank2();
        let sheaf = ToricSheaf::from_decoration(&good);
        let mut strata = good.strata().to_vec();
        let eta = good.generic();
        strata[eta].divisor = TDivisor::new(vec![0, 0, 3, 1]);
        let bad = WeilDecoration::unchecked(2, strata);
        let err = verify_exactness(&f1, &bad, &sheaf).unwrap_err();
        assert_eq!(err.kind(), "ExactnessFailure");
    }

    #[test]
    fn e1_bound_is_sound_for_the_tangent_twist() {
        let p2 = fixtures::p2();
        let tw = twist(&fixtures::p2_tangent(), &TDivisor::new(vec![-4, 0, 0])).unwrap();
        let e1 = e1_vanishing_bound(&p2, &tw).unwrap();
        assert!(!e1.forced.iter().all(|&f| f));
        let oracle = graded_cohomology(&p2, &ToricSheaf::from_decoration(&tw)).unwrap();
        for (k, &f) in e1.forced.iter().enumerate() {
            if f {
                assert_eq!(oracle.totals[k], 0);
            }
        }
        let k0 = vanishing_bound(&p2, &tw).unwrap().k0;
        for k in k0..e1.forced.len() {
            assert!(e1.forced[k]);
        }
        let nef = e1_vanishing_bound(&fixtures::f1(), &fixtures::f1_rank2()).unwrap();
        assert_eq!(nef.forced, vec![false, true, true]);
    }
}
