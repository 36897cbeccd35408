//! Weil decorations: finite linear stratifications of `E` labelled by divisors.
//!
//! A stratum is stored by its closure, the subspace `{e : D(e) >= D}`; the
//! stratum itself is the closure minus all strictly smaller closures. Strata
//! are ordered by inclusion of closures, which reverses the divisor order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{DiagnosticError, Fan};
use crate::linalg::{Subspace, Q};
use crate::polytope::TDivisor;
use crate::schema::{check_schema, from_json_rows, to_json_rows, Rational, SCHEMA_VERSION};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub closure: Subspace,
    pub divisor: TDivisor,
}

impl Stratum {
    pub fn new(closure: Subspace, divisor: TDivisor) -> Self {
        Stratum { closure, divisor }
    }

    /// Stratum whose closure is spanned by standard basis vectors.
    pub fn coordinate(ambient: usize, indices: &[usize], divisor: Vec<i64>) -> Self {
        Stratum { closure: Subspace::coordinate(ambient, indices), divisor: TDivisor::new(divisor) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumSpec {
    pub basis: Vec<Vec<Rational>>,
    pub divisor: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecorationSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    pub ambient_dim: usize,
    pub strata: Vec<StratumSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilDecoration {
    ambient_dim: usize,
    strata: Vec<Stratum>,
    generic: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecorationSummary {
    pub mu: Vec<i64>,
    pub lambda: Vec<i64>,
    pub d_eta: TDivisor,
    pub d_hat: TDivisor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecorationDiagnostics {
    pub valid: bool,
    pub strata: usize,
    pub generic: Option<usize>,
    pub errors: Vec<DiagnosticError>,
}

/// Merges strata carrying equal divisors into the span of their closures.
fn merge_equal_divisors(strata: Vec<Stratum>) -> Vec<Stratum> {
    let mut out: Vec<Stratum> = Vec::with_capacity(strata.len());
    for s in strata {
        match out.iter_mut().find(|t| t.divisor == s.divisor) {
            Some(t) => t.closure = t.closure.sum(&s.closure),
            None => out.push(s),
        }
    }
    out
}

fn leq_closure(strata: &[Stratum], i: usize, j: usize) -> bool {
    strata[i].closure.is_subspace_of(&strata[j].closure)
}

/// Indices of the minimal strata whose closure contains `space`.
fn minimal_containing(strata: &[Stratum], space: &Subspace) -> Vec<usize> {
    let over: Vec<usize> = (0..strata.len()).filter(|&k| space.is_subspace_of(&strata[k].closure)).collect();
    over.iter().copied().filter(|&k| !over.iter().any(|&l| l != k && leq_closure(strata, l, k))).collect()
}

/// Runs every axiom check; returns the index of the generic stratum on success.
fn check_axioms(ambient: usize, strata: &[Stratum]) -> Result<usize> {
    if strata.is_empty() {
        return Err(Error::NoGenericStratum("decoration has no strata".into()));
    }
    let n = strata[0].divisor.len();
    for (i, s) in strata.iter().enumerate() {
        if s.closure.ambient() != ambient {
            return Err(Error::InvalidInput(format!("stratum {i} lives in dimension {}", s.closure.ambient())));
        }
        if s.closure.is_zero() {
            return Err(Error::InvalidInput(format!("stratum {i} has zero closure")));
        }
        if s.divisor.len() != n {
            return Err(Error::FanMismatch { expected: n, found: s.divisor.len() });
        }
    }
    for i in 0..strata.len() {
        for j in i + 1..strata.len() {
            if strata[i].divisor == strata[j].divisor {
                return Err(Error::DuplicateDivisor { first: i, second: j });
            }
            if strata[i].closure == strata[j].closure {
                return Err(Error::AxiomViolation { first: i, second: j, reason: "equal closures".into() });
            }
        }
    }
    let full: Vec<usize> = (0..strata.len()).filter(|&i| strata[i].closure.is_full()).collect();
    let generic = match full.as_slice() {
        [g] => *g,
        [] => return Err(Error::NoGenericStratum("no stratum closure equals E".into())),
        _ => unreachable!("closures are pairwise distinct"),
    };
    for i in 0..strata.len() {
        for j in i + 1..strata.len() {
            let (a, b) = (&strata[i], &strata[j]);
            let meet = a.closure.intersect(&b.closure);
            if !meet.is_zero() && !strata.iter().any(|s| s.closure == meet) {
                return Err(Error::AxiomViolation {
                    first: i,
                    second: j,
                    reason: "intersection of closures is not a stratum closure".into(),
                });
            }
            let joins = minimal_containing(strata, &a.closure.sum(&b.closure));
            let [k] = joins.as_slice() else {
                return Err(Error::AxiomViolation { first: i, second: j, reason: "no unique join".into() });
            };
            let expect = a.divisor.meet(&b.divisor)?;
            if strata[*k].divisor != expect {
                return Err(Error::AxiomViolation {
                    first: i,
                    second: j,
                    reason: format!(
                        "join carries {:?}, minimum of the pair is {:?}",
                        strata[*k].divisor.coeffs(),
                        expect.coeffs()
                    ),
                });
            }
        }
    }
    for i in 0..strata.len() {
        if !strata[generic].divisor.leq(&strata[i].divisor)? {
            return Err(Error::AxiomViolation {
                first: generic,
                second: i,
                reason: "generic divisor is not the minimum".into(),
            });
        }
    }
    Ok(generic)
}

impl WeilDecoration {
    /// Canonicalizes (strata with equal divisors are merged) and validates.
    pub fn new(ambient_dim: usize, strata: Vec<Stratum>) -> Result<Self> {
        Self::strict(ambient_dim, merge_equal_divisors(strata))
    }

    /// Validates without merging; equal divisors raise `DuplicateDivisor`.
    pub fn strict(ambient_dim: usize, strata: Vec<Stratum>) -> Result<Self> {
        let generic = check_axioms(ambient_dim, &strata)?;
        Ok(WeilDecoration { ambient_dim, strata, generic })
    }

    /// Skips validation. Only for negative controls: downstream results are
    /// meaningless unless the axioms hold.
    pub fn unchecked(ambient_dim: usize, strata: Vec<Stratum>) -> Self {
        let generic = strata.iter().position(|s| s.closure.is_full()).unwrap_or(strata.len() - 1);
        WeilDecoration { ambient_dim, strata, generic }
    }

    pub fn from_spec(spec: &DecorationSpec) -> Result<Self> {
        check_schema(spec.schema)?;
        let strata = spec
            .strata
            .iter()
            .map(|s| {
                let rows = from_json_rows(&s.basis, spec.ambient_dim)?;
                Ok(Stratum::new(Subspace::span(spec.ambient_dim, rows), TDivisor::new(s.divisor.clone())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(spec.ambient_dim, strata)
    }

    pub fn to_spec(&self) -> DecorationSpec {
        DecorationSpec {
            schema: Some(SCHEMA_VERSION),
            ambient_dim: self.ambient_dim,
            strata: self
                .strata
                .iter()
                .map(|s| StratumSpec { basis: to_json_rows(s.closure.basis()), divisor: s.divisor.coeffs().to_vec() })
                .collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum(&self, i: usize) -> &Stratum {
        &self.strata[i]
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    /// Index of the generic stratum `eta`.
    pub fn generic(&self) -> usize {
        self.generic
    }

    pub fn num_rays(&self) -> usize {
        self.strata[0].divisor.len()
    }

    pub fn check_fan(&self, fan: &Fan) -> Result<()> {
        self.strata.iter().try_for_each(|s| s.divisor.check_fan(fan))
    }

    /// `S_i <= S_j` in the strata poset.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        leq_closure(&self.strata, i, j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// The smallest stratum above both `i` and `j`.
    pub fn join(&self, i: usize, j: usize) -> usize {
        let joins = minimal_containing(&self.strata, &self.strata[i].closure.sum(&self.strata[j].closure));
        joins[0]
    }

    /// The stratum containing a nonzero vector, `None` for zero.
    pub fn stratum_of(&self, e: &[Q]) -> Option<usize> {
        let line = Subspace::span(self.ambient_dim, vec![e.to_vec()]);
        if line.is_zero() {
            return None;
        }
        minimal_containing(&self.strata, &line).first().copied()
    }

    /// `D(e)` for a nonzero vector.
    pub fn divisor_of_vector(&self, e: &[Q]) -> Option<&TDivisor> {
        self.stratum_of(e).map(|i| &self.strata[i].divisor)
    }

    pub fn summary(&self) -> DecorationSummary {
        summary(self)
    }
}

/// Runs the axiom checks on raw strata and reports instead of failing.
pub fn validate_decoration(ambient_dim: usize, strata: Vec<Stratum>) -> DecorationDiagnostics {
    let merged = merge_equal_divisors(strata);
    let count = merged.len();
    match check_axioms(ambient_dim, &merged) {
        Ok(g) => DecorationDiagnostics { valid: true, strata: count, generic: Some(g), errors: vec![] },
        Err(e) => DecorationDiagnostics {
            valid: false,
            strata: count,
            generic: None,
            errors: vec![DiagnosticError { kind: e.kind().to_string(), message: e.to_string() }],
        },
    }
}

pub fn validate_spec(spec: &DecorationSpec) -> Result<DecorationDiagnostics> {
    check_schema(spec.schema)?;
    let strata = spec
        .strata
        .iter()
        .map(|s| {
            let rows = from_json_rows(&s.basis, spec.ambient_dim)?;
            Ok(Stratum::new(Subspace::span(spec.ambient_dim, rows), TDivisor::new(s.divisor.clone())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(validate_decoration(spec.ambient_dim, strata))
}

/// Decoration of `O(D_1) + ... + O(D_n)`: `D(e)` is the minimum of the `D_i`
/// over the support of `e`.
pub fn from_line_bundle_sum(fan: &Fan, divisors: &[TDivisor]) -> Result<WeilDecoration> {
    let n = divisors.len();
    if n == 0 {
        return Err(Error::InvalidInput("need at least one line bundle".into()));
    }
    if n > 16 {
        return Err(Error::InvalidInput("at most 16 summands".into()));
    }
    for d in divisors {
        d.check_fan(fan)?;
    }
    let mut values: Vec<TDivisor> = Vec::new();
    for mask in 1u32..(1 << n) {
        let mut it = (0..n).filter(|i| mask >> i & 1 == 1);
        let first = divisors[it.next().unwrap()].clone();
        let v = it.fold(first, |acc, i| acc.meet(&divisors[i]).unwrap());
        if !values.contains(&v) {
            values.push(v);
        }
    }
    let mut strata: Vec<Stratum> = values
        .into_iter()
        .map(|v| {
            let support: Vec<usize> = (0..n).filter(|&i| v.leq(&divisors[i]).unwrap()).collect();
            Stratum::new(Subspace::coordinate(n, &support), v)
        })
        .collect();
    strata.sort_by(|a, b| (a.closure.dim(), a.divisor.coeffs()).cmp(&(b.closure.dim(), b.divisor.coeffs())));
    WeilDecoration::strict(n, strata)
}

/// A descending filtration `E^l` given by its jumps: `E^l` is the space of the
/// first jump with level `>= l`, and `0` above the last jump.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    ambient: usize,
    jumps: Vec<(i64, Subspace)>,
}

impl Filtration {
    /// Sorts, drops redundant levels and checks the chain descends from `E`.
    pub fn new(ambient: usize, mut jumps: Vec<(i64, Subspace)>) -> Result<Self> {
        jumps.sort_by_key(|(l, _)| *l);
        for w in jumps.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidInput(format!("level {} listed twice", w[0].0)));
            }
            if !w[1].1.is_subspace_of(&w[0].1) {
                return Err(Error::InvalidInput(format!("filtration not descending at level {}", w[1].0)));
            }
        }
        while jumps.last().is_some_and(|(_, s)| s.is_zero()) {
            jumps.pop();
        }
        let mut canon: Vec<(i64, Subspace)> = Vec::with_capacity(jumps.len());
        for (l, s) in jumps.into_iter().rev() {
            // an equal space at a lower level is implied by the higher one
            if canon.last().is_some_and(|(_, t)| *t == s) {
                continue;
            }
            canon.push((l, s));
        }
        canon.reverse();
        match canon.first() {
            Some((_, s)) if s.is_full() => Ok(Filtration { ambient, jumps: canon }),
            _ => Err(Error::InvalidInput("filtration must start at the full space".into())),
        }
    }

    /// `E^l = E` for `l <= level`, `0` above.
    pub fn constant(ambient: usize, level: i64) -> Self {
        Filtration { ambient, jumps: vec![(level, Subspace::full(ambient))] }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn jumps(&self) -> &[(i64, Subspace)] {
        &self.jumps
    }

    pub fn at(&self, level: i64) -> Subspace {
        match self.jumps.iter().find(|(l, _)| *l >= level) {
            Some((_, s)) => s.clone(),
            None => Subspace::zero(self.ambient),
        }
    }

    /// Largest level at which the filtration is still all of `E`.
    pub fn mu(&self) -> i64 {
        self.jumps[0].0
    }

    /// Largest level at which the filtration is nonzero.
    pub fn lambda(&self) -> i64 {
        self.jumps.last().unwrap().0
    }

    pub fn shift(&self, by: i64) -> Self {
        Filtration { ambient: self.ambient, jumps: self.jumps.iter().map(|(l, s)| (l + by, s.clone())).collect() }
    }
}

/// `E_rho^l` is the span of the closures whose divisor has `rho`-coefficient `>= l`.
pub fn klyachko_filtrations(dec: &WeilDecoration) -> Vec<Filtration> {
    let r = dec.ambient_dim();
    (0..dec.num_rays())
        .map(|rho| {
            let mut levels: Vec<i64> = dec.strata().iter().map(|s| s.divisor.coeffs()[rho]).collect();
            levels.sort_unstable();
            levels.dedup();
            let jumps = levels
                .iter()
                .map(|&l| {
                    let space = dec
                        .strata()
                        .iter()
                        .filter(|s| s.divisor.coeffs()[rho] >= l)
                        .fold(Subspace::zero(r), |acc, s| acc.sum(&s.closure));
                    (l, space)
                })
                .collect();
            Filtration::new(r, jumps).expect("generic stratum spans E at the lowest level")
        })
        .collect()
}

pub fn summary(dec: &WeilDecoration) -> DecorationSummary {
    let d_eta = dec.stratum(dec.generic()).divisor.clone();
    let d_hat =
        dec.strata().iter().skip(1).fold(dec.strata()[0].divisor.clone(), |acc, s| acc.join(&s.divisor).unwrap());
    DecorationSummary { mu: d_eta.coeffs().to_vec(), lambda: d_hat.coeffs().to_vec(), d_eta, d_hat }
}

/// Shifts every stratum divisor by `divisor`.
pub fn twist(dec: &WeilDecoration, divisor: &TDivisor) -> Result<WeilDecoration> {
    let strata = dec
        .strata()
        .iter()
        .map(|s| Ok(Stratum::new(s.closure.clone(), s.divisor.add(divisor)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(WeilDecoration { ambient_dim: dec.ambient_dim, strata, generic: dec.generic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::{q_vec, Subspace};
    use proptest::prelude::*;

    fn f1_strata() -> Vec<Stratum> {
        vec![
            Stratum::coordinate(2, &[0], vec![0, 0, 2, 2]),
            Stratum::coordinate(2, &[1], vec![3, 3, 1, 1]),
            Stratum::coordinate(2, &[0, 1], vec![0, 0, 1, 1]),
        ]
    }

    #[test]
    fn f1_example_is_valid() {
        let dec = WeilDecoration::new(2, f1_strata()).unwrap();
        assert_eq!(dec.generic(), 2);
        assert!(dec.lt(0, 2) && dec.lt(1, 2) && !dec.leq(0, 1));
        assert_eq!(dec.join(0, 1), 2);
        let s = dec.summary();
        assert_eq!(s.mu, vec![0, 0, 1, 1]);
        assert_eq!(s.lambda, vec![3, 3, 2, 2]);
    }

    #[test]
    fn min_law_violation() {
        let mut strata = f1_strata();
        strata[2].divisor = TDivisor::new(vec![1, 0, 1, 1]);
        let err = WeilDecoration::new(2, strata).unwrap_err();
        assert_eq!(err.kind(), "AxiomViolation");
    }

    #[test]
    fn structural_errors() {
        let err = WeilDecoration::new(2, vec![Stratum::coordinate(2, &[0], vec![0, 0])]).unwrap_err();
        assert_eq!(err.kind(), "NoGenericStratum");
        let strata = vec![
            Stratum::coordinate(2, &[0], vec![1, 0]),
            Stratum::coordinate(2, &[1], vec![1, 0]),
            Stratum::coordinate(2, &[0, 1], vec![0, 0]),
        ];
        assert_eq!(WeilDecoration::strict(2, strata.clone()).unwrap_err().kind(), "DuplicateDivisor");
        // merging gives span(e0, e1) = E with divisor (1,0), clashing with eta
        assert_eq!(WeilDecoration::new(2, strata).unwrap_err().kind(), "AxiomViolation");
        let one = WeilDecoration::new(1, vec![Stratum::coordinate(1, &[0], vec![4, -2])]).unwrap();
        assert_eq!(one.summary().mu, one.summary().lambda);
    }

    #[test]
    fn rank_three_intersections_must_be_closures() {
        // two planes meeting in a line that is not a stratum
        let strata = vec![
            Stratum::coordinate(3, &[0, 1], vec![1, 0]),
            Stratum::coordinate(3, &[1, 2], vec![0, 1]),
            Stratum::coordinate(3, &[0, 1, 2], vec![0, 0]),
        ];
        let diag = validate_decoration(3, strata.clone());
        assert!(!diag.valid);
        assert!(diag.errors[0].message.contains("intersection"));
        let mut ok = strata;
        ok.push(Stratum::coordinate(3, &[1], vec![1, 1]));
        assert!(validate_decoration(3, ok).valid);
    }

    #[test]
    fn p1_line_bundle_sum() {
        let p1 = fixtures::p1();
        let dec = from_line_bundle_sum(&p1, &[TDivisor::new(vec![0, 0]), TDivisor::new(vec![1, -1])]).unwrap();
        let divs: Vec<&[i64]> = dec.strata().iter().map(|s| s.divisor.coeffs()).collect();
        assert_eq!(divs, vec![&[0, 0][..], &[1, -1][..], &[0, -1][..]]);
        assert_eq!(dec.divisor_of_vector(&q_vec(&[1, 0])).unwrap().coeffs(), &[0, 0]);
        assert_eq!(dec.divisor_of_vector(&q_vec(&[0, 3])).unwrap().coeffs(), &[1, -1]);
        assert_eq!(dec.divisor_of_vector(&q_vec(&[1, 1])).unwrap().coeffs(), &[0, -1]);
        let s = dec.summary();
        assert_eq!(s.mu, vec![0, -1]);
        assert_eq!(s.lambda, vec![1, 0]);
        let fil = klyachko_filtrations(&dec);
        let f = &fil[1];
        assert!(f.at(-1).is_full());
        assert_eq!(f.at(0), Subspace::coordinate(2, &[0]));
        assert!(f.at(1).is_zero());
        assert_eq!((f.mu(), f.lambda()), (-1, 0));
    }

    #[test]
    fn single_line_bundle() {
        let f1 = fixtures::f1();
        let d = TDivisor::new(vec![2, -1, 0, 3]);
        let dec = from_line_bundle_sum(&f1, std::slice::from_ref(&d)).unwrap();
        assert_eq!(dec.len(), 1);
        for (rho, f) in klyachko_filtrations(&dec).iter().enumerate() {
            assert!(f.at(d.coeffs()[rho]).is_full());
            assert!(f.at(d.coeffs()[rho] + 1).is_zero());
        }
    }

    #[test]
    fn f1_from_line_bundles() {
        let f1 = fixtures::f1();
        let dec =
            from_line_bundle_sum(&f1, &[TDivisor::new(vec![0, 0, 2, 2]), TDivisor::new(vec![3, 3, 1, 1])]).unwrap();
        assert_eq!(dec, WeilDecoration::new(2, f1_strata()).unwrap());
    }

    #[test]
    fn twists() {
        let dec = WeilDecoration::new(2, f1_strata()).unwrap();
        assert_eq!(twist(&dec, &TDivisor::zero(4)).unwrap(), dec);
        let t = twist(&dec, &TDivisor::new(vec![1, 1, 1, 1])).unwrap();
        assert_eq!(t.summary().d_eta.coeffs(), &[1, 1, 2, 2]);
        assert_eq!(twist(&dec, &TDivisor::zero(3)).unwrap_err().kind(), "FanMismatch");
    }

    #[test]
    fn filtration_canonical_form() {
        let full = Subspace::full(2);
        let line = Subspace::coordinate(2, &[0]);
        let f =
            Filtration::new(2, vec![(3, line.clone()), (0, full.clone()), (1, full.clone()), (5, Subspace::zero(2))])
                .unwrap();
        assert_eq!(f.jumps().len(), 2);
        assert_eq!((f.mu(), f.lambda()), (1, 3));
        assert!(f.at(-10).is_full() && f.at(1).is_full());
        assert_eq!(f.at(2), line);
        assert!(f.at(4).is_zero());
        assert!(Filtration::new(2, vec![(0, line.clone())]).is_err());
        assert!(Filtration::new(2, vec![(0, line), (1, full)]).is_err());
    }

    #[test]
    fn spec_round_trip() {
        let dec = WeilDecoration::new(2, f1_strata()).unwrap();
        let json = serde_json::to_string(&dec.to_spec()).unwrap();
        let back: DecorationSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(WeilDecoration::from_spec(&back).unwrap(), dec);
    }

    fn divisor_strategy(n: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-3i64..=3, n)
    }

    proptest! {
        #[test]
        fn line_bundle_sums_satisfy_the_axiom(
            ds in proptest::collection::vec(divisor_strategy(4), 1..=3),
            e1 in proptest::collection::vec(-2i64..=2, 3),
            e2 in proptest::collection::vec(-2i64..=2, 3),
            shift in divisor_strategy(4),
        ) {
            let f1 = fixtures::f1();
            let divs: Vec<TDivisor> = ds.into_iter().map(TDivisor::new).collect();
            let n = divs.len();
            let dec = from_line_bundle_sum(&f1, &divs).unwrap();
            // D(e) is the minimum over the support of e
            let v1 = q_vec(&e1[..n]);
            let v2 = q_vec(&e2[..n]);
            let sum: Vec<Q> = v1.iter().zip(&v2).map(|(a, b)| a + b).collect();
            let d = |v: &[Q]| dec.divisor_of_vector(v).cloned();
            if let (Some(a), Some(b), Some(c)) = (d(&v1), d(&v2), d(&sum)) {
                prop_assert!(a.meet(&b).unwrap().leq(&c).unwrap());
            }
            if let Some(a) = d(&v1) {
                let oracle = (0..n).filter(|&i| e1[i] != 0).map(|i| divs[i].clone()).reduce(|x, y| x.meet(&y).unwrap()).unwrap();
                prop_assert_eq!(a.clone(), oracle);
            }
            // componentwise filtrations of the direct sum
            for (rho, f) in klyachko_filtrations(&dec).iter().enumerate() {
                for l in -4..=4 {
                    let idx: Vec<usize> = (0..n).filter(|&i| divs[i].coeffs()[rho] >= l).collect();
                    prop_assert_eq!(f.at(l), Subspace::coordinate(n, &idx));
                }
            }
            let s = dec.summary();
            for st in dec.strata() {
                prop_assert!(s.d_eta.leq(&st.divisor).unwrap() && st.divisor.leq(&s.d_hat).unwrap());
            }
            for i in 0..dec.len() {
                for j in 0..dec.len() {
                    if dec.leq(i, j) {
                        prop_assert!(dec.stratum(j).divisor.leq(&dec.stratum(i).divisor).unwrap());
                    }
                }
            }
            let shift = TDivisor::new(shift);
            let t = twist(&dec, &shift).unwrap().summary();
            prop_assert_eq!(t.mu, s.d_eta.add(&shift).unwrap().coeffs().to_vec());
            prop_assert_eq!(t.lambda, s.d_hat.add(&shift).unwrap().coeffs().to_vec());
        }
    }
}
