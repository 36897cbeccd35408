//! Graded cohomology of toric reflexive sheaves.
//!
//! Three engines: the Čech complex of the maximal-cone cover (any rank), the
//! full subcomplex of the fan on the rays where a line bundle's inequality
//! fails, and, on surfaces, the polygon difference `P(D-) \ (P(D+) - m)`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::decoration::{klyachko_filtrations, Filtration, WeilDecoration};
use crate::error::{Error, Result};
use crate::fan::{cone_subsets, Cone, Fan};
use crate::linalg::{q, rank, Subspace, Q};
use crate::polytope::{local_vertex, TDivisor};
use crate::schema::{check_schema, from_json_rows, to_json_rows, Rational, SCHEMA_VERSION};

pub const DEFAULT_SCAN_CAP: usize = 64;
pub const SCAN_CAP_ENV: &str = "TORIC_SCAN_CAP";

/// Klyachko data: the rank of `E` and one filtration per ray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricSheaf {
    rank: usize,
    filtrations: Vec<Filtration>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpSpec {
    pub level: i64,
    pub basis: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationSpec {
    pub ray: usize,
    pub jumps: Vec<JumpSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheafSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    pub rank: usize,
    pub filtrations: Vec<FiltrationSpec>,
}

impl ToricSheaf {
    pub fn new(rank: usize, filtrations: Vec<Filtration>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidInput("sheaf of rank zero".into()));
        }
        if let Some(f) = filtrations.iter().find(|f| f.ambient() != rank) {
            return Err(Error::InvalidInput(format!("filtration in dimension {} for rank {rank}", f.ambient())));
        }
        Ok(ToricSheaf { rank, filtrations })
    }

    pub fn line_bundle(divisor: &TDivisor) -> Self {
        ToricSheaf { rank: 1, filtrations: divisor.coeffs().iter().map(|&a| Filtration::constant(1, a)).collect() }
    }

    pub fn from_decoration(dec: &WeilDecoration) -> Self {
        ToricSheaf { rank: dec.ambient_dim(), filtrations: klyachko_filtrations(dec) }
    }

    pub fn from_spec(spec: &SheafSpec) -> Result<Self> {
        check_schema(spec.schema)?;
        let n = spec.filtrations.len();
        let mut slots: Vec<Option<Filtration>> = vec![None; n];
        for f in &spec.filtrations {
            if f.ray >= n || slots[f.ray].is_some() {
                return Err(Error::InvalidInput(format!("ray {} missing or repeated among filtrations", f.ray)));
            }
            let jumps = f
                .jumps
                .iter()
                .map(|j| Ok((j.level, Subspace::span(spec.rank, from_json_rows(&j.basis, spec.rank)?))))
                .collect::<Result<Vec<_>>>()?;
            slots[f.ray] = Some(Filtration::new(spec.rank, jumps)?);
        }
        Self::new(spec.rank, slots.into_iter().map(Option::unwrap).collect())
    }

    pub fn to_spec(&self) -> SheafSpec {
        SheafSpec {
            schema: Some(SCHEMA_VERSION),
            rank: self.rank,
            filtrations: self
                .filtrations
                .iter()
                .enumerate()
                .map(|(ray, f)| FiltrationSpec {
                    ray,
                    jumps: f
                        .jumps()
                        .iter()
                        .map(|(l, s)| JumpSpec { level: *l, basis: to_json_rows(s.basis()) })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn filtrations(&self) -> &[Filtration] {
        &self.filtrations
    }

    pub fn check_fan(&self, fan: &Fan) -> Result<()> {
        if self.filtrations.len() != fan.num_rays() {
            return Err(Error::FanMismatch { expected: fan.num_rays(), found: self.filtrations.len() });
        }
        Ok(())
    }

    pub fn mu(&self) -> Vec<i64> {
        self.filtrations.iter().map(Filtration::mu).collect()
    }

    pub fn lambda(&self) -> Vec<i64> {
        self.filtrations.iter().map(Filtration::lambda).collect()
    }

    /// `E(D)`: every filtration shifted up by the coefficient of `D`.
    pub fn twist(&self, divisor: &TDivisor) -> Result<Self> {
        if divisor.len() != self.filtrations.len() {
            return Err(Error::FanMismatch { expected: self.filtrations.len(), found: divisor.len() });
        }
        Ok(ToricSheaf {
            rank: self.rank,
            filtrations: self.filtrations.iter().zip(divisor.coeffs()).map(|(f, &a)| f.shift(a)).collect(),
        })
    }
}

/// Degree-`m` sections over the chart of `cone`: the intersection of
/// `E_rho^{-<m, rho>}` over the rays of the cone.
pub fn chart_sections(fan: &Fan, sheaf: &ToricSheaf, cone: &Cone, m: &[i64]) -> Subspace {
    let p = fan.pairings(m);
    cone.rays().iter().fold(Subspace::full(sheaf.rank()), |acc, &r| acc.intersect(&sheaf.filtrations()[r].at(-p[r])))
}

/// Cohomology in every degree of a finite region; degrees outside carry none.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedCohomology {
    pub dim: usize,
    /// Nonzero degrees only, sorted by `m`.
    pub degrees: Vec<DegreeEntry>,
    pub totals: Vec<usize>,
    pub region_size: usize,
    #[serde(skip)]
    pub region: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeEntry {
    pub m: Vec<i64>,
    pub h: Vec<usize>,
}

impl GradedCohomology {
    fn from_values(dim: usize, values: BTreeMap<Vec<i64>, Vec<usize>>) -> Self {
        let mut totals = vec![0; dim + 1];
        let mut degrees = Vec::new();
        let region: Vec<Vec<i64>> = values.keys().cloned().collect();
        for (m, h) in values {
            for (t, x) in totals.iter_mut().zip(&h) {
                *t += x;
            }
            if h.iter().any(|&x| x > 0) {
                degrees.push(DegreeEntry { m, h });
            }
        }
        GradedCohomology { dim, degrees, totals, region_size: region.len(), region }
    }

    pub fn at(&self, m: &[i64]) -> Vec<usize> {
        match self.degrees.binary_search_by(|e| e.m.as_slice().cmp(m)) {
            Ok(i) => self.degrees[i].h.clone(),
            Err(_) => vec![0; self.dim + 1],
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.totals.iter().skip(1).all(|&x| x == 0)
    }

    pub fn is_immaculate(&self) -> bool {
        self.totals.iter().all(|&x| x == 0)
    }
}

pub fn scan_cap() -> usize {
    std::env::var(SCAN_CAP_ENV).ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_SCAN_CAP)
}

/// Initial scan box: the local vertices of the `mu`- and `lambda`-divisors,
/// padded by one.
fn initial_box(fan: &Fan, mu: &[i64], lambda: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let d = fan.dim();
    let mut lo = vec![i64::MAX; d];
    let mut hi = vec![i64::MIN; d];
    for div in [TDivisor::new(mu.to_vec()), TDivisor::new(lambda.to_vec())] {
        for i in 0..fan.num_max_cones() {
            let v = local_vertex(fan, i, &div);
            for k in 0..d {
                lo[k] = lo[k].min(v[k] - 1);
                hi[k] = hi[k].max(v[k] + 1);
            }
        }
    }
    (lo, hi)
}

/// Points at L-infinity distance exactly `k` from the box `[lo, hi]`.
fn shell(lo: &[i64], hi: &[i64], k: i64) -> Vec<Vec<i64>> {
    let lo2: Vec<i64> = lo.iter().map(|x| x - k).collect();
    let hi2: Vec<i64> = hi.iter().map(|x| x + k).collect();
    crate::polytope::BoxIter::new(&lo2, &hi2)
        .filter(|p| k == 0 || p.iter().enumerate().any(|(i, &x)| x == lo2[i] || x == hi2[i]))
        .collect()
}

/// Evaluates `eval` on the initial box and then on growing shells until two
/// consecutive shells carry no cohomology.
pub fn scan_with<F>(fan: &Fan, mu: &[i64], lambda: &[i64], mut eval: F) -> Result<GradedCohomology>
where
    F: FnMut(&[i64]) -> Result<Vec<usize>>,
{
    let (lo, hi) = initial_box(fan, mu, lambda);
    let cap = scan_cap();
    let mut values = BTreeMap::new();
    let mut quiet = 0;
    for k in 0.. {
        if k as usize > cap {
            return Err(Error::NonTerminatingScan { cap });
        }
        let mut nonzero = false;
        for m in shell(&lo, &hi, k) {
            let h = eval(&m)?;
            nonzero |= h.iter().any(|&x| x > 0);
            values.insert(m, h);
        }
        if k > 0 {
            quiet = if nonzero { 0 } else { quiet + 1 };
            if quiet == 2 {
                break;
            }
        }
    }
    Ok(GradedCohomology::from_values(fan.dim(), values))
}

/// The finite set of degrees examined for `sheaf`.
pub fn scan_region(fan: &Fan, sheaf: &ToricSheaf) -> Result<Vec<Vec<i64>>> {
    Ok(graded_cohomology(fan, sheaf)?.region)
}

/// The ordered Čech complex of the maximal-cone cover, reused across degrees.
pub struct CechEngine<'a> {
    fan: &'a Fan,
    sheaf: &'a ToricSheaf,
    mu: Vec<i64>,
    lambda: Vec<i64>,
    /// `terms[p]` lists the `(p+1)`-subsets of maximal cones with the rays of their common face.
    terms: Vec<Vec<(Vec<usize>, Vec<usize>)>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    cache: RefCell<HashMap<Vec<i64>, Vec<usize>>>,
}

impl<'a> CechEngine<'a> {
    pub fn new(fan: &'a Fan, sheaf: &'a ToricSheaf) -> Result<Self> {
        sheaf.check_fan(fan)?;
        let cones: Vec<usize> = (0..fan.num_max_cones()).collect();
        let mut terms = Vec::new();
        let mut index = Vec::new();
        for p in 0..=fan.dim() + 1 {
            let list: Vec<(Vec<usize>, Vec<usize>)> = cone_subsets(&cones, p + 1)
                .into_iter()
                .map(|set| {
                    let face = set
                        .iter()
                        .skip(1)
                        .fold(fan.max_cone(set[0]).clone(), |acc, &i| acc.intersection(fan.max_cone(i)));
                    (set, face.rays().to_vec())
                })
                .collect();
            index.push(list.iter().enumerate().map(|(i, (s, _))| (s.clone(), i)).collect());
            terms.push(list);
        }
        Ok(CechEngine {
            fan,
            sheaf,
            mu: sheaf.mu(),
            lambda: sheaf.lambda(),
            terms,
            index,
            cache: RefCell::new(HashMap::new()),
        })
    }

    /// `(h^0, ..., h^d)` in degree `m`.
    pub fn at(&self, m: &[i64]) -> Vec<usize> {
        let levels: Vec<i64> =
            self.fan.pairings(m).iter().enumerate().map(|(r, p)| (-p).clamp(self.mu[r], self.lambda[r] + 1)).collect();
        if let Some(h) = self.cache.borrow().get(&levels) {
            return h.clone();
        }
        let h = self.compute(&levels);
        self.cache.borrow_mut().insert(levels, h.clone());
        h
    }

    fn compute(&self, levels: &[i64]) -> Vec<usize> {
        let r = self.sheaf.rank();
        let d = self.fan.dim();
        let spaces: Vec<Subspace> = self.sheaf.filtrations().iter().zip(levels).map(|(f, &l)| f.at(l)).collect();
        let sections: Vec<Vec<Subspace>> = self
            .terms
            .iter()
            .map(|list| {
                list.iter()
                    .map(|(_, rays)| rays.iter().fold(Subspace::full(r), |acc, &ray| acc.intersect(&spaces[ray])))
                    .collect()
            })
            .collect();
        let dims: Vec<usize> = sections.iter().map(|s| s.iter().map(Subspace::dim).sum()).collect();
        // rank of the coboundary C^p -> C^{p+1}
        let ranks: Vec<usize> = (0..=d)
            .map(|p| {
                let target = &self.terms[p + 1];
                if target.is_empty() || dims[p] == 0 {
                    return 0;
                }
                let width = target.len() * r;
                let mut rows = Vec::with_capacity(dims[p]);
                for ((set, _), space) in self.terms[p].iter().zip(&sections[p]) {
                    for v in space.basis() {
                        let mut row = vec![q(0); width];
                        for k in 0..self.fan.num_max_cones() {
                            if set.contains(&k) {
                                continue;
                            }
                            let mut bigger = set.clone();
                            let pos = bigger.partition_point(|&x| x < k);
                            bigger.insert(pos, k);
                            let j = self.index[p + 1][&bigger];
                            let sign = if pos % 2 == 0 { q(1) } else { q(-1) };
                            for (c, x) in v.iter().enumerate() {
                                row[j * r + c] = &sign * x;
                            }
                        }
                        rows.push(row);
                    }
                }
                rank(&rows)
            })
            .collect();
        (0..=d).map(|p| dims[p] - ranks[p] - if p > 0 { ranks[p - 1] } else { 0 }).collect()
    }
}

/// Čech cohomology in a single degree.
pub fn cech_cohomology(fan: &Fan, sheaf: &ToricSheaf, m: &[i64]) -> Result<Vec<usize>> {
    Ok(CechEngine::new(fan, sheaf)?.at(m))
}

/// Čech cohomology over the whole scan region.
pub fn graded_cohomology(fan: &Fan, sheaf: &ToricSheaf) -> Result<GradedCohomology> {
    let engine = CechEngine::new(fan, sheaf)?;
    scan_with(fan, &sheaf.mu(), &sheaf.lambda(), |m| Ok(engine.at(m)))
}

pub fn is_acyclic(fan: &Fan, sheaf: &ToricSheaf) -> Result<bool> {
    Ok(graded_cohomology(fan, sheaf)?.is_acyclic())
}

pub fn is_immaculate(fan: &Fan, sheaf: &ToricSheaf) -> Result<bool> {
    Ok(graded_cohomology(fan, sheaf)?.is_immaculate())
}

/// Reduced cohomology of full subcomplexes of the fan's simplicial complex,
/// memoized by vertex set.
pub struct SupportComplex<'a> {
    fan: &'a Fan,
    faces: Vec<(u64, Vec<usize>)>,
    cache: RefCell<HashMap<u64, Vec<usize>>>,
}

fn mask_of(rays: &[usize]) -> u64 {
    rays.iter().fold(0, |m, &r| m | 1 << r)
}

impl<'a> SupportComplex<'a> {
    pub fn new(fan: &'a Fan) -> Self {
        assert!(fan.num_rays() <= 64, "at most 64 rays");
        let faces = fan.cones().map(|c| (mask_of(c.rays()), c.rays().to_vec())).collect();
        SupportComplex { fan, faces, cache: RefCell::new(HashMap::new()) }
    }

    /// `(h^0, ..., h^d)` with `h^i = dim H~^{i-1}` of the full subcomplex on `mask`.
    pub fn reduced(&self, mask: u64) -> Vec<usize> {
        if let Some(h) = self.cache.borrow().get(&mask) {
            return h.clone();
        }
        let d = self.fan.dim();
        // by_size[k] = faces with k rays, i.e. simplices of dimension k - 1
        let mut by_size: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); d + 1];
        for (fm, rays) in &self.faces {
            if fm & !mask == 0 {
                by_size[rays.len()].push(rays);
            }
        }
        let index: Vec<HashMap<&Vec<usize>, usize>> =
            by_size.iter().map(|l| l.iter().enumerate().map(|(i, &f)| (f, i)).collect()).collect();
        // boundary from size k to size k - 1
        let mut ranks = vec![0usize; d + 2];
        for k in 1..=d {
            let rows: Vec<Vec<Q>> = by_size[k]
                .iter()
                .map(|f| {
                    let mut row = vec![q(0); by_size[k - 1].len()];
                    for skip in 0..f.len() {
                        let sub: Vec<usize> =
                            f.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &r)| r).collect();
                        row[index[k - 1][&sub]] = q(if skip % 2 == 0 { 1 } else { -1 });
                    }
                    row
                })
                .collect();
            ranks[k] = rank(&rows);
        }
        // reduced homology in dimension k - 1 lives on faces of size k
        let h: Vec<usize> = (0..=d).map(|k| by_size[k].len() - ranks[k] - ranks[k + 1]).collect();
        self.cache.borrow_mut().insert(mask, h.clone());
        h
    }

    /// Line bundle cohomology of `O(D)` in degree `m`.
    pub fn line_bundle(&self, divisor: &TDivisor, m: &[i64]) -> Vec<usize> {
        let p = self.fan.pairings(m);
        let mask = p
            .iter()
            .zip(divisor.coeffs())
            .enumerate()
            .filter(|(_, (p, a))| **p < -**a)
            .fold(0u64, |acc, (i, _)| acc | 1 << i);
        self.reduced(mask)
    }
}

pub fn line_bundle_cohomology_support(fan: &Fan, divisor: &TDivisor, m: &[i64]) -> Result<Vec<usize>> {
    divisor.check_fan(fan)?;
    Ok(SupportComplex::new(fan).line_bundle(divisor, m))
}

/// Rank-one engines selectable from the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Cech,
    Support,
    Polytope,
}

/// Graded cohomology of `O(D)` over its scan region with the chosen engine.
pub fn line_bundle_graded(fan: &Fan, divisor: &TDivisor, engine: Engine) -> Result<GradedCohomology> {
    divisor.check_fan(fan)?;
    let a = divisor.coeffs();
    match engine {
        Engine::Cech => graded_cohomology(fan, &ToricSheaf::line_bundle(divisor)),
        Engine::Support => {
            let sc = SupportComplex::new(fan);
            scan_with(fan, a, a, |m| Ok(sc.line_bundle(divisor, m)))
        }
        Engine::Polytope => {
            let (plus, minus) = crate::polytope::nef_split(fan, divisor)?;
            scan_with(fan, a, a, |m| polytope_difference_cohomology(fan, &plus, &minus, m))
        }
    }
}

/// Total `h^i` of `O(D)` for `i = 0..=d`, via the support engine.
pub fn line_bundle_totals(fan: &Fan, divisor: &TDivisor) -> Result<Vec<usize>> {
    Ok(line_bundle_graded(fan, divisor, Engine::Support)?.totals)
}

// ---- polygon difference engine ----

/// A point `(x / w, y / w)` with `w > 0`.
#[derive(Debug, Clone, Copy)]
struct HPoint {
    x: i128,
    y: i128,
    w: i128,
}

/// The line `n . u = c` with a canonical orientation of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Line {
    n: [i128; 2],
    c: i128,
}

impl Line {
    fn side(&self, p: &HPoint) -> i8 {
        (self.n[0] * p.x + self.n[1] * p.y - self.c * p.w).signum() as i8
    }
}

/// Half-plane `orient * (n . u - c) >= 0` of line `line`.
#[derive(Debug, Clone, Copy)]
struct HalfPlane {
    line: usize,
    orient: i8,
}

struct Arrangement {
    lines: Vec<Line>,
    minus: Vec<HalfPlane>,
    other: Vec<HalfPlane>,
}

impl Arrangement {
    fn add(&mut self, normal: &[i64], rhs: i64) -> HalfPlane {
        let (mut n, mut c, mut orient) = ([normal[0] as i128, normal[1] as i128], rhs as i128, 1i8);
        if n[0] < 0 || (n[0] == 0 && n[1] < 0) {
            n = [-n[0], -n[1]];
            c = -c;
            orient = -1;
        }
        let line = Line { n, c };
        let idx = match self.lines.iter().position(|l| *l == line) {
            Some(i) => i,
            None => {
                self.lines.push(line);
                self.lines.len() - 1
            }
        };
        HalfPlane { line: idx, orient }
    }

    fn covector(&self, p: &HPoint) -> Vec<i8> {
        self.lines.iter().map(|l| l.side(p)).collect()
    }

    fn inside(halves: &[HalfPlane], cov: &[i8]) -> bool {
        halves.iter().all(|h| h.orient * cov[h.line] >= 0)
    }
}

/// `h^k = dim H~^{k-1}(P(D-) \ (P(D+) - m))` on a smooth complete surface,
/// with both parts nef.
pub fn polytope_difference_cohomology(fan: &Fan, plus: &TDivisor, minus: &TDivisor, m: &[i64]) -> Result<Vec<usize>> {
    if fan.dim() != 2 {
        return Err(Error::DimensionUnsupported(fan.dim()));
    }
    plus.check_fan(fan)?;
    minus.check_fan(fan)?;
    let p = fan.pairings(m);
    let mut arr = Arrangement { lines: Vec::new(), minus: Vec::new(), other: Vec::new() };
    for (r, ray) in fan.rays().iter().enumerate() {
        let h = arr.add(ray, -minus.coeffs()[r]);
        arr.minus.push(h);
        let h = arr.add(ray, -plus.coeffs()[r] - p[r]);
        arr.other.push(h);
    }
    let in_minus = |cov: &[i8]| Arrangement::inside(&arr.minus, cov);

    // cells of the arrangement inside P(D-), keyed by covector
    let mut cells: BTreeMap<Vec<i8>, usize> = BTreeMap::new();
    let mut vertices: Vec<(HPoint, Vec<i8>)> = Vec::new();
    for i in 0..arr.lines.len() {
        for j in i + 1..arr.lines.len() {
            let (a, b) = (arr.lines[i], arr.lines[j]);
            let det = a.n[0] * b.n[1] - a.n[1] * b.n[0];
            if det == 0 {
                continue;
            }
            let mut pt = HPoint { x: a.c * b.n[1] - b.c * a.n[1], y: a.n[0] * b.c - b.n[0] * a.c, w: det };
            if pt.w < 0 {
                pt = HPoint { x: -pt.x, y: -pt.y, w: -pt.w };
            }
            let cov = arr.covector(&pt);
            if in_minus(&cov) && !cells.contains_key(&cov) {
                cells.insert(cov.clone(), 0);
                vertices.push((pt, cov));
            }
        }
    }
    let mut edges: Vec<Vec<i8>> = Vec::new();
    for (li, line) in arr.lines.iter().enumerate() {
        let t = [-line.n[1], line.n[0]];
        let mut on: Vec<&(HPoint, Vec<i8>)> = vertices.iter().filter(|(_, c)| c[li] == 0).collect();
        on.sort_by(|(a, _), (b, _)| ((t[0] * a.x + t[1] * a.y) * b.w).cmp(&((t[0] * b.x + t[1] * b.y) * a.w)));
        for w in on.windows(2) {
            let (a, b) = (&w[0].0, &w[1].0);
            let mid = HPoint { x: a.x * b.w + b.x * a.w, y: a.y * b.w + b.y * a.w, w: 2 * a.w * b.w };
            let cov = arr.covector(&mid);
            if !cells.contains_key(&cov) {
                cells.insert(cov.clone(), 1);
                edges.push(cov);
            }
        }
    }
    for e in &edges {
        for s in [1i8, -1] {
            let cov: Vec<i8> = e.iter().map(|&x| if x == 0 { s } else { x }).collect();
            if in_minus(&cov) {
                cells.entry(cov).or_insert(2);
            }
        }
    }

    let chosen: Vec<(&Vec<i8>, usize)> =
        cells.iter().filter(|(c, _)| !Arrangement::inside(&arr.other, c)).map(|(c, &d)| (c, d)).collect();
    if chosen.is_empty() {
        return Ok(vec![1, 0, 0]);
    }
    let below = |x: &[i8], y: &[i8]| x != y && x.iter().zip(y).all(|(a, b)| *a == 0 || a == b);
    let n = chosen.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut less: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut pairs = 0i64;
    for i in 0..n {
        for j in 0..n {
            if chosen[i].1 < chosen[j].1 && below(chosen[i].0, chosen[j].0) {
                less[i].push(j);
                pairs += 1;
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let triples: i64 = (0..n).map(|i| less[i].iter().map(|&j| less[j].len() as i64).sum::<i64>()).sum();
    let components = (0..n).filter(|&i| find(&mut parent, i) == i).count() as i64;
    let euler = n as i64 - pairs + triples;
    let b1 = components - euler;
    debug_assert!(b1 >= 0);
    Ok(vec![0, (components - 1) as usize, b1 as usize])
}
