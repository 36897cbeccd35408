//! Smooth complete fans: validation, point location and walls.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{abs_gcd, det_i64, dot_i, q, q_vec, solve_unique, to_i64, Q};
use crate::lp;

/// An integer vector of `N` or `M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<i64>);

impl Deref for LatticeVector {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

impl LatticeVector {
    pub fn zero(dim: usize) -> Self {
        LatticeVector(vec![0; dim])
    }

    pub fn is_primitive(&self) -> bool {
        abs_gcd(&self.0) == 1
    }
}

/// A cone of the fan, given by the sorted indices of its generating rays.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn new(mut rays: Vec<usize>) -> Self {
        rays.sort_unstable();
        rays.dedup();
        Cone(rays)
    }

    pub fn zero() -> Self {
        Cone(Vec::new())
    }

    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn contains_ray(&self, ray: usize) -> bool {
        self.0.binary_search(&ray).is_ok()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.0.iter().all(|r| other.contains_ray(*r))
    }

    pub fn intersection(&self, other: &Cone) -> Cone {
        Cone(self.0.iter().copied().filter(|r| other.contains_ray(*r)).collect())
    }
}

/// A codimension-one cone together with its two adjacent maximal cones and
/// the linear relation `u1 + u2 - sum b_rho rho = 0` among the rays involved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wall {
    pub rays: Vec<usize>,
    pub adjacent: (usize, usize),
    pub opposite: (usize, usize),
    pub relation: Vec<i64>,
}

/// Raw fan input as it appears in JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(default)]
    pub projective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeDiagnostic {
    pub cone: usize,
    pub rays: Vec<usize>,
    pub det: Option<i64>,
    pub smooth: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosticError {
    pub kind: String,
    pub message: String,
}

impl From<&Error> for DiagnosticError {
    fn from(e: &Error) -> Self {
        DiagnosticError { kind: e.kind().to_string(), message: e.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanDiagnostics {
    pub smooth: bool,
    pub complete: bool,
    pub projective: bool,
    pub cones: Vec<ConeDiagnostic>,
    pub errors: Vec<DiagnosticError>,
}

impl FanDiagnostics {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }
}

#[derive(Debug, Clone)]
struct MaxCone {
    cone: Cone,
    // rows of the inverse ray matrix: coordinate i of p is inverse[i] . p
    inverse: Vec<Vec<i64>>,
}

/// A validated smooth complete fan. Immutable after construction.
#[derive(Debug, Clone)]
pub struct Fan {
    dim: usize,
    rays: Vec<LatticeVector>,
    max_cones: Vec<MaxCone>,
    projective: bool,
    walls: Vec<Wall>,
    faces: BTreeSet<Cone>,
}

fn integer_inverse(columns: &[&[i64]], dim: usize) -> Option<Vec<Vec<i64>>> {
    // matrix with the rays as columns
    let a: Vec<Vec<Q>> = (0..dim).map(|i| columns.iter().map(|c| q(c[i])).collect()).collect();
    let mut inv_cols = Vec::with_capacity(dim);
    for j in 0..dim {
        let e: Vec<Q> = (0..dim).map(|i| q((i == j) as i64)).collect();
        let x = solve_unique(&a, &e)?;
        inv_cols.push(x.iter().map(to_i64).collect::<Option<Vec<i64>>>()?);
    }
    Some((0..dim).map(|i| inv_cols.iter().map(|c| c[i]).collect()).collect())
}

fn subsets_of_size(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Checks ray-level and cone-level conditions. Returns per-cone diagnostics
/// and the list of problems found.
fn check_spec(spec: &FanSpec) -> (Vec<ConeDiagnostic>, Vec<Error>) {
    let d = spec.dim;
    let mut errors = Vec::new();
    let mut cones = Vec::new();
    if let Err(e) = crate::schema::check_schema(spec.schema) {
        errors.push(e);
        return (cones, errors);
    }
    if d == 0 {
        errors.push(Error::InvalidInput("fan dimension must be positive".into()));
        return (cones, errors);
    }
    if spec.rays.is_empty() {
        errors.push(Error::InvalidInput("fan has no rays".into()));
        return (cones, errors);
    }
    for (i, r) in spec.rays.iter().enumerate() {
        if r.len() != d {
            errors.push(Error::InvalidInput(format!("ray {i} has {} coordinates, expected {d}", r.len())));
            continue;
        }
        let g = abs_gcd(r);
        if g != 1 {
            errors.push(Error::NonPrimitiveRay { ray: i, gcd: g });
        }
        for (j, s) in spec.rays.iter().enumerate().take(i) {
            if s == r {
                errors.push(Error::DuplicateRay { first: j, second: i });
            }
        }
    }
    if !errors.is_empty() {
        return (cones, errors);
    }
    let mut seen = BTreeMap::new();
    for (ci, c) in spec.max_cones.iter().enumerate() {
        if let Some(&bad) = c.iter().find(|&&r| r >= spec.rays.len()) {
            errors.push(Error::InvalidInput(format!("cone {ci} references missing ray {bad}")));
            continue;
        }
        let cone = Cone::new(c.clone());
        if cone.dim() != c.len() {
            errors.push(Error::NonSimplicialCone { cone: ci, reason: "repeated ray index".into() });
            continue;
        }
        if let Some(prev) = seen.insert(cone.clone(), ci) {
            errors.push(Error::InvalidInput(format!("cones {prev} and {ci} coincide")));
            continue;
        }
        if cone.dim() != d {
            errors
                .push(Error::NonSimplicialCone { cone: ci, reason: format!("has {} rays, expected {d}", cone.dim()) });
            cones.push(ConeDiagnostic { cone: ci, rays: cone.0.clone(), det: None, smooth: false });
            continue;
        }
        let m: Vec<Vec<i64>> = cone.rays().iter().map(|&r| spec.rays[r].clone()).collect();
        let det = det_i64(&m);
        let smooth = det.abs() == 1;
        if det == 0 {
            errors.push(Error::NonSimplicialCone { cone: ci, reason: "rays are linearly dependent".into() });
        } else if !smooth {
            errors.push(Error::NonSmoothCone { cone: ci, det });
        }
        cones.push(ConeDiagnostic { cone: ci, rays: cone.0.clone(), det: Some(det), smooth });
    }
    if spec.max_cones.is_empty() {
        errors.push(Error::InvalidInput("fan has no maximal cones".into()));
    }
    (cones, errors)
}

fn check_completeness(spec: &FanSpec) -> Vec<Error> {
    let d = spec.dim;
    let mut errors = Vec::new();
    let cones: Vec<Cone> = spec.max_cones.iter().map(|c| Cone::new(c.clone())).collect();
    for r in 0..spec.rays.len() {
        if !cones.iter().any(|c| c.contains_ray(r)) {
            errors.push(Error::IncompleteFan(format!("ray {r} lies in no maximal cone")));
        }
    }
    let mut cofaces: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (ci, c) in cones.iter().enumerate() {
        for w in subsets_of_size(c.rays(), d - 1) {
            cofaces.entry(w).or_default().push(ci);
        }
    }
    for (w, cs) in &cofaces {
        match cs.len() {
            2 => {}
            1 => errors.push(Error::IncompleteFan(format!("wall {w:?} has a single maximal coface (cone {})", cs[0]))),
            _ => errors.push(Error::InvalidInput(format!("wall {w:?} lies in {} maximal cones {cs:?}", cs.len()))),
        }
    }
    // pairwise: maximal cones meet in their common face
    for i in 0..cones.len() {
        for j in i + 1..cones.len() {
            if improper_overlap(spec, &cones[i], &cones[j]) {
                errors.push(Error::InvalidInput(format!("cones {i} and {j} do not intersect in a common face")));
            }
        }
    }
    errors
}

fn improper_overlap(spec: &FanSpec, a: &Cone, b: &Cone) -> bool {
    let d = spec.dim;
    let own: Vec<usize> = a.rays().iter().copied().filter(|r| !b.contains_ray(*r)).collect();
    if own.is_empty() {
        return false;
    }
    let na = a.dim();
    let nb = b.dim();
    // variables: alpha (a rays), beta (b rays)
    let mut rows = Vec::with_capacity(d + 1);
    for k in 0..d {
        let mut row = Vec::with_capacity(na + nb);
        row.extend(a.rays().iter().map(|&r| q(spec.rays[r][k])));
        row.extend(b.rays().iter().map(|&r| q(-spec.rays[r][k])));
        rows.push(row);
    }
    let mut norm: Vec<Q> = a.rays().iter().map(|r| q(own.contains(r) as i64)).collect();
    norm.extend((0..nb).map(|_| q(0)));
    rows.push(norm);
    let mut rhs = vec![q(0); d];
    rhs.push(q(1));
    lp::feasible_point(&rows, &rhs).is_some()
}

/// Full diagnostics report; never fails.
pub fn validate_fan(spec: &FanSpec) -> FanDiagnostics {
    let (cones, mut errors) = check_spec(spec);
    let smooth = errors.is_empty();
    let mut complete = false;
    if smooth {
        let c = check_completeness(spec);
        complete = c.is_empty();
        errors.extend(c);
    }
    FanDiagnostics {
        smooth,
        complete,
        projective: spec.projective,
        cones,
        errors: errors.iter().map(DiagnosticError::from).collect(),
    }
}

impl Fan {
    /// Builds a validated fan, failing on the first problem found.
    pub fn from_spec(spec: &FanSpec) -> Result<Fan> {
        let (_, errors) = check_spec(spec);
        if let Some(e) = errors.into_iter().next() {
            return Err(e);
        }
        if let Some(e) = check_completeness(spec).into_iter().next() {
            return Err(e);
        }
        let d = spec.dim;
        let rays: Vec<LatticeVector> = spec.rays.iter().cloned().map(LatticeVector).collect();
        let mut max_cones = Vec::new();
        for c in &spec.max_cones {
            let cone = Cone::new(c.clone());
            let cols: Vec<&[i64]> = cone.rays().iter().map(|&r| &rays[r][..]).collect();
            let inverse = integer_inverse(&cols, d).expect("unimodular cone has an integral inverse");
            max_cones.push(MaxCone { cone, inverse });
        }
        let mut faces = BTreeSet::new();
        for mc in &max_cones {
            for k in 0..=d {
                for s in subsets_of_size(mc.cone.rays(), k) {
                    faces.insert(Cone(s));
                }
            }
        }
        let mut fan = Fan { dim: d, rays, max_cones, projective: spec.projective, walls: Vec::new(), faces };
        fan.walls = fan.compute_walls()?;
        Ok(fan)
    }

    pub fn new(dim: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>, projective: bool) -> Result<Fan> {
        Fan::from_spec(&FanSpec { schema: None, dim, rays, max_cones, projective })
    }

    pub fn to_spec(&self) -> FanSpec {
        FanSpec {
            schema: Some(1),
            dim: self.dim,
            rays: self.rays.iter().map(|r| r.0.clone()).collect(),
            max_cones: self.max_cones.iter().map(|c| c.cone.0.clone()).collect(),
            projective: self.projective,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &LatticeVector {
        &self.rays[i]
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    pub fn max_cones(&self) -> impl ExactSizeIterator<Item = &Cone> {
        self.max_cones.iter().map(|m| &m.cone)
    }

    pub fn max_cone(&self, i: usize) -> &Cone {
        &self.max_cones[i].cone
    }

    pub fn num_max_cones(&self) -> usize {
        self.max_cones.len()
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    /// All cones of the fan, including the zero cone.
    pub fn cones(&self) -> impl Iterator<Item = &Cone> {
        self.faces.iter()
    }

    pub fn is_face(&self, rays: &[usize]) -> bool {
        let c = Cone::new(rays.to_vec());
        self.faces.contains(&c)
    }

    /// Image of a vector of `Z^{Sigma(1)}` under `e_rho -> rho`.
    pub fn ray_map(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.dim];
        for (c, r) in v.iter().zip(&self.rays) {
            for (o, x) in out.iter_mut().zip(r.iter()) {
                *o += c * x;
            }
        }
        out
    }

    /// Pairing `<m, rho>` for every ray.
    pub fn pairings(&self, m: &[i64]) -> Vec<i64> {
        self.rays.iter().map(|r| dot_i(m, r)).collect()
    }

    fn max_cone_coords(&self, i: usize, p: &[i64]) -> Vec<i64> {
        self.max_cones[i].inverse.iter().map(|row| dot_i(row, p)).collect()
    }

    /// The unique `m` with `<m, rho_j> = values[j]` for the rays of maximal cone `i`.
    pub fn vertex_with_pairings(&self, i: usize, values: &[i64]) -> Vec<i64> {
        let inv = &self.max_cones[i].inverse;
        (0..self.dim).map(|k| inv.iter().zip(values).map(|(row, v)| row[k] * v).sum()).collect()
    }

    /// The unique cone whose relative interior contains `p`.
    pub fn locate(&self, p: &[i64]) -> Cone {
        for i in 0..self.max_cones.len() {
            let c = self.max_cone_coords(i, p);
            if c.iter().all(|&x| x >= 0) {
                let rays = self.max_cones[i].cone.rays();
                return Cone(rays.iter().zip(&c).filter(|(_, &x)| x > 0).map(|(&r, _)| r).collect());
            }
        }
        unreachable!("complete fan covers every point")
    }

    /// Unique nonnegative integer expansion of `p` in the rays of `cone`.
    pub fn cone_coords(&self, cone: &Cone, p: &[i64]) -> Result<Vec<i64>> {
        let outside = || Error::PointOutsideCone { point: p.to_vec(), rays: cone.rays().to_vec() };
        if let Some(i) = self.max_cones.iter().position(|m| cone.is_face_of(&m.cone)) {
            let coords = self.max_cone_coords(i, p);
            let rays = self.max_cones[i].cone.rays();
            let mut out = Vec::with_capacity(cone.dim());
            for (&r, &c) in rays.iter().zip(&coords) {
                if cone.contains_ray(r) {
                    if c < 0 {
                        return Err(outside());
                    }
                    out.push(c);
                } else if c != 0 {
                    return Err(outside());
                }
            }
            return Ok(out);
        }
        // not a cone of this fan: solve directly
        let a: Vec<Vec<Q>> = (0..self.dim).map(|k| cone.rays().iter().map(|&r| q(self.rays[r][k])).collect()).collect();
        let x = solve_unique(&a, &q_vec(p)).ok_or_else(outside)?;
        let ints: Vec<i64> = x.iter().map(to_i64).collect::<Option<_>>().ok_or_else(outside)?;
        if ints.iter().any(|&c| c < 0) {
            return Err(outside());
        }
        Ok(ints)
    }

    fn compute_walls(&self) -> Result<Vec<Wall>> {
        let d = self.dim;
        let mut cofaces: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (ci, mc) in self.max_cones.iter().enumerate() {
            for w in subsets_of_size(mc.cone.rays(), d - 1) {
                cofaces.entry(w).or_default().push(ci);
            }
        }
        let mut walls = Vec::new();
        for (w, cs) in cofaces {
            let (a, b) = (cs[0], cs[1]);
            let opp = |c: usize| *self.max_cones[c].cone.rays().iter().find(|r| !w.contains(r)).unwrap();
            let (u1, u2) = (opp(a), opp(b));
            let sum: Vec<i64> = self.rays[u1].iter().zip(self.rays[u2].iter()).map(|(x, y)| x + y).collect();
            // coordinates of u1 + u2 in the basis of cone a; the u1 coordinate must vanish
            let coords = self.max_cone_coords(a, &sum);
            let mut relation = vec![0; self.rays.len()];
            relation[u1] += 1;
            relation[u2] += 1;
            for (&r, &c) in self.max_cones[a].cone.rays().iter().zip(&coords) {
                if r == u1 {
                    if c != 0 {
                        return Err(Error::IncompleteFan(format!("wall {w:?}: opposite rays not balanced")));
                    }
                } else {
                    relation[r] -= c;
                }
            }
            if self.ray_map(&relation).iter().any(|&x| x != 0) {
                return Err(Error::KernelCheckFailed { relation });
            }
            walls.push(Wall { rays: w, adjacent: (a, b), opposite: (u1, u2), relation });
        }
        Ok(walls)
    }

    pub fn wall_index(&self, rays: &[usize]) -> Option<usize> {
        let mut key = rays.to_vec();
        key.sort_unstable();
        self.walls.iter().position(|w| w.rays == key)
    }
}

pub fn cone_subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    subsets_of_size(items, k)
}
