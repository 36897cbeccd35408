//! Torus-invariant divisors, their section polyhedra, and the virtual
//! intersection/union calculus on divisors.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{cone_subsets, Cone, Fan};
use crate::linalg::{dot, q, q_vec, rank, solve_unique, to_i64, Q};
use crate::mori;

/// A torus-invariant Weil divisor `sum a_rho D_rho`, indexed by the rays of a fan.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TDivisor {
    pub coeffs: Vec<i64>,
}

impl TDivisor {
    pub fn new(coeffs: Vec<i64>) -> Self {
        TDivisor { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        TDivisor { coeffs: vec![0; n] }
    }

    /// The prime divisor `D_rho`.
    pub fn prime(n: usize, ray: usize) -> Self {
        let mut coeffs = vec![0; n];
        coeffs[ray] = 1;
        TDivisor { coeffs }
    }

    /// `-K = sum D_rho`.
    pub fn anticanonical(n: usize) -> Self {
        TDivisor { coeffs: vec![1; n] }
    }

    /// Principal divisor `div(x^m) = sum <m, rho> D_rho`.
    pub fn principal(fan: &Fan, m: &[i64]) -> Self {
        TDivisor { coeffs: fan.pairings(m) }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn check_fan(&self, fan: &Fan) -> Result<()> {
        if self.len() != fan.num_rays() {
            return Err(Error::FanMismatch { expected: fan.num_rays(), found: self.len() });
        }
        Ok(())
    }

    fn check_same(&self, other: &TDivisor) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::FanMismatch { expected: self.len(), found: other.len() });
        }
        Ok(())
    }

    fn zip_with(&self, other: &TDivisor, f: impl Fn(i64, i64) -> i64) -> Result<TDivisor> {
        self.check_same(other)?;
        Ok(TDivisor { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f(a, b)).collect() })
    }

    pub fn add(&self, other: &TDivisor) -> Result<TDivisor> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &TDivisor) -> Result<TDivisor> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> TDivisor {
        TDivisor { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: i64) -> TDivisor {
        TDivisor { coeffs: self.coeffs.iter().map(|a| k * a).collect() }
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &TDivisor) -> Result<TDivisor> {
        self.zip_with(other, i64::min)
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &TDivisor) -> Result<TDivisor> {
        self.zip_with(other, i64::max)
    }

    /// `self <= other` iff `other - self` is effective.
    pub fn leq(&self, other: &TDivisor) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a <= b))
    }

    /// Integer pairing with a vector of `Z^{Sigma(1)}`.
    pub fn pair(&self, relation: &[i64]) -> Result<i64> {
        if relation.len() != self.len() {
            return Err(Error::FanMismatch { expected: self.len(), found: relation.len() });
        }
        Ok(self.coeffs.iter().zip(relation).map(|(a, r)| a * r).sum())
    }
}

/// A polytope in `M_R` given by its (irredundant, sorted) vertex list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QPolytope {
    vertices: Vec<Vec<Q>>,
    dim: usize,
}

impl QPolytope {
    pub fn from_vertices(mut vertices: Vec<Vec<Q>>) -> Self {
        vertices.sort();
        vertices.dedup();
        let dim = affine_dim(&vertices);
        QPolytope { vertices, dim }
    }

    pub fn from_integer_vertices(vertices: &[Vec<i64>]) -> Self {
        Self::from_vertices(vertices.iter().map(|v| q_vec(v)).collect())
    }

    pub fn point(p: &[i64]) -> Self {
        Self::from_integer_vertices(&[p.to_vec()])
    }

    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn integer_vertices(&self) -> Option<Vec<Vec<i64>>> {
        self.vertices.iter().map(|v| v.iter().map(to_i64).collect()).collect()
    }

    /// `min <v, direction>` over the polytope.
    pub fn min_pairing(&self, direction: &[i64]) -> Q {
        let d = q_vec(direction);
        self.vertices.iter().map(|v| dot(v, &d)).min().expect("nonempty polytope")
    }

    pub fn translate(&self, shift: &[i64]) -> QPolytope {
        let s = q_vec(shift);
        QPolytope::from_vertices(self.vertices.iter().map(|v| v.iter().zip(&s).map(|(a, b)| a + b).collect()).collect())
    }
}

fn affine_dim(vertices: &[Vec<Q>]) -> usize {
    let Some(first) = vertices.first() else {
        return 0;
    };
    let diffs: Vec<Vec<Q>> =
        vertices.iter().skip(1).map(|v| v.iter().zip(first).map(|(a, b)| a - b).collect()).collect();
    rank(&diffs)
}

/// Vertices of `{u : <u, rho> >= -a_rho for all rho}`, or `None` when empty.
pub fn section_polyhedron(fan: &Fan, divisor: &TDivisor) -> Result<Option<QPolytope>> {
    divisor.check_fan(fan)?;
    let d = fan.dim();
    let n = fan.num_rays();
    let a = divisor.coeffs();
    let indices: Vec<usize> = (0..n).collect();
    let mut found: BTreeSet<Vec<Q>> = BTreeSet::new();
    for subset in cone_subsets(&indices, d) {
        let rows: Vec<Vec<Q>> = subset.iter().map(|&r| q_vec(fan.ray(r))).collect();
        let rhs: Vec<Q> = subset.iter().map(|&r| q(-a[r])).collect();
        let Some(u) = solve_unique(&rows, &rhs) else {
            continue;
        };
        let feasible = (0..n).all(|r| dot(&u, &q_vec(fan.ray(r))) >= q(-a[r]));
        if feasible {
            found.insert(u);
        }
    }
    if found.is_empty() {
        // rays of a complete fan positively span N, so a nonempty polyhedron is a polytope
        return Ok(None);
    }
    Ok(Some(QPolytope::from_vertices(found.into_iter().collect())))
}

/// Lattice points of the section polyhedron, sorted.
pub fn section_lattice_points(fan: &Fan, divisor: &TDivisor) -> Result<Vec<Vec<i64>>> {
    let Some(p) = section_polyhedron(fan, divisor)? else {
        return Ok(Vec::new());
    };
    let d = fan.dim();
    let lo: Vec<i64> = (0..d).map(|k| p.vertices().iter().map(|v| floor(&v[k])).min().unwrap()).collect();
    let hi: Vec<i64> = (0..d).map(|k| p.vertices().iter().map(|v| ceil(&v[k])).max().unwrap()).collect();
    let mut out = Vec::new();
    for m in BoxIter::new(&lo, &hi) {
        if fan.pairings(&m).iter().zip(divisor.coeffs()).all(|(p, a)| *p >= -a) {
            out.push(m);
        }
    }
    Ok(out)
}

pub(crate) fn floor(x: &Q) -> i64 {
    to_i64(&x.floor()).expect("small coordinate")
}

pub(crate) fn ceil(x: &Q) -> i64 {
    to_i64(&x.ceil()).expect("small coordinate")
}

/// Iterates the integer points of a box `[lo, hi]` in lexicographic order.
pub struct BoxIter {
    lo: Vec<i64>,
    hi: Vec<i64>,
    cur: Option<Vec<i64>>,
}

impl BoxIter {
    pub fn new(lo: &[i64], hi: &[i64]) -> Self {
        let cur = if lo.iter().zip(hi).all(|(a, b)| a <= b) { Some(lo.to_vec()) } else { None };
        BoxIter { lo: lo.to_vec(), hi: hi.to_vec(), cur }
    }
}

impl Iterator for BoxIter {
    type Item = Vec<i64>;
    fn next(&mut self) -> Option<Vec<i64>> {
        let out = self.cur.clone()?;
        let mut next = out.clone();
        let mut k = next.len();
        loop {
            if k == 0 {
                self.cur = None;
                break;
            }
            k -= 1;
            if next[k] < self.hi[k] {
                next[k] += 1;
                self.cur = Some(next);
                break;
            }
            next[k] = self.lo[k];
        }
        Some(out)
    }
}

/// `D_nabla = -sum min<nabla, rho> D_rho` for a lattice polytope.
pub fn divisor_of(fan: &Fan, polytope: &QPolytope) -> Result<TDivisor> {
    if let Some(v) = polytope.vertices().iter().find(|v| v.iter().any(|x| !x.is_integer())) {
        return Err(Error::NonIntegralVertex(format!("{v:?}")));
    }
    if polytope.vertices().is_empty() {
        return Err(Error::InvalidInput("empty polytope has no divisor".into()));
    }
    let coeffs = fan.rays().iter().map(|r| -to_i64(&polytope.min_pairing(r)).expect("integral vertices")).collect();
    Ok(TDivisor::new(coeffs))
}

/// The vertex `m_sigma` of the local polyhedron of `divisor` at maximal cone `i`:
/// the unique `m` with `<m, rho> = -a_rho` for `rho` in the cone.
pub fn local_vertex(fan: &Fan, i: usize, divisor: &TDivisor) -> Vec<i64> {
    let cone = fan.max_cone(i);
    let values: Vec<i64> = cone.rays().iter().map(|&r| -divisor.coeffs[r]).collect();
    fan.vertex_with_pairings(i, &values)
}

/// Nef test via local vertices: every `m_sigma` lies in the section polyhedron.
pub fn is_nef(fan: &Fan, divisor: &TDivisor) -> Result<bool> {
    divisor.check_fan(fan)?;
    for i in 0..fan.num_max_cones() {
        let m = local_vertex(fan, i, divisor);
        if fan.pairings(&m).iter().zip(divisor.coeffs()).any(|(p, a)| *p < -a) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Strict version: ample iff nef and the local vertices are pairwise distinct
/// for adjacent maximal cones (every wall edge has positive length).
pub fn is_ample(fan: &Fan, divisor: &TDivisor) -> Result<bool> {
    if !is_nef(fan, divisor)? {
        return Ok(false);
    }
    Ok(fan.walls().iter().all(|w| divisor.pair(&w.relation).is_ok_and(|p| p > 0)))
}

/// The face of the polytope of a nef divisor on which every `a` in `cone` is minimized.
pub fn face_of(fan: &Fan, divisor: &TDivisor, cone: &Cone) -> Result<QPolytope> {
    if !is_nef(fan, divisor)? {
        return Err(Error::NotNef(divisor.coeffs.clone()));
    }
    let mut verts = BTreeSet::new();
    for i in 0..fan.num_max_cones() {
        if cone.is_face_of(fan.max_cone(i)) {
            verts.insert(local_vertex(fan, i, divisor));
        }
    }
    let verts: Vec<Vec<i64>> = verts.into_iter().collect();
    Ok(QPolytope::from_integer_vertices(&verts))
}

/// Value at `v` of the piecewise linear support function of `divisor`:
/// `-sum c_rho a_rho` where `v = sum c_rho rho` in the cone containing `v`.
/// Equals `min <P(D), v>` whenever `D` is nef.
pub fn support_value(fan: &Fan, divisor: &TDivisor, v: &[i64]) -> i64 {
    let cone = fan.locate(v);
    let coords = fan.cone_coords(&cone, v).expect("located cone contains the point");
    -cone.rays().iter().zip(&coords).map(|(&r, &c)| c * divisor.coeffs[r]).sum::<i64>()
}

/// A virtual polytope, represented canonically by its divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualPolytope {
    pub divisor: TDivisor,
    pub nef: bool,
    /// The honest section polyhedron of the divisor (which is the virtual
    /// polytope itself exactly when the divisor is nef).
    pub section: Option<QPolytope>,
}

impl VirtualPolytope {
    pub fn of(fan: &Fan, divisor: TDivisor) -> Result<Self> {
        let nef = is_nef(fan, &divisor)?;
        let section = section_polyhedron(fan, &divisor)?;
        Ok(VirtualPolytope { divisor, nef, section })
    }
}

/// Virtual intersection: the polytope of the componentwise minimum.
pub fn cap(fan: &Fan, a: &TDivisor, b: &TDivisor) -> Result<VirtualPolytope> {
    a.check_fan(fan)?;
    VirtualPolytope::of(fan, a.meet(b)?)
}

/// Virtual union: the polytope of the componentwise maximum.
pub fn cup(fan: &Fan, a: &TDivisor, b: &TDivisor) -> Result<VirtualPolytope> {
    a.check_fan(fan)?;
    VirtualPolytope::of(fan, a.join(b)?)
}

/// Whether the virtual intersection of two nef divisors is the honest
/// intersection of their polytopes.
pub fn cap_is_honest(fan: &Fan, a: &TDivisor, b: &TDivisor) -> Result<bool> {
    let meet = a.meet(b)?;
    if !is_nef(fan, &meet)? {
        return Ok(false);
    }
    // section polyhedron of the meet is the set-theoretic intersection
    let Some(inter) = section_polyhedron(fan, &meet)? else {
        return Ok(false);
    };
    if inter.integer_vertices().is_none() {
        return Ok(false);
    }
    Ok(divisor_of(fan, &inter)? == meet)
}

/// Smallest `k <= kmax` such that after twisting both nef divisors by
/// `(k - 1) A` (with `A` the reference ample divisor) the virtual intersection
/// is the honest intersection. `k = 1` is the untwisted pair.
pub fn scaled_cap_stabilizes(fan: &Fan, a: &TDivisor, b: &TDivisor, kmax: usize) -> Result<Option<usize>> {
    a.check_fan(fan)?;
    b.check_fan(fan)?;
    for d in [a, b] {
        if !is_nef(fan, d)? {
            return Err(Error::NotNef(d.coeffs.clone()));
        }
    }
    let ample = mori::reference_ample(fan)?;
    for k in 1..=kmax {
        let shift = ample.scale(k as i64 - 1);
        if cap_is_honest(fan, &a.add(&shift)?, &b.add(&shift)?)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Writes `D = D_plus - D_minus` with both parts nef: `D_minus = k A` for the
/// least `k >= 0` such that `D + k A` is nef.
pub fn nef_split(fan: &Fan, divisor: &TDivisor) -> Result<(TDivisor, TDivisor)> {
    divisor.check_fan(fan)?;
    let ample = mori::reference_ample(fan)?;
    nef_split_with(fan, divisor, &ample)
}

pub fn nef_split_with(fan: &Fan, divisor: &TDivisor, ample: &TDivisor) -> Result<(TDivisor, TDivisor)> {
    let relations = mori::primitive_relations(fan)?;
    // smallest k with <D + kA, R> >= 0 for every primitive relation
    let mut k = 0i64;
    for r in &relations {
        let dr = divisor.pair(r)?;
        let ar = ample.pair(r)?;
        debug_assert!(ar > 0);
        if dr < 0 {
            k = k.max((-dr + ar - 1) / ar);
        }
    }
    let minus = ample.scale(k);
    Ok((divisor.add(&minus)?, minus))
}

/// Whether a rational point satisfies all section inequalities of `divisor`.
pub fn in_section(fan: &Fan, divisor: &TDivisor, point: &[Q]) -> bool {
    fan.rays().iter().zip(divisor.coeffs()).all(|(r, a)| dot(point, &q_vec(r)) >= q(-a))
}

pub fn is_lattice_polytope(p: &QPolytope) -> bool {
    p.vertices().iter().all(|v| v.iter().all(|x| x.is_integer()))
}

pub fn is_nonnegative(x: &Q) -> bool {
    !x.is_negative() || x.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn verts(p: &QPolytope) -> Vec<Vec<i64>> {
        p.integer_vertices().unwrap()
    }

    #[test]
    fn f1_blue_polytope() {
        let f1 = fixtures::f1();
        let p = section_polyhedron(&f1, &TDivisor::new(vec![0, 0, 2, 2])).unwrap().unwrap();
        assert_eq!(verts(&p), vec![vec![-2, 0], vec![-2, 2], vec![0, 0], vec![2, 2]]);
        assert_eq!(p.dim(), 2);
    }

    #[test]
    fn zero_divisor_is_a_point() {
        for (_, fan) in fixtures::all_fans() {
            let p = section_polyhedron(&fan, &TDivisor::zero(fan.num_rays())).unwrap().unwrap();
            assert_eq!(verts(&p), vec![vec![0; fan.dim()]]);
            assert_eq!(p.dim(), 0);
        }
    }

    #[test]
    fn p1_negative_divisor_is_empty() {
        let p1 = fixtures::p1();
        assert!(section_polyhedron(&p1, &TDivisor::new(vec![0, -1])).unwrap().is_none());
    }

    #[test]
    fn divisor_of_examples() {
        let f1 = fixtures::f1();
        let green = QPolytope::from_integer_vertices(&[vec![-1, -3], vec![0, -3], vec![4, 1], vec![-1, 1]]);
        assert_eq!(divisor_of(&f1, &green).unwrap(), TDivisor::new(vec![3, 3, 1, 1]));
        let dp = fixtures::dp7();
        let square = QPolytope::from_integer_vertices(&[vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2]]);
        assert_eq!(divisor_of(&dp, &square).unwrap().coeffs[3], 4);
        assert_eq!(divisor_of(&f1, &QPolytope::point(&[0, 0])).unwrap(), TDivisor::zero(4));
        let half = QPolytope::from_vertices(vec![vec![crate::linalg::q_frac(1, 2), q(0)]]);
        assert_eq!(divisor_of(&f1, &half).unwrap_err().kind(), "NonIntegralVertex");
    }

    #[test]
    fn nef_examples() {
        let f1 = fixtures::f1();
        assert!(is_nef(&f1, &TDivisor::new(vec![0, 0, 2, 2])).unwrap());
        assert!(!is_nef(&fixtures::p1(), &TDivisor::new(vec![0, -1])).unwrap());
        for (_, fan) in fixtures::all_fans() {
            assert!(is_nef(&fan, &TDivisor::zero(fan.num_rays())).unwrap());
        }
    }

    #[test]
    fn faces() {
        let f1 = fixtures::f1();
        let e = face_of(&f1, &TDivisor::new(vec![0, 0, 1, 1]), &Cone::new(vec![1])).unwrap();
        assert_eq!(verts(&e), vec![vec![-1, 0], vec![0, 0]]);
        let v = face_of(&f1, &TDivisor::new(vec![0, 0, 2, 2]), &Cone::new(vec![0, 1])).unwrap();
        assert_eq!(verts(&v), vec![vec![0, 0]]);
        let d = TDivisor::new(vec![0, 0, 2, 2]);
        let whole = face_of(&f1, &d, &Cone::zero()).unwrap();
        assert_eq!(&whole, &section_polyhedron(&f1, &d).unwrap().unwrap());
        assert_eq!(face_of(&fixtures::p1(), &TDivisor::new(vec![0, -1]), &Cone::zero()).unwrap_err().kind(), "NotNef");
    }

    #[test]
    fn meet_join_examples() {
        let a = TDivisor::new(vec![0, 0, 2, 2]);
        let b = TDivisor::new(vec![3, 3, 1, 1]);
        assert_eq!(a.meet(&b).unwrap(), TDivisor::new(vec![0, 0, 1, 1]));
        assert_eq!(a.join(&b).unwrap(), TDivisor::new(vec![3, 3, 2, 2]));
        assert_eq!(a.meet(&a).unwrap(), a);
        assert_eq!(a.join(&a).unwrap(), a);
        assert_eq!(a.meet(&TDivisor::zero(3)).unwrap_err().kind(), "FanMismatch");
    }

    #[test]
    fn dp7_cap_is_not_honest() {
        let dp = fixtures::dp7();
        let (nabla, nabla2) = fixtures::dp7_pair();
        let meet = nabla.meet(&nabla2).unwrap();
        assert_eq!(meet.coeffs[3], 5);
        let inter = section_polyhedron(&dp, &meet).unwrap().unwrap();
        assert_eq!(divisor_of(&dp, &inter).unwrap().coeffs[3], 4);
        let c = cap(&dp, &nabla, &nabla2).unwrap();
        assert!(!c.nef);
        assert!(!cap_is_honest(&dp, &nabla, &nabla2).unwrap());
    }

    #[test]
    fn f1_cap_is_honest() {
        let f1 = fixtures::f1();
        let a = TDivisor::new(vec![0, 0, 2, 2]);
        let b = TDivisor::new(vec![3, 3, 1, 1]);
        let c = cap(&f1, &a, &b).unwrap();
        assert_eq!(c.divisor, TDivisor::new(vec![0, 0, 1, 1]));
        assert!(c.nef);
        assert!(cap_is_honest(&f1, &a, &b).unwrap());
        assert_eq!(scaled_cap_stabilizes(&f1, &a, &b, 5).unwrap(), Some(1));
        assert_eq!(scaled_cap_stabilizes(&f1, &a, &a, 5).unwrap(), Some(1));
    }

    #[test]
    fn cup_with_zero() {
        let f1 = fixtures::f1();
        let d = TDivisor::new(vec![0, 0, 2, 2]);
        let c = cup(&f1, &d, &TDivisor::zero(4)).unwrap();
        assert_eq!(c.divisor, d);
        let d = TDivisor::new(vec![-1, 0, 2, 3]);
        assert_eq!(d.join(&TDivisor::zero(4)).unwrap(), TDivisor::new(vec![0, 0, 2, 3]));
    }

    #[test]
    fn split_parts_are_nef() {
        let dp = fixtures::dp7();
        let d = TDivisor::new(vec![-3, 2, 0, -1, 3]);
        let (plus, minus) = nef_split(&dp, &d).unwrap();
        assert!(is_nef(&dp, &plus).unwrap());
        assert!(is_nef(&dp, &minus).unwrap());
        assert_eq!(plus.sub(&minus).unwrap(), d);
    }

    #[test]
    fn box_iter_order() {
        let pts: Vec<_> = BoxIter::new(&[0, 0], &[1, 1]).collect();
        assert_eq!(pts, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(BoxIter::new(&[1], &[0]).count(), 0);
    }
}
