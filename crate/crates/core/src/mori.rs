//! Primitive collections, their relations, and the extremal rays of the Mori cone.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{cone_subsets, Cone, Fan};
use crate::linalg::{abs_gcd, q, q_vec, to_i64, Q};
use crate::lp::{self, LpOutcome};
use crate::polytope::{face_of, TDivisor};

/// A minimal non-face of the fan, with its focus and primitive relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveCollection {
    pub rays: Vec<usize>,
    pub focus_cone: Cone,
    /// `f_rho` for the rays of the focus cone, in the order of `focus_cone.rays()`.
    pub focus_coeffs: Vec<i64>,
    pub relation: Vec<i64>,
    pub extremal: bool,
}

impl PrimitiveCollection {
    /// The incidence vector `e_P` in `Z^{Sigma(1)}`.
    pub fn incidence(&self, n: usize) -> Vec<i64> {
        let mut e = vec![0; n];
        for &r in &self.rays {
            e[r] = 1;
        }
        e
    }

    /// `(ray, f_rho)` pairs of the focus.
    pub fn focus(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.focus_cone.rays().iter().copied().zip(self.focus_coeffs.iter().copied())
    }
}

/// The primitive relations together with which of them span extremal rays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoriCone {
    pub collections: Vec<PrimitiveCollection>,
    pub extremal: Vec<usize>,
}

impl MoriCone {
    pub fn generators(&self) -> impl Iterator<Item = &[i64]> {
        self.collections.iter().map(|c| c.relation.as_slice())
    }

    pub fn extremal_collections(&self) -> impl Iterator<Item = &PrimitiveCollection> {
        self.collections.iter().filter(|c| c.extremal)
    }
}

/// All minimal non-faces, by increasing cardinality then lexicographically.
pub fn minimal_non_faces(fan: &Fan) -> Vec<Vec<usize>> {
    let n = fan.num_rays();
    let rays: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    // a minimal non-face has its boundary in the complex, so at most d + 1 elements
    for k in 2..=fan.dim() + 1 {
        for cand in cone_subsets(&rays, k) {
            if fan.is_face(&cand) {
                continue;
            }
            let boundary_ok = (0..k).all(|skip| {
                let sub: Vec<usize> = cand.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &r)| r).collect();
                fan.is_face(&sub)
            });
            if boundary_ok {
                out.push(cand);
            }
        }
    }
    out
}

/// The focus of a primitive collection: the cone containing the sum of its rays
/// in the relative interior, and the (strictly positive) coordinates there.
pub fn focus(fan: &Fan, rays: &[usize]) -> Result<(Cone, Vec<i64>)> {
    let mut sum = vec![0i64; fan.dim()];
    for &r in rays {
        for (s, x) in sum.iter_mut().zip(fan.ray(r).iter()) {
            *s += x;
        }
    }
    let cone = fan.locate(&sum);
    let coords = fan.cone_coords(&cone, &sum)?;
    if coords.iter().any(|&c| c < 1) {
        return Err(Error::FocusNotInterior { rays: rays.to_vec() });
    }
    Ok((cone, coords))
}

/// `R(P) = e_P - f(P)`, verified to lie in the kernel of the ray map.
pub fn primitive_relation(fan: &Fan, rays: &[usize]) -> Result<Vec<i64>> {
    let (cone, coeffs) = focus(fan, rays)?;
    relation_from_focus(fan, rays, &cone, &coeffs)
}

fn relation_from_focus(fan: &Fan, rays: &[usize], cone: &Cone, coeffs: &[i64]) -> Result<Vec<i64>> {
    let mut rel = vec![0i64; fan.num_rays()];
    for &r in rays {
        rel[r] += 1;
    }
    for (&r, &f) in cone.rays().iter().zip(coeffs) {
        rel[r] -= f;
    }
    if fan.ray_map(&rel).iter().any(|&x| x != 0) {
        return Err(Error::KernelCheckFailed { relation: rel });
    }
    Ok(rel)
}

fn positively_proportional(a: &[i64], b: &[i64]) -> bool {
    // a = t b with t > 0: all 2x2 minors vanish and some nonzero entries share sign
    let mut sign_ok = false;
    for i in 0..a.len() {
        if (a[i] == 0) != (b[i] == 0) {
            return false;
        }
        if a[i] != 0 {
            if (a[i] > 0) != (b[i] > 0) {
                return false;
            }
            sign_ok = true;
        }
        for j in i + 1..a.len() {
            if a[i] * b[j] != a[j] * b[i] {
                return false;
            }
        }
    }
    sign_ok
}

/// Flags each generator that is not a nonnegative rational combination of the
/// generators that are not positive multiples of it.
pub fn extremal_flags(generators: &[Vec<i64>]) -> Vec<bool> {
    generators
        .iter()
        .map(|g| {
            let others: Vec<Vec<Q>> =
                generators.iter().filter(|h| !positively_proportional(g, h)).map(|h| q_vec(h)).collect();
            !lp::in_cone(&q_vec(g), &others)
        })
        .collect()
}

/// Every primitive collection with focus, relation and extremal flag.
pub fn primitive_collections(fan: &Fan) -> Result<Vec<PrimitiveCollection>> {
    let mut out = Vec::new();
    for rays in minimal_non_faces(fan) {
        let (focus_cone, focus_coeffs) = focus(fan, &rays)?;
        let relation = relation_from_focus(fan, &rays, &focus_cone, &focus_coeffs)?;
        out.push(PrimitiveCollection { rays, focus_cone, focus_coeffs, relation, extremal: false });
    }
    let gens: Vec<Vec<i64>> = out.iter().map(|c| c.relation.clone()).collect();
    for (c, flag) in out.iter_mut().zip(extremal_flags(&gens)) {
        c.extremal = flag;
    }
    Ok(out)
}

pub fn primitive_relations(fan: &Fan) -> Result<Vec<Vec<i64>>> {
    minimal_non_faces(fan).iter().map(|p| primitive_relation(fan, p)).collect()
}

/// The Mori cone generated by the primitive relations, with extremal flags.
pub fn extremal_rays(fan: &Fan) -> Result<MoriCone> {
    let collections = primitive_collections(fan)?;
    if collections.iter().all(|c| c.relation.iter().all(|&x| x == 0)) {
        return Err(Error::DegenerateCone);
    }
    let extremal: Vec<usize> = collections.iter().enumerate().filter(|(_, c)| c.extremal).map(|(i, _)| i).collect();
    assert!(!extremal.is_empty(), "a projective fan has at least one extremal ray");
    Ok(MoriCone { collections, extremal })
}

/// The intersection pairing `sum a_rho R_rho`.
pub fn pair(divisor: &TDivisor, relation: &[i64]) -> Result<i64> {
    divisor.pair(relation)
}

/// Index of a wall whose relation is a positive multiple of `relation`.
pub fn matching_wall(fan: &Fan, relation: &[i64]) -> Option<usize> {
    fan.walls().iter().position(|w| positively_proportional(&w.relation, relation))
}

/// Lattice length of the (possibly degenerate) edge of the polytope of a nef
/// divisor that corresponds to wall `wall`.
pub fn edge_length(fan: &Fan, divisor: &TDivisor, wall: usize) -> Result<i64> {
    let w = &fan.walls()[wall];
    let face = face_of(fan, divisor, &Cone::new(w.rays.clone()))?;
    let verts = face.integer_vertices().expect("nef polytopes are lattice polytopes");
    let len = match verts.len() {
        1 => 0,
        2 => {
            let diff: Vec<i64> = verts[0].iter().zip(&verts[1]).map(|(a, b)| b - a).collect();
            abs_gcd(&diff)
        }
        k => unreachable!("wall face of a nef polytope has {k} vertices"),
    };
    debug_assert_eq!(Some(len), divisor.pair(&w.relation).ok());
    Ok(len)
}

/// Number of lattice points on the wall edge (`length + 1`).
pub fn edge_lattice_points(fan: &Fan, divisor: &TDivisor, wall: usize) -> Result<i64> {
    Ok(edge_length(fan, divisor, wall)? + 1)
}

/// A fixed ample divisor: `-K` when it pairs positively with every primitive
/// relation, otherwise the LP minimizer of `sum a` subject to `<a, R> >= 1`, `a >= 0`.
pub fn reference_ample(fan: &Fan) -> Result<TDivisor> {
    let relations = primitive_relations(fan)?;
    let n = fan.num_rays();
    let anti = TDivisor::anticanonical(n);
    if relations.iter().all(|r| anti.pair(r).is_ok_and(|p| p > 0)) {
        return Ok(anti);
    }
    // variables a (n), slack s (one per relation): <a,R> - s = 1
    let m = relations.len();
    let mut rows = Vec::with_capacity(m);
    for (i, r) in relations.iter().enumerate() {
        let mut row: Vec<Q> = r.iter().map(|&x| q(x)).collect();
        row.extend((0..m).map(|j| q(-((i == j) as i64))));
        rows.push(row);
    }
    let mut cost: Vec<Q> = vec![q(1); n];
    cost.extend((0..m).map(|_| q(0)));
    let LpOutcome::Optimal { x, .. } = lp::minimize(&cost, &rows, &vec![q(1); m]) else {
        return Err(Error::InvalidInput("fan admits no ample divisor (not projective)".into()));
    };
    let denom_lcm = x[..n].iter().fold(num_bigint::BigInt::from(1), |acc, v| num_integer::lcm(acc, v.denom().clone()));
    let scale = Q::from_integer(denom_lcm);
    let coeffs = x[..n].iter().map(|v| to_i64(&(v * &scale)).expect("small ample coefficients")).collect();
    Ok(TDivisor::new(coeffs))
}
