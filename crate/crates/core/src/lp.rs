//! Exact two-phase simplex over the rationals with Bland's rule.
//!
//! Problems are given in standard form: minimize `c·x` subject to `A x = b`,
//! `x >= 0`. Sizes at desk scale are tiny, so a dense tableau is fine.

use num_traits::{One, Signed, Zero};

use crate::linalg::Q;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Q>, value: Q },
    Infeasible,
    Unbounded,
}

struct Tableau {
    // rows: constraints, last column is the right hand side
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs for objective `cost` over the allowed columns.
    fn reduced_costs(&self, cost: &[Q], allowed: &[bool]) -> Vec<Option<Q>> {
        (0..self.ncols)
            .map(|j| {
                if !allowed[j] {
                    return None;
                }
                let mut rc = cost[j].clone();
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    if !row[j].is_zero() && !cost[b].is_zero() {
                        rc -= &cost[b] * &row[j];
                    }
                }
                Some(rc)
            })
            .collect()
    }

    /// Runs simplex iterations; returns false if unbounded.
    fn optimize(&mut self, cost: &[Q], allowed: &[bool]) -> bool {
        loop {
            let rcs = self.reduced_costs(cost, allowed);
            let entering = rcs
                .iter()
                .enumerate()
                .find(|(j, rc)| !self.basis.contains(j) && rc.as_ref().is_some_and(|v| v.is_negative()))
                .map(|(j, _)| j);
            let Some(c) = entering else {
                return true;
            };
            let rhs = self.ncols;
            let mut best: Option<(usize, Q)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[rhs] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c);
        }
    }
}

/// Minimizes `c·x` subject to `A x = b`, `x >= 0`.
pub fn minimize(c: &[Q], a: &[Vec<Q>], b: &[Q]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    // phase I: artificial variable per row, rhs made nonnegative
    let total = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut r: Vec<Q> = Vec::with_capacity(total + 1);
        for x in row {
            r.push(if flip { -x.clone() } else { x.clone() });
        }
        for k in 0..m {
            r.push(if k == i { Q::one() } else { Q::zero() });
        }
        r.push(if flip { -bi.clone() } else { bi.clone() });
        rows.push(r);
    }
    let mut t = Tableau { rows, basis: (n..total).collect(), ncols: total };
    let phase1_cost: Vec<Q> = (0..total).map(|j| if j >= n { Q::one() } else { Q::zero() }).collect();
    let all = vec![true; total];
    t.optimize(&phase1_cost, &all);
    let infeas: Q =
        t.rows.iter().zip(&t.basis).filter(|(_, &bidx)| bidx >= n).fold(Q::zero(), |acc, (row, _)| acc + &row[total]);
    if infeas.is_positive() {
        return LpOutcome::Infeasible;
    }
    // drive remaining artificials out of the basis
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            if let Some(c) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, c);
            } else {
                // redundant constraint
                t.rows.remove(i);
                t.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }
    let mut cost: Vec<Q> = c.to_vec();
    cost.extend((0..m).map(|_| Q::zero()));
    let allowed: Vec<bool> = (0..total).map(|j| j < n).collect();
    if !t.optimize(&cost, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (row, &bidx) in t.rows.iter().zip(&t.basis) {
        if bidx < n {
            x[bidx] = row[total].clone();
        }
    }
    let value = x.iter().zip(c).fold(Q::zero(), |acc, (xi, ci)| acc + xi * ci);
    LpOutcome::Optimal { x, value }
}

/// Finds some `x >= 0` with `A x = b`, if one exists.
pub fn feasible_point(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.first().map_or(0, Vec::len);
    match minimize(&vec![Q::zero(); n], a, b) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

/// Whether `target` is a nonnegative rational combination of `generators`.
pub fn in_cone(target: &[Q], generators: &[Vec<Q>]) -> bool {
    let dim = target.len();
    if generators.is_empty() {
        return target.iter().all(Zero::is_zero);
    }
    // columns are generators
    let a: Vec<Vec<Q>> = (0..dim).map(|i| generators.iter().map(|g| g[i].clone()).collect()).collect();
    feasible_point(&a, target).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, q_vec};

    #[test]
    fn simple_minimum() {
        // min x + y s.t. x + 2y - s = 2 (x,y,s >= 0) -> y = 1, value 1
        let c = q_vec(&[1, 1, 0]);
        let a = vec![q_vec(&[1, 2, -1])];
        match minimize(&c, &a, &q_vec(&[2])) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![q_vec(&[1, 1])];
        assert_eq!(minimize(&q_vec(&[0, 0]), &a, &q_vec(&[-1])), LpOutcome::Infeasible);
        let a = vec![q_vec(&[1, -1])];
        assert_eq!(minimize(&q_vec(&[0, -1]), &a, &q_vec(&[0])), LpOutcome::Unbounded);
    }

    #[test]
    fn cone_membership() {
        let gens = vec![q_vec(&[1, 0]), q_vec(&[1, 1])];
        assert!(in_cone(&q_vec(&[3, 1]), &gens));
        assert!(!in_cone(&q_vec(&[0, 1]), &gens));
        assert!(in_cone(&q_vec(&[0, 0]), &gens));
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let a = vec![q_vec(&[1, 1]), q_vec(&[2, 2])];
        assert!(feasible_point(&a, &q_vec(&[1, 2])).is_some());
        assert!(feasible_point(&a, &q_vec(&[1, 3])).is_none());
    }
}
