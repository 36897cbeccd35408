//! Exact linear algebra over the rationals.
//!
//! Matrices are plain row vectors of [`Q`]. Everything here is small (tens to a
//! few hundred rows), so straightforward Gauss-Jordan elimination is used.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn q_vec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

/// Converts an integral rational to `i64`, `None` if not integral or too large.
pub fn to_i64(x: &Q) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.to_integer()).ok()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_i(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<Q>>, ncols: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Rank by forward elimination only (cheaper than a full RREF).
pub fn rank(rows: &[Vec<Q>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<Q>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot_row = std::mem::take(&mut m[r]);
        for row in m.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot_row[c];
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        m[r] = pivot_row;
        r += 1;
    }
    r
}

/// Basis of the right null space `{x : A x = 0}`.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let (r, pivots) = rref(rows.to_vec(), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Solves `A x = b` for square or overdetermined consistent systems with a
/// unique solution. `None` if inconsistent or underdetermined.
pub fn solve_unique(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let ncols = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(aug, ncols + 1);
    if pivots.contains(&ncols) || pivots.len() != ncols {
        return None;
    }
    Some(r.iter().map(|row| row[ncols].clone()).collect())
}

/// Integer determinant by Bareiss elimination (exact for small matrices).
pub fn det_i64(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        return 1;
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// A linear subspace of `Q^n`, stored by its reduced row echelon basis so that
/// equal subspaces have identical representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Q>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis =
            (0..ambient).map(|i| (0..ambient).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
        Subspace { ambient, basis }
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<Q>>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient));
        let (basis, _) = rref(vectors, ambient);
        Subspace { ambient, basis }
    }

    /// Span of standard basis vectors.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let vectors = indices
            .iter()
            .map(|&i| (0..ambient).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect();
        Self::span(ambient, vectors)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, v)
    }

    /// Annihilator with respect to the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        Subspace::span(self.ambient, nullspace(&self.basis, self.ambient))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.is_full() {
            return other.clone();
        }
        if other.is_full() {
            return self.clone();
        }
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    pub fn contains_vector(&self, v: &[Q]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank(&rows) == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        if other.is_full() || self.is_zero() {
            return true;
        }
        self.basis.iter().all(|v| other.contains_vector(v))
    }
}

pub fn abs_gcd(values: &[i64]) -> i64 {
    values.iter().fold(0i64, |g, &x| num_integer::gcd(g, x.abs()))
}

pub fn is_positive(x: &Q) -> bool {
    x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace_agree() {
        let a = vec![q_vec(&[1, 2, 3]), q_vec(&[2, 4, 6]), q_vec(&[0, 1, 1])];
        assert_eq!(rank(&a), 2);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            assert!(dot(row, &ns[0]).is_zero());
        }
    }

    #[test]
    fn determinant_small() {
        assert_eq!(det_i64(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det_i64(&[vec![-1, 1], vec![0, 1]]), -1);
        assert_eq!(det_i64(&[vec![2, 0, 0], vec![0, 3, 0], vec![1, 1, 1]]), 6);
        assert_eq!(det_i64(&[vec![1, 2], vec![2, 4]]), 0);
    }

    #[test]
    fn subspace_intersection() {
        let xy = Subspace::coordinate(3, &[0, 1]);
        let yz = Subspace::coordinate(3, &[1, 2]);
        let y = xy.intersect(&yz);
        assert_eq!(y, Subspace::coordinate(3, &[1]));
        assert!(y.is_subspace_of(&xy));
        let diag = Subspace::span(3, vec![q_vec(&[1, 1, 0])]);
        assert!(diag.intersect(&Subspace::coordinate(3, &[0])).is_zero());
        assert_eq!(xy.sum(&yz), Subspace::full(3));
    }

    #[test]
    fn solve_unique_system() {
        let a = vec![q_vec(&[0, 1]), q_vec(&[1, 0])];
        let x = solve_unique(&a, &q_vec(&[2, 3])).unwrap();
        assert_eq!(x, q_vec(&[3, 2]));
    }
}
