//! Dense integer matrices with exact arithmetic: Smith normal form with
//! transforms, saturated kernels, Bareiss determinants and rational solves.
//!
//! Everything is `BigInt`/`BigRational`; sizes here never exceed 22.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl std::fmt::Debug for IntMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(*x);
            }
        }
        m
    }

    pub fn from_bigint_rows(rows: &[Vec<BigInt>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(dim: usize, cols: &[Vec<BigInt>]) -> Self {
        assert!(
            cols.iter().all(|v| v.len() == dim),
            "column length mismatch"
        );
        let mut m = IntMat::zero(dim, cols.len());
        for (j, v) in cols.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..i {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn block_diag(blocks: &[IntMat]) -> IntMat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = IntMat::zero(rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(ro + i, co + j)] = b[(i, j)].clone();
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    /// Determinant by the Bareiss fraction-free algorithm.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    let a = m[(k, j)].clone();
                    let b = m[(p, j)].clone();
                    m[(k, j)] = b;
                    m[(p, j)] = a;
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = num / &prev;
                }
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    pub fn to_rational(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| BigRational::from(self[(i, j)].clone()))
                    .collect()
            })
            .collect()
    }
}

/// Smith normal form `u * m * v = d`.
///
/// `u`, `v` are unimodular, `d` is diagonal with non-negative entries and
/// `d[i] | d[i+1]`.
pub struct Snf {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
}

impl Snf {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        let n = self.d.rows().min(self.d.cols());
        (0..n).filter(|&i| !self.d[(i, i)].is_zero()).count()
    }

    /// Diagonal entries > 1, in divisor-chain order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d[(i, i)].clone())
            .filter(|x| x > &BigInt::one())
            .collect()
    }
}

pub fn smith_normal_form(m: &IntMat) -> Snf {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);

    let swap_rows = |d: &mut IntMat, u: &mut IntMat, a: usize, b: usize| {
        if a == b {
            return;
        }
        for j in 0..d.cols() {
            let x = d[(a, j)].clone();
            d[(a, j)] = d[(b, j)].clone();
            d[(b, j)] = x;
        }
        for j in 0..u.cols() {
            let x = u[(a, j)].clone();
            u[(a, j)] = u[(b, j)].clone();
            u[(b, j)] = x;
        }
    };
    let swap_cols = |d: &mut IntMat, v: &mut IntMat, a: usize, b: usize| {
        if a == b {
            return;
        }
        for i in 0..d.rows() {
            let x = d[(i, a)].clone();
            d[(i, a)] = d[(i, b)].clone();
            d[(i, b)] = x;
        }
        for i in 0..v.rows() {
            let x = v[(i, a)].clone();
            v[(i, a)] = v[(i, b)].clone();
            v[(i, b)] = x;
        }
    };
    // row[a] += q * row[b], col[a] += q * col[b]
    let add_row = |d: &mut IntMat, u: &mut IntMat, a: usize, b: usize, q: &BigInt| {
        for j in 0..d.cols() {
            let x = q * &d[(b, j)];
            d[(a, j)] += x;
        }
        for j in 0..u.cols() {
            let x = q * &u[(b, j)];
            u[(a, j)] += x;
        }
    };
    let add_col = |d: &mut IntMat, v: &mut IntMat, a: usize, b: usize, q: &BigInt| {
        for i in 0..d.rows() {
            let x = q * &d[(i, b)];
            d[(i, a)] += x;
        }
        for i in 0..v.rows() {
            let x = q * &v[(i, b)];
            v[(i, a)] += x;
        }
    };

    let n = rows.min(cols);
    for t in 0..n {
        'pivot: loop {
            // smallest nonzero entry in the remaining block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !d[(i, j)].is_zero()
                        && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'pivot; // block is zero, done
            };
            swap_rows(&mut d, &mut u, t, pi);
            swap_cols(&mut d, &mut v, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if !d[(i, t)].is_zero() {
                    let q = -(&d[(i, t)] / &d[(t, t)]);
                    add_row(&mut d, &mut u, i, t, &q);
                    if !d[(i, t)].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !d[(t, j)].is_zero() {
                    let q = -(&d[(t, j)] / &d[(t, t)]);
                    add_col(&mut d, &mut v, j, t, &q);
                    if !d[(t, j)].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue 'pivot;
            }
            // pivot must divide the rest of the block
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                        add_row(&mut d, &mut u, t, i, &BigInt::one());
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
    }

    for t in 0..n {
        if d[(t, t)].is_negative() {
            for j in 0..cols {
                let x = -d[(t, j)].clone();
                d[(t, j)] = x;
            }
            for j in 0..rows {
                let x = -u[(t, j)].clone();
                u[(t, j)] = x;
            }
        }
    }

    Snf { u, d, v }
}

/// Basis of the saturated integer kernel of `m` (columns).
pub fn kernel_basis(m: &IntMat) -> IntMat {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let cols: Vec<Vec<BigInt>> = (rank..m.cols()).map(|j| snf.v.col(j)).collect();
    IntMat::from_cols(m.cols(), &cols)
}

/// Inverse of a square integer matrix over the rationals.
///
/// Returns `None` when the matrix is singular.
pub fn rational_inverse(m: &IntMat) -> Option<Vec<Vec<BigRational>>> {
    assert!(m.is_square());
    let n = m.rows();
    let mut a = m.to_rational();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, pivot);
        inv.swap(k, pivot);
        let p = a[k][k].clone();
        for j in 0..n {
            a[k][j] /= &p;
            inv[k][j] /= &p;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..n {
                let x = &f * &a[k][j];
                a[i][j] -= x;
                let y = &f * &inv[k][j];
                inv[i][j] -= y;
            }
        }
    }
    Some(inv)
}

pub fn rat_mat_vec(m: &[Vec<BigRational>], v: &[BigInt]) -> Vec<BigRational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(a, b)| a * BigRational::from(b.clone()))
                .sum()
        })
        .collect()
}

/// Outcome of a mod-2 linear solve.
pub enum SolveMod2 {
    None,
    Unique(Vec<u8>),
    Multiple(Vec<u8>),
}

/// Solve `a · x ≡ rhs (mod 2)` where `a` has `vars` columns.
pub fn solve_mod2(a: &IntMat, rhs: &[BigInt]) -> SolveMod2 {
    assert_eq!(a.rows(), rhs.len());
    let rows = a.rows();
    let vars = a.cols();
    // augmented bit matrix
    let mut m: Vec<Vec<u8>> = (0..rows)
        .map(|i| {
            let mut row: Vec<u8> = (0..vars)
                .map(|j| (&a[(i, j)] % 2u8 != BigInt::zero()) as u8)
                .collect();
            row.push((&rhs[i] % 2u8 != BigInt::zero()) as u8);
            row
        })
        .collect();
    let mut pivot_of_col = vec![usize::MAX; vars];
    let mut r = 0;
    for c in 0..vars {
        let Some(p) = (r..rows).find(|&i| m[i][c] == 1) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..rows {
            if i != r && m[i][c] == 1 {
                let src = m[r].clone();
                for (x, s) in m[i].iter_mut().zip(src.iter()) {
                    *x ^= s;
                }
            }
        }
        pivot_of_col[c] = r;
        r += 1;
    }
    // inconsistent row 0 = 1?
    for row in m.iter().skip(r) {
        if row[vars] == 1 {
            return SolveMod2::None;
        }
    }
    let mut x = vec![0u8; vars];
    for c in 0..vars {
        if pivot_of_col[c] != usize::MAX {
            x[c] = m[pivot_of_col[c]][vars];
        }
    }
    if r < vars {
        SolveMod2::Multiple(x)
    } else {
        SolveMod2::Unique(x)
    }
}
