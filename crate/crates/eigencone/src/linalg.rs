//! ∞-norm machinery on interval and point matrices: norm upper bounds,
//! certified lower bounds on inverse norms, exact rational inverses for small
//! point matrices, and interval matrix products.
//!
//! Interval matrices store rational rectangles, so products and norms of
//! exactly-parsed input stay exact; float views are derived on demand with
//! outward rounding.

use crate::exact::{to_f64_down, to_f64_up, Bound, Direction, QIv, QRect, Rat};
use crate::interval::{CRect, Interval};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact inversion is only attempted up to this size; beyond it rational
/// entry growth in elimination makes the certificates the better tool.
pub const EXACT_INVERSE_CAP: usize = 64;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operation requires a square matrix")]
    NotSquare,
    #[error("matrix is singular over the rationals")]
    SingularMatrix,
    #[error("block split {k} out of range for {n}×{n}")]
    BadSplit { k: usize, n: usize },
}

/// Dense matrix of rational complex rectangles with an optional block split
/// index k separating the leading k×k block from the trailing one.
#[derive(Debug, Clone, PartialEq)]
pub struct IMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<QRect>,
    split_k: Option<usize>,
}

impl IMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<QRect>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{rows}×{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(IMatrix { rows, cols, entries, split_k: None })
    }

    pub fn from_rows(rows: Vec<Vec<QRect>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        IMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Point matrix from rational rows (each entry a real point).
    pub fn from_rational_rows(rows: Vec<Vec<Rat>>) -> Result<Self, LinalgError> {
        IMatrix::from_rows(
            rows.into_iter()
                .map(|row| row.into_iter().map(QRect::point_real).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![QRect::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = QRect::point_real(Rat::one());
        }
        IMatrix { rows: n, cols: n, entries, split_k: None }
    }

    pub fn with_split(mut self, k: usize) -> Result<Self, LinalgError> {
        if self.rows != self.cols || k > self.rows {
            return Err(LinalgError::BadSplit { k, n: self.rows });
        }
        self.split_k = Some(k);
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn split_k(&self) -> Option<usize> {
        self.split_k
    }

    pub fn entry(&self, i: usize, j: usize) -> &QRect {
        &self.entries[i * self.cols + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: QRect) {
        self.entries[i * self.cols + j] = v;
    }

    /// Outward-rounded float view of one entry.
    pub fn entry_rect(&self, i: usize, j: usize) -> CRect {
        let e = self.entry(i, j);
        let iv = |q: &QIv| {
            Interval::new(to_f64_down(q.lo()), to_f64_up(q.hi())).expect("finite endpoints")
        };
        CRect::new(iv(&e.re), iv(&e.im))
    }

    pub fn is_point(&self) -> bool {
        self.entries.iter().all(QRect::is_point)
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(QRect::is_real)
    }

    /// Exact rational view of a real point matrix.
    pub fn as_qmatrix(&self) -> Option<QMatrix> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(e.as_real_point()?.clone());
        }
        Some(QMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> IMatrix {
        let mut entries = Vec::with_capacity((r1 - r0) * (c1 - c0));
        for i in r0..r1 {
            for j in c0..c1 {
                entries.push(self.entry(i, j).clone());
            }
        }
        IMatrix { rows: r1 - r0, cols: c1 - c0, entries, split_k: None }
    }

    /// The four block views at split k.
    pub fn blocks(&self, k: usize) -> Result<(IMatrix, IMatrix, IMatrix, IMatrix), LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare);
        }
        let n = self.rows;
        if k > n {
            return Err(LinalgError::BadSplit { k, n });
        }
        Ok((
            self.submatrix(0, k, 0, k),
            self.submatrix(0, k, k, n),
            self.submatrix(k, n, 0, k),
            self.submatrix(k, n, k, n),
        ))
    }

    /// A − zI for square A.
    pub fn sub_scalar_diag(&self, z: &QRect) -> Result<IMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare);
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            let shifted = self.entry(i, i).sub(z);
            out.set_entry(i, i, shifted);
        }
        Ok(out)
    }

    /// Similarity transform X⁻¹AX for diagonal X = diag(x), x > 0 entrywise.
    pub fn scale_diag(&self, x: &[Rat]) -> Result<IMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare);
        }
        if x.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "scale vector length {} for {}×{} matrix",
                x.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let factor = &x[j] / &x[i];
                out.set_entry(i, j, self.entry(i, j).scale(&factor));
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> IMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.entry(i, j).clone());
            }
        }
        IMatrix { rows: self.cols, cols: self.rows, entries, split_k: self.split_k }
    }
}

/// Dense matrix of exact rationals, used whenever a computation must be
/// bit-exact (LP input, exact inverses).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{rows}×{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(QMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        QMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Rat::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Rat::one();
        }
        QMatrix { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: Rat) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn to_imatrix(&self) -> IMatrix {
        IMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().cloned().map(QRect::point_real).collect(),
            split_k: None,
        }
    }

    pub fn matvec(&self, x: &[Rat]) -> Result<Vec<Rat>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector length {} for {}×{} matrix",
                x.len(),
                self.rows,
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.entry(i, j) * &x[j])
                    .fold(Rat::zero(), |acc, t| acc + t)
            })
            .collect())
    }

    pub fn mul(&self, o: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.cols != o.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    acc += self.entry(i, k) * o.entry(k, j);
                }
                entries.push(acc);
            }
        }
        Ok(QMatrix { rows: self.rows, cols: o.cols, entries })
    }

    pub fn scale_diag(&self, x: &[Rat]) -> Result<QMatrix, LinalgError> {
        if self.rows != self.cols || x.len() != self.rows {
            return Err(LinalgError::DimensionMismatch("diagonal scale".into()));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set_entry(i, j, self.entry(i, j) * &x[j] / &x[i]);
            }
        }
        Ok(out)
    }

    /// Exact max-row-sum norm.
    pub fn inf_norm(&self) -> Rat {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.entry(i, j).abs())
                    .fold(Rat::zero(), |acc, t| acc + t)
            })
            .max()
            .unwrap_or_else(Rat::zero)
    }
}

/// Exact rational inverse by Gauss–Jordan elimination with row pivoting.
pub fn exact_inv(m: &QMatrix) -> Result<QMatrix, LinalgError> {
    if m.rows != m.cols {
        return Err(LinalgError::NotSquare);
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut inv = QMatrix::identity(n);
    for col in 0..n {
        // pick the largest-magnitude pivot among the remaining rows; any
        // nonzero pivot is exact, but larger pivots keep intermediate
        // rationals smaller
        let pivot = (col..n)
            .filter(|&r| !a.entry(r, col).is_zero())
            .max_by(|&r, &s| a.entry(r, col).abs().cmp(&a.entry(s, col).abs()))
            .ok_or(LinalgError::SingularMatrix)?;
        if pivot != col {
            for j in 0..n {
                let tmp = a.entry(pivot, j).clone();
                a.set_entry(pivot, j, a.entry(col, j).clone());
                a.set_entry(col, j, tmp);
                let tmp = inv.entry(pivot, j).clone();
                inv.set_entry(pivot, j, inv.entry(col, j).clone());
                inv.set_entry(col, j, tmp);
            }
        }
        let p = a.entry(col, col).clone();
        for j in 0..n {
            a.set_entry(col, j, a.entry(col, j) / &p);
            inv.set_entry(col, j, inv.entry(col, j) / &p);
        }
        for r in 0..n {
            if r == col || a.entry(r, col).is_zero() {
                continue;
            }
            let f = a.entry(r, col).clone();
            for j in 0..n {
                let av = a.entry(r, j) - &f * a.entry(col, j);
                a.set_entry(r, j, av);
                let iv = inv.entry(r, j) - &f * inv.entry(col, j);
                inv.set_entry(r, j, iv);
            }
        }
    }
    Ok(inv)
}

/// Exact value of ‖M⁻¹‖∞⁻¹ for an invertible rational matrix.
pub fn inv_inf_norm_exact(m: &QMatrix) -> Result<Rat, LinalgError> {
    let inv = exact_inv(m)?;
    let norm = inv.inf_norm();
    if norm.is_zero() {
        // only the 0×0 matrix has a zero-norm inverse
        return Err(LinalgError::NotSquare);
    }
    Ok(norm.recip())
}

fn mag_direction(m: &IMatrix) -> Direction {
    // row sums of magnitudes are exact rationals unless a genuinely complex
    // rectangle forced a √ upper bound
    let exact = m
        .entries
        .iter()
        .all(|e| e.im.is_zero() || (e.re.lo().is_zero() && e.re.hi().is_zero()));
    if exact {
        Direction::Exact
    } else {
        Direction::Upper
    }
}

/// Upper bound of the max-row-sum norm over every point matrix in M; exact
/// (and tagged so) when entries are real or purely imaginary.
pub fn inf_norm_upper(m: &IMatrix) -> Bound {
    let q = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| m.entry(i, j).mag_upper())
                .fold(Rat::zero(), |acc, t| acc + t)
        })
        .max()
        .unwrap_or_else(Rat::zero);
    Bound { q, dir: mag_direction(m) }
}

/// Lower bound of the max-row-sum norm valid for every point matrix in M:
/// each row sum of entry migs lower-bounds that member row's sum, and the
/// member max is at least any single row.
pub fn inf_norm_lower(m: &IMatrix) -> Bound {
    let q = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| m.entry(i, j).mig_lower())
                .fold(Rat::zero(), |acc, t| acc + t)
        })
        .max()
        .unwrap_or_else(Rat::zero);
    Bound::lower(q)
}

/// Diagonal-dominance certificate: S = min_i (mig(m_ii) − Σ_{j≠i} mag(m_ij)).
/// When S > 0 it is a certified lower bound of ‖M⁻¹‖∞⁻¹ for every point
/// matrix in M; a nonpositive S just means "no certificate".
pub fn inv_norm_lower_dd(m: &IMatrix) -> Result<Bound, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare);
    }
    let s = (0..m.rows())
        .map(|i| {
            let mut row = m.entry(i, i).mig_lower();
            for j in 0..m.cols() {
                if j != i {
                    row -= m.entry(i, j).mag_upper();
                }
            }
            row
        })
        .min()
        .expect("square matrix is nonempty");
    Ok(Bound::lower(s))
}

/// Diagonal-split certificate for ‖(M−zI)⁻¹‖∞⁻¹:
/// (min_i mig(m_ii − z)) − ‖offdiag(M)‖. Nonpositive means "no certificate".
pub fn resolvent_lower(m: &IMatrix, z: &QRect) -> Result<Bound, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare);
    }
    let diag_min = (0..m.rows())
        .map(|i| m.entry(i, i).sub(z).mig_lower())
        .min()
        .expect("square matrix is nonempty");
    let off = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .filter(|&j| j != i)
                .map(|j| m.entry(i, j).mag_upper())
                .fold(Rat::zero(), |acc, t| acc + t)
        })
        .max()
        .unwrap_or_else(Rat::zero);
    Ok(Bound::lower(diag_min - off))
}

/// Best available certified lower bound of ‖(M−zI)⁻¹‖∞⁻¹: the max of the
/// diagonal-dominance route, the diagonal-split route, and, for real point
/// data within the exact-inverse cap, the exact rational value.
pub fn inv_norm_lower_best(m: &IMatrix, z: &QRect) -> Result<Bound, LinalgError> {
    let shifted = m.sub_scalar_diag(z)?;
    let mut best = inv_norm_lower_dd(&shifted)?;
    let res = resolvent_lower(m, z)?;
    if res.q > best.q {
        best = res;
    }
    if shifted.rows() <= EXACT_INVERSE_CAP {
        if let Some(q) = shifted.as_qmatrix() {
            let exact = match inv_inf_norm_exact(&q) {
                Ok(v) => Bound::exact(v),
                Err(LinalgError::SingularMatrix) => Bound::exact(Rat::zero()),
                Err(e) => return Err(e),
            };
            if exact.q > best.q || (exact.q == best.q && best.dir != Direction::Exact) {
                best = exact;
            }
        }
    }
    Ok(best)
}

/// Entrywise interval enclosure of all products of point matrices drawn from
/// A and B. Exact at the rational-rectangle level.
pub fn imatrix_mul(a: &IMatrix, b: &IMatrix) -> Result<IMatrix, LinalgError> {
    if a.cols() != b.rows() {
        return Err(LinalgError::DimensionMismatch(format!(
            "{}×{} times {}×{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let mut entries = Vec::with_capacity(a.rows() * b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut acc = QRect::zero();
            for k in 0..a.cols() {
                acc = acc.add(&a.entry(i, k).mul(b.entry(k, j)));
            }
            entries.push(acc);
        }
    }
    let mut out = IMatrix::new(a.rows(), b.cols(), entries)?;
    if a.split_k == b.split_k {
        out.split_k = a.split_k;
    }
    Ok(out)
}
