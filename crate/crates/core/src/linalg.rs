//! Dense exact linear algebra: matrices, reduced row-echelon form, solving,
//! kernels, and subspaces with canonical echelon bases.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::field::Field;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F> Index<(usize, usize)> for Mat<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    /// The matrix unit with a single 1 at `(r, c)` (0-based).
    pub fn unit(rows: usize, cols: usize, r: usize, c: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m[(r, c)] = F::one();
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect())
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (c, v) in cols.iter().enumerate() {
            for (r, x) in v.iter().enumerate() {
                m[(r, c)] = x.clone();
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    /// Row-major entries; used as the coordinate vector of a matrix.
    pub fn flat(&self) -> &[F] {
        &self.data
    }

    pub fn into_flat(self) -> Vec<F> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &F) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }

    /// `self += s * o`
    pub fn add_scaled(&mut self, s: &F, o: &Self) {
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.is_zero() {
                *a += s.clone() * b.clone();
            }
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = &o[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = F::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows as u32).is_zero()
    }

    pub fn trace(&self) -> F {
        let mut t = F::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self[(i, i)].clone();
        }
        t
    }

    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows);
        let mut m = Self::zeros(self.rows, self.cols + o.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..o.cols {
                m[(r, self.cols + c)] = o[(r, c)].clone();
            }
        }
        m
    }

    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Mat { rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// Sub-matrix picking the given rows and columns, in order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m[(i, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    /// Embed as a block at `(r0, c0)` of a `rows x cols` zero matrix.
    pub fn embed(&self, rows: usize, cols: usize, r0: usize, c0: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r0 + r, c0 + c)] = self[(r, c)].clone();
            }
        }
        m
    }

    /// Reduced row-echelon form, rank and pivot columns.
    pub fn rref(&self) -> (Self, usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inverse().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m[(r, j)].clone() * inv.clone();
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        let v = m[(r, j)].clone() * f.clone();
                        m[(i, j)] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Basis of the right kernel `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (r, rank, pivots) = self.rref();
        kernel_from_rref(&r, rank, &pivots, self.cols)
    }

    /// Determinant by elimination.
    pub fn det(&self) -> F {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = m.rows;
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else { return F::zero() };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= piv.clone();
            let inv = piv.inverse().unwrap();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() * inv.clone();
                for j in c..n {
                    let v = m[(c, j)].clone() * f.clone();
                    m[(i, j)] -= v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n));
        let (r, rank, pivots) = aug.rref();
        if rank < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(r.select(&rows, &cols))
    }
}

fn kernel_from_rref<F: Field>(r: &Mat<F>, rank: usize, pivots: &[usize], ncols: usize) -> Vec<Vec<F>> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (i, &p) in pivots.iter().enumerate().take(rank) {
            v[p] = -r[(i, free)].clone();
        }
        out.push(v);
    }
    out
}

/// Solve `a * x = b`. `Ok(None)` when the system is inconsistent.
pub fn solve<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Result<Option<Mat<F>>> {
    if a.rows() != b.rows() {
        return Err(Error::Dimension(format!(
            "solve: lhs has {} rows, rhs has {}",
            a.rows(),
            b.rows()
        )));
    }
    let n = a.cols();
    let (r, rank, pivots) = a.hstack(b).rref();
    if pivots.iter().any(|&p| p >= n) {
        return Ok(None);
    }
    let mut x = Mat::zeros(n, b.cols());
    for (i, &p) in pivots.iter().enumerate().take(rank) {
        for c in 0..b.cols() {
            x[(p, c)] = r[(i, n + c)].clone();
        }
    }
    Ok(Some(x))
}

/// Incremental Gaussian elimination over a fixed number of unknowns. Rows
/// arrive one at a time (typically sparse equations); only independent
/// rows are kept.
#[derive(Clone, Debug)]
pub struct RowReducer<F> {
    width: usize,
    // pivot column -> row normalized to 1 at the pivot and 0 before it
    pivots: Vec<Option<Vec<F>>>,
    rank: usize,
}

impl<F: Field> RowReducer<F> {
    pub fn new(width: usize) -> Self {
        RowReducer { width, pivots: vec![None; width], rank: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduce `row` against the stored pivots; what is left is independent
    /// of them (zero iff the row was in their span).
    pub fn reduce(&self, mut row: Vec<F>) -> Vec<F> {
        for c in 0..self.width {
            if row[c].is_zero() {
                continue;
            }
            if let Some(p) = &self.pivots[c] {
                let f = row[c].clone();
                for j in c..self.width {
                    if !p[j].is_zero() {
                        row[j] -= f.clone() * p[j].clone();
                    }
                }
            }
        }
        row
    }

    /// Insert a row; returns true when it increased the rank.
    pub fn push(&mut self, row: Vec<F>) -> bool {
        assert_eq!(row.len(), self.width);
        let mut row = self.reduce(row);
        let Some(c) = row.iter().position(|x| !x.is_zero()) else { return false };
        let inv = row[c].inverse().unwrap();
        for x in row.iter_mut().skip(c) {
            *x = x.clone() * inv.clone();
        }
        self.pivots[c] = Some(row);
        self.rank += 1;
        true
    }

    pub fn push_sparse(&mut self, entries: &[(usize, F)]) -> bool {
        let mut row = vec![F::zero(); self.width];
        for (i, v) in entries {
            row[*i] += v.clone();
        }
        self.push(row)
    }

    /// Fully reduced echelon basis of the row span, pivots ascending.
    pub fn echelon(&self) -> (Vec<Vec<F>>, Vec<usize>) {
        let mut rows: Vec<(usize, Vec<F>)> =
            self.pivots.iter().enumerate().filter_map(|(c, r)| r.clone().map(|r| (c, r))).collect();
        // back-substitute, last pivot first
        for k in (0..rows.len()).rev() {
            let (pc, prow) = rows[k].clone();
            for (_, row) in rows.iter_mut().take(k) {
                if !row[pc].is_zero() {
                    let f = row[pc].clone();
                    for j in pc..self.width {
                        if !prow[j].is_zero() {
                            row[j] -= f.clone() * prow[j].clone();
                        }
                    }
                }
            }
        }
        let piv = rows.iter().map(|(c, _)| *c).collect();
        (rows.into_iter().map(|(_, r)| r).collect(), piv)
    }

    /// Basis of the common solution space of all pushed equations.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (rows, piv) = self.echelon();
        let m = if rows.is_empty() {
            Mat::zeros(0, self.width)
        } else {
            Mat::from_rows(rows)
        };
        kernel_from_rref(&m, piv.len(), &piv, self.width)
    }
}

/// Sparse semi-echelon elimination: each stored row is normalized to 1 at
/// its pivot and vanishes before it. Reduction of a vector leaves a
/// remainder supported on non-pivot columns, which is a canonical
/// representative modulo the row span.
#[derive(Clone, Debug, Default)]
pub struct SparseReducer<F> {
    pivots: HashMap<usize, Vec<(usize, F)>>,
}

pub type SparseVec<F> = BTreeMap<usize, F>;

impl<F: Field> SparseReducer<F> {
    pub fn new() -> Self {
        SparseReducer { pivots: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivots.contains_key(&c)
    }

    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        let mut out = BTreeMap::new();
        while let Some((k, c)) = v.pop_first() {
            if c.is_zero() {
                continue;
            }
            match self.pivots.get(&k) {
                Some(row) => {
                    for (j, x) in row.iter().skip(1) {
                        let e = v.entry(*j).or_insert_with(F::zero);
                        *e -= c.clone() * x.clone();
                    }
                }
                None => {
                    out.insert(k, c);
                }
            }
        }
        out
    }

    /// Insert a row; returns true when it increased the rank.
    pub fn push(&mut self, v: SparseVec<F>) -> bool {
        let r = self.reduce(v);
        let Some((&p, c)) = r.iter().next() else { return false };
        let inv = c.inverse().unwrap();
        let row = r.into_iter().map(|(j, x)| (j, x * inv.clone())).collect();
        self.pivots.insert(p, row);
        true
    }
}

/// Sparse vector from dense entries.
pub fn sparse<F: Field>(v: &[F]) -> SparseVec<F> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// A linear subspace of `F^ambient`, stored by its reduced echelon basis so
/// that equality of subspaces is equality of bases.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {})", self.dim(), self.ambient)
    }
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(|i| unit_vec(ambient, i)))
    }

    pub fn span<I: IntoIterator<Item = Vec<F>>>(ambient: usize, vecs: I) -> Self {
        let mut red = RowReducer::new(ambient);
        for v in vecs {
            assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
            red.push(v);
        }
        let (basis, pivots) = red.echelon();
        Subspace { ambient, basis, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!(
                "subspaces live in dimensions {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Remainder of `v` after reduction by the echelon basis.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut v = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for j in 0..self.ambient {
                if !row[j].is_zero() {
                    v[j] -= f.clone() * row[j].clone();
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::Dimension(format!("vector of length {} vs ambient {}", v.len(), self.ambient)));
        }
        Ok(self.reduce(v).iter().all(|x| x.is_zero()))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        let c: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut back = vec![F::zero(); self.ambient];
        for (x, row) in c.iter().zip(&self.basis) {
            if x.is_zero() {
                continue;
            }
            for j in 0..self.ambient {
                if !row[j].is_zero() {
                    back[j] += x.clone() * row[j].clone();
                }
            }
        }
        if back.as_slice() == v {
            Some(c)
        } else {
            None
        }
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::span(self.ambient, self.basis.iter().chain(&other.basis).cloned()))
    }

    /// Intersection by the Zassenhaus algorithm.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.ambient;
        let mut red = RowReducer::new(2 * n);
        for b in &self.basis {
            let mut row = b.clone();
            row.extend(b.iter().cloned());
            red.push(row);
        }
        for b in &other.basis {
            let mut row = b.clone();
            row.extend(std::iter::repeat(F::zero()).take(n));
            red.push(row);
        }
        let (rows, piv) = red.echelon();
        let vecs = rows.into_iter().zip(piv).filter(|(_, p)| *p >= n).map(|(r, _)| r[n..].to_vec());
        Ok(Self::span(n, vecs))
    }

    /// Image of the subspace under a linear map given as a matrix.
    pub fn image(&self, m: &Mat<F>) -> Self {
        assert_eq!(m.cols(), self.ambient);
        Self::span(m.rows(), self.basis.iter().map(|b| m.mul_vec(b)))
    }

    /// Preimage `{v : m v in self}`.
    pub fn preimage(&self, m: &Mat<F>) -> Self {
        assert_eq!(m.rows(), self.ambient);
        // v in preimage iff m v reduces to zero; reduction is linear
        let cols: Vec<Vec<F>> = (0..m.cols()).map(|c| self.reduce(&m.column(c))).collect();
        let red = Mat::from_columns(self.ambient, &cols);
        Self::span(m.cols(), red.kernel())
    }

    /// Indices of a complement spanned by standard basis vectors (the
    /// non-pivot coordinates).
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let mut is_p = vec![false; self.ambient];
        for &p in &self.pivots {
            is_p[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_p[i]).collect()
    }
}

pub fn unit_vec<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

pub fn add_scaled<F: Field>(acc: &mut [F], s: &F, v: &[F]) {
    if s.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += s.clone() * b.clone();
        }
    }
}

pub fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{F3, Q};
    use num_traits::{One, Zero};

    fn q(rows: &[&[i64]]) -> Mat<Q> {
        Mat::from_i64(rows)
    }

    #[test]
    fn rref_examples() {
        let id = Mat::<Q>::identity(3);
        let (r, rank, _) = id.rref();
        assert_eq!((r, rank), (id, 3));
        let z = Mat::<Q>::zeros(2, 2);
        assert_eq!(z.rref().1, 0);
        assert_eq!(z.rref().0, z);
        let (r, rank, _) = q(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(rank, 1);
        assert_eq!(r, q(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn solve_examples() {
        let b = q(&[&[3], &[-1]]);
        assert_eq!(solve(&Mat::identity(2), &b).unwrap().unwrap(), b);
        assert!(solve(&Mat::<Q>::zeros(2, 2), &b).unwrap().is_none());
        let x = solve(&q(&[&[2]]), &q(&[&[1]])).unwrap().unwrap();
        assert_eq!(x[(0, 0)], Q::one() / Q::from_i64(2));
        assert!(solve(&Mat::<Q>::identity(2), &q(&[&[1]])).is_err());
    }

    #[test]
    fn subspace_examples() {
        let e1 = vec![Q::one(), Q::zero()];
        let e2 = vec![Q::zero(), Q::one()];
        let s1 = Subspace::span(2, vec![e1.clone()]);
        let s2 = Subspace::span(2, vec![e2.clone()]);
        assert!(s1.contains(&e1).unwrap());
        assert_eq!(s1.intersect(&s2).unwrap(), Subspace::zero(2));
        let s3 = Subspace::span(2, vec![vec![Q::one(), Q::one()]]);
        assert_eq!(s1.sum(&s3).unwrap(), Subspace::full(2));
        assert!(s1.sum(&Subspace::zero(3)).is_err());
        assert_eq!(s3.coordinates(&[Q::from_i64(2), Q::from_i64(2)]), Some(vec![Q::from_i64(2)]));
        assert_eq!(s3.coordinates(&e1), None);
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Mat::<F3>::from_i64(&[&[1, 1], &[0, 2]]);
        assert_eq!(m.det(), F3::from_i64(2));
        assert_eq!(m.mul(&m.inverse().unwrap()), Mat::identity(2));
        assert!(Mat::<Q>::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn sparse_reduction_is_canonical() {
        let mut r = SparseReducer::<Q>::new();
        let v = |e: &[(usize, i64)]| -> SparseVec<Q> { e.iter().map(|&(i, x)| (i, Q::from_i64(x))).collect() };
        assert!(r.push(v(&[(0, 1), (2, 1)])));
        assert!(r.push(v(&[(0, 1), (1, 1)])));
        assert!(!r.push(v(&[(1, 1), (2, -1)])));
        // e0 == -e2 == -e1 modulo the span
        assert_eq!(r.reduce(v(&[(0, 1)])), v(&[(2, -1)]));
        assert_eq!(r.reduce(v(&[(1, 1)])), v(&[(2, 1)]));
        assert_eq!(r.rank(), 2);
    }

    #[test]
    fn preimage_of_subspace() {
        // m projects onto first coordinate; preimage of <e2> is <e2>
        let m = q(&[&[1, 0], &[0, 0]]);
        let s = Subspace::span(2, vec![vec![Q::zero(), Q::one()]]);
        assert_eq!(s.preimage(&m), s);
    }
}
