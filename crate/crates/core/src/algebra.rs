//! Finite-dimensional algebras realized as subalgebras of `Mat_N(K)`,
//! optionally equipped with a complete set of orthogonal idempotents
//! ("frame") and a basis adapted to the Peirce decomposition.

use std::sync::OnceLock;

use serde_json::json;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Mat, RowReducer, Subspace};

/// A subalgebra of `Mat_N(K)` given by a linearly independent basis.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra<F: Field> {
    label: String,
    size: usize,
    basis: Vec<Mat<F>>,
    span: Subspace<F>,
    // echelon basis row r equals sum_s transform[(r, s)] * basis[s]
    transform: Mat<F>,
    unit: Mat<F>,
    frame: Vec<Mat<F>>,
    frame_labels: Vec<String>,
    blocks: Vec<(usize, usize)>,
    radical: OnceLock<std::result::Result<Radical<F>, String>>,
}

/// Radical data computed from a frame: residue functionals on the local
/// corners and the radical as a subspace of coordinate space.
#[derive(Clone, Debug)]
pub struct Radical<F: Field> {
    /// `residue[a][k]`: residue of basis element `k` (lying in block `(a, a)`).
    pub residue: Vec<Vec<(usize, F)>>,
    /// Radical as a subspace of `K^dim` (coordinates in the algebra basis).
    pub space: Subspace<F>,
    /// `iso[a][b]`: whether frame idempotents `a` and `b` are isomorphic.
    pub iso: Vec<Vec<bool>>,
}

impl<F: Field> MatrixAlgebra<F> {
    /// Build from a basis; checks independence, closure and the existence of a unit.
    pub fn new(label: impl Into<String>, size: usize, basis: Vec<Mat<F>>) -> Result<Self> {
        let label = label.into();
        for b in &basis {
            if b.rows() != size || b.cols() != size {
                return Err(Error::Dimension(format!("{label}: basis matrix is not {size}x{size}")));
            }
        }
        let k = basis.len();
        let nn = size * size;
        let mut aug = Mat::zeros(k, nn + k);
        for (r, b) in basis.iter().enumerate() {
            for (c, x) in b.flat().iter().enumerate() {
                aug[(r, c)] = x.clone();
            }
            aug[(r, nn + r)] = F::one();
        }
        let (red, rank, pivots) = aug.rref();
        if pivots.iter().take(rank).any(|&p| p >= nn) || rank < k {
            return Err(Error::Invalid(format!("{label}: basis is linearly dependent")));
        }
        let all_rows: Vec<usize> = (0..k).collect();
        let tcols: Vec<usize> = (nn..nn + k).collect();
        let transform = red.select(&all_rows, &tcols);
        let span = Subspace::span(nn, basis.iter().map(|b| b.flat().to_vec()));
        let mut alg = MatrixAlgebra {
            label,
            size,
            basis,
            span,
            transform,
            unit: Mat::zeros(size, size),
            frame: Vec::new(),
            frame_labels: Vec::new(),
            blocks: Vec::new(),
            radical: OnceLock::new(),
        };
        for a in &alg.basis {
            for b in &alg.basis {
                if !alg.contains(&a.mul(b)) {
                    return Err(Error::Invalid(format!("{}: basis is not closed under products", alg.label)));
                }
            }
        }
        alg.unit = alg.find_unit()?;
        Ok(alg)
    }

    /// Subalgebra generated by the given matrices (closure under products).
    pub fn generated(label: impl Into<String>, size: usize, gens: &[Mat<F>]) -> Result<Self> {
        let nn = size * size;
        let mut red = RowReducer::new(nn);
        let mut basis: Vec<Mat<F>> = Vec::new();
        for g in gens {
            if red.push(g.flat().to_vec()) {
                basis.push(g.clone());
            }
        }
        let mut start = 0;
        while start < basis.len() {
            let end = basis.len();
            let mut fresh = Vec::new();
            for i in 0..end {
                for j in 0..end {
                    if i < start && j < start {
                        continue;
                    }
                    let p = basis[i].mul(&basis[j]);
                    if red.push(p.flat().to_vec()) {
                        fresh.push(p);
                    }
                }
            }
            basis.extend(fresh);
            start = end;
        }
        Self::new(label, size, basis)
    }

    fn find_unit(&self) -> Result<Mat<F>> {
        // unknown u = sum c_s b_s with u b_t = b_t = b_t u
        let k = self.dim();
        if k == 0 {
            return Ok(Mat::zeros(self.size, self.size));
        }
        let nn = self.size * self.size;
        let mut red = RowReducer::new(k + 1);
        for t in 0..k {
            let lhs: Vec<Mat<F>> = self.basis.iter().map(|b| b.mul(&self.basis[t])).collect();
            let rhs: Vec<Mat<F>> = self.basis.iter().map(|b| self.basis[t].mul(b)).collect();
            for (prods, target) in [(&lhs, &self.basis[t]), (&rhs, &self.basis[t])] {
                for e in 0..nn {
                    let mut row: Vec<F> = prods.iter().map(|p| p.flat()[e].clone()).collect();
                    row.push(-target.flat()[e].clone());
                    if row.iter().any(|x| !x.is_zero()) {
                        red.push(row);
                    }
                }
            }
        }
        let ns = red.nullspace();
        let sol = ns
            .iter()
            .find(|v| !v[k].is_zero())
            .ok_or_else(|| Error::Invalid(format!("{}: algebra has no unit", self.label)))?;
        let scale = sol[k].inverse().unwrap();
        let coords: Vec<F> = sol[..k].iter().map(|x| x.clone() * scale.clone()).collect();
        Ok(self.element(&coords))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Matrix size `N`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mat<F>] {
        &self.basis
    }

    pub fn unit(&self) -> &Mat<F> {
        &self.unit
    }

    /// The algebra as a subspace of `K^{N*N}`.
    pub fn subspace(&self) -> &Subspace<F> {
        &self.span
    }

    pub fn contains(&self, m: &Mat<F>) -> bool {
        m.rows() == self.size && m.cols() == self.size && self.span.contains(m.flat()).unwrap_or(false)
    }

    /// Coordinates in the algebra basis, if `m` lies in the algebra.
    pub fn coords(&self, m: &Mat<F>) -> Option<Vec<F>> {
        let ech = self.span.coordinates(m.flat())?;
        let k = self.dim();
        let mut out = vec![F::zero(); k];
        for (r, c) in ech.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (s, o) in out.iter_mut().enumerate() {
                let t = &self.transform[(r, s)];
                if !t.is_zero() {
                    *o += c.clone() * t.clone();
                }
            }
        }
        Some(out)
    }

    pub fn element(&self, coords: &[F]) -> Mat<F> {
        let mut m = Mat::zeros(self.size, self.size);
        for (c, b) in coords.iter().zip(&self.basis) {
            m.add_scaled(c, b);
        }
        m
    }

    /// Product of basis elements in coordinates.
    pub fn product_coords(&self, s: usize, t: usize) -> Vec<F> {
        self.coords(&self.basis[s].mul(&self.basis[t])).expect("closed under products")
    }

    /// Matrix of left multiplication by `x` in the algebra basis.
    pub fn left_regular(&self, x: &Mat<F>) -> Mat<F> {
        let cols: Vec<Vec<F>> = self.basis.iter().map(|b| self.coords(&x.mul(b)).expect("closed")).collect();
        Mat::from_columns(self.dim(), &cols)
    }

    /// Check associativity through the coordinate map (a sanity check on
    /// the coordinate machinery; matrix products are associative).
    pub fn is_subalgebra_of(&self, other: &MatrixAlgebra<F>) -> bool {
        self.size == other.size && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn same_subspace(&self, other: &MatrixAlgebra<F>) -> bool {
        self.size == other.size && self.span == other.span
    }

    /// Corner algebra `e A e` for an idempotent `e` of the algebra.
    pub fn corner(&self, label: impl Into<String>, e: &Mat<F>) -> Result<Self> {
        let gens: Vec<Mat<F>> = self.basis.iter().map(|b| e.mul(b).mul(e)).collect();
        let nn = self.size * self.size;
        let mut red = RowReducer::new(nn);
        let basis: Vec<Mat<F>> = gens.into_iter().filter(|g| red.push(g.flat().to_vec())).collect();
        Self::new(label, self.size, basis)
    }

    /// Attach a frame of orthogonal idempotents summing to the unit, and
    /// switch to a Peirce-homogeneous basis (the current basis is kept if it
    /// already is homogeneous).
    pub fn with_frame(mut self, labels: Vec<String>, frame: Vec<Mat<F>>) -> Result<Self> {
        if labels.len() != frame.len() {
            return Err(Error::Invalid("frame labels and idempotents differ in number".into()));
        }
        let mut sum = Mat::zeros(self.size, self.size);
        for (a, e) in frame.iter().enumerate() {
            if !self.contains(e) {
                return Err(Error::Invalid(format!("{}: idempotent {} not in algebra", self.label, labels[a])));
            }
            for (b, f) in frame.iter().enumerate() {
                let p = e.mul(f);
                let ok = if a == b { &p == e } else { p.is_zero() };
                if !ok {
                    return Err(Error::Invalid(format!(
                        "{}: frame elements {} and {} are not orthogonal idempotents",
                        self.label, labels[a], labels[b]
                    )));
                }
            }
            sum = sum.add(e);
        }
        if sum != self.unit {
            return Err(Error::Invalid(format!("{}: frame does not sum to the unit", self.label)));
        }
        let block_of = |m: &Mat<F>| -> Option<(usize, usize)> {
            for (a, e) in frame.iter().enumerate() {
                for (b, f) in frame.iter().enumerate() {
                    if &e.mul(m).mul(f) == m {
                        return Some((a, b));
                    }
                }
            }
            None
        };
        let homogeneous: Option<Vec<(usize, usize)>> = self.basis.iter().map(&block_of).collect();
        let (basis, blocks) = match homogeneous {
            Some(bl) => (self.basis.clone(), bl),
            None => {
                let mut basis = Vec::new();
                let mut blocks = Vec::new();
                for (a, e) in frame.iter().enumerate() {
                    for (b, f) in frame.iter().enumerate() {
                        let mut red = RowReducer::new(self.size * self.size);
                        for x in &self.basis {
                            let y = e.mul(x).mul(f);
                            if red.push(y.flat().to_vec()) {
                                basis.push(y);
                                blocks.push((a, b));
                            }
                        }
                    }
                }
                (basis, blocks)
            }
        };
        let label = self.label.clone();
        let mut alg = if basis == self.basis { self.clone() } else { Self::new(label, self.size, basis)? };
        alg.frame = frame;
        alg.frame_labels = labels;
        alg.blocks = blocks;
        alg.radical = OnceLock::new();
        self = alg;
        Ok(self)
    }

    pub fn frame(&self) -> &[Mat<F>] {
        &self.frame
    }

    pub fn frame_labels(&self) -> &[String] {
        &self.frame_labels
    }

    pub fn frame_index(&self, label: &str) -> Option<usize> {
        self.frame_labels.iter().position(|l| l == label)
    }

    /// Peirce block `(a, b)` of each basis element (element lies in `e_a A e_b`).
    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    /// Basis indices lying in `e_a A e_b`.
    pub fn block_indices(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.blocks[k] == (a, b)).collect()
    }

    /// Radical computed from the frame; requires local corners with residue field `K`.
    pub fn radical(&self) -> Result<&Radical<F>> {
        self.radical
            .get_or_init(|| self.compute_radical().map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| Error::Invalid(e.clone()))
    }

    fn residue_of(&self, e: &Mat<F>, x: &Mat<F>) -> Result<F> {
        // matrix of x on the column space of e
        let (_, _, colpiv) = e.rref();
        let v = Mat::from_columns(self.size, &colpiv.iter().map(|&c| e.column(c)).collect::<Vec<_>>());
        let xv = x.mul(&v);
        let restricted = crate::linalg::solve(&v, &xv)?
            .ok_or_else(|| Error::Invalid("corner element does not preserve the idempotent image".into()))?;
        let r = restricted.rows();
        let p = F::characteristic();
        let candidate = if p == 0 || (r as u64) % p != 0 {
            Some(restricted.trace() * F::from_i64(r as i64).inverse().unwrap())
        } else {
            F::elements().and_then(|els| {
                els.into_iter().find(|l| restricted.sub(&Mat::identity(r).scale(l)).is_nilpotent())
            })
        };
        match candidate {
            Some(l) if restricted.sub(&Mat::identity(r).scale(&l)).is_nilpotent() => Ok(l),
            _ => Err(Error::Invalid(format!("{}: corner is not local with residue field K", self.label))),
        }
    }

    fn compute_radical(&self) -> Result<Radical<F>> {
        if self.frame.is_empty() {
            return Err(Error::Invalid(format!("{}: radical needs a frame", self.label)));
        }
        let r = self.frame.len();
        let k = self.dim();
        let mut residue = vec![Vec::new(); r];
        for (a, res) in residue.iter_mut().enumerate() {
            for idx in self.block_indices(a, a) {
                let l = self.residue_of(&self.frame[a], &self.basis[idx])?;
                if !l.is_zero() {
                    res.push((idx, l));
                }
            }
            // the residue must be multiplicative on the corner
            let corner = self.block_indices(a, a);
            let lam = |v: &[F]| -> F {
                let mut s = F::zero();
                for (i, l) in res.iter() {
                    s += v[*i].clone() * l.clone();
                }
                s
            };
            let mut kernel_gens = Vec::new();
            for &x in &corner {
                let lx = lam(&crate::linalg::unit_vec(k, x));
                let mut d = crate::linalg::unit_vec::<F>(k, x);
                let ea = self.coords(&self.frame[a]).unwrap();
                crate::linalg::add_scaled(&mut d, &(-lx.clone()), &ea);
                kernel_gens.push(self.element(&d));
                for &y in &corner {
                    let ly = lam(&crate::linalg::unit_vec(k, y));
                    if lam(&self.product_coords(x, y)) != lx.clone() * ly {
                        return Err(Error::Invalid(format!("{}: residue map is not multiplicative", self.label)));
                    }
                }
            }
            // ker of the residue is nilpotent
            let mut power = kernel_gens.clone();
            for _ in 0..=corner.len() {
                if power.iter().all(|m| m.is_zero()) {
                    break;
                }
                let mut next = Vec::new();
                let mut red = RowReducer::new(self.size * self.size);
                for p in &power {
                    for g in &kernel_gens {
                        let q = p.mul(g);
                        if red.push(q.flat().to_vec()) {
                            next.push(q);
                        }
                    }
                }
                power = next;
            }
            if !power.iter().all(|m| m.is_zero()) {
                return Err(Error::Invalid(format!("{}: corner {} is not local", self.label, self.frame_labels[a])));
            }
        }
        let lam = |a: usize, v: &[F]| -> F {
            let mut s = F::zero();
            for (i, l) in &residue[a] {
                s += v[*i].clone() * l.clone();
            }
            s
        };
        let mut gens = Vec::new();
        let mut iso = vec![vec![false; r]; r];
        for a in 0..r {
            for b in 0..r {
                let xs = self.block_indices(a, b);
                let ys = self.block_indices(b, a);
                // x = sum c_s xs[s]; condition: lam_a(x y) = 0 for y in ys
                let mut red = RowReducer::new(xs.len());
                for &y in &ys {
                    let row: Vec<F> = xs.iter().map(|&x| lam(a, &self.product_coords(x, y))).collect();
                    red.push(row);
                }
                iso[a][b] = red.rank() > 0;
                for sol in red.nullspace() {
                    let mut v = vec![F::zero(); k];
                    for (c, &x) in sol.iter().zip(&xs) {
                        v[x] = c.clone();
                    }
                    gens.push(v);
                }
            }
        }
        Ok(Radical { residue, space: Subspace::span(k, gens), iso })
    }

    /// Radical as the kernel of the trace form `(x, y) -> tr(xy)`; valid in
    /// characteristic 0 or `p > N`.
    pub fn radical_trace_form(&self) -> Result<Subspace<F>> {
        let p = F::characteristic();
        if p != 0 && p <= self.size as u64 {
            return Err(Error::Invalid(format!(
                "trace-form radical needs characteristic 0 or larger than {}",
                self.size
            )));
        }
        let k = self.dim();
        let mut gram = Mat::zeros(k, k);
        for s in 0..k {
            for t in 0..k {
                gram[(s, t)] = self.basis[s].mul(&self.basis[t]).trace();
            }
        }
        Ok(Subspace::span(k, gram.kernel()))
    }

    /// Matrices spanning the radical.
    pub fn radical_matrices(&self) -> Result<Vec<Mat<F>>> {
        let rad = self.radical()?;
        Ok(rad.space.basis().iter().map(|v| self.element(v)).collect())
    }

    /// Basic: the frame idempotents are pairwise non-isomorphic.
    pub fn is_basic(&self) -> Result<bool> {
        let rad = self.radical()?;
        let r = self.frame.len();
        Ok((0..r).all(|a| (0..r).all(|b| a == b || !rad.iso[a][b])) && self.dim() - rad.space.dim() == r)
    }

    /// Isomorphism classes of frame idempotents, each sorted, by least member.
    pub fn iso_classes(&self) -> Result<Vec<Vec<usize>>> {
        let rad = self.radical()?;
        let r = self.frame.len();
        let mut seen = vec![false; r];
        let mut out = Vec::new();
        for a in 0..r {
            if seen[a] {
                continue;
            }
            let cls: Vec<usize> = (0..r).filter(|&b| rad.iso[a][b]).collect();
            for &b in &cls {
                seen[b] = true;
            }
            out.push(cls);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let grid = |m: &Mat<F>| -> Vec<Vec<String>> {
            (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.to_string()).collect()).collect()
        };
        let mut constants = Vec::new();
        for s in 0..self.dim() {
            for t in 0..self.dim() {
                for (u, c) in self.product_coords(s, t).into_iter().enumerate() {
                    if !c.is_zero() {
                        constants.push(json!([s, t, u, c.to_string()]));
                    }
                }
            }
        }
        json!({
            "label": self.label,
            "field": F::name(),
            "size": self.size,
            "dim": self.dim(),
            "basis": self.basis.iter().map(grid).collect::<Vec<_>>(),
            "frame": self.frame_labels,
            "structure_constants": constants,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{F2, Q};

    fn upper2<F: Field>() -> MatrixAlgebra<F> {
        // lower triangular 2x2: E11, E22, E21
        let b = vec![Mat::unit(2, 2, 0, 0), Mat::unit(2, 2, 1, 1), Mat::unit(2, 2, 1, 0)];
        MatrixAlgebra::new("T2", 2, b)
            .unwrap()
            .with_frame(vec!["1".into(), "2".into()], vec![Mat::unit(2, 2, 0, 0), Mat::unit(2, 2, 1, 1)])
            .unwrap()
    }

    #[test]
    fn triangular_radical() {
        let a = upper2::<Q>();
        assert_eq!(a.unit(), &Mat::identity(2));
        let rad = a.radical().unwrap();
        assert_eq!(rad.space.dim(), 1);
        assert_eq!(a.radical_trace_form().unwrap(), rad.space);
        assert!(a.is_basic().unwrap());
        let b = upper2::<F2>();
        assert_eq!(b.radical().unwrap().space.dim(), 1);
    }

    #[test]
    fn full_matrix_algebra_is_not_basic() {
        let basis: Vec<Mat<Q>> =
            (0..2).flat_map(|r| (0..2).map(move |c| Mat::unit(2, 2, r, c))).collect();
        let a = MatrixAlgebra::new("M2", 2, basis)
            .unwrap()
            .with_frame(vec!["1".into(), "2".into()], vec![Mat::unit(2, 2, 0, 0), Mat::unit(2, 2, 1, 1)])
            .unwrap();
        assert_eq!(a.radical().unwrap().space.dim(), 0);
        assert!(!a.is_basic().unwrap());
        assert_eq!(a.iso_classes().unwrap(), vec![vec![0, 1]]);
    }

    #[test]
    fn generated_and_coordinates() {
        let g: Vec<Mat<Q>> = vec![Mat::unit(2, 2, 1, 0), Mat::identity(2)];
        let a = MatrixAlgebra::generated("g", 2, &g).unwrap();
        assert_eq!(a.dim(), 2);
        let x = Mat::unit(2, 2, 1, 0).scale(&Q::from_i64(3)).add(&Mat::identity(2));
        assert_eq!(a.element(&a.coords(&x).unwrap()), x);
        assert!(a.coords(&Mat::unit(2, 2, 0, 1)).is_none());
        assert!(MatrixAlgebra::<Q>::new("bad", 2, vec![Mat::unit(2, 2, 0, 1), Mat::unit(2, 2, 1, 0)]).is_err());
    }

    #[test]
    fn non_homogeneous_basis_is_projected() {
        let b: Vec<Mat<Q>> = vec![
            Mat::identity(2),
            Mat::unit(2, 2, 1, 1).add(&Mat::unit(2, 2, 1, 0)),
            Mat::unit(2, 2, 1, 0),
        ];
        let a = MatrixAlgebra::new("T", 2, b)
            .unwrap()
            .with_frame(vec!["1".into(), "2".into()], vec![Mat::unit(2, 2, 0, 0), Mat::unit(2, 2, 1, 1)])
            .unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.block_indices(1, 0).len(), 1);
    }
}
