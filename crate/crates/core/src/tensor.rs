//! Modules and bimodules over a framed algebra given by action matrices,
//! and their tensor products over the algebra.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::MatrixAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{sparse, Mat, SparseReducer, SparseVec};

/// A finite-dimensional space with optional left and right actions of an
/// algebra `A`: one matrix per basis element of `A`, acting on column
/// coordinates (`coords(a.x) = L_a x`, `coords(x.a) = R_a x`). Each present
/// side comes with weights: basis vector `p` lies in `e_w M` (left) or
/// `M e_w` (right) for the frame idempotent `e_w`.
#[derive(Clone, Debug)]
pub struct Bimodule<F: Field> {
    pub dim: usize,
    pub left: Option<Vec<Mat<F>>>,
    pub right: Option<Vec<Mat<F>>>,
    pub lw: Vec<usize>,
    pub rw: Vec<usize>,
}

/// Action matrix of an arbitrary algebra element from per-basis matrices.
pub fn act_of<F: Field>(acts: &[Mat<F>], coords: &[F], dim: usize) -> Mat<F> {
    let mut m = Mat::zeros(dim, dim);
    for (c, a) in coords.iter().zip(acts) {
        m.add_scaled(c, a);
    }
    m
}

/// Frame weights of a basis: `Some(w)` when every basis vector is fixed by
/// exactly one frame idempotent.
pub fn frame_weights<F: Field>(alg: &MatrixAlgebra<F>, acts: &[Mat<F>], dim: usize) -> Option<Vec<usize>> {
    let idem: Vec<Mat<F>> =
        alg.frame().iter().map(|e| act_of(acts, &alg.coords(e).expect("frame in algebra"), dim)).collect();
    (0..dim)
        .map(|p| {
            let mut found = None;
            for (a, m) in idem.iter().enumerate() {
                let col = m.column(p);
                if col.iter().enumerate().all(|(r, x)| if r == p { x.is_one() } else { x.is_zero() }) {
                    found = Some(a);
                }
            }
            found
        })
        .collect()
}

impl<F: Field> Bimodule<F> {
    pub fn new(
        alg: &MatrixAlgebra<F>,
        dim: usize,
        left: Option<Vec<Mat<F>>>,
        right: Option<Vec<Mat<F>>>,
    ) -> Result<Self> {
        let weights = |acts: &Option<Vec<Mat<F>>>| -> Result<Vec<usize>> {
            match acts {
                None => Ok(Vec::new()),
                Some(a) => frame_weights(alg, a, dim)
                    .ok_or_else(|| Error::Invalid("module basis is not adapted to the frame".into())),
            }
        };
        let lw = weights(&left)?;
        let rw = weights(&right)?;
        Ok(Bimodule { dim, left, right, lw, rw })
    }

    /// Check the module axioms against the structure constants of `alg`.
    pub fn check(&self, alg: &MatrixAlgebra<F>) -> Result<()> {
        let unit = alg.coords(alg.unit()).unwrap();
        let k = alg.dim();
        if let Some(l) = &self.left {
            if act_of(l, &unit, self.dim) != Mat::identity(self.dim) {
                return Err(Error::Invalid("unit does not act as identity on the left".into()));
            }
            for s in 0..k {
                for t in 0..k {
                    let prod = act_of(l, &alg.product_coords(s, t), self.dim);
                    if prod != l[s].mul(&l[t]) {
                        return Err(Error::Invalid(format!("left action not multiplicative at ({s},{t})")));
                    }
                }
            }
        }
        if let Some(r) = &self.right {
            if act_of(r, &unit, self.dim) != Mat::identity(self.dim) {
                return Err(Error::Invalid("unit does not act as identity on the right".into()));
            }
            for s in 0..k {
                for t in 0..k {
                    let prod = act_of(r, &alg.product_coords(s, t), self.dim);
                    if prod != r[t].mul(&r[s]) {
                        return Err(Error::Invalid(format!("right action not multiplicative at ({s},{t})")));
                    }
                }
            }
        }
        if let (Some(l), Some(r)) = (&self.left, &self.right) {
            for a in l {
                for b in r {
                    if a.mul(b) != b.mul(a) {
                        return Err(Error::Invalid("left and right actions do not commute".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// The regular bimodule `A` in the algebra basis.
    pub fn regular(alg: &MatrixAlgebra<F>) -> Result<Self> {
        let k = alg.dim();
        let left: Vec<Mat<F>> = alg.basis().iter().map(|a| alg.left_regular(a)).collect();
        let right: Vec<Mat<F>> = alg
            .basis()
            .iter()
            .map(|a| {
                let cols: Vec<Vec<F>> = alg.basis().iter().map(|b| alg.coords(&b.mul(a)).unwrap()).collect();
                Mat::from_columns(k, &cols)
            })
            .collect();
        Self::new(alg, k, Some(left), Some(right))
    }
}

/// `M (x)_A N` realized as a quotient of `(+)_k M e_k (x) e_k N` by the
/// relations `m a (x) n - m (x) a n`, with the quotient basis given by the
/// non-pivot pairs.
#[derive(Clone, Debug)]
pub struct TensorProduct<F: Field> {
    /// Raw basis: pairs `(p, q)` of basis vectors with matching weights.
    pub pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    reducer: SparseReducer<F>,
    /// Raw indices forming the quotient basis.
    pub basis: Vec<usize>,
    qindex: HashMap<usize, usize>,
    /// The quotient with the outer actions transported.
    pub module: Bimodule<F>,
}

impl<F: Field> TensorProduct<F> {
    pub fn new(alg: &MatrixAlgebra<F>, m: &Bimodule<F>, n: &Bimodule<F>) -> Result<Self> {
        let (Some(mr), Some(nl)) = (&m.right, &n.left) else {
            return Err(Error::Invalid("tensor product needs a right module and a left module".into()));
        };
        let mut by_weight: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (q, &w) in n.lw.iter().enumerate() {
            by_weight.entry(w).or_default().push(q);
        }
        let mut pairs = Vec::new();
        for (p, &w) in m.rw.iter().enumerate() {
            for &q in by_weight.get(&w).map_or(&[][..], |v| v.as_slice()) {
                pairs.push((p, q));
            }
        }
        let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &pq)| (pq, i)).collect();
        let mut tp = TensorProduct {
            pairs,
            index,
            reducer: SparseReducer::new(),
            basis: Vec::new(),
            qindex: HashMap::new(),
            module: Bimodule { dim: 0, left: None, right: None, lw: Vec::new(), rw: Vec::new() },
        };
        let frame_mats = alg.frame();
        let mut m_by_rw: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (p, &w) in m.rw.iter().enumerate() {
            m_by_rw.entry(w).or_default().push(p);
        }
        for (k, a) in alg.basis().iter().enumerate() {
            if frame_mats.contains(a) {
                continue;
            }
            let (t, s) = alg.blocks()[k];
            let ms = m_by_rw.get(&t).map_or(&[][..], |v| v.as_slice());
            let ns = by_weight.get(&s).map_or(&[][..], |v| v.as_slice());
            for &p in ms {
                let ma = sparse(&mr[k].column(p));
                for &q in ns {
                    let an = sparse(&nl[k].column(q));
                    let mut rel = tp.raw_sparse(&ma, &unit_sparse(q));
                    for (i, x) in tp.raw_sparse(&unit_sparse(p), &an) {
                        let e = rel.entry(i).or_insert_with(F::zero);
                        *e -= x;
                    }
                    tp.reducer.push(rel);
                }
            }
        }
        tp.basis = (0..tp.pairs.len()).filter(|&i| !tp.reducer.is_pivot(i)).collect();
        tp.qindex = tp.basis.iter().enumerate().map(|(j, &i)| (i, j)).collect();
        let d = tp.basis.len();
        let transport = |acts: &Vec<Mat<F>>, on_left: bool| -> Vec<Mat<F>> {
            acts.iter()
                .map(|a| {
                    let cols: Vec<Vec<F>> = tp
                        .basis
                        .iter()
                        .map(|&i| {
                            let (p, q) = tp.pairs[i];
                            let raw = if on_left {
                                tp.raw_sparse(&sparse(&a.column(p)), &unit_sparse(q))
                            } else {
                                tp.raw_sparse(&unit_sparse(p), &sparse(&a.column(q)))
                            };
                            tp.project(raw)
                        })
                        .collect();
                    Mat::from_columns(d, &cols)
                })
                .collect()
        };
        let left = m.left.as_ref().map(|l| transport(l, true));
        let right = n.right.as_ref().map(|r| transport(r, false));
        let lw = if m.left.is_some() { tp.basis.iter().map(|&i| m.lw[tp.pairs[i].0]).collect() } else { Vec::new() };
        let rw = if n.right.is_some() { tp.basis.iter().map(|&i| n.rw[tp.pairs[i].1]).collect() } else { Vec::new() };
        tp.module = Bimodule { dim: d, left, right, lw, rw };
        Ok(tp)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Raw coordinates of `x (x) y`; pairs with mismatched weights vanish.
    pub fn raw_sparse(&self, x: &SparseVec<F>, y: &SparseVec<F>) -> SparseVec<F> {
        let mut out = BTreeMap::new();
        for (p, a) in x {
            for (q, b) in y {
                if let Some(&i) = self.index.get(&(*p, *q)) {
                    let e = out.entry(i).or_insert_with(F::zero);
                    *e += a.clone() * b.clone();
                }
            }
        }
        out.retain(|_, v: &mut F| !v.is_zero());
        out
    }

    /// Quotient coordinates of a raw vector.
    pub fn project(&self, raw: SparseVec<F>) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim()];
        for (i, x) in self.reducer.reduce(raw) {
            out[self.qindex[&i]] = x;
        }
        out
    }

    /// Quotient coordinates of `x (x) y` for dense coordinate vectors.
    pub fn pair(&self, x: &[F], y: &[F]) -> Vec<F> {
        self.project(self.raw_sparse(&sparse(x), &sparse(y)))
    }

    /// Quotient coordinates of `sum c * (e_p (x) e_q)`.
    pub fn pairs_sum(&self, terms: &[(F, usize, usize)]) -> Vec<F> {
        let mut raw = BTreeMap::new();
        for (c, p, q) in terms {
            if let Some(&i) = self.index.get(&(*p, *q)) {
                let e = raw.entry(i).or_insert_with(F::zero);
                *e += c.clone();
            }
        }
        self.project(raw)
    }

    /// For each quotient basis vector, the pair `(p, q)` it stands for.
    pub fn basis_pairs(&self) -> Vec<(usize, usize)> {
        self.basis.iter().map(|&i| self.pairs[i]).collect()
    }
}

fn unit_sparse<F: Field>(i: usize) -> SparseVec<F> {
    BTreeMap::from([(i, F::one())])
}

/// Dimension of `M (x)_A N` as the quotient of the full `M (x)_K N` by all
/// relations `m a (x) n - m (x) a n` over basis elements; an oracle for
/// [`TensorProduct`].
pub fn tensor_dim_brute<F: Field>(alg: &MatrixAlgebra<F>, m: &Bimodule<F>, n: &Bimodule<F>) -> usize {
    let (mr, nl) = (m.right.as_ref().unwrap(), n.left.as_ref().unwrap());
    let idx = |p: usize, q: usize| p * n.dim + q;
    let mut red = SparseReducer::new();
    for k in 0..alg.dim() {
        for p in 0..m.dim {
            let ma = mr[k].column(p);
            for q in 0..n.dim {
                let an = nl[k].column(q);
                let mut rel: SparseVec<F> = BTreeMap::new();
                for (pp, x) in ma.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    *rel.entry(idx(pp, q)).or_insert_with(F::zero) += x.clone();
                }
                for (qq, y) in an.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                    *rel.entry(idx(p, qq)).or_insert_with(F::zero) -= y.clone();
                }
                red.push(rel);
            }
        }
    }
    m.dim * n.dim - red.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn tri() -> MatrixAlgebra<Q> {
        let b = vec![Mat::unit(2, 2, 0, 0), Mat::unit(2, 2, 1, 1), Mat::unit(2, 2, 1, 0)];
        MatrixAlgebra::new("T2", 2, b)
            .unwrap()
            .with_frame(vec!["1".into(), "2".into()], vec![Mat::unit(2, 2, 0, 0), Mat::unit(2, 2, 1, 1)])
            .unwrap()
    }

    #[test]
    fn unit_law() {
        let a = tri();
        let reg = Bimodule::regular(&a).unwrap();
        reg.check(&a).unwrap();
        let t = TensorProduct::new(&a, &reg, &reg).unwrap();
        assert_eq!(t.dim(), a.dim());
        assert_eq!(tensor_dim_brute(&a, &reg, &reg), a.dim());
        t.module.check(&a).unwrap();
    }
}
