//! Simple, projective, injective, standard and costandard modules of the
//! right and left algebras, restriction to the incidence algebra, the trace
//! of `S(0)`, induction from `A` to the right algebra and coinduction from
//! `A` to the left algebra.

use rand::Rng;

use crate::bocs::PosetBocs;
use crate::burt_butler::{LeftFrame, RealizedAlgebra, Side};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::incidence::incidence_algebra;
use crate::linalg::{Mat, RowReducer, Subspace};
use crate::module::{AlgebraCtx, Ctx, Module};
use crate::poset::Poset;

/// Matrix of `m` from one subspace into another, in their echelon bases.
fn map_between<F: Field>(m: &Mat<F>, from: &Subspace<F>, to: &Subspace<F>) -> Result<Mat<F>> {
    let cols: Vec<Vec<F>> = from
        .basis()
        .iter()
        .map(|v| to.coordinates(&m.mul_vec(v)).ok_or_else(|| Error::Invalid("map leaves the target subspace".into())))
        .collect::<Result<_>>()?;
    Ok(Mat::from_columns(to.dim(), &cols))
}

fn column_space<F: Field>(m: &Mat<F>) -> Subspace<F> {
    Subspace::span(m.rows(), (0..m.cols()).map(|c| m.column(c)))
}

/// Base algebra `A` with its modules given as representations: vertex
/// spaces `V_0..V_n` and maps `alpha_i : V_i -> V_0`.
pub struct BaseAlgebra<F: Field> {
    pub ctx: Ctx<F>,
    pub n: usize,
}

impl<F: Field> BaseAlgebra<F> {
    pub fn new(b: &PosetBocs<F>) -> Result<Self> {
        Ok(BaseAlgebra { ctx: AlgebraCtx::new(b.a.clone())?, n: b.n() })
    }

    /// `dims[t]` is `dim V_t`; `alpha[i-1]` is `dim V_0 x dim V_i`.
    pub fn representation(&self, dims: &[usize], alpha: &[Mat<F>]) -> Result<Module<F>> {
        let n = self.n;
        if dims.len() != n + 1 || alpha.len() != n {
            return Err(Error::Dimension("representation needs n + 1 spaces and n maps".into()));
        }
        let mut off = vec![0; n + 2];
        for t in 0..=n {
            off[t + 1] = off[t] + dims[t];
        }
        let d = off[n + 1];
        // vertex t sits at row/col t-1 of Mat_{n+1}, vertex 0 at n
        let vert = |r: usize| if r == n { 0 } else { r + 1 };
        let action = self
            .ctx
            .alg
            .basis()
            .iter()
            .map(|bm| {
                let mut m = Mat::zeros(d, d);
                for r in 0..=n {
                    for c in 0..=n {
                        let x = &bm[(r, c)];
                        if x.is_zero() {
                            continue;
                        }
                        let (tr, tc) = (vert(r), vert(c));
                        if tr == tc {
                            for k in off[tr]..off[tr + 1] {
                                m[(k, k)] += x.clone();
                            }
                        } else {
                            debug_assert_eq!(tr, 0);
                            let a = &alpha[tc - 1];
                            for i in 0..dims[0] {
                                for j in 0..dims[tc] {
                                    m[(off[0] + i, off[tc] + j)] += x.clone() * a[(i, j)].clone();
                                }
                            }
                        }
                    }
                }
                m
            })
            .collect();
        Module::new(self.ctx.clone(), d, action)
    }

    pub fn simple(&self, t: usize) -> Result<Module<F>> {
        let mut dims = vec![0; self.n + 1];
        dims[t] = 1;
        let alpha = (1..=self.n).map(|i| Mat::zeros(dims[0], dims[i])).collect::<Vec<_>>();
        self.representation(&dims, &alpha)
    }

    /// Random nonzero representation of total dimension at most `max_total`,
    /// with entries in `{-1, 0, 1, 2}`.
    pub fn random<R: Rng>(&self, max_total: usize, rng: &mut R) -> Result<Module<F>> {
        let total = rng.gen_range(1..=max_total.max(1));
        let mut dims = vec![0; self.n + 1];
        for _ in 0..total {
            dims[rng.gen_range(0..=self.n)] += 1;
        }
        let alpha = (1..=self.n)
            .map(|i| {
                let rows = (0..dims[0]).map(|_| (0..dims[i]).map(|_| F::from_i64(rng.gen_range(-1..=2))).collect()).collect();
                if dims[0] == 0 || dims[i] == 0 {
                    Mat::zeros(dims[0], dims[i])
                } else {
                    Mat::from_rows(rows)
                }
            })
            .collect::<Vec<_>>();
        self.representation(&dims, &alpha)
    }
}

/// The right or left algebra with simples indexed by `0..=n`, the
/// quasi-hereditary order, the embedded base algebra and the incidence
/// algebra corner.
pub struct QhAlgebra<F: Field> {
    pub side: Side,
    pub poset: Poset,
    pub ctx: Ctx<F>,
    /// A primitive idempotent for each simple `0..=n`.
    pub idem: Vec<Mat<F>>,
    pub base: BaseAlgebra<F>,
    /// Images of the basis of `A`.
    pub a_images: Vec<Mat<F>>,
    pub kp: Ctx<F>,
}

impl<F: Field> QhAlgebra<F> {
    pub fn right(p: &Poset, b: &PosetBocs<F>, r: &RealizedAlgebra<F>) -> Result<Self> {
        let n = p.n();
        let s = n + 1;
        let mut labels: Vec<String> = p.elements().map(|i| i.to_string()).collect();
        labels.push("0".into());
        let frame: Vec<Mat<F>> = (0..s).map(|k| Mat::unit(s, s, k, k)).collect();
        let alg = r.image.clone().with_frame(labels, frame)?;
        let mut idem = vec![Mat::unit(s, s, n, n)];
        idem.extend((0..n).map(|k| Mat::unit(s, s, k, k)));
        Self::build(Side::Right, p, b, r, alg, idem)
    }

    pub fn left(p: &Poset, b: &PosetBocs<F>, l: &RealizedAlgebra<F>, frame: &LeftFrame<F>) -> Result<Self> {
        let idem = frame.classes.iter().map(|c| frame.algebra.frame()[c[0]].clone()).collect();
        Self::build(Side::Left, p, b, l, frame.algebra.clone(), idem)
    }

    fn build(side: Side, p: &Poset, b: &PosetBocs<F>, r: &RealizedAlgebra<F>, alg: crate::algebra::MatrixAlgebra<F>, idem: Vec<Mat<F>>) -> Result<Self> {
        Ok(QhAlgebra {
            side,
            poset: p.clone(),
            ctx: AlgebraCtx::new(alg)?,
            idem,
            base: BaseAlgebra::new(b)?,
            a_images: r.a_image.basis().to_vec(),
            kp: AlgebraCtx::new(incidence_algebra::<F>(p))?,
        })
    }

    pub fn n(&self) -> usize {
        self.poset.n()
    }

    fn size(&self) -> usize {
        self.ctx.alg.size()
    }

    /// `a <= b` in the order of `P` with `0` adjoined as minimum.
    pub fn leq_p0(&self, a: usize, b: usize) -> bool {
        a == 0 || (b != 0 && self.poset.leq(a, b))
    }

    /// The quasi-hereditary order: the opposite of `P_0` on the right,
    /// `P_0` itself on the left.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        match self.side {
            Side::Right => self.leq_p0(b, a),
            Side::Left => self.leq_p0(a, b),
        }
    }

    /// Labels from the top of the order down (a linear extension, reversed).
    pub fn descending(&self) -> Vec<usize> {
        let mut left: Vec<usize> = (0..=self.n()).collect();
        let mut out = Vec::new();
        while !left.is_empty() {
            let k = left.iter().position(|&a| left.iter().all(|&b| b == a || !self.leq(a, b))).expect("finite order");
            out.push(left.remove(k));
        }
        out
    }

    pub fn projective(&self, i: usize) -> Result<Module<F>> {
        Module::left_ideal(&self.ctx, &self.idem[i])
    }

    pub fn injective(&self, i: usize) -> Result<Module<F>> {
        Module::dual_right_ideal(&self.ctx, &self.idem[i])
    }

    pub fn simple(&self, i: usize) -> Result<Module<F>> {
        self.projective(i)?.top()
    }

    /// Composition multiplicities `[S(0), ..., S(n)]`.
    pub fn multiplicities(&self, m: &Module<F>) -> Result<Vec<usize>> {
        self.idem.iter().map(|e| m.weight_dim(e)).collect()
    }

    /// Largest quotient of `P(i)` with composition factors `<= i`.
    pub fn standard(&self, i: usize) -> Result<Module<F>> {
        let p = self.projective(i)?;
        let mut vecs = Vec::new();
        for j in (0..=self.n()).filter(|&j| !self.leq(j, i)) {
            vecs.extend(p.generated_by_idempotent(&self.idem[j])?.basis().iter().cloned());
        }
        p.quotient(&p.generated(&vecs))
    }

    /// Largest submodule of `Q(i)` with composition factors `<= i`.
    pub fn costandard(&self, i: usize) -> Result<Module<F>> {
        let q = self.injective(i)?;
        let mut s = Subspace::full(q.dim());
        for j in (0..=self.n()).filter(|&j| !self.leq(j, i)) {
            s = s.intersect(&q.annihilated_by(&self.idem[j])?)?;
        }
        q.sub(&s)
    }

    /// Standard modules read off the table of the quasi-hereditary
    /// structure.
    pub fn table_standard(&self, k: usize) -> Result<Module<F>> {
        match (self.side, k) {
            (_, 0) => self.simple(0),
            (Side::Right, _) => {
                let p = self.projective(k)?;
                let soc = p.socle_space();
                p.quotient(&soc)
            }
            (Side::Left, _) if !self.poset.is_minimal(k) => self.simple(k),
            (Side::Left, _) => {
                // P(k) modulo the kernel of a nonzero map rad P(k) -> S(0):
                // simple top S(k), socle S(0)
                let p = self.projective(k)?;
                let rad_space = p.radical_space();
                let rad = p.sub(&rad_space)?;
                let f = rad.hom(&self.simple(0)?).into_iter().next().ok_or_else(|| {
                    Error::Invalid(format!("S(0) is not in the top of rad P({k})"))
                })?;
                let vecs: Vec<Vec<F>> = f
                    .kernel()
                    .iter()
                    .map(|v| {
                        let mut out = vec![F::zero(); p.dim()];
                        for (c, b) in v.iter().zip(rad_space.basis()) {
                            crate::linalg::add_scaled(&mut out, c, b);
                        }
                        out
                    })
                    .collect();
                p.quotient(&Subspace::span(p.dim(), vecs))
            }
        }
    }

    pub fn table_costandard(&self, k: usize) -> Result<Module<F>> {
        match (self.side, k) {
            (Side::Right, 0) => self.injective(0),
            (Side::Right, _) => self.simple(k),
            (Side::Left, 0) => self.simple(0),
            (Side::Left, _) => self.injective(k),
        }
    }

    fn corner_embed(&self) -> impl Fn(&Mat<F>) -> Mat<F> {
        let s = self.size();
        move |m: &Mat<F>| m.embed(s, s, 0, 0)
    }

    /// Idempotent restriction to the incidence algebra corner.
    pub fn res0(&self, m: &Module<F>) -> Result<Module<F>> {
        let s = self.size();
        let e = Mat::identity(self.n()).embed(s, s, 0, 0);
        m.restrict(&e, &self.kp, &self.corner_embed())
    }

    /// `Tr_0(M)`: the sum of the images of all maps `S(0) -> M`.
    pub fn trace0(&self, m: &Module<F>) -> Result<Subspace<F>> {
        Ok(m.trace_of(&self.simple(0)?))
    }

    /// Frame idempotents of `A`, as images in this algebra and as `A` elements.
    fn a_idempotents(&self) -> Vec<(Mat<F>, Mat<F>)> {
        self.base
            .ctx
            .alg
            .frame()
            .iter()
            .map(|f| {
                let c = self.base.ctx.coords(f).expect("frame lies in A");
                let mut img = Mat::zeros(self.size(), self.size());
                for (x, a) in c.iter().zip(&self.a_images) {
                    img.add_scaled(x, a);
                }
                (f.clone(), img)
            })
            .collect()
    }

    /// For each basis element of `A`, the frame indices `(u, v)` with
    /// `a = e_u a e_v`.
    fn a_homogeneous(&self) -> Result<Vec<(usize, usize)>> {
        let fr = self.base.ctx.alg.frame();
        self.base
            .ctx
            .alg
            .basis()
            .iter()
            .map(|a| {
                for (u, eu) in fr.iter().enumerate() {
                    for (v, ev) in fr.iter().enumerate() {
                        if &eu.mul(a).mul(ev) == a {
                            return Ok((u, v));
                        }
                    }
                }
                Err(Error::Invalid("basis of A is not Peirce homogeneous".into()))
            })
            .collect()
    }

    /// `Alg ⊗_A N` with the left action on the first factor, computed as
    /// `(⊕_t Alg e_t ⊗ e_t N)` modulo `r a ⊗ x - r ⊗ a x`.
    pub fn induce(&self, nmod: &Module<F>) -> Result<Module<F>> {
        let d = self.ctx.dim();
        let idem = self.a_idempotents();
        // Alg e_t as coordinate subspaces, e_t N as subspaces of N
        let mut lpieces = Vec::new();
        let mut npieces = Vec::new();
        let mut off = vec![0];
        for (fa, fimg) in &idem {
            let rr = crate::module::right_mult(&self.ctx, fimg)?;
            let lp = column_space(&rr);
            let np = column_space(&nmod.act(fa)?);
            off.push(off.last().unwrap() + lp.dim() * np.dim());
            lpieces.push(lp);
            npieces.push(np);
        }
        let total = *off.last().unwrap();
        let index = |t: usize, i: usize, j: usize| off[t] + i * npieces[t].dim() + j;
        // relations
        let mut red = RowReducer::new(total);
        for (k, &(u, v)) in self.a_homogeneous()?.iter().enumerate() {
            let ra = crate::module::right_mult(&self.ctx, &self.a_images[k])?;
            let ra = map_between(&ra, &lpieces[u], &lpieces[v])?;
            let an = map_between(&nmod.action[k], &npieces[v], &npieces[u])?;
            for i in 0..lpieces[u].dim() {
                for j in 0..npieces[v].dim() {
                    let mut row = vec![F::zero(); total];
                    for i2 in 0..lpieces[v].dim() {
                        row[index(v, i2, j)] += ra[(i2, i)].clone();
                    }
                    for j2 in 0..npieces[u].dim() {
                        row[index(u, i, j2)] -= an[(j2, j)].clone();
                    }
                    red.push(row);
                }
            }
        }
        let rel = Subspace::span(total, red.echelon().0);
        let action = (0..d)
            .map(|g| {
                let mut m = Mat::zeros(total, total);
                for t in 0..idem.len() {
                    let lg = map_between(&self.ctx.left_reg[g], &lpieces[t], &lpieces[t])?;
                    let q = npieces[t].dim();
                    for a in 0..lpieces[t].dim() {
                        for b in 0..lpieces[t].dim() {
                            if lg[(a, b)].is_zero() {
                                continue;
                            }
                            for j in 0..q {
                                m[(index(t, a, j), index(t, b, j))] = lg[(a, b)].clone();
                            }
                        }
                    }
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        let free = Module::new(self.ctx.clone(), total, action)?;
        free.quotient(&rel)
    }

    /// `Hom_A(Alg, N)` with `(g . phi)(x) = phi(x g)`; maps are left
    /// `A`-linear, so `phi(e_t Alg) ⊆ e_t N`.
    pub fn coinduce(&self, nmod: &Module<F>) -> Result<Module<F>> {
        let d = self.ctx.dim();
        let idem = self.a_idempotents();
        let mut rpieces = Vec::new();
        let mut npieces = Vec::new();
        let mut off = vec![0];
        for (fa, fimg) in &idem {
            let lm = crate::module::left_mult(&self.ctx, fimg)?;
            let rp = column_space(&lm);
            let np = column_space(&nmod.act(fa)?);
            off.push(off.last().unwrap() + rp.dim() * np.dim());
            rpieces.push(rp);
            npieces.push(np);
        }
        let total = *off.last().unwrap();
        // Phi_t[r][c]: r over e_t N, c over e_t Alg
        let index = |t: usize, r: usize, c: usize| off[t] + r * rpieces[t].dim() + c;
        let mut red = RowReducer::new(total);
        for (k, &(u, v)) in self.a_homogeneous()?.iter().enumerate() {
            if u == v {
                continue;
            }
            // Phi_u . L_a = rho_N(a) . Phi_v on e_v Alg
            let la = crate::module::left_mult(&self.ctx, &self.a_images[k])?;
            let la = map_between(&la, &rpieces[v], &rpieces[u])?;
            let an = map_between(&nmod.action[k], &npieces[v], &npieces[u])?;
            for r in 0..npieces[u].dim() {
                for c in 0..rpieces[v].dim() {
                    let mut row = vec![F::zero(); total];
                    for k2 in 0..rpieces[u].dim() {
                        row[index(u, r, k2)] += la[(k2, c)].clone();
                    }
                    for k2 in 0..npieces[v].dim() {
                        row[index(v, k2, c)] -= an[(r, k2)].clone();
                    }
                    red.push(row);
                }
            }
        }
        let sol = Subspace::span(total, red.nullspace());
        let action = (0..d)
            .map(|g| {
                let mut m = Mat::zeros(total, total);
                for t in 0..idem.len() {
                    let rg = map_between(&self.ctx.right_reg[g], &rpieces[t], &rpieces[t])?;
                    let q = rpieces[t].dim();
                    // (Phi R)[r][c] = sum_k Phi[r][k] R[k][c]
                    for r in 0..npieces[t].dim() {
                        for kk in 0..q {
                            for c in 0..q {
                                if !rg[(kk, c)].is_zero() {
                                    m[(index(t, r, c), index(t, r, kk))] = rg[(kk, c)].clone();
                                }
                            }
                        }
                    }
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        let all = Module::new(self.ctx.clone(), total, action)?;
        all.sub(&sol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burt_butler::LeftFrame;
    use crate::field::{F3, Q};
    use crate::poset::Marking;

    fn both<F: Field>(txt: &str) -> (QhAlgebra<F>, QhAlgebra<F>) {
        let p = Poset::parse(txt).unwrap();
        let mk = Marking::default_for(&p);
        let b = PosetBocs::<F>::new(&p).unwrap();
        let r = RealizedAlgebra::new(&b, Side::Right, &mk).unwrap();
        let l = RealizedAlgebra::new(&b, Side::Left, &mk).unwrap();
        let fr = LeftFrame::new(&l, &p, &mk).unwrap();
        (QhAlgebra::right(&p, &b, &r).unwrap(), QhAlgebra::left(&p, &b, &l, &fr).unwrap())
    }

    #[test]
    fn pb_simples_and_standards() {
        let (r, l) = both::<Q>("n=3;1<3;2<3");
        let dims: Vec<usize> = [1, 2, 3, 0].iter().map(|&i| l.simple(i).unwrap().dim()).collect();
        assert_eq!(dims, vec![1, 1, 2, 1]);
        assert!(l.injective(1).unwrap().is_isomorphic(&l.simple(1).unwrap()).unwrap());
        assert_eq!(r.projective(3).unwrap().dim(), 2);
        assert_eq!(r.standard(3).unwrap().dim(), 1);
        assert_eq!(r.standard(1).unwrap().dim(), 2);
        assert_eq!(r.standard(0).unwrap().dim(), 1);
        assert_eq!(l.costandard(0).unwrap().dim(), 1);
        for k in 0..=3 {
            assert!(r.standard(k).unwrap().is_isomorphic(&r.table_standard(k).unwrap()).unwrap(), "right D({k})");
            assert!(r.costandard(k).unwrap().is_isomorphic(&r.table_costandard(k).unwrap()).unwrap(), "right N({k})");
            assert!(l.standard(k).unwrap().is_isomorphic(&l.table_standard(k).unwrap()).unwrap(), "left D({k})");
            assert!(l.costandard(k).unwrap().is_isomorphic(&l.table_costandard(k).unwrap()).unwrap(), "left N({k})");
        }
        let d: Vec<_> = (0..=3).map(|k| r.standard(k).unwrap()).collect();
        assert_eq!(d[3].hom_dim(&d[1]), 1);
        assert_eq!(d[3].ext1_dim(&d[0]).unwrap(), 1);
        assert_eq!(d[3].ext1_dim(&d[1]).unwrap(), 0);
    }

    #[test]
    fn base_algebra_simple_zero_is_projective() {
        let (r, _) = both::<Q>("n=3;1<3;2<3");
        let s0 = r.base.simple(0).unwrap();
        s0.check().unwrap();
        assert!(s0.is_projective().unwrap());
        assert!(!r.base.simple(1).unwrap().is_projective().unwrap());
    }

    #[test]
    fn restriction_and_trace() {
        let (r, l) = both::<Q>("n=3;1<3;2<3");
        let kp_simple = |k: usize| Module::left_ideal(&l.kp, &crate::incidence::e(3, k, k)).unwrap().top().unwrap();
        let kp_inj = |k: usize| Module::dual_right_ideal(&l.kp, &crate::incidence::e(3, k, k)).unwrap();
        for k in 1..=3 {
            assert!(l.res0(&l.simple(k).unwrap()).unwrap().is_isomorphic(&kp_simple(k)).unwrap());
            assert!(l.res0(&l.injective(k).unwrap()).unwrap().is_isomorphic(&kp_inj(k)).unwrap());
            assert_eq!(r.trace0(&r.standard(k).unwrap()).unwrap().dim(), 0);
            assert_eq!(r.trace0(&r.projective(k).unwrap()).unwrap().dim(), 1);
        }
        assert_eq!(l.res0(&l.simple(0).unwrap()).unwrap().dim(), 0);
        assert_eq!(r.res0(&r.simple(0).unwrap()).unwrap().dim(), 0);
        assert_eq!(r.trace0(&r.simple(0).unwrap()).unwrap().dim(), 1);
    }

    #[test]
    fn induction_and_coinduction_give_the_table() {
        let (r, l) = both::<F3>("n=4;1<3;2<3;2<4");
        for t in 0..=4 {
            let s = r.base.simple(t).unwrap();
            let ind = r.induce(&s).unwrap();
            ind.check().unwrap();
            assert!(ind.is_isomorphic(&r.standard(t).unwrap()).unwrap(), "induce S({t})");
            let co = l.coinduce(&s).unwrap();
            co.check().unwrap();
            assert!(co.is_isomorphic(&l.costandard(t).unwrap()).unwrap(), "coinduce S({t})");
        }
    }
}
