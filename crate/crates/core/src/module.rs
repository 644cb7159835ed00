//! Finite-dimensional left modules over a matrix algebra, given by one
//! action matrix per algebra basis element.

use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::algebra::MatrixAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Mat, RowReducer, Subspace};

/// An algebra with its regular representations and radical precomputed.
#[derive(Debug)]
pub struct AlgebraCtx<F: Field> {
    pub alg: MatrixAlgebra<F>,
    /// `left_reg[k]`: left multiplication by basis element `k`, in coordinates.
    pub left_reg: Vec<Mat<F>>,
    /// `right_reg[k]`: right multiplication by basis element `k`, in coordinates.
    pub right_reg: Vec<Mat<F>>,
    /// Radical basis in coordinates.
    pub rad: Vec<Vec<F>>,
    /// Peirce-homogeneous generators `(a, b, coords)` with `x = f_a x f_b`;
    /// together with the frame they generate the algebra.
    pub gens: Vec<(usize, usize, Vec<F>)>,
    /// Coordinates of the frame idempotents.
    pub frame_coords: Vec<Vec<F>>,
    /// `Alg f` for each frame idempotent: coordinate subspace and action.
    frame_projectives: OnceLock<Vec<(Subspace<F>, Vec<Mat<F>>)>>,
}

pub type Ctx<F> = Arc<AlgebraCtx<F>>;

impl<F: Field> AlgebraCtx<F> {
    /// Needs a frame of primitive idempotents (for the radical).
    pub fn new(alg: MatrixAlgebra<F>) -> Result<Ctx<F>> {
        let d = alg.dim();
        let basis = alg.basis().to_vec();
        let coords = |m: &Mat<F>| alg.coords(m).ok_or_else(|| Error::Invalid("algebra is not closed".into()));
        let mut left_reg = Vec::with_capacity(d);
        let mut right_reg = Vec::with_capacity(d);
        for b in &basis {
            let l: Vec<Vec<F>> = basis.iter().map(|x| coords(&b.mul(x))).collect::<Result<_>>()?;
            let r: Vec<Vec<F>> = basis.iter().map(|x| coords(&x.mul(b))).collect::<Result<_>>()?;
            left_reg.push(Mat::from_columns(d, &l));
            right_reg.push(Mat::from_columns(d, &r));
        }
        let rad = alg.radical()?.space.basis().to_vec();
        let gens = homogeneous_generators(&alg, &left_reg)?;
        let frame_coords = alg.frame().iter().map(coords).collect::<Result<_>>()?;
        Ok(Arc::new(AlgebraCtx { alg, left_reg, right_reg, rad, gens, frame_coords, frame_projectives: OnceLock::new() }))
    }

    fn frame_projective(&self, a: usize) -> &(Subspace<F>, Vec<Mat<F>>) {
        &self.frame_projectives.get_or_init(|| {
            self.frame_coords
                .iter()
                .map(|c| {
                    let rr = combine(&self.right_reg, c, self.dim(), self.dim());
                    let space = Subspace::span(self.dim(), (0..self.dim()).map(|k| rr.column(k)));
                    let action = self.left_reg.iter().map(|l| restrict_map(l, &space).expect("left ideal")).collect();
                    (space, action)
                })
                .collect()
        })[a]
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn coords(&self, m: &Mat<F>) -> Result<Vec<F>> {
        self.alg.coords(m).ok_or_else(|| Error::Invalid(format!("element lies outside {}", self.alg.label())))
    }
}

/// Greedy generating set among the Peirce components of the basis. The
/// subalgebra generated so far is kept closed under left multiplication by
/// the generators, which suffices because it contains the unit.
fn homogeneous_generators<F: Field>(alg: &MatrixAlgebra<F>, left_reg: &[Mat<F>]) -> Result<Vec<(usize, usize, Vec<F>)>> {
    let d = alg.dim();
    let frame = alg.frame();
    let coords = |m: &Mat<F>| alg.coords(m).ok_or_else(|| Error::Invalid("algebra is not closed".into()));
    let mut red = RowReducer::new(d);
    let mut closure: Vec<Vec<F>> = Vec::new();
    let mut gmats: Vec<Mat<F>> = Vec::new();
    let mut gens = Vec::new();
    let mut queue: Vec<Vec<F>> = Vec::new();
    for f in frame {
        let c = coords(f)?;
        if red.push(c.clone()) {
            closure.push(c.clone());
            queue.push(c);
        }
        gmats.push(combine(left_reg, &coords(f)?, d, d));
    }
    let close = |red: &mut RowReducer<F>, closure: &mut Vec<Vec<F>>, queue: &mut Vec<Vec<F>>, gmats: &[Mat<F>]| {
        while let Some(v) = queue.pop() {
            for g in gmats {
                let w = g.mul_vec(&v);
                if red.push(w.clone()) {
                    closure.push(w.clone());
                    queue.push(w);
                }
            }
        }
    };
    close(&mut red, &mut closure, &mut queue, &gmats);
    for b in alg.basis() {
        for (a, fa) in frame.iter().enumerate() {
            for (c, fc) in frame.iter().enumerate() {
                let x = fa.mul(b).mul(fc);
                if x.is_zero() {
                    continue;
                }
                let xc = coords(&x)?;
                if red.reduce(xc.clone()).iter().all(|z| z.is_zero()) {
                    continue;
                }
                let gm = combine(left_reg, &xc, d, d);
                queue.extend(closure.iter().map(|v| gm.mul_vec(v)));
                gmats.push(gm);
                gens.push((a, c, xc));
                close(&mut red, &mut closure, &mut queue, &gmats);
            }
        }
    }
    if closure.len() != d {
        return Err(Error::Invalid("generators do not span the algebra".into()));
    }
    Ok(gens)
}

/// Linear combination of matrices.
fn combine<F: Field>(mats: &[Mat<F>], c: &[F], rows: usize, cols: usize) -> Mat<F> {
    let mut m = Mat::zeros(rows, cols);
    for (x, a) in c.iter().zip(mats) {
        if !x.is_zero() {
            m.add_scaled(x, a);
        }
    }
    m
}

/// Matrix of a linear map restricted to an invariant subspace, in the echelon
/// basis of the subspace.
fn restrict_map<F: Field>(m: &Mat<F>, s: &Subspace<F>) -> Result<Mat<F>> {
    let cols: Vec<Vec<F>> = s
        .basis()
        .iter()
        .map(|v| s.coordinates(&m.mul_vec(v)).ok_or_else(|| Error::Invalid("subspace is not invariant".into())))
        .collect::<Result<_>>()?;
    Ok(Mat::from_columns(s.dim(), &cols))
}

pub fn kron<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Mat<F> {
    let (r, c) = (a.rows() * b.rows(), a.cols() * b.cols());
    let mut m = Mat::zeros(r, c);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    m[(i * b.rows() + k, j * b.cols() + l)] = a[(i, j)].clone() * b[(k, l)].clone();
                }
            }
        }
    }
    m
}

/// Section of the quotient by `s`: vector of `K^n` with the given values on
/// the complement coordinates.
pub fn lift<F: Field>(s: &Subspace<F>, q: &[F]) -> Vec<F> {
    let mut v = vec![F::zero(); s.ambient()];
    for (x, &c) in q.iter().zip(&s.complement_coordinates()) {
        v[c] = x.clone();
    }
    v
}

/// Class of `v` in the quotient by `s`, in complement coordinates.
pub fn project<F: Field>(s: &Subspace<F>, v: &[F]) -> Vec<F> {
    let r = s.reduce(v);
    s.complement_coordinates().iter().map(|&c| r[c].clone()).collect()
}

#[derive(Clone, Debug)]
pub struct Module<F: Field> {
    pub ctx: Ctx<F>,
    pub action: Vec<Mat<F>>,
    dim: usize,
}

impl<F: Field> Module<F> {
    pub fn new(ctx: Ctx<F>, dim: usize, action: Vec<Mat<F>>) -> Result<Self> {
        if action.len() != ctx.dim() || action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Dimension("action matrices do not fit the module".into()));
        }
        Ok(Module { ctx, action, dim })
    }

    pub fn zero(ctx: Ctx<F>) -> Self {
        let action = vec![Mat::zeros(0, 0); ctx.dim()];
        Module { ctx, action, dim: 0 }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn act_coords(&self, c: &[F]) -> Mat<F> {
        combine(&self.action, c, self.dim, self.dim)
    }

    pub fn act(&self, x: &Mat<F>) -> Result<Mat<F>> {
        Ok(self.act_coords(&self.ctx.coords(x)?))
    }

    /// The action respects the structure constants and the unit.
    pub fn check(&self) -> Result<()> {
        let d = self.ctx.dim();
        if self.act(self.ctx.alg.unit())? != Mat::identity(self.dim) {
            return Err(Error::Invalid("unit does not act as the identity".into()));
        }
        for s in 0..d {
            for t in 0..d {
                let lhs = self.action[s].mul(&self.action[t]);
                let rhs = self.act_coords(&self.ctx.left_reg[s].column(t));
                if lhs != rhs {
                    return Err(Error::Invalid(format!("action is not multiplicative on basis pair ({s}, {t})")));
                }
            }
        }
        Ok(())
    }

    /// The left ideal `Alg e`.
    pub fn left_ideal(ctx: &Ctx<F>, e: &Mat<F>) -> Result<Self> {
        let space = ideal_space(ctx, e)?;
        let action = ctx.left_reg.iter().map(|l| restrict_map(l, &space)).collect::<Result<_>>()?;
        Module::new(ctx.clone(), space.dim(), action)
    }

    /// The dual `D(e Alg)` of a right ideal.
    pub fn dual_right_ideal(ctx: &Ctx<F>, e: &Mat<F>) -> Result<Self> {
        let ec = ctx.coords(e)?;
        let lr = combine(&ctx.left_reg, &ec, ctx.dim(), ctx.dim());
        let space = Subspace::span(ctx.dim(), (0..ctx.dim()).map(|k| lr.column(k)));
        let action = ctx.right_reg.iter().map(|r| restrict_map(r, &space).map(|m| m.transpose())).collect::<Result<_>>()?;
        Module::new(ctx.clone(), space.dim(), action)
    }

    /// Submodule on an invariant subspace, in its echelon basis.
    pub fn sub(&self, s: &Subspace<F>) -> Result<Self> {
        let action = self.action.iter().map(|m| restrict_map(m, s)).collect::<Result<_>>()?;
        Module::new(self.ctx.clone(), s.dim(), action)
    }

    /// Quotient by an invariant subspace, in complement coordinates.
    pub fn quotient(&self, s: &Subspace<F>) -> Result<Self> {
        let comp = s.complement_coordinates();
        let action = self
            .action
            .iter()
            .map(|m| {
                let cols: Vec<Vec<F>> = comp.iter().map(|&c| project(s, &m.column(c))).collect();
                Mat::from_columns(comp.len(), &cols)
            })
            .collect();
        Module::new(self.ctx.clone(), comp.len(), action)
    }

    pub fn is_submodule(&self, s: &Subspace<F>) -> bool {
        s.basis().iter().all(|v| self.action.iter().all(|m| s.contains(&m.mul_vec(v)).unwrap_or(false)))
    }

    /// Submodule generated by the given vectors.
    pub fn generated(&self, vecs: &[Vec<F>]) -> Subspace<F> {
        let mut red = RowReducer::new(self.dim);
        let mut queue: Vec<Vec<F>> = Vec::new();
        for v in vecs {
            if red.push(v.clone()) {
                queue.push(v.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for m in &self.action {
                let w = m.mul_vec(&v);
                if red.push(w.clone()) {
                    queue.push(w);
                }
            }
        }
        Subspace::span(self.dim, red.echelon().0)
    }

    /// `Alg e M`.
    pub fn generated_by_idempotent(&self, e: &Mat<F>) -> Result<Subspace<F>> {
        let pe = self.act(e)?;
        let vecs: Vec<Vec<F>> = (0..self.dim).map(|c| pe.column(c)).collect();
        Ok(self.generated(&vecs))
    }

    /// Largest submodule annihilated by `e`: `{v : e Alg v = 0}`.
    pub fn annihilated_by(&self, e: &Mat<F>) -> Result<Subspace<F>> {
        let pe = self.act(e)?;
        let mut red = RowReducer::new(self.dim);
        for m in &self.action {
            let x = pe.mul(m);
            for r in 0..self.dim {
                red.push(x.row(r).to_vec());
            }
        }
        Ok(Subspace::span(self.dim, red.nullspace()))
    }

    pub fn radical_space(&self) -> Subspace<F> {
        let mut vecs = Vec::new();
        for r in &self.ctx.rad {
            let m = self.act_coords(r);
            vecs.extend((0..self.dim).map(|c| m.column(c)));
        }
        Subspace::span(self.dim, vecs)
    }

    pub fn socle_space(&self) -> Subspace<F> {
        let mut red = RowReducer::new(self.dim);
        for r in &self.ctx.rad {
            let m = self.act_coords(r);
            for k in 0..self.dim {
                red.push(m.row(k).to_vec());
            }
        }
        Subspace::span(self.dim, red.nullspace())
    }

    pub fn top(&self) -> Result<Self> {
        self.quotient(&self.radical_space())
    }

    pub fn socle(&self) -> Result<Self> {
        self.sub(&self.socle_space())
    }

    pub fn is_semisimple(&self) -> bool {
        self.radical_space().dim() == 0
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        let d = self.dim + o.dim;
        let action = self
            .action
            .iter()
            .zip(&o.action)
            .map(|(a, b)| a.embed(d, d, 0, 0).add(&b.embed(d, d, self.dim, self.dim)))
            .collect();
        Module { ctx: self.ctx.clone(), action, dim: d }
    }

    pub fn power(&self, m: usize) -> Self {
        let mut out = Module::zero(self.ctx.clone());
        for _ in 0..m {
            out = out.direct_sum(self);
        }
        out
    }

    /// `rank(e)` on the module: the multiplicity of the simple top of `Alg e`
    /// when `e` is primitive.
    pub fn weight_dim(&self, e: &Mat<F>) -> Result<usize> {
        Ok(self.act(e)?.rank())
    }

    /// Basis of `Hom(self, other)`, each map a `dim other x dim self` matrix.
    /// Basis adapted to the frame: columns are bases of `f_a M` in frame
    /// order. Returns the basis, its inverse and the range of each block.
    fn weights(&self) -> (Mat<F>, Mat<F>, Vec<std::ops::Range<usize>>) {
        let mut cols = Vec::new();
        let mut ranges = Vec::new();
        for fc in &self.ctx.frame_coords {
            let pf = self.act_coords(fc);
            let s = Subspace::span(self.dim, (0..self.dim).map(|c| pf.column(c)));
            let start = cols.len();
            cols.extend(s.basis().iter().cloned());
            ranges.push(start..cols.len());
        }
        let b = Mat::from_columns(self.dim, &cols);
        let bi = b.inverse().expect("frame idempotents sum to the unit");
        (b, bi, ranges)
    }

    /// Basis of `Hom(self, other)`, each map a `dim other x dim self` matrix.
    /// Maps preserve the frame weight spaces, so only those blocks are solved
    /// for, against the homogeneous generators.
    pub fn hom(&self, other: &Self) -> Vec<Mat<F>> {
        let (dm, dn) = (self.dim, other.dim);
        if dm == 0 || dn == 0 {
            return Vec::new();
        }
        let (bm, bmi, rm) = self.weights();
        let (bn, bni, rn) = other.weights();
        let mut off = vec![0];
        for (x, y) in rm.iter().zip(&rn) {
            off.push(off.last().unwrap() + x.len() * y.len());
        }
        let total = *off.last().unwrap();
        if total == 0 {
            return Vec::new();
        }
        // X_a[r][c], r over f_a N, c over f_a M
        let var = |a: usize, r: usize, c: usize| off[a] + r * rm[a].len() + c;
        let mut red = RowReducer::new(total);
        for (a, b, g) in &self.ctx.gens {
            let (a, b) = (*a, *b);
            if rn[a].is_empty() || rm[b].is_empty() {
                continue;
            }
            let gm = bmi.mul(&self.act_coords(g)).mul(&bm);
            let gn = bni.mul(&other.act_coords(g)).mul(&bn);
            // gn[a,b] X_b - X_a gm[a,b] = 0 on block (a, b)
            for r in 0..rn[a].len() {
                for c in 0..rm[b].len() {
                    let mut row: Vec<(usize, F)> = Vec::new();
                    for k in 0..rn[b].len() {
                        let x = &gn[(rn[a].start + r, rn[b].start + k)];
                        if !x.is_zero() {
                            row.push((var(b, k, c), x.clone()));
                        }
                    }
                    for k in 0..rm[a].len() {
                        let x = &gm[(rm[a].start + k, rm[b].start + c)];
                        if !x.is_zero() {
                            row.push((var(a, r, k), -x.clone()));
                        }
                    }
                    let row = merge(row);
                    if !row.is_empty() {
                        red.push_sparse(&row);
                    }
                }
            }
        }
        red.nullspace()
            .into_iter()
            .map(|v| {
                let mut x = Mat::zeros(dn, dm);
                for a in 0..rm.len() {
                    for r in 0..rn[a].len() {
                        for c in 0..rm[a].len() {
                            x[(rn[a].start + r, rm[a].start + c)] = v[var(a, r, c)].clone();
                        }
                    }
                }
                bn.mul(&x).mul(&bmi)
            })
            .collect()
    }

    pub fn hom_dim(&self, other: &Self) -> usize {
        self.hom(other).len()
    }

    pub fn end_dim(&self) -> usize {
        self.hom_dim(self)
    }

    /// An isomorphism `self -> other`, if one exists. Random combinations of
    /// a Hom basis are tried first, then small coefficients exhaustively.
    pub fn isomorphism(&self, other: &Self) -> Result<Option<Mat<F>>> {
        if self.dim != other.dim {
            return Ok(None);
        }
        if self.dim == 0 {
            return Ok(Some(Mat::zeros(0, 0)));
        }
        let basis = self.hom(other);
        if basis.is_empty() {
            return Ok(None);
        }
        let d = self.dim;
        let try_c = |c: &[F]| {
            let m = combine(&basis, c, d, d);
            (m.rank() == d).then_some(m)
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0x150);
        for _ in 0..24 {
            let c: Vec<F> = basis.iter().map(|_| F::from_i64(rng.gen_range(-3..=3))).collect();
            if let Some(m) = try_c(&c) {
                return Ok(Some(m));
            }
        }
        // exhaustive over small coefficients; this covers all of F2 and F3
        let vals = F::small_coefficients();
        let h = basis.len();
        if (vals.len() as f64).powi(h as i32) > 65536.0 {
            return Err(Error::Invalid(format!("isomorphism search over a {h}-dimensional Hom space was inconclusive")));
        }
        let mut idx = vec![0usize; h];
        loop {
            let c: Vec<F> = idx.iter().map(|&i| vals[i].clone()).collect();
            if let Some(m) = try_c(&c) {
                return Ok(Some(m));
            }
            let Some(k) = idx.iter().position(|&i| i + 1 < vals.len()) else {
                return Ok(None);
            };
            idx[k] += 1;
            for i in idx.iter_mut().take(k) {
                *i = 0;
            }
        }
    }

    pub fn is_isomorphic(&self, other: &Self) -> Result<bool> {
        Ok(self.isomorphism(other)?.is_some())
    }

    /// Whether `x` intertwines `self -> other`.
    pub fn is_hom(&self, other: &Self, x: &Mat<F>) -> bool {
        self.action.iter().zip(&other.action).all(|(a, b)| b.mul(x) == x.mul(a))
    }

    /// Sum of the images of all maps `s -> self`.
    pub fn trace_of(&self, s: &Self) -> Subspace<F> {
        let mut vecs = Vec::new();
        for f in s.hom(self) {
            vecs.extend((0..f.cols()).map(|c| f.column(c)));
        }
        Subspace::span(self.dim, vecs)
    }

    /// A projective module `P` with a surjection `pi: P -> self`, built from
    /// the top of the module at each frame idempotent.
    pub fn projective_cover(&self) -> Result<(Self, Mat<F>)> {
        let rad = self.radical_space();
        let mut p = Module::zero(self.ctx.clone());
        let mut cols: Vec<Vec<F>> = Vec::new();
        let mut top = RowReducer::new(self.dim);
        for (a, fc) in self.ctx.frame_coords.iter().enumerate() {
            let pf = self.act_coords(fc);
            let (space, action) = self.ctx.frame_projective(a);
            let proj = Module::new(self.ctx.clone(), space.dim(), action.clone())?;
            for c in 0..self.dim {
                let v = pf.column(c);
                if v.iter().all(|x| x.is_zero()) || !top.push(rad.reduce(&v)) {
                    continue;
                }
                // Alg f -> M sends a f to a v
                for src in space.basis() {
                    cols.push(self.act_coords(src).mul_vec(&v));
                }
                p = p.direct_sum(&proj);
            }
        }
        let pi = Mat::from_columns(self.dim, &cols);
        if pi.rank() != self.dim {
            return Err(Error::Invalid("projective cover is not surjective".into()));
        }
        Ok((p, pi))
    }

    /// Projective: the identity lifts through the projective cover.
    pub fn is_projective(&self) -> Result<bool> {
        if self.dim == 0 {
            return Ok(true);
        }
        let (p, pi) = self.projective_cover()?;
        let hs = self.hom(&p);
        let d = self.dim;
        let n = d * d;
        let cols: Vec<Vec<F>> = hs.iter().map(|h| pi.mul(h).into_flat()).collect();
        if cols.is_empty() {
            return Ok(false);
        }
        let a = Mat::from_columns(n, &cols);
        let b = Mat::from_columns(n, &[Mat::<F>::identity(d).into_flat()]);
        Ok(crate::linalg::solve(&a, &b)?.is_some())
    }

    /// `dim Ext^1(self, n)` from `0 -> Omega -> P -> self -> 0`.
    pub fn ext1_dim(&self, n: &Self) -> Result<usize> {
        if self.dim == 0 || n.dim == 0 {
            return Ok(0);
        }
        let (p, pi) = self.projective_cover()?;
        let omega = p.sub(&Subspace::span(p.dim(), pi.kernel()))?;
        let v = omega.hom_dim(n) + self.hom_dim(n);
        let w = p.hom_dim(n);
        v.checked_sub(w).ok_or_else(|| Error::Invalid("negative Ext dimension".into()))
    }

    /// Idempotent restriction `e M` as a module over `target`, whose basis
    /// maps into this algebra through `embed`.
    pub fn restrict(&self, e: &Mat<F>, target: &Ctx<F>, embed: &dyn Fn(&Mat<F>) -> Mat<F>) -> Result<Self> {
        let pe = self.act(e)?;
        let space = Subspace::span(self.dim, (0..self.dim).map(|c| pe.column(c)));
        let action = target
            .alg
            .basis()
            .iter()
            .map(|b| restrict_map(&self.act(&embed(b))?, &space))
            .collect::<Result<_>>()?;
        Module::new(target.clone(), space.dim(), action)
    }

    /// Random submodule generated by `k` random vectors.
    pub fn random_submodule<R: Rng>(&self, k: usize, rng: &mut R) -> Subspace<F> {
        let vecs: Vec<Vec<F>> = (0..k).map(|_| (0..self.dim).map(|_| F::from_i64(rng.gen_range(-1..=2))).collect()).collect();
        self.generated(&vecs)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let grid = |m: &Mat<F>| (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>();
        json!({
            "algebra": self.ctx.alg.label(),
            "dim": self.dim,
            "action": self.action.iter().map(grid).collect::<Vec<_>>(),
        })
    }
}

/// Right multiplication `y -> y x` in coordinates.
pub fn right_mult<F: Field>(ctx: &Ctx<F>, x: &Mat<F>) -> Result<Mat<F>> {
    Ok(combine(&ctx.right_reg, &ctx.coords(x)?, ctx.dim(), ctx.dim()))
}

/// Left multiplication `y -> x y` in coordinates.
pub fn left_mult<F: Field>(ctx: &Ctx<F>, x: &Mat<F>) -> Result<Mat<F>> {
    Ok(combine(&ctx.left_reg, &ctx.coords(x)?, ctx.dim(), ctx.dim()))
}

/// `Alg e` as a subspace of coordinate space.
fn ideal_space<F: Field>(ctx: &Ctx<F>, e: &Mat<F>) -> Result<Subspace<F>> {
    let rr = combine(&ctx.right_reg, &ctx.coords(e)?, ctx.dim(), ctx.dim());
    Ok(Subspace::span(ctx.dim(), (0..ctx.dim()).map(|k| rr.column(k))))
}

fn merge<F: Field>(mut row: Vec<(usize, F)>) -> Vec<(usize, F)> {
    row.sort_by_key(|(k, _)| *k);
    let mut out: Vec<(usize, F)> = Vec::with_capacity(row.len());
    for (k, x) in row {
        match out.last_mut() {
            Some((j, y)) if *j == k => *y += x,
            _ => out.push((k, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}
