//! Right and left Burt-Butler algebras of the poset bocs as spaces of
//! A-linear maps `U -> A`, their faithful actions on `A`, matrix
//! realizations, the idempotent frame of the left algebra and its basic
//! corner.

use std::collections::BTreeMap;

use serde_json::json;

use crate::algebra::MatrixAlgebra;
use crate::bocs::PosetBocs;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::incidence::{e, eps, eps0, incidence_algebra, matrix_span, RowBalanced};
use crate::linalg::{add_scaled, unit_vec, Mat, RowReducer, Subspace};
use crate::poset::{Marking, Poset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `Hom_A(_A U, _A A)` with the opposite product.
    Right,
    /// `Hom_A(U_A, A_A)`.
    Left,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Right => "right",
            Side::Left => "left",
        }
    }
}

/// Matrix of right multiplication by `x` in the basis of `A`.
fn right_regular<F: Field>(a: &MatrixAlgebra<F>, x: &Mat<F>) -> Mat<F> {
    let cols: Vec<Vec<F>> = a.basis().iter().map(|b| a.coords(&b.mul(x)).expect("closed")).collect();
    Mat::from_columns(a.dim(), &cols)
}

fn violation(msg: impl Into<String>) -> Error {
    Error::Invalid(format!("theorem violation: {}", msg.into()))
}

/// The space of A-linear maps `U -> A` (as `dim A x dim U` matrices) on one
/// side, with the convolution product through the comultiplication.
#[derive(Clone, Debug)]
pub struct HomAlgebra<F: Field> {
    pub side: Side,
    pub basis: Vec<Mat<F>>,
    space: Subspace<F>,
    a_left: Vec<Mat<F>>,
    a_right: Vec<Mat<F>>,
}

impl<F: Field> HomAlgebra<F> {
    pub fn new(b: &PosetBocs<F>, side: Side) -> Result<Self> {
        let a = &b.a;
        let ka = a.dim();
        let du = b.dim_u();
        let a_left: Vec<Mat<F>> = a.basis().iter().map(|x| a.left_regular(x)).collect();
        let a_right: Vec<Mat<F>> = a.basis().iter().map(|x| right_regular(a, x)).collect();
        let (aw, uw): (Vec<usize>, &Vec<usize>) = match side {
            Side::Right => (a.blocks().iter().map(|x| x.0).collect(), &b.u.lw),
            Side::Left => (a.blocks().iter().map(|x| x.1).collect(), &b.u.rw),
        };
        // unknowns: entries (t, c) joining basis vectors of equal weight
        let mut var = BTreeMap::new();
        for t in 0..ka {
            for c in 0..du {
                if aw[t] == uw[c] {
                    let k = var.len();
                    var.insert((t, c), k);
                }
            }
        }
        let nv = var.len();
        let mut red = RowReducer::new(nv);
        let (u_acts, a_acts) = match side {
            Side::Right => (b.u.left.as_ref().unwrap(), &a_left),
            Side::Left => (b.u.right.as_ref().unwrap(), &a_right),
        };
        for s in 0..ka {
            let ua = &u_acts[s];
            let aa = &a_acts[s];
            // Right: aa F - F ua = 0. Left: F ua - aa F = 0.
            let sign = match side {
                Side::Right => F::one(),
                Side::Left => -F::one(),
            };
            for r in 0..ka {
                for c in 0..du {
                    let mut row: BTreeMap<usize, F> = BTreeMap::new();
                    for t in 0..ka {
                        let x = &aa[(r, t)];
                        if !x.is_zero() {
                            if let Some(&k) = var.get(&(t, c)) {
                                *row.entry(k).or_insert_with(F::zero) += x.clone() * sign.clone();
                            }
                        }
                    }
                    for q in 0..du {
                        let x = &ua[(q, c)];
                        if !x.is_zero() {
                            if let Some(&k) = var.get(&(r, q)) {
                                *row.entry(k).or_insert_with(F::zero) -= x.clone() * sign.clone();
                            }
                        }
                    }
                    let entries: Vec<(usize, F)> = row.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                    if !entries.is_empty() {
                        red.push_sparse(&entries);
                    }
                }
            }
        }
        let basis: Vec<Mat<F>> = red
            .nullspace()
            .into_iter()
            .map(|v| {
                let mut m = Mat::zeros(ka, du);
                for (&(t, c), &k) in &var {
                    m[(t, c)] = v[k].clone();
                }
                m
            })
            .collect();
        let space = Subspace::span(ka * du, basis.iter().map(|m| m.flat().to_vec()));
        Ok(HomAlgebra { side, basis, space, a_left, a_right })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, f: &Mat<F>) -> bool {
        self.space.contains(f.flat()).unwrap_or(false)
    }

    /// A-linearity on the declared side, checked directly on the actions.
    pub fn is_linear(&self, b: &PosetBocs<F>, f: &Mat<F>) -> bool {
        match self.side {
            Side::Right => {
                let ua = b.u.left.as_ref().unwrap();
                (0..b.a.dim()).all(|s| self.a_left[s].mul(f) == f.mul(&ua[s]))
            }
            Side::Left => {
                let ua = b.u.right.as_ref().unwrap();
                (0..b.a.dim()).all(|s| f.mul(&ua[s]) == self.a_right[s].mul(f))
            }
        }
    }

    pub fn element(&self, coords: &[F]) -> Mat<F> {
        let mut m = Mat::zeros(self.basis[0].rows(), self.basis[0].cols());
        for (c, x) in coords.iter().zip(&self.basis) {
            m.add_scaled(c, x);
        }
        m
    }

    /// Product through the comultiplication: on the right side
    /// `(fg)(u) = sum g(u1 f(u2))`, on the left side `(fg)(u) = sum f(g(u1) u2)`.
    pub fn mul(&self, b: &PosetBocs<F>, f: &Mat<F>, g: &Mat<F>) -> Mat<F> {
        let du = b.dim_u();
        let ka = b.a.dim();
        let mut cols = Vec::with_capacity(du);
        for terms in &b.comult_raw {
            let mut acc = vec![F::zero(); ka];
            for (c, x, y) in terms {
                let (outer, inner, acts, at, idx) = match self.side {
                    Side::Right => (g, f, b.u.right.as_ref().unwrap(), *y, *x),
                    Side::Left => (f, g, b.u.left.as_ref().unwrap(), *x, *y),
                };
                let coef = inner.column(at);
                let mut w = vec![F::zero(); du];
                for (s, k) in coef.iter().enumerate() {
                    if !k.is_zero() {
                        add_scaled(&mut w, k, &acts[s].column(idx));
                    }
                }
                add_scaled(&mut acc, c, &outer.mul_vec(&w));
            }
            cols.push(acc);
        }
        Mat::from_columns(ka, &cols)
    }

    /// The image of `z` in the algebra: `u -> eps(u) z` on the right side,
    /// `u -> z eps(u)` on the left side.
    pub fn embed(&self, b: &PosetBocs<F>, z: &[F]) -> Mat<F> {
        let zm = b.a.element(z);
        match self.side {
            Side::Right => right_regular(&b.a, &zm).mul(&b.counit),
            Side::Left => b.a.left_regular(&zm).mul(&b.counit),
        }
    }

    /// The counit is a two-sided unit and the product is associative on
    /// basis triples. Cubic in the dimension; meant for small posets.
    pub fn check_unit_and_associativity(&self, b: &PosetBocs<F>) -> Result<()> {
        let eps = &b.counit;
        if !self.contains(eps) {
            return Err(violation("counit is not in the hom space"));
        }
        let k = self.dim();
        for f in &self.basis {
            if &self.mul(b, eps, f) != f || &self.mul(b, f, eps) != f {
                return Err(violation("counit is not the identity"));
            }
        }
        let prods: Vec<Vec<Mat<F>>> =
            (0..k).map(|s| (0..k).map(|t| self.mul(b, &self.basis[s], &self.basis[t])).collect()).collect();
        for s in 0..k {
            for t in 0..k {
                if !self.contains(&prods[s][t]) {
                    return Err(violation("product leaves the hom space"));
                }
                for r in 0..k {
                    let l = self.mul(b, &prods[s][t], &self.basis[r]);
                    let rr = self.mul(b, &self.basis[s], &prods[t][r]);
                    if l != rr {
                        return Err(violation("product is not associative"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Expected dimension: `1 + 2n + c` on the right, `1 + 2n + 4c` on the left,
/// with `c` the number of strict relations.
pub fn expected_dim(p: &Poset, side: Side) -> usize {
    let c = p.card_lt();
    match side {
        Side::Right => 1 + 2 * p.n() + c,
        Side::Left => 1 + 2 * p.n() + 4 * c,
    }
}

/// A Burt-Butler algebra with its faithful matrix realization.
#[derive(Clone, Debug)]
pub struct RealizedAlgebra<F: Field> {
    pub side: Side,
    pub hom: HomAlgebra<F>,
    /// `G` of each hom basis element.
    pub g: Vec<Mat<F>>,
    /// The block matrix algebra, equal to the span of the `G` values.
    pub image: MatrixAlgebra<F>,
    /// The embedded copy of `A` inside `image`.
    pub a_image: MatrixAlgebra<F>,
}

/// Block algebra `(KP 0; K^{1xn} K)` in `Mat_{n+1}`.
pub fn right_target<F: Field>(p: &Poset) -> Result<MatrixAlgebra<F>> {
    let n = p.n();
    let s = n + 1;
    let mut basis: Vec<Mat<F>> = incidence_algebra::<F>(p).basis().iter().map(|m| m.embed(s, s, 0, 0)).collect();
    basis.extend((0..n).map(|j| Mat::unit(s, s, n, j)));
    basis.push(Mat::unit(s, s, n, n));
    MatrixAlgebra::new("R", s, basis)
}

/// Block algebra `(KP K1_0P; KP K1P)` in `Mat_{2n}`.
pub fn left_target<F: Field>(p: &Poset, mk: &Marking) -> Result<MatrixAlgebra<F>> {
    let n = p.n();
    let s = 2 * n;
    let kp = incidence_algebra::<F>(p);
    let rb = RowBalanced::<F>::new(p, mk)?;
    let mut basis: Vec<Mat<F>> = Vec::new();
    basis.extend(kp.basis().iter().map(|m| m.embed(s, s, 0, 0)));
    basis.extend(rb.centralized.basis.iter().map(|m| m.embed(s, s, 0, n)));
    basis.extend(kp.basis().iter().map(|m| m.embed(s, s, n, 0)));
    basis.extend(rb.algebra.basis().iter().map(|m| m.embed(s, s, n, n)));
    MatrixAlgebra::new("L", s, basis)
}

impl<F: Field> RealizedAlgebra<F> {
    /// `G(f)` from the right omega-action on `e_0 A` with ordered basis
    /// `(alpha_1..alpha_n, e_0)`: row `j` holds the coefficients of `x_j . f`.
    pub fn g_right(b: &PosetBocs<F>, f: &Mat<F>) -> Result<Mat<F>> {
        let n = b.n();
        let xs: Vec<usize> = (1..=n).map(|i| b.alpha(i)).chain([b.idem(0)]).collect();
        let mut g = Mat::zeros(n + 1, n + 1);
        for (j, &xj) in xs.iter().enumerate() {
            // omega x_j has the U coordinates of x_j on the omega slots
            let w = f.column(xj);
            for (r, c) in w.iter().enumerate() {
                if !c.is_zero() && !xs.contains(&r) {
                    return Err(violation("right omega-action leaves e_0 A"));
                }
            }
            for (i, &xi) in xs.iter().enumerate() {
                g[(j, i)] = w[xi].clone();
            }
        }
        Ok(g)
    }

    /// `G(f)` from the left omega'-action on `A e'` with ordered basis
    /// `(e_1..e_n, alpha_1..alpha_n)`: column `t` holds `f . b_t`.
    pub fn g_left(b: &PosetBocs<F>, f: &Mat<F>) -> Result<Mat<F>> {
        let n = b.n();
        let bs: Vec<usize> = (1..=n).map(|i| b.idem(i)).chain((1..=n).map(|i| b.alpha(i))).collect();
        let wp = b.omega_prime();
        let la = b.u.left.as_ref().unwrap();
        let mut g = Mat::zeros(2 * n, 2 * n);
        for (t, &bt) in bs.iter().enumerate() {
            let v = f.mul_vec(&la[bt].mul_vec(&wp));
            for (r, c) in v.iter().enumerate() {
                if !c.is_zero() && !bs.contains(&r) {
                    return Err(violation("left omega'-action leaves A e'"));
                }
            }
            for (s, &bsx) in bs.iter().enumerate() {
                g[(s, t)] = v[bsx].clone();
            }
        }
        Ok(g)
    }

    pub fn realize(b: &PosetBocs<F>, side: Side, f: &Mat<F>) -> Result<Mat<F>> {
        match side {
            Side::Right => Self::g_right(b, f),
            Side::Left => Self::g_left(b, f),
        }
    }

    pub fn new(b: &PosetBocs<F>, side: Side, mk: &Marking) -> Result<Self> {
        let p = &b.poset;
        let n = p.n();
        let hom = HomAlgebra::new(b, side)?;
        if hom.dim() != expected_dim(p, side) {
            return Err(violation(format!(
                "{} algebra has dimension {}, expected {}",
                side.name(),
                hom.dim(),
                expected_dim(p, side)
            )));
        }
        let g: Vec<Mat<F>> = hom.basis.iter().map(|f| Self::realize(b, side, f)).collect::<Result<_>>()?;
        let size = g[0].rows();
        let span = matrix_span(size, &g);
        if span.dim() != hom.dim() {
            return Err(violation("the action is not faithful"));
        }
        let target = match side {
            Side::Right => right_target::<F>(p)?,
            Side::Left => left_target::<F>(p, mk)?,
        };
        if &span != target.subspace() {
            return Err(violation(format!("{} realization differs from the block algebra", side.name())));
        }
        if Self::realize(b, side, &b.counit)? != Mat::identity(size) {
            return Err(violation("counit does not realize to the identity"));
        }
        // embedded copy of A
        let ka = b.a.dim();
        let mut a_mats = Vec::with_capacity(ka);
        for s in 0..ka {
            let m = Self::realize(b, side, &hom.embed(b, &unit_vec(ka, s)))?;
            let want = match side {
                Side::Right => {
                    if s == b.idem(0) {
                        Mat::unit(size, size, n, n)
                    } else if s <= n {
                        Mat::unit(size, size, s - 1, s - 1)
                    } else {
                        Mat::unit(size, size, n, s - n - 1)
                    }
                }
                Side::Left => {
                    if s == b.idem(0) {
                        Mat::identity(n).embed(size, size, n, n)
                    } else if s <= n {
                        Mat::unit(size, size, s - 1, s - 1)
                    } else {
                        let i = s - n - 1;
                        Mat::unit(size, size, i + n, i)
                    }
                }
            };
            if m != want {
                return Err(violation(format!("embedded A element {} realizes wrongly", b.a_paths[s])));
            }
            a_mats.push(m);
        }
        let a_image = MatrixAlgebra::new(format!("A in {}", side.name()), size, a_mats)?;
        if side == Side::Left {
            let mut col = vec![F::zero(); size];
            for c in col.iter_mut().skip(n) {
                *c = F::one();
            }
            let line = Subspace::span(size, [col.clone()]);
            for m in &g {
                if !line.contains(&m.mul_vec(&col))? {
                    return Err(violation("L . alpha' is not inside K alpha'"));
                }
            }
        }
        let label = match side {
            Side::Right => "R",
            Side::Left => "L",
        };
        Ok(RealizedAlgebra { side, hom, g, image: target.relabel(label), a_image })
    }

    pub fn dim(&self) -> usize {
        self.hom.dim()
    }

    /// `G(f_s f_t) = G(f_s) G(f_t)` on the listed basis pairs.
    pub fn check_multiplicative(&self, b: &PosetBocs<F>, pairs: &[(usize, usize)]) -> Result<()> {
        for &(s, t) in pairs {
            let prod = self.hom.mul(b, &self.hom.basis[s], &self.hom.basis[t]);
            if Self::realize(b, self.side, &prod)? != self.g[s].mul(&self.g[t]) {
                return Err(violation(format!("G is not multiplicative on basis pair ({s}, {t})")));
            }
        }
        Ok(())
    }

    pub fn all_pairs(&self) -> Vec<(usize, usize)> {
        let k = self.dim();
        (0..k).flat_map(|s| (0..k).map(move |t| (s, t))).collect()
    }

    /// `z -> z` embedding is multiplicative, and the omega-action extends
    /// multiplication in `A`: `z0 . z = z0 z` (right), `z . z0 = z z0` (left).
    pub fn check_embedding(&self, b: &PosetBocs<F>) -> Result<()> {
        let a = &b.a;
        let ka = a.dim();
        let w = b.omega();
        let la = b.u.left.as_ref().unwrap();
        for s in 0..ka {
            let zs = self.hom.embed(b, &unit_vec(ka, s));
            for t in 0..ka {
                let zt = self.hom.embed(b, &unit_vec(ka, t));
                let st = a.product_coords(s, t);
                if self.hom.mul(b, &zs, &zt) != self.hom.embed(b, &st) {
                    return Err(violation("embedding of A is not multiplicative"));
                }
                let (lhs, want) = match self.side {
                    // z_s . z_t = z_t(omega z_s)
                    Side::Right => (zt.column(s), st),
                    // z_s . z_t = z_s(z_t omega)
                    Side::Left => (zs.mul_vec(&la[t].mul_vec(&w)), st),
                };
                if lhs != want {
                    return Err(violation("omega-action does not extend multiplication in A"));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let grid = |m: &Mat<F>| -> Vec<Vec<String>> {
            (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.to_string()).collect()).collect()
        };
        json!({
            "side": self.side.name(),
            "dim": self.dim(),
            "G": self.g.iter().map(grid).collect::<Vec<_>>(),
            "image": self.image.to_json(),
            "A_image": self.a_image.basis().iter().map(grid).collect::<Vec<_>>(),
        })
    }
}

/// The left algebra framed by `X = {I_i, J_k, J_0}`.
#[derive(Clone, Debug)]
pub struct LeftFrame<F: Field> {
    pub algebra: MatrixAlgebra<F>,
    /// For each simple `0..=n`, the frame indices in its isomorphism class.
    pub classes: Vec<Vec<usize>>,
}

impl<F: Field> LeftFrame<F> {
    pub fn new(left: &RealizedAlgebra<F>, p: &Poset, mk: &Marking) -> Result<Self> {
        let n = p.n();
        let s = 2 * n;
        let mut labels = Vec::new();
        let mut frame = Vec::new();
        for i in p.elements() {
            labels.push(format!("I{i}"));
            frame.push(Mat::unit(s, s, i - 1, i - 1));
        }
        for k in p.non_minimal() {
            labels.push(format!("J{k}"));
            frame.push(eps::<F>(n, mk, k).embed(s, s, n, n));
        }
        labels.push("J0".into());
        frame.push(eps0::<F>(p, mk).embed(s, s, n, n));
        let algebra = left.image.clone().with_frame(labels.clone(), frame.clone())?;
        for (x, l) in frame.iter().zip(&labels) {
            let c = algebra.corner("eLe", x)?.with_frame(vec![l.clone()], vec![x.clone()])?;
            let rad = c.radical()?;
            if c.dim() - rad.space.dim() != 1 {
                return Err(violation(format!("{l} is not primitive")));
            }
        }
        for k in p.non_minimal() {
            let up = eps::<F>(n, mk, k).embed(s, s, 0, n);
            let down = e::<F>(n, k, k).embed(s, s, n, 0);
            if !algebra.contains(&up) || !algebra.contains(&down) {
                return Err(violation(format!("connecting elements for {k} lie outside L")));
            }
            if up.mul(&down) != frame[k - 1] || down.mul(&up) != eps::<F>(n, mk, k).embed(s, s, n, n) {
                return Err(violation(format!("I{k} and J{k} are not isomorphic")));
            }
        }
        let iso = algebra.iso_classes()?;
        let mut classes = vec![Vec::new(); n + 1];
        for cls in iso {
            let simple = cls
                .iter()
                .find_map(|&x| {
                    let l = &labels[x];
                    if l == "J0" {
                        Some(0)
                    } else if let Some(i) = l.strip_prefix('I') {
                        i.parse::<usize>().ok()
                    } else {
                        None
                    }
                })
                .ok_or_else(|| violation("an isomorphism class has no I or J0 member"))?;
            if !classes[simple].is_empty() {
                return Err(violation("two classes share a simple"));
            }
            classes[simple] = cls;
        }
        Ok(LeftFrame { algebra, classes })
    }

    /// `dim S(i)` for `i = 0..=n`.
    pub fn simple_dims(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.len()).collect()
    }
}

/// The basic algebra `L'` obtained by cutting the left algebra with
/// `Id - sum_{j non-minimal} I_j`, re-blocked so that it is lower triangular.
#[derive(Clone, Debug)]
pub struct BasicLeft<F: Field> {
    pub algebra: MatrixAlgebra<F>,
    /// Rows and columns of `Mat_{2n}` kept, in their new order (0-based).
    pub perm: Vec<usize>,
}

impl<F: Field> BasicLeft<F> {
    pub fn new(left: &RealizedAlgebra<F>, p: &Poset, mk: &Marking) -> Result<Self> {
        let n = p.n();
        let s = 2 * n;
        let mut et = Mat::identity(s);
        for j in p.non_minimal() {
            et = et.sub(&Mat::unit(s, s, j - 1, j - 1));
        }
        let corner = left.image.corner("eLe", &et)?;
        let mins = p.minimal();
        let perm: Vec<usize> = mins.iter().map(|i| i - 1).chain(n..s).collect();
        let dropped: Vec<usize> = (0..s).filter(|r| !perm.contains(r)).collect();
        let size = perm.len();
        let mut basis = Vec::new();
        for m in corner.basis() {
            if dropped.iter().any(|&r| (0..s).any(|c| !m[(r, c)].is_zero() || !m[(c, r)].is_zero())) {
                return Err(violation("corner is not supported on the kept rows and columns"));
            }
            let x = m.select(&perm, &perm);
            if (0..size).any(|r| (r + 1..size).any(|c| !x[(r, c)].is_zero())) {
                return Err(violation("re-blocked corner is not lower triangular"));
            }
            basis.push(x);
        }
        let (labels, frame) = Self::frame(p, mk);
        let algebra = MatrixAlgebra::new("L'", size, basis)?.with_frame(labels, frame)?;
        if !algebra.is_basic()? {
            return Err(violation("L' is not basic"));
        }
        Ok(BasicLeft { algebra, perm })
    }

    /// Idempotents of the re-blocked corner: `E_tt` for the minimal
    /// elements (labelled by the element), then `eps_k` and `eps_0` in the
    /// lower block (labels `"k"` and `"0"`).
    pub fn frame(p: &Poset, mk: &Marking) -> (Vec<String>, Vec<Mat<F>>) {
        let n = p.n();
        let mins = p.minimal();
        let off = mins.len();
        let size = off + n;
        let mut labels = Vec::new();
        let mut frame = Vec::new();
        for (t, &i) in mins.iter().enumerate() {
            labels.push(i.to_string());
            frame.push(Mat::unit(size, size, t, t));
        }
        for k in p.non_minimal() {
            labels.push(k.to_string());
            frame.push(eps::<F>(n, mk, k).embed(size, size, off, off));
        }
        labels.push("0".into());
        frame.push(eps0::<F>(p, mk).embed(size, size, off, off));
        (labels, frame)
    }

    /// The block shape `(R'' 0; [R''; Z_P] K1P)` in the re-blocked coordinates,
    /// with the frame above.
    pub fn block_shape(p: &Poset, mk: &Marking) -> Result<MatrixAlgebra<F>> {
        let n = p.n();
        let mins = p.minimal();
        let off = mins.len();
        let size = off + n;
        let mut basis = Vec::new();
        for (t, &i) in mins.iter().enumerate() {
            basis.push(Mat::unit(size, size, t, t));
            for j in p.elements().filter(|&j| p.leq(i, j)) {
                basis.push(Mat::unit(size, size, off + j - 1, t));
            }
        }
        let rb = RowBalanced::<F>::new(p, mk)?;
        basis.extend(rb.algebra.basis().iter().map(|m| m.embed(size, size, off, off)));
        let (labels, frame) = Self::frame(p, mk);
        MatrixAlgebra::new("L' shape", size, basis)?.with_frame(labels, frame)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({"perm": self.perm, "algebra": self.algebra.to_json()})
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{F2, F3, Q};

    fn pb() -> Poset {
        Poset::parse("n=3;1<3;2<3").unwrap()
    }

    #[test]
    fn antichain_hom_algebras_are_a() {
        let p = Poset::antichain(3);
        let b = PosetBocs::<Q>::new(&p).unwrap();
        let mk = Marking::default_for(&p);
        for side in [Side::Right, Side::Left] {
            let r = RealizedAlgebra::new(&b, side, &mk).unwrap();
            assert_eq!(r.dim(), 7);
            assert!(r.image.same_subspace(&r.a_image));
        }
    }

    #[test]
    fn pb_dimensions_and_products() {
        let p = pb();
        let b = PosetBocs::<Q>::new(&p).unwrap();
        let mk = Marking::default_for(&p);
        let r = RealizedAlgebra::new(&b, Side::Right, &mk).unwrap();
        assert_eq!(r.dim(), 9);
        r.hom.check_unit_and_associativity(&b).unwrap();
        r.check_multiplicative(&b, &r.all_pairs()).unwrap();
        r.check_embedding(&b).unwrap();
        let l = RealizedAlgebra::new(&b, Side::Left, &mk).unwrap();
        assert_eq!(l.dim(), 15);
        l.check_multiplicative(&b, &l.all_pairs()).unwrap();
        l.check_embedding(&b).unwrap();
        assert!(l.hom.basis.iter().all(|f| l.hom.is_linear(&b, f)));
    }

    #[test]
    fn pb_frame_and_basic_corner() {
        let p = pb();
        let b = PosetBocs::<Q>::new(&p).unwrap();
        let mk = Marking::default_for(&p);
        let l = RealizedAlgebra::new(&b, Side::Left, &mk).unwrap();
        let fr = LeftFrame::new(&l, &p, &mk).unwrap();
        assert_eq!(fr.algebra.frame().len(), 5);
        assert_eq!(fr.simple_dims(), vec![1, 1, 1, 2]);
        let bl = BasicLeft::new(&l, &p, &mk).unwrap();
        assert_eq!(bl.algebra.dim(), 9);
        let shape = BasicLeft::<Q>::block_shape(&p, &mk).unwrap();
        assert!(bl.algebra.same_subspace(&shape));
        let et = {
            let mut m = Mat::<Q>::identity(6);
            m = m.sub(&Mat::unit(6, 6, 2, 2));
            m
        };
        assert_eq!(l.image.corner("c", &et).unwrap().dim(), 9);
    }

    #[test]
    fn small_fields_agree() {
        let p = Poset::parse("n=4;1<3;2<3;3<4").unwrap();
        let mk = Marking::default_for(&p);
        let bq = PosetBocs::<Q>::new(&p).unwrap();
        let b2 = PosetBocs::<F2>::new(&p).unwrap();
        let b3 = PosetBocs::<F3>::new(&p).unwrap();
        for side in [Side::Right, Side::Left] {
            let q = RealizedAlgebra::new(&bq, side, &mk).unwrap().dim();
            assert_eq!(q, RealizedAlgebra::new(&b2, side, &mk).unwrap().dim());
            assert_eq!(q, RealizedAlgebra::new(&b3, side, &mk).unwrap().dim());
        }
    }

    #[test]
    fn gallery_dimensions() {
        let pe = Poset::parse("n=5;1<3;2<3;3<4;3<5").unwrap();
        let mk = Marking::default_for(&pe);
        let b = PosetBocs::<Q>::new(&pe).unwrap();
        assert_eq!(RealizedAlgebra::new(&b, Side::Right, &mk).unwrap().dim(), 19);
        let l = RealizedAlgebra::new(&b, Side::Left, &mk).unwrap();
        assert_eq!(LeftFrame::new(&l, &pe, &mk).unwrap().simple_dims(), vec![1, 1, 1, 2, 2, 2]);

        let pd = Poset::parse("n=4;1<3;2<3;1<4;2<4").unwrap();
        let b = PosetBocs::<Q>::new(&pd).unwrap();
        let l = RealizedAlgebra::new(&b, Side::Left, &Marking::default_for(&pd)).unwrap();
        assert_eq!(l.dim(), 25);

        let pc = Poset::parse("n=4;1<3;2<3;2<4").unwrap();
        let mk = Marking::default_for(&pc);
        let b = PosetBocs::<Q>::new(&pc).unwrap();
        let l = RealizedAlgebra::new(&b, Side::Left, &mk).unwrap();
        let bl = BasicLeft::new(&l, &pc, &mk).unwrap();
        assert_eq!(bl.algebra.frame().len(), 5);
        assert!(bl.algebra.is_basic().unwrap());
    }
}
