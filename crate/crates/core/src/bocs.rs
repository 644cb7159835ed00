//! The ditalgebra of a poset and its normal bocs `(A, U)`: quiver with
//! arrows `alpha_i : i -> 0` (degree 0) and `v_ij : j -> i` for `i < j`
//! (degree 1), the differential, the bimodule `U = omega A + V`, counit,
//! comultiplication and the grouplikes `omega`, `omega'`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde_json::json;

use crate::algebra::MatrixAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{is_zero_vec, unit_vec, Mat, Subspace};
use crate::poset::Poset;
use crate::tensor::{act_of, Bimodule, TensorProduct};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arrow {
    /// `alpha_i : i -> 0`
    Alpha(usize),
    /// `v_ij : j -> i`
    V(usize, usize),
}

impl Arrow {
    pub fn source(self) -> usize {
        match self {
            Arrow::Alpha(i) => i,
            Arrow::V(_, j) => j,
        }
    }

    pub fn target(self) -> usize {
        match self {
            Arrow::Alpha(_) => 0,
            Arrow::V(i, _) => i,
        }
    }

    pub fn degree(self) -> usize {
        match self {
            Arrow::Alpha(_) => 0,
            Arrow::V(..) => 1,
        }
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arrow::Alpha(i) => write!(f, "a{i}"),
            Arrow::V(i, j) => write!(f, "v{i}_{j}"),
        }
    }
}

/// A path written in composition order: the leftmost arrow is applied last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<Arrow>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { start: v, arrows: Vec::new() }
    }

    pub fn arrow(a: Arrow) -> Self {
        Path { start: a.source(), arrows: vec![a] }
    }

    pub fn target(&self) -> usize {
        self.arrows.first().map_or(self.start, |a| a.target())
    }

    pub fn degree(&self) -> usize {
        self.arrows.iter().map(|a| a.degree()).sum()
    }

    /// `self * other`: first `other`, then `self`.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.start != other.target() {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend(other.arrows.iter().copied());
        Some(Path { start: other.start, arrows })
    }

    /// Split a path into the part up to and including its leftmost
    /// degree-one arrow, and the remainder.
    pub fn split_first_v(&self) -> Option<(Path, Path)> {
        let idx = self.arrows.iter().position(|a| a.degree() == 1)?;
        let rest = Path { start: self.start, arrows: self.arrows[idx + 1..].to_vec() };
        let head = Path { start: rest.target(), arrows: self.arrows[..=idx].to_vec() };
        Some((head, rest))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            return write!(f, "e{}", self.start);
        }
        let s: Vec<String> = self.arrows.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", s.join(" "))
    }
}

/// Linear combination of paths.
pub type TElem<F> = BTreeMap<Path, F>;

fn add_term<F: Field>(t: &mut TElem<F>, p: Path, c: F) {
    let e = t.entry(p).or_insert_with(F::zero);
    *e += c;
}

fn clean<F: Field>(mut t: TElem<F>) -> TElem<F> {
    t.retain(|_, c| !c.is_zero());
    t
}

/// `x * y` in the path algebra.
pub fn t_mul<F: Field>(x: &TElem<F>, y: &TElem<F>) -> TElem<F> {
    let mut out = BTreeMap::new();
    for (p, a) in x {
        for (q, b) in y {
            if let Some(pq) = p.compose(q) {
                add_term(&mut out, pq, a.clone() * b.clone());
            }
        }
    }
    clean(out)
}

pub fn single<F: Field>(p: Path) -> TElem<F> {
    BTreeMap::from([(p, F::one())])
}

/// The ditalgebra: the quiver of the poset and its differential.
#[derive(Clone, Debug)]
pub struct Ditalgebra {
    pub poset: Poset,
}

impl Ditalgebra {
    pub fn new(p: &Poset) -> Self {
        Ditalgebra { poset: p.clone() }
    }

    pub fn arrows(&self) -> Vec<Arrow> {
        let mut out: Vec<Arrow> = self.poset.elements().map(Arrow::Alpha).collect();
        let mut vs: Vec<(usize, usize)> = self.poset.relations();
        vs.sort();
        out.extend(vs.into_iter().map(|(i, j)| Arrow::V(i, j)));
        out
    }

    /// Differential on an arrow.
    pub fn delta_arrow<F: Field>(&self, a: Arrow) -> TElem<F> {
        let p = &self.poset;
        let mut out = BTreeMap::new();
        match a {
            Arrow::Alpha(i) => {
                for h in p.below(i) {
                    let path = Path { start: i, arrows: vec![Arrow::Alpha(h), Arrow::V(h, i)] };
                    add_term(&mut out, path, -F::one());
                }
            }
            Arrow::V(i, j) => {
                for k in i + 1..j {
                    if p.lt(i, k) && p.lt(k, j) {
                        let path = Path { start: j, arrows: vec![Arrow::V(i, k), Arrow::V(k, j)] };
                        add_term(&mut out, path, F::one());
                    }
                }
            }
        }
        clean(out)
    }

    /// Differential on a path by the graded Leibniz rule.
    pub fn delta_path<F: Field>(&self, path: &Path) -> TElem<F> {
        let mut out = BTreeMap::new();
        let k = path.arrows.len();
        let mut deg_before = 0;
        for m in 0..k {
            let a = path.arrows[m];
            let d = self.delta_arrow::<F>(a);
            if !d.is_empty() {
                let left = Path { start: a.target(), arrows: path.arrows[..m].to_vec() };
                let right = if m + 1 < k {
                    Path { start: path.start, arrows: path.arrows[m + 1..].to_vec() }
                } else {
                    Path::trivial(a.source())
                };
                let sign = if deg_before % 2 == 0 { F::one() } else { -F::one() };
                let prod = t_mul(&t_mul(&single(left), &d), &single(right));
                for (p, c) in prod {
                    add_term(&mut out, p, c * sign.clone());
                }
            }
            deg_before += a.degree();
        }
        clean(out)
    }

    pub fn delta<F: Field>(&self, x: &TElem<F>) -> TElem<F> {
        let mut out = BTreeMap::new();
        for (p, c) in x {
            for (q, d) in self.delta_path::<F>(p) {
                add_term(&mut out, q, c.clone() * d);
            }
        }
        clean(out)
    }

    /// `delta^2 = 0` on every arrow.
    pub fn check_delta_squared<F: Field>(&self) -> Result<()> {
        for a in self.arrows() {
            let dd = self.delta(&self.delta_arrow::<F>(a));
            if !dd.is_empty() {
                return Err(Error::Invalid(format!("delta^2 does not vanish on {a}")));
            }
        }
        Ok(())
    }
}

/// Basis element of `U = omega A + V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum UBasis {
    /// `omega b` for the `A`-basis element with this index.
    Omega(usize),
    /// A degree-one path.
    V(Path),
}

/// The normal bocs `(A, U)` of a poset.
#[derive(Clone, Debug)]
pub struct PosetBocs<F: Field> {
    pub poset: Poset,
    pub dit: Ditalgebra,
    /// `A` in `Mat_{n+1}`: `e_i = E_ii`, `e_0 = E_{n+1,n+1}`, `alpha_i = E_{n+1,i}`;
    /// basis `e_0, e_1..e_n, alpha_1..alpha_n`, frame `e_0..e_n` labelled `"0".."n"`.
    pub a: MatrixAlgebra<F>,
    /// `A` basis as paths.
    pub a_paths: Vec<Path>,
    pub u_basis: Vec<UBasis>,
    pub u: Bimodule<F>,
    /// Counit as a `dim A x dim U` matrix.
    pub counit: Mat<F>,
    pub uu: TensorProduct<F>,
    /// Comultiplication as a `dim(U (x) U) x dim U` matrix.
    pub comult: Mat<F>,
    /// Comultiplication as raw sums `c * (u_p (x) u_q)`.
    pub comult_raw: Vec<Vec<(F, usize, usize)>>,
    v_index: HashMap<Path, usize>,
}

impl<F: Field> PosetBocs<F> {
    pub fn new(p: &Poset) -> Result<Self> {
        let n = p.n();
        let dit = Ditalgebra::new(p);
        dit.check_delta_squared::<F>()?;
        let size = n + 1;
        let mut a_paths = vec![Path::trivial(0)];
        let mut a_basis = vec![Mat::unit(size, size, n, n)];
        for i in 1..=n {
            a_paths.push(Path::trivial(i));
            a_basis.push(Mat::unit(size, size, i - 1, i - 1));
        }
        for i in 1..=n {
            a_paths.push(Path::arrow(Arrow::Alpha(i)));
            a_basis.push(Mat::unit(size, size, n, i - 1));
        }
        let labels = (0..=n).map(|k| k.to_string()).collect();
        let frame = a_basis[..=n].to_vec();
        let a = MatrixAlgebra::new("A", size, a_basis)?.with_frame(labels, frame)?;
        let a_index: HashMap<Path, usize> = a_paths.iter().enumerate().map(|(k, q)| (q.clone(), k)).collect();

        let mut u_basis: Vec<UBasis> = (0..a.dim()).map(UBasis::Omega).collect();
        let mut rels = p.relations();
        rels.sort();
        for &(i, j) in &rels {
            u_basis.push(UBasis::V(Path::arrow(Arrow::V(i, j))));
            u_basis.push(UBasis::V(Path { start: j, arrows: vec![Arrow::Alpha(i), Arrow::V(i, j)] }));
        }
        let du = u_basis.len();
        let v_index: HashMap<Path, usize> = u_basis
            .iter()
            .enumerate()
            .filter_map(|(k, b)| match b {
                UBasis::V(q) => Some((q.clone(), k)),
                _ => None,
            })
            .collect();

        // coordinates of degree-0 and degree-1 path combinations
        let to_u = |t: &TElem<F>, omega: bool| -> Vec<F> {
            let mut v = vec![F::zero(); du];
            for (q, c) in t {
                let k = if omega { a_index[q] } else { v_index[q] };
                v[k] += c.clone();
            }
            v
        };
        let mut left = Vec::new();
        let mut right = Vec::new();
        for pa in &a_paths {
            let ta = single::<F>(pa.clone());
            let da = dit.delta(&ta);
            let mut lcols = Vec::new();
            let mut rcols = Vec::new();
            for b in &u_basis {
                match b {
                    UBasis::Omega(k) => {
                        let tb = single::<F>(a_paths[*k].clone());
                        let mut l = to_u(&t_mul(&ta, &tb), true);
                        let extra = to_u(&t_mul(&da, &tb), false);
                        crate::linalg::add_scaled(&mut l, &F::one(), &extra);
                        lcols.push(l);
                        rcols.push(to_u(&t_mul(&tb, &ta), true));
                    }
                    UBasis::V(q) => {
                        let tq = single::<F>(q.clone());
                        lcols.push(to_u(&t_mul(&ta, &tq), false));
                        rcols.push(to_u(&t_mul(&tq, &ta), false));
                    }
                }
            }
            left.push(Mat::from_columns(du, &lcols));
            right.push(Mat::from_columns(du, &rcols));
        }
        let u = Bimodule::new(&a, du, Some(left), Some(right))?;
        u.check(&a)?;

        let mut counit = Mat::zeros(a.dim(), du);
        for (k, b) in u_basis.iter().enumerate() {
            if let UBasis::Omega(x) = b {
                counit[(*x, k)] = F::one();
            }
        }

        let uu = TensorProduct::new(&a, &u, &u)?;
        let omega_terms: Vec<usize> = (0..=n).collect(); // omega e_k
        let mut comult_raw = Vec::new();
        for b in &u_basis {
            let mut terms: Vec<(F, usize, usize)> = Vec::new();
            match b {
                UBasis::Omega(k) => {
                    for &e in &omega_terms {
                        terms.push((F::one(), e, *k));
                    }
                }
                UBasis::V(q) => {
                    let me = v_index[q];
                    for (path, c) in dit.delta_path::<F>(q) {
                        let (head, rest) = path.split_first_v().expect("degree two path");
                        terms.push((c, v_index[&head], v_index[&rest]));
                    }
                    for &e in &omega_terms {
                        terms.push((F::one(), e, me));
                        terms.push((F::one(), me, e));
                    }
                }
            }
            comult_raw.push(terms);
        }
        let cols: Vec<Vec<F>> = comult_raw.iter().map(|t| uu.pairs_sum(t)).collect();
        let comult = Mat::from_columns(uu.dim(), &cols);
        Ok(PosetBocs { poset: p.clone(), dit, a, a_paths, u_basis, u, counit, uu, comult, comult_raw, v_index })
    }

    pub fn n(&self) -> usize {
        self.poset.n()
    }

    pub fn dim_u(&self) -> usize {
        self.u.dim
    }

    /// Index of `alpha_i` in the `A` basis.
    pub fn alpha(&self, i: usize) -> usize {
        self.n() + i
    }

    /// Index of `e_k` (`k = 0..n`) in the `A` basis.
    pub fn idem(&self, k: usize) -> usize {
        k
    }

    /// Index of `v_ij` in the `U` basis.
    pub fn v(&self, i: usize, j: usize) -> usize {
        self.v_index[&Path::arrow(Arrow::V(i, j))]
    }

    /// Index of `alpha_i v_ij` in the `U` basis.
    pub fn alpha_v(&self, i: usize, j: usize) -> usize {
        self.v_index[&Path { start: j, arrows: vec![Arrow::Alpha(i), Arrow::V(i, j)] }]
    }

    pub fn u_name(&self, k: usize) -> String {
        match &self.u_basis[k] {
            UBasis::Omega(x) => format!("w {}", self.a_paths[*x]),
            UBasis::V(q) => q.to_string(),
        }
    }

    pub fn omega(&self) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim_u()];
        for k in 0..=self.n() {
            v[k] = F::one();
        }
        v
    }

    /// `omega' = omega + sum v_ij`.
    pub fn omega_prime(&self) -> Vec<F> {
        let mut v = self.omega();
        for (i, j) in self.poset.relations() {
            v[self.v(i, j)] = F::one();
        }
        v
    }

    pub fn left_act(&self, a: &[F], u: &[F]) -> Vec<F> {
        act_of(self.u.left.as_ref().unwrap(), a, self.dim_u()).mul_vec(u)
    }

    pub fn right_act(&self, u: &[F], a: &[F]) -> Vec<F> {
        act_of(self.u.right.as_ref().unwrap(), a, self.dim_u()).mul_vec(u)
    }

    pub fn epsilon(&self, u: &[F]) -> Vec<F> {
        self.counit.mul_vec(u)
    }

    pub fn mu(&self, u: &[F]) -> Vec<F> {
        self.comult.mul_vec(u)
    }

    /// Counit and comultiplication are bimodule maps.
    pub fn check_bimodule_maps(&self) -> Result<()> {
        let du = self.dim_u();
        let ka = self.a.dim();
        let uul = self.uu.module.left.as_ref().unwrap();
        let uur = self.uu.module.right.as_ref().unwrap();
        for s in 0..ka {
            let e_s = unit_vec::<F>(ka, s);
            for k in 0..du {
                let u = unit_vec::<F>(du, k);
                let eu = self.epsilon(&u);
                let lhs = self.epsilon(&self.left_act(&e_s, &u));
                let rhs = self.a.coords(&self.a.basis()[s].mul(&self.a.element(&eu))).unwrap();
                if lhs != rhs {
                    return Err(Error::Invalid("counit is not left A-linear".into()));
                }
                let lhs = self.epsilon(&self.right_act(&u, &e_s));
                let rhs = self.a.coords(&self.a.element(&eu).mul(&self.a.basis()[s])).unwrap();
                if lhs != rhs {
                    return Err(Error::Invalid("counit is not right A-linear".into()));
                }
                if self.mu(&self.left_act(&e_s, &u)) != uul[s].mul_vec(&self.mu(&u)) {
                    return Err(Error::Invalid(format!("comultiplication not left linear at {}", self.u_name(k))));
                }
                if self.mu(&self.right_act(&u, &e_s)) != uur[s].mul_vec(&self.mu(&u)) {
                    return Err(Error::Invalid(format!("comultiplication not right linear at {}", self.u_name(k))));
                }
            }
        }
        Ok(())
    }

    /// Both counit diagrams on every basis element of `U`.
    pub fn check_counit(&self) -> Result<()> {
        let du = self.dim_u();
        let ra = self.u.right.as_ref().unwrap();
        let la = self.u.left.as_ref().unwrap();
        for (k, terms) in self.comult_raw.iter().enumerate() {
            let mut l = vec![F::zero(); du];
            let mut r = vec![F::zero(); du];
            for (c, x, y) in terms {
                let ey = self.counit.column(*y);
                let ex = self.counit.column(*x);
                let xl = act_of(ra, &ey, du).mul_vec(&unit_vec(du, *x));
                let yr = act_of(la, &ex, du).mul_vec(&unit_vec(du, *y));
                crate::linalg::add_scaled(&mut l, c, &xl);
                crate::linalg::add_scaled(&mut r, c, &yr);
            }
            let u = unit_vec::<F>(du, k);
            if l != u || r != u {
                return Err(Error::Invalid(format!("counit axiom fails on {}", self.u_name(k))));
            }
        }
        Ok(())
    }

    /// `(mu (x) 1) mu = (1 (x) mu) mu` inside `(U (x) U) (x) U`.
    pub fn check_coassociativity(&self) -> Result<()> {
        let uuu = TensorProduct::new(&self.a, &self.uu.module, &self.u)?;
        let du = self.dim_u();
        for (k, terms) in self.comult_raw.iter().enumerate() {
            let mut lhs = vec![F::zero(); uuu.dim()];
            let mut rhs = vec![F::zero(); uuu.dim()];
            for (c, x, y) in terms {
                let mx = self.comult.column(*x);
                let t = uuu.pair(&mx, &unit_vec(du, *y));
                crate::linalg::add_scaled(&mut lhs, c, &t);
                for (c2, y1, y2) in &self.comult_raw[*y] {
                    let xy1 = self.uu.pairs_sum(&[(F::one(), *x, *y1)]);
                    let t = uuu.pair(&xy1, &unit_vec(du, *y2));
                    crate::linalg::add_scaled(&mut rhs, &(c.clone() * c2.clone()), &t);
                }
            }
            if lhs != rhs {
                return Err(Error::Invalid(format!("coassociativity fails on {}", self.u_name(k))));
            }
        }
        Ok(())
    }

    /// `mu(g) = g (x) g` and `eps(g) = 1`.
    pub fn is_grouplike(&self, g: &[F]) -> bool {
        let one = self.a.coords(self.a.unit()).unwrap();
        self.epsilon(g) == one && self.mu(g) == self.uu.pair(g, g)
    }

    /// `e_0 w' = w' e_0`, `e' w' = w' e'` and `alpha' w' = w' alpha'`.
    pub fn check_omega_prime_commutes(&self) -> Result<()> {
        let n = self.n();
        let ka = self.a.dim();
        let w = self.omega_prime();
        let mut e_prime = vec![F::zero(); ka];
        let mut a_prime = vec![F::zero(); ka];
        for i in 1..=n {
            e_prime[self.idem(i)] = F::one();
            a_prime[self.alpha(i)] = F::one();
        }
        for (name, z) in [("e0", unit_vec(ka, 0)), ("e'", e_prime), ("alpha'", a_prime)] {
            if self.left_act(&z, &w) != self.right_act(&w, &z) {
                return Err(Error::Invalid(format!("{name} does not commute with omega'")));
            }
        }
        Ok(())
    }

    /// The kernel of the counit is `V`.
    pub fn check_kernel_is_v(&self) -> Result<()> {
        let du = self.dim_u();
        let ker = Subspace::span(du, self.counit.kernel());
        let v = Subspace::span(
            du,
            (0..du).filter(|&k| matches!(self.u_basis[k], UBasis::V(_))).map(|k| unit_vec(du, k)),
        );
        if ker != v {
            return Err(Error::Invalid("kernel of the counit differs from V".into()));
        }
        Ok(())
    }

    /// `V` is isomorphic to the sum of `A e_i (x)_K e_j A` over `i < j`, via
    /// `v_ij -> e_i (x) e_j`, `alpha_i v_ij -> alpha_i (x) e_j`. The target is
    /// built from matrix products in `A`.
    pub fn check_v_decomposition(&self) -> Result<()> {
        let a = &self.a;
        let n = self.n();
        let size = n + 1;
        let la = self.u.left.as_ref().unwrap();
        let ra = self.u.right.as_ref().unwrap();
        for (i, j) in self.poset.relations() {
            let ei = &a.basis()[self.idem(i)];
            let ej = &a.basis()[self.idem(j)];
            // bases of A e_i and e_j A as matrix spans
            let aei: Vec<Mat<F>> = vec![ei.clone(), a.basis()[self.alpha(i)].clone()];
            let span_aei = crate::incidence::matrix_span(size, &aei);
            let span_eja = crate::incidence::matrix_span(size, &a.basis().iter().map(|b| ej.mul(b)).collect::<Vec<_>>());
            if span_aei != crate::incidence::matrix_span(size, &a.basis().iter().map(|b| b.mul(ei)).collect::<Vec<_>>())
                || span_eja.dim() != 1
            {
                return Err(Error::Invalid(format!("unexpected shape of A e_{i} or e_{j} A")));
            }
            let coords2 = |m: &Mat<F>| -> Vec<F> {
                // coordinates in (e_i, alpha_i)
                vec![m[(i - 1, i - 1)].clone(), m[(n, i - 1)].clone()]
            };
            let idx = [self.v(i, j), self.alpha_v(i, j)];
            for s in 0..a.dim() {
                let x = &a.basis()[s];
                for (col, p) in aei.iter().enumerate() {
                    // left: x (p (x) e_j) = (x p) (x) e_j
                    let xp = x.mul(p);
                    let want = coords2(&xp);
                    let got = la[s].column(idx[col]);
                    if got[idx[0]] != want[0] || got[idx[1]] != want[1] || got.iter().enumerate().any(|(r, c)| !idx.contains(&r) && !c.is_zero()) {
                        return Err(Error::Invalid(format!("left action on V differs at v{i}_{j}")));
                    }
                    // right: (p (x) e_j) x = p (x) (e_j x); e_j x = c e_j
                    let ejx = ej.mul(x);
                    let c = ejx[(j - 1, j - 1)].clone();
                    let got = ra[s].column(idx[col]);
                    let mut want = vec![F::zero(); 2];
                    want[col] = c;
                    if got[idx[0]] != want[0] || got[idx[1]] != want[1] || got.iter().enumerate().any(|(r, c)| !idx.contains(&r) && !c.is_zero()) {
                        return Err(Error::Invalid(format!("right action on V differs at v{i}_{j}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `Hom(P(j), P(i)) = e_j A e_i` is nonzero only if `j = i` or `j = 0`
    /// (directedness with respect to the opposite of the poset with a new
    /// minimum `0`), and the quiver has no parallel arrows.
    pub fn check_directed(&self) -> Result<()> {
        let n = self.n();
        for j in 0..=n {
            for i in 0..=n {
                let nonzero = !self.a.block_indices(j, i).is_empty();
                let allowed = i == j || j == 0;
                if nonzero && !allowed {
                    return Err(Error::Invalid(format!("Hom(P({j}), P({i})) is nonzero")));
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        for a in self.dit.arrows() {
            if !seen.insert((a.source(), a.target())) {
                return Err(Error::Invalid(format!("parallel arrows at {a}")));
            }
        }
        Ok(())
    }

    /// Run every structural check of the bocs.
    pub fn check_all(&self) -> Result<()> {
        self.dit.check_delta_squared::<F>()?;
        self.check_bimodule_maps()?;
        self.check_counit()?;
        self.check_coassociativity()?;
        if !self.is_grouplike(&self.omega()) {
            return Err(Error::Invalid("omega is not grouplike".into()));
        }
        if !self.is_grouplike(&self.omega_prime()) {
            return Err(Error::Invalid("omega' is not grouplike".into()));
        }
        self.check_omega_prime_commutes()?;
        self.check_kernel_is_v()?;
        self.check_v_decomposition()?;
        self.check_directed()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let arrows: Vec<_> = self
            .dit
            .arrows()
            .into_iter()
            .map(|a| json!({"name": a.to_string(), "source": a.source(), "target": a.target(), "degree": a.degree()}))
            .collect();
        let delta: Vec<_> = self
            .dit
            .arrows()
            .into_iter()
            .map(|a| {
                let d: Vec<_> =
                    self.dit.delta_arrow::<F>(a).into_iter().map(|(p, c)| json!([c.to_string(), p.to_string()])).collect();
                json!({"arrow": a.to_string(), "delta": d})
            })
            .collect();
        let grid = |m: &Mat<F>| -> Vec<Vec<String>> {
            (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.to_string()).collect()).collect()
        };
        let uu_basis: Vec<String> =
            self.uu.basis_pairs().into_iter().map(|(p, q)| format!("{} (x) {}", self.u_name(p), self.u_name(q))).collect();
        json!({
            "quiver": arrows,
            "delta": delta,
            "A_basis": self.a_paths.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "U_basis": (0..self.dim_u()).map(|k| self.u_name(k)).collect::<Vec<_>>(),
            "UU_basis": uu_basis,
            "counit": grid(&self.counit),
            "comultiplication": grid(&self.comult),
        })
    }

    pub fn is_v(&self, k: usize) -> bool {
        matches!(self.u_basis[k], UBasis::V(_))
    }

    pub fn is_zero_u(&self, u: &[F]) -> bool {
        is_zero_vec(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{F2, Q};

    #[test]
    fn differential_examples() {
        let pb = Poset::parse("n=3;1<3;2<3").unwrap();
        let d = Ditalgebra::new(&pb);
        let da3 = d.delta_arrow::<Q>(Arrow::Alpha(3));
        assert_eq!(da3.len(), 2);
        assert!(da3.values().all(|c| *c == -Q::from_i64(1)));
        assert!(d.delta_arrow::<Q>(Arrow::V(1, 3)).is_empty());
        let c = Poset::chain(3);
        let dc = Ditalgebra::new(&c);
        let dv = dc.delta_arrow::<Q>(Arrow::V(1, 3));
        assert_eq!(dv.len(), 1);
        assert_eq!(dv.keys().next().unwrap().to_string(), "v1_2 v2_3");
        dc.check_delta_squared::<Q>().unwrap();
        let anti = Ditalgebra::new(&Poset::antichain(3));
        assert!(anti.arrows().iter().all(|a| anti.delta_arrow::<Q>(*a).is_empty()));
    }

    #[test]
    fn bocs_of_pb() {
        let pb = Poset::parse("n=3;1<3;2<3").unwrap();
        let b = PosetBocs::<Q>::new(&pb).unwrap();
        assert_eq!(b.dim_u(), 11);
        b.check_all().unwrap();
    }

    #[test]
    fn antichain_bocs() {
        let b = PosetBocs::<Q>::new(&Poset::antichain(2)).unwrap();
        assert_eq!(b.dim_u(), 5);
        assert_eq!(b.omega(), b.omega_prime());
        b.check_all().unwrap();
    }

    #[test]
    fn chain_bocs_over_f2() {
        let b = PosetBocs::<F2>::new(&Poset::chain(4)).unwrap();
        b.check_all().unwrap();
    }
}
