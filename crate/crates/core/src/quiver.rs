//! Bound quiver presentations: the Hasse quiver of a poset, the quiver of
//! the row-balanced incidence algebra, and the quivers of the right algebra
//! and of the basic left algebra. Each presentation carries a structure map
//! into a matrix algebra so it can be checked against it.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use serde_json::json;

use crate::algebra::MatrixAlgebra;
use crate::burt_butler::{right_target, BasicLeft};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::incidence::{b_matrix, e, incidence_algebra, matrix_span, RowBalanced};
use crate::linalg::{Mat, SparseReducer};
use crate::poset::{Marking, OrbitData, Poset};

/// A path written in composition order: `arrows[0]` is applied last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPath {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl QPath {
    pub fn trivial(v: usize) -> Self {
        QPath { start: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

pub type Relation<F> = Vec<(F, QPath)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QArrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug)]
pub struct QuiverPresentation<F: Field> {
    pub name: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<QArrow>,
    pub relations: Vec<Relation<F>>,
    /// Choices made while building the relations.
    pub notes: Vec<String>,
}

impl<F: Field> QuiverPresentation<F> {
    pub fn new(name: impl Into<String>, vertices: Vec<String>) -> Self {
        QuiverPresentation { name: name.into(), vertices, arrows: Vec::new(), relations: Vec::new(), notes: Vec::new() }
    }

    pub fn vertex(&self, label: &str) -> usize {
        self.vertices.iter().position(|v| v == label).unwrap_or_else(|| panic!("no vertex {label}"))
    }

    pub fn add_arrow(&mut self, name: impl Into<String>, source: usize, target: usize) -> usize {
        self.arrows.push(QArrow { name: name.into(), source, target });
        self.arrows.len() - 1
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrow_path(&self, a: usize) -> QPath {
        QPath { start: self.arrows[a].source, arrows: vec![a] }
    }

    pub fn target(&self, p: &QPath) -> usize {
        p.arrows.first().map_or(p.start, |&a| self.arrows[a].target)
    }

    /// `p * q`: first `q`, then `p`.
    pub fn compose(&self, p: &QPath, q: &QPath) -> Option<QPath> {
        if p.start != self.target(q) {
            return None;
        }
        let mut arrows = p.arrows.clone();
        arrows.extend(q.arrows.iter().copied());
        Some(QPath { start: q.start, arrows })
    }

    pub fn path_name(&self, p: &QPath) -> String {
        if p.arrows.is_empty() {
            return format!("e{}", self.vertices[p.start]);
        }
        p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join(" ")
    }

    pub fn relation_text(&self, r: &Relation<F>) -> String {
        let mut s = String::new();
        for (k, (c, p)) in r.iter().enumerate() {
            let name = self.path_name(p);
            if c.is_one() {
                s.push_str(if k == 0 { "" } else { " + " });
            } else if *c == -F::one() {
                s.push_str(if k == 0 { "-" } else { " - " });
            } else {
                let _ = write!(s, "{}{}*", if k == 0 { "" } else { " + " }, c);
            }
            s.push_str(&name);
        }
        s
    }

    /// Vertices in topological order, or an error on a cycle.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let nv = self.vertices.len();
        let mut indeg = vec![0; nv];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut queue: VecDeque<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::new();
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    queue.push_back(a.target);
                }
            }
        }
        if order.len() != nv {
            return Err(Error::Invalid(format!("quiver {} has an oriented cycle", self.name)));
        }
        Ok(order)
    }

    /// Every path using arrows accepted by `allowed`, trivial paths included.
    pub fn paths_with(&self, allowed: &dyn Fn(usize) -> bool) -> Result<Vec<QPath>> {
        self.topological_order()?;
        let mut out: Vec<QPath> = (0..self.vertices.len()).map(QPath::trivial).collect();
        let mut k = 0;
        while k < out.len() {
            let t = self.target(&out[k]);
            for (a, arr) in self.arrows.iter().enumerate() {
                if arr.source == t && allowed(a) {
                    let mut arrows = vec![a];
                    arrows.extend(out[k].arrows.iter().copied());
                    out.push(QPath { start: out[k].start, arrows });
                }
            }
            k += 1;
        }
        Ok(out)
    }

    pub fn all_paths(&self) -> Result<Vec<QPath>> {
        self.paths_with(&|_| true)
    }

    pub fn paths_between(&self, s: usize, t: usize) -> Result<Vec<QPath>> {
        Ok(self.all_paths()?.into_iter().filter(|p| p.start == s && self.target(p) == t).collect())
    }

    /// Differences of parallel paths built from the accepted arrows. Errors
    /// when an arrow is parallel to a longer path.
    pub fn parallel_differences(&self, allowed: &dyn Fn(usize) -> bool) -> Result<Vec<Relation<F>>> {
        let mut groups: BTreeMap<(usize, usize), Vec<QPath>> = BTreeMap::new();
        for p in self.paths_with(allowed)? {
            if !p.is_empty() {
                groups.entry((p.start, self.target(&p))).or_default().push(p);
            }
        }
        let mut out = Vec::new();
        for ((s, t), ps) in groups {
            if ps.len() < 2 {
                continue;
            }
            if ps.iter().any(|p| p.len() == 1) {
                return Err(Error::Invalid(format!(
                    "arrow from {} to {} is parallel to a longer path",
                    self.vertices[s], self.vertices[t]
                )));
            }
            for p in &ps[1..] {
                out.push(vec![(F::one(), ps[0].clone()), (-F::one(), p.clone())]);
            }
        }
        Ok(out)
    }

    /// Relations are combinations of parallel paths of length at least two.
    pub fn check_admissible(&self) -> Result<()> {
        for r in &self.relations {
            let Some((_, p0)) = r.first() else { continue };
            let (s, t) = (p0.start, self.target(p0));
            for (_, p) in r {
                if p.start != s || self.target(p) != t {
                    return Err(Error::Invalid(format!("relation {} mixes endpoints", self.relation_text(r))));
                }
                if p.len() < 2 {
                    return Err(Error::Invalid(format!("relation {} has a short path", self.relation_text(r))));
                }
            }
        }
        Ok(())
    }

    /// `dim e_t (KQ/I) e_s` for every pair, as `dims[t][s]`. The ideal is
    /// spanned by `p r q` over relations `r` and paths `p`, `q`.
    pub fn path_algebra_dims(&self) -> Result<Vec<Vec<usize>>> {
        let paths = self.all_paths()?;
        let index: HashMap<QPath, usize> = paths.iter().enumerate().map(|(k, p)| (p.clone(), k)).collect();
        let nv = self.vertices.len();
        let mut count = vec![vec![0usize; nv]; nv];
        for p in &paths {
            count[self.target(p)][p.start] += 1;
        }
        let mut reducers: BTreeMap<(usize, usize), SparseReducer<F>> = BTreeMap::new();
        for r in &self.relations {
            let Some((_, p0)) = r.first() else { continue };
            let (s, t) = (p0.start, self.target(p0));
            for q in paths.iter().filter(|q| self.target(q) == s) {
                for p in paths.iter().filter(|p| p.start == t) {
                    let mut v = BTreeMap::new();
                    for (c, x) in r {
                        let full = self.compose(p, &self.compose(x, q).expect("composable")).expect("composable");
                        let e = v.entry(index[&full]).or_insert_with(F::zero);
                        *e += c.clone();
                    }
                    v.retain(|_, c: &mut F| !c.is_zero());
                    if !v.is_empty() {
                        reducers.entry((q.start, self.target(p))).or_insert_with(SparseReducer::new).push(v);
                    }
                }
            }
        }
        let mut dims = count;
        for ((s, t), red) in reducers {
            dims[t][s] -= red.rank();
        }
        Ok(dims)
    }

    pub fn path_algebra_dim(&self) -> Result<usize> {
        Ok(self.path_algebra_dims()?.iter().flatten().sum())
    }

    /// Deterministic DOT digraph; relations appear as comments.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", self.name);
        for v in &self.vertices {
            let _ = writeln!(s, "  \"{v}\";");
        }
        for a in &self.arrows {
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                self.vertices[a.source], self.vertices[a.target], a.name
            );
        }
        for r in &self.relations {
            let _ = writeln!(s, "  // {} = 0", self.relation_text(r));
        }
        for n in &self.notes {
            let _ = writeln!(s, "  // note: {n}");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "name": self.name,
            "vertices": self.vertices,
            "arrows": self.arrows.iter().map(|a| json!({
                "name": a.name,
                "source": self.vertices[a.source],
                "target": self.vertices[a.target],
            })).collect::<Vec<_>>(),
            "relations": self.relations.iter().map(|r| r.iter().map(|(c, p)| json!([c.to_string(), self.path_name(p)])).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }
}

/// A presentation together with a structure map into a framed matrix
/// algebra: vertices go to frame idempotents, arrows to Peirce-homogeneous
/// elements.
#[derive(Clone, Debug)]
pub struct BoundQuiver<F: Field> {
    pub quiver: QuiverPresentation<F>,
    pub algebra: MatrixAlgebra<F>,
    pub vertex_images: Vec<Mat<F>>,
    pub arrow_images: Vec<Mat<F>>,
}

impl<F: Field> BoundQuiver<F> {
    fn new(quiver: QuiverPresentation<F>, algebra: MatrixAlgebra<F>) -> Self {
        let vertex_images = quiver
            .vertices
            .iter()
            .map(|v| {
                let k = algebra.frame_index(v).unwrap_or_else(|| panic!("frame lacks vertex {v}"));
                algebra.frame()[k].clone()
            })
            .collect();
        BoundQuiver { quiver, algebra, vertex_images, arrow_images: Vec::new() }
    }

    /// Add an arrow whose image is `e_t m e_s`.
    fn arrow(&mut self, name: String, s: usize, t: usize, m: &Mat<F>) -> usize {
        let img = self.vertex_images[t].mul(m).mul(&self.vertex_images[s]);
        self.arrow_images.push(img);
        self.quiver.add_arrow(name, s, t)
    }

    pub fn eval_path(&self, p: &QPath) -> Mat<F> {
        let mut m = self.vertex_images[self.quiver.target(p)].clone();
        for &a in &p.arrows {
            m = m.mul(&self.arrow_images[a]);
        }
        m
    }

    pub fn eval(&self, r: &Relation<F>) -> Mat<F> {
        let s = self.algebra.size();
        let mut m = Mat::zeros(s, s);
        for (c, p) in r {
            m.add_scaled(c, &self.eval_path(p));
        }
        m
    }

    /// Express `target` as a combination of paths of positive length from
    /// `s` to `t`.
    pub fn solve_paths(&self, s: usize, t: usize, target: &Mat<F>) -> Result<Relation<F>> {
        let ps: Vec<QPath> = self.quiver.paths_between(s, t)?.into_iter().filter(|p| !p.is_empty()).collect();
        let cols: Vec<Vec<F>> = ps.iter().map(|p| self.eval_path(p).flat().to_vec()).collect();
        let a = Mat::from_columns(target.flat().len(), &cols);
        let b = Mat::from_columns(target.flat().len(), &[target.flat().to_vec()]);
        let x = crate::linalg::solve(&a, &b)?.ok_or_else(|| {
            Error::Invalid(format!(
                "{}: element is not a combination of paths from {} to {}",
                self.quiver.name, self.quiver.vertices[s], self.quiver.vertices[t]
            ))
        })?;
        Ok(ps.into_iter().enumerate().filter(|(k, _)| !x[(*k, 0)].is_zero()).map(|(k, p)| (x[(k, 0)].clone(), p)).collect())
    }

    /// Full check: acyclic, admissible, homogeneous nonzero arrows, every
    /// relation vanishes, paths span the algebra, and the quotient has the
    /// dimension of the algebra (so the structure map is an isomorphism).
    pub fn check(&self) -> Result<()> {
        let q = &self.quiver;
        q.topological_order()?;
        q.check_admissible()?;
        for (a, m) in self.arrow_images.iter().enumerate() {
            if m.is_zero() || !self.algebra.contains(m) {
                return Err(Error::Invalid(format!("{}: arrow {} has a bad image", q.name, q.arrows[a].name)));
            }
        }
        for r in &q.relations {
            if !self.eval(r).is_zero() {
                return Err(Error::Invalid(format!("{}: relation {} does not vanish", q.name, q.relation_text(r))));
            }
        }
        let imgs: Vec<Mat<F>> = q.all_paths()?.iter().map(|p| self.eval_path(p)).collect();
        if &matrix_span(self.algebra.size(), &imgs) != self.algebra.subspace() {
            return Err(Error::Invalid(format!("{}: paths do not span the algebra", q.name)));
        }
        let d = q.path_algebra_dim()?;
        if d != self.algebra.dim() {
            return Err(Error::Invalid(format!(
                "{}: bound quiver algebra has dimension {d}, the algebra has {}",
                q.name,
                self.algebra.dim()
            )));
        }
        Ok(())
    }
}

fn name2(prefix: &str, j: usize, i: usize) -> String {
    format!("{prefix}{j}_{i}")
}

/// Hasse quiver with all commutativity relations, mapped to `KP`.
pub fn hasse_presentation<F: Field>(p: &Poset) -> Result<BoundQuiver<F>> {
    let n = p.n();
    let q = QuiverPresentation::new("Hasse", p.elements().map(|i| i.to_string()).collect());
    let mut bq = BoundQuiver::new(q, incidence_algebra::<F>(p));
    for (i, j) in p.hasse() {
        bq.arrow(name2("nu", j, i), i - 1, j - 1, &e(n, j, i));
    }
    bq.quiver.relations = bq.quiver.parallel_differences(&|_| true)?;
    Ok(bq)
}

/// Quiver of the row-balanced incidence algebra: vertices the non-minimal
/// elements and `0`, arrows `B_ji` for covers among non-minimal elements
/// and `Orb(j) - 1` arrows `0 -> j`.
pub fn row_balanced_presentation<F: Field>(p: &Poset, mk: &Marking, od: &OrbitData) -> Result<BoundQuiver<F>> {
    let n = p.n();
    let prime = p.non_minimal();
    let mut verts: Vec<String> = prime.iter().map(|j| j.to_string()).collect();
    verts.push("0".into());
    let rb = RowBalanced::<F>::new(p, mk)?;
    let q = QuiverPresentation::new("Hasse1", verts);
    let mut bq = BoundQuiver::new(q, rb.algebra);
    let vx = |bq: &BoundQuiver<F>, x: usize| bq.quiver.vertex(&x.to_string());
    let mut nu = Vec::new();
    for (i, j) in p.hasse() {
        if !p.is_minimal(i) {
            let (s, t) = (vx(&bq, i), vx(&bq, j));
            nu.push(bq.arrow(name2("B", j, i), s, t, &b_matrix(n, mk, j, i)));
        }
    }
    let zero = bq.quiver.vertex("0");
    for &j in &prime {
        for &i in od.reps(j) {
            let t = vx(&bq, j);
            bq.arrow(name2("B", j, i), zero, t, &b_matrix(n, mk, j, i));
        }
    }
    let mut rels = bq.quiver.parallel_differences(&|a| nu.contains(&a))?;
    rels.extend(min_square_relations(&bq, p, mk, &|j| bq.quiver.arrow_index(&name2("B", j.0, j.1)), &|m| m)?);
    bq.quiver.relations = rels;
    Ok(bq)
}

/// Relations `B_kj1 (B_j1i1 - B_j1i2) - B_kj2 (B_j2i1 - B_j2i2)` for `k`
/// covering `j1`, `j2` and minimal `i1`, `i2` below both; the differences
/// `B_ji1 - B_ji2` are expanded as paths from `0` through the structure map.
fn min_square_relations<F: Field>(
    bq: &BoundQuiver<F>,
    p: &Poset,
    mk: &Marking,
    cover_arrow: &dyn Fn((usize, usize)) -> Option<usize>,
    lift: &dyn Fn(Mat<F>) -> Mat<F>,
) -> Result<Vec<Relation<F>>> {
    let n = p.n();
    let q = &bq.quiver;
    let zero = q.vertex("0");
    let mut out = Vec::new();
    let mut diff_cache: HashMap<(usize, usize, usize), Relation<F>> = HashMap::new();
    let mut diff = |j: usize, i1: usize, i2: usize| -> Result<Relation<F>> {
        if let Some(r) = diff_cache.get(&(j, i1, i2)) {
            return Ok(r.clone());
        }
        let m = lift(b_matrix::<F>(n, mk, j, i1).sub(&b_matrix(n, mk, j, i2)));
        let r = bq.solve_paths(zero, q.vertex(&j.to_string()), &m)?;
        diff_cache.insert((j, i1, i2), r.clone());
        Ok(r)
    };
    let mins = p.minimal();
    for k in p.non_minimal() {
        let lower: Vec<usize> = p.below(k).into_iter().filter(|&j| !p.is_minimal(j) && p.covers(j, k)).collect();
        for (x, &j1) in lower.iter().enumerate() {
            for &j2 in &lower[x + 1..] {
                for (y, &i1) in mins.iter().enumerate() {
                    for &i2 in &mins[y + 1..] {
                        if !(p.lt(i1, j1) && p.lt(i2, j1) && p.lt(i1, j2) && p.lt(i2, j2)) {
                            continue;
                        }
                        let (Some(a1), Some(a2)) = (cover_arrow((k, j1)), cover_arrow((k, j2))) else {
                            return Err(Error::Invalid(format!("missing cover arrow into {k}")));
                        };
                        let mut rel: BTreeMap<QPath, F> = BTreeMap::new();
                        for (sign, a, j) in [(F::one(), a1, j1), (-F::one(), a2, j2)] {
                            for (c, path) in diff(j, i1, i2)? {
                                let full = q.compose(&q.arrow_path(a), &path).expect("composable");
                                *rel.entry(full).or_insert_with(F::zero) += sign.clone() * c;
                            }
                        }
                        let rel: Relation<F> = rel.into_iter().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (c, p)).collect();
                        if !rel.is_empty() {
                            out.push(rel);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Quiver of the right algebra: vertices the poset and `*`, arrows for the
/// covers of the poset and `a_j : j -> *` for maximal `j`, all commutativity
/// relations. Mapped to `(KP 0; K^{1xn} K)`.
pub fn right_quiver<F: Field>(p: &Poset) -> Result<BoundQuiver<F>> {
    let n = p.n();
    let s = n + 1;
    let mut verts: Vec<String> = p.elements().map(|i| i.to_string()).collect();
    verts.push("*".into());
    let mut labels = verts.clone();
    labels.truncate(n);
    labels.push("*".into());
    let frame: Vec<Mat<F>> = (0..s).map(|k| Mat::unit(s, s, k, k)).collect();
    let alg = right_target::<F>(p)?.with_frame(labels, frame)?;
    let q = QuiverPresentation::new("QR", verts);
    let mut bq = BoundQuiver::new(q, alg);
    for (i, j) in p.hasse() {
        bq.arrow(name2("nu", j, i), i - 1, j - 1, &Mat::unit(s, s, j - 1, i - 1));
    }
    for j in p.maximal() {
        bq.arrow(format!("a{j}"), j - 1, n, &Mat::unit(s, s, n, j - 1));
    }
    bq.quiver.relations = bq.quiver.parallel_differences(&|_| true)?;
    Ok(bq)
}

/// Quiver of the basic left algebra, mapped to the re-blocked corner
/// `(R'' 0; [R''; Z_P] K1P)`.
pub fn left_quiver<F: Field>(p: &Poset, mk: &Marking, od: &OrbitData) -> Result<BoundQuiver<F>> {
    let n = p.n();
    let mins = p.minimal();
    let off = mins.len();
    let size = off + n;
    let top = |i: usize| mins.iter().position(|&x| x == i).expect("minimal");
    let bot = |j: usize| off + j - 1;
    let mut verts: Vec<String> = p.elements().map(|i| i.to_string()).collect();
    verts.push("0".into());
    let alg = BasicLeft::<F>::block_shape(p, mk)?;
    let q = QuiverPresentation::new("QL", verts);
    let mut bq = BoundQuiver::new(q, alg);
    let zero = n;
    let mut nu = Vec::new();
    for (i, j) in p.hasse() {
        if !p.is_minimal(i) {
            nu.push(bq.arrow(name2("nu", j, i), i - 1, j - 1, &Mat::unit(size, size, bot(j), bot(i))));
        } else if p.below(j) == vec![i] {
            bq.arrow(name2("nu", j, i), i - 1, j - 1, &Mat::unit(size, size, bot(j), top(i)));
        }
    }
    for &i in &mins {
        bq.arrow(format!("a{i}"), i - 1, zero, &Mat::unit(size, size, bot(i), top(i)));
    }
    for j in p.non_minimal() {
        for &i in od.reps(j) {
            bq.arrow(name2("b", j, i), zero, j - 1, &b_matrix::<F>(n, mk, j, i).embed(size, size, off, off));
        }
    }
    let arrow = |name: String| bq.quiver.arrow_index(&name);
    let path_of = |a: usize| bq.quiver.arrow_path(a);
    let mut rels = bq.quiver.parallel_differences(&|a| nu.contains(&a))?;
    rels.extend(min_square_relations(&bq, p, mk, &|(k, j)| arrow(name2("nu", k, j)), &|m| m.embed(size, size, off, off))?);

    // R0
    let q = &bq.quiver;
    let comp = |x: usize, y: usize| q.compose(&path_of(x), &path_of(y)).expect("composable");
    for j in p.non_minimal() {
        let reps = od.reps(j);
        let am = arrow(format!("a{}", mk.m(j))).expect("a arrow");
        for (x, &i) in reps.iter().enumerate() {
            let bi = arrow(name2("b", j, i)).expect("b arrow");
            for &i2 in &reps[x + 1..] {
                let bi2 = arrow(name2("b", j, i2)).expect("b arrow");
                rels.push(vec![(F::one(), comp(bi, am)), (-F::one(), comp(bi2, am))]);
            }
            for &i2 in &mins {
                if i2 != mk.m(j) && i2 != i {
                    rels.push(vec![(F::one(), comp(bi, arrow(format!("a{i2}")).expect("a arrow")))]);
                }
            }
        }
    }

    // R_Paths
    let mut notes = Vec::new();
    let nu_chain = |j: usize, k: usize| -> Result<QPath> {
        if j == k {
            return Ok(QPath::trivial(j - 1));
        }
        q.paths_with(&|a| nu.contains(&a))?
            .into_iter()
            .filter(|pp| pp.start == j - 1 && q.target(pp) == k - 1)
            .min_by_key(|pp| pp.arrows.iter().map(|&a| q.arrows[a].target).collect::<Vec<_>>())
            .ok_or_else(|| Error::Invalid(format!("no chain of arrows from {j} to {k}")))
    };
    let p_ji = |j: usize, i: usize, notes: &mut Vec<String>| -> Option<(F, QPath)> {
        if p.below(j) == vec![i] {
            return Some((F::one(), path_of(arrow(name2("nu", j, i))?)));
        }
        let ai = arrow(format!("a{i}"))?;
        let reps = od.reps(j);
        if i == mk.m(j) && !reps.is_empty() {
            let ip = reps[0];
            let note = format!("p({j},{i}) uses i'={ip}");
            if !notes.contains(&note) {
                notes.push(note);
            }
            return Some((-F::one(), comp(arrow(name2("b", j, ip))?, ai)));
        }
        if reps.contains(&i) {
            return Some((F::one(), comp(arrow(name2("b", j, i))?, ai)));
        }
        None
    };
    for k in p.non_minimal() {
        for i in p.min_below(k) {
            let mut gammas: Vec<(F, QPath)> = Vec::new();
            for j in p.elements().filter(|&j| p.lt(i, j) && p.leq(j, k)) {
                if let Some((c, pji)) = p_ji(j, i, &mut notes) {
                    let chain = nu_chain(j, k)?;
                    gammas.push((c, q.compose(&chain, &pji).expect("composable")));
                }
            }
            for g in &gammas[1.min(gammas.len())..] {
                let mut rel: BTreeMap<QPath, F> = BTreeMap::new();
                *rel.entry(gammas[0].1.clone()).or_insert_with(F::zero) += gammas[0].0.clone();
                *rel.entry(g.1.clone()).or_insert_with(F::zero) -= g.0.clone();
                let rel: Relation<F> = rel.into_iter().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (c, p)).collect();
                if !rel.is_empty() {
                    rels.push(rel);
                }
            }
        }
    }
    bq.quiver.relations = rels;
    bq.quiver.notes = notes;
    Ok(bq)
}

/// Hom dimensions `dim e_j (K P*) e_i` of the incidence algebra of the upper
/// suspension, indexed like the right quiver (`*` last).
pub fn suspension_hom_dims(p: &Poset) -> Vec<Vec<usize>> {
    let s = p.upper_suspension();
    let m = s.n();
    (1..=m).map(|j| (1..=m).map(|i| usize::from(s.leq(i, j))).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{F2, Q};

    #[test]
    fn single_vertex_and_square() {
        let q = QuiverPresentation::<Q>::new("pt", vec!["1".into()]);
        assert_eq!(q.path_algebra_dim().unwrap(), 1);
        let dot = q.to_dot();
        assert_eq!(dot.matches("->").count(), 0);
        assert_eq!(dot.matches(';').count(), 1);

        let mut sq = QuiverPresentation::<Q>::new("sq", (1..=4).map(|i| i.to_string()).collect());
        let a = sq.add_arrow("x", 0, 1);
        let b = sq.add_arrow("y", 0, 2);
        let c = sq.add_arrow("z", 1, 3);
        let d = sq.add_arrow("w", 2, 3);
        assert_eq!(sq.path_algebra_dim().unwrap(), 10);
        sq.relations.push(vec![
            (Q::from_i64(1), QPath { start: 0, arrows: vec![c, a] }),
            (Q::from_i64(-1), QPath { start: 0, arrows: vec![d, b] }),
        ]);
        assert_eq!(sq.path_algebra_dim().unwrap(), 9);
    }

    #[test]
    fn cycles_are_rejected() {
        let mut q = QuiverPresentation::<Q>::new("c", vec!["1".into(), "2".into()]);
        q.add_arrow("x", 0, 1);
        q.add_arrow("y", 1, 0);
        assert!(q.path_algebra_dim().is_err());
    }

    #[test]
    fn hasse_examples() {
        let pb = Poset::parse("n=3;1<3;2<3").unwrap();
        let h = hasse_presentation::<Q>(&pb).unwrap();
        assert_eq!(h.quiver.arrows.len(), 2);
        assert!(h.quiver.relations.is_empty());
        h.check().unwrap();
        let diamond = Poset::parse("n=4;1<2;1<3;2<4;3<4").unwrap();
        let h = hasse_presentation::<F2>(&diamond).unwrap();
        assert_eq!(h.quiver.relations.len(), 1);
        assert_eq!(h.quiver.path_algebra_dim().unwrap(), 9);
        h.check().unwrap();
        let h = hasse_presentation::<Q>(&Poset::antichain(3)).unwrap();
        assert_eq!(h.quiver.path_algebra_dim().unwrap(), 3);
    }

    #[test]
    fn row_balanced_examples() {
        for (txt, dim, arrows) in [("n=3;1<3;2<3", 3, 1), ("n=5;1<3;2<3;3<4;3<5", 9, 3), ("n=2;1<2", 2, 0)] {
            let p = Poset::parse(txt).unwrap();
            let mk = Marking::default_for(&p);
            let od = OrbitData::new(&p, &mk);
            let h = row_balanced_presentation::<Q>(&p, &mk, &od).unwrap();
            assert_eq!(h.quiver.arrows.len(), arrows, "{txt}");
            assert_eq!(h.quiver.path_algebra_dim().unwrap(), dim, "{txt}");
            h.check().unwrap();
        }
    }

    #[test]
    fn right_quiver_examples() {
        let pc = Poset::parse("n=4;1<3;2<3;2<4").unwrap();
        let r = right_quiver::<Q>(&pc).unwrap();
        assert_eq!(r.quiver.arrows.len(), 5);
        assert_eq!(r.quiver.relations.len(), 1);
        assert_eq!(r.quiver.path_algebra_dim().unwrap(), 12);
        r.check().unwrap();
        assert_eq!(r.quiver.path_algebra_dims().unwrap(), suspension_hom_dims(&pc));
        let a2 = right_quiver::<Q>(&Poset::antichain(2)).unwrap();
        assert_eq!(a2.quiver.path_algebra_dim().unwrap(), 5);
    }

    #[test]
    fn left_quiver_examples() {
        let cases = [
            ("n=3;1<3;2<3", vec!["a1", "a2", "b3_2"]),
            ("n=4;1<3;2<3;2<4", vec!["nu4_2", "a1", "a2", "b3_2"]),
            ("n=4;1<3;2<3;1<4;2<4", vec!["a1", "a2", "b3_2", "b4_2"]),
            ("n=5;1<3;2<3;3<4;3<5", vec!["nu4_3", "nu5_3", "a1", "a2", "b3_2"]),
        ];
        for (txt, names) in cases {
            let p = Poset::parse(txt).unwrap();
            let mk = Marking::default_for(&p);
            let od = OrbitData::new(&p, &mk);
            let l = left_quiver::<Q>(&p, &mk, &od).unwrap();
            let got: Vec<&str> = l.quiver.arrows.iter().map(|a| a.name.as_str()).collect();
            assert_eq!(got, names, "{txt}");
            l.check().unwrap();
        }
    }

    #[test]
    fn dot_counts() {
        let pb = Poset::parse("n=3;1<3;2<3").unwrap();
        let dot = right_quiver::<Q>(&pb).unwrap().quiver.to_dot();
        assert_eq!(dot.lines().filter(|l| l.ends_with("\";")).count(), 4);
        assert_eq!(dot.matches("->").count(), 3);
        let pd = Poset::parse("n=4;1<3;2<3;1<4;2<4").unwrap();
        let mk = Marking::default_for(&pd);
        let od = OrbitData::new(&pd, &mk);
        let dot = left_quiver::<Q>(&pd, &mk, &od).unwrap().quiver.to_dot();
        assert_eq!(dot.lines().filter(|l| l.ends_with("\";")).count(), 5);
        assert_eq!(dot.matches("->").count(), 4);
        assert_eq!(dot, left_quiver::<Q>(&pd, &mk, &od).unwrap().quiver.to_dot());
    }

    #[test]
    fn dense_posets_over_small_fields() {
        for txt in ["n=6;1<4;2<4;3<4;1<5;2<5;3<5;4<6;5<6", "n=6;1<3;2<3;1<4;2<4;3<5;4<5;3<6;4<6"] {
            let p = Poset::parse(txt).unwrap();
            let mk = Marking::default_for(&p);
            let od = OrbitData::new(&p, &mk);
            let l = left_quiver::<F2>(&p, &mk, &od).unwrap();
            l.check().unwrap();
            assert!(!l.quiver.relations.is_empty());
            row_balanced_presentation::<F2>(&p, &mk, &od).unwrap().check().unwrap();
        }
    }
}
