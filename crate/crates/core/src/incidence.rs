//! Incidence algebras of a poset, the row-balanced subalgebra and the
//! row-centralized bimodule.

use crate::algebra::MatrixAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Mat, RowReducer, Subspace};
use crate::poset::{Marking, OrbitData, Poset};

/// `E_{ji}` in `Mat_n` for 1-based labels.
pub fn e<F: Field>(n: usize, j: usize, i: usize) -> Mat<F> {
    Mat::unit(n, n, j - 1, i - 1)
}

/// `B_{ji} = E_{ji} - E_{j,m(j)}`.
pub fn b_matrix<F: Field>(n: usize, mk: &Marking, j: usize, i: usize) -> Mat<F> {
    e::<F>(n, j, i).sub(&e(n, j, mk.m(j)))
}

/// `eps_j = E_{jj} - E_{j,m(j)}` for non-minimal `j`.
pub fn eps<F: Field>(n: usize, mk: &Marking, j: usize) -> Mat<F> {
    b_matrix(n, mk, j, j)
}

/// `eps_0 = Id - sum_{j non-minimal} eps_j`.
pub fn eps0<F: Field>(p: &Poset, mk: &Marking) -> Mat<F> {
    let n = p.n();
    let mut m = Mat::identity(n);
    for j in p.non_minimal() {
        m = m.sub(&eps(n, mk, j));
    }
    m
}

/// The all-ones column.
pub fn ones<F: Field>(n: usize) -> Vec<F> {
    vec![F::one(); n]
}

/// Incidence algebra: basis `E_ii` then `E_ji` (`i < j`) sorted by `(j, i)`,
/// framed by the diagonal units labelled `"1".."n"`.
pub fn incidence_algebra<F: Field>(p: &Poset) -> MatrixAlgebra<F> {
    let n = p.n();
    let mut basis: Vec<Mat<F>> = p.elements().map(|i| e(n, i, i)).collect();
    basis.extend(p.relations().into_iter().map(|(i, j)| e(n, j, i)));
    let labels = p.elements().map(|i| i.to_string()).collect();
    let frame = p.elements().map(|i| e(n, i, i)).collect();
    MatrixAlgebra::new("KP", n, basis).and_then(|a| a.with_frame(labels, frame)).expect("incidence algebra")
}

/// Subspace of `Mat_n` (flattened) spanned by the given matrices.
pub fn matrix_span<F: Field>(n: usize, mats: &[Mat<F>]) -> Subspace<F> {
    Subspace::span(n * n, mats.iter().map(|m| m.flat().to_vec()))
}

/// A subspace of `Mat_N` closed under a left and a right algebra action.
#[derive(Clone, Debug)]
pub struct BimoduleSubspace<F: Field> {
    pub size: usize,
    pub basis: Vec<Mat<F>>,
    pub labels: Vec<(usize, usize)>,
}

impl<F: Field> BimoduleSubspace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn subspace(&self) -> Subspace<F> {
        matrix_span(self.size, &self.basis)
    }

    pub fn is_bimodule(&self, left: &MatrixAlgebra<F>, right: &MatrixAlgebra<F>) -> bool {
        let s = self.subspace();
        self.basis.iter().all(|x| {
            left.basis().iter().all(|a| s.contains(a.mul(x).flat()).unwrap_or(false))
                && right.basis().iter().all(|b| s.contains(x.mul(b).flat()).unwrap_or(false))
        })
    }
}

/// The row-balanced incidence algebra with its marking-dependent basis
/// `eps_0, eps_j (j non-minimal), B_ji (i < j, i != m(j))`, framed by the
/// `eps` idempotents (labels `"0"` and `"j"`), and the row-centralized
/// bimodule with basis `E_jj - E_ji`.
#[derive(Clone, Debug)]
pub struct RowBalanced<F: Field> {
    pub algebra: MatrixAlgebra<F>,
    /// `(j, i)` for each radical basis element `B_ji`, in basis order after the idempotents.
    pub rad_pairs: Vec<(usize, usize)>,
    pub centralized: BimoduleSubspace<F>,
    pub marking: Marking,
}

impl<F: Field> RowBalanced<F> {
    pub fn new(p: &Poset, mk: &Marking) -> Result<Self> {
        if !mk.validate(p) {
            return Err(Error::Marking("marking does not choose minimal elements below each element".into()));
        }
        let n = p.n();
        let prime = p.non_minimal();
        let mut frame = vec![eps0::<F>(p, mk)];
        let mut labels = vec!["0".to_string()];
        for &j in &prime {
            frame.push(eps(n, mk, j));
            labels.push(j.to_string());
        }
        let mut basis = frame.clone();
        let mut rad_pairs = Vec::new();
        for (i, j) in p.relations() {
            if i != mk.m(j) {
                basis.push(b_matrix(n, mk, j, i));
                rad_pairs.push((j, i));
            }
        }
        let algebra = MatrixAlgebra::new("K1P", n, basis)?.with_frame(labels, frame)?;
        let cpairs: Vec<(usize, usize)> = p.relations().into_iter().map(|(i, j)| (j, i)).collect();
        let cbasis = cpairs.iter().map(|&(j, i)| e::<F>(n, j, j).sub(&e(n, j, i))).collect();
        Ok(RowBalanced {
            algebra,
            rad_pairs,
            centralized: BimoduleSubspace { size: n, basis: cbasis, labels: cpairs },
            marking: mk.clone(),
        })
    }

    /// Index of `B_ji` in the algebra basis.
    pub fn b_index(&self, j: usize, i: usize) -> Option<usize> {
        let off = self.algebra.frame().len();
        self.rad_pairs.iter().position(|&x| x == (j, i)).map(|k| off + k)
    }

    pub fn rad_matrices(&self) -> Vec<Mat<F>> {
        let off = self.algebra.frame().len();
        self.algebra.basis()[off..].to_vec()
    }

    /// Square of the radical from its closed form in terms of covers and
    /// orbit classes.
    pub fn rad_square_closed_form(&self, p: &Poset, od: &OrbitData) -> Subspace<F> {
        let n = p.n();
        let mk = &self.marking;
        let mut gens = Vec::new();
        for (i, j) in p.relations() {
            if !p.covers(i, j) {
                gens.push(b_matrix::<F>(n, mk, j, i));
            }
        }
        for j in p.non_minimal() {
            for cls in od.classes(j) {
                let rep = od.representative(j, cls[0]).unwrap();
                for &i in cls {
                    if i != rep {
                        gens.push(b_matrix::<F>(n, mk, j, i).sub(&b_matrix(n, mk, j, rep)));
                    }
                }
            }
        }
        matrix_span(n, &gens)
    }

    /// Square of the radical as the span of all pairwise products of radical
    /// basis elements.
    pub fn rad_square_brute(&self) -> Subspace<F> {
        let rad = self.rad_matrices();
        let mut prods = Vec::new();
        for a in &rad {
            for b in &rad {
                prods.push(a.mul(b));
            }
        }
        matrix_span(self.algebra.size(), &prods)
    }

    /// Both computations of the square radical; errors if they differ.
    pub fn rad_square(&self, p: &Poset, od: &OrbitData) -> Result<Subspace<F>> {
        let a = self.rad_square_closed_form(p, od);
        let b = self.rad_square_brute();
        if a != b {
            return Err(Error::Invalid(format!(
                "square radical mismatch: closed form has dim {}, products span dim {}",
                a.dim(),
                b.dim()
            )));
        }
        Ok(a)
    }

    /// The multiplication rules of the `B` basis:
    /// `B_ji = eps_j B_ji eps_i` (or `eps_0` for minimal `i`),
    /// `B_kj B_ji = B_ki` for non-minimal `i`, and
    /// `B_kj (B_ji1 - B_ji2) = B_ki1 - B_ki2`.
    pub fn check_product_rules(&self, p: &Poset) -> Result<()> {
        let n = p.n();
        let mk = &self.marking;
        let e0 = eps0::<F>(p, mk);
        let fail = |s: String| Err(Error::Invalid(format!("row-balanced product rule: {s}")));
        for (i, j) in p.relations() {
            let b = b_matrix::<F>(n, mk, j, i);
            let right = if p.is_minimal(i) { e0.clone() } else { eps(n, mk, i) };
            if eps::<F>(n, mk, j).mul(&b).mul(&right) != b {
                return fail(format!("B_{j}{i} is not homogeneous"));
            }
            for k in p.above(j) {
                let bkj = b_matrix::<F>(n, mk, k, j);
                if !p.is_minimal(i) && bkj.mul(&b) != b_matrix(n, mk, k, i) {
                    return fail(format!("B_{k}{j} B_{j}{i} != B_{k}{i}"));
                }
                for i2 in p.below(j) {
                    let lhs = bkj.mul(&b.sub(&b_matrix(n, mk, j, i2)));
                    let rhs = b_matrix::<F>(n, mk, k, i).sub(&b_matrix(n, mk, k, i2));
                    if lhs != rhs {
                        return fail(format!("B_{k}{j}(B_{j}{i} - B_{j}{i2})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Every basis matrix of the algebra maps the ones column into its span,
    /// and every basis matrix of the centralized bimodule kills it.
    pub fn check_row_sums(&self) -> bool {
        let n = self.algebra.size();
        let one = ones::<F>(n);
        let line = Subspace::span(n, vec![one.clone()]);
        self.algebra.basis().iter().all(|m| line.contains(&m.mul_vec(&one)).unwrap())
            && self.centralized.basis.iter().all(|m| m.mul_vec(&one).iter().all(|x| x.is_zero()))
    }
}

/// Row-balanced subalgebra computed directly from its defining condition
/// `M 1 in K 1` inside the incidence algebra; used as an oracle.
pub fn row_balanced_by_condition<F: Field>(p: &Poset) -> Subspace<F> {
    let kp = incidence_algebra::<F>(p);
    let n = p.n();
    let one = ones::<F>(n);
    // unknown x = sum c_s b_s; (x 1)_r - (x 1)_0 = 0 for all rows r
    let k = kp.dim();
    let images: Vec<Vec<F>> = kp.basis().iter().map(|b| b.mul_vec(&one)).collect();
    let mut red = RowReducer::new(k);
    for r in 1..n {
        red.push(images.iter().map(|v| v[r].clone() - v[0].clone()).collect());
    }
    let mats: Vec<Mat<F>> = red.nullspace().iter().map(|c| kp.element(c)).collect();
    matrix_span(n, &mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn pb() -> Poset {
        Poset::parse("n=3;1<3;2<3").unwrap()
    }

    #[test]
    fn incidence_dimensions() {
        assert_eq!(incidence_algebra::<Q>(&Poset::antichain(2)).dim(), 2);
        assert_eq!(incidence_algebra::<Q>(&pb()).dim(), 5);
        let pe = Poset::parse("n=5;1<3;2<3;3<4;3<5").unwrap();
        assert_eq!(incidence_algebra::<Q>(&pe).dim(), 13);
    }

    #[test]
    fn row_balanced_of_pb() {
        let p = pb();
        let mk = Marking::default_for(&p);
        let rb = RowBalanced::<Q>::new(&p, &mk).unwrap();
        assert_eq!(rb.algebra.dim(), 3);
        assert_eq!(rb.centralized.dim(), 2);
        let e3 = eps::<Q>(3, &mk, 3);
        let e0 = eps0::<Q>(&p, &mk);
        assert_eq!(e3.mul(&e3), e3);
        assert!(e0.mul(&e3).is_zero());
        assert_eq!(e3, e(3, 3, 3).sub(&e(3, 3, 1)));
        assert!(rb.check_row_sums());
        rb.check_product_rules(&p).unwrap();
        let od = OrbitData::new(&p, &mk);
        assert_eq!(rb.rad_square(&p, &od).unwrap().dim(), 0);
    }

    #[test]
    fn antichain_row_balanced_is_scalars() {
        let p = Poset::antichain(3);
        let rb = RowBalanced::<Q>::new(&p, &Marking::default_for(&p)).unwrap();
        assert_eq!(rb.algebra.dim(), 1);
        assert_eq!(rb.centralized.dim(), 0);
    }

    #[test]
    fn chain_square_radical() {
        let p = Poset::chain(4);
        let mk = Marking::default_for(&p);
        let rb = RowBalanced::<Q>::new(&p, &mk).unwrap();
        let od = OrbitData::new(&p, &mk);
        let r2 = rb.rad_square(&p, &od).unwrap();
        assert_eq!(r2.dim(), 1);
        assert!(r2.contains(b_matrix::<Q>(4, &mk, 4, 2).flat()).unwrap());
        let p3 = Poset::chain(3);
        let rb3 = RowBalanced::<Q>::new(&p3, &Marking::default_for(&p3)).unwrap();
        assert_eq!(rb3.rad_square_brute().dim(), 0);
    }

    #[test]
    fn product_rules_need_a_compatible_marking() {
        let pe = Poset::parse("n=5;1<3;2<3;3<4;3<5").unwrap();
        let mk = Marking::default_for(&pe);
        assert!(mk.is_compatible(&pe));
        let rb = RowBalanced::<Q>::new(&pe, &mk).unwrap();
        rb.check_product_rules(&pe).unwrap();
        rb.rad_square(&pe, &OrbitData::new(&pe, &mk)).unwrap();
        // m(3)=1 and m(4)=2 cannot both agree with m(5)
        let p = Poset::parse("n=5;1<3;2<4;3<5;4<5").unwrap();
        let mk = Marking::default_for(&p);
        assert!(!mk.is_compatible(&p));
        let rb = RowBalanced::<Q>::new(&p, &mk).unwrap();
        assert!(rb.check_product_rules(&p).is_err());
        assert!(rb.rad_square(&p, &OrbitData::new(&p, &mk)).is_err());
    }

    #[test]
    fn defining_condition_matches_basis() {
        let p = Poset::parse("n=4;1<3;2<3;2<4").unwrap();
        let rb = RowBalanced::<Q>::new(&p, &Marking::default_for(&p)).unwrap();
        assert_eq!(&row_balanced_by_condition::<Q>(&p), rb.algebra.subspace());
    }
}
