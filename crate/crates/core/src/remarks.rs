//! Checks for the structural remarks: restriction to the incidence algebra,
//! the equivalent characterizations of anti-chains, and the comparison of
//! the basic left algebra with the incidence algebra of `P_min,0` when every
//! component has a minimum.

use serde::Serialize;

use crate::algebra::MatrixAlgebra;
use crate::bocs::PosetBocs;
use crate::burt_butler::{BasicLeft, RealizedAlgebra, Side};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{add_scaled, Mat, Subspace};
use crate::module::Module;
use crate::poset::Poset;
use crate::qh::QhAlgebra;

/// Restriction of simple and injective modules of the left algebra.
pub fn check_res0_identities<F: Field>(qh: &QhAlgebra<F>) -> Result<()> {
    let n = qh.n();
    for k in 1..=n {
        let e = qh.kp.alg.frame()[k - 1].clone();
        let s_kp = Module::left_ideal(&qh.kp, &e)?.top()?;
        let q_kp = Module::dual_right_ideal(&qh.kp, &e)?;
        if !qh.res0(&qh.simple(k)?)?.is_isomorphic(&s_kp)? {
            return Err(Error::Invalid(format!("res0 S({k}) is not the simple KP-module")));
        }
        if !qh.res0(&qh.injective(k)?)?.is_isomorphic(&q_kp)? {
            return Err(Error::Invalid(format!("res0 Q({k}) is not the injective KP-module")));
        }
    }
    Ok(())
}

/// `soc(res0 M) = res0(soc M)`, both taken as subspaces of `M`. This holds
/// when `Tr_0(M) = 0`; `Q(0)` is a counterexample otherwise.
pub fn socle_commutes_with_res0<F: Field>(qh: &QhAlgebra<F>, m: &Module<F>) -> Result<bool> {
    let s = qh.ctx.alg.size();
    let e = Mat::identity(qh.n()).embed(s, s, 0, 0);
    let pe = m.act(&e)?;
    let em = Subspace::span(m.dim(), (0..m.dim()).map(|c| pe.column(c)));
    let r = qh.res0(m)?;
    let lifted = Subspace::span(
        m.dim(),
        r.socle_space().basis().iter().map(|c| {
            let mut v = vec![F::zero(); m.dim()];
            for (x, b) in c.iter().zip(em.basis()) {
                add_scaled(&mut v, x, b);
            }
            v
        }),
    );
    let direct = m.socle_space().intersect(&em)?;
    Ok(lifted == direct)
}

/// Semisimple module `⊕ S(k)^{mult[k-1]}` with no `S(0)` summand.
pub fn semisimple<F: Field>(qh: &QhAlgebra<F>, mult: &[usize]) -> Result<Module<F>> {
    let mut t = Module::zero(qh.ctx.clone());
    for (k, &m) in mult.iter().enumerate() {
        if m > 0 {
            t = t.direct_sum(&qh.simple(k + 1)?.power(m));
        }
    }
    Ok(t)
}

/// For semisimple `T`, `T'` with `Tr_0 = 0`, `T ≅ T'` exactly when their
/// restrictions are isomorphic.
pub fn check_semisimple_detection<F: Field>(qh: &QhAlgebra<F>, a: &[usize], b: &[usize]) -> Result<bool> {
    let (t, u) = (semisimple(qh, a)?, semisimple(qh, b)?);
    if qh.trace0(&t)?.dim() != 0 || qh.trace0(&u)?.dim() != 0 {
        return Err(Error::Invalid("semisimple module meets the trace of S(0)".into()));
    }
    Ok(t.is_isomorphic(&u)? == qh.res0(&t)?.is_isomorphic(&qh.res0(&u)?)?)
}

/// The five conditions that single out anti-chains.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AntichainConditions {
    pub antichain: bool,
    pub one_grouplike: bool,
    pub right_is_base: bool,
    pub left_is_base: bool,
    pub left_basic: bool,
}

impl AntichainConditions {
    pub fn new<F: Field>(p: &Poset, b: &PosetBocs<F>, right: &RealizedAlgebra<F>, left: &RealizedAlgebra<F>, left_basic: bool) -> Result<Self> {
        Ok(AntichainConditions {
            antichain: p.is_antichain(),
            one_grouplike: one_grouplike(b)?,
            // A embeds, so equal dimension means the embedding is onto
            right_is_base: right.dim() == b.a.dim(),
            left_is_base: left.dim() == b.a.dim(),
            left_basic,
        })
    }

    pub fn consistent(&self) -> bool {
        let v = self.antichain;
        self.one_grouplike == v && self.right_is_base == v && self.left_is_base == v && self.left_basic == v
    }
}

/// Decides whether `omega` is the only grouplike. Two distinct grouplikes
/// `omega != omega'` settle "no"; an injective counit settles "yes", since a
/// grouplike `g` has `epsilon(g) = 1`.
pub fn one_grouplike<F: Field>(b: &PosetBocs<F>) -> Result<bool> {
    let (w, w2) = (b.omega(), b.omega_prime());
    if !b.is_grouplike(&w) || !b.is_grouplike(&w2) {
        return Err(Error::Invalid("omega or omega' is not grouplike".into()));
    }
    if w != w2 {
        return Ok(false);
    }
    let d = b.dim_u();
    let cols: Vec<Vec<F>> = (0..d).map(|k| b.epsilon(&crate::linalg::unit_vec(d, k))).collect();
    let counit = Mat::from_columns(b.a.dim(), &cols);
    if counit.rank() == d {
        Ok(true)
    } else {
        Err(Error::Invalid("grouplikes not determined: omega = omega' but the counit is not injective".into()))
    }
}

pub fn every_component_has_minimum(p: &Poset) -> bool {
    p.components().iter().all(|c| c.iter().any(|&m| c.iter().all(|&x| p.leq(m, x))))
}

/// `P ⊔ {0}` with `i < 0` for every minimal `i`. The element `0` gets label `n + 1`.
pub fn p_min0(p: &Poset) -> Poset {
    let n = p.n();
    let mut rels = p.relations();
    rels.extend(p.minimal().into_iter().map(|i| (i, n + 1)));
    Poset::from_relations(n + 1, &rels).expect("extension of a poset")
}

/// An explicit isomorphism from the incidence algebra of `q` onto a basic
/// algebra whose frame is labelled by the elements of `q` (via `label`).
/// The image of `E_ba` (`a <= b`) lies in `e_b B e_a`.
pub fn incidence_isomorphism<F: Field>(alg: &MatrixAlgebra<F>, q: &Poset, label: &dyn Fn(usize) -> String) -> Result<Vec<Vec<Option<Mat<F>>>>> {
    let n = q.n();
    let idx: Vec<usize> = q
        .elements()
        .map(|a| alg.frame_index(&label(a)).ok_or_else(|| Error::Invalid(format!("no frame idempotent {}", label(a)))))
        .collect::<Result<_>>()?;
    if alg.frame().len() != n {
        return Err(Error::Invalid("frame size differs from the poset".into()));
    }
    let mut img: Vec<Vec<Option<Mat<F>>>> = vec![vec![None; n + 1]; n + 1];
    for b in q.elements() {
        for a in q.elements() {
            let block = alg.block_indices(idx[b - 1], idx[a - 1]);
            let want = usize::from(q.leq(a, b));
            if block.len() != want {
                return Err(Error::Invalid(format!("e_{} B e_{} has dim {}, expected {want}", label(b), label(a), block.len())));
            }
        }
        img[b][b] = Some(alg.frame()[idx[b - 1]].clone());
    }
    // covers get the basis element, longer intervals a product through a cover
    let mut pairs = q.relations();
    pairs.sort_by_key(|&(a, b)| q.elements().filter(|&c| q.lt(a, c) && q.lt(c, b)).count());
    for (a, b) in pairs {
        let y = match q.elements().find(|&c| q.lt(a, c) && q.covers(c, b)) {
            Some(c) => img[b][c].as_ref().unwrap().mul(img[c][a].as_ref().unwrap()),
            None => alg.basis()[alg.block_indices(idx[b - 1], idx[a - 1])[0]].clone(),
        };
        if y.is_zero() {
            return Err(Error::Invalid(format!("product through {} vanishes", label(b))));
        }
        img[b][a] = Some(y);
    }
    for a in q.elements() {
        for b in q.elements().filter(|&b| q.leq(a, b)) {
            for c in q.elements().filter(|&c| q.leq(b, c)) {
                let lhs = img[c][b].as_ref().unwrap().mul(img[b][a].as_ref().unwrap());
                if &lhs != img[c][a].as_ref().unwrap() {
                    return Err(Error::Invalid(format!("E_{c}{b} E_{b}{a} is not E_{c}{a} in the image")));
                }
            }
        }
    }
    Ok(img)
}

/// Result of comparing the basic left algebra with `K P_min,0`.
#[derive(Clone, Debug, Serialize)]
pub struct MinimumComparison {
    pub components_have_minimum: bool,
    pub s0_projective: bool,
    /// Only attempted when the components have minima.
    pub morita: Option<bool>,
}

pub fn compare_with_p_min0<F: Field>(p: &Poset, left: &QhAlgebra<F>, basic: &BasicLeft<F>) -> Result<MinimumComparison> {
    if left.side != Side::Left {
        return Err(Error::Invalid("comparison needs the left algebra".into()));
    }
    let has_min = every_component_has_minimum(p);
    let s0_projective = left.simple(0)?.is_projective()?;
    let morita = if has_min {
        let n = p.n();
        let q = p_min0(p);
        let label = |a: usize| if a == n + 1 { "0".to_string() } else { a.to_string() };
        Some(incidence_isomorphism(&basic.algebra, &q, &label).is_ok())
    } else {
        None
    };
    Ok(MinimumComparison { components_have_minimum: has_min, s0_projective, morita })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burt_butler::LeftFrame;
    use crate::field::{F3, Q};
    use crate::poset::Marking;

    fn setup<F: Field>(p: &Poset) -> (PosetBocs<F>, Marking, RealizedAlgebra<F>, RealizedAlgebra<F>) {
        let b = PosetBocs::<F>::new(p).unwrap();
        let mk = Marking::default_for(p);
        let r = RealizedAlgebra::new(&b, Side::Right, &mk).unwrap();
        let l = RealizedAlgebra::new(&b, Side::Left, &mk).unwrap();
        (b, mk, r, l)
    }

    #[test]
    fn p_min0_of_a_vee() {
        let p = Poset::from_relations(3, &[(1, 3), (2, 3)]).unwrap();
        let q = p_min0(&p);
        assert!(q.lt(1, 4) && q.lt(2, 4) && !q.comparable(3, 4));
        assert!(!every_component_has_minimum(&p));
        assert!(every_component_has_minimum(&Poset::chain(3)));
        assert!(every_component_has_minimum(&Poset::antichain(3)));
    }

    #[test]
    fn antichain_conditions_agree() {
        for p in [Poset::antichain(2), Poset::chain(2), Poset::from_relations(3, &[(1, 3), (2, 3)]).unwrap()] {
            let (b, mk, r, l) = setup::<Q>(&p);
            let basic = LeftFrame::new(&l, &p, &mk).unwrap().algebra.is_basic().unwrap();
            let c = AntichainConditions::new(&p, &b, &r, &l, basic).unwrap();
            assert!(c.consistent(), "{p:?}: {c:?}");
        }
    }

    #[test]
    fn minimum_and_morita() {
        let v = Poset::from_relations(3, &[(1, 2), (1, 3)]).unwrap();
        for (p, has) in [(Poset::chain(3), true), (v, true), (Poset::from_relations(3, &[(1, 3), (2, 3)]).unwrap(), false)] {
            let (b, mk, _, l) = setup::<F3>(&p);
            let frame = LeftFrame::new(&l, &p, &mk).unwrap();
            let qh = QhAlgebra::left(&p, &b, &l, &frame).unwrap();
            let basic = BasicLeft::new(&l, &p, &mk).unwrap();
            let c = compare_with_p_min0(&p, &qh, &basic).unwrap();
            assert_eq!(c.components_have_minimum, has);
            assert_eq!(c.s0_projective, has);
            if has {
                assert_eq!(c.morita, Some(true), "{p:?}");
            }
        }
    }

    #[test]
    fn restriction_remarks() {
        let p = Poset::from_relations(3, &[(1, 3), (2, 3)]).unwrap();
        let (b, mk, _, l) = setup::<F3>(&p);
        let frame = LeftFrame::new(&l, &p, &mk).unwrap();
        let qh = QhAlgebra::left(&p, &b, &l, &frame).unwrap();
        check_res0_identities(&qh).unwrap();
        for k in 0..=3 {
            assert!(socle_commutes_with_res0(&qh, &qh.projective(k).unwrap()).unwrap());
        }
        for k in 1..=3 {
            assert!(socle_commutes_with_res0(&qh, &qh.injective(k).unwrap()).unwrap());
        }
        // Q(0) has socle S(0), killed by the restriction, while its
        // restriction is S(1) + S(2): the identity needs Tr_0(M) = 0
        let q0 = qh.injective(0).unwrap();
        assert_ne!(qh.trace0(&q0).unwrap().dim(), 0);
        assert!(!socle_commutes_with_res0(&qh, &q0).unwrap());
        assert_eq!(qh.res0(&q0).unwrap().socle_space().dim(), 2);
        assert!(check_semisimple_detection(&qh, &[1, 0, 1], &[1, 0, 1]).unwrap());
        assert!(check_semisimple_detection(&qh, &[1, 0, 1], &[0, 1, 1]).unwrap());
    }
}
