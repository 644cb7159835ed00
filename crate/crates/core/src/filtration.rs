//! Standard and costandard filtrations by peeling, with certificates that
//! are checked independently of how they were found.

use serde_json::json;

use crate::burt_butler::Side;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{add_scaled, Mat, Subspace};
use crate::module::{lift, project, Module};
use crate::qh::QhAlgebra;

#[derive(Clone, Debug)]
pub struct Layer<F: Field> {
    pub label: usize,
    /// `M_t` as a subspace of `M`.
    pub space: Subspace<F>,
    /// Isomorphism from the family member onto `M_t / M_{t-1}` (quotient in
    /// complement coordinates of `M_{t-1}` inside `M_t`).
    pub intertwiner: Mat<F>,
}

/// A chain `0 = M_0 ⊂ ... ⊂ M_r = M` with each layer isomorphic to a member
/// of a fixed family.
#[derive(Clone, Debug)]
pub struct FiltrationCertificate<F: Field> {
    pub layers: Vec<Layer<F>>,
}

/// Quotient `upper / lower` of two nested submodules of `m`, with a map
/// sending vectors of `upper` (in `M` coordinates) to quotient coordinates.
fn layer_quotient<F: Field>(m: &Module<F>, lower: &Subspace<F>, upper: &Subspace<F>) -> Result<(Module<F>, impl Fn(&[F]) -> Result<Vec<F>>)> {
    let sub = m.sub(upper)?;
    let lower_in = Subspace::span(
        upper.dim(),
        lower.basis().iter().map(|v| upper.coordinates(v).ok_or_else(|| Error::Invalid("chain is not nested".into()))).collect::<Result<Vec<_>>>()?,
    );
    let q = sub.quotient(&lower_in)?;
    let up = upper.clone();
    let to_q = move |v: &[F]| -> Result<Vec<F>> {
        let c = up.coordinates(v).ok_or_else(|| Error::Invalid("vector outside the layer".into()))?;
        Ok(project(&lower_in, &c))
    };
    Ok((q, to_q))
}

impl<F: Field> FiltrationCertificate<F> {
    pub fn labels(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.label).collect()
    }

    /// Every `M_t` is a submodule, the chain is strictly increasing and ends
    /// at `M`, and every intertwiner is an invertible module map.
    pub fn verify(&self, m: &Module<F>, family: &[Module<F>]) -> Result<()> {
        let mut prev = Subspace::zero(m.dim());
        for (t, l) in self.layers.iter().enumerate() {
            if !m.is_submodule(&l.space) || !prev.is_subspace_of(&l.space)? || prev.dim() >= l.space.dim() {
                return Err(Error::Invalid(format!("layer {t} is not a larger submodule")));
            }
            let (q, _) = layer_quotient(m, &prev, &l.space)?;
            let fam = &family[l.label];
            let x = &l.intertwiner;
            if x.rows() != q.dim() || x.cols() != fam.dim() || x.rank() != q.dim() || !fam.is_hom(&q, x) {
                return Err(Error::Invalid(format!("layer {t} is not isomorphic to member {}", l.label)));
            }
            prev = l.space.clone();
        }
        if prev.dim() != m.dim() {
            return Err(Error::Invalid("chain does not reach the module".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!(self
            .layers
            .iter()
            .map(|l| json!({
                "label": l.label,
                "dim": l.space.dim(),
                "basis": l.space.basis().iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>())
    }
}

/// Split `upper / lower ≅ member^k` into `k` single layers.
fn split_layers<F: Field>(
    m: &Module<F>,
    lower: &Subspace<F>,
    upper: &Subspace<F>,
    member: &Module<F>,
    label: usize,
) -> Result<Option<Vec<Layer<F>>>> {
    let (q, _) = layer_quotient(m, lower, upper)?;
    if member.dim() == 0 || q.dim() % member.dim() != 0 {
        return Ok(None);
    }
    let k = q.dim() / member.dim();
    let Some(phi) = member.power(k).isomorphism(&q)? else {
        return Ok(None);
    };
    // quotient coordinates -> vectors of M
    let lower_in = Subspace::span(upper.dim(), lower.basis().iter().map(|v| upper.coordinates(v).expect("nested")));
    let to_m = |qv: &[F]| -> Vec<F> {
        let c = lift(&lower_in, qv);
        let mut out = vec![F::zero(); m.dim()];
        for (x, b) in c.iter().zip(upper.basis()) {
            add_scaled(&mut out, x, b);
        }
        out
    };
    let d = member.dim();
    let mut layers = Vec::new();
    let mut cur = lower.clone();
    for s in 0..k {
        let vecs: Vec<Vec<F>> = (0..d).map(|c| to_m(&phi.column(s * d + c))).collect();
        let next = cur.sum(&Subspace::span(m.dim(), vecs.clone()))?;
        let (_, to_q) = layer_quotient(m, &cur, &next)?;
        let cols: Vec<Vec<F>> = vecs.iter().map(|v| to_q(v)).collect::<Result<_>>()?;
        layers.push(Layer { label, space: next.clone(), intertwiner: Mat::from_columns(d, &cols) });
        cur = next;
    }
    Ok(Some(layers))
}

/// Standard filtration: for each label from the top of the order down, the
/// trace of `P(λ)` in what is left must be a sum of copies of `Δ(λ)`.
pub fn delta_filtration<F: Field>(qh: &QhAlgebra<F>, m: &Module<F>, deltas: &[Module<F>]) -> Result<Option<FiltrationCertificate<F>>> {
    let mut lower = Subspace::zero(m.dim());
    let mut layers = Vec::new();
    for lam in qh.descending() {
        let q = m.quotient(&lower)?;
        let u = q.generated_by_idempotent(&qh.idem[lam])?;
        if u.dim() == 0 {
            continue;
        }
        let upper = lower.sum(&Subspace::span(m.dim(), u.basis().iter().map(|v| lift(&lower, v))))?;
        match split_layers(m, &lower, &upper, &deltas[lam], lam)? {
            Some(ls) => layers.extend(ls),
            None => return Ok(None),
        }
        lower = upper;
    }
    if lower.dim() != m.dim() {
        return Ok(None);
    }
    Ok(Some(FiltrationCertificate { layers }))
}

/// Costandard filtration: for each label from the top of the order down,
/// `T / K` must be a sum of copies of `∇(λ)`, where `K` is the largest
/// submodule of the remaining part `T` without `S(λ)` factors.
pub fn nabla_filtration<F: Field>(qh: &QhAlgebra<F>, m: &Module<F>, nablas: &[Module<F>]) -> Result<Option<FiltrationCertificate<F>>> {
    let mut upper = Subspace::full(m.dim());
    let mut blocks: Vec<Vec<Layer<F>>> = Vec::new();
    for lam in qh.descending() {
        let t = m.sub(&upper)?;
        let k_in = t.annihilated_by(&qh.idem[lam])?;
        if k_in.dim() == t.dim() {
            continue;
        }
        let to_m = |v: &Vec<F>| {
            let mut out = vec![F::zero(); m.dim()];
            for (x, b) in v.iter().zip(upper.basis()) {
                add_scaled(&mut out, x, b);
            }
            out
        };
        let lower = Subspace::span(m.dim(), k_in.basis().iter().map(to_m));
        match split_layers(m, &lower, &upper, &nablas[lam], lam)? {
            Some(ls) => blocks.push(ls),
            None => return Ok(None),
        }
        upper = lower;
    }
    if upper.dim() != 0 {
        return Ok(None);
    }
    blocks.reverse();
    Ok(Some(FiltrationCertificate { layers: blocks.into_iter().flatten().collect() }))
}

/// Outcome of comparing filtration membership with the restriction test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Characterization {
    pub filtered: bool,
    pub restriction_ok: bool,
}

/// On the right: `M` has a standard filtration iff `res_0(M)` is projective.
/// On the left: `M` has a costandard filtration iff `res_0(M)` is injective.
/// A disagreement is an error.
pub fn check_coinduced_characterization<F: Field>(qh: &QhAlgebra<F>, m: &Module<F>, family: &[Module<F>]) -> Result<Characterization> {
    let res = qh.res0(m)?;
    let (filtered, restriction_ok) = match qh.side {
        Side::Right => {
            let cert = delta_filtration(qh, m, family)?;
            if let Some(c) = &cert {
                c.verify(m, family)?;
            }
            (cert.is_some(), res.is_projective()?)
        }
        Side::Left => {
            let cert = nabla_filtration(qh, m, family)?;
            if let Some(c) = &cert {
                c.verify(m, family)?;
            }
            let simples: Vec<Module<F>> = (1..=qh.n())
                .map(|k| Module::left_ideal(&qh.kp, &qh.kp.alg.frame()[k - 1]).and_then(|p| p.top()))
                .collect::<Result<_>>()?;
            (cert.is_some(), is_injective(&res, &simples)?)
        }
    };
    if filtered != restriction_ok {
        return Err(Error::Invalid(format!(
            "theorem violation: {} side filtration {} but restriction test {}",
            qh.side.name(),
            filtered,
            restriction_ok
        )));
    }
    Ok(Characterization { filtered, restriction_ok })
}

/// Injective iff `Ext^1(S, M) = 0` for every simple `S`.
pub fn is_injective<F: Field>(m: &Module<F>, simples: &[Module<F>]) -> Result<bool> {
    for s in simples {
        if s.ext1_dim(m)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Quasi-hereditary axioms: `End(Δ(i))` is one-dimensional, every `P(i)`
/// has a standard filtration and `Ext^1(Δ(i), Δ(j)) ≠ 0` forces `i < j`.
pub fn check_quasi_hereditary<F: Field>(qh: &QhAlgebra<F>, deltas: &[Module<F>]) -> Result<()> {
    let n = qh.n();
    for i in 0..=n {
        if deltas[i].end_dim() != 1 {
            return Err(Error::Invalid(format!("End(Δ({i})) is not one-dimensional")));
        }
        let p = qh.projective(i)?;
        match delta_filtration(qh, &p, deltas)? {
            Some(c) => c.verify(&p, deltas)?,
            None => return Err(Error::Invalid(format!("P({i}) has no standard filtration"))),
        }
        for j in 0..=n {
            if deltas[i].ext1_dim(&deltas[j])? != 0 && !(i != j && qh.leq(i, j)) {
                return Err(Error::Invalid(format!("Ext^1(Δ({i}), Δ({j})) ≠ 0 against the order")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bocs::PosetBocs;
    use crate::burt_butler::{LeftFrame, RealizedAlgebra};
    use crate::field::Q;
    use crate::poset::{Marking, Poset};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn both(txt: &str) -> (QhAlgebra<Q>, QhAlgebra<Q>) {
        let p = Poset::parse(txt).unwrap();
        let mk = Marking::default_for(&p);
        let b = PosetBocs::<Q>::new(&p).unwrap();
        let r = RealizedAlgebra::new(&b, Side::Right, &mk).unwrap();
        let l = RealizedAlgebra::new(&b, Side::Left, &mk).unwrap();
        let fr = LeftFrame::new(&l, &p, &mk).unwrap();
        (QhAlgebra::right(&p, &b, &r).unwrap(), QhAlgebra::left(&p, &b, &l, &fr).unwrap())
    }

    #[test]
    fn projectives_and_sums_are_filtered() {
        let (r, _) = both("n=3;1<3;2<3");
        let deltas: Vec<_> = (0..=3).map(|k| r.standard(k).unwrap()).collect();
        for k in 1..=3 {
            let p = r.projective(k).unwrap();
            let c = delta_filtration(&r, &p, &deltas).unwrap().unwrap();
            c.verify(&p, &deltas).unwrap();
            assert_eq!(c.labels(), vec![0, k]);
            let s = deltas[k].direct_sum(&deltas[0]);
            assert_eq!(delta_filtration(&r, &s, &deltas).unwrap().unwrap().layers.len(), 2);
        }
        // S(1): res_0 is the simple S(1) of KP, not projective
        let s1 = r.simple(1).unwrap();
        assert!(delta_filtration(&r, &s1, &deltas).unwrap().is_none());
        let c = check_coinduced_characterization(&r, &s1, &deltas).unwrap();
        assert_eq!(c, Characterization { filtered: false, restriction_ok: false });
        let c = check_coinduced_characterization(&r, &r.simple(0).unwrap(), &deltas).unwrap();
        assert!(c.filtered && c.restriction_ok);
        check_quasi_hereditary(&r, &deltas).unwrap();
    }

    #[test]
    fn broken_certificate_is_rejected() {
        let (r, _) = both("n=3;1<3;2<3");
        let deltas: Vec<_> = (0..=3).map(|k| r.standard(k).unwrap()).collect();
        let p = r.projective(1).unwrap();
        let mut c = delta_filtration(&r, &p, &deltas).unwrap().unwrap();
        c.layers[1].label = 2;
        assert!(c.verify(&p, &deltas).is_err());
    }

    #[test]
    fn induced_and_coinduced_modules_pass() {
        let (r, l) = both("n=3;1<3;2<3");
        let deltas: Vec<_> = (0..=3).map(|k| r.standard(k).unwrap()).collect();
        let nablas: Vec<_> = (0..=3).map(|k| l.costandard(k).unwrap()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..8 {
            let n = r.base.random(6, &mut rng).unwrap();
            let m = r.induce(&n).unwrap();
            assert!(check_coinduced_characterization(&r, &m, &deltas).unwrap().filtered);
            let m = l.coinduce(&n).unwrap();
            assert!(check_coinduced_characterization(&l, &m, &nablas).unwrap().filtered);
        }
        for k in 0..=3 {
            let q = l.injective(k).unwrap();
            assert!(nabla_filtration(&l, &q, &nablas).unwrap().is_some());
        }
    }
}
