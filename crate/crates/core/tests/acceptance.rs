//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact (dimensions, subspaces, isomorphism classes);
//! there are no floating point tolerances. Sample sizes and seeds are pinned
//! below.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use posetbocs::bocs::PosetBocs;
use posetbocs::burt_butler::{expected_dim, left_target, right_target, BasicLeft, LeftFrame, RealizedAlgebra, Side};
use posetbocs::filtration::{check_coinduced_characterization, check_quasi_hereditary};
use posetbocs::gallery;
use posetbocs::incidence::{incidence_algebra, RowBalanced};
use posetbocs::module::Module;
use posetbocs::qh::QhAlgebra;
use posetbocs::quiver::{hasse_presentation, left_quiver, right_quiver, row_balanced_presentation};
use posetbocs::remarks::{check_res0_identities, check_semisimple_detection, compare_with_p_min0, socle_commutes_with_res0, AntichainConditions};
use posetbocs::{Field, Marking, OrbitData, Poset, F101, F2, F3, Q};

const RANDOM_SEED: u64 = 7;
const RANDOM_POSETS: usize = 25;
const RANDOM_MAX_N: usize = 6;
const SMALL_MAX_N: usize = 5;
/// Random products checked per realized algebra, besides the A-embedding.
const MULT_PAIRS: usize = 60;
const MODULE_SEED: u64 = 0x3_9;
const MODULES_PER_SIDE: usize = 100;
const MODULE_MAX_DIM: usize = 6;
const REMARK_SAMPLES: usize = 10;

/// One poset under test.
struct Case {
    name: String,
    poset: Poset,
    gallery: bool,
}

fn cases() -> Vec<Case> {
    let mut out: Vec<Case> = gallery::examples()
        .into_iter()
        .filter(|e| e.name.starts_with("p_"))
        .map(|e| Case { name: e.name.to_string(), poset: e.poset, gallery: true })
        .collect();
    for n in 1..=SMALL_MAX_N {
        out.push(Case { name: format!("antichain{n}"), poset: Poset::antichain(n), gallery: false });
        out.push(Case { name: format!("chain{n}"), poset: Poset::chain(n), gallery: false });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    for k in 0..RANDOM_POSETS {
        let n = rng.gen_range(1..=RANDOM_MAX_N);
        let p = Poset::random(n, &mut rng);
        out.push(Case { name: format!("random{k}[{}]", p.to_text_inline()), poset: p, gallery: false });
    }
    out
}

/// Failures per criterion, and the field-independent numbers seen.
#[derive(Default)]
struct Outcome {
    fails: BTreeMap<usize, Vec<String>>,
    dims: BTreeMap<String, Vec<usize>>,
}

impl Outcome {
    fn fail(&mut self, c: usize, msg: String) {
        self.fails.entry(c).or_default().push(msg);
    }

    fn check(&mut self, c: usize, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.fail(c, msg());
        }
    }

    fn record(&mut self, key: String, v: Vec<usize>) {
        self.dims.insert(key, v);
    }
}

fn err<T, E: std::fmt::Display>(o: &mut Outcome, c: usize, name: &str, r: Result<T, E>) -> Option<T> {
    match r {
        Ok(x) => Some(x),
        Err(e) => {
            o.fail(c, format!("{name}: {e}"));
            None
        }
    }
}

/// Criteria 1 to 6 for one poset over one field.
fn structural<F: Field>(case: &Case, o: &mut Outcome) {
    let p = &case.poset;
    let name = case.name.as_str();
    let mk = Marking::default_for(p);
    let od = OrbitData::new(p, &mk);
    let Some(b) = err(o, 3, name, PosetBocs::<F>::new(p)) else { return };

    // 3: bocs axioms
    err(o, 3, name, b.check_all());
    o.record(format!("{name} dim U"), vec![b.dim_u()]);

    // 1: dimensions
    let Some(r) = err(o, 1, name, RealizedAlgebra::new(&b, Side::Right, &mk)) else { return };
    let Some(l) = err(o, 1, name, RealizedAlgebra::new(&b, Side::Left, &mk)) else { return };
    let (n, card) = (p.n(), p.card_lt());
    o.check(1, r.dim() == 1 + 2 * n + card && expected_dim(p, Side::Right) == r.dim(), || {
        format!("{name}: dim R = {}, expected {}", r.dim(), 1 + 2 * n + card)
    });
    o.check(1, l.dim() == 1 + 2 * n + 4 * card && expected_dim(p, Side::Left) == l.dim(), || {
        format!("{name}: dim L = {}, expected {}", l.dim(), 1 + 2 * n + 4 * card)
    });
    o.record(format!("{name} dim R, L"), vec![r.dim(), l.dim()]);

    // 2: matrix images, embeddings of A, sampled multiplicativity
    if let Some(t) = err(o, 2, name, right_target::<F>(p)) {
        o.check(2, r.image.same_subspace(&t), || format!("{name}: right image differs from (KP 0; K^1xn K)"));
    }
    if let Some(t) = err(o, 2, name, left_target::<F>(p, &mk)) {
        o.check(2, l.image.same_subspace(&t), || format!("{name}: left image differs from (KP K10P; KP K1P)"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED ^ n as u64);
    for alg in [&r, &l] {
        err(o, 2, name, alg.check_embedding(&b));
        let d = alg.dim();
        let pairs: Vec<(usize, usize)> = (0..MULT_PAIRS).map(|_| (rng.gen_range(0..d), rng.gen_range(0..d))).collect();
        err(o, 2, name, alg.check_multiplicative(&b, &pairs));
    }

    // 4: quiver presentations
    let kp = incidence_algebra::<F>(p);
    if let Some(h) = err(o, 4, name, hasse_presentation::<F>(p)) {
        err(o, 4, name, h.check());
        o.check(4, h.algebra.dim() == kp.dim(), || format!("{name}: Hasse presentation dim {} vs KP {}", h.algebra.dim(), kp.dim()));
    }
    if let (Some(rb), Some(q)) = (err(o, 4, name, RowBalanced::<F>::new(p, &mk)), err(o, 4, name, row_balanced_presentation::<F>(p, &mk, &od))) {
        err(o, 4, name, q.check());
        o.check(4, q.algebra.dim() == rb.algebra.dim(), || format!("{name}: row-balanced presentation dim mismatch"));
    }
    if let Some(q) = err(o, 4, name, right_quiver::<F>(p)) {
        err(o, 4, name, q.check());
        let d = q.quiver.path_algebra_dim().unwrap_or(0);
        o.check(4, d == r.dim(), || format!("{name}: right quiver dim {d} vs dim R {}", r.dim()));
        o.record(format!("{name} right quiver"), vec![q.quiver.arrows.len(), q.quiver.relations.len(), d]);
    }
    let basic = err(o, 4, name, BasicLeft::new(&l, p, &mk));
    if let (Some(q), Some(bl)) = (err(o, 4, name, left_quiver::<F>(p, &mk, &od)), basic.as_ref()) {
        err(o, 4, name, q.check());
        let d = q.quiver.path_algebra_dim().unwrap_or(0);
        o.check(4, d == bl.algebra.dim() && q.algebra.same_subspace(&bl.algebra), || {
            format!("{name}: left quiver dim {d} vs dim L' {}", bl.algebra.dim())
        });
        o.record(format!("{name} left quiver"), vec![q.quiver.arrows.len(), d]);
    }

    // 6: simple dimensions and the idempotent isomorphisms (checked inside LeftFrame)
    let Some(frame) = err(o, 6, name, LeftFrame::new(&l, p, &mk)) else { return };
    let want: Vec<usize> = (0..=n).map(|i| if i == 0 || p.is_minimal(i) { 1 } else { 2 }).collect();
    let got = frame.simple_dims();
    o.check(6, got == want, || format!("{name}: simple dims {got:?}, expected {want:?}"));
    o.record(format!("{name} simple dims"), got);

    // 5: Hom and Ext between standard modules on the gallery, right side
    if case.gallery {
        table_one(&case.name, p, &b, &r, o);
    }
}

fn table_one<F: Field>(name: &str, p: &Poset, b: &PosetBocs<F>, r: &RealizedAlgebra<F>, o: &mut Outcome) {
    let Some(qh) = err(o, 5, name, QhAlgebra::right(p, b, r)) else { return };
    let n = p.n();
    let Some(deltas) = err(o, 5, name, (0..=n).map(|k| qh.standard(k)).collect::<posetbocs::Result<Vec<_>>>()) else { return };
    let mut table = Vec::new();
    for j in 0..=n {
        for i in 0..=n {
            let hom = deltas[j].hom_dim(&deltas[i]);
            let ext = err(o, 5, name, deltas[j].ext1_dim(&deltas[i])).unwrap_or(usize::MAX);
            let want_hom = usize::from((i == 0 && j == 0) || (i != 0 && j != 0 && p.leq(i, j)));
            let want_ext = usize::from(i == 0 && j != 0);
            o.check(5, hom == want_hom && ext == want_ext, || {
                format!("{name}: Hom(D{j},D{i}) = {hom}, Ext = {ext}; expected {want_hom}, {want_ext}")
            });
            table.extend([hom, ext]);
        }
    }
    o.record(format!("{name} table"), table);
    err(o, 5, name, check_quasi_hereditary(&qh, &deltas));
}

/// Criterion 7 on one poset over `F`.
fn characterization<F: Field>(case: &Case, rng: &mut ChaCha8Rng, o: &mut Outcome) -> (usize, usize) {
    let p = &case.poset;
    let name = case.name.as_str();
    let mk = Marking::default_for(p);
    let b = PosetBocs::<F>::new(p).expect("bocs");
    let r = RealizedAlgebra::new(&b, Side::Right, &mk).expect("right");
    let l = RealizedAlgebra::new(&b, Side::Left, &mk).expect("left");
    let frame = LeftFrame::new(&l, p, &mk).expect("frame");
    let (Some(rq), Some(lq)) = (err(o, 7, name, QhAlgebra::right(p, &b, &r)), err(o, 7, name, QhAlgebra::left(p, &b, &l, &frame))) else {
        return (0, 0);
    };
    let n = p.n();
    let deltas: Vec<Module<F>> = (0..=n).map(|k| rq.standard(k).expect("standard")).collect();
    let nablas: Vec<Module<F>> = (0..=n).map(|k| lq.costandard(k).expect("costandard")).collect();
    for k in 0..=n {
        let s = rq.base.simple(k).expect("simple");
        let ind = rq.induce(&s).and_then(|m| m.is_isomorphic(&deltas[k]));
        o.check(7, matches!(ind, Ok(true)), || format!("{name}: induce(S_A({k})) is not Delta({k}): {ind:?}"));
        let co = lq.coinduce(&s).and_then(|m| m.is_isomorphic(&nablas[k]));
        o.check(7, matches!(co, Ok(true)), || format!("{name}: coinduce(S_A({k})) is not Nabla({k}): {co:?}"));
    }
    // Each random A-module N gives an induced (coinduced) module, which must
    // be filtered, and a random quotient (submodule) of it, which often is
    // not. The filtration oracle and the restriction test must agree on both.
    let (mut samples, mut unfiltered) = (0, 0);
    for (qh, family) in [(&rq, &deltas), (&lq, &nablas)] {
        for _ in 0..MODULES_PER_SIDE {
            let nm = qh.base.random(MODULE_MAX_DIM, rng).expect("random A-module");
            let Some(m) = err(o, 7, name, if qh.side == Side::Right { qh.induce(&nm) } else { qh.coinduce(&nm) }) else { continue };
            if let Some(c) = err(o, 7, name, check_coinduced_characterization(qh, &m, family)) {
                o.check(7, c.filtered, || format!("{name}: {} module built from A is not filtered", qh.side.name()));
            }
            let k = rng.gen_range(1..=2);
            let s = m.random_submodule(k, rng);
            let other = if qh.side == Side::Right { m.quotient(&s) } else { m.sub(&s) };
            if let Some(x) = err(o, 7, name, other) {
                if let Some(c) = err(o, 7, name, check_coinduced_characterization(qh, &x, family)) {
                    unfiltered += usize::from(!c.filtered);
                }
            }
            samples += 2;
        }
    }
    (samples, unfiltered)
}

/// Criterion 8 on one poset over `F`.
fn remarks<F: Field>(case: &Case, rng: &mut ChaCha8Rng, o: &mut Outcome) -> bool {
    let p = &case.poset;
    let name = case.name.as_str();
    let n = p.n();
    let mk = Marking::default_for(p);
    let b = PosetBocs::<F>::new(p).expect("bocs");
    let r = RealizedAlgebra::new(&b, Side::Right, &mk).expect("right");
    let l = RealizedAlgebra::new(&b, Side::Left, &mk).expect("left");
    let frame = LeftFrame::new(&l, p, &mk).expect("frame");
    let Some(lq) = err(o, 8, name, QhAlgebra::left(p, &b, &l, &frame)) else { return false };
    err(o, 8, name, check_res0_identities(&lq));
    for _ in 0..REMARK_SAMPLES {
        let x: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
        let y: Vec<usize> = if rng.gen_bool(0.5) { x.clone() } else { (0..n).map(|_| rng.gen_range(0..=1)).collect() };
        let ok = check_semisimple_detection(&lq, &x, &y);
        o.check(8, matches!(ok, Ok(true)), || format!("{name}: semisimple detection fails for {x:?}, {y:?}: {ok:?}"));
        let nm = lq.base.random(MODULE_MAX_DIM, rng).expect("random A-module");
        let m = lq.coinduce(&nm).expect("coinduce");
        if lq.trace0(&m).map(|t| t.dim() == 0).unwrap_or(false) {
            let ok = socle_commutes_with_res0(&lq, &m);
            o.check(8, matches!(ok, Ok(true)), || format!("{name}: soc does not commute with res0: {ok:?}"));
        }
    }
    let basic = frame.algebra.is_basic().unwrap_or(false);
    match AntichainConditions::new(p, &b, &r, &l, basic) {
        Ok(c) => o.check(8, c.consistent(), || format!("{name}: anti-chain conditions disagree: {c:?}")),
        Err(e) => o.fail(8, format!("{name}: {e}")),
    }
    let Some(bl) = err(o, 8, name, BasicLeft::new(&l, p, &mk)) else { return false };
    match compare_with_p_min0(p, &lq, &bl) {
        Ok(c) => {
            o.check(8, c.components_have_minimum == c.s0_projective, || format!("{name}: S(0) projective is {} but minima {}", c.s0_projective, c.components_have_minimum));
            o.check(8, c.morita != Some(false), || format!("{name}: L' is not isomorphic to K P_min,0"));
            c.morita == Some(true)
        }
        Err(e) => {
            o.fail(8, format!("{name}: {e}"));
            false
        }
    }
}

fn line(c: usize, title: &str, o: &Outcome, detail: &str) -> bool {
    let fails = o.fails.get(&c).map(|v| v.as_slice()).unwrap_or(&[]);
    let status = if fails.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {c} [{title}]: {status} ({detail})");
    for f in fails.iter().take(5) {
        println!("    {f}");
    }
    if fails.len() > 5 {
        println!("    ... {} more", fails.len() - 5);
    }
    fails.is_empty()
}

fn main() {
    let start = Instant::now();
    let cases = cases();
    let mut o = Outcome::default();
    for c in &cases {
        structural::<Q>(c, &mut o);
    }
    let structural_secs = start.elapsed().as_secs_f64();

    // 7: the gallery posets, each side
    let t7 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(MODULE_SEED);
    let (mut samples, mut unfiltered) = (0, 0);
    for c in cases.iter().filter(|c| c.gallery) {
        let (s, u) = characterization::<F3>(c, &mut rng, &mut o);
        samples += s;
        unfiltered += u;
    }
    let secs7 = t7.elapsed().as_secs_f64();

    // 8: gallery, small anti-chains and chains, and posets whose components have minima
    let mut extra = vec![
        Case { name: "vee".into(), poset: Poset::from_relations(3, &[(1, 2), (1, 3)]).unwrap(), gallery: false },
        Case { name: "chain2+point".into(), poset: Poset::from_relations(3, &[(1, 2)]).unwrap(), gallery: false },
        Case { name: "diamond".into(), poset: Poset::from_relations(4, &[(1, 2), (1, 3), (2, 4), (3, 4)]).unwrap(), gallery: false },
    ];
    extra.extend(cases.iter().filter(|c| c.gallery || c.poset.n() <= 3 && !c.name.starts_with("random")).map(|c| Case {
        name: c.name.clone(),
        poset: c.poset.clone(),
        gallery: c.gallery,
    }));
    let mut rng = ChaCha8Rng::seed_from_u64(MODULE_SEED + 1);
    let morita = extra.iter().filter(|c| remarks::<F3>(c, &mut rng, &mut o)).count();

    // 9: the same numbers over other fields
    let t9 = Instant::now();
    let reference = std::mem::take(&mut o.dims);
    for (field, run) in [
        ("F2", structural::<F2> as fn(&Case, &mut Outcome)),
        ("F3", structural::<F3> as fn(&Case, &mut Outcome)),
        ("F101", structural::<F101> as fn(&Case, &mut Outcome)),
    ] {
        let mut other = Outcome::default();
        for c in &cases {
            run(c, &mut other);
        }
        for (crit, fails) in &other.fails {
            for f in fails {
                o.fail(9, format!("{field}, criterion {crit}: {f}"));
            }
        }
        for (k, v) in &reference {
            if other.dims.get(k) != Some(v) {
                o.fail(9, format!("{field}: {k} is {:?} over {field}, {v:?} over Q", other.dims.get(k)));
            }
        }
    }
    let secs9 = t9.elapsed().as_secs_f64();

    match gallery::mismatches() {
        Ok(bad) => o.check(4, bad.is_empty(), || format!("gallery differs from fixtures: {bad:?}")),
        Err(e) => o.fail(4, format!("gallery: {e}")),
    }
    let ncases = cases.len();
    let results = [
        line(1, "dimension theorems", &o, &format!("{ncases} posets over Q")),
        line(2, "matrix images and A-embeddings", &o, &format!("{ncases} posets, {MULT_PAIRS} sampled products per side")),
        line(3, "bocs axioms", &o, &format!("{ncases} posets")),
        line(4, "quiver presentations and gallery", &o, &format!("{ncases} posets, {} gallery fixtures", gallery::FIXTURES.len())),
        line(5, "Hom/Ext of standard modules and quasi-hereditary axioms", &o, "four gallery posets, right side"),
        line(6, "simple dimensions and idempotent isomorphisms", &o, &format!("{ncases} posets")),
        line(7, "characterization of induced and coinduced modules", &o, &format!("{samples} modules over F3, {unfiltered} unfiltered, {secs7:.1}s")),
        line(8, "restriction, anti-chain and minimum remarks", &o, &format!("{} posets, {morita} isomorphisms to K P_min,0", extra.len())),
        line(9, "field independence", &o, &format!("{} numbers compared over F2, F3, F101, {secs9:.1}s", reference.len())),
    ];
    println!("structural pass over Q: {structural_secs:.1}s; total {:.1}s", start.elapsed().as_secs_f64());
    if !results.iter().all(|&x| x) {
        println!("acceptance: FAILED");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
