//! Finite posets labelled `1..n` with `i < j` whenever `i` precedes `j`,
//! minimal markings, and the orbit data attached to a marking.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite poset on `1..=n`. The strict order is stored as a boolean
/// matrix and is always transitively closed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    lt: Vec<bool>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset({})", self.to_text_inline())
    }
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    n: usize,
    lt: Vec<[usize; 2]>,
}

impl Poset {
    pub fn antichain(n: usize) -> Self {
        Poset { n, lt: vec![false; n * n] }
    }

    pub fn chain(n: usize) -> Self {
        let rels: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
        Self::from_relations(n, &rels).expect("chain is valid")
    }

    /// Build from declared relations `i < j` (any subset; closure is taken).
    /// Relations must respect the integer order.
    pub fn from_relations(n: usize, rels: &[(usize, usize)]) -> Result<Self> {
        let mut p = Poset::antichain(n);
        for &(i, j) in rels {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::Poset(format!("label out of range in {i}<{j} (n={n})")));
            }
            if i >= j {
                return Err(Error::Poset(format!(
                    "relation {i}<{j} does not respect the integer order; relabel the input"
                )));
            }
            p.lt[(i - 1) * n + (j - 1)] = true;
        }
        p.close();
        Ok(p)
    }

    fn close(&mut self) {
        let n = self.n;
        // labels are order compatible, so a single sweep by middle element works
        for k in 0..n {
            for i in 0..n {
                if !self.lt[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if self.lt[k * n + j] {
                        self.lt[i * n + j] = true;
                    }
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    /// Strict order `i < j` in the poset.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.lt[(i - 1) * self.n + (j - 1)]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// All pairs `(i, j)` with `i < j` in the poset, sorted by `(j, i)`.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in self.elements() {
            for i in 1..j {
                if self.lt(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Number of strict relations.
    pub fn card_lt(&self) -> usize {
        self.lt.iter().filter(|&&b| b).count()
    }

    pub fn covers(&self, i: usize, j: usize) -> bool {
        self.lt(i, j) && !(i + 1..j).any(|k| self.lt(i, k) && self.lt(k, j))
    }

    /// Hasse arrows `(i, j)`, `i` covered by `j`, sorted by `(j, i)`.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        self.relations().into_iter().filter(|&(i, j)| self.covers(i, j)).collect()
    }

    pub fn below(&self, j: usize) -> Vec<usize> {
        (1..j).filter(|&i| self.lt(i, j)).collect()
    }

    pub fn above(&self, i: usize) -> Vec<usize> {
        (i + 1..=self.n).filter(|&j| self.lt(i, j)).collect()
    }

    pub fn is_minimal(&self, i: usize) -> bool {
        self.below(i).is_empty()
    }

    pub fn is_maximal(&self, i: usize) -> bool {
        self.above(i).is_empty()
    }

    pub fn minimal(&self) -> Vec<usize> {
        self.elements().filter(|&i| self.is_minimal(i)).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        self.elements().filter(|&i| self.is_maximal(i)).collect()
    }

    /// Non-minimal elements.
    pub fn non_minimal(&self) -> Vec<usize> {
        self.elements().filter(|&i| !self.is_minimal(i)).collect()
    }

    /// Minimal elements of the poset lying below or at `j`.
    pub fn min_below(&self, j: usize) -> Vec<usize> {
        (1..=j).filter(|&i| self.is_minimal(i) && self.leq(i, j)).collect()
    }

    pub fn is_antichain(&self) -> bool {
        self.card_lt() == 0
    }

    /// Opposite poset, relabelled by `i -> n + 1 - i` to keep labels order compatible.
    pub fn opposite(&self) -> Self {
        let n = self.n;
        let rels: Vec<_> = self.relations().into_iter().map(|(i, j)| (n + 1 - j, n + 1 - i)).collect();
        Self::from_relations(n, &rels).unwrap()
    }

    /// Poset with a new maximum `n + 1` added.
    pub fn upper_suspension(&self) -> Self {
        let n = self.n;
        let mut rels = self.relations();
        rels.extend((1..=n).map(|i| (i, n + 1)));
        Self::from_relations(n + 1, &rels).unwrap()
    }

    /// Poset with a new minimum added. The new element is label 1 and every
    /// old label `i` becomes `i + 1`.
    pub fn lower_suspension(&self) -> Self {
        let n = self.n;
        let mut rels: Vec<_> = self.relations().into_iter().map(|(i, j)| (i + 1, j + 1)).collect();
        rels.extend((2..=n + 1).map(|i| (1, i)));
        Self::from_relations(n + 1, &rels).unwrap()
    }

    /// Connected components of the comparability graph, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n + 1];
        let mut out = Vec::new();
        for s in self.elements() {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            while let Some(x) = queue.pop_front() {
                comp.push(x);
                for y in self.elements() {
                    if !seen[y] && self.lt(x, y) || !seen[y] && self.lt(y, x) {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    /// Random poset: each pair `i < j` is related independently with
    /// probability 1/2, then closed.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut rels = Vec::new();
        for j in 1..=n {
            for i in 1..j {
                if rng.gen_bool(0.5) {
                    rels.push((i, j));
                }
            }
        }
        Self::from_relations(n, &rels).unwrap()
    }

    /// Parse the text format: `n=<count>` followed by `i<j` entries separated
    /// by newlines or `;`, with `#` comments. Labels must be `1..n` and
    /// respect the integer order.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim_start();
        if t.starts_with('{') {
            return Self::from_json(t);
        }
        let (n, rels) = parse_entries(text)?;
        let n = n.ok_or_else(|| Error::Parse("missing `n=<count>` line".into()))?;
        let mut out = Vec::new();
        for (a, b) in rels {
            let i: usize = a.parse().map_err(|_| Error::Parse(format!("bad label `{a}`")))?;
            let j: usize = b.parse().map_err(|_| Error::Parse(format!("bad label `{b}`")))?;
            out.push((i, j));
        }
        Self::from_relations(n, &out)
    }

    /// Parse text with arbitrary labels (any tokens without `<`, `;`, `#`).
    /// Elements are relabelled `1..n` by a topological sort that prefers the
    /// earliest-mentioned label; the returned vector maps new label `k`
    /// (index `k - 1`) to the original token. An `n=<count>` line, if
    /// present, adds labels `1..count` as tokens.
    pub fn parse_relabel(text: &str) -> Result<(Self, Vec<String>)> {
        let (n, rels) = parse_entries(text)?;
        let mut tokens: Vec<String> = Vec::new();
        let mut index = BTreeMap::new();
        let mut intern = |s: &str, tokens: &mut Vec<String>| -> usize {
            *index.entry(s.to_string()).or_insert_with(|| {
                tokens.push(s.to_string());
                tokens.len() - 1
            })
        };
        if let Some(n) = n {
            for i in 1..=n {
                intern(&i.to_string(), &mut tokens);
            }
        }
        let mut edges = Vec::new();
        for (a, b) in &rels {
            let x = intern(a, &mut tokens);
            let y = intern(b, &mut tokens);
            if x == y {
                return Err(Error::Poset(format!("reflexive strict relation `{a}<{a}`")));
            }
            edges.push((x, y));
        }
        let m = tokens.len();
        let mut indeg = vec![0usize; m];
        let mut succ = vec![Vec::new(); m];
        for &(x, y) in &edges {
            succ[x].push(y);
            indeg[y] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..m).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::new();
        while let Some(&v) = ready.iter().next() {
            ready.remove(&v);
            order.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        if order.len() < m {
            return Err(Error::Poset("cycle detected among the declared relations".into()));
        }
        let mut new_label = vec![0; m];
        for (k, &v) in order.iter().enumerate() {
            new_label[v] = k + 1;
        }
        let rels: Vec<_> = edges.iter().map(|&(x, y)| (new_label[x], new_label[y])).collect();
        let p = Self::from_relations(m, &rels)?;
        Ok((p, order.into_iter().map(|v| tokens[v].clone()).collect()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: PosetJson = serde_json::from_str(text)?;
        let rels: Vec<_> = j.lt.iter().map(|r| (r[0], r[1])).collect();
        Self::from_relations(j.n, &rels)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let lt: Vec<[usize; 2]> = self.hasse().into_iter().map(|(i, j)| [i, j]).collect();
        serde_json::to_value(PosetJson { n: self.n, lt }).unwrap()
    }

    /// Text format listing Hasse arrows, one per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("n={}\n", self.n);
        for (i, j) in self.hasse() {
            s.push_str(&format!("{i}<{j}\n"));
        }
        s
    }

    pub fn to_text_inline(&self) -> String {
        let mut parts = vec![format!("n={}", self.n)];
        parts.extend(self.hasse().into_iter().map(|(i, j)| format!("{i}<{j}")));
        parts.join(";")
    }
}

type Entries = (Option<usize>, Vec<(String, String)>);

fn parse_entries(text: &str) -> Result<Entries> {
    let mut n = None;
    let mut rels = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for item in line.split(';') {
            let item: String = item.chars().filter(|c| !c.is_whitespace()).collect();
            if item.is_empty() {
                continue;
            }
            if let Some(v) = item.strip_prefix("n=") {
                if n.is_some() {
                    return Err(Error::Parse("`n=` given twice".into()));
                }
                n = Some(v.parse().map_err(|_| Error::Parse(format!("bad count `{v}`")))?);
            } else if let Some((a, b)) = item.split_once('<') {
                if a.is_empty() || b.is_empty() || b.contains('<') {
                    return Err(Error::Parse(format!("bad relation `{item}`")));
                }
                rels.push((a.to_string(), b.to_string()));
            } else {
                return Err(Error::Parse(format!("unrecognized entry `{item}`")));
            }
        }
    }
    Ok((n, rels))
}

/// A choice `m(j)` of a minimal element below each `j`. Minimal elements
/// are marked by themselves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Marking {
    m: Vec<usize>,
}

impl Marking {
    /// Least minimal element below each `j`.
    pub fn default_for(p: &Poset) -> Self {
        Marking { m: p.elements().map(|j| p.min_below(j)[0]).collect() }
    }

    /// Explicit marking given as `(j, m(j))` pairs for non-minimal `j`;
    /// unspecified elements take the default.
    pub fn from_pairs(p: &Poset, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut mk = Self::default_for(p);
        for &(j, i) in pairs {
            if j == 0 || j > p.n() {
                return Err(Error::Marking(format!("element {j} out of range")));
            }
            if !p.min_below(j).contains(&i) || (p.is_minimal(j) && i != j) {
                return Err(Error::Marking(format!("m({j})={i} is not a minimal element below {j}")));
            }
            mk.m[j - 1] = i;
        }
        Ok(mk)
    }

    /// Parse a marking file: entries `j:i` (meaning `m(j)=i`) separated by
    /// newlines or `;`, `#` comments; or JSON `{"j": i, ...}`.
    pub fn parse(p: &Poset, text: &str) -> Result<Self> {
        let t = text.trim();
        let mut pairs = Vec::new();
        if t.starts_with('{') {
            let map: BTreeMap<String, usize> = serde_json::from_str(t)?;
            for (k, v) in map {
                let j = k.parse().map_err(|_| Error::Parse(format!("bad element `{k}`")))?;
                pairs.push((j, v));
            }
        } else {
            for line in t.lines() {
                let line = line.split('#').next().unwrap_or("");
                for item in line.split(';') {
                    let item: String = item.chars().filter(|c| !c.is_whitespace()).collect();
                    if item.is_empty() {
                        continue;
                    }
                    let (a, b) = item
                        .split_once(':')
                        .ok_or_else(|| Error::Parse(format!("expected `j:i`, got `{item}`")))?;
                    let j = a.parse().map_err(|_| Error::Parse(format!("bad element `{a}`")))?;
                    let i = b.parse().map_err(|_| Error::Parse(format!("bad element `{b}`")))?;
                    pairs.push((j, i));
                }
            }
        }
        Self::from_pairs(p, &pairs)
    }

    pub fn m(&self, j: usize) -> usize {
        self.m[j - 1]
    }

    /// `m(i) = m(j)` whenever `i < j` with `i` non-minimal. The product
    /// rules of the `B` basis of the row-balanced algebra need this.
    pub fn is_compatible(&self, p: &Poset) -> bool {
        p.relations().iter().all(|&(i, j)| p.is_minimal(i) || self.m(i) == self.m(j))
    }

    pub fn validate(&self, p: &Poset) -> bool {
        self.m.len() == p.n()
            && p.elements().all(|j| {
                let i = self.m(j);
                p.min_below(j).contains(&i) && (!p.is_minimal(j) || i == j)
            })
    }
}

/// One generator `h ~_j h'` of the orbit relation, witnessed by `i < j`
/// with `h, h'` both minimal below `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitStep {
    pub from: usize,
    pub to: usize,
    pub via: usize,
}

/// Orbit classes of minimal elements below each non-minimal `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitData {
    classes: BTreeMap<usize, Vec<Vec<usize>>>,
    reps: BTreeMap<usize, Vec<usize>>,
    steps: BTreeMap<usize, Vec<OrbitStep>>,
    marking: Marking,
}

impl OrbitData {
    pub fn new(p: &Poset, mk: &Marking) -> Self {
        let mut classes = BTreeMap::new();
        let mut reps = BTreeMap::new();
        let mut steps = BTreeMap::new();
        for j in p.non_minimal() {
            let mins = p.min_below(j);
            let mut parent: BTreeMap<usize, usize> = mins.iter().map(|&h| (h, h)).collect();
            fn find(parent: &mut BTreeMap<usize, usize>, x: usize) -> usize {
                let px = parent[&x];
                if px == x {
                    return x;
                }
                let r = find(parent, px);
                parent.insert(x, r);
                r
            }
            let mut st = Vec::new();
            for i in p.below(j) {
                let mi = p.min_below(i);
                for a in 0..mi.len() {
                    for b in a + 1..mi.len() {
                        st.push(OrbitStep { from: mi[a], to: mi[b], via: i });
                        let (ra, rb) = (find(&mut parent, mi[a]), find(&mut parent, mi[b]));
                        if ra != rb {
                            let (lo, hi) = (ra.min(rb), ra.max(rb));
                            parent.insert(hi, lo);
                        }
                    }
                }
            }
            let mut cls: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for &h in &mins {
                let r = find(&mut parent, h);
                cls.entry(r).or_default().push(h);
            }
            let cls: Vec<Vec<usize>> = cls.into_values().collect();
            let rep: Vec<usize> = cls.iter().filter(|c| !c.contains(&mk.m(j))).map(|c| c[0]).collect();
            classes.insert(j, cls);
            reps.insert(j, rep);
            steps.insert(j, st);
        }
        OrbitData { classes, reps, steps, marking: mk.clone() }
    }

    /// Classes of minimal elements below `j`, each sorted, sorted by least element.
    pub fn classes(&self, j: usize) -> &[Vec<usize>] {
        self.classes.get(&j).map_or(&[], |v| v.as_slice())
    }

    /// Number of classes below `j`.
    pub fn orb(&self, j: usize) -> usize {
        self.classes(j).len()
    }

    /// Least element of each class not containing `m(j)`.
    pub fn reps(&self, j: usize) -> &[usize] {
        self.reps.get(&j).map_or(&[], |v| v.as_slice())
    }

    pub fn class_of(&self, j: usize, h: usize) -> Option<&Vec<usize>> {
        self.classes(j).iter().find(|c| c.contains(&h))
    }

    /// Representative of the class of `h` below `j`: `m(j)` for the marked
    /// class, the least element otherwise.
    pub fn representative(&self, j: usize, h: usize) -> Option<usize> {
        let c = self.class_of(j, h)?;
        let m = self.marking.m(j);
        Some(if c.contains(&m) { m } else { c[0] })
    }

    /// Shortest chain of generators leading from `a` to `b` below `j`,
    /// preferring smaller witnesses. `None` when `a`, `b` lie in different
    /// classes.
    pub fn chain(&self, j: usize, a: usize, b: usize) -> Option<Vec<OrbitStep>> {
        let steps = self.steps.get(&j)?;
        let mut prev: BTreeMap<usize, OrbitStep> = BTreeMap::new();
        let mut queue = VecDeque::from([a]);
        let mut seen = BTreeSet::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                break;
            }
            let mut nexts: Vec<OrbitStep> = steps
                .iter()
                .filter_map(|s| {
                    if s.from == x {
                        Some(*s)
                    } else if s.to == x {
                        Some(OrbitStep { from: s.to, to: s.from, via: s.via })
                    } else {
                        None
                    }
                })
                .collect();
            nexts.sort_by_key(|s| (s.to, s.via));
            for s in nexts {
                if seen.insert(s.to) {
                    prev.insert(s.to, s);
                    queue.push_back(s.to);
                }
            }
        }
        if !seen.contains(&b) {
            return None;
        }
        let mut out = Vec::new();
        let mut x = b;
        while x != a {
            let s = prev[&x];
            out.push(s);
            x = s.from;
        }
        out.reverse();
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let p = Poset::parse("n=2").unwrap();
        assert!(p.is_antichain());
        let pb = Poset::parse("n=3; 1<3; 2<3").unwrap();
        assert_eq!(pb.minimal(), vec![1, 2]);
        assert_eq!(pb.non_minimal(), vec![3]);
        let pe = Poset::parse("n=5\n1<3 # comment\n2<3;3<4;3<5").unwrap();
        assert_eq!(pe.card_lt(), 8);
        let pj = Poset::parse(r#"{"n":3,"lt":[[1,3],[2,3]]}"#).unwrap();
        assert_eq!(pj, pb);
        assert!(Poset::parse("n=2;2<1").is_err());
        assert!(Poset::parse("n=2;1<3").is_err());
        assert!(Poset::parse("n=2;1<<2").is_err());
        assert!(Poset::parse("1<2").is_err());
    }

    #[test]
    fn relabelling() {
        let (p, map) = Poset::parse_relabel("c<a; b<a").unwrap();
        assert_eq!(p, Poset::parse("n=3;1<3;2<3").unwrap());
        assert_eq!(map, vec!["c", "b", "a"]);
        assert!(Poset::parse_relabel("a<b;b<a").is_err());
    }

    #[test]
    fn markings() {
        let pb = Poset::parse("n=3;1<3;2<3").unwrap();
        assert_eq!(Marking::default_for(&pb).m(3), 1);
        let pc = Poset::parse("n=4;1<3;2<3;2<4").unwrap();
        let mk = Marking::default_for(&pc);
        assert_eq!((mk.m(3), mk.m(4)), (1, 2));
        assert!(Marking::from_pairs(&pc, &[(4, 1)]).is_err());
        let alt = Marking::parse(&pb, "3:2").unwrap();
        assert_eq!(alt.m(3), 2);
        assert!(alt.validate(&pb));
    }

    #[test]
    fn orbit_examples() {
        let pd = Poset::parse("n=4;1<3;2<3;1<4;2<4").unwrap();
        let od = OrbitData::new(&pd, &Marking::default_for(&pd));
        for j in [3, 4] {
            assert_eq!(od.classes(j), &[vec![1], vec![2]]);
            assert_eq!(od.orb(j), 2);
            assert_eq!(od.reps(j), &[2]);
        }
        let pe = Poset::parse("n=5;1<3;2<3;3<4;3<5").unwrap();
        let oe = OrbitData::new(&pe, &Marking::default_for(&pe));
        assert_eq!(oe.orb(4), 1);
        assert!(oe.reps(4).is_empty());
        assert_eq!(oe.reps(3), &[2]);
        assert_eq!(oe.chain(4, 1, 2).unwrap(), vec![OrbitStep { from: 1, to: 2, via: 3 }]);
        let c = Poset::chain(2);
        let oc = OrbitData::new(&c, &Marking::default_for(&c));
        assert_eq!(oc.orb(2), 1);
    }

    #[test]
    fn suspensions() {
        let pb = Poset::parse("n=3;1<3;2<3").unwrap();
        let up = pb.upper_suspension();
        assert_eq!(up.maximal(), vec![4]);
        let low = pb.lower_suspension();
        assert_eq!(low.minimal(), vec![1]);
        assert_eq!(low.card_lt(), 3 + 2);
        assert_eq!(pb.opposite().maximal(), vec![2, 3]);
        assert_eq!(Poset::antichain(3).components().len(), 3);
    }
}
