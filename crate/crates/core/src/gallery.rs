//! The example gallery: four small posets with their Hasse diagram, right
//! quiver and left quiver, plus two anti-chains and a chain. Rendered DOT is
//! compared against the committed fixtures.

use crate::error::Result;
use crate::field::Q;
use crate::poset::{Marking, OrbitData, Poset};
use crate::quiver::{hasse_presentation, left_quiver, right_quiver};

pub struct Example {
    pub name: &'static str,
    pub poset: Poset,
}

pub fn examples() -> Vec<Example> {
    let rel = |n, r: &[(usize, usize)]| Poset::from_relations(n, r).expect("gallery poset");
    vec![
        Example { name: "p_b", poset: rel(3, &[(1, 3), (2, 3)]) },
        Example { name: "p_c", poset: rel(4, &[(1, 3), (2, 3), (2, 4)]) },
        Example { name: "p_d", poset: rel(4, &[(1, 3), (2, 3), (1, 4), (2, 4)]) },
        Example { name: "p_e", poset: rel(5, &[(1, 3), (2, 3), (3, 4), (3, 5)]) },
        Example { name: "antichain2", poset: Poset::antichain(2) },
        Example { name: "antichain3", poset: Poset::antichain(3) },
        Example { name: "chain3", poset: Poset::chain(3) },
    ]
}

pub fn find(name: &str) -> Option<Example> {
    examples().into_iter().find(|e| e.name == name)
}

/// Hasse diagram, right quiver and left quiver (default marking) as DOT.
pub fn render(p: &Poset) -> Result<String> {
    let mk = Marking::default_for(p);
    let od = OrbitData::new(p, &mk);
    let mut out = String::new();
    out.push_str(&hasse_presentation::<Q>(p)?.quiver.to_dot());
    out.push_str(&right_quiver::<Q>(p)?.quiver.to_dot());
    out.push_str(&left_quiver::<Q>(p, &mk, &od)?.quiver.to_dot());
    Ok(out)
}

/// Committed renderings, one file per example.
pub const FIXTURES: &[(&str, &str)] = &[
    ("p_b", include_str!("../fixtures/p_b.dot")),
    ("p_c", include_str!("../fixtures/p_c.dot")),
    ("p_d", include_str!("../fixtures/p_d.dot")),
    ("p_e", include_str!("../fixtures/p_e.dot")),
    ("antichain2", include_str!("../fixtures/antichain2.dot")),
    ("antichain3", include_str!("../fixtures/antichain3.dot")),
    ("chain3", include_str!("../fixtures/chain3.dot")),
];

pub fn fixture(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Names of the examples whose rendering differs from the fixture.
pub fn mismatches() -> Result<Vec<&'static str>> {
    let mut bad = Vec::new();
    for e in examples() {
        if fixture(e.name) != Some(render(&e.poset)?.as_str()) {
            bad.push(e.name);
        }
    }
    Ok(bad)
}
