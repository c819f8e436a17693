#![allow(dead_code)]

use gaingraph::gain::{GainGraph, SwitchingFunction};
use gaingraph::groups::{group_from_descriptor, Group, GroupElement};
use gaingraph::{CMatrix, Complex64};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const GROUPS: &[&str] = &[
    "cyclic:3",
    "cyclic:4",
    "cyclic:5",
    "cyclic:6",
    "klein",
    "sym:3",
    "quaternion",
];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn group(desc: &str) -> Group {
    group_from_descriptor(desc, None).unwrap()
}

pub fn random_element(rng: &mut impl Rng, g: &Group) -> GroupElement {
    g.element(rng.gen_range(0..g.order())).unwrap()
}

/// Erdős–Rényi underlying graph with uniform gains.
pub fn random_gain_graph(rng: &mut impl Rng, g: &Group, n: usize, p: f64) -> GainGraph {
    let mut gg = GainGraph::new(g, n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                let x = random_element(rng, g);
                gg.add_edge(u, v, x).unwrap();
            }
        }
    }
    gg
}

pub fn random_switching(rng: &mut impl Rng, g: &Group, n: usize) -> SwitchingFunction {
    SwitchingFunction::new((0..n).map(|_| random_element(rng, g)).collect())
}

/// Trivial gain switched by a random function: balanced by construction.
pub fn random_balanced(rng: &mut impl Rng, g: &Group, n: usize, p: f64) -> GainGraph {
    let base = random_gain_graph(rng, g, n, p).with_trivial_gains();
    let f = random_switching(rng, g, n);
    base.switch(&f).unwrap()
}

/// Replaces the gain of one edge by a different element.
pub fn perturb_one_edge(rng: &mut impl Rng, gg: &GainGraph) -> GainGraph {
    let edges: Vec<_> = gg.edges().collect();
    if edges.is_empty() {
        return gg.clone();
    }
    let g = gg.group();
    let pick = rng.gen_range(0..edges.len());
    let mut out = GainGraph::new(g, gg.vertex_count());
    for (i, &(u, v, x)) in edges.iter().enumerate() {
        let x = if i == pick {
            let shift = g.element(rng.gen_range(1..g.order())).unwrap();
            g.mul(x, shift)
        } else {
            x
        };
        out.add_edge(u, v, x).unwrap();
    }
    out
}

pub fn random_cmatrix(rng: &mut impl Rng, n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

/// Small Gaussian-integer matrix, so products stay exact.
pub fn random_int_cmatrix(rng: &mut impl Rng, n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.gen_range(-3..=3) as f64, rng.gen_range(-3..=3) as f64)
    })
}
