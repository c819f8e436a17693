mod common;

use common::*;
use gaingraph::circulant::{conjugate_by_permutation, detect, perfect_shuffle, GBlockCirculant};
use gaingraph::cover::cover_graph;
use gaingraph::reps::{irreducible_system, regular_rep};
use gaingraph::spectra::TAU_SPEC;
use rand::Rng;

const ALL: &[&str] = &[
    "cyclic:2",
    "cyclic:3",
    "cyclic:5",
    "cyclic:8",
    "klein",
    "sym:3",
    "quaternion",
    "dihedral:3",
    "dihedral:4",
];

#[test]
fn detect_inverts_assemble() {
    let mut r = rng(51);
    for desc in ALL {
        let g = group(desc);
        for n in 1..=3 {
            let blocks = (0..g.order()).map(|_| random_cmatrix(&mut r, n)).collect();
            let c = GBlockCirculant::new(&g, blocks).unwrap();
            assert_eq!(detect(&c.assemble(), &g, n, 0.0).unwrap(), Some(c));
        }
    }
}

#[test]
fn shuffle_exchanges_kronecker_order() {
    let mut r = rng(52);
    for desc in ALL {
        let g = group(desc);
        let n = r.gen_range(1..=3);
        let blocks = (0..g.order())
            .map(|_| random_int_cmatrix(&mut r, n))
            .collect();
        let c = GBlockCirculant::new(&g, blocks).unwrap();
        let lambda = regular_rep(&g).unwrap();
        let p = perfect_shuffle(n, g.order());
        assert_eq!(
            conjugate_by_permutation(&c.assemble(), &p),
            c.fourier(&lambda).unwrap()
        );
    }
}

#[test]
fn union_of_pieces_is_the_spectrum() {
    let mut r = rng(53);
    for (round, desc) in ALL.iter().cycle().take(27).enumerate() {
        let g = group(desc);
        let n = 1 + round % 3;
        let blocks = (0..g.order()).map(|_| random_cmatrix(&mut r, n)).collect();
        let c = GBlockCirculant::new(&g, blocks).unwrap();
        let s = c
            .spectrum_decompose(&irreducible_system(&g).unwrap())
            .unwrap();
        assert_eq!(s.union().len(), n * g.order());
        assert!(s.union_gap < TAU_SPEC, "{desc} n={n} gap {}", s.union_gap);
    }
}

#[test]
fn shuffled_cover_is_block_circulant() {
    let mut r = rng(54);
    for desc in GROUPS {
        let g = group(desc);
        let gg = random_gain_graph(&mut r, &g, 4, 0.6);
        let cover = cover_graph(&gg).adjacency();
        // inverse shuffle turns the Kronecker order (vertex, element) into (element, vertex)
        let p = perfect_shuffle(g.order(), 4);
        let m = conjugate_by_permutation(&cover, &p);
        let c = detect(&m, &g, 4, 0.0).unwrap().expect("block circulant");
        for x in g.elements() {
            let a = gg.adjacency().slice(x);
            assert_eq!(c.blocks()[x.index()], a);
        }
    }
}
