mod common;

use common::*;
use gaingraph::galg::{direct_sum_shuffle, permute_symmetric, GroupAlgebraElement, GroupMatrix};
use gaingraph::groups::Group;
use gaingraph::reps::{direct_sum, irreducible_system, regular_rep, Representation};
use gaingraph::Complex64;
use rand::Rng;

fn random_element_of_algebra(r: &mut impl Rng, g: &Group) -> GroupAlgebraElement {
    let mut terms = Vec::new();
    for x in g.elements() {
        if r.gen_bool(0.5) {
            terms.push((
                x,
                Complex64::new(r.gen_range(-3..=3) as f64, r.gen_range(-3..=3) as f64),
            ));
        }
    }
    GroupAlgebraElement::from_terms(g, terms)
}

fn random_group_matrix(r: &mut impl Rng, g: &Group, n: usize) -> GroupMatrix {
    GroupMatrix::from_fn(g, n, |_, _| random_element_of_algebra(r, g)).unwrap()
}

fn reps_of(g: &Group) -> Vec<Representation> {
    let mut reps: Vec<_> = irreducible_system(g).unwrap().reps().to_vec();
    reps.push(regular_rep(g).unwrap());
    reps
}

#[test]
fn transform_is_multiplicative() {
    let mut r = rng(31);
    for desc in ["cyclic:4", "klein", "sym:3", "quaternion"] {
        let g = group(desc);
        for rep in reps_of(&g) {
            let f = random_element_of_algebra(&mut r, &g);
            let h = random_element_of_algebra(&mut r, &g);
            let lhs = f.convolve(&h).unwrap().fourier(&rep).unwrap();
            let rhs = f.fourier(&rep).unwrap() * h.fourier(&rep).unwrap();
            assert!((lhs - rhs).norm() < 1e-10, "{desc} {}", rep.name());

            let a = random_group_matrix(&mut r, &g, 3);
            let b = random_group_matrix(&mut r, &g, 3);
            let lhs = a.mul(&b).unwrap().fourier(&rep).unwrap();
            let rhs = a.fourier(&rep).unwrap() * b.fourier(&rep).unwrap();
            assert!((lhs - rhs).norm() < 1e-9, "{desc} {}", rep.name());
        }
    }
}

#[test]
fn transform_respects_star_at_unitary_reps() {
    let mut r = rng(32);
    for desc in ["cyclic:5", "sym:3", "quaternion", "dihedral:4"] {
        let g = group(desc);
        for rep in reps_of(&g) {
            assert!(rep.is_unitary());
            let f = random_element_of_algebra(&mut r, &g);
            let diff = f.star().fourier(&rep).unwrap() - f.fourier(&rep).unwrap().adjoint();
            assert!(diff.norm() < 1e-12);
            let a = random_group_matrix(&mut r, &g, 2);
            let diff = a.star().fourier(&rep).unwrap() - a.fourier(&rep).unwrap().adjoint();
            assert!(diff.norm() < 1e-12);
        }
    }
}

#[test]
fn direct_sum_splits_after_shuffle() {
    let mut r = rng(33);
    for desc in ["sym:3", "quaternion", "klein"] {
        let g = group(desc);
        let sys = irreducible_system(&g).unwrap();
        let (p, q) = (&sys.reps()[1], &sys.reps()[sys.len() - 1]);
        let sum = direct_sum(p, q).unwrap();
        let n = 3;
        let f = random_group_matrix(&mut r, &g, n);
        let big = f.fourier(&sum).unwrap();
        let shuffled = permute_symmetric(&big, &direct_sum_shuffle(n, p.degree(), q.degree()));
        let (d1, d2) = (n * p.degree(), n * q.degree());
        assert_eq!(
            shuffled.view((0, 0), (d1, d1)).into_owned(),
            f.fourier(p).unwrap()
        );
        assert_eq!(
            shuffled.view((d1, d1), (d2, d2)).into_owned(),
            f.fourier(q).unwrap()
        );
        assert!(shuffled
            .view((0, d1), (d1, d2))
            .iter()
            .all(|z| *z == Complex64::new(0.0, 0.0)));
    }
}

#[test]
fn transform_is_additive_and_blockwise() {
    let mut r = rng(34);
    let g = group("dihedral:5");
    let sys = irreducible_system(&g).unwrap();
    let rep = &sys.reps()[2];
    let a = random_group_matrix(&mut r, &g, 3);
    let b = random_group_matrix(&mut r, &g, 3);
    let lhs = a.add(&b).unwrap().fourier(rep).unwrap();
    let rhs = a.fourier(rep).unwrap() + b.fourier(rep).unwrap();
    assert!((lhs - rhs).norm() < 1e-12);
    let full = a.fourier(rep).unwrap();
    let d = rep.degree();
    for i in 0..3 {
        for j in 0..3 {
            let block = full.view((i * d, j * d), (d, d)).into_owned();
            assert_eq!(block, a.get(i, j).fourier(rep).unwrap());
        }
    }
}
