//! Worked Fourier-transform examples over Sym(3) at the permutation representation.

use gaingraph::galg::{GroupAlgebraElement, GroupMatrix};
use gaingraph::groups::group_from_descriptor;
use gaingraph::reps::permutation_rep;
use gaingraph::{CMatrix, Complex64};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn mat(rows: &[&[Complex64]]) -> CMatrix {
    CMatrix::from_fn(rows.len(), rows.len(), |i, j| rows[i][j])
}

#[test]
fn element_level_example() {
    let s3 = group_from_descriptor("sym:3", None).unwrap();
    let e = |n: &str| s3.by_name(n).unwrap();
    let f = GroupAlgebraElement::from_terms(
        &s3,
        [
            (e("1"), c(1.0, 0.0)),
            (e("(12)"), c(0.0, 1.0)),
            (e("(13)"), c(1.0, 1.0)),
            (e("(23)"), c(0.0, 2.0)),
            (e("(123)"), c(0.0, -1.0)),
            (e("(132)"), c(-1.0, 0.0)),
        ],
    );
    let rho = permutation_rep(3).unwrap();
    let expect = mat(&[
        &[c(1.0, 2.0), c(-1.0, 1.0), c(1.0, 0.0)],
        &[c(0.0, 0.0), c(2.0, 1.0), c(-1.0, 2.0)],
        &[c(0.0, 1.0), c(0.0, 1.0), c(1.0, 1.0)],
    ]);
    assert_eq!(f.fourier(&rho).unwrap(), expect);
}

#[test]
fn matrix_level_example() {
    let s3 = group_from_descriptor("sym:3", None).unwrap();
    let z = c(0.0, 0.0);
    let m2 = |a, b, cc, d| CMatrix::from_row_slice(2, 2, &[a, b, cc, d]);
    // slices in element order 1, (12), (13), (23), (123), (132)
    let named = [
        ("1", m2(c(1.0, 0.0), z, z, c(0.0, 1.0))),
        ("(12)", m2(z, c(0.0, -1.0), c(1.0, 0.0), c(0.0, 1.0))),
        ("(13)", m2(c(0.0, 2.0), z, z, c(1.0, 0.0))),
        ("(23)", m2(z, z, z, z)),
        ("(123)", m2(c(0.0, -1.0), z, c(2.0, 0.0), c(0.0, 3.0))),
        ("(132)", m2(c(0.0, 1.0), c(-1.0, 0.0), z, c(1.0, 0.0))),
    ];
    let mut slices = vec![CMatrix::zeros(2, 2); 6];
    for (name, m) in named {
        slices[s3.by_name(name).unwrap().index()] = m;
    }
    let f = GroupMatrix::from_slices(&s3, &slices).unwrap();
    assert_eq!(f.get(0, 1).to_string(), "-i*(12) + -(132)");
    assert_eq!(f.get(1, 0).to_string(), "(12) + 2*(123)");

    let rho = permutation_rep(3).unwrap();
    let (o, i) = (c(1.0, 0.0), c(0.0, 1.0));
    let expect = mat(&[
        &[o, i, i, z, c(-1.0, -1.0), z],
        &[-i, c(1.0, 2.0), i, -i, z, -o],
        &[c(0.0, 3.0), -i, o, -o, z, -i],
        &[z, o, c(2.0, 0.0), i, c(1.0, 1.0), c(1.0, 3.0)],
        &[c(3.0, 0.0), z, z, c(0.0, 4.0), c(1.0, 1.0), o],
        &[z, c(2.0, 0.0), o, c(2.0, 0.0), c(0.0, 3.0), c(0.0, 2.0)],
    ]);
    assert_eq!(f.fourier(&rho).unwrap(), expect);
}
