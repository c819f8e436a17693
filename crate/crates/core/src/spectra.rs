//! Eigenvalues and tolerance-aware spectrum multisets.
//!
//! Hermitian inputs go through `nalgebra`'s symmetric eigensolver (Householder
//! tridiagonalisation and implicit QR). General complex inputs use the native
//! solver below: Householder reduction to Hessenberg form followed by
//! single-shift complex QR iterations with Wilkinson shifts and deflation.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::CMatrix;

/// Default tolerance for spectrum comparison.
pub const TAU_SPEC: f64 = 1e-8;

/// Inputs further than this from Hermitian are rejected by [`eig_hermitian`].
pub const HERMITIAN_TOL: f64 = 1e-12;

const MAX_QR_ITERATIONS_PER_EIGENVALUE: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumKind {
    Real,
    Complex,
}

/// Eigenvalues with multiplicity, sorted by descending real part, then imaginary part.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumMultiset {
    values: Vec<Complex64>,
    kind: SpectrumKind,
}

fn descending(a: &Complex64, b: &Complex64) -> Ordering {
    b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im))
}

impl SpectrumMultiset {
    pub fn real(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        SpectrumMultiset {
            values: values.into_iter().map(|x| Complex64::new(x, 0.0)).collect(),
            kind: SpectrumKind::Real,
        }
    }

    pub fn complex(mut values: Vec<Complex64>) -> Self {
        values.sort_by(descending);
        SpectrumMultiset {
            values,
            kind: SpectrumKind::Complex,
        }
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Real parts, in order.
    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }

    /// `k` copies of every eigenvalue.
    pub fn repeated(&self, k: usize) -> Self {
        let values = self
            .values
            .iter()
            .flat_map(|&z| std::iter::repeat_n(z, k))
            .collect();
        self.rebuild(values)
    }

    fn rebuild(&self, values: Vec<Complex64>) -> Self {
        match self.kind {
            SpectrumKind::Real => Self::real(values.into_iter().map(|z| z.re).collect()),
            SpectrumKind::Complex => Self::complex(values),
        }
    }

    /// Multiset union; real only if every part is real.
    pub fn union<'a, I: IntoIterator<Item = &'a SpectrumMultiset>>(parts: I) -> Self {
        let mut values = Vec::new();
        let mut all_real = true;
        for p in parts {
            all_real &= p.kind == SpectrumKind::Real;
            values.extend_from_slice(&p.values);
        }
        if all_real {
            Self::real(values.into_iter().map(|z| z.re).collect())
        } else {
            Self::complex(values)
        }
    }

    /// Largest-modulus eigenvalue's modulus.
    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn sum(&self) -> Complex64 {
        self.values.iter().sum()
    }
}

impl fmt::Display for SpectrumMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|z| match self.kind {
                SpectrumKind::Real => format!("{:.6}", z.re),
                SpectrumKind::Complex => format!("{:.6}{:+.6}i", z.re, z.im),
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `max |M - M*|`.
pub fn hermitian_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Real eigenvalues of a Hermitian matrix, descending.
pub fn eig_hermitian(m: &CMatrix) -> Result<SpectrumMultiset> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "{}x{} matrix is not square",
            m.nrows(),
            m.ncols()
        )));
    }
    let defect = hermitian_defect(m);
    if defect >= HERMITIAN_TOL {
        return Err(Error::Precondition(format!(
            "matrix is not Hermitian (max |M - M*| = {defect:e})"
        )));
    }
    if m.nrows() == 0 {
        return Ok(SpectrumMultiset::real(Vec::new()));
    }
    let sym = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = nalgebra::SymmetricEigen::try_new(sym, f64::EPSILON, 0)
        .ok_or_else(|| Error::Numerical("Hermitian eigensolver did not converge".into()))?;
    Ok(SpectrumMultiset::real(
        eig.eigenvalues.iter().copied().collect(),
    ))
}

/// Complex eigenvalues of a general square matrix.
pub fn eig_general(m: &CMatrix) -> Result<SpectrumMultiset> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "{}x{} matrix is not square",
            m.nrows(),
            m.ncols()
        )));
    }
    let mut h = m.clone();
    hessenberg_reduce(&mut h);
    let values = hessenberg_qr_eigenvalues(h)?;
    Ok(SpectrumMultiset::complex(values))
}

/// Eigenvalues via the Hermitian path when `m` is Hermitian, else the general path.
pub fn eig_auto(m: &CMatrix) -> Result<SpectrumMultiset> {
    if m.is_square() && hermitian_defect(m) < HERMITIAN_TOL {
        eig_hermitian(m)
    } else {
        eig_general(m)
    }
}

/// In-place unitary similarity to upper Hessenberg form.
fn hessenberg_reduce(h: &mut CMatrix) {
    let n = h.nrows();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let norm: f64 = (k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= vnorm;
        }
        // H <- (I - 2vv*) H
        for j in 0..n {
            let dot: Complex64 = v
                .iter()
                .enumerate()
                .map(|(a, vi)| vi.conj() * h[(k + 1 + a, j)])
                .sum();
            for (a, vi) in v.iter().enumerate() {
                h[(k + 1 + a, j)] -= *vi * dot * 2.0;
            }
        }
        // H <- H (I - 2vv*)
        for i in 0..n {
            let dot: Complex64 = v
                .iter()
                .enumerate()
                .map(|(a, vi)| h[(i, k + 1 + a)] * vi)
                .sum();
            for (a, vi) in v.iter().enumerate() {
                h[(i, k + 1 + a)] -= dot * vi.conj() * 2.0;
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

/// `(c, s)` with `[[c, s], [-conj(s), c]] · (a, b)ᵀ = (r, 0)ᵀ`, `c` real.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let (na, nb) = (a.norm(), b.norm());
    if nb == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if na == 0.0 {
        return (0.0, b.conj() / nb);
    }
    let nu = na.hypot(nb);
    (na / nu, (a / na) * b.conj() / nu)
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let (l1, l2) = (mid + disc, mid - disc);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn hessenberg_qr_eigenvalues(mut h: CMatrix) -> Result<Vec<Complex64>> {
    let n = h.nrows();
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return Ok(out);
    }
    let scale = h.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut hi = n - 1;
    let mut iterations = 0usize;
    let mut since_deflation = 0usize;
    loop {
        // locate the start of the active unreduced block
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let diag = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            let reference = if diag == 0.0 { scale } else { diag };
            if sub <= f64::EPSILON * reference || sub < f64::MIN_POSITIVE {
                h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            out.push(h[(hi, hi)]);
            since_deflation = 0;
            if hi == 0 {
                break;
            }
            hi -= 1;
            continue;
        }
        iterations += 1;
        since_deflation += 1;
        if since_deflation > MAX_QR_ITERATIONS_PER_EIGENVALUE {
            return Err(Error::Numerical(format!(
                "QR iteration did not converge ({} of {n} eigenvalues found after {iterations} sweeps)",
                out.len()
            )));
        }
        let mu = if since_deflation.is_multiple_of(11) {
            // exceptional shift to break cycles
            h[(hi, hi)] + Complex64::new(h[(hi, hi - 1)].norm() * 0.75, 0.0)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        qr_step(&mut h, lo, hi, mu);
    }
    Ok(out)
}

/// One shifted QR step `H - μI = QR, H <- RQ + μI` on the window `lo..=hi`.
fn qr_step(h: &mut CMatrix, lo: usize, hi: usize, mu: Complex64) {
    for i in lo..=hi {
        h[(i, i)] -= mu;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        for j in k..=hi {
            let (x, y) = (h[(k, j)], h[(k + 1, j)]);
            h[(k, j)] = x * c + s * y;
            h[(k + 1, j)] = -s.conj() * x + y * c;
        }
        rotations.push((c, s));
    }
    for (offset, &(c, s)) in rotations.iter().enumerate() {
        let k = lo + offset;
        for i in lo..=(k + 1).min(hi) {
            let (x, y) = (h[(i, k)], h[(i, k + 1)]);
            h[(i, k)] = x * c + y * s.conj();
            h[(i, k + 1)] = -x * s + y * c;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += mu;
    }
}

/// Outcome of a multiset comparison.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Comparison {
    pub equal: bool,
    /// Largest distance between paired eigenvalues (infinite on length mismatch
    /// or when no pairing within tolerance exists).
    pub gap: f64,
}

/// Tolerance-aware multiset equality.
///
/// Real spectra are paired in sorted order. Otherwise a perfect matching in
/// the graph of pairs within `tol` is searched for.
pub fn multiset_equal(a: &SpectrumMultiset, b: &SpectrumMultiset, tol: f64) -> Comparison {
    if a.len() != b.len() {
        return Comparison {
            equal: false,
            gap: f64::INFINITY,
        };
    }
    if a.kind == SpectrumKind::Real && b.kind == SpectrumKind::Real {
        let gap = a
            .values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| (x.re - y.re).abs())
            .fold(0.0, f64::max);
        return Comparison {
            equal: gap <= tol,
            gap,
        };
    }
    match tolerance_matching(&a.values, &b.values, tol) {
        Some(pairs) => Comparison {
            equal: true,
            gap: pairs
                .iter()
                .enumerate()
                .map(|(i, &j)| (a.values[i] - b.values[j]).norm())
                .fold(0.0, f64::max),
        },
        None => Comparison {
            equal: false,
            gap: f64::INFINITY,
        },
    }
}

/// Perfect matching `i -> pairs[i]` with `|a_i - b_j| <= tol`, by augmenting paths.
fn tolerance_matching(a: &[Complex64], b: &[Complex64], tol: f64) -> Option<Vec<usize>> {
    let n = a.len();
    let adj: Vec<Vec<usize>> = a
        .iter()
        .map(|x| {
            let mut js: Vec<usize> = (0..n).filter(|&j| (x - b[j]).norm() <= tol).collect();
            js.sort_by(|&p, &q| (x - b[p]).norm().total_cmp(&(x - b[q]).norm()));
            js
        })
        .collect();
    let mut match_b: Vec<Option<usize>> = vec![None; n];

    fn augment(
        i: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        match_b: &mut [Option<usize>],
    ) -> bool {
        for &j in &adj[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if match_b[j].is_none_or(|k| augment(k, adj, seen, match_b)) {
                match_b[j] = Some(i);
                return true;
            }
        }
        false
    }

    for i in 0..n {
        let mut seen = vec![false; n];
        if !augment(i, &adj, &mut seen, &mut match_b) {
            return None;
        }
    }
    let mut pairs = vec![0; n];
    for (j, i) in match_b.iter().enumerate() {
        pairs[i.expect("perfect matching")] = j;
    }
    Some(pairs)
}

/// Largest eigenvalue and the number of eigenvalues within `tol` of it.
pub fn index_and_multiplicity(s: &SpectrumMultiset, tol: f64) -> Result<(f64, usize)> {
    if s.kind != SpectrumKind::Real {
        return Err(Error::Precondition("index requires a real spectrum".into()));
    }
    let top = s
        .values
        .first()
        .ok_or_else(|| Error::Precondition("empty spectrum has no index".into()))?
        .re;
    let count = s
        .values
        .iter()
        .filter(|z| (top - z.re).abs() <= tol)
        .count();
    Ok((top, count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(rows: &[&[f64]]) -> CMatrix {
        CMatrix::from_fn(rows.len(), rows[0].len(), |i, j| c(rows[i][j], 0.0))
    }

    #[test]
    fn hermitian_examples() {
        let s = eig_hermitian(&real(&[&[0.0, 1.0], &[1.0, 0.0]])).unwrap();
        assert_eq!(s.kind(), SpectrumKind::Real);
        let v = s.real_values();
        assert!((v[0] - 1.0).abs() < 1e-14 && (v[1] + 1.0).abs() < 1e-14);

        let a = real(&[
            &[0.0, 1.0, 1.0, 1.0],
            &[1.0, 0.0, 1.0, 0.0],
            &[1.0, 1.0, 0.0, 1.0],
            &[1.0, 0.0, 1.0, 0.0],
        ]);
        let r = 17f64.sqrt();
        let expect = SpectrumMultiset::real(vec![(1.0 + r) / 2.0, 0.0, -1.0, (1.0 - r) / 2.0]);
        let cmp = multiset_equal(&eig_hermitian(&a).unwrap(), &expect, 1e-12);
        assert!(cmp.equal, "{cmp:?}");

        let z = eig_hermitian(&CMatrix::zeros(4, 4)).unwrap();
        assert_eq!(z.real_values(), vec![0.0; 4]);
    }

    #[test]
    fn hermitian_rejects_non_hermitian() {
        let m = real(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(eig_hermitian(&m), Err(Error::Precondition(_))));
    }

    #[test]
    fn general_examples() {
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(1.0, 0.0),
            c(0.0, 1.0),
            c(-2.0, 0.0),
        ]));
        let s = eig_general(&d).unwrap();
        let expect = SpectrumMultiset::complex(vec![c(1.0, 0.0), c(0.0, 1.0), c(-2.0, 0.0)]);
        assert!(multiset_equal(&s, &expect, 1e-14).equal);

        let nil = eig_general(&real(&[&[0.0, 1.0], &[0.0, 0.0]])).unwrap();
        assert!(nil.values().iter().all(|z| z.norm() < 1e-12));

        // companion matrix of z^2 - 2z + 2
        let comp = real(&[&[0.0, -2.0], &[1.0, 2.0]]);
        let s = eig_general(&comp).unwrap();
        let expect = SpectrumMultiset::complex(vec![c(1.0, 1.0), c(1.0, -1.0)]);
        let cmp = multiset_equal(&s, &expect, 1e-12);
        assert!(cmp.equal, "{s} {cmp:?}");
    }

    #[test]
    fn general_on_cyclic_shift() {
        // 7-cycle permutation: eigenvalues are 7th roots of unity
        let n = 7;
        let m = CMatrix::from_fn(n, n, |i, j| {
            if i == (j + 1) % n {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let s = eig_general(&m).unwrap();
        let expect = SpectrumMultiset::complex(
            (0..n)
                .map(|k| {
                    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64)
                })
                .collect(),
        );
        let cmp = multiset_equal(&s, &expect, 1e-10);
        assert!(cmp.equal, "{s}");
    }

    #[test]
    fn multiset_examples() {
        let a = SpectrumMultiset::real(vec![1.0, -1.0]);
        let b = SpectrumMultiset::real(vec![-1.0, 1.0]);
        assert_eq!(
            multiset_equal(&a, &b, 1e-8),
            Comparison {
                equal: true,
                gap: 0.0
            }
        );
        let a = SpectrumMultiset::real(vec![1.0]);
        let b = SpectrumMultiset::real(vec![1.0 + 1e-9]);
        assert!(multiset_equal(&a, &b, 1e-8).equal);
        let a = SpectrumMultiset::real(vec![2.0, -1.0, -1.0]);
        let b = SpectrumMultiset::real(vec![2.0, 2.0, -1.0]);
        assert!(!multiset_equal(&a, &b, 1e-8).equal);
        assert!(!multiset_equal(&a, &SpectrumMultiset::real(vec![2.0]), 1e-8).equal);
        // complex matching is order free
        let a = SpectrumMultiset::complex(vec![c(0.0, 1.0), c(0.0, -1.0), c(1e-12, 1.0)]);
        let b = SpectrumMultiset::complex(vec![c(0.0, 1.0), c(0.0, 1.0), c(0.0, -1.0)]);
        assert!(multiset_equal(&a, &b, 1e-8).equal);
    }

    #[test]
    fn index_examples() {
        let s = SpectrumMultiset::real(vec![2.0, 2.0, -1.0, -1.0, -1.0, -1.0]);
        assert_eq!(index_and_multiplicity(&s, 1e-8).unwrap(), (2.0, 2));
        assert_eq!(
            index_and_multiplicity(&SpectrumMultiset::real(vec![0.0]), 1e-8).unwrap(),
            (0.0, 1)
        );
        assert!(index_and_multiplicity(&SpectrumMultiset::real(vec![]), 1e-8).is_err());
    }

    #[test]
    fn union_and_repeat() {
        let a = SpectrumMultiset::real(vec![1.0, 0.0]);
        let b = SpectrumMultiset::real(vec![3.0]);
        assert_eq!(
            SpectrumMultiset::union([&a, &b]).real_values(),
            [3.0, 1.0, 0.0]
        );
        assert_eq!(a.repeated(2).real_values(), [1.0, 1.0, 0.0, 0.0]);
    }

    fn matrix_strategy(max_n: usize) -> impl Strategy<Value = CMatrix> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec((-3i32..=3, -3i32..=3), n * n).prop_map(move |v| {
                CMatrix::from_fn(n, n, |i, j| {
                    let (re, im) = v[i * n + j];
                    c(re as f64, im as f64)
                })
            })
        })
    }

    proptest! {
        #[test]
        fn eigenvalue_sum_is_trace(m in matrix_strategy(9)) {
            let n = m.nrows() as f64;
            let s = eig_general(&m).unwrap();
            let norm = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
            prop_assert!((s.sum() - m.trace()).norm() < 1e-9 * (1.0 + norm * n));
            prop_assert_eq!(s.len(), m.nrows());
        }

        #[test]
        fn hermitian_and_general_agree(m in matrix_strategy(8)) {
            let h = &m + m.adjoint();
            let herm = eig_hermitian(&h).unwrap();
            let gen = eig_general(&h).unwrap();
            let as_real = SpectrumMultiset::real(gen.values().iter().map(|z| z.re).collect());
            prop_assert!(gen.values().iter().all(|z| z.im.abs() < 1e-8));
            let cmp = multiset_equal(&herm, &as_real, 1e-8);
            prop_assert!(cmp.equal, "{:?}", cmp);
            let trace = h.trace().re;
            prop_assert!((herm.sum().re - trace).abs() < 1e-9 * (1.0 + 12.0 * h.nrows() as f64));
        }
    }
}
