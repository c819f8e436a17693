//! Finite-degree complex representations and irreducible systems.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::groups::{build_group, same_group, Group, GroupElement, GroupSpec};
use crate::CMatrix;

/// Absolute entrywise tolerance for homomorphism, unitarity and kernel checks.
pub const TAU_REP: f64 = 1e-10;

/// Regular representations are dense; groups above this order are refused.
pub const MAX_REGULAR_ORDER: usize = 128;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `exp(2πi·m/k)`, exact at multiples of a quarter turn.
pub fn root_of_unity(m: usize, k: usize) -> Complex64 {
    let m = m % k;
    if (4 * m).is_multiple_of(k) {
        return match 4 * m / k {
            0 => ONE,
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, 2.0 * PI * m as f64 / k as f64)
}

fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// A group homomorphism `G -> GL_d(C)` stored as one matrix per element.
#[derive(Clone, Debug)]
pub struct Representation {
    group: Group,
    name: String,
    degree: usize,
    matrices: Vec<CMatrix>,
    character: Vec<Complex64>,
    unitary: bool,
    kernel: Vec<GroupElement>,
}

impl Representation {
    /// Validates and wraps user-supplied matrices (indexed by element).
    pub fn new(group: &Group, name: impl Into<String>, matrices: Vec<CMatrix>) -> Result<Self> {
        let name = name.into();
        if matrices.len() != group.order() {
            return Err(Error::InvalidRepresentation(format!(
                "{name}: {} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let d = matrices[0].nrows();
        if d == 0 || matrices.iter().any(|m| m.nrows() != d || m.ncols() != d) {
            return Err(Error::InvalidRepresentation(format!(
                "{name}: matrices must all be square of the same positive size"
            )));
        }
        if matrices[0] != CMatrix::identity(d, d) {
            return Err(Error::InvalidRepresentation(format!(
                "{name}: the identity must map to I_{d} exactly"
            )));
        }
        let rep = Self::trusted(group, name, matrices);
        if let Some((a, b)) = rep.homomorphism_violation(TAU_REP) {
            return Err(Error::InvalidRepresentation(format!(
                "{}: not a homomorphism at ({}, {})",
                rep.name,
                group.name(a),
                group.name(b)
            )));
        }
        Ok(rep)
    }

    /// Wraps matrices known to form a representation.
    pub(crate) fn trusted(group: &Group, name: impl Into<String>, matrices: Vec<CMatrix>) -> Self {
        let degree = matrices[0].nrows();
        let character = matrices.iter().map(|m| m.trace()).collect();
        let id = CMatrix::identity(degree, degree);
        let unitary = matrices
            .iter()
            .all(|m| max_abs_diff(&(m * m.adjoint()), &id) < TAU_REP);
        let kernel = group
            .elements()
            .filter(|g| max_abs_diff(&matrices[g.index()], &id) < TAU_REP)
            .collect();
        Representation {
            group: group.clone(),
            name: name.into(),
            degree,
            matrices,
            character,
            unitary,
            kernel,
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn matrix(&self, g: GroupElement) -> &CMatrix {
        &self.matrices[g.index()]
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    /// `χ(g) = Tr π(g)`, indexed by element.
    pub fn character(&self) -> &[Complex64] {
        &self.character
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel.len() == 1
    }

    /// Elements `g` with `π(g)` within [`TAU_REP`] of the identity.
    pub fn kernel(&self) -> &[GroupElement] {
        &self.kernel
    }

    /// First pair `(a, b)` with `π(ab) != π(a)π(b)` beyond `tol`.
    pub fn homomorphism_violation(&self, tol: f64) -> Option<(GroupElement, GroupElement)> {
        let g = &self.group;
        for a in g.elements() {
            for b in g.elements() {
                let prod = &self.matrices[a.index()] * &self.matrices[b.index()];
                if max_abs_diff(&prod, &self.matrices[g.mul(a, b).index()]) > tol {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

pub fn trivial_rep(group: &Group) -> Representation {
    let m = CMatrix::identity(1, 1);
    Representation::trusted(group, "trivial", vec![m; group.order()])
}

/// Left regular representation: `λ(g)[r][p] = 1` iff `g = g_r g_p⁻¹`.
pub fn regular_rep(group: &Group) -> Result<Representation> {
    let k = group.order();
    if k > MAX_REGULAR_ORDER {
        return Err(Error::Precondition(format!(
            "regular representation of a group of order {k} exceeds the limit {MAX_REGULAR_ORDER}"
        )));
    }
    let matrices = group
        .elements()
        .map(|g| {
            let mut m = CMatrix::zeros(k, k);
            for p in group.elements() {
                m[(group.mul(g, p).index(), p.index())] = ONE;
            }
            m
        })
        .collect();
    Ok(Representation::trusted(group, "regular", matrices))
}

/// Permutation representation `e_i ↦ e_{τ(i)}` of a `sym:N` group.
pub fn permutation_rep_of(group: &Group) -> Result<Representation> {
    let n = match group.spec() {
        GroupSpec::Symmetric(n) if *n >= 2 => *n,
        _ => {
            return Err(Error::Precondition(format!(
                "permutation representation needs sym:N with N >= 2, got {}",
                group.descriptor()
            )))
        }
    };
    let matrices = group
        .elements()
        .map(|g| {
            let perm = group
                .permutation(g)
                .expect("symmetric group carries permutations");
            let mut m = CMatrix::zeros(n, n);
            for (i, &image) in perm.iter().enumerate() {
                m[(image, i)] = ONE;
            }
            m
        })
        .collect();
    Ok(Representation::trusted(group, "perm", matrices))
}

/// Permutation representation of `Sym(n)` for `2 <= n <= 8`.
pub fn permutation_rep(n: usize) -> Result<Representation> {
    if !(2..=crate::groups::MAX_SYMMETRIC_DEGREE).contains(&n) {
        return Err(Error::Precondition(format!(
            "permutation representation needs 2 <= n <= 8, got {n}"
        )));
    }
    permutation_rep_of(&build_group(&GroupSpec::Symmetric(n))?)
}

/// Degree-1 representation `g^l ↦ exp(2πil/k)` of `cyclic:K`.
pub fn unit_rep(group: &Group) -> Result<Representation> {
    match group.spec() {
        GroupSpec::Cyclic(k) => Ok(character_rep(group, "unit", |g| {
            root_of_unity(g.index(), *k)
        })),
        _ => Err(Error::Precondition(format!(
            "the unit representation is defined for cyclic groups, got {}",
            group.descriptor()
        ))),
    }
}

pub fn direct_sum(a: &Representation, b: &Representation) -> Result<Representation> {
    if !same_group(&a.group, &b.group) {
        return Err(Error::GroupMismatch(format!(
            "direct sum of representations over {} and {}",
            a.group.descriptor(),
            b.group.descriptor()
        )));
    }
    let (d1, d2) = (a.degree, b.degree);
    let matrices = a
        .matrices
        .iter()
        .zip(&b.matrices)
        .map(|(x, y)| {
            let mut m = CMatrix::zeros(d1 + d2, d1 + d2);
            m.view_mut((0, 0), (d1, d1)).copy_from(x);
            m.view_mut((d1, d1), (d2, d2)).copy_from(y);
            m
        })
        .collect();
    Ok(Representation::trusted(
        &a.group,
        format!("{}+{}", a.name, b.name),
        matrices,
    ))
}

fn character_rep(
    group: &Group,
    name: impl Into<String>,
    value: impl Fn(GroupElement) -> Complex64,
) -> Representation {
    let matrices = group
        .elements()
        .map(|g| CMatrix::from_element(1, 1, value(g)))
        .collect();
    Representation::trusted(group, name, matrices)
}

/// A complete system of pairwise inequivalent unitary irreducibles, trivial first.
#[derive(Clone, Debug)]
pub struct IrreducibleSystem {
    group: Group,
    reps: Vec<Representation>,
}

impl IrreducibleSystem {
    /// Checks class count, the degree-square sum and character orthonormality.
    pub fn new(group: &Group, reps: Vec<Representation>) -> Result<Self> {
        let k = group.order();
        let classes = group.conjugacy_classes().len();
        if reps.len() != classes {
            return Err(Error::InvalidRepresentation(format!(
                "{} irreducibles for {classes} conjugacy classes",
                reps.len()
            )));
        }
        if let Some(r) = reps.iter().find(|r| !same_group(r.group(), group)) {
            return Err(Error::GroupMismatch(format!(
                "{} is over another group",
                r.name()
            )));
        }
        let squares: usize = reps.iter().map(|r| r.degree * r.degree).sum();
        if squares != k {
            return Err(Error::InvalidRepresentation(format!(
                "sum of squared degrees {squares} != |G| = {k}"
            )));
        }
        for (i, a) in reps.iter().enumerate() {
            for (j, b) in reps.iter().enumerate() {
                let ip = character_inner(a.character(), b.character());
                let expected = if i == j { 1.0 } else { 0.0 };
                if (ip - expected).norm() > 1e-9 {
                    return Err(Error::InvalidRepresentation(format!(
                        "characters of {} and {} are not orthonormal",
                        a.name(),
                        b.name()
                    )));
                }
            }
        }
        Ok(IrreducibleSystem {
            group: group.clone(),
            reps,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn reps(&self) -> &[Representation] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Representation> {
        self.reps.get(i)
    }
}

/// `⟨χ, ψ⟩ = (1/|G|) Σ_g χ(g) conj(ψ(g))`.
pub fn character_inner(chi: &[Complex64], psi: &[Complex64]) -> Complex64 {
    let sum: Complex64 = chi.iter().zip(psi).map(|(a, b)| a * b.conj()).sum();
    sum / chi.len() as f64
}

/// Complete unitary irreducible system for the built-in families.
///
/// Supported: cyclic, klein, quaternion, dihedral, `sym:N` with `N <= 4`, and
/// products of supported groups (outer tensor products).
pub fn irreducible_system(group: &Group) -> Result<IrreducibleSystem> {
    let reps = irreducibles(group)?;
    IrreducibleSystem::new(group, reps)
}

fn irreducibles(group: &Group) -> Result<Vec<Representation>> {
    let spec = group.spec().clone();
    let reps = match &spec {
        GroupSpec::Cyclic(k) => (0..*k)
            .map(|l| {
                let name = if l == 0 {
                    "trivial".to_string()
                } else {
                    format!("chi{l}")
                };
                character_rep(group, name, |g| root_of_unity(l * g.index(), *k))
            })
            .collect(),
        GroupSpec::Klein => {
            // values on (a, b); c = ab
            [
                ("trivial", 1.0, 1.0),
                ("pi1", -1.0, 1.0),
                ("pi2", -1.0, -1.0),
                ("pi3", 1.0, -1.0),
            ]
            .into_iter()
            .map(|(name, a, b)| {
                character_rep(group, name, |g| {
                    let v = match g.index() {
                        0 => 1.0,
                        1 => a,
                        2 => b,
                        _ => a * b,
                    };
                    Complex64::new(v, 0.0)
                })
            })
            .collect()
        }
        GroupSpec::Quaternion => quaternion_irreducibles(group),
        GroupSpec::Dihedral(k) => dihedral_irreducibles(group, *k),
        GroupSpec::Symmetric(n) if *n <= 4 => symmetric_irreducibles(group, *n),
        GroupSpec::Product(left, right) => {
            let a = build_group(left)?;
            let b = build_group(right)?;
            let ra = irreducibles(&a)?;
            let rb = irreducibles(&b)?;
            let kb = b.order();
            let mut out = Vec::with_capacity(ra.len() * rb.len());
            for x in &ra {
                for y in &rb {
                    let matrices = group
                        .elements()
                        .map(|g| {
                            let ga = a.element(g.index() / kb).unwrap();
                            let gb = b.element(g.index() % kb).unwrap();
                            x.matrix(ga).kronecker(y.matrix(gb))
                        })
                        .collect();
                    let name = if out.is_empty() {
                        "trivial".to_string()
                    } else {
                        format!("{}*{}", x.name(), y.name())
                    };
                    out.push(Representation::trusted(group, name, matrices));
                }
            }
            out
        }
        _ => return Err(Error::NoIrreducibleSystem(group.descriptor())),
    };
    Ok(reps)
}

fn quaternion_irreducibles(group: &Group) -> Vec<Representation> {
    // element index = 2 * unit + sign with units 1, i, j, k
    let mut reps = vec![trivial_rep(group)];
    for (unit, name) in [(1, "chi_i"), (2, "chi_j"), (3, "chi_k")] {
        reps.push(character_rep(group, name, |g| {
            let u = g.index() / 2;
            Complex64::new(if u == 0 || u == unit { 1.0 } else { -1.0 }, 0.0)
        }));
    }
    let i = Complex64::new(0.0, 1.0);
    let units = [
        CMatrix::identity(2, 2),
        CMatrix::from_row_slice(2, 2, &[ZERO, -ONE, ONE, ZERO]),
        CMatrix::from_row_slice(2, 2, &[ZERO, i, i, ZERO]),
        CMatrix::from_row_slice(2, 2, &[-i, ZERO, ZERO, i]),
    ];
    let matrices = group
        .elements()
        .map(|g| {
            let m = units[g.index() / 2].clone();
            if g.index() % 2 == 1 {
                -m
            } else {
                m
            }
        })
        .collect();
    reps.push(Representation::trusted(group, "pi", matrices));
    reps
}

fn dihedral_irreducibles(group: &Group, k: usize) -> Vec<Representation> {
    // element index = refl * k + a  for  s^refl r^a
    let split = |g: GroupElement| (g.index() / k, g.index() % k);
    let mut ones: Vec<(&str, f64, f64)> = vec![("trivial", 1.0, 1.0), ("sign", 1.0, -1.0)];
    if k.is_multiple_of(2) {
        ones.push(("chi_r", -1.0, 1.0));
        ones.push(("chi_rs", -1.0, -1.0));
    }
    let mut reps: Vec<Representation> = ones
        .into_iter()
        .map(|(name, r, s)| {
            character_rep(group, name, |g| {
                let (refl, a) = split(g);
                Complex64::new(s.powi(refl as i32) * r.powi(a as i32), 0.0)
            })
        })
        .collect();
    let flip = CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
    for h in 1..=(k - 1) / 2 {
        let matrices = group
            .elements()
            .map(|g| {
                let (refl, a) = split(g);
                let rot = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                    root_of_unity(h * a, k),
                    root_of_unity((k - h) * a, k),
                ]));
                if refl == 1 {
                    &flip * rot
                } else {
                    rot
                }
            })
            .collect();
        reps.push(Representation::trusted(group, format!("rho{h}"), matrices));
    }
    reps
}

/// Orthonormal basis of the sum-zero subspace of `C^n` (Helmert vectors).
fn helmert_basis(n: usize) -> CMatrix {
    let mut b = CMatrix::zeros(n, n - 1);
    for j in 1..n {
        let norm = ((j * (j + 1)) as f64).sqrt();
        for i in 0..j {
            b[(i, j - 1)] = Complex64::new(1.0 / norm, 0.0);
        }
        b[(j, j - 1)] = Complex64::new(-(j as f64) / norm, 0.0);
    }
    b
}

/// Restriction of the permutation action to the sum-zero subspace.
fn standard_matrix(perm: &[usize]) -> CMatrix {
    let n = perm.len();
    let b = helmert_basis(n);
    let mut p = CMatrix::zeros(n, n);
    for (i, &image) in perm.iter().enumerate() {
        p[(image, i)] = ONE;
    }
    b.transpose() * p * b
}

fn parity(perm: &[usize]) -> f64 {
    let inversions = (0..perm.len())
        .flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Action of a permutation of `{0,1,2,3}` on the three pairings
/// `{01|23}, {02|13}, {03|12}`, indexed by the partner of 0.
fn pairing_action(perm: &[usize]) -> Vec<usize> {
    (0..3)
        .map(|t| {
            let partner = t + 1;
            let rest: Vec<usize> = (1..4).filter(|&x| x != partner).collect();
            let blocks = [[0, partner], [rest[0], rest[1]]];
            let image = blocks
                .iter()
                .map(|b| [perm[b[0]], perm[b[1]]])
                .find(|b| b.contains(&0))
                .unwrap();
            image[0] + image[1] - 1
        })
        .collect()
}

fn symmetric_irreducibles(group: &Group, n: usize) -> Vec<Representation> {
    let perm = |g: GroupElement| group.permutation(g).unwrap();
    let mut reps = vec![trivial_rep(group)];
    if n == 1 {
        return reps;
    }
    reps.push(character_rep(group, "sign", |g| {
        Complex64::new(parity(perm(g)), 0.0)
    }));
    if n == 4 {
        let matrices = group
            .elements()
            .map(|g| standard_matrix(&pairing_action(perm(g))))
            .collect();
        reps.push(Representation::trusted(group, "two", matrices));
    }
    if n >= 3 {
        let standard: Vec<CMatrix> = group.elements().map(|g| standard_matrix(perm(g))).collect();
        if n == 4 {
            let twisted = group
                .elements()
                .map(|g| &standard[g.index()] * Complex64::new(parity(perm(g)), 0.0))
                .collect();
            reps.push(Representation::trusted(group, "standard", standard));
            reps.push(Representation::trusted(group, "standard*sign", twisted));
        } else {
            reps.push(Representation::trusted(group, "standard", standard));
        }
    }
    reps
}

/// Multiplicities `k_i = ⟨χ_π, χ_{π_i}⟩` of each irreducible in `rep`.
pub fn decompose(rep: &Representation, system: &IrreducibleSystem) -> Result<Vec<usize>> {
    if !same_group(rep.group(), system.group()) {
        return Err(Error::GroupMismatch(format!(
            "{} and the irreducible system are over different groups",
            rep.name()
        )));
    }
    let mut out = Vec::with_capacity(system.len());
    for irr in system.reps() {
        let ip = character_inner(rep.character(), irr.character());
        let k = ip.re.round();
        if k < 0.0 || (ip - k).norm() >= TAU_REP {
            return Err(Error::InvalidRepresentation(format!(
                "character is not a nonnegative integer combination (⟨χ, χ_{}⟩ = {ip})",
                irr.name()
            )));
        }
        out.push(k as usize);
    }
    let total: usize = out
        .iter()
        .zip(system.reps())
        .map(|(k, r)| k * r.degree())
        .sum();
    if total != rep.degree() {
        return Err(Error::InvalidRepresentation(format!(
            "multiplicities account for degree {total}, expected {}",
            rep.degree()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::group_from_descriptor;

    fn grp(d: &str) -> Group {
        group_from_descriptor(d, None).unwrap()
    }

    fn real(rows: &[&[f64]]) -> CMatrix {
        let n = rows.len();
        CMatrix::from_fn(n, rows[0].len(), |i, j| Complex64::new(rows[i][j], 0.0))
    }

    fn by_name(sys: &IrreducibleSystem, name: &str) -> Representation {
        sys.reps()
            .iter()
            .find(|r| r.name() == name)
            .unwrap()
            .clone()
    }

    fn table3(klein: &Group) -> Representation {
        let mats = vec![
            real(&[&[1.0, 0.0], &[0.0, 1.0]]),
            real(&[&[-1.0, 0.0], &[0.0, -1.0]]),
            real(&[&[0.0, 1.0], &[1.0, 0.0]]),
            real(&[&[0.0, -1.0], &[-1.0, 0.0]]),
        ];
        Representation::new(klein, "table3", mats).unwrap()
    }

    #[test]
    fn trivial_flags() {
        let s3 = grp("sym:3");
        let t = trivial_rep(&s3);
        assert!(t.character().iter().all(|&c| c == ONE));
        assert!(t.is_unitary());
        assert!(trivial_rep(&grp("cyclic:1")).is_faithful());
        assert!(!trivial_rep(&grp("quaternion")).is_faithful());
    }

    #[test]
    fn regular_rep_entries() {
        let c2 = grp("cyclic:2");
        let lam = regular_rep(&c2).unwrap();
        assert_eq!(
            lam.matrix(c2.element(1).unwrap()),
            &real(&[&[0.0, 1.0], &[1.0, 0.0]])
        );
        let klein = grp("klein");
        let lam = regular_rep(&klein).unwrap();
        for a in klein.elements() {
            for r in klein.elements() {
                for p in klein.elements() {
                    let expect = if a == klein.mul(r, klein.inv(p)) {
                        ONE
                    } else {
                        ZERO
                    };
                    assert_eq!(lam.matrix(a)[(r.index(), p.index())], expect);
                }
            }
        }
        assert!(lam.is_faithful() && lam.is_unitary());
        assert_eq!(lam.character()[0], Complex64::new(4.0, 0.0));
        assert!(lam.character()[1..].iter().all(|c| *c == ZERO));
        assert_eq!(lam.matrix(klein.identity()), &CMatrix::identity(4, 4));
    }

    #[test]
    fn permutation_rep_matches_printed_table() {
        let rho = permutation_rep(3).unwrap();
        let s3 = rho.group().clone();
        let c123 = s3.by_name("(123)").unwrap();
        assert_eq!(
            rho.matrix(c123),
            &real(&[&[0.0, 0.0, 1.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]])
        );
        assert_eq!(rho.matrix(s3.identity()), &CMatrix::identity(3, 3));
        for (name, rows) in [
            ("(12)", [[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]),
            ("(13)", [[0.0, 0.0, 1.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]]),
            ("(23)", [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]]),
            ("(132)", [[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]),
        ] {
            let rows: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
            assert_eq!(
                rho.matrix(s3.by_name(name).unwrap()),
                &real(&rows),
                "{name}"
            );
        }
        // the group law agrees with matrix products
        let a = s3.by_name("(12)").unwrap();
        let b = s3.by_name("(13)").unwrap();
        assert_eq!(
            rho.matrix(a) * rho.matrix(b),
            *rho.matrix(s3.by_name("(132)").unwrap())
        );
        assert!(rho.is_faithful());

        let rho4 = permutation_rep(4).unwrap();
        let t = rho4.group().by_name("(12)").unwrap();
        let mut expect = CMatrix::identity(4, 4);
        expect.swap_columns(0, 1);
        assert_eq!(rho4.matrix(t), &expect);
        assert!(permutation_rep(1).is_err());
        assert!(permutation_rep(9).is_err());
    }

    #[test]
    fn direct_sum_characters() {
        let c2 = grp("cyclic:2");
        let t = trivial_rep(&c2);
        let s = direct_sum(&t, &t).unwrap();
        assert_eq!(s.degree(), 2);
        assert!(s.matrices().iter().all(|m| *m == CMatrix::identity(2, 2)));

        let klein = grp("klein");
        let sys = irreducible_system(&klein).unwrap();
        let sum = direct_sum(&by_name(&sys, "pi1"), &by_name(&sys, "pi2")).unwrap();
        let chi: Vec<f64> = sum.character().iter().map(|c| c.re).collect();
        assert_eq!(chi, [2.0, -2.0, 0.0, 0.0]);
        assert_eq!(table3(&klein).character(), sum.character());
        // faithful iff kernels intersect trivially
        assert!(sum.is_faithful());
        assert!(!direct_sum(&by_name(&sys, "pi1"), &by_name(&sys, "pi1"))
            .unwrap()
            .is_faithful());

        let other = trivial_rep(&grp("cyclic:3"));
        assert!(matches!(
            direct_sum(&t, &other),
            Err(Error::GroupMismatch(_))
        ));
    }

    #[test]
    fn quaternion_table_character() {
        let q = grp("quaternion");
        let sys = irreducible_system(&q).unwrap();
        let pi = sys.get(4).unwrap();
        assert_eq!(pi.degree(), 2);
        let chi: Vec<Complex64> = pi.character().to_vec();
        let expect = [2.0, -2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        for (c, e) in chi.iter().zip(expect) {
            assert_eq!(*c, Complex64::new(e, 0.0));
        }
        assert!(pi.is_faithful() && pi.is_unitary());
    }

    #[test]
    fn cyclic_characters() {
        let c5 = grp("cyclic:5");
        let sys = irreducible_system(&c5).unwrap();
        assert_eq!(sys.len(), 5);
        for (l, rep) in sys.reps().iter().enumerate() {
            assert_eq!(rep.degree(), 1);
            for r in 0..5 {
                let expect = Complex64::from_polar(1.0, 2.0 * PI * (l * r) as f64 / 5.0);
                assert!((rep.character()[r] - expect).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn klein_system_values() {
        let klein = grp("klein");
        let sys = irreducible_system(&klein).unwrap();
        let vals = |i: usize| -> Vec<f64> {
            sys.get(i)
                .unwrap()
                .character()
                .iter()
                .map(|c| c.re)
                .collect()
        };
        assert_eq!(vals(1), [1.0, -1.0, 1.0, -1.0]);
        assert_eq!(vals(2), [1.0, -1.0, -1.0, 1.0]);
        let pi1 = sys.get(1).unwrap();
        assert!(!pi1.is_faithful());
        assert_eq!(
            pi1.kernel(),
            &[klein.identity(), klein.by_name("b").unwrap()]
        );
    }

    #[test]
    fn system_shapes() {
        for (d, degrees) in [
            ("sym:3", vec![1, 1, 2]),
            ("sym:4", vec![1, 1, 2, 3, 3]),
            ("dihedral:4", vec![1, 1, 1, 1, 2]),
            ("dihedral:5", vec![1, 1, 2, 2]),
            ("quaternion", vec![1, 1, 1, 1, 2]),
            ("product:cyclic:2,sym:3", vec![1, 1, 2, 1, 1, 2]),
            ("sym:1", vec![1]),
            ("sym:2", vec![1, 1]),
        ] {
            let g = grp(d);
            let sys = irreducible_system(&g).unwrap();
            let got: Vec<usize> = sys.reps().iter().map(Representation::degree).collect();
            assert_eq!(got, degrees, "{d}");
            assert_eq!(sys.get(0).unwrap().name(), "trivial");
            for rep in sys.reps() {
                assert!(rep.is_unitary(), "{d} {}", rep.name());
                assert_eq!(
                    rep.homomorphism_violation(TAU_REP),
                    None,
                    "{d} {}",
                    rep.name()
                );
            }
        }
    }

    #[test]
    fn unsupported_systems() {
        let c2 = grp("cyclic:2");
        let cay = crate::groups::build_group(&GroupSpec::Cayley {
            source: "x".into(),
            names: c2.names().to_vec(),
            table: c2.mul_table().to_vec(),
        })
        .unwrap();
        let err = irreducible_system(&cay).unwrap_err();
        assert!(err.to_string().contains("use regular_rep"));
        assert!(irreducible_system(&grp("sym:5")).is_err());
    }

    #[test]
    fn decompositions() {
        let rho = permutation_rep(3).unwrap();
        let sys = irreducible_system(rho.group()).unwrap();
        // trivial, sign, standard
        assert_eq!(decompose(&rho, &sys).unwrap(), [1, 0, 1]);

        for d in [
            "sym:3",
            "sym:4",
            "quaternion",
            "dihedral:6",
            "klein",
            "cyclic:7",
        ] {
            let g = grp(d);
            let sys = irreducible_system(&g).unwrap();
            let lam = regular_rep(&g).unwrap();
            let degs: Vec<usize> = sys.reps().iter().map(Representation::degree).collect();
            assert_eq!(decompose(&lam, &sys).unwrap(), degs, "{d}");
        }

        let klein = grp("klein");
        let sys = irreducible_system(&klein).unwrap();
        assert_eq!(decompose(&table3(&klein), &sys).unwrap(), [0, 1, 1, 0]);
    }

    #[test]
    fn decompose_rejects_non_characters() {
        let c2 = grp("cyclic:2");
        let sys = irreducible_system(&c2).unwrap();
        // scaled matrices: not a representation, but trusted to exercise the residual check
        let bogus = Representation::trusted(
            &c2,
            "bogus",
            vec![
                CMatrix::identity(1, 1),
                CMatrix::from_element(1, 1, Complex64::new(0.5, 0.0)),
            ],
        );
        assert!(decompose(&bogus, &sys).is_err());
    }

    #[test]
    fn validation_in_new() {
        let c2 = grp("cyclic:2");
        let half = CMatrix::from_element(1, 1, Complex64::new(0.5, 0.0));
        assert!(Representation::new(&c2, "x", vec![CMatrix::identity(1, 1), half]).is_err());
        let two = CMatrix::from_element(1, 1, Complex64::new(2.0, 0.0));
        assert!(Representation::new(&c2, "x", vec![two.clone(), two]).is_err());
        assert!(Representation::new(&c2, "x", vec![CMatrix::identity(1, 1)]).is_err());
    }

    #[test]
    fn unit_rep_only_for_cyclic() {
        let c4 = grp("cyclic:4");
        let u = unit_rep(&c4).unwrap();
        assert_eq!(u.character()[1], Complex64::new(0.0, 1.0));
        assert!(u.is_faithful());
        assert!(unit_rep(&grp("klein")).is_err());
    }

    #[test]
    fn regular_rep_order_cap() {
        assert!(regular_rep(&grp("sym:6")).is_err());
    }
}
