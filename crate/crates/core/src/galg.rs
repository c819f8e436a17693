//! The group algebra `CG`, matrices over it, and the Fourier transform.
//!
//! Elements of `CG` are stored sparsely (a gain-graph adjacency has one
//! group element per nonzero entry). Coefficients are dropped only when they
//! are exactly zero, so integer-complex arithmetic stays exact.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::groups::{same_group, Group, GroupElement};
use crate::reps::Representation;
use crate::CMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn check_group(a: &Group, b: &Group, what: &str) -> Result<()> {
    if same_group(a, b) {
        Ok(())
    } else {
        Err(Error::GroupMismatch(format!(
            "{what}: {} vs {}",
            a.descriptor(),
            b.descriptor()
        )))
    }
}

/// A finitely supported function `G -> C`, i.e. `Σ f_x x`.
#[derive(Clone, Debug)]
pub struct GroupAlgebraElement {
    group: Group,
    coeffs: BTreeMap<usize, Complex64>,
}

impl PartialEq for GroupAlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.coeffs == other.coeffs
    }
}

impl GroupAlgebraElement {
    pub fn zero(group: &Group) -> Self {
        GroupAlgebraElement {
            group: group.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis element `δ_g`.
    pub fn basis(group: &Group, g: GroupElement) -> Self {
        Self::from_terms(group, [(g, ONE)])
    }

    /// The algebra identity `δ_{1_G}`.
    pub fn one(group: &Group) -> Self {
        Self::basis(group, group.identity())
    }

    /// Sums repeated terms; exact zeros are pruned.
    pub fn from_terms<I>(group: &Group, terms: I) -> Self
    where
        I: IntoIterator<Item = (GroupElement, Complex64)>,
    {
        let mut out = Self::zero(group);
        for (g, c) in terms {
            out.add_term(g, c);
        }
        out
    }

    fn add_term(&mut self, g: GroupElement, c: Complex64) {
        let slot = self.coeffs.entry(g.index()).or_insert(ZERO);
        *slot += c;
        if *slot == ZERO {
            self.coeffs.remove(&g.index());
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn coeff(&self, g: GroupElement) -> Complex64 {
        self.coeffs.get(&g.index()).copied().unwrap_or(ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in element order.
    pub fn terms(&self) -> impl Iterator<Item = (GroupElement, Complex64)> + '_ {
        self.coeffs
            .iter()
            .map(|(&i, &c)| (self.group.element(i).unwrap(), c))
    }

    pub fn support(&self) -> Vec<GroupElement> {
        self.terms().map(|(g, _)| g).collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_group(&self.group, &other.group, "sum of group-algebra elements")?;
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c);
        }
        Ok(out)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_terms(&self.group, self.terms().map(|(g, c)| (g, c * s)))
    }

    /// `(f ∗ h)(x) = Σ_y f(xy⁻¹) h(y)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        check_group(&self.group, &other.group, "convolution")?;
        let mut out = Self::zero(&self.group);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(self.group.mul(a, b), ca * cb);
            }
        }
        Ok(out)
    }

    /// `f* = Σ conj(f_x) x⁻¹`.
    pub fn star(&self) -> Self {
        Self::from_terms(
            &self.group,
            self.terms().map(|(g, c)| (self.group.inv(g), c.conj())),
        )
    }

    /// `f̂(π) = Σ_x f(x) π(x)`.
    pub fn fourier(&self, rep: &Representation) -> Result<CMatrix> {
        check_group(&self.group, rep.group(), "Fourier transform")?;
        let d = rep.degree();
        let mut out = CMatrix::zeros(d, d);
        for (g, c) in self.terms() {
            out += rep.matrix(g) * c;
        }
        Ok(out)
    }
}

fn fmt_coeff(c: Complex64) -> String {
    let num = |x: f64| {
        if x.fract() == 0.0 && x.abs() < 1e15 {
            format!("{}", x as i64)
        } else {
            format!("{x}")
        }
    };
    match (c.re, c.im) {
        (re, im) if im == 0.0 => num(re),
        (re, im) if re == 0.0 => match im {
            1.0 => "i".to_string(),
            -1.0 => "-i".to_string(),
            _ => format!("{}i", num(im)),
        },
        (re, im) => format!(
            "({}{}{}i)",
            num(re),
            if im < 0.0 { "-" } else { "+" },
            num(im.abs())
        ),
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(g, c)| {
                let name = self.group.name(g);
                match fmt_coeff(c).as_str() {
                    "1" => name.to_string(),
                    "-1" => format!("-{name}"),
                    s => format!("{s}*{name}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// An `n×n` matrix over `CG`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupMatrix {
    group: Group,
    n: usize,
    entries: Vec<GroupAlgebraElement>,
}

impl GroupMatrix {
    pub fn zeros(group: &Group, n: usize) -> Self {
        GroupMatrix {
            group: group.clone(),
            n,
            entries: vec![GroupAlgebraElement::zero(group); n * n],
        }
    }

    /// `δ_{1_G}` on the diagonal.
    pub fn identity(group: &Group, n: usize) -> Self {
        let mut m = Self::zeros(group, n);
        for i in 0..n {
            m.set(i, i, GroupAlgebraElement::one(group));
        }
        m
    }

    /// Diagonal matrix with a group element on each diagonal entry.
    pub fn diagonal(group: &Group, diag: &[GroupElement]) -> Self {
        let mut m = Self::zeros(group, diag.len());
        for (i, &g) in diag.iter().enumerate() {
            m.set(i, i, GroupAlgebraElement::basis(group, g));
        }
        m
    }

    pub fn from_fn(
        group: &Group,
        n: usize,
        mut f: impl FnMut(usize, usize) -> GroupAlgebraElement,
    ) -> Result<Self> {
        let mut m = Self::zeros(group, n);
        for i in 0..n {
            for j in 0..n {
                let e = f(i, j);
                check_group(group, e.group(), "group matrix entry")?;
                m.entries[i * n + j] = e;
            }
        }
        Ok(m)
    }

    /// Builds `F ∈ M_n(CG)` from its slices `F(x) ∈ M_n(C)`, indexed by element.
    pub fn from_slices(group: &Group, slices: &[CMatrix]) -> Result<Self> {
        if slices.len() != group.order() {
            return Err(Error::Dimension(format!(
                "{} slices for a group of order {}",
                slices.len(),
                group.order()
            )));
        }
        let n = slices[0].nrows();
        if slices.iter().any(|s| s.nrows() != n || s.ncols() != n) {
            return Err(Error::Dimension(
                "slices must be square of equal size".into(),
            ));
        }
        Self::from_fn(group, n, |i, j| {
            GroupAlgebraElement::from_terms(
                group,
                group.elements().map(|g| (g, slices[g.index()][(i, j)])),
            )
        })
    }

    /// The slice `F(x)`: entry `(i, j)` is the coefficient of `x` in `F_ij`.
    pub fn slice(&self, x: GroupElement) -> CMatrix {
        CMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j).coeff(x))
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupAlgebraElement {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: GroupAlgebraElement) {
        self.entries[i * self.n + j] = value;
    }

    fn check_compatible(&self, other: &Self, what: &str) -> Result<()> {
        check_group(&self.group, &other.group, what)?;
        if self.n != other.n {
            return Err(Error::Dimension(format!(
                "{what}: sizes {} and {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "group matrix sum")?;
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e = e.add(o)?;
        }
        Ok(out)
    }

    /// `(FH)_ij = Σ_k F_ik ∗ H_kj`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "group matrix product")?;
        let n = self.n;
        let mut out = Self::zeros(&self.group, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = GroupAlgebraElement::zero(&self.group);
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    for (x, cx) in a.terms() {
                        for (y, cy) in b.terms() {
                            acc.add_term(self.group.mul(x, y), cx * cy);
                        }
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, h: u32) -> Self {
        let mut out = Self::identity(&self.group, self.n);
        for _ in 0..h {
            out = out.mul(self).expect("compatible by construction");
        }
        out
    }

    /// `(F*)_ij = (F_ji)*`.
    pub fn star(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(&self.group, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(j, i).star());
            }
        }
        out
    }

    /// `Tr F = Σ_i (coefficient of 1_G in F_ii)`.
    pub fn trace(&self) -> Complex64 {
        (0..self.n)
            .map(|i| self.get(i, i).coeff(self.group.identity()))
            .sum()
    }

    /// `F̂(π) = Σ_x F(x) ⊗ π(x)`; block `(i, j)` is `F_ij` transformed at `π`.
    pub fn fourier(&self, rep: &Representation) -> Result<CMatrix> {
        check_group(&self.group, rep.group(), "Fourier transform")?;
        let (n, d) = (self.n, rep.degree());
        let mut out = CMatrix::zeros(n * d, n * d);
        for i in 0..n {
            for j in 0..n {
                let entry = self.get(i, j);
                if entry.is_zero() {
                    continue;
                }
                out.view_mut((i * d, j * d), (d, d))
                    .copy_from(&entry.fourier(rep)?);
            }
        }
        Ok(out)
    }
}

/// Free-function form of [`GroupAlgebraElement::convolve`].
pub fn convolve(f: &GroupAlgebraElement, h: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    f.convolve(h)
}

/// Free-function form of [`GroupMatrix::fourier`].
pub fn fourier_matrix(f: &GroupMatrix, rep: &Representation) -> Result<CMatrix> {
    f.fourier(rep)
}

/// Index map taking `F̂(π ⊕ π')` to `F̂(π) ⊕ F̂(π')`.
///
/// Row/column `i*(d1+d2) + r` of the direct-sum transform goes to position
/// `map[i*(d1+d2) + r]` of the block-diagonal form.
pub fn direct_sum_shuffle(n: usize, d1: usize, d2: usize) -> Vec<usize> {
    let d = d1 + d2;
    (0..n * d)
        .map(|idx| {
            let (i, r) = (idx / d, idx % d);
            if r < d1 {
                i * d1 + r
            } else {
                n * d1 + i * d2 + (r - d1)
            }
        })
        .collect()
}

/// `out[map[a]][map[b]] = m[a][b]`.
pub fn permute_symmetric(m: &CMatrix, map: &[usize]) -> CMatrix {
    let n = m.nrows();
    let mut out = CMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            out[(map[a], map[b])] = m[(a, b)];
        }
    }
    out
}
