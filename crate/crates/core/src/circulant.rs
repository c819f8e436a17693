//! G-block circulant matrices.
//!
//! An `(n·k) × (n·k)` matrix split into `k × k` blocks of size `n` is
//! G-block circulant when block `(r, p)` depends only on `g_r g_p⁻¹`. Its
//! spectrum splits over the irreducible representations of `G`.

use std::fmt;

use crate::error::{Error, Result};
use crate::groups::{same_group, Group};
use crate::reps::{IrreducibleSystem, Representation};
use crate::spectra::{eig_auto, hermitian_defect, multiset_equal, SpectrumMultiset, HERMITIAN_TOL};
use crate::{CMatrix, Complex64};

#[derive(Clone, Debug, PartialEq)]
pub struct GBlockCirculant {
    group: Group,
    n: usize,
    blocks: Vec<CMatrix>,
}

/// Two blocks that should coincide but differ.
///
/// Indices are 0-based; `g_r g_p⁻¹ = g_r' g_p'⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockViolation {
    pub r: usize,
    pub p: usize,
    pub r2: usize,
    pub p2: usize,
}

impl fmt::Display for BlockViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "block ({}, {}) differs from block ({}, {})",
            self.r + 1,
            self.p + 1,
            self.r2 + 1,
            self.p2 + 1
        )
    }
}

#[derive(Clone, Debug)]
pub struct CirculantPiece {
    pub rep: String,
    pub degree: usize,
    pub spectrum: SpectrumMultiset,
}

#[derive(Clone, Debug)]
pub struct CirculantSpectrum {
    pub pieces: Vec<CirculantPiece>,
    pub total: SpectrumMultiset,
    pub union_gap: f64,
}

impl CirculantSpectrum {
    pub fn union(&self) -> SpectrumMultiset {
        let repeated: Vec<_> = self
            .pieces
            .iter()
            .map(|p| p.spectrum.repeated(p.degree))
            .collect();
        SpectrumMultiset::union(&repeated)
    }
}

impl GBlockCirculant {
    /// `blocks[r]` is `M(g_r)`, the block in block-row `r` of block-column 0.
    pub fn new(group: &Group, blocks: Vec<CMatrix>) -> Result<Self> {
        if blocks.len() != group.order() {
            return Err(Error::Dimension(format!(
                "{} blocks for a group of order {}",
                blocks.len(),
                group.order()
            )));
        }
        let n = blocks[0].nrows();
        if n == 0 || blocks.iter().any(|b| b.nrows() != n || b.ncols() != n) {
            return Err(Error::Dimension(
                "blocks must be square, nonempty and of one size".into(),
            ));
        }
        Ok(GBlockCirculant {
            group: group.clone(),
            n,
            blocks,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn block_size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    /// Block `(r, p)` is `M(g_r g_p⁻¹)`.
    pub fn assemble(&self) -> CMatrix {
        let (n, g) = (self.n, &self.group);
        let k = g.order();
        let mut out = CMatrix::zeros(n * k, n * k);
        for r in g.elements() {
            for p in g.elements() {
                let c = g.mul(r, g.inv(p));
                out.view_mut((r.index() * n, p.index() * n), (n, n))
                    .copy_from(&self.blocks[c.index()]);
            }
        }
        out
    }

    /// `M̂(π) = Σ_r M(g_r) ⊗ π(g_r)`.
    pub fn fourier(&self, rep: &Representation) -> Result<CMatrix> {
        if !same_group(&self.group, rep.group()) {
            return Err(Error::GroupMismatch(format!(
                "circulant over {}, representation over {}",
                self.group.descriptor(),
                rep.group().descriptor()
            )));
        }
        let d = rep.degree();
        let mut out = CMatrix::zeros(self.n * d, self.n * d);
        for g in self.group.elements() {
            out += self.blocks[g.index()].kronecker(rep.matrix(g));
        }
        Ok(out)
    }

    /// Spectrum of the assembly split over `system`, with the union verified
    /// against a direct eigensolve.
    pub fn spectrum_decompose(&self, system: &IrreducibleSystem) -> Result<CirculantSpectrum> {
        if !same_group(&self.group, system.group()) {
            return Err(Error::GroupMismatch(format!(
                "circulant over {}, irreducible system over {}",
                self.group.descriptor(),
                system.group().descriptor()
            )));
        }
        let total_dim: usize = system.reps().iter().map(|r| r.degree() * r.degree()).sum();
        if total_dim != self.group.order() {
            return Err(Error::Precondition(format!(
                "irreducible system is incomplete: Σ deg² = {total_dim}, |G| = {}",
                self.group.order()
            )));
        }
        let assembled = self.assemble();
        let hermitian = hermitian_defect(&assembled) < HERMITIAN_TOL;
        let total = eig_auto(&assembled)?;
        let pieces = system
            .reps()
            .iter()
            .map(|rep| {
                let m = self.fourier(rep)?;
                // pieces of a Hermitian assembly are Hermitian up to rounding
                let m = if hermitian {
                    (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
                } else {
                    m
                };
                Ok(CirculantPiece {
                    rep: rep.name().to_string(),
                    degree: rep.degree(),
                    spectrum: eig_auto(&m)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = CirculantSpectrum {
            pieces,
            total,
            union_gap: 0.0,
        };
        out.union_gap = multiset_equal(&out.union(), &out.total, f64::INFINITY).gap;
        Ok(out)
    }
}

/// Recovers the block table, or reports the first violated block equality.
///
/// Blocks are compared entrywise with absolute tolerance `tol` (`0` for exact).
pub fn detect_with_violation(
    matrix: &CMatrix,
    group: &Group,
    n: usize,
    tol: f64,
) -> Result<std::result::Result<GBlockCirculant, BlockViolation>> {
    let k = group.order();
    if n == 0 || matrix.nrows() != n * k || matrix.ncols() != n * k {
        return Err(Error::Dimension(format!(
            "{}x{} matrix is not {n}·{k} square",
            matrix.nrows(),
            matrix.ncols()
        )));
    }
    let block = |r: usize, p: usize| matrix.view((r * n, p * n), (n, n));
    for r in group.elements() {
        for p in group.elements() {
            let c = group.mul(r, group.inv(p)).index();
            let diff = (block(r.index(), p.index()) - block(c, 0))
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            if diff > tol || diff.is_nan() {
                return Ok(Err(BlockViolation {
                    r: r.index(),
                    p: p.index(),
                    r2: c,
                    p2: 0,
                }));
            }
        }
    }
    let blocks = (0..k).map(|r| block(r, 0).into_owned()).collect();
    Ok(Ok(GBlockCirculant::new(group, blocks)?))
}

pub fn detect(
    matrix: &CMatrix,
    group: &Group,
    n: usize,
    tol: f64,
) -> Result<Option<GBlockCirculant>> {
    Ok(detect_with_violation(matrix, group, n, tol)?.ok())
}

/// Perfect shuffle of an `n × k` grid (0-based): `p[k·i + r] = n·r + i`.
pub fn perfect_shuffle(n: usize, k: usize) -> Vec<usize> {
    let mut p = vec![0; n * k];
    for i in 0..n {
        for r in 0..k {
            p[k * i + r] = n * r + i;
        }
    }
    p
}

/// `(P⁻¹ M P)[a][b] = M[p(a)][p(b)]` for the permutation matrix of `p`.
pub fn conjugate_by_permutation(m: &CMatrix, p: &[usize]) -> CMatrix {
    CMatrix::from_fn(m.nrows(), m.ncols(), |a, b| m[(p[a], p[b])])
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` (with optional exponents).
pub fn parse_complex(token: &str) -> Option<Complex64> {
    let t = token.trim();
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| matches!(bytes[j], b'+' | b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(j) => (body[..j].parse::<f64>().ok()?, &body[j..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => s.parse::<f64>().ok()?,
    };
    Some(Complex64::new(re, im))
}

/// Dense row-major complex matrix, whitespace-separated, `#` comments.
pub fn parse_matrix(text: &str) -> Result<CMatrix> {
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let row = content
            .split_whitespace()
            .map(|tok| {
                parse_complex(tok).ok_or_else(|| Error::Parse {
                    line: idx + 1,
                    msg: format!("bad complex number `{tok}`"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("row has {} entries, expected {}", row.len(), first.len()),
                });
            }
        }
        rows.push(row);
    }
    let size = rows.len();
    if size == 0 || rows[0].len() != size {
        return Err(Error::Dimension(format!(
            "matrix must be square and nonempty, got {size} rows of {}",
            rows.first().map_or(0, Vec::len)
        )));
    }
    Ok(CMatrix::from_fn(size, size, |i, j| rows[i][j]))
}
