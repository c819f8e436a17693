//! The analyses behind each subcommand.
//!
//! Every `cmd_*` function reads its inputs, runs the analysis and returns an
//! [`AnalysisReport`]; rendering and exit codes are left to the binary.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use gaingraph::circulant::{detect_with_violation, parse_matrix, BlockViolation};
use gaingraph::cover::{cover_decomposition, cover_graph, is_k_disjoint_copies};
use gaingraph::gain::{Balance, GainGraph, SwitchingFunction};
use gaingraph::groups::{group_from_descriptor, Group};
use gaingraph::reps::{
    irreducible_system, permutation_rep_of, regular_rep, trivial_rep, unit_rep, Representation,
};
use gaingraph::spectra::{eig_auto, multiset_equal, SpectrumMultiset};
use sha2::{Digest, Sha256};

use crate::report::{
    fmt_complex, round12, AnalysisReport, CoverReport, InputDigest, MethodVerdict, SpectrumReport,
    TraceRow, VertexLabel, WitnessReport,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] gaingraph::Error),
    #[error("{0}")]
    Usage(String),
    #[error("matrix is not G-block circulant: {0}")]
    NotCirculant(BlockViolation),
    #[error("internal discrepancy: {message}")]
    Discrepancy {
        message: String,
        report: Box<AnalysisReport>,
    },
}

impl CliError {
    /// `2` for bad input, `3` for disagreeing methods, `1` for numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Discrepancy { .. } => 3,
            CliError::Core(gaingraph::Error::Numerical(_)) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Which representation to use for spectral analyses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepSelector {
    Trivial,
    Regular,
    /// Permutation representation of `sym:N`.
    Perm,
    /// Member `i` (0-based) of the irreducible system.
    Irr(usize),
    /// `g^j ↦ e^{2πij/K}` on `cyclic:K`.
    Unit,
}

impl FromStr for RepSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "trivial" => Ok(RepSelector::Trivial),
            "regular" => Ok(RepSelector::Regular),
            "perm" => Ok(RepSelector::Perm),
            "unit" => Ok(RepSelector::Unit),
            _ => s
                .strip_prefix("irr:")
                .and_then(|i| i.parse().ok())
                .map(RepSelector::Irr)
                .ok_or_else(|| {
                    format!("unknown representation `{s}` (trivial, regular, perm, irr:<i>, unit)")
                }),
        }
    }
}

impl fmt::Display for RepSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepSelector::Trivial => write!(f, "trivial"),
            RepSelector::Regular => write!(f, "regular"),
            RepSelector::Perm => write!(f, "perm"),
            RepSelector::Irr(i) => write!(f, "irr:{i}"),
            RepSelector::Unit => write!(f, "unit"),
        }
    }
}

impl RepSelector {
    pub fn resolve(&self, group: &Group) -> CliResult<Representation> {
        Ok(match self {
            RepSelector::Trivial => trivial_rep(group),
            RepSelector::Regular => regular_rep(group)?,
            RepSelector::Perm => permutation_rep_of(group)?,
            RepSelector::Unit => unit_rep(group)?,
            RepSelector::Irr(i) => {
                let sys = irreducible_system(group)?;
                sys.get(*i).cloned().ok_or_else(|| {
                    CliError::Usage(format!(
                        "irr:{i} out of range; {} has {} irreducibles (irr:0..irr:{})",
                        group.descriptor(),
                        sys.len(),
                        sys.len() - 1
                    ))
                })?
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Combinatorial,
    Spectral,
    Irreducible,
    Trace,
    All,
}

fn read_input(path: &Path) -> CliResult<(String, InputDigest)> {
    let text = std::fs::read_to_string(path).map_err(|source| gaingraph::Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let digest = InputDigest {
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(text.as_bytes())),
    };
    Ok((text, digest))
}

fn load_graph(path: &Path, report: &mut AnalysisReport) -> CliResult<GainGraph> {
    let (text, digest) = read_input(path)?;
    report.inputs.push(digest);
    let gg = GainGraph::parse(&text, path.parent())?;
    report.group = Some(gg.group().descriptor());
    Ok(gg)
}

fn verdict_word(balanced: bool) -> &'static str {
    if balanced {
        "balanced"
    } else {
        "unbalanced"
    }
}

fn labels(gg: &GainGraph, f: &SwitchingFunction) -> Vec<VertexLabel> {
    f.values()
        .iter()
        .enumerate()
        .map(|(v, &g)| VertexLabel {
            vertex: v + 1,
            element: gg.group().name(g).to_string(),
        })
        .collect()
}

fn finish(mut report: AnalysisReport, start: Instant) -> AnalysisReport {
    report.timing_ms = round12(start.elapsed().as_secs_f64() * 1e3);
    report
}

fn method_entry(method: &str, rep: Option<&str>, verdict: &str, gap: Option<f64>) -> MethodVerdict {
    MethodVerdict {
        method: method.into(),
        rep: rep.map(str::to_string),
        verdict: verdict.into(),
        gap: gap.map(round12),
    }
}

/// Balance by one method, or by every applicable method with a cross-check.
pub fn cmd_balance(
    path: &Path,
    method: Method,
    rep: Option<RepSelector>,
    tol: f64,
) -> CliResult<AnalysisReport> {
    let start = Instant::now();
    let mut report = AnalysisReport::new(format!(
        "balance {} --method {}",
        path.display(),
        format!("{method:?}").to_lowercase()
    ));
    let gg = load_graph(path, &mut report)?;
    let all = method == Method::All;
    let mut verdicts: Vec<(String, bool)> = Vec::new();

    if all || method == Method::Combinatorial {
        let b = gg.is_balanced();
        match &b {
            Balance::Balanced { potential } => report.switching = Some(labels(&gg, potential)),
            Balance::Unbalanced { witness } => {
                report.witness = Some(WitnessReport {
                    walk: witness.walk.iter().map(|v| v + 1).collect(),
                    gain: gg.group().name(witness.gain).to_string(),
                })
            }
        }
        report.methods.push(method_entry(
            "combinatorial",
            None,
            verdict_word(b.is_balanced()),
            None,
        ));
        verdicts.push(("combinatorial".into(), b.is_balanced()));
    }

    if all || method == Method::Trace {
        // every unbalanced graph has an unbalanced cycle of length at most n
        let horizon = gg.vertex_count().max(1) as u32;
        let profile = gg.trace_profile(horizon)?;
        let balanced = profile.iter().all(|e| e.balanced_walks == e.all_walks);
        report.traces = profile
            .iter()
            .map(|e| TraceRow {
                h: e.h,
                balanced_walks: e.balanced_walks,
                all_walks: e.all_walks,
            })
            .collect();
        report
            .methods
            .push(method_entry("trace", None, verdict_word(balanced), None));
        verdicts.push(("trace".into(), balanced));
    }

    if all || method == Method::Spectral {
        let selector = rep.unwrap_or(RepSelector::Regular);
        match selector.resolve(gg.group()) {
            Ok(r) => {
                let v = gg.is_balanced_spectral(&r, tol)?;
                report.methods.push(method_entry(
                    "spectral",
                    Some(r.name()),
                    verdict_word(v.balanced),
                    Some(v.gap()),
                ));
                verdicts.push((format!("spectral[{}]", r.name()), v.balanced));
            }
            Err(e) if all => report.notes.push(format!("spectral method skipped: {e}")),
            Err(e) => return Err(e),
        }
    }

    if all || method == Method::Irreducible {
        match gg.is_balanced_irreducible(tol) {
            Ok(irr) => {
                report.methods.push(method_entry(
                    "irreducible",
                    None,
                    verdict_word(irr.balanced),
                    None,
                ));
                for r in &irr.reps {
                    report.methods.push(method_entry(
                        "irreducible-rep",
                        Some(&r.check.rep),
                        verdict_word(r.check.balanced),
                        Some(r.check.gap()),
                    ));
                    if let Some(idx) = &r.index {
                        report.notes.push(format!(
                            "{}: λ1(A_π) = {} with multiplicity {}, λ1(A+) = {}",
                            r.check.rep,
                            crate::report::fmt_float(idx.rep_index),
                            idx.multiplicity,
                            crate::report::fmt_float(idx.base_index)
                        ));
                    }
                }
                verdicts.push(("irreducible".into(), irr.balanced));
            }
            Err(e @ gaingraph::Error::NoIrreducibleSystem(_)) if all => report
                .notes
                .push(format!("irreducible method skipped: {e}")),
            Err(e) => return Err(e.into()),
        }
    }

    let first = verdicts[0].1;
    if verdicts.iter().any(|(_, v)| *v != first) {
        let summary: Vec<String> = verdicts
            .iter()
            .map(|(m, v)| format!("{m}={}", verdict_word(*v)))
            .collect();
        report.verdict = Some("discrepancy".into());
        return Err(CliError::Discrepancy {
            message: summary.join(", "),
            report: Box::new(finish(report, start)),
        });
    }
    report.verdict = Some(verdict_word(first).into());
    Ok(finish(report, start))
}

/// `σ(A⁺)` and `σ(A_π)`.
pub fn cmd_spectrum(path: &Path, rep: RepSelector, tol: f64) -> CliResult<AnalysisReport> {
    let start = Instant::now();
    let mut report = AnalysisReport::new(format!("spectrum {} --rep {rep}", path.display()));
    let gg = load_graph(path, &mut report)?;
    let r = rep.resolve(gg.group())?;
    let base = gg.underlying_spectrum()?;
    let represented = eig_auto(&gg.represented_adjacency(&r)?)?;
    report.spectra.push(SpectrumReport::new("A+", 1, &base));
    report.spectra.push(SpectrumReport::new(
        format!("A_pi {}", r.name()),
        1,
        &represented,
    ));
    let cmp = multiset_equal(&represented, &base.repeated(r.degree()), tol);
    report.notes.push(format!(
        "σ(A_π) {} deg(π) = {} copies of σ(A+)",
        if cmp.equal { "equals" } else { "differs from" },
        r.degree()
    ));
    Ok(finish(report, start))
}

/// Cover graph listing, spectrum and optionally its irreducible pieces.
pub fn cmd_cover(path: &Path, decompose: bool, tol: f64) -> CliResult<AnalysisReport> {
    let start = Instant::now();
    let mut cmd = format!("cover {}", path.display());
    if decompose {
        cmd.push_str(" --decompose");
    }
    let mut report = AnalysisReport::new(cmd);
    let gg = load_graph(path, &mut report)?;
    let cover = cover_graph(&gg);
    report.cover = Some(CoverReport {
        vertices: (0..cover.vertex_count())
            .map(|i| cover.label_name(i))
            .collect(),
        edges: cover
            .edges()
            .into_iter()
            .map(|(a, b)| (a + 1, b + 1))
            .collect(),
        components: cover.components().len(),
    });
    if gg.vertex_count() > 0 && gg.is_connected() {
        let copies = is_k_disjoint_copies(&gg)?;
        report.notes.push(format!(
            "cover {} {} disjoint copies of the base graph",
            if copies { "is" } else { "is not" },
            gg.group().order()
        ));
    }
    if decompose {
        let d = cover_decomposition(&gg)?;
        report
            .spectra
            .push(SpectrumReport::new("cover", 1, &d.total));
        match &d.pieces {
            Some(pieces) => {
                for p in pieces {
                    report
                        .spectra
                        .push(SpectrumReport::new(p.rep.clone(), p.degree, &p.spectrum));
                }
                let gap = d.union_gap.expect("pieces imply a gap");
                let ok = gap <= tol;
                report.methods.push(method_entry(
                    "decomposition",
                    None,
                    if ok { "verified" } else { "mismatch" },
                    Some(gap),
                ));
                if !ok {
                    return Err(CliError::Discrepancy {
                        message: format!(
                            "union of irreducible pieces misses the cover spectrum by {gap:e}"
                        ),
                        report: Box::new(finish(report, start)),
                    });
                }
            }
            None => report.notes.push(format!(
                "no irreducible system for {}; only the total spectrum is reported",
                gg.group().descriptor()
            )),
        }
    } else {
        let total = gaingraph::spectra::eig_hermitian(&cover.adjacency())?;
        report.spectra.push(SpectrumReport::new("cover", 1, &total));
    }
    Ok(finish(report, start))
}

/// A switching function carrying the first graph to the second, if any.
pub fn cmd_switch_equiv(first: &Path, second: &Path) -> CliResult<AnalysisReport> {
    let start = Instant::now();
    let mut report = AnalysisReport::new(format!(
        "switch-equiv {} {}",
        first.display(),
        second.display()
    ));
    let a = load_graph(first, &mut report)?;
    let b = load_graph(second, &mut report)?;
    if !gaingraph::groups::same_group(a.group(), b.group()) {
        return Err(gaingraph::Error::GroupMismatch(format!(
            "{} vs {}",
            a.group().descriptor(),
            b.group().descriptor()
        ))
        .into());
    }
    if !a.same_underlying_graph(&b) {
        return Err(CliError::Usage(
            "the two files have different underlying graphs; switching equivalence is undefined"
                .into(),
        ));
    }
    match a.switching_equivalent(&b)? {
        Some(f) => {
            report.verdict = Some("equivalent".into());
            report.switching = Some(labels(&a, &f));
        }
        None => report.verdict = Some("not equivalent".into()),
    }
    Ok(finish(report, start))
}

/// Detection and spectral decomposition of a G-block circulant matrix.
pub fn cmd_circulant(
    path: &Path,
    group: &str,
    block_size: usize,
    detect_tol: f64,
    tol: f64,
) -> CliResult<AnalysisReport> {
    let start = Instant::now();
    let mut report = AnalysisReport::new(format!(
        "circulant {} --group {group} --block-size {block_size}",
        path.display()
    ));
    let (text, digest) = read_input(path)?;
    report.inputs.push(digest);
    let g = group_from_descriptor(group, None)?;
    report.group = Some(g.descriptor());
    let m = parse_matrix(&text)?;
    let c =
        detect_with_violation(&m, &g, block_size, detect_tol)?.map_err(CliError::NotCirculant)?;
    report
        .methods
        .push(method_entry("detect", None, "G-block circulant", None));
    match irreducible_system(&g) {
        Ok(sys) => {
            let s = c.spectrum_decompose(&sys)?;
            report
                .spectra
                .push(SpectrumReport::new("total", 1, &s.total));
            for p in &s.pieces {
                report
                    .spectra
                    .push(SpectrumReport::new(p.rep.clone(), p.degree, &p.spectrum));
            }
            report
                .spectra
                .push(SpectrumReport::new("union", 1, &s.union()));
            let ok = s.union_gap <= tol;
            report.methods.push(method_entry(
                "decomposition",
                None,
                if ok { "verified" } else { "mismatch" },
                Some(s.union_gap),
            ));
            if !ok {
                return Err(CliError::Discrepancy {
                    message: format!("union of pieces misses the spectrum by {:e}", s.union_gap),
                    report: Box::new(finish(report, start)),
                });
            }
        }
        Err(gaingraph::Error::NoIrreducibleSystem(_)) => {
            let total: SpectrumMultiset = eig_auto(&c.assemble())?;
            report.spectra.push(SpectrumReport::new("total", 1, &total));
            report.notes.push(format!(
                "no irreducible system for {}; only the total spectrum is reported",
                g.descriptor()
            ));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(finish(report, start))
}

/// The Fourier transform of the adjacency matrix at the chosen representation.
pub fn cmd_fourier(path: &Path, rep: RepSelector) -> CliResult<AnalysisReport> {
    let start = Instant::now();
    let mut report = AnalysisReport::new(format!("fourier {} --rep {rep}", path.display()));
    let gg = load_graph(path, &mut report)?;
    let r = rep.resolve(gg.group())?;
    let m = gg.represented_adjacency(&r)?;
    report.matrix = Some(
        (0..m.nrows())
            .map(|i| {
                (0..m.ncols())
                    .map(|j| fmt_complex(m[(i, j)].re, m[(i, j)].im))
                    .collect()
            })
            .collect(),
    );
    report.notes.push(format!(
        "representation {} of degree {}",
        r.name(),
        r.degree()
    ));
    Ok(finish(report, start))
}
