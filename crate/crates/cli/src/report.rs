//! Analysis reports and their text and JSON renderings.

use std::fmt::Write as _;

use gaingraph::spectra::{SpectrumKind, SpectrumMultiset};
use serde::{Deserialize, Serialize};

/// Rounds to 12 significant digits and maps `-0` to `0`.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Text form of [`round12`]; magnitudes below `1e-6` use scientific notation.
pub fn fmt_float(x: f64) -> String {
    let r = round12(x);
    if r != 0.0 && r.abs() < 1e-6 {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

/// Eigenvalue components below this magnitude are reported as `0`.
pub const ZERO_SNAP: f64 = 1e-12;

fn snap(x: f64) -> f64 {
    if x.abs() < ZERO_SNAP {
        0.0
    } else {
        round12(x)
    }
}

pub fn fmt_complex(re: f64, im: f64) -> String {
    let (re, im) = (round12(re), round12(im));
    match (re == 0.0, im == 0.0) {
        (_, true) => fmt_float(re),
        (true, false) => format!("{}i", fmt_float(im)),
        (false, false) if im < 0.0 => format!("{}-{}i", fmt_float(re), fmt_float(-im)),
        (false, false) => format!("{}+{}i", fmt_float(re), fmt_float(im)),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Outcome of one decision method.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MethodVerdict {
    pub method: String,
    pub rep: Option<String>,
    pub verdict: String,
    /// Largest eigenvalue pairing gap, for spectral methods.
    pub gap: Option<f64>,
}

/// A spectrum, sorted by descending real part. `imag` is present only for
/// complex spectra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub name: String,
    pub multiplicity: usize,
    pub real: Vec<f64>,
    pub imag: Option<Vec<f64>>,
}

impl SpectrumReport {
    pub fn new(name: impl Into<String>, multiplicity: usize, s: &SpectrumMultiset) -> Self {
        let real = s.values().iter().map(|z| snap(z.re)).collect();
        let imag = match s.kind() {
            SpectrumKind::Real => None,
            SpectrumKind::Complex => Some(s.values().iter().map(|z| snap(z.im)).collect()),
        };
        SpectrumReport {
            name: name.into(),
            multiplicity,
            real,
            imag,
        }
    }

    fn render(&self) -> String {
        let items: Vec<String> = match &self.imag {
            None => self.real.iter().map(|&x| fmt_float(x)).collect(),
            Some(im) => self
                .real
                .iter()
                .zip(im)
                .map(|(&a, &b)| fmt_complex(a, b))
                .collect(),
        };
        format!("{{{}}}", items.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    /// 1-based vertices; first equals last.
    pub walk: Vec<usize>,
    pub gain: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexLabel {
    pub vertex: usize,
    pub element: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub h: u32,
    pub balanced_walks: u64,
    pub all_walks: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverReport {
    pub vertices: Vec<String>,
    /// 1-based cover vertex indices.
    pub edges: Vec<(usize, usize)>,
    pub components: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub group: Option<String>,
    pub verdict: Option<String>,
    pub methods: Vec<MethodVerdict>,
    pub spectra: Vec<SpectrumReport>,
    pub witness: Option<WitnessReport>,
    /// Potential or switching function, by vertex.
    pub switching: Option<Vec<VertexLabel>>,
    pub traces: Vec<TraceRow>,
    pub cover: Option<CoverReport>,
    /// Complex matrix entries as `a+bi` strings.
    pub matrix: Option<Vec<Vec<String>>>,
    pub notes: Vec<String>,
    pub timing_ms: f64,
}

impl AnalysisReport {
    pub fn new(command: impl Into<String>) -> Self {
        AnalysisReport {
            command: command.into(),
            inputs: Vec::new(),
            group: None,
            verdict: None,
            methods: Vec::new(),
            spectra: Vec::new(),
            witness: None,
            switching: None,
            traces: Vec::new(),
            cover: None,
            matrix: None,
            notes: Vec::new(),
            timing_ms: 0.0,
        }
    }

    pub fn spectrum(&self, name: &str) -> Option<&SpectrumReport> {
        self.spectra.iter().find(|s| s.name == name)
    }

    pub fn method(&self, method: &str) -> Option<&MethodVerdict> {
        self.methods.iter().find(|m| m.method == method)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Aligned human-readable form.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        kv(&mut s, "command", &self.command);
        for d in &self.inputs {
            kv(
                &mut s,
                "input",
                &format!(
                    "{} (sha256 {})",
                    d.path,
                    &d.sha256[..16.min(d.sha256.len())]
                ),
            );
        }
        if let Some(g) = &self.group {
            kv(&mut s, "group", g);
        }
        if let Some(v) = &self.verdict {
            kv(&mut s, "verdict", v);
        }
        for m in &self.methods {
            let rep = m
                .rep
                .as_ref()
                .map(|r| format!(" [{r}]"))
                .unwrap_or_default();
            let gap = m
                .gap
                .map(|g| format!(" (gap {})", fmt_float(g)))
                .unwrap_or_default();
            writeln!(s, "  {}{rep}: {}{gap}", m.method, m.verdict).unwrap();
        }
        if let Some(w) = &self.witness {
            let walk: Vec<String> = w.walk.iter().map(|v| format!("v{v}")).collect();
            kv(
                &mut s,
                "witness",
                &format!("{} with gain {}", walk.join(" -> "), w.gain),
            );
        }
        if let Some(f) = &self.switching {
            let items: Vec<String> = f
                .iter()
                .map(|l| format!("v{}={}", l.vertex, l.element))
                .collect();
            kv(&mut s, "switching", &items.join(" "));
        }
        if !self.traces.is_empty() {
            writeln!(s, "traces        h  Tr(A^h)  Tr(|A|^h)").unwrap();
            for t in &self.traces {
                writeln!(
                    s,
                    "              {:<2} {:<8} {}",
                    t.h, t.balanced_walks, t.all_walks
                )
                .unwrap();
            }
        }
        if let Some(c) = &self.cover {
            let summary = format!(
                "{} vertices, {} edges, {} components",
                c.vertices.len(),
                c.edges.len(),
                c.components
            );
            kv(&mut s, "cover", &summary);
            for (i, v) in c.vertices.iter().enumerate() {
                writeln!(s, "  {:>4}  {v}", i + 1).unwrap();
            }
            let edges: Vec<String> = c.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            writeln!(s, "  edges {}", edges.join(" ")).unwrap();
        }
        for sp in &self.spectra {
            let tag = if sp.multiplicity > 1 {
                format!("{} (x{})", sp.name, sp.multiplicity)
            } else {
                sp.name.clone()
            };
            kv(&mut s, &format!("σ {tag}"), &sp.render());
        }
        if let Some(m) = &self.matrix {
            let width = m.iter().flatten().map(|e| e.len()).max().unwrap_or(1);
            for row in m {
                let cells: Vec<String> = row.iter().map(|e| format!("{e:>width$}")).collect();
                writeln!(s, "  {}", cells.join("  ")).unwrap();
            }
        }
        for n in &self.notes {
            kv(&mut s, "note", n);
        }
        kv(&mut s, "time", &format!("{} ms", fmt_float(self.timing_ms)));
        s
    }
}

fn kv(s: &mut String, key: &str, value: &str) {
    writeln!(s, "{key:<13} {value}").unwrap();
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting() {
        assert_eq!(fmt_float(-0.0), "0");
        assert_eq!(fmt_float(1e-17), "1e-17");
        assert_eq!(fmt_float(4.884981308350689e-15), "4.88498130835e-15");
        assert_eq!(fmt_float((1.0 + 17f64.sqrt()) / 2.0), "2.56155281281");
        assert_eq!(fmt_float(2.0), "2");
        assert_eq!(fmt_float(-1.0000000000000002), "-1");
        assert_eq!(
            fmt_complex(-0.5, 0.8660254037844386),
            "-0.5+0.866025403784i"
        );
        assert_eq!(fmt_complex(0.0, -1.0), "-1i");
        assert_eq!(fmt_complex(-0.0, 1e-20), "1e-20i");
        assert_eq!(fmt_complex(0.25, 0.0), "0.25");
    }

    #[test]
    fn spectra_snap_noise() {
        use gaingraph::spectra::SpectrumMultiset;
        let s = SpectrumReport::new(
            "x",
            1,
            &SpectrumMultiset::real(vec![4.2e-17, -1.0000000000001]),
        );
        assert_eq!(s.real, vec![0.0, -1.0]);
        assert_eq!(s.render(), "{0, -1}");
    }

    #[test]
    fn json_round_trip() {
        let mut r = AnalysisReport::new("balance q8.gg --method all");
        r.inputs.push(InputDigest {
            path: "q8.gg".into(),
            sha256: "ab".repeat(32),
        });
        r.group = Some("quaternion".into());
        r.verdict = Some("balanced".into());
        r.methods.push(MethodVerdict {
            method: "spectral".into(),
            rep: Some("regular".into()),
            verdict: "balanced".into(),
            gap: Some(round12(3.3e-15)),
        });
        r.spectra.push(SpectrumReport {
            name: "A+".into(),
            multiplicity: 1,
            real: vec![round12(2.5615528128088303), 0.0, -1.0],
            imag: Some(vec![0.1, -0.2, 0.0]),
        });
        r.witness = Some(WitnessReport {
            walk: vec![1, 2, 3, 1],
            gain: "(123)".into(),
        });
        r.traces.push(TraceRow {
            h: 3,
            balanced_walks: 12,
            all_walks: 12,
        });
        r.cover = Some(CoverReport {
            vertices: vec!["(v1, 1)".into()],
            edges: vec![(1, 2)],
            components: 1,
        });
        r.timing_ms = round12(0.123456789012345);
        let back = AnalysisReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r
            .to_text()
            .contains("witness       v1 -> v2 -> v3 -> v1 with gain (123)"));
    }
}
