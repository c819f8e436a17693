//! The `|G|`-fold cover graph of a gain graph.
//!
//! Vertex `(v, g)` sits at index `v * |G| + g`, so the cover adjacency is
//! exactly the Fourier transform of the gain adjacency at the left regular
//! representation. Edges join `(u, g)` and `(v, Ψ(u,v)⁻¹ g)`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::gain::{GainGraph, SwitchingFunction};
use crate::groups::GroupElement;
use crate::reps::irreducible_system;
use crate::spectra::{eig_hermitian, multiset_equal, SpectrumMultiset};
use crate::{CMatrix, Complex64};

#[derive(Clone, Debug)]
pub struct CoverGraph {
    base: GainGraph,
    neighbors: Vec<Vec<usize>>,
}

impl CoverGraph {
    pub fn base(&self) -> &GainGraph {
        &self.base
    }

    pub fn fiber_size(&self) -> usize {
        self.base.group().order()
    }

    pub fn vertex_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn index(&self, v: usize, g: GroupElement) -> usize {
        v * self.fiber_size() + g.index()
    }

    /// `(v, g)` for a cover vertex index.
    pub fn label(&self, i: usize) -> (usize, GroupElement) {
        let k = self.fiber_size();
        (
            i / k,
            self.base.group().element(i % k).expect("index in range"),
        )
    }

    /// Human-readable `(v, g)` with a 1-based base vertex.
    pub fn label_name(&self, i: usize) -> String {
        let (v, g) = self.label(i);
        format!("(v{}, {})", v + 1, self.base.group().name(g))
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect()
    }

    /// Symmetric 0/1 adjacency in the lexicographic vertex order.
    pub fn adjacency(&self) -> CMatrix {
        let n = self.vertex_count();
        let mut m = CMatrix::zeros(n, n);
        for (a, ns) in self.neighbors.iter().enumerate() {
            for &b in ns {
                m[(a, b)] = Complex64::new(1.0, 0.0);
            }
        }
        m
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(a) = queue.pop_front() {
                for &b in &self.neighbors[a] {
                    if !seen[b] {
                        seen[b] = true;
                        comp.push(b);
                        queue.push_back(b);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

pub fn cover_graph(gg: &GainGraph) -> CoverGraph {
    let group = gg.group();
    let k = group.order();
    let mut neighbors = vec![Vec::new(); gg.vertex_count() * k];
    for u in 0..gg.vertex_count() {
        for &v in gg.neighbors(u) {
            let inv = group.inv(gg.gain(u, v).expect("neighbor has a gain"));
            for g in group.elements() {
                let h = group.mul(inv, g);
                neighbors[u * k + g.index()].push(v * k + h.index());
            }
        }
    }
    for ns in &mut neighbors {
        ns.sort_unstable();
    }
    let cover = CoverGraph {
        base: gg.clone(),
        neighbors,
    };
    #[cfg(debug_assertions)]
    if let Ok(lambda) = crate::reps::regular_rep(group) {
        debug_assert_eq!(
            cover.adjacency(),
            gg.represented_adjacency(&lambda).expect("same group"),
            "cover adjacency differs from the transform at the regular representation"
        );
    }
    cover
}

/// Eigenvalues of the cover adjacency, descending.
pub fn cover_spectrum(gg: &GainGraph) -> Result<SpectrumMultiset> {
    eig_hermitian(&cover_graph(gg).adjacency())
}

/// `σ(A_π)` for one irreducible `π`, to be counted `degree` times.
#[derive(Clone, Debug)]
pub struct CoverPiece {
    pub rep: String,
    pub degree: usize,
    pub spectrum: SpectrumMultiset,
}

#[derive(Clone, Debug)]
pub struct CoverDecomposition {
    /// `None` when the group has no built-in irreducible system.
    pub pieces: Option<Vec<CoverPiece>>,
    pub total: SpectrumMultiset,
    /// Pairing gap between the union of the pieces and `total`.
    pub union_gap: Option<f64>,
}

impl CoverDecomposition {
    /// `⊎ deg(π)·σ(A_π)`, if pieces are available.
    pub fn union(&self) -> Option<SpectrumMultiset> {
        let pieces = self.pieces.as_ref()?;
        let repeated: Vec<_> = pieces
            .iter()
            .map(|p| p.spectrum.repeated(p.degree))
            .collect();
        Some(SpectrumMultiset::union(&repeated))
    }

    pub fn verified(&self, tol: f64) -> Option<bool> {
        self.union_gap.map(|g| g <= tol)
    }
}

/// Splits the cover spectrum into irreducible pieces.
///
/// The pieces are solved independently of the cover; `total` is a direct
/// eigensolve of the cover adjacency.
pub fn cover_decomposition(gg: &GainGraph) -> Result<CoverDecomposition> {
    let total = cover_spectrum(gg)?;
    let system = match irreducible_system(gg.group()) {
        Ok(s) => s,
        Err(Error::NoIrreducibleSystem(_)) => {
            return Ok(CoverDecomposition {
                pieces: None,
                total,
                union_gap: None,
            })
        }
        Err(e) => return Err(e),
    };
    let pieces = system
        .reps()
        .iter()
        .map(|rep| {
            Ok(CoverPiece {
                rep: rep.name().to_string(),
                degree: rep.degree(),
                spectrum: eig_hermitian(&gg.represented_adjacency(rep)?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = CoverDecomposition {
        pieces: Some(pieces),
        total,
        union_gap: None,
    };
    let union = out.union().expect("pieces present");
    out.union_gap = Some(multiset_equal(&union, &out.total, f64::INFINITY).gap);
    Ok(out)
}

/// Whether the cover of a connected gain graph is `|G|` disjoint copies of the base.
///
/// Checked through fibers: every component must meet each fiber once, and
/// its edges must project bijectively onto the base edges.
pub fn is_k_disjoint_copies(gg: &GainGraph) -> Result<bool> {
    if gg.vertex_count() == 0 || !gg.is_connected() {
        return Err(Error::Precondition(
            "disjoint-copies check needs a connected base graph".into(),
        ));
    }
    let cover = cover_graph(gg);
    let k = cover.fiber_size();
    let comps = cover.components();
    if comps.len() != k {
        return Ok(false);
    }
    for comp in &comps {
        let mut fibers: Vec<usize> = comp.iter().map(|&i| cover.label(i).0).collect();
        fibers.dedup();
        if fibers.len() != gg.vertex_count() || comp.len() != gg.vertex_count() {
            return Ok(false);
        }
        let mut projected: Vec<(usize, usize)> = comp
            .iter()
            .flat_map(|&a| cover.neighbors(a).iter().map(move |&b| (a, b)))
            .filter(|(a, b)| a < b)
            .map(|(a, b)| {
                let (u, v) = (cover.label(a).0, cover.label(b).0);
                (u.min(v), u.max(v))
            })
            .collect();
        projected.sort_unstable();
        let base: Vec<(usize, usize)> = gg.edges().map(|(u, v, _)| (u, v)).collect();
        if projected != base {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cover-vertex permutation induced by a switching function: `(v, g) ↦ (v, f(v) g)`.
///
/// With `P[perm[i]][i] = 1`, `Pᵀ L(Γ,Ψ) P = L(Γ,Ψᶠ)`; equivalently the
/// switched cover has `(i, j)` adjacent iff `(perm[i], perm[j])` is adjacent
/// in the original.
pub fn lift_switching(gg: &GainGraph, f: &SwitchingFunction) -> Result<Vec<usize>> {
    if f.len() != gg.vertex_count() {
        return Err(Error::Dimension(format!(
            "switching function on {} vertices for a graph on {}",
            f.len(),
            gg.vertex_count()
        )));
    }
    let group = gg.group();
    let k = group.order();
    Ok((0..gg.vertex_count() * k)
        .map(|i| {
            let (v, p) = (i / k, group.element(i % k).expect("in range"));
            v * k + group.mul(f.get(v), p).index()
        })
        .collect())
}

/// The permutation matrix with `P[perm[i]][i] = 1`.
pub fn permutation_matrix(perm: &[usize]) -> CMatrix {
    let n = perm.len();
    let mut m = CMatrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        m[(j, i)] = Complex64::new(1.0, 0.0);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gain::Balance;
    use crate::galg::GroupMatrix;
    use crate::reps::regular_rep;
    use crate::spectra::TAU_SPEC;

    fn parse(s: &str) -> GainGraph {
        GainGraph::parse(s, None).unwrap()
    }

    const KLEIN: &str = "group klein\nvertices 4\n\
        edge 1 2 c\nedge 1 3 b\nedge 1 4 1\nedge 2 3 1\nedge 3 4 a\n";
    const C5_XI: &str = "group cyclic:5\nvertices 3\nedge 1 2 e\nedge 2 3 e\nedge 3 1 g\n";
    const Q8: &str = "group quaternion\nvertices 4\n\
        edge 1 2 -k\nedge 1 3 i\nedge 1 4 k\nedge 2 3 j\nedge 3 4 j\n";

    fn reals(v: &[f64]) -> SpectrumMultiset {
        SpectrumMultiset::real(v.to_vec())
    }

    #[test]
    fn single_edge_over_c2() {
        let gg = parse("group cyclic:2\nvertices 2\nedge 1 2 g\n");
        let cov = cover_graph(&gg);
        assert_eq!(cov.vertex_count(), 4);
        assert_eq!(cov.edges(), vec![(0, 3), (1, 2)]);
        assert_eq!(cov.components().len(), 2);
        assert!(is_k_disjoint_copies(&gg).unwrap());
    }

    #[test]
    fn trivial_triangle_spectrum() {
        let gg = parse("group cyclic:2\nvertices 3\nedge 1 2 e\nedge 2 3 e\nedge 1 3 e\n");
        let s = cover_spectrum(&gg).unwrap();
        assert!(multiset_equal(&s, &reals(&[2.0, 2.0, -1.0, -1.0, -1.0, -1.0]), 1e-12).equal);
        let d = cover_decomposition(&gg).unwrap();
        for p in d.pieces.as_ref().unwrap() {
            assert!(multiset_equal(&p.spectrum, &reals(&[2.0, -1.0, -1.0]), 1e-12).equal);
        }
    }

    #[test]
    fn c5_triangle_is_a_15_cycle() {
        let gg = parse(C5_XI);
        let cov = cover_graph(&gg);
        assert_eq!(cov.components().len(), 1);
        assert!((0..15).all(|i| cov.neighbors(i).len() == 2));
        let cycle: Vec<f64> = (0..15)
            .map(|j| 2.0 * (2.0 * std::f64::consts::PI * j as f64 / 15.0).cos())
            .collect();
        assert!(multiset_equal(&cover_spectrum(&gg).unwrap(), &reals(&cycle), 1e-10).equal);
        assert!(!is_k_disjoint_copies(&gg).unwrap());
    }

    #[test]
    fn klein_decomposition() {
        let gg = parse(KLEIN);
        let d = cover_decomposition(&gg).unwrap();
        assert!(d.verified(TAU_SPEC).unwrap());
        let pieces = d.pieces.as_ref().unwrap();
        let s17 = 17f64.sqrt();
        assert!(
            multiset_equal(
                &pieces[0].spectrum,
                &gg.underlying_spectrum().unwrap(),
                1e-12
            )
            .equal
        );
        assert!(
            multiset_equal(
                &pieces[1].spectrum,
                &reals(&[0.0, 1.0, (-1.0 + s17) / 2.0, (-1.0 - s17) / 2.0]),
                1e-9
            )
            .equal
        );
        assert!(multiset_equal(&pieces[2].spectrum, &reals(&[1.0, -1.0, 2.0, -2.0]), 1e-9).equal);
    }

    #[test]
    fn q8_cover_is_eight_copies() {
        let gg = parse(Q8);
        assert!(is_k_disjoint_copies(&gg).unwrap());
        assert_eq!(cover_graph(&gg).components().len(), 8);
        assert!(is_k_disjoint_copies(&gg.with_trivial_gains()).unwrap());
        assert!(is_k_disjoint_copies(&parse("group klein\nvertices 3\nedge 1 2 a\n")).is_err());
    }

    #[test]
    fn switching_lifts() {
        let gg = parse(Q8);
        let group = gg.group().clone();
        let k = group.order();
        let id = lift_switching(&gg, &SwitchingFunction::identity(4)).unwrap();
        assert_eq!(id, (0..4 * k).collect::<Vec<_>>());

        let f = SwitchingFunction::new(
            ["j", "-1", "k", "-i"]
                .iter()
                .map(|n| group.by_name(n).unwrap())
                .collect(),
        );
        let perm = lift_switching(&gg, &f).unwrap();
        let p = permutation_matrix(&perm);
        let lambda = regular_rep(&group).unwrap();
        assert_eq!(
            p,
            GroupMatrix::diagonal(&group, f.values())
                .fourier(&lambda)
                .unwrap()
        );
        let lhs = p.transpose() * cover_graph(&gg).adjacency() * &p;
        assert_eq!(lhs, cover_graph(&gg.switch(&f).unwrap()).adjacency());

        let Balance::Balanced { potential } = gg.is_balanced() else {
            unreachable!()
        };
        let perm = lift_switching(&gg, &potential).unwrap();
        let p = permutation_matrix(&perm);
        let lhs = p.transpose() * cover_graph(&gg).adjacency() * &p;
        assert_eq!(lhs, cover_graph(&gg.with_trivial_gains()).adjacency());
    }

    #[test]
    fn labels() {
        let gg = parse(KLEIN);
        let cov = cover_graph(&gg);
        assert_eq!(cov.label_name(5), "(v2, a)");
        assert_eq!(cov.index(1, gg.group().by_name("a").unwrap()), 5);
    }
}
