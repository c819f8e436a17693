//! Gain graphs and their balance deciders.
//!
//! A gain graph is a simple undirected graph whose oriented edges carry
//! group elements with `Ψ(v,u) = Ψ(u,v)⁻¹`. Balance (every closed walk has
//! gain `1_G`) is decided three ways:
//!
//! * [`GainGraph::is_balanced`]: spanning-tree potentials, with a witness
//!   cycle on failure;
//! * [`GainGraph::is_balanced_spectral`]: `σ(A_π)` against `deg(π)` copies
//!   of `σ(A⁺)` for one unitary faithful representation;
//! * [`GainGraph::is_balanced_irreducible`]: the same test on every member of
//!   the group's irreducible system.
//!
//! Disconnected graphs are balanced iff every component is; the spectral
//! deciders work component by component.
//!
//! Vertices are 0-based in the API and 1-based in files and messages.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::galg::{GroupAlgebraElement, GroupMatrix};
use crate::groups::{group_from_descriptor, same_group, Group, GroupElement, GroupSpec};
use crate::reps::{irreducible_system, unit_rep, Representation};
use crate::spectra::{eig_hermitian, index_and_multiplicity, multiset_equal, SpectrumMultiset};
use crate::{CMatrix, Complex64};

/// A switching function `f: V -> G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchingFunction(Vec<GroupElement>);

impl SwitchingFunction {
    pub fn new(values: Vec<GroupElement>) -> Self {
        SwitchingFunction(values)
    }

    pub fn identity(n: usize) -> Self {
        SwitchingFunction(vec![GroupElement::IDENTITY; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> GroupElement {
        self.0[v]
    }

    pub fn values(&self) -> &[GroupElement] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|g| g.is_identity())
    }

    /// The diagonal matrix `F` with `F_vv = f(v)`.
    pub fn to_group_matrix(&self, group: &Group) -> GroupMatrix {
        GroupMatrix::diagonal(group, &self.0)
    }
}

/// A closed walk whose gain is not the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub walk: Vec<usize>,
    pub gain: GroupElement,
}

/// Combinatorial balance verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Balance {
    /// `potential` switches the graph to the trivial gain.
    Balanced {
        potential: SwitchingFunction,
    },
    Unbalanced {
        witness: Witness,
    },
}

impl Balance {
    pub fn is_balanced(&self) -> bool {
        matches!(self, Balance::Balanced { .. })
    }
}

/// Spectral check of one connected component.
#[derive(Clone, Debug)]
pub struct ComponentCheck {
    pub vertices: Vec<usize>,
    pub balanced: bool,
    pub gap: f64,
    pub represented: SpectrumMultiset,
    pub underlying: SpectrumMultiset,
}

/// Verdict of the spectral decider for a single representation.
#[derive(Clone, Debug)]
pub struct SpectralBalance {
    pub rep: String,
    pub degree: usize,
    pub balanced: bool,
    pub components: Vec<ComponentCheck>,
}

impl SpectralBalance {
    pub fn gap(&self) -> f64 {
        self.components.iter().map(|c| c.gap).fold(0.0, f64::max)
    }

    /// `σ(A_π)` of the whole graph.
    pub fn represented_spectrum(&self) -> SpectrumMultiset {
        SpectrumMultiset::union(self.components.iter().map(|c| &c.represented))
    }
}

/// Largest eigenvalue of `A_π` against that of `A⁺` (connected graphs only).
#[derive(Clone, Debug, PartialEq)]
pub struct IndexCheck {
    pub rep_index: f64,
    pub base_index: f64,
    pub multiplicity: usize,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct RepCheck {
    pub check: SpectralBalance,
    pub index: Option<IndexCheck>,
}

/// Verdict of the decider over a full irreducible system.
#[derive(Clone, Debug)]
pub struct IrreducibleBalance {
    pub balanced: bool,
    pub reps: Vec<RepCheck>,
}

/// `(Tr(Aʰ), Tr(|A|ʰ))`: balanced closed walks and all closed walks of length `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub h: u32,
    pub balanced_walks: u64,
    pub all_walks: u64,
}

impl TraceEntry {
    /// `Tr(Aʰ) / Tr(|A|ʰ)`; `1` when there are no closed walks.
    pub fn ratio(&self) -> f64 {
        if self.all_walks == 0 {
            1.0
        } else {
            self.balanced_walks as f64 / self.all_walks as f64
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnitGainVerdict {
    pub balanced: bool,
    pub index: f64,
    pub base_index: f64,
}

/// Simple undirected graph with a gain on every oriented edge.
#[derive(Clone, Debug)]
pub struct GainGraph {
    group: Group,
    neighbors: Vec<Vec<usize>>,
    gains: BTreeMap<(usize, usize), GroupElement>,
}

impl PartialEq for GainGraph {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group)
            && self.neighbors == other.neighbors
            && self.gains == other.gains
    }
}

impl GainGraph {
    /// Edgeless graph on `n` vertices.
    pub fn new(group: &Group, n: usize) -> Self {
        GainGraph {
            group: group.clone(),
            neighbors: vec![Vec::new(); n],
            gains: BTreeMap::new(),
        }
    }

    /// Adds `{u, v}` with `Ψ(u, v) = gain` (and `Ψ(v, u) = gain⁻¹`).
    pub fn add_edge(&mut self, u: usize, v: usize, gain: GroupElement) -> Result<()> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!(
                "edge ({}, {}) outside vertex range 1..={n}",
                u + 1,
                v + 1
            )));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("loop at vertex {}", u + 1)));
        }
        self.group.element(gain.index())?;
        if self.gains.contains_key(&(u, v)) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                u + 1,
                v + 1
            )));
        }
        self.gains.insert((u, v), gain);
        self.gains.insert((v, u), self.group.inv(gain));
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.neighbors[a];
            let pos = list.partition_point(|&x| x < b);
            list.insert(pos, b);
        }
        Ok(())
    }

    /// Builds a graph from `(u, v, Ψ(u,v))` triples.
    pub fn from_edges(
        group: &Group,
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, GroupElement)>,
    ) -> Result<Self> {
        let mut g = Self::new(group, n);
        for (u, v, gain) in edges {
            g.add_edge(u, v, gain)?;
        }
        Ok(g)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn vertex_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.gains.len() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    /// `Ψ(u, v)` if `{u, v}` is an edge.
    pub fn gain(&self, u: usize, v: usize) -> Option<GroupElement> {
        self.gains.get(&(u, v)).copied()
    }

    /// Edges `(u, v, Ψ(u, v))` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, GroupElement)> + '_ {
        self.gains
            .iter()
            .filter(|((u, v), _)| u < v)
            .map(|(&(u, v), &g)| (u, v, g))
    }

    /// Same underlying graph with every gain replaced by `1_G`.
    pub fn with_trivial_gains(&self) -> Self {
        let mut out = self.clone();
        for g in out.gains.values_mut() {
            *g = GroupElement::IDENTITY;
        }
        out
    }

    pub fn same_underlying_graph(&self, other: &GainGraph) -> bool {
        self.neighbors == other.neighbors
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.neighbors[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Induced subgraph on `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> GainGraph {
        let pos: BTreeMap<usize, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut out = GainGraph::new(&self.group, vertices.len());
        for (u, v, g) in self.edges() {
            if let (Some(&a), Some(&b)) = (pos.get(&u), pos.get(&v)) {
                out.add_edge(a, b, g).expect("induced edge is valid");
            }
        }
        out
    }

    /// Adjacency matrix in `M_n(CG)`: entry `(i, j)` is `Ψ(v_i, v_j)` or `0`.
    pub fn adjacency(&self) -> GroupMatrix {
        let n = self.vertex_count();
        let mut m = GroupMatrix::zeros(&self.group, n);
        for (&(u, v), &g) in &self.gains {
            m.set(u, v, GroupAlgebraElement::basis(&self.group, g));
        }
        m
    }

    /// 0/1 adjacency matrix `A⁺` of the underlying graph (real entries).
    pub fn underlying_adjacency(&self) -> CMatrix {
        let n = self.vertex_count();
        let mut m = CMatrix::zeros(n, n);
        for &(u, v) in self.gains.keys() {
            m[(u, v)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn underlying_spectrum(&self) -> Result<SpectrumMultiset> {
        eig_hermitian(&self.underlying_adjacency())
    }

    /// `A_π`: the Fourier transform of the adjacency matrix at `π`.
    pub fn represented_adjacency(&self, rep: &Representation) -> Result<CMatrix> {
        self.adjacency().fourier(rep)
    }

    /// Ordered product of edge gains along `walk`.
    pub fn walk_gain(&self, walk: &[usize]) -> Result<GroupElement> {
        let n = self.vertex_count();
        if let Some(&bad) = walk.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidGraph(format!(
                "walk visits vertex {} of {n}",
                bad + 1
            )));
        }
        let mut acc = self.group.identity();
        for (step, pair) in walk.windows(2).enumerate() {
            let g = self.gain(pair[0], pair[1]).ok_or(Error::Walk {
                step: step + 1,
                from: pair[0] + 1,
                to: pair[1] + 1,
            })?;
            acc = self.group.mul(acc, g);
        }
        Ok(acc)
    }

    /// Spanning-forest BFS: `(parent, depth, order)`.
    fn spanning_forest(&self) -> (Vec<Option<usize>>, Vec<usize>, Vec<usize>) {
        let n = self.vertex_count();
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for &v in &self.neighbors[u] {
                    if !seen[v] {
                        seen[v] = true;
                        parent[v] = Some(u);
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        (parent, depth, order)
    }

    /// Combinatorial decider over a fundamental system of cycles.
    ///
    /// The potential satisfies `f(root) = 1_G` and `f(v) = Ψ(u,v)⁻¹ f(u)` along
    /// tree edges; a non-tree edge with `Ψ(u,v) != f(u) f(v)⁻¹` closes an
    /// unbalanced fundamental cycle.
    pub fn is_balanced(&self) -> Balance {
        let g = &self.group;
        let (parent, depth, order) = self.spanning_forest();
        let mut f = vec![g.identity(); self.vertex_count()];
        for &v in &order {
            if let Some(u) = parent[v] {
                f[v] = g.mul(g.inv(self.gains[&(u, v)]), f[u]);
            }
        }
        for (u, v, psi) in self.edges() {
            if psi == g.mul(f[u], g.inv(f[v])) {
                continue;
            }
            // u -> v, then the tree path v -> lca -> u
            let (mut a, mut b) = (v, u);
            let mut up = vec![a];
            let mut down = vec![b];
            while depth[a] > depth[b] {
                a = parent[a].unwrap();
                up.push(a);
            }
            while depth[b] > depth[a] {
                b = parent[b].unwrap();
                down.push(b);
            }
            while a != b {
                a = parent[a].unwrap();
                b = parent[b].unwrap();
                up.push(a);
                down.push(b);
            }
            down.pop();
            let mut walk = vec![u];
            walk.extend(up);
            walk.extend(down.into_iter().rev());
            let gain = self.walk_gain(&walk).expect("fundamental cycle is a walk");
            debug_assert!(!gain.is_identity());
            return Balance::Unbalanced {
                witness: Witness { walk, gain },
            };
        }
        Balance::Balanced {
            potential: SwitchingFunction(f),
        }
    }

    fn component_check(
        &self,
        vertices: &[usize],
        rep: &Representation,
        tol: f64,
    ) -> Result<ComponentCheck> {
        let sub = self.induced(vertices);
        let represented = eig_hermitian(&sub.represented_adjacency(rep)?)?;
        let underlying = sub.underlying_spectrum()?;
        let cmp = multiset_equal(&represented, &underlying.repeated(rep.degree()), tol);
        Ok(ComponentCheck {
            vertices: vertices.to_vec(),
            balanced: cmp.equal,
            gap: cmp.gap,
            represented,
            underlying,
        })
    }

    fn spectral_check(&self, rep: &Representation, tol: f64) -> Result<SpectralBalance> {
        if !same_group(&self.group, rep.group()) {
            return Err(Error::GroupMismatch(format!(
                "graph over {}, representation over {}",
                self.group.descriptor(),
                rep.group().descriptor()
            )));
        }
        if !rep.is_unitary() {
            return Err(Error::Precondition(format!(
                "representation {} is not unitary",
                rep.name()
            )));
        }
        let components = self
            .components()
            .iter()
            .map(|c| self.component_check(c, rep, tol))
            .collect::<Result<Vec<_>>>()?;
        Ok(SpectralBalance {
            rep: rep.name().to_string(),
            degree: rep.degree(),
            balanced: components.iter().all(|c| c.balanced),
            components,
        })
    }

    /// Balanced iff `σ(A_π)` is `deg(π)` copies of `σ(A⁺)` on every component.
    ///
    /// `π` must be unitary and faithful.
    pub fn is_balanced_spectral(&self, rep: &Representation, tol: f64) -> Result<SpectralBalance> {
        if !rep.is_faithful() {
            return Err(Error::Precondition(format!(
                "representation {} is not faithful (kernel of size {}); use `regular` or \
                 work over the quotient group",
                rep.name(),
                rep.kernel().len()
            )));
        }
        self.spectral_check(rep, tol)
    }

    /// Runs the spectral test on every irreducible representation.
    pub fn is_balanced_irreducible(&self, tol: f64) -> Result<IrreducibleBalance> {
        let system = irreducible_system(&self.group).map_err(|e| match e {
            Error::NoIrreducibleSystem(g) => Error::NoIrreducibleSystem(format!(
                "{g} (run the spectral decider with the regular representation instead)"
            )),
            other => other,
        })?;
        let connected = self.is_connected() && self.vertex_count() > 0;
        let mut reps = Vec::with_capacity(system.len());
        for rep in system.reps() {
            let check = self.spectral_check(rep, tol)?;
            let index = if connected {
                let ours = &check.components[0];
                let (rep_index, multiplicity) = index_and_multiplicity(&ours.represented, tol)?;
                let (base_index, _) = index_and_multiplicity(&ours.underlying, tol)?;
                Some(IndexCheck {
                    rep_index,
                    base_index,
                    multiplicity,
                    holds: (rep_index - base_index).abs() <= tol && multiplicity == rep.degree(),
                })
            } else {
                None
            };
            reps.push(RepCheck { check, index });
        }
        Ok(IrreducibleBalance {
            balanced: reps.iter().all(|r| r.check.balanced),
            reps,
        })
    }

    /// `(Tr(Aʰ), Tr(|A|ʰ))` for `h = 1..=max_h`, exact.
    ///
    /// A finite profile is a diagnostic: equality up to a horizon does not
    /// certify balance.
    pub fn trace_profile(&self, max_h: u32) -> Result<Vec<TraceEntry>> {
        if max_h == 0 {
            return Err(Error::Precondition("trace profile needs H >= 1".into()));
        }
        let n = self.vertex_count();
        let a = self.adjacency();
        let base: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| u64::from(self.gains.contains_key(&(i, j))))
                    .collect()
            })
            .collect();
        let mut power = a.clone();
        let mut count = base.clone();
        let mut out = Vec::with_capacity(max_h as usize);
        for h in 1..=max_h {
            if h > 1 {
                power = power.mul(&a)?;
                count = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| (0..n).map(|k| count[i][k] * base[k][j]).sum())
                            .collect()
                    })
                    .collect();
            }
            let tr = power.trace();
            let balanced = tr.re.round();
            if (tr - Complex64::new(balanced, 0.0)).norm() > 1e-6 || balanced < 0.0 {
                return Err(Error::Numerical(format!(
                    "non-integral trace {tr} at h = {h}"
                )));
            }
            out.push(TraceEntry {
                h,
                balanced_walks: balanced as u64,
                all_walks: (0..n).map(|i| count[i][i]).sum(),
            });
        }
        Ok(out)
    }

    /// `Ψ'(u, v) = f(u)⁻¹ Ψ(u, v) f(v)`.
    pub fn switch(&self, f: &SwitchingFunction) -> Result<GainGraph> {
        if f.len() != self.vertex_count() {
            return Err(Error::Dimension(format!(
                "switching function on {} vertices for a graph on {}",
                f.len(),
                self.vertex_count()
            )));
        }
        let g = &self.group;
        let mut out = self.clone();
        for (&(u, v), gain) in out.gains.iter_mut() {
            *gain = g.product([g.inv(f.get(u)), self.gains[&(u, v)], f.get(v)]);
        }
        Ok(out)
    }

    /// A switching function carrying `self` to `other`, if one exists.
    ///
    /// Per component, every root value is tried and propagated along a
    /// spanning tree by `f(v) = Ψ₁(u,v)⁻¹ f(u) Ψ₂(u,v)`, then all edges are
    /// verified. The identity root value is tried first.
    pub fn switching_equivalent(&self, other: &GainGraph) -> Result<Option<SwitchingFunction>> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch(format!(
                "{} vs {}",
                self.group.descriptor(),
                other.group.descriptor()
            )));
        }
        if !self.same_underlying_graph(other) {
            return Err(Error::Precondition(
                "switching equivalence needs identical underlying graphs".into(),
            ));
        }
        let g = &self.group;
        let mut f = vec![g.identity(); self.vertex_count()];
        for comp in self.components() {
            let root = comp[0];
            let mut found = false;
            for c in g.elements() {
                f[root] = c;
                let mut queue = VecDeque::from([root]);
                let mut seen = BTreeMap::from([(root, ())]);
                while let Some(u) = queue.pop_front() {
                    for &v in &self.neighbors[u] {
                        if seen.insert(v, ()).is_none() {
                            f[v] =
                                g.product([g.inv(self.gains[&(u, v)]), f[u], other.gains[&(u, v)]]);
                            queue.push_back(v);
                        }
                    }
                }
                let ok = comp.iter().all(|&u| {
                    self.neighbors[u].iter().all(|&v| {
                        other.gains[&(u, v)] == g.product([g.inv(f[u]), self.gains[&(u, v)], f[v]])
                    })
                });
                if ok {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(None);
            }
        }
        Ok(Some(SwitchingFunction(f)))
    }

    /// Index test for connected graphs over `cyclic:K` with the unit representation.
    pub fn unit_gain_check(&self, tol: f64) -> Result<UnitGainVerdict> {
        if !matches!(self.group.spec(), GroupSpec::Cyclic(_)) {
            return Err(Error::Precondition(format!(
                "unit-gain check needs a cyclic group, got {}",
                self.group.descriptor()
            )));
        }
        if self.vertex_count() == 0 || !self.is_connected() {
            return Err(Error::Precondition(
                "unit-gain check needs a connected graph".into(),
            ));
        }
        let rep = unit_rep(&self.group)?;
        let spec = eig_hermitian(&self.represented_adjacency(&rep)?)?;
        let base = self.underlying_spectrum()?;
        let (index, _) = index_and_multiplicity(&spec, tol)?;
        let (base_index, _) = index_and_multiplicity(&base, tol)?;
        Ok(UnitGainVerdict {
            balanced: (index - base_index).abs() <= tol,
            index,
            base_index,
        })
    }

    /// Parses the gain-graph text format.
    ///
    /// ```text
    /// # comment
    /// group quaternion
    /// vertices 4
    /// edge 1 2 -k
    /// ```
    ///
    /// `edge u v g` sets `Ψ(u, v) = g`; the reverse gain is implied.
    /// `cayley:` paths are resolved against `base_dir`.
    pub fn parse(text: &str, base_dir: Option<&Path>) -> Result<GainGraph> {
        let mut group: Option<Group> = None;
        let mut graph: Option<GainGraph> = None;
        let err = |line: usize, msg: String| Error::Parse { line, msg };
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let mut words = content.split_whitespace();
            let keyword = words.next().unwrap();
            let args: Vec<&str> = words.collect();
            match keyword {
                "group" => {
                    if group.is_some() {
                        return Err(err(line, "group declared twice".into()));
                    }
                    if args.len() != 1 {
                        return Err(err(line, "expected `group <descriptor>`".into()));
                    }
                    group = Some(
                        group_from_descriptor(args[0], base_dir)
                            .map_err(|e| err(line, e.to_string()))?,
                    );
                }
                "vertices" => {
                    let grp = group
                        .as_ref()
                        .ok_or_else(|| err(line, "`vertices` before `group`".into()))?;
                    if graph.is_some() {
                        return Err(err(line, "vertices declared twice".into()));
                    }
                    let n: usize = match args.as_slice() {
                        [n] => n
                            .parse()
                            .map_err(|_| err(line, format!("bad vertex count `{n}`")))?,
                        _ => return Err(err(line, "expected `vertices <n>`".into())),
                    };
                    graph = Some(GainGraph::new(grp, n));
                }
                "edge" => {
                    let gg = graph
                        .as_mut()
                        .ok_or_else(|| err(line, "`edge` before `vertices`".into()))?;
                    let [u, v, name] = args.as_slice() else {
                        return Err(err(line, "expected `edge <u> <v> <element>`".into()));
                    };
                    let vertex = |s: &str| -> Result<usize> {
                        match s.parse::<usize>() {
                            Ok(x) if x >= 1 => Ok(x - 1),
                            _ => Err(err(
                                line,
                                format!("bad vertex `{s}` (vertices are 1-based)"),
                            )),
                        }
                    };
                    let (u, v) = (vertex(u)?, vertex(v)?);
                    let gain = gg
                        .group
                        .by_name(name)
                        .map_err(|e| err(line, e.to_string()))?;
                    gg.add_edge(u, v, gain)
                        .map_err(|e| err(line, e.to_string()))?;
                }
                other => return Err(err(line, format!("unknown statement `{other}`"))),
            }
        }
        graph.ok_or_else(|| {
            err(
                text.lines().count().max(1),
                "missing `vertices` statement".into(),
            )
        })
    }

    pub fn load(path: &Path) -> Result<GainGraph> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        GainGraph::parse(&text, path.parent())
    }

    /// Serialises to the text format accepted by [`GainGraph::parse`].
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "group {}", self.group.descriptor()).unwrap();
        writeln!(s, "vertices {}", self.vertex_count()).unwrap();
        for (u, v, g) in self.edges() {
            writeln!(s, "edge {} {} {}", u + 1, v + 1, self.group.name(g)).unwrap();
        }
        s
    }
}
