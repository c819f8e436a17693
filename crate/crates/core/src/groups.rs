//! Finite groups given by multiplication tables.
//!
//! Every group carries a canonical enumeration of its elements with the
//! identity at index 0. The built-in families enumerate as follows:
//!
//! * `cyclic:K`: by exponent, `e, g, g^2, ..., g^(K-1)`.
//! * `dihedral:K`: `e, r, ..., r^(K-1), s, sr, ..., sr^(K-1)` (order `2K`).
//! * `sym:N`: lexicographic one-line notation; names use cycle notation
//!   (`(12)`, `(132)`), the identity is `1`. Composition applies the right
//!   factor first: `(στ)(i) = σ(τ(i))`.
//! * `quaternion`: `1, -1, i, -i, j, -j, k, -k`.
//! * `klein`: `1, a, b, c` with `c = ab`.
//! * `product:<A>,<B>`: pairs `(a,b)` in lexicographic order.
//! * `cayley:<path>`: the table read from the file, relabelled so that the
//!   identity comes first.

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest `N` accepted for `sym:N`.
pub const MAX_SYMMETRIC_DEGREE: usize = 8;

/// Shared handle to an immutable group.
pub type Group = Arc<FiniteGroup>;

/// Element of a [`FiniteGroup`], identified by its canonical index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(usize);

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement(0);

    pub fn index(self) -> usize {
        self.0
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

/// Construction descriptor of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Quaternion,
    Klein,
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Cayley {
        source: String,
        names: Vec<String>,
        table: Vec<Vec<usize>>,
    },
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(k) => write!(f, "cyclic:{k}"),
            GroupSpec::Dihedral(k) => write!(f, "dihedral:{k}"),
            GroupSpec::Symmetric(n) => write!(f, "sym:{n}"),
            GroupSpec::Quaternion => write!(f, "quaternion"),
            GroupSpec::Klein => write!(f, "klein"),
            GroupSpec::Product(a, b) => write!(f, "product:{a},{b}"),
            GroupSpec::Cayley { source, .. } => write!(f, "cayley:{source}"),
        }
    }
}

impl GroupSpec {
    /// Parses a descriptor such as `cyclic:5` or `product:klein,sym:3`.
    ///
    /// `cayley:<path>` reads the table file immediately; relative paths are
    /// resolved against `base_dir` when given.
    pub fn parse(descriptor: &str, base_dir: Option<&Path>) -> Result<GroupSpec> {
        let (spec, rest) = parse_spec(descriptor.trim(), base_dir)?;
        if !rest.is_empty() {
            return Err(Error::InvalidGroup(format!(
                "trailing input `{rest}` in descriptor `{descriptor}`"
            )));
        }
        Ok(spec)
    }
}

fn parse_spec<'a>(s: &'a str, base_dir: Option<&Path>) -> Result<(GroupSpec, &'a str)> {
    let (head, tail) = match s.find(':') {
        Some(pos) if !s[..pos].contains(',') => (&s[..pos], Some(&s[pos + 1..])),
        _ => {
            let end = s.find(',').unwrap_or(s.len());
            (&s[..end], None)
        }
    };
    let number = |t: &'a str| -> Result<(usize, &'a str)> {
        let end = t.find(|c: char| !c.is_ascii_digit()).unwrap_or(t.len());
        let k = t[..end]
            .parse()
            .map_err(|_| Error::InvalidGroup(format!("expected a number after `{head}:`")))?;
        Ok((k, &t[end..]))
    };
    match (head, tail) {
        ("cyclic", Some(t)) => number(t).map(|(k, r)| (GroupSpec::Cyclic(k), r)),
        ("dihedral", Some(t)) => number(t).map(|(k, r)| (GroupSpec::Dihedral(k), r)),
        ("sym", Some(t)) => number(t).map(|(k, r)| (GroupSpec::Symmetric(k), r)),
        ("quaternion", None) => Ok((GroupSpec::Quaternion, &s[head.len()..])),
        ("klein", None) => Ok((GroupSpec::Klein, &s[head.len()..])),
        ("product", Some(t)) => {
            let (left, rest) = parse_spec(t, base_dir)?;
            let rest = rest.strip_prefix(',').ok_or_else(|| {
                Error::InvalidGroup("product needs two comma-separated factors".into())
            })?;
            let (right, rest) = parse_spec(rest, base_dir)?;
            Ok((GroupSpec::Product(Box::new(left), Box::new(right)), rest))
        }
        ("cayley", Some(path)) => {
            let mut full = PathBuf::from(path);
            if full.is_relative() {
                if let Some(dir) = base_dir {
                    full = dir.join(full);
                }
            }
            let text = std::fs::read_to_string(&full).map_err(|source| Error::Io {
                path: full.display().to_string(),
                source,
            })?;
            let (names, table) = parse_cayley_text(&text)?;
            Ok((
                GroupSpec::Cayley {
                    source: path.to_string(),
                    names,
                    table,
                },
                "",
            ))
        }
        _ => Err(Error::InvalidGroup(format!(
            "unrecognised descriptor `{s}`; expected cyclic:K, dihedral:K, sym:N, quaternion, \
             klein, product:<A>,<B> or cayley:<path>"
        ))),
    }
}

/// Parses the Cayley file format: `k`, then `k` names, then `k*k` indices.
pub fn parse_cayley_text(text: &str) -> Result<(Vec<String>, Vec<Vec<usize>>)> {
    let mut tokens = text.split_whitespace();
    let k: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::InvalidGroup("cayley file must start with the order k".into()))?;
    if k == 0 {
        return Err(Error::InvalidGroup("cayley table of order 0".into()));
    }
    let names: Vec<String> = tokens.by_ref().take(k).map(str::to_string).collect();
    if names.len() != k {
        return Err(Error::InvalidGroup(format!("expected {k} element names")));
    }
    let mut table = vec![vec![0; k]; k];
    for (pos, cell) in table.iter_mut().flatten().enumerate() {
        let tok = tokens.next().ok_or_else(|| {
            Error::InvalidGroup(format!(
                "cayley table has {pos} entries, expected {}",
                k * k
            ))
        })?;
        *cell = tok
            .parse()
            .map_err(|_| Error::InvalidGroup(format!("bad table entry `{tok}`")))?;
    }
    if tokens.next().is_some() {
        return Err(Error::InvalidGroup(
            "trailing tokens after cayley table".into(),
        ));
    }
    Ok((names, table))
}

/// A finite group with a canonical element enumeration.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    spec: GroupSpec,
    mul_table: Vec<Vec<usize>>,
    inv_table: Vec<usize>,
    names: Vec<String>,
    lookup: HashMap<String, usize>,
    perms: Option<Vec<Vec<usize>>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.mul_table == other.mul_table && self.names == other.names
    }
}

impl Eq for FiniteGroup {}

/// Builds a group from a descriptor.
pub fn build_group(spec: &GroupSpec) -> Result<Group> {
    FiniteGroup::build(spec).map(Arc::new)
}

/// Parses a descriptor string and builds the group.
pub fn group_from_descriptor(descriptor: &str, base_dir: Option<&Path>) -> Result<Group> {
    build_group(&GroupSpec::parse(descriptor, base_dir)?)
}

/// True when both handles denote the same group (same table and names).
pub fn same_group(a: &Group, b: &Group) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FiniteGroup {
    pub fn build(spec: &GroupSpec) -> Result<FiniteGroup> {
        match spec {
            GroupSpec::Cyclic(k) => {
                if *k == 0 {
                    return Err(Error::InvalidGroup("cyclic group needs k >= 1".into()));
                }
                let k = *k;
                let names = (0..k)
                    .map(|r| match r {
                        0 => "e".to_string(),
                        1 => "g".to_string(),
                        _ => format!("g^{r}"),
                    })
                    .collect();
                Ok(Self::from_fn(spec.clone(), names, |a, b| (a + b) % k, None))
            }
            GroupSpec::Dihedral(k) => {
                if *k < 3 {
                    return Err(Error::InvalidGroup("dihedral group needs k >= 3".into()));
                }
                let k = *k;
                let mut names = Vec::with_capacity(2 * k);
                for refl in [false, true] {
                    for a in 0..k {
                        let rot = match a {
                            0 => String::new(),
                            1 => "r".to_string(),
                            _ => format!("r^{a}"),
                        };
                        names.push(match (refl, a) {
                            (false, 0) => "e".to_string(),
                            (false, _) => rot,
                            (true, _) => format!("s{rot}"),
                        });
                    }
                }
                let mul = move |x: usize, y: usize| {
                    let (e1, a) = (x / k, x % k);
                    let (e2, b) = (y / k, y % k);
                    if e2 == 0 {
                        e1 * k + (a + b) % k
                    } else {
                        ((e1 + 1) % 2) * k + (k - a + b) % k
                    }
                };
                Ok(Self::from_fn(spec.clone(), names, mul, None))
            }
            GroupSpec::Symmetric(n) => {
                let n = *n;
                if n == 0 || n > MAX_SYMMETRIC_DEGREE {
                    return Err(Error::InvalidGroup(format!(
                        "sym:{n} unsupported; n must be in 1..={MAX_SYMMETRIC_DEGREE}"
                    )));
                }
                let perms = symmetric_elements(n);
                let index: HashMap<&[usize], usize> = perms
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (p.as_slice(), i))
                    .collect();
                let names = perms.iter().map(|p| cycle_notation(p)).collect();
                let k = perms.len();
                let mut table = vec![vec![0; k]; k];
                let mut buf = vec![0; n];
                for (a, sigma) in perms.iter().enumerate() {
                    for (b, tau) in perms.iter().enumerate() {
                        for i in 0..n {
                            buf[i] = sigma[tau[i]];
                        }
                        table[a][b] = index[buf.as_slice()];
                    }
                }
                Ok(Self::from_table_unchecked(
                    spec.clone(),
                    names,
                    table,
                    Some(perms),
                ))
            }
            GroupSpec::Quaternion => {
                let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
                Ok(Self::from_fn(spec.clone(), names, quaternion_mul, None))
            }
            GroupSpec::Klein => {
                let names = ["1", "a", "b", "c"].iter().map(|s| s.to_string()).collect();
                Ok(Self::from_fn(spec.clone(), names, |a, b| a ^ b, None))
            }
            GroupSpec::Product(left, right) => {
                let a = FiniteGroup::build(left)?;
                let b = FiniteGroup::build(right)?;
                let kb = b.order();
                let names = a
                    .names
                    .iter()
                    .flat_map(|x| b.names.iter().map(move |y| format!("({x},{y})")))
                    .collect();
                let mul = |x: usize, y: usize| {
                    a.mul_table[x / kb][y / kb] * kb + b.mul_table[x % kb][y % kb]
                };
                Ok(Self::from_fn(spec.clone(), names, mul, None))
            }
            GroupSpec::Cayley { names, table, .. } => {
                let (names, table) = validate_cayley(names, table)?;
                Ok(Self::from_table_unchecked(spec.clone(), names, table, None))
            }
        }
    }

    fn from_fn(
        spec: GroupSpec,
        names: Vec<String>,
        mul: impl Fn(usize, usize) -> usize,
        perms: Option<Vec<Vec<usize>>>,
    ) -> FiniteGroup {
        let k = names.len();
        let table = (0..k)
            .map(|a| (0..k).map(|b| mul(a, b)).collect())
            .collect();
        Self::from_table_unchecked(spec, names, table, perms)
    }

    fn from_table_unchecked(
        spec: GroupSpec,
        names: Vec<String>,
        mul_table: Vec<Vec<usize>>,
        perms: Option<Vec<Vec<usize>>>,
    ) -> FiniteGroup {
        let inv_table = mul_table
            .iter()
            .map(|row| {
                row.iter()
                    .position(|&c| c == 0)
                    .expect("group row without identity")
            })
            .collect();
        let lookup = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        FiniteGroup {
            spec,
            mul_table,
            inv_table,
            names,
            lookup,
            perms,
        }
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn descriptor(&self) -> String {
        self.spec.to_string()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    /// Checked conversion from an index.
    pub fn element(&self, index: usize) -> Result<GroupElement> {
        if index < self.order() {
            Ok(GroupElement(index))
        } else {
            Err(Error::ElementOutOfRange {
                index,
                order: self.order(),
            })
        }
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = GroupElement> {
        (0..self.order()).map(GroupElement)
    }

    pub fn mul(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        GroupElement(self.mul_table[a.0][b.0])
    }

    pub fn inv(&self, a: GroupElement) -> GroupElement {
        GroupElement(self.inv_table[a.0])
    }

    pub fn checked_mul(&self, a: GroupElement, b: GroupElement) -> Result<GroupElement> {
        self.element(a.0)?;
        self.element(b.0)?;
        Ok(self.mul(a, b))
    }

    pub fn checked_inv(&self, a: GroupElement) -> Result<GroupElement> {
        self.element(a.0)?;
        Ok(self.inv(a))
    }

    /// Product of a sequence, left to right; the empty product is the identity.
    pub fn product<I: IntoIterator<Item = GroupElement>>(&self, items: I) -> GroupElement {
        items
            .into_iter()
            .fold(self.identity(), |acc, x| self.mul(acc, x))
    }

    pub fn name(&self, a: GroupElement) -> &str {
        &self.names[a.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn by_name(&self, name: &str) -> Result<GroupElement> {
        self.lookup
            .get(name)
            .map(|&i| GroupElement(i))
            .ok_or_else(|| Error::UnknownElement {
                name: name.to_string(),
                valid: self.names.join(", "),
            })
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul_table
    }

    pub fn is_abelian(&self) -> bool {
        let k = self.order();
        (0..k).all(|a| (0..a).all(|b| self.mul_table[a][b] == self.mul_table[b][a]))
    }

    /// One-line notation (0-based images) for elements of `sym:N`.
    pub fn permutation(&self, a: GroupElement) -> Option<&[usize]> {
        self.perms.as_ref().map(|p| p[a.0].as_slice())
    }

    /// Conjugacy classes ordered by least member; members ascending.
    pub fn conjugacy_classes(&self) -> Vec<Vec<GroupElement>> {
        let k = self.order();
        let mut class_of = vec![usize::MAX; k];
        let mut classes: Vec<Vec<GroupElement>> = Vec::new();
        for x in 0..k {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = Vec::new();
            for g in 0..k {
                let y = self.mul_table[self.mul_table[g][x]][self.inv_table[g]];
                if class_of[y] == usize::MAX {
                    class_of[y] = id;
                    members.push(GroupElement(y));
                }
            }
            members.sort();
            classes.push(members);
        }
        classes
    }

    /// Exhaustive associativity check; returns the first failing triple.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        first_associativity_violation(&self.mul_table)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.spec, self.order())
    }
}

fn quaternion_mul(x: usize, y: usize) -> usize {
    // index = 2 * unit + sign, units 1, i, j, k
    let (ux, sx) = (x / 2, x % 2);
    let (uy, sy) = (y / 2, y % 2);
    let (s, u) = match (ux, uy) {
        (0, u) | (u, 0) => (0, u),
        (a, b) if a == b => (1, 0),
        (1, 2) => (0, 3),
        (2, 3) => (0, 1),
        (3, 1) => (0, 2),
        (2, 1) => (1, 3),
        (3, 2) => (1, 1),
        (1, 3) => (1, 2),
        _ => unreachable!(),
    };
    2 * u + (s + sx + sy) % 2
}

/// All permutations of `0..n` in lexicographic order of one-line notation.
pub fn symmetric_elements(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Cycle notation with 1-based points, e.g. `(132)`; the identity is `1`.
pub fn cycle_notation(perm: &[usize]) -> String {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || perm[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push_str(&(i + 1).to_string());
            i = perm[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

fn first_associativity_violation(t: &[Vec<usize>]) -> Option<(usize, usize, usize)> {
    let k = t.len();
    for a in 0..k {
        for b in 0..k {
            let ab = t[a][b];
            for c in 0..k {
                if t[ab][c] != t[a][t[b][c]] {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

fn validate_cayley(
    names: &[String],
    table: &[Vec<usize>],
) -> Result<(Vec<String>, Vec<Vec<usize>>)> {
    let k = names.len();
    if k == 0 {
        return Err(Error::InvalidGroup("empty cayley table".into()));
    }
    if table.len() != k || table.iter().any(|r| r.len() != k) {
        return Err(Error::InvalidGroup(format!("cayley table must be {k}x{k}")));
    }
    let mut seen = HashMap::new();
    for (i, name) in names.iter().enumerate() {
        if let Some(j) = seen.insert(name.as_str(), i) {
            return Err(Error::InvalidGroup(format!(
                "duplicate element name `{name}` (positions {j} and {i})"
            )));
        }
    }
    if let Some((r, c)) = (0..k)
        .flat_map(|r| (0..k).map(move |c| (r, c)))
        .find(|&(r, c)| table[r][c] >= k)
    {
        return Err(Error::InvalidGroup(format!(
            "table entry ({r},{c}) = {} out of range",
            table[r][c]
        )));
    }
    for r in 0..k {
        let mut row = vec![false; k];
        let mut col = vec![false; k];
        for c in 0..k {
            if std::mem::replace(&mut row[table[r][c]], true) {
                return Err(Error::InvalidGroup(format!(
                    "not a Latin square: row {r} repeats {}",
                    table[r][c]
                )));
            }
            if std::mem::replace(&mut col[table[c][r]], true) {
                return Err(Error::InvalidGroup(format!(
                    "not a Latin square: column {r} repeats {}",
                    table[c][r]
                )));
            }
        }
    }
    if let Some((a, b, c)) = first_associativity_violation(table) {
        return Err(Error::InvalidGroup(format!(
            "associativity violated: ({0}{1}){2} != {0}({1}{2})",
            names[a], names[b], names[c]
        )));
    }
    let e = (0..k)
        .find(|&e| (0..k).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
    // move the identity to index 0, keeping the relative order of the others
    let order: Vec<usize> = std::iter::once(e)
        .chain((0..k).filter(|&x| x != e))
        .collect();
    let mut pos = vec![0; k];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    let names = order.iter().map(|&o| names[o].clone()).collect();
    let table = order
        .iter()
        .map(|&a| order.iter().map(|&b| pos[table[a][b]]).collect())
        .collect();
    Ok((names, table))
}
