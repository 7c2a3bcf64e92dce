//! Nakayama bound quiver algebras with monomial relations.
//!
//! A basic connected Nakayama algebra is `kQ/I` where `Q` is either the line
//! quiver `L_n` (vertices `1..=n`, arrows `a_i: i -> i+1`) or the cyclic quiver
//! `C_n` (vertices `Z/n`, arrows `a_i: i -> i+1 mod n`), and `I` is generated by
//! a minimal set of paths `R_A`. Since both quivers have at most one arrow out
//! of each vertex, a path is determined by its start vertex and its length,
//! which is how [`NakPath`] stores it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The underlying quiver of a basic connected Nakayama algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuiverKind {
    /// `L_n` with vertices `1..=n`.
    Line(usize),
    /// `C_n` with vertices `0..n`.
    Cycle(usize),
}

impl QuiverKind {
    pub fn n(self) -> usize {
        match self {
            QuiverKind::Line(n) | QuiverKind::Cycle(n) => n,
        }
    }

    pub fn is_cycle(self) -> bool {
        matches!(self, QuiverKind::Cycle(_))
    }

    pub fn name(self) -> &'static str {
        match self {
            QuiverKind::Line(_) => "line",
            QuiverKind::Cycle(_) => "cycle",
        }
    }

    /// Vertices in their natural order.
    pub fn vertices(self) -> Vec<usize> {
        match self {
            QuiverKind::Line(n) => (1..=n).collect(),
            QuiverKind::Cycle(n) => (0..n).collect(),
        }
    }

    pub fn contains_vertex(self, v: usize) -> bool {
        match self {
            QuiverKind::Line(n) => (1..=n).contains(&v),
            QuiverKind::Cycle(n) => v < n,
        }
    }

    /// Position of `v` in [`QuiverKind::vertices`].
    pub fn index(self, v: usize) -> usize {
        match self {
            QuiverKind::Line(_) => v - 1,
            QuiverKind::Cycle(_) => v,
        }
    }

    pub fn vertex_at(self, idx: usize) -> usize {
        match self {
            QuiverKind::Line(_) => idx + 1,
            QuiverKind::Cycle(_) => idx,
        }
    }

    /// Vertex reached from `v` after `k` steps (negative `k` walks backwards).
    /// On a line, walking off either end yields `None`.
    pub fn shift(self, v: usize, k: isize) -> Option<usize> {
        match self {
            QuiverKind::Line(n) => {
                let w = v as isize + k;
                (1..=n as isize).contains(&w).then_some(w as usize)
            }
            QuiverKind::Cycle(n) => {
                let n = n as isize;
                Some((v as isize + k).rem_euclid(n) as usize)
            }
        }
    }

    /// Smallest `k >= 0` with `shift(from, k) == to`.
    pub fn offset(self, from: usize, to: usize) -> Option<usize> {
        match self {
            QuiverKind::Line(_) => to.checked_sub(from),
            QuiverKind::Cycle(n) => Some((to + n - from % n) % n),
        }
    }

    pub fn path_fits(self, p: NakPath) -> bool {
        match self {
            QuiverKind::Line(n) => p.start >= 1 && p.start + p.len <= n,
            QuiverKind::Cycle(n) => p.start < n,
        }
    }

    pub fn target(self, p: NakPath) -> usize {
        match self {
            QuiverKind::Line(_) => p.start + p.len,
            QuiverKind::Cycle(n) => (p.start + p.len) % n,
        }
    }

    /// Arrow subscripts along `p`, e.g. `[0, 1, 2]` for `a0a1a2`.
    pub fn arrows_of(self, p: NakPath) -> Vec<usize> {
        (0..p.len)
            .map(|k| match self {
                QuiverKind::Line(_) => p.start + k,
                QuiverKind::Cycle(n) => (p.start + k) % n,
            })
            .collect()
    }

    /// Human-readable form: `e3` for idempotents, `a0a1a2` otherwise.
    pub fn path_name(self, p: NakPath) -> String {
        if p.len == 0 {
            return format!("e{}", p.start);
        }
        self.arrows_of(p).iter().map(|a| format!("a{a}")).collect()
    }

    /// Whether `r` occurs as a contiguous subpath of `p`.
    pub fn is_subpath(self, r: NakPath, p: NakPath) -> bool {
        if r.len > p.len {
            return false;
        }
        match self.offset(p.start, r.start) {
            Some(k) => k <= p.len - r.len,
            None => false,
        }
    }
}

/// A path in `L_n` or `C_n`; `len == 0` is the idempotent at `start`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NakPath {
    pub start: usize,
    pub len: usize,
}

impl NakPath {
    pub const fn new(start: usize, len: usize) -> Self {
        NakPath { start, len }
    }
}

impl fmt::Display for NakPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.start, self.len)
    }
}

/// A minimal set of monomial relations, sorted by `(start, len)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RelationSet {
    relations: Vec<NakPath>,
}

impl RelationSet {
    pub fn as_slice(&self) -> &[NakPath] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn contains(&self, p: NakPath) -> bool {
        self.relations.binary_search(&p).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &NakPath> {
        self.relations.iter()
    }

    /// Relations of length exactly `m`.
    pub fn of_length(&self, m: usize) -> impl Iterator<Item = &NakPath> {
        self.relations.iter().filter(move |r| r.len == m)
    }

    pub fn max_len(&self) -> usize {
        self.relations.iter().map(|r| r.len).max().unwrap_or(0)
    }
}

fn check_generator(kind: QuiverKind, g: NakPath) -> Result<()> {
    if !kind.path_fits(g) {
        return Err(Error::OutOfRange(g.to_string()));
    }
    if g.len < 2 {
        return Err(Error::ShortRelation(g.to_string()));
    }
    Ok(())
}

/// The unique minimal generating set of the monomial ideal spanned by
/// `generators`: every generator containing another one as a proper subpath
/// is absorbed.
pub fn minimal_relations(kind: QuiverKind, generators: &[NakPath]) -> Result<RelationSet> {
    if kind.n() == 0 {
        return Err(Error::Invalid("quiver must have at least one vertex".into()));
    }
    for &g in generators {
        check_generator(kind, g)?;
    }
    let mut gens: Vec<NakPath> = generators.to_vec();
    gens.sort();
    gens.dedup();
    let relations: Vec<NakPath> = gens
        .iter()
        .copied()
        .filter(|&g| !gens.iter().any(|&h| h != g && kind.is_subpath(h, g)))
        .collect();
    if kind.is_cycle() && relations.is_empty() {
        return Err(Error::InfiniteDimension);
    }
    Ok(RelationSet { relations })
}

/// Composition lengths of the indecomposable projectives, one per vertex in
/// vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KupischSeries(pub Vec<usize>);

impl KupischSeries {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// `kQ/I` for a Nakayama quiver `Q` and a minimal relation set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NakayamaPresentation {
    kind: QuiverKind,
    relations: RelationSet,
    // c_i per vertex index; nonzero paths from vertex i are exactly those of length < c_i.
    kupisch: Vec<usize>,
}

impl NakayamaPresentation {
    /// Validates `generators` and minimizes them.
    pub fn new(kind: QuiverKind, generators: &[NakPath]) -> Result<Self> {
        let relations = minimal_relations(kind, generators)?;
        let mut pres = NakayamaPresentation {
            kind,
            relations,
            kupisch: Vec::new(),
        };
        pres.kupisch = pres.compute_kupisch();
        Ok(pres)
    }

    pub fn line(n: usize, generators: &[(usize, usize)]) -> Result<Self> {
        let gens: Vec<NakPath> = generators.iter().map(|&(s, l)| NakPath::new(s, l)).collect();
        Self::new(QuiverKind::Line(n), &gens)
    }

    pub fn cycle(n: usize, generators: &[(usize, usize)]) -> Result<Self> {
        let gens: Vec<NakPath> = generators.iter().map(|&(s, l)| NakPath::new(s, l)).collect();
        Self::new(QuiverKind::Cycle(n), &gens)
    }

    /// The truncated cycle algebra `C(n, r)`: every path of length `r` vanishes.
    pub fn truncated_cycle(n: usize, r: usize) -> Result<Self> {
        let gens: Vec<(usize, usize)> = (0..n).map(|i| (i, r)).collect();
        Self::cycle(n, &gens)
    }

    pub fn kind(&self) -> QuiverKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.kind.n()
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.kind.vertices()
    }

    /// True iff some relation is a contiguous subpath of `p`.
    pub fn is_zero_path(&self, p: NakPath) -> bool {
        self.relations.iter().any(|&r| self.kind.is_subpath(r, p))
    }

    /// Fast nonzero test via the cached Kupisch series. Paths that do not fit
    /// in the quiver are reported as zero.
    pub fn is_nonzero(&self, p: NakPath) -> bool {
        self.kind.contains_vertex(p.start) && p.len < self.kupisch[self.kind.index(p.start)]
    }

    fn compute_kupisch(&self) -> Vec<usize> {
        let bound = self.kind.n() + self.relations.max_len();
        self.kind
            .vertices()
            .into_iter()
            .map(|v| {
                let mut m = 0;
                loop {
                    let p = NakPath::new(v, m);
                    if !self.kind.path_fits(p) || self.is_zero_path(p) {
                        break m;
                    }
                    m += 1;
                    debug_assert!(m <= bound);
                }
            })
            .collect()
    }

    pub fn kupisch_series(&self) -> KupischSeries {
        KupischSeries(self.kupisch.clone())
    }

    /// `c_v` for a single vertex.
    pub fn projective_length(&self, v: usize) -> usize {
        self.kupisch[self.kind.index(v)]
    }

    /// All nonzero paths from `i` to `j`, shortest first.
    pub fn nonzero_paths_between(&self, i: usize, j: usize) -> Vec<NakPath> {
        let Some(first) = self.kind.offset(i, j) else {
            return Vec::new();
        };
        let step = match self.kind {
            QuiverKind::Line(_) => usize::MAX,
            QuiverKind::Cycle(n) => n,
        };
        let limit = self.projective_length(i);
        let mut out = Vec::new();
        let mut len = first;
        while len < limit {
            out.push(NakPath::new(i, len));
            len = match len.checked_add(step) {
                Some(l) => l,
                None => break,
            };
        }
        out
    }

    /// `dim_k A`.
    pub fn dimension(&self) -> usize {
        self.kupisch.iter().sum()
    }

    /// Concatenation `pq`, or `None` when the product vanishes in `A`.
    /// Panics if `q` does not start where `p` ends.
    pub fn compose(&self, p: NakPath, q: NakPath) -> Option<NakPath> {
        assert_eq!(self.kind.target(p), q.start, "paths are not composable");
        let pq = NakPath::new(p.start, p.len + q.len);
        self.is_nonzero(pq).then_some(pq)
    }

    pub fn path_name(&self, p: NakPath) -> String {
        self.kind.path_name(p)
    }

    /// Relations rendered as `a0a1a2`.
    pub fn relation_names(&self) -> Vec<String> {
        self.relations.iter().map(|&r| self.path_name(r)).collect()
    }
}

impl fmt::Display for NakayamaPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={}", self.kind.name(), self.n())?;
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
            write!(f, " rel={}", rels.join(","))?;
        }
        Ok(())
    }
}

/// Rebuilds the presentation whose Kupisch series is `series`.
pub fn relations_from_kupisch(kind: QuiverKind, series: &KupischSeries) -> Result<NakayamaPresentation> {
    let n = kind.n();
    let c = &series.0;
    if n == 0 {
        return Err(Error::Invalid("quiver must have at least one vertex".into()));
    }
    if c.len() != n {
        return Err(Error::InadmissibleKupisch(format!(
            "expected {n} entries, got {}",
            c.len()
        )));
    }
    let mut gens = Vec::new();
    match kind {
        QuiverKind::Line(_) => {
            if c[n - 1] != 1 {
                return Err(Error::InadmissibleKupisch("last entry of a line series must be 1".into()));
            }
            for idx in 0..n - 1 {
                let v = idx + 1;
                if c[idx] < 2 || c[idx] > n - idx {
                    return Err(Error::InadmissibleKupisch(format!(
                        "c_{v} = {} outside [2, {}]",
                        c[idx],
                        n - idx
                    )));
                }
                if c[idx + 1] + 1 < c[idx] {
                    return Err(Error::InadmissibleKupisch(format!(
                        "c_{} = {} < c_{v} - 1",
                        v + 1,
                        c[idx + 1]
                    )));
                }
                if v + c[idx] <= n && c[idx + 1] >= c[idx] {
                    gens.push(NakPath::new(v, c[idx]));
                }
            }
        }
        QuiverKind::Cycle(_) => {
            for i in 0..n {
                let next = c[(i + 1) % n];
                if c[i] < 2 {
                    return Err(Error::InadmissibleKupisch(format!("c_{i} = {} < 2", c[i])));
                }
                if next + 1 < c[i] {
                    return Err(Error::InadmissibleKupisch(format!(
                        "c_{} = {next} < c_{i} - 1",
                        (i + 1) % n
                    )));
                }
                if next >= c[i] {
                    gens.push(NakPath::new(i, c[i]));
                }
            }
        }
    }
    let pres = NakayamaPresentation::new(kind, &gens)?;
    if pres.kupisch != *c {
        return Err(Error::InadmissibleKupisch(format!(
            "series {c:?} is not realized by a Nakayama presentation"
        )));
    }
    Ok(pres)
}
