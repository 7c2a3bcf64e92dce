//! Bounded complexes of projective modules over a Nakayama algebra.
//!
//! Degrees are homological: `d_k: C_k -> C_{k-1}`. A map `A_u -> A_v` between
//! indecomposable projectives is right multiplication by a combination of
//! paths from `u` to `v`, so composition is path concatenation left to right.
//! Differential matrices are indexed `[source summand][target summand]`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{NakPath, NakayamaPresentation};

/// A formal combination `sum c_k p_k` of nonzero paths sharing endpoints.
pub type PathComb = Vec<(i64, NakPath)>;

/// `x * y` in `A`, dropping vanishing products and cancelled terms.
pub fn multiply(pres: &NakayamaPresentation, x: &PathComb, y: &PathComb) -> PathComb {
    let mut acc: BTreeMap<NakPath, i64> = BTreeMap::new();
    for &(c, p) in x {
        for &(e, q) in y {
            if let Some(pq) = pres.compose(p, q) {
                *acc.entry(pq).or_insert(0) += c * e;
            }
        }
    }
    acc.into_iter().filter(|&(_, c)| c != 0).map(|(p, c)| (c, p)).collect()
}

fn add_into(acc: &mut BTreeMap<NakPath, i64>, x: &PathComb) {
    for &(c, p) in x {
        *acc.entry(p).or_insert(0) += c;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjComplex {
    pres: NakayamaPresentation,
    terms: BTreeMap<i32, Vec<usize>>,
    diffs: BTreeMap<i32, Vec<Vec<PathComb>>>,
}

impl ProjComplex {
    /// Validates shapes, path endpoints, minimality and `d^2 = 0`.
    pub fn new(
        pres: NakayamaPresentation,
        terms: BTreeMap<i32, Vec<usize>>,
        diffs: BTreeMap<i32, Vec<Vec<PathComb>>>,
    ) -> Result<Self> {
        let terms: BTreeMap<i32, Vec<usize>> = terms.into_iter().filter(|(_, t)| !t.is_empty()).collect();
        let kind = pres.kind();
        for (k, vs) in &terms {
            if let Some(v) = vs.iter().find(|&&v| !kind.contains_vertex(v)) {
                return Err(Error::InvalidComplex(format!("degree {k}: no vertex {v}")));
            }
        }
        let empty = Vec::new();
        for (&k, d) in &diffs {
            let src = terms.get(&k).unwrap_or(&empty);
            let tgt = terms.get(&(k - 1)).unwrap_or(&empty);
            if d.len() != src.len() || d.iter().any(|row| row.len() != tgt.len()) {
                return Err(Error::InvalidComplex(format!(
                    "d_{k} must be a {} x {} matrix",
                    src.len(),
                    tgt.len()
                )));
            }
            for (a, row) in d.iter().enumerate() {
                for (b, entry) in row.iter().enumerate() {
                    for &(c, p) in entry {
                        if c == 0 {
                            return Err(Error::InvalidComplex(format!("d_{k}[{a}][{b}] has a zero coefficient")));
                        }
                        if p.start != src[a] || !kind.path_fits(p) || kind.target(p) != tgt[b] {
                            return Err(Error::InvalidComplex(format!(
                                "d_{k}[{a}][{b}]: path {} does not run from {} to {}",
                                pres.path_name(p),
                                src[a],
                                tgt[b]
                            )));
                        }
                        if p.len == 0 {
                            return Err(Error::InvalidComplex(format!(
                                "d_{k}[{a}][{b}] is not in the radical"
                            )));
                        }
                        if !pres.is_nonzero(p) {
                            return Err(Error::InvalidComplex(format!(
                                "d_{k}[{a}][{b}]: path {} is zero",
                                pres.path_name(p)
                            )));
                        }
                    }
                }
            }
        }
        let c = ProjComplex { pres, terms, diffs };
        c.check_square_zero()?;
        Ok(c)
    }

    /// `A_v` concentrated in `degree`.
    pub fn stalk(pres: &NakayamaPresentation, vertex: usize, degree: i32) -> Result<Self> {
        Self::new(pres.clone(), BTreeMap::from([(degree, vec![vertex])]), BTreeMap::new())
    }

    pub fn presentation(&self) -> &NakayamaPresentation {
        &self.pres
    }

    pub fn terms(&self) -> &BTreeMap<i32, Vec<usize>> {
        &self.terms
    }

    /// Summands in degree `k` (empty outside the support).
    pub fn term(&self, k: i32) -> &[usize] {
        self.terms.get(&k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `d_k[a][b]`, zero when absent.
    pub fn differential(&self, k: i32, a: usize, b: usize) -> &[(i64, NakPath)] {
        self.diffs
            .get(&k)
            .and_then(|d| d.get(a))
            .and_then(|row| row.get(b))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// `(min, max)` degree of the support, or `None` for the zero complex.
    pub fn support(&self) -> Option<(i32, i32)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    fn check_square_zero(&self) -> Result<()> {
        let Some((lo, hi)) = self.support() else {
            return Ok(());
        };
        for k in lo + 2..=hi {
            let (src, tgt) = (self.term(k).len(), self.term(k - 2).len());
            for a in 0..src {
                for c in 0..tgt {
                    let mut acc = BTreeMap::new();
                    for b in 0..self.term(k - 1).len() {
                        let x = self.differential(k, a, b).to_vec();
                        let y = self.differential(k - 1, b, c).to_vec();
                        add_into(&mut acc, &multiply(&self.pres, &x, &y));
                    }
                    if acc.values().any(|&v| v != 0) {
                        return Err(Error::InvalidComplex(format!("d_{}d_{} != 0 at [{a}][{c}]", k, k - 1)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Direct sum; all summands must live over the same presentation.
    pub fn direct_sum(parts: &[ProjComplex]) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidComplex("empty direct sum".into()));
        };
        if parts.iter().any(|p| p.pres != first.pres) {
            return Err(Error::IncompatiblePresentations);
        }
        let mut terms: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        // offsets[part][degree] = position of the part's first summand
        let mut offsets: Vec<BTreeMap<i32, usize>> = Vec::new();
        for p in parts {
            let mut off = BTreeMap::new();
            for (&k, vs) in &p.terms {
                let t = terms.entry(k).or_default();
                off.insert(k, t.len());
                t.extend(vs);
            }
            offsets.push(off);
        }
        let mut diffs: BTreeMap<i32, Vec<Vec<PathComb>>> = BTreeMap::new();
        for (&k, vs) in &terms {
            let tgt = terms.get(&(k - 1)).map_or(0, Vec::len);
            if tgt == 0 {
                continue;
            }
            let mut d = vec![vec![PathComb::new(); tgt]; vs.len()];
            for (p, off) in parts.iter().zip(&offsets) {
                let (Some(&ro), Some(&co)) = (off.get(&k), off.get(&(k - 1))) else {
                    continue;
                };
                for a in 0..p.term(k).len() {
                    for b in 0..p.term(k - 1).len() {
                        d[ro + a][co + b] = p.differential(k, a, b).to_vec();
                    }
                }
            }
            diffs.insert(k, d);
        }
        Self::new(first.pres.clone(), terms, diffs)
    }
}

#[derive(Serialize)]
struct ComplexJson {
    terms: BTreeMap<i32, Vec<usize>>,
    differentials: BTreeMap<i32, Vec<Vec<Vec<(i64, String)>>>>,
}

impl Serialize for ProjComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let differentials = self
            .diffs
            .iter()
            .map(|(&k, d)| {
                let rendered = d
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|e| e.iter().map(|&(c, p)| (c, self.pres.path_name(p))).collect())
                            .collect()
                    })
                    .collect();
                (k, rendered)
            })
            .collect();
        ComplexJson {
            terms: self.terms.clone(),
            differentials,
        }
        .serialize(s)
    }
}
