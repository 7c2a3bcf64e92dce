//! Dimension of a path algebra modulo homogeneous relations, by counting
//! paths of each length and subtracting the rank of the ideal in that degree.

use std::collections::HashMap;

use super::quiver::GeneralPresentation;
use crate::error::{Error, Result};
use crate::linalg::{rank, FieldKind, SparseRow};

/// Longest path length examined before giving up.
pub const MAX_PATH_LENGTH: usize = 64;

/// `dim_k kQ/I` together with the dimension of each graded piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDimension {
    pub by_length: Vec<usize>,
}

impl GradedDimension {
    pub fn total(&self) -> usize {
        self.by_length.iter().sum()
    }
}

fn extend(pres: &GeneralPresentation, paths: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let q = pres.quiver();
    let mut out = Vec::new();
    for p in paths {
        let end = q.arrow(*p.last().expect("nonempty path")).target;
        for a in q.arrows_from(end) {
            let mut next = p.clone();
            next.push(a);
            out.push(next);
        }
    }
    out
}

/// Graded dimension over `field`. Relations must be homogeneous.
pub fn graded_dimension(pres: &GeneralPresentation, field: FieldKind) -> Result<GradedDimension> {
    let q = pres.quiver();
    for rel in pres.relations() {
        let len = rel.terms[0].1.len();
        if rel.terms.iter().any(|(_, p)| p.len() != len) {
            return Err(Error::NotApplicable(format!(
                "relation {} is not homogeneous",
                pres.render_relation(rel, false)
            )));
        }
    }
    let mut by_length = vec![q.vertices().len()];
    // paths[l] = all paths of length l (l >= 1)
    let mut paths: Vec<Vec<Vec<usize>>> = vec![Vec::new(), (0..q.arrows().len()).map(|a| vec![a]).collect()];
    let mut len = 1;
    loop {
        if len > MAX_PATH_LENGTH {
            return Err(Error::DimensionBound(MAX_PATH_LENGTH));
        }
        let current = &paths[len];
        if current.is_empty() {
            break;
        }
        let index: HashMap<&[usize], usize> = current.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let mut rows: Vec<SparseRow> = Vec::new();
        for rel in pres.relations() {
            let m = rel.terms[0].1.len();
            if m > len {
                continue;
            }
            let (src, tgt) = (rel.terms[0].1.source(q), rel.terms[0].1.target(q));
            for a in 0..=len - m {
                let b = len - m - a;
                let prefixes: Vec<&[usize]> = if a == 0 {
                    vec![&[]]
                } else {
                    paths[a]
                        .iter()
                        .filter(|p| q.arrow(*p.last().unwrap()).target == src)
                        .map(Vec::as_slice)
                        .collect()
                };
                let suffixes: Vec<&[usize]> = if b == 0 {
                    vec![&[]]
                } else {
                    paths[b].iter().filter(|p| q.arrow(p[0]).source == tgt).map(Vec::as_slice).collect()
                };
                for pre in &prefixes {
                    for suf in &suffixes {
                        let mut row = SparseRow::new();
                        for (c, term) in &rel.terms {
                            let full: Vec<usize> = pre.iter().chain(&term.0).chain(suf.iter()).copied().collect();
                            *row.entry(index[full.as_slice()]).or_insert(0) += c;
                        }
                        row.retain(|_, v| *v != 0);
                        if !row.is_empty() {
                            rows.push(row);
                        }
                    }
                }
            }
        }
        let piece = current.len() - rank(field, &rows);
        if piece == 0 {
            break;
        }
        by_length.push(piece);
        let next = extend(pres, current);
        paths.push(next);
        len += 1;
    }
    Ok(GradedDimension { by_length })
}

/// `dim_k kQ/I` over the rationals.
pub fn algebra_dimension(pres: &GeneralPresentation) -> Result<usize> {
    Ok(graded_dimension(pres, FieldKind::Rational)?.total())
}
