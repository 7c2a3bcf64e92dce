//! `Hom_K(C, D[s])` as chain maps modulo null-homotopic maps.
//!
//! With `D[s]_k = D_{k-s}`, a chain map is a family `f_k: C_k -> D_{k-s}`
//! with `d^C_k f_{k-1} = f_k d^D_{k-s}` and a null-homotopic map is
//! `f_k = d^C_k h_{k-1} + h_k d^D_{k-s+1}`. Signs of shifted differentials
//! do not affect dimensions and are dropped.

use std::collections::HashMap;

use super::complex::{multiply, PathComb, ProjComplex};
use crate::error::{Error, Result};
use crate::linalg::{rank, FieldKind, SparseRow};
use crate::presentation::{NakPath, NakayamaPresentation};

/// Basis of `Hom(A_i, A_j)`: the nonzero paths from `i` to `j`.
pub fn hom_basis(pres: &NakayamaPresentation, i: usize, j: usize) -> Vec<NakPath> {
    pres.nonzero_paths_between(i, j)
}

/// Coordinates of maps `X_k -> Y_{k+offset}` for all `k`: one variable per
/// (degree, source summand, target summand, basis path).
struct MapSpace {
    index: HashMap<(i32, usize, usize, NakPath), usize>,
    len: usize,
}

impl MapSpace {
    fn new(pres: &NakayamaPresentation, x: &ProjComplex, y: &ProjComplex, offset: i32) -> Self {
        let mut index = HashMap::new();
        let mut len = 0;
        for (&k, src) in x.terms() {
            let tgt = y.term(k + offset);
            for (a, &u) in src.iter().enumerate() {
                for (b, &v) in tgt.iter().enumerate() {
                    for p in hom_basis(pres, u, v) {
                        index.insert((k, a, b, p), len);
                        len += 1;
                    }
                }
            }
        }
        MapSpace { index, len }
    }

    fn var(&self, k: i32, a: usize, b: usize, p: NakPath) -> usize {
        self.index[&(k, a, b, p)]
    }
}

fn accumulate(row: &mut SparseRow, col: usize, c: i64) {
    let e = row.entry(col).or_insert(0);
    *e += c;
    if *e == 0 {
        row.remove(&col);
    }
}

/// Dimension of `Hom_K(c, d[shift])` over `field`.
pub fn hom_homotopy(c: &ProjComplex, d: &ProjComplex, shift: i32, field: FieldKind) -> Result<usize> {
    if c.presentation() != d.presentation() {
        return Err(Error::IncompatiblePresentations);
    }
    let pres = c.presentation();
    let f = MapSpace::new(pres, c, d, -shift);
    if f.len == 0 {
        return Ok(0);
    }

    // chain map equations: rows indexed by (k, a, c', path), columns f-variables
    let mut eqs: HashMap<(i32, usize, usize, NakPath), SparseRow> = HashMap::new();
    for (&k, src) in c.terms() {
        let low = d.term(k - shift - 1);
        for a in 0..src.len() {
            for cc in 0..low.len() {
                // d^C_k f_{k-1}
                for b in 0..c.term(k - 1).len() {
                    let dc = c.differential(k, a, b).to_vec();
                    if dc.is_empty() {
                        continue;
                    }
                    for p in hom_basis(pres, c.term(k - 1)[b], low[cc]) {
                        let col = f.var(k - 1, b, cc, p);
                        for &(coef, q) in &multiply(pres, &dc, &vec![(1, p)]) {
                            accumulate(eqs.entry((k, a, cc, q)).or_default(), col, coef);
                        }
                    }
                }
                // - f_k d^D_{k-s}
                let mid = d.term(k - shift);
                for b in 0..mid.len() {
                    let dd = d.differential(k - shift, b, cc).to_vec();
                    if dd.is_empty() {
                        continue;
                    }
                    for p in hom_basis(pres, src[a], mid[b]) {
                        let col = f.var(k, a, b, p);
                        for &(coef, q) in &multiply(pres, &vec![(1, p)], &dd) {
                            accumulate(eqs.entry((k, a, cc, q)).or_default(), col, -coef);
                        }
                    }
                }
            }
        }
    }
    let eq_rows: Vec<SparseRow> = eqs.into_values().filter(|r| !r.is_empty()).collect();
    let cycles = f.len - rank(field, &eq_rows);

    // homotopies h_k: C_k -> D_{k-s+1}, mapped into f-coordinates
    let h = MapSpace::new(pres, c, d, 1 - shift);
    let mut images: Vec<SparseRow> = Vec::with_capacity(h.len);
    let mut h_vars: Vec<(i32, usize, usize, NakPath)> = h.index.keys().copied().collect();
    h_vars.sort();
    for (k, a, b, p) in h_vars {
        let mut row = SparseRow::new();
        let hp: PathComb = vec![(1, p)];
        // contributes d^C_{k+1} h_k to f_{k+1}
        let up = c.term(k + 1);
        for (a2, _) in up.iter().enumerate() {
            let dc = c.differential(k + 1, a2, a).to_vec();
            for &(coef, q) in &multiply(pres, &dc, &hp) {
                accumulate(&mut row, f.var(k + 1, a2, b, q), coef);
            }
        }
        // contributes h_k d^D_{k-s+1} to f_k
        let tgt = d.term(k - shift);
        for (b2, _) in tgt.iter().enumerate() {
            let dd = d.differential(k - shift + 1, b, b2).to_vec();
            for &(coef, q) in &multiply(pres, &hp, &dd) {
                accumulate(&mut row, f.var(k, a, b2, q), coef);
            }
        }
        if !row.is_empty() {
            images.push(row);
        }
    }
    let boundaries = rank(field, &images);
    debug_assert!(boundaries <= cycles);
    Ok(cycles - boundaries)
}
