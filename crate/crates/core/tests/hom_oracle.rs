//! Cross-checks `hom_homotopy` against a dense computation on the underlying
//! vector spaces: projectives become explicit matrices, chain-map and
//! homotopy conditions are matrix identities, and ranks come from fraction-free
//! Bareiss elimination over the integers.

use std::collections::BTreeMap;

use nakayama_core::gentle::{build_a_big_omega, build_a_omega};
use nakayama_core::homotopy::{
    build_tilting_long_relation, build_tilting_omega, hom_homotopy, long_relation_algebra, stalk_sum, ProjComplex, Summand,
    TiltingComplex,
};
use nakayama_core::{algebra_dimension, parse_presentation, FieldKind, NakPath, NakayamaPresentation, DEFAULT_PRIME};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

type Dense = Vec<Vec<i64>>;

fn zeros(r: usize, c: usize) -> Dense {
    vec![vec![0; c]; r]
}

fn matmul(a: &Dense, b: &Dense) -> Dense {
    let (r, m, c) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out = zeros(r, c);
    for i in 0..r {
        for k in 0..m {
            if a[i][k] != 0 {
                for j in 0..c {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            for j in col + 1..cols {
                let v = (&m[i][j] * &m[rank][col] - &m[i][col] * &m[rank][j]) / &prev;
                m[i][j] = v;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Basis of `A_u`: nonzero paths ending at `u`.
fn module_basis(a: &NakayamaPresentation, u: usize) -> Vec<NakPath> {
    let kind = a.kind();
    let mut out = Vec::new();
    for s in a.vertices() {
        for len in 0..a.projective_length(s) {
            let p = NakPath::new(s, len);
            if kind.target(p) == u {
                out.push(p);
            }
        }
    }
    out
}

/// Right multiplication by `p: u -> v` as a `dim A_v x dim A_u` matrix.
fn right_mult(a: &NakayamaPresentation, p: NakPath, u: usize, v: usize) -> Dense {
    let (bu, bv) = (module_basis(a, u), module_basis(a, v));
    let mut m = zeros(bv.len(), bu.len());
    for (j, x) in bu.iter().enumerate() {
        let xp = NakPath::new(x.start, x.len + p.len);
        if a.is_nonzero(xp) {
            let i = bv.iter().position(|y| *y == xp).unwrap();
            m[i][j] = 1;
        }
    }
    m
}

struct Spaces {
    /// Degree -> (summand offsets, total dimension).
    layout: BTreeMap<i32, (Vec<usize>, usize)>,
}

impl Spaces {
    fn new(a: &NakayamaPresentation, c: &ProjComplex) -> Self {
        let layout = c
            .terms()
            .iter()
            .map(|(&k, vs)| {
                let mut offs = Vec::new();
                let mut total = 0;
                for &v in vs {
                    offs.push(total);
                    total += module_basis(a, v).len();
                }
                (k, (offs, total))
            })
            .collect();
        Spaces { layout }
    }

    fn dim(&self, k: i32) -> usize {
        self.layout.get(&k).map_or(0, |l| l.1)
    }

    fn offset(&self, k: i32, a: usize) -> usize {
        self.layout[&k].0[a]
    }
}

fn paste(target: &mut Dense, block: &Dense, r0: usize, c0: usize) {
    for (i, row) in block.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            target[r0 + i][c0 + j] += x;
        }
    }
}

/// `d_k` as a matrix `V(C_{k-1}) x V(C_k)`.
fn dense_differential(a: &NakayamaPresentation, c: &ProjComplex, sp: &Spaces, k: i32) -> Dense {
    let mut m = zeros(sp.dim(k - 1), sp.dim(k));
    for (i, &u) in c.term(k).iter().enumerate() {
        for (j, &v) in c.term(k - 1).iter().enumerate() {
            for &(coef, p) in c.differential(k, i, j) {
                let mut block = right_mult(a, p, u, v);
                block.iter_mut().flatten().for_each(|x| *x *= coef);
                paste(&mut m, &block, sp.offset(k - 1, j), sp.offset(k, i));
            }
        }
    }
    m
}

/// Elementary graded maps `C_k -> D_{k+offset}` given by one path.
fn elementary(a: &NakayamaPresentation, c: &ProjComplex, d: &ProjComplex, offset: i32) -> Vec<(i32, usize, usize, NakPath)> {
    let mut out = Vec::new();
    for (&k, src) in c.terms() {
        for (i, &u) in src.iter().enumerate() {
            for (j, &v) in d.term(k + offset).iter().enumerate() {
                for p in a.nonzero_paths_between(u, v) {
                    out.push((k, i, j, p));
                }
            }
        }
    }
    out
}

fn oracle_hom(c: &ProjComplex, d: &ProjComplex, s: i32) -> usize {
    let a = c.presentation();
    let (sc, sd) = (Spaces::new(a, c), Spaces::new(a, d));
    let degrees: Vec<i32> = {
        let (lo, hi) = c.support().unwrap();
        (lo - 1..=hi + 1).collect()
    };
    // a graded map of vector spaces C -> D[t] flattened degree by degree
    let flatten = |blocks: &BTreeMap<i32, Dense>, t: i32| -> Vec<i64> {
        let mut v = Vec::new();
        for &k in &degrees {
            let (r, cdim) = (sd.dim(k - t), sc.dim(k));
            match blocks.get(&k) {
                Some(b) => v.extend(b.iter().flatten()),
                None => v.extend(std::iter::repeat_n(0, r * cdim)),
            }
        }
        v
    };
    let elem_matrix = |k: i32, i: usize, j: usize, p: NakPath, t: i32| -> Dense {
        let mut m = zeros(sd.dim(k - t), sc.dim(k));
        let block = right_mult(a, p, c.term(k)[i], d.term(k - t)[j]);
        paste(&mut m, &block, sd.offset(k - t, j), sc.offset(k, i));
        m
    };
    let dc: BTreeMap<i32, Dense> = degrees.iter().map(|&k| (k, dense_differential(a, c, &sc, k))).collect();
    let dd: BTreeMap<i32, Dense> = degrees
        .iter()
        .map(|&k| (k - s, dense_differential(a, d, &sd, k - s)))
        .chain(degrees.iter().map(|&k| (k - s + 1, dense_differential(a, d, &sd, k - s + 1))))
        .collect();

    let f_vars = elementary(a, c, d, -s);
    if f_vars.is_empty() {
        return 0;
    }
    // chain-map defect f d^C - d^D f, a graded map C -> D[s+1]
    let mut phi = Vec::new();
    for &(k, i, j, p) in &f_vars {
        let f = elem_matrix(k, i, j, p, s);
        let mut blocks = BTreeMap::new();
        // f_k d^C_{k+1}: C_{k+1} -> D_{k-s}
        if sc.dim(k + 1) > 0 {
            blocks.insert(k + 1, matmul(&f, &dc[&(k + 1)]));
        }
        // d^D_{k-s} f_k: C_k -> D_{k-s-1}
        if sd.dim(k - s - 1) > 0 {
            let mut g = matmul(&dd[&(k - s)], &f);
            g.iter_mut().flatten().for_each(|x| *x = -*x);
            blocks.insert(k, g);
        }
        phi.push(flatten(&blocks, s + 1));
    }
    let cycles = f_vars.len() - bareiss_rank(&phi);

    let mut psi = Vec::new();
    for (k, i, j, p) in elementary(a, c, d, 1 - s) {
        let h = elem_matrix(k, i, j, p, s - 1);
        let mut blocks: BTreeMap<i32, Dense> = BTreeMap::new();
        if sc.dim(k + 1) > 0 {
            blocks.insert(k + 1, matmul(&h, &dc[&(k + 1)]));
        }
        if sd.dim(k - s) > 0 {
            let g = matmul(&dd[&(k - s + 1)], &h);
            match blocks.get_mut(&k) {
                Some(b) => {
                    for (x, y) in b.iter_mut().flatten().zip(g.iter().flatten()) {
                        *x += y;
                    }
                }
                None => {
                    blocks.insert(k, g);
                }
            }
        }
        psi.push(flatten(&blocks, s));
    }
    cycles - bareiss_rank(&psi)
}

fn examples() -> Vec<NakayamaPresentation> {
    [
        "cycle n=3 rel=(0,3),(1,3)",
        "cycle n=4 rel=(0,3),(1,3),(3,2)",
        "cycle n=6 rel=(0,3),(1,3),(3,3),(4,3)",
    ]
    .iter()
    .map(|t| parse_presentation(t).unwrap())
    .collect()
}

#[test]
fn bareiss_rank_sanity() {
    assert_eq!(bareiss_rank(&[vec![1, 2], vec![2, 4]]), 1);
    assert_eq!(bareiss_rank(&[vec![0, 1], vec![1, 0], vec![1, 1]]), 2);
    assert_eq!(bareiss_rank(&[]), 0);
}

#[test]
fn tilting_complexes_match_the_dense_oracle() {
    let mut complexes: Vec<TiltingComplex> = examples().iter().map(|a| build_tilting_omega(a).unwrap()).collect();
    for n in 4..=6 {
        complexes.push(build_tilting_long_relation(&long_relation_algebra(n).unwrap()).unwrap());
    }
    for t in &complexes {
        for s in -3..=3 {
            let fast = hom_homotopy(t.total(), t.total(), s, FieldKind::Rational).unwrap();
            assert_eq!(fast, oracle_hom(t.total(), t.total(), s), "shift {s}");
            if s != 0 {
                assert_eq!(fast, 0);
            }
        }
    }
}

#[test]
fn rational_and_prime_fields_agree() {
    let mut complexes: Vec<TiltingComplex> = examples().iter().map(|a| build_tilting_omega(a).unwrap()).collect();
    for n in 4..=6 {
        complexes.push(build_tilting_long_relation(&long_relation_algebra(n).unwrap()).unwrap());
    }
    for t in &complexes {
        for s in -3..=3 {
            assert_eq!(
                hom_homotopy(t.total(), t.total(), s, FieldKind::Rational).unwrap(),
                hom_homotopy(t.total(), t.total(), s, FieldKind::Prime(DEFAULT_PRIME)).unwrap()
            );
        }
    }
}

#[test]
fn endomorphism_dimension_matches_the_skewed_gentle_model_not_the_algebra() {
    for a in examples() {
        let t = build_tilting_omega(&a).unwrap();
        let end = hom_homotopy(t.total(), t.total(), 0, FieldKind::Rational).unwrap();
        let big = build_a_big_omega(&build_a_omega(&a).unwrap().triple).unwrap();
        assert_eq!(end, algebra_dimension(&big).unwrap(), "{a}");
    }
    // the two-term tilt changes total dimension on the first example
    let a = &examples()[0];
    assert_eq!(a.dimension(), 10);
    assert_eq!(hom_homotopy(build_tilting_omega(a).unwrap().total(), build_tilting_omega(a).unwrap().total(), 0, FieldKind::Rational).unwrap(), 8);
}

#[test]
fn stalk_sums_have_endomorphism_algebra_a() {
    for a in examples() {
        let t = stalk_sum(&a).unwrap();
        assert_eq!(oracle_hom(t.total(), t.total(), 0), a.dimension());
    }
}

fn random_summands(a: &NakayamaPresentation, picks: &[(usize, bool)]) -> Vec<Summand> {
    let kind = a.kind();
    picks
        .iter()
        .map(|&(v, two)| {
            let vs = kind.vertices();
            let v = vs[v % vs.len()];
            let target = kind.shift(v, 1);
            match (two, target) {
                (true, Some(t)) => Summand::TwoTerm {
                    source: v,
                    target: t,
                    path: NakPath::new(v, 1),
                },
                _ => Summand::Stalk { vertex: v },
            }
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_two_term_complexes_match_the_oracle(
        seed in 0u64..10_000,
        picks in prop::collection::vec((0usize..8, any::<bool>()), 1..4),
        s in -2i32..=2,
    ) {
        let a = nakayama_core::corpus::sample(seed, 0, 5);
        let t = TiltingComplex::new(&a, random_summands(&a, &picks)).unwrap();
        let u = TiltingComplex::new(&a, random_summands(&a, &picks[..1])).unwrap();
        prop_assert_eq!(
            hom_homotopy(t.total(), u.total(), s, FieldKind::Rational).unwrap(),
            oracle_hom(t.total(), u.total(), s)
        );
        prop_assert_eq!(
            hom_homotopy(u.total(), t.total(), s, FieldKind::Prime(DEFAULT_PRIME)).unwrap(),
            oracle_hom(u.total(), t.total(), s)
        );
    }
}
