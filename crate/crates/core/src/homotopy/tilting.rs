//! Two-term tilting complexes over cycle Nakayama algebras and their
//! verification: Hom-vanishing in nonzero shifts, generation, and the
//! dimension of the endomorphism algebra.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::complex::ProjComplex;
use super::hom::hom_homotopy;
use crate::classify::check_class_d;
use crate::error::{Error, Result};
use crate::gentle::{algebra_dimension, Arrow, GeneralPresentation, GeneralQuiver, SignedRelation};
use crate::gentle::omega::omega_set;
use crate::linalg::FieldKind;
use crate::presentation::{NakPath, NakayamaPresentation, QuiverKind};

/// An indecomposable summand of a tilting complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Summand {
    /// `A_vertex` in degree 0.
    Stalk { vertex: usize },
    /// `A_source -> A_target` in degrees 1 and 0, right multiplication by `path`.
    TwoTerm { source: usize, target: usize, path: NakPath },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiltingComplex {
    pub summands: Vec<Summand>,
    total: ProjComplex,
}

impl TiltingComplex {
    pub fn new(pres: &NakayamaPresentation, summands: Vec<Summand>) -> Result<Self> {
        let parts = summands
            .iter()
            .map(|s| match *s {
                Summand::Stalk { vertex } => ProjComplex::stalk(pres, vertex, 0),
                Summand::TwoTerm { source, target, path } => ProjComplex::new(
                    pres.clone(),
                    BTreeMap::from([(1, vec![source]), (0, vec![target])]),
                    BTreeMap::from([(1, vec![vec![vec![(1, path)]]])]),
                ),
            })
            .collect::<Result<Vec<_>>>()?;
        let total = ProjComplex::direct_sum(&parts)?;
        Ok(TiltingComplex { summands, total })
    }

    /// The direct sum of all summands.
    pub fn total(&self) -> &ProjComplex {
        &self.total
    }
}

impl Serialize for TiltingComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_json::json!({ "summands": self.summands, "complex": self.total }).serialize(s)
    }
}

fn require_cycle(pres: &NakayamaPresentation) -> Result<usize> {
    match pres.kind() {
        QuiverKind::Cycle(n) => Ok(n),
        QuiverKind::Line(_) => Err(Error::WrongKind { expected: "cycle" }),
    }
}

/// `T_i = A_i` for `i+1 ∉ Ω` and `T_i = (A_i -> A_{i+1})` by `a_i` otherwise.
pub fn build_tilting_omega(pres: &NakayamaPresentation) -> Result<TiltingComplex> {
    require_cycle(pres)?;
    let omega: BTreeSet<usize> = omega_set(pres)?.into_iter().collect();
    if omega.is_empty() {
        return Err(Error::Hypothesis("Ω is empty".into()));
    }
    let kind = pres.kind();
    let summands = kind
        .vertices()
        .into_iter()
        .map(|i| {
            let next = kind.shift(i, 1).expect("cycle");
            if omega.contains(&next) {
                Summand::TwoTerm {
                    source: i,
                    target: next,
                    path: NakPath::new(i, 1),
                }
            } else {
                Summand::Stalk { vertex: i }
            }
        })
        .collect();
    TiltingComplex::new(pres, summands)
}

/// Relation set `{a0a1a2} ∪ {a_{i-1}a_i : i ≠ 1, 2}` on `C_n`.
fn long_relation_relations(n: usize) -> Vec<(usize, usize)> {
    let mut rels = vec![(0, 3)];
    rels.extend((2..n).map(|s| (s, 2)));
    rels
}

/// `T_1 = (A_1 -> A_2)` by `a_1`, all other summands stalks. Requires the
/// isolated-relation family `{a0a1a2} ∪ {a_{i-1}a_i : i ≠ 1, 2}` with `n ≥ 4`.
pub fn build_tilting_long_relation(pres: &NakayamaPresentation) -> Result<TiltingComplex> {
    let n = require_cycle(pres)?;
    if n < 4 {
        return Err(Error::Hypothesis(format!("the family needs n >= 4, got n = {n}")));
    }
    if *pres != NakayamaPresentation::cycle(n, &long_relation_relations(n))? {
        return Err(Error::Hypothesis(format!(
            "relations must be a0a1a2 and a_(i-1)a_i for i not in {{1, 2}}; got {}",
            pres.relation_names().join(", ")
        )));
    }
    let summands = (0..n)
        .map(|i| {
            if i == 1 {
                Summand::TwoTerm {
                    source: 1,
                    target: 2,
                    path: NakPath::new(1, 1),
                }
            } else {
                Summand::Stalk { vertex: i }
            }
        })
        .collect();
    TiltingComplex::new(pres, summands)
}

/// The cycle algebra matching [`build_tilting_long_relation`] for a given `n`.
pub fn long_relation_algebra(n: usize) -> Result<NakayamaPresentation> {
    NakayamaPresentation::cycle(n, &long_relation_relations(n))
}

/// The expected endomorphism algebra `B` of the long-relation family: arrows
/// `a0, a1` are replaced by `b: 0 -> 2`, `c: 2 -> 1`, and `a0a1a2` by
/// `a_{n-1}b, bc, ba2`. `B` is radical square zero.
pub fn long_relation_endomorphism_algebra(n: usize) -> Result<GeneralPresentation> {
    if n < 4 {
        return Err(Error::Hypothesis(format!("the family needs n >= 4, got n = {n}")));
    }
    let mut arrows = vec![
        Arrow {
            name: "b".into(),
            source: 0,
            target: 2,
        },
        Arrow {
            name: "c".into(),
            source: 2,
            target: 1,
        },
    ];
    arrows.extend((2..n).map(|j| Arrow {
        name: format!("a{j}"),
        source: j,
        target: (j + 1) % n,
    }));
    let quiver = GeneralQuiver::new((0..n).map(|v| v.to_string()).collect(), arrows)?;
    let last = format!("a{}", n - 1);
    let mut paths: Vec<Vec<String>> = vec![
        vec![last, "b".into()],
        vec!["b".into(), "c".into()],
        vec!["b".into(), "a2".into()],
    ];
    paths.extend((3..n).map(|i| vec![format!("a{}", i - 1), format!("a{i}")]));
    let relations = paths
        .iter()
        .map(|p| {
            let names: Vec<&str> = p.iter().map(String::as_str).collect();
            quiver.path(&names).map(SignedRelation::zero)
        })
        .collect::<Result<Vec<_>>>()?;
    GeneralPresentation::new(quiver, relations)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationCheck {
    pub pass: bool,
    /// Projectives obtained neither as stalks nor as cones.
    pub uncovered: Vec<usize>,
}

/// Every `A_i` is a stalk summand, or is the source of a two-term summand
/// `A_i -> A_v` whose target `A_v` is itself a stalk summand (then `A_i` is
/// a shifted cone of the map from that summand to `A_v`).
pub fn check_generation(pres: &NakayamaPresentation, t: &TiltingComplex) -> GenerationCheck {
    let stalks: BTreeSet<usize> = t
        .summands
        .iter()
        .filter_map(|s| match s {
            Summand::Stalk { vertex } => Some(*vertex),
            _ => None,
        })
        .collect();
    let mut covered = stalks.clone();
    for s in &t.summands {
        if let Summand::TwoTerm { source, target, .. } = s {
            if stalks.contains(target) {
                covered.insert(*source);
            }
        }
    }
    let uncovered: Vec<usize> = pres.vertices().into_iter().filter(|v| !covered.contains(v)).collect();
    GenerationCheck {
        pass: uncovered.is_empty(),
        uncovered,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiltingReport {
    pub hom_dims: BTreeMap<i32, usize>,
    pub end_dim: usize,
    pub expected_dim: usize,
    pub generation: GenerationCheck,
    pub field: FieldKind,
    pub failures: Vec<String>,
}

impl TiltingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl Serialize for TiltingReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_json::json!({
            "hom_dims": self.hom_dims,
            "end_dim": self.end_dim,
            "expected_dim": self.expected_dim,
            "generation": if self.generation.pass { "pass" } else { "fail" },
            "uncovered": self.generation.uncovered,
            "field": self.field,
            "passed": self.passed(),
            "failures": self.failures,
        })
        .serialize(s)
    }
}

/// Shifts examined: at least `-3..=3`, widened to cover the complex's span.
pub fn shift_range(t: &ProjComplex) -> std::ops::RangeInclusive<i32> {
    let span = t.support().map_or(0, |(lo, hi)| hi - lo);
    let r = 3.max(span + 1);
    -r..=r
}

pub fn verify_tilting(
    pres: &NakayamaPresentation,
    t: &TiltingComplex,
    expected: &GeneralPresentation,
    field: FieldKind,
) -> Result<TiltingReport> {
    if t.total().presentation() != pres {
        return Err(Error::IncompatiblePresentations);
    }
    let mut hom_dims = BTreeMap::new();
    let mut failures = Vec::new();
    for s in shift_range(t.total()) {
        let d = hom_homotopy(t.total(), t.total(), s, field)?;
        if s != 0 && d != 0 {
            failures.push(format!("Hom(T, T[{s}]) has dimension {d}"));
        }
        hom_dims.insert(s, d);
    }
    let end_dim = hom_dims[&0];
    let expected_dim = algebra_dimension(expected)?;
    if end_dim != expected_dim {
        failures.push(format!("dim End(T) = {end_dim} but the expected algebra has dimension {expected_dim}"));
    }
    let generation = check_generation(pres, t);
    if !generation.pass {
        failures.push(format!("projectives {:?} are not generated", generation.uncovered));
    }
    Ok(TiltingReport {
        hom_dims,
        end_dim,
        expected_dim,
        generation,
        field,
        failures,
    })
}

/// `T = ⊕ A_i` in degree 0, whose endomorphism algebra is `A` itself.
pub fn stalk_sum(pres: &NakayamaPresentation) -> Result<TiltingComplex> {
    TiltingComplex::new(pres, pres.vertices().into_iter().map(|vertex| Summand::Stalk { vertex }).collect())
}

/// Sanity check used before running the verifier on class-D input.
pub fn has_omega_tilting(pres: &NakayamaPresentation) -> bool {
    matches!(pres.kind(), QuiverKind::Cycle(_))
        && check_class_d(pres).in_class_d
        && omega_set(pres).is_ok_and(|o| !o.is_empty())
}
