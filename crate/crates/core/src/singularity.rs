//! Relation cycles of gentle algebras and the singularity-category descriptor
//! `prod_c D^b(mod k)/[l(c)]` of derived tame cycle Nakayama algebras.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::classify::{classify, Verdict, Witness};
use crate::error::{Error, Result};
use crate::gentle::{build_a_omega, is_gentle, GeneralPresentation};
use crate::presentation::{NakayamaPresentation, QuiverKind};

/// Rotation classes of repetition-free arrow cycles `w_1 .. w_m` with every
/// `w_k w_{k+1}` (indices mod `m`) a relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleSet {
    /// Arrow indices, each cycle rotated to its lexicographically least form.
    pub cycles: Vec<Vec<usize>>,
    pub names: Vec<Vec<String>>,
}

impl CycleSet {
    pub fn lengths(&self) -> Vec<usize> {
        let mut l: Vec<usize> = self.cycles.iter().map(Vec::len).collect();
        l.sort_unstable();
        l
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }
}

pub fn cycle_set(pres: &GeneralPresentation) -> Result<CycleSet> {
    if !is_gentle(pres)?.holds {
        return Err(Error::NotApplicable("cycle sets are computed for gentle presentations".into()));
    }
    let q = pres.quiver();
    let m = q.arrows().len();
    let mut next = vec![Vec::new(); m];
    for p in pres.zero_relations().expect("gentle presentations are monomial") {
        next[p.0[0]].push(p.0[1]);
    }
    // simple cycles whose least arrow is `start`
    let mut found = BTreeSet::new();
    for start in 0..m {
        let mut stack = vec![(start, 0usize)];
        let mut path = vec![start];
        let mut on_path = vec![false; m];
        on_path[start] = true;
        while let Some((node, k)) = stack.last_mut() {
            let node = *node;
            if let Some(&succ) = next[node].get(*k) {
                *k += 1;
                if succ == start {
                    found.insert(path.clone());
                } else if succ > start && !on_path[succ] {
                    on_path[succ] = true;
                    path.push(succ);
                    stack.push((succ, 0));
                }
            } else {
                stack.pop();
                on_path[node] = false;
                path.pop();
            }
        }
    }
    let cycles: Vec<Vec<usize>> = found.into_iter().collect();
    let names = cycles
        .iter()
        .map(|c| c.iter().map(|&a| q.arrow(a).name.clone()).collect())
        .collect();
    Ok(CycleSet { cycles, names })
}

/// Orbit lengths `l(c)` over the cycle set of `A^ω`, next to `|R_A|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityDescriptor {
    pub orbit_lengths: Vec<usize>,
    pub relation_count: usize,
    pub witness: &'static str,
    /// Whether the cycle-set route gives exactly `[|R_A|]`.
    pub agreement: bool,
}

impl fmt::Display for SingularityDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orbit_lengths.is_empty() {
            return write!(f, "0");
        }
        let factors: Vec<String> = self.orbit_lengths.iter().map(|l| format!("D^b(mod k)/[{l}]")).collect();
        write!(f, "{}", factors.join(" x "))
    }
}

fn require_tame_cycle(pres: &NakayamaPresentation) -> Result<()> {
    if !matches!(pres.kind(), QuiverKind::Cycle(_)) {
        return Err(Error::WrongKind { expected: "cycle" });
    }
    if classify(pres).verdict == Verdict::DerivedWild {
        return Err(Error::Wild);
    }
    Ok(())
}

/// Computes the descriptor from `C(A^ω)` and compares it with `|R_A|`.
/// Disagreement is reported through `agreement`, not hidden.
pub fn singularity_descriptor(pres: &NakayamaPresentation) -> Result<SingularityDescriptor> {
    require_tame_cycle(pres)?;
    let a_omega = match classify(pres).witness {
        Witness::Gentle(g) => g,
        _ => build_a_omega(pres)?.algebra,
    };
    let cycles = cycle_set(&a_omega)?;
    let orbit_lengths = cycles.lengths();
    let relation_count = pres.relations().len();
    Ok(SingularityDescriptor {
        agreement: orbit_lengths == [relation_count],
        orbit_lengths,
        relation_count,
        witness: "cycle_set",
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum InvariantVerdict {
    Compatible,
    Incompatible,
}

impl fmt::Display for InvariantVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvariantVerdict::Compatible => "COMPATIBLE",
            InvariantVerdict::Incompatible => "INCOMPATIBLE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub verdict: InvariantVerdict,
    pub relation_counts: [usize; 2],
}

/// Necessary condition for derived equivalence of two tame cycle algebras:
/// equal numbers of minimal relations.
pub fn derived_invariant_check(a: &NakayamaPresentation, b: &NakayamaPresentation) -> Result<InvariantReport> {
    require_tame_cycle(a)?;
    require_tame_cycle(b)?;
    let counts = [a.relations().len(), b.relations().len()];
    Ok(InvariantReport {
        verdict: if counts[0] == counts[1] {
            InvariantVerdict::Compatible
        } else {
            InvariantVerdict::Incompatible
        },
        relation_counts: counts,
    })
}
