//! Special biserial, gentle and skewed-gentle recognition.

use std::collections::HashSet;

use serde::Serialize;

use super::quiver::{Arrow, GeneralPath, GeneralPresentation, GeneralQuiver, SignedRelation};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: &'static str,
    pub detail: String,
}

/// Verdict plus every violated condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub holds: bool,
    pub violations: Vec<Violation>,
}

impl ConditionReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        ConditionReport {
            holds: violations.is_empty(),
            violations,
        }
    }
}

fn monomial_relations(pres: &GeneralPresentation) -> Result<Vec<&GeneralPath>> {
    pres.zero_relations()
        .ok_or_else(|| Error::NotApplicable("presentation has non-monomial relations".into()))
}

fn biserial_violations(pres: &GeneralPresentation, rels: &[&GeneralPath]) -> Vec<Violation> {
    let q = pres.quiver();
    let quadratic: HashSet<(usize, usize)> = rels
        .iter()
        .filter(|p| p.len() == 2)
        .map(|p| (p.0[0], p.0[1]))
        .collect();
    let mut out = Vec::new();
    for (v, name) in q.vertices().iter().enumerate() {
        let outgoing = q.arrows_from(v).count();
        let incoming = q.arrows_into(v).count();
        if outgoing > 2 {
            out.push(Violation {
                condition: "G1",
                detail: format!("{outgoing} arrows start at vertex {name}"),
            });
        }
        if incoming > 2 {
            out.push(Violation {
                condition: "G1",
                detail: format!("{incoming} arrows end at vertex {name}"),
            });
        }
    }
    for (b, arrow) in q.arrows().iter().enumerate() {
        let before: Vec<usize> = q.arrows_into(arrow.source).filter(|&a| !quadratic.contains(&(a, b))).collect();
        if before.len() > 1 {
            out.push(Violation {
                condition: "G2",
                detail: format!("{} arrows a with a{} nonzero", before.len(), arrow.name),
            });
        }
        let after: Vec<usize> = q.arrows_from(arrow.target).filter(|&c| !quadratic.contains(&(b, c))).collect();
        if after.len() > 1 {
            out.push(Violation {
                condition: "G2",
                detail: format!("{} arrows c with {}c nonzero", after.len(), arrow.name),
            });
        }
    }
    out
}

/// Conditions G1 and G2 for a presentation with zero relations.
pub fn is_special_biserial(pres: &GeneralPresentation) -> Result<ConditionReport> {
    let rels = monomial_relations(pres)?;
    Ok(ConditionReport::from_violations(biserial_violations(pres, &rels)))
}

/// Conditions G1 through G4.
pub fn is_gentle(pres: &GeneralPresentation) -> Result<ConditionReport> {
    let rels = monomial_relations(pres)?;
    let q = pres.quiver();
    let mut violations = biserial_violations(pres, &rels);
    for r in &rels {
        if r.len() != 2 {
            violations.push(Violation {
                condition: "G3",
                detail: format!("relation {} has length {}", q.path_name(r), r.len()),
            });
        }
    }
    let quadratic: HashSet<(usize, usize)> = rels
        .iter()
        .filter(|p| p.len() == 2)
        .map(|p| (p.0[0], p.0[1]))
        .collect();
    for (b, arrow) in q.arrows().iter().enumerate() {
        let before = q.arrows_into(arrow.source).filter(|&a| quadratic.contains(&(a, b))).count();
        if before > 1 {
            violations.push(Violation {
                condition: "G4",
                detail: format!("{before} arrows a with a{} in I", arrow.name),
            });
        }
        let after = q.arrows_from(arrow.target).filter(|&c| quadratic.contains(&(b, c))).count();
        if after > 1 {
            violations.push(Violation {
                condition: "G4",
                detail: format!("{after} arrows c with {}c in I", arrow.name),
            });
        }
    }
    Ok(ConditionReport::from_violations(violations))
}

/// A quiver with a set of special vertices and zero relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewedGentleTriple {
    pub quiver: GeneralQuiver,
    /// Indices of special vertices, sorted.
    pub special: Vec<usize>,
    pub relations: Vec<GeneralPath>,
}

impl SkewedGentleTriple {
    pub fn new(quiver: GeneralQuiver, mut special: Vec<usize>, relations: Vec<GeneralPath>) -> Result<Self> {
        special.sort_unstable();
        special.dedup();
        if special.iter().any(|&v| v >= quiver.vertices().len()) {
            return Err(Error::Invalid("special vertex out of range".into()));
        }
        Ok(SkewedGentleTriple {
            quiver,
            special,
            relations,
        })
    }

    pub fn special_names(&self) -> Vec<String> {
        self.special.iter().map(|&v| self.quiver.vertices()[v].clone()).collect()
    }

    pub fn is_special(&self, v: usize) -> bool {
        self.special.binary_search(&v).is_ok()
    }

    /// The triple's own quiver and relations, without the special loops.
    pub fn presentation(&self) -> Result<GeneralPresentation> {
        GeneralPresentation::new(
            self.quiver.clone(),
            self.relations.iter().cloned().map(SignedRelation::zero).collect(),
        )
    }

    /// `(Q^sp, R^sp)`: a loop `e<v>` with square-zero relation at every
    /// special vertex.
    pub fn with_special_loops(&self) -> Result<GeneralPresentation> {
        let mut arrows: Vec<Arrow> = self.quiver.arrows().to_vec();
        let mut relations: Vec<SignedRelation> = self.relations.iter().cloned().map(SignedRelation::zero).collect();
        for &v in &self.special {
            let base = format!("e{}", self.quiver.vertices()[v]);
            let mut name = base.clone();
            while arrows.iter().any(|a| a.name == name) {
                name.push('\'');
            }
            arrows.push(Arrow {
                name,
                source: v,
                target: v,
            });
            let idx = arrows.len() - 1;
            relations.push(SignedRelation::zero(GeneralPath(vec![idx, idx])));
        }
        let quiver = GeneralQuiver::new(self.quiver.vertices().to_vec(), arrows)?;
        GeneralPresentation::new(quiver, relations)
    }
}

/// A triple is skewed-gentle iff `(Q^sp, R^sp)` is gentle.
pub fn check_skewed_gentle(triple: &SkewedGentleTriple) -> Result<ConditionReport> {
    is_gentle(&triple.with_special_loops()?)
}
