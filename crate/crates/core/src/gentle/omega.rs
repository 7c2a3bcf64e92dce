//! The gentle contraction `A^ω` of a class-D algebra and the skewed-gentle
//! algebra `A^Ω` obtained by splitting special vertices.

use std::collections::BTreeSet;

use serde::Serialize;

use super::checks::{check_skewed_gentle, SkewedGentleTriple};
use super::quiver::{Arrow, GeneralPath, GeneralPresentation, GeneralQuiver, SignedRelation};
use crate::classify::check_class_d;
use crate::error::{Error, Result};
use crate::presentation::{NakPath, NakayamaPresentation, QuiverKind};

fn require_class_d(pres: &NakayamaPresentation) -> Result<()> {
    let report = check_class_d(pres);
    if report.in_class_d {
        Ok(())
    } else {
        Err(Error::NotClassD(report.summary()))
    }
}

/// Middle vertices of consecutive 3-relation pairs: `i` with
/// `a_{i-2}a_{i-1}a_i` and `a_{i-1}a_ia_{i+1}` both in `R_A`.
pub fn omega_set(pres: &NakayamaPresentation) -> Result<Vec<usize>> {
    require_class_d(pres)?;
    Ok(raw_omega(pres))
}

fn raw_omega(pres: &NakayamaPresentation) -> Vec<usize> {
    let kind = pres.kind();
    let has3 = |v: Option<usize>| v.is_some_and(|s| pres.relations().contains(NakPath::new(s, 3)));
    kind.vertices()
        .into_iter()
        .filter(|&i| has3(kind.shift(i, -2)) && has3(kind.shift(i, -1)))
        .collect()
}

/// Successors of the vertices in Ω.
pub fn sp_set(pres: &NakayamaPresentation) -> Result<Vec<usize>> {
    let omega = omega_set(pres)?;
    let kind = pres.kind();
    let mut sp: Vec<usize> = omega.iter().filter_map(|&i| kind.shift(i, 1)).collect();
    sp.sort_unstable();
    Ok(sp)
}

/// `A^ω` together with its skewed-gentle triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaContraction {
    pub omega: Vec<usize>,
    pub special: Vec<usize>,
    pub algebra: GeneralPresentation,
    pub triple: SkewedGentleTriple,
}

#[derive(Serialize)]
struct OmegaContractionJson<'a> {
    omega: &'a [usize],
    special: &'a [usize],
    a_omega: &'a GeneralPresentation,
}

impl Serialize for OmegaContraction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OmegaContractionJson {
            omega: &self.omega,
            special: &self.special,
            a_omega: &self.algebra,
        }
        .serialize(s)
    }
}

/// Builds `A^ω = eAe` for `e` the sum of idempotents outside Ω: for each
/// `i ∈ Ω` the arrows `a_{i-1}, a_i` merge into `b_{i-1}: i-1 -> i+1`, and the
/// pair of 3-relations through `i` becomes `a_{i-2}b_{i-1}, b_{i-1}a_{i+1}`.
pub fn build_a_omega(pres: &NakayamaPresentation) -> Result<OmegaContraction> {
    require_class_d(pres)?;
    let kind = pres.kind();
    let omega = raw_omega(pres);
    let in_omega: BTreeSet<usize> = omega.iter().copied().collect();
    let special: Vec<usize> = {
        let mut s: Vec<usize> = omega.iter().filter_map(|&i| kind.shift(i, 1)).collect();
        s.sort_unstable();
        s
    };

    let kept: Vec<usize> = kind.vertices().into_iter().filter(|v| !in_omega.contains(v)).collect();
    let vidx = |v: usize| kept.iter().position(|&w| w == v).expect("vertex survives");

    let subscripts: Vec<usize> = match kind {
        QuiverKind::Line(n) => (1..n).collect(),
        QuiverKind::Cycle(n) => (0..n).collect(),
    };
    let mut arrows = Vec::new();
    // arrow subscript j of A -> index in the new quiver (merged first halves map to b_j)
    let mut arrow_of = vec![None; subscripts.len()];
    for (pos, &j) in subscripts.iter().enumerate() {
        let next = kind.shift(j, 1).expect("arrow target");
        if in_omega.contains(&j) {
            continue;
        }
        let (name, target) = if in_omega.contains(&next) {
            (format!("b{j}"), kind.shift(j, 2).expect("merged arrow target"))
        } else {
            (format!("a{j}"), next)
        };
        arrows.push(Arrow {
            name,
            source: vidx(j),
            target: vidx(target),
        });
        arrow_of[pos] = Some(arrows.len() - 1);
    }
    let quiver = GeneralQuiver::new(kept.iter().map(|v| v.to_string()).collect(), arrows)?;

    let subscript_pos = |j: usize| subscripts.iter().position(|&s| s == j).expect("arrow");
    let mut relations = Vec::new();
    for &r in pres.relations().iter() {
        let path = kind.arrows_of(r);
        let mut mapped = Vec::new();
        let mut k = 0;
        while k < path.len() {
            let j = path[k];
            if in_omega.contains(&j) {
                return Err(Error::Invalid(format!(
                    "relation {} starts inside a merged arrow",
                    pres.path_name(r)
                )));
            }
            let merged = in_omega.contains(&kind.shift(j, 1).expect("arrow target"));
            if merged && k + 1 >= path.len() {
                return Err(Error::Invalid(format!(
                    "relation {} ends inside a merged arrow",
                    pres.path_name(r)
                )));
            }
            mapped.push(arrow_of[subscript_pos(j)].expect("surviving arrow"));
            k += if merged { 2 } else { 1 };
        }
        relations.push(GeneralPath::new(&quiver, mapped)?);
    }
    let algebra = GeneralPresentation::new(
        quiver.clone(),
        relations.iter().cloned().map(SignedRelation::zero).collect(),
    )?;
    let triple = SkewedGentleTriple::new(quiver, special.iter().map(|&v| vidx(v)).collect(), relations)?;
    Ok(OmegaContraction {
        omega,
        special,
        algebra,
        triple,
    })
}

fn split(triple: &SkewedGentleTriple, v: usize) -> Vec<(String, i64)> {
    let name = &triple.quiver.vertices()[v];
    if triple.is_special(v) {
        vec![(format!("{name}+"), 1), (format!("{name}-"), -1)]
    } else {
        vec![(name.clone(), 1)]
    }
}

/// `(Q^sg, R^sg)`: special vertices split into `i+`, `i-`; each arrow `a`
/// yields arrows `(α, a, β)`; each relation `ab` yields, for every choice of
/// outer endpoints, `sum_β λ_β (α,a,β)(β,b,γ)` with `λ = -1` on `i-`.
///
/// Relations are emitted in the order (relation, α, γ).
pub fn build_a_big_omega(triple: &SkewedGentleTriple) -> Result<GeneralPresentation> {
    let report = check_skewed_gentle(triple)?;
    if !report.holds {
        let why: Vec<String> = report.violations.iter().map(|v| format!("{}: {}", v.condition, v.detail)).collect();
        return Err(Error::NotSkewedGentle(why.join("; ")));
    }
    let q = &triple.quiver;
    let mut vertices = Vec::new();
    for v in 0..q.vertices().len() {
        vertices.extend(split(triple, v).into_iter().map(|(n, _)| n));
    }
    let vpos = |name: &str| vertices.iter().position(|v| v == name).expect("split vertex");

    let sign_suffix = |v: usize, label: &str| -> String {
        if triple.is_special(v) {
            label[label.len() - 1..].to_string()
        } else {
            String::new()
        }
    };
    let mut arrows = Vec::new();
    // (alpha, original arrow, beta) -> index
    let mut lookup = std::collections::HashMap::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        for (alpha, _) in split(triple, a.source) {
            for (beta, _) in split(triple, a.target) {
                let name = format!("{}{}{}", a.name, sign_suffix(a.source, &alpha), sign_suffix(a.target, &beta));
                lookup.insert((alpha.clone(), ai, beta.clone()), arrows.len());
                arrows.push(Arrow {
                    name,
                    source: vpos(&alpha),
                    target: vpos(&beta),
                });
            }
        }
    }
    let quiver = GeneralQuiver::new(vertices.clone(), arrows)?;

    let mut relations = Vec::new();
    for rel in &triple.relations {
        let [a, b] = rel.0[..] else {
            return Err(Error::NotApplicable("skewed-gentle relations must have length 2".into()));
        };
        let (arrow_a, arrow_b) = (q.arrow(a), q.arrow(b));
        for (alpha, _) in split(triple, arrow_a.source) {
            for (gamma, _) in split(triple, arrow_b.target) {
                let terms = split(triple, arrow_b.source)
                    .into_iter()
                    .map(|(beta, lambda)| {
                        let first = lookup[&(alpha.clone(), a, beta.clone())];
                        let second = lookup[&(beta.clone(), b, gamma.clone())];
                        (lambda, GeneralPath(vec![first, second]))
                    })
                    .collect();
                relations.push(SignedRelation { terms });
            }
        }
    }
    GeneralPresentation::new(quiver, relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gentle::checks::is_gentle;
    use crate::parse::parse_presentation;

    fn pres(text: &str) -> NakayamaPresentation {
        parse_presentation(text).unwrap()
    }

    #[test]
    fn omega_and_sp_of_examples() {
        let ex1 = pres("cycle n=3 rel=(0,3),(1,3)");
        assert_eq!(omega_set(&ex1).unwrap(), vec![2]);
        assert_eq!(sp_set(&ex1).unwrap(), vec![0]);
        let ex2 = pres("cycle n=4 rel=(0,3),(1,3),(3,2)");
        assert_eq!(omega_set(&ex2).unwrap(), vec![2]);
        assert_eq!(sp_set(&ex2).unwrap(), vec![3]);
        let ex3 = pres("cycle n=6 rel=(0,3),(1,3),(3,3),(4,3)");
        assert_eq!(omega_set(&ex3).unwrap(), vec![2, 5]);
        assert_eq!(sp_set(&ex3).unwrap(), vec![0, 3]);
    }

    #[test]
    fn omega_requires_class_d() {
        let wild = pres("cycle n=3 rel=(0,3),(1,3),(2,3)");
        assert!(matches!(omega_set(&wild), Err(Error::NotClassD(_))));
        assert!(matches!(build_a_omega(&wild), Err(Error::NotClassD(_))));
    }

    #[test]
    fn a_omega_of_example1() {
        let c = build_a_omega(&pres("cycle n=3 rel=(0,3),(1,3)")).unwrap();
        assert_eq!(c.algebra.quiver().vertices(), &["0", "1"]);
        let arrows: Vec<(&str, usize, usize)> = c
            .algebra
            .quiver()
            .arrows()
            .iter()
            .map(|a| (a.name.as_str(), a.source, a.target))
            .collect();
        assert_eq!(arrows, vec![("a0", 0, 1), ("b1", 1, 0)]);
        assert_eq!(c.algebra.relation_strings(false), vec!["a0b1", "b1a0"]);
        assert_eq!(c.triple.special_names(), vec!["0"]);
        assert!(is_gentle(&c.algebra).unwrap().holds);
    }

    #[test]
    fn a_big_omega_of_example1() {
        let c = build_a_omega(&pres("cycle n=3 rel=(0,3),(1,3)")).unwrap();
        let big = build_a_big_omega(&c.triple).unwrap();
        assert_eq!(big.quiver().vertices(), &["0+", "0-", "1"]);
        let mut rels = big.relation_strings(false);
        rels.sort();
        assert_eq!(rels, vec!["a0+b1+", "a0+b1-", "a0-b1+", "a0-b1-", "b1+a0+ - b1-a0-"]);
        assert!(big.relations().iter().all(|r| r.is_zero_relation() || r.is_commutativity()));
    }

    #[test]
    fn gentle_input_degenerates() {
        let c = build_a_omega(&pres("cycle n=4 rel=(0,2),(1,2),(2,2),(3,2)")).unwrap();
        assert!(c.omega.is_empty());
        assert!(c.special.is_empty());
        assert_eq!(c.algebra.relation_strings(false), vec!["a0a1", "a1a2", "a2a3", "a3a0"]);
    }

    #[test]
    fn split_rejects_non_skewed_gentle() {
        let g = GeneralPresentation::from_nakayama(&pres("cycle n=3 rel=(0,2)"));
        let rels: Vec<GeneralPath> = g.zero_relations().unwrap().into_iter().cloned().collect();
        let t = SkewedGentleTriple::new(g.quiver().clone(), vec![2], rels).unwrap();
        assert!(matches!(build_a_big_omega(&t), Err(Error::NotSkewedGentle(_))));
    }
}
