//! Derived tame / wild classification of Nakayama algebras.
//!
//! Line algebras are decided by the Euler form; cycle algebras are tame
//! exactly when they lie in class D:
//!
//! * C1: every minimal relation has length 2 or 3;
//! * C2: every 3-relation `(i,3)` has a 3-relation neighbour `(i-1,3)` or `(i+1,3)`;
//! * C3: no three consecutive 3-relations `(i,3), (i+1,3), (i+2,3)`.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::euler::{euler_nonnegative, EulerReport};
use crate::gentle::{build_a_big_omega, build_a_omega, is_gentle, GeneralPresentation, OmegaContraction};
use crate::presentation::{relations_from_kupisch, KupischSeries, NakPath, NakayamaPresentation, QuiverKind};

/// Citation tags attached to verdicts.
pub mod tags {
    pub const EULER_FORM: &str = "euler-form";
    pub const CLASS_D: &str = "class-D";
    pub const GENTLE: &str = "gentle";
    pub const SKEWED_GENTLE: &str = "skewed-gentle-model";
    pub const LONG_RELATION: &str = "long-relation";
    pub const ISOLATED: &str = "isolated-3-relation";
    pub const CONSECUTIVE: &str = "consecutive-3-relations";
    pub const TRUNCATED: &str = "truncated-cycle";
    pub const FULL_SUBALGEBRA: &str = "full-subalgebra";
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionC1 {
    pub holds: bool,
    /// Relations of length at least 4.
    pub long_relations: Vec<NakPath>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionC2 {
    pub holds: bool,
    pub isolated: Vec<NakPath>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionC3 {
    pub holds: bool,
    /// Starts `i` of runs `(i,3), (i+1,3), (i+2,3)`.
    pub runs: Vec<[NakPath; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassDReport {
    pub c1: ConditionC1,
    pub c2: ConditionC2,
    pub c3: ConditionC3,
    pub in_class_d: bool,
}

impl ClassDReport {
    /// First failing condition, in the order C1, C2, C3.
    pub fn first_failure(&self) -> Option<&'static str> {
        if !self.c1.holds {
            Some("C1")
        } else if !self.c2.holds {
            Some("C2")
        } else if !self.c3.holds {
            Some("C3")
        } else {
            None
        }
    }

    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        if !self.c1.holds {
            parts.push(format!("C1 fails ({} long relation(s))", self.c1.long_relations.len()));
        }
        if !self.c2.holds {
            parts.push(format!("C2 fails ({} isolated 3-relation(s))", self.c2.isolated.len()));
        }
        if !self.c3.holds {
            parts.push(format!("C3 fails ({} run(s) of three 3-relations)", self.c3.runs.len()));
        }
        if parts.is_empty() {
            "C1, C2, C3 hold".into()
        } else {
            parts.join("; ")
        }
    }
}

fn three_rel(pres: &NakayamaPresentation, start: Option<usize>) -> Option<NakPath> {
    let p = NakPath::new(start?, 3);
    pres.relations().contains(p).then_some(p)
}

pub fn check_class_d(pres: &NakayamaPresentation) -> ClassDReport {
    let kind = pres.kind();
    let long_relations: Vec<NakPath> = pres.relations().iter().copied().filter(|r| r.len >= 4).collect();
    let isolated = isolated_relations(pres);
    let mut runs = Vec::new();
    for r in pres.relations().of_length(3) {
        if let (Some(b), Some(c)) = (
            three_rel(pres, kind.shift(r.start, 1)),
            three_rel(pres, kind.shift(r.start, 2)),
        ) {
            runs.push([*r, b, c]);
        }
    }
    let c1 = ConditionC1 {
        holds: long_relations.is_empty(),
        long_relations,
    };
    let c2 = ConditionC2 {
        holds: isolated.is_empty(),
        isolated,
    };
    let c3 = ConditionC3 {
        holds: runs.is_empty(),
        runs,
    };
    let in_class_d = c1.holds && c2.holds && c3.holds;
    ClassDReport { c1, c2, c3, in_class_d }
}

/// 3-relations with no 3-relation neighbour on either side.
pub fn isolated_relations(pres: &NakayamaPresentation) -> Vec<NakPath> {
    let kind = pres.kind();
    pres.relations()
        .of_length(3)
        .copied()
        .filter(|r| {
            three_rel(pres, kind.shift(r.start, -1)).is_none() && three_rel(pres, kind.shift(r.start, 1)).is_none()
        })
        .collect()
}

/// `(n, r)` when the presentation is the truncated cycle algebra `C(n, r)`.
pub fn detect_truncated(pres: &NakayamaPresentation) -> Option<(usize, usize)> {
    let QuiverKind::Cycle(n) = pres.kind() else {
        return None;
    };
    let r = pres.relations().iter().next()?.len;
    let full = pres.relations().len() == n
        && pres.relations().iter().all(|p| p.len == r)
        && (0..n).all(|i| pres.relations().contains(NakPath::new(i, r)));
    full.then_some((n, r))
}

/// The full subalgebra `A(i) = eAe` with `e = 1 - e_i`, where the arrows
/// `a_{i-1}, a_i` merge into one arrow. Vertices after `i` shift down by one.
pub fn contract(pres: &NakayamaPresentation, i: usize) -> Result<NakayamaPresentation> {
    let kind = pres.kind();
    let illegal = |reason: &str| Error::IllegalContraction {
        vertex: i,
        reason: reason.into(),
    };
    if !kind.contains_vertex(i) {
        return Err(illegal("no such vertex"));
    }
    let new_kind = match kind {
        QuiverKind::Line(n) => {
            if i == 1 || i == n {
                return Err(illegal("endpoint of a line quiver"));
            }
            QuiverKind::Line(n - 1)
        }
        QuiverKind::Cycle(n) => {
            if n < 2 {
                return Err(illegal("the cycle has a single vertex"));
            }
            QuiverKind::Cycle(n - 1)
        }
    };
    let before = kind.shift(i, -1).expect("interior vertex");
    if !pres.is_nonzero(NakPath::new(before, 2)) {
        return Err(illegal(&format!("a{}a{} vanishes", before, i)));
    }
    let old = |v: usize| if v < i { v } else { v + 1 };
    let series: Vec<usize> = new_kind
        .vertices()
        .into_iter()
        .map(|v| {
            let start = old(v);
            let mut here = v;
            let (mut m, mut len) = (0, 0);
            while let Some(next) = new_kind.shift(here, 1) {
                let step = if old(here) == before { 2 } else { 1 };
                if !pres.is_nonzero(NakPath::new(start, len + step)) {
                    break;
                }
                len += step;
                m += 1;
                here = next;
            }
            m + 1
        })
        .collect();
    relations_from_kupisch(new_kind, &KupischSeries(series))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    DerivedTame,
    DerivedWild,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The algebra itself, checked gentle.
    Gentle(GeneralPresentation),
    /// `A^ω` and the skewed-gentle algebra `A^Ω`.
    SkewedGentle {
        contraction: OmegaContraction,
        a_big_omega: GeneralPresentation,
    },
    Euler(EulerReport),
    FailedCondition {
        condition: &'static str,
        offending: Vec<String>,
    },
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::Gentle(_) => "gentle",
            Witness::SkewedGentle { .. } => "skewed_gentle",
            Witness::Euler(_) => "euler",
            Witness::FailedCondition { .. } => "failed_condition",
        }
    }

    pub fn payload(&self) -> Value {
        match self {
            Witness::Gentle(g) => json!(g),
            Witness::SkewedGentle {
                contraction,
                a_big_omega,
            } => json!({
                "omega": contraction.omega,
                "special": contraction.special,
                "a_omega": contraction.algebra,
                "a_big_omega": a_big_omega,
            }),
            Witness::Euler(e) => json!(e),
            Witness::FailedCondition { condition, offending } => json!({
                "condition": condition,
                "offending": offending,
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub witness: Witness,
    pub class_d: ClassDReport,
    pub citations: Vec<&'static str>,
}

impl Serialize for Classification {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json!({
            "verdict": self.verdict,
            "witness_kind": self.witness.kind(),
            "witness_payload": self.witness.payload(),
            "conditions": {
                "c1": self.class_d.c1,
                "c2": self.class_d.c2,
                "c3": self.class_d.c3,
                "in_class_d": self.class_d.in_class_d,
            },
            "citations": self.citations,
        })
        .serialize(s)
    }
}

fn names(pres: &NakayamaPresentation, paths: &[NakPath]) -> Vec<String> {
    paths.iter().map(|&p| pres.path_name(p)).collect()
}

fn failed_condition(pres: &NakayamaPresentation, report: &ClassDReport) -> Option<Witness> {
    let (condition, offending) = match report.first_failure()? {
        "C1" => ("C1", names(pres, &report.c1.long_relations)),
        "C2" => ("C2", names(pres, &report.c2.isolated)),
        _ => (
            "C3",
            report
                .c3
                .runs
                .iter()
                .map(|run| names(pres, run).join(" "))
                .collect(),
        ),
    };
    Some(Witness::FailedCondition { condition, offending })
}

fn condition_tag(condition: &str) -> &'static str {
    match condition {
        "C1" => tags::LONG_RELATION,
        "C2" => tags::ISOLATED,
        _ => tags::CONSECUTIVE,
    }
}

/// Decides the derived representation type.
pub fn classify(pres: &NakayamaPresentation) -> Classification {
    let class_d = check_class_d(pres);
    if let QuiverKind::Line(_) = pres.kind() {
        let report = euler_nonnegative(pres).expect("line presentation");
        let verdict = if report.psd {
            Verdict::DerivedTame
        } else {
            Verdict::DerivedWild
        };
        return Classification {
            verdict,
            witness: Witness::Euler(report),
            class_d,
            citations: vec![tags::EULER_FORM],
        };
    }
    if let Some(witness) = failed_condition(pres, &class_d) {
        let mut citations = vec![condition_tag(class_d.first_failure().expect("failure"))];
        if detect_truncated(pres).is_some() {
            citations.push(tags::TRUNCATED);
        }
        return Classification {
            verdict: Verdict::DerivedWild,
            witness,
            class_d,
            citations,
        };
    }
    let witness = if pres.relations().max_len() <= 2 {
        let g = GeneralPresentation::from_nakayama(pres);
        debug_assert!(is_gentle(&g).expect("monomial").holds);
        Witness::Gentle(g)
    } else {
        let contraction = build_a_omega(pres).expect("class D");
        let a_big_omega = build_a_big_omega(&contraction.triple).expect("skewed-gentle triple");
        Witness::SkewedGentle {
            contraction,
            a_big_omega,
        }
    };
    let mut citations = vec![tags::CLASS_D];
    citations.push(match witness {
        Witness::Gentle(_) => tags::GENTLE,
        _ => tags::SKEWED_GENTLE,
    });
    if detect_truncated(pres).is_some() {
        citations.push(tags::TRUNCATED);
    }
    Classification {
        verdict: Verdict::DerivedTame,
        witness,
        class_d,
        citations,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionStep {
    pub vertex: usize,
    pub relation: String,
    pub result: String,
    pub verdict: Verdict,
}

/// Why an algebra is derived wild.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WildnessExplanation {
    pub condition: &'static str,
    pub offending: Vec<String>,
    pub citations: Vec<&'static str>,
    pub message: String,
    pub contraction: Option<ContractionStep>,
}

/// Vertex at which to contract a cycle algebra to shorten the long relation `r`.
fn contraction_vertex(pres: &NakayamaPresentation, r: NakPath) -> Option<usize> {
    let kind = pres.kind();
    let n = kind.n();
    if n <= 2 {
        return None;
    }
    let inside = kind.shift(r.start, 1)?;
    if n == 3 || r.len > 4 {
        return Some(inside);
    }
    let span: Vec<usize> = (0..=4).filter_map(|k| kind.shift(r.start, k as isize)).collect();
    kind.vertices()
        .into_iter()
        .find(|&i| {
            !span.contains(&i) && kind.shift(i, -1).is_some_and(|b| pres.is_nonzero(NakPath::new(b, 2)))
        })
        .or(Some(inside))
}

pub fn explain_wildness(pres: &NakayamaPresentation) -> Result<WildnessExplanation> {
    let c = classify(pres);
    if c.verdict == Verdict::DerivedTame {
        return Err(Error::Tame);
    }
    match &c.witness {
        Witness::Euler(report) => {
            let cert = report.certificate.clone().unwrap_or_default();
            Ok(WildnessExplanation {
                condition: "euler",
                offending: vec![format!("{cert:?}")],
                citations: c.citations.clone(),
                message: format!("Euler form is indefinite: q(x) < 0 at x = {cert:?}; derived wild"),
                contraction: None,
            })
        }
        Witness::FailedCondition { condition, offending } => {
            let message = match *condition {
                "C1" => format!("relation(s) of length >= 4: {}; derived wild", offending.join(", ")),
                "C2" => format!("isolated 3-relation {}; derived wild", offending.join(", ")),
                _ => format!("three consecutive 3-relations {}; derived wild", offending.join(", ")),
            };
            let mut citations = c.citations.clone();
            let mut contraction = None;
            if *condition == "C1" {
                let r = c.class_d.c1.long_relations[0];
                if let Some(v) = contraction_vertex(pres, r) {
                    if let Ok(b) = contract(pres, v) {
                        contraction = Some(ContractionStep {
                            vertex: v,
                            relation: pres.path_name(r),
                            result: b.to_string(),
                            verdict: classify(&b).verdict,
                        });
                        citations.push(tags::FULL_SUBALGEBRA);
                    }
                }
            }
            Ok(WildnessExplanation {
                condition,
                offending: offending.clone(),
                citations,
                message,
                contraction,
            })
        }
        _ => unreachable!("wild verdicts carry a failed condition or an Euler certificate"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_presentation;

    fn pres(text: &str) -> NakayamaPresentation {
        parse_presentation(text).unwrap()
    }

    /// Window evaluator on arrow subscripts, independent of `NakPath` neighbours.
    fn brute_class_d(p: &NakayamaPresentation) -> bool {
        let kind = p.kind();
        let arrows: Vec<Vec<usize>> = p.relations().iter().map(|&r| kind.arrows_of(r)).collect();
        if arrows.iter().any(|a| a.len() < 2 || a.len() > 3) {
            return false;
        }
        let threes: Vec<&Vec<usize>> = arrows.iter().filter(|a| a.len() == 3).collect();
        // neighbours share exactly two arrows, shifted by one
        let overlap = |x: &Vec<usize>, y: &Vec<usize>| x[1..] == y[..2];
        for t in &threes {
            if !threes.iter().any(|u| overlap(t, u) || overlap(u, t)) {
                return false;
            }
        }
        for a in &threes {
            for b in &threes {
                for c in &threes {
                    if overlap(a, b) && overlap(b, c) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn example_conditions() {
        assert!(check_class_d(&pres("cycle n=3 rel=(0,3),(1,3)")).in_class_d);
        let r = check_class_d(&pres("cycle n=4 rel=(0,3),(2,2),(3,2)"));
        assert!(!r.c2.holds && r.c1.holds && r.c3.holds);
        assert_eq!(r.c2.isolated, vec![NakPath::new(0, 3)]);
        for n in 1..=6 {
            assert!(!check_class_d(&NakayamaPresentation::truncated_cycle(n, 3).unwrap()).c3.holds);
        }
    }

    #[test]
    fn isolated_examples() {
        assert_eq!(isolated_relations(&pres("cycle n=3 rel=(0,3),(1,3)")), vec![]);
        assert_eq!(isolated_relations(&pres("cycle n=5 rel=(0,2),(1,2),(2,2),(3,2),(4,2)")), vec![]);
        // line neighbours outside the quiver are absent
        assert_eq!(isolated_relations(&pres("line n=4 rel=(1,3)")), vec![NakPath::new(1, 3)]);
    }

    #[test]
    fn brute_force_agreement_small_cycles() {
        for n in 1..=5 {
            for gens in 0u32..(1 << (2 * n)) {
                // each start picks no relation or a length in 2..=4
                let mut rels = Vec::new();
                for i in 0..n {
                    let code = (gens >> (2 * i)) & 3;
                    if code > 0 {
                        rels.push((i, code as usize + 1));
                    }
                }
                if rels.is_empty() {
                    continue;
                }
                let p = NakayamaPresentation::cycle(n, &rels).unwrap();
                assert_eq!(check_class_d(&p).in_class_d, brute_class_d(&p), "{p}");
            }
        }
    }

    #[test]
    fn truncated_detection() {
        assert_eq!(detect_truncated(&pres("cycle n=3 rel=(0,3),(1,3),(2,3)")), Some((3, 3)));
        assert_eq!(detect_truncated(&pres("cycle n=3 rel=(0,2),(1,2),(2,2)")), Some((3, 2)));
        assert_eq!(detect_truncated(&pres("cycle n=3 rel=(0,3),(1,3)")), None);
        assert_eq!(detect_truncated(&pres("line n=3 rel=(1,2)")), None);
    }

    #[test]
    fn truncated_grid() {
        for n in 1..=10 {
            let c = classify(&NakayamaPresentation::truncated_cycle(n, 2).unwrap());
            assert_eq!(c.verdict, Verdict::DerivedTame);
            assert_eq!(c.witness.kind(), "gentle");
            for r in 3..=5 {
                let c = classify(&NakayamaPresentation::truncated_cycle(n, r).unwrap());
                assert_eq!(c.verdict, Verdict::DerivedWild, "C({n},{r})");
                assert!(c.citations.contains(&tags::TRUNCATED));
            }
        }
    }

    #[test]
    fn skewed_gentle_witness_for_example3() {
        let c = classify(&pres("cycle n=6 rel=(0,3),(1,3),(3,3),(4,3)"));
        assert_eq!(c.verdict, Verdict::DerivedTame);
        assert_eq!(c.witness.kind(), "skewed_gentle");
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["witness_payload"]["omega"], json!([2, 5]));
        assert_eq!(v["conditions"]["in_class_d"], true);
    }

    #[test]
    fn lines_go_through_euler() {
        let c = classify(&pres("line n=2"));
        assert_eq!(c.verdict, Verdict::DerivedTame);
        assert_eq!(c.witness.kind(), "euler");
        assert_eq!(c.citations, vec![tags::EULER_FORM]);
    }

    #[test]
    fn contraction_of_truncated_cycle() {
        let b = contract(&pres("cycle n=3 rel=(0,3),(1,3),(2,3)"), 1).unwrap();
        assert_eq!(b, pres("cycle n=2 rel=(0,2),(1,2)"));
        let b = contract(&pres("cycle n=3 rel=(0,3),(1,3)"), 1).unwrap();
        assert_eq!(b.n(), 2);
    }

    #[test]
    fn contraction_rejections() {
        assert!(matches!(
            contract(&pres("cycle n=3 rel=(0,2)"), 1),
            Err(Error::IllegalContraction { vertex: 1, .. })
        ));
        assert!(contract(&pres("line n=3"), 1).is_err());
        assert!(contract(&pres("line n=3"), 3).is_err());
        assert!(contract(&pres("cycle n=1 rel=(0,3)"), 0).is_err());
    }

    #[test]
    fn contraction_at_vertex_5_of_example3() {
        let a = pres("cycle n=6 rel=(0,3),(1,3),(3,3),(4,3)");
        let b = contract(&a, 5).unwrap();
        assert_eq!(b.n(), 5);
        // the 3-relation a3a4a5 becomes a3g, and a4a5a0 becomes g (of length 1) times a0
        assert!(b.relations().contains(NakPath::new(3, 2)));
        assert!(b.relations().contains(NakPath::new(4, 2)));
    }

    fn surviving_paths(a: &NakayamaPresentation, i: usize) -> usize {
        let keep: Vec<usize> = a.vertices().into_iter().filter(|&v| v != i).collect();
        keep.iter()
            .map(|&u| keep.iter().map(|&v| a.nonzero_paths_between(u, v).len()).sum::<usize>())
            .sum()
    }

    #[test]
    fn contraction_dimension_identity() {
        for text in [
            "cycle n=4 rel=(0,3),(1,3),(3,2)",
            "cycle n=5 rel=(0,4),(2,2)",
            "line n=5 rel=(1,3),(3,2)",
            "cycle n=2 rel=(0,5)",
        ] {
            let a = pres(text);
            for i in a.vertices() {
                if let Ok(b) = contract(&a, i) {
                    assert_eq!(b.dimension(), surviving_paths(&a, i), "{text} at {i}");
                }
            }
        }
    }

    #[test]
    fn explanations() {
        let e = explain_wildness(&pres("cycle n=4 rel=(0,3),(2,2),(3,2)")).unwrap();
        assert_eq!(e.condition, "C2");
        assert!(e.message.contains("isolated 3-relation a0a1a2"));
        let e = explain_wildness(&NakayamaPresentation::truncated_cycle(3, 3).unwrap()).unwrap();
        assert_eq!(e.condition, "C3");
        assert!(e.citations.contains(&tags::TRUNCATED));
        let e = explain_wildness(&pres("cycle n=5 rel=(0,4),(4,2)")).unwrap();
        assert_eq!(e.condition, "C1");
        assert!(e.citations.contains(&tags::LONG_RELATION));
        assert!(e.contraction.is_some());
        assert_eq!(explain_wildness(&pres("cycle n=3 rel=(0,2)")), Err(Error::Tame));
    }
}
