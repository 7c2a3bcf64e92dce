//! Finite quivers with relations given as signed sums of paths.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::{NakayamaPresentation, QuiverKind};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver with named vertices and uniquely named arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralQuiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_lookup: HashMap<String, usize>,
    arrow_lookup: HashMap<String, usize>,
}

impl GeneralQuiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut vertex_lookup = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_lookup.insert(v.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate vertex `{v}`")));
            }
        }
        let mut arrow_lookup = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::Invalid(format!("arrow `{}` has an unknown endpoint", a.name)));
            }
            if arrow_lookup.insert(a.name.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate arrow `{}`", a.name)));
            }
        }
        Ok(GeneralQuiver {
            vertices,
            arrows,
            vertex_lookup,
            arrow_lookup,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_lookup.get(name).copied()
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrow_lookup.get(name).copied()
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].target == v)
    }

    /// Builds a composable path from arrow names.
    pub fn path(&self, names: &[&str]) -> Result<GeneralPath> {
        let arrows = names
            .iter()
            .map(|n| {
                self.arrow_index(n)
                    .ok_or_else(|| Error::Invalid(format!("unknown arrow `{n}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        GeneralPath::new(self, arrows)
    }

    pub fn path_name(&self, p: &GeneralPath) -> String {
        p.0.iter().map(|&a| self.arrows[a].name.as_str()).collect()
    }
}

/// Arrow sequence, composed left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralPath(pub Vec<usize>);

impl GeneralPath {
    pub fn new(quiver: &GeneralQuiver, arrows: Vec<usize>) -> Result<Self> {
        if arrows.is_empty() {
            return Err(Error::Invalid("empty path".into()));
        }
        if let Some(&bad) = arrows.iter().find(|&&a| a >= quiver.arrows.len()) {
            return Err(Error::Invalid(format!("arrow index {bad} out of range")));
        }
        for w in arrows.windows(2) {
            if quiver.arrows[w[0]].target != quiver.arrows[w[1]].source {
                return Err(Error::Invalid(format!(
                    "arrows `{}` and `{}` are not composable",
                    quiver.arrows[w[0]].name, quiver.arrows[w[1]].name
                )));
            }
        }
        Ok(GeneralPath(arrows))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn source(&self, q: &GeneralQuiver) -> usize {
        q.arrows[self.0[0]].source
    }

    pub fn target(&self, q: &GeneralQuiver) -> usize {
        q.arrows[*self.0.last().expect("nonempty path")].target
    }
}

/// `sum_k c_k p_k` with parallel paths `p_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedRelation {
    pub terms: Vec<(i64, GeneralPath)>,
}

impl SignedRelation {
    pub fn zero(path: GeneralPath) -> Self {
        SignedRelation { terms: vec![(1, path)] }
    }

    pub fn is_zero_relation(&self) -> bool {
        self.terms.len() == 1
    }

    /// Two terms with opposite unit coefficients.
    pub fn is_commutativity(&self) -> bool {
        self.terms.len() == 2 && self.terms[0].0 * self.terms[1].0 == -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralPresentation {
    quiver: GeneralQuiver,
    relations: Vec<SignedRelation>,
}

impl GeneralPresentation {
    pub fn new(quiver: GeneralQuiver, relations: Vec<SignedRelation>) -> Result<Self> {
        for rel in &relations {
            let Some((_, first)) = rel.terms.first() else {
                return Err(Error::Invalid("empty relation".into()));
            };
            for (c, p) in &rel.terms {
                GeneralPath::new(&quiver, p.0.clone())?;
                if p.len() < 2 {
                    return Err(Error::ShortRelation(quiver.path_name(p)));
                }
                if *c == 0 {
                    return Err(Error::Invalid("zero coefficient in relation".into()));
                }
                if p.source(&quiver) != first.source(&quiver) || p.target(&quiver) != first.target(&quiver) {
                    return Err(Error::Invalid(format!(
                        "relation terms `{}` and `{}` are not parallel",
                        quiver.path_name(first),
                        quiver.path_name(p)
                    )));
                }
            }
        }
        Ok(GeneralPresentation { quiver, relations })
    }

    /// The Nakayama quiver `L_n` / `C_n` with its monomial relations.
    pub fn from_nakayama(pres: &NakayamaPresentation) -> Self {
        let kind = pres.kind();
        let vertices: Vec<String> = kind.vertices().iter().map(|v| v.to_string()).collect();
        let arrow_subscripts: Vec<usize> = match kind {
            QuiverKind::Line(n) => (1..n).collect(),
            QuiverKind::Cycle(n) => (0..n).collect(),
        };
        let arrows: Vec<Arrow> = arrow_subscripts
            .iter()
            .map(|&j| Arrow {
                name: format!("a{j}"),
                source: kind.index(j),
                target: kind.index(kind.shift(j, 1).expect("arrow endpoint")),
            })
            .collect();
        let arrow_pos = |j: usize| arrow_subscripts.iter().position(|&s| s == j).expect("arrow");
        let quiver = GeneralQuiver::new(vertices, arrows).expect("Nakayama quiver is well formed");
        let relations = pres
            .relations()
            .iter()
            .map(|&r| SignedRelation::zero(GeneralPath(kind.arrows_of(r).into_iter().map(arrow_pos).collect())))
            .collect();
        GeneralPresentation::new(quiver, relations).expect("Nakayama relations are valid")
    }

    pub fn quiver(&self) -> &GeneralQuiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[SignedRelation] {
        &self.relations
    }

    /// The relation paths, or `None` if some relation has several terms.
    pub fn zero_relations(&self) -> Option<Vec<&GeneralPath>> {
        self.relations
            .iter()
            .map(|r| r.is_zero_relation().then(|| &r.terms[0].1))
            .collect()
    }

    /// Renders a relation, e.g. `b1+a0+ - b1-a0-`, or with superscripts when
    /// `unicode` is set.
    pub fn render_relation(&self, rel: &SignedRelation, unicode: bool) -> String {
        let mut out = String::new();
        for (k, (c, p)) in rel.terms.iter().enumerate() {
            let name: String = p
                .0
                .iter()
                .map(|&a| {
                    let n = &self.quiver.arrows[a].name;
                    if unicode {
                        superscript_signs(n)
                    } else {
                        n.clone()
                    }
                })
                .collect();
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            match (k, sign) {
                (0, "-") => out.push('-'),
                (0, _) => {}
                (_, s) => {
                    out.push(' ');
                    out.push_str(if unicode && s == "-" { "\u{2212}" } else { s });
                    out.push(' ');
                }
            }
            if mag != 1 {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&name);
        }
        out
    }

    pub fn relation_strings(&self, unicode: bool) -> Vec<String> {
        self.relations.iter().map(|r| self.render_relation(r, unicode)).collect()
    }
}

fn superscript_signs(name: &str) -> String {
    name.chars()
        .map(|c| match c {
            '+' => '\u{207A}',
            '-' => '\u{207B}',
            c => c,
        })
        .collect()
}

/// JSON form: vertex names, `[name, source, target]` arrows, and relations
/// as lists of `[coefficient, [arrow names]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralPresentationJson {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    pub relations: Vec<Vec<(i64, Vec<String>)>>,
}

impl From<&GeneralPresentation> for GeneralPresentationJson {
    fn from(p: &GeneralPresentation) -> Self {
        let q = &p.quiver;
        GeneralPresentationJson {
            vertices: q.vertices.clone(),
            arrows: q
                .arrows
                .iter()
                .map(|a| (a.name.clone(), q.vertices[a.source].clone(), q.vertices[a.target].clone()))
                .collect(),
            relations: p
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, path)| (*c, path.0.iter().map(|&a| q.arrows[a].name.clone()).collect()))
                        .collect()
                })
                .collect(),
        }
    }
}

impl TryFrom<&GeneralPresentationJson> for GeneralPresentation {
    type Error = Error;

    fn try_from(j: &GeneralPresentationJson) -> Result<Self> {
        let lookup = |name: &str| {
            j.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::Invalid(format!("unknown vertex `{name}`")))
        };
        let arrows = j
            .arrows
            .iter()
            .map(|(n, s, t)| {
                Ok(Arrow {
                    name: n.clone(),
                    source: lookup(s)?,
                    target: lookup(t)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let quiver = GeneralQuiver::new(j.vertices.clone(), arrows)?;
        let relations = j
            .relations
            .iter()
            .map(|terms| {
                let terms = terms
                    .iter()
                    .map(|(c, names)| {
                        let names: Vec<&str> = names.iter().map(String::as_str).collect();
                        Ok((*c, quiver.path(&names)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SignedRelation { terms })
            })
            .collect::<Result<Vec<_>>>()?;
        GeneralPresentation::new(quiver, relations)
    }
}

impl Serialize for GeneralPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GeneralPresentationJson::from(self).serialize(s)
    }
}

impl fmt::Display for GeneralPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = &self.quiver;
        writeln!(f, "vertices: {}", q.vertices.join(", "))?;
        let arrows: Vec<String> = q
            .arrows
            .iter()
            .map(|a| {
                format!(
                    "{}: {} -> {}",
                    superscript_signs(&a.name),
                    superscript_signs(&q.vertices[a.source]),
                    superscript_signs(&q.vertices[a.target])
                )
            })
            .collect();
        writeln!(f, "arrows: {}", arrows.join(", "))?;
        write!(f, "relations: {{{}}}", self.relation_strings(true).join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_presentation;

    #[test]
    fn nakayama_cycle_as_general() {
        let p = parse_presentation("cycle n=3 rel=(0,3),(1,3)").unwrap();
        let g = GeneralPresentation::from_nakayama(&p);
        assert_eq!(g.quiver().vertices(), &["0", "1", "2"]);
        assert_eq!(g.quiver().arrow(2).target, 0);
        assert_eq!(g.relation_strings(false), vec!["a0a1a2", "a1a2a0"]);
    }

    #[test]
    fn nakayama_line_as_general() {
        let p = parse_presentation("line n=4 rel=(2,2)").unwrap();
        let g = GeneralPresentation::from_nakayama(&p);
        assert_eq!(g.quiver().arrows().len(), 3);
        assert_eq!(g.relation_strings(false), vec!["a2a3"]);
    }

    #[test]
    fn rejects_non_parallel_terms() {
        let q = GeneralQuiver::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![
                Arrow { name: "p".into(), source: 0, target: 1 },
                Arrow { name: "q".into(), source: 1, target: 2 },
                Arrow { name: "r".into(), source: 1, target: 1 },
            ],
        )
        .unwrap();
        let pq = q.path(&["p", "q"]).unwrap();
        let pr = q.path(&["p", "r"]).unwrap();
        assert!(GeneralPresentation::new(q.clone(), vec![SignedRelation { terms: vec![(1, pq), (-1, pr)] }]).is_err());
        assert!(q.path(&["q", "p"]).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let p = parse_presentation("cycle n=4 rel=(0,3),(1,3),(3,2)").unwrap();
        let g = GeneralPresentation::from_nakayama(&p);
        let j = GeneralPresentationJson::from(&g);
        assert_eq!(GeneralPresentation::try_from(&j).unwrap(), g);
    }
}
