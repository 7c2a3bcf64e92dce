//! Text and JSON input formats for Nakayama presentations.
//!
//! Text grammar (whitespace between tokens is ignored):
//!
//! ```text
//! presentation := kind "n=" int clause*
//! kind         := "line" | "cycle"
//! clause       := "rel=" pair ("," pair)* | "kupisch=" int ("," int)*
//! pair         := "(" int "," int ")"
//! ```
//!
//! The JSON mirror is `{"kind": "cycle", "n": 3, "relations": [[0,3],[1,3]]}`
//! with an optional `"kupisch": [..]` in place of `relations`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::{relations_from_kupisch, KupischSeries, NakPath, NakayamaPresentation, QuiverKind};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            self.error(format!("expected `{token}`"))
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return self.error("expected a non-negative integer");
        }
        let text = &self.rest()[..digits];
        match text.parse() {
            Ok(v) => {
                self.pos += digits;
                Ok(v)
            }
            Err(_) => self.error(format!("integer `{text}` out of range")),
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }
}

enum Body {
    Relations(Vec<NakPath>),
    Kupisch(Vec<usize>),
}

fn build(kind: QuiverKind, body: Body) -> Result<NakayamaPresentation> {
    match body {
        Body::Relations(rels) => NakayamaPresentation::new(kind, &rels),
        Body::Kupisch(series) => relations_from_kupisch(kind, &KupischSeries(series)),
    }
}

fn parse_text(src: &str) -> Result<NakayamaPresentation> {
    let mut cur = Cursor::new(src);
    let cycle = if cur.eat("cycle") {
        true
    } else if cur.eat("line") {
        false
    } else {
        return cur.error("expected `line` or `cycle`");
    };
    cur.expect("n=")?;
    let n_pos = cur.pos;
    let n = cur.int()?;
    if n == 0 {
        return Err(Error::Syntax {
            pos: n_pos,
            msg: "n must be positive".into(),
        });
    }
    let kind = if cycle { QuiverKind::Cycle(n) } else { QuiverKind::Line(n) };

    let mut body: Option<Body> = None;
    while !cur.at_end() {
        let clause_pos = cur.pos;
        let clause = if cur.eat("rel=") {
            let mut rels = Vec::new();
            loop {
                cur.expect("(")?;
                let s = cur.int()?;
                cur.expect(",")?;
                let l = cur.int()?;
                cur.expect(")")?;
                rels.push(NakPath::new(s, l));
                if !cur.eat(",") {
                    break;
                }
            }
            Body::Relations(rels)
        } else if cur.eat("kupisch=") {
            let mut series = vec![cur.int()?];
            while cur.eat(",") {
                series.push(cur.int()?);
            }
            Body::Kupisch(series)
        } else {
            return cur.error("expected `rel=` or `kupisch=`");
        };
        if body.is_some() {
            return Err(Error::Syntax {
                pos: clause_pos,
                msg: "at most one `rel=` or `kupisch=` clause".into(),
            });
        }
        body = Some(clause);
    }
    build(kind, body.unwrap_or(Body::Relations(Vec::new())))
}

/// JSON mirror of the text format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub kind: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kupisch: Option<Vec<usize>>,
}

impl From<&NakayamaPresentation> for PresentationJson {
    fn from(p: &NakayamaPresentation) -> Self {
        PresentationJson {
            kind: p.kind().name().to_string(),
            n: p.n(),
            relations: p.relations().iter().map(|r| [r.start, r.len]).collect(),
            kupisch: None,
        }
    }
}

impl TryFrom<PresentationJson> for NakayamaPresentation {
    type Error = Error;

    fn try_from(j: PresentationJson) -> Result<Self> {
        if j.n == 0 {
            return Err(Error::Invalid("n must be positive".into()));
        }
        let kind = match j.kind.as_str() {
            "line" => QuiverKind::Line(j.n),
            "cycle" => QuiverKind::Cycle(j.n),
            other => return Err(Error::Invalid(format!("unknown quiver kind `{other}`"))),
        };
        let body = match j.kupisch {
            Some(series) if j.relations.is_empty() => Body::Kupisch(series),
            Some(_) => return Err(Error::Invalid("give either relations or kupisch, not both".into())),
            None => Body::Relations(j.relations.iter().map(|&[s, l]| NakPath::new(s, l)).collect()),
        };
        build(kind, body)
    }
}

/// Parses either the text grammar or, when the input starts with `{`, the
/// JSON mirror.
pub fn parse_presentation(text: &str) -> Result<NakayamaPresentation> {
    if text.trim_start().starts_with('{') {
        let json: PresentationJson = serde_json::from_str(text).map_err(|e| Error::Syntax {
            pos: 0,
            msg: e.to_string(),
        })?;
        NakayamaPresentation::try_from(json)
    } else {
        parse_text(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_example1() {
        let p = parse_presentation("cycle n=3 rel=(0,3),(1,3)").unwrap();
        assert_eq!(p.kind(), QuiverKind::Cycle(3));
        assert_eq!(p.relation_names(), vec!["a0a1a2", "a1a2a0"]);
    }

    #[test]
    fn parses_line_without_relations() {
        let p = parse_presentation("line n=2").unwrap();
        assert_eq!(p.kind(), QuiverKind::Line(2));
        assert!(p.relations().is_empty());
    }

    #[test]
    fn minimizes_on_parse() {
        let p = parse_presentation("cycle n=3 rel=(0,2),(0,3)").unwrap();
        assert_eq!(p.relations().as_slice(), &[NakPath::new(0, 2)]);
    }

    #[test]
    fn tolerates_whitespace() {
        let p = parse_presentation("  cycle  n= 3\n rel= (0, 3) , (1,3)\n").unwrap();
        assert_eq!(p.relations().len(), 2);
    }

    #[test]
    fn kupisch_clause() {
        let p = parse_presentation("cycle n=3 kupisch=3,3,4").unwrap();
        assert_eq!(p, parse_presentation("cycle n=3 rel=(0,3),(1,3)").unwrap());
    }

    #[test]
    fn syntax_errors_report_position() {
        match parse_presentation("cycle n=3 rel=(0,3)(1,3)") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 19),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_presentation("torus n=3"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_presentation("cycle n=x"), Err(Error::Syntax { pos: 8, .. })));
        assert!(matches!(parse_presentation("cycle n=0 rel=(0,2)"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn validation_errors() {
        assert_eq!(parse_presentation("cycle n=3"), Err(Error::InfiniteDimension));
        assert!(matches!(parse_presentation("cycle n=3 rel=(0,1)"), Err(Error::ShortRelation(_))));
        assert!(matches!(parse_presentation("line n=3 rel=(2,2)"), Err(Error::OutOfRange(_))));
        assert!(matches!(parse_presentation("cycle n=3 rel=(5,2)"), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn json_mirror() {
        let p = parse_presentation(r#"{"kind":"cycle","n":3,"relations":[[0,3],[1,3]]}"#).unwrap();
        assert_eq!(p, parse_presentation("cycle n=3 rel=(0,3),(1,3)").unwrap());
        let back = serde_json::to_string(&PresentationJson::from(&p)).unwrap();
        assert_eq!(parse_presentation(&back).unwrap(), p);
        let l = parse_presentation(r#"{"kind":"line","n":2}"#).unwrap();
        assert_eq!(l.kind(), QuiverKind::Line(2));
        assert!(parse_presentation(r#"{"kind":"torus","n":2}"#).is_err());
    }
}
