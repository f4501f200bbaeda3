//! JSON form of an algebra.

use serde::{Deserialize, Serialize};

use super::{Algebra, Quiver};
use crate::error::{Error, Result};
use crate::linalg::FieldSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub field: FieldSpec,
    pub quiver: QuiverJson,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub commutations: Vec<(Vec<String>, Vec<String>)>,
}

impl AlgebraJson {
    pub fn build(&self) -> Result<Algebra> {
        let mut q = Quiver::new(self.quiver.vertices.clone());
        for a in &self.quiver.arrows {
            let from = q
                .vertex_index(&a.from)
                .ok_or_else(|| Error::Parse(format!("arrow {} starts at unknown vertex {}", a.name, a.from)))?;
            let to = q
                .vertex_index(&a.to)
                .ok_or_else(|| Error::Parse(format!("arrow {} ends at unknown vertex {}", a.name, a.to)))?;
            q.add_arrow(a.name.clone(), from, to);
        }
        let word = |names: &Vec<String>| -> Result<Vec<usize>> {
            names
                .iter()
                .map(|n| q.arrow_index(n).ok_or_else(|| Error::Parse(format!("unknown arrow {n}"))))
                .collect()
        };
        let forbidden = self.relations.iter().map(word).collect::<Result<Vec<_>>>()?;
        let comm = self
            .commutations
            .iter()
            .map(|(l, r)| Ok((word(l)?, word(r)?)))
            .collect::<Result<Vec<_>>>()?;
        Algebra::new(q.clone(), forbidden, comm, self.field.clone())
    }
}

impl Algebra {
    pub fn to_json(&self) -> AlgebraJson {
        let q = &self.quiver;
        let names = |w: &Vec<usize>| w.iter().map(|&a| q.arrows[a].name.clone()).collect::<Vec<_>>();
        AlgebraJson {
            field: self.field.clone(),
            quiver: QuiverJson {
                vertices: q.vertices.clone(),
                arrows: q
                    .arrows
                    .iter()
                    .map(|a| ArrowJson {
                        name: a.name.clone(),
                        from: q.vertices[a.from].clone(),
                        to: q.vertices[a.to].clone(),
                    })
                    .collect(),
            },
            relations: self.forbidden.iter().map(names).collect(),
            commutations: self.commutations.iter().map(|(l, r)| (names(l), names(r))).collect(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Algebra> {
        let j: AlgebraJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        j.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_dual_numbers() {
        let s = r#"{"field":{"kind":"rational"},
                   "quiver":{"vertices":["1"],"arrows":[{"name":"x","from":"1","to":"1"}]},
                   "relations":[["x","x"]]}"#;
        let a = Algebra::from_json_str(s).unwrap();
        assert_eq!(a.dim(), 2);
        let back = Algebra::from_json_str(&serde_json::to_string(&a.to_json()).unwrap()).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn parse_prime_field() {
        let s = r#"{"field":{"kind":"prime","p":101},"quiver":{"vertices":["1","2"],
                   "arrows":[{"name":"a","from":"1","to":"2"}]},"relations":[]}"#;
        let a = Algebra::from_json_str(s).unwrap();
        assert_eq!(a.field(), &FieldSpec::Prime { p: 101 });
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(Algebra::from_json_str("{"), Err(Error::Parse(_))));
        let s = r#"{"field":{"kind":"rational"},"quiver":{"vertices":["1"],
                   "arrows":[{"name":"a","from":"1","to":"9"}]},"relations":[]}"#;
        assert!(matches!(Algebra::from_json_str(s), Err(Error::Parse(_))));
        let s = r#"{"field":{"kind":"prime","p":100},"quiver":{"vertices":["1"]},"relations":[]}"#;
        assert!(matches!(Algebra::from_json_str(s), Err(Error::FieldUnsupported(_))));
    }
}
