//! JSON form of a module: dimensions per vertex label and one matrix of
//! scalar strings per arrow name.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::Module;
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<Vec<String>>>,
}

impl ModuleJson {
    pub fn build<S: Scalar>(&self, alg: Arc<Algebra>) -> Result<Module<S>> {
        let q = alg.quiver();
        for label in self.dims.keys() {
            if q.vertex_index(label).is_none() {
                return Err(Error::Parse(format!("unknown vertex {label}")));
            }
        }
        for name in self.arrows.keys() {
            if q.arrow_index(name).is_none() {
                return Err(Error::Parse(format!("unknown arrow {name}")));
            }
        }
        let dims: Vec<usize> = q.vertices.iter().map(|v| self.dims.get(v).copied().unwrap_or(0)).collect();
        let mut action = Vec::with_capacity(q.arrows.len());
        for a in &q.arrows {
            let (r, c) = (dims[a.from], dims[a.to]);
            let m = match self.arrows.get(&a.name) {
                None => Matrix::zeros(r, c),
                Some(rows) => {
                    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                        return Err(Error::Parse(format!("arrow {} needs a {r}x{c} matrix", a.name)));
                    }
                    let parsed = rows
                        .iter()
                        .map(|row| row.iter().map(|x| S::parse(x)).collect::<Result<Vec<S>>>())
                        .collect::<Result<Vec<_>>>()?;
                    Matrix::from_rows(parsed, c)
                }
            };
            action.push(m);
        }
        Module::new(alg, dims, action).map_err(|e| match e {
            Error::InvalidInput(s) => Error::Parse(s),
            other => other,
        })
    }
}

impl<S: Scalar> Module<S> {
    pub fn to_json(&self) -> ModuleJson {
        let q = self.algebra().quiver();
        let dims = q.vertices.iter().cloned().zip(self.dims().iter().copied()).collect();
        let arrows = q
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let m = self.action(ai);
                (a.name.clone(), (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.to_string()).collect()).collect())
            })
            .collect();
        ModuleJson { dims, arrows }
    }

    pub fn from_json_str(alg: Arc<Algebra>, s: &str) -> Result<Self> {
        let j: ModuleJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        j.build(alg)
    }
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;

    #[test]
    fn parse_and_roundtrip() {
        let m = Module::<Q>::from_json_str(a2(), r#"{"dims":{"1":1,"2":1},"arrows":{"a":[["1"]]}}"#).unwrap();
        assert_eq!(m, Module::projective(a2(), 0));
        let text = serde_json::to_string(&m.to_json()).unwrap();
        assert_eq!(Module::<Q>::from_json_str(a2(), &text).unwrap(), m);
        let half = Module::<Q>::from_json_str(a2(), r#"{"dims":{"1":1,"2":1},"arrows":{"a":[["-1/2"]]}}"#).unwrap();
        assert_eq!(half.to_json().arrows["a"][0][0], "-1/2");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Module::<Q>::from_json_str(a2(), "[]"), Err(Error::Parse(_))));
        assert!(matches!(
            Module::<Q>::from_json_str(a2(), r#"{"dims":{"1":1,"2":1},"arrows":{"a":[["1","2"]]}}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            Module::<Q>::from_json_str(dual_numbers(), r#"{"dims":{"1":1},"arrows":{"x":[["1"]]}}"#),
            Err(Error::Parse(_))
        ));
    }
}
