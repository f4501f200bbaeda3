//! JSON form of a bounded complex: a degree range, one module per degree
//! and one block matrix per vertex label for each differential.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::BoundedComplex;
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::module::{Module, ModuleJson, ModuleMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub range: [i64; 2],
    #[serde(default)]
    pub terms: BTreeMap<String, ModuleJson>,
    #[serde(default)]
    pub differentials: BTreeMap<String, BTreeMap<String, Vec<Vec<String>>>>,
}

impl ComplexJson {
    pub fn build<S: Scalar>(&self, alg: Arc<Algebra>) -> Result<BoundedComplex<S>> {
        let [a, b] = self.range;
        if a > b {
            return Err(Error::Parse(format!("empty degree range [{a}, {b}]")));
        }
        for key in self.terms.keys().chain(self.differentials.keys()) {
            let d: i64 = key.parse().map_err(|_| Error::Parse(format!("bad degree {key}")))?;
            if d < a || d > b {
                return Err(Error::Parse(format!("degree {d} outside the range")));
            }
        }
        let terms: Vec<Module<S>> = (a..=b)
            .map(|i| match self.terms.get(&i.to_string()) {
                Some(m) => m.build(alg.clone()),
                None => Ok(Module::zero(alg.clone())),
            })
            .collect::<Result<_>>()?;
        let q = alg.quiver();
        let mut diffs = Vec::new();
        for i in a..b {
            let (s, t) = (&terms[(i - a) as usize], &terms[(i - a + 1) as usize]);
            let given = self.differentials.get(&i.to_string());
            let blocks = (0..alg.num_vertices())
                .map(|v| {
                    let (r, c) = (s.dim_at(v), t.dim_at(v));
                    match given.and_then(|g| g.get(&q.vertices[v])) {
                        None => Ok(Matrix::zeros(r, c)),
                        Some(rows) => {
                            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                                return Err(Error::Parse(format!("differential {i} at {} needs {r}x{c}", q.vertices[v])));
                            }
                            let parsed = rows
                                .iter()
                                .map(|row| row.iter().map(|x| S::parse(x)).collect::<Result<Vec<S>>>())
                                .collect::<Result<Vec<_>>>()?;
                            Ok(Matrix::from_rows(parsed, c))
                        }
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            diffs.push(ModuleMap { blocks });
        }
        BoundedComplex::new(alg, a, terms, diffs).map_err(|e| match e {
            Error::InvalidInput(s) => Error::Parse(s),
            other => other,
        })
    }
}

impl<S: Scalar> BoundedComplex<S> {
    pub fn to_json(&self) -> ComplexJson {
        let Some((a, b)) = self.range() else {
            return ComplexJson { range: [0, 0], terms: BTreeMap::new(), differentials: BTreeMap::new() };
        };
        let q = self.algebra().quiver();
        let terms = (a..=b).map(|i| (i.to_string(), self.term(i).to_json())).collect();
        let differentials = (a..b)
            .map(|i| {
                let d = self.differential(i);
                let blocks = q
                    .vertices
                    .iter()
                    .zip(&d.blocks)
                    .filter(|(_, m)| m.rows() > 0 && m.cols() > 0)
                    .map(|(label, m)| {
                        (label.clone(), (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.to_string()).collect()).collect())
                    })
                    .collect();
                (i.to_string(), blocks)
            })
            .collect();
        ComplexJson { range: [a, b], terms, differentials }
    }

    pub fn from_json_str(alg: Arc<Algebra>, s: &str) -> Result<Self> {
        let j: ComplexJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        j.build(alg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::testing::*;

    #[test]
    fn round_trip() {
        let p2 = Module::<Q>::projective(a2(), 1);
        let p1 = Module::<Q>::projective(a2(), 0);
        let f = ModuleMap { blocks: vec![Matrix::zeros(0, 1), Matrix::identity(1)] };
        let x = BoundedComplex::new(a2(), -1, vec![p2, p1], vec![f]).unwrap();
        let text = serde_json::to_string(&x.to_json()).unwrap();
        let y = BoundedComplex::<Q>::from_json_str(a2(), &text).unwrap();
        assert_eq!(y.range(), Some((-1, 0)));
        assert_eq!(y.cohomology_dim(0), 1);
        assert!(BoundedComplex::<Q>::from_json_str(a2(), r#"{"range":[0,-1]}"#).is_err());
    }
}
