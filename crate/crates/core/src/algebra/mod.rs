//! Bound quiver algebras with a multiplicative path basis.
//!
//! An algebra is a path algebra `kQ/I` where `I` is generated by forbidden
//! paths and by homogeneous commutativity relations `p = q` between parallel
//! paths of equal length. The nonzero path classes form a basis closed under
//! multiplication up to zero, so the structure is purely combinatorial and
//! independent of the scalar type.
//!
//! Paths compose left to right: the path `ab` first follows `a` then `b`.

mod constructors;
mod json;

pub use constructors::{ConnectingArrow, Gluing, IdempotentSplit, NakayamaShape};
pub use json::AlgebraJson;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::FieldSpec;

/// Upper bound on the number of basis paths before an algebra is rejected as
/// (practically) infinite dimensional.
pub const MAX_BASIS: usize = 50_000;

/// Upper bound on the length of a nonzero path.
pub const MAX_PATH_LENGTH: usize = 1_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>) -> Self {
        Quiver { vertices, arrows: Vec::new() }
    }

    pub fn add_arrow(&mut self, name: impl Into<String>, from: usize, to: usize) -> usize {
        self.arrows.push(Arrow { name: name.into(), from, to });
        self.arrows.len() - 1
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn validate(&self) -> Result<()> {
        let labels: BTreeSet<&String> = self.vertices.iter().collect();
        if labels.len() != self.vertices.len() {
            return Err(Error::InvalidInput("duplicate vertex labels".into()));
        }
        let names: BTreeSet<&String> = self.arrows.iter().map(|a| &a.name).collect();
        if names.len() != self.arrows.len() {
            return Err(Error::InvalidInput("duplicate arrow names".into()));
        }
        for a in &self.arrows {
            if a.from >= self.vertices.len() || a.to >= self.vertices.len() {
                return Err(Error::InvalidInput(format!("arrow {} has a missing endpoint", a.name)));
            }
        }
        Ok(())
    }

    /// Whether `word` is a composable nonempty arrow sequence.
    pub fn is_path(&self, word: &[usize]) -> bool {
        !word.is_empty()
            && word.iter().all(|&a| a < self.arrows.len())
            && word.windows(2).all(|w| self.arrows[w[0]].to == self.arrows[w[1]].from)
    }
}

/// A basis path: a trivial path at `source` when `arrows` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Algebra {
    field: FieldSpec,
    quiver: Quiver,
    forbidden: Vec<Vec<usize>>,
    commutations: Vec<(Vec<usize>, Vec<usize>)>,
    basis: Vec<Path>,
    word_index: HashMap<Vec<usize>, usize>,
    prefix: Vec<Option<(usize, usize)>>,
    from_vertex: Vec<Vec<usize>>,
    to_vertex: Vec<Vec<usize>>,
    opposite_cache: OnceLock<Arc<Algebra>>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.quiver == other.quiver
            && self.basis == other.basis
            && self.forbidden == other.forbidden
            && self.commutations == other.commutations
    }
}

impl Eq for Algebra {}

impl Algebra {
    /// Builds the algebra of `q` modulo forbidden paths only.
    pub fn monomial(q: Quiver, forbidden: Vec<Vec<usize>>, field: FieldSpec) -> Result<Self> {
        Self::new(q, forbidden, Vec::new(), field)
    }

    /// Builds `kQ/I` with `I` generated by the forbidden paths and the
    /// commutativity relations `p = q`.
    pub fn new(
        quiver: Quiver,
        forbidden: Vec<Vec<usize>>,
        commutations: Vec<(Vec<usize>, Vec<usize>)>,
        field: FieldSpec,
    ) -> Result<Self> {
        quiver.validate()?;
        field.validate()?;
        let arrows = &quiver.arrows;
        for f in &forbidden {
            if !quiver.is_path(f) {
                return Err(Error::InvalidInput(format!("forbidden path {f:?} is not composable")));
            }
            if f.len() < 2 {
                return Err(Error::NonAdmissible("forbidden paths must have length at least 2".into()));
            }
        }
        for (p, q) in &commutations {
            if !quiver.is_path(p) || !quiver.is_path(q) {
                return Err(Error::InvalidInput("commutation sides must be composable paths".into()));
            }
            if p.len() != q.len() || p.len() < 2 {
                return Err(Error::InvalidInput(
                    "commutation sides must have equal length at least 2".into(),
                ));
            }
            if arrows[p[0]].from != arrows[q[0]].from
                || arrows[*p.last().unwrap()].to != arrows[*q.last().unwrap()].to
            {
                return Err(Error::InvalidInput("commutation sides must be parallel".into()));
            }
        }
        let mut forbidden = forbidden;
        forbidden.sort();
        forbidden.dedup();
        let mut commutations: Vec<(Vec<usize>, Vec<usize>)> = commutations
            .into_iter()
            .filter(|(p, q)| p != q)
            .map(|(p, q)| if p <= q { (p, q) } else { (q, p) })
            .collect();
        commutations.sort();
        commutations.dedup();

        let n = quiver.vertices.len();
        let mut basis: Vec<Path> = (0..n).map(|v| Path { source: v, target: v, arrows: vec![] }).collect();
        let mut prefix: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut word_index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut layer: Vec<Vec<usize>> = vec![vec![]];
        loop {
            let mut candidates: Vec<Vec<usize>> = Vec::new();
            for w in &layer {
                for (ai, a) in arrows.iter().enumerate() {
                    let ok = match w.last() {
                        None => true,
                        Some(&last) => arrows[last].to == a.from,
                    };
                    if ok {
                        let mut nw = w.clone();
                        nw.push(ai);
                        candidates.push(nw);
                    }
                }
            }
            candidates.sort();
            let mut seen: HashMap<Vec<usize>, bool> = HashMap::new();
            let mut classes: Vec<Vec<Vec<usize>>> = Vec::new();
            for c in &candidates {
                if seen.contains_key(c) {
                    continue;
                }
                let class = congruence_class(c, &commutations);
                let zero = class.iter().any(|w| contains_forbidden(w, &forbidden));
                for w in &class {
                    seen.insert(w.clone(), zero);
                }
                if !zero {
                    classes.push(class);
                }
            }
            if classes.is_empty() {
                break;
            }
            classes.sort_by(|a, b| a[0].cmp(&b[0]));
            let mut next_layer = Vec::new();
            for class in classes {
                let rep = class[0].clone();
                let idx = basis.len();
                let pre = if rep.len() == 1 {
                    arrows[rep[0]].from
                } else {
                    word_index[&rep[..rep.len() - 1]]
                };
                prefix.push(Some((pre, *rep.last().unwrap())));
                basis.push(Path {
                    source: arrows[rep[0]].from,
                    target: arrows[*rep.last().unwrap()].to,
                    arrows: rep,
                });
                for w in class {
                    word_index.insert(w.clone(), idx);
                    next_layer.push(w);
                }
                if basis.len() > MAX_BASIS {
                    return Err(Error::NonAdmissible(format!(
                        "more than {MAX_BASIS} basis paths; the relations do not bound the path length"
                    )));
                }
            }
            if layer.first().map_or(0, |w| w.len()) >= MAX_PATH_LENGTH {
                return Err(Error::NonAdmissible(format!(
                    "nonzero paths longer than {MAX_PATH_LENGTH}; the relations do not bound the path length"
                )));
            }
            layer = next_layer;
        }
        let mut from_vertex = vec![Vec::new(); n];
        let mut to_vertex = vec![Vec::new(); n];
        for (i, p) in basis.iter().enumerate() {
            from_vertex[p.source].push(i);
            to_vertex[p.target].push(i);
        }
        Ok(Algebra {
            field,
            quiver,
            forbidden,
            commutations,
            basis,
            word_index,
            prefix,
            from_vertex,
            to_vertex,
            opposite_cache: OnceLock::new(),
        })
    }

    /// The opposite algebra, computed once and shared.
    pub fn opposite_arc(&self) -> Arc<Algebra> {
        self.opposite_cache.get_or_init(|| Arc::new(self.opposite())).clone()
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn forbidden(&self) -> &[Vec<usize>] {
        &self.forbidden
    }

    pub fn commutations(&self) -> &[(Vec<usize>, Vec<usize>)] {
        &self.commutations
    }

    pub fn is_monomial(&self) -> bool {
        self.commutations.is_empty()
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.quiver.arrows.len()
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.quiver.arrows[a]
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn path(&self, i: usize) -> &Path {
        &self.basis[i]
    }

    /// Basis index of the trivial path at `v`.
    pub fn trivial(&self, v: usize) -> usize {
        v
    }

    /// Basis index of the class of the arrow `a`.
    pub fn arrow_basis(&self, a: usize) -> usize {
        self.word_index[&vec![a]]
    }

    /// Basis indices of paths starting at `v`, in basis order.
    pub fn paths_from(&self, v: usize) -> &[usize] {
        &self.from_vertex[v]
    }

    /// Basis indices of paths ending at `v`, in basis order.
    pub fn paths_to(&self, v: usize) -> &[usize] {
        &self.to_vertex[v]
    }

    pub fn paths_between(&self, u: usize, v: usize) -> Vec<usize> {
        self.from_vertex[u].iter().copied().filter(|&i| self.basis[i].target == v).collect()
    }

    /// For a nontrivial basis path, the basis index of its representative's
    /// prefix together with the final arrow.
    pub fn prefix(&self, i: usize) -> Option<(usize, usize)> {
        self.prefix[i]
    }

    /// Basis index of the class of an arbitrary arrow word, or `None` if the
    /// word is zero in the algebra or not composable.
    pub fn word_class(&self, word: &[usize]) -> Option<usize> {
        self.word_index.get(word).copied()
    }

    /// Product of two basis paths: `Some(k)` for the basis path `k`, `None`
    /// for zero.
    pub fn mul(&self, i: usize, j: usize) -> Option<usize> {
        let (p, q) = (&self.basis[i], &self.basis[j]);
        if p.target != q.source {
            return None;
        }
        if p.is_trivial() {
            return Some(j);
        }
        if q.is_trivial() {
            return Some(i);
        }
        let mut w = p.arrows.clone();
        w.extend_from_slice(&q.arrows);
        self.word_index.get(&w).copied()
    }

    /// Largest path length in the basis plus one (the Loewy length of `A`).
    pub fn loewy_length(&self) -> usize {
        self.basis.iter().map(|p| p.len()).max().unwrap_or(0) + 1
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.quiver.vertices[v]
    }

    /// Readable name of a basis path, e.g. `e_1` or `a*b`.
    pub fn path_name(&self, i: usize) -> String {
        let p = &self.basis[i];
        if p.is_trivial() {
            format!("e_{}", self.quiver.vertices[p.source])
        } else {
            p.arrows.iter().map(|&a| self.quiver.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
        }
    }

    /// Whether the underlying quiver is a disjoint union of vertices.
    pub fn is_semisimple(&self) -> bool {
        self.quiver.arrows.is_empty()
    }

    /// Translate an arrow-name sequence into arrow indices.
    pub fn word_from_names(&self, names: &[impl AsRef<str>]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|n| {
                self.quiver
                    .arrow_index(n.as_ref())
                    .ok_or_else(|| Error::InvalidInput(format!("unknown arrow {}", n.as_ref())))
            })
            .collect()
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "algebra over {} with {} vertices, {} arrows, dimension {}",
            self.field,
            self.num_vertices(),
            self.num_arrows(),
            self.dim()
        )
    }
}

fn contains_forbidden(word: &[usize], forbidden: &[Vec<usize>]) -> bool {
    forbidden.iter().any(|f| f.len() <= word.len() && word.windows(f.len()).any(|w| w == f.as_slice()))
}

/// All words congruent to `word` under the rewriting `p <-> q`, sorted.
fn congruence_class(word: &[usize], commutations: &[(Vec<usize>, Vec<usize>)]) -> Vec<Vec<usize>> {
    if commutations.is_empty() {
        return vec![word.to_vec()];
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(word.to_vec());
    queue.push_back(word.to_vec());
    while let Some(w) = queue.pop_front() {
        for (p, q) in commutations {
            for (l, r) in [(p, q), (q, p)] {
                if l.len() > w.len() {
                    continue;
                }
                for start in 0..=w.len() - l.len() {
                    if &w[start..start + l.len()] == l.as_slice() {
                        let mut nw = w.clone();
                        nw[start..start + l.len()].copy_from_slice(r);
                        if seen.insert(nw.clone()) {
                            queue.push_back(nw);
                        }
                    }
                }
            }
        }
    }
    seen.into_iter().collect()
}
