//! Standard constructions: opposite and tensor algebras, triangular gluing,
//! lower triangular matrix algebras `T_n(A)` and Nakayama algebras.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Algebra, Quiver};
use crate::error::{Error, Result};
use crate::linalg::FieldSpec;

/// A connecting arrow of a triangular gluing, from a vertex of the `C`
/// corner to a vertex of the `B` corner.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectingArrow {
    pub name: String,
    pub from: String,
    pub to: String,
}

/// A presentation of the bimodule `M = e_2 A e_1` of a triangular algebra
/// `A = [B 0; M C]` by arrows from `C` to `B` together with monomial and
/// commutativity relations on the glued quiver. Relation words may mix
/// arrows of `B`, `C` and the connecting arrows.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing {
    #[serde(default)]
    pub arrows: Vec<ConnectingArrow>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
    #[serde(default)]
    pub commutations: Vec<(Vec<String>, Vec<String>)>,
}

/// Shape of a Nakayama algebra: orientation and Kupisch series (the lengths
/// of the indecomposable projectives `P_1, ..., P_n`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NakayamaShape {
    pub cyclic: bool,
    pub kupisch: Vec<usize>,
}

impl Algebra {
    /// The opposite algebra: arrows and relation words reversed.
    pub fn opposite(&self) -> Algebra {
        let mut q = Quiver::new(self.quiver.vertices.clone());
        for a in &self.quiver.arrows {
            q.add_arrow(a.name.clone(), a.to, a.from);
        }
        let rev = |w: &Vec<usize>| w.iter().rev().copied().collect::<Vec<_>>();
        let forbidden = self.forbidden.iter().map(rev).collect();
        let comm = self.commutations.iter().map(|(p, q)| (rev(p), rev(q))).collect();
        Algebra::new(q, forbidden, comm, self.field.clone()).expect("opposite of a valid algebra is valid")
    }

    /// The tensor product `self ⊗ other` over the ground field, presented on
    /// the product quiver with all squares commuting. Vertex `(a, b)` has
    /// index `a * other.num_vertices() + b`.
    pub fn tensor(&self, other: &Algebra) -> Result<Algebra> {
        if self.field != other.field {
            return Err(Error::InvalidInput("tensor factors over different fields".into()));
        }
        let (n1, n2) = (self.num_vertices(), other.num_vertices());
        let vid = |a: usize, b: usize| a * n2 + b;
        let mut vertices = Vec::with_capacity(n1 * n2);
        for a in 0..n1 {
            for b in 0..n2 {
                vertices.push(format!("{}|{}", self.vertex_label(a), other.vertex_label(b)));
            }
        }
        let mut q = Quiver::new(vertices);
        // left[alpha][b] and right[a][beta] give arrow indices in the product quiver.
        let mut left = vec![vec![0; n2]; self.num_arrows()];
        let mut right = vec![vec![0; other.num_arrows()]; n1];
        for (ai, al) in self.quiver.arrows.iter().enumerate() {
            for b in 0..n2 {
                left[ai][b] =
                    q.add_arrow(format!("{}|{}", al.name, other.vertex_label(b)), vid(al.from, b), vid(al.to, b));
            }
        }
        for a in 0..n1 {
            for (bi, be) in other.quiver.arrows.iter().enumerate() {
                right[a][bi] =
                    q.add_arrow(format!("{}|{}", self.vertex_label(a), be.name), vid(a, be.from), vid(a, be.to));
            }
        }
        let mut forbidden = Vec::new();
        let mut comm = Vec::new();
        for b in 0..n2 {
            for f in &self.forbidden {
                forbidden.push(f.iter().map(|&x| left[x][b]).collect());
            }
            for (p, r) in &self.commutations {
                comm.push((p.iter().map(|&x| left[x][b]).collect(), r.iter().map(|&x| left[x][b]).collect()));
            }
        }
        for a in 0..n1 {
            for f in &other.forbidden {
                forbidden.push(f.iter().map(|&x| right[a][x]).collect());
            }
            for (p, r) in &other.commutations {
                comm.push((p.iter().map(|&x| right[a][x]).collect(), r.iter().map(|&x| right[a][x]).collect()));
            }
        }
        for (ai, al) in self.quiver.arrows.iter().enumerate() {
            for (bi, be) in other.quiver.arrows.iter().enumerate() {
                comm.push((
                    vec![left[ai][be.from], right[al.to][bi]],
                    vec![right[al.from][bi], left[ai][be.to]],
                ));
            }
        }
        Algebra::new(q, forbidden, comm, self.field.clone())
    }

    /// The triangular algebra `[B 0; M C]` where `M` is presented by a
    /// gluing. Vertices of `B` come first, then those of `C`; the second
    /// return value lists the `B` and `C` vertex indices.
    pub fn triangular_glue(b: &Algebra, c: &Algebra, gluing: &Gluing) -> Result<(Algebra, IdempotentSplit)> {
        if b.field != c.field {
            return Err(Error::InvalidInput("corner algebras over different fields".into()));
        }
        let nb = b.num_vertices();
        let b_labels: BTreeSet<&String> = b.quiver.vertices.iter().collect();
        let clash = c.quiver.vertices.iter().any(|v| b_labels.contains(v))
            || c.quiver.arrows.iter().any(|a| b.quiver.arrow_index(&a.name).is_some());
        let (pb, pc) = if clash { ("B.", "C.") } else { ("", "") };
        let mut vertices: Vec<String> = b.quiver.vertices.iter().map(|v| format!("{pb}{v}")).collect();
        vertices.extend(c.quiver.vertices.iter().map(|v| format!("{pc}{v}")));
        let mut q = Quiver::new(vertices);
        for a in &b.quiver.arrows {
            q.add_arrow(format!("{pb}{}", a.name), a.from, a.to);
        }
        let off = b.num_arrows();
        for a in &c.quiver.arrows {
            q.add_arrow(format!("{pc}{}", a.name), a.from + nb, a.to + nb);
        }
        for ca in &gluing.arrows {
            let from = c
                .quiver
                .vertex_index(&ca.from)
                .ok_or_else(|| Error::InvalidInput(format!("connecting arrow source {} not in C", ca.from)))?;
            let to = b
                .quiver
                .vertex_index(&ca.to)
                .ok_or_else(|| Error::InvalidInput(format!("connecting arrow target {} not in B", ca.to)))?;
            q.add_arrow(ca.name.clone(), from + nb, to);
        }
        let mut forbidden: Vec<Vec<usize>> = b.forbidden.clone();
        forbidden.extend(c.forbidden.iter().map(|w| w.iter().map(|&x| x + off).collect()));
        let mut comm: Vec<(Vec<usize>, Vec<usize>)> = b.commutations.clone();
        comm.extend(
            c.commutations
                .iter()
                .map(|(p, r)| (p.iter().map(|&x| x + off).collect(), r.iter().map(|&x| x + off).collect())),
        );
        let lookup = |names: &[String], q: &Quiver| -> Result<Vec<usize>> {
            names
                .iter()
                .map(|n| {
                    q.arrow_index(n)
                        .or_else(|| q.arrow_index(&format!("{pb}{n}")))
                        .ok_or_else(|| Error::InvalidInput(format!("unknown arrow {n} in gluing relation")))
                })
                .collect()
        };
        for r in &gluing.relations {
            forbidden.push(lookup(r, &q)?);
        }
        for (l, r) in &gluing.commutations {
            comm.push((lookup(l, &q)?, lookup(r, &q)?));
        }
        let alg = Algebra::new(q, forbidden, comm, b.field.clone())?;
        let split = IdempotentSplit { part1: (0..nb).collect(), part2: (nb..nb + c.num_vertices()).collect() };
        Ok((alg, split))
    }

    /// The lower triangular matrix algebra `T_n(A)`, built recursively as
    /// `[A 0; M T_{n-1}(A)]` with `M` the column of `n - 1` copies of `A`.
    /// Copy `i` of vertex `v` is labelled `v~i`; connecting arrows `c_v~i`
    /// run from copy `i + 1` to copy `i`.
    pub fn t_n(a: &Algebra, n: usize) -> Result<Algebra> {
        if n == 0 {
            return Err(Error::InvalidInput("T_n needs n >= 1".into()));
        }
        Ok(Self::t_n_from(a, 1, n))
    }

    fn t_n_from(a: &Algebra, first: usize, last: usize) -> Algebra {
        let copy = a.relabel(first);
        if first == last {
            return copy;
        }
        let rest = Self::t_n_from(a, first + 1, last);
        let mut g = Gluing::default();
        for (vi, v) in a.quiver.vertices.iter().enumerate() {
            g.arrows.push(ConnectingArrow {
                name: format!("c_{v}~{first}"),
                from: format!("{v}~{}", first + 1),
                to: a.relabel_vertex(vi, first),
            });
        }
        for al in &a.quiver.arrows {
            let (u, w) = (&a.quiver.vertices[al.from], &a.quiver.vertices[al.to]);
            g.commutations.push((
                vec![format!("{}~{}", al.name, first + 1), format!("c_{w}~{first}")],
                vec![format!("c_{u}~{first}"), format!("{}~{first}", al.name)],
            ));
        }
        Self::triangular_glue(&copy, &rest, &g).expect("T_n gluing is always valid").0
    }

    fn relabel_vertex(&self, v: usize, copy: usize) -> String {
        format!("{}~{copy}", self.quiver.vertices[v])
    }

    fn relabel(&self, copy: usize) -> Algebra {
        let mut q = Quiver::new((0..self.num_vertices()).map(|v| self.relabel_vertex(v, copy)).collect());
        for a in &self.quiver.arrows {
            q.add_arrow(format!("{}~{copy}", a.name), a.from, a.to);
        }
        Algebra::new(q, self.forbidden.clone(), self.commutations.clone(), self.field.clone())
            .expect("relabelling preserves validity")
    }

    /// The Nakayama algebra with the given Kupisch series. Vertices are
    /// `1..=n`, arrows `a_i: i -> i+1` (and `a_n: n -> 1` when cyclic); an
    /// arrow with `c_i = 1` on a linear quiver is omitted.
    pub fn nakayama(shape: &NakayamaShape, field: FieldSpec) -> Result<Algebra> {
        let c = &shape.kupisch;
        let n = c.len();
        if n == 0 {
            return Err(Error::BadKupisch("empty Kupisch series".into()));
        }
        for i in 0..n {
            let next = if i + 1 < n {
                Some(c[i + 1])
            } else if shape.cyclic {
                Some(c[0])
            } else {
                None
            };
            if c[i] == 0 {
                return Err(Error::BadKupisch(format!("c_{} = 0", i + 1)));
            }
            if shape.cyclic && c[i] < 2 {
                return Err(Error::BadKupisch(format!("c_{} < 2 on a cycle", i + 1)));
            }
            if let Some(nx) = next {
                if nx + 1 < c[i] {
                    return Err(Error::BadKupisch(format!("c_{} < c_{} - 1", i + 2, i + 1)));
                }
            } else if c[i] != 1 {
                return Err(Error::BadKupisch("the last projective of a linear series must be simple".into()));
            }
            if !shape.cyclic && c[i] > n - i {
                return Err(Error::BadKupisch(format!("c_{} exceeds the remaining quiver length", i + 1)));
            }
        }
        let mut q = Quiver::new((1..=n).map(|i| i.to_string()).collect());
        let mut arrow_of = vec![None; n];
        for i in 0..n {
            let has = if shape.cyclic { true } else { i + 1 < n && c[i] >= 2 };
            if has {
                arrow_of[i] = Some(q.add_arrow(format!("a{}", i + 1), i, (i + 1) % n));
            }
        }
        let mut forbidden = Vec::new();
        for i in 0..n {
            let len = c[i];
            if len < 2 {
                continue;
            }
            let next_len = c.get(i + 1).copied().or(if shape.cyclic { Some(c[0]) } else { None });
            let minimal = match next_len {
                Some(nx) => nx >= len,
                None => false,
            };
            if !minimal {
                continue;
            }
            let word: Option<Vec<usize>> = (0..len).map(|k| arrow_of[(i + k) % n]).collect();
            if let Some(w) = word {
                if shape.cyclic || i + len < n {
                    forbidden.push(w);
                }
            }
        }
        Algebra::monomial(q, forbidden, field)
    }

    /// Detects whether the algebra is Nakayama (monomial, every vertex with at
    /// most one incoming and one outgoing arrow) and returns its Kupisch
    /// series in vertex order.
    pub fn nakayama_shape(&self) -> Option<NakayamaShape> {
        if !self.is_monomial() {
            return None;
        }
        let n = self.num_vertices();
        let mut out_deg = vec![0; n];
        let mut in_deg = vec![0; n];
        for a in &self.quiver.arrows {
            out_deg[a.from] += 1;
            in_deg[a.to] += 1;
        }
        if out_deg.iter().chain(&in_deg).any(|&d| d > 1) {
            return None;
        }
        let cyclic = n > 0 && out_deg.iter().all(|&d| d == 1) && in_deg.iter().all(|&d| d == 1);
        Some(NakayamaShape { cyclic, kupisch: (0..n).map(|v| self.paths_from(v).len()).collect() })
    }
}

/// Vertex partition of a triangular algebra: `part1` spans the `B` corner
/// and `part2` the `C` corner; arrows only run from `part2` to `part1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentSplit {
    pub part1: Vec<usize>,
    pub part2: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> Algebra {
        Algebra::monomial(Quiver::new(vec!["1".into()]), vec![], FieldSpec::Rational).unwrap()
    }

    fn dual_numbers() -> Algebra {
        let mut q = Quiver::new(vec!["1".into()]);
        q.add_arrow("x", 0, 0);
        Algebra::monomial(q, vec![vec![0, 0]], FieldSpec::Rational).unwrap()
    }

    fn a2() -> Algebra {
        let mut q = Quiver::new(vec!["1".into(), "2".into()]);
        q.add_arrow("a", 0, 1);
        Algebra::monomial(q, vec![], FieldSpec::Rational).unwrap()
    }

    #[test]
    fn opposite_examples() {
        let k = field();
        assert_eq!(k.opposite(), k);
        let op = a2().opposite();
        assert_eq!(op.arrow(0).from, 1);
        assert_eq!(op.arrow(0).to, 0);
        let a = dual_numbers();
        assert_eq!(a.opposite().opposite(), a);
        assert_eq!(a2().opposite().opposite(), a2());
    }

    #[test]
    fn glue_field_with_field() {
        let k = field();
        let g = Gluing {
            arrows: vec![ConnectingArrow { name: "m".into(), from: "1".into(), to: "1".into() }],
            ..Default::default()
        };
        let (a, split) = Algebra::triangular_glue(&k, &k, &g).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(split.part1, vec![0]);
        assert_eq!(split.part2, vec![1]);
        assert_eq!(a.arrow(0).from, 1);
        let (z, _) = Algebra::triangular_glue(&k, &k, &Gluing::default()).unwrap();
        assert_eq!(z.dim(), 2);
    }

    #[test]
    fn glue_dual_numbers_regular() {
        let b = dual_numbers();
        let k = field();
        let g = Gluing {
            arrows: vec![ConnectingArrow { name: "m".into(), from: "1".into(), to: "1".into() }],
            ..Default::default()
        };
        let (a, _) = Algebra::triangular_glue(&b, &k, &g).unwrap();
        assert_eq!(a.dim(), 2 + 1 + 2);
    }

    #[test]
    fn t_n_dimensions() {
        let k = field();
        assert_eq!(Algebra::t_n(&k, 1).unwrap().dim(), 1);
        assert_eq!(Algebra::t_n(&k, 2).unwrap().dim(), 3);
        assert_eq!(Algebra::t_n(&k, 3).unwrap().dim(), 6);
        for base in [dual_numbers(), a2()] {
            for n in 1..=4 {
                assert_eq!(Algebra::t_n(&base, n).unwrap().dim(), n * (n + 1) / 2 * base.dim());
            }
        }
        let t2 = Algebra::t_n(&k, 2).unwrap();
        assert_eq!(t2.num_arrows(), 1);
    }

    #[test]
    fn t_n_matches_tensor_with_linear_quiver() {
        let lin = Algebra::nakayama(&NakayamaShape { cyclic: false, kupisch: vec![3, 2, 1] }, FieldSpec::Rational)
            .unwrap();
        let t = Algebra::t_n(&a2(), 3).unwrap();
        assert_eq!(t.dim(), a2().tensor(&lin).unwrap().dim());
    }

    #[test]
    fn nakayama_examples() {
        let a = Algebra::nakayama(&NakayamaShape { cyclic: false, kupisch: vec![2, 1] }, FieldSpec::Rational).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.num_arrows(), 1);
        let d = Algebra::nakayama(&NakayamaShape { cyclic: true, kupisch: vec![2] }, FieldSpec::Rational).unwrap();
        assert_eq!(d.dim(), 2);
        assert_eq!(d.forbidden().len(), 1);
        let r = Algebra::nakayama(&NakayamaShape { cyclic: false, kupisch: vec![2, 2, 1] }, FieldSpec::Rational)
            .unwrap();
        assert_eq!(r.dim(), 5);
        assert_eq!(r.nakayama_shape().unwrap().kupisch, vec![2, 2, 1]);
        assert!(matches!(
            Algebra::nakayama(&NakayamaShape { cyclic: false, kupisch: vec![3, 1, 1] }, FieldSpec::Rational),
            Err(Error::BadKupisch(_))
        ));
        assert!(matches!(
            Algebra::nakayama(&NakayamaShape { cyclic: true, kupisch: vec![1] }, FieldSpec::Rational),
            Err(Error::BadKupisch(_))
        ));
    }

    #[test]
    fn nakayama_kupisch_roundtrip() {
        let shapes = [
            (true, vec![3, 3]),
            (true, vec![2, 3, 2]),
            (false, vec![3, 2, 2, 1]),
            (false, vec![2, 1, 2, 1]),
            (true, vec![4, 3, 3]),
        ];
        for (cyclic, k) in shapes {
            let s = NakayamaShape { cyclic, kupisch: k.clone() };
            let a = Algebra::nakayama(&s, FieldSpec::Rational).unwrap();
            assert_eq!(a.nakayama_shape().unwrap().kupisch, k);
            assert_eq!(a.dim(), k.iter().sum::<usize>());
        }
    }

    #[test]
    fn tensor_dimension() {
        let t = dual_numbers().tensor(&a2()).unwrap();
        assert_eq!(t.dim(), 6);
    }
}
