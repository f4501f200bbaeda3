//! Per-session memoization: iso-class registries of indecomposable
//! non-projective modules, their syzygy graph, and the projective and
//! injective dimensions read off that graph.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Serialize, Serializer};

use crate::algebra::Algebra;
use crate::decomp::{decompose, indecomposables_isomorphic};
use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::module::{same_algebra, Module};

/// Default bound on resolution lengths and syzygy-graph depth.
pub const DEFAULT_DEPTH_LIMIT: usize = 64;

/// A projective or injective dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HomDim {
    /// The zero module, whose dimension is `-∞` by convention.
    Zero,
    Finite(usize),
    /// Certified infinite: some indecomposable in the syzygy graph recurs
    /// as a summand of its own `period`-th syzygy.
    Infinite { period: usize },
    /// The depth limit was reached without a certificate either way.
    Unknown { limit: usize },
}

impl HomDim {
    pub fn finite(&self) -> Option<usize> {
        match self {
            HomDim::Finite(n) => Some(*n),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, HomDim::Finite(_) | HomDim::Zero)
    }

    pub fn is_known(&self) -> bool {
        !matches!(self, HomDim::Unknown { .. })
    }

    /// Maximum with `Zero` as the neutral element; unknown dominates finite
    /// values and infinite dominates everything.
    pub fn max(self, other: HomDim) -> HomDim {
        use HomDim::*;
        match (self, other) {
            (Infinite { period }, _) | (_, Infinite { period }) => Infinite { period },
            (Unknown { limit }, _) | (_, Unknown { limit }) => Unknown { limit },
            (Zero, x) | (x, Zero) => x,
            (Finite(a), Finite(b)) => Finite(a.max(b)),
        }
    }
}

impl fmt::Display for HomDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomDim::Zero => write!(f, "none"),
            HomDim::Finite(n) => write!(f, "{n}"),
            HomDim::Infinite { period } => write!(f, "infinite (period {period})"),
            HomDim::Unknown { limit } => write!(f, "unknown (limit {limit})"),
        }
    }
}

impl Serialize for HomDim {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        match self {
            HomDim::Finite(n) => s.serialize_u64(*n as u64),
            HomDim::Zero => s.serialize_str("none"),
            HomDim::Infinite { .. } => s.serialize_str("infinite"),
            HomDim::Unknown { .. } => s.serialize_str("unknown"),
        }
    }
}

/// An element of the free abelian group on indecomposable non-projective
/// iso-classes: class id to multiplicity.
pub type KClassVector = BTreeMap<usize, usize>;

/// The syzygy of a registered class, expressed in the registry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyInfo {
    pub classes: KClassVector,
    pub has_projective_summand: bool,
}

struct Class<S> {
    module: Module<S>,
    unsplit: bool,
    syzygy: Option<Arc<SyzygyInfo>>,
}

struct Inner<S> {
    classes: Vec<Class<S>>,
    buckets: HashMap<Vec<usize>, Vec<usize>>,
}

/// Canonical representatives of indecomposable non-projective modules over
/// one algebra, with ids assigned in first-seen order.
pub struct Registry<S> {
    alg: Arc<Algebra>,
    inner: Mutex<Inner<S>>,
}

impl<S: Scalar> Registry<S> {
    pub fn new(alg: Arc<Algebra>) -> Self {
        Registry { alg, inner: Mutex::new(Inner { classes: Vec::new(), buckets: HashMap::new() }) }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn module(&self, id: usize) -> Module<S> {
        self.inner.lock().unwrap().classes[id].module.clone()
    }

    pub fn is_unsplit(&self, id: usize) -> bool {
        self.inner.lock().unwrap().classes[id].unsplit
    }

    /// Id of an indecomposable non-projective module, inserting it if new.
    pub fn register(&self, x: &Module<S>, unsplit: bool) -> usize {
        let profile = x.rank_profile();
        let mut inner = self.inner.lock().unwrap();
        if let Some(ids) = inner.buckets.get(&profile) {
            for &id in ids {
                if indecomposables_isomorphic(&inner.classes[id].module, x) {
                    return id;
                }
            }
        }
        let id = inner.classes.len();
        inner.classes.push(Class { module: x.clone(), unsplit, syzygy: None });
        inner.buckets.entry(profile).or_default().push(id);
        id
    }

    /// The K-class of `M`: its non-projective indecomposable summands with
    /// multiplicities. Also reports whether `M` has a projective summand.
    pub fn k_class_full(&self, m: &Module<S>) -> Result<(KClassVector, bool)> {
        let d = decompose(m)?;
        let mut out = KClassVector::new();
        let mut proj = false;
        for (x, mult) in &d.summands {
            if x.is_projective() {
                proj = true;
                continue;
            }
            let unsplit = d.pieces.iter().any(|p| p.unsplit && p.module.dims() == x.dims());
            let id = self.register(x, unsplit);
            *out.entry(id).or_insert(0) += mult;
        }
        Ok((out, proj))
    }

    pub fn k_class(&self, m: &Module<S>) -> Result<KClassVector> {
        Ok(self.k_class_full(m)?.0)
    }

    /// The syzygy of class `id`, memoized.
    pub fn syzygy(&self, id: usize) -> Result<Arc<SyzygyInfo>> {
        let module = {
            let inner = self.inner.lock().unwrap();
            if let Some(s) = &inner.classes[id].syzygy {
                return Ok(s.clone());
            }
            inner.classes[id].module.clone()
        };
        let (classes, has_projective_summand) = self.k_class_full(&module.syzygy(1))?;
        let info = Arc::new(SyzygyInfo { classes, has_projective_summand });
        let mut inner = self.inner.lock().unwrap();
        Ok(inner.classes[id].syzygy.get_or_insert(info).clone())
    }

    /// Breadth-first exploration of the syzygy graph from `roots`, expanding
    /// classes up to distance `limit`.
    pub fn explore(&self, roots: &[usize], limit: usize) -> Result<Exploration> {
        let mut depth: BTreeMap<usize, usize> = BTreeMap::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        for &r in roots {
            if depth.insert(r, 0).is_none() {
                queue.push_back(r);
            }
        }
        let mut edges: BTreeMap<usize, Arc<SyzygyInfo>> = BTreeMap::new();
        let mut complete = true;
        while let Some(x) = queue.pop_front() {
            order.push(x);
            let dx = depth[&x];
            if dx >= limit {
                complete = false;
                continue;
            }
            let info = self.syzygy(x)?;
            for &y in info.classes.keys() {
                if let std::collections::btree_map::Entry::Vacant(e) = depth.entry(y) {
                    e.insert(dx + 1);
                    queue.push_back(y);
                }
            }
            edges.insert(x, info);
        }
        Ok(Exploration { order, edges, complete, limit })
    }
}

/// A finite part of the syzygy graph.
#[derive(Clone, Debug)]
pub struct Exploration {
    /// Classes in breadth-first order.
    pub order: Vec<usize>,
    /// Syzygies of every expanded class.
    pub edges: BTreeMap<usize, Arc<SyzygyInfo>>,
    /// Whether every reached class was expanded.
    pub complete: bool,
    pub limit: usize,
}

impl Exploration {
    /// Length of a shortest cycle through some reachable class, if any.
    pub fn cycle_period(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for &start in self.edges.keys() {
            let mut dist: BTreeMap<usize, usize> = BTreeMap::new();
            let mut queue = VecDeque::from([(start, 0usize)]);
            while let Some((x, d)) = queue.pop_front() {
                let Some(info) = self.edges.get(&x) else { continue };
                for &y in info.classes.keys() {
                    if y == start {
                        best = Some(best.map_or(d + 1, |b| b.min(d + 1)));
                        queue.clear();
                        break;
                    }
                    if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(y) {
                        e.insert(d + 1);
                        queue.push_back((y, d + 1));
                    }
                }
            }
        }
        best
    }

    /// Projective dimension of every expanded class, assuming the graph is
    /// acyclic and complete.
    fn pd_table(&self) -> BTreeMap<usize, usize> {
        let mut pd: BTreeMap<usize, usize> = BTreeMap::new();
        fn visit(x: usize, ex: &Exploration, pd: &mut BTreeMap<usize, usize>) -> usize {
            if let Some(&v) = pd.get(&x) {
                return v;
            }
            let info = &ex.edges[&x];
            let mut best = 0;
            for &y in info.classes.keys() {
                best = best.max(visit(y, ex, pd));
            }
            let v = 1 + best;
            pd.insert(x, v);
            v
        }
        for &x in self.edges.keys() {
            visit(x, self, &mut pd);
        }
        pd
    }

    /// Projective dimension of a class or combination of classes given the
    /// exploration started from them.
    pub fn pd_of(&self, roots: &[usize]) -> HomDim {
        if let Some(period) = self.cycle_period() {
            return HomDim::Infinite { period };
        }
        if !self.complete {
            return HomDim::Unknown { limit: self.limit };
        }
        let table = self.pd_table();
        roots.iter().fold(HomDim::Zero, |acc, r| acc.max(HomDim::Finite(table[r])))
    }
}

/// Memoization context for one computation: one registry per algebra.
pub struct Session<S> {
    limit: usize,
    registries: Mutex<Vec<Arc<Registry<S>>>>,
}

impl<S: Scalar> Default for Session<S> {
    fn default() -> Self {
        Self::new(DEFAULT_DEPTH_LIMIT)
    }
}

impl<S: Scalar> Session<S> {
    pub fn new(limit: usize) -> Self {
        Session { limit, registries: Mutex::new(Vec::new()) }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn registry(&self, alg: &Arc<Algebra>) -> Arc<Registry<S>> {
        let mut regs = self.registries.lock().unwrap();
        if let Some(r) = regs.iter().find(|r| same_algebra(&r.alg, alg)) {
            return r.clone();
        }
        let r = Arc::new(Registry::new(alg.clone()));
        regs.push(r.clone());
        r
    }

    /// Projective dimension with a periodicity certificate for infinite
    /// values.
    pub fn pd(&self, m: &Module<S>) -> Result<HomDim> {
        if m.is_zero() {
            return Ok(HomDim::Zero);
        }
        let reg = self.registry(m.algebra());
        let (k, _) = reg.k_class_full(m)?;
        if k.is_empty() {
            return Ok(HomDim::Finite(0));
        }
        let roots: Vec<usize> = k.keys().copied().collect();
        let ex = reg.explore(&roots, self.limit)?;
        Ok(ex.pd_of(&roots))
    }

    /// Injective dimension, as the projective dimension of the dual over the
    /// opposite algebra.
    pub fn id(&self, m: &Module<S>) -> Result<HomDim> {
        self.pd(&m.dual())
    }

    /// Like [`Session::pd`] but an unknown value is an error.
    pub fn pd_strict(&self, m: &Module<S>) -> Result<HomDim> {
        match self.pd(m)? {
            HomDim::Unknown { limit } => Err(Error::DepthLimitExceeded { limit }),
            d => Ok(d),
        }
    }
}
