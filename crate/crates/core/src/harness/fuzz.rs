//! Seeded random triangular recollements over Nakayama corners.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::datum::{triangular_recollement_glued, RecollementDatum};
use crate::algebra::{Algebra, ConnectingArrow, Gluing, NakayamaShape};
use crate::error::Result;
use crate::linalg::{FieldSpec, Scalar};

/// One generated instance: Nakayama corners `B`, `C` and a gluing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzInstance {
    pub name: String,
    pub b: NakayamaShape,
    pub c: NakayamaShape,
    pub gluing: Gluing,
}

impl FuzzInstance {
    pub fn corners(&self, field: &FieldSpec) -> Result<(Arc<Algebra>, Arc<Algebra>)> {
        Ok((
            Arc::new(Algebra::nakayama(&self.b, field.clone())?),
            Arc::new(Algebra::nakayama(&self.c, field.clone())?),
        ))
    }

    pub fn datum<S: Scalar>(&self, field: &FieldSpec) -> Result<RecollementDatum<S>> {
        let (b, c) = self.corners(field)?;
        triangular_recollement_glued(&b, &c, &self.gluing)
    }
}

fn random_shape(rng: &mut ChaCha8Rng) -> NakayamaShape {
    let n = rng.gen_range(1..=3);
    let cyclic = rng.gen_bool(0.4);
    let mut kupisch: Vec<usize>;
    if cyclic {
        kupisch = (0..n).map(|_| rng.gen_range(2..=4)).collect();
        loop {
            let mut changed = false;
            for i in 0..n {
                let bound = kupisch[(i + 1) % n] + 1;
                if kupisch[i] > bound {
                    kupisch[i] = bound;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    } else {
        kupisch = vec![1; n];
        for i in (0..n.saturating_sub(1)).rev() {
            kupisch[i] = rng.gen_range(1..=kupisch[i + 1] + 1);
        }
    }
    NakayamaShape { cyclic, kupisch }
}

/// Arrow names of a Nakayama algebra as they appear in the glued quiver.
fn glued_arrows(alg: &Algebra, prefix: &str) -> Vec<(String, usize, usize)> {
    alg.quiver().arrows.iter().map(|a| (format!("{prefix}{}", a.name), a.from, a.to)).collect()
}

/// A random instance; the gluing always yields a valid algebra.
pub fn random_instance(rng: &mut ChaCha8Rng, name: String, field: &FieldSpec) -> FuzzInstance {
    loop {
        let b = random_shape(rng);
        let c = random_shape(rng);
        let bn = b.kupisch.len();
        let cn = c.kupisch.len();
        let ba = Algebra::nakayama(&b, field.clone()).expect("generated Kupisch series is valid");
        let ca = Algebra::nakayama(&c, field.clone()).expect("generated Kupisch series is valid");
        let b_arrows = glued_arrows(&ba, "B.");
        let c_arrows = glued_arrows(&ca, "C.");
        let mut gluing = Gluing::default();
        let count = rng.gen_range(1..=2);
        for g in 0..count {
            let from = rng.gen_range(0..cn);
            let to = rng.gen_range(0..bn);
            let name = format!("g{}", g + 1);
            gluing.arrows.push(ConnectingArrow { name: name.clone(), from: (from + 1).to_string(), to: (to + 1).to_string() });
            if let Some((after, _, _)) = b_arrows.iter().find(|a| a.1 == to) {
                if rng.gen_bool(0.4) {
                    gluing.relations.push(vec![name.clone(), after.clone()]);
                }
            }
            if let Some((before, _, _)) = c_arrows.iter().find(|a| a.2 == from) {
                if rng.gen_bool(0.3) {
                    gluing.relations.push(vec![before.clone(), name.clone()]);
                }
            }
        }
        let inst = FuzzInstance { name: name.clone(), b, c, gluing };
        if inst.datum::<crate::Rational>(&FieldSpec::Rational).is_ok() {
            return inst;
        }
    }
}

/// `count` instances determined by `seed` alone.
pub fn fuzz_corpus(seed: u64, count: usize, field: &FieldSpec) -> Vec<FuzzInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|i| random_instance(&mut rng, format!("fuzz-{seed}-{i}"), field)).collect()
}
