//! End-to-end acceptance run: one line per criterion, nonzero exit on any
//! failure.

mod common;

use std::error::Error;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use homdim::complexes::{complex_invariants, dual_perfect, minimal_projective_resolution, BoundedComplex, Extent};
use homdim::decomp::enumerate_indecomposables;
use homdim::harness::{
    bound_report, corollary_3_checks, fuzz_corpus, trivial_tilting_checks, triangular_recollement, BoundReport,
    Hypothesis, Interval, Verdict,
};
use homdim::igusa_todorov::{division_certificates, phi, phi_dim, PhiDimMode};
use homdim::invariants::{finitistic_dimension, global_dimension, gorenstein_profile, is_selfinjective, FdMode};
use homdim::module::{Bimodule, Module};
use homdim::session::{HomDim, Session};
use homdim::{Algebra, FieldSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, Box<dyn Error>>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), Box<dyn Error>> {
    if cond {
        Ok(())
    } else {
        Err(msg.into().into())
    }
}

fn a2_report() -> Result<BoundReport, Box<dyn Error>> {
    let k = field();
    let d = triangular_recollement(&k, &k, &Bimodule::<Q>::regular(k.clone()))?;
    Ok(bound_report(&Session::default(), &d, "A2")?)
}

fn criterion_1() -> Outcome {
    let s = Session::<Q>::default();
    let dn = dual_numbers();
    let a = a2();
    let dn_phi = phi_dim(&s, &dn, PhiDimMode::RepFinite)?;
    ensure(is_selfinjective(&s, &dn)?, "k[x]/(x^2) is not reported selfinjective")?;
    ensure(dn_phi.value == 0 && dn_phi.exact, format!("phi dim k[x]/(x^2) = {dn_phi:?}"))?;
    let a_phi = phi_dim(&s, &a, PhiDimMode::GldimFinite)?;
    ensure(!is_selfinjective(&s, &a)?, "A_2 is reported selfinjective")?;
    ensure(a_phi.value == 1 && a_phi.exact, format!("phi dim A_2 = {a_phi:?}"))?;
    Ok("k[x]/(x^2): selfinjective, phi dim 0; A_2: not selfinjective, phi dim 1".into())
}

fn criterion_2() -> Outcome {
    let s = Session::<Q>::default();
    let mut shapes: Vec<(bool, Vec<usize>)> = Vec::new();
    for n in 1..=5 {
        shapes.extend(linear_kupisch(n).into_iter().map(|k| (false, k)));
    }
    for n in 1..=3 {
        shapes.extend(cyclic_kupisch(n, 4).into_iter().map(|k| (true, k)));
    }
    let (mut tested, mut infinite) = (0, 0);
    for (cyclic, k) in shapes {
        let alg = nakayama(cyclic, &k);
        let fd = finitistic_dimension(&s, &alg, FdMode::RepFinite)?;
        let ph = phi_dim(&s, &alg, PhiDimMode::RepFinite)?;
        ensure(fd.value <= ph.value, format!("kupisch {k:?}: fin dim {} > phi dim {}", fd.value, ph.value))?;
        let Some(gl) = global_dimension(&s, &alg)?.finite() else {
            infinite += 1;
            continue;
        };
        ensure(
            fd.exact && fd.value == gl && ph.value == gl,
            format!("kupisch {k:?} cyclic={cyclic}: gldim {gl}, fin dim {}, phi dim {}", fd.value, ph.value),
        )?;
        tested += 1;
    }
    ensure(tested >= 20, format!("only {tested} algebras of finite global dimension"))?;
    Ok(format!("{tested} Nakayama algebras with fin dim = phi dim = gldim, fin dim <= phi dim on {infinite} more"))
}

fn criterion_3() -> Outcome {
    let r = a2_report()?;
    ensure(r.quantities.id_a == Interval::exact(1), format!("id A = {:?}", r.quantities.id_a))?;
    let c = r.check("Thm1c").ok_or("no Thm1c check")?;
    ensure(c.hypothesis == Hypothesis::Holds, "hypothesis of Thm1c does not hold")?;
    ensure(c.rhs == Interval::exact(1) && c.verdict == Verdict::Verified && c.tight, format!("{c:?}"))?;
    Ok("id A_2 = 1 = upper bound".into())
}

fn criterion_4() -> Outcome {
    let r = a2_report()?;
    let p = &r.quantities.phi_dim;
    ensure(p.a.exact && p.b.exact && p.c.exact, "phi dimensions are not exact")?;
    let c = r.check("Thm2c").ok_or("no Thm2c check")?;
    ensure(c.lhs == Interval::exact(1) && c.rhs == Interval::exact(1), format!("{c:?}"))?;
    ensure(c.verdict == Verdict::Verified, format!("{c:?}"))?;
    Ok("phi dim A_2 = 1 = upper bound".into())
}

fn criterion_5() -> Outcome {
    let s = Session::<Q>::default();
    let corpus = fuzz_corpus(7, 50, &FieldSpec::Rational);
    let (mut checks, mut inconclusive, mut finite, mut infinite) = (0, 0, 0, 0);
    for inst in &corpus {
        let r = bound_report(&s, &inst.datum(&FieldSpec::Rational)?, &inst.name)?;
        let bad = r.violations();
        ensure(bad.is_empty(), format!("{}: {:?}", inst.name, bad))?;
        checks += r.checks.len();
        inconclusive += r.count(Verdict::Inconclusive);
        match r.quantities.gldim.a.is_finite() {
            Some(true) => finite += 1,
            Some(false) => infinite += 1,
            None => {}
        }
    }
    ensure(finite > 0 && infinite > 0, format!("gldim A finite {finite} times, infinite {infinite} times"))?;
    Ok(format!(
        "50 instances, {checks} checks, 0 violations, inconclusive rate {:.3}, gldim A finite/infinite {finite}/{infinite}",
        inconclusive as f64 / checks as f64
    ))
}

fn criterion_6() -> Outcome {
    let s = Session::<Q>::default();
    let mut total = 0;
    for alg in [field(), dual_numbers(), a2()] {
        for n in [2, 3] {
            for c in corollary_3_checks(&s, &alg, n, 0..=3)? {
                ensure(c.verdict == Verdict::Verified, format!("{c:?}"))?;
                total += 1;
            }
        }
    }
    let t2 = Arc::new(Algebra::t_n(&field(), 2)?);
    let id = gorenstein_profile(&s, &t2)?.id_right;
    ensure(id == HomDim::Finite(1), format!("id T_2(k) = {id:?}"))?;
    Ok(format!("{total} Gorenstein transfer checks verified, id T_2(k) = 1"))
}

fn complex_pool(alg: &Arc<Algebra>) -> Vec<Module<Q>> {
    enumerate_indecomposables::<Q>(alg).unwrap_or_else(|_| homdim::igusa_todorov::corpus_modules(alg))
}

fn random_nonacyclic(rng: &mut ChaCha8Rng, alg: &Arc<Algebra>, pool: &[Module<Q>]) -> BoundedComplex<Q> {
    loop {
        let mut x = random_complex(rng, alg, pool);
        if rng.gen_bool(0.3) {
            x = direct_sum(&x, &random_complex(rng, alg, pool));
        }
        if x.cohomology_support().is_some() {
            return x;
        }
    }
}

fn criterion_7() -> Outcome {
    let s = Session::<Q>::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let any: Vec<Arc<Algebra>> = vec![a2(), dual_numbers(), nakayama(false, &[3, 2, 1]), nakayama(true, &[2, 2]), v_loop()];
    let pools: Vec<Vec<Module<Q>>> = any.iter().map(complex_pool).collect();
    for _ in 0..100 {
        let i = rng.gen_range(0..any.len());
        let x = random_nonacyclic(&mut rng, &any[i], &pools[i]);
        let inv = complex_invariants(&x, &s)?;
        let top = x.cohomology_support().unwrap().1;
        ensure(inv.sup == -top && inv.sup_matches_cohomology, format!("sup {} but top cohomology in {top}", inv.sup))?;
    }

    let fin: Vec<Arc<Algebra>> =
        vec![a2(), nakayama(false, &[2, 2, 1]), nakayama(false, &[3, 2, 1]), nakayama(false, &[3, 3, 2, 1])];
    let pools: Vec<Vec<Module<Q>>> = fin.iter().map(complex_pool).collect();
    for _ in 0..50 {
        let i = rng.gen_range(0..fin.len());
        let x = random_nonacyclic(&mut rng, &fin[i], &pools[i]);
        let inv = complex_invariants(&x, &s)?;
        let pd = inv.pd.finite().ok_or("complex over finite gldim is not perfect")?;
        let xs = dual_perfect(&x, &s)?.to_bounded();
        let inv_s = complex_invariants(&xs, &s)?;
        ensure(inv_s.pd == Extent::Finite(-inv.sup), format!("pd X* = {:?}, sup X = {}", inv_s.pd, inv.sup))?;
        ensure(inv_s.sup == -pd, format!("sup X* = {}, pd X = {pd}", inv_s.sup))?;
        ensure(inv_s.sup == -xs.cohomology_support().unwrap().1, "sup of X* disagrees with its cohomology")?;
        let bidual = dual_perfect(&xs, &s)?;
        let res = minimal_projective_resolution(&x, s.limit())?.complex;
        let (lo, hi) = res.support().unwrap();
        ensure(bidual.support() == Some((lo, hi)), "X** has the wrong support")?;
        for deg in lo..=hi {
            let (mut p, mut q) = (res.term(deg).to_vec(), bidual.term(deg).to_vec());
            p.sort_unstable();
            q.sort_unstable();
            ensure(p == q, format!("X** differs from X in degree {deg}"))?;
        }
    }
    Ok("100 bounded complexes and 50 perfect complexes".into())
}

fn pd_test_algebras() -> Vec<Arc<Algebra>> {
    let mut out = vec![a2(), nakayama(false, &[2, 2, 2, 2, 2, 2, 1]), nakayama(false, &[2, 2, 2, 2, 2, 1])];
    for n in 2..=5 {
        out.extend(linear_kupisch(n).into_iter().filter(|k| k[0] > 1).step_by(3).map(|k| nakayama(false, &k)));
    }
    out.extend(cyclic_kupisch(3, 3).into_iter().map(|k| nakayama(true, &k)));
    out
}

fn criterion_8() -> Outcome {
    let s = Session::<Q>::default();
    let mut tested = 0;
    let mut deepest = 0;
    'outer: for alg in pd_test_algebras() {
        let ind = enumerate_indecomposables::<Q>(&alg)?;
        let mut modules: Vec<Module<Q>> = ind.clone();
        for i in 0..ind.len() {
            for j in i + 1..ind.len() {
                modules.push(ind[i].direct_sum(&ind[j]));
            }
        }
        let mut per_algebra = 0;
        for m in modules {
            let pd = match s.pd(&m)? {
                HomDim::Finite(d) if d <= 6 => d,
                _ => continue,
            };
            let p = phi(&s, &m)?.value;
            ensure(p == pd, format!("phi {p} != pd {pd} for dims {:?}", m.dims()))?;
            deepest = deepest.max(pd);
            tested += 1;
            per_algebra += 1;
            if tested == 200 {
                break 'outer;
            }
            if per_algebra == 12 {
                break;
            }
        }
    }
    ensure(tested == 200, format!("only {tested} modules of finite projective dimension"))?;
    Ok(format!("200 modules, pd up to {deepest}"))
}

fn criterion_9() -> Outcome {
    let s = Session::<Q>::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let algebras = vec![
        nakayama(true, &[2, 2]),
        nakayama(true, &[3, 2]),
        nakayama(true, &[3, 3, 2]),
        nakayama(false, &[3, 2, 2, 1]),
        nakayama(false, &[2, 2, 2, 1]),
        nakayama(true, &[4, 3, 3]),
    ];
    let (mut tested, mut certified, mut equal) = (0, 0, 0);
    for alg in &algebras {
        let ind: Vec<Module<Q>> = enumerate_indecomposables::<Q>(alg)?.into_iter().filter(|m| !m.is_projective()).collect();
        if ind.len() < 2 {
            continue;
        }
        for _ in 0..15 {
            let r = rng.gen_range(2..=3.min(ind.len()));
            let mut idx: Vec<usize> = (0..ind.len()).collect();
            rand::seq::SliceRandom::shuffle(&mut idx[..], &mut rng);
            let parts: Vec<Module<Q>> = idx[..r].iter().map(|&i| ind[i].clone()).collect();
            let m = Module::direct_sum_all(alg.clone(), &parts);
            let p = phi(&s, &m)?.value;
            let certs = division_certificates(&s, &m, p + 2)?;
            tested += 1;
            if let Some(d) = certs.iter().map(|c| c.d).max() {
                ensure(d <= p, format!("certified {d}-division above phi = {p}"))?;
                certified += 1;
                if d == p {
                    equal += 1;
                }
            }
        }
    }
    Ok(format!("{tested} modules, {certified} with certificates, max d = phi in {equal}"))
}

fn criterion_10() -> Outcome {
    let s = Session::<Q>::default();
    let algebras = vec![
        field(),
        dual_numbers(),
        a2(),
        v_loop(),
        nakayama(false, &[3, 2, 1]),
        nakayama(false, &[2, 2, 1]),
        nakayama(true, &[2, 2]),
        nakayama(true, &[3, 3]),
        nakayama(true, &[3, 2]),
        nakayama(false, &[3, 3, 2, 1]),
    ];
    let mut total = 0;
    for alg in &algebras {
        for c in trivial_tilting_checks(&s, alg)? {
            ensure(c.verdict == Verdict::Verified && c.tight, format!("{c:?}"))?;
            total += 1;
        }
    }
    Ok(format!("{total} checks on {} algebras, all tight", algebras.len()))
}

fn fuzz_json(threads: usize) -> Result<String, Box<dyn Error>> {
    let corpus = fuzz_corpus(7, 50, &FieldSpec::Rational);
    let chunk = corpus.len().div_ceil(threads);
    let parts: Vec<Vec<BoundReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = corpus
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    let s = Session::<Q>::default();
                    part.iter()
                        .map(|inst| bound_report(&s, &inst.datum(&FieldSpec::Rational).unwrap(), &inst.name).unwrap())
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    Ok(serde_json::to_string(&parts.concat())?)
}

fn criterion_11() -> Outcome {
    let a = fuzz_json(1)?;
    let b = fuzz_json(4)?;
    ensure(a == b, "threaded fuzz output differs")?;
    Ok(format!("{} bytes identical across 1 and 4 threads", a.len()))
}

fn main() {
    let criteria: Vec<(usize, fn() -> Outcome, Duration)> = vec![
        (1, criterion_1, Duration::from_secs(1)),
        (2, criterion_2, Duration::from_secs(30)),
        (3, criterion_3, Duration::from_secs(1)),
        (4, criterion_4, Duration::from_secs(1)),
        (5, criterion_5, Duration::from_secs(600)),
        (6, criterion_6, Duration::from_secs(60)),
        (7, criterion_7, Duration::from_secs(120)),
        (8, criterion_8, Duration::from_secs(300)),
        (9, criterion_9, Duration::from_secs(300)),
        (10, criterion_10, Duration::from_secs(60)),
        (11, criterion_11, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (n, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over time budget")),
            Err(e) => ("FAIL", e.to_string()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {n}: {status} ({detail}) [{:.2}s / {}s]", elapsed.as_secs_f64(), budget.as_secs());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
