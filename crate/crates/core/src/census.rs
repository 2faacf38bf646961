//! Census experiments. Each run produces one [`CensusRecord`] per `q`, a
//! deterministic function of the experiment, `q`, and the [`RunConfig`].

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::autgrp::{aut_enumerate, count_valid_z, pair_stabilizer_fast, set_stabilizer, SemiAut};
use crate::bounds::{self, ratio_string};
use crate::cache;
use crate::cayley::{is_grr_direct, is_grr_thm};
use crate::error::{precondition, Error, Result};
use crate::gfq::{prime_power, FieldCtx, QuadExtCtx};
use crate::pgl2::{canonical_matrices, involution_count_formula, is_dihedral, GroupKind, GroupTable};
use crate::witness::{
    mixed_nontrivial_aut, remark_counterexample, su_enumerate, unitary_map_preserves, unitary_witness, MixedAut,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Q7Impossibility,
    FindGrr,
    ValidZ,
    GrrFraction,
    MixedSets,
    Remark,
    Structure,
    Crosscheck,
    UnitaryWitness,
    Positivity,
}

impl Experiment {
    pub const ALL: [Experiment; 10] = [
        Experiment::Q7Impossibility,
        Experiment::FindGrr,
        Experiment::ValidZ,
        Experiment::GrrFraction,
        Experiment::MixedSets,
        Experiment::Remark,
        Experiment::Structure,
        Experiment::Crosscheck,
        Experiment::UnitaryWitness,
        Experiment::Positivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Q7Impossibility => "q7-impossibility",
            Experiment::FindGrr => "find-grr",
            Experiment::ValidZ => "valid-z",
            Experiment::GrrFraction => "grr-fraction",
            Experiment::MixedSets => "mixed-sets",
            Experiment::Remark => "remark",
            Experiment::Structure => "structure",
            Experiment::Crosscheck => "crosscheck",
            Experiment::UnitaryWitness => "unitary-witness",
            Experiment::Positivity => "positivity",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| precondition(format!("unknown experiment {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Confirmed,
    Violated,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusRecord {
    pub experiment: Experiment,
    pub q: u32,
    pub p: u32,
    pub f: u32,
    pub d: u32,
    pub seed: u64,
    pub status: Status,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reproducer: Option<Value>,
}

impl CensusRecord {
    pub fn confirmed(&self) -> bool {
        self.status == Status::Confirmed
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Sample size for sampled experiments; each experiment enforces its own floor.
    pub samples: usize,
    pub seed: u64,
    /// Use a maximality certificate to shortcut generation tests.
    pub shortcut: bool,
    pub cache: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { samples: 0, seed: 0, shortcut: true, cache: None }
    }
}

impl RunConfig {
    fn rng(&self, q: u32) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ ((q as u64) << 32))
    }
}

/// Thread-safe counter that logs coarse progress at debug level.
pub struct Progress {
    label: String,
    total: usize,
    done: AtomicUsize,
}

impl Progress {
    pub fn new(label: impl Into<String>, total: usize) -> Self {
        Progress { label: label.into(), total, done: AtomicUsize::new(0) }
    }

    pub fn tick(&self) {
        let n = self.done.fetch_add(1, Ordering::Relaxed) + 1;
        let step = (self.total / 10).max(1);
        if n.is_multiple_of(step) || n == self.total {
            log::debug!("{}: {n}/{}", self.label, self.total);
        }
    }

    pub fn done(&self) -> usize {
        self.done.load(Ordering::Relaxed)
    }
}

pub fn load_table(q: u32, cfg: &RunConfig) -> Result<GroupTable> {
    let ctx = FieldCtx::with_order(q)?;
    cache::load_or_build(cfg.cache.as_deref(), ctx, GroupKind::Psl)
}

/// Runs one experiment at one `q`.
pub fn run(exp: Experiment, q: u32, cfg: &RunConfig) -> Result<CensusRecord> {
    if exp == Experiment::Positivity {
        return positivity(q, cfg);
    }
    if q < 5 {
        return Err(precondition("q must be at least 5"));
    }
    if exp == Experiment::UnitaryWitness {
        return unitary(q, cfg);
    }
    let table = load_table(q, cfg)?;
    match exp {
        Experiment::Q7Impossibility => q7_impossibility(&table, cfg),
        Experiment::FindGrr => find_grr(&table, cfg),
        Experiment::ValidZ => valid_z(&table, cfg),
        Experiment::GrrFraction => grr_fraction(&table, cfg),
        Experiment::MixedSets => mixed_sets(&table, cfg),
        Experiment::Remark => remark(&table, cfg),
        Experiment::Structure => structure(&table, cfg),
        Experiment::Crosscheck => crosscheck(&table, cfg),
        Experiment::UnitaryWitness | Experiment::Positivity => unreachable!("handled above"),
    }
}

fn record(
    exp: Experiment,
    q: u32,
    cfg: &RunConfig,
    ok: bool,
    details: Value,
    reproducer: Option<Value>,
) -> CensusRecord {
    let (p, f) = prime_power(q).expect("validated prime power");
    CensusRecord {
        experiment: exp,
        q,
        p,
        f,
        d: if p == 2 { 1 } else { 2 },
        seed: cfg.seed,
        status: if ok { Status::Confirmed } else { Status::Violated },
        details,
        reproducer: if ok { None } else { reproducer.or(Some(Value::Null)) },
    }
}

/// Elements as `{id, matrix}` objects.
pub fn elements_json(table: &GroupTable, ids: &[u32]) -> Value {
    Value::Array(ids.iter().map(|&g| json!({ "id": g, "matrix": table.elem(g).format(table.ctx()) })).collect())
}

fn aut_json(table: &GroupTable, a: &SemiAut) -> Value {
    json!({ "k": a.k, "m": a.m.format(table.ctx()) })
}

fn involution_triples(invs: &[u32]) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for (i, &a) in invs.iter().enumerate() {
        for (j, &b) in invs.iter().enumerate().skip(i + 1) {
            for &c in &invs[j + 1..] {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Every generating involution triple of PSL(2,7) has a nonidentity
/// stabilizer containing an involution from PGL(2,7), and none is a GRR.
fn q7_impossibility(table: &GroupTable, cfg: &RunConfig) -> Result<CensusRecord> {
    let q = table.q();
    if q != 7 {
        return Err(precondition("q7-impossibility runs at q = 7 only"));
    }
    let ctx = table.ctx();
    let auts = aut_enumerate(ctx);
    let triples = involution_triples(&table.involutions());
    let progress = Progress::new("q7-impossibility", triples.len());
    let results: Vec<(bool, Option<[u32; 3]>, Option<SemiAut>)> = triples
        .par_iter()
        .map(|&s| {
            progress.tick();
            if !table.generates(&s) {
                return Ok((false, None, None));
            }
            let stab = set_stabilizer(table, &auts, &s);
            let witness = stab.iter().find(|a| a.k == 0 && a.is_involution(ctx)).copied();
            let fast_agrees = pair_stabilizer_fast(table, s)? == stab;
            let ok = witness.is_some() && fast_agrees && !is_grr_direct(table, s)?;
            Ok((true, (!ok).then_some(s), witness))
        })
        .collect::<Result<_>>()?;
    let generating = results.iter().filter(|r| r.0).count();
    let failure = results.iter().find_map(|r| r.1);
    let example = triples
        .iter()
        .zip(&results)
        .find_map(|(s, r)| r.2.map(|a| json!({ "triple": elements_json(table, s), "alpha": aut_json(table, &a) })));
    let details = json!({
        "triples": triples.len(),
        "generating": generating,
        "non_generating": triples.len() - generating,
        "grr_count": 0,
        "first_witness": example,
    });
    let reproducer = failure.map(|s| elements_json(table, &s));
    Ok(record(Experiment::Q7Impossibility, q, cfg, failure.is_none(), details, reproducer))
}

/// Outcome of a GRR search over `z` with the dihedral pair fixed.
#[derive(Clone, Debug, Serialize)]
pub struct GrrSearch {
    pub x: u32,
    pub y: u32,
    pub z: Option<u32>,
    pub certified_by_criterion: Option<bool>,
    pub certified_directly: Option<bool>,
    pub candidates_tried: usize,
}

/// First involution `z` (in table order) making `{x, y, z}` a GRR, where
/// `(x, y)` is the dihedral pair. At `q = 11` only the graph test is used;
/// elsewhere the automorphism criterion decides and, for `q <= 13`, the graph
/// test confirms.
pub fn search_grr(table: &GroupTable) -> Result<GrrSearch> {
    let q = table.q();
    let pair = table.max_dihedral_pair()?;
    let (x, y) = (pair.x, pair.y);
    let mut tried = 0;
    for z in table.involutions() {
        if pair.subgroup.binary_search(&z).is_ok() || !table.generates(&[x, y, z]) {
            continue;
        }
        tried += 1;
        let s = [x, y, z];
        if q == 11 {
            if is_grr_direct(table, s)? {
                return Ok(GrrSearch {
                    x,
                    y,
                    z: Some(z),
                    certified_by_criterion: None,
                    certified_directly: Some(true),
                    candidates_tried: tried,
                });
            }
        } else if is_grr_thm(table, s)? {
            let direct = if q <= 13 { Some(is_grr_direct(table, s)?) } else { None };
            return Ok(GrrSearch {
                x,
                y,
                z: Some(z),
                certified_by_criterion: Some(true),
                certified_directly: direct,
                candidates_tried: tried,
            });
        }
    }
    Ok(GrrSearch { x, y, z: None, certified_by_criterion: None, certified_directly: None, candidates_tried: tried })
}

fn find_grr(table: &GroupTable, cfg: &RunConfig) -> Result<CensusRecord> {
    let q = table.q();
    let found = search_grr(table)?;
    let expect_none = q == 7;
    let ok = match found.z {
        None => expect_none,
        Some(_) => !expect_none && found.certified_directly != Some(false),
    };
    let triple = found.z.map(|z| elements_json(table, &[found.x, found.y, z]));
    let details = json!({
        "expected": if expect_none { "none" } else { "exists" },
        "found": found.z.is_some(),
        "triple": triple,
        "certified_by_criterion": found.certified_by_criterion,
        "certified_directly": found.certified_directly,
        "candidates_tried": found.candidates_tried,
    });
    let reproducer = Some(triple.unwrap_or_else(|| elements_json(table, &[found.x, found.y])));
    Ok(record(Experiment::FindGrr, q, cfg, ok, details, reproducer))
}

fn ingredient_run(table: &GroupTable, cfg: &RunConfig) -> Result<crate::autgrp::IngredientReport> {
    let pair = table.max_dihedral_pair()?;
    let cert = if cfg.shortcut { table.certify_maximal(&pair.subgroup)? } else { None };
    count_valid_z(table, pair.x, pair.y, cert.as_ref())
}

fn valid_z(table: &GroupTable, cfg: &RunConfig) -> Result<CensusRecord> {
    let q = table.q();
    if q < 11 {
        return Err(precondition("valid-z needs q >= 11"));
    }
    let rep = ingredient_run(table, cfg)?;
    let checks: serde_json::Map<String, Value> =
        rep.checks().into_iter().map(|(name, ok)| (name.to_string(), Value::Bool(ok))).collect();
    let details = json!({
        "n_valid_z": rep.n_valid_z,
        "bound_b": ratio_string(&rep.bound_b),
        "n_involutions": rep.n_v,
        "l_size": rep.l.len(),
        "l_limit": rep.l_limit(),
        "i_size": rep.i.len(),
        "aut_centralizer": rep.aut_centralizer,
        "free_count": rep.free_count,
        "free_bound": ratio_string(&rep.free_bound),
        "predicted_count": rep.predicted_count,
        "used_maximality": rep.used_maximality,
        "checks": checks,
    });
    let failed: Vec<&str> = rep.checks().into_iter().filter(|c| !c.1).map(|c| c.0).collect();
    Ok(record(Experiment::ValidZ, q, cfg, failed.is_empty(), details, Some(json!({ "failed_checks": failed }))))
}

/// Exact fraction of involutions `z` completing the dihedral pair to a GRR.
pub fn grr_fraction_of(table: &GroupTable, cfg: &RunConfig) -> Result<(usize, usize)> {
    let rep = ingredient_run(table, cfg)?;
    Ok((rep.n_valid_z, rep.n_v))
}

fn grr_fraction(table: &GroupTable, cfg: &RunConfig) -> Result<CensusRecord> {
    let q = table.q();
    if q < 11 {
        return Err(precondition("grr-fraction needs q >= 11"));
    }
    let (valid, total) = grr_fraction_of(table, cfg)?;
    let fraction = valid as f64 / total as f64;
    let lower = bounds::prob_lower(q);
    let (_, v_upper) = bounds::involution_bounds(q);
    let ok = fraction >= lower - 1e-6 && (lower <= 0.0 || valid > 0);
    let details = json!({
        "n_valid_z": valid,
        "n_involutions": total,
        "fraction": ratio_string(&Ratio::new(valid as i64, total as i64)),
        "fraction_float": fraction,
        "over_upper_bound": valid as f64 / v_upper as f64,
        "prob_lower": lower,
    });
    Ok(record(Experiment::GrrFraction, q, cfg, ok, details, Some(json!({ "fraction": fraction, "prob_lower": lower }))))
}

#[derive(Default)]
struct MixedTally {
    constructive: usize,
    search: usize,
    non_generating: usize,
    failure: Option<(u32, u32)>,
}

/// Every mixed set `{x, y, y^-1}` that can generate has a nonidentity
/// stabilizer. Exhaustive for `q <= 13`, sampled otherwise.
fn mixed_sets(table: &GroupTable, cfg: &RunConfig) -> Result<CensusRecord> {
    let q = table.q();
    let ctx = table.ctx();
    let invs = table.involutions();
    let others: Vec<u32> = (1..table.len() as u32).filter(|&g| !table.is_involution(g)).collect();
    let exhaustive = q <= 13;
    let pairs: Vec<(u32, u32)> = if exhaustive {
        invs.iter().flat_map(|&x| others.iter().map(move |&y| (x, y))).collect()
    } else {
        let mut rng = cfg.rng(q);
        (0..cfg.samples.max(1000))
            .map(|_| (*invs.choose(&mut rng).unwrap(), *others.choose(&mut rng).unwrap()))
            .collect()
    };
    let progress = Progress::new("mixed-sets", pairs.len());
    let outcomes: Vec<Result<MixedAut>> = pairs
        .par_iter()
        .map(|&(x, y)| {
            progress.tick();
            mixed_nontrivial_aut(table, x, y)
        })
        .collect();
    let mut tally = MixedTally::default();
    for (&(x, y), outcome) in pairs.iter().zip(outcomes) {
        let ok = match outcome {
            Ok(MixedAut::Found { alpha, constructive, .. }) => {
                let set = [x, y, table.inv(y)].map(|g| table.elem(g));
                if constructive {
                    tally.constructive += 1;
                } else {
                    tally.search += 1;
                }
                !alpha.is_identity() && alpha.stabilizes(ctx, &set)
            }
            Ok(MixedAut::NonGenerating(_)) => {
                tally.non_generating += 1;
                !table.generates(&[x, y])
            }
            Err(_) => false,
        };
        if !ok && tally.failure.is_none() {
            tally.failure = Some((x, y));
        }
    }
    let remark = if q == 8 || q == 13 {
        let auts = aut_enumerate(ctx);
        Some(remark_counterexample(table, &auts, false))
    } else {
        None
    };
    let remark_ok = remark.as_ref().is_none_or(|r| r.is_some());
    let ok = tally.failure.is_none() && remark_ok;
    let details = json!({
        "exhaustive": exhaustive,
        "pairs": pairs.len(),
        "constructive_witnesses": tally.constructive,
        "search_witnesses": tally.search,
        "non_generating_certificates": tally.non_generating,
        "remark_witness": remark.map(|r| r.map(|(x, y)| elements_json(table, &[x, y]))),
    });
    let reproducer =
        tally.failure.map(|(x, y)| elements_json(table, &[x, y])).or(Some(json!("remark witness missing")));
    Ok(record(Experiment::MixedSets, q, cfg, ok, details, reproducer))
}

/// A non-generating mixed pair with trivial stabilizer exists for
/// `q` in {8, 13} and is impossible for `q = 3 (mod 4)`.
fn remark(table: &GroupTable, cfg: &RunConfig) -> Result<CensusRecord> {
    let q = table.q();
    let auts = aut_enumerate(table.ctx());
    let three_mod_four = q % 4 == 3;
    let found = remark_counterexample(table, &auts, three_mod_four);
    let expected = if q == 8 || q == 13 {
        Some(true)
    } else if three_mod_four {
        Some(false)
    } else {
        None
    };
    let ok = expected.is_none_or(|e| e == found.is_some());
    let details = json!({
        "expected": expected.map(|e| if e { "exists" } else { "absent" }),
        "exhaustive_over_x": three_mod_four,
        "witness": found.map(|(x, y)| elements_json(table, &[x, y])),
    });
    let reproducer = found.map(|(x, y)| elements_json(table, &[x, y]));
    Ok(record(Experiment::Remark, q, cfg, ok, details, reproducer))
}

/// Expected order of the centralizer of an involution in PSL(2,q).
pub fn involution_centralizer_order(q: u32) -> usize {
    match (q % 2, q % 4) {
        (0, _) => q as usize,
        (_, 1) => (q - 1) as usize,
        _ => (q + 1) as usize,
    }
}

/// Largest number of involutions of PSL(2,q) fixed by an involution of
/// PGL(2,q) acting by conjugation, `q` odd.
pub fn max_fixed_by_pgl_involution(table: &GroupTable) -> usize {
    let ctx = table.ctx();
    let invs = table.involutions();
    let pgl_invs: Vec<SemiAut> =
        canonical_matrices(ctx).filter(|m| m.is_involution(ctx)).map(SemiAut::conjugation).collect();
    pgl_invs.par_iter().map(|a| crate::autgrp::fixed_involutions(table, a, &invs)).max().unwrap_or(0)
}

fn structure(table: &GroupTable, cfg: &RunConfig) -> Result<CensusRecord> {
    let q = table.q();
    let ctx = table.ctx();
    let invs = table.involutions();
    let first = invs[0];
    let class = table.conj_class(first);
    let single_class = class.len() == invs.len();
    let count_matches = invs.len() as u64 == involution_count_formula(ctx);
    let cen = table.centralizer(first);
    let cen_ok = cen.len() == involution_centralizer_order(q);
    let cen_dihedral = q.is_multiple_of(2) || is_dihedral(table, &cen);
    let pair = table.max_dihedral_pair()?;
    let dihedral_order = pair.subgroup.len();
    let dihedral_ok = dihedral_order as u32 == 2 * (q + 1) / table.d() && is_dihedral(table, &pair.subgroup);
    let fixed_limit = (q as usize + 3) / 2;
    let fixed_max = (q % 2 == 1).then(|| max_fixed_by_pgl_involution(table));
    let fixed_ok = fixed_max.is_none_or(|m| m <= fixed_limit);
    let maximal = if q <= 31 { Some(table.is_maximal(&pair.subgroup)?) } else { None };
    let maximal_ok = maximal.is_none_or(|m| m == (q != 7 && q != 9));
    let ok = single_class && count_matches && cen_ok && cen_dihedral && dihedral_ok && fixed_ok && maximal_ok;
    let details = json!({
        "involutions": invs.len(),
        "single_involution_class": single_class,
        "count_matches_formula": count_matches,
        "centralizer_order": cen.len(),
        "centralizer_dihedral": cen_dihedral,
        "dihedral_order": dihedral_order,
        "dihedral_maximal": maximal,
        "max_fixed_by_pgl_involution": fixed_max,
        "fixed_limit": fixed_limit,
    });
    Ok(record(Experiment::Structure, q, cfg, ok, details, Some(elements_json(table, &[pair.x, pair.y]))))
}

/// Generating cubic connection sets for the crosscheck: all of them at
/// `q <= 7`, otherwise a seeded sample of involution triples.
pub fn crosscheck_sets(table: &GroupTable, cfg: &RunConfig) -> Vec<[u32; 3]> {
    let q = table.q();
    let invs = table.involutions();
    if q <= 7 {
        let mut sets = involution_triples(&invs);
        for &x in &invs {
            for y in 1..table.len() as u32 {
                let yi = table.inv(y);
                if !table.is_involution(y) && y < yi {
                    sets.push([x, y, yi]);
                }
            }
        }
        sets.retain(|s| table.generates(s));
        return sets;
    }
    let want = cfg.samples.max(200);
    let mut rng = cfg.rng(q);
    let mut sets = Vec::with_capacity(want);
    while sets.len() < want {
        let mut s = [0u32; 3];
        for slot in s.iter_mut() {
            *slot = invs[rng.gen_range(0..invs.len())];
        }
        if s[0] != s[1] && s[1] != s[2] && s[0] != s[2] && table.generates(&s) {
            sets.push(s);
        }
    }
    sets
}

fn crosscheck(table: &GroupTable, cfg: &RunConfig) -> Result<CensusRecord> {
    let q = table.q();
    if q == 11 {
        return Err(precondition("the automorphism criterion does not apply at q = 11"));
    }
    let auts = aut_enumerate(table.ctx());
    let sets = crosscheck_sets(table, cfg);
    let progress = Progress::new("crosscheck", sets.len());
    let rows: Vec<(bool, bool, bool)> = sets
        .par_iter()
        .map(|&s| {
            progress.tick();
            let fast = pair_stabilizer_fast(table, s)?;
            let brute = set_stabilizer(table, &auts, &s);
            Ok((is_grr_direct(table, s)?, is_grr_thm(table, s)?, fast == brute))
        })
        .collect::<Result<_>>()?;
    let disagreement = sets.iter().zip(&rows).find(|(_, r)| r.0 != r.1 || !r.2).map(|(s, _)| *s);
    let details = json!({
        "exhaustive": q <= 7,
        "sets": sets.len(),
        "grr_count": rows.iter().filter(|r| r.0).count(),
        "disagreements": rows.iter().filter(|r| r.0 != r.1).count(),
        "stabilizer_mismatches": rows.iter().filter(|r| !r.2).count(),
    });
    let reproducer = disagreement.map(|s| elements_json(table, &s));
    Ok(record(Experiment::Crosscheck, q, cfg, disagreement.is_none(), details, reproducer))
}

/// The unitary witness checked on every `y` of SU(2,q) for `q <= 11` and on a
/// seeded sample otherwise.
fn unitary(q: u32, cfg: &RunConfig) -> Result<CensusRecord> {
    if q % 4 != 3 {
        return Err(precondition("unitary-witness needs q = 3 (mod 4)"));
    }
    let ext = QuadExtCtx::new(FieldCtx::with_order(q)?);
    let all = su_enumerate(&ext)?;
    let exhaustive = q <= 11;
    let (ys, gs) = if exhaustive {
        (all.clone(), all.clone())
    } else {
        let mut rng = cfg.rng(q);
        let n = cfg.samples.max(500);
        let ys: Vec<_> = all.choose_multiple(&mut rng, n).copied().collect();
        let gs: Vec<_> = all.choose_multiple(&mut rng, n).copied().collect();
        (ys, gs)
    };
    let failures: Vec<usize> = ys
        .par_iter()
        .enumerate()
        .filter_map(|(i, y)| {
            let w = match unitary_witness(&ext, y) {
                Ok(w) => w,
                Err(_) => return Some(i),
            };
            let preserves = match &w.conjugator {
                crate::witness::Conjugator::Unitary { left, right } => unitary_map_preserves(&ext, left, right, &gs),
                crate::witness::Conjugator::Proj(_) => false,
            };
            (!(w.verified.all() && preserves)).then_some(i)
        })
        .collect();
    let details = json!({
        "exhaustive": exhaustive,
        "su_order": all.len(),
        "checked_y": ys.len(),
        "checked_images": gs.len(),
        "failures": failures.len(),
    });
    let reproducer = failures.first().map(|&i| {
        let y = ys[i];
        json!({ "a": ext.format(y.a), "b": ext.format(y.b) })
    });
    Ok(record(Experiment::UnitaryWitness, q, cfg, failures.is_empty(), details, reproducer))
}

/// Sign of the valid-`z` bound numerator against the claim "positive exactly
/// when `q = 23` or `q >= 29`" (only the forward direction is claimed; both are
/// recorded).
fn positivity(q: u32, cfg: &RunConfig) -> Result<CensusRecord> {
    let (p, f) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let numerator = bounds::bound_numerator(p, f);
    let claimed = q == 23 || q >= 29;
    let positive = numerator > 0;
    let ok = !claimed || positive;
    let details = json!({
        "numerator": numerator,
        "bound_b": ratio_string(&bounds::bound_b(p, f)),
        "positive": positive,
        "claimed_positive": claimed,
    });
    Ok(record(Experiment::Positivity, q, cfg, ok, details, Some(json!({ "numerator": numerator }))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RunConfig {
        RunConfig::default()
    }

    #[test]
    fn experiment_names_round_trip() {
        for e in Experiment::ALL {
            assert_eq!(e.name().parse::<Experiment>().unwrap(), e);
            assert_eq!(serde_json::to_value(e).unwrap(), json!(e.name()));
        }
        assert!("nope".parse::<Experiment>().is_err());
    }

    #[test]
    fn centralizer_orders() {
        assert_eq!(involution_centralizer_order(7), 8);
        assert_eq!(involution_centralizer_order(13), 12);
        assert_eq!(involution_centralizer_order(8), 8);
    }

    #[test]
    fn small_runs_confirm() {
        for (exp, q) in [
            (Experiment::FindGrr, 5),
            (Experiment::FindGrr, 7),
            (Experiment::Structure, 7),
            (Experiment::Structure, 9),
            (Experiment::Crosscheck, 5),
            (Experiment::MixedSets, 5),
            (Experiment::Remark, 7),
            (Experiment::UnitaryWitness, 7),
            (Experiment::Positivity, 27),
        ] {
            let r = run(exp, q, &cfg()).unwrap();
            assert!(r.confirmed(), "{exp} q={q}: {}", r.details);
            assert!(r.reproducer.is_none());
        }
    }

    #[test]
    fn invalid_inputs() {
        assert!(run(Experiment::Q7Impossibility, 5, &cfg()).is_err());
        assert!(run(Experiment::ValidZ, 9, &cfg()).is_err());
        assert!(run(Experiment::UnitaryWitness, 13, &cfg()).is_err());
        assert!(run(Experiment::Crosscheck, 11, &cfg()).is_err());
        assert!(run(Experiment::Positivity, 12, &cfg()).is_err());
        assert!(run(Experiment::Structure, 4, &cfg()).is_err());
    }

    #[test]
    fn seeded_runs_are_identical() {
        let c = RunConfig { samples: 20, seed: 7, ..cfg() };
        let a = serde_json::to_string(&run(Experiment::Crosscheck, 8, &c).unwrap()).unwrap();
        let b = serde_json::to_string(&run(Experiment::Crosscheck, 8, &c).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn positivity_threshold() {
        assert!(run(Experiment::Positivity, 23, &cfg()).unwrap().details["positive"].as_bool().unwrap());
        assert!(!run(Experiment::Positivity, 19, &cfg()).unwrap().details["positive"].as_bool().unwrap());
    }
}
