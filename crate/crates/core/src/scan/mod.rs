//! Capped scans for levels whose Hecke polynomials split completely mod p.
//!
//! A scan walks the weights 2..=k_max of the right parity in increasing
//! order. At each weight every Hecke prime l allowed by the policy is a cell;
//! cells run on a worker pool and are reduced in sorted order, so the verdict
//! does not depend on scheduling. Along the way the reduced polynomials are
//! chained into weight ladders k, k + q, k + 2q, ... whose consecutive
//! quotients are the incremental factors f_j.

mod cache;
mod ladder;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use cache::{charpoly_mod_p, Cache, CacheEntry, CacheKey};
pub use ladder::{detect_period, incremental_factors, ladder_quotient};

use crate::arith::{is_prime, primes_up_to};
use crate::dimformulas::{bound_m, dim_cusp_forms, sturm_bound, weight_step, CharKind, QuadChar, SpaceLabel};
use crate::error::{Error, Result};
use crate::exactlinalg::IntPoly;
use crate::ffpoly::{factor, is_totally_split, Factorization, FpPoly};

/// Which Hecke primes l are tested at weight k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LPolicy {
    /// Every prime l up to the Sturm bound of S_k(N).
    Sturm,
    /// A fixed list of primes at every weight.
    Fixed(Vec<u64>),
}

impl LPolicy {
    pub fn primes_for(&self, level: u64, weight: u32) -> Vec<u64> {
        match self {
            LPolicy::Sturm => primes_up_to(sturm_bound(level, weight)),
            LPolicy::Fixed(ls) => ls.clone(),
        }
    }

    fn validate(&self) -> Result<()> {
        if let LPolicy::Fixed(ls) = self {
            if let Some(&l) = ls.iter().find(|&&l| !is_prime(l)) {
                return Err(Error::NotPrime(l));
            }
        }
        Ok(())
    }
}

impl fmt::Display for LPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LPolicy::Sturm => write!(f, "sturm"),
            LPolicy::Fixed(ls) => {
                let parts: Vec<String> = ls.iter().map(u64::to_string).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

impl FromStr for LPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("sturm") {
            return Ok(LPolicy::Sturm);
        }
        let mut ls = Vec::new();
        for part in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let l: u64 = part.parse().map_err(|_| Error::Dimension(format!("bad Hecke prime {part:?}")))?;
            ls.push(l);
        }
        if ls.is_empty() {
            return Err(Error::Dimension("empty Hecke prime list".into()));
        }
        ls.sort_unstable();
        ls.dedup();
        let policy = LPolicy::Fixed(ls);
        policy.validate()?;
        Ok(policy)
    }
}

/// Knobs shared by every scan.
#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub p: u64,
    pub k_max: u32,
    pub l_policy: LPolicy,
    /// Worker threads; 0 uses the global pool.
    pub workers: usize,
    /// Wall-clock budget for one (N, p) scan.
    pub budget: Option<Duration>,
    /// Seed for the randomized equal-degree splitting.
    pub seed: u64,
}

impl ScanConfig {
    pub fn new(p: u64, k_max: u32) -> Self {
        ScanConfig { p, k_max, l_policy: LPolicy::Sturm, workers: 0, budget: None, seed: 0 }
    }
}

/// One (N, chi, k, l) evaluation reduced mod p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellResult {
    pub label: SpaceLabel,
    pub l: u64,
    pub p: u64,
    pub charpoly_int: IntPoly,
    pub charpoly_modp: FpPoly,
    pub factorization: Factorization,
    pub split: bool,
}

/// Evaluates a single cell and checks its internal consistency.
pub fn evaluate_cell(label: SpaceLabel, l: u64, p: u64, seed: u64, cache: &Cache) -> Result<CellResult> {
    let charpoly_int = cache.charpoly(label, l)?;
    let charpoly_modp = charpoly_int.reduce_mod(p)?;
    let dim = dim_cusp_forms(&label)? as usize;
    if charpoly_modp.degree() != Some(dim) {
        return Err(Error::Dimension(format!(
            "{label}, l={l}: reduced polynomial has degree {:?}, dimension is {dim}",
            charpoly_modp.degree()
        )));
    }
    let factorization = factor(&charpoly_modp, seed)?;
    let split = is_totally_split(&charpoly_modp)?;
    if split != factorization.is_totally_split() {
        return Err(Error::Dimension(format!("{label}, l={l}: split test disagrees with factorization")));
    }
    Ok(CellResult { label, l, p, charpoly_int, charpoly_modp, factorization, split })
}

/// A non-split cell: T_l at weight k has the irreducible factor `factor`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub k: u32,
    pub l: u64,
    pub factor: FpPoly,
}

/// Incremental factors of one weight ladder: `factors[0]` is the reduced
/// polynomial at weight k0, `factors[j]` the quotient from k0 + (j-1)q to
/// k0 + jq.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FSequence {
    pub ell: u64,
    pub k0: u32,
    pub factors: Vec<FpPoly>,
    /// Period of `factors[1..]`, when two full repetitions were seen.
    pub period: Option<usize>,
}

impl FSequence {
    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.degree().unwrap_or(0)).collect()
    }
}

/// Outcome of scanning one (N, chi, p) up to the caps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelVerdict {
    pub level: u64,
    pub chi: CharKind,
    pub p: u64,
    pub l_policy: LPolicy,
    pub tested_k_max: u32,
    pub tested_l_max: u64,
    pub all_split: bool,
    pub witness: Option<Witness>,
    pub f_sequences: Vec<FSequence>,
    /// Common period of all ladders with enough data, if each has one.
    pub detected_period: Option<usize>,
    /// bound_M(N, chi, p), the cap on every deg f_j.
    pub bound_m: u64,
    /// Ladder steps exempt from the divisibility assertion; the ladder
    /// restarts at `k`.
    pub ladder_exceptions: Vec<LadderException>,
    pub cells_evaluated: usize,
    pub assertions_checked: u64,
}

/// Checks the (N, chi, p) triple and returns the character.
pub fn validate_level(level: u64, chi: CharKind, p: u64) -> Result<QuadChar> {
    if !(level == 1 || level == 4 || is_prime(level)) {
        return Err(Error::UnsupportedLevel(level));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if level.is_multiple_of(p) {
        return Err(Error::PrimeDividesLevel { p, level });
    }
    QuadChar::new(level, chi)
}

fn with_pool<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        return Ok(job());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Dimension(format!("thread pool: {e}")))?;
    Ok(pool.install(job))
}

/// Why a ladder step k - q -> k was not held to divisibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExceptionReason {
    /// dim S_k < dim S_(k-q), so no divisibility is possible; happens at
    /// level 1 for p = 2, 3.
    DimensionDrop,
    /// p = 3 and N = 1 mod 3: cubic characters mod N reduce to the trivial
    /// character mod 3, and the classical reductions need not nest.
    CubicCharacters,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderException {
    pub ell: u64,
    pub k: u32,
    pub reason: ExceptionReason,
}

/// Whether the ladder step into weight k may legitimately fail to divide.
fn exemption(level: u64, p: u64, dim_lower: u64, dim_upper: u64) -> Option<ExceptionReason> {
    if dim_upper < dim_lower {
        Some(ExceptionReason::DimensionDrop)
    } else if p == 3 && level % 3 == 1 && level > 1 {
        Some(ExceptionReason::CubicCharacters)
    } else {
        None
    }
}

struct Ladder {
    seq: FSequence,
    last_weight: u32,
    last_poly: FpPoly,
}

/// Scans S_k(N, chi) for 2 <= k <= k_max and Hecke primes from the policy,
/// stopping at the first weight with a non-split cell.
pub fn scan_level(level: u64, chi: CharKind, config: &ScanConfig, cache: &Cache) -> Result<LevelVerdict> {
    let character = validate_level(level, chi, config.p)?;
    config.l_policy.validate()?;
    if config.k_max < 2 {
        return Err(Error::WeightTooSmall(config.k_max));
    }
    let p = config.p;
    let q = weight_step(p);
    let m_bound = bound_m(level, character, p)?;
    let started = Instant::now();

    let mut verdict = LevelVerdict {
        level,
        chi,
        p,
        l_policy: config.l_policy.clone(),
        tested_k_max: config.k_max,
        tested_l_max: 0,
        all_split: true,
        witness: None,
        f_sequences: Vec::new(),
        detected_period: None,
        bound_m: m_bound,
        ladder_exceptions: Vec::new(),
        cells_evaluated: 0,
        assertions_checked: 0,
    };
    let mut ladders: BTreeMap<(u64, u32), Ladder> = BTreeMap::new();
    let mut finished: Vec<FSequence> = Vec::new();
    let mut dims: HashMap<u32, u64> = HashMap::new();

    for k in 2..=config.k_max {
        let label = SpaceLabel::new(level, k, character)?;
        if !label.parity_ok() {
            continue;
        }
        if config.budget.is_some_and(|b| started.elapsed() > b) {
            return Err(Error::BudgetExhausted);
        }
        let dim = dim_cusp_forms(&label)?;
        dims.insert(k, dim);
        let ls = config.l_policy.primes_for(level, k);
        let cells: Vec<Result<CellResult>> = with_pool(config.workers, || {
            ls.par_iter().map(|&l| evaluate_cell(label, l, p, config.seed, cache)).collect()
        })?;
        cache.release_space(&label);
        let cells: Vec<CellResult> = cells.into_iter().collect::<Result<_>>()?;
        verdict.cells_evaluated += cells.len();
        // degree == dimension and split == factorization verdict
        verdict.assertions_checked += 2 * cells.len() as u64;

        for cell in &cells {
            verdict.tested_l_max = verdict.tested_l_max.max(cell.l);
            let key = (cell.l, k % q);
            let step = match ladders.get(&key) {
                Some(ld) if ld.last_weight + q == k => {
                    let lower = ld.last_weight;
                    match exemption(level, p, dims[&lower], dim) {
                        Some(ExceptionReason::DimensionDrop) => Err(ExceptionReason::DimensionDrop),
                        Some(reason) => cell.charpoly_modp.div_exact(&ld.last_poly)?.map(Some).ok_or(reason),
                        None => Ok(Some(ladder_quotient(&ld.last_poly, &cell.charpoly_modp, || {
                            format!("N={level} chi={chi} p={p} l={}, weights {lower} -> {k}", cell.l)
                        })?)),
                    }
                }
                _ => Ok(None),
            };
            let f = match step {
                Ok(Some(f)) => f,
                other => {
                    if let Err(reason) = other {
                        verdict.ladder_exceptions.push(LadderException { ell: cell.l, k, reason });
                    }
                    if let Some(old) = ladders.remove(&key) {
                        finished.push(old.seq);
                    }
                    let seq = FSequence {
                        ell: cell.l,
                        k0: k,
                        factors: vec![cell.charpoly_modp.clone()],
                        period: None,
                    };
                    ladders.insert(key, Ladder { seq, last_weight: k, last_poly: cell.charpoly_modp.clone() });
                    continue;
                }
            };
            let deg = f.degree().unwrap_or(0) as u64;
            if deg > m_bound {
                return Err(Error::BoundViolation(format!(
                    "N={level} chi={chi} p={p} l={}, weight {k}: deg f = {deg} exceeds M = {m_bound}",
                    cell.l
                )));
            }
            verdict.assertions_checked += 2;
            let ld = ladders.get_mut(&key).expect("ladder present");
            ld.seq.factors.push(f);
            ld.last_weight = k;
            ld.last_poly = cell.charpoly_modp.clone();
        }

        if let Some(bad) = cells.iter().find(|c| !c.split) {
            let factor = bad.factorization.first_nonlinear().expect("non-split has a nonlinear factor").clone();
            verdict.all_split = false;
            verdict.witness = Some(Witness { k, l: bad.l, factor });
            verdict.tested_k_max = k;
            break;
        }
    }

    finished.extend(ladders.into_values().map(|ld| ld.seq));
    for seq in finished.iter_mut() {
        seq.period = detect_period(&seq.factors[1..]);
    }
    finished.sort_by_key(|s| (s.ell, s.k0));
    verdict.detected_period = common_period(&finished);
    verdict.f_sequences = finished;
    Ok(verdict)
}

/// Lcm of the periods of every ladder with at least two incremental factors;
/// `None` if any of them has no detected period.
fn common_period(seqs: &[FSequence]) -> Option<usize> {
    let mut out: Option<usize> = None;
    for s in seqs.iter().filter(|s| s.factors.len() > 2) {
        let per = s.period?;
        out = Some(out.map_or(per, |o| o.lcm(&per)));
    }
    out
}

/// Serialized form of a [`LevelVerdict`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub level: u64,
    pub chi: CharKind,
    pub p: u64,
    pub k_max: u32,
    pub l_policy: String,
    pub all_split: bool,
    pub witness: Option<WitnessReport>,
    pub periods: BTreeMap<String, Option<usize>>,
    pub assertions_checked: u64,
    pub ladder_exceptions: Vec<LadderException>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub k: u32,
    pub l: u64,
    pub factor_coeffs: Vec<u64>,
}

impl From<&LevelVerdict> for ScanReport {
    fn from(v: &LevelVerdict) -> Self {
        ScanReport {
            level: v.level,
            chi: v.chi,
            p: v.p,
            k_max: v.tested_k_max,
            l_policy: v.l_policy.to_string(),
            all_split: v.all_split,
            witness: v.witness.as_ref().map(|w| WitnessReport {
                k: w.k,
                l: w.l,
                factor_coeffs: w.factor.coeffs().to_vec(),
            }),
            periods: v.f_sequences.iter().map(|s| (format!("l={},k0={}", s.ell, s.k0), s.period)).collect(),
            assertions_checked: v.assertions_checked,
            ladder_exceptions: v.ladder_exceptions.clone(),
        }
    }
}

/// Verdict of one (N, p) table cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum CellOutcome {
    Split,
    NotSplit { k: u32, l: u64 },
    /// The scan ran out of its time budget before reaching a verdict.
    Untested,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub level: u64,
    /// Outcome per prime p, ascending; primes dividing N are omitted.
    pub cells: Vec<(u64, CellOutcome)>,
}

impl TableRow {
    pub fn split_primes(&self) -> Vec<u64> {
        self.cells.iter().filter(|(_, o)| *o == CellOutcome::Split).map(|(p, _)| *p).collect()
    }

    pub fn untested_primes(&self) -> Vec<u64> {
        self.cells.iter().filter(|(_, o)| *o == CellOutcome::Untested).map(|(p, _)| *p).collect()
    }
}

/// For each level, scans every prime p not dividing it. `base` supplies
/// k_max, the l policy, workers, budget and seed; its `p` is ignored.
pub fn build_table(
    levels: &[u64],
    primes: &[u64],
    chi: CharKind,
    base: &ScanConfig,
    cache: &Cache,
) -> Result<Vec<TableRow>> {
    let mut levels = levels.to_vec();
    levels.sort_unstable();
    levels.dedup();
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::NotPrime(p));
    }
    let mut rows = Vec::new();
    for &level in &levels {
        let mut cells = Vec::new();
        for &p in primes.iter().filter(|&&p| level % p != 0) {
            let config = ScanConfig { p, ..base.clone() };
            let outcome = match scan_level(level, chi, &config, cache) {
                Ok(v) => match v.witness {
                    None => CellOutcome::Split,
                    Some(w) => CellOutcome::NotSplit { k: w.k, l: w.l },
                },
                Err(Error::BudgetExhausted) => CellOutcome::Untested,
                Err(e) => return Err(e),
            };
            cells.push((p, outcome));
        }
        rows.push(TableRow { level, cells });
    }
    Ok(rows)
}

/// Two-column text layout `N | primes`, with untested primes listed
/// separately.
pub fn format_table(rows: &[TableRow], chi: CharKind, k_max: u32) -> String {
    let join = |ps: Vec<u64>| ps.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
    let mut out = format!("N | primes p where all T_(l,k) factor completely (chi {chi}, k <= {k_max})\n");
    for row in rows {
        out.push_str(&format!("{} | {}", row.level, join(row.split_primes())));
        let untested = row.untested_primes();
        if !untested.is_empty() {
            out.push_str(&format!(" | untested: {}", join(untested)));
        }
        out.push('\n');
    }
    out
}
