//! Modular decomposition of curve ideals over `Q`: projections, rational
//! factorization, per-factor prime selection, partition and matching of
//! modular factors, colon cleanup and Hilbert data.

mod plan;
mod report;
mod steps;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{
    is_prime, next_prime, primitive_integer_coeffs, upoly_from_integers, ArithError, PrimeField, Rationals, UniPoly,
    MAX_PRIME,
};
use crate::factor::{factor_bivariate_fp, factor_univariate_q, FactorError, MultiFactors};
use crate::groebner::{eliminate_with, ideal_dimension, GbConfig, GroebnerError, Ideal};
use crate::hilbert::HilbertError;
use crate::modred::{admissible_for, admissible_primes, reduce_ideal, reduce_upoly, ModredError, PrimeContext};
use crate::mpoly::{apply_coord_change, resultant, CoordChange, DegreeOrder, MpolyError, MultiPoly, TermOrder};
use crate::par;

pub use plan::ProjectionPlan;
pub use report::{ComponentAudit, ComponentRecord, DecompositionReport};
pub use steps::{match_factors, partition_factors, pick_jacobian_minor, CleanedComponent, MAX_MATCH_TUPLES};

/// Prime used for the dimension sanity check and for rational factors of
/// degree one when no other prime is at hand.
pub const FALLBACK_PRIME: u64 = 32003;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error("only curves are supported, got dimension {0}")]
    UnsupportedDimension(usize),
    #[error("need at least 2 variables, got {0}")]
    TooFewVariables(usize),
    #[error("ideal has dimension {found} modulo {p}, expected 1")]
    DimensionMismatch { found: i64, p: u64 },
    #[error("the resultant backend needs exactly two generators in three variables")]
    BackendUnavailable,
    #[error("prime override {p} rejected: {reason}")]
    InvalidPrimeOverride { p: u64, reason: String },
    #[error("retry budget spent after {attempts} coordinate changes")]
    RetryExhausted { attempts: usize, trace: Vec<String> },
    #[error(transparent)]
    BudgetExceeded(GroebnerError),
    #[error("modular factors do not partition the rational factor")]
    PartitionIncomplete,
    #[error("no tuple of projection factors has a zero-dimensional section")]
    NoMatch,
    #[error("no Jacobian minor yields a clean component")]
    NoUsableMinor,
    #[error(transparent)]
    Groebner(GroebnerError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Modred(#[from] ModredError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Mpoly(#[from] MpolyError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

impl From<GroebnerError> for PipelineError {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::BudgetExceeded { .. } => PipelineError::BudgetExceeded(e),
            other => PipelineError::Groebner(other),
        }
    }
}

/// Elimination backend for the projection polynomials.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Groebner,
    Resultant,
    /// Resultants for two generators in three variables, else Groebner.
    #[default]
    Auto,
}

impl FromStr for Backend {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "groebner" => Ok(Backend::Groebner),
            "resultant" => Ok(Backend::Resultant),
            "auto" => Ok(Backend::Auto),
            _ => Err(format!("unknown backend '{s}'")),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Groebner => "groebner",
            Backend::Resultant => "resultant",
            Backend::Auto => "auto",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    pub seed: u64,
    /// Bound `B` on coordinate-change entries.
    pub coeff_bound: i64,
    /// Number of coordinate changes tried.
    pub max_retries: usize,
    /// Primes tried per rational factor and coordinate change.
    pub primes_per_factor: usize,
    pub prime_override: Option<u64>,
    pub order: DegreeOrder,
    pub backend: Backend,
    /// Run per-factor branches concurrently (needs the `parallel` feature).
    pub parallel: bool,
    pub gb: GbConfig,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            seed: 0,
            coeff_bound: 10,
            max_retries: 5,
            primes_per_factor: 8,
            prime_override: None,
            order: DegreeOrder::Deglex,
            backend: Backend::Auto,
            parallel: par::available(),
            gb: GbConfig::default(),
        }
    }
}

/// Outcome of a failed step: retry with another prime or coordinates, or stop.
#[derive(Debug, Clone)]
enum Failure {
    Retry(String),
    Fatal(PipelineError),
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::BudgetExceeded(_)
            | PipelineError::InvalidPrimeOverride { .. }
            | PipelineError::Groebner(GroebnerError::AuditFailed(_)) => Failure::Fatal(e),
            other => Failure::Retry(other.to_string()),
        }
    }
}

impl From<GroebnerError> for Failure {
    fn from(e: GroebnerError) -> Self {
        PipelineError::from(e).into()
    }
}

fn retry<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Retry(msg.into()))
}

/// Data shared by every branch of one coordinate change.
struct Attempt {
    coords: CoordChange,
    ideal: Ideal<Rationals>,
    plan: ProjectionPlan,
    use_resultant: bool,
    /// `D_1(0, X_2)`, primitive over `Z`.
    projection: UniPoly<Rationals>,
    factors: Vec<(UniPoly<Rationals>, usize)>,
}

impl Attempt {
    fn nvars(&self) -> usize {
        self.plan.nvars()
    }

    fn total_degree(&self) -> usize {
        self.projection.deg()
    }
}

/// Everything computed modulo one prime.
struct Modular {
    field: PrimeField,
    ideal: Ideal<PrimeField>,
    /// Bivariate factorization of each projection, in its kept variables.
    factors: Vec<MultiFactors<PrimeField>>,
}

fn primitive_upoly(u: &UniPoly<Rationals>) -> UniPoly<Rationals> {
    upoly_from_integers(&primitive_integer_coeffs(u))
}

fn use_resultant(backend: Backend, ngens: usize, nvars: usize) -> Result<bool, PipelineError> {
    let fits = ngens == 2 && nvars == 3;
    match backend {
        Backend::Groebner => Ok(false),
        Backend::Auto => Ok(fits),
        Backend::Resultant if fits => Ok(true),
        Backend::Resultant => Err(PipelineError::BackendUnavailable),
    }
}

/// Projection polynomial with the variables of `plan.eliminated(k)`
/// removed; `None` when it is not a single nonzero polynomial.
fn project<F: crate::arith::Field>(
    idl: &Ideal<F>,
    plan: &ProjectionPlan,
    k: usize,
    use_resultant: bool,
    gb: &GbConfig,
) -> Result<Option<MultiPoly<F>>, Failure> {
    let h = plan.eliminated(k);
    if use_resultant {
        let g = idl.generators();
        return match resultant(&g[0], &g[1], h[0]) {
            Ok(r) if !r.is_zero() => Ok(Some(r)),
            _ => Ok(None),
        };
    }
    let mut elim = eliminate_with(idl, h, gb)?;
    if elim.len() != 1 || elim[0].is_zero() {
        return Ok(None);
    }
    Ok(elim.pop())
}

fn prepare(idl: &Ideal<Rationals>, coords: CoordChange, cfg: &PipelineConfig) -> Result<Attempt, Failure> {
    let n = idl.nvars();
    let gens: Vec<MultiPoly<Rationals>> = idl
        .generators()
        .iter()
        .map(|g| apply_coord_change(g, &coords).map(|f| f.normalize(&TermOrder::DegLex)))
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Fatal(e.into()))?;
    let ideal = Ideal::new(Rationals, n, gens).map_err(|e| Failure::Fatal(e.into()))?.with_dimension(1);
    let plan = ProjectionPlan::curves(n);
    let use_res = use_resultant(cfg.backend, ideal.generators().len(), n).map_err(Failure::Fatal)?;

    let section = Ideal::new(Rationals, n, ideal.generators().iter().map(|g| g.eval_zero(&[0])).collect())
        .map_err(|e| Failure::Fatal(e.into()))?;
    let Some(d1) = project(&section, &plan, 0, use_res, &cfg.gb)? else {
        return retry("projection on X_1 = 0 is not a single polynomial");
    };
    let Some(u) = d1.to_upoly(1) else {
        return retry("projection on X_1 = 0 involves eliminated variables");
    };
    let projection = primitive_upoly(&u);
    if projection.deg() < 1 {
        return retry("curve misses the section X_1 = 0");
    }
    let factors = factor_univariate_q(&projection).factors;
    Ok(Attempt { coords, ideal, plan, use_resultant: use_res, projection, factors })
}

fn modular(att: &Attempt, p: u64, cfg: &PipelineConfig) -> Result<Modular, Failure> {
    let ctx = PrimeContext::plain(p).map_err(|e| Failure::Retry(e.to_string()))?;
    let field = ctx.field();
    let ideal = match reduce_ideal(&att.ideal, &ctx) {
        Ok(i) if !i.has_unit_generator() => i,
        Ok(_) => return retry(format!("ideal becomes the unit ideal mod {p}")),
        Err(e) => return retry(e.to_string()),
    };
    let mut factors = Vec::with_capacity(att.plan.len());
    for k in 0..att.plan.len() {
        let Some(d) = project(&ideal, &att.plan, k, att.use_resultant, &cfg.gb)? else {
            return retry(format!("projection {} mod {p} is not a single polynomial", k + 1));
        };
        let Some(biv) = d.restrict(&att.plan.kept(k)) else {
            return retry(format!("projection {} mod {p} keeps eliminated variables", k + 1));
        };
        if biv.total_degree() as u64 >= p {
            return retry(format!("{p} does not exceed the degree of projection {}", k + 1));
        }
        if k == 0 {
            let spec = biv.eval_zero(&[0]).to_upoly(1).expect("univariate after specialization");
            let want = reduce_upoly(&att.projection, field).map_err(|e| Failure::Retry(e.to_string()))?;
            if spec.is_zero() || want.deg() != att.projection.deg() || spec.monic() != want.monic() {
                return retry(format!("projection mod {p} does not specialize to the rational one"));
            }
        }
        factors.push(factor_bivariate_fp(&biv).map_err(|e| Failure::Retry(e.to_string()))?);
    }
    // a generic projection is birational on every component, so all of them
    // split alike; a merged pair of components shows up as a changed exponent
    let profile = |f: &MultiFactors<PrimeField>| {
        let mut v: Vec<(u32, usize)> = f.factors.iter().map(|(g, e)| (g.total_degree(), *e)).collect();
        v.sort_unstable();
        v
    };
    if let Some(k) = (1..factors.len()).find(|&k| profile(&factors[k]) != profile(&factors[0])) {
        return retry(format!("projection {} mod {p} does not split like projection 1", k + 1));
    }
    Ok(Modular { field, ideal, factors })
}

type Slot = Arc<OnceLock<Result<Arc<Modular>, Failure>>>;

/// Memoized [`modular`] results, shared by concurrent branches.
struct PrimeCache<'a> {
    att: &'a Attempt,
    cfg: &'a PipelineConfig,
    slots: Mutex<BTreeMap<u64, Slot>>,
}

impl<'a> PrimeCache<'a> {
    fn new(att: &'a Attempt, cfg: &'a PipelineConfig) -> Self {
        PrimeCache { att, cfg, slots: Mutex::new(BTreeMap::new()) }
    }

    fn get(&self, p: u64) -> Result<Arc<Modular>, Failure> {
        let slot = self.slots.lock().expect("cache lock").entry(p).or_default().clone();
        slot.get_or_init(|| modular(self.att, p, self.cfg).map(Arc::new)).clone()
    }
}

/// Whether `p` can carry the factor `d` of `projection`: `p` exceeds its
/// degree, keeps its leading coefficient, and for `deg d >= 2` is admissible
/// for `d` with `d(0) = 0 mod p`.
fn serves(d: &UniPoly<Rationals>, p: u64, projection: &UniPoly<Rationals>) -> bool {
    if (p as usize) <= projection.deg() {
        return false;
    }
    let lc = primitive_integer_coeffs(projection).pop().unwrap_or_default();
    if (lc % p).is_zero() {
        return false;
    }
    if d.deg() < 2 {
        return true;
    }
    let d0 = primitive_integer_coeffs(d)[0].clone();
    !d0.is_zero() && (d0 % p).is_zero() && admissible_for(d, p).is_ok()
}

fn candidate_primes(att: &Attempt, j: usize, cfg: &PipelineConfig) -> Vec<u64> {
    let (d, _) = &att.factors[j];
    let total = att.total_degree();
    let mut out: Vec<u64> = Vec::new();
    let push = |p: u64, out: &mut Vec<u64>| {
        if !out.contains(&p) && serves(d, p, &att.projection) {
            out.push(p);
        }
    };
    if let Some(p) = cfg.prime_override {
        push(p, &mut out);
    }
    if d.deg() >= 2 {
        for p in admissible_primes(d) {
            push(p, &mut out);
        }
    } else {
        for (e, _) in att.factors.iter().filter(|(e, _)| e.deg() >= 2) {
            for p in admissible_primes(e) {
                push(p, &mut out);
            }
        }
        let mut p = FALLBACK_PRIME.max(next_prime(total as u64));
        while out.len() < cfg.primes_per_factor {
            push(p, &mut out);
            p = next_prime(p + 1);
        }
    }
    out.truncate(cfg.primes_per_factor);
    out
}

/// The prime tried for all factors at once: the override, else the
/// smallest prime serving every factor.
fn shared_prime(att: &Attempt, cfg: &PipelineConfig) -> Result<Option<u64>, PipelineError> {
    let total = att.total_degree();
    let nonlinear: Vec<&UniPoly<Rationals>> =
        att.factors.iter().map(|(d, _)| d).filter(|d| d.deg() >= 2).collect();
    if let Some(p) = cfg.prime_override {
        if !is_prime(p) || p >= MAX_PRIME {
            return Err(PipelineError::InvalidPrimeOverride { p, reason: "not a prime below 2^31".into() });
        }
        let ok = if nonlinear.is_empty() {
            serves(&att.factors[0].0, p, &att.projection)
        } else {
            nonlinear.iter().any(|d| serves(d, p, &att.projection))
        };
        if !ok {
            return Err(PipelineError::InvalidPrimeOverride {
                p,
                reason: "not admissible for any rational factor".into(),
            });
        }
        return Ok(Some(p));
    }
    let Some(first) = nonlinear.first() else {
        return Ok(Some(FALLBACK_PRIME.max(next_prime(total as u64 + 1))));
    };
    Ok(admissible_primes(first)
        .into_iter()
        .find(|&p| nonlinear.iter().all(|d| serves(d, p, &att.projection))))
}

fn branch(att: &Attempt, j: usize, md: &Modular, p: u64, cfg: &PipelineConfig) -> Result<ComponentRecord, Failure> {
    let (d, m) = (&att.factors[j].0, att.factors[j].1);
    let field = md.field;
    let n = att.nvars();
    let dp = reduce_upoly(d, field).map_err(|e| Failure::Retry(e.to_string()))?;
    if dp.deg() != d.deg() {
        return retry(format!("factor {j} drops degree mod {p}"));
    }
    let g = dp.gcd(&dp.derivative()).map_err(|e| Failure::Retry(e.to_string()))?;
    if g.deg() > 0 {
        return retry(format!("factor {j} is not squarefree mod {p}"));
    }
    for (k, (e, _)) in att.factors.iter().enumerate() {
        if k == j {
            continue;
        }
        let ep = reduce_upoly(e, field).map_err(|e| Failure::Retry(e.to_string()))?;
        if dp.gcd(&ep).map_err(|e| Failure::Retry(e.to_string()))?.deg() > 0 {
            return retry(format!("factors {j} and {k} share a root mod {p}"));
        }
    }

    let parts = partition_factors(d, field, &md.factors[0])?;
    if parts.iter().any(|(_, e)| *e != m) {
        return retry(format!("modular exponents of factor {j} differ from {m} mod {p}"));
    }
    let (chosen, _) = parts
        .iter()
        .min_by_key(|(g, _)| g.total_degree())
        .expect("partition is nonempty");
    let abs_deg = chosen.total_degree() as usize;
    if d.deg() % abs_deg != 0 {
        return retry(format!("degree {abs_deg} does not divide {} mod {p}", d.deg()));
    }

    let first = chosen.embed(n, &att.plan.kept(0));
    let candidates: Vec<Vec<MultiPoly<PrimeField>>> = (1..att.plan.len())
        .map(|k| {
            md.factors[k]
                .factors
                .iter()
                .filter(|(g, e)| g.total_degree() as usize == abs_deg && *e == m)
                .map(|(g, _)| g.embed(n, &att.plan.kept(k)))
                .collect()
        })
        .collect();
    let matched = match_factors(&md.ideal, &first, &candidates, m, &cfg.gb, cfg.parallel)?;

    let mut rec = ComponentRecord {
        rational_degree: d.deg(),
        multiplicity: m,
        absolute_count: d.deg() / abs_deg,
        absolute_degree: abs_deg,
        prime: p,
        rational_factor: d.clone(),
        initial_ideal: None,
        hilbert: None,
        isolating_polys_mod_p: Vec::new(),
        audit: None,
    };
    if m == 1 {
        let order = TermOrder::from(cfg.order);
        let clean = pick_jacobian_minor(&md.ideal, &matched, &order, Some(abs_deg as u64), &cfg.gb)?;
        rec.audit = Some(ComponentAudit {
            matched: matched.generators().to_vec(),
            minor: clean.minor,
            colon_basis: clean.basis.polys().to_vec(),
        });
        rec.initial_ideal = Some(clean.initial);
        rec.hilbert = Some(clean.hilbert);
    } else {
        rec.isolating_polys_mod_p = matched.generators()[md.ideal.generators().len()..].to_vec();
    }
    Ok(rec)
}

fn solve_factor(
    att: &Attempt,
    j: usize,
    cache: &PrimeCache<'_>,
    cfg: &PipelineConfig,
    tried: &BTreeSet<u64>,
) -> Result<ComponentRecord, Failure> {
    let mut reasons = Vec::new();
    let budget = cfg.primes_per_factor.saturating_sub(tried.len());
    for p in candidate_primes(att, j, cfg).into_iter().filter(|p| !tried.contains(p)).take(budget) {
        match cache.get(p).and_then(|md| branch(att, j, &md, p, cfg)) {
            Ok(rec) => return Ok(rec),
            Err(Failure::Retry(msg)) => reasons.push(msg),
            Err(f) => return Err(f),
        }
    }
    if reasons.is_empty() {
        reasons.push("no admissible prime".into());
    }
    retry(format!("factor {j}: {}", reasons.join("; ")))
}

fn run_attempt(
    idl: &Ideal<Rationals>,
    coords: CoordChange,
    cfg: &PipelineConfig,
    attempt: usize,
) -> Result<DecompositionReport, Failure> {
    let att = prepare(idl, coords, cfg)?;
    let cache = PrimeCache::new(&att, cfg);
    let k = att.factors.len();
    let mut records: Vec<Option<ComponentRecord>> = vec![None; k];
    let mut tried: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); k];

    if let Some(p) = shared_prime(&att, cfg).map_err(Failure::Fatal)? {
        let eligible: Vec<usize> =
            (0..k).filter(|&j| serves(&att.factors[j].0, p, &att.projection)).collect();
        let outs = par::map(&eligible, cfg.parallel, |&j| cache.get(p).and_then(|md| branch(&att, j, &md, p, cfg)));
        for (&j, out) in eligible.iter().zip(outs) {
            match out {
                Ok(rec) => records[j] = Some(rec),
                Err(Failure::Retry(_)) => {
                    tried[j].insert(p);
                }
                Err(f) => return Err(f),
            }
        }
    }

    let remaining: Vec<usize> = (0..k).filter(|&j| records[j].is_none()).collect();
    let outs = par::map(&remaining, cfg.parallel, |&j| solve_factor(&att, j, &cache, cfg, &tried[j]));
    for (&j, out) in remaining.iter().zip(outs) {
        records[j] = Some(out?);
    }

    let components: Vec<ComponentRecord> = records.into_iter().map(|r| r.expect("every factor solved")).collect();
    Ok(DecompositionReport {
        s: components.len(),
        components,
        coord_change: att.coords.clone(),
        seed: cfg.seed,
        total_degree: att.total_degree(),
        projection: att.projection.clone(),
        attempts: attempt + 1,
        trace: Vec::new(),
    })
}

/// Dimension of the ideal modulo [`FALLBACK_PRIME`].
fn sanity_dimension(idl: &Ideal<Rationals>, cfg: &PipelineConfig) -> Result<(), PipelineError> {
    let ctx = PrimeContext::plain(FALLBACK_PRIME)?;
    let reduced = reduce_ideal(idl, &ctx)?;
    let found = ideal_dimension(&reduced, &cfg.gb)?;
    if found != 1 {
        return Err(PipelineError::DimensionMismatch { found, p: FALLBACK_PRIME });
    }
    Ok(())
}

/// Coordinate change for attempt `attempt` of a run seeded with `seed`.
pub fn coordinates_for(nvars: usize, seed: u64, attempt: usize, bound: i64) -> CoordChange {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
    CoordChange::random(nvars, bound.max(1), true, &mut rng)
}

/// Degrees, multiplicities and absolute splitting of the primary
/// components of a curve ideal, with Hilbert data of reduced components.
pub fn decompose(idl: &Ideal<Rationals>, cfg: &PipelineConfig) -> Result<DecompositionReport, PipelineError> {
    if let Some(c) = idl.declared_dimension() {
        if c != 1 {
            return Err(PipelineError::UnsupportedDimension(c));
        }
    }
    let n = idl.nvars();
    if n < 2 {
        return Err(PipelineError::TooFewVariables(n));
    }
    use_resultant(cfg.backend, idl.generators().len(), n)?;
    let gens: Vec<MultiPoly<Rationals>> =
        idl.generators().iter().map(|g| g.normalize(&TermOrder::DegLex)).collect();
    let idl = Ideal::new(Rationals, n, gens)?;
    sanity_dimension(&idl, cfg)?;

    let mut trace = Vec::new();
    for attempt in 0..cfg.max_retries {
        let coords = coordinates_for(n, cfg.seed, attempt, cfg.coeff_bound);
        match run_attempt(&idl, coords, cfg, attempt) {
            Ok(mut report) => {
                report.trace = trace;
                return Ok(report);
            }
            Err(Failure::Retry(msg)) => trace.push(format!("attempt {}: {msg}", attempt + 1)),
            Err(Failure::Fatal(e)) => return Err(e),
        }
    }
    Err(PipelineError::RetryExhausted { attempts: cfg.max_retries, trace })
}
