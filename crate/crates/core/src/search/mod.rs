//! Enumeration of zero patterns and bulk classification.
//!
//! Patterns of shape `(m, n)` with `n^m <= 64` are handled as `u64` integers
//! (bit `p` is linear position `p`). Every mode maps an index range onto
//! patterns; the range is cut into fixed chunks that are classified in
//! parallel and merged in chunk order, so results never depend on the worker
//! count.

mod canon;
mod checkpoint;
pub mod verify;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use canon::Relabeler;

use crate::engine::{eta_degree, gamma};
use crate::error::{Error, Result};
use crate::matrix::wielandt_bound;
use crate::screening::{conclusions, filter_bits};
use crate::tensor::{words_to_hex, BooleanTensor};

/// Patterns per chunk; the unit of parallel work.
pub const CHUNK: u64 = 1 << 14;
/// Chunks per batch; budgets are checked and checkpoints written between batches.
pub const BATCH_CHUNKS: u64 = 64;
/// Exhaustive sweeps over more than `2^LONG_RUN_BITS` patterns need [`EnumSpec::long_run`].
pub const LONG_RUN_BITS: usize = 20;
/// Exhaustive sweeps over more than `2^MAX_EXHAUSTIVE_BITS` patterns need [`EnumSpec::override_limit`].
pub const MAX_EXHAUSTIVE_BITS: usize = 30;
/// Cap on the low-zero stratum size.
pub const MAX_LOW_ZERO: u64 = 1 << 26;
/// Witnesses kept for the maximum `η`.
pub const MAX_WITNESSES: usize = 16;

pub const RNG_NAME: &str = "ChaCha8";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum Mode {
    /// Every pattern, ascending.
    Exhaustive,
    /// `samples` independent uniform patterns.
    Random { samples: u64, seed: u64 },
    /// Every pattern with at most `max_zeros` zero entries, ascending.
    LowZero { max_zeros: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub max_patterns: Option<u64>,
    pub max_seconds: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumSpec {
    pub m: usize,
    pub n: usize,
    pub mode: Mode,
    /// Visit one representative per relabeling orbit (exhaustive and low-zero),
    /// or report canonical keys (random).
    pub canonicalize: bool,
    /// Skip engine calls whose outcome the structural filters already decide.
    pub filters: bool,
    pub budget: Budget,
    pub threads: usize,
    /// Keep per-pattern records; off for summary-only sweeps.
    pub records: bool,
    pub long_run: bool,
    pub override_limit: bool,
    /// Append-only progress file; an existing file resumes the sweep.
    pub checkpoint: Option<PathBuf>,
}

impl EnumSpec {
    pub fn new(m: usize, n: usize, mode: Mode) -> Self {
        EnumSpec {
            m,
            n,
            mode,
            canonicalize: false,
            filters: false,
            budget: Budget::default(),
            threads: 1,
            records: true,
            long_run: false,
            override_limit: false,
            checkpoint: None,
        }
    }

    pub fn bit_len(&self) -> usize {
        self.n.pow(self.m as u32)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 2 || self.n < 1 {
            return Err(Error::InvalidParameter(format!(
                "need m >= 2 and n >= 1, got m={} n={}",
                self.m, self.n
            )));
        }
        let bits = (self.n as u128)
            .checked_pow(self.m as u32)
            .unwrap_or(u128::MAX);
        if bits > 64 {
            return Err(Error::InvalidParameter(format!(
                "search handles n^m <= 64 entries, got {bits}"
            )));
        }
        if self.threads == 0 {
            return Err(Error::InvalidParameter("threads must be at least 1".into()));
        }
        let bits = bits as usize;
        match self.mode {
            Mode::Exhaustive => {
                if bits > MAX_EXHAUSTIVE_BITS && !self.override_limit {
                    return Err(Error::InvalidParameter(format!(
                        "exhaustive sweep over 2^{bits} patterns exceeds 2^{MAX_EXHAUSTIVE_BITS}; needs the override"
                    )));
                }
                if bits > LONG_RUN_BITS && !self.long_run {
                    return Err(Error::InvalidParameter(format!(
                        "exhaustive sweep over 2^{bits} patterns is a long run; it must be requested explicitly"
                    )));
                }
            }
            Mode::LowZero { max_zeros } => {
                let size = low_zero_count(bits, max_zeros);
                if size > MAX_LOW_ZERO {
                    return Err(Error::InvalidParameter(format!(
                        "low-zero stratum has {size} patterns, above the limit {MAX_LOW_ZERO}"
                    )));
                }
            }
            Mode::Random { .. } => {}
        }
        if let Some(s) = self.budget.max_seconds {
            if s.is_nan() || s <= 0.0 {
                return Err(Error::InvalidParameter(
                    "time budget must be positive".into(),
                ));
            }
        }
        Ok(())
    }

    /// One-line description used in report headers; excludes worker count and paths.
    pub fn describe(&self) -> String {
        let mode = match &self.mode {
            Mode::Exhaustive => "exhaustive".to_string(),
            Mode::Random { samples, .. } => format!("random samples={samples}"),
            Mode::LowZero { max_zeros } => format!("low-zero max_zeros={max_zeros}"),
        };
        let mut s = format!(
            "m={} n={} mode={} canonicalize={} filters={}",
            self.m, self.n, mode, self.canonicalize, self.filters
        );
        if let Some(p) = self.budget.max_patterns {
            let _ = write!(s, " max_patterns={p}");
        }
        s
    }

    pub fn rng_description(&self) -> String {
        match self.mode {
            Mode::Random { seed, .. } => format!("{RNG_NAME} seed={seed} stream=chunk"),
            _ => "none".into(),
        }
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| {
        acc.saturating_mul((n - i) as u64) / (i as u64 + 1)
    })
}

fn low_zero_count(bits: usize, max_zeros: usize) -> u64 {
    (0..=max_zeros.min(bits)).fold(0u64, |a, z| a.saturating_add(binomial(bits, z)))
}

fn full_mask(bits: usize) -> u64 {
    if bits == 64 {
        u64::MAX
    } else {
        (1 << bits) - 1
    }
}

/// All patterns with at most `max_zeros` zeros, ascending.
fn low_zero_patterns(bits: usize, max_zeros: usize) -> Vec<u64> {
    fn place(out: &mut Vec<u64>, full: u64, bits: usize, from: usize, left: usize, acc: u64) {
        if left == 0 {
            out.push(full & !acc);
            return;
        }
        for q in from..bits {
            place(out, full, bits, q + 1, left - 1, acc | 1 << q);
        }
    }
    let full = full_mask(bits);
    let mut out = Vec::with_capacity(low_zero_count(bits, max_zeros) as usize);
    for z in 0..=max_zeros.min(bits) {
        place(&mut out, full, bits, 0, z, 0);
    }
    out.sort_unstable();
    out
}

/// Verdicts for one visited pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    /// The recorded pattern: the orbit minimum when canonicalizing.
    pub pattern: u64,
    pub key_hex: String,
    pub orbit_size: u64,
    pub gamma: Option<usize>,
    pub eta: Option<usize>,
    pub filter_bits: u32,
}

impl ClassRecord {
    pub fn tensor(&self, m: usize, n: usize) -> Result<BooleanTensor> {
        BooleanTensor::from_pattern(m, n, self.pattern)
    }

    pub fn csv_row(&self) -> String {
        let opt = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |d| d.to_string());
        format!(
            "{},{},{},{},{:x},",
            self.key_hex,
            self.orbit_size,
            opt(self.gamma),
            opt(self.eta),
            self.filter_bits
        )
    }
}

pub const CSV_COLUMNS: &str = "canonical_key_hex,orbit_size,gamma,eta,filter_bits,certificate_ref";

mod histogram_serde {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    type Key = (Option<usize>, Option<usize>);

    pub fn serialize<S: Serializer>(h: &BTreeMap<Key, u64>, s: S) -> Result<S::Ok, S::Error> {
        h.iter()
            .map(|(&(g, e), &c)| (g, e, c))
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Key, u64>, D::Error> {
        let v: Vec<(Option<usize>, Option<usize>, u64)> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|(g, e, c)| ((g, e), c)).collect())
    }
}

/// Mergeable totals over a set of visited patterns.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    /// Records produced (orbit representatives when canonicalizing).
    pub visited: u64,
    /// Patterns accounted for, counting whole orbits.
    pub patterns: u64,
    pub primitive: u64,
    pub strongly_primitive: u64,
    /// Pattern counts keyed by `(γ, η)`, `None` for a negative verdict.
    #[serde(with = "histogram_serde")]
    pub histogram: BTreeMap<(Option<usize>, Option<usize>), u64>,
    pub max_eta: Option<usize>,
    /// Smallest recorded patterns attaining `max_eta`.
    pub max_eta_witnesses: Vec<u64>,
    /// Patterns with `η >= (n-1)^2 + 1`, `n >= 3`.
    pub eta_at_least_wielandt: Vec<u64>,
    /// Patterns where `γ <= η` fails; always empty for a correct engine.
    pub inconsistent: Vec<u64>,
    /// Index ranges merged into this summary, as a consistency check.
    pub covered: u64,
}

impl Summary {
    fn add(&mut self, rec: &ClassRecord, weight: u64, n: usize) {
        self.visited += 1;
        self.patterns += weight;
        *self.histogram.entry((rec.gamma, rec.eta)).or_default() += weight;
        if rec.gamma.is_some() {
            self.primitive += weight;
        }
        if let Some(e) = rec.eta {
            self.strongly_primitive += weight;
            match self.max_eta {
                Some(cur) if cur > e => {}
                Some(cur) if cur == e => {
                    let w = &mut self.max_eta_witnesses;
                    if let Err(pos) = w.binary_search(&rec.pattern) {
                        w.insert(pos, rec.pattern);
                        w.truncate(MAX_WITNESSES);
                    }
                }
                _ => {
                    self.max_eta = Some(e);
                    self.max_eta_witnesses = vec![rec.pattern];
                }
            }
            if n >= 3 && e >= wielandt_bound(n) {
                self.eta_at_least_wielandt.push(rec.pattern);
            }
        }
        let consistent = match (rec.gamma, rec.eta) {
            (Some(g), Some(e)) => g <= e,
            (None, Some(_)) => false,
            _ => true,
        };
        if !consistent {
            self.inconsistent.push(rec.pattern);
        }
    }

    /// Merges `other`, which covers indices after those of `self`.
    pub fn merge(&mut self, other: &Summary) {
        self.visited += other.visited;
        self.patterns += other.patterns;
        self.primitive += other.primitive;
        self.strongly_primitive += other.strongly_primitive;
        for (k, v) in &other.histogram {
            *self.histogram.entry(*k).or_default() += v;
        }
        match (self.max_eta, other.max_eta) {
            (_, None) => {}
            (Some(a), Some(b)) if a > b => {}
            (Some(a), Some(b)) if a == b => {
                self.max_eta_witnesses.extend(&other.max_eta_witnesses);
                self.max_eta_witnesses.sort_unstable();
                self.max_eta_witnesses.dedup();
                self.max_eta_witnesses.truncate(MAX_WITNESSES);
            }
            _ => {
                self.max_eta = other.max_eta;
                self.max_eta_witnesses = other.max_eta_witnesses.clone();
            }
        }
        self.eta_at_least_wielandt
            .extend(&other.eta_at_least_wielandt);
        self.inconsistent.extend(&other.inconsistent);
        self.covered += other.covered;
    }
}

/// Result of [`classify_all`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub spec: EnumSpec,
    pub summary: Summary,
    pub records: Vec<ClassRecord>,
    /// Stopped early by the budget.
    pub partial: bool,
    /// Index positions restored from a checkpoint rather than computed now.
    pub resumed: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Classification {
    /// CSV with `#` header lines. Worker count and timing are left out so the
    /// bytes depend only on the spec.
    pub fn write_csv(&self, w: &mut dyn Write) -> io::Result<()> {
        let s = &self.summary;
        writeln!(w, "# tprim {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(w, "# spec: {}", self.spec.describe())?;
        writeln!(w, "# rng: {}", self.spec.rng_description())?;
        writeln!(
            w,
            "# visited: {} patterns: {} primitive: {} strongly_primitive: {} partial: {}",
            s.visited, s.patterns, s.primitive, s.strongly_primitive, self.partial
        )?;
        writeln!(w, "{CSV_COLUMNS}")?;
        for r in &self.records {
            writeln!(w, "{}", r.csv_row())?;
        }
        Ok(())
    }

    pub fn csv_string(&self) -> String {
        let mut out = Vec::new();
        self.write_csv(&mut out).expect("writing to memory");
        String::from_utf8(out).expect("ascii")
    }

    /// Histogram as `gamma,eta,count` lines, with `-` for negative verdicts.
    pub fn histogram_lines(&self) -> Vec<String> {
        let opt = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |d| d.to_string());
        self.summary
            .histogram
            .iter()
            .map(|(&(g, e), c)| format!("{},{},{}", opt(g), opt(e), c))
            .collect()
    }
}

enum Source {
    Exhaustive,
    Random { seed: u64, mask: u64 },
    List(Vec<u64>),
}

struct Ctx {
    m: usize,
    n: usize,
    hex_bits: usize,
    source: Source,
    canon: Option<Relabeler>,
    filters: bool,
    keep_records: bool,
    total: u64,
}

struct ChunkOut {
    records: Vec<ClassRecord>,
    summary: Summary,
}

impl Ctx {
    fn classify_pattern(&self, p: u64) -> (Option<usize>, Option<usize>, u32) {
        let t = BooleanTensor::from_pattern(self.m, self.n, p).expect("pattern fits");
        let bits = filter_bits(&t);
        let (skip_gamma, skip_eta) = if self.filters {
            conclusions(bits)
        } else {
            (false, false)
        };
        let g = if skip_gamma {
            None
        } else {
            gamma(&t).expect("shape checked").degree()
        };
        let e = if skip_eta {
            None
        } else {
            eta_degree(&t).expect("shape checked")
        };
        (g, e, bits)
    }

    fn chunk(&self, c: u64) -> ChunkOut {
        let start = c * CHUNK;
        let end = (start + CHUNK).min(self.total);
        let mut out = ChunkOut {
            records: Vec::new(),
            summary: Summary::default(),
        };
        let mut rng = match self.source {
            Source::Random { seed, .. } => {
                let mut r = ChaCha8Rng::seed_from_u64(seed);
                r.set_stream(c);
                Some(r)
            }
            _ => None,
        };
        for idx in start..end {
            let raw = match &self.source {
                Source::Exhaustive => idx,
                Source::Random { mask, .. } => rng.as_mut().unwrap().gen::<u64>() & mask,
                Source::List(v) => v[idx as usize],
            };
            let (pattern, weight, orbit) = match (&self.canon, &self.source) {
                (None, _) => (raw, 1, 1),
                (Some(r), Source::Random { .. }) => {
                    let (c, size) = r.canonical(raw);
                    (c, 1, size)
                }
                (Some(r), _) => match r.orbit_if_canonical(raw) {
                    Some(size) => (raw, size, size),
                    None => continue,
                },
            };
            let (g, e, bits) = self.classify_pattern(pattern);
            let rec = ClassRecord {
                pattern,
                key_hex: words_to_hex(&[pattern], self.hex_bits),
                orbit_size: orbit,
                gamma: g,
                eta: e,
                filter_bits: bits,
            };
            out.summary.add(&rec, weight, self.n);
            if self.keep_records {
                out.records.push(rec);
            }
        }
        out.summary.covered = end - start;
        out
    }
}

/// Classifies every pattern (or orbit representative) the spec visits.
pub fn classify_all(spec: &EnumSpec) -> Result<Classification> {
    spec.validate()?;
    let began = Instant::now();
    let bits = spec.bit_len();
    let mask = full_mask(bits);
    let (source, mut total) = match spec.mode {
        Mode::Exhaustive => (
            Source::Exhaustive,
            if bits == 64 { u64::MAX } else { 1u64 << bits },
        ),
        Mode::Random { samples, seed } => (Source::Random { seed, mask }, samples),
        Mode::LowZero { max_zeros } => {
            let v = low_zero_patterns(bits, max_zeros);
            let len = v.len() as u64;
            (Source::List(v), len)
        }
    };
    let mut partial = false;
    if let Some(cap) = spec.budget.max_patterns {
        if cap < total {
            total = cap;
            partial = true;
        }
    }
    let needs_canon = spec.canonicalize && spec.n >= 2;
    let ctx = Ctx {
        m: spec.m,
        n: spec.n,
        hex_bits: bits,
        source,
        canon: needs_canon.then(|| Relabeler::new(spec.m, spec.n)),
        filters: spec.filters,
        keep_records: spec.records,
        total,
    };

    let mut summary = Summary::default();
    let mut records = Vec::new();
    let n_chunks = total.div_ceil(CHUNK);
    let mut next_chunk = 0u64;
    let mut log = match &spec.checkpoint {
        Some(path) => {
            let (log, restored) = checkpoint::Log::open(path, spec)?;
            if let Some((done, s)) = restored {
                next_chunk = done.min(n_chunks);
                summary = s;
            }
            Some(log)
        }
        None => None,
    };
    let resumed = (next_chunk * CHUNK).min(total);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.threads)
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let deadline = spec.budget.max_seconds.map(Duration::from_secs_f64);
    while next_chunk < n_chunks {
        if let Some(d) = deadline {
            if began.elapsed() >= d {
                partial = true;
                break;
            }
        }
        let batch_end = (next_chunk + BATCH_CHUNKS).min(n_chunks);
        let outs: Vec<ChunkOut> = pool.install(|| {
            (next_chunk..batch_end)
                .into_par_iter()
                .map(|c| ctx.chunk(c))
                .collect()
        });
        let mut batch = Summary::default();
        for o in outs {
            batch.merge(&o.summary);
            records.extend(o.records);
        }
        if let Some(log) = log.as_mut() {
            log.append(next_chunk, batch_end, &batch)?;
        }
        summary.merge(&batch);
        next_chunk = batch_end;
    }
    Ok(Classification {
        spec: spec.clone(),
        summary,
        records,
        partial,
        resumed,
        elapsed: began.elapsed(),
    })
}

/// Evidence on the conjectured bound `η < (n-1)^2 + 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaxEtaReport {
    pub m: usize,
    pub n: usize,
    pub bound: usize,
    pub max_eta: Option<usize>,
    /// Hex keys of the smallest recorded patterns attaining `max_eta`.
    pub witnesses: Vec<String>,
    /// Distinct hex keys of patterns with `η >= bound`, in visit order; the
    /// conjectured bound fails on any of them.
    pub counterexamples: Vec<String>,
    pub visited: u64,
    pub patterns: u64,
    pub partial: bool,
}

/// Runs the spec and reports the largest finite `η`. Requires `n >= 3`; the
/// bound is only compared against, never assumed.
pub fn max_eta_search(spec: &EnumSpec) -> Result<(MaxEtaReport, Classification)> {
    if spec.n < 3 {
        return Err(Error::InvalidParameter(format!(
            "the explorer targets n >= 3, got n={}",
            spec.n
        )));
    }
    let c = classify_all(spec)?;
    let bits = spec.bit_len();
    let hex = |p: &u64| words_to_hex(&[*p], bits);
    let report = MaxEtaReport {
        m: spec.m,
        n: spec.n,
        bound: wielandt_bound(spec.n),
        max_eta: c.summary.max_eta,
        witnesses: c.summary.max_eta_witnesses.iter().map(hex).collect(),
        counterexamples: {
            let mut seen = std::collections::HashSet::new();
            c.summary
                .eta_at_least_wielandt
                .iter()
                .filter(|p| seen.insert(**p))
                .map(hex)
                .collect()
        },
        visited: c.summary.visited,
        patterns: c.summary.patterns,
        partial: c.partial,
    };
    Ok((report, c))
}
