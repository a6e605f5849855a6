//! The example catalog and the end-to-end verification pipeline.
//!
//! Entries are checked-in TOML data in the polynomial grammar. [`verify_entry`]
//! never fails: every problem is recorded in the returned report.

mod hyperplane;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactnum::Cyclotomic;
use crate::invartheory::{admissible_primary_orders, sweep};
use crate::polyring::{parse_matrices, parse_poly, parse_poly_auto, PolyError, Polynomial, SquareMatrix};
use crate::projgroup::{GeneratedGroup, GroupError, GroupFingerprint};
use crate::smoothcert::{self, SmoothnessVerdict, VerdictSummary};
use crate::stabkit::semiperm_stabilizer;

pub use hyperplane::{restrict_to_hyperplane, Restriction};

const EXAMPLES: &str = include_str!("../../catalog/examples.toml");
const AUXILIARY: &str = include_str!("../../catalog/auxiliary.toml");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("malformed entry: {0}")]
    Malformed(String),
    #[error("generator {} does not preserve the hyperplane", .0 + 1)]
    HyperplaneNotPreserved(usize),
    #[error("unknown entry id {0}")]
    UnknownEntry(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    Example,
    Remark,
    Auxiliary,
    Family,
}

#[derive(Clone, Debug, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub kind: EntryKind,
    pub nvars: usize,
    pub polynomial: String,
    pub hyperplane: Option<String>,
    pub expected_order: u64,
    pub expected_gorenstein: Option<u64>,
    pub abelian: Option<bool>,
    pub exponent: Option<u64>,
    pub expected_semiperm: Option<u64>,
    /// The automorphism group is claimed to be generated by semi-permutation matrices.
    pub semiperm_claim: bool,
    /// Absent for parameter families, whose instantiations are only reported.
    pub expect_smooth: Option<bool>,
    pub structure: Option<String>,
    pub notes: Option<String>,
    pub generators: Vec<String>,
}

#[derive(Deserialize)]
struct CatalogFile {
    entry: Vec<CatalogEntry>,
}

fn parse_file(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    toml::from_str::<CatalogFile>(text).map(|f| f.entry).map_err(|e| CatalogError::Malformed(e.to_string()))
}

/// Every entry: the 22 examples followed by the auxiliary ones.
pub fn load_catalog() -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut all = parse_file(EXAMPLES)?;
    all.extend(parse_file(AUXILIARY)?);
    Ok(all)
}

impl CatalogEntry {
    /// The polynomial and generators in the coordinates where the group acts
    /// (after hyperplane restriction when the entry has one).
    pub fn materialize(&self) -> Result<(Polynomial, Vec<SquareMatrix>), CatalogError> {
        let f = parse_poly_auto(&self.polynomial, self.nvars)?;
        let mut gens = Vec::with_capacity(self.generators.len());
        for (i, text) in self.generators.iter().enumerate() {
            let mut m = parse_matrices(text)?;
            if m.len() != 1 || m[0].n() != self.nvars {
                return Err(CatalogError::Malformed(format!("generator {} of entry {}", i + 1, self.id)));
            }
            gens.push(m.remove(0));
        }
        match &self.hyperplane {
            None => Ok((f, gens)),
            Some(h) => {
                let l = parse_poly(h, self.nvars, 1)?;
                let r = restrict_to_hyperplane(&f, &l, &gens)?;
                Ok((r.form, r.generators))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyOptions {
    #[serde(serialize_with = "crate::decimal::int")]
    pub max_primes: usize,
    #[serde(serialize_with = "crate::decimal::int")]
    pub cap: usize,
    pub with_semi_perm: bool,
    pub with_gorenstein: bool,
    pub timings: bool,
    pub example: Option<String>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_primes: smoothcert::DEFAULT_PRIMES,
            cap: crate::projgroup::DEFAULT_CAP,
            with_semi_perm: true,
            with_gorenstein: true,
            timings: false,
            example: None,
        }
    }
}

/// A found value against an optional expected one.
#[derive(Clone, Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Comparison {
    #[serde(serialize_with = "crate::decimal::opt")]
    pub found: Option<u64>,
    #[serde(serialize_with = "crate::decimal::opt")]
    pub expected: Option<u64>,
}

impl Comparison {
    fn matches(&self) -> bool {
        self.expected.is_none() || self.found == self.expected
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EntryReport {
    pub id: String,
    pub kind: EntryKind,
    pub parsed_ok: bool,
    /// λ with A(F) = λF for each generator, or null when A(F) is not proportional to F.
    pub per_generator_factor: Vec<Option<String>>,
    pub group_order: Comparison,
    pub fingerprint: Option<GroupFingerprint>,
    pub smoothness: Option<VerdictSummary>,
    pub gorenstein_order: Option<Comparison>,
    pub semi_perm_stabilizer_order: Option<Comparison>,
    /// Milliseconds; only recorded on request so reports stay reproducible.
    #[serde(serialize_with = "crate::decimal::opt")]
    pub elapsed: Option<u128>,
    pub status: Status,
    pub failures: Vec<String>,
}

/// λ in the E(n) grammar, as a single root of unity when it is one.
pub fn factor_string(c: &Cyclotomic) -> String {
    match c.as_root_of_unity() {
        Some((1, _)) => "1".into(),
        Some((m, 1)) => format!("E({m})"),
        Some((m, j)) => format!("E({m})^{j}"),
        None => c.to_string(),
    }
}

fn group_error(e: &GroupError) -> String {
    match e {
        GroupError::CapExceeded(c) => format!("CapExceeded({c})"),
        other => other.to_string(),
    }
}

pub fn verify_entry(entry: &CatalogEntry, opts: &VerifyOptions) -> EntryReport {
    let start = Instant::now();
    let mut r = EntryReport {
        id: entry.id.clone(),
        kind: entry.kind,
        parsed_ok: false,
        per_generator_factor: vec![],
        group_order: Comparison { found: None, expected: Some(entry.expected_order) },
        fingerprint: None,
        smoothness: None,
        gorenstein_order: None,
        semi_perm_stabilizer_order: None,
        elapsed: None,
        status: Status::Fail,
        failures: vec![],
    };
    run_pipeline(entry, opts, &mut r);
    if r.group_order.found.is_some() && !r.group_order.matches() {
        r.failures.push("group order differs from the expected value".into());
    }
    if r.failures.is_empty() {
        r.status = Status::Pass;
    }
    if opts.timings {
        r.elapsed = Some(start.elapsed().as_millis());
    }
    r
}

fn run_pipeline(entry: &CatalogEntry, opts: &VerifyOptions, r: &mut EntryReport) {
    let (f, gens) = match entry.materialize() {
        Ok(x) => x,
        Err(e) => {
            r.failures.push(e.to_string());
            return;
        }
    };
    r.parsed_ok = true;
    for (i, a) in gens.iter().enumerate() {
        match f.semi_invariance_factor(a) {
            Ok(Some(l)) => {
                if entry.semiperm_claim && l.as_root_of_unity().is_none() {
                    r.failures.push(format!("factor of generator {} is not a root of unity", i + 1));
                }
                r.per_generator_factor.push(Some(factor_string(&l)));
            }
            Ok(None) => {
                r.failures.push(format!("generator {} does not leave the form semi-invariant", i + 1));
                r.per_generator_factor.push(None);
            }
            Err(e) => {
                r.failures.push(e.to_string());
                r.per_generator_factor.push(None);
            }
        }
    }
    if !r.failures.is_empty() {
        return;
    }
    let group = match GeneratedGroup::closure(&gens, crate::projgroup::Mode::Projective, opts.cap, Some(f.nvars())) {
        Ok(g) => g,
        Err(e) => {
            r.failures.push(group_error(&e));
            return;
        }
    };
    r.group_order.found = Some(group.order() as u64);
    let fp = group.fingerprint();
    if entry.abelian.is_some_and(|a| a != fp.is_abelian) {
        r.failures.push("abelian flag differs".into());
    }
    if entry.exponent.is_some_and(|e| e != fp.exponent) {
        r.failures.push("exponent differs".into());
    }
    r.fingerprint = Some(fp);

    let verdict = smoothcert::certify(&f, opts.max_primes);
    match entry.expect_smooth {
        Some(true) if !verdict.is_smooth() => r.failures.push(format!("expected smooth, got {}", verdict.label())),
        Some(false) if verdict.is_smooth() || verdict == SmoothnessVerdict::Unknown => {
            r.failures.push(format!("expected singular, got {}", verdict.label()))
        }
        _ => {}
    }
    r.smoothness = Some(VerdictSummary::from(&verdict));

    if opts.with_gorenstein && f.nvars() == 5 {
        match group.gorenstein_subgroup(&f) {
            Ok(h) => {
                let c = Comparison { found: Some(h.order() as u64), expected: entry.expected_gorenstein };
                if !c.matches() {
                    r.failures.push("Gorenstein order differs".into());
                }
                if group.order() % h.order() != 0 {
                    r.failures.push("Gorenstein order does not divide the group order".into());
                }
                r.gorenstein_order = Some(c);
            }
            Err(e) => r.failures.push(group_error(&e)),
        }
    }

    let semiperm_expect = if entry.semiperm_claim { Some(entry.expected_order) } else { entry.expected_semiperm };
    if opts.with_semi_perm {
        if let Some(want) = semiperm_expect {
            match semiperm_stabilizer(&f, true) {
                Ok(s) => {
                    let c = Comparison { found: Some(s.order as u64), expected: Some(want) };
                    if !c.matches() {
                        r.failures.push("semi-permutation stabilizer order differs".into());
                    }
                    r.semi_perm_stabilizer_order = Some(c);
                }
                Err(e) => r.failures.push(e.to_string()),
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub version: String,
    pub options: VerifyOptions,
    pub entries: Vec<EntryReport>,
    pub sweeps: Vec<sweep::SweepReport>,
    pub passed: bool,
}

/// The admissible prime-power orders for (n, d, bound) = (3, 5, 100), as a sweep-shaped record.
pub fn admissible_orders_check() -> sweep::SweepReport {
    let found = admissible_primary_orders(3, 5, 100);
    let expected = [3u64, 13, 17, 41];
    let mut counts = std::collections::BTreeMap::new();
    counts.insert("admissible".into(), found.len() as u64);
    for q in &found {
        counts.insert(format!("order{q}"), *q);
    }
    let survivors: Vec<String> = found
        .iter()
        .filter(|q| !expected.contains(q))
        .map(|q| format!("unexpected {q}"))
        .chain(expected.iter().filter(|q| !found.contains(q)).map(|q| format!("missing {q}")))
        .collect();
    sweep::SweepReport {
        name: "admissible-orders".into(),
        counts,
        escalated: vec![],
        passed: survivors.is_empty(),
        survivors,
        counterexamples: vec![],
    }
}

/// Verifies all entries (or the one selected by `opts.example`); sweeps run only for the full catalog.
pub fn verify_all(opts: &VerifyOptions) -> Result<Report, CatalogError> {
    let all = load_catalog()?;
    let chosen: Vec<&CatalogEntry> = match &opts.example {
        Some(id) => {
            let v: Vec<_> = all.iter().filter(|e| &e.id == id).collect();
            if v.is_empty() {
                return Err(CatalogError::UnknownEntry(id.clone()));
            }
            v
        }
        None => all.iter().collect(),
    };
    let entries: Vec<EntryReport> = chosen.par_iter().map(|e| verify_entry(e, opts)).collect();
    let sweeps = if opts.example.is_none() {
        vec![
            sweep::sweep_order25(),
            sweep::sweep_elementary_abelian(2),
            sweep::sweep_elementary_abelian(3),
            admissible_orders_check(),
        ]
    } else {
        vec![]
    };
    let passed = entries.iter().all(|e| e.status == Status::Pass) && sweeps.iter().all(|s| s.passed);
    Ok(Report { version: env!("CARGO_PKG_VERSION").into(), options: opts.clone(), entries, sweeps, passed })
}
