//! Exhaustive catalogs of small semigroups and the criterion-versus-closure
//! sweeps over them.
//!
//! Enumeration fills the multiplication table cell by cell, pruning as soon
//! as any fully determined associativity triple fails. Isomorphism classes
//! are keyed by the lexicographically minimal table over all simultaneous
//! row/column/value permutations; anti-isomorphic tables are NOT identified,
//! because the closure criteria are side-sensitive (right zero and left zero
//! semigroups behave differently).

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::closure::{certificate, closure, Budget, Certificate, ClosureError, ClosureReport};
use crate::green::{criteria, CriterionVerdict};
use crate::mealy::{cayley, dual_cayley, generators};
use crate::semigroup::FiniteSemigroup;

/// Orders beyond this are out of catalog scope (order 5 already has 183,732
/// labeled tables).
pub const MAX_ENUMERATION_ORDER: usize = 4;

/// Largest order [`naive_enumerate`] will scan exhaustively (`n^(n*n)`
/// tables).
pub const MAX_NAIVE_ORDER: usize = 3;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("order {order} outside supported range 1..={max}")]
    UnsupportedOrder { order: usize, max: usize },
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Closure(#[from] ClosureError),
}

/// One catalog semigroup together with its canonical (permutation-minimal)
/// table and its position in the labeled enumeration.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub semigroup: FiniteSemigroup,
    pub canonical_table: Vec<u8>,
    pub labeled_index: usize,
}

impl CatalogEntry {
    /// Compact identifier: order, colon, canonical table digits.
    pub fn canonical_id(&self) -> String {
        let digits: String = self
            .canonical_table
            .iter()
            .map(|&v| char::from_digit(v as u32, 10).unwrap())
            .collect();
        format!("{}:{}", self.semigroup.order(), digits)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Every associative table.
    Labeled,
    /// One representative per isomorphism class, given by its canonical
    /// table.
    UpToIso,
}

/// Cell fill orders for the backtracking enumeration; the resulting table
/// sets must agree, which the acceptance suite checks at order 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FillOrder {
    RowMajor,
    ColumnMajor,
}

/// All associative `n x n` tables by backtracking with incremental
/// associativity pruning, in lexicographic order of the chosen fill.
pub fn enumerate_tables(n: usize, fill: FillOrder) -> Result<Vec<Vec<u8>>, CatalogError> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(CatalogError::UnsupportedOrder {
            order: n,
            max: MAX_ENUMERATION_ORDER,
        });
    }
    let cells: Vec<(usize, usize)> = match fill {
        FillOrder::RowMajor => (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).collect(),
        FillOrder::ColumnMajor => (0..n).flat_map(|c| (0..n).map(move |r| (r, c))).collect(),
    };
    const UNDEF: u8 = u8::MAX;
    let mut table = vec![UNDEF; n * n];
    let mut out = Vec::new();
    fill_cell(0, &cells, &mut table, n, &mut out);
    Ok(out)
}

fn fill_cell(i: usize, cells: &[(usize, usize)], table: &mut [u8], n: usize, out: &mut Vec<Vec<u8>>) {
    const UNDEF: u8 = u8::MAX;
    if i == cells.len() {
        out.push(table.to_vec());
        return;
    }
    let (r, c) = cells[i];
    for v in 0..n as u8 {
        table[r * n + c] = v;
        if partial_associative(table, n) {
            fill_cell(i + 1, cells, table, n, out);
        }
    }
    table[r * n + c] = UNDEF;
}

/// True when no fully determined triple violates associativity.
fn partial_associative(table: &[u8], n: usize) -> bool {
    const UNDEF: u8 = u8::MAX;
    for a in 0..n {
        for b in 0..n {
            let ab = table[a * n + b];
            if ab == UNDEF {
                continue;
            }
            for c in 0..n {
                let bc = table[b * n + c];
                if bc == UNDEF {
                    continue;
                }
                let left = table[ab as usize * n + c];
                let right = table[a * n + bc as usize];
                if left != UNDEF && right != UNDEF && left != right {
                    return false;
                }
            }
        }
    }
    true
}

/// Lexicographic minimum of the table over all `n!` simultaneous
/// permutations of rows, columns and values.
pub fn canonical_table(n: usize, table: &[u8]) -> Vec<u8> {
    let mut best: Option<Vec<u8>> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |perm| {
        let mut relabeled = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                relabeled[perm[a] * n + perm[b]] = perm[table[a * n + b] as usize] as u8;
            }
        }
        match &best {
            Some(b) if *b <= relabeled => {}
            _ => best = Some(relabeled),
        }
    });
    best.unwrap()
}

fn permute(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

/// Enumerates catalog entries at order `n` (1..=4). Labeled mode yields
/// every associative table; up-to-iso mode yields one entry per canonical
/// table, built from the canonical table itself, with `labeled_index`
/// pointing at its first labeled occurrence.
pub fn enumerate(n: usize, mode: EnumerationMode) -> Result<Vec<CatalogEntry>, CatalogError> {
    let tables = enumerate_tables(n, FillOrder::RowMajor)?;
    let mut entries = Vec::new();
    match mode {
        EnumerationMode::Labeled => {
            for (i, t) in tables.into_iter().enumerate() {
                let canonical = canonical_table(n, &t);
                entries.push(CatalogEntry {
                    semigroup: FiniteSemigroup::from_flat(n, t)
                        .expect("enumerated tables are associative"),
                    canonical_table: canonical,
                    labeled_index: i,
                });
            }
        }
        EnumerationMode::UpToIso => {
            let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
            for (i, t) in tables.into_iter().enumerate() {
                let canonical = canonical_table(n, &t);
                if !seen.contains_key(&canonical) {
                    seen.insert(canonical.clone(), i);
                    entries.push(CatalogEntry {
                        semigroup: FiniteSemigroup::from_flat(n, canonical.clone())
                            .expect("canonical tables are associative"),
                        canonical_table: canonical,
                        labeled_index: i,
                    });
                }
            }
        }
    }
    Ok(entries)
}

/// Independent oracle for [`enumerate`]: scans all `n^(n*n)` tables and
/// keeps the associative ones. Supported for `n <= 3`.
pub fn naive_enumerate(n: usize) -> Result<Vec<CatalogEntry>, CatalogError> {
    if n == 0 || n > MAX_NAIVE_ORDER {
        return Err(CatalogError::UnsupportedOrder {
            order: n,
            max: MAX_NAIVE_ORDER,
        });
    }
    let cells = n * n;
    let total = (n as u64).pow(cells as u32);
    let mut entries = Vec::new();
    let mut table = vec![0u8; cells];
    for code in 0..total {
        let mut c = code;
        for cell in table.iter_mut() {
            *cell = (c % n as u64) as u8;
            c /= n as u64;
        }
        if let Ok(s) = FiniteSemigroup::from_flat(n, table.clone()) {
            let canonical = canonical_table(n, s.flat_table());
            entries.push(CatalogEntry {
                semigroup: s,
                canonical_table: canonical,
                labeled_index: entries.len(),
            });
        }
    }
    Ok(entries)
}

/// Sweep settings. The finite budget applies to criterion-finite entries,
/// which must terminate within it; criterion-infinite entries instead run
/// against `exhaust_elements` and must NOT terminate, with certificate words
/// checked up to `witness_length`.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub finite_budget: Budget,
    pub exhaust_elements: usize,
    pub witness_length: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            finite_budget: Budget::default(),
            exhaust_elements: 10_000,
            witness_length: 8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MachineKind {
    Cayley,
    Dual,
}

impl std::fmt::Display for MachineKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MachineKind::Cayley => "cayley",
            MachineKind::Dual => "dual",
        })
    }
}

/// Closure outcome and certificate for one machine of one catalog entry.
#[derive(Debug, Clone)]
pub struct MachineOutcome {
    pub predicted_finite: bool,
    pub finite_size: Option<usize>,
    pub elements_found: usize,
    pub certificate: Option<Certificate>,
}

impl MachineOutcome {
    pub fn terminated(&self) -> bool {
        self.finite_size.is_some()
    }
}

#[derive(Debug, Clone)]
pub struct Mismatch {
    pub entry_index: usize,
    pub machine: MachineKind,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SweepRecord {
    pub entry_index: usize,
    pub canonical_id: String,
    pub verdict: CriterionVerdict,
    pub cayley: MachineOutcome,
    pub dual: MachineOutcome,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub order: usize,
    pub records: Vec<SweepRecord>,
    pub mismatches: Vec<Mismatch>,
    pub cayley_finite_count: usize,
    pub dual_finite_count: usize,
}

impl SweepReport {
    pub fn class_count(&self) -> usize {
        self.records.len()
    }

    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "order: {}", self.order);
        let _ = writeln!(out, "classes: {}", self.class_count());
        let _ = writeln!(out, "cayley-finite: {}", self.cayley_finite_count);
        let _ = writeln!(out, "dual-finite: {}", self.dual_finite_count);
        let _ = writeln!(out, "mismatches: {}", self.mismatches.len());
        for m in &self.mismatches {
            let _ = writeln!(out, "  entry {} {}: {}", m.entry_index, m.machine, m.detail);
        }
        out
    }

    /// Flat tab-separated table, one row per isomorphism class.
    pub fn render_table(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "canonical_id\th_trivial\tright_zero_pair\tcayley_verdict\tcayley_size\tdual_verdict\tdual_size\tcertificate"
        );
        for r in &self.records {
            let pair = match r.verdict.right_zero_pair {
                Some((e, f)) => format!("{e},{f}"),
                None => "-".to_string(),
            };
            let fmt_outcome = |o: &MachineOutcome| -> (String, String) {
                match o.finite_size {
                    Some(size) => ("finite".to_string(), size.to_string()),
                    None => ("exhausted".to_string(), o.elements_found.to_string()),
                }
            };
            let (cv, cs) = fmt_outcome(&r.cayley);
            let (dv, ds) = fmt_outcome(&r.dual);
            let cert = r
                .dual
                .certificate
                .as_ref()
                .or(r.cayley.certificate.as_ref())
                .map(|c| c.kind_name().to_string())
                .unwrap_or_else(|| "-".to_string());
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.canonical_id, r.verdict.h_trivial, pair, cv, cs, dv, ds, cert
            );
        }
        out
    }
}

/// Runs the criterion-versus-closure sweep over every isomorphism class of
/// order `n`. Entries are processed in parallel (worker count capped by the
/// `CAYLEY_MACHINA_THREADS` environment variable) and merged in entry order,
/// so the report is deterministic.
pub fn sweep(n: usize, config: &SweepConfig) -> Result<SweepReport, SweepError> {
    let entries = enumerate(n, EnumerationMode::UpToIso)?;
    Ok(sweep_entries(n, &entries, config)?)
}

fn sweep_entries(
    order: usize,
    entries: &[CatalogEntry],
    config: &SweepConfig,
) -> Result<SweepReport, ClosureError> {
    let pool = worker_pool();
    let results: Result<Vec<SweepRecord>, ClosureError> = pool.install(|| {
        entries
            .par_iter()
            .enumerate()
            .map(|(i, entry)| sweep_one(i, entry, config))
            .collect()
    });
    let records = results?;

    let mut mismatches = Vec::new();
    for r in &records {
        for (machine, outcome) in [(MachineKind::Cayley, &r.cayley), (MachineKind::Dual, &r.dual)] {
            if outcome.predicted_finite && !outcome.terminated() {
                mismatches.push(Mismatch {
                    entry_index: r.entry_index,
                    machine,
                    detail: format!(
                        "criterion predicts finite but closure exhausted at {} elements",
                        outcome.elements_found
                    ),
                });
            }
            if !outcome.predicted_finite {
                if outcome.terminated() {
                    mismatches.push(Mismatch {
                        entry_index: r.entry_index,
                        machine,
                        detail: format!(
                            "criterion predicts infinite but closure terminated with {} elements",
                            outcome.elements_found
                        ),
                    });
                }
                match &outcome.certificate {
                    None => mismatches.push(Mismatch {
                        entry_index: r.entry_index,
                        machine,
                        detail: "criterion predicts infinite but no certificate produced".into(),
                    }),
                    Some(c) if !c.all_distinct => mismatches.push(Mismatch {
                        entry_index: r.entry_index,
                        machine,
                        detail: format!(
                            "certificate witness words collide within length {}",
                            c.witness_words_checked
                        ),
                    }),
                    Some(_) => {}
                }
            }
        }
    }

    let cayley_finite_count = records.iter().filter(|r| r.verdict.cayley_finite).count();
    let dual_finite_count = records.iter().filter(|r| r.verdict.dual_finite).count();
    Ok(SweepReport {
        order,
        records,
        mismatches,
        cayley_finite_count,
        dual_finite_count,
    })
}

fn sweep_one(
    entry_index: usize,
    entry: &CatalogEntry,
    config: &SweepConfig,
) -> Result<SweepRecord, ClosureError> {
    let s = &entry.semigroup;
    let verdict = criteria(s)?;
    let run = |dual: bool| -> Result<MachineOutcome, ClosureError> {
        let predicted_finite = if dual {
            verdict.dual_finite
        } else {
            verdict.cayley_finite
        };
        let machine = if dual { dual_cayley(s) } else { cayley(s) };
        let budget = if predicted_finite {
            config.finite_budget.clone()
        } else {
            config
                .finite_budget
                .clone()
                .with_max_elements(config.exhaust_elements)
        };
        let report: ClosureReport = closure(&generators(&machine), &budget);
        let cert = if predicted_finite {
            None
        } else {
            certificate(s, dual, config.witness_length)?
        };
        Ok(MachineOutcome {
            predicted_finite,
            finite_size: report.size(),
            elements_found: report.elements_found(),
            certificate: cert,
        })
    };
    let cayley_outcome = run(false)?;
    let dual_outcome = run(true)?;
    Ok(SweepRecord {
        entry_index,
        canonical_id: entry.canonical_id(),
        verdict,
        cayley: cayley_outcome,
        dual: dual_outcome,
    })
}

/// Worker pool honoring the `CAYLEY_MACHINA_THREADS` cap.
fn worker_pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("CAYLEY_MACHINA_THREADS") {
        if let Ok(k) = v.parse::<usize>() {
            if k >= 1 {
                builder = builder.num_threads(k);
            }
        }
    }
    builder.build().expect("worker pool")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_counts_small_orders() {
        assert_eq!(enumerate_tables(1, FillOrder::RowMajor).unwrap().len(), 1);
        assert_eq!(enumerate_tables(2, FillOrder::RowMajor).unwrap().len(), 8);
        assert_eq!(enumerate_tables(3, FillOrder::RowMajor).unwrap().len(), 113);
    }

    #[test]
    fn iso_counts_small_orders() {
        assert_eq!(enumerate(1, EnumerationMode::UpToIso).unwrap().len(), 1);
        assert_eq!(enumerate(2, EnumerationMode::UpToIso).unwrap().len(), 5);
        assert_eq!(enumerate(3, EnumerationMode::UpToIso).unwrap().len(), 24);
    }

    #[test]
    fn enumerate_matches_naive_oracle() {
        for n in 1..=3 {
            let mut fast: Vec<Vec<u8>> = enumerate(n, EnumerationMode::Labeled)
                .unwrap()
                .into_iter()
                .map(|e| e.semigroup.flat_table().to_vec())
                .collect();
            let mut naive: Vec<Vec<u8>> = naive_enumerate(n)
                .unwrap()
                .into_iter()
                .map(|e| e.semigroup.flat_table().to_vec())
                .collect();
            fast.sort();
            naive.sort();
            assert_eq!(fast, naive, "order {n}");
        }
    }

    #[test]
    fn unsupported_orders_rejected() {
        assert!(enumerate(5, EnumerationMode::Labeled).is_err());
        assert!(enumerate(0, EnumerationMode::Labeled).is_err());
        assert!(naive_enumerate(4).is_err());
    }

    #[test]
    fn canonical_table_is_permutation_invariant() {
        let entries = enumerate(3, EnumerationMode::Labeled).unwrap();
        // spot-check: permuting any table leaves the canonical form unchanged
        let t = entries[57].semigroup.flat_table();
        let canon = canonical_table(3, t);
        let perm = [2usize, 0, 1];
        let mut permuted = vec![0u8; 9];
        for a in 0..3 {
            for b in 0..3 {
                permuted[perm[a] * 3 + perm[b]] = perm[t[a * 3 + b] as usize] as u8;
            }
        }
        assert_eq!(canonical_table(3, &permuted), canon);
    }

    #[test]
    fn sweep_order_two() {
        let report = sweep(2, &SweepConfig::default()).unwrap();
        assert_eq!(report.class_count(), 5);
        assert_eq!(report.cayley_finite_count, 4);
        assert_eq!(report.dual_finite_count, 3);
        assert!(report.mismatches.is_empty());
    }

    #[test]
    fn sweep_order_one() {
        let report = sweep(1, &SweepConfig::default()).unwrap();
        assert_eq!(report.class_count(), 1);
        let r = &report.records[0];
        assert_eq!(r.cayley.finite_size, Some(1));
        assert_eq!(r.dual.finite_size, Some(1));
        assert!(report.mismatches.is_empty());
    }
}
