//! Closure of an automaton semigroup by canonical-form BFS, freeness checks,
//! infiniteness certificates, and the wreath-recursion self-check.
//!
//! Finiteness is certified by termination of the BFS, which is sound and
//! complete for finitely generated semigroups. Infiniteness is never
//! certified by enumeration alone: budget exhaustion is evidence, with the
//! criterion from the Green machinery as ground truth and a [`Certificate`]
//! as corroboration.

use std::collections::HashMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cascade;
use crate::green::{self, CriteriaError};
use crate::mealy::{
    canonicalize, cayley, compose_bounded, dual_cayley, equal, generator, step, MealyError,
    PointedTransducer,
};
use crate::semigroup::FiniteSemigroup;

/// Resource limits for closure-style enumerations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Maximum distinct elements discovered before giving up.
    pub max_elements: usize,
    /// Cap on raw product states per composition.
    pub max_machine_states: usize,
    /// Wall-clock cutoff. Element and machine-state budgets are the
    /// deterministic limits; this one is a safety valve.
    pub max_millis: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_elements: 100_000,
            max_machine_states: 1_000_000,
            max_millis: 60_000,
        }
    }
}

impl Budget {
    pub fn with_max_elements(mut self, max_elements: usize) -> Self {
        self.max_elements = max_elements;
        self
    }
}

/// Largest finite closure for which the multiplication table is materialized
/// in the report.
pub const MAX_TABLE_SIZE: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitingResource {
    Elements,
    MachineStates,
    TimeMillis,
}

impl std::fmt::Display for LimitingResource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LimitingResource::Elements => "elements",
            LimitingResource::MachineStates => "machine-states",
            LimitingResource::TimeMillis => "time",
        })
    }
}

#[derive(Debug, Clone)]
pub enum ClosureVerdict {
    /// The BFS exhausted: every product of an element with a generator was
    /// already known. `elements` lists canonical forms in discovery order;
    /// `table` is the closure multiplication table by element index,
    /// materialized when the size is at most [`MAX_TABLE_SIZE`].
    Finite {
        elements: Vec<PointedTransducer>,
        table: Option<Vec<u32>>,
    },
    /// A budget tripped first.
    Exhausted {
        elements_found: usize,
        limit: LimitingResource,
    },
}

#[derive(Debug, Clone)]
pub struct ClosureReport {
    pub verdict: ClosureVerdict,
    /// Number of generators passed in (before deduplication).
    pub generator_count: usize,
    /// Distinct elements first discovered at each word length, starting at
    /// length 1.
    pub growth_by_length: Vec<usize>,
}

impl ClosureReport {
    pub fn is_finite(&self) -> bool {
        matches!(self.verdict, ClosureVerdict::Finite { .. })
    }

    pub fn size(&self) -> Option<usize> {
        match &self.verdict {
            ClosureVerdict::Finite { elements, .. } => Some(elements.len()),
            ClosureVerdict::Exhausted { .. } => None,
        }
    }

    pub fn elements_found(&self) -> usize {
        match &self.verdict {
            ClosureVerdict::Finite { elements, .. } => elements.len(),
            ClosureVerdict::Exhausted { elements_found, .. } => *elements_found,
        }
    }

    pub fn table(&self) -> Option<&[u32]> {
        match &self.verdict {
            ClosureVerdict::Finite { table, .. } => table.as_deref(),
            ClosureVerdict::Exhausted { .. } => None,
        }
    }

    /// The finite closure as a semigroup, when the table was materialized.
    pub fn as_semigroup(&self) -> Option<FiniteSemigroup> {
        let table = self.table()?;
        let n = self.size()?;
        let flat: Vec<u8> = table.iter().map(|&v| v as u8).collect();
        FiniteSemigroup::from_flat(n, flat).ok()
    }

    /// Structured text rendering: verdict, size or elements found, growth per
    /// word length, and the multiplication table in the table file format.
    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "generators: {}", self.generator_count);
        match &self.verdict {
            ClosureVerdict::Finite { elements, table } => {
                let _ = writeln!(out, "verdict: finite");
                let _ = writeln!(out, "size: {}", elements.len());
                let _ = writeln!(out, "growth-by-length: {}", growth_string(&self.growth_by_length));
                if let Some(t) = table {
                    let n = elements.len();
                    let _ = writeln!(out, "table:");
                    let _ = writeln!(out, "{n}");
                    for row in 0..n {
                        let line: Vec<String> = (0..n)
                            .map(|col| t[row * n + col].to_string())
                            .collect();
                        let _ = writeln!(out, "{}", line.join(" "));
                    }
                }
            }
            ClosureVerdict::Exhausted {
                elements_found,
                limit,
            } => {
                let _ = writeln!(out, "verdict: exhausted");
                let _ = writeln!(out, "elements-found: {elements_found}");
                let _ = writeln!(out, "limit: {limit}");
                let _ = writeln!(out, "growth-by-length: {}", growth_string(&self.growth_by_length));
            }
        }
        out
    }
}

fn growth_string(growth: &[usize]) -> String {
    growth
        .iter()
        .enumerate()
        .map(|(i, c)| format!("{}:{}", i + 1, c))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Error)]
pub enum ClosureError {
    #[error(transparent)]
    Machine(#[from] MealyError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
    #[error("report does not carry a finite closure")]
    NotFinite,
    #[error("closure size {size} exceeds the isomorphism-search limit {max}")]
    TooLarge { size: usize, max: usize },
    #[error("word count {required} exceeds the element budget {max}")]
    ElementBudget { required: usize, max: usize },
    #[error("an equality check exceeded its node budget")]
    EqualityBudget,
    #[error("wreath recursion violated: {0}")]
    WreathStep(WreathStepFailure),
}

/// Enumerates the automaton semigroup generated by the given transducers:
/// BFS from the deduplicated generators, multiplying frontier elements on
/// the right by each generator. Discovery order is
/// generator-index-lexicographic, so reports are deterministic for fixed
/// inputs and budget.
///
/// Elements are carried as words over the generators and deduplicated
/// exactly: probe-output signatures narrow the comparison down to a handful
/// of candidates, and a bisimulation over cascade states decides equality.
/// This keeps the enumeration linear in practice even when the minimized
/// machines of individual elements grow exponentially with word length, as
/// they do for group Cayley machines. A bisimulation that would explore
/// more product states than `max_machine_states` counts as machine-state
/// exhaustion.
///
/// Budget exhaustion is a verdict, not an error.
///
/// # Panics
///
/// Panics if `generators` is empty or alphabets differ.
pub fn closure(generators: &[PointedTransducer], budget: &Budget) -> ClosureReport {
    assert!(!generators.is_empty(), "generator list must be nonempty");
    let alphabet = generators[0].alphabet_size();
    assert!(
        generators.iter().all(|g| g.alphabet_size() == alphabet),
        "generators must share an alphabet"
    );
    let start = Instant::now();
    let streams = cascade::stream_count(alphabet);

    // Canonicalize and deduplicate the generating set, keeping first
    // occurrences in order.
    let mut gens: Vec<PointedTransducer> = Vec::new();
    for g in generators {
        let c = canonicalize(g);
        if !gens.iter().any(|known| known.machine() == c.machine()) {
            gens.push(c);
        }
    }

    // Per-element data, indexed by discovery order.
    let mut words: Vec<Vec<u16>> = Vec::new();
    let mut parent: Vec<u32> = Vec::new();
    let mut last_gen: Vec<u16> = Vec::new();
    let mut lengths: Vec<u32> = Vec::new();
    // index[len - 1]: signature at horizon len + 1 -> elements of that length
    let mut index: Vec<HashMap<Vec<u8>, Vec<u32>>> = Vec::new();
    let mut rightmul: Vec<u32> = Vec::new();
    let mut growth: Vec<usize> = Vec::new();
    let mut scratch: Vec<u32> = Vec::new();

    for (gi, _) in gens.iter().enumerate() {
        let word = vec![gi as u16];
        let sig = cascade::probe_outputs(&gens, &word, 2, &mut scratch);
        if index.is_empty() {
            index.push(HashMap::new());
        }
        // seed deduplication already happened on canonical machines
        index[0].entry(sig).or_default().push(words.len() as u32);
        words.push(word);
        parent.push(u32::MAX);
        last_gen.push(gi as u16);
        lengths.push(1);
    }
    growth.push(words.len());

    let exhausted = |found: usize, growth: Vec<usize>, limit| ClosureReport {
        verdict: ClosureVerdict::Exhausted {
            elements_found: found,
            limit,
        },
        generator_count: generators.len(),
        growth_by_length: growth,
    };

    if words.len() > budget.max_elements {
        return exhausted(words.len(), growth, LimitingResource::Elements);
    }

    let mut head = 0usize;
    while head < words.len() {
        if start.elapsed().as_millis() as u64 > budget.max_millis {
            return exhausted(words.len(), growth, LimitingResource::TimeMillis);
        }
        let len = lengths[head] as usize + 1;
        for gi in 0..gens.len() {
            let mut word = words[head].clone();
            word.push(gi as u16);
            let outs = cascade::probe_outputs(&gens, &word, len + 1, &mut scratch);

            // Match against stored elements, shortest first. Distinct
            // signatures at an element's own horizon imply distinct
            // elements, so only bucket members need the exact check.
            let mut found: Option<u32> = None;
            'search: for j in 1..=len.min(index.len()) {
                let key = cascade::truncate_outputs(&outs, streams, len + 1, j + 1);
                if let Some(ids) = index[j - 1].get(&key) {
                    for &id in ids {
                        match cascade::cascades_equal(
                            &gens,
                            &word,
                            &words[id as usize],
                            budget.max_machine_states,
                        ) {
                            Some(true) => {
                                found = Some(id);
                                break 'search;
                            }
                            Some(false) => {}
                            None => {
                                return exhausted(
                                    words.len(),
                                    growth,
                                    LimitingResource::MachineStates,
                                );
                            }
                        }
                    }
                }
            }
            if let Some(id) = found {
                rightmul.push(id);
            } else {
                if words.len() >= budget.max_elements {
                    return exhausted(words.len(), growth, LimitingResource::Elements);
                }
                let id = words.len() as u32;
                if index.len() < len {
                    index.push(HashMap::new());
                }
                index[len - 1].entry(outs).or_default().push(id);
                words.push(word);
                parent.push(head as u32);
                last_gen.push(gi as u16);
                lengths.push(len as u32);
                if growth.len() < len {
                    growth.push(0);
                }
                growth[len - 1] += 1;
                rightmul.push(id);
            }
        }
        head += 1;
    }

    // BFS exhausted: the closure is finite and rightmul is total. Element
    // machines are built along the BFS tree.
    let size = words.len();
    let g = gens.len();
    let mut elements: Vec<PointedTransducer> = Vec::with_capacity(size);
    for i in 0..size {
        let machine = if parent[i] == u32::MAX {
            gens[last_gen[i] as usize].clone()
        } else {
            match compose_bounded(
                &elements[parent[i] as usize],
                &gens[last_gen[i] as usize],
                budget.max_machine_states,
            ) {
                Ok(m) => m,
                Err(_) => {
                    return exhausted(size, growth, LimitingResource::MachineStates);
                }
            }
        };
        elements.push(machine);
    }
    let table = (size <= MAX_TABLE_SIZE).then(|| {
        let mut table = vec![0u32; size * size];
        for i in 0..size {
            for j in 0..size {
                table[i * size + j] = if parent[j] == u32::MAX {
                    rightmul[i * g + last_gen[j] as usize]
                } else {
                    let prefix = table[i * size + parent[j] as usize] as usize;
                    rightmul[prefix * g + last_gen[j] as usize]
                };
            }
        }
        table
    });
    ClosureReport {
        verdict: ClosureVerdict::Finite { elements, table },
        generator_count: generators.len(),
        growth_by_length: growth,
    }
}

/// Per-length distinct element counts for words over a generator list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeCheckReport {
    pub length_bound: usize,
    pub generator_count: usize,
    /// `distinct_counts[i]` is the number of distinct elements among all
    /// words of length `i + 1`.
    pub distinct_counts: Vec<usize>,
    /// True iff every length `i <= length_bound` yields exactly
    /// `generator_count^i` distinct elements.
    pub is_free_up_to_l: bool,
}

impl FreeCheckReport {
    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "generators: {}", self.generator_count);
        let _ = writeln!(out, "length-bound: {}", self.length_bound);
        let _ = writeln!(out, "distinct-counts: {}", growth_string(&self.distinct_counts));
        let _ = writeln!(
            out,
            "free-up-to-length: {}",
            if self.is_free_up_to_l { "yes" } else { "no" }
        );
        out
    }
}

/// Counts distinct elements among all `g^1 + ... + g^l` products of the
/// generators. Requires `g^l` within the element budget.
pub fn free_check(
    generators: &[PointedTransducer],
    l: usize,
    budget: &Budget,
) -> Result<FreeCheckReport, ClosureError> {
    assert!(l >= 1, "length bound must be at least 1");
    assert!(!generators.is_empty(), "generator list must be nonempty");
    let g = generators.len();
    let words_at_l = g.checked_pow(l as u32).unwrap_or(usize::MAX);
    if words_at_l > budget.max_elements {
        return Err(ClosureError::ElementBudget {
            required: words_at_l,
            max: budget.max_elements,
        });
    }
    let canon: Vec<PointedTransducer> = generators.iter().map(canonicalize).collect();
    let counts = cascade::distinct_counts(&canon, l, cascade::EQUALITY_NODE_CAP)
        .map_err(|cascade::CountError::EqualityBudget| ClosureError::EqualityBudget)?
        .counts;
    let is_free = counts
        .iter()
        .enumerate()
        .all(|(i, &c)| Some(c) == g.checked_pow(i as u32 + 1));
    Ok(FreeCheckReport {
        length_bound: l,
        generator_count: g,
        distinct_counts: counts,
        is_free_up_to_l: is_free,
    })
}

/// Why a criterion-infinite automaton semigroup is infinite, with a bounded
/// word-distinctness check over witness states as empirical corroboration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateKind {
    /// Two distinct R-related idempotents: a two-element right zero
    /// subsemigroup, whose dual states generate freely.
    FreeRightZeroPair { e: usize, f: usize },
    /// A non-singleton H-class together with its right stabilizer
    /// `T = {t : Ht ⊆ H}`.
    NontrivialHClass {
        h_class: Vec<usize>,
        stabilizer: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    /// States whose words were checked pairwise distinct. For a right zero
    /// pair these are the two idempotents; for a non-trivial H-class they
    /// are a cyclic subgroup of a group H-class, whose restriction argument
    /// guarantees freeness (the full stabilizer may have colliding words).
    pub witnesses: Vec<usize>,
    /// Words up to this length were compared.
    pub witness_words_checked: usize,
    pub distinct_counts: Vec<usize>,
    /// All products of witness generators up to the length bound are
    /// pairwise distinct under canonical equality.
    pub all_distinct: bool,
}

impl Certificate {
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            CertificateKind::FreeRightZeroPair { .. } => "free-right-zero-pair",
            CertificateKind::NontrivialHClass { .. } => "nontrivial-h-class",
        }
    }
}

/// Builds an infiniteness certificate for the Cayley (`dual = false`) or
/// dual Cayley (`dual = true`) machine of `s`, or `None` when the criterion
/// predicts a finite closure. For the dual machine a right zero pair is
/// preferred when present.
pub fn certificate(
    s: &FiniteSemigroup,
    dual: bool,
    l: usize,
) -> Result<Option<Certificate>, ClosureError> {
    let g = green::green(s);
    let verdict = green::criteria_with(s, &g)?;
    let finite = if dual {
        verdict.dual_finite
    } else {
        verdict.cayley_finite
    };
    if finite {
        return Ok(None);
    }
    let machine = if dual { dual_cayley(s) } else { cayley(s) };

    let (kind, witnesses) = if dual && verdict.right_zero_pair.is_some() {
        let (e, f) = verdict.right_zero_pair.unwrap();
        (CertificateKind::FreeRightZeroPair { e, f }, vec![e, f])
    } else {
        // Not H-trivial: some group H-class is non-trivial. Its smallest
        // non-identity element generates a cyclic subgroup whose states act
        // freely on sequences over the subgroup.
        let (h_class, witnesses) = nontrivial_group_h_class(s, &g)
            .expect("a non-H-trivial finite semigroup has a non-trivial group H-class");
        let stabilizer = (0..s.order())
            .filter(|&t| h_class.iter().all(|&h| h_class.contains(&s.product(h, t))))
            .collect();
        (
            CertificateKind::NontrivialHClass { h_class, stabilizer },
            witnesses,
        )
    };

    let gens: Vec<PointedTransducer> = witnesses.iter().map(|&w| generator(&machine, w)).collect();
    let report = free_check(
        &gens,
        l,
        &Budget::default().with_max_elements(
            witnesses
                .len()
                .checked_pow(l as u32)
                .unwrap_or(usize::MAX)
                .min(10_000_000),
        ),
    )?;
    Ok(Some(Certificate {
        kind,
        witnesses,
        witness_words_checked: l,
        all_distinct: report.is_free_up_to_l,
        distinct_counts: report.distinct_counts,
    }))
}

/// First idempotent whose H-class is non-singleton, returning the class and
/// the cyclic subgroup generated by its smallest non-identity member.
fn nontrivial_group_h_class(
    s: &FiniteSemigroup,
    g: &green::GreenStructure,
) -> Option<(Vec<usize>, Vec<usize>)> {
    for e in s.elements() {
        if s.product(e, e) != e {
            continue;
        }
        let h_class = g.h_classes()[g.h_class_of(e)].clone();
        if h_class.len() < 2 {
            continue;
        }
        let a = *h_class.iter().find(|&&x| x != e).unwrap();
        let mut cyclic = vec![a];
        let mut cur = s.product(a, a);
        while !cyclic.contains(&cur) {
            cyclic.push(cur);
            cur = s.product(cur, a);
        }
        cyclic.sort_unstable();
        return Some((h_class, cyclic));
    }
    None
}

/// Multiplication-table isomorphism of two finite closures by backtracking
/// permutation search. Limited to sizes at most 64.
pub fn closure_isomorphic(a: &ClosureReport, b: &ClosureReport) -> Result<bool, ClosureError> {
    const MAX: usize = 64;
    let (ta, tb) = match (a.table(), b.table()) {
        (Some(ta), Some(tb)) => (ta, tb),
        _ => return Err(ClosureError::NotFinite),
    };
    let (na, nb) = (a.size().unwrap(), b.size().unwrap());
    if na > MAX || nb > MAX {
        return Err(ClosureError::TooLarge {
            size: na.max(nb),
            max: MAX,
        });
    }
    if na != nb {
        return Ok(false);
    }
    let n = na;
    // Cheap invariant: multisets of element profiles must match.
    let profile = |t: &[u32], x: usize| -> (bool, usize, usize) {
        let idem = t[x * n + x] as usize == x;
        let row: std::collections::HashSet<u32> = (0..n).map(|y| t[x * n + y]).collect();
        let col: std::collections::HashSet<u32> = (0..n).map(|y| t[y * n + x]).collect();
        (idem, row.len(), col.len())
    };
    let mut pa: Vec<_> = (0..n).map(|x| profile(ta, x)).collect();
    let mut pb: Vec<_> = (0..n).map(|x| profile(tb, x)).collect();
    let profiles_a = pa.clone();
    let profiles_b = pb.clone();
    pa.sort_unstable();
    pb.sort_unstable();
    if pa != pb {
        return Ok(false);
    }

    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        k: usize,
        n: usize,
        ta: &[u32],
        tb: &[u32],
        profiles_a: &[(bool, usize, usize)],
        profiles_b: &[(bool, usize, usize)],
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == n {
            return true;
        }
        'cand: for v in 0..n {
            if used[v] || profiles_a[k] != profiles_b[v] {
                continue;
            }
            image[k] = v;
            used[v] = true;
            for i in 0..=k {
                for j in 0..=k {
                    let p = ta[i * n + j] as usize;
                    if p <= k {
                        let q = tb[image[i] * n + image[j]] as usize;
                        if image[p] != q {
                            image[k] = usize::MAX;
                            used[v] = false;
                            continue 'cand;
                        }
                    }
                }
            }
            if extend(k + 1, n, ta, tb, profiles_a, profiles_b, image, used) {
                return true;
            }
            image[k] = usize::MAX;
            used[v] = false;
        }
        false
    }
    Ok(extend(
        0,
        n,
        ta,
        tb,
        &profiles_a,
        &profiles_b,
        &mut image,
        &mut used,
    ))
}

/// The first sampled tuple violating the wreath recursion, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathStepFailure {
    pub word: Vec<usize>,
    pub symbol: usize,
    pub expected_output: usize,
    pub actual_output: usize,
    pub states_agree: bool,
}

impl std::fmt::Display for WreathStepFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "word {:?} on symbol {}: output {} (expected {}), successor states {}",
            self.word,
            self.symbol,
            self.actual_output,
            self.expected_output,
            if self.states_agree { "agree" } else { "differ" }
        )
    }
}

/// Samples random words `a_1 ... a_k` (k <= 5) and symbols `x` in the dual
/// machine of `s` and checks the wreath recursion: stepping the composed
/// word at `x` must emit `x·a_1···a_k` and land on the composite of the
/// states `a_1·x`, `a_2·x·a_1`, ..., `a_k·x·a_1···a_{k-1}`. Deterministic
/// for a fixed seed; reports the first failing tuple.
pub fn verify_wreath_step(
    s: &FiniteSemigroup,
    trials: usize,
    seed: u64,
) -> Result<(), ClosureError> {
    assert!(trials >= 1, "at least one trial required");
    let machine = dual_cayley(s);
    let gens: Vec<PointedTransducer> = (0..s.order()).map(|q| generator(&machine, q)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = s.order();
    for _ in 0..trials {
        let k = rng.random_range(1..=5usize);
        let word: Vec<usize> = (0..k).map(|_| rng.random_range(0..n)).collect();
        let x = rng.random_range(0..n);

        let mut composed = gens[word[0]].clone();
        for &a in &word[1..] {
            composed = compose_bounded(&composed, &gens[a], 1 << 24)?;
        }
        let (out, next) = step(&composed, x)?;

        let expected_output = s.product(x, s.product_of(&word));
        // Successor factor i is the state a_i · x · a_1 ··· a_{i-1}.
        let mut expected = None::<PointedTransducer>;
        for (i, &a) in word.iter().enumerate() {
            let mut e = s.product(a, x);
            for &b in &word[..i] {
                e = s.product(e, b);
            }
            let factor = gens[e].clone();
            expected = Some(match expected {
                None => factor,
                Some(acc) => compose_bounded(&acc, &factor, 1 << 24)?,
            });
        }
        let expected = expected.unwrap();
        let states_agree = equal(&next, &expected);
        if out != expected_output || !states_agree {
            return Err(ClosureError::WreathStep(WreathStepFailure {
                word,
                symbol: x,
                expected_output,
                actual_output: out,
                states_agree,
            }));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mealy::generators;
    use crate::semigroup::named;

    #[test]
    fn dual_chain_closure_is_the_chain() {
        let s = named("chain:2").unwrap();
        let report = closure(&generators(&dual_cayley(&s)), &Budget::default());
        assert_eq!(report.size(), Some(2));
        // the closure multiplication table is the chain again
        assert_eq!(report.as_semigroup().unwrap().flat_table(), &[0, 0, 0, 1]);
        assert_eq!(report.growth_by_length, vec![2]);
    }

    #[test]
    fn dual_leftzero_closure_is_trivial() {
        let s = named("leftzero:3").unwrap();
        let report = closure(&generators(&dual_cayley(&s)), &Budget::default());
        assert_eq!(report.size(), Some(1));
    }

    #[test]
    fn dual_cyclic_group_exhausts_budget() {
        let s = named("cyclic:2").unwrap();
        let report = closure(
            &generators(&dual_cayley(&s)),
            &Budget::default().with_max_elements(500),
        );
        match report.verdict {
            ClosureVerdict::Exhausted {
                elements_found,
                limit,
            } => {
                assert_eq!(elements_found, 500);
                assert_eq!(limit, LimitingResource::Elements);
            }
            _ => panic!("expected exhaustion"),
        }
        // growth doubles per level until the budget cuts in
        assert!(report.growth_by_length.starts_with(&[2, 4, 8, 16, 32]));
        assert!(report.growth_by_length.iter().all(|&c| c > 0));
    }

    #[test]
    fn cayley_rightzero_closure_is_identity_only() {
        let s = named("rightzero:2").unwrap();
        let report = closure(&generators(&cayley(&s)), &Budget::default());
        assert_eq!(report.size(), Some(1));
        let elems = match &report.verdict {
            ClosureVerdict::Finite { elements, .. } => elements,
            _ => unreachable!(),
        };
        assert!(equal(&elems[0], &PointedTransducer::identity(2)));
    }

    #[test]
    fn finite_closure_is_closed_under_generators() {
        let s = named("chain:3").unwrap();
        let gens = generators(&dual_cayley(&s));
        let report = closure(&gens, &Budget::default());
        let elements = match &report.verdict {
            ClosureVerdict::Finite { elements, .. } => elements.clone(),
            _ => panic!("expected finite"),
        };
        for e in &elements {
            for g in &gens {
                let p = crate::mealy::compose(e, g).unwrap();
                assert!(elements.iter().any(|x| equal(x, &p)));
            }
        }
    }

    #[test]
    fn free_check_examples() {
        let s = named("cyclic:2").unwrap();
        let r = free_check(&generators(&cayley(&s)), 5, &Budget::default()).unwrap();
        assert_eq!(r.distinct_counts, vec![2, 4, 8, 16, 32]);
        assert!(r.is_free_up_to_l);

        let s = named("rightzero:2").unwrap();
        let r = free_check(&generators(&dual_cayley(&s)), 5, &Budget::default()).unwrap();
        assert_eq!(r.distinct_counts, vec![2, 4, 8, 16, 32]);
        assert!(r.is_free_up_to_l);

        let s = named("leftzero:2").unwrap();
        let r = free_check(&generators(&cayley(&s)), 3, &Budget::default()).unwrap();
        assert_eq!(r.distinct_counts, vec![2, 2, 2]);
        assert!(!r.is_free_up_to_l);
    }

    #[test]
    fn free_check_element_budget() {
        let s = named("cyclic:2").unwrap();
        let err = free_check(
            &generators(&cayley(&s)),
            20,
            &Budget::default().with_max_elements(1000),
        )
        .unwrap_err();
        assert!(matches!(err, ClosureError::ElementBudget { .. }));
    }

    #[test]
    fn certificate_rightzero_pair() {
        let s = named("rightzero:2").unwrap();
        let c = certificate(&s, true, 6).unwrap().unwrap();
        assert_eq!(c.kind, CertificateKind::FreeRightZeroPair { e: 0, f: 1 });
        assert_eq!(c.witnesses, vec![0, 1]);
        assert!(c.all_distinct);
        assert_eq!(c.distinct_counts, vec![2, 4, 8, 16, 32, 64]);
    }

    #[test]
    fn certificate_group_h_class() {
        let s = named("cyclic:2").unwrap();
        let c = certificate(&s, false, 6).unwrap().unwrap();
        match &c.kind {
            CertificateKind::NontrivialHClass { h_class, .. } => {
                assert_eq!(h_class, &vec![0, 1]);
            }
            _ => panic!("expected H-class certificate"),
        }
        assert!(c.all_distinct);
    }

    #[test]
    fn certificate_none_when_finite() {
        let s = named("chain:2").unwrap();
        assert_eq!(certificate(&s, true, 6).unwrap(), None);
    }

    #[test]
    fn closure_isomorphism_examples() {
        let budget = Budget::default();
        let chain = named("chain:2").unwrap();
        let lz = named("leftzero:2").unwrap();
        let trivial = named("trivial").unwrap();
        let product = crate::semigroup::direct_product(&chain, &lz).unwrap();

        let c_chain = closure(&generators(&dual_cayley(&chain)), &budget);
        let c_prod = closure(&generators(&dual_cayley(&product)), &budget);
        let c_lz = closure(&generators(&dual_cayley(&lz)), &budget);
        let c_triv = closure(&generators(&dual_cayley(&trivial)), &budget);

        assert!(closure_isomorphic(&c_chain, &c_prod).unwrap());
        assert!(closure_isomorphic(&c_lz, &c_triv).unwrap());
        assert!(!closure_isomorphic(&c_chain, &c_lz).unwrap());
    }

    #[test]
    fn closure_isomorphic_rejects_exhausted_reports() {
        let s = named("cyclic:2").unwrap();
        let fin = closure(&generators(&dual_cayley(&named("chain:2").unwrap())), &Budget::default());
        let exh = closure(
            &generators(&dual_cayley(&s)),
            &Budget::default().with_max_elements(10),
        );
        assert!(matches!(
            closure_isomorphic(&fin, &exh),
            Err(ClosureError::NotFinite)
        ));
    }

    #[test]
    fn wreath_step_on_named_families() {
        for spec in ["chain:2", "rightzero:3", "cyclic:3", "leftzero:2", "null:2"] {
            verify_wreath_step(&named(spec).unwrap(), 100, 7).unwrap();
        }
    }

    #[test]
    fn single_letter_step_matches_definition() {
        // k = 1 case of the recursion: stepping the generator of a at x
        // gives output x·a and successor state a·x.
        for spec in ["chain:2", "cyclic:3", "rightzero:2"] {
            let s = named(spec).unwrap();
            let m = dual_cayley(&s);
            for a in s.elements() {
                for x in s.elements() {
                    let (out, next) = step(&generator(&m, a), x).unwrap();
                    assert_eq!(out, s.product(x, a));
                    assert!(equal(&next, &generator(&m, s.product(a, x))));
                }
            }
        }
    }
}
