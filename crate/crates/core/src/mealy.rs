//! Complete deterministic Mealy transducers, the Cayley and dual Cayley
//! machines of a finite semigroup, and canonical minimized pointed forms.
//!
//! A pointed transducer represents one transformation of infinite sequences
//! over the alphabet. The canonical form (reachable, Mealy-reduced, states
//! relabeled in breadth-first order from the initial state) is unique per
//! transformation, so structural equality decides functional equality.
//!
//! Composition follows the cascade convention: in `compose(u, v)` the left
//! factor `u` reads the input and feeds its output to `v`. In a product of
//! generators the leftmost factor therefore acts first.

use thiserror::Error;

use crate::semigroup::FiniteSemigroup;

/// Default cap on raw product states built by [`compose`] before
/// minimization.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MealyError {
    #[error("alphabet sizes differ: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("raw product exceeded the state budget of {cap}")]
    StateBudgetExceeded { cap: usize },
    #[error("symbol {symbol} out of range for alphabet of size {alphabet}")]
    SymbolOutOfRange { symbol: usize, alphabet: usize },
    #[error("transition table has {got} entries, expected {expected}")]
    BadTableSize { expected: usize, got: usize },
    #[error("state {state} out of range for {state_count} states")]
    StateOutOfRange { state: usize, state_count: usize },
}

/// A complete deterministic Mealy machine: total transition and output
/// functions on `state_count x alphabet_size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MealyMachine {
    state_count: usize,
    alphabet_size: usize,
    delta: Vec<u32>,
    lambda: Vec<u32>,
}

impl MealyMachine {
    pub fn new(
        state_count: usize,
        alphabet_size: usize,
        delta: Vec<u32>,
        lambda: Vec<u32>,
    ) -> Result<Self, MealyError> {
        let expected = state_count * alphabet_size;
        if delta.len() != expected {
            return Err(MealyError::BadTableSize {
                expected,
                got: delta.len(),
            });
        }
        if lambda.len() != expected {
            return Err(MealyError::BadTableSize {
                expected,
                got: lambda.len(),
            });
        }
        if let Some(&q) = delta.iter().find(|&&q| q as usize >= state_count) {
            return Err(MealyError::StateOutOfRange {
                state: q as usize,
                state_count,
            });
        }
        if let Some(&y) = lambda.iter().find(|&&y| y as usize >= alphabet_size) {
            return Err(MealyError::SymbolOutOfRange {
                symbol: y as usize,
                alphabet: alphabet_size,
            });
        }
        Ok(MealyMachine {
            state_count,
            alphabet_size,
            delta,
            lambda,
        })
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    #[inline]
    pub fn delta(&self, q: usize, x: usize) -> usize {
        self.delta[q * self.alphabet_size + x] as usize
    }

    #[inline]
    pub fn lambda(&self, q: usize, x: usize) -> usize {
        self.lambda[q * self.alphabet_size + x] as usize
    }
}

/// The Cayley machine of `s`: in state `q` reading `x` it outputs `q·x` and
/// moves to `q·x`.
pub fn cayley(s: &FiniteSemigroup) -> MealyMachine {
    let n = s.order();
    let table: Vec<u32> = (0..n)
        .flat_map(|q| (0..n).map(move |x| (q, x)))
        .map(|(q, x)| s.product(q, x) as u32)
        .collect();
    MealyMachine {
        state_count: n,
        alphabet_size: n,
        delta: table.clone(),
        lambda: table,
    }
}

/// The dual Cayley machine of `s`: in state `q` reading `x` it outputs `x·q`
/// and moves to `q·x`.
pub fn dual_cayley(s: &FiniteSemigroup) -> MealyMachine {
    let n = s.order();
    let mut delta = Vec::with_capacity(n * n);
    let mut lambda = Vec::with_capacity(n * n);
    for q in 0..n {
        for x in 0..n {
            delta.push(s.product(q, x) as u32);
            lambda.push(s.product(x, q) as u32);
        }
    }
    MealyMachine {
        state_count: n,
        alphabet_size: n,
        delta,
        lambda,
    }
}

/// A Mealy machine with a designated initial state; represents one element
/// of an automaton semigroup. In canonical form every state is reachable
/// from the initial state, no two states are equivalent, states are numbered
/// in BFS discovery order (symbols scanned ascending) and the initial state
/// is 0.
#[derive(Debug, Clone)]
pub struct PointedTransducer {
    machine: MealyMachine,
    initial: usize,
    canonical: bool,
}

impl PointedTransducer {
    pub fn new(machine: MealyMachine, initial: usize) -> Self {
        assert!(
            initial < machine.state_count(),
            "initial state {initial} out of range"
        );
        PointedTransducer {
            machine,
            initial,
            canonical: false,
        }
    }

    /// The identity transformation: one state echoing every symbol.
    pub fn identity(alphabet_size: usize) -> Self {
        let machine = MealyMachine {
            state_count: 1,
            alphabet_size,
            delta: vec![0; alphabet_size],
            lambda: (0..alphabet_size as u32).collect(),
        };
        PointedTransducer {
            machine,
            initial: 0,
            canonical: true,
        }
    }

    pub fn machine(&self) -> &MealyMachine {
        &self.machine
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn state_count(&self) -> usize {
        self.machine.state_count()
    }

    pub fn alphabet_size(&self) -> usize {
        self.machine.alphabet_size()
    }

    /// Canonical serialization: state count, alphabet size, flattened delta,
    /// flattened lambda, with the initial state fixed at 0. Entry widths are
    /// chosen from the header so the encoding is self-describing. Used for
    /// hashing and byte-equality of canonical forms.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let c;
        let u = if self.canonical {
            self
        } else {
            c = canonicalize(self);
            &c
        };
        let m = &u.machine;
        let mut out = Vec::with_capacity(8 + m.delta.len() * 3);
        out.extend_from_slice(&(m.state_count as u32).to_le_bytes());
        out.extend_from_slice(&(m.alphabet_size as u32).to_le_bytes());
        push_entries(&mut out, &m.delta, m.state_count);
        push_entries(&mut out, &m.lambda, m.alphabet_size);
        out
    }

    /// Rebuilds a canonical transducer from [`PointedTransducer::canonical_bytes`].
    pub fn from_canonical_bytes(bytes: &[u8]) -> Option<Self> {
        let state_count = u32::from_le_bytes(bytes.get(0..4)?.try_into().ok()?) as usize;
        let alphabet_size = u32::from_le_bytes(bytes.get(4..8)?.try_into().ok()?) as usize;
        let len = state_count * alphabet_size;
        let mut pos = 8;
        let delta = read_entries(bytes, &mut pos, len, state_count)?;
        let lambda = read_entries(bytes, &mut pos, len, alphabet_size)?;
        if pos != bytes.len() {
            return None;
        }
        Some(PointedTransducer {
            machine: MealyMachine::new(state_count, alphabet_size, delta, lambda).ok()?,
            initial: 0,
            canonical: true,
        })
    }

    /// Debug dump, one arc per line: `state symbol -> state / output`.
    pub fn to_dot_like(&self) -> String {
        use std::fmt::Write;
        let m = &self.machine;
        let mut out = String::new();
        let _ = writeln!(out, "initial {}", self.initial);
        for q in 0..m.state_count() {
            for x in 0..m.alphabet_size() {
                let _ = writeln!(out, "{q} {x} -> {} / {}", m.delta(q, x), m.lambda(q, x));
            }
        }
        out
    }
}

fn entry_width(max_exclusive: usize) -> usize {
    if max_exclusive <= 1 << 8 {
        1
    } else if max_exclusive <= 1 << 16 {
        2
    } else {
        4
    }
}

fn push_entries(out: &mut Vec<u8>, entries: &[u32], max_exclusive: usize) {
    match entry_width(max_exclusive) {
        1 => out.extend(entries.iter().map(|&e| e as u8)),
        2 => {
            for &e in entries {
                out.extend_from_slice(&(e as u16).to_le_bytes());
            }
        }
        _ => {
            for &e in entries {
                out.extend_from_slice(&e.to_le_bytes());
            }
        }
    }
}

fn read_entries(bytes: &[u8], pos: &mut usize, len: usize, max_exclusive: usize) -> Option<Vec<u32>> {
    let width = entry_width(max_exclusive);
    let span = bytes.get(*pos..*pos + len * width)?;
    *pos += len * width;
    Some(match width {
        1 => span.iter().map(|&b| b as u32).collect(),
        2 => span
            .chunks_exact(2)
            .map(|c| u16::from_le_bytes([c[0], c[1]]) as u32)
            .collect(),
        _ => span
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect(),
    })
}

/// The canonical pointed transducer for state `state` of `machine`.
pub fn generator(machine: &MealyMachine, state: usize) -> PointedTransducer {
    canonicalize(&PointedTransducer::new(machine.clone(), state))
}

/// Canonical pointed transducers for every state of `machine`, in state order.
pub fn generators(machine: &MealyMachine) -> Vec<PointedTransducer> {
    (0..machine.state_count())
        .map(|s| generator(machine, s))
        .collect()
}

/// Restricts to the part reachable from the initial state, merges equivalent
/// states by partition refinement (initial blocks by identical output rows,
/// refined until transitions respect blocks), and relabels the quotient in
/// BFS discovery order. Idempotent.
pub fn canonicalize(u: &PointedTransducer) -> PointedTransducer {
    if u.canonical {
        return u.clone();
    }
    let m = &u.machine;
    let a = m.alphabet_size();

    // Reachable part, renumbered in discovery order.
    let mut old_to_new = vec![u32::MAX; m.state_count()];
    let mut reach: Vec<u32> = Vec::new();
    old_to_new[u.initial] = 0;
    reach.push(u.initial as u32);
    let mut head = 0;
    while head < reach.len() {
        let q = reach[head] as usize;
        head += 1;
        for x in 0..a {
            let t = m.delta(q, x);
            if old_to_new[t] == u32::MAX {
                old_to_new[t] = reach.len() as u32;
                reach.push(t as u32);
            }
        }
    }
    let n = reach.len();
    let mut delta = Vec::with_capacity(n * a);
    let mut lambda = Vec::with_capacity(n * a);
    for &old in &reach {
        for x in 0..a {
            delta.push(old_to_new[m.delta(old as usize, x)]);
            lambda.push(m.lambda(old as usize, x) as u32);
        }
    }

    let block = refine(n, a, &delta, &lambda);

    // Relabel blocks in BFS order from the initial block.
    let block_count = 1 + block.iter().copied().max().unwrap_or(0) as usize;
    let mut rep = vec![u32::MAX; block_count];
    for q in 0..n {
        let b = block[q] as usize;
        if rep[b] == u32::MAX {
            rep[b] = q as u32;
        }
    }
    let mut new_id = vec![u32::MAX; block_count];
    let mut order: Vec<u32> = Vec::with_capacity(block_count);
    new_id[block[0] as usize] = 0;
    order.push(block[0]);
    let mut head = 0;
    while head < order.len() {
        let b = order[head] as usize;
        head += 1;
        let q = rep[b] as usize;
        for x in 0..a {
            let tb = block[delta[q * a + x] as usize];
            if new_id[tb as usize] == u32::MAX {
                new_id[tb as usize] = order.len() as u32;
                order.push(tb);
            }
        }
    }
    let sc = order.len();
    let mut qdelta = vec![0u32; sc * a];
    let mut qlambda = vec![0u32; sc * a];
    for (nid, &b) in order.iter().enumerate() {
        let q = rep[b as usize] as usize;
        for x in 0..a {
            qdelta[nid * a + x] = new_id[block[delta[q * a + x] as usize] as usize];
            qlambda[nid * a + x] = lambda[q * a + x];
        }
    }
    PointedTransducer {
        machine: MealyMachine {
            state_count: sc,
            alphabet_size: a,
            delta: qdelta,
            lambda: qlambda,
        },
        initial: 0,
        canonical: true,
    }
}

/// Mealy partition refinement over a reachable machine given as flat tables.
/// Grouping within each round uses stable counting sorts per signature
/// column, so a round costs O(states x alphabet) with no hashing.
fn refine(n: usize, a: usize, delta: &[u32], lambda: &[u32]) -> Vec<u32> {
    let mut perm: Vec<u32> = (0..n as u32).collect();
    let mut block = vec![0u32; n];
    let mut scratch: Vec<u32> = vec![0; n];
    let mut buckets: Vec<u32> = Vec::new();
    let domain = n.max(a).max(1);

    // Initial blocks: identical lambda rows.
    let mut count = group_rows(
        &mut perm,
        &mut block,
        &mut scratch,
        &mut buckets,
        domain,
        |q, x| lambda[q as usize * a + x],
        a,
        n,
        |_| 0,
    );
    loop {
        let prev = count;
        let block_snapshot = block.clone();
        count = group_rows(
            &mut perm,
            &mut block,
            &mut scratch,
            &mut buckets,
            domain,
            |q, x| block_snapshot[delta[q as usize * a + x] as usize],
            a,
            n,
            |q| block_snapshot[q as usize],
        );
        if count == prev {
            break;
        }
    }
    block
}

/// Stable-sorts `perm` by the signature `(head(q), col(q, 0), ..,
/// col(q, a-1))` using one counting sort per column, then assigns block ids
/// to equal-signature runs. Returns the number of blocks.
#[allow(clippy::too_many_arguments)]
fn group_rows(
    perm: &mut [u32],
    block: &mut [u32],
    scratch: &mut [u32],
    buckets: &mut Vec<u32>,
    domain: usize,
    col: impl Fn(u32, usize) -> u32,
    a: usize,
    n: usize,
    head: impl Fn(u32) -> u32,
) -> usize {
    buckets.clear();
    buckets.resize(domain + 1, 0);
    // Counting sorts from the last key column to the first keep the order
    // stable, yielding a lexicographic sort of full signatures.
    for x in (0..a).rev() {
        counting_sort(perm, scratch, buckets, |q| col(q, x));
    }
    counting_sort(perm, scratch, buckets, &head);

    let mut count = 0u32;
    let mut prev: Option<u32> = None;
    for i in 0..n {
        let q = perm[i];
        let differs = match prev {
            None => true,
            Some(p) => head(q) != head(p) || (0..a).any(|x| col(q, x) != col(p, x)),
        };
        if differs {
            if prev.is_some() {
                count += 1;
            }
            prev = Some(q);
        }
        block[q as usize] = count;
    }
    count as usize + 1
}

fn counting_sort(perm: &mut [u32], scratch: &mut [u32], buckets: &mut [u32], key: impl Fn(u32) -> u32) {
    buckets.fill(0);
    for &q in perm.iter() {
        buckets[key(q) as usize + 1] += 1;
    }
    for i in 1..buckets.len() {
        buckets[i] += buckets[i - 1];
    }
    for &q in perm.iter() {
        let k = key(q) as usize;
        scratch[buckets[k] as usize] = q;
        buckets[k] += 1;
    }
    perm.copy_from_slice(&scratch[..perm.len()]);
}

/// True iff `u` and `v` induce the same transformation of infinite
/// sequences, decided by structural equality of canonical forms.
pub fn equal(u: &PointedTransducer, v: &PointedTransducer) -> bool {
    let (cu, cv);
    let u = if u.canonical {
        u
    } else {
        cu = canonicalize(u);
        &cu
    };
    let v = if v.canonical {
        v
    } else {
        cv = canonicalize(v);
        &cv
    };
    u.machine == v.machine
}

/// Cascade product: `u` reads the input, `v` reads `u`'s output. The result
/// is canonicalized. Uses [`DEFAULT_STATE_CAP`] for the raw product.
pub fn compose(u: &PointedTransducer, v: &PointedTransducer) -> Result<PointedTransducer, MealyError> {
    compose_bounded(u, v, DEFAULT_STATE_CAP)
}

/// [`compose`] with an explicit cap on raw product states discovered before
/// minimization.
pub fn compose_bounded(
    u: &PointedTransducer,
    v: &PointedTransducer,
    max_states: usize,
) -> Result<PointedTransducer, MealyError> {
    let a = u.alphabet_size();
    if a != v.alphabet_size() {
        return Err(MealyError::AlphabetMismatch {
            left: a,
            right: v.alphabet_size(),
        });
    }
    let (mu, mv) = (&u.machine, &v.machine);
    let (su, sv) = (mu.state_count(), mv.state_count());

    // Pair ids in BFS discovery order. A flat index map is used when the
    // full pair space is small; otherwise a hash map over discovered pairs.
    let flat_limit = 1usize << 22;
    let mut flat: Vec<u32>;
    let mut sparse: std::collections::HashMap<(u32, u32), u32>;
    let use_flat = su.saturating_mul(sv) <= flat_limit;
    flat = if use_flat {
        vec![u32::MAX; su * sv]
    } else {
        Vec::new()
    };
    sparse = std::collections::HashMap::new();

    let mut pairs: Vec<(u32, u32)> = Vec::new();
    let start = (u.initial as u32, v.initial as u32);
    if use_flat {
        flat[u.initial * sv + v.initial] = 0;
    } else {
        sparse.insert(start, 0);
    }
    pairs.push(start);
    let mut delta: Vec<u32> = Vec::new();
    let mut lambda: Vec<u32> = Vec::new();
    let mut head = 0;
    while head < pairs.len() {
        let (p, q) = pairs[head];
        head += 1;
        for x in 0..a {
            let y = mu.lambda(p as usize, x);
            let np = mu.delta(p as usize, x) as u32;
            let nq = mv.delta(q as usize, y) as u32;
            let id = if use_flat {
                let slot = &mut flat[np as usize * sv + nq as usize];
                if *slot == u32::MAX {
                    *slot = pairs.len() as u32;
                    pairs.push((np, nq));
                }
                *slot
            } else {
                let next = pairs.len() as u32;
                let id = *sparse.entry((np, nq)).or_insert(next);
                if id == next {
                    pairs.push((np, nq));
                }
                id
            };
            if pairs.len() > max_states {
                return Err(MealyError::StateBudgetExceeded { cap: max_states });
            }
            delta.push(id);
            lambda.push(mv.lambda(q as usize, y) as u32);
        }
    }
    let raw = PointedTransducer {
        machine: MealyMachine {
            state_count: pairs.len(),
            alphabet_size: a,
            delta,
            lambda,
        },
        initial: 0,
        canonical: false,
    };
    Ok(canonicalize(&raw))
}

/// Reads one symbol: returns the output and the canonicalized transducer
/// re-pointed at the successor state.
pub fn step(u: &PointedTransducer, x: usize) -> Result<(usize, PointedTransducer), MealyError> {
    let a = u.alphabet_size();
    if x >= a {
        return Err(MealyError::SymbolOutOfRange {
            symbol: x,
            alphabet: a,
        });
    }
    let out = u.machine.lambda(u.initial, x);
    let next = PointedTransducer {
        machine: u.machine.clone(),
        initial: u.machine.delta(u.initial, x),
        canonical: false,
    };
    Ok((out, canonicalize(&next)))
}

/// The first-letter action of `u`: `map[x]` is the output on reading `x`
/// in the initial state. For a dual Cayley generator `s̄` this is the right
/// translation `x ↦ x·s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputMap {
    map: Vec<usize>,
}

impl OutputMap {
    pub fn get(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn identity(alphabet_size: usize) -> Self {
        OutputMap {
            map: (0..alphabet_size).collect(),
        }
    }

    /// Right translation `x ↦ x·a` on `s`.
    pub fn right_translation(s: &FiniteSemigroup, a: usize) -> Self {
        OutputMap {
            map: s.elements().map(|x| s.product(x, a)).collect(),
        }
    }

    /// `self` applied first, then `other`.
    pub fn then(&self, other: &OutputMap) -> Self {
        OutputMap {
            map: self.map.iter().map(|&y| other.map[y]).collect(),
        }
    }
}

pub fn output_map(u: &PointedTransducer) -> OutputMap {
    OutputMap {
        map: (0..u.alphabet_size())
            .map(|x| u.machine.lambda(u.initial, x))
            .collect(),
    }
}

/// Runs `u` over a finite prefix; length-preserving.
pub fn apply_prefix(u: &PointedTransducer, word: &[usize]) -> Result<Vec<usize>, MealyError> {
    let a = u.alphabet_size();
    let mut q = u.initial;
    let mut out = Vec::with_capacity(word.len());
    for &x in word {
        if x >= a {
            return Err(MealyError::SymbolOutOfRange {
                symbol: x,
                alphabet: a,
            });
        }
        out.push(u.machine.lambda(q, x));
        q = u.machine.delta(q, x);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::named;

    #[test]
    fn cayley_and_dual_tables() {
        let rz = named("rightzero:2").unwrap();
        let c = cayley(&rz);
        let d = dual_cayley(&rz);
        for q in 0..2 {
            for x in 0..2 {
                assert_eq!(c.delta(q, x), x);
                assert_eq!(c.lambda(q, x), x);
                assert_eq!(d.delta(q, x), x);
                assert_eq!(d.lambda(q, x), q);
            }
        }
        let lz = named("leftzero:2").unwrap();
        let d = dual_cayley(&lz);
        for q in 0..2 {
            for x in 0..2 {
                assert_eq!(d.delta(q, x), q);
                assert_eq!(d.lambda(q, x), x);
            }
        }
    }

    #[test]
    fn commutative_dual_equals_cayley() {
        let c3 = named("cyclic:3").unwrap();
        assert_eq!(cayley(&c3), dual_cayley(&c3));
    }

    #[test]
    fn null_dual_generators_collapse() {
        let s = named("null:2").unwrap();
        let m = dual_cayley(&s);
        let g0 = generator(&m, 0);
        let g1 = generator(&m, 1);
        assert!(equal(&g0, &g1));
        assert_eq!(g0.state_count(), 1);
        assert_eq!(output_map(&g0).as_slice(), &[0, 0]);
    }

    #[test]
    fn leftzero_dual_generator_is_identity() {
        let s = named("leftzero:3").unwrap();
        let m = dual_cayley(&s);
        for q in 0..3 {
            let g = generator(&m, q);
            assert_eq!(g.state_count(), 1);
            assert!(equal(&g, &PointedTransducer::identity(3)));
        }
    }

    #[test]
    fn group_cayley_generators_distinct() {
        let s = named("cyclic:2").unwrap();
        let m = cayley(&s);
        assert!(!equal(&generator(&m, 0), &generator(&m, 1)));
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let s = named("chain:2").unwrap();
        let m = dual_cayley(&s);
        let g = generator(&m, 1);
        let g2 = canonicalize(&g);
        assert_eq!(g.machine(), g2.machine());
        assert_eq!(g2.initial(), 0);
        assert!(g2.is_canonical());
    }

    #[test]
    fn compose_with_identity_is_neutral() {
        let s = named("chain:2").unwrap();
        let m = dual_cayley(&s);
        let id = PointedTransducer::identity(2);
        for q in 0..2 {
            let g = generator(&m, q);
            assert!(equal(&compose(&id, &g).unwrap(), &g));
            assert!(equal(&compose(&g, &id).unwrap(), &g));
        }
    }

    #[test]
    fn rightzero_dual_prepends_left_factor_first() {
        let s = named("rightzero:2").unwrap();
        let m = dual_cayley(&s);
        let w = compose(&generator(&m, 0), &generator(&m, 1)).unwrap();
        assert_eq!(apply_prefix(&w, &[1, 1, 1]).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn step_examples() {
        let s = named("rightzero:2").unwrap();
        let m = dual_cayley(&s);
        let (out, next) = step(&generator(&m, 0), 1).unwrap();
        assert_eq!(out, 0);
        assert!(equal(&next, &generator(&m, 1)));

        let s = named("chain:2").unwrap();
        let m = dual_cayley(&s);
        let (out, next) = step(&generator(&m, 0), 1).unwrap();
        assert_eq!(out, 0);
        assert!(equal(&next, &generator(&m, 0)));
    }

    #[test]
    fn step_rejects_out_of_range_symbol() {
        let g = PointedTransducer::identity(2);
        assert_eq!(
            step(&g, 2).unwrap_err(),
            MealyError::SymbolOutOfRange {
                symbol: 2,
                alphabet: 2
            }
        );
    }

    #[test]
    fn output_map_of_dual_generator_is_right_translation() {
        for spec in ["chain:2", "rightzero:3", "cyclic:3", "null:2"] {
            let s = named(spec).unwrap();
            let m = dual_cayley(&s);
            for q in s.elements() {
                assert_eq!(
                    output_map(&generator(&m, q)),
                    OutputMap::right_translation(&s, q),
                    "{spec} state {q}"
                );
            }
        }
    }

    #[test]
    fn output_map_of_compose_is_product_translation() {
        let s = named("cyclic:3").unwrap();
        let m = dual_cayley(&s);
        for a in s.elements() {
            for b in s.elements() {
                let w = compose(&generator(&m, a), &generator(&m, b)).unwrap();
                assert_eq!(
                    output_map(&w),
                    OutputMap::right_translation(&s, s.product(a, b))
                );
                assert_eq!(
                    output_map(&generator(&m, a))
                        .then(&output_map(&generator(&m, b))),
                    output_map(&w)
                );
            }
        }
    }

    #[test]
    fn apply_prefix_chain_runs_prefix_min() {
        let s = named("chain:2").unwrap();
        let m = dual_cayley(&s);
        let g = generator(&m, 1);
        assert_eq!(apply_prefix(&g, &[1, 0, 1]).unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn apply_prefix_leftzero_dual_is_identity() {
        let s = named("leftzero:2").unwrap();
        let m = dual_cayley(&s);
        let g = generator(&m, 0);
        assert_eq!(apply_prefix(&g, &[1, 0, 0, 1]).unwrap(), vec![1, 0, 0, 1]);
    }

    #[test]
    fn compose_alphabet_mismatch() {
        let u = PointedTransducer::identity(2);
        let v = PointedTransducer::identity(3);
        assert_eq!(
            compose(&u, &v).unwrap_err(),
            MealyError::AlphabetMismatch { left: 2, right: 3 }
        );
    }

    #[test]
    fn compose_state_budget() {
        let s = named("cyclic:2").unwrap();
        let m = cayley(&s);
        let g0 = generator(&m, 0);
        let mut w = g0.clone();
        for _ in 0..4 {
            w = compose(&w, &g0).unwrap();
        }
        // the raw product now needs more than 4 states
        assert!(matches!(
            compose_bounded(&w, &g0, 4),
            Err(MealyError::StateBudgetExceeded { cap: 4 })
        ));
    }

    #[test]
    fn null_dual_state_zero_is_constant() {
        let s = named("null:2").unwrap();
        let m = dual_cayley(&s);
        let g = generator(&m, 0);
        assert_eq!(g.state_count(), 1);
        assert_eq!(g.machine().lambda(0, 0), 0);
        assert_eq!(g.machine().lambda(0, 1), 0);
        assert_eq!(g.machine().delta(0, 0), 0);
    }

    #[test]
    fn canonical_bytes_round_trip() {
        let s = named("chain:2").unwrap();
        let m = dual_cayley(&s);
        let g = generator(&m, 1);
        let bytes = g.canonical_bytes();
        let back = PointedTransducer::from_canonical_bytes(&bytes).unwrap();
        assert!(equal(&g, &back));
        assert_eq!(back.canonical_bytes(), bytes);
    }

    #[test]
    fn dot_like_dump_lists_arcs() {
        let g = PointedTransducer::identity(2);
        let dump = g.to_dot_like();
        assert!(dump.contains("initial 0"));
        assert!(dump.contains("0 1 -> 0 / 1"));
    }
}
