//! Exact element counting over formal products of pointed transducers,
//! evaluated as cascades without building product machines.
//!
//! Products of k transducers are simulated by threading each input symbol
//! through the k factors in order, which costs O(k) per symbol but never
//! materializes a product state space. Counting distinct elements per word
//! length then works in two stages: candidates are bucketed by their output
//! signature on a fixed probe set (a genuine sample of the induced function,
//! so distinct signatures imply distinct elements), and candidates sharing a
//! signature are separated exactly by a bisimulation check over pairs of
//! cascade state vectors. The result is exact regardless of probe quality;
//! probes only decide how much falls through to the pairwise check.

use std::collections::{HashMap, HashSet};

use crate::mealy::PointedTransducer;

/// Cap on pair nodes explored by one exact equality check.
pub(crate) const EQUALITY_NODE_CAP: usize = 1 << 20;

fn initial_states(gens: &[PointedTransducer], word: &[u16]) -> Vec<u32> {
    word.iter()
        .map(|&g| gens[g as usize].initial() as u32)
        .collect()
}

/// Threads one input symbol through the cascade; returns the output symbol.
#[inline]
fn cascade_step(gens: &[PointedTransducer], word: &[u16], states: &mut [u32], x: usize) -> usize {
    let mut z = x;
    for (i, &g) in word.iter().enumerate() {
        let m = gens[g as usize].machine();
        let q = states[i] as usize;
        let y = m.lambda(q, z);
        states[i] = m.delta(q, z) as u32;
        z = y;
    }
    z
}

/// Number of probe streams for a given alphabet: one constant stream per
/// symbol plus two fixed pseudo-random streams.
pub(crate) fn stream_count(alphabet: usize) -> usize {
    alphabet + 2
}

/// Probe inputs of length `len`, one per stream. Streams are prefix-closed:
/// the length-`l` probes are prefixes of the length-`l+1` probes, so output
/// signatures at a shorter horizon are prefixes of longer ones.
fn probe_inputs(alphabet: usize, len: usize) -> Vec<Vec<u8>> {
    let mut probes: Vec<Vec<u8>> = (0..alphabet).map(|c| vec![c as u8; len]).collect();
    for seed in [0x2545F4914F6CDD1Du64, 0x9E3779B97F4A7C15u64] {
        let mut s = seed;
        let mut p = Vec::with_capacity(len);
        for _ in 0..len {
            // splitmix64
            s = s.wrapping_add(0x9E3779B97F4A7C15);
            let mut z = s;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
            z ^= z >> 31;
            p.push((z % alphabet as u64) as u8);
        }
        probes.push(p);
    }
    probes
}

/// Outputs of the cascade on every probe stream, stream-major:
/// `stream_count * horizon` bytes. A genuine sample of the induced
/// function, so differing outputs imply distinct elements.
pub(crate) fn probe_outputs(
    gens: &[PointedTransducer],
    word: &[u16],
    horizon: usize,
    scratch: &mut Vec<u32>,
) -> Vec<u8> {
    let alphabet = gens[0].alphabet_size();
    let probes = probe_inputs(alphabet, horizon);
    let mut out = Vec::with_capacity(probes.len() * horizon);
    for p in &probes {
        scratch.clear();
        scratch.extend(word.iter().map(|&g| gens[g as usize].initial() as u32));
        for &x in p {
            out.push(cascade_step(gens, word, scratch, x as usize) as u8);
        }
    }
    out
}

/// The first `prefix` outputs of each stream from a stream-major output
/// block, concatenated: the signature the same element would produce at the
/// shorter horizon.
pub(crate) fn truncate_outputs(outs: &[u8], streams: usize, horizon: usize, prefix: usize) -> Vec<u8> {
    debug_assert!(prefix <= horizon && outs.len() == streams * horizon);
    let mut key = Vec::with_capacity(streams * prefix);
    for s in 0..streams {
        key.extend_from_slice(&outs[s * horizon..s * horizon + prefix]);
    }
    key
}

fn signature(
    gens: &[PointedTransducer],
    word: &[u16],
    probes: &[Vec<u8>],
    scratch: &mut Vec<u32>,
) -> Vec<u8> {
    let mut sig = Vec::with_capacity(probes.len() * probes[0].len());
    for p in probes {
        scratch.clear();
        scratch.extend(word.iter().map(|&g| gens[g as usize].initial() as u32));
        for &x in p {
            sig.push(cascade_step(gens, word, scratch, x as usize) as u8);
        }
    }
    sig
}

/// Exact functional equality of two cascades by BFS over state-vector
/// pairs, comparing outputs on every symbol. Returns `None` when the node
/// cap is hit before a verdict.
pub(crate) fn cascades_equal(
    gens: &[PointedTransducer],
    w1: &[u16],
    w2: &[u16],
    node_cap: usize,
) -> Option<bool> {
    let alphabet = gens[0].alphabet_size();
    let start = (initial_states(gens, w1), initial_states(gens, w2));
    let mut seen: HashSet<(Vec<u32>, Vec<u32>)> = HashSet::new();
    seen.insert(start.clone());
    let mut stack = vec![start];
    let mut nodes = 0usize;
    while let Some((s1, s2)) = stack.pop() {
        nodes += 1;
        if nodes > node_cap {
            return None;
        }
        for x in 0..alphabet {
            let mut n1 = s1.clone();
            let mut n2 = s2.clone();
            let y1 = cascade_step(gens, w1, &mut n1, x);
            let y2 = cascade_step(gens, w2, &mut n2, x);
            if y1 != y2 {
                return Some(false);
            }
            let key = (n1, n2);
            if !seen.contains(&key) {
                seen.insert(key.clone());
                stack.push(key);
            }
        }
    }
    Some(true)
}

/// Result of one counting run.
pub(crate) struct LevelCounts {
    /// Distinct elements at each word length `1..=l`.
    pub counts: Vec<usize>,
}

pub(crate) enum CountError {
    /// A pairwise equality check exceeded [`EQUALITY_NODE_CAP`].
    EqualityBudget,
}

/// Counts distinct elements among all words of each length `1..=l` over the
/// generator list. Words extend representatives of the previous level, which
/// yields the same element sets because functional equality is a congruence
/// for right multiplication.
pub(crate) fn distinct_counts(
    gens: &[PointedTransducer],
    l: usize,
    node_cap: usize,
) -> Result<LevelCounts, CountError> {
    assert!(!gens.is_empty(), "generator list must be nonempty");
    let alphabet = gens[0].alphabet_size();
    assert!(
        gens.iter().all(|g| g.alphabet_size() == alphabet),
        "generators must share an alphabet"
    );
    let g = gens.len();
    let mut counts = Vec::with_capacity(l);
    let mut reps: Vec<Vec<u16>> = Vec::new();
    let mut scratch: Vec<u32> = Vec::new();
    for len in 1..=l {
        let candidates: Vec<Vec<u16>> = if len == 1 {
            (0..g as u16).map(|i| vec![i]).collect()
        } else {
            reps.iter()
                .flat_map(|r| {
                    (0..g as u16).map(move |i| {
                        let mut w = r.clone();
                        w.push(i);
                        w
                    })
                })
                .collect()
        };
        let probes = probe_inputs(alphabet, len + 1);
        let mut buckets: HashMap<Vec<u8>, Vec<u32>> = HashMap::new();
        for (ci, w) in candidates.iter().enumerate() {
            buckets
                .entry(signature(gens, w, &probes, &mut scratch))
                .or_default()
                .push(ci as u32);
        }
        // Partition each bucket into exact equality classes. Classes never
        // cross buckets, so bucket iteration order is irrelevant; each class
        // is represented by its first candidate in generation order.
        let mut assigned = vec![false; candidates.len()];
        let mut chosen: Vec<u32> = Vec::new();
        for members in buckets.values() {
            for (i, &ci) in members.iter().enumerate() {
                if assigned[ci as usize] {
                    continue;
                }
                assigned[ci as usize] = true;
                chosen.push(ci);
                for &cj in &members[i + 1..] {
                    if assigned[cj as usize] {
                        continue;
                    }
                    match cascades_equal(
                        gens,
                        &candidates[ci as usize],
                        &candidates[cj as usize],
                        node_cap,
                    ) {
                        Some(true) => assigned[cj as usize] = true,
                        Some(false) => {}
                        None => return Err(CountError::EqualityBudget),
                    }
                }
            }
        }
        chosen.sort_unstable();
        counts.push(chosen.len());
        reps = chosen
            .into_iter()
            .map(|ci| candidates[ci as usize].clone())
            .collect();
    }
    Ok(LevelCounts { counts })
}
