//! Exhaustive, prunable enumeration of k-bit delta sequences and
//! exact transition-count histograms.
//!
//! The histogram kernel searches only sequences in first-occurrence
//! row order (one representative per free S_k-orbit) and recovers the
//! full histogram by symmetrizing bucket counts afterwards, a k!-fold
//! reduction of the search space. Capped queries prune subtrees whose
//! sorted partial counts already exceed the sorted caps.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graycode::{check_k, column_count, DeltaSequence, SignedPermutation, TransitionCounts, MAX_K};

/// Full histograms are feasible for k <= 5 (5 859 364 320 sequences).
pub const MAX_HISTOGRAM_K: u8 = 5;

/// Delta-sequence totals for k = 1..=5.
pub const SEQUENCE_TOTALS: [u64; 5] = [1, 2, 18, 5712, 5_859_364_320];

/// Restricts an enumeration to a sub-lattice of transition counts
/// and/or a forced prefix of the delta sequence.
#[derive(Debug, Clone, Default)]
pub struct PruneSpec {
    /// Per-row maximum transition counts; only sequences whose counts
    /// are dominated by `caps` are produced.
    pub caps: Option<TransitionCounts>,
    /// Forced leading entries (1-based rows). A prefix that is not
    /// extendable to a valid sequence yields nothing.
    pub fixed_prefix: Option<Vec<u8>>,
}

impl PruneSpec {
    pub fn none() -> Self {
        PruneSpec::default()
    }

    pub fn with_caps(caps: TransitionCounts) -> Self {
        PruneSpec {
            caps: Some(caps),
            fixed_prefix: None,
        }
    }

    pub fn with_prefix(prefix: Vec<u8>) -> Self {
        PruneSpec {
            caps: None,
            fixed_prefix: Some(prefix),
        }
    }
}

/// Depth-first stream over all valid delta sequences satisfying a
/// prune spec. Yield order is deterministic.
pub struct Enumerate {
    k: u8,
    total: usize,
    caps: Option<[u16; MAX_K as usize]>,
    prefix: Vec<u8>,
    entries: Vec<u8>,
    vertices: Vec<u32>,
    next_try: Vec<u8>,
    counts: [u16; MAX_K as usize],
    visited: u64,
    budget: u64,
    done: bool,
}

pub fn enumerate(k: u8, prune: &PruneSpec) -> Result<Enumerate> {
    check_k(k)?;
    let caps = match &prune.caps {
        Some(c) => {
            if c.k() != k {
                return Err(Error::BitWidthMismatch {
                    left: k,
                    right: c.k(),
                });
            }
            Some(c.array())
        }
        None => None,
    };
    let prefix = prune.fixed_prefix.clone().unwrap_or_default();
    for &row in &prefix {
        if row == 0 || row > k {
            return Err(Error::RowOutOfRange {
                row: u32::from(row),
                k,
            });
        }
    }
    let budget = caps
        .map(|c| c[..usize::from(k)].iter().map(|&x| u64::from(x)).sum())
        .unwrap_or(0);
    Ok(Enumerate {
        k,
        total: column_count(k) - 1,
        caps,
        prefix,
        entries: Vec::new(),
        vertices: vec![0],
        next_try: vec![0],
        counts: [0; MAX_K as usize],
        visited: 1,
        budget,
        done: false,
    })
}

impl Enumerate {
    fn backtrack(&mut self) -> bool {
        match self.entries.pop() {
            None => {
                self.done = true;
                false
            }
            Some(row) => {
                let vertex = self.vertices.pop().expect("vertex stack in sync");
                self.visited &= !(1u64 << vertex);
                self.counts[usize::from(row) - 1] -= 1;
                self.budget = self.budget.wrapping_add(1);
                self.next_try.pop();
                true
            }
        }
    }
}

impl Iterator for Enumerate {
    type Item = DeltaSequence;

    fn next(&mut self) -> Option<DeltaSequence> {
        if self.done {
            return None;
        }
        if self.entries.len() == self.total {
            // resume after a yielded sequence
            if !self.backtrack() {
                return None;
            }
        }
        loop {
            let depth = self.entries.len();
            // a row choice costs one unit of budget per remaining step
            let starved = self.caps.is_some() && self.budget < (self.total - depth) as u64;
            let (lo, hi) = match self.prefix.get(depth) {
                Some(&forced) => (forced - 1, forced - 1),
                None => (0, self.k - 1),
            };
            let mut chosen = None;
            if !starved {
                let mut row = self.next_try[depth].max(lo);
                while row <= hi {
                    let r = usize::from(row);
                    let capped = self
                        .caps
                        .is_some_and(|caps| self.counts[r] >= caps[r]);
                    let vertex = self.vertices[depth] ^ (1 << row);
                    if !capped && self.visited & (1u64 << vertex) == 0 {
                        chosen = Some((row, vertex));
                        break;
                    }
                    row += 1;
                }
            }
            match chosen {
                Some((row, vertex)) => {
                    self.next_try[depth] = row + 1;
                    self.next_try.push(0);
                    self.entries.push(row + 1);
                    self.vertices.push(vertex);
                    self.visited |= 1u64 << vertex;
                    self.counts[usize::from(row)] += 1;
                    self.budget = self.budget.wrapping_sub(1);
                    if self.entries.len() == self.total {
                        return Some(DeltaSequence::from_entries_unchecked(
                            self.k,
                            self.entries.clone(),
                        ));
                    }
                }
                None => {
                    if !self.backtrack() {
                        return None;
                    }
                }
            }
        }
    }
}

/// Exact map from transition-count vectors to the number of delta
/// sequences realizing them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountHistogram {
    k: u8,
    buckets: BTreeMap<TransitionCounts, u64>,
    total: u64,
}

impl CountHistogram {
    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.buckets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.is_empty()
    }

    pub fn get(&self, c: &TransitionCounts) -> u64 {
        self.buckets.get(c).copied().unwrap_or(0)
    }

    /// Buckets in lexicographic key order.
    pub fn iter(&self) -> impl Iterator<Item = (&TransitionCounts, u64)> {
        self.buckets.iter().map(|(c, &n)| (c, n))
    }

    pub fn odd_buckets(&self) -> impl Iterator<Item = (&TransitionCounts, u64)> {
        self.iter().filter(|&(_, n)| n % 2 == 1)
    }

    fn from_buckets(k: u8, buckets: BTreeMap<TransitionCounts, u64>) -> Self {
        let total = buckets.values().sum();
        CountHistogram { k, buckets, total }
    }

    /// Builds a histogram by counting explicit sequences; the direct
    /// route used to cross-check the symmetrized kernel.
    pub fn from_sequences<I>(k: u8, sequences: I) -> Result<Self>
    where
        I: IntoIterator<Item = DeltaSequence>,
    {
        check_k(k)?;
        let mut buckets = BTreeMap::new();
        for d in sequences {
            if d.k() != k {
                return Err(Error::BitWidthMismatch { left: k, right: d.k() });
            }
            *buckets.entry(d.transition_counts()).or_insert(0) += 1;
        }
        Ok(CountHistogram::from_buckets(k, buckets))
    }
}

// --- search kernel -------------------------------------------------

#[inline]
fn pack(k: usize, counts: &[u16; MAX_K as usize]) -> usize {
    let mut idx = 0usize;
    for &c in counts.iter().take(k - 1) {
        debug_assert!(c < 32);
        idx = (idx << 5) | c as usize;
    }
    idx
}

fn unpack(k: usize, mut idx: usize, total: u16) -> [u16; MAX_K as usize] {
    let mut counts = [0u16; MAX_K as usize];
    for i in (0..k - 1).rev() {
        counts[i] = (idx & 31) as u16;
        idx >>= 5;
    }
    let head: u16 = counts[..k - 1].iter().sum();
    counts[k - 1] = total - head;
    counts
}

#[inline]
fn sorted_dominated(counts: &[u16; MAX_K as usize], k: usize, caps_desc: &[u16; MAX_K as usize]) -> bool {
    let mut tmp = [0u16; MAX_K as usize];
    tmp[..k].copy_from_slice(&counts[..k]);
    tmp[..k].sort_unstable_by(|a, b| b.cmp(a));
    (0..k).all(|i| tmp[i] <= caps_desc[i])
}

#[derive(Clone, Copy)]
struct Node {
    vertex: u32,
    visited: u64,
    depth: usize,
    max_used: usize,
}

struct CanonicalSearch {
    k: usize,
    total: usize,
    caps_desc: Option<[u16; MAX_K as usize]>,
    counts: [u16; MAX_K as usize],
    /// The counts as a descending multiset, updated in place: an
    /// increment lands on the leftmost slot holding the old value,
    /// which keeps the array sorted and can only violate the cap at
    /// that one slot.
    sorted_desc: [u16; MAX_K as usize],
    dense: Vec<u64>,
}

impl CanonicalSearch {
    fn new(k: usize, caps_desc: Option<[u16; MAX_K as usize]>) -> Self {
        CanonicalSearch {
            k,
            total: (1 << k) - 1,
            caps_desc,
            counts: [0; MAX_K as usize],
            sorted_desc: [0; MAX_K as usize],
            dense: vec![0u64; 1 << (5 * (k - 1))],
        }
    }

    fn load_counts(&mut self, counts: [u16; MAX_K as usize]) {
        self.counts = counts;
        self.sorted_desc = counts;
        self.sorted_desc[..self.k].sort_unstable_by(|a, b| b.cmp(a));
    }

    #[inline]
    fn bump(&mut self, value: u16) -> (usize, bool) {
        let mut slot = 0;
        while self.sorted_desc[slot] != value {
            slot += 1;
        }
        self.sorted_desc[slot] = value + 1;
        let ok = match &self.caps_desc {
            Some(caps) => value + 1 <= caps[slot],
            None => true,
        };
        (slot, ok)
    }

    fn run(&mut self, node: Node) {
        if self.caps_desc.is_some() {
            self.run_capped(node);
        } else {
            self.run_free(node);
        }
    }

    fn run_free(&mut self, node: Node) {
        if node.depth == self.total {
            self.dense[pack(self.k, &self.counts)] += 1;
            return;
        }
        let limit = (node.max_used + 1).min(self.k);
        for row in 0..limit {
            let vertex = node.vertex ^ (1 << row);
            if node.visited & (1u64 << vertex) != 0 {
                continue;
            }
            self.counts[row] += 1;
            self.run_free(Node {
                vertex,
                visited: node.visited | (1u64 << vertex),
                depth: node.depth + 1,
                max_used: node.max_used.max(row + 1),
            });
            self.counts[row] -= 1;
        }
    }

    fn run_capped(&mut self, node: Node) {
        if node.depth == self.total {
            self.dense[pack(self.k, &self.counts)] += 1;
            return;
        }
        let limit = (node.max_used + 1).min(self.k);
        for row in 0..limit {
            let vertex = node.vertex ^ (1 << row);
            if node.visited & (1u64 << vertex) != 0 {
                continue;
            }
            let value = self.counts[row];
            let (slot, feasible) = self.bump(value);
            if feasible {
                self.counts[row] = value + 1;
                self.run_capped(Node {
                    vertex,
                    visited: node.visited | (1u64 << vertex),
                    depth: node.depth + 1,
                    max_used: node.max_used.max(row + 1),
                });
                self.counts[row] = value;
            }
            self.sorted_desc[slot] = value;
        }
    }
}

/// Canonical-prefix tasks for splitting the search across workers.
fn collect_tasks(
    k: usize,
    split_depth: usize,
    caps_desc: Option<&[u16; MAX_K as usize]>,
    node: Node,
    counts: &mut [u16; MAX_K as usize],
    out: &mut Vec<(Node, [u16; MAX_K as usize])>,
) {
    if node.depth == split_depth {
        out.push((node, *counts));
        return;
    }
    let limit = (node.max_used + 1).min(k);
    for row in 0..limit {
        let vertex = node.vertex ^ (1 << row);
        if node.visited & (1u64 << vertex) != 0 {
            continue;
        }
        counts[row] += 1;
        if caps_desc.is_none_or(|caps| sorted_dominated(counts, k, caps)) {
            collect_tasks(
                k,
                split_depth,
                caps_desc,
                Node {
                    vertex,
                    visited: node.visited | (1u64 << vertex),
                    depth: node.depth + 1,
                    max_used: node.max_used.max(row + 1),
                },
                counts,
                out,
            );
        }
        counts[row] -= 1;
    }
}

fn canonical_dense(k: u8, caps: Option<&TransitionCounts>, workers: usize) -> Vec<u64> {
    let k = usize::from(k);
    let total = (1 << k) - 1;
    let caps_desc = caps.map(|c| {
        let mut a = c.array();
        a[..k].sort_unstable_by(|x, y| y.cmp(x));
        a
    });
    // an unreachable cap sum means no sequence fits
    if let Some(caps) = &caps_desc {
        let cap_sum: u64 = caps[..k].iter().map(|&x| u64::from(x)).sum();
        if cap_sum < total as u64 {
            return vec![0u64; 1 << (5 * (k - 1))];
        }
    }
    let workers = workers.max(1);
    let root = Node {
        vertex: 0,
        visited: 1,
        depth: 0,
        max_used: 0,
    };
    // deep splits are only worth it on the one expensive case
    let split_depth = if k == 5 && workers > 1 { 8 } else { 0 };
    let mut tasks = Vec::new();
    collect_tasks(
        k,
        split_depth,
        caps_desc.as_ref(),
        root,
        &mut [0u16; MAX_K as usize],
        &mut tasks,
    );
    if workers == 1 || tasks.len() <= 1 {
        let mut search = CanonicalSearch::new(k, caps_desc);
        for (node, counts) in tasks {
            search.load_counts(counts);
            search.run(node);
        }
        return search.dense;
    }
    let chunks: Vec<Vec<(Node, [u16; MAX_K as usize])>> = (0..workers)
        .map(|w| tasks.iter().skip(w).step_by(workers).copied().collect())
        .collect();
    let partials: Vec<Vec<u64>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|chunk| {
                scope.spawn(move || {
                    let mut search = CanonicalSearch::new(k, caps_desc);
                    for (node, counts) in chunk {
                        search.load_counts(counts);
                        search.run(node);
                    }
                    search.dense
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut dense = vec![0u64; 1 << (5 * (k - 1))];
    for partial in partials {
        for (d, p) in dense.iter_mut().zip(partial) {
            *d += p;
        }
    }
    dense
}

fn symmetrize(
    k: u8,
    dense: &[u64],
    caps: Option<&TransitionCounts>,
) -> Result<BTreeMap<TransitionCounts, u64>> {
    let perms = SignedPermutation::permutations(k)?;
    let total = (column_count(k) - 1) as u16;
    let mut buckets = BTreeMap::new();
    for (idx, &n) in dense.iter().enumerate() {
        if n == 0 {
            continue;
        }
        let canonical = TransitionCounts::from_array(k, unpack(usize::from(k), idx, total));
        for p in &perms {
            let target = p.act_counts(&canonical)?;
            if let Some(caps) = caps {
                if !target.dominated_by(caps) {
                    continue;
                }
            }
            *buckets.entry(target).or_insert(0u64) += n;
        }
    }
    Ok(buckets)
}

fn check_histogram_k(k: u8) -> Result<()> {
    check_k(k)?;
    if k > MAX_HISTOGRAM_K {
        return Err(Error::BitWidth {
            got: u32::from(k),
            max: u32::from(MAX_HISTOGRAM_K),
        });
    }
    Ok(())
}

/// The full transition-count histogram of all k-bit delta sequences.
pub fn histogram(k: u8, workers: usize) -> Result<CountHistogram> {
    check_histogram_k(k)?;
    let dense = canonical_dense(k, None, workers);
    let buckets = symmetrize(k, &dense, None)?;
    Ok(CountHistogram::from_buckets(k, buckets))
}

/// The histogram restricted to buckets dominated by `caps`. Subtrees
/// whose sorted partial counts already exceed the sorted caps are
/// pruned, so the cost never exceeds that of the full histogram.
pub fn histogram_capped(k: u8, caps: &TransitionCounts, workers: usize) -> Result<CountHistogram> {
    check_histogram_k(k)?;
    if caps.k() != k {
        return Err(Error::BitWidthMismatch {
            left: k,
            right: caps.k(),
        });
    }
    let dense = canonical_dense(k, Some(caps), workers);
    let buckets = symmetrize(k, &dense, Some(caps))?;
    Ok(CountHistogram::from_buckets(k, buckets))
}

/// Number of delta sequences sharing this sequence's transition
/// counts, via a capped bucket query.
pub fn shuffle_count(d: &DeltaSequence) -> Result<u64> {
    let counts = d.transition_counts();
    let hist = histogram_capped(d.k(), &counts, 1)?;
    Ok(hist.get(&counts))
}

/// Outcome of checking that the odd histogram buckets are exactly the
/// k! permutations of the standard transition counts, each realized by
/// exactly one sequence.
#[derive(Debug, Clone, Serialize)]
pub struct ShuffleReport {
    pub k: u8,
    pub pass: bool,
    /// Odd buckets that are not permutations of the standard counts.
    pub unexpected_odd: Vec<(TransitionCounts, u64)>,
    /// Permutations of the standard counts whose bucket is not exactly 1.
    pub standard_not_unique: Vec<(TransitionCounts, u64)>,
}

pub fn verify_shuffle_theorem(k: u8, workers: usize) -> Result<ShuffleReport> {
    let hist = histogram(k, workers)?;
    verify_shuffle_theorem_on(&hist)
}

pub fn verify_shuffle_theorem_on(hist: &CountHistogram) -> Result<ShuffleReport> {
    let k = hist.k();
    let standard = DeltaSequence::standard(k)?.transition_counts();
    let expected: std::collections::BTreeSet<TransitionCounts> = SignedPermutation::permutations(k)?
        .iter()
        .map(|p| p.act_counts(&standard))
        .collect::<Result<_>>()?;
    let unexpected_odd: Vec<_> = hist
        .odd_buckets()
        .filter(|(c, _)| !expected.contains(c))
        .map(|(c, n)| (*c, n))
        .collect();
    let standard_not_unique: Vec<_> = expected
        .iter()
        .map(|c| (*c, hist.get(c)))
        .filter(|&(_, n)| n != 1)
        .collect();
    Ok(ShuffleReport {
        k,
        pass: unexpected_odd.is_empty() && standard_not_unique.is_empty(),
        unexpected_odd,
        standard_not_unique,
    })
}

/// True iff every maximal equality chain c_k = 1, c_{k-1} = 2, ...,
/// c_{k-i+1} = 2^{i-1} is followed by c_{k-i} >= 2^i.
pub fn chain_lemma_check(d: &DeltaSequence) -> bool {
    let counts = d.transition_counts();
    let c = counts.as_slice();
    let k = c.len();
    for i in 0..k {
        let chain_holds = (0..i).all(|m| u32::from(c[k - 1 - m]) == 1 << m);
        if chain_holds && u32::from(c[k - 1 - i]) < (1 << i) {
            return false;
        }
    }
    true
}

// --- cache format ---------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CacheFile {
    k: u8,
    total: String,
    buckets: Vec<CacheBucket>,
}

#[derive(Serialize, Deserialize)]
struct CacheBucket {
    c: Vec<u16>,
    n: String,
}

impl CountHistogram {
    /// Interchange form: counts as decimal strings, buckets sorted
    /// lexicographically by their count vector.
    pub fn to_cache_json(&self) -> String {
        let file = CacheFile {
            k: self.k,
            total: self.total.to_string(),
            buckets: self
                .buckets
                .iter()
                .map(|(c, n)| CacheBucket {
                    c: c.as_slice().to_vec(),
                    n: n.to_string(),
                })
                .collect(),
        };
        serde_json::to_string(&file).expect("histogram serialization cannot fail")
    }

    pub fn from_cache_json(s: &str) -> Result<Self> {
        let file: CacheFile =
            serde_json::from_str(s).map_err(|e| Error::Cache(e.to_string()))?;
        check_histogram_k(file.k)?;
        let total: u64 = u64::from_str(&file.total)
            .map_err(|e| Error::Cache(format!("bad total: {e}")))?;
        let mut buckets = BTreeMap::new();
        for b in &file.buckets {
            let c = TransitionCounts::new(file.k, &b.c)?;
            let n = u64::from_str(&b.n).map_err(|e| Error::Cache(format!("bad count: {e}")))?;
            if buckets.insert(c, n).is_some() {
                return Err(Error::Cache(format!("duplicate bucket {c}")));
            }
        }
        let hist = CountHistogram::from_buckets(file.k, buckets);
        if hist.total != total {
            return Err(Error::Cache(format!(
                "bucket sum {} does not match declared total {}",
                hist.total, total
            )));
        }
        Ok(hist)
    }
}
