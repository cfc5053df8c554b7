//! Parity classification of equiparting-matrix counts: sparse lattice
//! convolutions of transition-count histograms, orbit parities under
//! the stabilizer action, minimal-maximum scans, and the closed forms
//! they reproduce.
//!
//! Convolution arithmetic is 64-bit wrapping with a wrap flag. A
//! nonzero wrapped value still has the exact dyadic valuation (the
//! true count agrees with it modulo 2^64), so parities stay exact;
//! only a wrapped zero is ambiguous and triggers an arbitrary-
//! precision recount of the affected lattice point.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::enumerator::{enumerate, CountHistogram, PruneSpec};
use crate::error::{Error, Result};
use crate::graycode::{check_k, column_count, DeltaSequence, SignedPermutation, TransitionCounts, MAX_K};
use crate::numtheory;

/// Largest tuple length the convolution layer accepts.
pub const MAX_J: u32 = 64;

type Key = [u16; MAX_K as usize];

/// A request to count ordered j-tuples of k-bit delta sequences whose
/// transition counts sum to `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TupleSpec {
    j: u32,
    k: u8,
    c: TransitionCounts,
}

impl TupleSpec {
    pub fn new(j: u32, c: TransitionCounts) -> Result<Self> {
        if j == 0 {
            return Err(Error::Zero { what: "tuple length j" });
        }
        if j > MAX_J {
            return Err(Error::TooLarge {
                what: "tuple length j",
                got: u64::from(j),
                limit: u64::from(MAX_J),
            });
        }
        let k = c.k();
        let expected = u64::from(j) * (column_count(k) as u64 - 1);
        if c.sum() != expected {
            return Err(Error::CountSumMismatch {
                expected,
                got: c.sum(),
            });
        }
        // each constituent sequence flips every row at least once
        for &entry in c.as_slice() {
            if u32::from(entry) < j {
                return Err(Error::CountBelowMinimum {
                    entry,
                    min: j as u16,
                    j,
                });
            }
        }
        Ok(TupleSpec { j, k, c })
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn counts(&self) -> &TransitionCounts {
        &self.c
    }
}

/// Order of the subgroup of S_k fixing a count vector: the product of
/// the factorials of its value multiplicities.
pub fn stabilizer_order(c: &TransitionCounts) -> u64 {
    let sorted = c.sorted();
    let s = sorted.as_slice();
    let mut order = 1u64;
    let mut run = 1u64;
    for w in s.windows(2) {
        if w[0] == w[1] {
            run += 1;
            order *= run;
        } else {
            run = 1;
        }
    }
    order
}

// --- sparse lattice convolution --------------------------------------

#[derive(Debug, Clone)]
struct LatticePoly {
    k: u8,
    terms: FxHashMap<Key, u64>,
    wrapped: bool,
}

#[inline]
fn key_add(k: usize, a: &Key, b: &Key, caps: Option<&Key>) -> Option<Key> {
    let mut out = [0u16; MAX_K as usize];
    for i in 0..k {
        let s = a[i] + b[i];
        if let Some(c) = caps {
            if s > c[i] {
                return None;
            }
        }
        out[i] = s;
    }
    Some(out)
}

#[inline]
fn accumulate(map: &mut FxHashMap<Key, u64>, key: Key, add: u64, wrapped: &mut bool) {
    let slot = map.entry(key).or_insert(0);
    let (v, overflow) = slot.overflowing_add(add);
    *slot = v;
    *wrapped |= overflow;
}

impl LatticePoly {
    fn from_histogram(hist: &CountHistogram, caps: Option<&Key>) -> Self {
        let k = usize::from(hist.k());
        let mut terms = FxHashMap::default();
        for (c, n) in hist.iter() {
            let key = c.array();
            if let Some(caps) = caps {
                if (0..k).any(|i| key[i] > caps[i]) {
                    continue;
                }
            }
            terms.insert(key, n);
        }
        LatticePoly {
            k: hist.k(),
            terms,
            wrapped: false,
        }
    }

    fn mul(&self, rhs: &Self, caps: Option<&Key>, workers: usize) -> Self {
        debug_assert_eq!(self.k, rhs.k);
        let k = usize::from(self.k);
        let (small, big) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let small_terms: Vec<(Key, u64)> = small.terms.iter().map(|(c, n)| (*c, *n)).collect();
        let mut wrapped = self.wrapped || rhs.wrapped;
        let pair_count = small.terms.len().saturating_mul(big.terms.len());
        let workers = workers.max(1);
        let terms = if workers > 1 && pair_count >= (1 << 21) {
            let big_terms: Vec<(Key, u64)> = big.terms.iter().map(|(c, n)| (*c, *n)).collect();
            let chunk_len = big_terms.len().div_ceil(workers);
            let partials: Vec<(FxHashMap<Key, u64>, bool)> = std::thread::scope(|scope| {
                let handles: Vec<_> = big_terms
                    .chunks(chunk_len)
                    .map(|chunk| {
                        let small_terms = &small_terms;
                        scope.spawn(move || {
                            let mut map = FxHashMap::default();
                            let mut wrapped = false;
                            for (x, nx) in chunk {
                                for (y, ny) in small_terms {
                                    if let Some(key) = key_add(k, x, y, caps) {
                                        let (p, o) = nx.overflowing_mul(*ny);
                                        wrapped |= o;
                                        accumulate(&mut map, key, p, &mut wrapped);
                                    }
                                }
                            }
                            (map, wrapped)
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
            });
            let mut merged: FxHashMap<Key, u64> = FxHashMap::default();
            for (map, w) in partials {
                wrapped |= w;
                for (key, n) in map {
                    accumulate(&mut merged, key, n, &mut wrapped);
                }
            }
            merged
        } else {
            let mut map = FxHashMap::default();
            for (x, nx) in &big.terms {
                for (y, ny) in &small_terms {
                    if let Some(key) = key_add(k, x, y, caps) {
                        let (p, o) = nx.overflowing_mul(*ny);
                        wrapped |= o;
                        accumulate(&mut map, key, p, &mut wrapped);
                    }
                }
            }
            map
        };
        LatticePoly {
            k: self.k,
            terms,
            wrapped,
        }
    }
}

/// Caps for an intermediate convolution power: a point of H^e can only
/// extend to the target if it leaves one flip per row for each of the
/// remaining j - e sequences.
fn stage_caps(target: Option<&Key>, k: usize, j: u32, e: u32) -> Option<Key> {
    target.map(|t| {
        let d = (j - e) as u16;
        let mut caps = [0u16; MAX_K as usize];
        for i in 0..k {
            caps[i] = t[i].saturating_sub(d);
        }
        caps
    })
}

/// H^j by repeated squaring, with per-stage cap restriction when a
/// target point is known.
fn convolution_power(
    hist: &CountHistogram,
    j: u32,
    target: Option<&Key>,
    workers: usize,
) -> LatticePoly {
    let k = usize::from(hist.k());
    let base_caps = stage_caps(target, k, j, 1);
    let mut base = LatticePoly::from_histogram(hist, base_caps.as_ref());
    let mut base_exp = 1u32;
    let mut acc: Option<(LatticePoly, u32)> = None;
    let mut rem = j;
    while rem > 0 {
        if rem & 1 == 1 {
            acc = Some(match acc {
                None => (base.clone(), base_exp),
                Some((a, ae)) => {
                    let e = ae + base_exp;
                    let caps = stage_caps(target, k, j, e);
                    (a.mul(&base, caps.as_ref(), workers), e)
                }
            });
        }
        rem >>= 1;
        if rem > 0 {
            base_exp *= 2;
            let caps = stage_caps(target, k, j, base_exp.min(j));
            base = base.mul(&base, caps.as_ref(), workers);
        }
    }
    acc.expect("j >= 1").0
}

/// An exact tuple count modulo 2^64. `wrapped` records whether any
/// intermediate exceeded the modulus anywhere in the convolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TupleCount {
    pub value: u64,
    pub wrapped: bool,
}

/// Number of ordered j-tuples of delta sequences with transition-count
/// sum `spec.c`, as the j-fold sparse convolution of the histogram.
pub fn tuple_count(spec: &TupleSpec, hist: &CountHistogram, workers: usize) -> Result<TupleCount> {
    if hist.k() != spec.k {
        return Err(Error::BitWidthMismatch {
            left: spec.k,
            right: hist.k(),
        });
    }
    let target = spec.c.array();
    let power = convolution_power(hist, spec.j, Some(&target), workers);
    Ok(TupleCount {
        value: power.terms.get(&target).copied().unwrap_or(0),
        wrapped: power.wrapped,
    })
}

/// Arbitrary-precision recount of a single lattice point; the fallback
/// for wrapped-to-zero convolution values.
pub fn tuple_count_exact(spec: &TupleSpec, hist: &CountHistogram) -> Result<BigUint> {
    if hist.k() != spec.k {
        return Err(Error::BitWidthMismatch {
            left: spec.k,
            right: hist.k(),
        });
    }
    let k = usize::from(spec.k);
    let target = spec.c.array();
    let j = spec.j;
    let base: Vec<(Key, BigUint)> = {
        let caps = stage_caps(Some(&target), k, j, 1).expect("target given");
        hist.iter()
            .filter(|(c, _)| {
                let key = c.array();
                (0..k).all(|i| key[i] <= caps[i])
            })
            .map(|(c, n)| (c.array(), BigUint::from(n)))
            .collect()
    };
    let mut acc: FxHashMap<Key, BigUint> =
        base.iter().map(|(key, n)| (*key, n.clone())).collect();
    for e in 2..=j {
        let caps = stage_caps(Some(&target), k, j, e).expect("target given");
        let mut next: FxHashMap<Key, BigUint> = FxHashMap::default();
        for (x, nx) in &acc {
            for (y, ny) in &base {
                if let Some(key) = key_add(k, x, y, Some(&caps)) {
                    *next.entry(key).or_default() += nx * ny;
                }
            }
        }
        acc = next;
    }
    Ok(acc.remove(&target).unwrap_or_default())
}

/// Parity classification of a tuple spec: is the count of
/// non-isomorphic (resp. non-equivalent) equiparting matrices odd?
#[derive(Debug, Clone, Serialize)]
pub struct ParityReport {
    pub j: u32,
    pub k: u8,
    pub c: TransitionCounts,
    /// Dyadic valuation of the tuple count; None when the count is 0.
    pub nu2_count: Option<u32>,
    pub stab_order: u64,
    pub odd_isomorphic: bool,
    pub odd_equivalent: bool,
    /// Whether the arbitrary-precision fallback was taken.
    #[serde(skip)]
    pub resolved_exactly: bool,
}

pub fn parity_report(
    spec: &TupleSpec,
    hist: &CountHistogram,
    workers: usize,
) -> Result<ParityReport> {
    let count = tuple_count(spec, hist, workers)?;
    let stab = stabilizer_order(spec.counts());
    // low bits are exact under wrapping, so the isomorphic parity and,
    // for nonzero values, the valuation are always trustworthy
    let odd_isomorphic = count.value & 1 == 1;
    let (nu2_count, resolved_exactly) = if count.value != 0 || !count.wrapped {
        (
            (count.value != 0).then(|| count.value.trailing_zeros()),
            false,
        )
    } else {
        let exact = tuple_count_exact(spec, hist)?;
        (exact.trailing_zeros().map(|z| z as u32), true)
    };
    let odd_equivalent = nu2_count == Some(stab.trailing_zeros());
    Ok(ParityReport {
        j: spec.j(),
        k: spec.k(),
        c: *spec.counts(),
        nu2_count,
        stab_order: stab,
        odd_isomorphic,
        odd_equivalent,
        resolved_exactly,
    })
}

// --- multiplicities ---------------------------------------------------

/// Multiset of repetition counts among the members of a tuple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct MultiplicityProfile(Vec<u32>);

impl MultiplicityProfile {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Empty("multiplicity profile"));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Zero { what: "multiplicity" });
        }
        parts.sort_unstable();
        Ok(MultiplicityProfile(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// Repetition profile of a tuple of delta sequences.
pub fn multiplicity(tuple: &[DeltaSequence]) -> Result<MultiplicityProfile> {
    if tuple.is_empty() {
        return Err(Error::Empty("tuple"));
    }
    let k = tuple[0].k();
    let mut reps: FxHashMap<&DeltaSequence, u32> = FxHashMap::default();
    for d in tuple {
        if d.k() != k {
            return Err(Error::BitWidthMismatch { left: k, right: d.k() });
        }
        *reps.entry(d).or_insert(0) += 1;
    }
    MultiplicityProfile::new(reps.into_values().collect())
}

fn partitions_into(n: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        out.push(current.clone());
        return;
    }
    let mut part = max.min(n);
    while part >= 1 {
        current.push(part);
        partitions_into(n - part, part, current, out);
        current.pop();
        part -= 1;
    }
}

/// The only multiplicity profiles that can contribute an odd orbit
/// count: partitions of j whose parts' dyadic digits decompose j's,
/// plus (j/2, j/2) when j is a power of two and the stabilizer is
/// nontrivial.
pub fn admissible_multiplicities(j: u32, stab_order: u64) -> Result<Vec<MultiplicityProfile>> {
    if j == 0 {
        return Err(Error::Zero { what: "tuple length j" });
    }
    if j > MAX_J {
        return Err(Error::TooLarge {
            what: "tuple length j",
            got: u64::from(j),
            limit: u64::from(MAX_J),
        });
    }
    let mut all = Vec::new();
    partitions_into(j, j, &mut Vec::new(), &mut all);
    let mut out = std::collections::BTreeSet::new();
    for parts in all {
        let parts64: Vec<u64> = parts.iter().map(|&p| u64::from(p)).collect();
        if numtheory::digits_decompose(&parts64, u64::from(j))? {
            out.insert(MultiplicityProfile::new(parts)?);
        }
    }
    if j >= 2 && j.is_power_of_two() && stab_order >= 2 {
        out.insert(MultiplicityProfile::new(vec![j / 2, j / 2])?);
    }
    Ok(out.into_iter().collect())
}

// --- scans and closed forms -------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    /// Parity of the raw tuple count; only pairwise-distinct count
    /// vectors can be odd, so others are skipped.
    Isomorphic,
    /// Parity of the orbit count under the diagonal stabilizer action.
    Equivalent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanOutcome {
    /// Minimal max-entry among odd count vectors.
    pub value: u32,
    /// Every sorted representative achieving the minimum, in
    /// lexicographic order.
    pub witnesses: Vec<TransitionCounts>,
}

/// Minimal max-entry over all count vectors whose equiparting-matrix
/// count is odd in the given mode, with the full witness set. Only
/// weakly increasing representatives are examined; parity is
/// S_k-invariant.
pub fn scan(
    j: u32,
    k: u8,
    mode: ScanMode,
    hist: &CountHistogram,
    workers: usize,
) -> Result<ScanOutcome> {
    check_k(k)?;
    if hist.k() != k {
        return Err(Error::BitWidthMismatch {
            left: k,
            right: hist.k(),
        });
    }
    if j == 0 {
        return Err(Error::Zero { what: "tuple length j" });
    }
    if j == 1 && mode == ScanMode::Equivalent {
        return scan_equivalent_single(k, hist);
    }
    let power = convolution_power(hist, j, None, workers);
    let mut best: Option<u32> = None;
    let mut witnesses: Vec<TransitionCounts> = Vec::new();
    for (key, &value) in &power.terms {
        let c = TransitionCounts::from_array(k, *key);
        if !c.is_sorted_ascending() {
            continue;
        }
        let odd = match mode {
            ScanMode::Isomorphic => c.is_pairwise_distinct() && value & 1 == 1,
            ScanMode::Equivalent => {
                let stab_nu2 = stabilizer_order(&c).trailing_zeros();
                if value != 0 {
                    value.trailing_zeros() == stab_nu2
                } else if !power.wrapped {
                    false
                } else {
                    let exact = tuple_count_exact(&TupleSpec::new(j, c)?, hist)?;
                    exact.trailing_zeros() == Some(u64::from(stab_nu2))
                }
            }
        };
        if !odd {
            continue;
        }
        let max = u32::from(c.max_entry());
        if best.is_none_or(|b| max < b) {
            best = Some(max);
            witnesses.clear();
            witnesses.push(c);
        } else if best == Some(max) {
            witnesses.push(c);
        }
    }
    let value = best.ok_or(Error::EmptyScan)?;
    witnesses.sort_unstable();
    Ok(ScanOutcome { value, witnesses })
}

/// j = 1, equivalent mode: the permuting-one-sequence argument needs
/// j > 1, so orbits of single sequences are counted directly for small
/// k. For k = 5 the counts are divided by the stabilizer order, which
/// is valid because S_k acts freely on delta sequences.
fn scan_equivalent_single(k: u8, hist: &CountHistogram) -> Result<ScanOutcome> {
    let mut best: Option<u32> = None;
    let mut witnesses: Vec<TransitionCounts> = Vec::new();
    let mut consider = |c: TransitionCounts, odd: bool| {
        if !odd {
            return;
        }
        let max = u32::from(c.max_entry());
        if best.is_none_or(|b| max < b) {
            best = Some(max);
            witnesses.clear();
            witnesses.push(c);
        } else if best == Some(max) {
            witnesses.push(c);
        }
    };
    if k <= 4 {
        let mut groups: BTreeMap<TransitionCounts, Vec<DeltaSequence>> = BTreeMap::new();
        for d in enumerate(k, &PruneSpec::none())? {
            groups.entry(d.transition_counts()).or_default().push(d);
        }
        let perms = SignedPermutation::permutations(k)?;
        for (c, members) in &groups {
            if !c.is_sorted_ascending() {
                continue;
            }
            let stab: Vec<&SignedPermutation> = perms
                .iter()
                .filter(|p| p.act_counts(c).expect("same k") == *c)
                .collect();
            let mut reps = std::collections::BTreeSet::new();
            for d in members {
                let canonical = stab
                    .iter()
                    .map(|p| p.act_delta(d).expect("same k"))
                    .min()
                    .expect("stabilizer contains the identity");
                reps.insert(canonical);
            }
            consider(*c, reps.len() % 2 == 1);
        }
    } else {
        for (c, n) in hist.iter() {
            if !c.is_sorted_ascending() {
                continue;
            }
            let stab = stabilizer_order(c);
            debug_assert_eq!(n % stab, 0);
            consider(*c, (n / stab) % 2 == 1);
        }
    }
    let value = best.ok_or(Error::EmptyScan)?;
    witnesses.sort_unstable();
    Ok(ScanOutcome { value, witnesses })
}

fn check_closed_form_domain(j: u64, k: u32) -> Result<()> {
    if j == 0 {
        return Err(Error::Zero { what: "mass count j" });
    }
    if k == 0 {
        return Err(Error::Zero { what: "hyperplane count k" });
    }
    if j > 1 << 32 {
        return Err(Error::TooLarge {
            what: "mass count j",
            got: j,
            limit: 1 << 32,
        });
    }
    if k > 24 {
        return Err(Error::TooLarge {
            what: "hyperplane count k",
            got: u64::from(k),
            limit: 24,
        });
    }
    Ok(())
}

/// I(j, k) = 2^{n+k-1} + r for j = 2^n + r, 0 <= r < 2^n: the minimum
/// over count vectors with an odd non-isomorphic count.
pub fn closed_form_i(j: u64, k: u32) -> Result<u64> {
    check_closed_form_domain(j, k)?;
    let n = 63 - j.leading_zeros();
    let r = j - (1 << n);
    Ok((1u64 << (n + k - 1)) + r)
}

/// E(j, k) with its exactness status: for j >= 2 the value
/// 2^{n+k-1} + r under j = 2^n + r, 1 <= r <= 2^n is exact; for j = 1
/// the value 2^{k-2} + 1 is an upper bound, known tight only for
/// k <= 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EquivariantBound {
    pub value: u64,
    pub known_exact: bool,
}

pub fn closed_form_e(j: u64, k: u32) -> Result<EquivariantBound> {
    check_closed_form_domain(j, k)?;
    if j == 1 {
        let value = if k == 1 { 1 } else { (1u64 << (k - 2)) + 1 };
        return Ok(EquivariantBound {
            value,
            known_exact: k <= 5,
        });
    }
    let n = 63 - (j - 1).leading_zeros();
    let r = j - (1 << n);
    debug_assert!(r >= 1 && r <= 1 << n);
    Ok(EquivariantBound {
        value: (1u64 << (n + k - 1)) + r,
        known_exact: true,
    })
}

fn counts_from_u64(k: u8, values: &[u64]) -> Result<TransitionCounts> {
    let mut entries = [0u16; MAX_K as usize];
    for (i, &v) in values.iter().enumerate() {
        entries[i] = u16::try_from(v).map_err(|_| Error::TooLarge {
            what: "transition count entry",
            got: v,
            limit: u64::from(u16::MAX),
        })?;
    }
    Ok(TransitionCounts::from_array(k, entries))
}

/// The witness vector 2^n (1, 2, ..., 2^{k-1}) + w (2, 4, ..., 2^{k-1}, 1)
/// + s (4, 8, ..., 2^{k-1}, 2, 1) with w = min(r, 2^{n-1}), s = r - w,
/// whose non-equivalent count is odd. Strict monotonicity is verified
/// numerically for every instance handed out.
pub fn witness_construction(j: u32, k: u8) -> Result<TransitionCounts> {
    check_k(k)?;
    if k <= 2 {
        return Err(Error::WitnessDomain { requirement: "k > 2" });
    }
    if j < 2 {
        return Err(Error::WitnessDomain { requirement: "j >= 2" });
    }
    if j > MAX_J {
        return Err(Error::TooLarge {
            what: "tuple length j",
            got: u64::from(j),
            limit: u64::from(MAX_J),
        });
    }
    let n = 31 - j.leading_zeros();
    let r = u64::from(j) - (1 << n);
    let w = r.min(1 << (n - 1));
    let s = r - w;
    let pow = u64::from(1u32 << n);
    let ku = usize::from(k);
    let values: Vec<u64> = (1..=ku)
        .map(|i| {
            let base1 = 1u64 << (i - 1);
            let base2 = if i < ku { 1u64 << i } else { 1 };
            let base3 = if i < ku - 1 {
                1u64 << (i + 1)
            } else if i == ku - 1 {
                2
            } else {
                1
            };
            pow * base1 + w * base2 + s * base3
        })
        .collect();
    let c = counts_from_u64(k, &values)?;
    if !values.windows(2).all(|v| v[0] < v[1]) {
        return Err(Error::WitnessNotMonotonic(c));
    }
    Ok(c)
}

/// The witness vector for j = 2^{n+1}: all but the last two entries
/// are 2^{n+2}, ..., 2^{n+k-1} and the last two are both
/// 2^{n+k-1} + 2^n; its non-equivalent count is odd.
pub fn witness_power_of_two(n: u32, k: u8) -> Result<TransitionCounts> {
    check_k(k)?;
    if k < 2 {
        return Err(Error::WitnessDomain { requirement: "k >= 2" });
    }
    if n > 12 {
        return Err(Error::TooLarge {
            what: "power-of-two exponent n",
            got: u64::from(n),
            limit: 12,
        });
    }
    let ku = usize::from(k);
    let tail = (1u64 << (n + u32::from(k) - 1)) + (1u64 << n);
    let values: Vec<u64> = (1..=ku)
        .map(|i| {
            if i <= ku - 2 {
                1u64 << (n + 1 + i as u32)
            } else {
                tail
            }
        })
        .collect();
    counts_from_u64(k, &values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::histogram;

    fn counts(k: u8, c: &[u16]) -> TransitionCounts {
        TransitionCounts::new(k, c).unwrap()
    }

    #[test]
    fn stabilizer_orders() {
        assert_eq!(stabilizer_order(&counts(3, &[4, 5, 5])), 2);
        assert_eq!(stabilizer_order(&counts(4, &[1, 2, 4, 8])), 1);
        assert_eq!(stabilizer_order(&counts(3, &[3, 3, 3])), 6);
        assert_eq!(stabilizer_order(&counts(4, &[5, 3, 5, 3])), 4);
        assert_eq!(stabilizer_order(&counts(5, &[7, 7, 7, 7, 3])), 24);
    }

    #[test]
    fn tuple_spec_validation() {
        assert!(TupleSpec::new(2, counts(2, &[3, 3])).is_ok());
        // wrong sum
        assert!(matches!(
            TupleSpec::new(2, counts(2, &[3, 4])),
            Err(Error::CountSumMismatch { .. })
        ));
        // entry below the per-row minimum
        assert!(matches!(
            TupleSpec::new(3, counts(2, &[2, 7])),
            Err(Error::CountBelowMinimum { .. })
        ));
        assert!(TupleSpec::new(0, counts(2, &[3, 3])).is_err());
    }

    #[test]
    fn tuple_counts_k2() {
        let hist = histogram(2, 1).unwrap();
        let count = |c: &[u16], j| {
            tuple_count(&TupleSpec::new(j, counts(2, c)).unwrap(), &hist, 1)
                .unwrap()
                .value
        };
        assert_eq!(count(&[3, 3], 2), 2);
        assert_eq!(count(&[2, 4], 2), 1);
        assert_eq!(count(&[4, 2], 2), 1);
    }

    #[test]
    fn tuple_count_single_standard() {
        let hist = histogram(3, 1).unwrap();
        let spec = TupleSpec::new(1, counts(3, &[4, 2, 1])).unwrap();
        assert_eq!(tuple_count(&spec, &hist, 1).unwrap().value, 1);
    }

    #[test]
    fn parity_report_k3_power_witness() {
        let hist = histogram(3, 1).unwrap();
        let spec = TupleSpec::new(2, counts(3, &[4, 5, 5])).unwrap();
        let report = parity_report(&spec, &hist, 1).unwrap();
        assert_eq!(report.nu2_count, Some(1));
        assert_eq!(report.stab_order, 2);
        assert!(report.odd_equivalent);
        assert!(!report.odd_isomorphic);
        assert!(!report.resolved_exactly);
    }

    #[test]
    fn parity_report_k4_twice_standard_shape() {
        // the count here is even but not divisible by four
        let hist = histogram(4, 1).unwrap();
        let spec = TupleSpec::new(2, counts(4, &[4, 8, 9, 9])).unwrap();
        let report = parity_report(&spec, &hist, 1).unwrap();
        assert_eq!(report.nu2_count, Some(1));
        assert!(!report.odd_isomorphic);
        assert!(report.odd_equivalent);
    }

    #[test]
    fn parity_report_serialization_schema() {
        let hist = histogram(2, 1).unwrap();
        let spec = TupleSpec::new(2, counts(2, &[3, 3])).unwrap();
        let report = parity_report(&spec, &hist, 1).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "j": 2, "k": 2, "c": [3, 3],
                "nu2_count": 1, "stab_order": 2,
                "odd_isomorphic": false, "odd_equivalent": true
            })
        );
    }

    #[test]
    fn wrapped_zero_falls_back_to_exact() {
        // an artificial histogram large enough to wrap: one bucket of
        // 2^63 sequences makes the 2-fold convolution 2^126 = 0 mod 2^64
        let json = format!(
            "{{\"k\":1,\"total\":\"{}\",\"buckets\":[{{\"c\":[1],\"n\":\"{}\"}}]}}",
            1u64 << 63,
            1u64 << 63
        );
        let hist = CountHistogram::from_cache_json(&json).unwrap();
        let spec = TupleSpec::new(2, counts(1, &[2])).unwrap();
        let raw = tuple_count(&spec, &hist, 1).unwrap();
        assert_eq!(raw.value, 0);
        assert!(raw.wrapped);
        let exact = tuple_count_exact(&spec, &hist).unwrap();
        assert_eq!(exact, BigUint::from(1u8) << 126);
        let report = parity_report(&spec, &hist, 1).unwrap();
        assert!(report.resolved_exactly);
        assert_eq!(report.nu2_count, Some(126));
        assert!(!report.odd_equivalent);
        assert!(!report.odd_isomorphic);
    }

    #[test]
    fn multiplicity_profiles() {
        let d1 = DeltaSequence::standard(3).unwrap();
        let d2 = DeltaSequence::new(3, vec![2, 1, 2, 3, 2, 1, 2]).unwrap();
        let d3 = DeltaSequence::new(3, vec![3, 1, 3, 2, 3, 1, 3]).unwrap();
        let profile = |t: &[&DeltaSequence]| {
            multiplicity(&t.iter().map(|d| (*d).clone()).collect::<Vec<_>>())
                .unwrap()
                .parts()
                .to_vec()
        };
        assert_eq!(profile(&[&d1, &d1, &d2, &d2]), vec![2, 2]);
        assert_eq!(profile(&[&d1, &d1, &d1, &d2, &d2]), vec![2, 3]);
        assert_eq!(profile(&[&d1, &d1, &d2, &d3, &d3]), vec![1, 2, 2]);
        assert!(multiplicity(&[]).is_err());
    }

    #[test]
    fn admissible_multiplicity_profiles() {
        let parts = |j, stab| {
            admissible_multiplicities(j, stab)
                .unwrap()
                .iter()
                .map(|p| p.parts().to_vec())
                .collect::<Vec<_>>()
        };
        assert_eq!(parts(1, 1), vec![vec![1]]);
        assert_eq!(parts(2, 1), vec![vec![2]]);
        assert_eq!(parts(2, 2), vec![vec![1, 1], vec![2]]);
        // 3 = 11b splits as {1, 2} or stays whole
        assert_eq!(parts(3, 6), vec![vec![1, 2], vec![3]]);
        assert_eq!(parts(4, 1), vec![vec![4]]);
        assert_eq!(parts(4, 2), vec![vec![2, 2], vec![4]]);
        assert_eq!(
            parts(7, 1),
            vec![
                vec![1, 2, 4],
                vec![1, 6],
                vec![2, 5],
                vec![3, 4],
                vec![7]
            ]
        );
    }

    #[test]
    fn scan_k3_small() {
        let hist = histogram(3, 1).unwrap();
        let outcome = scan(1, 3, ScanMode::Isomorphic, &hist, 1).unwrap();
        assert_eq!(outcome.value, 4);
        assert_eq!(outcome.witnesses, vec![counts(3, &[1, 2, 4])]);

        let outcome = scan(1, 3, ScanMode::Equivalent, &hist, 1).unwrap();
        assert_eq!(outcome.value, 3);
        assert_eq!(
            outcome.witnesses,
            vec![counts(3, &[1, 3, 3]), counts(3, &[2, 2, 3])]
        );

        let outcome = scan(2, 3, ScanMode::Isomorphic, &hist, 1).unwrap();
        assert_eq!(outcome.value, 8);
        assert_eq!(outcome.witnesses, vec![counts(3, &[2, 4, 8])]);

        let outcome = scan(2, 3, ScanMode::Equivalent, &hist, 1).unwrap();
        assert_eq!(outcome.value, 5);
        assert_eq!(outcome.witnesses, vec![counts(3, &[4, 5, 5])]);
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_i(1, 4).unwrap(), 8);
        assert_eq!(closed_form_i(3, 4).unwrap(), 17);
        assert_eq!(closed_form_i(4, 3).unwrap(), 16);
        assert_eq!(closed_form_i(5, 1).unwrap(), 5);

        assert_eq!(
            closed_form_e(2, 4).unwrap(),
            EquivariantBound { value: 9, known_exact: true }
        );
        assert_eq!(
            closed_form_e(4, 3).unwrap(),
            EquivariantBound { value: 10, known_exact: true }
        );
        assert_eq!(
            closed_form_e(1, 4).unwrap(),
            EquivariantBound { value: 5, known_exact: true }
        );
        assert_eq!(
            closed_form_e(1, 7).unwrap(),
            EquivariantBound { value: 33, known_exact: false }
        );
        assert_eq!(closed_form_e(1, 1).unwrap().value, 1);
        assert!(closed_form_i(0, 3).is_err());
        assert!(closed_form_e(3, 0).is_err());
    }

    #[test]
    fn witness_construction_instances() {
        assert_eq!(
            witness_construction(3, 4).unwrap(),
            counts(4, &[4, 8, 16, 17])
        );
        assert_eq!(
            witness_construction(7, 4).unwrap(),
            counts(4, &[12, 24, 34, 35])
        );
        assert_eq!(
            witness_construction(6, 5).unwrap(),
            counts(5, &[8, 16, 32, 64, 66])
        );
        assert!(witness_construction(1, 4).is_err());
        assert!(witness_construction(3, 2).is_err());
    }

    #[test]
    fn witness_power_of_two_instances() {
        assert_eq!(witness_power_of_two(0, 3).unwrap(), counts(3, &[4, 5, 5]));
        assert_eq!(
            witness_power_of_two(0, 4).unwrap(),
            counts(4, &[4, 8, 9, 9])
        );
        assert_eq!(witness_power_of_two(1, 2).unwrap(), counts(2, &[6, 6]));
        assert_eq!(
            witness_power_of_two(0, 5).unwrap(),
            counts(5, &[4, 8, 16, 17, 17])
        );
        assert!(witness_power_of_two(0, 1).is_err());
    }

    #[test]
    fn witness_sums_match_tuple_length() {
        for k in 3..=5u8 {
            for j in 2..=16u32 {
                let c = witness_construction(j, k).unwrap();
                assert_eq!(c.sum(), u64::from(j) * ((1 << k) - 1));
            }
        }
        for k in 2..=5u8 {
            for n in 0..=3u32 {
                let c = witness_power_of_two(n, k).unwrap();
                let j = u64::from(2u32 << n);
                assert_eq!(c.sum(), j * ((1 << k) - 1));
            }
        }
    }
}
