//! Gray codes, delta sequences, transition counts and the action of
//! the signed symmetric group (Z/2)^k ⋊ S_k.
//!
//! Vertices of the k-cube are k-bit machine words; bit b of a word is
//! row b+1. Row indices are 1-based everywhere they are visible.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported bit width. A 2^k-bit visited set must fit in one
/// machine word, and enumeration beyond k = 5 is out of reach anyway.
pub const MAX_K: u8 = 6;

pub(crate) fn check_k(k: u8) -> Result<()> {
    if k == 0 || k > MAX_K {
        return Err(Error::BitWidth {
            got: u32::from(k),
            max: u32::from(MAX_K),
        });
    }
    Ok(())
}

/// Number of columns of a k-bit Gray code.
pub(crate) fn column_count(k: u8) -> usize {
    1usize << k
}

/// Walks `entries` from vertex 0 and reports the step of the first
/// revisit, if any. Validity does not depend on the start vertex: the
/// walk from any other start is the XOR translate of this one.
fn first_revisit(entries: &[u8]) -> Option<usize> {
    let mut vertex = 0u32;
    let mut visited = 1u64;
    for (step, &row) in entries.iter().enumerate() {
        vertex ^= 1 << (row - 1);
        let bit = 1u64 << vertex;
        if visited & bit != 0 {
            return Some(step + 1);
        }
        visited |= bit;
    }
    debug_assert_eq!(visited.count_ones() as usize, entries.len() + 1);
    None
}

/// A k-bit Gray code: all 2^k vertices of the k-cube in an order where
/// consecutive vertices differ in exactly one bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrayCode {
    k: u8,
    columns: Vec<u32>,
}

impl GrayCode {
    /// Validates and wraps an explicit column list.
    pub fn new(k: u8, columns: Vec<u32>) -> Result<Self> {
        check_k(k)?;
        if columns.len() != column_count(k) {
            return Err(Error::InvalidGrayCode("wrong number of columns"));
        }
        let mut seen = 0u64;
        for &c in &columns {
            if c >= (1 << k) {
                return Err(Error::VertexOutOfRange { vertex: c, k });
            }
            if seen & (1u64 << c) != 0 {
                return Err(Error::InvalidGrayCode("repeated column"));
            }
            seen |= 1u64 << c;
        }
        for w in columns.windows(2) {
            if (w[0] ^ w[1]).count_ones() != 1 {
                return Err(Error::InvalidGrayCode(
                    "consecutive columns differ in more than one bit",
                ));
            }
        }
        Ok(GrayCode { k, columns })
    }

    pub(crate) fn from_columns_unchecked(k: u8, columns: Vec<u32>) -> Self {
        debug_assert!(GrayCode::new(k, columns.clone()).is_ok());
        GrayCode { k, columns }
    }

    /// The reflected binary code: traverse the front facet by the
    /// standard (k-1)-bit code, then the back facet in reverse.
    pub fn standard(k: u8) -> Result<Self> {
        check_k(k)?;
        let mut columns = vec![0u32, 1];
        for bit in 1..u32::from(k) {
            let mirrored = columns.iter().rev().map(|c| c | (1 << bit));
            columns = columns.iter().copied().chain(mirrored.collect_vec()).collect();
        }
        Ok(GrayCode { k, columns })
    }

    /// The unique Gray code with the given delta sequence and first
    /// column.
    pub fn from_delta(delta: &DeltaSequence, start: u32) -> Result<Self> {
        let k = delta.k();
        if start >= (1 << k) {
            return Err(Error::VertexOutOfRange { vertex: start, k });
        }
        let mut columns = Vec::with_capacity(column_count(k));
        let mut vertex = start;
        columns.push(vertex);
        for &row in delta.entries() {
            vertex ^= 1 << (row - 1);
            columns.push(vertex);
        }
        Ok(GrayCode::from_columns_unchecked(k, columns))
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn columns(&self) -> &[u32] {
        &self.columns
    }

    /// Row-major 0/1 matrix, rows 1..k top to bottom.
    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.k)
            .map(|bit| {
                self.columns
                    .iter()
                    .map(|c| ((c >> bit) & 1) as u8)
                    .collect()
            })
            .collect()
    }

    /// The delta sequence: entry i is the row in which columns i and
    /// i+1 differ.
    pub fn delta(&self) -> DeltaSequence {
        let entries = self
            .columns
            .windows(2)
            .map(|w| (w[0] ^ w[1]).trailing_zeros() as u8 + 1)
            .collect();
        DeltaSequence::from_entries_unchecked(self.k, entries)
    }

    pub fn transition_counts(&self) -> TransitionCounts {
        self.delta().transition_counts()
    }
}

/// The bit-change schedule of a Gray code: 2^k - 1 row indices in
/// 1..=k whose walk from any start vertex never revisits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaSequence {
    k: u8,
    entries: Vec<u8>,
}

impl DeltaSequence {
    pub fn new(k: u8, entries: Vec<u8>) -> Result<Self> {
        check_k(k)?;
        let expected = column_count(k) - 1;
        if entries.len() != expected {
            return Err(Error::DeltaLength {
                k,
                expected,
                got: entries.len(),
            });
        }
        for &row in &entries {
            if row == 0 || row > k {
                return Err(Error::RowOutOfRange {
                    row: u32::from(row),
                    k,
                });
            }
        }
        if let Some(step) = first_revisit(&entries) {
            return Err(Error::RevisitedVertex { step });
        }
        Ok(DeltaSequence { k, entries })
    }

    pub(crate) fn from_entries_unchecked(k: u8, entries: Vec<u8>) -> Self {
        debug_assert!(DeltaSequence::new(k, entries.clone()).is_ok());
        DeltaSequence { k, entries }
    }

    /// Delta sequence of the standard k-bit Gray code: entry i is
    /// 1 + nu2(i).
    pub fn standard(k: u8) -> Result<Self> {
        check_k(k)?;
        let entries = (1..column_count(k) as u32)
            .map(|i| i.trailing_zeros() as u8 + 1)
            .collect();
        Ok(DeltaSequence::from_entries_unchecked(k, entries))
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    /// 1-based row indices.
    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn transition_counts(&self) -> TransitionCounts {
        let mut counts = TransitionCounts::zero(self.k);
        for &row in &self.entries {
            counts.counts[usize::from(row) - 1] += 1;
        }
        counts
    }

    /// The reversed schedule; walking a Hamiltonian path backwards is
    /// again a Hamiltonian path.
    pub fn reverse(&self) -> DeltaSequence {
        let entries = self.entries.iter().rev().copied().collect();
        DeltaSequence::from_entries_unchecked(self.k, entries)
    }
}

impl fmt::Display for DeltaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.entries.iter().join(","))
    }
}

impl FromStr for DeltaSequence {
    type Err = Error;

    /// Parses comma-separated 1-based rows; the bit width is inferred
    /// from the length (2^k - 1 entries).
    fn from_str(s: &str) -> Result<Self> {
        let entries: Vec<u8> = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::RowOutOfRange { row: 0, k: 0 })
            })
            .collect::<Result<_>>()?;
        let len = entries.len() as u64 + 1;
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::DeltaLength {
                k: 0,
                expected: 0,
                got: entries.len(),
            });
        }
        let k = len.trailing_zeros() as u8;
        DeltaSequence::new(k, entries)
    }
}

/// Per-row flip counts of a delta sequence, or the entrywise sum of
/// several; the lattice point the parity classification lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransitionCounts {
    k: u8,
    counts: [u16; MAX_K as usize],
}

impl TransitionCounts {
    pub fn new(k: u8, counts: &[u16]) -> Result<Self> {
        check_k(k)?;
        if counts.len() != usize::from(k) {
            return Err(Error::BitWidthMismatch {
                left: k,
                right: counts.len() as u8,
            });
        }
        let mut c = TransitionCounts::zero(k);
        c.counts[..counts.len()].copy_from_slice(counts);
        Ok(c)
    }

    pub fn zero(k: u8) -> Self {
        TransitionCounts {
            k,
            counts: [0; MAX_K as usize],
        }
    }

    pub(crate) fn from_array(k: u8, counts: [u16; MAX_K as usize]) -> Self {
        TransitionCounts { k, counts }
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn as_slice(&self) -> &[u16] {
        &self.counts[..usize::from(self.k)]
    }

    pub(crate) fn array(&self) -> [u16; MAX_K as usize] {
        self.counts
    }

    pub fn sum(&self) -> u64 {
        self.as_slice().iter().map(|&c| u64::from(c)).sum()
    }

    pub fn max_entry(&self) -> u16 {
        self.as_slice().iter().copied().max().unwrap_or(0)
    }

    /// Entries in weakly increasing order; the canonical representative
    /// of the S_k-orbit.
    pub fn sorted(&self) -> TransitionCounts {
        let mut c = *self;
        c.counts[..usize::from(self.k)].sort_unstable();
        c
    }

    pub fn is_sorted_ascending(&self) -> bool {
        self.as_slice().windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_pairwise_distinct(&self) -> bool {
        let s = self.sorted();
        s.as_slice().windows(2).all(|w| w[0] < w[1])
    }

    /// Entrywise domination.
    pub fn dominated_by(&self, caps: &TransitionCounts) -> bool {
        self.k == caps.k
            && self
                .as_slice()
                .iter()
                .zip(caps.as_slice())
                .all(|(c, cap)| c <= cap)
    }
}

impl fmt::Display for TransitionCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_slice().iter().join(","))
    }
}

impl FromStr for TransitionCounts {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let counts: Vec<u16> = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u16>()
                    .map_err(|_| Error::RowOutOfRange { row: 0, k: 0 })
            })
            .collect::<Result<_>>()?;
        if counts.is_empty() || counts.len() > usize::from(MAX_K) {
            return Err(Error::BitWidth {
                got: counts.len() as u32,
                max: u32::from(MAX_K),
            });
        }
        TransitionCounts::new(counts.len() as u8, &counts)
    }
}

impl Serialize for TransitionCounts {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(usize::from(self.k)))?;
        for c in self.as_slice() {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

/// An element of (Z/2)^k ⋊ S_k. Acting on a vertex permutes its bits
/// and then flips the rows in the sign mask: row i of the input lands
/// in row perm(i) of the output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    k: u8,
    /// 0-based images: row i+1 maps to row perm[i]+1.
    perm: [u8; MAX_K as usize],
    /// Bit i set = invert all bits of (output) row i+1.
    signs: u8,
}

impl SignedPermutation {
    pub fn identity(k: u8) -> Result<Self> {
        check_k(k)?;
        let mut perm = [0u8; MAX_K as usize];
        for (i, p) in perm.iter_mut().enumerate() {
            *p = i as u8;
        }
        Ok(SignedPermutation { k, perm, signs: 0 })
    }

    /// `perm` lists the 1-based image of each row; `signs` marks rows
    /// to invert after permuting.
    pub fn new(k: u8, perm: &[u8], signs: &[bool]) -> Result<Self> {
        check_k(k)?;
        if perm.len() != usize::from(k) || signs.len() != usize::from(k) {
            return Err(Error::NotABijection { k });
        }
        let mut images = [0u8; MAX_K as usize];
        let mut seen = 0u8;
        for (i, &p) in perm.iter().enumerate() {
            if p == 0 || p > k || seen & (1 << (p - 1)) != 0 {
                return Err(Error::NotABijection { k });
            }
            seen |= 1 << (p - 1);
            images[i] = p - 1;
        }
        let mut mask = 0u8;
        for (i, &s) in signs.iter().enumerate() {
            if s {
                mask |= 1 << i;
            }
        }
        Ok(SignedPermutation {
            k,
            perm: images,
            signs: mask,
        })
    }

    /// Swap of rows a and b, no sign flips.
    pub fn transposition(k: u8, a: u8, b: u8) -> Result<Self> {
        let mut g = SignedPermutation::identity(k)?;
        if a == 0 || a > k {
            return Err(Error::RowOutOfRange { row: u32::from(a), k });
        }
        if b == 0 || b > k {
            return Err(Error::RowOutOfRange { row: u32::from(b), k });
        }
        g.perm.swap(usize::from(a) - 1, usize::from(b) - 1);
        Ok(g)
    }

    /// Pure sign flip of a single row.
    pub fn sign_flip(k: u8, row: u8) -> Result<Self> {
        if row == 0 || row > k {
            return Err(Error::RowOutOfRange { row: u32::from(row), k });
        }
        let mut g = SignedPermutation::identity(k)?;
        g.signs = 1 << (row - 1);
        Ok(g)
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn is_identity(&self) -> bool {
        self.signs == 0 && (0..self.k).all(|i| self.perm[usize::from(i)] == i)
    }

    /// 1-based image of a 1-based row.
    pub fn image(&self, row: u8) -> Result<u8> {
        if row == 0 || row > self.k {
            return Err(Error::RowOutOfRange {
                row: u32::from(row),
                k: self.k,
            });
        }
        Ok(self.perm[usize::from(row) - 1] + 1)
    }

    pub fn flips_row(&self, row: u8) -> bool {
        row >= 1 && row <= self.k && self.signs & (1 << (row - 1)) != 0
    }

    fn permute_mask(&self, mask: u8) -> u8 {
        let mut out = 0u8;
        for i in 0..usize::from(self.k) {
            if mask & (1 << i) != 0 {
                out |= 1 << self.perm[i];
            }
        }
        out
    }

    /// Group law matching action composition:
    /// (g.compose(h)).act_vertex(v) == g.act_vertex(h.act_vertex(v)).
    pub fn compose(&self, other: &SignedPermutation) -> Result<SignedPermutation> {
        if self.k != other.k {
            return Err(Error::BitWidthMismatch {
                left: self.k,
                right: other.k,
            });
        }
        let mut perm = [0u8; MAX_K as usize];
        for i in 0..usize::from(self.k) {
            perm[i] = self.perm[usize::from(other.perm[i])];
        }
        Ok(SignedPermutation {
            k: self.k,
            perm,
            signs: self.signs ^ self.permute_mask(other.signs),
        })
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut perm = [0u8; MAX_K as usize];
        for i in 0..usize::from(self.k) {
            perm[usize::from(self.perm[i])] = i as u8;
        }
        let inv = SignedPermutation {
            k: self.k,
            perm,
            signs: 0,
        };
        let signs = inv.permute_mask(self.signs);
        SignedPermutation { signs, ..inv }
    }

    pub fn act_vertex(&self, vertex: u32) -> u32 {
        let mut out = 0u32;
        for i in 0..usize::from(self.k) {
            if vertex & (1 << i) != 0 {
                out |= 1 << self.perm[i];
            }
        }
        out ^ u32::from(self.signs)
    }

    /// Permutes rows and inverts the flagged ones; a free action on
    /// Gray codes.
    pub fn act_code(&self, code: &GrayCode) -> Result<GrayCode> {
        if self.k != code.k() {
            return Err(Error::BitWidthMismatch {
                left: self.k,
                right: code.k(),
            });
        }
        let columns = code.columns().iter().map(|&c| self.act_vertex(c)).collect();
        Ok(GrayCode::from_columns_unchecked(self.k, columns))
    }

    /// Maps every entry through the permutation part; signs act
    /// trivially on delta sequences.
    pub fn act_delta(&self, delta: &DeltaSequence) -> Result<DeltaSequence> {
        if self.k != delta.k() {
            return Err(Error::BitWidthMismatch {
                left: self.k,
                right: delta.k(),
            });
        }
        let entries = delta
            .entries()
            .iter()
            .map(|&row| self.perm[usize::from(row) - 1] + 1)
            .collect();
        Ok(DeltaSequence::from_entries_unchecked(self.k, entries))
    }

    /// The induced action on transition counts: count of row i moves
    /// to row perm(i).
    pub fn act_counts(&self, counts: &TransitionCounts) -> Result<TransitionCounts> {
        if self.k != counts.k() {
            return Err(Error::BitWidthMismatch {
                left: self.k,
                right: counts.k(),
            });
        }
        let mut out = TransitionCounts::zero(self.k);
        for i in 0..usize::from(self.k) {
            out.counts[usize::from(self.perm[i])] = counts.counts[i];
        }
        Ok(out)
    }

    /// All k! pure permutations (signs zero).
    pub fn permutations(k: u8) -> Result<Vec<SignedPermutation>> {
        check_k(k)?;
        let out = (0..k)
            .permutations(usize::from(k))
            .map(|p| {
                let mut perm = [0u8; MAX_K as usize];
                perm[..p.len()].copy_from_slice(&p);
                SignedPermutation { k, perm, signs: 0 }
            })
            .collect();
        Ok(out)
    }

    /// All 2^k * k! group elements.
    pub fn elements(k: u8) -> Result<Vec<SignedPermutation>> {
        let perms = SignedPermutation::permutations(k)?;
        let mut out = Vec::with_capacity(perms.len() << k);
        for p in perms {
            for signs in 0..(1u8 << k) as u16 {
                out.push(SignedPermutation {
                    signs: signs as u8,
                    ..p
                });
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_code_matches_reflected_construction() {
        // k=1 per definition.
        assert_eq!(GrayCode::standard(1).unwrap().columns(), &[0, 1]);
        // k=3 against the explicit 3x8 matrix.
        let g = GrayCode::standard(3).unwrap();
        assert_eq!(
            g.rows(),
            vec![
                vec![0, 1, 1, 0, 0, 1, 1, 0],
                vec![0, 0, 1, 1, 1, 1, 0, 0],
                vec![0, 0, 0, 0, 1, 1, 1, 1],
            ]
        );
        // The reflected code coincides with i ^ (i >> 1).
        for k in 1..=MAX_K {
            let g = GrayCode::standard(k).unwrap();
            for (i, &c) in g.columns().iter().enumerate() {
                assert_eq!(c, (i ^ (i >> 1)) as u32);
            }
        }
        assert!(GrayCode::standard(0).is_err());
        assert!(GrayCode::standard(MAX_K + 1).is_err());
    }

    #[test]
    fn standard_delta_sequences() {
        assert_eq!(
            GrayCode::standard(3).unwrap().delta().entries(),
            &[1, 2, 1, 3, 1, 2, 1]
        );
        assert_eq!(
            GrayCode::standard(4).unwrap().delta().entries(),
            &[1, 2, 1, 3, 1, 2, 1, 4, 1, 2, 1, 3, 1, 2, 1]
        );
        // Dual route: the dyadic-valuation law gives the same sequence.
        for k in 1..=MAX_K {
            assert_eq!(
                GrayCode::standard(k).unwrap().delta(),
                DeltaSequence::standard(k).unwrap()
            );
        }
    }

    #[test]
    fn standard_transition_counts() {
        let c = DeltaSequence::standard(3).unwrap().transition_counts();
        assert_eq!(c.as_slice(), &[4, 2, 1]);
        for k in 1..=MAX_K {
            let c = DeltaSequence::standard(k).unwrap().transition_counts();
            let expected: Vec<u16> = (0..k).map(|i| 1 << (k - 1 - i)).collect();
            assert_eq!(c.as_slice(), expected.as_slice());
            assert_eq!(c.sum(), (1 << k) - 1);
        }
    }

    #[test]
    fn counts_of_explicit_sequence() {
        let d = DeltaSequence::new(2, vec![2, 1, 2]).unwrap();
        assert_eq!(d.transition_counts().as_slice(), &[1, 2]);
    }

    #[test]
    fn from_delta_round_trip() {
        let d = DeltaSequence::new(3, vec![1, 2, 1, 3, 1, 2, 1]).unwrap();
        let g = GrayCode::from_delta(&d, 0).unwrap();
        assert_eq!(g, GrayCode::standard(3).unwrap());

        let d1 = DeltaSequence::new(1, vec![1]).unwrap();
        assert_eq!(GrayCode::from_delta(&d1, 0).unwrap().columns(), &[0, 1]);

        // start (1,0) means bit of row 1 set: word 0b01.
        let d2 = DeltaSequence::new(2, vec![1, 2, 1]).unwrap();
        let g2 = GrayCode::from_delta(&d2, 0b01).unwrap();
        assert_eq!(g2.columns(), &[0b01, 0b00, 0b10, 0b11]);

        assert!(GrayCode::from_delta(&d2, 4).is_err());
    }

    #[test]
    fn invalid_delta_sequences_rejected() {
        assert!(matches!(
            DeltaSequence::new(2, vec![1, 1, 2]),
            Err(Error::RevisitedVertex { step: 2 })
        ));
        assert!(matches!(
            DeltaSequence::new(2, vec![1, 2]),
            Err(Error::DeltaLength { .. })
        ));
        assert!(matches!(
            DeltaSequence::new(2, vec![1, 3, 1]),
            Err(Error::RowOutOfRange { .. })
        ));
        assert!(DeltaSequence::new(0, vec![]).is_err());
    }

    #[test]
    fn invalid_gray_codes_rejected() {
        assert!(GrayCode::new(2, vec![0, 1, 3]).is_err());
        assert!(GrayCode::new(2, vec![0, 1, 3, 1]).is_err());
        assert!(GrayCode::new(2, vec![0, 3, 1, 2]).is_err());
        assert!(GrayCode::new(2, vec![0, 1, 3, 4]).is_err());
    }

    #[test]
    fn reverse_is_involution_and_valid() {
        let d = DeltaSequence::standard(3).unwrap();
        assert_eq!(d.reverse(), d); // palindrome
        let d = DeltaSequence::new(3, vec![1, 2, 3, 2, 1, 2, 3]).unwrap();
        let r = d.reverse();
        assert_eq!(r.entries(), &[3, 2, 1, 2, 3, 2, 1]);
        assert_eq!(r.reverse(), d);
        assert_eq!(r.transition_counts(), d.transition_counts());
        assert!(DeltaSequence::new(3, r.entries().to_vec()).is_ok());
    }

    #[test]
    fn parse_and_display() {
        let d: DeltaSequence = "1,2,1,3,1,2,1".parse().unwrap();
        assert_eq!(d.k(), 3);
        assert_eq!(d.to_string(), "1,2,1,3,1,2,1");
        assert!("1,2".parse::<DeltaSequence>().is_err()); // length not 2^k - 1
        assert!("1,1,1".parse::<DeltaSequence>().is_err()); // revisit
        assert!("x,2,1".parse::<DeltaSequence>().is_err());

        let c: TransitionCounts = "4,5,5".parse().unwrap();
        assert_eq!(c.as_slice(), &[4, 5, 5]);
        assert_eq!(c.to_string(), "4,5,5");
        assert!("1,2,3,4,5,6,7".parse::<TransitionCounts>().is_err());
    }

    #[test]
    fn counts_helpers() {
        let c = TransitionCounts::new(3, &[4, 5, 5]).unwrap();
        assert_eq!(c.sum(), 14);
        assert_eq!(c.max_entry(), 5);
        assert!(!c.is_pairwise_distinct());
        let s = TransitionCounts::new(3, &[5, 4, 5]).unwrap().sorted();
        assert_eq!(s.as_slice(), &[4, 5, 5]);
        let caps = TransitionCounts::new(3, &[4, 6, 5]).unwrap();
        assert!(c.dominated_by(&caps));
        assert!(!caps.dominated_by(&c));
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            "[4,5,5]"
        );
    }

    #[test]
    fn group_axioms() {
        for k in 1..=4u8 {
            let elements = SignedPermutation::elements(k).unwrap();
            assert_eq!(
                elements.len(),
                (1usize << k) * (1..=usize::from(k)).product::<usize>()
            );
            let id = SignedPermutation::identity(k).unwrap();
            for g in &elements {
                assert_eq!(g.compose(&id).unwrap(), *g);
                assert_eq!(id.compose(g).unwrap(), *g);
                assert!(g.compose(&g.inverse()).unwrap().is_identity());
                assert!(g.inverse().compose(g).unwrap().is_identity());
            }
            // associativity on a slice of triples
            for g in elements.iter().step_by(7) {
                for h in elements.iter().step_by(11) {
                    for f in elements.iter().step_by(13) {
                        let left = g.compose(h).unwrap().compose(f).unwrap();
                        let right = g.compose(&h.compose(f).unwrap()).unwrap();
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn action_is_action() {
        let code = GrayCode::standard(3).unwrap();
        for g in SignedPermutation::elements(3).unwrap().iter().step_by(3) {
            for h in SignedPermutation::elements(3).unwrap().iter().step_by(5) {
                let gh = g.compose(h).unwrap();
                assert_eq!(
                    gh.act_code(&code).unwrap(),
                    g.act_code(&h.act_code(&code).unwrap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn action_examples() {
        let id = SignedPermutation::identity(3).unwrap();
        let g3 = GrayCode::standard(3).unwrap();
        assert_eq!(id.act_code(&g3).unwrap(), g3);

        let flip = SignedPermutation::sign_flip(1, 1).unwrap();
        let g1 = GrayCode::standard(1).unwrap();
        assert_eq!(flip.act_code(&g1).unwrap().columns(), &[1, 0]);

        let swap = SignedPermutation::transposition(3, 1, 2).unwrap();
        let d = DeltaSequence::standard(3).unwrap();
        assert_eq!(swap.act_delta(&d).unwrap().entries(), &[2, 1, 2, 3, 2, 1, 2]);

        // pure signs act trivially on delta sequences
        for row in 1..=3 {
            let s = SignedPermutation::sign_flip(3, row).unwrap();
            assert_eq!(s.act_delta(&d).unwrap(), d);
        }
    }

    #[test]
    fn delta_map_is_equivariant() {
        let d = DeltaSequence::new(3, vec![2, 3, 2, 1, 2, 3, 2]).unwrap();
        let code = GrayCode::from_delta(&d, 0b101).unwrap();
        for g in SignedPermutation::elements(3).unwrap() {
            let via_code = g.act_code(&code).unwrap().delta();
            let via_delta = g.act_delta(&code.delta()).unwrap();
            assert_eq!(via_code, via_delta);
            // counts are equivariant as well
            assert_eq!(
                via_delta.transition_counts(),
                g.act_counts(&d.transition_counts()).unwrap()
            );
        }
    }

    #[test]
    fn mismatched_widths_rejected() {
        let g = SignedPermutation::identity(2).unwrap();
        let code = GrayCode::standard(3).unwrap();
        assert!(g.act_code(&code).is_err());
        assert!(g.act_delta(&code.delta()).is_err());
        let c2 = TransitionCounts::new(3, &[4, 2, 1]).unwrap();
        assert!(g.act_counts(&c2).is_err());
    }

    #[test]
    fn bad_permutations_rejected() {
        assert!(SignedPermutation::new(3, &[1, 1, 2], &[false; 3]).is_err());
        assert!(SignedPermutation::new(3, &[1, 2, 4], &[false; 3]).is_err());
        assert!(SignedPermutation::new(3, &[1, 2], &[false; 3]).is_err());
    }
}
