//! Semilattices in the radical lattice `Λ = Zσ_1 ⊕ … ⊕ Zσ_ν`, encoded by
//! their supporting classes: `S` is the union of the cosets `τ_J + 2Λ` over the
//! subsets `J` in the class, where `τ_J = Σ_{r∈J} σ_r`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exactlinalg::Scalar;

/// Largest nullity whose subsets fit the bitmask encoding.
pub const MAX_NULLITY: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemilatticeError {
    #[error("nullity {0} exceeds the supported maximum {MAX_NULLITY}")]
    NullityTooLarge(usize),
    #[error("no standard semilattice with nullity {nullity} and index {index}")]
    NotInTable { nullity: usize, index: usize },
    #[error("invalid supporting class: {0}")]
    Invalid(String),
    #[error("cannot parse supporting class at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("element {element} out of range 1..={nullity}")]
    OutOfRange { element: usize, nullity: usize },
    #[error("vector has {got} radical coordinates, expected {expected}")]
    Length { got: usize, expected: usize },
}

/// A subset of `{1..ν}` stored as a bitmask (bit `r-1` set iff `r` present).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_elements<I: IntoIterator<Item = usize>>(elems: I) -> Subset {
        Subset(elems.into_iter().fold(0u64, |m, r| m | (1 << (r - 1))))
    }

    pub fn singleton(r: usize) -> Subset {
        Subset(1 << (r - 1))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, r: usize) -> bool {
        r >= 1 && self.0 & (1 << (r - 1)) != 0
    }

    pub fn elements(self) -> Vec<usize> {
        (0..64).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    pub fn symmetric_difference(self, other: Subset) -> Subset {
        Subset(self.0 ^ other.0)
    }
}

/// Ordered by size, then lexicographically by elements.
impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.elements().cmp(&other.elements()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.elements().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Set of subsets of `{1..ν}`, not necessarily valid.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SupportClass {
    nullity: usize,
    subsets: BTreeSet<Subset>,
}

impl SupportClass {
    pub fn new<I: IntoIterator<Item = Subset>>(nullity: usize, subsets: I) -> Result<Self, SemilatticeError> {
        if nullity > MAX_NULLITY {
            return Err(SemilatticeError::NullityTooLarge(nullity));
        }
        let subsets: BTreeSet<Subset> = subsets.into_iter().collect();
        for s in &subsets {
            if let Some(&e) = s.elements().iter().find(|&&e| e > nullity) {
                return Err(SemilatticeError::OutOfRange { element: e, nullity });
            }
        }
        Ok(SupportClass { nullity, subsets })
    }

    pub fn from_lists(nullity: usize, lists: &[&[usize]]) -> Result<Self, SemilatticeError> {
        for l in lists {
            if let Some(&e) = l.iter().find(|&&e| e == 0 || e > nullity) {
                return Err(SemilatticeError::OutOfRange { element: e, nullity });
            }
        }
        Self::new(nullity, lists.iter().map(|l| Subset::from_elements(l.iter().copied())))
    }

    /// All `2^ν` subsets: the class of the full lattice `Λ`.
    pub fn full(nullity: usize) -> Result<Self, SemilatticeError> {
        if nullity > 20 {
            return Err(SemilatticeError::NullityTooLarge(nullity));
        }
        Self::new(nullity, (0..1u64 << nullity).map(Subset))
    }

    /// Parses the `{},{1},{2},{1,2}` encoding (elements 1-indexed).
    pub fn parse(nullity: usize, text: &str) -> Result<Self, SemilatticeError> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let err = |pos: usize, msg: &str| SemilatticeError::Parse {
            pos,
            msg: msg.to_string(),
        };
        let mut subsets = Vec::new();
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(err(pos, "empty class"));
        }
        loop {
            skip_ws(&mut pos);
            if bytes.get(pos) != Some(&b'{') {
                return Err(err(pos, "expected '{'"));
            }
            pos += 1;
            let mut elems = Vec::new();
            skip_ws(&mut pos);
            if bytes.get(pos) == Some(&b'}') {
                pos += 1;
            } else {
                loop {
                    skip_ws(&mut pos);
                    let start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if start == pos {
                        return Err(err(pos, "expected element"));
                    }
                    let e: usize = text[start..pos].parse().map_err(|_| err(start, "bad integer"))?;
                    if e == 0 || e > nullity {
                        return Err(SemilatticeError::OutOfRange { element: e, nullity });
                    }
                    elems.push(e);
                    skip_ws(&mut pos);
                    match bytes.get(pos) {
                        Some(b',') => pos += 1,
                        Some(b'}') => {
                            pos += 1;
                            break;
                        }
                        _ => return Err(err(pos, "expected ',' or '}'")),
                    }
                }
            }
            subsets.push(Subset::from_elements(elems));
            skip_ws(&mut pos);
            match bytes.get(pos) {
                None => break,
                Some(b',') => pos += 1,
                Some(_) => return Err(err(pos, "expected ','")),
            }
        }
        Self::new(nullity, subsets)
    }

    pub fn nullity(&self) -> usize {
        self.nullity
    }

    pub fn subsets(&self) -> impl Iterator<Item = Subset> + '_ {
        self.subsets.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.subsets.contains(&s)
    }

    /// True iff every subset of `{1..ν}` is present, i.e. `S = Λ`.
    pub fn is_full(&self) -> bool {
        self.nullity < 64 && self.subsets.len() as u128 == 1u128 << self.nullity
    }
}

impl fmt::Display for SupportClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.subsets.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Outcome of checking a supporting class against the semilattice axioms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub contains_empty: bool,
    pub spans: bool,
    pub singletons_present: bool,
    pub missing_singletons: Vec<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.contains_empty && self.spans
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.contains_empty {
            out.push("the empty set is missing (0 ∉ S)".to_string());
        }
        if !self.spans {
            out.push("indicator vectors do not span (Z/2)^ν".to_string());
        }
        out
    }
}

/// Rank over GF(2) of a set of bitmask vectors.
fn gf2_rank(vectors: impl Iterator<Item = u64>) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for mut v in vectors {
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

pub fn validate(class: &SupportClass) -> ValidationReport {
    let missing: Vec<usize> = (1..=class.nullity)
        .filter(|&r| !class.contains(Subset::singleton(r)))
        .collect();
    ValidationReport {
        contains_empty: class.contains(Subset::EMPTY),
        spans: gf2_rank(class.subsets().map(Subset::bits)) == class.nullity,
        singletons_present: missing.is_empty(),
        missing_singletons: missing,
    }
}

/// A semilattice `S = ⊎_{J ∈ class} (τ_J + 2Λ)` with a valid supporting class.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Semilattice {
    support: SupportClass,
    sums: BTreeSet<u64>,
}

impl Semilattice {
    pub fn new(support: SupportClass) -> Result<Self, SemilatticeError> {
        let report = validate(&support);
        if !report.is_valid() {
            return Err(SemilatticeError::Invalid(report.failures().join("; ")));
        }
        let members: Vec<u64> = support.subsets().map(Subset::bits).collect();
        let sums = members
            .iter()
            .flat_map(|a| members.iter().map(move |b| a ^ b))
            .collect();
        Ok(Semilattice { support, sums })
    }

    pub fn support(&self) -> &SupportClass {
        &self.support
    }

    pub fn nullity(&self) -> usize {
        self.support.nullity
    }

    /// Number of nonzero cosets of `2Λ` contained in `S`.
    pub fn index(&self) -> usize {
        self.support.len() - 1
    }

    pub fn is_lattice(&self) -> bool {
        self.support.is_full()
    }

    fn check_len(&self, sigma: &[Scalar]) -> Result<(), SemilatticeError> {
        if sigma.len() == self.nullity() {
            Ok(())
        } else {
            Err(SemilatticeError::Length {
                got: sigma.len(),
                expected: self.nullity(),
            })
        }
    }

    /// Membership `σ ∈ S` for `σ = Σ σ(r) σ_r`.
    pub fn contains(&self, sigma: &[Scalar]) -> Result<bool, SemilatticeError> {
        self.check_len(sigma)?;
        Ok(self.support.contains(supp_of(sigma)))
    }

    /// Membership `σ ∈ S + S`.
    pub fn sum_set_contains(&self, sigma: &[Scalar]) -> Result<bool, SemilatticeError> {
        self.check_len(sigma)?;
        Ok(self.sums.contains(&supp_of(sigma).bits()))
    }

    pub fn contains_i64(&self, sigma: &[i64]) -> bool {
        sigma.len() == self.nullity() && self.support.contains(supp_of_i64(sigma))
    }

    pub fn sum_set_contains_i64(&self, sigma: &[i64]) -> bool {
        sigma.len() == self.nullity() && self.sums.contains(&supp_of_i64(sigma).bits())
    }
}

/// Set of coordinates that are odd.
pub fn supp_of(sigma: &[Scalar]) -> Subset {
    Subset::from_elements(
        sigma
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_odd())
            .map(|(r, _)| r + 1),
    )
}

pub fn supp_of_i64(sigma: &[i64]) -> Subset {
    Subset::from_elements(
        sigma
            .iter()
            .enumerate()
            .filter(|(_, c)| *c & 1 == 1)
            .map(|(r, _)| r + 1),
    )
}

/// Rows of the classification table of semilattices up to similarity, ν ≤ 3.
pub const STANDARD_TABLE: &[(usize, usize, &[&[usize]])] = &[
    (0, 0, &[&[]]),
    (1, 1, &[&[], &[1]]),
    (2, 2, &[&[], &[1], &[2]]),
    (2, 3, &[&[], &[1], &[2], &[1, 2]]),
    (3, 3, &[&[], &[1], &[2], &[3]]),
    (3, 4, &[&[], &[1], &[2], &[3], &[2, 3]]),
    (3, 5, &[&[], &[1], &[2], &[3], &[1, 3], &[2, 3]]),
    (3, 6, &[&[], &[1], &[2], &[3], &[1, 2], &[1, 3], &[2, 3]]),
    (3, 7, &[&[], &[1], &[2], &[3], &[1, 2], &[1, 3], &[2, 3], &[1, 2, 3]]),
];

pub fn standard_semilattice(nullity: usize, index: usize) -> Result<Semilattice, SemilatticeError> {
    let (_, _, lists) = STANDARD_TABLE
        .iter()
        .find(|(n, m, _)| *n == nullity && *m == index)
        .ok_or(SemilatticeError::NotInTable { nullity, index })?;
    Semilattice::new(SupportClass::from_lists(nullity, lists)?)
}

/// Indices available in the table for a given nullity.
pub fn standard_indices(nullity: usize) -> Vec<usize> {
    STANDARD_TABLE
        .iter()
        .filter(|(n, _, _)| *n == nullity)
        .map(|(_, m, _)| *m)
        .collect()
}
