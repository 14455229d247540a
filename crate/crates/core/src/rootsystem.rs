//! Simply laced Cartan data, finite root systems, the extended affine root
//! system `R(X_ℓ, S) = (S+S) ∪ (Ṙ+S)`, bounded enumeration and an axiom
//! checker for finite windows of `R`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::exactlinalg::{IntegerLattice, Scalar, Vector};
use crate::parallel::{self, Execution};
use crate::semilattice::Semilattice;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSystemError {
    #[error("no simply laced Cartan type {kind}{rank}")]
    InvalidType { kind: CartanType, rank: usize },
    #[error("unknown Cartan type letter '{0}'")]
    UnknownLetter(String),
    #[error("rank {rank} > 1 requires a lattice (full supporting class), got index {index}")]
    NotALattice { rank: usize, index: usize },
    #[error("supporting class lacks singletons {0:?}")]
    MissingSingletons(Vec<usize>),
    #[error("vector has dimension {got}, expected {expected}")]
    Dimension { got: usize, expected: usize },
    #[error("vector has a nonzero λ-component")]
    LambdaComponent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CartanType {
    A,
    D,
    E,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            CartanType::A => "A",
            CartanType::D => "D",
            CartanType::E => "E",
        };
        f.write_str(c)
    }
}

impl FromStr for CartanType {
    type Err = RootSystemError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "A" | "a" => Ok(CartanType::A),
            "D" | "d" => Ok(CartanType::D),
            "E" | "e" => Ok(CartanType::E),
            other => Err(RootSystemError::UnknownLetter(other.to_string())),
        }
    }
}

/// Simply laced Cartan matrix in Bourbaki numbering. Since every root has
/// square length 2 the Cartan matrix equals the Gram matrix `(α_i, α_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanData {
    kind: CartanType,
    rank: usize,
    matrix: Vec<Vec<i64>>,
}

impl CartanData {
    pub fn new(kind: CartanType, rank: usize) -> Result<Self, RootSystemError> {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        match (kind, rank) {
            (CartanType::A, l) if l >= 1 => edges.extend((1..l).map(|i| (i, i + 1))),
            (CartanType::D, l) if l >= 4 => {
                edges.extend((1..l - 1).map(|i| (i, i + 1)));
                edges.push((l - 2, l));
            }
            (CartanType::E, l @ 6..=8) => {
                edges.extend([(1, 3), (2, 4), (3, 4)]);
                edges.extend((4..l).map(|i| (i, i + 1)));
            }
            _ => return Err(RootSystemError::InvalidType { kind, rank }),
        }
        let mut matrix = vec![vec![0i64; rank]; rank];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in edges {
            matrix[i - 1][j - 1] = -1;
            matrix[j - 1][i - 1] = -1;
        }
        Ok(CartanData { kind, rank, matrix })
    }

    pub fn kind(&self) -> CartanType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `a_{i,j}` with 1-based indices.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// `(u, v)` for vectors given in simple-root coordinates.
    pub fn form(&self, u: &[i64], v: &[i64]) -> i64 {
        let mut acc = 0;
        for (i, ui) in u.iter().enumerate() {
            if *ui == 0 {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                acc += ui * self.matrix[i][j] * vj;
            }
        }
        acc
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }
}

pub fn cartan_matrix(kind: CartanType, rank: usize) -> Result<CartanData, RootSystemError> {
    CartanData::new(kind, rank)
}

/// The nonzero roots of the finite root system, in simple-root coordinates.
#[derive(Debug, Clone)]
pub struct FiniteRootSystem {
    cartan: CartanData,
    roots: Vec<Vec<i64>>,
    lookup: HashSet<Vec<i64>>,
}

impl FiniteRootSystem {
    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    /// Sorted lexicographically.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.lookup.contains(v)
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.roots.iter().filter(|r| r.iter().all(|&c| c >= 0))
    }

    /// Image of `v` under the simple reflection `s_i` (1-based `i`).
    pub fn reflect(&self, i: usize, v: &[i64]) -> Vec<i64> {
        let mut out = v.to_vec();
        let pairing: i64 = v
            .iter()
            .enumerate()
            .map(|(j, c)| c * self.cartan.matrix[j][i - 1])
            .sum();
        out[i - 1] -= pairing;
        out
    }

    /// Canonical reduced word of the Weyl group element whose action on
    /// simple-root coordinates is `action` (column `j` is the image of
    /// `α_{j+1}`), found by peeling off right descents in increasing index
    /// order. `None` if `action` is not an element of the finite Weyl group.
    pub fn reduced_word(&self, action: &[Vec<i64>]) -> Option<Vec<usize>> {
        let l = self.cartan.rank;
        if action.len() != l || action.iter().any(|row| row.len() != l) {
            return None;
        }
        let mut x: Vec<Vec<i64>> = action.to_vec();
        let column = |x: &Vec<Vec<i64>>, j: usize| -> Vec<i64> { (0..l).map(|i| x[i][j]).collect() };
        let mut peeled = Vec::new();
        let max_steps = self.roots.len() / 2 + 1;
        loop {
            let mut descent = None;
            for j in 0..l {
                let c = column(&x, j);
                if !self.contains(&c) {
                    return None;
                }
                if c.iter().all(|&v| v <= 0) {
                    descent = Some(j);
                    break;
                }
            }
            let Some(j) = descent else { break };
            if peeled.len() > max_steps {
                return None;
            }
            // x <- x * s_j : column k becomes col_k - a_{jk} col_j
            let cj = column(&x, j);
            for k in 0..l {
                let a = self.cartan.matrix[j][k];
                if a != 0 {
                    for (i, row) in x.iter_mut().enumerate() {
                        row[k] -= a * cj[i];
                    }
                }
            }
            peeled.push(j + 1);
        }
        let is_identity = (0..l).all(|i| (0..l).all(|j| x[i][j] == i64::from(i == j)));
        if !is_identity {
            return None;
        }
        peeled.reverse();
        Some(peeled)
    }

    /// Action matrix of the simple reflection `s_i` on simple-root coordinates.
    pub fn simple_reflection_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        let l = self.cartan.rank;
        let mut m: Vec<Vec<i64>> = (0..l).map(|r| (0..l).map(|c| i64::from(r == c)).collect()).collect();
        for (k, col) in (0..l).map(|k| (k, self.cartan.matrix[i - 1][k])) {
            m[i - 1][k] -= col;
        }
        m
    }
}

/// Orbit closure of the simple roots under the simple reflections.
pub fn finite_roots(cartan: &CartanData) -> FiniteRootSystem {
    let l = cartan.rank;
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..l {
        let mut e = vec![0i64; l];
        e[i] = 1;
        if seen.insert(e.clone()) {
            queue.push_back(e);
        }
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..l {
            let pairing: i64 = v.iter().enumerate().map(|(j, c)| c * cartan.matrix[j][i]).sum();
            if pairing == 0 {
                continue;
            }
            let mut w = v.clone();
            w[i] -= pairing;
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.iter().cloned().collect();
    roots.sort();
    FiniteRootSystem {
        cartan: cartan.clone(),
        roots,
        lookup: seen,
    }
}

/// `R(X_ℓ, S)` for a simply laced type and a semilattice `S`.
#[derive(Debug, Clone)]
pub struct ExtendedRootSystem {
    finite: FiniteRootSystem,
    semilattice: Semilattice,
}

impl ExtendedRootSystem {
    pub fn new(cartan: &CartanData, semilattice: Semilattice) -> Result<Self, RootSystemError> {
        let report = crate::semilattice::validate(semilattice.support());
        if !report.singletons_present {
            return Err(RootSystemError::MissingSingletons(report.missing_singletons));
        }
        if cartan.rank > 1 && !semilattice.is_lattice() {
            return Err(RootSystemError::NotALattice {
                rank: cartan.rank,
                index: semilattice.index(),
            });
        }
        Ok(ExtendedRootSystem {
            finite: finite_roots(cartan),
            semilattice,
        })
    }

    pub fn cartan(&self) -> &CartanData {
        &self.finite.cartan
    }

    pub fn finite(&self) -> &FiniteRootSystem {
        &self.finite
    }

    pub fn semilattice(&self) -> &Semilattice {
        &self.semilattice
    }

    pub fn rank(&self) -> usize {
        self.finite.cartan.rank
    }

    pub fn nullity(&self) -> usize {
        self.semilattice.nullity()
    }

    /// Membership for a vector given by its `α` and `σ` coordinates.
    pub fn contains_parts(&self, dot: &[i64], sigma: &[i64]) -> bool {
        if dot.iter().all(|&c| c == 0) {
            self.semilattice.sum_set_contains_i64(sigma)
        } else {
            self.finite.contains(dot) && self.semilattice.contains_i64(sigma)
        }
    }

    /// Membership of a vector of the hyperbolic space (coordinates
    /// `α_1..α_ℓ, σ_1..σ_ν, λ_1..λ_ν`) in `R`.
    pub fn root_contains(&self, v: &Vector) -> Result<bool, RootSystemError> {
        let (l, nu) = (self.rank(), self.nullity());
        if v.len() != l + 2 * nu {
            return Err(RootSystemError::Dimension {
                got: v.len(),
                expected: l + 2 * nu,
            });
        }
        let c = v.coords();
        if c[l + nu..].iter().any(|x| !x.is_zero()) {
            return Err(RootSystemError::LambdaComponent);
        }
        let sigma = &c[l..l + nu];
        if c[..l].iter().all(Scalar::is_zero) {
            return Ok(self.semilattice.sum_set_contains(sigma).expect("length checked"));
        }
        let Some(dot) = c[..l].iter().map(Scalar::to_i64).collect::<Option<Vec<_>>>() else {
            return Ok(false);
        };
        Ok(self.finite.contains(&dot) && self.semilattice.contains(sigma).expect("length checked"))
    }

    /// All roots whose `σ`-coordinates lie in `[-bound, bound]`, as
    /// `ℓ+ν` coordinate lists sorted lexicographically.
    pub fn enumerate_bounded(&self, bound: i64, exec: Execution) -> Vec<Vec<i64>> {
        let (l, nu) = (self.rank(), self.nullity());
        let side = (2 * bound + 1).max(0) as usize;
        let cells = side.pow(nu as u32);
        let mut dots: Vec<Vec<i64>> = vec![vec![0; l]];
        dots.extend(self.finite.roots.iter().cloned());
        let chunks = parallel::map_indexed(cells, exec, |mut k| {
            let mut sigma = vec![0i64; nu];
            for s in sigma.iter_mut() {
                *s = (k % side) as i64 - bound;
                k /= side;
            }
            dots.iter()
                .filter(|d| self.contains_parts(d, &sigma))
                .map(|d| d.iter().chain(&sigma).copied().collect::<Vec<i64>>())
                .collect::<Vec<_>>()
        });
        let mut out: Vec<Vec<i64>> = chunks.into_iter().flatten().collect();
        out.sort();
        out
    }

    pub fn window(&self, bound: i64, exec: Execution) -> RootWindow {
        RootWindow {
            cartan: self.cartan().clone(),
            finite: self.finite.clone(),
            nullity: self.nullity(),
            bound,
            roots: self.enumerate_bounded(bound, exec).into_iter().collect(),
        }
    }

    pub fn check_axioms(&self, bound: i64, exec: Execution) -> AxiomReport {
        self.window(bound, exec).check_axioms(exec)
    }
}

/// A finite set of vectors of `V` (coordinates `α_1..α_ℓ, σ_1..σ_ν`) together
/// with the window `|σ_r| ≤ bound` it was cut from.
#[derive(Debug, Clone)]
pub struct RootWindow {
    cartan: CartanData,
    finite: FiniteRootSystem,
    nullity: usize,
    bound: i64,
    roots: BTreeSet<Vec<i64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AxiomStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomOutcome {
    pub axiom: &'static str,
    pub status: AxiomStatus,
    pub checked: usize,
    /// Instances left unchecked because they leave the window.
    pub skipped: usize,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub bound: i64,
    pub window_size: usize,
    pub outcomes: Vec<AxiomOutcome>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(|o| o.status == AxiomStatus::Pass)
    }

    pub fn outcome(&self, axiom: &str) -> Option<&AxiomOutcome> {
        self.outcomes.iter().find(|o| o.axiom == axiom)
    }
}

fn outcome(axiom: &'static str, checked: usize, skipped: usize, failure: Option<String>) -> AxiomOutcome {
    AxiomOutcome {
        axiom,
        status: if failure.is_some() { AxiomStatus::Fail } else { AxiomStatus::Pass },
        checked,
        skipped,
        detail: failure,
    }
}

impl RootWindow {
    pub fn roots(&self) -> &BTreeSet<Vec<i64>> {
        &self.roots
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// Adds an arbitrary vector (used to inject faults).
    pub fn insert(&mut self, v: Vec<i64>) {
        self.roots.insert(v);
    }

    fn rank(&self) -> usize {
        self.cartan.rank
    }

    fn form(&self, u: &[i64], v: &[i64]) -> i64 {
        let l = self.rank();
        self.cartan.form(&u[..l], &v[..l])
    }

    fn in_window(&self, v: &[i64]) -> bool {
        v[self.rank()..].iter().all(|c| c.abs() <= self.bound)
    }

    fn is_isotropic(&self, v: &[i64]) -> bool {
        self.form(v, v) == 0
    }

    pub fn check_axioms(&self, exec: Execution) -> AxiomReport {
        let l = self.rank();
        let all: Vec<&Vec<i64>> = self.roots.iter().collect();
        let nonisotropic: Vec<&Vec<i64>> = all.iter().copied().filter(|v| !self.is_isotropic(v)).collect();
        let isotropic: Vec<&Vec<i64>> = all.iter().copied().filter(|v| self.is_isotropic(v)).collect();
        let mut outcomes = Vec::new();

        let zero = vec![0i64; l + self.nullity];
        outcomes.push(outcome(
            "R1",
            1,
            0,
            (!self.roots.contains(&zero)).then(|| "0 is not in R".to_string()),
        ));

        let bad = all.iter().find(|v| !self.roots.contains(&v.iter().map(|c| -c).collect::<Vec<_>>()));
        outcomes.push(outcome("R2", all.len(), 0, bad.map(|v| format!("-{v:?} missing"))));

        let span = IntegerLattice::from_i64s(l + self.nullity, &all.iter().map(|v| v.to_vec()).collect::<Vec<_>>())
            .map(|lat| lat.rank())
            .unwrap_or(0);
        outcomes.push(outcome(
            "R3",
            1,
            0,
            (span != l + self.nullity).then(|| format!("span has rank {span}, expected {}", l + self.nullity)),
        ));

        let (mut checked, mut skipped, mut fail) = (0, 0, None);
        for a in &nonisotropic {
            let twice: Vec<i64> = a.iter().map(|c| 2 * c).collect();
            if !self.in_window(&twice) {
                skipped += 1;
                continue;
            }
            checked += 1;
            if fail.is_none() && self.roots.contains(&twice) {
                fail = Some(format!("2·{a:?} is in R"));
            }
        }
        outcomes.push(outcome("R4", checked, skipped, fail));

        outcomes.push(outcome("R5", all.len(), 0, None));

        // root strings: for α ∈ R×, β ∈ R, |n| ≤ 4 covers every n with
        // β̇ + nα̇ ∈ Ṙ ∪ {0} in the simply laced case
        let strings = parallel::map_slice(&nonisotropic, exec, |a| {
            let (mut checked, mut skipped, mut fail) = (0usize, 0usize, None);
            for b in &all {
                let mut members = Vec::new();
                let mut truncated = false;
                for n in -4i64..=4 {
                    let v: Vec<i64> = b.iter().zip(a.iter()).map(|(x, y)| x + n * y).collect();
                    if self.in_window(&v) {
                        if self.roots.contains(&v) {
                            members.push(n);
                        }
                    } else if v[..l].iter().all(|&c| c == 0) || self.finite.contains(&v[..l]) {
                        truncated = true;
                    }
                }
                if truncated {
                    skipped += 1;
                    continue;
                }
                checked += 1;
                let d = -members.first().copied().unwrap_or(0);
                let u = members.last().copied().unwrap_or(0);
                let unbroken = members.len() as i64 == u + d + 1 && members.contains(&0);
                if fail.is_none() && (!unbroken || self.form(b, a) != d - u) {
                    fail = Some(format!("string of {b:?} through {a:?}: n ∈ {members:?}"));
                }
            }
            (checked, skipped, fail)
        });
        let (checked, skipped) = strings.iter().fold((0, 0), |acc, s| (acc.0 + s.0, acc.1 + s.1));
        let fail = strings.into_iter().find_map(|s| s.2);
        outcomes.push(outcome("R6", checked, skipped, fail));

        let mut component = vec![false; nonisotropic.len()];
        let mut queue = VecDeque::new();
        if !nonisotropic.is_empty() {
            component[0] = true;
            queue.push_back(0);
        }
        while let Some(i) = queue.pop_front() {
            for j in 0..nonisotropic.len() {
                if !component[j] && self.form(nonisotropic[i], nonisotropic[j]) != 0 {
                    component[j] = true;
                    queue.push_back(j);
                }
            }
        }
        let reached = component.iter().filter(|&&c| c).count();
        outcomes.push(outcome(
            "R7",
            nonisotropic.len(),
            0,
            (reached != nonisotropic.len())
                .then(|| format!("R× splits: {reached} of {} reachable", nonisotropic.len())),
        ));

        let missing = isotropic.iter().find(|s| {
            !nonisotropic.iter().any(|a| {
                let v: Vec<i64> = a.iter().zip(s.iter()).map(|(x, y)| x + y).collect();
                self.roots.contains(&v)
            })
        });
        outcomes.push(outcome(
            "R8",
            isotropic.len(),
            0,
            missing.map(|s| format!("no α ∈ R× with α + {s:?} ∈ R")),
        ));

        AxiomReport {
            bound: self.bound,
            window_size: self.roots.len(),
            outcomes,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semilattice::{standard_semilattice, SupportClass};

    /// Simple roots in Euclidean coordinates, doubled so they stay integral.
    fn euclidean_simple_roots(kind: CartanType, l: usize) -> Vec<Vec<i64>> {
        match kind {
            CartanType::A => (0..l)
                .map(|i| {
                    let mut v = vec![0; l + 1];
                    v[i] = 2;
                    v[i + 1] = -2;
                    v
                })
                .collect(),
            CartanType::D => {
                let mut out: Vec<Vec<i64>> = (0..l - 1)
                    .map(|i| {
                        let mut v = vec![0; l];
                        v[i] = 2;
                        v[i + 1] = -2;
                        v
                    })
                    .collect();
                let mut last = vec![0; l];
                last[l - 2] = 2;
                last[l - 1] = 2;
                out.push(last);
                out
            }
            CartanType::E => {
                let mut out = vec![vec![1, -1, -1, -1, -1, -1, -1, 1], vec![2, 2, 0, 0, 0, 0, 0, 0]];
                for i in 0..6 {
                    let mut v = vec![0; 8];
                    v[i] = -2;
                    v[i + 1] = 2;
                    out.push(v);
                }
                out.truncate(l);
                out
            }
        }
    }

    fn euclidean_gram(kind: CartanType, l: usize) -> Vec<Vec<i64>> {
        let roots = euclidean_simple_roots(kind, l);
        roots
            .iter()
            .map(|u| roots.iter().map(|v| u.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() / 4).collect())
            .collect()
    }

    #[test]
    fn cartan_matches_euclidean_model() {
        let cases = [
            (CartanType::A, 1),
            (CartanType::A, 2),
            (CartanType::A, 5),
            (CartanType::D, 4),
            (CartanType::D, 6),
            (CartanType::E, 6),
            (CartanType::E, 7),
            (CartanType::E, 8),
        ];
        for (k, l) in cases {
            assert_eq!(cartan_matrix(k, l).unwrap().rows(), euclidean_gram(k, l).as_slice(), "{k}{l}");
        }
        assert_eq!(cartan_matrix(CartanType::A, 1).unwrap().rows(), &[vec![2]]);
        assert_eq!(cartan_matrix(CartanType::A, 2).unwrap().rows(), &[vec![2, -1], vec![-1, 2]]);
        let d4 = cartan_matrix(CartanType::D, 4).unwrap();
        // branch node 2 meets 1, 3 and 4
        for (i, j) in [(1, 2), (2, 3), (2, 4)] {
            assert_eq!(d4.entry(i, j), -1);
        }
        for (i, j) in [(1, 3), (1, 4), (3, 4)] {
            assert_eq!(d4.entry(i, j), 0);
        }
    }

    #[test]
    fn invalid_types() {
        assert!(cartan_matrix(CartanType::A, 0).is_err());
        assert!(cartan_matrix(CartanType::D, 3).is_err());
        assert!(cartan_matrix(CartanType::E, 9).is_err());
        assert!(cartan_matrix(CartanType::E, 5).is_err());
        assert!("B".parse::<CartanType>().is_err());
    }

    #[test]
    fn root_counts() {
        let count = |k, l| finite_roots(&cartan_matrix(k, l).unwrap()).len();
        assert_eq!(count(CartanType::A, 1), 2);
        for l in 1..=6 {
            assert_eq!(count(CartanType::A, l), l * (l + 1));
        }
        for l in 4..=7 {
            assert_eq!(count(CartanType::D, l), 2 * l * (l - 1));
        }
        assert_eq!(count(CartanType::E, 6), 72);
        assert_eq!(count(CartanType::E, 7), 126);
        assert_eq!(count(CartanType::E, 8), 240);
    }

    #[test]
    fn roots_have_norm_two_and_are_closed() {
        for (k, l) in [(CartanType::A, 3), (CartanType::D, 5), (CartanType::E, 6)] {
            let c = cartan_matrix(k, l).unwrap();
            let rs = finite_roots(&c);
            for r in rs.roots() {
                assert_eq!(c.form(r, r), 2);
                let neg: Vec<i64> = r.iter().map(|x| -x).collect();
                assert!(rs.contains(&neg));
                for i in 1..=l {
                    assert!(rs.contains(&rs.reflect(i, r)));
                }
            }
        }
    }

    #[test]
    fn reduced_words_cover_small_weyl_groups() {
        // enumerate the Weyl group of A3 (order 24) and D4 (order 192)
        for (k, l, order) in [(CartanType::A, 3, 24usize), (CartanType::D, 4, 192)] {
            let c = cartan_matrix(k, l).unwrap();
            let rs = finite_roots(&c);
            let id: Vec<Vec<i64>> = (0..l).map(|r| (0..l).map(|s| i64::from(r == s)).collect()).collect();
            let mut seen = HashSet::new();
            seen.insert(id.clone());
            let mut queue = VecDeque::from([id]);
            let mul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
                (0..l)
                    .map(|i| (0..l).map(|j| (0..l).map(|k| a[i][k] * b[k][j]).sum()).collect())
                    .collect()
            };
            while let Some(x) = queue.pop_front() {
                for i in 1..=l {
                    let y = mul(&x, &rs.simple_reflection_matrix(i));
                    if seen.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
            assert_eq!(seen.len(), order);
            for x in &seen {
                let word = rs.reduced_word(x).expect("element of the Weyl group");
                let mut prod: Vec<Vec<i64>> = (0..l).map(|r| (0..l).map(|s| i64::from(r == s)).collect()).collect();
                for &i in &word {
                    prod = mul(&prod, &rs.simple_reflection_matrix(i));
                }
                assert_eq!(&prod, x);
            }
            let longest = seen.iter().map(|x| rs.reduced_word(x).unwrap().len()).max().unwrap();
            assert_eq!(longest, rs.positive_roots().count());
        }
        let rs = finite_roots(&cartan_matrix(CartanType::A, 2).unwrap());
        assert!(rs.reduced_word(&[vec![2, 0], vec![0, 1]]).is_none());
    }

    fn a1_full(nu: usize) -> ExtendedRootSystem {
        let s = Semilattice::new(SupportClass::full(nu).unwrap()).unwrap();
        ExtendedRootSystem::new(&cartan_matrix(CartanType::A, 1).unwrap(), s).unwrap()
    }

    #[test]
    fn membership_examples() {
        let r = a1_full(1);
        assert!(r.root_contains(&Vector::from_i64s(&[1, 5, 0])).unwrap());
        assert!(r.root_contains(&Vector::from_i64s(&[0, 0, 0])).unwrap());
        assert!(matches!(
            r.root_contains(&Vector::from_i64s(&[1, 0, 1])),
            Err(RootSystemError::LambdaComponent)
        ));
        assert!(!r.root_contains(&Vector::from_i64s(&[2, 0, 0])).unwrap());

        let a1 = cartan_matrix(CartanType::A, 1).unwrap();
        let r22 = ExtendedRootSystem::new(&a1, standard_semilattice(2, 2).unwrap()).unwrap();
        assert!(!r22.root_contains(&Vector::from_i64s(&[1, 1, 1, 0, 0])).unwrap());
        // cross-check: α_1 + S within a window never hits σ_1+σ_2 mod 2
        let window = r22.enumerate_bounded(3, Execution::Sequential);
        assert!(window.iter().filter(|v| v[0] == 1).all(|v| !(v[1] % 2 != 0 && v[2] % 2 != 0)));
    }

    #[test]
    fn construction_constraints() {
        let a2 = cartan_matrix(CartanType::A, 2).unwrap();
        assert!(matches!(
            ExtendedRootSystem::new(&a2, standard_semilattice(2, 2).unwrap()),
            Err(RootSystemError::NotALattice { .. })
        ));
        let a1 = cartan_matrix(CartanType::A, 1).unwrap();
        let no_singleton = Semilattice::new(SupportClass::parse(2, "{},{1},{1,2}").unwrap()).unwrap();
        assert!(matches!(
            ExtendedRootSystem::new(&a1, no_singleton),
            Err(RootSystemError::MissingSingletons(_))
        ));
    }

    #[test]
    fn enumeration_examples() {
        let r0 = a1_full(0);
        for n in 0..3 {
            assert_eq!(r0.enumerate_bounded(n, Execution::Sequential), vec![vec![-1], vec![0], vec![1]]);
        }
        let r1 = a1_full(1);
        let w = r1.enumerate_bounded(1, Execution::Sequential);
        let c = cartan_matrix(CartanType::A, 1).unwrap();
        // brute-force scan of the window
        let mut brute = Vec::new();
        for a in -3..=3 {
            for s in -1..=1 {
                if r1.root_contains(&Vector::from_i64s(&[a, s, 0])).unwrap() {
                    brute.push(vec![a, s]);
                }
            }
        }
        assert_eq!(w, brute);
        assert_eq!(w.iter().filter(|v| c.form(&v[..1], &v[..1]) != 0).count(), 6);
        let mut prev = 0;
        for n in 0..5 {
            let len = r1.enumerate_bounded(n, Execution::Sequential).len();
            assert!(len >= prev);
            prev = len;
        }
        assert_eq!(
            r1.enumerate_bounded(2, Execution::Parallel),
            r1.enumerate_bounded(2, Execution::Sequential)
        );
    }

    #[test]
    fn nonisotropic_window_is_finite_roots_plus_semilattice() {
        let a1 = cartan_matrix(CartanType::A, 1).unwrap();
        let r = ExtendedRootSystem::new(&a1, standard_semilattice(3, 4).unwrap()).unwrap();
        let n = 2;
        let got: BTreeSet<Vec<i64>> = r
            .enumerate_bounded(n, Execution::Sequential)
            .into_iter()
            .filter(|v| v[0] != 0)
            .collect();
        let mut expected = BTreeSet::new();
        for beta in r.finite().roots() {
            for a in -n..=n {
                for b in -n..=n {
                    for c in -n..=n {
                        if r.semilattice().contains_i64(&[a, b, c]) {
                            expected.insert(beta.iter().copied().chain([a, b, c]).collect::<Vec<_>>());
                        }
                    }
                }
            }
        }
        assert_eq!(got, expected);
    }

    #[test]
    fn weyl_stability_of_membership() {
        // reflections in nonisotropic roots map R into itself
        let a2 = cartan_matrix(CartanType::A, 2).unwrap();
        let r = ExtendedRootSystem::new(&a2, Semilattice::new(SupportClass::full(2).unwrap()).unwrap()).unwrap();
        let window = r.enumerate_bounded(2, Execution::Sequential);
        for a in window.iter().filter(|v| a2.form(&v[..2], &v[..2]) != 0) {
            for b in &window {
                let p = a2.form(&a[..2], &b[..2]);
                let img: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - p * y).collect();
                assert!(r.contains_parts(&img[..2], &img[2..]), "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn axioms_hold_and_fault_is_caught() {
        let a2 = cartan_matrix(CartanType::A, 2).unwrap();
        let r = ExtendedRootSystem::new(&a2, Semilattice::new(SupportClass::full(1).unwrap()).unwrap()).unwrap();
        let rep = r.check_axioms(3, Execution::Parallel);
        assert!(rep.all_pass(), "{rep:?}");
        assert!(rep.outcome("R6").unwrap().skipped > 0);

        let a1 = cartan_matrix(CartanType::A, 1).unwrap();
        let r = ExtendedRootSystem::new(&a1, standard_semilattice(2, 2).unwrap()).unwrap();
        let mut w = r.window(3, Execution::Sequential);
        assert!(w.check_axioms(Execution::Sequential).all_pass());
        w.insert(vec![2, 0, 0]);
        let rep = w.check_axioms(Execution::Sequential);
        assert_eq!(rep.outcome("R4").unwrap().status, AxiomStatus::Fail);
    }
}
