//! Finite presentations of the Heisenberg-like group `H` and of the extended
//! affine Weyl group `W`, word collection, and verification against the
//! matrix realization.

mod collect;
mod verify;
mod word;

pub use collect::{collect, collect_form, CollectedForm, Collector};
pub use verify::{
    evaluate, random_word, verify_presentation, InjectivityReport, RelatorCheck, VerificationReport, VerifyOptions,
};
pub use word::{parse_word, render_word, Generator, Word, WordError};

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::rootsystem::{CartanData, CartanType, ExtendedRootSystem, RootSystemError};
use crate::semilattice::{Semilattice, SupportClass};
use crate::weylgroup::{central_data, pairs, CentralData, WeylError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error(
        "F(S) is not generated by the elements c_{{r,s}}^{{n(r,s)}} (n(r,s) = {nrs:?}); \
         the presentation theorems do not apply"
    )]
    Condition000 { nrs: Vec<u8> },
    #[error("a_{{{i},{j}}} = {a} is not divisible by n({r},{s}) = {n}")]
    Inexact { i: usize, j: usize, r: usize, s: usize, a: i64, n: u8 },
    #[error("generator {0} does not belong to this presentation")]
    UnknownGenerator(Generator),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Group {
    H,
    W,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::H => "H",
            Group::W => "W",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RelatorKind {
    /// `[z, z']`
    CentralCommute,
    /// `[y, z]`
    YZCommute,
    /// `[y_{i,r}, y_{j,r}]`
    SameColumn,
    /// `[y_{i,r}, y_{j,s}] = z_{r,s}^{a_ij / n(r,s)}`, `r < s`
    Commutator,
    /// `x_i^2`
    Involution,
    /// `(x_i x_j)^{a_ij^2 + 2}`
    Coxeter,
    /// `x_i y_{j,r} x_i = y_{j,r} y_{i,r}^{-a_ij}`
    Conjugation,
    /// `[x_i, z_{r,s}]`
    XZCommute,
}

/// A relation `lhs = rhs`, stored as the single relator word `lhs · rhs⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relator {
    pub kind: RelatorKind,
    pub lhs_text: String,
    pub lhs: Word,
    pub rhs: Word,
}

impl Relator {
    fn new(kind: RelatorKind, lhs_text: String, lhs: Word, rhs: Word) -> Relator {
        Relator {
            kind,
            lhs_text,
            lhs,
            rhs,
        }
    }

    fn commute(kind: RelatorKind, a: Generator, b: Generator) -> Relator {
        Relator::new(
            kind,
            format!("[{a},{b}]"),
            Word::commutator(&Word::letter(a, 1), &Word::letter(b, 1)),
            Word::new(),
        )
    }

    pub fn word(&self) -> Word {
        self.lhs.concat(&self.rhs.inverse())
    }

    pub fn equation(&self) -> String {
        format!("{} = {}", self.lhs_text, render_word(&self.rhs))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub group: Group,
    pub cartan: CartanData,
    pub class: SupportClass,
    pub central: CentralData,
    pub generators: Vec<Generator>,
    pub relators: Vec<Relator>,
}

#[derive(Serialize)]
struct PresentationJson {
    #[serde(rename = "type")]
    kind: CartanType,
    rank: usize,
    nullity: usize,
    index: usize,
    nrs: Vec<Vec<u8>>,
    group: Group,
    class: String,
    condition000: bool,
    generators: Vec<String>,
    relators: Vec<String>,
    equations: Vec<String>,
}

impl Presentation {
    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn nullity(&self) -> usize {
        self.class.nullity()
    }

    pub fn index(&self) -> usize {
        self.class.len() - 1
    }

    pub fn has_generator(&self, g: Generator) -> bool {
        let (l, nu) = (self.rank(), self.nullity());
        match g {
            Generator::X(i) => self.group == Group::W && (1..=l).contains(&i),
            Generator::Y(i, r) => (1..=l).contains(&i) && (1..=nu).contains(&r),
            Generator::Z(r, s) => 1 <= r && r < s && s <= nu,
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<(), PresentationError> {
        match w.generators().find(|&g| !self.has_generator(g)) {
            Some(g) => Err(PresentationError::UnknownGenerator(g)),
            None => Ok(()),
        }
    }

    pub fn parse(&self, text: &str) -> Result<Word, PresentationError> {
        let w = parse_word(text)?;
        self.check_word(&w)?;
        Ok(w)
    }

    pub fn title(&self) -> String {
        format!(
            "{}({}, nu={}, m={}) class {}",
            self.group,
            self.cartan.name(),
            self.nullity(),
            self.index(),
            self.class
        )
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {}\n", self.title()));
        let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        out.push_str(&format!("generators: {}\n", gens.join(" ")));
        out.push_str(&format!("relators: {}\n", self.relators.len()));
        for r in &self.relators {
            out.push_str(&r.equation());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PresentationJson {
            kind: self.cartan.kind(),
            rank: self.rank(),
            nullity: self.nullity(),
            index: self.index(),
            nrs: self.central.nrs_table(),
            group: self.group,
            class: self.class.to_string(),
            condition000: self.central.condition000(),
            generators: self.generators.iter().map(ToString::to_string).collect(),
            relators: self.relators.iter().map(|r| render_word(&r.word())).collect(),
            equations: self.relators.iter().map(Relator::equation).collect(),
        })
        .expect("plain data")
    }
}

fn prepare(cartan: &CartanData, s: &Semilattice) -> Result<CentralData, PresentationError> {
    ExtendedRootSystem::new(cartan, s.clone())?;
    let central = central_data(s, cartan);
    if !central.condition000() {
        return Err(PresentationError::Condition000 {
            nrs: central.nrs().to_vec(),
        });
    }
    Ok(central)
}

fn h_part(cartan: &CartanData, central: &CentralData) -> Result<(Vec<Generator>, Vec<Relator>), PresentationError> {
    let (l, nu) = (cartan.rank(), central.nullity());
    let ys: Vec<Generator> = (1..=nu)
        .flat_map(|r| (1..=l).map(move |i| Generator::Y(i, r)))
        .collect();
    let zs: Vec<Generator> = pairs(nu).into_iter().map(|(r, s)| Generator::Z(r, s)).collect();
    let mut rels = Vec::new();
    for (a, &z1) in zs.iter().enumerate() {
        for &z2 in &zs[a + 1..] {
            rels.push(Relator::commute(RelatorKind::CentralCommute, z1, z2));
        }
    }
    for &y in &ys {
        for &z in &zs {
            rels.push(Relator::commute(RelatorKind::YZCommute, y, z));
        }
    }
    for r in 1..=nu {
        for i in 1..=l {
            for j in i + 1..=l {
                rels.push(Relator::commute(RelatorKind::SameColumn, Generator::Y(i, r), Generator::Y(j, r)));
            }
        }
    }
    for (r, s) in pairs(nu) {
        let n = central.n(r, s);
        for i in 1..=l {
            for j in 1..=l {
                let a = cartan.entry(i, j);
                if a % i64::from(n) != 0 {
                    return Err(PresentationError::Inexact { i, j, r, s, a, n });
                }
                let (yi, yj) = (Generator::Y(i, r), Generator::Y(j, s));
                rels.push(Relator::new(
                    RelatorKind::Commutator,
                    format!("[{yi},{yj}]"),
                    Word::commutator(&Word::letter(yi, 1), &Word::letter(yj, 1)),
                    Word::letter(Generator::Z(r, s), a / i64::from(n)),
                ));
            }
        }
    }
    Ok((ys.into_iter().chain(zs).collect(), rels))
}

/// The presentation of `H` by generators `y_{i,r}`, `z_{r,s}`.
#[allow(non_snake_case)]
pub fn present_H(cartan: &CartanData, s: &Semilattice) -> Result<Presentation, PresentationError> {
    let central = prepare(cartan, s)?;
    let (generators, relators) = h_part(cartan, &central)?;
    Ok(Presentation {
        group: Group::H,
        cartan: cartan.clone(),
        class: s.support().clone(),
        central,
        generators,
        relators,
    })
}

/// The presentation of `W` by generators `x_i`, `y_{i,r}`, `z_{r,s}`.
///
/// Besides the Coxeter, conjugation and `H` relations this includes
/// `[x_1, z_{r,s}]` when `ℓ = 1` and `n(r,s) = 1`: there `z_{r,s}` is not a
/// commutator of the `y`'s, and without the relation the group defined has an
/// extra element `x z x z⁻¹` of order two mapping to the identity.
#[allow(non_snake_case)]
pub fn present_W(cartan: &CartanData, s: &Semilattice) -> Result<Presentation, PresentationError> {
    let central = prepare(cartan, s)?;
    let (l, nu) = (cartan.rank(), central.nullity());
    let (hgens, hrels) = h_part(cartan, &central)?;
    let mut rels = Vec::new();
    for i in 1..=l {
        let x = Generator::X(i);
        rels.push(Relator::new(
            RelatorKind::Involution,
            format!("{x}^2"),
            Word::letter(x, 2),
            Word::new(),
        ));
    }
    for i in 1..=l {
        for j in i + 1..=l {
            let a = cartan.entry(i, j);
            let k = a * a + 2;
            let (xi, xj) = (Generator::X(i), Generator::X(j));
            let pair = Word::from_letters([(xi, 1), (xj, 1)]);
            rels.push(Relator::new(
                RelatorKind::Coxeter,
                format!("({xi} * {xj})^{k}"),
                pair.pow(k),
                Word::new(),
            ));
        }
    }
    for r in 1..=nu {
        for i in 1..=l {
            for j in 1..=l {
                let (x, yj, yi) = (Generator::X(i), Generator::Y(j, r), Generator::Y(i, r));
                rels.push(Relator::new(
                    RelatorKind::Conjugation,
                    format!("{x} * {yj} * {x}"),
                    Word::from_letters([(x, 1), (yj, 1), (x, 1)]),
                    Word::from_letters([(yj, 1), (yi, -cartan.entry(i, j))]),
                ));
            }
        }
    }
    if l == 1 {
        for (r, s) in pairs(nu) {
            if central.n(r, s) == 1 {
                rels.push(Relator::commute(RelatorKind::XZCommute, Generator::X(1), Generator::Z(r, s)));
            }
        }
    }
    rels.extend(hrels);
    Ok(Presentation {
        group: Group::W,
        cartan: cartan.clone(),
        class: s.support().clone(),
        central,
        generators: (1..=l).map(Generator::X).chain(hgens).collect(),
        relators: rels,
    })
}

pub fn present(group: Group, cartan: &CartanData, s: &Semilattice) -> Result<Presentation, PresentationError> {
    match group {
        Group::H => present_H(cartan, s),
        Group::W => present_W(cartan, s),
    }
}

/// Perturbs one relation so that it no longer holds: the first commutator
/// relation with a nontrivial right-hand side (or else any such relation) gets
/// the magnitude of its last exponent raised by one; failing that, the first
/// relation gets a right-hand side equal to its first letter.
/// Returns the modified presentation and the perturbed equation.
pub fn inject_fault(p: &Presentation) -> (Presentation, String) {
    let mut q = p.clone();
    if q.relators.is_empty() {
        return (q, String::new());
    }
    let k = q
        .relators
        .iter()
        .position(|r| r.kind == RelatorKind::Commutator && !r.rhs.is_empty())
        .or_else(|| q.relators.iter().position(|r| !r.rhs.is_empty()))
        .unwrap_or(0);
    let rel = &mut q.relators[k];
    if let Some(&(g, e)) = rel.rhs.letters().last() {
        rel.rhs.push(g, e.signum());
    } else {
        let (g, _) = rel.lhs.letters()[0];
        rel.rhs = Word::letter(g, 1);
    }
    let eq = rel.equation();
    (q, eq)
}

/// Number of relators emitted by `present_H`.
pub fn h_relator_count(rank: usize, nullity: usize) -> usize {
    let p = nullity * nullity.saturating_sub(1) / 2;
    let choose2 = |n: usize| n * n.saturating_sub(1) / 2;
    choose2(p) + rank * nullity * p + nullity * choose2(rank) + rank * rank * p
}
