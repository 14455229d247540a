//! Collection: rewriting a word into `ẋ · Π_{(r,i)} y_{i,r}^{n_{i,r}} ·
//! Π_{(r,s)} z_{r,s}^{e_{r,s}}` using the relations as rewriting rules.
//!
//! `y`-letters with equal `r` commute; moving `y_{k,q}^e` left past `y_{i,r}^n`
//! with `q < r` emits `z_{q,r}^{-n e a_{k,i} / n(q,r)}`; an `x_k` on the right
//! conjugates the `y`-part by `s_k`. The finite part is kept as its action
//! on the simple roots and rewritten as a reduced word at the end.

use super::word::{Generator, Word, WordError};
use super::{Group, Presentation, PresentationError};
use crate::rootsystem::{finite_roots, FiniteRootSystem};
use crate::weylgroup::{pair_index, pairs};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CollectedForm {
    /// Action of `ẋ` on simple-root coordinates (column `j` is the image of `α_{j+1}`).
    pub finite: Vec<Vec<i64>>,
    /// `y[i-1][r-1]` is the exponent of `y_{i,r}`.
    pub y: Vec<Vec<i64>>,
    /// Exponents of `z_{r,s}` in pair order.
    pub z: Vec<i64>,
}

/// Collection state bound to one presentation.
#[derive(Debug, Clone)]
pub struct Collector {
    group: Group,
    rank: usize,
    nullity: usize,
    a: Vec<Vec<i64>>,
    nrs: Vec<u8>,
    finite: FiniteRootSystem,
}

fn add(a: i64, b: i64) -> Result<i64, WordError> {
    a.checked_add(b).ok_or(WordError::Overflow)
}

fn mul(a: i64, b: i64) -> Result<i64, WordError> {
    a.checked_mul(b).ok_or(WordError::Overflow)
}

impl Collector {
    pub fn new(p: &Presentation) -> Collector {
        Collector {
            group: p.group,
            rank: p.rank(),
            nullity: p.nullity(),
            a: p.cartan.rows().to_vec(),
            nrs: p.central.nrs().to_vec(),
            finite: finite_roots(&p.cartan),
        }
    }

    pub fn identity(&self) -> CollectedForm {
        let l = self.rank;
        CollectedForm {
            finite: (0..l).map(|i| (0..l).map(|j| i64::from(i == j)).collect()).collect(),
            y: vec![vec![0; self.nullity]; l],
            z: vec![0; pairs(self.nullity).len()],
        }
    }

    fn push_y(&self, f: &mut CollectedForm, k: usize, q: usize, e: i64) -> Result<(), WordError> {
        for r in q + 1..=self.nullity {
            let p = pair_index(self.nullity, q, r);
            let n = i64::from(self.nrs[p]);
            for i in 1..=self.rank {
                let m = f.y[i - 1][r - 1];
                if m != 0 {
                    let corr = mul(mul(m, e)?, self.a[k - 1][i - 1] / n)?;
                    f.z[p] = add(f.z[p], -corr)?;
                }
            }
        }
        f.y[k - 1][q - 1] = add(f.y[k - 1][q - 1], e)?;
        Ok(())
    }

    fn push_x(&self, f: &mut CollectedForm, k: usize) -> Result<(), WordError> {
        let l = self.rank;
        // finite <- finite * s_k: column j becomes col_j - a_{kj} col_k
        let col: Vec<i64> = (0..l).map(|i| f.finite[i][k - 1]).collect();
        for j in 0..l {
            let a = self.a[k - 1][j];
            if a != 0 {
                for (row, c) in f.finite.iter_mut().zip(&col) {
                    row[j] -= a * c;
                }
            }
        }
        // y-part conjugated by x_k: β_r <- s_k(β_r)
        for r in 0..self.nullity {
            let mut pairing = 0i64;
            for i in 0..l {
                pairing = add(pairing, mul(self.a[k - 1][i], f.y[i][r])?)?;
            }
            f.y[k - 1][r] = add(f.y[k - 1][r], -pairing)?;
        }
        Ok(())
    }

    /// `f · g^e`.
    pub fn push(&self, f: &mut CollectedForm, g: Generator, e: i64) -> Result<(), PresentationError> {
        match g {
            Generator::X(k) if self.group == Group::W && (1..=self.rank).contains(&k) => {
                if e.rem_euclid(2) == 1 {
                    self.push_x(f, k)?;
                }
            }
            Generator::Y(i, r) if (1..=self.rank).contains(&i) && (1..=self.nullity).contains(&r) => {
                self.push_y(f, i, r, e)?;
            }
            Generator::Z(r, s) if 1 <= r && r < s && s <= self.nullity => {
                let p = pair_index(self.nullity, r, s);
                f.z[p] = add(f.z[p], e)?;
            }
            other => return Err(PresentationError::UnknownGenerator(other)),
        }
        Ok(())
    }

    pub fn form(&self, w: &Word) -> Result<CollectedForm, PresentationError> {
        let mut f = self.identity();
        for &(g, e) in w.letters() {
            self.push(&mut f, g, e)?;
        }
        Ok(f)
    }

    /// The reduced word of the finite part, leftmost first.
    pub fn finite_word(&self, f: &CollectedForm) -> Vec<usize> {
        self.finite
            .reduced_word(&f.finite)
            .expect("the finite part stays in the Weyl group")
    }

    pub fn to_word(&self, f: &CollectedForm) -> Word {
        let mut w = Word::new();
        for i in self.finite_word(f) {
            w.push(Generator::X(i), 1);
        }
        for r in 1..=self.nullity {
            for i in 1..=self.rank {
                w.push(Generator::Y(i, r), f.y[i - 1][r - 1]);
            }
        }
        for ((r, s), &e) in pairs(self.nullity).into_iter().zip(&f.z) {
            w.push(Generator::Z(r, s), e);
        }
        w
    }
}

pub fn collect_form(word: &Word, p: &Presentation) -> Result<CollectedForm, PresentationError> {
    Collector::new(p).form(word)
}

/// Canonical form of `word` in the group presented by `p`.
pub fn collect(word: &Word, p: &Presentation) -> Result<Word, PresentationError> {
    let c = Collector::new(p);
    Ok(c.to_word(&c.form(word)?))
}

#[cfg(test)]
mod tests {
    use super::super::{parse_word, present_H, present_W, render_word};
    use super::*;
    use crate::rootsystem::{cartan_matrix, CartanType};
    use crate::semilattice::{standard_semilattice, Semilattice, SupportClass};

    #[test]
    fn collect_examples() {
        let a1 = cartan_matrix(CartanType::A, 1).unwrap();
        let h = present_H(&a1, &standard_semilattice(2, 3).unwrap()).unwrap();
        let w = collect(&parse_word("y1_2 * y1_1").unwrap(), &h).unwrap();
        assert_eq!(render_word(&w), "y1_1 * y1_2 * z1_2^-2");
        assert!(collect(&parse_word("x1").unwrap(), &h).is_err());

        let wp = present_W(&a1, &standard_semilattice(2, 2).unwrap()).unwrap();
        let w = collect(&parse_word("y1_1 * x1").unwrap(), &wp).unwrap();
        assert_eq!(render_word(&w), "x1 * y1_1^-1");
        assert_eq!(render_word(&collect(&parse_word("x1^3").unwrap(), &wp).unwrap()), "x1");
    }

    #[test]
    fn relators_collect_to_identity_and_collection_is_idempotent() {
        let cases = [
            (CartanType::A, 1, standard_semilattice(3, 5).unwrap()),
            (CartanType::A, 2, Semilattice::new(SupportClass::full(3).unwrap()).unwrap()),
            (CartanType::D, 4, Semilattice::new(SupportClass::full(2).unwrap()).unwrap()),
        ];
        for (kind, l, s) in cases {
            let c = cartan_matrix(kind, l).unwrap();
            for p in [present_H(&c, &s).unwrap(), present_W(&c, &s).unwrap()] {
                for r in &p.relators {
                    let w = collect(&r.word(), &p).unwrap();
                    assert!(w.is_empty(), "{}: {}", r.equation(), w);
                    let lhs = collect(&r.lhs, &p).unwrap();
                    assert_eq!(collect(&lhs, &p).unwrap(), lhs);
                }
            }
        }
    }
}
