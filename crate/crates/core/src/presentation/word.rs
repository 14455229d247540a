//! Generators `x_i`, `y_{i,r}`, `z_{r,s}` and freely reduced words over them.
//!
//! Grammar: `word := term ('*' term)* | ε`, `term := symbol ('^' signed-int)?`,
//! `symbol := 'x' idx | 'y' idx '_' idx | 'z' idx '_' idx`. Whitespace is
//! ignored; the empty word is written `1`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator {0}")]
    UnknownGenerator(Generator),
    #[error("exponent overflow")]
    Overflow,
}

/// Ordered `x < y < z`, then by indices; `y_{i,r}` is ordered by `(r, i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    X(usize),
    Y(usize, usize),
    Z(usize, usize),
}

impl Generator {
    fn sort_key(&self) -> (u8, usize, usize) {
        match *self {
            Generator::X(i) => (0, i, 0),
            Generator::Y(i, r) => (1, r, i),
            Generator::Z(r, s) => (2, r, s),
        }
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::X(i) => write!(f, "x{i}"),
            Generator::Y(i, r) => write!(f, "y{i}_{r}"),
            Generator::Z(r, s) => write!(f, "z{r}_{s}"),
        }
    }
}

/// A freely reduced word: no zero exponents, no two adjacent equal symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<(Generator, i64)>);

impl Word {
    pub fn new() -> Word {
        Word(Vec::new())
    }

    pub fn letter(g: Generator, e: i64) -> Word {
        let mut w = Word::new();
        w.push(g, e);
        w
    }

    pub fn from_letters<I: IntoIterator<Item = (Generator, i64)>>(letters: I) -> Word {
        let mut w = Word::new();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    pub fn letters(&self) -> &[(Generator, i64)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends `g^e`, merging with the last letter. Panics on exponent overflow;
    /// use [`Word::try_push`] for untrusted input.
    pub fn push(&mut self, g: Generator, e: i64) {
        self.try_push(g, e).expect("exponent overflow");
    }

    pub fn try_push(&mut self, g: Generator, e: i64) -> Result<(), WordError> {
        if e == 0 {
            return Ok(());
        }
        if let Some(last) = self.0.last_mut() {
            if last.0 == g {
                last.1 = last.1.checked_add(e).ok_or(WordError::Overflow)?;
                if last.1 == 0 {
                    self.0.pop();
                }
                return Ok(());
            }
        }
        self.0.push((g, e));
        Ok(())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.0 {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word::from_letters(self.0.iter().rev().map(|&(g, e)| (g, -e)))
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::new();
        for _ in 0..n.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().concat(&b.inverse()).concat(a).concat(b)
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.0.iter().map(|&(g, _)| g)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_word(self))
    }
}

pub fn render_word(w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.0.iter()
        .map(|&(g, e)| if e == 1 { g.to_string() } else { format!("{g}^{e}") })
        .collect::<Vec<_>>()
        .join(" * ")
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    text: &'a str,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.text.len(), |&(p, _)| p)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, WordError> {
        Err(WordError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<(), WordError> {
        if self.peek() == Some(c) {
            self.at += 1;
            Ok(())
        } else {
            match self.peek() {
                Some(got) => self.error(format!("expected '{c}', found '{got}'")),
                None => self.error(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn digits(&mut self) -> Result<u64, WordError> {
        let start = self.at;
        let mut v: u64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(d)))
                .ok_or(WordError::Overflow)?;
            self.at += 1;
        }
        if self.at == start {
            return match self.peek() {
                Some(c) => self.error(format!("expected a digit, found '{c}'")),
                None => self.error("expected a digit, found end of input"),
            };
        }
        Ok(v)
    }

    fn index(&mut self) -> Result<usize, WordError> {
        let pos = self.pos();
        let v = self.digits()?;
        if v == 0 {
            return Err(WordError::Syntax {
                pos,
                msg: "indices start at 1".into(),
            });
        }
        usize::try_from(v).map_err(|_| WordError::Overflow)
    }

    fn term(&mut self) -> Result<(Generator, i64), WordError> {
        let g = match self.peek() {
            Some('x') => {
                self.at += 1;
                Generator::X(self.index()?)
            }
            Some(c @ ('y' | 'z')) => {
                self.at += 1;
                let a = self.index()?;
                self.expect('_')?;
                let b = self.index()?;
                if c == 'y' {
                    Generator::Y(a, b)
                } else {
                    Generator::Z(a, b)
                }
            }
            Some(c) => return self.error(format!("expected a generator, found '{c}'")),
            None => return self.error("expected a generator, found end of input"),
        };
        let mut e = 1i64;
        if self.peek() == Some('^') {
            self.at += 1;
            let negative = match self.peek() {
                Some('-') => {
                    self.at += 1;
                    true
                }
                Some('+') => {
                    self.at += 1;
                    false
                }
                _ => false,
            };
            let v = i64::try_from(self.digits()?).map_err(|_| WordError::Overflow)?;
            e = if negative { -v } else { v };
        }
        Ok((g, e))
    }
}

pub fn parse_word(text: &str) -> Result<Word, WordError> {
    let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    if chars.is_empty() || (chars.len() == 1 && chars[0].1 == '1') {
        return Ok(Word::new());
    }
    let mut cur = Cursor { chars, at: 0, text };
    let mut w = Word::new();
    loop {
        let (g, e) = cur.term()?;
        w.try_push(g, e)?;
        match cur.peek() {
            None => break,
            Some('*') => cur.at += 1,
            Some(c) => return cur.error(format!("expected '*' or end of input, found '{c}'")),
        }
    }
    Ok(w)
}

impl std::str::FromStr for Word {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let w = parse_word("x1 * y1_2^-1 * x1").unwrap();
        assert_eq!(
            w.letters(),
            &[(Generator::X(1), 1), (Generator::Y(1, 2), -1), (Generator::X(1), 1)]
        );
        assert!(parse_word("y1_1 * y1_1^-1").unwrap().is_empty());
        assert_eq!(parse_word("z1_2^3").unwrap().letters(), &[(Generator::Z(1, 2), 3)]);
        assert!(parse_word("1").unwrap().is_empty());
        assert!(parse_word("  ").unwrap().is_empty());
        assert_eq!(parse_word("y1_1*y1_2*y1_1^-1*y1_2^-1").unwrap().len(), 4);
        assert_eq!(parse_word(" y 1 _ 2 ^ + 2 ").unwrap().letters(), &[(Generator::Y(1, 2), 2)]);
        assert_eq!(parse_word("x12").unwrap().letters(), &[(Generator::X(12), 1)]);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = |t: &str| match parse_word(t) {
            Err(WordError::Syntax { pos, .. }) => pos,
            other => panic!("{t}: {other:?}"),
        };
        assert_eq!(err("x1 * w2"), 5);
        assert_eq!(err("y1"), 2);
        assert_eq!(err("x1 x2"), 3);
        assert_eq!(err("x0"), 1);
        assert_eq!(err("x1 *"), 4);
        assert_eq!(err("x1^"), 3);
        assert!(matches!(parse_word("x99999999999999999999999"), Err(WordError::Overflow)));
    }

    #[test]
    fn render_examples() {
        assert_eq!(render_word(&Word::new()), "1");
        let w = parse_word("y1_1^2*z1_2^-1 *x3").unwrap();
        assert_eq!(render_word(&w), "y1_1^2 * z1_2^-1 * x3");
    }

    #[test]
    fn generator_order() {
        let mut gs = vec![
            Generator::Z(1, 2),
            Generator::Y(2, 1),
            Generator::Y(1, 2),
            Generator::X(2),
            Generator::Y(1, 1),
        ];
        gs.sort();
        assert_eq!(
            gs,
            vec![
                Generator::X(2),
                Generator::Y(1, 1),
                Generator::Y(2, 1),
                Generator::Y(1, 2),
                Generator::Z(1, 2)
            ]
        );
    }

    fn arb_gen() -> impl Strategy<Value = Generator> {
        prop_oneof![
            (1usize..4).prop_map(Generator::X),
            (1usize..4, 1usize..4).prop_map(|(i, r)| Generator::Y(i, r)),
            (1usize..3, 3usize..5).prop_map(|(r, s)| Generator::Z(r, s)),
        ]
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((arb_gen(), -3i64..=3), 0..12).prop_map(Word::from_letters)
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(w in arb_word()) {
            prop_assert_eq!(parse_word(&render_word(&w)).unwrap(), w);
        }

        #[test]
        fn words_are_reduced(w in arb_word()) {
            prop_assert!(w.letters().iter().all(|&(_, e)| e != 0));
            prop_assert!(w.letters().windows(2).all(|p| p[0].0 != p[1].0));
            prop_assert!(w.concat(&w.inverse()).is_empty());
        }
    }
}
