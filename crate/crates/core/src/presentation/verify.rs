//! Evaluation of words under `x_i ↦ w_{α_i}`, `y_{i,r} ↦ t_{i,r}`,
//! `z_{r,s} ↦ c_{r,s}^{n(r,s)}` and verification of presentations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::collect::Collector;
use super::word::{render_word, Generator, Word};
use super::{Presentation, PresentationError};
use crate::hyperbolic::GroupElement;
use crate::parallel::{self, Execution};
use crate::weylgroup::WeylContext;

pub fn evaluate(word: &Word, ctx: &WeylContext) -> Result<GroupElement, PresentationError> {
    let mut acc = ctx.identity();
    for &(g, e) in word.letters() {
        let m = match g {
            Generator::X(i) => {
                if e.rem_euclid(2) == 0 {
                    ctx.gen_w(i)?;
                    continue;
                }
                ctx.gen_w(i)?
            }
            Generator::Y(i, r) => ctx.t_pow(i, r, e)?,
            Generator::Z(r, s) => {
                ctx.gen_c(r, s)?;
                let n = i64::from(ctx.central().n(r, s));
                let m = e.checked_mul(n).ok_or(super::WordError::Overflow)?;
                ctx.c_pow(r, s, m)?
            }
        };
        acc = acc.compose(&m);
    }
    Ok(acc)
}

/// A random word over the generators of `p` of length `0..=max_len`, with
/// exponents in `{±1, ±2}`.
pub fn random_word<R: Rng>(p: &Presentation, rng: &mut R, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let mut w = Word::new();
    if p.generators.is_empty() {
        return w;
    }
    for _ in 0..len {
        let g = p.generators[rng.gen_range(0..p.generators.len())];
        let mag = if rng.gen_bool(0.8) { 1 } else { 2 };
        w.push(g, if rng.gen_bool(0.5) { mag } else { -mag });
    }
    w
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Number of word pairs for the injectivity spot-check.
    pub samples: usize,
    pub seed: u64,
    pub max_len: usize,
    pub execution: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: 500,
            seed: 0,
            max_len: 20,
            execution: Execution::Parallel,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelatorCheck {
    pub equation: String,
    pub word: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectivityReport {
    pub pairs: usize,
    pub collect_equal: usize,
    pub matrix_equal: usize,
    pub disagreements: usize,
    /// Up to five offending pairs.
    pub examples: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub presentation: String,
    pub relators: Vec<RelatorCheck>,
    pub injectivity: InjectivityReport,
    pub pass: bool,
}

impl VerificationReport {
    pub fn failed_relators(&self) -> impl Iterator<Item = &RelatorCheck> {
        self.relators.iter().filter(|r| !r.pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.presentation);
        for r in &self.relators {
            out.push_str(&format!("  {} {}\n", if r.pass { "ok  " } else { "FAIL" }, r.equation));
        }
        let inj = &self.injectivity;
        out.push_str(&format!(
            "  injectivity: {} pairs, {} collect-equal, {} matrix-equal, {} disagreements\n",
            inj.pairs, inj.collect_equal, inj.matrix_equal, inj.disagreements
        ));
        for (u, v) in &inj.examples {
            out.push_str(&format!("    {u}  vs  {v}\n"));
        }
        out
    }
}

/// Builds the second word of a sample pair. The four kinds are: the first
/// word with a conjugated relator spliced in, its collected form, a one-letter
/// perturbation, and an independent word.
fn partner(p: &Presentation, collector: &Collector, u: &Word, kind: usize, rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let letters = u.letters();
    let cut = rng.gen_range(0..=letters.len());
    let head = Word::from_letters(letters[..cut].iter().copied());
    let tail = Word::from_letters(letters[cut..].iter().copied());
    match kind {
        0 if !p.relators.is_empty() => {
            let rel = p.relators[rng.gen_range(0..p.relators.len())].word();
            let rel = if rng.gen_bool(0.5) { rel.inverse() } else { rel };
            let g = random_word(p, rng, 3);
            head.concat(&g).concat(&rel).concat(&g.inverse()).concat(&tail)
        }
        1 => collector
            .form(u)
            .map(|f| collector.to_word(&f))
            .unwrap_or_else(|_| u.clone()),
        2 if !p.generators.is_empty() => {
            let g = p.generators[rng.gen_range(0..p.generators.len())];
            head.concat(&Word::letter(g, if rng.gen_bool(0.5) { 1 } else { -1 })).concat(&tail)
        }
        _ => random_word(p, rng, max_len),
    }
}

pub fn verify_presentation(p: &Presentation, ctx: &WeylContext, opts: &VerifyOptions) -> VerificationReport {
    let relators = parallel::map_slice(&p.relators, opts.execution, |r| {
        let w = r.word();
        RelatorCheck {
            equation: r.equation(),
            word: render_word(&w),
            pass: evaluate(&w, ctx).map(|m| m.is_identity()).unwrap_or(false),
        }
    });
    let collector = Collector::new(p);
    let samples = parallel::map_indexed(opts.samples, opts.execution, |idx| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(idx as u64);
        let u = random_word(p, &mut rng, opts.max_len);
        let v = partner(p, &collector, &u, idx % 4, &mut rng, opts.max_len);
        let ceq = match (collector.form(&u), collector.form(&v)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        };
        let meq = match (evaluate(&u, ctx), evaluate(&v, ctx)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        };
        (ceq, meq, u, v)
    });
    let mut inj = InjectivityReport {
        pairs: samples.len(),
        collect_equal: 0,
        matrix_equal: 0,
        disagreements: 0,
        examples: Vec::new(),
    };
    for (ceq, meq, u, v) in samples {
        inj.collect_equal += usize::from(ceq);
        inj.matrix_equal += usize::from(meq);
        if ceq != meq {
            inj.disagreements += 1;
            if inj.examples.len() < 5 {
                inj.examples.push((render_word(&u), render_word(&v)));
            }
        }
    }
    let pass = relators.iter().all(|r| r.pass) && inj.disagreements == 0;
    VerificationReport {
        presentation: p.title(),
        relators,
        injectivity: inj,
        pass,
    }
}
