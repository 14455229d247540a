//! Randomized property suites over the matrix realization. Every sample draws
//! from its own ChaCha stream `(seed, index)`, so results do not depend on the
//! execution mode.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactlinalg::{IntegerLattice, Scalar, Vector};
use crate::hyperbolic::{GroupElement, HyperbolicError, SpaceSignature};
use crate::parallel::{self, Execution};
use crate::presentation::{present, verify_presentation, Group, Presentation, VerifyOptions};
use crate::rootsystem::{cartan_matrix, finite_roots, CartanData, CartanType};
use crate::semilattice::{standard_indices, standard_semilattice, Semilattice, SupportClass};
use crate::weylgroup::{pairs, HNormalForm, WeylContext, WeylError};

#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub samples: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            samples: 500,
            seed: 0,
            execution: Execution::Parallel,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub property: String,
    pub config: String,
    pub trials: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CheckResult {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }

    fn from_outcomes(property: &str, config: &str, outcomes: Vec<Result<(), String>>) -> CheckResult {
        let failures = outcomes.iter().filter(|o| o.is_err()).count();
        CheckResult {
            property: property.to_string(),
            config: config.to_string(),
            trials: outcomes.len(),
            failures,
            first_failure: outcomes.into_iter().find_map(Result::err),
        }
    }

    pub fn line(&self) -> String {
        format!(
            "{} {:<28} {:<30} {}/{}{}",
            if self.pass() { "PASS" } else { "FAIL" },
            self.property,
            self.config,
            self.trials - self.failures,
            self.trials,
            self.first_failure
                .as_ref()
                .map(|f| format!("  first failure: {f}"))
                .unwrap_or_default()
        )
    }
}

fn rng_for(seed: u64, salt: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    rng.set_stream(index as u64);
    rng
}

fn run<F>(opts: &SuiteOptions, salt: u64, n: usize, f: F) -> Vec<Result<(), String>>
where
    F: Fn(&mut ChaCha8Rng) -> Result<(), String> + Sync + Send,
{
    parallel::map_indexed(n, opts.execution, |i| f(&mut rng_for(opts.seed, salt, i)))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err_str<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Configuration labels such as `A2 nu=3 m=7`.
pub fn label(cartan: &CartanData, s: &Semilattice) -> String {
    format!("{} nu={} m={}", cartan.name(), s.nullity(), s.index())
}

/// `A_1` with every tabulated semilattice, and `A_2`, `A_3`, `D_4` with the
/// lattice, for `ν` in the given range.
pub fn standard_configurations(nullities: std::ops::RangeInclusive<usize>) -> Vec<(CartanData, Semilattice)> {
    let mut out = Vec::new();
    for (kind, l) in [(CartanType::A, 1), (CartanType::A, 2), (CartanType::A, 3), (CartanType::D, 4)] {
        let c = cartan_matrix(kind, l).expect("valid type");
        for nu in nullities.clone() {
            if l == 1 {
                for m in standard_indices(nu) {
                    out.push((c.clone(), standard_semilattice(nu, m).expect("table row")));
                }
            } else {
                let s = Semilattice::new(SupportClass::full(nu).expect("ν small")).expect("valid");
                out.push((c.clone(), s));
            }
        }
    }
    out
}

fn random_v(space: &SpaceSignature, rng: &mut ChaCha8Rng, range: i64) -> Vector {
    let (l, nu) = (space.rank(), space.nullity());
    let a: Vec<i64> = (0..l).map(|_| rng.gen_range(-range..=range)).collect();
    let s: Vec<i64> = (0..nu).map(|_| rng.gen_range(-range..=range)).collect();
    space.vector(&a, &s, &vec![0; nu])
}

fn random_radical(space: &SpaceSignature, rng: &mut ChaCha8Rng, range: i64) -> Vector {
    let (l, nu) = (space.rank(), space.nullity());
    let s: Vec<i64> = (0..nu).map(|_| rng.gen_range(-range..=range)).collect();
    space.vector(&vec![0; l], &s, &vec![0; nu])
}

/// `α̇ + σ` with `α̇` a finite root, so `(α, α) = 2`.
fn random_real_root(space: &SpaceSignature, roots: &[Vec<i64>], rng: &mut ChaCha8Rng) -> Vector {
    let nu = space.nullity();
    let dot = &roots[rng.gen_range(0..roots.len())];
    let s: Vec<i64> = (0..nu).map(|_| rng.gen_range(-2..=2)).collect();
    space.vector(dot, &s, &vec![0; nu])
}

type Identity = fn(&Arc<SpaceSignature>, &[Vec<i64>], &mut ChaCha8Rng) -> Result<(), HyperbolicError>;

macro_rules! same {
    ($lhs:expr, $rhs:expr) => {
        if $lhs != $rhs {
            return Err(HyperbolicError::NotOrthogonal);
        }
    };
}

fn id_scalar_shift(s: &Arc<SpaceSignature>, _: &[Vec<i64>], rng: &mut ChaCha8Rng) -> Result<(), HyperbolicError> {
    let (a, sg) = (random_v(s, rng, 2), random_radical(s, rng, 2));
    let r = Scalar::from(rng.gen_range(-3i64..=3));
    same!(s.t_map(&a.scaled(&r), &sg)?, s.t_map(&a, &sg.scaled(&r))?);
    Ok(())
}

fn id_sigma_sum(s: &Arc<SpaceSignature>, _: &[Vec<i64>], rng: &mut ChaCha8Rng) -> Result<(), HyperbolicError> {
    let (a, sg, dl) = (random_v(s, rng, 2), random_radical(s, rng, 2), random_radical(s, rng, 2));
    let half = s.bilinear(&a, &a)?.div_exact(&Scalar::from(2)).expect("even");
    let rhs = s
        .t_map(&a, &sg)?
        .compose(&s.t_map(&a, &dl)?)
        .compose(&s.t_map(&dl, &sg.scaled(&half))?);
    same!(s.t_map(&a, &(&sg + &dl))?, rhs);
    Ok(())
}

fn id_alpha_sum(s: &Arc<SpaceSignature>, _: &[Vec<i64>], rng: &mut ChaCha8Rng) -> Result<(), HyperbolicError> {
    let (a, b, sg) = (random_v(s, rng, 2), random_v(s, rng, 2), random_radical(s, rng, 2));
    same!(s.t_map(&(&a + &b), &sg)?, s.t_map(&a, &sg)?.compose(&s.t_map(&b, &sg)?));
    Ok(())
}

fn id_commutator(s: &Arc<SpaceSignature>, _: &[Vec<i64>], rng: &mut ChaCha8Rng) -> Result<(), HyperbolicError> {
    let (a, b) = (random_v(s, rng, 2), random_v(s, rng, 2));
    let (sg, dl) = (random_radical(s, rng, 2), random_radical(s, rng, 2));
    let lhs = s.t_map(&a, &sg)?.commutator(&s.t_map(&b, &dl)?)?;
    same!(lhs, s.t_map(&sg, &dl.scaled(&s.bilinear(&a, &b)?))?);
    Ok(())
}

fn id_bilinear_commutator(s: &Arc<SpaceSignature>, _: &[Vec<i64>], rng: &mut ChaCha8Rng) -> Result<(), HyperbolicError> {
    let (a, b, c) = (random_v(s, rng, 2), random_v(s, rng, 2), random_v(s, rng, 2));
    let (sg, dl, tau) = (random_radical(s, rng, 2), random_radical(s, rng, 2), random_radical(s, rng, 2));
    let (ta, tb, tc) = (s.t_map(&a, &sg)?, s.t_map(&b, &dl)?, s.t_map(&c, &tau)?);
    same!(ta.compose(&tb).commutator(&tc)?, ta.commutator(&tc)?.compose(&tb.commutator(&tc)?));
    Ok(())
}

fn id_conjugation(s: &Arc<SpaceSignature>, roots: &[Vec<i64>], rng: &mut ChaCha8Rng) -> Result<(), HyperbolicError> {
    let mut w = s.identity();
    for _ in 0..rng.gen_range(1..=4) {
        w = w.compose(&s.reflection(&random_real_root(s, roots, rng))?);
    }
    let (a, sg) = (random_v(s, rng, 2), random_radical(s, rng, 2));
    same!(w.conjugate(&s.t_map(&a, &sg)?)?, s.t_map(&w.apply(&a)?, &sg)?);
    Ok(())
}

fn id_reflection_product(s: &Arc<SpaceSignature>, roots: &[Vec<i64>], rng: &mut ChaCha8Rng) -> Result<(), HyperbolicError> {
    let a = random_real_root(s, roots, rng);
    let sg = random_radical(s, rng, 2);
    same!(s.t_map(&a, &sg)?, s.reflection(&(&a + &sg))?.compose(&s.reflection(&a)?));
    Ok(())
}

fn id_radical_inverse(s: &Arc<SpaceSignature>, _: &[Vec<i64>], rng: &mut ChaCha8Rng) -> Result<(), HyperbolicError> {
    let (sg, dl) = (random_radical(s, rng, 3), random_radical(s, rng, 3));
    same!(s.t_map(&sg, &dl)?.inverse()?, s.t_map(&dl, &sg)?);
    Ok(())
}

fn id_product_formula(s: &Arc<SpaceSignature>, _: &[Vec<i64>], rng: &mut ChaCha8Rng) -> Result<(), HyperbolicError> {
    let nu = s.nullity();
    let a = random_v(s, rng, 2);
    let n: Vec<i64> = (0..nu).map(|_| rng.gen_range(-3..=3)).collect();
    let half = s.bilinear(&a, &a)?.div_exact(&Scalar::from(2)).expect("even");
    let total = s.vector(&vec![0; s.rank()], &n, &vec![0; nu]);
    let mut rhs = s.identity();
    for r in 1..=nu {
        rhs = rhs.compose(&s.t_map(&a, &s.sigma(r).scaled(&Scalar::from(n[r - 1])))?);
    }
    for r in 1..=nu {
        for t in r + 1..=nu {
            let coef = &half * (n[r - 1] * n[t - 1]);
            rhs = rhs.compose(&s.t_map(&s.sigma(t), &s.sigma(r).scaled(&coef))?);
        }
    }
    same!(s.t_map(&a, &total)?, rhs);
    Ok(())
}

fn id_radical_central(s: &Arc<SpaceSignature>, roots: &[Vec<i64>], rng: &mut ChaCha8Rng) -> Result<(), HyperbolicError> {
    let c = s.t_map(&random_radical(s, rng, 3), &random_radical(s, rng, 3))?;
    let g: GroupElement = if rng.gen_bool(0.5) {
        s.reflection(&random_real_root(s, roots, rng))?
    } else {
        s.t_map(&random_v(s, rng, 2), &random_radical(s, rng, 2))?
    };
    same!(c.compose(&g), g.compose(&c));
    Ok(())
}

const IDENTITIES: &[(&str, Identity)] = &[
    ("(i) scalar shift", id_scalar_shift),
    ("(ii) sigma sum", id_sigma_sum),
    ("(iii) alpha sum", id_alpha_sum),
    ("(iv) commutator", id_commutator),
    ("(v) bilinear commutator", id_bilinear_commutator),
    ("(vi) conjugation", id_conjugation),
    ("(vii) reflection product", id_reflection_product),
    ("(viii) radical inverse", id_radical_inverse),
    ("product formula", id_product_formula),
    ("radical maps central", id_radical_central),
];

/// The `T`-map identities, each over `opts.samples` random instances.
pub fn identity_suite(cartan: &CartanData, nullity: usize, opts: &SuiteOptions) -> Vec<CheckResult> {
    let space = SpaceSignature::new(cartan, nullity);
    let roots = finite_roots(cartan).roots().to_vec();
    let config = format!("{} nu={}", cartan.name(), nullity);
    IDENTITIES
        .iter()
        .enumerate()
        .map(|(k, (name, f))| {
            let outcomes = run(opts, 100 + k as u64, opts.samples, |rng| {
                f(&space, &roots, rng).map_err(|e| match e {
                    HyperbolicError::NotOrthogonal => "matrices differ".to_string(),
                    other => other.to_string(),
                })
            });
            CheckResult::from_outcomes(name, &config, outcomes)
        })
        .collect()
}

/// A random word over `w_i`, `t_{i,r}`, `c_{r,s}` and their inverses.
pub fn random_generator_word(ctx: &WeylContext, rng: &mut ChaCha8Rng, max_len: usize) -> Result<GroupElement, WeylError> {
    let (l, nu) = (ctx.rank(), ctx.nullity());
    let mut g = ctx.identity();
    for _ in 0..rng.gen_range(0..=max_len) {
        let pick = rng.gen_range(0..3);
        let x = if pick == 0 || nu == 0 {
            ctx.gen_w(rng.gen_range(1..=l))?
        } else if pick == 1 || nu < 2 {
            ctx.gen_t(rng.gen_range(1..=l), rng.gen_range(1..=nu))?
        } else {
            let r = rng.gen_range(1..nu);
            ctx.gen_c(r, rng.gen_range(r + 1..=nu))?
        };
        let x = if rng.gen_bool(0.5) { x.inverse()? } else { x };
        g = g.compose(&x);
    }
    Ok(g)
}

fn random_h_form(ctx: &WeylContext, rng: &mut ChaCha8Rng, range: i64) -> HNormalForm {
    let (l, nu) = (ctx.rank(), ctx.nullity());
    HNormalForm {
        n: (0..l).map(|_| (0..nu).map(|_| rng.gen_range(-range..=range)).collect()).collect(),
        m: (0..pairs(nu).len()).map(|_| rng.gen_range(-range..=range)).collect(),
    }
}

/// Normal-form round trip over random generator words of length at most 30.
pub fn round_trip_suite(ctx: &WeylContext, opts: &SuiteOptions) -> Vec<CheckResult> {
    let config = label(ctx.cartan(), ctx.semilattice());
    let outcomes = run(opts, 200, opts.samples, |rng| {
        let g = random_generator_word(ctx, rng, 30).map_err(err_str)?;
        let nf = ctx.w_normal_form(&g).map_err(err_str)?;
        ensure(ctx.reconstruct(&nf).map_err(err_str)? == g, || "reconstruction differs".into())
    });
    let inconsistent = outcomes
        .iter()
        .filter(|o| matches!(o, Err(e) if e.starts_with("inconsistent probe")))
        .count();
    let mut probe = CheckResult::from_outcomes("probe consistency", &config, vec![Ok(()); outcomes.len()]);
    probe.failures = inconsistent;
    vec![CheckResult::from_outcomes("normal-form round trip", &config, outcomes), probe]
}

/// Every relator maps to the identity matrix.
pub fn soundness(p: &Presentation, ctx: &WeylContext) -> CheckResult {
    let rep = verify_presentation(
        p,
        ctx,
        &VerifyOptions {
            samples: 0,
            ..VerifyOptions::default()
        },
    );
    let outcomes = rep
        .relators
        .iter()
        .map(|r| ensure(r.pass, || format!("relator {} fails", r.equation)))
        .collect();
    CheckResult::from_outcomes(&format!("{} relators sound", p.group), &label(&p.cartan, ctx.semilattice()), outcomes)
}

/// Collect-equality agrees with matrix-equality on random word pairs.
pub fn faithfulness(p: &Presentation, ctx: &WeylContext, opts: &SuiteOptions) -> CheckResult {
    let rep = verify_presentation(
        p,
        ctx,
        &VerifyOptions {
            samples: opts.samples,
            seed: opts.seed,
            max_len: 20,
            execution: opts.execution,
        },
    );
    let inj = rep.injectivity;
    CheckResult {
        property: format!("{} faithful (eq {}/{})", p.group, inj.collect_equal, inj.pairs),
        config: label(&p.cartan, ctx.semilattice()),
        trials: inj.pairs,
        failures: inj.disagreements,
        first_failure: inj.examples.first().map(|(u, v)| format!("{u} vs {v}")),
    }
}

/// Both presentations for one configuration: soundness and faithfulness.
pub fn presentation_suite(ctx: &WeylContext, opts: &SuiteOptions) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for group in [Group::H, Group::W] {
        match present(group, ctx.cartan(), ctx.semilattice()) {
            Ok(p) => {
                out.push(soundness(&p, ctx));
                out.push(faithfulness(&p, ctx, opts));
            }
            Err(e) => out.push(CheckResult::from_outcomes(
                &format!("{group} presentation"),
                &label(ctx.cartan(), ctx.semilattice()),
                vec![Err(e.to_string())],
            )),
        }
    }
    out
}

fn lattice_points(rank: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut pts = vec![vec![]];
    for _ in 0..rank {
        pts = pts
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-bound..=bound).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    pts
}

/// `F(S)` is central, elements with a nonzero `t`-part are not, and `c_{r,s}`
/// is central exactly when `n(r,s) = 1`.
pub fn center_suite(ctx: &WeylContext, opts: &SuiteOptions) -> Vec<CheckResult> {
    let config = label(ctx.cartan(), ctx.semilattice());
    let (l, nu) = (ctx.rank(), ctx.nullity());
    let mut gens = Vec::new();
    for i in 1..=l {
        gens.push(ctx.gen_w(i).expect("in range"));
        for r in 1..=nu {
            gens.push(ctx.gen_t(i, r).expect("in range"));
        }
    }
    for (r, s) in pairs(nu) {
        gens.push(ctx.gen_c(r, s).expect("in range"));
    }
    let basis: Vec<Vec<i64>> = ctx
        .central()
        .fs()
        .basis()
        .iter()
        .map(|row| row.iter().map(|x| x.to_i64().expect("small")).collect())
        .collect();
    let points = lattice_points(basis.len(), 3);
    let outcomes = parallel::map_slice(&points, opts.execution, |coords| {
        let mut m = vec![0i64; pairs(nu).len()];
        for (c, row) in coords.iter().zip(&basis) {
            for (x, b) in m.iter_mut().zip(row) {
                *x += c * b;
            }
        }
        let z = ctx.central_element(&m).map_err(err_str)?;
        for g in &gens {
            ensure(z.compose(g) == g.compose(&z), || format!("{m:?} does not commute with a generator"))?;
        }
        ensure(ctx.is_central(&z).map_err(err_str)?, || format!("{m:?} not recognized as central"))
    });
    let mut out = vec![CheckResult::from_outcomes("F(S) central", &config, outcomes)];

    let finite = finite_roots(ctx.cartan());
    let trials = if nu == 0 { 0 } else { opts.samples.max(200) };
    let outcomes = run(opts, 300, trials, |rng| {
        let mut h = random_h_form(ctx, rng, 3);
        if h.n.iter().flatten().all(|&x| x == 0) {
            h.n[rng.gen_range(0..l)][rng.gen_range(0..nu)] = 1;
        }
        let len = rng.gen_range(0..=finite.positive_roots().count());
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=l)).collect();
        let g = ctx
            .finite_element(&word)
            .and_then(|w| Ok(w.compose(&ctx.reconstruct_h(&h)?)))
            .map_err(err_str)?;
        ensure(!ctx.is_central(&g).map_err(err_str)?, || format!("n = {:?} reported central", h.n))
    });
    if nu > 0 {
        out.push(CheckResult::from_outcomes("nonzero n-part not central", &config, outcomes));
    }

    let outcomes = pairs(nu)
        .into_iter()
        .map(|(r, s)| {
            let c = ctx.gen_c(r, s).map_err(err_str)?;
            let n = ctx.central().n(r, s);
            ensure(ctx.is_central(&c.pow(2).map_err(err_str)?).map_err(err_str)?, || {
                format!("c_{r},{s}^2 not central")
            })?;
            ensure(ctx.is_central(&c).map_err(err_str)? == (n == 1), || {
                format!("c_{r},{s} central status disagrees with n = {n}")
            })
        })
        .collect();
    out.push(CheckResult::from_outcomes("c_rs central iff n(r,s)=1", &config, outcomes));
    out
}

/// Two-step nilpotency, torsion-freeness witnesses, the rank of `C` and
/// `n(r,s) | a_{i,j}`.
pub fn structural_suite(ctx: &WeylContext, opts: &SuiteOptions) -> Vec<CheckResult> {
    let config = label(ctx.cartan(), ctx.semilattice());
    let nu = ctx.nullity();
    let mut out = Vec::new();
    let outcomes = run(opts, 400, opts.samples, |rng| {
        let h: Vec<GroupElement> = (0..3)
            .map(|_| ctx.reconstruct_h(&random_h_form(ctx, rng, 3)))
            .collect::<Result<_, _>>()
            .map_err(err_str)?;
        let c = h[0].commutator(&h[1]).and_then(|c| c.commutator(&h[2])).map_err(err_str)?;
        ensure(c.is_identity(), || "[[h1,h2],h3] != 1".into())
    });
    out.push(CheckResult::from_outcomes("two-step nilpotent", &config, outcomes));

    let outcomes = run(opts, 500, opts.samples, |rng| {
        let form = random_h_form(ctx, rng, 3);
        if form.is_trivial() {
            return Ok(());
        }
        let h = ctx.reconstruct_h(&form).map_err(err_str)?;
        for k in 2..=5 {
            ensure(!h.pow(k).map_err(err_str)?.is_identity(), || format!("h^{k} = 1 for {form:?}"))?;
        }
        Ok(())
    });
    out.push(CheckResult::from_outcomes("torsion free", &config, outcomes));

    let rank_check = (|| {
        let rows: Vec<Vec<i64>> = pairs(nu)
            .into_iter()
            .map(|(r, s)| Ok(ctx.h_normal_form(&ctx.gen_c(r, s)?)?.m))
            .collect::<Result<_, WeylError>>()
            .map_err(err_str)?;
        let lat = IntegerLattice::from_i64s(rows.first().map_or(0, Vec::len), &rows).map_err(err_str)?;
        let p = nu * nu.saturating_sub(1) / 2;
        ensure(lat.rank() == p, || format!("rank {} != {p}", lat.rank()))
    })();
    out.push(CheckResult::from_outcomes("rank of C", &config, vec![rank_check]));

    let a = ctx.cartan();
    let outcomes = pairs(nu)
        .into_iter()
        .flat_map(|(r, s)| {
            let n = i64::from(ctx.central().n(r, s));
            (1..=a.rank()).flat_map(move |i| {
                (1..=a.rank()).map(move |j| {
                    ensure(a.entry(i, j) % n == 0 && (n == 1 || n == 2), || {
                        format!("n({r},{s}) = {n} does not divide a_{i},{j}")
                    })
                })
            })
        })
        .collect();
    out.push(CheckResult::from_outcomes("n(r,s) divides a_ij", &config, outcomes));
    out
}
