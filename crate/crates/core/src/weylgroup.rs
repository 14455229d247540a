//! The realized groups: generators `w_i`, `t_{i,r}`, `c_{r,s}`, unique
//! normal forms read off from `λ_j` probes, the centre `F(S)` and the
//! exponents `n(r,s)`.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::exactlinalg::{IntegerLattice, Scalar, Vector};
use crate::hyperbolic::{GroupElement, HyperbolicError, SpaceSignature};
use crate::rootsystem::{CartanData, ExtendedRootSystem, RootSystemError};
use crate::semilattice::{Semilattice, Subset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("generator index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("element is not in H: {0}")]
    NotInH(String),
    #[error("element is not in W: {0}")]
    NotInW(String),
    #[error("inconsistent probe data for m_{{{r},{s}}}: {first} vs {second}")]
    ProbeInconsistency { r: usize, s: usize, first: i64, second: i64 },
    #[error("entry does not fit in 64 bits")]
    Overflow,
    #[error(transparent)]
    Hyperbolic(#[from] HyperbolicError),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
}

/// Pairs `(r, s)`, `1 ≤ r < s ≤ ν`, in lexicographic order. This order
/// indexes every central exponent vector.
pub fn pairs(nullity: usize) -> Vec<(usize, usize)> {
    (1..=nullity)
        .flat_map(|r| (r + 1..=nullity).map(move |s| (r, s)))
        .collect()
}

/// Position of `(r, s)` in [`pairs`].
pub fn pair_index(nullity: usize, r: usize, s: usize) -> usize {
    debug_assert!(1 <= r && r < s && s <= nullity);
    (r - 1) * nullity - (r - 1) * r / 2 + (s - r - 1)
}

/// `F(S)` in pair coordinates, the exponents `n(r,s)` and whether `F(S)` is
/// generated by the `c_{r,s}^{n(r,s)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralData {
    nullity: usize,
    fs: IntegerLattice,
    nrs: Vec<u8>,
    condition000: bool,
}

impl CentralData {
    pub fn fs(&self) -> &IntegerLattice {
        &self.fs
    }

    pub fn nullity(&self) -> usize {
        self.nullity
    }

    /// `n(r,s)` for `r < s`, 1-based.
    pub fn n(&self, r: usize, s: usize) -> u8 {
        self.nrs[pair_index(self.nullity, r, s)]
    }

    /// `n(r,s)` in pair order.
    pub fn nrs(&self) -> &[u8] {
        &self.nrs
    }

    /// Row `r` lists `n(r,s)` for `s = r+1..ν`.
    pub fn nrs_table(&self) -> Vec<Vec<u8>> {
        (1..self.nullity)
            .map(|r| (r + 1..=self.nullity).map(|s| self.n(r, s)).collect())
            .collect()
    }

    pub fn condition000(&self) -> bool {
        self.condition000
    }

    pub fn contains(&self, central: &[i64]) -> bool {
        let v: Vec<Scalar> = central.iter().map(|&x| Scalar::from(x)).collect();
        self.fs.contains(&v).unwrap_or(false)
    }

    /// Coordinates over the HNF basis of `F(S)`.
    pub fn coordinates(&self, central: &[i64]) -> Option<Vec<i64>> {
        let v: Vec<Scalar> = central.iter().map(|&x| Scalar::from(x)).collect();
        self.fs
            .coordinates(&v)
            .ok()
            .flatten()
            .and_then(|c| c.iter().map(Scalar::to_i64).collect())
    }
}

pub fn central_data(s: &Semilattice, _cartan: &CartanData) -> CentralData {
    let nu = s.nullity();
    let ps = pairs(nu);
    let dim = ps.len();
    let class = s.support();
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for j in class.subsets() {
        let mut v = vec![0i64; dim];
        for (k, &(r, t)) in ps.iter().enumerate() {
            if j.contains(r) && j.contains(t) {
                v[k] = 1;
            }
        }
        gens.push(v);
    }
    for (k, &(r, t)) in ps.iter().enumerate() {
        if !class.contains(Subset::from_elements([r, t])) {
            let mut v = vec![0i64; dim];
            v[k] = 2;
            gens.push(v);
        }
    }
    let fs = IntegerLattice::from_i64s(dim, &gens).expect("generators have pair dimension");
    let nrs: Vec<u8> = (0..dim)
        .map(|k| {
            let mut e = vec![Scalar::ZERO; dim];
            e[k] = Scalar::ONE;
            if fs.contains(&e).expect("dimension") {
                1
            } else {
                2
            }
        })
        .collect();
    let scaled: Vec<Vec<i64>> = (0..dim)
        .map(|k| {
            let mut e = vec![0i64; dim];
            e[k] = i64::from(nrs[k]);
            e
        })
        .collect();
    let diag = IntegerLattice::from_i64s(dim, &scaled).expect("dimension");
    CentralData {
        nullity: nu,
        condition000: fs.hnf() == diag.hnf(),
        fs,
        nrs,
    }
}

/// `h = Π_r Π_i t_{i,r}^{n_{i,r}} · Π_{r<s} c_{r,s}^{m_{r,s}}`, the products
/// taken with `r` outermost and ascending, `i` ascending, pairs in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HNormalForm {
    /// `n[i-1][r-1] = n_{i,r}`.
    pub n: Vec<Vec<i64>>,
    /// `m_{r,s}` in pair order.
    pub m: Vec<i64>,
}

impl HNormalForm {
    pub fn m_at(&self, r: usize, s: usize) -> i64 {
        let nu = self.n.first().map_or(0, Vec::len);
        self.m[pair_index(nu, r, s)]
    }

    pub fn is_trivial(&self) -> bool {
        self.n.iter().flatten().all(|&x| x == 0) && self.m.iter().all(|&x| x == 0)
    }
}

/// `g = ẇ · h` with `ẇ` a reduced word in the simple reflections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WNormalForm {
    /// Simple reflection indices, 1-based, leftmost first.
    pub finite_part: Vec<usize>,
    pub n: Vec<Vec<i64>>,
    /// Exponents of `c_{r,s}` in pair order.
    pub central: Vec<i64>,
    /// Coordinates of `central` over the HNF basis of `F(S)`; `None` when the
    /// central part lies outside `F(S)`, i.e. the element is not in `W`.
    pub z: Option<Vec<i64>>,
}

#[derive(Serialize)]
struct WNormalFormJson<'a> {
    finite_part: Vec<String>,
    n: &'a [Vec<i64>],
    central: &'a [i64],
    z: &'a Option<Vec<i64>>,
}

impl WNormalForm {
    pub fn h_part(&self) -> HNormalForm {
        HNormalForm {
            n: self.n.clone(),
            m: self.central.clone(),
        }
    }

    pub fn in_w(&self) -> bool {
        self.z.is_some()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(WNormalFormJson {
            finite_part: self.finite_part.iter().map(|i| format!("s{i}")).collect(),
            n: &self.n,
            central: &self.central,
            z: &self.z,
        })
        .expect("plain data")
    }
}

/// The space, root system, centre and cached generators for one `(X_ℓ, S)`.
#[derive(Debug, Clone)]
pub struct WeylContext {
    space: Arc<SpaceSignature>,
    roots: ExtendedRootSystem,
    central: CentralData,
    w: Vec<GroupElement>,
    t: Vec<Vec<GroupElement>>,
    c: Vec<GroupElement>,
}

fn to_i64(x: &Scalar) -> Result<i64, WeylError> {
    x.to_i64().ok_or(WeylError::Overflow)
}

impl WeylContext {
    pub fn new(cartan: &CartanData, semilattice: Semilattice) -> Result<Self, WeylError> {
        let roots = ExtendedRootSystem::new(cartan, semilattice)?;
        let space = SpaceSignature::new(cartan, roots.nullity());
        let (l, nu) = (cartan.rank(), roots.nullity());
        let w = (1..=l)
            .map(|i| space.reflection(&space.alpha(i)))
            .collect::<Result<Vec<_>, _>>()?;
        let t = (1..=l)
            .map(|i| {
                (1..=nu)
                    .map(|r| space.t_map(&space.alpha(i), &space.sigma(r)))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let c = pairs(nu)
            .into_iter()
            .map(|(r, s)| space.t_map(&space.sigma(r), &space.sigma(s)))
            .collect::<Result<Vec<_>, _>>()?;
        let central = central_data(roots.semilattice(), cartan);
        Ok(WeylContext {
            space,
            roots,
            central,
            w,
            t,
            c,
        })
    }

    pub fn space(&self) -> &Arc<SpaceSignature> {
        &self.space
    }

    pub fn cartan(&self) -> &CartanData {
        self.space.cartan()
    }

    pub fn root_system(&self) -> &ExtendedRootSystem {
        &self.roots
    }

    pub fn semilattice(&self) -> &Semilattice {
        self.roots.semilattice()
    }

    pub fn central(&self) -> &CentralData {
        &self.central
    }

    pub fn rank(&self) -> usize {
        self.space.rank()
    }

    pub fn nullity(&self) -> usize {
        self.space.nullity()
    }

    pub fn identity(&self) -> GroupElement {
        self.space.identity()
    }

    fn check_i(&self, i: usize) -> Result<(), WeylError> {
        if (1..=self.rank()).contains(&i) {
            Ok(())
        } else {
            Err(WeylError::IndexOutOfRange(format!("i = {i} not in 1..={}", self.rank())))
        }
    }

    fn check_r(&self, r: usize) -> Result<(), WeylError> {
        if (1..=self.nullity()).contains(&r) {
            Ok(())
        } else {
            Err(WeylError::IndexOutOfRange(format!("r = {r} not in 1..={}", self.nullity())))
        }
    }

    fn check_pair(&self, r: usize, s: usize) -> Result<(), WeylError> {
        self.check_r(r)?;
        self.check_r(s)?;
        if r < s {
            Ok(())
        } else {
            Err(WeylError::IndexOutOfRange(format!("need r < s, got ({r},{s})")))
        }
    }

    /// `w_{α_i}`.
    pub fn gen_w(&self, i: usize) -> Result<GroupElement, WeylError> {
        self.check_i(i)?;
        Ok(self.w[i - 1].clone())
    }

    /// `t_{i,r} = T_{α_i}^{σ_r}`.
    pub fn gen_t(&self, i: usize, r: usize) -> Result<GroupElement, WeylError> {
        self.check_i(i)?;
        self.check_r(r)?;
        Ok(self.t[i - 1][r - 1].clone())
    }

    /// `c_{r,s} = T_{σ_r}^{σ_s}`, `r < s`.
    pub fn gen_c(&self, r: usize, s: usize) -> Result<GroupElement, WeylError> {
        self.check_pair(r, s)?;
        Ok(self.c[pair_index(self.nullity(), r, s)].clone())
    }

    /// `t_{i,r}^n = T_{nα_i}^{σ_r}`.
    pub fn t_pow(&self, i: usize, r: usize, n: i64) -> Result<GroupElement, WeylError> {
        self.check_i(i)?;
        self.check_r(r)?;
        let a = self.space.alpha(i).scaled(&Scalar::from(n));
        Ok(self.space.t_map(&a, &self.space.sigma(r))?)
    }

    /// `c_{r,s}^m = T_{mσ_r}^{σ_s}`.
    pub fn c_pow(&self, r: usize, s: usize, m: i64) -> Result<GroupElement, WeylError> {
        self.check_pair(r, s)?;
        let a = self.space.sigma(r).scaled(&Scalar::from(m));
        Ok(self.space.t_map(&a, &self.space.sigma(s))?)
    }

    /// `z = Π c_{r,s}^{m_{r,s}}` for an exponent vector in pair order.
    pub fn central_element(&self, m: &[i64]) -> Result<GroupElement, WeylError> {
        let mut acc = self.identity();
        for ((r, s), &e) in pairs(self.nullity()).into_iter().zip(m) {
            if e != 0 {
                acc = acc.compose(&self.c_pow(r, s, e)?);
            }
        }
        Ok(acc)
    }

    /// Product of simple reflections, leftmost first.
    pub fn finite_element(&self, word: &[usize]) -> Result<GroupElement, WeylError> {
        let mut acc = self.identity();
        for &i in word {
            acc = acc.compose(&self.gen_w(i)?);
        }
        Ok(acc)
    }

    pub fn reconstruct_h(&self, h: &HNormalForm) -> Result<GroupElement, WeylError> {
        let mut acc = self.identity();
        for r in 1..=self.nullity() {
            for i in 1..=self.rank() {
                let e = h.n[i - 1][r - 1];
                if e != 0 {
                    acc = acc.compose(&self.t_pow(i, r, e)?);
                }
            }
        }
        Ok(acc.compose(&self.central_element(&h.m)?))
    }

    pub fn reconstruct(&self, w: &WNormalForm) -> Result<GroupElement, WeylError> {
        Ok(self.finite_element(&w.finite_part)?.compose(&self.reconstruct_h(&w.h_part())?))
    }

    /// Reads `n_{i,r}` and `m_{r,s}` from the probes `h(λ_j) - λ_j`, where
    /// `h(λ_j) = λ_j - β_j - ((β_j,β_j)/2)σ_j - Σ_{r<j} (m_{r,j} + (β_r,β_j))σ_r
    /// + Σ_{s>j} m_{j,s}σ_s`, then checks by reconstruction.
    pub fn h_normal_form(&self, g: &GroupElement) -> Result<HNormalForm, WeylError> {
        let (l, nu) = (self.rank(), self.nullity());
        let cartan = self.cartan();
        let m_ = g.matrix();
        let mut betas: Vec<Vec<i64>> = Vec::with_capacity(nu);
        let mut sig: Vec<Vec<i64>> = Vec::with_capacity(nu);
        for j in 0..nu {
            let col = l + nu + j;
            let probe: Vec<Scalar> = (0..self.space.dim())
                .map(|i| {
                    let x = &m_[(i, col)];
                    if i == col {
                        x - &Scalar::ONE
                    } else {
                        x.clone()
                    }
                })
                .collect();
            if probe[l + nu..].iter().any(|x| !x.is_zero()) {
                return Err(WeylError::NotInH(format!("λ_{} probe has a λ-component", j + 1)));
            }
            let beta = probe[..l].iter().map(|x| to_i64(&-x)).collect::<Result<Vec<_>, _>>()?;
            let s = probe[l..l + nu].iter().map(to_i64).collect::<Result<Vec<_>, _>>()?;
            if s[j] != -cartan.form(&beta, &beta) / 2 {
                return Err(WeylError::NotInH(format!(
                    "σ_{0} coefficient of the λ_{0} probe is {1}, expected {2}",
                    j + 1,
                    s[j],
                    -cartan.form(&beta, &beta) / 2
                )));
            }
            betas.push(beta);
            sig.push(s);
        }
        let n: Vec<Vec<i64>> = (0..l).map(|i| (0..nu).map(|r| betas[r][i]).collect()).collect();
        let mut m = Vec::new();
        for (r, s) in pairs(nu) {
            let first = sig[r - 1][s - 1];
            let second = -sig[s - 1][r - 1] - cartan.form(&betas[r - 1], &betas[s - 1]);
            if first != second {
                return Err(WeylError::ProbeInconsistency { r, s, first, second });
            }
            m.push(first);
        }
        let h = HNormalForm { n, m };
        if &self.reconstruct_h(&h)? != g {
            return Err(WeylError::NotInH("reconstruction differs from the input".into()));
        }
        Ok(h)
    }

    /// Splits `g = ẇ · h`. The finite part is read from the action on
    /// `V̇ ≅ V / V⁰`, by descent.
    pub fn w_decompose(&self, g: &GroupElement) -> Result<(Vec<usize>, GroupElement), WeylError> {
        let l = self.rank();
        let block: Vec<Vec<i64>> = (0..l)
            .map(|i| (0..l).map(|j| to_i64(&g.matrix()[(i, j)])).collect())
            .collect::<Result<_, _>>()?;
        let word = self
            .roots
            .finite()
            .reduced_word(&block)
            .ok_or_else(|| WeylError::NotInW("action on V mod V⁰ is not in the finite Weyl group".into()))?;
        let finite = self.finite_element(&word)?;
        let h = finite.inverse()?.compose(g);
        Ok((word, h))
    }

    pub fn w_normal_form(&self, g: &GroupElement) -> Result<WNormalForm, WeylError> {
        let (word, h) = self.w_decompose(g)?;
        let hn = self.h_normal_form(&h)?;
        let z = self.central.coordinates(&hn.m);
        Ok(WNormalForm {
            finite_part: word,
            n: hn.n,
            central: hn.m,
            z,
        })
    }

    /// True iff `g` acts trivially on `V` and its central exponents lie in `F(S)`.
    pub fn is_central(&self, g: &GroupElement) -> Result<bool, WeylError> {
        let (l, nu) = (self.rank(), self.nullity());
        let fixes_v = (0..l + nu).all(|j| (0..self.space.dim()).all(|i| g.matrix()[(i, j)] == i64::from(i == j)));
        if !fixes_v {
            return Ok(false);
        }
        let h = self.h_normal_form(g)?;
        if h.n.iter().flatten().any(|&x| x != 0) {
            return Err(WeylError::NotInH("fixes V but has a nonzero t-part".into()));
        }
        Ok(self.central.contains(&h.m))
    }

    /// `Σ_i n_{i,r} α_i` as a vector of `Ṽ`.
    pub fn beta(&self, h: &HNormalForm, r: usize) -> Vector {
        let l = self.rank();
        let alpha: Vec<i64> = (0..l).map(|i| h.n[i][r - 1]).collect();
        self.space.vector(&alpha, &vec![0; self.nullity()], &vec![0; self.nullity()])
    }
}

pub fn is_central(g: &GroupElement, ctx: &WeylContext) -> Result<bool, WeylError> {
    ctx.is_central(g)
}
