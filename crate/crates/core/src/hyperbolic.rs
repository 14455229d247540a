//! The hyperbolic extension `Ṽ = V̇ ⊕ V⁰ ⊕ (V⁰)*` with basis
//! `α_1..α_ℓ, σ_1..σ_ν, λ_1..λ_ν`, its form, reflections and the maps `T_α^σ`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::exactlinalg::{LinalgError, Matrix, Scalar, Vector};
use crate::rootsystem::CartanData;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperbolicError {
    #[error("vector has dimension {got}, expected {expected}")]
    Dimension { got: usize, expected: usize },
    #[error("cannot reflect in an isotropic vector")]
    Isotropic,
    #[error("reflection in this vector is not integral")]
    NonIntegral,
    #[error("σ must lie in the radical span(σ_1..σ_ν)")]
    NotInRadical,
    #[error("α must lie in V (no λ-component)")]
    NotInV,
    #[error("matrix does not preserve the form")]
    NotOrthogonal,
    #[error("elements live in different spaces")]
    SpaceMismatch,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Symmetric Gram matrix of the form on `Ṽ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramForm {
    matrix: Matrix,
}

impl GramForm {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }
}

/// Rank, nullity and Cartan data of a hyperbolic extension, plus the Gram
/// matrix and a scaled inverse `(B, d)` with `G·B = d·I`.
#[derive(Debug)]
pub struct SpaceSignature {
    cartan: CartanData,
    nullity: usize,
    gram: GramForm,
    gram_inv: Matrix,
    gram_den: Scalar,
}

impl PartialEq for SpaceSignature {
    fn eq(&self, other: &Self) -> bool {
        self.cartan == other.cartan && self.nullity == other.nullity
    }
}

impl Eq for SpaceSignature {}

impl SpaceSignature {
    pub fn new(cartan: &CartanData, nullity: usize) -> Arc<SpaceSignature> {
        let l = cartan.rank();
        let dim = l + 2 * nullity;
        let mut g = Matrix::zeros(dim, dim);
        for i in 0..l {
            for j in 0..l {
                g[(i, j)] = Scalar::from(cartan.entry(i + 1, j + 1));
            }
        }
        for r in 0..nullity {
            g[(l + r, l + nullity + r)] = Scalar::ONE;
            g[(l + nullity + r, l + r)] = Scalar::ONE;
        }
        let (gram_inv, gram_den) = g.scaled_inverse().expect("the form is non-degenerate");
        Arc::new(SpaceSignature {
            cartan: cartan.clone(),
            nullity,
            gram: GramForm { matrix: g },
            gram_inv,
            gram_den,
        })
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn nullity(&self) -> usize {
        self.nullity
    }

    pub fn dim(&self) -> usize {
        self.rank() + 2 * self.nullity
    }

    pub fn gram(&self) -> &GramForm {
        &self.gram
    }

    /// `α_i`, 1-based.
    pub fn alpha(&self, i: usize) -> Vector {
        assert!((1..=self.rank()).contains(&i), "α_{i} out of range");
        Vector::unit(self.dim(), i - 1)
    }

    /// `σ_r`, 1-based.
    pub fn sigma(&self, r: usize) -> Vector {
        assert!((1..=self.nullity).contains(&r), "σ_{r} out of range");
        Vector::unit(self.dim(), self.rank() + r - 1)
    }

    /// `λ_r`, 1-based.
    pub fn lambda(&self, r: usize) -> Vector {
        assert!((1..=self.nullity).contains(&r), "λ_{r} out of range");
        Vector::unit(self.dim(), self.rank() + self.nullity + r - 1)
    }

    /// Assembles a vector from its `α`, `σ` and `λ` coordinates.
    pub fn vector(&self, alpha: &[i64], sigma: &[i64], lambda: &[i64]) -> Vector {
        assert_eq!(alpha.len(), self.rank());
        assert_eq!(sigma.len(), self.nullity);
        assert_eq!(lambda.len(), self.nullity);
        Vector::from_i64s(&[alpha, sigma, lambda].concat())
    }

    fn check(&self, v: &Vector) -> Result<(), HyperbolicError> {
        if v.len() != self.dim() {
            return Err(HyperbolicError::Dimension {
                got: v.len(),
                expected: self.dim(),
            });
        }
        Ok(())
    }

    /// `G·v`, i.e. the functional `(·, v)` in coordinates.
    fn dual(&self, v: &Vector) -> Vector {
        let (l, nu) = (self.rank(), self.nullity);
        let mut out = Vector::zeros(self.dim());
        for i in 0..l {
            for j in 0..l {
                let a = self.cartan.entry(i + 1, j + 1);
                if a != 0 && !v[j].is_zero() {
                    out[i] += &v[j] * a;
                }
            }
        }
        for r in 0..nu {
            out[l + r] = v[l + nu + r].clone();
            out[l + nu + r] = v[l + r].clone();
        }
        out
    }

    pub fn bilinear(&self, u: &Vector, v: &Vector) -> Result<Scalar, HyperbolicError> {
        self.check(u)?;
        self.check(v)?;
        let gv = self.dual(v);
        let mut acc = Scalar::ZERO;
        for (a, b) in u.coords().iter().zip(gv.coords()) {
            acc.add_mul(a, b);
        }
        Ok(acc)
    }

    pub fn in_radical(&self, v: &Vector) -> bool {
        let l = self.rank();
        v.len() == self.dim()
            && v.coords()[..l].iter().all(Scalar::is_zero)
            && v.coords()[l + self.nullity..].iter().all(Scalar::is_zero)
    }

    pub fn in_v(&self, v: &Vector) -> bool {
        v.len() == self.dim() && v.coords()[self.rank() + self.nullity..].iter().all(Scalar::is_zero)
    }

    pub fn identity(self: &Arc<Self>) -> GroupElement {
        GroupElement {
            matrix: Matrix::identity(self.dim()),
            space: Arc::clone(self),
        }
    }

    /// Wraps a matrix without checking that it preserves the form.
    pub fn element(self: &Arc<Self>, matrix: Matrix) -> Result<GroupElement, HyperbolicError> {
        if matrix.rows() != self.dim() || matrix.cols() != self.dim() {
            return Err(HyperbolicError::Dimension {
                got: matrix.rows().max(matrix.cols()),
                expected: self.dim(),
            });
        }
        Ok(GroupElement {
            matrix,
            space: Arc::clone(self),
        })
    }

    /// `w_α(u) = u - (u, α∨) α`.
    pub fn reflection(self: &Arc<Self>, alpha: &Vector) -> Result<GroupElement, HyperbolicError> {
        self.check(alpha)?;
        let norm = self.bilinear(alpha, alpha)?;
        if norm.is_zero() {
            return Err(HyperbolicError::Isotropic);
        }
        let ga = self.dual(alpha);
        let n = self.dim();
        let mut m = Matrix::identity(n);
        for j in 0..n {
            if ga[j].is_zero() {
                continue;
            }
            let coef = (&ga[j] * 2).div_exact(&norm).ok_or(HyperbolicError::NonIntegral)?;
            for i in 0..n {
                if !alpha[i].is_zero() {
                    m[(i, j)] -= &coef * &alpha[i];
                }
            }
        }
        self.element(m)
    }

    /// `T_α^σ(u) = u - (σ,u)α + (α,u)σ - ((α,α)/2)(σ,u)σ`.
    pub fn t_map(self: &Arc<Self>, alpha: &Vector, sigma: &Vector) -> Result<GroupElement, HyperbolicError> {
        self.check(alpha)?;
        self.check(sigma)?;
        if !self.in_radical(sigma) {
            return Err(HyperbolicError::NotInRadical);
        }
        if !self.in_v(alpha) {
            return Err(HyperbolicError::NotInV);
        }
        let half = self
            .bilinear(alpha, alpha)?
            .div_exact(&Scalar::from(2))
            .expect("(α,α) is even on V");
        let (gs, ga) = (self.dual(sigma), self.dual(alpha));
        let n = self.dim();
        let mut m = Matrix::identity(n);
        for j in 0..n {
            let (sj, aj) = (&gs[j], &ga[j]);
            if sj.is_zero() && aj.is_zero() {
                continue;
            }
            let scoef = aj - &(&half * sj);
            for i in 0..n {
                if !sj.is_zero() && !alpha[i].is_zero() {
                    m[(i, j)] -= sj * &alpha[i];
                }
                if !scoef.is_zero() && !sigma[i].is_zero() {
                    m[(i, j)] += &scoef * &sigma[i];
                }
            }
        }
        self.element(m)
    }
}

/// An invertible linear map of `Ṽ`, as its matrix (columns are images of the
/// basis vectors). Equality is matrix equality.
#[derive(Clone)]
pub struct GroupElement {
    matrix: Matrix,
    space: Arc<SpaceSignature>,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for GroupElement {}

impl std::hash::Hash for GroupElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.matrix, f)
    }
}

impl GroupElement {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn space(&self) -> &Arc<SpaceSignature> {
        &self.space
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        debug_assert!(self.space == other.space);
        GroupElement {
            matrix: self.matrix.mul(&other.matrix).expect("same space"),
            space: Arc::clone(&self.space),
        }
    }

    pub fn try_compose(&self, other: &GroupElement) -> Result<GroupElement, HyperbolicError> {
        if self.space != other.space {
            return Err(HyperbolicError::SpaceMismatch);
        }
        Ok(self.compose(other))
    }

    /// `G⁻¹ Mᵀ G`; fails unless the map preserves the form.
    pub fn inverse(&self) -> Result<GroupElement, HyperbolicError> {
        let s = &self.space;
        let scaled = s.gram_inv.mul(&self.matrix.transpose())?.mul(&s.gram.matrix)?;
        let inv = scaled.div_exact(&s.gram_den).ok_or(HyperbolicError::NotOrthogonal)?;
        if !inv.mul(&self.matrix)?.is_identity() {
            return Err(HyperbolicError::NotOrthogonal);
        }
        Ok(GroupElement {
            matrix: inv,
            space: Arc::clone(s),
        })
    }

    pub fn pow(&self, n: i64) -> Result<GroupElement, HyperbolicError> {
        let mut base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.space.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base);
            }
        }
        Ok(acc)
    }

    /// `[x, y] = x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, other: &GroupElement) -> Result<GroupElement, HyperbolicError> {
        Ok(self.inverse()?.compose(&other.inverse()?).compose(self).compose(other))
    }

    /// `g h g⁻¹`.
    pub fn conjugate(&self, h: &GroupElement) -> Result<GroupElement, HyperbolicError> {
        Ok(self.compose(h).compose(&self.inverse()?))
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector, HyperbolicError> {
        Ok(self.matrix.mul_vec(v)?)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// `Mᵀ G M = G`.
    pub fn preserves_form(&self) -> bool {
        let g = &self.space.gram.matrix;
        self.matrix
            .transpose()
            .mul(g)
            .and_then(|x| x.mul(&self.matrix))
            .map(|x| &x == g)
            .unwrap_or(false)
    }

    /// Preserves the form and fixes every `σ_r`.
    pub fn in_fo(&self) -> bool {
        let s = &self.space;
        let fixes_radical = (1..=s.nullity).all(|r| {
            let j = s.rank() + r - 1;
            (0..s.dim()).all(|i| self.matrix[(i, j)] == i64::from(i == j))
        });
        fixes_radical && self.preserves_form()
    }

    /// Image of `α_j` projected to the `α`-coordinates, as an `ℓ×ℓ` array
    /// (column `j` is the image of `α_{j+1}`).
    pub fn finite_block(&self) -> Option<Vec<Vec<i64>>> {
        let l = self.space.rank();
        (0..l)
            .map(|i| (0..l).map(|j| self.matrix[(i, j)].to_i64()).collect())
            .collect()
    }
}

pub fn bilinear(space: &SpaceSignature, u: &Vector, v: &Vector) -> Result<Scalar, HyperbolicError> {
    space.bilinear(u, v)
}

pub fn reflection(space: &Arc<SpaceSignature>, alpha: &Vector) -> Result<GroupElement, HyperbolicError> {
    space.reflection(alpha)
}

pub fn t_map(space: &Arc<SpaceSignature>, alpha: &Vector, sigma: &Vector) -> Result<GroupElement, HyperbolicError> {
    space.t_map(alpha, sigma)
}

pub fn in_fo(g: &GroupElement) -> bool {
    g.in_fo()
}
