use super::{LinalgError, Scalar};

/// Subgroup of `Z^k` given by generators, with its row-style Hermite normal
/// form computed at construction.
///
/// The HNF basis is canonical: rows are in echelon form with strictly
/// increasing pivot columns, every pivot is positive, and every entry above a
/// pivot lies in `[0, pivot)`. Two lattices are equal iff their bases agree.
#[derive(Clone, Debug)]
pub struct IntegerLattice {
    dim: usize,
    generators: Vec<Vec<Scalar>>,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    // basis[i] = sum_j transform[i][j] * generators[j]
    transform: Vec<Vec<Scalar>>,
}

impl IntegerLattice {
    pub fn new(dim: usize, generators: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        for g in &generators {
            if g.len() != dim {
                return Err(LinalgError::DimensionMismatch {
                    left: dim,
                    right: g.len(),
                });
            }
        }
        let (basis, pivots, transform) = hermite(dim, &generators);
        Ok(IntegerLattice {
            dim,
            generators,
            basis,
            pivots,
            transform,
        })
    }

    pub fn from_i64s(dim: usize, generators: &[Vec<i64>]) -> Result<Self, LinalgError> {
        Self::new(
            dim,
            generators
                .iter()
                .map(|g| g.iter().map(|&x| Scalar::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<Scalar>] {
        &self.generators
    }

    /// Canonical HNF basis rows.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The same lattice with its HNF basis as generator list.
    pub fn hnf(&self) -> IntegerLattice {
        IntegerLattice::new(self.dim, self.basis.clone()).expect("basis rows have lattice dimension")
    }

    fn check_dim(&self, v: &[Scalar]) -> Result<(), LinalgError> {
        if v.len() == self.dim {
            Ok(())
        } else {
            Err(LinalgError::DimensionMismatch {
                left: self.dim,
                right: v.len(),
            })
        }
    }

    /// Coordinates of `v` with respect to the HNF basis, if `v` is in the lattice.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
        self.check_dim(v)?;
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if rest[..p].iter().any(|x| !x.is_zero()) {
                return Ok(None);
            }
            let Some(q) = rest[p].div_exact(&row[p]) else {
                return Ok(None);
            };
            if !q.is_zero() {
                for (r, b) in rest.iter_mut().zip(row) {
                    *r -= &(&q * b);
                }
            }
            coords.push(q);
        }
        Ok(rest.iter().all(Scalar::is_zero).then_some(coords))
    }

    /// True iff `v` is an integer combination of the generators.
    pub fn contains(&self, v: &[Scalar]) -> Result<bool, LinalgError> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// Integer coefficients over the original generator list reproducing `v`.
    pub fn express(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
        let Some(coords) = self.coordinates(v)? else {
            return Ok(None);
        };
        let mut out = vec![Scalar::zero(); self.generators.len()];
        for (c, trow) in coords.iter().zip(&self.transform) {
            for (o, t) in out.iter_mut().zip(trow) {
                o.add_mul(c, t);
            }
        }
        Ok(Some(out))
    }

    pub fn is_sublattice_of(&self, other: &IntegerLattice) -> Result<bool, LinalgError> {
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl PartialEq for IntegerLattice {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.basis == other.basis
    }
}

impl Eq for IntegerLattice {}

/// Canonical HNF of an integer lattice.
pub fn hnf(lattice: &IntegerLattice) -> IntegerLattice {
    lattice.hnf()
}

/// Membership test `v ∈ lattice`.
pub fn lattice_contains(lattice: &IntegerLattice, v: &[Scalar]) -> Result<bool, LinalgError> {
    lattice.contains(v)
}

type Rows = Vec<Vec<Scalar>>;

fn axpy_row(target: &mut [Scalar], q: &Scalar, src: &[Scalar]) {
    // target -= q * src
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t -= &(q * s);
        }
    }
}

fn hermite(dim: usize, generators: &[Vec<Scalar>]) -> (Rows, Vec<usize>, Rows) {
    let m = generators.len();
    let mut rows: Rows = generators.to_vec();
    let mut trans: Rows = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..dim {
        if r == m {
            break;
        }
        loop {
            // smallest nonzero |entry| among rows r.. becomes the pivot candidate
            let best = (r..m)
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(best) = best else { break };
            rows.swap(r, best);
            trans.swap(r, best);
            let mut done = true;
            for i in r + 1..m {
                if rows[i][col].is_zero() {
                    continue;
                }
                let (q, rem) = rows[i][col].div_mod_floor(&rows[r][col]);
                let (pr, pt) = (rows[r].clone(), trans[r].clone());
                axpy_row(&mut rows[i], &q, &pr);
                axpy_row(&mut trans[i], &q, &pt);
                if !rem.is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][col].is_zero() {
            continue;
        }
        if rows[r][col].signum() < 0 {
            for x in rows[r].iter_mut().chain(trans[r].iter_mut()) {
                *x = -&*x;
            }
        }
        let (pr, pt) = (rows[r].clone(), trans[r].clone());
        for i in 0..r {
            let (q, _) = rows[i][col].div_mod_floor(&pr[col]);
            if !q.is_zero() {
                axpy_row(&mut rows[i], &q, &pr);
                axpy_row(&mut trans[i], &q, &pt);
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    trans.truncate(r);
    (rows, pivots, trans)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from(x)).collect()
    }

    fn lat(dim: usize, g: &[Vec<i64>]) -> IntegerLattice {
        IntegerLattice::from_i64s(dim, g).unwrap()
    }

    /// Exhaustive search for coefficients in `[-b, b]`.
    fn brute_contains(gens: &[Vec<i64>], v: &[i64], b: i64) -> bool {
        let k = v.len();
        let mut coeffs = vec![-b; gens.len()];
        loop {
            let mut sum = vec![0i64; k];
            for (c, g) in coeffs.iter().zip(gens) {
                for (s, x) in sum.iter_mut().zip(g) {
                    *s += c * x;
                }
            }
            if sum == v {
                return true;
            }
            let mut i = 0;
            loop {
                if i == coeffs.len() {
                    return false;
                }
                coeffs[i] += 1;
                if coeffs[i] <= b {
                    break;
                }
                coeffs[i] = -b;
                i += 1;
            }
        }
    }

    #[test]
    fn canonical_diagonal_is_fixed() {
        let l = lat(2, &[vec![2, 0], vec![0, 2]]);
        assert_eq!(l.basis(), &[s(&[2, 0]), s(&[0, 2])]);
    }

    #[test]
    fn full_lattice_from_redundant_generators() {
        let gens = vec![vec![1, 1, 1], vec![1, 0, 0], vec![0, 1, 0]];
        // brute force: each unit vector is a small combination
        for k in 0..3 {
            let mut e = vec![0; 3];
            e[k] = 1;
            assert!(brute_contains(&gens, &e, 2));
        }
        let l = lat(3, &gens);
        assert_eq!(l.basis(), &[s(&[1, 0, 0]), s(&[0, 1, 0]), s(&[0, 0, 1])]);
    }

    #[test]
    fn empty_generators_give_empty_basis() {
        let l = lat(3, &[]);
        assert!(l.basis().is_empty());
        assert!(l.contains(&s(&[0, 0, 0])).unwrap());
        assert!(!l.contains(&s(&[0, 1, 0])).unwrap());
    }

    #[test]
    fn membership_examples() {
        let l = lat(2, &[vec![2, 0], vec![0, 2]]);
        assert!(!lattice_contains(&l, &s(&[1, 0])).unwrap());
        let l = lat(2, &[vec![2, 0], vec![0, 2], vec![1, 1]]);
        assert!(lattice_contains(&l, &s(&[0, 0])).unwrap());
        let l = lat(3, &[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 1]]);
        assert!(lattice_contains(&l, &s(&[0, 0, 1])).unwrap());
        assert!(!lattice_contains(&l, &s(&[1, 0, 0])).unwrap());
    }

    #[test]
    fn dimension_mismatch() {
        let l = lat(2, &[vec![1, 0]]);
        assert!(l.contains(&s(&[1, 0, 0])).is_err());
        assert!(IntegerLattice::from_i64s(2, &[vec![1]]).is_err());
    }

    #[test]
    fn negative_and_mixed_generators() {
        let l = lat(2, &[vec![-4, 6], vec![6, -9]]);
        // gcd structure: both are multiples of (2,-3)
        assert_eq!(l.basis(), &[s(&[2, -3])]);
        let l2 = lat(2, &[vec![3, 5], vec![-6, 4]]);
        assert_eq!(l2.basis().len(), 2);
        assert!(l2.basis()[0][0].signum() > 0);
        assert!(l2.basis()[1][1].signum() > 0);
        let p = &l2.basis()[1][1];
        assert!(l2.basis()[0][1] >= Scalar::zero() && &l2.basis()[0][1] < p);
    }

    fn gens_strategy() -> impl Strategy<Value = (usize, Vec<Vec<i64>>, Vec<i64>)> {
        (1usize..=4).prop_flat_map(|k| {
            (
                Just(k),
                proptest::collection::vec(proptest::collection::vec(-3i64..=3, k), 0..=3),
                proptest::collection::vec(-4i64..=4, k),
            )
        })
    }

    proptest! {
        #[test]
        fn hnf_is_idempotent((k, gens, _v) in gens_strategy()) {
            let l = lat(k, &gens);
            let h = hnf(&l);
            prop_assert_eq!(h.basis(), l.basis());
            let again = hnf(&h);
            prop_assert_eq!(again.basis(), h.basis());
        }

        #[test]
        fn membership_agrees_with_exhaustive_search((k, gens, v) in gens_strategy()) {
            let l = lat(k, &gens);
            let found = brute_contains(&gens, &v, 5);
            let contained = l.contains(&s(&v)).unwrap();
            if found {
                prop_assert!(contained);
            }
            if contained {
                // certificate over the original generators
                let coeffs = l.express(&s(&v)).unwrap().unwrap();
                let mut sum = vec![Scalar::zero(); k];
                for (c, g) in coeffs.iter().zip(&gens) {
                    for (acc, x) in sum.iter_mut().zip(g) {
                        acc.add_mul(c, &Scalar::from(*x));
                    }
                }
                prop_assert_eq!(sum, s(&v));
            }
        }

        #[test]
        fn small_combinations_are_members((k, gens, _v) in gens_strategy(), coeffs in proptest::collection::vec(-5i64..=5, 3)) {
            let l = lat(k, &gens);
            let mut v = vec![0i64; k];
            for (c, g) in coeffs.iter().zip(&gens) {
                for (acc, x) in v.iter_mut().zip(g) {
                    *acc += c * x;
                }
            }
            prop_assert!(l.contains(&s(&v)).unwrap());
            prop_assert!(brute_contains(&gens, &v, 5));
        }

        #[test]
        fn equal_spans_have_equal_bases((k, gens, _v) in gens_strategy(), shuffle in any::<u64>()) {
            let l = lat(k, &gens);
            // elementary row operations do not change the lattice
            let mut g2 = gens.clone();
            if g2.len() >= 2 {
                let (a, b) = ((shuffle % g2.len() as u64) as usize, ((shuffle / 7) % g2.len() as u64) as usize);
                if a != b {
                    let src = g2[b].clone();
                    for (x, y) in g2[a].iter_mut().zip(&src) {
                        *x += 3 * y;
                    }
                }
                g2.reverse();
            }
            prop_assert_eq!(lat(k, &g2), l);
        }
    }
}
