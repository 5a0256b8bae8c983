//! Hyperbolic geometry in the Minkowski model of a Lorentzian root lattice.
//!
//! Distances are carried as exact `cosh²` values; floats appear only when a
//! distance is rendered.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::{catalog, Diagram};
use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, RationalVector, RootLattice};
use crate::linalg::{self, Matrix};
use crate::par::{self, Execution};
use crate::rational::{self, frac, int, Rational};

/// A symmetric bilinear form on coordinate vectors.
pub trait BilinearForm {
    fn dim(&self) -> usize;
    fn form(&self, a: &RationalVector, b: &RationalVector) -> Rational;
}

impl BilinearForm for RootLattice {
    fn dim(&self) -> usize {
        self.rank()
    }

    fn form(&self, a: &RationalVector, b: &RationalVector) -> Rational {
        self.inner_q(a, b)
    }
}

/// A form given directly by its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramModel {
    pub gram: Matrix,
}

impl GramModel {
    pub fn new(gram: Matrix) -> Self {
        GramModel { gram }
    }

    pub fn basis(&self, i: usize) -> RationalVector {
        let mut v = RationalVector::zero(self.gram.len());
        v.0[i] = Rational::one();
        v
    }
}

impl BilinearForm for GramModel {
    fn dim(&self) -> usize {
        self.gram.len()
    }

    fn form(&self, a: &RationalVector, b: &RationalVector) -> Rational {
        let mut s = Rational::zero();
        for (i, row) in self.gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                s += a.0[i] * g * b.0[j];
            }
        }
        s
    }
}

/// Squared hyperbolic cosine of a distance, exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cosh2(#[serde(with = "rational")] pub Rational);

impl Cosh2 {
    pub fn value(&self) -> Rational {
        self.0
    }

    /// The distance `acosh(√value)` as a float.
    pub fn distance(&self) -> f64 {
        acosh_sqrt(self.0)
    }
}

impl fmt::Display for Cosh2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rational::format(&self.0))
    }
}

pub fn acosh_sqrt(c: Rational) -> f64 {
    rational::to_f64(&c).sqrt().acosh()
}

/// The facet-lemma bound `4/3`.
pub fn facet_bound() -> Rational {
    frac(4, 3)
}

fn check_dim<F: BilinearForm>(f: &F, v: &RationalVector) -> Result<()> {
    if v.len() != f.dim() {
        return Err(Error::LengthMismatch { expected: f.dim(), found: v.len() });
    }
    Ok(())
}

/// `v` minus its component in `span`, via the span's Gram matrix.
pub fn project_orthogonal<F: BilinearForm>(
    f: &F,
    v: &RationalVector,
    span: &[RationalVector],
) -> Result<RationalVector> {
    check_dim(f, v)?;
    for s in span {
        check_dim(f, s)?;
    }
    if span.is_empty() {
        return Ok(v.clone());
    }
    let gram: Matrix = span.iter().map(|a| span.iter().map(|b| f.form(a, b)).collect()).collect();
    let rhs: Vec<Rational> = span.iter().map(|s| f.form(v, s)).collect();
    let coeffs = linalg::solve(&gram, &rhs)?;
    Ok(span.iter().zip(coeffs).fold(v.clone(), |acc, (s, c)| acc.sub(&s.scale(c))))
}

/// `(x·y)² / (x²·y²)` for timelike `x`, `y` in the same component.
pub fn cosh2_point_distance<F: BilinearForm>(
    f: &F,
    x: &RationalVector,
    y: &RationalVector,
) -> Result<Cosh2> {
    check_dim(f, x)?;
    check_dim(f, y)?;
    let (xx, yy) = (f.form(x, x), f.form(y, y));
    if !xx.is_negative() || !yy.is_negative() {
        return Err(Error::NotTimelike);
    }
    let xy = f.form(x, y);
    if !xy.is_negative() {
        return Err(Error::OppositeComponents);
    }
    Ok(Cosh2(xy * xy / (xx * yy)))
}

/// Distance from `[x]` to the hyperbolic subspace orthogonal to `span`:
/// `x*² / x²` with `x*` the projection of `x` to `span⊥`.
pub fn cosh2_point_to_subspace<F: BilinearForm>(
    f: &F,
    x: &RationalVector,
    span: &[RationalVector],
) -> Result<Cosh2> {
    check_dim(f, x)?;
    let xx = f.form(x, x);
    if !xx.is_negative() {
        return Err(Error::NotTimelike);
    }
    let p = project_orthogonal(f, x, span)?;
    let pp = f.form(&p, &p);
    if !pp.is_negative() {
        return Err(Error::ProjectionNotTimelike);
    }
    Ok(Cosh2(pp / xx))
}

pub fn lattice_span(vs: &[LatticeVector]) -> Vec<RationalVector> {
    vs.iter().map(LatticeVector::to_rational).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetEntry {
    pub facet: usize,
    pub neighbor: usize,
    pub cosh2: Cosh2,
    /// `cosh2 == 4/3`.
    pub equality: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetMax {
    pub facet: usize,
    pub max: Cosh2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetReport {
    pub diagram: String,
    pub entries: Vec<FacetEntry>,
    pub facet_max: Vec<FacetMax>,
    pub max: Cosh2,
    pub equality_count: usize,
}

impl FacetReport {
    pub fn within_bound(&self) -> bool {
        self.max.0 <= facet_bound()
    }

    pub fn equalities(&self) -> impl Iterator<Item = &FacetEntry> {
        self.entries.iter().filter(|e| e.equality)
    }
}

/// For each node `i` with neighbours `J`, the point `q = Σ_{j∈J} ω_j` on the
/// facet `α_i⊥` and its distance to each ridge `{α_i, α_j}⊥`. Values above
/// `4/3` are an error.
pub fn facet_check(d: &Diagram) -> Result<FacetReport> {
    if !d.is_hyperbolic() {
        return Err(Error::NotHyperbolic);
    }
    let l = RootLattice::new(d);
    let weights = l.fundamental_weights()?;
    let bound = facet_bound();
    let mut entries = Vec::new();
    let mut facet_max = Vec::new();
    for i in 0..d.rank() {
        let alpha_i = l.simple_root(i);
        let q = d
            .neighbors(i)
            .fold(RationalVector::zero(d.rank()), |acc, j| acc.add(&weights[j]));
        if !l.inner_q(&q, &q).is_negative() {
            return Err(Error::FacetBoundViolated(format!(
                "{}: facet {i} point is not timelike",
                d.label()
            )));
        }
        if !l.inner_q(&q, &alpha_i.to_rational()).is_zero() {
            return Err(Error::FacetBoundViolated(format!(
                "{}: facet {i} point is off the facet",
                d.label()
            )));
        }
        let mut best = Rational::zero();
        for j in d.neighbors(i) {
            let span = lattice_span(&[alpha_i.clone(), l.simple_root(j)]);
            let c = cosh2_point_to_subspace(&l, &q, &span)?;
            if c.0 > bound {
                return Err(Error::FacetBoundViolated(format!(
                    "{}: facet {i}, neighbour {j}: cosh² = {c}",
                    d.label()
                )));
            }
            best = best.max(c.0);
            entries.push(FacetEntry { facet: i, neighbor: j, cosh2: c, equality: c.0 == bound });
        }
        facet_max.push(FacetMax { facet: i, max: Cosh2(best) });
    }
    let max = facet_max.iter().map(|f| f.max).max().unwrap_or(Cosh2(Rational::one()));
    let equality_count = entries.iter().filter(|e| e.equality).count();
    Ok(FacetReport { diagram: d.label(), entries, facet_max, max, equality_count })
}

/// [`facet_check`] over the whole catalog, in catalog order.
pub fn facet_check_catalog(exec: Execution) -> Result<Vec<FacetReport>> {
    par::map(exec, catalog(), facet_check).into_iter().collect()
}

/// Gram matrix of `α, α′, β` with `α·α′ = 1`, `α·β = k`, `α′·β = m`.
pub fn pq_gram(k: i64, m: i64) -> GramModel {
    GramModel::new(linalg::from_integers(&[vec![2, 1, k], vec![1, 2, m], vec![k, m, 2]]))
}

fn check_pq(k: i64, m: i64) -> Result<GramModel> {
    let g = pq_gram(k, m);
    let s = linalg::inertia(&g.gram);
    if k < 3 || m > 0 || (s.positive, s.negative, s.null) != (2, 1, 0) {
        return Err(Error::WrongSignature);
    }
    Ok(g)
}

/// Closed form `(4/3)(3 + km − k² − m²)/(4 − k²)` for `cosh² d(p, q)`.
pub fn pq_cosh2(k: i64, m: i64) -> Result<Cosh2> {
    check_pq(k, m)?;
    let (k, m) = (int(k), int(m));
    Ok(Cosh2(frac(4, 3) * (int(3) + k * m - k * k - m * m) / (int(4) - k * k)))
}

/// `cosh² d(p, q)` by explicit projection in the rank-3 Gram model:
/// `p = β − α(β·α)/2`, `q = p − u(p·u)/6` with `u = α − 2α′`.
pub fn pq_cosh2_direct(k: i64, m: i64) -> Result<Cosh2> {
    let g = check_pq(k, m)?;
    let (alpha, alpha1, beta) = (g.basis(0), g.basis(1), g.basis(2));
    let p = project_orthogonal(&g, &beta, std::slice::from_ref(&alpha))?;
    let u = alpha.sub(&alpha1.scale(int(2)));
    let q = p.sub(&u.scale(g.form(&p, &u) / int(6)));
    cosh2_point_distance(&g, &p, &q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::e10;
    use proptest::prelude::*;

    #[test]
    fn projection() {
        let l = RootLattice::new(e10());
        let a = l.simple_root(2).to_rational();
        let b = l.simple_root(2).add(&l.simple_root(3)).add(&l.simple_root(9)).to_rational();
        let p = project_orthogonal(&l, &b, std::slice::from_ref(&a)).unwrap();
        assert_eq!(p, b.sub(&a.scale(l.inner_q(&b, &a) / int(2))));
        assert!(l.inner_q(&p, &a).is_zero());
        let o = l.simple_root(7).to_rational();
        assert_eq!(project_orthogonal(&l, &o, std::slice::from_ref(&a)).unwrap(), o);
        let dup = vec![a.clone(), a.clone()];
        assert_eq!(project_orthogonal(&l, &b, &dup), Err(Error::Singular));
    }

    #[test]
    fn point_distance() {
        let l = RootLattice::new(e10());
        let rho = l.rho_star().unwrap();
        assert_eq!(cosh2_point_distance(&l, &rho, &rho).unwrap().0, int(1));
        assert_eq!(cosh2_point_distance(&l, &rho, &rho.scale(int(2))).unwrap().0, int(1));
        assert_eq!(cosh2_point_distance(&l, &rho, &rho.neg()), Err(Error::OppositeComponents));
        let a = l.simple_root(0).to_rational();
        assert_eq!(cosh2_point_distance(&l, &rho, &a), Err(Error::NotTimelike));
    }

    #[test]
    fn subspace_distance_in_span_perp() {
        let l = RootLattice::new(e10());
        let w = l.fundamental_weights().unwrap();
        // ω_4 is orthogonal to α_0 and α_1.
        let span = lattice_span(&[l.simple_root(0), l.simple_root(1)]);
        assert_eq!(cosh2_point_to_subspace(&l, &w[4], &span).unwrap().0, int(1));
    }

    /// Sampling oracle: the subspace distance is the minimum over points of
    /// the subspace, which for `x* + t·s` (`s` spacelike in `span⊥`) is
    /// attained at `t = 0`.
    #[test]
    fn subspace_distance_is_minimum() {
        let l = RootLattice::new(e10());
        let rho = l.rho_star().unwrap();
        let span = lattice_span(&[l.simple_root(2), l.simple_root(3)]);
        let c = cosh2_point_to_subspace(&l, &rho, &span).unwrap();
        let xs = project_orthogonal(&l, &rho, &span).unwrap();
        assert_eq!(cosh2_point_distance(&l, &rho, &xs).unwrap(), c);
        let dirs: Vec<RationalVector> = [0usize, 5, 7, 9]
            .iter()
            .map(|&i| project_orthogonal(&l, &l.simple_root(i).to_rational(), &span).unwrap())
            .collect();
        for s in &dirs {
            for t in -20..=20 {
                let y = xs.add(&s.scale(frac(t, 10)));
                if l.inner_q(&y, &y).is_negative() {
                    let d = cosh2_point_distance(&l, &rho, &y).unwrap();
                    assert!(d >= c, "sample beat the projection");
                }
            }
        }
    }

    #[test]
    fn facet_lemma_on_catalog() {
        let reports = facet_check_catalog(Execution::Parallel).unwrap();
        assert_eq!(reports, facet_check_catalog(Execution::Sequential).unwrap());
        assert!(reports.iter().all(FacetReport::within_bound));
        let global = reports.iter().map(|r| r.max).max().unwrap();
        assert_eq!(global.0, facet_bound());
        assert!(reports.iter().any(|r| r.equality_count > 0));
        assert!((acosh_sqrt(facet_bound()) - 0.549).abs() < 1e-3);
        assert_eq!(facet_check(&Diagram::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()), Err(Error::NotHyperbolic));
    }

    #[test]
    fn facet_report_json() {
        let r = facet_check(e10()).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"4/3\"") || !s.contains("equality\":true"));
        let back: FacetReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn pq_examples() {
        assert_eq!(pq_cosh2(3, 0).unwrap().0, frac(8, 5));
        assert_eq!(pq_cosh2(2, 0), Err(Error::WrongSignature));
        assert_eq!(pq_cosh2(3, 1), Err(Error::WrongSignature));
        let far = pq_cosh2(200, 0).unwrap().0 - frac(4, 3);
        assert!(far.is_positive() && far < frac(1, 100));
    }

    #[test]
    fn pq_grid_matches_projection() {
        for k in 3..=12 {
            for m in -6..=0 {
                match (pq_cosh2(k, m), pq_cosh2_direct(k, m)) {
                    (Ok(a), Ok(b)) => assert_eq!(a, b, "k={k} m={m}"),
                    (Err(Error::WrongSignature), Err(Error::WrongSignature)) => {}
                    other => panic!("k={k} m={m}: {other:?}"),
                }
            }
        }
    }

    proptest! {
        #[test]
        fn pq_monotone(k in 3i64..60, m in -40i64..0) {
            if let (Ok(a), Ok(b)) = (pq_cosh2(k, m), pq_cosh2(k, m + 1)) {
                prop_assert!(a >= b);
            }
            if let (Ok(a), Ok(b)) = (pq_cosh2(k, 0), pq_cosh2(k + 1, 0)) {
                prop_assert!(a > b && b.0 > facet_bound());
            }
        }

        #[test]
        fn timelike_pairs_are_at_least_one(
            a in proptest::collection::vec(0i64..6, 10),
            b in proptest::collection::vec(0i64..6, 10),
        ) {
            let l = RootLattice::new(e10());
            let rho = l.rho_star().unwrap();
            let x = rho.scale(int(20)).add(&LatticeVector(a).to_rational());
            let y = rho.scale(int(20)).add(&LatticeVector(b).to_rational());
            let c = cosh2_point_distance(&l, &x, &y).unwrap();
            prop_assert!(c.0 >= int(1));
            prop_assert!(c.distance() >= 0.0);
        }
    }
}
