//! Closed-form dimension bounds, truncated power series, Dickson
//! invariants, and the empirical growth check.
//!
//! Ops: order_dim_bound, gt_bound, tower_index_bound_exp, series_geom,
//! series_mul, lhs_e2_bound, regularity_degree_bounds, chern_param_bound,
//! dickson, evens_degree_bound, quillen_growth_check.
//!
//! Everything here is exact integer or F_p polynomial arithmetic; no
//! randomness, no caps except the Dickson range guard. The Dickson
//! polynomials are found by solving for the one-dimensional fixed space
//! of the GL_n(F_p) substitution action on each graded piece, then
//! normalizing the lexicographically largest monomial to coefficient 1.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::cohomology::GradedDims;
use crate::ffmat::{FpMatrix, FpVec};

// === errors ===

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("dickson invariants supported for p in {{2, 3}} and 1 <= n <= 3, got p={p}, n={n}")]
    DicksonRange { p: u8, n: usize },
    #[error("fixed space in degree {degree} has dimension {dim}, expected 1")]
    FixedSpaceDim { degree: usize, dim: usize },
    #[error("candidate invariant of degree {degree} moved under a group generator")]
    NotInvariant { degree: usize },
}

// === integer bounds ===

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for t in 0..k {
        r = r * (n - t) as u128 / (t as u128 + 1);
    }
    r as u64
}

/// Monomial count binom(n+i-1, i): dim H^i can never exceed it for a
/// group of order p^n.
#[must_use]
pub fn order_dim_bound(n: usize, i: usize) -> u64 {
    if n == 0 {
        return u64::from(i == 0);
    }
    binom((n + i - 1) as u64, i as u64)
}

/// binom(r(⌈log₂r⌉+3+e)+i-1, i) with e = 1 for p = 2 and 0 for odd p:
/// the rank-only dimension bound, independent of the group order.
#[must_use]
pub fn gt_bound(p: u8, r: usize, i: usize) -> u64 {
    order_dim_bound(r * (crate::tower::ceil_log2(r) + 3 + usize::from(p == 2)), i)
}

/// Index bound exponent r(⌈log₂r⌉+2+e) of the characteristic tower.
#[must_use]
pub fn tower_index_bound_exp(p: u8, r: usize) -> usize {
    crate::tower::tower_bound_exp(p, r)
}

/// 2(p^n - 1)·index: degree bound for norms of top Dickson classes along
/// an index-[G:N] subgroup.
#[must_use]
pub fn evens_degree_bound(p: u8, n: usize, index: u64) -> u64 {
    2 * ((p as u64).pow(n as u32) - 1) * index
}

/// Parameter-count and degree bound from Chern classes of the regular
/// representation of a quotient of order q: q parameters of degree ≤ 2q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChernBound {
    pub count: u64,
    pub max_deg: u64,
}

#[must_use]
pub fn chern_param_bound(q: u64) -> ChernBound {
    ChernBound { count: q, max_deg: 2 * q }
}

/// Degree bounds for a ring finite over Ncount parameters of degree ≤ D:
/// generators up to max{N(D-1), D}, relations up to
/// max{2N(D-1), N(D-1)+1, D}, and the regularity window L = max{2N(D-1), 1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegularityBounds {
    pub gen_deg: u64,
    pub rel_deg: u64,
    pub l: u64,
}

#[must_use]
pub fn regularity_degree_bounds(ncount: u64, d: u64) -> RegularityBounds {
    let nd = ncount * (d - 1);
    RegularityBounds {
        gen_deg: nd.max(d),
        rel_deg: (2 * nd).max(nd + 1).max(d),
        l: (2 * nd).max(1),
    }
}

// === truncated series ===

/// Coefficients 0..=kmax of a power series with nonnegative integer
/// coefficients, used as termwise dimension bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    pub coeffs: Vec<u64>,
}

fn geom_coeff(r: usize, i: usize) -> u64 {
    if i == 0 {
        1
    } else {
        order_dim_bound(r, i)
    }
}

/// (1-t)^{-r} truncated: coefficient binom(r+i-1, i).
#[must_use]
pub fn series_geom(r: usize, kmax: usize) -> TruncSeries {
    TruncSeries { coeffs: (0..=kmax).map(|i| geom_coeff(r, i)).collect() }
}

/// Truncated convolution product; missing coefficients count as zero.
#[must_use]
pub fn series_mul(a: &TruncSeries, b: &TruncSeries, kmax: usize) -> TruncSeries {
    let mut coeffs = vec![0u64; kmax + 1];
    for (i, c) in coeffs.iter_mut().enumerate() {
        for t in 0..=i {
            *c += a.coeffs.get(t).copied().unwrap_or(0)
                * b.coeffs.get(i - t).copied().unwrap_or(0);
        }
    }
    TruncSeries { coeffs }
}

/// Diagonal sum over a two-column page whose rows are bounded by U and
/// columns by V: (U·V)(i) bounds dim H^i of the extension.
#[must_use]
pub fn lhs_e2_bound(u: &TruncSeries, v: &TruncSeries, kmax: usize) -> TruncSeries {
    series_mul(u, v, kmax)
}

// === polynomials over F_p ===

pub type Monomial = Vec<u8>;
/// Sparse polynomial: exponent vector -> nonzero coefficient in F_p.
pub type Poly = BTreeMap<Monomial, u8>;

fn add_term(f: &mut Poly, m: &Monomial, c: u8, p: u8) {
    if c == 0 {
        return;
    }
    let s = ((f.get(m).copied().unwrap_or(0) as u16 + c as u16) % p as u16) as u8;
    if s == 0 {
        f.remove(m);
    } else {
        f.insert(m.clone(), s);
    }
}

fn poly_one(n: usize) -> Poly {
    BTreeMap::from([(vec![0u8; n], 1)])
}

fn poly_mul(a: &Poly, b: &Poly, p: u8) -> Poly {
    let mut out = Poly::new();
    for (ma, &ca) in a {
        for (mb, &cb) in b {
            let m: Monomial = ma.iter().zip(mb).map(|(&x, &y)| x + y).collect();
            add_term(&mut out, &m, ((ca as u16 * cb as u16) % p as u16) as u8, p);
        }
    }
    out
}

fn poly_pow(base: &Poly, mut e: u32, n: usize, p: u8) -> Poly {
    let mut acc = poly_one(n);
    let mut sq = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul(&acc, &sq, p);
        }
        e >>= 1;
        if e > 0 {
            sq = poly_mul(&sq, &sq, p);
        }
    }
    acc
}

/// Substitute x_j -> sum_k mat[j][k]·x_k into f.
#[must_use]
pub fn substitute(p: u8, n: usize, f: &Poly, mat: &[Vec<u8>]) -> Poly {
    let mut out = Poly::new();
    for (mono, &c) in f {
        let mut acc = poly_one(n);
        for (j, &e) in mono.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let mut lin = Poly::new();
            for k in 0..n {
                if mat[j][k] != 0 {
                    let mut m = vec![0u8; n];
                    m[k] = 1;
                    lin.insert(m, mat[j][k]);
                }
            }
            acc = poly_mul(&acc, &poly_pow(&lin, e as u32, n, p), p);
        }
        for (m, &cc) in &acc {
            add_term(&mut out, m, ((cc as u16 * c as u16) % p as u16) as u8, p);
        }
    }
    out
}

/// Generating matrices for GL_n(F_p): the full variable cycle, the
/// transvection x_0 -> x_0 + x_1, and a primitive scaling of x_0 (odd p).
/// Elementary matrices from cycle-conjugates of the transvection span
/// SL_n, and the scaling realizes every determinant.
#[must_use]
pub fn gl_generators(p: u8, n: usize) -> Vec<Vec<Vec<u8>>> {
    let primitive: u8 = if p == 2 { 1 } else { p - 1 };
    if n == 1 {
        return vec![vec![vec![primitive]]];
    }
    let mut cycle = vec![vec![0u8; n]; n];
    for j in 0..n {
        cycle[j][(j + 1) % n] = 1;
    }
    let mut transvection = vec![vec![0u8; n]; n];
    let mut scale = vec![vec![0u8; n]; n];
    for j in 0..n {
        transvection[j][j] = 1;
        scale[j][j] = 1;
    }
    transvection[0][1] = 1;
    scale[0][0] = primitive;
    let mut gens = vec![cycle, transvection];
    if primitive != 1 {
        gens.push(scale);
    }
    gens
}

// === dickson invariants ===

/// The n invariant polynomials of GL_n(F_p) in degrees p^n - p^i,
/// index i ascending, each verified fixed by every generator.
#[derive(Clone, Debug)]
pub struct DicksonSet {
    pub p: u8,
    pub n: usize,
    pub polys: Vec<Poly>,
    pub poly_degrees: Vec<usize>,
    pub cohom_degrees: Vec<usize>,
}

fn monomials_of_degree(n: usize, d: usize) -> Vec<Monomial> {
    fn rec(left: usize, d: usize, prefix: &mut Monomial, out: &mut Vec<Monomial>) {
        if left == 1 {
            prefix.push(d as u8);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=d {
            prefix.push(e as u8);
            rec(left - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

fn fixed_space_poly(p: u8, n: usize, d: usize, gens: &[Vec<Vec<u8>>]) -> Result<Poly, BoundsError> {
    let mons = monomials_of_degree(n, d);
    let cols = mons.len();
    let index: BTreeMap<&Monomial, usize> = mons.iter().zip(0..).collect();
    let mut rows: Vec<FpVec> = Vec::new();
    for mat in gens {
        // column mu of the action: expansion of the image of mons[mu]
        let imgs: Vec<Poly> = mons
            .iter()
            .map(|m| substitute(p, n, &BTreeMap::from([(m.clone(), 1)]), mat))
            .collect();
        for nu in 0..cols {
            let mut row = FpVec::zero(p, cols);
            for (mu, img) in imgs.iter().enumerate() {
                let mut a = img.get(&mons[nu]).copied().unwrap_or(0);
                if mu == nu {
                    a = (a + p - 1) % p;
                }
                if a != 0 {
                    row.set(mu, a);
                }
            }
            if !row.is_zero() {
                rows.push(row);
            }
        }
        debug_assert!(imgs.iter().all(|f| f.keys().all(|m| index.contains_key(m))));
    }
    let ker = FpMatrix::from_rows(p, cols, rows).kernel();
    if ker.len() != 1 {
        return Err(BoundsError::FixedSpaceDim { degree: d, dim: ker.len() });
    }
    let mut f = Poly::new();
    for (mu, mono) in mons.iter().enumerate() {
        let c = ker[0].get(mu);
        if c != 0 {
            f.insert(mono.clone(), c);
        }
    }
    // normalize the lexicographically largest monomial to coefficient 1
    let top = f.keys().next_back().expect("fixed polynomial is nonzero").clone();
    let lead = f[&top] as u32;
    let inv = (0..p as u32).find(|&x| x * lead % p as u32 == 1).unwrap();
    if inv != 1 {
        for c in f.values_mut() {
            *c = (*c as u32 * inv % p as u32) as u8;
        }
    }
    Ok(f)
}

/// Invariants of GL_n(F_p) acting on n variables, degree p^n - p^i for
/// i = 0..n: computed as the fixed space of each graded piece, verified
/// against every generator, lexicographic-top coefficient 1.
pub fn dickson(p: u8, n: usize) -> Result<DicksonSet, BoundsError> {
    if !(p == 2 || p == 3) || n == 0 || n > 3 {
        return Err(BoundsError::DicksonRange { p, n });
    }
    let gens = gl_generators(p, n);
    let pn = (p as usize).pow(n as u32);
    let mut polys = Vec::new();
    let mut poly_degrees = Vec::new();
    for i in 0..n {
        let deg = pn - (p as usize).pow(i as u32);
        let f = fixed_space_poly(p, n, deg, &gens)?;
        if gens.iter().any(|mat| substitute(p, n, &f, mat) != f) {
            return Err(BoundsError::NotInvariant { degree: deg });
        }
        polys.push(f);
        poly_degrees.push(deg);
    }
    let cohom_degrees = poly_degrees.iter().map(|&d| 2 * d).collect();
    Ok(DicksonSet { p, n, polys, poly_degrees, cohom_degrees })
}

// === growth check ===

/// Nonnegative rational in lowest terms, ordered by cross multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rational {
    pub num: u64,
    pub den: u64,
}

impl Rational {
    #[must_use]
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num.max(1), den);
        Rational { num: num / g, den: den / g }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Empirical polynomial-growth data: the maximum of dims[i]/i^{a-1} over
/// the computed range, and whether the tail half stays below the head
/// half's maximum. Evidence about growth order, never a proof.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuillenReport {
    pub max_ratio: Rational,
    pub monotone_tail: bool,
}

#[must_use]
pub fn quillen_growth_check(dims: &GradedDims, a: usize) -> QuillenReport {
    assert!(a >= 1, "elementary abelian rank must be positive");
    let kmax = dims.dims.len() - 1;
    assert!(kmax >= 1, "need at least degree 1");
    let ratio = |i: usize| Rational::new(dims.dims[i] as u64, (i as u64).pow(a as u32 - 1));
    let max_ratio = (1..=kmax).map(ratio).max().unwrap();
    let half = (kmax / 2).max(1);
    let head = (1..=half).map(ratio).max().unwrap();
    let monotone_tail = (half + 1..=kmax).all(|i| ratio(i) <= head);
    QuillenReport { max_ratio, monotone_tail }
}

// === tests ===

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::minres_dims;
    use crate::corpus;

    #[test]
    fn order_bound_examples() {
        for i in 0..10 {
            assert_eq!(order_dim_bound(1, i), 1);
        }
        assert_eq!(order_dim_bound(3, 2), 6);
        assert_eq!(order_dim_bound(0, 0), 1);
        assert_eq!(order_dim_bound(0, 3), 0);
    }

    #[test]
    fn gt_bound_examples() {
        assert_eq!(gt_bound(3, 1, 4), 15);
        assert_eq!(gt_bound(2, 1, 2), 10);
        assert_eq!(gt_bound(2, 2, 8), 24310);
    }

    #[test]
    fn tower_exponent_examples() {
        assert_eq!(tower_index_bound_exp(2, 1), 3);
        assert_eq!(tower_index_bound_exp(3, 2), 6);
        assert_eq!(tower_index_bound_exp(2, 4), 20);
    }

    #[test]
    fn geometric_series_examples() {
        assert_eq!(series_geom(1, 6).coeffs, vec![1; 7]);
        assert_eq!(series_geom(2, 5).coeffs[5], 6);
        assert_eq!(series_geom(0, 3).coeffs, vec![1, 0, 0, 0]);
    }

    #[test]
    fn product_of_geometric_series_adds_exponents() {
        for a in 0..=10 {
            for b in 0..=(10 - a).min(10) {
                let lhs = series_mul(&series_geom(a, 20), &series_geom(b, 20), 20);
                assert_eq!(lhs, series_geom(a + b, 20), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn page_bound_reproduces_rank_bound() {
        for (p, r) in [(2u8, 1usize), (2, 2), (2, 3), (3, 2), (5, 3)] {
            let u = series_geom(r, 8);
            let v = series_geom(tower_index_bound_exp(p, r), 8);
            let bound = lhs_e2_bound(&u, &v, 8);
            for i in 0..=8 {
                assert_eq!(bound.coeffs[i], gt_bound(p, r, i), "p={p} r={r} i={i}");
            }
        }
    }

    #[test]
    fn page_bound_dominates_dihedral_dims() {
        // center C_2 below D_8: rows bounded by all-ones, columns by geom(2)
        let g = corpus::dihedral(8).unwrap().group;
        let dims = minres_dims(&g, 8);
        let bound = lhs_e2_bound(&series_geom(1, 8), &series_geom(2, 8), 8);
        for i in 0..=8 {
            assert!(dims.dims[i] as u64 <= bound.coeffs[i], "i={i}");
        }
    }

    #[test]
    fn regularity_examples() {
        assert_eq!(
            regularity_degree_bounds(2, 2),
            RegularityBounds { gen_deg: 2, rel_deg: 4, l: 4 }
        );
        assert_eq!(
            regularity_degree_bounds(3, 1),
            RegularityBounds { gen_deg: 1, rel_deg: 1, l: 1 }
        );
        assert_eq!(
            regularity_degree_bounds(2, 4),
            RegularityBounds { gen_deg: 6, rel_deg: 12, l: 12 }
        );
    }

    #[test]
    fn chern_and_evens_examples() {
        assert_eq!(chern_param_bound(4), ChernBound { count: 4, max_deg: 8 });
        assert_eq!(chern_param_bound(1), ChernBound { count: 1, max_deg: 2 });
        assert_eq!(evens_degree_bound(2, 2, 4), 24);
        assert_eq!(evens_degree_bound(3, 1, 1), 4);
        assert_eq!(evens_degree_bound(2, 3, 8), 112);
    }

    #[test]
    fn bound_functions_are_monotone() {
        for q in 1..20 {
            assert!(chern_param_bound(q + 1).count > chern_param_bound(q).count);
            assert!(chern_param_bound(q + 1).max_deg > chern_param_bound(q).max_deg);
        }
        for n in 1..6u64 {
            for d in 1..6u64 {
                let here = regularity_degree_bounds(n, d);
                let up_n = regularity_degree_bounds(n + 1, d);
                let up_d = regularity_degree_bounds(n, d + 1);
                assert!(up_n.gen_deg >= here.gen_deg && up_d.gen_deg >= here.gen_deg);
                assert!(up_n.rel_deg >= here.rel_deg && up_d.rel_deg >= here.rel_deg);
                assert!(up_n.l >= here.l && up_d.l >= here.l);
            }
        }
        for n in 1..4 {
            for idx in 1..5u64 {
                assert!(evens_degree_bound(2, n + 1, idx) > evens_degree_bound(2, n, idx));
                assert!(evens_degree_bound(2, n, idx + 1) > evens_degree_bound(2, n, idx));
            }
        }
    }

    fn poly(terms: &[(&[u8], u8)]) -> Poly {
        terms.iter().map(|&(m, c)| (m.to_vec(), c)).collect()
    }

    #[test]
    fn dickson_small_cases_match_known_formulas() {
        let d = dickson(2, 1).unwrap();
        assert_eq!(d.polys, vec![poly(&[(&[1], 1)])]);
        assert_eq!(d.poly_degrees, vec![1]);

        let d = dickson(3, 1).unwrap();
        assert_eq!(d.polys, vec![poly(&[(&[2], 1)])]);
        assert_eq!(d.poly_degrees, vec![2]);
        assert_eq!(d.cohom_degrees, vec![4]);

        let d = dickson(2, 2).unwrap();
        assert_eq!(d.poly_degrees, vec![3, 2]);
        assert_eq!(d.polys[0], poly(&[(&[2, 1], 1), (&[1, 2], 1)]));
        assert_eq!(d.polys[1], poly(&[(&[2, 0], 1), (&[1, 1], 1), (&[0, 2], 1)]));
    }

    #[test]
    fn dickson_invariance_under_every_generator() {
        for (p, n) in [(2u8, 2usize), (2, 3), (3, 2)] {
            let d = dickson(p, n).unwrap();
            for (i, f) in d.polys.iter().enumerate() {
                assert_eq!(
                    d.poly_degrees[i],
                    f.keys().next().unwrap().iter().map(|&e| e as usize).sum::<usize>()
                );
                for mat in gl_generators(p, n) {
                    assert_eq!(substitute(p, n, f, &mat), *f, "p={p} n={n} i={i}");
                }
            }
        }
    }

    #[test]
    fn dickson_range_guard() {
        assert!(matches!(dickson(5, 2), Err(BoundsError::DicksonRange { .. })));
        assert!(matches!(dickson(2, 4), Err(BoundsError::DicksonRange { .. })));
        assert!(matches!(dickson(2, 0), Err(BoundsError::DicksonRange { .. })));
    }

    #[test]
    fn growth_check_examples() {
        let e4 = corpus::elem_ab(2, 2).unwrap().group;
        let rep = quillen_growth_check(&minres_dims(&e4, 10), 2);
        assert_eq!(rep.max_ratio, Rational::new(2, 1));
        assert!(rep.monotone_tail);

        let q8 = corpus::quaternion(8).unwrap().group;
        let rep = quillen_growth_check(&minres_dims(&q8, 10), 1);
        assert_eq!(rep.max_ratio, Rational::new(2, 1));
        assert!(rep.monotone_tail);

        let e8 = corpus::elem_ab(2, 3).unwrap().group;
        let rep = quillen_growth_check(&minres_dims(&e8, 10), 3);
        assert_eq!(rep.max_ratio, Rational::new(3, 1));
        assert!(rep.monotone_tail);
    }

    #[test]
    fn rational_ordering_and_display() {
        assert!(Rational::new(1, 2) < Rational::new(2, 3));
        assert_eq!(Rational::new(4, 6), Rational::new(2, 3));
        assert_eq!(Rational::new(6, 3).to_string(), "2");
        assert_eq!(Rational::new(5, 4).to_string(), "5/4");
    }
}
