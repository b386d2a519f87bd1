//! Krull-Schmidt decomposition by Fitting's lemma and isomorphism search.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Q;
use crate::rep::{hom_basis, hom_dim, Morphism, Rep};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::atomic::{AtomicU64, Ordering};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;
static SEED: AtomicU64 = AtomicU64::new(DEFAULT_SEED);

/// Seed for the randomized searches that take no explicit one.
pub fn seed() -> u64 {
    SEED.load(Ordering::Relaxed)
}

pub fn set_seed(s: u64) {
    SEED.store(s, Ordering::Relaxed);
}
const RANDOM_TRIES: usize = 24;

#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Isoclasses of summands with multiplicities, in discovery order.
    pub summands: Vec<(Rep, usize)>,
    /// Every summand copy, with its inclusion into the input.
    pub parts: Vec<Rep>,
    pub inclusions: Vec<Morphism>,
}

impl Decomposition {
    pub fn count(&self) -> usize {
        self.parts.len()
    }

    /// The inclusions assemble to an isomorphism `⊕ parts → M`, and the
    /// inverse splits into projections with `proj_i ∘ incl_j = δ_ij`.
    pub fn certificate_holds(&self, m: &Rep) -> bool {
        let n = m.dims().len();
        for v in 0..n {
            let mut acc = Matrix::zeros(m.dim_at(v), 0);
            for inc in &self.inclusions {
                acc = acc.hstack(&inc.maps[v]);
            }
            if !acc.is_invertible() && m.dim_at(v) > 0 {
                return false;
            }
            if acc.cols() != m.dim_at(v) {
                return false;
            }
        }
        self.parts.iter().zip(&self.inclusions).all(|(p, i)| i.is_morphism(p, m))
    }
}

fn pow_endo(phi: &Morphism, k: usize) -> Morphism {
    Morphism { maps: phi.maps.iter().map(|m| m.pow(k)).collect() }
}

/// Fitting decomposition of `m` along `phi`, if it is proper.
fn fitting(m: &Rep, phi: &Morphism) -> Option<(Vec<Matrix>, Vec<Matrix>)> {
    let k = m.dims().iter().copied().max().unwrap_or(0).max(1);
    let psi = pow_endo(phi, k);
    let ker: Vec<Matrix> = psi.maps.iter().map(|x| x.kernel()).collect();
    let kd: usize = ker.iter().map(|x| x.cols()).sum();
    if kd == 0 || kd == m.total_dim() {
        return None;
    }
    let im: Vec<Matrix> = psi.maps.iter().map(|x| x.column_basis()).collect();
    Some((im, ker))
}

fn sub_identity(phi: &Morphism, lambda: &Q) -> Morphism {
    Morphism {
        maps: phi
            .maps
            .iter()
            .map(|x| x.sub(&Matrix::scalar(x.rows(), lambda)))
            .collect(),
    }
}

fn int_divisors(n: i128) -> Vec<i128> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = 1i128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
        if d > 1_000_000 {
            break;
        }
    }
    out
}

fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.lcm(b)
}

/// Rational roots of a polynomial with coefficients lowest degree first.
pub fn rational_roots(coeffs: &[Q]) -> Vec<Q> {
    let mut den = BigInt::one();
    for c in coeffs {
        den = lcm(&den, &c.denom_big());
    }
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer_big() * (&den / c.denom_big())).collect();
    let mut roots = Vec::new();
    while ints.len() > 1 && ints[0].is_zero() {
        ints.remove(0);
        if !roots.contains(&Q::zero()) {
            roots.push(Q::zero());
        }
    }
    while ints.last().is_some_and(|x| x.is_zero()) {
        ints.pop();
    }
    if ints.len() < 2 {
        return roots;
    }
    let (Some(lo), Some(hi)) = (ints[0].abs().to_i128(), ints.last().unwrap().abs().to_i128()) else {
        return roots;
    };
    if lo > 1_000_000_000_000 || hi > 1_000_000_000_000 {
        return roots;
    }
    let eval = |x: &Q| {
        let mut acc = Q::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    };
    for p in int_divisors(lo) {
        for q in int_divisors(hi) {
            for s in [1i128, -1] {
                let (Some(pn), Some(qd)) = ((s * p).to_i64(), q.to_i64()) else { continue };
                let x = Q::frac(pn, qd);
                if !roots.contains(&x) && eval(&x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    roots
}

fn eigen_candidates(phi: &Morphism) -> Vec<Q> {
    let mut out: Vec<Q> = Vec::new();
    for m in &phi.maps {
        if m.rows() == 0 {
            continue;
        }
        for r in rational_roots(&m.char_poly()) {
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out
}

fn random_combination(basis: &[Morphism], rng: &mut ChaCha8Rng, range: i64) -> Morphism {
    let mut acc = basis[0].scale(&Q::int(rng.gen_range(-range..=range)));
    for b in &basis[1..] {
        acc = acc.add(&b.scale(&Q::int(rng.gen_range(-range..=range))));
    }
    acc
}

/// Certificate that End(M) is local: every basis element has a single
/// eigenvalue, and the shifted elements span a nilpotent subalgebra.
fn is_local(m: &Rep, basis: &[Morphism]) -> bool {
    let total = Q::int(m.total_dim() as i64);
    let mut nil = Vec::new();
    for phi in basis {
        let tr = phi.maps.iter().fold(Q::zero(), |a, x| &a + &x.trace());
        let lambda = &tr / &total;
        let shifted = sub_identity(phi, &lambda);
        if !shifted.maps.iter().all(|x| x.rows() == 0 || x.is_nilpotent()) {
            return false;
        }
        nil.push(shifted);
    }
    let span = Matrix::from_columns(nil[0].flatten().len(), &nil.iter().map(|x| x.flatten()).collect::<Vec<_>>());
    let r = span.rank();
    for a in &nil {
        for b in &nil {
            let prod = a.after(b).flatten();
            let ext = span.hstack(&Matrix::from_columns(prod.len(), &[prod]));
            if ext.rank() != r {
                return false;
            }
        }
    }
    true
}

fn subspace_endomorphisms(basis: &[Morphism], v: usize, j: usize) -> Vec<Morphism> {
    // Endomorphisms with φ_v(e_j) = 0 form a subspace; return a basis of it.
    let rows = basis[0].maps[v].rows();
    let cols: Vec<Vec<Q>> = basis.iter().map(|b| b.maps[v].column(j)).collect();
    let mat = Matrix::from_columns(rows, &cols);
    let k = mat.kernel();
    (0..k.cols())
        .map(|c| {
            let mut acc: Option<Morphism> = None;
            for (i, b) in basis.iter().enumerate() {
                let co = &k[(i, c)];
                if co.is_zero() {
                    continue;
                }
                let t = b.scale(co);
                acc = Some(match acc {
                    None => t,
                    Some(x) => x.add(&t),
                });
            }
            acc.unwrap()
        })
        .collect()
}

enum Split {
    Indecomposable,
    Proper(Vec<Matrix>, Vec<Matrix>),
}

fn try_split(m: &Rep, rng: &mut ChaCha8Rng) -> Result<Split> {
    let basis = hom_basis(m, m)?;
    if basis.len() <= 1 {
        return Ok(Split::Indecomposable);
    }
    let try_phi = |phi: &Morphism| -> Option<(Vec<Matrix>, Vec<Matrix>)> {
        if let Some(s) = fitting(m, phi) {
            return Some(s);
        }
        for l in eigen_candidates(phi) {
            if l.is_zero() {
                continue;
            }
            if let Some(s) = fitting(m, &sub_identity(phi, &l)) {
                return Some(s);
            }
        }
        None
    };
    for phi in &basis {
        if let Some((a, b)) = try_phi(phi) {
            return Ok(Split::Proper(a, b));
        }
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if let Some((a, b)) = try_phi(&basis[i].add(&basis[j])) {
                return Ok(Split::Proper(a, b));
            }
        }
    }
    for _ in 0..RANDOM_TRIES {
        let phi = random_combination(&basis, rng, 5);
        if let Some((a, b)) = try_phi(&phi) {
            return Ok(Split::Proper(a, b));
        }
    }
    for v in m.support() {
        for j in 0..m.dim_at(v) {
            let sub = subspace_endomorphisms(&basis, v, j);
            if sub.is_empty() {
                continue;
            }
            for phi in sub.iter().chain(std::iter::once(&random_combination(&sub, rng, 5))) {
                if let Some((a, b)) = try_phi(phi) {
                    return Ok(Split::Proper(a, b));
                }
            }
        }
    }
    if is_local(m, &basis) {
        Ok(Split::Indecomposable)
    } else {
        Err(Error::DecompositionFailure(format!("no splitting found for dimension vector {}", m.dim_string())))
    }
}

fn compose_basis(outer: &[Matrix], inner: &[Matrix]) -> Vec<Matrix> {
    outer.iter().zip(inner).map(|(o, i)| o.mul(i)).collect()
}

pub fn decompose(m: &Rep) -> Result<Decomposition> {
    decompose_seeded(m, seed())
}

pub fn decompose_seeded(m: &Rep, seed: u64) -> Result<Decomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ident: Vec<Matrix> = m.dims().iter().map(|&d| Matrix::identity(d)).collect();
    let mut stack = vec![(m.clone(), ident)];
    let mut parts = Vec::new();
    let mut inclusions = Vec::new();
    while let Some((x, emb)) = stack.pop() {
        if x.is_zero() {
            continue;
        }
        match try_split(&x, &mut rng)? {
            Split::Indecomposable => {
                parts.push(x);
                inclusions.push(Morphism { maps: emb });
            }
            Split::Proper(a, b) => {
                let ra = x.subrep(&a);
                let rb = x.subrep(&b);
                stack.push((rb, compose_basis(&emb, &b)));
                stack.push((ra, compose_basis(&emb, &a)));
            }
        }
    }
    let mut summands: Vec<(Rep, usize)> = Vec::new();
    for p in &parts {
        match summands.iter_mut().find(|(s, _)| is_isomorphic(s, p)) {
            Some(e) => e.1 += 1,
            None => summands.push((p.clone(), 1)),
        }
    }
    Ok(Decomposition { summands, parts, inclusions })
}

pub fn is_indecomposable(m: &Rep) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    Ok(matches!(try_split(m, &mut rng)?, Split::Indecomposable))
}

pub fn find_isomorphism(m: &Rep, n: &Rep, seed: u64) -> Option<Morphism> {
    if m.dims() != n.dims() || !m.same_algebra(n) {
        return None;
    }
    if m.is_zero() {
        return Some(Morphism::zero(m, n));
    }
    let basis = hom_basis(m, n).ok()?;
    if basis.is_empty() || hom_dim(n, m) != basis.len() {
        return None;
    }
    if let Some(f) = basis.iter().find(|f| f.is_iso()) {
        return Some(f.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        let f = random_combination(&basis, &mut rng, 1000);
        if f.is_iso() {
            return Some(f);
        }
    }
    None
}

pub fn is_isomorphic(m: &Rep, n: &Rep) -> bool {
    find_isomorphism(m, n, seed()).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_algebra;
    use std::sync::Arc;

    fn a3() -> Arc<crate::Algebra> {
        Arc::new(
            parse_algebra(
                r#"{"vertices":["1","2","3"],"arrows":[{"id":"a","from":"1","to":"2"},{"id":"b","from":"2","to":"3"}]}"#,
            )
            .unwrap(),
        )
    }

    #[test]
    fn zero_and_isotypic() {
        let a = a3();
        assert!(decompose(&Rep::zero(&a)).unwrap().summands.is_empty());
        let s = Rep::simple(&a, 0);
        let m = Rep::direct_sum(&a, &[&s, &s]);
        let d = decompose(&m).unwrap();
        assert_eq!(d.summands.len(), 1);
        assert_eq!(d.summands[0].1, 2);
        assert!(d.certificate_holds(&m));
    }

    #[test]
    fn mixed_sum_with_twisted_basis() {
        let a = a3();
        let p1 = Rep::projective(&a, 0);
        let p2 = Rep::projective(&a, 1);
        let s2 = Rep::simple(&a, 1);
        let sum = Rep::direct_sum(&a, &[&p1, &p2, &s2, &p2]);
        // conjugate by a non-trivial change of basis at each vertex
        let g: Vec<Matrix> = sum
            .dims()
            .iter()
            .map(|&d| {
                let mut m = Matrix::identity(d);
                for i in 0..d {
                    for j in i + 1..d {
                        m[(i, j)] = Q::int((i + 2 * j) as i64);
                    }
                }
                m
            })
            .collect();
        let ginv: Vec<Matrix> = g.iter().map(|x| x.inverse().unwrap()).collect();
        let maps = a
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, ar)| g[ar.target].mul(sum.map(i)).mul(&ginv[ar.source]))
            .collect();
        let twisted = Rep::new(a.clone(), sum.dims().to_vec(), maps).unwrap();
        let d = decompose(&twisted).unwrap();
        assert_eq!(d.count(), 4);
        assert!(d.certificate_holds(&twisted));
        let mults: Vec<usize> = d.summands.iter().map(|s| s.1).collect();
        assert_eq!(mults.iter().sum::<usize>(), 4);
        assert!(d.summands.iter().any(|(s, k)| *k == 2 && is_isomorphic(s, &p2)));
    }

    #[test]
    fn roots() {
        // (x-1)(x+2)(2x-3) = 2x^3 - x^2 - 7x + 6
        let r = rational_roots(&[Q::int(6), Q::int(-7), Q::int(-1), Q::int(2)]);
        assert_eq!(r.len(), 3);
        assert!(r.contains(&Q::frac(3, 2)));
    }
}
