//! Projective covers, syzygies, Ext, and Auslander-Reiten translates.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Q;
use crate::rep::{hom_dim, Morphism, Rep};
use std::sync::Arc;

pub const DEFAULT_RESOLUTION_CAP: usize = 32;

/// Minimal projective cover `⊕ P(v_i) → M`.
pub struct Cover {
    /// Generators: vertex and element of `M_v` spanning a complement of the radical.
    pub gens: Vec<(usize, Vec<Q>)>,
    pub proj: Rep,
    pub map: Morphism,
    /// Basis of `proj` at each vertex, as (generator, path) pairs.
    pub basis: Vec<Vec<(usize, usize)>>,
}

/// Per-vertex dimension of `M / rad M`.
pub fn top_dims(m: &Rep) -> Vec<usize> {
    let a = m.algebra();
    (0..a.num_vertices())
        .map(|v| m.dim_at(v) - radical_basis(m, v).cols())
        .collect()
}

fn radical_basis(m: &Rep, v: usize) -> Matrix {
    let a = m.algebra();
    let mut acc = Matrix::zeros(m.dim_at(v), 0);
    for &ar in a.in_arrows(v) {
        if m.dim_at(a.arrows()[ar].source) > 0 {
            acc = acc.hstack(m.map(ar));
        }
    }
    if acc.cols() == 0 {
        acc
    } else {
        acc.column_basis()
    }
}

pub fn radical(m: &Rep) -> Rep {
    let a = m.algebra().clone();
    let basis: Vec<Matrix> = (0..a.num_vertices()).map(|v| radical_basis(m, v)).collect();
    m.subrep(&basis)
}

/// `M / rad M` as a semisimple representation.
pub fn top(m: &Rep) -> Rep {
    let a = m.algebra().clone();
    let basis: Vec<Matrix> = (0..a.num_vertices()).map(|v| radical_basis(m, v)).collect();
    m.quotient(&basis).0
}

pub fn socle_dims(m: &Rep) -> Vec<usize> {
    let d = m.dual();
    top_dims(&d)
}

pub fn projective_cover(m: &Rep) -> Cover {
    let alg = m.algebra().clone();
    let n = alg.num_vertices();
    let mut gens = Vec::new();
    for v in 0..n {
        if m.dim_at(v) == 0 {
            continue;
        }
        let rad = radical_basis(m, v);
        for j in rad.complement_units() {
            let mut e = vec![Q::zero(); m.dim_at(v)];
            e[j] = Q::one();
            gens.push((v, e));
        }
    }
    let mut basis: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (g, (v, _)) in gens.iter().enumerate() {
        for &p in alg.paths_from(*v) {
            basis[alg.path(p).end].push((g, p));
        }
    }
    let parts: Vec<Rep> = gens.iter().map(|(v, _)| Rep::projective(&alg, *v)).collect();
    let refs: Vec<&Rep> = parts.iter().collect();
    let proj = Rep::direct_sum(&alg, &refs);
    let maps = (0..n)
        .map(|w| {
            let cols: Vec<Vec<Q>> = basis[w]
                .iter()
                .map(|&(g, p)| m.act_vec(&alg.path(p).arrows, &gens[g].1))
                .collect();
            Matrix::from_columns(m.dim_at(w), &cols)
        })
        .collect();
    let map = Morphism { maps };
    debug_assert!(map.is_morphism(&proj, m));
    Cover { gens, proj, map, basis }
}

/// Ω(M) together with the cover and the kernel basis inside the cover.
pub struct Syzygy {
    pub cover: Cover,
    pub kernel: Rep,
    pub kernel_basis: Vec<Matrix>,
}

pub fn syzygy_data(m: &Rep) -> Syzygy {
    let cover = projective_cover(m);
    let (kernel, kernel_basis) = cover.map.kernel(&cover.proj);
    Syzygy { cover, kernel, kernel_basis }
}

pub fn syzygy(m: &Rep) -> Rep {
    if m.is_zero() {
        return m.clone();
    }
    syzygy_data(m).kernel
}

pub fn cosyzygy(m: &Rep) -> Rep {
    if m.is_zero() {
        return m.clone();
    }
    syzygy(&m.dual()).dual_over(m.algebra())
}

/// Ω^k (k > 0) or Ω^{-k} (k < 0).
pub fn syzygy_steps(m: &Rep, k: i64) -> Rep {
    let mut x = m.clone();
    for _ in 0..k.unsigned_abs() {
        if x.is_zero() {
            break;
        }
        x = if k > 0 { syzygy(&x) } else { cosyzygy(&x) };
    }
    x
}

/// Auslander-Reiten translate τM, computed from the minimal projective
/// presentation `P1 → P0 → M` as the kernel of the induced map of injectives.
pub fn tau(m: &Rep) -> Rep {
    let alg = m.algebra().clone();
    if m.is_zero() {
        return m.clone();
    }
    let s0 = syzygy_data(m);
    if s0.kernel.is_zero() {
        return Rep::zero(&alg);
    }
    let c1 = projective_cover(&s0.kernel);
    // Express each generator of ΩM in the basis of P0.
    let terms: Vec<(usize, Vec<(usize, usize, Q)>)> = c1
        .gens
        .iter()
        .map(|(w, g)| {
            let x = s0.kernel_basis[*w].mul_vec(g);
            let coeffs = s0.cover.basis[*w]
                .iter()
                .zip(x)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&(i, p), c)| (i, p, c))
                .collect();
            (*w, coeffs)
        })
        .collect();
    let src_parts: Vec<Rep> = terms.iter().map(|(w, _)| Rep::injective(&alg, *w)).collect();
    let tgt_parts: Vec<Rep> = s0.cover.gens.iter().map(|(v, _)| Rep::injective(&alg, *v)).collect();
    let src = Rep::direct_sum(&alg, &src_parts.iter().collect::<Vec<_>>());
    let tgt = Rep::direct_sum(&alg, &tgt_parts.iter().collect::<Vec<_>>());
    let nu = nakayama_map(&alg, &terms, &s0.cover.gens.iter().map(|g| g.0).collect::<Vec<_>>());
    debug_assert!(nu.is_morphism(&src, &tgt));
    nu.kernel(&src).0
}

/// Basis of `⊕_j I(w_j)` at vertex x: (summand, path ending at w_j, starting at x).
fn injective_sum_basis(alg: &Algebra, tops: &[usize], x: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (j, &w) in tops.iter().enumerate() {
        for &p in alg.paths_to(w) {
            if alg.path(p).start == x {
                out.push((j, p));
            }
        }
    }
    out
}

fn nakayama_map(alg: &Arc<Algebra>, terms: &[(usize, Vec<(usize, usize, Q)>)], p0_tops: &[usize]) -> Morphism {
    let src_tops: Vec<usize> = terms.iter().map(|t| t.0).collect();
    let maps = (0..alg.num_vertices())
        .map(|x| {
            let sb = injective_sum_basis(alg, &src_tops, x);
            let tb = injective_sum_basis(alg, p0_tops, x);
            let mut m = Matrix::zeros(tb.len(), sb.len());
            for (col, &(j, r)) in sb.iter().enumerate() {
                let rp = alg.path(r);
                for (i, p, c) in &terms[j].1 {
                    let pp = alg.path(*p);
                    if !rp.arrows.ends_with(&pp.arrows) {
                        continue;
                    }
                    let s_arrows = &rp.arrows[..rp.arrows.len() - pp.arrows.len()];
                    let Some(s) = alg.path_id(x, s_arrows) else { continue };
                    if alg.path(s).end != p0_tops[*i] {
                        continue;
                    }
                    let row = tb.iter().position(|&(ii, ss)| ii == *i && ss == s).unwrap();
                    m[(row, col)] = &m[(row, col)] + c;
                }
            }
            m
        })
        .collect();
    Morphism { maps }
}

pub fn tau_inv(m: &Rep) -> Rep {
    if m.is_zero() {
        return m.clone();
    }
    tau(&m.dual()).dual_over(m.algebra())
}

/// τ_n = τ Ω^{n-1}.
pub fn tau_n(m: &Rep, n: usize) -> Rep {
    tau(&syzygy_steps(m, n as i64 - 1))
}

/// τ_n⁻ = τ⁻ Ω^{-(n-1)}.
pub fn tau_n_inv(m: &Rep, n: usize) -> Rep {
    tau_inv(&syzygy_steps(m, -(n as i64 - 1)))
}

/// Syzygies Ω^0 M, Ω^1 M, … computed on demand, with their tops.
#[derive(Clone)]
pub struct Resolution {
    levels: Vec<(Rep, Vec<usize>)>,
    cap: usize,
}

impl Resolution {
    pub fn new(m: &Rep, cap: usize) -> Resolution {
        Resolution { levels: vec![(m.clone(), top_dims(m))], cap }
    }

    pub fn level(&mut self, k: usize) -> Result<&(Rep, Vec<usize>)> {
        if k > self.cap {
            return Err(Error::ResolutionCap(self.cap));
        }
        while self.levels.len() <= k {
            let next = syzygy(&self.levels.last().unwrap().0);
            let t = top_dims(&next);
            self.levels.push((next, t));
        }
        Ok(&self.levels[k])
    }

    /// dim Ext^i(M, N) for i ≥ 1.
    pub fn ext_dim(&mut self, n: &Rep, i: usize) -> Result<usize> {
        assert!(i >= 1);
        let (x, top) = self.level(i - 1)?.clone();
        if x.is_zero() {
            return Ok(0);
        }
        let (omega, _) = self.level(i)?.clone();
        let hom_p: usize = top.iter().zip(n.dims()).map(|(t, d)| t * d).sum();
        let v = hom_dim(&omega, n) + hom_dim(&x, n);
        debug_assert!(v >= hom_p);
        Ok(v - hom_p)
    }
}

pub fn ext_dim(m: &Rep, n: &Rep, i: usize) -> Result<usize> {
    ext_dim_capped(m, n, i, DEFAULT_RESOLUTION_CAP)
}

pub fn ext_dim_capped(m: &Rep, n: &Rep, i: usize, cap: usize) -> Result<usize> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    if i == 0 {
        return Ok(hom_dim(m, n));
    }
    Resolution::new(m, cap).ext_dim(n, i)
}

/// Projective dimension, or None if it exceeds the cap.
pub fn projective_dimension(m: &Rep, cap: usize) -> Option<usize> {
    let mut x = m.clone();
    if x.is_zero() {
        return Some(0);
    }
    for k in 0..=cap {
        x = syzygy(&x);
        if x.is_zero() {
            return Some(k);
        }
    }
    None
}

pub fn global_dimension(alg: &Arc<Algebra>, cap: usize) -> Option<usize> {
    let mut best = 0;
    for v in 0..alg.num_vertices() {
        best = best.max(projective_dimension(&Rep::simple(alg, v), cap)?);
    }
    Some(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_algebra;

    fn alg(s: &str) -> Arc<Algebra> {
        Arc::new(parse_algebra(s).unwrap())
    }

    fn a3() -> Arc<Algebra> {
        alg(r#"{"vertices":["1","2","3"],"arrows":[{"id":"a","from":"1","to":"2"},{"id":"b","from":"2","to":"3"}],"relations":[["a","b"]]}"#)
    }

    #[test]
    fn syzygy_of_simple() {
        let a = a3();
        let o = syzygy(&Rep::simple(&a, 0));
        assert_eq!(o.dims(), &[0, 1, 0]);
        assert!(cosyzygy(&Rep::injective(&a, 1)).is_zero());
    }

    #[test]
    fn ext_small() {
        let a2 = alg(r#"{"vertices":["1","2"],"arrows":[{"id":"a","from":"1","to":"2"}]}"#);
        assert_eq!(ext_dim(&Rep::simple(&a2, 0), &Rep::simple(&a2, 1), 1).unwrap(), 1);
        let a = a3();
        let (s1, s3) = (Rep::simple(&a, 0), Rep::simple(&a, 2));
        assert_eq!(ext_dim(&s1, &s3, 1).unwrap(), 0);
        assert_eq!(ext_dim(&s1, &s3, 2).unwrap(), 1);
        assert_eq!(ext_dim(&Rep::projective(&a, 0), &s3, 1).unwrap(), 0);
    }

    #[test]
    fn tau_line() {
        let a = a3();
        let s: Vec<Rep> = (0..3).map(|v| Rep::simple(&a, v)).collect();
        assert_eq!(tau_inv(&s[2]).dims(), &[0, 1, 0]);
        assert_eq!(tau_inv(&s[1]).dims(), &[1, 0, 0]);
        assert_eq!(tau(&s[0]).dims(), &[0, 1, 0]);
        assert!(tau(&Rep::projective(&a, 0)).is_zero());
        assert_eq!(tau_n_inv(&s[2], 2).dims(), &[1, 0, 0]);
        assert!(tau_n(&Rep::projective(&a, 1), 3).is_zero());
    }

    #[test]
    fn gldim_line() {
        let a = a3();
        assert_eq!(global_dimension(&a, 10), Some(2));
    }
}
