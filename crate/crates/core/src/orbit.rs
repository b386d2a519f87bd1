//! Self-gluing: witnesses, the orbit algebra Λ̃, covering windows and push-down.

use crate::abutment::{abutment_at, abutments, maximal_abutments, maximal_above, compatible_pair, Abutment, Fracturing, Side};
use crate::algebra::Algebra;
use crate::ar::{indecomposables, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::glue::{identify, Identified, TailPair};
use crate::matrix::Matrix;
use crate::rep::Rep;
use crate::verify::{check_nct, Subcategory, VerificationReport};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

pub const DEFAULT_WINDOW_START: usize = 2;
pub const DEFAULT_WINDOW_MAX: usize = 6;

/// A fractured pair (W, J) with a compatible pair (P, I).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessPair {
    pub w: Abutment,
    pub j: Abutment,
    pub p: Abutment,
    pub i: Abutment,
}

/// One or more pairs glued simultaneously; a single pair is the ordinary self-gluing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfGlueWitness {
    pub pairs: Vec<WitnessPair>,
}

impl SelfGlueWitness {
    pub fn height(&self) -> usize {
        self.pairs[0].p.height()
    }

    fn tail_pairs(&self, p_part: usize, i_part: usize) -> Vec<TailPair> {
        self.pairs
            .iter()
            .map(|x| TailPair { p_part, p_tail: x.p.tail.clone(), i_part, i_tail: x.i.tail.clone() })
            .collect()
    }

    pub fn describe(&self, alg: &Algebra) -> String {
        self.pairs
            .iter()
            .map(|x| format!("W={} J={} P={} I={}", x.w.describe(alg), x.j.describe(alg), x.p.describe(alg), x.i.describe(alg)))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

fn fractured_pair_failures(alg: &Algebra, fr: &Fracturing, ws: &[usize], js: &[usize]) -> Vec<String> {
    let mut out = Vec::new();
    for w in maximal_abutments(alg, Side::Left) {
        if !ws.contains(&w.anchor) && fr.fracture(&w).is_some_and(|t| !t.non_projective().is_empty()) {
            out.push(format!("left fracture at {} is not projective", alg.vertex_name(w.anchor)));
        }
    }
    for j in maximal_abutments(alg, Side::Right) {
        if !js.contains(&j.anchor) && fr.fracture(&j).is_some_and(|t| !t.non_injective().is_empty()) {
            out.push(format!("right fracture at {} is not injective", alg.vertex_name(j.anchor)));
        }
    }
    out
}

fn disjoint(p: &Abutment, i: &Abutment) -> bool {
    p.tail.iter().all(|v| !i.tail.contains(v))
}

/// Witness from explicit (P anchor, I anchor) pairs, with W and J the maximal abutments above them.
pub fn witness_from_pairs(alg: &Algebra, fr: &Fracturing, pairs: &[(usize, usize)]) -> Result<SelfGlueWitness> {
    if pairs.is_empty() {
        return Err(Error::InvalidArgument("witness needs at least one pair".into()));
    }
    let mut out = Vec::new();
    let mut failures = Vec::new();
    for &(pv, iv) in pairs {
        let p = abutment_at(alg, Side::Left, pv)?;
        let i = abutment_at(alg, Side::Right, iv)?;
        let w = maximal_above(alg, &p)?;
        let j = maximal_above(alg, &i)?;
        let rep = compatible_pair(alg, fr, &w, &j, &p, &i);
        failures.extend(rep.failures);
        if !disjoint(&p, &i) {
            failures.push(format!("supports of {} and {} overlap", p.describe(alg), i.describe(alg)));
        }
        out.push(WitnessPair { w, j, p, i });
    }
    let ws: Vec<usize> = out.iter().map(|x| x.w.anchor).collect();
    let js: Vec<usize> = out.iter().map(|x| x.j.anchor).collect();
    failures.extend(fractured_pair_failures(alg, fr, &ws, &js));
    let lefts: Vec<Abutment> = out.iter().map(|x| x.p.clone()).collect();
    let rights: Vec<Abutment> = out.iter().map(|x| x.i.clone()).collect();
    if out.len() > 1 && !(crate::abutment::independent(&lefts)? && crate::abutment::independent(&rights)?) {
        failures.push("pairs are not independent".into());
    }
    if !failures.is_empty() {
        return Err(Error::Hypothesis(failures.join("; ")));
    }
    Ok(SelfGlueWitness { pairs: out })
}

/// First single-pair witness in the order: W, J by anchor, then P from the highest down, then I.
/// On failure returns the reasons collected per candidate pair.
pub fn self_glue_witness(alg: &Algebra, fr: &Fracturing) -> std::result::Result<SelfGlueWitness, Vec<String>> {
    let mut reasons = Vec::new();
    let lefts = abutments(alg, Side::Left);
    let rights = abutments(alg, Side::Right);
    for w in lefts.iter().filter(|a| a.maximal) {
        for j in rights.iter().filter(|a| a.maximal) {
            let f = fractured_pair_failures(alg, fr, &[w.anchor], &[j.anchor]);
            if !f.is_empty() {
                reasons.push(format!("({}, {}): {}", w.describe(alg), j.describe(alg), f.join(", ")));
                continue;
            }
            let mut ps: Vec<&Abutment> = lefts.iter().filter(|p| p.le(w)).collect();
            ps.sort_by_key(|p| std::cmp::Reverse(p.height()));
            for p in ps {
                for i in rights.iter().filter(|i| i.le(j) && i.height() == p.height()) {
                    let rep = compatible_pair(alg, fr, w, j, p, i);
                    if rep.ok && disjoint(p, i) {
                        return Ok(SelfGlueWitness { pairs: vec![WitnessPair { w: w.clone(), j: j.clone(), p: p.clone(), i: i.clone() }] });
                    }
                    let mut why = rep.failures;
                    if !disjoint(p, i) {
                        why.push("overlapping supports".into());
                    }
                    reasons.push(format!("({}, {}): {}", p.describe(alg), i.describe(alg), why.join(", ")));
                }
            }
        }
    }
    Err(reasons)
}

/// Λ̃: the tails of P and I identified, and every relation-free path through the identified tail
/// from the rest of the quiver and back made zero.
pub fn tilde(alg: &Algebra, wit: &SelfGlueWitness) -> Result<Identified> {
    for x in &wit.pairs {
        if !disjoint(&x.p, &x.i) {
            return Err(Error::Unsupported("self-gluing with overlapping supports".into()));
        }
    }
    identify(&[alg], &wit.tail_pairs(0, 0))
}

/// Λ[−k, k]: 2k+1 copies with I[z] glued to P[z+1].
#[derive(Clone, Debug)]
pub struct CoverWindow {
    pub k: usize,
    pub glued: Identified,
    /// Per window vertex: every (copy, base vertex) mapping to it.
    pub fibers: Vec<Vec<(i64, usize)>>,
    /// Per window arrow: a (copy, base arrow) preimage.
    pub arrow_base: Vec<(i64, usize)>,
}

impl CoverWindow {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.glued.algebra
    }

    fn part(&self, z: i64) -> usize {
        (z + self.k as i64) as usize
    }

    /// Window vertex of `v[z]`.
    pub fn vertex(&self, z: i64, v: usize) -> usize {
        self.glued.vmaps[self.part(z)][v]
    }

    /// M[z] extended by zero to the window.
    pub fn place(&self, z: i64, m: &Rep) -> Rep {
        self.glued.push_forward(self.part(z), m)
    }

    /// Copies touched by the support of `m`.
    pub fn copies(&self, m: &Rep) -> BTreeSet<i64> {
        m.support().iter().flat_map(|&w| self.fibers[w].iter().map(|x| x.0)).collect()
    }

    /// Shift-invariant key: dimensions at (copy − least copy, base vertex).
    pub fn orbit_key(&self, m: &Rep) -> Vec<(i64, usize, usize)> {
        let zmin = *self.copies(m).iter().next().unwrap_or(&0);
        let mut key: Vec<(i64, usize, usize)> = m
            .support()
            .iter()
            .map(|&w| {
                let (z, v) = self.fibers[w][0];
                (z - zmin, v, m.dim_at(w))
            })
            .collect();
        key.sort();
        key
    }
}

pub fn cover_window(alg: &Algebra, wit: &SelfGlueWitness, k: usize) -> Result<CoverWindow> {
    let copies: Vec<Algebra> = (-(k as i64)..=k as i64)
        .map(|z| alg.renamed(|v| format!("{}[{}]", v, z), |a| format!("{}[{}]", a, z)))
        .collect::<Result<_>>()?;
    let refs: Vec<&Algebra> = copies.iter().collect();
    let mut pairs = Vec::new();
    for part in 0..copies.len().saturating_sub(1) {
        pairs.extend(wit.tail_pairs(part + 1, part));
    }
    let glued = identify(&refs, &pairs)?;
    let lam = &glued.algebra;
    let mut fibers = vec![Vec::new(); lam.num_vertices()];
    let mut arrow_base = vec![(0i64, 0usize); lam.num_arrows()];
    for (part, vm) in glued.vmaps.iter().enumerate() {
        let z = part as i64 - k as i64;
        for (v, &w) in vm.iter().enumerate() {
            fibers[w].push((z, v));
        }
    }
    for (part, am) in glued.amaps.iter().enumerate().rev() {
        let z = part as i64 - k as i64;
        for (a, &b) in am.iter().enumerate() {
            arrow_base[b] = (z, a);
        }
    }
    for f in fibers.iter_mut() {
        f.sort();
    }
    Ok(CoverWindow { k, glued, fibers, arrow_base })
}

/// Push-down of a window module to Λ̃ along the period map.
pub fn push_down(win: &CoverWindow, til: &Identified, m: &Rep) -> Result<Rep> {
    let lam = &til.algebra;
    let wa = win.algebra();
    let vt = |w: usize| til.vmaps[0][win.fibers[w][0].1];
    let mut fiber: Vec<Vec<usize>> = vec![Vec::new(); lam.num_vertices()];
    for w in 0..wa.num_vertices() {
        if m.dim_at(w) > 0 {
            fiber[vt(w)].push(w);
        }
    }
    let mut offset = vec![0usize; wa.num_vertices()];
    let mut dims = vec![0usize; lam.num_vertices()];
    for (x, ws) in fiber.iter().enumerate() {
        for &w in ws {
            offset[w] = dims[x];
            dims[x] += m.dim_at(w);
        }
    }
    let mut maps: Vec<Matrix> = lam.arrows().iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source])).collect();
    for (b, ar) in wa.arrows().iter().enumerate() {
        if m.dim_at(ar.source) == 0 || m.dim_at(ar.target) == 0 {
            continue;
        }
        let alpha = til.amaps[0][win.arrow_base[b].1];
        maps[alpha].set_block(offset[ar.target], offset[ar.source], m.map(b));
    }
    Rep::new(lam.clone(), dims, maps)
}

#[derive(Clone, Debug)]
pub struct OrbitModules {
    pub tilde: Identified,
    pub window: CoverWindow,
    pub modules: Vec<Rep>,
    pub keys: Vec<Vec<(i64, usize, usize)>>,
}

fn interior_orbits(win: &CoverWindow, cap: usize) -> Result<BTreeMap<Vec<(i64, usize, usize)>, Rep>> {
    let k = win.k as i64;
    let mut out = BTreeMap::new();
    for x in indecomposables(win.algebra(), cap)? {
        let c = win.copies(&x);
        if c.iter().all(|&z| z > -k && z < k) {
            out.entry(win.orbit_key(&x)).or_insert(x);
        }
    }
    Ok(out)
}

/// Indecomposable Λ̃-modules, as push-downs of the cover's indecomposables up to shift. The window
/// grows from `start` until the orbit set is unchanged for two consecutive radii.
pub fn orbit_indecomposables(alg: &Algebra, wit: &SelfGlueWitness, start: usize, max: usize) -> Result<OrbitModules> {
    let til = tilde(alg, wit)?;
    let mut prev: Option<BTreeSet<Vec<(i64, usize, usize)>>> = None;
    for k in start.max(1)..=max {
        let win = cover_window(alg, wit, k)?;
        let orbits = interior_orbits(&win, DEFAULT_CAP)?;
        let keys: BTreeSet<_> = orbits.keys().cloned().collect();
        if prev.as_ref() == Some(&keys) {
            let reps: Vec<(Vec<(i64, usize, usize)>, Rep)> = orbits.into_iter().collect();
            let modules: Vec<Rep> = reps.par_iter().map(|(_, x)| push_down(&win, &til, x)).collect::<Result<_>>()?;
            let keys = reps.into_iter().map(|(k, _)| k).collect();
            return Ok(OrbitModules { tilde: til, window: win, modules, keys });
        }
        prev = Some(keys);
    }
    Err(Error::CapExceeded(max))
}

/// M̃ from the modules of M, checked as an n-cluster tilting subcategory of Λ̃.
pub fn tilde_nct(alg: &Algebra, wit: &SelfGlueWitness, m: &[Rep], n: usize) -> Result<(OrbitModules, Vec<Rep>, VerificationReport)> {
    let orb = orbit_indecomposables(alg, wit, DEFAULT_WINDOW_START, DEFAULT_WINDOW_MAX)?;
    let lam = orb.tilde.algebra.clone();
    let mut mt = Subcategory::new(&lam, []);
    for x in m {
        let placed = orb.window.place(0, x);
        mt.insert(push_down(&orb.window, &orb.tilde, &placed)?);
    }
    let members = mt.members;
    let rep = check_nct(&orb.modules, &members, n)?;
    Ok((orb, members, rep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{kupisch_of, nakayama, KupischSeries, KupischShape};
    use crate::ar::nakayama_uniserials;
    use crate::verify::nct_candidate;

    fn naka(e: &[usize]) -> Algebra {
        nakayama(&KupischSeries::new(e.to_vec(), KupischShape::Acyclic).unwrap()).unwrap()
    }

    #[test]
    fn kupisch_self_glue() {
        let a = naka(&[2, 2, 3, 3, 3, 3, 2, 1]);
        let fr = Fracturing::trivial(&a);
        let wit = self_glue_witness(&a, &fr).unwrap();
        assert_eq!(wit.height(), 1);
        let t = tilde(&a, &wit).unwrap();
        let want = KupischSeries::new(vec![2, 2, 3, 3, 3, 3, 2], KupischShape::Cyclic).unwrap().normalized();
        assert_eq!(kupisch_of(&t.algebra).unwrap(), want);
        let orb = orbit_indecomposables(&a, &wit, 2, 6).unwrap();
        assert_eq!(orb.modules.len(), 18);
        assert_eq!(nakayama_uniserials(&t.algebra).len(), 18);
        let arc = Arc::new(a.clone());
        let m = nct_candidate(&arc, 3, DEFAULT_CAP).unwrap();
        let (_, mt, rep) = tilde_nct(&a, &wit, &m, 3).unwrap();
        assert!(rep.pass, "{:?}", rep);
        assert_eq!(mt.len(), 10);
    }

    #[test]
    fn small_window() {
        let a = naka(&[2, 2, 2, 1]);
        let wit = self_glue_witness(&a, &Fracturing::trivial(&a)).unwrap();
        let w0 = cover_window(&a, &wit, 0).unwrap();
        assert_eq!(w0.algebra().vertices()[0], "1[0]");
        let w1 = cover_window(&a, &wit, 1).unwrap();
        assert_eq!(w1.algebra().num_vertices(), 10);
        let orb = orbit_indecomposables(&a, &wit, 2, 6).unwrap();
        assert_eq!(orb.modules.len(), 6);
    }
}
