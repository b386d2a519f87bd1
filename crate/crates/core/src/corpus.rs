//! Seeded generators for test corpora: Kupisch series, starlike shapes, small gluing systems.

use crate::abutment::{abutments, Abutment, Side};
use crate::algebra::{nakayama, starlike, Algebra, ArmDir, KupischSeries, KupischShape};
use crate::ar::is_representation_directed;
use crate::error::Result;
use crate::glue::{glue, GluingSystemSpec, SystemEdge};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

pub type CorpusRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CorpusRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform over the admissible choice at each step, built from the sink backwards.
pub fn random_acyclic_kupisch(rng: &mut CorpusRng, len: usize) -> KupischSeries {
    let mut d = vec![1usize; len];
    for i in (0..len.saturating_sub(1)).rev() {
        let hi = (d[i + 1] + 1).min(len - i);
        d[i] = rng.gen_range(2..=hi);
    }
    KupischSeries::new(d, KupischShape::Acyclic).expect("admissible by construction")
}

/// Rejection sampling over entries in 2..=max_entry.
pub fn random_cyclic_kupisch(rng: &mut CorpusRng, len: usize, max_entry: usize) -> KupischSeries {
    loop {
        let d: Vec<usize> = (0..len).map(|_| rng.gen_range(2..=max_entry.max(2))).collect();
        if let Ok(s) = KupischSeries::new(d, KupischShape::Cyclic) {
            return s;
        }
    }
}

fn random_dir(rng: &mut CorpusRng) -> ArmDir {
    if rng.gen_bool(0.5) {
        ArmDir::In
    } else {
        ArmDir::Out
    }
}

pub fn random_starlike(rng: &mut CorpusRng, k: usize, max_arm: usize) -> Algebra {
    let rays: Vec<(usize, ArmDir)> = (0..k).map(|_| (rng.gen_range(2..=max_arm), random_dir(rng))).collect();
    starlike(&rays).expect("valid rays")
}

/// Every multiset of `k` linearly oriented arms with lengths in 2..=max_arm.
pub fn starlike_shapes(k: usize, max_arm: usize) -> Vec<Vec<(usize, ArmDir)>> {
    let opts: Vec<(usize, ArmDir)> =
        (2..=max_arm).flat_map(|m| [(m, ArmDir::Out), (m, ArmDir::In)]).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(opts: &[(usize, ArmDir)], start: usize, k: usize, cur: &mut Vec<(usize, ArmDir)>, out: &mut Vec<Vec<(usize, ArmDir)>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..opts.len() {
            cur.push(opts[i]);
            rec(opts, i, k, cur, out);
            cur.pop();
        }
    }
    rec(&opts, 0, k, &mut cur, &mut out);
    out
}

/// Small Nakayama or starlike algebra.
pub fn random_decoration(rng: &mut CorpusRng) -> Algebra {
    match rng.gen_range(0..3) {
        0 => {
            let len = rng.gen_range(2..=5);
            nakayama(&random_acyclic_kupisch(rng, len)).expect("nakayama")
        }
        1 => random_starlike(rng, 1, 4),
        _ => random_starlike(rng, 3, 3),
    }
}

/// Glue two random decorations along a random matching pair of abutments, if one exists.
pub fn random_glued_pair(rng: &mut CorpusRng) -> Option<Algebra> {
    let b = random_decoration(rng);
    let a = random_decoration(rng);
    let is = abutments(&b, Side::Right);
    let ps = abutments(&a, Side::Left);
    let mut pairs: Vec<(&Abutment, &Abutment)> =
        is.iter().flat_map(|i| ps.iter().filter(move |p| p.height() == i.height()).map(move |p| (i, p))).collect();
    pairs.retain(|(i, p)| i.height() < b.num_vertices() && p.height() < a.num_vertices());
    let (i, p) = pairs.choose(rng)?;
    glue(&b, i.anchor, &a, p.anchor).ok().map(|g| (*g.identified.algebra).clone())
}

/// Representation-directed algebras drawn from Nakayama, starlike and glued families.
pub fn oracle_corpus(seed: u64, count: usize, max_vertices: usize) -> Vec<Arc<Algebra>> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 50 * count {
        attempts += 1;
        let alg = match attempts % 3 {
            0 => {
                let len = r.gen_range(2..=max_vertices.min(10));
                nakayama(&random_acyclic_kupisch(&mut r, len)).ok()
            }
            1 => {
                let k = *[1usize, 3].choose(&mut r).unwrap();
                Some(random_starlike(&mut r, k, 4))
            }
            _ => random_glued_pair(&mut r),
        };
        let Some(alg) = alg else { continue };
        if alg.num_vertices() > max_vertices {
            continue;
        }
        let alg = Arc::new(alg);
        if is_representation_directed(&alg, 400).is_directed() {
            out.push(alg);
        }
    }
    out
}

/// The three trees on vertices u, v, w: u→v→w, u←v→w and u→v←w.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeShape {
    C1,
    C2,
    C3,
}

impl TreeShape {
    pub fn edges(self) -> [(usize, usize); 2] {
        match self {
            TreeShape::C1 => [(0, 1), (1, 2)],
            TreeShape::C2 => [(1, 0), (1, 2)],
            TreeShape::C3 => [(0, 1), (2, 1)],
        }
    }
}

fn pick_disjoint<'a>(rng: &mut CorpusRng, cands: &'a [Abutment], taken: &[Abutment], h: usize, whole: usize) -> Option<&'a Abutment> {
    let ok: Vec<&Abutment> = cands
        .iter()
        .filter(|a| a.height() == h && a.height() < whole && taken.iter().all(|t| t.tail.iter().all(|v| !a.tail.contains(v))))
        .collect();
    ok.choose(rng).copied()
}

/// A gluing system on the given tree with random decorations; retries until the abutments fit.
pub fn random_tree_system(rng: &mut CorpusRng, shape: TreeShape) -> Result<GluingSystemSpec> {
    loop {
        let algs: Vec<Arc<Algebra>> = (0..3).map(|_| Arc::new(random_decoration(rng))).collect();
        let lefts: Vec<Vec<Abutment>> = algs.iter().map(|a| abutments(a, Side::Left)).collect();
        let rights: Vec<Vec<Abutment>> = algs.iter().map(|a| abutments(a, Side::Right)).collect();
        let mut taken_l: Vec<Vec<Abutment>> = vec![Vec::new(); 3];
        let mut taken_r: Vec<Vec<Abutment>> = vec![Vec::new(); 3];
        let mut edges = Vec::new();
        for (from, to) in shape.edges() {
            let mut heights: Vec<usize> = rights[from]
                .iter()
                .map(|a| a.height())
                .filter(|h| lefts[to].iter().any(|p| p.height() == *h))
                .collect();
            heights.sort_unstable();
            heights.dedup();
            let Some(&h) = heights.choose(rng) else { break };
            let i = pick_disjoint(rng, &rights[from], &taken_r[from], h, algs[from].num_vertices()).cloned();
            let p = pick_disjoint(rng, &lefts[to], &taken_l[to], h, algs[to].num_vertices()).cloned();
            let (Some(i), Some(p)) = (i, p) else { break };
            edges.push(SystemEdge { from, to, i_vertex: i.anchor, p_vertex: p.anchor });
            taken_r[from].push(i);
            taken_l[to].push(p);
        }
        if edges.len() != 2 {
            continue;
        }
        let sys = GluingSystemSpec { names: vec!["u".into(), "v".into(), "w".into()], algebras: algs, edges, fracturings: None };
        if sys.validate().is_ok() {
            return Ok(sys);
        }
    }
}
