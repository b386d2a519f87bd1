//! Gluing along abutments: pairs, simultaneous gluings and gluing systems over trees.

use crate::abutment::{abutment_at, maximal_abutments, maximal_above, restrict_fracture, Abutment, Fracturing, Side};
use crate::algebra::{Algebra, Arrow, DEFAULT_PATH_CAP};
use crate::ar::ARData;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rep::Rep;
use serde_json::Value;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

const CROSS_PATH_CAP: usize = 1 << 20;

/// Identify the tail `p_tail` (in part `p_part`) with `i_tail` (in part `i_part`), position by position.
#[derive(Clone, Debug)]
pub struct TailPair {
    pub p_part: usize,
    pub p_tail: Vec<usize>,
    pub i_part: usize,
    pub i_tail: Vec<usize>,
}

/// Result of an identification with a rename journal per part.
#[derive(Clone, Debug)]
pub struct Identified {
    pub algebra: Arc<Algebra>,
    pub vmaps: Vec<Vec<usize>>,
    pub amaps: Vec<Vec<usize>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

fn tail_arrow(alg: &Algebra, s: usize, t: usize) -> Result<usize> {
    let c: Vec<usize> = alg.out_arrows(s).iter().copied().filter(|&a| alg.arrows()[a].target == t).collect();
    match c.as_slice() {
        [a] => Ok(*a),
        _ => Err(Error::InvalidAbutment(format!(
            "tail {} → {} is not a single arrow",
            alg.vertex_name(s),
            alg.vertex_name(t)
        ))),
    }
}

fn unique_name(used: &mut BTreeSet<String>, name: &str) -> String {
    let mut n = name.to_string();
    while used.contains(&n) {
        n.push('\'');
    }
    used.insert(n.clone());
    n
}

/// Quotient of the disjoint union of `parts` by the tail identifications, with relations the images
/// of the part relations together with every minimal relation-free path that lifts to no single part.
pub fn identify(parts: &[&Algebra], pairs: &[TailPair]) -> Result<Identified> {
    let voff: Vec<usize> = parts.iter().scan(0, |s, p| { let o = *s; *s += p.num_vertices(); Some(o) }).collect();
    let aoff: Vec<usize> = parts.iter().scan(0, |s, p| { let o = *s; *s += p.num_arrows(); Some(o) }).collect();
    let nv: usize = parts.iter().map(|p| p.num_vertices()).sum();
    let na: usize = parts.iter().map(|p| p.num_arrows()).sum();
    let mut vu = UnionFind::new(nv);
    let mut au = UnionFind::new(na);
    let mut v_pref = vec![false; nv];
    let mut a_pref = vec![false; na];
    for pr in pairs {
        if pr.p_tail.len() != pr.i_tail.len() {
            return Err(Error::HeightMismatch(pr.p_tail.len(), pr.i_tail.len()));
        }
        let (pa, ia) = (parts[pr.p_part], parts[pr.i_part]);
        for k in 0..pr.p_tail.len() {
            let x = voff[pr.p_part] + pr.p_tail[k];
            let y = voff[pr.i_part] + pr.i_tail[k];
            vu.union(x, y);
            v_pref[y] = true;
            if k + 1 < pr.p_tail.len() {
                let a = aoff[pr.p_part] + tail_arrow(pa, pr.p_tail[k], pr.p_tail[k + 1])?;
                let b = aoff[pr.i_part] + tail_arrow(ia, pr.i_tail[k], pr.i_tail[k + 1])?;
                au.union(a, b);
                a_pref[b] = true;
            }
        }
    }
    let vname = |g: usize| -> String {
        let p = part_of(&voff, nv, g).unwrap();
        parts[p].vertex_name(g - voff[p]).to_string()
    };
    let aname = |g: usize| -> String {
        let p = part_of(&aoff, na, g).unwrap();
        parts[p].arrows()[g - aoff[p]].id.clone()
    };
    // classes in order of their least member
    let mut vclass: HashMap<usize, usize> = HashMap::new();
    let mut vreps: Vec<Vec<usize>> = Vec::new();
    for g in 0..nv {
        let r = vu.find(g);
        let idx = *vclass.entry(r).or_insert_with(|| {
            vreps.push(Vec::new());
            vreps.len() - 1
        });
        vreps[idx].push(g);
    }
    let mut used = BTreeSet::new();
    let vertices: Vec<String> = vreps
        .iter()
        .map(|m| {
            let pick = m.iter().copied().find(|&g| v_pref[g]).unwrap_or(m[0]);
            unique_name(&mut used, &vname(pick))
        })
        .collect();
    let mut aclass: HashMap<usize, usize> = HashMap::new();
    let mut areps: Vec<Vec<usize>> = Vec::new();
    for g in 0..na {
        let r = au.find(g);
        let idx = *aclass.entry(r).or_insert_with(|| {
            areps.push(Vec::new());
            areps.len() - 1
        });
        areps[idx].push(g);
    }
    let vmaps: Vec<Vec<usize>> =
        (0..parts.len()).map(|p| (0..parts[p].num_vertices()).map(|v| vclass[&vu.find(voff[p] + v)]).collect()).collect();
    let amaps: Vec<Vec<usize>> =
        (0..parts.len()).map(|p| (0..parts[p].num_arrows()).map(|a| aclass[&au.find(aoff[p] + a)]).collect()).collect();
    let mut used = BTreeSet::new();
    let arrows: Vec<Arrow> = areps
        .iter()
        .map(|m| {
            let pick = m.iter().copied().find(|&g| a_pref[g]).unwrap_or(m[0]);
            let p = part_of(&aoff, na, pick).unwrap();
            let a = &parts[p].arrows()[pick - aoff[p]];
            Arrow { id: unique_name(&mut used, &aname(pick)), source: vmaps[p][a.source], target: vmaps[p][a.target] }
        })
        .collect();
    let mut rels: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (p, part) in parts.iter().enumerate() {
        for r in part.relations() {
            rels.insert(r.iter().map(|&a| amaps[p][a]).collect());
        }
    }
    let mut pre: Vec<Vec<(usize, usize)>> = vec![Vec::new(); arrows.len()];
    for p in 0..parts.len() {
        for (a, &b) in amaps[p].iter().enumerate() {
            pre[b].push((p, a));
        }
    }
    let liftable = |path: &[usize]| -> bool {
        let mut cur: Vec<(usize, usize)> = pre[path[0]].clone();
        for &b in &path[1..] {
            cur = pre[b]
                .iter()
                .copied()
                .filter(|&(p, a)| {
                    let s = parts[p].arrows()[a].source;
                    cur.iter().any(|&(q, c)| q == p && parts[q].arrows()[c].target == s)
                })
                .collect();
            if cur.is_empty() {
                return false;
            }
        }
        true
    };
    let rel_list: Vec<Vec<usize>> = rels.iter().cloned().collect();
    let ends_in_relation = |path: &[usize]| rel_list.iter().any(|r| path.ends_with(r));
    let mut out_arrows: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for (i, a) in arrows.iter().enumerate() {
        out_arrows[a.source].push(i);
    }
    let mut queue: VecDeque<Vec<usize>> = (0..arrows.len()).map(|a| vec![a]).collect();
    let mut seen = 0usize;
    let mut fresh: BTreeSet<Vec<usize>> = BTreeSet::new();
    while let Some(path) = queue.pop_front() {
        seen += 1;
        if seen > CROSS_PATH_CAP {
            return Err(Error::NotAdmissible("glued quiver has unbounded relation-free paths".into()));
        }
        let end = arrows[*path.last().unwrap()].target;
        for &b in &out_arrows[end] {
            let mut q = path.clone();
            q.push(b);
            if ends_in_relation(&q) {
                continue;
            }
            if liftable(&q) {
                queue.push_back(q);
            } else if liftable(&q[1..]) {
                fresh.insert(q);
            }
        }
    }
    rels.extend(fresh);
    let algebra = Algebra::from_parts(vertices, arrows, rels.into_iter().collect(), DEFAULT_PATH_CAP)?;
    Ok(Identified { algebra: Arc::new(algebra), vmaps, amaps })
}

fn part_of(off: &[usize], total: usize, g: usize) -> Option<usize> {
    if g >= total {
        return None;
    }
    (0..off.len()).rev().find(|&p| off[p] <= g && (p + 1 == off.len() || off[p + 1] > g))
}

impl Identified {
    /// Extension by zero of a module over part `p`.
    pub fn push_forward(&self, p: usize, m: &Rep) -> Rep {
        let alg = &self.algebra;
        let mut dims = vec![0usize; alg.num_vertices()];
        let mut src: Vec<Option<usize>> = vec![None; alg.num_vertices()];
        for (v, &w) in self.vmaps[p].iter().enumerate() {
            if m.dim_at(v) > 0 || src[w].is_none() {
                dims[w] = m.dim_at(v);
                src[w] = Some(v);
            }
        }
        let mut maps: Vec<Matrix> = alg.arrows().iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source])).collect();
        for (a, &b) in self.amaps[p].iter().enumerate() {
            let ar = &m.algebra().arrows()[a];
            if src[alg.arrows()[b].source] == Some(ar.source) && src[alg.arrows()[b].target] == Some(ar.target) {
                maps[b] = m.map(a).clone();
            }
        }
        Rep::new(alg.clone(), dims, maps).expect("extension by zero respects the glued relations")
    }

    /// Image of an abutment of part `p`, if it is still an abutment with the image tail.
    pub fn transport(&self, p: usize, ab: &Abutment) -> Option<Abutment> {
        let tail: Vec<usize> = ab.tail.iter().map(|&v| self.vmaps[p][v]).collect();
        let anchor = self.vmaps[p][ab.anchor];
        let t = abutment_at(&self.algebra, ab.side, anchor).ok()?;
        (t.tail == tail).then_some(t)
    }
}

/// B ⊳ A along the left abutment P(p) of A and the right abutment I(i) of B.
#[derive(Clone, Debug)]
pub struct Glued {
    pub identified: Identified,
    pub p: Abutment,
    pub i: Abutment,
    pub trivial: bool,
}

pub const PART_B: usize = 0;
pub const PART_A: usize = 1;

pub fn glue(b: &Algebra, i: usize, a: &Algebra, p: usize) -> Result<Glued> {
    let pab = abutment_at(a, Side::Left, p)?;
    let iab = abutment_at(b, Side::Right, i)?;
    if pab.height() != iab.height() {
        return Err(Error::HeightMismatch(pab.height(), iab.height()));
    }
    let pair = TailPair { p_part: PART_A, p_tail: pab.tail.clone(), i_part: PART_B, i_tail: iab.tail.clone() };
    let identified = identify(&[b, a], &[pair])?;
    let trivial = pab.height() == a.num_vertices() || iab.height() == b.num_vertices();
    Ok(Glued { identified, p: pab, i: iab, trivial })
}

/// Sorted structural key: vertex names, named arrows, relation words.
pub fn canonical_key(a: &Algebra) -> (Vec<String>, Vec<(String, String, String)>, BTreeSet<Vec<String>>) {
    let mut v = a.vertices().to_vec();
    v.sort();
    let mut ar: Vec<_> = a
        .arrows()
        .iter()
        .map(|x| (x.id.clone(), a.vertex_name(x.source).to_string(), a.vertex_name(x.target).to_string()))
        .collect();
    ar.sort();
    (v, ar, a.relation_names())
}

/// Equality after sorting names.
pub fn structurally_equal(a: &Algebra, b: &Algebra) -> bool {
    canonical_key(a) == canonical_key(b)
}

/// Equality up to renaming of vertices and arrows.
pub fn equal_up_to_renaming(a: &Algebra, b: &Algebra) -> bool {
    crate::algebra::isomorphic_presentations(a, b)
}

impl ARData {
    /// Build AR data from known nodes and structure, recomputing markers and ids.
    pub fn assemble(
        alg: Arc<Algebra>,
        reps: Vec<Rep>,
        arrows: BTreeMap<(usize, usize), usize>,
        tau: Vec<Option<usize>>,
    ) -> ARData {
        let n = reps.len();
        let mut tau_inv = vec![None; n];
        for (x, t) in tau.iter().enumerate() {
            if let Some(t) = t {
                tau_inv[*t] = Some(x);
            }
        }
        ARData::from_raw(alg, reps, arrows, tau, tau_inv)
    }

    /// Same nodes up to isomorphism, with matching arrows and translation.
    pub fn matches(&self, other: &ARData) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut map = Vec::with_capacity(self.len());
        for n in &self.nodes {
            match other.find(&n.rep.with_algebra(other.algebra.clone())) {
                Some(j) => map.push(j),
                None => return false,
            }
        }
        let distinct: BTreeSet<usize> = map.iter().copied().collect();
        if distinct.len() != map.len() {
            return false;
        }
        let arrows: BTreeMap<(usize, usize), usize> = self.arrows.iter().map(|(&(a, b), &k)| ((map[a], map[b]), k)).collect();
        let tau_ok = self.tau.iter().enumerate().all(|(x, t)| t.map(|t| map[t]) == other.tau[map[x]]);
        arrows == other.arrows && tau_ok
    }
}

/// Amalgamated sum Γ(B) ⊔_△ Γ(A) over the identified foundations.
pub fn glue_ar(ar_a: &ARData, ar_b: &ARData, g: &Glued) -> Result<ARData> {
    let found_a = crate::abutment::foundation(ar_a, &g.p)?;
    let found_b = crate::abutment::foundation(ar_b, &g.i)?;
    let fb: BTreeMap<(usize, usize), usize> = found_b.iter().copied().collect();
    let mut a_to_b: HashMap<usize, usize> = HashMap::new();
    for (iv, ia) in &found_a {
        let ib = fb.get(iv).ok_or_else(|| Error::InvalidAbutment("foundation shapes differ".into()))?;
        a_to_b.insert(*ia, *ib);
    }
    let id = &g.identified;
    let mut reps: Vec<Rep> = ar_b.nodes.iter().map(|n| id.push_forward(PART_B, &n.rep)).collect();
    let nb = reps.len();
    let mut amap = vec![0usize; ar_a.len()];
    for (x, n) in ar_a.nodes.iter().enumerate() {
        if let Some(&y) = a_to_b.get(&x) {
            amap[x] = y;
        } else {
            amap[x] = reps.len();
            reps.push(id.push_forward(PART_A, &n.rep));
        }
    }
    let mut arrows: BTreeMap<(usize, usize), usize> = ar_b.arrows.clone();
    for (&(x, y), &k) in &ar_a.arrows {
        let e = arrows.entry((amap[x], amap[y])).or_insert(k);
        if *e != k {
            return Err(Error::InvalidAbutment("arrow multiplicities disagree on the foundation".into()));
        }
    }
    let mut tau: Vec<Option<usize>> = ar_b.tau.clone();
    tau.resize(reps.len(), None);
    for (x, t) in ar_a.tau.iter().enumerate() {
        let gx = amap[x];
        if tau[gx].is_none() {
            tau[gx] = t.map(|t| amap[t]);
        }
    }
    let _ = nb;
    Ok(ARData::assemble(id.algebra.clone(), reps, arrows, tau))
}

/// Compatibility conditions for gluing fracturings along (P, I).
pub fn check_fracture_compatibility(a: &Algebra, fr_a: &Fracturing, b: &Algebra, fr_b: &Fracturing, g: &Glued) -> Result<()> {
    let w = maximal_above(a, &g.p)?;
    let j = maximal_above(b, &g.i)?;
    let tw = fr_a.fracture(&w).ok_or_else(|| Error::InvalidFracture("missing fracture above P".into()))?;
    let tj = fr_b.fracture(&j).ok_or_else(|| Error::InvalidFracture("missing fracture above I".into()))?;
    let kp = w.coordinate(g.p.anchor).unwrap();
    if tw.non_projective().iter().any(|x| x.0 < kp) {
        return Err(Error::Hypothesis("non-projective part of T_A^(W) is not in the foundation of P".into()));
    }
    let ki = j.coordinate(g.i.anchor).unwrap();
    if tj.non_injective().iter().any(|x| x.1 > ki) {
        return Err(Error::Hypothesis("non-injective part of T_B^(J) is not in the foundation of I".into()));
    }
    if restrict_fracture(tw, &w, &g.p)? != restrict_fracture(tj, &j, &g.i)? {
        return Err(Error::Hypothesis("compatibility: restricted fractures at P and I differ".into()));
    }
    Ok(())
}

/// Push-forward rule: B-side fractures win on the left, A-side fractures on the right.
pub fn glue_fracturings(a: &Algebra, fr_a: &Fracturing, b: &Algebra, fr_b: &Fracturing, g: &Glued) -> Result<Fracturing> {
    check_fracture_compatibility(a, fr_a, b, fr_b, g)?;
    let id = &g.identified;
    let lam = &id.algebra;
    let mut out = Fracturing { left: BTreeMap::new(), right: BTreeMap::new() };
    for (side, first, second) in [
        (Side::Left, (PART_B, b, fr_b), (PART_A, a, fr_a)),
        (Side::Right, (PART_A, a, fr_a), (PART_B, b, fr_b)),
    ] {
        for wl in maximal_abutments(lam, side) {
            let mut found = None;
            for (part, alg, fr) in [first, second] {
                for w in maximal_abutments(alg, side) {
                    if id.transport(part, &w).is_some_and(|t| t.anchor == wl.anchor) {
                        found = fr.fracture(&w).cloned();
                    }
                }
                if found.is_some() {
                    break;
                }
            }
            let t = found.ok_or_else(|| {
                Error::InvalidFracture(format!("maximal abutment at {} has no source fracture", lam.vertex_name(wl.anchor)))
            })?;
            match side {
                Side::Left => out.left.insert(wl.anchor, t),
                Side::Right => out.right.insert(wl.anchor, t),
            };
        }
    }
    out.validate(lam)?;
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairMode {
    Parallel,
    Antiparallel,
}

/// Several tails identified at once. The first pair is (P in A, I in B); later pairs keep that
/// orientation in parallel mode and swap it (I in A, P in B) in antiparallel mode.
pub fn simultaneous_glue(a: &Algebra, b: &Algebra, pairs: &[(usize, usize)], mode: PairMode) -> Result<Identified> {
    let mut tp = Vec::new();
    let mut lefts_a = Vec::new();
    let mut rights_b = Vec::new();
    let mut rights_a = Vec::new();
    let mut lefts_b = Vec::new();
    for (k, &(va, vb)) in pairs.iter().enumerate() {
        if k == 0 || mode == PairMode::Parallel {
            let p = abutment_at(a, Side::Left, va)?;
            let i = abutment_at(b, Side::Right, vb)?;
            if p.height() != i.height() {
                return Err(Error::HeightMismatch(p.height(), i.height()));
            }
            tp.push(TailPair { p_part: PART_A, p_tail: p.tail.clone(), i_part: PART_B, i_tail: i.tail.clone() });
            lefts_a.push(p);
            rights_b.push(i);
        } else {
            let i = abutment_at(a, Side::Right, va)?;
            let p = abutment_at(b, Side::Left, vb)?;
            if p.height() != i.height() {
                return Err(Error::HeightMismatch(p.height(), i.height()));
            }
            tp.push(TailPair { p_part: PART_B, p_tail: p.tail.clone(), i_part: PART_A, i_tail: i.tail.clone() });
            rights_a.push(i);
            lefts_b.push(p);
        }
    }
    for group in [&lefts_a, &rights_b, &rights_a, &lefts_b] {
        if !crate::abutment::independent(group)? {
            return Err(Error::Hypothesis("simultaneous gluing needs independent abutments on each side".into()));
        }
    }
    identify(&[b, a], &tp)
}

#[derive(Clone, Debug)]
pub struct SystemEdge {
    pub from: usize,
    pub to: usize,
    /// Anchor of the right abutment I_e in Λ_from.
    pub i_vertex: usize,
    /// Anchor of the left abutment P_e in Λ_to.
    pub p_vertex: usize,
}

#[derive(Clone, Debug)]
pub struct GluingSystemSpec {
    pub names: Vec<String>,
    pub algebras: Vec<Arc<Algebra>>,
    pub edges: Vec<SystemEdge>,
    pub fracturings: Option<Vec<Fracturing>>,
}

#[derive(Clone, Debug)]
pub struct SystemGlued {
    pub algebra: Arc<Algebra>,
    /// Per tree vertex, the map from its algebra's vertices / arrows into the glued algebra.
    pub vmaps: Vec<Vec<usize>>,
    pub amaps: Vec<Vec<usize>>,
    pub warnings: Vec<String>,
}

impl SystemGlued {
    pub fn push_forward(&self, t: usize, m: &Rep) -> Rep {
        let id = Identified { algebra: self.algebra.clone(), vmaps: vec![self.vmaps[t].clone()], amaps: vec![self.amaps[t].clone()] };
        id.push_forward(0, m)
    }

    pub fn transport(&self, t: usize, ab: &Abutment) -> Option<Abutment> {
        let id = Identified { algebra: self.algebra.clone(), vmaps: vec![self.vmaps[t].clone()], amaps: vec![self.amaps[t].clone()] };
        id.transport(0, ab)
    }
}

impl GluingSystemSpec {
    pub fn validate(&self) -> Result<Vec<String>> {
        let n = self.algebras.len();
        if n == 0 || self.names.len() != n {
            return Err(Error::InvalidSystem("system needs one algebra per tree vertex".into()));
        }
        if self.edges.len() + 1 != n {
            return Err(Error::InvalidSystem("a tree on n vertices has n-1 arrows".into()));
        }
        let mut uf = UnionFind::new(n);
        let mut pairs = BTreeSet::new();
        for e in &self.edges {
            if e.from >= n || e.to >= n || e.from == e.to {
                return Err(Error::InvalidSystem("arrow endpoints out of range".into()));
            }
            if !pairs.insert((e.from.min(e.to), e.from.max(e.to))) {
                return Err(Error::InvalidSystem("multiple arrows between two vertices".into()));
            }
            uf.union(e.from, e.to);
        }
        if (0..n).any(|v| uf.find(v) != uf.find(0)) {
            return Err(Error::InvalidSystem("underlying graph is not connected".into()));
        }
        let mut warnings = Vec::new();
        for (k, e) in self.edges.iter().enumerate() {
            let p = abutment_at(&self.algebras[e.to], Side::Left, e.p_vertex)
                .map_err(|x| Error::InvalidSystem(format!("arrow {} (i): {}", k, x)))?;
            let i = abutment_at(&self.algebras[e.from], Side::Right, e.i_vertex)
                .map_err(|x| Error::InvalidSystem(format!("arrow {} (i): {}", k, x)))?;
            if p.height() != i.height() {
                return Err(Error::InvalidSystem(format!("arrow {} (ii): heights {} and {}", k, p.height(), i.height())));
            }
            if p.height() == self.algebras[e.to].num_vertices() || i.height() == self.algebras[e.from].num_vertices() {
                warnings.push(format!("arrow {} → {} is a trivial gluing", self.names[e.from], self.names[e.to]));
            }
        }
        for v in 0..n {
            let ins: Vec<Abutment> = self
                .edges
                .iter()
                .filter(|e| e.to == v)
                .map(|e| abutment_at(&self.algebras[v], Side::Left, e.p_vertex).unwrap())
                .collect();
            let outs: Vec<Abutment> = self
                .edges
                .iter()
                .filter(|e| e.from == v)
                .map(|e| abutment_at(&self.algebras[v], Side::Right, e.i_vertex).unwrap())
                .collect();
            if !crate::abutment::independent(&ins)? || !crate::abutment::independent(&outs)? {
                return Err(Error::InvalidSystem(format!("vertex {} (i): abutments are not independent", self.names[v])));
            }
        }
        Ok(warnings)
    }

    fn qualified(&self, t: usize) -> Result<Algebra> {
        let tag = &self.names[t];
        self.algebras[t].renamed(|v| format!("{}:{}", tag, v), |a| format!("{}:{}", tag, a))
    }

    /// Fold with a chosen edge order; `reverse` starts from the last vertex of `subset`.
    fn fold(&self, subset: &[usize], reverse: bool) -> Result<SystemGlued> {
        let edges: Vec<usize> = (0..self.edges.len())
            .filter(|&k| subset.contains(&self.edges[k].from) && subset.contains(&self.edges[k].to))
            .collect();
        let q: Vec<Algebra> = (0..self.algebras.len()).map(|t| self.qualified(t)).collect::<Result<_>>()?;
        let start = if reverse { *subset.iter().max().unwrap() } else { *subset.iter().min().unwrap() };
        let mut cur = Arc::new(q[start].clone());
        let n = self.algebras.len();
        let mut vmaps: Vec<Option<Vec<usize>>> = vec![None; n];
        let mut amaps: Vec<Option<Vec<usize>>> = vec![None; n];
        vmaps[start] = Some((0..q[start].num_vertices()).collect());
        amaps[start] = Some((0..q[start].num_arrows()).collect());
        let mut done = vec![false; self.edges.len()];
        for _ in 0..edges.len() {
            let pick = |k: &usize| !done[*k] && (vmaps[self.edges[*k].from].is_some() != vmaps[self.edges[*k].to].is_some());
            let k = if reverse { edges.iter().rev().copied().find(|k| pick(k)) } else { edges.iter().copied().find(|k| pick(k)) }
                .ok_or_else(|| Error::InvalidSystem("subgraph is not connected".into()))?;
            done[k] = true;
            let e = &self.edges[k];
            let (id, new_t, new_part) = if vmaps[e.from].is_some() {
                // component on the I side: B = component, A = Λ_to
                let iv = vmaps[e.from].as_ref().unwrap()[e.i_vertex];
                let g = glue(&cur, iv, &q[e.to], e.p_vertex)?;
                (g.identified, e.to, PART_A)
            } else {
                let pv = vmaps[e.to].as_ref().unwrap()[e.p_vertex];
                let g = glue(&q[e.from], e.i_vertex, &cur, pv)?;
                (g.identified, e.from, PART_B)
            };
            let comp_part = 1 - new_part;
            for t in 0..n {
                if let Some(m) = vmaps[t].as_mut() {
                    for x in m.iter_mut() {
                        *x = id.vmaps[comp_part][*x];
                    }
                }
                if let Some(m) = amaps[t].as_mut() {
                    for x in m.iter_mut() {
                        *x = id.amaps[comp_part][*x];
                    }
                }
            }
            vmaps[new_t] = Some(id.vmaps[new_part].clone());
            amaps[new_t] = Some(id.amaps[new_part].clone());
            cur = id.algebra;
        }
        // Canonical names: least qualified name among the preimages.
        let mut vn: Vec<Option<String>> = vec![None; cur.num_vertices()];
        let mut an: Vec<Option<String>> = vec![None; cur.num_arrows()];
        for t in 0..n {
            if let (Some(vm), Some(am)) = (&vmaps[t], &amaps[t]) {
                for (v, &w) in vm.iter().enumerate() {
                    let name = q[t].vertex_name(v).to_string();
                    if vn[w].as_ref().is_none_or(|x| name < *x) {
                        vn[w] = Some(name);
                    }
                }
                for (a, &b) in am.iter().enumerate() {
                    let name = q[t].arrows()[a].id.clone();
                    if an[b].as_ref().is_none_or(|x| name < *x) {
                        an[b] = Some(name);
                    }
                }
            }
        }
        let vertices: Vec<String> = vn.into_iter().map(|x| x.unwrap()).collect();
        let arrows: Vec<Arrow> = cur
            .arrows()
            .iter()
            .zip(an)
            .map(|(a, name)| Arrow { id: name.unwrap(), source: a.source, target: a.target })
            .collect();
        let alg = Algebra::from_parts(vertices, arrows, cur.relations().to_vec(), DEFAULT_PATH_CAP)?;
        let empty = Vec::new;
        Ok(SystemGlued {
            algebra: Arc::new(alg),
            vmaps: vmaps.into_iter().map(|m| m.unwrap_or_else(empty)).collect(),
            amaps: amaps.into_iter().map(|m| m.unwrap_or_else(empty)).collect(),
            warnings: Vec::new(),
        })
    }
}

pub const ORDER_CHECK_EDGES: usize = 8;

/// Λ_H for a connected subset H of tree vertices (all vertices when `subset` is None).
pub fn glue_system(sys: &GluingSystemSpec, subset: Option<&[usize]>) -> Result<SystemGlued> {
    let warnings = sys.validate()?;
    let all: Vec<usize> = (0..sys.algebras.len()).collect();
    let h = subset.unwrap_or(&all);
    if h.is_empty() {
        return Err(Error::InvalidSystem("empty subgraph".into()));
    }
    let mut out = sys.fold(h, false)?;
    if sys.edges.len() <= ORDER_CHECK_EDGES {
        let rev = sys.fold(h, true)?;
        if !structurally_equal(&out.algebra, &rev.algebra) {
            return Err(Error::InvalidSystem("gluing depends on the edge order".into()));
        }
    }
    out.warnings = warnings;
    Ok(out)
}

/// Both folding orders, for order-independence checks.
pub fn glue_system_both_orders(sys: &GluingSystemSpec) -> Result<(Arc<Algebra>, Arc<Algebra>)> {
    sys.validate()?;
    let all: Vec<usize> = (0..sys.algebras.len()).collect();
    Ok((sys.fold(&all, false)?.algebra, sys.fold(&all, true)?.algebra))
}

#[derive(Clone, Debug)]
pub struct FracturedSystemGlued {
    pub glued: SystemGlued,
    pub fracturing: Fracturing,
    pub candidate: Vec<Rep>,
    pub complete: bool,
    pub incomplete_reasons: Vec<String>,
}

/// Glue fracturings and push forward the per-vertex subcategories `mods`.
pub fn glue_fractured_system(sys: &GluingSystemSpec, mods: &[Vec<Rep>]) -> Result<FracturedSystemGlued> {
    let glued = glue_system(sys, None)?;
    let frs: Vec<Fracturing> = match &sys.fracturings {
        Some(f) => f.clone(),
        None => sys.algebras.iter().map(|a| Fracturing::trivial(a)).collect(),
    };
    let mut reasons = Vec::new();
    for (k, e) in sys.edges.iter().enumerate() {
        let (a, b) = (&sys.algebras[e.to], &sys.algebras[e.from]);
        let g = glue(b, e.i_vertex, a, e.p_vertex)?;
        check_fracture_compatibility(a, &frs[e.to], b, &frs[e.from], &g)
            .map_err(|x| Error::Hypothesis(format!("arrow {}: {}", k, x)))?;
    }
    for (v, alg) in sys.algebras.iter().enumerate() {
        for w in maximal_abutments(alg, Side::Left) {
            let proj = frs[v].fracture(&w).is_none_or(|t| t.non_projective().is_empty());
            let covered = sys.edges.iter().filter(|e| e.to == v).any(|e| {
                abutment_at(alg, Side::Left, e.p_vertex).ok().and_then(|p| maximal_above(alg, &p).ok()).is_some_and(|x| x.anchor == w.anchor)
            });
            if !proj && !covered {
                reasons.push(format!("(iv) left fracture at {}:{} is not projective", sys.names[v], alg.vertex_name(w.anchor)));
            }
        }
        for j in maximal_abutments(alg, Side::Right) {
            let inj = frs[v].fracture(&j).is_none_or(|t| t.non_injective().is_empty());
            let covered = sys.edges.iter().filter(|e| e.from == v).any(|e| {
                abutment_at(alg, Side::Right, e.i_vertex).ok().and_then(|i| maximal_above(alg, &i).ok()).is_some_and(|x| x.anchor == j.anchor)
            });
            if !inj && !covered {
                reasons.push(format!("(iii) right fracture at {}:{} is not injective", sys.names[v], alg.vertex_name(j.anchor)));
            }
        }
    }
    // Fracturing of Λ_G: surviving maximal abutments keep their fracture.
    let lam = &glued.algebra;
    let mut fracturing = Fracturing { left: BTreeMap::new(), right: BTreeMap::new() };
    for side in [Side::Left, Side::Right] {
        for wl in maximal_abutments(lam, side) {
            let mut t = None;
            for (v, alg) in sys.algebras.iter().enumerate() {
                for w in maximal_abutments(alg, side) {
                    if glued.transport(v, &w).is_some_and(|x| x.anchor == wl.anchor) {
                        t = frs[v].fracture(&w).cloned();
                    }
                }
            }
            let t = t.unwrap_or_else(|| match side {
                Side::Left => crate::abutment::IntervalSet::projective(wl.height()),
                Side::Right => crate::abutment::IntervalSet::injective(wl.height()),
            });
            match side {
                Side::Left => fracturing.left.insert(wl.anchor, t),
                Side::Right => fracturing.right.insert(wl.anchor, t),
            };
        }
    }
    let mut candidate: Vec<Rep> = Vec::new();
    for (v, ms) in mods.iter().enumerate() {
        for m in ms {
            let x = glued.push_forward(v, m);
            if !candidate.iter().any(|y| crate::decompose::is_isomorphic(y, &x)) {
                candidate.push(x);
            }
        }
    }
    Ok(FracturedSystemGlued { glued, fracturing, candidate, complete: reasons.is_empty(), incomplete_reasons: reasons })
}

/// Parse the gluing-system file format; `load` resolves algebra references that are strings.
pub fn system_from_json(v: &Value, load: &dyn Fn(&str) -> Result<Algebra>) -> Result<GluingSystemSpec> {
    let perr = |m: &str| Error::Parse(m.to_string());
    let tree = v.get("tree").ok_or_else(|| perr("missing tree"))?;
    let names: Vec<String> = tree
        .get("vertices")
        .and_then(|x| x.as_array())
        .ok_or_else(|| perr("tree.vertices must be a list"))?
        .iter()
        .map(|x| x.as_str().map(str::to_string).ok_or_else(|| perr("tree vertex must be a string")))
        .collect::<Result<_>>()?;
    let algs = v.get("algebras").and_then(|x| x.as_object()).ok_or_else(|| perr("algebras must be an object"))?;
    let algebras: Vec<Arc<Algebra>> = names
        .iter()
        .map(|n| {
            let spec = algs.get(n).ok_or_else(|| perr(&format!("no algebra for {}", n)))?;
            let a = match spec {
                Value::String(s) => load(s)?,
                other => crate::algebra::algebra_from_json(other)?,
            };
            Ok(Arc::new(a))
        })
        .collect::<Result<_>>()?;
    let idx = |n: &str| names.iter().position(|x| x == n).ok_or_else(|| perr(&format!("unknown tree vertex {}", n)));
    let mut edges = Vec::new();
    for e in tree.get("arrows").and_then(|x| x.as_array()).ok_or_else(|| perr("tree.arrows must be a list"))? {
        let get = |k: &str| e.get(k).and_then(|x| x.as_str()).ok_or_else(|| perr(&format!("arrow needs {}", k)));
        let from = idx(get("from")?)?;
        let to = idx(get("to")?)?;
        edges.push(SystemEdge {
            from,
            to,
            i_vertex: algebras[from].vertex(get("I")?)?,
            p_vertex: algebras[to].vertex(get("P")?)?,
        });
    }
    let fracturings = match v.get("fracturings").and_then(|x| x.as_object()) {
        None => None,
        Some(obj) => Some(
            names
                .iter()
                .zip(&algebras)
                .map(|(n, a)| match obj.get(n) {
                    Some(f) => Fracturing::from_json(a, f),
                    None => Ok(Fracturing::trivial(a)),
                })
                .collect::<Result<_>>()?,
        ),
    };
    Ok(GluingSystemSpec { names, algebras, edges, fracturings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{nakayama, KupischSeries, KupischShape};
    use crate::ar::ar_quiver;

    fn naka(d: &[usize]) -> Algebra {
        nakayama(&KupischSeries::new(d.to_vec(), KupischShape::Acyclic).unwrap()).unwrap()
    }

    #[test]
    fn two_rad_square_lines() {
        let b = naka(&[2, 2, 1]);
        let a = naka(&[2, 2, 1]);
        // I_B(2) has tail 1→2, P_A(2) has tail 2→3
        let g = glue(&b, 1, &a, 1).unwrap();
        let lam = &g.identified.algebra;
        assert_eq!(lam.num_vertices(), 4);
        let k = crate::algebra::kupisch_of(lam).unwrap();
        assert_eq!(k.entries(), &[2, 2, 2, 1]);
        let ara = Arc::new(a);
        let arb = Arc::new(b);
        let ga = ar_quiver(&ara).unwrap();
        let gb = ar_quiver(&arb).unwrap();
        let glued = glue_ar(&ga, &gb, &g).unwrap();
        assert_eq!(glued.len(), 7);
        let direct = ar_quiver(lam).unwrap();
        assert!(glued.matches(&direct));
    }

    #[test]
    fn trivial_gluing_returns_b() {
        let b = naka(&[3, 2, 2, 1]);
        let a = crate::abutment::linear_a(3);
        let g = glue(&b, 2, &a, 0).unwrap();
        assert!(g.trivial);
        assert!(equal_up_to_renaming(&g.identified.algebra, &b));
    }

    #[test]
    fn height_mismatch() {
        let b = naka(&[2, 2, 1]);
        let a = naka(&[2, 2, 1]);
        assert!(matches!(glue(&b, 1, &a, 2), Err(Error::HeightMismatch(1, 2))));
    }
}
