//! Abutments, foundations, fractures over linear A_h and fracturings.

use crate::algebra::{nakayama, Algebra, KupischSeries, KupischShape};
use crate::ar::ARData;
use crate::error::{Error, Result};
use crate::rep::Rep;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// A left abutment P(anchor) with tail `anchor → … → sink`, or a right abutment
/// I(anchor) with tail `source → … → anchor`. Tails are listed along the arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Abutment {
    pub side: Side,
    pub anchor: usize,
    pub tail: Vec<usize>,
    pub maximal: bool,
}

impl Abutment {
    pub fn height(&self) -> usize {
        self.tail.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.tail.contains(&v)
    }

    /// Position of `v` along the tail, starting at 1.
    pub fn coordinate(&self, v: usize) -> Option<usize> {
        self.tail.iter().position(|&t| t == v).map(|i| i + 1)
    }

    /// P ≤ W (resp. I ≤ J) iff the support is contained.
    pub fn le(&self, other: &Abutment) -> bool {
        self.side == other.side && self.tail.iter().all(|v| other.tail.contains(v))
    }

    /// Vertices of `alg` along the tail at positions a..=b.
    pub fn interval_support(&self, a: usize, b: usize) -> &[usize] {
        &self.tail[a - 1..b]
    }

    pub fn module(&self, alg: &Arc<Algebra>) -> Rep {
        match self.side {
            Side::Left => Rep::projective(alg, self.anchor),
            Side::Right => Rep::injective(alg, self.anchor),
        }
    }

    pub fn describe(&self, alg: &Algebra) -> String {
        let k = if self.side == Side::Left { "P" } else { "I" };
        format!("{}({})", k, alg.vertex_name(self.anchor))
    }
}

fn left_tail(alg: &Algebra, v: usize) -> Option<Vec<usize>> {
    let mut tail = vec![v];
    let mut path = Vec::new();
    let mut cur = v;
    loop {
        let out = alg.out_arrows(cur);
        match out.len() {
            0 => return Some(tail),
            1 => {
                let a = out[0];
                let w = alg.arrows()[a].target;
                if alg.in_arrows(w).len() != 1 || tail.contains(&w) {
                    return None;
                }
                path.push(a);
                if !alg.survives(&path) {
                    return None;
                }
                tail.push(w);
                cur = w;
            }
            _ => return None,
        }
    }
}

/// All abutments of one side, with maximality flags.
pub fn abutments(alg: &Algebra, side: Side) -> Vec<Abutment> {
    let target: Arc<Algebra>;
    let work: &Algebra = match side {
        Side::Left => alg,
        Side::Right => {
            target = alg.opposite();
            &target
        }
    };
    let mut out: Vec<Abutment> = (0..work.num_vertices())
        .filter_map(|v| {
            left_tail(work, v).map(|mut tail| {
                if side == Side::Right {
                    tail.reverse();
                }
                Abutment { side, anchor: v, tail, maximal: false }
            })
        })
        .collect();
    let snapshot = out.clone();
    for ab in out.iter_mut() {
        ab.maximal = !snapshot.iter().any(|o| o.height() > ab.height() && ab.le(o));
    }
    out
}

pub fn maximal_abutments(alg: &Algebra, side: Side) -> Vec<Abutment> {
    abutments(alg, side).into_iter().filter(|a| a.maximal).collect()
}

pub fn abutment_at(alg: &Algebra, side: Side, v: usize) -> Result<Abutment> {
    abutments(alg, side)
        .into_iter()
        .find(|a| a.anchor == v)
        .ok_or_else(|| {
            let k = if side == Side::Left { "P" } else { "I" };
            Error::InvalidAbutment(format!("{}({}) is not an abutment", k, alg.vertex_name(v)))
        })
}

/// The unique maximal abutment of the same side above `ab`.
pub fn maximal_above(alg: &Algebra, ab: &Abutment) -> Result<Abutment> {
    let cands: Vec<Abutment> = maximal_abutments(alg, ab.side).into_iter().filter(|w| ab.le(w)).collect();
    match cands.len() {
        1 => Ok(cands.into_iter().next().unwrap()),
        0 => Err(Error::InvalidAbutment("no maximal abutment above".into())),
        _ => Err(Error::InvalidAbutment("several maximal abutments above".into())),
    }
}

pub fn independent(abs: &[Abutment]) -> Result<bool> {
    if abs.windows(2).any(|w| w[0].side != w[1].side) {
        return Err(Error::InvalidArgument("abutments of mixed sides".into()));
    }
    for (i, a) in abs.iter().enumerate() {
        for b in &abs[i + 1..] {
            if a.tail.iter().any(|v| b.tail.contains(v)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Interval modules [a,b] of linear A_h (arrows i → i+1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalSet {
    pub h: usize,
    pub intervals: Vec<(usize, usize)>,
}

pub fn hom_interval(x: (usize, usize), y: (usize, usize)) -> usize {
    let ((a, b), (c, d)) = (x, y);
    usize::from(c <= a && a <= d && d <= b)
}

/// τ[a,b] = [a+1,b+1], zero for the projectives [a,h].
pub fn tau_interval(h: usize, x: (usize, usize)) -> Option<(usize, usize)> {
    (x.1 < h).then_some((x.0 + 1, x.1 + 1))
}

/// dim Ext¹([a,b],[c,d]) over kA_h by the AR formula D Hom(Y, τX).
pub fn ext1_interval(h: usize, x: (usize, usize), y: (usize, usize)) -> usize {
    tau_interval(h, x).map_or(0, |t| hom_interval(y, t))
}

impl IntervalSet {
    pub fn new(h: usize, mut intervals: Vec<(usize, usize)>) -> Result<IntervalSet> {
        for &(a, b) in &intervals {
            if a < 1 || a > b || b > h {
                return Err(Error::InvalidFracture(format!("interval ({},{}) outside height {}", a, b, h)));
            }
        }
        intervals.sort();
        Ok(IntervalSet { h, intervals })
    }

    pub fn projective(h: usize) -> IntervalSet {
        IntervalSet { h, intervals: (1..=h).map(|i| (i, h)).collect() }
    }

    pub fn injective(h: usize) -> IntervalSet {
        IntervalSet { h, intervals: (1..=h).map(|i| (1, i)).collect() }
    }

    pub fn is_tilting(&self) -> bool {
        let mut d = self.intervals.clone();
        d.dedup();
        d.len() == self.h
            && d.len() == self.intervals.len()
            && d.iter().all(|&x| d.iter().all(|&y| ext1_interval(self.h, x, y) == 0))
    }

    pub fn reflect(&self) -> IntervalSet {
        let h = self.h;
        let mut iv: Vec<_> = self.intervals.iter().map(|&(a, b)| (h + 1 - b, h + 1 - a)).collect();
        iv.sort();
        IntervalSet { h, intervals: iv }
    }

    pub fn is_mirrored(&self) -> bool {
        self.reflect() == *self
    }

    /// Intervals other than the projectives [a,h].
    pub fn non_projective(&self) -> Vec<(usize, usize)> {
        self.intervals.iter().copied().filter(|x| x.1 != self.h).collect()
    }

    pub fn non_injective(&self) -> Vec<(usize, usize)> {
        self.intervals.iter().copied().filter(|x| x.0 != 1).collect()
    }

    pub fn to_json(&self) -> Value {
        json!(self.intervals.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>())
    }
}

pub fn catalan(h: usize) -> u64 {
    let mut c = 1u64;
    for i in 0..h as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

/// All tilting modules over kA_h, by backtracking over intervals.
pub fn tilting_modules(h: usize) -> Vec<IntervalSet> {
    let all: Vec<(usize, usize)> = (1..=h).flat_map(|a| (a..=h).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn go(h: usize, all: &[(usize, usize)], start: usize, chosen: &mut Vec<(usize, usize)>, out: &mut Vec<IntervalSet>) {
        if chosen.len() == h {
            out.push(IntervalSet { h, intervals: chosen.clone() });
            return;
        }
        if all.len() - start < h - chosen.len() {
            return;
        }
        for i in start..all.len() {
            let x = all[i];
            if chosen.iter().all(|&y| ext1_interval(h, x, y) == 0 && ext1_interval(h, y, x) == 0) {
                chosen.push(x);
                go(h, all, i + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    go(h, &all, 0, &mut chosen, &mut out);
    out
}

/// kA_h with vertices "1".."h" and no relations.
pub fn linear_a(h: usize) -> Algebra {
    let k = KupischSeries::new((1..=h).rev().collect(), KupischShape::Acyclic).expect("valid series");
    nakayama(&k).expect("linear quiver")
}

pub fn interval_rep(alg: &Arc<Algebra>, x: (usize, usize)) -> Rep {
    let sup: Vec<usize> = (x.0 - 1..x.1).collect();
    Rep::thin(alg, &sup).expect("interval module")
}

/// Keep the intervals inside the foundation of `p ≤ w` and re-coordinatize.
pub fn restrict_fracture(t: &IntervalSet, w: &Abutment, p: &Abutment) -> Result<IntervalSet> {
    if !p.le(w) {
        return Err(Error::InvalidAbutment("restriction needs P ≤ W".into()));
    }
    let h = p.height();
    let k = w.coordinate(p.anchor).unwrap();
    match w.side {
        Side::Left => {
            let iv = t.intervals.iter().filter(|x| x.0 >= k).map(|&(a, b)| (a + 1 - k, b + 1 - k)).collect();
            IntervalSet::new(h, iv)
        }
        Side::Right => {
            let iv = t.intervals.iter().copied().filter(|x| x.1 <= k).collect();
            IntervalSet::new(h, iv)
        }
    }
}

/// Intervals of an abutment tail, realized as modules over the ambient algebra.
pub fn interval_module(alg: &Arc<Algebra>, ab: &Abutment, x: (usize, usize)) -> Rep {
    Rep::thin(alg, ab.interval_support(x.0, x.1)).expect("tail intervals carry no relation")
}

/// The h(h+1)/2 foundation nodes in interval coordinates.
pub fn foundation(ar: &ARData, ab: &Abutment) -> Result<Vec<((usize, usize), usize)>> {
    let alg = &ar.algebra;
    let h = ab.height();
    let mut out = Vec::new();
    for a in 1..=h {
        for b in a..=h {
            let m = interval_module(alg, ab, (a, b));
            let idx = ar
                .find(&m)
                .ok_or_else(|| Error::InvalidAbutment(format!("foundation module [{},{}] missing", a, b)))?;
            out.push(((a, b), idx));
        }
    }
    // Translation inside the triangle agrees with kA_h.
    let pos: BTreeMap<(usize, usize), usize> = out.iter().copied().collect();
    for (&(a, b), &idx) in &pos {
        let (expect, got) = match ab.side {
            Side::Left if a >= 2 => (pos.get(&(a - 1, b - 1)), ar.tau_inv[idx].as_ref()),
            Side::Right if b < h => (pos.get(&(a + 1, b + 1)), ar.tau[idx].as_ref()),
            _ => continue,
        };
        if expect != got {
            return Err(Error::InvalidAbutment(format!("foundation translation breaks at [{},{}]", a, b)));
        }
    }
    Ok(out)
}

/// One fracture per maximal abutment, keyed by the anchor vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fracturing {
    pub left: BTreeMap<usize, IntervalSet>,
    pub right: BTreeMap<usize, IntervalSet>,
}

impl Fracturing {
    /// (Λ, DΛ): projective fractures on the left, injective on the right.
    pub fn trivial(alg: &Algebra) -> Fracturing {
        let left = maximal_abutments(alg, Side::Left).iter().map(|w| (w.anchor, IntervalSet::projective(w.height()))).collect();
        let right = maximal_abutments(alg, Side::Right).iter().map(|j| (j.anchor, IntervalSet::injective(j.height()))).collect();
        Fracturing { left, right }
    }

    /// Unlisted maximal abutments receive the trivial fracture.
    pub fn from_json(alg: &Algebra, v: &Value) -> Result<Fracturing> {
        let mut fr = Fracturing::trivial(alg);
        let maxl = maximal_abutments(alg, Side::Left);
        let maxr = maximal_abutments(alg, Side::Right);
        for (key, side, maxs) in [("left", Side::Left, &maxl), ("right", Side::Right, &maxr)] {
            let Some(obj) = v.get(key) else { continue };
            let obj = obj.as_object().ok_or_else(|| Error::Parse(format!("{} must be an object", key)))?;
            for (name, ivs) in obj {
                let anchor = alg.vertex(name)?;
                let w = maxs.iter().find(|w| w.anchor == anchor).ok_or_else(|| {
                    Error::InvalidFracture(format!("{} is not the anchor of a maximal {} abutment", name, key))
                })?;
                let arr = ivs.as_array().ok_or_else(|| Error::Parse("fracture must be a list".into()))?;
                let mut iv = Vec::new();
                for p in arr {
                    let pair = p.as_array().filter(|x| x.len() == 2).ok_or_else(|| Error::Parse("interval must be [a,b]".into()))?;
                    let a = pair[0].as_u64().ok_or_else(|| Error::Parse("interval bound".into()))? as usize;
                    let b = pair[1].as_u64().ok_or_else(|| Error::Parse("interval bound".into()))? as usize;
                    iv.push((a, b));
                }
                let t = IntervalSet::new(w.height(), iv)?;
                if !t.is_tilting() {
                    return Err(Error::InvalidFracture(format!("fracture at {} is not tilting", name)));
                }
                match side {
                    Side::Left => fr.left.insert(anchor, t),
                    Side::Right => fr.right.insert(anchor, t),
                };
            }
        }
        Ok(fr)
    }

    pub fn to_json(&self, alg: &Algebra) -> Value {
        let side = |m: &BTreeMap<usize, IntervalSet>| {
            m.iter().map(|(v, t)| (alg.vertex_name(*v).to_string(), t.to_json())).collect::<serde_json::Map<_, _>>()
        };
        json!({"left": side(&self.left), "right": side(&self.right)})
    }

    pub fn validate(&self, alg: &Algebra) -> Result<()> {
        for (side, map) in [(Side::Left, &self.left), (Side::Right, &self.right)] {
            let maxs = maximal_abutments(alg, side);
            if maxs.len() != map.len() {
                return Err(Error::InvalidFracture("fracturing does not match the maximal abutments".into()));
            }
            for w in &maxs {
                let t = map.get(&w.anchor).ok_or_else(|| Error::InvalidFracture("missing fracture".into()))?;
                if t.h != w.height() || !t.is_tilting() {
                    return Err(Error::InvalidFracture(format!("bad fracture at {}", alg.vertex_name(w.anchor))));
                }
            }
        }
        Ok(())
    }

    pub fn fracture(&self, ab: &Abutment) -> Option<&IntervalSet> {
        match ab.side {
            Side::Left => self.left.get(&ab.anchor),
            Side::Right => self.right.get(&ab.anchor),
        }
    }

    pub fn is_trivial(&self, alg: &Algebra) -> bool {
        *self == Fracturing::trivial(alg)
    }

    /// Indecomposables of 𝒫^L: non-abutment projectives together with the fracture summands.
    pub fn p_left(&self, alg: &Arc<Algebra>) -> Vec<Rep> {
        self.side_modules(alg, Side::Left)
    }

    pub fn i_right(&self, alg: &Arc<Algebra>) -> Vec<Rep> {
        self.side_modules(alg, Side::Right)
    }

    fn side_modules(&self, alg: &Arc<Algebra>, side: Side) -> Vec<Rep> {
        let abs = abutments(alg, side);
        let mut out: Vec<Rep> = (0..alg.num_vertices())
            .filter(|v| !abs.iter().any(|a| a.anchor == *v))
            .map(|v| match side {
                Side::Left => Rep::projective(alg, v),
                Side::Right => Rep::injective(alg, v),
            })
            .collect();
        let map = if side == Side::Left { &self.left } else { &self.right };
        for w in abs.iter().filter(|a| a.maximal) {
            if let Some(t) = map.get(&w.anchor) {
                out.extend(t.intervals.iter().map(|&x| interval_module(alg, w, x)));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport {
    pub ok: bool,
    pub failures: Vec<String>,
}

/// Conditions (i)-(v) for (P, I) against the fractured pair (W, J).
pub fn compatible_pair(alg: &Algebra, fr: &Fracturing, w: &Abutment, j: &Abutment, p: &Abutment, i: &Abutment) -> PairReport {
    let mut failures = Vec::new();
    if !p.le(w) {
        failures.push("(i) P is not below W".to_string());
    }
    if !i.le(j) {
        failures.push("(iii) I is not below J".to_string());
    }
    let tw = fr.fracture(w);
    let tj = fr.fracture(j);
    if tw.is_none() || tj.is_none() {
        failures.push("W or J carries no fracture".to_string());
    }
    if failures.is_empty() {
        let (tw, tj) = (tw.unwrap(), tj.unwrap());
        let kp = w.coordinate(p.anchor).unwrap();
        if tw.non_projective().iter().any(|x| x.0 < kp) {
            failures.push("(ii) non-projective part of T^(W) leaves the foundation of P".to_string());
        }
        let ki = j.coordinate(i.anchor).unwrap();
        if tj.non_injective().iter().any(|x| x.1 > ki) {
            failures.push("(iv) non-injective part of T^(J) leaves the foundation of I".to_string());
        }
        if p.height() != i.height() {
            failures.push(format!("(v) heights differ: {} vs {}", p.height(), i.height()));
        } else {
            let rp = restrict_fracture(tw, w, p);
            let ri = restrict_fracture(tj, j, i);
            if rp.is_err() || ri.is_err() || rp != ri {
                failures.push("(v) restricted fractures differ".to_string());
            }
        }
    }
    let _ = alg;
    PairReport { ok: failures.is_empty(), failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_algebra;

    #[test]
    fn rad_square_line_abutments() {
        let a = parse_algebra(
            r#"{"vertices":["1","2","3"],"arrows":[{"id":"a","from":"1","to":"2"},{"id":"b","from":"2","to":"3"}],"relations":[["a","b"]]}"#,
        )
        .unwrap();
        let l = abutments(&a, Side::Left);
        assert_eq!(l.len(), 2);
        assert_eq!((l[0].anchor, l[0].height(), l[0].maximal), (1, 2, true));
        assert_eq!((l[1].anchor, l[1].height(), l[1].maximal), (2, 1, false));
        let r = abutments(&a, Side::Right);
        assert_eq!((r[0].anchor, r[0].height(), r[0].maximal), (0, 1, false));
        assert_eq!((r[1].anchor, r[1].tail.clone()), (1, vec![0, 1]));
    }

    #[test]
    fn tilting_counts() {
        for h in 1..=6 {
            assert_eq!(tilting_modules(h).len() as u64, catalan(h));
        }
        assert_eq!(catalan(5), 42);
    }

    #[test]
    fn restriction() {
        let w = Abutment { side: Side::Left, anchor: 0, tail: vec![0, 1, 2], maximal: true };
        let p = Abutment { side: Side::Left, anchor: 1, tail: vec![1, 2], maximal: false };
        let t = IntervalSet::projective(3);
        assert_eq!(restrict_fracture(&t, &w, &p).unwrap().intervals, vec![(1, 2), (2, 2)]);
        assert_eq!(restrict_fracture(&t, &w, &w).unwrap(), t);
    }

    #[test]
    fn mirror() {
        let t1 = IntervalSet::new(5, vec![(5, 5), (4, 5), (1, 5), (1, 2), (1, 1)]).unwrap();
        let t2 = IntervalSet::new(5, vec![(3, 3), (3, 4), (2, 4), (1, 4), (1, 5)]).unwrap();
        assert!(t1.is_tilting() && t2.is_tilting());
        assert!(t1.is_mirrored());
        assert!(!t2.is_mirrored());
    }
}
