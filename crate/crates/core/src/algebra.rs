//! Bound quiver algebras kQ/R with monomial relations.

use crate::error::{Error, Result};
use serde_json::{json, Value};
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

pub const DEFAULT_PATH_CAP: usize = 64;
const MAX_BASIS: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A path given by its start vertex and arrow sequence (indices). The trivial
/// path at `start` has no arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Bound quiver presentation together with its basis of surviving paths.
#[derive(Debug)]
pub struct Algebra {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Vec<usize>>,
    vindex: HashMap<String, usize>,
    aindex: HashMap<String, usize>,
    out_arrows: Vec<Vec<usize>>,
    in_arrows: Vec<Vec<usize>>,
    paths: Vec<Path>,
    path_index: HashMap<(usize, Vec<usize>), usize>,
    from: Vec<Vec<usize>>,
    to: Vec<Vec<usize>>,
    op: OnceLock<Arc<Algebra>>,
}

impl Clone for Algebra {
    fn clone(&self) -> Algebra {
        Algebra {
            vertices: self.vertices.clone(),
            arrows: self.arrows.clone(),
            relations: self.relations.clone(),
            vindex: self.vindex.clone(),
            aindex: self.aindex.clone(),
            out_arrows: self.out_arrows.clone(),
            in_arrows: self.in_arrows.clone(),
            paths: self.paths.clone(),
            path_index: self.path_index.clone(),
            from: self.from.clone(),
            to: self.to.clone(),
            op: OnceLock::new(),
        }
    }
}

impl PartialEq for Algebra {
    /// Structural equality: same vertex ids, same arrows, same relation set.
    fn eq(&self, other: &Algebra) -> bool {
        if self.vertices != other.vertices || self.arrows.len() != other.arrows.len() {
            return false;
        }
        let arrows = |a: &Algebra| -> BTreeSet<(String, String, String)> {
            a.arrows
                .iter()
                .map(|x| (x.id.clone(), a.vertices[x.source].clone(), a.vertices[x.target].clone()))
                .collect()
        };
        arrows(self) == arrows(other) && self.relation_names() == other.relation_names()
    }
}

impl Eq for Algebra {}

fn contains_subpath(hay: &[usize], needle: &[usize]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

impl Algebra {
    pub fn new(
        vertices: Vec<String>,
        arrows: Vec<(String, String, String)>,
        relations: Vec<Vec<String>>,
    ) -> Result<Algebra> {
        let mut vindex = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vindex.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex id {v:?}")));
            }
        }
        let mut arr = Vec::new();
        let mut aindex = HashMap::new();
        for (id, s, t) in arrows {
            let source = *vindex
                .get(&s)
                .ok_or_else(|| Error::InvalidQuiver(format!("arrow {id:?} has unknown source {s:?}")))?;
            let target = *vindex
                .get(&t)
                .ok_or_else(|| Error::InvalidQuiver(format!("arrow {id:?} has unknown target {t:?}")))?;
            if aindex.insert(id.clone(), arr.len()).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate arrow id {id:?}")));
            }
            arr.push(Arrow { id, source, target });
        }
        let mut rels = Vec::new();
        for r in relations {
            let mut idx = Vec::new();
            for a in &r {
                idx.push(
                    *aindex
                        .get(a)
                        .ok_or_else(|| Error::InvalidRelation(format!("unknown arrow {a:?} in {r:?}")))?,
                );
            }
            rels.push(idx);
        }
        Algebra::from_parts(vertices, arr, rels, DEFAULT_PATH_CAP)
    }

    /// Build from index data. Relations are validated and reduced.
    pub fn from_parts(
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        relations: Vec<Vec<usize>>,
        path_cap: usize,
    ) -> Result<Algebra> {
        let n = vertices.len();
        let mut vindex = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vindex.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex id {v:?}")));
            }
        }
        let mut aindex = HashMap::new();
        let mut out_arrows = vec![Vec::new(); n];
        let mut in_arrows = vec![Vec::new(); n];
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= n || a.target >= n {
                return Err(Error::InvalidQuiver(format!("arrow {:?} has a dangling endpoint", a.id)));
            }
            if aindex.insert(a.id.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate arrow id {:?}", a.id)));
            }
            out_arrows[a.source].push(i);
            in_arrows[a.target].push(i);
        }
        for r in &relations {
            let names: Vec<&str> = r.iter().map(|&a| arrows[a].id.as_str()).collect();
            if r.len() < 2 {
                return Err(Error::InvalidRelation(format!("relation {names:?} has length < 2")));
            }
            for w in r.windows(2) {
                if arrows[w[0]].target != arrows[w[1]].source {
                    return Err(Error::InvalidRelation(format!("relation {names:?} is not a path")));
                }
            }
        }
        let relations = reduce_relations(relations);
        let mut alg = Algebra {
            vertices,
            arrows,
            relations,
            vindex,
            aindex,
            out_arrows,
            in_arrows,
            paths: Vec::new(),
            path_index: HashMap::new(),
            from: vec![Vec::new(); n],
            to: vec![Vec::new(); n],
            op: OnceLock::new(),
        };
        alg.build_basis(path_cap)?;
        Ok(alg)
    }

    fn build_basis(&mut self, cap: usize) -> Result<()> {
        let mut by_last: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, r) in self.relations.iter().enumerate() {
            by_last.entry(*r.last().unwrap()).or_default().push(i);
        }
        let mut queue = VecDeque::new();
        for v in 0..self.vertices.len() {
            queue.push_back(Path { start: v, end: v, arrows: Vec::new() });
        }
        while let Some(p) = queue.pop_front() {
            if p.arrows.len() >= cap {
                return Err(Error::NotAdmissible(self.describe_cycle(&p)));
            }
            if self.paths.len() >= MAX_BASIS {
                return Err(Error::NotAdmissible("basis exceeds size limit".into()));
            }
            let idx = self.paths.len();
            self.path_index.insert((p.start, p.arrows.clone()), idx);
            self.from[p.start].push(idx);
            self.to[p.end].push(idx);
            for &a in &self.out_arrows[p.end] {
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                let killed = by_last
                    .get(&a)
                    .is_some_and(|rs| rs.iter().any(|&r| arrows.ends_with(&self.relations[r])));
                if !killed {
                    queue.push_back(Path { start: p.start, end: self.arrows[a].target, arrows });
                }
            }
            self.paths.push(p);
        }
        Ok(())
    }

    fn describe_cycle(&self, p: &Path) -> String {
        let mut seen = HashMap::new();
        let mut v = p.start;
        seen.insert(v, 0usize);
        for (k, &a) in p.arrows.iter().enumerate() {
            v = self.arrows[a].target;
            if let Some(&j) = seen.get(&v) {
                let cyc: Vec<&str> = p.arrows[j..=k].iter().map(|&x| self.arrows[x].id.as_str()).collect();
                return cyc.join("·");
            }
            seen.insert(v, k + 1);
        }
        "unbounded path".into()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn relations(&self) -> &[Vec<usize>] {
        &self.relations
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vindex
            .get(name)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("unknown vertex {name:?}")))
    }

    pub fn arrow(&self, name: &str) -> Result<usize> {
        self.aindex
            .get(name)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("unknown arrow {name:?}")))
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn out_arrows(&self, v: usize) -> &[usize] {
        &self.out_arrows[v]
    }

    pub fn in_arrows(&self, v: usize) -> &[usize] {
        &self.in_arrows[v]
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.out_arrows[v].is_empty()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.in_arrows[v].is_empty()
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| self.is_source(v)).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| self.is_sink(v)).collect()
    }

    /// All surviving paths (the basis of the algebra).
    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    /// Surviving paths starting at `v`.
    pub fn paths_from(&self, v: usize) -> &[usize] {
        &self.from[v]
    }

    /// Surviving paths ending at `v`.
    pub fn paths_to(&self, v: usize) -> &[usize] {
        &self.to[v]
    }

    /// Surviving paths from `i` to `j`.
    pub fn paths_between(&self, i: usize, j: usize) -> Vec<usize> {
        self.from[i].iter().copied().filter(|&p| self.paths[p].end == j).collect()
    }

    pub fn path(&self, idx: usize) -> &Path {
        &self.paths[idx]
    }

    pub fn path_id(&self, start: usize, arrows: &[usize]) -> Option<usize> {
        self.path_index.get(&(start, arrows.to_vec())).copied()
    }

    pub fn trivial_path(&self, v: usize) -> usize {
        self.path_index[&(v, Vec::new())]
    }

    /// Index of `p·a` if it survives.
    pub fn extend(&self, p: usize, a: usize) -> Option<usize> {
        let path = &self.paths[p];
        if self.arrows[a].source != path.end {
            return None;
        }
        let mut arr = path.arrows.clone();
        arr.push(a);
        self.path_id(path.start, &arr)
    }

    /// Whether an arbitrary arrow sequence survives modulo the relations.
    pub fn survives(&self, arrows: &[usize]) -> bool {
        arrows.windows(2).all(|w| self.arrows[w[0]].target == self.arrows[w[1]].source)
            && !self.relations.iter().any(|r| contains_subpath(arrows, r))
    }

    pub fn path_names(&self, arrows: &[usize]) -> Vec<String> {
        arrows.iter().map(|&a| self.arrows[a].id.clone()).collect()
    }

    pub fn relation_names(&self) -> BTreeSet<Vec<String>> {
        self.relations.iter().map(|r| self.path_names(r)).collect()
    }

    /// Length of the longest surviving path plus one.
    pub fn loewy_length(&self) -> usize {
        self.paths.iter().map(|p| p.len()).max().unwrap_or(0) + 1
    }

    pub fn opposite(&self) -> Arc<Algebra> {
        self.op
            .get_or_init(|| {
                let arrows = self
                    .arrows
                    .iter()
                    .map(|a| Arrow { id: a.id.clone(), source: a.target, target: a.source })
                    .collect();
                let rels = self.relations.iter().map(|r| r.iter().rev().copied().collect()).collect();
                Arc::new(
                    Algebra::from_parts(self.vertices.clone(), arrows, rels, usize::MAX)
                        .expect("opposite of an admissible algebra"),
                )
            })
            .clone()
    }

    /// Rename vertices and arrows, keeping the structure.
    pub fn renamed(&self, vname: impl Fn(&str) -> String, aname: impl Fn(&str) -> String) -> Result<Algebra> {
        let vertices = self.vertices.iter().map(|v| vname(v)).collect();
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { id: aname(&a.id), source: a.source, target: a.target })
            .collect();
        Algebra::from_parts(vertices, arrows, self.relations.clone(), usize::MAX)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &a in self.out_arrows[v].iter().chain(&self.in_arrows[v]) {
                for w in [self.arrows[a].source, self.arrows[a].target] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    pub fn has_oriented_cycle(&self) -> bool {
        let n = self.num_vertices();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.in_arrows[v].len()).collect();
        let mut q: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = q.pop() {
            seen += 1;
            for &a in &self.out_arrows[v] {
                let t = self.arrows[a].target;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    q.push(t);
                }
            }
        }
        seen < n
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vertices": self.vertices,
            "arrows": self.arrows.iter().map(|a| json!({
                "id": a.id,
                "from": self.vertices[a.source],
                "to": self.vertices[a.target],
            })).collect::<Vec<_>>(),
            "relations": self.relations.iter().map(|r| self.path_names(r)).collect::<Vec<_>>(),
        })
    }
}

/// Drop duplicates and relations containing a shorter relation as a subpath.
pub fn reduce_relations(mut rels: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    rels.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    rels.dedup();
    let mut kept: Vec<Vec<usize>> = Vec::new();
    for r in rels {
        if !kept.iter().any(|k| contains_subpath(&r, k)) {
            kept.push(r);
        }
    }
    kept.sort();
    kept
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn as_str_vec(v: &Value, what: &str) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("{what} must be an array")))?
        .iter()
        .map(|x| match x {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(parse_err(format!("{what} entries must be strings"))),
        })
        .collect()
}

/// Parse an algebra document (full form or one of the shortcuts).
pub fn parse_algebra(text: &str) -> Result<Algebra> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    algebra_from_json(&v)
}

pub fn algebra_from_json(v: &Value) -> Result<Algebra> {
    if let Some(k) = v.get("kupisch") {
        let entries: Vec<usize> = k
            .as_array()
            .ok_or_else(|| parse_err("kupisch must be an array"))?
            .iter()
            .map(|x| x.as_u64().map(|n| n as usize).ok_or_else(|| parse_err("kupisch entries must be integers")))
            .collect::<Result<_>>()?;
        let cyclic = v.get("cyclic").and_then(Value::as_bool).unwrap_or(false);
        let shape = if cyclic { KupischShape::Cyclic } else { KupischShape::Acyclic };
        return nakayama(&KupischSeries::new(entries, shape)?);
    }
    if let Some(s) = v.get("starlike") {
        let rays = s
            .as_array()
            .ok_or_else(|| parse_err("starlike must be an array"))?
            .iter()
            .map(|r| {
                let m = r.get("m").and_then(Value::as_u64).ok_or_else(|| parse_err("ray needs integer m"))?;
                let dir = match r.get("dir").and_then(Value::as_str) {
                    Some("in") => ArmDir::In,
                    Some("out") => ArmDir::Out,
                    _ => return Err(parse_err("ray dir must be \"in\" or \"out\"")),
                };
                Ok((m as usize, dir))
            })
            .collect::<Result<Vec<_>>>()?;
        return starlike(&rays);
    }
    let vertices = as_str_vec(v.get("vertices").ok_or_else(|| parse_err("missing vertices"))?, "vertices")?;
    let mut arrows = Vec::new();
    for a in v.get("arrows").and_then(Value::as_array).ok_or_else(|| parse_err("missing arrows"))? {
        let get = |k: &str| -> Result<String> {
            match a.get(k) {
                Some(Value::String(s)) => Ok(s.clone()),
                Some(Value::Number(n)) => Ok(n.to_string()),
                _ => Err(parse_err(format!("arrow entry missing {k}"))),
            }
        };
        arrows.push((get("id")?, get("from")?, get("to")?));
    }
    let relations = match v.get("relations") {
        None | Some(Value::Null) => Vec::new(),
        Some(r) => r
            .as_array()
            .ok_or_else(|| parse_err("relations must be an array"))?
            .iter()
            .map(|x| as_str_vec(x, "relation"))
            .collect::<Result<_>>()?,
    };
    Algebra::new(vertices, arrows, relations)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KupischShape {
    Acyclic,
    Cyclic,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KupischSeries {
    entries: Vec<usize>,
    shape: KupischShape,
}

impl KupischSeries {
    pub fn new(entries: Vec<usize>, shape: KupischShape) -> Result<KupischSeries> {
        let err = |m: String| Err(Error::InvalidKupisch(m));
        let l = entries.len();
        if l == 0 {
            return err("empty series".into());
        }
        match shape {
            KupischShape::Acyclic => {
                if entries[l - 1] != 1 {
                    return err("last entry must be 1".into());
                }
                if entries[..l - 1].iter().any(|&d| d < 2) {
                    return err("entries before the last must be at least 2".into());
                }
                for i in 1..l {
                    if entries[i - 1] > entries[i] + 1 {
                        return err(format!("d_{} - 1 > d_{}", i, i + 1));
                    }
                }
            }
            KupischShape::Cyclic => {
                if entries.iter().any(|&d| d < 2) {
                    return err("cyclic entries must be at least 2".into());
                }
                for i in 0..l {
                    let prev = entries[(i + l - 1) % l];
                    if prev > entries[i] + 1 {
                        return err(format!("cyclic condition fails at position {}", i + 1));
                    }
                }
            }
        }
        Ok(KupischSeries { entries, shape })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn shape(&self) -> KupischShape {
        self.shape
    }

    pub fn sum(&self) -> usize {
        self.entries.iter().sum()
    }

    /// Cyclic series are normalized to their lexicographically minimal rotation.
    pub fn normalized(&self) -> KupischSeries {
        match self.shape {
            KupischShape::Acyclic => self.clone(),
            KupischShape::Cyclic => {
                let l = self.entries.len();
                let best = (0..l)
                    .map(|s| (0..l).map(|i| self.entries[(s + i) % l]).collect::<Vec<_>>())
                    .min()
                    .unwrap();
                KupischSeries { entries: best, shape: self.shape }
            }
        }
    }
}

/// Nakayama algebra with the given Kupisch series. Vertices "1".."l", arrows
/// "a1".. with a_i: i → i+1 (cyclically for the cyclic shape).
pub fn nakayama(series: &KupischSeries) -> Result<Algebra> {
    let d = series.entries();
    let l = d.len();
    let vertices: Vec<String> = (1..=l).map(|i| i.to_string()).collect();
    let cyclic = series.shape() == KupischShape::Cyclic;
    let na = if cyclic { l } else { l - 1 };
    let arrows: Vec<Arrow> =
        (0..na).map(|i| Arrow { id: format!("a{}", i + 1), source: i, target: (i + 1) % l }).collect();
    let mut rels = Vec::new();
    for (i, &di) in d.iter().enumerate() {
        if cyclic || i + di < l {
            rels.push((0..di).map(|k| (i + k) % l).collect());
        }
    }
    Algebra::from_parts(vertices, arrows, rels, DEFAULT_PATH_CAP)
}

/// Kupisch series of a Nakayama algebra (linear or cyclic quiver).
pub fn kupisch_of(a: &Algebra) -> Result<KupischSeries> {
    let n = a.num_vertices();
    let bad = |m: &str| Err(Error::NotNakayama(m.to_string()));
    if n == 0 || !a.is_connected() {
        return bad("quiver is empty or disconnected");
    }
    if (0..n).any(|v| a.out_arrows(v).len() > 1 || a.in_arrows(v).len() > 1) {
        return bad("some vertex has two outgoing or incoming arrows");
    }
    let sources = a.sources();
    let (start, shape) = match sources.len() {
        0 => (0, KupischShape::Cyclic),
        1 => (sources[0], KupischShape::Acyclic),
        _ => return bad("more than one source"),
    };
    let mut order = vec![start];
    let mut v = start;
    while let Some(&ar) = a.out_arrows(v).first() {
        v = a.arrows()[ar].target;
        if v == start {
            break;
        }
        order.push(v);
    }
    if order.len() != n {
        return bad("quiver is not a single line or cycle");
    }
    let entries = order.iter().map(|&v| a.paths_from(v).len()).collect();
    Ok(KupischSeries::new(entries, shape)?.normalized())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArmDir {
    /// Arrows point towards the center.
    In,
    /// Arrows point away from the center.
    Out,
}

/// Radical square zero algebra on a starlike tree. The center is "1"; vertex
/// j of arm i is "j_i".
pub fn starlike(rays: &[(usize, ArmDir)]) -> Result<Algebra> {
    let k = rays.len();
    if k == 0 || k == 2 {
        return Err(Error::InvalidStarlike(format!("{k} rays")));
    }
    if let Some((m, _)) = rays.iter().find(|(m, _)| *m < 2) {
        return Err(Error::InvalidStarlike(format!("arm length {m} < 2")));
    }
    let mut vertices = vec!["1".to_string()];
    let mut arrows = Vec::new();
    for (i, &(m, dir)) in rays.iter().enumerate() {
        let mut prev = 0;
        for j in 2..=m {
            let idx = vertices.len();
            vertices.push(format!("{}_{}", j, i + 1));
            let id = format!("a{}_{}", j, i + 1);
            let (s, t) = match dir {
                ArmDir::Out => (prev, idx),
                ArmDir::In => (idx, prev),
            };
            arrows.push(Arrow { id, source: s, target: t });
            prev = idx;
        }
    }
    let rels = all_length_two(&arrows);
    Algebra::from_parts(vertices, arrows, rels, DEFAULT_PATH_CAP)
}

/// All composable arrow pairs.
pub fn all_length_two(arrows: &[Arrow]) -> Vec<Vec<usize>> {
    let mut rels = Vec::new();
    for (i, a) in arrows.iter().enumerate() {
        for (j, b) in arrows.iter().enumerate() {
            if a.target == b.source {
                rels.push(vec![i, j]);
            }
        }
    }
    rels
}

/// Radical square zero algebra on a quiver given by vertex names and
/// (arrow id, source, target) triples.
pub fn rad_square_zero(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Algebra> {
    let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
    let idx: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut arr = Vec::new();
    for (id, s, t) in arrows {
        let (Some(&s), Some(&t)) = (idx.get(s), idx.get(t)) else {
            return Err(Error::InvalidQuiver(format!("arrow {id} has an unknown endpoint")));
        };
        arr.push(Arrow { id: id.to_string(), source: s, target: t });
    }
    let rels = all_length_two(&arr);
    Algebra::from_parts(vs, arr, rels, DEFAULT_PATH_CAP)
}

/// Whether two presentations agree up to renaming of vertices and arrows.
pub fn isomorphic_presentations(a: &Algebra, b: &Algebra) -> bool {
    if a.num_vertices() != b.num_vertices() || a.num_arrows() != b.num_arrows() || a.dim() != b.dim() {
        return false;
    }
    if a.relations().len() != b.relations().len() {
        return false;
    }
    let n = a.num_vertices();
    let count = |x: &Algebra| {
        let mut m: HashMap<(usize, usize), usize> = HashMap::new();
        for ar in x.arrows() {
            *m.entry((ar.source, ar.target)).or_default() += 1;
        }
        m
    };
    let (ca, cb) = (count(a), count(b));
    let sig = |x: &Algebra, v: usize| {
        (x.out_arrows(v).len(), x.in_arrows(v).len(), x.paths_from(v).len(), x.paths_to(v).len())
    };
    let mut order: Vec<usize> = (0..n).collect();
    // BFS order keeps the partial map connected, which prunes early.
    {
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                out.push(v);
                for &ar in a.out_arrows(v).iter().chain(a.in_arrows(v)) {
                    for w in [a.arrows()[ar].source, a.arrows()[ar].target] {
                        if !seen[w] {
                            seen[w] = true;
                            q.push_back(w);
                        }
                    }
                }
            }
        }
        order = if out.len() == n { out } else { order };
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let arel: HashSet<Vec<usize>> = a.relations().iter().cloned().collect();
    let brel: HashSet<Vec<usize>> = b.relations().iter().cloned().collect();
    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        order: &[usize],
        a: &Algebra,
        b: &Algebra,
        ca: &HashMap<(usize, usize), usize>,
        cb: &HashMap<(usize, usize), usize>,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        sig: &dyn Fn(&Algebra, usize) -> (usize, usize, usize, usize),
        arel: &HashSet<Vec<usize>>,
        brel: &HashSet<Vec<usize>>,
    ) -> bool {
        if k == order.len() {
            return relations_match(a, b, map, arel, brel);
        }
        let v = order[k];
        for w in 0..b.num_vertices() {
            if used[w] || sig(a, v) != sig(b, w) {
                continue;
            }
            let ok = order[..k].iter().all(|&u| {
                let mu = map[u];
                ca.get(&(u, v)).copied().unwrap_or(0) == cb.get(&(mu, w)).copied().unwrap_or(0)
                    && ca.get(&(v, u)).copied().unwrap_or(0) == cb.get(&(w, mu)).copied().unwrap_or(0)
            }) && ca.get(&(v, v)).copied().unwrap_or(0) == cb.get(&(w, w)).copied().unwrap_or(0);
            if !ok {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if go(k + 1, order, a, b, ca, cb, map, used, sig, arel, brel) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
        false
    }
    go(0, &order, a, b, &ca, &cb, &mut map, &mut used, &sig, &arel, &brel)
}

/// Given a vertex bijection, search arrow bijections (within parallel classes)
/// carrying the relation set of `a` onto that of `b`.
fn relations_match(
    a: &Algebra,
    b: &Algebra,
    vmap: &[usize],
    arel: &HashSet<Vec<usize>>,
    brel: &HashSet<Vec<usize>>,
) -> bool {
    let mut classes: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut seen = HashSet::new();
    for ar in a.arrows() {
        let key = (ar.source, ar.target);
        if !seen.insert(key) {
            continue;
        }
        let xs: Vec<usize> =
            (0..a.num_arrows()).filter(|&i| (a.arrows()[i].source, a.arrows()[i].target) == key).collect();
        let ys: Vec<usize> = (0..b.num_arrows())
            .filter(|&i| (b.arrows()[i].source, b.arrows()[i].target) == (vmap[key.0], vmap[key.1]))
            .collect();
        classes.push((xs, ys));
    }
    let mut amap = vec![usize::MAX; a.num_arrows()];
    fn rec(
        c: usize,
        classes: &[(Vec<usize>, Vec<usize>)],
        amap: &mut Vec<usize>,
        arel: &HashSet<Vec<usize>>,
        brel: &HashSet<Vec<usize>>,
    ) -> bool {
        if c == classes.len() {
            return arel.iter().all(|r| brel.contains(&r.iter().map(|&x| amap[x]).collect::<Vec<_>>()));
        }
        let (xs, ys) = &classes[c];
        let mut perm: Vec<usize> = (0..ys.len()).collect();
        loop {
            for (i, &x) in xs.iter().enumerate() {
                amap[x] = ys[perm[i]];
            }
            if rec(c + 1, classes, amap, arel, brel) {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }
    rec(0, &classes, &mut amap, arel, brel)
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3_rad2() -> Algebra {
        parse_algebra(
            r#"{"vertices":["1","2","3"],"arrows":[{"id":"a","from":"1","to":"2"},{"id":"b","from":"2","to":"3"}],"relations":[["a","b"]]}"#,
        )
        .unwrap()
    }

    #[test]
    fn parse_small() {
        let a = a3_rad2();
        assert_eq!((a.num_vertices(), a.num_arrows(), a.relations().len()), (3, 2, 1));
        assert_eq!(a.dim(), 5);
    }

    #[test]
    fn loop_is_not_admissible() {
        let r = parse_algebra(r#"{"vertices":["1"],"arrows":[{"id":"x","from":"1","to":"1"}],"relations":[]}"#);
        assert!(matches!(r, Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn bad_inputs() {
        let dup = r#"{"vertices":["1","1"],"arrows":[]}"#;
        assert!(matches!(parse_algebra(dup), Err(Error::InvalidQuiver(_))));
        let dangling = r#"{"vertices":["1"],"arrows":[{"id":"a","from":"1","to":"9"}]}"#;
        assert!(matches!(parse_algebra(dangling), Err(Error::InvalidQuiver(_))));
        let short = r#"{"vertices":["1","2"],"arrows":[{"id":"a","from":"1","to":"2"}],"relations":[["a"]]}"#;
        assert!(matches!(parse_algebra(short), Err(Error::InvalidRelation(_))));
    }

    #[test]
    fn hereditary_a3() {
        let a = parse_algebra(
            r#"{"vertices":["1","2","3"],"arrows":[{"id":"a","from":"1","to":"2"},{"id":"b","from":"2","to":"3"}]}"#,
        )
        .unwrap();
        assert_eq!(a.dim(), 6);
        let k = kupisch_of(&a).unwrap();
        assert_eq!(k.entries(), &[3, 2, 1]);
    }

    #[test]
    fn reduction_keeps_basis() {
        let a = Algebra::new(
            ["1", "2", "3", "4"].iter().map(|s| s.to_string()).collect(),
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "3".into()),
                ("c".into(), "3".into(), "4".into()),
            ],
            vec![vec!["a".into(), "b".into()], vec!["a".into(), "b".into(), "c".into()]],
        )
        .unwrap();
        assert_eq!(a.relations().len(), 1);
        assert_eq!(a.dim(), 4 + 3 + 1);
    }

    #[test]
    fn nakayama_roundtrip() {
        let s = KupischSeries::new(vec![2, 2, 3, 3, 3, 3, 2, 1], KupischShape::Acyclic).unwrap();
        let a = nakayama(&s).unwrap();
        assert_eq!(a.dim(), 19);
        assert_eq!(kupisch_of(&a).unwrap(), s);
        let c = KupischSeries::new(vec![2, 2, 3, 3, 3, 3, 2], KupischShape::Cyclic).unwrap();
        let b = nakayama(&c).unwrap();
        assert_eq!(b.dim(), 18);
        assert_eq!(kupisch_of(&b).unwrap(), c.normalized());
        assert_eq!(c.normalized().entries(), &[2, 2, 2, 3, 3, 3, 3]);
        assert!(KupischSeries::new(vec![3, 1], KupischShape::Acyclic).is_err());
        assert!(KupischSeries::new(vec![2, 2, 2, 1], KupischShape::Acyclic).is_ok());
    }

    #[test]
    fn starlike_shapes() {
        let s = starlike(&[(5, ArmDir::Out), (5, ArmDir::Out), (4, ArmDir::In)]).unwrap();
        assert_eq!(s.num_vertices(), 12);
        assert_eq!(s.num_arrows(), 11);
        assert!(kupisch_of(&s).is_err());
        let line = starlike(&[(3, ArmDir::Out)]).unwrap();
        assert_eq!(kupisch_of(&line).unwrap().entries(), &[2, 2, 1]);
        assert!(starlike(&[(2, ArmDir::In), (2, ArmDir::Out)]).is_err());
        assert!(starlike(&[(1, ArmDir::In)]).is_err());
    }

    #[test]
    fn opposite_involution() {
        let a = a3_rad2();
        let op = a.opposite();
        assert_ne!(*op, a);
        assert_eq!(*op.opposite(), a);
        assert_eq!(op.sources().len(), a.sinks().len());
    }

    #[test]
    fn presentation_isomorphism() {
        let a = a3_rad2();
        let b = rad_square_zero(&["x", "y", "z"], &[("p", "z", "y"), ("q", "y", "x")]).unwrap();
        assert!(isomorphic_presentations(&a, &b));
        let c = rad_square_zero(&["x", "y", "z"], &[("p", "x", "y"), ("q", "z", "y")]).unwrap();
        assert!(!isomorphic_presentations(&a, &c));
    }

    #[test]
    fn json_roundtrip() {
        let a = starlike(&[(3, ArmDir::Out), (3, ArmDir::In), (2, ArmDir::Out)]).unwrap();
        let b = algebra_from_json(&a.to_json()).unwrap();
        assert_eq!(a, b);
    }
}
