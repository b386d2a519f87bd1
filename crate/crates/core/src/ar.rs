//! Enumeration of indecomposables by τ⁻-orbits and the Auslander-Reiten quiver.

use crate::algebra::Algebra;
use crate::decompose::{decompose, find_isomorphism, seed};
use crate::error::{Error, Result};
use crate::homology::{radical, syzygy_data, tau, tau_inv};
use crate::matrix::Matrix;
use crate::rep::{hom_basis, hom_dim, Morphism, Rep};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;
use std::sync::Arc;

pub const DEFAULT_CAP: usize = 4096;

/// Isoclass lookup keyed by dimension vector.
#[derive(Clone, Debug, Default)]
pub struct NodeIndex {
    by_dims: HashMap<Vec<usize>, Vec<usize>>,
}

impl NodeIndex {
    pub fn insert(&mut self, rep: &Rep, idx: usize) {
        self.by_dims.entry(rep.dims().to_vec()).or_default().push(idx);
    }

    pub fn find(&self, reps: &[Rep], m: &Rep) -> Option<usize> {
        self.by_dims
            .get(m.dims())?
            .iter()
            .copied()
            .find(|&i| find_isomorphism(&reps[i], m, seed()).is_some())
    }
}

#[derive(Clone, Debug)]
pub struct ARNode {
    pub id: String,
    pub rep: Rep,
    /// Vertex `v` with this node ≅ P(v).
    pub projective: Option<usize>,
    pub injective: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct ARData {
    pub algebra: Arc<Algebra>,
    pub nodes: Vec<ARNode>,
    /// Irreducible-map multiplicities.
    pub arrows: BTreeMap<(usize, usize), usize>,
    pub tau: Vec<Option<usize>>,
    pub tau_inv: Vec<Option<usize>>,
    index: NodeIndex,
}

struct Orbits {
    reps: Vec<Rep>,
    tau: Vec<Option<usize>>,
    tau_inv: Vec<Option<usize>>,
    projective: Vec<Option<usize>>,
    index: NodeIndex,
}

fn orbits(alg: &Arc<Algebra>, cap: usize) -> Result<Orbits> {
    let n = alg.num_vertices();
    let mut o = Orbits { reps: Vec::new(), tau: Vec::new(), tau_inv: Vec::new(), projective: Vec::new(), index: NodeIndex::default() };
    for v in 0..n {
        let mut x = Rep::projective(alg, v);
        let mut prev: Option<usize> = None;
        loop {
            if let Some(j) = o.index.find(&o.reps, &x) {
                return Err(Error::NotDirected(format!(
                    "τ⁻-orbit of P({}) returns to node of dimension vector ({})",
                    alg.vertex_name(v),
                    o.reps[j].dim_string()
                )));
            }
            if o.reps.len() >= cap {
                return Err(Error::CapExceeded(cap));
            }
            let idx = o.reps.len();
            o.index.insert(&x, idx);
            o.reps.push(x.clone());
            o.tau.push(prev);
            o.tau_inv.push(None);
            o.projective.push(if prev.is_none() { Some(v) } else { None });
            if let Some(p) = prev {
                o.tau_inv[p] = Some(idx);
            }
            let y = tau_inv(&x);
            if y.is_zero() {
                break;
            }
            prev = Some(idx);
            x = y;
        }
    }
    Ok(o)
}

/// All indecomposables, in τ⁻-orbit order of the projectives.
pub fn indecomposables(alg: &Arc<Algebra>, cap: usize) -> Result<Vec<Rep>> {
    Ok(ar_quiver_capped(alg, cap)?.nodes.into_iter().map(|n| n.rep).collect())
}

pub fn ar_quiver(alg: &Arc<Algebra>) -> Result<ARData> {
    ar_quiver_capped(alg, DEFAULT_CAP)
}

/// Middle term of the almost split sequence ending in `z`, whose left end is ≅ `x`.
fn mesh_middle(z: &Rep, x: &Rep) -> Result<Rep> {
    let alg = z.algebra().clone();
    let syz = syzygy_data(z);
    let p0 = &syz.cover.proj;
    let omega = &syz.kernel;
    let iota = Morphism { maps: syz.kernel_basis.clone() };
    let restricted: Vec<Vec<_>> = hom_basis(p0, x)?
        .iter()
        .map(|h| h.after(&iota).flatten())
        .collect();
    let candidates = hom_basis(omega, x)?;
    let len = candidates.first().map_or(0, |g| g.flatten().len());
    let span = Matrix::from_columns(len, &restricted);
    let r = span.rank();
    let g = candidates
        .into_iter()
        .find(|g| span.hstack(&Matrix::from_columns(len, &[g.flatten()])).rank() > r)
        .ok_or_else(|| Error::NotDirected("almost split sequence splits".into()))?;
    let sum = Rep::direct_sum(&alg, &[p0, x]);
    let basis: Vec<Matrix> = (0..alg.num_vertices())
        .map(|v| {
            let neg = g.maps[v].scale(&crate::Q::int(-1));
            iota.maps[v].vstack(&neg).column_basis()
        })
        .collect();
    Ok(sum.quotient(&basis).0)
}

fn socle_basis(m: &Rep, v: usize) -> Matrix {
    let a = m.algebra();
    let mut stacked = Matrix::zeros(0, m.dim_at(v));
    for &ar in a.out_arrows(v) {
        stacked = stacked.vstack(m.map(ar));
    }
    stacked.kernel()
}

fn modulo_socle(m: &Rep) -> Rep {
    let basis: Vec<Matrix> = (0..m.dims().len()).map(|v| socle_basis(m, v)).collect();
    m.quotient(&basis).0
}

pub fn ar_quiver_capped(alg: &Arc<Algebra>, cap: usize) -> Result<ARData> {
    let o = orbits(alg, cap)?;
    let n = alg.num_vertices();
    let mut injective = vec![None; o.reps.len()];
    for v in 0..n {
        let i = Rep::injective(alg, v);
        let j = o
            .index
            .find(&o.reps, &i)
            .ok_or_else(|| Error::NotDirected(format!("injective I({}) not reached", alg.vertex_name(v))))?;
        injective[j] = Some(v);
    }
    for (j, inj) in injective.iter().enumerate() {
        if inj.is_none() && o.tau_inv[j].is_none() {
            return Err(Error::NotDirected(format!("τ⁻ vanishes on non-injective ({})", o.reps[j].dim_string())));
        }
    }
    // Closure: middle terms, radicals of projectives and injectives modulo socle.
    let meshes: Vec<Result<(usize, Vec<Rep>)>> = (0..o.reps.len())
        .into_par_iter()
        .filter(|&j| o.tau_inv[j].is_some())
        .map(|j| {
            let z = &o.reps[o.tau_inv[j].unwrap()];
            let e = mesh_middle(z, &o.reps[j])?;
            Ok((j, decompose(&e)?.parts))
        })
        .collect();
    let locate = |m: &Rep, what: &str| -> Result<usize> {
        o.index
            .find(&o.reps, m)
            .ok_or_else(|| Error::NotDirected(format!("{} ({}) lies outside the τ⁻-orbits", what, m.dim_string())))
    };
    let mut arrows: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for m in meshes {
        let (j, parts) = m?;
        let z = o.tau_inv[j].unwrap();
        for p in &parts {
            let e = locate(p, "middle term summand")?;
            *arrows.entry((j, e)).or_default() += 1;
            *arrows.entry((e, z)).or_default() += 1;
        }
    }
    // Each arrow X→E is counted once from the mesh at X and once from the mesh ending at E when E is
    // not projective; keep the mesh-from-X count, which is the multiplicity.
    let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (&(a, b), &k) in &arrows {
        let from_left = o.tau_inv[a].is_some();
        let from_right = o.tau[b].is_some();
        let m = if from_left && from_right { k / 2 } else { k };
        mult.insert((a, b), m);
    }
    for (j, p) in o.projective.iter().enumerate() {
        if p.is_none() {
            continue;
        }
        let rad = radical(&o.reps[j]);
        if rad.is_zero() {
            continue;
        }
        let mut local: BTreeMap<usize, usize> = BTreeMap::new();
        for part in decompose(&rad)?.parts {
            *local.entry(locate(&part, "radical summand")?).or_default() += 1;
        }
        for (x, k) in local {
            let e = mult.entry((x, j)).or_default();
            if *e != 0 && *e != k {
                return Err(Error::NotDirected("inconsistent arrow multiplicity into a projective".into()));
            }
            *e = k;
        }
    }
    for (j, i) in injective.iter().enumerate() {
        if i.is_none() {
            continue;
        }
        let q = modulo_socle(&o.reps[j]);
        if q.is_zero() {
            continue;
        }
        for part in decompose(&q)?.parts {
            let y = locate(&part, "injective quotient summand")?;
            if !mult.contains_key(&(j, y)) {
                return Err(Error::NotDirected("missing arrow out of an injective".into()));
            }
        }
    }
    let nodes = node_ids(&o.reps)
        .into_iter()
        .zip(&o.reps)
        .enumerate()
        .map(|(j, (id, r))| ARNode { id, rep: r.clone(), projective: o.projective[j], injective: injective[j] })
        .collect();
    Ok(ARData { algebra: alg.clone(), nodes, arrows: mult, tau: o.tau, tau_inv: o.tau_inv, index: o.index })
}

/// Knitting by closure under τ, τ⁻, mesh middle terms, radicals of projectives and injectives
/// modulo socle, starting from the projectives. Needs representation-finiteness, not directedness.
pub fn ar_quiver_closure(alg: &Arc<Algebra>, cap: usize) -> Result<ARData> {
    let mut reps: Vec<Rep> = Vec::new();
    let mut index = NodeIndex::default();
    let mut add = |m: Rep, reps: &mut Vec<Rep>| -> Result<usize> {
        if let Some(j) = index.find(reps, &m) {
            return Ok(j);
        }
        if reps.len() >= cap {
            return Err(Error::CapExceeded(cap));
        }
        index.insert(&m, reps.len());
        reps.push(m);
        Ok(reps.len() - 1)
    };
    let n = alg.num_vertices();
    for v in 0..n {
        add(Rep::projective(alg, v), &mut reps)?;
    }
    let mut left: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut right: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut from_radical: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut tau_of: Vec<Option<usize>> = Vec::new();
    let mut tau_inv_of: Vec<Option<usize>> = Vec::new();
    let mut done = 0;
    while done < reps.len() {
        let j = done;
        done += 1;
        let x = reps[j].clone();
        let mut found = Vec::new();
        let up = tau_inv(&x);
        let mesh = if up.is_zero() {
            None
        } else {
            let parts = decompose(&mesh_middle(&up, &x)?)?.parts;
            Some((up, parts))
        };
        let down = tau(&x);
        if (0..n).any(|v| find_isomorphism(&Rep::projective(alg, v), &x, seed()).is_some()) {
            let rad = radical(&x);
            if !rad.is_zero() {
                for p in decompose(&rad)?.parts {
                    let e = add(p, &mut reps)?;
                    *from_radical.entry((e, j)).or_default() += 1;
                }
            }
        }
        if (0..n).any(|v| find_isomorphism(&Rep::injective(alg, v), &x, seed()).is_some()) {
            let q = modulo_socle(&x);
            if !q.is_zero() {
                for p in decompose(&q)?.parts {
                    found.push(p);
                }
            }
        }
        if let Some((up, parts)) = mesh {
            let z = add(up, &mut reps)?;
            grow(&mut tau_inv_of, reps.len());
            grow(&mut tau_of, reps.len());
            tau_inv_of[j] = Some(z);
            tau_of[z] = Some(j);
            for p in parts {
                let e = add(p, &mut reps)?;
                *left.entry((j, e)).or_default() += 1;
                *right.entry((e, z)).or_default() += 1;
            }
        }
        if !down.is_zero() {
            found.push(down);
        }
        for m in found {
            add(m, &mut reps)?;
        }
    }
    grow(&mut tau_inv_of, reps.len());
    grow(&mut tau_of, reps.len());
    let keys: std::collections::BTreeSet<(usize, usize)> =
        left.keys().chain(right.keys()).chain(from_radical.keys()).copied().collect();
    let mut arrows = BTreeMap::new();
    for (a, b) in keys {
        let k = if tau_inv_of[a].is_some() {
            left.get(&(a, b))
        } else if tau_of[b].is_some() {
            right.get(&(a, b))
        } else {
            from_radical.get(&(a, b))
        };
        if let Some(&k) = k {
            arrows.insert((a, b), k);
        }
    }
    Ok(ARData::from_raw(alg.clone(), reps, arrows, tau_of, tau_inv_of))
}

fn grow(v: &mut Vec<Option<usize>>, len: usize) {
    if v.len() < len {
        v.resize(len, None);
    }
}

/// Ids "dimvector@ordinal", the ordinal counting earlier nodes with the same dimension vector.
pub fn node_ids(reps: &[Rep]) -> Vec<String> {
    let mut counts: HashMap<String, usize> = HashMap::new();
    reps.iter()
        .map(|r| {
            let key = r.dims().iter().map(|d| d.to_string()).collect::<String>();
            let c = counts.entry(key.clone()).or_default();
            let id = format!("{}@{}", key, c);
            *c += 1;
            id
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Directedness {
    /// Topological order of the indecomposables along nonzero non-isomorphisms.
    Directed(Vec<usize>),
    NotDirected(String),
    UnknownCap(usize),
}

impl Directedness {
    pub fn is_directed(&self) -> bool {
        matches!(self, Directedness::Directed(_))
    }
}

pub fn is_representation_directed(alg: &Arc<Algebra>, cap: usize) -> Directedness {
    let ar = match ar_quiver_capped(alg, cap) {
        Ok(a) => a,
        Err(Error::CapExceeded(c)) => return Directedness::UnknownCap(c),
        Err(e) => return Directedness::NotDirected(e.to_string()),
    };
    match ar.hom_order() {
        Ok(order) => Directedness::Directed(order),
        Err(cycle) => Directedness::NotDirected(format!(
            "Hom-cycle through {}",
            cycle.iter().map(|&i| ar.nodes[i].id.clone()).collect::<Vec<_>>().join(" → ")
        )),
    }
}

fn topo_order(n: usize, edges: &[(usize, usize)]) -> std::result::Result<Vec<usize>, Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
    }
    // 0 unvisited, 1 on stack, 2 done
    let mut state = vec![0u8; n];
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        if state[s] != 0 {
            continue;
        }
        let mut stack = vec![(s, 0usize)];
        state[s] = 1;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        parent[w] = v;
                        stack.push((w, 0));
                    }
                    1 => {
                        let mut cyc = vec![w];
                        let mut u = v;
                        while u != w {
                            cyc.push(u);
                            u = parent[u];
                        }
                        cyc.push(w);
                        cyc.reverse();
                        return Err(cyc);
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                order.push(v);
                stack.pop();
            }
        }
    }
    order.reverse();
    Ok(order)
}

impl ARData {
    pub(crate) fn from_raw(
        alg: Arc<Algebra>,
        reps: Vec<Rep>,
        arrows: BTreeMap<(usize, usize), usize>,
        tau: Vec<Option<usize>>,
        tau_inv: Vec<Option<usize>>,
    ) -> ARData {
        let mut index = NodeIndex::default();
        for (i, r) in reps.iter().enumerate() {
            index.insert(r, i);
        }
        let mut projective = vec![None; reps.len()];
        let mut injective = vec![None; reps.len()];
        for v in 0..alg.num_vertices() {
            if let Some(j) = index.find(&reps, &Rep::projective(&alg, v)) {
                projective[j] = Some(v);
            }
            if let Some(j) = index.find(&reps, &Rep::injective(&alg, v)) {
                injective[j] = Some(v);
            }
        }
        let nodes = node_ids(&reps)
            .into_iter()
            .zip(reps)
            .enumerate()
            .map(|(j, (id, rep))| ARNode { id, rep, projective: projective[j], injective: injective[j] })
            .collect();
        ARData { algebra: alg, nodes, arrows, tau, tau_inv, index }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn reps(&self) -> Vec<Rep> {
        self.nodes.iter().map(|n| n.rep.clone()).collect()
    }

    pub fn find(&self, m: &Rep) -> Option<usize> {
        self.index.by_dims.get(m.dims())?.iter().copied().find(|&i| find_isomorphism(&self.nodes[i].rep, m, seed()).is_some())
    }

    pub fn node_by_id(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    pub fn successors(&self, x: usize) -> Vec<(usize, usize)> {
        self.arrows.range((x, 0)..(x + 1, 0)).map(|(&(_, b), &k)| (b, k)).collect()
    }

    pub fn predecessors(&self, y: usize) -> Vec<(usize, usize)> {
        self.arrows.iter().filter(|(&(_, b), _)| b == y).map(|(&(a, _), &k)| (a, k)).collect()
    }

    /// dim τ⁻M = Σ mult · dim E − dim M at every non-injective node.
    pub fn mesh_identity_holds(&self) -> bool {
        let n = self.algebra.num_vertices();
        (0..self.len()).all(|x| {
            let Some(z) = self.tau_inv[x] else { return true };
            let mut acc = vec![0i64; n];
            for (e, k) in self.successors(x) {
                for (v, d) in self.nodes[e].rep.dims().iter().enumerate() {
                    acc[v] += (k * d) as i64;
                }
            }
            let dx = self.nodes[x].rep.dims();
            let dz = self.nodes[z].rep.dims();
            (0..n).all(|v| acc[v] - dx[v] as i64 == dz[v] as i64)
        })
    }

    pub fn quiver_order(&self) -> std::result::Result<Vec<usize>, Vec<usize>> {
        let edges: Vec<(usize, usize)> = self.arrows.keys().copied().collect();
        topo_order(self.len(), &edges)
    }

    /// Topological order of the graph X→Y for Hom(X,Y) ≠ 0, X ≇ Y, or a cycle.
    pub fn hom_order(&self) -> std::result::Result<Vec<usize>, Vec<usize>> {
        let n = self.len();
        let edges: Vec<(usize, usize)> = (0..n)
            .into_par_iter()
            .flat_map_iter(|a| {
                let sa = self.nodes[a].rep.support();
                (0..n)
                    .filter(move |&b| b != a)
                    .filter(move |&b| sa.iter().any(|&v| self.nodes[b].rep.dim_at(v) > 0))
                    .filter(move |&b| hom_dim(&self.nodes[a].rep, &self.nodes[b].rep) > 0)
                    .map(move |b| (a, b))
            })
            .collect();
        topo_order(n, &edges)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph AR {\n  rankdir=LR;\n");
        for n in &self.nodes {
            let shape = match (n.projective.is_some(), n.injective.is_some()) {
                (true, true) => "doubleoctagon",
                (true, false) => "box",
                (false, true) => "octagon",
                _ => "ellipse",
            };
            let _ = writeln!(s, "  \"{}\" [label=\"{}\", shape={}];", n.id, n.rep.dim_string(), shape);
        }
        for (&(a, b), &k) in &self.arrows {
            for _ in 0..k {
                let _ = writeln!(s, "  \"{}\" -> \"{}\";", self.nodes[a].id, self.nodes[b].id);
            }
        }
        for (x, t) in self.tau.iter().enumerate() {
            if let Some(t) = t {
                let _ = writeln!(s, "  \"{}\" -> \"{}\" [style=dashed, constraint=false];", self.nodes[x].id, self.nodes[*t].id);
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "nodes": self.nodes.iter().map(|n| serde_json::json!({
                "id": n.id,
                "dims": n.rep.dims(),
                "projective": n.projective.map(|v| self.algebra.vertex_name(v).to_string()),
                "injective": n.injective.map(|v| self.algebra.vertex_name(v).to_string()),
            })).collect::<Vec<_>>(),
            "arrows": self.arrows.iter().map(|(&(a, b), &k)| serde_json::json!([self.nodes[a].id, self.nodes[b].id, k])).collect::<Vec<_>>(),
            "tau": self.tau.iter().enumerate().filter_map(|(x, t)| t.map(|t| serde_json::json!([self.nodes[x].id, self.nodes[t].id]))).collect::<Vec<_>>(),
        })
    }
}

/// Uniserial quotients P(v)/rad^l P(v) for 1 ≤ l ≤ dim P(v), valid for Nakayama algebras.
pub fn nakayama_uniserials(alg: &Arc<Algebra>) -> Vec<Rep> {
    let mut out = Vec::new();
    for v in 0..alg.num_vertices() {
        let p = Rep::projective(alg, v);
        let d = p.total_dim();
        for l in 1..=d {
            let basis: Vec<Matrix> = (0..alg.num_vertices())
                .map(|w| {
                    let paths: Vec<usize> = alg.paths_from(v).iter().copied().filter(|&q| alg.path(q).end == w).collect();
                    let keep: Vec<usize> = paths
                        .iter()
                        .enumerate()
                        .filter(|(_, &q)| alg.path(q).len() >= l)
                        .map(|(i, _)| i)
                        .collect();
                    Matrix::unit_columns(paths.len(), &keep)
                })
                .collect();
            out.push(p.quotient(&basis).0);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{nakayama, parse_algebra, KupischSeries, KupischShape};
    use crate::decompose::is_isomorphic;

    fn a3_rad2() -> Arc<Algebra> {
        Arc::new(
            parse_algebra(
                r#"{"vertices":["1","2","3"],"arrows":[{"id":"a","from":"1","to":"2"},{"id":"b","from":"2","to":"3"}],"relations":[["a","b"]]}"#,
            )
            .unwrap(),
        )
    }

    #[test]
    fn rad_square_line() {
        let a = a3_rad2();
        let ar = ar_quiver(&a).unwrap();
        assert_eq!(ar.len(), 5);
        assert!(ar.mesh_identity_holds());
        let s = |v| ar.find(&Rep::simple(&a, v)).unwrap();
        assert_eq!(ar.tau[s(1)], Some(s(2)));
        assert_eq!(ar.tau[s(0)], Some(s(1)));
        assert_eq!(ar.arrows.len(), 4);
        assert!(is_representation_directed(&a, 100).is_directed());
        assert_eq!(
            ar.nodes.iter().map(|n| n.id.as_str()).collect::<Vec<_>>(),
            vec!["110@0", "011@0", "001@0", "010@0", "100@0"]
        );
    }

    #[test]
    fn hereditary_triangle() {
        let a = Arc::new(
            parse_algebra(r#"{"vertices":["1","2","3"],"arrows":[{"id":"a","from":"1","to":"2"},{"id":"b","from":"2","to":"3"}]}"#)
                .unwrap(),
        );
        let ar = ar_quiver(&a).unwrap();
        assert_eq!(ar.len(), 6);
        assert_eq!(ar.arrows.values().sum::<usize>(), 6);
        assert!(ar.mesh_identity_holds());
    }

    #[test]
    fn nakayama_count() {
        let k = KupischSeries::new(vec![2, 2, 3, 3, 3, 3, 2, 1], KupischShape::Acyclic).unwrap();
        let a = Arc::new(nakayama(&k).unwrap());
        let ar = ar_quiver(&a).unwrap();
        assert_eq!(ar.len(), 19);
        assert!(ar.mesh_identity_holds());
        let ser = nakayama_uniserials(&a);
        assert_eq!(ser.len(), 19);
        assert!(ser.iter().all(|m| ar.find(m).is_some()));
    }

    #[test]
    fn cyclic_is_not_directed() {
        let k = KupischSeries::new(vec![2, 2, 2], KupischShape::Cyclic).unwrap();
        let a = Arc::new(nakayama(&k).unwrap());
        assert!(!is_representation_directed(&a, 100).is_directed());
        let ser = nakayama_uniserials(&a);
        assert_eq!(ser.len(), 6);
        for (i, x) in ser.iter().enumerate() {
            for y in &ser[i + 1..] {
                assert!(!is_isomorphic(x, y));
            }
        }
    }

    #[test]
    fn closure_matches_orbit_knitting() {
        let a = a3_rad2();
        let x = ar_quiver(&a).unwrap();
        let y = ar_quiver_closure(&a, 100).unwrap();
        assert_eq!(x.len(), y.len());
        assert_eq!(x.arrows.len(), y.arrows.len());
        assert!(y.mesh_identity_holds());
    }

    #[test]
    fn closure_on_cyclic() {
        let k = KupischSeries::new(vec![2, 2, 3, 3, 3, 3, 2], KupischShape::Cyclic).unwrap();
        let a = Arc::new(nakayama(&k).unwrap());
        let ar = ar_quiver_closure(&a, 200).unwrap();
        assert_eq!(ar.len(), 18);
        assert!(ar.mesh_identity_holds());
        assert!(nakayama_uniserials(&a).iter().all(|m| ar.find(m).is_some()));
    }
}
