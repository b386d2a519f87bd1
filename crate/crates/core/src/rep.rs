//! Finite-dimensional representations of bound quivers and their morphisms.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Q;
use serde_json::{json, Value};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct Rep {
    alg: Arc<Algebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

/// A family of linear maps, one per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub maps: Vec<Matrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleKind {
    Projective,
    Injective,
    Simple,
}

impl Rep {
    pub fn new(alg: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Rep> {
        let r = Rep { alg, dims, maps };
        r.validate()?;
        Ok(r)
    }

    pub(crate) fn new_unchecked(alg: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Rep {
        let r = Rep { alg, dims, maps };
        debug_assert!(r.validate().is_ok(), "{:?}", r.validate());
        r
    }

    pub fn validate(&self) -> Result<()> {
        let a = &self.alg;
        if self.dims.len() != a.num_vertices() || self.maps.len() != a.num_arrows() {
            return Err(Error::InvalidRepresentation("dimension vector or map list has wrong length".into()));
        }
        for (i, ar) in a.arrows().iter().enumerate() {
            if self.maps[i].shape() != (self.dims[ar.target], self.dims[ar.source]) {
                return Err(Error::InvalidRepresentation(format!("map of arrow {} has wrong shape", ar.id)));
            }
        }
        for r in a.relations() {
            if !self.act(r).is_zero() {
                return Err(Error::InvalidRepresentation(format!(
                    "relation {:?} does not act as zero",
                    a.path_names(r)
                )));
            }
        }
        Ok(())
    }

    pub fn zero(alg: &Arc<Algebra>) -> Rep {
        let dims = vec![0; alg.num_vertices()];
        let maps = alg.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect();
        Rep { alg: alg.clone(), dims, maps }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn map(&self, a: usize) -> &Matrix {
        &self.maps[a]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.dims.len()).filter(|&v| self.dims[v] > 0).collect()
    }

    pub fn dim_string(&self) -> String {
        self.dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn same_algebra(&self, other: &Rep) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) || *self.alg == *other.alg
    }

    /// Matrix of the action of an arrow sequence (left to right).
    pub fn act(&self, arrows: &[usize]) -> Matrix {
        let Some(&first) = arrows.first() else {
            panic!("act needs a non-empty path");
        };
        let mut m = self.maps[first].clone();
        for &a in &arrows[1..] {
            if m.is_zero() {
                let t = self.alg.arrows()[a].target;
                return Matrix::zeros(self.dims[t], m.cols());
            }
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Image of `x ∈ M_start` under the action of a surviving path.
    pub fn act_vec(&self, arrows: &[usize], x: &[Q]) -> Vec<Q> {
        let mut v = x.to_vec();
        for &a in arrows {
            v = self.maps[a].mul_vec(&v);
        }
        v
    }

    pub fn with_algebra(&self, alg: Arc<Algebra>) -> Rep {
        debug_assert!(*alg == *self.alg);
        Rep { alg, dims: self.dims.clone(), maps: self.maps.clone() }
    }

    pub fn simple(alg: &Arc<Algebra>, v: usize) -> Rep {
        let mut dims = vec![0; alg.num_vertices()];
        dims[v] = 1;
        Rep::from_dims_zero_maps(alg, dims)
    }

    fn from_dims_zero_maps(alg: &Arc<Algebra>, dims: Vec<usize>) -> Rep {
        let maps = alg.arrows().iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source])).collect();
        Rep { alg: alg.clone(), dims, maps }
    }

    /// P(v): basis at w = surviving paths v ⇝ w; arrows append.
    pub fn projective(alg: &Arc<Algebra>, v: usize) -> Rep {
        let n = alg.num_vertices();
        let mut basis: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &p in alg.paths_from(v) {
            basis[alg.path(p).end].push(p);
        }
        let pos = |w: usize, p: usize| basis[w].iter().position(|&x| x == p).unwrap();
        let dims: Vec<usize> = basis.iter().map(|b| b.len()).collect();
        let mut maps: Vec<Matrix> =
            alg.arrows().iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source])).collect();
        for (ai, a) in alg.arrows().iter().enumerate() {
            for (j, &p) in basis[a.source].iter().enumerate() {
                if let Some(q) = alg.extend(p, ai) {
                    maps[ai][(pos(a.target, q), j)] = Q::one();
                }
            }
        }
        Rep::new_unchecked(alg.clone(), dims, maps)
    }

    /// I(v): basis at w = surviving paths w ⇝ v; arrow a strips a leading a.
    pub fn injective(alg: &Arc<Algebra>, v: usize) -> Rep {
        let n = alg.num_vertices();
        let mut basis: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &p in alg.paths_to(v) {
            basis[alg.path(p).start].push(p);
        }
        let dims: Vec<usize> = basis.iter().map(|b| b.len()).collect();
        let mut maps: Vec<Matrix> =
            alg.arrows().iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source])).collect();
        for (ai, a) in alg.arrows().iter().enumerate() {
            for (j, &p) in basis[a.source].iter().enumerate() {
                let path = alg.path(p);
                if path.arrows.first() == Some(&ai) {
                    let rest = alg.path_id(a.target, &path.arrows[1..]).expect("subpath survives");
                    let i = basis[a.target].iter().position(|&x| x == rest).unwrap();
                    maps[ai][(i, j)] = Q::one();
                }
            }
        }
        Rep::new_unchecked(alg.clone(), dims, maps)
    }

    pub fn standard(alg: &Arc<Algebra>, v: usize, kind: ModuleKind) -> Rep {
        match kind {
            ModuleKind::Projective => Rep::projective(alg, v),
            ModuleKind::Injective => Rep::injective(alg, v),
            ModuleKind::Simple => Rep::simple(alg, v),
        }
    }

    /// Thin module: one-dimensional on each support vertex, identity on every
    /// arrow inside the support.
    pub fn thin(alg: &Arc<Algebra>, support: &[usize]) -> Result<Rep> {
        let mut dims = vec![0; alg.num_vertices()];
        for &v in support {
            dims[v] = 1;
        }
        let maps = alg
            .arrows()
            .iter()
            .map(|a| {
                if dims[a.source] == 1 && dims[a.target] == 1 {
                    Matrix::identity(1)
                } else {
                    Matrix::zeros(dims[a.target], dims[a.source])
                }
            })
            .collect();
        Rep::new(alg.clone(), dims, maps)
    }

    pub fn direct_sum(alg: &Arc<Algebra>, parts: &[&Rep]) -> Rep {
        let n = alg.num_vertices();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let maps = (0..alg.num_arrows())
            .map(|a| {
                let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.maps[a]).collect();
                Matrix::block_diag(&blocks)
            })
            .collect();
        Rep { alg: alg.clone(), dims, maps }
    }

    /// Vector space dual, a representation of the opposite algebra.
    pub fn dual(&self) -> Rep {
        let op = self.alg.opposite();
        Rep { alg: op, dims: self.dims.clone(), maps: self.maps.iter().map(|m| m.transpose()).collect() }
    }

    /// Dual of a representation of `alg.opposite()`, as a representation of `alg`.
    pub fn dual_over(&self, alg: &Arc<Algebra>) -> Rep {
        Rep { alg: alg.clone(), dims: self.dims.clone(), maps: self.maps.iter().map(|m| m.transpose()).collect() }
    }

    /// Subrepresentation spanned at each vertex by the columns of `basis[v]`,
    /// which must be independent and closed under the action.
    pub fn subrep(&self, basis: &[Matrix]) -> Rep {
        let lefts: Vec<Matrix> = basis.iter().map(|b| b.left_inverse()).collect();
        let dims: Vec<usize> = basis.iter().map(|b| b.cols()).collect();
        let maps = self
            .alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let img = self.maps[i].mul(&basis[a.source]);
                let x = lefts[a.target].mul(&img);
                debug_assert_eq!(basis[a.target].mul(&x), img, "subspace not closed");
                x
            })
            .collect();
        Rep::new_unchecked(self.alg.clone(), dims, maps)
    }

    /// Quotient by the subrepresentation spanned by `basis`. Returns the
    /// quotient and the projection.
    pub fn quotient(&self, basis: &[Matrix]) -> (Rep, Morphism) {
        let n = self.dims.len();
        let mut proj = Vec::with_capacity(n);
        let mut lifts = Vec::with_capacity(n);
        for v in 0..n {
            let comp = basis[v].complement_units();
            let c = Matrix::unit_columns(self.dims[v], &comp);
            let full = basis[v].hstack(&c);
            let inv = full.inverse().expect("basis plus complement is invertible");
            let k = basis[v].cols();
            proj.push(inv.block(k, 0, comp.len(), self.dims[v]));
            lifts.push(c);
        }
        let dims: Vec<usize> = proj.iter().map(|p| p.rows()).collect();
        let maps = self
            .alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| proj[a.target].mul(&self.maps[i]).mul(&lifts[a.source]))
            .collect();
        (Rep::new_unchecked(self.alg.clone(), dims, maps), Morphism { maps: proj })
    }

    pub fn to_json(&self) -> Value {
        let a = &self.alg;
        json!({
            "dims": a.vertices().iter().zip(&self.dims).map(|(v, d)| (v.clone(), json!(d))).collect::<serde_json::Map<_, _>>(),
            "maps": a.arrows().iter().zip(&self.maps).map(|(ar, m)| {
                (ar.id.clone(), json!(m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()))
            }).collect::<serde_json::Map<_, _>>(),
        })
    }

    /// Parse the dump format, or the shortcut `{"thin": [vertices]}`.
    pub fn from_json(alg: &Arc<Algebra>, v: &Value) -> Result<Rep> {
        let perr = |m: &str| Error::Parse(m.to_string());
        if let Some(t) = v.get("thin") {
            let sup = t
                .as_array()
                .ok_or_else(|| perr("thin must be an array"))?
                .iter()
                .map(|x| x.as_str().ok_or_else(|| perr("thin entries must be strings")).and_then(|s| alg.vertex(s)))
                .collect::<Result<Vec<_>>>()?;
            return Rep::thin(alg, &sup);
        }
        let dmap = v.get("dims").and_then(Value::as_object).ok_or_else(|| perr("missing dims"))?;
        let mut dims = vec![0; alg.num_vertices()];
        for (k, d) in dmap {
            dims[alg.vertex(k)?] = d.as_u64().ok_or_else(|| perr("dims must be integers"))? as usize;
        }
        let mut maps: Vec<Matrix> =
            alg.arrows().iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source])).collect();
        if let Some(mm) = v.get("maps").and_then(Value::as_object) {
            for (k, m) in mm {
                let ai = alg.arrow(k)?;
                let rows = m.as_array().ok_or_else(|| perr("matrix must be an array of rows"))?;
                let mut parsed = Vec::new();
                for r in rows {
                    let r = r.as_array().ok_or_else(|| perr("matrix row must be an array"))?;
                    parsed.push(
                        r.iter()
                            .map(|x| match x {
                                Value::String(s) => s.parse::<Q>().map_err(|e| Error::Parse(e.to_string())),
                                Value::Number(n) => n.to_string().parse::<Q>().map_err(|e| Error::Parse(e.to_string())),
                                _ => Err(perr("matrix entries must be rational strings")),
                            })
                            .collect::<Result<Vec<_>>>()?,
                    );
                }
                let a = &alg.arrows()[ai];
                let mat = if parsed.is_empty() { Matrix::zeros(dims[a.target], dims[a.source]) } else { Matrix::from_rows(parsed) };
                maps[ai] = mat;
            }
        }
        Rep::new(alg.clone(), dims, maps)
    }
}

impl Morphism {
    pub fn zero(m: &Rep, n: &Rep) -> Morphism {
        Morphism { maps: (0..m.dims.len()).map(|v| Matrix::zeros(n.dims[v], m.dims[v])).collect() }
    }

    pub fn identity(m: &Rep) -> Morphism {
        Morphism { maps: m.dims.iter().map(|&d| Matrix::identity(d)).collect() }
    }

    pub fn is_morphism(&self, m: &Rep, n: &Rep) -> bool {
        m.alg.arrows().iter().enumerate().all(|(i, a)| {
            self.maps[a.target].mul(&m.maps[i]) == n.maps[i].mul(&self.maps[a.source])
        })
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Morphism) -> Morphism {
        Morphism { maps: self.maps.iter().zip(&first.maps).map(|(g, f)| g.mul(f)).collect() }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        Morphism { maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, s: &Q) -> Morphism {
        Morphism { maps: self.maps.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(|m| m.is_zero())
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(|m| m.is_invertible())
    }

    pub fn inverse(&self) -> Option<Morphism> {
        Some(Morphism { maps: self.maps.iter().map(|m| m.inverse()).collect::<Option<Vec<_>>>()? })
    }

    pub fn rank(&self) -> usize {
        self.maps.iter().map(|m| m.rank()).sum()
    }

    /// Kernel as subrepresentation of the source, with its basis.
    pub fn kernel(&self, src: &Rep) -> (Rep, Vec<Matrix>) {
        let basis: Vec<Matrix> = self.maps.iter().map(|m| m.kernel()).collect();
        (src.subrep(&basis), basis)
    }

    /// Image as subrepresentation of the target, with its basis.
    pub fn image(&self, tgt: &Rep) -> (Rep, Vec<Matrix>) {
        let basis: Vec<Matrix> = self.maps.iter().map(|m| m.column_basis()).collect();
        (tgt.subrep(&basis), basis)
    }

    pub fn cokernel(&self, tgt: &Rep) -> (Rep, Morphism) {
        let basis: Vec<Matrix> = self.maps.iter().map(|m| m.column_basis()).collect();
        tgt.quotient(&basis)
    }

    /// Flattened coordinates, used for linear-independence tests.
    pub fn flatten(&self) -> Vec<Q> {
        self.maps.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }
}

struct HomSystem {
    offsets: Vec<usize>,
    nvars: usize,
    matrix: Matrix,
}

fn hom_system(m: &Rep, n: &Rep) -> HomSystem {
    let a = &m.alg;
    let nv = a.num_vertices();
    let mut offsets = vec![0; nv];
    let mut nvars = 0;
    for v in 0..nv {
        offsets[v] = nvars;
        nvars += m.dims[v] * n.dims[v];
    }
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (ai, ar) in a.arrows().iter().enumerate() {
        let (s, t) = (ar.source, ar.target);
        let (dms, dmt, dns, dnt) = (m.dims[s], m.dims[t], n.dims[s], n.dims[t]);
        if dms == 0 || dnt == 0 {
            continue;
        }
        let ma = &m.maps[ai];
        let na = &n.maps[ai];
        for i in 0..dnt {
            for j in 0..dms {
                let mut row = vec![Q::zero(); nvars];
                let mut nonzero = false;
                for k in 0..dmt {
                    let c = &ma[(k, j)];
                    if !c.is_zero() {
                        let idx = offsets[t] + i * dmt + k;
                        row[idx] = &row[idx] + c;
                        nonzero = true;
                    }
                }
                for k in 0..dns {
                    let c = &na[(i, k)];
                    if !c.is_zero() {
                        let idx = offsets[s] + k * dms + j;
                        row[idx] = &row[idx] - c;
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }
    let matrix = if rows.is_empty() { Matrix::zeros(0, nvars) } else { Matrix::from_rows(rows) };
    HomSystem { offsets, nvars, matrix }
}

pub fn hom_dim(m: &Rep, n: &Rep) -> usize {
    assert!(m.same_algebra(n), "algebra mismatch");
    let sys = hom_system(m, n);
    sys.nvars - sys.matrix.rank()
}

pub fn hom_basis(m: &Rep, n: &Rep) -> Result<Vec<Morphism>> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let sys = hom_system(m, n);
    let k = if sys.matrix.rows() == 0 { Matrix::identity(sys.nvars) } else { sys.matrix.kernel() };
    let nv = m.dims.len();
    let mut out = Vec::with_capacity(k.cols());
    for c in 0..k.cols() {
        let maps = (0..nv)
            .map(|v| {
                let (r, cc) = (n.dims[v], m.dims[v]);
                let mut f = Matrix::zeros(r, cc);
                for i in 0..r {
                    for j in 0..cc {
                        f[(i, j)] = k[(sys.offsets[v] + i * cc + j, c)].clone();
                    }
                }
                f
            })
            .collect();
        out.push(Morphism { maps });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_algebra;

    fn a3() -> Arc<Algebra> {
        Arc::new(
            parse_algebra(
                r#"{"vertices":["1","2","3"],"arrows":[{"id":"a","from":"1","to":"2"},{"id":"b","from":"2","to":"3"}],"relations":[["a","b"]]}"#,
            )
            .unwrap(),
        )
    }

    #[test]
    fn standard_modules() {
        let a = a3();
        assert_eq!(Rep::projective(&a, 0).dims(), &[1, 1, 0]);
        assert_eq!(Rep::injective(&a, 0).dims(), &[1, 0, 0]);
        assert_eq!(Rep::injective(&a, 2).dims(), &[0, 1, 1]);
    }

    #[test]
    fn hom_examples() {
        let a = a3();
        let p1 = Rep::projective(&a, 0);
        let s1 = Rep::simple(&a, 0);
        assert_eq!(hom_dim(&p1, &p1), 1);
        assert_eq!(hom_dim(&p1, &s1), 1);
        assert_eq!(hom_dim(&s1, &p1), 0);
        for f in hom_basis(&p1, &s1).unwrap() {
            assert!(f.is_morphism(&p1, &s1));
        }
    }

    #[test]
    fn relation_violation_rejected() {
        let a = a3();
        let maps = vec![Matrix::identity(1), Matrix::identity(1)];
        assert!(Rep::new(a.clone(), vec![1, 1, 1], maps).is_err());
        assert!(Rep::thin(&a, &[0, 1, 2]).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let a = a3();
        let p = Rep::projective(&a, 1);
        let q = Rep::from_json(&a, &p.to_json()).unwrap();
        assert_eq!(q.dims(), p.dims());
        assert_eq!(q.maps(), p.maps());
    }

    #[test]
    fn quotient_and_kernel() {
        let a = a3();
        let p1 = Rep::projective(&a, 0);
        let s1 = Rep::simple(&a, 0);
        let f = hom_basis(&p1, &s1).unwrap().remove(0);
        let (k, _) = f.kernel(&p1);
        assert_eq!(k.dims(), &[0, 1, 0]);
        let (c, _) = f.cokernel(&s1);
        assert!(c.is_zero());
    }
}
