use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use arglue_core::abutment::Fracturing;
use arglue_core::algebra::{algebra_from_json, parse_algebra};
use arglue_core::{Algebra, ArmDir, Rep};
use serde_json::Value;

#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

pub type InResult<T> = std::result::Result<T, InputError>;

/// Files read so far, for the report digest.
#[derive(Default)]
pub struct Inputs {
    pub bytes: Vec<u8>,
}

impl Inputs {
    pub fn read(&mut self, path: &Path) -> InResult<String> {
        let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        self.bytes.extend_from_slice(path.to_string_lossy().as_bytes());
        self.bytes.push(0);
        self.bytes.extend_from_slice(text.as_bytes());
        Ok(text)
    }

    pub fn algebra(&mut self, path: &Path) -> InResult<Algebra> {
        let text = self.read(path)?;
        parse_algebra(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
    }

    pub fn json(&mut self, path: &Path) -> InResult<Value> {
        let text = self.read(path)?;
        serde_json::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
    }

    /// Inline algebra object, or a path string relative to `base`.
    pub fn algebra_value(&mut self, v: &Value, base: &Path) -> InResult<Algebra> {
        match v {
            Value::String(s) => self.algebra(&resolve(base, s)),
            other => Ok(algebra_from_json(other)?),
        }
    }
}

pub fn resolve(base: &Path, rel: &str) -> PathBuf {
    let p = Path::new(rel);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

pub fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

/// A check document: the algebra, an optional module list, fracturing and self-gluing pairs.
pub struct CheckDoc {
    pub algebra: Arc<Algebra>,
    pub modules: Option<Vec<Rep>>,
    pub fracturing: Fracturing,
    pub pairs: Option<Vec<(usize, usize)>>,
}

pub fn check_doc(inputs: &mut Inputs, path: &Path) -> InResult<CheckDoc> {
    let v = inputs.json(path)?;
    let base = base_dir(path);
    let algebra = Arc::new(inputs.algebra_value(v.get("algebra").ok_or_else(|| InputError("missing \"algebra\"".into()))?, &base)?);
    let modules = match v.get("modules") {
        None | Some(Value::Null) => None,
        Some(Value::Array(xs)) => Some(xs.iter().map(|x| Rep::from_json(&algebra, x)).collect::<Result<Vec<_>, _>>()?),
        Some(_) => return Err(InputError("\"modules\" must be an array".into())),
    };
    let fracturing = match v.get("fracturing") {
        None | Some(Value::Null) => Fracturing::trivial(&algebra),
        Some(f) => Fracturing::from_json(&algebra, f)?,
    };
    let pairs = match v.get("pairs") {
        None | Some(Value::Null) => None,
        Some(Value::Array(xs)) => Some(
            xs.iter()
                .map(|p| {
                    let get = |k: usize| {
                        p.get(k).and_then(Value::as_str).ok_or_else(|| InputError("pairs are [P vertex, I vertex]".into()))
                    };
                    Ok((algebra.vertex(get(0)?)?, algebra.vertex(get(1)?)?))
                })
                .collect::<InResult<Vec<_>>>()?,
        ),
        Some(_) => return Err(InputError("\"pairs\" must be an array".into())),
    };
    Ok(CheckDoc { algebra, modules, fracturing, pairs })
}

pub fn parse_arm(s: &str) -> InResult<(usize, ArmDir)> {
    let (m, d) = s.split_once(':').ok_or_else(|| InputError(format!("arm {s:?} is not LEN:in or LEN:out")))?;
    let m: usize = m.trim().parse().map_err(|_| InputError(format!("arm length {m:?}")))?;
    let d = match d.trim() {
        "in" => ArmDir::In,
        "out" => ArmDir::Out,
        other => return Err(InputError(format!("arm direction {other:?}"))),
    };
    Ok((m, d))
}

pub fn parse_pair(s: &str) -> InResult<(String, String)> {
    let (p, i) = s.split_once(':').ok_or_else(|| InputError(format!("pair {s:?} is not P:I")))?;
    Ok((p.to_string(), i.to_string()))
}
