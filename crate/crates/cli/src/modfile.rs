//! JSON interchange for module matrices, with rationals written as `"p/q"` strings.

use std::collections::BTreeMap;
use std::str::FromStr;

use ellreg_core::dahacheck::{AffinePresentation, ModuleData, RMat};
use ellreg_core::{RootDatum, TypeLabel};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    #[serde(rename = "type")]
    pub label: String,
    pub rank: usize,
    pub c: String,
    pub dim: usize,
    #[serde(rename = "S")]
    pub s: BTreeMap<String, Vec<Vec<Value>>>,
    #[serde(rename = "Xi")]
    pub xi: BTreeMap<String, Vec<Vec<Value>>>,
}

fn parse_rational(v: &Value) -> Result<BigRational, CliError> {
    let text = match v {
        Value::String(s) => s.trim().to_string(),
        Value::Number(n) if n.is_i64() => n.to_string(),
        other => {
            return Err(CliError::Module(format!(
                "expected a rational, found {other}"
            )))
        }
    };
    BigRational::from_str(&text).map_err(|_| CliError::Module(format!("bad rational {text:?}")))
}

fn parse_matrix(name: &str, rows: &[Vec<Value>], dim: usize) -> Result<RMat, CliError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(CliError::Module(format!(
            "matrix {name} is not {dim}x{dim}"
        )));
    }
    rows.iter()
        .map(|r| r.iter().map(parse_rational).collect())
        .collect()
}

fn write_matrix(m: &RMat) -> Vec<Vec<Value>> {
    m.iter()
        .map(|r| r.iter().map(|x| Value::String(x.to_string())).collect())
        .collect()
}

impl ModuleFile {
    pub fn parse(text: &str) -> Result<ModuleFile, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Builds the exact module; missing `S` or `Xi` entries are errors.
    pub fn to_module(&self) -> Result<ModuleData, CliError> {
        let label = TypeLabel::from_str(&self.label)?;
        let d = RootDatum::build(label, self.rank)?;
        let pres = AffinePresentation::new(&d);
        let kappa = parse_rational(&Value::String(self.c.clone()))?;
        let mut s = Vec::new();
        for i in 0..=self.rank {
            let key = i.to_string();
            let rows = self
                .s
                .get(&key)
                .ok_or_else(|| CliError::Module(format!("missing S[{key}]")))?;
            s.push(parse_matrix(&format!("S[{key}]"), rows, self.dim)?);
        }
        let mut xi = Vec::new();
        for name in pres.basis_names() {
            let rows = self
                .xi
                .get(&name)
                .ok_or_else(|| CliError::Module(format!("missing Xi[{name}]")))?;
            xi.push(parse_matrix(&format!("Xi[{name}]"), rows, self.dim)?);
        }
        let known = self.s.len() + self.xi.len();
        if known != 2 * (self.rank + 1) {
            return Err(CliError::Module(format!(
                "expected {} S entries and {} Xi entries",
                self.rank + 1,
                self.rank + 1
            )));
        }
        Ok(ModuleData {
            label,
            rank: self.rank,
            kappa,
            dim: self.dim,
            s,
            xi,
        })
    }

    pub fn from_module(m: &ModuleData) -> Result<ModuleFile, CliError> {
        let d = RootDatum::build(m.label, m.rank)?;
        let names = AffinePresentation::new(&d).basis_names();
        Ok(ModuleFile {
            label: m.label.to_string(),
            rank: m.rank,
            c: m.kappa.to_string(),
            dim: m.dim,
            s: m.s
                .iter()
                .enumerate()
                .map(|(i, a)| (i.to_string(), write_matrix(a)))
                .collect(),
            xi: names
                .into_iter()
                .zip(&m.xi)
                .map(|(n, a)| (n, write_matrix(a)))
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ellreg_core::dahacheck::builtin_modules;

    #[test]
    fn round_trip_catalog() {
        for cm in builtin_modules() {
            let f = ModuleFile::from_module(&cm.module).unwrap();
            let text = serde_json::to_string(&f).unwrap();
            let back = ModuleFile::parse(&text).unwrap().to_module().unwrap();
            assert_eq!(back, cm.module, "{}", cm.name);
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        let text = r#"{"type":"A","rank":1,"c":"1/2","dim":1,
            "S":{"0":[["-1"]],"1":[["-1"]]},"Xi":{"o1":[["1/2","0"]],"delta":[["1"]]}}"#;
        assert!(ModuleFile::parse(text).unwrap().to_module().is_err());
        let text = r#"{"type":"A","rank":1,"c":"x","dim":1,
            "S":{"0":[["-1"]],"1":[["-1"]]},"Xi":{"o1":[["1/2"]],"delta":[["1"]]}}"#;
        assert!(ModuleFile::parse(text).unwrap().to_module().is_err());
    }
}
