//! Catalog files: self-describing JSON and flat CSV.

use std::io::{Read, Write};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use wildprim::tower::TameTower;
use wildprim::{Characteristic, ExtensionRecord};

/// Bumped whenever a field is renamed, removed or changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub tool_version: String,
    pub base: String,
    pub p: u32,
    pub f: usize,
    pub characteristic: Characteristic,
    pub n: u32,
    pub level_bound: Option<usize>,
    /// Working precision in powers of the tower uniformizer (characteristic 0).
    pub precision: Option<usize>,
    pub seed: u64,
    /// Coefficients (constant first) of the defining polynomial of the tower residue field over F_p.
    pub residue_modulus: Vec<u32>,
    /// Enumeration index of the chosen primitive `(p^n - 1)`-th root of unity in the residue field.
    pub zeta_index: u64,
    pub class_module_dimension: usize,
    pub record_count: usize,
}

impl Metadata {
    pub fn new(tower: &TameTower, level_bound: Option<usize>, seed: u64, dim: usize, records: usize) -> Self {
        let base = tower.base();
        let l = tower.residue_field();
        Self {
            tool: "wildprim".into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            base: base.name(),
            p: base.p,
            f: base.f,
            characteristic: base.characteristic,
            n: tower.n(),
            level_bound,
            precision: (base.characteristic == Characteristic::Zero).then(|| tower.precision()),
            seed,
            residue_modulus: l.modulus().to_vec(),
            zeta_index: l.index(tower.zeta()),
            class_module_dimension: dim,
            record_count: records,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogFile {
    pub schema_version: u32,
    pub metadata: Metadata,
    pub records: Vec<ExtensionRecord>,
}

impl CatalogFile {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let cat: CatalogFile = serde_json::from_str(s).context("parsing catalog JSON")?;
        anyhow::ensure!(cat.schema_version == SCHEMA_VERSION, "unsupported schema version {}", cat.schema_version);
        Ok(cat)
    }
}

/// Flat CSV row; the parameter basis is written as rows joined by `;`, entries by `.`.
#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    base: String,
    p: u32,
    f: usize,
    characteristic: Characteristic,
    n: u32,
    degree: u64,
    representation: String,
    representation_fingerprint: String,
    end_degree: usize,
    parameter_basis: String,
    filtration_index: usize,
    level: usize,
    differental_excess: usize,
    differental_exponent: usize,
    discriminant_exponent: usize,
    ramification_index: u64,
    image_order: u64,
    closure_order: u64,
    closure_label: String,
    unramified: bool,
    tres_ramifiee: bool,
}

fn encode_basis(rows: &[Vec<u8>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(u8::to_string).collect::<Vec<_>>().join("."))
        .collect::<Vec<_>>()
        .join(";")
}

fn decode_basis(s: &str) -> Result<Vec<Vec<u8>>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';')
        .map(|r| r.split('.').map(|x| x.parse::<u8>().with_context(|| format!("bad basis entry {x:?}"))).collect())
        .collect()
}

pub fn write_csv(records: &[ExtensionRecord], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(CsvRow {
            base: r.base.clone(),
            p: r.p,
            f: r.f,
            characteristic: r.characteristic,
            n: r.n,
            degree: r.degree,
            representation: r.representation.clone(),
            representation_fingerprint: r.representation_fingerprint.clone(),
            end_degree: r.end_degree,
            parameter_basis: encode_basis(&r.parameter_basis),
            filtration_index: r.filtration_index,
            level: r.level,
            differental_excess: r.differental_excess,
            differental_exponent: r.differental_exponent,
            discriminant_exponent: r.discriminant_exponent,
            ramification_index: r.ramification_index,
            image_order: r.image_order,
            closure_order: r.closure_order,
            closure_label: r.closure_label.clone().unwrap_or_default(),
            unramified: r.unramified,
            tres_ramifiee: r.tres_ramifiee,
        })?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(input: impl Read) -> Result<Vec<ExtensionRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for row in rd.deserialize() {
        let r: CsvRow = row?;
        out.push(ExtensionRecord {
            base: r.base,
            p: r.p,
            f: r.f,
            characteristic: r.characteristic,
            n: r.n,
            degree: r.degree,
            representation: r.representation,
            representation_fingerprint: r.representation_fingerprint,
            end_degree: r.end_degree,
            parameter_basis: decode_basis(&r.parameter_basis)?,
            filtration_index: r.filtration_index,
            level: r.level,
            differental_excess: r.differental_excess,
            differental_exponent: r.differental_exponent,
            discriminant_exponent: r.discriminant_exponent,
            ramification_index: r.ramification_index,
            image_order: r.image_order,
            closure_order: r.closure_order,
            closure_label: (!r.closure_label.is_empty()).then_some(r.closure_label),
            unramified: r.unramified,
            tres_ramifiee: r.tres_ramifiee,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_encoding_round_trips() {
        let b = vec![vec![0, 1, 12], vec![3, 0, 0]];
        assert_eq!(encode_basis(&b), "0.1.12;3.0.0");
        assert_eq!(decode_basis(&encode_basis(&b)).unwrap(), b);
        assert!(decode_basis("").unwrap().is_empty());
    }
}
