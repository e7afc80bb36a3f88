use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactalg::IntMatrix;
use crate::grouprep::{catalog_entry, CatalogEntry, Rep};
use crate::repdecomp::CharacterTable;

type Matrix = Vec<Vec<i64>>;

/// On-disk representation: a JSON document with integer entries only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character_table: Option<CharacterTable>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub commutant_examples: Vec<Matrix>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub invariant_examples: Vec<Matrix>,
}

fn to_rows(m: &IntMatrix) -> Result<Matrix> {
    m.to_i64_rows()
        .ok_or_else(|| Error::Invalid("matrix entry does not fit in 64 bits".into()))
}

fn from_rows(rows: &Matrix, degree: usize) -> Result<IntMatrix> {
    if rows.len() != degree {
        return Err(Error::DimensionMismatch {
            expected: degree,
            got: rows.len(),
        });
    }
    if let Some(r) = rows.iter().find(|r| r.len() != degree) {
        return Err(Error::DimensionMismatch {
            expected: degree,
            got: r.len(),
        });
    }
    IntMatrix::from_i64_rows(rows)
}

impl RepFile {
    pub fn from_entry(entry: &CatalogEntry) -> Result<RepFile> {
        let all = |ms: &[IntMatrix]| ms.iter().map(to_rows).collect::<Result<Vec<_>>>();
        Ok(RepFile {
            name: entry.rep.name().to_string(),
            degree: entry.rep.degree(),
            generators: all(entry.rep.generators())?,
            character_table: entry.table.clone(),
            commutant_examples: all(&entry.commutant_examples)?,
            invariant_examples: all(&entry.invariant_examples)?,
        })
    }

    pub fn from_json(text: &str) -> Result<RepFile> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Build the representation, checking shapes, finiteness and the
    /// character table against the group.
    pub fn into_entry(self, config: &Config) -> Result<CatalogEntry> {
        if self.generators.is_empty() {
            return Err(Error::Invalid("no generators".into()));
        }
        let gens = self
            .generators
            .iter()
            .map(|g| from_rows(g, self.degree))
            .collect::<Result<Vec<_>>>()?;
        let rep = Rep::with_config(self.name, gens, config)?;
        if let Some(t) = &self.character_table {
            t.validate()?;
            t.align(&rep)?;
        }
        let mats = |ms: &[Matrix]| ms.iter().map(|m| from_rows(m, self.degree)).collect::<Result<Vec<_>>>();
        Ok(CatalogEntry {
            commutant_examples: mats(&self.commutant_examples)?,
            invariant_examples: mats(&self.invariant_examples)?,
            rep,
            table: self.character_table,
        })
    }
}

/// Resolve a representation argument: `catalog:<name>` or a path to a
/// representation file.
pub fn load_rep_arg(arg: &str, config: &Config) -> Result<CatalogEntry> {
    if let Some(name) = arg.strip_prefix("catalog:") {
        return catalog_entry(name, config.element_bound);
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(Error::Invalid(format!(
            "`{arg}` is neither catalog:<name> nor an existing file"
        )));
    }
    let text = std::fs::read_to_string(path)?;
    RepFile::from_json(&text)?.into_entry(config)
}
