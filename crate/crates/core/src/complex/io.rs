//! The JSON interchange format for complexes.
//!
//! ```json
//! { "field": "GF2",
//!   "degrees": [ { "degree": 0, "generators": [ { "name": "p1", "filtration": 1 } ] } ],
//!   "boundaries": [ { "degree": 1, "columns": [ { "source": "p3", "targets": ["p1", "p2"] } ] } ] }
//! ```
//!
//! Omitted columns are zero. Serialization is canonical: degrees ascending,
//! generators in stored order, nonzero columns sorted by source name and
//! targets sorted by name.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{ComplexError, FilteredComplex};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    field: String,
    degrees: Vec<DegreeDoc>,
    #[serde(default)]
    boundaries: Vec<BoundaryDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DegreeDoc {
    degree: i32,
    generators: Vec<GeneratorDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorDoc {
    name: String,
    filtration: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundaryDoc {
    degree: i32,
    columns: Vec<ColumnDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColumnDoc {
    source: String,
    targets: Vec<String>,
}

/// Parses a complex document. The result is structurally sound (names
/// resolve, shapes agree, filtrations finite) but not yet validated against
/// the chain-complex axioms; see [`FilteredComplex::validate`].
pub fn parse(text: &[u8]) -> Result<FilteredComplex, ComplexError> {
    let doc: Document = serde_json::from_slice(text).map_err(|e| {
        let position = format!(" at line {} column {}", e.line(), e.column());
        let full = e.to_string();
        ComplexError::Syntax {
            line: e.line(),
            column: e.column(),
            message: full.strip_suffix(&position).unwrap_or(&full).to_string(),
        }
    })?;
    if doc.field != "GF2" {
        return Err(ComplexError::UnsupportedField(doc.field));
    }
    let mut seen = HashSet::new();
    let mut builder = FilteredComplex::builder();
    for d in &doc.degrees {
        if !seen.insert(d.degree) {
            return Err(ComplexError::DuplicateDegree(d.degree));
        }
        for g in &d.generators {
            builder.generator(g.name.clone(), d.degree, g.filtration);
        }
    }
    for b in &doc.boundaries {
        for col in &b.columns {
            builder.boundary(b.degree, &col.source, &col.targets);
        }
    }
    builder.build()
}

pub fn serialize(c: &FilteredComplex) -> Vec<u8> {
    let degrees = c
        .degrees()
        .map(|k| DegreeDoc {
            degree: k,
            generators: c
                .generators(k)
                .iter()
                .map(|g| GeneratorDoc {
                    name: g.name.clone(),
                    filtration: g.filtration,
                })
                .collect(),
        })
        .collect();
    let mut boundaries = Vec::new();
    for k in c.degrees() {
        let d = c.boundary(k);
        let lower = c.generators(k - 1);
        let mut columns: Vec<ColumnDoc> = c
            .generators(k)
            .iter()
            .enumerate()
            .filter(|(j, _)| !d.column(*j).is_zero())
            .map(|(j, g)| {
                let mut targets: Vec<String> =
                    d.column(j).ones().map(|i| lower[i].name.clone()).collect();
                targets.sort();
                ColumnDoc {
                    source: g.name.clone(),
                    targets,
                }
            })
            .collect();
        if columns.is_empty() {
            continue;
        }
        columns.sort_by(|a, b| a.source.cmp(&b.source));
        boundaries.push(BoundaryDoc { degree: k, columns });
    }
    let doc = Document {
        field: "GF2".to_string(),
        degrees,
        boundaries,
    };
    let mut out = serde_json::to_vec_pretty(&doc).expect("complex documents always serialize");
    out.push(b'\n');
    out
}
