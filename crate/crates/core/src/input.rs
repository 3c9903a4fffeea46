//! Algebra spec documents: the JSON input format consumed by the CLI.
//!
//! ```json
//! {
//!   "field": "Q",
//!   "generators": ["x", "y"],
//!   "relations": [[{"coeff": "1", "word": ["x", "y"]},
//!                  {"coeff": "-2", "word": ["y", "x"]}]],
//!   "automorphism": [["1", "0"], ["0", "1"]]
//! }
//! ```
//!
//! `field` is `"Q"` or `{"Fp": p}`; coefficients are rational literals
//! (`"a"` or `"a/b"`); relation words name two generators; the optional
//! automorphism matrix acts on the generator space.

use serde::Deserialize;

use crate::algebra::QuadraticPresentation;
use crate::error::Error;
use crate::kernel::{Field, SparseMatrix};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub field: FieldSpec,
    pub generators: Vec<String>,
    pub relations: Vec<Vec<RelationTerm>>,
    #[serde(default)]
    pub automorphism: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Prime { #[serde(rename = "Fp")] fp: u64 },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationTerm {
    pub coeff: String,
    pub word: [String; 2],
}

impl AlgebraSpec {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("algebra spec parse error: {e}")))
    }

    pub fn field(&self) -> Result<Field, Error> {
        let f = match &self.field {
            FieldSpec::Named(s) if s == "Q" => Field::Q,
            FieldSpec::Named(s) => {
                return Err(Error::InvalidInput(format!(
                    "unknown field {s:?}; use \"Q\" or {{\"Fp\": p}}"
                )))
            }
            FieldSpec::Prime { fp } => Field::Fp(*fp),
        };
        f.validate()?;
        Ok(f)
    }

    fn generator_index(&self, name: &str) -> Result<usize, Error> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown generator {name:?}")))
    }

    pub fn presentation(&self) -> Result<QuadraticPresentation, Error> {
        let field = self.field()?;
        let mut relations = Vec::new();
        for (ri, rel) in self.relations.iter().enumerate() {
            let mut terms = Vec::new();
            for t in rel {
                let c = field.parse(&t.coeff).map_err(|e| {
                    Error::InvalidInput(format!("relation {ri}: {e}"))
                })?;
                let i = self.generator_index(&t.word[0])?;
                let j = self.generator_index(&t.word[1])?;
                terms.push((c, [i, j]));
            }
            relations.push(terms);
        }
        QuadraticPresentation::new(field, self.generators.clone(), relations)
    }

    /// The declared generator automorphism, defaulting to the identity.
    pub fn automorphism_matrix(&self) -> Result<SparseMatrix, Error> {
        let field = self.field()?;
        let n = self.generators.len();
        match &self.automorphism {
            None => Ok(SparseMatrix::identity(field, n)),
            Some(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::InvalidInput(format!(
                        "automorphism matrix must be {n}x{n}"
                    )));
                }
                let mut m = SparseMatrix::zero(field, n, n);
                for (i, row) in rows.iter().enumerate() {
                    for (j, lit) in row.iter().enumerate() {
                        m.set(i, j, field.parse(lit)?);
                    }
                }
                Ok(m)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_quantum_plane_document() {
        let text = r#"{
            "field": "Q",
            "generators": ["x", "y"],
            "relations": [[{"coeff": "1", "word": ["x", "y"]},
                           {"coeff": "-2", "word": ["y", "x"]}]]
        }"#;
        let spec = AlgebraSpec::from_json(text).unwrap();
        let pres = spec.presentation().unwrap();
        assert_eq!(pres.relation_count(), 1);
        assert!(spec.automorphism_matrix().unwrap().get(0, 0).is_one());
    }

    #[test]
    fn parses_prime_field_document() {
        let text = r#"{
            "field": {"Fp": 1009},
            "generators": ["x"],
            "relations": []
        }"#;
        let spec = AlgebraSpec::from_json(text).unwrap();
        assert_eq!(spec.field().unwrap(), Field::Fp(1009));
    }

    #[test]
    fn rejects_unknown_generator() {
        let text = r#"{
            "field": "Q",
            "generators": ["x"],
            "relations": [[{"coeff": "1", "word": ["x", "z"]}]]
        }"#;
        let spec = AlgebraSpec::from_json(text).unwrap();
        assert!(spec.presentation().is_err());
    }
}
