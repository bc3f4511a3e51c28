//! The `nsla-v1` text format: a JSON object describing an algebra and,
//! optionally, a representation of it.
//!
//! ```json
//! {
//!   "format": "nsla-v1",
//!   "field": "F3",
//!   "arity": 4,
//!   "alpha": 0,
//!   "basis": [{ "name": "b", "parity": 1 }, { "name": "c", "parity": 0 }],
//!   "brackets": [{ "args": ["b", "b", "b", "b"], "value": { "c": "1" } }]
//! }
//! ```
//!
//! Coefficients are always strings (`"2"`, `"-1/3"`). Bracket arguments are
//! non-decreasing in declared basis order. An optional `representation`
//! object carries a module basis and operator entries, each giving the image
//! of every module basis vector with a nonzero image.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{BasisElement, NLieSuperalgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::parity::Parity;
use crate::representation::Representation;
use crate::scalar::{Field, Scalar};

pub const FORMAT_TAG: &str = "nsla-v1";

/// A sparse vector: basis name to coefficient string.
pub type Coefficients = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub name: String,
    pub parity: Parity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub args: Vec<String>,
    pub value: Coefficients,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorEntry {
    pub args: Vec<String>,
    /// Module basis name to its image.
    pub images: BTreeMap<String, Coefficients>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationSection {
    pub module: Vec<BasisEntry>,
    pub operators: Vec<OperatorEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub format: String,
    pub field: String,
    pub arity: usize,
    pub alpha: Parity,
    pub basis: Vec<BasisEntry>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<RepresentationSection>,
}

fn parse_error(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn index_map(names: &[BasisEntry]) -> BTreeMap<&str, usize> {
    names
        .iter()
        .enumerate()
        .map(|(i, b)| (b.name.as_str(), i))
        .collect()
}

fn sparse(names: &[BasisElement], v: &[Scalar]) -> Coefficients {
    names
        .iter()
        .zip(v)
        .filter(|(_, x)| !x.is_zero())
        .map(|(b, x)| (b.name.clone(), x.to_string()))
        .collect()
}

fn dense(
    field: Field,
    index: &BTreeMap<&str, usize>,
    dim: usize,
    coeffs: &Coefficients,
) -> Result<Vec<Scalar>> {
    let mut v = vec![field.zero(); dim];
    for (name, c) in coeffs {
        let &j = index
            .get(name.as_str())
            .ok_or_else(|| parse_error(format!("unknown basis element {name:?}")))?;
        v[j] = field.parse_scalar(c)?;
    }
    Ok(v)
}

fn canonical_args(index: &BTreeMap<&str, usize>, args: &[String]) -> Result<Vec<usize>> {
    let idx = args
        .iter()
        .map(|a| {
            index
                .get(a.as_str())
                .copied()
                .ok_or_else(|| parse_error(format!("unknown basis element {a:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if idx.windows(2).any(|w| w[0] > w[1]) {
        return Err(parse_error(format!(
            "arguments {args:?} are not in declared basis order"
        )));
    }
    Ok(idx)
}

impl AlgebraFile {
    pub fn from_algebra(a: &NLieSuperalgebra) -> AlgebraFile {
        AlgebraFile {
            format: FORMAT_TAG.to_string(),
            field: a.field().to_string(),
            arity: a.arity(),
            alpha: a.alpha(),
            basis: a
                .basis()
                .iter()
                .map(|b| BasisEntry {
                    name: b.name.clone(),
                    parity: b.parity,
                })
                .collect(),
            brackets: a
                .entries()
                .map(|(t, v)| BracketEntry {
                    args: t.iter().map(|&i| a.name(i).to_string()).collect(),
                    value: sparse(a.basis(), v),
                })
                .collect(),
            representation: None,
        }
    }

    pub fn from_representation(rho: &Representation) -> AlgebraFile {
        let a = rho.algebra();
        let module = rho.module();
        let operators = rho
            .entries()
            .map(|(t, op)| OperatorEntry {
                args: t.iter().map(|&i| a.name(i).to_string()).collect(),
                images: module
                    .iter()
                    .enumerate()
                    .map(|(j, b)| (b.name.clone(), sparse(module, &op.column(j))))
                    .filter(|(_, img)| !img.is_empty())
                    .collect(),
            })
            .collect();
        AlgebraFile {
            representation: Some(RepresentationSection {
                module: module
                    .iter()
                    .map(|b| BasisEntry {
                        name: b.name.clone(),
                        parity: b.parity,
                    })
                    .collect(),
                operators,
            }),
            ..AlgebraFile::from_algebra(a)
        }
    }

    /// Builds the algebra without validating the bracket identities.
    pub fn to_algebra(&self) -> Result<NLieSuperalgebra> {
        if self.format != FORMAT_TAG {
            return Err(parse_error(format!(
                "format tag {:?}, expected {FORMAT_TAG:?}",
                self.format
            )));
        }
        let field: Field = self.field.parse()?;
        let index = index_map(&self.basis);
        if index.len() != self.basis.len() {
            return Err(parse_error("duplicate basis names"));
        }
        let d = self.basis.len();
        let mut entries = Vec::with_capacity(self.brackets.len());
        for e in &self.brackets {
            if e.args.len() != self.arity {
                return Err(Error::ArityMismatch {
                    expected: self.arity,
                    got: e.args.len(),
                });
            }
            entries.push((
                canonical_args(&index, &e.args)?,
                dense(field, &index, d, &e.value)?,
            ));
        }
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElement::new(b.name.clone(), b.parity))
            .collect();
        NLieSuperalgebra::new(field, self.arity, self.alpha, basis, entries)
    }

    /// Builds the representation section against the algebra in the same file.
    pub fn to_representation(&self) -> Result<Representation> {
        let section = self
            .representation
            .as_ref()
            .ok_or_else(|| parse_error("file has no representation section"))?;
        let algebra = self.to_algebra()?;
        let field = algebra.field();
        let index = index_map(&self.basis);
        let module_index = index_map(&section.module);
        if module_index.len() != section.module.len() {
            return Err(parse_error("duplicate module basis names"));
        }
        let m = section.module.len();
        let slots = self.arity - 1;
        let mut entries = Vec::with_capacity(section.operators.len());
        for op in &section.operators {
            if op.args.len() != slots {
                return Err(Error::ArityMismatch {
                    expected: slots,
                    got: op.args.len(),
                });
            }
            let tuple = canonical_args(&index, &op.args)?;
            let mut columns = vec![vec![field.zero(); m]; m];
            for (name, image) in &op.images {
                let &j = module_index
                    .get(name.as_str())
                    .ok_or_else(|| parse_error(format!("unknown module basis element {name:?}")))?;
                columns[j] = dense(field, &module_index, m, image)?;
            }
            entries.push((tuple, Matrix::from_columns(field, m, &columns)));
        }
        let module = section
            .module
            .iter()
            .map(|b| BasisElement::new(b.name.clone(), b.parity))
            .collect();
        Representation::new(algebra, module, entries)
    }

    pub fn parse(text: &str) -> Result<AlgebraFile> {
        serde_json::from_str(text).map_err(|e| parse_error(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

pub fn parse_algebra(text: &str) -> Result<NLieSuperalgebra> {
    AlgebraFile::parse(text)?.to_algebra()
}

pub fn parse_representation(text: &str) -> Result<Representation> {
    AlgebraFile::parse(text)?.to_representation()
}

pub fn algebra_to_json(a: &NLieSuperalgebra) -> String {
    AlgebraFile::from_algebra(a).to_json()
}

pub fn representation_to_json(rho: &Representation) -> String {
    AlgebraFile::from_representation(rho).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{act3, paper_bc, standard_catalog};
    use crate::representation::regular_representation;

    const BC4_F3: &str = r#"{
        "format": "nsla-v1",
        "field": "F3",
        "arity": 4,
        "alpha": 0,
        "basis": [{"name": "b", "parity": 1}, {"name": "c", "parity": 0}],
        "brackets": [{"args": ["b", "b", "b", "b"], "value": {"c": "1"}}]
    }"#;

    #[test]
    fn hand_written_file_matches_the_catalog() {
        let a = parse_algebra(BC4_F3).unwrap();
        assert_eq!(a, paper_bc(Field::Prime(3), 4).unwrap());
    }

    #[test]
    fn algebras_round_trip() {
        for p in [2, 3, 5] {
            for e in standard_catalog(Field::Prime(p)).unwrap() {
                let text = algebra_to_json(&e.algebra);
                assert_eq!(parse_algebra(&text).unwrap(), e.algebra);
            }
        }
        for e in standard_catalog(Field::Rational).unwrap() {
            assert_eq!(
                parse_algebra(&algebra_to_json(&e.algebra)).unwrap(),
                e.algebra
            );
        }
    }

    #[test]
    fn representations_round_trip() {
        let f = Field::Prime(5);
        for a in [paper_bc(f, 4).unwrap(), act3(f).unwrap()] {
            let rho = regular_representation(&a);
            let text = representation_to_json(&rho);
            assert_eq!(parse_representation(&text).unwrap(), rho);
            assert_eq!(parse_algebra(&text).unwrap(), a);
        }
    }

    #[test]
    fn rational_coefficients_stay_exact() {
        let text = BC4_F3.replace("F3", "Q").replace("\"1\"", "\"-2/6\"");
        let a = parse_algebra(&text).unwrap();
        assert_eq!(
            a.basis_bracket(&[0, 0, 0, 0])[1],
            Field::Rational.parse_scalar("-1/3").unwrap()
        );
        assert!(algebra_to_json(&a).contains("\"-1/3\""));
    }

    #[test]
    fn malformed_files_are_rejected() {
        let cases = [
            BC4_F3.replace("nsla-v1", "nsla-v0"),
            BC4_F3.replace("\"F3\"", "\"F4\""),
            BC4_F3.replace("\"c\": \"1\"", "\"c\": 1"),
            BC4_F3.replace("\"c\": \"1\"", "\"d\": \"1\""),
            BC4_F3.replace("\"c\": \"1\"", "\"c\": \"x\""),
            BC4_F3.replace("[\"b\", \"b\", \"b\", \"b\"]", "[\"b\", \"b\", \"b\"]"),
            BC4_F3.replace(
                "[\"b\", \"b\", \"b\", \"b\"]",
                "[\"c\", \"b\", \"b\", \"b\"]",
            ),
            BC4_F3.replace("\"name\": \"c\"", "\"name\": \"b\""),
            BC4_F3.replace("\"parity\": 1", "\"parity\": 2"),
            BC4_F3.replace("\"alpha\": 0", "\"alpha\": 0, \"extra\": 1"),
        ];
        for text in &cases {
            assert!(parse_algebra(text).is_err(), "{text}");
        }
        assert!(parse_representation(BC4_F3).is_err());
    }
}
