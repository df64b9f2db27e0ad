use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interpolation::{InterpProblem, NodeData};
use crate::numeric::{Backend, Field, Tolerance};
use crate::poly::{MPoly, MultiIndex};
use crate::residue::OrderVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Hermite,
    Lagrange,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermText {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeText {
    pub point: Vec<String>,
    pub order: Vec<u32>,
    /// Keyed by comma-joined derivative orders, e.g. `"1,0"`.
    pub values: BTreeMap<String, String>,
}

/// The JSON problem document read by every command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub backend: Backend,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<Tolerance>,
    pub variables: Vec<String>,
    pub system: Vec<Vec<TermText>>,
    #[serde(default)]
    pub nodes: Vec<NodeText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("problem file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files always serialize")
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tolerance.unwrap_or_default()
    }

    /// Parses every scalar under `F`, whose backend must match the file's.
    pub fn decode<F: Field>(&self) -> Result<InterpProblem<F>> {
        if F::BACKEND != self.backend {
            return Err(Error::BackendMismatch(format!(
                "file declares {}, decoder is {}",
                self.backend.name(),
                F::BACKEND.name()
            )));
        }
        let n = self.nvars();
        if self.system.len() != n {
            return Err(Error::DataShape(format!(
                "{} variables but {} polynomials",
                n,
                self.system.len()
            )));
        }
        let system = self
            .system
            .iter()
            .map(|terms| decode_poly(n, terms))
            .collect::<Result<Vec<MPoly<F>>>>()?;
        let nodes = self
            .nodes
            .iter()
            .enumerate()
            .map(|(j, node)| decode_node(n, j, node))
            .collect::<Result<Vec<_>>>()?;
        InterpProblem::new(system, nodes, self.tolerance())
    }

    /// Inverse of [`ProblemFile::decode`].
    pub fn encode<F: Field>(
        variables: Vec<String>,
        problem: &InterpProblem<F>,
        mode: Option<Mode>,
    ) -> Self {
        ProblemFile {
            backend: F::BACKEND,
            tolerance: (!F::is_exact()).then(|| *problem.tolerance()),
            variables,
            system: problem.system().iter().map(encode_poly).collect(),
            nodes: problem
                .nodes()
                .iter()
                .map(|node| NodeText {
                    point: node.point.iter().map(Field::render).collect(),
                    order: node.order.as_index().as_slice().to_vec(),
                    values: node
                        .values
                        .iter()
                        .map(|(l, c)| (l.to_key(), c.render()))
                        .collect(),
                })
                .collect(),
            mode,
        }
    }
}

fn decode_poly<F: Field>(n: usize, terms: &[TermText]) -> Result<MPoly<F>> {
    let mut parsed = Vec::with_capacity(terms.len());
    for t in terms {
        if t.exponents.len() != n {
            return Err(Error::Arity {
                expected: n,
                got: t.exponents.len(),
            });
        }
        parsed.push((
            MultiIndex::new(t.exponents.clone()),
            F::parse_text(&t.coeff)?,
        ));
    }
    Ok(MPoly::from_terms(n, parsed))
}

/// Term list in graded order.
pub fn encode_poly<F: Field>(p: &MPoly<F>) -> Vec<TermText> {
    p.graded_terms()
        .into_iter()
        .map(|(e, c)| TermText {
            exponents: e.as_slice().to_vec(),
            coeff: c.render(),
        })
        .collect()
}

fn decode_node<F: Field>(n: usize, j: usize, node: &NodeText) -> Result<NodeData<F>> {
    let point = node
        .point
        .iter()
        .map(|s| F::parse_text(s))
        .collect::<Result<Vec<_>>>()?;
    if node.order.len() != n {
        return Err(Error::Arity {
            expected: n,
            got: node.order.len(),
        });
    }
    let order = OrderVector::new(MultiIndex::new(node.order.clone()))?;
    let mut values = BTreeMap::new();
    for (key, text) in &node.values {
        let l: MultiIndex = key.parse()?;
        if l.len() != n {
            return Err(Error::DataShape(format!(
                "node {j}: key {key:?} has the wrong length"
            )));
        }
        values.insert(l, F::parse_text(text)?);
    }
    Ok(NodeData::new(point, order, values))
}
