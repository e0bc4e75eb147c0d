//! External file formats. Exact values are always `"num/den"` strings and
//! subsets are sorted 1-based index arrays.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coeffs::{Kind, SubsetFn, TdMatrix};
use crate::error::{Error, NegativeAtom, Result};
use crate::rational::{self, Rational};
use crate::realize::{self, FeasibilityOutcome};
use crate::spectral::{CutDecomposition, SemiMetric};
use crate::subset::Subset;
use crate::tm::{BernoulliPmf, TmModel};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub set: Vec<usize>,
    pub value: ValueJson,
}

/// Accepts `"num/den"` strings, decimal strings or JSON numbers on input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueJson {
    Text(String),
    Number(serde_json::Number),
}

impl ValueJson {
    pub fn exact(r: &Rational) -> Self {
        ValueJson::Text(rational::format(r))
    }

    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            ValueJson::Text(s) => rational::parse(s),
            ValueJson::Number(n) => rational::parse(&n.to_string()),
        }
    }
}

fn entries_json<'a>(items: impl Iterator<Item = (Subset, &'a Rational)>) -> Vec<EntryJson> {
    items
        .map(|(s, v)| EntryJson {
            set: s.to_one_based(),
            value: ValueJson::exact(v),
        })
        .collect()
}

fn parse_entries(p: usize, entries: &[EntryJson], allow_empty: bool) -> Result<Vec<(Subset, Rational)>> {
    entries
        .iter()
        .map(|e| {
            let s = Subset::from_one_based(&e.set, p)?;
            if s.is_empty() && !allow_empty {
                return Err(Error::MalformedInput("empty set entry".into()));
            }
            Ok((s, e.value.to_rational()?))
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubsetFnJson {
    pub p: usize,
    pub kind: String,
    pub entries: Vec<EntryJson>,
}

impl SubsetFnJson {
    pub fn from_fn(f: &SubsetFn) -> Self {
        SubsetFnJson {
            p: f.p(),
            kind: f.kind().name().to_string(),
            entries: entries_json(f.support()),
        }
    }

    pub fn to_fn(&self) -> Result<SubsetFn> {
        let kind = Kind::parse(&self.kind)?;
        SubsetFn::from_entries(self.p, kind, parse_entries(self.p, &self.entries, false)?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TmModelJson {
    pub p: usize,
    pub beta: Vec<EntryJson>,
}

impl TmModelJson {
    pub fn from_model(m: &TmModel) -> Self {
        TmModelJson {
            p: m.p(),
            beta: entries_json(m.beta().support()),
        }
    }

    pub fn to_model(&self) -> Result<TmModel> {
        TmModel::from_entries(self.p, parse_entries(self.p, &self.beta, false)?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CutDecompositionJson {
    pub p: usize,
    pub cuts: Vec<EntryJson>,
    pub slack_full: ValueJson,
}

impl CutDecompositionJson {
    pub fn from_decomposition(c: &CutDecomposition) -> Self {
        CutDecompositionJson {
            p: c.p(),
            cuts: entries_json(c.cuts().iter().map(|(s, v)| (*s, v))),
            slack_full: ValueJson::exact(c.slack_full()),
        }
    }

    pub fn to_decomposition(&self) -> Result<CutDecomposition> {
        let cuts = parse_entries(self.p, &self.cuts, false)?.into_iter().collect();
        CutDecomposition::new(self.p, cuts, self.slack_full.to_rational()?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BernoulliPmfJson {
    pub p: usize,
    pub masses: Vec<EntryJson>,
}

impl BernoulliPmfJson {
    pub fn from_pmf(pmf: &BernoulliPmf) -> Self {
        BernoulliPmfJson {
            p: pmf.p(),
            masses: entries_json(pmf.masses().iter().map(|(s, v)| (*s, v))),
        }
    }

    pub fn to_pmf(&self) -> Result<BernoulliPmf> {
        let mut masses: BTreeMap<Subset, Rational> = BTreeMap::new();
        for (s, v) in parse_entries(self.p, &self.masses, true)? {
            *masses.entry(s).or_insert_with(|| rational::int(0)) += v;
        }
        BernoulliPmf::new(self.p, masses)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NegativeAtomJson {
    pub set: Vec<usize>,
    pub value: String,
}

pub fn negative_atoms_json(atoms: &[NegativeAtom]) -> Vec<NegativeAtomJson> {
    atoms
        .iter()
        .map(|a| NegativeAtomJson {
            set: a.set.to_one_based(),
            value: rational::format(&a.value),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FarkasJson {
    /// 1-based row labels `(i, j)`.
    pub rows: Vec<[usize; 2]>,
    pub y: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutcomeJson {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<TmModelJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cuts: Option<CutDecompositionJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub scale: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub farkas: Option<FarkasJson>,
}

impl OutcomeJson {
    /// `rows` are the 0-based row labels the Farkas vector is indexed by.
    pub fn from_outcome(outcome: &FeasibilityOutcome, rows: &[(usize, usize)]) -> Self {
        match outcome {
            FeasibilityOutcome::Feasible {
                witness,
                cuts,
                scale,
            } => OutcomeJson {
                status: "feasible".into(),
                witness: Some(TmModelJson::from_model(witness)),
                cuts: cuts.as_ref().map(CutDecompositionJson::from_decomposition),
                scale: scale.as_ref().map(rational::format),
                farkas: None,
            },
            FeasibilityOutcome::Infeasible { farkas } => OutcomeJson {
                status: "infeasible".into(),
                witness: None,
                cuts: None,
                scale: None,
                farkas: Some(FarkasJson {
                    rows: rows.iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
                    y: farkas.iter().map(rational::format).collect(),
                }),
            },
        }
    }

    pub fn to_outcome(&self) -> Result<FeasibilityOutcome> {
        match self.status.as_str() {
            "feasible" => {
                let witness = self
                    .witness
                    .as_ref()
                    .ok_or_else(|| Error::MalformedInput("feasible outcome without witness".into()))?
                    .to_model()?;
                Ok(FeasibilityOutcome::Feasible {
                    witness,
                    cuts: self.cuts.as_ref().map(|c| c.to_decomposition()).transpose()?,
                    scale: self.scale.as_deref().map(rational::parse).transpose()?,
                })
            }
            "infeasible" => {
                let f = self
                    .farkas
                    .as_ref()
                    .ok_or_else(|| Error::MalformedInput("infeasible outcome without Farkas vector".into()))?;
                Ok(FeasibilityOutcome::Infeasible {
                    farkas: f.y.iter().map(|s| rational::parse(s)).collect::<Result<_>>()?,
                })
            }
            other => Err(Error::MalformedInput(format!("unknown status {other:?}"))),
        }
    }
}

/// Row labels of the Farkas vector for a TDR outcome.
pub fn tdr_row_labels(p: usize) -> Vec<(usize, usize)> {
    realize::td_rows(p)
}

fn value_to_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => rational::parse(s),
        Value::Number(n) => rational::parse(&n.to_string()),
        other => Err(Error::Parse(format!("expected a number, found {other}"))),
    }
}

/// Reads a square matrix from CSV (rationals or decimals, optional `#`
/// comments) or from JSON `{"p": .., "lam"|"d": [[..]]}`.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<Rational>>> {
    let trimmed = text.trim_start();
    let rows = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        let v: Value = serde_json::from_str(text)?;
        let body = match &v {
            Value::Object(map) => map
                .get("lam")
                .or_else(|| map.get("d"))
                .ok_or_else(|| Error::MalformedInput("matrix JSON needs a \"lam\" or \"d\" field".into()))?,
            array => array,
        };
        let rows = body
            .as_array()
            .ok_or_else(|| Error::MalformedInput("matrix must be an array of rows".into()))?;
        let parsed = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::MalformedInput("matrix row must be an array".into()))?
                    .iter()
                    .map(value_to_rational)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(p) = v.get("p").and_then(Value::as_u64) {
            if p as usize != parsed.len() {
                return Err(Error::DimensionMismatch {
                    expected: p as usize,
                    found: parsed.len(),
                });
            }
        }
        parsed
    } else {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(text.as_bytes());
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| Error::Parse(e.to_string()))?;
            if record.iter().all(str::is_empty) {
                continue;
            }
            rows.push(record.iter().map(rational::parse).collect::<Result<Vec<_>>>()?);
        }
        rows
    };
    let p = rows.len();
    if p == 0 {
        return Err(Error::MalformedInput("empty matrix".into()));
    }
    if let Some(r) = rows.iter().find(|r| r.len() != p) {
        return Err(Error::MalformedMatrix(format!(
            "row of length {} in a matrix with {p} rows",
            r.len()
        )));
    }
    Ok(rows)
}

pub fn matrix_csv(rows: &[Vec<Rational>]) -> String {
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().map(rational::format).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub p: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lam: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<Vec<Vec<String>>>,
}

fn strings(rows: &[Vec<Rational>]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| r.iter().map(rational::format).collect())
        .collect()
}

impl MatrixJson {
    pub fn from_td(td: &TdMatrix) -> Self {
        MatrixJson {
            p: td.p(),
            lam: Some(strings(td.rows())),
            d: None,
        }
    }

    pub fn from_metric(d: &SemiMetric) -> Self {
        MatrixJson {
            p: d.p(),
            lam: None,
            d: Some(strings(d.rows())),
        }
    }
}

pub fn read_to_string(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

pub fn read_td_matrix(path: &Path) -> Result<TdMatrix> {
    TdMatrix::new(parse_matrix(&read_to_string(path)?)?)
}

pub fn read_semimetric(path: &Path) -> Result<SemiMetric> {
    SemiMetric::new(parse_matrix(&read_to_string(path)?)?)
}

pub fn read_subset_fn(path: &Path) -> Result<SubsetFn> {
    serde_json::from_str::<SubsetFnJson>(&read_to_string(path)?)?.to_fn()
}

pub fn read_model(path: &Path) -> Result<TmModel> {
    serde_json::from_str::<TmModelJson>(&read_to_string(path)?)?.to_model()
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Parses a comma-separated list of rationals, e.g. `"2,2,1/2"`.
pub fn parse_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(rational::parse).collect()
}
