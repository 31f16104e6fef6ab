//! JSON documents for modular data and double reports.

use mtc::doubles::DoubleReport;
use mtc::modular::{verify_modular, CMatrix, Check};
use mtc::{FusionRing, ModularData, RationalPhase, Tolerances, VerificationReport};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;
const DIMS_TOLERANCE: f64 = 1e-12;

/// A float written with 17 significant digits in exponent form, so that a
/// reload followed by a rewrite reproduces the same text.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decimal(pub f64);

impl Serialize for Decimal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return serializer.serialize_none();
        }
        let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Decimal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        f64::deserialize(deserializer).map(Decimal)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModularDataDoc {
    pub schema_version: u32,
    pub labels: Vec<String>,
    pub dual: Vec<usize>,
    /// `[i, j, k, N_ij^k]` for nonzero coefficients.
    pub fusion: Vec<[u64; 4]>,
    /// Exact twists `theta_i` as fractions of a turn, `"num/den"`.
    pub twists: Vec<String>,
    pub dims: Vec<Decimal>,
    /// Row-major `[re, im]` pairs.
    pub s: Vec<Vec<[Decimal; 2]>>,
}

impl ModularDataDoc {
    pub fn from_data(md: &ModularData) -> Self {
        let r = md.rank();
        ModularDataDoc {
            schema_version: SCHEMA_VERSION,
            labels: md.names().to_vec(),
            dual: md.ring().duals().to_vec(),
            fusion: md
                .ring()
                .nonzero_entries()
                .into_iter()
                .map(|(i, j, k, n)| [i as u64, j as u64, k as u64, u64::from(n)])
                .collect(),
            twists: md.twists().iter().map(ToString::to_string).collect(),
            dims: md.dims().iter().copied().map(Decimal).collect(),
            s: (0..r)
                .map(|i| (0..r).map(|j| [Decimal(md.s()[(i, j)].re), Decimal(md.s()[(i, j)].im)]).collect())
                .collect(),
        }
    }

    /// Rebuilds the data; structural problems are input errors.
    pub fn to_data(&self) -> Result<ModularData, CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Input(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let r = self.labels.len();
        let shape = |what: &str, len: usize| {
            if len == r {
                Ok(())
            } else {
                Err(CliError::Input(format!("{what}: {len} entries for {r} labels")))
            }
        };
        shape("dual", self.dual.len())?;
        shape("twists", self.twists.len())?;
        shape("dims", self.dims.len())?;
        shape("s", self.s.len())?;
        for (i, row) in self.s.iter().enumerate() {
            if row.len() != r {
                return Err(CliError::Input(format!("s[{i}]: {} entries for {r} labels", row.len())));
            }
        }
        let mut products = vec![Vec::new(); r * r];
        for (p, &[i, j, k, n]) in self.fusion.iter().enumerate() {
            let (i, j, k) = (i as usize, j as usize, k as usize);
            if i >= r || j >= r || k >= r {
                return Err(CliError::Input(format!("fusion[{p}]: label out of range")));
            }
            let n = u32::try_from(n).map_err(|_| CliError::Input(format!("fusion[{p}]: multiplicity too large")))?;
            products[i * r + j].push((k, n));
        }
        let ring = FusionRing::from_products(self.labels.clone(), self.dual.clone(), |i, j| {
            std::mem::take(&mut products[i * r + j])
        })?;
        let twists = self
            .twists
            .iter()
            .enumerate()
            .map(|(i, t)| t.parse::<RationalPhase>().map_err(|e| CliError::Input(format!("twists[{i}]: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let s = CMatrix::from_fn(r, r, |i, j| {
            let [re, im] = self.s[i][j];
            Complex64::new(re.0, im.0)
        });
        let dims = self.dims.iter().map(|d| d.0).collect();
        Ok(ModularData::from_parts(ring, s, twists, dims)?)
    }
}

/// Parses and re-verifies a document. The returned report includes the
/// agreement of the stored dimensions with the first row of `S`.
pub fn load(text: &str, tol: &Tolerances) -> Result<(ModularData, VerificationReport), CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: ModularDataDoc = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::Input(format!("schema violation at `{path}`: {}", e.into_inner()))
    })?;
    let md = doc.to_data()?;
    let mut report = verify_modular(&md, tol);
    report.checks.push(Check::new("dims_match_s", dims_deviation(&md), DIMS_TOLERANCE));
    Ok((md, report))
}

fn dims_deviation(md: &ModularData) -> f64 {
    let s00 = md.s()[(0, 0)].re;
    if s00 <= 0.0 {
        return f64::INFINITY;
    }
    (0..md.rank())
        .map(|j| {
            let d = md.dims()[j];
            (md.s()[(0, j)] / s00 - Complex64::new(d, 0.0)).norm() / d.abs().max(1.0)
        })
        .fold(0.0, f64::max)
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map_err(|e| CliError::Input(e.to_string()))
}

#[derive(Debug, Serialize)]
pub struct CheckDoc {
    pub name: String,
    pub passed: bool,
    pub deviation: Decimal,
    pub tolerance: Decimal,
}

impl From<&Check> for CheckDoc {
    fn from(c: &Check) -> Self {
        CheckDoc {
            name: c.name.clone(),
            passed: c.passed,
            deviation: Decimal(c.deviation),
            tolerance: Decimal(c.tolerance),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerificationDoc {
    pub schema_version: u32,
    pub passed: bool,
    pub checks: Vec<CheckDoc>,
}

impl From<&VerificationReport> for VerificationDoc {
    fn from(r: &VerificationReport) -> Self {
        VerificationDoc {
            schema_version: SCHEMA_VERSION,
            passed: r.all_passed(),
            checks: r.checks.iter().map(CheckDoc::from).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Counts {
    pub input_rank: usize,
    pub trace: u64,
    pub sum_of_squares: u64,
    pub condensed_rank: usize,
}

#[derive(Debug, Serialize)]
pub struct InvariantDoc {
    pub labels: Vec<String>,
    /// `[i, j, Z_ij]` for nonzero entries.
    pub entries: Vec<[u64; 3]>,
    pub character_form: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct CondensationDoc {
    pub free_orbits: usize,
    pub fixed_points: Vec<String>,
    pub excluded: usize,
    pub completions: usize,
}

#[derive(Debug, Serialize)]
pub struct DoubleDoc {
    pub schema_version: u32,
    pub case: String,
    pub graph: String,
    pub current: String,
    pub counts: Counts,
    pub passed: bool,
    pub checks: Vec<CheckDoc>,
    pub invariant: InvariantDoc,
    pub condensation: Option<CondensationDoc>,
    pub notes: Vec<String>,
    pub condensed: ModularDataDoc,
}

impl From<&DoubleReport> for DoubleDoc {
    fn from(r: &DoubleReport) -> Self {
        DoubleDoc {
            schema_version: SCHEMA_VERSION,
            case: r.case.to_string(),
            graph: r.case.graph_name(),
            current: r.input.names()[r.current.label].clone(),
            counts: Counts {
                input_rank: r.input.rank(),
                trace: r.sector_counts.0,
                sum_of_squares: r.sector_counts.1,
                condensed_rank: r.condensed.rank(),
            },
            passed: r.all_passed(),
            checks: r.checks.iter().map(CheckDoc::from).collect(),
            invariant: InvariantDoc {
                labels: r.invariant_labels.clone(),
                entries: r.invariant.nonzero().map(|(i, j, z)| [i as u64, j as u64, u64::from(z)]).collect(),
                character_form: r.character_form.clone(),
            },
            condensation: r.condensation.as_ref().map(|c| CondensationDoc {
                free_orbits: c.free_orbits,
                fixed_points: c.fixed_points.clone(),
                excluded: c.excluded,
                completions: c.candidates,
            }),
            notes: r.notes.clone(),
            condensed: ModularDataDoc::from_data(&r.condensed),
        }
    }
}
