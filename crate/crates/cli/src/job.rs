//! Job specifications: one JSON document per job, or `{"jobs": [...]}` for a batch.

use std::sync::Arc;

use hhadic::serial::{parse_field, ComplexSpec, ModuleSpec, RingSpec};
use hhadic::{Bimodule, EnvelopingRing, FPModule, Field, Ideal, Polynomial, Ring};
use serde::{Deserialize, Serialize};
use serde_path_to_error::Segment;

use crate::error::CliError;

pub const MAX_PRECISION: u32 = 16;
pub const MAX_TOWER: u32 = 12;
pub const MAX_VARS: usize = 4;
pub const MAX_ENVELOPING_VARS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
#[value(rename_all = "kebab-case")]
pub enum Command {
    Gb,
    Homology,
    Localcoh,
    Complete,
    Torsion,
    Wpr,
    Hochschild,
    MainTheorem,
    Hkr,
    GmDuality,
    Cofinality,
    Padic,
    WprExample,
}

impl Command {
    pub const CHECKS: [Command; 6] =
        [Command::MainTheorem, Command::Hkr, Command::GmDuality, Command::Cofinality, Command::Padic, Command::WprExample];

    pub fn name(self) -> &'static str {
        match self {
            Command::Gb => "gb",
            Command::Homology => "homology",
            Command::Localcoh => "localcoh",
            Command::Complete => "complete",
            Command::Torsion => "torsion",
            Command::Wpr => "wpr",
            Command::Hochschild => "hochschild",
            Command::MainTheorem => "main-theorem",
            Command::Hkr => "hkr",
            Command::GmDuality => "gm-duality",
            Command::Cofinality => "cofinality",
            Command::Padic => "padic",
            Command::WprExample => "wpr-example",
        }
    }

    pub fn is_check(self) -> bool {
        Command::CHECKS.contains(&self)
    }
}

/// A bimodule is a module over `A ⊗ A`, whose variables are the base variables followed by
/// their right-hand copies (`x -> y`, `x1 -> y1`, otherwise a `_r` suffix).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum BimoduleSpec {
    Diagonal,
    Free,
    Presentation(ModuleSpec),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Precision.
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    /// Tower height.
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub tower: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<(i64, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guard: Option<u32>,
    /// Variables for `hkr`, ideal power for `cofinality`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_offset: Option<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    /// Field for jobs without a ring.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<String>>,
    /// Columns of a submodule of a free module, for `gb`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSpec>,
    /// Second module of a pair.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<ModuleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bimodule: Option<BimoduleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexSpec>,
    #[serde(default)]
    pub params: Params,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Batch {
    jobs: Vec<JobSpec>,
}

fn pointer(path: &serde_path_to_error::Path) -> String {
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

fn decode<T: serde::de::DeserializeOwned>(v: serde_json::Value, prefix: &str) -> Result<T, CliError> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let at = format!("{prefix}{}", pointer(e.path()));
        let msg = e.inner().to_string();
        CliError::input(if at.is_empty() { "/" } else { &at }, msg)
    })
}

/// Reads one job or a batch. Schema errors carry the JSON pointer of the offending value.
pub fn parse_jobs(text: &str) -> Result<Vec<JobSpec>, CliError> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::input("/", format!("not JSON: {e}")))?;
    let jobs = if v.get("jobs").is_some() { decode::<Batch>(v, "")?.jobs } else { vec![decode::<JobSpec>(v, "")?] };
    Ok(jobs)
}

/// Builds inputs from a job, reporting failures at `prefix` + the JSON pointer of the field.
pub struct Inputs<'a> {
    pub job: &'a JobSpec,
    prefix: String,
}

impl<'a> Inputs<'a> {
    pub fn new(job: &'a JobSpec, prefix: &str) -> Inputs<'a> {
        Inputs { job, prefix: prefix.to_string() }
    }

    pub fn err(&self, at: &str, msg: impl ToString) -> CliError {
        CliError::input(&format!("{}{at}", self.prefix), msg.to_string())
    }

    fn missing(&self, at: &str) -> CliError {
        self.err(at, "required for this command")
    }

    pub fn field(&self) -> Result<Field, CliError> {
        if let Some(r) = &self.job.ring {
            return parse_field(&r.field).map_err(|e| self.err("/ring/field", e));
        }
        match &self.job.field {
            Some(f) => parse_field(f).map_err(|e| self.err("/field", e)),
            None => Ok(Field::Rationals),
        }
    }

    pub fn ring(&self) -> Result<Arc<Ring>, CliError> {
        let spec = self.job.ring.as_ref().ok_or_else(|| self.missing("/ring"))?;
        self.field()?;
        if spec.vars.is_empty() || spec.vars.len() > MAX_VARS {
            return Err(self.err("/ring/vars", format!("need 1..={MAX_VARS} variables, got {}", spec.vars.len())));
        }
        let base = RingSpec { quotient: Vec::new(), ..spec.clone() };
        let ring = base.build(MAX_VARS).map_err(|e| {
            if spec.order.is_some() && e.to_string().contains("order") {
                self.err("/ring/order", e)
            } else {
                self.err("/ring/vars", e)
            }
        })?;
        if spec.quotient.is_empty() {
            return Ok(ring);
        }
        let rels = spec
            .quotient
            .iter()
            .enumerate()
            .map(|(k, s)| ring.parse(s).map_err(|e| self.err(&format!("/ring/quotient/{k}"), e)))
            .collect::<Result<Vec<_>, _>>()?;
        ring.quotient(&rels).map_err(|e| self.err("/ring/quotient", e))
    }

    /// Polynomial ring without relations, at most three variables.
    pub fn enveloping(&self) -> Result<EnvelopingRing, CliError> {
        let ring = self.ring()?;
        if ring.nvars() > MAX_ENVELOPING_VARS {
            return Err(self.err("/ring/vars", format!("enveloping rings need at most {MAX_ENVELOPING_VARS} base variables")));
        }
        EnvelopingRing::new(&ring).map_err(|e| self.err("/ring", e))
    }

    fn polys(&self, ring: &Arc<Ring>, gens: &[String], at: &str) -> Result<Vec<Polynomial>, CliError> {
        gens.iter().enumerate().map(|(k, s)| ring.parse(s).map_err(|e| self.err(&format!("{at}/{k}"), e))).collect()
    }

    pub fn ideal(&self, ring: &Arc<Ring>) -> Result<Ideal, CliError> {
        let gens = self.job.ideal.as_ref().ok_or_else(|| self.missing("/ideal"))?;
        let polys = self.polys(ring, gens, "/ideal")?;
        let a = Ideal::new(ring, polys).map_err(|e| self.err("/ideal", e))?;
        if a.nonzero_generators().is_empty() {
            return Err(self.err("/ideal", "needs a nonzero generator"));
        }
        if !a.is_homogeneous() {
            return Err(self.err("/ideal", "generators must be homogeneous"));
        }
        Ok(a)
    }

    /// The `sequence` field, falling back to the ideal generators.
    pub fn sequence(&self, ring: &Arc<Ring>) -> Result<Vec<Polynomial>, CliError> {
        match (&self.job.sequence, &self.job.ideal) {
            (Some(s), _) => self.polys(ring, s, "/sequence"),
            (None, Some(g)) => self.polys(ring, g, "/ideal"),
            (None, None) => Err(self.missing("/sequence")),
        }
    }

    fn columns(&self, ring: &Arc<Ring>, cols: &[Vec<String>], at: &str) -> Result<Vec<Vec<Polynomial>>, CliError> {
        cols.iter().enumerate().map(|(k, c)| self.polys(ring, c, &format!("{at}/{k}"))).collect()
    }

    pub fn generators(&self, ring: &Arc<Ring>) -> Result<Vec<Vec<Polynomial>>, CliError> {
        match (&self.job.generators, &self.job.ideal) {
            (Some(g), _) => {
                let cols = self.columns(ring, g, "/generators")?;
                let rank = cols.first().map_or(0, Vec::len);
                if rank == 0 || cols.iter().any(|c| c.len() != rank) {
                    return Err(self.err("/generators", "columns must be nonempty and of equal length"));
                }
                Ok(cols)
            }
            (None, Some(g)) => Ok(self.polys(ring, g, "/ideal")?.into_iter().map(|p| vec![p]).collect()),
            (None, None) => Err(self.missing("/generators")),
        }
    }

    fn build_module(&self, ring: &Arc<Ring>, spec: &ModuleSpec, at: &str) -> Result<FPModule, CliError> {
        self.columns(ring, &spec.relations, &format!("{at}/relations"))?;
        spec.build(ring).map_err(|e| self.err(at, e))
    }

    /// The `module` field, the ring itself when absent.
    pub fn module(&self, ring: &Arc<Ring>) -> Result<FPModule, CliError> {
        match &self.job.module {
            Some(m) => self.build_module(ring, m, "/module"),
            None => Ok(FPModule::ring_module(ring)),
        }
    }

    pub fn target(&self, ring: &Arc<Ring>) -> Result<FPModule, CliError> {
        match &self.job.target {
            Some(m) => self.build_module(ring, m, "/target"),
            None => Ok(FPModule::ring_module(ring)),
        }
    }

    pub fn bimodule(&self, e: &EnvelopingRing) -> Result<Bimodule, CliError> {
        match self.job.bimodule.as_ref().ok_or_else(|| self.missing("/bimodule"))? {
            BimoduleSpec::Diagonal => Ok(e.diagonal_bimodule()),
            BimoduleSpec::Free => Ok(e.free_bimodule()),
            BimoduleSpec::Presentation(m) => self.build_module(e.env(), m, "/bimodule/presentation"),
        }
    }

    pub fn complex(&self, ring: &Arc<Ring>) -> Result<hhadic::ChainComplex, CliError> {
        let spec = self.job.complex.as_ref().ok_or_else(|| self.missing("/complex"))?;
        for (k, d) in spec.diffs.iter().enumerate() {
            self.columns(ring, d, &format!("/complex/diffs/{k}"))?;
        }
        spec.build(ring).map_err(|e| self.err("/complex", e))
    }

    pub fn precision(&self, default: Option<u32>) -> Result<u32, CliError> {
        let n = self.job.params.precision.or(default).ok_or_else(|| self.missing("/params/N"))?;
        if n == 0 || n > MAX_PRECISION {
            return Err(self.err("/params/N", format!("precision must be in 1..={MAX_PRECISION}, got {n}")));
        }
        Ok(n)
    }

    pub fn tower(&self, default: u32) -> Result<u32, CliError> {
        let j = self.job.params.tower.unwrap_or(default);
        if j == 0 || j > MAX_TOWER {
            return Err(self.err("/params/J", format!("tower height must be in 1..={MAX_TOWER}, got {j}")));
        }
        Ok(j)
    }

    pub fn window(&self, default: (i64, i64)) -> Result<(i64, i64), CliError> {
        let w = self.job.params.window.unwrap_or(default);
        if w.0 > w.1 || w.1 - w.0 > 64 {
            return Err(self.err("/params/window", "need lo <= hi and at most 65 degrees"));
        }
        Ok(w)
    }
}
