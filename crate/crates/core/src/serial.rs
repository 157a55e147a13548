//! JSON descriptions of rings, ideals, modules and complexes, with entries written in the
//! polynomial grammar.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homalg::{ChainComplex, FPModule, Matrix};
use crate::monomial::{MonomialOrder, MAX_VARS};
use crate::ring::{Ideal, Ring};
use crate::scalar::Field;

/// Accepts `QQ`, `Q`, `Fp(p)`, `GF(p)` and `Fp<p>`.
pub fn parse_field(s: &str) -> Result<Field> {
    let t = s.trim();
    if t == "QQ" || t == "Q" {
        return Ok(Field::Rationals);
    }
    let inner = t.strip_prefix("Fp(").or_else(|| t.strip_prefix("GF(")).and_then(|r| r.strip_suffix(')')).or_else(|| t.strip_prefix("Fp"));
    let Some(inner) = inner else {
        return Err(Error::InvalidField(format!("unknown field {t:?}; use QQ or Fp(p)")));
    };
    let p: u64 = inner.trim().parse().map_err(|_| Error::InvalidField(format!("cannot read a modulus from {t:?}")))?;
    Field::prime(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub field: String,
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub quotient: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
}

impl RingSpec {
    pub fn build(&self, max_vars: usize) -> Result<Arc<Ring>> {
        let field = parse_field(&self.field)?;
        if self.vars.len() > max_vars.min(MAX_VARS) {
            return Err(Error::Limit(format!("at most {max_vars} variables")));
        }
        let order = match self.order.as_deref() {
            None | Some("grevlex") => MonomialOrder::GrevLex,
            Some("lex") => MonomialOrder::Lex,
            Some(o) => return Err(Error::InvalidArgument(format!("unknown monomial order {o:?}"))),
        };
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let ring = Ring::with_order(field, &vars, order)?;
        if self.quotient.is_empty() {
            return Ok(ring);
        }
        let rels: Vec<&str> = self.quotient.iter().map(String::as_str).collect();
        ring.quotient_by_strs(&rels)
    }

    pub fn of(ring: &Ring) -> RingSpec {
        let amb = ring.ambient();
        RingSpec {
            field: ring.field().to_string(),
            vars: ring.var_names().to_vec(),
            quotient: ring.quotient_ideal().iter().map(|p| amb.format(p)).collect(),
            order: match ring.order() {
                MonomialOrder::GrevLex => None,
                MonomialOrder::Lex => Some("lex".into()),
            },
        }
    }
}

pub fn build_ideal(ring: &Arc<Ring>, gens: &[String]) -> Result<Ideal> {
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    Ideal::from_strs(ring, &refs)
}

/// `coker(A^s -> A^r)`, relations given as columns.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    /// Generator degrees; defaults to `rank` zeros.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twists: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

impl ModuleSpec {
    pub fn build(&self, ring: &Arc<Ring>) -> Result<FPModule> {
        let twists = match (&self.twists, self.rank) {
            (Some(t), Some(r)) if t.len() != r => return Err(Error::RankMismatch { expected: r, got: t.len() }),
            (Some(t), _) => t.clone(),
            (None, Some(r)) => vec![0; r],
            (None, None) => match self.relations.first() {
                Some(c) => vec![0; c.len()],
                None => vec![0],
            },
        };
        let cols =
            self.relations.iter().map(|c| c.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        FPModule::new(ring, twists, cols)
    }

    pub fn of(m: &FPModule) -> ModuleSpec {
        let ring = m.ring();
        ModuleSpec {
            twists: Some(m.twists().to_vec()),
            rank: None,
            relations: m.relations().iter().map(|c| c.iter().map(|p| ring.format(p)).collect()).collect(),
        }
    }
}

/// A bounded complex of free modules: `twists[k]` for index `lo + k`, `diffs[k]` is
/// `d_{lo+k+1}` as columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    #[serde(default)]
    pub lo: i64,
    pub twists: Vec<Vec<i64>>,
    pub diffs: Vec<Vec<Vec<String>>>,
}

impl ComplexSpec {
    pub fn build(&self, ring: &Arc<Ring>) -> Result<ChainComplex> {
        if self.diffs.len() + 1 != self.twists.len() {
            return Err(Error::InvalidArgument(format!(
                "{} terms need {} differentials, got {}",
                self.twists.len(),
                self.twists.len().saturating_sub(1),
                self.diffs.len()
            )));
        }
        let mut mats = Vec::new();
        for (k, d) in self.diffs.iter().enumerate() {
            let cols = d.iter().map(|c| c.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
            let rows = self.twists[k].len();
            if cols.len() != self.twists[k + 1].len() {
                return Err(Error::RankMismatch { expected: self.twists[k + 1].len(), got: cols.len() });
            }
            mats.push(Matrix::from_columns(rows, cols)?);
        }
        ChainComplex::free(ring, self.lo, self.twists.clone(), mats)
    }

    pub fn of(c: &ChainComplex) -> ComplexSpec {
        let ring = c.ring();
        ComplexSpec {
            lo: c.lo(),
            twists: (c.lo()..=c.hi()).map(|i| c.twists(i).to_vec()).collect(),
            diffs: (c.lo() + 1..=c.hi())
                .map(|i| c.d(i).unwrap().columns().iter().map(|col| col.iter().map(|p| ring.format(p)).collect()).collect())
                .collect(),
        }
    }
}
