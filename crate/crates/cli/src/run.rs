//! Dispatch from a job to the library.

use hhadic::hochschild::{self, completed_hochschild, hochschild_cohomology, main_theorem_check_with_guard, DEFAULT_GUARD};
use hhadic::torcomp::{self, cofinality_check, complete, gm_duality_check, local_cohomology, padic_check, torsion_submodule};
use hhadic::wpr::{wpr_certify, wpr_report};
use hhadic::{Cell, DimTable, FPModule, GroebnerBasis, Verdict};
use serde_json::json;

use crate::error::CliError;
use crate::job::{Command, Inputs, JobSpec};
use crate::output::{Computation, Output};

#[derive(Clone, Copy, Debug)]
pub struct Context {
    pub seed: u64,
}

impl Default for Context {
    fn default() -> Context {
        Context { seed: 1 }
    }
}

fn hilbert_table(name: &str, window: (i64, i64), rows: Vec<(String, Vec<usize>)>) -> DimTable {
    let mut t = DimTable::new(name, "degree", (window.0..=window.1).collect());
    for (label, dims) in rows {
        t.push(label, dims.into_iter().map(Cell::stable).collect());
    }
    t
}

fn formatted(ring: &hhadic::Ring, cols: &[Vec<hhadic::Polynomial>]) -> Vec<Vec<String>> {
    cols.iter().map(|c| c.iter().map(|p| ring.format(p)).collect()).collect()
}

/// Runs one job. `prefix` locates the job inside a batch for error pointers. A job may
/// expand into several outputs, one per index or parameter value left open.
pub fn run(job: &JobSpec, prefix: &str, ctx: Context) -> Result<Vec<Output>, CliError> {
    let inp = Inputs::new(job, prefix);
    let cmd = job.command.ok_or_else(|| inp.err("/command", "missing command"))?;
    let comp = |c: Computation| Ok(vec![Output::Computation(c)]);
    match cmd {
        Command::Gb => {
            let ring = inp.ring()?;
            let gens = inp.generators(&ring)?;
            let rank = gens[0].len();
            let gb = GroebnerBasis::compute(&ring, &gens, rank)?;
            let window = inp.window((0, 8))?;
            let q = FPModule::new(&ring, vec![0; rank], gens.clone()).map_err(|e| inp.err("/generators", e))?;
            let mut c = Computation::new("gb").input("ring", &ring).input("rank", rank);
            if q.is_homogeneous() {
                c.tables.push(hilbert_table("quotient", window, vec![("dim".into(), q.hilbert(window.0, window.1)?)]));
            } else {
                c.flags.push("inhomogeneous input: no Hilbert function".into());
            }
            c.data = json!({ "basis": gb.to_strings() });
            comp(c)
        }
        Command::Homology => {
            let ring = inp.ring()?;
            let cx = inp.complex(&ring)?;
            let window = inp.window((-4, 8))?;
            let mut rows = Vec::new();
            let mut cycles = serde_json::Map::new();
            for i in cx.lo()..=cx.hi() {
                let h = cx.homology(i)?;
                rows.push((format!("H_{i}"), h.module.hilbert(window.0, window.1)?));
                cycles.insert(i.to_string(), json!(formatted(&ring, &h.cycles)));
            }
            let mut c = Computation::new("homology").input("ring", &ring);
            c.tables.push(hilbert_table("homology", window, rows));
            c.data = json!({ "cycles": cycles });
            comp(c)
        }
        Command::Localcoh => {
            let ring = inp.ring()?;
            let a = inp.ideal(&ring)?;
            let m = inp.module(&ring)?;
            let window = inp.window((-10, 10))?;
            let height = inp.tower(12)?;
            if height < 3 {
                return Err(inp.err("/params/J", "local cohomology needs at least three stages"));
            }
            let indices: Vec<u32> = match job.params.i {
                Some(i) => vec![i],
                None => (0..=a.nonzero_generators().len() as u32).collect(),
            };
            let mut c =
                Computation::new("localcoh").input("ring", &ring).input("a", a.format().join(", ")).input("M", &m).input("J", height);
            let mut t = DimTable::new("local cohomology", "degree", (window.0..=window.1).collect());
            for i in indices {
                let h = local_cohomology(&m, &a, i as i64, window, height)?;
                if !h.all_stable() {
                    c.flags.push(format!("H^{i}: unstable at {:?}", h.unstable_degrees()));
                    c.verdict = c.verdict.combine(Verdict::Inconclusive);
                }
                t.push(format!("H^{i}"), h.cells());
            }
            c.tables.push(t);
            comp(c)
        }
        Command::Complete => {
            let ring = inp.ring()?;
            let a = inp.ideal(&ring)?;
            let m = inp.module(&ring)?;
            let n = inp.precision(None)?;
            let lo = m.twists().iter().copied().min().unwrap_or(0);
            let window = inp.window((lo, lo + n as i64 + 2))?;
            let t = complete(&m, &a, n)?;
            let mut c = Computation::new("complete").input("ring", &ring).input("a", a.format().join(", ")).input("M", &m).input("N", n);
            c.tables.push(hilbert_table("M / a^N M", window, vec![("dim".into(), t.hilbert(window.0, window.1)?)]));
            c.data = json!({ "truncation": hhadic::serial::ModuleSpec::of(&t) });
            comp(c)
        }
        Command::Torsion => {
            let ring = inp.ring()?;
            let a = inp.ideal(&ring)?;
            let m = inp.module(&ring)?;
            let window = inp.window((-2, 8))?;
            let t = torsion_submodule(&m, &a)?;
            let mut c = Computation::new("torsion").input("ring", &ring).input("a", a.format().join(", ")).input("M", &m);
            c.tables.push(hilbert_table("torsion submodule", window, vec![("dim".into(), t.module.hilbert(window.0, window.1)?)]));
            c.data = json!({ "killed_by_power": t.j, "generators": formatted(&ring, &t.generators) });
            comp(c)
        }
        Command::Wpr => {
            let ring = inp.ring()?;
            let seq = inp.sequence(&ring)?;
            let height = inp.tower(4)?;
            let cert = wpr_certify(&ring, &seq, height)?;
            let mut c = Computation::new("wpr").input("ring", &ring).input("sequence", cert.sequence.join(", ")).input("J", height);
            if !cert.certified() {
                c.flags.push(format!("not certified within j' <= {}", cert.max_witness));
                c.verdict = Verdict::Inconclusive;
            }
            c.data = serde_json::to_value(&cert).expect("certificate serializes");
            comp(c)
        }
        Command::Hochschild => {
            let e = inp.enveloping()?;
            let m = inp.bimodule(&e)?;
            let window = inp.window((-4, 8))?;
            let indices: Vec<usize> = match job.params.i {
                Some(i) => vec![i as usize],
                None => (0..=e.nvars()).collect(),
            };
            let mut c = Computation::new("hochschild").input("ring", e.base()).input("M", &m);
            let mut rows = Vec::new();
            for &i in &indices {
                rows.push((format!("HH^{i}"), hochschild_cohomology(&e, &m, i)?.hilbert(window.0, window.1)?));
            }
            c.tables.push(hilbert_table("Hochschild cohomology", window, rows));
            if job.ideal.is_some() {
                let a = inp.ideal(e.base())?;
                let n = inp.precision(Some(4))?;
                let guard = job.params.guard.unwrap_or(DEFAULT_GUARD);
                c = c.input("a", a.format().join(", ")).input("N", n).input("guard", guard);
                for &i in &indices {
                    let t = completed_hochschild(&e, &a, &m, i, n, guard)?;
                    let mut dt = DimTable::new(&format!("completed HH^{i}"), "degree", t.degrees.clone());
                    dt.push("dim", t.cells());
                    if !t.is_stable() {
                        c.flags.push(format!("completed HH^{i}: guard-unstable"));
                        c.verdict = c.verdict.combine(Verdict::Inconclusive);
                    }
                    c.tables.push(dt);
                }
            }
            comp(c)
        }
        Command::MainTheorem => {
            let e = inp.enveloping()?;
            let a = inp.ideal(e.base())?;
            let m = inp.bimodule(&e)?;
            let n = inp.precision(Some(6))?;
            let guard = job.params.guard.unwrap_or(DEFAULT_GUARD);
            if n + guard > torcomp::MAX_PRECISION {
                return Err(inp.err("/params/guard", format!("N + guard must be at most {}", torcomp::MAX_PRECISION)));
            }
            let indices: Vec<usize> = match job.params.i {
                Some(i) => vec![i as usize],
                None => (0..=e.nvars()).collect(),
            };
            indices.into_iter().map(|i| Ok(Output::Report(main_theorem_check_with_guard(&e, &a, &m, i, n, guard)?))).collect()
        }
        Command::Hkr => {
            let field = inp.field()?;
            let nv = job.params.n.ok_or_else(|| inp.err("/params/n", "required for this command"))? as usize;
            if nv == 0 || nv > hochschild::MAX_BASE_VARS {
                return Err(inp.err("/params/n", format!("need 1..={} variables", hochschild::MAX_BASE_VARS)));
            }
            let n = inp.precision(Some(if nv == 3 { 4 } else { 5 }))?;
            if n > 8 {
                return Err(inp.err("/params/N", "HKR precision is limited to 8"));
            }
            let indices: Vec<usize> = match job.params.i {
                Some(i) => vec![i as usize],
                None => (0..=nv).collect(),
            };
            indices.into_iter().map(|i| Ok(Output::Report(hochschild::hkr_check(field, nv, i, n)?))).collect()
        }
        Command::GmDuality => {
            let ring = inp.ring()?;
            let a = inp.ideal(&ring)?;
            let m = inp.module(&ring)?;
            let n = inp.target(&ring)?;
            let i_max = job.params.i_max.unwrap_or(3);
            if i_max > 6 {
                return Err(inp.err("/params/i_max", "cohomological index is limited to 6"));
            }
            let window = inp.window((-10, 10))?;
            Ok(vec![Output::Report(gm_duality_check(&m, &n, &a, i_max, window, None)?)])
        }
        Command::Cofinality => {
            let ring = inp.ring()?;
            let a = inp.ideal(&ring)?;
            if ring.nvars() > hhadic::hochschild::MAX_BASE_VARS || !ring.is_polynomial_ring() {
                return Err(inp.err("/ring", "cofinality needs a polynomial ring in at most 3 variables"));
            }
            let powers: Vec<u32> = match job.params.n {
                Some(0) => return Err(inp.err("/params/n", "the power must be positive")),
                Some(k) if k > 8 => return Err(inp.err("/params/n", "the power is limited to 8")),
                Some(k) => vec![k],
                None => (1..=4).collect(),
            };
            powers.into_iter().map(|k| Ok(Output::Report(cofinality_check(&a, k)?))).collect()
        }
        Command::Padic => {
            let p = job.params.p.ok_or_else(|| inp.err("/params/p", "required for this command"))?;
            let n = inp.precision(Some(6))?;
            let rep = padic_check(p, n).map_err(|e| match e {
                hhadic::Error::InvalidField(_) => inp.err("/params/p", e),
                e => e.into(),
            })?;
            Ok(vec![Output::Report(rep)])
        }
        Command::WprExample => {
            let ring = inp.ring()?;
            let seq = inp.sequence(&ring)?;
            let height = inp.tower(8)?;
            let (rep, _) = wpr_report(&ring, &seq, height, ctx.seed, job.params.expected_offset)?;
            Ok(vec![Output::Report(rep)])
        }
    }
}
