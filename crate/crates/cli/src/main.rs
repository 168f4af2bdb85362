use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use stratikit::config::{DEFAULT_CUTOFF, DEFAULT_SEED};
use stratikit::field::DEFAULT_PRIME;
use stratikit::homology::projective_injective_vertices;
use stratikit::io::{module_to_json, AlgebraFile, FamilyRef, SCHEMA};
use stratikit::strat::verify::{verify, Outcome, PropertyId, VerifyInput};
use stratikit::strat::{ringel_dual_with_order, summands_match};
use stratikit::*;

/// Exact computations with stratified algebras.
///
/// Inputs are algebra JSON files, `-` for stdin, `example:<id>` or
/// `family:<kind>` (`family:cent:3:1`, `family:schur:2`, or `family:schur`
/// together with `--m 2`).
#[derive(Parser, Debug)]
#[command(name = "stratikit", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Field: Q or a prime. Overrides the field named in an input file.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Seed for randomized searches.
    #[arg(long, global = true, env = "STRATIKIT_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Resolution length beyond which dimensions count as infinite.
    #[arg(long, global = true, default_value_t = DEFAULT_CUTOFF)]
    cutoff: usize,
    /// Include module matrices in reports.
    #[arg(long, global = true)]
    witnesses: bool,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
struct FamilyArgs {
    /// Size of the Jordan block (cent) or index of the Brauer block.
    #[arg(long)]
    n: Option<usize>,
    /// Block sizes of the nilpotent part (cent), comma separated.
    #[arg(long, value_delimiter = ',')]
    parts: Option<Vec<usize>>,
    /// Number of vertices of a Schur block.
    #[arg(long)]
    m: Option<usize>,
    /// Example id.
    #[arg(long)]
    id: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Dimension, Cartan matrix, radical layers and classification flags.
    Info {
        #[arg(default_value = "-")]
        input: String,
        #[command(flatten)]
        fam: FamilyArgs,
    },
    /// Standard modules and stratification verdicts for an order.
    Stratify {
        #[arg(default_value = "-")]
        input: String,
        /// Order as a 1-based permutation, lowest stratum first, e.g. 2,1.
        #[arg(long)]
        order: Option<String>,
        /// Test every order instead.
        #[arg(long)]
        all_orders: bool,
        #[command(flatten)]
        fam: FamilyArgs,
    },
    /// Characteristic tilting and cotilting modules.
    Tilting {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        order: Option<String>,
        #[command(flatten)]
        fam: FamilyArgs,
    },
    /// The Ringel dual and its comparison with the input.
    RingelDual {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        order: Option<String>,
        /// Vertices whose T(v) become the vertices of the dual, 1-based;
        /// defaults to the reversed order.
        #[arg(long)]
        dual_order: Option<String>,
        #[command(flatten)]
        fam: FamilyArgs,
    },
    /// Check one property and print its transcript.
    Verify {
        property: String,
        #[arg(default_value = "-")]
        inputs: Vec<String>,
        #[arg(long)]
        order: Option<String>,
        #[command(flatten)]
        fam: FamilyArgs,
    },
    /// Emit the JSON description of a family member.
    Family {
        #[command(subcommand)]
        kind: FamilyKind,
    },
    /// Run every property on the catalogue and the centraliser family.
    Suite {
        /// Largest n for the centraliser sweep.
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
enum FamilyKind {
    Cent {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "")]
        parts: Vec<String>,
    },
    Schur {
        #[arg(long)]
        m: usize,
    },
    Brauer {
        #[arg(long)]
        n: usize,
    },
    Example {
        #[arg(long)]
        id: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Inconclusive(_) => 3,
            _ => 2,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        msg: msg.into(),
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// A resolved input before a field is chosen.
enum Source {
    File { label: String, file: AlgebraFile },
    Family { label: String, fam: FamilyRef },
}

impl Source {
    fn label(&self) -> &str {
        match self {
            Source::File { label, .. } | Source::Family { label, .. } => label,
        }
    }

    fn field(&self, over: Option<FieldSpec>) -> CliResult<FieldSpec> {
        if let Some(f) = over {
            return Ok(f);
        }
        match self {
            Source::File { file, .. } => Ok(file.field_spec()?),
            Source::Family { .. } => Ok(FieldSpec::Prime(DEFAULT_PRIME)),
        }
    }

    fn load<F: Field>(&self, f: &F) -> Result<VerifyInput<F>> {
        match self {
            Source::File { label, file } => file.load(f, label),
            Source::Family { label, fam } => {
                let mut inp = fam.build(f)?;
                inp.label = label.clone();
                Ok(inp)
            }
        }
    }
}

fn family_from_args(kind: &str, a: &FamilyArgs) -> CliResult<FamilyRef> {
    let need = |x: Option<usize>, flag: &str| x.ok_or_else(|| usage(format!("family:{kind} needs --{flag}")));
    Ok(match kind {
        "cent" => FamilyRef::Cent {
            n: need(a.n, "n")?,
            parts: a.parts.clone().unwrap_or_default(),
        },
        "schur" => FamilyRef::Schur { m: need(a.m, "m")? },
        "brauer" => FamilyRef::Brauer { n: need(a.n, "n")? },
        "example" => FamilyRef::Example {
            id: a.id.clone().ok_or_else(|| usage("family:example needs --id"))?,
        },
        _ => return Err(usage(format!("unknown family {kind:?}"))),
    })
}

fn family_label(fam: &FamilyRef) -> String {
    match fam {
        FamilyRef::Cent { n, parts } => format!(
            "family:cent:{n}:{}",
            parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        ),
        FamilyRef::Schur { m } => format!("family:schur:{m}"),
        FamilyRef::Brauer { n } => format!("family:brauer:{n}"),
        FamilyRef::Example { id } => format!("example:{id}"),
    }
}

fn read_source(r: &str, fam: &FamilyArgs) -> CliResult<Source> {
    if let Some(id) = r.strip_prefix("example:") {
        id.parse::<ExampleId>()?;
        return Ok(Source::Family {
            label: r.to_string(),
            fam: FamilyRef::Example { id: id.to_string() },
        });
    }
    if let Some(rest) = r.strip_prefix("family:") {
        let fam = if rest.contains(':') {
            FamilyRef::parse(rest)?
        } else {
            family_from_args(rest, fam)?
        };
        return Ok(Source::Family {
            label: family_label(&fam),
            fam,
        });
    }
    let (label, text) = if r == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("reading stdin: {e}")))?;
        ("stdin".to_string(), s)
    } else {
        let s = std::fs::read_to_string(r).map_err(|e| usage(format!("reading {r}: {e}")))?;
        (r.to_string(), s)
    };
    Ok(Source::File {
        label,
        file: AlgebraFile::from_json(&text)?,
    })
}

macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            FieldSpec::Prime(p) => {
                let $f = PrimeField::new(p)?;
                $body
            }
            FieldSpec::Rational => {
                let $f = Rationals;
                $body
            }
        }
    };
}

struct Run {
    settings: Settings,
    field: Option<FieldSpec>,
    witnesses: bool,
}

struct Report {
    body: Value,
    code: u8,
}

impl Run {
    fn header(&self, command: &str, spec: FieldSpec, input: Option<&str>) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("command".into(), json!(command));
        m.insert("field".into(), json!(spec.to_string()));
        m.insert("seed".into(), json!(self.settings.seed));
        m.insert("cutoff".into(), json!(self.settings.cutoff));
        if let Some(i) = input {
            m.insert("input".into(), json!(i));
        }
        m
    }

    fn with_order<F: Field>(&self, mut inp: VerifyInput<F>, order: Option<&str>) -> CliResult<VerifyInput<F>> {
        if let Some(o) = order {
            let o: IdempotentOrder = o.parse()?;
            if o.len() != inp.algebra.n_vertices() {
                return Err(usage(format!("order {o} does not match {} vertices", inp.algebra.n_vertices())));
            }
            inp.order = o;
        }
        Ok(inp)
    }

    fn info<F: Field>(&self, inp: &VerifyInput<F>, mut m: Map<String, Value>) -> CliResult<Report> {
        let a = &inp.algebra;
        let cut = self.settings.cutoff;
        let c = classify(a, &self.settings)?;
        let n = a.n_vertices();
        m.insert("dim".into(), json!(a.dim()));
        m.insert("vertices".into(), json!(n));
        m.insert("cartan".into(), json!(a.cartan_matrix()));
        m.insert(
            "projective_radical_layers".into(),
            json!((0..n).map(|v| ModuleRep::projective(a, v).radical_layers()).collect::<Vec<_>>()),
        );
        m.insert("loewy_length".into(), json!(a.loewy_length()));
        m.insert("global_dim".into(), json!(global_dim(a, cut)));
        m.insert("classification".into(), json!(c));
        let code = if c.any_inconclusive() { 3 } else { 0 };
        Ok(Report {
            body: Value::Object(m),
            code,
        })
    }

    fn stratify<F: Field>(&self, inp: &VerifyInput<F>, all: bool, mut m: Map<String, Value>) -> CliResult<Report> {
        if all {
            let rows: Vec<Value> = find_stratifying_orders(&inp.algebra)?
                .into_iter()
                .map(|(o, st, pr)| json!({"order": o.to_string(), "standardly": st, "properly": pr}))
                .collect();
            m.insert("orders".into(), json!(rows));
            return Ok(Report {
                body: Value::Object(m),
                code: 0,
            });
        }
        let s = standard_family(&inp.algebra, &inp.order)?;
        let dims = |ms: &[ModuleRep<F>]| ms.iter().map(|x| x.dims().to_vec()).collect::<Vec<_>>();
        m.insert("order".into(), json!(s.order.to_string()));
        m.insert("standardly_stratified".into(), json!(s.standardly));
        m.insert("properly_stratified".into(), json!(s.properly));
        m.insert("delta".into(), json!(dims(&s.delta)));
        m.insert("proper_delta".into(), json!(dims(&s.proper_delta)));
        m.insert("nabla".into(), json!(dims(&s.nabla)));
        m.insert("proper_nabla".into(), json!(dims(&s.proper_nabla)));
        if self.witnesses {
            m.insert("delta_modules".into(), json!(s.delta.iter().map(module_to_json).collect::<Vec<_>>()));
        }
        Ok(Report {
            body: Value::Object(m),
            code: 0,
        })
    }

    fn tilting<F: Field>(&self, inp: &VerifyInput<F>, mut m: Map<String, Value>) -> CliResult<Report> {
        let s = standard_family(&inp.algebra, &inp.order)?;
        let t = characteristic_tilting(&s, &self.settings)?;
        let iso = summands_match(&t.summands, &t.cotilting_summands, &self.settings)?;
        let g = gorenstein_dim(&inp.algebra, self.settings.cutoff)?;
        let nabla = in_filtration_category(&t.basic, Family::Nabla, &s)?;
        let dims = |ms: &[ModuleRep<F>]| ms.iter().map(|x| x.dims().to_vec()).collect::<Vec<_>>();
        m.insert("order".into(), json!(s.order.to_string()));
        m.insert("tilting_dims".into(), json!(dims(&t.summands)));
        m.insert("cotilting_dims".into(), json!(dims(&t.cotilting_summands)));
        m.insert("delta_multiplicities".into(), json!(t.multiplicities));
        m.insert("pd_T".into(), json!(t.pd));
        m.insert("T_isomorphic_to_C".into(), json!(iso.is_some()));
        m.insert("T_in_F_nabla".into(), json!(nabla.member));
        m.insert("gorenstein".into(), json!(g));
        let agree = g.value.is_finite() == iso.is_some() && iso.is_some() == nabla.member;
        m.insert("gorenstein_cross_check".into(), json!(agree));
        m.insert("transcript".into(), json!(t.transcript));
        if self.witnesses {
            m.insert("tilting_modules".into(), json!(t.summands.iter().map(module_to_json).collect::<Vec<_>>()));
            m.insert(
                "cotilting_modules".into(),
                json!(t.cotilting_summands.iter().map(module_to_json).collect::<Vec<_>>()),
            );
        }
        Ok(Report {
            body: Value::Object(m),
            code: if agree { 0 } else { 1 },
        })
    }

    fn ringel_dual<F: Field>(
        &self,
        inp: &VerifyInput<F>,
        dual_order: Option<&str>,
        mut m: Map<String, Value>,
    ) -> CliResult<Report> {
        let s = standard_family(&inp.algebra, &inp.order)?;
        let t = characteristic_tilting(&s, &self.settings)?;
        let verts = match dual_order {
            Some(o) => o.parse::<IdempotentOrder>()?.vertices().to_vec(),
            None => s.order.reversed().vertices().to_vec(),
        };
        let r = ringel_dual_with_order(&s, &t, &verts)?;
        let cmp = invariant_isomorphic(&r.algebra, Some(&r.order), &inp.algebra, Some(&inp.order), &self.settings)?;
        let (st, pr) = stratification_check(&r.algebra, &r.order)?;
        m.insert("order".into(), json!(s.order.to_string()));
        m.insert("dual_dim".into(), json!(r.algebra.dim()));
        m.insert("dual_cartan".into(), json!(r.algebra.cartan_matrix()));
        m.insert("dual_properly_stratified".into(), json!(st.holds && pr.holds));
        m.insert("comparison_with_input".into(), json!(cmp));
        let file = AlgebraFile::from_algebra(&r.algebra, Some(&r.order), None);
        m.insert("dual".into(), serde_json::to_value(&file).expect("serializable"));
        Ok(Report {
            body: Value::Object(m),
            code: 0,
        })
    }

    fn suite_row<F: Field>(&self, inp: &VerifyInput<F>) -> CliResult<(Value, [usize; 4])> {
        let a = &inp.algebra;
        let cut = self.settings.cutoff;
        let s = standard_family(a, &inp.order)?;
        let g = gorenstein_dim(a, cut)?;
        let mut verdicts = Map::new();
        let mut counts = [0usize; 4];
        for p in PropertyId::ALL {
            let t = verify(p, inp, &self.settings, false)?;
            counts[outcome_index(t.outcome)] += 1;
            verdicts.insert(p.name().into(), json!(t.outcome));
        }
        let row = json!({
            "input": inp.label,
            "dim": a.dim(),
            "order": inp.order.to_string(),
            "properly_stratified": s.properly.holds,
            "gorenstein_dim": g.value,
            "dominant_dim": dominant_dim_algebra(a, cut),
            "projective_injective": projective_injective_vertices(a).iter().map(|v| v + 1).collect::<Vec<_>>(),
            "verdicts": verdicts,
        });
        Ok((row, counts))
    }

    fn suite<F: Field>(&self, f: &F, max_n: usize) -> CliResult<(Vec<Value>, [usize; 4])> {
        let mut inputs = Vec::new();
        for id in ExampleId::catalogue() {
            inputs.push(VerifyInput::example(id, f)?);
        }
        for n in 1..=max_n {
            for j in JordanType::all_with_n(n) {
                let mut inp = VerifyInput::from_jordan(&j, f)?;
                inp.label = format!("family:cent:{n}:{}", j.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","));
                inputs.push(inp);
            }
        }
        let results: Vec<CliResult<(Value, [usize; 4])>> = std::thread::scope(|sc| {
            let handles: Vec<_> = inputs.iter().map(|inp| sc.spawn(move || self.suite_row(inp))).collect();
            handles.into_iter().map(|h| h.join().expect("suite worker panicked")).collect()
        });
        let mut rows = Vec::new();
        let mut total = [0usize; 4];
        for r in results {
            let (row, c) = r?;
            rows.push(row);
            for k in 0..4 {
                total[k] += c[k];
            }
        }
        Ok((rows, total))
    }
}

fn outcome_index(o: Outcome) -> usize {
    match o {
        Outcome::Pass => 0,
        Outcome::Fail => 1,
        Outcome::HypothesisNotMet => 2,
        Outcome::Inconclusive => 3,
    }
}

fn outcome_code(outcomes: &[Outcome]) -> u8 {
    if outcomes.contains(&Outcome::Fail) {
        1
    } else if outcomes.contains(&Outcome::Inconclusive) {
        3
    } else if outcomes.contains(&Outcome::HypothesisNotMet) {
        2
    } else {
        0
    }
}

fn table(rows: &[Value]) -> String {
    let mut out = format!("{:<28}", "input");
    for p in PropertyId::ALL {
        out += &format!(" {:>14}", p.name());
    }
    out.push('\n');
    for r in rows {
        out += &format!("{:<28}", r["input"].as_str().unwrap_or(""));
        for p in PropertyId::ALL {
            let v = r["verdicts"][p.name()].as_str().unwrap_or("");
            let short = match v {
                "hypothesis_not_met" => "n/a",
                other => other,
            };
            out += &format!(" {short:>14}");
        }
        out.push('\n');
    }
    out
}

fn execute(cli: &Cli) -> CliResult<(String, u8)> {
    let field = cli.field.as_deref().map(str::parse::<FieldSpec>).transpose()?;
    let run = Run {
        settings: Settings::default().with_seed(cli.seed).with_cutoff(cli.cutoff),
        field,
        witnesses: cli.witnesses,
    };
    let pretty = |r: Report| (serde_json::to_string_pretty(&r.body).expect("serializable") + "\n", r.code);
    match &cli.cmd {
        Cmd::Info { input, fam } => {
            let src = read_source(input, fam)?;
            let spec = src.field(run.field)?;
            let h = run.header("info", spec, Some(src.label()));
            with_field!(spec, f => Ok(pretty(run.info(&src.load(&f)?, h)?)))
        }
        Cmd::Stratify {
            input,
            order,
            all_orders,
            fam,
        } => {
            let src = read_source(input, fam)?;
            let spec = src.field(run.field)?;
            let h = run.header("stratify", spec, Some(src.label()));
            with_field!(spec, f => {
                let inp = run.with_order(src.load(&f)?, order.as_deref())?;
                Ok(pretty(run.stratify(&inp, *all_orders, h)?))
            })
        }
        Cmd::Tilting { input, order, fam } => {
            let src = read_source(input, fam)?;
            let spec = src.field(run.field)?;
            let h = run.header("tilting", spec, Some(src.label()));
            with_field!(spec, f => {
                let inp = run.with_order(src.load(&f)?, order.as_deref())?;
                Ok(pretty(run.tilting(&inp, h)?))
            })
        }
        Cmd::RingelDual {
            input,
            order,
            dual_order,
            fam,
        } => {
            let src = read_source(input, fam)?;
            let spec = src.field(run.field)?;
            let h = run.header("ringel-dual", spec, Some(src.label()));
            with_field!(spec, f => {
                let inp = run.with_order(src.load(&f)?, order.as_deref())?;
                Ok(pretty(run.ringel_dual(&inp, dual_order.as_deref(), h)?))
            })
        }
        Cmd::Verify {
            property,
            inputs,
            order,
            fam,
        } => {
            let p: PropertyId = property.parse()?;
            let mut transcripts = Vec::new();
            let mut outcomes = Vec::new();
            let mut spec0 = None;
            for input in inputs {
                let src = read_source(input, fam)?;
                let spec = src.field(run.field)?;
                spec0.get_or_insert(spec);
                let t = with_field!(spec, f => {
                    let inp = run.with_order(src.load(&f)?, order.as_deref())?;
                    verify(p, &inp, &run.settings, run.witnesses)?
                });
                outcomes.push(t.outcome);
                let mut v = serde_json::to_value(&t).expect("serializable");
                v["field"] = json!(spec.to_string());
                transcripts.push(v);
            }
            let spec = spec0.unwrap_or(FieldSpec::Prime(DEFAULT_PRIME));
            let mut m = run.header("verify", spec, None);
            m.insert("property".into(), json!(p));
            m.insert("transcripts".into(), json!(transcripts));
            Ok(pretty(Report {
                body: Value::Object(m),
                code: outcome_code(&outcomes),
            }))
        }
        Cmd::Family { kind } => {
            let fam = match kind {
                FamilyKind::Cent { n, parts } => {
                    let parts = parts
                        .iter()
                        .filter(|p| !p.trim().is_empty())
                        .map(|p| p.trim().parse::<usize>().map_err(|_| usage(format!("bad part {p:?}"))))
                        .collect::<CliResult<Vec<_>>>()?;
                    FamilyRef::Cent { n: *n, parts }
                }
                FamilyKind::Schur { m } => FamilyRef::Schur { m: *m },
                FamilyKind::Brauer { n } => FamilyRef::Brauer { n: *n },
                FamilyKind::Example { id } => FamilyRef::Example { id: id.clone() },
            };
            let spec = run.field.unwrap_or(FieldSpec::Prime(DEFAULT_PRIME));
            with_field!(spec, f => {
                let inp = fam.build(&f)?;
                let file = AlgebraFile::from_algebra(&inp.algebra, Some(&inp.order), Some(fam.clone()));
                Ok((file.to_json() + "\n", 0))
            })
        }
        Cmd::Suite { max_n, format } => {
            let spec = run.field.unwrap_or(FieldSpec::Prime(DEFAULT_PRIME));
            let (rows, total) = with_field!(spec, f => run.suite(&f, *max_n)?);
            let code = if total[1] > 0 {
                1
            } else if total[3] > 0 {
                3
            } else {
                0
            };
            match format {
                Format::Table => Ok((table(&rows), code)),
                Format::Json => {
                    let mut m = run.header("suite", spec, None);
                    m.insert("rows".into(), json!(rows));
                    m.insert(
                        "summary".into(),
                        json!({"pass": total[0], "fail": total[1], "hypothesis_not_met": total[2], "inconclusive": total[3]}),
                    );
                    Ok(pretty(Report {
                        body: Value::Object(m),
                        code,
                    }))
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok((text, code)) => {
            let written = match &cli.output {
                Some(p) => std::fs::write(p, &text).map_err(|e| format!("writing {}: {e}", p.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(code),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
