use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use ringdiag::lab::{self, LabConfig, Theorem};
use ringdiag::{edr, json as j, neat, stable_range, toeplitz};
use ringdiag::{ring, Element, Error, Exec, Matrix, Ring, SearchBounds};

#[derive(Parser)]
#[command(name = "ringdiag", version, about = "Exact diagonal reduction and stable-range witnesses over Bezout rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Ring: Z, Z/<n>, GF(<p>)[x] or Z_(<p>).
    #[arg(long)]
    ring: Option<String>,
    /// Read the input from a JSON file: {"ring", "args"} or {"ring", "rows"}.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Re-parse the emitted certificate and replay its verification.
    #[arg(long)]
    check: bool,
    #[arg(long, default_value_t = 10_000)]
    integer_bound: u64,
    #[arg(long, default_value_t = 6)]
    poly_degree: u32,
    #[arg(long, default_value_t = 2_000)]
    tuple_rank: u64,
    /// Elements, a matrix as JSON rows, or a theorem id.
    args: Vec<String>,
}

#[derive(Args, Clone)]
struct LabArgs {
    /// Largest modulus the lab accepts.
    #[arg(long, default_value_t = 30)]
    lab_bound: u64,
    /// Sample this many 2x2 matrices instead of sweeping all of them.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run the sweep on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Subcommand)]
#[command(rename_all = "kebab-case")]
enum Command {
    /// Bezout certificate of two elements.
    #[command(allow_negative_numbers = true)]
    Bezout(Common),
    /// Stable range 1 witness y with a + b*y a unit.
    #[command(allow_negative_numbers = true)]
    Sr1(Common),
    /// Square stable range 1 witness x with a^2 + b*x a unit.
    #[command(allow_negative_numbers = true)]
    Ssr1(Common),
    /// Stable range 2 shortening of a unimodular row.
    #[command(allow_negative_numbers = true)]
    Sr2(Common),
    /// Invertible Toeplitz T with (a, b)T = (d, 0).
    #[command(allow_negative_numbers = true)]
    ToeplitzReduce(Common),
    /// Invertible Toeplitz [[a, b], [x, a]].
    #[command(allow_negative_numbers = true)]
    ToeplitzComplete(Common),
    /// Diagonalize a 2x2 matrix with Toeplitz factors.
    ToeplitzSnf(Common),
    /// Smith normal form through elementary matrices.
    Snf(Common),
    /// (p, q) with (pa)R + (pb + qc)R = R.
    #[command(allow_negative_numbers = true)]
    FindPq(Common),
    /// Neat factorization a = r*s for a coprime pair (b, c).
    #[command(allow_negative_numbers = true)]
    Neat(Common),
    /// t with a + b*t neat.
    #[command(allow_negative_numbers = true)]
    NeatShift(Common),
    /// Clean decomposition in R/(r*s)R: arguments r s a x.
    #[command(allow_negative_numbers = true)]
    Clean(Common),
    /// lambda, u, v from a, b, c, p, q.
    #[command(allow_negative_numbers = true)]
    Prop5Forward(Common),
    /// p, q from a, b, c, lambda, u, v.
    #[command(allow_negative_numbers = true)]
    Prop5Backward(Common),
    /// Classify Z/n by exhaustion.
    Classify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        lab: LabArgs,
    },
    /// Verify a theorem over Z/n by exhaustion.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        lab: LabArgs,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Ring and raw input, from the flags or the JSON file.
struct Input {
    ring: Ring,
    doc: Option<Value>,
    common: Common,
}

impl Input {
    fn load(common: &Common) -> Outcome<Input> {
        let doc = match &common.json {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
                Some(serde_json::from_str::<Value>(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?)
            }
            None => None,
        };
        let spec = match (&common.ring, &doc) {
            (Some(r), _) => r.clone(),
            (None, Some(d)) => d
                .get("ring")
                .and_then(Value::as_str)
                .ok_or_else(|| Failure::Usage("no --ring and no \"ring\" in the JSON input".into()))?
                .to_string(),
            (None, None) => return Err(Failure::Usage("--ring is required".into())),
        };
        let ring = ringdiag::parse_ring(&spec)?;
        Ok(Input { ring, doc, common: common.clone() })
    }

    fn bounds(&self) -> SearchBounds {
        SearchBounds {
            integer_bound: self.common.integer_bound,
            poly_degree: self.common.poly_degree,
            tuple_rank: self.common.tuple_rank,
        }
    }

    fn elements(&self, arity: Option<usize>, usage: &str) -> Outcome<Vec<Element>> {
        let es = match &self.doc {
            Some(d) => {
                let args = d.get("args").ok_or_else(|| Failure::Usage("JSON input needs \"args\"".into()))?;
                j::parse_elements(self.ring, args)?
            }
            None => self
                .common
                .args
                .iter()
                .map(|a| ringdiag::parse_element(self.ring, a))
                .collect::<ringdiag::Result<Vec<_>>>()?,
        };
        match arity {
            Some(k) if es.len() != k => Err(Failure::Usage(format!("expected {usage}"))),
            _ => Ok(es),
        }
    }

    fn matrix(&self) -> Outcome<Matrix> {
        let rows = match &self.doc {
            Some(d) => d.get("rows").cloned().ok_or_else(|| Failure::Usage("JSON input needs \"rows\"".into()))?,
            None => match self.common.args.as_slice() {
                [text] => serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix rows: {e}")))?,
                _ => return Err(Failure::Usage("expected one matrix given as JSON rows".into())),
            },
        };
        Ok(j::parse_rows(self.ring, &rows)?)
    }

    fn theorem(&self) -> Outcome<Theorem> {
        let id = match (&self.doc, self.common.args.as_slice()) {
            (_, [id]) => id.clone(),
            (Some(d), []) => d
                .get("theorem")
                .and_then(Value::as_str)
                .ok_or_else(|| Failure::Usage("JSON input needs \"theorem\"".into()))?
                .to_string(),
            _ => return Err(Failure::Usage("expected one theorem id".into())),
        };
        Ok(id.parse()?)
    }
}

fn lab_config(lab: &LabArgs, bounds: SearchBounds) -> LabConfig {
    LabConfig {
        bound: lab.lab_bound,
        exec: if lab.sequential { Exec::Sequential } else { Exec::default() },
        search: bounds,
        thm13_samples: lab.samples,
        seed: lab.seed,
    }
}

fn witness_fields(doc: &mut Map<String, Value>, a: &Element, b: &Element, w: &stable_range::WitnessReport) {
    j::put(doc, vec![
        ("a", j::element(a)),
        ("b", j::element(b)),
        ("found", json!(w.found)),
        ("witness", w.witness.as_ref().map_or(Value::Null, j::element)),
        ("searched_bound", json!(w.searched_bound)),
        ("exhaustive", json!(w.exhaustive)),
    ]);
}

fn execute(command: &Command) -> Outcome<(Value, bool)> {
    let (name, common) = match command {
        Command::Bezout(c) => ("bezout", c),
        Command::Sr1(c) => ("sr1", c),
        Command::Ssr1(c) => ("ssr1", c),
        Command::Sr2(c) => ("sr2", c),
        Command::ToeplitzReduce(c) => ("toeplitz-reduce", c),
        Command::ToeplitzComplete(c) => ("toeplitz-complete", c),
        Command::ToeplitzSnf(c) => ("toeplitz-snf", c),
        Command::Snf(c) => ("snf", c),
        Command::FindPq(c) => ("find-pq", c),
        Command::Neat(c) => ("neat", c),
        Command::NeatShift(c) => ("neat-shift", c),
        Command::Clean(c) => ("clean", c),
        Command::Prop5Forward(c) => ("prop5-forward", c),
        Command::Prop5Backward(c) => ("prop5-backward", c),
        Command::Classify { common, .. } => ("classify", common),
        Command::Verify { common, .. } => ("verify", common),
    };
    let input = Input::load(common)?;
    let ring = input.ring;
    let bounds = input.bounds();
    let mut doc = j::document(name, ring);
    let e = j::element;
    match command {
        Command::Bezout(_) => {
            let xs = input.elements(Some(2), "two elements a b")?;
            j::bezout(&mut doc, &ring::bezout_certificate(&xs[0], &xs[1])?);
        }
        Command::Sr1(_) | Command::Ssr1(_) => {
            let xs = input.elements(Some(2), "two elements a b")?;
            let w = if name == "sr1" {
                stable_range::sr1_witness(&xs[0], &xs[1], &bounds)?
            } else {
                stable_range::ssr1_witness(&xs[0], &xs[1], &bounds)?
            };
            witness_fields(&mut doc, &xs[0], &xs[1], &w);
        }
        Command::Sr2(_) => {
            let xs = input.elements(None, "")?;
            let shifts = stable_range::sr2_reduce(&xs, &bounds)?;
            j::put(&mut doc, vec![("elements", j::elements(&xs)), ("shifts", j::elements(&shifts))]);
        }
        Command::ToeplitzReduce(_) => {
            let xs = input.elements(Some(2), "two elements a b")?;
            let r = toeplitz::toeplitz_row_reduce(&xs[0], &xs[1], &bounds)?;
            j::put(&mut doc, vec![
                ("a", e(&r.a)),
                ("b", e(&r.b)),
                ("d", e(&r.d)),
                ("matrix", j::rows(&r.matrix.to_matrix())),
                ("witness", e(&r.witness)),
                ("unit", e(&r.unit)),
            ]);
        }
        Command::ToeplitzComplete(_) => {
            let xs = input.elements(Some(2), "two elements a b")?;
            let t = toeplitz::toeplitz_complete(&xs[0], &xs[1], &bounds)?;
            j::put(&mut doc, vec![
                ("a", e(&t.a)),
                ("b", e(&t.b)),
                ("x", e(&t.c)),
                ("det", e(&t.det())),
                ("matrix", j::rows(&t.to_matrix())),
            ]);
        }
        Command::ToeplitzSnf(_) => {
            let d = toeplitz::toeplitz_diag_2x2(&input.matrix()?, &bounds)?;
            j::toeplitz_diag(&mut doc, &d);
        }
        Command::Snf(_) => {
            let cert = edr::smith_nxm(&input.matrix()?, &bounds)?;
            j::put(&mut doc, vec![("diagonal", j::elements(&cert.diagonal())), ("certificate", j::certificate(&cert))]);
        }
        Command::FindPq(_) => {
            let xs = input.elements(Some(3), "three elements a b c")?;
            let w = edr::find_pq(&xs[0], &xs[1], &xs[2], &bounds)?;
            j::put(&mut doc, vec![("a", e(&w.a)), ("b", e(&w.b)), ("c", e(&w.c)), ("p", e(&w.p)), ("q", e(&w.q))]);
        }
        Command::Neat(_) => {
            let xs = input.elements(Some(3), "three elements a b c")?;
            let w = neat::neat_witness(&xs[0], &xs[1], &xs[2])?;
            j::put(&mut doc, vec![("a", e(&w.a)), ("b", e(&w.b)), ("c", e(&w.c)), ("r", e(&w.r)), ("s", e(&w.s))]);
        }
        Command::NeatShift(_) => {
            let xs = input.elements(Some(2), "two elements a b")?;
            let t = neat::neat_range1_shift(&xs[0], &xs[1], &bounds)?;
            let shifted = &xs[0] + &(&xs[1] * &t);
            j::put(&mut doc, vec![("a", e(&xs[0])), ("b", e(&xs[1])), ("t", e(&t)), ("shifted", e(&shifted))]);
        }
        Command::Clean(_) => {
            let xs = input.elements(Some(4), "four elements r s a x")?;
            j::clean(&mut doc, &neat::clean_decompose(&xs[0], &xs[1], &xs[2], &xs[3])?);
        }
        Command::Prop5Forward(_) => {
            let xs = input.elements(Some(5), "five elements a b c p q")?;
            let f = neat::prop5_forward(&xs[0], &xs[1], &xs[2], &xs[3], &xs[4])?;
            j::put(&mut doc, vec![
                ("a", e(&f.a)),
                ("b", e(&f.b)),
                ("c", e(&f.c)),
                ("p", e(&xs[3])),
                ("q", e(&xs[4])),
                ("lambda", e(&f.lambda)),
                ("u", e(&f.u)),
                ("v", e(&f.v)),
                ("uv_coprime", json!(f.uv_coprime)),
            ]);
        }
        Command::Prop5Backward(_) => {
            let xs = input.elements(Some(6), "six elements a b c lambda u v")?;
            let w = neat::prop5_backward(&xs[0], &xs[1], &xs[2], &xs[3], &xs[4], &xs[5], &bounds)?;
            j::put(&mut doc, vec![
                ("a", e(&w.a)),
                ("b", e(&w.b)),
                ("c", e(&w.c)),
                ("lambda", e(&xs[3])),
                ("u", e(&xs[4])),
                ("v", e(&xs[5])),
                ("p", e(&w.p)),
                ("q", e(&w.q)),
            ]);
        }
        Command::Classify { lab: l, .. } => {
            if !common.args.is_empty() {
                return Err(Failure::Usage("classify takes no positional arguments".into()));
            }
            j::classification(&mut doc, &lab::classify(ring, &lab_config(l, bounds))?);
        }
        Command::Verify { lab: l, .. } => {
            let theorem = input.theorem()?;
            j::report(&mut doc, &lab::verify_theorem(ring, theorem, &lab_config(l, bounds))?);
        }
    }
    doc.insert("status".into(), json!("ok"));
    Ok((j::sorted(Value::Object(doc)), common.check))
}

fn error_doc(code: &str, message: &str) -> Value {
    j::sorted(json!({ "status": "error", "error_code": code, "message": message }))
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok((doc, check)) => {
            if check {
                let text = doc.to_string();
                let parsed: Value = serde_json::from_str(&text).expect("own output parses");
                if let Err(e) = j::replay(&parsed) {
                    print(&error_doc(e.code(), &e.to_string()));
                    return ExitCode::from(1);
                }
            }
            print(&doc);
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            print(&error_doc(e.code(), &e.to_string()));
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            print(&error_doc("UsageError", &m));
            ExitCode::from(2)
        }
    }
}
