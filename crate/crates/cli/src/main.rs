use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use schubert_lab::combinatorics::{
    avoids_patterns, par_family, rothe_diagram, ParFamily, Partition,
    Permutation,
};
use schubert_lab::flow::{
    build_g_lambda, check_hypersimplex, check_overlay_inclusions, check_permutahedron,
    flow_vertices, random_flow_minkowski, GtNetwork,
};
use schubert_lab::gt::{gt_points, integer_point_transform, schur};
use schubert_lab::minkowski::{minkowski_points, q_system, verify_theorem1};
use schubert_lab::poly::{flagged_character, schubert, verify_lemma_di, DemazureParams};
use schubert_lab::triangle::LatticePointSet;

#[derive(Parser)]
#[command(name = "schubert-lab", version, about = "Schubert polynomials, Gelfand-Tsetlin polytopes and flow polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write JSON here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Leave out wall-clock timings so repeated runs are byte-identical.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Schubert polynomial of a permutation.
    Schubert {
        /// Permutation, e.g. `2413` or `2,4,1,3`.
        #[arg(long)]
        w: Permutation,
    },
    /// Flagged Schur character of a column-convex diagram.
    Character(Target),
    /// Gelfand-Tsetlin polytopes.
    #[command(subcommand)]
    Gt(GtOp),
    /// Minkowski sums of Gelfand-Tsetlin polytopes.
    #[command(subcommand)]
    Minkowski(MinkowskiOp),
    /// Flow networks and their flow polytopes.
    #[command(subcommand)]
    Flow(FlowOp),
    /// Batch verification, one JSON line per instance and a summary.
    #[command(subcommand)]
    Verify(VerifyOp),
}

/// A diagram given either as a Rothe diagram or as a partition family.
#[derive(Args)]
struct Target {
    /// Permutation, e.g. `2413` or `2,4,1,3`.
    #[arg(long, required_unless_present = "family", conflicts_with = "family")]
    w: Option<Permutation>,
    /// Partition family, shortest first, e.g. `0;1,0;2,1,0`.
    #[arg(long)]
    family: Option<ParFamily>,
}

#[derive(Subcommand)]
enum GtOp {
    /// Lattice points of GT(λ).
    Enumerate {
        #[arg(long)]
        lambda: Partition,
    },
    /// Integer point transform of GT(λ).
    Transform {
        #[arg(long)]
        lambda: Partition,
    },
    /// Schur polynomial as a weight generating function.
    Schur {
        #[arg(long)]
        lambda: Partition,
    },
}

#[derive(Subcommand)]
enum MinkowskiOp {
    /// Inequality description of the Minkowski sum.
    System(Target),
    /// Lattice points of the Minkowski sum.
    Enumerate(Target),
    /// Compare the specialized transform with the Schubert polynomial.
    Verify {
        #[arg(long)]
        w: Permutation,
    },
}

#[derive(Subcommand)]
enum FlowOp {
    /// The network G_λ.
    Build {
        #[arg(long)]
        lambda: Partition,
    },
    /// Integer flows of G_λ.
    Enumerate {
        #[arg(long)]
        lambda: Partition,
    },
    /// GT(tλ) against flows of G_{tλ} for t = 1..=dilate.
    Equiv {
        #[arg(long)]
        lambda: Partition,
        #[arg(long, default_value_t = 1)]
        dilate: i64,
    },
    /// Path flows of G_λ and their graphical weights.
    Vertices {
        #[arg(long)]
        lambda: Partition,
    },
}

#[derive(Subcommand)]
enum VerifyOp {
    /// Schubert polynomials from Minkowski sums, every column-convex w up to n.
    Theorem1(Theorem1Args),
    /// GT polytopes against flow polytopes.
    Theorem2(Theorem2Args),
    /// Every check at a moderate size.
    All {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

#[derive(Args, Clone)]
struct Theorem1Args {
    #[arg(long, default_value_t = 5)]
    n: usize,
    /// Check this many random column-convex permutations of size n instead
    /// of all of them.
    #[arg(long)]
    sample: Option<usize>,
}

#[derive(Args, Clone)]
struct Theorem2Args {
    #[arg(long, default_value_t = 4)]
    max_parts: usize,
    #[arg(long, default_value_t = 3)]
    max_part: i64,
    #[arg(long, default_value_t = 1)]
    dilate: i64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    Mismatch,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Ok
        } else {
            Status::Mismatch
        }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Mismatch => "mismatch",
        }
    }
}

struct Output {
    sink: Box<dyn Write>,
    timing: bool,
    seed: u64,
}

impl Output {
    fn line(&mut self, v: &Value) -> io::Result<()> {
        serde_json::to_writer(&mut self.sink, v)?;
        self.sink.write_all(b"\n")?;
        self.sink.flush()
    }

    fn report(
        &mut self,
        command: &str,
        params: Value,
        result: Value,
        status: Status,
        start: Instant,
        seeded: bool,
    ) -> io::Result<Status> {
        let mut v = json!({
            "command": command,
            "params": params,
            "result": result,
            "status": status.name(),
        });
        if self.timing {
            v["millis"] = json!(start.elapsed().as_millis() as u64);
        }
        if seeded {
            v["seed"] = json!(self.seed);
        }
        self.line(&v)?;
        Ok(status)
    }
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Io(io::Error),
}

impl From<schubert_lab::Error> for Failure {
    fn from(e: schubert_lab::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Run = Result<Status, Failure>;

fn points_json(set: &LatticePointSet) -> Value {
    json!({
        "size": set.size(),
        "count": set.len(),
        "points": set.iter().map(|p| p.entries().to_vec()).collect::<Vec<_>>(),
    })
}

fn target_family(t: &Target) -> Result<(Value, ParFamily), Failure> {
    match (&t.w, &t.family) {
        (Some(w), _) => {
            let fam = par_family(&rothe_diagram(w))?;
            Ok((json!({ "w": w.to_string() }), fam))
        }
        (None, Some(f)) => Ok((json!({ "family": f.shapes() }), f.clone())),
        (None, None) => Err(Failure::Input("either --w or --family is required".into())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = std::env::var("SCHUBERT_LAB_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global()
            .ok();
    }
    let sink: Box<dyn Write> = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(io::stdout().lock()),
    };
    let mut out = Output {
        sink,
        timing: !cli.no_timing,
        seed: cli.seed,
    };
    match run(&cli.command, &mut out) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Mismatch) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            let _ = out.line(&json!({ "status": "error", "error": msg }));
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: &Command, out: &mut Output) -> Run {
    let start = Instant::now();
    match command {
        Command::Schubert { w } => {
            let p = schubert(w);
            Ok(out.report("schubert", json!({ "w": w.to_string() }), p.to_json(), Status::Ok, start, false)?)
        }
        Command::Character(t) => {
            let (params, fam) = target_family(t)?;
            let p = flagged_character(&fam.to_diagram())?;
            Ok(out.report("character", params, p.to_json(), Status::Ok, start, false)?)
        }
        Command::Gt(op) => run_gt(op, out, start),
        Command::Minkowski(op) => run_minkowski(op, out, start),
        Command::Flow(op) => run_flow(op, out, start),
        Command::Verify(op) => run_verify(op, out, start),
    }
}

fn run_gt(op: &GtOp, out: &mut Output, start: Instant) -> Run {
    let (name, lambda, result) = match op {
        GtOp::Enumerate { lambda } => ("gt enumerate", lambda, points_json(&gt_points(lambda))),
        GtOp::Transform { lambda } => (
            "gt transform",
            lambda,
            integer_point_transform(&gt_points(lambda)).to_json(),
        ),
        GtOp::Schur { lambda } => ("gt schur", lambda, schur(lambda).to_json()),
    };
    let params = json!({ "lambda": lambda.parts() });
    Ok(out.report(name, params, result, Status::Ok, start, false)?)
}

fn run_minkowski(op: &MinkowskiOp, out: &mut Output, start: Instant) -> Run {
    match op {
        MinkowskiOp::System(t) => {
            let (params, fam) = target_family(t)?;
            let sys = q_system(&fam);
            let result = json!({
                "size": sys.size(),
                "constraints": sys.constraints().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            });
            Ok(out.report("minkowski system", params, result, Status::Ok, start, false)?)
        }
        MinkowskiOp::Enumerate(t) => {
            let (params, fam) = target_family(t)?;
            let points = q_system(&fam).enumerate()?;
            Ok(out.report("minkowski enumerate", params, points_json(&points), Status::Ok, start, false)?)
        }
        MinkowskiOp::Verify { w } => {
            let r = verify_theorem1(w)?;
            let mut result = serde_json::to_value(&r).expect("report serializes");
            result["polytope"] = r.polytope.to_json();
            if !r.ok() {
                result["schubert"] = r.schubert.to_json();
                result["character"] = r.character.to_json();
            }
            let params = json!({ "w": w.to_string() });
            Ok(out.report("minkowski verify", params, result, Status::from_bool(r.ok()), start, false)?)
        }
    }
}

fn equiv_line(lambda: &Partition, t: i64) -> Result<Value, Failure> {
    let scaled = lambda.scaled(t);
    let g = GtNetwork::new(&scaled)?;
    let points = gt_points(&scaled);
    let flows = g.integer_flows();
    let mut round_trip = true;
    for x in &points {
        let f = g.gt_to_flow(x)?;
        round_trip &= flows.contains(&f) && &g.flow_to_gt(&f)? == x;
    }
    for f in &flows {
        round_trip &= points.contains(&g.flow_to_gt(f)?);
    }
    let ok = round_trip && points.len() == flows.len();
    Ok(json!({
        "lambda": scaled.parts(),
        "dilate": t,
        "gtCount": points.len(),
        "flowCount": flows.len(),
        "roundTrip": round_trip,
        "status": Status::from_bool(ok).name(),
    }))
}

fn run_flow(op: &FlowOp, out: &mut Output, start: Instant) -> Run {
    match op {
        FlowOp::Build { lambda } => {
            let net = build_g_lambda(lambda)?;
            let params = json!({ "lambda": lambda.parts() });
            Ok(out.report("flow build", params, net.to_json(), Status::Ok, start, false)?)
        }
        FlowOp::Enumerate { lambda } => {
            let flows = GtNetwork::new(lambda)?.integer_flows();
            let result = json!({
                "count": flows.len(),
                "flows": flows.iter().map(|f| f.values().to_vec()).collect::<Vec<_>>(),
            });
            let params = json!({ "lambda": lambda.parts() });
            Ok(out.report("flow enumerate", params, result, Status::Ok, start, false)?)
        }
        FlowOp::Equiv { lambda, dilate } => {
            if *dilate < 1 {
                return Err(Failure::Input(format!("--dilate must be at least 1, got {dilate}")));
            }
            let lines = (1..=*dilate)
                .map(|t| equiv_line(lambda, t))
                .collect::<Result<Vec<_>, _>>()?;
            let ok = lines.iter().all(|l| l["status"] == "ok");
            let params = json!({ "lambda": lambda.parts(), "dilate": dilate });
            Ok(out.report("flow equiv", params, Value::Array(lines), Status::from_bool(ok), start, false)?)
        }
        FlowOp::Vertices { lambda } => {
            let g = GtNetwork::new(lambda)?;
            let verts = flow_vertices(g.network())?;
            let result = json!({
                "count": verts.len(),
                "vertices": verts
                    .iter()
                    .map(|f| json!({ "flow": f.values(), "gwt": g.gwt(f) }))
                    .collect::<Vec<_>>(),
            });
            let params = json!({ "lambda": lambda.parts() });
            Ok(out.report("flow vertices", params, result, Status::Ok, start, false)?)
        }
    }
}

/// Evaluates instances in parallel, a chunk at a time, and writes one line
/// per instance in input order.
fn stream<T: Sync>(
    out: &mut Output,
    items: &[T],
    check: impl Fn(&T) -> Result<Value, Failure> + Sync,
) -> Result<(usize, usize), Failure> {
    let (mut total, mut bad) = (0, 0);
    let timing = out.timing;
    for chunk in items.chunks(64) {
        let lines: Vec<Result<Value, Failure>> = chunk
            .par_iter()
            .map(|item| {
                let t = Instant::now();
                let mut v = check(item)?;
                if timing {
                    v["millis"] = json!(t.elapsed().as_millis() as u64);
                }
                Ok(v)
            })
            .collect();
        for line in lines {
            let line = line?;
            total += 1;
            if line["status"] != "ok" {
                bad += 1;
            }
            out.line(&line)?;
        }
    }
    Ok((total, bad))
}

fn theorem1_instances(args: &Theorem1Args, seed: u64) -> Vec<Permutation> {
    let mut ws = Vec::new();
    let exhaustive_up_to = if args.sample.is_some() { args.n.saturating_sub(1) } else { args.n };
    for n in 1..=exhaustive_up_to {
        ws.extend(Permutation::all(n).into_iter().filter(avoids_patterns));
    }
    if let Some(k) = args.sample {
        let mut pool: Vec<Permutation> = Permutation::all(args.n)
            .into_iter()
            .filter(avoids_patterns)
            .collect();
        pool.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        pool.truncate(k);
        pool.sort();
        ws.extend(pool);
    }
    ws
}

fn theorem1_line(w: &Permutation) -> Result<Value, Failure> {
    let r = verify_theorem1(w)?;
    let mut v = serde_json::to_value(&r).expect("report serializes");
    v["check"] = json!("theorem1");
    v["w"] = json!(w.to_string());
    if !r.ok() {
        v["polytope"] = r.polytope.to_json();
        v["schubert"] = r.schubert.to_json();
        v["character"] = r.character.to_json();
    }
    v["status"] = json!(Status::from_bool(r.ok()).name());
    Ok(v)
}

fn theorem2_instances(args: &Theorem2Args) -> Vec<(Partition, i64)> {
    let mut out = Vec::new();
    for len in 1..=args.max_parts {
        for lambda in Partition::all_in_box(len, args.max_part) {
            for t in 1..=args.dilate.max(1) {
                out.push((lambda.clone(), t));
            }
        }
    }
    out
}

fn theorem2_line((lambda, t): &(Partition, i64)) -> Result<Value, Failure> {
    let mut v = equiv_line(lambda, *t)?;
    v["check"] = json!("theorem2");
    Ok(v)
}

fn summary(out: &mut Output, name: &str, params: Value, counts: (usize, usize), start: Instant, seeded: bool) -> Run {
    let (total, bad) = counts;
    let result = json!({ "instances": total, "mismatches": bad });
    Ok(out.report(name, params, result, Status::from_bool(bad == 0), start, seeded)?)
}

fn run_verify(op: &VerifyOp, out: &mut Output, start: Instant) -> Run {
    match op {
        VerifyOp::Theorem1(args) => {
            let ws = theorem1_instances(args, out.seed);
            let counts = stream(out, &ws, theorem1_line)?;
            let params = json!({ "n": args.n, "sample": args.sample });
            summary(out, "verify theorem1", params, counts, start, args.sample.is_some())
        }
        VerifyOp::Theorem2(args) => {
            let items = theorem2_instances(args);
            let counts = stream(out, &items, theorem2_line)?;
            let params = json!({ "maxParts": args.max_parts, "maxPart": args.max_part, "dilate": args.dilate });
            summary(out, "verify theorem2", params, counts, start, false)
        }
        VerifyOp::All { n } => run_all(*n, out, start),
    }
}

enum Check {
    Theorem1(Permutation),
    Theorem2(Partition, i64),
    SumSystem(ParFamily),
    Hypersimplex(usize, usize),
    Permutahedron(Partition),
    Overlay(ParFamily),
    FlowMinkowski,
    DemazureLemma,
}

fn all_line(check: &Check, seed: u64) -> Result<Value, Failure> {
    let v = match check {
        Check::Theorem1(w) => return theorem1_line(w),
        Check::Theorem2(lambda, t) => return theorem2_line(&(lambda.clone(), *t)),
        Check::SumSystem(fam) => {
            let ok = q_system(fam).enumerate()? == minkowski_points(fam);
            json!({ "check": "sum-system", "family": fam.shapes(), "status": Status::from_bool(ok).name() })
        }
        Check::Hypersimplex(k, n) => {
            let ok = check_hypersimplex(*k, *n)?;
            json!({ "check": "hypersimplex", "k": k, "n": n, "status": Status::from_bool(ok).name() })
        }
        Check::Permutahedron(lambda) => {
            let ok = check_permutahedron(lambda, 20, seed)?;
            json!({ "check": "permutahedron", "lambda": lambda.parts(), "seed": seed, "status": Status::from_bool(ok).name() })
        }
        Check::Overlay(fam) => {
            let r = check_overlay_inclusions(fam)?;
            let mut v = serde_json::to_value(&r).expect("report serializes");
            v["check"] = json!("overlay");
            v["status"] = json!(Status::from_bool(r.ok()).name());
            v
        }
        Check::FlowMinkowski => {
            let r = random_flow_minkowski(seed, 20)?;
            let failed: Vec<_> = r.trials.iter().filter(|t| !t.holds).collect();
            json!({
                "check": "flow-minkowski",
                "seed": seed,
                "trials": r.trials.len(),
                "failures": failed,
                "status": Status::from_bool(r.ok()).name(),
            })
        }
        Check::DemazureLemma => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let failed: Vec<Value> = (0..50)
                .map(|_| DemazureParams::random(&mut rng, 6, 3))
                .filter(|p| !verify_lemma_di(p))
                .map(|p| json!({ "n1": p.n1, "n2": p.n2, "bounds": p.bounds }))
                .collect();
            json!({
                "check": "demazure-lemma",
                "seed": seed,
                "trials": 50,
                "failures": failed,
                "status": Status::from_bool(failed.is_empty()).name(),
            })
        }
    };
    Ok(v)
}

fn run_all(n: usize, out: &mut Output, start: Instant) -> Run {
    let n = n.max(1);
    let mut checks = Vec::new();
    for w in theorem1_instances(&Theorem1Args { n, sample: None }, 0) {
        checks.push(Check::Theorem1(w));
    }
    for (lambda, t) in theorem2_instances(&Theorem2Args { max_parts: n.min(4), max_part: 2, dilate: 2 }) {
        checks.push(Check::Theorem2(lambda, t));
    }
    for fam in ParFamily::all(n.min(3), 1) {
        checks.push(Check::SumSystem(fam));
    }
    for m in 1..=n.min(6) {
        for k in 1..=m {
            checks.push(Check::Hypersimplex(k, m));
        }
    }
    for lambda in Partition::all_in_box(n.min(4), 2) {
        checks.push(Check::Permutahedron(lambda));
    }
    checks.extend(ParFamily::all(n.min(3), 1).into_iter().map(Check::Overlay));
    checks.push(Check::FlowMinkowski);
    checks.push(Check::DemazureLemma);
    let seed = out.seed;
    let counts = stream(out, &checks, |c| all_line(c, seed))?;
    summary(out, "verify all", json!({ "n": n }), counts, start, true)
}
