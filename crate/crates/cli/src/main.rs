//! Command-line front end for the tied-link invariant engine: evaluate
//! invariants of links given as (tied) braid words, compare links
//! through the whole invariant family, inspect class linking graphs,
//! and run the randomized self-verification suites.
//!
//! Results go to stdout (or `--output`); diagnostics go to stderr.
//! Output is deterministic: the same invocation produces the same bytes.

use std::fmt::Write as _;
use std::fs;

use btlink::btalgebra::{check_isomorphism, check_relations, SuiteReport};
use btlink::invariants::{
    check_markov_invariance, check_trace_rules, homflypt_value, specialize, upsilon,
    InvariantError, InvariantValue, Specialization,
};
use btlink::omega::{check_engine_agreement, check_skein_rules, omega_fast};
use btlink::tiedbraid::{parse_str, TiedBraidWord};

const USAGE: &str = "\
usage: btlink <command> [options] [files...]

commands:
  compute    evaluate an invariant of each input link
  compare    compare two links through the invariant family
  graph      print the class linking graph of each input link
  selfcheck  run the randomized verification suites

options:
  --invariant NAME   upsilon | delta | theta | omega | homflypt
                     (compute; default upsilon)
  --fast             with `--invariant omega`: evaluate from the linking
                     graph instead of the trace
  --seed N           selfcheck: random seed (default 42)
  --strands N        selfcheck: largest algebra size exercised (default 4)
  --trials N         selfcheck: iterations per randomized check (default 25)
  --output PATH      write results to PATH instead of stdout
  -h, --help         print this help

exit codes: 0 success, 1 failed selfcheck, 2 parse error, 3 invalid input
";

const EXIT_OK: i32 = 0;
const EXIT_CHECK_FAILED: i32 = 1;
const EXIT_PARSE: i32 = 2;
const EXIT_INVALID: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    Compute,
    Compare,
    Graph,
    Selfcheck,
}

#[derive(Debug)]
struct Args {
    command: Command,
    files: Vec<String>,
    invariant: String,
    fast: bool,
    seed: u64,
    strands: usize,
    trials: usize,
    output: Option<String>,
}

fn parse_args(argv: &[String]) -> Result<Option<Args>, String> {
    let mut iter = argv.iter().peekable();
    let mut command = None;
    let mut files = Vec::new();
    let mut invariant = "upsilon".to_string();
    let mut fast = false;
    let mut seed = 42u64;
    let mut strands = 4usize;
    let mut trials = 25usize;
    let mut output = None;

    fn value<'a>(
        iter: &mut std::iter::Peekable<std::slice::Iter<'a, String>>,
        flag: &str,
    ) -> Result<&'a str, String> {
        iter.next()
            .map(|s| s.as_str())
            .ok_or_else(|| format!("{flag} needs a value"))
    }

    while let Some(arg) = iter.next() {
        match arg.as_str() {
            "-h" | "--help" => return Ok(None),
            "--invariant" => {
                invariant = value(&mut iter, "--invariant")?.to_string();
                let known = ["upsilon", "delta", "theta", "omega", "homflypt"];
                if !known.contains(&invariant.as_str()) {
                    return Err(format!("unknown invariant `{invariant}`"));
                }
            }
            "--fast" => fast = true,
            "--seed" => {
                seed = value(&mut iter, "--seed")?
                    .parse()
                    .map_err(|_| "--seed needs an integer".to_string())?;
            }
            "--strands" => {
                strands = value(&mut iter, "--strands")?
                    .parse()
                    .ok()
                    .filter(|&n| (2..=6).contains(&n))
                    .ok_or_else(|| "--strands needs an integer in 2..=6".to_string())?;
            }
            "--trials" => {
                trials = value(&mut iter, "--trials")?
                    .parse()
                    .ok()
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| "--trials needs a positive integer".to_string())?;
            }
            "--output" => output = Some(value(&mut iter, "--output")?.to_string()),
            other if other.starts_with('-') => {
                return Err(format!("unknown option `{other}`"));
            }
            other => match command {
                None => {
                    command = Some(match other {
                        "compute" => Command::Compute,
                        "compare" => Command::Compare,
                        "graph" => Command::Graph,
                        "selfcheck" => Command::Selfcheck,
                        _ => return Err(format!("unknown command `{other}`")),
                    });
                }
                Some(_) => files.push(other.to_string()),
            },
        }
    }

    let command = command.ok_or_else(|| "no command given".to_string())?;
    if fast && !(command == Command::Compute && invariant == "omega") {
        return Err("--fast applies only to `compute --invariant omega`".to_string());
    }
    match command {
        Command::Compute | Command::Graph if files.is_empty() => {
            return Err("no input files".to_string());
        }
        Command::Compare if files.len() != 2 => {
            return Err("compare needs exactly two input files".to_string());
        }
        _ => {}
    }
    Ok(Some(Args {
        command,
        files,
        invariant,
        fast,
        seed,
        strands,
        trials,
        output,
    }))
}

fn load(path: &str) -> Result<TiedBraidWord, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    parse_str(&text).map_err(|e| format!("{path}: {e}"))
}

fn display_name(word: &TiedBraidWord, path: &str) -> String {
    word.name.clone().unwrap_or_else(|| path.to_string())
}

/// The requested invariant of one word, already specialized.
fn evaluate(word: &TiedBraidWord, invariant: &str, fast: bool) -> Result<InvariantValue, InvariantError> {
    match invariant {
        "upsilon" => Ok(upsilon(word)),
        "delta" => specialize(&upsilon(word), Specialization::Delta),
        "theta" => specialize(&upsilon(word), Specialization::Theta),
        "omega" if fast => Ok(omega_fast(word)),
        "omega" => specialize(&upsilon(word), Specialization::Omega),
        "homflypt" => homflypt_value(word),
        _ => unreachable!("invariant names are validated"),
    }
}

fn run_compute(args: &Args, out: &mut String) -> Result<(), (i32, String)> {
    for (i, path) in args.files.iter().enumerate() {
        let word = load(path).map_err(|e| (EXIT_PARSE, e))?;
        let value = evaluate(&word, &args.invariant, args.fast).map_err(|e| match e {
            InvariantError::TiedInput { .. } => (EXIT_INVALID, format!("{path}: {e}")),
            InvariantError::Coeff(_) => (EXIT_INVALID, format!("{path}: {e}")),
        })?;
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "name: {}", display_name(&word, path));
        let _ = writeln!(out, "invariant: {}", args.invariant);
        let _ = writeln!(out, "components: {}", value.components);
        let _ = writeln!(out, "classes: {}", value.classes);
        let _ = writeln!(out, "value: {}", value.value.canonical_render());
    }
    Ok(())
}

fn run_compare(args: &Args, out: &mut String) -> Result<(), (i32, String)> {
    let left = load(&args.files[0]).map_err(|e| (EXIT_PARSE, e))?;
    let right = load(&args.files[1]).map_err(|e| (EXIT_PARSE, e))?;
    for (word, path) in [(&left, &args.files[0]), (&right, &args.files[1])] {
        if !word.is_classical() {
            return Err((
                EXIT_INVALID,
                format!("{path}: compare works on plain braid words, and this input has ties"),
            ));
        }
    }
    let _ = writeln!(out, "left: {}", display_name(&left, &args.files[0]));
    let _ = writeln!(out, "right: {}", display_name(&right, &args.files[1]));

    let skein_equal = homflypt_value(&left)
        .expect("checked classical")
        .value
        == homflypt_value(&right).expect("checked classical").value;
    let verdict = |same: bool| if same { "equal" } else { "different" };
    let _ = writeln!(out, "homflypt: {}", verdict(skein_equal));
    if !skein_equal {
        let _ = writeln!(
            out,
            "specializations: skipped, the two-variable invariant already separates them"
        );
        return Ok(());
    }
    let (lu, ru) = (upsilon(&left), upsilon(&right));
    let _ = writeln!(out, "upsilon: {}", verdict(lu.value == ru.value));
    for which in [
        Specialization::Delta,
        Specialization::Theta,
        Specialization::Omega,
    ] {
        let l = specialize(&lu, which).expect("specialization points are regular");
        let r = specialize(&ru, which).expect("specialization points are regular");
        let _ = writeln!(out, "{}: {}", which.label(), verdict(l.value == r.value));
    }
    Ok(())
}

fn run_graph(args: &Args, out: &mut String) -> Result<(), (i32, String)> {
    for (i, path) in args.files.iter().enumerate() {
        let word = load(path).map_err(|e| (EXIT_PARSE, e))?;
        let graph = word.clinking_graph();
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "name: {}", display_name(&word, path));
        let _ = writeln!(out, "components: {}", graph.components);
        let _ = writeln!(out, "classes: {}", graph.classes);
        for class in 0..graph.classes {
            let members: Vec<String> = graph
                .class_of_component
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c == class)
                .map(|(comp, _)| (comp + 1).to_string())
                .collect();
            let _ = writeln!(out, "class {}: components {}", class + 1, members.join(","));
        }
        if graph.edges.is_empty() {
            let _ = writeln!(out, "edges: none");
        } else {
            let rendered: Vec<String> = graph
                .edges
                .iter()
                .map(|&(x, y, w)| format!("{}-{}:{w}", x + 1, y + 1))
                .collect();
            let _ = writeln!(out, "edges: {}", rendered.join(" "));
        }
        let (k, canon) = graph.canonical_form();
        let canon_rendered: Vec<String> = canon
            .iter()
            .map(|&(x, y, w)| format!("{}-{}:{w}", x + 1, y + 1))
            .collect();
        let _ = writeln!(
            out,
            "canonical: {k} vertices; {}",
            if canon_rendered.is_empty() {
                "no edges".to_string()
            } else {
                canon_rendered.join(" ")
            }
        );
    }
    Ok(())
}

fn append_report(out: &mut String, heading: &str, report: &SuiteReport, failed: &mut usize) {
    for check in &report.checks {
        if check.passed {
            let _ = writeln!(out, "PASS [{heading}] {}", check.name);
        } else {
            *failed += 1;
            let _ = writeln!(out, "FAIL [{heading}] {}", check.name);
            if let Some(witness) = &check.counterexample {
                for line in witness.lines() {
                    let _ = writeln!(out, "    {line}");
                }
            }
        }
    }
}

fn run_selfcheck(args: &Args, out: &mut String) -> Result<(), (i32, String)> {
    let mut failed = 0usize;
    for n in 2..=args.strands {
        let report = check_relations(n, args.seed, args.trials);
        append_report(out, &format!("relations n={n}"), &report, &mut failed);
    }
    for n in 2..=args.strands.min(3) {
        let report = check_isomorphism(n, args.seed, args.trials);
        append_report(out, &format!("deformed n={n}"), &report, &mut failed);
    }
    append_report(
        out,
        "trace",
        &check_trace_rules(args.strands, args.seed, args.trials),
        &mut failed,
    );
    append_report(
        out,
        "markov",
        &check_markov_invariance(args.seed, args.trials),
        &mut failed,
    );
    append_report(
        out,
        "skein",
        &check_skein_rules(args.seed, args.trials),
        &mut failed,
    );
    append_report(
        out,
        "omega",
        &check_engine_agreement(args.seed, args.trials),
        &mut failed,
    );
    if failed == 0 {
        let _ = writeln!(out, "all checks passed");
        Ok(())
    } else {
        let _ = writeln!(out, "{failed} check(s) failed");
        Err((EXIT_CHECK_FAILED, String::new()))
    }
}

fn real_main() -> i32 {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let args = match parse_args(&argv) {
        Ok(Some(args)) => args,
        Ok(None) => {
            print!("{USAGE}");
            return EXIT_OK;
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            eprint!("{USAGE}");
            return EXIT_PARSE;
        }
    };

    let mut out = String::new();
    let result = match args.command {
        Command::Compute => run_compute(&args, &mut out),
        Command::Compare => run_compare(&args, &mut out),
        Command::Graph => run_graph(&args, &mut out),
        Command::Selfcheck => run_selfcheck(&args, &mut out),
    };

    // Selfcheck failures still produce their report.
    let code = match result {
        Ok(()) => EXIT_OK,
        Err((code, msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            code
        }
    };
    if code == EXIT_OK || code == EXIT_CHECK_FAILED {
        match &args.output {
            None => print!("{out}"),
            Some(path) => {
                if let Err(e) = fs::write(path, &out) {
                    eprintln!("error: {path}: {e}");
                    return EXIT_INVALID;
                }
            }
        }
    }
    code
}

fn main() {
    std::process::exit(real_main());
}
