//! Command-line front end. [`dispatch`] is pure: it takes the argument list
//! and returns the exit code with the text to print, so it can be driven from
//! tests and through the C ABI.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bipoly::{homogeneous_pqr_assert, theorem_pqr_assert, BiPoly};
use crate::cyclic::{numeric_omega_check, right_cyclic_classify, PrimeModulus, RightCyclicResult};
use crate::error::{CyclicError, ExplorerError, ParseError};
use crate::explorer::{
    ceiling_from_env, parse_ceiling, run_theorem_suite, search_open_q1, search_open_q2,
    search_symmetric_remark, Family, SearchConfig, SearchReport, Theorem,
};
use crate::numeric::{VerificationReport, DEFAULT_SAMPLES, DEFAULT_TOL};
use crate::oracle::TheoremStatus;
use crate::parity::{
    classify_rpe, classify_rpo, theorem_eo_demo, verify_witness_exact, verify_witness_numeric,
    Target, Witness,
};
use crate::parse::{parse_bi, parse_expr, parse_rational, parse_uni, Parsed};
use crate::poly::{CyclicClass, Parity, Rational, UniPoly};
use crate::ratfn::{cross_parity, numeric_parity_check, RationalFunction};

pub const EXIT_OK: i32 = 0;
/// A user-supplied witness failed its check.
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_HYPOTHESES: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;

pub const GRAMMAR: &str = r#"expr     = term { ("+" | "-") term } ;
term     = unary { ("*" | "/") unary } ;
unary    = "-" unary | power ;
power    = atom [ "^" exponent ] ;
exponent = INTEGER [ "^" exponent ] ;        (* right-associative *)
atom     = NUMBER | "z" | "w" | "(" expr ")" ;
NUMBER   = INTEGER | INTEGER "/" INTEGER ;   (* no whitespace around "/" *)
INTEGER  = digit { digit } ;

Precedence, tightest first: ^, unary -, * and /, binary + and -.
There is no implicit multiplication: write 2*z, not 2z.
An integer, "/" and an integer with no whitespace between them form one
rational literal (3/2); every other "/" is division, and after "^" the
digits are always an exponent (2^6/3 is 64/3).
Division by a non-constant yields a rational function. Any "w" yields a
polynomial in z and w, where only division by constants is allowed.
Inputs are limited to 64 KiB and intermediate degrees to 1024.
"#;

#[derive(Parser, Debug)]
#[command(
    name = "parity-lab",
    version,
    about = "Exact parity and cyclic-symmetry classification of polynomial compositions",
    after_help = "Run `parity-lab --help grammar` for the expression grammar."
)]
struct Cli {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct NumericArgs {
    /// Sample points on the unit circle for numeric cross-checks.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Relative tolerance for numeric cross-checks.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args, Debug, Clone)]
struct SearchArgs {
    /// Degree bound for univariate members.
    #[arg(long, default_value_t = 3)]
    max_degree: u32,
    /// Coefficient set: an integer range `-2..2` or a list `-1,0,1/2`.
    #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
    coeffs: String,
    /// Prime moduli, comma separated.
    #[arg(long, value_delimiter = ',')]
    modulus: Vec<u64>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    parallelism: usize,
    /// Largest family size to enumerate (overrides PARITY_LAB_CEILING).
    #[arg(long)]
    ceiling: Option<String>,
    /// Largest power in the power-parity sweep.
    #[arg(long, default_value_t = 4)]
    max_power: u32,
    /// Total-degree bound for bivariate members.
    #[arg(long, default_value_t = 2)]
    bivariate_degree: u32,
    /// Supporting examples listed per report (all are counted).
    #[arg(long, default_value_t = 1000)]
    max_examples: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SearchKind {
    /// f∘f even, f not even, f(0) != 0: must f be odd plus a constant?
    OpenQ1,
    /// R not in C_0 with R∘R in C_0, for N >= 3.
    OpenQ2,
    /// Symmetric P(Q(z,w)) with non-symmetric Q.
    SymmetricRemark,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteChoice {
    All,
    PropC,
    #[value(name = "thm-f-a")]
    ThmFA,
    #[value(name = "thm-f-b")]
    ThmFB,
    SelfComp,
    LemmaB,
    Pqr,
    BorelPolyRemark,
    LemmaMod,
    HomogeneousPqr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    Even,
    Odd,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether some non-constant f makes f∘p even, and build f.
    ClassifyRpe {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Decide whether some non-constant f makes f∘p odd, and build f.
    ClassifyRpo {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Cyclic class of a polynomial or rational function modulo N.
    CyclicClass {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        modulus: u64,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Decide whether some non-constant f puts f∘p in a cyclic class (prime N >= 3).
    RightCyclic {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        modulus: u64,
    },
    /// Compose f∘g (polynomials, rational functions, or univariate of bivariate).
    Compose {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// Check the witness for p (or a supplied polynomial witness) numerically and exactly.
    VerifyWitness {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum, default_value = "even")]
        target: TargetArg,
        /// Polynomial f to test instead of the constructed witness.
        #[arg(long, allow_hyphen_values = true)]
        witness: Option<String>,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Cyclic class and parity of a rational function.
    RationalClass {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 2)]
        modulus: u64,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Structure of a polynomial in z and w.
    Bipoly {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Substitute z := Q(z) and w := R(z), given as `Q;R`.
        #[arg(long, allow_hyphen_values = true)]
        subst: Option<String>,
    },
    /// Check the two-variable composition theorems on P(Q(z,w)).
    PqrCheck {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Run a bounded counterexample search.
    Explore {
        #[arg(value_enum)]
        search: SearchKind,
        #[arg(long, value_enum)]
        family: Option<Family>,
        #[command(flatten)]
        search_args: SearchArgs,
    },
    /// Exhaustively check a theorem over a bounded family.
    TheoremSuite {
        #[arg(value_enum)]
        theorem: SuiteChoice,
        #[command(flatten)]
        search_args: SearchArgs,
    },
    /// Numeric demonstration with p = z^4 - 2z^2 and f = cos + sin.
    EoDemo {
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Print the expression grammar.
    Grammar,
}

/// Exit code and the text for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Status {
    Ok,
    CheckFailed,
    Violation,
    HypothesesUnmet,
    Error,
    ParseError,
    UsageError,
}

impl Status {
    fn code(self) -> i32 {
        match self {
            Status::Ok => EXIT_OK,
            Status::CheckFailed => EXIT_CHECK_FAILED,
            Status::Violation => EXIT_VIOLATION,
            Status::HypothesesUnmet | Status::Error => EXIT_HYPOTHESES,
            Status::ParseError => EXIT_PARSE,
            Status::UsageError => EXIT_USAGE,
        }
    }
}

struct Report {
    command: &'static str,
    input: Value,
    result: Value,
    status: Status,
    text: String,
}

impl Report {
    fn render(self, json_mode: bool) -> Outcome {
        let code = self.status.code();
        if json_mode {
            let doc = json!({
                "command": self.command,
                "input_canonical": self.input,
                "result": self.result,
                "status": self.status,
            });
            let text = serde_json::to_string_pretty(&doc).expect("json") + "\n";
            Outcome {
                code,
                stdout: text,
                stderr: String::new(),
            }
        } else if code == EXIT_OK || code == EXIT_VIOLATION || code == EXIT_CHECK_FAILED {
            Outcome {
                code,
                stdout: self.text,
                stderr: String::new(),
            }
        } else {
            Outcome {
                code,
                stdout: String::new(),
                stderr: self.text,
            }
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn parse_failure(command: &'static str, source: &str, err: ParseError) -> Report {
    let caret = if source.len() <= 200 && !source.contains('\n') {
        format!(
            "\n  {}\n  {}^",
            source,
            " ".repeat(source[..err.offset.min(source.len())].chars().count())
        )
    } else {
        String::new()
    };
    Report {
        command,
        input: Value::Null,
        result: json!({
            "error": err.message,
            "offset": err.offset,
            "expected": err.expected,
            "input": if source.len() <= 4096 { Value::from(source) } else { Value::Null },
        }),
        status: Status::ParseError,
        text: format!("parse error: {}{}\n", err, caret),
    }
}

fn failure(command: &'static str, input: Value, status: Status, message: String) -> Report {
    Report {
        command,
        input,
        result: json!({ "error": message }),
        status,
        text: format!("error: {}\n", message),
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let rest: Vec<&str> = args.iter().skip(1).map(String::as_str).collect();
    if matches!(rest.as_slice(), ["--help", "grammar"] | ["help", "grammar"]) {
        return Outcome {
            code: EXIT_OK,
            stdout: GRAMMAR.to_string(),
            stderr: String::new(),
        };
    }
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp
                    | clap::error::ErrorKind::DisplayVersion
                    | clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            );
            let text = e.render().to_string();
            return if informational
                && e.kind() != clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    run(cli.command).render(cli.json)
}

fn run(command: Command) -> Report {
    match command {
        Command::ClassifyRpe { expr, numeric } => classify(expr, Target::Even, numeric),
        Command::ClassifyRpo { expr, numeric } => classify(expr, Target::Odd, numeric),
        Command::CyclicClass {
            expr,
            modulus,
            numeric,
        } => cyclic_class(expr, modulus, numeric),
        Command::RightCyclic { expr, modulus } => right_cyclic(expr, modulus),
        Command::Compose { f, g, modulus } => compose(f, g, modulus),
        Command::VerifyWitness {
            expr,
            target,
            witness,
            numeric,
        } => verify_witness(expr, target, witness, numeric),
        Command::RationalClass {
            expr,
            modulus,
            numeric,
        } => rational_class(expr, modulus, numeric),
        Command::Bipoly { expr, subst } => bipoly(expr, subst),
        Command::PqrCheck { p, q } => pqr_check(p, q),
        Command::Explore {
            search,
            family,
            search_args,
        } => explore(search, family, search_args),
        Command::TheoremSuite {
            theorem,
            search_args,
        } => theorem_suite(theorem, search_args),
        Command::EoDemo { numeric } => eo_demo(numeric),
        Command::Grammar => Report {
            command: "grammar",
            input: Value::Null,
            result: json!({ "grammar": GRAMMAR }),
            status: Status::Ok,
            text: GRAMMAR.to_string(),
        },
    }
}

fn describe_verification(label: &str, r: &VerificationReport) -> String {
    let verdict = if r.pass { "pass" } else { "FAIL" };
    let mut s = format!(
        "{}: {} ({} samples, max relative residual {:.3e}, tol {:.0e})",
        label, verdict, r.samples, r.residual, r.tol
    );
    if let Some(d) = &r.diagnostic {
        s.push_str(&format!("; {}", d));
    }
    s
}

fn classify(expr: String, target: Target, numeric: NumericArgs) -> Report {
    let command = match target {
        Target::Even => "classify-rpe",
        Target::Odd => "classify-rpo",
    };
    let p = match parse_uni(&expr) {
        Ok(p) => p,
        Err(e) => return parse_failure(command, &expr, e),
    };
    let (tag, classification, witness, description) = match target {
        Target::Even => {
            let c = classify_rpe(&p);
            let description = describe_rpe(&c);
            (c.tag(), to_value(&c), c.witness().ok(), description)
        }
        Target::Odd => {
            let c = classify_rpo(&p);
            let description = describe_rpo(&c);
            (c.tag(), to_value(&c), c.witness().ok(), description)
        }
    };
    let word = if target == Target::Even {
        "even"
    } else {
        "odd"
    };
    let mut text = format!("p = {}\ncase {}: {}\n", p, tag, description);
    let mut status = Status::Ok;
    let mut verification = Value::Null;
    let mut exact = Value::Null;
    if let Some(w) = &witness {
        text.push_str(&format!("witness f = {}\n", w));
        match verify_witness_numeric(w, &p, target, numeric.samples, numeric.tol) {
            Ok(r) => {
                text.push_str(&describe_verification(
                    &format!("f∘p {} (numeric)", word),
                    &r,
                ));
                text.push('\n');
                if !r.pass {
                    status = Status::Violation;
                }
                verification = to_value(&r);
            }
            Err(e) => {
                return failure(
                    command,
                    Value::from(p.to_string()),
                    Status::Error,
                    e.to_string(),
                )
            }
        }
        if let Some(ok) = verify_witness_exact(w, &p, target) {
            text.push_str(&format!("f∘p {} (exact): {}\n", word, ok));
            if !ok {
                status = Status::Violation;
            }
            exact = Value::from(ok);
        }
    } else {
        text.push_str(&format!("no non-constant f makes f∘p {}\n", word));
    }
    Report {
        command,
        input: Value::from(p.to_string()),
        result: json!({
            "case": tag,
            "classification": classification,
            "witness": witness.as_ref().map(witness_value),
            "verification": verification,
            "exact_check": exact,
        }),
        status,
        text,
    }
}

fn witness_value(w: &Witness) -> Value {
    json!({ "text": w.to_string(), "form": to_value(w) })
}

fn describe_rpe(c: &crate::parity::RpeClassification) -> String {
    use crate::parity::RpeClassification::*;
    match c {
        EvenA => "p is even".into(),
        OddPlusConstB { s, k } => format!("p = s + k with s = {} odd, k = {}", s, k),
        QuadOddC(q) => describe_quad(q),
        NotRpe => "none of the even, odd-plus-constant or quadratic-of-odd shapes".into(),
    }
}

fn describe_rpo(c: &crate::parity::RpoClassification) -> String {
    use crate::parity::RpoClassification::*;
    match c {
        OddA => "p is odd".into(),
        OddPlusConst { s, k } => format!("p = s + k with s = {} odd, k = {}", s, k),
        QuadOddB(q) => describe_quad(q),
        NotRpo => "none of the odd, odd-plus-constant or quadratic-of-odd shapes".into(),
    }
}

fn describe_quad(q: &crate::parity::QuadOdd) -> String {
    let s = match q.s() {
        Some(s) => format!("s = {}", s),
        None => format!("2ds = {}", q.odd_part),
    };
    format!(
        "p = (s + d)^2 + k with s odd, d^2 = {}, k = {}, {}",
        q.d_squared, q.k, s
    )
}

fn class_value(c: &CyclicClass) -> Value {
    json!({ "class": c.to_string(), "detail": to_value(c) })
}

fn cyclic_class(expr: String, modulus: u64, numeric: NumericArgs) -> Report {
    let command = "cyclic-class";
    let parsed = match parse_expr(&expr) {
        Ok(p) => p,
        Err(e) => return parse_failure(command, &expr, e),
    };
    let input = Value::from(parsed.to_string());
    match &parsed {
        Parsed::Uni(p) => {
            let class = match p.cyclic_class(modulus) {
                Ok(c) => c,
                Err(e) => return failure(command, input, Status::UsageError, e.to_string()),
            };
            let mut text = format!("p = {}\nclass mod {}: {}\n", p, modulus, class);
            let mut status = Status::Ok;
            let mut check = Value::Null;
            if let (CyclicClass::Class(k), Ok(m)) = (&class, PrimeModulus::new(modulus)) {
                match numeric_omega_check(p, *k, m, numeric.samples, numeric.tol) {
                    Ok(r) => {
                        text.push_str(&describe_verification("p(ωx) = ω^k p(x) (numeric)", &r));
                        text.push('\n');
                        if !r.pass {
                            status = Status::Violation;
                        }
                        check = to_value(&r);
                    }
                    Err(e) => return failure(command, input, Status::Error, e.to_string()),
                }
            }
            Report {
                command,
                input,
                result: json!({ "kind": "polynomial", "modulus": modulus, "class": class_value(&class), "numeric_check": check }),
                status,
                text,
            }
        }
        Parsed::Rational(f) => match f.cyclic_class(modulus) {
            Ok(class) => Report {
                command,
                input,
                result: json!({ "kind": "rational function", "modulus": modulus, "class": class_value(&class) }),
                status: Status::Ok,
                text: format!("f = {}\nclass mod {}: {}\n", f, modulus, class),
            },
            Err(e) => failure(command, input, Status::UsageError, e.to_string()),
        },
        Parsed::Bi(_) => parse_failure(
            command,
            &expr,
            ParseError {
                offset: 0,
                message: "expected a polynomial in z or a rational function, found a bivariate polynomial".into(),
                expected: vec!["polynomial in z".into(), "rational function".into()],
            },
        ),
    }
}

fn right_cyclic(expr: String, modulus: u64) -> Report {
    let command = "right-cyclic";
    let p = match parse_uni(&expr) {
        Ok(p) => p,
        Err(e) => return parse_failure(command, &expr, e),
    };
    let input = Value::from(p.to_string());
    let m = match PrimeModulus::new(modulus) {
        Ok(m) => m,
        Err(e) => return failure(command, input, Status::HypothesesUnmet, e.to_string()),
    };
    match right_cyclic_classify(&p, m) {
        Ok(RightCyclicResult::No) => Report {
            command,
            input,
            result: json!({ "right_cyclic": false, "shifted_class": class_value(&m.class_of(&(&p - &UniPoly::constant(p.constant_term())))) }),
            status: Status::Ok,
            text: format!(
                "p = {}\nNo: p - p(0) is not cyclic mod {}, so no non-constant f puts f∘p in a cyclic class\n",
                p, m
            ),
        },
        Ok(RightCyclicResult::Yes { k, witness }) => {
            let f = witness.as_polynomial().expect("power witness is polynomial");
            let composed = f.compose(&p);
            Report {
                command,
                input,
                result: json!({
                    "right_cyclic": true,
                    "k": k,
                    "witness": witness_value(&witness),
                    "composition": composed.to_string(),
                    "composition_class": class_value(&m.class_of(&composed)),
                }),
                status: Status::Ok,
                text: format!(
                    "p = {}\nYes: p - p(0) is in C_{} mod {}\nwitness f = {}\nf∘p = {} in {}\n",
                    p,
                    k,
                    m,
                    witness,
                    composed,
                    m.class_of(&composed)
                ),
            }
        }
        Err(e @ CyclicError::WitnessCheckFailed(_)) => failure(command, input, Status::Violation, e.to_string()),
        Err(e) => failure(command, input, Status::HypothesesUnmet, e.to_string()),
    }
}

fn compose(f_src: String, g_src: String, modulus: Option<u64>) -> Report {
    let command = "compose";
    let f = match parse_expr(&f_src) {
        Ok(v) => v,
        Err(e) => return parse_failure(command, &f_src, e),
    };
    let g = match parse_expr(&g_src) {
        Ok(v) => v,
        Err(e) => return parse_failure(command, &g_src, e),
    };
    let input = json!([f.to_string(), g.to_string()]);
    let composed: Parsed = match (&f, &g) {
        (Parsed::Uni(a), Parsed::Uni(b)) => Parsed::Uni(a.compose(b)),
        (Parsed::Uni(a), Parsed::Bi(b)) => Parsed::Bi(BiPoly::compose_outer(a, b)),
        (Parsed::Bi(_), _) => {
            return failure(
                command,
                input,
                Status::UsageError,
                "the outer function must be univariate".into(),
            )
        }
        (_, Parsed::Bi(_)) => {
            return failure(
                command,
                input,
                Status::UsageError,
                "a bivariate inner function needs a polynomial outer function".into(),
            )
        }
        (a, b) => {
            let (a, b) = (as_rational(a), as_rational(b));
            match a.compose(&b) {
                Ok(c) if c.den().is_constant() => Parsed::Uni(c.into_parts().0),
                Ok(c) => Parsed::Rational(c),
                Err(e) => return failure(command, input, Status::HypothesesUnmet, e.to_string()),
            }
        }
    };
    let mut text = format!("f∘g = {}\n", composed);
    let mut classes = Value::Null;
    if let Some(n) = modulus {
        let class_of = |x: &Parsed| -> Result<Option<CyclicClass>, String> {
            match x {
                Parsed::Uni(p) => p.cyclic_class(n).map(Some).map_err(|e| e.to_string()),
                Parsed::Rational(r) => r.cyclic_class(n).map(Some).map_err(|e| e.to_string()),
                Parsed::Bi(_) => Ok(None),
            }
        };
        let (cf, cg, cc) = match (class_of(&f), class_of(&g), class_of(&composed)) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
                return failure(command, input, Status::UsageError, e)
            }
        };
        let show = |c: &Option<CyclicClass>| c.map_or("n/a".to_string(), |c| c.to_string());
        text.push_str(&format!(
            "classes mod {}: f {}, g {}, f∘g {}\n",
            n,
            show(&cf),
            show(&cg),
            show(&cc)
        ));
        let val = |c: &Option<CyclicClass>| c.as_ref().map(class_value);
        classes = json!({ "modulus": n, "f": val(&cf), "g": val(&cg), "composition": val(&cc) });
    }
    Report {
        command,
        input,
        result: json!({ "composition": composed.to_string(), "kind": composed.kind(), "classes": classes }),
        status: Status::Ok,
        text,
    }
}

fn as_rational(p: &Parsed) -> RationalFunction {
    match p {
        Parsed::Uni(u) => RationalFunction::from_poly(u.clone()),
        Parsed::Rational(r) => r.clone(),
        Parsed::Bi(_) => unreachable!("bivariate handled by caller"),
    }
}

fn verify_witness(
    expr: String,
    target: TargetArg,
    witness: Option<String>,
    numeric: NumericArgs,
) -> Report {
    let command = "verify-witness";
    let target = match target {
        TargetArg::Even => Target::Even,
        TargetArg::Odd => Target::Odd,
    };
    let Some(w_src) = witness else {
        let mut r = classify(expr, target, numeric);
        r.command = command;
        return r;
    };
    let p = match parse_uni(&expr) {
        Ok(p) => p,
        Err(e) => return parse_failure(command, &expr, e),
    };
    let f = match parse_uni(&w_src) {
        Ok(f) => f,
        Err(e) => return parse_failure(command, &w_src, e),
    };
    let input = json!([p.to_string(), f.to_string()]);
    if f.is_constant() {
        return failure(
            command,
            input,
            Status::HypothesesUnmet,
            "the witness must be non-constant".into(),
        );
    }
    let composed = f.compose(&p);
    let exact = match target {
        Target::Even => composed.is_even(),
        Target::Odd => composed.is_odd(),
    };
    let samples = crate::numeric::unit_circle_samples(numeric.samples);
    let mut acc = crate::numeric::Residuals::default();
    if numeric.samples == 0 || !(numeric.tol.is_finite() && numeric.tol > 0.0) {
        return failure(
            command,
            input,
            Status::UsageError,
            "samples must be >= 1 and tol positive".into(),
        );
    }
    for x in samples {
        let (a, b) = (composed.eval_complex(x), composed.eval_complex(-x));
        acc.push(a, if target == Target::Even { b } else { -b });
    }
    let report = acc.finish(numeric.tol);
    let word = if target == Target::Even {
        "even"
    } else {
        "odd"
    };
    let status = if exact && report.pass {
        Status::Ok
    } else if exact != report.pass {
        Status::Violation
    } else {
        Status::CheckFailed
    };
    Report {
        command,
        input,
        result: json!({ "composition": composed.to_string(), "exact": exact, "verification": report }),
        status,
        text: format!(
            "f∘p = {}\nf∘p {} (exact): {}\n{}\n",
            composed,
            word,
            exact,
            describe_verification(&format!("f∘p {} (numeric)", word), &report)
        ),
    }
}

fn rational_class(expr: String, modulus: u64, numeric: NumericArgs) -> Report {
    let command = "rational-class";
    let f = match parse_rational(&expr) {
        Ok(f) => f,
        Err(e) => return parse_failure(command, &expr, e),
    };
    let input = Value::from(f.to_string());
    let class = match f.cyclic_class(modulus) {
        Ok(c) => c,
        Err(e) => return failure(command, input, Status::UsageError, e.to_string()),
    };
    let at_zero = f.value_at_zero();
    let mut text = format!(
        "f = {}\nclass mod {}: {}\nf(0) = {}\n",
        f,
        modulus,
        class,
        at_zero
            .as_ref()
            .map_or("pole".to_string(), Rational::to_string)
    );
    let mut status = Status::Ok;
    let mut parity = Value::Null;
    if modulus == 2 {
        let cross = cross_parity(&f);
        let from_class = match class {
            CyclicClass::Zero | CyclicClass::Class(0) => Some(Parity::Even),
            CyclicClass::Class(_) => Some(Parity::Odd),
            CyclicClass::NotCyclic => None,
        };
        let agree = f.is_zero() || cross == from_class;
        if !agree {
            status = Status::Violation;
        }
        let mut numeric_report = Value::Null;
        if let Some(par) = from_class {
            let target = if par == Parity::Even {
                Target::Even
            } else {
                Target::Odd
            };
            match numeric_parity_check(&f, target, numeric.samples, numeric.tol) {
                Ok(r) => {
                    text.push_str(&describe_verification("parity (numeric)", &r));
                    text.push('\n');
                    if !r.pass {
                        status = Status::Violation;
                    }
                    numeric_report = to_value(&r);
                }
                Err(e) => return failure(command, input, Status::Error, e.to_string()),
            }
        }
        text.push_str(&format!(
            "cross-multiplication parity: {}\n",
            cross.map_or("neither".to_string(), |p| format!("{:?}", p).to_lowercase())
        ));
        parity = json!({ "cross_multiplication": cross, "agrees_with_class": agree, "numeric": numeric_report });
    }
    Report {
        command,
        input,
        result: json!({
            "modulus": modulus,
            "class": class_value(&class),
            "value_at_zero": at_zero.map(|v| v.to_string()),
            "parity": parity,
        }),
        status,
        text,
    }
}

fn bipoly(expr: String, subst: Option<String>) -> Report {
    let command = "bipoly";
    let p = match parse_bi(&expr) {
        Ok(p) => p,
        Err(e) => return parse_failure(command, &expr, e),
    };
    let input = Value::from(p.to_string());
    let components: Vec<Value> = p
        .homogeneous_components()
        .into_iter()
        .map(|(d, c)| json!({ "degree": d, "component": c.to_string() }))
        .collect();
    let odd: Vec<u32> = p
        .odd_homogeneous_components()
        .into_iter()
        .map(|(d, _)| d)
        .collect();
    let homogeneity = p.homogeneity();
    let mut text = format!(
        "P = {}\ntotal degree: {}\neven: {}\neven in each variable: {}\nhomogeneous: {}\nsymmetric: {}\n",
        p,
        p.total_degree().map_or("-inf".to_string(), |d| d.to_string()),
        p.is_even(),
        p.is_even_in_each_variable(),
        match homogeneity {
            None => "no".to_string(),
            Some(crate::bipoly::Homogeneity::Zero) => "yes (zero)".to_string(),
            Some(crate::bipoly::Homogeneity::Degree(d)) => format!("yes, degree {}", d),
        },
        p.is_symmetric()
    );
    let mut substitution = Value::Null;
    if let Some(spec) = subst {
        let Some((q_src, r_src)) = spec.split_once(';') else {
            return failure(
                command,
                input,
                Status::UsageError,
                "--subst expects `Q;R`".into(),
            );
        };
        let q = match parse_uni(q_src) {
            Ok(q) => q,
            Err(e) => return parse_failure(command, q_src, e),
        };
        let r = match parse_uni(r_src) {
            Ok(r) => r,
            Err(e) => return parse_failure(command, r_src, e),
        };
        let out = p.subst_uni(&q, &r);
        text.push_str(&format!("P({}, {}) = {}\n", q, r, out));
        substitution = json!({ "z": q.to_string(), "w": r.to_string(), "result": out.to_string() });
    }
    Report {
        command,
        input,
        result: json!({
            "total_degree": p.total_degree(),
            "even": p.is_even(),
            "even_in_each_variable": p.is_even_in_each_variable(),
            "homogeneity": homogeneity,
            "symmetric": p.is_symmetric(),
            "components": components,
            "odd_component_degrees": odd,
            "substitution": substitution,
        }),
        status: Status::Ok,
        text,
    }
}

fn status_text(s: &TheoremStatus) -> String {
    match s {
        TheoremStatus::HypothesesUnmet(why) => format!("hypotheses unmet ({})", why),
        TheoremStatus::Holds => "holds".into(),
        TheoremStatus::Violation(d) => format!("VIOLATION: {}", d),
    }
}

fn pqr_check(p_src: String, q_src: String) -> Report {
    let command = "pqr-check";
    let p = match parse_uni(&p_src) {
        Ok(p) => p,
        Err(e) => return parse_failure(command, &p_src, e),
    };
    let q = match parse_bi(&q_src) {
        Ok(q) => q,
        Err(e) => return parse_failure(command, &q_src, e),
    };
    let r = BiPoly::compose_outer(&p, &q);
    let even = theorem_pqr_assert(&p, &q);
    let homogeneous = homogeneous_pqr_assert(&p, &q);
    let status = if even.is_violation() || homogeneous.is_violation() {
        Status::Violation
    } else {
        Status::Ok
    };
    Report {
        command,
        input: json!([p.to_string(), q.to_string()]),
        result: json!({
            "composition": r.to_string(),
            "even_version": even,
            "homogeneous_version": homogeneous,
        }),
        status,
        text: format!(
            "R = P(Q) = {}\neven version: {}\nhomogeneous version: {}\n",
            r,
            status_text(&even),
            status_text(&homogeneous)
        ),
    }
}

fn parse_coefficients(spec: &str) -> Result<Vec<Rational>, String> {
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: i64 = lo
            .trim()
            .parse()
            .map_err(|_| format!("bad range start in {:?}", spec))?;
        let hi: i64 = hi
            .trim()
            .parse()
            .map_err(|_| format!("bad range end in {:?}", spec))?;
        if lo > hi || hi - lo > 1000 {
            return Err(format!("unusable coefficient range {:?}", spec));
        }
        return Ok((lo..=hi).map(crate::poly::rat).collect());
    }
    spec.split(',')
        .map(|item| {
            let item = item.trim();
            item.parse::<Rational>()
                .map_err(|_| format!("bad coefficient {:?}", item))
        })
        .collect()
}

fn build_config(
    args: &SearchArgs,
    family: Family,
) -> Result<(SearchConfig, Vec<PrimeModulus>), (Status, String)> {
    let coefficients = parse_coefficients(&args.coeffs).map_err(|e| (Status::UsageError, e))?;
    let ceiling = match &args.ceiling {
        Some(raw) => {
            parse_ceiling(raw).ok_or((Status::UsageError, format!("bad --ceiling {:?}", raw)))?
        }
        None => ceiling_from_env().map_err(|e| (Status::UsageError, e))?,
    };
    let moduli = args
        .modulus
        .iter()
        .map(|&n| PrimeModulus::new(n).map_err(|e| (Status::HypothesesUnmet, e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((
        SearchConfig {
            max_degree: args.max_degree,
            coefficients,
            modulus: None,
            family,
            parallelism: args.parallelism,
            ceiling,
            max_examples: args.max_examples,
            max_power: args.max_power,
            bivariate_degree: args.bivariate_degree,
        },
        moduli,
    ))
}

fn explorer_status(e: &ExplorerError) -> Status {
    match e {
        ExplorerError::EmptyCoefficients
        | ExplorerError::MissingZero
        | ExplorerError::InvalidDegree
        | ExplorerError::WrongFamily(_) => Status::UsageError,
        _ => Status::HypothesesUnmet,
    }
}

fn reports_outcome(command: &'static str, reports: Vec<SearchReport>) -> Report {
    let status = if reports.iter().all(SearchReport::is_consistent) {
        Status::Ok
    } else {
        Status::Violation
    };
    let text = reports
        .iter()
        .map(|r| format!("{}\n", r))
        .collect::<String>();
    Report {
        command,
        input: Value::Null,
        result: json!({ "reports": reports }),
        status,
        text,
    }
}

fn explore(search: SearchKind, family: Option<Family>, args: SearchArgs) -> Report {
    let command = "explore";
    let family = family.unwrap_or(match search {
        SearchKind::OpenQ1 => Family::Polynomial,
        SearchKind::OpenQ2 => Family::RationalFunction,
        SearchKind::SymmetricRemark => Family::Bivariate,
    });
    let (config, moduli) = match build_config(&args, family) {
        Ok(v) => v,
        Err((status, msg)) => return failure(command, Value::Null, status, msg),
    };
    let result = match search {
        SearchKind::OpenQ1 => search_open_q1(&config).map(|r| vec![r]),
        SearchKind::SymmetricRemark => search_symmetric_remark(&config).map(|r| vec![r]),
        SearchKind::OpenQ2 => {
            if moduli.is_empty() {
                Err(ExplorerError::MissingModulus)
            } else {
                moduli
                    .iter()
                    .map(|&m| {
                        search_open_q2(&SearchConfig {
                            modulus: Some(m),
                            ..config.clone()
                        })
                    })
                    .collect()
            }
        }
    };
    match result {
        Ok(reports) => reports_outcome(command, reports),
        Err(e) => failure(command, Value::Null, explorer_status(&e), e.to_string()),
    }
}

fn needs_modulus(t: Theorem) -> bool {
    matches!(
        t,
        Theorem::PropC | Theorem::ThmFA | Theorem::ThmFB | Theorem::SelfComp
    )
}

fn theorem_suite(choice: SuiteChoice, args: SearchArgs) -> Report {
    let command = "theorem-suite";
    let theorems: Vec<Theorem> = match choice {
        SuiteChoice::All => Theorem::ALL.to_vec(),
        SuiteChoice::PropC => vec![Theorem::PropC],
        SuiteChoice::ThmFA => vec![Theorem::ThmFA],
        SuiteChoice::ThmFB => vec![Theorem::ThmFB],
        SuiteChoice::SelfComp => vec![Theorem::SelfComp],
        SuiteChoice::LemmaB => vec![Theorem::LemmaB],
        SuiteChoice::Pqr => vec![Theorem::Pqr],
        SuiteChoice::BorelPolyRemark => vec![Theorem::BorelPolyRemark],
        SuiteChoice::LemmaMod => vec![Theorem::LemmaMod],
        SuiteChoice::HomogeneousPqr => vec![Theorem::HomogeneousPqr],
    };
    let (config, moduli) = match build_config(&args, Family::Polynomial) {
        Ok(v) => v,
        Err((status, msg)) => return failure(command, Value::Null, status, msg),
    };
    let default_moduli: Vec<PrimeModulus> = [2, 3, 5]
        .iter()
        .map(|&n| PrimeModulus::new(n).expect("prime"))
        .collect();
    let mut reports = Vec::new();
    for t in theorems {
        let family = match t {
            Theorem::Pqr | Theorem::HomogeneousPqr => Family::Bivariate,
            _ => Family::Polynomial,
        };
        let runs: Vec<Option<PrimeModulus>> = if needs_modulus(t) {
            let ms = if moduli.is_empty() {
                &default_moduli
            } else {
                &moduli
            };
            ms.iter().copied().map(Some).collect()
        } else if t == Theorem::LemmaMod {
            if moduli.is_empty() {
                vec![None]
            } else {
                moduli.iter().copied().map(Some).collect()
            }
        } else {
            vec![None]
        };
        for modulus in runs {
            let cfg = SearchConfig {
                modulus,
                family,
                ..config.clone()
            };
            match run_theorem_suite(t, &cfg) {
                Ok(r) => reports.push(r),
                Err(e) => return failure(command, Value::Null, explorer_status(&e), e.to_string()),
            }
        }
    }
    reports_outcome(command, reports)
}

fn eo_demo(numeric: NumericArgs) -> Report {
    let command = "eo-demo";
    match theorem_eo_demo(numeric.samples, numeric.tol) {
        Ok(r) => {
            let text = format!(
                "p = z^4 - 2*z^2, f(x) = cos x + sin x\n{}\n{}\n{}\n",
                describe_verification("p(f(x)) = p(f(-x))", &r.evenness),
                describe_verification("p(f(x)) = -4cos^4 x + 4cos^2 x - 1", &r.closed_form),
                describe_verification(
                    "q(g(x)) = -q(g(-x)), q = z^2 + 2z, g = f - 1",
                    &r.shifted_oddness
                ),
            );
            Report {
                command,
                input: Value::from(crate::parity::eo_quartic().to_string()),
                status: if r.pass {
                    Status::Ok
                } else {
                    Status::Violation
                },
                result: to_value(&r),
                text,
            }
        }
        Err(e) => failure(command, Value::Null, Status::UsageError, e.to_string()),
    }
}
