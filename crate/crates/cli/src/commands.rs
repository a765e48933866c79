//! Command dispatch and canonical rendering.

use std::fmt::Write as _;
use std::path::Path;

use fspecial::primes::sort_ideals;
use fspecial::{
    corank_positive_primes, fedder_colon, ie_operation, ks_run, kz_run, minimal_primes,
    stable_kernel, star_closure, validate_root, Error, Ideal, KSProblem, KZProblem, Limits,
    PolyMatrix, Polynomial, Result, Session, Submodule,
};

use crate::problem::{
    format_ring, parse_matrix, parse_poly_list, parse_problem_in, Object, ProblemFile,
};

/// Arguments name an object of the problem file, a file on disk, or inline
/// text. `None` falls back to the object with the conventional name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Gb {
        ideal: Option<String>,
    },
    MinPrimes {
        ideal: Option<String>,
    },
    Ie {
        module: Option<String>,
        e: u32,
    },
    Star {
        module: Option<String>,
        matrix: Option<String>,
        e: u32,
    },
    StableK {
        matrix: Option<String>,
    },
    Fedder {
        ideal: Option<String>,
        e: u32,
    },
    Ks {
        u: Option<String>,
        e: u32,
        localize: Option<String>,
    },
    Kz {
        matrix: Option<String>,
    },
    Corank {
        a: Option<String>,
        matrix: Option<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    /// Result in problem-file syntax, for `--out`.
    pub record: String,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } => 2,
        Error::ResourceCap(_) => 3,
        _ => 1,
    }
}

enum Value {
    Polys(Vec<Polynomial>),
    Matrix(PolyMatrix),
}

fn value_of(obj: &Object) -> Value {
    match obj {
        Object::Ideal(g) => Value::Polys(g.clone()),
        Object::Poly(p) => Value::Polys(vec![p.clone()]),
        Object::Matrix(m) => Value::Matrix(m.clone()),
    }
}

fn resolve(pf: &ProblemFile, arg: Option<&str>, default: &str, flag: &str) -> Result<Value> {
    let arg = match arg {
        Some(a) => a,
        None => {
            return pf.get(default).map(value_of).ok_or_else(|| {
                Error::Precondition(format!("missing --{flag} (no object named {default})"))
            });
        }
    };
    if let Some(obj) = pf.get(arg) {
        return Ok(value_of(obj));
    }
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Precondition(format!("cannot read {arg}: {e}")))?;
        let body: String = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .collect::<Vec<_>>()
            .join("\n");
        if body.trim_start().starts_with('[') {
            return parse_matrix(&pf.ring, body.trim(), 1, 0).map(Value::Matrix);
        }
        let sub = parse_problem_in(&text, Some(pf.ring.clone()))?;
        let obj = sub
            .get(default)
            .or_else(|| sub.objects.first().map(|(_, o)| o))
            .ok_or_else(|| Error::Precondition(format!("{arg} declares no objects")))?;
        return Ok(value_of(obj));
    }
    if arg.trim_start().starts_with('[') {
        parse_matrix(&pf.ring, arg, 1, 0).map(Value::Matrix)
    } else {
        parse_poly_list(&pf.ring, arg, 1, 0).map(Value::Polys)
    }
}

fn as_module(v: Value, pf: &ProblemFile) -> Result<Submodule> {
    match v {
        Value::Polys(g) => Submodule::ideal(&pf.ring, &g),
        Value::Matrix(m) => Ok(m.image()),
    }
}

fn as_ideal(v: Value, pf: &ProblemFile) -> Result<Ideal> {
    match v {
        Value::Polys(g) => Submodule::ideal(&pf.ring, &g),
        Value::Matrix(m) if m.rows() == 1 => Submodule::ideal(&pf.ring, m.entries()),
        Value::Matrix(m) => Err(Error::DimensionMismatch(format!(
            "expected an ideal, found a {}x{} matrix",
            m.rows(),
            m.cols()
        ))),
    }
}

fn as_matrix(v: Value, pf: &ProblemFile) -> Result<PolyMatrix> {
    match v {
        Value::Matrix(m) => Ok(m),
        Value::Polys(g) if g.len() == 1 => PolyMatrix::new(&pf.ring, 1, 1, g),
        Value::Polys(_) => Err(Error::DimensionMismatch("expected a matrix".into())),
    }
}

fn as_poly(v: Value) -> Result<Polynomial> {
    match v {
        Value::Polys(mut g) if g.len() == 1 => Ok(g.pop().unwrap()),
        Value::Matrix(m) if m.rows() == 1 && m.cols() == 1 => Ok(m.get(0, 0).clone()),
        _ => Err(Error::DimensionMismatch(
            "expected a single polynomial".into(),
        )),
    }
}

fn module_record(pf: &ProblemFile, name: &str, m: &Submodule) -> String {
    if m.rank() == 1 {
        let gens: Vec<String> = m.polys().iter().map(|g| g.to_string()).collect();
        let body = if gens.is_empty() {
            "0".to_string()
        } else {
            gens.join(", ")
        };
        format!("ideal {name} = {body}\n")
    } else {
        let cols = if m.is_zero() {
            PolyMatrix::zero(&pf.ring, m.rank(), 1)
        } else {
            PolyMatrix::from_columns(&pf.ring, m.rank(), m.gens()).expect("same ring")
        };
        format!("matrix {name} = {cols}\n")
    }
}

struct Rendered {
    text: String,
    record: String,
}

fn render_module(pf: &ProblemFile, m: &Submodule) -> Rendered {
    Rendered {
        text: format!("{m}\n"),
        record: module_record(pf, "R", m),
    }
}

fn render_primes(pf: &ProblemFile, mut primes: Vec<Ideal>) -> Rendered {
    sort_ideals(&mut primes);
    let mut text = String::new();
    let mut record = String::new();
    for (k, p) in primes.iter().enumerate() {
        let _ = writeln!(text, "{p}");
        record.push_str(&module_record(pf, &format!("P{}", k + 1), p));
    }
    Rendered { text, record }
}

fn dispatch(pf: &ProblemFile, cmd: &Command, s: &Session) -> Result<Rendered> {
    match cmd {
        Command::Gb { ideal } => {
            let m = as_module(resolve(pf, ideal.as_deref(), "I", "I")?, pf)?;
            Ok(render_module(pf, &m))
        }
        Command::MinPrimes { ideal } => {
            let i = as_ideal(resolve(pf, ideal.as_deref(), "I", "I")?, pf)?;
            let ps = minimal_primes(s, &i)?
                .into_iter()
                .map(|r| r.ideal)
                .collect();
            Ok(render_primes(pf, ps))
        }
        Command::Ie { module, e } => {
            let k = as_module(resolve(pf, module.as_deref(), "K", "K")?, pf)?;
            Ok(render_module(pf, &ie_operation(&k, *e)?))
        }
        Command::Star { module, matrix, e } => {
            let v = as_module(resolve(pf, module.as_deref(), "V", "V")?, pf)?;
            let u = as_matrix(resolve(pf, matrix.as_deref(), "U", "U")?, pf)?;
            Ok(render_module(pf, &star_closure(s, &v, &u, *e)?))
        }
        Command::StableK { matrix } => {
            let u = as_matrix(resolve(pf, matrix.as_deref(), "U", "U")?, pf)?;
            let sk = stable_kernel(s, &u)?;
            for (k, m) in sk.chain.iter().enumerate() {
                s.trace(|| format!("K_{} = {m}", k + 1));
            }
            s.trace(|| format!("stable from e = {}", sk.index));
            Ok(render_module(pf, &sk.module))
        }
        Command::Fedder { ideal, e } => {
            let i = as_ideal(resolve(pf, ideal.as_deref(), "I", "I")?, pf)?;
            Ok(render_module(pf, &fedder_colon(&i, *e)?))
        }
        Command::Ks { u, e, localize } => {
            let u = as_poly(resolve(pf, u.as_deref(), "u", "u")?)?;
            let mut prob = KSProblem::new(u, *e)?;
            if let Some(a) = localize {
                prob = prob.localized(as_poly(resolve(pf, Some(a), "a", "localize")?)?);
            }
            let res = ks_run(s, &prob)?;
            s.trace(|| format!("excluded locus {}", res.excluded_locus));
            Ok(render_primes(pf, res.ideals()))
        }
        Command::Kz { matrix } => {
            let u = as_matrix(resolve(pf, matrix.as_deref(), "U", "U")?, pf)?;
            let prob = KZProblem::new(s, u)?;
            s.trace(|| format!("stable kernel {}", prob.kernel));
            let ps = kz_run(s, &prob)?.into_iter().map(|r| r.ideal).collect();
            Ok(render_primes(pf, ps))
        }
        Command::Corank { a, matrix } => {
            let a = as_matrix(resolve(pf, a.as_deref(), "A", "A")?, pf)?;
            let u = as_matrix(resolve(pf, matrix.as_deref(), "U", "U")?, pf)?;
            let rd = validate_root(a, u)?;
            let ps = corank_positive_primes(s, &rd)?
                .into_iter()
                .map(|r| r.ideal)
                .collect();
            Ok(render_primes(pf, ps))
        }
    }
}

/// Runs one command; output is assembled only after the computation ends.
pub fn run_command(pf: &ProblemFile, cmd: &Command, limits: Limits, trace: bool) -> Outcome {
    let session = if trace {
        Session::traced(limits)
    } else {
        Session::new(limits)
    };
    let result = dispatch(pf, cmd, &session);
    let mut stdout = String::new();
    for line in session.take_trace() {
        stdout.push_str(&line);
        stdout.push('\n');
    }
    match result {
        Ok(r) => {
            stdout.push_str(&r.text);
            Outcome {
                code: 0,
                stdout,
                stderr: String::new(),
                record: format!("{}\n{}", format_ring(&pf.ring), r.record),
            }
        }
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout,
            stderr: format!("error: {e}\n"),
            record: String::new(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::parse_problem;

    fn run(src: &str, cmd: Command) -> Outcome {
        run_command(&parse_problem(src).unwrap(), &cmd, Limits::default(), false)
    }

    const R2: &str = "ring p=2 vars=x,y order=grevlex\n";

    #[test]
    fn ks_golden() {
        let out = run(
            R2,
            Command::Ks {
                u: Some("x*y".into()),
                e: 1,
                localize: None,
            },
        );
        assert_eq!(out.stdout, "(0)\n(x)\n(y)\n(x, y)\n");
        assert_eq!(out.code, 0);
    }

    #[test]
    fn ie_golden() {
        let out = run(
            R2,
            Command::Ie {
                module: Some("x^3*y".into()),
                e: 1,
            },
        );
        assert_eq!(out.stdout, "(x)\n");
    }

    #[test]
    fn gb_of_zero() {
        let out = run(&format!("{R2}ideal I = 0\n"), Command::Gb { ideal: None });
        assert_eq!(out.stdout, "(0)\n");
    }

    #[test]
    fn exit_codes() {
        let unit = run(
            &format!("{R2}ideal I = x, x+1\n"),
            Command::Fedder { ideal: None, e: 1 },
        );
        assert_eq!(unit.code, 1);
        let bad = run(
            R2,
            Command::Gb {
                ideal: Some("x+z".into()),
            },
        );
        assert_eq!(bad.code, 2);
        let missing = run(R2, Command::Kz { matrix: None });
        assert_eq!(missing.code, 1);
        let capped = run_command(
            &parse_problem(R2).unwrap(),
            &Command::Star {
                module: Some("x".into()),
                matrix: Some("[[x*y]]".into()),
                e: 1,
            },
            Limits {
                star_cap: 0,
                ..Limits::default()
            },
            false,
        );
        assert_eq!(capped.code, 3);
    }

    #[test]
    fn module_and_record_output() {
        let src = format!("{R2}matrix U = [[x,0],[0,y]]\n");
        let out = run(&src, Command::StableK { matrix: None });
        assert_eq!(out.stdout, "<[1, 0], [0, 1]>\n");
        let back = parse_problem(&out.record).unwrap();
        assert_eq!(back.objects.len(), 1);
        let out = run(&src, Command::Kz { matrix: None });
        assert_eq!(out.stdout, "(0)\n(x)\n(y)\n");
        assert!(parse_problem(&out.record).unwrap().get("P3").is_some());
    }

    #[test]
    fn trace_lines_precede_output() {
        let pf = parse_problem(&format!("{R2}matrix U = [[x,0],[0,y]]\n")).unwrap();
        let out = run_command(&pf, &Command::Kz { matrix: None }, Limits::default(), true);
        let lines: Vec<&str> = out.stdout.lines().collect();
        assert!(lines[0].starts_with("# "));
        assert_eq!(&lines[lines.len() - 3..], ["(0)", "(x)", "(y)"]);
        assert!(out.stdout.contains("case 2"));
    }

    #[test]
    fn corank_line() {
        let src = "ring p=2 vars=x order=grevlex\nmatrix A = [[x]]\nmatrix U = [[x]]\n";
        let out = run(
            src,
            Command::Corank {
                a: None,
                matrix: None,
            },
        );
        assert_eq!(out.stdout, "(x)\n");
    }
}
