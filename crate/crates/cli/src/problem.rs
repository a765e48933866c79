//! Problem files: one ring declaration followed by named objects.
//!
//! ```text
//! ring p=2 vars=x,y order=grevlex
//! ideal I = x*y, y^2
//! matrix U = [[x,0],[0,y]]
//! poly u = x*y   # comment
//! ```

use std::fmt;

use fspecial::{
    parse_polynomial, Error, MonomialOrder, PolyMatrix, Polynomial, Result, Ring, RingRef,
};

#[derive(Clone, Debug, PartialEq)]
pub enum Object {
    Ideal(Vec<Polynomial>),
    Matrix(PolyMatrix),
    Poly(Polynomial),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Ideal(_) => "ideal",
            Object::Matrix(_) => "matrix",
            Object::Poly(_) => "poly",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub ring: RingRef,
    /// Objects in declaration order.
    pub objects: Vec<(String, Object)>,
}

impl ProblemFile {
    pub fn empty(ring: RingRef) -> Self {
        ProblemFile {
            ring,
            objects: Vec::new(),
        }
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.iter().find(|(n, _)| n == name).map(|(_, o)| o)
    }
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// `ring p=<prime> vars=<names> order=<lex|grevlex>`; the leading keyword is
/// optional so the same syntax serves the `--ring` flag.
pub fn parse_ring(src: &str, line: usize) -> Result<RingRef> {
    let mut p = None;
    let mut vars: Option<Vec<String>> = None;
    let mut order = MonomialOrder::GrevLex;
    let mut offset = 0;
    for (k, word) in src.split(' ').enumerate() {
        let col = offset + 1;
        offset += word.len() + 1;
        if word.is_empty() || (k == 0 && word == "ring") {
            continue;
        }
        let Some((key, value)) = word.split_once('=') else {
            return Err(perr(
                line,
                col,
                format!("expected key=value, found `{word}`"),
            ));
        };
        match key {
            "p" => {
                let v: u64 = value.parse().map_err(|_| {
                    perr(line, col + 2, format!("invalid characteristic `{value}`"))
                })?;
                p = Some(v);
            }
            "vars" => {
                vars = Some(value.split(',').map(|s| s.to_string()).collect());
            }
            "order" => {
                order = match value {
                    "lex" => MonomialOrder::Lex,
                    "grevlex" => MonomialOrder::GrevLex,
                    _ => return Err(perr(line, col + 6, format!("unknown order `{value}`"))),
                }
            }
            _ => return Err(perr(line, col, format!("unknown ring field `{key}`"))),
        }
    }
    let p = p.ok_or_else(|| perr(line, 1, "ring declaration needs p="))?;
    let vars = vars.ok_or_else(|| perr(line, 1, "ring declaration needs vars="))?;
    Ring::new(p, &vars, order).map_err(|e| match e {
        Error::NotPrime(_) => perr(line, 1, "p must be prime"),
        other => perr(line, 1, other.to_string()),
    })
}

pub fn format_ring(ring: &Ring) -> String {
    let order = match ring.order() {
        MonomialOrder::Lex => "lex",
        _ => "grevlex",
    };
    format!(
        "ring p={} vars={} order={}",
        ring.characteristic(),
        ring.names().join(","),
        order
    )
}

/// Splits on commas outside parentheses, returning pieces with byte offsets.
fn split_top(src: &str, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in src.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((base + start, &src[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((base + start, &src[start..]));
    out
}

fn parse_at(ring: &RingRef, piece: &str, line: usize, offset: usize) -> Result<Polynomial> {
    let lead = piece.len() - piece.trim_start().len();
    parse_polynomial(ring, piece.trim()).map_err(|e| e.at_line(line, offset + lead))
}

/// Comma-separated polynomials, optionally wrapped in parentheses.
pub fn parse_poly_list(
    ring: &RingRef,
    src: &str,
    line: usize,
    offset: usize,
) -> Result<Vec<Polynomial>> {
    let lead = src.len() - src.trim_start().len();
    let t = src.trim();
    let (body, base) = if t.starts_with('(') && t.ends_with(')') && balanced_outer(t) {
        (&t[1..t.len() - 1], offset + lead + 1)
    } else {
        (t, offset + lead)
    };
    if body.trim().is_empty() {
        return Err(perr(line, base + 1, "empty generator list"));
    }
    split_top(body, base)
        .into_iter()
        .map(|(off, piece)| parse_at(ring, piece, line, off))
        .collect()
}

fn balanced_outer(t: &str) -> bool {
    let mut depth = 0;
    for (i, c) in t.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i != t.len() - 1 {
                    return false;
                }
            }
            _ => {}
        }
    }
    true
}

/// `[[a,b],[c,d]]`.
pub fn parse_matrix(ring: &RingRef, src: &str, line: usize, offset: usize) -> Result<PolyMatrix> {
    let bytes = src.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let expect = |pos: &mut usize, c: u8| -> Result<()> {
        if *pos < bytes.len() && bytes[*pos] == c {
            *pos += 1;
            Ok(())
        } else {
            Err(perr(
                line,
                offset + *pos + 1,
                format!("expected `{}`", c as char),
            ))
        }
    };
    skip_ws(&mut pos);
    expect(&mut pos, b'[')?;
    let mut rows: Vec<Vec<Polynomial>> = Vec::new();
    loop {
        skip_ws(&mut pos);
        expect(&mut pos, b'[')?;
        let start = pos;
        let end = src[start..]
            .find(']')
            .map(|i| start + i)
            .ok_or_else(|| perr(line, offset + src.len() + 1, "unterminated matrix row"))?;
        let inner = &src[start..end];
        if inner.contains('[') {
            return Err(perr(line, offset + start + 1, "nested `[` in matrix row"));
        }
        if inner.trim().is_empty() {
            return Err(perr(line, offset + start + 1, "empty matrix row"));
        }
        let row = split_top(inner, start)
            .into_iter()
            .map(|(off, piece)| parse_at(ring, piece, line, offset + off))
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(perr(
                    line,
                    offset + start + 1,
                    format!("row has {} entries, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
        pos = end + 1;
        skip_ws(&mut pos);
        if pos < bytes.len() && bytes[pos] == b']' {
            pos += 1;
            break;
        }
        expect(&mut pos, b',')?;
    }
    skip_ws(&mut pos);
    if pos != bytes.len() {
        return Err(perr(line, offset + pos + 1, "trailing text after matrix"));
    }
    PolyMatrix::from_rows(ring, rows)
}

fn parse_object_line(ring: &RingRef, line: &str, lineno: usize) -> Result<(String, Object)> {
    let trimmed = line.trim_start();
    let lead = line.len() - trimmed.len();
    let (kind, rest) = trimmed
        .split_once(char::is_whitespace)
        .ok_or_else(|| perr(lineno, lead + 1, "expected `ideal`, `matrix` or `poly`"))?;
    let eq = rest
        .find('=')
        .ok_or_else(|| perr(lineno, lead + kind.len() + 2, "expected `=`"))?;
    let name = rest[..eq].trim();
    let name_col = lead + kind.len() + 2 + (rest.len() - rest.trim_start().len());
    let valid = name
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !valid {
        return Err(perr(
            lineno,
            name_col,
            format!("invalid object name `{name}`"),
        ));
    }
    let body_off = lead + kind.len() + 1 + eq + 1;
    let body = &rest[eq + 1..];
    let obj = match kind {
        "ideal" => Object::Ideal(parse_poly_list(ring, body, lineno, body_off)?),
        "matrix" => Object::Matrix(parse_matrix(ring, body, lineno, body_off)?),
        "poly" => Object::Poly(parse_at(ring, body, lineno, body_off)?),
        other => {
            return Err(perr(
                lineno,
                lead + 1,
                format!("unknown object kind `{other}`"),
            ));
        }
    };
    Ok((name.to_string(), obj))
}

/// Parses a problem file. With `ring` given, a ring line is optional and,
/// when present, must declare the same ring.
pub fn parse_problem_in(text: &str, ring: Option<RingRef>) -> Result<ProblemFile> {
    let mut pf: Option<ProblemFile> = ring.map(ProblemFile::empty);
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        if line.trim_start().starts_with("ring ") {
            let r = parse_ring(line.trim(), lineno)?;
            match &pf {
                None => pf = Some(ProblemFile::empty(r)),
                Some(existing) if existing.objects.is_empty() && *existing.ring == *r => {}
                Some(_) => return Err(perr(lineno, 1, "conflicting ring declaration")),
            }
            continue;
        }
        let Some(cur) = pf.as_mut() else {
            return Err(perr(lineno, 1, "the first line must declare the ring"));
        };
        let (name, obj) = parse_object_line(&cur.ring, line, lineno)?;
        if cur.get(&name).is_some() {
            return Err(perr(lineno, 1, format!("duplicate object name `{name}`")));
        }
        cur.objects.push((name, obj));
    }
    pf.ok_or_else(|| perr(1, 1, "missing ring declaration"))
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    parse_problem_in(text, None)
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", format_ring(&self.ring))?;
        for (name, obj) in &self.objects {
            match obj {
                Object::Ideal(gens) => {
                    let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
                    writeln!(f, "ideal {name} = {}", parts.join(", "))?;
                }
                Object::Matrix(m) => writeln!(f, "matrix {name} = {m}")?,
                Object::Poly(p) => writeln!(f, "poly {name} = {p}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_generator_ideal() {
        let pf = parse_problem("ring p=2 vars=x,y order=grevlex\nideal I = x*y, y^2").unwrap();
        match pf.get("I").unwrap() {
            Object::Ideal(g) => assert_eq!(g.len(), 2),
            o => panic!("{}", o.kind()),
        }
    }

    #[test]
    fn matrix_object() {
        let pf =
            parse_problem("ring p=2 vars=x,y order=grevlex\nmatrix U = [[x,0],[0,y]]").unwrap();
        match pf.get("U").unwrap() {
            Object::Matrix(m) => {
                assert_eq!((m.rows(), m.cols()), (2, 2));
                assert_eq!(m.to_string(), "[[x,0],[0,y]]");
            }
            o => panic!("{}", o.kind()),
        }
    }

    #[test]
    fn composite_characteristic() {
        let err = parse_problem("ring p=4 vars=x order=lex").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 1,
                col: 1,
                msg: "p must be prime".into()
            }
        );
    }

    #[test]
    fn diagnostics_point_at_the_token() {
        let err = parse_problem("ring p=2 vars=x,y\n\nideal I = x*y, z^2").unwrap_err();
        match err {
            Error::Parse { line, col, msg } => {
                assert_eq!((line, col), (3, 16));
                assert!(msg.contains("unknown variable"), "{msg}");
            }
            e => panic!("{e}"),
        }
        let err = parse_problem("ring p=2 vars=x\nmatrix M = [[x,1],[x]]").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn comments_and_blank_lines() {
        let pf = parse_problem(
            "# header\nring p=3 vars=a,b order=lex  # lex\n\npoly f = a - b # tail\n",
        )
        .unwrap();
        assert_eq!(pf.objects.len(), 1);
        assert_eq!(
            pf.to_string(),
            "ring p=3 vars=a,b order=lex\npoly f = a+2*b\n"
        );
    }

    #[test]
    fn round_trip() {
        let src = "ring p=5 vars=x,y,z order=grevlex\nideal I = x^2-y*z, (x+y)^3\nmatrix U = [[x, 1], [0, y^2]]\npoly u = 3*x*y\n";
        let once = parse_problem(src).unwrap().to_string();
        let twice = parse_problem(&once).unwrap().to_string();
        assert_eq!(once, twice);
    }

    #[test]
    fn wrapped_ideal_and_rejections() {
        let r = parse_ring("p=2 vars=x,y", 1).unwrap();
        assert_eq!(parse_poly_list(&r, "(x, y)", 1, 0).unwrap().len(), 2);
        assert_eq!(parse_poly_list(&r, "(x+1)*(y+1)", 1, 0).unwrap().len(), 1);
        assert!(parse_problem("ideal I = x").is_err());
        assert!(parse_problem("ring p=2 vars=x\nideal I = x\nideal I = x^2").is_err());
        assert!(parse_problem("ring p=2 vars=x order=deglex").is_err());
    }
}
