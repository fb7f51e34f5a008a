use std::fmt::Write as _;

use super::algebra::{NilpotentAlgebra, MAX_DIM};
use crate::error::{Error, Result};
use crate::smallfield::{make_field, FieldElement, MAX_DEGREE};

/// Parses the algebra file format and validates associativity and
/// nilpotency.
pub fn parse_algebra(text: &str) -> Result<NilpotentAlgebra> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty());

    let (ln, header) = lines.next().ok_or_else(|| Error::syntax(1, 1, "empty input"))?;
    if header.trim() != "algebra" {
        return Err(Error::syntax(ln, col_of(header, header.trim()), "expected `algebra`"));
    }
    let (ln, l) = lines.next().ok_or_else(|| Error::syntax(ln + 1, 1, "expected `p <prime>`"))?;
    let p = keyword_value(ln, l, "p")?;
    let (ln, l) = lines.next().ok_or_else(|| Error::syntax(ln + 1, 1, "expected `n <degree>`"))?;
    let n = keyword_value(ln, l, "n")? as usize;
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::syntax(ln, col_of(l, &n.to_string()), format!("degree {n} out of range")));
    }
    let field = make_field(p, n).map_err(|e| match e {
        Error::NotPrime(_) => Error::syntax(2, 3, format!("{p} is not a prime")),
        other => other,
    })?;
    let (ln, l) = lines.next().ok_or_else(|| Error::syntax(ln + 1, 1, "expected `dim <d>`"))?;
    let dim = keyword_value(ln, l, "dim")? as usize;
    if dim > MAX_DIM {
        return Err(Error::GeneratorGuardExceeded(format!("algebra dimension {dim} exceeds {MAX_DIM}")));
    }

    let mut sc: Vec<Option<Vec<(usize, FieldElement)>>> = vec![None; dim * dim];
    for (ln, line) in lines {
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| Error::syntax(ln, 1, "expected `=`"))?;
        let rhs_col = line.find('=').unwrap() + 2;
        let (bi, bj) = lhs
            .trim()
            .split_once('*')
            .ok_or_else(|| Error::syntax(ln, col_of(line, lhs.trim()), "expected `b<i>*b<j>`"))?;
        let i = parse_basis(ln, line, bi.trim(), dim)?;
        let j = parse_basis(ln, line, bj.trim(), dim)?;
        let terms = parse_combo(ln, rhs_col, rhs, p, n, dim, &field)?;
        if sc[i * dim + j].replace(terms).is_some() {
            return Err(Error::syntax(ln, 1, format!("duplicate product b{}*b{}", i + 1, j + 1)));
        }
    }
    let sc = sc.into_iter().map(Option::unwrap_or_default).collect();
    NilpotentAlgebra::new(field, dim, sc, None)
}

fn col_of(line: &str, token: &str) -> usize {
    line.find(token).map(|c| c + 1).unwrap_or(1)
}

fn keyword_value(ln: usize, line: &str, kw: &str) -> Result<u64> {
    let mut toks = line.split_whitespace();
    if toks.next() != Some(kw) {
        return Err(Error::syntax(ln, col_of(line, line.trim()), format!("expected `{kw} <number>`")));
    }
    let v = toks
        .next()
        .ok_or_else(|| Error::syntax(ln, line.len() + 1, "missing number"))?;
    if toks.next().is_some() {
        return Err(Error::syntax(ln, 1, "trailing tokens"));
    }
    v.parse::<u64>()
        .map_err(|_| Error::syntax(ln, col_of(line, v), format!("invalid number `{v}`")))
}

fn parse_basis(ln: usize, line: &str, tok: &str, dim: usize) -> Result<usize> {
    let idx = tok
        .strip_prefix('b')
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| Error::syntax(ln, col_of(line, tok), format!("expected basis element, found `{tok}`")))?;
    if idx == 0 || idx > dim {
        return Err(Error::syntax(ln, col_of(line, tok), format!("basis element b{idx} out of range")));
    }
    Ok(idx - 1)
}

fn parse_combo(
    ln: usize,
    col: usize,
    text: &str,
    p: u64,
    n: usize,
    dim: usize,
    field: &crate::smallfield::FieldDesc,
) -> Result<Vec<(usize, FieldElement)>> {
    let text = text.trim();
    if text == "0" {
        return Ok(Vec::new());
    }
    if text.is_empty() {
        return Err(Error::syntax(ln, col, "missing right-hand side"));
    }
    let mut acc = vec![FieldElement::ZERO; dim];
    for term in text.split('+') {
        let term = term.trim();
        let (coef, basis) = match term.rsplit_once('*') {
            Some((c, b)) => {
                let c = c.trim();
                let inner = c
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| Error::syntax(ln, col, format!("expected `[c0,c1,...]`, found `{c}`")))?;
                let coords: Vec<u64> = inner
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<u64>()
                            .ok()
                            .filter(|&v| v < p)
                            .ok_or_else(|| Error::syntax(ln, col, format!("coefficient `{}` not in [0, {p})", s.trim())))
                    })
                    .collect::<Result<_>>()?;
                if coords.len() > n {
                    return Err(Error::syntax(ln, col, format!("more than {n} coefficients")));
                }
                (field.from_coords(&coords)?, b.trim())
            }
            None => (field.one(), term),
        };
        let k = basis
            .strip_prefix('b')
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&k| k >= 1 && k <= dim)
            .ok_or_else(|| Error::syntax(ln, col, format!("invalid basis element `{basis}`")))?;
        acc[k - 1] = field.add(acc[k - 1], coef);
    }
    Ok(acc
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect())
}

impl NilpotentAlgebra {
    /// Renders the algebra in the file format.
    pub fn to_source(&self) -> String {
        let f = self.field();
        let mut out = String::new();
        let _ = writeln!(out, "algebra\np {}\nn {}\ndim {}", f.p(), f.n(), self.dim());
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let terms = self.product_terms(i, j);
                if terms.is_empty() {
                    continue;
                }
                let rhs: Vec<String> = terms
                    .iter()
                    .map(|&(k, c)| {
                        if c == f.one() {
                            format!("b{}", k + 1)
                        } else {
                            let coords: Vec<String> = f.coords(c).iter().map(|x| x.to_string()).collect();
                            format!("[{}]*b{}", coords.join(","), k + 1)
                        }
                    })
                    .collect();
                let _ = writeln!(out, "b{}*b{} = {}", i + 1, j + 1, rhs.join(" + "));
            }
        }
        out
    }
}
