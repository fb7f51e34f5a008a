use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::smallfield::is_prime;

/// A normal word `g_{k1}^{e1} g_{k2}^{e2} ...` with strictly increasing
/// (0-based) generator indices and exponents in `[1, p)`.
pub type Word = Vec<(usize, u32)>;

/// A finite p-group of order `p^m` given by a power-commutator presentation
/// in which every relative order is `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    p: u32,
    m: usize,
    power: Vec<Word>,
    /// `comm[j][i]` for `i < j` is the normal word equal to `[g_j, g_i]`.
    comm: Vec<Vec<Word>>,
}

/// Exponent vector of a group element in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<u32>);

impl GroupElement {
    pub fn identity(m: usize) -> GroupElement {
        GroupElement(vec![0; m])
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    /// The element as a normal word.
    pub fn to_word(&self) -> Word {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(k, &e)| (k, e))
            .collect()
    }
}

impl PcPresentation {
    /// Builds a presentation after checking that every word is normal, that
    /// power words only use later generators and that commutator words only
    /// use generators later than the smaller index. Consistency is not
    /// checked here; see [`PcPresentation::consistency_check`].
    pub fn new(p: u32, m: usize, power: Vec<Word>, comm: Vec<Vec<Word>>) -> Result<PcPresentation> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if power.len() != m || comm.len() != m || comm.iter().enumerate().any(|(j, row)| row.len() != j) {
            return Err(Error::InconsistentPresentation(
                "relation tables do not match the generator count".into(),
            ));
        }
        let pres = PcPresentation { p, m, power, comm };
        for i in 0..m {
            pres.check_word(&pres.power[i], i + 1)
                .map_err(|e| Error::InconsistentPresentation(format!("power word of g{}: {e}", i + 1)))?;
            for j in i + 1..m {
                pres.check_word(&pres.comm[j][i], i + 1).map_err(|e| {
                    Error::InconsistentPresentation(format!("commutator [g{}, g{}]: {e}", j + 1, i + 1))
                })?;
            }
        }
        Ok(pres)
    }

    /// Crate-internal constructor for presentations that are consistent by
    /// construction.
    pub(crate) fn from_parts_unchecked(p: u32, m: usize, power: Vec<Word>, comm: Vec<Vec<Word>>) -> Self {
        PcPresentation { p, m, power, comm }
    }

    fn check_word(&self, w: &Word, min_index: usize) -> std::result::Result<(), String> {
        let mut last: Option<usize> = None;
        for &(k, e) in w {
            if k >= self.m {
                return Err(format!("generator g{} out of range", k + 1));
            }
            if k < min_index {
                return Err(format!("generator g{} must have index > {}", k + 1, min_index));
            }
            if last.is_some_and(|l| k <= l) {
                return Err("generator indices must increase strictly".into());
            }
            if e == 0 || e >= self.p {
                return Err(format!("exponent {e} outside [1, {})", self.p));
            }
            last = Some(k);
        }
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Number of polycyclic generators; the group has order `p^m`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Group order as a machine integer, when it fits.
    pub fn order(&self) -> Option<u64> {
        (self.p as u64).checked_pow(self.m as u32)
    }

    pub fn power_word(&self, i: usize) -> &Word {
        &self.power[i]
    }

    /// The word equal to `[g_j, g_i]`, for `i < j`.
    pub fn comm_word(&self, j: usize, i: usize) -> &Word {
        &self.comm[j][i]
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.m)
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut e = vec![0; self.m];
        e[i] = 1;
        GroupElement(e)
    }

    /// Position of `x` in the lexicographic enumeration of exponent vectors.
    pub fn index_of(&self, x: &GroupElement) -> usize {
        x.0.iter().fold(0usize, |acc, &e| acc * self.p as usize + e as usize)
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut e = vec![0u32; self.m];
        for k in (0..self.m).rev() {
            e[k] = (index % self.p as usize) as u32;
            index /= self.p as usize;
        }
        GroupElement(e)
    }

    pub fn is_abelian_presentation(&self) -> bool {
        self.comm.iter().all(|row| row.iter().all(|w| w.is_empty()))
    }

    /// Renders the presentation in the line-oriented file format.
    pub fn to_source(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "pgroup");
        let _ = writeln!(out, "p {}", self.p);
        let _ = writeln!(out, "gens {}", self.m);
        for i in 0..self.m {
            if !self.power[i].is_empty() {
                let _ = writeln!(out, "pow g{} = {}", i + 1, format_word(&self.power[i]));
            }
        }
        for j in 0..self.m {
            for i in 0..j {
                if !self.comm[j][i].is_empty() {
                    let _ = writeln!(out, "comm g{} g{} = {}", j + 1, i + 1, format_word(&self.comm[j][i]));
                }
            }
        }
        out
    }
}

pub fn format_word(w: &[(usize, u32)]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter()
        .map(|&(k, e)| if e == 1 { format!("g{}", k + 1) } else { format!("g{}^{}", k + 1, e) })
        .collect::<Vec<_>>()
        .join("*")
}

/// Parses the presentation file format and verifies consistency.
pub fn parse_presentation(text: &str) -> Result<PcPresentation> {
    let pres = parse_unchecked(text)?;
    if let Some(v) = pres.consistency_check() {
        return Err(Error::InconsistentPresentation(v.to_string()));
    }
    Ok(pres)
}

/// Parses without running the consistency check.
pub fn parse_unchecked(text: &str) -> Result<PcPresentation> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty());

    let (ln, header) = lines.next().ok_or_else(|| Error::syntax(1, 1, "empty input"))?;
    if header.trim() != "pgroup" {
        return Err(Error::syntax(ln, col_of(header, header.trim()), "expected `pgroup`"));
    }
    let (ln, pline) = lines.next().ok_or_else(|| Error::syntax(ln + 1, 1, "expected `p <prime>`"))?;
    let p = keyword_value(ln, pline, "p")?;
    if !is_prime(p) || p > u32::MAX as u64 {
        return Err(Error::syntax(ln, col_of(pline, &p.to_string()), format!("{p} is not a prime")));
    }
    let p = p as u32;
    let (ln, gline) = lines.next().ok_or_else(|| Error::syntax(ln + 1, 1, "expected `gens <m>`"))?;
    let m = keyword_value(ln, gline, "gens")? as usize;
    if m > 4096 {
        return Err(Error::syntax(ln, 1, "too many generators"));
    }

    let mut power: Vec<Option<Word>> = vec![None; m];
    let mut comm: Vec<Vec<Option<Word>>> = (0..m).map(|j| vec![None; j]).collect();

    for (ln, line) in lines {
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| Error::syntax(ln, 1, "expected `=`"))?;
        let rhs_col = line.find('=').unwrap() + 2;
        let mut toks = lhs.split_whitespace();
        let kw = toks.next().unwrap_or("");
        match kw {
            "pow" => {
                let g = toks.next().ok_or_else(|| Error::syntax(ln, 1, "missing generator"))?;
                let i = parse_gen(ln, line, g, m)?;
                if toks.next().is_some() {
                    return Err(Error::syntax(ln, 1, "unexpected token before `=`"));
                }
                let w = parse_word(ln, rhs_col, rhs, p, m)?;
                if let Some(&(k, _)) = w.first() {
                    if k <= i {
                        return Err(Error::syntax(
                            ln,
                            rhs_col,
                            format!("right-hand side must use generators with index > {}", i + 1),
                        ));
                    }
                }
                if power[i].replace(w).is_some() {
                    return Err(Error::syntax(ln, 1, format!("duplicate power relation for g{}", i + 1)));
                }
            }
            "comm" => {
                let gj = toks.next().ok_or_else(|| Error::syntax(ln, 1, "missing generator"))?;
                let gi = toks.next().ok_or_else(|| Error::syntax(ln, 1, "missing generator"))?;
                if toks.next().is_some() {
                    return Err(Error::syntax(ln, 1, "unexpected token before `=`"));
                }
                let j = parse_gen(ln, line, gj, m)?;
                let i = parse_gen(ln, line, gi, m)?;
                if j <= i {
                    return Err(Error::syntax(ln, col_of(line, gj), "commutator needs g<j> g<i> with j > i"));
                }
                let w = parse_word(ln, rhs_col, rhs, p, m)?;
                if let Some(&(k, _)) = w.first() {
                    if k <= i {
                        return Err(Error::syntax(
                            ln,
                            rhs_col,
                            format!("right-hand side must use generators with index > {}", i + 1),
                        ));
                    }
                }
                if comm[j][i].replace(w).is_some() {
                    return Err(Error::syntax(
                        ln,
                        1,
                        format!("duplicate commutator relation for [g{}, g{}]", j + 1, i + 1),
                    ));
                }
            }
            other => {
                return Err(Error::syntax(ln, col_of(line, other), format!("unknown keyword `{other}`")));
            }
        }
    }

    let power = power.into_iter().map(Option::unwrap_or_default).collect();
    let comm = comm
        .into_iter()
        .map(|row| row.into_iter().map(Option::unwrap_or_default).collect())
        .collect();
    PcPresentation::new(p, m, power, comm)
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

fn parse_gen(ln: usize, line: &str, tok: &str, m: usize) -> Result<usize> {
    let idx = tok
        .strip_prefix('g')
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| Error::syntax(ln, col_of(line, tok), format!("expected generator, found `{tok}`")))?;
    if idx == 0 || idx > m {
        return Err(Error::syntax(ln, col_of(line, tok), format!("generator g{idx} out of range")));
    }
    Ok(idx - 1)
}

fn parse_word(ln: usize, col: usize, text: &str, p: u32, m: usize) -> Result<Word> {
    let text = text.trim();
    if text == "1" {
        return Ok(Vec::new());
    }
    if text.is_empty() {
        return Err(Error::syntax(ln, col, "missing word"));
    }
    let mut w: Word = Vec::new();
    for term in text.split('*') {
        let term = term.trim();
        let (g, e) = match term.split_once('^') {
            Some((g, e)) => {
                let e = e
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| Error::syntax(ln, col, format!("invalid exponent in `{term}`")))?;
                (g.trim(), e)
            }
            None => (term, 1),
        };
        let idx = g
            .strip_prefix('g')
            .and_then(|s| s.parse::<usize>().ok())
            .ok_or_else(|| Error::syntax(ln, col, format!("expected generator, found `{g}`")))?;
        if idx == 0 || idx > m {
            return Err(Error::syntax(ln, col, format!("generator g{idx} out of range")));
        }
        if e == 0 || e >= p {
            return Err(Error::syntax(ln, col, format!("exponent {e} outside [1, {p})")));
        }
        if w.last().is_some_and(|&(k, _)| k >= idx - 1) {
            return Err(Error::syntax(ln, col, "generator indices must increase strictly"));
        }
        w.push((idx - 1, e));
    }
    Ok(w)
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 8] = ["c2", "c4", "c2xc2", "c8", "d8", "q8", "heis3", "jm14_f39"];

pub fn builtin_source(name: &str) -> Result<&'static str> {
    Ok(match name {
        "c2" => "pgroup\np 2\ngens 1\n",
        "c4" => "pgroup\np 2\ngens 2\npow g1 = g2\n",
        "c2xc2" => "pgroup\np 2\ngens 2\n",
        "c8" => "pgroup\np 2\ngens 3\npow g1 = g2\npow g2 = g3\n",
        // g1 a reflection, g2 a rotation of order 4
        "d8" => "pgroup\np 2\ngens 3\npow g2 = g3\ncomm g2 g1 = g3\n",
        "q8" => "pgroup\np 2\ngens 3\npow g1 = g3\npow g2 = g3\ncomm g2 g1 = g3\n",
        "heis3" => "pgroup\np 3\ngens 3\ncomm g2 g1 = g3\n",
        "jm14_f39" => concat!(
            "pgroup\n",
            "p 2\n",
            "gens 7\n",
            "pow g1 = g4\n",
            "pow g2 = g5\n",
            "comm g2 g1 = g3\n",
            "comm g3 g1 = g6\n",
            "comm g3 g2 = g7\n",
            "comm g4 g2 = g6\n",
            "comm g5 g1 = g7\n",
        ),
        other => return Err(Error::UnknownBuiltin(other.to_string())),
    })
}

/// One of the built-in presentations listed in [`BUILTIN_NAMES`].
pub fn builtin(name: &str) -> Result<PcPresentation> {
    parse_presentation(builtin_source(name)?)
}
