//! Text forms for posets, statistics and q-expressions.
//!
//! Families: `rect:a,b`, `sstair:n`, `rootA:n`, `rootB:n`, `rootD:n`, `dtd:n`, `E6`, `E7`,
//! `trap:a,b`, `vchain:n`, `file:path.json`.
//!
//! Statistics are signed sums of optionally weighted atoms, e.g. `2*file:0 - file:1 - 1/2*diag`.
//! Atoms: the named statistics (`ideal_card`, `antichain_card`, `file:k`, `pfiber:i`,
//! `nfiber:j`, `rankalt`, `diag`, `color:c`), rooks (`rook:i,j`, `rookA:i`, `rookB:i`,
//! `vrookB:i`, each with an `r`-prefixed reduced form such as `rrookA:i`), `halfrook:i,j`,
//! single terms `tin:x`, `tout:x`, `t:x`, `ind:x` where x is `i,j` or an element index,
//! and bare numbers.

use std::fs;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::families::*;
use crate::poly::{q_binomial, q_number, Polynomial};
use crate::poset::{Family, Poset, PosetJson};
use crate::ratfunc::RationalFunction;
use crate::scalar::{int, parse_rational, Rational};
use crate::statistics::{
    half_rook, named_statistic, rook_a, rook_b, rook_rect, rook_sstair, var_rook_b, StatKind,
    ToggleCombination,
};

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn ints<T: std::str::FromStr>(args: &str, n: usize, what: &str) -> Result<Vec<T>> {
    let v: Vec<T> = args
        .split(',')
        .map(|a| {
            a.trim()
                .parse()
                .map_err(|_| bad(format!("{what}: bad number {a:?}")))
        })
        .collect::<Result<_>>()?;
    if v.len() != n {
        return Err(bad(format!("{what} takes {n} argument(s)")));
    }
    Ok(v)
}

pub fn parse_family(spec: &str) -> Result<Poset> {
    let spec = spec.trim();
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let one = || ints::<usize>(args, 1, name).map(|v| v[0]);
    let two = || ints::<usize>(args, 2, name).map(|v| (v[0], v[1]));
    match name {
        "rect" => two().and_then(|(a, b)| rectangle(a, b)),
        "sstair" => one().and_then(shifted_staircase),
        "rootA" => one().and_then(root_poset_a),
        "rootB" => one().and_then(root_poset_b),
        "rootD" => one().and_then(root_poset_d),
        "dtd" => one().and_then(double_tailed_diamond),
        "E6" if args.is_empty() => Ok(minuscule_e6()),
        "E7" if args.is_empty() => Ok(minuscule_e7()),
        "trap" => two().and_then(|(a, b)| trapezoid(a, b)),
        "vchain" => one().and_then(chain_of_vs),
        "file" => {
            let j: PosetJson = serde_json::from_str(&fs::read_to_string(args)?)?;
            Poset::from_json(&j)
        }
        _ => Err(bad(format!("unknown family {spec:?}"))),
    }
}

fn element(p: &Poset, args: &str, what: &str) -> Result<usize> {
    if args.contains(',') {
        let v = ints::<i32>(args, 2, what)?;
        p.at(v[0], v[1])
            .ok_or(Error::CoordinateOutsidePoset(v[0], v[1]))
    } else {
        let x = ints::<usize>(args, 1, what)?[0];
        if x >= p.len() {
            return Err(Error::IndexOutOfRange {
                index: x,
                n: p.len(),
            });
        }
        Ok(x)
    }
}

fn atom(p: &Poset, text: &str) -> Result<ToggleCombination> {
    let n = p.len();
    if let Ok(c) = parse_rational(text) {
        return Ok(ToggleCombination::constant(n, c));
    }
    let (name, args) = text.split_once(':').unwrap_or((text, ""));
    let kind = |k: StatKind| named_statistic(p, &k);
    let one = || ints::<i32>(args, 1, name).map(|v| v[0]);
    let two = || ints::<i32>(args, 2, name).map(|v| (v[0], v[1]));
    let single = |f: fn(&mut ToggleCombination, usize)| -> Result<ToggleCombination> {
        let mut c = ToggleCombination::zero(n);
        f(&mut c, element(p, args, name)?);
        Ok(c)
    };
    let (reduced, base) = match name.strip_prefix('r') {
        Some(b @ ("rook" | "rookA" | "rookB" | "vrookB")) => (true, b),
        _ => (false, name),
    };
    match (base, args.is_empty()) {
        ("ideal_card", true) => kind(StatKind::IdealCard),
        ("antichain_card", true) => kind(StatKind::AntichainCard),
        ("rankalt", true) => kind(StatKind::RankAlternating),
        ("diag", true) => kind(StatKind::DiagAntichain),
        ("file", false) => kind(StatKind::File(one()?)),
        ("pfiber", false) => kind(StatKind::PosFiber(one()?)),
        ("nfiber", false) => kind(StatKind::NegFiber(one()?)),
        ("color", false) => kind(StatKind::ColorClass(ints::<u32>(args, 1, name)?[0])),
        ("rook", false) => {
            let (i, j) = two()?;
            match p.family() {
                Family::ShiftedStaircase { .. } => rook_sstair(p, i, j, reduced),
                _ => rook_rect(p, i, j, reduced),
            }
        }
        ("rookA", false) => rook_a(p, one()?, reduced),
        ("rookB", false) => rook_b(p, one()?, reduced),
        ("vrookB", false) => var_rook_b(p, one()?, reduced),
        ("halfrook", false) => two().and_then(|(i, j)| half_rook(p, i, j)),
        ("tin", false) => single(|c, x| c.t_in[x] = int(1)),
        ("tout", false) => single(|c, x| c.t_out[x] = int(1)),
        ("t", false) => single(|c, x| c.add_signed(x, &int(1))),
        ("ind", false) => single(|c, x| c.ind[x] = int(1)),
        _ => Err(bad(format!("unknown statistic {text:?}"))),
    }
}

/// Split on top-level `+`/`-`, keeping signs that belong to numbers (`file:-1`, `-1/2*diag`).
fn signed_terms(expr: &str) -> Result<Vec<(bool, String)>> {
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in expr.chars().filter(|c| !c.is_whitespace()) {
        let glued = cur.ends_with(':') || cur.ends_with(',');
        if (ch == '+' || ch == '-') && !glued {
            if !cur.is_empty() {
                terms.push((neg, std::mem::take(&mut cur)));
            } else if !terms.is_empty() || neg {
                return Err(bad(format!("dangling sign in {expr:?}")));
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(bad(format!("empty term in {expr:?}")));
    }
    terms.push((neg, cur));
    Ok(terms)
}

pub fn parse_statistic(p: &Poset, expr: &str) -> Result<ToggleCombination> {
    let mut total = ToggleCombination::zero(p.len());
    for (neg, term) in signed_terms(expr)? {
        let (coef, body) = match term.split_once('*') {
            Some((c, b)) => (parse_rational(c)?, b),
            None => (int(1), term.as_str()),
        };
        let c = if neg { -coef } else { coef };
        total = &total + &atom(p, body)?.scale(&c);
    }
    Ok(total)
}

/// Expressions in q: numbers, `q`, `+ - * / ^`, parentheses, `[n]`, `qbinom(n,k)`.
pub fn parse_q_expr(text: &str) -> Result<RationalFunction> {
    let mut parser = QParser {
        s: text.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
    };
    let v = parser.expr()?;
    if parser.pos != parser.s.len() {
        return Err(bad(format!("trailing input in {text:?}")));
    }
    Ok(v)
}

struct QParser {
    s: Vec<char>,
    pos: usize,
}

impl QParser {
    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        let hit = self.peek() == Some(c);
        self.pos += hit as usize;
        hit
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(bad(format!("expected {c:?} at position {}", self.pos)))
        }
    }

    fn natural(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.s[start..self.pos]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| bad(format!("expected a number at position {start}")))
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut v = self.term()?;
        loop {
            if self.eat('+') {
                v = v + self.term()?;
            } else if self.eat('-') {
                v = v - self.term()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut v = self.power()?;
        loop {
            if self.eat('*') {
                v = v * self.power()?;
            } else if self.eat('/') {
                let d = self.power()?;
                if d.is_zero() {
                    return Err(bad("division by zero"));
                }
                v = v / d;
            } else {
                return Ok(v);
            }
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        if self.eat('-') {
            return Ok(-self.power()?);
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let e = i32::try_from(self.natural()?).map_err(|_| bad("exponent too large"))?;
        if neg && base.is_zero() {
            return Err(bad("division by zero"));
        }
        Ok(base.pow(if neg { -e } else { e }))
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some('[') => {
                self.pos += 1;
                let n = self.natural()?;
                self.expect(']')?;
                Ok(q_number(n).into())
            }
            Some('q') if self.s[self.pos..].starts_with(&['q', 'b', 'i', 'n', 'o', 'm', '(']) => {
                self.pos += 7;
                let n = self.natural()?;
                self.expect(',')?;
                let k = self.natural()?;
                self.expect(')')?;
                Ok(q_binomial(n, k).unwrap_or_else(Polynomial::zero).into())
            }
            Some('q') => {
                self.pos += 1;
                Ok(RationalFunction::q())
            }
            Some(c) if c.is_ascii_digit() => {
                Ok(Rational::from_integer(self.natural()?.into()).into())
            }
            _ => Err(bad(format!("unexpected input at position {}", self.pos))),
        }
    }
}
