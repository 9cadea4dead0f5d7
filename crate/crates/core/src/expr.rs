//! Symbolic set algebra over the zero sets `N_α`.

use std::fmt;

use crate::branch::{Branch, Registry};
use crate::error::{Error, Result};
use crate::point::{require_valid, Ambient, Point};

/// A set of points built from atoms `N_α`, singletons and the whole space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SetExpr {
    Whole,
    /// `N_α`: points whose coordinates at positions in `E_α` are all `∞`.
    Atom(Branch),
    Singleton(Point),
    Union(Vec<SetExpr>),
    /// The empty intersection is the whole space.
    Inter(Vec<SetExpr>),
    /// First operand minus every later one.
    Diff(Box<SetExpr>, Vec<SetExpr>),
}

impl SetExpr {
    pub fn empty() -> Self {
        SetExpr::Union(Vec::new())
    }

    pub fn atom(branch: &Branch) -> Self {
        SetExpr::Atom(branch.clone())
    }

    /// `⋂_{β ∈ branches} N_β`.
    pub fn inter_of<'a>(branches: impl IntoIterator<Item = &'a Branch>) -> Self {
        SetExpr::Inter(branches.into_iter().map(SetExpr::atom).collect())
    }

    /// `⋃_{β ∈ branches} N_β`.
    pub fn union_of<'a>(branches: impl IntoIterator<Item = &'a Branch>) -> Self {
        SetExpr::Union(branches.into_iter().map(SetExpr::atom).collect())
    }

    pub fn union(self, other: SetExpr) -> Self {
        SetExpr::Union(vec![self, other])
    }

    pub fn inter(self, other: SetExpr) -> Self {
        SetExpr::Inter(vec![self, other])
    }

    pub fn minus(self, other: SetExpr) -> Self {
        SetExpr::Diff(Box::new(self), vec![other])
    }

    /// Structural membership; validity of `p` is not checked.
    pub fn contains(&self, p: &Point) -> bool {
        match self {
            SetExpr::Whole => true,
            SetExpr::Atom(b) => !p.hits(b),
            SetExpr::Singleton(q) => p == q,
            SetExpr::Union(xs) => xs.iter().any(|x| x.contains(p)),
            SetExpr::Inter(xs) => xs.iter().all(|x| x.contains(p)),
            SetExpr::Diff(a, bs) => a.contains(p) && !bs.iter().any(|b| b.contains(p)),
        }
    }

    /// Distinct atoms in first-occurrence order.
    pub fn atoms(&self) -> Vec<Branch> {
        let mut out = Vec::new();
        self.walk(&mut |e| {
            if let SetExpr::Atom(b) = e {
                if !out.contains(b) {
                    out.push(b.clone());
                }
            }
        });
        out
    }

    /// Distinct singleton points in first-occurrence order.
    pub fn singletons(&self) -> Vec<Point> {
        let mut out = Vec::new();
        self.walk(&mut |e| {
            if let SetExpr::Singleton(p) = e {
                if !out.contains(p) {
                    out.push(p.clone());
                }
            }
        });
        out
    }

    pub fn has_singletons(&self) -> bool {
        let mut found = false;
        self.walk(&mut |e| found |= matches!(e, SetExpr::Singleton(_)));
        found
    }

    fn walk<'a>(&'a self, f: &mut impl FnMut(&'a SetExpr)) {
        f(self);
        match self {
            SetExpr::Union(xs) | SetExpr::Inter(xs) => xs.iter().for_each(|x| x.walk(f)),
            SetExpr::Diff(a, bs) => {
                a.walk(f);
                bs.iter().for_each(|b| b.walk(f));
            }
            _ => {}
        }
    }

    /// Syntactic closedness: built from closed leaves by finite unions and
    /// intersections. A difference is accepted only when it subtracts the
    /// whole space (and so is empty) or nothing.
    pub fn is_closed(&self) -> bool {
        match self {
            SetExpr::Whole | SetExpr::Atom(_) | SetExpr::Singleton(_) => true,
            SetExpr::Union(xs) | SetExpr::Inter(xs) => xs.iter().all(SetExpr::is_closed),
            SetExpr::Diff(a, bs) => {
                bs.contains(&SetExpr::Whole) || (bs.is_empty() && a.is_closed())
            }
        }
    }

    /// If the expression is a plain intersection of atoms (an A-form),
    /// returns the atoms.
    pub fn as_a_form(&self) -> Option<Vec<Branch>> {
        match self {
            SetExpr::Whole => Some(Vec::new()),
            SetExpr::Atom(b) => Some(vec![b.clone()]),
            SetExpr::Inter(xs) => {
                let mut out: Vec<Branch> = Vec::new();
                for x in xs {
                    for b in x.as_a_form()? {
                        if !out.contains(&b) {
                            out.push(b);
                        }
                    }
                }
                Some(out)
            }
            _ => None,
        }
    }

    /// Parses an s-expression. `N:<token>` resolves `token` against the
    /// registry (label or literal) when one is given, else as a literal.
    pub fn parse(s: &str, registry: Option<&Registry>) -> Result<SetExpr> {
        let tokens = tokenize(s)?;
        let mut pos = 0;
        let e = parse_tokens(&tokens, &mut pos, registry)?;
        if pos != tokens.len() {
            return Err(Error::Parse(format!("trailing input after expression in {s:?}")));
        }
        Ok(e)
    }
}

pub fn eval_setexpr(p: &Point, ambient: Ambient, e: &SetExpr) -> Result<bool> {
    require_valid(p, ambient)?;
    Ok(e.contains(p))
}

#[derive(Debug, PartialEq)]
enum Token {
    Open,
    Close,
    Word(String),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                out.push(Token::Open);
            }
            ')' => {
                chars.next();
                out.push(Token::Close);
            }
            '{' => {
                let end = s[i..]
                    .find('}')
                    .ok_or_else(|| Error::Parse(format!("unterminated point literal in {s:?}")))?;
                out.push(Token::Word(s[i..=i + end].to_string()));
                while chars.peek().is_some_and(|&(j, _)| j <= i + end) {
                    chars.next();
                }
            }
            _ => {
                let mut word = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == '{' {
                        break;
                    }
                    word.push(c);
                    chars.next();
                }
                out.push(Token::Word(word));
            }
        }
    }
    Ok(out)
}

fn parse_tokens(tokens: &[Token], pos: &mut usize, registry: Option<&Registry>) -> Result<SetExpr> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
    *pos += 1;
    match tok {
        Token::Close => Err(Error::Parse("unexpected ')'".into())),
        Token::Word(w) => parse_leaf(w, registry),
        Token::Open => {
            let head = match tokens.get(*pos) {
                Some(Token::Word(w)) => w.clone(),
                _ => return Err(Error::Parse("expected operator after '('".into())),
            };
            *pos += 1;
            let mut args = Vec::new();
            loop {
                match tokens.get(*pos) {
                    None => return Err(Error::Parse("missing ')'".into())),
                    Some(Token::Close) => {
                        *pos += 1;
                        break;
                    }
                    Some(_) => args.push(parse_tokens(tokens, pos, registry)?),
                }
            }
            match head.as_str() {
                "union" => Ok(SetExpr::Union(args)),
                "inter" => Ok(SetExpr::Inter(args)),
                "diff" => {
                    if args.is_empty() {
                        return Err(Error::Parse("diff needs at least one operand".into()));
                    }
                    let first = args.remove(0);
                    Ok(SetExpr::Diff(Box::new(first), args))
                }
                other => Err(Error::Parse(format!("unknown operator {other:?}"))),
            }
        }
    }
}

fn parse_leaf(word: &str, registry: Option<&Registry>) -> Result<SetExpr> {
    if word == "whole" {
        return Ok(SetExpr::Whole);
    }
    if word == "empty" {
        return Ok(SetExpr::empty());
    }
    if word.starts_with('{') {
        return Ok(SetExpr::Singleton(word.parse()?));
    }
    let token = word
        .strip_prefix("N:")
        .ok_or_else(|| Error::Parse(format!("unknown leaf {word:?}")))?;
    match registry {
        Some(reg) => reg
            .resolve(token)
            .map(|e| SetExpr::Atom(e.branch.clone()))
            .ok_or_else(|| Error::Registry(format!("unknown branch {token:?}"))),
        None => Ok(SetExpr::Atom(token.parse()?)),
    }
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, head: &str, xs: &[SetExpr]| {
            write!(f, "({head}")?;
            for x in xs {
                write!(f, " {x}")?;
            }
            f.write_str(")")
        };
        match self {
            SetExpr::Whole => f.write_str("whole"),
            SetExpr::Atom(b) => write!(f, "N:{b}"),
            SetExpr::Singleton(p) => write!(f, "{p}"),
            SetExpr::Union(xs) => list(f, "union", xs),
            SetExpr::Inter(xs) => list(f, "inter", xs),
            SetExpr::Diff(a, bs) => {
                write!(f, "(diff {a}")?;
                for b in bs {
                    write!(f, " {b}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl std::str::FromStr for SetExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SetExpr::parse(s, None)
    }
}

impl serde::Serialize for SetExpr {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for SetExpr {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        let e: SetExpr = s.parse().map_err(serde::de::Error::custom)?;
        if e.to_string() != s {
            return Err(serde::de::Error::custom(format!("expression {s:?} is not canonical")));
        }
        Ok(e)
    }
}
