//! Claim files: one s-expression per claim, `;` starts a comment.

use zwork_core::{Registry, SetExpr};

use crate::usage;

#[derive(Clone, Debug, PartialEq)]
pub enum Claim {
    Subset(SetExpr, SetExpr),
    Equal(SetExpr, SetExpr),
    Empty(SetExpr),
}

impl std::fmt::Display for Claim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Claim::Subset(a, b) => write!(f, "(subset {a} {b})"),
            Claim::Equal(a, b) => write!(f, "(equal {a} {b})"),
            Claim::Empty(a) => write!(f, "(empty {a})"),
        }
    }
}

/// Splits `s` into top-level items: parenthesized groups, point literals
/// and bare words.
fn items(s: &str) -> anyhow::Result<Vec<&str>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        match c {
            b'(' => {
                let mut depth = 0usize;
                loop {
                    match bytes.get(i) {
                        None => return Err(usage(format!("unbalanced parentheses in {s:?}"))),
                        Some(b'(') => depth += 1,
                        Some(b')') => {
                            depth -= 1;
                            if depth == 0 {
                                i += 1;
                                break;
                            }
                        }
                        _ => {}
                    }
                    i += 1;
                }
            }
            b')' => return Err(usage(format!("unexpected ')' in {s:?}"))),
            b'{' => {
                i += s[i..].find('}').ok_or_else(|| usage(format!("unterminated point in {s:?}")))? + 1;
            }
            _ => {
                while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b'(' && bytes[i] != b')' {
                    i += 1;
                }
            }
        }
        out.push(&s[start..i]);
    }
    Ok(out)
}

pub fn parse_claims(text: &str, registry: &Registry) -> anyhow::Result<Vec<Claim>> {
    let stripped: String = text
        .lines()
        .map(|l| l.split(';').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join("\n");
    let expr = |s: &str| -> anyhow::Result<SetExpr> {
        Ok(SetExpr::parse(s, Some(registry)).or_else(|_| SetExpr::parse(s, None))?)
    };
    let mut claims = Vec::new();
    for form in items(&stripped)? {
        let inner = form
            .strip_prefix('(')
            .and_then(|f| f.strip_suffix(')'))
            .ok_or_else(|| usage(format!("claim {form:?} is not a parenthesized form")))?;
        let parts = items(inner)?;
        let claim = match parts.as_slice() {
            ["subset", a, b] => Claim::Subset(expr(a)?, expr(b)?),
            ["equal", a, b] => Claim::Equal(expr(a)?, expr(b)?),
            ["empty", a] => Claim::Empty(expr(a)?),
            _ => return Err(usage(format!("unknown claim {form:?}"))),
        };
        claims.push(claim);
    }
    if claims.is_empty() {
        return Err(usage("no claims found"));
    }
    Ok(claims)
}
