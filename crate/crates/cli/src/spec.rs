//! Group specifications on the command line:
//!
//! ```text
//! spec := "gamma:" INT | "gamma1:" INT | "image:" INT ":" PATH | "perm:" PATH
//! ```

use std::fmt;
use std::path::PathBuf;

use emsurf_core::{builtin_spec, CongruenceSpec, MatModN};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{text:?} at position {pos}: {msg}")]
pub struct SpecError {
    pub text: String,
    pub pos: usize,
    pub msg: String,
}

fn err(text: &str, pos: usize, msg: impl Into<String>) -> SpecError {
    SpecError {
        text: text.to_string(),
        pos,
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Gamma(u32),
    Gamma1(u32),
    Image { level: u32, path: PathBuf },
    Perm(PathBuf),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Gamma(n) => write!(f, "gamma:{n}"),
            GroupSpec::Gamma1(n) => write!(f, "gamma1:{n}"),
            GroupSpec::Image { level, path } => write!(f, "image:{level}:{}", path.display()),
            GroupSpec::Perm(path) => write!(f, "perm:{}", path.display()),
        }
    }
}

/// What a spec resolves to once files are read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolved {
    Congruence(CongruenceSpec),
    Permutation(PathBuf),
}

fn parse_level(text: &str, start: usize, digits: &str) -> Result<u32, SpecError> {
    if digits.is_empty() {
        return Err(err(text, start, "expected a level"));
    }
    if let Some(k) = digits.find(|c: char| !c.is_ascii_digit() && c != '-') {
        return Err(err(text, start + k, "expected an integer level"));
    }
    let n: i64 = digits
        .parse()
        .map_err(|_| err(text, start, "level out of range"))?;
    if n < 1 {
        return Err(err(
            text,
            start,
            format!("level must be at least 1, got {n}"),
        ));
    }
    u32::try_from(n).map_err(|_| err(text, start, "level out of range"))
}

fn existing(text: &str, start: usize, path: &str) -> Result<PathBuf, SpecError> {
    if path.is_empty() {
        return Err(err(text, start, "expected a file path"));
    }
    let p = PathBuf::from(path);
    if !p.exists() {
        return Err(err(text, start, format!("no such file: {path}")));
    }
    Ok(p)
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec, SpecError> {
    let text = text.trim();
    let Some(colon) = text.find(':') else {
        return Err(err(text, text.len(), "expected ':' after the family name"));
    };
    let (head, rest) = (&text[..colon], &text[colon + 1..]);
    let at = colon + 1;
    match head {
        "gamma" => Ok(GroupSpec::Gamma(parse_level(text, at, rest)?)),
        "gamma1" => Ok(GroupSpec::Gamma1(parse_level(text, at, rest)?)),
        "image" => {
            let Some(c2) = rest.find(':') else {
                return Err(err(text, text.len(), "expected image:N:PATH"));
            };
            let level = parse_level(text, at, &rest[..c2])?;
            let path = existing(text, at + c2 + 1, &rest[c2 + 1..])?;
            Ok(GroupSpec::Image { level, path })
        }
        "perm" => Ok(GroupSpec::Perm(existing(text, at, rest)?)),
        _ => Err(err(
            text,
            0,
            format!("unknown family {head:?} (expected gamma, gamma1, image or perm)"),
        )),
    }
}

/// Reads an `H`-generator file: integer quadruples `a b c d`, any
/// whitespace, `#` starts a comment.
pub fn parse_generator_file(contents: &str, level: u32) -> Result<Vec<MatModN>, String> {
    let mut nums = Vec::new();
    for (lineno, line) in contents.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            let x: i64 = tok
                .parse()
                .map_err(|_| format!("line {}: not an integer: {tok:?}", lineno + 1))?;
            nums.push(x);
        }
    }
    if nums.len() % 4 != 0 {
        return Err(format!(
            "{} integers is not a whole number of 2x2 matrices",
            nums.len()
        ));
    }
    nums.chunks(4)
        .map(|q| MatModN::new(q[0], q[1], q[2], q[3], level).map_err(|e| e.to_string()))
        .collect()
}

impl GroupSpec {
    pub fn resolve(&self) -> crate::error::Result<Resolved> {
        let label = self.to_string();
        match self {
            GroupSpec::Gamma(n) => Ok(Resolved::Congruence(builtin_spec("gamma", i64::from(*n))?)),
            GroupSpec::Gamma1(n) => {
                Ok(Resolved::Congruence(builtin_spec("gamma1", i64::from(*n))?))
            }
            GroupSpec::Image { level, path } => {
                let contents = std::fs::read_to_string(path)
                    .map_err(|e| crate::error::CliError::io(path, e))?;
                let gens = parse_generator_file(&contents, *level).map_err(|m| {
                    crate::error::CliError::Invalid(format!("{}: {m}", path.display()))
                })?;
                Ok(Resolved::Congruence(CongruenceSpec::new(
                    *level, gens, label,
                )?))
            }
            GroupSpec::Perm(path) => Ok(Resolved::Permutation(path.clone())),
        }
    }
}

/// Cache key for a congruence spec: level plus the generator list.
pub fn canonical_key(spec: &CongruenceSpec) -> String {
    let gens: Vec<String> = spec
        .generators
        .iter()
        .map(|g| format!("{} {} {} {}", g.a, g.b, g.c, g.d))
        .collect();
    format!("congruence:{}:[{}]", spec.level, gens.join(";"))
}
