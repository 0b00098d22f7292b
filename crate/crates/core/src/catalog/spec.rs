use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::modular::is_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtraspecialKind {
    /// Odd `p`, exponent `p`.
    ExponentP,
    /// Odd `p`, exponent `p²`.
    ExponentP2,
    /// `p = 2`, central product of dihedral groups of order 8.
    TypeD,
    /// `p = 2`, `Q₈` centrally multiplied with dihedral groups of order 8.
    TypeQ,
}

/// A parsed group description. Order-valued families (dihedral, dicyclic,
/// quaternion, semidihedral, modular) take the order of the group, not the
/// size of a polygon.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    Abelian(Vec<usize>),
    Dihedral(usize),
    Dicyclic(usize),
    Quaternion(usize),
    Semidihedral(usize),
    Modular(usize),
    Symmetric(usize),
    Alternating(usize),
    Extraspecial {
        p: u64,
        n: usize,
        kind: ExtraspecialKind,
    },
    AlmostExtraspecial {
        p: u64,
        n: usize,
    },
    Product(Box<GroupSpec>, Box<GroupSpec>),
    CentralProduct(Box<GroupSpec>, Box<GroupSpec>),
    /// Generators as products of disjoint or overlapping cycles.
    Perm(Vec<Vec<Vec<usize>>>),
    File(PathBuf),
}

const FAMILIES: &[&str] = &[
    "cyclic",
    "abelian",
    "dihedral",
    "dicyclic",
    "quaternion",
    "semidihedral",
    "modular",
    "sym",
    "alt",
    "extraspecial",
    "almostextra",
    "product",
    "centralproduct",
    "perm",
    "file",
];

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidSpec(msg.into())
}

fn is_power_of_two(n: usize) -> bool {
    n.is_power_of_two()
}

impl GroupSpec {
    /// Checks family-specific parameter constraints.
    pub fn validate(&self) -> Result<()> {
        use GroupSpec::*;
        match self {
            Cyclic(n) if *n == 0 => Err(invalid("cyclic order must be at least 1")),
            Abelian(ds) if ds.is_empty() || ds.contains(&0) => {
                Err(invalid("abelian factors must be positive"))
            }
            Dihedral(n) if *n < 2 || n % 2 != 0 => {
                Err(invalid("dihedral order must be even and at least 2"))
            }
            Dicyclic(n) if *n < 8 || n % 4 != 0 => {
                Err(invalid("dicyclic order must be a multiple of 4, at least 8"))
            }
            Quaternion(n) if *n < 8 || !is_power_of_two(*n) => {
                Err(invalid("quaternion order must be a power of 2, at least 8"))
            }
            Semidihedral(n) | Modular(n) if *n < 16 || !is_power_of_two(*n) => Err(invalid(
                "semidihedral and modular orders must be powers of 2, at least 16",
            )),
            Symmetric(n) if *n == 0 => Err(invalid("sym degree must be at least 1")),
            Alternating(n) if *n < 3 => Err(invalid("alt degree must be at least 3")),
            Extraspecial { p, n, kind } => {
                if !is_prime(*p) || *n == 0 {
                    return Err(invalid("extraspecial needs a prime p and n >= 1"));
                }
                let odd_kind = matches!(kind, ExtraspecialKind::ExponentP | ExtraspecialKind::ExponentP2);
                if (*p == 2) == odd_kind {
                    return Err(invalid(
                        "use type=D|Q for p=2 and exp=p|p^2 for odd p",
                    ));
                }
                Ok(())
            }
            AlmostExtraspecial { p, n } if !is_prime(*p) || *n == 0 => {
                Err(invalid("almostextra needs a prime p and n >= 1"))
            }
            Product(a, b) | CentralProduct(a, b) => {
                a.validate()?;
                b.validate()
            }
            Perm(gens) => {
                for cycle in gens.iter().flatten() {
                    let mut c = cycle.clone();
                    c.sort_unstable();
                    c.dedup();
                    if c.len() != cycle.len() {
                        return Err(Error::InvalidPermutation(format!(
                            "repeated point in cycle {cycle:?}"
                        )));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Order of the described group, when it follows from the parameters
    /// alone (not for central products, `perm:` or `file:`).
    pub fn expected_order(&self) -> Option<usize> {
        use GroupSpec::*;
        let factorial = |n: usize| (1..=n).product::<usize>();
        match self {
            Cyclic(n) | Dihedral(n) | Dicyclic(n) | Quaternion(n) | Semidihedral(n) | Modular(n) => {
                Some(*n)
            }
            Abelian(ds) => Some(ds.iter().product()),
            Symmetric(n) => Some(factorial(*n)),
            Alternating(n) => Some(factorial(*n) / 2),
            Extraspecial { p, n, .. } => Some((*p as usize).pow(2 * *n as u32 + 1)),
            AlmostExtraspecial { p, n } => Some((*p as usize).pow(2 * *n as u32 + 2)),
            Product(a, b) => Some(a.expected_order()? * b.expected_order()?),
            CentralProduct(..) | Perm(_) | File(_) => None,
        }
    }

    pub fn family_name(&self) -> &'static str {
        use GroupSpec::*;
        match self {
            Cyclic(_) => "cyclic",
            Abelian(_) => "abelian",
            Dihedral(_) => "dihedral",
            Dicyclic(_) => "dicyclic",
            Quaternion(_) => "quaternion",
            Semidihedral(_) => "semidihedral",
            Modular(_) => "modular",
            Symmetric(_) => "sym",
            Alternating(_) => "alt",
            Extraspecial { .. } => "extraspecial",
            AlmostExtraspecial { .. } => "almostextra",
            Product(..) => "product",
            CentralProduct(..) => "centralproduct",
            Perm(_) => "perm",
            File(_) => "file",
        }
    }
}

/// Splits at top-level occurrences of `sep`, ignoring separators inside
/// brackets or parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Removes parentheses that enclose the whole expression.
fn strip_outer_parens(mut s: &str) -> &str {
    loop {
        s = s.trim();
        if !(s.starts_with('(') && s.ends_with(')')) {
            return s;
        }
        let mut depth = 0;
        for (i, c) in s.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if depth == 0 && i + 1 < s.len() {
                return s;
            }
        }
        s = &s[1..s.len() - 1];
    }
}

fn starts_with_family(s: &str) -> bool {
    let s = s.trim_start_matches('(').trim();
    s.split_once(':')
        .is_some_and(|(head, _)| FAMILIES.contains(&head.trim()))
}

/// Splits the argument of a binary constructor into its two operands.
/// Pieces that do not start with a family name (such as `n=1`) belong to
/// the preceding operand.
fn split_operands(body: &str, sep: char) -> Result<(GroupSpec, GroupSpec)> {
    let mut parts: Vec<String> = Vec::new();
    for piece in split_top(body, sep) {
        match parts.last_mut() {
            Some(last) if !starts_with_family(piece) => {
                last.push(sep);
                last.push_str(piece);
            }
            _ => parts.push(piece.to_string()),
        }
    }
    match parts.as_slice() {
        [a, b] => Ok((a.parse()?, b.parse()?)),
        _ => Err(invalid(format!(
            "expected two operands separated by '{sep}' in {body:?}"
        ))),
    }
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| invalid(format!("expected a positive integer, got {s:?}")))
}

fn parse_keyed(body: &str) -> Result<Vec<(String, String)>> {
    body.split(',')
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| invalid(format!("expected key=value, got {kv:?}")))
        })
        .collect()
}

fn lookup<'a>(kvs: &'a [(String, String)], key: &str) -> Option<&'a str> {
    kvs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

fn parse_cycles(gen: &str) -> Result<Vec<Vec<usize>>> {
    let gen = gen.trim();
    if gen.is_empty() {
        return Err(invalid("empty permutation generator"));
    }
    let mut cycles = Vec::new();
    let mut rest = gen;
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| invalid(format!("expected '(' in {gen:?}")))?;
        let close = open
            .find(')')
            .ok_or_else(|| invalid(format!("unbalanced parenthesis in {gen:?}")))?;
        let points: Vec<usize> = open[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(parse_usize)
            .collect::<Result<_>>()?;
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = open[close + 1..].trim_start();
    }
    Ok(cycles)
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = strip_outer_parens(s);
        let (family, body) = s
            .split_once(':')
            .ok_or_else(|| invalid(format!("expected <family>:<args>, got {s:?}")))?;
        let body = body.trim();
        let spec = match family.trim() {
            "cyclic" => GroupSpec::Cyclic(parse_usize(body)?),
            "dihedral" => GroupSpec::Dihedral(parse_usize(body)?),
            "dicyclic" => GroupSpec::Dicyclic(parse_usize(body)?),
            "quaternion" => GroupSpec::Quaternion(parse_usize(body)?),
            "semidihedral" => GroupSpec::Semidihedral(parse_usize(body)?),
            "modular" => GroupSpec::Modular(parse_usize(body)?),
            "sym" => GroupSpec::Symmetric(parse_usize(body)?),
            "alt" => GroupSpec::Alternating(parse_usize(body)?),
            "abelian" => {
                let inner = body
                    .strip_prefix('[')
                    .and_then(|b| b.strip_suffix(']'))
                    .ok_or_else(|| invalid("abelian expects [d1,d2,...]"))?;
                GroupSpec::Abelian(
                    inner
                        .split(',')
                        .map(parse_usize)
                        .collect::<Result<_>>()?,
                )
            }
            "extraspecial" => {
                let kvs = parse_keyed(body)?;
                let p = lookup(&kvs, "p").ok_or_else(|| invalid("extraspecial needs p="))?;
                let p = parse_usize(p)? as u64;
                let n = parse_usize(lookup(&kvs, "n").unwrap_or("1"))?;
                let kind = match (lookup(&kvs, "exp"), lookup(&kvs, "type")) {
                    (Some("p"), None) => ExtraspecialKind::ExponentP,
                    (Some("p^2") | Some("p2"), None) => ExtraspecialKind::ExponentP2,
                    (None, Some("D") | Some("d")) => ExtraspecialKind::TypeD,
                    (None, Some("Q") | Some("q")) => ExtraspecialKind::TypeQ,
                    (None, None) if p != 2 => ExtraspecialKind::ExponentP,
                    _ => {
                        return Err(invalid(
                            "extraspecial needs exp=p|p^2 (odd p) or type=D|Q (p=2)",
                        ))
                    }
                };
                GroupSpec::Extraspecial { p, n, kind }
            }
            "almostextra" => {
                let kvs = parse_keyed(body)?;
                let p = lookup(&kvs, "p").ok_or_else(|| invalid("almostextra needs p="))?;
                GroupSpec::AlmostExtraspecial {
                    p: parse_usize(p)? as u64,
                    n: parse_usize(lookup(&kvs, "n").unwrap_or("1"))?,
                }
            }
            "product" => {
                let (a, b) = split_operands(body, '*')?;
                GroupSpec::Product(Box::new(a), Box::new(b))
            }
            "centralproduct" => {
                let (a, b) = split_operands(body, ',')?;
                GroupSpec::CentralProduct(Box::new(a), Box::new(b))
            }
            "perm" => {
                let inner = body
                    .strip_prefix('[')
                    .and_then(|b| b.strip_suffix(']'))
                    .ok_or_else(|| invalid("perm expects [(..),(..)]"))?;
                let gens = if inner.trim().is_empty() {
                    Vec::new()
                } else {
                    split_top(inner, ',')
                        .into_iter()
                        .map(parse_cycles)
                        .collect::<Result<_>>()?
                };
                GroupSpec::Perm(gens)
            }
            "file" => GroupSpec::File(PathBuf::from(body)),
            other => return Err(invalid(format!("unknown group family {other:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn operand(f: &mut fmt::Formatter<'_>, s: &GroupSpec) -> fmt::Result {
    match s {
        GroupSpec::Product(..) | GroupSpec::CentralProduct(..) => write!(f, "({s})"),
        _ => write!(f, "{s}"),
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupSpec::*;
        match self {
            Cyclic(n) => write!(f, "cyclic:{n}"),
            Abelian(ds) => write!(
                f,
                "abelian:[{}]",
                ds.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
            ),
            Dihedral(n) => write!(f, "dihedral:{n}"),
            Dicyclic(n) => write!(f, "dicyclic:{n}"),
            Quaternion(n) => write!(f, "quaternion:{n}"),
            Semidihedral(n) => write!(f, "semidihedral:{n}"),
            Modular(n) => write!(f, "modular:{n}"),
            Symmetric(n) => write!(f, "sym:{n}"),
            Alternating(n) => write!(f, "alt:{n}"),
            Extraspecial { p, n, kind } => {
                let tail = match kind {
                    ExtraspecialKind::ExponentP => "exp=p",
                    ExtraspecialKind::ExponentP2 => "exp=p^2",
                    ExtraspecialKind::TypeD => "type=D",
                    ExtraspecialKind::TypeQ => "type=Q",
                };
                write!(f, "extraspecial:p={p},n={n},{tail}")
            }
            AlmostExtraspecial { p, n } => write!(f, "almostextra:p={p},n={n}"),
            Product(a, b) => {
                write!(f, "product:")?;
                operand(f, a)?;
                write!(f, "*")?;
                operand(f, b)
            }
            CentralProduct(a, b) => {
                write!(f, "centralproduct:")?;
                operand(f, a)?;
                write!(f, ",")?;
                operand(f, b)
            }
            Perm(gens) => {
                let gs: Vec<String> = gens
                    .iter()
                    .map(|cycles| {
                        if cycles.is_empty() {
                            "()".to_string()
                        } else {
                            cycles
                                .iter()
                                .map(|c| {
                                    let pts: Vec<String> = c.iter().map(usize::to_string).collect();
                                    format!("({})", pts.join(" "))
                                })
                                .collect()
                        }
                    })
                    .collect();
                write!(f, "perm:[{}]", gs.join(","))
            }
            File(p) => write!(f, "file:{}", p.display()),
        }
    }
}
