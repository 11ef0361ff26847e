//! Group specification grammar.
//!
//! Accepted forms:
//! - `C<n>`, `Dih<n>`, `S<n>`, `A<n>` for the standard families,
//! - products of those joined with `x`, e.g. `C6xS3`,
//! - explicit generators: `perm: (0 1 2), (0 1) deg 3` (one permutation per
//!   comma-separated entry, each a juxtaposition of cycles, `()` allowed for
//!   the identity).

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

const MAX_DEGREE: usize = u16::MAX as usize;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Parse a spec string and enumerate the group under `cap`.
pub fn group_from_spec(spec: &str, cap: u64) -> Result<FiniteGroup> {
    let label = normalize_label(spec);
    if label.is_empty() {
        return Err(parse_err("empty group spec"));
    }
    let (gens, degree) = generators_from_spec(&label)?;
    FiniteGroup::from_generators(label, gens, degree, cap)
}

/// Normalized label: trimmed, inner whitespace runs collapsed to one space.
pub fn normalize_label(spec: &str) -> String {
    spec.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Generators and degree for a spec, without enumerating.
pub fn generators_from_spec(spec: &str) -> Result<(Vec<Permutation>, usize)> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("perm:") {
        return parse_perm_spec(rest);
    }
    let factors: Vec<&str> = spec.split('x').map(str::trim).collect();
    if factors.iter().any(|f| f.is_empty()) {
        return Err(parse_err(format!("malformed product in spec '{spec}'")));
    }
    let parts: Vec<(Vec<Permutation>, usize)> = factors
        .iter()
        .map(|f| family_generators(f))
        .collect::<Result<_>>()?;
    let total: usize = parts.iter().map(|(_, d)| d).sum();
    if total > MAX_DEGREE {
        return Err(parse_err(format!("total degree {total} exceeds {MAX_DEGREE}")));
    }
    let mut gens = Vec::new();
    let mut offset = 0;
    for (part_gens, d) in parts {
        for g in part_gens {
            gens.push(g.shift(offset, total));
        }
        offset += d;
    }
    Ok((gens, total))
}

/// Generators for one named family term.
fn family_generators(term: &str) -> Result<(Vec<Permutation>, usize)> {
    let split = term
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| parse_err(format!("missing parameter in '{term}'")))?;
    let (name, num) = term.split_at(split);
    let n: usize = num
        .parse()
        .map_err(|_| parse_err(format!("bad parameter '{num}' in '{term}'")))?;
    if n == 0 {
        return Err(parse_err(format!("parameter must be positive in '{term}'")));
    }
    if n > MAX_DEGREE / 2 {
        return Err(parse_err(format!("parameter {n} too large in '{term}'")));
    }
    let cyc = |deg: usize, cycles: &[Vec<u16>]| Permutation::from_cycles(deg, cycles);
    match name {
        "C" => {
            if n == 1 {
                Ok((vec![], 1))
            } else {
                Ok((vec![cyc(n, &[(0..n as u16).collect()])?], n))
            }
        }
        "Dih" => match n {
            1 => Ok((vec![cyc(2, &[vec![0, 1]])?], 2)),
            2 => Ok((vec![cyc(4, &[vec![0, 1]])?, cyc(4, &[vec![2, 3]])?], 4)),
            _ => {
                let rot = cyc(n, &[(0..n as u16).collect()])?;
                let images: Vec<u16> = (0..n).map(|i| ((n - i) % n) as u16).collect();
                let refl = Permutation::from_images(images)?;
                Ok((vec![rot, refl], n))
            }
        },
        "S" => {
            if n == 1 {
                Ok((vec![], 1))
            } else {
                Ok((
                    vec![cyc(n, &[vec![0, 1]])?, cyc(n, &[(0..n as u16).collect()])?],
                    n,
                ))
            }
        }
        "A" => match n {
            1 | 2 => Ok((vec![], n)),
            3 => Ok((vec![cyc(3, &[vec![0, 1, 2]])?], 3)),
            _ => {
                let three = cyc(n, &[vec![0, 1, 2]])?;
                let long = if n % 2 == 1 {
                    cyc(n, &[(0..n as u16).collect()])?
                } else {
                    cyc(n, &[(1..n as u16).collect()])?
                };
                Ok((vec![three, long], n))
            }
        },
        _ => Err(parse_err(format!("unknown family '{name}' in '{term}'"))),
    }
}

/// `(0 1 2), (0 1)(2 3) deg 4` (the `perm:` prefix already stripped).
fn parse_perm_spec(rest: &str) -> Result<(Vec<Permutation>, usize)> {
    let idx = rest
        .rfind("deg")
        .ok_or_else(|| parse_err("perm spec missing 'deg <n>'"))?;
    let (gen_part, deg_part) = rest.split_at(idx);
    let degree: usize = deg_part[3..]
        .trim()
        .parse()
        .map_err(|_| parse_err(format!("bad degree '{}'", deg_part[3..].trim())))?;
    if degree == 0 || degree > MAX_DEGREE {
        return Err(parse_err(format!("degree {degree} out of range")));
    }
    let mut gens = Vec::new();
    for chunk in gen_part.split(',') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            return Err(parse_err("empty generator in perm spec"));
        }
        gens.push(permutation_from_cycles_str(chunk, degree)?);
    }
    Ok((gens, degree))
}

/// Parse one permutation written as juxtaposed cycles, e.g. `(0 1)(2 3)`.
/// `()` denotes the identity.
pub fn permutation_from_cycles_str(s: &str, degree: usize) -> Result<Permutation> {
    let s = s.trim();
    if s.is_empty() {
        return Err(parse_err("empty cycle string"));
    }
    let mut cycles: Vec<Vec<u16>> = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        rest = rest.trim_start();
        if rest.is_empty() {
            break;
        }
        if !rest.starts_with('(') {
            return Err(parse_err(format!("expected '(' in cycle string '{s}'")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| parse_err(format!("unclosed cycle in '{s}'")))?;
        let inner = &rest[1..close];
        let mut cycle = Vec::new();
        for tok in inner.split_whitespace() {
            let p: u16 = tok
                .parse()
                .map_err(|_| parse_err(format!("bad point '{tok}' in '{s}'")))?;
            if p as usize >= degree {
                return Err(parse_err(format!(
                    "point {p} out of range for degree {degree}"
                )));
            }
            cycle.push(p);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = &rest[close + 1..];
    }
    Permutation::from_cycles(degree, &cycles)
}
