//! Named groups and the plain-text group file formats.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

fn cycle(degree: usize, points: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..degree).collect();
    for (k, &x) in points.iter().enumerate() {
        p[x] = points[(k + 1) % points.len()];
    }
    p
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidGroup("C0 is not a finite group".into()));
    }
    let pts: Vec<usize> = (0..n).collect();
    FiniteGroup::from_permutation_generators(n, &[cycle(n, &pts)])
}

/// The dihedral group of order `2n`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    match n {
        0 => Err(Error::InvalidGroup("D0 is not a finite group".into())),
        1 => cyclic(2),
        2 => FiniteGroup::from_permutation_generators(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]),
        _ => {
            let pts: Vec<usize> = (0..n).collect();
            let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
            FiniteGroup::from_permutation_generators(n, &[cycle(n, &pts), reflection])
        }
    }
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    match n {
        0 => Err(Error::InvalidGroup("S0 is not supported".into())),
        1 => FiniteGroup::from_permutation_generators(1, &[]),
        _ => {
            let pts: Vec<usize> = (0..n).collect();
            FiniteGroup::from_permutation_generators(n, &[cycle(n, &pts), cycle(n, &[0, 1])])
        }
    }
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    match n {
        0 => Err(Error::InvalidGroup("A0 is not supported".into())),
        1 | 2 => FiniteGroup::from_permutation_generators(n, &[]),
        3 => FiniteGroup::from_permutation_generators(3, &[cycle(3, &[0, 1, 2])]),
        _ => {
            let three = cycle(n, &[0, 1, 2]);
            let long = if n % 2 == 1 {
                cycle(n, &(0..n).collect::<Vec<_>>())
            } else {
                cycle(n, &(1..n).collect::<Vec<_>>())
            };
            FiniteGroup::from_permutation_generators(n, &[long, three])
        }
    }
}

/// The quaternion group, in its regular representation on `±1, ±i, ±j, ±k`.
pub fn quaternion() -> Result<FiniteGroup> {
    // points: 0=1 1=i 2=j 3=k 4=-1 5=-i 6=-j 7=-k; right multiplication by i and j
    let by_i = vec![1, 4, 7, 2, 5, 0, 3, 6];
    let by_j = vec![2, 3, 4, 5, 6, 7, 0, 1];
    FiniteGroup::from_permutation_generators(8, &[by_i, by_j])
}

/// Resolves `Cn` (n ≤ 100), `Dn` (order 2n), `Sn` and `An` (n ≤ 6), and `Q8`.
pub fn builtin(name: &str) -> Result<FiniteGroup> {
    let name = name.trim();
    if name == "Q8" {
        return quaternion();
    }
    let unknown = || Error::InvalidGroup(format!("unknown builtin group '{name}'"));
    let mut chars = name.chars();
    let family = chars.next().ok_or_else(unknown)?;
    let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
    let limit = |max: usize| {
        if n > max {
            Err(Error::InvalidGroup(format!(
                "builtin {family}n supports n <= {max}, got {n}"
            )))
        } else {
            Ok(())
        }
    };
    match family {
        'C' => limit(100).and_then(|_| cyclic(n)),
        'D' => dihedral(n),
        'S' => limit(6).and_then(|_| symmetric(n)),
        'A' => limit(6).and_then(|_| alternating(n)),
        _ => Err(unknown()),
    }
}

fn numbers(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse().map_err(|_| {
                Error::InvalidGroup(format!("line {lineno}: '{t}' is not a nonnegative integer"))
            })
        })
        .collect()
}

/// Reads `perm <degree>` followed by one generator per line, or `cayley <n>`
/// followed by `n` rows of the table. Blank lines and `#` comments are skipped.
pub fn parse_group_file(text: &str, max_order: usize) -> Result<FiniteGroup> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::InvalidGroup("empty group file".into()))?;
    let mut head = header.split_whitespace();
    let kind = head.next().unwrap_or("");
    let size: usize = head.next().and_then(|t| t.parse().ok()).ok_or_else(|| {
        Error::InvalidGroup(format!(
            "line {lineno}: expected 'perm <degree>' or 'cayley <n>'"
        ))
    })?;
    if head.next().is_some() {
        return Err(Error::InvalidGroup(format!(
            "line {lineno}: trailing tokens in header"
        )));
    }
    let rows = lines
        .map(|(i, l)| numbers(l, i))
        .collect::<Result<Vec<_>>>()?;
    match kind {
        "perm" => FiniteGroup::from_permutation_generators_with_limit(size, &rows, max_order),
        "cayley" => {
            if rows.len() != size {
                return Err(Error::InvalidGroup(format!(
                    "expected {size} table rows, found {}",
                    rows.len()
                )));
            }
            FiniteGroup::from_cayley_table_with_limit(&rows, max_order)
        }
        _ => Err(Error::InvalidGroup(format!(
            "line {lineno}: unknown group format '{kind}'"
        ))),
    }
}
