//! Named groups: `cyclic:n`, `elab:p:k`, `dihedral:n`, `quaternion8`,
//! `unipotent:n:p`, `unipotent-bar:n:p`.
//!
//! Canonical generators:
//! - `cyclic:n`: the residue 1.
//! - `elab:p:k`: the standard basis vectors of `(Z/p)^k`.
//! - `dihedral:n` (order `2n`): the rotation by one step, then a reflection.
//! - `quaternion8`: `i`, then `j`.
//! - `unipotent:n:p`: the elementary transvections `E_{i,i+1}` of
//!   `U_{n+1}(F_p)`; `unipotent-bar` is the quotient by the center.

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::unipotent::build_unipotent;

/// Largest group order the named constructors will build.
pub const MAX_BUILTIN_ORDER: usize = 4096;

fn guard(order: u128) -> Result<()> {
    if order > MAX_BUILTIN_ORDER as u128 {
        Err(Error::SizeLimit(format!("group of order {order} exceeds {MAX_BUILTIN_ORDER}")))
    } else {
        Ok(())
    }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidGroup("cyclic group of order 0".into()));
    }
    guard(n as u128)?;
    let gens: Vec<usize> = if n == 1 { vec![] } else { vec![1] };
    Ok(FiniteGroup::close(0usize, &gens, |a, b| (a + b) % n).0)
}

pub fn elementary_abelian(p: u32, k: u32) -> Result<FiniteGroup> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    guard((p as u128).pow(k))?;
    let k = k as usize;
    let gens: Vec<Vec<u32>> = (0..k).map(|i| (0..k).map(|j| u32::from(i == j)).collect()).collect();
    Ok(FiniteGroup::close(vec![0u32; k], &gens, |a, b| {
        a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
    })
    .0)
}

/// Symmetries of a regular `n`-gon, order `2n`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidGroup("dihedral:0".into()));
    }
    guard(2 * n as u128)?;
    let gens = [(1 % n, false), (0, true)];
    Ok(FiniteGroup::close((0usize, false), &gens, |&(r1, f1), &(r2, f2)| {
        let r2 = if f1 { (n - r2) % n } else { r2 };
        ((r1 + r2) % n, f1 ^ f2)
    })
    .0)
}

pub fn quaternion8() -> FiniteGroup {
    // Hamilton product on (a, b, c, d) = a + bi + cj + dk.
    let mul = |x: &[i8; 4], y: &[i8; 4]| {
        [
            x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3],
            x[0] * y[1] + x[1] * y[0] + x[2] * y[3] - x[3] * y[2],
            x[0] * y[2] - x[1] * y[3] + x[2] * y[0] + x[3] * y[1],
            x[0] * y[3] + x[1] * y[2] - x[2] * y[1] + x[3] * y[0],
        ]
    };
    FiniteGroup::close([1, 0, 0, 0], &[[0, 1, 0, 0], [0, 0, 1, 0]], mul).0
}

fn parse_num<T: std::str::FromStr>(name: &str, s: &str) -> Result<T> {
    s.parse().map_err(|_| Error::UnknownGroup(name.to_string()))
}

/// Builds a group from its name, e.g. `cyclic:3` or `unipotent:3:2`.
pub fn builtin_group(name: &str) -> Result<FiniteGroup> {
    let parts: Vec<&str> = name.trim().split(':').collect();
    match parts.as_slice() {
        ["cyclic", n] => cyclic(parse_num(name, n)?),
        ["elab", p, k] => elementary_abelian(parse_num(name, p)?, parse_num(name, k)?),
        ["dihedral", n] => dihedral(parse_num(name, n)?),
        ["quaternion8"] => Ok(quaternion8()),
        ["unipotent", n, p] => Ok(build_unipotent(parse_num(name, n)?, parse_num(name, p)?, false)?
            .group()
            .as_ref()
            .clone()),
        ["unipotent-bar", n, p] => Ok(build_unipotent(parse_num(name, n)?, parse_num(name, p)?, true)?
            .group()
            .as_ref()
            .clone()),
        _ => Err(Error::UnknownGroup(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        for (name, order) in [
            ("cyclic:1", 1),
            ("cyclic:2", 2),
            ("cyclic:27", 27),
            ("elab:2:2", 4),
            ("elab:3:3", 27),
            ("dihedral:4", 8),
            ("dihedral:3", 6),
            ("quaternion8", 8),
            ("unipotent:2:2", 8),
            ("unipotent:3:2", 64),
            ("unipotent-bar:3:2", 32),
            ("unipotent:2:3", 27),
        ] {
            assert_eq!(builtin_group(name).unwrap().order(), order, "{name}");
        }
    }

    #[test]
    fn structure() {
        assert!(builtin_group("elab:2:2").unwrap().is_abelian());
        assert!(!builtin_group("dihedral:4").unwrap().is_abelian());
        let q = builtin_group("quaternion8").unwrap();
        // Q8 has a unique involution.
        assert_eq!((1..8).filter(|&g| q.mul(g, g) == 0).count(), 1);
        let d = builtin_group("dihedral:4").unwrap();
        assert_eq!((1..8).filter(|&g| d.mul(g, g) == 0).count(), 5);
    }

    #[test]
    fn rejects_bad_names() {
        assert!(matches!(builtin_group("cyclic"), Err(Error::UnknownGroup(_))));
        assert!(matches!(builtin_group("sym:3"), Err(Error::UnknownGroup(_))));
        assert!(matches!(builtin_group("elab:4:2"), Err(Error::NotPrime(4))));
        assert!(matches!(builtin_group("cyclic:100000"), Err(Error::SizeLimit(_))));
    }
}
