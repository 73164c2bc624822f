//! Brute-force oracles shared by the integration tests. None of these call
//! the engine routines they are used to check.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use cupres_core::cochain::GroupCohomology;
use cupres_core::massey::{find_triple_defining_system, CochainArray};
use cupres_core::{builtin_group, Character, Cochain, FiniteGroup, FpVector, Place};

pub fn arc(name: &str) -> Arc<FiniteGroup> {
    Arc::new(builtin_group(name).unwrap())
}

/// Every builtin group of order <= 16 (paired with p = 2) and <= 27
/// (paired with p = 3).
pub fn sweep() -> Vec<(String, u32)> {
    let mut names: Vec<String> = Vec::new();
    names.extend((1..=27).map(|n| format!("cyclic:{n}")));
    names.extend((1..=13).map(|n| format!("dihedral:{n}")));
    for q in [2u32, 3, 5, 7, 11, 13, 17, 19, 23] {
        let mut order = q;
        let mut k = 1;
        while order <= 27 {
            names.push(format!("elab:{q}:{k}"));
            k += 1;
            order *= q;
        }
    }
    for extra in ["quaternion8", "unipotent:2:2", "unipotent-bar:2:2", "unipotent:2:3", "unipotent-bar:2:3"] {
        names.push(extra.to_string());
    }
    let mut out = Vec::new();
    for (p, bound) in [(2u32, 16usize), (3, 27)] {
        for name in &names {
            if builtin_group(name).unwrap().order() <= bound {
                out.push((name.clone(), p));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Arithmetic oracles

fn is_prime_slow(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `a` with every square factor removed.
pub fn squarefree(a: i64) -> i64 {
    let mut n = a.abs();
    let mut out = a.signum();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e % 2 == 1 {
            out *= d;
        }
        d += 1;
    }
    out * n
}

fn val(x: i64, p: i64) -> u32 {
    if x == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    let mut y = x;
    while y % p == 0 {
        y /= p;
        v += 1;
    }
    v
}

/// Whether `z^2 = a x^2 + b y^2` has a nontrivial solution over `Q_v`, by
/// searching primitive solutions modulo powers of `p` and applying Hensel's
/// lemma.
pub fn form_solvable(a: i64, b: i64, v: Place) -> bool {
    let (a, b) = (squarefree(a), squarefree(b));
    match v {
        Place::Real => [(1, 0), (0, 1), (1, 1)].iter().any(|&(x, y)| a * x * x + b * y * y > 0),
        Place::Prime(p) => {
            let p = p as i64;
            let n = if p == 2 { 6 } else { 3 };
            let c = [a, b, -1];
            (0..3).any(|lead| lift_search(&c, p, n, lead))
        }
    }
}

/// Solutions with coordinate `lead` equal to 1 and earlier coordinates
/// divisible by `p`, lifted one `p`-adic digit at a time.
fn lift_search(c: &[i64; 3], p: i64, n: u32, lead: usize) -> bool {
    let mut level: Vec<[i64; 3]> = vec![[0; 3]];
    let mut modulus = 1i64;
    for k in 1..=n {
        let next_mod = modulus * p;
        let mut next = Vec::new();
        for base in &level {
            for d0 in 0..p {
                for d1 in 0..p {
                    for d2 in 0..p {
                        let digits = [d0, d1, d2];
                        let mut x = [0i64; 3];
                        let mut ok = true;
                        for i in 0..3 {
                            x[i] = base[i] + digits[i] * modulus;
                            if i == lead {
                                x[i] = 1;
                                ok &= digits[i] == 0;
                            } else if i < lead && k == 1 {
                                ok &= digits[i] == 0;
                            }
                        }
                        if !ok {
                            continue;
                        }
                        let f: i64 = (0..3).map(|i| c[i] * x[i] * x[i]).sum();
                        if f.rem_euclid(next_mod) != 0 {
                            continue;
                        }
                        let d = (0..3).map(|i| val(2 * c[i] * x[i], p)).min().unwrap();
                        if d != u32::MAX && 2 * d < k {
                            return true;
                        }
                        next.push(x);
                    }
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        level = next;
        modulus = next_mod;
    }
    false
}

/// Places where `(a, b)` can ramify: `inf`, 2 and the primes dividing `ab`.
pub fn support_of(a: i64, b: i64) -> Vec<Place> {
    let mut out = vec![Place::Real, Place::Prime(2)];
    for q in 3..=(a.abs().max(b.abs()) as u64) {
        if is_prime_slow(q) && (a % q as i64 == 0 || b % q as i64 == 0) {
            out.push(Place::Prime(q));
        }
    }
    out
}

/// `a` is a square in `Z/p^k` for the unit part, checked by enumeration.
pub fn is_square_mod(u: i64, m: i64) -> bool {
    (0..m).any(|x| (x * x - u).rem_euclid(m) == 0)
}

// ---------------------------------------------------------------------------
// Group oracles

/// `Hom(G, Z/p)` by brute force over generator images, extended along
/// words and checked on the full table.
pub fn all_homs(g: &Arc<FiniteGroup>, p: u32) -> Vec<Vec<u32>> {
    let gens = g.generators().to_vec();
    let n = g.order();
    let k = gens.len();
    let mut out = Vec::new();
    for code in 0..(p as usize).pow(k as u32) {
        let imgs: Vec<u32> = (0..k).map(|j| ((code / (p as usize).pow(j as u32)) % p as usize) as u32).collect();
        let mut f = vec![u32::MAX; n];
        f[0] = 0;
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for (j, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                if f[y] == u32::MAX {
                    f[y] = (f[x] + imgs[j]) % p;
                    queue.push(y);
                }
            }
        }
        let ok = (0..n).all(|a| (0..n).all(|b| f[g.mul(a, b)] == (f[a] + f[b]) % p));
        if ok {
            out.push(f);
        }
    }
    out.sort();
    out
}

/// `d` of a 1-cochain, straight from the formula.
pub fn d1(g: &FiniteGroup, p: u32, f: &[u32]) -> Vec<u32> {
    let n = g.order();
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            out.push((f[a] + f[b] + p - f[g.mul(a, b)]) % p);
        }
    }
    out
}

/// `(x ∪ y)(a, b) = x(a) y(b)`, straight from the formula.
pub fn cup11(p: u32, x: &[u32], y: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for &a in x {
        for &b in y {
            out.push(a * b % p);
        }
    }
    out
}

/// All 2-coboundaries, when `p^|G|` is small enough to enumerate.
pub fn all_coboundaries(g: &FiniteGroup, p: u32) -> Option<BTreeSet<Vec<u32>>> {
    let n = g.order();
    let total = (p as u64).checked_pow(n as u32)?;
    if total > 1 << 16 {
        return None;
    }
    let mut out = BTreeSet::new();
    for code in 0..total {
        let mut f = vec![0u32; n];
        let mut rest = code;
        for slot in f.iter_mut() {
            *slot = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        out.insert(d1(g, p, &f));
    }
    Some(out)
}

/// Every class `[c~_13]` over all defining systems on `(x1, x2, x3)`: the
/// engine supplies one `(c12, c23)`, which is checked here, and all others
/// are `(c12 + φ, c23 + ψ)` for 1-cocycles `φ, ψ` from [`all_homs`].
pub fn massey_set_brute(coh: &GroupCohomology, chis: [&Character; 3], z1: &[Vec<u32>]) -> Option<BTreeSet<Vec<u32>>> {
    let g = coh.group();
    let p = coh.p();
    let ds = find_triple_defining_system(coh, chis).unwrap()?;
    let [x1, x2, x3] = chis.map(|c| c.values().to_vec());
    let c12 = ds.entry(1, 2).unwrap().values().to_vec();
    let c23 = ds.entry(2, 3).unwrap().values().to_vec();
    let neg = |v: Vec<u32>| v.into_iter().map(|x| (p - x) % p).collect::<Vec<_>>();
    assert_eq!(d1(g, p, &c12), neg(cup11(p, &x1, &x2)), "engine c12 is not a defining entry");
    assert_eq!(d1(g, p, &c23), neg(cup11(p, &x2, &x3)), "engine c23 is not a defining entry");
    let n = g.order();
    let mut out = BTreeSet::new();
    let mut top = vec![0u32; n * n];
    for phi in z1 {
        let a: Vec<u32> = c12.iter().zip(phi).map(|(&u, &v)| (u + v) % p).collect();
        for psi in z1 {
            let b: Vec<u32> = c23.iter().zip(psi).map(|(&u, &v)| (u + v) % p).collect();
            // c~13 = -(x1 ∪ c23 + c12 ∪ x3)
            for s in 0..n {
                for t in 0..n {
                    let v = (x1[s] * b[t] + a[s] * x3[t]) % p;
                    top[s * n + t] = (p - v) % p;
                }
            }
            let z = Cochain::new(g.clone(), p, 2, &top.iter().map(|&v| v as i64).collect::<Vec<_>>()).unwrap();
            out.insert(coh.h2().coordinates_of_cocycle(&z).entries().to_vec());
        }
    }
    Some(out)
}

pub fn coords(v: &FpVector) -> Vec<u32> {
    v.entries().to_vec()
}

/// The array `c_ij` for a triple, with every entry present.
pub fn array_of(entries: &[((usize, usize), Cochain)]) -> CochainArray {
    entries.iter().cloned().collect()
}
