//! Acceptance checks, one line per criterion. Run with
//! `cargo test -p cupres-core --test acceptance`.

mod support;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cupres_core::brauer::{candidate_support, hilbert_symbol, splits_in_multiquadratic};
use cupres_core::cochain::GroupCohomology;
use cupres_core::cup_restriction::{has_property, lambda_image, CupResCache};
use cupres_core::group::kernel_of_characters;
use cupres_core::lgp::{decompose, decompose_biquadratic, realize_as_cup, verify_certificate};
use cupres_core::massey::{find_triple_defining_system, scan_vanishing, triple_massey_set};
use cupres_core::unipotent::{check_surjective, find_prescribed_hom, unipotent_group};
use cupres_core::{BrauerClass2, Character, Cochain, FpMatrix, FpVector, Place, SearchBounds};

use support::*;

type Outcome = Result<String, String>;

struct SweepEntry {
    name: String,
    coh: Arc<GroupCohomology>,
    elems: Vec<(FpVector, Character)>,
}

fn load_sweep() -> Vec<SweepEntry> {
    sweep()
        .into_iter()
        .map(|(name, p)| {
            let coh = Arc::new(GroupCohomology::new(&arc(&name), p).unwrap());
            let elems = coh.h1_elements();
            SweepEntry { name, coh, elems }
        })
        .collect()
}

fn label(e: &SweepEntry) -> String {
    format!("{} p={}", e.name, e.coh.p())
}

fn independent(p: u32, chis: &[&Character]) -> bool {
    let rows: Vec<Vec<i64>> = chis.iter().map(|c| c.values().iter().map(|&v| v as i64).collect()).collect();
    FpMatrix::from_rows(p, &rows).unwrap().rank() == chis.len()
}

fn squarefree_in(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let a = rng.gen_range(-bound..=bound);
        if a != 0 && squarefree(a) == a {
            return a;
        }
    }
}

fn random_class(rng: &mut ChaCha8Rng) -> BrauerClass2 {
    let k = rng.gen_range(1..=3);
    let pairs: Vec<(i128, i128)> = (0..k)
        .map(|_| {
            let mut e = || loop {
                let x: i128 = rng.gen_range(-50..=50);
                if x != 0 {
                    return x;
                }
            };
            (e(), e())
        })
        .collect();
    BrauerClass2::from_pairs(&pairs).unwrap()
}

fn c1_reciprocity() -> Outcome {
    let mut pairs = 0;
    for a in (-50i128..=50).filter(|&a| a != 0) {
        for b in (-50i128..=50).filter(|&b| b != 0) {
            let mut prod = 1i8;
            for v in candidate_support(&[a, b], 1000).unwrap() {
                prod *= hilbert_symbol(a, b, v).unwrap();
            }
            if prod != 1 {
                return Err(format!("product over places is -1 for ({a}, {b})"));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn c2_oracle() -> Outcome {
    let mut checks = 0;
    for a in (-30i64..=30).filter(|&a| a != 0) {
        for b in (-30i64..=30).filter(|&b| b != 0) {
            let mut places: BTreeSet<Place> = candidate_support(&[a as i128, b as i128], 1000).unwrap();
            places.extend(support_of(a, b));
            for v in places {
                let formula = hilbert_symbol(a as i128, b as i128, v).unwrap();
                let oracle = if form_solvable(a, b, v) { 1 } else { -1 };
                if formula != oracle {
                    return Err(format!("({a}, {b})_{v}: formula {formula}, oracle {oracle}"));
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} symbol evaluations"))
}

fn c3_decompose() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let bounds = SearchBounds::default();
    let (mut done, mut nontrivial) = (0, 0);
    while done < 200 {
        let r = rng.gen_range(1..=3);
        let a_list: Vec<i128> = (0..r).map(|_| squarefree_in(&mut rng, 50) as i128).collect();
        let c = random_class(&mut rng);
        if !splits_in_multiquadratic(&c, &a_list).unwrap() {
            continue;
        }
        let cert = decompose(&c, &a_list, &bounds).map_err(|e| format!("{:?} over {a_list:?}: {e}", c.pairs()))?;
        let check = verify_certificate(&cert, bounds.factor_bound);
        if !check.valid {
            return Err(format!("{:?} over {a_list:?}: {}", c.pairs(), check.reason.unwrap_or_default()));
        }
        done += 1;
        nontrivial += usize::from(!c.is_trivial());
    }
    Ok(format!("200/200 verified, {nontrivial} nontrivial"))
}

fn c4_biquadratic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let bounds = SearchBounds::default();
    let (mut done, mut nontrivial) = (0, 0);
    while done < 100 {
        let a1 = squarefree_in(&mut rng, 50) as i128;
        let a2 = squarefree_in(&mut rng, 50) as i128;
        let c = random_class(&mut rng);
        if !splits_in_multiquadratic(&c, &[a1, a2]).unwrap() {
            continue;
        }
        let cert = decompose_biquadratic(&c, a1, a2, &bounds).map_err(|e| format!("{:?} over ({a1}, {a2}): {e}", c.pairs()))?;
        if !verify_certificate(&cert, bounds.factor_bound).valid {
            return Err(format!("{:?} over ({a1}, {a2}) did not verify", c.pairs()));
        }
        done += 1;
        nontrivial += usize::from(!c.is_trivial());
    }
    Ok(format!("100/100 verified, {nontrivial} nontrivial"))
}

fn c5_realize() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let bounds = SearchBounds::default();
    let (mut done, mut nontrivial) = (0, 0);
    while done < 100 {
        let a = squarefree_in(&mut rng, 50) as i128;
        if a == 1 {
            continue;
        }
        let c = random_class(&mut rng);
        if !splits_in_multiquadratic(&c, &[a]).unwrap() {
            continue;
        }
        let x = realize_as_cup(c.local_invariants(), a, &bounds).map_err(|e| format!("{:?} with a = {a}: {e}", c.pairs()))?;
        let got = BrauerClass2::from_pairs(&[(a, x)]).unwrap();
        if got.local_invariants() != c.local_invariants() {
            return Err(format!("({a}, {x}) differs from {:?}", c.pairs()));
        }
        done += 1;
        nontrivial += usize::from(!c.is_trivial());
    }
    Ok(format!("100/100 verified, {nontrivial} nontrivial"))
}

fn c6_massey_sets(sweep: &[SweepEntry]) -> Outcome {
    let mut triples = 0usize;
    let mut defined = 0usize;
    for e in sweep {
        let coh = &e.coh;
        let z1 = all_homs(coh.group(), coh.p());
        if z1.len() != e.elems.len() {
            return Err(format!("{}: {} homomorphisms by enumeration, {} classes", label(e), z1.len(), e.elems.len()));
        }
        for (_, a) in &e.elems {
            for (_, b) in &e.elems {
                for (_, c) in &e.elems {
                    let chis = [a, b, c];
                    let coset = triple_massey_set(coh, chis).unwrap();
                    let brute = massey_set_brute(coh, chis, &z1);
                    let ok = match (&coset, &brute) {
                        (None, None) => true,
                        (Some(m), Some(s)) => {
                            let from_coset: BTreeSet<Vec<u32>> = m.elements().iter().map(coords).collect();
                            from_coset == *s
                        }
                        _ => false,
                    };
                    if !ok {
                        return Err(format!("{}: mismatch on {:?}", label(e), chis.map(|c| c.values().to_vec())));
                    }
                    triples += 1;
                    defined += usize::from(coset.is_some());
                }
            }
        }
    }
    Ok(format!("{} groups, {triples} triples, {defined} defined", sweep.len()))
}

fn c7_definedness(sweep: &[SweepEntry]) -> Outcome {
    let mut triples = 0usize;
    let mut brute_checked = 0usize;
    for e in sweep {
        let coh = &e.coh;
        let g = coh.group();
        let p = coh.p();
        let b2 = all_coboundaries(g, p);
        let zero = FpVector::zero(p, coh.h2().dim());
        let vanishes = |x: &Character, y: &Character| -> bool {
            let by_class = coh.cup_class(x, y).unwrap() == zero;
            if let Some(b2) = &b2 {
                let by_set = b2.contains(&cup11(p, x.values(), y.values()));
                assert_eq!(by_class, by_set, "{}: cup class disagrees with coboundary enumeration", label(e));
            }
            by_class
        };
        for (_, a) in &e.elems {
            for (_, b) in &e.elems {
                let ab = vanishes(a, b);
                for (_, c) in &e.elems {
                    let found = find_triple_defining_system(coh, [a, b, c]).unwrap().is_some();
                    if found != (ab && vanishes(b, c)) {
                        return Err(format!("{}: mismatch on {:?}", label(e), [a, b, c].map(|c| c.values().to_vec())));
                    }
                    triples += 1;
                }
            }
        }
        brute_checked += usize::from(b2.is_some());
    }
    Ok(format!("{triples} triples, {brute_checked} groups with enumerated coboundaries"))
}

/// The correspondence holds for every triple; surjectivity is only
/// expected when the characters are independent.
fn c8_unipotent(sweep: &[SweepEntry]) -> Outcome {
    let (mut triples, mut independent_triples) = (0usize, 0usize);
    let (mut found, mut onto) = (0usize, 0usize);
    for e in sweep {
        let coh = &e.coh;
        let g = coh.group();
        let p = coh.p();
        let u3 = unipotent_group(2, p, false).unwrap();
        let u4 = unipotent_group(3, p, false).unwrap();
        let mut onto_check = |hom: &cupres_core::GroupHom, u: &cupres_core::UnipotentGroup, indep: bool| -> Result<(), String> {
            found += 1;
            if !indep {
                return Ok(());
            }
            let s = check_surjective(hom, u).unwrap();
            if !(s.by_image && s.by_frattini) {
                return Err(format!("{}: homomorphism with independent characters is not onto ({s:?})", label(e)));
            }
            onto += 1;
            Ok(())
        };
        let m = e.elems.len();
        let mut pair_homs = vec![None; m * m];
        for i in 0..m {
            for j in 0..m {
                let chars = [e.elems[i].1.clone(), e.elems[j].1.clone()];
                let h = find_prescribed_hom(g, &chars, false).unwrap();
                if let Some(h) = &h {
                    onto_check(h, &u3, independent(p, &[&chars[0], &chars[1]]))?;
                }
                pair_homs[i * m + j] = Some(h.is_some());
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let [a, b, c] = [i, j, k].map(|t| &e.elems[t].1);
                    let tag = || format!("{}: {:?}", label(e), [a, b, c].map(|c| c.values().to_vec()));
                    let indep = independent(p, &[a, b, c]);
                    let set = triple_massey_set(coh, [a, b, c]).unwrap();
                    let u3_both = pair_homs[i * m + j] == Some(true) && pair_homs[j * m + k] == Some(true);
                    if set.is_some() != u3_both {
                        return Err(format!("{}: definedness disagrees with U3 searches", tag()));
                    }
                    let h = find_prescribed_hom(g, &[a.clone(), b.clone(), c.clone()], false).unwrap();
                    let vanishing = set.as_ref().is_some_and(|s| s.contains_zero());
                    if vanishing != h.is_some() {
                        return Err(format!("{}: vanishing disagrees with the U4 search", tag()));
                    }
                    if let Some(h) = &h {
                        onto_check(h, &u4, indep)?;
                    }
                    triples += 1;
                    independent_triples += usize::from(indep);
                }
            }
        }
    }
    Ok(format!(
        "{triples} triples ({independent_triples} independent), {found} homomorphisms found, {onto} checked onto"
    ))
}

fn c9_bridge(sweep: &[SweepEntry]) -> Outcome {
    let mut checked = 0usize;
    let mut premise = 0usize;
    for e in sweep {
        let cache = CupResCache::new(e.coh.clone());
        for (_, a) in &e.elems {
            for (_, c) in &e.elems {
                let holds = cache.has_property(&[a.clone(), c.clone()]).unwrap().holds;
                for (_, b) in &e.elems {
                    checked += 1;
                    if !holds {
                        continue;
                    }
                    let Some(set) = triple_massey_set(&e.coh, [a, b, c]).unwrap() else {
                        continue;
                    };
                    premise += 1;
                    if !set.contains_zero() {
                        return Err(format!("{}: counterexample {:?}", label(e), [a, b, c].map(|c| c.values().to_vec())));
                    }
                }
            }
        }
    }
    Ok(format!("{checked} triples, {premise} with both hypotheses, 0 counterexamples"))
}

fn c10_independence(sweep: &[SweepEntry]) -> Outcome {
    let mut comparisons = 0usize;
    for e in sweep {
        let coh = &e.coh;
        let p = coh.p();
        let g = coh.group();
        let unit = if p == 2 { 1 } else { p - 1 };
        for (_, x) in &e.elems {
            for (_, y) in &e.elems {
                let base = vec![x.clone(), y.clone()];
                let xy = x.add(y).unwrap();
                let variants = [
                    vec![x.clone(), xy.clone()],
                    vec![x.clone(), y.clone(), xy],
                    vec![y.clone(), x.scale(unit)],
                ];
                let k = kernel_of_characters(g, &base).unwrap();
                let v0 = has_property(coh, &base).unwrap();
                let l0 = lambda_image(coh, &base).unwrap();
                for list in &variants {
                    if kernel_of_characters(g, list).unwrap() != k {
                        return Err(format!("{}: equal spans with different kernels", label(e)));
                    }
                    let v = has_property(coh, list).unwrap();
                    let l = lambda_image(coh, list).unwrap();
                    if v.holds != v0.holds || v.dim_kernel != v0.dim_kernel || l != l0 {
                        return Err(format!("{}: verdicts differ for {:?}", label(e), [x, y].map(|c| c.values().to_vec())));
                    }
                    comparisons += 1;
                }
            }
        }
    }
    Ok(format!("{comparisons} list comparisons"))
}

fn c11_singleton(sweep: &[SweepEntry]) -> Outcome {
    let e = sweep.iter().find(|e| e.name == "cyclic:3" && e.coh.p() == 3).ok_or("Z/3 missing from the sweep")?;
    let coh = &e.coh;
    let chi = &coh.h1().characters()[0];
    let z1 = all_homs(coh.group(), 3);
    let set = massey_set_brute(coh, [chi, chi, chi], &z1).ok_or("<x,x,x> is not defined")?;
    if set.len() != 1 {
        return Err(format!("expected a singleton, enumerated {} classes", set.len()));
    }
    if set.iter().next().unwrap().iter().all(|&v| v == 0) {
        return Err("the singleton is zero".into());
    }
    let report = scan_vanishing(coh).unwrap();
    let mut expected: Vec<[Vec<u32>; 3]> = Vec::new();
    for a in 1..3 {
        for b in 1..3 {
            for c in 1..3 {
                expected.push([vec![a], vec![b], vec![c]]);
            }
        }
    }
    let mut got = report.witnesses.clone();
    got.sort();
    if got != expected {
        return Err(format!("witnesses {got:?}"));
    }
    Ok("singleton, nonzero; witnesses are the 8 triples of nonzero multiples".into())
}

fn random_cochain(rng: &mut ChaCha8Rng, g: &Arc<cupres_core::FiniteGroup>, p: u32, degree: usize) -> Cochain {
    let len = g.order().pow(degree as u32);
    let values: Vec<i64> = (0..len).map(|_| rng.gen_range(0..p as i64)).collect();
    Cochain::new(g.clone(), p, degree, &values).unwrap()
}

fn c12_dga(sweep: &[SweepEntry]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut pairs = 0usize;
    // Degree pairs with total degree at most 2, so every term stays in
    // degree <= 3.
    let shapes = [(0, 0), (0, 1), (1, 0), (1, 1), (0, 2), (2, 0)];
    for e in sweep {
        let g = e.coh.group();
        let p = e.coh.p();
        let sign = |deg: usize, c: Cochain| if deg % 2 == 1 { c.neg() } else { c };
        for _ in 0..1000 {
            let &(da, db) = shapes.choose(&mut rng).unwrap();
            let a = random_cochain(&mut rng, g, p, da);
            let b = random_cochain(&mut rng, g, p, db);
            for x in [&a, &b] {
                if x.degree() < 2 && !x.differential().unwrap().differential().unwrap().is_zero() {
                    return Err(format!("{}: dd != 0 in degree {}", label(e), x.degree()));
                }
            }
            let lhs = a.cup(&b).unwrap().differential().unwrap();
            let rhs = a
                .differential()
                .unwrap()
                .cup(&b)
                .unwrap()
                .add(&sign(da, a.cup(&b.differential().unwrap()).unwrap()))
                .unwrap();
            if lhs != rhs {
                return Err(format!("{}: Leibniz fails in degrees ({da}, {db})", label(e)));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs over {} groups", sweep.len()))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let sweep = load_sweep();
    println!("sweep of {} groups loaded in {:.1?}", sweep.len(), started.elapsed());
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("Hilbert reciprocity", Box::new(c1_reciprocity)),
        ("symbols agree with the quadratic-form oracle", Box::new(c2_oracle)),
        ("decompositions verify", Box::new(c3_decompose)),
        ("biquadratic decompositions verify", Box::new(c4_biquadratic)),
        ("single cup products realize split classes", Box::new(c5_realize)),
        ("Massey cosets match enumeration", Box::new(|| c6_massey_sets(&sweep))),
        ("definedness iff both cups vanish", Box::new(|| c7_definedness(&sweep))),
        ("unipotent dictionary", Box::new(|| c8_unipotent(&sweep))),
        ("cup-restriction forces vanishing", Box::new(|| c9_bridge(&sweep))),
        ("property depends only on the subgroup", Box::new(|| c10_independence(&sweep))),
        ("Z/3 triple product is a nonzero singleton", Box::new(|| c11_singleton(&sweep))),
        ("DGA identities", Box::new(|| c12_dga(&sweep))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1?}", criteria.len() - failed, criteria.len(), started.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
