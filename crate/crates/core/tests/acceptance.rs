//! Acceptance checks, one line per criterion.
//!
//! Runs without the libtest harness so every line is printed regardless of
//! outcome. Exits nonzero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quadop::algcheck::samples::{graded_gi_sample, random_associative, Layers};
use quadop::algcheck::{commutator, is_gi_associative, is_lie_admissible, jacobi_check, opposite};
use quadop::duality::{
    associative_with, dual_presentation, expected_dual_identities, perm_operad,
    verify_dual_identities, WordIdentity,
};
use quadop::exactla::{int, rat, Rational, Subspace};
use quadop::expansion::{dual_dim_oracle, Expander};
use quadop::koszul::koszul_necessary_check;
use quadop::perm::all_permutations;
use quadop::presentations::{is_sigma_stable, sigma_closure};
use quadop::treespace::{basis, condition_vector, free_dim};
use quadop::{Builtin, Exec, GSubgroup, OperadElement, Permutation, Presentation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn free_module_dims() -> Outcome {
    let (result, elapsed) = timed(|| {
        [(2, 2), (3, 12), (4, 120)]
            .into_iter()
            .map(|(n, want)| {
                let got = free_dim(n);
                let listed = basis(n).map(|b| b.len()).unwrap_or(0);
                ensure(
                    got == want && listed == want,
                    format!("F(E)({n}) = {got} / {listed} basis trees, expected {want}"),
                )
            })
            .collect::<Result<Vec<_>, _>>()
    });
    result?;
    ensure(
        elapsed < Duration::from_secs(1),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!("2, 12, 120 in {elapsed:?}"))
}

fn relation_module_dims() -> Outcome {
    let expected = [
        (Builtin::Ass, 6, 6),
        (Builtin::Vinb, 3, 9),
        (Builtin::PreLie, 3, 9),
        (Builtin::G4Ass, 3, 9),
        (Builtin::G5Ass, 2, 10),
        (Builtin::LieAdm, 1, 11),
    ];
    let mut parts = Vec::new();
    for (b, r, perp) in expected {
        let p = b.presentation();
        let d = dual_presentation(&p).map_err(|e| e.to_string())?;
        ensure(
            p.relations.dim() == r && d.relations.dim() == perp,
            format!(
                "{b}: dim R = {}, dim R^perp = {}, expected {r}, {perp}",
                p.relations.dim(),
                d.relations.dim()
            ),
        )?;
        parts.push(format!("{b} {r}/{perp}"));
    }
    Ok(parts.join(", "))
}

fn lie_admissible_generator() -> Outcome {
    let c = condition_vector(GSubgroup::G6);
    let u6 = Builtin::LieAdm.generator();
    let neg = u6.scale(&int(-1));
    ensure(
        c == u6 || c == neg,
        format!("condition vector {c} differs from {u6} up to sign"),
    )?;
    Ok(format!("{c}"))
}

fn lieadm_dual() -> Outcome {
    let d = dual_presentation(&Builtin::LieAdm.presentation()).map_err(|e| e.to_string())?;
    let expected = associative_with("expected", &[WordIdentity::Acb, WordIdentity::Bac]);
    ensure(
        d.relations == expected.relations,
        "dual relations differ from the closure of associativity, abc=acb, abc=bac",
    )?;
    ensure(
        d.relations.dim() == 11,
        format!("dimension {}", d.relations.dim()),
    )?;
    Ok("relations = closure{assoc, abc-acb, abc-bac}, dim 11".into())
}

fn dual_identity_suites() -> Outcome {
    for b in [Builtin::Vinb, Builtin::G4Ass, Builtin::G5Ass] {
        let r = verify_dual_identities(&b.presentation()).map_err(|e| e.to_string())?;
        let failed: Vec<_> = r
            .checks
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.name.clone())
            .collect();
        ensure(
            r.passed(),
            format!(
                "{b}: failed {failed:?}, closure matches {}",
                r.closure_matches
            ),
        )?;
    }
    let d = dual_presentation(&Builtin::PreLie.presentation()).map_err(|e| e.to_string())?;
    ensure(
        d.relations == perm_operad().relations,
        "prelie dual is not Perm",
    )?;
    Ok("vinb abc=bac, g4ass abc=cba, g5ass abc=bca=cab, prelie! = Perm".into())
}

fn quotient_dims() -> Outcome {
    let expected: [(Builtin, &[(usize, usize)]); 6] = [
        (Builtin::Ass, &[(3, 6), (4, 24)]),
        (Builtin::G4Ass, &[(3, 9), (4, 59)]),
        (Builtin::G5Ass, &[(3, 10), (4, 39)]),
        (Builtin::PreLie, &[(3, 9), (4, 64)]),
        (Builtin::Vinb, &[(3, 9), (4, 64)]),
        (Builtin::LieAdm, &[(3, 11)]),
    ];
    let expander = Expander::new(Exec::Parallel);
    let mut mismatches = Vec::new();
    let mut summary = Vec::new();
    for (b, want) in expected {
        let max = want.iter().map(|w| w.0).max().unwrap_or(3);
        let (table, elapsed) = timed(|| expander.dimension_table(&b.presentation(), max));
        let table = table.map_err(|e| e.to_string())?;
        ensure(
            elapsed < Duration::from_secs(300),
            format!("{b} took {elapsed:?}"),
        )?;
        for &(n, d) in want {
            let got = table.get(n).unwrap_or(usize::MAX);
            summary.push(format!("{b}({n})={got}"));
            if got != d {
                mismatches.push(format!("{b}({n}) = {got}, expected {d}"));
            }
        }
    }
    ensure(mismatches.is_empty(), mismatches.join("; "))?;
    Ok(summary.join(" "))
}

fn dual_dim_double_check() -> Outcome {
    let expander = Expander::new(Exec::Parallel);
    for b in Builtin::ALL {
        let dual = dual_presentation(&b.presentation()).map_err(|e| e.to_string())?;
        let ids = expected_dual_identities(b);
        for n in [3, 4] {
            let by_expansion = expander.operad_dim(&dual, n).map_err(|e| e.to_string())?;
            let by_words = dual_dim_oracle(&ids, n).map_err(|e| e.to_string())?;
            ensure(
                by_expansion == by_words,
                format!("{b}!({n}): expansion {by_expansion}, word oracle {by_words}"),
            )?;
        }
    }
    Ok("expansion = word oracle for all six duals at n = 3, 4".into())
}

fn koszul_test() -> Outcome {
    let mut problems = Vec::new();
    let mut summary = Vec::new();
    for b in [Builtin::Ass, Builtin::Vinb, Builtin::PreLie] {
        let r = koszul_necessary_check(&b.presentation(), 4, Exec::Parallel)
            .map_err(|e| e.to_string())?;
        summary.push(format!("{b}: {}", r.verdict));
        if !r.composition.is_identity() {
            problems.push(format!(
                "{b}: expected PASS through degree 4, got {}",
                r.verdict
            ));
        }
    }
    for (b, offset) in [(Builtin::G4Ass, 1i64), (Builtin::G5Ass, 41)] {
        let r = koszul_necessary_check(&b.presentation(), 4, Exec::Parallel)
            .map_err(|e| e.to_string())?;
        summary.push(format!("{b}: {}", r.verdict));
        let d = r.dual_dims.get(4).unwrap_or(0) as i64;
        let want = rat(-d - offset, 24);
        let c3 = r.composition.coeff(3);
        let c4 = r.composition.coeff(4);
        let fails_at_4 = matches!(&r.verdict, quadop::koszul::Verdict::Fail { degree: 4, .. });
        if !(fails_at_4 && c3.is_zero() && *c4 == want) {
            problems.push(format!(
                "{b}: expected FAIL at degree 4 with x^3 coefficient 0 and x^4 coefficient {want} (D = {d}), got {} with x^3 {c3}, x^4 {c4}",
                r.verdict
            ));
        }
    }
    ensure(problems.is_empty(), problems.join("; "))?;
    Ok(summary.join(", "))
}

const SAMPLES: usize = 500;

fn algebra_checker() -> Outcome {
    let (result, elapsed) = timed(|| -> Result<(), String> {
        let assoc = Exec::Parallel.map_range(SAMPLES, |k| {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + k as u64);
            let a = random_associative(&mut rng);
            let all_g = GSubgroup::ALL.iter().all(|&g| is_gi_associative(&a, g));
            let jac = jacobi_check(&commutator(&a)).unwrap_or(false);
            all_g && jac
        });
        let bad = assoc.iter().filter(|ok| !**ok).count();
        ensure(
            bad == 0,
            format!("{bad} associative samples failed a G_i check or Jacobi"),
        )?;

        for g in GSubgroup::ALL {
            let res = Exec::Parallel.map_range(SAMPLES, |k| {
                let mut rng = ChaCha8Rng::seed_from_u64(((g.index() as u64) << 32) + k as u64);
                let layers = Layers {
                    v1: rng.gen_range(1..=3),
                    v2: rng.gen_range(1..=2),
                    v3: rng.gen_range(1..=2),
                };
                let a = graded_gi_sample(g, layers, &mut rng);
                let own = is_gi_associative(&a, g);
                let lie_adm = is_lie_admissible(&a);
                let jac = !lie_adm || jacobi_check(&commutator(&a)).unwrap_or(false);
                let opp = g != GSubgroup::G3 || is_gi_associative(&opposite(&a), GSubgroup::G2);
                (own, lie_adm, jac, opp)
            });
            for (what, count) in [
                ("own condition", res.iter().filter(|r| !r.0).count()),
                ("Lie-admissibility", res.iter().filter(|r| !r.1).count()),
                (
                    "Jacobi of the commutator",
                    res.iter().filter(|r| !r.2).count(),
                ),
                ("opposite is G2", res.iter().filter(|r| !r.3).count()),
            ] {
                ensure(count == 0, format!("{g}: {count} samples failed {what}"))?;
            }
        }
        Ok(())
    });
    result?;
    ensure(
        elapsed < Duration::from_secs(60),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "{SAMPLES} samples per class, zero failures, {elapsed:?}"
    ))
}

fn random_element(rng: &mut ChaCha8Rng) -> OperadElement {
    let coords: Vec<Rational> = (0..free_dim(3))
        .map(|_| {
            if rng.gen_bool(0.4) {
                int(rng.gen_range(-3..=3))
            } else {
                int(0)
            }
        })
        .collect();
    OperadElement::from_coords(3, &quadop::exactla::SparseVec::from_dense(&coords))
}

fn induced(sigma: &Permutation, slot: usize, k: usize) -> Permutation {
    let n = sigma.arity();
    let target = sigma.apply(slot);
    let mut images = Vec::with_capacity(n + k - 1);
    for j in 1..=n {
        let s = sigma.apply(j);
        if j == slot {
            images.extend((0..k).map(|t| target + t));
        } else {
            images.push(if s > target { s + k - 1 } else { s });
        }
    }
    Permutation::new(images).expect("valid block permutation")
}

fn structural_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let form = quadop::duality::SignedForm::new();
    let e = |x: quadop::Error| x.to_string();
    // complements of 1000 random subspaces of F(E)(3)
    for case in 0..1000 {
        let k = rng.gen_range(0..=8);
        let gens: Vec<Vec<Rational>> = (0..k).map(|_| random_element(&mut rng).dense()).collect();
        let s = Subspace::span(&gens, 12).map_err(e)?;
        let perp = s.orthogonal_complement(form.diagonal()).map_err(e)?;
        ensure(
            s.dim() + perp.dim() == 12,
            format!("case {case}: dim formula"),
        )?;
        ensure(
            perp.orthogonal_complement(form.diagonal()).map_err(e)? == s,
            format!("case {case}: double complement"),
        )?;
    }
    // dual involution on builtins and 1000 random stable presentations
    let mut presentations: Vec<Presentation> =
        Builtin::ALL.iter().map(|b| b.presentation()).collect();
    for _ in 0..1000 {
        let k = rng.gen_range(0..=3);
        let gens: Vec<OperadElement> = (0..k).map(|_| random_element(&mut rng)).collect();
        let closure = sigma_closure(&gens).map_err(e)?;
        presentations.push(Presentation::new("random", closure).map_err(e)?);
    }
    for p in &presentations {
        let dd = dual_presentation(&dual_presentation(p).map_err(e)?).map_err(e)?;
        ensure(
            dd.relations == p.relations,
            format!("dual involution fails for {}", p.name),
        )?;
        ensure(
            is_sigma_stable(&dual_presentation(p).map_err(e)?.relations, 3),
            "unstable dual",
        )?;
    }
    // stability of relation modules and ideals
    let expander = Expander::new(Exec::Parallel);
    for b in Builtin::ALL {
        for p in [
            b.presentation(),
            dual_presentation(&b.presentation()).map_err(e)?,
        ] {
            let tower = expander.ideal_tower(&p, 4).map_err(e)?;
            for (n, ideal) in (3..).zip(&tower) {
                ensure(
                    is_sigma_stable(ideal, n),
                    format!("{}: R({n}) not stable", p.name),
                )?;
            }
        }
    }
    // equivariance and associativity of grafting, exhaustive for total arity <= 3
    let mut checked = 0usize;
    for n in 1..=3 {
        for k in 1..=(4 - n) {
            for a in basis(n).map_err(e)?.monomials() {
                for b in basis(k).map_err(e)?.monomials() {
                    for slot in 1..=n {
                        let g = a.graft(slot, b).map_err(e)?;
                        for sigma in all_permutations(n).map_err(e)? {
                            let lhs = a
                                .act(&sigma)
                                .map_err(e)?
                                .graft(sigma.apply(slot), b)
                                .map_err(e)?;
                            ensure(
                                lhs == g.act(&induced(&sigma, slot, k)).map_err(e)?,
                                "equivariance",
                            )?;
                            checked += 1;
                        }
                        for na in 1..=(4 - n - k + 1) {
                            for c in basis(na).map_err(e)?.monomials() {
                                for j in 1..=k {
                                    let left = g.graft(slot - 1 + j, c).map_err(e)?;
                                    let right =
                                        a.graft(slot, &b.graft(j, c).map_err(e)?).map_err(e)?;
                                    ensure(left == right, "sequential associativity")?;
                                    checked += 1;
                                }
                                for l in slot + 1..=n {
                                    let left = g.graft(l - 1 + k, c).map_err(e)?;
                                    let right =
                                        a.graft(l, c).map_err(e)?.graft(slot, b).map_err(e)?;
                                    ensure(left == right, "parallel associativity")?;
                                    checked += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "1000 complements, {} involutions, stable ideals through arity 4, {checked} grafting cases",
        presentations.len()
    ))
}

fn discrepancy_report() -> Outcome {
    let r = koszul_necessary_check(&Builtin::G4Ass.presentation(), 4, Exec::Parallel)
        .map_err(|e| e.to_string())?;
    let d = r.dual_dims.get(4).ok_or("no arity-4 dual dimension")?;
    let flag = "cannot equal (-1)^4*dim/4! for any dimension";
    let flagged = r
        .notes
        .iter()
        .any(|n| n.contains("-1/4") && n.contains(flag));
    ensure(flagged, "koszul report lacks the -1/4 flag")?;
    let out = quadop::cli::run(&["koszul".to_string(), "g4ass".to_string()]);
    ensure(
        out.code == 0 && out.stdout.contains(flag),
        "flag missing from CLI output",
    )?;
    Ok(format!("dim g4ass!(4) = {d}, printed -1/4 flagged"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("free module dimensions", free_module_dims),
        ("relation module dimensions", relation_module_dims),
        ("G6 condition vector equals u6", lie_admissible_generator),
        ("dual of lieadm", lieadm_dual),
        ("dual identity suites", dual_identity_suites),
        ("quotient dimensions", quotient_dims),
        ("dual dimension double check", dual_dim_double_check),
        ("Poincare series test", koszul_test),
        ("algebra checker properties", algebra_checker),
        ("structural property suites", structural_suites),
        ("g4ass dual series discrepancy", discrepancy_report),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2}  PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}  FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
