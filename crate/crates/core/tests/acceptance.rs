//! Acceptance criteria. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use dctfactor::{
    bb_c4, build_dct2, build_dct2_bar, build_dct4_bar, cheb_eval, closed_form_core_mults,
    dct2_zeros, lower, perm_p, ref_matrix, skew_zeros, ChebKind, OpCount, Rational, RefKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{inf_norm, max_abs, random_dyadic, zero_sorting_permutation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn op_counts() -> Outcome {
    let full = build_dct2(16).unwrap().op_count();
    let core16 = build_dct2_bar(16).unwrap().op_count();
    let core8 = build_dct2_bar(8).unwrap().op_count();
    let scaling = full.mults - core16.mults;
    ensure(full == OpCount::new(32, 81), || {
        format!("DCT-2(16) = {full}")
    })?;
    ensure(core16.mults == 17, || format!("core(16) = {core16}"))?;
    ensure(scaling == 15, || format!("scaling(16) = {scaling}"))?;
    ensure(core8.mults == 5, || format!("core(8) = {core8}"))?;
    Ok(format!(
        "DCT-2(16) = ({full}), core(16) mults = {}, scaling = {scaling}, core(8) mults = {}",
        core16.mults, core8.mults
    ))
}

fn oracle_equivalence() -> Outcome {
    let mut worst = [0.0f64; 3];
    for n in [1, 2, 4, 8, 16, 32, 64] {
        let d = build_dct2(n).unwrap().to_dense().unwrap();
        worst[0] = worst[0].max(d.max_abs_diff(&ref_matrix(RefKind::Dct2, n, None).unwrap()));
        let d = build_dct2_bar(n).unwrap().to_dense().unwrap();
        worst[1] = worst[1].max(d.max_abs_diff(&ref_matrix(RefKind::Dct2Bar, n, None).unwrap()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC0);
    for n in [1, 2, 4, 8, 16, 32] {
        for _ in 0..20 {
            let r = random_dyadic(&mut rng, 12);
            let d = build_dct4_bar(n, r).unwrap().to_dense().unwrap();
            let e = d.max_abs_diff(&ref_matrix(RefKind::Dct4Bar, n, Some(r)).unwrap());
            worst[2] = worst[2].max(e);
        }
    }
    let msg = format!(
        "max |diff|: DCT2 {:.2e}, DCT2BAR {:.2e}, DCT4BAR(r) {:.2e} (tol 1e-10)",
        worst[0], worst[1], worst[2]
    );
    ensure(worst.iter().all(|&w| w <= 1e-10), || msg.clone())?;
    Ok(msg)
}

fn building_block_cost() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC1);
    for m in [1u64, 2, 4, 8, 16] {
        for _ in 0..10 {
            let r = random_dyadic(&mut rng, 12);
            let c = bb_c4(2 * m as usize, r).unwrap().op_count();
            ensure(c == OpCount::new(m, 3 * m), || {
                format!("m = {m}, r = {r}: {c}")
            })?;
        }
    }
    Ok("op_count(BB(2m, r)) = (m, 3m) for m in {1,2,4,8,16}".into())
}

fn product_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC2);
    let mut worst = 0.0f64;
    for n in [1usize, 2, 4, 8] {
        for _ in 0..1000 {
            let x: f64 = rng.random_range(-1.0..=1.0);
            let r = random_dyadic(&mut rng, 16);
            let t_n = cheb_eval(ChebKind::First, n, x);
            let lhs = 2.0 * cheb_eval(ChebKind::First, 2 * n, x) - 2.0 * r.cos_pi();
            let rhs = (2.0 * t_n - 2.0 * r.halved().cos_pi())
                * (2.0 * t_n - 2.0 * r.reflected_half().cos_pi());
            worst = worst.max((lhs - rhs).abs());
        }
    }
    let msg = format!("max deviation {worst:.2e} over 4000 points (tol 1e-10)");
    ensure(worst <= 1e-10, || msg.clone())?;
    Ok(msg)
}

fn congruences() -> Outcome {
    use ChebKind::Third as V;
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC3);
    let mut worst = 0.0f64;
    for n in 1..=32usize {
        let r = random_dyadic(&mut rng, 10);
        let c2 = 2.0 * (r.to_f64() * std::f64::consts::PI / 2.0).cos();
        let sets = [
            (dct2_zeros(n).unwrap(), 1.0, 0.0),
            (skew_zeros(n, Rational::HALF).unwrap(), -1.0, 0.0),
            (skew_zeros(n, r.halved()).unwrap(), -1.0, c2),
            (skew_zeros(n, r.reflected_half()).unwrap(), -1.0, -c2),
        ];
        for (zeros, sign, twist) in &sets {
            for &a in zeros.values() {
                for l in 0..n {
                    let want = sign * cheb_eval(V, n - l - 1, a) + twist * cheb_eval(V, l, a);
                    worst = worst.max((cheb_eval(V, n + l, a) - want).abs());
                }
            }
        }
    }
    let msg = format!("max deviation {worst:.2e} for n <= 32 (tol 1e-9)");
    ensure(worst <= 1e-9, || msg.clone())?;
    Ok(msg)
}

fn permutation_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC4);
    for two_n in [4, 8, 16, 32] {
        let p = perm_p(two_n).unwrap();
        for _ in 0..20 {
            let r = random_dyadic(&mut rng, 12);
            let sorted = zero_sorting_permutation(two_n / 2, r.to_f64());
            ensure(p.map() == sorted.as_slice(), || {
                format!("2n = {two_n}, r = {r}: {:?} vs {sorted:?}", p.map())
            })?;
        }
    }
    Ok("perm_p(2n) = zero-sorting permutation, identical for 20 r per size".into())
}

fn closed_form_count() -> Outcome {
    for k in 1..=10u32 {
        let structural = build_dct2_bar(1 << k).unwrap().op_count().mults;
        let closed = closed_form_core_mults(k);
        ensure(closed == structural, || {
            format!("k = {k}: closed form {closed} != structural {structural}")
        })?;
    }
    ensure(
        closed_form_core_mults(3) == 5 && closed_form_core_mults(4) == 17,
        || "anchors k=3 -> 5, k=4 -> 17 not met".into(),
    )?;
    let unshifted: u64 = (1..4u64).map(|p| (1 << p) * p).sum();
    Ok(format!(
        "sum p*2^(p-1) matches k = 1..10; the unshifted sum 2^p*p gives {unshifted} at k = 4, not 17"
    ))
}

fn lowering_fidelity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC5);
    let mut worst = 0.0f64;
    for k in 0..=6 {
        let n = 1usize << k;
        let nodes = [
            build_dct2(n).unwrap(),
            build_dct2_bar(n).unwrap(),
            build_dct4_bar(n, Rational::HALF).unwrap(),
        ];
        for node in &nodes {
            let prog = lower(node).unwrap();
            ensure(prog.op_count() == node.op_count(), || {
                format!("n = {n}: audit {} != {}", prog.op_count(), node.op_count())
            })?;
            for _ in 0..100 {
                let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
                let want = node.apply(&x).unwrap();
                let err =
                    max_abs(&prog.execute(&x), &want) / inf_norm(&want).max(f64::MIN_POSITIVE);
                worst = worst.max(err);
            }
        }
    }
    let msg = format!("max relative deviation {worst:.2e} (tol 1e-12), audits exact");
    ensure(worst <= 1e-12, || msg.clone())?;
    Ok(msg)
}

fn end_to_end() -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = ["dctfactor", "verify", "--max-log2", "6", "--trials", "100"];
    let code = dctfactor::cli::run(args, &mut &b""[..], &mut out, &mut err);
    let text = String::from_utf8(out).unwrap();
    ensure(code == 0, || {
        format!("exit code {code}: {}", String::from_utf8_lossy(&err))
    })?;
    let mut rows = 0;
    let mut worst_ratio = 0.0f64;
    for line in text.lines().filter(|l| l.starts_with("n=")) {
        let field = |key: &str| {
            line.split_whitespace()
                .find_map(|f| f.strip_prefix(key))
                .unwrap()
                .to_string()
        };
        let n: f64 = field("n=").parse().unwrap();
        let rel: f64 = field("max_rel_err=").parse().unwrap();
        ensure(rel <= 1e-12 * n, || format!("{line} exceeds 1e-12*n"))?;
        worst_ratio = worst_ratio.max(rel / (1e-12 * n));
        rows += 1;
    }
    ensure(rows == 14, || {
        format!("expected 14 report rows, got {rows}")
    })?;
    Ok(format!(
        "exit 0; worst max_rel_err / (1e-12 n) = {worst_ratio:.3}"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("op-count reproduction", op_counts, Duration::from_secs(1)),
        (
            "oracle equivalence",
            oracle_equivalence,
            Duration::from_secs(10),
        ),
        (
            "building-block cost law",
            building_block_cost,
            Duration::MAX,
        ),
        ("skew product identity", product_identity, Duration::MAX),
        ("congruence suite", congruences, Duration::MAX),
        ("permutation oracle", permutation_oracle, Duration::MAX),
        ("closed-form core count", closed_form_count, Duration::MAX),
        ("lowering fidelity", lowering_fidelity, Duration::MAX),
        ("end-to-end verify", end_to_end, Duration::from_secs(30)),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > budget {
            outcome = Err(format!("took {elapsed:?}, budget {budget:?}"));
        }
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} [{elapsed:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail} [{elapsed:.2?}]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
