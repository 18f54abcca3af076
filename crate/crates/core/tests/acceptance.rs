//! Acceptance gate for the crate: nine criteria covering golden
//! evaluations, route agreement, polynomial residuals, the
//! free-parameter chain, the derivative chain, the modular-equation
//! suite, known-discrepancy handling, the precision ladder, and
//! structural properties.
//!
//! Each criterion is one test.  Every clause prints a
//! `criterion N: PASS/FAIL — detail` line (visible with
//! `cargo test -- --nocapture`, or automatically on failure); a test
//! panics at the end if any of its clauses failed, carrying all
//! clause lines in the panic message.

use rug::Float;

use rcf_core::cfrac::{fraction_direct, fraction_oracle, rr_derivative_fd};
use rcf_core::closed_forms::{
    fraction_closed, g_sextic_residual, m5_polyroot, p_from_r, p_polynomial, rr_deriv_closed,
    theorem22_chain, w_sextic_poly, x_polynomial,
};
use rcf_core::elliptic::{gamma, landen_4r, modulus_from_r};
use rcf_core::qseries;
use rcf_core::verifier::{catalog, run_check, run_suite};
use rcf_core::{CheckStatus, Expected, FractionKind, Nome, PrecisionContext};

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn nome_of(ctx: &PrecisionContext, r: &Float) -> Nome {
    let ln_q = -(ctx.pi() * ctx.real(r.sqrt_ref()));
    Nome::from_ln_q(ctx, ln_q).expect("grid r stays in nome range")
}

/// `10^-n`.
fn p10(ctx: &PrecisionContext, n: i32) -> Float {
    ctx.real(1u32) / ctx.powi(&ctx.real(10u32), n)
}

fn abs_diff(ctx: &PrecisionContext, a: &Float, b: &Float) -> Float {
    ctx.real(ctx.real(a - b).abs_ref())
}

/// Record one clause: print its line, collect it on failure.
fn clause(failures: &mut Vec<String>, criterion: &str, ok: bool, detail: &str) {
    let line = format!(
        "criterion {criterion}: {} — {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    println!("{line}");
    if !ok {
        failures.push(line);
    }
}

fn finish(failures: Vec<String>) {
    assert!(failures.is_empty(), "\n{}", failures.join("\n"));
}

#[test]
fn criterion_1_golden_evaluations() {
    let ctx = ctx();
    let mut failures = Vec::new();
    let tol60 = p10(&ctx, 60);
    let tol40 = p10(&ctx, 40);
    let sqrt5 = ctx.real(5u32).sqrt();
    let sqrt2 = ctx.real(2u32).sqrt();

    // R(e^(-2π)) = -1/2 - √5/2 + √((5+√5)/2).
    let r_val = fraction_direct(&ctx, FractionKind::R, &nome_of(&ctx, &ctx.real(4u32))).unwrap();
    let r_radical = ((ctx.real(5u32) + &sqrt5) / 2u32).sqrt()
        - ctx.rational(1, 2)
        - ctx.real(&sqrt5) / 2u32;
    let d = abs_diff(&ctx, &r_val, &r_radical);
    clause(
        &mut failures,
        "1",
        d <= tol60,
        &format!("R(e^(-2π)) matches its radical; |diff| = {:.3e}", d.to_f64()),
    );

    // H(e^(-π/2)) = √(1 + 2√2 - 2√(2+√2))   (r = 1/4).
    let h14 = fraction_direct(&ctx, FractionKind::H, &nome_of(&ctx, &ctx.rational(1, 4))).unwrap();
    let h14_radical = (ctx.real(1u32) + ctx.real(2u32) * &sqrt2
        - ctx.real(2u32) * ((ctx.real(2u32) + &sqrt2).sqrt()))
    .sqrt();
    let d = abs_diff(&ctx, &h14, &h14_radical);
    clause(
        &mut failures,
        "1",
        d <= tol60,
        &format!("H(e^(-π/2)) matches its radical; |diff| = {:.3e}", d.to_f64()),
    );

    // H(e^(-π√2/2)) = √(3 + 2√2 - 2√(4+3√2))   (r = 1/2).
    let h12 = fraction_direct(&ctx, FractionKind::H, &nome_of(&ctx, &ctx.rational(1, 2))).unwrap();
    let h12_radical = (ctx.real(3u32) + ctx.real(2u32) * &sqrt2
        - ctx.real(2u32) * ((ctx.real(4u32) + ctx.real(3u32) * &sqrt2).sqrt()))
    .sqrt();
    let d = abs_diff(&ctx, &h12, &h12_radical);
    clause(
        &mut failures,
        "1",
        d <= tol60,
        &format!(
            "H(e^(-π√2/2)) matches its radical; |diff| = {:.3e}",
            d.to_f64()
        ),
    );

    // Q(e^(-π√2)) = (√2-1)/√(2π) · Γ(9/8)/Γ(5/8)   (r = 2).
    let q_val = fraction_direct(&ctx, FractionKind::Q, &nome_of(&ctx, &ctx.real(2u32))).unwrap();
    let q_gamma = (ctx.real(&sqrt2) - 1u32) / ((ctx.real(2u32) * ctx.pi()).sqrt())
        * gamma(&ctx, &ctx.rational(9, 8)).unwrap()
        / gamma(&ctx, &ctx.rational(5, 8)).unwrap();
    let d = abs_diff(&ctx, &q_val, &q_gamma);
    clause(
        &mut failures,
        "1",
        d <= tol40,
        &format!(
            "Q(e^(-π√2)) matches its gamma form; |diff| = {:.3e}",
            d.to_f64()
        ),
    );

    // dR/dq at q = e^(-2π): 8√((2/5)(9+5√5-2√(50+22√5))) e^(2π) Γ(5/4)⁴/π³.
    let deriv = rr_deriv_closed(&ctx, &ctx.real(4u32)).unwrap();
    let inner = ctx.rational(2, 5)
        * (ctx.real(9u32) + ctx.real(5u32) * &sqrt5
            - ctx.real(2u32) * ((ctx.real(50u32) + ctx.real(22u32) * &sqrt5).sqrt()));
    let deriv_gamma = ctx.real(8u32) * inner.sqrt() * (ctx.real(2u32) * ctx.pi()).exp()
        * ctx.powi(&gamma(&ctx, &ctx.rational(5, 4)).unwrap(), 4)
        / ctx.powi(&ctx.pi(), 3);
    let d = abs_diff(&ctx, &deriv.eta_route, &deriv_gamma);
    clause(
        &mut failures,
        "1",
        d <= tol40,
        &format!(
            "R'(e^(-2π)) matches its Γ(5/4)⁴ form; |diff| = {:.3e}",
            d.to_f64()
        ),
    );

    // (3-T)³(3+T)³ / ((1-T)(1+T)) = 5832 at T = √(1-8V(e^(-π√2))³).
    let v = fraction_direct(&ctx, FractionKind::V, &nome_of(&ctx, &ctx.real(2u32))).unwrap();
    let t = (ctx.real(1u32) - ctx.real(8u32) * ctx.powi(&v, 3)).sqrt();
    let product = ctx.powi(&(ctx.real(3u32) - &t), 3) * ctx.powi(&(ctx.real(3u32) + &t), 3)
        / ((ctx.real(1u32) - &t) * (ctx.real(1u32) + &t));
    let d = abs_diff(&ctx, &product, &ctx.real(5832u32));
    clause(
        &mut failures,
        "1",
        d <= tol40,
        &format!("cubic product equals 5832; |diff| = {:.3e}", d.to_f64()),
    );

    finish(failures);
}

#[test]
fn criterion_2_route_agreement() {
    let ctx = ctx();
    let mut failures = Vec::new();
    let tol = p10(&ctx, 50);
    let grid = [(1i64, 4u64), (1, 2), (1, 1), (2, 1), (3, 1), (4, 1)];

    for kind in FractionKind::ALL {
        let mut worst = ctx.real(0u32);
        for (num, den) in grid {
            let r = ctx.rational(num, den);
            let nome = nome_of(&ctx, &r);
            let direct = fraction_direct(&ctx, kind, &nome).unwrap();
            let oracle = fraction_oracle(&ctx, kind, &nome).unwrap();
            let closed = fraction_closed(&ctx, kind, &r).unwrap();
            for (a, b) in [(&direct, &oracle), (&direct, &closed), (&oracle, &closed)] {
                let d = abs_diff(&ctx, a, b);
                if d > worst {
                    worst = d;
                }
            }
        }
        clause(
            &mut failures,
            "2",
            worst <= tol,
            &format!(
                "{}: direct/oracle/closed pairwise within 1e-50 on the grid; max |diff| = {:.3e}",
                kind.token(),
                worst.to_f64()
            ),
        );
    }

    finish(failures);
}

#[test]
fn criterion_3_polynomial_residuals() {
    let ctx = ctx();
    let mut failures = Vec::new();
    let tol = p10(&ctx, 45);

    for r_int in [1u32, 2] {
        let r = ctx.real(r_int);

        let m5 = m5_polyroot(&ctx, &r).unwrap();
        clause(
            &mut failures,
            "3",
            m5.residual <= tol,
            &format!(
                "multiplier sextic residual at r={r_int}: {:.3e}{}",
                m5.residual.to_f64(),
                if m5.tangent { " (double root)" } else { "" }
            ),
        );

        let pp = p_from_r(&ctx, &r).unwrap();
        let p_res = ctx.real(
            p_polynomial(&ctx, &pp.k)
                .eval(&ctx, &pp.p)
                .abs_ref(),
        );
        clause(
            &mut failures,
            "3",
            p_res <= tol,
            &format!("degree-12 p-polynomial residual at r={r_int}: {:.3e}", p_res.to_f64()),
        );

        // The x-polynomial under the repaired reading: coefficient
        // 15k²x⁴ and root x = (k/k₂₅)^(1/4) — as printed (bare 15x⁴,
        // root 1/√k₂₅) neither side vanishes.
        let x_res = ctx.real(
            x_polynomial(&ctx, &pp.k)
                .eval(&ctx, &pp.x)
                .abs_ref(),
        );
        clause(
            &mut failures,
            "3",
            x_res <= tol,
            &format!(
                "degree-12 x-polynomial residual (repaired reading) at r={r_int}: {:.3e}",
                x_res.to_f64()
            ),
        );

        let gs = g_sextic_residual(&ctx, &r).unwrap();
        let g_res = ctx.real(gs.residual.abs_ref());
        clause(
            &mut failures,
            "3",
            g_res <= tol,
            &format!("G-sextic residual at r={r_int}: {:.3e}", g_res.to_f64()),
        );

        let point = modulus_from_r(&ctx, &r).unwrap();
        let r25 = ctx.real(25u32) * &r;
        let point25 = modulus_from_r(&ctx, &r25).unwrap();
        let w = (ctx.real(point.k()) * point25.k()).sqrt();
        let w_res = ctx.real(
            w_sextic_poly(&ctx, point.k())
                .eval(&ctx, &w)
                .abs_ref(),
        );
        clause(
            &mut failures,
            "3",
            w_res <= tol,
            &format!("w-sextic residual at r={r_int}: {:.3e}", w_res.to_f64()),
        );
    }

    finish(failures);
}

#[test]
fn criterion_4_free_parameter_chain() {
    let ctx = ctx();
    let mut failures = Vec::new();
    let tol50 = p10(&ctx, 50);
    let tol40 = p10(&ctx, 40);

    let chain = theorem22_chain(&ctx, &ctx.rational(1, 3)).unwrap();

    // Printed radicals at L = 1/3:  w = (1/3)√(11/78), and with
    // σ = (13/11)^(1/6) - 4(11/13)^(1/6), u = σ/√6 + ½√(4 + ⅔σ²):
    // k₂₅ᵣ = w·u², k_r = w/u².
    let w_radical = ctx.rational(11, 78).sqrt() / 3u32;
    let sigma = ctx.pow_frac(&ctx.rational(13, 11), 1, 6).unwrap()
        - ctx.real(4u32) * ctx.pow_frac(&ctx.rational(11, 13), 1, 6).unwrap();
    let u = ctx.real(&sigma) / ctx.real(6u32).sqrt()
        + (ctx.real(4u32) + ctx.rational(2, 3) * ctx.powi(&sigma, 2)).sqrt() / 2u32;
    let u2 = ctx.powi(&u, 2);
    let k25_radical = ctx.real(&w_radical) * &u2;
    let k_radical = ctx.real(&w_radical) / &u2;

    for (name, got, expect) in [
        ("w", &chain.w, &w_radical),
        ("k_r", &chain.k, &k_radical),
        ("k_25r", &chain.k25, &k25_radical),
    ] {
        let d = abs_diff(&ctx, got, expect);
        clause(
            &mut failures,
            "4",
            d <= tol50,
            &format!("printed {name} radical reproduced; |diff| = {:.3e}", d.to_f64()),
        );
    }

    let direct = fraction_direct(&ctx, FractionKind::R, &nome_of(&ctx, &chain.r)).unwrap();
    let d = abs_diff(&ctx, &chain.value, &direct);
    clause(
        &mut failures,
        "4",
        d <= tol40,
        &format!(
            "R from the chain matches the direct fraction at induced r = {:.6}; |diff| = {:.3e}",
            chain.r.to_f64(),
            d.to_f64()
        ),
    );

    finish(failures);
}

#[test]
fn criterion_5_derivative_chain() {
    let ctx = ctx();
    let mut failures = Vec::new();
    let tol50 = p10(&ctx, 50);
    let tol_fd = p10(&ctx, 8);

    for r_int in [1u32, 4] {
        let r = ctx.real(r_int);
        let deriv = rr_deriv_closed(&ctx, &r).unwrap();
        let d = ctx.rel_diff(&deriv.eta_route, &deriv.elliptic_route);
        clause(
            &mut failures,
            "5",
            d <= tol50,
            &format!(
                "eta and elliptic derivative routes at r={r_int}: rel diff {:.3e}",
                d.to_f64()
            ),
        );

        let fd = rr_derivative_fd(&ctx, &nome_of(&ctx, &r)).unwrap();
        let d_fd = ctx.rel_diff(&deriv.eta_route, &fd);
        clause(
            &mut failures,
            "5",
            d_fd <= tol_fd,
            &format!(
                "closed derivative vs central difference at r={r_int}: rel diff {:.3e}",
                d_fd.to_f64()
            ),
        );
    }

    finish(failures);
}

#[test]
fn criterion_6_modular_equation_suite() {
    let ctx = ctx();
    let mut failures = Vec::new();
    let tol = p10(&ctx, 50);

    let ids = [
        "k25_modular_18",
        "h_thm33_59",
        "k9_modular_61",
        "corollary41_73",
        "duplication_74",
        "cubic_modular_76",
        "k81_prop43_77",
        "corollary42_78",
        "q_modular_thm53_87",
        "h_thm32",
        "h_corollary_58",
        "k_reflection_57_58",
    ];
    for id in ids {
        let results = run_check(&ctx, id).unwrap();
        let mut worst = ctx.real(0u32);
        let mut all_pass = true;
        for r in &results {
            if r.residual > worst {
                worst = ctx.real(&r.residual);
            }
            all_pass &= r.status == CheckStatus::Pass;
        }
        clause(
            &mut failures,
            "6",
            all_pass && worst <= tol,
            &format!(
                "{id}: {} grid points, max residual {:.3e}",
                results.len(),
                worst.to_f64()
            ),
        );
    }

    finish(failures);
}

#[test]
fn criterion_7_known_discrepancy_handling() {
    let ctx = ctx();
    let mut failures = Vec::new();

    let eval_a = run_check(&ctx, "cubic_eval_a").unwrap();
    clause(
        &mut failures,
        "7",
        eval_a.len() == 1 && eval_a[0].status == CheckStatus::KnownDiscrepancyConfirmed,
        &format!(
            "printed cubic radical (≈0.0954) vs computed V(e^(-π)) (≈0.3358) reported as {}; \
             residual {:.4}",
            eval_a[0].status.as_str(),
            eval_a[0].residual.to_f64()
        ),
    );

    // The discrepancy must not fail the suite as a whole.
    let report = run_suite(&ctx, None).unwrap();
    clause(
        &mut failures,
        "7",
        report.success() && report.count(CheckStatus::KnownDiscrepancyConfirmed) == 1,
        &format!(
            "full suite: {} results, {} failures, {} confirmed discrepancies",
            report.results.len(),
            report.count(CheckStatus::Fail),
            report.count(CheckStatus::KnownDiscrepancyConfirmed)
        ),
    );

    // The tested reading of the complement relation (squares on H) is
    // reported with its status.
    let eq60 = run_check(&ctx, "h_eq60").unwrap();
    let all_surprise = eq60
        .iter()
        .all(|r| r.status == CheckStatus::SurprisePass);
    clause(
        &mut failures,
        "7",
        !eq60.is_empty() && all_surprise,
        &format!(
            "√k' = (H²(q²)+2H(q²)-1)/(H²(q²)-2H(q²)-1) (squared reading) reported as {} on {} \
             grid points",
            eq60[0].status.as_str(),
            eq60.len()
        ),
    );

    finish(failures);
}

#[test]
fn criterion_8_precision_ladder() {
    let ctx256 = ctx();
    let ctx128 = PrecisionContext::new(128).unwrap();
    let mut failures = Vec::new();

    let report128 = run_suite(&ctx128, None).unwrap();
    let report256 = run_suite(&ctx256, None).unwrap();

    clause(
        &mut failures,
        "8",
        report128.results.len() == report256.results.len(),
        &format!(
            "both ladders ran the full catalog ({} vs {} results)",
            report128.results.len(),
            report256.results.len()
        ),
    );

    let mut status_mismatches = Vec::new();
    for (lo, hi) in report128.results.iter().zip(&report256.results) {
        assert_eq!((&lo.id, &lo.params), (&hi.id, &hi.params), "aligned reports");
        if lo.status != hi.status {
            status_mismatches.push(format!(
                "{} at {}: {} vs {}",
                lo.id,
                lo.params,
                lo.status.as_str(),
                hi.status.as_str()
            ));
        }
    }
    clause(
        &mut failures,
        "8",
        status_mismatches.is_empty(),
        &format!(
            "statuses identical at 128 and 256 bits{}",
            if status_mismatches.is_empty() {
                String::new()
            } else {
                format!(": mismatches {status_mismatches:?}")
            }
        ),
    );

    // Every expected-PASS residual shrinks by ≥ 2^60.  Residuals at the
    // measurement floor need the floor-aware reading: a 256-bit
    // residual of exactly 0 is fully shrunk, and where the 128-bit
    // residual is already exactly 0 (the compared routes rounded
    // identically) the requirement becomes that the 256-bit residual
    // sits ≥ 2^60 *below the 128-bit pass tolerance* — below anything
    // the coarser rung could resolve.
    let expectations: std::collections::HashMap<&str, Expected> = catalog()
        .unwrap()
        .iter()
        .map(|c| (c.id, c.expected))
        .collect();
    let threshold = ctx256.two_pow(60);
    let mut min_shrink: Option<f64> = None;
    let mut floor_cases = 0u32;
    let mut shrink_violations = Vec::new();
    for (lo, hi) in report128.results.iter().zip(&report256.results) {
        if expectations[lo.id.as_str()] != Expected::Pass {
            continue;
        }
        if hi.residual == 0u32 {
            continue;
        }
        if lo.residual == 0u32 {
            floor_cases += 1;
            let ceiling = ctx256.real(&lo.tolerance) / &threshold;
            if hi.residual > ceiling {
                shrink_violations.push(format!(
                    "{} at {}: 0 at 128 bits but {:.3e} at 256 bits exceeds tolerance/2^60",
                    lo.id,
                    lo.params,
                    hi.residual.to_f64()
                ));
            }
            continue;
        }
        let shrink = ctx256.real(&lo.residual) / &hi.residual;
        if shrink < threshold {
            shrink_violations.push(format!(
                "{} at {}: {:.3e} → {:.3e} (×{:.2e})",
                lo.id,
                lo.params,
                lo.residual.to_f64(),
                hi.residual.to_f64(),
                shrink.to_f64()
            ));
        }
        min_shrink = Some(match min_shrink {
            Some(m) => m.min(shrink.to_f64()),
            None => shrink.to_f64(),
        });
    }
    clause(
        &mut failures,
        "8",
        shrink_violations.is_empty(),
        &format!(
            "expected-PASS residuals shrink ≥ 2^60 from 128 to 256 bits; smallest measured \
             factor {:.3e} ({floor_cases} grid points already at the 128-bit zero floor){}",
            min_shrink.unwrap_or(f64::INFINITY),
            if shrink_violations.is_empty() {
                String::new()
            } else {
                format!("; violations {shrink_violations:?}")
            }
        ),
    );

    finish(failures);
}

#[test]
fn criterion_9_property_suite() {
    let ctx = ctx();
    let mut failures = Vec::new();
    let eps = ctx.eps();
    let grid = [(1i64, 4u64), (1, 2), (1, 1), (2, 1), (3, 1), (4, 1)];

    // Pythagorean pair.
    let mut worst = ctx.real(0u32);
    for (num, den) in grid {
        let point = modulus_from_r(&ctx, &ctx.rational(num, den)).unwrap();
        let resid = ctx.real(
            ctx.real(ctx.powi(point.k(), 2) + ctx.powi(point.kprime(), 2) - 1u32)
                .abs_ref(),
        );
        if resid > worst {
            worst = resid;
        }
    }
    clause(
        &mut failures,
        "9",
        worst <= eps,
        &format!("|k² + k'² - 1| ≤ eps on the grid; max {:.3e}", worst.to_f64()),
    );

    // Landen step: modulus at 4r equals the transformed modulus at r.
    let mut worst = ctx.real(0u32);
    for (num, den) in [(1i64, 4u64), (1, 2), (1, 1), (2, 1)] {
        let r = ctx.rational(num, den);
        let at_r = modulus_from_r(&ctx, &r).unwrap();
        let at_4r = modulus_from_r(&ctx, &(ctx.real(4u32) * &r)).unwrap();
        let stepped = landen_4r(&ctx, at_r.modulus()).unwrap();
        for d in [
            abs_diff(&ctx, at_4r.k(), stepped.k()),
            abs_diff(&ctx, at_4r.kprime(), stepped.kprime()),
        ] {
            if d > worst {
                worst = d;
            }
        }
    }
    let tol = ctx.real(100u32) * ctx.eps();
    clause(
        &mut failures,
        "9",
        worst <= tol,
        &format!(
            "Landen step reproduces the modulus at 4r; max |diff| = {:.3e}",
            worst.to_f64()
        ),
    );

    // Euler: Π(1+qⁿ) · (q; q²)_∞ = 1.
    let mut worst = ctx.real(0u32);
    for q in [ctx.rational(1, 10), ctx.rational(3, 10), (-ctx.pi()).exp()] {
        let q2 = ctx.powi(&q, 2);
        let product = qseries::phi_cap(&ctx, &q).unwrap()
            * qseries::qpoch(&ctx, &q, &q2, None).unwrap();
        let d = abs_diff(&ctx, &product, &ctx.real(1u32));
        if d > worst {
            worst = d;
        }
    }
    clause(
        &mut failures,
        "9",
        worst <= tol,
        &format!(
            "Euler product identity Π(1+qⁿ)(q;q²)∞ = 1; max |diff| = {:.3e}",
            worst.to_f64()
        ),
    );

    // Jacobi: θ₃⁴ = θ₂⁴ + θ₄⁴.
    let mut worst = ctx.real(0u32);
    for (num, den) in grid {
        let nome = nome_of(&ctx, &ctx.rational(num, den));
        let t2 = qseries::theta2(&ctx, &nome).unwrap();
        let t3 = qseries::theta3(&ctx, &nome).unwrap();
        let t4 = qseries::theta4(&ctx, &nome).unwrap();
        let d = ctx.real(
            ctx.real(ctx.powi(&t3, 4) - ctx.powi(&t2, 4) - ctx.powi(&t4, 4))
                .abs_ref(),
        );
        if d > worst {
            worst = d;
        }
    }
    clause(
        &mut failures,
        "9",
        worst <= tol,
        &format!("Jacobi θ₃⁴ = θ₂⁴ + θ₄⁴; max |diff| = {:.3e}", worst.to_f64()),
    );

    // Small-q asymptotics: R ~ q^(1/5), H ~ q^(1/2), V ~ q^(1/3), each
    // with an O(q) first correction.
    let mut worst_rel: f64 = 0.0;
    let mut ok = true;
    for exp10 in [4i32, 6, 8] {
        let q = p10(&ctx, exp10);
        let nome = Nome::from_q(&ctx, ctx.real(&q)).unwrap();
        for (kind, num, den) in [
            (FractionKind::R, 1i64, 5u64),
            (FractionKind::H, 1, 2),
            (FractionKind::V, 1, 3),
        ] {
            let value = fraction_direct(&ctx, kind, &nome).unwrap();
            let lead = nome.pow(&ctx, num, den).unwrap();
            let ratio_err = ctx
                .real(ctx.real(value / lead - 1u32).abs_ref())
                .to_f64();
            let bound = 3.0 * ctx.real(&q).to_f64();
            ok &= ratio_err <= bound;
            worst_rel = worst_rel.max(ratio_err / ctx.real(&q).to_f64());
        }
    }
    clause(
        &mut failures,
        "9",
        ok,
        &format!(
            "R/q^(1/5), H/q^(1/2), V/q^(1/3) → 1 with O(q) corrections; max |ratio-1|/q = {worst_rel:.3}"
        ),
    );

    finish(failures);
}
