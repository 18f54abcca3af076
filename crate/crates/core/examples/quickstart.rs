//! Evaluate the Rogers-Ramanujan fraction at `q = e^(-2π)` by all three
//! routes and compare against its radical value.
//!
//! Run with `cargo run -p rcf-core --example quickstart`.

use rcf_core::cfrac::{fraction_direct, fraction_oracle};
use rcf_core::closed_forms::fraction_closed;
use rcf_core::{FractionKind, Nome, PrecisionContext};

fn main() -> rcf_core::Result<()> {
    let ctx = PrecisionContext::new(256)?;

    // q = e^(-2π) is the singular point r = 4.
    let nome = Nome::from_ln_q(&ctx, ctx.real(-2i32) * ctx.pi())?;
    let r = ctx.real(4u32);

    let direct = fraction_direct(&ctx, FractionKind::R, &nome)?;
    let oracle = fraction_oracle(&ctx, FractionKind::R, &nome)?;
    let closed = fraction_closed(&ctx, FractionKind::R, &r)?;

    // Radical value: √((5+√5)/2) − (1+√5)/2.
    let sqrt5 = ctx.real(5u32).sqrt();
    let radical =
        (((ctx.real(5u32) + &sqrt5) / 2u32).sqrt()) - (ctx.real(1u32) + &sqrt5) / 2u32;

    println!("direct  = {direct}");
    println!("oracle  = {oracle}");
    println!("closed  = {closed}");
    println!("radical = {radical}");

    assert!(ctx.rel_diff(&direct, &radical) < ctx.eps());
    assert!(ctx.rel_diff(&oracle, &radical) < ctx.eps());
    assert!(ctx.rel_diff(&closed, &radical) < ctx.eps());
    println!("all three routes agree with the radical to eps = {:.3e}", ctx.eps().to_f64());
    Ok(())
}
