use ovalab_core::exec::ExecMode;
use ovalab_core::morse_crit::estimate_crit_density;

fn main() {
    let target = 2.0f64.sqrt() / std::f64::consts::PI;
    println!("limit = {target:.4}");
    for (d, trials) in [(10u32, 400u64), (20, 400), (40, 120), (80, 48)] {
        match estimate_crit_density(d, 0, trials, 2026, ExecMode::Parallel) {
            Ok(est) => println!(
                "d={d}: {:.4} ± {:.4}  excess {:.4}  excess*sqrt(d) {:.3} (discard {})",
                est.value,
                est.std_error,
                est.value - target,
                (est.value - target) * (d as f64).sqrt(),
                est.discarded
            ),
            Err(e) => println!("d={d}: {e}"),
        }
    }
}
