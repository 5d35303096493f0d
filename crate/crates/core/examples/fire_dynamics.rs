//! Point-fire growth and quenching: closed forms next to the RK4 reference.
//!
//! cargo run --example fire_dynamics

use wildfire_planner::fire::{critical_area, deadline_time, evolve_under_quench, grow, quench_time};
use wildfire_planner::oracle::{ode_grow, ode_quench_oracle};

fn main() -> wildfire_planner::Result<()> {
    let spread = 0.075;
    let a0 = std::f64::consts::PI * 10.0 * 10.0;

    println!("unattended growth from {a0:.1} m² at {spread} m/s");
    for t in [60.0, 300.0, 900.0, 1800.0] {
        println!(
            "  t={t:>6.0}s  closed form {:>9.2} m²  rk4 {:>9.2} m²",
            grow(a0, spread, t)?,
            ode_grow(a0, spread, t, 1e-2)
        );
    }

    for q in [16.0, 20.0, 26.0] {
        let ac = critical_area(q, spread)?;
        let d = deadline_time(a0, spread, q).seconds().unwrap_or(0.0);
        println!("\nquench rate {q} m/s: critical area {ac:.0} m², deadline {d:.0} s");
        for frac in [0.1, 0.5, 0.9, 0.99] {
            let a = frac * ac;
            let cf = quench_time(a, spread, q).finite().unwrap();
            let ode = ode_quench_oracle(a, spread, q).finite().unwrap();
            println!("  start at {:>4.0}% of a^c: quench {cf:>8.2} s (rk4 {ode:.2} s)", frac * 100.0);
        }
        // Sitting exactly on the critical area the fire neither grows nor shrinks.
        println!("  at a^c after 100 s: {:.4} m²", evolve_under_quench(ac, spread, q, 100.0)?);
    }
    Ok(())
}
