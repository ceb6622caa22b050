use euler_core::audit::{run_battery, BatteryConfig};

#[test]
fn builtin_battery_passes() {
    let outcome = run_battery(&BatteryConfig { seed: 7, workers: 4 }).unwrap();
    let text = outcome.to_text();
    println!("{text}");
    assert!(outcome.passed(), "{text}");
}
