//! Builds the six-element design for each rule and prints its dimensions.

use yagi::geometry::{build_design, validate_design, DesignRule, DEFAULT_DIAMETER_M};

fn main() {
    let f0: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(900.0) * 1e6;
    for rule in DesignRule::ALL {
        let design = build_design(rule, f0, DEFAULT_DIAMETER_M).expect("valid frequency");
        println!("{} at {:.1} MHz (lambda {:.4} m)", rule.id(), f0 / 1e6, design.plan.lambda);
        println!("  {:<9} {:>10} {:>12}", "role", "length mm", "position mm");
        for e in &design.elements {
            println!("  {:<9} {:>10.1} {:>12.1}", format!("{:?}", e.role).to_lowercase(), e.length * 1e3, e.position * 1e3);
        }
        println!("  boom {:.1} mm", design.boom_length * 1e3);
        for v in validate_design(&design) {
            println!("  warning: {v}");
        }
    }
}
