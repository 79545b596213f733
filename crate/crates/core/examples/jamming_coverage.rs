//! Coverage of the measured helix and Yagi jammers, and the range the
//! simulated Yagi pattern predicts once the model is calibrated on the helix.

use yagi::analysis::{
    jamming_range, pattern_stats, range_ratio, PatternUnit, RadiationPatternData, RangeModel, HELIX_GAIN_DBI,
};
use yagi::em::simulate;
use yagi::geometry::{build_design, DesignRule};

fn load(name: &str) -> RadiationPatternData {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).expect("fixture present");
    RadiationPatternData::from_csv_str(&text, PatternUnit::Meters, name).expect("valid fixture")
}

fn main() {
    for name in ["helix_fig9.csv", "yagi_fig10.csv"] {
        let st = pattern_stats(&load(name));
        println!(
            "{name:<15} max {:.2} m at {} deg, min {:.2} m at {} deg, mean {:.2} m",
            st.max.value, st.max.angle_deg, st.min.value, st.min.angle_deg, st.mean
        );
    }

    let model = RangeModel::default();
    println!(
        "\nmodel: {:.0} dBm, threshold {:.1} dBm, n = {}",
        model.eirp_dbm, model.threshold_dbm, model.path_loss_exponent
    );
    let helix = jamming_range(&model, HELIX_GAIN_DBI).expect("valid gain");
    println!("helix ({HELIX_GAIN_DBI} dBi): {:.2} m", helix.range_m);

    let design = build_design(DesignRule::Nbs688, 900e6, 5e-3).expect("valid design");
    let sim = simulate(&design, 900e6, 21, 5.0).expect("solve");
    let g = sim.far_field.peak().gain_dbi;
    let yagi = jamming_range(&model, g).expect("valid gain");
    println!(
        "simulated Yagi ({g:.2} dBi): {:.2} m, {:.2} x the helix",
        yagi.range_m,
        range_ratio(HELIX_GAIN_DBI, g, model.path_loss_exponent).expect("valid exponent")
    );
    println!("\nboom-plane coverage:");
    for (phi, gain) in sim.far_field.azimuth_cut().into_iter().filter(|(p, _)| p % 45.0 == 0.0) {
        let r = jamming_range(&model, gain).expect("valid gain");
        println!("  {phi:>5.0} deg {gain:>7.2} dBi {:>7.2} m", r.range_m);
    }
}
