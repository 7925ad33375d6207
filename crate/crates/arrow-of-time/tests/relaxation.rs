//! Full-scale echo and relaxation behavior on the 64x64 box.

use arrow_of_time::*;

fn big_config() -> GasConfig {
    GasConfig {
        width: 64,
        height: 64,
        wall_col: 32,
        hole_rows: 4,
        particles: 512,
        seed: 7,
        steps: 10_000,
        reverse_at: Some(10_000),
    }
}

fn dump(trajectory: &[TrajectoryPoint]) -> String {
    trajectory
        .iter()
        .step_by(500)
        .map(|p| format!("t={} j={} S={:.3}", p.t, p.j, p.entropy_over_kb))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn echo_retraces_ten_thousand_steps() {
    let echo = run_echo(&big_config()).unwrap();
    assert!(echo.retraced);
    assert_eq!(echo.final_state, echo.initial);
}

#[test]
fn entropy_grows_and_relaxes_to_half() {
    let config = big_config();
    let (trajectory, _) = run_free(&config).unwrap();
    let s0 = trajectory[0].entropy_over_kb;
    let st = trajectory.last().unwrap().entropy_over_kb;
    assert_eq!(s0, 0.0);
    assert!(st > s0, "no entropy growth:\n{}", dump(&trajectory));

    let window: Vec<&TrajectoryPoint> =
        trajectory.iter().filter(|p| p.t >= 5000).collect();
    let n = config.particles as f64;
    let mean_fraction: f64 =
        window.iter().map(|p| p.j as f64 / n).sum::<f64>() / window.len() as f64;
    assert!(
        (0.4..=0.6).contains(&mean_fraction),
        "mean j/n = {mean_fraction}:\n{}",
        dump(&trajectory)
    );

    let mean_entropy: f64 =
        window.iter().map(|p| p.entropy_over_kb).sum::<f64>() / window.len() as f64;
    let leading = n * 2.0f64.ln();
    assert!(
        mean_entropy >= 0.8 * leading,
        "plateau {mean_entropy} below 0.8 n ln 2 = {}:\n{}",
        0.8 * leading,
        dump(&trajectory)
    );
}

#[test]
fn reversed_start_reading_equals_forward_reading() {
    // 512 particles fill whole cells, so the reversed-start trajectory is
    // the forward one and S(-T) = S(T) with identical j, exactly.
    let config = big_config();
    let (forward, _) = run_free(&config).unwrap();
    let (reversed, _) = run_reversed(&config).unwrap();
    let ft = forward.last().unwrap();
    let rt = reversed.last().unwrap();
    assert_eq!(ft.j, rt.j);
    assert_eq!(ft.entropy_over_kb, rt.entropy_over_kb);
    assert!(ft.entropy_over_kb > forward[0].entropy_over_kb);
}
