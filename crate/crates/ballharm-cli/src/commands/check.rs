//! `ballharm check`: run the verification suites; exit 0 only if all pass.

use std::time::Instant;

use anyhow::bail;
use ballharm::verify::{run_suite_with_quad, SUITE_NAMES};

pub fn run(suite: Option<&str>, quad: Option<(usize, usize, usize)>) -> anyhow::Result<u8> {
    let selected: Vec<&str> = match suite {
        None => SUITE_NAMES.to_vec(),
        Some(list) => {
            let names: Vec<&str> = list.split(',').map(str::trim).collect();
            for n in &names {
                if !SUITE_NAMES.contains(n) {
                    bail!("unknown suite {n:?}; available: {}", SUITE_NAMES.join(", "));
                }
            }
            names
        }
    };

    let t0 = Instant::now();
    let mut all_pass = true;
    if let Some(q) = quad {
        println!("note: overriding suite quadrature with {q:?}");
    }
    for name in selected {
        let report = run_suite_with_quad(name, quad)?;
        println!("{}", report.summary_line());
        all_pass &= report.pass;
    }
    println!(
        "check {} in {:.1}s",
        if all_pass { "PASSED" } else { "FAILED" },
        t0.elapsed().as_secs_f64()
    );
    Ok(if all_pass { 0 } else { 1 })
}
