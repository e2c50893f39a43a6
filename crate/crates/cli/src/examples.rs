use qsep_core::classify::classify_point;
use qsep_core::linalg::{
    hermitian_eigenvalues, permute_indices, trace_norm, ComplexMatrix, RESHUFFLE_23,
};
use qsep_core::states::{
    build_rho, example_state, partial_transpose_first, permute_qubits, pptes_integer_matrix,
    realign, ExampleState,
};
use qsep_core::tripartite::witnesses;
use qsep_core::{Config, SimplexPoint};

use crate::CmdResult;

#[derive(Debug, Clone, Copy)]
pub enum Example {
    Class21,
    Class28(f64),
    Pptes,
}

/// Moves qubit `k` to the front.
const TO_FRONT: [[usize; 3]; 3] = [[0, 1, 2], [1, 0, 2], [2, 1, 0]];

fn print_matrix(denominator: f64, numerators: &ComplexMatrix) {
    println!("rho = 1/{denominator} *");
    for i in 0..numerators.rows() {
        let row: Vec<String> = (0..numerators.cols())
            .map(|j| format!("{:>6}", round12(numerators.get(i, j).re)))
            .collect();
        println!("  [{}]", row.join(" "));
    }
}

/// Strips the last few bits of rounding noise so that exact rationals print cleanly.
fn round12(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn positivity(min: f64, tol: f64) -> &'static str {
    if min >= -tol {
        "PPT"
    } else {
        "NPT"
    }
}

pub fn run(which: Example, cfg: &Config) -> CmdResult {
    let (state, denominator) = match which {
        Example::Class21 => (ExampleState::Class21, 6.0),
        Example::Class28(a) => (ExampleState::Class28 { a }, 2.0 + 3.0 * (a + 1.0 / a)),
        Example::Pptes => (ExampleState::Pptes, 120.0),
    };
    let rho = example_state(state)?;
    match which {
        Example::Class21 => println!("class 2.1 example"),
        Example::Class28(a) => println!("class 2.8 example, a = {a}"),
        Example::Pptes => println!("family member at g = w = 1/5"),
    }
    print_matrix(denominator, &rho.scale(denominator));
    println!();

    let spectrum = hermitian_eigenvalues(&rho)?;
    println!("min eigenvalue of rho: {:.6e}", spectrum.min());
    println!("PSD tolerance: {:e}", cfg.psd_tol);
    for (k, q) in TO_FRONT.iter().enumerate() {
        let moved = permute_qubits(&rho, *q)?;
        let min = hermitian_eigenvalues(&partial_transpose_first(&moved)?)?.min();
        let realigned = trace_norm(&realign(&moved, 2, 4))?;
        println!(
            "cut {} | rest: partial transpose min eigenvalue {:.6e} ({}), realignment trace norm {:.6}",
            k + 1,
            min,
            positivity(min, cfg.psd_tol),
            realigned
        );
    }
    let perm = trace_norm(&permute_indices(&rho, &RESHUFFLE_23)?)?;
    println!("2-3 reshuffle trace norm: {perm:.6}");
    for wt in witnesses() {
        println!("{}: {:.6e}", wt.name(), wt.expectation(&rho));
    }

    if let Example::Pptes = which {
        let p = SimplexPoint::new(0.2, 0.2)?;
        let diff = build_rho(&p)
            .scale(120.0)
            .max_abs_diff(&pptes_integer_matrix());
        println!();
        println!("max |120 rho(1/5, 1/5) - integer matrix| = {diff:e}");
        let report = classify_point(&p)?;
        let classes: Vec<String> = report
            .possible_classes
            .iter()
            .map(|c| c.to_string())
            .collect();
        println!("possible classes: {{{}}}", classes.join(", "));
        println!("PPTES certified: {}", report.pptes_certified);
    }
    Ok(())
}
