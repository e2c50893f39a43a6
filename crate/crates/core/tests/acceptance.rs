//! End-to-end acceptance checks. Runs without the libtest harness and prints one
//! PASS/FAIL line per check; the process fails if any check fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use qsep_core::bipartite::{
    criterion_entropy, criterion_majorization, criterion_ppt, criterion_reduction,
    criterion_reshuffling_24, reshuffle_singular_values_closed_form,
};
use qsep_core::classify::{all_criteria, classify_point, SepClass};
use qsep_core::concurrence::{
    concurrence_23_closed_form, concurrence_gate, flip_product_spectrum, wootters_concurrence,
};
use qsep_core::config::MARGINAL_BAND;
use qsep_core::linalg::{hermitian_eigenvalues, singular_values, trace_norm};
use qsep_core::scan::{
    boundary_bisect, boundary_bisect_by, grid_scan, grid_scan_sequential, lattice_indices,
    uniform_points, write_csv,
};
use qsep_core::states::{
    build_rho, closed_form_spectra, example_state, marginals, partial_transpose_1,
    partial_transpose_first, pptes_integer_matrix, reduction_matrices, reshuffle_24, ExampleState,
    SpectrumLabel,
};
use qsep_core::tripartite::{
    balanced_monomials, class_signature, criterion_gs_biseparable, criterion_gs_fullsep,
    criterion_huber, criterion_su, detection_vector, distinct_signatures, ghz_class_bounds,
    ghz_vertex, su_closed_form, witness_closed_forms, witness_expectations, witnesses, SloccBound,
    FOURTH_ORDER_FORMS, SIXTH_ORDER_FORMS,
};
use qsep_core::verdict::{Alpha, CriterionId, Detector, Setting, Status, SuLevel};
use qsep_core::{Error, SimplexPoint};

const SAMPLES: usize = 2500;
const SEED: u64 = 20240611;
const BISECT_TOL: f64 = 1e-12;

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn pt(g: f64, w: f64) -> SimplexPoint {
    SimplexPoint::new(g, w).expect("point in the simplex")
}

fn samples() -> Vec<SimplexPoint> {
    uniform_points(SAMPLES, SEED)
}

fn lattice(n: usize) -> Vec<SimplexPoint> {
    lattice_indices(n)
        .into_iter()
        .map(|(i, j)| pt(i as f64 / n as f64, j as f64 / n as f64))
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(label: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    ensure((got - want).abs() <= tol, || {
        format!("{label}: got {got:.15}, expected {want:.15} (tol {tol:e})")
    })
}

fn at(p: &SimplexPoint) -> String {
    format!("(g, w) = ({}, {})", p.g(), p.w())
}

fn err(e: Error) -> String {
    e.to_string()
}

/// Statuses agree, treating a marginal result on either side as compatible.
fn compatible(a: Status, b: Status) -> bool {
    a == b || a == Status::Marginal || b == Status::Marginal
}

fn spectra() -> Outcome {
    let mut worst = 0.0f64;
    for p in samples() {
        let closed = closed_form_spectra(&p);
        let (r23, r1) = marginals(&p).map_err(err)?;
        let numeric = [
            (SpectrumLabel::Rho, hermitian_eigenvalues(&build_rho(&p))),
            (SpectrumLabel::Rho23, hermitian_eigenvalues(&r23)),
            (SpectrumLabel::Rho1, hermitian_eigenvalues(&r1)),
            (
                SpectrumLabel::RhoT1,
                hermitian_eigenvalues(&partial_transpose_1(&p).map_err(err)?),
            ),
            (
                SpectrumLabel::Rho1I23,
                hermitian_eigenvalues(&reduction_matrices(&p).map_err(err)?.1),
            ),
            (SpectrumLabel::FlipProduct23, flip_product_spectrum(&r23)),
        ];
        for (label, spectrum) in numeric {
            let spectrum = spectrum.map_err(err)?;
            let diff = spectrum.max_abs_diff(&closed[&label]);
            ensure(diff <= 1e-10, || {
                format!("{label} at {}: diff {diff:e}", at(&p))
            })?;
            worst = worst.max(diff);
        }
    }
    Ok(format!(
        "{SAMPLES} points, six spectra, max diff {worst:.1e}"
    ))
}

fn ppt_boundary() -> Outcome {
    let g =
        boundary_bisect(CriterionId::Ppt, pt(0.0, 0.0), pt(1.0, 0.0), BISECT_TOL).map_err(err)?;
    close("g-axis crossing", g.g(), 0.2, 1e-9)?;
    let w =
        boundary_bisect(CriterionId::Ppt, pt(0.0, 0.0), pt(0.0, 1.0), BISECT_TOL).map_err(err)?;
    let want = (24.0 * 2f64.sqrt() - 9.0) / 119.0;
    close("w-axis crossing", w.w(), want, 1e-8)?;
    Ok(format!("g = {:.12}, w = {:.12}", g.g(), w.w()))
}

fn reduction_equals_ppt() -> Outcome {
    let mut worst = 0.0f64;
    for p in samples() {
        let ppt = criterion_ppt(&p).map_err(err)?;
        let red = criterion_reduction(&p).map_err(err)?;
        ensure(ppt.status == red.status, || {
            format!(
                "at {}: ppt {} vs reduction {}",
                at(&p),
                ppt.status,
                red.status
            )
        })?;
        let a = hermitian_eigenvalues(&reduction_matrices(&p).map_err(err)?.0).map_err(err)?;
        let b = hermitian_eigenvalues(&partial_transpose_1(&p).map_err(err)?).map_err(err)?;
        let diff = a.max_abs_diff(&b);
        ensure(diff <= 1e-10, || {
            format!("spectra differ by {diff:e} at {}", at(&p))
        })?;
        worst = worst.max(diff);
    }
    Ok(format!(
        "{SAMPLES} points, identical verdicts, max spectral diff {worst:.1e}"
    ))
}

fn reshuffling() -> Outcome {
    let mut worst = 0.0f64;
    for p in samples() {
        criterion_reshuffling_24(&p).map_err(err)?;
        let numeric = singular_values(&reshuffle_24(&p).map_err(err)?).map_err(err)?;
        let diff = numeric.max_abs_diff(&reshuffle_singular_values_closed_form(&p));
        ensure(diff <= 1e-10, || {
            format!("singular values differ by {diff:e} at {}", at(&p))
        })?;
        worst = worst.max(diff);
    }
    let noise =
        trace_norm(&reshuffle_24(&SimplexPoint::white_noise()).map_err(err)?).map_err(err)?;
    close("white-noise trace norm", noise, 2f64.powf(-1.5), 1e-10)?;
    let ghz = trace_norm(&reshuffle_24(&SimplexPoint::ghz()).map_err(err)?).map_err(err)?;
    close("GHZ trace norm", ghz, 2.0, 1e-10)?;
    Ok(format!(
        "{SAMPLES} points, max diff {worst:.1e}; norms {noise:.12}, {ghz:.12}"
    ))
}

fn majorization_margin_rho23(p: &SimplexPoint) -> qsep_core::Result<f64> {
    Ok(criterion_majorization(p)?.1.margin)
}

fn majorization_meets_ppt() -> Outcome {
    let cases = [
        (pt(2.0 / 13.0, 3.0 / 13.0), pt(0.0, 0.0), pt(0.4, 0.6)),
        (pt(0.2, 0.0), pt(0.0, 0.0), pt(1.0, 0.0)),
    ];
    let mut notes = Vec::new();
    for (target, start, end) in cases {
        let ppt = boundary_bisect(CriterionId::Ppt, start, end, BISECT_TOL).map_err(err)?;
        let maj =
            boundary_bisect_by(start, end, BISECT_TOL, majorization_margin_rho23).map_err(err)?;
        let ppt_margin = criterion_ppt(&ppt).map_err(err)?.margin;
        let maj_margin = majorization_margin_rho23(&ppt).map_err(err)?;
        let label = at(&target);
        close(&format!("ppt margin at {label}"), ppt_margin, 0.0, 1e-8)?;
        close(
            &format!("majorization margin at {label}"),
            maj_margin,
            0.0,
            1e-8,
        )?;
        let dist = (ppt.g() - target.g()).hypot(ppt.w() - target.w());
        ensure(dist <= 1e-8, || {
            format!("ppt crossing {} is {dist:e} from {label}", at(&ppt))
        })?;
        let gap = (ppt.g() - maj.g()).hypot(ppt.w() - maj.w());
        ensure(gap <= 1e-8, || {
            format!("crossings differ by {gap:e} near {label}")
        })?;
        notes.push(format!(
            "{label}: |margins| {:.1e}, {:.1e}",
            ppt_margin.abs(),
            maj_margin.abs()
        ));
    }
    Ok(notes.join("; "))
}

fn entropy_dominance() -> Outcome {
    let sweep = Alpha::sweep();
    let mut hartley_hits = 0usize;
    let points = lattice(100);
    for p in &points {
        let (m1, m23) = criterion_majorization(p).map_err(err)?;
        for &alpha in &sweep {
            let (e1, e23) = criterion_entropy(p, alpha).map_err(err)?;
            for (m, e, name) in [(&m1, &e1, "rho1"), (&m23, &e23, "rho23")] {
                ensure(!m.holds() || e.not_violated(), || {
                    format!(
                        "{name}: majorization holds but alpha = {} violated at {}",
                        alpha.value(),
                        at(p)
                    )
                })?;
            }
            if alpha.value() == 0.0 && (e1.violated() || e23.violated()) {
                ensure(p.d().abs() <= 1e-12, || {
                    format!("Hartley violated off d = 0 at {}", at(p))
                })?;
                hartley_hits += 1;
            }
        }
    }
    ensure(hartley_hits > 0, || {
        "Hartley limit never violated on d = 0".into()
    })?;
    Ok(format!(
        "{} lattice points, {} orders; Hartley violated at {hartley_hits} points, all on d = 0",
        points.len(),
        sweep.len()
    ))
}

fn spin_criteria() -> Outcome {
    let points = samples();
    for p in &points {
        for level in SuLevel::ALL {
            for setting in Setting::PUBLISHED {
                let v = criterion_su(p, setting, level).map_err(err)?;
                let cf = su_closed_form(setting, level, p).ok_or("missing closed form")?;
                for (name, value) in [("root form", cf.root_form), ("polynomial", cf.polynomial)] {
                    let s = Status::from_margin(value, MARGINAL_BAND);
                    ensure(compatible(v.status, s), || {
                        format!("{} {name} disagrees at {}", v.id, at(p))
                    })?;
                }
            }
        }
        let ii = criterion_su(p, Setting::II, SuLevel::TwoEightCapThree).map_err(err)?;
        let iii = criterion_su(p, Setting::III, SuLevel::TwoEightCapThree).map_err(err)?;
        ensure(ii.status == iii.status, || {
            format!(
                "settings II and III differ at {}: {} vs {}",
                at(p),
                ii.status,
                iii.status
            )
        })?;
    }
    let (o, w1) = (pt(0.0, 0.0), pt(0.0, 1.0));
    let r2 = boundary_bisect(
        CriterionId::Su(SuLevel::TwoSep, Setting::II),
        o,
        w1,
        BISECT_TOL,
    )
    .map_err(err)?;
    close("2sep root", r2.w(), 0.6, 1e-9)?;
    let r28 = boundary_bisect(
        CriterionId::Su(SuLevel::TwoEightCapThree, Setting::II),
        o,
        w1,
        BISECT_TOL,
    )
    .map_err(err)?;
    close("28cap3 root", r28.w(), 3.0 / 11.0, 1e-9)?;
    Ok(format!(
        "{} points x 9 criteria; roots {:.12}, {:.12}",
        points.len(),
        r2.w(),
        r28.w()
    ))
}

fn huber_matches_su() -> Outcome {
    let pairs = [
        (Detector::Ghz, 2, Setting::I, SuLevel::TwoSep),
        (Detector::Ghz, 3, Setting::I, SuLevel::TwoEightCapThree),
        (Detector::W, 2, Setting::II, SuLevel::TwoSep),
        (Detector::W, 3, Setting::II, SuLevel::TwoEightCapThree),
    ];
    let phis = [
        detection_vector(Detector::Ghz).map_err(err)?,
        detection_vector(Detector::W).map_err(err)?,
    ];
    let points = samples();
    for p in &points {
        for &(det, k, setting, level) in &pairs {
            let phi = if det == Detector::Ghz {
                &phis[0]
            } else {
                &phis[1]
            };
            let h = criterion_huber(p, phi, k).map_err(err)?;
            let cf = su_closed_form(setting, level, p).ok_or("missing closed form")?;
            let s = Status::from_margin(cf.root_form, MARGINAL_BAND);
            ensure(compatible(h.status, s), || {
                format!(
                    "{} is {} but the closed form says {s} at {}",
                    h.id,
                    h.status,
                    at(p)
                )
            })?;
        }
    }
    Ok(format!("{} points x 4 detector/level pairs", points.len()))
}

fn gs_criteria() -> Outcome {
    let r =
        boundary_bisect(CriterionId::Gs2, pt(0.0, 0.0), pt(0.0, 1.0), BISECT_TOL).map_err(err)?;
    close("biseparability bound", r.w(), 9.0 / 17.0, 1e-9)?;

    let listed6: BTreeSet<String> = SIXTH_ORDER_FORMS
        .iter()
        .map(|f| class_signature(f))
        .collect();
    let listed4: BTreeSet<String> = FOURTH_ORDER_FORMS
        .iter()
        .map(|f| class_signature(f))
        .collect();
    ensure(balanced_monomials(6).len() == 28, || {
        "expected 28 sixth-order monomials".into()
    })?;
    ensure(balanced_monomials(4).len() == 12, || {
        "expected 12 fourth-order monomials".into()
    })?;
    ensure(
        distinct_signatures(6) == listed6 && listed6.len() == 8,
        || "sixth-order signatures do not match the listed forms".into(),
    )?;
    ensure(
        distinct_signatures(4) == listed4 && listed4.len() == 5,
        || "fourth-order signatures do not match the listed forms".into(),
    )?;

    let p = pt(0.2, 0.2);
    let gs3 = criterion_gs_fullsep(&p).map_err(err)?;
    let c = gs3
        .components
        .iter()
        .find(|c| c.label == "rhs4_0356")
        .ok_or("missing component rhs4_0356")?;
    ensure(c.margin < -MARGINAL_BAND, || {
        format!("rhs4_0356 margin {} not violated", c.margin)
    })?;
    ensure(gs3.violated(), || {
        "full-separability test not violated at (0.2, 0.2)".into()
    })?;
    let ppt = criterion_ppt(&p).map_err(err)?;
    ensure(ppt.holds(), || {
        format!("ppt is {} at (0.2, 0.2)", ppt.status)
    })?;
    ensure(
        criterion_gs_biseparable(&p).map_err(err)?.not_violated(),
        || "biseparability test violated at (0.2, 0.2)".into(),
    )?;
    let diff = build_rho(&p)
        .scale(120.0)
        .max_abs_diff(&pptes_integer_matrix());
    ensure(diff <= 1e-13, || {
        format!("120 rho differs from the integer matrix by {diff:e}")
    })?;
    Ok(format!(
        "bound {:.12}; 28 -> 8 and 12 -> 5 forms; component margin {:.6}, ppt margin {:.6}",
        r.w(),
        c.margin,
        ppt.margin
    ))
}

fn pptes_region() -> Outcome {
    let start = Instant::now();
    let grid = grid_scan(400, &all_criteria()).map_err(err)?;
    let cells = grid.pptes_cells();
    ensure(!cells.is_empty(), || "no PPTES cells".into())?;
    ensure(cells.contains(&(80, 80)), || {
        "cell (80, 80) is not certified".into()
    })?;
    let ppt = grid
        .criteria()
        .iter()
        .position(|&id| id == CriterionId::Ppt)
        .ok_or("ppt not scanned")?;
    for &(i, j) in &cells {
        let cell = grid.cell(i, j).ok_or("missing cell")?;
        ensure(cell.verdicts[ppt].holds(), || {
            format!("cell ({i}, {j}) is not PPT")
        })?;
    }
    Ok(format!(
        "{} points, {} PPTES cells including (80, 80), {:.1} s",
        grid.cells().len(),
        cells.len(),
        start.elapsed().as_secs_f64()
    ))
}

fn witnesses_and_slocc() -> Outcome {
    let ws = witnesses();
    let mut worst = 0.0f64;
    for p in samples() {
        let numeric = witness_expectations(&p).map_err(err)?;
        let closed = witness_closed_forms(p.g(), p.w());
        let rho = build_rho(&p);
        let direct = [
            ws[0].expectation(&rho),
            ws[1].expectation(&rho),
            ws[2].expectation(&rho),
        ];
        for (a, b, c) in [
            (numeric.w_ghz, closed.w_ghz, direct[0]),
            (numeric.w_w1, closed.w_w1, direct[1]),
            (numeric.w_w2, closed.w_w2, direct[2]),
        ] {
            let diff = (a - b).abs().max((c - b).abs());
            ensure(diff <= 1e-12, || {
                format!("witness differs by {diff:e} at {}", at(&p))
            })?;
            worst = worst.max(diff);
        }
    }
    let ghz = witness_closed_forms(1.0, 0.0).w_ghz;
    close("GHZ witness at the GHZ state", ghz, -0.25, 1e-12)?;
    let g0 = ghz_vertex();
    close("triangle vertex", g0, 0.626851, 1e-6)?;

    let expect = [
        (pt(3.0 / 7.0 - 1e-6, 0.0), SloccBound::NotGhzType),
        (pt(1.0, 0.0), SloccBound::GhzType),
        (pt(g0 - 1e-6, 1.0 - g0 + 1e-6), SloccBound::NotGhzType),
        (pt(0.0, 0.0), SloccBound::NotGhzType),
    ];
    for (p, want) in expect {
        let got = ghz_class_bounds(&p).map_err(err)?;
        ensure(got == want, || {
            format!("at {}: {got:?}, expected {want:?}", at(&p))
        })?;
    }
    for p in [pt(3.0 / 7.0 + 1e-6, 0.0), pt(g0 + 1e-6, 1.0 - g0 - 1e-6)] {
        let got = ghz_class_bounds(&p).map_err(err)?;
        ensure(got != SloccBound::NotGhzType, || {
            format!("at {}: excluded from GHZ type", at(&p))
        })?;
    }
    let (a, b) = ((3.0 / 7.0, 0.0), (g0, 1.0 - g0));
    for p in lattice(100) {
        let bound = ghz_class_bounds(&p).map_err(err)?;
        let side = (b.0 - a.0) * (p.w() - a.1) - (b.1 - a.1) * (p.g() - a.0);
        if side > 1e-12 {
            ensure(bound == SloccBound::NotGhzType, || {
                format!("at {}: {bound:?}", at(&p))
            })?;
        }
        if bound == SloccBound::GhzType {
            ensure(witness_closed_forms(p.g(), p.w()).w_ghz < 0.0, || {
                format!("GHZ type claimed without detection at {}", at(&p))
            })?;
        }
    }
    Ok(format!(
        "{SAMPLES} points, max diff {worst:.1e}; vertex g0 = {g0:.9}"
    ))
}

fn concurrence() -> Outcome {
    let mut worst = 0.0f64;
    for p in samples() {
        let closed = concurrence_23_closed_form(&p).map_err(err)?;
        let numeric = wootters_concurrence(&marginals(&p).map_err(err)?.0).map_err(err)?;
        let diff = (closed - numeric).abs();
        ensure(diff <= 1e-9, || {
            format!("concurrence differs by {diff:e} at {}", at(&p))
        })?;
        if concurrence_gate(p.g(), p.w()) < 0.0 {
            ensure(numeric <= 1e-9, || {
                format!("gate closed but C = {numeric} at {}", at(&p))
            })?;
        }
        worst = worst.max(diff);
    }
    let cw =
        wootters_concurrence(&marginals(&SimplexPoint::w_state()).map_err(err)?.0).map_err(err)?;
    close("W state", cw, 2.0 / 3.0, 1e-9)?;
    let cg = wootters_concurrence(&marginals(&SimplexPoint::ghz()).map_err(err)?.0).map_err(err)?;
    close("GHZ state", cg, 0.0, 1e-9)?;
    Ok(format!(
        "{SAMPLES} points, max diff {worst:.1e}; C(W) = {cw:.12}"
    ))
}

fn ghz_noise_line() -> Outcome {
    let table = [
        (0.1, SepClass::Three),
        (0.2, SepClass::Three),
        (0.3, SepClass::TwoOne),
        (3.0 / 7.0, SepClass::TwoOne),
        (0.5, SepClass::One),
        (1.0, SepClass::One),
    ];
    for (g, want) in table {
        let report = classify_point(&pt(g, 0.0)).map_err(err)?;
        ensure(report.exact, || format!("g = {g}: not flagged exact"))?;
        ensure(report.possible_classes == BTreeSet::from([want]), || {
            format!("g = {g}: {:?}, expected {want}", report.possible_classes)
        })?;
    }
    Ok("six points classified without conflict".into())
}

fn example_states() -> Outcome {
    let min_pt = |s: ExampleState| -> Result<f64, String> {
        let rho = example_state(s).map_err(err)?;
        let pt = partial_transpose_first(&rho).map_err(err)?;
        Ok(hermitian_eigenvalues(&pt).map_err(err)?.min())
    };
    let c21 = min_pt(ExampleState::Class21)?;
    ensure(c21 < -1e-6, || {
        format!("class 2.1 example has min eigenvalue {c21:e}")
    })?;
    let c28 = min_pt(ExampleState::Class28 { a: 2.0 })?;
    ensure(c28 >= -1e-10, || {
        format!("class 2.8 example has min eigenvalue {c28:e}")
    })?;
    Ok(format!("min eigenvalues {c21:.6}, {c28:.6}"))
}

fn determinism() -> Outcome {
    let ids = all_criteria();
    let par = grid_scan(100, &ids).map_err(err)?;
    let seq = grid_scan_sequential(100, &ids).map_err(err)?;
    let (mut a, mut b) = (Vec::new(), Vec::new());
    write_csv(&par, &mut a).map_err(|e| e.to_string())?;
    write_csv(&seq, &mut b).map_err(|e| e.to_string())?;
    ensure(a == b, || "parallel and sequential CSV differ".into())?;
    Ok(format!("{} bytes identical", a.len()))
}

fn main() -> ExitCode {
    let checks: [Check; 15] = [
        ("spectra", spectra),
        ("ppt_boundary", ppt_boundary),
        ("reduction_equals_ppt", reduction_equals_ppt),
        ("reshuffling", reshuffling),
        ("majorization_meets_ppt", majorization_meets_ppt),
        ("entropy_dominance", entropy_dominance),
        ("spin_criteria", spin_criteria),
        ("huber_matches_su", huber_matches_su),
        ("gs_criteria", gs_criteria),
        ("pptes_region", pptes_region),
        ("witnesses_and_slocc", witnesses_and_slocc),
        ("concurrence", concurrence),
        ("ghz_noise_line", ghz_noise_line),
        ("example_states", example_states),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        checks.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
