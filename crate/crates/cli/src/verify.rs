use qsep_core::bipartite::{
    criterion_entropy, criterion_majorization, criterion_ppt, criterion_reduction,
    ppt_closed_form_status, reshuffle_singular_values_closed_form,
};
use qsep_core::classify::{all_criteria, evaluate_criteria};
use qsep_core::concurrence::{concurrence_23_formula, flip_product_spectrum, wootters_concurrence};
use qsep_core::config::MARGINAL_BAND;
use qsep_core::linalg::{hermitian_eigenvalues, singular_values, Spectrum};
use qsep_core::scan::uniform_points;
use qsep_core::states::{
    build_rho, closed_form_spectra, marginals, partial_transpose_1, reduction_matrices,
    reshuffle_24, SpectrumLabel,
};
use qsep_core::tripartite::{
    criterion_huber, criterion_su, detection_vector, su_closed_form, witness_closed_forms,
    witnesses,
};
use qsep_core::verdict::{Alpha, Detector, Setting, Status, SuLevel};
use qsep_core::SimplexPoint;

use crate::{CmdResult, Failure};

/// Largest deviation seen by one numeric cross-check.
struct Deviation {
    name: &'static str,
    max: f64,
    at: Option<SimplexPoint>,
}

/// Count of points where two verdict paths disagree.
struct Agreement {
    name: &'static str,
    checked: usize,
    failures: Vec<SimplexPoint>,
}

impl Deviation {
    fn new(name: &'static str) -> Self {
        Deviation {
            name,
            max: 0.0,
            at: None,
        }
    }

    fn record(&mut self, p: &SimplexPoint, dev: f64) {
        if dev > self.max || dev.is_nan() {
            self.max = dev;
            self.at = Some(*p);
        }
    }
}

impl Agreement {
    fn new(name: &'static str) -> Self {
        Agreement {
            name,
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, p: &SimplexPoint, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failures.push(*p);
        }
    }
}

fn compatible(a: Status, b: Status) -> bool {
    a == b || a == Status::Marginal || b == Status::Marginal
}

fn spectrum_dev(a: &Spectrum, b: &Spectrum) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.max_abs_diff(b)
}

struct Suite {
    spectra: Deviation,
    reduction_spectrum: Deviation,
    reshuffle: Deviation,
    witnesses: Deviation,
    concurrence: Deviation,
    ppt_closed_form: Agreement,
    reduction_ppt: Agreement,
    su_closed_form: Agreement,
    su_settings_ii_iii: Agreement,
    huber_su: Agreement,
    entropy_majorization: Agreement,
}

impl Suite {
    fn new() -> Self {
        Suite {
            spectra: Deviation::new("closed-form spectra"),
            reduction_spectrum: Deviation::new("reduction vs partial transpose spectrum"),
            reshuffle: Deviation::new("realignment singular values"),
            witnesses: Deviation::new("witness expectations"),
            concurrence: Deviation::new("concurrence"),
            ppt_closed_form: Agreement::new("ppt numeric vs closed form"),
            reduction_ppt: Agreement::new("reduction vs ppt verdicts"),
            su_closed_form: Agreement::new("spin criteria numeric vs closed form"),
            su_settings_ii_iii: Agreement::new("28cap3 settings II vs III"),
            huber_su: Agreement::new("swap criterion vs spin closed forms"),
            entropy_majorization: Agreement::new("majorization implies entropy"),
        }
    }

    fn check(&mut self, p: &SimplexPoint) -> qsep_core::Result<()> {
        // every criterion raises on its own internal cross-path mismatch
        evaluate_criteria(p, &all_criteria())?;

        let closed = closed_form_spectra(p);
        let (r23, r1) = marginals(p)?;
        let pt = partial_transpose_1(p)?;
        let (red_a, red_b) = reduction_matrices(p)?;
        let numeric = [
            (SpectrumLabel::Rho, hermitian_eigenvalues(&build_rho(p))?),
            (SpectrumLabel::Rho23, hermitian_eigenvalues(&r23)?),
            (SpectrumLabel::Rho1, hermitian_eigenvalues(&r1)?),
            (SpectrumLabel::RhoT1, hermitian_eigenvalues(&pt)?),
            (SpectrumLabel::Rho1I23, hermitian_eigenvalues(&red_b)?),
            (SpectrumLabel::FlipProduct23, flip_product_spectrum(&r23)?),
        ];
        for (label, spectrum) in &numeric {
            self.spectra
                .record(p, spectrum_dev(spectrum, &closed[label]));
        }
        let red = hermitian_eigenvalues(&red_a)?;
        self.reduction_spectrum
            .record(p, spectrum_dev(&red, &numeric[3].1));

        let sv = singular_values(&reshuffle_24(p)?)?;
        self.reshuffle.record(
            p,
            spectrum_dev(&sv, &reshuffle_singular_values_closed_form(p)),
        );

        let rho = build_rho(p);
        let cf = witness_closed_forms(p.g(), p.w());
        let [a, b, c] = witnesses().map(|wt| wt.expectation(&rho));
        let dev = (a - cf.w_ghz)
            .abs()
            .max((b - cf.w_w1).abs())
            .max((c - cf.w_w2).abs());
        self.witnesses.record(p, dev);

        let conc = wootters_concurrence(&r23)?;
        self.concurrence
            .record(p, (conc - concurrence_23_formula(p)).abs());

        let ppt = criterion_ppt(p)?;
        self.ppt_closed_form
            .record(p, compatible(ppt.status, ppt_closed_form_status(p)));
        self.reduction_ppt
            .record(p, criterion_reduction(p)?.status == ppt.status);

        for level in SuLevel::ALL {
            for setting in Setting::PUBLISHED {
                let v = criterion_su(p, setting, level)?;
                let cf = su_closed_form(setting, level, p).expect("published setting");
                let ok = [cf.root_form, cf.polynomial]
                    .iter()
                    .all(|&m| compatible(v.status, Status::from_margin(m, MARGINAL_BAND)));
                self.su_closed_form.record(p, ok);
            }
        }
        let ii = criterion_su(p, Setting::II, SuLevel::TwoEightCapThree)?;
        let iii = criterion_su(p, Setting::III, SuLevel::TwoEightCapThree)?;
        self.su_settings_ii_iii.record(p, ii.status == iii.status);

        for (det, k, setting, level) in [
            (Detector::Ghz, 2, Setting::I, SuLevel::TwoSep),
            (Detector::Ghz, 3, Setting::I, SuLevel::TwoEightCapThree),
            (Detector::W, 2, Setting::II, SuLevel::TwoSep),
            (Detector::W, 3, Setting::II, SuLevel::TwoEightCapThree),
        ] {
            let h = criterion_huber(p, &detection_vector(det)?, k)?;
            let cf = su_closed_form(setting, level, p).expect("published setting");
            let s = Status::from_margin(cf.root_form, MARGINAL_BAND);
            self.huber_su.record(p, compatible(h.status, s));
        }

        let (m1, m23) = criterion_majorization(p)?;
        for alpha in Alpha::sweep() {
            let (e1, e23) = criterion_entropy(p, alpha)?;
            let ok = (!m1.holds() || e1.not_violated()) && (!m23.holds() || e23.not_violated());
            self.entropy_majorization.record(p, ok);
        }
        Ok(())
    }
}

pub fn run(points: usize, tol: f64, seed: u64) -> CmdResult {
    if points == 0 {
        return Err(Failure::Usage("--points must be at least 1".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Failure::Usage(format!("--tol must be positive, got {tol}")));
    }
    println!("verify: {points} points, seed {seed}, tolerance {tol:e}");
    let mut suite = Suite::new();
    let mut errors = Vec::new();
    for p in uniform_points(points, seed) {
        if let Err(e) = suite.check(&p) {
            errors.push(e.to_string());
        }
    }

    let mut failed = false;
    for d in [
        &suite.spectra,
        &suite.reduction_spectrum,
        &suite.reshuffle,
        &suite.witnesses,
        &suite.concurrence,
    ] {
        let ok = d.max <= tol;
        failed |= !ok;
        let at =
            d.at.map(|p| format!(" at (g, w) = ({}, {})", p.g(), p.w()))
                .unwrap_or_default();
        println!(
            "{} {}: max deviation {:.3e}{}",
            if ok { "ok  " } else { "FAIL" },
            d.name,
            d.max,
            at
        );
    }
    for a in [
        &suite.ppt_closed_form,
        &suite.reduction_ppt,
        &suite.su_closed_form,
        &suite.su_settings_ii_iii,
        &suite.huber_su,
        &suite.entropy_majorization,
    ] {
        let ok = a.failures.is_empty();
        failed |= !ok;
        println!(
            "{} {}: {}/{} agree",
            if ok { "ok  " } else { "FAIL" },
            a.name,
            a.checked - a.failures.len(),
            a.checked
        );
        for p in a.failures.iter().take(5) {
            println!("     disagreement at (g, w) = ({}, {})", p.g(), p.w());
        }
    }
    for e in errors.iter().take(10) {
        println!("FAIL {e}");
    }
    failed |= !errors.is_empty();

    if failed {
        println!("result: FAIL");
        Err(Failure::Consistency("verification failed".into()))
    } else {
        println!("result: PASS");
        Ok(())
    }
}
