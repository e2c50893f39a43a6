use serde::Serialize;

use qsep_core::classify::{all_criteria, classify_verdicts, evaluate_criteria, ClassReport};
use qsep_core::concurrence::concurrence_23_closed_form;
use qsep_core::tripartite::{witness_expectations, WitnessValues};
use qsep_core::verdict::{Alpha, CriterionId, CriterionVerdict, Marginal};
use qsep_core::{Config, SimplexPoint};

use crate::CmdResult;

#[derive(Debug, Serialize)]
struct EvalReport {
    point: SimplexPoint,
    d: f64,
    psd_tol: f64,
    verdicts: Vec<CriterionVerdict>,
    witnesses: WitnessValues,
    concurrence_23: f64,
    report: ClassReport,
}

fn criteria(extra_alphas: &[Alpha]) -> Vec<CriterionId> {
    let mut ids = all_criteria();
    for &alpha in extra_alphas {
        for m in [Marginal::Rho1, Marginal::Rho23] {
            let id = CriterionId::Entropy(m, alpha);
            if !ids.contains(&id) {
                ids.push(id);
            }
        }
    }
    ids
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn print_human(r: &EvalReport) {
    println!(
        "point: g = {}, w = {}, d = {}",
        r.point.g(),
        r.point.w(),
        r.d
    );
    println!();
    println!("{:<24} {:<9} {:>24}", "criterion", "verdict", "margin");
    for v in &r.verdicts {
        println!(
            "{:<24} {:<9} {:>24.16e}",
            v.id.to_string(),
            v.status.as_str(),
            v.margin
        );
    }
    println!();
    println!("witness W_GHZ: {:.16e}", r.witnesses.w_ghz);
    println!("witness W_W1:  {:.16e}", r.witnesses.w_w1);
    println!("witness W_W2:  {:.16e}", r.witnesses.w_w2);
    println!("concurrence C(rho23): {:.16e}", r.concurrence_23);
    println!();
    let rep = &r.report;
    println!("possible classes: {{{}}}", join(&rep.possible_classes));
    println!("exact: {}", rep.exact);
    println!("slocc: {}", rep.slocc.as_str());
    println!("PPTES certified: {}", rep.pptes_certified);
    if !rep.marginal.is_empty() {
        println!("marginal: {}", join(&rep.marginal));
    }
    for e in &rep.exclusions {
        println!("excluded {} by {}", e.class, e.criterion);
    }
}

pub fn run(g: f64, w: f64, alphas: &[Alpha], json: bool, cfg: &Config) -> CmdResult {
    let p = SimplexPoint::new(g, w)?;
    let verdicts = evaluate_criteria(&p, &criteria(alphas))?;
    let report = classify_verdicts(&p, &verdicts)?;
    let out = EvalReport {
        point: p,
        d: p.d(),
        psd_tol: cfg.psd_tol,
        verdicts,
        witnesses: witness_expectations(&p)?,
        concurrence_23: concurrence_23_closed_form(&p)?,
        report,
    };
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("report serializes")
        );
    } else {
        print_human(&out);
    }
    Ok(())
}
