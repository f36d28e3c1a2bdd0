//! Text, JSON and CSV renderings of reports.

use uncert_core::bounds::BoundReport;
use uncert_core::search::{CheckKind, SuiteReport, TightnessResult};

use crate::CliError;

pub const CSV_HEADER: &str = "id,k,d,product,w_id,w_perm,t22,chain,norm,ratio";

pub fn bound_report_text(id: &str, report: &BoundReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "instance {id}: k = {}, d = {}\n",
        report.k, report.dim
    ));
    out.push_str(&format!(
        "  deviation product      {:.12}\n",
        report.deviation_product
    ));
    if let (Some(w), Some(perm)) = (report.radius_permuted, report.permutation.as_ref()) {
        out.push_str(&format!(
            "  radius (best order)    {:.12}  via {:?}\n",
            w, perm
        ));
    }
    out.push_str(&format!(
        "  radius (given order)   {:.12}\n",
        report.radius_exact_id
    ));
    out.push_str(&format!(
        "  k-observable bound     {:.12}\n",
        report.bound_theorem22
    ));
    if let Some(s) = report.bound_schrodinger {
        out.push_str(&format!("  pair correlation bound {:.12}\n", s));
    }
    out.push_str(&format!(
        "  chained commutators    {:.12}\n",
        report.bound_robertson_chain
    ));
    if let Some(sq) = report.robertson_chain_squared {
        out.push_str(&format!("    (squared form        {:.12})\n", sq));
    }
    out.push_str(&format!("  chain norm             {:.12}\n", report.norm_based));
    out.push_str(&format!(
        "  gaps: product-norm {:.3e}, norm-radius {:.3e}{}\n",
        report.flags.gap_product_norm,
        report.flags.gap_norm_radius,
        if report.flags.tight { "  [tight]" } else { "" }
    ));
    out
}

pub fn bound_report_csv(id: &str, report: &BoundReport) -> String {
    let ratio = if report.deviation_product > 1e-12 {
        format!("{}", report.bound_theorem22 / report.deviation_product)
    } else {
        String::new()
    };
    let w_perm = report
        .radius_permuted
        .map(|w| format!("{w}"))
        .unwrap_or_default();
    format!(
        "{}\n{},{},{},{},{},{},{},{},{},{}",
        CSV_HEADER,
        id,
        report.k,
        report.dim,
        report.deviation_product,
        report.radius_exact_id,
        w_perm,
        report.bound_theorem22,
        report.bound_robertson_chain,
        report.norm_based,
        ratio
    )
}

pub fn to_json_pretty<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub fn suite_report_text(report: &SuiteReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "suite {} (samples = {}, seed = {})\n",
        report.suite, report.samples, report.seed
    ));
    for check in &report.checks {
        let relation = match check.kind {
            CheckKind::Equality => "=",
            CheckKind::LowerBound => ">=",
        };
        out.push_str(&format!(
            "  [{}] {:<48} lhs {relation} rhs: {:+.6e} vs {:+.6e}, margin {:+.3e} (tol {:.1e})\n",
            if check.pass { "PASS" } else { "FAIL" },
            check.name,
            check.lhs,
            check.rhs,
            check.margin,
            check.tolerance
        ));
    }
    out.push_str(&format!(
        "{}: {}/{} checks passed\n",
        if report.passed { "PASS" } else { "FAIL" },
        report.checks.iter().filter(|c| c.pass).count(),
        report.checks.len()
    ));
    out
}

pub fn tightness_text(result: &TightnessResult) -> String {
    format!(
        "target {} over {} samples (seed {}): ratio {:.9} = bound {:.9} / product {:.9}\n\
         best sample {} | evaluated {}, skipped {}, mean ratio {:.6}, refine +{}/-{}\n",
        result.target,
        result.samples,
        result.seed,
        result.ratio,
        result.bound,
        result.product,
        result.best_sample_index,
        result.trace.evaluated,
        result.trace.skipped_degenerate,
        result.trace.mean_ratio,
        result.trace.refine_accepted,
        result.trace.refine_rejected,
    )
}
