//! Plain-text output.

use std::fmt::Write;
use std::time::Duration;

use fusionseq::corpus::{CaseResult, CorpusRun};
use fusionseq::interval::{format_rational, parse_rational};
use fusionseq::{BasedModule, Interval, ExactnessReport, FusionRing, ModuleFPData, PerronResult, ValidationReport, Verdict};

pub fn validation(kind: &str, rep: &ValidationReport) -> String {
    if rep.is_valid() {
        format!("{kind}: valid\n")
    } else {
        format!("{kind}: invalid\n{rep}\n")
    }
}

fn perron_value(p: &PerronResult) -> String {
    match &p.exact_integer {
        Some(n) => n.to_string(),
        None => p.interval().to_string(),
    }
}

pub fn ring_dims(r: &FusionRing, dims: &[PerronResult], cat: &PerronResult) -> String {
    let mut s = String::new();
    for (i, d) in dims.iter().enumerate() {
        let _ = writeln!(s, "FPdim({}) = {}", r.label(i), perron_value(d));
    }
    let _ = writeln!(s, "FPdim(category) = {}", perron_value(cat));
    s
}

pub fn module_dims(m: &BasedModule, data: &ModuleFPData) -> String {
    let mut s = String::new();
    for (j, d) in data.dims.iter().enumerate() {
        let label = m.labels().map_or_else(|| format!("M{j}"), |l| l[j].clone());
        let _ = writeln!(s, "FPdim({label}) = {d}");
    }
    let _ = writeln!(s, "scale = {}", data.normalization_scale);
    s
}

pub fn perron(p: &PerronResult) -> String {
    let v: Vec<String> = p.eigvec.iter().map(format_rational).collect();
    format!("lambda = {}\nvector = [{}]\n", perron_value(p), v.join(", "))
}

fn verdict(v: &Verdict) -> String {
    match v {
        Verdict::Exact => "exact".into(),
        Verdict::NotExact { reasons } => {
            let r: Vec<String> = reasons
                .iter()
                .map(|r| serde_json::to_value(r).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default())
                .collect();
            format!("not exact ({})", r.join(", "))
        }
        Verdict::Undecided { tolerance } => format!("undecided at tolerance {tolerance}"),
    }
}

pub fn exactness(r: &ExactnessReport) -> String {
    let mut s = String::new();
    if !r.valid {
        let _ = writeln!(s, "invalid sequence data");
        for v in &r.violations {
            let _ = writeln!(s, "  {:?} at {:?}: {}", v.kind, v.indices, v.detail);
        }
    } else {
        let _ = writeln!(s, "kernel        {:?}", r.kernel);
        let _ = writeln!(s, "image of A    {:?}", r.iota_image);
        let _ = writeln!(s, "surjective    {}", r.surjective);
        let _ = writeln!(s, "normal        {}", r.normal);
        if let Some(a) = &r.alpha {
            let shown = a.exact.as_ref().map_or_else(|| a.interval.to_string(), format_rational);
            let _ = writeln!(s, "alpha         {shown}");
        }
        if let Some(c) = r.cross_check {
            let _ = writeln!(s, "cross-check   {}", if c { "agree" } else { "DISAGREE" });
        }
    }
    let _ = writeln!(s, "verdict       {}", verdict(&r.verdict));
    s
}

fn case_line(c: &CaseResult) -> String {
    let verdict = match (&c.error, &c.verdict) {
        (Some(e), _) => format!("error: {e}"),
        (None, Some(v)) => verdict(v),
        (None, None) => "-".into(),
    };
    let alpha = c.alpha_exact.clone().unwrap_or_else(|| match (&c.alpha_lo, &c.alpha_hi) {
        (Some(lo), Some(hi)) => match (parse_rational(lo), parse_rational(hi)) {
            (Ok(lo), Ok(hi)) => Interval::new(lo, hi).to_string(),
            _ => format!("[{lo}, {hi}]"),
        },
        _ => "-".into(),
    });
    let cross = match c.cross_check {
        Some(true) => "agree",
        Some(false) => "DISAGREE",
        None => "-",
    };
    let flag = if c.meets_expectation() != Some(false) { "" } else { "  UNEXPECTED" };
    format!("{:<40} {:<34} alpha {:<14} {}{}", c.id, verdict, alpha, cross, flag)
}

pub fn corpus(run: &CorpusRun, elapsed: Duration) -> String {
    let mut s = String::new();
    for c in &run.results {
        let _ = writeln!(s, "{}", case_line(c));
    }
    for e in &run.build_errors {
        let _ = writeln!(s, "build error: {e}");
    }
    let m = &run.summary;
    let _ = writeln!(s);
    let _ = writeln!(
        s,
        "{} cases: {} exact, {} not exact, {} undecided, {} errors",
        m.cases, m.exact, m.not_exact, m.undecided, m.errors
    );
    let pct = m.agreement_percent().map_or_else(|| "n/a".into(), |p| format!("{p:.2}%"));
    let _ = writeln!(
        s,
        "cross-check: {} of {} independently decided cases agree ({pct}), {} breaches",
        m.agreements, m.decidable, m.breaches
    );
    let _ = writeln!(s, "mutations: {} of {} not exact", m.mutations_not_exact, m.mutations);
    let _ = writeln!(
        s,
        "regular image: {} checked, {} failures",
        m.regular_image_checked, m.regular_image_failures
    );
    let _ = writeln!(s, "expectation failures: {}", m.expectation_failures);
    let _ = writeln!(s, "time: {:.2?}", elapsed);
    s
}
