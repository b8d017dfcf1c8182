//! The sequence corpus: group extensions, Deligne products, bundled
//! sequence files and single-point mutations of all of them.

use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{extension_sequence, restriction_sequence, GroupTable};
use crate::interval::format_rational;
use crate::io::{load_document, Document};
use crate::module::{is_indecomposable, BasedModule};
use crate::perron::PerronOptions;
use crate::ring::FusionRing;
use crate::sequence::{
    check_exact, make_deligne_sequence, regular_image_check, reroute_f, shrink_a, AlphaDecision, SequenceData,
    Verdict,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Extension,
    Deligne,
    File,
    /// `A` replaced by a proper based subring.
    ShrinkA,
    /// Restriction to a non-normal subgroup.
    NonNormal,
    /// One unit of multiplicity moved within one column of `F`.
    RerouteF,
}

impl Family {
    pub fn is_mutation(self) -> bool {
        matches!(self, Family::ShrinkA | Family::NonNormal | Family::RerouteF)
    }
}

/// Inputs the cases are generated from.
#[derive(Clone, Debug, Default)]
pub struct CorpusSource {
    pub groups: Vec<(String, GroupTable)>,
    pub rings: Vec<(String, FusionRing)>,
    pub modules: Vec<(String, BasedModule)>,
    pub sequences: Vec<(String, SequenceData)>,
}

impl CorpusSource {
    pub fn is_empty(&self) -> bool {
        self.groups.is_empty() && self.rings.is_empty() && self.modules.is_empty() && self.sequences.is_empty()
    }

    /// Reads `groups/`, `rings/`, `modules/` and `sequences/` under `root`.
    /// Missing subdirectories are treated as empty.
    pub fn from_dir(root: &Path) -> Result<Self> {
        let mut src = CorpusSource::default();
        for sub in ["groups", "rings", "modules", "sequences"] {
            let dir = root.join(sub);
            if !dir.is_dir() {
                continue;
            }
            let mut paths: Vec<_> = std::fs::read_dir(&dir)
                .map_err(|source| Error::Io {
                    path: dir.display().to_string(),
                    source,
                })?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            paths.sort();
            for path in paths {
                let name = path.file_stem().expect("json file").to_string_lossy().into_owned();
                match load_document(&path)? {
                    Document::Group(g) => src.groups.push((name, g)),
                    Document::Ring(r) => src.rings.push((name, r)),
                    Document::Module(m) => src.modules.push((name, m)),
                    Document::Sequence(s) => src.sequences.push((name, s)),
                }
            }
        }
        Ok(src)
    }
}

#[derive(Clone, Debug)]
pub struct CorpusCase {
    pub id: String,
    pub family: Family,
    /// Expected verdict: `Some(true)` exact, `Some(false)` not exact.
    pub expect_exact: Option<bool>,
    pub data: SequenceData,
}

fn usable_c(r: &FusionRing) -> bool {
    r.is_semisimple() && !r.is_multifusion()
}

fn base_cases(src: &CorpusSource) -> Vec<Result<CorpusCase>> {
    let mut jobs: Vec<Box<dyn Fn() -> Result<CorpusCase> + Send + Sync + '_>> = Vec::new();
    for (name, g) in &src.groups {
        for (i, n) in g.normal_subgroups().into_iter().enumerate() {
            let id = format!("ext/{name}/{i:02}");
            jobs.push(Box::new(move || {
                Ok(CorpusCase {
                    id: id.clone(),
                    family: Family::Extension,
                    expect_exact: Some(true),
                    data: extension_sequence(g, &n).map_err(|e| tag(&id, e))?,
                })
            }));
        }
        let normal = g.normal_subgroups();
        let non_normal = g.subgroups().into_iter().filter(|h| !normal.contains(h));
        for (i, h) in non_normal.enumerate() {
            let id = format!("nonnormal/{name}/{i:02}");
            jobs.push(Box::new(move || {
                Ok(CorpusCase {
                    id: id.clone(),
                    family: Family::NonNormal,
                    expect_exact: Some(false),
                    data: restriction_sequence(g, &h).map_err(|e| tag(&id, e))?,
                })
            }));
        }
    }
    for (mname, m) in &src.modules {
        if !m.ring().is_semisimple() || !is_indecomposable(m) {
            continue;
        }
        for (cname, c) in src.rings.iter().filter(|(_, c)| usable_c(c)) {
            let id = format!("deligne/{mname}/{cname}");
            jobs.push(Box::new(move || {
                let data = make_deligne_sequence(m.ring_arc(), &Arc::new(c.clone()), m).map_err(|e| tag(&id, e))?;
                Ok(CorpusCase {
                    id: id.clone(),
                    family: Family::Deligne,
                    expect_exact: Some(true),
                    data,
                })
            }));
        }
    }
    for (name, s) in &src.sequences {
        jobs.push(Box::new(move || {
            Ok(CorpusCase {
                id: format!("file/{name}"),
                family: Family::File,
                expect_exact: None,
                data: s.clone(),
            })
        }));
    }
    jobs.par_iter().map(|job| job()).collect()
}

fn tag(id: &str, e: Error) -> Error {
    Error::Precondition(format!("{id}: {e}"))
}

/// Derived negative cases for one base case.
fn mutations(base: &CorpusCase) -> Vec<CorpusCase> {
    let mut out = Vec::new();
    if matches!(base.family, Family::Extension | Family::Deligne | Family::File) {
        for (kept, data) in shrink_a(&base.data) {
            let kept: Vec<String> = kept.iter().map(usize::to_string).collect();
            out.push(CorpusCase {
                id: format!("shrink/{}/{}", base.id, kept.join("-")),
                family: Family::ShrinkA,
                expect_exact: Some(false),
                data,
            });
        }
        let s = &base.data;
        let column = s.b.rank() - 1;
        if let Some(from) = s.f.iter().position(|row| !num_traits::Zero::is_zero(&row[column])) {
            let to = (from + 1) % s.f.len();
            if let Some(data) = reroute_f(s, column, from, to) {
                out.push(CorpusCase {
                    id: format!("reroute/{}", base.id),
                    family: Family::RerouteF,
                    expect_exact: Some(false),
                    data,
                });
            }
        }
    }
    out
}

/// All cases, sorted by id. Construction failures are returned as errors
/// alongside the cases that were built.
pub fn build_cases(src: &CorpusSource) -> (Vec<CorpusCase>, Vec<Error>) {
    let mut cases = Vec::new();
    let mut errors = Vec::new();
    for r in base_cases(src) {
        match r {
            Ok(c) => cases.push(c),
            Err(e) => errors.push(e),
        }
    }
    let derived: Vec<CorpusCase> = cases.par_iter().flat_map_iter(mutations).collect();
    cases.extend(derived);
    cases.sort_by(|a, b| a.id.cmp(&b.id));
    (cases, errors)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub family: Family,
    pub expect_exact: Option<bool>,
    pub valid: bool,
    pub verdict: Option<Verdict>,
    pub structural: Option<bool>,
    pub alpha_lo: Option<String>,
    pub alpha_hi: Option<String>,
    pub alpha_exact: Option<String>,
    pub alpha_decision: Option<AlphaDecision>,
    pub surjective: bool,
    pub cross_check: Option<bool>,
    pub breach: bool,
    /// `F(R_B) = α R_C ⊠ R_M ⊠ R_M∨`, checked on valid surjective cases.
    pub regular_image: Option<bool>,
    pub error: Option<String>,
}

impl CaseResult {
    pub fn is_exact(&self) -> bool {
        matches!(self.verdict, Some(Verdict::Exact))
    }

    pub fn is_undecided(&self) -> bool {
        matches!(self.verdict, Some(Verdict::Undecided { .. }))
    }

    pub fn meets_expectation(&self) -> Option<bool> {
        self.expect_exact.map(|e| self.error.is_none() && !self.is_undecided() && e == self.is_exact())
    }
}

pub fn run_case(case: &CorpusCase, opts: &PerronOptions) -> CaseResult {
    let mut res = CaseResult {
        id: case.id.clone(),
        family: case.family,
        expect_exact: case.expect_exact,
        valid: false,
        verdict: None,
        structural: None,
        alpha_lo: None,
        alpha_hi: None,
        alpha_exact: None,
        alpha_decision: None,
        surjective: false,
        cross_check: None,
        breach: false,
        regular_image: None,
        error: None,
    };
    let report = match check_exact(&case.data, opts) {
        Ok(r) => r,
        Err(e) => {
            res.error = Some(e.to_string());
            return res;
        }
    };
    res.valid = report.valid;
    res.surjective = report.surjective;
    res.breach = report.is_breach();
    res.cross_check = report.cross_check;
    if report.valid {
        res.structural = Some(report.kernel_matches_image && report.normal);
        res.alpha_decision = Some(report.alpha_decision);
    }
    if let Some(a) = &report.alpha {
        res.alpha_lo = Some(format_rational(a.interval.lo()));
        res.alpha_hi = Some(format_rational(a.interval.hi()));
        res.alpha_exact = a.exact.as_ref().map(format_rational);
    }
    res.verdict = Some(report.verdict);
    if report.valid && report.surjective {
        match regular_image_check(&case.data, opts) {
            Ok(r) => res.regular_image = Some(r.holds),
            Err(e) => res.error = Some(e.to_string()),
        }
    }
    res
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub cases: usize,
    pub exact: usize,
    pub not_exact: usize,
    pub undecided: usize,
    pub errors: usize,
    /// Cases where both criteria were decided independently.
    pub decidable: usize,
    pub agreements: usize,
    pub disagreements: usize,
    pub breaches: usize,
    pub mutations: usize,
    pub mutations_not_exact: usize,
    pub expectation_failures: usize,
    pub regular_image_checked: usize,
    pub regular_image_failures: usize,
}

impl CorpusSummary {
    pub fn from_results(results: &[CaseResult]) -> Self {
        let mut s = CorpusSummary {
            cases: results.len(),
            ..Default::default()
        };
        for r in results {
            match &r.verdict {
                Some(Verdict::Exact) => s.exact += 1,
                Some(Verdict::NotExact { .. }) => s.not_exact += 1,
                Some(Verdict::Undecided { .. }) => s.undecided += 1,
                None => {}
            }
            if r.error.is_some() {
                s.errors += 1;
            }
            match r.cross_check {
                Some(true) => {
                    s.decidable += 1;
                    s.agreements += 1;
                }
                Some(false) => {
                    s.decidable += 1;
                    s.disagreements += 1;
                }
                None => {}
            }
            s.breaches += r.breach as usize;
            if r.family.is_mutation() {
                s.mutations += 1;
                s.mutations_not_exact += matches!(r.verdict, Some(Verdict::NotExact { .. })) as usize;
            }
            s.expectation_failures += (r.meets_expectation() == Some(false)) as usize;
            if let Some(ok) = r.regular_image {
                s.regular_image_checked += 1;
                s.regular_image_failures += !ok as usize;
            }
        }
        s
    }

    /// Cross-check agreement in percent, `None` when nothing was decidable.
    pub fn agreement_percent(&self) -> Option<f64> {
        (self.decidable > 0).then(|| 100.0 * self.agreements as f64 / self.decidable as f64)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusRun {
    pub results: Vec<CaseResult>,
    /// Cases that could not be constructed.
    pub build_errors: Vec<String>,
    pub summary: CorpusSummary,
}

/// Certifies every case whose id equals `filter` or starts with it
/// (all cases when `None`), in parallel; results are sorted by id.
pub fn run_corpus(src: &CorpusSource, filter: Option<&str>, opts: &PerronOptions) -> CorpusRun {
    let (mut cases, errors) = build_cases(src);
    if let Some(f) = filter {
        if cases.iter().any(|c| c.id == f) {
            cases.retain(|c| c.id == f);
        } else {
            cases.retain(|c| c.id.starts_with(f));
        }
    }
    let mut results: Vec<CaseResult> = cases.par_iter().map(|c| run_case(c, opts)).collect();
    results.sort_by(|a, b| a.id.cmp(&b.id));
    let mut summary = CorpusSummary::from_results(&results);
    summary.errors += errors.len();
    CorpusRun {
        results,
        build_errors: errors.iter().map(ToString::to_string).collect(),
        summary,
    }
}
