//! Executes the checks of a loaded diagram.

use std::time::Instant;

use gysin::braid::{splice, validate_braid, BraidReport, Pivot, StrandCheck};
use gysin::cochain::validate_complex;
use gysin::exactness::{
    acyclicity_transfer, check_exact, les_of_ses, validate_ses, ExactnessReport, LongSequence,
    TransferVerdict,
};
use gysin::topology::instances::InstanceReport;
use gysin::topology::{catalog, verify_instance, verify_tables, SequenceKind};
use gysin::Error;
use serde_json::{json, Value};

use crate::document::{matrix_decl, CheckDecl, Diagram, Instance, Object, PivotName};
use crate::report::{CheckOutcome, Status};

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Record wall-clock time per check.
    pub timings: bool,
}

struct Outcome {
    status: Status,
    summary: String,
    details: Value,
}

impl Outcome {
    fn new(status: Status, summary: impl Into<String>, details: Value) -> Self {
        Outcome {
            status,
            summary: summary.into(),
            details,
        }
    }

    fn engine_error(e: &Error) -> Self {
        Outcome::new(Status::StructuralError, e.to_string(), json!({ "error": e.to_string() }))
    }
}

/// Runs every check in declaration order. A `catalog` check expands to one
/// outcome per shipped instance.
pub fn run(diagram: &Diagram, opts: RunOptions) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for (index, check) in diagram.checks.iter().enumerate() {
        if let CheckDecl::Catalog {} = check {
            for inst in catalog() {
                let start = Instant::now();
                let kinds = inst.supported_kinds();
                let o = instance_outcome(&verify_instance(&inst, &kinds));
                out.push(finish(index, check, Some(inst.name.clone()), o, start, opts));
            }
            continue;
        }
        let start = Instant::now();
        let o = run_one(diagram, check);
        out.push(finish(index, check, check.target().map(String::from), o, start, opts));
    }
    out
}

fn finish(
    index: usize,
    check: &CheckDecl,
    target: Option<String>,
    o: Outcome,
    start: Instant,
    opts: RunOptions,
) -> CheckOutcome {
    CheckOutcome {
        index,
        check: check.tag().into(),
        target,
        status: o.status,
        summary: o.summary,
        details: o.details,
        seconds: opts.timings.then(|| start.elapsed().as_secs_f64()),
    }
}

fn run_one(d: &Diagram, check: &CheckDecl) -> Outcome {
    let target = check.target().expect("targeted check");
    let Some(obj) = d.get(target) else {
        return Outcome::new(
            Status::StructuralError,
            format!("no object named {target:?}"),
            Value::Null,
        );
    };
    match (check, obj) {
        (CheckDecl::CheckComplex { .. }, Object::Complex(c)) => {
            let r = validate_complex(c);
            let defects: Vec<Value> = r
                .defects
                .iter()
                .map(|x| json!({ "degree": x.degree, "residual": matrix_decl(&x.residual) }))
                .collect();
            let details = json!({ "lo": c.lo(), "dims": c.spaces().dims(), "defects": defects });
            if r.is_ok() {
                Outcome::new(Status::Pass, "d∘d = 0 in every degree", details)
            } else {
                Outcome::new(Status::Fail, format!("d∘d ≠ 0 in degrees {:?}", r.degrees()), details)
            }
        }
        (CheckDecl::CheckSes { .. }, Object::Ses(s)) => {
            let r = validate_ses(s);
            let details = json!({
                "invalid_complexes": r.invalid_complexes,
                "invalid_maps": r.invalid_maps,
                "failures": r.failures.iter()
                    .map(|(k, c)| json!({ "degree": k, "condition": c.to_string() }))
                    .collect::<Vec<_>>(),
            });
            let status = if r.is_ok() { Status::Pass } else { Status::Fail };
            Outcome::new(status, r.to_string(), details)
        }
        (CheckDecl::Les { .. }, Object::Ses(s)) => {
            let r = validate_ses(s);
            if !r.is_ok() {
                return Outcome::new(
                    Status::StructuralError,
                    format!("not a short exact sequence: {r}"),
                    Value::Null,
                );
            }
            match les_of_ses(s) {
                Ok(ls) => exactness_outcome(&ls),
                Err(e) => Outcome::engine_error(&e),
            }
        }
        (CheckDecl::CheckExact { .. }, Object::LongSequence(ls)) => exactness_outcome(ls),
        (CheckDecl::BraidValidate { .. }, Object::Braid(b)) => {
            let r = validate_braid(b);
            let status = if r.is_commutative_exact() { Status::Pass } else { Status::Fail };
            let summary = if r.is_commutative_exact() {
                "commutative with four exact strands".to_string()
            } else {
                r.to_string()
            };
            Outcome::new(status, summary, braid_details(&r))
        }
        (CheckDecl::BraidSplice { pivot, .. }, Object::Braid(b)) => splice_outcome(b, *pivot),
        (CheckDecl::Transfer { .. }, Object::Transfer(t)) => match acyclicity_transfer(t) {
            Ok(r) => {
                let details = json!({
                    "verdict": format!("{:?}", r.verdict),
                    "structural": r.structural.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    "top_defects": r.top_defects,
                    "middle_defects": r.middle_defects,
                    "bottom_defects": r.bottom_defects,
                    "les_exact": r.les_exact,
                });
                match r.verdict {
                    TransferVerdict::Certified => {
                        Outcome::new(Status::Pass, "top and middle rows exact; bottom row certified", details)
                    }
                    TransferVerdict::HypothesisFailed => {
                        Outcome::new(Status::Fail, "top or middle row is not exact", details)
                    }
                    TransferVerdict::Structural => {
                        let first = r.structural.first().map(|s| s.to_string()).unwrap_or_default();
                        Outcome::new(Status::StructuralError, first, details)
                    }
                }
            }
            Err(e) => Outcome::engine_error(&e),
        },
        (CheckDecl::VerifyInstance { kinds, .. }, Object::Instance(inst)) => {
            let requested: Vec<SequenceKind> = kinds.iter().filter_map(|k| k.parse().ok()).collect();
            let report = match inst.as_ref() {
                Instance::Simplicial(i) => {
                    let ks = if requested.is_empty() { i.supported_kinds() } else { requested };
                    verify_instance(i, &ks)
                }
                Instance::Tables(t) => {
                    let ks = if requested.is_empty() { t.supported_kinds() } else { requested };
                    verify_tables(t, &ks)
                }
            };
            instance_outcome(&report)
        }
        (c, o) => Outcome::new(
            Status::StructuralError,
            format!("{} cannot run on a {}", c.tag(), o.kind()),
            Value::Null,
        ),
    }
}

fn nodes_json(ls: &LongSequence) -> Value {
    ls.nodes()
        .iter()
        .map(|n| json!({ "label": n.label, "degree": n.degree, "dim": n.dim }))
        .collect()
}

fn exactness_json(r: &ExactnessReport) -> Value {
    json!({
        "defects": r.defects,
        "total_defect": r.total_defect(),
        "segments": r.segments.iter()
            .map(|s| json!({ "start": s.start, "end": s.end, "alternating_sum": s.alternating_sum }))
            .collect::<Vec<_>>(),
    })
}

fn exactness_outcome(ls: &LongSequence) -> Outcome {
    match check_exact(ls) {
        Ok(r) => {
            let details = json!({ "nodes": nodes_json(ls), "exactness": exactness_json(&r) });
            if r.is_exact() {
                Outcome::new(Status::Pass, format!("exact at all {} nodes", ls.len()), details)
            } else {
                let at: Vec<usize> = (0..r.defects.len()).filter(|&i| r.defects[i] > 0).collect();
                Outcome::new(
                    Status::Fail,
                    format!("total defect {} at nodes {at:?}", r.total_defect()),
                    details,
                )
            }
        }
        Err(Error::SequenceNotAComplex(p)) => Outcome::new(
            Status::Fail,
            format!("consecutive arrows at positions {p:?} do not compose to zero"),
            json!({ "nodes": nodes_json(ls), "not_a_complex": p }),
        ),
        Err(e) => Outcome::engine_error(&e),
    }
}

fn braid_details(r: &BraidReport) -> Value {
    json!({
        "commutativity": r.commutativity.iter().map(|c| json!({
            "relation": c.relation.to_string(),
            "degree": c.degree,
            "residual": matrix_decl(&c.residual),
        })).collect::<Vec<_>>(),
        "strands": r.strands.iter().map(|(s, c)| match c {
            StrandCheck::Checked(x) => json!({
                "strand": s.number(), "exact": x.is_exact(), "exactness": exactness_json(x),
            }),
            StrandCheck::NotAComplex(p) => json!({
                "strand": s.number(), "exact": false, "not_a_complex": p,
            }),
        }).collect::<Vec<_>>(),
    })
}

fn splice_outcome(b: &gysin::braid::Braid, pivot: PivotName) -> Outcome {
    let p = match pivot {
        PivotName::E => Pivot::E,
        PivotName::F => Pivot::F,
    };
    match splice(b, p) {
        Ok(ls) => {
            let mut o = exactness_outcome(&ls);
            if o.status == Status::Pass {
                let dims: Vec<String> = ls.dims().iter().map(|d| d.to_string()).collect();
                o.summary = format!("spliced sequence is exact; dims {}", dims.join(" "));
            }
            o
        }
        Err(Error::BraidRefused(r)) => Outcome::new(
            Status::Fail,
            format!("braid refused: {r}"),
            json!({ "refused": braid_details(&r) }),
        ),
        Err(e) => Outcome::engine_error(&e),
    }
}

fn instance_outcome(r: &InstanceReport) -> Outcome {
    let mut status = Status::Pass;
    let mut failing = Vec::new();
    let kinds: Vec<Value> = r
        .kinds
        .iter()
        .map(|(k, res)| match res {
            Ok(kr) => {
                if !kr.passed() {
                    if status == Status::Pass {
                        status = Status::Fail;
                    }
                    failing.push(k.tag());
                }
                json!({
                    "kind": k.tag(),
                    "passed": kr.passed(),
                    "dims": kr.dims,
                    "feasible": kr.feasibility.feasible,
                    "segments_balanced": kr.segments_balanced,
                    "explicit": kr.explicit.as_ref().map(|e| json!({
                        "dims_agree": e.dims_agree,
                        "exactness": exactness_json(&e.exactness),
                    })),
                })
            }
            Err(e) => {
                status = Status::StructuralError;
                failing.push(k.tag());
                json!({ "kind": k.tag(), "error": e.to_string() })
            }
        })
        .collect();
    let tags: Vec<&str> = r.kinds.iter().map(|(k, _)| k.tag()).collect();
    let summary = match status {
        Status::Pass => format!("all pass: {}", tags.join(", ")),
        _ => format!("failing kinds: {}", failing.join(", ")),
    };
    Outcome::new(status, summary, json!({ "instance": r.instance, "kinds": kinds }))
}
