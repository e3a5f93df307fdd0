//! Batch front-end for the gysin engine: loads diagram files, runs their
//! checks and renders reports. Exit status is 0 when every check passes,
//! 1 when some check fails and 2 on load or structural errors.

pub mod document;
pub mod error;
pub mod report;
pub mod run;

use std::io::Read;
use std::path::Path;

use gysin::topology::instances::instance_braid;
use gysin::topology::find_instance;

use crate::document::{CheckDecl, Diagram, Instance, Object, PivotName};
use crate::error::LoadError;
use crate::report::Report;
use crate::run::RunOptions;

/// Reads a document from a path, or from standard input when the path is `-`.
pub fn read_input(path: &Path) -> Result<String, LoadError> {
    let io = |source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

/// Parses `text` and runs its checks.
pub fn check_document(source: &str, text: &str, opts: RunOptions) -> Report {
    match document::parse(text) {
        Ok(d) => Report::new(source, run::run(&d, opts)),
        Err(e) => Report::load_failure(source, &e),
    }
}

pub fn check_path(path: &Path, opts: RunOptions) -> Report {
    let source = path.display().to_string();
    match read_input(path) {
        Ok(text) => check_document(&source, &text, opts),
        Err(e) => Report::load_failure(source, &e),
    }
}

/// Verifies every shipped instance on all its supported kinds.
pub fn catalog_report(opts: RunOptions) -> Report {
    let d = Diagram::from_parts(Vec::new(), vec![CheckDecl::Catalog {}]);
    Report::new("catalog", run::run(&d, opts))
}

fn unknown_instance(field: &str, name: &str) -> LoadError {
    LoadError::DanglingReference {
        object: "command line".into(),
        field: field.into(),
        name: name.into(),
    }
}

/// Verifies one shipped instance; `kinds` are sequence kind tags, all
/// supported kinds when empty.
pub fn verify_report(name: &str, kinds: &[String], opts: RunOptions) -> Report {
    let source = format!("verify {name}");
    let Some(inst) = find_instance(name) else {
        return Report::load_failure(source, &unknown_instance("instance", name));
    };
    for k in kinds {
        if k.parse::<gysin::topology::SequenceKind>().is_err() {
            let e = LoadError::Check {
                index: 0,
                detail: format!("unknown sequence kind {k:?}"),
            };
            return Report::load_failure(source, &e);
        }
    }
    let d = Diagram::from_parts(
        vec![(name.into(), Object::Instance(Box::new(Instance::Simplicial(inst))))],
        vec![CheckDecl::VerifyInstance {
            target: name.into(),
            kinds: kinds.to_vec(),
        }],
    );
    Report::new(source, run::run(&d, opts))
}

/// Splices a braid declared in `file`, or the braid of a shipped explicit
/// instance when no file is given.
pub fn splice_report(name: &str, pivot: PivotName, file: Option<&Path>, opts: RunOptions) -> Report {
    let source = format!("splice {name}");
    let check = CheckDecl::BraidSplice {
        target: name.into(),
        pivot,
    };
    let braid = match file {
        Some(path) => {
            let loaded = read_input(path).and_then(|t| document::parse(&t));
            match loaded {
                Ok(d) => match d.get(name) {
                    Some(Object::Braid(b)) => b.clone(),
                    Some(other) => {
                        let e = LoadError::WrongKind {
                            object: "command line".into(),
                            field: "braid".into(),
                            name: name.into(),
                            expected: "braid",
                            found: other.kind(),
                        };
                        return Report::load_failure(source, &e);
                    }
                    None => return Report::load_failure(source, &unknown_instance("braid", name)),
                },
                Err(e) => return Report::load_failure(source, &e),
            }
        }
        None => {
            let Some(inst) = find_instance(name) else {
                return Report::load_failure(source, &unknown_instance("braid", name));
            };
            match instance_braid(&inst) {
                Ok(b) => b,
                Err(e) => return Report::load_failure(source, &LoadError::engine(name, e)),
            }
        }
    };
    let d = Diagram::from_parts(vec![(name.into(), Object::Braid(braid))], vec![check]);
    Report::new(source, run::run(&d, opts))
}
