//! The diagram file format and its translation to engine objects.
//!
//! A document is a JSON object with a format tag, a list of named objects
//! and a list of checks. Objects refer to each other by name and may be
//! declared in any order. Matrices are row-major lists of `"p/q"` strings
//! with their dimensions stated explicitly.

use std::collections::{BTreeMap, HashMap};

use gysin::braid::{braid_from_double_ses, Arrow, Braid, DoubleSesDiagram, Family};
use gysin::cochain::{ChainMap, CochainComplex, GradedSpace};
use gysin::exactness::{LongSequence, SequenceNode, ShortExactSequence, TransferDiagram};
use gysin::linalg::{format_rational, parse_rational, Matrix};
use gysin::topology::{
    find_instance, ActionClass, ActionInstance, Group, ModelDims, SimplicialComplex,
    SimplicialInvolution, TableInstance,
};
use serde::{Deserialize, Serialize};

use crate::error::LoadError;

pub const FORMAT: &str = "gysin-diagram/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentFile {
    pub format: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub objects: Vec<ObjectDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckDecl>,
}

impl Default for DocumentFile {
    fn default() -> Self {
        DocumentFile {
            format: FORMAT.into(),
            objects: Vec::new(),
            checks: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDecl {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradedDecl {
    pub lo: i32,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDecl {
    pub degree: i32,
    pub matrix: MatrixDecl,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDecl {
    pub label: String,
    pub degree: i32,
    pub dim: usize,
}

/// Per-family dimension lists of an explicit braid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct FamilyDims {
    pub A: Vec<usize>,
    pub B: Vec<usize>,
    pub C: Vec<usize>,
    pub D: Vec<usize>,
    pub E: Vec<usize>,
    pub F: Vec<usize>,
}

/// Per-arrow matrix lists of an explicit braid, one matrix per degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct ArrowMatrices {
    pub AB: Vec<MatrixDecl>,
    pub BF: Vec<MatrixDecl>,
    pub FA: Vec<MatrixDecl>,
    pub CD: Vec<MatrixDecl>,
    pub DF: Vec<MatrixDecl>,
    pub FC: Vec<MatrixDecl>,
    pub CE: Vec<MatrixDecl>,
    pub EB: Vec<MatrixDecl>,
    pub BC: Vec<MatrixDecl>,
    pub AE: Vec<MatrixDecl>,
    pub ED: Vec<MatrixDecl>,
    pub DA: Vec<MatrixDecl>,
}

impl ArrowMatrices {
    fn get(&self, a: Arrow) -> &Vec<MatrixDecl> {
        match a {
            Arrow::AB => &self.AB,
            Arrow::BF => &self.BF,
            Arrow::FA => &self.FA,
            Arrow::CD => &self.CD,
            Arrow::DF => &self.DF,
            Arrow::FC => &self.FC,
            Arrow::CE => &self.CE,
            Arrow::EB => &self.EB,
            Arrow::BC => &self.BC,
            Arrow::AE => &self.AE,
            Arrow::ED => &self.ED,
            Arrow::DA => &self.DA,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvolutionDecl {
    pub facets: Vec<Vec<usize>>,
    pub vertex_map: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialDecl {
    pub total: Vec<Vec<usize>>,
    pub fixed_in_total: Vec<Vec<usize>>,
    pub orbit: Vec<Vec<usize>>,
    pub fixed_in_orbit: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub singular_in_orbit: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circle_fixed: Option<InvolutionDecl>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projection: Option<Vec<(usize, usize)>>,
}

/// Cohomology dimension tables; `bsigma` and `exotic` are only needed by
/// general actions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TablesDecl {
    pub m: GradedDecl,
    pub b: GradedDecl,
    pub bf: GradedDecl,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bsigma: Option<GradedDecl>,
    pub f: GradedDecl,
    pub mf: GradedDecl,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exotic: Option<GradedDecl>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupName {
    S1,
    S3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassName {
    Free,
    SemiFree,
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PivotName {
    E,
    F,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ObjectDecl {
    GradedSpace {
        name: String,
        lo: i32,
        dims: Vec<usize>,
    },
    Complex {
        name: String,
        lo: i32,
        dims: Vec<usize>,
        differentials: Vec<MatrixDecl>,
    },
    ChainMap {
        name: String,
        source: String,
        target: String,
        #[serde(default)]
        shift: i32,
        blocks: Vec<BlockDecl>,
    },
    Ses {
        name: String,
        inj: String,
        surj: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<[String; 3]>,
    },
    LongSequence {
        name: String,
        #[serde(default = "default_period")]
        period: usize,
        nodes: Vec<NodeDecl>,
        arrows: Vec<MatrixDecl>,
    },
    DoubleSes {
        name: String,
        base: String,
        total: String,
        relative: String,
        absolute: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<[String; 6]>,
    },
    /// Either derived from a double diagram or given arrow by arrow.
    Braid {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        double_ses: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lo: Option<i32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        hi: Option<i32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<[String; 6]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dims: Option<FamilyDims>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        arrows: Option<Box<ArrowMatrices>>,
    },
    Transfer {
        name: String,
        top: String,
        middle: String,
        bottom: String,
        upper: Vec<MatrixDecl>,
        lower: Vec<MatrixDecl>,
    },
    /// A shipped instance by name, or simplicial models, or dimension tables.
    Instance {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        catalog: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        group: Option<GroupName>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        class: Option<ClassName>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        description: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        simplicial: Option<SimplicialDecl>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tables: Option<TablesDecl>,
    },
}

fn default_period() -> usize {
    3
}

impl ObjectDecl {
    pub fn name(&self) -> &str {
        match self {
            ObjectDecl::GradedSpace { name, .. }
            | ObjectDecl::Complex { name, .. }
            | ObjectDecl::ChainMap { name, .. }
            | ObjectDecl::Ses { name, .. }
            | ObjectDecl::LongSequence { name, .. }
            | ObjectDecl::DoubleSes { name, .. }
            | ObjectDecl::Braid { name, .. }
            | ObjectDecl::Transfer { name, .. }
            | ObjectDecl::Instance { name, .. } => name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ObjectDecl::GradedSpace { .. } => "graded-space",
            ObjectDecl::Complex { .. } => "complex",
            ObjectDecl::ChainMap { .. } => "chain-map",
            ObjectDecl::Ses { .. } => "ses",
            ObjectDecl::LongSequence { .. } => "long-sequence",
            ObjectDecl::DoubleSes { .. } => "double-ses",
            ObjectDecl::Braid { .. } => "braid",
            ObjectDecl::Transfer { .. } => "transfer",
            ObjectDecl::Instance { .. } => "instance",
        }
    }

    /// Objects of a layer refer only to objects of earlier layers.
    fn layer(&self) -> usize {
        match self {
            ObjectDecl::GradedSpace { .. }
            | ObjectDecl::Complex { .. }
            | ObjectDecl::LongSequence { .. }
            | ObjectDecl::Instance { .. } => 0,
            ObjectDecl::ChainMap { .. } | ObjectDecl::Transfer { .. } => 1,
            ObjectDecl::Ses { .. } => 2,
            ObjectDecl::DoubleSes { .. } => 3,
            ObjectDecl::Braid { .. } => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CheckDecl {
    CheckComplex {
        target: String,
    },
    CheckSes {
        target: String,
    },
    Les {
        target: String,
    },
    CheckExact {
        target: String,
    },
    BraidValidate {
        target: String,
    },
    BraidSplice {
        target: String,
        pivot: PivotName,
    },
    Transfer {
        target: String,
    },
    VerifyInstance {
        target: String,
        /// Sequence kind tags; all supported kinds when empty.
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        kinds: Vec<String>,
    },
    Catalog {},
}

impl CheckDecl {
    pub fn tag(&self) -> &'static str {
        match self {
            CheckDecl::CheckComplex { .. } => "check-complex",
            CheckDecl::CheckSes { .. } => "check-ses",
            CheckDecl::Les { .. } => "les",
            CheckDecl::CheckExact { .. } => "check-exact",
            CheckDecl::BraidValidate { .. } => "braid-validate",
            CheckDecl::BraidSplice { .. } => "braid-splice",
            CheckDecl::Transfer { .. } => "transfer",
            CheckDecl::VerifyInstance { .. } => "verify-instance",
            CheckDecl::Catalog {} => "catalog",
        }
    }

    pub fn target(&self) -> Option<&str> {
        match self {
            CheckDecl::CheckComplex { target }
            | CheckDecl::CheckSes { target }
            | CheckDecl::Les { target }
            | CheckDecl::CheckExact { target }
            | CheckDecl::BraidValidate { target }
            | CheckDecl::BraidSplice { target, .. }
            | CheckDecl::Transfer { target }
            | CheckDecl::VerifyInstance { target, .. } => Some(target),
            CheckDecl::Catalog {} => None,
        }
    }
}

/// An action instance from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Simplicial(ActionInstance),
    Tables(TableInstance),
}

impl Instance {
    pub fn name(&self) -> &str {
        match self {
            Instance::Simplicial(i) => &i.name,
            Instance::Tables(t) => &t.name,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    GradedSpace(GradedSpace),
    Complex(CochainComplex),
    ChainMap(ChainMap),
    Ses(ShortExactSequence),
    LongSequence(LongSequence),
    DoubleSes(Box<DoubleSesDiagram>),
    Braid(Braid),
    Transfer(TransferDiagram),
    Instance(Box<Instance>),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::GradedSpace(_) => "graded-space",
            Object::Complex(_) => "complex",
            Object::ChainMap(_) => "chain-map",
            Object::Ses(_) => "ses",
            Object::LongSequence(_) => "long-sequence",
            Object::DoubleSes(_) => "double-ses",
            Object::Braid(_) => "braid",
            Object::Transfer(_) => "transfer",
            Object::Instance(_) => "instance",
        }
    }
}

/// A loaded document: every object resolved, in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagram {
    objects: Vec<(String, Object)>,
    pub checks: Vec<CheckDecl>,
}

impl Diagram {
    pub(crate) fn from_parts(objects: Vec<(String, Object)>, checks: Vec<CheckDecl>) -> Self {
        Diagram { objects, checks }
    }

    pub fn objects(&self) -> &[(String, Object)] {
        &self.objects
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.iter().find(|(n, _)| n == name).map(|(_, o)| o)
    }
}

/// Parses and resolves a document.
pub fn parse(text: &str) -> Result<Diagram, LoadError> {
    let file: DocumentFile = serde_json::from_str(text)?;
    resolve(&file)
}

pub fn resolve(file: &DocumentFile) -> Result<Diagram, LoadError> {
    if file.format != FORMAT {
        return Err(LoadError::Format {
            found: file.format.clone(),
            expected: FORMAT,
        });
    }
    let mut index = HashMap::new();
    for (i, d) in file.objects.iter().enumerate() {
        if index.insert(d.name(), i).is_some() {
            return Err(LoadError::DuplicateName(d.name().into()));
        }
    }
    let mut r = Resolver {
        decls: &file.objects,
        index,
        done: vec![None; file.objects.len()],
    };
    for layer in 0..=4 {
        for (i, d) in file.objects.iter().enumerate() {
            if d.layer() == layer {
                r.done[i] = Some(r.build(d)?);
            }
        }
    }
    for (i, c) in file.checks.iter().enumerate() {
        check_references(&r, i, c)?;
    }
    let objects = file
        .objects
        .iter()
        .zip(r.done)
        .map(|(d, o)| (d.name().to_string(), o.expect("every layer resolved")))
        .collect();
    Ok(Diagram {
        objects,
        checks: file.checks.clone(),
    })
}

fn check_references(r: &Resolver<'_>, index: usize, c: &CheckDecl) -> Result<(), LoadError> {
    let expected = match c {
        CheckDecl::CheckComplex { .. } => "complex",
        CheckDecl::CheckSes { .. } | CheckDecl::Les { .. } => "ses",
        CheckDecl::CheckExact { .. } => "long-sequence",
        CheckDecl::BraidValidate { .. } | CheckDecl::BraidSplice { .. } => "braid",
        CheckDecl::Transfer { .. } => "transfer",
        CheckDecl::VerifyInstance { kinds, .. } => {
            for k in kinds {
                k.parse::<gysin::topology::SequenceKind>().map_err(|_| LoadError::Check {
                    index,
                    detail: format!("unknown sequence kind {k:?}"),
                })?;
            }
            "instance"
        }
        CheckDecl::Catalog {} => return Ok(()),
    };
    let target = c.target().expect("targeted check");
    let Some(&i) = r.index.get(target) else {
        return Err(LoadError::Check {
            index,
            detail: format!("{} targets undeclared object {target:?}", c.tag()),
        });
    };
    let found = r.decls[i].kind();
    if found != expected {
        return Err(LoadError::Check {
            index,
            detail: format!("{} needs a {expected}, but {target:?} is a {found}", c.tag()),
        });
    }
    Ok(())
}

struct Resolver<'a> {
    decls: &'a [ObjectDecl],
    index: HashMap<&'a str, usize>,
    done: Vec<Option<Object>>,
}

impl Resolver<'_> {
    fn lookup(&self, owner: &str, field: &str, name: &str, expected: &'static str) -> Result<&Object, LoadError> {
        let &i = self.index.get(name).ok_or_else(|| LoadError::DanglingReference {
            object: owner.into(),
            field: field.into(),
            name: name.into(),
        })?;
        let wrong = || LoadError::WrongKind {
            object: owner.into(),
            field: field.into(),
            name: name.into(),
            expected,
            found: self.decls[i].kind(),
        };
        match &self.done[i] {
            Some(o) if o.kind() == expected => Ok(o),
            _ => Err(wrong()),
        }
    }

    fn complex(&self, owner: &str, field: &str, name: &str) -> Result<&CochainComplex, LoadError> {
        match self.lookup(owner, field, name, "complex")? {
            Object::Complex(c) => Ok(c),
            _ => unreachable!("kind checked"),
        }
    }

    fn chain_map(&self, owner: &str, field: &str, name: &str) -> Result<&ChainMap, LoadError> {
        match self.lookup(owner, field, name, "chain-map")? {
            Object::ChainMap(f) => Ok(f),
            _ => unreachable!("kind checked"),
        }
    }

    fn ses(&self, owner: &str, field: &str, name: &str) -> Result<&ShortExactSequence, LoadError> {
        match self.lookup(owner, field, name, "ses")? {
            Object::Ses(s) => Ok(s),
            _ => unreachable!("kind checked"),
        }
    }

    fn sequence(&self, owner: &str, field: &str, name: &str) -> Result<&LongSequence, LoadError> {
        match self.lookup(owner, field, name, "long-sequence")? {
            Object::LongSequence(s) => Ok(s),
            _ => unreachable!("kind checked"),
        }
    }

    fn double_ses(&self, owner: &str, field: &str, name: &str) -> Result<&DoubleSesDiagram, LoadError> {
        match self.lookup(owner, field, name, "double-ses")? {
            Object::DoubleSes(d) => Ok(d),
            _ => unreachable!("kind checked"),
        }
    }

    /// The declared name of the complex a chain map was built from.
    fn map_ends(&self, map: &str) -> (String, String) {
        match self.index.get(map).map(|&i| &self.decls[i]) {
            Some(ObjectDecl::ChainMap { source, target, .. }) => (source.clone(), target.clone()),
            _ => unreachable!("chain map resolved before its users"),
        }
    }

    fn build(&self, d: &ObjectDecl) -> Result<Object, LoadError> {
        let owner = d.name();
        let engine = |e| LoadError::engine(owner, e);
        Ok(match d {
            ObjectDecl::GradedSpace { lo, dims, .. } => Object::GradedSpace(GradedSpace::new(*lo, dims.clone())),
            ObjectDecl::Complex {
                lo, dims, differentials, ..
            } => {
                let diffs = differentials
                    .iter()
                    .enumerate()
                    .map(|(i, m)| matrix(owner, &format!("differentials[{i}]"), m))
                    .collect::<Result<_, _>>()?;
                Object::Complex(CochainComplex::new(*lo, dims.clone(), diffs).map_err(engine)?)
            }
            ObjectDecl::ChainMap {
                source,
                target,
                shift,
                blocks,
                ..
            } => {
                let s = self.complex(owner, "source", source)?.clone();
                let t = self.complex(owner, "target", target)?.clone();
                let blocks = blocks
                    .iter()
                    .enumerate()
                    .map(|(i, b)| Ok((b.degree, matrix(owner, &format!("blocks[{i}].matrix"), &b.matrix)?)))
                    .collect::<Result<Vec<_>, LoadError>>()?;
                Object::ChainMap(ChainMap::new(s, t, *shift, blocks).map_err(engine)?)
            }
            ObjectDecl::Ses { inj, surj, labels, .. } => {
                let i = self.chain_map(owner, "inj", inj)?.clone();
                let s = self.chain_map(owner, "surj", surj)?.clone();
                let [a, b, c] = match labels {
                    Some(l) => l.clone(),
                    None => {
                        let (a, b) = self.map_ends(inj);
                        let (_, c) = self.map_ends(surj);
                        [a, b, c]
                    }
                };
                Object::Ses(ShortExactSequence::new(i, s).map_err(engine)?.with_names(&a, &b, &c))
            }
            ObjectDecl::LongSequence {
                period, nodes, arrows, ..
            } => {
                let nodes = nodes
                    .iter()
                    .map(|n| SequenceNode::new(n.label.clone(), n.degree, n.dim))
                    .collect();
                let arrows = arrows
                    .iter()
                    .enumerate()
                    .map(|(i, m)| matrix(owner, &format!("arrows[{i}]"), m))
                    .collect::<Result<_, _>>()?;
                Object::LongSequence(LongSequence::new(nodes, arrows, *period).map_err(engine)?)
            }
            ObjectDecl::DoubleSes {
                base,
                total,
                relative,
                absolute,
                labels,
                ..
            } => {
                let [b, t, r, a] = [
                    self.ses(owner, "base", base)?,
                    self.ses(owner, "total", total)?,
                    self.ses(owner, "relative", relative)?,
                    self.ses(owner, "absolute", absolute)?,
                ];
                let labels = match labels {
                    Some(l) => l.clone(),
                    None => {
                        let (bn, tn, rn) = (b.names(), t.names(), r.names());
                        [&bn[0], &bn[1], &tn[0], &tn[1], &bn[2], &rn[2]].map(|s| s.to_string())
                    }
                };
                let d = DoubleSesDiagram::new(b.clone(), t.clone(), r.clone(), a.clone()).map_err(engine)?;
                Object::DoubleSes(Box::new(d.with_names(labels.each_ref().map(String::as_str))))
            }
            ObjectDecl::Braid {
                double_ses,
                lo,
                hi,
                labels,
                dims,
                arrows,
                ..
            } => Object::Braid(match (double_ses, lo, hi, dims, arrows) {
                (Some(d), None, None, None, None) => {
                    let d = self.double_ses(owner, "double_ses", d)?;
                    let b = braid_from_double_ses(d).map_err(engine)?;
                    match labels {
                        Some(l) => relabel(&b, l.clone()),
                        None => b,
                    }
                }
                (None, Some(lo), Some(hi), Some(dims), Some(arrows)) => {
                    explicit_braid(owner, *lo, *hi, labels.clone(), dims, arrows)?
                }
                _ => {
                    return Err(LoadError::DimensionMismatch {
                        object: owner.into(),
                        detail: "a braid needs either double_ses alone or all of lo, hi, dims and arrows".into(),
                    })
                }
            }),
            ObjectDecl::Transfer {
                top,
                middle,
                bottom,
                upper,
                lower,
                ..
            } => {
                let mats = |field: &str, ms: &[MatrixDecl]| {
                    ms.iter()
                        .enumerate()
                        .map(|(i, m)| matrix(owner, &format!("{field}[{i}]"), m))
                        .collect::<Result<Vec<_>, _>>()
                };
                Object::Transfer(TransferDiagram {
                    top: self.sequence(owner, "top", top)?.clone(),
                    middle: self.sequence(owner, "middle", middle)?.clone(),
                    bottom: self.sequence(owner, "bottom", bottom)?.clone(),
                    upper: mats("upper", upper)?,
                    lower: mats("lower", lower)?,
                })
            }
            ObjectDecl::Instance {
                name,
                catalog,
                group,
                class,
                description,
                simplicial,
                tables,
            } => Object::Instance(Box::new(instance(
                name,
                catalog.as_deref(),
                *group,
                *class,
                description.clone(),
                simplicial.as_ref(),
                tables.as_ref(),
            )?)),
        })
    }
}

fn matrix(owner: &str, field: &str, m: &MatrixDecl) -> Result<Matrix, LoadError> {
    let mismatch = |detail: String| LoadError::DimensionMismatch {
        object: owner.into(),
        detail: format!("{field}: {detail}"),
    };
    if m.entries.len() != m.rows {
        return Err(mismatch(format!("declared {} rows, found {}", m.rows, m.entries.len())));
    }
    let mut rows = Vec::with_capacity(m.rows);
    for (r, row) in m.entries.iter().enumerate() {
        if row.len() != m.cols {
            return Err(mismatch(format!("row {r} has {} entries, declared {} columns", row.len(), m.cols)));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(c, e)| {
                parse_rational(e).map_err(|_| LoadError::InvalidRational {
                    object: owner.into(),
                    field: format!("{field}.entries[{r}][{c}]"),
                    entry: e.clone(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(parsed);
    }
    Matrix::from_rows(m.rows, m.cols, rows).map_err(|e| LoadError::engine(owner, e))
}

pub fn matrix_decl(m: &Matrix) -> MatrixDecl {
    MatrixDecl {
        rows: m.rows(),
        cols: m.cols(),
        entries: m.to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect(),
    }
}

fn relabel(b: &Braid, labels: [String; 6]) -> Braid {
    let (lo, hi) = b.window();
    let dims = Family::ALL.map(|f| (lo..=hi).map(|k| b.dim(f, k)).collect());
    let arrows = Arrow::ALL.map(|a| (lo..=hi).map(|k| b.arrow(a, k).into_owned()).collect());
    Braid::new(lo, hi, labels, dims, arrows).expect("same shapes as an existing braid")
}

fn explicit_braid(
    owner: &str,
    lo: i32,
    hi: i32,
    labels: Option<[String; 6]>,
    dims: &FamilyDims,
    arrows: &ArrowMatrices,
) -> Result<Braid, LoadError> {
    let dims = [&dims.A, &dims.B, &dims.C, &dims.D, &dims.E, &dims.F].map(|d| d.clone());
    let mut mats: Vec<Vec<Matrix>> = Vec::new();
    for a in Arrow::ALL {
        let list = arrows
            .get(a)
            .iter()
            .enumerate()
            .map(|(i, m)| matrix(owner, &format!("arrows.{a:?}[{i}]"), m))
            .collect::<Result<Vec<_>, _>>()?;
        mats.push(list);
    }
    let mats: [Vec<Matrix>; 12] = mats.try_into().expect("twelve arrows");
    let labels = labels.unwrap_or_else(|| Family::ALL.map(|f| f.to_string()));
    Braid::new(lo, hi, labels, dims, mats).map_err(|e| LoadError::engine(owner, e))
}

fn complex_from_facets(owner: &str, facets: &[Vec<usize>]) -> Result<SimplicialComplex, LoadError> {
    SimplicialComplex::from_facets(facets).map_err(|e| LoadError::engine(owner, e))
}

fn instance(
    owner: &str,
    catalog: Option<&str>,
    group: Option<GroupName>,
    class: Option<ClassName>,
    description: Option<String>,
    simplicial: Option<&SimplicialDecl>,
    tables: Option<&TablesDecl>,
) -> Result<Instance, LoadError> {
    let invalid = |detail: &str| LoadError::DimensionMismatch {
        object: owner.into(),
        detail: detail.into(),
    };
    if let Some(c) = catalog {
        if group.is_some() || class.is_some() || simplicial.is_some() || tables.is_some() {
            return Err(invalid("a catalog reference takes no other model fields"));
        }
        let mut inst = find_instance(c).ok_or_else(|| LoadError::DanglingReference {
            object: owner.into(),
            field: "catalog".into(),
            name: c.into(),
        })?;
        inst.name = owner.into();
        if let Some(d) = description {
            inst.description = d;
        }
        return Ok(Instance::Simplicial(inst));
    }
    let (Some(group), Some(class)) = (group, class) else {
        return Err(invalid("an instance needs a group and a class"));
    };
    let group = match group {
        GroupName::S1 => Group::S1,
        GroupName::S3 => Group::S3,
    };
    let class = match class {
        ClassName::Free => ActionClass::Free,
        ClassName::SemiFree => ActionClass::SemiFree,
        ClassName::General => ActionClass::General,
    };
    match (simplicial, tables) {
        (Some(s), None) => {
            let sc = |f: &[Vec<usize>]| complex_from_facets(owner, f);
            let circle_fixed = s
                .circle_fixed
                .as_ref()
                .map(|c| {
                    SimplicialInvolution::new(sc(&c.facets)?, c.vertex_map.iter().copied().collect())
                        .map_err(|e| LoadError::engine(owner, e))
                })
                .transpose()?;
            Ok(Instance::Simplicial(ActionInstance {
                name: owner.into(),
                description: description.unwrap_or_default(),
                group,
                class,
                total: sc(&s.total)?,
                fixed_in_total: sc(&s.fixed_in_total)?,
                orbit: sc(&s.orbit)?,
                fixed_in_orbit: sc(&s.fixed_in_orbit)?,
                singular_in_orbit: s.singular_in_orbit.as_deref().map(sc).transpose()?,
                circle_fixed,
                projection: s.projection.as_ref().map(|p| p.iter().copied().collect::<BTreeMap<_, _>>()),
            }))
        }
        (None, Some(t)) => {
            let g = |d: &GradedDecl| GradedSpace::new(d.lo, d.dims.clone());
            Ok(Instance::Tables(TableInstance {
                name: owner.into(),
                group,
                class,
                models: ModelDims {
                    m: g(&t.m),
                    b: g(&t.b),
                    bf: g(&t.bf),
                    bsigma: t.bsigma.as_ref().map(g),
                    f: g(&t.f),
                    mf: g(&t.mf),
                    exotic: t.exotic.as_ref().map(g),
                },
            }))
        }
        _ => Err(invalid("an instance needs exactly one of simplicial or tables")),
    }
}

/// Builds documents from engine objects. Complexes equal to one already
/// added are shared rather than repeated.
#[derive(Clone, Debug, Default)]
pub struct DocumentBuilder {
    file: DocumentFile,
    complexes: Vec<(String, CochainComplex)>,
}

impl DocumentBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn finish(self) -> DocumentFile {
        self.file
    }

    pub fn check(&mut self, c: CheckDecl) -> &mut Self {
        self.file.checks.push(c);
        self
    }

    fn push(&mut self, d: ObjectDecl) -> String {
        let name = d.name().to_string();
        self.file.objects.push(d);
        name
    }

    pub fn graded_space(&mut self, name: &str, g: &GradedSpace) -> String {
        self.push(ObjectDecl::GradedSpace {
            name: name.into(),
            lo: g.lo(),
            dims: g.dims().to_vec(),
        })
    }

    pub fn complex(&mut self, name: &str, c: &CochainComplex) -> String {
        if let Some((n, _)) = self.complexes.iter().find(|(_, x)| x == c) {
            return n.clone();
        }
        self.complexes.push((name.into(), c.clone()));
        self.push(ObjectDecl::Complex {
            name: name.into(),
            lo: c.lo(),
            dims: c.spaces().dims().to_vec(),
            differentials: c.differentials().iter().map(matrix_decl).collect(),
        })
    }

    pub fn chain_map(&mut self, name: &str, f: &ChainMap) -> String {
        let source = self.complex(&format!("{name}.source"), f.source());
        let target = self.complex(&format!("{name}.target"), f.target());
        let blocks = f
            .blocks()
            .map(|(degree, m)| BlockDecl {
                degree,
                matrix: matrix_decl(m),
            })
            .collect();
        self.push(ObjectDecl::ChainMap {
            name: name.into(),
            source,
            target,
            shift: f.shift(),
            blocks,
        })
    }

    pub fn ses(&mut self, name: &str, s: &ShortExactSequence) -> String {
        let inj = self.chain_map(&format!("{name}.inj"), s.inj());
        let surj = self.chain_map(&format!("{name}.surj"), s.surj());
        self.push(ObjectDecl::Ses {
            name: name.into(),
            inj,
            surj,
            labels: Some(s.names().clone()),
        })
    }

    pub fn long_sequence(&mut self, name: &str, ls: &LongSequence) -> String {
        self.push(ObjectDecl::LongSequence {
            name: name.into(),
            period: ls.period(),
            nodes: ls
                .nodes()
                .iter()
                .map(|n| NodeDecl {
                    label: n.label.clone(),
                    degree: n.degree,
                    dim: n.dim,
                })
                .collect(),
            arrows: ls.arrows().iter().map(matrix_decl).collect(),
        })
    }

    pub fn double_ses(&mut self, name: &str, d: &DoubleSesDiagram) -> String {
        let base = self.ses(&format!("{name}.base"), &d.base);
        let total = self.ses(&format!("{name}.total"), &d.total);
        let relative = self.ses(&format!("{name}.relative"), &d.relative);
        let absolute = self.ses(&format!("{name}.absolute"), &d.absolute);
        self.push(ObjectDecl::DoubleSes {
            name: name.into(),
            base,
            total,
            relative,
            absolute,
            labels: Some(d.names.clone()),
        })
    }

    pub fn braid(&mut self, name: &str, b: &Braid) -> String {
        let (lo, hi) = b.window();
        let dims = |f: Family| (lo..=hi).map(|k| b.dim(f, k)).collect::<Vec<_>>();
        let mats = |a: Arrow| (lo..=hi).map(|k| matrix_decl(&b.arrow(a, k))).collect::<Vec<_>>();
        self.push(ObjectDecl::Braid {
            name: name.into(),
            double_ses: None,
            lo: Some(lo),
            hi: Some(hi),
            labels: Some(b.names().clone()),
            dims: Some(FamilyDims {
                A: dims(Family::A),
                B: dims(Family::B),
                C: dims(Family::C),
                D: dims(Family::D),
                E: dims(Family::E),
                F: dims(Family::F),
            }),
            arrows: Some(Box::new(ArrowMatrices {
                AB: mats(Arrow::AB),
                BF: mats(Arrow::BF),
                FA: mats(Arrow::FA),
                CD: mats(Arrow::CD),
                DF: mats(Arrow::DF),
                FC: mats(Arrow::FC),
                CE: mats(Arrow::CE),
                EB: mats(Arrow::EB),
                BC: mats(Arrow::BC),
                AE: mats(Arrow::AE),
                ED: mats(Arrow::ED),
                DA: mats(Arrow::DA),
            })),
        })
    }

    pub fn transfer(&mut self, name: &str, t: &TransferDiagram) -> String {
        let top = self.long_sequence(&format!("{name}.top"), &t.top);
        let middle = self.long_sequence(&format!("{name}.middle"), &t.middle);
        let bottom = self.long_sequence(&format!("{name}.bottom"), &t.bottom);
        self.push(ObjectDecl::Transfer {
            name: name.into(),
            top,
            middle,
            bottom,
            upper: t.upper.iter().map(matrix_decl).collect(),
            lower: t.lower.iter().map(matrix_decl).collect(),
        })
    }

    /// The instance is stored under its own name.
    pub fn instance(&mut self, inst: &Instance) -> String {
        let (group, class) = match inst {
            Instance::Simplicial(i) => (i.group, i.class),
            Instance::Tables(t) => (t.group, t.class),
        };
        let group = Some(match group {
            Group::S1 => GroupName::S1,
            Group::S3 => GroupName::S3,
        });
        let class = Some(match class {
            ActionClass::Free => ClassName::Free,
            ActionClass::SemiFree => ClassName::SemiFree,
            ActionClass::General => ClassName::General,
        });
        let g = |s: &GradedSpace| GradedDecl {
            lo: s.lo(),
            dims: s.dims().to_vec(),
        };
        let decl = match inst {
            Instance::Simplicial(i) => ObjectDecl::Instance {
                name: i.name.clone(),
                catalog: None,
                group,
                class,
                description: (!i.description.is_empty()).then(|| i.description.clone()),
                simplicial: Some(SimplicialDecl {
                    total: i.total.facets(),
                    fixed_in_total: i.fixed_in_total.facets(),
                    orbit: i.orbit.facets(),
                    fixed_in_orbit: i.fixed_in_orbit.facets(),
                    singular_in_orbit: i.singular_in_orbit.as_ref().map(SimplicialComplex::facets),
                    circle_fixed: i.circle_fixed.as_ref().map(|c| InvolutionDecl {
                        facets: c.complex().facets(),
                        vertex_map: c.vertex_map().iter().map(|(&a, &b)| (a, b)).collect(),
                    }),
                    projection: i.projection.as_ref().map(|p| p.iter().map(|(&a, &b)| (a, b)).collect()),
                }),
                tables: None,
            },
            Instance::Tables(t) => ObjectDecl::Instance {
                name: t.name.clone(),
                catalog: None,
                group,
                class,
                description: None,
                simplicial: None,
                tables: Some(TablesDecl {
                    m: g(&t.models.m),
                    b: g(&t.models.b),
                    bf: g(&t.models.bf),
                    bsigma: t.models.bsigma.as_ref().map(g),
                    f: g(&t.models.f),
                    mf: g(&t.models.mf),
                    exotic: t.models.exotic.as_ref().map(g),
                }),
            },
        };
        self.push(decl)
    }
}

/// Pretty-printed JSON for a document.
pub fn to_string(file: &DocumentFile) -> String {
    serde_json::to_string_pretty(file).expect("documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decl(rows: usize, cols: usize, entries: &[&[&str]]) -> MatrixDecl {
        MatrixDecl {
            rows,
            cols,
            entries: entries.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect(),
        }
    }

    #[test]
    fn matrices_are_cross_checked_against_their_declared_shape() {
        let m = matrix("x", "m", &decl(2, 1, &[&["1/2"], &["-3"]])).unwrap();
        assert_eq!(matrix_decl(&m), decl(2, 1, &[&["1/2"], &["-3"]]));
        assert!(matches!(
            matrix("x", "m", &decl(2, 1, &[&["1"]])),
            Err(LoadError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            matrix("x", "m", &decl(1, 2, &[&["1"]])),
            Err(LoadError::DimensionMismatch { .. })
        ));
        match matrix("x", "m", &decl(1, 2, &[&["1", "2/0"]])) {
            Err(LoadError::InvalidRational { field, entry, .. }) => {
                assert_eq!(field, "m.entries[0][1]");
                assert_eq!(entry, "2/0");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rationals_are_written_canonically() {
        let m = matrix("x", "m", &decl(1, 3, &[&["4/6", "-0", "10/5"]])).unwrap();
        assert_eq!(matrix_decl(&m).entries, vec![vec!["2/3", "0", "2"]]);
    }

    #[test]
    fn duplicate_names_and_wrong_kinds() {
        let k = r#"{"kind": "complex", "name": "K", "lo": 0, "dims": [1], "differentials": []}"#;
        let doc = format!(r#"{{"format": "{FORMAT}", "objects": [{k}, {k}]}}"#);
        assert!(matches!(parse(&doc), Err(LoadError::DuplicateName(n)) if n == "K"));

        let doc = format!(
            r#"{{"format": "{FORMAT}", "objects": [{k},
                {{"kind": "ses", "name": "s", "inj": "K", "surj": "K"}}]}}"#
        );
        match parse(&doc) {
            Err(LoadError::WrongKind { expected, found, .. }) => {
                assert_eq!((expected, found), ("chain-map", "complex"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn braids_need_exactly_one_form() {
        let doc = format!(
            r#"{{"format": "{FORMAT}", "objects": [{{"kind": "braid", "name": "b", "lo": 0}}]}}"#
        );
        assert!(matches!(parse(&doc), Err(LoadError::DimensionMismatch { .. })));
    }
}
