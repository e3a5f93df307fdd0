//! Group actions on spheres given by finite models, the Gysin and
//! Smith-Gysin sequences they carry, and their verification.
//!
//! An instance supplies independent simplicial models for the manifold `M`,
//! the orbit space `B = M/G`, the fixed set `F` (inside `M` and inside `B`),
//! the image `Σ/G` of the points with infinite isotropy, and the circle-fixed
//! set `M^{S¹}` with the involution induced by `j ∈ S³`. When a simplicial
//! projection `M → B` is also given, the instance carries cochain-level maps:
//! the pullback along the projection produces a double diagram of short
//! exact sequences and hence a braid whose strands and splices are the
//! sequences below, with explicit matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::braid::{braid_from_double_ses, Arrow, Braid, DoubleSesDiagram, Family};
use crate::cochain::{cohomology, quotient, GradedSpace};
use crate::error::{Error, Result};
use crate::exactness::{
    betti_feasible, check_exact, segment_sums, ExactnessReport, Feasibility, LongSequence,
    SequenceNode, ShortExactSequence, TransferDiagram,
};
use crate::linalg::{image_basis, Matrix};
use crate::topology::simplicial::{
    anti_invariants, pullback, relative_complex, relative_pair, simplicial_cochain_complex,
    SimplicialComplex, SimplicialInvolution,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    S1,
    S3,
}

impl Group {
    /// Dimension of the group, the degree shift of its Gysin sequences.
    pub fn dim(self) -> i32 {
        match self {
            Group::S1 => 1,
            Group::S3 => 3,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::S1 => "S1",
            Group::S3 => "S3",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActionClass {
    Free,
    /// Free outside the fixed point set.
    SemiFree,
    General,
}

impl fmt::Display for ActionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ActionClass::Free => "free",
            ActionClass::SemiFree => "semi-free",
            ActionClass::General => "general",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SequenceKind {
    /// `H^*(M) → H^{*-3}(B) → H^{*+1}(B)`
    S3FreeGysin,
    /// `H^*(M) → H^{*-3}(B,F) → H^{*+1}(B)`
    S3SemifreeGysin,
    /// `H^*(M) → H^{*-3}(B,Σ) ⊕ H^{*-2}(M^{S¹})^{-} → H^{*+1}(B)`
    S3ExoticGysin,
    /// `H^*(M) → H^{*-3}(B,Σ) ⊕ H^{*-2}(M^{S¹})^{-} ⊕ H^*(F) → H^{*+1}(B,F)`
    S3SmithGysin,
    /// `H^*(B,F) → H^*(B) ⊕ H^*(M,F) → H^*(M)`
    S3Second,
    /// `H^*(M) → H^{*-1}(B,F) → H^{*+1}(B)`
    S1Gysin,
    /// `H^*(M) → H^{*-1}(B,F) ⊕ H^*(F) → H^{*+1}(B,F)`
    S1SmithGysin,
    /// `H^*(B,F) → H^*(B) ⊕ H^*(M,F) → H^*(M)`
    S1Second,
}

impl SequenceKind {
    pub const ALL: [SequenceKind; 8] = [
        SequenceKind::S3FreeGysin,
        SequenceKind::S3SemifreeGysin,
        SequenceKind::S3ExoticGysin,
        SequenceKind::S3SmithGysin,
        SequenceKind::S3Second,
        SequenceKind::S1Gysin,
        SequenceKind::S1SmithGysin,
        SequenceKind::S1Second,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            SequenceKind::S3FreeGysin => "S3_FREE_GYSIN",
            SequenceKind::S3SemifreeGysin => "S3_SEMIFREE_GYSIN",
            SequenceKind::S3ExoticGysin => "S3_EXOTIC_GYSIN",
            SequenceKind::S3SmithGysin => "S3_SMITH_GYSIN",
            SequenceKind::S3Second => "S3_SECOND",
            SequenceKind::S1Gysin => "S1_GYSIN",
            SequenceKind::S1SmithGysin => "S1_SMITH_GYSIN",
            SequenceKind::S1Second => "S1_SECOND",
        }
    }

    pub fn group(self) -> Group {
        match self {
            SequenceKind::S1Gysin | SequenceKind::S1SmithGysin | SequenceKind::S1Second => Group::S1,
            _ => Group::S3,
        }
    }

    fn shape(self) -> Shape {
        match self {
            SequenceKind::S3FreeGysin
            | SequenceKind::S3SemifreeGysin
            | SequenceKind::S3ExoticGysin
            | SequenceKind::S1Gysin => Shape::Gysin,
            SequenceKind::S3SmithGysin | SequenceKind::S1SmithGysin => Shape::SmithGysin,
            SequenceKind::S3Second | SequenceKind::S1Second => Shape::Second,
        }
    }

    /// The summands of the three nodes of one period, at sequence degree `*`.
    fn terms(self) -> [Vec<Term>; 3] {
        use Term::*;
        let g = self.group().dim();
        match self {
            SequenceKind::S3FreeGysin => [vec![M(0)], vec![B(-3)], vec![B(1)]],
            SequenceKind::S3SemifreeGysin => [vec![M(0)], vec![BF(-3)], vec![B(1)]],
            SequenceKind::S3ExoticGysin => [vec![M(0)], vec![BSigma(-3), Exotic(-2)], vec![B(1)]],
            SequenceKind::S3SmithGysin => [
                vec![M(0)],
                vec![BSigma(-3), Exotic(-2), F(0)],
                vec![BF(1)],
            ],
            SequenceKind::S1Gysin => [vec![M(0)], vec![BF(-g)], vec![B(1)]],
            SequenceKind::S1SmithGysin => [vec![M(0)], vec![BF(-g), F(0)], vec![BF(1)]],
            SequenceKind::S3Second | SequenceKind::S1Second => {
                [vec![BF(0)], vec![B(0), MF(0)], vec![M(0)]]
            }
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SequenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SequenceKind::ALL
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| Error::Structural(format!("unknown sequence kind {s:?}")))
    }
}

/// Which braid reading realizes a kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    /// The absolute column's sequence `F^* → A^{*+1} → B^{*+1}`.
    Gysin,
    /// The splice at `F`: `F^* → A^{*+1} ⊕ C^* → E^{*+1}`.
    SmithGysin,
    /// The splice at `E`: `E^* → B^* ⊕ D^* → F^*`.
    Second,
}

/// A cohomology summand at sequence degree `* + offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Term {
    M(i32),
    B(i32),
    BF(i32),
    BSigma(i32),
    F(i32),
    MF(i32),
    Exotic(i32),
}

impl Term {
    fn label(self) -> String {
        let deg = |o: i32| match o.cmp(&0) {
            std::cmp::Ordering::Equal => "*".to_string(),
            std::cmp::Ordering::Greater => format!("*+{o}"),
            std::cmp::Ordering::Less => format!("*{o}"),
        };
        match self {
            Term::M(o) => format!("H^{}(M)", deg(o)),
            Term::B(o) => format!("H^{}(B)", deg(o)),
            Term::BF(o) => format!("H^{}(B,F)", deg(o)),
            Term::BSigma(o) => format!("H^{}(B,Σ)", deg(o)),
            Term::F(o) => format!("H^{}(F)", deg(o)),
            Term::MF(o) => format!("H^{}(M,F)", deg(o)),
            Term::Exotic(o) => format!("H^{}(M^S1)^-", deg(o)),
        }
    }
}

/// A group action given by finite models. See the module documentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionInstance {
    pub name: String,
    pub description: String,
    pub group: Group,
    pub class: ActionClass,
    /// `M`.
    pub total: SimplicialComplex,
    /// `F` as a subcomplex of `M`.
    pub fixed_in_total: SimplicialComplex,
    /// `B = M/G`.
    pub orbit: SimplicialComplex,
    /// `F` as a subcomplex of `B`.
    pub fixed_in_orbit: SimplicialComplex,
    /// `Σ/G ⊂ B`; required for the general class.
    pub singular_in_orbit: Option<SimplicialComplex>,
    /// `M^{S¹}` with the involution induced by `j`; required for the general class.
    pub circle_fixed: Option<SimplicialInvolution>,
    /// A simplicial vertex map `M → B`, when one realizes the projection.
    pub projection: Option<BTreeMap<usize, usize>>,
}

impl ActionInstance {
    /// Whether the instance carries cochain-level maps.
    pub fn is_explicit(&self) -> bool {
        self.projection.is_some()
    }

    /// The kinds whose sequence exists for this group and class.
    pub fn supported_kinds(&self) -> Vec<SequenceKind> {
        SequenceKind::ALL
            .into_iter()
            .filter(|&k| self.check_kind(k).is_ok())
            .collect()
    }

    fn check_kind(&self, kind: SequenceKind) -> Result<()> {
        check_kind(&self.name, self.group, self.class, kind)
    }

    /// The same instance relabelled as a general action whose singular part
    /// is the fixed set and whose circle-fixed set is empty.
    pub fn as_general(&self) -> ActionInstance {
        ActionInstance {
            class: ActionClass::General,
            singular_in_orbit: Some(self.fixed_in_orbit.clone()),
            circle_fixed: Some(SimplicialInvolution::identity(SimplicialComplex::empty())),
            ..self.clone()
        }
    }
}

fn check_kind(name: &str, group: Group, class: ActionClass, kind: SequenceKind) -> Result<()> {
    let unsupported = |reason: &str| Error::UnsupportedKind {
        instance: name.into(),
        kind: kind.tag().into(),
        reason: reason.into(),
    };
    if kind.group() != group {
        return Err(unsupported(&format!("the acting group is {group}")));
    }
    match kind {
        SequenceKind::S3FreeGysin if class != ActionClass::Free => {
            Err(unsupported("the sequence requires a free action"))
        }
        SequenceKind::S3SemifreeGysin | SequenceKind::S1Gysin if class == ActionClass::General => {
            Err(unsupported("the sequence requires a semi-free action"))
        }
        _ => Ok(()),
    }
}

/// Cohomology dimensions of every model an instance can supply: `M`, `B`,
/// `(B,F)`, `(B,Σ)`, `F`, `(M,F)` and the anti-invariant part of `H(M^{S¹})`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModelDims {
    pub m: GradedSpace,
    pub b: GradedSpace,
    pub bf: GradedSpace,
    pub bsigma: Option<GradedSpace>,
    pub f: GradedSpace,
    pub mf: GradedSpace,
    pub exotic: Option<GradedSpace>,
}

/// An action known only through the cohomology dimensions of its models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableInstance {
    pub name: String,
    pub group: Group,
    pub class: ActionClass,
    pub models: ModelDims,
}

impl TableInstance {
    pub fn supported_kinds(&self) -> Vec<SequenceKind> {
        SequenceKind::ALL
            .into_iter()
            .filter(|&k| check_kind(&self.name, self.group, self.class, k).is_ok())
            .collect()
    }
}

fn graded_cohomology(c: &crate::cochain::CochainComplex) -> Result<GradedSpace> {
    Ok(cohomology(c)?.graded().clone())
}

impl ModelDims {
    pub fn of(inst: &ActionInstance) -> Result<Self> {
        let singular = match (&inst.singular_in_orbit, inst.class) {
            (Some(s), _) => Some(s.clone()),
            (None, ActionClass::General) => None,
            (None, _) => Some(inst.fixed_in_orbit.clone()),
        };
        let exotic = match (&inst.circle_fixed, inst.class) {
            (Some(inv), _) => Some(anti_invariants(inv)?.anti_invariant),
            (None, ActionClass::General) => None,
            (None, _) => Some(GradedSpace::zero()),
        };
        let m = graded_cohomology(&simplicial_cochain_complex(&inst.total))?;
        let b = graded_cohomology(&simplicial_cochain_complex(&inst.orbit))?;
        let relative = |x: &SimplicialComplex, a: &SimplicialComplex, whole: &GradedSpace| {
            if a.is_empty() {
                x.check_subcomplex(a)?;
                Ok(whole.clone())
            } else {
                graded_cohomology(&relative_complex(x, a)?)
            }
        };
        Ok(ModelDims {
            bf: relative(&inst.orbit, &inst.fixed_in_orbit, &b)?,
            mf: relative(&inst.total, &inst.fixed_in_total, &m)?,
            m,
            b,
            bsigma: singular
                .map(|s| relative_complex(&inst.orbit, &s).and_then(|c| graded_cohomology(&c)))
                .transpose()?,
            f: graded_cohomology(&simplicial_cochain_complex(&inst.fixed_in_total))?,
            exotic,
        })
    }

    fn dim(&self, t: Term, star: i32, name: &str, kind: SequenceKind) -> Result<usize> {
        let missing = |model: &'static str| Error::MissingModel {
            instance: name.into(),
            kind: kind.tag().into(),
            model,
        };
        Ok(match t {
            Term::M(o) => self.m.dim(star + o),
            Term::B(o) => self.b.dim(star + o),
            Term::BF(o) => self.bf.dim(star + o),
            Term::BSigma(o) => self.bsigma.as_ref().ok_or_else(|| missing("Σ/G"))?.dim(star + o),
            Term::F(o) => self.f.dim(star + o),
            Term::MF(o) => self.mf.dim(star + o),
            Term::Exotic(o) => self.exotic.as_ref().ok_or_else(|| missing("M^S1 with involution"))?.dim(star + o),
        })
    }

    fn top_degree(&self) -> i32 {
        [&self.m, &self.b, &self.bf, &self.f, &self.mf]
            .into_iter()
            .chain(self.bsigma.as_ref())
            .chain(self.exotic.as_ref())
            .filter(|g| !g.is_zero())
            .map(|g| g.hi())
            .max()
            .unwrap_or(0)
    }
}

/// A sequence assembled for one kind: node dimensions from the models and,
/// for explicit instances, the same sequence with matrices read off the
/// instance's braid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltSequence {
    pub kind: SequenceKind,
    /// Three nodes per sequence degree `*`, over the window `-1 ..= top`.
    pub nodes: Vec<SequenceNode>,
    pub explicit: Option<LongSequence>,
}

impl BuiltSequence {
    pub fn dims(&self) -> Vec<usize> {
        self.nodes.iter().map(|n| n.dim).collect()
    }
}

/// The sequence of `kind` on `inst`. Node `3i + j` is slot `j` at sequence
/// degree `* = -1 + i`.
pub fn build_sequence(inst: &ActionInstance, kind: SequenceKind) -> Result<BuiltSequence> {
    inst.check_kind(kind)?;
    let models = ModelDims::of(inst)?;
    let braid = inst.projection.as_ref().map(|_| instance_braid(inst)).transpose()?;
    assemble(inst, kind, &models, braid.as_ref())
}

/// The dimensions of the sequence of `kind` on a dimension-only instance.
pub fn build_table_sequence(inst: &TableInstance, kind: SequenceKind) -> Result<BuiltSequence> {
    check_kind(&inst.name, inst.group, inst.class, kind)?;
    assemble_nodes(&inst.name, kind, &inst.models, None)
}

fn assemble(
    inst: &ActionInstance,
    kind: SequenceKind,
    models: &ModelDims,
    braid: Option<&Braid>,
) -> Result<BuiltSequence> {
    inst.check_kind(kind)?;
    assemble_nodes(&inst.name, kind, models, braid)
}

fn assemble_nodes(
    name: &str,
    kind: SequenceKind,
    models: &ModelDims,
    braid: Option<&Braid>,
) -> Result<BuiltSequence> {
    let (lo, hi) = (-1, models.top_degree() + kind.group().dim() + 1);
    let terms = kind.terms();
    let mut nodes = Vec::new();
    for star in lo..=hi {
        for slot in &terms {
            let mut dim = 0;
            for &t in slot {
                dim += models.dim(t, star, name, kind)?;
            }
            let label = slot.iter().map(|t| t.label()).collect::<Vec<_>>().join("⊕");
            nodes.push(SequenceNode::new(label, star, dim));
        }
    }
    Ok(BuiltSequence {
        kind,
        nodes,
        explicit: braid.map(|b| read_braid(b, kind.shape(), lo, hi)),
    })
}

/// The double diagram of an explicit instance:
///
/// ```text
/// C(B,F) ↪ C(B) ↠ C(F)
/// C(M,F) ↪ C(M) ↠ C(F)
/// ```
///
/// with columns `C(B,F) ↪ C(M,F) ↠ Q` and `C(B) ↪ C(M) ↠ Q`, the vertical
/// inclusions being pullback along the projection and `Q` the quotient of
/// `C(M)` by the pulled-back cochains.
pub fn instance_double_ses(inst: &ActionInstance) -> Result<DoubleSesDiagram> {
    let projection = inst.projection.as_ref().ok_or_else(|| Error::MissingModel {
        instance: inst.name.clone(),
        kind: "double diagram".into(),
        model: "projection M → B",
    })?;
    let base = relative_pair(&inst.orbit, &inst.fixed_in_orbit)?;
    let total = relative_pair(&inst.total, &inst.fixed_in_total)?;
    let pi = pullback(&inst.total, &inst.orbit, projection)?;
    let t = pi.target().clone();
    let images: Vec<_> = t.degrees().map(|k| (k, image_basis(&pi.block(k)))).collect();
    let (q, t_to_q) = quotient(&t, &images)?;
    let absolute = ShortExactSequence::new(pi.clone(), t_to_q.clone())?;

    let p_to_t = pi.compose(base.inj())?;
    let s_to_t = total.inj();
    let p_to_s_blocks = p_to_t
        .source()
        .degrees()
        .map(|k| {
            let left = s_to_t
                .block(k)
                .left_inverse()
                .ok_or_else(|| Error::Internal("relative inclusion is not injective".into()))?;
            Ok((k, &left * &p_to_t.block(k)))
        })
        .collect::<Result<Vec<_>>>()?;
    let p_to_s = crate::cochain::ChainMap::new(
        base.sub().clone(),
        total.sub().clone(),
        0,
        p_to_s_blocks,
    )?;
    let s_to_q = t_to_q.compose(s_to_t)?;
    let relative = ShortExactSequence::new(p_to_s, s_to_q)?;
    let _ = q;
    Ok(DoubleSesDiagram::new(base, total, relative, absolute)?
        .with_names(["(B,F)", "B", "(M,F)", "M", "F", "Q"]))
}

/// The braid of an explicit instance.
pub fn instance_braid(inst: &ActionInstance) -> Result<Braid> {
    braid_from_double_ses(&instance_double_ses(inst)?)
}

fn read_braid(b: &Braid, shape: Shape, lo: i32, hi: i32) -> LongSequence {
    use Arrow::*;
    use Family as X;
    let a = |x: Arrow, d: i32| b.arrow(x, d).into_owned();
    let mut nodes = Vec::new();
    let mut maps = Vec::new();
    for star in lo..=hi {
        let last = star == hi;
        match shape {
            Shape::Gysin => {
                nodes.push(SequenceNode::new(b.name(X::F), star, b.dim(X::F, star)));
                nodes.push(SequenceNode::new(b.name(X::A), star + 1, b.dim(X::A, star + 1)));
                nodes.push(SequenceNode::new(b.name(X::B), star + 1, b.dim(X::B, star + 1)));
                maps.push(a(FA, star));
                maps.push(a(AB, star + 1));
                if !last {
                    maps.push(a(BF, star + 1));
                }
            }
            Shape::SmithGysin => {
                nodes.push(SequenceNode::new(b.name(X::F), star, b.dim(X::F, star)));
                nodes.push(SequenceNode::new(
                    format!("{}⊕{}", b.name(X::A), b.name(X::C)),
                    star,
                    b.dim(X::A, star + 1) + b.dim(X::C, star),
                ));
                nodes.push(SequenceNode::new(b.name(X::E), star + 1, b.dim(X::E, star + 1)));
                maps.push(a(FA, star).vstack(&a(FC, star)));
                maps.push(a(AE, star + 1).hstack(&-&a(CE, star)));
                if !last {
                    maps.push(&a(BF, star + 1) * &a(EB, star + 1));
                }
            }
            Shape::Second => {
                nodes.push(SequenceNode::new(b.name(X::E), star, b.dim(X::E, star)));
                nodes.push(SequenceNode::new(
                    format!("{}⊕{}", b.name(X::B), b.name(X::D)),
                    star,
                    b.dim(X::B, star) + b.dim(X::D, star),
                ));
                nodes.push(SequenceNode::new(b.name(X::F), star, b.dim(X::F, star)));
                maps.push(a(EB, star).vstack(&a(ED, star)));
                maps.push(a(BF, star).hstack(&-&a(DF, star)));
                if !last {
                    maps.push(&a(CE, star) * &a(FC, star));
                }
            }
        }
    }
    LongSequence::new(nodes, maps, 3).expect("braid arrows are shape-checked")
}

/// Outcome of the checks on one kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KindReport {
    pub kind: SequenceKind,
    pub dims: Vec<usize>,
    pub feasibility: Feasibility,
    pub segments_balanced: bool,
    pub explicit: Option<ExplicitCheck>,
}

impl KindReport {
    pub fn passed(&self) -> bool {
        self.feasibility.feasible
            && self.segments_balanced
            && self.explicit.as_ref().is_none_or(|e| e.dims_agree && e.exactness.is_exact())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitCheck {
    /// Whether the braid's node dimensions equal those computed from the models.
    pub dims_agree: bool,
    pub exactness: ExactnessReport,
}

#[derive(Debug)]
pub struct InstanceReport {
    pub instance: String,
    pub kinds: Vec<(SequenceKind, Result<KindReport>)>,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.kinds.iter().all(|(_, r)| r.as_ref().is_ok_and(KindReport::passed))
    }
}

/// Checks each requested kind independently; failures of one kind never
/// stop the others.
pub fn verify_instance(inst: &ActionInstance, kinds: &[SequenceKind]) -> InstanceReport {
    // Shared by all kinds; on failure each kind rebuilds and reports its own error.
    let models = ModelDims::of(inst).ok();
    let braid = match inst.projection {
        Some(_) => instance_braid(inst).ok().map(Some),
        None => Some(None),
    };
    let kinds = kinds
        .iter()
        .map(|&k| {
            let built = match (&models, &braid) {
                (Some(m), Some(b)) => assemble(inst, k, m, b.as_ref()),
                _ => build_sequence(inst, k),
            };
            (k, built.and_then(check_built))
        })
        .collect();
    InstanceReport {
        instance: inst.name.clone(),
        kinds,
    }
}

/// [`verify_instance`] for a dimension-only instance.
pub fn verify_tables(inst: &TableInstance, kinds: &[SequenceKind]) -> InstanceReport {
    InstanceReport {
        instance: inst.name.clone(),
        kinds: kinds
            .iter()
            .map(|&k| (k, build_table_sequence(inst, k).and_then(check_built)))
            .collect(),
    }
}

fn check_built(built: BuiltSequence) -> Result<KindReport> {
    let dims = built.dims();
    let feasibility = betti_feasible(&dims);
    let segments_balanced = segment_sums(&dims).iter().all(|s| s.alternating_sum == 0);
    let explicit = match &built.explicit {
        Some(ls) => Some(ExplicitCheck {
            dims_agree: ls.dims() == dims,
            exactness: check_exact(ls)?,
        }),
        None => None,
    };
    Ok(KindReport {
        kind: built.kind,
        dims,
        feasibility,
        segments_balanced,
        explicit,
    })
}

/// The diagram reducing the Smith-Gysin sequence of a semi-free explicit
/// instance to its Gysin sequence. Per degree `i`, the columns are
///
/// ```text
/// H^i(B,F)          H^i(B)           H^i(F)
///    ↓ (1, ι)          ↓ (-π^*, 1)      ↓ (0, -1)
/// H^i(B,F)⊕H^i(B)  H^i(M)⊕H^i(B)   H^{i+1}(Q)⊕H^i(F)
///    ↓ ι - 1           ↓ 1 + π^*        ↓ pr₁
/// H^i(B)            H^i(M)           H^{i+1}(Q)
/// ```
///
/// The top row is the sequence of the pair `(B,F)`, the middle row the
/// Smith-Gysin sequence (with its composite `H^i(B,F) → H^i(M)` negated)
/// plus the identity sequence of `H^*(B)`, and the bottom row the Gysin
/// sequence with its first arrow negated. These signs make every square
/// commute; negating arrows does not change exactness.
pub fn gysin_transfer(inst: &ActionInstance) -> Result<TransferDiagram> {
    if inst.class == ActionClass::General {
        return Err(Error::UnsupportedKind {
            instance: inst.name.clone(),
            kind: "Gysin transfer".into(),
            reason: "the reduction requires a semi-free action".into(),
        });
    }
    let b = instance_braid(inst)?;
    let (lo, hi) = b.window();
    use Arrow::*;
    use Family as X;
    let a = |x: Arrow, d: i32| b.arrow(x, d).into_owned();
    let id = Matrix::identity;
    let zeros = Matrix::zeros;
    let (mut top, mut mid, mut bot) = (Vec::new(), Vec::new(), Vec::new());
    let (mut top_maps, mut mid_maps, mut bot_maps) = (Vec::new(), Vec::new(), Vec::new());
    let (mut upper, mut lower) = (Vec::new(), Vec::new());
    for i in lo - 1..=hi {
        let (e, bb, f, c, aa) = (
            b.dim(X::E, i),
            b.dim(X::B, i),
            b.dim(X::F, i),
            b.dim(X::C, i),
            b.dim(X::A, i + 1),
        );
        let node = |label: &str, dim| SequenceNode::new(label, i, dim);
        top.extend([node("H(B,F)", e), node("H(B)", bb), node("H(F)", c)]);
        mid.extend([
            node("H(B,F)⊕H(B)", e + bb),
            node("H(M)⊕H(B)", f + bb),
            node("H(Q)⊕H(F)", aa + c),
        ]);
        bot.extend([node("H(B)", bb), node("H(M)", f), node("H(Q)", aa)]);

        upper.push(id(e).vstack(&a(EB, i)));
        upper.push((-&a(BF, i)).vstack(&id(bb)));
        upper.push(zeros(aa, c).vstack(&-&id(c)));
        lower.push(a(EB, i).hstack(&-&id(bb)));
        lower.push(id(f).hstack(&a(BF, i)));
        lower.push(id(aa).hstack(&zeros(aa, c)));

        top_maps.extend([a(EB, i), a(BC, i)]);
        mid_maps.push((-&(&a(BF, i) * &a(EB, i))).block_diag(&id(bb)));
        mid_maps.push(a(FA, i).vstack(&a(FC, i)).hstack(&zeros(aa + c, bb)));
        bot_maps.extend([-&a(BF, i), a(FA, i)]);
        if i < hi {
            let (e1, b1) = (b.dim(X::E, i + 1), b.dim(X::B, i + 1));
            top_maps.push(a(CE, i));
            mid_maps.push(a(AE, i + 1).hstack(&-&a(CE, i)).vstack(&zeros(b1, aa + c)));
            bot_maps.push(a(AB, i + 1));
            debug_assert_eq!(a(CE, i).rows(), e1);
        }
    }
    Ok(TransferDiagram {
        top: LongSequence::new(top, top_maps, 3)?,
        middle: LongSequence::new(mid, mid_maps, 3)?,
        bottom: LongSequence::new(bot, bot_maps, 3)?,
        upper,
        lower,
    })
}

fn vertex_map(pairs: impl IntoIterator<Item = (usize, usize)>) -> BTreeMap<usize, usize> {
    pairs.into_iter().collect()
}

/// Projection of a suspension onto the 3-vertex interval: south pole to 0,
/// the equator to 1, north pole to 2.
fn suspension_projection(vertices: &[usize], south: usize, north: usize) -> BTreeMap<usize, usize> {
    vertex_map(vertices.iter().map(|&v| {
        (
            v,
            if v == south {
                0
            } else if v == north {
                2
            } else {
                1
            },
        )
    }))
}

fn suspension_instance(
    name: &str,
    description: &str,
    group: Group,
    class: ActionClass,
    equator: SimplicialComplex,
) -> ActionInstance {
    let (total, south, north) = equator.suspension();
    let projection = suspension_projection(&total.vertices(), south, north);
    ActionInstance {
        name: name.into(),
        description: description.into(),
        group,
        class,
        fixed_in_total: SimplicialComplex::points(&[south, north]),
        total,
        orbit: SimplicialComplex::interval(3),
        fixed_in_orbit: SimplicialComplex::points(&[0, 2]),
        singular_in_orbit: None,
        circle_fixed: None,
        projection: Some(projection),
    }
}

/// The circle `{a + bi}` of unit quaternions, as a hexagon through ±1 at
/// vertices 0 and 3, with conjugation by `j` acting as the reflection
/// fixing those two vertices.
pub fn hexagon_reflection() -> SimplicialInvolution {
    let reflection = vertex_map((0..6).map(|v| (v, (6 - v) % 6)));
    SimplicialInvolution::new(SimplicialComplex::cycle(6), reflection).expect("reflection is simplicial")
}

/// The shipped instances.
pub fn catalog() -> Vec<ActionInstance> {
    let rotation = suspension_instance(
        "s1-rotation-s2",
        "S1 rotating S2 about an axis: semi-free with the two poles fixed; \
         M is the suspension of a triangle, B an interval. Explicit maps.",
        Group::S1,
        ActionClass::SemiFree,
        SimplicialComplex::boundary_of_simplex(2),
    );
    let hopf = ActionInstance {
        name: "s1-hopf-s3".into(),
        description: "Hopf action of S1 on S3 over S2: free; M = ∂Δ4, B = ∂Δ3. \
                      Dimension-only: no simplicial projection is supplied."
            .into(),
        group: Group::S1,
        class: ActionClass::Free,
        total: SimplicialComplex::boundary_of_simplex(4),
        fixed_in_total: SimplicialComplex::empty(),
        orbit: SimplicialComplex::boundary_of_simplex(3),
        fixed_in_orbit: SimplicialComplex::empty(),
        singular_in_orbit: None,
        circle_fixed: None,
        projection: None,
    };
    let s7 = ActionInstance {
        name: "s3-free-s7".into(),
        description: "Free S3 action on S7 over S4: M = ∂Δ8, B = ∂Δ5. \
                      Dimension-only: no simplicial projection is supplied."
            .into(),
        group: Group::S3,
        class: ActionClass::Free,
        total: SimplicialComplex::boundary_of_simplex(8),
        fixed_in_total: SimplicialComplex::empty(),
        orbit: SimplicialComplex::boundary_of_simplex(5),
        fixed_in_orbit: SimplicialComplex::empty(),
        singular_in_orbit: None,
        circle_fixed: None,
        projection: None,
    };
    let suspension = suspension_instance(
        "s3-semifree-s4",
        "S3 acting on S4 = ΣS3 by suspending left multiplication: semi-free with the \
         two poles fixed; M is the suspension of ∂Δ4, B an interval. Explicit maps.",
        Group::S3,
        ActionClass::SemiFree,
        SimplicialComplex::boundary_of_simplex(4),
    );
    let mut conjugation = suspension_instance(
        "s3-conjugation-s3",
        "S3 acting on itself by conjugation: every isotropy group is infinite, ±1 are \
         fixed, B = Σ/S3 is the interval of real parts and M^{S1} is the circle {a+bi} \
         with j acting by reflection. M is the suspension of ∂Δ3. Explicit maps.",
        Group::S3,
        ActionClass::General,
        SimplicialComplex::boundary_of_simplex(3),
    );
    conjugation.singular_in_orbit = Some(SimplicialComplex::interval(3));
    conjugation.circle_fixed = Some(hexagon_reflection());
    vec![rotation, hopf, s7, suspension, conjugation]
}

pub fn find_instance(name: &str) -> Option<ActionInstance> {
    catalog().into_iter().find(|i| i.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::validate_braid;
    use crate::exactness::{acyclicity_transfer, TransferVerdict};

    fn instance(name: &str) -> ActionInstance {
        find_instance(name).unwrap()
    }

    /// Dimensions of the period at sequence degree `star`.
    fn period(b: &BuiltSequence, star: i32) -> [usize; 3] {
        let i = 3 * (star + 1) as usize;
        let d = b.dims();
        [d[i], d[i + 1], d[i + 2]]
    }

    #[test]
    fn kinds_round_trip_through_their_tags() {
        for k in SequenceKind::ALL {
            assert_eq!(k.tag().parse::<SequenceKind>().unwrap(), k);
        }
        assert!("S5_GYSIN".parse::<SequenceKind>().is_err());
    }

    #[test]
    fn semifree_s4_smith_gysin_segments() {
        let b = build_sequence(&instance("s3-semifree-s4"), SequenceKind::S3SmithGysin).unwrap();
        assert_eq!(period(&b, 0), [1, 2, 1]);
        assert_eq!(period(&b, 1), [0, 0, 0]);
        assert_eq!(period(&b, 4), [1, 1, 0]);
        let explicit = b.explicit.as_ref().unwrap();
        assert_eq!(explicit.dims(), b.dims());
        assert!(check_exact(explicit).unwrap().is_exact());
    }

    #[test]
    fn rotation_s2_smith_gysin_segments() {
        let b = build_sequence(&instance("s1-rotation-s2"), SequenceKind::S1SmithGysin).unwrap();
        assert_eq!(period(&b, 0), [1, 2, 1]);
        assert_eq!(period(&b, 2), [1, 1, 0]);
    }

    #[test]
    fn conjugation_exotic_node() {
        let inst = instance("s3-conjugation-s3");
        let b = build_sequence(&inst, SequenceKind::S3SmithGysin).unwrap();
        assert_eq!(period(&b, 0), [1, 2, 1]);
        assert_eq!(period(&b, 3), [1, 1, 0]);
        let exotic = anti_invariants(inst.circle_fixed.as_ref().unwrap()).unwrap();
        assert_eq!(exotic.anti_invariant.dims_on(0, 1), vec![0, 1]);
        assert!(matches!(
            build_sequence(&inst, SequenceKind::S3SemifreeGysin),
            Err(Error::UnsupportedKind { .. })
        ));
    }

    #[test]
    fn free_s7_gysin_pattern() {
        let b = build_sequence(&instance("s3-free-s7"), SequenceKind::S3FreeGysin).unwrap();
        assert!(b.explicit.is_none());
        assert_eq!(period(&b, -1), [0, 0, 1]);
        assert_eq!(period(&b, 0), [1, 0, 0]);
        // Cup with the Euler class carries H^0(B) onto H^4(B).
        assert_eq!(period(&b, 3), [0, 1, 1]);
        assert_eq!(period(&b, 4), [0, 0, 0]);
        assert_eq!(period(&b, 7), [1, 1, 0]);
        assert!(betti_feasible(&b.dims()).feasible);
    }

    #[test]
    fn missing_models_are_named() {
        let mut inst = instance("s3-conjugation-s3");
        inst.circle_fixed = None;
        match build_sequence(&inst, SequenceKind::S3SmithGysin) {
            Err(Error::MissingModel { model, .. }) => assert_eq!(model, "M^S1 with involution"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(build_sequence(&inst, SequenceKind::S3Second).is_ok());
    }

    #[test]
    fn corrupted_fixed_set_is_infeasible() {
        let mut inst = instance("s3-semifree-s4");
        inst.fixed_in_total = SimplicialComplex::points(&[0, 1, 6]);
        inst.projection = None;
        let report = verify_instance(&inst, &[SequenceKind::S3SmithGysin]);
        let kind = report.kinds[0].1.as_ref().unwrap();
        assert!(!kind.feasibility.feasible);
        assert!(!report.passed());
    }

    #[test]
    fn catalog_passes_every_supported_kind() {
        for inst in catalog() {
            let kinds = inst.supported_kinds();
            assert!(!kinds.is_empty());
            let report = verify_instance(&inst, &kinds);
            for (k, r) in &report.kinds {
                assert!(r.as_ref().is_ok_and(KindReport::passed), "{} {k}: {r:?}", inst.name);
            }
        }
    }

    #[test]
    fn explicit_braids_are_commutative_exact() {
        for inst in catalog().into_iter().filter(ActionInstance::is_explicit) {
            let b = instance_braid(&inst).unwrap();
            assert!(validate_braid(&b).is_commutative_exact(), "{}", inst.name);
        }
    }

    #[test]
    fn semifree_degeneration() {
        let inst = instance("s3-semifree-s4");
        let general = inst.as_general();
        let a = build_sequence(&inst, SequenceKind::S3SmithGysin).unwrap();
        let b = build_sequence(&general, SequenceKind::S3SmithGysin).unwrap();
        assert_eq!(a.dims(), b.dims());
    }

    #[test]
    fn rotation_transfer_certifies_the_gysin_row() {
        let t = gysin_transfer(&instance("s1-rotation-s2")).unwrap();
        let report = acyclicity_transfer(&t).unwrap();
        assert_eq!(report.verdict, TransferVerdict::Certified, "{report:?}");
        assert!(report.bottom_defects.iter().all(|&d| d == 0));
    }

    #[test]
    fn dimension_tables_reproduce_the_simplicial_models() {
        let inst = instance("s3-free-s7");
        let tables = TableInstance {
            name: "s7 tables".into(),
            group: Group::S3,
            class: ActionClass::Free,
            models: ModelDims::of(&inst).unwrap(),
        };
        assert_eq!(tables.supported_kinds(), inst.supported_kinds());
        let from_tables = build_table_sequence(&tables, SequenceKind::S3FreeGysin).unwrap();
        let from_models = build_sequence(&inst, SequenceKind::S3FreeGysin).unwrap();
        assert_eq!(from_tables.dims(), from_models.dims());
        assert!(verify_tables(&tables, &tables.supported_kinds()).passed());
    }
}
