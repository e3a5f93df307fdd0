//! Short exact sequences of complexes, the connecting homomorphism, long
//! exact sequences and exactness checking.
//!
//! Exactness of a sequence of vector spaces is measured as the cohomology
//! of the sequence read as a cochain complex: the defect at a node is
//! `dim ker(out) - rank(in)`.

use std::fmt;

use crate::cochain::{
    cohomology, induced_map_with, validate_chain_map, validate_complex, ChainMap,
    CochainComplex, CohomologyResult,
};
use crate::error::{Error, Result};
use crate::linalg::{rank, solve, Matrix, Rational, Vector};

/// `0 → A --inj--> B --surj--> C → 0`, degreewise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExactSequence {
    inj: ChainMap,
    surj: ChainMap,
    names: [String; 3],
}

impl ShortExactSequence {
    /// Both maps must have shift 0 and share the middle complex.
    pub fn new(inj: ChainMap, surj: ChainMap) -> Result<Self> {
        if inj.shift() != 0 || surj.shift() != 0 {
            return Err(Error::Structural(format!(
                "short exact sequence maps must have shift 0, got {} and {}",
                inj.shift(),
                surj.shift()
            )));
        }
        if inj.target() != surj.source() {
            return Err(Error::Structural(
                "the injection's target differs from the surjection's source".into(),
            ));
        }
        Ok(ShortExactSequence {
            inj,
            surj,
            names: ["A".into(), "B".into(), "C".into()],
        })
    }

    /// Labels used for the nodes of the long exact sequence.
    pub fn with_names(mut self, a: &str, b: &str, c: &str) -> Self {
        self.names = [a.into(), b.into(), c.into()];
        self
    }

    pub fn names(&self) -> &[String; 3] {
        &self.names
    }

    pub fn inj(&self) -> &ChainMap {
        &self.inj
    }

    pub fn surj(&self) -> &ChainMap {
        &self.surj
    }

    pub fn sub(&self) -> &CochainComplex {
        self.inj.source()
    }

    pub fn middle(&self) -> &CochainComplex {
        self.inj.target()
    }

    pub fn quotient(&self) -> &CochainComplex {
        self.surj.target()
    }

    fn window(&self) -> (i32, i32) {
        let cs = [self.sub(), self.middle(), self.quotient()];
        let nonzero: Vec<_> = cs.iter().filter(|c| !c.is_zero()).collect();
        if nonzero.is_empty() {
            return (0, -1);
        }
        let lo = nonzero.iter().map(|c| c.lo()).min().unwrap();
        let hi = nonzero.iter().map(|c| c.hi()).max().unwrap();
        (lo, hi)
    }
}

/// Which short-exactness condition fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SesCondition {
    NotInjective,
    NotSurjective,
    NotExactInMiddle,
}

impl fmt::Display for SesCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SesCondition::NotInjective => "not injective",
            SesCondition::NotSurjective => "not surjective",
            SesCondition::NotExactInMiddle => "image differs from kernel",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SesReport {
    /// Complexes (by position 0, 1, 2) whose differentials do not square to zero.
    pub invalid_complexes: Vec<usize>,
    /// Maps (0 = injection, 1 = surjection) that do not commute with `d`.
    pub invalid_maps: Vec<usize>,
    pub failures: Vec<(i32, SesCondition)>,
}

impl SesReport {
    pub fn is_ok(&self) -> bool {
        self.invalid_complexes.is_empty() && self.invalid_maps.is_empty() && self.failures.is_empty()
    }
}

impl fmt::Display for SesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let mut parts = Vec::new();
        for c in &self.invalid_complexes {
            parts.push(format!("complex {c} has d∘d ≠ 0"));
        }
        for m in &self.invalid_maps {
            let which = if *m == 0 { "injection" } else { "surjection" };
            parts.push(format!("{which} is not a chain map"));
        }
        for (k, cond) in &self.failures {
            parts.push(format!("degree {k}: {cond}"));
        }
        write!(f, "{}", parts.join("; "))
    }
}

/// Degreewise injectivity, surjectivity and exactness in the middle, all by
/// rank computations.
pub fn validate_ses(s: &ShortExactSequence) -> SesReport {
    let mut report = SesReport::default();
    for (i, c) in [s.sub(), s.middle(), s.quotient()].iter().enumerate() {
        if !validate_complex(c).is_ok() {
            report.invalid_complexes.push(i);
        }
    }
    for (i, m) in [&s.inj, &s.surj].iter().enumerate() {
        if !validate_chain_map(m).is_ok() {
            report.invalid_maps.push(i);
        }
    }
    let (lo, hi) = s.window();
    for k in lo..=hi {
        let inj = s.inj.block(k);
        let surj = s.surj.block(k);
        let ri = rank(&inj);
        let rs = rank(&surj);
        if ri < s.sub().dim(k) {
            report.failures.push((k, SesCondition::NotInjective));
        }
        if rs < s.quotient().dim(k) {
            report.failures.push((k, SesCondition::NotSurjective));
        }
        let composite_zero = (&*surj * &*inj).is_zero();
        if !composite_zero || ri + rs != s.middle().dim(k) {
            report.failures.push((k, SesCondition::NotExactInMiddle));
        }
    }
    report
}

fn require_ses(s: &ShortExactSequence) -> Result<()> {
    let report = validate_ses(s);
    if report.is_ok() {
        Ok(())
    } else {
        Err(Error::NotShortExact(report))
    }
}

/// Lifts a vector through a surjective matrix.
pub type Lift<'a> = &'a dyn Fn(&Matrix, &[Rational]) -> Option<Vector>;

/// The default lift: the pivot-first particular solution.
pub fn pivot_lift(m: &Matrix, v: &[Rational]) -> Option<Vector> {
    solve(m, v).ok().flatten()
}

/// `δ : H^k(C) → H^{k+1}(A)`, with no extra sign: a representative is
/// lifted to `B`, differentiated, and pulled back along the injection.
pub fn connecting_map(s: &ShortExactSequence, k: i32) -> Result<Matrix> {
    connecting_map_with_lift(s, k, &pivot_lift)
}

/// [`connecting_map`] with a caller-chosen lift through the surjection.
pub fn connecting_map_with_lift(s: &ShortExactSequence, k: i32, lift: Lift<'_>) -> Result<Matrix> {
    require_ses(s)?;
    let ha = cohomology(s.sub())?;
    let hc = cohomology(s.quotient())?;
    connecting_map_using(s, k, &ha, &hc, lift)
}

pub(crate) fn connecting_map_using(
    s: &ShortExactSequence,
    k: i32,
    ha: &CohomologyResult,
    hc: &CohomologyResult,
    lift: Lift<'_>,
) -> Result<Matrix> {
    let reps = hc.representatives(k);
    let surj = s.surj.block(k);
    let d_b = s.middle().differential(k);
    let inj_next = s.inj.block(k + 1);
    let proj = ha.projection(k + 1);
    let mut columns = Vec::with_capacity(reps.cols());
    for c in reps.columns() {
        let b = lift(&surj, &c)
            .ok_or_else(|| Error::Internal(format!("cocycle in degree {k} has no lift")))?;
        let db = d_b.apply(&b);
        let a = solve(&inj_next, &db)?.ok_or_else(|| {
            Error::Internal(format!("d(lift) in degree {} is not in the sub-complex", k + 1))
        })?;
        columns.push(proj.apply(&a));
    }
    Ok(Matrix::from_columns(ha.dim(k + 1), &columns))
}

/// One node of a long sequence: a space placed at a sequence degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SequenceNode {
    pub label: String,
    pub degree: i32,
    pub dim: usize,
}

impl SequenceNode {
    pub fn new(label: impl Into<String>, degree: i32, dim: usize) -> Self {
        SequenceNode {
            label: label.into(),
            degree,
            dim,
        }
    }
}

impl fmt::Display for SequenceNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.label, self.degree)
    }
}

/// A finite window `N_0 → N_1 → … → N_{n-1}` of a long sequence, bounded by
/// zero on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongSequence {
    nodes: Vec<SequenceNode>,
    arrows: Vec<Matrix>,
    period: usize,
}

impl LongSequence {
    /// `arrows[i]` maps node `i` to node `i + 1`. `period` is the number of
    /// nodes after which the labels repeat with the degree raised by one.
    pub fn new(nodes: Vec<SequenceNode>, arrows: Vec<Matrix>, period: usize) -> Result<Self> {
        let expected = nodes.len().saturating_sub(1);
        if arrows.len() != expected {
            return Err(Error::Structural(format!(
                "{} nodes need {expected} arrows, got {}",
                nodes.len(),
                arrows.len()
            )));
        }
        for (i, a) in arrows.iter().enumerate() {
            if a.shape() != (nodes[i + 1].dim, nodes[i].dim) {
                return Err(Error::Structural(format!(
                    "arrow {i} ({} → {}) must be {}x{}, got {}x{}",
                    nodes[i],
                    nodes[i + 1],
                    nodes[i + 1].dim,
                    nodes[i].dim,
                    a.rows(),
                    a.cols()
                )));
            }
        }
        Ok(LongSequence {
            nodes,
            arrows,
            period,
        })
    }

    pub fn nodes(&self) -> &[SequenceNode] {
        &self.nodes
    }

    pub fn arrows(&self) -> &[Matrix] {
        &self.arrows
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.nodes.iter().map(|n| n.dim).collect()
    }

    /// The sequence read as a cochain complex with node `i` in degree `i`.
    pub fn as_complex(&self) -> CochainComplex {
        CochainComplex::new(0, self.dims(), self.arrows.clone()).expect("shapes checked in new")
    }

    /// Replaces one arrow; the shape must match.
    pub fn with_arrow(mut self, i: usize, arrow: Matrix) -> Result<Self> {
        if self.arrows.get(i).map(Matrix::shape) != Some(arrow.shape()) {
            return Err(Error::Structural(format!("arrow {i} has the wrong shape")));
        }
        self.arrows[i] = arrow;
        Ok(self)
    }
}

/// Alternating dimension sum over a maximal run of nonzero nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentSum {
    pub start: usize,
    pub end: usize,
    pub alternating_sum: i64,
}

/// Homology of a sequence read as a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    /// `dim ker(out) - rank(in)` at each node.
    pub defects: Vec<usize>,
    pub segments: Vec<SegmentSum>,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.defects.iter().all(|&d| d == 0)
            && self.segments.iter().all(|s| s.alternating_sum == 0)
    }

    pub fn total_defect(&self) -> usize {
        self.defects.iter().sum()
    }
}

/// Exactness defects of a long sequence. A sequence whose consecutive arrows
/// do not compose to zero is reported as an error, distinct from inexactness.
pub fn check_exact(ls: &LongSequence) -> Result<ExactnessReport> {
    let bad: Vec<usize> = ls
        .arrows
        .windows(2)
        .enumerate()
        .filter(|(_, w)| !(&w[1] * &w[0]).is_zero())
        .map(|(i, _)| i)
        .collect();
    if !bad.is_empty() {
        return Err(Error::SequenceNotAComplex(bad));
    }
    let h = cohomology(&ls.as_complex())?;
    let defects = (0..ls.len()).map(|i| h.dim(i as i32)).collect();
    Ok(ExactnessReport {
        defects,
        segments: segment_sums(&ls.dims()),
    })
}

/// Alternating sums over every maximal run of nonzero dimensions.
pub fn segment_sums(dims: &[usize]) -> Vec<SegmentSum> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < dims.len() {
        if dims[i] == 0 {
            i += 1;
            continue;
        }
        let start = i;
        let mut sum = 0i64;
        while i < dims.len() && dims[i] > 0 {
            let sign = if (i - start) % 2 == 0 { 1 } else { -1 };
            sum += sign * dims[i] as i64;
            i += 1;
        }
        out.push(SegmentSum {
            start,
            end: i - 1,
            alternating_sum: sum,
        });
    }
    out
}

/// Result of dimension-level exactness screening.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Feasibility {
    pub feasible: bool,
    /// Forced rank of each arrow; negative entries witness infeasibility.
    pub ranks: Vec<i64>,
}

/// Whether the dimensions can belong to an exact sequence bounded by zeros.
///
/// With zero neighbours at both ends, the ranks are forced left to right by
/// `dim_i = r_{i-1} + r_i`; the profile is feasible iff every forced rank is
/// nonnegative and the last node is exactly the image of the previous arrow.
pub fn betti_feasible(dims: &[usize]) -> Feasibility {
    let mut ranks = Vec::with_capacity(dims.len().saturating_sub(1));
    let mut incoming = 0i64;
    let mut feasible = true;
    for &d in dims.iter().take(dims.len().saturating_sub(1)) {
        let r = d as i64 - incoming;
        if r < 0 {
            feasible = false;
        }
        ranks.push(r);
        incoming = r;
    }
    if let Some(&last) = dims.last() {
        if last as i64 != incoming {
            feasible = false;
        }
    }
    Feasibility { feasible, ranks }
}

/// An explicit exact sequence with the given arrow ranks: node `i` has
/// dimension `r_{i-1} + r_i`, and each arrow carries the last `r_i`
/// coordinates of its source onto the first `r_i` of its target.
pub fn exact_sequence_from_ranks(ranks: &[usize]) -> LongSequence {
    let n = ranks.len() + 1;
    let r = |i: isize| -> usize {
        if i < 0 || i as usize >= ranks.len() {
            0
        } else {
            ranks[i as usize]
        }
    };
    let nodes: Vec<_> = (0..n)
        .map(|i| SequenceNode::new(format!("N{i}"), i as i32, r(i as isize - 1) + r(i as isize)))
        .collect();
    let arrows = (0..ranks.len())
        .map(|i| {
            let src = nodes[i].dim;
            let dst = nodes[i + 1].dim;
            let offset = r(i as isize - 1);
            let mut m = Matrix::zeros(dst, src);
            for j in 0..ranks[i] {
                m.set(j, offset + j, crate::linalg::rat(1));
            }
            m
        })
        .collect();
    LongSequence::new(nodes, arrows, 1).expect("shapes by construction")
}

/// The long exact cohomology sequence
/// `… → H^k(A) → H^k(B) → H^k(C) --δ--> H^{k+1}(A) → …`
/// over the degree window of the three complexes.
pub fn les_of_ses(s: &ShortExactSequence) -> Result<LongSequence> {
    require_ses(s)?;
    let ha = cohomology(s.sub())?;
    let hb = cohomology(s.middle())?;
    let hc = cohomology(s.quotient())?;
    les_from_parts(s, &ha, &hb, &hc, false)
}

/// Builds the long exact sequence from precomputed cohomology. With
/// `negate_connecting` the connecting maps enter with a minus sign.
pub(crate) fn les_from_parts(
    s: &ShortExactSequence,
    ha: &CohomologyResult,
    hb: &CohomologyResult,
    hc: &CohomologyResult,
    negate_connecting: bool,
) -> Result<LongSequence> {
    let (lo, hi) = s.window();
    let f = induced_map_with(&s.inj, ha, hb);
    let g = induced_map_with(&s.surj, hb, hc);
    let [a, b, c] = &s.names;
    let mut nodes = Vec::new();
    let mut arrows = Vec::new();
    for k in lo..=hi {
        nodes.push(SequenceNode::new(a.clone(), k, ha.dim(k)));
        nodes.push(SequenceNode::new(b.clone(), k, hb.dim(k)));
        nodes.push(SequenceNode::new(c.clone(), k, hc.dim(k)));
        arrows.push(f.block(k));
        arrows.push(g.block(k));
        if k < hi {
            let delta = connecting_map_using(s, k, ha, hc, &pivot_lift)?;
            arrows.push(if negate_connecting { -&delta } else { delta });
        }
    }
    LongSequence::new(nodes, arrows, 3)
}

/// Three long sequences joined by degreewise short exact columns:
/// `0 → top_i --upper_i--> middle_i --lower_i--> bottom_i → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferDiagram {
    pub top: LongSequence,
    pub middle: LongSequence,
    pub bottom: LongSequence,
    pub upper: Vec<Matrix>,
    pub lower: Vec<Matrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Row {
    Top,
    Middle,
    Bottom,
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Row::Top => "top",
            Row::Middle => "middle",
            Row::Bottom => "bottom",
        })
    }
}

/// A violated hypothesis of a transfer diagram's shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransferDefect {
    Shape(String),
    RowNotAComplex { row: Row, positions: Vec<usize> },
    ColumnNotShortExact { column: usize, condition: SesCondition },
    /// The square between columns `column` and `column + 1` whose top edge
    /// lies on `row` does not commute.
    SquareFails { row: Row, column: usize },
}

impl fmt::Display for TransferDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransferDefect::Shape(s) => write!(f, "shape: {s}"),
            TransferDefect::RowNotAComplex { row, positions } => {
                write!(f, "{row} row is not a complex at arrows {positions:?}")
            }
            TransferDefect::ColumnNotShortExact { column, condition } => {
                write!(f, "column {column} is {condition}")
            }
            TransferDefect::SquareFails { row, column } => write!(
                f,
                "square below the {row} row between columns {column} and {} does not commute",
                column + 1
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransferVerdict {
    /// Top and middle rows are exact, hence so is the bottom row.
    Certified,
    /// The diagram is well formed but the top or middle row is not exact.
    HypothesisFailed,
    /// The diagram violates its structural hypotheses; no verdict.
    Structural,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    pub verdict: TransferVerdict,
    pub structural: Vec<TransferDefect>,
    pub top_defects: Vec<usize>,
    pub middle_defects: Vec<usize>,
    pub bottom_defects: Vec<usize>,
    /// Whether the long exact sequence of the column sequence had zero defect.
    pub les_exact: bool,
}

/// Two-out-of-three for acyclicity: reads each row as a complex and the
/// columns as a short exact sequence of complexes; if the top and middle
/// rows are acyclic, the long exact sequence forces the bottom row to be.
pub fn acyclicity_transfer(t: &TransferDiagram) -> Result<TransferReport> {
    let structural = transfer_structure(t);
    if !structural.is_empty() {
        return Ok(TransferReport {
            verdict: TransferVerdict::Structural,
            structural,
            top_defects: vec![],
            middle_defects: vec![],
            bottom_defects: vec![],
            les_exact: false,
        });
    }
    let top = t.top.as_complex();
    let middle = t.middle.as_complex();
    let bottom = t.bottom.as_complex();
    let n = t.top.len() as i32;
    let blocks = |ms: &[Matrix]| -> Vec<(i32, Matrix)> { (0..n).zip(ms.iter().cloned()).collect() };
    let inj = ChainMap::new(top.clone(), middle.clone(), 0, blocks(&t.upper))?;
    let surj = ChainMap::new(middle.clone(), bottom.clone(), 0, blocks(&t.lower))?;
    let ses = ShortExactSequence::new(inj, surj)?.with_names("top", "middle", "bottom");
    let ht = cohomology(&top)?;
    let hm = cohomology(&middle)?;
    let hb = cohomology(&bottom)?;
    let les = les_from_parts(&ses, &ht, &hm, &hb, false)?;
    let les_exact = check_exact(&les)?.is_exact();
    let defects = |h: &CohomologyResult| (0..n).map(|i| h.dim(i)).collect::<Vec<_>>();
    let top_defects = defects(&ht);
    let middle_defects = defects(&hm);
    let bottom_defects = defects(&hb);
    let hypotheses = top_defects.iter().chain(&middle_defects).all(|&d| d == 0);
    let verdict = if hypotheses && les_exact {
        TransferVerdict::Certified
    } else {
        TransferVerdict::HypothesisFailed
    };
    Ok(TransferReport {
        verdict,
        structural,
        top_defects,
        middle_defects,
        bottom_defects,
        les_exact,
    })
}

fn transfer_structure(t: &TransferDiagram) -> Vec<TransferDefect> {
    let mut out = Vec::new();
    let n = t.top.len();
    if t.middle.len() != n || t.bottom.len() != n || t.upper.len() != n || t.lower.len() != n {
        out.push(TransferDefect::Shape(format!(
            "rows have {}, {}, {} nodes with {} upper and {} lower columns",
            t.top.len(),
            t.middle.len(),
            t.bottom.len(),
            t.upper.len(),
            t.lower.len()
        )));
        return out;
    }
    for i in 0..n {
        let (top, mid, bot) = (t.top.nodes[i].dim, t.middle.nodes[i].dim, t.bottom.nodes[i].dim);
        if t.upper[i].shape() != (mid, top) || t.lower[i].shape() != (bot, mid) {
            out.push(TransferDefect::Shape(format!("column {i} has mismatched matrices")));
        }
    }
    if !out.is_empty() {
        return out;
    }
    for (row, seq) in [(Row::Top, &t.top), (Row::Middle, &t.middle), (Row::Bottom, &t.bottom)] {
        if let Err(Error::SequenceNotAComplex(positions)) = check_exact(seq) {
            out.push(TransferDefect::RowNotAComplex { row, positions });
        }
    }
    for i in 0..n {
        let ri = rank(&t.upper[i]);
        let rl = rank(&t.lower[i]);
        if ri < t.top.nodes[i].dim {
            out.push(TransferDefect::ColumnNotShortExact {
                column: i,
                condition: SesCondition::NotInjective,
            });
        }
        if rl < t.bottom.nodes[i].dim {
            out.push(TransferDefect::ColumnNotShortExact {
                column: i,
                condition: SesCondition::NotSurjective,
            });
        }
        if !(&t.lower[i] * &t.upper[i]).is_zero() || ri + rl != t.middle.nodes[i].dim {
            out.push(TransferDefect::ColumnNotShortExact {
                column: i,
                condition: SesCondition::NotExactInMiddle,
            });
        }
    }
    for i in 0..n.saturating_sub(1) {
        if &t.middle.arrows[i] * &t.upper[i] != &t.upper[i + 1] * &t.top.arrows[i] {
            out.push(TransferDefect::SquareFails {
                row: Row::Top,
                column: i,
            });
        }
        if &t.bottom.arrows[i] * &t.lower[i] != &t.lower[i + 1] * &t.middle.arrows[i] {
            out.push(TransferDefect::SquareFails {
                row: Row::Middle,
                column: i,
            });
        }
    }
    out
}
