//! Braids of four interleaved long sequences, their construction from a
//! commutative square of short exact sequences, and the splice into a fifth
//! long exact sequence.
//!
//! Six families `A … F` of graded spaces are wired by twelve arrow families,
//! three per strand:
//!
//! ```text
//! strand 1:  A^k → B^k → F^k → A^{k+1}
//! strand 2:  D^k → F^k → C^k → D^{k+1}
//! strand 3:  E^k → B^k → C^k → E^{k+1}
//! strand 4:  A^k → E^k → D^k → A^{k+1}
//! ```
//!
//! The braid is commutative when the four triangles and two diamonds below
//! commute in every degree:
//!
//! ```text
//! A→B = (E→B)(A→E)          B→C = (F→C)(B→F)
//! C^k→D^{k+1} = (E→D)(C→E)  D^k→A^{k+1} = (F→A)(D→F)
//! (B→F)(E→B) = (D→F)(E→D)   (C→E)(F→C) = (A→E)(F→A)
//! ```

use std::borrow::Cow;
use std::fmt;

use crate::cochain::{cohomology, induced_map_with, CochainComplex, CohomologyResult, GradedMap};
use crate::error::{Error, Result};
use crate::exactness::{
    check_exact, connecting_map_using, pivot_lift, validate_ses, ExactnessReport, LongSequence,
    SequenceNode, SesReport, ShortExactSequence,
};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Family {
    pub const ALL: [Family; 6] = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F];

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strand {
    One,
    Two,
    Three,
    Four,
}

impl Strand {
    pub const ALL: [Strand; 4] = [Strand::One, Strand::Two, Strand::Three, Strand::Four];

    /// The three arrows of one period, in sequence order.
    pub fn arrows(self) -> [Arrow; 3] {
        match self {
            Strand::One => [Arrow::AB, Arrow::BF, Arrow::FA],
            Strand::Two => [Arrow::DF, Arrow::FC, Arrow::CD],
            Strand::Three => [Arrow::EB, Arrow::BC, Arrow::CE],
            Strand::Four => [Arrow::AE, Arrow::ED, Arrow::DA],
        }
    }

    pub fn number(self) -> u8 {
        self as u8 + 1
    }
}

impl fmt::Display for Strand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "strand {}", self.number())
    }
}

/// The twelve arrow families. `XY` maps `X^k` to `Y^k`, except `FA`, `CD`,
/// `CE` and `DA`, which raise the degree by one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arrow {
    AB,
    BF,
    FA,
    CD,
    DF,
    FC,
    CE,
    EB,
    BC,
    AE,
    ED,
    DA,
}

impl Arrow {
    pub const ALL: [Arrow; 12] = [
        Arrow::AB,
        Arrow::BF,
        Arrow::FA,
        Arrow::CD,
        Arrow::DF,
        Arrow::FC,
        Arrow::CE,
        Arrow::EB,
        Arrow::BC,
        Arrow::AE,
        Arrow::ED,
        Arrow::DA,
    ];

    pub fn source(self) -> Family {
        use Arrow::*;
        match self {
            AB | AE => Family::A,
            BF | BC => Family::B,
            CD | CE => Family::C,
            DF | DA => Family::D,
            EB | ED => Family::E,
            FA | FC => Family::F,
        }
    }

    pub fn target(self) -> Family {
        use Arrow::*;
        match self {
            FA | DA => Family::A,
            AB | EB => Family::B,
            FC | BC => Family::C,
            CD | ED => Family::D,
            CE | AE => Family::E,
            BF | DF => Family::F,
        }
    }

    /// Degree raise from source to target.
    pub fn raise(self) -> i32 {
        match self {
            Arrow::FA | Arrow::CD | Arrow::CE | Arrow::DA => 1,
            _ => 0,
        }
    }

    pub fn strand(self) -> Strand {
        use Arrow::*;
        match self {
            AB | BF | FA => Strand::One,
            CD | DF | FC => Strand::Two,
            CE | EB | BC => Strand::Three,
            AE | ED | DA => Strand::Four,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{}", self.source(), self.target())
    }
}

/// A braid on the degree window `lo..=hi`; every family is zero outside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Braid {
    lo: i32,
    hi: i32,
    names: [String; 6],
    dims: [Vec<usize>; 6],
    arrows: [Vec<Matrix>; 12],
}

impl Braid {
    /// `dims[f][i]` is the dimension of family `f` in degree `lo + i`;
    /// `arrows[a][i]` is arrow `a` out of degree `lo + i`. Every listed
    /// matrix must match the dimensions of its endpoints.
    pub fn new(
        lo: i32,
        hi: i32,
        names: [String; 6],
        dims: [Vec<usize>; 6],
        arrows: [Vec<Matrix>; 12],
    ) -> Result<Self> {
        let len = (hi - lo + 1).max(0) as usize;
        for f in Family::ALL {
            if dims[f.index()].len() != len {
                return Err(Error::Structural(format!(
                    "family {f} lists {} degrees, window has {len}",
                    dims[f.index()].len()
                )));
            }
        }
        let braid = Braid {
            lo,
            hi,
            names,
            dims,
            arrows,
        };
        for a in Arrow::ALL {
            let ms = &braid.arrows[a.index()];
            if ms.len() != len {
                return Err(Error::Structural(format!(
                    "arrow {a} lists {} degrees, window has {len}",
                    ms.len()
                )));
            }
            for (i, m) in ms.iter().enumerate() {
                let k = lo + i as i32;
                let expected = (braid.dim(a.target(), k + a.raise()), braid.dim(a.source(), k));
                if m.shape() != expected {
                    return Err(Error::Structural(format!(
                        "arrow {a} in degree {k} must be {}x{}, got {}x{}",
                        expected.0,
                        expected.1,
                        m.rows(),
                        m.cols()
                    )));
                }
            }
        }
        Ok(braid)
    }

    /// The braid with every family zero.
    pub fn zero() -> Self {
        Braid {
            lo: 0,
            hi: -1,
            names: default_names(),
            dims: Default::default(),
            arrows: Default::default(),
        }
    }

    pub fn window(&self) -> (i32, i32) {
        (self.lo, self.hi)
    }

    pub fn name(&self, f: Family) -> &str {
        &self.names[f.index()]
    }

    pub fn names(&self) -> &[String; 6] {
        &self.names
    }

    pub fn dim(&self, f: Family, k: i32) -> usize {
        self.offset(k).map_or(0, |i| self.dims[f.index()][i])
    }

    fn offset(&self, k: i32) -> Option<usize> {
        (k >= self.lo && k <= self.hi).then(|| (k - self.lo) as usize)
    }

    /// Arrow `a` out of degree `k`.
    pub fn arrow(&self, a: Arrow, k: i32) -> Cow<'_, Matrix> {
        match self.offset(k) {
            Some(i) => Cow::Borrowed(&self.arrows[a.index()][i]),
            None => Cow::Owned(Matrix::zeros(
                self.dim(a.target(), k + a.raise()),
                self.dim(a.source(), k),
            )),
        }
    }

    /// A copy with arrow `a` in degree `k` replaced.
    pub fn with_arrow(&self, a: Arrow, k: i32, m: Matrix) -> Result<Braid> {
        let i = self
            .offset(k)
            .ok_or_else(|| Error::Structural(format!("degree {k} is outside the braid window")))?;
        if self.arrows[a.index()][i].shape() != m.shape() {
            return Err(Error::Structural(format!(
                "replacement for {a} in degree {k} has the wrong shape"
            )));
        }
        let mut out = self.clone();
        out.arrows[a.index()][i] = m;
        Ok(out)
    }

    /// One strand over the whole window.
    pub fn strand(&self, s: Strand) -> LongSequence {
        let arrows = s.arrows();
        let mut nodes = Vec::new();
        let mut maps = Vec::new();
        for k in self.lo..=self.hi {
            for (j, a) in arrows.iter().enumerate() {
                let f = a.source();
                nodes.push(SequenceNode::new(self.name(f), k, self.dim(f, k)));
                if j < 2 || k < self.hi {
                    maps.push(self.arrow(*a, k).into_owned());
                }
            }
        }
        LongSequence::new(nodes, maps, 3).expect("braid arrows are shape-checked")
    }
}

fn default_names() -> [String; 6] {
    ["A", "B", "C", "D", "E", "F"].map(String::from)
}

/// A commutativity relation of the braid, checked in one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `A→B = (E→B)(A→E)`
    TriangleAB,
    /// `B→C = (F→C)(B→F)`
    TriangleBC,
    /// `C^k→D^{k+1} = (E→D)(C→E)`
    TriangleCD,
    /// `D^k→A^{k+1} = (F→A)(D→F)`
    TriangleDA,
    /// `(B→F)(E→B) = (D→F)(E→D)`
    DiamondEF,
    /// `(C→E)(F→C) = (A→E)(F→A)`
    DiamondFE,
}

impl Relation {
    pub const ALL: [Relation; 6] = [
        Relation::TriangleAB,
        Relation::TriangleBC,
        Relation::TriangleCD,
        Relation::TriangleDA,
        Relation::DiamondEF,
        Relation::DiamondFE,
    ];

    /// Both sides in degree `k`.
    fn sides(self, b: &Braid, k: i32) -> (Matrix, Matrix) {
        use Arrow::*;
        let a = |x: Arrow, d: i32| b.arrow(x, d).into_owned();
        match self {
            Relation::TriangleAB => (a(AB, k), &a(EB, k) * &a(AE, k)),
            Relation::TriangleBC => (a(BC, k), &a(FC, k) * &a(BF, k)),
            Relation::TriangleCD => (a(CD, k), &a(ED, k + 1) * &a(CE, k)),
            Relation::TriangleDA => (a(DA, k), &a(FA, k) * &a(DF, k)),
            Relation::DiamondEF => (&a(BF, k) * &a(EB, k), &a(DF, k) * &a(ED, k)),
            Relation::DiamondFE => (&a(CE, k) * &a(FC, k), &a(AE, k + 1) * &a(FA, k)),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::TriangleAB => "triangle A→E→B",
            Relation::TriangleBC => "triangle B→F→C",
            Relation::TriangleCD => "triangle C→E→D",
            Relation::TriangleDA => "triangle D→F→A",
            Relation::DiamondEF => "diamond E→{B,D}→F",
            Relation::DiamondFE => "diamond F→{C,A}→E",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutativityDefect {
    pub relation: Relation,
    pub degree: i32,
    /// Left side minus right side.
    pub residual: Matrix,
}

/// Exactness of one strand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrandCheck {
    Checked(ExactnessReport),
    /// Consecutive arrows at these positions do not compose to zero.
    NotAComplex(Vec<usize>),
}

impl StrandCheck {
    pub fn is_exact(&self) -> bool {
        matches!(self, StrandCheck::Checked(r) if r.is_exact())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidReport {
    pub commutativity: Vec<CommutativityDefect>,
    pub strands: Vec<(Strand, StrandCheck)>,
}

impl BraidReport {
    pub fn is_commutative(&self) -> bool {
        self.commutativity.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.strands.iter().all(|(_, c)| c.is_exact())
    }

    pub fn is_commutative_exact(&self) -> bool {
        self.is_commutative() && self.is_exact()
    }
}

impl fmt::Display for BraidReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_commutative_exact() {
            return write!(f, "commutative exact");
        }
        let mut parts: Vec<String> = self
            .commutativity
            .iter()
            .map(|d| format!("{} fails in degree {}", d.relation, d.degree))
            .collect();
        for (s, c) in &self.strands {
            match c {
                StrandCheck::NotAComplex(p) => parts.push(format!("{s} is not a complex at {p:?}")),
                StrandCheck::Checked(r) if !r.is_exact() => {
                    parts.push(format!("{s} has total defect {}", r.total_defect()))
                }
                StrandCheck::Checked(_) => {}
            }
        }
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks every triangle and diamond in every degree, and the exactness of
/// the four strands.
pub fn validate_braid(b: &Braid) -> BraidReport {
    let mut commutativity = Vec::new();
    for k in b.lo - 1..=b.hi {
        for r in Relation::ALL {
            let (left, right) = r.sides(b, k);
            if left != right {
                commutativity.push(CommutativityDefect {
                    relation: r,
                    degree: k,
                    residual: &left - &right,
                });
            }
        }
    }
    let strands = Strand::ALL
        .iter()
        .map(|&s| {
            let check = match check_exact(&b.strand(s)) {
                Ok(r) => StrandCheck::Checked(r),
                Err(Error::SequenceNotAComplex(p)) => StrandCheck::NotAComplex(p),
                Err(e) => unreachable!("strand check on a shape-checked sequence: {e}"),
            };
            (s, check)
        })
        .collect();
    BraidReport {
        commutativity,
        strands,
    }
}

/// Where to start reading the spliced sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pivot {
    /// `E^k → B^k ⊕ D^k → F^k → E^{k+1}` with maps
    /// `(E→B, E→D)`, `(B→F) − (D→F)` and `(C→E)(F→C)`.
    E,
    /// `F^k → A^{k+1} ⊕ C^k → E^{k+1} → F^{k+1}` with maps
    /// `(F→A, F→C)`, `(A→E) − (C→E)` and `(B→F)(E→B)`.
    F,
}

/// The long exact sequence spliced out of a commutative exact braid.
pub fn splice(b: &Braid, pivot: Pivot) -> Result<LongSequence> {
    let report = validate_braid(b);
    if !report.is_commutative_exact() {
        return Err(Error::BraidRefused(Box::new(report)));
    }
    Ok(splice_unchecked(b, pivot))
}

fn splice_unchecked(b: &Braid, pivot: Pivot) -> LongSequence {
    use Arrow::*;
    let a = |x: Arrow, d: i32| b.arrow(x, d).into_owned();
    let mut nodes = Vec::new();
    let mut maps = Vec::new();
    let (first, last) = match pivot {
        Pivot::E => (b.lo, b.hi),
        Pivot::F => (b.lo - 1, b.hi),
    };
    for k in first..=last {
        match pivot {
            Pivot::E => {
                let (e, bb, d, f) = (Family::E, Family::B, Family::D, Family::F);
                nodes.push(SequenceNode::new(b.name(e), k, b.dim(e, k)));
                nodes.push(SequenceNode::new(
                    format!("{}⊕{}", b.name(bb), b.name(d)),
                    k,
                    b.dim(bb, k) + b.dim(d, k),
                ));
                nodes.push(SequenceNode::new(b.name(f), k, b.dim(f, k)));
                maps.push(a(EB, k).vstack(&a(ED, k)));
                maps.push(a(BF, k).hstack(&-&a(DF, k)));
                if k < last {
                    maps.push(&a(CE, k) * &a(FC, k));
                }
            }
            Pivot::F => {
                let (f, aa, c, e) = (Family::F, Family::A, Family::C, Family::E);
                nodes.push(SequenceNode::new(b.name(f), k, b.dim(f, k)));
                nodes.push(SequenceNode::new(
                    format!("{}⊕{}", b.name(aa), b.name(c)),
                    k,
                    b.dim(aa, k + 1) + b.dim(c, k),
                ));
                nodes.push(SequenceNode::new(b.name(e), k + 1, b.dim(e, k + 1)));
                maps.push(a(FA, k).vstack(&a(FC, k)));
                maps.push(a(AE, k + 1).hstack(&-&a(CE, k)));
                if k < last {
                    maps.push(&a(BF, k + 1) * &a(EB, k + 1));
                }
            }
        }
    }
    LongSequence::new(nodes, maps, 3).expect("splice shapes follow the braid")
}

/// A commutative square of short exact sequences sharing `C` and `Q`:
///
/// ```text
///        P ↪ R ↠ C     (base)
///        ↓   ↓   ‖
///        S ↪ T ↠ C     (total)
///        ↓   ↓
///        Q = Q
/// ```
///
/// with columns `P ↪ S ↠ Q` (relative) and `R ↪ T ↠ Q` (absolute).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleSesDiagram {
    pub base: ShortExactSequence,
    pub total: ShortExactSequence,
    pub relative: ShortExactSequence,
    pub absolute: ShortExactSequence,
    /// Labels for P, R, S, T, C, Q.
    pub names: [String; 6],
}

impl DoubleSesDiagram {
    /// Checks that the four sequences share their corner complexes.
    pub fn new(
        base: ShortExactSequence,
        total: ShortExactSequence,
        relative: ShortExactSequence,
        absolute: ShortExactSequence,
    ) -> Result<Self> {
        let pairs: [(&CochainComplex, &CochainComplex, &str); 6] = [
            (base.sub(), relative.sub(), "P"),
            (base.middle(), absolute.sub(), "R"),
            (total.sub(), relative.middle(), "S"),
            (total.middle(), absolute.middle(), "T"),
            (base.quotient(), total.quotient(), "C"),
            (relative.quotient(), absolute.quotient(), "Q"),
        ];
        for (x, y, name) in pairs {
            if x != y {
                return Err(Error::Structural(format!(
                    "the two sequences meeting at {name} disagree on it"
                )));
            }
        }
        Ok(DoubleSesDiagram {
            base,
            total,
            relative,
            absolute,
            names: ["P", "R", "S", "T", "C", "Q"].map(String::from),
        })
    }

    pub fn with_names(mut self, names: [&str; 6]) -> Self {
        self.names = names.map(String::from);
        self
    }

    pub fn complexes(&self) -> [&CochainComplex; 6] {
        [
            self.base.sub(),
            self.base.middle(),
            self.total.sub(),
            self.total.middle(),
            self.base.quotient(),
            self.relative.quotient(),
        ]
    }
}

/// A square of the double diagram that fails to commute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Square {
    /// `P → R → T` against `P → S → T`.
    Left,
    /// `R → T → C` against `R → C`.
    OverC,
    /// `S → T → Q` against `S → Q`.
    OverQ,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DoubleSesReport {
    pub sequences: Vec<(&'static str, SesReport)>,
    pub squares: Vec<(Square, i32)>,
}

impl DoubleSesReport {
    pub fn is_ok(&self) -> bool {
        self.sequences.iter().all(|(_, r)| r.is_ok()) && self.squares.is_empty()
    }
}

impl fmt::Display for DoubleSesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, r) in &self.sequences {
            if !r.is_ok() {
                parts.push(format!("{name}: {r}"));
            }
        }
        for (s, k) in &self.squares {
            parts.push(format!("square {s:?} fails in degree {k}"));
        }
        if parts.is_empty() {
            write!(f, "ok")
        } else {
            write!(f, "{}", parts.join("; "))
        }
    }
}

pub fn validate_double_ses(d: &DoubleSesDiagram) -> DoubleSesReport {
    let sequences = vec![
        ("base", validate_ses(&d.base)),
        ("total", validate_ses(&d.total)),
        ("relative", validate_ses(&d.relative)),
        ("absolute", validate_ses(&d.absolute)),
    ];
    let mut squares = Vec::new();
    let cs = d.complexes();
    let lo = cs.iter().filter(|c| !c.is_zero()).map(|c| c.lo()).min().unwrap_or(0);
    let hi = cs.iter().filter(|c| !c.is_zero()).map(|c| c.hi()).max().unwrap_or(-1);
    for k in lo..=hi {
        let b = |m: &crate::cochain::ChainMap| m.block(k).into_owned();
        if &b(d.absolute.inj()) * &b(d.base.inj()) != &b(d.total.inj()) * &b(d.relative.inj()) {
            squares.push((Square::Left, k));
        }
        if &b(d.total.surj()) * &b(d.absolute.inj()) != b(d.base.surj()) {
            squares.push((Square::OverC, k));
        }
        if &b(d.absolute.surj()) * &b(d.total.inj()) != b(d.relative.surj()) {
            squares.push((Square::OverQ, k));
        }
    }
    DoubleSesReport { sequences, squares }
}

/// The braid of cohomology long exact sequences of a double diagram:
/// `E = H(P)`, `B = H(R)`, `D = H(S)`, `F = H(T)`, `C = H(C)` and
/// `A^k = H^{k-1}(Q)`. Strand 3 is the sequence of the base row, strand 2
/// of the total row, strand 4 of the relative column and strand 1 of the
/// absolute column.
///
/// With sign-free connecting maps the diamond `F → {C, A} → E` commutes only
/// up to sign, so the connecting maps of the two column sequences (strands 1
/// and 4) enter negated. Negation does not affect the exactness of a strand.
pub fn braid_from_double_ses(d: &DoubleSesDiagram) -> Result<Braid> {
    let report = validate_double_ses(d);
    if !report.is_ok() {
        return Err(Error::Structural(format!("invalid double diagram: {report}")));
    }
    let [p, r, s, t, c, q] = d.complexes();
    let hp = cohomology(p)?;
    let hr = cohomology(r)?;
    let hs = cohomology(s)?;
    let ht = cohomology(t)?;
    let hc = cohomology(c)?;
    let hq = cohomology(q)?;

    let lo = d
        .complexes()
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| x.lo())
        .min()
        .unwrap_or(0);
    let hi = d
        .complexes()
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| x.hi())
        .max()
        .unwrap_or(-1)
        + 1;
    let window: Vec<i32> = (lo..=hi).collect();

    let dims_of = |h: &CohomologyResult, offset: i32| window.iter().map(|&k| h.dim(k - offset)).collect();
    let mut dims: [Vec<usize>; 6] = Default::default();
    dims[Family::A.index()] = dims_of(&hq, 1);
    dims[Family::B.index()] = dims_of(&hr, 0);
    dims[Family::C.index()] = dims_of(&hc, 0);
    dims[Family::D.index()] = dims_of(&hs, 0);
    dims[Family::E.index()] = dims_of(&hp, 0);
    dims[Family::F.index()] = dims_of(&ht, 0);

    let induced = |ses: &ShortExactSequence, inj: bool, h1: &CohomologyResult, h2: &CohomologyResult| -> GradedMap {
        if inj {
            induced_map_with(ses.inj(), h1, h2)
        } else {
            induced_map_with(ses.surj(), h1, h2)
        }
    };
    let delta = |ses: &ShortExactSequence, k: i32, ha: &CohomologyResult, hc: &CohomologyResult| {
        connecting_map_using(ses, k, ha, hc, &pivot_lift)
    };

    let ab_inc = induced(&d.absolute, true, &hr, &ht);
    let ab_proj = induced(&d.absolute, false, &ht, &hq);
    let tot_inc = induced(&d.total, true, &hs, &ht);
    let tot_proj = induced(&d.total, false, &ht, &hc);
    let base_inc = induced(&d.base, true, &hp, &hr);
    let base_proj = induced(&d.base, false, &hr, &hc);
    let rel_inc = induced(&d.relative, true, &hp, &hs);
    let rel_proj = induced(&d.relative, false, &hs, &hq);

    let mut arrows: [Vec<Matrix>; 12] = Default::default();
    for &k in &window {
        let put = |arrows: &mut [Vec<Matrix>; 12], a: Arrow, m: Matrix| arrows[a.index()].push(m);
        put(&mut arrows, Arrow::AB, -&delta(&d.absolute, k - 1, &hr, &hq)?);
        put(&mut arrows, Arrow::BF, ab_inc.block(k));
        put(&mut arrows, Arrow::FA, fit(ab_proj.block(k), k + 1, hi, hq.dim(k), ht.dim(k)));
        put(&mut arrows, Arrow::CD, fit(delta(&d.total, k, &hs, &hc)?, k + 1, hi, hs.dim(k + 1), hc.dim(k)));
        put(&mut arrows, Arrow::DF, tot_inc.block(k));
        put(&mut arrows, Arrow::FC, tot_proj.block(k));
        put(&mut arrows, Arrow::CE, fit(delta(&d.base, k, &hp, &hc)?, k + 1, hi, hp.dim(k + 1), hc.dim(k)));
        put(&mut arrows, Arrow::EB, base_inc.block(k));
        put(&mut arrows, Arrow::BC, base_proj.block(k));
        put(&mut arrows, Arrow::AE, -&delta(&d.relative, k - 1, &hp, &hq)?);
        put(&mut arrows, Arrow::ED, rel_inc.block(k));
        put(&mut arrows, Arrow::DA, fit(rel_proj.block(k), k + 1, hi, hq.dim(k), hs.dim(k)));
    }
    let [np, nr, ns, nt, nc, nq] = &d.names;
    let names = [
        format!("s{nq}"),
        nr.clone(),
        nc.clone(),
        ns.clone(),
        np.clone(),
        nt.clone(),
    ];
    Braid::new(lo, hi, names, dims, arrows)
}

/// Arrows that raise the degree past the window land in the zero space.
fn fit(m: Matrix, target_degree: i32, hi: i32, rows: usize, cols: usize) -> Matrix {
    if target_degree > hi {
        Matrix::zeros(0, cols)
    } else {
        debug_assert_eq!(m.shape(), (rows, cols));
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::ChainMap;
    use crate::exactness::check_exact;

    #[test]
    fn zero_braid_is_commutative_exact_and_splices_to_zero() {
        let b = Braid::zero();
        assert!(validate_braid(&b).is_commutative_exact());
        for pivot in [Pivot::E, Pivot::F] {
            let ls = splice(&b, pivot).unwrap();
            assert!(ls.dims().iter().all(|&d| d == 0));
            assert!(check_exact(&ls).unwrap().is_exact());
        }
    }

    #[test]
    fn arrow_table_is_consistent_with_strands() {
        for s in Strand::ALL {
            let [x, y, z] = s.arrows();
            assert_eq!(x.target(), y.source());
            assert_eq!(y.target(), z.source());
            assert_eq!(z.target(), x.source());
            assert_eq!(x.raise() + y.raise() + z.raise(), 1);
            for a in [x, y, z] {
                assert_eq!(a.strand(), s);
            }
        }
    }

    #[test]
    fn wiring_holes_are_structural_errors() {
        let mut dims: [Vec<usize>; 6] = Default::default();
        for d in dims.iter_mut() {
            *d = vec![1];
        }
        let arrows: [Vec<Matrix>; 12] = Default::default();
        assert!(matches!(
            Braid::new(0, 0, default_names(), dims, arrows),
            Err(Error::Structural(_))
        ));
    }

    /// A single complex X placed as T with R = S = P = X-subcomplexes etc.
    /// is covered by the randomized tests; here the degenerate case
    /// P = S, R = T, Q = 0.
    #[test]
    fn degenerate_double_ses_with_zero_quotient() {
        let interval = CochainComplex::new(
            0,
            vec![3, 2],
            vec![Matrix::from_ints(&[[-1, 1, 0], [0, -1, 1]])],
        )
        .unwrap();
        let rel = CochainComplex::new(0, vec![1, 2], vec![Matrix::from_ints(&[[1], [-1]])]).unwrap();
        let ends = CochainComplex::new(0, vec![2], vec![]).unwrap();
        let inj = ChainMap::new(
            rel.clone(),
            interval.clone(),
            0,
            [
                (0, Matrix::from_ints(&[[0], [1], [0]])),
                (1, Matrix::identity(2)),
            ],
        )
        .unwrap();
        let surj = ChainMap::new(
            interval.clone(),
            ends,
            0,
            [(0, Matrix::from_ints(&[[1, 0, 0], [0, 0, 1]]))],
        )
        .unwrap();
        let row = ShortExactSequence::new(inj, surj).unwrap();
        let zero = CochainComplex::zero();
        let col = |x: &CochainComplex| {
            ShortExactSequence::new(ChainMap::identity(x), ChainMap::zero(x, &zero, 0)).unwrap()
        };
        let d = DoubleSesDiagram::new(row.clone(), row, col(&rel), col(&interval)).unwrap();
        let b = braid_from_double_ses(&d).unwrap();
        let report = validate_braid(&b);
        assert!(report.is_commutative_exact(), "{report}");
        // Strands 3 and 2 coincide; strands 1 and 4 are isomorphisms.
        assert_eq!(b.strand(Strand::Three).dims(), b.strand(Strand::Two).dims());
        for pivot in [Pivot::E, Pivot::F] {
            assert!(check_exact(&splice(&b, pivot).unwrap()).unwrap().is_exact());
        }
    }

    #[test]
    fn splice_refuses_a_broken_braid() {
        let live = [Family::B, Family::C, Family::F];
        let mut dims: [Vec<usize>; 6] = Default::default();
        for f in Family::ALL {
            dims[f.index()] = vec![usize::from(live.contains(&f))];
        }
        let mut arrows: [Vec<Matrix>; 12] = Default::default();
        for a in Arrow::ALL {
            let rows = if a.raise() == 1 { 0 } else { dims[a.target().index()][0] };
            let cols = dims[a.source().index()][0];
            arrows[a.index()] = vec![Matrix::zeros(rows, cols)];
        }
        arrows[Arrow::BF.index()][0] = Matrix::identity(1);
        arrows[Arrow::BC.index()][0] = Matrix::identity(1);
        // F → C left at zero: strand 2 is inexact and the triangle B→F→C fails.
        let b = Braid::new(0, 0, default_names(), dims, arrows).unwrap();
        let report = validate_braid(&b);
        assert!(!report.is_commutative());
        assert!(!report.is_exact());
        assert!(matches!(splice(&b, Pivot::E), Err(Error::BraidRefused(_))));
        let fixed = b.with_arrow(Arrow::FC, 0, Matrix::identity(1)).unwrap();
        let report = validate_braid(&fixed);
        assert!(report.is_commutative_exact(), "{report}");
        for pivot in [Pivot::E, Pivot::F] {
            assert!(check_exact(&splice(&fixed, pivot).unwrap()).unwrap().is_exact());
        }
    }
}
