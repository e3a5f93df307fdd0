//! Cochain complexes of finite-dimensional rational vector spaces, chain
//! maps between them, and cohomology with explicit representatives.
//!
//! Every graded object lives on a finite window of degrees and is zero
//! outside it. Windows are trimmed on construction so that two objects
//! with the same content compare equal.

use std::borrow::Cow;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rank, Matrix, Subspace};

/// Dimensions of a graded vector space on a finite window of degrees.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GradedSpace {
    lo: i32,
    dims: Vec<usize>,
}

impl fmt::Debug for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedSpace(lo={}, {:?})", self.lo, self.dims)
    }
}

impl GradedSpace {
    /// Dimensions `dims[i]` in degree `lo + i`; zero ends are trimmed.
    pub fn new(lo: i32, dims: Vec<usize>) -> Self {
        let (lo, range) = trimmed_window(lo, &dims);
        GradedSpace {
            lo,
            dims: dims[range].to_vec(),
        }
    }

    pub fn zero() -> Self {
        GradedSpace::default()
    }

    /// Builds a space from `(degree, dim)` pairs; repeated degrees add up.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i32, usize)>) -> Self {
        let pairs: Vec<_> = pairs.into_iter().filter(|&(_, d)| d > 0).collect();
        let Some(lo) = pairs.iter().map(|p| p.0).min() else {
            return GradedSpace::zero();
        };
        let hi = pairs.iter().map(|p| p.0).max().unwrap();
        let mut dims = vec![0; (hi - lo + 1) as usize];
        for (k, d) in pairs {
            dims[(k - lo) as usize] += d;
        }
        GradedSpace::new(lo, dims)
    }

    pub fn dim(&self, k: i32) -> usize {
        index_in(self.lo, self.dims.len(), k).map_or(0, |i| self.dims[i])
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest degree of the window; `lo - 1` for the zero space.
    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> {
        self.lo..=self.hi()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|k| sign_of_degree(k) * self.dim(k) as i64)
            .sum()
    }

    /// Relabels degree `k` as `k + r`.
    pub fn shift(&self, r: i32) -> GradedSpace {
        GradedSpace::new(self.lo + r, self.dims.clone())
    }

    pub fn direct_sum(&self, other: &GradedSpace) -> GradedSpace {
        GradedSpace::from_pairs(
            self.degrees()
                .map(|k| (k, self.dim(k)))
                .chain(other.degrees().map(|k| (k, other.dim(k)))),
        )
    }

    /// Dense dimension list over `lo..=hi`.
    pub fn dims_on(&self, lo: i32, hi: i32) -> Vec<usize> {
        (lo..=hi).map(|k| self.dim(k)).collect()
    }
}

fn sign_of_degree(k: i32) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn index_in(lo: i32, len: usize, k: i32) -> Option<usize> {
    let i = k.checked_sub(lo)?;
    (i >= 0 && (i as usize) < len).then_some(i as usize)
}

fn trimmed_window(lo: i32, dims: &[usize]) -> (i32, std::ops::Range<usize>) {
    match dims.iter().position(|&d| d > 0) {
        None => (0, 0..0),
        Some(first) => {
            let last = dims.iter().rposition(|&d| d > 0).unwrap();
            (lo + first as i32, first..last + 1)
        }
    }
}

/// One failing degree of a degreewise matrix identity, with the residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Defect {
    pub degree: i32,
    pub residual: Matrix,
}

/// Degrees where an identity such as `d∘d = 0` or `d f = f d` fails.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DefectReport {
    pub defects: Vec<Defect>,
}

impl DefectReport {
    pub fn is_ok(&self) -> bool {
        self.defects.is_empty()
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.defects.iter().map(|d| d.degree).collect()
    }
}

impl fmt::Display for DefectReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "ok")
        } else {
            write!(f, "defects in degrees {:?}", self.degrees())
        }
    }
}

/// A bounded cochain complex `… → C^k --d^k--> C^{k+1} → …`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CochainComplex {
    spaces: GradedSpace,
    /// `diffs[i]` is `d^{lo+i}`; the top degree maps to zero.
    diffs: Vec<Matrix>,
}

impl fmt::Debug for CochainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CochainComplex")
            .field("lo", &self.spaces.lo)
            .field("dims", &self.spaces.dims)
            .field("diffs", &self.diffs)
            .finish()
    }
}

impl CochainComplex {
    /// `dims[i]` is the dimension in degree `lo + i` and `diffs[i]` is the
    /// differential out of that degree, of shape `dims[i+1] × dims[i]`.
    /// There must be exactly one differential between consecutive degrees.
    pub fn new(lo: i32, dims: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        let expected = dims.len().saturating_sub(1);
        if diffs.len() != expected {
            return Err(Error::Structural(format!(
                "{} degrees need {expected} differentials, got {}",
                dims.len(),
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.shape() != (dims[i + 1], dims[i]) {
                return Err(Error::Structural(format!(
                    "d^{} must be {}x{}, got {}x{}",
                    lo + i as i32,
                    dims[i + 1],
                    dims[i],
                    d.rows(),
                    d.cols()
                )));
            }
        }
        let (new_lo, range) = trimmed_window(lo, &dims);
        let diffs = if range.is_empty() {
            Vec::new()
        } else {
            diffs[range.start..range.end - 1].to_vec()
        };
        Ok(CochainComplex {
            spaces: GradedSpace {
                lo: new_lo,
                dims: dims[range].to_vec(),
            },
            diffs,
        })
    }

    pub fn zero() -> Self {
        CochainComplex::default()
    }

    /// Complex with the given spaces and all differentials zero.
    pub fn with_zero_differentials(spaces: &GradedSpace) -> Self {
        let diffs = spaces
            .dims
            .windows(2)
            .map(|w| Matrix::zeros(w[1], w[0]))
            .collect();
        CochainComplex {
            spaces: spaces.clone(),
            diffs,
        }
    }

    pub fn spaces(&self) -> &GradedSpace {
        &self.spaces
    }

    pub fn dim(&self, k: i32) -> usize {
        self.spaces.dim(k)
    }

    pub fn lo(&self) -> i32 {
        self.spaces.lo()
    }

    pub fn hi(&self) -> i32 {
        self.spaces.hi()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> {
        self.spaces.degrees()
    }

    pub fn is_zero(&self) -> bool {
        self.spaces.is_zero()
    }

    /// `d^k : C^k → C^{k+1}`; a zero matrix outside the stored range.
    pub fn differential(&self, k: i32) -> Cow<'_, Matrix> {
        match index_in(self.lo(), self.diffs.len(), k) {
            Some(i) => Cow::Borrowed(&self.diffs[i]),
            None => Cow::Owned(Matrix::zeros(self.dim(k + 1), self.dim(k))),
        }
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.diffs
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.spaces.euler_characteristic()
    }
}

/// Checks `d^{k+1} ∘ d^k = 0` in every degree.
pub fn validate_complex(c: &CochainComplex) -> DefectReport {
    let mut report = DefectReport::default();
    for k in c.degrees() {
        let dd = &*c.differential(k + 1) * &*c.differential(k);
        if !dd.is_zero() {
            report.defects.push(Defect {
                degree: k,
                residual: dd,
            });
        }
    }
    report
}

/// A family of matrices `f^k : C^k → D^{k+shift}` commuting with the
/// differentials, without signs, for every shift.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainMap {
    source: CochainComplex,
    target: CochainComplex,
    shift: i32,
    /// `blocks[i]` is `f^{source.lo + i}`.
    blocks: Vec<Matrix>,
}

impl ChainMap {
    /// `blocks` pairs a source degree with its matrix; degrees not listed
    /// are zero. Shapes are checked against both complexes.
    pub fn new(
        source: CochainComplex,
        target: CochainComplex,
        shift: i32,
        blocks: impl IntoIterator<Item = (i32, Matrix)>,
    ) -> Result<Self> {
        let mut dense: Vec<Matrix> = source
            .degrees()
            .map(|k| Matrix::zeros(target.dim(k + shift), source.dim(k)))
            .collect();
        for (k, m) in blocks {
            let expected = (target.dim(k + shift), source.dim(k));
            if m.shape() != expected {
                return Err(Error::Structural(format!(
                    "chain map block in degree {k} must be {}x{}, got {}x{}",
                    expected.0,
                    expected.1,
                    m.rows(),
                    m.cols()
                )));
            }
            if let Some(i) = index_in(source.lo(), dense.len(), k) {
                dense[i] = m;
            }
        }
        Ok(ChainMap {
            source,
            target,
            shift,
            blocks: dense,
        })
    }

    pub fn identity(c: &CochainComplex) -> Self {
        let blocks = c.degrees().map(|k| (k, Matrix::identity(c.dim(k))));
        ChainMap::new(c.clone(), c.clone(), 0, blocks).expect("identity shapes")
    }

    pub fn zero(source: &CochainComplex, target: &CochainComplex, shift: i32) -> Self {
        ChainMap::new(source.clone(), target.clone(), shift, []).expect("zero shapes")
    }

    pub fn source(&self) -> &CochainComplex {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex {
        &self.target
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    /// `f^k : C^k → D^{k+shift}`.
    pub fn block(&self, k: i32) -> Cow<'_, Matrix> {
        match index_in(self.source.lo(), self.blocks.len(), k) {
            Some(i) => Cow::Borrowed(&self.blocks[i]),
            None => Cow::Owned(Matrix::zeros(
                self.target.dim(k + self.shift),
                self.source.dim(k),
            )),
        }
    }

    pub fn blocks(&self) -> impl Iterator<Item = (i32, &Matrix)> {
        self.source.degrees().zip(self.blocks.iter())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ChainMap) -> Result<ChainMap> {
        if other.target != self.source {
            return Err(Error::Structural(
                "composition: target of the first map is not the source of the second".into(),
            ));
        }
        let blocks = other
            .source
            .degrees()
            .map(|k| (k, &*self.block(k + other.shift) * &*other.block(k)));
        ChainMap::new(
            other.source.clone(),
            self.target.clone(),
            self.shift + other.shift,
            blocks.collect::<Vec<_>>(),
        )
    }
}

/// Checks `d_target ∘ f = f ∘ d_source` in every degree.
pub fn validate_chain_map(f: &ChainMap) -> DefectReport {
    let mut report = DefectReport::default();
    let lo = f.source.lo().min(f.target.lo() - f.shift) - 1;
    let hi = f.source.hi().max(f.target.hi() - f.shift) + 1;
    for k in lo..=hi {
        let left = &*f.target.differential(k + f.shift) * &*f.block(k);
        let right = &*f.block(k + 1) * &*f.source.differential(k);
        if left != right {
            report.defects.push(Defect {
                degree: k,
                residual: &left - &right,
            });
        }
    }
    report
}

/// Cohomology in one degree: representative cocycles and the projection
/// from cocycles to coordinates in the basis they define.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCohomology {
    /// `dim C^k × dim H^k`; columns are cocycles.
    pub representatives: Matrix,
    /// `dim H^k × dim C^k`; exact on cocycles, kills coboundaries.
    pub projection: Matrix,
}

/// Cohomology of a complex with explicit representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyResult {
    graded: GradedSpace,
    complex_lo: i32,
    complex_dims: Vec<usize>,
    degrees: Vec<DegreeCohomology>,
}

impl CohomologyResult {
    pub fn graded(&self) -> &GradedSpace {
        &self.graded
    }

    pub fn dim(&self, k: i32) -> usize {
        self.graded.dim(k)
    }

    fn cochain_dim(&self, k: i32) -> usize {
        index_in(self.complex_lo, self.complex_dims.len(), k).map_or(0, |i| self.complex_dims[i])
    }

    pub fn representatives(&self, k: i32) -> Cow<'_, Matrix> {
        match index_in(self.complex_lo, self.degrees.len(), k) {
            Some(i) => Cow::Borrowed(&self.degrees[i].representatives),
            None => Cow::Owned(Matrix::zeros(self.cochain_dim(k), 0)),
        }
    }

    pub fn projection(&self, k: i32) -> Cow<'_, Matrix> {
        match index_in(self.complex_lo, self.degrees.len(), k) {
            Some(i) => Cow::Borrowed(&self.degrees[i].projection),
            None => Cow::Owned(Matrix::zeros(0, self.cochain_dim(k))),
        }
    }
}

/// Cohomology with representatives chosen to complement the coboundaries
/// inside the cocycles, taking cocycle basis vectors greedily in canonical
/// order.
pub fn cohomology(c: &CochainComplex) -> Result<CohomologyResult> {
    let defects = validate_complex(c);
    if !defects.is_ok() {
        return Err(Error::NotAComplex(defects));
    }
    let mut degrees = Vec::new();
    let mut pairs = Vec::new();
    for k in c.degrees() {
        let n = c.dim(k);
        let boundaries = Subspace::column_span(&c.differential(k - 1));
        let cocycles = kernel_basis(&c.differential(k));
        let mut spanning = boundaries.basis().clone();
        let mut reps = Vec::new();
        let mut current_rank = boundaries.dim();
        for z in cocycles.basis_vectors() {
            let candidate = spanning.hstack(&Matrix::from_columns(n, &[z.clone()]));
            let r = rank(&candidate);
            if r > current_rank {
                spanning = candidate;
                current_rank = r;
                reps.push(z);
            }
        }
        let h = reps.len();
        let projection = if h == 0 {
            Matrix::zeros(0, n)
        } else {
            let left = spanning
                .left_inverse()
                .ok_or_else(|| Error::Internal("cocycle basis is not independent".into()))?;
            let b = boundaries.dim();
            left.select_rows(&(b..b + h).collect::<Vec<_>>())
        };
        pairs.push((k, h));
        degrees.push(DegreeCohomology {
            representatives: Matrix::from_columns(n, &reps),
            projection,
        });
    }
    Ok(CohomologyResult {
        graded: GradedSpace::from_pairs(pairs),
        complex_lo: c.lo(),
        complex_dims: c.spaces().dims().to_vec(),
        degrees,
    })
}

/// A degree-shifting family of matrices between two graded spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub source: GradedSpace,
    pub target: GradedSpace,
    pub shift: i32,
    blocks: Vec<(i32, Matrix)>,
}

impl GradedMap {
    pub fn new(
        source: GradedSpace,
        target: GradedSpace,
        shift: i32,
        blocks: impl IntoIterator<Item = (i32, Matrix)>,
    ) -> Self {
        let blocks = blocks
            .into_iter()
            .filter(|(_, m)| m.rows() > 0 && m.cols() > 0)
            .collect();
        GradedMap {
            source,
            target,
            shift,
            blocks,
        }
    }

    /// Matrix `H^k(source) → H^{k+shift}(target)`.
    pub fn block(&self, k: i32) -> Matrix {
        self.blocks
            .iter()
            .find(|(d, _)| *d == k)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| Matrix::zeros(self.target.dim(k + self.shift), self.source.dim(k)))
    }
}

/// The map on cohomology induced by a chain map.
pub fn induced_map(f: &ChainMap) -> Result<GradedMap> {
    let defects = validate_chain_map(f);
    if !defects.is_ok() {
        return Err(Error::NotAChainMap(defects));
    }
    let hs = cohomology(&f.source)?;
    let ht = cohomology(&f.target)?;
    Ok(induced_map_with(f, &hs, &ht))
}

/// Induced map using precomputed cohomology of the endpoints. The chain map
/// is assumed valid.
pub fn induced_map_with(f: &ChainMap, hs: &CohomologyResult, ht: &CohomologyResult) -> GradedMap {
    let blocks = hs.graded().degrees().map(|k| {
        let image = &*f.block(k) * &*hs.representatives(k);
        (k, &*ht.projection(k + f.shift) * &image)
    });
    GradedMap::new(
        hs.graded().clone(),
        ht.graded().clone(),
        f.shift,
        blocks.collect::<Vec<_>>(),
    )
}

/// Relabels degree `k` as `k + r`; the matrices are untouched.
pub fn shift(c: &CochainComplex, r: i32) -> CochainComplex {
    CochainComplex {
        spaces: c.spaces.shift(r),
        diffs: c.diffs.clone(),
    }
}

/// Degreewise direct sum with block-diagonal differentials; the first
/// summand's coordinates come first.
pub fn direct_sum(a: &CochainComplex, b: &CochainComplex) -> CochainComplex {
    let (lo, hi) = union_window(a, b);
    let dims: Vec<usize> = (lo..=hi).map(|k| a.dim(k) + b.dim(k)).collect();
    let diffs = (lo..hi)
        .map(|k| a.differential(k).block_diag(&b.differential(k)))
        .collect();
    CochainComplex::new(lo, dims, diffs).expect("direct sum shapes")
}

/// `f ⊕ g : A ⊕ C → B ⊕ D`; both maps must have the same shift.
pub fn direct_sum_maps(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    if f.shift != g.shift {
        return Err(Error::Structural(format!(
            "direct sum of chain maps with shifts {} and {}",
            f.shift, g.shift
        )));
    }
    let source = direct_sum(&f.source, &g.source);
    let target = direct_sum(&f.target, &g.target);
    let blocks: Vec<_> = source
        .degrees()
        .map(|k| (k, f.block(k).block_diag(&g.block(k))))
        .collect();
    ChainMap::new(source, target, f.shift, blocks)
}

fn union_window(a: &CochainComplex, b: &CochainComplex) -> (i32, i32) {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => (0, -1),
        (true, false) => (b.lo(), b.hi()),
        (false, true) => (a.lo(), a.hi()),
        (false, false) => (a.lo().min(b.lo()), a.hi().max(b.hi())),
    }
}

/// A degreewise subspace closed under the differential, given by bases.
///
/// Returns the subcomplex in the coordinates of its bases together with the
/// inclusion chain map.
pub fn subcomplex(c: &CochainComplex, bases: &[(i32, Subspace)]) -> Result<(CochainComplex, ChainMap)> {
    let basis_at = |k: i32| -> Matrix {
        bases
            .iter()
            .find(|(d, _)| *d == k)
            .map(|(_, s)| s.basis().clone())
            .unwrap_or_else(|| Matrix::zeros(c.dim(k), 0))
    };
    let lo = c.lo();
    let hi = c.hi();
    let dims: Vec<usize> = (lo..=hi).map(|k| basis_at(k).cols()).collect();
    let mut diffs = Vec::new();
    for k in lo..hi {
        let image = &*c.differential(k) * &basis_at(k);
        let coords = crate::linalg::solve_matrix(&basis_at(k + 1), &image)?.ok_or_else(|| {
            Error::Structural(format!("subspace is not closed under d^{k}"))
        })?;
        diffs.push(coords);
    }
    let sub = CochainComplex::new(lo, dims, diffs)?;
    let blocks: Vec<_> = sub.degrees().map(|k| (k, basis_at(k))).collect();
    let inclusion = ChainMap::new(sub.clone(), c.clone(), 0, blocks)?;
    Ok((sub, inclusion))
}

/// Quotient of a complex by a subcomplex given by bases. The quotient basis
/// is the standard basis vectors not already spanned, taken in order.
/// Returns the quotient and the projection chain map.
pub fn quotient(c: &CochainComplex, bases: &[(i32, Subspace)]) -> Result<(CochainComplex, ChainMap)> {
    let lo = c.lo();
    let hi = c.hi();
    let mut complements = Vec::new();
    let mut projections = Vec::new();
    for k in lo..=hi {
        let n = c.dim(k);
        let sub = bases
            .iter()
            .find(|(d, _)| *d == k)
            .map(|(_, s)| s.basis().clone())
            .unwrap_or_else(|| Matrix::zeros(n, 0));
        let mut spanning = sub.clone();
        let mut chosen = Vec::new();
        for i in 0..n {
            let mut e = vec![crate::linalg::rat(0); n];
            e[i] = crate::linalg::rat(1);
            let candidate = spanning.hstack(&Matrix::from_columns(n, &[e]));
            if rank(&candidate) > spanning.cols() {
                spanning = candidate;
                chosen.push(i);
            }
        }
        let inverse = spanning
            .inverse()
            .ok_or_else(|| Error::Internal("quotient basis is singular".into()))?;
        let s = sub.cols();
        let proj = inverse.select_rows(&(s..n).collect::<Vec<_>>());
        complements.push(Matrix::identity(n).select_columns(&chosen));
        projections.push(proj);
    }
    let dims: Vec<usize> = projections.iter().map(Matrix::rows).collect();
    let mut diffs = Vec::new();
    for (i, k) in (lo..hi).enumerate() {
        diffs.push(&(&projections[i + 1] * &*c.differential(k)) * &complements[i]);
    }
    let q = CochainComplex::new(lo, dims, diffs)?;
    let blocks: Vec<_> = (lo..=hi).zip(projections).collect();
    let projection = ChainMap::new(c.clone(), q.clone(), 0, blocks)?;
    let defects = validate_chain_map(&projection);
    if !defects.is_ok() {
        return Err(Error::Structural(
            "quotient by a subspace that is not a subcomplex".into(),
        ));
    }
    Ok((q, projection))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Simplicial cochains of the hollow triangle: vertices 0,1,2 and
    /// edges 01, 02, 12.
    fn hollow_triangle() -> CochainComplex {
        let d0 = Matrix::from_ints(&[[-1, 1, 0], [-1, 0, 1], [0, -1, 1]]);
        CochainComplex::new(0, vec![3, 3], vec![d0]).unwrap()
    }

    fn point() -> CochainComplex {
        CochainComplex::new(0, vec![1], vec![]).unwrap()
    }

    #[test]
    fn validate_complex_examples() {
        assert!(validate_complex(&CochainComplex::zero()).is_ok());
        let c = CochainComplex::new(0, vec![1, 1], vec![Matrix::identity(1)]).unwrap();
        assert!(validate_complex(&c).is_ok());
        let bad = CochainComplex::new(
            0,
            vec![1, 1, 1],
            vec![Matrix::identity(1), Matrix::identity(1)],
        )
        .unwrap();
        let report = validate_complex(&bad);
        assert_eq!(report.degrees(), vec![0]);
        assert_eq!(report.defects[0].residual, Matrix::identity(1));
    }

    #[test]
    fn structural_errors_precede_dd_check() {
        assert!(matches!(
            CochainComplex::new(0, vec![1, 2], vec![Matrix::identity(1)]),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            CochainComplex::new(0, vec![1, 1], vec![]),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn cohomology_examples() {
        let z = cohomology(&CochainComplex::zero()).unwrap();
        assert!(z.graded().is_zero());

        let spaces = GradedSpace::new(0, vec![2, 0, 3, 1]);
        let flat = CochainComplex::with_zero_differentials(&spaces);
        assert_eq!(cohomology(&flat).unwrap().graded(), &spaces);

        let h = cohomology(&hollow_triangle()).unwrap();
        assert_eq!(h.graded().dims_on(0, 1), vec![1, 1]);
    }

    #[test]
    fn cohomology_rejects_invalid_complex() {
        let bad = CochainComplex::new(
            0,
            vec![1, 1, 1],
            vec![Matrix::identity(1), Matrix::identity(1)],
        )
        .unwrap();
        assert!(matches!(cohomology(&bad), Err(Error::NotAComplex(_))));
    }

    #[test]
    fn representatives_and_projection_are_inverse() {
        let h = cohomology(&hollow_triangle()).unwrap();
        for k in 0..=1 {
            let p = &*h.projection(k) * &*h.representatives(k);
            assert_eq!(p, Matrix::identity(h.dim(k)));
        }
        // Coboundaries project to zero.
        let t = hollow_triangle();
        let boundary = &*h.projection(1) * &*t.differential(0);
        assert!(boundary.is_zero());
    }

    #[test]
    fn validate_chain_map_examples() {
        let t = hollow_triangle();
        assert!(validate_chain_map(&ChainMap::identity(&t)).is_ok());
        assert!(validate_chain_map(&ChainMap::zero(&t, &point(), 0)).is_ok());

        let one = CochainComplex::new(0, vec![1, 1], vec![Matrix::from_ints(&[[1]])]).unwrap();
        let two = CochainComplex::new(0, vec![1, 1], vec![Matrix::from_ints(&[[2]])]).unwrap();
        let f = ChainMap::new(
            one,
            two,
            0,
            [(0, Matrix::identity(1)), (1, Matrix::identity(1))],
        )
        .unwrap();
        let report = validate_chain_map(&f);
        assert_eq!(report.degrees(), vec![0]);
        assert_eq!(report.defects[0].residual, Matrix::from_ints(&[[1]]));
    }

    #[test]
    fn chain_map_block_shapes_are_checked() {
        let t = hollow_triangle();
        assert!(matches!(
            ChainMap::new(t.clone(), t, 0, [(0, Matrix::identity(2))]),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn induced_map_examples() {
        let t = hollow_triangle();
        let id = induced_map(&ChainMap::identity(&t)).unwrap();
        assert_eq!(id.block(0), Matrix::identity(1));
        assert_eq!(id.block(1), Matrix::identity(1));
        let zero = induced_map(&ChainMap::zero(&t, &t, 0)).unwrap();
        assert!(zero.block(0).is_zero() && zero.block(1).is_zero());
    }

    #[test]
    fn induced_map_of_endpoint_inclusion_is_diagonal() {
        // Interval 0 - 1 - 2 with edges 01, 12. Restriction to the endpoints
        // {0, 2} is a chain map C(I) → C(∂I); the inclusion ∂I ⊂ I induces
        // H^0(I) = ℚ → H^0(∂I) = ℚ², which is (1, 1) up to basis.
        let interval = CochainComplex::new(
            0,
            vec![3, 2],
            vec![Matrix::from_ints(&[[-1, 1, 0], [0, -1, 1]])],
        )
        .unwrap();
        let ends = CochainComplex::new(0, vec![2], vec![]).unwrap();
        let restrict =
            ChainMap::new(interval, ends, 0, [(0, Matrix::from_ints(&[[1, 0, 0], [0, 0, 1]]))])
                .unwrap();
        let m = induced_map(&restrict).unwrap().block(0);
        assert_eq!(m.shape(), (2, 1));
        assert_eq!(m.get(0, 0), m.get(1, 0));
        assert!(!m.is_zero());
    }

    #[test]
    fn combinator_examples() {
        let t = hollow_triangle();
        assert_eq!(shift(&t, 0), t);
        assert_eq!(direct_sum(&t, &CochainComplex::zero()), t);
        let h = cohomology(&direct_sum(&t, &point())).unwrap();
        assert_eq!(h.graded().dims_on(0, 1), vec![2, 1]);
        let hs = cohomology(&shift(&t, 3)).unwrap();
        assert_eq!(hs.graded(), &GradedSpace::new(3, vec![1, 1]));
    }

    #[test]
    fn windows_are_trimmed() {
        let c = CochainComplex::new(
            -2,
            vec![0, 1, 1, 0],
            vec![
                Matrix::zeros(1, 0),
                Matrix::identity(1),
                Matrix::zeros(0, 1),
            ],
        )
        .unwrap();
        assert_eq!((c.lo(), c.hi()), (-1, 0));
        assert_eq!(GradedSpace::new(5, vec![0, 0]), GradedSpace::zero());
        assert_eq!(GradedSpace::new(1, vec![0, 2, 0]).lo(), 2);
    }

    #[test]
    fn subcomplex_and_quotient_of_interval() {
        let interval = CochainComplex::new(
            0,
            vec![3, 2],
            vec![Matrix::from_ints(&[[-1, 1, 0], [0, -1, 1]])],
        )
        .unwrap();
        // Image of d^0 together with the constants in degree 0.
        let constants = Subspace::span(3, &[vec![crate::linalg::rat(1); 3]]);
        let (sub, inc) = subcomplex(&interval, &[(0, constants.clone())]).unwrap();
        assert_eq!(sub.spaces(), &GradedSpace::new(0, vec![1]));
        assert!(validate_chain_map(&inc).is_ok());
        let (q, proj) = quotient(&interval, &[(0, constants)]).unwrap();
        assert_eq!(q.spaces(), &GradedSpace::new(0, vec![2, 2]));
        assert!(validate_chain_map(&proj).is_ok());
        assert!(cohomology(&q).unwrap().graded().is_zero());
    }
}
