//! Finite simplicial complexes and their ordered cochain complexes.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::cochain::{cohomology, induced_map, ChainMap, CochainComplex, GradedSpace};
use crate::error::{Error, Result};
use crate::exactness::ShortExactSequence;
use crate::linalg::{eigenspace, rat, Matrix, Sign};

/// A simplex is a strictly increasing list of vertex labels.
pub type Simplex = Vec<usize>;

/// A downward-closed family of nonempty simplices, stored sorted by
/// dimension and then lexicographically. That order fixes the basis of every
/// cochain group.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SimplicialComplex {
    simplices: Vec<Simplex>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("face_counts", &self.face_counts())
            .finish()
    }
}

fn normalize(s: &[usize]) -> Result<Simplex> {
    let mut v = s.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.len() != s.len() {
        return Err(Error::NotSimplicial(format!("simplex {s:?} repeats a vertex")));
    }
    if v.is_empty() {
        return Err(Error::NotSimplicial("empty simplex".into()));
    }
    Ok(v)
}

fn sort_simplices(set: BTreeSet<Simplex>) -> Vec<Simplex> {
    let mut v: Vec<Simplex> = set.into_iter().collect();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    v
}

impl SimplicialComplex {
    /// The complex generated by the given simplices and all their faces.
    pub fn from_facets<S: AsRef<[usize]>>(facets: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for f in facets {
            let f = normalize(f.as_ref())?;
            let n = f.len();
            for mask in 1u64..(1u64 << n) {
                let face: Simplex = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                set.insert(face);
            }
        }
        Ok(SimplicialComplex {
            simplices: sort_simplices(set),
        })
    }

    /// A complex listed simplex by simplex; every face must be listed too.
    pub fn new<S: AsRef<[usize]>>(simplices: impl IntoIterator<Item = S>) -> Result<Self> {
        let set: BTreeSet<Simplex> = simplices
            .into_iter()
            .map(|s| normalize(s.as_ref()))
            .collect::<Result<_>>()?;
        for s in &set {
            if s.len() > 1 {
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    if !set.contains(&face) {
                        return Err(Error::NotSimplicial(format!(
                            "face {face:?} of {s:?} is not listed"
                        )));
                    }
                }
            }
        }
        Ok(SimplicialComplex {
            simplices: sort_simplices(set),
        })
    }

    pub fn empty() -> Self {
        SimplicialComplex::default()
    }

    pub fn point() -> Self {
        SimplicialComplex::from_facets([[0]]).expect("valid")
    }

    /// Isolated vertices with the given labels.
    pub fn points(labels: &[usize]) -> Self {
        SimplicialComplex::from_facets(labels.iter().map(|&v| [v])).expect("valid")
    }

    /// A path on `vertices` vertices `0 – 1 – … – (vertices-1)`.
    pub fn interval(vertices: usize) -> Self {
        if vertices == 1 {
            return SimplicialComplex::point();
        }
        SimplicialComplex::from_facets((1..vertices).map(|i| [i - 1, i])).expect("valid")
    }

    /// A closed polygon on `n ≥ 3` vertices, a model of the circle.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        SimplicialComplex::from_facets((0..n).map(|i| [i.min((i + 1) % n), i.max((i + 1) % n)]))
            .expect("valid")
    }

    /// The boundary of the `n`-simplex on vertices `0..=n`, a model of `S^{n-1}`.
    pub fn boundary_of_simplex(n: usize) -> Self {
        let all: Vec<usize> = (0..=n).collect();
        SimplicialComplex::from_facets((0..=n).map(|skip| {
            all.iter().copied().filter(|&v| v != skip).collect::<Vec<_>>()
        }))
        .expect("valid")
    }

    /// The suspension with cone points `0` (south) and `max + 2` (north);
    /// the original vertices are shifted up by one so that the vertex order
    /// reads south, original, north.
    pub fn suspension(&self) -> (SimplicialComplex, usize, usize) {
        let north = self.vertices().last().map_or(1, |&v| v + 2);
        let mut facets: Vec<Simplex> = vec![vec![0], vec![north]];
        for s in &self.simplices {
            let shifted: Simplex = s.iter().map(|v| v + 1).collect();
            let mut below = vec![0];
            below.extend(&shifted);
            let mut above = shifted;
            above.push(north);
            facets.push(below);
            facets.push(above);
        }
        let c = SimplicialComplex::from_facets(facets).expect("valid");
        (c, 0, north)
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    /// The simplices of dimension `k`, in basis order.
    /// The maximal simplices, which generate the complex.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut covered: BTreeSet<Simplex> = BTreeSet::new();
        for s in self.simplices.iter().filter(|s| s.len() > 1) {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                covered.insert(face);
            }
        }
        self.simplices.iter().filter(|s| !covered.contains(*s)).cloned().collect()
    }

    pub fn simplices_of_dim(&self, k: usize) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().filter(move |s| s.len() == k + 1)
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.simplices_of_dim(0).map(|s| s[0]).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.last().map(|s| s.len() - 1)
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        normalize(s).is_ok_and(|s| self.simplices.binary_search_by(|t| t.len().cmp(&s.len()).then_with(|| t.cmp(&s))).is_ok())
    }

    /// Number of simplices in each dimension.
    pub fn face_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.dim().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            counts[s.len() - 1] += 1;
        }
        counts
    }

    /// `Σ (-1)^k f_k` over face counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.face_counts()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Fails with the first simplex of `sub` missing from `self`.
    pub fn check_subcomplex(&self, sub: &SimplicialComplex) -> Result<()> {
        match sub.simplices.iter().find(|s| !self.contains(s)) {
            Some(s) => Err(Error::NotSubcomplex(s.clone())),
            None => Ok(()),
        }
    }

    fn index_by_dim(&self) -> Vec<HashMap<&Simplex, usize>> {
        let mut out: Vec<HashMap<&Simplex, usize>> = vec![HashMap::new(); self.face_counts().len()];
        for s in &self.simplices {
            let table = &mut out[s.len() - 1];
            let i = table.len();
            table.insert(s, i);
        }
        out
    }
}

/// The ordered simplicial cochain complex, with
/// `(δφ)(v_0 … v_{k+1}) = Σ_i (-1)^i φ(v_0 … v̂_i … v_{k+1})`.
pub fn simplicial_cochain_complex(sc: &SimplicialComplex) -> CochainComplex {
    let counts = sc.face_counts();
    if counts.is_empty() {
        return CochainComplex::zero();
    }
    let index = sc.index_by_dim();
    let diffs = (0..counts.len() - 1)
        .map(|k| {
            let mut d = Matrix::zeros(counts[k + 1], counts[k]);
            for (row, tau) in sc.simplices_of_dim(k + 1).enumerate() {
                for i in 0..tau.len() {
                    let mut face = tau.clone();
                    face.remove(i);
                    let col = index[k][&face];
                    d.set(row, col, rat(if i % 2 == 0 { 1 } else { -1 }));
                }
            }
            d
        })
        .collect();
    CochainComplex::new(0, counts, diffs).expect("coboundary shapes follow the face counts")
}

/// Coordinates of the simplices of `sc` lying outside and inside `sub`, per
/// dimension.
fn split_coordinates(sc: &SimplicialComplex, sub: &SimplicialComplex) -> Vec<(Vec<usize>, Vec<usize>)> {
    (0..sc.face_counts().len())
        .map(|k| {
            let (mut outside, mut inside) = (Vec::new(), Vec::new());
            for (i, s) in sc.simplices_of_dim(k).enumerate() {
                if sub.contains(s) {
                    inside.push(i);
                } else {
                    outside.push(i);
                }
            }
            (outside, inside)
        })
        .collect()
}

/// Cochains of `sc` vanishing on `sub`.
pub fn relative_complex(sc: &SimplicialComplex, sub: &SimplicialComplex) -> Result<CochainComplex> {
    Ok(relative_pair(sc, sub)?.sub().clone())
}

/// `0 → C(sc, sub) → C(sc) → C(sub) → 0`: relative cochains, all
/// cochains, and restriction to `sub`.
pub fn relative_pair(sc: &SimplicialComplex, sub: &SimplicialComplex) -> Result<ShortExactSequence> {
    sc.check_subcomplex(sub)?;
    let whole = simplicial_cochain_complex(sc);
    let restricted = simplicial_cochain_complex(sub);
    let split = split_coordinates(sc, sub);
    let dims: Vec<usize> = split.iter().map(|(o, _)| o.len()).collect();
    let diffs: Vec<Matrix> = (0..dims.len().saturating_sub(1))
        .map(|k| {
            whole
                .differential(k as i32)
                .select_rows(&split[k + 1].0)
                .select_columns(&split[k].0)
        })
        .collect();
    let relative = CochainComplex::new(0, dims, diffs)?;
    let inj_blocks = split.iter().enumerate().map(|(k, (outside, _))| {
        (k as i32, Matrix::identity(whole.dim(k as i32)).select_columns(outside))
    });
    let inj = ChainMap::new(relative, whole.clone(), 0, inj_blocks.collect::<Vec<_>>())?;
    let surj_blocks: Vec<_> = split
        .iter()
        .enumerate()
        .map(|(k, (_, inside))| (k as i32, Matrix::identity(whole.dim(k as i32)).select_rows(inside)))
        .collect();
    let surj = ChainMap::new(whole, restricted, 0, surj_blocks)?;
    Ok(ShortExactSequence::new(inj, surj)?.with_names("(X,A)", "X", "A"))
}

/// Parity of the permutation sorting `v`, or `None` if `v` repeats a value.
fn sorting_sign(v: &[usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            match v[i].cmp(&v[j]) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    Some(sign)
}

/// The cochain pullback `f^* : C(target) → C(source)` of a simplicial
/// vertex map. Simplices collapsed by `f` pull back to zero; the others pick
/// up the sign of the permutation that reorders their image.
pub fn pullback(
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    vertex_map: &BTreeMap<usize, usize>,
) -> Result<ChainMap> {
    let cs = simplicial_cochain_complex(source);
    let ct = simplicial_cochain_complex(target);
    let target_index = target.index_by_dim();
    let mut blocks: Vec<(i32, Matrix)> = Vec::new();
    for k in 0..source.face_counts().len() {
        let mut m = Matrix::zeros(cs.dim(k as i32), ct.dim(k as i32));
        for (row, s) in source.simplices_of_dim(k).enumerate() {
            let image: Vec<usize> = s
                .iter()
                .map(|v| {
                    vertex_map
                        .get(v)
                        .copied()
                        .ok_or_else(|| Error::NotSimplicial(format!("vertex {v} has no image")))
                })
                .collect::<Result<_>>()?;
            let mut sorted = image.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if !target.contains(&sorted) {
                return Err(Error::NotSimplicial(format!(
                    "simplex {s:?} maps to {sorted:?}, which is not a simplex of the target"
                )));
            }
            if let Some(sign) = sorting_sign(&image) {
                m.set(row, target_index[k][&sorted], rat(sign));
            }
        }
        blocks.push((k as i32, m));
    }
    ChainMap::new(ct, cs, 0, blocks)
}

/// A simplicial involution of a complex, given on vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialInvolution {
    complex: SimplicialComplex,
    vertex_map: BTreeMap<usize, usize>,
}

impl SimplicialInvolution {
    pub fn new(complex: SimplicialComplex, vertex_map: BTreeMap<usize, usize>) -> Result<Self> {
        let vertices = complex.vertices();
        for &v in &vertices {
            let w = *vertex_map
                .get(&v)
                .ok_or_else(|| Error::NotSimplicial(format!("vertex {v} has no image")))?;
            if vertex_map.get(&w) != Some(&v) {
                return Err(Error::Structural(format!(
                    "vertex map is not an involution: {v} ↦ {w} ↦ {:?}",
                    vertex_map.get(&w)
                )));
            }
        }
        for s in complex.simplices() {
            let image: Vec<usize> = s.iter().map(|v| vertex_map[v]).collect();
            if !complex.contains(&image) {
                return Err(Error::NotSimplicial(format!(
                    "simplex {s:?} maps to {image:?}, which is not a simplex"
                )));
            }
        }
        Ok(SimplicialInvolution {
            complex,
            vertex_map,
        })
    }

    pub fn identity(complex: SimplicialComplex) -> Self {
        let vertex_map = complex.vertices().into_iter().map(|v| (v, v)).collect();
        SimplicialInvolution {
            complex,
            vertex_map,
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn vertex_map(&self) -> &BTreeMap<usize, usize> {
        &self.vertex_map
    }
}

/// The cohomology of a complex split into the two eigenspaces of an
/// involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionSplit {
    pub invariant: GradedSpace,
    pub anti_invariant: GradedSpace,
    /// Cocycles representing a basis of each anti-invariant space.
    pub anti_representatives: Vec<(i32, Matrix)>,
}

/// The `-1` eigenspaces of the involution induced on cohomology.
pub fn anti_invariants(inv: &SimplicialInvolution) -> Result<InvolutionSplit> {
    let f = pullback(&inv.complex, &inv.complex, &inv.vertex_map)?;
    let induced = induced_map(&f)?;
    let h = cohomology(f.source())?;
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    let mut reps = Vec::new();
    for k in h.graded().degrees() {
        let t = induced.block(k);
        let p = eigenspace(&t, Sign::Plus)?;
        let m = eigenspace(&t, Sign::Minus)?;
        plus.push((k, p.dim()));
        minus.push((k, m.dim()));
        reps.push((k, &*h.representatives(k) * m.basis()));
    }
    Ok(InvolutionSplit {
        invariant: GradedSpace::from_pairs(plus),
        anti_invariant: GradedSpace::from_pairs(minus),
        anti_representatives: reps,
    })
}

/// Betti numbers `dim H^k` for `k = 0 ..= dim`.
pub fn betti_numbers(sc: &SimplicialComplex) -> Result<Vec<usize>> {
    let h = cohomology(&simplicial_cochain_complex(sc))?;
    Ok((0..sc.face_counts().len() as i32).map(|k| h.dim(k)).collect())
}
