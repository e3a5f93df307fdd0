//! Seeded generators of random complexes, short exact sequences and double
//! diagrams, used by the property tests and the acceptance suite.
//!
//! Over a field every complex splits as boundaries ⊕ cohomology ⊕ a
//! complement mapped isomorphically onto the next boundaries, and every
//! short exact sequence `A ↪ B ↠ C` is isomorphic to `B = A ⊕ C` with a
//! differential twisted by a cochain `C → A[1]`. The generators build these
//! normal forms and then hide them behind random changes of basis.

use rand::Rng;

use crate::braid::DoubleSesDiagram;
use crate::cochain::{ChainMap, CochainComplex};
use crate::exactness::ShortExactSequence;
use crate::linalg::{kernel_basis, rat, Matrix};

/// Bounds for generated complexes.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub lo: i32,
    /// Number of degrees in the window.
    pub len: usize,
    /// Upper bound for each Betti number and each differential rank.
    pub max_rank: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            lo: 0,
            len: 4,
            max_rank: 2,
        }
    }
}

/// Uniform integer matrix with entries in `-bound..=bound`.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, rat(rng.gen_range(-bound..=bound)));
        }
    }
    m
}

/// A random invertible matrix together with its inverse, built as a
/// product of unit triangular factors and a column permutation.
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (Matrix, Matrix) {
    let mut lower = Matrix::identity(n);
    let mut upper = Matrix::identity(n);
    for r in 0..n {
        for c in 0..r {
            lower.set(r, c, rat(rng.gen_range(-2..=2)));
            upper.set(c, r, rat(rng.gen_range(-2..=2)));
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let p = &(&lower * &upper) * &Matrix::identity(n).select_columns(&perm);
    let inv = p.inverse().expect("unit triangular factors are invertible");
    (p, inv)
}

/// A random matrix of exactly the given rank.
pub fn random_matrix_of_rank<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, rank: usize) -> Matrix {
    assert!(rank <= rows.min(cols), "rank {rank} exceeds {rows}x{cols}");
    let mut core = Matrix::zeros(rows, cols);
    for i in 0..rank {
        core.set(i, i, rat(1));
    }
    let (p, _) = random_invertible(rng, rows);
    let (q, _) = random_invertible(rng, cols);
    &(&p * &core) * &q
}

/// Graded data over a fixed window, before trimming into a complex.
#[derive(Clone, Debug)]
struct Graded {
    lo: i32,
    dims: Vec<usize>,
    /// `diffs[i]` leaves degree `lo + i`; the last one is `0 × dims[len-1]`.
    diffs: Vec<Matrix>,
}

impl Graded {
    fn complex(&self) -> CochainComplex {
        let n = self.dims.len();
        CochainComplex::new(self.lo, self.dims.clone(), self.diffs[..n.saturating_sub(1)].to_vec())
            .expect("generated shapes are consistent")
    }

    fn target_dim(&self, i: usize) -> usize {
        self.dims.get(i + 1).copied().unwrap_or(0)
    }
}

fn split_graded<R: Rng + ?Sized>(rng: &mut R, shape: Shape) -> Graded {
    let n = shape.len;
    let betti: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=shape.max_rank)).collect();
    let ranks: Vec<usize> = (0..n)
        .map(|i| if i + 1 < n { rng.gen_range(0..=shape.max_rank) } else { 0 })
        .collect();
    // Degree i is laid out as [image of d^{i-1} | cohomology | complement].
    let dims: Vec<usize> = (0..n)
        .map(|i| (if i > 0 { ranks[i - 1] } else { 0 }) + betti[i] + ranks[i])
        .collect();
    let diffs = (0..n)
        .map(|i| {
            let rows = dims.get(i + 1).copied().unwrap_or(0);
            let mut d = Matrix::zeros(rows, dims[i]);
            let offset = dims[i] - ranks[i];
            for j in 0..ranks[i] {
                d.set(j, offset + j, rat(1));
            }
            d
        })
        .collect();
    Graded {
        lo: shape.lo,
        dims,
        diffs,
    }
}

/// Random change of basis `p_i` in every degree.
fn bases<R: Rng + ?Sized>(rng: &mut R, g: &Graded) -> Vec<(Matrix, Matrix)> {
    g.dims.iter().map(|&n| random_invertible(rng, n)).collect()
}

fn rebase(g: &Graded, basis: &[(Matrix, Matrix)]) -> Graded {
    let n = g.dims.len();
    let diffs = (0..n)
        .map(|i| {
            let after = if i + 1 < n { &basis[i + 1].0 } else { &Matrix::identity(0) };
            &(after * &g.diffs[i]) * &basis[i].1
        })
        .collect();
    Graded {
        lo: g.lo,
        dims: g.dims.clone(),
        diffs,
    }
}

/// `target_basis · f · source_basis⁻¹` in every degree.
fn rebase_blocks(f: &[Matrix], source: &[(Matrix, Matrix)], target: &[(Matrix, Matrix)]) -> Vec<Matrix> {
    f.iter()
        .enumerate()
        .map(|(i, m)| &(&target[i].0 * m) * &source[i].1)
        .collect()
}

fn chain_map(source: &Graded, target: &Graded, blocks: Vec<Matrix>) -> ChainMap {
    let (s, t) = (source.complex(), target.complex());
    let lo = source.lo;
    ChainMap::new(s, t, 0, blocks.into_iter().enumerate().map(|(i, m)| (lo + i as i32, m)))
        .expect("generated shapes are consistent")
}

/// A random complex in general position.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, shape: Shape) -> CochainComplex {
    let g = split_graded(rng, shape);
    let b = bases(rng, &g);
    rebase(&g, &b).complex()
}

/// A random cochain `t^i : C^i → A^{i+1}` with `d_A t + t d_C = 0`.
///
/// The admissible cochains form the kernel of a linear operator on the
/// entries of all the `t^i`; the result is a random integer combination of
/// a kernel basis.
fn twisting_cochain<R: Rng + ?Sized>(rng: &mut R, a: &Graded, c: &Graded) -> Vec<Matrix> {
    let n = a.dims.len();
    // Unknown t^i has shape a.dims[i+1] × c.dims[i].
    let shapes: Vec<(usize, usize)> = (0..n).map(|i| (a.target_dim(i), c.dims[i])).collect();
    let mut offsets = Vec::with_capacity(n);
    let mut unknowns = 0;
    for &(r, k) in &shapes {
        offsets.push(unknowns);
        unknowns += r * k;
    }
    if unknowns == 0 {
        return shapes.iter().map(|&(r, k)| Matrix::zeros(r, k)).collect();
    }
    // Equation block i: d_A^{i+1} t^i + t^{i+1} d_C^i, shape a.dims[i+2] × c.dims[i].
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let out_rows = a.dims.get(i + 2).copied().unwrap_or(0);
        for r in 0..out_rows {
            for col in 0..c.dims[i] {
                let mut eq = vec![0i64; unknowns];
                let da = &a.diffs[i + 1];
                for m in 0..shapes[i].0 {
                    eq[offsets[i] + m * shapes[i].1 + col] += to_i64(da.get(r, m));
                }
                if i + 1 < n {
                    let dc = &c.diffs[i];
                    for m in 0..shapes[i + 1].1 {
                        eq[offsets[i + 1] + r * shapes[i + 1].1 + m] += to_i64(dc.get(m, col));
                    }
                }
                rows.push(eq);
            }
        }
    }
    let system = if rows.is_empty() {
        Matrix::zeros(0, unknowns)
    } else {
        Matrix::from_ints(&rows)
    };
    let basis = kernel_basis(&system);
    let mut flat = vec![rat(0); unknowns];
    for v in &basis.basis_vectors() {
        let coeff = rat(rng.gen_range(-2..=2));
        for (x, y) in flat.iter_mut().zip(v) {
            *x += &coeff * y;
        }
    }
    shapes
        .iter()
        .zip(&offsets)
        .map(|(&(r, k), &off)| {
            let mut m = Matrix::zeros(r, k);
            for i in 0..r {
                for j in 0..k {
                    m.set(i, j, flat[off + i * k + j].clone());
                }
            }
            m
        })
        .collect()
}

/// Split-form differentials only carry integer entries.
fn to_i64(x: &crate::linalg::Rational) -> i64 {
    assert!(x.is_integer(), "split-form differentials are integral");
    i64::try_from(x.to_integer()).expect("small entries")
}

/// Block matrix `[[top_left, top_right], [0, bottom_right]]`.
fn upper_block(top_left: &Matrix, top_right: &Matrix, bottom_right: &Matrix) -> Matrix {
    let top = top_left.hstack(top_right);
    let bottom = Matrix::zeros(bottom_right.rows(), top_left.cols()).hstack(bottom_right);
    top.vstack(&bottom)
}

/// `[I; 0]`, the inclusion of the first summand.
fn first_inclusion(a: usize, c: usize) -> Matrix {
    Matrix::identity(a).vstack(&Matrix::zeros(c, a))
}

/// `[0 I]`, the projection onto the second summand.
fn second_projection(a: usize, c: usize) -> Matrix {
    Matrix::zeros(c, a).hstack(&Matrix::identity(c))
}

/// `A ⊕_t C` with differential `[[d_A, t], [0, d_C]]`.
fn twisted_sum(a: &Graded, c: &Graded, t: &[Matrix]) -> Graded {
    let n = a.dims.len();
    let diffs = (0..n)
        .map(|i| upper_block(&a.diffs[i], &t[i], &c.diffs[i]))
        .collect();
    Graded {
        lo: a.lo,
        dims: (0..n).map(|i| a.dims[i] + c.dims[i]).collect(),
        diffs,
    }
}

/// A random short exact sequence with a generally nonzero connecting map.
pub fn random_ses<R: Rng + ?Sized>(rng: &mut R, shape: Shape) -> ShortExactSequence {
    let a = split_graded(rng, shape);
    let c = split_graded(rng, shape);
    let t = twisting_cochain(rng, &a, &c);
    let b = twisted_sum(&a, &c, &t);
    let n = shape.len;
    let inj: Vec<Matrix> = (0..n).map(|i| first_inclusion(a.dims[i], c.dims[i])).collect();
    let surj: Vec<Matrix> = (0..n).map(|i| second_projection(a.dims[i], c.dims[i])).collect();

    let (ba, bb, bc) = (bases(rng, &a), bases(rng, &b), bases(rng, &c));
    let (a, b, c) = (rebase(&a, &ba), rebase(&b, &bb), rebase(&c, &bc));
    let inj = chain_map(&a, &b, rebase_blocks(&inj, &ba, &bb));
    let surj = chain_map(&b, &c, rebase_blocks(&surj, &bb, &bc));
    ShortExactSequence::new(inj, surj).expect("generated maps share the middle complex")
}

/// A random double diagram. The total complex is `T = P ⊕ C ⊕ Q` with
/// `R = P ⊕ C` and `S = P ⊕ Q` as subcomplexes, twisted by independent
/// random cochains `C → P[1]` and `Q → P[1]`.
pub fn random_double_ses<R: Rng + ?Sized>(rng: &mut R, shape: Shape) -> DoubleSesDiagram {
    let p = split_graded(rng, shape);
    let c = split_graded(rng, shape);
    let q = split_graded(rng, shape);
    let tc = twisting_cochain(rng, &p, &c);
    let tq = twisting_cochain(rng, &p, &q);
    let r = twisted_sum(&p, &c, &tc);
    let s = twisted_sum(&p, &q, &tq);
    let n = shape.len;
    let t = Graded {
        lo: p.lo,
        dims: (0..n).map(|i| p.dims[i] + c.dims[i] + q.dims[i]).collect(),
        diffs: (0..n)
            .map(|i| {
                let top = p.diffs[i].hstack(&tc[i]).hstack(&tq[i]);
                let mid = Matrix::zeros(c.diffs[i].rows(), p.dims[i])
                    .hstack(&c.diffs[i])
                    .hstack(&Matrix::zeros(c.diffs[i].rows(), q.dims[i]));
                let bottom = Matrix::zeros(q.diffs[i].rows(), p.dims[i] + c.dims[i]).hstack(&q.diffs[i]);
                top.vstack(&mid).vstack(&bottom)
            })
            .collect(),
    };

    let (pd, cd, qd) = (&p.dims, &c.dims, &q.dims);
    let blocks = |f: &dyn Fn(usize) -> Matrix| (0..n).map(f).collect::<Vec<_>>();
    let p_to_r = blocks(&|i| first_inclusion(pd[i], cd[i]));
    let r_to_c = blocks(&|i| second_projection(pd[i], cd[i]));
    let p_to_s = blocks(&|i| first_inclusion(pd[i], qd[i]));
    let s_to_q = blocks(&|i| second_projection(pd[i], qd[i]));
    let r_to_t = blocks(&|i| Matrix::identity(pd[i] + cd[i]).vstack(&Matrix::zeros(qd[i], pd[i] + cd[i])));
    let t_to_q = blocks(&|i| second_projection(pd[i] + cd[i], qd[i]));
    let s_to_t = blocks(&|i| {
        let top = Matrix::identity(pd[i]).hstack(&Matrix::zeros(pd[i], qd[i]));
        let mid = Matrix::zeros(cd[i], pd[i] + qd[i]);
        let bottom = Matrix::zeros(qd[i], pd[i]).hstack(&Matrix::identity(qd[i]));
        top.vstack(&mid).vstack(&bottom)
    });
    let t_to_c = blocks(&|i| {
        Matrix::zeros(cd[i], pd[i])
            .hstack(&Matrix::identity(cd[i]))
            .hstack(&Matrix::zeros(cd[i], qd[i]))
    });

    let (bp, br, bs, bt, bc, bq) = (
        bases(rng, &p),
        bases(rng, &r),
        bases(rng, &s),
        bases(rng, &t),
        bases(rng, &c),
        bases(rng, &q),
    );
    let (p, r, s, t, c, q) = (
        rebase(&p, &bp),
        rebase(&r, &br),
        rebase(&s, &bs),
        rebase(&t, &bt),
        rebase(&c, &bc),
        rebase(&q, &bq),
    );
    let ses = |x: &Graded, bx, y: &Graded, by, z: &Graded, bz, f: &[Matrix], g: &[Matrix]| {
        ShortExactSequence::new(
            chain_map(x, y, rebase_blocks(f, bx, by)),
            chain_map(y, z, rebase_blocks(g, by, bz)),
        )
        .expect("generated maps share the middle complex")
    };
    let base = ses(&p, &bp, &r, &br, &c, &bc, &p_to_r, &r_to_c);
    let total = ses(&s, &bs, &t, &bt, &c, &bc, &s_to_t, &t_to_c);
    let relative = ses(&p, &bp, &s, &bs, &q, &bq, &p_to_s, &s_to_q);
    let absolute = ses(&r, &br, &t, &bt, &q, &bq, &r_to_t, &t_to_q);
    DoubleSesDiagram::new(base, total, relative, absolute).expect("generated corners agree")
}

/// Random ranks for an exact sequence of `len` arrows; the first and last
/// ranks are zero so the sequence starts and ends at zero.
pub fn random_rank_profile<R: Rng + ?Sized>(rng: &mut R, len: usize, max_rank: usize) -> Vec<usize> {
    (0..len)
        .map(|i| if i == 0 || i + 1 == len { 0 } else { rng.gen_range(0..=max_rank) })
        .collect()
}
