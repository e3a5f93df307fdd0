#![allow(dead_code)]

use gysin::braid::{Arrow, Braid};
use gysin::linalg::{rat, Matrix};
use rand::seq::SliceRandom;
use rand::Rng;

/// Adds a nonzero integer to one entry of one nonempty arrow of `b`.
/// Returns `None` when every arrow in the window is empty.
pub fn perturb_one_arrow<R: Rng + ?Sized>(rng: &mut R, b: &Braid) -> Option<(Arrow, i32, Braid)> {
    let (lo, hi) = b.window();
    let mut slots = Vec::new();
    for a in Arrow::ALL {
        for k in lo..=hi {
            let m = b.arrow(a, k);
            if m.rows() > 0 && m.cols() > 0 {
                slots.push((a, k));
            }
        }
    }
    let &(a, k) = slots.choose(rng)?;
    let mut m: Matrix = b.arrow(a, k).into_owned();
    let (r, c) = (rng.gen_range(0..m.rows()), rng.gen_range(0..m.cols()));
    let bump = if rng.gen_bool(0.5) { rng.gen_range(1..4) } else { -rng.gen_range(1..4) };
    let entry = m.get(r, c) + rat(bump);
    m.set(r, c, entry);
    Some((a, k, b.with_arrow(a, k, m).expect("same shape")))
}

/// Lowers the rank of a nonzero matrix by exactly one:
/// `M - (Mx)(yM) / (yMx)` for unit vectors picking a nonzero entry.
pub fn rank_one_reduction(m: &Matrix) -> Option<Matrix> {
    let (r, c) = (0..m.rows())
        .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
        .find(|&(r, c)| !num_traits::Zero::is_zero(m.get(r, c)))?;
    let col = Matrix::from_columns(m.rows(), &[m.column(c)]);
    let row = Matrix::from_rows(1, m.cols(), vec![m.row(r).to_vec()]).unwrap();
    let pivot = m.get(r, c).clone();
    let correction = (&col * &row).scale(&(rat(1) / pivot));
    Some(m - &correction)
}
