//! Torus recognition and the conjugacy invariants `dim(t ∩ W_{>=0})` and `dim pr_0`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, WittError};
use crate::linalg::{EchelonBuilder, SparseVec};
use crate::params::Params;
use crate::subspace::Subspace;

/// Dimension up to which every element of a candidate torus is checked.
pub const EXHAUSTIVE_TORUS_DIM: usize = 4;
pub const TORUS_SAMPLES: usize = 10_000;
const DEFAULT_SEED: u64 = 0x5eed;

/// `true` iff `S` is abelian, closed under `[p]`, and its elements pass the
/// semisimplicity test `X ∈ span{X^[p^k] : k >= 1}`. Elements are enumerated
/// when `dim S <= 4`; larger subspaces are checked on the basis and on
/// seeded random samples.
pub fn is_torus(s: &Subspace) -> bool {
    is_torus_sampled(s, TORUS_SAMPLES, DEFAULT_SEED)
}

pub fn is_torus_sampled(s: &Subspace, samples: usize, seed: u64) -> bool {
    if s.is_zero() {
        return true;
    }
    if !s.is_abelian() {
        return false;
    }
    let Some(pmap) = p_map_matrix(s) else {
        return false;
    };
    let pr = s.params();
    let d = s.dim();
    let semisimple = |c: &[u32]| semisimple_coords(&pmap, c, &pr);
    if d <= EXHAUSTIVE_TORUS_DIM {
        let total = (pr.p() as usize).pow(d as u32);
        (1..total).all(|mut code| {
            let mut c = vec![0u32; d];
            for slot in c.iter_mut() {
                *slot = (code % pr.p() as usize) as u32;
                code /= pr.p() as usize;
            }
            semisimple(&c)
        })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let unit = |i: usize| (0..d).map(|j| u32::from(i == j)).collect::<Vec<_>>();
        (0..d).all(|i| semisimple(&unit(i)))
            && (0..samples).all(|_| {
                let c: Vec<u32> = (0..d).map(|_| rng.gen_range(0..pr.p())).collect();
                semisimple(&c)
            })
    }
}

/// Matrix (column `j` = image of basis vector `j`) of the `p`-map restricted
/// to an abelian `S`, where it is F_p-linear; `None` if `S` is not closed
/// under `[p]`.
fn p_map_matrix(s: &Subspace) -> Option<Vec<Vec<u32>>> {
    let wb = s.witt_basis();
    let d = s.dim();
    let mut cols = Vec::with_capacity(d);
    for e in s.basis_elements() {
        let image = wb.to_sparse(&e.p_power());
        // coordinates of a member of S are its entries at the pivot columns
        let coords: Vec<u32> = s.pivots().iter().map(|&c| image.get(c)).collect();
        if !s.contains_vector(&image) {
            return None;
        }
        cols.push(coords);
    }
    Some(cols)
}

fn apply(pmap: &[Vec<u32>], c: &[u32], pr: &Params) -> Vec<u32> {
    let d = c.len();
    let mut out = vec![0u32; d];
    for (j, &cj) in c.iter().enumerate() {
        if cj == 0 {
            continue;
        }
        for i in 0..d {
            out[i] = pr.add(out[i], pr.mul(cj, pmap[j][i]));
        }
    }
    out
}

fn semisimple_coords(pmap: &[Vec<u32>], c: &[u32], pr: &Params) -> bool {
    let d = c.len();
    let mut b = EchelonBuilder::new(*pr, d);
    let mut y = apply(pmap, c, pr);
    while b.insert(&SparseVec::from_dense(&y, pr.p())).is_some() {
        y = apply(pmap, &y, pr);
    }
    b.contains(&SparseVec::from_dense(c, pr.p()))
}

/// `dim(T ∩ W(n)_{>=0})`, a complete conjugacy invariant of maximal tori.
pub fn torus_orbit_invariant(t: &Subspace) -> Result<usize> {
    if !is_torus(t) {
        return Err(WittError::NotATorus);
    }
    Ok(t.dim_degree_at_least(0))
}

/// Dimension of the image of `S` in `W(n) / W(n)_{>=0}`.
pub fn r_invariant_pr0(s: &Subspace) -> usize {
    let wb = s.witt_basis();
    s.projection_rank(|k| wb.degree(k) == -1)
}
