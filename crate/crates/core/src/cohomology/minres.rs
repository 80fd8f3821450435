//! Cohomology dimensions from a minimal free resolution of the trivial
//! module over the group algebra.
//!
//! Ops: minres_dims.
//!
//! Free modules are coordinate spaces F_p^(rank·|G|); copy t of the group
//! algebra occupies coordinates t·|G| .. (t+1)·|G|. Because the resolution
//! is minimal, the free rank in homological degree i equals dim H^i(G, F_p).
//! Deterministic: fixed basis orders, leftmost-pivot elimination, no
//! randomness.

use super::GradedDims;
use crate::ffmat::{Echelon, FpVec};
use crate::pcgroup::{El, PcGroup};

/// Largest free-module dimension (rank·|G|) the resolution will build.
pub const MINRES_DIM_CAP: usize = 8192;

// === group action on free modules ===

/// x·v coordinate-wise: (x·v)[t·|G| + z] = v[t·|G| + x⁻¹z].
fn act(g: &PcGroup, x: El, v: &FpVec, rank: usize) -> FpVec {
    let size = g.size();
    let xi = g.inv(x);
    let mut out = FpVec::zero(g.p(), rank * size);
    for t in 0..rank {
        let base = t * size;
        for z in 0..size {
            let c = v.get(base + g.mul(xi, z as El) as usize);
            if c != 0 {
                out.set(base + z, c);
            }
        }
    }
    out
}

// === radical quotient ===

/// Vectors of `basis` that project to a basis of K/IK, where K = span(basis)
/// and IK is the submodule generated by {(g_i − 1)·v : v ∈ basis}.
/// The count is the minimal generator number of K as a module.
fn min_generators(g: &PcGroup, basis: &[FpVec], rank: usize) -> Vec<FpVec> {
    let p = g.p();
    let cols = rank * g.size();
    let mut rad = Echelon::new(p, cols);
    let mut queue: Vec<FpVec> = Vec::new();
    for v in basis {
        for i in 0..g.n_gens() {
            let mut w = act(g, g.generator(i), v, rank);
            w.axpy(p - 1, v);
            if rad.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    // Close the span under the action: new independent vectors are acted on
    // again, so span(rad) is the submodule generated by the seeds.
    let mut qi = 0;
    while qi < queue.len() {
        let w = queue[qi].clone();
        qi += 1;
        for i in 0..g.n_gens() {
            let u = act(g, g.generator(i), &w, rank);
            if rad.insert(u.clone()) {
                queue.push(u);
            }
        }
    }
    let mut gens = Vec::new();
    for v in basis {
        if rad.insert(v.clone()) {
            gens.push(v.clone());
        }
    }
    gens
}

// === resolution driver ===

/// dims[i] = dim H^i(G, F_p) for i = 0..=kmax, truncating with a marker if
/// a free module would exceed MINRES_DIM_CAP coordinates.
#[must_use]
pub fn minres_dims(g: &PcGroup, kmax: usize) -> GradedDims {
    minres_dims_capped(g, kmax, MINRES_DIM_CAP)
}

pub(crate) fn minres_dims_capped(g: &PcGroup, kmax: usize, cap: usize) -> GradedDims {
    let p = g.p();
    let size = g.size();
    let mut dims = vec![1usize];
    if kmax == 0 {
        return GradedDims::complete(dims);
    }
    // Kernel of the augmentation: e_z − e_1 for z ≠ 1.
    let mut rank = 1usize;
    let mut kernel: Vec<FpVec> = (1..size)
        .map(|z| {
            let mut v = FpVec::zero(p, size);
            v.set(z, 1);
            v.set(0, p - 1);
            v
        })
        .collect();
    let invs: Vec<El> = (0..size as El).map(|x| g.inv(x)).collect();
    for i in 1..=kmax {
        let gens = min_generators(g, &kernel, rank);
        let b = gens.len();
        dims.push(b);
        if i == kmax {
            break;
        }
        let cols = b * size;
        if cols > cap {
            return GradedDims { dims, truncated_at: Some(i + 1) };
        }
        // Kernel of the next differential. Column (t, x) is the vector
        // x·w_t; the row at old coordinate (trow, zrow) reads off
        // w_t[trow·|G| + x⁻¹·zrow].
        let mut ech = Echelon::new(p, cols);
        for trow in 0..rank {
            let woff = trow * size;
            for zrow in 0..size {
                let mut row = FpVec::zero(p, cols);
                for (t, w) in gens.iter().enumerate() {
                    let base = t * size;
                    for x in 0..size {
                        let c = w.get(woff + g.mul(invs[x], zrow as El) as usize);
                        if c != 0 {
                            row.set(base + x, c);
                        }
                    }
                }
                ech.insert(row);
            }
        }
        kernel = ech.kernel_basis();
        rank = b;
    }
    GradedDims::complete(dims)
}

// === tests ===

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn cyclic_groups_have_all_ones() {
        for (p, k) in [(2u32, 1u32), (2, 3), (3, 2), (5, 1)] {
            let g = corpus::cyclic(p, k).unwrap().group;
            let d = minres_dims(&g, 10);
            assert_eq!(d.dims, vec![1; 11], "{}", g.name());
            assert_eq!(d.truncated_at, None);
        }
    }

    #[test]
    fn dihedral_8_counts_up() {
        let g = corpus::dihedral(8).unwrap().group;
        let d = minres_dims(&g, 8);
        assert_eq!(d.dims, vec![1, 2, 3, 4, 5, 6, 7, 8, 9]);
    }

    #[test]
    fn quaternion_8_has_period_four() {
        let g = corpus::quaternion(8).unwrap().group;
        let d = minres_dims(&g, 8);
        assert_eq!(d.dims, vec![1, 2, 2, 1, 1, 2, 2, 1, 1]);
    }

    #[test]
    fn degree_one_counts_minimal_generators() {
        for entry in corpus::default_corpus(2).unwrap() {
            if entry.group.size() <= 16 {
                let d = minres_dims(&entry.group, 1);
                assert_eq!(d.dims[1], entry.group.d_gens(), "{}", entry.group.name());
            }
        }
    }

    #[test]
    fn elementary_abelian_matches_binomials() {
        let g = corpus::elem_ab(2, 3).unwrap().group;
        let d = minres_dims(&g, 6);
        assert_eq!(d.dims, vec![1, 3, 6, 10, 15, 21, 28]);
    }

    #[test]
    fn abelian_c9xc3_shape() {
        let g = corpus::abelian(3, &[2, 1]).unwrap().group;
        let d = minres_dims(&g, 4);
        assert_eq!(d.dims, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn cap_truncates_with_marker() {
        let g = corpus::elem_ab(2, 3).unwrap().group;
        let d = minres_dims_capped(&g, 8, 30);
        assert_eq!(d.dims, vec![1, 3, 6]);
        assert_eq!(d.truncated_at, Some(3));
    }
}
