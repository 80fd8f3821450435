//! Characteristic subgroup tower from kernels of unitriangular
//! representations.
//!
//! V is the intersection of the kernels of every homomorphism into
//! UT_r(F_p). Below it the chain takes successive power subgroups: twice
//! for odd p (H = V^p, N = H^p), and for p = 2 three squaring steps
//! starting from V' = V². Every reported flag is recomputed from scratch
//! on the rebuilt subgroup; nothing is inferred from the construction.
//!
//! Ops: characteristic_tower, ut_kernel_intersection, kernel_lower_bound,
//! tower_bound_exp. When the representation search exceeds its cap, the
//! computable lower bound stands in for V and the report says so.
//! Deterministic: hom enumeration and subgroup listings are ordered.

use thiserror::Error;

use crate::cohomology::{self, CohomError};
use crate::pcgroup::{log_p, El, PcError, PcGroup, Subgroup};

// === errors ===

#[derive(Debug, Error)]
pub enum TowerError {
    #[error(transparent)]
    Group(#[from] PcError),
    #[error(transparent)]
    Cohom(#[from] CohomError),
}

// === report ===

/// Verified tower data: the stored chain v ⊇ h ⊇ n (for p = 2 these are
/// the primed subgroups, squared once more), recomputed flags for n, and
/// the index/bound exponents.
#[derive(Clone, Debug)]
pub struct TowerReport {
    pub r: usize,
    pub v: Subgroup,
    pub h: Subgroup,
    pub n: Subgroup,
    pub n_powerful: bool,
    pub n_p_central: bool,
    pub n_omega_extendible: bool,
    pub n_rank: usize,
    pub n_rank_le_r: bool,
    pub index_exp: usize,
    pub bound_exp: usize,
    pub fallback_used: bool,
}

// === bound arithmetic ===

/// ⌈log₂ r⌉, with r ≤ 1 giving 0.
#[must_use]
pub fn ceil_log2(r: usize) -> usize {
    let mut k = 0;
    while (1usize << k) < r {
        k += 1;
    }
    k
}

/// Index bound exponent r(⌈log₂r⌉ + 2 + e), where e = 1 for p = 2 and
/// e = 0 for odd p.
#[must_use]
pub fn tower_bound_exp(p: u8, r: usize) -> usize {
    r * (ceil_log2(r) + 2 + usize::from(p == 2))
}

// === the vertex subgroup V ===

/// Intersection of the kernels of every homomorphism into UT_r(F_p).
/// A p-subgroup of GL_r(F_p) is conjugate into UT_r(F_p), so kernels of
/// maps into the full linear group intersect to the same subgroup.
pub fn ut_kernel_intersection(g: &PcGroup, r: usize) -> Result<Subgroup, PcError> {
    let homs = g.homs_to_unitriangular(r)?;
    let mut elems: Vec<El> = (0..g.size() as El).collect();
    for hom in &homs {
        let ker = hom.kernel(g);
        elems.retain(|&x| ker.contains(x));
        if elems.len() == 1 {
            break;
        }
    }
    Ok(sub_of(elems))
}

/// γ_r(G) · G^{p^k} for the least k with p^k ≥ r. UT_r(F_p) has class
/// below r and exponent dividing p^k, so this product dies under every
/// homomorphism and sits inside the exact V.
#[must_use]
pub fn kernel_lower_bound(g: &PcGroup, r: usize) -> Subgroup {
    debug_assert!(r >= 1);
    let lc = g.lower_central();
    let gamma_r = &lc[(r - 1).min(lc.len() - 1)];
    let mut k = 0u32;
    while (g.p() as usize).pow(k) < r {
        k += 1;
    }
    let mut gens = gamma_r.gens.clone();
    gens.extend_from_slice(&g.agemo(k).gens);
    g.subgroup_generated(&gens)
}

fn sub_of(elems: Vec<El>) -> Subgroup {
    Subgroup { gens: elems.iter().copied().filter(|&x| x != 0).collect(), elems }
}

// === the tower ===

/// Build the chain below V = ut_kernel_intersection(G, r) and recompute
/// every claim about its bottom group N: powerful, p-central, extension
/// criterion, rank ≤ r, and the index exponent against the closed-form
/// bound. r defaults to the rank of G. A failed representation search
/// substitutes `kernel_lower_bound` and flags `fallback_used`.
pub fn characteristic_tower(
    g: &PcGroup,
    r_override: Option<usize>,
) -> Result<TowerReport, TowerError> {
    let r = match r_override {
        Some(r) => r,
        None => g.structure_invariants()?.rank,
    };
    let (top, fallback_used) = if r == 0 {
        (g.full_subgroup(), false)
    } else {
        match ut_kernel_intersection(g, r) {
            Ok(v) => (v, false),
            Err(PcError::CapExceeded(_)) => (kernel_lower_bound(g, r), true),
            Err(e) => return Err(e.into()),
        }
    };
    let v = if g.p() == 2 { g.agemo_of(&top, 1) } else { top };
    let h = g.agemo_of(&v, 1);
    let n = g.agemo_of(&h, 1);
    debug_assert!(g.is_normal(&v) && g.is_normal(&h) && g.is_normal(&n));
    debug_assert!(h.elems.iter().all(|&x| v.contains(x)));
    debug_assert!(n.elems.iter().all(|&x| h.contains(x)));

    let sg = g.subgroup_as_group(&n);
    let n_powerful = sg.group.is_powerful();
    let n_p_central = sg.group.is_p_central();
    let n_omega_extendible = cohomology::omega_extendible(&sg.group)?.verdict;
    let n_rank = sg.group.structure_invariants()?.rank;
    let index_exp = log_p(g.size() / n.order(), g.p() as usize);
    Ok(TowerReport {
        r,
        v,
        h,
        n,
        n_powerful,
        n_p_central,
        n_omega_extendible,
        n_rank,
        n_rank_le_r: n_rank <= r,
        index_exp,
        bound_exp: tower_bound_exp(g.p(), r),
        fallback_used,
    })
}

// === tests ===
