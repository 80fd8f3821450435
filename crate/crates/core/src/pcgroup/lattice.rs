//! Subgroup enumeration, structure invariants, and maximal elementary
//! abelian subgroups.
//!
//! Enumeration is bottom-up: every subgroup of order p^{k+1} is ⟨H, x⟩ for
//! some subgroup H of order p^k and x in N_G(H) outside H, because maximal
//! subgroups of p-groups are normal. Elementary abelian subgroups get their
//! own bottom-up walk through centralizing order-p extensions, which also
//! yields the largest elementary abelian rank. Listings are sorted by
//! (order, element list), so output order is reproducible.

use std::collections::BTreeSet;

use super::{log_p, El, PcError, PcGroup, Subgroup};

/// Orders above this refuse full subgroup enumeration.
pub const SUBGROUP_ENUM_CAP: usize = 256;

/// Generation, rank, class, coclass and exponent in one bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureInvariants {
    /// Minimal generator count, log_p |G/Φ(G)|.
    pub d: usize,
    /// Largest d(H) over all subgroups H.
    pub rank: usize,
    /// Nilpotency class.
    pub class: usize,
    /// n - class for |G| = p^n.
    pub coclass: usize,
    /// Largest element order.
    pub exponent: u32,
}

/// Maximal elementary abelian subgroups plus the largest elementary abelian
/// rank found anywhere in the group.
#[derive(Clone, Debug)]
pub struct MaximalElemAb {
    pub list: Vec<Subgroup>,
    pub max_rank: usize,
}

impl PcGroup {
    /// Φ(H) = [H,H] H^p computed inside the parent group.
    #[must_use]
    pub fn phi_of(&self, h: &Subgroup) -> Subgroup {
        let mut gens = Vec::new();
        for &x in &h.elems {
            let y = self.pow(x, self.p() as u32);
            if y != 0 {
                gens.push(y);
            }
        }
        for &x in &h.elems {
            for &y in &h.elems {
                let c = self.comm_el(x, y);
                if c != 0 {
                    gens.push(c);
                }
            }
        }
        self.subgroup_generated(&gens)
    }

    /// Minimal generator count of a subgroup, log_p |H/Φ(H)|.
    #[must_use]
    pub fn d_of(&self, h: &Subgroup) -> usize {
        log_p(h.order() / self.phi_of(h).order(), self.p() as usize)
    }

    /// Every subgroup, duplicate-free, sorted by (order, element list).
    pub fn subgroup_enumerate(&self) -> Result<Vec<Subgroup>, PcError> {
        if self.size() > SUBGROUP_ENUM_CAP {
            return Err(PcError::CapExceeded(format!(
                "subgroup enumeration needs order <= {SUBGROUP_ENUM_CAP}, got {}",
                self.size()
            )));
        }
        let p = self.p() as usize;
        let mut seen: BTreeSet<Vec<El>> = BTreeSet::new();
        let mut level: Vec<Vec<El>> = vec![vec![0]];
        seen.insert(vec![0]);
        let mut order = 1;
        while order < self.size() {
            let mut next: BTreeSet<Vec<El>> = BTreeSet::new();
            for elems in &level {
                let sub = sub_from_elems(elems);
                let norm = self.normalizer(&sub);
                for &x in &norm.elems {
                    if sub.contains(x) {
                        continue;
                    }
                    let mut gens = sub.gens.clone();
                    gens.push(x);
                    let bigger = self.subgroup_generated(&gens);
                    if bigger.order() == order * p && !seen.contains(&bigger.elems) {
                        seen.insert(bigger.elems.clone());
                        next.insert(bigger.elems);
                    }
                }
            }
            level = next.into_iter().collect();
            order *= p;
        }
        let mut out: Vec<Subgroup> = seen.into_iter().map(|e| sub_from_elems(&e)).collect();
        out.sort_by_key(|s| (s.order(), s.elems.clone()));
        Ok(out)
    }

    /// d, rank, class, coclass, exponent. Rank requires the enumeration cap.
    pub fn structure_invariants(&self) -> Result<StructureInvariants, PcError> {
        let subs = self.subgroup_enumerate()?;
        let rank = subs.iter().map(|h| self.d_of(h)).max().unwrap_or(0);
        let class = self.class();
        Ok(StructureInvariants {
            d: self.d_gens(),
            rank,
            class,
            coclass: self.n_gens() - class,
            exponent: self.exponent(),
        })
    }

    /// All elementary abelian subgroups maximal under inclusion, plus the
    /// largest elementary abelian rank.
    #[must_use]
    pub fn maximal_elem_ab(&self) -> MaximalElemAb {
        let p = self.p() as u32;
        let invs: Vec<El> = (1..self.size() as El).filter(|&x| self.order_of(x) == p).collect();
        if invs.is_empty() {
            return MaximalElemAb { list: vec![self.trivial_subgroup()], max_rank: 0 };
        }
        let mut level: BTreeSet<Vec<El>> = invs
            .iter()
            .map(|&x| self.subgroup_generated(std::slice::from_ref(&x)).elems)
            .collect();
        let mut maximal: Vec<Subgroup> = Vec::new();
        let mut rank = 1;
        loop {
            let mut next: BTreeSet<Vec<El>> = BTreeSet::new();
            for elems in &level {
                let sub = sub_from_elems(elems);
                let mut extendable = false;
                for &x in &invs {
                    if sub.contains(x) {
                        continue;
                    }
                    if elems.iter().all(|&h| self.mul(h, x) == self.mul(x, h)) {
                        extendable = true;
                        let mut gens = sub.gens.clone();
                        gens.push(x);
                        next.insert(self.subgroup_generated(&gens).elems);
                    }
                }
                if !extendable {
                    maximal.push(sub);
                }
            }
            if next.is_empty() {
                break;
            }
            level = next;
            rank += 1;
        }
        maximal.sort_by_key(|s| (s.order(), s.elems.clone()));
        MaximalElemAb { list: maximal, max_rank: rank }
    }
}

fn sub_from_elems(elems: &[El]) -> Subgroup {
    Subgroup {
        elems: elems.to_vec(),
        gens: elems.iter().copied().filter(|&x| x != 0).collect(),
    }
}

// === tests ===
