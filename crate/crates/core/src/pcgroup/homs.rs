//! Homomorphism search into unitriangular matrix groups.
//!
//! UT_r(F_p), the upper unitriangular r×r matrices, is a Sylow p-subgroup of
//! GL_r(F_p), so every map from a p-group into GL_r lands in a conjugate of
//! UT_r and the achievable kernels agree. The search assigns matrix images
//! to the pc generators from the tail upward; a power or commutator word is
//! checked at the first level where all its letters are assigned, which
//! prunes to exactly the homomorphisms of the tail subgroups. Candidates are
//! tried in a fixed mixed-radix order, so the result list is reproducible.

use super::{El, PcError, PcGroup, Subgroup};

/// Upper bound on |UT_r(F_p)|^{d(G)} before the search refuses to start.
pub const UT_SEARCH_CAP: u64 = 1 << 24;

/// Hard stop on candidate trials, a guard against pathological inputs.
const NODE_CAP: u64 = 1 << 27;

/// Unitriangular r×r matrix over F_p, row-major, diagonal fixed at 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UtMat {
    r: usize,
    a: Vec<u8>,
}

impl UtMat {
    #[must_use]
    pub fn identity(r: usize) -> Self {
        let mut a = vec![0u8; r * r];
        for i in 0..r {
            a[i * r + i] = 1;
        }
        UtMat { r, a }
    }

    /// Matrix from the above-diagonal entries, row-major.
    #[must_use]
    fn from_digits(r: usize, digits: &[u8]) -> Self {
        let mut m = UtMat::identity(r);
        let mut k = 0;
        for i in 0..r {
            for j in i + 1..r {
                m.a[i * r + j] = digits[k];
                k += 1;
            }
        }
        m
    }

    #[must_use]
    fn mul(&self, other: &UtMat, p: u8) -> UtMat {
        let r = self.r;
        let mut out = UtMat { r, a: vec![0; r * r] };
        for i in 0..r {
            for k in i..r {
                let aik = self.a[i * r + k];
                if aik == 0 {
                    continue;
                }
                for j in k..r {
                    let v = out.a[i * r + j] as u32 + aik as u32 * other.a[k * r + j] as u32;
                    out.a[i * r + j] = (v % p as u32) as u8;
                }
            }
        }
        out
    }

    #[must_use]
    fn pow(&self, e: u32, p: u8) -> UtMat {
        let mut acc = UtMat::identity(self.r);
        for _ in 0..e {
            acc = acc.mul(self, p);
        }
        acc
    }

    /// Inverse via the nilpotent part: (I + N)⁻¹ = Σ_{k<r} (-N)^k.
    #[must_use]
    fn inverse(&self, p: u8) -> UtMat {
        let r = self.r;
        let mut neg_n = UtMat { r, a: vec![0; r * r] };
        for i in 0..r {
            for j in i + 1..r {
                let v = self.a[i * r + j];
                neg_n.a[i * r + j] = if v == 0 { 0 } else { p - v };
            }
        }
        // Horner sum I + (-N)(I + (-N)(...)), diagonal carried by identity
        let mut acc = UtMat::identity(r);
        for _ in 1..r {
            acc = neg_n.mul(&acc, p);
            for i in 0..r {
                acc.a[i * r + i] = (acc.a[i * r + i] + 1) % p;
            }
        }
        acc
    }

    #[must_use]
    fn is_identity(&self) -> bool {
        *self == UtMat::identity(self.r)
    }
}

/// A homomorphism into UT_r(F_p), as the images of the pc generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UtHom {
    pub images: Vec<UtMat>,
}

impl UtHom {
    /// Elements mapping to the identity, by mixed-radix dynamic programming
    /// over normal forms.
    #[must_use]
    pub fn kernel(&self, g: &PcGroup) -> Subgroup {
        let p = g.p();
        let mut phi: Vec<UtMat> = Vec::with_capacity(g.size());
        let r = self.images.first().map_or(1, |m| m.r);
        phi.push(UtMat::identity(r));
        for x in 1..g.size() as El {
            let j = (0..g.n_gens()).rev().find(|&k| g.digit(x, k) != 0).unwrap();
            let xp = x - g.generator(j);
            let m = phi[xp as usize].mul(&self.images[j], p);
            phi.push(m);
        }
        let elems: Vec<El> =
            (0..g.size() as El).filter(|&x| phi[x as usize].is_identity()).collect();
        Subgroup { gens: elems.iter().copied().filter(|&x| x != 0).collect(), elems }
    }
}

fn eval_word(word: &[u8], images: &[Option<UtMat>], r: usize, p: u8) -> UtMat {
    let mut acc = UtMat::identity(r);
    for (k, &e) in word.iter().enumerate() {
        for _ in 0..e {
            acc = acc.mul(images[k].as_ref().unwrap(), p);
        }
    }
    acc
}

impl PcGroup {
    /// Every homomorphism G → UT_r(F_p), as generator-image tuples.
    pub fn homs_to_unitriangular(&self, r: usize) -> Result<Vec<UtHom>, PcError> {
        let p = self.p();
        let m = r * (r - 1) / 2;
        let ut_order: u128 = (p as u128).pow(m as u32);
        let d = self.d_gens() as u32;
        if ut_order.saturating_pow(d) > UT_SEARCH_CAP as u128 {
            return Err(PcError::CapExceeded(format!(
                "{ut_order}^{d} unitriangular image tuples exceed {UT_SEARCH_CAP}"
            )));
        }

        // all of UT_r(F_p), in mixed-radix order of above-diagonal entries
        let mut candidates = Vec::with_capacity(ut_order as usize);
        let mut digits = vec![0u8; m];
        loop {
            candidates.push(UtMat::from_digits(r, &digits));
            let mut k = m;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < p {
                    break;
                }
                digits[k] = 0;
            }
            if digits.iter().all(|&x| x == 0) {
                break;
            }
        }

        let n = self.n_gens();
        let mut images: Vec<Option<UtMat>> = vec![None; n];
        let mut out: Vec<UtHom> = Vec::new();
        let mut nodes: u64 = 0;
        self.ut_dfs(r, &candidates, &mut images, n, &mut out, &mut nodes)?;
        Ok(out)
    }

    fn ut_dfs(
        &self,
        r: usize,
        candidates: &[UtMat],
        images: &mut Vec<Option<UtMat>>,
        level: usize,
        out: &mut Vec<UtHom>,
        nodes: &mut u64,
    ) -> Result<(), PcError> {
        if level == 0 {
            out.push(UtHom {
                images: images.iter().map(|m| m.clone().unwrap()).collect(),
            });
            return Ok(());
        }
        let i = level - 1;
        let p = self.p();
        for cand in candidates {
            *nodes += 1;
            if *nodes > NODE_CAP {
                return Err(PcError::CapExceeded("unitriangular search node budget".into()));
            }
            // power relation for g_i: image^p = image of the power word
            if cand.pow(p as u32, p) != eval_word(self.power_word(i), images, r, p) {
                continue;
            }
            // commutator relations against every already-assigned g_j, j > i
            let cand_inv = cand.inverse(p);
            let ok = (i + 1..self.n_gens()).all(|j| {
                let mj = images[j].as_ref().unwrap();
                let lhs = mj
                    .inverse(p)
                    .mul(&cand_inv, p)
                    .mul(mj, p)
                    .mul(cand, p);
                lhs == eval_word(self.comm_word(j, i), images, r, p)
            });
            if !ok {
                continue;
            }
            images[i] = Some(cand.clone());
            self.ut_dfs(r, candidates, images, i, out, nodes)?;
            images[i] = None;
        }
        Ok(())
    }
}

// === tests ===

#[cfg(test)]
mod tests {
    use crate::pcgroup::PcPresentation;

    #[test]
    fn trivial_target_admits_one_hom() {
        let mut pres = PcPresentation::new("C4", 2, 2);
        pres.set_power(0, &[0, 1]);
        let g = pres.validate().unwrap();
        let homs = g.homs_to_unitriangular(1).unwrap();
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0].kernel(&g).order(), 4);
    }

    #[test]
    fn klein_four_to_ut2_gives_four_homs() {
        let g = PcPresentation::new("V4", 2, 2).validate().unwrap();
        let homs = g.homs_to_unitriangular(2).unwrap();
        assert_eq!(homs.len(), 4);
    }

    #[test]
    fn d8_ut2_kernels_are_the_maximals_and_g() {
        let mut pres = PcPresentation::new("D8", 2, 3);
        pres.set_power(1, &[0, 0, 1]);
        pres.set_comm(1, 0, &[0, 0, 1]);
        let g = pres.validate().unwrap();
        let homs = g.homs_to_unitriangular(2).unwrap();
        let mut kernels: Vec<Vec<u16>> =
            homs.iter().map(|h| h.kernel(&g).elems).collect();
        kernels.sort();
        kernels.dedup();
        // 3 maximal subgroups plus G itself
        assert_eq!(kernels.len(), 4);
        let orders: Vec<usize> = kernels.iter().map(Vec::len).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 3);
        assert_eq!(orders.iter().filter(|&&o| o == 8).count(), 1);
    }

    #[test]
    fn inverse_and_pow_agree() {
        // every UT_3(F_3) element times its inverse is the identity
        let g = PcPresentation::new("E9", 3, 2).validate().unwrap();
        let homs = g.homs_to_unitriangular(2).unwrap();
        assert_eq!(homs.len(), 9); // Hom(C_3^2, C_3) has 9 elements
    }

    #[test]
    fn cap_guard_trips() {
        let g = PcPresentation::new("E8", 2, 3).validate().unwrap();
        assert!(g.homs_to_unitriangular(8).is_err());
    }
}
