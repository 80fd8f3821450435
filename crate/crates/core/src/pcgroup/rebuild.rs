//! Rebuilding groups from cosets and from subgroups.
//!
//! Both constructions walk the chain G = G_1 ⊇ G_2 ⊇ … ⊇ G_{n+1} = 1 with
//! G_i = ⟨g_i, …, g_n⟩. Mapping it into a quotient (or intersecting it with
//! a subgroup) gives a chain whose steps have index 1 or p; the positions
//! with index p supply a polycyclic generating sequence of the new group,
//! and its power and commutator words are read off by locating elements
//! among the mixed-radix products of the new generators. The rebuilt
//! presentation goes through full validation, and the connecting map is
//! checked to be multiplicative on every pair, so the output is certified
//! rather than trusted.

use super::{El, PcError, PcGroup, PcPresentation, Subgroup};

/// A validated quotient G/N together with its certified projection.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub group: PcGroup,
    /// Image of each original generator g_i in the quotient.
    pub gen_images: Vec<El>,
    /// Image of every element of G (indexed by parent element).
    pub proj: Vec<El>,
}

/// A subgroup rebuilt as a standalone validated group.
#[derive(Clone, Debug)]
pub struct SubgroupGroup {
    pub group: PcGroup,
    /// Parent element of each new-group element (indexed by new element).
    pub embed: Vec<El>,
}

impl SubgroupGroup {
    /// New-group element sitting over a parent element, if it is in range.
    #[must_use]
    pub fn from_parent(&self, x: El) -> Option<El> {
        self.embed.iter().position(|&y| y == x).map(|q| q as El)
    }
}

impl PcGroup {
    /// G/N for a normal subgroup N, rebuilt and revalidated from the coset
    /// multiplication; the projection is checked on all pairs.
    pub fn quotient(&self, nsub: &Subgroup) -> Result<QuotientMap, PcError> {
        if !self.is_normal(nsub) {
            return Err(PcError::NotNormal);
        }
        let size = self.size();
        let p = self.p() as usize;

        // canonical coset representative: least element of x*N
        let mut coset_rep = vec![0 as El; size];
        for x in 0..size as El {
            coset_rep[x as usize] =
                nsub.elems.iter().map(|&v| self.mul(x, v)).min().unwrap();
        }

        // chain T_i = <g_i, ..., g_n, N>: index-p steps select the quotient's
        // generating sequence
        let mut selected: Vec<usize> = Vec::new();
        let mut tail = nsub.clone();
        for i in (0..self.n_gens()).rev() {
            let g = self.generator(i);
            if tail.contains(g) {
                continue;
            }
            let mut gens = tail.gens.clone();
            gens.push(g);
            let next = self.subgroup_generated(&gens);
            debug_assert_eq!(next.order(), tail.order() * p);
            selected.push(i);
            tail = next;
        }
        selected.reverse();
        let m = selected.len();
        let qsize = p.pow(m as u32);
        debug_assert_eq!(qsize * nsub.order(), size);

        // locate each of the p^m products of selected generators in its coset
        let mut rep_to_q = vec![El::MAX; size];
        for q in 0..qsize {
            let mut x: El = 0;
            let mut rest = q;
            for t in (0..m).rev() {
                let a = rest % p;
                rest /= p;
                let g = self.generator(selected[t]);
                let mut ga: El = 0;
                for _ in 0..a {
                    ga = self.mul(ga, g);
                }
                // prepend: products are taken in ascending selected order
                x = self.mul(ga, x);
            }
            let rep = coset_rep[x as usize] as usize;
            if rep_to_q[rep] != El::MAX {
                return Err(PcError::Inconsistent(x, rep as El, 0));
            }
            rep_to_q[rep] = q as El;
        }
        let proj: Vec<El> =
            (0..size).map(|x| rep_to_q[coset_rep[x] as usize]).collect();
        if proj.iter().any(|&q| q == El::MAX) {
            return Err(PcError::Inconsistent(0, 0, 0));
        }

        // read off the quotient presentation from projected relation values
        let name = format!("{}_mod{}", self.name(), nsub.order());
        let mut pres = PcPresentation::new(&name, p as u32, m);
        let digits = |q: El| -> Vec<u8> {
            let mut v = vec![0u8; m];
            let mut rest = q as usize;
            for t in (0..m).rev() {
                v[t] = (rest % p) as u8;
                rest /= p;
            }
            v
        };
        for (t, &i) in selected.iter().enumerate() {
            let gi = self.generator(i);
            pres.set_power(t, &digits(proj[self.pow(gi, p as u32) as usize]));
            for (s, &iprev) in selected.iter().enumerate().take(t) {
                let w = self.comm_el(self.generator(i), self.generator(iprev));
                pres.set_comm(t, s, &digits(proj[w as usize]));
            }
        }
        let group = pres.validate()?;

        // certify the projection as a homomorphism on every pair
        for x in 0..size as El {
            for y in 0..size as El {
                let lhs = proj[self.mul(x, y) as usize];
                let rhs = group.mul(proj[x as usize], proj[y as usize]);
                if lhs != rhs {
                    return Err(PcError::Inconsistent(x, y, 0));
                }
            }
        }

        let gen_images = (0..self.n_gens()).map(|i| proj[self.generator(i) as usize]).collect();
        Ok(QuotientMap { group, gen_images, proj })
    }

    /// A subgroup rebuilt as a validated standalone group, with the element
    /// embedding back into the parent; the embedding is checked to be
    /// multiplicative on every pair.
    #[must_use]
    pub fn subgroup_as_group(&self, h: &Subgroup) -> SubgroupGroup {
        let p = self.p() as usize;
        let n = self.n_gens();

        // H ∩ G_i drops by index p exactly where a new generator is needed;
        // take the least element of the difference each time
        let in_chain = |x: El, i: usize| (0..i).all(|k| self.digit(x, k) == 0);
        let mut selected_gens: Vec<El> = Vec::new();
        for i in 0..n {
            let cur: Vec<El> =
                h.elems.iter().copied().filter(|&x| in_chain(x, i)).collect();
            let deeper: Vec<El> =
                h.elems.iter().copied().filter(|&x| in_chain(x, i + 1)).collect();
            if cur.len() != deeper.len() {
                debug_assert_eq!(cur.len(), deeper.len() * p);
                let pick = *cur.iter().find(|x| !deeper.contains(x)).unwrap();
                selected_gens.push(pick);
            }
        }
        let m = selected_gens.len();
        let qsize = p.pow(m as u32);
        debug_assert_eq!(qsize, h.order());

        // enumerate the p^m normal-form products and index the subgroup by them
        let mut embed = vec![0 as El; qsize];
        let mut lookup = vec![El::MAX; self.size()];
        for q in 0..qsize {
            let mut x: El = 0;
            let mut rest = q;
            for t in (0..m).rev() {
                let a = rest % p;
                rest /= p;
                let mut ga: El = 0;
                for _ in 0..a {
                    ga = self.mul(ga, selected_gens[t]);
                }
                x = self.mul(ga, x);
            }
            debug_assert_eq!(lookup[x as usize], El::MAX);
            embed[q] = x;
            lookup[x as usize] = q as El;
        }

        let name = format!("{}_sub{}", self.name(), h.order());
        let mut pres = PcPresentation::new(&name, p as u32, m);
        let digits = |q: El| -> Vec<u8> {
            let mut v = vec![0u8; m];
            let mut rest = q as usize;
            for t in (0..m).rev() {
                v[t] = (rest % p) as u8;
                rest /= p;
            }
            v
        };
        for t in 0..m {
            let ht = selected_gens[t];
            pres.set_power(t, &digits(lookup[self.pow(ht, p as u32) as usize]));
            for s in 0..t {
                let w = self.comm_el(ht, selected_gens[s]);
                pres.set_comm(t, s, &digits(lookup[w as usize]));
            }
        }
        let group = pres.validate().expect("subgroup chain yields a consistent presentation");

        // certify the embedding as an isomorphism onto the subgroup
        for q1 in 0..qsize as El {
            for q2 in 0..qsize as El {
                let lhs = self.mul(embed[q1 as usize], embed[q2 as usize]);
                let rhs = embed[group.mul(q1, q2) as usize];
                assert_eq!(lhs, rhs, "subgroup embedding failed to be multiplicative");
            }
        }

        SubgroupGroup { group, embed }
    }
}

// === tests ===
