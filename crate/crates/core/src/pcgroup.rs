//! Finite p-groups given by consistent polycyclic presentations.
//!
//! A group is presented by generators g_1..g_n, all of relative order p:
//! power words g_i^p supported on indices above i, commutator words
//! [g_j, g_i] = g_j⁻¹g_i⁻¹g_jg_i (j > i) supported on indices above j.
//! Elements are normal forms g_1^{a_1}···g_n^{a_n}, indexed in mixed radix
//! with a_1 most significant; index 0 is the identity and |G| = p^n.
//!
//! Operations: presentation validation (collection tables, bijectivity of
//! right translations, relation recheck, associativity certificate),
//! products/inverses/orders, generated subgroups, omega and agemo subgroups,
//! center and derived/Frattini/lower-central series, quotient groups,
//! subgroups rebuilt as standalone groups, full subgroup enumeration with
//! structure invariants, maximal elementary abelian subgroups, and
//! homomorphism search into unitriangular matrix groups.
//!
//! Determinism: element scans run in ascending index order, subgroup listings
//! are sorted, and the associativity sampler above the exhaustive cutoff
//! draws from a fixed-seed generator. Identical inputs give identical output.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ffmat::is_supported_prime;

mod homs;
mod lattice;
mod rebuild;

pub use homs::{UtHom, UT_SEARCH_CAP};
pub use lattice::{MaximalElemAb, StructureInvariants, SUBGROUP_ENUM_CAP};
pub use rebuild::{QuotientMap, SubgroupGroup};

/// Element of a validated group, as its mixed-radix normal-form index.
pub type El = u16;

/// Largest supported group order.
pub const SIZE_CAP: usize = 512;
/// Orders up to this get the exhaustive associativity certificate.
const EXHAUSTIVE_ASSOC: usize = 64;
/// Sample count for the seeded associativity probe above the cutoff.
const ASSOC_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PcError {
    #[error("{0} is not a supported prime characteristic")]
    BadPrime(u32),
    #[error("unsupported size: order {0} exceeds the cap {SIZE_CAP}")]
    SizeCap(u64),
    #[error("malformed word: {0}")]
    BadWord(String),
    #[error("inconsistent presentation: witness triple ({0}, {1}, {2})")]
    Inconsistent(El, El, El),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("search cap exceeded: {0}")]
    CapExceeded(String),
    #[error("bad group file: {0}")]
    BadFile(String),
}

// === presentation data ===

/// Raw presentation: the input to validation. Exponent vectors have length n
/// with entries in [0, p); `power[i]` must be supported on indices > i and
/// `comm[j][i]` (stored for i < j) on indices > j.
#[derive(Clone, Debug)]
pub struct PcPresentation {
    pub name: String,
    pub p: u32,
    pub n: usize,
    pub power: Vec<Vec<u8>>,
    pub comm: Vec<Vec<Vec<u8>>>,
}

impl PcPresentation {
    /// Presentation with all power and commutator words trivial
    /// (the elementary abelian starting point).
    #[must_use]
    pub fn new(name: &str, p: u32, n: usize) -> Self {
        PcPresentation {
            name: name.to_string(),
            p,
            n,
            power: vec![vec![0; n]; n],
            comm: (0..n).map(|j| vec![vec![0; n]; j]).collect(),
        }
    }

    /// Set g_i^p (0-based i) to the word with the given exponents.
    pub fn set_power(&mut self, i: usize, exps: &[u8]) {
        self.power[i] = exps.to_vec();
    }

    /// Set [g_j, g_i] (0-based, j > i) to the word with the given exponents.
    pub fn set_comm(&mut self, j: usize, i: usize, exps: &[u8]) {
        self.comm[j][i] = exps.to_vec();
    }

    /// Parse the group file format: `{"name", "p", "ngens", "power",
    /// "comm": [{"j", "i", "w"}]}` with 1-based j, i; unlisted commutators
    /// are trivial.
    pub fn from_json_str(s: &str) -> Result<Self, PcError> {
        let f: GroupFile = serde_json::from_str(s).map_err(|e| PcError::BadFile(e.to_string()))?;
        let n = f.ngens;
        if f.power.len() != n {
            return Err(PcError::BadFile(format!("power has {} rows for ngens {}", f.power.len(), n)));
        }
        let mut pres = PcPresentation::new(&f.name, f.p, n);
        for (i, w) in f.power.iter().enumerate() {
            if w.len() != n {
                return Err(PcError::BadFile(format!("power[{i}] has length {}", w.len())));
            }
            pres.set_power(i, w);
        }
        for e in &f.comm {
            if e.j == 0 || e.i == 0 || e.j > n || e.i >= e.j {
                return Err(PcError::BadFile(format!("bad commutator indices j={} i={}", e.j, e.i)));
            }
            if e.w.len() != n {
                return Err(PcError::BadFile(format!("comm ({},{}) word has length {}", e.j, e.i, e.w.len())));
            }
            pres.set_comm(e.j - 1, e.i - 1, &e.w);
        }
        Ok(pres)
    }

    /// Check all constraints and build the multiplication machinery.
    pub fn validate(self) -> Result<PcGroup, PcError> {
        build_group(self)
    }
}

#[derive(Serialize, Deserialize)]
struct GroupFile {
    name: String,
    p: u32,
    ngens: usize,
    power: Vec<Vec<u8>>,
    #[serde(default)]
    comm: Vec<CommEntry>,
}

#[derive(Serialize, Deserialize)]
struct CommEntry {
    j: usize,
    i: usize,
    w: Vec<u8>,
}

// === validated groups ===

/// A validated group: presentation plus the full multiplication table.
/// Immutable after construction; all queries are pure.
#[derive(Clone, Debug)]
pub struct PcGroup {
    name: String,
    p: u8,
    n: usize,
    size: usize,
    stride: Vec<usize>,
    power: Vec<Vec<u8>>,
    comm: Vec<Vec<Vec<u8>>>,
    table: Vec<El>,
    inv: Vec<El>,
}

fn build_group(pres: PcPresentation) -> Result<PcGroup, PcError> {
    let PcPresentation { name, p, n, power, comm } = pres;
    if !is_supported_prime(p) {
        return Err(PcError::BadPrime(p));
    }
    let mut size: u64 = 1;
    for _ in 0..n {
        size *= p as u64;
        if size > SIZE_CAP as u64 {
            return Err(PcError::SizeCap(size));
        }
    }
    let size = size as usize;
    let pu = p as u8;

    // support and range constraints
    if power.len() != n || comm.len() != n {
        return Err(PcError::BadWord("word table shape does not match ngens".into()));
    }
    let check_word = |w: &[u8], base: usize, what: &str| -> Result<(), PcError> {
        if w.len() != n {
            return Err(PcError::BadWord(format!("{what} has length {}", w.len())));
        }
        for (k, &e) in w.iter().enumerate() {
            if e >= pu {
                return Err(PcError::BadWord(format!("{what} has exponent {e} at position {}", k + 1)));
            }
            if e != 0 && k <= base {
                return Err(PcError::BadWord(format!("{what} has support at position {}", k + 1)));
            }
        }
        Ok(())
    };
    for (i, w) in power.iter().enumerate() {
        check_word(w, i, &format!("power word of g_{}", i + 1))?;
    }
    for (j, row) in comm.iter().enumerate() {
        if row.len() != j {
            return Err(PcError::BadWord(format!("commutator row {} has length {}", j + 1, row.len())));
        }
        for (i, w) in row.iter().enumerate() {
            check_word(w, j, &format!("commutator word [g_{}, g_{}]", j + 1, i + 1))?;
        }
    }

    let mut stride = vec![1usize; n];
    for i in (0..n.saturating_sub(1)).rev() {
        stride[i] = stride[i + 1] * p as usize;
    }
    let digit = |x: usize, k: usize| (x / stride[k]) % p as usize;
    let word_index = |w: &[u8]| -> usize { w.iter().zip(&stride).map(|(&e, &s)| e as usize * s).sum() };
    let widx: Vec<usize> = power.iter().map(|w| word_index(w)).collect();

    // right translation by g_i, built for i = n down to 1: a product x*g_i
    // either increments digit i (merging the power word on overflow, supports
    // disjoint) or peels the largest letter j > i and reenters via the
    // already-built translations for indices above i
    let mut rmul: Vec<Vec<El>> = vec![Vec::new(); n];
    for i in (0..n).rev() {
        let mut tab = vec![0 as El; size];
        for x in 0..size {
            let above = (i + 1..n).rev().find(|&k| digit(x, k) != 0);
            tab[x] = match above {
                None => {
                    let ai = digit(x, i);
                    if ai + 1 < p as usize {
                        (x + stride[i]) as El
                    } else {
                        let prefix = x - ai * stride[i];
                        (prefix + widx[i]) as El
                    }
                }
                Some(j) => {
                    let mut y = tab[x - stride[j]] as usize; // x' * g_i, filled earlier
                    y = rmul[j][y] as usize;
                    for (k, &e) in comm[j][i].iter().enumerate() {
                        for _ in 0..e {
                            y = rmul[k][y] as usize;
                        }
                    }
                    y as El
                }
            };
        }
        rmul[i] = tab;
    }

    // each right translation must permute the element set
    for (i, tab) in rmul.iter().enumerate() {
        let mut seen = vec![false; size];
        for &y in tab {
            if seen[y as usize] {
                return Err(PcError::Inconsistent(stride[i] as El, 0, 0));
            }
            seen[y as usize] = true;
        }
    }

    // full table, one translation lookup per cell: peel the last letter of y
    let mut table = vec![0 as El; size * size];
    for (x, row) in table.chunks_mut(size).enumerate().take(size) {
        row[0] = x as El;
    }
    for y in 1..size {
        let j = (0..n).rev().find(|&k| digit(y, k) != 0).unwrap();
        let yp = y - stride[j];
        for x in 0..size {
            table[x * size + y] = rmul[j][table[x * size + yp] as usize];
        }
    }

    // identity is two-sided neutral
    for y in 0..size {
        if table[y] != y as El {
            return Err(PcError::Inconsistent(0, y as El, 0));
        }
    }

    // relations hold in the table: g_i^p = w_i and g_j g_i = g_i g_j [g_j,g_i]
    let mul = |x: usize, y: usize| table[x * size + y] as usize;
    for i in 0..n {
        let g = stride[i];
        let mut acc = 0usize;
        for _ in 0..p {
            acc = mul(acc, g);
        }
        if acc != widx[i] {
            return Err(PcError::Inconsistent(g as El, g as El, 0));
        }
        for j in i + 1..n {
            let h = stride[j];
            let lhs = mul(h, g);
            let rhs = mul(mul(g, h), word_index(&comm[j][i]));
            if lhs != rhs {
                return Err(PcError::Inconsistent(h as El, g as El, 0));
            }
        }
    }

    // associativity certificate: exhaustive at small orders, seeded sampling
    // above (bijective right translations + associativity + two-sided identity
    // on a finite set certify a group)
    if size <= EXHAUSTIVE_ASSOC {
        for x in 0..size {
            for y in 0..size {
                let xy = mul(x, y);
                for z in 0..size {
                    if mul(xy, z) != mul(x, mul(y, z)) {
                        return Err(PcError::Inconsistent(x as El, y as El, z as El));
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x9c0a_11ec);
        for _ in 0..ASSOC_SAMPLES {
            let x = rng.next_u32() as usize % size;
            let y = rng.next_u32() as usize % size;
            let z = rng.next_u32() as usize % size;
            if mul(mul(x, y), z) != mul(x, mul(y, z)) {
                return Err(PcError::Inconsistent(x as El, y as El, z as El));
            }
        }
    }

    let mut inv = vec![0 as El; size];
    for x in 0..size {
        inv[x] = (0..size).find(|&y| mul(x, y) == 0).unwrap() as El;
    }

    Ok(PcGroup { name, p: pu, n, size, stride, power, comm, table, inv })
}

impl PcGroup {
    #[must_use]
    pub fn name(&self) -> &str {
        &self.name
    }

    #[must_use]
    pub fn p(&self) -> u8 {
        self.p
    }

    /// Generator count n, so |G| = p^n.
    #[must_use]
    pub fn n_gens(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    #[must_use]
    pub fn mul(&self, x: El, y: El) -> El {
        self.table[x as usize * self.size + y as usize]
    }

    #[inline]
    #[must_use]
    pub fn inv(&self, x: El) -> El {
        self.inv[x as usize]
    }

    /// g_i as an element (0-based i).
    #[must_use]
    pub fn generator(&self, i: usize) -> El {
        self.stride[i] as El
    }

    /// Exponent of g_{k+1} in the normal form of x.
    #[inline]
    #[must_use]
    pub fn digit(&self, x: El, k: usize) -> u8 {
        ((x as usize / self.stride[k]) % self.p as usize) as u8
    }

    #[must_use]
    pub fn exps_of(&self, x: El) -> Vec<u8> {
        (0..self.n).map(|k| self.digit(x, k)).collect()
    }

    #[must_use]
    pub fn el_from_exps(&self, exps: &[u8]) -> El {
        exps.iter().zip(&self.stride).map(|(&e, &s)| e as usize * s).sum::<usize>() as El
    }

    /// y⁻¹ x y.
    #[must_use]
    pub fn conj(&self, x: El, y: El) -> El {
        self.mul(self.mul(self.inv(y), x), y)
    }

    /// x⁻¹ y⁻¹ x y.
    #[must_use]
    pub fn comm_el(&self, x: El, y: El) -> El {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    #[must_use]
    pub fn pow(&self, x: El, k: u32) -> El {
        let mut acc: El = 0;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// Order of x; always a power of p.
    #[must_use]
    pub fn order_of(&self, x: El) -> u32 {
        let mut cur = x;
        let mut ord = 1u32;
        while cur != 0 {
            cur = self.pow(cur, self.p as u32);
            ord *= self.p as u32;
        }
        ord
    }

    /// Orders of all p^n elements, indexed by element.
    #[must_use]
    pub fn element_orders(&self) -> Vec<u32> {
        (0..self.size).map(|x| self.order_of(x as El)).collect()
    }

    /// Largest element order.
    #[must_use]
    pub fn exponent(&self) -> u32 {
        self.element_orders().into_iter().max().unwrap_or(1)
    }

    #[must_use]
    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|j| (0..j).all(|i| self.comm[j][i].iter().all(|&e| e == 0)))
    }

    /// Normal-form display, `1` for the identity, `g1*g2^2` style otherwise.
    #[must_use]
    pub fn format_element(&self, x: El) -> String {
        if x == 0 {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for k in 0..self.n {
            let e = self.digit(x, k);
            match e {
                0 => {}
                1 => parts.push(format!("g{}", k + 1)),
                _ => parts.push(format!("g{}^{}", k + 1, e)),
            }
        }
        parts.join("*")
    }

    /// Emit the group file format (canonical: commutators sorted by (j, i),
    /// trivial ones omitted).
    #[must_use]
    pub fn to_file_json(&self) -> String {
        let mut comm = Vec::new();
        for j in 0..self.n {
            for i in 0..j {
                if self.comm[j][i].iter().any(|&e| e != 0) {
                    comm.push(CommEntry { j: j + 1, i: i + 1, w: self.comm[j][i].clone() });
                }
            }
        }
        let f = GroupFile {
            name: self.name.clone(),
            p: self.p as u32,
            ngens: self.n,
            power: self.power.clone(),
            comm,
        };
        let mut s = serde_json::to_string_pretty(&f).unwrap();
        s.push('\n');
        s
    }

    /// The presentation this group was validated from.
    #[must_use]
    pub fn presentation(&self) -> PcPresentation {
        PcPresentation {
            name: self.name.clone(),
            p: self.p as u32,
            n: self.n,
            power: self.power.clone(),
            comm: self.comm.clone(),
        }
    }

    pub(crate) fn power_word(&self, i: usize) -> &[u8] {
        &self.power[i]
    }

    pub(crate) fn comm_word(&self, j: usize, i: usize) -> &[u8] {
        &self.comm[j][i]
    }

    // === subgroups ===

    /// Smallest subgroup containing `gens`: right-translation closure.
    #[must_use]
    pub fn subgroup_generated(&self, gens: &[El]) -> Subgroup {
        let mut member = vec![false; self.size];
        member[0] = true;
        let mut work: Vec<El> = vec![0];
        let mut gset: Vec<El> = Vec::new();
        for &g in gens {
            if g != 0 && !gset.contains(&g) {
                gset.push(g);
            }
        }
        while let Some(x) = work.pop() {
            for &g in &gset {
                let y = self.mul(x, g);
                if !member[y as usize] {
                    member[y as usize] = true;
                    work.push(y);
                }
            }
        }
        let elems: Vec<El> = (0..self.size as El).filter(|&x| member[x as usize]).collect();
        Subgroup { elems, gens: gset }
    }

    #[must_use]
    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elems: vec![0], gens: vec![] }
    }

    #[must_use]
    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup {
            elems: (0..self.size as El).collect(),
            gens: (0..self.n).map(|i| self.generator(i)).collect(),
        }
    }

    /// Ω_r: subgroup generated by all elements of order at most p^r.
    #[must_use]
    pub fn omega(&self, r: u32) -> Subgroup {
        let bound = (self.p as u64).pow(r);
        let gens: Vec<El> =
            (1..self.size as El).filter(|&x| u64::from(self.order_of(x)) <= bound).collect();
        self.subgroup_generated(&gens)
    }

    /// G^{p^r}: subgroup generated by all p^r-th powers.
    #[must_use]
    pub fn agemo(&self, r: u32) -> Subgroup {
        self.agemo_of(&self.full_subgroup(), r)
    }

    /// Subgroup generated by the p^r-th powers of the elements of `h`.
    #[must_use]
    pub fn agemo_of(&self, h: &Subgroup, r: u32) -> Subgroup {
        let q = (self.p as u32).pow(r);
        let gens: Vec<El> = h.elems.iter().map(|&x| self.pow(x, q)).filter(|&y| y != 0).collect();
        self.subgroup_generated(&gens)
    }

    /// Elements commuting with everything.
    #[must_use]
    pub fn center(&self) -> Subgroup {
        let gens: Vec<El> = (0..self.n).map(|i| self.generator(i)).collect();
        let elems: Vec<El> = (0..self.size as El)
            .filter(|&x| gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
            .collect();
        Subgroup { gens: elems.iter().copied().filter(|&x| x != 0).collect(), elems }
    }

    /// [A, B]: subgroup generated by all commutators between the two sets.
    #[must_use]
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = Vec::new();
        for &x in &a.elems {
            for &y in &b.elems {
                let c = self.comm_el(x, y);
                if c != 0 {
                    gens.push(c);
                }
            }
        }
        self.subgroup_generated(&gens)
    }

    /// [G, G].
    #[must_use]
    pub fn derived(&self) -> Subgroup {
        let full = self.full_subgroup();
        self.commutator_subgroup(&full, &full)
    }

    /// Φ = [G, G] G^p.
    #[must_use]
    pub fn frattini(&self) -> Subgroup {
        let mut gens = self.derived().gens;
        for x in 1..self.size as El {
            let y = self.pow(x, self.p as u32);
            if y != 0 {
                gens.push(y);
            }
        }
        self.subgroup_generated(&gens)
    }

    /// γ_1 = G, γ_{i+1} = [γ_i, G]; returned down to and including the first
    /// trivial term, so the nilpotency class is the length minus one.
    #[must_use]
    pub fn lower_central(&self) -> Vec<Subgroup> {
        let full = self.full_subgroup();
        let mut series = vec![full.clone()];
        loop {
            let last = series.last().unwrap();
            if last.order() == 1 {
                break;
            }
            let next = self.commutator_subgroup(last, &full);
            series.push(next);
        }
        series
    }

    /// Nilpotency class: length of the strictly descending lower central
    /// series (0 only for the trivial group).
    #[must_use]
    pub fn class(&self) -> usize {
        self.lower_central().len() - 1
    }

    /// Minimal generator count d = log_p |G/Φ(G)|.
    #[must_use]
    pub fn d_gens(&self) -> usize {
        let phi = self.frattini().order();
        log_p(self.size / phi, self.p as usize)
    }

    /// {x : x h x⁻¹ = h as a set}, for h a subgroup.
    #[must_use]
    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let elems: Vec<El> = (0..self.size as El)
            .filter(|&x| h.gens.iter().all(|&g| h.contains(self.conj(g, x))))
            .collect();
        Subgroup { gens: elems.iter().copied().filter(|&x| x != 0).collect(), elems }
    }

    /// {x : x commutes with every element of h}.
    #[must_use]
    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        let elems: Vec<El> = (0..self.size as El)
            .filter(|&x| h.gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
            .collect();
        Subgroup { gens: elems.iter().copied().filter(|&x| x != 0).collect(), elems }
    }

    #[must_use]
    pub fn is_normal(&self, h: &Subgroup) -> bool {
        (0..self.size as El).all(|x| h.gens.iter().all(|&g| h.contains(self.conj(g, x))))
    }

    /// [G,G] ⊆ G^p for odd p, [G,G] ⊆ G⁴ for p = 2.
    #[must_use]
    pub fn is_powerful(&self) -> bool {
        let target = self.agemo(if self.p == 2 { 2 } else { 1 });
        self.derived().elems.iter().all(|&x| target.contains(x))
    }

    /// Every element of order ≤ p is central: Ω_1(G) ⊆ Z(G).
    #[must_use]
    pub fn is_p_central(&self) -> bool {
        let z = self.center();
        self.omega(1).elems.iter().all(|&x| z.contains(x))
    }

    /// Derived subgroup, Frattini subgroup, center, and lower central series
    /// in one bundle.
    #[must_use]
    pub fn standard_series(&self) -> StandardSeries {
        StandardSeries {
            derived: self.derived(),
            frattini: self.frattini(),
            center: self.center(),
            lower_central: self.lower_central(),
        }
    }
}

/// The series bundle: [G,G], Φ(G), Z(G), and γ_1 ⊇ γ_2 ⊇ … ⊇ 1.
#[derive(Clone, Debug)]
pub struct StandardSeries {
    pub derived: Subgroup,
    pub frattini: Subgroup,
    pub center: Subgroup,
    pub lower_central: Vec<Subgroup>,
}

/// Subgroup of a fixed parent group: sorted element list plus a generating
/// list. Closed under product and inverse by construction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subgroup {
    pub elems: Vec<El>,
    pub gens: Vec<El>,
}

impl Subgroup {
    #[must_use]
    pub fn order(&self) -> usize {
        self.elems.len()
    }

    #[must_use]
    pub fn contains(&self, x: El) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    /// log_p of the order.
    #[must_use]
    pub fn log_order(&self, p: u8) -> usize {
        log_p(self.elems.len(), p as usize)
    }
}

pub(crate) fn log_p(mut m: usize, p: usize) -> usize {
    let mut k = 0;
    while m > 1 {
        debug_assert_eq!(m % p, 0);
        m /= p;
        k += 1;
    }
    k
}

// === tests ===

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn c4() -> PcGroup {
        let mut pres = PcPresentation::new("C4", 2, 2);
        pres.set_power(0, &[0, 1]);
        pres.validate().unwrap()
    }

    pub(crate) fn d8() -> PcGroup {
        let mut pres = PcPresentation::new("D8", 2, 3);
        pres.set_power(1, &[0, 0, 1]);
        pres.set_comm(1, 0, &[0, 0, 1]);
        pres.validate().unwrap()
    }

    pub(crate) fn q8() -> PcGroup {
        let mut pres = PcPresentation::new("Q8", 2, 3);
        pres.set_power(0, &[0, 0, 1]);
        pres.set_power(1, &[0, 0, 1]);
        pres.set_comm(1, 0, &[0, 0, 1]);
        pres.validate().unwrap()
    }

    #[test]
    fn c4_is_valid_of_order_4() {
        let g = c4();
        assert_eq!(g.size(), 4);
        let orders = g.element_orders();
        // index 0 = 1, 1 = g2, 2 = g1, 3 = g1*g2
        assert_eq!(orders, vec![1, 2, 4, 4]);
    }

    #[test]
    fn d8_collection_steps() {
        let g = d8();
        assert_eq!(g.size(), 8);
        let g1 = g.generator(0);
        let g2 = g.generator(1);
        let g3 = g.generator(2);
        // power relation g2*g2 = g3
        assert_eq!(g.mul(g2, g2), g3);
        // one collection step: g2*g1 = g1*g2*g3
        let rhs = g.mul(g.mul(g1, g2), g3);
        assert_eq!(g.mul(g2, g1), rhs);
        assert_eq!(g.format_element(rhs), "g1*g2*g3");
    }

    #[test]
    fn d8_element_order_counts() {
        let g = d8();
        let orders = g.element_orders();
        assert_eq!(orders.iter().filter(|&&o| o == 1).count(), 1);
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 5);
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 2);
    }

    #[test]
    fn q8_has_one_involution() {
        let g = q8();
        let orders = g.element_orders();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 1);
        assert_eq!(g.omega(1).order(), 2);
        let z = g.center();
        assert_eq!(z.order(), 2);
        let s = g.standard_series();
        assert_eq!(s.derived.elems, z.elems);
        assert_eq!(s.frattini.elems, z.elems);
    }

    #[test]
    fn support_violation_rejected() {
        let mut pres = PcPresentation::new("bad", 2, 2);
        pres.set_comm(1, 0, &[0, 1]); // [g2,g1] = g2 sits at position 2, not above
        assert!(matches!(pres.validate(), Err(PcError::BadWord(_))));
    }

    #[test]
    fn identity_is_two_sided_neutral() {
        let g = d8();
        for x in 0..g.size() as El {
            assert_eq!(g.mul(0, x), x);
            assert_eq!(g.mul(x, 0), x);
            assert_eq!(g.mul(x, g.inv(x)), 0);
            assert_eq!(g.mul(g.inv(x), x), 0);
        }
    }

    #[test]
    fn omega_and_agemo_examples() {
        let c4 = c4();
        assert_eq!(c4.omega(1).order(), 2);

        let mut pres = PcPresentation::new("C8", 2, 3);
        pres.set_power(0, &[0, 1, 0]);
        pres.set_power(1, &[0, 0, 1]);
        let c8 = pres.validate().unwrap();
        let sq = c8.agemo(1);
        assert_eq!(sq.order(), 4);
        assert_eq!(c8.subgroup_as_group(&sq).group.exponent(), 4); // C8² is C4

        let d8 = d8();
        assert_eq!(d8.omega(1).order(), 8);
        let sq = d8.agemo(1);
        assert_eq!(sq.order(), 2);
        assert!(sq.contains(d8.generator(2)));

        let e8 = PcPresentation::new("E8", 2, 3).validate().unwrap();
        assert_eq!(e8.agemo(1).order(), 1);
    }

    #[test]
    fn powerful_and_p_central_examples() {
        assert!(c4().is_powerful());
        assert!(!d8().is_powerful());
        assert!(!q8().is_powerful());
        assert!(crate::corpus::modular(2, 4).unwrap().group.is_powerful());
        assert!(crate::corpus::elem_ab(3, 2).unwrap().group.is_powerful());
        assert!(!crate::corpus::extraspecial(3, false).unwrap().group.is_powerful());
        assert!(crate::corpus::extraspecial(3, true).unwrap().group.is_powerful());

        assert!(c4().is_p_central());
        assert!(q8().is_p_central());
        assert!(!d8().is_p_central());
        assert!(!crate::corpus::modular(2, 4).unwrap().group.is_p_central());
        assert!(!crate::corpus::extraspecial(3, true).unwrap().group.is_p_central());
    }

    #[test]
    fn d8_series() {
        let g = d8();
        let s = g.standard_series();
        assert_eq!(s.derived.order(), 2);
        assert!(s.derived.contains(g.generator(2)));
        let lc: Vec<usize> = s.lower_central.iter().map(Subgroup::order).collect();
        assert_eq!(lc, vec![8, 2, 1]);
        assert_eq!(g.class(), 2);
    }

    #[test]
    fn abelian_series_shapes() {
        let g = c4();
        let s = g.standard_series();
        assert_eq!(s.derived.order(), 1);
        assert_eq!(s.frattini.order(), 2); // G^p for abelian G
        let lc: Vec<usize> = s.lower_central.iter().map(Subgroup::order).collect();
        assert_eq!(lc, vec![4, 1]);
    }

    #[test]
    fn subgroup_generated_examples() {
        let g = d8();
        assert_eq!(g.subgroup_generated(&[]).order(), 1);
        let g1 = g.generator(0);
        let g1g2 = g.mul(g1, g.generator(1));
        assert_eq!(g.subgroup_generated(&[g1, g1g2]).order(), 8);
        let c4 = c4();
        assert_eq!(c4.subgroup_generated(&[c4.generator(1)]).order(), 2);
    }

    #[test]
    fn json_roundtrip() {
        let g = d8();
        let s = g.to_file_json();
        let pres = PcPresentation::from_json_str(&s).unwrap();
        let h = pres.validate().unwrap();
        assert_eq!(h.size(), 8);
        for x in 0..8 as El {
            for y in 0..8 as El {
                assert_eq!(g.mul(x, y), h.mul(x, y));
            }
        }
    }

    #[test]
    fn group_file_rejects_bad_indices() {
        let s = r#"{"name":"x","p":2,"ngens":2,"power":[[0,0],[0,0]],"comm":[{"j":1,"i":1,"w":[0,0]}]}"#;
        assert!(PcPresentation::from_json_str(s).is_err());
    }

    #[test]
    fn element_roundtrip_and_inverse() {
        let g = q8();
        for x in 0..g.size() as El {
            assert_eq!(g.el_from_exps(&g.exps_of(x)), x);
            assert_eq!(g.mul(g.inv(x), x), 0);
        }
    }
}
