//! Normalized bar-complex cochains in degrees ≤ 3: explicit cocycle tables,
//! coboundaries, and dimension counts that cross-check the resolution model.
//!
//! Ops: hom_basis (degree 1), h2_bar_basis (degree 2, with a cocycle table
//! for every H² class), low_degree_dims (dims of H^0..H^3).
//!
//! A normalized cochain vanishes whenever any argument is the identity.
//! Cocycle kernels are computed by rewriting one value per coboundary
//! identity: the non-identity elements are listed greedily so that most
//! values reduce to strictly earlier ones, leaving free parameters only on
//! a handful of "free list" elements. The residual conditions are then
//! rank-reduced through a seeded sparse compression whose kernel is
//! certified exactly against every condition; a failed certification
//! rotates the seed, and after three failures a full streaming elimination
//! runs. Certified output is exact and identical for every seed.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CohomError;
use crate::ffmat::{Echelon, FpVec};
use crate::pcgroup::{El, PcGroup};

/// Order cap for the degree-2 machinery (tables are |G|²-sized).
pub const H2_ORDER_CAP: usize = 128;
/// Order cap for the degree-3 dimension oracle.
pub const BAR3_ORDER_CAP: usize = 40;
/// Default compression seed; every certified result is seed-independent.
pub const BASE_SEED: u64 = 0x5eed_c0de_1357_9bdf;
/// Accumulator rows a condition row is scattered into.
const SCATTER: usize = 12;
/// Accumulator rows beyond the variable count.
const PAD: usize = 64;
/// Seed rotations before falling back to full elimination.
const RETRIES: u64 = 3;

// === greedy element layering ===

/// Listing of G∖1. Element k is "good" with partner l when l is listed
/// earlier and k·l is the identity or listed earlier; a cochain value with
/// last argument k then rewrites to values with strictly earlier last
/// arguments. When no unlisted element qualifies, the listed set is closed
/// under products and inverses, hence a proper subgroup; the first pc
/// generator outside it joins as a "free" element. Free parameters of the
/// rewriting live on free last arguments only.
struct Layers {
    order: Vec<El>,
    partner: Vec<El>,
    free: Vec<El>,
    free_index: Vec<usize>,
}

fn layers(g: &PcGroup) -> Layers {
    let size = g.size();
    let mut partner = vec![0 as El; size];
    let mut order = Vec::with_capacity(size.saturating_sub(1));
    let mut free = Vec::new();
    let mut free_index = vec![usize::MAX; size];
    let mut listed = vec![false; size];
    listed[0] = true;
    while order.len() + 1 < size {
        let mut pick: Option<(El, El)> = None;
        'scan: for k in 1..size as El {
            if listed[k as usize] {
                continue;
            }
            for &l in &order {
                if listed[g.mul(k, l) as usize] {
                    pick = Some((k, l));
                    break 'scan;
                }
            }
        }
        let k = match pick {
            Some((k, l)) => {
                partner[k as usize] = l;
                k
            }
            None => {
                let k = (0..g.n_gens())
                    .map(|i| g.generator(i))
                    .find(|&x| !listed[x as usize])
                    .expect("stalled listing misses a generator");
                free_index[k as usize] = free.len();
                free.push(k);
                k
            }
        };
        listed[k as usize] = true;
        order.push(k);
    }
    Layers { order, partner, free, free_index }
}

// === cochain tables ===

/// Full |G|×|G| value table of a normalized 2-cochain: identity rows and
/// columns are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    pub size: usize,
    pub table: Vec<u8>,
}

impl Cocycle2 {
    #[must_use]
    pub fn zero(size: usize) -> Self {
        Cocycle2 { size, table: vec![0; size * size] }
    }

    #[must_use]
    pub fn value(&self, x: El, y: El) -> u8 {
        self.table[x as usize * self.size + y as usize]
    }

    /// δf(x,y,z) = f(y,z) − f(xy,z) + f(x,yz) − f(x,y) mod p.
    #[must_use]
    pub fn coboundary(&self, g: &PcGroup, x: El, y: El, z: El) -> u8 {
        let p = g.p() as i32;
        let v = self.value(y, z) as i32 - self.value(g.mul(x, y), z) as i32
            + self.value(x, g.mul(y, z)) as i32
            - self.value(x, y) as i32;
        v.rem_euclid(p) as u8
    }

    /// Exhaustive check of the cocycle identity over all triples.
    #[must_use]
    pub fn is_cocycle(&self, g: &PcGroup) -> bool {
        let size = g.size() as El;
        for x in 1..size {
            for y in 1..size {
                for z in 1..size {
                    if self.coboundary(g, x, y, z) != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Degree ≤ 2 bar data: hom basis, Z² and B² dimensions, and one cocycle
/// table per H² basis class.
#[derive(Clone, Debug)]
pub struct H2Presentation {
    pub h1_basis: Vec<Vec<u8>>,
    pub z2_dim: usize,
    pub b2_dim: usize,
    pub h2_reps: Vec<Cocycle2>,
}

impl H2Presentation {
    #[must_use]
    pub fn h1_dim(&self) -> usize {
        self.h1_basis.len()
    }

    #[must_use]
    pub fn h2_dim(&self) -> usize {
        self.z2_dim - self.b2_dim
    }
}

// === degree 1 ===

/// Basis of Hom(G, F_p) as element-value tables. Generator values are
/// constrained by every defining relation word; values extend over
/// normal-form exponents.
#[must_use]
pub fn hom_basis(g: &PcGroup) -> Vec<Vec<u8>> {
    let p = g.p();
    let n = g.n_gens();
    let mut ech = Echelon::new(p, n);
    for i in 0..n {
        ech.insert(FpVec::from_entries(p, g.power_word(i)));
    }
    for j in 1..n {
        for i in 0..j {
            ech.insert(FpVec::from_entries(p, g.comm_word(j, i)));
        }
    }
    ech.kernel_basis()
        .iter()
        .map(|v| {
            let vals = v.to_entries();
            (0..g.size() as El)
                .map(|x| {
                    let exps = g.exps_of(x);
                    let s: u32 = exps.iter().zip(&vals).map(|(&e, &c)| e as u32 * c as u32).sum();
                    (s % p as u32) as u8
                })
                .collect()
        })
        .collect()
}

// === packing helpers ===

#[inline]
fn pidx(m: usize, x: El, y: El) -> usize {
    (x as usize - 1) * m + (y as usize - 1)
}

#[inline]
fn tidx(m: usize, x: El, y: El, z: El) -> usize {
    ((x as usize - 1) * m + (y as usize - 1)) * m + (z as usize - 1)
}

/// Packed pair-column vector of a full table, identity entries skipped.
pub(crate) fn pack2(g: &PcGroup, f: &Cocycle2) -> FpVec {
    let size = g.size();
    let m = size - 1;
    let mut v = FpVec::zero(g.p(), m * m);
    for x in 1..size as El {
        for y in 1..size as El {
            let c = f.value(x, y);
            if c != 0 {
                v.set(pidx(m, x, y), c);
            }
        }
    }
    v
}

/// Packed coboundary rows δe_c(x,y) = e_c(y) − e_c(xy) + e_c(x), one per
/// non-identity c; they span B².
pub(crate) fn coboundary_rows(g: &PcGroup) -> Vec<FpVec> {
    let p = g.p() as i32;
    let size = g.size();
    let m = size - 1;
    (1..size as El)
        .map(|c| {
            let mut v = FpVec::zero(g.p(), m * m);
            for x in 1..size as El {
                for y in 1..size as El {
                    let mut val = 0i32;
                    if y == c {
                        val += 1;
                    }
                    if g.mul(x, y) == c {
                        val -= 1;
                    }
                    if x == c {
                        val += 1;
                    }
                    let val = val.rem_euclid(p) as u8;
                    if val != 0 {
                        v.set(pidx(m, x, y), val);
                    }
                }
            }
            v
        })
        .collect()
}

// === seeded compression core ===

fn fnv1a(s: &str) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn mix_seed(base: u64, tag: u64) -> u64 {
    let mut z = base ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Scatter one condition row into the accumulator at seeded positions.
#[inline]
fn scatter(acc: &mut [FpVec], rng: &mut ChaCha8Rng, p: u8, v: &FpVec) {
    let rows = acc.len() as u64;
    for _ in 0..SCATTER {
        let r = (rng.next_u64() % rows) as usize;
        let c = if p == 2 { 1 } else { 1 + (rng.next_u64() % (p as u64 - 1)) as u8 };
        acc[r].axpy(c, v);
    }
}

/// Per-row packing of the candidate kernel: result[r] holds, for each
/// candidate j, the value of row r under candidate j.
fn packed_rows(p: u8, reduce: &[FpVec], cand: &[FpVec]) -> Vec<FpVec> {
    let z = cand.len();
    let w = if let Some(first) = reduce.first() { first.len() } else { 0 };
    let mut kp: Vec<FpVec> = vec![FpVec::zero(p, z); w];
    for (j, k) in cand.iter().enumerate() {
        let mut from = 0;
        while let Some((c, a)) = k.leading(from) {
            kp[c].set(j, a);
            from = c + 1;
        }
    }
    reduce
        .iter()
        .map(|row| {
            let mut t = FpVec::zero(p, z);
            let mut from = 0;
            while let Some((c, a)) = row.leading(from) {
                t.axpy(a, &kp[c]);
                from = c + 1;
            }
            t
        })
        .collect()
}

// === degree 2 ===

/// Rewriting table: row (x,y) expresses f(x,y) in the free parameters
/// (x, free element). Unit-triangular in the listing, so filling in listing
/// order of y terminates.
fn build_reduce2(g: &PcGroup, lay: &Layers) -> Vec<FpVec> {
    let p = g.p();
    let size = g.size();
    let m = size - 1;
    let w2 = lay.free.len() * m;
    let mut reduce: Vec<FpVec> = vec![FpVec::zero(p, w2); m * m];
    for &h in &lay.order {
        let fi = lay.free_index[h as usize];
        if fi != usize::MAX {
            for x in 1..size as El {
                let mut v = FpVec::zero(p, w2);
                v.set(fi * m + (x as usize - 1), 1);
                reduce[pidx(m, x, h)] = v;
            }
        } else {
            // f(x,h) = f(h,l) − f(xh,l) + f(x,hl) with l the partner of h
            let l = lay.partner[h as usize];
            let hl = g.mul(h, l);
            let base = reduce[pidx(m, h, l)].clone();
            for x in 1..size as El {
                let mut v = base.clone();
                let xh = g.mul(x, h);
                if xh != 0 {
                    v.axpy(p - 1, &reduce[pidx(m, xh, l)]);
                }
                if hl != 0 {
                    v.axpy(1, &reduce[pidx(m, x, hl)]);
                }
                reduce[pidx(m, x, h)] = v;
            }
        }
    }
    reduce
}

/// Residual of the cocycle identity on one triple, in free parameters:
/// δf(x,y,z) = f(y,z) − f(xy,z) + f(x,yz) − f(x,y).
#[inline]
fn residual2(g: &PcGroup, reduce: &[FpVec], m: usize, x: El, y: El, z: El, out: &mut FpVec) {
    let p = g.p();
    out.copy_from(&reduce[pidx(m, y, z)]);
    let xy = g.mul(x, y);
    if xy != 0 {
        out.axpy(p - 1, &reduce[pidx(m, xy, z)]);
    }
    let yz = g.mul(y, z);
    if yz != 0 {
        out.axpy(1, &reduce[pidx(m, x, yz)]);
    }
    out.axpy(p - 1, &reduce[pidx(m, x, y)]);
}

/// One compression attempt: candidate kernel of the residual system, or
/// None when a candidate fails the exhaustive certification.
fn z2_attempt(
    g: &PcGroup,
    lay: &Layers,
    reduce: &[FpVec],
    seed: u64,
) -> Option<(Vec<FpVec>, Vec<FpVec>)> {
    let p = g.p();
    let size = g.size();
    let m = size.saturating_sub(1);
    let w2 = lay.free.len() * m;
    let mut acc: Vec<FpVec> = vec![FpVec::zero(p, w2); w2 + PAD];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = FpVec::zero(p, w2);
    for x in 1..size as El {
        for y in 1..size as El {
            let chosen = lay.partner[y as usize];
            for z in 1..size as El {
                if z == chosen {
                    continue; // rewriting triple, residual is zero by construction
                }
                residual2(g, reduce, m, x, y, z, &mut v);
                if !v.is_zero() {
                    scatter(&mut acc, &mut rng, p, &v);
                }
            }
        }
    }
    let mut ech = Echelon::new(p, w2);
    for row in acc {
        ech.insert(row);
    }
    let cand = ech.kernel_basis();
    let rows = packed_rows(p, reduce, &cand);
    if certify2(g, lay, &rows, m) {
        Some((cand, rows))
    } else {
        None
    }
}

/// δ must vanish on every non-rewriting triple for every candidate at once.
fn certify2(g: &PcGroup, lay: &Layers, rows: &[FpVec], m: usize) -> bool {
    let p = g.p();
    let size = g.size();
    if m == 0 {
        return true;
    }
    let zlen = rows[0].len();
    let mut v = FpVec::zero(p, zlen);
    for x in 1..size as El {
        for y in 1..size as El {
            let chosen = lay.partner[y as usize];
            for z in 1..size as El {
                if z == chosen {
                    continue;
                }
                v.copy_from(&rows[pidx(m, y, z)]);
                let xy = g.mul(x, y);
                if xy != 0 {
                    v.axpy(p - 1, &rows[pidx(m, xy, z)]);
                }
                let yz = g.mul(y, z);
                if yz != 0 {
                    v.axpy(1, &rows[pidx(m, x, yz)]);
                }
                v.axpy(p - 1, &rows[pidx(m, x, y)]);
                if !v.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Exact fallback: stream every residual row into one echelon.
fn z2_exact(g: &PcGroup, lay: &Layers, reduce: &[FpVec]) -> Vec<FpVec> {
    let p = g.p();
    let size = g.size();
    let m = size.saturating_sub(1);
    let w2 = lay.free.len() * m;
    let mut ech = Echelon::new(p, w2);
    let mut v = FpVec::zero(p, w2);
    for x in 1..size as El {
        for y in 1..size as El {
            let chosen = lay.partner[y as usize];
            for z in 1..size as El {
                if z == chosen {
                    continue;
                }
                residual2(g, reduce, m, x, y, z, &mut v);
                if !v.is_zero() {
                    ech.insert(v.clone());
                }
            }
        }
    }
    ech.kernel_basis()
}

/// Z² parameter kernel plus per-pair packed values, certified exact.
fn z2_params(g: &PcGroup, lay: &Layers, reduce: &[FpVec], seed: u64) -> (Vec<FpVec>, Vec<FpVec>) {
    let h = fnv1a(g.name());
    for attempt in 0..RETRIES {
        let s = mix_seed(seed ^ h, 2 * RETRIES + attempt);
        if let Some(out) = z2_attempt(g, lay, reduce, s) {
            return out;
        }
    }
    let cand = z2_exact(g, lay, reduce);
    let rows = packed_rows(g.p(), reduce, &cand);
    (cand, rows)
}

/// Degree ≤ 2 cohomology of a group of order ≤ H2_ORDER_CAP: hom basis,
/// dim Z², dim B², and a certified cocycle table for each H² basis class.
pub fn h2_bar_basis(g: &PcGroup) -> Result<H2Presentation, CohomError> {
    h2_bar_basis_seeded(g, BASE_SEED)
}

pub fn h2_bar_basis_seeded(g: &PcGroup, seed: u64) -> Result<H2Presentation, CohomError> {
    let size = g.size();
    if size > H2_ORDER_CAP {
        return Err(CohomError::OrderCap { order: size, cap: H2_ORDER_CAP });
    }
    let p = g.p();
    let m = size - 1;
    let lay = layers(g);
    let reduce = build_reduce2(g, &lay);
    let (params, rows) = z2_params(g, &lay, &reduce, seed);
    let z2_dim = params.len();
    let mut ech = Echelon::new(p, m * m);
    for row in coboundary_rows(g) {
        ech.insert(row);
    }
    let b2_dim = ech.rank();
    let mut h2_reps = Vec::new();
    for j in 0..z2_dim {
        let mut packed = FpVec::zero(p, m * m);
        let mut table = Cocycle2::zero(size);
        for x in 1..size as El {
            for y in 1..size as El {
                let c = rows[pidx(m, x, y)].get(j);
                if c != 0 {
                    packed.set(pidx(m, x, y), c);
                    table.table[x as usize * size + y as usize] = c;
                }
            }
        }
        if ech.insert(packed) {
            h2_reps.push(table);
        }
    }
    debug_assert_eq!(h2_reps.len(), z2_dim - b2_dim);
    Ok(H2Presentation { h1_basis: hom_basis(g), z2_dim, b2_dim, h2_reps })
}

// === degree 3 ===

/// Rewriting table one degree up: row (x,y,z) expresses f(x,y,z) in the
/// free parameters (x, y, free element).
fn build_reduce3(g: &PcGroup, lay: &Layers) -> Vec<FpVec> {
    let p = g.p();
    let size = g.size();
    let m = size - 1;
    let w3 = lay.free.len() * m * m;
    let mut reduce: Vec<FpVec> = vec![FpVec::zero(p, w3); m * m * m];
    for &k in &lay.order {
        let fi = lay.free_index[k as usize];
        if fi != usize::MAX {
            for x in 1..size as El {
                for y in 1..size as El {
                    let mut v = FpVec::zero(p, w3);
                    v.set((fi * m + (x as usize - 1)) * m + (y as usize - 1), 1);
                    reduce[tidx(m, x, y, k)] = v;
                }
            }
        } else {
            // f(x,y,k) = −f(y,k,l) + f(xy,k,l) − f(x,yk,l) + f(x,y,kl)
            let l = lay.partner[k as usize];
            let kl = g.mul(k, l);
            for x in 1..size as El {
                for y in 1..size as El {
                    let mut v = FpVec::zero(p, w3);
                    v.axpy(p - 1, &reduce[tidx(m, y, k, l)]);
                    let xy = g.mul(x, y);
                    if xy != 0 {
                        v.axpy(1, &reduce[tidx(m, xy, k, l)]);
                    }
                    let yk = g.mul(y, k);
                    if yk != 0 {
                        v.axpy(p - 1, &reduce[tidx(m, x, yk, l)]);
                    }
                    if kl != 0 {
                        v.axpy(1, &reduce[tidx(m, x, y, kl)]);
                    }
                    reduce[tidx(m, x, y, k)] = v;
                }
            }
        }
    }
    reduce
}

/// δf(x,y,z,t) = f(y,z,t) − f(xy,z,t) + f(x,yz,t) − f(x,y,zt) + f(x,y,z).
#[inline]
fn residual3(g: &PcGroup, reduce: &[FpVec], m: usize, x: El, y: El, z: El, t: El, out: &mut FpVec) {
    let p = g.p();
    out.copy_from(&reduce[tidx(m, y, z, t)]);
    let xy = g.mul(x, y);
    if xy != 0 {
        out.axpy(p - 1, &reduce[tidx(m, xy, z, t)]);
    }
    let yz = g.mul(y, z);
    if yz != 0 {
        out.axpy(1, &reduce[tidx(m, x, yz, t)]);
    }
    let zt = g.mul(z, t);
    if zt != 0 {
        out.axpy(p - 1, &reduce[tidx(m, x, y, zt)]);
    }
    out.axpy(1, &reduce[tidx(m, x, y, z)]);
}

fn z3_attempt(g: &PcGroup, lay: &Layers, reduce: &[FpVec], seed: u64) -> Option<usize> {
    let p = g.p();
    let size = g.size();
    let m = size.saturating_sub(1);
    let w3 = lay.free.len() * m * m;
    let mut acc: Vec<FpVec> = vec![FpVec::zero(p, w3); w3 + PAD];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = FpVec::zero(p, w3);
    for x in 1..size as El {
        for y in 1..size as El {
            for z in 1..size as El {
                let chosen = lay.partner[z as usize];
                for t in 1..size as El {
                    if t == chosen {
                        continue;
                    }
                    residual3(g, reduce, m, x, y, z, t, &mut v);
                    if !v.is_zero() {
                        scatter(&mut acc, &mut rng, p, &v);
                    }
                }
            }
        }
    }
    let mut ech = Echelon::new(p, w3);
    for row in acc {
        ech.insert(row);
    }
    let cand = ech.kernel_basis();
    let rows = packed_rows(p, reduce, &cand);
    if certify3(g, lay, &rows, m) {
        Some(cand.len())
    } else {
        None
    }
}

fn certify3(g: &PcGroup, lay: &Layers, rows: &[FpVec], m: usize) -> bool {
    let p = g.p();
    let size = g.size();
    if m == 0 {
        return true;
    }
    let zlen = rows[0].len();
    let mut v = FpVec::zero(p, zlen);
    for x in 1..size as El {
        for y in 1..size as El {
            for z in 1..size as El {
                let chosen = lay.partner[z as usize];
                for t in 1..size as El {
                    if t == chosen {
                        continue;
                    }
                    v.copy_from(&rows[tidx(m, y, z, t)]);
                    let xy = g.mul(x, y);
                    if xy != 0 {
                        v.axpy(p - 1, &rows[tidx(m, xy, z, t)]);
                    }
                    let yz = g.mul(y, z);
                    if yz != 0 {
                        v.axpy(1, &rows[tidx(m, x, yz, t)]);
                    }
                    let zt = g.mul(z, t);
                    if zt != 0 {
                        v.axpy(p - 1, &rows[tidx(m, x, y, zt)]);
                    }
                    v.axpy(1, &rows[tidx(m, x, y, z)]);
                    if !v.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn z3_exact(g: &PcGroup, lay: &Layers, reduce: &[FpVec]) -> usize {
    let p = g.p();
    let size = g.size();
    let m = size.saturating_sub(1);
    let w3 = lay.free.len() * m * m;
    let mut ech = Echelon::new(p, w3);
    let mut v = FpVec::zero(p, w3);
    for x in 1..size as El {
        for y in 1..size as El {
            for z in 1..size as El {
                let chosen = lay.partner[z as usize];
                for t in 1..size as El {
                    if t == chosen {
                        continue;
                    }
                    residual3(g, reduce, m, x, y, z, t, &mut v);
                    if !v.is_zero() {
                        ech.insert(v.clone());
                    }
                }
            }
        }
    }
    w3 - ech.rank()
}

fn z3_dim(g: &PcGroup, seed: u64) -> usize {
    let lay = layers(g);
    let reduce = build_reduce3(g, &lay);
    let h = fnv1a(g.name());
    for attempt in 0..RETRIES {
        let s = mix_seed(seed ^ h, 3 * RETRIES + attempt);
        if let Some(z3) = z3_attempt(g, &lay, &reduce, s) {
            return z3;
        }
    }
    z3_exact(g, &lay, &reduce)
}

/// dims of H^0..H^3 from the bar complex, for |G| ≤ BAR3_ORDER_CAP.
/// h³ = dim Z³ − (dim C² − dim Z²) by exactness of the coboundary.
pub fn low_degree_dims(g: &PcGroup) -> Result<[usize; 4], CohomError> {
    let size = g.size();
    if size > BAR3_ORDER_CAP {
        return Err(CohomError::OrderCap { order: size, cap: BAR3_ORDER_CAP });
    }
    let pres = h2_bar_basis(g)?;
    let m = size - 1;
    let z3 = z3_dim(g, BASE_SEED);
    let b3 = m * m - pres.z2_dim;
    Ok([1, pres.h1_dim(), pres.h2_dim(), z3 - b3])
}

// === tests ===

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::minres::minres_dims;
    use crate::corpus;

    fn grp(entry: Result<corpus::CorpusEntry, corpus::CorpusError>) -> PcGroup {
        entry.unwrap().group
    }

    #[test]
    fn layers_list_every_element_once() {
        for g in [grp(corpus::dihedral(8)), grp(corpus::extraspecial(3, false))] {
            let lay = layers(&g);
            let mut seen = vec![false; g.size()];
            for &x in &lay.order {
                assert!(x != 0 && !seen[x as usize]);
                seen[x as usize] = true;
            }
            assert_eq!(lay.order.len(), g.size() - 1);
            assert!(lay.free.len() <= g.n_gens());
            // partner and product of every good element appear earlier
            let pos = |x: El| lay.order.iter().position(|&o| o == x).unwrap();
            for &x in &lay.order {
                if lay.free_index[x as usize] == usize::MAX {
                    let l = lay.partner[x as usize];
                    assert!(pos(l) < pos(x));
                    let xl = g.mul(x, l);
                    assert!(xl == 0 || pos(xl) < pos(x));
                }
            }
        }
    }

    #[test]
    fn hom_basis_is_dual_to_minimal_generators() {
        for (g, d) in [
            (grp(corpus::cyclic(2, 2)), 1),
            (grp(corpus::dihedral(8)), 2),
            (grp(corpus::quaternion(8)), 2),
            (grp(corpus::elem_ab(3, 2)), 2),
        ] {
            let basis = hom_basis(&g);
            assert_eq!(basis.len(), d, "{}", g.name());
            for phi in &basis {
                assert_eq!(phi[0], 0);
                for x in 0..g.size() as El {
                    for y in 0..g.size() as El {
                        let lhs = phi[g.mul(x, y) as usize] as u32;
                        let rhs = (phi[x as usize] as u32 + phi[y as usize] as u32) % g.p() as u32;
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn h2_dims_of_reference_groups() {
        let cases = [
            (grp(corpus::cyclic(2, 1)), 1),
            (grp(corpus::cyclic(2, 2)), 1),
            (grp(corpus::elem_ab(2, 2)), 3),
            (grp(corpus::dihedral(8)), 3),
            (grp(corpus::quaternion(8)), 2),
            (grp(corpus::cyclic(3, 1)), 1),
            (grp(corpus::elem_ab(3, 2)), 3),
        ];
        for (g, want) in cases {
            let pres = h2_bar_basis(&g).unwrap();
            assert_eq!(pres.h2_dim(), want, "{}", g.name());
            assert_eq!(pres.h2_reps.len(), want, "{}", g.name());
        }
    }

    #[test]
    fn h2_reps_are_cocycles_and_independent_mod_coboundaries() {
        for g in [
            grp(corpus::dihedral(8)),
            grp(corpus::quaternion(8)),
            grp(corpus::elem_ab(3, 2)),
            grp(corpus::modular(2, 4)),
        ] {
            let pres = h2_bar_basis(&g).unwrap();
            let mut ech = Echelon::new(g.p(), (g.size() - 1) * (g.size() - 1));
            for row in coboundary_rows(&g) {
                ech.insert(row);
            }
            for rep in &pres.h2_reps {
                assert!(rep.is_cocycle(&g), "{}", g.name());
                assert!(ech.insert(pack2(&g, rep)), "{}", g.name());
            }
        }
    }

    #[test]
    fn low_degree_dims_match_resolution_model() {
        for g in [
            grp(corpus::cyclic(2, 2)),
            grp(corpus::elem_ab(2, 3)),
            grp(corpus::dihedral(8)),
            grp(corpus::quaternion(8)),
            grp(corpus::cyclic(3, 2)),
            grp(corpus::elem_ab(3, 2)),
        ] {
            let bar = low_degree_dims(&g).unwrap();
            let res = minres_dims(&g, 3);
            assert_eq!(bar.to_vec(), res.dims, "{}", g.name());
        }
    }

    #[test]
    fn h2_result_is_seed_independent() {
        let g = grp(corpus::dihedral(16));
        let a = h2_bar_basis_seeded(&g, 1).unwrap();
        let b = h2_bar_basis_seeded(&g, 99).unwrap();
        assert_eq!(a.z2_dim, b.z2_dim);
        assert_eq!(a.b2_dim, b.b2_dim);
        assert_eq!(a.h2_dim(), b.h2_dim());
    }

    #[test]
    fn order_caps_are_enforced() {
        let g = grp(corpus::cyclic(2, 8));
        assert!(matches!(h2_bar_basis(&g), Err(CohomError::OrderCap { .. })));
        let g = grp(corpus::cyclic(2, 6));
        assert!(matches!(low_degree_dims(&g), Err(CohomError::OrderCap { .. })));
    }
}
