//! Built-in constructors for the standard p-group families used as the
//! verification corpus.
//!
//! Families: cyclic, elementary abelian, general abelian, dihedral,
//! semidihedral, generalised quaternion, modular, extraspecial, and direct
//! products. Each constructor emits a polycyclic presentation, runs it
//! through full validation, and records the family's predicted order, d,
//! class and coclass so callers can cross-check them against the computed
//! structure invariants.
//!
//! The two-generator families D, SD, Q, M share one metacyclic layout:
//! g_1 = s, g_{i+1} = r^{p^{i-1}}, with s acting on ⟨r⟩ by r ↦ r^t. The
//! commutator words come out as [g_j, g_1] = r^{(t-1)p^{j-2}}, supported
//! above j because p divides t-1 in every family used here.

use crate::pcgroup::{PcError, PcGroup, PcPresentation};

/// Orders above this are outside the documented corpus range.
pub const CORPUS_ORDER_CAP: u64 = 256;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("unsupported prime {0}")]
    BadPrime(u32),
    #[error(transparent)]
    Group(#[from] PcError),
}

/// Family tag for a corpus entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cyclic,
    ElemAb,
    Abelian,
    Dihedral,
    Semidihedral,
    Quaternion,
    Modular,
    Extraspecial,
    Product,
}

impl Family {
    #[must_use]
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Cyclic => "cyclic",
            Family::ElemAb => "elem_ab",
            Family::Abelian => "abelian",
            Family::Dihedral => "dihedral",
            Family::Semidihedral => "semidihedral",
            Family::Quaternion => "quaternion",
            Family::Modular => "modular",
            Family::Extraspecial => "extraspecial",
            Family::Product => "product",
        }
    }
}

/// What the family formula predicts; None where the family fixes no value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub order: u64,
    pub d: Option<usize>,
    pub class: Option<usize>,
    pub coclass: Option<usize>,
}

/// A corpus group: validated, tagged, and carrying its predictions.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub group: PcGroup,
    pub family: Family,
    pub params: Vec<u32>,
    pub predicted: Prediction,
}

fn order_check(order: u64) -> Result<(), CorpusError> {
    if order > CORPUS_ORDER_CAP {
        return Err(CorpusError::OutOfRange(format!(
            "order {order} exceeds the corpus cap {CORPUS_ORDER_CAP}"
        )));
    }
    Ok(())
}

fn pow_checked(p: u32, k: u32) -> Result<u64, CorpusError> {
    let v = (p as u64)
        .checked_pow(k)
        .ok_or_else(|| CorpusError::OutOfRange(format!("{p}^{k} overflows")))?;
    order_check(v)?;
    Ok(v)
}

// === abelian families ===

/// C_{p^k}, k >= 1.
pub fn cyclic(p: u32, k: u32) -> Result<CorpusEntry, CorpusError> {
    if k == 0 {
        return Err(CorpusError::OutOfRange("cyclic needs k >= 1".into()));
    }
    let order = pow_checked(p, k)?;
    let name = format!("C{order}");
    abelian_with(&name, p, &[k as usize], Family::Cyclic, vec![p, k])
}

/// C_p^r, r >= 1.
pub fn elem_ab(p: u32, r: u32) -> Result<CorpusEntry, CorpusError> {
    if r == 0 {
        return Err(CorpusError::OutOfRange("elem_ab needs r >= 1".into()));
    }
    pow_checked(p, r)?;
    let name = std::iter::repeat(format!("C{p}")).take(r as usize).collect::<Vec<_>>().join("x");
    abelian_with(&name, p, &vec![1usize; r as usize], Family::ElemAb, vec![p, r])
}

/// C_{p^{k_1}} x C_{p^{k_2}} x ..., all k_i >= 1.
pub fn abelian(p: u32, ks: &[u32]) -> Result<CorpusEntry, CorpusError> {
    if ks.is_empty() || ks.iter().any(|&k| k == 0) {
        return Err(CorpusError::OutOfRange("abelian needs nonempty positive exponents".into()));
    }
    pow_checked(p, ks.iter().sum())?;
    let name = ks
        .iter()
        .map(|&k| format!("C{}", (p as u64).pow(k)))
        .collect::<Vec<_>>()
        .join("x");
    let ks: Vec<usize> = ks.iter().map(|&k| k as usize).collect();
    let mut params = vec![p];
    params.extend(ks.iter().map(|&k| k as u32));
    abelian_with(&name, p, &ks, Family::Abelian, params)
}

fn abelian_with(
    name: &str,
    p: u32,
    ks: &[usize],
    family: Family,
    params: Vec<u32>,
) -> Result<CorpusEntry, CorpusError> {
    let n: usize = ks.iter().sum();
    let mut pres = PcPresentation::new(name, p, n);
    // one index block per cyclic factor, powers chaining down the block
    let mut base = 0;
    for &k in ks {
        for j in 0..k - 1 {
            let mut w = vec![0u8; n];
            w[base + j + 1] = 1;
            pres.set_power(base + j, &w);
        }
        base += k;
    }
    let group = pres.validate()?;
    let order = group.size() as u64;
    Ok(CorpusEntry {
        group,
        family,
        params,
        predicted: Prediction {
            order,
            d: Some(ks.len()),
            class: Some(1),
            coclass: Some(n - 1),
        },
    })
}

// === metacyclic 2-generator families ===

/// Shared layout for D, SD, Q, M: ⟨r, s⟩ with r of order p^{k-1},
/// s⁻¹rs = r^t, s^p = r^{spow}.
fn metacyclic(
    name: &str,
    p: u32,
    k: u32,
    t: u64,
    spow: u64,
    family: Family,
    params: Vec<u32>,
    class: usize,
) -> Result<CorpusEntry, CorpusError> {
    let n = k as usize;
    let r_order = (p as u64).pow(k - 1);
    order_check((p as u64).pow(k))?;
    let mut pres = PcPresentation::new(name, p, n);
    // digits of r^m over the basis g_2 = r, g_3 = r^p, ...
    let r_word = |m: u64| -> Vec<u8> {
        let mut w = vec![0u8; n];
        let mut rest = m % r_order;
        for i in 1..n {
            w[i] = (rest % p as u64) as u8;
            rest /= p as u64;
        }
        debug_assert_eq!(rest, 0);
        w
    };
    if spow % r_order != 0 {
        pres.set_power(0, &r_word(spow));
    }
    for i in 1..n - 1 {
        let mut w = vec![0u8; n];
        w[i + 1] = 1;
        pres.set_power(i, &w);
    }
    for j in 1..n {
        // [g_j, g_1] = r^{(t-1) p^{j-2}} with 1-based j = this 0-based j + 1
        let shift = (p as u64).pow(j as u32 - 1);
        let m = ((t - 1) % r_order) * shift % r_order;
        if m != 0 {
            pres.set_comm(j, 0, &r_word(m));
        }
    }
    let group = pres.validate()?;
    Ok(CorpusEntry {
        group,
        family,
        params,
        predicted: Prediction {
            order: (p as u64).pow(k),
            d: Some(2),
            class: Some(class),
            coclass: Some(k as usize - class),
        },
    })
}

/// D_{2^k}, k >= 3.
pub fn dihedral(order: u64) -> Result<CorpusEntry, CorpusError> {
    let k = order.trailing_zeros();
    if order < 8 || order != 1 << k {
        return Err(CorpusError::OutOfRange(format!("dihedral needs a 2-power order >= 8, got {order}")));
    }
    let r_order = order / 2;
    metacyclic(
        &format!("D{order}"),
        2,
        k,
        r_order - 1, // t = -1
        0,
        Family::Dihedral,
        vec![2, k],
        k as usize - 1,
    )
}

/// SD_{2^k}, k >= 4.
pub fn semidihedral(order: u64) -> Result<CorpusEntry, CorpusError> {
    let k = order.trailing_zeros();
    if order < 16 || order != 1 << k {
        return Err(CorpusError::OutOfRange(format!(
            "semidihedral needs a 2-power order >= 16, got {order}"
        )));
    }
    let r_order = order / 2;
    metacyclic(
        &format!("SD{order}"),
        2,
        k,
        r_order / 2 - 1, // t = 2^{k-2} - 1
        0,
        Family::Semidihedral,
        vec![2, k],
        k as usize - 1,
    )
}

/// Q_{2^k}, k >= 3.
pub fn quaternion(order: u64) -> Result<CorpusEntry, CorpusError> {
    let k = order.trailing_zeros();
    if order < 8 || order != 1 << k {
        return Err(CorpusError::OutOfRange(format!(
            "quaternion needs a 2-power order >= 8, got {order}"
        )));
    }
    let r_order = order / 2;
    metacyclic(
        &format!("Q{order}"),
        2,
        k,
        r_order - 1,  // t = -1
        r_order / 2,  // s^2 = r^{2^{k-2}}
        Family::Quaternion,
        vec![2, k],
        k as usize - 1,
    )
}

/// M_{p^k} = ⟨r, s | r^{p^{k-1}}, s^p, s⁻¹rs = r^{1+p^{k-2}}⟩; k >= 3,
/// and k >= 4 when p = 2 (the order-8 case collapses to D_8).
pub fn modular(p: u32, k: u32) -> Result<CorpusEntry, CorpusError> {
    if k < 3 || (p == 2 && k < 4) {
        return Err(CorpusError::OutOfRange(format!("modular needs p^k >= p^3 (p^4 for p = 2), got k = {k}")));
    }
    let shift = (p as u64).pow(k - 2);
    metacyclic(
        &format!("M{}", (p as u64).pow(k)),
        p,
        k,
        shift + 1,
        0,
        Family::Modular,
        vec![p, k],
        2,
    )
}

// === extraspecial groups of order p^3, odd p ===

/// The two extraspecial groups of order p^3 for odd p: exponent p
/// (`exp_sq = false`) or exponent p^2 (`exp_sq = true`).
pub fn extraspecial(p: u32, exp_sq: bool) -> Result<CorpusEntry, CorpusError> {
    if p == 2 {
        return Err(CorpusError::OutOfRange(
            "extraspecial constructor covers odd p; at p = 2 use dihedral/quaternion".into(),
        ));
    }
    let order = pow_checked(p, 3)?;
    if exp_sq {
        // exponent p^2: same presentation shape as M_{p^3}
        return metacyclic(
            &format!("ES{order}e{}", p as u64 * p as u64),
            p,
            3,
            p as u64 + 1,
            0,
            Family::Extraspecial,
            vec![p, 2],
            2,
        );
    }
    // exponent p: two generators with central commutator
    let mut pres = PcPresentation::new(&format!("ES{order}e{p}"), p, 3);
    pres.set_comm(1, 0, &[0, 0, 1]);
    let group = pres.validate()?;
    Ok(CorpusEntry {
        group,
        family: Family::Extraspecial,
        params: vec![p, 1],
        predicted: Prediction { order, d: Some(2), class: Some(2), coclass: Some(1) },
    })
}

// === direct products ===

/// Block-diagonal presentation of A x B.
pub fn direct_product(a: &PcGroup, b: &PcGroup) -> Result<PcGroup, CorpusError> {
    if a.p() != b.p() {
        return Err(CorpusError::OutOfRange("direct product needs equal characteristics".into()));
    }
    let na = a.n_gens();
    let n = na + b.n_gens();
    order_check(a.size() as u64 * b.size() as u64)?;
    let mut pres = PcPresentation::new(&format!("{}x{}", a.name(), b.name()), a.p() as u32, n);
    let shift = |w: &[u8], off: usize| -> Vec<u8> {
        let mut out = vec![0u8; n];
        out[off..off + w.len()].copy_from_slice(w);
        out
    };
    let pa = a.presentation();
    for i in 0..na {
        pres.set_power(i, &shift(&pa.power[i], 0));
        for s in 0..i {
            pres.set_comm(i, s, &shift(&pa.comm[i][s], 0));
        }
    }
    let pb = b.presentation();
    for i in 0..b.n_gens() {
        pres.set_power(na + i, &shift(&pb.power[i], na));
        for s in 0..i {
            pres.set_comm(na + i, na + s, &shift(&pb.comm[i][s], na));
        }
    }
    Ok(pres.validate()?)
}

fn product_entry(a: &CorpusEntry, b: &CorpusEntry) -> Result<CorpusEntry, CorpusError> {
    let group = direct_product(&a.group, &b.group)?;
    let order = group.size() as u64;
    let mut params = a.params.clone();
    params.extend(&b.params);
    Ok(CorpusEntry {
        group,
        family: Family::Product,
        params,
        predicted: Prediction { order, d: None, class: None, coclass: None },
    })
}

// === fixed corpora ===

/// The documented fixed corpus for p in {2, 3, 5}.
pub fn default_corpus(p: u32) -> Result<Vec<CorpusEntry>, CorpusError> {
    match p {
        2 => {
            let mut out = vec![
                cyclic(2, 1)?,
                cyclic(2, 2)?,
                cyclic(2, 3)?,
                cyclic(2, 4)?,
                elem_ab(2, 2)?,
                elem_ab(2, 3)?,
                abelian(2, &[2, 1])?,
                abelian(2, &[2, 2])?,
            ];
            for k in [8u64, 16, 32, 64] {
                out.push(dihedral(k)?);
            }
            for k in [16u64, 32, 64] {
                out.push(semidihedral(k)?);
            }
            for k in [8u64, 16, 32, 64] {
                out.push(quaternion(k)?);
            }
            out.push(modular(2, 4)?);
            out.push(modular(2, 5)?);
            let c2 = cyclic(2, 1)?;
            out.push(product_entry(&dihedral(8)?, &c2)?);
            out.push(product_entry(&quaternion(8)?, &c2)?);
            Ok(out)
        }
        3 | 5 => {
            let mut out = vec![
                cyclic(p, 1)?,
                cyclic(p, 2)?,
                cyclic(p, 3)?,
                elem_ab(p, 2)?,
                elem_ab(p, 3)?,
                abelian(p, &[2, 1])?,
                extraspecial(p, false)?,
                extraspecial(p, true)?,
            ];
            // M_{p^4} only where it fits the size cap
            if (p as u64).pow(4) <= CORPUS_ORDER_CAP {
                out.push(modular(p, 4)?);
            }
            Ok(out)
        }
        _ => Err(CorpusError::BadPrime(p)),
    }
}

// === tests ===
