use super::Rational;
use crate::{Error, Result};

/// The bijection `ψ : N → (Q ∩ (1, ∞)) × N` driving generator selection.
///
/// Only the first coordinate `q_m` matters for the selection itself; the
/// second one makes the map injective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enumeration {
    /// Breadth-first Stern–Brocot order of `Q ∩ (1, ∞)`, paired with `N` by
    /// the inverse Cantor pairing, so every rational recurs infinitely often.
    SternBrocotCantor,
    /// A finite prefix `q_0, q_1, ...` given explicitly; `ψ₂(m)` counts earlier
    /// occurrences of `q_m`.
    Explicit(Vec<Rational>),
}

impl Default for Enumeration {
    fn default() -> Self {
        Enumeration::SternBrocotCantor
    }
}

/// Inverse Cantor pairing `m ↦ (j, k)` with `m = (j+k)(j+k+1)/2 + k`.
fn cantor_unpair(m: u64) -> (u64, u64) {
    let w = (((8 * m + 1) as f64).sqrt() as u64).saturating_sub(1) / 2;
    // correct the floating estimate
    let mut w = w;
    while (w + 1) * (w + 2) / 2 <= m {
        w += 1;
    }
    while w * (w + 1) / 2 > m {
        w -= 1;
    }
    let k = m - w * (w + 1) / 2;
    (w - k, k)
}

/// The `j`-th rational of `Q ∩ (1, ∞)` in breadth-first Stern–Brocot order:
/// `2, 3/2, 3, 4/3, 5/3, 5/2, 4, 5/4, ...`.
pub fn stern_brocot(j: usize) -> Rational {
    // sorted row of fractions (numerator, denominator) between 1/1 and 1/0
    let mut row: Vec<(i64, i64)> = vec![(1, 1), (1, 0)];
    let mut seen = 0usize;
    loop {
        let mut next = Vec::with_capacity(2 * row.len());
        let mut fresh = Vec::with_capacity(row.len());
        for pair in row.windows(2) {
            let mediant = (pair[0].0 + pair[1].0, pair[0].1 + pair[1].1);
            next.push(pair[0]);
            next.push(mediant);
            fresh.push(mediant);
        }
        next.push(*row.last().expect("row is nonempty"));
        if j < seen + fresh.len() {
            let (p, r) = fresh[j - seen];
            return Rational::new(p, r).expect("positive denominator");
        }
        seen += fresh.len();
        row = next;
    }
}

impl Enumeration {
    /// `ψ(m) = (q_m, ψ₂(m))`.
    pub fn entry(&self, m: usize) -> Result<(Rational, u64)> {
        match self {
            Enumeration::SternBrocotCantor => {
                let (j, k) = cantor_unpair(m as u64);
                Ok((stern_brocot(j as usize), k))
            }
            Enumeration::Explicit(list) => {
                let q = *list.get(m).ok_or_else(|| {
                    Error::Enumeration(format!("explicit enumeration has {} entries, index {m} requested", list.len()))
                })?;
                if !q.exceeds_one() {
                    return Err(Error::Enumeration(format!("entry {m} is {q}, must exceed 1")));
                }
                let repeats = list[..m].iter().filter(|&&p| p == q).count() as u64;
                Ok((q, repeats))
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Enumeration::SternBrocotCantor => "stern-brocot-cantor",
            Enumeration::Explicit(_) => "explicit",
        }
    }
}
