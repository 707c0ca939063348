//! Thresholds of the DFS finder and the constructive and non-constructive
//! upper bounds on `R(P_ell^(k); r)`.
//!
//! Round thresholds are exact rationals. Bounds that involve a logarithm are
//! evaluated on certified rational enclosures ([`crate::precise`]) and rounded
//! up, so a returned `n` always satisfies the real inequality.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::Shape;
use crate::precise::{self, Interval};

pub type Rational = BigRational;

fn int(x: usize) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

fn frac(num: usize, den: usize) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn require_colors_le_k(shape: &Shape) -> Result<()> {
    if shape.r < 2 || shape.r > shape.k {
        return Err(Error::OutOfRange {
            what: "r",
            value: shape.r,
            expected: format!("2 <= r <= k = {}", shape.k),
        });
    }
    Ok(())
}

fn require_round(i: usize, shape: &Shape) -> Result<()> {
    require_colors_le_k(shape)?;
    if i < 1 || i > shape.r - 1 {
        return Err(Error::OutOfRange {
            what: "i",
            value: i,
            expected: format!("1 <= i <= r - 1 = {}", shape.r - 1),
        });
    }
    Ok(())
}

fn require_ell(shape: &Shape) -> Result<()> {
    if shape.ell < 3 {
        return Err(Error::OutOfRange {
            what: "ell",
            value: shape.ell,
            expected: "ell >= 3".into(),
        });
    }
    Ok(())
}

/// `tau_1, ..., tau_{r-1}` (index 0 holds `tau_1`).
///
/// For `i <= r - 2`, `tau_i = (i-1) (ell/(k-r+1) + sum_{m=k-r+2}^{k-i} (ell+1)/m)`;
/// `tau_{r-1} = (r-2) ell / (k-r+1)`.
pub fn tau_all(shape: &Shape) -> Result<Vec<Rational>> {
    require_colors_le_k(shape)?;
    let Shape { k, ell, r } = *shape;
    let base = frac(ell, k - r + 1);
    let mut out = vec![Rational::zero(); r - 1];
    out[r - 2] = int(r - 2) * &base;
    // harmonic tail sum_{m=k-r+2}^{k-i} 1/m, grown as i decreases
    let mut tail = Rational::zero();
    for i in (1..=r.saturating_sub(2)).rev() {
        tail += frac(1, k - i);
        out[i - 1] = int(i - 1) * (&base + int(ell + 1) * &tail);
    }
    Ok(out)
}

pub fn tau(i: usize, shape: &Shape) -> Result<Rational> {
    require_round(i, shape)?;
    Ok(tau_all(shape)?.swap_remove(i - 1))
}

/// `t_i = tau_i + 2(i - 1)`, the bound on the trash bin `T_i`.
pub fn t_bin(i: usize, shape: &Shape) -> Result<Rational> {
    Ok(tau(i, shape)? + int(2 * (i - 1)))
}

/// Size `W_{i,i}` must reach before round `i` stops.
pub fn round_target(i: usize, shape: &Shape) -> Result<Rational> {
    require_round(i, shape)?;
    let Shape { k, ell, r } = *shape;
    Ok(match (i, r) {
        (1, 2) => int(ell),
        (1, _) => int(k - 1) * tau(2, shape)? + int(ell + 1),
        _ => frac(k - i, i - 1) * tau(i, shape)?,
    })
}

/// `ceil(round_target(i))`, the size padding fills `W_{i,i}` up to.
pub fn pad_target(i: usize, shape: &Shape) -> Result<usize> {
    let t = round_target(i, shape)?;
    precise::ceil_rational(&t)
        .to_usize()
        .ok_or_else(|| Error::InvalidParams("round target overflows".into()))
}

/// `k(ell+1)r(1 + 1/(k-r+1) + ln((k-1)/(k-r+1)))` as an enclosure.
fn con_value(shape: &Shape, digits: u32) -> Interval {
    let Shape { k, ell, r } = *shape;
    let log = precise::ln(&frac(k - 1, k - r + 1), digits);
    log.add_rational(&(int(1) + frac(1, k - r + 1)))
        .scale(&int(k * (ell + 1) * r))
}

fn certified_ceil_u64(make: impl Fn(u32) -> Interval) -> Result<u64> {
    precise::certified_ceil(make)
        .and_then(|c| c.to_u64())
        .ok_or_else(|| Error::InvariantViolation("could not certify a threshold ceiling".into()))
}

/// Smallest `n` for which the multi-round DFS finder is guaranteed to succeed.
pub fn n_min_con(shape: &Shape) -> Result<u64> {
    require_colors_le_k(shape)?;
    require_ell(shape)?;
    let Shape { k, ell, r } = *shape;
    if r == 2 {
        return Ok(((2 * k - 2) * ell + k) as u64);
    }
    certified_ceil_u64(|d| con_value(shape, d))
}

/// `2^{r+1} ell + (k-2) ell r`, the threshold of the projection finder.
pub fn n_min_con2(shape: &Shape) -> Result<u64> {
    let Shape { k, ell, r } = *shape;
    if k < 2 || r < 2 {
        return Err(Error::InvalidParams(format!("k = {k}, r = {r}")));
    }
    require_ell(shape)?;
    let pow = 1u64
        .checked_shl(r as u32 + 1)
        .filter(|_| r < 62)
        .ok_or_else(|| Error::InvalidParams(format!("r = {r} too large")))?;
    Ok(pow * ell as u64 + ((k - 2) * ell * r) as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cor1Bound {
    /// `ceil(k(ell+1)r(1 + ln(1 + (r-1)/(k-r))))`
    pub main: u64,
    /// `ceil(k(ell+1)r(1 + ln r))`
    pub simplified: u64,
}

/// Thresholds valid for `2 <= r <= k - 1`.
pub fn n_min_cor1(shape: &Shape) -> Result<Cor1Bound> {
    let Shape { k, ell, r } = *shape;
    if r < 2 || r + 1 > k {
        return Err(Error::OutOfRange {
            what: "r",
            value: r,
            expected: format!("2 <= r <= k - 1 = {}", k.saturating_sub(1)),
        });
    }
    require_ell(shape)?;
    let scale = int(k * (ell + 1) * r);
    let main = certified_ceil_u64(|d| {
        precise::ln(&frac(k - 1, k - r), d)
            .add_rational(&int(1))
            .scale(&scale)
    })?;
    let simplified = certified_ceil_u64(|d| precise::ln(&int(r), d).add_rational(&int(1)).scale(&scale))?;
    Ok(Cor1Bound { main, simplified })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundEntry {
    pub id: &'static str,
    pub value: Rational,
    /// Whether an efficient algorithm realizes the bound.
    pub constructive: bool,
    pub note: &'static str,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundTable {
    pub entries: Vec<BoundEntry>,
}

impl BoundTable {
    pub fn get(&self, id: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.id == id)
    }
}

impl fmt::Display for BoundTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let kind = if e.constructive { "constructive" } else { "existential" };
            writeln!(f, "{} = {} [{}] {}", e.id, e.value, kind, e.note)?;
        }
        Ok(())
    }
}

/// All upper bounds that apply to `shape`.
pub fn bound_table(shape: &Shape) -> BoundTable {
    let Shape { k, ell, r } = *shape;
    let mut entries = Vec::new();
    let mut push = |id, value: Rational, constructive, note| {
        entries.push(BoundEntry {
            id,
            value,
            constructive,
            note,
        })
    };
    if k >= 2 && ell >= 3 && r >= 2 {
        push("thm_non", int((k - 1) * ell * r), false, "R(P_l^(k);r) <= (k-1)lr");
    }
    if k >= 3 && ell >= 3 {
        push("eq_TRL", frac(k * ell * r, 2), false, "R(P_l^(k);r) <= klr/2, valid for large r only");
    }
    if k >= 3 && ell == 3 {
        push("eq_TR3", int(k * r), false, "R(P_3^(k);r) <= kr, valid for large r only");
    }
    if k == 3 && ell == 3 && r >= 3 {
        push("eq_TR", int(3 * r), false, "R(P_3^(3);r) <= 3r for all r >= 3");
    }
    if k == 2 {
        push("eq_EG", int(r * ell), false, "R(P_l^(2);r) <= rl");
    }
    if ell == 2 && r == 2 {
        push("exact_l2_r2", int(2 * k - 1), false, "R(P_2^(k);2) = 2k-1 (exact)");
    }
    if let Ok(v) = n_min_con(shape) {
        push("n_min_con", int(v as usize), true, "multi-round DFS finder threshold");
    }
    if let Ok(v) = n_min_con2(shape) {
        push("n_min_con2", int(v as usize), true, "projection finder threshold");
    }
    if let Ok(c) = n_min_cor1(shape) {
        push("n_min_cor1", int(c.main as usize), true, "DFS finder threshold for r <= k-1");
        push("n_min_cor1_simple", int(c.simplified as usize), true, "k(l+1)r(1+ln r) variant");
    }
    BoundTable { entries }
}

/// `1/(k-r+1) + ln(1 + (r-2)/(k-r+1))`, the common factor of the tau estimate.
pub fn claim_tau_factor(k: usize, r: usize, digits: u32) -> Interval {
    precise::ln(&frac(k - 1, k - r + 1), digits).add_rational(&frac(1, k - r + 1))
}

/// Result of comparing `tau_i` with `(i-1)(ell+1) * factor` on one enclosure.
fn compare_claim_tau(tau_i: &Rational, i: usize, ell: usize, factor: &Interval) -> Option<bool> {
    if i == 1 {
        // both sides are exactly zero
        return Some(tau_i.is_zero());
    }
    let c = int((i - 1) * (ell + 1));
    if *tau_i <= &factor.lo * &c {
        Some(true)
    } else if *tau_i > &factor.hi * &c {
        Some(false)
    } else {
        None
    }
}

fn decide_claim_tau(tau_i: &Rational, i: usize, shape: &Shape) -> bool {
    let mut digits = precise::DEFAULT_DIGITS;
    while digits <= precise::MAX_DIGITS {
        let factor = claim_tau_factor(shape.k, shape.r, digits);
        if let Some(v) = compare_claim_tau(tau_i, i, shape.ell, &factor) {
            return v;
        }
        digits *= 2;
    }
    false
}

/// `tau_i <= (i-1)(ell+1)(1/(k-r+1) + ln(1 + (r-2)/(k-r+1)))`.
pub fn check_claim_tau(i: usize, shape: &Shape) -> Result<bool> {
    let t = tau(i, shape)?;
    Ok(decide_claim_tau(&t, i, shape))
}

/// Outcome of an exhaustive sweep of an inequality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub checked: u64,
    /// Cases the fast tier left to exact arithmetic.
    pub exact_fallbacks: u64,
    /// Offending `(k, r, i, ell)` (or `(k, r, 0, 0)` for two-argument claims).
    pub failures: Vec<(usize, usize, usize, usize)>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

/// Checks the tau estimate for every `2 <= r <= k <= max_k`, `1 <= i <= r-1`
/// and `ell` in `ells`. The log factor is evaluated once per `(k, r)`.
/// Float image of `tau_all`, same summation order.
fn tau_all_f64(k: usize, ell: usize, r: usize) -> Vec<f64> {
    let base = ell as f64 / (k - r + 1) as f64;
    let mut out = vec![0.0; r - 1];
    out[r - 2] = (r - 2) as f64 * base;
    let mut tail = 0.0;
    for i in (1..=r.saturating_sub(2)).rev() {
        tail += 1.0 / (k - i) as f64;
        out[i - 1] = (i - 1) as f64 * (base + (ell + 1) as f64 * tail);
    }
    out
}

/// Relative gap below which the float tier defers to exact arithmetic.
///
/// Both sides are sums of at most a few hundred positive terms, so their
/// float rounding error stays below `1e-13` relative; the guard is far wider.
const FLOAT_GUARD: f64 = 1e-9;

/// Checks the tau estimate for every `2 <= r <= k <= max_k`, every round and
/// every `ell` in `ells`.
///
/// A float comparison settles cases whose sides differ by more than
/// `FLOAT_GUARD`; the rest go through exact rationals against an interval.
pub fn sweep_claim_tau(max_k: usize, ells: std::ops::RangeInclusive<usize>) -> SweepReport {
    let mut report = SweepReport::default();
    for k in 2..=max_k {
        for r in 2..=k {
            let factor = claim_tau_factor(k, r, precise::DEFAULT_DIGITS);
            let factor_f = factor.midpoint_f64();
            for ell in ells.clone() {
                let shape = Shape::new(k, ell, r);
                let fast = tau_all_f64(k, ell, r);
                let mut exact: Option<Vec<Rational>> = None;
                for (idx, &t) in fast.iter().enumerate() {
                    let i = idx + 1;
                    report.checked += 1;
                    let rhs = ((i - 1) * (ell + 1)) as f64 * factor_f;
                    let ok = if i == 1 {
                        // both sides carry the factor i - 1 = 0
                        t == 0.0
                    } else if t <= rhs * (1.0 - FLOAT_GUARD) {
                        true
                    } else if t >= rhs * (1.0 + FLOAT_GUARD) {
                        false
                    } else {
                        report.exact_fallbacks += 1;
                        let taus = exact.get_or_insert_with(|| tau_all(&shape).expect("valid shape"));
                        let t = &taus[idx];
                        compare_claim_tau(t, i, ell, &factor).unwrap_or_else(|| decide_claim_tau(t, i, &shape))
                    };
                    if !ok {
                        report.failures.push((k, r, i, ell));
                    }
                }
            }
        }
    }
    report
}

/// `1/(k-r+1) + ln(1 + (r-2)/(k-r+1)) <= ln(1 + (r-1)/(k-r))` for `2 <= r <= k-1`.
pub fn check_claim_cor(k: usize, r: usize) -> Result<bool> {
    if r < 2 || r + 1 > k {
        return Err(Error::OutOfRange {
            what: "r",
            value: r,
            expected: format!("2 <= r <= k - 1 = {}", k.saturating_sub(1)),
        });
    }
    let verdict = precise::certified_nonnegative(|d| {
        let rhs = precise::ln(&frac(k - 1, k - r), d);
        rhs.sub(&claim_tau_factor(k, r, d))
    });
    Ok(verdict.unwrap_or(false))
}

pub fn sweep_claim_cor(max_k: usize) -> SweepReport {
    let mut report = SweepReport::default();
    for k in 3..=max_k {
        for r in 2..k {
            report.checked += 1;
            if !check_claim_cor(k, r).unwrap_or(false) {
                report.failures.push((k, r, 0, 0));
            }
        }
    }
    report
}

/// `(k-i+1)/(i-2) tau_{i-1} = (k-i+1)/(i-1) tau_i + (ell+1)` for `3 <= i <= r-1`.
pub fn check_tau_recurrence(i: usize, shape: &Shape) -> Result<bool> {
    require_round(i, shape)?;
    if i < 3 {
        return Err(Error::OutOfRange {
            what: "i",
            value: i,
            expected: "i >= 3".into(),
        });
    }
    let taus = tau_all(shape)?;
    let k = shape.k;
    let lhs = frac(k - i + 1, i - 2) * &taus[i - 2];
    let rhs = frac(k - i + 1, i - 1) * &taus[i - 1] + int(shape.ell + 1);
    Ok(lhs == rhs)
}

/// `(k-r+1)/(r-2) tau_{r-1} = ell` for `r >= 3`.
pub fn check_final_identity(shape: &Shape) -> Result<bool> {
    require_colors_le_k(shape)?;
    if shape.r < 3 {
        return Err(Error::OutOfRange {
            what: "r",
            value: shape.r,
            expected: "r >= 3".into(),
        });
    }
    let t = tau(shape.r - 1, shape)?;
    Ok(frac(shape.k - shape.r + 1, shape.r - 2) * t == int(shape.ell))
}

/// Both identities for every valid `(k, r, ell)` with `3 <= r <= k <= max_k`
/// and `ell` in `ells`, from a single tau evaluation per shape. Failures
/// record `(k, r, i, ell)`, with `i = r` standing for the final identity.
pub fn sweep_identities(max_k: usize, ells: std::ops::RangeInclusive<usize>) -> SweepReport {
    let mut report = SweepReport::default();
    for k in 3..=max_k {
        for r in 3..=k {
            for ell in ells.clone() {
                let taus = tau_all(&Shape::new(k, ell, r)).expect("valid shape");
                for i in 3..r {
                    let lhs = frac(k - i + 1, i - 2) * &taus[i - 2];
                    let rhs = frac(k - i + 1, i - 1) * &taus[i - 1] + int(ell + 1);
                    report.checked += 1;
                    if lhs != rhs {
                        report.failures.push((k, r, i, ell));
                    }
                }
                report.checked += 1;
                if frac(k - r + 1, r - 2) * &taus[r - 2] != int(ell) {
                    report.failures.push((k, r, r, ell));
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(k: usize, ell: usize, r: usize) -> Shape {
        Shape::new(k, ell, r)
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(1, &s(5, 3, 4)).unwrap(), int(0));
        assert_eq!(tau(1, &s(3, 3, 2)).unwrap(), int(0));
        assert_eq!(tau(3, &s(5, 3, 4)).unwrap(), int(3));
        assert_eq!(tau(2, &s(5, 3, 4)).unwrap(), frac(17, 6));
    }

    #[test]
    fn tau_range_errors() {
        assert!(tau(0, &s(5, 3, 4)).is_err());
        assert!(tau(4, &s(5, 3, 4)).is_err());
        assert!(tau(2, &s(5, 3, 2)).is_err());
        assert!(tau(1, &s(3, 3, 4)).is_err());
    }

    #[test]
    fn t_bin_examples() {
        assert_eq!(t_bin(1, &s(5, 3, 4)).unwrap(), int(0));
        assert_eq!(t_bin(2, &s(5, 3, 4)).unwrap(), frac(29, 6));
        assert_eq!(t_bin(3, &s(5, 3, 4)).unwrap(), int(7));
    }

    #[test]
    fn round_target_examples() {
        assert_eq!(round_target(1, &s(3, 3, 2)).unwrap(), int(3));
        assert_eq!(round_target(1, &s(5, 3, 4)).unwrap(), frac(46, 3));
        assert_eq!(round_target(3, &s(5, 3, 4)).unwrap(), int(3));
        assert_eq!(pad_target(1, &s(5, 3, 4)).unwrap(), 16);
    }

    #[test]
    fn con_examples() {
        assert_eq!(n_min_con(&s(3, 3, 2)).unwrap(), 15);
        // frozen from a 200-digit evaluation
        assert_eq!(n_min_con(&s(3, 3, 3)).unwrap(), 97);
        assert_eq!(n_min_con(&s(5, 3, 4)).unwrap(), 176);
        assert_eq!(n_min_con(&s(4, 4, 3)).unwrap(), 115);
        assert_eq!(n_min_con(&s(5, 4, 5)).unwrap(), 424);
        assert!(n_min_con(&s(3, 3, 4)).is_err());
        assert!(n_min_con(&s(3, 2, 2)).is_err());
    }

    #[test]
    fn con2_examples() {
        assert_eq!(n_min_con2(&s(3, 3, 2)).unwrap(), 30);
        assert_eq!(n_min_con2(&s(2, 3, 2)).unwrap(), 24);
        assert_eq!(n_min_con2(&s(4, 3, 3)).unwrap(), 66);
        assert_eq!(n_min_con2(&s(3, 3, 3)).unwrap(), 57);
        assert!(n_min_con2(&s(3, 2, 2)).is_err());
    }

    #[test]
    fn cor1_examples() {
        // 24 (1 + ln 2) = 40.63...
        assert_eq!(n_min_cor1(&s(3, 3, 2)).unwrap(), Cor1Bound { main: 41, simplified: 41 });
        // 48 (1 + ln 3) = 100.73...
        assert_eq!(n_min_cor1(&s(4, 3, 3)).unwrap(), Cor1Bound { main: 101, simplified: 101 });
        assert_eq!(n_min_cor1(&s(6, 4, 3)).unwrap(), Cor1Bound { main: 136, simplified: 189 });
        assert!(n_min_cor1(&s(3, 3, 3)).is_err());
    }

    #[test]
    fn table_examples() {
        let t = bound_table(&s(3, 3, 3));
        assert_eq!(t.get("thm_non").unwrap().value, int(18));
        assert_eq!(t.get("eq_TR").unwrap().value, int(9));
        assert_eq!(t.get("n_min_con").unwrap().value, int(97));
        assert_eq!(t.get("n_min_con2").unwrap().value, int(57));
        assert!(t.get("n_min_cor1").is_none());
        assert!(t.get("eq_TRL").unwrap().note.contains("large r"));
        let t = bound_table(&s(2, 5, 4));
        assert_eq!(t.get("eq_EG").unwrap().value, int(20));
        assert!(t.get("eq_TRL").is_none());
    }

    #[test]
    fn claim_examples() {
        assert!(check_claim_tau(1, &s(5, 3, 4)).unwrap());
        assert!(check_claim_tau(2, &s(5, 3, 4)).unwrap());
        assert!(check_claim_cor(3, 2).unwrap());
        assert!(check_claim_cor(10, 9).unwrap());
        assert!(check_claim_cor(10, 10).is_err());
    }

    #[test]
    fn identities_small() {
        assert!(check_final_identity(&s(5, 3, 4)).unwrap());
        assert!(check_tau_recurrence(3, &s(6, 4, 5)).unwrap());
        assert!(check_tau_recurrence(2, &s(6, 4, 5)).is_err());
    }

    #[test]
    fn con_is_monotone() {
        for k in 2..=12 {
            for r in 2..=k {
                let mut prev = 0;
                for ell in 3..=12 {
                    let v = n_min_con(&s(k, ell, r)).unwrap();
                    assert!(v >= prev);
                    prev = v;
                }
            }
            for ell in 3..=8 {
                let mut prev = 0;
                for r in 2..=k {
                    let v = n_min_con(&s(k, ell, r)).unwrap();
                    assert!(v >= prev, "k={k} ell={ell} r={r}");
                    prev = v;
                }
            }
        }
    }
}
