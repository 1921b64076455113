//! Discrepancy and window counts of the sequence `({nα})_{n >= 0}`.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};

use super::certified::{CertifiedReal, LinearForm};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Discrepancy {
    pub n: usize,
    /// Exact value as a form in `α`.
    pub value: LinearForm,
    /// Rational enclosure of the value and a decimal preview.
    pub lower: String,
    pub upper: String,
    pub preview: f64,
    /// `true` when the supremum comes from a closed window `[x_i, x_j]` holding too many points,
    /// `false` when it comes from an open gap `(x_i, x_j)` holding too few.
    pub from_excess: bool,
}

impl Discrepancy {
    /// `N · D_N` as a float preview.
    pub fn scaled(&self) -> f64 {
        self.preview * self.n as f64
    }
}

/// Points `{kα}` for `k = 0..=n`, sorted, as forms with denominator 1.
pub(crate) fn sorted_orbit(alpha: &CertifiedReal, n: usize) -> Result<Vec<LinearForm>> {
    let mut pts: Vec<LinearForm> = (0..=n as i128)
        .map(|k| alpha.frac_multiple(k))
        .collect::<Result<_>>()?;
    // float order first, then certify each adjacent pair; fall back to a certified sort on any doubt
    pts.sort_by(|a, b| alpha.approx(*a).total_cmp(&alpha.approx(*b)));
    let mut sorted = true;
    for w in pts.windows(2) {
        if alpha.cmp_forms(w[0], w[1])? != Ordering::Less {
            sorted = false;
            break;
        }
    }
    if !sorted {
        let mut err = None;
        pts.sort_by(|a, b| {
            alpha.cmp_forms(*a, *b).unwrap_or_else(|e| {
                err.get_or_insert(e);
                Ordering::Equal
            })
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(pts)
}

/// `D_N = sup_{0 <= γ < δ <= 1} |A([γ, δ); N)/N - (δ - γ)|` over the points `{nα}`, `0 <= n <= N`.
///
/// With sorted points `p_1 < ... < p_{N+1}` and `g_i = p_i - i/N`, the supremum is
/// `1/N + max(max_{i <= j} g_i - g_j, max_{i < j} g_j - g_i)`, where the second maximum
/// also ranges over the sentinel `p_{N+2} = 1`.
pub fn discrepancy(alpha: &CertifiedReal, n: usize) -> Result<Discrepancy> {
    if n == 0 {
        return Err(Error::InvalidArgument("discrepancy needs N >= 1".into()));
    }
    let big_n = n as i128;
    let pts = sorted_orbit(alpha, n)?;
    // g_i = p_i - i/N with p_i = (c + sα), as (N c - i + N s α) / N
    let g = |i: usize, p: LinearForm| LinearForm::new(big_n * p.c - i as i128, big_n * p.s, big_n);
    let mut gs: Vec<LinearForm> = pts.iter().enumerate().map(|(k, &p)| g(k + 1, p)).collect();
    let sentinel = g(n + 2, LinearForm::integer(1));

    let mut best_excess = LinearForm::integer(0);
    let mut best_gap: Option<LinearForm> = None;
    let mut run_max = gs[0];
    let mut run_min = gs[0];
    gs.push(sentinel);
    for (j, &gj) in gs.iter().enumerate().skip(1) {
        if j <= n {
            let cand = run_max.sub(gj);
            if alpha.cmp_forms(cand, best_excess)? == Ordering::Greater {
                best_excess = cand;
            }
        }
        let gap = gj.sub(run_min);
        if best_gap.map_or(Ok(true), |b| {
            alpha.cmp_forms(gap, b).map(|o| o == Ordering::Greater)
        })? {
            best_gap = Some(gap);
        }
        if j <= n {
            if alpha.cmp_forms(gj, run_max)? == Ordering::Greater {
                run_max = gj;
            }
            if alpha.cmp_forms(gj, run_min)? == Ordering::Less {
                run_min = gj;
            }
        }
    }
    let best_gap = best_gap.expect("at least the sentinel pair");
    let from_excess = alpha.cmp_forms(best_excess, best_gap)? != Ordering::Less;
    let best = if from_excess { best_excess } else { best_gap };
    let value = normalize(best.add(LinearForm::new(1, 0, big_n)));
    let (lo, hi) = alpha.enclose(value);
    Ok(Discrepancy {
        n,
        value,
        preview: alpha.preview(value),
        lower: lo.to_string(),
        upper: hi.to_string(),
        from_excess,
    })
}

fn normalize(f: LinearForm) -> LinearForm {
    let g = gcd(
        gcd(f.c.unsigned_abs(), f.s.unsigned_abs()),
        f.d.unsigned_abs(),
    ) as i128;
    if g > 1 {
        LinearForm::new(f.c / g, f.s / g, f.d / g)
    } else {
        f
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Bound `3 + (1/log φ + K/log(K+1)) log N` for partial quotients bounded by `K`.
pub fn discrepancy_bound(k: u64, n: usize) -> f64 {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    3.0 + (1.0 / phi.ln() + k as f64 / ((k + 1) as f64).ln()) * (n as f64).ln()
}

/// A rational window endpoint `num/den`.
pub type Endpoint = (i128, i128);

/// `#{k in range : {kα/scale} ∈ [γ, δ)}`.
pub fn window_count_scaled(
    alpha: &CertifiedReal,
    scale: i128,
    gamma: Endpoint,
    delta: Endpoint,
    range: std::ops::RangeInclusive<i128>,
) -> Result<u64> {
    let (gn, gd) = gamma;
    let (dn, dd) = delta;
    if scale <= 0 || gd <= 0 || dd <= 0 {
        return Err(Error::InvalidArgument(
            "window endpoints and scale need positive denominators".into(),
        ));
    }
    if gn < 0 || gn * dd >= dn * gd || dn > dd {
        return Err(Error::InvalidArgument(
            "window needs 0 <= γ < δ <= 1".into(),
        ));
    }
    let mut count = 0;
    for k in range {
        let y = alpha.frac(LinearForm::new(0, k, scale))?;
        let above = alpha.cmp_forms(y, LinearForm::new(gn, 0, gd))? != Ordering::Less;
        let below = alpha.cmp_forms(y, LinearForm::new(dn, 0, dd))? == Ordering::Less;
        count += (above && below) as u64;
    }
    Ok(count)
}

/// `A([γ, δ); N)`: how many of `{kα}`, `0 <= k <= N`, fall in `[γ, δ)`.
pub fn window_count(
    alpha: &CertifiedReal,
    gamma: Endpoint,
    delta: Endpoint,
    n: usize,
) -> Result<u64> {
    window_count_scaled(alpha, 1, gamma, delta, 0..=n as i128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sturmian::ContinuedFraction;
    use num_rational::BigRational;
    use num_traits::ToPrimitive;

    const PHI1: f64 = 0.618_033_988_749_894_8;

    fn rational_to_f64(r: &BigRational) -> f64 {
        r.to_f64().unwrap_or(f64::NAN)
    }

    /// Supremum over all windows with sample-point endpoints, enumerated directly.
    fn brute(alpha: f64, n: usize) -> f64 {
        let mut p: Vec<f64> = (0..=n).map(|k| (k as f64 * alpha).fract()).collect();
        p.sort_by(f64::total_cmp);
        let mut ends = p.clone();
        ends.push(1.0);
        let nf = n as f64;
        let mut best: f64 = 0.0;
        for (a, &x) in ends.iter().enumerate() {
            for &y in &ends[a..] {
                let closed = p.iter().filter(|&&t| t >= x && t <= y).count() as f64;
                let open = p.iter().filter(|&&t| t > x && t < y).count() as f64;
                best = best.max(closed / nf - (y - x)).max((y - x) - open / nf);
            }
        }
        best
    }

    #[test]
    fn matches_quadratic_oracle() {
        for (cf, a) in [
            (ContinuedFraction::golden(), PHI1),
            (ContinuedFraction::silver(), 2f64.sqrt() - 1.0),
        ] {
            let alpha = CertifiedReal::new(cf);
            for n in (1..=60).chain([97, 128, 200]) {
                let d = discrepancy(&alpha, n).unwrap();
                assert!(
                    (d.preview - brute(a, n)).abs() < 1e-9,
                    "n = {n}: {} vs {}",
                    d.preview,
                    brute(a, n)
                );
            }
        }
    }

    #[test]
    fn bounded_and_under_theoretical_bound() {
        let alpha = CertifiedReal::new(ContinuedFraction::golden());
        for n in 2..=500 {
            let d = discrepancy(&alpha, n).unwrap();
            assert!(d.preview > 0.0 && d.preview <= 1.0);
            assert!(d.scaled() <= discrepancy_bound(1, n));
        }
    }

    #[test]
    fn enclosure_brackets_preview() {
        let alpha = CertifiedReal::new(ContinuedFraction::golden());
        let d = discrepancy(&alpha, 50).unwrap();
        let lo: BigRational = d.lower.parse().unwrap();
        let hi: BigRational = d.upper.parse().unwrap();
        assert!(lo <= hi);
        assert!(
            rational_to_f64(&lo) <= d.preview + 1e-15 && d.preview <= rational_to_f64(&hi) + 1e-15
        );
    }

    #[test]
    fn window_counts() {
        let alpha = CertifiedReal::new(ContinuedFraction::golden());
        assert_eq!(window_count(&alpha, (0, 1), (1, 1), 100).unwrap(), 101);
        for n in [10, 100, 1000] {
            let lo = window_count(&alpha, (0, 1), (3, 4), n).unwrap();
            let hi = window_count(&alpha, (3, 4), (1, 1), n).unwrap();
            assert_eq!(lo + hi, n as u64 + 1);
            let direct = (0..=n)
                .filter(|&k| (k as f64 * PHI1).fract() < 0.75)
                .count() as u64;
            assert_eq!(lo, direct);
        }
        let halves = window_count_scaled(&alpha, 2, (0, 1), (1, 4), 1..=1000).unwrap();
        let direct = (1..=1000)
            .filter(|&k| (k as f64 * PHI1 / 2.0).fract() < 0.25)
            .count() as u64;
        assert_eq!(halves, direct);
        assert!(window_count(&alpha, (1, 2), (1, 2), 10).is_err());
    }
}
