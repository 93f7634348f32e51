//! Empirical prime scan: recomputes membership in each `V_i` prime by prime
//! (Euler's criterion instead of reciprocity) and cross-checks the exact
//! deciders of the core library.

use serde::Serialize;

use hasse_core::arith::primes_up_to;
use hasse_core::qfields::{generic_system_consistent, v_contains, v_intersection_empty};
use hasse_core::{Error, EtaleProblem, Place, QuadraticTower};

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc = 1u128;
    let mut base = b as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

/// Whether `n ≠ 0` is a square in `Q_p`, by Euler's criterion on the unit part
/// (odd `p`) or by listing odd squares mod 8 (`p = 2`).
fn square_in_qp(n: i128, p: u64) -> bool {
    let mut u = n;
    let mut k = 0;
    while u % p as i128 == 0 {
        u /= p as i128;
        k += 1;
    }
    if k % 2 == 1 {
        return false;
    }
    if p == 2 {
        let r = u.rem_euclid(8);
        return [1i128, 3, 5, 7].iter().any(|x| x * x % 8 == r);
    }
    let r = u.rem_euclid(p as i128) as u64;
    pow_mod(r, (p - 1) / 2, p) == 1
}

/// `p ∈ V`: some place of `F` above `p` has `d` as a nonsquare.
pub fn member(t: &QuadraticTower, p: u64) -> bool {
    let d = t.d() as i128;
    match t.e() {
        None => !square_in_qp(d, p),
        Some(e) if square_in_qp(e as i128, p) => !square_in_qp(d, p),
        Some(e) => !square_in_qp(d, p) && !square_in_qp(d * e as i128, p),
    }
}

fn unramified_odd(t: &QuadraticTower, p: u64) -> bool {
    p != 2 && t.generators().iter().all(|&n| n % p as i128 != 0)
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct TowerScan {
    pub factor: usize,
    /// Primes up to the bound lying in `V_i`.
    pub count: usize,
    pub odd_unramified: usize,
    pub odd_unramified_in_v: usize,
    pub density: Option<f64>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct PairScan {
    pub i: usize,
    pub j: usize,
    /// Least odd prime unramified in both towers lying in `V_i ∩ V_j`.
    pub witness: Option<u64>,
    /// Least prime of any kind in `V_i ∩ V_j`, ramified ones and 2 included.
    pub least_common_prime: Option<u64>,
    pub exact_empty: bool,
    pub generic_consistent: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ScanReport {
    pub bound: u64,
    pub towers: Vec<TowerScan>,
    pub pairs: Vec<PairScan>,
}

/// An exact decider contradicted by the scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement(pub String);

impl std::fmt::Display for Disagreement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "oracle disagreement: {}", self.0)
    }
}

#[derive(Debug)]
pub enum ScanError {
    Engine(Error),
    Disagreement(Disagreement),
}

impl From<Error> for ScanError {
    fn from(e: Error) -> Self {
        ScanError::Engine(e)
    }
}

pub fn oracle_scan(problem: &EtaleProblem, bound: u64) -> Result<ScanReport, ScanError> {
    let primes = primes_up_to(bound);
    let towers = problem.factors();
    let mut membership: Vec<Vec<bool>> = Vec::with_capacity(towers.len());
    let mut tower_reports = Vec::with_capacity(towers.len());
    for (i, t) in towers.iter().enumerate() {
        let row: Vec<bool> = primes.iter().map(|&p| member(t, p)).collect();
        for (&p, &m) in primes.iter().zip(&row) {
            if v_contains(t, Place::Prime(p))? != m {
                return Err(ScanError::Disagreement(Disagreement(format!(
                    "factor {i}: membership of {p} is {m} by scan"
                ))));
            }
        }
        let odd: Vec<bool> = primes.iter().map(|&p| unramified_odd(t, p)).collect();
        let odd_unramified = odd.iter().filter(|&&x| x).count();
        let odd_unramified_in_v = odd.iter().zip(&row).filter(|(&o, &m)| o && m).count();
        tower_reports.push(TowerScan {
            factor: i,
            count: row.iter().filter(|&&m| m).count(),
            odd_unramified,
            odd_unramified_in_v,
            density: (odd_unramified > 0).then(|| odd_unramified_in_v as f64 / odd_unramified as f64),
        });
        membership.push(row);
    }
    let mut pairs = Vec::new();
    for i in 0..towers.len() {
        for j in i + 1..towers.len() {
            let both = |k: usize| membership[i][k] && membership[j][k];
            let least_common_prime = (0..primes.len()).find(|&k| both(k)).map(|k| primes[k]);
            let witness = (0..primes.len())
                .find(|&k| both(k) && unramified_odd(&towers[i], primes[k]) && unramified_odd(&towers[j], primes[k]))
                .map(|k| primes[k]);
            let exact_empty = v_intersection_empty(&towers[i], &towers[j])?;
            let generic_consistent = generic_system_consistent(&towers[i], &towers[j])?;
            if let (true, Some(p)) = (exact_empty, least_common_prime) {
                return Err(ScanError::Disagreement(Disagreement(format!(
                    "factors {i}, {j}: declared disjoint but share {p}"
                ))));
            }
            if let (false, Some(p)) = (generic_consistent, witness) {
                return Err(ScanError::Disagreement(Disagreement(format!(
                    "factors {i}, {j}: generic system inconsistent but {p} is a common unramified prime"
                ))));
            }
            pairs.push(PairScan {
                i,
                j,
                witness,
                least_common_prime,
                exact_empty,
                generic_consistent,
            });
        }
    }
    Ok(ScanReport {
        bound,
        towers: tower_reports,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(towers: &[(Option<i64>, i64)]) -> EtaleProblem {
        EtaleProblem::new(
            towers
                .iter()
                .map(|&(e, d)| QuadraticTower::new(e, d).unwrap())
                .collect(),
            0,
        )
        .unwrap()
    }

    #[test]
    fn density_of_a_quadratic_field() {
        let r = oracle_scan(&problem(&[(None, 5)]), 10_000).unwrap();
        let density = r.towers[0].density.unwrap();
        assert!((density - 0.5).abs() < 0.05, "{density}");
    }

    #[test]
    fn witnesses() {
        let r = oracle_scan(&problem(&[(None, 5), (None, 7)]), 100).unwrap();
        assert_eq!(r.pairs[0].witness, Some(13));
        // 2 and 7 also lie in both sets, but are ramified in one of the fields
        assert_eq!(r.pairs[0].least_common_prime, Some(2));
        assert!(!r.pairs[0].exact_empty);
        let r = oracle_scan(&problem(&[(None, 5), (Some(5), 41)]), 20_000).unwrap();
        assert_eq!(r.pairs[0].witness, None);
        assert_eq!(r.pairs[0].least_common_prime, None);
        assert!(r.pairs[0].exact_empty);
    }

    #[test]
    fn empty_bound() {
        let r = oracle_scan(&problem(&[(None, 5), (None, 7)]), 0).unwrap();
        assert_eq!(r.towers[0].count, 0);
        assert_eq!(r.towers[0].density, None);
        assert_eq!(r.pairs[0].witness, None);
    }

    #[test]
    fn euler_squares() {
        assert!(!square_in_qp(5, 2));
        assert!(square_in_qp(-7, 2));
        assert!(square_in_qp(4, 7));
        assert!(!square_in_qp(3, 3));
        assert!(square_in_qp(9 * 7, 3) == square_in_qp(7, 3));
    }
}
