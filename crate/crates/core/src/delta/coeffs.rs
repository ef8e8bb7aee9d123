use serde::{Deserialize, Serialize};

use crate::error::{Result, ZhuError};
use crate::scalar::{int, rat, Rational};

/// Coefficients `a_1, ..., a_J` with
/// `exp(-sum_j a_j x^{j+1} d/dx) x = ((1 + x)^k - 1) / k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ACoeffs {
    pub k: u32,
    pub j_max: usize,
    #[serde(with = "fraction_list")]
    pub a: Vec<Rational>,
}

mod fraction_list {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::scalar::{parse_fraction, to_fraction_string, Rational};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(to_fraction_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse_fraction(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Polynomial truncated above degree `deg`.
type Poly = Vec<Rational>;

/// `p -> sum_j a_j x^{j+1} p'`, truncated.
fn apply_e(a: &[Rational], p: &Poly) -> Poly {
    let deg = p.len() - 1;
    let mut out = vec![int(0); p.len()];
    for (d, c) in p.iter().enumerate().skip(1) {
        if *c == int(0) {
            continue;
        }
        let dc = c * int(d as i64);
        // x^{j+1} * x^{d-1} = x^{d+j}
        for (j, aj) in a.iter().enumerate() {
            let e = d + j + 1;
            if e > deg {
                break;
            }
            out[e] += aj * &dc;
        }
    }
    out
}

/// `exp(-sum_j a_j x^{j+1} d/dx) x` through degree `deg`.
pub fn exp_flow_of_x(a: &[Rational], deg: usize) -> Vec<Rational> {
    let mut term: Poly = vec![int(0); deg + 1];
    term[1] = int(1);
    let mut total = term.clone();
    let mut n = 1i64;
    loop {
        let next: Poly = apply_e(a, &term).into_iter().map(|c| -c / int(n)).collect();
        if next.iter().all(|c| *c == int(0)) {
            return total;
        }
        for (t, c) in total.iter_mut().zip(&next) {
            *t += c;
        }
        term = next;
        n += 1;
    }
}

/// Coefficients of `((1 + x)^k - 1) / k` through degree `deg`.
pub fn target_series(k: u32, deg: usize) -> Vec<Rational> {
    let mut out = vec![int(0); deg + 1];
    let mut binom = int(1);
    for (n, o) in out.iter_mut().enumerate().take(deg.min(k as usize) + 1).skip(1) {
        binom = binom * int(k as i64 - n as i64 + 1) / int(n as i64);
        *o = &binom / int(k as i64);
    }
    out
}

/// Order-by-order solution: with `a_1..a_{j-1}` fixed and `a_j = 0`, the
/// `x^{j+1}` coefficient of the flow misses exactly `-a_j`.
pub fn solve_a_coeffs(k: u32, j_max: usize) -> Result<ACoeffs> {
    if k == 0 || j_max == 0 {
        return Err(ZhuError::InvalidArgument(format!("need k >= 1 and J >= 1, got k={k}, J={j_max}")));
    }
    let f = target_series(k, j_max + 1);
    let mut a = vec![int(0); j_max];
    for j in 1..=j_max {
        let lhs = exp_flow_of_x(&a[..j], j + 1);
        a[j - 1] = &lhs[j + 1] - &f[j + 1];
    }
    let out = ACoeffs { k, j_max, a };
    debug_assert!(out.check_series());
    Ok(out)
}

impl ACoeffs {
    /// The defining series identity through `x^{J+1}`.
    pub fn check_series(&self) -> bool {
        exp_flow_of_x(&self.a, self.j_max + 1) == target_series(self.k, self.j_max + 1)
    }

    pub fn get(&self, j: usize) -> Rational {
        if j == 0 || j > self.j_max {
            rat(0, 1)
        } else {
            self.a[j - 1].clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(v: &[&str]) -> Vec<Rational> {
        v.iter().map(|s| crate::scalar::parse_fraction(s).unwrap()).collect()
    }

    #[test]
    fn matches_symbolic_solutions() {
        // solved independently by equating series coefficients symbolically
        let expect = [
            (2, parse(&["-1/2", "1/4", "-3/16", "1/6", "-31/192", "157/960"])),
            (3, parse(&["-1", "2/3", "-2/3", "7/9", "-26/27", "6/5"])),
            (4, parse(&["-3/2", "5/4", "-25/16", "9/4", "-215/64", "311/64"])),
            (5, parse(&["-2", "2", "-3", "77/15", "-134/15", "218/15"])),
        ];
        for (k, a) in expect {
            assert_eq!(solve_a_coeffs(k, 6).unwrap().a, a, "k = {k}");
        }
    }

    #[test]
    fn trivial_and_degenerate_cases() {
        let c = solve_a_coeffs(1, 8).unwrap();
        assert!(c.a.iter().all(|x| *x == int(0)));
        assert!(solve_a_coeffs(0, 3).is_err());
        assert!(solve_a_coeffs(2, 0).is_err());
    }

    #[test]
    fn series_identity_for_small_k() {
        for k in 1..=5 {
            let c = solve_a_coeffs(k, 8).unwrap();
            assert!(c.check_series());
            // truncations are consistent
            assert_eq!(solve_a_coeffs(k, 4).unwrap().a[..], c.a[..4]);
        }
    }

    #[test]
    fn flow_is_multiplicative() {
        // exp of a derivation is an algebra map: the flow of x^2 is the square of the flow of x
        let c = solve_a_coeffs(3, 5).unwrap();
        let y = exp_flow_of_x(&c.a, 6);
        let mut sq = vec![int(0); 7];
        for i in 0..7 {
            for j in 0..7 - i {
                sq[i + j] += &y[i] * &y[j];
            }
        }
        let mut x2 = vec![int(0); 7];
        x2[2] = int(1);
        let mut term = x2.clone();
        let mut total = x2;
        for n in 1..8 {
            term = apply_e(&c.a, &term).into_iter().map(|v| -v / int(n)).collect();
            for (t, v) in total.iter_mut().zip(&term) {
                *t += v;
            }
        }
        assert_eq!(total, sq);
    }

    #[test]
    fn serializes_as_fractions() {
        let c = solve_a_coeffs(2, 2).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"k":2,"j_max":2,"a":["-1/2","1/4"]}"#);
        assert_eq!(serde_json::from_str::<ACoeffs>(&s).unwrap(), c);
    }
}
