//! Octal games: a single row of tokens reduced and split according to
//! rules encoded as octal digits, plus empirical period detection on the
//! resulting Grundy sequence.

use std::fmt;
use std::str::FromStr;

use crate::classical::mex;
use crate::{Error, Result};

/// Digit string `d_1 d_2 ... d_k`. Digit `d_i` governs removing `i`
/// tokens: bit 1 allows emptying a heap of exactly i, bit 2 allows
/// leaving one nonempty heap, bit 4 allows splitting the remainder into
/// two nonempty heaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OctalCode {
    digits: Vec<u8>,
}

impl OctalCode {
    pub fn new(digits: Vec<u8>) -> Result<Self> {
        if let Some(&d) = digits.iter().find(|&&d| d > 7) {
            return Err(Error::invalid(format!("octal digit {d} out of range")));
        }
        Ok(OctalCode { digits })
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }
}

impl FromStr for OctalCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut digits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c.to_digit(8) {
                Some(d) => digits.push(d as u8),
                None => {
                    return Err(Error::invalid(format!(
                        "invalid octal digit {c:?} in code {s:?}"
                    )))
                }
            }
        }
        if digits.is_empty() {
            return Err(Error::invalid("octal code must have at least one digit"));
        }
        OctalCode::new(digits)
    }
}

impl fmt::Display for OctalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Grundy values `g(0), ..., g(n_max)` of single heaps under the code.
/// Split successors are valued as the XOR of the two parts.
pub fn octal_g_sequence(code: &OctalCode, n_max: usize) -> Vec<u64> {
    let mut g: Vec<u64> = Vec::with_capacity(n_max + 1);
    g.push(0);
    for n in 1..=n_max {
        let mut options = Vec::new();
        for (idx, &d) in code.digits().iter().enumerate() {
            let take = idx + 1;
            if take > n {
                break;
            }
            let rest = n - take;
            if d & 1 != 0 && rest == 0 {
                options.push(0);
            }
            if d & 2 != 0 && rest >= 1 {
                options.push(g[rest]);
            }
            if d & 4 != 0 && rest >= 2 {
                for a in 1..=rest / 2 {
                    options.push(g[a] ^ g[rest - a]);
                }
            }
        }
        g.push(mex(options.into_iter().map(|v| v as usize)) as u64);
    }
    g
}

/// Smallest `(preperiod p, period len)` in lexicographic order such that
/// `seq[n + len] == seq[n]` for all `p <= n <= seq.len() - len - 1`,
/// reported only when the verified window spans at least `p + 2*len`.
pub fn find_period(seq: &[u64]) -> Option<(usize, usize)> {
    let total = seq.len();
    for p in 0..total {
        let max_len = (total - p) / 2;
        for len in 1..=max_len {
            if (p..total - len).all(|n| seq[n + len] == seq[n]) {
                return Some((p, len));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn parse_codes() {
        let code: OctalCode = "137".parse().unwrap();
        assert_eq!(code.digits(), &[1, 3, 7]);
        assert_eq!(code.to_string(), "137");
        assert!("18".parse::<OctalCode>().is_err());
        assert!("".parse::<OctalCode>().is_err());
        assert!("x7".parse::<OctalCode>().is_err());
    }

    #[test]
    fn she_loves_me_she_loves_me_not() {
        let code: OctalCode = "3".parse().unwrap();
        let g = octal_g_sequence(&code, 12);
        for (n, &v) in g.iter().enumerate() {
            assert_eq!(v, (n % 2) as u64);
        }
    }

    #[test]
    fn g_zero_is_zero_for_every_code() {
        for code in ["3", "07", "4", "777", "1"] {
            let code: OctalCode = code.parse().unwrap();
            assert_eq!(octal_g_sequence(&code, 0), vec![0]);
        }
    }

    // Independent oracle: play the octal game on multisets of heaps,
    // computing mex over whole-position successors with no XOR shortcut.
    fn multiset_grundy(
        code: &OctalCode,
        heaps: &mut Vec<usize>,
        memo: &mut HashMap<Vec<usize>, u64>,
    ) -> u64 {
        heaps.sort_unstable();
        heaps.retain(|&h| h > 0);
        if let Some(&g) = memo.get(heaps) {
            return g;
        }
        let key = heaps.clone();
        let mut options = Vec::new();
        for i in 0..key.len() {
            let n = key[i];
            for (idx, &d) in code.digits().iter().enumerate() {
                let take = idx + 1;
                if take > n {
                    break;
                }
                let rest = n - take;
                let mut push_option = |parts: &[usize], memo: &mut HashMap<_, _>| {
                    let mut next: Vec<usize> = key.clone();
                    next.remove(i);
                    next.extend_from_slice(parts);
                    options.push(multiset_grundy(code, &mut next, memo));
                };
                if d & 1 != 0 && rest == 0 {
                    push_option(&[], memo);
                }
                if d & 2 != 0 && rest >= 1 {
                    push_option(&[rest], memo);
                }
                if d & 4 != 0 && rest >= 2 {
                    for a in 1..=rest / 2 {
                        push_option(&[a, rest - a], memo);
                    }
                }
            }
        }
        let g = mex(options.into_iter().map(|v| v as usize)) as u64;
        memo.insert(key, g);
        g
    }

    #[test]
    fn sequence_matches_multiset_oracle() {
        for (text, max) in [("07", 16), ("137", 12), ("4", 12), ("36", 12)] {
            let code: OctalCode = text.parse().unwrap();
            let seq = octal_g_sequence(&code, max);
            let mut memo = HashMap::new();
            for (n, &g) in seq.iter().enumerate() {
                let direct = multiset_grundy(&code, &mut vec![n], &mut memo);
                assert_eq!(g, direct, "code {text}, heap {n}");
            }
        }
    }

    #[test]
    fn period_detection() {
        assert_eq!(find_period(&[0, 1, 0, 1, 0, 1]), Some((0, 2)));
        assert_eq!(find_period(&[0; 8]), Some((0, 1)));
        assert_eq!(find_period(&[1, 2, 3, 4, 5, 6, 7, 8]), None);
        assert_eq!(find_period(&[5, 0, 1, 0, 1, 0, 1]), Some((1, 2)));
        // Window too short to certify: needs len >= p + 2*period.
        assert_eq!(find_period(&[0, 1]), None);
        assert_eq!(find_period(&[]), None);
    }

    #[test]
    fn dawson_like_code_07_has_known_prefix() {
        // Pin the early values of 0.07 (Dawson's chess shifted by one);
        // the multiset oracle above independently covers this range.
        let code: OctalCode = "07".parse().unwrap();
        let g = octal_g_sequence(&code, 16);
        assert_eq!(g, vec![0, 0, 1, 1, 2, 0, 3, 1, 1, 0, 3, 3, 2, 2, 4, 0, 5]);
    }
}
