//! Segmented sieve of Eratosthenes.

use alloc::vec;
use alloc::vec::Vec;

use super::modular::isqrt_u128;

const SEGMENT: u64 = 1 << 16;

/// Increasing stream of primes `>= start`, produced one sieve segment at a time.
#[derive(Debug, Clone)]
pub struct PrimeStream {
    base: Vec<u64>,
    base_limit: u64,
    lo: u64,
    buf: Vec<u64>,
    pos: usize,
}

/// All primes `>= start` in increasing order.
pub fn prime_stream(start: u64) -> PrimeStream {
    PrimeStream {
        base: Vec::new(),
        base_limit: 1,
        lo: start.max(2),
        buf: Vec::new(),
        pos: 0,
    }
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut comp = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !comp[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                comp[j] = true;
                j += i;
            }
        }
    }
    out
}

impl PrimeStream {
    fn refill(&mut self) {
        loop {
            let lo = self.lo;
            let hi = lo.saturating_add(SEGMENT);
            let need = isqrt_u128(hi as u128) as u64 + 1;
            if need > self.base_limit {
                self.base_limit = need.max(self.base_limit * 2);
                self.base = simple_sieve(self.base_limit);
            }
            let mut comp = vec![false; (hi - lo) as usize];
            for &q in &self.base {
                if q * q >= hi {
                    break;
                }
                let mut j = (q * q).max(lo.div_ceil(q) * q);
                while j < hi {
                    comp[(j - lo) as usize] = true;
                    j += q;
                }
            }
            self.buf.clear();
            for (i, &c) in comp.iter().enumerate() {
                let n = lo + i as u64;
                if !c && n >= 2 {
                    self.buf.push(n);
                }
            }
            self.pos = 0;
            self.lo = hi;
            if !self.buf.is_empty() {
                return;
            }
        }
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.pos >= self.buf.len() {
            self.refill();
        }
        let p = self.buf[self.pos];
        self.pos += 1;
        Some(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_primes() {
        let v: Vec<u64> = prime_stream(2).take(6).collect();
        assert_eq!(v, [2, 3, 5, 7, 11, 13]);
        let v: Vec<u64> = prime_stream(14).take(3).collect();
        assert_eq!(v, [17, 19, 23]);
    }

    #[test]
    fn hundred_thousandth_prime() {
        assert_eq!(prime_stream(2).nth(99_999), Some(1_299_709));
    }

    #[test]
    fn segment_boundaries_agree_with_trial_division() {
        let start = SEGMENT - 50;
        let got: Vec<u64> = prime_stream(start).take_while(|&p| p < SEGMENT + 200).collect();
        let want: Vec<u64> = (start..SEGMENT + 200)
            .filter(|&n| super::super::modular::is_prime_u64(n))
            .collect();
        assert_eq!(got, want);
    }
}
