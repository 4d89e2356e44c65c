//! The projective line over `Z/N`, indexing the right cosets of `Gamma_0(N)` in `SL_2(Z)`.

use num_integer::Integer;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P1List {
    n: u64,
    reps: Vec<(u64, u64)>,
    index: Vec<u32>,
}

impl P1List {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1);
        let units: Vec<u64> = (1..=n).filter(|u| u.gcd(&n) == 1).map(|u| u % n).collect();
        let size = (n * n) as usize;
        let mut index = vec![u32::MAX; size];
        let mut reps = Vec::new();
        for c in 0..n {
            for d in 0..n {
                let slot = (c * n + d) as usize;
                if index[slot] != u32::MAX || c.gcd(&d).gcd(&n) != 1 {
                    continue;
                }
                let id = reps.len() as u32;
                reps.push((c, d));
                for &u in &units {
                    index[((u * c % n) * n + u * d % n) as usize] = id;
                }
            }
        }
        P1List { n, reps, index }
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, i: usize) -> (u64, u64) {
        self.reps[i]
    }

    /// Index of `(c : d)`; the pair must satisfy `gcd(c, d, N) = 1`.
    pub fn index(&self, c: i64, d: i64) -> usize {
        let n = self.n as i64;
        let (c, d) = (c.rem_euclid(n) as u64, d.rem_euclid(n) as u64);
        let i = self.index[(c * self.n + d) as usize];
        assert!(i != u32::MAX, "({c}:{d}) is not a point of P^1(Z/{})", self.n);
        i as usize
    }

    /// A matrix `[a b; c d]` of `SL_2(Z)` whose bottom row reduces to the `i`-th point.
    pub fn lift(&self, i: usize) -> [i64; 4] {
        let (c0, d0) = self.reps[i];
        let n = self.n as i64;
        let (mut c, d) = (c0 as i64, d0 as i64);
        if n == 1 {
            return [1, 0, 0, 1];
        }
        if c == 0 {
            c = n;
        }
        let mut dd = d;
        while c.gcd(&dd) != 1 {
            dd += n;
        }
        // a*dd - b*c = 1
        let e = dd.extended_gcd(&c);
        let (a, b) = (e.x, -e.y);
        debug_assert_eq!(a * dd - b * c, 1);
        [a, b, c, dd]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psi(n: u64) -> usize {
        // N prod_{q | N} (1 + 1/q)
        let mut r = n as f64;
        let mut m = n;
        let mut q = 2;
        while q * q <= m {
            if m.is_multiple_of(q) {
                r *= 1.0 + 1.0 / q as f64;
                while m.is_multiple_of(q) {
                    m /= q;
                }
            }
            q += 1;
        }
        if m > 1 {
            r *= 1.0 + 1.0 / m as f64;
        }
        r.round() as usize
    }

    #[test]
    fn sizes_and_lifts() {
        for n in [1u64, 2, 11, 26, 32, 154] {
            let p = P1List::new(n);
            assert_eq!(p.len(), psi(n), "N = {n}");
            for i in 0..p.len() {
                let [a, b, c, d] = p.lift(i);
                assert_eq!(a * d - b * c, 1);
                assert_eq!(p.index(c, d), i);
            }
        }
    }
}
