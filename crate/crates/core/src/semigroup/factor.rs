//! 64-bit integer factorization: trial division, then Brent's rho with a
//! deterministic Miller-Rabin primality test.

/// Trial division stops at this bound; anything left over goes to rho.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

// Deterministic for every n < 2^64.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Finds a nontrivial factor of the odd composite `n` (Brent's variant).
fn rho_split(n: u64) -> u64 {
    for c in 1.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let mut g = 1;
        let mut x = y;
        let mut ys = y;
        let m = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            // Backtrack one step at a time from the last saved point.
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho_split called on a prime")
}

fn push_factors(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = rho_split(n);
    push_factors(d, out);
    push_factors(n / d, out);
}

/// Prime factorization of `n >= 1` as ascending `(prime, exponent)` pairs.
/// `factor_u64(1)` is empty.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factor_u64 requires n >= 1");
    let mut out = Vec::new();
    let mut m = n;
    let mut push = |p: u64, m: &mut u64| {
        let mut e = 0;
        while (*m).is_multiple_of(p) {
            *m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut m);
    let mut d = 3u64;
    while d <= TRIAL_DIVISION_BOUND && d.saturating_mul(d) <= m {
        push(d, &mut m);
        d += 2;
    }
    if m > 1 {
        let mut rest = Vec::new();
        push_factors(m, &mut rest);
        rest.sort_unstable();
        for p in rest {
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
    }
    out
}

/// Consecutive primes 2, 3, 5, 7, ...
#[derive(Debug, Clone, Default)]
pub struct Primes {
    last: u64,
}

impl Primes {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Iterator for Primes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let mut c = match self.last {
            0 | 1 => 2,
            2 => 3,
            p => p + 2,
        };
        while !is_prime(c) {
            c = c.checked_add(2)?;
        }
        self.last = c;
        Some(c)
    }
}
