//! Local invariants of (a, b / Q): Hilbert symbols and the algebra discriminant.

fn pow_mod(mut b: i64, mut e: i64, m: i64) -> i64 {
    let mut r = 1i64;
    b = b.rem_euclid(m);
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as i128 * b as i128) % m as i128) as i64;
        }
        b = ((b as i128 * b as i128) % m as i128) as i64;
        e >>= 1;
    }
    r
}

/// Legendre symbol (x/p) for an odd prime p.
pub fn legendre(x: i64, p: i64) -> i64 {
    let x = x.rem_euclid(p);
    if x == 0 {
        return 0;
    }
    if pow_mod(x, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

fn split(mut x: i64, p: i64) -> (i64, i64) {
    let mut e = 0;
    while x % p == 0 {
        x /= p;
        e += 1;
    }
    (e, x)
}

/// Hilbert symbol (a, b)_p for nonzero integers and a prime p.
pub fn hilbert(a: i64, b: i64, p: i64) -> i64 {
    let (al, u) = split(a, p);
    let (be, v) = split(b, p);
    if p == 2 {
        let eps = |x: i64| ((x - 1) / 2).rem_euclid(2);
        let omg = |x: i64| ((x * x - 1) / 8).rem_euclid(2);
        let e = eps(u) * eps(v) + al * omg(v) + be * omg(u);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let mut s = if (al * be) % 2 == 1 && (p - 1) / 2 % 2 == 1 {
            -1
        } else {
            1
        };
        if be % 2 == 1 {
            s *= legendre(u, p);
        }
        if al % 2 == 1 {
            s *= legendre(v, p);
        }
        s
    }
}

pub fn primes_dividing(n: i64) -> Vec<i64> {
    let mut n = n.abs();
    let mut out = vec![];
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Product of the finite primes where (a, b / Q) ramifies.
pub fn algebra_discriminant(a: i64, b: i64) -> i64 {
    let mut ps = primes_dividing(2 * a * b);
    ps.dedup();
    ps.into_iter().filter(|&p| hilbert(a, b, p) == -1).product()
}

pub fn is_prime(n: i64) -> bool {
    n >= 2 && primes_dividing(n) == vec![n]
}
