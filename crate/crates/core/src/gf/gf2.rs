//! Bit-packed `F_2[x]` for the binary irreducibility fast path.

use super::poly::Poly;
use super::prime::prime_divisors;

/// Packs a polynomial over `F_2` (degree below 64) into a bit mask.
pub(crate) fn pack(f: &Poly) -> u64 {
    f.coeffs().iter().enumerate().fold(0u64, |acc, (i, c)| acc | ((c.0 as u64 & 1) << i))
}

fn degree(a: u64) -> i32 {
    63 - a.leading_zeros() as i32
}

fn mulmod(a: u64, b: u64, f: u64) -> u64 {
    let d = degree(f);
    let mut prod: u128 = 0;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            prod ^= (a as u128) << shift;
        }
        b >>= 1;
        shift += 1;
    }
    let f = f as u128;
    let mut top = 127 - prod.leading_zeros() as i32;
    while prod != 0 && top >= d {
        prod ^= f << (top - d);
        top = 127 - prod.leading_zeros() as i32;
    }
    prod as u64
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let mut r = a;
        let db = degree(b);
        while r != 0 && degree(r) >= db {
            r ^= b << (degree(r) - db);
        }
        a = b;
        b = r;
    }
    a
}

/// Rabin's test over `F_2` on a packed monic polynomial of degree >= 2.
pub(crate) fn is_irreducible(f: u64) -> bool {
    let d = degree(f) as usize;
    let checkpoints: Vec<usize> = prime_divisors(d as u64).into_iter().map(|l| d / l as usize).collect();
    let mut power = 0b10u64;
    for k in 1..=d {
        power = mulmod(power, power, f);
        if checkpoints.contains(&k) && gcd(f, power ^ 0b10) != 1 {
            return false;
        }
    }
    power == 0b10
}
