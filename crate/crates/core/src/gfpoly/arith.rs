use super::field::{add_mod, sub_mod};

const KARATSUBA_CUTOFF: usize = 48;
const SPARSE_TERMS: usize = 48;

fn nonzero_count(a: &[u8]) -> usize {
    a.iter().filter(|&&c| c != 0).count()
}

/// Product of two dense ascending coefficient slices, reduced mod p.
pub(crate) fn mul_slices(a: &[u8], b: &[u8], p: u8) -> Vec<u8> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (na, nb) = (nonzero_count(a), nonzero_count(b));
    if na.min(nb) <= SPARSE_TERMS || a.len().min(b.len()) <= KARATSUBA_CUTOFF {
        return schoolbook(a, b, p, na <= nb);
    }
    karatsuba(a, b, p)
}

fn schoolbook(a: &[u8], b: &[u8], p: u8, scan_a: bool) -> Vec<u8> {
    let (outer, inner) = if scan_a { (a, b) } else { (b, a) };
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    let mut pending = 0u64;
    let limit = u64::MAX / ((p as u64 - 1).max(1) * (p as u64 - 1).max(1)) / 2;
    for (i, &x) in outer.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let x = x as u64;
        for (slot, &y) in acc[i..].iter_mut().zip(inner) {
            *slot += x * y as u64;
        }
        pending += 1;
        if pending >= limit {
            for v in acc.iter_mut() {
                *v %= p as u64;
            }
            pending = 0;
        }
    }
    acc.into_iter().map(|v| (v % p as u64) as u8).collect()
}

fn add_into(dst: &mut [u8], src: &[u8], p: u8) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = add_mod(*d, s, p);
    }
}

fn sub_into(dst: &mut [u8], src: &[u8], p: u8) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = sub_mod(*d, s, p);
    }
}

fn sum_halves(lo: &[u8], hi: &[u8], p: u8) -> Vec<u8> {
    let mut out = lo.to_vec();
    if hi.len() > out.len() {
        out.resize(hi.len(), 0);
    }
    add_into(&mut out, hi, p);
    out
}

fn karatsuba(a: &[u8], b: &[u8], p: u8) -> Vec<u8> {
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.len() <= KARATSUBA_CUTOFF {
        return schoolbook(a, b, p, false);
    }
    let mut out = vec![0u8; a.len() + b.len() - 1];
    if a.len() >= 2 * b.len() {
        for (k, chunk) in a.chunks(b.len()).enumerate() {
            let part = karatsuba(chunk, b, p);
            add_into(&mut out[k * b.len()..], &part, p);
        }
        return out;
    }
    let m = a.len() / 2;
    let (a0, a1) = a.split_at(m);
    if b.len() <= m {
        add_into(&mut out, &karatsuba(a0, b, p), p);
        add_into(&mut out[m..], &karatsuba(a1, b, p), p);
        return out;
    }
    let (b0, b1) = b.split_at(m);
    let z0 = karatsuba(a0, b0, p);
    let z2 = karatsuba(a1, b1, p);
    let mut z1 = karatsuba(&sum_halves(a0, a1, p), &sum_halves(b0, b1, p), p);
    sub_into(&mut z1, &z0, p);
    sub_into(&mut z1, &z2, p);
    add_into(&mut out, &z0, p);
    add_into(&mut out[m..], &z1, p);
    add_into(&mut out[2 * m..], &z2, p);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(a: &[u8], b: &[u8], p: u8) -> Vec<u8> {
        let mut out = vec![0u8; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = ((out[i + j] as u32 + x as u32 * y as u32) % p as u32) as u8;
            }
        }
        out
    }

    #[test]
    fn karatsuba_matches_naive() {
        let mut seed = 12345u64;
        let mut next = |p: u8| {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % p as u64) as u8
        };
        for &(la, lb, p) in &[(200usize, 150usize, 3u8), (333, 77, 3), (500, 499, 7), (130, 400, 251)] {
            let a: Vec<u8> = (0..la).map(|_| next(p)).collect();
            let b: Vec<u8> = (0..lb).map(|_| next(p)).collect();
            assert_eq!(karatsuba(&a, &b, p), naive(&a, &b, p));
            assert_eq!(mul_slices(&a, &b, p), naive(&a, &b, p));
        }
    }
}
