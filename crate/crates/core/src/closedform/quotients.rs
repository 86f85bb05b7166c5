use crate::gfpoly::Poly;

use super::ClosedFormError;

/// f^{3^k} by k Frobenius cubings.
pub fn cube_power(f: &Poly, k: u32) -> Poly {
    (0..k).fold(f.clone(), |acc, _| acc.frobenius_cube())
}

/// f^e with e read in base 3, so only cubings and a few products are needed.
pub fn power_base3(f: &Poly, mut e: u64) -> Poly {
    let mut acc = Poly::one(f.modulus());
    let mut base = f.clone();
    while e > 0 {
        for _ in 0..e % 3 {
            acc = &acc * &base;
        }
        e /= 3;
        if e > 0 {
            base = base.frobenius_cube();
        }
    }
    acc
}

/// Divides x by c^e exactly, one base-3 digit of e at a time.
pub fn divide_power(x: &Poly, c: &Poly, mut e: u64) -> Result<Poly, ClosedFormError> {
    let mut acc = x.clone();
    let mut base = c.clone();
    while e > 0 {
        for _ in 0..e % 3 {
            acc = acc.div_exact(&base).map_err(|_| ClosedFormError::NotDivisible {
                what: "closed form".into(),
                dividend: x.to_string(),
                divisor: c.to_string(),
            })?;
        }
        e /= 3;
        if e > 0 {
            base = base.frobenius_cube();
        }
    }
    Ok(acc)
}

fn pow3(k: u32) -> u64 {
    3u64.pow(k)
}

/// (3^{n-1} + (-1)^n)/4.
fn quarter_exponent(n: u32) -> u64 {
    let t = pow3(n - 1);
    if n % 2 == 0 {
        (t + 1) / 4
    } else {
        (t - 1) / 4
    }
}

fn check_inputs(a: &Poly, c: &Poly, n: u32) -> Result<(), ClosedFormError> {
    if a.modulus() != 3 || c.modulus() != 3 {
        return Err(ClosedFormError::NeedsCharacteristic3);
    }
    if n == 0 {
        return Err(ClosedFormError::ZeroLength);
    }
    if a.is_constant() {
        return Err(ClosedFormError::ConstantA);
    }
    if c.is_zero() {
        return Err(ClosedFormError::ZeroC);
    }
    if !c.divides(a) {
        return Err(ClosedFormError::CDoesNotDivideA { a: a.to_string(), c: c.to_string() });
    }
    Ok(())
}

fn sign(n: u32, x: Poly) -> Poly {
    if n % 2 == 0 {
        -&x
    } else {
        x
    }
}

fn compare(rec: Vec<Poly>, closed: Vec<Poly>) -> Result<Vec<Poly>, ClosedFormError> {
    for (i, (r, c)) in rec.iter().zip(&closed).enumerate() {
        if r != c {
            return Err(ClosedFormError::Inconsistent {
                index: i + 1,
                recurrence: r.to_string(),
                closed_form: c.to_string(),
            });
        }
    }
    Ok(rec)
}

/// b_1..b_n for the first family with C | A, via the recurrence and checked against (−1)^{n−1} A^{3^{n−1}} C^{−(3^{n−1}+(−1)^n)/4}.
pub fn w1_quotients(a: &Poly, c: &Poly, n: u32) -> Result<Vec<Poly>, ClosedFormError> {
    check_inputs(a, c, n)?;
    let mut rec = vec![a.clone()];
    for k in 2..=n {
        let cube = rec.last().unwrap().frobenius_cube();
        let next = if k % 2 == 1 {
            -&(c * &cube)
        } else {
            -&cube.div_exact(c).map_err(|_| ClosedFormError::NotDivisible {
                what: format!("b_{k}"),
                dividend: cube.to_string(),
                divisor: c.to_string(),
            })?
        };
        rec.push(next);
    }
    let closed = (1..=n)
        .map(|k| {
            let num = cube_power(a, k - 1);
            divide_power(&num, c, quarter_exponent(k)).map(|q| sign(k, q))
        })
        .collect::<Result<Vec<_>, _>>()?;
    compare(rec, closed)
}

/// b_1..b_n for the second family with C | A: b_1 = A/C, then alternately
/// C b^3 and b^3/C; checked against (A/C)^{3^{n−1}} C^{(3^{n−1}+(−1)^n)/4}.
pub fn w2_quotients(a: &Poly, c: &Poly, n: u32) -> Result<Vec<Poly>, ClosedFormError> {
    check_inputs(a, c, n)?;
    if a.deg() <= c.deg() {
        return Err(ClosedFormError::DegreeOrder);
    }
    let ratio = a.div_exact(c).expect("checked divisibility");
    let mut rec = vec![ratio.clone()];
    for k in 2..=n {
        let cube = rec.last().unwrap().frobenius_cube();
        let next = if k % 2 == 0 {
            c * &cube
        } else {
            cube.div_exact(c).map_err(|_| ClosedFormError::NotDivisible {
                what: format!("b_{k}"),
                dividend: cube.to_string(),
                divisor: c.to_string(),
            })?
        };
        rec.push(next);
    }
    let closed = (1..=n)
        .map(|k| &cube_power(&ratio, k - 1) * &power_base3(c, quarter_exponent(k)))
        .collect();
    compare(rec, closed)
}

/// Quotients of the square of [0, Ω_∞]: A^4 − C, then
/// (−1)^{n−1} A^{3^n − (−1)^n} C^{−(3^n + 3(−1)^n)/4} for n ≥ 2.
pub fn square_cf_quotients(a: &Poly, c: &Poly, n: u32) -> Result<Vec<Poly>, ClosedFormError> {
    check_inputs(a, c, n)?;
    let mut out = vec![&a.pow(4) - c];
    for k in 2..=n {
        let t = pow3(k);
        let num = if k % 2 == 0 {
            cube_power(a, k).div_exact(a).expect("A divides its own power")
        } else {
            &cube_power(a, k) * a
        };
        let e = if k % 2 == 0 { (t + 3) / 4 } else { (t - 3) / 4 };
        out.push(sign(k, divide_power(&num, c, e)?));
    }
    Ok(out)
}

/// The same quotients read off the first family: b_k^3/A for even k, A b_k^3 for odd k.
pub fn square_cf_from_w1(a: &Poly, c: &Poly, n: u32) -> Result<Vec<Poly>, ClosedFormError> {
    let b = w1_quotients(a, c, n)?;
    let mut out = vec![&a.pow(4) - c];
    for (i, bk) in b.iter().enumerate().skip(1) {
        let cube = bk.frobenius_cube();
        out.push(if (i + 1) % 2 == 0 { cube.div_exact(a)? } else { a * &cube });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> Poly {
        Poly::parse(s, 3).unwrap()
    }

    fn texts(v: &[Poly]) -> Vec<String> {
        v.iter().map(Poly::to_string).collect()
    }

    #[test]
    fn w1_small_examples() {
        assert_eq!(texts(&w1_quotients(&poly("T"), &poly("1"), 3).unwrap()), ["T", "2*T^3", "T^9"]);
        let degs: Vec<i64> = w1_quotients(&poly("T"), &poly("T"), 4).unwrap().iter().map(Poly::deg).collect();
        assert_eq!(degs, [1, 2, 7, 20]);
    }

    #[test]
    fn w2_small_examples() {
        assert_eq!(texts(&w2_quotients(&poly("T^2"), &poly("T"), 3).unwrap()), ["T", "T^4", "T^11"]);
    }

    #[test]
    fn rejects_non_divisible() {
        assert!(matches!(
            w1_quotients(&poly("T^2+1"), &poly("T"), 3),
            Err(ClosedFormError::CDoesNotDivideA { .. })
        ));
    }

    #[test]
    fn power_helpers() {
        let f = poly("T^2+2*T+1");
        for e in [0u64, 1, 2, 5, 13, 28] {
            assert_eq!(power_base3(&f, e), f.pow(e));
        }
        let x = &f.pow(7) * &poly("T+2");
        assert_eq!(divide_power(&x, &f, 7).unwrap(), poly("T+2"));
        assert!(divide_power(&x, &f, 8).is_err());
    }

    #[test]
    fn square_quotients_two_ways() {
        for (a, c) in [("T", "1"), ("T", "T"), ("T^3+T", "T"), ("T^2+T", "T+1")] {
            let (a, c) = (poly(a), poly(c));
            assert_eq!(square_cf_quotients(&a, &c, 6).unwrap(), square_cf_from_w1(&a, &c, 6).unwrap());
        }
        assert_eq!(texts(&square_cf_quotients(&poly("T"), &poly("1"), 3).unwrap()), ["T^4+2", "2*T^8", "T^28"]);
    }
}
