//! Scaling and squaring with diagonal Padé approximants (orders 3..13),
//! choosing the order from the 1-norm as in Higham (2005).

use super::{check_square, identity, norm1, CMatrix};
use crate::error::{Error, Result};

const THETA: [(usize, f64); 4] = [
    (3, 1.495585217958292e-2),
    (5, 2.539398330063230e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068e0),
];
const THETA_13: f64 = 5.371920351148152e0;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const B9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

// Largest squaring count we accept; beyond this the result cannot be finite
// for any matrix whose exponential we care about.
const MAX_SQUARINGS: i32 = 1000;

pub fn expm(a: &CMatrix) -> Result<CMatrix> {
    let n = check_square(a)?;
    if n == 0 {
        return Ok(a.clone());
    }
    let nrm = norm1(a);
    if nrm == 0.0 {
        return Ok(identity(n));
    }
    for (m, theta) in THETA {
        if nrm <= theta {
            let coef: &[f64] = match m {
                3 => &B3,
                5 => &B5,
                7 => &B7,
                _ => &B9,
            };
            return finish(pade_low(a, coef), 0, nrm);
        }
    }
    let s = (nrm / THETA_13).log2().ceil().max(0.0) as i32;
    if s > MAX_SQUARINGS {
        return Err(Error::Overflow(nrm));
    }
    let scaled = a.unscale(2f64.powi(s));
    finish(pade13(&scaled), s, nrm)
}

fn finish(r: CMatrix, s: i32, nrm: f64) -> Result<CMatrix> {
    let mut r = r;
    for _ in 0..s {
        r = &r * &r;
        if r.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Overflow(nrm));
        }
    }
    if r.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Overflow(nrm));
    }
    Ok(r)
}

fn solve(p: CMatrix, q: CMatrix) -> CMatrix {
    // q is well conditioned for the chosen orders
    q.lu().solve(&p).expect("Pade denominator singular")
}

fn pade_low(a: &CMatrix, b: &[f64]) -> CMatrix {
    let n = a.nrows();
    let id = identity(n);
    let a2 = a * a;
    let mut u = id.scale(b[1]);
    let mut v = id.scale(b[0]);
    let mut pow = id;
    for k in 1..b.len() / 2 {
        pow = &pow * &a2;
        u += pow.scale(b[2 * k + 1]);
        v += pow.scale(b[2 * k]);
    }
    let u = a * u;
    solve(&v + &u, &v - &u)
}

fn pade13(a: &CMatrix) -> CMatrix {
    let b = &B13;
    let n = a.nrows();
    let id = identity(n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let inner_u = a6.scale(b[13]) + a4.scale(b[11]) + a2.scale(b[9]);
    let u = a * (&a6 * inner_u + a6.scale(b[7]) + a4.scale(b[5]) + a2.scale(b[3]) + id.scale(b[1]));
    let inner_v = a6.scale(b[12]) + a4.scale(b[10]) + a2.scale(b[8]);
    let v = &a6 * inner_v + a6.scale(b[6]) + a4.scale(b[4]) + a2.scale(b[2]) + id.scale(b[0]);
    solve(&v + &u, &v - &u)
}
