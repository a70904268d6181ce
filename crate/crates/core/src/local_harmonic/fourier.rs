//! Local Fourier transform `Fφ(y) = ∫ φ(x) ψ(r(⟨x, y⟩)) dx`.
//!
//! For `φ` of level `(M, N)` and a pairing of conductor `ν`, `Fφ` has level
//! `(ν - N, ν - M)`. Writing `x`, `y` in digits, `r(x_c y_c) = Σ_{i,j} x_i
//! y_j f_{-1-i-j}`, so the transform is a character sum against the bilinear
//! kernel `H[i][j] = f_{-1-i-j}`.

use rayon::prelude::*;

use super::cyc::CycValue;
use super::fplaurent::FpLaurent;
use super::pairing::ResiduePairing;
use super::window::{LocalWindow, SBLocal};
use crate::error::{Error, Result};

/// An algorithm computing the full table of `Fφ`.
pub trait FourierKernel: Send + Sync {
    fn name(&self) -> &'static str;
    fn transform(&self, phi: &SBLocal, pairing: &ResiduePairing) -> Result<SBLocal>;
}

/// Per-digit discrete Fourier transforms over `F_p`, then a linear change of
/// variables through the kernel matrix.
pub struct Separable;

/// The defining double sum.
pub struct Direct;

pub fn dual_window(w: LocalWindow, pairing: &ResiduePairing) -> Result<LocalWindow> {
    if pairing.q() != w.q {
        return Err(Error::WindowMismatch(format!(
            "pairing over F_{} applied to a window over F_{}",
            pairing.q(),
            w.q
        )));
    }
    let nu = pairing.conductor();
    LocalWindow::new(w.q, w.n, nu - w.hi, nu - w.lo)
}

/// `H[i][j] = f_{-1-(M+i)-(ν-N+j)}`.
fn kernel(w: LocalWindow, pairing: &ResiduePairing) -> Result<Vec<Vec<u64>>> {
    let nu = pairing.conductor();
    let len = w.len() as i64;
    (0..len)
        .map(|i| {
            (0..len)
                .map(|j| pairing.coeff(-1 - (w.lo + i) - (nu - w.hi + j)))
                .collect()
        })
        .collect()
}

/// `w_{c,i}(y) = Σ_j H[i][j] y_{c,j}`, flattened in window digit order.
fn kernel_image(h: &[Vec<u64>], y: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    y.iter()
        .map(|yc| {
            h.iter()
                .map(|row| row.iter().zip(yc).map(|(a, b)| a * b).sum::<u64>() % p)
                .collect()
        })
        .collect()
}

impl FourierKernel for Separable {
    fn name(&self) -> &'static str {
        "separable"
    }

    fn transform(&self, phi: &SBLocal, pairing: &ResiduePairing) -> Result<SBLocal> {
        let w = phi.window();
        let out_w = dual_window(w, pairing)?;
        let h = kernel(w, pairing)?;
        let p = w.q as usize;
        let size = w.size()?;

        // φ̂(z) = Σ_x φ(x) ζ^{x·z}, one digit axis at a time.
        let mut cur = phi.raw().to_vec();
        let mut stride = 1usize;
        for _ in 0..w.axes() {
            let mut next = vec![0i128; cur.len()];
            let block = stride * p * p;
            next.par_chunks_mut(block)
                .zip(cur.par_chunks(block))
                .for_each(|(out, inp)| {
                    for base in 0..stride {
                        for z in 0..p {
                            let o = (base + z * stride) * p;
                            for x in 0..p {
                                let src = (base + x * stride) * p;
                                let s = x * z % p;
                                for k in 0..p {
                                    out[o + (k + s) % p] += inp[src + k];
                                }
                            }
                        }
                    }
                });
            cur = next;
            stride *= p;
        }

        let mut data = vec![0i128; size * p];
        for (yi, chunk) in data.chunks_mut(p).enumerate() {
            let wy = kernel_image(&h, &out_w.digits(yi), w.q);
            let zi = w.index(&wy);
            chunk.copy_from_slice(&cur[zi * p..(zi + 1) * p]);
        }
        let shift = w.n as i64 * w.hi;
        Ok(SBLocal::from_data(out_w, data, phi.den_exp() + shift))
    }
}

impl FourierKernel for Direct {
    fn name(&self) -> &'static str {
        "direct"
    }

    fn transform(&self, phi: &SBLocal, pairing: &ResiduePairing) -> Result<SBLocal> {
        let w = phi.window();
        let out_w = dual_window(w, pairing)?;
        let h = kernel(w, pairing)?;
        let p = w.q as usize;
        let size = w.size()?;
        let src = phi.raw();
        let points: Vec<Vec<Vec<u64>>> = (0..size).map(|i| w.digits(i)).collect();
        let mut data = vec![0i128; size * p];
        data.par_chunks_mut(p).enumerate().for_each(|(yi, out)| {
            let wy = kernel_image(&h, &out_w.digits(yi), w.q);
            for (xi, x) in points.iter().enumerate() {
                let s = x
                    .iter()
                    .zip(&wy)
                    .map(|(xc, wc)| xc.iter().zip(wc).map(|(a, b)| a * b).sum::<u64>())
                    .sum::<u64>() as usize
                    % p;
                for k in 0..p {
                    out[(k + s) % p] += src[xi * p + k];
                }
            }
        });
        let shift = w.n as i64 * w.hi;
        Ok(SBLocal::from_data(out_w, data, phi.den_exp() + shift))
    }
}

/// Fourier transform with the default (separable) kernel.
pub fn fourier(phi: &SBLocal, pairing: &ResiduePairing) -> Result<SBLocal> {
    Separable.transform(phi, pairing)
}

/// Fourier transform onto a requested output window, which must be the dual
/// window `(ν - N, ν - M)`.
pub fn fourier_into(
    phi: &SBLocal,
    pairing: &ResiduePairing,
    out: LocalWindow,
    method: &dyn FourierKernel,
) -> Result<SBLocal> {
    let expect = dual_window(phi.window(), pairing)?;
    if out != expect {
        return Err(Error::WindowMismatch(format!(
            "requested output {out:?}, pairing of conductor {} gives {expect:?}",
            pairing.conductor()
        )));
    }
    method.transform(phi, pairing)
}

/// `FFφ == q^{-nν} φ(-·)`.
pub fn inversion_check(
    phi: &SBLocal,
    pairing: &ResiduePairing,
    method: &dyn FourierKernel,
) -> Result<bool> {
    let ff = method.transform(&method.transform(phi, pairing)?, pairing)?;
    let w = phi.window();
    let expect = phi
        .negate_argument()
        .mul_q_pow(-(w.n as i64) * pairing.conductor());
    Ok(ff == expect)
}

/// `Fφ(y)` at a single point by the defining sum.
pub fn fourier_at(phi: &SBLocal, pairing: &ResiduePairing, y: &[FpLaurent]) -> Result<CycValue> {
    let w = phi.window();
    let out_w = dual_window(w, pairing)?;
    let q = w.q;
    if out_w.locate(y)?.is_none() {
        return Ok(CycValue::zero(q));
    }
    let p = q as usize;
    let mut acc = vec![0i128; p];
    let src = phi.raw();
    for xi in 0..w.size()? {
        let block = &src[xi * p..(xi + 1) * p];
        if block.iter().all(|c| *c == 0) {
            continue;
        }
        let mut s = 0u64;
        for (xc, yc) in w.point(xi).iter().zip(y) {
            s += pairing.r(&xc.mul(yc)?)?;
        }
        let s = (s % q) as usize;
        for k in 0..p {
            acc[(k + s) % p] += block[k];
        }
    }
    Ok(CycValue::from_raw(
        q,
        acc,
        phi.den_exp() + w.n as i64 * w.hi,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_ball_is_self_dual() {
        for q in [2, 3, 5] {
            let pr = ResiduePairing::dt(q);
            for (lo, hi) in [(0, 0), (-1, 1), (0, 2)] {
                let w = LocalWindow::new(q, 1, lo, hi).unwrap();
                let one = SBLocal::unit_ball(w, 0).unwrap();
                let f = fourier(&one, &pr).unwrap();
                assert_eq!(f, SBLocal::unit_ball(f.window(), 0).unwrap());
                let at = fourier_at(&one, &pr, &[FpLaurent::monomial(q, 1, -1)]).unwrap();
                assert!(at.is_zero());
            }
        }
    }

    #[test]
    fn point_mass_transforms_to_constant() {
        let q = 3;
        let w = LocalWindow::new(q, 1, 0, 1).unwrap();
        let delta = SBLocal::from_int_fn(w, |d| (d[0][0] == 0) as i64).unwrap();
        let f = fourier(&delta, &ResiduePairing::dt(q)).unwrap();
        for v in f.values() {
            assert_eq!(v, CycValue::p_pow(q, -1));
        }
    }

    #[test]
    fn kernels_agree_and_invert() {
        let q = 3;
        let w = LocalWindow::new(q, 1, -1, 2).unwrap();
        let phi =
            SBLocal::from_int_fn(w, |d| (d[0][0] * 2 + d[0][2] * d[0][1]) as i64 - 1).unwrap();
        for nu in 0..3 {
            let pr = ResiduePairing::monomial(q, nu);
            assert_eq!(
                Separable.transform(&phi, &pr).unwrap(),
                Direct.transform(&phi, &pr).unwrap()
            );
            assert!(inversion_check(&phi, &pr, &Separable).unwrap());
        }
        let bad = LocalWindow::new(q, 1, 0, 3).unwrap();
        assert!(matches!(
            fourier_into(&phi, &ResiduePairing::dt(q), bad, &Separable),
            Err(Error::WindowMismatch(_))
        ));
    }
}
