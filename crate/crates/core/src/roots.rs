//! Certified complex root isolation for integer polynomials.
//!
//! Approximations come from Durand-Kerner iteration in plain big-float
//! arithmetic; certification is separate and rigorous: with approximations
//! z_1..z_n of all roots of a degree-n polynomial p, each Weierstrass
//! correction W_j = p(z_j)/(lc * prod_{i!=j}(z_j - z_i)) yields a disk
//! D(z_j, n|W_j|), the union of the disks contains every root, and a disk
//! disjoint from all others contains exactly one. Real roots are then
//! pinned down by exact sign changes at dyadic points and refined by
//! bisection, so the dominant-root enclosure never depends on rounding.

use rug::float::Round;
use rug::{Float, Integer, Rational};

use crate::cinterval::ComplexBox;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::poly::IntPoly;

/// One certified root of a squarefree factor.
#[derive(Clone, Debug)]
pub struct RootBox {
    pub re: Interval,
    pub im: Interval,
    pub multiplicity: u32,
    pub is_real: bool,
}

impl RootBox {
    pub fn as_complex(&self) -> ComplexBox {
        ComplexBox::new(self.re.clone(), self.im.clone())
    }

    pub fn modulus(&self) -> Result<Interval> {
        self.as_complex().abs()
    }
}

// ---------------------------------------------------------------------------
// Plain complex floats for the Durand-Kerner iteration (no certification).
// ---------------------------------------------------------------------------

#[derive(Clone)]
struct Cf {
    re: Float,
    im: Float,
}

impl Cf {
    fn new(prec: u32, re: f64, im: f64) -> Self {
        Cf { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    fn sub(&self, o: &Cf) -> Cf {
        Cf {
            re: Float::with_val(self.re.prec(), &self.re - &o.re),
            im: Float::with_val(self.im.prec(), &self.im - &o.im),
        }
    }

    fn mul(&self, o: &Cf) -> Cf {
        let p = self.re.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        Cf { re, im }
    }

    fn div(&self, o: &Cf) -> Cf {
        let p = self.re.prec();
        let d = Float::with_val(p, &o.re * &o.re) + Float::with_val(p, &o.im * &o.im);
        let re = (Float::with_val(p, &self.re * &o.re) + Float::with_val(p, &self.im * &o.im)) / &d;
        let im = (Float::with_val(p, &self.im * &o.re) - Float::with_val(p, &self.re * &o.im)) / &d;
        Cf { re, im }
    }

    fn norm_f64(&self) -> f64 {
        let r = self.re.to_f64();
        let i = self.im.to_f64();
        (r * r + i * i).sqrt()
    }
}

fn eval_cf(p: &IntPoly, z: &Cf, prec: u32) -> Cf {
    let mut acc = Cf::new(prec, 0.0, 0.0);
    for c in p.coeffs.iter().rev() {
        acc = acc.mul(z);
        acc.re += Float::with_val(prec, c);
    }
    acc
}

/// Durand-Kerner sweep; returns approximations for all roots or None when
/// the iteration stalls at this precision.
fn durand_kerner(p: &IntPoly, prec: u32) -> Option<Vec<Cf>> {
    let n = p.degree();
    let radius = p.cauchy_bound_f64().min(1e100);
    let mut zs: Vec<Cf> = (0..n)
        .map(|k| {
            // deterministic non-symmetric starting angles
            let ang = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.41;
            Cf::new(prec, 0.9 * radius * ang.cos(), 0.9 * radius * ang.sin() + 0.1)
        })
        .collect();
    let tol = 2f64.powi(-((prec as i32) - 8));
    let max_iter = 64 + 8 * prec as usize;
    let lead = Float::with_val(prec, p.leading());
    for _ in 0..max_iter {
        let mut worst: f64 = 0.0;
        for j in 0..n {
            let mut denom = Cf { re: lead.clone(), im: Float::new(prec) };
            for i in 0..n {
                if i != j {
                    denom = denom.mul(&zs[j].sub(&zs[i]));
                }
            }
            if denom.norm_f64() == 0.0 {
                // coincident iterates; nudge and continue
                zs[j].re += Float::with_val(prec, 1e-3);
                continue;
            }
            let w = eval_cf(p, &zs[j], prec).div(&denom);
            let scale = zs[j].norm_f64().max(1.0);
            worst = worst.max(w.norm_f64() / scale);
            zs[j] = zs[j].sub(&w);
        }
        if worst < tol {
            return Some(zs);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Certification
// ---------------------------------------------------------------------------

/// Certified Weierstrass disks around exact centers; radius is an upper
/// bound Float. Centers are the exact dyadic values of the iterates.
struct Disk {
    center: ComplexBox, // zero-width point box
    radius: Float,      // upper bound on disk radius
}

fn certify_disks(p: &IntPoly, zs: &[Cf], prec: u32) -> Result<Vec<Disk>> {
    let n = p.degree();
    let lead = Interval::from_integer(p.leading(), prec);
    let mut disks = Vec::with_capacity(n);
    for j in 0..n {
        let zj = ComplexBox::point(zs[j].re.clone(), zs[j].im.clone());
        let mut denom = ComplexBox::new(lead.clone(), Interval::zero(prec));
        for i in 0..n {
            if i != j {
                let zi = ComplexBox::point(zs[i].re.clone(), zs[i].im.clone());
                denom = denom.mul(&zj.sub(&zi));
            }
        }
        if denom.norm_sq().encloses_zero() {
            return Err(Error::PrecisionExhausted("coincident root approximations".into()));
        }
        let w = p.eval_complex(&zj).div(&denom);
        let wabs = w.abs()?;
        let mut radius = Float::with_val_round(prec, wabs.hi(), Round::Up).0;
        radius *= n as u32;
        // tiny cushion so later disjointness checks are strict
        radius.next_up();
        disks.push(Disk { center: zj, radius });
    }
    Ok(disks)
}

/// Exact bisection refinement of a sign-change bracket [a, b] (dyadics as
/// num/2^t with shared t growing as needed).
fn refine_real_root(p: &IntPoly, mut a: (Integer, u32), mut b: (Integer, u32), target_bits: u32) -> Interval {
    fn align(x: &mut (Integer, u32), t: u32) {
        if x.1 < t {
            x.0 <<= t - x.1;
            x.1 = t;
        }
    }
    let sa = p.sign_at_dyadic(&a.0, a.1);
    debug_assert!(sa != 0, "bracket endpoint is an exact root");
    let steps = target_bits + 4;
    for _ in 0..steps {
        let t = a.1.max(b.1);
        align(&mut a, t);
        align(&mut b, t);
        let mid_num = Integer::from(&a.0 + &b.0);
        let mid_t = t + 1;
        let sm = p.sign_at_dyadic(&mid_num, mid_t);
        if sm == 0 {
            // exact rational root; collapse the bracket around it tightly
            a = (mid_num.clone() - 1u32, mid_t);
            b = (mid_num + 1u32, mid_t);
            break;
        }
        if sm == sa {
            a = (mid_num, mid_t);
        } else {
            b = (mid_num, mid_t);
        }
    }
    let prec = target_bits + 64;
    let fa = Float::with_val_round(prec, &a.0, Round::Down).0 >> a.1;
    let fb = Float::with_val_round(prec, &b.0, Round::Up).0 >> b.1;
    Interval::new_unchecked(fa, fb)
}

/// Isolate all complex roots of `poly` (any integer polynomial, repeated
/// roots allowed) with certified disjoint enclosures.
///
/// Returns roots of every squarefree factor tagged with multiplicities and
/// a certified real flag. Fails with `PrecisionExhausted` when disks cannot
/// be separated at this precision.
pub fn isolate_roots(poly: &IntPoly, prec: u32) -> Result<Vec<RootBox>> {
    if poly.degree() == 0 {
        return Ok(vec![]);
    }
    let factors = poly.squarefree_decomposition();
    let mut all: Vec<(RootBox, usize)> = Vec::new(); // with factor id for cross checks
    let mut disks_all: Vec<(Disk, u32, usize)> = Vec::new();

    for (fid, (factor, mult)) in factors.iter().enumerate() {
        if factor.degree() == 0 {
            continue;
        }
        if factor.degree() == 1 {
            // exact rational root -c0/c1
            let root = Rational::from((-factor.coeffs[0].clone(), factor.coeffs[1].clone()));
            let re = Interval::from_rational(&root, prec);
            let rb = RootBox { re, im: Interval::zero(prec), multiplicity: *mult, is_real: true };
            // represent as a zero-radius disk for disjointness checks
            let c = ComplexBox::new(Interval::from_rational(&root, prec), Interval::zero(prec));
            let mut r = Float::with_val(prec, c.re.width());
            r.next_up();
            disks_all.push((Disk { center: ComplexBox::point(Float::with_val(prec, c.re.lo()), Float::new(prec)), radius: r }, *mult, fid));
            all.push((rb, fid));
            continue;
        }
        let work_prec = prec + 96;
        let zs = durand_kerner(factor, work_prec)
            .ok_or_else(|| Error::PrecisionExhausted("root iteration did not converge".into()))?;
        let disks = certify_disks(factor, &zs, work_prec)?;
        for d in disks {
            disks_all.push((d, *mult, fid));
        }
    }

    // cross-factor and intra-factor separation
    for i in 0..disks_all.len() {
        for j in (i + 1)..disks_all.len() {
            let dist = disks_all[i].0.center.dist(&disks_all[j].0.center)?;
            let mut rsum = Float::with_val_round(
                dist.prec(),
                &disks_all[i].0.radius + &disks_all[j].0.radius,
                Round::Up,
            )
            .0;
            rsum.next_up();
            if !(*dist.lo() > rsum) {
                return Err(Error::PrecisionExhausted("root disks overlap".into()));
            }
        }
    }

    // build certified boxes; real roots get exact sign-change refinement
    let mut out = Vec::new();
    for (disk, mult, fid) in &disks_all {
        let factor = &factors[*fid].0;
        if factor.degree() == 1 {
            continue; // already pushed exact rational roots
        }
        let prec_w = disk.center.prec();
        let im_center = disk.center.im.lo().clone();
        let im_lo = Float::with_val_round(prec_w, &im_center - &disk.radius, Round::Down).0;
        let im_hi = Float::with_val_round(prec_w, &im_center + &disk.radius, Round::Up).0;
        let re_center = disk.center.re.lo().clone();
        let re_lo = Float::with_val_round(prec_w, &re_center - &disk.radius, Round::Down).0;
        let re_hi = Float::with_val_round(prec_w, &re_center + &disk.radius, Round::Up).0;
        let im_box = Interval::new_unchecked(im_lo.clone(), im_hi.clone());

        if im_box.encloses_zero() {
            // candidate real root: certify by exact sign change on [re_lo, re_hi]
            let a = float_to_dyadic(&re_lo).ok_or_else(|| Error::PrecisionExhausted("non-finite endpoint".into()))?;
            let b = float_to_dyadic(&re_hi).ok_or_else(|| Error::PrecisionExhausted("non-finite endpoint".into()))?;
            let sa = factor.sign_at_dyadic(&a.0, a.1);
            let sb = factor.sign_at_dyadic(&b.0, b.1);
            if sa == 0 || sb == 0 || sa == sb {
                return Err(Error::PrecisionExhausted(
                    "cannot certify near-real root as real at this precision".into(),
                ));
            }
            let re = refine_real_root(factor, a, b, prec);
            out.push(RootBox { re, im: Interval::zero(prec), multiplicity: *mult, is_real: true });
        } else {
            out.push(RootBox {
                re: Interval::new_unchecked(re_lo, re_hi),
                im: im_box,
                multiplicity: *mult,
                is_real: false,
            });
        }
    }
    // append the exact deg-1 roots
    for (rb, _) in all {
        out.push(rb);
    }
    Ok(out)
}

/// Decompose a finite Float into (numerator, log2 denominator) with value
/// num / 2^log2_den.
pub fn float_to_dyadic(f: &Float) -> Option<(Integer, u32)> {
    if !f.is_finite() {
        return None;
    }
    let r = f.to_rational()?;
    let den = r.denom();
    // denominators of binary floats are powers of two
    debug_assert_eq!(den.count_ones(), Some(1));
    let bits = den.significant_bits() - 1;
    Some((r.numer().clone(), bits))
}
