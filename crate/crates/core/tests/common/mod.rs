//! Test-only oracles. Nothing here calls into the library's numerical code:
//! theta values come from a direct summation of the defining series in
//! arbitrary precision, without argument reduction.

#![allow(dead_code)]

use astro_float::{BigFloat, Consts, RoundingMode};
use num_complex::Complex64;

const PREC: usize = 192;
const RM: RoundingMode = RoundingMode::ToEven;
pub const ORACLE_TERMS: usize = 1000;

#[derive(Clone, Debug)]
pub struct BigComplex {
    re: BigFloat,
    im: BigFloat,
}

fn bf(x: f64) -> BigFloat {
    BigFloat::from_f64(x, PREC)
}

fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let s = format!("{}", x);
    s.parse::<f64>()
        .unwrap_or_else(|_| panic!("cannot parse oracle output {s}"))
}

impl BigComplex {
    pub fn from_c64(z: Complex64) -> Self {
        Self {
            re: bf(z.re),
            im: bf(z.im),
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }

    fn add(&self, o: &Self) -> Self {
        Self {
            re: self.re.add(&o.re, PREC, RM),
            im: self.im.add(&o.im, PREC, RM),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        Self {
            re: self.re.sub(&o.re, PREC, RM),
            im: self.im.sub(&o.im, PREC, RM),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let re = self
            .re
            .mul(&o.re, PREC, RM)
            .sub(&self.im.mul(&o.im, PREC, RM), PREC, RM);
        let im = self
            .re
            .mul(&o.im, PREC, RM)
            .add(&self.im.mul(&o.re, PREC, RM), PREC, RM);
        Self { re, im }
    }

    fn scale(&self, s: &BigFloat) -> Self {
        Self {
            re: self.re.mul(s, PREC, RM),
            im: self.im.mul(s, PREC, RM),
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        let den =
            o.re.mul(&o.re, PREC, RM)
                .add(&o.im.mul(&o.im, PREC, RM), PREC, RM);
        let conj = Self {
            re: o.re.clone(),
            im: o.im.neg(),
        };
        let num = self.mul(&conj);
        Self {
            re: num.re.div(&den, PREC, RM),
            im: num.im.div(&den, PREC, RM),
        }
    }
}

pub struct ThetaOracle {
    cc: Consts,
    pi: BigFloat,
}

impl ThetaOracle {
    pub fn new() -> Self {
        let mut cc = Consts::new().expect("constants cache");
        let pi = cc.pi(PREC, RM);
        Self { cc, pi }
    }

    fn exp(&mut self, x: &BigFloat) -> BigFloat {
        x.exp(PREC, RM, &mut self.cc)
    }

    /// exp(i pi w) for a complex w.
    fn exp_i_pi(&mut self, w: &BigComplex) -> BigComplex {
        let a = w.re.mul(&self.pi, PREC, RM);
        let b = w.im.mul(&self.pi, PREC, RM);
        let m = self.exp(&b.neg());
        BigComplex {
            re: a.cos(PREC, RM, &mut self.cc).mul(&m, PREC, RM),
            im: a.sin(PREC, RM, &mut self.cc).mul(&m, PREC, RM),
        }
    }

    /// `2 q^(1/4) sum_{n < ORACLE_TERMS} (-1)^n q^(n(n+1)) sin((2n+1) pi x)`,
    /// summed directly at 192 bits for the unreduced argument.
    pub fn theta1_big(&mut self, x: &BigComplex, t: f64) -> BigComplex {
        let t = bf(t);
        let pit = self.pi.mul(&t, PREC, RM);
        let q = self.exp(&pit.neg());
        let q2 = q.mul(&q, PREC, RM);
        let quarter = self.exp(&pit.div(&bf(-4.0), PREC, RM));

        let e = self.exp_i_pi(x);
        let e_inv = BigComplex::from_c64(Complex64::new(1.0, 0.0)).div(&e);
        let e2 = e.mul(&e);
        let e2_inv = e_inv.mul(&e_inv);

        let mut pos = e.clone();
        let mut neg = e_inv.clone();
        let mut weight = bf(1.0);
        let mut step = q2.clone();
        let mut sum = BigComplex::from_c64(Complex64::new(0.0, 0.0));
        for n in 0..ORACLE_TERMS {
            let diff = pos.sub(&neg).scale(&weight);
            sum = if n % 2 == 0 {
                sum.add(&diff)
            } else {
                sum.sub(&diff)
            };
            weight = weight.mul(&step, PREC, RM);
            step = step.mul(&q2, PREC, RM);
            pos = pos.mul(&e2);
            neg = neg.mul(&e2_inv);
        }
        // sin = (pos - neg) / (2i)  ->  multiply by -i/2, then by 2 q^(1/4)
        let rotated = BigComplex {
            re: sum.im.clone(),
            im: sum.re.neg(),
        };
        rotated.scale(&quarter)
    }

    pub fn theta1(&mut self, x: Complex64, t: f64) -> Complex64 {
        self.theta1_big(&BigComplex::from_c64(x), t).to_c64()
    }

    /// Product `prod theta1(x - z) / theta1(x - p)` evaluated entirely in high
    /// precision. Callers multiply by any `exp(kappa x)` factor themselves.
    pub fn theta_product_big(
        &mut self,
        x: Complex64,
        zeros: &[Complex64],
        poles: &[Complex64],
        t: f64,
    ) -> BigComplex {
        let xb = BigComplex::from_c64(x);
        let mut acc = BigComplex::from_c64(Complex64::new(1.0, 0.0));
        for z in zeros {
            let w = xb.sub(&BigComplex::from_c64(*z));
            acc = acc.mul(&self.theta1_big(&w, t));
        }
        for p in poles {
            let w = xb.sub(&BigComplex::from_c64(*p));
            acc = acc.div(&self.theta1_big(&w, t));
        }
        acc
    }
}

pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}
