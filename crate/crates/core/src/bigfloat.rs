use dashu_base::BitTest;
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use num_complex::Complex64;

pub(crate) type Float = FBig<HalfEven, 2>;

pub(crate) fn float_from_f64(x: f64, precision: usize) -> Float {
    Float::try_from(x)
        .expect("finite input")
        .with_precision(precision)
        .value()
}

pub(crate) fn float_from_i128(x: i128, precision: usize) -> Float {
    Float::from(x).with_precision(precision).value()
}

/// `log2 |x|`, `-inf` for zero.
pub(crate) fn log2_abs(x: &Float) -> f64 {
    let repr = x.repr();
    let sig = repr.significand();
    if sig.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (_, mag) = sig.clone().into_parts();
    let bits = mag.bit_len();
    let shift = bits.saturating_sub(62);
    let top: u64 = (mag >> shift).try_into().expect("at most 62 bits");
    (top as f64).log2() + (shift as isize + repr.exponent()) as f64
}

pub(crate) fn to_f64(x: &Float) -> f64 {
    x.to_f64().value()
}

fn is_zero(x: &Float) -> bool {
    x.repr().significand().is_zero()
}

#[derive(Clone, Debug)]
pub(crate) struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn zero() -> Self {
        BigComplex {
            re: Float::ZERO,
            im: Float::ZERO,
        }
    }

    pub fn from_c64(z: Complex64, precision: usize) -> Self {
        BigComplex {
            re: float_from_f64(z.re, precision),
            im: float_from_f64(z.im, precision),
        }
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.re) && is_zero(&self.im)
    }

    pub fn add_assign(&mut self, other: &BigComplex) {
        if !is_zero(&other.re) {
            self.re = &self.re + &other.re;
        }
        if !is_zero(&other.im) {
            self.im = &self.im + &other.im;
        }
    }

    pub fn mul(&self, other: &BigComplex) -> BigComplex {
        let real = |a: &Float, b: &Float| {
            if is_zero(a) || is_zero(b) {
                Float::ZERO
            } else {
                a * b
            }
        };
        let re = real(&self.re, &other.re) - real(&self.im, &other.im);
        let im = real(&self.re, &other.im) + real(&self.im, &other.re);
        BigComplex { re, im }
    }

    pub fn scale(&self, r: &Float) -> BigComplex {
        let part = |a: &Float| if is_zero(a) { Float::ZERO } else { a * r };
        BigComplex {
            re: part(&self.re),
            im: part(&self.im),
        }
    }

    pub fn div_real(&self, r: &Float) -> BigComplex {
        let part = |a: &Float| if is_zero(a) { Float::ZERO } else { a / r };
        BigComplex {
            re: part(&self.re),
            im: part(&self.im),
        }
    }

    pub fn log2_abs(&self) -> f64 {
        let a = log2_abs(&self.re);
        let b = log2_abs(&self.im);
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        if hi == f64::NEG_INFINITY {
            return hi;
        }
        hi + 0.5 * (1.0 + (2.0 * (lo - hi)).exp2()).log2()
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }
}
