use super::{ApComplex, ApReal, Precision};

/// A complex number kept as modulus and an unwrapped phase.
///
/// `zeta * e^{2 pi i}` is a different point on the Riemann surface of the
/// logarithm from `zeta`, and fractional powers see the difference. Rotating
/// a `Phased` only shifts the stored phase; nothing is ever multiplied by a
/// numerical unit rotation.
#[derive(Clone, Debug)]
pub struct Phased {
    pub modulus: ApReal,
    pub phase: ApReal,
}

impl Phased {
    pub fn new(modulus: ApReal, phase: ApReal) -> Self {
        Phased { modulus, phase }
    }

    /// Principal-branch representation of `z`.
    pub fn from_complex(z: &ApComplex) -> Self {
        Phased { modulus: z.abs(), phase: z.arg() }
    }

    pub fn prec(&self) -> Precision {
        self.modulus.prec().max(self.phase.prec())
    }

    /// Adds `k * pi` to the phase.
    pub fn rotate_pi(&self, k: i64) -> Self {
        let shift = ApReal::pi(self.prec()).mul_i64(k);
        Phased { modulus: self.modulus.clone(), phase: &self.phase + &shift }
    }

    pub fn scale(&self, k: &ApReal) -> Self {
        Phased { modulus: &self.modulus * k, phase: self.phase.clone() }
    }

    /// `self^e` on the branch selected by the stored phase.
    pub fn powr(&self, e: &ApReal) -> Self {
        Phased { modulus: self.modulus.pow(e), phase: &self.phase * e }
    }

    pub fn to_complex(&self) -> ApComplex {
        ApComplex::from_polar(&self.modulus, &self.phase)
    }

    pub fn phase_f64(&self) -> f64 {
        self.phase.to_f64()
    }
}
