//! Portable pseudo-random generator used by the synthetic-data generators.
//!
//! The generator is pinned down exactly so that synthetic datasets are
//! byte-identical across implementations and platforms:
//!
//! * State: one nonzero `u64`. Seeding with 0 substitutes the constant
//!   `0x9E37_79B9_7F4A_7C15`.
//! * Update (xorshift64\*): `x ^= x >> 12; x ^= x << 25; x ^= x >> 27;`
//!   output `x · 0x2545_F491_4F6C_DD1D` (wrapping).
//! * Uniform double in [0, 1): top 53 bits of the output, `(o >> 11) · 2⁻⁵³`.
//! * Standard normal: Box–Muller from two consecutive uniforms `u1, u2`
//!   drawn in that order, returning `√(−2 ln(1−u1)) · cos(2π u2)`. The sine
//!   partner is discarded; every call consumes exactly two uniforms.
//! * Complex normal: real part first, then imaginary part.

/// xorshift64* generator with the exact constants documented above.
#[derive(Debug, Clone)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    /// Create a generator from a seed. Seed 0 is remapped to a fixed
    /// nonzero constant because the all-zero state is a fixed point.
    pub fn new(seed: u64) -> Self {
        let state = if seed == 0 { 0x9E37_79B9_7F4A_7C15 } else { seed };
        Self { state }
    }

    /// Next raw 64-bit output.
    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform double in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal deviate (Box–Muller, cosine branch).
    pub fn next_normal(&mut self) -> f64 {
        let u1 = self.next_f64();
        let u2 = self.next_f64();
        // 1 − u1 ∈ (0, 1] keeps the logarithm finite.
        (-2.0 * (1.0 - u1).ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    /// Complex normal deviate: independent standard-normal quadratures,
    /// real drawn before imaginary.
    pub fn next_complex_normal(&mut self) -> (f64, f64) {
        let re = self.next_normal();
        let im = self.next_normal();
        (re, im)
    }
}
