//! The rotation case: `ι_m`, quantum tori `Q_θ`, Pauli matrices, and the
//! degree-local checks behind the matrix realization of `Q_θ`.
//!
//! Every infinite-dimensional object is handled one `Z²` degree at a time
//! inside a caller-supplied box `[−B, B]²`.

mod checks;
mod graded;

pub use checks::{
    anisotropy_witness, centre_component_dim, commutator_space_nonzero, derived_multiloop_matches, eigenspace_classes,
    gl_decomposition_holds, inner_automorphism, multiloop_eigenspace, sl_basis, sl_component_dim, verify_quantum_iso,
    AnisotropyWitness, IsoReport,
};
pub use graded::{pauli, qt_mul, GradedElement, Monomial};

use serde::{Deserialize, Serialize};

use crate::exactnum::{cyc_root_of_unity, CycNumber};

/// An element of `Z/mZ`, stored as its least nonnegative residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResidueClass {
    modulus: u32,
    value: u32,
}

impl ResidueClass {
    pub fn new(modulus: u32, k: i64) -> Self {
        assert!(modulus >= 1);
        ResidueClass { modulus, value: k.rem_euclid(modulus as i64) as u32 }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    /// `gcd(k, m)` with `gcd(0, m) = m`; `k̄` lies in `U(m, g)` for this `g`.
    pub fn stratum(&self) -> u32 {
        num_integer::gcd(self.value, self.modulus)
    }
}

/// `ι_m(k̄)`: write `k̄ = r̄·g` with `g = gcd(k, m)` and `r` a unit mod `m/g`,
/// then return `r^{-1}·g`.
pub fn iota(k: ResidueClass) -> ResidueClass {
    let m = k.modulus as i64;
    let g = k.stratum() as i64;
    let n = m / g;
    let r = k.value as i64 / g;
    let inv = mod_inverse(r, n).expect("r is a unit modulo m/g");
    ResidueClass::new(k.modulus, inv * g)
}

fn mod_inverse(r: i64, n: i64) -> Option<i64> {
    if n == 1 {
        return Some(0);
    }
    let e = num_integer::Integer::extended_gcd(&r.rem_euclid(n), &n);
    (e.gcd == 1).then(|| e.x.rem_euclid(n))
}

/// Parameters of `sl_g(Q_θ)` realizing the rotation `ρ^q` of `A_ℓ^(1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationParams {
    pub g: u32,
    /// `θ = ζ_{ℓ+1}^{theta_exponent}`.
    pub theta_exponent: u32,
    pub theta_order: u32,
    pub theta: CycNumber,
}

/// `g = gcd(q, ℓ+1)` and `θ = ζ_{ℓ+1}^{ι(q̄)}`.
pub fn rotation_realization(l: u32, q: i64) -> RotationParams {
    let n = l + 1;
    let k = ResidueClass::new(n, q);
    let e = iota(k).value();
    RotationParams {
        g: k.stratum(),
        theta_exponent: e,
        theta_order: n / num_integer::gcd(e, n),
        theta: cyc_root_of_unity(n, e as i64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_iota(m: u32, k: u32) -> u32 {
        let g = num_integer::gcd(k, m);
        let n = m / g;
        let r = k / g;
        let inv = (0..n.max(1)).find(|s| (r * s) % n == 1 % n).unwrap();
        (inv * g) % m
    }

    #[test]
    fn iota_values() {
        assert_eq!(iota(ResidueClass::new(5, 2)).value(), 3);
        assert_eq!(iota(ResidueClass::new(6, 2)).value(), 2);
        for m in 1..=30 {
            assert_eq!(iota(ResidueClass::new(m, 0)).value(), 0);
            assert_eq!(iota(ResidueClass::new(m, 1)).value(), 1 % m);
        }
    }

    #[test]
    fn iota_matches_brute_force() {
        for m in 1..=60u32 {
            for k in 0..m {
                assert_eq!(iota(ResidueClass::new(m, k as i64)).value(), brute_iota(m, k), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn rotation_parameters() {
        let r = rotation_realization(5, 0);
        assert_eq!((r.g, r.theta_exponent), (6, 0));
        assert!(r.theta.is_one());
        let r = rotation_realization(4, 2);
        assert_eq!((r.g, r.theta_exponent, r.theta_order), (1, 3, 5));
        assert_eq!(r.theta, cyc_root_of_unity(5, 3));
        let r = rotation_realization(5, 2);
        assert_eq!(r.g, 2);
        assert_eq!(r.theta, cyc_root_of_unity(3, 1));
    }
}
