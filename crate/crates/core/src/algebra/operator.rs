use num_complex::Complex64;

use crate::tol;

type Mat4 = [[Complex64; 4]; 4];
type Mat2 = [[Complex64; 2]; 2];

/// Which tensor slot an operator acts on. Products of operators on distinct
/// single paths get `Joint` support.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    PathA,
    PathB,
    Joint,
}

/// Dense linear operator on the two-path composite space.
///
/// Single-path operators are stored embedded (`block (x) I` or `I (x) block`)
/// so that composition and expectation values need no case analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    matrix: Mat4,
    support: Support,
}

impl Operator {
    pub fn joint(matrix: Mat4) -> Self {
        Self {
            matrix,
            support: Support::Joint,
        }
    }

    pub fn identity() -> Self {
        let mut matrix = [[Complex64::ZERO; 4]; 4];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = Complex64::ONE;
        }
        Self::joint(matrix)
    }

    /// Embeds a single-beam operator as `block (x) I`, acting on path a.
    pub fn on_path_a(block: Mat2) -> Self {
        let mut matrix = [[Complex64::ZERO; 4]; 4];
        for i in 0..2 {
            for k in 0..2 {
                for j in 0..2 {
                    matrix[2 * i + j][2 * k + j] = block[i][k];
                }
            }
        }
        Self {
            matrix,
            support: Support::PathA,
        }
    }

    /// Embeds a single-beam operator as `I (x) block`, acting on path b.
    pub fn on_path_b(block: Mat2) -> Self {
        let mut matrix = [[Complex64::ZERO; 4]; 4];
        for j in 0..2 {
            for l in 0..2 {
                for i in 0..2 {
                    matrix[2 * i + j][2 * i + l] = block[j][l];
                }
            }
        }
        Self {
            matrix,
            support: Support::PathB,
        }
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.matrix
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn adjoint(&self) -> Self {
        let mut matrix = [[Complex64::ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                matrix[i][j] = self.matrix[j][i].conj();
            }
        }
        Self {
            matrix,
            support: self.support,
        }
    }

    /// Largest entry-wise deviation from self-adjointness.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                dev = dev.max((self.matrix[i][j] - self.matrix[j][i].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_deviation() <= tol::HERMITICITY
    }

    pub fn apply(&self, amplitudes: &[Complex64; 4]) -> [Complex64; 4] {
        let mut out = [Complex64::ZERO; 4];
        for (i, row) in self.matrix.iter().enumerate() {
            out[i] = row.iter().zip(amplitudes).map(|(m, a)| m * a).sum();
        }
        out
    }

    /// Largest entry of AB - BA.
    pub fn commutator_max_norm(&self, other: &Self) -> f64 {
        let ab = self * other;
        let ba = other * self;
        let mut dev: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                dev = dev.max((ab.matrix[i][j] - ba.matrix[i][j]).norm());
            }
        }
        dev
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.commutator_max_norm(other) <= tol::HERMITICITY
    }

    fn joined_support(a: Support, b: Support) -> Support {
        if a == b {
            a
        } else {
            Support::Joint
        }
    }
}

impl std::ops::Mul for &Operator {
    type Output = Operator;

    fn mul(self, rhs: &Operator) -> Operator {
        let mut matrix = [[Complex64::ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                matrix[i][j] = (0..4).map(|k| self.matrix[i][k] * rhs.matrix[k][j]).sum();
            }
        }
        Operator {
            matrix,
            support: Operator::joined_support(self.support, rhs.support),
        }
    }
}

impl std::ops::Add for &Operator {
    type Output = Operator;

    fn add(self, rhs: &Operator) -> Operator {
        let mut matrix = [[Complex64::ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                matrix[i][j] = self.matrix[i][j] + rhs.matrix[i][j];
            }
        }
        Operator {
            matrix,
            support: Operator::joined_support(self.support, rhs.support),
        }
    }
}

impl std::ops::Sub for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        let mut matrix = [[Complex64::ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                matrix[i][j] = self.matrix[i][j] - rhs.matrix[i][j];
            }
        }
        Operator {
            matrix,
            support: Operator::joined_support(self.support, rhs.support),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pauli_x() -> Mat2 {
        [[Complex64::ZERO, Complex64::ONE], [Complex64::ONE, Complex64::ZERO]]
    }

    fn pauli_y() -> Mat2 {
        [[Complex64::ZERO, c(0.0, -1.0)], [c(0.0, 1.0), Complex64::ZERO]]
    }

    #[test]
    fn single_path_embeddings_commute() {
        let a = Operator::on_path_a(pauli_x());
        let b = Operator::on_path_b(pauli_y());
        assert!(a.commutes_with(&b));
        assert_eq!((&a * &b).support(), Support::Joint);
    }

    #[test]
    fn same_path_operators_need_not_commute() {
        let x = Operator::on_path_a(pauli_x());
        let y = Operator::on_path_a(pauli_y());
        assert!(!x.commutes_with(&y));
        assert_eq!((&x * &y).support(), Support::PathA);
    }

    #[test]
    fn hermiticity_deviation_detects_asymmetry() {
        assert_eq!(Operator::identity().hermiticity_deviation(), 0.0);
        let mut m = [[Complex64::ZERO; 4]; 4];
        m[0][1] = c(1.0, 0.0);
        m[1][0] = c(1.0, 1e-6);
        let op = Operator::joint(m);
        assert!(op.hermiticity_deviation() > 1e-7);
        assert!(!op.is_hermitian());
    }

    #[test]
    fn apply_matches_embedding() {
        let op = Operator::on_path_a(pauli_x());
        let amps = [c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)];
        // X (x) I swaps the path-a index: (ij) -> (i xor 1, j).
        let out = op.apply(&amps);
        assert_eq!(out, [c(3.0, 0.0), c(4.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]);
    }
}
