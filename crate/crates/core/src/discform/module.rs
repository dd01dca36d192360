use std::fmt;
use std::ops::Mul;

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::cyclo::Cyclo8;
use super::sl2z::{Gen, Sl2z};
use crate::error::{Error, Result};

type Q = Ratio<i64>;

fn frac(x: Q) -> Q {
    x - Q::from_integer(x.floor().to_integer())
}

/// A 2×2 rational matrix viewed as a vector of (M₂(Q), det).
type Mat = [[Q; 2]; 2];

fn det(m: &Mat) -> Q {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn madd(x: &Mat, y: &Mat) -> Mat {
    [[x[0][0] + y[0][0], x[0][1] + y[0][1]], [x[1][0] + y[1][0], x[1][1] + y[1][1]]]
}

/// Finite quadratic module L'/L.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscModule {
    pub labels: Vec<String>,
    /// Q(μ) mod 1.
    pub qval: Vec<Q>,
    /// (μ, ν) mod 1.
    pub bil: Vec<Vec<Q>>,
    /// Positive part n of the signature (n, 2); enters as e((n−2)/8).
    pub signature_plus: i64,
    /// Cosets in L₀'/L mapping to 0 in M'/M, summed by the restriction f ↦ f_M.
    pub m_cosets: Vec<usize>,
}

impl DiscModule {
    /// L = (Z Z; 2Z Z) with Q = det, cosets μ₀ = 0, μ₁ = e₂₁, μ₂ = ½e₁₂, μ₃ = μ₁ + μ₂.
    pub fn level2() -> Self {
        let z = Q::zero();
        let reps: [Mat; 4] = [
            [[z, z], [z, z]],
            [[z, z], [Q::one(), z]],
            [[z, Q::new(1, 2)], [z, z]],
            [[z, Q::new(1, 2)], [Q::one(), z]],
        ];
        let qval: Vec<Q> = reps.iter().map(|m| frac(det(m))).collect();
        let bil = reps
            .iter()
            .map(|x| reps.iter().map(|y| frac(det(&madd(x, y)) - det(x) - det(y))).collect())
            .collect();
        Self {
            labels: (0..4).map(|i| format!("mu{i}")).collect(),
            qval,
            bil,
            signature_plus: 2,
            m_cosets: vec![0, 2],
        }
    }

    /// Unimodular lattice (M₂(Z), det): a single coset.
    pub fn trivial() -> Self {
        Self {
            labels: vec!["0".into()],
            qval: vec![Q::zero()],
            bil: vec![vec![Q::zero()]],
            signature_plus: 2,
            m_cosets: vec![0],
        }
    }

    pub fn size(&self) -> usize {
        self.qval.len()
    }

    pub fn signature_factor(&self) -> Cyclo8 {
        Cyclo8::e(Q::new(self.signature_plus - 2, 8)).expect("eighth root of unity")
    }

    /// bil(μ,μ) ≡ 2Q(μ), symmetry, Q(0) = 0.
    pub fn check(&self) -> Result<()> {
        let n = self.size();
        if !self.qval[0].is_zero() {
            return Err(Error::Invariant("Q(0) ≠ 0".into()));
        }
        for i in 0..n {
            if frac(self.bil[i][i] - self.qval[i] * Q::from_integer(2)) != Q::zero() {
                return Err(Error::Invariant(format!("(μ{i},μ{i}) ≠ 2Q(μ{i})")));
            }
            for j in 0..n {
                if self.bil[i][j] != self.bil[j][i] {
                    return Err(Error::Invariant("pairing is not symmetric".into()));
                }
            }
        }
        Ok(())
    }
}

/// Square matrix over Q(ζ₈).
#[derive(Clone, Debug, PartialEq)]
pub struct WeilMatrix {
    pub m: Vec<Vec<Cyclo8>>,
}

impl WeilMatrix {
    pub fn identity(n: usize) -> Self {
        let m = (0..n).map(|i| (0..n).map(|j| if i == j { Cyclo8::one() } else { Cyclo8::zero() }).collect()).collect();
        Self { m }
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    /// Conjugate transpose, which is the inverse for the (unitary) Weil matrices.
    pub fn adjoint(&self) -> Self {
        let n = self.dim();
        Self { m: (0..n).map(|i| (0..n).map(|j| self.m[j][i].conj()).collect()).collect() }
    }

    pub fn apply(&self, v: &[Cyclo8]) -> Vec<Cyclo8> {
        self.m.iter().map(|row| row.iter().zip(v).fold(Cyclo8::zero(), |acc, (a, b)| acc + *a * *b)).collect()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.dim()), |acc, _| &acc * self)
    }

    /// Entry (i, j) as a rational, if it is one.
    pub fn rational(&self, i: usize, j: usize) -> Option<Q> {
        self.m[i][j].as_rational()
    }
}

impl Mul for &WeilMatrix {
    type Output = WeilMatrix;
    fn mul(self, o: &WeilMatrix) -> WeilMatrix {
        let n = self.dim();
        let m = (0..n)
            .map(|i| (0..n).map(|j| (0..n).fold(Cyclo8::zero(), |acc, k| acc + self.m[i][k] * o.m[k][j])).collect())
            .collect();
        WeilMatrix { m }
    }
}

impl fmt::Display for WeilMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.m {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

fn weil_t(module: &DiscModule, sign: i64) -> WeilMatrix {
    let n = module.size();
    let mut w = WeilMatrix::identity(n);
    for i in 0..n {
        w.m[i][i] = Cyclo8::e(-module.qval[i] * Q::from_integer(sign)).expect("Q values lie in (1/8)Z");
    }
    w
}

fn weil_s(module: &DiscModule) -> Result<WeilMatrix> {
    let n = module.size();
    let scale = Cyclo8::inv_sqrt(n as i64)
        .ok_or_else(|| Error::Unsupported(format!("√{n} is not in Q(ζ₈)")))?
        * module.signature_factor();
    let mut w = WeilMatrix::identity(n);
    // Column μ holds ω(S)φ_μ = c·Σ_ν e((μ,ν)) φ_ν.
    for mu in 0..n {
        for nu in 0..n {
            w.m[nu][mu] = scale * Cyclo8::e(module.bil[mu][nu]).expect("pairings lie in (1/8)Z");
        }
    }
    Ok(w)
}

/// ω_L(γ), assembled from T and S along the Euclidean word of γ.
pub fn weil_matrix(module: &DiscModule, gamma: &Sl2z) -> Result<WeilMatrix> {
    Sl2z::new(gamma.a, gamma.b, gamma.c, gamma.d)?;
    let t = weil_t(module, 1);
    let t_inv = weil_t(module, -1);
    let s = weil_s(module)?;
    Ok(gamma.word().into_iter().fold(WeilMatrix::identity(module.size()), |acc, g| match g {
        Gen::T => &acc * &t,
        Gen::TInv => &acc * &t_inv,
        Gen::S => &acc * &s,
    }))
}

/// Rank over Q(ζ₈) by Gaussian elimination.
pub fn rank(rows: &[Vec<Cyclo8>]) -> usize {
    let mut a: Vec<Vec<Cyclo8>> = rows.to_vec();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, piv);
        let inv = a[r][col].inv().expect("nonzero pivot");
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col] * inv;
                for j in col..ncols {
                    let x = a[r][j];
                    a[i][j] = a[i][j] - f * x;
                }
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Cyclo8 {
        Cyclo8::from_rational(Q::new(n, d))
    }

    #[test]
    fn level2_values() {
        let m = DiscModule::level2();
        assert_eq!(m.qval, vec![Q::zero(), Q::zero(), Q::zero(), Q::new(1, 2)]);
        assert_eq!(m.bil[1][2], Q::new(1, 2));
        assert_eq!(m.bil[1][3], Q::new(1, 2));
        assert_eq!(m.bil[2][3], Q::new(1, 2));
        assert!((0..4).all(|i| m.bil[i][i].is_zero()));
        assert_eq!(m.signature_factor(), Cyclo8::one());
        m.check().unwrap();
    }

    #[test]
    fn generator_matrices() {
        let m = DiscModule::level2();
        let t = weil_matrix(&m, &Sl2z::T).unwrap();
        let diag: Vec<Cyclo8> = (0..4).map(|i| t.m[i][i]).collect();
        assert_eq!(diag, vec![q(1, 1), q(1, 1), q(1, 1), q(-1, 1)]);
        let s = weil_matrix(&m, &Sl2z::S).unwrap();
        let phi0 = vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1)];
        assert_eq!(s.apply(&phi0), vec![q(1, 2); 4]);
        assert_eq!(weil_matrix(&m, &Sl2z::ID).unwrap(), WeilMatrix::identity(4));
        for row in &s.m {
            for x in row {
                let r = x.as_rational().unwrap();
                assert!(r == Q::new(1, 2) || r == Q::new(-1, 2));
            }
        }
    }

    #[test]
    fn unitary() {
        let m = DiscModule::level2();
        for g in [Sl2z::S, Sl2z::T, Sl2z { a: 2, b: 1, c: 1, d: 1 }] {
            let w = weil_matrix(&m, &g).unwrap();
            assert_eq!(&w * &w.adjoint(), WeilMatrix::identity(4));
        }
    }

    #[test]
    fn homomorphism_on_products() {
        let m = DiscModule::level2();
        let a = Sl2z { a: 2, b: 1, c: 1, d: 1 };
        let b = Sl2z { a: 1, b: 0, c: -3, d: 1 };
        let lhs = weil_matrix(&m, &(a * b)).unwrap();
        let rhs = &weil_matrix(&m, &a).unwrap() * &weil_matrix(&m, &b).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn trivial_module() {
        let m = DiscModule::trivial();
        assert_eq!(weil_matrix(&m, &Sl2z::S).unwrap(), WeilMatrix::identity(1));
    }
}
