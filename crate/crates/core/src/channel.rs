//! Dephasing Kraus channels: single-qubit, uncorrelated product, and
//! correlated (memory) channels on two and three qubits.
//!
//! Every operator here is a weighted tensor product of `I` and `sigma_z`.
//! The single-qubit error probabilities are `(p_I, p_Z) = (1 - p/2, p/2)`;
//! the correlated channels reuse exactly this pair.

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::Real;

/// Decoherence strength `p` and memory `mu` of one channel passage.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelParams<T> {
    p: T,
    mu: T,
}

impl<T: Real> ChannelParams<T> {
    pub fn new(p: T, mu: T) -> Result<Self> {
        check_unit("p", p)?;
        check_unit("mu", mu)?;
        Ok(Self { p, mu })
    }

    pub fn noiseless() -> Self {
        Self {
            p: T::zero(),
            mu: T::zero(),
        }
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    /// Probability of the identity (no error) on a single qubit.
    pub fn prob(&self, pauli: Dephasing) -> T {
        let half = self.p / T::lit(2.0);
        match pauli {
            Dephasing::I => T::one() - half,
            Dephasing::Z => half,
        }
    }

    /// Correlated conditional weight `(1 - mu) p_j + mu [i == j]`.
    fn chained(&self, i: Dephasing, j: Dephasing) -> T {
        (T::one() - self.mu) * self.prob(j) + self.mu * delta::<T>(i, j)
    }
}

fn check_unit<T: Real>(name: &'static str, v: T) -> Result<()> {
    if v >= T::zero() && v <= T::one() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value: v.to_f64_lossy(),
            min: 0.0,
            max: 1.0,
        })
    }
}

/// Pauli labels a dephasing channel can apply: index 0 (`I`) or index 3 (`sigma_z`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dephasing {
    I,
    Z,
}

impl Dephasing {
    pub const ALL: [Dephasing; 2] = [Dephasing::I, Dephasing::Z];

    pub fn matrix<T: Real>(self) -> ComplexMatrix<T> {
        match self {
            Dephasing::I => ComplexMatrix::identity(2),
            Dephasing::Z => ComplexMatrix::sigma_z(),
        }
    }

    /// Conventional Pauli index (0 or 3).
    pub fn index(self) -> u8 {
        match self {
            Dephasing::I => 0,
            Dephasing::Z => 3,
        }
    }
}

/// Kraus representation of a trace-preserving channel on a `dim`-dimensional space.
#[derive(Clone, Debug)]
pub struct KrausSet<T> {
    dim: usize,
    operators: Vec<ComplexMatrix<T>>,
}

impl<T: Real> KrausSet<T> {
    /// Validates shapes and completeness `sum A^dag A = I` at the default tolerance.
    pub fn new(dim: usize, operators: Vec<ComplexMatrix<T>>) -> Result<Self> {
        Self::with_tolerance(dim, operators, T::default_tolerance())
    }

    pub fn with_tolerance(dim: usize, operators: Vec<ComplexMatrix<T>>, tol: T) -> Result<Self> {
        if operators.is_empty() {
            return Err(Error::NotTracePreserving { defect: 1.0 });
        }
        for op in &operators {
            if op.rows() != dim || op.cols() != dim {
                return Err(Error::DimensionMismatch {
                    op: "KrausSet::new",
                    left: (dim, dim),
                    right: (op.rows(), op.cols()),
                });
            }
        }
        let set = Self { dim, operators };
        let defect = set.completeness_defect();
        if defect > tol {
            return Err(Error::NotTracePreserving {
                defect: defect.to_f64_lossy(),
            });
        }
        Ok(set)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[ComplexMatrix<T>] {
        &self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    /// `max |sum_k A_k^dag A_k - I|`.
    pub fn completeness_defect(&self) -> T {
        let mut sum = ComplexMatrix::zeros(self.dim, self.dim);
        for a in &self.operators {
            sum = sum.add(&a.dagger().matmul(a).unwrap()).unwrap();
        }
        sum.max_abs_diff(&ComplexMatrix::identity(self.dim))
    }

    /// `rho -> sum_k A_k rho A_k^dag`, re-validated as a density matrix.
    pub fn apply(&self, rho: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                op: "apply_channel",
                left: (self.dim, self.dim),
                right: (rho.dim(), rho.dim()),
            });
        }
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for a in &self.operators {
            out = out.add(&a.conjugate(rho.matrix())?)?;
        }
        DensityMatrix::new(out)
    }
}

fn weighted<T: Real>(weight: T, paulis: &[Dephasing]) -> ComplexMatrix<T> {
    let op = paulis[1..]
        .iter()
        .fold(paulis[0].matrix::<T>(), |acc, s| acc.kron(&s.matrix()));
    op.scale_real(weight.max(T::zero()).sqrt())
}

/// `A_0 = sqrt(1 - p/2) I`, `A_1 = sqrt(p/2) sigma_z`. `mu` is ignored.
pub fn dephasing_single<T: Real>(params: &ChannelParams<T>) -> KrausSet<T> {
    let ops = Dephasing::ALL
        .iter()
        .map(|&s| weighted(params.prob(s), &[s]))
        .collect();
    KrausSet::new(2, ops).expect("single-qubit dephasing is trace preserving")
}

/// Uncorrelated `n`-fold extension `A_{k_n} (x) ... (x) A_{k_1}` over all index strings.
///
/// Operators are ordered with the leftmost tensor factor varying slowest.
pub fn product_channel<T: Real>(single: &KrausSet<T>, n: usize) -> Result<KrausSet<T>> {
    if n == 0 {
        return Err(Error::OutOfRange {
            name: "n",
            value: 0.0,
            min: 1.0,
            max: f64::INFINITY,
        });
    }
    let mut ops = single.operators().to_vec();
    for _ in 1..n {
        ops = ops
            .iter()
            .flat_map(|a| single.operators().iter().map(move |b| a.kron(b)))
            .collect();
    }
    KrausSet::new(single.dim().pow(n as u32), ops)
}

/// Two consecutive qubits with memory: `A_ij = sqrt(p_i [(1 - mu) p_j + mu delta_ij]) s_i (x) s_j`.
pub fn correlated_pair<T: Real>(params: &ChannelParams<T>) -> KrausSet<T> {
    let mut ops = Vec::with_capacity(4);
    for i in Dephasing::ALL {
        for j in Dephasing::ALL {
            let w = params.prob(i) * params.chained(i, j);
            ops.push(weighted(w, &[i, j]));
        }
    }
    KrausSet::new(4, ops).expect("correlated pair channel is trace preserving")
}

/// Three-qubit memory channel
/// `A_ijk = sqrt([(1 - mu) p_i + mu delta_ij][(1 - mu) p_j + mu delta_jk] p_k) s_i (x) s_j (x) s_k`.
///
/// The chaining is kept exactly in this asymmetric form (first bracket keyed
/// on `i`, second on `j`, bare `p_k`); it is not symmetrised over qubits.
pub fn correlated_triple<T: Real>(params: &ChannelParams<T>) -> KrausSet<T> {
    let mut ops = Vec::with_capacity(8);
    for i in Dephasing::ALL {
        for j in Dephasing::ALL {
            for k in Dephasing::ALL {
                let w = triple_weight(params, i, j, k);
                ops.push(weighted(w, &[i, j, k]));
            }
        }
    }
    KrausSet::new(8, ops).expect("correlated triple channel is trace preserving")
}

/// Error probability attached to `s_i (x) s_j (x) s_k` in [`correlated_triple`].
pub fn triple_weight<T: Real>(
    params: &ChannelParams<T>,
    i: Dephasing,
    j: Dephasing,
    k: Dephasing,
) -> T {
    let first = (T::one() - params.mu) * params.prob(i) + params.mu * delta::<T>(i, j);
    let second = (T::one() - params.mu) * params.prob(j) + params.mu * delta::<T>(j, k);
    first * second * params.prob(k)
}

fn delta<T: Real>(a: Dephasing, b: Dephasing) -> T {
    if a == b {
        T::one()
    } else {
        T::zero()
    }
}

/// Free-function form of [`KrausSet::apply`].
pub fn apply_channel<T: Real>(
    ks: &KrausSet<T>,
    rho: &DensityMatrix<T>,
) -> Result<DensityMatrix<T>> {
    ks.apply(rho)
}
