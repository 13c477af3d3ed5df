use rayon::prelude::*;

use super::set::SetF2;
use crate::bsg::TParams;
use crate::error::{check_dim, Result};
use crate::f2::PointF2;
use crate::fourier::wht_in_place;
use crate::functions::{check_enum_n, TruthTable};

/// Largest `n` for [`EdgeGraph`] and [`exhaustive_t_set`].
pub const MAX_T_SET_N: usize = 12;

/// The graph on `{(x, φ(x))}` with exact vertex weights `|f̂_x(φ(x))|`.
///
/// `(x, y) ∈ E_γ` iff `φ(x) + φ(y) = φ(x + y)` and the weights of `x`, `y` and
/// `x + y` are all at least `γ`.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeGraph {
    n: usize,
    phi: Vec<usize>,
    weight: Vec<f64>,
}

impl EdgeGraph {
    /// Weights from the exact derivative spectra of `f`.
    pub fn exact(f: &TruthTable, phi: &[PointF2]) -> Result<Self> {
        let n = f.n();
        check_enum_n("edge graph", n, MAX_T_SET_N)?;
        check_dim(1 << n, phi.len())?;
        let vals = f.values();
        let len = vals.len();
        let weight = phi
            .par_iter()
            .enumerate()
            .map(|(x, a)| {
                let mut d: Vec<f64> = (0..len).map(|y| vals[y] * vals[y ^ x]).collect();
                wht_in_place(&mut d);
                (d[a.index()] / len as f64).abs()
            })
            .collect();
        Ok(Self {
            n,
            phi: phi.iter().map(PointF2::index).collect(),
            weight,
        })
    }

    /// A graph from given `φ` and weights, both indexed by `x`.
    pub fn new(n: usize, phi: &[PointF2], weight: Vec<f64>) -> Result<Self> {
        check_enum_n("edge graph", n, MAX_T_SET_N)?;
        check_dim(1 << n, phi.len())?;
        check_dim(1 << n, weight.len())?;
        Ok(Self {
            n,
            phi: phi.iter().map(PointF2::index).collect(),
            weight,
        })
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn weight(&self, x: usize) -> f64 {
        self.weight[x]
    }

    #[must_use]
    pub fn is_edge(&self, x: usize, y: usize, gamma: f64) -> bool {
        let s = x ^ y;
        self.phi[x] ^ self.phi[y] == self.phi[s]
            && self.weight[x] >= gamma
            && self.weight[y] >= gamma
            && self.weight[s] >= gamma
    }

    /// `N_γ(x)`.
    #[must_use]
    pub fn neighborhood(&self, x: usize, gamma: f64) -> SetF2 {
        let mut s = SetF2::empty(self.n).expect("n is within the set cap");
        if self.weight[x] >= gamma {
            for y in 0..1usize << self.n {
                if self.is_edge(x, y, gamma) {
                    s.insert_index(y);
                }
            }
        }
        s
    }

    /// `T(u, γ1, γ2, γ3, ρ1, ρ2)`: the `v ∈ N_γ1(u)` with
    /// `Pr_{v1}[v1 ∈ N_γ2(u) and Pr_{v2}[v2 ∈ N_γ3(v) ∩ N_γ3(v1)] <= ρ1] <= ρ2`.
    #[must_use]
    pub fn t_set(&self, u: usize, p: &TParams) -> SetF2 {
        let size = (1u64 << self.n) as f64;
        let n1 = self.neighborhood(u, p.gamma1);
        let n2: Vec<SetF2> = self
            .neighborhood(u, p.gamma2)
            .indices()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&v1| self.neighborhood(v1, p.gamma3))
            .collect();
        let members: Vec<usize> = n1
            .indices()
            .collect::<Vec<_>>()
            .into_par_iter()
            .filter(|&v| {
                let nv = self.neighborhood(v, p.gamma3);
                let bad = n2
                    .iter()
                    .filter(|nb| nv.intersection_len(nb) as f64 / size <= p.rho1)
                    .count();
                bad as f64 / size <= p.rho2
            })
            .collect();
        SetF2::from_indices(self.n, members).expect("indices are in range")
    }
}

/// `T(u, ·)` for `f` and a full table of `φ`, with exact weights.
pub fn exhaustive_t_set(
    f: &TruthTable,
    phi: &[PointF2],
    u: &PointF2,
    params: &TParams,
) -> Result<SetF2> {
    check_dim(f.n(), u.n())?;
    Ok(EdgeGraph::exact(f, phi)?.t_set(u.index(), params))
}
