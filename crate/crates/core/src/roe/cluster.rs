//! Finite model of the representations at a finite orbit: clusters of a
//! pattern `P`, translations acting the same way on every cluster from
//! some index on, and the induced action on `C^P`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::band::BandOperator;
use super::linalg::Matrix;
use crate::error::{usage, Error, Result};
use crate::rational::{self, Rational};
use crate::space::{PointId, PointSet, Window};
use crate::translations::PartialTranslation;
use crate::zoo::{make_cluster_space, Growth, Pattern};

/// A partial injection of the pattern's points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Option<usize>>", into = "Vec<Option<usize>>")]
pub struct TailTranslation {
    map: Vec<Option<usize>>,
}

impl TryFrom<Vec<Option<usize>>> for TailTranslation {
    type Error = Error;
    fn try_from(map: Vec<Option<usize>>) -> Result<Self> {
        TailTranslation::new(map)
    }
}

impl From<TailTranslation> for Vec<Option<usize>> {
    fn from(t: TailTranslation) -> Self {
        t.map
    }
}

impl TailTranslation {
    /// `map[q]` is the image of `q`, if defined.
    pub fn new(map: Vec<Option<usize>>) -> Result<Self> {
        let k = map.len();
        let mut hit = alloc::vec![false; k];
        for (q, t) in map.iter().enumerate() {
            if let Some(t) = *t {
                if t >= k {
                    return Err(usage!("tail translation sends {q} outside the pattern"));
                }
                if hit[t] {
                    return Err(usage!("tail translation is not injective at {t}"));
                }
                hit[t] = true;
            }
        }
        Ok(TailTranslation { map })
    }

    pub fn identity(k: usize) -> Self {
        TailTranslation { map: (0..k).map(Some).collect() }
    }

    /// `q -> q + 1`, undefined on the last point.
    pub fn shift(k: usize) -> Self {
        TailTranslation { map: (0..k).map(|q| (q + 1 < k).then_some(q + 1)).collect() }
    }

    pub fn cyclic(k: usize) -> Self {
        TailTranslation { map: (0..k).map(|q| Some((q + 1) % k)).collect() }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, q: usize) -> Option<usize> {
        self.map[q]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        TailTranslation { map: other.map.iter().map(|t| t.and_then(|t| self.map[t])).collect() }
    }

    /// `M_t` with `M_t e_q = e_{t(q)}`.
    pub fn matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.len(), self.len());
        for (q, t) in self.map.iter().enumerate() {
            if let Some(t) = *t {
                m[(t, q)] = rational::one();
            }
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterLimitRep {
    pub k: usize,
    pub translations: Vec<Matrix>,
    pub diagonals: Vec<Matrix>,
}

pub fn cluster_rep(pattern: &Pattern, gens: &[TailTranslation], diags: &[Vec<Rational>]) -> Result<ClusterLimitRep> {
    let k = pattern.len();
    if let Some(t) = gens.iter().find(|t| t.len() != k) {
        return Err(usage!("tail translation on {} points for a pattern of {k}", t.len()));
    }
    if let Some(d) = diags.iter().find(|d| d.len() != k) {
        return Err(usage!("limit diagonal with {} values for a pattern of {k}", d.len()));
    }
    Ok(ClusterLimitRep {
        k,
        translations: gens.iter().map(TailTranslation::matrix).collect(),
        diagonals: diags.iter().map(|d| Matrix::diagonal(d)).collect(),
    })
}

/// One letter of a word in the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "gen", content = "index", rename_all = "snake_case")]
pub enum Letter {
    Translation(usize),
    Adjoint(usize),
    Diagonal(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: Rational,
    /// Applied right to left, as a matrix product. Empty means the unit.
    pub word: Vec<Letter>,
}

/// A rational combination of words in the tail generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailExpr {
    pub terms: Vec<Term>,
}

impl ClusterLimitRep {
    fn letter(&self, l: Letter) -> Result<Matrix> {
        let missing = || usage!("generator {l:?} does not exist");
        Ok(match l {
            Letter::Translation(i) => self.translations.get(i).ok_or_else(missing)?.clone(),
            Letter::Adjoint(i) => self.translations.get(i).ok_or_else(missing)?.transpose(),
            Letter::Diagonal(i) => self.diagonals.get(i).ok_or_else(missing)?.clone(),
        })
    }

    /// `pi(a)`.
    pub fn evaluate(&self, expr: &TailExpr) -> Result<Matrix> {
        let mut total = Matrix::zeros(self.k, self.k);
        for term in &expr.terms {
            let mut m = Matrix::identity(self.k);
            for &l in &term.word {
                m = &m * &self.letter(l)?;
            }
            total = &total + &m.scale(term.coeff);
        }
        Ok(total)
    }
}

/// Dimension of the commutant of the generated *-algebra, i.e. of
/// `{X : XM = MX}` for all generators `M` and their adjoints.
pub fn commutant_dimension(rep: &ClusterLimitRep) -> usize {
    let k = rep.k;
    let n = k * k;
    let mut gens: Vec<Matrix> = Vec::new();
    for t in &rep.translations {
        gens.push(t.clone());
        gens.push(t.transpose());
    }
    gens.extend(rep.diagonals.iter().cloned());
    if gens.is_empty() {
        return n;
    }
    // unknown X_{il} sits at column i*k + l
    let mut system = Matrix::zeros(gens.len() * n, n);
    for (g, m) in gens.iter().enumerate() {
        for i in 0..k {
            for j in 0..k {
                let row = g * n + i * k + j;
                for l in 0..k {
                    // (XM)_{ij} = sum_l X_{il} M_{lj}
                    system[(row, i * k + l)] += m[(l, j)];
                    // (MX)_{ij} = sum_l M_{il} X_{lj}
                    system[(row, l * k + j)] -= m[(i, l)];
                }
            }
        }
    }
    n - system.rank()
}

/// The cluster space of a pattern, with tail generators acting uniformly
/// on clusters `stabilize..` and as the identity (translations) or 1
/// (diagonals) on earlier clusters.
#[derive(Clone, Debug)]
pub struct ClusterRealization {
    pub window: Window,
    pub stabilize: u64,
    k: usize,
}

impl ClusterRealization {
    /// Clusters `1..=stabilize + 1`; the last one is the probe cluster.
    pub fn new(pattern: &Pattern, stabilize: u64) -> Result<Self> {
        if stabilize == 0 {
            return Err(usage!("stabilization index must be at least 1"));
        }
        let gap = Growth::linear(pattern.diameter() + 1, 0);
        let window = make_cluster_space(pattern.clone(), gap, stabilize + 1)?;
        Ok(ClusterRealization { window, stabilize, k: pattern.len() })
    }

    pub fn probe(&self) -> u64 {
        self.stabilize + 1
    }

    fn id(&self, n: u64, q: usize) -> PointId {
        self.window.id_of(&[n as i64, q as i64]).expect("cluster point")
    }

    pub fn translation(&self, t: &TailTranslation) -> Result<PartialTranslation> {
        let mut pairs = Vec::new();
        for n in 1..=self.probe() {
            for q in 0..self.k {
                let image = if n < self.stabilize { Some(q) } else { t.get(q) };
                if let Some(p) = image {
                    pairs.push((self.id(n, q), self.id(n, p)));
                }
            }
        }
        PartialTranslation::new(&self.window, pairs)
    }

    pub fn diagonal(&self, values: &[Rational]) -> BandOperator {
        let mut d = BTreeMap::new();
        for n in 1..=self.probe() {
            for (q, v) in values.iter().enumerate() {
                d.insert(self.id(n, q), if n < self.stabilize { rational::one() } else { *v });
            }
        }
        BandOperator::diagonal(&d)
    }

    /// The band operator realizing `expr` on the window.
    pub fn realize(&self, expr: &TailExpr, gens: &[TailTranslation], diags: &[Vec<Rational>]) -> Result<BandOperator> {
        let w = &self.window;
        let mut letters: BTreeMap<Letter, BandOperator> = BTreeMap::new();
        let mut total = BandOperator::zero();
        for term in &expr.terms {
            let all: PointSet = w.ids().collect();
            let mut op = BandOperator::indicator(&all);
            for &l in &term.word {
                if !letters.contains_key(&l) {
                    let missing = || usage!("generator {l:?} does not exist");
                    let built = match l {
                        Letter::Translation(i) => BandOperator::vf(&self.translation(gens.get(i).ok_or_else(missing)?)?),
                        Letter::Adjoint(i) => {
                            BandOperator::vf(&self.translation(gens.get(i).ok_or_else(missing)?)?).adjoint()
                        }
                        Letter::Diagonal(i) => self.diagonal(diags.get(i).ok_or_else(missing)?),
                    };
                    letters.insert(l, built);
                }
                op = op.multiply(&letters[&l], w);
            }
            total = total.add(&op.scalar(term.coeff, w), w);
        }
        Ok(total)
    }

    /// The `k x k` block of `op` on cluster `n`.
    pub fn block(&self, op: &BandOperator, n: u64) -> Matrix {
        let mut m = Matrix::zeros(self.k, self.k);
        for p in 0..self.k {
            for q in 0..self.k {
                m[(p, q)] = op.get(self.id(n, p), self.id(n, q));
            }
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelVerdict {
    /// `pi(a) = 0` in the matrix model.
    pub in_kernel: bool,
    /// `E(a* a)` vanishes on the probe cluster of the window realization.
    pub limit_diagonal_zero: bool,
}

/// Decides `pi(a) = 0` in the matrix model and, independently, whether the
/// diagonal of `a* a` vanishes on a cluster past the stabilization index of
/// the window realization. The two must agree.
pub fn kernel_check(
    expr: &TailExpr,
    rep: &ClusterLimitRep,
    realization: &ClusterRealization,
    gens: &[TailTranslation],
    diags: &[Vec<Rational>],
) -> Result<KernelVerdict> {
    let in_kernel = rep.evaluate(expr)?.is_zero();
    let w = &realization.window;
    let a = realization.realize(expr, gens, diags)?;
    let e = a.adjoint().multiply(&a, w).expectation();
    let n = realization.probe();
    let limit_diagonal_zero = (0..rep.k).all(|q| e.get(realization.id(n, q)).is_zero());
    if in_kernel != limit_diagonal_zero {
        return Err(Error::Invariant(format!(
            "pi(a) = 0 is {in_kernel} but E(a*a) = 0 on the orbit is {limit_diagonal_zero} for {expr:?}"
        )));
    }
    Ok(KernelVerdict { in_kernel, limit_diagonal_zero })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn indicators(k: usize) -> Vec<Vec<Rational>> {
        (0..k)
            .map(|q| (0..k).map(|p| if p == q { rational::one() } else { rational::zero() }).collect())
            .collect()
    }

    #[test]
    fn shift_matrix_is_nilpotent() {
        let m = TailTranslation::shift(3).matrix();
        assert_eq!(m[(1, 0)], rational::one());
        assert_eq!(m[(2, 1)], rational::one());
        assert!((&(&m * &m) * &m).is_zero());
        assert_eq!(TailTranslation::identity(3).matrix(), Matrix::identity(3));
        assert!(TailTranslation::new(alloc::vec![None, None]).unwrap().matrix().is_zero());
        assert!(TailTranslation::new(alloc::vec![Some(1), Some(1)]).is_err());
    }

    #[test]
    fn commutant_dimensions() {
        let p = Pattern::path(3).unwrap();
        let full = cluster_rep(&p, &[TailTranslation::cyclic(3)], &indicators(3)).unwrap();
        assert_eq!(commutant_dimension(&full), 1);
        let id = cluster_rep(&p, &[TailTranslation::identity(3)], &[]).unwrap();
        assert_eq!(commutant_dimension(&id), 9);
        let diag = cluster_rep(&p, &[], &indicators(3)).unwrap();
        assert_eq!(commutant_dimension(&diag), 3);
    }

    #[test]
    fn trivial_kernel_cases() {
        let p = Pattern::path(3).unwrap();
        let gens = [TailTranslation::shift(3)];
        let diags = indicators(3);
        let rep = cluster_rep(&p, &gens, &diags).unwrap();
        let real = ClusterRealization::new(&p, 2).unwrap();
        let t = Letter::Translation(0);
        let zero = TailExpr {
            terms: alloc::vec![
                Term { coeff: rational::one(), word: alloc::vec![t] },
                Term { coeff: -rational::one(), word: alloc::vec![t] },
            ],
        };
        let v = kernel_check(&zero, &rep, &real, &gens, &diags).unwrap();
        assert!(v.in_kernel && v.limit_diagonal_zero);
        let point = TailExpr { terms: alloc::vec![Term { coeff: rational::one(), word: alloc::vec![Letter::Diagonal(1)] }] };
        let v = kernel_check(&point, &rep, &real, &gens, &diags).unwrap();
        assert!(!v.in_kernel && !v.limit_diagonal_zero);
    }
}
