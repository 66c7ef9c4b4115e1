//! Expansion of `p(x) = (x_1 + s_1) ... (x_n + s_n)` in the binomial basis.
//!
//! Each root-to-leaf path of the labeled tree gives one basis element
//! `q_S = (x_1 + r_1) ... (x_n + r_n) / n!` and one integer coefficient
//! `C_S`, the product of the multiplicities along the path. The expansion
//! `p = sum_S C_S q_S` is checked exactly on the grid `{0,1}^n`, which
//! suffices because both sides are multilinear.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::tree::LabeledTree;

/// Bit string `b_1 ... b_n`; `b_j` set means `j` belongs to the subset and
/// step `j` of the path goes to the left child.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Bits(Vec<bool>);

impl Bits {
    pub fn new(bits: Vec<bool>) -> Self {
        Bits(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    /// Members of the subset, 1-based and ascending.
    pub fn subset(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn from_subset(subset: &[usize], n: usize) -> Result<Self> {
        let mut bits = vec![false; n];
        for &i in subset {
            if i == 0 || i > n {
                return Err(Error::InvalidInput(format!(
                    "subset element {i} outside 1..={n}"
                )));
            }
            bits[i - 1] = true;
        }
        Ok(Bits(bits))
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Bits {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        text.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidInput(format!("bad bit {other:?} in {text:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Bits)
    }
}

/// All bit strings of length `n` in ascending binary order.
pub fn all_bitstrings(n: usize) -> Vec<Bits> {
    (0u64..1 << n)
        .map(|v| Bits((0..n).rev().map(|k| v >> k & 1 == 1).collect()))
        .collect()
}

pub fn subset_to_bits(subset: &[usize], n: usize) -> Result<Bits> {
    Bits::from_subset(subset, n)
}

pub fn bits_to_subset(bits: &Bits) -> Vec<usize> {
    bits.subset()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub bits: Bits,
    /// `r_j` of the factor `(x_j + r_j)` at each step.
    pub roots: Vec<i64>,
    pub coefficient: BigInt,
}

impl BasisElement {
    pub fn subset(&self) -> Vec<usize> {
        self.bits.subset()
    }

    /// `q_S(x) = prod_j (x_j + r_j) / n!`.
    pub fn eval_q(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.roots.len() {
            return Err(Error::DimensionMismatch {
                expected: self.roots.len(),
                found: x.len(),
            });
        }
        let product: Rational = x
            .iter()
            .zip(&self.roots)
            .map(|(xj, &r)| xj + &Rational::integer(r))
            .product();
        Ok(product / Rational::integer(factorial(self.roots.len())))
    }

    /// `q_S` written out, e.g. `(x1+1)(x2+2)/2`.
    pub fn q_formula(&self) -> String {
        let mut out = String::new();
        for (j, &r) in self.roots.iter().enumerate() {
            match r {
                0 => out.push_str(&format!("(x{})", j + 1)),
                r if r > 0 => out.push_str(&format!("(x{}+{r})", j + 1)),
                r => out.push_str(&format!("(x{}{r})", j + 1)),
            }
        }
        out.push_str(&format!("/{}", factorial(self.roots.len())));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub s: Vec<i64>,
    /// One element per subset, ascending by bit string.
    pub elements: Vec<BasisElement>,
}

impl Decomposition {
    pub fn n(&self) -> usize {
        self.s.len()
    }

    pub fn coefficient_sum(&self) -> BigInt {
        self.elements.iter().map(|e| &e.coefficient).sum()
    }

    /// `sum_S C_S q_S(x)`.
    pub fn evaluate(&self, x: &[Rational]) -> Result<Rational> {
        let mut total = Rational::zero();
        for e in &self.elements {
            total += &(e.eval_q(x)? * Rational::integer(e.coefficient.clone()));
        }
        Ok(total)
    }

    pub fn element(&self, bits: &Bits) -> Option<&BasisElement> {
        self.elements
            .binary_search_by(|e| e.bits.cmp(bits))
            .ok()
            .map(|i| &self.elements[i])
    }
}

/// Walks every maximal path of the tree (left subtree first) and collects
/// the path offsets and multiplicity products, then sorts by bit string.
pub fn roots_and_coefs(tree: &LabeledTree) -> Decomposition {
    struct Walk<'a> {
        tree: &'a LabeledTree,
        bits: Vec<bool>,
        roots: Vec<i64>,
        phis: Vec<i64>,
        out: Vec<BasisElement>,
    }

    impl Walk<'_> {
        fn visit(&mut self, index: usize, went_left: bool) {
            let node = *self.tree.node(index).expect("heap index within tree");
            self.bits.push(went_left);
            self.roots.push(node.r);
            self.phis.push(node.phi);
            if node.is_leaf() {
                let coefficient = self.phis.iter().map(|&p| BigInt::from(p)).product();
                self.out.push(BasisElement {
                    bits: Bits(self.bits.clone()),
                    roots: self.roots.clone(),
                    coefficient,
                });
            } else {
                self.visit(2 * index, true);
                self.visit(2 * index + 1, false);
            }
            self.bits.pop();
            self.roots.pop();
            self.phis.pop();
        }
    }

    let n = tree.n();
    let mut walk = Walk {
        tree,
        bits: Vec::with_capacity(n),
        roots: Vec::with_capacity(n),
        phis: Vec::with_capacity(n),
        out: Vec::with_capacity(1 << n),
    };
    walk.visit(2, true);
    walk.visit(3, false);
    let mut elements = walk.out;
    elements.sort_by(|a, b| a.bits.cmp(&b.bits));
    Decomposition { s: tree.roots().to_vec(), elements }
}

/// Convenience: generate the tree and extract the expansion.
pub fn decompose(s: &[i64]) -> Result<Decomposition> {
    Ok(roots_and_coefs(&LabeledTree::generate(s)?))
}

/// `p(x) = prod_j (x_j + s_j)`.
pub fn eval_p(s: &[i64], x: &[Rational]) -> Result<Rational> {
    if x.len() != s.len() {
        return Err(Error::DimensionMismatch { expected: s.len(), found: x.len() });
    }
    Ok(x.iter()
        .zip(s)
        .map(|(xj, &sj)| xj + &Rational::integer(sj))
        .product())
}

/// Checks `p = sum_S C_S q_S` as polynomials by comparing both sides at all
/// `2^n` points of `{0,1}^n`. Works with `n! * p` to stay in integers.
pub fn verify_identity(s: &[i64]) -> Result<bool> {
    let decomposition = decompose(s)?;
    Ok(identity_holds(&decomposition))
}

pub fn identity_holds(decomposition: &Decomposition) -> bool {
    let n = decomposition.n();
    let scale = factorial(n);
    let elements: Vec<(Vec<i64>, &BigInt)> = decomposition
        .elements
        .iter()
        .map(|e| (e.roots.clone(), &e.coefficient))
        .collect();
    (0u64..1 << n).all(|point| {
        let x = |j: usize| (point >> j & 1) as i64;
        let lhs: BigInt = elements
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(roots, c)| {
                let prod: BigInt = roots
                    .iter()
                    .enumerate()
                    .map(|(j, &r)| BigInt::from(x(j) + r))
                    .product();
                prod * *c
            })
            .sum();
        let rhs: BigInt = decomposition
            .s
            .iter()
            .enumerate()
            .map(|(j, &sj)| BigInt::from(x(j) + sj))
            .product::<BigInt>()
            * &scale;
        lhs == rhs
    })
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Eulerian number: permutations of `n` elements with exactly `k` descents.
pub fn eulerian(n: usize, k: usize) -> Result<BigUint> {
    if k >= n {
        return Err(Error::InvalidInput(format!(
            "Eulerian number needs 0 <= k < n, got n={n}, k={k}"
        )));
    }
    Ok(eulerian_row(n).swap_remove(k))
}

/// `A(n, 0..n)` from `A(m, k) = (k+1) A(m-1, k) + (m-k) A(m-1, k-1)`.
pub fn eulerian_row(n: usize) -> Vec<BigUint> {
    if n == 0 {
        return Vec::new();
    }
    let mut row = vec![BigUint::one()];
    for m in 2..=n {
        let next = (0..m)
            .map(|k| {
                let stay = row.get(k).map_or_else(BigUint::zero, |a| a * (k + 1));
                let grow = if k > 0 {
                    row.get(k - 1).map_or_else(BigUint::zero, |a| a * (m - k))
                } else {
                    BigUint::zero()
                };
                stay + grow
            })
            .collect();
        row = next;
    }
    row
}

/// Coefficient sums at `s = 0` grouped by subset size, against Eulerian
/// numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    pub n: usize,
    /// Index `k` holds the sum of `C_S` over `|S| = k`, for `k = 0..=n`.
    pub group_sums: Vec<BigInt>,
    /// `A(n, 0..n)`.
    pub eulerian: Vec<BigUint>,
    pub total: BigInt,
}

impl Refinement {
    pub fn holds(&self) -> bool {
        self.group_sums[0].is_zero()
            && self.group_sums[1..]
                .iter()
                .zip(&self.eulerian)
                .all(|(sum, a)| *sum == BigInt::from(a.clone()))
            && self.total == factorial(self.n)
    }
}

pub fn refinement_check(n: usize) -> Result<Refinement> {
    let decomposition = decompose(&vec![0; n])?;
    let mut group_sums = vec![BigInt::zero(); n + 1];
    for e in &decomposition.elements {
        group_sums[e.bits.subset().len()] += &e.coefficient;
    }
    Ok(Refinement {
        n,
        group_sums,
        eulerian: eulerian_row(n),
        total: decomposition.coefficient_sum(),
    })
}
