//! The labeled complete binary tree behind the binomial basis.
//!
//! Nodes live in a heap array: node `i` (1-based) has children `2i` and
//! `2i + 1`, left first. A node at height `h >= 1` carries the factor
//! `(x_h + r) / h` and the multiplicity `phi`. Going left at step `j` puts
//! `j` in the subset indexed by the path.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Largest supported number of variables; the tree has `2^(n+1) - 1` nodes.
pub const MAX_VARIABLES: usize = 20;

/// Roots are kept small enough that every label fits comfortably in an i64.
pub const MAX_ROOT_MAGNITUDE: i64 = 1 << 40;

/// The instance `p(x) = (x_1 + s_1) ... (x_n + s_n)` evaluated or built at `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub s: Vec<i64>,
    pub x: Vec<Rational>,
}

impl ProblemSpec {
    pub fn new(s: Vec<i64>, x: Vec<Rational>) -> Result<Self> {
        check_roots(&s)?;
        if x.len() != s.len() {
            return Err(Error::DimensionMismatch {
                expected: s.len(),
                found: x.len(),
            });
        }
        Ok(ProblemSpec { s, x })
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }
}

fn check_roots(s: &[i64]) -> Result<()> {
    if s.is_empty() {
        return Err(Error::InvalidInput("need at least one variable (n >= 1)".into()));
    }
    if s.len() > MAX_VARIABLES {
        return Err(Error::InvalidInput(format!(
            "n = {} exceeds the supported maximum of {MAX_VARIABLES} (tree would have 2^{} - 1 nodes)",
            s.len(),
            s.len() + 1
        )));
    }
    if let Some(bad) = s.iter().find(|v| v.abs() > MAX_ROOT_MAGNITUDE) {
        return Err(Error::InvalidInput(format!(
            "root {bad} exceeds the supported magnitude 2^40"
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledNode {
    pub left: Option<usize>,
    pub right: Option<usize>,
    pub phi: i64,
    pub r: i64,
    pub height: usize,
}

impl LabeledNode {
    pub fn is_leaf(&self) -> bool {
        self.left.is_none()
    }
}

/// Labels `(r, phi)` of one child.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChildLabel {
    pub r: i64,
    pub phi: i64,
}

/// Labels of the two children of a node with offset `parent_r` at height
/// `parent_h`, given the root `s_child` of the variable they introduce.
pub fn child_labels(parent_r: i64, parent_h: usize, s_child: i64) -> (ChildLabel, ChildLabel) {
    let h = parent_h as i64;
    let r = parent_r;
    if r >= 0 {
        (
            ChildLabel { r: r - h, phi: (r + 1).abs() - s_child },
            ChildLabel { r: r + 1, phi: (r - h).abs() + s_child },
        )
    } else {
        (
            ChildLabel { r: r - 1, phi: (r + h).abs() - s_child },
            ChildLabel { r: r + h, phi: (r - 1).abs() + s_child },
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledTree {
    s: Vec<i64>,
    nodes: Vec<LabeledNode>,
}

impl LabeledTree {
    /// Builds `T_n` for the roots `s` (so `n = s.len()`).
    pub fn generate(s: &[i64]) -> Result<Self> {
        check_roots(s)?;
        let n = s.len();
        let total = (1usize << (n + 1)) - 1;
        let mut nodes = Vec::with_capacity(total);
        nodes.push(LabeledNode { left: None, right: None, phi: 1, r: 0, height: 0 });
        let mut i = 0;
        while nodes.len() < total {
            let parent = nodes[i];
            let (left, right) = child_labels(parent.r, parent.height, s[parent.height]);
            for label in [left, right] {
                nodes.push(LabeledNode {
                    left: None,
                    right: None,
                    phi: label.phi,
                    r: label.r,
                    height: parent.height + 1,
                });
            }
            nodes[i].left = Some(nodes.len() - 1);
            nodes[i].right = Some(nodes.len());
            i += 1;
        }
        Ok(LabeledTree { s: s.to_vec(), nodes })
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }

    pub fn roots(&self) -> &[i64] {
        &self.s
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Node by 1-based heap index.
    pub fn node(&self, index: usize) -> Result<&LabeledNode> {
        index
            .checked_sub(1)
            .and_then(|i| self.nodes.get(i))
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "node index {index} out of range 1..={}",
                    self.nodes.len()
                ))
            })
    }

    /// `(index, node)` pairs in heap order, 1-based.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &LabeledNode)> {
        self.nodes.iter().enumerate().map(|(i, node)| (i + 1, node))
    }

    /// `(x_h + r) / d` for the node at `index`, where `d` defaults to its
    /// height `h`.
    pub fn factor_value(
        &self,
        index: usize,
        x: &[Rational],
        denominator: Option<u64>,
    ) -> Result<Rational> {
        let node = self.node(index)?;
        if node.height == 0 {
            return Err(Error::InvalidInput("the root carries no factor".into()));
        }
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: x.len() });
        }
        let d = match denominator {
            Some(0) => return Err(Error::InvalidInput("denominator must be positive".into())),
            Some(d) => d as i64,
            None => node.height as i64,
        };
        Ok((&x[node.height - 1] + &Rational::integer(node.r)) / Rational::integer(d))
    }

    /// Tab-separated table with columns `v_s v_d phi_p r h`, absent children
    /// written as -1.
    pub fn table(&self) -> String {
        let mut out = String::from("v_s\tv_d\tphi_p\tr\th\n");
        let child = |c: Option<usize>| c.map_or(-1, |c| c as i64);
        for node in &self.nodes {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                child(node.left),
                child(node.right),
                node.phi,
                node.r,
                node.height
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Row<'a> {
            index: usize,
            #[serde(flatten)]
            node: &'a LabeledNode,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            n: usize,
            s: &'a [i64],
            nodes: Vec<Row<'a>>,
        }
        let doc = Doc {
            n: self.n(),
            s: &self.s,
            nodes: self.iter().map(|(index, node)| Row { index, node }).collect(),
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("tree serializes");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    // (v_s, v_d, phi, r, h) rows for T_3 with s = 0.
    const T3: [(i64, i64, i64, i64, usize); 15] = [
        (2, 3, 1, 0, 0),
        (4, 5, 1, 0, 1),
        (6, 7, 0, 1, 1),
        (8, 9, 1, -1, 2),
        (10, 11, 1, 1, 2),
        (12, 13, 2, 0, 2),
        (14, 15, 0, 2, 2),
        (-1, -1, 1, -2, 3),
        (-1, -1, 2, 1, 3),
        (-1, -1, 2, -1, 3),
        (-1, -1, 1, 2, 3),
        (-1, -1, 1, -2, 3),
        (-1, -1, 2, 1, 3),
        (-1, -1, 3, 0, 3),
        (-1, -1, 0, 3, 3),
    ];

    #[test]
    fn child_label_rule() {
        let labels = |r, h, s| {
            let (l, rt) = child_labels(r, h, s);
            ((l.r, l.phi), (rt.r, rt.phi))
        };
        assert_eq!(labels(0, 0, 0), ((0, 1), (1, 0)));
        assert_eq!(labels(-1, 2, 0), ((-2, 1), (1, 2)));
        assert_eq!(labels(2, 2, 0), ((0, 3), (3, 0)));
        assert_eq!(labels(0, 0, 1), ((0, 0), (1, 1)));
    }

    #[test]
    fn t3_matches_table() {
        let tree = LabeledTree::generate(&[0, 0, 0]).unwrap();
        assert_eq!(tree.len(), 15);
        let mut expected = String::from("v_s\tv_d\tphi_p\tr\th\n");
        for (vs, vd, phi, r, h) in T3 {
            expected.push_str(&format!("{vs}\t{vd}\t{phi}\t{r}\t{h}\n"));
        }
        assert_eq!(tree.table(), expected);
    }

    #[test]
    fn t1() {
        let tree = LabeledTree::generate(&[0]).unwrap();
        let rows: Vec<_> = tree.iter().map(|(_, n)| (n.left, n.right, n.phi, n.r, n.height)).collect();
        assert_eq!(
            rows,
            vec![
                (Some(2), Some(3), 1, 0, 0),
                (None, None, 1, 0, 1),
                (None, None, 0, 1, 1),
            ]
        );
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(matches!(LabeledTree::generate(&[]), Err(Error::InvalidInput(_))));
        assert!(matches!(LabeledTree::generate(&[0; 21]), Err(Error::InvalidInput(_))));
        assert!(matches!(LabeledTree::generate(&[1 << 41]), Err(Error::InvalidInput(_))));
        assert!(ProblemSpec::new(vec![0, 0], vec![Rational::one()]).is_err());
    }

    #[test]
    fn factor_values() {
        let x3: Vec<Rational> = vec![3.into(), 3.into(), 3.into()];
        let t3 = LabeledTree::generate(&[0, 0, 0]).unwrap();
        assert_eq!(t3.factor_value(8, &x3, None).unwrap(), Rational::new(1, 3).unwrap());
        assert_eq!(t3.factor_value(2, &x3, None).unwrap(), Rational::integer(3));
        assert!(t3.factor_value(1, &x3, None).is_err());
        assert!(t3.factor_value(16, &x3, None).is_err());
        assert!(t3.factor_value(2, &x3[..2], None).is_err());

        let x4: Vec<Rational> = vec![4.into(); 4];
        let t4 = LabeledTree::generate(&[0, 0, 0, 0]).unwrap();
        assert_eq!(t4.factor_value(5, &x4, Some(1)).unwrap(), Rational::integer(5));
    }

    #[test]
    fn heap_layout_and_heights() {
        for n in 1..=8 {
            let tree = LabeledTree::generate(&vec![0; n]).unwrap();
            assert_eq!(tree.len(), (1 << (n + 1)) - 1);
            for (i, node) in tree.iter() {
                if node.height < n {
                    assert_eq!(node.left, Some(2 * i));
                    assert_eq!(node.right, Some(2 * i + 1));
                    assert_eq!(tree.node(2 * i).unwrap().height, node.height + 1);
                } else {
                    assert!(node.is_leaf() && node.right.is_none());
                }
            }
        }
    }

    #[test]
    fn r_range_and_nonnegative_phi_at_zero_roots() {
        for n in 1..=12 {
            let tree = LabeledTree::generate(&vec![0; n]).unwrap();
            for (_, node) in tree.iter().skip(1) {
                let h = node.height as i64;
                assert!(-(h - 1) <= node.r && node.r <= h, "n={n} {node:?}");
                assert!(node.phi >= 0);
            }
        }
    }

    #[test]
    fn rows_complete() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for n in 1..=10 {
            for _ in 0..10 {
                let s: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
                let tree = LabeledTree::generate(&s).unwrap();
                for (i, node) in tree.iter().filter(|(_, n)| !n.is_leaf()) {
                    let l = tree.node(2 * i).unwrap();
                    let r = tree.node(2 * i + 1).unwrap();
                    let j = (node.height + 1) as i64;
                    for x in [0, 1] {
                        assert_eq!(
                            l.phi * (x + l.r) + r.phi * (x + r.r),
                            j * (x + s[node.height])
                        );
                    }
                }
            }
        }
    }
}
