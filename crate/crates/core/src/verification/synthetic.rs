//! Random nested constraint families for exercising incremental
//! relaxation in isolation.
//!
//! A family is a rooted forest: ground elements are the roots, a chain
//! `(G, C₁, …, Cᵢ)` is a path from root `G` down `i` levels, and each
//! constraint is the index of the child taken. Repeated constraint sets are
//! therefore told apart by position.

use rand::Rng;

use crate::relaxation::{ConstraintChain, ExtensionCounter};

#[derive(Clone, Debug)]
struct Node {
    children: Vec<Node>,
}

impl Node {
    fn random<R: Rng + ?Sized>(depth: usize, max_children: usize, rng: &mut R) -> Self {
        let children = if depth == 0 {
            Vec::new()
        } else {
            let k = rng.random_range(1..=max_children);
            (0..k)
                .map(|_| Node::random(depth - 1, max_children, rng))
                .collect()
        };
        Node { children }
    }

    fn at(&self, path: &[u32]) -> &Node {
        path.iter()
            .fold(self, |node, &i| &node.children[i as usize])
    }
}

#[derive(Clone, Debug)]
pub struct SyntheticFamily {
    roots: Vec<Node>,
    depth: usize,
    lower: Vec<u64>,
}

impl SyntheticFamily {
    /// `ground` elements, chains of length `depth`, each node having
    /// between 1 and `max_children` children.
    pub fn random<R: Rng + ?Sized>(
        ground: usize,
        depth: usize,
        max_children: usize,
        rng: &mut R,
    ) -> Self {
        let roots: Vec<Node> = (0..ground)
            .map(|_| Node::random(depth, max_children, rng))
            .collect();
        let mut lower = vec![u64::MAX; depth];
        fn walk(node: &Node, level: usize, lower: &mut [u64]) {
            if level < lower.len() {
                lower[level] = lower[level].min(node.children.len() as u64);
                for c in &node.children {
                    walk(c, level + 1, lower);
                }
            }
        }
        for r in &roots {
            walk(r, 0, &mut lower);
        }
        SyntheticFamily {
            roots,
            depth,
            lower,
        }
    }

    pub fn ground_len(&self) -> usize {
        self.roots.len()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Every chain of full depth.
    pub fn top_level(&self) -> Vec<ConstraintChain<u32, u32>> {
        let mut out = Vec::new();
        fn walk(
            node: &Node,
            g: u32,
            path: &mut Vec<u32>,
            out: &mut Vec<ConstraintChain<u32, u32>>,
        ) {
            if node.children.is_empty() {
                out.push(ConstraintChain::new(g, path.clone()));
            }
            for (i, c) in node.children.iter().enumerate() {
                path.push(i as u32);
                walk(c, g, path, out);
                path.pop();
            }
        }
        for (g, r) in self.roots.iter().enumerate() {
            walk(r, g as u32, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl ExtensionCounter<u32, u32> for SyntheticFamily {
    fn extensions(&self, ground: &u32, constraints: &[u32]) -> u64 {
        self.roots[*ground as usize].at(constraints).children.len() as u64
    }

    fn lower_bound(&self, level: usize) -> u64 {
        self.lower[level]
    }
}
