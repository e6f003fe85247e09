//! Finite posets stored as dense up-set bitmaps.
//!
//! The relation is stored exactly as constructed; reflexivity is added but
//! transitivity and antisymmetry are *checked* by [`Poset::order_violations`],
//! never assumed. Several posets in this crate are defined through witness
//! searches, so the check is meaningful.

use std::fmt;

use fixedbitset::FixedBitSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderViolation {
    Antisymmetry(usize, usize),
    /// `a <= b <= c` but not `a <= c`.
    Transitivity(usize, usize, usize),
}

impl fmt::Display for OrderViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderViolation::Antisymmetry(a, b) => {
                write!(f, "antisymmetry fails for #{a} and #{b}")
            }
            OrderViolation::Transitivity(a, b, c) => {
                write!(f, "transitivity fails for #{a} <= #{b} <= #{c}")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Poset<T> {
    elements: Vec<T>,
    up: Vec<FixedBitSet>,
}

impl<T> Poset<T> {
    /// Builds the relation by evaluating `leq` on every ordered pair.
    pub fn from_fn(elements: Vec<T>, leq: impl Fn(&T, &T) -> bool) -> Self {
        let n = elements.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            for j in 0..n {
                if i == j || leq(&elements[i], &elements[j]) {
                    row.insert(j);
                }
            }
        }
        Poset { elements, up }
    }

    /// Builds the relation from explicit `(lower, upper)` pairs plus reflexivity.
    pub fn from_relation(elements: Vec<T>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let n = elements.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(i);
        }
        for (a, b) in pairs {
            up[a].insert(b);
        }
        Poset { elements, up }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &T {
        &self.elements[i]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// Indices of all `b` with `a <= b`.
    pub fn up_set(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.up[a].ones()
    }

    fn down_sets(&self) -> Vec<FixedBitSet> {
        let n = self.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in self.up.iter().enumerate() {
            for b in row.ones() {
                down[b].insert(a);
            }
        }
        down
    }

    /// Covering pairs `(lower, upper)`: `lower < upper` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let down = self.down_sets();
        let mut out = Vec::new();
        for a in 0..self.len() {
            let mut strict = self.up[a].clone();
            strict.set(a, false);
            for b in strict.ones() {
                // b is a cover iff the only element of strict-up(a) below b is b itself
                let between = strict.intersection(&down[b]).any(|k| k != b);
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| self.up[a].ones().all(|b| b == a))
            .collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        let down = self.down_sets();
        (0..self.len())
            .filter(|&a| down[a].ones().all(|b| b == a))
            .collect()
    }

    /// All antisymmetry and transitivity failures (at most `limit` of them).
    pub fn order_violations(&self, limit: usize) -> Vec<OrderViolation> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in self.up[a].ones() {
                if a < b && self.leq(b, a) {
                    out.push(OrderViolation::Antisymmetry(a, b));
                }
                if !self.up[b].is_subset(&self.up[a]) {
                    let c = self.up[b].difference(&self.up[a]).next().unwrap();
                    out.push(OrderViolation::Transitivity(a, b, c));
                }
                if out.len() >= limit {
                    return out;
                }
            }
        }
        out
    }

    pub fn is_partial_order(&self) -> bool {
        self.order_violations(1).is_empty()
    }

    /// Same elements, reversed order.
    pub fn dual(&self) -> Poset<T>
    where
        T: Clone,
    {
        Poset {
            elements: self.elements.clone(),
            up: self.down_sets(),
        }
    }

    pub fn map<U>(self, f: impl FnMut(T) -> U) -> Poset<U> {
        Poset {
            elements: self.elements.into_iter().map(f).collect(),
            up: self.up,
        }
    }

    /// Adds `(lower, upper)` to the relation.
    pub fn relate(&mut self, lower: usize, upper: usize) {
        self.up[lower].insert(upper);
    }

    /// Hasse diagram in Graphviz DOT syntax; edges point from lower to upper.
    pub fn to_dot(&self, name: &str, label: impl Fn(usize, &T) -> String) -> String {
        let mut s = format!("digraph \"{name}\" {{\n  rankdir=BT;\n");
        for (i, x) in self.elements.iter().enumerate() {
            let l = label(i, x).replace('"', "\\\"");
            s.push_str(&format!("  n{i} [label=\"{l}\"];\n"));
        }
        for (a, b) in self.covers() {
            s.push_str(&format!("  n{a} -> n{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}
