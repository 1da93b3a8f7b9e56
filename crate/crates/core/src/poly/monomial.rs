use std::cmp::Ordering;
use std::fmt;

/// Exponent vector, one entry per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// `x_index^power` in a ring with `nvars` variables.
    pub fn var_power(nvars: usize, index: usize, power: u32) -> Self {
        let mut e = vec![0; nvars];
        e[index] = power;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, weights: &[u64]) -> u64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as u64 * w).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `Some(i)` when the monomial is a positive power of the single variable `x_i`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut Vec<u32> {
        &mut self.0
    }

    /// Renders `x^2*y` style text; the unit monomial renders as `1`.
    pub fn display<'a>(&'a self, vars: &'a [String]) -> impl fmt::Display + 'a {
        MonomialDisplay { monomial: self, vars }
    }
}

struct MonomialDisplay<'a> {
    monomial: &'a Monomial,
    vars: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, name) in self.monomial.0.iter().zip(self.vars) {
            if *e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Kind of a monomial order; all act on variables after the order's permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Degrevlex,
    Lex,
    /// Degrevlex on the first `split` (permuted) variables, ties broken by
    /// degrevlex on the rest. Eliminates the first block.
    Block(usize),
}

/// A monomial order: a kind plus a variable priority permutation.
///
/// `permutation[k]` is the ring index of the variable with priority `k`
/// (priority 0 is the largest variable).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    permutation: Vec<usize>,
}

impl MonomialOrder {
    pub fn degrevlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Degrevlex,
            permutation: (0..nvars).collect(),
        }
    }

    pub fn lex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            permutation: (0..nvars).collect(),
        }
    }

    pub fn block(nvars: usize, split: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Block(split),
            permutation: (0..nvars).collect(),
        }
    }

    /// Returns `None` unless `permutation` is a permutation of `0..len`.
    pub fn with_permutation(kind: OrderKind, permutation: Vec<usize>) -> Option<Self> {
        let n = permutation.len();
        let mut seen = vec![false; n];
        for &p in &permutation {
            if p >= n || seen[p] {
                return None;
            }
            seen[p] = true;
        }
        if let OrderKind::Block(s) = kind {
            if s > n {
                return None;
            }
        }
        Some(MonomialOrder { kind, permutation })
    }

    /// Elimination order for keeping only `keep`: every other variable sits in
    /// the first block, `keep` alone in the second.
    pub fn eliminating_all_but(nvars: usize, keep: usize) -> Self {
        let mut perm: Vec<usize> = (0..nvars).filter(|&i| i != keep).collect();
        perm.push(keep);
        MonomialOrder {
            kind: OrderKind::Block(nvars - 1),
            permutation: perm,
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn nvars(&self) -> usize {
        self.permutation.len()
    }

    /// Sort key whose lexicographic order realizes the monomial order. Keys
    /// are additive: `key(a*b) = key(a) + key(b)`.
    pub fn key(&self, m: &Monomial) -> Vec<i64> {
        let e: Vec<i64> = self.permutation.iter().map(|&i| m.0[i] as i64).collect();
        match self.kind {
            OrderKind::Lex => e,
            OrderKind::Degrevlex => degrevlex_key(&e),
            OrderKind::Block(s) => {
                let mut k = degrevlex_key(&e[..s]);
                k.extend(degrevlex_key(&e[s..]));
                k
            }
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    /// Text used by the `order:` header.
    pub fn describe(&self, vars: &[String]) -> String {
        let kind = match self.kind {
            OrderKind::Degrevlex => "degrevlex".to_string(),
            OrderKind::Lex => "lex".to_string(),
            OrderKind::Block(s) => format!("block({s})"),
        };
        let identity = self.permutation.iter().enumerate().all(|(k, &i)| k == i);
        if identity {
            kind
        } else {
            let names: Vec<&str> = self.permutation.iter().map(|&i| vars[i].as_str()).collect();
            format!("{kind} {}", names.join(" > "))
        }
    }

    /// Parses the `order:` header produced by [`MonomialOrder::describe`].
    pub fn parse(text: &str, vars: &[String]) -> Option<Self> {
        let text = text.trim();
        let (kind_text, perm_text) = match text.find(' ') {
            Some(pos) => (&text[..pos], Some(text[pos + 1..].trim())),
            None => (text, None),
        };
        let kind = match kind_text {
            "degrevlex" => OrderKind::Degrevlex,
            "lex" => OrderKind::Lex,
            other => {
                let inner = other.strip_prefix("block(")?.strip_suffix(')')?;
                OrderKind::Block(inner.trim().parse().ok()?)
            }
        };
        let permutation = match perm_text {
            None => (0..vars.len()).collect(),
            Some(p) => p
                .split('>')
                .map(|name| vars.iter().position(|v| v == name.trim()))
                .collect::<Option<Vec<_>>>()?,
        };
        if permutation.len() != vars.len() {
            return None;
        }
        MonomialOrder::with_permutation(kind, permutation)
    }
}

fn degrevlex_key(e: &[i64]) -> Vec<i64> {
    let mut k = Vec::with_capacity(e.len());
    k.push(e.iter().sum());
    k.extend(e.iter().skip(1).rev().map(|x| -x));
    k
}
