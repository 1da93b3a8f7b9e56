//! Buchberger's algorithm with the normal selection strategy and the
//! Gebauer–Möller installation of both Buchberger criteria.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{FieldElement, Monomial, MonomialOrder, NumberField, Polynomial, Ring};

/// Default cap on S-pair reductions per basis computation.
pub const DEFAULT_PAIR_BUDGET: usize = 100_000;

#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub key: Vec<i64>,
    pub mono: Monomial,
    pub coeff: FieldElement,
}

/// Polynomial with terms sorted by decreasing order key.
#[derive(Clone, Debug)]
pub(crate) struct OrderedPoly {
    pub terms: Vec<Term>,
}

impl OrderedPoly {
    pub fn from_polynomial(p: &Polynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<Term> = p
            .terms()
            .map(|(m, c)| Term {
                key: order.key(m),
                mono: m.clone(),
                coeff: c.clone(),
            })
            .collect();
        terms.sort_by(|a, b| b.key.cmp(&a.key));
        OrderedPoly { terms }
    }

    pub fn to_polynomial(&self, ring: &Arc<Ring>) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().map(|t| (t.mono.clone(), t.coeff.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }

    pub fn make_monic(&mut self, field: &NumberField) {
        if self.terms.is_empty() || self.terms[0].coeff.is_one() {
            return;
        }
        let inv = field.inv(&self.terms[0].coeff).expect("leading coefficient is nonzero");
        for t in &mut self.terms {
            t.coeff = field.mul(&t.coeff, &inv);
        }
    }
}

fn add_keys(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_keys(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Working polynomial for reductions, keyed by order key.
struct Accumulator<'f> {
    field: &'f NumberField,
    map: BTreeMap<Vec<i64>, (Monomial, FieldElement)>,
}

impl<'f> Accumulator<'f> {
    fn new(field: &'f NumberField, p: &OrderedPoly) -> Self {
        let map = p
            .terms
            .iter()
            .map(|t| (t.key.clone(), (t.mono.clone(), t.coeff.clone())))
            .collect();
        Accumulator { field, map }
    }

    /// Adds `-c * shift * g` where `shift` has order key `shift_key`.
    fn sub_multiple(
        &mut self,
        c: &FieldElement,
        shift: &Monomial,
        shift_key: &[i64],
        g: &OrderedPoly,
        skip_lead: bool,
    ) {
        let start = usize::from(skip_lead);
        for t in &g.terms[start..] {
            let key = add_keys(&t.key, shift_key);
            let delta = self.field.mul(c, &t.coeff);
            match self.map.entry(key) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert((t.mono.mul(shift), self.field.neg(&delta)));
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let val = self.field.sub(&o.get().1, &delta);
                    if val.is_zero() {
                        o.remove();
                    } else {
                        o.get_mut().1 = val;
                    }
                }
            }
        }
    }

    fn pop_max(&mut self) -> Option<(Vec<i64>, Monomial, FieldElement)> {
        self.map.pop_last().map(|(k, (m, c))| (k, m, c))
    }
}

/// Full reduction of `p` by monic `basis`: no term of the result is divisible
/// by a leading monomial of `basis`.
pub(crate) fn reduce(p: &OrderedPoly, basis: &[&OrderedPoly], field: &NumberField) -> OrderedPoly {
    let mut acc = Accumulator::new(field, p);
    let mut rem = Vec::new();
    while let Some((key, mono, coeff)) = acc.pop_max() {
        match basis.iter().find(|g| g.lead().mono.divides(&mono)) {
            Some(g) => {
                let lead = g.lead();
                let shift = mono.div(&lead.mono);
                let shift_key = sub_keys(&key, &lead.key);
                // basis elements are monic
                acc.sub_multiple(&coeff, &shift, &shift_key, g, true);
            }
            None => rem.push(Term { key, mono, coeff }),
        }
    }
    OrderedPoly { terms: rem }
}

fn s_polynomial(
    f: &OrderedPoly,
    g: &OrderedPoly,
    lcm: &Monomial,
    order: &MonomialOrder,
    field: &NumberField,
) -> OrderedPoly {
    let lcm_key = order.key(lcm);
    let sf = lcm.div(&f.lead().mono);
    let sg = lcm.div(&g.lead().mono);
    let kf = sub_keys(&lcm_key, &f.lead().key);
    let kg = sub_keys(&lcm_key, &g.lead().key);
    let mut acc = Accumulator {
        field,
        map: BTreeMap::new(),
    };
    let minus_one = field.neg(&field.one());
    acc.sub_multiple(&minus_one, &sf, &kf, f, true);
    acc.sub_multiple(&field.one(), &sg, &kg, g, true);
    let mut terms: Vec<Term> = acc
        .map
        .into_iter()
        .map(|(key, (mono, coeff))| Term { key, mono, coeff })
        .collect();
    terms.reverse();
    OrderedPoly { terms }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    lcm_key: Vec<i64>,
}

/// Statistics of one run, reported alongside the basis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuchbergerStats {
    pub pairs_reduced: usize,
    pub pairs_skipped: usize,
    pub zero_reductions: usize,
}

/// Runs Buchberger and returns the reduced monic basis in internal form,
/// sorted by increasing leading monomial.
pub(crate) fn run(
    generators: &[Polynomial],
    order: &MonomialOrder,
    ring: &Arc<Ring>,
    budget: usize,
) -> Result<(Vec<OrderedPoly>, BuchbergerStats)> {
    let field = ring.field().clone();
    let mut stats = BuchbergerStats::default();
    let mut basis: Vec<OrderedPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    // inter-reduce the input first
    let mut inputs: Vec<OrderedPoly> = generators
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let mut o = OrderedPoly::from_polynomial(p, order);
            o.make_monic(&field);
            o
        })
        .collect();
    inputs.sort_by(|a, b| a.lead().key.cmp(&b.lead().key));
    for p in inputs {
        let reducers: Vec<&OrderedPoly> = basis.iter().zip(&active).filter(|(_, &a)| a).map(|(g, _)| g).collect();
        let mut h = reduce(&p, &reducers, &field);
        if h.is_zero() {
            continue;
        }
        h.make_monic(&field);
        install(&mut basis, &mut active, &mut pairs, h, order);
    }

    // normal strategy: smallest lcm first, ties by index
    while let Some(pos) = pairs
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.lcm_key.cmp(&b.lcm_key).then((a.j, a.i).cmp(&(b.j, b.i))))
        .map(|(k, _)| k)
    {
        let pair = pairs.swap_remove(pos);
        if stats.pairs_reduced >= budget {
            return Err(Error::BudgetExceeded { budget });
        }
        stats.pairs_reduced += 1;
        let s = s_polynomial(&basis[pair.i], &basis[pair.j], &pair.lcm, order, &field);
        let reducers: Vec<&OrderedPoly> = basis.iter().zip(&active).filter(|(_, &a)| a).map(|(g, _)| g).collect();
        let mut h = reduce(&s, &reducers, &field);
        if h.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        h.make_monic(&field);
        if h.lead().mono.is_one() {
            // unit ideal
            return Ok((vec![h], stats));
        }
        let before = pairs.len();
        install(&mut basis, &mut active, &mut pairs, h, order);
        stats.pairs_skipped += before.saturating_sub(pairs.len());
    }

    let survivors: Vec<OrderedPoly> = basis
        .into_iter()
        .zip(active)
        .filter(|(_, a)| *a)
        .map(|(g, _)| g)
        .collect();
    Ok((interreduce(survivors, &field), stats))
}

/// Gebauer–Möller update: adds `h` to the basis and prunes pairs.
fn install(
    basis: &mut Vec<OrderedPoly>,
    active: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    h: OrderedPoly,
    order: &MonomialOrder,
) {
    let hi = basis.len();
    let hlead = h.lead().mono.clone();
    if hlead.is_one() {
        basis.clear();
        active.clear();
        pairs.clear();
        basis.push(h);
        active.push(true);
        return;
    }

    // candidate new pairs (g, h)
    let candidates: Vec<Pair> = (0..hi)
        .filter(|&g| active[g])
        .map(|g| {
            let lcm = basis[g].lead().mono.lcm(&hlead);
            let lcm_key = order.key(&lcm);
            Pair {
                i: g,
                j: hi,
                lcm,
                lcm_key,
            }
        })
        .collect();

    // chain criterion among the new pairs; coprime pairs are kept for now so
    // that they can shadow others, then dropped (product criterion)
    let mut kept: Vec<&Pair> = Vec::new();
    for (idx, p) in candidates.iter().enumerate() {
        let coprime = basis[p.i].lead().mono.is_coprime(&hlead);
        if coprime {
            kept.push(p);
            continue;
        }
        let shadowed =
            candidates[idx + 1..].iter().any(|q| q.lcm.divides(&p.lcm)) || kept.iter().any(|q| q.lcm.divides(&p.lcm));
        if !shadowed {
            kept.push(p);
        }
    }
    // among equal lcms keep only one
    let mut deduped: Vec<Pair> = Vec::new();
    for p in kept {
        if basis[p.i].lead().mono.is_coprime(&hlead) {
            continue;
        }
        if deduped.iter().any(|q| q.lcm == p.lcm) {
            continue;
        }
        deduped.push(p.clone());
    }

    // old pairs made redundant by h (chain criterion through h)
    pairs.retain(|p| {
        if !hlead.divides(&p.lcm) {
            return true;
        }
        let lcm_ih = basis[p.i].lead().mono.lcm(&hlead);
        let lcm_jh = basis[p.j].lead().mono.lcm(&hlead);
        lcm_ih == p.lcm || lcm_jh == p.lcm
    });
    pairs.extend(deduped);

    for g in 0..hi {
        if active[g] && hlead.divides(&basis[g].lead().mono) {
            active[g] = false;
        }
    }
    basis.push(h);
    active.push(true);
}

fn interreduce(mut gens: Vec<OrderedPoly>, field: &NumberField) -> Vec<OrderedPoly> {
    gens.sort_by(|a, b| a.lead().key.cmp(&b.lead().key));
    // minimal basis: drop elements whose lead is divisible by an earlier lead
    let mut minimal: Vec<OrderedPoly> = Vec::new();
    for g in gens {
        if minimal.iter().any(|m| m.lead().mono.divides(&g.lead().mono)) {
            continue;
        }
        minimal.retain(|m| !g.lead().mono.divides(&m.lead().mono));
        minimal.push(g);
    }
    let n = minimal.len();
    for i in 0..n {
        let others: Vec<&OrderedPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g)
            .collect();
        let lead = minimal[i].lead().clone();
        let tail = OrderedPoly {
            terms: minimal[i].terms[1..].to_vec(),
        };
        let reduced_tail = reduce(&tail, &others, field);
        let mut terms = vec![lead];
        terms.extend(reduced_tail.terms);
        minimal[i] = OrderedPoly { terms };
        minimal[i].make_monic(field);
    }
    minimal.sort_by(|a, b| a.lead().key.cmp(&b.lead().key));
    minimal
}
