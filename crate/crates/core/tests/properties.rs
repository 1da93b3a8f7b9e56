use std::path::PathBuf;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use cyweb_core::groebner::GroebnerBasis;
use cyweb_core::poly::{parse_polynomial, Monomial, MonomialOrder, NumberField, Polynomial, Ring};
use cyweb_core::singularity::{analyze_singular_locus, Ambient, AnalysisOptions, Hypersurface, LocalModel};
use cyweb_core::transition::{compute_table, derive_pair, Fingerprint, Severity, TransitionRecord, TypeTag};
use cyweb_core::web::{Arrow, Simplicity, WebGraph, WebNode};
use cyweb_core::Error;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rational_ring(n: usize) -> Arc<Ring> {
    let names = ["x", "y", "z", "w"];
    Ring::rational(&names[..n])
}

fn cyclotomic_ring(n: usize) -> Arc<Ring> {
    let names = ["x", "y", "z", "w"];
    Ring::new(
        names[..n].iter().map(|s| s.to_string()).collect(),
        NumberField::cyclotomic5("e"),
    )
}

/// Terms as (exponents, coefficient vector over the field basis).
fn terms(
    nvars: usize,
    field_degree: usize,
    max_exp: u32,
    max_terms: usize,
) -> impl Strategy<Value = Vec<(Vec<u32>, Vec<i64>)>> {
    prop::collection::vec(
        (
            prop::collection::vec(0..=max_exp, nvars),
            prop::collection::vec(-4i64..=4, field_degree),
        ),
        0..=max_terms,
    )
}

fn build(ring: &Arc<Ring>, terms: &[(Vec<u32>, Vec<i64>)]) -> Polynomial {
    let field = ring.field().clone();
    Polynomial::from_terms(
        ring,
        terms.iter().map(|(e, c)| {
            (
                Monomial::new(e.clone()),
                field.from_coefficients(c.iter().map(|&x| q(x)).collect()),
            )
        }),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_over_q(a in terms(3, 1, 3, 5), b in terms(3, 1, 3, 5), c in terms(3, 1, 3, 5)) {
        let r = rational_ring(3);
        let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn ring_axioms_over_cyclotomic_field(a in terms(2, 4, 2, 4), b in terms(2, 4, 2, 4), c in terms(2, 4, 2, 4)) {
        let r = cyclotomic_ring(2);
        let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn field_inverses(c in prop::collection::vec(-6i64..=6, 4)) {
        let k = NumberField::cyclotomic5("e");
        let x = k.from_coefficients(c.iter().map(|&v| q(v)).collect());
        prop_assume!(!x.is_zero());
        let inv = k.inv(&x).unwrap();
        prop_assert!(k.mul(&x, &inv).is_one());
    }

    #[test]
    fn text_round_trip(a in terms(3, 1, 4, 6), b in terms(2, 4, 3, 4)) {
        let r = rational_ring(3);
        let p = build(&r, &a);
        prop_assert_eq!(parse_polynomial(&p.to_text(&MonomialOrder::degrevlex(3)), &r).unwrap(), p.clone());
        prop_assert_eq!(parse_polynomial(&p.to_text(&MonomialOrder::lex(3)), &r).unwrap(), p);
        let r = cyclotomic_ring(2);
        let p = build(&r, &b);
        prop_assert_eq!(parse_polynomial(&p.to_string(), &r).unwrap(), p);
    }

    #[test]
    fn euler_relation_for_weighted_homogeneous(
        weights in prop::collection::vec(1u64..=4, 3),
        coeffs in prop::collection::vec(-3i64..=3, 1..6),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..6),
    ) {
        let d: u64 = weights.iter().product::<u64>();
        let r = rational_ring(3);
        let mut candidates = Vec::new();
        for i in 0..=d / weights[0] {
            for j in 0..=(d - i * weights[0]) / weights[1] {
                let rest = d - i * weights[0] - j * weights[1];
                if rest.is_multiple_of(weights[2]) {
                    candidates.push(vec![i as u32, j as u32, (rest / weights[2]) as u32]);
                }
            }
        }
        let chosen: Vec<(Vec<u32>, Vec<i64>)> =
            picks.iter().zip(&coeffs).map(|(ix, &c)| (candidates[ix.index(candidates.len())].clone(), vec![c])).collect();
        let f = build(&r, &chosen);
        prop_assume!(!f.is_zero());
        let mut euler = Polynomial::zero(&r);
        for (i, g) in f.gradient().iter().enumerate() {
            euler = euler.add(&Polynomial::var(&r, i).mul(g).scale(&r.field().from_int(weights[i] as i64)));
        }
        prop_assert_eq!(euler, f.scale(&r.field().from_int(d as i64)));
    }
}

/// Small generators whose reduced bases stay cheap.
fn small_system() -> impl Strategy<Value = Vec<Vec<(Vec<u32>, Vec<i64>)>>> {
    prop::collection::vec(terms(3, 1, 2, 3), 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn buchberger_confluence(system in small_system(), rot in 0usize..3, mix in -3i64..=3) {
        let r = rational_ring(3);
        let gens: Vec<Polynomial> = system.iter().map(|t| build(&r, t)).collect();
        let order = MonomialOrder::degrevlex(3);
        let gb = match GroebnerBasis::compute_with_budget(&gens, &order, 2_000) {
            Ok(gb) => gb,
            Err(Error::BudgetExceeded { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        for g in &gens {
            prop_assert!(gb.contains(g));
        }
        // a different generating set of the same ideal
        let mut other = gens.clone();
        other.rotate_left(rot % gens.len());
        let combo = other[0].add(&other[other.len() - 1].scale(&r.field().from_int(mix)));
        other.push(combo);
        let gb2 = GroebnerBasis::compute_with_budget(&other, &order, 2_000).unwrap();
        prop_assert_eq!(gb.generators(), gb2.generators());
        let text = gb.to_text();
        prop_assert_eq!(text, gb2.to_text());
    }

    #[test]
    fn monomial_ideal_dimension(exps in prop::collection::vec(1u32..=5, 1..=4)) {
        let r = rational_ring(exps.len());
        let gens: Vec<Polynomial> = exps
            .iter()
            .enumerate()
            .map(|(i, &e)| Polynomial::monomial(&r, Monomial::var_power(exps.len(), i, e), r.field().one()))
            .collect();
        let gb = GroebnerBasis::compute(&gens, &MonomialOrder::degrevlex(exps.len())).unwrap();
        let expected: usize = exps.iter().map(|&e| e as usize).product();
        prop_assert_eq!(gb.quotient_ring().unwrap().dimension(), expected);
    }

    #[test]
    fn staircase_matches_brute_force(exps in prop::collection::vec(1u32..=4, 3), extra in prop::collection::vec(prop::collection::vec(0u32..=3, 3), 0..4)) {
        let r = rational_ring(3);
        let mut mons: Vec<Vec<u32>> = (0..3).map(|i| { let mut e = vec![0; 3]; e[i] = exps[i]; e }).collect();
        mons.extend(extra.into_iter().filter(|e| e.iter().any(|&x| x > 0)));
        let gens: Vec<Polynomial> = mons.iter().map(|e| Polynomial::monomial(&r, Monomial::new(e.clone()), r.field().one())).collect();
        let gb = GroebnerBasis::compute(&gens, &MonomialOrder::lex(3)).unwrap();
        let mut count = 0;
        for a in 0..exps[0] {
            for b in 0..exps[1] {
                for c in 0..exps[2] {
                    if !mons.iter().any(|m| m[0] <= a && m[1] <= b && m[2] <= c) {
                        count += 1;
                    }
                }
            }
        }
        prop_assert_eq!(gb.quotient_ring().unwrap().dimension(), count);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn chart_order_independence(lines in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3), perm in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        // a triangle of lines in P^2, analyzed with its coordinates permuted
        let r = rational_ring(3);
        let linear = |c: &[i64], order: &[usize]| {
            build(&r, &(0..3).map(|i| { let mut e = vec![0; 3]; e[order[i]] = 1; (e, vec![c[i]]) }).collect::<Vec<_>>())
        };
        prop_assume!(lines.iter().all(|c| c.iter().any(|&x| x != 0)));
        let product = |order: &[usize]| lines.iter().fold(Polynomial::one(&r), |acc, c| acc.mul(&linear(c, order)));
        let opts = AnalysisOptions::default();
        let analyze = |f: Polynomial| analyze_singular_locus(&Hypersurface::new(f, Ambient::Projective(2)).unwrap(), &opts);
        match (analyze(product(&[0, 1, 2])), analyze(product(&perm))) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.point_count, b.point_count);
                prop_assert_eq!(a.multiplicity_total, b.multiplicity_total);
                prop_assert_eq!(a.all_nodes, b.all_nodes);
            }
            (Err(a), Err(b)) => prop_assert_eq!(a, b),
            (a, b) => return Err(TestCaseError::fail(format!("{a:?} vs {b:?}"))),
        }
    }
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

#[test]
fn euler_relation_on_shipped_germs() {
    let mut checked = 0;
    for entry in std::fs::read_dir(data_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "lm") {
            let m = LocalModel::from_text(&std::fs::read_to_string(&path).unwrap()).unwrap();
            let Some((w, d)) = m.quasi_homogeneous_weights() else {
                continue;
            };
            let f = m.germ();
            let r = f.ring();
            let mut euler = Polynomial::zero(r);
            for (i, g) in f.gradient().iter().enumerate() {
                euler = euler.add(&Polynomial::var(r, i).mul(g).scale(&r.field().from_int(w[i] as i64)));
            }
            assert_eq!(euler, f.scale(&r.field().from_int(d as i64)), "{}", path.display());
            checked += 1;
        }
    }
    assert!(checked >= 5);
}

fn web_node(id: String, pi1: &str, h11: u64, h21: u64) -> WebNode {
    let mut fingerprint = Fingerprint::calabi_yau(h11, h21);
    fingerprint.pi1 = Some(pi1.to_string());
    WebNode {
        id,
        fingerprint,
        description: format!("class {h11} {h21}"),
        primitive: h11 == 1,
    }
}

const TAGS: [TypeTag; 4] = [TypeTag::Conifold, TypeTag::Small, TypeTag::TypeII, TypeTag::Other];
const VERDICTS: [Simplicity; 3] = [Simplicity::Simple, Simplicity::NotSimple, Simplicity::Unknown];

fn random_web() -> impl Strategy<Value = WebGraph> {
    (
        prop::collection::vec((1u64..5, 1u64..150, 0usize..3), 1..7),
        prop::collection::vec(
            (
                any::<prop::sample::Index>(),
                any::<prop::sample::Index>(),
                0usize..4,
                0usize..3,
                any::<bool>(),
            ),
            0..8,
        ),
    )
        .prop_map(|(nodes, arrows)| {
            let labels = ["trivial", "Z/2", "Z/5"];
            let mut g = WebGraph::new();
            for (i, (h11, h21, p)) in nodes.iter().enumerate() {
                g.add_node(web_node(format!("N{i}"), labels[*p], *h11, *h21)).unwrap();
            }
            for (i, (s, t, ty, v, tr)) in arrows.iter().enumerate() {
                let arrow = Arrow {
                    id: format!("a{i}"),
                    source: format!("N{}", s.index(nodes.len())),
                    target: format!("N{}", t.index(nodes.len())),
                    type_tag: TAGS[*ty],
                    transition: tr.then(|| format!("r{i}.tr")),
                    simplicity: VERDICTS[*v],
                    record: None,
                };
                g.add_arrow(arrow).unwrap();
            }
            g
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn web_rejects_simple_arrows_changing_pi1(g in random_web(), conifold in any::<bool>()) {
        let a = WebGraph::new();
        let a = a.with_node(web_node("src".into(), "trivial", 2, 86)).unwrap();
        let mut tampered = g.clone();
        for n in a.nodes() {
            tampered.add_node(n.clone()).unwrap();
        }
        tampered.add_node(web_node("dst".into(), "Z/5", 1, 21)).unwrap();
        let (type_tag, simplicity) = if conifold { (TypeTag::Conifold, Simplicity::Simple) } else { (TypeTag::Small, Simplicity::Simple) };
        tampered
            .add_arrow(Arrow { id: "bad".into(), source: "src".into(), target: "dst".into(), type_tag, transition: None, simplicity, record: None })
            .unwrap();
        let findings = tampered.validate();
        prop_assert!(findings.iter().any(|f| f.severity == Severity::Error && f.message.starts_with("arrow bad:")));
        prop_assert!(a.validation_state().is_none());
        prop_assert_eq!(g.nodes().len() + 2, tampered.nodes().len());
    }

    #[test]
    fn web_export_round_trip(g in random_web()) {
        let text = g.to_text();
        let back = WebGraph::from_text(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_text(), text);
        prop_assert_eq!(g.export_dot(), back.export_dot());
        prop_assert_eq!(WebGraph::parse_arrow_csv(&g.export_csv()).unwrap(), g.arrows().to_vec());
        prop_assert_eq!(g.validate(), back.validate());
    }

    #[test]
    fn web_components_partition_nodes(g in random_web()) {
        let comps = g.connected_components();
        let total: usize = comps.iter().map(Vec::len).sum();
        prop_assert_eq!(total, g.nodes().len());
        for c in &comps {
            for id in c {
                prop_assert!(g.path(&c[0], id).unwrap().is_some());
            }
        }
        if comps.len() > 1 {
            prop_assert!(g.path(&comps[0][0], &comps[1][0]).unwrap().is_none());
        }
    }

    #[test]
    fn conifold_classical_relations(h11 in 1u64..20, h21 in 20u64..200, n in 1u64..60, k_frac in 0u64..100) {
        let k = 1 + k_frac % n;
        let smoothing = Fingerprint::calabi_yau(h11, h21);
        let (y, bar) = match derive_pair(&smoothing, n, n, k, "conifold") {
            Ok(p) => p,
            Err(_) => { prop_assert!(2 * (n - k) > smoothing.b[3]); return Ok(()); }
        };
        prop_assert_eq!(y.chi, smoothing.chi + 2 * n as i64);
        prop_assert_eq!(y.b[3] as i64, smoothing.b[3] as i64 - 2 * (n as i64 - k as i64));
        prop_assert_eq!(y.b[2], h11 + k);
        prop_assert_eq!(bar.chi, smoothing.chi + n as i64);
        prop_assert_eq!(bar.b[3] as i64, smoothing.b[3] as i64 - (n as i64 - k as i64));
    }

    #[test]
    fn compute_table_is_idempotent(h11 in 1u64..5, h21 in 50u64..150, n in 1usize..40, k in 1u64..3) {
        let text = format!(
            "[record]\nname: r\ntype: conifold\n[smoothing]\nname: S\nb: 1,0,{h11},{},{h11},0,1\nh11: {h11}\nh21: {h21}\n\
             [singular]\nname: B\ncount: {n}\nmilnor: 1\nterminal: true\ncdv: node\n[resolution]\nname: Y\ntrees: {n} x A1\nk: {}\n",
            2 + 2 * h21,
            k.min(n as u64),
        );
        let r = TransitionRecord::from_text(&text).unwrap();
        let t1 = compute_table(&r).unwrap();
        let again = TransitionRecord::from_text(&r.to_text()).unwrap();
        prop_assert_eq!(&t1, &compute_table(&again).unwrap());
        prop_assert_eq!(t1.to_csv(), compute_table(&r).unwrap().to_csv());
    }
}

#[test]
fn cyclotomic_generator_has_order_five() {
    let k = NumberField::cyclotomic5("e");
    let e = k.generator();
    assert!(k.pow(&e, 5).is_one());
    assert!(!k.pow(&e, 1).is_one());
    let mut s = k.zero();
    for i in 0..5 {
        s = k.add(&s, &k.pow(&e, i));
    }
    assert!(s.is_zero());
}
