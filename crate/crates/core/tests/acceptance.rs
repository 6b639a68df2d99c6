//! Acceptance run: one line per criterion, `PASS` only when the check holds
//! exactly and finishes within its time limit.

use std::error::Error as StdError;
use std::panic;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torusbord::corpus::{self, Provenance};
use torusbord::localization::{
    genus_at_one, laurent_check, vertex_data, vertex_data_from_polynomial,
};
use torusbord::quasitoric::{
    add_pairs_traced, realize_dim1, realize_dim2, tetrahedron_fixture, AddCase,
};
use torusbord::{
    min_support_search, ExteriorPolynomial, LatticeVector, QuasitoricPair, Side, TorusGraph,
};

type Outcome = Result<String, Box<dyn StdError>>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), Box<dyn StdError>> {
    if cond {
        Ok(())
    } else {
        Err(msg.into().into())
    }
}

fn v(x: &[i64]) -> LatticeVector {
    LatticeVector::new(x.to_vec())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_cochar<R: Rng>(n: usize, rng: &mut R) -> ExteriorPolynomial {
    let terms: Vec<(i64, Vec<LatticeVector>)> = (0..rng.gen_range(0..=5))
        .map(|_| {
            let deg = rng.gen_range(0..=n.min(4));
            let gens = (0..deg)
                .map(|_| loop {
                    let x = v(&(0..n).map(|_| rng.gen_range(-5..=5)).collect::<Vec<_>>());
                    if !x.is_zero() {
                        break x;
                    }
                })
                .collect();
            (rng.gen_range(-5..=5), gens)
        })
        .collect();
    ExteriorPolynomial::from_terms(n, Side::Cocharacter, terms).unwrap()
}

fn random_faithful<R: Rng>(n: usize, side: Side, rng: &mut R) -> ExteriorPolynomial {
    let terms: Vec<(i64, Vec<LatticeVector>)> = (0..rng.gen_range(1..=4))
        .map(|_| (rng.gen_range(-5..=5), corpus::random_unimodular(n, rng)))
        .collect();
    ExteriorPolynomial::from_terms(n, side, terms).unwrap()
}

fn sphere_vanishing() -> Outcome {
    for n in 1..=4 {
        let h = TorusGraph::sphere(n).torus_polynomial()?;
        ensure(
            h.is_zero(),
            format!("sphere graph of rank {n} has polynomial {h}"),
        )?;
    }
    Ok("n = 1..4 all zero".into())
}

fn k4_non_orientable() -> Outcome {
    match TorusGraph::k4().find_orientation() {
        Err(torusbord::Error::NonOrientable) => Ok("inconsistency reported".into()),
        other => Err(format!("unexpected result {other:?}").into()),
    }
}

fn algebra_laws() -> Outcome {
    let mut r = rng(3);
    let count = 1000;
    for i in 0..count {
        let n = 1 + i % 4;
        let h = random_cochar(n, &mut r);
        ensure(
            h.boundary()?.boundary()?.is_zero(),
            format!("d∘d ≠ 0 on {h}"),
        )?;

        let side = if i % 2 == 0 {
            Side::Character
        } else {
            Side::Cocharacter
        };
        let f = random_faithful(n, side, &mut r);
        ensure(
            f.dual()?.dual()? == f,
            format!("dual is not an involution on {f}"),
        )?;

        let c = random_cochar(n, &mut r).boundary()?;
        let t = loop {
            let t = v(&(0..n).map(|_| r.gen_range(-5..=5)).collect::<Vec<_>>());
            if !t.is_zero() && !c.generators().any(|g| *g == t) {
                break t;
            }
        };
        ensure(c.cone(&t)?.boundary()? == c, format!("d(cone) ≠ h for {c}"))?;
    }
    Ok(format!("{count} polynomials per law, ranks 1-4"))
}

fn round_trip() -> Outcome {
    let mut r = rng(4);
    let graphs = corpus::graph_corpus(280, &mut r)?;
    let mut count = 0;
    for (p, g) in &graphs {
        if *p == Provenance::Polynomial {
            continue;
        }
        let h = g.torus_polynomial()?;
        ensure(
            h.in_kn()?,
            format!("{p:?} graph polynomial not in K_n: {h}"),
        )?;
        let back = TorusGraph::from_polynomial(&h)?.torus_polynomial()?;
        ensure(back == h, format!("round trip changed {h} into {back}"))?;
        count += 1;
    }
    ensure(count >= 200, format!("only {count} graphs"))?;
    Ok(format!(
        "{count} graphs from pairs, products, connected sums"
    ))
}

fn duality_identity() -> Outcome {
    let mut r = rng(5);
    let mut pairs: Vec<QuasitoricPair> = (0..120)
        .map(|i| corpus::random_pair(1 + i % 3, &mut r))
        .collect();
    let std = |n: usize| {
        let mut l: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::basis(n, i)).collect();
        l.push(v(&vec![-1; n]));
        QuasitoricPair::simplex(l).unwrap()
    };
    pairs.push(QuasitoricPair::interval_plus());
    pairs.push(std(2));
    pairs.push(QuasitoricPair::interval_plus().product(&QuasitoricPair::interval_plus())?);
    pairs.push(std(3));
    for q in &pairs {
        let lhs = q.torus_graph()?.torus_polynomial()?;
        let rhs = q.quasitoric_polynomial()?.dual()?;
        ensure(lhs == rhs, format!("graph polynomial {lhs} ≠ dual {rhs}"))?;
    }
    Ok(format!("{} pairs incl. Δ¹, Δ², Δ¹×Δ¹, Δ³", pairs.len()))
}

fn connected_sum_additivity() -> Outcome {
    let mut r = rng(6);
    let count = 120;
    for i in 0..count {
        let n = 1 + i % 3;
        let (q1, v1, q2, w) = corpus::random_connected_sum_instance(n, &mut r)?;
        let q = QuasitoricPair::connected_sum(&q1, v1, &q2, w)?;
        let sum = q1
            .quasitoric_polynomial()?
            .checked_add(&q2.quasitoric_polynomial()?)?;
        ensure(q.quasitoric_polynomial()? == sum, "𝔤 is not additive")?;
        let facets = if n == 1 {
            q1.num_facets() + q2.num_facets() - 2
        } else {
            q1.num_facets() + q2.num_facets() - n
        };
        ensure(
            q.num_facets() == facets,
            format!("facet count {} ≠ {facets}", q.num_facets()),
        )?;
        ensure(
            q.num_vertices() == q1.num_vertices() + q2.num_vertices() - 2,
            "vertex count is not v₁+v₂−2",
        )?;
        let (g1, g2) = (q1.torus_graph()?, q2.torus_graph()?);
        let (g, _) = TorusGraph::connected_sum(&g1, v1 as u64, &g2, w as u64)?;
        let hsum = g1
            .torus_polynomial()?
            .checked_add(&g2.torus_polynomial()?)?;
        ensure(
            g.torus_polynomial()? == hsum,
            "graph-level additivity fails",
        )?;
        ensure(
            g.is_isomorphic(&q.torus_graph()?),
            "graph of the sum is not the sum of graphs",
        )?;
    }
    Ok(format!("{count} instances, n = 1..3"))
}

fn product_formula() -> Outcome {
    let mut r = rng(7);
    let count = 60;
    for _ in 0..count {
        let (a, b) = corpus::random_product_instance(&mut r);
        let lhs = a.product(&b)?.quasitoric_polynomial()?;
        let rhs = a
            .quasitoric_polynomial()?
            .external_product(&b.quasitoric_polynomial()?)?;
        ensure(lhs == rhs, "product formula fails")?;
    }
    Ok(format!("{count} instances"))
}

fn add_pairs_cases() -> Outcome {
    let mut r = rng(8);
    let mut seen = [[0usize; 3]; 2];
    for n in 2..=3 {
        let mut tries = 0;
        while seen[n - 2].iter().any(|&c| c < 3) && tries < 200 {
            tries += 1;
            let (q1, q2) = match tries % 3 {
                0 => {
                    let (a, _, b, _) = corpus::random_connected_sum_instance(n, &mut r)?;
                    (a, b)
                }
                1 => {
                    let a = corpus::random_pair(n, &mut r);
                    let u = corpus::random_unimodular(n, &mut r);
                    let b = a.transform(&u)?;
                    (a, b)
                }
                _ => (
                    corpus::random_pair(n, &mut r),
                    corpus::random_pair(n, &mut r),
                ),
            };
            let out = add_pairs_traced(&q1, &q2)?;
            let case = match out.case {
                AddCase::Cancelling => 0,
                AddCase::Bridged { shared, .. } if shared + 1 == n => 1,
                AddCase::Bridged { shared: 0, .. } => 2,
                AddCase::Bridged { .. } => continue,
            };
            seen[n - 2][case] += 1;
            let sum = q1
                .quasitoric_polynomial()?
                .checked_add(&q2.quasitoric_polynomial()?)?;
            ensure(
                out.pair.quasitoric_polynomial()? == sum,
                "add_pairs changed the sum",
            )?;
            ensure(out.pair.check_star()?, "result fails (★)")?;
            for w in &out.bridges {
                ensure(w.check_star()?, "an intermediate prism fails (★)")?;
            }
        }
    }
    ensure(
        seen.iter().flatten().all(|&c| c >= 3),
        format!("case coverage too thin: {seen:?}"),
    )?;
    Ok(format!(
        "cases [cancel, one differing, disjoint] n=2 {:?}, n=3 {:?}",
        seen[0], seen[1]
    ))
}

fn surjectivity() -> Outcome {
    let mut r = rng(9);
    for _ in 0..100 {
        let h = corpus::random_k1_element(&mut r)?;
        let pairs = realize_dim1(&h)?;
        let mut sum = ExteriorPolynomial::zero(1, Side::Cocharacter);
        for q in &pairs {
            sum = sum.checked_add(&q.quasitoric_polynomial()?)?;
        }
        ensure(sum == h, format!("dimension 1: {sum} ≠ {h}"))?;
    }
    let mut count2 = 0;
    while count2 < 100 {
        let h = corpus::random_k2_element(&mut r)?;
        if h.is_zero() {
            continue;
        }
        let q = realize_dim2(&h)?;
        ensure(
            q.quasitoric_polynomial()? == h,
            format!("dimension 2 fails on {h}"),
        )?;
        count2 += 1;
    }
    Ok("100 elements of 𝔎₁ and 100 nonzero elements of 𝔎₂".into())
}

fn minimum_fixed_points() -> Outcome {
    let rep = min_support_search(2, 1)?;
    ensure(rep.confirmed(), format!("found {:?}", rep.counterexample))?;
    let w = rep.witness.ok_or("no 3-monomial element exhibited")?;
    ensure(
        w.num_terms() == 3 && w.in_kn()?,
        "witness is not a 3-monomial K_2 element",
    )?;
    Ok(format!(
        "{} monomials, {} subsets, none in K_2; witness {w}",
        rep.monomials, rep.subsets_checked
    ))
}

fn localization() -> Outcome {
    let mut r = rng(11);
    let graphs = corpus::graph_corpus(240, &mut r)?;
    for (i, (p, g)) in graphs.iter().enumerate() {
        let c = laurent_check(g.rank(), &vertex_data(g)?, 5, 2, i as u64)?;
        ensure(
            c.passed(),
            format!("{p:?} graph {i} fails the Laurent check"),
        )?;
    }

    let cp1 = QuasitoricPair::interval_plus().torus_graph()?;
    let cp2 = QuasitoricPair::simplex(vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])])?.torus_graph()?;
    let genus = |g: &TorusGraph, seed| genus_at_one(g.rank(), &vertex_data(g).unwrap(), 5, seed);
    ensure(genus(&cp1, 1)? == 1, "CP¹-type genus ≠ 1")?;
    ensure(genus(&cp2, 1)? == 1, "CP²-type genus ≠ 1")?;
    for n in 1..=4 {
        ensure(genus(&TorusGraph::sphere(n), 1)? == 0, "sphere genus ≠ 0")?;
    }
    for i in 0..30 {
        let (q1, v1, q2, w) = corpus::random_connected_sum_instance(1 + i % 3, &mut r)?;
        let (g1, g2) = (q1.torus_graph()?, q2.torus_graph()?);
        let (g, _) = TorusGraph::connected_sum(&g1, v1 as u64, &g2, w as u64)?;
        ensure(
            genus(&g, i as u64)? == genus(&g1, i as u64)? + genus(&g2, i as u64)?,
            "genus is not additive over a connected sum",
        )?;
    }

    let mut failures = 0;
    for i in 0..100 {
        let n = 1 + i % 3;
        let h = corpus::random_faithful_non_kn(n, &mut r)?;
        if !laurent_check(n, &vertex_data_from_polynomial(&h)?, 5, 2, i as u64)?.passed() {
            failures += 1;
        }
    }
    ensure(
        failures >= 99,
        format!("negative control failed only {failures}/100"),
    )?;
    Ok(format!(
        "{} graphs pass; negative control {failures}/100",
        graphs.len()
    ))
}

fn tetrahedron() -> Outcome {
    let (h, q) = tetrahedron_fixture()?;
    ensure(
        h == q.quasitoric_polynomial()?.checked_scale(2)?,
        "h ≠ 2𝔤(Δ³,δ)",
    )?;
    let out = add_pairs_traced(&q, &q)?;
    ensure(
        out.pair.quasitoric_polynomial()? == h,
        "add_pairs does not realize h",
    )?;
    ensure(out.pair.check_star()?, "realizing pair fails (★)")?;
    Ok(format!(
        "h = 2𝔤(Δ³,δ); realized by one pair with {} vertices",
        out.pair.num_vertices()
    ))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let s = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            name: "sphere vanishing",
            limit: s(1),
            run: sphere_vanishing,
        },
        Criterion {
            id: 2,
            name: "K4 non-orientability",
            limit: s(1),
            run: k4_non_orientable,
        },
        Criterion {
            id: 3,
            name: "algebra laws",
            limit: s(30),
            run: algebra_laws,
        },
        Criterion {
            id: 4,
            name: "main theorem round trip",
            limit: s(60),
            run: round_trip,
        },
        Criterion {
            id: 5,
            name: "duality identity",
            limit: s(60),
            run: duality_identity,
        },
        Criterion {
            id: 6,
            name: "connected-sum additivity",
            limit: s(60),
            run: connected_sum_additivity,
        },
        Criterion {
            id: 7,
            name: "product formula",
            limit: s(30),
            run: product_formula,
        },
        Criterion {
            id: 8,
            name: "adding pairs",
            limit: s(120),
            run: add_pairs_cases,
        },
        Criterion {
            id: 9,
            name: "dimension 1/2 surjectivity",
            limit: s(60),
            run: surjectivity,
        },
        Criterion {
            id: 10,
            name: "minimum fixed points",
            limit: s(120),
            run: minimum_fixed_points,
        },
        Criterion {
            id: 11,
            name: "localization",
            limit: s(120),
            run: localization,
        },
        Criterion {
            id: 12,
            name: "3-D fixture",
            limit: s(30),
            run: tetrahedron,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(c.run);
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(Ok(d)) if elapsed <= c.limit => (true, d),
            Ok(Ok(d)) => (false, format!("too slow; {d}")),
            Ok(Err(e)) => (false, e.to_string()),
            Err(_) => (false, "panicked".to_string()),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} {:>2} {:<28} {:>8.3}s / {:>3}s  {}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
            detail
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
