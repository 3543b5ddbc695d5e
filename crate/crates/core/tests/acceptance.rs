//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! All comparisons are exact (polynomial, integer or rational equality, or
//! byte equality against the transcribed fixtures), so no tolerances apply.
//! Each criterion also has a wall-clock budget.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hooks_core::identities::{
    binary_hook_sum, brute_force_labelling_count, cayley_degree_poly, cayley_rhs,
    dominating_code_sum, dominating_tree_sum, hook_length_count, hook_substitution, hookform_rhs,
    hookform_sum, kappa, l_poly, linear_extension_count, omega, r_poly, tree_shapes,
};
use hooks_core::partitions::{enumerate_c_tuples, enumerate_partitions_singleton_one};
use hooks_core::{
    dependence_graph, enumerate_e, grow_pi_increasing, is_irreducible, is_pi_increasing,
    psi_forward, psi_inverse, psi_trace, splice, unsplice, CTuple, MultiPoly, RootedTree,
    SetPartition, Vertex,
};
use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("reading {}: {e}", path.display()))
        .trim_end()
        .to_string()
}

fn parse<T: serde::de::DeserializeOwned>(name: &str) -> T {
    serde_json::from_str(&fixture(name)).unwrap_or_else(|e| panic!("parsing {name}: {e}"))
}

fn golden<T: serde::Serialize>(name: &str, value: &T) -> Outcome {
    let got = serde_json::to_string(value).map_err(|e| e.to_string())?;
    ensure(got == fixture(name), || format!("{name}: got {got}"))
}

fn l_equals_r() -> Outcome {
    for r in 2..=7 {
        let (l, rr) = (
            l_poly(r).map_err(|e| e.to_string())?,
            r_poly(r).map_err(|e| e.to_string())?,
        );
        ensure(l == rr, || {
            format!("r = {r}: {:?}", l.difference_witness(&rr, 5))
        })?;
    }
    Ok(())
}

fn dominating_sums() -> Outcome {
    let y11 = MultiPoly::y(1, 1);
    for r in 2..=5 {
        let l = &y11 * &l_poly(r).unwrap();
        let rr = &y11 * &r_poly(r).unwrap();
        ensure(dominating_tree_sum(r).unwrap() == l, || {
            format!("tree side fails at r = {r}")
        })?;
        ensure(dominating_code_sum(r).unwrap() == rr, || {
            format!("code side fails at r = {r}")
        })?;
    }
    Ok(())
}

fn bijection() -> Outcome {
    let mut checked = 0usize;
    for pi in enumerate_partitions_singleton_one(6).unwrap() {
        let mut image: BTreeMap<RootedTree, usize> = BTreeMap::new();
        for c in enumerate_c_tuples(&pi).unwrap() {
            let t = psi_forward(&pi, &c).map_err(|e| format!("{pi} {c}: {e}"))?;
            ensure(is_pi_increasing(&t, &pi), || {
                format!("{pi} {c}: {t} not in E(pi)")
            })?;
            ensure(kappa(&t) == omega(&c, &pi).unwrap(), || {
                format!("{pi} {c}: kappa != omega")
            })?;
            ensure(psi_inverse(&pi, &t).as_ref() == Ok(&c), || {
                format!("{pi} {c}: inverse mismatch")
            })?;
            *image.entry(t).or_default() += 1;
            checked += 1;
        }
        let e: BTreeMap<RootedTree, usize> = enumerate_e(&pi).unwrap().map(|t| (t, 1)).collect();
        ensure(image == e, || format!("{pi}: image differs from E(pi)"))?;
    }
    ensure(checked > 0, || "no codes checked".into())
}

fn golden_fixtures() -> Outcome {
    let s: RootedTree = parse("tree_s.json");
    golden("tree_s.json", &s)?;
    golden(
        "tree_s_decomposition_14.json",
        &s.v_decomposition(14).unwrap(),
    )?;

    let t: RootedTree = parse("splice_t.json");
    golden("splice_t_s.json", &splice(&t, 18, &s, 14).unwrap())?;

    let pi: SetPartition = parse("worked_pi.json");
    let c: CTuple = parse("worked_c.json");
    let lines: Vec<String> = psi_trace(&pi, &c)
        .unwrap()
        .iter()
        .map(|st| serde_json::to_string(st).unwrap())
        .collect();
    ensure(lines.join("\n") == fixture("worked_trace.jsonl"), || {
        format!("trace: {lines:?}")
    })?;
    let final_tree = psi_forward(&pi, &c).unwrap();
    golden("worked_tree.json", &final_tree)?;
    golden("worked_c.json", &psi_inverse(&pi, &final_tree).unwrap())?;
    golden(
        "worked_graph_9.json",
        &dependence_graph(&final_tree, 9, &pi).unwrap(),
    )?;
    ensure(!is_irreducible(&final_tree, &pi).unwrap(), || {
        "worked example should be reducible".into()
    })?;

    let pi5: SetPartition = parse("irreducible_pi.json");
    let t1: RootedTree = parse("irreducible_t1.json");
    let t2: RootedTree = parse("irreducible_t2.json");
    let joined = splice(&t1, 10, &t2, 5).unwrap();
    golden("irreducible_t.json", &joined)?;
    golden(
        "irreducible_t1_graph_10.json",
        &dependence_graph(&t1, 10, &pi5).unwrap(),
    )?;
    golden(
        "irreducible_t2_graph_11.json",
        &dependence_graph(&t2, 11, &pi5).unwrap(),
    )?;
    golden(
        "irreducible_t_graph_11.json",
        &dependence_graph(&joined, 11, &pi5).unwrap(),
    )?;
    for (name, tree) in [("T1", &t1), ("T2", &t2), ("T", &joined)] {
        ensure(is_irreducible(tree, &pi5).unwrap(), || {
            format!("{name} should be irreducible")
        })?;
    }
    ensure(
        unsplice(&joined, 10, &t1.vertex_set()).unwrap() == (t1, t2, 5),
        || "unsplice".into(),
    )?;
    golden(
        "irreducible_t_decomposition_11.json",
        &joined.v_decomposition(11).unwrap(),
    )?;
    golden(
        "irreducible_t_decomposition_10.json",
        &joined.v_decomposition(10).unwrap(),
    )?;
    golden(
        "irreducible_t_graph_10.json",
        &dependence_graph(&joined, 10, &pi5).unwrap(),
    )
}

fn hookform_specialization() -> Outcome {
    for r in 2..=6 {
        let rhs = hookform_rhs(r).unwrap();
        ensure(hook_substitution(&l_poly(r).unwrap()) == rhs, || {
            format!("r = {r}")
        })?;
    }
    Ok(())
}

fn cayley() -> Outcome {
    for r in 2..=6 {
        let prufer = cayley_degree_poly(r).unwrap();
        ensure(prufer == cayley_rhs(r).unwrap(), || {
            format!("Prüfer sum != product at r = {r}")
        })?;
        let lead = hookform_sum(r).unwrap().x_leading_part();
        ensure(lead == prufer, || {
            format!("leading part != Prüfer sum at r = {r}")
        })?;
    }
    for r in 2..=8usize {
        let expected = BigInt::from(r).pow(r as u32 - 2);
        ensure(r_poly(r).unwrap().eval_constant(1) == expected, || {
            format!("R at ones, r = {r}")
        })?;
        ensure(
            cayley_degree_poly(r).unwrap().eval_constant(1) == expected,
            || format!("Prüfer count, r = {r}"),
        )?;
    }
    Ok(())
}

fn classical() -> Outcome {
    for n in 1..=8 {
        for t in tree_shapes(n).unwrap() {
            let k = hook_length_count(&t);
            let b = brute_force_labelling_count(&t).unwrap();
            ensure(k == b, || {
                format!("shape {t}: formula {k}, brute force {b}")
            })?;
        }
    }
    let s: RootedTree = parse("tree_s.json");
    ensure(
        hook_length_count(&s) == linear_extension_count(&s).unwrap(),
        || "drawn tree".into(),
    )?;
    let keep: BTreeSet<Vertex> = s.vertices().take(10).collect();
    let small = RootedTree::new(
        s.root(),
        s.fathers()
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, &f)| (v, f))
            .collect(),
    )
    .unwrap();
    ensure(
        hook_length_count(&small) == brute_force_labelling_count(&small).unwrap(),
        || "10-vertex truncation of the drawn tree".into(),
    )?;
    for r in 1..=8 {
        ensure(binary_hook_sum(r).is_one(), || {
            format!("binary hook sum at r = {r}")
        })?;
    }
    Ok(())
}

fn random_increasing(rng: &mut ChaCha8Rng, labels: &[Vertex]) -> RootedTree {
    let edges: Vec<_> = (1..labels.len())
        .map(|j| (labels[j], labels[rng.gen_range(0..j)]))
        .collect();
    RootedTree::from_edges(labels[0], &edges).unwrap()
}

fn random_partition(rng: &mut ChaCha8Rng, n: Vertex) -> SetPartition {
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    for x in 1..=n {
        let b = rng.gen_range(0..=blocks.len());
        if b == blocks.len() {
            blocks.push(vec![x]);
        } else {
            blocks[b].push(x);
        }
    }
    SetPartition::new(blocks).unwrap()
}

fn splice_pairs() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut done = 0;
    while done < 1000 {
        let n = rng.gen_range(2..=16);
        let (mut a, mut b) = (vec![], vec![]);
        for x in 1..=n {
            if rng.gen_bool(0.5) {
                a.push(x)
            } else {
                b.push(x)
            }
        }
        if a.is_empty() || b.is_empty() {
            continue;
        }
        let v1 = a[rng.gen_range(0..a.len())];
        let below: Vec<Vertex> = b.iter().copied().filter(|&x| x < v1).collect();
        if below.is_empty() {
            continue;
        }
        let v2 = below[rng.gen_range(0..below.len())];
        let (t1, t2) = (
            random_increasing(&mut rng, &a),
            random_increasing(&mut rng, &b),
        );
        let t = splice(&t1, v1, &t2, v2).map_err(|e| e.to_string())?;
        let back = unsplice(&t, v1, &t1.vertex_set()).map_err(|e| e.to_string())?;
        ensure(back == (t1.clone(), t2.clone(), v2), || {
            format!("round trip of {t1} at {v1}, {t2} at {v2}")
        })?;
        for (tree, is_second) in [(&t1, false), (&t2, true)] {
            for i in tree.vertices() {
                for j in tree.vertices() {
                    ensure(
                        tree.is_ancestor(i, j).unwrap() == t.is_ancestor(i, j).unwrap(),
                        || format!("ancestry of {i}, {j} changed in {t}"),
                    )?;
                }
                let bump = usize::from(is_second && i == v2);
                ensure(
                    t.sons_count(i).unwrap() == tree.sons_count(i).unwrap() + bump,
                    || format!("sons of {i} changed in {t}"),
                )?;
            }
        }
        done += 1;
    }

    let (mut reducible, mut irreducible) = (0, 0);
    while reducible < 200 || irreducible < 200 {
        let n = rng.gen_range(3..=12);
        let pi = random_partition(&mut rng, n);
        let (mut s1, mut s2) = (BTreeSet::new(), BTreeSet::new());
        for block in pi.blocks() {
            let side = if rng.gen_bool(0.5) { &mut s1 } else { &mut s2 };
            side.extend(block.iter().copied());
        }
        if s1.is_empty() || s2.is_empty() {
            continue;
        }
        let (m1, m2) = (*s1.last().unwrap(), *s2.last().unwrap());
        let mut draw = |set: &BTreeSet<Vertex>, need_irreducible: bool| {
            (0..60).find_map(|_| {
                let t = grow_pi_increasing(&pi, set, |k| rng.gen_range(0..k)).unwrap();
                (!need_irreducible || is_irreducible(&t, &pi).unwrap()).then_some(t)
            })
        };
        let Some(t1) = draw(&s1, true) else { continue };
        let Some(t2) = draw(&s2, m1 < m2) else {
            continue;
        };
        let below: Vec<Vertex> = s2.iter().copied().filter(|&x| x < m1).collect();
        if below.is_empty() {
            continue;
        }
        let v2 = below[rng.gen_range(0..below.len())];
        let t = splice(&t1, m1, &t2, v2).unwrap();
        if m1 > m2 {
            ensure(!is_irreducible(&t, &pi).unwrap(), || {
                format!("{t} should be reducible")
            })?;
            let g = dependence_graph(&t, m1, &pi).unwrap();
            let (g1, g2) = (
                dependence_graph(&t1, m1, &pi).unwrap(),
                dependence_graph(&t2, v2, &pi).unwrap(),
            );
            let mut nodes = [g1.nodes, g2.nodes].concat();
            let mut edges = [g1.edges, g2.edges].concat();
            nodes.sort();
            edges.sort();
            ensure(g.nodes == nodes && g.edges == edges, || {
                format!("graph of {t} is not the disjoint union")
            })?;
            reducible += 1;
        } else {
            ensure(is_irreducible(&t, &pi).unwrap(), || {
                format!("{t} should be irreducible")
            })?;
            irreducible += 1;
        }
    }

    for r in 2..=6 {
        for pi in enumerate_partitions_singleton_one(r).unwrap() {
            let k = pi.len();
            for t in enumerate_e(&pi).unwrap() {
                let g = dependence_graph(&t, r as Vertex, &pi).unwrap();
                ensure(g.component_of(1) != g.component_of(k), || {
                    format!("{t} under {pi}")
                })?;
                ensure(!is_irreducible(&t, &pi).unwrap(), || {
                    format!("{t} under {pi}")
                })?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    type Criterion = (&'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("L = R for r = 2..7", 60, l_equals_r),
        (
            "dominating-function expansions of y11*L and y11*R, r = 2..5",
            30,
            dominating_sums,
        ),
        (
            "psi bijection and weight preservation on Pi_1({1..6})",
            60,
            bijection,
        ),
        (
            "golden fixtures reproduced byte for byte",
            10,
            golden_fixtures,
        ),
        (
            "hook substitution of L gives the falling-factorial form, r = 2..6",
            60,
            hookform_specialization,
        ),
        (
            "Prüfer degree polynomial, leading part, and r^(r-2) counts",
            60,
            cayley,
        ),
        ("hook length formula and binary hook sum", 60, classical),
        (
            "splice, reducibility and full-tree reducibility suites",
            60,
            splice_pairs,
        ),
    ];
    let mut failed = 0;
    for (n, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= Duration::from_secs(*budget), || {
                format!("took longer than {budget} s")
            })
        });
        match outcome {
            Ok(()) => println!(
                "criterion {}: PASS  {name} ({:.2} s)",
                n + 1,
                elapsed.as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {}: FAIL  {name} ({:.2} s): {why}",
                    n + 1,
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
