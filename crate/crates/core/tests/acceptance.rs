//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dyson_core::algebra::{parse_lincomb, LinComb, Rational};
use dyson_core::dse::{
    check_core_theorem, check_coideal, check_dead_equivalence, check_fdb, check_hopf_subalgebra, paired_equation,
    solve_bk, solve_foissy, BKEquation, FoissyEquation, FoissyF, Weights,
};
use dyson_core::functor::{enumerate_bigraded, enumerate_ptrees, fixpoint_check, preset, FunctorSpec, PRESET_NAMES};
use dyson_core::hopf::{
    antipode_forest, b_plus_ck, b_plus_weighted, coproduct_ck, coproduct_forest, coproduct_op, coproduct_op_forest,
    counit_ck, counit_op, counit_sides, delta_left, delta_right, tensor_mul,
};
use dyson_core::report::CheckReport;
use dyson_core::trees::{CombTree, Forest, Grading, OpForest, OpTree, Symmetry};

type Outcome = Result<String, String>;

fn lc(text: &str) -> LinComb<Forest> {
    parse_lincomb(text, Forest::parse).expect("well-formed table entry")
}

fn expect_eq<T: PartialEq + std::fmt::Display>(what: &str, got: &T, want: &T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

fn report_ok(r: CheckReport) -> Result<usize, String> {
    if r.passed {
        Ok(r.checked)
    } else {
        Err(r.to_string())
    }
}

const L4: &str = "[[[[]]]]";
const Y: &str = "[[[],[]]]";
const VL: &str = "[[[]],[]]";
const W: &str = "[[],[],[]]";
const FIVE: [&str; 9] = [
    "[[[[[]]]]]",
    "[[[[],[]]]]",
    "[[[[]],[]]]",
    "[[[[]]],[]]",
    "[[[],[]],[]]",
    "[[[]],[[]]]",
    "[[[],[],[]]]",
    "[[[]],[],[]]",
    "[[],[],[],[]]",
];

fn five(coeffs: [&str; 9]) -> String {
    coeffs
        .iter()
        .zip(FIVE)
        .filter(|(c, _)| **c != "0")
        .map(|(c, t)| format!("{c}*{t}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn bk_table(weights: Weights, table: &[String]) -> Outcome {
    let c = solve_bk(&BKEquation { weights, order: 4 });
    expect_eq("number of components", &c.len(), &table.len())?;
    for (k, want) in table.iter().enumerate() {
        expect_eq(&format!("c{k}"), &c[k], &lc(want))?;
    }
    Ok(format!("c0..c{} match", table.len() - 1))
}

fn criterion_1() -> Outcome {
    bk_table(
        Weights::Explicit([(1, Rational::from_integer(1.into()))].into_iter().collect()),
        &[
            "1*1".into(),
            "1*[]".into(),
            "2*[[]]".into(),
            "4*[[[]]] + 1*[[],[]]".into(),
            format!("8*{L4} + 2*{Y} + 4*{VL}"),
        ],
    )
}

fn criterion_2() -> Outcome {
    bk_table(
        Weights::Ones,
        &[
            "1*1".into(),
            "1*[]".into(),
            "2*[[]] + 1*[]".into(),
            "4*[[[]]] + 1*[[],[]] + 5*[[]] + 1*[]".into(),
            format!("8*{L4} + 2*{Y} + 4*{VL} + 16*[[[]]] + 5*[[],[]] + 9*[[]] + 1*[]"),
        ],
    )
}

fn criterion_3() -> Outcome {
    bk_table(
        Weights::InverseFactorial,
        &[
            "1*1".into(),
            "1/2*[]".into(),
            "1/2*[[]] + 1/6*[]".into(),
            "1/2*[[[]]] + 1/8*[[],[]] + 5/12*[[]] + 1/24*[]".into(),
            format!("1/2*{L4} + 1/8*{Y} + 1/4*{VL} + 2/3*[[[]]] + 5/24*[[],[]] + 5/24*[[]] + 1/120*[]"),
        ],
    )
}

fn criterion_4() -> Outcome {
    let tables: [(FoissyF, [String; 5]); 3] = [
        (
            FoissyF::Exp,
            [
                "1*[]".into(),
                "1*[[]]".into(),
                "1*[[[]]] + 1/2*[[],[]]".into(),
                format!("1*{L4} + 1/2*{Y} + 1*{VL} + 1/6*{W}"),
                five(["1", "1/2", "1", "1", "1/2", "1/2", "1/6", "1/2", "1/24"]),
            ],
        ),
        (
            FoissyF::Geometric,
            [
                "1*[]".into(),
                "1*[[]]".into(),
                "1*[[[]]] + 1*[[],[]]".into(),
                format!("1*{L4} + 1*{Y} + 2*{VL} + 1*{W}"),
                five(["1", "1", "2", "2", "2", "1", "1", "3", "1"]),
            ],
        ),
        (
            FoissyF::Binomial(3),
            [
                "1*[]".into(),
                "3*[[]]".into(),
                "9*[[[]]] + 3*[[],[]]".into(),
                format!("27*{L4} + 9*{Y} + 18*{VL} + 1*{W}"),
                five(["81", "27", "54", "54", "18", "27", "3", "9", "0"]),
            ],
        ),
    ];
    for (f, table) in tables {
        let name = format!("{f:?}");
        let a = solve_foissy(&FoissyEquation { f, order: 5 }).map_err(|e| e.to_string())?;
        for (i, want) in table.iter().enumerate() {
            expect_eq(&format!("{name} a{}", i + 1), &a[i + 1], &lc(want))?;
        }
    }
    Ok("exp, geometric and (1+Y)^3 match through a5".into())
}

fn counts(name: &str, bound: i64) -> Result<Vec<usize>, String> {
    let spec = preset(name).map_err(|e| e.to_string())?;
    let r = enumerate_ptrees(&spec, Grading::Leaves, bound, None).map_err(|e| e.to_string())?;
    Ok(r.counts(1))
}

fn criterion_5() -> Outcome {
    let binary = counts("binary", 6)?;
    if binary != [1, 1, 2, 5, 14, 42] {
        return Err(format!("binary counts {binary:?}"));
    }
    let stable = counts("stable-planar", 7)?;
    if stable != [1, 1, 3, 11, 45, 197, 903] {
        return Err(format!("stable-planar counts {stable:?}"));
    }
    Ok("1 1 2 5 14 42 / 1 1 3 11 45 197 903".into())
}

fn criterion_6() -> Outcome {
    let spec = preset("exp-stable").map_err(|e| e.to_string())?;
    let r = enumerate_ptrees(&spec, Grading::Leaves, 5, None).map_err(|e| e.to_string())?;
    // The factors as displayed, grouped by leaf count.
    let displayed: [&[u64]; 4] = [
        &[2],
        &[2, 6],
        &[2, 8, 6, 4, 24],
        &[2, 8, 4, 6, 4, 12, 4, 8, 12, 24, 12, 120],
    ];
    for (i, want) in displayed.iter().enumerate() {
        let leaves = i as i64 + 2;
        let mut got: Vec<String> = r.grade(leaves).map(|e| e.aut_order.to_string()).collect();
        let mut want: Vec<String> = want.iter().map(u64::to_string).collect();
        got.sort();
        want.sort();
        if got != want {
            return Err(format!("{leaves} leaves: |Aut| = {got:?}, displayed {want:?}"));
        }
    }
    let trivial: Vec<_> = r.grade(1).collect();
    if trivial.len() != 1 || trivial[0].aut_order != 1u32.into() {
        return Err("one-leaf trees".into());
    }
    Ok("1/2; 1/2 1/6; 1/2 1/8 1/6 1/4 1/24; 12 five-leaf factors ending 1/120".into())
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    for name in ["binary", "stable-planar", "exp-stable"] {
        let spec = preset(name).map_err(|e| e.to_string())?;
        checked += report_ok(check_fdb(&spec, 5).map_err(|e| e.to_string())?)?;
    }
    Ok(format!("{checked} tensor coefficients"))
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    for name in ["binary", "stable-planar", "exp-stable"] {
        let spec = preset(name).map_err(|e| e.to_string())?;
        let eq = paired_equation(name).ok_or("no paired equation")?;
        checked += report_ok(check_core_theorem(&spec, &eq, 4).map_err(|e| e.to_string())?)?;
    }
    Ok(format!("{checked} forest coefficients"))
}

/// Property suites, each against brute force or an explicit identity.
fn criterion_9() -> Outcome {
    let mut parts = Vec::new();
    parts.push(format!("ck bialgebra {}", ck_properties()?));
    parts.push(format!("operadic bialgebra {}", op_properties()?));
    parts.push(format!("cocycles {}", cocycles()?));
    parts.push(format!("aut {}", aut_brute_force()?));
    let mut fix = 0;
    for name in PRESET_NAMES {
        let spec = preset(name).map_err(|e| e.to_string())?;
        fix += report_ok(fixpoint_check(&spec, 6).map_err(|e| e.to_string())?)?;
    }
    parts.push(format!("fixpoint {fix}"));
    let mut dead = 0;
    for name in ["binary", "list"] {
        let spec = preset(name).map_err(|e| e.to_string())?;
        dead += report_ok(check_dead_equivalence(&spec, 5).map_err(|e| e.to_string())?)?;
    }
    parts.push(format!("dead {dead}"));
    let mut coideal = 0;
    for spec in [
        preset("binary").and_then(|s| s.with_white_ops()),
        preset("ternary-foissy"),
        preset("list"),
        preset("exp"),
    ] {
        let spec = spec.map_err(|e| e.to_string())?;
        coideal += report_ok(check_coideal(&spec, 4))?;
    }
    parts.push(format!("coideal {coideal}"));
    Ok(parts.join(", "))
}

fn ck_properties() -> Result<usize, String> {
    let mut checked = 0;
    let trees: Vec<CombTree> = (1..=5).flat_map(CombTree::all_with_nodes).collect();
    for t in &trees {
        let f = Forest::single(t.clone());
        if delta_left(&f, coproduct_forest) != delta_right(&f, coproduct_forest) {
            return Err(format!("coassociativity fails on {t}"));
        }
        let (l, r) = counit_sides(&coproduct_ck(t), counit_ck);
        let id = LinComb::term(f.clone(), Rational::from_integer(1.into()));
        if l != id || r != id {
            return Err(format!("counit fails on {t}"));
        }
        for side in [false, true] {
            let mut total: LinComb<Forest> = LinComb::zero();
            for ((crown, trunk), c) in coproduct_ck(t).iter() {
                let (s, keep) = if side { (antipode_forest(crown), trunk) } else { (antipode_forest(trunk), crown) };
                for (x, d) in s.iter() {
                    total.add_term(x.mul(keep), c * d);
                }
            }
            if !total.is_zero() {
                return Err(format!("antipode axiom fails on {t}: {total}"));
            }
        }
        for ((a, b), _) in coproduct_ck(t).iter() {
            if a.node_count() + b.node_count() != t.node_count() {
                return Err(format!("coproduct of {t} is not homogeneous"));
            }
        }
        checked += 1;
    }
    for n in 0..=5 {
        for x in Forest::all_with_nodes(n) {
            for m in 0..=(5 - n) {
                for y in Forest::all_with_nodes(m) {
                    if coproduct_forest(&x.mul(&y)) != tensor_mul(&coproduct_forest(&x), &coproduct_forest(&y)) {
                        return Err(format!("Delta is not multiplicative on {x}, {y}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

fn generator_spec() -> FunctorSpec {
    FunctorSpec::from_json(
        r#"{
          "colors": ["*", "a", "b"],
          "ops": [
            {"name": "b2", "output": "*", "inputs": ["*", "*"], "symmetry": "planar"},
            {"name": "s3", "output": "*", "inputs": ["*", "*", "*"], "symmetry": "symmetric"},
            {"name": "c0", "output": "*", "inputs": [], "symmetry": "planar"},
            {"name": "u1", "output": "*", "inputs": ["*"], "symmetry": "planar"},
            {"name": "f", "output": "a", "inputs": ["a", "b"], "symmetry": "planar"},
            {"name": "g", "output": "b", "inputs": ["a", "a"], "symmetry": "symmetric"},
            {"name": "e0", "output": "b", "inputs": [], "symmetry": "planar"}
          ]
        }"#,
    )
    .expect("valid spec")
}

fn op_properties() -> Result<usize, String> {
    let spec = generator_spec();
    let trees: Vec<OpTree> = enumerate_ptrees(&spec, Grading::Nodes, 5, None)
        .map_err(|e| e.to_string())?
        .entries
        .into_iter()
        .map(|e| e.tree)
        .collect();
    let mut checked = 0;
    for t in &trees {
        let f = OpForest::single(t.clone());
        if delta_left(&f, coproduct_op_forest) != delta_right(&f, coproduct_op_forest) {
            return Err(format!("coassociativity fails on {t}"));
        }
        let (l, r) = counit_sides(&coproduct_op(t), counit_op);
        let id = LinComb::term(f.clone(), Rational::from_integer(1.into()));
        if l != id || r != id {
            return Err(format!("counit fails on {t}"));
        }
        for ((a, b), _) in coproduct_op(t).iter() {
            let op = |x: &OpForest| x.grade(Grading::Operadic);
            if op(a) + op(b) != t.operadic_degree() || a.node_count() + b.node_count() != t.node_count() {
                return Err(format!("coproduct of {t} is not homogeneous"));
            }
        }
        checked += 1;
    }
    let small: Vec<&OpTree> = trees.iter().filter(|t| t.node_count() <= 2).collect();
    for x in &small {
        for y in &small {
            let (fx, fy) = (OpForest::single((*x).clone()), OpForest::single((*y).clone()));
            if coproduct_op_forest(&fx.mul(&fy)) != tensor_mul(&coproduct_op_forest(&fx), &coproduct_op_forest(&fy)) {
                return Err(format!("Delta is not multiplicative on {x}, {y}"));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

fn cocycles() -> Result<usize, String> {
    let one = || Rational::from_integer(1.into());
    let mut checked = 0;
    for n in 0..=4 {
        for x in Forest::all_with_nodes(n) {
            let lhs = coproduct_ck(&b_plus_ck(&x));
            let mut rhs = LinComb::term((Forest::single(b_plus_ck(&x)), Forest::unit()), one());
            rhs.add_assign(&coproduct_forest(&x).map_right(|r| LinComb::term(Forest::single(b_plus_ck(r)), one())));
            if lhs != rhs {
                return Err(format!("cocycle identity fails on {x}"));
            }
            checked += 1;
        }
    }
    let spec = generator_spec();
    let pool: Vec<OpTree> = enumerate_ptrees(&spec, Grading::Nodes, 4, None)
        .map_err(|e| e.to_string())?
        .entries
        .into_iter()
        .map(|e| e.tree)
        .collect();
    for name in ["b2", "s3", "u1", "f", "g"] {
        let op = spec.op(name).ok_or("missing op")?;
        let mut fillings = vec![Vec::<OpTree>::new()];
        for input in &op.inputs {
            let mut next = Vec::new();
            for fill in &fillings {
                let used: usize = fill.iter().map(OpTree::node_count).sum();
                for t in pool.iter().filter(|t| t.root_color() == input && used + t.node_count() <= 4) {
                    let mut f = fill.clone();
                    f.push(t.clone());
                    next.push(f);
                }
            }
            fillings = next;
        }
        for fill in fillings {
            let f = OpForest::from_trees(fill);
            let bf = b_plus_weighted(&op, &f).map_err(|e| e.to_string())?;
            let lhs = bf.map_linear(coproduct_op);
            let mut rhs = coproduct_op_forest(&f).map_right(|r| {
                b_plus_weighted(&op, r)
                    .expect("same colours as f")
                    .map_linear(|t| LinComb::term(OpForest::single(t.clone()), one()))
            });
            let e = OpForest::single(OpTree::trivial(op.output.clone()));
            rhs.add_assign(&bf.map_linear(|t| LinComb::term((OpForest::single(t.clone()), e.clone()), one())));
            if lhs != rhs {
                return Err(format!("single-term defect fails for {name} on {f}"));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn iso_comb(a: &CombTree, b: &CombTree) -> u64 {
    let (ca, cb) = (a.children(), b.children());
    if ca.len() != cb.len() {
        return 0;
    }
    permutations(ca.len())
        .iter()
        .map(|p| p.iter().enumerate().map(|(i, &j)| iso_comb(&ca[i], &cb[j])).product::<u64>())
        .sum()
}

fn iso_op(a: &OpTree, b: &OpTree) -> u64 {
    match (a.op(), b.op()) {
        (None, None) => u64::from(a.root_color() == b.root_color()),
        (Some(x), Some(y)) if x.name == y.name => {
            let (ca, cb) = (a.children(), b.children());
            match x.symmetry {
                Symmetry::Planar => ca.iter().zip(cb).map(|(p, q)| iso_op(p, q)).product(),
                Symmetry::Symmetric => permutations(ca.len())
                    .iter()
                    .map(|p| p.iter().enumerate().map(|(i, &j)| iso_op(&ca[i], &cb[j])).product::<u64>())
                    .sum(),
            }
        }
        _ => 0,
    }
}

fn aut_brute_force() -> Result<usize, String> {
    let mut checked = 0;
    for n in 1..=6 {
        for t in CombTree::all_with_nodes(n) {
            if t.aut_order() != iso_comb(&t, &t).into() {
                return Err(format!("|Aut {t}|"));
            }
            checked += 1;
        }
    }
    let mut trees: Vec<OpTree> = Vec::new();
    for (name, leaves) in [("exp-stable", 7), ("exp", 3), ("two-color", 7)] {
        let spec = preset(name).map_err(|e| e.to_string())?;
        trees.extend(enumerate_bigraded(&spec, leaves, 6).into_iter().map(|(t, _, _)| t));
    }
    trees.extend(
        enumerate_ptrees(&generator_spec(), Grading::Nodes, 6, None)
            .map_err(|e| e.to_string())?
            .entries
            .into_iter()
            .map(|e| e.tree),
    );
    for t in &trees {
        if t.aut_order() != iso_op(t, t).into() {
            return Err(format!("|Aut {t}|"));
        }
        checked += 1;
    }
    Ok(checked)
}

fn criterion_10() -> Outcome {
    let c = solve_bk(&BKEquation {
        weights: Weights::Explicit([(1, Rational::from_integer(1.into()))].into_iter().collect()),
        order: 4,
    });
    let checked = report_ok(check_hopf_subalgebra(&c))?;
    Ok(format!("Delta(c0..c4) solved in the product span ({checked} solves)"))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("BK quadratic example", Duration::from_secs(1), criterion_1),
        ("BK all-ones example", Duration::from_secs(1), criterion_2),
        ("BK symmetry-factor example", Duration::from_secs(1), criterion_3),
        ("Foissy families", Duration::from_secs(2), criterion_4),
        ("enumeration sequences", Duration::from_secs(5), criterion_5),
        ("symmetry factors", Duration::from_secs(5), criterion_6),
        ("Faa di Bruno", Duration::from_secs(30), criterion_7),
        ("core-count theorem", Duration::from_secs(10), criterion_8),
        ("property suites", Duration::from_secs(120), criterion_9),
        ("Hopf subalgebra", Duration::from_secs(5), criterion_10),
    ];
    let mut failed = 0;
    for (i, (title, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (verdict, detail) = match outcome {
            Ok(d) if elapsed <= *limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took longer than {limit:?}")),
            Err(e) => ("FAIL", e),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {verdict} [{:.2}s] {title}: {detail}", i + 1, elapsed.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
