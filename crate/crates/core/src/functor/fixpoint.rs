
use super::enumerate::{check_leaf_finite, enumerate_bigraded, enumerate_ptrees, EnumResult};
use super::spec::{dead_colors, FunctorSpec};
use super::FunctorError;
use crate::algebra::{factorial, from_biguint, inverse, BiPoly, TruncatedPoly};
use crate::report::CheckReport;
use crate::trees::{Color, Grading, Symmetry};

/// tᵢ(x) = Σ x^leaves / |Aut| over the trees of root colour i.
pub fn generating_function(result: &EnumResult, color: &Color, n: usize) -> TruncatedPoly {
    let mut p = TruncatedPoly::zero(n);
    for e in &result.entries {
        if e.tree.root_color() == color {
            p.add_at(e.tree.leaves(), &inverse(&e.aut_order));
        }
    }
    p
}

/// Checks tᵢ = x + Σ_b (contribution of b) through xᴺ for every colour i,
/// with the tᵢ read off the enumerated trees.
///
/// Specs with infinitely many trees per leaf count are checked instead on
/// tᵢ(x, y) = Σ x^leaves·y^nodes / |Aut| against x + y·Σ_b (...), through
/// xᴺyᴺ.
pub fn fixpoint_check(spec: &FunctorSpec, n: usize) -> Result<CheckReport, FunctorError> {
    if let Err(FunctorError::InfiniteGrade(why)) = check_leaf_finite(spec, n) {
        let mut report = fixpoint_check_bigraded(spec, n)?;
        report.note(format!("leaf grades are infinite ({why}); checked with a node variable"));
        return Ok(report);
    }
    let result = enumerate_ptrees(spec, Grading::Leaves, n as i64, None)?;
    let colors = spec.color_list();
    let t: Vec<TruncatedPoly> = colors.iter().map(|c| generating_function(&result, c, n)).collect();
    let index = |c: &Color| colors.iter().position(|d| d == c).expect("declared colour");

    let explicit: Vec<_> = spec
        .instantiate_with(|_| 0)
        .into_iter()
        .filter(|o| o.family.is_none())
        .collect();
    let dead = dead_colors(&explicit, spec);
    // Beyond arity N an op over leafy inputs only contributes above xᴺ.
    let ops = spec.instantiate_with(|fam| {
        if dead.contains(&Color::new(&fam.input_color)) {
            fam.arity_max.unwrap_or(0)
        } else {
            n
        }
    });

    let mut rhs: Vec<TruncatedPoly> = colors.iter().map(|_| TruncatedPoly::x(n)).collect();
    for op in &ops {
        let term = match op.symmetry {
            Symmetry::Planar => op
                .inputs
                .iter()
                .fold(TruncatedPoly::one(n), |acc, c| acc.mul(&t[index(c)])),
            Symmetry::Symmetric => {
                op.input_color_counts()
                    .iter()
                    .fold(TruncatedPoly::one(n), |acc, (c, m)| {
                        acc.mul(&t[index(c)].pow(*m).scale(&from_biguint(&factorial(*m)).recip()))
                    })
            }
        };
        let i = index(&op.output);
        rhs[i] = rhs[i].add(&term);
    }

    let mut report = CheckReport::new("fixpoint");
    for (i, c) in colors.iter().enumerate() {
        for k in 0..=n {
            let (l, r) = (t[i].coeff(k), rhs[i].coeff(k));
            report.expect(l == r, || format!("colour {c}, x^{k}: trees give {l}, equation gives {r}"));
        }
    }
    Ok(report)
}

fn fixpoint_check_bigraded(spec: &FunctorSpec, n: usize) -> Result<CheckReport, FunctorError> {
    let colors = spec.color_list();
    let index = |c: &Color| colors.iter().position(|d| d == c).expect("declared colour");
    let mut t: Vec<BiPoly> = colors.iter().map(|_| BiPoly::zero(n, n)).collect();
    for (tree, leaves, nodes) in enumerate_bigraded(spec, n, n) {
        t[index(tree.root_color())].add_at(leaves, nodes, &inverse(&tree.aut_order()));
    }
    // Each input contributes at least one leaf or node.
    let ops = spec.instantiate_ops(2 * n);
    let mut rhs: Vec<BiPoly> = colors.iter().map(|_| BiPoly::monomial(n, n, 1, 0)).collect();
    for op in &ops {
        let term = match op.symmetry {
            Symmetry::Planar => op
                .inputs
                .iter()
                .fold(BiPoly::monomial(n, n, 0, 1), |acc, c| acc.mul(&t[index(c)])),
            Symmetry::Symmetric => op
                .input_color_counts()
                .iter()
                .fold(BiPoly::monomial(n, n, 0, 1), |acc, (c, m)| {
                    acc.mul(&t[index(c)].pow(*m).scale(&from_biguint(&factorial(*m)).recip()))
                }),
        };
        let i = index(&op.output);
        rhs[i] = rhs[i].add(&term);
    }
    let mut report = CheckReport::new("fixpoint");
    for (i, c) in colors.iter().enumerate() {
        for k in 0..=n {
            for m in 0..=n {
                let (l, r) = (t[i].coeff(k, m), rhs[i].coeff(k, m));
                report.expect(l == r, || {
                    format!("colour {c}, x^{k} y^{m}: trees give {l}, equation gives {r}")
                });
            }
        }
    }
    Ok(report)
}
