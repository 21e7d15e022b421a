//! The pair-counting function `C`, 2-conjugacy, class sizes and the
//! generalized commuting fraction.
//!
//! For a crossed module `(G, H, d, >)` and `g1, g2` in `G`,
//!
//! ```text
//! C(g1, g2) = #{ (h, k) in H × G : d(h) = g1 k g2⁻¹ k⁻¹ }
//! ```
//!
//! `C` is the unnormalized cylinder matrix entry. It is computed two ways:
//! a fast path that counts `k` with `g1 k g2⁻¹ k⁻¹` in the image of `d` and
//! multiplies by `|ker d|`, and a plain double loop kept as an oracle; tests
//! hold the two equal. `C(g1, g2) != 0` defines the 2-conjugacy relation,
//! whose classes, class sizes and counting identities are all checked here
//! against explicit witnesses rather than trusted.

use serde::Serialize;

use crate::crossed::CrossedModule;
use crate::error::{Error, Result};
use crate::scalar::{rat, Rat};

/// An element of `W(g1, g2)`: a witness pair for 2-conjugacy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CPair {
    pub h: usize,
    pub k: usize,
}

/// `C(g1, g2)` by the kernel-factored count.
pub fn c_function(cm: &CrossedModule, g1: usize, g2: usize) -> u64 {
    let g = cm.g();
    let hits = g
        .elements()
        .filter(|&k| cm.in_image(g.mul(g.mul(g1, k), g.mul(g.inv(g2), g.inv(k)))))
        .count() as u64;
    cm.kernel().len() as u64 * hits
}

/// `C(g1, g2)` by brute force over all of `H × G`.
pub fn c_function_oracle(cm: &CrossedModule, g1: usize, g2: usize) -> u64 {
    w_set(cm, g1, g2).len() as u64
}

/// Materializes `W(g1, g2) = { (h, k) : d(h) = g1 k g2⁻¹ k⁻¹ }`.
pub fn w_set(cm: &CrossedModule, g1: usize, g2: usize) -> Vec<CPair> {
    let g = cm.g();
    let mut out = Vec::new();
    for k in g.elements() {
        let rhs = g.mul(g.mul(g1, k), g.mul(g.inv(g2), g.inv(k)));
        for h in cm.h().elements() {
            if cm.boundary_of(h) == rhs {
                out.push(CPair { h, k });
            }
        }
    }
    out
}

/// The full `|G| × |G|` table of `C`.
pub fn c_table(cm: &CrossedModule) -> Vec<Vec<u64>> {
    let n = cm.g().order();
    (0..n)
        .map(|g1| (0..n).map(|g2| c_function(cm, g1, g2)).collect())
        .collect()
}

/// The partition of `G` into 2-conjugacy classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoConjClasses {
    /// Sorted classes, listed by least member.
    pub classes: Vec<Vec<usize>>,
    /// Class index of each element of `G`.
    pub class_of: Vec<usize>,
}

impl TwoConjClasses {
    pub fn count(&self) -> usize {
        self.classes.len()
    }
}

/// Partitions `G` by `g1 ~ g2 ⇔ C(g1, g2) != 0`.
///
/// The relation is not assumed to be an equivalence: reflexivity, symmetry
/// and transitivity of the nonzero pattern are re-checked on the computed
/// table, and a violation panics (it would mean the counting code is wrong,
/// not the input).
pub fn two_conjugacy_classes(cm: &CrossedModule) -> TwoConjClasses {
    let n = cm.g().order();
    let table = c_table(cm);
    for g in 0..n {
        assert!(table[g][g] != 0, "2-conjugacy must be reflexive");
        for j in 0..n {
            assert_eq!(
                table[g][j] != 0,
                table[j][g] != 0,
                "2-conjugacy must be symmetric"
            );
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for g in 0..n {
        if class_of[g] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let members: Vec<usize> = (0..n).filter(|&j| table[g][j] != 0).collect();
        for &m in &members {
            assert_eq!(class_of[m], usize::MAX, "classes must not overlap");
            class_of[m] = id;
        }
        classes.push(members);
    }
    // transitivity, re-verified rather than assumed
    for g1 in 0..n {
        for g2 in 0..n {
            assert_eq!(
                table[g1][g2] != 0,
                class_of[g1] == class_of[g2],
                "2-conjugacy must be transitive"
            );
        }
    }
    TwoConjClasses { classes, class_of }
}

/// Checks the explicit witness maps behind the equivalence-relation and
/// symmetry arguments, as actual bijections on materialized `W` sets.
///
/// * reflexivity: `(1_H, 1_G)` lies in `W(g, g)`;
/// * symmetry: `(h, k) ↦ (k⁻¹ > h⁻¹, k⁻¹)` maps `W(g1, g2)` to `W(g2, g1)`
///   and composing it with itself is the identity;
/// * transitivity: `(h, k), (h', k') ↦ (h (k > h'), k k')` lands in
///   `W(g1, g3)` for every pair of witnesses;
/// * class constancy: with a fixed witness `(h, k)` in `W(g1, g2)`,
///   `(h', k') ↦ (h' ((k' k⁻¹) > h⁻¹), k' k⁻¹)` maps `W(g1, g2)` to
///   `W(g1, g1)`, with inverse `(h'', k'') ↦ (h'' (k'' > h), k'' k)`.
pub fn verify_witnesses(cm: &CrossedModule) -> Result<()> {
    let g = cm.g();
    let h = cm.h();
    let n = g.order();
    let violation = |what: &str, w: Vec<usize>| -> Result<()> {
        Err(Error::Parse(format!(
            "witness check failed: {what} at {w:?}"
        )))
    };

    let contains = |set: &[CPair], p: CPair| set.binary_search(&p).is_ok();
    let mut sets: Vec<Vec<Vec<CPair>>> = Vec::with_capacity(n);
    for g1 in 0..n {
        let mut row = Vec::with_capacity(n);
        for g2 in 0..n {
            let mut s = w_set(cm, g1, g2);
            s.sort_unstable();
            row.push(s);
        }
        sets.push(row);
    }

    for g1 in 0..n {
        // reflexive witness
        if !contains(&sets[g1][g1], CPair { h: 0, k: 0 }) {
            return violation("reflexivity", vec![g1]);
        }
        for g2 in 0..n {
            let w12 = &sets[g1][g2];
            // symmetry witness map and its involution
            for &p in w12 {
                let q = CPair {
                    h: cm.act(g.inv(p.k), h.inv(p.h)),
                    k: g.inv(p.k),
                };
                if !contains(&sets[g2][g1], q) {
                    return violation("symmetry image", vec![g1, g2, p.h, p.k]);
                }
                let back = CPair {
                    h: cm.act(g.inv(q.k), h.inv(q.h)),
                    k: g.inv(q.k),
                };
                if back != p {
                    return violation("symmetry involution", vec![g1, g2, p.h, p.k]);
                }
            }
            // class-constancy bijection W(g1,g2) <-> W(g1,g1)
            if let Some(&base) = w12.first() {
                let w11 = &sets[g1][g1];
                let fwd = |p: CPair| CPair {
                    h: h.mul(p.h, cm.act(g.mul(p.k, g.inv(base.k)), h.inv(base.h))),
                    k: g.mul(p.k, g.inv(base.k)),
                };
                let bwd = |p: CPair| CPair {
                    h: h.mul(p.h, cm.act(p.k, base.h)),
                    k: g.mul(p.k, base.k),
                };
                for &p in w12 {
                    let q = fwd(p);
                    if !contains(w11, q) || bwd(q) != p {
                        return violation("constancy forward", vec![g1, g2, p.h, p.k]);
                    }
                }
                for &q in w11 {
                    let p = bwd(q);
                    if !contains(w12, p) || fwd(p) != q {
                        return violation("constancy backward", vec![g1, g2, q.h, q.k]);
                    }
                }
            }
            // transitivity witness on every pair of elements
            for g3 in 0..n {
                if sets[g1][g2].is_empty() || sets[g2][g3].is_empty() {
                    continue;
                }
                for &p in &sets[g1][g2] {
                    for &q in &sets[g2][g3] {
                        let r = CPair {
                            h: h.mul(p.h, cm.act(p.k, q.h)),
                            k: g.mul(p.k, q.k),
                        };
                        if !contains(&sets[g1][g3], r) {
                            return violation("transitivity", vec![g1, g2, g3, p.h, p.k, q.h, q.k]);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Checks, for every class: the size formula `#class = |G||H| / C(g, g)`,
/// constancy of `C` on the class, and the global symmetry
/// `C(g1, g2) = C(g2, g1)`.
pub fn verify_class_sizes(cm: &CrossedModule) -> Result<()> {
    let n = cm.g().order();
    let gh = (cm.g().order() * cm.h().order()) as u64;
    let table = c_table(cm);
    for g1 in 0..n {
        for g2 in 0..n {
            if table[g1][g2] != table[g2][g1] {
                return Err(Error::Parse(format!(
                    "C symmetry fails at ({g1},{g2}): {} vs {}",
                    table[g1][g2], table[g2][g1]
                )));
            }
        }
    }
    let partition = two_conjugacy_classes(cm);
    for class in &partition.classes {
        let rep = class[0];
        let diag = table[rep][rep];
        for &g1 in class {
            for &g2 in class {
                if table[g1][g2] != diag {
                    return Err(Error::Parse(format!(
                        "C must be constant on a class: C({g1},{g2}) = {} but C({rep},{rep}) = {diag}",
                        table[g1][g2]
                    )));
                }
            }
            if !gh.is_multiple_of(table[g1][g1]) || (gh / table[g1][g1]) as usize != class.len() {
                return Err(Error::Parse(format!(
                    "class size formula fails at {g1}: |G||H|/C = {}/{} vs #class = {}",
                    gh,
                    table[g1][g1],
                    class.len()
                )));
            }
        }
    }
    Ok(())
}

/// Number of 2-conjugacy classes via the square-sum identity
/// `#classes = (Σ C(g, g1)²) / (|G|² |H|²)`, as an exact rational.
pub fn count_classes_by_squares(cm: &CrossedModule) -> Rat {
    let table = c_table(cm);
    let total: i128 = table
        .iter()
        .flatten()
        .map(|&c| (c as i128) * (c as i128))
        .sum();
    let gh = (cm.g().order() * cm.h().order()) as i128;
    rat(total, gh * gh)
}

/// `#{ (h, g1, g2) : d(h) = [g1, g2] } / (|H| |G|²)`.
pub fn generalized_commuting_fraction(cm: &CrossedModule) -> Rat {
    let g = cm.g();
    let mut count: i128 = 0;
    for g1 in g.elements() {
        for g2 in g.elements() {
            let commutator = g.mul(g.mul(g1, g2), g.mul(g.inv(g1), g.inv(g2)));
            count += cm
                .h()
                .elements()
                .filter(|&h| cm.boundary_of(h) == commutator)
                .count() as i128;
        }
    }
    let n = g.order() as i128;
    rat(count, cm.h().order() as i128 * n * n)
}

/// Checks that the number of 2-conjugacy classes equals the generalized
/// commuting fraction times `|G|`, and that every row of `C` sums to
/// `|H||G|`.
pub fn verify_gcf_identity(cm: &CrossedModule) -> Result<()> {
    let classes = two_conjugacy_classes(cm).count();
    let gcf = generalized_commuting_fraction(cm);
    let predicted = gcf * rat(cm.g().order() as i128, 1);
    if predicted != rat(classes as i128, 1) {
        return Err(Error::Parse(format!(
            "class count {classes} differs from gcf·|G| = {predicted}"
        )));
    }
    let by_squares = count_classes_by_squares(cm);
    if by_squares != rat(classes as i128, 1) {
        return Err(Error::Parse(format!(
            "class count {classes} differs from the square-sum value {by_squares}"
        )));
    }
    let gh = (cm.g().order() * cm.h().order()) as u64;
    let table = c_table(cm);
    for (g1, row) in table.iter().enumerate() {
        let sum: u64 = row.iter().sum();
        if sum != gh {
            return Err(Error::Parse(format!(
                "row sum at g={g1} is {sum}, expected |H||G| = {gh}"
            )));
        }
    }
    Ok(())
}

/// Everything the `classes` command reports, in one serializable bundle.
#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub module: String,
    pub group_order: usize,
    pub h_order: usize,
    pub classes: Vec<Vec<usize>>,
    pub class_sizes: Vec<usize>,
    pub c_diagonal: Vec<u64>,
    pub gcf: String,
    pub gcf_times_order_equals_class_count: bool,
}

pub fn class_report(cm: &CrossedModule) -> ClassReport {
    let partition = two_conjugacy_classes(cm);
    let gcf = generalized_commuting_fraction(cm);
    let ok = verify_gcf_identity(cm).is_ok()
        && verify_class_sizes(cm).is_ok()
        && verify_witnesses(cm).is_ok();
    ClassReport {
        module: cm.name().to_string(),
        group_order: cm.g().order(),
        h_order: cm.h().order(),
        class_sizes: partition.classes.iter().map(Vec::len).collect(),
        c_diagonal: (0..cm.g().order()).map(|g| c_function(cm, g, g)).collect(),
        classes: partition.classes,
        gcf: crate::scalar::format_rat(&gcf),
        gcf_times_order_equals_class_count: ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn c_values_on_fixtures() {
        let x1 = fixtures::x1();
        assert_eq!(c_function(&x1, 0, 0), 1);

        // trivial H over S3: C(g,g) is the centralizer order
        let x2 = fixtures::x2();
        assert_eq!(c_function(&x2, 0, 0), 6);
        for g in x2.g().elements() {
            let centralizer = x2
                .g()
                .elements()
                .filter(|&k| x2.g().mul(g, k) == x2.g().mul(k, g))
                .count() as u64;
            assert_eq!(c_function(&x2, g, g), centralizer);
        }

        // identity module on Z2: h is forced, k is free
        let x3 = fixtures::x3();
        for g1 in 0..2 {
            for g2 in 0..2 {
                assert_eq!(c_function(&x3, g1, g2), 2);
            }
        }

        // trivial boundary, Z2 inverting Z3: diagonal 6, off-diagonal 0
        let x5 = fixtures::x5();
        for g1 in 0..2 {
            for g2 in 0..2 {
                assert_eq!(c_function(&x5, g1, g2), if g1 == g2 { 6 } else { 0 });
            }
        }
    }

    #[test]
    fn fast_and_oracle_counts_agree() {
        for cm in fixtures::all() {
            for g1 in cm.g().elements() {
                for g2 in cm.g().elements() {
                    assert_eq!(
                        c_function(&cm, g1, g2),
                        c_function_oracle(&cm, g1, g2),
                        "{} at ({g1},{g2})",
                        cm.name()
                    );
                }
            }
        }
    }

    #[test]
    fn w_set_examples() {
        let x3 = fixtures::x3();
        assert_eq!(
            w_set(&x3, 0, 0),
            vec![CPair { h: 0, k: 0 }, CPair { h: 0, k: 1 }]
        );

        let x1 = fixtures::x1();
        assert_eq!(w_set(&x1, 0, 0), vec![CPair { h: 0, k: 0 }]);

        // X4 at (0,1): d(h) must be 1, so h is odd in Z4 and k is free
        let x4 = fixtures::x4();
        let w = w_set(&x4, 0, 1);
        assert_eq!(w.len(), 4);
        assert!(w.iter().all(|p| p.h == 1 || p.h == 3));
    }

    #[test]
    fn classes_on_fixtures() {
        // H trivial: 2-conjugacy is ordinary conjugacy
        let x2 = fixtures::x2();
        let part = two_conjugacy_classes(&x2);
        assert_eq!(part.classes, x2.g().conjugacy_classes());
        assert_eq!(part.count(), 3);

        assert_eq!(
            two_conjugacy_classes(&fixtures::x3()).classes,
            vec![vec![0, 1]]
        );
        assert_eq!(
            two_conjugacy_classes(&fixtures::x5()).classes,
            vec![vec![0], vec![1]]
        );
    }

    #[test]
    fn class_sizes_and_identities() {
        for cm in fixtures::all() {
            verify_class_sizes(&cm).unwrap();
            verify_gcf_identity(&cm).unwrap();
            verify_witnesses(&cm).unwrap();
        }
        // the worked size checks
        assert_eq!(c_function(&fixtures::x3(), 0, 0), 2); // class {0,1}: 2·2/2 = 2
        assert_eq!(c_function(&fixtures::x5(), 0, 0), 6); // singleton: 2·3/6 = 1
    }

    #[test]
    fn square_sum_class_counts() {
        assert_eq!(count_classes_by_squares(&fixtures::x3()), rat(1, 1));
        assert_eq!(count_classes_by_squares(&fixtures::x5()), rat(2, 1));
        assert_eq!(count_classes_by_squares(&fixtures::x1()), rat(1, 1));
    }

    #[test]
    fn gcf_values() {
        assert_eq!(generalized_commuting_fraction(&fixtures::x2()), rat(1, 2));
        assert_eq!(generalized_commuting_fraction(&fixtures::x3()), rat(1, 2));
        assert_eq!(generalized_commuting_fraction(&fixtures::x5()), rat(1, 1));
        assert_eq!(generalized_commuting_fraction(&fixtures::x4()), rat(1, 2));
    }
}
