//! Surface invariants as linear maps: matrices on bases indexed by tuples
//! of `G`-elements, composed by gluing.
//!
//! A surface with `n` in-circles and `m` out-circles gives a
//! `|G|^m × |G|^n` matrix whose `(out, in)` entry is the invariant at those
//! boundary colours. Gluing surfaces corresponds to multiplying matrices,
//! and the cylinder's matrix is an idempotent whose rank is the number of
//! 2-conjugacy classes; the class indicator vectors are exactly fixed.
//!
//! Basis tuples are enumerated lexicographically with the leftmost boundary
//! circle most significant, so fixtures and serialized matrices are stable.

use serde::Serialize;

use crate::crossed::CrossedModule;
use crate::error::{Error, Result};
use crate::invariant::{invariant, Limits};
use crate::scalar::{ExactScalar, Rat};
use crate::surface::SurfaceComplex;
use crate::two_conjugacy::{c_function, two_conjugacy_classes};

#[derive(Clone, Debug, PartialEq)]
pub struct TqftMatrix {
    cm: CrossedModule,
    n_in: usize,
    n_out: usize,
    /// Row-major entries; row = out tuple index, column = in tuple index.
    entries: Vec<ExactScalar>,
}

/// Lexicographic rank of a tuple, leftmost component most significant.
pub fn tuple_index(tuple: &[usize], base: usize) -> usize {
    tuple.iter().fold(0, |acc, &t| acc * base + t)
}

/// Inverse of [`tuple_index`].
pub fn index_tuple(mut index: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0usize; len];
    for slot in (0..len).rev() {
        out[slot] = index % base;
        index /= base;
    }
    out
}

impl TqftMatrix {
    /// The matrix of a surface: every entry is one invariant evaluation.
    pub fn from_surface(s: &SurfaceComplex, cm: &CrossedModule, limits: &Limits) -> Result<Self> {
        s.validate()?;
        let ng = cm.g().order();
        let rows = ng.checked_pow(s.n_out() as u32).ok_or(Error::SizeLimit {
            needed: u128::MAX,
            cap: limits.fast_states,
        })?;
        let cols = ng.checked_pow(s.n_in() as u32).ok_or(Error::SizeLimit {
            needed: u128::MAX,
            cap: limits.fast_states,
        })?;
        if (rows as u128) * (cols as u128) > limits.fast_states {
            return Err(Error::SizeLimit {
                needed: rows as u128 * cols as u128,
                cap: limits.fast_states,
            });
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let g_out = index_tuple(r, ng, s.n_out());
            for c in 0..cols {
                let g_in = index_tuple(c, ng, s.n_in());
                entries.push(invariant(s, cm, &g_in, &g_out, limits)?);
            }
        }
        Ok(TqftMatrix {
            cm: cm.clone(),
            n_in: s.n_in(),
            n_out: s.n_out(),
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.cm.g().order().pow(self.n_out as u32)
    }

    pub fn cols(&self) -> usize {
        self.cm.g().order().pow(self.n_in as u32)
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn module(&self) -> &CrossedModule {
        &self.cm
    }

    pub fn entry(&self, out_index: usize, in_index: usize) -> &ExactScalar {
        &self.entries[out_index * self.cols() + in_index]
    }

    /// `self ∘ earlier`: the matrix of gluing `earlier`'s out-circles to
    /// `self`'s in-circles. Exact matrix product.
    pub fn compose(&self, earlier: &TqftMatrix) -> Result<TqftMatrix> {
        if self.cm != earlier.cm {
            return Err(Error::ModuleMismatch);
        }
        if self.n_in != earlier.n_out {
            return Err(Error::ArityMismatch {
                left_in: self.n_in,
                right_out: earlier.n_out,
            });
        }
        let base = self.cm.g().order() as u64;
        let (rows, mids, cols) = (self.rows(), self.cols(), earlier.cols());
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let mut acc = ExactScalar::zero(base);
                for m in 0..mids {
                    acc = &acc + &(self.entry(r, m) * earlier.entry(m, c));
                }
                entries.push(acc);
            }
        }
        Ok(TqftMatrix {
            cm: self.cm.clone(),
            n_in: earlier.n_in,
            n_out: self.n_out,
            entries,
        })
    }

    pub fn is_square(&self) -> bool {
        self.n_in == self.n_out
    }

    /// Exact idempotency test `Z·Z = Z`.
    pub fn is_idempotent(&self) -> Result<bool> {
        Ok(self.compose(self)? == *self)
    }

    /// Applies the matrix to a column vector of exact scalars.
    pub fn apply(&self, vector: &[ExactScalar]) -> Vec<ExactScalar> {
        assert_eq!(
            vector.len(),
            self.cols(),
            "vector length must match columns"
        );
        let base = self.cm.g().order() as u64;
        (0..self.rows())
            .map(|r| {
                let mut acc = ExactScalar::zero(base);
                for c in 0..self.cols() {
                    acc = &acc + &(self.entry(r, c) * &vector[c]);
                }
                acc
            })
            .collect()
    }

    /// Exact rank by fraction-free elimination on the rational coefficients.
    ///
    /// Every entry of one matrix carries the same `sqrt(|G|)` parity, which
    /// is a global scalar and cannot change the rank, so elimination runs on
    /// the coefficients alone after clearing denominators row by row.
    pub fn rank(&self) -> usize {
        let rows = self.rows();
        let cols = self.cols();
        debug_assert!(
            self.entries
                .iter()
                .filter(|s| !s.is_zero())
                .map(|s| s.half_power())
                .collect::<std::collections::BTreeSet<u8>>()
                .len()
                <= 1
        );
        let mut m: Vec<Vec<i128>> = (0..rows)
            .map(|r| {
                let coeffs: Vec<Rat> = (0..cols).map(|c| *self.entry(r, c).coeff()).collect();
                let lcm = coeffs
                    .iter()
                    .fold(1i128, |acc, q| num_integer_lcm(acc, *q.denom()));
                coeffs
                    .iter()
                    .map(|q| q.numer() * (lcm / q.denom()))
                    .collect()
            })
            .collect();
        fraction_free_rank(&mut m)
    }

    /// Plain CSV with tuple labels; entries render as `p/q` or `p/q·√b`.
    pub fn to_csv(&self) -> String {
        let ng = self.cm.g().order();
        let label = |idx: usize, len: usize| {
            let t = index_tuple(idx, ng, len);
            let inner = t.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            format!("({inner})")
        };
        let mut out = String::from("out\\in");
        for c in 0..self.cols() {
            out.push(',');
            out.push_str(&label(c, self.n_in));
        }
        out.push('\n');
        for r in 0..self.rows() {
            out.push_str(&label(r, self.n_out));
            for c in 0..self.cols() {
                out.push(',');
                out.push_str(&self.entry(r, c).to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Serializable view: dimensions plus rows of exact entries.
    pub fn to_json_value(&self) -> MatrixJson {
        MatrixJson {
            module: self.cm.name().to_string(),
            n_in: self.n_in,
            n_out: self.n_out,
            base: self.cm.g().order() as u64,
            rows: (0..self.rows())
                .map(|r| (0..self.cols()).map(|c| self.entry(r, c).clone()).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixJson {
    pub module: String,
    pub n_in: usize,
    pub n_out: usize,
    pub base: u64,
    pub rows: Vec<Vec<ExactScalar>>,
}

fn num_integer_lcm(a: i128, b: i128) -> i128 {
    let g = gcd(a.abs(), b.abs());
    (a / g).abs() * b.abs()
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a.max(1)
}

/// Bareiss-style fraction-free row reduction; all divisions are exact.
fn fraction_free_rank(m: &mut [Vec<i128>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = 1i128;
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(p) = (pivot_row..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(pivot_row, p);
        for r in pivot_row + 1..rows {
            for c in col + 1..cols {
                let num = m[pivot_row][col]
                    .checked_mul(m[r][c])
                    .and_then(|x| m[r][col].checked_mul(m[pivot_row][c]).map(|y| x - y))
                    .expect("fraction-free elimination overflow");
                m[r][c] = num / prev;
            }
            m[r][col] = 0;
        }
        prev = m[pivot_row][col];
        pivot_row += 1;
        rank += 1;
    }
    rank
}

/// Verifies the cylinder composition identity
/// `Σ_i C(g,i)·C(i,j) = |H||G|·C(g,j)` for all `g, j`, exactly.
pub fn check_cylinder_identity(cm: &CrossedModule) -> Result<()> {
    let n = cm.g().order();
    let table: Vec<Vec<u128>> = (0..n)
        .map(|a| (0..n).map(|b| c_function(cm, a, b) as u128).collect())
        .collect();
    let hg = (cm.h().order() * cm.g().order()) as u128;
    for g in 0..n {
        for j in 0..n {
            let lhs: u128 = (0..n).map(|i| table[g][i] * table[i][j]).sum();
            if lhs != hg * table[g][j] {
                return Err(Error::IdentityViolation { g, j });
            }
        }
    }
    Ok(())
}

/// Outcome of the eigenvector structure check on the cylinder matrix.
#[derive(Clone, Debug, Serialize)]
pub struct EigenReport {
    pub classes: usize,
    pub rank: usize,
    pub indicators_fixed: bool,
}

impl EigenReport {
    pub fn passed(&self) -> bool {
        self.indicators_fixed && self.rank == self.classes
    }
}

/// Applies the cylinder matrix to each 2-conjugacy class indicator vector
/// and checks exact fixedness, plus `rank = #classes`. Together with
/// idempotency this pins the eigenvalue-1 eigenspace: the indicators are
/// disjointly supported, hence independent, and span a space of the
/// eigenspace's dimension.
pub fn class_eigenvector_check(cm: &CrossedModule, limits: &Limits) -> Result<EigenReport> {
    let z = TqftMatrix::from_surface(&SurfaceComplex::cylinder(), cm, limits)?;
    let classes = two_conjugacy_classes(cm);
    let base = cm.g().order() as u64;
    let mut all_fixed = true;
    for class in &classes.classes {
        let indicator: Vec<ExactScalar> = (0..z.cols())
            .map(|i| {
                if class.contains(&i) {
                    ExactScalar::one(base)
                } else {
                    ExactScalar::zero(base)
                }
            })
            .collect();
        if z.apply(&indicator) != indicator {
            all_fixed = false;
        }
    }
    Ok(EigenReport {
        classes: classes.count(),
        rank: z.rank(),
        indicators_fixed: all_fixed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::rat;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn cylinder_matrix_x3_is_all_halves() {
        let z =
            TqftMatrix::from_surface(&SurfaceComplex::cylinder(), &fixtures::x3(), &lim()).unwrap();
        assert_eq!(z.rows(), 2);
        assert_eq!(z.cols(), 2);
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(z.entry(r, c), &ExactScalar::new(rat(1, 2), 2));
            }
        }
        assert!(z.is_idempotent().unwrap());
        assert_eq!(z.rank(), 1);
    }

    #[test]
    fn disk_matrix_x2_hits_only_the_identity_column() {
        let z =
            TqftMatrix::from_surface(&SurfaceComplex::disk_in(), &fixtures::x2(), &lim()).unwrap();
        assert_eq!(z.rows(), 1);
        assert_eq!(z.cols(), 6);
        for c in 0..6 {
            let expected = if c == 0 {
                ExactScalar::with_half_powers(rat(1, 1), -1, 6)
            } else {
                ExactScalar::zero(6)
            };
            assert_eq!(z.entry(0, c), &expected);
        }
    }

    #[test]
    fn sphere_matrix_x1_is_the_unit() {
        let z =
            TqftMatrix::from_surface(&SurfaceComplex::sphere(), &fixtures::x1(), &lim()).unwrap();
        assert_eq!(z.rows(), 1);
        assert_eq!(z.cols(), 1);
        assert_eq!(z.entry(0, 0), &ExactScalar::one(1));
    }

    #[test]
    fn gluing_matches_composition() {
        let lim = lim();
        let cyl = SurfaceComplex::cylinder();
        let disk_in = SurfaceComplex::disk_in();
        let disk_out = SurfaceComplex::disk_out();
        for cm in fixtures::all() {
            let z_cyl = TqftMatrix::from_surface(&cyl, &cm, &lim).unwrap();
            let z_din = TqftMatrix::from_surface(&disk_in, &cm, &lim).unwrap();
            let z_dout = TqftMatrix::from_surface(&disk_out, &cm, &lim).unwrap();

            let pairs: Vec<(&SurfaceComplex, &SurfaceComplex, &TqftMatrix, &TqftMatrix)> = vec![
                (&cyl, &cyl, &z_cyl, &z_cyl),
                (&cyl, &disk_in, &z_cyl, &z_din),
                (&disk_out, &cyl, &z_dout, &z_cyl),
            ];
            for (first, second, z_first, z_second) in pairs {
                let glued = SurfaceComplex::glue(first, second).unwrap();
                let z_glued = TqftMatrix::from_surface(&glued, &cm, &lim).unwrap();
                let composed = z_second.compose(z_first).unwrap();
                assert_eq!(z_glued, composed, "{} then {}", first.name(), second.name());
            }
        }
    }

    #[test]
    fn gluing_along_two_circles_matches_composition() {
        // pants compose along two boundary circles at once: the first
        // identified circle becomes internal, the second a cut edge
        let lim = lim();
        let pout = SurfaceComplex::pants_out();
        let pin = SurfaceComplex::pants_in();
        let glued = SurfaceComplex::glue(&pout, &pin).unwrap();
        for cm in fixtures::all() {
            let z_out = TqftMatrix::from_surface(&pout, &cm, &lim).unwrap();
            let z_in = TqftMatrix::from_surface(&pin, &cm, &lim).unwrap();
            let z_glued = TqftMatrix::from_surface(&glued, &cm, &lim).unwrap();
            assert_eq!(z_glued, z_in.compose(&z_out).unwrap(), "{}", cm.name());
        }
    }

    #[test]
    fn two_disks_glue_to_the_sphere_value() {
        let lim = lim();
        for cm in fixtures::all() {
            let z_din = TqftMatrix::from_surface(&SurfaceComplex::disk_in(), &cm, &lim).unwrap();
            let z_dout = TqftMatrix::from_surface(&SurfaceComplex::disk_out(), &cm, &lim).unwrap();
            let closed = z_din.compose(&z_dout).unwrap();
            let sphere = TqftMatrix::from_surface(&SurfaceComplex::sphere(), &cm, &lim).unwrap();
            assert_eq!(closed, sphere, "{}", cm.name());
        }
    }

    #[test]
    fn cylinder_is_idempotent_for_all_fixtures() {
        for cm in fixtures::all() {
            let z = TqftMatrix::from_surface(&SurfaceComplex::cylinder(), &cm, &lim()).unwrap();
            assert!(z.is_idempotent().unwrap(), "{}", cm.name());
        }
    }

    #[test]
    fn composition_identity_on_fixtures() {
        for cm in fixtures::all() {
            check_cylinder_identity(&cm).unwrap();
        }
        // worked X5 case: C(g,i) = 6·[g=i], so both sides are 36·[g=j]
        let x5 = fixtures::x5();
        assert_eq!(c_function(&x5, 0, 0), 6);
        check_cylinder_identity(&x5).unwrap();
    }

    #[test]
    fn eigenvector_structure() {
        for cm in fixtures::all() {
            let report = class_eigenvector_check(&cm, &lim()).unwrap();
            assert!(report.passed(), "{}: {report:?}", cm.name());
        }
        // X5's cylinder matrix is the identity: two singleton classes
        let report = class_eigenvector_check(&fixtures::x5(), &lim()).unwrap();
        assert_eq!(report.classes, 2);
        assert_eq!(report.rank, 2);
    }

    #[test]
    fn compose_rejects_mismatches() {
        let lim = lim();
        let z_cyl =
            TqftMatrix::from_surface(&SurfaceComplex::cylinder(), &fixtures::x3(), &lim).unwrap();
        let z_sphere =
            TqftMatrix::from_surface(&SurfaceComplex::sphere(), &fixtures::x3(), &lim).unwrap();
        assert!(matches!(
            z_cyl.compose(&z_sphere),
            Err(Error::ArityMismatch { .. })
        ));
        let z_other =
            TqftMatrix::from_surface(&SurfaceComplex::cylinder(), &fixtures::x4(), &lim).unwrap();
        assert!(matches!(
            z_cyl.compose(&z_other),
            Err(Error::ModuleMismatch)
        ));
    }

    #[test]
    fn rank_of_known_matrices() {
        // identity-like X5 cylinder has full rank 2; X4's all-1/2 matrix has rank 1
        let z5 =
            TqftMatrix::from_surface(&SurfaceComplex::cylinder(), &fixtures::x5(), &lim()).unwrap();
        assert_eq!(z5.rank(), 2);
        let z4 =
            TqftMatrix::from_surface(&SurfaceComplex::cylinder(), &fixtures::x4(), &lim()).unwrap();
        assert_eq!(z4.rank(), 1);
        // S3 with trivial H: rank = number of conjugacy classes = 3
        let z2 =
            TqftMatrix::from_surface(&SurfaceComplex::cylinder(), &fixtures::x2(), &lim()).unwrap();
        assert_eq!(z2.rank(), 3);
    }

    #[test]
    fn csv_and_json_are_stable() {
        let z =
            TqftMatrix::from_surface(&SurfaceComplex::cylinder(), &fixtures::x3(), &lim()).unwrap();
        let csv = z.to_csv();
        assert_eq!(csv, "out\\in,(0),(1)\n(0),1/2,1/2\n(1),1/2,1/2\n");
        let json = serde_json::to_string(&z.to_json_value()).unwrap();
        assert!(json.contains(r#""n_in":1"#));
        assert!(json.contains(r#""coeff":"1/2""#));
    }

    #[test]
    fn tuple_indexing_is_lexicographic() {
        assert_eq!(tuple_index(&[0, 0], 6), 0);
        assert_eq!(tuple_index(&[0, 1], 6), 1);
        assert_eq!(tuple_index(&[1, 0], 6), 6);
        assert_eq!(index_tuple(7, 6, 2), vec![1, 1]);
        assert_eq!(index_tuple(0, 6, 0), Vec::<usize>::new());
    }
}
