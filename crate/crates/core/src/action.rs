//! Action matrices of matrix-group generators on the graded pieces.
//!
//! For a grade class `k` the piece is spanned by the monomials of total
//! degree congruent to `k`, ordered by increasing integer length with ties
//! broken by monomial index.  With that ordering the formal-group matrix of
//! any element is block lower-triangular relative to the length blocks and
//! its diagonal blocks agree with the linear-substitution matrix, which is
//! the filtration comparing the two module structures.
//!
//! Matrices use the column convention: column `j` holds the image of the
//! j-th basis monomial, so `mat(g) * mat(h) = mat(gh)`.
//!
//! Images of all monomials are produced by dynamic programming along the
//! length filtration, `image(m * x_j) = image(m) * y_j`, which never touches
//! matrices larger than the pieces themselves.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{AlgebraContext, AlgebraElement};
use crate::error::{Error, Result};
use crate::matrix::FpMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionVariant {
    /// Generators move by iterated formal sums.
    FormalGroup,
    /// Plain linear substitution on the generators.
    Linear,
}

impl ActionVariant {
    pub fn letter(self) -> char {
        match self {
            ActionVariant::FormalGroup => 'K',
            ActionVariant::Linear => 'L',
        }
    }
}

/// One graded piece: its monomial basis and one action matrix per generator.
pub struct GradedPiece {
    pub k: u32,
    pub reduced: bool,
    pub variant: ActionVariant,
    pub basis: Vec<u32>,
    pub matrices: Vec<FpMatrix>,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Basis of the grade-`k` piece: monomials sorted by (length, index).
/// With `reduced` set, the empty monomial is dropped from the `k = 0` piece;
/// it spans a trivial direct summand.
pub fn piece_basis(ctx: &AlgebraContext, k: u32, reduced: bool) -> Vec<u32> {
    let k = k % ctx.grade_modulus();
    let mut basis: Vec<u32> = (0..ctx.dim() as u32)
        .filter(|&idx| ctx.grade(idx) == k && !(reduced && idx == 0))
        .collect();
    basis.sort_by_key(|&idx| (ctx.length(idx), idx));
    basis
}

/// The spanned dimension `(p^{nd} - 1)/(p^n - 1)` of every reduced piece.
pub fn reduced_piece_dim(ctx: &AlgebraContext) -> usize {
    (ctx.dim() - 1) / ctx.grade_modulus() as usize
}

fn generator_images(
    ctx: &AlgebraContext,
    g: &FpMatrix,
    variant: ActionVariant,
) -> Result<Vec<AlgebraElement>> {
    match variant {
        ActionVariant::FormalGroup => ctx.act_on_generators(g),
        ActionVariant::Linear => ctx.substitute_on_generators(g),
    }
}

/// Build the matrices of one group element on a chosen set of grade classes.
/// `None` selects every class.
pub fn element_action(
    ctx: &Arc<AlgebraContext>,
    g: &FpMatrix,
    variant: ActionVariant,
    reduced: bool,
    classes: Option<&[u32]>,
) -> Result<Vec<GradedPiece>> {
    let wanted: Vec<u32> = match classes {
        Some(ks) => ks.iter().map(|&k| k % ctx.grade_modulus()).collect(),
        None => (0..ctx.grade_modulus()).collect(),
    };
    let pieces = build_pieces(ctx, std::slice::from_ref(g), variant, reduced, &wanted)?;
    Ok(pieces)
}

/// Build the action of several generators on one grade class.
pub fn build_graded_action(
    ctx: &Arc<AlgebraContext>,
    gens: &[FpMatrix],
    k: u32,
    variant: ActionVariant,
    reduced: bool,
) -> Result<GradedPiece> {
    let mut pieces = build_pieces(ctx, gens, variant, reduced, &[k % ctx.grade_modulus()])?;
    Ok(pieces.pop().unwrap())
}

/// Build the action of several generators on every grade class at once.
pub fn build_full_graded_action(
    ctx: &Arc<AlgebraContext>,
    gens: &[FpMatrix],
    variant: ActionVariant,
    reduced: bool,
) -> Result<Vec<GradedPiece>> {
    let all: Vec<u32> = (0..ctx.grade_modulus()).collect();
    build_pieces(ctx, gens, variant, reduced, &all)
}

fn build_pieces(
    ctx: &Arc<AlgebraContext>,
    gens: &[FpMatrix],
    variant: ActionVariant,
    reduced: bool,
    classes: &[u32],
) -> Result<Vec<GradedPiece>> {
    let modulus = ctx.grade_modulus();
    let mut bases: Vec<Vec<u32>> = Vec::with_capacity(classes.len());
    let mut pos_of: HashMap<u32, (usize, usize)> = HashMap::new();
    for (ci, &k) in classes.iter().enumerate() {
        let basis = piece_basis(ctx, k, reduced);
        for (row, &idx) in basis.iter().enumerate() {
            pos_of.insert(idx, (ci, row));
        }
        bases.push(basis);
    }

    let mut per_gen_matrices: Vec<Vec<FpMatrix>> = Vec::with_capacity(gens.len());
    for g in gens {
        let ys = generator_images(ctx, g, variant)?;
        let columns = monomial_images(ctx, &ys);
        let mut mats: Vec<FpMatrix> = bases
            .iter()
            .map(|b| FpMatrix::zeros(ctx.field().clone(), b.len(), b.len()))
            .collect();
        for (ci, basis) in bases.iter().enumerate() {
            for (col, &m_idx) in basis.iter().enumerate() {
                for &(idx, c) in columns[m_idx as usize].terms() {
                    debug_assert_eq!(
                        ctx.grade(idx),
                        classes[ci] % modulus,
                        "action did not preserve the grading"
                    );
                    let &(tci, row) = pos_of
                        .get(&idx)
                        .expect("image term lies in a basis that was built");
                    debug_assert_eq!(tci, ci);
                    mats[ci].set(row, col, c);
                }
            }
        }
        per_gen_matrices.push(mats);
    }

    let mut out = Vec::with_capacity(classes.len());
    for (&k, basis) in classes.iter().zip(bases) {
        let matrices = per_gen_matrices
            .iter_mut()
            .map(|mats| mats.remove(0))
            .collect();
        out.push(GradedPiece {
            k,
            reduced,
            variant,
            basis,
            matrices,
        });
    }
    Ok(out)
}

/// Images of every monomial under the algebra endomorphism sending the
/// generators to `ys`, by increasing length.
fn monomial_images(ctx: &AlgebraContext, ys: &[AlgebraElement]) -> Vec<AlgebraElement> {
    let dim = ctx.dim();
    let d = ctx.d() as usize;
    let q = ctx.q() as u64;
    let mut images: Vec<AlgebraElement> = vec![AlgebraElement::zero(); dim];
    let mut order: Vec<u32> = (0..dim as u32).collect();
    order.sort_by_key(|&idx| (ctx.length(idx), idx));
    for &m_idx in &order {
        if m_idx == 0 {
            images[0] = ctx.one();
            continue;
        }
        let exps = ctx.exponents(m_idx);
        let j = exps.iter().position(|&e| e > 0).unwrap();
        let parent = m_idx - (q.pow(j as u32) as u32);
        debug_assert!(ctx.length(parent) + 1 == ctx.length(m_idx));
        images[m_idx as usize] = ctx.multiply(&images[parent as usize], &ys[j]);
        debug_assert!(j < d || d == 0);
    }
    images
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn ctx(p: u32, n: u32, d: u32) -> Arc<AlgebraContext> {
        AlgebraContext::new(p, n, d).unwrap()
    }

    #[test]
    fn piece_dimensions() {
        let c = ctx(3, 2, 2);
        assert_eq!(reduced_piece_dim(&c), 10);
        for k in 0..c.grade_modulus() {
            assert_eq!(piece_basis(&c, k, true).len(), 10);
        }
        assert_eq!(piece_basis(&c, 0, false).len(), 11);

        // p=2, n=1, d=2: one class of dimension 4, reduced 3
        let c = ctx(2, 1, 2);
        assert_eq!(piece_basis(&c, 0, false).len(), 4);
        assert_eq!(piece_basis(&c, 0, true).len(), 3);

        let c = ctx(3, 2, 3);
        assert_eq!(reduced_piece_dim(&c), 91);
        let c = ctx(5, 2, 3);
        assert_eq!(reduced_piece_dim(&c), 651);
    }

    #[test]
    fn identity_generator_gives_identity_matrices() {
        let c = ctx(3, 1, 2);
        let id = FpMatrix::identity(c.field().clone(), 2);
        for variant in [ActionVariant::FormalGroup, ActionVariant::Linear] {
            for piece in build_full_graded_action(&c, &[id.clone()], variant, true).unwrap() {
                assert!(piece.matrices[0].is_identity());
            }
        }
    }

    #[test]
    fn homomorphism_law_small_cases() {
        // gl2 over F_2 and sl2 over F_3 generators
        for (p, n, d, rows) in [
            (2u32, 2u32, 2u32, vec![vec![vec![0i64, 1], vec![1, 1]], vec![vec![0, 1], vec![1, 0]]]),
            (3, 1, 2, vec![vec![vec![1, 1], vec![0, 1]], vec![vec![0, -1], vec![1, 0]]]),
            (3, 2, 2, vec![vec![vec![1, 1], vec![0, 1]], vec![vec![0, -1], vec![1, 0]]]),
        ] {
            let c = ctx(p, n, d);
            let f = c.field().clone();
            let gens: Vec<FpMatrix> =
                rows.iter().map(|r| FpMatrix::from_rows(f.clone(), r).unwrap()).collect();
            for variant in [ActionVariant::FormalGroup, ActionVariant::Linear] {
                let gh = gens[0].mul(&gens[1]).unwrap();
                let pieces_g = build_full_graded_action(&c, &gens, variant, false).unwrap();
                let pieces_gh =
                    build_full_graded_action(&c, std::slice::from_ref(&gh), variant, false).unwrap();
                for (pg, pgh) in pieces_g.iter().zip(&pieces_gh) {
                    let prod = pg.matrices[0].mul(&pg.matrices[1]).unwrap();
                    assert_eq!(prod, pgh.matrices[0], "variant {:?} k={}", variant, pg.k);
                }
            }
        }
    }

    #[test]
    fn formal_group_matrices_are_block_triangular_over_linear_blocks() {
        let c = ctx(2, 2, 2);
        let f = c.field().clone();
        let g = FpMatrix::from_rows(f, &[vec![0, 1], vec![1, 1]]).unwrap();
        for k in 0..c.grade_modulus() {
            let kp = build_graded_action(&c, std::slice::from_ref(&g), k, ActionVariant::FormalGroup, false)
                .unwrap();
            let lp = build_graded_action(&c, std::slice::from_ref(&g), k, ActionVariant::Linear, false)
                .unwrap();
            assert_eq!(kp.basis, lp.basis);
            let km = &kp.matrices[0];
            let lm = &lp.matrices[0];
            for (i, &bi) in kp.basis.iter().enumerate() {
                for (j, &bj) in kp.basis.iter().enumerate() {
                    let (li, lj) = (c.length(bi), c.length(bj));
                    if li == lj {
                        assert_eq!(km.get(i, j), lm.get(i, j), "diagonal blocks agree");
                    } else if li < lj {
                        assert_eq!(km.get(i, j), 0, "upper part vanishes");
                    }
                }
            }
            // linear matrices are themselves block diagonal
            for (i, &bi) in lp.basis.iter().enumerate() {
                for (j, &bj) in lp.basis.iter().enumerate() {
                    if c.length(bi) != c.length(bj) {
                        assert_eq!(lm.get(i, j), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn diagonal_fixed_points_match_divisibility_count() {
        for (p, n, d) in [(3u32, 1u32, 2u32), (3, 2, 2), (5, 1, 2)] {
            let c = ctx(p, n, d);
            let f = c.field().clone();
            let gamma = f.multiplicative_generator();
            let gens: Vec<FpMatrix> = (0..d as usize)
                .map(|i| {
                    FpMatrix::from_fn(f.clone(), d as usize, d as usize, |r, cc| {
                        if r == cc {
                            if r == i {
                                gamma
                            } else {
                                1
                            }
                        } else {
                            0
                        }
                    })
                })
                .collect();
            for k in 0..c.grade_modulus() {
                let piece =
                    build_graded_action(&c, &gens, k, ActionVariant::FormalGroup, false).unwrap();
                let fixed = crate::matrix::fixed_space(&piece.matrices).unwrap();
                let count = piece
                    .basis
                    .iter()
                    .filter(|&&idx| c.exponents(idx).iter().all(|&e| e as u32 % (p - 1) == 0))
                    .count();
                assert_eq!(fixed.len(), count, "p={p} n={n} d={d} k={k}");
                if k % (p - 1) != 0 {
                    assert_eq!(fixed.len(), 0);
                }
            }
        }
    }

    #[test]
    fn linear_and_formal_group_agree_for_diagonal_elements() {
        let c = ctx(3, 2, 2);
        let f = c.field().clone();
        let g = FpMatrix::from_rows(f, &[vec![2, 0], vec![0, 1]]).unwrap();
        for k in 0..c.grade_modulus() {
            let kp = build_graded_action(&c, std::slice::from_ref(&g), k, ActionVariant::FormalGroup, true)
                .unwrap();
            let lp = build_graded_action(&c, std::slice::from_ref(&g), k, ActionVariant::Linear, true)
                .unwrap();
            assert_eq!(kp.matrices[0], lp.matrices[0]);
        }
    }

    #[test]
    fn rejects_singular_generators() {
        let c = ctx(2, 1, 2);
        let z = FpMatrix::zeros(c.field().clone(), 2, 2);
        assert!(build_graded_action(&c, &[z], 0, ActionVariant::Linear, false).is_err());
        let _ = Field::prime(2).unwrap();
    }
}
