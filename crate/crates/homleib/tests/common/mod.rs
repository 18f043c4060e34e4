//! Fixtures shared by the integration tests.

#![allow(dead_code)]

use std::path::PathBuf;

use homleib::corpus::{corpus_root, Loader};
use homleib::duality::{bialgebra_matchedpair_equiv, transpose, Equivalence};
use homleib::identities::check_variety;
use homleib::linalg::{LinearMap, Product};
use homleib::model::{ActionFamily, AlgebraPresentation, VarietyTag};
use homleib::scalar::{FieldSpec, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn entry_dir(id: &str) -> PathBuf {
    corpus_root().join(id)
}

pub fn presentation(id: &str, name: &str) -> AlgebraPresentation {
    let dir = entry_dir(id);
    Loader { dir: &dir, at: None }.presentation(name).unwrap_or_else(|e| panic!("{id}/{name}: {e}"))
}

pub fn action(id: &str, name: &str) -> ActionFamily {
    let dir = entry_dir(id);
    Loader { dir: &dir, at: None }.action(name).unwrap_or_else(|e| panic!("{id}/{name}: {e}"))
}

pub fn matrix(id: &str, name: &str, field: &FieldSpec) -> LinearMap {
    let dir = entry_dir(id);
    Loader { dir: &dir, at: None }.matrix(name, field).unwrap_or_else(|e| panic!("{id}/{name}: {e}"))
}

/// A Hom-Leibniz presentation with the given bracket and twist.
pub fn hom_leibniz(br: Product, alpha: LinearMap) -> AlgebraPresentation {
    let mut p = AlgebraPresentation::abelian(br.dim(), FieldSpec::Rationals, VarietyTag::HomLeibniz);
    p.products.insert("br".into(), br);
    p.twists.insert("al".into(), alpha);
    p.multiplicative = true;
    p
}

fn diag(entries: &[i64]) -> LinearMap {
    LinearMap::diagonal(entries.iter().map(|&c| Scalar::from_int(c)).collect())
}

fn bracket(dim: usize, entries: &[(usize, usize, usize, i64)]) -> Product {
    let mut p = Product::zero(dim);
    for &(i, j, k, c) in entries {
        p.set(i - 1, j - 1, k - 1, Scalar::from_int(c));
    }
    p
}

/// Multiplicative Hom-Leibniz algebras of dimension 1 to 3 with involutive twists.
pub fn equivalence_bases() -> Vec<AlgebraPresentation> {
    vec![
        hom_leibniz(Product::zero(1), diag(&[1])),
        hom_leibniz(Product::zero(2), diag(&[1, -1])),
        hom_leibniz(bracket(2, &[(2, 2, 1, 1)]), diag(&[1, 1])),
        hom_leibniz(bracket(2, &[(2, 2, 1, 1)]), diag(&[1, -1])),
        hom_leibniz(bracket(3, &[(1, 2, 3, 1), (2, 1, 3, -1)]), diag(&[1, 1, 1])),
        hom_leibniz(bracket(3, &[(1, 2, 3, 1), (2, 1, 3, -1)]), diag(&[1, -1, -1])),
        hom_leibniz(bracket(3, &[(3, 3, 1, 1), (3, 3, 2, 1)]), diag(&[1, 1, 1])),
        hom_leibniz(Product::zero(3), diag(&[-1, 1, -1])),
    ]
}

/// A random sparse product on a space of dimension `dim` with coefficients in {-1, 1, 2}.
fn random_product(rng: &mut ChaCha8Rng, dim: usize) -> Product {
    let mut p = Product::zero(dim);
    // Half of the draws only produce targets above both arguments, which keeps
    // the Leibniz identity within reach in dimension 3.
    let upper = rng.gen_bool(0.5);
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                if upper && k <= i.max(j) {
                    continue;
                }
                if rng.gen_bool(0.3) {
                    let c = [-1, 1, 2][rng.gen_range(0..3)];
                    p.set(i, j, k, Scalar::from_int(c));
                }
            }
        }
    }
    p
}

/// One verified equivalence instance.
pub struct EquivalenceCase {
    pub algebra: AlgebraPresentation,
    pub dual: AlgebraPresentation,
    pub outcome: Equivalence,
}

/// `count` random dual products over the equivalence bases, drawn from a
/// ChaCha8 stream with the given seed. A draw is kept when the dual is a
/// Hom-Leibniz algebra with twist `al^T` satisfying the dual-pair hypotheses.
pub fn random_equivalence_cases(seed: u64, count: usize) -> Vec<EquivalenceCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases = equivalence_bases();
    let mut out = Vec::with_capacity(count);
    let mut draws = 0usize;
    while out.len() < count {
        draws += 1;
        assert!(draws < 200 * count, "only {} usable draws out of {draws}", out.len());
        let p = &bases[rng.gen_range(0..bases.len())];
        let mut dual = AlgebraPresentation::abelian(p.dim, p.field.clone(), p.variety);
        dual.twists.insert("al".into(), transpose(&p.alpha()));
        dual.products.insert("br".into(), random_product(&mut rng, p.dim));
        dual.multiplicative = true;
        if !check_variety(&dual).map(|r| r.passed()).unwrap_or(false) {
            continue;
        }
        let Ok(outcome) = bialgebra_matchedpair_equiv(p, &dual) else { continue };
        out.push(EquivalenceCase { algebra: p.clone(), dual, outcome });
    }
    out
}
