//! Property tests over randomized scalars, matrices, products, presentations and reports.
//!
//! Scalar field axioms run 1000 cases for each field kind: the rationals, a
//! quadratic extension, and rational functions in two parameters.

use homleib::duality::transpose;
use homleib::identities::*;
use homleib::linalg::{dual_map, tensor_swap, LinearMap, Product, Tensor2, Vector};
use homleib::model::{load_presentation, save_presentation, AlgebraPresentation, VarietyTag};
use homleib::scalar::{FieldSpec, Monomial, Poly, Scalar};
use num_rational::BigRational;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn rat_scalar() -> impl Strategy<Value = Scalar> {
    rational().prop_map(Scalar::from_rational)
}

fn quad_scalar() -> impl Strategy<Value = Scalar> {
    (rational(), rational(), prop::sample::select(vec![2i64, -1, 3])).prop_map(|(a, b, d)| Scalar::quad(a, b, d))
}

/// A polynomial in two variables of degree at most 2 in each, with up to three terms.
fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..=2, 0u32..=2, rational()), 0..=3).prop_map(|terms| {
        Poly::from_terms(2, terms.into_iter().map(|(i, j, c)| (Monomial::from_exponents(vec![i, j]), c)))
    })
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfn_scalar() -> impl Strategy<Value = Scalar> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| Scalar::ratfn(n, d).unwrap())
}

/// Quadratic elements over one fixed extension, so that they can be combined.
fn quad_triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    prop::sample::select(vec![2i64, -1, 3]).prop_flat_map(|d| {
        let q = move || (rational(), rational()).prop_map(move |(a, b)| Scalar::quad(a, b, d));
        (q(), q(), q())
    })
}

macro_rules! field_axioms {
    ($module:ident, $triple:expr) => {
        mod $module {
            use super::*;

            proptest! {
                #![proptest_config(ProptestConfig::with_cases(1000))]

                #[test]
                fn addition_is_associative_and_commutative((a, b, c) in $triple) {
                    prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                    prop_assert_eq!(&a + &b, &b + &a);
                }

                #[test]
                fn multiplication_is_associative_and_commutative((a, b, c) in $triple) {
                    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                    prop_assert_eq!(&a * &b, &b * &a);
                }

                #[test]
                fn multiplication_distributes((a, b, c) in $triple) {
                    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                }

                #[test]
                fn inverses((a, _b, _c) in $triple) {
                    prop_assert!((&a + &(-&a)).is_zero());
                    if !a.is_zero() {
                        prop_assert!((&a * &a.inv().unwrap()).is_one());
                    } else {
                        prop_assert!(a.inv().is_err());
                    }
                }

                #[test]
                fn canonicalization_is_idempotent((a, b, _c) in $triple) {
                    let x = &a * &b;
                    prop_assert_eq!(x.canonical().canonical(), x.canonical());
                    prop_assert_eq!(format!("{:?}", x.canonical()), format!("{:?}", x));
                }
            }
        }
    };
}

field_axioms!(rationals, (rat_scalar(), rat_scalar(), rat_scalar()));
field_axioms!(quadratic, quad_triple());
field_axioms!(rational_functions, (ratfn_scalar(), ratfn_scalar(), ratfn_scalar()));

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// a/b − c/d is zero exactly when a·d − b·c expands to zero.
    #[test]
    fn rational_function_zero_test(a in poly(), b in nonzero_poly(), k in nonzero_poly(), c in poly(), d in nonzero_poly(), same in any::<bool>()) {
        // Half the cases compare a fraction with a rescaled copy of itself.
        let (c, d) = if same { (a.mul(&k), b.mul(&k)) } else { (c, d) };
        let x = Scalar::ratfn(a.clone(), b.clone()).unwrap();
        let y = Scalar::ratfn(c.clone(), d.clone()).unwrap();
        prop_assert_eq!((&x - &y).is_zero(), a.mul(&d).sub(&b.mul(&c)).is_zero());
    }

    #[test]
    fn quadratic_values_mix_with_rationals(q in quad_scalar(), r in rat_scalar()) {
        let s = &q + &r;
        prop_assert_eq!(&s - &r, q);
    }
}

// ---------------------------------------------------------------------------
// Linear algebra
// ---------------------------------------------------------------------------

fn matrix(n: usize) -> impl Strategy<Value = LinearMap> {
    prop::collection::vec(prop::collection::vec(rat_scalar(), n), n).prop_map(|rows| LinearMap::from_rows(rows).unwrap())
}

fn vector(n: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(rat_scalar(), n).prop_map(Vector)
}

/// A sparse product with small integer structure constants.
fn product(n: usize) -> impl Strategy<Value = Product> {
    prop::collection::vec(prop::sample::select(vec![0i64, 0, 0, 1, -1, 2]), n * n * n).prop_map(move |cs| {
        let mut p = Product::zero(n);
        for (idx, c) in cs.into_iter().enumerate() {
            if c != 0 {
                p.set(idx / (n * n), (idx / n) % n, idx % n, Scalar::from_int(c));
            }
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn products_are_bilinear(p in product(3), u in vector(3), w in vector(3), v in vector(3), c in rat_scalar()) {
        let lhs = p.apply(&u.add(&w), &v).unwrap();
        prop_assert_eq!(lhs, p.apply(&u, &v).unwrap().add(&p.apply(&w, &v).unwrap()));
        prop_assert_eq!(p.apply(&u.scale(&c), &v).unwrap(), p.apply(&u, &v).unwrap().scale(&c));
        prop_assert_eq!(p.apply(&u, &v.scale(&c)).unwrap(), p.apply(&u, &v).unwrap().scale(&c));
    }

    #[test]
    fn inverse_is_a_left_inverse(m in matrix(3)) {
        if let Ok(inv) = m.inverse() {
            prop_assert!(inv.compose(&m).unwrap().is_identity());
        } else {
            prop_assert!(m.determinant().unwrap().is_zero());
        }
    }

    #[test]
    fn signed_dual_reverses_composition(m in matrix(3), n in matrix(3)) {
        let lhs = dual_map(&m.compose(&n).unwrap());
        prop_assert_eq!(&lhs, &transpose(&m.compose(&n).unwrap()).neg());
        prop_assert_eq!(lhs, dual_map(&n).compose(&dual_map(&m)).unwrap().neg());
    }

    #[test]
    fn tensor_swap_is_an_involution(m in matrix(3)) {
        let t = Tensor2::from_matrix(&m).unwrap();
        prop_assert_eq!(tensor_swap(&tensor_swap(&t)), t);
    }
}

// ---------------------------------------------------------------------------
// Presentations and identities
// ---------------------------------------------------------------------------

fn hom_leibniz(n: usize) -> impl Strategy<Value = AlgebraPresentation> {
    (product(n), matrix(n)).prop_map(move |(br, al)| {
        let mut p = AlgebraPresentation::abelian(n, FieldSpec::Rationals, VarietyTag::HomLeibniz);
        p.products.insert("br".into(), br);
        p.twists.insert("al".into(), al);
        p
    })
}

/// A dendriform presentation whose products only reach basis vectors beyond both arguments.
fn nilpotent_dendriform(n: usize) -> impl Strategy<Value = AlgebraPresentation> {
    (product(n), product(n)).prop_map(move |(a, b)| {
        let strip = |p: Product| {
            let mut q = Product::zero(n);
            for (i, j, k, c) in p.nonzero_entries() {
                if k > i.max(j) {
                    q.set(i, j, k, c.clone());
                }
            }
            q
        };
        let mut p = AlgebraPresentation::abelian(n, FieldSpec::Rationals, VarietyTag::HomLeibnizDendriform);
        p.products = [("prec".to_string(), strip(a)), ("succ".to_string(), strip(b))].into_iter().collect();
        p.twists.insert("al".into(), LinearMap::identity(n));
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn save_then_load_is_the_identity(p in hom_leibniz(3), claim in any::<bool>()) {
        let mut p = p;
        p.multiplicative = claim;
        let text = save_presentation(&p);
        let back = load_presentation(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(save_presentation(&back), text);
    }

    /// Evaluating at arbitrary vectors agrees with the multilinear expansion of the basis values.
    #[test]
    fn basis_evaluation_suffices(p in hom_leibniz(2), x in vector(2), y in vector(2), z in vector(2)) {
        let ctx = Context::algebra(&p);
        let id = identity("hom_leibniz");
        let direct = evaluate_vectors(id, &ctx, &[x.clone(), y.clone(), z.clone()]).unwrap().flatten();
        let mut expanded = Vector::zeros(2);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let c = &(&x.coords()[i] * &y.coords()[j]) * &z.coords()[k];
                    expanded.add_scaled(&c, &evaluate_identity(id, &ctx, &[i, j, k]).unwrap().flatten());
                }
            }
        }
        prop_assert_eq!(&direct, &expanded);
        if check_identity(id, &ctx).unwrap().passed() {
            prop_assert!(direct.is_zero());
        }
    }

    /// Reports do not depend on the evaluation schedule.
    #[test]
    fn reports_are_deterministic(p in hom_leibniz(3)) {
        let seq = check_variety_with(&p, CheckOptions { jobs: Some(1) }).unwrap();
        let par = check_variety_with(&p, CheckOptions { jobs: None }).unwrap();
        prop_assert_eq!(&seq, &par);
        prop_assert_eq!(check_variety(&p).unwrap(), seq);
    }

    #[test]
    fn sub_adjacent_of_a_dendriform_algebra_is_hom_leibniz(p in nilpotent_dendriform(3)) {
        if check_variety(&p).unwrap().passed() {
            let sub = homleib::construct::sub_adjacent(&p, homleib::construct::Policy::Strict).unwrap();
            prop_assert!(sub.value.variety == VarietyTag::HomLeibniz);
            let r = check_named(&["hom_leibniz"], &Context::algebra(&sub.value), CheckOptions::default()).unwrap();
            prop_assert!(r.passed());
        }
    }

    #[test]
    fn machine_reports_round_trip(p in hom_leibniz(2)) {
        let mut r = check_variety(&p).unwrap();
        r.extend(check_named(&["skew_symmetry", "hom_jacobi"], &Context::algebra(&p), CheckOptions::default()).unwrap());
        r.push(CheckReport::precondition("some_precondition", "a note with `quotes` and \"escapes\""));
        let back = Report::parse_machine(&r.render_machine(), &r.field).unwrap();
        prop_assert_eq!(back, r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn symbolic_reports_round_trip(a in ratfn_scalar(), b in ratfn_scalar()) {
        let field = FieldSpec::rational_functions(["p", "q"]).unwrap();
        let mut r = Report::new(field.clone());
        let mut e = CheckReport::failed("hom_leibniz", "residual");
        e.assignment = Some(vec![1, 2, 1]);
        e.residual = Some(Vector(vec![a, b]));
        e.variables = vec![Sort::A, Sort::A, Sort::V];
        e.note = None;
        r.push(e);
        let back = Report::parse_machine(&r.render_machine(), &field).unwrap();
        prop_assert_eq!(back, r);
    }
}
