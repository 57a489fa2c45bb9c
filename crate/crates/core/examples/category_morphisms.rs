//! Objects and morphisms over a category with two simples: composition,
//! adjoints, sup norms and the total trace.

use std::sync::Arc;

use fredholm_chern::category::{adjoint, compose, sup_operator_norm, sup_schatten_norm};
use fredholm_chern::{CatMorphism, CategoryContext, ComplexMatrix, HilbObject};

pub fn main() {
    let ctx = Arc::new(
        CategoryContext::new(
            vec!["1".into(), "x".into()],
            Some(vec![1.0, 1.618_033_988_75]),
        )
        .unwrap(),
    );
    let h = HilbObject::new(ctx.clone(), vec![2, 1]).unwrap();
    let k = HilbObject::new(ctx.clone(), vec![1, 3]).unwrap();

    let f = CatMorphism::new(
        h.clone(),
        k.clone(),
        vec![
            ComplexMatrix::from_real_rows(&[&[1.0, 2.0]]),
            ComplexMatrix::from_real_rows(&[&[1.0], &[0.0], &[-1.0]]),
        ],
    )
    .unwrap();
    let g = adjoint(&f);
    let gf = compose(&g, &f).unwrap();
    let fg = compose(&f, &g).unwrap();
    println!("f: {:?} -> {:?}", h.dims(), k.dims());
    println!("tr(f* f) = {}", gf.total_trace().unwrap());
    println!("tr(f f*) = {}", fg.total_trace().unwrap());
    assert!((gf.total_trace().unwrap() - fg.total_trace().unwrap()).norm() < 1e-12);

    println!("sup operator norm of f = {:.6}", sup_operator_norm(&f));
    println!(
        "sup 2-norm of f = {:.6}",
        sup_schatten_norm(&f, 2.0).unwrap()
    );

    let sum = h.direct_sum(&k).unwrap();
    println!("h + k has fibers {:?}", sum.dims());

    if let Err(e) = compose(&f, &f) {
        println!("f o f: {e}");
    }
}
