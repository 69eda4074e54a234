use qwave::quadrature::QuadEngine;
fn main() {
    let eng = QuadEngine::default();
    let r = eng.integrate_tail_checked(|s: f64| 1.0 / s, 1.0, 1.0);
    println!("{r:?}");
    let r2 = eng.integrate_semi_infinite(|s: f64| 1.0 / s, 1.0, 1.0);
    println!("{r2:?}");
}
