use qwave::closed_forms::second::*;
use qwave::quadrature::{QuadEngine, QuadSettings};
use qwave::scale::{ProfileKind, ScaleProfile};
fn main() {
    let pr = ScaleProfile::new(ProfileKind::Power { c: 1.3, p: 0.01 }, 50.0);
    let eng = QuadEngine::new(QuadSettings { rel_tol: 1e-10, abs_tol: 1e-21, ..Default::default() });
    match e_m2_jets(&pr, 800.0, &eng) {
        Ok((em2, err)) => println!("em2 = {:?} err = {err:e}", em2.c),
        Err(e) => println!("ERR: {e}"),
    }
}
