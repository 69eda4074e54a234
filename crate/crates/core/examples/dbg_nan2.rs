use qwave::closed_forms::homogeneous::*;
use qwave::jet::{Jet2, Real};
fn main() {
    let big = 1.35e8_f64;
    let r = Jet2::<5, 3>::var_r(big);
    println!("f1: {:?}", chk(f1(r)));
    println!("f2: {:?}", chk(f2(r)));
    println!("f10: {:?}", chk(f10(r)));
    println!("f20: {:?}", chk(f20(r)));
    println!("f11: {:?}", chk(f11(r)));
    println!("f21: {:?}", chk(f21(r)));
    println!("phi0: {:?}", chk(phi0(r)));
    println!("phi0_plus: {:?}", chk(phi0_plus(r)));
    println!("e2: {:?}", chk(e2(r)));
    println!("atan: {:?}", chk(r.atan()));
    println!("ln: {:?}", chk(r.ln()));
    println!("powf1.5: {:?}", chk(r.powf(1.5)));
}
fn chk(j: Jet2<5,3>) -> (bool, f64) {
    let mut ok = true;
    for row in &j.c { for x in row { if !x.is_finite() { ok = false; } } }
    (ok, j.c[0][0])
}
