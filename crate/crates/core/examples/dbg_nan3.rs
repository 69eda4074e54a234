use qwave::closed_forms::homogeneous::*;
use qwave::closed_forms::uell::c1_coef;
use qwave::jet::{Jet2, Real};
fn main() {
    let pr = qwave::scale::ScaleProfile::new(
        qwave::scale::ProfileKind::Power { c: 1.3, p: 0.01 }, 50.0);
    let lamc = pr.lambda_jet(800.0);
    let l = Jet2::<5, 3>::from_t_jet(&lamc);
    let l1 = Jet2::<5, 3>::from_t_jet(&lamc.d());
    let l2 = Jet2::<5, 3>::from_t_jet(&lamc.d().d());
    let s = 1e8_f64;
    let y = s * lamc.c[0];
    let big_r = Jet2::<5, 3>::var_r(y) / l;
    println!("R: {:?}", big_r.c[0][0]);
    let t1 = f11(big_r) * l1 * l1 / l.sqrt();
    let t2 = f21(big_r) * l.sqrt() * l2;
    let t3 = c1_coef(l, l1, l2) * phi0_plus(big_r);
    for (n, t) in [("f11 term", t1), ("f21 term", t2), ("c1 term", t3), ("f11(R)", f11(big_r)), ("f21(R)", f21(big_r)), ("phi0_plus(R)", phi0_plus(big_r))] {
        let bad: Vec<(usize,usize)> = (0..5).flat_map(|i| (0..3).map(move |j| (i,j))).filter(|&(i,j)| !t.c[i][j].is_finite()).collect();
        println!("{n}: value {:e} bad coeffs {:?}", t.c[0][0], bad);
    }
}
