use qwave::closed_forms::second::SecondCoeffs;
use qwave::closed_forms::{e_ell1, phi0, u_ell};
use qwave::jet::{slot1_dd_along, Jet, Jet2};
fn main() {
    let pr = qwave::scale::ScaleProfile::new(
        qwave::scale::ProfileKind::Power { c: 1.3, p: 0.01 }, 50.0);
    let t = 800.0;
    let co = SecondCoeffs::at(&pr, t);
    let lamc = co.lam;
    let lam0 = lamc.c[0];
    let dl = Jet::<3> { c: [0.0, lamc.c[1], lamc.c[2]] };
    let l_tr = Jet2::<5, 3>::from_t_jet(&lamc);
    let l1_tr = Jet2::<5, 3>::from_t_jet(&lamc.d());
    let l2_tr = Jet2::<5, 3>::from_t_jet(&lamc.d().d());
    for &s in &[0.0_f64, 1e-18, 1e-9, 1e-4, 0.5, 1.0, 10.0, 1e8, 1e15, 4.9e18] {
        let h2 = u_ell(l_tr, l1_tr, l2_tr, Jet2::<5, 3>::var_r(s * lam0));
        let g = slot1_dd_along(&h2, &(dl * s));
        let v = g * (s * s * phi0(s));
        if !v.c.iter().all(|x| x.is_finite()) || s < 1e-3 {
            println!("u_ell integrand s={s:e}: {:?}", v.c);
        }
        let h = e_ell1(l_tr, l1_tr, l2_tr, Jet2::<5, 3>::var_r(s * lam0));
        let g = slot1_dd_along(&h, &(dl * s));
        let v = g * (s * s * phi0(s));
        if !v.c.iter().all(|x| x.is_finite()) {
            println!("e_ell1 integrand s={s:e}: {:?}", v.c);
        }
    }
}
