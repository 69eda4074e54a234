use qwave::closed_forms::second::*;
use qwave::quadrature::QuadEngine;
use qwave::scale::{ProfileKind, ScaleProfile};
fn main() {
    let pr = ScaleProfile::new(ProfileKind::Power { c: 1.3, p: 0.01 }, 50.0);
    for t in [800.0_f64, 3000.0] {
        match e_m2_jets(&pr, t, &QuadEngine::default()) {
            Ok((em2, err)) => {
                println!("t={t}: em2 = {:?}, err = {err:e}", em2.c);
                let co = SecondCoeffs::at(&pr, t);
                let l = co.lam.c[0];
                println!("  weight0 = {}", em2.c[0].abs()*t.powi(4)/l.powf(3.5));
            }
            Err(e) => println!("t={t}: ERR {e}"),
        }
    }
    // centered difference failing cases
    use qwave::scale::*;
    let cat: Vec<ScaleProfile> = vec![
        ScaleProfile::new(ProfileKind::LogPower { c: 2.0, alpha: 0.7 }, 100.0),
        ScaleProfile::new(ProfileKind::OscillatoryLog { l0: 1.0, l1: 2.0, a0: 0.2, a1: 0.3 }, 100.0),
        ScaleProfile::new(ProfileKind::IteratedLogProduct { eps: 0.01, factors: vec![(1, 0.5), (3, 1.0)] }, 100.0),
    ];
    for pr in &cat {
        let mut worst = (0.0_f64, 0usize, 0.0_f64);
        for k in 0..=5usize {
            for i in 0..100 {
                let t = 200.0 * (9.0 * i as f64 / 99.0_f64).exp();
                let h = 3e-4 * t;
                let cd = (pr.deriv(k, t + h) - pr.deriv(k, t - h)) / (2.0 * h);
                let d = pr.deriv(k + 1, t);
                let viol = (cd - d).abs() / (1e-6 * d.abs() + 1e-12);
                if viol > worst.0 { worst = (viol, k, t); }
            }
        }
        println!("{:?}: worst viol ratio {:.3} at k={} t={:.3e}", pr.kind, worst.0, worst.1, worst.2);
    }
}
