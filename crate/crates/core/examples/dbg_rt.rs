use jostwave::fft::{flat_forward, flat_inverse};
use jostwave::grid::{KGrid, XGrid};
use jostwave::C64;
fn main() {
    let xg = XGrid::bounded(40.0, 2048);
    let kg = KGrid::half_integer(1.0 / 32.0, 8.0);
    let f: Vec<C64> = xg.xs.iter().map(|&x| C64::new((-x * x / 2.0).exp(), 0.0)).collect();
    let fhat = flat_forward(&f, &xg, &kg);
    let mut werr = 0.0; let mut wk = 0.0;
    for (i, &k) in kg.ks.iter().enumerate() {
        let e = (fhat[i] - C64::new((-k*k/2.0).exp(), 0.0)).norm();
        if e > werr { werr = e; wk = k; }
    }
    println!("forward max err {:.3e} at k={}", werr, wk);
    let back = flat_inverse(&fhat, &kg, &xg);
    let mut berr = 0.0; let mut bx = 0.0;
    for (j, &x) in xg.xs.iter().enumerate() {
        let e = (back[j] - C64::new((-x*x/2.0).exp(), 0.0)).norm();
        if e > berr { berr = e; bx = x; }
    }
    println!("back max err {:.3e} at x={}", berr, bx);
}
