//! Modular symbols of weight k on Gamma_0(N): dimensions, Hecke matrices,
//! commutation, and the eigen-functional of a rational newform.
//!
//!     cargo run --release --example hecke_operators -- 32 4

use mt_iwasawa::arith::rat;
use mt_iwasawa::modsym::{eigenspace, EigenSymbol, SymbolSpace};
use num_rational::BigRational;

fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    // images[c] are rows: (A B)[c] = sum_r B[c][r] A[r]
    b.iter()
        .map(|row| {
            let mut acc = vec![rat(0); a[0].len()];
            for (r, c) in row.iter().enumerate() {
                for (x, y) in acc.iter_mut().zip(&a[r]) {
                    *x += c * y;
                }
            }
            acc
        })
        .collect()
}

fn trace(m: &[Vec<BigRational>]) -> BigRational {
    m.iter().enumerate().map(|(i, r)| r[i].clone()).sum()
}

fn main() -> anyhow::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (level, k) = match args[..] {
        [n, k] => (n, k as u32),
        _ => (32, 4),
    };
    let space = SymbolSpace::new(level, k)?;
    println!("M_{k}(Gamma_0({level})): {} Manin symbols, dimension {}", space.num_manin(), space.dim());

    let t3 = space.hecke(3)?;
    let t5 = space.hecke(5)?;
    let commute = mat_mul(&t3, &t5) == mat_mul(&t5, &t3);
    println!("tr T_3 = {}, tr T_5 = {}, T_3 T_5 = T_5 T_3: {commute}", trace(&t3), trace(&t5));

    let id = |x: &BigRational| x.clone();
    for sign in [1, -1] {
        let d = eigenspace(&space, &[], sign, &rat(0), &id)?.len();
        println!("sign {sign:+}: dimension {d}");
    }

    if (level, k) == (32, 4) {
        let eig = [(3, rat(0)), (5, rat(22)), (13, rat(-18))];
        let mut sym = EigenSymbol::from_eigenvalues(&space, &eig, 1, &rat(0), &id)?;
        let lifts: Vec<[i64; 4]> = (0..space.p1().len()).map(|t| space.p1().lift(t)).collect();
        let scale = sym.normalize(&lifts);
        println!("newform with a_3 = 0, a_5 = 22: scaled by {scale} to primitive values");
        for a in 1..9 {
            if a % 3 != 0 {
                println!("  [{a}/9] = {:?}", sym.brackets(a, 9).iter().map(|x| x.to_string()).collect::<Vec<_>>());
            }
        }
    }
    Ok(())
}
