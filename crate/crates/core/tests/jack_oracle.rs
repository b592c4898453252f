//! The monomial recurrence is checked against a Gram–Schmidt construction
//! that shares no code with it: monomials are expanded through power sums
//! computed as explicit multivariate polynomials.

use std::collections::HashMap;

use jacktop::exact::{factorial, int, Rat, RatFunc};
use jacktop::jackref::{hook_product, monomial_coefficients, JackOracle};
use jacktop::young::{partitions_of, Partition};
use num_traits::{One, Zero};

type Mono = Vec<u32>;

// p_ρ in `vars` variables as exponent vector -> coefficient
fn power_sum(rho: &Partition, vars: usize) -> HashMap<Mono, i64> {
    let mut acc: HashMap<Mono, i64> = HashMap::from([(vec![0; vars], 1)]);
    for &r in rho.parts() {
        let mut next = HashMap::new();
        for (m, c) in &acc {
            for i in 0..vars {
                let mut m2 = m.clone();
                m2[i] += r;
                *next.entry(m2).or_insert(0) += c;
            }
        }
        acc = next;
    }
    acc
}

// L[ρ][μ] = coefficient of x^μ in p_ρ
fn transition(parts: &[Partition], vars: usize) -> Vec<Vec<Rat>> {
    parts
        .iter()
        .map(|rho| {
            let ps = power_sum(rho, vars);
            parts
                .iter()
                .map(|mu| {
                    let mut m: Mono = mu.parts().to_vec();
                    m.resize(vars, 0);
                    int(*ps.get(&m).unwrap_or(&0))
                })
                .collect()
        })
        .collect()
}

fn invert(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).unwrap();
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (v, pv) in a[r].iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn alpha_pow(k: usize) -> RatFunc {
    (0..k).fold(RatFunc::one(), |acc, _| &acc * &RatFunc::alpha())
}

/// Jack `P` for every partition of `n`, in monomial coordinates.
fn gram_schmidt(n: u32) -> HashMap<Partition, Vec<RatFunc>> {
    let mut parts = partitions_of(n);
    parts.reverse(); // lexicographically increasing
    let vars = n as usize;
    let l = transition(&parts, vars);
    let linv = invert(&l);
    let weight: Vec<RatFunc> = parts
        .iter()
        .map(|r| alpha_pow(r.len()).scale(&Rat::from_integer(r.z())))
        .collect();
    let dot = |f: &[RatFunc], g: &[RatFunc]| {
        f.iter()
            .zip(g)
            .zip(&weight)
            .fold(RatFunc::zero(), |acc, ((a, b), w)| &acc + &(&(a * b) * w))
    };
    let mut ortho: Vec<Vec<RatFunc>> = Vec::new();
    for i in 0..parts.len() {
        // m_μ in the power-sum basis
        let m: Vec<RatFunc> = (0..parts.len()).map(|r| RatFunc::constant(linv[i][r].clone())).collect();
        let mut v = m.clone();
        for q in &ortho {
            let c = &dot(&m, q) / &dot(q, q);
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi = &*vi - &(&c * qi);
            }
        }
        ortho.push(v);
    }
    // back to monomial coordinates
    parts
        .iter()
        .zip(&ortho)
        .map(|(lam, v)| {
            let coords = (0..parts.len())
                .map(|mu| {
                    (0..parts.len()).fold(RatFunc::zero(), |acc, rho| {
                        &acc + &v[rho].scale(&l[rho][mu])
                    })
                })
                .collect();
            (lam.clone(), coords)
        })
        .collect()
}

#[test]
fn recurrence_matches_gram_schmidt() {
    for n in 1..=4u32 {
        let gs = gram_schmidt(n);
        let mut parts = partitions_of(n);
        parts.reverse();
        for lam in &parts {
            let (u, _) = monomial_coefficients(lam);
            for (j, mu) in parts.iter().enumerate() {
                let mine = u.get(mu).cloned().unwrap_or_else(RatFunc::zero);
                assert_eq!(mine, gs[lam][j], "P_{lam} at m_{mu}");
            }
        }
    }
}

#[test]
fn powersum_expansion_reproduces_monomials() {
    let oracle = JackOracle::new(8);
    for n in 1..=4u32 {
        let mut parts = partitions_of(n);
        parts.reverse();
        let l = transition(&parts, n as usize);
        for lam in &parts {
            let j = oracle.jack_powersum(lam).unwrap();
            let (u, _) = monomial_coefficients(lam);
            let scale = hook_product(lam);
            for (k, mu) in parts.iter().enumerate() {
                let from_p = parts.iter().enumerate().fold(RatFunc::zero(), |acc, (r, rho)| {
                    &acc + &j.coeff(rho).scale(&l[r][k])
                });
                let expect = &u.get(mu).cloned().unwrap_or_else(RatFunc::zero) * &scale;
                assert_eq!(from_p, expect, "J_{lam} at m_{mu}");
            }
        }
    }
}

#[test]
fn normalization_is_the_hook_product() {
    for n in 1..=6u32 {
        for lam in partitions_of(n) {
            let (u, _) = monomial_coefficients(&lam);
            let ones = Partition::from(vec![1; n as usize]);
            let scale = &RatFunc::constant(Rat::from_integer(factorial(n as u64))) / &u[&ones];
            assert_eq!(scale, hook_product(&lam), "{lam}");
        }
    }
}

#[test]
fn small_jack_polynomials() {
    let o = JackOracle::new(8);
    let p = |v: &[u32]| Partition::from(v.to_vec());
    let a = RatFunc::alpha();
    let j3 = o.jack_powersum(&p(&[3])).unwrap();
    assert_eq!(j3.coeff(&p(&[1, 1, 1])), RatFunc::one());
    assert_eq!(j3.coeff(&p(&[2, 1])), a.scale(&int(3)));
    assert_eq!(j3.coeff(&p(&[3])), (&a * &a).scale(&int(2)));
    let j11 = o.jack_powersum(&p(&[1, 1])).unwrap();
    assert_eq!(j11.coeff(&p(&[1, 1])), RatFunc::one());
    assert_eq!(j11.coeff(&p(&[2])), RatFunc::constant(int(-1)));
    // θ_{1^n}(λ) = 1 for every λ
    for lam in partitions_of(5) {
        let j = o.jack_powersum(&lam).unwrap();
        assert_eq!(j.coeff(&p(&[1; 5])), RatFunc::one(), "{lam}");
    }
}
