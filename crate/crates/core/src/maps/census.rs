use std::collections::HashMap;

use rayon::prelude::*;

use super::perm::{next_permutation, transitive, Perm};
use crate::error::{Error, Result};
use crate::exact::factorial;

/// Largest `n` the array-based orbit machinery accepts.
pub const MAX_N: usize = 8;

type Key = [u8; 2 * MAX_N];

/// One `𝔖_{n−1}`-orbit of transitive pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub sigma1: Perm,
    pub sigma2: Perm,
    pub size: u64,
}

// Relabels by breadth-first discovery from the root n−1 (applying a, then b),
// giving the root label n−1 and the others 0, 1, … in discovery order. Pairs
// in one orbit share the key and distinct orbits get distinct keys.
fn orbit_key(a: &[usize], b: &[usize]) -> Key {
    let n = a.len();
    let root = n - 1;
    let mut lab = [u8::MAX; MAX_N];
    let mut queue = [0usize; MAX_N];
    let (mut head, mut tail) = (0, 1);
    queue[0] = root;
    lab[root] = root as u8;
    let mut next = 0u8;
    while head < tail {
        let x = queue[head];
        head += 1;
        for y in [a[x], b[x]] {
            if lab[y] == u8::MAX {
                lab[y] = next;
                next += 1;
                queue[tail] = y;
                tail += 1;
            }
        }
    }
    let mut key = [u8::MAX; 2 * MAX_N];
    for i in 0..n {
        key[lab[i] as usize] = lab[a[i]];
        key[MAX_N + lab[i] as usize] = lab[b[i]];
    }
    key
}

/// Lexicographically least `(π σ₁ π⁻¹, π σ₂ π⁻¹)` over `π ∈ 𝔖_n` fixing `n`.
pub fn canonical_orbit_rep(a: &Perm, b: &Perm) -> Result<(Perm, Perm)> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    if a.n() == 0 || !transitive(a.images(), b.images()) {
        return Err(Error::NotTransitive);
    }
    let n = a.n();
    let mut pi: Vec<usize> = (0..n).collect();
    let mut best: Option<(Perm, Perm)> = None;
    loop {
        let p = Perm::from_vec_unchecked(pi.clone());
        let cand = (a.conjugate_by(&p), b.conjugate_by(&p));
        if best.as_ref().is_none_or(|cur| cand < *cur) {
            best = Some(cand);
        }
        if !next_permutation(&mut pi[..n - 1]) {
            break;
        }
    }
    Ok(best.unwrap())
}

/// Partitions `𝒳_n` into orbits, each reported with its lex-least
/// representative and its size, sorted by representative.
pub fn orbit_census(n: usize) -> Result<Vec<Orbit>> {
    if n == 0 || n > MAX_N {
        return Err(Error::BadIndex(n, 1));
    }
    let all = Perm::all(n);
    let merged = all
        .par_iter()
        .map(|a| {
            let mut local: HashMap<Key, (u64, usize)> = HashMap::new();
            for (j, b) in all.iter().enumerate() {
                if transitive(a.images(), b.images()) {
                    let e = local.entry(orbit_key(a.images(), b.images())).or_insert((0, j));
                    e.0 += 1;
                }
            }
            // remember an outer index with the witness
            local
                .into_iter()
                .map(|(k, (c, j))| (k, (c, (a.clone(), all[j].clone()))))
                .collect::<HashMap<_, _>>()
        })
        .reduce(HashMap::new, |mut x, y| {
            for (k, (c, w)) in y {
                let e = x.entry(k).or_insert((0, w.clone()));
                e.0 += c;
                if w < e.1 {
                    e.1 = w;
                }
            }
            x
        });
    let mut out: Vec<Orbit> = merged
        .into_par_iter()
        .map(|(_, (size, (a, b)))| {
            let (s1, s2) = canonical_orbit_rep(&a, &b).expect("census witness is transitive");
            Orbit {
                sigma1: s1,
                sigma2: s2,
                size,
            }
        })
        .collect();
    out.sort_by(|x, y| (&x.sigma1, &x.sigma2).cmp(&(&y.sigma1, &y.sigma2)));
    Ok(out)
}

/// Whether every orbit has exactly `(n−1)!` elements.
pub fn orbits_have_full_size(n: usize, census: &[Orbit]) -> bool {
    let expect = factorial(n as u64 - 1);
    census.iter().all(|o| num_bigint::BigInt::from(o.size) == expect)
}

pub fn census_json(census: &[Orbit]) -> String {
    let items: Vec<String> = census
        .iter()
        .map(|o| {
            format!(
                r#"{{"sigma1":"{}","sigma2":"{}","orbitSize":{}}}"#,
                o.sigma1, o.sigma2, o.size
            )
        })
        .collect();
    format!("[{}]", items.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::perm::enumerate_transitive_pairs;

    #[test]
    fn small_censuses() {
        let c2 = orbit_census(2).unwrap();
        assert_eq!(c2.len(), 3);
        assert!(c2.iter().all(|o| o.size == 1));
        let c3 = orbit_census(3).unwrap();
        let total: u64 = c3.iter().map(|o| o.size).sum();
        assert_eq!(total as usize, enumerate_transitive_pairs(3).len());
        assert_eq!(c3.len() as u64, total / 2);
        assert!(orbits_have_full_size(3, &c3));
    }

    #[test]
    fn representative_is_idempotent() {
        for o in orbit_census(3).unwrap() {
            assert_eq!(
                canonical_orbit_rep(&o.sigma1, &o.sigma2).unwrap(),
                (o.sigma1.clone(), o.sigma2.clone())
            );
        }
        let id = Perm::identity(2);
        assert!(matches!(canonical_orbit_rep(&id, &id), Err(Error::NotTransitive)));
    }

    #[test]
    fn key_matches_brute_force_orbits() {
        // for n = 4 the key classes coincide with lex-min representative classes
        let mut by_key: HashMap<Key, (Perm, Perm)> = HashMap::new();
        for (a, b) in enumerate_transitive_pairs(4) {
            let rep = canonical_orbit_rep(&a, &b).unwrap();
            let k = orbit_key(a.images(), b.images());
            let seen = by_key.entry(k).or_insert_with(|| rep.clone());
            assert_eq!(*seen, rep);
        }
        assert_eq!(by_key.len(), 71);
    }
}
