//! Reference Jack polynomials in the power-sum basis and the normalized Jack
//! characters built from them.
//!
//! `P_λ` is computed in the monomial basis from the Laplace–Beltrami
//! eigen-equation (triangular in dominance order), rescaled to the `J`
//! normalization, and converted to power sums by back-substitution.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use serde_json::Value;

use crate::cache::Cache;
use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, int, Laurent, Rat, RatFunc};
use crate::young::{partitions_of, Partition};

pub const DEFAULT_BOUND: usize = 8;

const JACK_KIND: &str = "jack_powersum";

/// Symmetric function as power-sum coefficients `θ_ρ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymFuncP {
    pub coeffs: BTreeMap<Partition, RatFunc>,
}

impl SymFuncP {
    pub fn coeff(&self, rho: &Partition) -> RatFunc {
        self.coeffs.get(rho).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn to_json(&self) -> Value {
        Value::Object(
            self.coeffs
                .iter()
                .map(|(k, v)| (k.to_string(), Value::String(v.render())))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<SymFuncP> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("power-sum expansion must be an object".into()))?;
        let mut coeffs = BTreeMap::new();
        for (k, s) in obj {
            let s = s
                .as_str()
                .ok_or_else(|| Error::Parse("coefficient must be a string".into()))?;
            let c = RatFunc::parse(s)?;
            if !c.is_zero() {
                coeffs.insert(k.parse()?, c);
            }
        }
        Ok(SymFuncP { coeffs })
    }
}

type Slot<T> = Arc<OnceLock<T>>;

/// Memoizing oracle. Each table entry is filled at most once even under
/// concurrent requests for the same key.
pub struct JackOracle {
    bound: usize,
    cache: Option<Cache>,
    jacks: Mutex<HashMap<Partition, Slot<Arc<SymFuncP>>>>,
    chars: Mutex<HashMap<(Partition, Partition), Laurent>>,
    lmats: Mutex<HashMap<usize, Slot<Arc<LMatrix>>>>,
}

impl JackOracle {
    pub fn new(bound: usize) -> Self {
        JackOracle {
            bound,
            cache: None,
            jacks: Mutex::default(),
            chars: Mutex::default(),
            lmats: Mutex::default(),
        }
    }

    pub fn with_cache(bound: usize, cache: Cache) -> Self {
        JackOracle {
            cache: Some(cache),
            ..Self::new(bound)
        }
    }

    /// Shared oracle with bound [`DEFAULT_BOUND`], raised on demand by [`ensure_global_bound`].
    pub fn global() -> Arc<JackOracle> {
        GLOBAL
            .get_or_init(|| Mutex::new(Arc::new(JackOracle::new(DEFAULT_BOUND))))
            .lock()
            .unwrap()
            .clone()
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// `J_λ` expanded in power sums.
    pub fn jack_powersum(&self, lam: &Partition) -> Result<Arc<SymFuncP>> {
        if lam.size() > self.bound {
            return Err(Error::BoundExceeded {
                requested: lam.size(),
                bound: self.bound,
            });
        }
        let slot = self
            .jacks
            .lock()
            .unwrap()
            .entry(lam.clone())
            .or_default()
            .clone();
        if let Some(v) = slot.get() {
            return Ok(v.clone());
        }
        let mut err = None;
        let v = slot.get_or_init(|| match self.load_or_compute(lam) {
            Ok(v) => Arc::new(v),
            Err(e) => {
                err = Some(e);
                Arc::new(SymFuncP::default())
            }
        });
        if let Some(e) = err {
            // leave no poisoned entry behind
            self.jacks.lock().unwrap().remove(lam);
            return Err(e);
        }
        Ok(v.clone())
    }

    fn load_or_compute(&self, lam: &Partition) -> Result<SymFuncP> {
        let name = cache_name(lam);
        if let Some(cache) = &self.cache {
            if let Some(v) = cache.load(&name, JACK_KIND) {
                if let Ok(s) = SymFuncP::from_json(&v) {
                    return Ok(s);
                }
            }
        }
        let n = lam.size();
        let lmat = self.lmatrix(n);
        let (u, _) = monomial_coefficients(lam);
        let one_n = Partition::from(vec![1; n]);
        let scale = &RatFunc::constant(Rat::from_integer(factorial(n as u64))) / &u[&one_n];
        let c: BTreeMap<Partition, RatFunc> = u.into_iter().map(|(k, v)| (k, &v * &scale)).collect();
        let theta = lmat.monomial_to_powersum(&c);
        let out = SymFuncP { coeffs: theta };
        if let Some(cache) = &self.cache {
            cache.store(&name, JACK_KIND, &out.to_json())?;
        }
        Ok(out)
    }

    fn lmatrix(&self, n: usize) -> Arc<LMatrix> {
        let slot = self.lmats.lock().unwrap().entry(n).or_default().clone();
        slot.get_or_init(|| Arc::new(LMatrix::new(n))).clone()
    }

    /// `Ch_π(λ)`, zero when `|λ| < |π|`.
    pub fn jack_character(&self, pi: &Partition, lam: &Partition) -> Result<Laurent> {
        let (np, nl) = (pi.size(), lam.size());
        if nl < np {
            return Ok(Laurent::zero());
        }
        let key = (pi.clone(), lam.clone());
        if let Some(v) = self.chars.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let k = nl - np;
        let m1 = pi.multiplicity(1);
        let rho = pi.with_ones(k);
        let theta = self.jack_powersum(lam)?.coeff(&rho);
        let factor = Rat::from_integer(binomial((k + m1) as u64, m1 as u64) * pi.z());
        let value = theta
            .alpha_to_a()?
            .scale(&factor)
            .shift(-((np - pi.len()) as i32));
        self.chars.lock().unwrap().insert(key, value.clone());
        Ok(value)
    }
}

static GLOBAL: OnceLock<Mutex<Arc<JackOracle>>> = OnceLock::new();

/// Replaces the shared oracle if its bound is below `bound`. In-memory tables
/// restart; the disk cache, if any, is kept.
pub fn ensure_global_bound(bound: usize) {
    let cell = GLOBAL.get_or_init(|| Mutex::new(Arc::new(JackOracle::new(DEFAULT_BOUND))));
    let mut g = cell.lock().unwrap();
    if g.bound < bound {
        let cache = g.cache.clone();
        *g = Arc::new(match cache {
            Some(c) => JackOracle::with_cache(bound, c),
            None => JackOracle::new(bound),
        });
    }
}

/// Installs a fresh shared oracle with the given bound and cache.
pub fn configure_global(bound: usize, cache: Option<Cache>) {
    let cell = GLOBAL.get_or_init(|| Mutex::new(Arc::new(JackOracle::new(DEFAULT_BOUND))));
    let oracle = match cache {
        Some(c) => JackOracle::with_cache(bound, c),
        None => JackOracle::new(bound),
    };
    *cell.lock().unwrap() = Arc::new(oracle);
}

pub fn jack_powersum(lam: &Partition) -> Result<Arc<SymFuncP>> {
    JackOracle::global().jack_powersum(lam)
}

pub fn jack_character(pi: &Partition, lam: &Partition) -> Result<Laurent> {
    JackOracle::global().jack_character(pi, lam)
}

fn cache_name(lam: &Partition) -> String {
    if lam.is_empty() {
        "jack_empty".into()
    } else {
        let parts: Vec<String> = lam.parts().iter().map(u32::to_string).collect();
        format!("jack_{}", parts.join("-"))
    }
}

// twice the eigenvalue, up to a shift common to all partitions of one size
fn two_e(mu: &Partition) -> RatFunc {
    let a: i64 = mu.parts().iter().map(|&m| m as i64 * (m as i64 - 1)).sum();
    let b: i64 = mu
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &m)| 2 * i as i64 * m as i64)
        .sum();
    &RatFunc::alpha().scale(&int(a)) - &RatFunc::constant(int(b))
}

/// Monomial coefficients of the monic `P_λ`, together with the list of
/// partitions processed (lexicographically decreasing from `λ`).
pub fn monomial_coefficients(lam: &Partition) -> (BTreeMap<Partition, RatFunc>, Vec<Partition>) {
    let n = lam.size() as u32;
    let order: Vec<Partition> = partitions_of(n)
        .into_iter()
        .filter(|nu| nu.dominated_by(lam))
        .collect();
    let mut u: BTreeMap<Partition, RatFunc> = BTreeMap::new();
    let e_lam = two_e(lam);
    for nu in &order {
        if nu == lam {
            u.insert(nu.clone(), RatFunc::one());
            continue;
        }
        let parts = nu.parts();
        let mut acc = RatFunc::zero();
        for p in 0..parts.len() {
            for q in p + 1..parts.len() {
                let (x, y) = (parts[p], parts[q]);
                for b in 0..y {
                    let a = x + y - b;
                    let mut raised = parts.to_vec();
                    raised[p] = a;
                    raised[q] = b;
                    let mu = Partition::from_unsorted(raised);
                    if let Some(c) = u.get(&mu) {
                        acc = &acc + &c.scale(&int(2 * (a as i64 - b as i64)));
                    }
                }
            }
        }
        let denom = &e_lam - &two_e(nu);
        let val = &acc / &denom;
        if !val.is_zero() {
            u.insert(nu.clone(), val);
        }
    }
    (u, order)
}

/// Transition matrix `p_ρ = Σ_μ L_{ρμ} m_μ` for one size.
pub struct LMatrix {
    parts: Vec<Partition>,
    entries: HashMap<(usize, usize), BigInt>,
}

impl LMatrix {
    pub fn new(n: usize) -> Self {
        let mut parts = partitions_of(n as u32);
        parts.reverse(); // lexicographically increasing
        let mut entries = HashMap::new();
        for (i, rho) in parts.iter().enumerate() {
            for (j, mu) in parts.iter().enumerate() {
                let c = count_assignments(rho.parts(), mu.parts());
                if c != BigInt::from(0) {
                    entries.insert((i, j), c);
                }
            }
        }
        LMatrix { parts, entries }
    }

    pub fn entry(&self, rho: &Partition, mu: &Partition) -> BigInt {
        let i = self.parts.iter().position(|p| p == rho);
        let j = self.parts.iter().position(|p| p == mu);
        match (i, j) {
            (Some(i), Some(j)) => self.entries.get(&(i, j)).cloned().unwrap_or_default(),
            _ => BigInt::from(0),
        }
    }

    /// Solves `c_μ = Σ_ρ θ_ρ L_{ρμ}` for `θ`, finest partitions first.
    pub fn monomial_to_powersum(&self, c: &BTreeMap<Partition, RatFunc>) -> BTreeMap<Partition, RatFunc> {
        let mut theta: Vec<RatFunc> = Vec::with_capacity(self.parts.len());
        for (j, mu) in self.parts.iter().enumerate() {
            let mut rhs = c.get(mu).cloned().unwrap_or_else(RatFunc::zero);
            for (i, th) in theta.iter().enumerate() {
                if let Some(l) = self.entries.get(&(i, j)) {
                    if !th.is_zero() {
                        rhs = &rhs - &th.scale(&Rat::from_integer(l.clone()));
                    }
                }
            }
            let diag = Rat::from_integer(self.entries[&(j, j)].clone());
            theta.push(rhs.scale(&diag.recip()));
        }
        self.parts
            .iter()
            .cloned()
            .zip(theta)
            .filter(|(_, t)| !t.is_zero())
            .collect()
    }
}

// number of maps from the parts of rho to the rows of mu filling each row exactly
fn count_assignments(rho: &[u32], mu: &[u32]) -> BigInt {
    fn rec(rho: &[u32], room: &mut Vec<u32>) -> BigInt {
        match rho.split_first() {
            None => {
                if room.iter().all(|&r| r == 0) {
                    BigInt::from(1)
                } else {
                    BigInt::from(0)
                }
            }
            Some((&first, rest)) => {
                let mut total = BigInt::from(0);
                for j in 0..room.len() {
                    if room[j] >= first {
                        room[j] -= first;
                        total += rec(rest, room);
                        room[j] += first;
                    }
                }
                total
            }
        }
    }
    if rho.iter().sum::<u32>() != mu.iter().sum::<u32>() {
        return BigInt::from(0);
    }
    rec(rho, &mut mu.to_vec())
}

/// `Π_{□} (α·arm + leg + 1)`, the factor between `P_λ` and `J_λ`.
pub fn hook_product(lam: &Partition) -> RatFunc {
    let t = lam.transpose();
    lam.boxes().fold(RatFunc::one(), |acc, b| {
        let arm = lam.row(b.y as usize) - b.x;
        let leg = t.row(b.x as usize) - b.y;
        let f = &RatFunc::alpha().scale(&int(arm as i64)) + &RatFunc::constant(int(leg as i64 + 1));
        &acc * &f
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::from(v.to_vec())
    }

    #[test]
    fn two_row_jack() {
        let o = JackOracle::new(8);
        let j = o.jack_powersum(&p(&[2])).unwrap();
        assert_eq!(j.coeff(&p(&[2])), RatFunc::alpha());
        assert_eq!(j.coeff(&p(&[1, 1])), RatFunc::one());
        let j1 = o.jack_powersum(&p(&[1])).unwrap();
        assert_eq!(j1.coeffs.len(), 1);
        assert_eq!(j1.coeff(&p(&[1])), RatFunc::one());
    }

    #[test]
    fn characters() {
        let o = JackOracle::new(8);
        for lam in [p(&[]), p(&[1]), p(&[2, 1]), p(&[3, 1])] {
            assert_eq!(o.jack_character(&Partition::empty(), &lam).unwrap(), Laurent::one());
            assert_eq!(o.jack_character(&p(&[1]), &lam).unwrap(), Laurent::from(lam.size() as i64));
        }
        assert!(o.jack_character(&p(&[3]), &p(&[1])).unwrap().is_zero());
        assert_eq!(o.jack_character(&p(&[2]), &p(&[2])).unwrap(), Laurent::monomial(int(2), 1));
    }

    #[test]
    fn bound_is_enforced() {
        let o = JackOracle::new(3);
        assert!(matches!(
            o.jack_powersum(&p(&[2, 2])),
            Err(Error::BoundExceeded { requested: 4, bound: 3 })
        ));
    }

    #[test]
    fn assignment_counts() {
        assert_eq!(count_assignments(&[1, 1], &[2]), BigInt::from(1));
        assert_eq!(count_assignments(&[1, 1], &[1, 1]), BigInt::from(2));
        assert_eq!(count_assignments(&[2, 1, 1], &[2, 2]), BigInt::from(2));
        assert_eq!(count_assignments(&[2], &[1, 1]), BigInt::from(0));
    }

    #[test]
    fn json_round_trip() {
        let o = JackOracle::new(8);
        let j = o.jack_powersum(&p(&[2, 1])).unwrap();
        assert_eq!(SymFuncP::from_json(&j.to_json()).unwrap(), *j);
    }
}
