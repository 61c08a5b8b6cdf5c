use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num::{BigInt, BigRational, One, Zero};

use crate::characters::DirichletCharacter;
use crate::cyclotomic::CycNumber;

/// Append-only caches of Bernoulli numbers (B_1 = −1/2) and generalized
/// Bernoulli numbers B_{n,χ} keyed by (primitive label, n). Readers and
/// writers synchronize through the locks.
#[derive(Default)]
pub struct BernoulliCache {
    plain: RwLock<Vec<BigRational>>,
    by_character: RwLock<HashMap<(String, u32), CycNumber>>,
    /// B_n(a/f) for a = 1..=f, keyed by (f, n).
    poly_values: RwLock<HashMap<(u64, u32), Arc<Vec<BigRational>>>>,
}

impl BernoulliCache {
    pub fn global() -> &'static BernoulliCache {
        static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
        CACHE.get_or_init(BernoulliCache::default)
    }

    /// B_0, ..., B_n.
    pub fn bernoulli_numbers(&self, n: usize) -> Vec<BigRational> {
        {
            let plain = self.plain.read().expect("poisoned");
            if plain.len() > n {
                return plain[..=n].to_vec();
            }
        }
        let mut plain = self.plain.write().expect("poisoned");
        if plain.is_empty() {
            plain.push(BigRational::one());
        }
        while plain.len() <= n {
            // Σ_{k=0}^{m} C(m+1, k) B_k = 0
            let m = plain.len();
            let mut binom = BigInt::one();
            let mut acc = BigRational::zero();
            for (k, b) in plain.iter().enumerate() {
                acc += b * BigRational::from_integer(binom.clone());
                binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
            }
            plain.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        plain[..=n].to_vec()
    }

    pub fn bernoulli(&self, n: usize) -> BigRational {
        self.bernoulli_numbers(n).pop().expect("non-empty")
    }

    /// B_{n,χ} for the primitive character inducing `chi`.
    pub fn generalized(&self, chi: &DirichletCharacter, n: u32) -> CycNumber {
        let prim = chi.primitivize();
        let key = (prim.label(), n);
        if let Some(v) = self.by_character.read().expect("poisoned").get(&key) {
            return v.clone();
        }
        let value = self.compute_generalized(&prim, n);
        self.by_character
            .write()
            .expect("poisoned")
            .entry(key)
            .or_insert(value)
            .clone()
    }

    fn poly_values(&self, f: u64, n: u32) -> Arc<Vec<BigRational>> {
        if let Some(v) = self.poly_values.read().expect("poisoned").get(&(f, n)) {
            return v.clone();
        }
        let bern = self.bernoulli_numbers(n as usize);
        let values: Vec<BigRational> = (1..=f)
            .map(|a| {
                let x = BigRational::new(BigInt::from(a), BigInt::from(f));
                eval_bernoulli_poly(&bern, n as usize, &x)
            })
            .collect();
        self.poly_values
            .write()
            .expect("poisoned")
            .entry((f, n))
            .or_insert(Arc::new(values))
            .clone()
    }

    fn compute_generalized(&self, chi: &DirichletCharacter, n: u32) -> CycNumber {
        let f = chi.modulus();
        let ord = chi.order();
        let values = self.poly_values(f, n);
        // group B_n(a/f) by the exponent of χ(a) in Q(ζ_ord)
        let mut by_exponent = vec![BigRational::zero(); ord as usize];
        for a in 1..=f {
            if let Some(v) = chi.value(a as i64) {
                let k = v.k * (ord / v.n);
                by_exponent[k as usize] += &values[(a - 1) as usize];
            }
        }
        let scale = BigRational::from_integer(BigInt::from(f).pow(n - 1));
        let terms: Vec<(i64, BigRational)> = by_exponent
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64, c * &scale))
            .collect();
        CycNumber::make(ord, &terms).expect("positive level")
    }
}

fn eval_bernoulli_poly(bern: &[BigRational], n: usize, x: &BigRational) -> BigRational {
    // B_n(x) = Σ_k C(n,k) B_k x^{n−k}, evaluated by Horner in x
    let mut binom = BigInt::one();
    let mut coeffs = Vec::with_capacity(n + 1);
    for (k, b) in bern.iter().enumerate().take(n + 1) {
        coeffs.push(b * BigRational::from_integer(binom.clone()));
        binom = binom * BigInt::from(n - k) / BigInt::from(k + 1);
    }
    // coeffs[k] multiplies x^{n−k}
    coeffs
        .iter()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// B_n(x).
pub fn bernoulli_polynomial(n: u32, x: &BigRational) -> BigRational {
    let bern = BernoulliCache::global().bernoulli_numbers(n as usize);
    eval_bernoulli_poly(&bern, n as usize, x)
}

/// B_{n,χ} = f^{n−1} Σ_{a=1}^{f} χ(a) B_n(a/f) for the primitive form of χ.
pub fn generalized_bernoulli(chi: &DirichletCharacter, n: u32) -> CycNumber {
    BernoulliCache::global().generalized(chi, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::rational;

    #[test]
    fn plain_numbers() {
        let b = BernoulliCache::global().bernoulli_numbers(12);
        assert_eq!(b[0], rational(1, 1));
        assert_eq!(b[1], rational(-1, 2));
        assert_eq!(b[2], rational(1, 6));
        assert_eq!(b[4], rational(-1, 30));
        assert_eq!(b[12], rational(-691, 2730));
        assert!(b.iter().skip(3).step_by(2).all(Zero::is_zero));
    }

    #[test]
    fn polynomial_examples() {
        let x = rational(3, 7);
        assert_eq!(bernoulli_polynomial(1, &x), x.clone() - rational(1, 2));
        assert_eq!(bernoulli_polynomial(2, &rational(1, 5)), rational(1, 150));
        assert_eq!(bernoulli_polynomial(0, &x), rational(1, 1));
        // B_n(1 − x) = (−1)^n B_n(x)
        for n in 0..10u32 {
            let lhs = bernoulli_polynomial(n, &(rational(1, 1) - x.clone()));
            let rhs = bernoulli_polynomial(n, &x);
            assert_eq!(lhs, if n % 2 == 0 { rhs } else { -rhs });
        }
    }

    #[test]
    fn generalized_examples() {
        let triv = DirichletCharacter::trivial(1);
        assert_eq!(
            generalized_bernoulli(&triv, 2),
            CycNumber::from_rational(1, rational(1, 6))
        );
        // B_{1,triv} = B_1(1) = +1/2 from the defining sum
        assert_eq!(
            generalized_bernoulli(&triv, 1),
            CycNumber::from_rational(1, rational(1, 2))
        );
        let chi4 = DirichletCharacter::parse_label("4.1").unwrap();
        // (1)(1/4 − 1/2) + (−1)(3/4 − 1/2)
        assert_eq!(
            generalized_bernoulli(&chi4, 1),
            CycNumber::from_rational(1, rational(-1, 2))
        );
        let chi5 = DirichletCharacter::parse_label("5.2").unwrap();
        // 5·(B_2(1/5) − B_2(2/5) − B_2(3/5) + B_2(4/5))
        let by_hand = (rational(1, 150) - rational(-11, 150) - rational(-11, 150)
            + rational(1, 150))
            * rational(5, 1);
        assert_eq!(by_hand, rational(4, 5));
        assert_eq!(
            generalized_bernoulli(&chi5, 2),
            CycNumber::from_rational(1, rational(4, 5))
        );
    }
}
