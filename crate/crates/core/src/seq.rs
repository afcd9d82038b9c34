//! Scalar sequence suppliers: Fibonacci numbers, ordinary factorials,
//! F-factorials, q-integers, and q-factorials.
//!
//! All suppliers memoize monotone prefixes behind a process-global
//! [`SequenceCache`]; observable behavior is identical to the pure
//! recurrences under any interleaving of callers.

use std::sync::{LazyLock, Mutex};

use num_bigint::BigInt;

use crate::domain::{Coefficient, ExactInt, QPoly};

/// Memoized prefixes of the scalar sequences. Extension only ever appends;
/// existing entries are never mutated.
pub struct SequenceCache {
    fib: Mutex<Vec<ExactInt>>,
    factorial: Mutex<Vec<ExactInt>>,
    fib_factorial: Mutex<Vec<ExactInt>>,
    q_factorial: Mutex<Vec<QPoly>>,
}

impl SequenceCache {
    pub fn new() -> Self {
        SequenceCache {
            fib: Mutex::new(vec![ExactInt::from(0i64), ExactInt::from(1i64)]),
            factorial: Mutex::new(vec![ExactInt::from(1i64)]),
            fib_factorial: Mutex::new(vec![ExactInt::from(1i64)]),
            q_factorial: Mutex::new(vec![<QPoly as Coefficient>::one()]),
        }
    }

    /// F_0 = 0, F_1 = 1, F_n = F_{n-1} + F_{n-2}.
    pub fn fibonacci(&self, n: usize) -> ExactInt {
        let mut cache = self.fib.lock().unwrap();
        while cache.len() <= n {
            let next = Coefficient::add(&cache[cache.len() - 1], &cache[cache.len() - 2]);
            cache.push(next);
        }
        cache[n].clone()
    }

    /// n! with 0! = 1.
    pub fn factorial(&self, n: usize) -> ExactInt {
        let mut cache = self.factorial.lock().unwrap();
        while cache.len() <= n {
            let i = cache.len();
            let next = Coefficient::mul(&cache[i - 1], &ExactInt::from(i));
            cache.push(next);
        }
        cache[n].clone()
    }

    /// F-factorial: the product F_1 · F_2 · … · F_n, empty product 1.
    pub fn fib_factorial(&self, n: usize) -> ExactInt {
        // Fill the Fibonacci prefix first so the nested lock below is short.
        let _ = self.fibonacci(n);
        let mut cache = self.fib_factorial.lock().unwrap();
        while cache.len() <= n {
            let i = cache.len();
            let next = Coefficient::mul(&cache[i - 1], &self.fibonacci(i));
            cache.push(next);
        }
        cache[n].clone()
    }

    /// q-factorial: the product 1_q · 2_q · … · n_q, empty product 1.
    pub fn q_factorial(&self, n: usize) -> QPoly {
        let mut cache = self.q_factorial.lock().unwrap();
        while cache.len() <= n {
            let i = cache.len();
            let next = Coefficient::mul(&cache[i - 1], &q_integer(i));
            cache.push(next);
        }
        cache[n].clone()
    }
}

impl Default for SequenceCache {
    fn default() -> Self {
        SequenceCache::new()
    }
}

static GLOBAL: LazyLock<SequenceCache> = LazyLock::new(SequenceCache::new);

/// n-th Fibonacci number (F_0 = 0).
pub fn fibonacci(n: usize) -> ExactInt {
    GLOBAL.fibonacci(n)
}

/// Ordinary factorial n!.
pub fn factorial(n: usize) -> ExactInt {
    GLOBAL.factorial(n)
}

/// F-factorial n_F! = F_1 · … · F_n.
pub fn fib_factorial(n: usize) -> ExactInt {
    GLOBAL.fib_factorial(n)
}

/// q-integer n_q = (1 - q^n)/(1 - q) = 1 + q + … + q^{n-1}; zero for n = 0.
pub fn q_integer(n: usize) -> QPoly {
    QPoly::new(vec![BigInt::from(1); n])
}

/// q-factorial n_q! = 1_q · 2_q · … · n_q.
pub fn q_factorial(n: usize) -> QPoly {
    GLOBAL.q_factorial(n)
}

/// Binomial coefficient C(n, k) by the multiplicative formula; every
/// intermediate division is exact.
pub fn binomial(n: usize, k: usize) -> ExactInt {
    if k > n {
        return <ExactInt as Coefficient>::zero();
    }
    let k = k.min(n - k);
    let mut acc = <ExactInt as Coefficient>::one();
    for i in 0..k {
        acc = Coefficient::mul(&acc, &ExactInt::from(n - i));
        acc = acc
            .exact_div(&ExactInt::from(i + 1))
            .expect("running product C(n, i+1) is always an integer");
    }
    acc
}
