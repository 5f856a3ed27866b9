use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::{Error, Result};

/// Highest index the table will compute. Beyond this the exact
/// arithmetic gets expensive and no evaluator here needs it.
pub const MAX_BERNOULLI_INDEX: usize = 256;

/// Exact Bernoulli numbers `B₀, B₁, …` with `B₁ = −1/2`.
///
/// Values are produced by the Akiyama–Tanigawa transform and cached. The
/// table only ever grows; entries already handed out are never touched.
#[derive(Debug, Default)]
pub struct BernoulliTable {
    inner: RwLock<Inner>,
}

#[derive(Debug, Default)]
struct Inner {
    exact: Vec<BigRational>,
    float: Vec<f64>,
    // Akiyama–Tanigawa working row after the last computed index.
    row: Vec<BigRational>,
}

impl Inner {
    fn extend_to(&mut self, n: usize) {
        while self.exact.len() <= n {
            let m = self.exact.len();
            self.row
                .push(BigRational::new(BigInt::from(1), BigInt::from(m + 1)));
            for j in (1..=m).rev() {
                let diff = &self.row[j - 1] - &self.row[j];
                self.row[j - 1] = diff * BigRational::from_integer(BigInt::from(j));
            }
            let mut value = self.row[0].clone();
            // the transform yields the B₁ = +1/2 convention
            if m == 1 {
                value = -value;
            }
            let float = ratio_to_f64(&value);
            self.exact.push(value);
            self.float.push(float);
        }
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    r.to_f64().unwrap_or(f64::NAN)
}

impl BernoulliTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide table shared by all evaluators.
    pub fn global() -> &'static BernoulliTable {
        static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
        TABLE.get_or_init(BernoulliTable::new)
    }

    fn check(n: usize) -> Result<()> {
        if n > MAX_BERNOULLI_INDEX {
            return Err(Error::Capacity {
                what: "bernoulli index",
                limit: MAX_BERNOULLI_INDEX,
            });
        }
        Ok(())
    }

    fn ensure(&self, n: usize) {
        let have = self
            .inner
            .read()
            .expect("bernoulli table poisoned")
            .exact
            .len();
        if have <= n {
            self.inner
                .write()
                .expect("bernoulli table poisoned")
                .extend_to(n);
        }
    }

    /// Exact `Bₙ`.
    pub fn get(&self, n: usize) -> Result<BigRational> {
        Self::check(n)?;
        self.ensure(n);
        Ok(self.inner.read().expect("bernoulli table poisoned").exact[n].clone())
    }

    /// `Bₙ` rounded to binary64 from its exact value.
    pub fn get_f64(&self, n: usize) -> Result<f64> {
        Self::check(n)?;
        self.ensure(n);
        Ok(self.inner.read().expect("bernoulli table poisoned").float[n])
    }

    /// Number of entries computed so far.
    pub fn len(&self) -> usize {
        self.inner
            .read()
            .expect("bernoulli table poisoned")
            .exact
            .len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Exact `Bₙ` from the shared table.
pub fn bernoulli(n: usize) -> Result<BigRational> {
    BernoulliTable::global().get(n)
}

/// `Bₙ` as binary64 from the shared table.
pub fn bernoulli_f64(n: usize) -> Result<f64> {
    BernoulliTable::global().get_f64(n)
}
