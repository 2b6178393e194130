//! Factorial commutative semigroups in canonical factored form.
//!
//! Every element is stored as a unit part times a sparse map from prime
//! symbols to positive exponents. Two backends share that representation:
//!
//! * [`Backend::Naturals`]: `(ℕ, 1, ·)` with the primes numbered by value.
//! * [`Backend::Free`]: the free FCSG over named prime symbols.
//!
//! In both backends the unit group is trivial, so [`Unit`] is a zero-sized
//! marker and composing units is a no-op.

mod factor;
pub mod json;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

pub use factor::{factor_u64, is_prime, Primes, TRIAL_DIVISION_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("0 is not an element of the multiplicative semigroup of naturals")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid prime symbol {0:?}: names must match [A-Za-z_][A-Za-z0-9_]*")]
    InvalidSymbol(String),
    #[error("prime symbol {0} is not in the context's prime universe")]
    UnknownSymbol(String),
    #[error("exponent of {0} must be >= 1")]
    ZeroExponent(String),
    #[error("exponent of {symbol} is too large ({exponent})")]
    ExponentTooLarge { symbol: String, exponent: u64 },
    #[error("element {element} is not valid in the {backend} backend")]
    WrongBackend { element: String, backend: Backend },
    #[error("cannot mix naturals and free-backend elements in one input")]
    MixedBackends,
    #[error("malformed element: {0}")]
    Parse(String),
}

/// A prime element of the semigroup.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PrimeSymbol {
    /// A prime natural number (naturals backend).
    Natural(u64),
    /// An interned name (free backend).
    Named(String),
}

impl PrimeSymbol {
    pub fn natural(p: u64) -> Result<Self, SemigroupError> {
        if is_prime(p) {
            Ok(PrimeSymbol::Natural(p))
        } else {
            Err(SemigroupError::NotPrime(p))
        }
    }

    pub fn named(name: impl Into<String>) -> Result<Self, SemigroupError> {
        let name = name.into();
        let mut chars = name.chars();
        let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
        if head_ok && chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
            Ok(PrimeSymbol::Named(name))
        } else {
            Err(SemigroupError::InvalidSymbol(name))
        }
    }

    pub fn is_natural(&self) -> bool {
        matches!(self, PrimeSymbol::Natural(_))
    }
}

impl fmt::Display for PrimeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeSymbol::Natural(p) => write!(f, "{p}"),
            PrimeSymbol::Named(s) => f.write_str(s),
        }
    }
}

/// The unit part ε of an element. The unit group is trivial, so this is
/// always the identity.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Unit;

impl Unit {
    pub fn compose(self, _other: Unit) -> Unit {
        Unit
    }
}

/// Canonical form `ε · ∏ p^α(p)` of a semigroup element.
///
/// No stored exponent is zero, so equality of values is equality of
/// elements and the element is a unit iff the map is empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FactoredElement {
    unit: Unit,
    exponents: BTreeMap<PrimeSymbol, u64>,
}

impl FactoredElement {
    /// The neutral element `e`.
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn prime(symbol: PrimeSymbol) -> Self {
        Self::prime_power(symbol, 1)
    }

    /// `p^k`; `k == 0` gives the identity.
    pub fn prime_power(symbol: PrimeSymbol, k: u64) -> Self {
        let mut exponents = BTreeMap::new();
        if k > 0 {
            exponents.insert(symbol, k);
        }
        Self { unit: Unit, exponents }
    }

    /// Builds an element from `(symbol, exponent)` pairs. Repeated symbols
    /// accumulate; a zero exponent is rejected.
    pub fn from_exponents<I>(pairs: I) -> Result<Self, SemigroupError>
    where
        I: IntoIterator<Item = (PrimeSymbol, u64)>,
    {
        let mut exponents = BTreeMap::new();
        for (symbol, k) in pairs {
            if k == 0 {
                return Err(SemigroupError::ZeroExponent(symbol.to_string()));
            }
            *exponents.entry(symbol).or_insert(0u64) += k;
        }
        Ok(Self { unit: Unit, exponents })
    }

    pub fn unit_part(&self) -> Unit {
        self.unit
    }

    pub fn exponent(&self, symbol: &PrimeSymbol) -> u64 {
        self.exponents.get(symbol).copied().unwrap_or(0)
    }

    /// `(symbol, exponent)` pairs in ascending symbol order.
    pub fn exponents(&self) -> impl Iterator<Item = (&PrimeSymbol, u64)> + '_ {
        self.exponents.iter().map(|(p, &k)| (p, k))
    }

    pub fn support(&self) -> impl Iterator<Item = &PrimeSymbol> + '_ {
        self.exponents.keys()
    }

    /// Number of prime factors counted with multiplicity (the `r` in
    /// `s = ε · p_1 ⋯ p_r`).
    pub fn prime_count(&self) -> u64 {
        self.exponents.values().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut exponents = self.exponents.clone();
        for (p, &k) in &other.exponents {
            *exponents.entry(p.clone()).or_insert(0) += k;
        }
        Self { unit: self.unit.compose(other.unit), exponents }
    }

    /// Pointwise minimum of exponents, with the identity as unit part.
    pub fn gcd(&self, other: &Self) -> Self {
        let (small, large) =
            if self.exponents.len() <= other.exponents.len() { (self, other) } else { (other, self) };
        let exponents = small
            .exponents
            .iter()
            .filter_map(|(p, &k)| {
                let m = k.min(large.exponent(p));
                (m > 0).then(|| (p.clone(), m))
            })
            .collect();
        Self { unit: Unit, exponents }
    }

    /// Shares at least one prime with `other`, i.e. `gcd` is not a unit.
    pub fn shares_prime_with(&self, other: &Self) -> bool {
        self.exponents.keys().any(|p| other.exponents.contains_key(p))
    }

    /// `self | other`: pointwise `<=` on exponents.
    pub fn divides(&self, other: &Self) -> bool {
        self.exponents.iter().all(|(p, &k)| other.exponent(p) >= k)
    }

    pub fn is_natural(&self) -> bool {
        self.exponents.keys().all(PrimeSymbol::is_natural)
    }

    /// The natural number this element denotes, if every prime is natural.
    pub fn to_biguint(&self) -> Option<BigUint> {
        let mut acc = BigUint::from(1u32);
        for (p, &k) in &self.exponents {
            let PrimeSymbol::Natural(p) = p else {
                return None;
            };
            let k = u32::try_from(k).ok()?;
            acc *= BigUint::from(*p).pow(k);
        }
        Some(acc)
    }

    /// The natural number this element denotes, if it fits in a `u64`.
    pub fn to_u64(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for (p, &k) in &self.exponents {
            let PrimeSymbol::Natural(p) = p else {
                return None;
            };
            for _ in 0..k {
                acc = acc.checked_mul(*p)?;
            }
        }
        Some(acc)
    }
}

/// Canonical order: naturals compare by numeric value, free elements by
/// their textual form, and all natural elements sort before the others.
impl Ord for FactoredElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.to_biguint(), other.to_biguint()) {
            (Some(a), Some(b)) => a.cmp(&b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => {
                self.to_string().cmp(&other.to_string()).then_with(|| self.exponents.cmp(&other.exponents))
            }
        }
    }
}

impl PartialOrd for FactoredElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Naturals print as decimal numbers; anything else as `p^2*q` with
/// symbols ascending. The identity prints as `1` in both backends.
impl fmt::Display for FactoredElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.to_biguint() {
            return write!(f, "{n}");
        }
        for (i, (p, &k)) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if k == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{k}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Naturals,
    Free,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Naturals => "naturals",
            Backend::Free => "free",
        })
    }
}

/// The semigroup `S` that elements live in. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupContext {
    backend: Backend,
    prime_universe: Option<BTreeSet<String>>,
}

impl SemigroupContext {
    pub fn naturals() -> Self {
        Self { backend: Backend::Naturals, prime_universe: None }
    }

    /// Free FCSG over any well-formed symbol name.
    pub fn free() -> Self {
        Self { backend: Backend::Free, prime_universe: None }
    }

    /// Free FCSG whose primes are exactly `names`.
    pub fn free_over<I, S>(names: I) -> Result<Self, SemigroupError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut universe = BTreeSet::new();
        for name in names {
            let PrimeSymbol::Named(name) = PrimeSymbol::named(name)? else { unreachable!() };
            universe.insert(name);
        }
        Ok(Self { backend: Backend::Free, prime_universe: Some(universe) })
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn prime_universe(&self) -> Option<&BTreeSet<String>> {
        self.prime_universe.as_ref()
    }

    pub fn validate(&self, element: &FactoredElement) -> Result<(), SemigroupError> {
        for p in element.support() {
            match (self.backend, p) {
                (Backend::Naturals, PrimeSymbol::Natural(_)) => {}
                (Backend::Free, PrimeSymbol::Named(name)) => {
                    if let Some(universe) = &self.prime_universe {
                        if !universe.contains(name) {
                            return Err(SemigroupError::UnknownSymbol(name.clone()));
                        }
                    }
                }
                _ => {
                    return Err(SemigroupError::WrongBackend {
                        element: element.to_string(),
                        backend: self.backend,
                    })
                }
            }
        }
        Ok(())
    }

    /// Canonical form of the natural number `n`.
    pub fn factorize(&self, n: u64) -> Result<FactoredElement, SemigroupError> {
        if self.backend != Backend::Naturals {
            return Err(SemigroupError::WrongBackend { element: n.to_string(), backend: self.backend });
        }
        factorize(n)
    }

    pub fn multiply(
        &self,
        a: &FactoredElement,
        b: &FactoredElement,
    ) -> Result<FactoredElement, SemigroupError> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(a.multiply(b))
    }

    pub fn gcd(&self, a: &FactoredElement, b: &FactoredElement) -> Result<FactoredElement, SemigroupError> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(a.gcd(b))
    }

    pub fn is_unit(&self, a: &FactoredElement) -> Result<bool, SemigroupError> {
        self.validate(a)?;
        Ok(a.is_unit())
    }

    /// `m(M)`: product of all elements, `e` for the empty set.
    pub fn set_product<'a, I>(&self, elements: I) -> Result<FactoredElement, SemigroupError>
    where
        I: IntoIterator<Item = &'a FactoredElement>,
    {
        let mut acc = FactoredElement::identity();
        for x in elements {
            self.validate(x)?;
            acc = acc.multiply(x);
        }
        Ok(acc)
    }
}

/// Canonical form of the natural number `n >= 1`.
pub fn factorize(n: u64) -> Result<FactoredElement, SemigroupError> {
    if n == 0 {
        return Err(SemigroupError::Zero);
    }
    let exponents = factor_u64(n).into_iter().map(|(p, k)| (PrimeSymbol::Natural(p), u64::from(k))).collect();
    Ok(FactoredElement { unit: Unit, exponents })
}

/// `m(M)` without context validation.
pub fn set_product<'a, I>(elements: I) -> FactoredElement
where
    I: IntoIterator<Item = &'a FactoredElement>,
{
    elements.into_iter().fold(FactoredElement::identity(), |acc, x| acc.multiply(x))
}
