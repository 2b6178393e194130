//! JSON element form.
//!
//! Naturals are plain integers (or decimal strings, for values beyond the
//! 53-bit range some readers lose). Free-backend elements are
//! `{"primes": {"<symbol>": <exponent>, ...}}`.

use serde_json::{json, Map, Value};

use super::{factorize, Backend, FactoredElement, PrimeSymbol, SemigroupContext, SemigroupError};

/// Largest integer every JSON reader represents exactly.
pub const MAX_SAFE_INTEGER: u64 = (1 << 53) - 1;

pub fn element_from_json(value: &Value) -> Result<(Backend, FactoredElement), SemigroupError> {
    match value {
        Value::Number(n) => {
            let n = n
                .as_u64()
                .ok_or_else(|| SemigroupError::Parse(format!("{n} is not a non-negative 64-bit integer")))?;
            Ok((Backend::Naturals, factorize(n)?))
        }
        Value::String(s) => {
            let n: u64 =
                s.parse().map_err(|_| SemigroupError::Parse(format!("{s:?} is not a decimal integer")))?;
            Ok((Backend::Naturals, factorize(n)?))
        }
        Value::Object(obj) => {
            let primes = match (obj.len(), obj.get("primes")) {
                (1, Some(Value::Object(primes))) => primes,
                _ => {
                    return Err(SemigroupError::Parse(
                        "expected an object of the form {\"primes\": {...}}".into(),
                    ))
                }
            };
            let mut pairs = Vec::with_capacity(primes.len());
            for (name, k) in primes {
                let k = k.as_u64().ok_or_else(|| {
                    SemigroupError::Parse(format!("exponent of {name} must be a positive integer"))
                })?;
                if k > u64::from(u32::MAX) {
                    return Err(SemigroupError::ExponentTooLarge { symbol: name.clone(), exponent: k });
                }
                pairs.push((PrimeSymbol::named(name.as_str())?, k));
            }
            Ok((Backend::Free, FactoredElement::from_exponents(pairs)?))
        }
        other => Err(SemigroupError::Parse(format!(
            "expected an integer or a {{\"primes\": ...}} object, got {other}"
        ))),
    }
}

/// Parses a JSON array of elements, inferring the backend. Order and
/// duplicates are preserved; set semantics are enforced by the consumer.
pub fn elements_from_json(value: &Value) -> Result<(SemigroupContext, Vec<FactoredElement>), SemigroupError> {
    let Value::Array(items) = value else {
        return Err(SemigroupError::Parse("expected a JSON array of elements".into()));
    };
    let mut backend = None;
    let mut out = Vec::with_capacity(items.len());
    for item in items {
        let (b, e) = element_from_json(item)?;
        backend = merge_backend(backend, b)?;
        out.push(e);
    }
    Ok((context_for(backend), out))
}

pub(crate) fn merge_backend(seen: Option<Backend>, next: Backend) -> Result<Option<Backend>, SemigroupError> {
    match seen {
        Some(b) if b != next => Err(SemigroupError::MixedBackends),
        _ => Ok(Some(next)),
    }
}

pub(crate) fn context_for(backend: Option<Backend>) -> SemigroupContext {
    match backend {
        Some(Backend::Free) => SemigroupContext::free(),
        _ => SemigroupContext::naturals(),
    }
}

/// Naturals up to 2^53 - 1 become JSON numbers, larger ones decimal
/// strings. Non-natural elements become `{"primes": {...}}`.
pub fn element_to_json(element: &FactoredElement) -> Value {
    natural_to_json(element).unwrap_or_else(|| primes_object(element))
}

/// Like [`element_to_json`] but always uses the `{"primes": ...}` form for
/// free-backend contexts, including for the identity.
pub fn element_to_json_in(ctx: &SemigroupContext, element: &FactoredElement) -> Value {
    match ctx.backend() {
        Backend::Naturals => element_to_json(element),
        Backend::Free => primes_object(element),
    }
}

fn natural_to_json(element: &FactoredElement) -> Option<Value> {
    if !element.is_natural() {
        return None;
    }
    Some(match element.to_u64() {
        Some(n) if n <= MAX_SAFE_INTEGER => json!(n),
        _ => Value::String(element.to_biguint()?.to_string()),
    })
}

fn primes_object(element: &FactoredElement) -> Value {
    let primes: Map<String, Value> = element.exponents().map(|(p, k)| (p.to_string(), json!(k))).collect();
    json!({ "primes": primes })
}
