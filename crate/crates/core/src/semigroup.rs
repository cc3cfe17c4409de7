//! Finite semigroups as validated multiplication tables.
//!
//! Elements are dense indices `0..n-1`; the table entry at `(a, b)` is the
//! product `a·b`. Labels are cosmetic and never participate in any algorithm.

use thiserror::Error;

/// Largest supported semigroup order. The associativity check is cubic in the
/// order and the transducer machinery stores one alphabet symbol per byte, so
/// the cap keeps both honest.
pub const MAX_ORDER: usize = 256;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: usize, b: usize, c: usize },
    #[error("entry at row {row}, column {col} is {value}, outside 0..{order}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("expected a {order}x{order} table, row {row} has {len} entries")]
    BadShape { order: usize, row: usize, len: usize },
    #[error("order must be at least 1")]
    EmptyOrder,
    #[error("order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("unknown semigroup family `{0}`")]
    UnknownFamily(String),
    #[error("family parameter must be a positive integer, got `{0}`")]
    BadFamilyParameter(String),
}

/// An order-`n` associative multiplication table over elements `0..n-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<u8>,
    labels: Option<Vec<String>>,
}

impl FiniteSemigroup {
    /// Validates shape, entry range and associativity (all `n^3` triples).
    /// The first failing triple in lexicographic `(a, b, c)` order is
    /// reported, as is the first out-of-range entry in row-major order.
    pub fn from_table(order: usize, table: &[Vec<usize>]) -> Result<Self, SemigroupError> {
        if order == 0 {
            return Err(SemigroupError::EmptyOrder);
        }
        if order > MAX_ORDER {
            return Err(SemigroupError::OrderTooLarge {
                order,
                max: MAX_ORDER,
            });
        }
        if table.len() != order {
            return Err(SemigroupError::BadShape {
                order,
                row: table.len(),
                len: 0,
            });
        }
        let mut flat = Vec::with_capacity(order * order);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(SemigroupError::BadShape {
                    order,
                    row,
                    len: entries.len(),
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(SemigroupError::OutOfRange {
                        row,
                        col,
                        value,
                        order,
                    });
                }
                flat.push(value as u8);
            }
        }
        Self::from_flat(order, flat)
    }

    /// Same as [`FiniteSemigroup::from_table`], taking a row-major flat table.
    pub fn from_flat(order: usize, table: Vec<u8>) -> Result<Self, SemigroupError> {
        if order == 0 {
            return Err(SemigroupError::EmptyOrder);
        }
        if order > MAX_ORDER {
            return Err(SemigroupError::OrderTooLarge {
                order,
                max: MAX_ORDER,
            });
        }
        if table.len() != order * order {
            return Err(SemigroupError::BadShape {
                order,
                row: table.len() / order.max(1),
                len: table.len() % order.max(1),
            });
        }
        for (i, &value) in table.iter().enumerate() {
            if value as usize >= order {
                return Err(SemigroupError::OutOfRange {
                    row: i / order,
                    col: i % order,
                    value: value as usize,
                    order,
                });
            }
        }
        let s = FiniteSemigroup {
            order,
            table,
            labels: None,
        };
        if let Some((a, b, c)) = s.first_nonassociative_triple() {
            return Err(SemigroupError::NonAssociative { a, b, c });
        }
        Ok(s)
    }

    fn first_nonassociative_triple(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.product(a, b);
                for c in 0..n {
                    if self.product(ab, c) != self.product(a, self.product(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The product `a·b`.
    #[inline]
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    /// Product of a nonempty sequence of elements, left to right.
    pub fn product_of(&self, elements: &[usize]) -> usize {
        let mut acc = elements[0];
        for &e in &elements[1..] {
            acc = self.product(acc, e);
        }
        acc
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Row-major flat table.
    pub fn flat_table(&self) -> &[u8] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.product(a, b)).collect())
            .collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(ls) => ls.get(a).cloned().unwrap_or_else(|| a.to_string()),
            None => a.to_string(),
        }
    }
}

/// Builds one of the named semigroup families.
///
/// Accepted specs: `trivial`, `cyclic:k`, `leftzero:k`, `rightzero:k`,
/// `chain:k` (semilattice chain under min) and `null:k` (every product is 0).
pub fn named(spec: &str) -> Result<FiniteSemigroup, SemigroupError> {
    if spec == "trivial" {
        return FiniteSemigroup::from_flat(1, vec![0]);
    }
    let (family, param) = match spec.split_once(':') {
        Some((f, p)) => (f, p),
        None => return Err(SemigroupError::UnknownFamily(spec.to_string())),
    };
    let k: usize = param
        .parse()
        .map_err(|_| SemigroupError::BadFamilyParameter(param.to_string()))?;
    if k == 0 {
        return Err(SemigroupError::BadFamilyParameter(param.to_string()));
    }
    if k > MAX_ORDER {
        return Err(SemigroupError::OrderTooLarge {
            order: k,
            max: MAX_ORDER,
        });
    }
    let product: fn(usize, usize, usize) -> usize = match family {
        "cyclic" => |a, b, k| (a + b) % k,
        "leftzero" => |a, _, _| a,
        "rightzero" => |_, b, _| b,
        "chain" => |a, b, _| a.min(b),
        "null" => |_, _, _| 0,
        _ => return Err(SemigroupError::UnknownFamily(spec.to_string())),
    };
    let mut flat = Vec::with_capacity(k * k);
    for a in 0..k {
        for b in 0..k {
            flat.push(product(a, b, k) as u8);
        }
    }
    FiniteSemigroup::from_flat(k, flat)
}

/// Componentwise direct product. Element `(i, j)` is encoded as `i*|b| + j`.
pub fn direct_product(
    a: &FiniteSemigroup,
    b: &FiniteSemigroup,
) -> Result<FiniteSemigroup, SemigroupError> {
    let n = a.order() * b.order();
    if n > MAX_ORDER {
        return Err(SemigroupError::OrderTooLarge {
            order: n,
            max: MAX_ORDER,
        });
    }
    let nb = b.order();
    let mut flat = Vec::with_capacity(n * n);
    for i in 0..a.order() {
        for j in 0..nb {
            for k in 0..a.order() {
                for l in 0..nb {
                    flat.push((a.product(i, k) * nb + b.product(j, l)) as u8);
                }
            }
        }
    }
    FiniteSemigroup::from_flat(n, flat)
}

/// Structural flags read straight off the multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub is_group: bool,
    pub is_left_zero: bool,
    pub is_right_zero: bool,
    pub is_commutative: bool,
    pub idempotents: Vec<usize>,
}

pub fn classify(s: &FiniteSemigroup) -> Classification {
    let n = s.order();
    let idempotents: Vec<usize> = s.elements().filter(|&e| s.product(e, e) == e).collect();
    let is_left_zero = s
        .elements()
        .all(|a| (0..n).all(|b| s.product(a, b) == a));
    let is_right_zero = s
        .elements()
        .all(|a| (0..n).all(|b| s.product(a, b) == b));
    let is_commutative = (0..n).all(|a| (a + 1..n).all(|b| s.product(a, b) == s.product(b, a)));
    let identity = s
        .elements()
        .find(|&e| (0..n).all(|x| s.product(e, x) == x && s.product(x, e) == x));
    let is_group = match identity {
        Some(e) => s
            .elements()
            .all(|a| (0..n).any(|b| s.product(a, b) == e && s.product(b, a) == e)),
        None => false,
    };
    Classification {
        is_group,
        is_left_zero,
        is_right_zero,
        is_commutative,
        idempotents,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_group_and_left_zero_tables() {
        let g = FiniteSemigroup::from_table(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.product(1, 1), 0);
        let lz = FiniteSemigroup::from_table(2, &[vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(lz.product(1, 0), 1);
    }

    #[test]
    fn rejects_nonassociative_table_at_first_lex_triple() {
        // (1*0)*1 = 0*1 = 1 but 1*(0*1) = 1*1 = 0, and (1,0,1) precedes the
        // also-failing (1,1,1) lexicographically.
        let err = FiniteSemigroup::from_table(2, &[vec![0, 1], vec![0, 0]]).unwrap_err();
        assert_eq!(err, SemigroupError::NonAssociative { a: 1, b: 0, c: 1 });
    }

    #[test]
    fn rejects_out_of_range_entry() {
        let err = FiniteSemigroup::from_table(2, &[vec![0, 2], vec![1, 0]]).unwrap_err();
        assert_eq!(
            err,
            SemigroupError::OutOfRange {
                row: 0,
                col: 1,
                value: 2,
                order: 2
            }
        );
    }

    #[test]
    fn named_family_tables() {
        assert_eq!(named("rightzero:2").unwrap().flat_table(), &[0, 1, 0, 1]);
        assert_eq!(named("chain:2").unwrap().flat_table(), &[0, 0, 0, 1]);
        assert_eq!(
            named("cyclic:3").unwrap().flat_table(),
            &[0, 1, 2, 1, 2, 0, 2, 0, 1]
        );
        assert_eq!(named("trivial").unwrap().order(), 1);
        assert_eq!(named("null:2").unwrap().flat_table(), &[0, 0, 0, 0]);
    }

    #[test]
    fn named_rejects_bad_specs() {
        assert!(matches!(
            named("frobnicate:3"),
            Err(SemigroupError::UnknownFamily(_))
        ));
        assert!(matches!(
            named("cyclic:0"),
            Err(SemigroupError::BadFamilyParameter(_))
        ));
        assert!(matches!(
            named("cyclic:x"),
            Err(SemigroupError::BadFamilyParameter(_))
        ));
    }

    #[test]
    fn direct_product_componentwise() {
        let chain = named("chain:2").unwrap();
        let lz = named("leftzero:2").unwrap();
        let p = direct_product(&chain, &lz).unwrap();
        assert_eq!(p.order(), 4);
        // (i,j)*(k,l) = (min(i,k), j)
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        assert_eq!(p.product(i * 2 + j, k * 2 + l), i.min(k) * 2 + j);
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_factor_is_identity() {
        let t = named("trivial").unwrap();
        let rz = named("rightzero:3").unwrap();
        let p = direct_product(&t, &rz).unwrap();
        assert_eq!(p.flat_table(), rz.flat_table());
    }

    #[test]
    fn klein_four_is_a_group() {
        let c2 = named("cyclic:2").unwrap();
        let k4 = direct_product(&c2, &c2).unwrap();
        let flags = classify(&k4);
        assert!(flags.is_group);
        assert!(flags.is_commutative);
        // every element is its own inverse
        for a in k4.elements() {
            assert_eq!(k4.product(a, a), 0);
        }
    }

    #[test]
    fn direct_product_order_cap() {
        let big = named("cyclic:200").unwrap();
        let c2 = named("cyclic:2").unwrap();
        assert!(matches!(
            direct_product(&big, &c2),
            Err(SemigroupError::OrderTooLarge { order: 400, .. })
        ));
    }

    #[test]
    fn classify_flags() {
        let lz = named("leftzero:2").unwrap();
        let f = classify(&lz);
        assert!(f.is_left_zero && !f.is_right_zero && !f.is_group);
        assert_eq!(f.idempotents, vec![0, 1]);

        let c2 = named("cyclic:2").unwrap();
        let f = classify(&c2);
        assert!(f.is_group && f.is_commutative);
        assert_eq!(f.idempotents, vec![0]);

        let null = named("null:2").unwrap();
        let f = classify(&null);
        assert_eq!(f.idempotents, vec![0]);
        assert!(!f.is_group && !f.is_left_zero && !f.is_right_zero);
    }

    #[test]
    fn product_of_folds_left() {
        let c3 = named("cyclic:3").unwrap();
        assert_eq!(c3.product_of(&[1, 2, 2]), 2);
        assert_eq!(c3.product_of(&[2]), 2);
    }
}
