use rayon::prelude::*;
use serde_json::{json, Value};

use super::product::structure_constants;
use crate::error::Result;
use crate::perm::{all_permutations, Permutation};
use crate::poly::{CoefficientTable, Coeff, TableKey, Theory};
use crate::poly::coeff_to_json;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// Sign differs from `(−1)^{degree − base}` (or is negative in cohomology).
    WrongSign,
    /// Nonzero entry below the base degree.
    BelowBase,
    /// Cohomology entry away from the base degree.
    OffDegree,
}

impl ViolationKind {
    fn name(self) -> &'static str {
        match self {
            ViolationKind::WrongSign => "wrong-sign",
            ViolationKind::BelowBase => "below-base",
            ViolationKind::OffDegree => "off-degree",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SignViolation {
    pub key: Value,
    pub degree: i64,
    pub coefficient: Coeff,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug)]
pub struct SignReport {
    pub theory: Theory,
    pub base: i64,
    pub checked: usize,
    pub violations: Vec<SignViolation>,
}

impl SignReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: SignReport) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }

    pub fn to_json(&self) -> Value {
        json!({
            "theory": self.theory.name(),
            "base": self.base,
            "checked": self.checked,
            "violations": self.violations.iter().map(|v| json!({
                "key": v.key,
                "degree": v.degree,
                "coefficient": coeff_to_json(&v.coefficient),
                "kind": v.kind.name(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Checks the sign law of a table whose entries live in degrees `>= base`:
/// nonnegative and concentrated in degree `base` for cohomology, sign
/// `(−1)^{degree − base}` for K-theory.
pub fn sign_audit<K: TableKey>(table: &CoefficientTable<K>, base: i64) -> SignReport {
    let mut violations = Vec::new();
    for (key, c) in table.iter() {
        let degree = key.degree();
        let kind = if degree < base {
            Some(ViolationKind::BelowBase)
        } else {
            match table.theory {
                Theory::Cohomology if degree != base => Some(ViolationKind::OffDegree),
                Theory::Cohomology => (c.sign() == dashu_int::Sign::Negative).then_some(ViolationKind::WrongSign),
                Theory::KTheory => {
                    let negative = c.sign() == dashu_int::Sign::Negative;
                    (negative != ((degree - base) % 2 == 1)).then_some(ViolationKind::WrongSign)
                }
            }
        };
        if let Some(kind) = kind {
            violations.push(SignViolation {
                key: key.to_json().1,
                degree,
                coefficient: c.clone(),
                kind,
            });
        }
    }
    SignReport {
        theory: table.theory,
        base,
        checked: table.len(),
        violations,
    }
}

/// Audits every product `𝔊_u·𝔊_v` with `u, v ∈ S_n`, each against base
/// `ℓ(u) + ℓ(v)`. Violation keys record `u`, `v` and `w`.
pub fn product_sign_audit(n: usize, theory: Theory) -> Result<SignReport> {
    let perms = all_permutations(n);
    let pairs: Vec<(&Permutation, &Permutation)> =
        perms.iter().flat_map(|u| perms.iter().map(move |v| (u, v))).collect();
    let reports = pairs
        .par_iter()
        .map(|(u, v)| {
            let table = structure_constants(u, v, theory, None)?.table;
            let mut report = sign_audit(&table, (u.length() + v.length()) as i64);
            for violation in &mut report.violations {
                violation.key = json!({ "u": u, "v": v, "w": violation.key });
            }
            Ok(report)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total = SignReport {
        theory,
        base: 0,
        checked: 0,
        violations: Vec::new(),
    };
    for r in reports {
        total.merge(r);
    }
    Ok(total)
}
