use std::fmt::Write as _;

use serde::Serialize;

use cmfactor::numeric::float::{decimal_digits, format_sci};
use cmfactor::{Status, VerificationReport};

#[derive(Serialize)]
pub struct Factor {
    pub p: u64,
    pub e: u32,
}

/// Schema-stable JSON form of a verification report. Floats are decimal
/// strings carrying ⌊prec·log₁₀2⌋ significant digits.
#[derive(Serialize)]
pub struct ReportJson {
    pub d1: i64,
    pub d2: i64,
    pub prec: usize,
    pub lhs_log: String,
    pub rhs_log: String,
    pub residual: String,
    pub product_integer: String,
    pub factorization: Vec<Factor>,
    pub rhs: String,
    pub factor_match: bool,
    pub resultant_match: Option<bool>,
    pub status: String,
    pub detail: String,
}

impl From<&VerificationReport> for ReportJson {
    fn from(r: &VerificationReport) -> Self {
        let digits = decimal_digits(r.prec);
        let (status, detail) = match &r.status {
            Status::Ok => ("ok".to_string(), String::new()),
            Status::Disagree(m) => ("disagree".to_string(), m.clone()),
        };
        Self {
            d1: r.d1,
            d2: r.d2,
            prec: r.prec,
            lhs_log: format_sci(&r.lhs_log, digits),
            rhs_log: format_sci(&r.rhs_log, digits),
            residual: format_sci(&r.residual, digits.min(20)),
            product_integer: r.product_integer.to_string(),
            factorization: r.factorization.iter().map(|(p, e)| Factor { p: *p, e: *e }).collect(),
            rhs: r.rhs.to_string(),
            factor_match: r.factor_match,
            resultant_match: r.oracle_match,
            status,
            detail,
        }
    }
}

pub fn factorization_text(r: &VerificationReport) -> String {
    let mut s = String::new();
    if r.product_integer.to_string().starts_with('-') {
        s.push('-');
    }
    let parts: Vec<String> = r.factorization.iter().map(|(p, e)| format!("{p}^{e}")).collect();
    s.push_str(if parts.is_empty() { "1" } else { "" });
    s.push_str(&parts.join(" * "));
    s
}

pub fn report_text(r: &VerificationReport) -> String {
    let digits = decimal_digits(r.prec).min(40);
    let mut s = String::new();
    let _ = writeln!(s, "d1 = {}, d2 = {} ({} bits)", r.d1, r.d2, r.prec);
    let _ = writeln!(s, "product   {}", r.product_integer);
    let _ = writeln!(s, "factored  {}", factorization_text(r));
    let _ = writeln!(s, "rhs       {}", r.rhs);
    let _ = writeln!(s, "lhs log   {}", format_sci(&r.lhs_log, digits));
    let _ = writeln!(s, "rhs log   {}", format_sci(&r.rhs_log, digits));
    let _ = writeln!(s, "residual  {}", format_sci(&r.residual, 6));
    if let Some(m) = r.oracle_match {
        let _ = writeln!(s, "resultant {}", if m { "match" } else { "MISMATCH" });
    }
    let _ = writeln!(s, "status    {}", r.status);
    s
}
