use std::fmt::Write as _;

use crate::config::Format;
use crate::suite::Row;

pub const CSV_HEADER: [&str; 13] = [
    "section",
    "id",
    "params",
    "status",
    "witness",
    "m",
    "n",
    "count",
    "period_detected",
    "bound_lower",
    "bound_upper",
    "max_modulus",
    "min_modulus",
];

const SECTIONS: [&str; 5] = ["polynomial", "identity", "certificate", "roots", "real-roots"];

pub fn render(rows: &[Row], format: Format) -> anyhow::Result<String> {
    Ok(match format {
        Format::Text => text(rows),
        Format::Json => serde_json::to_string_pretty(rows)? + "\n",
        Format::Csv => csv(rows)?,
    })
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(String::new, |x| x.to_string())
}

fn text_line(row: &Row, out: &mut String) {
    let _ = match row {
        Row::Polynomial(p) => writeln!(out, "{}", p.poly),
        Row::Identity(r) => {
            let _ = write!(out, "{:<18} {} {}", r.status.label(), r.id, r.params_string());
            if let Some(w) = &r.witness {
                let _ = write!(out, " | {w}");
            }
            if let Some(i) = &r.info {
                let _ = write!(out, " | {i}");
            }
            writeln!(out)
        }
        Row::Certificate(c) => {
            let _ = write!(out, "{:<18} {} (1-z)^{}", c.status.label(), c.object_id, c.one_minus_z_mult);
            if let Some((e, v)) = &c.first_negative {
                let _ = write!(out, " | first negative z^{e}: {v}");
            }
            if let Some(i) = &c.info {
                let _ = write!(out, " | {i}");
            }
            writeln!(out)
        }
        Row::Roots(r) => {
            let _ = write!(out, "{:<18} {} {}", r.report.status.label(), r.report.id, r.report.params_string());
            if let Some(w) = &r.report.witness {
                let _ = write!(out, " | {w}");
            }
            if let Some(rr) = &r.root_report {
                let s = &rr.solution;
                let _ = write!(
                    out,
                    " | degree={} prec={} |z| in [{}, {}] bounds ({}, {}) real={} clusters={}",
                    s.degree,
                    s.precision_used,
                    s.min_modulus,
                    s.max_modulus,
                    opt(rr.lower_bound).as_str(),
                    opt(rr.upper_bound),
                    s.real_roots.len(),
                    s.clusters.len()
                );
            }
            writeln!(out)
        }
        Row::RealRoots(r) => writeln!(
            out,
            "{:<18} m={} n={} count={} floor(n/m)={} C(n,m) odd={} period={}",
            r.status.label(),
            r.m,
            r.n,
            r.count.map_or("-".to_string(), |c| c.to_string()),
            r.floor_n_over_m,
            r.leading_odd,
            r.period_detected.map_or("-".to_string(), |p| p.to_string())
        ),
    };
}

fn text(rows: &[Row]) -> String {
    let mut out = String::new();
    let present: Vec<&str> = SECTIONS.iter().copied().filter(|s| rows.iter().any(|r| r.section() == *s)).collect();
    for section in &present {
        if present.len() > 1 {
            let _ = writeln!(out, "== {section} ==");
        }
        for row in rows.iter().filter(|r| r.section() == *section) {
            text_line(row, &mut out);
        }
    }
    let statuses: Vec<_> = rows.iter().filter_map(Row::status).collect();
    if !statuses.is_empty() {
        let count = |p: fn(&binsparse::Status) -> bool| statuses.iter().filter(|s| p(s)).count();
        let _ = writeln!(
            out,
            "-- {} checks: {} pass, {} fail, {} refuted, {} other",
            statuses.len(),
            count(|s| s.is_pass()),
            count(|s| *s == binsparse::Status::Fail),
            count(|s| *s == binsparse::Status::Refuted),
            count(|s| !s.is_pass() && !matches!(s, binsparse::Status::Fail | binsparse::Status::Refuted)),
        );
    }
    out
}

fn csv(rows: &[Row]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for row in rows {
        let section = row.section().to_string();
        let record: [String; 13] = match row {
            Row::Polynomial(p) => {
                let m = p.rule.strip_prefix("binom:").unwrap_or("").to_string();
                [section, p.rule.clone(), format!("n={}", p.n), String::new(), p.poly.to_string(), m, p.n.to_string(),
                 String::new(), String::new(), String::new(), String::new(), String::new(), String::new()]
            }
            Row::Identity(r) => [
                section,
                r.id.clone(),
                r.params_string(),
                r.status.label().to_string(),
                opt(r.witness.as_ref()),
                r.params.get("m").cloned().unwrap_or_default(),
                r.params.get("n").cloned().unwrap_or_default(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
            ],
            Row::Certificate(c) => [
                section,
                c.object_id.clone(),
                format!("mult={}", c.one_minus_z_mult),
                c.status.label().to_string(),
                opt(c.first_negative.as_ref().map(|(e, v)| format!("at z^{e}: {v} vs >= 0"))),
                "2".to_string(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
            ],
            Row::Roots(r) => {
                let rr = r.root_report.as_ref();
                let s = rr.map(|x| &x.solution);
                [
                    section,
                    r.report.id.clone(),
                    r.report.params_string(),
                    r.report.status.label().to_string(),
                    opt(r.report.witness.as_ref()),
                    r.report.params.get("m").cloned().unwrap_or_default(),
                    r.report.params.get("n").cloned().unwrap_or_default(),
                    opt(s.map(|s| s.real_roots.len())),
                    String::new(),
                    opt(rr.and_then(|x| x.lower_bound)),
                    opt(rr.and_then(|x| x.upper_bound)),
                    opt(s.map(|s| s.max_modulus)),
                    opt(s.map(|s| s.min_modulus)),
                ]
            }
            Row::RealRoots(r) => [
                section,
                "real-root-count".to_string(),
                format!("m={} n={} floor={}", r.m, r.n, r.floor_n_over_m),
                r.status.label().to_string(),
                String::new(),
                r.m.to_string(),
                r.n.to_string(),
                opt(r.count),
                opt(r.period_detected),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
            ],
        };
        w.write_record(&record)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use binsparse::{IdentityReport, Status, Witness};

    #[test]
    fn empty_csv_is_header_only() {
        assert_eq!(render(&[], Format::Csv).unwrap(), CSV_HEADER.join(",") + "\n");
        assert_eq!(render(&[], Format::Json).unwrap(), "[]\n");
        assert_eq!(render(&[], Format::Text).unwrap(), "");
    }

    #[test]
    fn single_report_json() {
        let r = IdentityReport::new("family.endpoint-values").param("m", 2).param("n", 3);
        let out = render(&[Row::Identity(r)], Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let arr = v.as_array().unwrap();
        assert_eq!(arr.len(), 1);
        assert_eq!(arr[0]["section"], "identity");
        assert_eq!(arr[0]["id"], "family.endpoint-values");
        assert_eq!(arr[0]["pass"], true);
        assert_eq!(arr[0]["params"]["n"], "3");
        assert!(arr[0]["witness"].is_null());
    }

    #[test]
    fn csv_quotes_witnesses() {
        let r = IdentityReport::new("a").param("m", 2).fail(Witness::new("z^3", "1, 2", 3));
        let out = render(&[Row::Identity(r)], Format::Csv).unwrap();
        let line = out.lines().nth(1).unwrap();
        assert_eq!(line, "identity,a,m=2,FAIL,\"at z^3: 1, 2 vs 3\",2,,,,,,,");
    }

    #[test]
    fn text_labels_sections_only_when_mixed() {
        let id = Row::Identity(IdentityReport::new("a").verdict(Status::Refuted, Witness::new("n=3", 2, 1)));
        let one = render(std::slice::from_ref(&id), Format::Text).unwrap();
        assert!(!one.contains("=="));
        let cert = Row::Certificate(binsparse::concavity::ConcavityCertificate::for_poly(
            "L^1 f_2(3)",
            &binsparse::SparsePoly::constant(1),
            0,
        ));
        let mixed = render(&[cert, id], Format::Text).unwrap();
        let ident = mixed.find("== identity ==").unwrap();
        let certs = mixed.find("== certificate ==").unwrap();
        assert!(ident < certs);
    }
}
