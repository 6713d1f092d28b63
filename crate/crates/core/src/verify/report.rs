use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

/// Outcome of one disc-sampled check: the worst margin and where it occurred.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub check: String,
    pub min_margin: f64,
    pub argmin: Complex64,
    pub passed: bool,
    pub samples: usize,
    pub tolerance: f64,
    pub caveat: Option<String>,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    check: &'a str,
    min_margin: f64,
    argmin: [f64; 2],
    passed: bool,
    samples: usize,
    tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    caveat: Option<&'a str>,
}

impl Serialize for VerificationReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ReportJson {
            check: &self.check,
            min_margin: self.min_margin,
            argmin: [self.argmin.re, self.argmin.im],
            passed: self.passed,
            samples: self.samples,
            tolerance: self.tolerance,
            caveat: self.caveat.as_deref(),
        }
        .serialize(s)
    }
}

/// Per-point margins for CSV export.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginTable {
    pub points: Vec<Complex64>,
    pub columns: Vec<(String, Vec<f64>)>,
}

impl MarginTable {
    /// Header `re,im,<check>_margin,...`, one row per grid point.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["re".to_string(), "im".to_string()];
        header.extend(
            self.columns
                .iter()
                .map(|(name, _)| format!("{name}_margin")),
        );
        w.write_record(&header)?;
        for (i, z) in self.points.iter().enumerate() {
            let mut row = vec![z.re.to_string(), z.im.to_string()];
            row.extend(self.columns.iter().map(|(_, col)| col[i].to_string()));
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}
