//! Machine-readable run reports: one CSV row per (method, configuration),
//! emitted on stdout under a fixed header. Re-running with the same seed
//! reproduces every non-timing column bit-exactly.

use tlgrid::Metrics;

pub const HEADER: &str = "command,method,dataset,nx,ny,build_s,sort_s,exec_s,ops,throughput,\
coordinate_comparisons,pairs_tested,minijoins_executed,results_emitted,duplicates_eliminated,\
replicas,result_count,checksum";

pub struct RunReport {
    pub command: &'static str,
    pub method: String,
    pub dataset: String,
    pub nx: u32,
    pub ny: u32,
    pub build_s: f64,
    pub sort_s: f64,
    pub exec_s: f64,
    pub ops: u64,
    pub metrics: Metrics,
    /// Stored entries (originals plus replicas) across the indexes the
    /// method used.
    pub replicas: u64,
    pub result_count: u64,
    pub checksum: u64,
}

impl RunReport {
    pub fn throughput(&self) -> f64 {
        if self.exec_s > 0.0 {
            self.ops as f64 / self.exec_s
        } else {
            0.0
        }
    }

    pub fn emit(&self) {
        println!(
            "{},{},{},{},{},{:.6},{:.6},{:.6},{},{:.1},{},{},{},{},{},{},{},{:016x}",
            self.command,
            self.method,
            self.dataset,
            self.nx,
            self.ny,
            self.build_s,
            self.sort_s,
            self.exec_s,
            self.ops,
            self.throughput(),
            self.metrics.coordinate_comparisons,
            self.metrics.pairs_tested,
            self.metrics.minijoins_executed,
            self.metrics.results_emitted,
            self.metrics.duplicates_eliminated,
            self.replicas,
            self.result_count,
            self.checksum,
        );
    }
}

/// Aborts the run when methods disagree on the result checksum.
pub fn validate_checksums(rows: &[RunReport]) -> anyhow::Result<()> {
    if let Some(first) = rows.first() {
        for row in rows {
            if row.checksum != first.checksum {
                anyhow::bail!(
                    "result checksum mismatch: {} reports {:016x}, {} reports {:016x}",
                    first.method,
                    first.checksum,
                    row.method,
                    row.checksum
                );
            }
        }
    }
    Ok(())
}
