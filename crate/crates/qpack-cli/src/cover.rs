use crate::CliError;
use clap::Args;
use qforbidden::catalog::{row_entry, table_row};
use qorders::catalog::{dim3_entry, parse_catalog, table1_entry, table1_rows, table2, table2_entry, CatalogEntry};
use std::path::PathBuf;

/// Selects one covering datum: a dim-3 ring, a Table 1 or Table 2 order, a
/// Table 4/5 row at n, or an entry of an orders.json catalog.
#[derive(Args, Clone, Debug, Default)]
pub struct CoverArgs {
    #[arg(long)]
    pub dim: Option<u8>,
    /// dim 3: the ring Z[sqrt(-n)] or its maximal order; dim 4: j^2 = n; with --row: the row parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
    /// i^2 (dims 4, 5).
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<i64>,
    /// j^2 (dim 5).
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<i64>,
    /// Which of several Table 1 orders for the same algebra.
    #[arg(long, default_value_t = 0)]
    pub variant: usize,
    /// Table 4/5 row id such as 4.1 or 5.10 (needs --n).
    #[arg(long)]
    pub row: Option<String>,
    /// orders.json produced by classify, with --index.
    #[arg(long)]
    pub catalog: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub index: usize,
}

fn usage(s: impl Into<String>) -> CliError {
    CliError::Usage(s.into())
}

impl CoverArgs {
    pub fn resolve(&self) -> Result<CatalogEntry, CliError> {
        if let Some(p) = &self.catalog {
            let s = std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            let recs = parse_catalog(&s).map_err(|e| usage(e.to_string()))?;
            let r = recs.get(self.index).ok_or_else(|| usage(format!("catalog has {} entries", recs.len())))?;
            return r.to_entry().map_err(|e| usage(e.to_string()));
        }
        if let Some(id) = &self.row {
            let row = table_row(id).ok_or_else(|| usage(format!("unknown table row {id}")))?;
            let n = self.n.ok_or_else(|| usage("--row needs --n"))?;
            return row_entry(&row, n).map_err(|e| usage(format!("row {id} n={n}: {e:?}")));
        }
        match self.dim {
            Some(3) => {
                let n = self.n.ok_or_else(|| usage("dim 3 needs --n"))?;
                dim3_entry(n).map_err(|e| usage(e.to_string()))
            }
            Some(4) => {
                let (a, n) = (self.a.ok_or_else(|| usage("dim 4 needs --a"))?, self.n.ok_or_else(|| usage("dim 4 needs --n"))?);
                let rows = table1_rows(a, n);
                let row = rows.get(self.variant).ok_or_else(|| usage(format!("no Table 1 order #{} for ({a},{n})", self.variant)))?;
                table1_entry(row).map_err(|e| usage(e.to_string()))
            }
            Some(5) => {
                let (a, b) = (self.a.ok_or_else(|| usage("dim 5 needs --a"))?, self.b.ok_or_else(|| usage("dim 5 needs --b"))?);
                let row = table2().into_iter().find(|r| r.a == a && r.b == b).ok_or_else(|| usage(format!("no Table 2 order in ({a},{b})")))?;
                table2_entry(&row).map_err(|e| usage(e.to_string()))
            }
            Some(d) => Err(usage(format!("dim {d}"))),
            None => Err(usage("select a cover with --dim, --row or --catalog")),
        }
    }
}
