//! Exact formal series for `Z` and `ln Z`.

mod assemble;
mod export;
mod flp;
mod gauss;
mod triseries;
mod wick;

pub use assemble::{
    assemble_z, assemble_z_with, connected_assemble, connected_assemble_with, order_prefactor, pairing_coefficient,
    tadpole_free_assemble, Action, Convention,
};
pub use export::{bigint_json, ConstJson, ExactParts, FOfGJson, FlpEntryJson, FlpJson, PolyTermJson, SeriesJson, TermJson};
pub use flp::{
    double_limit, double_limit_check, extract_flp, f_of_g, free_log_constants, full_log_series, printed_log_constants,
    ConstTerm, FOfG, FlpTable, FullLogSeries, GPoly, LogSymbol,
};
pub use gauss::{fmt_rational, GaussRational};
pub use triseries::{Term, TriSeries};
pub use wick::{wick_ordered_assemble, wick_ordered_assemble_with};
