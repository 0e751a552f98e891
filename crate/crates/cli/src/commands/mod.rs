pub mod bell_state;
pub mod chsh_scan;
pub mod product_bound;
pub mod thermal_verify;
