pub mod closedform;
pub mod conditions;
pub mod exact;
pub mod families;
pub mod harness;
pub mod identities;
pub mod series;
