#![allow(dead_code)]

pub mod dense;
pub mod graph_oracle;
pub mod necklace_oracle;
