pub mod exact;
pub mod partitions;
pub mod weights;
pub mod characters;
pub mod freudenthal;
pub mod formulas;
