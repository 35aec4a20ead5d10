pub mod algebra;
pub mod analysis;
pub mod bracket;
pub mod diagram;
pub mod surface;
pub mod tangle;
pub mod unionfind;
