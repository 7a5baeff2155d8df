pub mod asm;
pub mod cli;
pub mod cyclo;
pub mod error;
pub mod mpoly;
pub mod linkpat;
pub mod solver;
pub mod tmatrix;
pub mod report;
pub mod schur;
pub mod sample;
pub mod groundstate;
