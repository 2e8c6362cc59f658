pub mod exactlin;
pub mod fdalg;
pub mod fixtures;
pub mod homcore;
pub mod pathalg;
pub mod quiverdsl;
pub mod repmod;
pub mod twoterm;
pub mod cli;
