pub mod algebra;
pub mod families;
pub mod roots;
pub mod verify;
pub mod irreducible;
pub mod report;
pub mod cli;
