pub mod center;
pub mod cli;
pub mod fusion;
pub mod groups;
pub mod obstruct;
pub mod tube;
