pub mod exactfield;
pub mod expr;
pub mod generators;
pub mod hallcore;
pub mod kronrep;
pub mod symfun;
pub mod verify;
