pub mod bounds;
pub mod leakage;
pub mod ramp;
pub mod simulate;
pub mod verify;
