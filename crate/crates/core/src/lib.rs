pub mod geometry;
pub mod world;
pub mod lattice;
pub mod snapper;
pub mod validity;
pub mod costing;
pub mod planner;
pub mod wiggler;
pub mod toolkit;
