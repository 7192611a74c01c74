pub mod abgroup;
pub mod cohomology;
pub mod group;
pub mod linalg;
pub mod mackey;
pub mod reps;
pub mod ring;
pub mod slice;
