//! Instance generators: seeded random families and bin-packing transforms.

mod bpp;
mod random;

pub use bpp::{
    ffd_bpp, gen_bpp, gen_certified_bpp, parse_bpp, parse_bpp_instance, parse_bpp_solution,
    transform_bpp, transform_bpp_detailed, write_bpp_instance, write_bpp_solution, BppInstance,
    BppSolution, BppTransform,
};
pub use random::gen_random;
