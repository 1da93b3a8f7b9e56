//! Singular loci of hypersurfaces, node certificates and local invariants of
//! isolated germs.

mod fibers;
mod hypersurface;
mod local;

pub use fibers::{
    count_cuspidal_fibers, fiber_product_singularities, CuspidalFibers, FiberProductSingularities, WEIERSTRASS_DEGREE,
};
pub use hypersurface::{
    analyze_singular_locus, determinant_modulo, hessian, Ambient, AnalysisOptions, ChartReport, Hypersurface,
    SingularityReport,
};
pub use local::{LocalInvariants, LocalModel};
