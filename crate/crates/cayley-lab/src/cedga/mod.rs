//! Differentials and models: invariant-form calculus from structure
//! constants, the SU(3)-product 4-form ansatz, the Lee-form solver, the
//! torsion-class classifier and the relation scanner.

mod bundled;
mod classify;
mod lie;
mod product;
mod scan;
mod su3;

pub use bundled::{bundled_example_s3s3, s3s3_report, S3Report};
pub use classify::{
    classify, ClassificationReport, DifferentialProvider, Evidence, FernandezClass,
};
pub use lie::{parse_lie, LieAlgebra};
pub use product::{
    build_product_phi, d_product_phi, distinct_conventions, reconcile_cayley, Angle, Convention,
    DiffCoeffs, ProductModel, ReconcileReport, Relabel,
};
pub use scan::{
    solve_lee, theorem_scan, ConventionScan, FloatSweepConfig, FloatSweepReport, GridSpec,
    ScanPoint, ScanReport, ThetaMode,
};
pub use su3::{nearly_kahler_check, NearlyKahlerResult, SU3Data};
