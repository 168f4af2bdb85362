pub mod algebra;
pub mod config;
pub mod error;
pub mod families;
pub mod field;
pub mod hom;
pub mod homology;
pub mod io;
pub mod matrix;
pub mod module;
pub mod morphism;
pub mod poly;
pub mod quiver;
pub mod raw;
pub mod strat;

pub use config::Settings;
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, Fp, PrimeField, Rat, Rationals, Scalar};
pub use matrix::{Matrix, Rref, Subspace};
pub use raw::RawAlgebra;
pub use algebra::{Arrow, AssocAlgebra, Normalized, PathWord};
pub use quiver::{compile_bqa, BoundQuiverAlgebra, Quiver, Relation};
pub use hom::{
    decompose, dim_hom, endomorphism_algebra, hom_basis, is_isomorphic, trace_submodule, EndAlgebra, HomSpace,
    IsoVerdict,
};
pub use module::{ModuleRep, Presentation, SubQuotient, Submodule};
pub use morphism::ModuleMorphism;
pub use homology::{
    codominant_dim, dominant_dim, dominant_dim_algebra, ext_dim, ext_dims, ext_space, global_dim, gorenstein_dim,
    injective_dim, is_gorenstein_projective, min_proj_resolution, proj_inj_dim, projective_dim, universal_extension,
    DimensionReport, ExtSpace, GorensteinReport, ProjResolution, UniversalExtension,
};
pub use families::{ExampleId, GendoData, JordanType};
pub use strat::{
    characteristic_tilting, classify, delta_multiplicities, find_stratifying_orders, in_filtration_category,
    invariant_isomorphic, ringel_dual, standard_family, stratification_check, ClassificationReport, Family,
    FiltrationVerdict, Flag, IdempotentOrder, StratVerdict, StratifiedData, TiltingData,
};
