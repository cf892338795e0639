//! Schema extraction, hierarchy closures, module composition and
//! intersection-axiom typing.

mod closure;
mod intersection;
mod modules;
mod schema;

pub use closure::Closure;
pub use intersection::apply_intersection_axioms;
pub use modules::{
    module_order, resolve_modules, resolve_modules_with, ModuleError, ModuleManifest, ModuleRegistry, MODULE_PATH_ENV,
};
pub use schema::{extract_schema, IntersectionAxiom, Schema, SchemaBuilder, SchemaError};

/// Reflexive-transitive `rdfs:subClassOf` closure of `schema`.
pub fn subclass_closure(schema: &Schema) -> &Closure {
    schema.class_closure()
}
