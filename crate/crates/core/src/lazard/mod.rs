//! The truncated Lazard ring: presentation, normal forms, projective-space
//! classes, and specializations.

mod mishchenko;
mod morphism;
mod presentation;

pub use mishchenko::{mishchenko_elements, MishchenkoCache, Mode};
pub use morphism::RingMorphism;
pub use presentation::{
    build_universal_fgl, generator_name, parse_generator_name, Component, GradedElement, Generator,
    LazardPresentation, SCHEMA,
};
