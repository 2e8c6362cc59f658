#![allow(dead_code)]

use silting_core::cli::spec;
use silting_core::pathalg::{build_algebra, PathAlgebra, DEFAULT_LENGTH_CAP};
use silting_core::quiverdsl::parse_algebra;
use silting_core::repmod::Representation;
use silting_core::twoterm::TwoTermComplex;

pub fn algebra(quiver: &str) -> PathAlgebra {
    build_algebra(&parse_algebra(quiver).expect("fixture parses"), DEFAULT_LENGTH_CAP).expect("finite dimensional")
}

pub fn complex(a: &PathAlgebra, text: &str) -> TwoTermComplex {
    spec::total_complex(&spec::parse_complex(text, a).expect("complex parses"))
}

pub fn module(a: &PathAlgebra, text: &str) -> Representation {
    spec::parse_module(text, a).expect("module parses")
}

pub fn load(quiver: &str, complex_text: &str) -> (PathAlgebra, TwoTermComplex) {
    let a = algebra(quiver);
    let p = complex(&a, complex_text);
    (a, p)
}
