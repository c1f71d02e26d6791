//! Instances shared by the benchmarks.

use algdep_core::{mk_field, Instance};

pub fn parse(text: &str) -> Instance {
    Instance::parse(text).expect("benchmark instance parses")
}

/// `{x, y, x^2 + y^2}` over `F_7`.
pub fn circle() -> Instance {
    parse(
        "field 7 1\nnvars 2\n\
         circuit f1\n1 var 1\noutput 1\n\
         circuit f2\n1 var 2\noutput 1\n\
         circuit f3\n1 var 1\n2 var 2\n3 mul 1 1\n4 mul 2 2\n5 add 3 4\noutput 5\n",
    )
}

/// `{x^2 y, x y^2}` over `F_q`.
pub fn monomial_pair(p: u64, e: usize) -> Instance {
    let f = mk_field(p, e).expect("field");
    let text = "nvars 2\n\
                circuit f1\n1 var 1\n2 var 2\n3 mul 1 1\n4 mul 3 2\noutput 4\n\
                circuit f2\n1 var 1\n2 var 2\n3 mul 2 2\n4 mul 1 3\noutput 4\n";
    parse(&format!("field {} {}\n{text}", f.p(), f.e()))
}
