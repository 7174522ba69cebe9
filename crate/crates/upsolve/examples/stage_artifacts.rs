//! The file formats each pipeline stage exchanges: the pseudo-Boolean OPB
//! dump, the WCNF dump and the two variable-mapping sidecars.
//!
//!     cargo run -p upsolve --example stage_artifacts

use upsolve::cudf::{parse_universe, Criterion};
use upsolve::pb::opb::{render_opb, render_opb_mapping};
use upsolve::pb::encode;
use upsolve::wcnf::io::{render_wcnf, render_wcnf_mapping};
use upsolve::wcnf::pb_to_wcnf;

const UNIVERSE: &str = "\
package: p
version: 1
conflicts: p
installed: true

package: p
version: 2
conflicts: p

package: q
version: 1
conflicts: p (= 2)
installed: true

request:
install: p (= 2)
";

fn main() {
    let (universe, request) = parse_universe(UNIVERSE).expect("built-in universe parses");
    let problem = encode(&universe, &request, Criterion::Trendy);
    let wcnf = pb_to_wcnf(&problem).expect("encoder output is well-shaped");

    println!("---- instance.opb ----");
    print!("{}", render_opb(&problem));
    println!("---- instance.opb.map ----");
    print!("{}", render_opb_mapping(&problem));
    println!("---- instance.wcnf ----");
    print!("{}", render_wcnf(&wcnf));
    println!("---- instance.wcnf.map ----");
    print!("{}", render_wcnf_mapping(&wcnf));
}
