//! The surface catalogue, cell counts, the two rewriting moves and gluing.
//!
//! ```bash
//! cargo run -p fakeflat --example surfaces_and_moves
//! ```

use fakeflat::fixtures;
use fakeflat::surface::SurfaceComplex;

fn main() -> fakeflat::Result<()> {
    println!("surface    v  e  m  n  χ");
    for s in fixtures::all_surfaces() {
        let r = s.validate()?;
        println!(
            "{:-9} {:2} {:2} {:2} {:2} {:2}",
            s.name(),
            r.internal_vertices,
            r.internal_edges,
            r.out_circles,
            r.in_circles,
            r.euler_characteristic
        );
    }

    // move I: split the sphere's cut edge, then merge the new vertex back
    let sphere = SurfaceComplex::sphere();
    let split = sphere.move_i_split(0)?;
    let r = split.validate()?;
    println!(
        "\nsphere after move I: v = {}, e = {}",
        r.internal_vertices, r.internal_edges
    );
    let back = split.move_i_merge(split.mergeable_vertices()[0])?;
    println!(
        "merged back equals the sphere up to relabelling: {}",
        back.same_up_to_relabelling(&sphere)
    );

    // move II: cut the torus face along a chord, then undo it
    let torus = SurfaceComplex::torus();
    let split = torus.move_ii_split(0, 0, 2)?;
    println!(
        "torus after move II: {} faces, {} internal edges",
        split.validate()?.faces,
        split.validate()?.internal_edges
    );
    let back = split.move_ii_merge(split.mergeable_edges()[0])?;
    println!(
        "merged back equals the torus up to relabelling: {}",
        back.same_up_to_relabelling(&torus)
    );

    // gluing: out circles of the first meet in circles of the second
    let cyl = SurfaceComplex::cylinder();
    let glued = SurfaceComplex::glue(&cyl, &cyl)?;
    let r = glued.validate()?;
    println!(
        "\ncylinder∘cylinder: v = {}, e = {}, χ = {} (still a cylinder)",
        r.internal_vertices, r.internal_edges, r.euler_characteristic
    );
    let closed = SurfaceComplex::glue(&SurfaceComplex::disk_out(), &SurfaceComplex::disk_in())?;
    println!(
        "disk_in∘disk_out: χ = {} (a sphere)",
        closed.validate()?.euler_characteristic
    );
    Ok(())
}
