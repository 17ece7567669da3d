//! Support bodies end to end: build a few seed bodies, measure their
//! gauges, apply one Minkowski and one orthogonal symmetrization, and
//! round-trip a body through the plain-text serialization format.
//!
//! Run with: cargo run --example body_roundtrip

use std::sync::Arc;

use symlab::bodies::{from_text, to_text, BodyRecord, PolygonBody, SupportBody};
use symlab::geom::{sample_haar_basis, RngStream, SphereGrid, UnitVector};

fn main() {
    let grid = Arc::new(SphereGrid::angular(2048).unwrap());

    for body in [
        SupportBody::ball(2, 1.0).unwrap().labeled("disk"),
        SupportBody::cube(2, 1.0).unwrap(),
        SupportBody::segment(vec![1.0, 0.0]).unwrap().labeled("segment"),
    ] {
        let g = body.ball_gauge(&grid).unwrap();
        println!(
            "{:<8} r_in {:.4}  r_out {:.4}  M* {:.4}  eps {:.4}",
            body.label().unwrap_or(body.kind()),
            g.r_in,
            g.r_out,
            g.mean_width_half,
            g.eps_distance
        );
    }

    // one Minkowski symmetrization halves the segment's support at e_1
    let seg = SupportBody::segment(vec![1.0, 0.0]).unwrap();
    let u = UnitVector::normalize(&[1.0, 1.0]).unwrap();
    let after = seg.minkowski_symmetrize(&u).unwrap();
    println!(
        "\nsegment after one Minkowski step: h(e_1) = {}",
        after.support_eval(&UnitVector::axis(2, 0)).unwrap()
    );

    // a full orthogonal symmetrization turns it into a grid-sampled body
    let mut rng = RngStream::new(11);
    let basis = sample_haar_basis(&mut rng, 2).unwrap();
    let symmetrized = seg.orthogonal_symmetrize(&basis, &grid).unwrap();
    let g = symmetrized.ball_gauge(&grid).unwrap();
    println!(
        "after a full round: kind {}, eps vs M*: {:.4} (mean width still {:.4})",
        symmetrized.kind(),
        g.eps_distance,
        g.mean_width_half
    );

    // plain-text round trip of a polygon
    let poly = PolygonBody::random_convex(&mut rng, 8, 1.2).unwrap();
    let text = to_text(&BodyRecord::Polygon(poly.clone())).unwrap();
    println!("\nserialized polygon:\n{text}");
    let BodyRecord::Polygon(back) = from_text(&text).unwrap() else {
        unreachable!()
    };
    assert_eq!(poly.vertices(), back.vertices());
    println!("round trip reproduced all {} vertices exactly", back.vertex_count());
}
