//! Affine cross-sections: scale each extreme ray onto the slice where the
//! functional takes value 1, report rays the slice misses as unbounded
//! directions, and, when the section is two-dimensional, give exact plane
//! coordinates ordered cyclically around the centroid.

use crate::output::{json_int, vectors_json};
use crate::CliError;
use cones::linalg::{dot, kernel_basis};
use cones::{in_linear_span, Int, RationalCone};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use stability::StabilityCone;

pub struct Plane {
    pub basis: Vec<Vec<Int>>,
    /// Exact plane coordinates of each vertex, relative to the centroid.
    pub coords: Vec<(BigRational, BigRational)>,
}

pub struct Section {
    pub functional: Vec<Int>,
    /// Scaled rays on the slice; cyclic polygon order when a plane exists,
    /// canonical ray order otherwise.
    pub vertices: Vec<Vec<BigRational>>,
    /// Directions of the cone the slice never reaches: rays with negative
    /// value and lineality generators (which have value zero).
    pub unbounded: Vec<Vec<Int>>,
    pub centroid: Vec<BigRational>,
    pub plane: Option<Plane>,
}

pub fn cross_section(
    cone: &RationalCone,
    f: &[Int],
    basis: Option<Vec<Vec<Int>>>,
) -> Result<Section, CliError> {
    let c = cone.canonical();
    let mut unbounded: Vec<Vec<Int>> = Vec::new();
    for l in c.lineality() {
        if !dot(f, l).is_zero() {
            return Err(CliError::Domain(
                "functional must vanish on the lineality space; try --support".into(),
            ));
        }
        unbounded.push(l.clone());
    }
    let mut vertices: Vec<Vec<BigRational>> = Vec::new();
    for r in c.rays() {
        let t = dot(f, r);
        if t.is_zero() {
            return Err(CliError::Domain(format!(
                "slice is not transverse: the functional annihilates the ray {r:?}"
            )));
        }
        if t.is_negative() {
            unbounded.push(r.clone());
        } else {
            vertices
                .push(r.iter().map(|x| BigRational::new(x.clone(), t.clone())).collect());
        }
    }
    if vertices.is_empty() {
        return Err(CliError::Domain(
            "the slice misses the cone: no ray has positive value".into(),
        ));
    }
    let dim = c.ambient_dim();
    let count = BigRational::from_integer(Int::from(vertices.len() as i64));
    let centroid: Vec<BigRational> = (0..dim)
        .map(|i| vertices.iter().map(|v| &v[i]).sum::<BigRational>() / &count)
        .collect();

    // Linear directions of the section's span: the functional's kernel cut
    // to the cone's span.
    let plane_basis = match basis {
        Some(b) => {
            for v in &b {
                if !dot(f, v).is_zero() {
                    return Err(CliError::Usage(
                        "basis vectors must be annihilated by the functional".into(),
                    ));
                }
                if !in_linear_span(&c, v) {
                    return Err(CliError::Usage(
                        "basis vectors must lie in the cone's linear span".into(),
                    ));
                }
            }
            b
        }
        None => {
            let mut rows = vec![f.to_vec()];
            rows.extend(c.equalities().iter().cloned());
            kernel_basis(&rows, dim)
        }
    };
    let plane = if plane_basis.len() == 2 {
        let coords = plane_coordinates(&vertices, &centroid, &plane_basis)?;
        Some(Plane { basis: plane_basis, coords })
    } else {
        None
    };

    let mut section = Section { functional: f.to_vec(), vertices, unbounded, centroid, plane };
    if let Some(plane) = &mut section.plane {
        let order = polygon_order(&section.vertices, &plane.coords);
        section.vertices = order.iter().map(|&i| section.vertices[i].clone()).collect();
        plane.coords = order.iter().map(|&i| plane.coords[i].clone()).collect();
    }
    Ok(section)
}

/// Exact coordinates of each vertex relative to the centroid in the plane
/// basis, via the 2×2 Gram system.
fn plane_coordinates(
    vertices: &[Vec<BigRational>],
    centroid: &[BigRational],
    basis: &[Vec<Int>],
) -> Result<Vec<(BigRational, BigRational)>, CliError> {
    let (b1, b2) = (&basis[0], &basis[1]);
    let g11 = BigRational::from_integer(dot(b1, b1));
    let g12 = BigRational::from_integer(dot(b1, b2));
    let g22 = BigRational::from_integer(dot(b2, b2));
    let det = &g11 * &g22 - &g12 * &g12;
    if det.is_zero() {
        return Err(CliError::Usage("plane basis vectors are dependent".into()));
    }
    let mut out = Vec::with_capacity(vertices.len());
    for v in vertices {
        let diff: Vec<BigRational> = v.iter().zip(centroid).map(|(a, b)| a - b).collect();
        let r1: BigRational =
            diff.iter().zip(b1).map(|(d, x)| d * BigRational::from_integer(x.clone())).sum();
        let r2: BigRational =
            diff.iter().zip(b2).map(|(d, x)| d * BigRational::from_integer(x.clone())).sum();
        let x1 = (&r1 * &g22 - &r2 * &g12) / &det;
        let x2 = (&g11 * &r2 - &g12 * &r1) / &det;
        // The solve is exact only when the difference lies in the plane.
        for ((d, c1), c2) in diff.iter().zip(b1).zip(b2) {
            let recomposed = &x1 * BigRational::from_integer(c1.clone())
                + &x2 * BigRational::from_integer(c2.clone());
            if *d != recomposed {
                return Err(CliError::Usage(
                    "basis does not span the section plane".into(),
                ));
            }
        }
        out.push((x1, x2));
    }
    Ok(out)
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

/// Cyclic order around the centroid, rotated to start at the vertex with the
/// lexicographically least exact coordinates.
fn polygon_order(
    vertices: &[Vec<BigRational>],
    coords: &[(BigRational, BigRational)],
) -> Vec<usize> {
    let mut order: Vec<usize> = (0..vertices.len()).collect();
    order.sort_by(|&a, &b| {
        let ang_a = to_f64(&coords[a].1).atan2(to_f64(&coords[a].0));
        let ang_b = to_f64(&coords[b].1).atan2(to_f64(&coords[b].0));
        ang_a.partial_cmp(&ang_b).unwrap().then_with(|| vertices[a].cmp(&vertices[b]))
    });
    let least = (0..order.len())
        .min_by(|&a, &b| vertices[order[a]].cmp(&vertices[order[b]]))
        .unwrap();
    order.rotate_left(least);
    order
}

fn rational_str(r: &BigRational) -> String {
    if r.denom() == &Int::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rational_vec_json(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(rational_str(x))).collect())
}

pub fn section_json(sc: &StabilityCone, s: &Section) -> Result<Value, CliError> {
    let vertices: Vec<Value> = s.vertices.iter().map(|v| rational_vec_json(v)).collect();
    let plane = match &s.plane {
        Some(p) => {
            let coords: Vec<Value> = p
                .coords
                .iter()
                .map(|(x, y)| {
                    Value::Array(vec![
                        Value::String(rational_str(x)),
                        Value::String(rational_str(y)),
                    ])
                })
                .collect();
            json!({"basis": vectors_json(&p.basis)?, "coords": coords})
        }
        None => Value::Null,
    };
    Ok(json!({
        "walk": sc.descriptor,
        "kind": sc.kind.as_str(),
        "functional": json_int(&s.functional)?,
        "vertex_count": s.vertices.len() as i64,
        "vertices": vertices,
        "centroid": rational_vec_json(&s.centroid),
        "unbounded": vectors_json(&s.unbounded)?,
        "plane": plane,
    }))
}

pub fn section_csv(s: &Section, names: &[String]) -> String {
    let planar = s.plane.is_some();
    let mut out = String::from("role");
    for n in names {
        out.push(',');
        out.push_str(n);
    }
    if planar {
        out.push_str(",px,py");
    }
    out.push('\n');
    for (i, v) in s.vertices.iter().enumerate() {
        out.push_str("vertex");
        for x in v {
            out.push(',');
            out.push_str(&rational_str(x));
        }
        if let Some(p) = &s.plane {
            out.push_str(&format!(
                ",{},{}",
                rational_str(&p.coords[i].0),
                rational_str(&p.coords[i].1)
            ));
        }
        out.push('\n');
    }
    out.push_str("centroid");
    for x in &s.centroid {
        out.push(',');
        out.push_str(&rational_str(x));
    }
    if planar {
        out.push_str(",,");
    }
    out.push('\n');
    for u in &s.unbounded {
        out.push_str("unbounded");
        for x in u {
            out.push(',');
            out.push_str(&x.to_string());
        }
        if planar {
            out.push_str(",,");
        }
        out.push('\n');
    }
    out
}
