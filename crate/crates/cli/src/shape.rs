//! Shape-name parsing for the generator:
//! `tetrahedron | octahedron | cube | dodecahedron | icosahedron |
//! icosidodecahedron | prism(k,h) | antiprism(k,h) | pyramid(k) |
//! random(n) | random-symmetric(label,orbits)`.

use std::str::FromStr;

use anyhow::{anyhow, bail, Result};
use planeform_core::polyhedra::Shape;
use planeform_core::Schoenflies;

pub fn parse_shape(s: &str) -> Result<Shape> {
    let s = s.trim();
    match s {
        "tetrahedron" => return Ok(Shape::Tetrahedron),
        "octahedron" => return Ok(Shape::Octahedron),
        "cube" => return Ok(Shape::Cube),
        "dodecahedron" => return Ok(Shape::Dodecahedron),
        "icosahedron" => return Ok(Shape::Icosahedron),
        "icosidodecahedron" => return Ok(Shape::Icosidodecahedron),
        _ => {}
    }
    let (name, args) = s
        .split_once('(')
        .ok_or_else(|| anyhow!("unknown shape `{s}`"))?;
    let args = args
        .strip_suffix(')')
        .ok_or_else(|| anyhow!("missing closing parenthesis in `{s}`"))?;
    let parts: Vec<&str> = args.split(',').map(str::trim).collect();
    match (name.trim(), parts.as_slice()) {
        ("prism", [k]) => Ok(Shape::Prism { k: k.parse()?, h: 0.6 }),
        ("prism", [k, h]) => Ok(Shape::Prism { k: k.parse()?, h: h.parse()? }),
        ("antiprism", [k]) => Ok(Shape::Antiprism { k: k.parse()?, h: 0.6 }),
        ("antiprism", [k, h]) => Ok(Shape::Antiprism { k: k.parse()?, h: h.parse()? }),
        ("pyramid", [k]) => Ok(Shape::Pyramid { k: k.parse()? }),
        ("random", [n]) => Ok(Shape::Random { n: n.parse()? }),
        ("random-symmetric", [label, orbits]) => Ok(Shape::RandomSymmetric {
            label: Schoenflies::from_str(label)
                .map_err(|_| anyhow!("unknown Schoenflies label `{label}`"))?,
            orbits: orbits.parse()?,
        }),
        _ => bail!("unknown shape `{s}`"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_shape_vocabulary() {
        assert_eq!(parse_shape("cube").unwrap(), Shape::Cube);
        assert_eq!(parse_shape("prism(4,0.8)").unwrap(), Shape::Prism { k: 4, h: 0.8 });
        assert_eq!(parse_shape("antiprism(6, 0.5)").unwrap(), Shape::Antiprism { k: 6, h: 0.5 });
        assert_eq!(parse_shape("pyramid(5)").unwrap(), Shape::Pyramid { k: 5 });
        assert_eq!(parse_shape("random(12)").unwrap(), Shape::Random { n: 12 });
        assert_eq!(
            parse_shape("random-symmetric(C3,2)").unwrap(),
            Shape::RandomSymmetric { label: Schoenflies::C(3), orbits: 2 }
        );
        assert!(parse_shape("hypercube").is_err());
        assert!(parse_shape("prism(4").is_err());
    }
}
